//! Truncated Laurent series in `t`, where `t^2 = q`.
//!
//! Every half-integer power of `q` becomes an integer power of `t`. A series
//! is either exact (a finite Laurent polynomial) or known through a finite
//! order; arithmetic never claims more precision than its operands support.

use std::cmp::min;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicI64, Ordering};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

static LAURENT_TAIL: AtomicI64 = AtomicI64::new(200);

/// Set the most negative t-valuation any series may reach before the
/// computation is aborted.
pub fn set_max_laurent_tail(bound: i64) {
    LAURENT_TAIL.store(bound, Ordering::Relaxed);
}

pub fn max_laurent_tail() -> i64 {
    LAURENT_TAIL.load(Ordering::Relaxed)
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Render a rational as `a` or `a/b`.
pub fn fmt_q(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// First coefficient at which two series differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub exponent: i64,
    pub expected: Q,
    pub got: Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    val: i64,
    coeffs: Vec<Q>,
    /// `None` for exact values; otherwise every coefficient through `t^order`
    /// is known.
    order: Option<i64>,
}

impl QSeries {
    pub fn new(val: i64, coeffs: Vec<Q>, order: Option<i64>) -> Self {
        let mut s = QSeries { val, coeffs, order };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if let Some(o) = self.order {
            let keep = o - self.val + 1;
            if keep <= 0 {
                self.coeffs.clear();
            } else if (keep as usize) < self.coeffs.len() {
                self.coeffs.truncate(keep as usize);
            }
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.val += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.val = 0;
        } else if self.val < -max_laurent_tail() {
            panic!(
                "laurent tail bound exceeded: valuation {} below -{}",
                self.val,
                max_laurent_tail()
            );
        }
    }

    /// The exact zero series.
    pub fn zero() -> Self {
        QSeries { val: 0, coeffs: vec![], order: None }
    }

    /// A series known to vanish through `t^order`.
    pub fn zero_to(order: i64) -> Self {
        QSeries { val: 0, coeffs: vec![], order: Some(order) }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::new(0, vec![c], None)
    }

    pub fn mono(c: Q, e: i64) -> Self {
        Self::new(e, vec![c], None)
    }

    pub fn t_pow(e: i64) -> Self {
        Self::mono(Q::one(), e)
    }

    pub fn q_pow(k: i64) -> Self {
        Self::t_pow(2 * k)
    }

    /// Build from `(exponent, coefficient)` pairs.
    pub fn from_terms(terms: &[(i64, Q)], order: Option<i64>) -> Self {
        if terms.is_empty() {
            return QSeries { val: 0, coeffs: vec![], order };
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![Q::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - lo) as usize] += c;
        }
        Self::new(lo, coeffs, order)
    }

    pub fn order(&self) -> Option<i64> {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.order.is_none()
    }

    /// True when no nonzero coefficient is known.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.val)
        }
    }

    /// Lowest exponent that can be nonzero: the valuation, or one past the
    /// order for a truncated zero. `None` for the exact zero.
    pub fn val_eff(&self) -> Option<i64> {
        match (self.valuation(), self.order) {
            (Some(v), _) => Some(v),
            (None, Some(o)) => Some(o + 1),
            (None, None) => None,
        }
    }

    /// Highest exponent with a nonzero stored coefficient.
    pub fn max_exp(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.val + self.coeffs.len() as i64 - 1)
        }
    }

    pub fn lead(&self) -> Option<(Q, i64)> {
        self.coeffs.first().map(|c| (c.clone(), self.val))
    }

    pub fn coeff(&self, e: i64) -> Q {
        let i = e - self.val;
        if i < 0 || i >= self.coeffs.len() as i64 {
            Q::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Q)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.val + i as i64, c))
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(0)
    }

    pub fn truncate(&self, order: i64) -> Self {
        let o = match self.order {
            Some(p) => min(p, order),
            None => order,
        };
        Self::new(self.val, self.coeffs.clone(), Some(o))
    }

    /// Forget the truncation order. Only sound when the caller knows the
    /// value is a polynomial whose terms are all present.
    pub fn into_exact(mut self) -> Self {
        self.order = None;
        self
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return match self.order {
                None => Self::zero(),
                Some(_) => QSeries { val: 0, coeffs: vec![], order: None },
            };
        }
        Self::new(self.val, self.coeffs.iter().map(|x| x * c).collect(), self.order)
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self::new(self.val + k, self.coeffs.clone(), self.order.map(|o| o + k))
    }

    /// Substitute `t -> t^k` for `k >= 1`.
    pub fn dilate(&self, k: i64) -> Self {
        assert!(k >= 1, "dilate factor must be positive");
        if self.coeffs.is_empty() {
            return QSeries { val: 0, coeffs: vec![], order: self.order.map(|o| k * o + k - 1) };
        }
        let mut coeffs = vec![Q::zero(); (self.coeffs.len() - 1) * k as usize + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k as usize] = c.clone();
        }
        Self::new(self.val * k, coeffs, self.order.map(|o| k * o + k - 1))
    }

    /// Substitute `t -> c t`.
    pub fn rescale_var(&self, c: &Q) -> Self {
        let mut p = pow_q(c, self.val);
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for x in &self.coeffs {
            coeffs.push(x * &p);
            p *= c;
        }
        Self::new(self.val, coeffs, self.order)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplicative inverse, computed through `t^prec` at most.
    pub fn inv(&self, prec: i64) -> Result<Self> {
        let (c0, v) = self
            .lead()
            .ok_or_else(|| Error::Singular("inverse of a series with no known nonzero term".into()))?;
        let ord = match self.order {
            Some(o) => min(prec, o - 2 * v),
            None => prec,
        };
        let len = ord + v + 1;
        if len <= 0 {
            return Ok(Self::zero_to(ord));
        }
        let len = len as usize;
        let inv0 = c0.recip();
        let mut out: Vec<Q> = Vec::with_capacity(len);
        out.push(inv0.clone());
        for k in 1..len {
            let mut s = Q::zero();
            let top = min(k, self.coeffs.len() - 1);
            for j in 1..=top {
                let cj = &self.coeffs[j];
                if cj.is_zero() || out[k - j].is_zero() {
                    continue;
                }
                s += cj * &out[k - j];
            }
            out.push(-(s * &inv0));
        }
        Ok(Self::new(-v, out, Some(ord)))
    }

    pub fn div(&self, d: &QSeries, prec: i64) -> Result<Self> {
        if self.is_zero() && self.is_exact() {
            return Ok(Self::zero());
        }
        let va = self.val_eff().unwrap_or(0);
        let inv = d.inv(prec - va)?;
        Ok((self * &inv).truncate(prec))
    }

    /// Exact quotient of two Laurent polynomials, failing on a remainder.
    pub fn div_exact(&self, d: &QSeries) -> Result<Self> {
        if !self.is_exact() || !d.is_exact() {
            return Err(Error::InexactDivision("div_exact needs exact operands".into()));
        }
        if d.is_zero() {
            return Err(Error::Singular("division by zero polynomial".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let da = self.max_exp().unwrap() - self.val;
        let dd = d.max_exp().unwrap() - d.val;
        if da < dd {
            return Err(Error::InexactDivision("degree of divisor exceeds dividend".into()));
        }
        let rel = da - dd;
        let dn = d.shift(-d.val);
        let an = self.shift(-self.val);
        let quo = an.div(&dn, rel)?.into_exact();
        if (&quo * &dn) != an {
            return Err(Error::InexactDivision("nonzero remainder".into()));
        }
        Ok(quo.shift(self.val - d.val))
    }

    /// First coefficient at which `got` differs from `self`, checked through
    /// the common order.
    pub fn first_mismatch(&self, got: &QSeries) -> Option<Mismatch> {
        let hi = match (self.order, got.order) {
            (Some(a), Some(b)) => min(a, b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => {
                let a = self.max_exp().unwrap_or(i64::MIN);
                let b = got.max_exp().unwrap_or(i64::MIN);
                a.max(b)
            }
        };
        let lo = match (self.valuation(), got.valuation()) {
            (Some(a), Some(b)) => min(a, b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => return None,
        };
        for e in lo..=hi {
            let a = self.coeff(e);
            let b = got.coeff(e);
            if a != b {
                return Some(Mismatch { exponent: e, expected: a, got: b });
            }
        }
        None
    }

    /// Agreement through the common order.
    pub fn agrees(&self, other: &QSeries) -> bool {
        self.first_mismatch(other).is_none()
    }
}

pub fn pow_q(c: &Q, e: i64) -> Q {
    if e >= 0 {
        num_traits::pow(c.clone(), e as usize)
    } else {
        num_traits::pow(c.recip(), (-e) as usize)
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let cs = fmt_q(&a);
            match (e, a.is_one()) {
                (0, _) => write!(f, "{}", cs)?,
                (_, true) => write!(f, "{}", t_power(e))?,
                (_, false) => write!(f, "{}*{}", cs, t_power(e))?,
            }
        }
        if let Some(o) = self.order {
            if first {
                write!(f, "O({})", t_power(o + 1))?;
            } else {
                write!(f, " + O({})", t_power(o + 1))?;
            }
        } else if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn t_power(e: i64) -> String {
    if e == 1 {
        "t".to_string()
    } else {
        format!("t^{}", e)
    }
}

impl<'a> Add<&'a QSeries> for &'a QSeries {
    type Output = QSeries;
    fn add(self, o: &QSeries) -> QSeries {
        let order = match (self.order, o.order) {
            (Some(a), Some(b)) => Some(min(a, b)),
            (a, None) => a,
            (None, b) => b,
        };
        if self.coeffs.is_empty() {
            return QSeries::new(o.val, o.coeffs.clone(), order);
        }
        if o.coeffs.is_empty() {
            return QSeries::new(self.val, self.coeffs.clone(), order);
        }
        let lo = min(self.val, o.val);
        let mut hi = self.max_exp().unwrap().max(o.max_exp().unwrap());
        if let Some(ord) = order {
            hi = min(hi, ord);
        }
        if hi < lo {
            return QSeries { val: 0, coeffs: vec![], order };
        }
        let mut coeffs = vec![Q::zero(); (hi - lo + 1) as usize];
        for (e, c) in self.terms() {
            if e <= hi {
                coeffs[(e - lo) as usize] += c;
            }
        }
        for (e, c) in o.terms() {
            if e <= hi {
                coeffs[(e - lo) as usize] += c;
            }
        }
        QSeries::new(lo, coeffs, order)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries::new(self.val, self.coeffs.iter().map(|c| -c).collect(), self.order)
    }
}

impl<'a> Sub<&'a QSeries> for &'a QSeries {
    type Output = QSeries;
    fn sub(self, o: &QSeries) -> QSeries {
        self + &(-o)
    }
}

impl<'a> Mul<&'a QSeries> for &'a QSeries {
    type Output = QSeries;
    fn mul(self, o: &QSeries) -> QSeries {
        let (ea, eb) = match (self.val_eff(), o.val_eff()) {
            (None, _) | (_, None) => return QSeries::zero(),
            (Some(a), Some(b)) => (a, b),
        };
        let mut order: Option<i64> = None;
        if let Some(oa) = self.order {
            order = Some(oa + eb);
        }
        if let Some(ob) = o.order {
            order = Some(order.map_or(ob + ea, |x| min(x, ob + ea)));
        }
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return QSeries { val: 0, coeffs: vec![], order };
        }
        let lo = self.val + o.val;
        let mut hi = self.max_exp().unwrap() + o.max_exp().unwrap();
        if let Some(ord) = order {
            hi = min(hi, ord);
        }
        if hi < lo {
            return QSeries { val: 0, coeffs: vec![], order };
        }
        let len = (hi - lo + 1) as usize;
        let mut coeffs = vec![Q::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            if a.is_zero() {
                continue;
            }
            let lim = min(o.coeffs.len(), len - i);
            for (j, b) in o.coeffs[..lim].iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        QSeries::new(lo, coeffs, order)
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<QSeries> for QSeries {
            type Output = QSeries;
            fn $m(self, o: QSeries) -> QSeries {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a QSeries> for QSeries {
            type Output = QSeries;
            fn $m(self, o: &QSeries) -> QSeries {
                (&self).$m(o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

/// Length of a q-Pochhammer symbol: an integer (possibly negative) or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extent {
    Finite(i64),
    Infinite,
}

/// `1 - a t^e`, exact when `a` is.
fn one_minus_shifted(a: &QSeries, e: i64) -> QSeries {
    &QSeries::one() - &a.shift(e)
}

/// `(a; q)_n`, with `(a)_{-k} = prod_{j=1..k} 1/(1 - a q^{-j})`.
pub fn poch(a: &QSeries, n: Extent, prec: i64) -> Result<QSeries> {
    poch_base(a, 2, n, prec)
}

/// `1/(a; q)_n`. For negative `n` this is a finite product, so
/// `1/(q)_n = 0` for `n < 0` falls out without any division.
pub fn poch_recip(a: &QSeries, n: Extent, prec: i64) -> Result<QSeries> {
    poch_recip_base(a, 2, n, prec)
}

/// `(a; p)_n` with base `p = t^step`.
pub fn poch_base(a: &QSeries, step: i64, n: Extent, prec: i64) -> Result<QSeries> {
    match n {
        Extent::Finite(k) if k >= 0 => Ok(finite_product(a, step, k, prec)),
        Extent::Finite(k) => {
            let d = negative_product(a, step, -k, prec);
            if d.is_zero() {
                return Err(Error::Singular(format!("({})_{} has a vanishing factor", a, k)));
            }
            d.inv(prec)
        }
        Extent::Infinite => infinite_product(a, step, prec),
    }
}

pub fn poch_recip_base(a: &QSeries, step: i64, n: Extent, prec: i64) -> Result<QSeries> {
    match n {
        Extent::Finite(k) if k < 0 => Ok(negative_product(a, step, -k, prec)),
        _ => {
            let p = poch_base(a, step, n, prec)?;
            if p.is_zero() {
                return Err(Error::Singular(format!("1/({})_n with a vanishing factor", a)));
            }
            p.inv(prec)
        }
    }
}

fn finite_product(a: &QSeries, step: i64, k: i64, prec: i64) -> QSeries {
    let mut acc = QSeries::one();
    for j in 0..k {
        acc = &acc * &one_minus_shifted(a, step * j);
        if !a.is_exact() {
            acc = acc.truncate(prec);
        }
    }
    acc
}

fn negative_product(a: &QSeries, step: i64, k: i64, prec: i64) -> QSeries {
    let mut acc = QSeries::one();
    for j in 1..=k {
        acc = &acc * &one_minus_shifted(a, -step * j);
        if !a.is_exact() {
            acc = acc.truncate(prec);
        }
    }
    acc
}

fn infinite_product(a: &QSeries, step: i64, prec: i64) -> Result<QSeries> {
    let va = match a.val_eff() {
        None => return Ok(QSeries::one()),
        Some(v) => v,
    };
    if va < 0 {
        return Err(Error::Singular(format!("({}; t^{})_inf needs nonnegative valuation", a, step)));
    }
    let mut acc = QSeries::one().truncate(prec);
    let mut j = 0;
    while va + step * j <= prec {
        acc = (&acc * &one_minus_shifted(a, step * j)).truncate(prec);
        j += 1;
    }
    if acc.is_zero() {
        return Err(Error::Singular(format!("({}; t^{})_inf vanishes", a, step)));
    }
    Ok(acc)
}

/// Gaussian binomial `[m, k]` in `q`; `[inf, k] = 1/(q)_k`.
pub fn qbinomial(m: Extent, k: i64, prec: i64) -> Result<QSeries> {
    match m {
        Extent::Infinite => {
            if k < 0 {
                Ok(QSeries::zero())
            } else {
                poch_recip(&QSeries::q_pow(1), Extent::Finite(k), prec)
            }
        }
        Extent::Finite(m) => Ok(qbinomial_poly(m, k)),
    }
}

/// Finite Gaussian binomial as an exact polynomial in `q`.
pub fn qbinomial_poly(m: i64, k: i64) -> QSeries {
    if k < 0 || m < 0 || k > m {
        return QSeries::zero();
    }
    let k = min(k, m - k);
    // Coefficients in q via the recurrence over rows.
    let mut row: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for mm in 1..=m {
        let kmax = min(mm, k) as usize;
        let mut next: Vec<Vec<BigInt>> = Vec::with_capacity(kmax + 1);
        for kk in 0..=kmax {
            // [mm, kk] = [mm-1, kk-1] + q^kk [mm-1, kk]
            let mut poly: Vec<BigInt> = Vec::new();
            if kk >= 1 && kk - 1 < row.len() {
                add_poly(&mut poly, &row[kk - 1], 0);
            }
            if kk < row.len() {
                add_poly(&mut poly, &row[kk], kk);
            }
            next.push(poly);
        }
        row = next;
    }
    let poly = &row[k as usize];
    let terms: Vec<(i64, Q)> = poly
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (2 * i as i64, Q::from_integer(c.clone())))
        .collect();
    QSeries::from_terms(&terms, None)
}

fn add_poly(acc: &mut Vec<BigInt>, p: &[BigInt], shift: usize) {
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, BigInt::zero());
    }
    for (i, c) in p.iter().enumerate() {
        acc[i + shift] += c;
    }
}

/// `(q^a, q^b, q^c; q^k)_inf`.
pub fn triple_product(a: i64, b: i64, c: i64, k: i64, prec: i64) -> Result<QSeries> {
    if k <= 0 {
        return Err(Error::Invalid("triple product modulus must be positive".into()));
    }
    let mut acc = QSeries::one();
    for e in [a, b, c] {
        if e <= 0 {
            return Err(Error::Singular(format!("(q^{}; q^{})_inf has a factor 1 - q^{}", e, k, e)));
        }
        let f = poch_base(&QSeries::q_pow(e), 2 * k, Extent::Infinite, prec)?;
        acc = (&acc * &f).truncate(prec);
    }
    Ok(acc)
}

/// A quotient `prod eta(k tau)^e`, stored as `q^offset * body`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaQuotient {
    pub terms: Vec<(Q, i64)>,
    pub offset: Q,
    pub body: QSeries,
}

/// Expand `prod eta(k tau)^e` through `t^order`. Scales must satisfy
/// `2k` a positive integer so that `eta(tau/2)` is allowed.
pub fn eta_quotient(terms: &[(Q, i64)], order: i64) -> Result<EtaQuotient> {
    let mut body = QSeries::one().truncate(order);
    let mut offset = Q::zero();
    for (k, e) in terms {
        let two_k = k * qi(2);
        if !two_k.is_integer() || !two_k.is_positive() {
            return Err(Error::Invalid(format!("eta scale {} is not a positive half-integer", fmt_q(k))));
        }
        let step: i64 = two_k.to_integer().try_into().map_err(|_| Error::Invalid("eta scale too large".into()))?;
        offset += k * qi(*e) / qi(24);
        let base = poch_base(&QSeries::t_pow(step), step, Extent::Infinite, order)?;
        let f = if *e >= 0 {
            base.pow(*e as u32)
        } else {
            base.inv(order)?.pow((-*e) as u32)
        };
        body = (&body * &f).truncate(order);
    }
    Ok(EtaQuotient { terms: terms.to_vec(), offset, body })
}

impl EtaQuotient {
    pub fn mul(&self, o: &EtaQuotient) -> EtaQuotient {
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().cloned());
        EtaQuotient { terms, offset: &self.offset + &o.offset, body: &self.body * &o.body }
    }

    pub fn div(&self, o: &EtaQuotient, prec: i64) -> Result<EtaQuotient> {
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().map(|(k, e)| (k.clone(), -e)));
        Ok(EtaQuotient {
            terms,
            offset: &self.offset - &o.offset,
            body: self.body.div(&o.body, prec)?,
        })
    }

    /// Equal offsets and agreeing bodies through the common order.
    pub fn agrees(&self, o: &EtaQuotient) -> bool {
        self.offset == o.offset && self.body.agrees(&o.body)
    }
}

/// A product of Pochhammer-type factors whose precision is fixed only at the
/// end. Each exact factor is split into a leading monomial times a unit
/// `1 + O(t)`, so the valuation of the product is known before any
/// truncated arithmetic happens.
#[derive(Clone, Debug)]
pub struct Product {
    coef: Q,
    exp: i64,
    num: Vec<QSeries>,
    den: Vec<QSeries>,
    inf_num: Vec<(QSeries, i64)>,
    inf_den: Vec<(QSeries, i64)>,
    zero: bool,
}

impl Default for Product {
    fn default() -> Self {
        Self::new()
    }
}

impl Product {
    pub fn new() -> Self {
        Product {
            coef: Q::one(),
            exp: 0,
            num: vec![],
            den: vec![],
            inf_num: vec![],
            inf_den: vec![],
            zero: false,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    /// Exact t-valuation of the product, `None` if it vanishes.
    pub fn valuation(&self) -> Option<i64> {
        if self.zero {
            None
        } else {
            Some(self.exp)
        }
    }

    fn split(f: &QSeries) -> Option<(Q, i64, Option<QSeries>)> {
        let (c, e) = f.lead()?;
        if f.coeffs.len() == 1 {
            return Some((c, e, None));
        }
        let unit = f.shift(-e).scale(&c.recip());
        Some((c, e, Some(unit)))
    }

    pub fn mul_scalar(&mut self, c: &Q) {
        if c.is_zero() {
            self.zero = true;
        } else {
            self.coef *= c;
        }
    }

    pub fn mul_mono(&mut self, c: &Q, e: i64) {
        self.mul_scalar(c);
        self.exp += e;
    }

    pub fn mul_exact(&mut self, f: &QSeries) {
        debug_assert!(f.is_exact());
        match Self::split(f) {
            None => self.zero = true,
            Some((c, e, u)) => {
                self.coef *= c;
                self.exp += e;
                if let Some(u) = u {
                    self.num.push(u);
                }
            }
        }
    }

    pub fn div_exact(&mut self, f: &QSeries) -> Result<()> {
        debug_assert!(f.is_exact());
        match Self::split(f) {
            None => Err(Error::Singular("division by a vanishing factor".into())),
            Some((c, e, u)) => {
                self.coef /= c;
                self.exp -= e;
                if let Some(u) = u {
                    self.den.push(u);
                }
                Ok(())
            }
        }
    }

    /// Multiply by `(a; q)_n` for exact `a` and integer `n`.
    pub fn mul_poch(&mut self, a: &QSeries, n: i64) -> Result<()> {
        if n >= 0 {
            for j in 0..n {
                self.mul_exact(&one_minus_shifted(a, 2 * j));
            }
        } else {
            for j in 1..=-n {
                self.div_exact(&one_minus_shifted(a, -2 * j))?;
            }
        }
        Ok(())
    }

    /// Multiply by `1/(a; q)_n` for exact `a` and integer `n`.
    pub fn div_poch(&mut self, a: &QSeries, n: i64) -> Result<()> {
        if n >= 0 {
            for j in 0..n {
                self.div_exact(&one_minus_shifted(a, 2 * j))?;
            }
        } else {
            for j in 1..=-n {
                self.mul_exact(&one_minus_shifted(a, -2 * j));
            }
        }
        Ok(())
    }

    /// Multiply by `(a; t^step)_inf`.
    pub fn mul_poch_inf(&mut self, a: &QSeries, step: i64) -> Result<()> {
        let a = self.peel_inf(a, step, true)?;
        if let Some(a) = a {
            self.inf_num.push((a, step));
        }
        Ok(())
    }

    pub fn div_poch_inf(&mut self, a: &QSeries, step: i64) -> Result<()> {
        let a = self.peel_inf(a, step, false)?;
        if let Some(a) = a {
            self.inf_den.push((a, step));
        }
        Ok(())
    }

    /// Move the `j = 0` factor of an infinite product out when `a` has
    /// valuation zero, leaving an argument of positive valuation.
    fn peel_inf(&mut self, a: &QSeries, step: i64, mul: bool) -> Result<Option<QSeries>> {
        match a.valuation() {
            None => Ok(None),
            Some(v) if v < 0 => Err(Error::Singular(format!("({}; t^{})_inf with negative valuation", a, step))),
            Some(0) => {
                let f = one_minus_shifted(a, 0);
                if mul {
                    self.mul_exact(&f);
                } else {
                    self.div_exact(&f)?;
                }
                Ok(Some(a.shift(step)))
            }
            Some(_) => Ok(Some(a.clone())),
        }
    }

    pub fn mul_product(&mut self, o: &Product) {
        if o.zero {
            self.zero = true;
            return;
        }
        self.coef *= &o.coef;
        self.exp += o.exp;
        self.num.extend(o.num.iter().cloned());
        self.den.extend(o.den.iter().cloned());
        self.inf_num.extend(o.inf_num.iter().cloned());
        self.inf_den.extend(o.inf_den.iter().cloned());
    }

    /// Expand through `t^prec`.
    pub fn finish(&self, prec: i64) -> Result<QSeries> {
        if self.zero {
            return Ok(QSeries::zero());
        }
        let b = prec - self.exp;
        if b < 0 {
            return Ok(QSeries::zero_to(prec));
        }
        let mut u = QSeries::one().truncate(b);
        for f in &self.num {
            u = (&u * &f.truncate(b)).truncate(b);
        }
        for (a, s) in &self.inf_num {
            u = (&u * &poch_base(a, *s, Extent::Infinite, b)?).truncate(b);
        }
        let mut d = QSeries::one().truncate(b);
        for f in &self.den {
            d = (&d * &f.truncate(b)).truncate(b);
        }
        for (a, s) in &self.inf_den {
            d = (&d * &poch_base(a, *s, Extent::Infinite, b)?).truncate(b);
        }
        if !self.den.is_empty() || !self.inf_den.is_empty() {
            u = (&u * &d.inv(b)?).truncate(b);
        }
        Ok(u.shift(self.exp).scale(&self.coef))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(terms: &[(i64, i64)]) -> QSeries {
        QSeries::from_terms(&terms.iter().map(|(e, c)| (*e, qi(*c))).collect::<Vec<_>>(), None)
    }

    #[test]
    fn poch_q_two() {
        let p = poch(&QSeries::q_pow(1), Extent::Finite(2), 20).unwrap();
        assert_eq!(p, s(&[(0, 1), (2, -1), (4, -1), (6, 1)]));
    }

    #[test]
    fn poch_zero_length_is_one() {
        let a = QSeries::mono(qf(3, 7), 1);
        assert_eq!(poch(&a, Extent::Finite(0), 10).unwrap(), QSeries::one());
    }

    #[test]
    fn recip_q_poch_negative_is_zero() {
        for n in 1..5 {
            let r = poch_recip(&QSeries::q_pow(1), Extent::Finite(-n), 10).unwrap();
            assert!(r.is_zero() && r.is_exact());
        }
        assert!(poch(&QSeries::q_pow(1), Extent::Finite(-1), 10).is_err());
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(qbinomial(Extent::Finite(2), 1, 0).unwrap(), s(&[(0, 1), (2, 1)]));
        assert!(qbinomial(Extent::Finite(3), 5, 0).unwrap().is_zero());
        let inf = qbinomial(Extent::Infinite, 1, 10).unwrap();
        assert_eq!(inf, QSeries::from_terms(&(0..=5).map(|k| (2 * k, qi(1))).collect::<Vec<_>>(), Some(10)));
    }

    #[test]
    fn eta_pentagonal() {
        let eta = eta_quotient(&[(qi(1), 1)], 30).unwrap();
        assert_eq!(eta.offset, qf(1, 24));
        // Euler: exponents k(3k-1)/2 in q.
        let mut terms = vec![];
        for k in -4i64..=4 {
            let e = k * (3 * k - 1) / 2;
            if 2 * e <= 30 {
                terms.push((2 * e, qi(if k % 2 == 0 { 1 } else { -1 })));
            }
        }
        assert_eq!(eta.body, QSeries::from_terms(&terms, Some(30)));
    }

    #[test]
    fn eta_half_scale() {
        let e = eta_quotient(&[(qf(1, 2), 1)], 10).unwrap();
        assert_eq!(e.offset, qf(1, 48));
        assert_eq!(e.body.coeff(1), qi(-1));
        assert_eq!(e.body.coeff(2), qi(-1));
    }

    #[test]
    fn product_matches_direct() {
        let a = QSeries::mono(qf(2, 3), 0);
        let mut p = Product::new();
        p.mul_poch(&a, 3).unwrap();
        p.div_poch(&a.shift(2), -2).unwrap();
        p.div_poch(&QSeries::q_pow(1), 2).unwrap();
        let direct = &(&poch(&a, Extent::Finite(3), 20).unwrap()
            * &poch_recip(&a.shift(2), Extent::Finite(-2), 20).unwrap())
            * &poch_recip(&QSeries::q_pow(1), Extent::Finite(2), 20).unwrap();
        assert!(p.finish(20).unwrap().agrees(&direct));
        assert_eq!(p.finish(20).unwrap().order(), Some(20));
    }

    #[test]
    fn display_form() {
        let x = s(&[(0, 1), (1, -2), (3, 1)]).truncate(4);
        assert_eq!(x.to_string(), "1 - 2*t + t^3 + O(t^5)");
        assert_eq!(QSeries::constant(qf(-1, 2)).to_string(), "-1/2");
    }
}
