//! Laurent polynomials in `x_1..x_n` with [`QSeries`] coefficients.
//!
//! Exponents are stored doubled so that `x^{1/2}` is representable. With
//! `n = 0` the type degenerates to a single series, which is how rational
//! point evaluations share code with formal ones.

use std::cmp::{min, Ordering};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::qseries::{fmt_q, pow_q, Mismatch, QSeries, Q};

/// Doubled exponent vector.
pub type Exps = Vec<i32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XLaurent {
    n: usize,
    terms: BTreeMap<Exps, QSeries>,
    /// Global truncation: every coefficient, including absent ones, is known
    /// through `t^order`.
    order: Option<i64>,
}

/// Image of a variable under a monomial substitution:
/// `x_i -> coef * t^t_exp * y^exps` with `exps` doubled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Image {
    pub coef: Q,
    pub t_exp: i64,
    pub exps: Exps,
}

impl Image {
    pub fn var(target_n: usize, j: usize, inverse: bool) -> Self {
        let mut exps = vec![0; target_n];
        exps[j] = if inverse { -2 } else { 2 };
        Image { coef: Q::one(), t_exp: 0, exps }
    }

    pub fn value(coef: Q, t_exp: i64) -> Self {
        Image { coef, t_exp, exps: vec![] }
    }
}

impl XLaurent {
    fn build(n: usize, terms: BTreeMap<Exps, QSeries>, order: Option<i64>) -> Self {
        let mut x = XLaurent { n, terms, order };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        if let Some(o) = self.order {
            for c in self.terms.values_mut() {
                if c.order().is_none_or(|p| p > o) {
                    *c = c.truncate(o);
                }
            }
        }
        self.terms.retain(|_, c| !c.is_zero());
    }

    pub fn zero(n: usize) -> Self {
        XLaurent { n, terms: BTreeMap::new(), order: None }
    }

    pub fn zero_to(n: usize, order: i64) -> Self {
        XLaurent { n, terms: BTreeMap::new(), order: Some(order) }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, QSeries::one())
    }

    pub fn constant(n: usize, c: QSeries) -> Self {
        Self::mono(n, vec![0; n], c)
    }

    pub fn mono(n: usize, exps: Exps, c: QSeries) -> Self {
        assert_eq!(exps.len(), n);
        let order = c.order();
        let mut terms = BTreeMap::new();
        terms.insert(exps, c);
        Self::build(n, terms, order)
    }

    /// `x_i^k` for integer `k`.
    pub fn var_pow(n: usize, i: usize, k: i64) -> Self {
        let mut e = vec![0; n];
        e[i] = (2 * k) as i32;
        Self::mono(n, e, QSeries::one())
    }

    pub fn from_terms(n: usize, terms: Vec<(Exps, QSeries)>, order: Option<i64>) -> Self {
        let mut map: BTreeMap<Exps, QSeries> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), n);
            match map.get_mut(&e) {
                Some(v) => *v = &*v + &c,
                None => {
                    map.insert(e, c);
                }
            }
        }
        Self::build(n, map, order)
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> Option<i64> {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &QSeries)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[i32]) -> QSeries {
        match self.terms.get(e) {
            Some(c) => c.clone(),
            None => match self.order {
                Some(o) => QSeries::zero_to(o),
                None => QSeries::zero(),
            },
        }
    }

    /// Minimum t-valuation over all coefficients.
    pub fn val_eff(&self) -> Option<i64> {
        let v = self.terms.values().filter_map(|c| c.val_eff()).min();
        match (v, self.order) {
            (Some(v), _) => Some(v),
            (None, Some(o)) => Some(o + 1),
            (None, None) => None,
        }
    }

    pub fn truncate(&self, order: i64) -> Self {
        let o = self.order.map_or(order, |p| min(p, order));
        Self::build(self.n, self.terms.clone(), Some(o))
    }

    pub fn into_exact(self) -> Self {
        let terms = self.terms.into_iter().map(|(e, c)| (e, c.into_exact())).collect();
        XLaurent { n: self.n, terms, order: None }
    }

    pub fn scale(&self, c: &QSeries) -> Self {
        if c.is_zero() && c.is_exact() {
            return Self::zero(self.n);
        }
        let order = mul_order(self.order, self.val_eff(), c.order(), c.val_eff());
        let terms = self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect();
        Self::build(self.n, terms, order)
    }

    pub fn scale_q(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        let terms = self.terms.iter().map(|(e, x)| (e.clone(), x.scale(c))).collect();
        Self::build(self.n, terms, self.order)
    }

    /// Apply `f` to every coefficient; `order` is the known order afterwards.
    pub fn map_coeffs(&self, order: Option<i64>, f: impl Fn(&QSeries) -> QSeries) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), f(c))).collect();
        Self::build(self.n, terms, order)
    }

    /// Substitute `t -> t^k` in every coefficient.
    pub fn dilate(&self, k: i64) -> Self {
        self.map_coeffs(self.order.map(|o| k * o + k - 1), |c| c.dilate(k))
    }

    pub fn shift_t(&self, k: i64) -> Self {
        let terms = self.terms.iter().map(|(e, x)| (e.clone(), x.shift(k))).collect();
        Self::build(self.n, terms, self.order.map(|o| o + k))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.n);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `(T f)(x) = f(x_1, .., q^k x_i, .., x_n)`.
    pub fn q_shift(&self, i: usize, k: i64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c.shift(k * e[i] as i64)))
            .collect();
        // Coefficients move by different amounts; the known order is the
        // smallest shift applied.
        let order = self.order.map(|o| {
            let lo = self.terms.keys().map(|e| k * e[i] as i64).min().unwrap_or(0);
            o + lo
        });
        Self::build(self.n, terms, order)
    }

    /// Permute variables: the result has `x_{perm[i]}` where `self` had `x_i`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut f = vec![0; self.n];
                for (i, &p) in perm.iter().enumerate() {
                    f[p] = e[i];
                }
                (f, c.clone())
            })
            .collect();
        Self::build(self.n, terms, self.order)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n.saturating_sub(1)).all(|i| {
            let mut p: Vec<usize> = (0..self.n).collect();
            p.swap(i, i + 1);
            self.first_mismatch(&self.permute(&p)).is_none()
        })
    }

    /// Substitute each variable by a monomial image.
    pub fn map_monomials(&self, target_n: usize, images: &[Image]) -> Result<Self> {
        assert_eq!(images.len(), self.n);
        let mut out: BTreeMap<Exps, QSeries> = BTreeMap::new();
        let mut order = self.order;
        for (e, c) in &self.terms {
            let mut coef = Q::one();
            let mut t = 0i64;
            let mut exps = vec![0i32; target_n];
            for (i, &d) in e.iter().enumerate() {
                if d == 0 {
                    continue;
                }
                let im = &images[i];
                if d % 2 != 0 {
                    let halvable = im.coef.is_one() && (im.t_exp * d as i64) % 2 == 0 && im.exps.iter().all(|v| (v * d) % 2 == 0);
                    if !halvable {
                        return Err(Error::Unsupported("half-integer power of a non-square image".into()));
                    }
                } else {
                    coef *= pow_q(&im.coef, (d / 2) as i64);
                }
                t += im.t_exp * d as i64 / 2;
                for (j, v) in im.exps.iter().enumerate() {
                    exps[j] += v * d / 2;
                }
            }
            let term = c.shift(t).scale(&coef);
            if let (Some(o), Some(_)) = (self.order, c.order()) {
                order = Some(order.map_or(o + t, |p| min(p, o + t)));
            }
            match out.get_mut(&exps) {
                Some(v) => *v = &*v + &term,
                None => {
                    out.insert(exps, term);
                }
            }
        }
        if let (Some(o), true) = (self.order, self.terms.is_empty()) {
            order = Some(o);
        }
        Ok(Self::build(target_n, out, order))
    }

    /// Value of an `n = 0` (or constant) element.
    pub fn as_series(&self) -> QSeries {
        assert!(self.terms.keys().all(|e| e.iter().all(|&d| d == 0)), "not a constant");
        self.coeff(&vec![0; self.n])
    }

    fn lead(&self) -> Option<(&Exps, &QSeries)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient by a Laurent polynomial with exact coefficients,
    /// by lexicographic leading-term division.
    pub fn div_exact(&self, d: &XLaurent) -> Result<XLaurent> {
        let (dl_e, dl_c) = d.lead().ok_or_else(|| Error::Singular("division by zero".into()))?;
        let (dl_e, dl_c) = (dl_e.clone(), dl_c.clone());
        if d.order.is_some() {
            return Err(Error::InexactDivision("divisor must be exact".into()));
        }
        if self.terms.is_empty() {
            return Ok(self.clone());
        }
        let d_min = d.terms.keys().next().unwrap().clone();
        let f_min = self.terms.keys().next().unwrap().clone();
        let floor: Exps = f_min.iter().zip(&d_min).map(|(a, b)| a - b).collect();
        let mut rem = self.clone();
        let mut quo: BTreeMap<Exps, QSeries> = BTreeMap::new();
        while let Some((re, rc)) = rem.lead() {
            let qe: Exps = re.iter().zip(&dl_e).map(|(a, b)| a - b).collect();
            if qe.cmp(&floor) == Ordering::Less {
                return Err(Error::InexactDivision("nonzero remainder in multivariate division".into()));
            }
            let qc = if dl_c.is_exact() && dl_c.coeffs_len() == 1 && dl_c.valuation() == Some(0) {
                rc.scale(&dl_c.constant_term().recip())
            } else if rc.is_exact() {
                rc.div_exact(&dl_c)?
            } else {
                rc.div(&dl_c, rc.order().unwrap())?
            };
            let step = XLaurent::mono(self.n, qe.clone(), qc.clone());
            rem = &rem - &(&step * d);
            quo.insert(qe, qc);
        }
        Ok(Self::build(self.n, quo, self.order))
    }

    /// Inverse of an element `c * t^v * (1 + e)` where `c t^v` is the
    /// constant-monomial coefficient's leading term and `e` has positive
    /// t-valuation.
    pub fn inv(&self, order: i64) -> Result<XLaurent> {
        let zero = vec![0; self.n];
        let c0 = self.terms.get(&zero).ok_or_else(|| Error::Singular("no constant monomial to invert".into()))?;
        let (c, v) = c0.lead().unwrap();
        if self.val_eff() != Some(v) || self.terms.iter().any(|(e, s)| e != &zero && s.valuation() == Some(v)) {
            return Err(Error::Singular("inverse needs a dominant constant term".into()));
        }
        let lead_inv = QSeries::mono(c.recip(), -v);
        let unit = self.scale(&lead_inv);
        let e = &unit - &XLaurent::one(self.n);
        let rel = order + v;
        let mut acc = XLaurent::one(self.n).truncate(rel);
        let mut p = XLaurent::one(self.n);
        let mut k = 0;
        let ve = e.val_eff().unwrap_or(i64::MAX);
        loop {
            k += 1;
            if ve == i64::MAX || ve.saturating_mul(k) > rel {
                break;
            }
            p = (&p * &e.neg()).truncate(rel);
            acc = &acc + &p;
        }
        Ok(acc.scale(&lead_inv).truncate(order))
    }

    /// First differing coefficient through the common order.
    pub fn first_mismatch(&self, other: &XLaurent) -> Option<(Exps, Mismatch)> {
        let mut keys: Vec<&Exps> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        for k in keys {
            if let Some(m) = self.coeff(k).first_mismatch(&other.coeff(k)) {
                return Some((k.clone(), m));
            }
        }
        None
    }

    /// Largest total degree, in halves.
    pub fn max_degree(&self) -> Option<i32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }
}

impl QSeries {
    pub(crate) fn coeffs_len(&self) -> usize {
        self.terms().count()
    }
}

fn mul_order(oa: Option<i64>, va: Option<i64>, ob: Option<i64>, vb: Option<i64>) -> Option<i64> {
    let (va, vb) = match (va, vb) {
        (Some(a), Some(b)) => (a, b),
        _ => return None,
    };
    match (oa, ob) {
        (None, None) => None,
        (Some(a), None) => Some(a + vb),
        (None, Some(b)) => Some(b + va),
        (Some(a), Some(b)) => Some(min(a + vb, b + va)),
    }
}

impl<'a> Add<&'a XLaurent> for &'a XLaurent {
    type Output = XLaurent;
    fn add(self, o: &XLaurent) -> XLaurent {
        assert_eq!(self.n, o.n);
        let order = match (self.order, o.order) {
            (Some(a), Some(b)) => Some(min(a, b)),
            (a, None) => a,
            (None, b) => b,
        };
        let mut terms = self.terms.clone();
        for (e, c) in &o.terms {
            match terms.get_mut(e) {
                Some(v) => *v = &*v + c,
                None => {
                    terms.insert(e.clone(), c.clone());
                }
            }
        }
        XLaurent::build(self.n, terms, order)
    }
}

impl Neg for &XLaurent {
    type Output = XLaurent;
    fn neg(self) -> XLaurent {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect();
        XLaurent { n: self.n, terms, order: self.order }
    }
}

impl XLaurent {
    #[allow(clippy::should_implement_trait)]
    pub fn neg(&self) -> XLaurent {
        -self
    }
}

impl<'a> Sub<&'a XLaurent> for &'a XLaurent {
    type Output = XLaurent;
    fn sub(self, o: &XLaurent) -> XLaurent {
        self + &(-o)
    }
}

impl<'a> Mul<&'a XLaurent> for &'a XLaurent {
    type Output = XLaurent;
    fn mul(self, o: &XLaurent) -> XLaurent {
        assert_eq!(self.n, o.n);
        let (va, vb) = (self.val_eff(), o.val_eff());
        if va.is_none() || vb.is_none() {
            return XLaurent::zero(self.n);
        }
        let order = mul_order(self.order, va, o.order, vb);
        let (va, vb) = (va.unwrap(), vb.unwrap());
        let mut terms: BTreeMap<Exps, QSeries> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            let ca = match order {
                Some(ord) => ca.truncate(ord - vb),
                None => ca.clone(),
            };
            for (eb, cb) in &o.terms {
                let cb = match order {
                    Some(ord) => cb.truncate(ord - va),
                    None => cb.clone(),
                };
                let e: Exps = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let mut p = &ca * &cb;
                if let Some(ord) = order {
                    p = p.truncate(ord);
                }
                match terms.get_mut(&e) {
                    Some(v) => *v = &*v + &p,
                    None => {
                        terms.insert(e, p);
                    }
                }
            }
        }
        XLaurent::build(self.n, terms, order)
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<XLaurent> for XLaurent {
            type Output = XLaurent;
            fn $m(self, o: XLaurent) -> XLaurent {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a XLaurent> for XLaurent {
            type Output = XLaurent;
            fn $m(self, o: &XLaurent) -> XLaurent {
                (&self).$m(o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

fn fmt_exp(d: i32) -> String {
    if d % 2 == 0 {
        (d / 2).to_string()
    } else {
        format!("{}/2", d)
    }
}

impl fmt::Display for XLaurent {
    /// Monomials in decreasing lexicographic order, each as `(series)*x1^a*x2^b`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return match self.order {
                Some(o) => write!(f, "O(t^{})", o + 1),
                None => write!(f, "0"),
            };
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &d)| d != 0)
                .map(|(i, &d)| if d == 2 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, fmt_exp(d)) })
                .collect();
            let simple = c.is_exact() && c.coeffs_len() == 1 && c.valuation() == Some(0);
            if mono.is_empty() {
                write!(f, "{}", if simple { fmt_q(&c.constant_term()) } else { format!("({})", c) })?;
            } else if simple && c.constant_term().is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else if simple {
                write!(f, "{}*{}", fmt_q(&c.constant_term()), mono.join("*"))?;
            } else {
                write!(f, "({})*{}", c, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::qi;

    fn x(n: usize, i: usize) -> XLaurent {
        XLaurent::var_pow(n, i, 1)
    }

    #[test]
    fn division_by_binomial() {
        let a = &x(2, 0) - &x(2, 1);
        let b = &(&x(2, 0) * &x(2, 0)) + &x(2, 1);
        let p = &a * &b;
        assert_eq!(p.div_exact(&a).unwrap(), b);
        assert!(b.div_exact(&a).is_err());
    }

    #[test]
    fn inverse_of_one_minus_qx() {
        let f = &XLaurent::one(1) - &XLaurent::mono(1, vec![2], QSeries::q_pow(1));
        let g = f.inv(10).unwrap();
        let prod = &f * &g;
        assert!(prod.first_mismatch(&XLaurent::one(1)).is_none());
        assert_eq!(prod.order(), Some(10));
    }

    #[test]
    fn point_substitution() {
        let f = &x(2, 0) + &x(2, 1).scale_q(&qi(3));
        let v = f.map_monomials(0, &[Image::value(qi(2), 0), Image::value(qi(5), 1)]).unwrap();
        assert_eq!(v.as_series(), QSeries::from_terms(&[(0, qi(2)), (1, qi(15))], None));
    }
}
