//! The hypergeometric term `f^{(τ)}_{r,s}`, the multisum for `P'`, and the
//! fermionic chain formula.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partitions::{MultiIndex, Partition};
use crate::qseries::{pow_q, qbinomial_poly, Product, QSeries, Q};

use super::xlaurent::{Image, XLaurent};

/// Values for `x_1..x_n`: formal variables, monomials `c t^k`, or monomial
/// images in another set of formal variables (e.g. `x^±`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Alphabet {
    Formal(usize),
    Point(Vec<(Q, i64)>),
    Mapped(usize, Vec<Image>),
}

impl Alphabet {
    pub fn len(&self) -> usize {
        match self {
            Alphabet::Formal(n) => *n,
            Alphabet::Point(v) => v.len(),
            Alphabet::Mapped(_, v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of variables of the value ring.
    pub fn ring_n(&self) -> usize {
        match self {
            Alphabet::Formal(n) => *n,
            Alphabet::Point(_) => 0,
            Alphabet::Mapped(n, _) => *n,
        }
    }

    /// `x^± = (x_1, 1/x_1, .., x_n, 1/x_n)` in `n` formal variables; with
    /// `tail`, one more letter equal to 1.
    pub fn plus_minus(n: usize, tail: bool) -> Self {
        let mut v = vec![];
        for i in 0..n {
            v.push(Image::var(n, i, false));
            v.push(Image::var(n, i, true));
        }
        if tail {
            v.push(Image { coef: Q::one(), t_exp: 0, exps: vec![0; n] });
        }
        Alphabet::Mapped(n, v)
    }

    /// `x^±` at a point: `(c, e)` contributes `c t^e` and `c^{-1} t^{-e}`.
    pub fn plus_minus_point(pt: &[(Q, i64)], tail: bool) -> Self {
        let mut v = vec![];
        for (c, e) in pt {
            v.push((c.clone(), *e));
            v.push((c.recip(), -e));
        }
        if tail {
            v.push((Q::one(), 0));
        }
        Alphabet::Point(v)
    }

    /// Rational point with `t`-exponent zero.
    pub fn rational(xs: &[Q]) -> Self {
        Alphabet::Point(xs.iter().map(|x| (x.clone(), 0)).collect())
    }

    /// `x_i^k` in the value ring.
    pub fn pow(&self, i: usize, k: i64) -> XLaurent {
        match self {
            Alphabet::Formal(n) => XLaurent::var_pow(*n, i, k),
            Alphabet::Point(v) => {
                let (c, e) = &v[i];
                XLaurent::constant(0, QSeries::mono(pow_q(c, k), e * k))
            }
            Alphabet::Mapped(n, v) => {
                let im = &v[i];
                let exps = im.exps.iter().map(|d| d * k as i32).collect();
                XLaurent::mono(*n, exps, QSeries::mono(pow_q(&im.coef, k), im.t_exp * k))
            }
        }
    }

    /// Smallest t-exponent among the values (zero for formal variables).
    pub fn min_t(&self) -> i64 {
        match self {
            Alphabet::Formal(_) => 0,
            Alphabet::Point(v) => v.iter().map(|p| p.1).min().unwrap_or(0),
            Alphabet::Mapped(_, v) => v.iter().map(|p| p.t_exp).min().unwrap_or(0),
        }
    }

    fn t_exp(&self, i: usize) -> i64 {
        match self {
            Alphabet::Formal(_) => 0,
            Alphabet::Point(v) => v[i].1,
            Alphabet::Mapped(_, v) => v[i].t_exp,
        }
    }

    fn point(&self) -> Result<&[(Q, i64)]> {
        match self {
            Alphabet::Point(v) => Ok(v),
            _ => Err(Error::Unsupported("hypergeometric terms need a point specialization".into())),
        }
    }
}

fn binom2(k: i64) -> i64 {
    k * (k - 1) / 2
}

/// `f^{(τ)}_{r,s}` as a lazily expanded product.
pub fn f_tau_product(r: &MultiIndex, s: &MultiIndex, tau: i64, alph: &Alphabet) -> Result<Product> {
    let x = alph.point()?;
    let n = x.len();
    let mut p = Product::new();
    for i in 0..n {
        let ri = r.0[i];
        p.mul_mono(&pow_q(&x[i].0, tau * ri), x[i].1 * tau * ri + 2 * tau * binom2(ri));
    }
    for i in 0..n {
        for j in 0..n {
            let a = QSeries::mono(&x[i].0 / &x[j].0, 2 + x[i].1 - x[j].1);
            p.mul_poch(&a, r.0[i] - r.0[j])?;
            p.div_poch(&a, r.0[i] - s.0[j])?;
            if p.is_zero() {
                return Ok(p);
            }
        }
    }
    Ok(p)
}

pub fn f_tau(r: &MultiIndex, s: &MultiIndex, tau: i64, alph: &Alphabet, order: i64) -> Result<QSeries> {
    f_tau_product(r, s, tau, alph)?.finish(order)
}

/// `λ'` grouped as `(M_l, τ_l)` with distinct positive `M_l`.
fn grouped_conjugate(lambda: &Partition) -> Vec<(i64, i64)> {
    let c = lambda.conjugate().unwrap();
    let mut out: Vec<(i64, i64)> = vec![];
    for m in c.parts() {
        match out.last_mut() {
            Some((v, t)) if *v == m => *t += 1,
            _ => out.push((m, 1)),
        }
    }
    out
}

/// `P'_λ` at a point by the multisum over `r^(1) ⊇ r^(2) ⊇ ...` with
/// `|r^(l)| = λ'_l`. With `grouped`, equal columns are merged into a single
/// `f^{(τ)}` factor.
pub fn pprime_multisum(lambda: &Partition, alph: &Alphabet, order: i64, grouped: bool) -> Result<QSeries> {
    let n = alph.len();
    let levels: Vec<(i64, i64)> = if grouped {
        grouped_conjugate(lambda)
    } else {
        lambda.conjugate()?.parts().into_iter().map(|m| (m, 1)).collect()
    };
    if levels.is_empty() {
        return Ok(QSeries::one());
    }
    let mut acc = QSeries::zero().truncate(order);
    for r in MultiIndex::with_sum(&vec![levels[0].0; n], levels[0].0) {
        multisum_rec(&levels, 0, &r, &Product::new(), alph, order, &mut acc)?;
    }
    Ok(acc)
}

/// `p` holds the factors of all levels before `l`; `r` is `r^(l)`.
fn multisum_rec(
    levels: &[(i64, i64)],
    l: usize,
    r: &MultiIndex,
    p: &Product,
    alph: &Alphabet,
    order: i64,
    acc: &mut QSeries,
) -> Result<()> {
    let tau = levels[l].1;
    if l + 1 == levels.len() {
        let mut q = p.clone();
        q.mul_product(&f_tau_product(r, &MultiIndex::zeros(r.len()), tau, alph)?);
        *acc = &*acc + &q.finish(order)?;
        return Ok(());
    }
    let m2 = levels[l + 1].0;
    let hi: Vec<i64> = r.0.iter().map(|&x| x.min(m2)).collect();
    for s in MultiIndex::with_sum(&hi, m2) {
        let mut q = p.clone();
        q.mul_product(&f_tau_product(r, &s, tau, alph)?);
        if q.is_zero() {
            continue;
        }
        multisum_rec(levels, l + 1, &s, &q, alph, order, acc)?;
    }
    Ok(())
}

/// `Q'_λ = b_λ P'_λ` by the fermionic chain formula
/// `0 = μ^(n) ⊆ ... ⊆ μ^(1) ⊆ μ^(0) = λ'`. The factor
/// `prod_j 1/(q)_{μ^(0)_j - μ^(0)_{j+1}}` is exactly `1/b_λ` and is left out.
///
/// With `order`, every value is truncated there and terms of larger
/// valuation are skipped; this needs all point values to have nonnegative
/// t-exponent.
pub fn qprime_fermionic(lambda: &Partition, alph: &Alphabet, order: Option<i64>) -> Result<XLaurent> {
    if order.is_some() && alph.min_t() < 0 {
        return Err(Error::Invalid("truncated fermionic sum needs nonnegative valuations".into()));
    }
    let top = lambda.conjugate()?.parts();
    let mut ev = Fermionic { alph, order, memo: HashMap::new(), qbin: HashMap::new() };
    Ok(ev.value(0, &top))
}

/// `P'_λ` through `t^order`.
pub fn pprime_fermionic(lambda: &Partition, alph: &Alphabet, order: i64) -> Result<XLaurent> {
    let q = qprime_fermionic(lambda, alph, Some(order))?;
    let inv = lambda.b_lambda().inv(order)?;
    Ok(q.scale(&inv).truncate(order))
}

struct Fermionic<'a> {
    alph: &'a Alphabet,
    order: Option<i64>,
    memo: HashMap<(usize, Vec<i64>), XLaurent>,
    qbin: HashMap<(i64, i64), QSeries>,
}

impl Fermionic<'_> {
    fn qbin(&mut self, m: i64, k: i64) -> QSeries {
        self.qbin.entry((m, k)).or_insert_with(|| qbinomial_poly(m, k)).clone()
    }

    /// Sum over all chains below `mu` = `μ^(i)`.
    fn value(&mut self, i: usize, mu: &[i64]) -> XLaurent {
        let rn = self.alph.ring_n();
        let n = self.alph.len();
        if i == n {
            return if mu.iter().all(|&x| x == 0) { XLaurent::one(rn) } else { XLaurent::zero(rn) };
        }
        if let Some(v) = self.memo.get(&(i, mu.to_vec())) {
            return v.clone();
        }
        let subs = if i + 1 == n { vec![vec![0; mu.len()]] } else { subpartitions(mu) };
        let mut acc = XLaurent::zero(rn);
        if let Some(o) = self.order {
            acc = acc.truncate(o);
        }
        for nu in subs {
            let a: Vec<i64> = mu.iter().zip(&nu).map(|(x, y)| x - y).collect();
            let deg: i64 = a.iter().sum();
            let qpow: i64 = a.iter().map(|&k| binom2(k)).sum();
            let val = 2 * qpow + deg * self.alph.t_exp(i);
            if self.order.is_some_and(|o| val > o) {
                continue;
            }
            let mut c = QSeries::q_pow(qpow);
            for j in 0..mu.len() {
                let next = nu.get(j + 1).copied().unwrap_or(0);
                let b = self.qbin(mu[j] - next, a[j]);
                c = &c * &b;
                if let Some(o) = self.order {
                    c = c.truncate(o - deg * self.alph.t_exp(i));
                }
            }
            if c.is_zero() {
                continue;
            }
            let rest = self.value(i + 1, &nu);
            if rest.is_zero() {
                continue;
            }
            let w = self.alph.pow(i, deg).scale(&c);
            let mut term = &w * &rest;
            if let Some(o) = self.order {
                term = term.truncate(o);
            }
            acc = &acc + &term;
        }
        if self.order.is_none() {
            acc = acc.into_exact();
        }
        self.memo.insert((i, mu.to_vec()), acc.clone());
        acc
    }
}

/// Partitions `ν ⊆ μ`, as vectors of the same length padded with zeros.
fn subpartitions(mu: &[i64]) -> Vec<Vec<i64>> {
    fn rec(mu: &[i64], j: usize, cap: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if j == mu.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..=mu[j].min(cap) {
            cur.push(v);
            rec(mu, j + 1, v, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    rec(mu, 0, i64::MAX, &mut vec![], &mut out);
    out
}

/// Milne's summation lemma, both sides at rational `x`, `y`.
pub fn milne_lemma(x: &[Q], y: &[Q]) -> Result<(Q, Q)> {
    let n = x.len();
    let mut lhs = Q::zero();
    for i in 0..n {
        let mut t = Q::one() - &y[i];
        for j in 0..n {
            if j != i {
                let d = &x[i] - &x[j];
                if d.is_zero() {
                    return Err(Error::Singular("x_i = x_j".into()));
                }
                t *= (&x[i] - &y[j] * &x[j]) / d;
            }
        }
        lhs += t;
    }
    let rhs = Q::one() - y.iter().fold(Q::one(), |a, b| a * b);
    Ok((lhs, rhs))
}

/// Milne's terminating `A_{n-1}` q-binomial theorem,
/// `Φ(q^{-N}; x) = prod_i (q^{-|N|} x_i)_{N_i}`, at rational `q`, `x`.
pub fn milne_qbinomial(nn: &[i64], x: &[Q], q: &Q) -> Result<(Q, Q)> {
    use crate::rational::{rpoch, rpow};
    let n = x.len();
    let mut lhs = Q::zero();
    for r in MultiIndex::boxed(&vec![0; n], nn) {
        let r = &r.0;
        let mut t = Q::one();
        for i in 0..n {
            let s = if r[i] % 2 == 0 { Q::one() } else { -Q::one() };
            let base = s * pow_q(&x[i], r[i]) * rpow(q, binom2(r[i]));
            t *= pow_q(&base, 1 - n as i64);
        }
        for i in 0..n {
            for j in 0..n {
                let ratio = &x[i] / &x[j];
                t *= pow_q(&x[i], r[j]);
                t *= rpoch(&(rpow(q, -nn[j]) * &ratio), q, r[i])?;
                t *= rpoch(&(q * &ratio), q, r[i] - r[j])?;
                let d = rpoch(&(q * &ratio), q, r[i])?;
                if d.is_zero() {
                    return Err(Error::Singular(format!("(q x_{}/x_{})_{} vanishes", i + 1, j + 1, r[i])));
                }
                t /= d;
            }
        }
        lhs += t;
    }
    let total: i64 = nn.iter().sum();
    let mut rhs = Q::one();
    for i in 0..n {
        rhs *= rpoch(&(rpow(q, -total) * &x[i]), q, nn[i])?;
    }
    Ok((lhs, rhs))
}
