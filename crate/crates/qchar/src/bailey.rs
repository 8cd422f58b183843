//! `C_n` Bailey pairs, the Bailey lemma and the `C_n` Andrews
//! transformation, evaluated exactly with `q`, `x` and the parameters fixed.
//!
//! Values live in any [`Field`]: plain rationals, or rational functions of
//! an auxiliary `ε` when a parameter is sent to infinity as `b = 1/ε`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::RngCore;

use crate::error::{Error, Result};
use crate::partitions::MultiIndex;
use crate::poly::{fpoch, Field, RatFn};
use crate::qseries::Q;
use crate::rational::{delta_c_ratio, rbinom2, rpoch, rpoch_recip, rpow, RationalSource};

/// A Bailey-lemma parameter: a rational value or `∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Param {
    Val(Q),
    Inf,
}

impl Param {
    fn lift(&self) -> RatFn {
        match self {
            Param::Val(v) => RatFn::from_q(v.clone()),
            // b = 1/ε
            Param::Inf => RatFn::fone().fdiv(&RatFn::var()).unwrap(),
        }
    }

    fn value(&self) -> Option<Q> {
        match self {
            Param::Val(v) => Some(v.clone()),
            Param::Inf => None,
        }
    }
}

/// The fixed base `q` and variables `x_1..x_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Point {
    pub q: Q,
    pub x: Vec<Q>,
}

impl Point {
    pub fn n(&self) -> usize {
        self.x.len()
    }

    fn ratio(&self, i: usize, j: usize) -> Q {
        &self.q * &self.x[i] / &self.x[j]
    }

    fn prod(&self, i: usize, j: usize) -> Q {
        &self.x[i] * &self.x[j]
    }
}

/// Tables `α_N`, `β_N` on the box `0 ⊆ N ⊆ bound`.
#[derive(Clone, Debug)]
pub struct BaileyPair<F> {
    pub point: Point,
    pub bound: MultiIndex,
    pub alpha: BTreeMap<MultiIndex, F>,
    pub beta: BTreeMap<MultiIndex, F>,
}

fn indices(bound: &MultiIndex) -> Vec<MultiIndex> {
    MultiIndex::boxed(&vec![0; bound.len()], &bound.0)
}

fn sub_box(n: &MultiIndex) -> Vec<MultiIndex> {
    indices(n)
}

/// `prod_{i,j} 1/((qx_i/x_j)_{N_i-r_j} (qx_ix_j)_{N_i+r_j})`.
pub fn bp_kernel(p: &Point, nn: &MultiIndex, r: &MultiIndex) -> Result<Q> {
    let n = p.n();
    let mut acc = Q::one();
    for i in 0..n {
        for j in 0..n {
            acc *= rpoch_recip(&p.ratio(i, j), &p.q, nn.0[i] - r.0[j])?;
            acc *= rpoch_recip(&(&p.q * p.prod(i, j)), &p.q, nn.0[i] + r.0[j])?;
        }
    }
    Ok(acc)
}

/// The pair relation: `β_N` from the `α_r`, `r ⊆ N`.
pub fn beta_from_alpha<F: Field>(p: &Point, alpha: &BTreeMap<MultiIndex, F>, nn: &MultiIndex) -> Result<F> {
    let mut acc = F::fzero();
    for r in sub_box(nn) {
        let a = alpha.get(&r).ok_or_else(|| Error::Invalid(format!("α{} missing", r)))?;
        let k = bp_kernel(p, nn, &r)?;
        if !k.is_zero() {
            acc = acc.fadd(&a.fscale(&k));
        }
    }
    Ok(acc)
}

/// The coefficient of `β_r` in the inverted relation for `α_N`.
pub fn inversion_kernel(p: &Point, nn: &MultiIndex, r: &MultiIndex) -> Result<Q> {
    let n = p.n();
    let q = &p.q;
    let x = &p.x;
    let mut acc = delta_c_ratio(x, &nn.0, q)?;
    acc *= rpow(q, -(n as i64 - 1) * r.sum());
    for i in 0..n {
        for j in i + 1..n {
            let num = (&x[i] * rpow(q, r.0[i]) - &x[j] * rpow(q, r.0[j])) * (Q::one() - p.prod(i, j) * rpow(q, r.0[i] + r.0[j]));
            let den = (&x[i] - &x[j]) * (Q::one() - p.prod(i, j));
            if den.is_zero() {
                return Err(Error::Singular("x_i = x_j or x_i x_j = 1".into()));
            }
            acc *= num / den;
        }
    }
    for i in 0..n {
        for j in 0..n {
            let k = nn.0[i] - r.0[j];
            acc *= rpow(&(-&x[i] / &x[j]), k) * rpow(q, rbinom2(k));
            acc *= rpoch(&p.prod(i, j), q, nn.0[i] + r.0[j])?;
            acc *= rpoch_recip(&p.ratio(i, j), q, k)?;
        }
    }
    Ok(acc)
}

/// The inverted relation: `α_N` from the `β_r`, `r ⊆ N`.
pub fn alpha_from_beta<F: Field>(p: &Point, beta: &BTreeMap<MultiIndex, F>, nn: &MultiIndex) -> Result<F> {
    let mut acc = F::fzero();
    for r in sub_box(nn) {
        let b = beta.get(&r).ok_or_else(|| Error::Invalid(format!("β{} missing", r)))?;
        let k = inversion_kernel(p, nn, &r)?;
        if !k.is_zero() {
            acc = acc.fadd(&b.fscale(&k));
        }
    }
    Ok(acc)
}

impl<F: Field> BaileyPair<F> {
    /// Build `β` from a given `α` on the box.
    pub fn from_alpha(point: Point, bound: MultiIndex, alpha: BTreeMap<MultiIndex, F>) -> Result<Self> {
        let mut beta = BTreeMap::new();
        for nn in indices(&bound) {
            let b = beta_from_alpha(&point, &alpha, &nn)?;
            beta.insert(nn, b);
        }
        Ok(BaileyPair { point, bound, alpha, beta })
    }

    /// The pair with `β_N = δ_{N,0}`.
    pub fn unit(point: Point, bound: MultiIndex) -> Result<Self> {
        let n = point.n();
        let q = point.q.clone();
        let x = point.x.clone();
        let mut alpha = BTreeMap::new();
        let mut beta = BTreeMap::new();
        for nn in indices(&bound) {
            let mut a = delta_c_ratio(&x, &nn.0, &q)?;
            for i in 0..n {
                let k = nn.0[i];
                for j in 0..n {
                    a *= rpow(&(-&x[i] / &x[j]), k) * rpow(&q, rbinom2(k));
                    a *= rpoch(&point.prod(i, j), &q, k)?;
                    a *= rpoch_recip(&point.ratio(i, j), &q, k)?;
                }
            }
            alpha.insert(nn.clone(), F::from_q(a));
            beta.insert(nn.clone(), if nn.is_zero() { F::fone() } else { F::fzero() });
        }
        Ok(BaileyPair { point, bound, alpha, beta })
    }

    /// First `N` in the box where the stored tables violate the pair relation.
    pub fn check_relation(&self) -> Result<Option<MultiIndex>> {
        for nn in indices(&self.bound) {
            let b = beta_from_alpha(&self.point, &self.alpha, &nn)?;
            if !b.fsub(&self.beta[&nn]).is_nil() {
                return Ok(Some(nn));
            }
        }
        Ok(None)
    }
}

/// `prod_i (b x_i, c x_i)_{k_i} / (q x_i/b, q x_i/c)_{l_i}`.
fn param_ratio<F: Field>(p: &Point, b: &F, c: &F, top: &MultiIndex, bottom: &MultiIndex) -> Result<F> {
    let q = &p.q;
    let mut acc = F::fone();
    for (i, xi) in p.x.iter().enumerate() {
        for v in [b, c] {
            acc = acc.fmul(&fpoch(&v.fscale(xi), q, top.0[i])?);
            let down = F::from_q(q * xi).fdiv(v)?;
            acc = acc.fdiv(&fpoch(&down, q, bottom.0[i])?)?;
        }
    }
    Ok(acc)
}

/// One application of the Bailey lemma with parameters `b, c`.
pub fn bailey_step<F: Field>(pair: &BaileyPair<F>, b: &F, c: &F) -> Result<BaileyPair<F>> {
    let p = &pair.point;
    let q = &p.q;
    let n = p.n();
    let qbc = F::from_q(q.clone()).fdiv(&b.fmul(c))?;
    let mut alpha = BTreeMap::new();
    let mut beta = BTreeMap::new();
    for nn in indices(&pair.bound) {
        let mult = param_ratio(p, b, c, &nn, &nn)?.fmul(&qbc.fpowi(nn.sum())?);
        alpha.insert(nn.clone(), pair.alpha[&nn].fmul(&mult));

        let mut acc = F::fzero();
        for r in sub_box(&nn) {
            let br = &pair.beta[&r];
            if br.is_nil() {
                continue;
            }
            let mut rat = Q::one();
            for i in 0..n {
                for j in i + 1..n {
                    let a = q * p.prod(i, j);
                    rat *= rpoch(&a, q, r.0[i] + r.0[j])? * rpoch_recip(&a, q, nn.0[i] + nn.0[j])?;
                }
                for j in 0..n {
                    let a = p.ratio(i, j);
                    rat *= rpoch(&a, q, r.0[i] - r.0[j])? * rpoch_recip(&a, q, nn.0[i] - r.0[j])?;
                }
            }
            if rat.is_zero() {
                continue;
            }
            let t = fpoch(&qbc, q, nn.sum() - r.sum())?
                .fmul(&qbc.fpowi(r.sum())?)
                .fmul(&param_ratio(p, b, c, &r, &nn)?)
                .fscale(&rat);
            acc = acc.fadd(&br.fmul(&t));
        }
        beta.insert(nn, acc);
    }
    Ok(BaileyPair { point: p.clone(), bound: pair.bound.clone(), alpha, beta })
}

/// `f^(0)_{r,s} = prod_{i,j} (qx_i/x_j)_{r_i-r_j} / (qx_i/x_j)_{r_i-s_j}`.
pub fn f0(p: &Point, r: &MultiIndex, s: &MultiIndex) -> Result<Q> {
    let n = p.n();
    let mut acc = Q::one();
    for i in 0..n {
        for j in 0..n {
            let a = p.ratio(i, j);
            acc *= rpoch(&a, &p.q, r.0[i] - r.0[j])? * rpoch_recip(&a, &p.q, r.0[i] - s.0[j])?;
            if acc.is_zero() {
                return Ok(acc);
            }
        }
    }
    Ok(acc)
}

fn check_params(bs: &[Param], cs: &[Param], m: usize) -> Result<()> {
    if bs.len() != m + 1 || cs.len() != m + 1 {
        return Err(Error::Invalid(format!("need m+1 = {} pairs (b, c)", m + 1)));
    }
    Ok(())
}

/// Left-hand side of the Andrews transformation in a field.
pub fn andrews_lhs_in<F: Field>(p: &Point, nn: &MultiIndex, bs: &[F], cs: &[F]) -> Result<F> {
    let n = p.n();
    let q = &p.q;
    let x = &p.x;
    let mut acc = F::fzero();
    for r in sub_box(nn) {
        let mut rat = delta_c_ratio(x, &r.0, q)?;
        for i in 0..n {
            for j in 0..n {
                let ri = r.0[i];
                rat *= rpoch(&(rpow(q, -nn.0[j]) * &x[i] / &x[j]), q, ri)? * rpoch(&p.prod(i, j), q, ri)?;
                rat *= rpoch_recip(&p.ratio(i, j), q, ri)?;
                rat *= rpoch_recip(&(rpow(q, nn.0[j] + 1) * p.prod(i, j)), q, ri)?;
                rat *= rpow(q, nn.0[j] * ri);
            }
        }
        if rat.is_zero() {
            continue;
        }
        let mut t = F::from_q(rat);
        for (b, c) in bs.iter().zip(cs) {
            let qbc = F::from_q(q.clone()).fdiv(&b.fmul(c))?;
            t = t.fmul(&param_ratio(p, b, c, &r, &r)?).fmul(&qbc.fpowi(r.sum())?);
        }
        acc = acc.fadd(&t);
    }
    Ok(acc)
}

/// Chains `N ⊇ r^(1) ⊇ ... ⊇ r^(m)`.
fn chains(nn: &MultiIndex, m: usize) -> Vec<Vec<MultiIndex>> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        let mut next = vec![];
        for ch in out {
            let last = ch.last().unwrap_or(nn).clone();
            for r in sub_box(&last) {
                let mut c = ch.clone();
                c.push(r);
                next.push(c);
            }
        }
        out = next;
    }
    out
}

/// Right-hand side of the Andrews transformation in a field.
pub fn andrews_rhs_in<F: Field>(p: &Point, nn: &MultiIndex, bs: &[F], cs: &[F]) -> Result<F> {
    let n = p.n();
    let q = &p.q;
    let m = bs.len() - 1;
    let mut pre = Q::one();
    for i in 0..n {
        for j in 0..n {
            pre *= rpoch(&(q * p.prod(i, j)), q, nn.0[i])? * rpoch(&p.ratio(i, j), q, nn.0[i])?;
        }
        for j in i + 1..n {
            pre *= rpoch_recip(&(q * p.prod(i, j)), q, nn.0[i] + nn.0[j])?;
        }
    }
    let zero = MultiIndex::zeros(n);
    let mut acc = F::fzero();
    for ch in chains(nn, m) {
        let mut full = vec![nn.clone()];
        full.extend(ch);
        full.push(zero.clone());
        let mut rat = Q::one();
        for j in 0..n {
            for i in 0..n {
                rat *= rpoch_recip(&p.ratio(i, j), q, nn.0[i] - full[1].0[j])?;
            }
        }
        for l in 1..m + 1 {
            rat *= f0(p, &full[l], &full[l + 1])?;
        }
        if rat.is_zero() {
            continue;
        }
        let mut t = F::from_q(rat);
        for l in 1..=m + 1 {
            let (b, c) = (&bs[l - 1], &cs[l - 1]);
            let qbc = F::from_q(q.clone()).fdiv(&b.fmul(c))?;
            t = t
                .fmul(&fpoch(&qbc, q, full[l - 1].sum() - full[l].sum())?)
                .fmul(&qbc.fpowi(full[l].sum())?)
                .fmul(&param_ratio(p, b, c, &full[l], &full[l - 1])?);
        }
        acc = acc.fadd(&t);
    }
    Ok(acc.fscale(&pre))
}

fn lift_all(ps: &[Param]) -> Vec<RatFn> {
    ps.iter().map(Param::lift).collect()
}

fn values(ps: &[Param]) -> Option<Vec<Q>> {
    ps.iter().map(Param::value).collect()
}

/// Both sides of the Andrews transformation with `m + 1` parameter pairs.
/// Infinite parameters are handled by an exact limit in `ε`.
pub fn andrews_sides(p: &Point, m: usize, nn: &MultiIndex, bs: &[Param], cs: &[Param]) -> Result<(Q, Q)> {
    check_params(bs, cs, m)?;
    if let (Some(b), Some(c)) = (values(bs), values(cs)) {
        return Ok((andrews_lhs_in(p, nn, &b, &c)?, andrews_rhs_in(p, nn, &b, &c)?));
    }
    let (b, c) = (lift_all(bs), lift_all(cs));
    let l = andrews_lhs_in(p, nn, &b, &c)?;
    let r = andrews_rhs_in(p, nn, &b, &c)?;
    Ok((l.limit(&Q::zero())?, r.limit(&Q::zero())?))
}

pub fn andrews_lhs(p: &Point, m: usize, nn: &MultiIndex, bs: &[Param], cs: &[Param]) -> Result<Q> {
    andrews_sides(p, m, nn, bs, cs).map(|s| s.0)
}

pub fn andrews_rhs(p: &Point, m: usize, nn: &MultiIndex, bs: &[Param], cs: &[Param]) -> Result<Q> {
    andrews_sides(p, m, nn, bs, cs).map(|s| s.1)
}

/// Re-run the proof: iterate the lemma from the unit pair with
/// `(b_{m+1}, c_{m+1})` first, check the pair relation at every stage, and
/// compare `β_N / kernel(N, 0)` with both sides of the transformation.
pub fn iterated_pair_check(p: &Point, m: usize, nn: &MultiIndex, bs: &[Q], cs: &[Q]) -> Result<bool> {
    let mut pair: BaileyPair<Q> = BaileyPair::unit(p.clone(), nn.clone())?;
    for l in (0..=m).rev() {
        pair = bailey_step(&pair, &bs[l], &cs[l])?;
        if pair.check_relation()?.is_some() {
            return Ok(false);
        }
    }
    let k0 = bp_kernel(p, nn, &MultiIndex::zeros(p.n()))?;
    let lhs = andrews_lhs_in(p, nn, bs, cs)?;
    let rhs = andrews_rhs_in(p, nn, bs, cs)?;
    let from_pair = &pair.beta[nn] / k0;
    Ok(from_pair == lhs && lhs == rhs)
}

/// `lim_{b,c->∞}` of the lemma's multiplier on `α_N`, computed by putting
/// `b = c = 1/ε` and letting `ε -> 0`.
pub fn step_multiplier_limit(p: &Point, nn: &MultiIndex) -> Result<Q> {
    let b = Param::Inf.lift();
    let qbc = RatFn::from_q(p.q.clone()).fdiv(&b.fmul(&b))?;
    let mult = param_ratio(p, &b, &b, nn, nn)?.fmul(&qbc.fpowi(nn.sum())?);
    mult.limit(&Q::zero())
}

/// The closed form `prod_i x_i^{2N_i} q^{N_i^2}` of that limit.
pub fn step_multiplier_closed(p: &Point, nn: &MultiIndex) -> Q {
    p.x.iter().zip(&nn.0).map(|(x, &k)| rpow(x, 2 * k) * rpow(&p.q, k * k)).product()
}

/// A random point with `q, x_i` of height at most `height`, avoiding
/// `q ∈ {0, ±1}`.
pub fn random_point(gen: &mut impl RngCore, n: usize, height: i64) -> Point {
    let q = gen.generic(height);
    let x = (0..n).map(|_| gen.generic(height)).collect();
    Point { q, x }
}

/// Sample points until `f` succeeds without a singular factor, at most
/// `tries` times.
pub fn sample_nonsingular<G: RngCore, T>(gen: &mut G, tries: usize, mut f: impl FnMut(&mut G) -> Result<T>) -> Result<T> {
    let mut last = Error::Singular("no attempts".into());
    for _ in 0..tries {
        match f(gen) {
            Ok(v) => return Ok(v),
            Err(e @ Error::Singular(_)) => last = e,
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

/// Random `α` table on a box, for the inversion roundtrip.
pub fn random_alpha(gen: &mut impl RngCore, bound: &MultiIndex, height: i64) -> BTreeMap<MultiIndex, Q> {
    indices(bound).into_iter().map(|nn| (nn, gen.rational(height))).collect()
}

/// `alpha_from_beta(beta_from_alpha(α)) = α` on the whole box.
pub fn inversion_roundtrip(p: &Point, alpha: &BTreeMap<MultiIndex, Q>, bound: &MultiIndex) -> Result<bool> {
    let pair = BaileyPair::from_alpha(p.clone(), bound.clone(), alpha.clone())?;
    for nn in indices(bound) {
        if alpha_from_beta(p, &pair.beta, &nn)? != alpha[&nn] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The classical `n = 1` relation `β_N = sum_r α_r / ((q)_{N-r} (qx^2)_{N+r})`.
pub fn classical_beta(q: &Q, x: &Q, alpha: &[Q], nn: i64) -> Result<Q> {
    let mut acc = Q::zero();
    for r in 0..=nn {
        acc += &alpha[r as usize] * rpoch_recip(q, q, nn - r)? * rpoch_recip(&(q * x * x), q, nn + r)?;
    }
    Ok(acc)
}
