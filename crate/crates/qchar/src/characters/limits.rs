//! The finite sums `L^{(p)}_{M,N}` and the limits `x_{p+1} -> 1/x_p` and
//! `x_n -> 1` that turn the Andrews transformation into a Weyl-Kac-type sum.
//!
//! Everything is generic over [`Field`] so that one variable can be kept as
//! a rational function `y` and the limit taken exactly.

use crate::error::{Error, Result};
use crate::poly::{fpoch, fpoch_recip, Field, RatFn};
use crate::qseries::{pow_q, Q};

fn fx<F: Field>(v: &Q) -> F {
    F::from_q(v.clone())
}

/// `Δ_C(x q^r)/Δ_C(x)`, or `Δ_B(-x q^r)/Δ_B(-x)` when `odd`.
fn delta_ratio<F: Field>(x: &[F], q: &Q, r: &[i64], odd: bool) -> Result<F> {
    let one = F::fone();
    let delta = |y: &[F]| -> F {
        let mut acc = F::fone();
        for (i, yi) in y.iter().enumerate() {
            acc = if odd { acc.fmul(&one.fsub(yi)) } else { acc.fmul(&one.fsub(&yi.fmul(yi))) };
            for yj in &y[i + 1..] {
                acc = acc.fmul(&yi.fsub(yj)).fmul(&yi.fmul(yj).fsub(&one));
            }
        }
        acc
    };
    let sign = if odd { -Q::from_integer(1.into()) } else { Q::from_integer(1.into()) };
    let base: Vec<F> = x.iter().map(|v| v.fscale(&sign)).collect();
    let shifted: Vec<F> = base.iter().zip(r).map(|(v, &ri)| v.fscale(&pow_q(q, ri))).collect();
    delta(&shifted).fdiv(&delta(&base))
}

/// One summand. `mm` has the length of the `M`-product (`n` for the even
/// form, `n - 1` for the odd one), `nn` has length `n`.
#[allow(clippy::too_many_arguments)]
fn summand<F: Field>(x: &[F], q: &Q, bs: &[F], cs: &[F], mm: &[i64], nn: &[i64], r: &[i64], odd: bool) -> Result<F> {
    let mut t = delta_ratio(x, q, r, odd)?;
    let qf: F = fx(q);
    for (i, xi) in x.iter().enumerate() {
        let ri = r[i];
        for (b, c) in bs.iter().zip(cs) {
            t = t
                .fmul(&fpoch(&b.fmul(xi), q, ri)?)
                .fmul(&fpoch(&c.fmul(xi), q, ri)?)
                .fmul(&fpoch_recip(&qf.fmul(xi).fdiv(b)?, q, ri)?)
                .fmul(&fpoch_recip(&qf.fmul(xi).fdiv(c)?, q, ri)?)
                .fmul(&qf.fdiv(&b.fmul(c))?.fpowi(ri)?);
            if t.is_nil() {
                return Ok(t);
            }
        }
        for (j, xj) in x.iter().enumerate() {
            let ratio = xi.fdiv(xj)?;
            let prod = xi.fmul(xj);
            if let Some(&mj) = mm.get(j) {
                t = t
                    .fmul(&fpoch(&prod.fscale(&pow_q(q, -mj)), q, ri)?)
                    .fmul(&fpoch_recip(&ratio.fscale(&pow_q(q, mj + 1)), q, ri)?)
                    .fscale(&pow_q(q, mj * ri));
            }
            let nj = nn[j];
            t = t
                .fmul(&fpoch(&ratio.fscale(&pow_q(q, -nj)), q, ri)?)
                .fmul(&fpoch_recip(&prod.fscale(&pow_q(q, nj + 1)), q, ri)?)
                .fscale(&pow_q(q, nj * ri));
            if t.is_nil() {
                return Ok(t);
            }
        }
    }
    Ok(t)
}

fn box_sum<F: Field>(lo: &[i64], hi: &[i64], mut f: impl FnMut(&[i64]) -> Result<F>) -> Result<F> {
    let mut acc = F::fzero();
    let neg: Vec<i64> = lo.iter().map(|v| -v).collect();
    for r in crate::partitions::MultiIndex::boxed(&neg, hi) {
        acc = acc.fadd(&f(&r.0)?);
    }
    Ok(acc)
}

fn check_params<F>(bs: &[F], cs: &[F]) -> Result<()> {
    if bs.is_empty() || bs.len() != cs.len() {
        return Err(Error::Invalid("need matching nonempty b and c lists".into()));
    }
    Ok(())
}

/// `L^{(p)}_{M,N}(x)` with `p = len(M)`, summed over `-M ⊆ r ⊆ N`.
pub fn l_mn<F: Field>(mm: &[i64], nn: &[i64], x: &[F], q: &Q, bs: &[F], cs: &[F]) -> Result<F> {
    check_params(bs, cs)?;
    let n = x.len();
    if nn.len() != n || mm.len() > n {
        return Err(Error::Invalid("need len(M) <= len(N) = n".into()));
    }
    let mut full = mm.to_vec();
    full.resize(n, 0);
    box_sum(&full, nn, |r| summand(x, q, bs, cs, &full, nn, r, false))
}

/// The odd form at `x = (x̂, 1)` with `M ∈ N^{n-1}`, `N ∈ N^n`, summed over
/// `-M ⊆ r ⊆ N` where `M_n := N_n`.
pub fn l_odd<F: Field>(mm: &[i64], nn: &[i64], xhat: &[F], q: &Q, bs: &[F], cs: &[F]) -> Result<F> {
    check_params(bs, cs)?;
    let n = xhat.len() + 1;
    if nn.len() != n || mm.len() != n - 1 {
        return Err(Error::Invalid("need len(M) = n - 1 and len(N) = n".into()));
    }
    let mut x = xhat.to_vec();
    x.push(F::fone());
    let mut lo = mm.to_vec();
    lo.push(nn[n - 1]);
    box_sum(&lo, nn, |r| summand(&x, q, bs, cs, mm, nn, r, true))
}

/// An exact limit next to the value it should equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitCheck {
    pub limit: Q,
    pub target: Q,
}

impl LimitCheck {
    pub fn holds(&self) -> bool {
        self.limit == self.target
    }
}

fn lift(v: &[Q]) -> Vec<RatFn> {
    v.iter().map(|c| RatFn::from_q(c.clone())).collect()
}

/// `lim_{x_{p+1} -> 1/x_p} L^{(p-1)}_{M,N}(x)` against
/// `L^{(p)}_{M',N^{(p+1)}}(x^{(p+1)})` with `M' = (M, N_{p+1})`.
/// `mm` has length `p - 1`; the value of `x_{p+1}` in `x` is ignored.
pub fn appendix_limit(p: usize, mm: &[i64], nn: &[i64], x: &[Q], q: &Q, bs: &[Q], cs: &[Q]) -> Result<LimitCheck> {
    let n = x.len();
    if p == 0 || p >= n || mm.len() != p - 1 || nn.len() != n {
        return Err(Error::Invalid(format!("limit needs 1 <= p < n, len(M) = p - 1; got p={} n={}", p, n)));
    }
    let mut xy = lift(x);
    xy[p] = RatFn::var();
    let f = l_mn(mm, nn, &xy, q, &lift(bs), &lift(cs))?;
    let limit = f.limit(&x[p - 1].recip())?;

    let mut m2 = mm.to_vec();
    m2.push(nn[p]);
    let mut n2 = nn.to_vec();
    n2.remove(p);
    let mut x2 = x.to_vec();
    x2.remove(p);
    let target = l_mn(&m2, &n2, &x2, q, bs, cs)?;
    Ok(LimitCheck { limit, target })
}

/// `lim_{x_n -> 1} L^{(n-1)}_{M,N}(x)` against the odd form at `x̂`.
pub fn odd_limit(mm: &[i64], nn: &[i64], xhat: &[Q], q: &Q, bs: &[Q], cs: &[Q]) -> Result<LimitCheck> {
    let mut xy = lift(xhat);
    xy.push(RatFn::var());
    let f = l_mn(mm, nn, &xy, q, &lift(bs), &lift(cs))?;
    let limit = f.limit(&Q::from_integer(1.into()))?;
    let target = l_odd(mm, nn, xhat, q, bs, cs)?;
    Ok(LimitCheck { limit, target })
}
