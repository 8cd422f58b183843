//! Exact evaluation helpers for rational-function identities, where `q`
//! and every parameter are fixed rationals.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::qseries::{pow_q, qf, qi, Q};

/// `(a; q)_n` for any integer `n`; negative `n` uses
/// `(a)_{-k} = 1 / prod_{j=1..k} (1 - a q^{-j})`.
pub fn rpoch(a: &Q, q: &Q, n: i64) -> Result<Q> {
    if n >= 0 {
        let mut acc = Q::one();
        let mut p = a.clone();
        for _ in 0..n {
            acc *= Q::one() - &p;
            p *= q;
        }
        Ok(acc)
    } else {
        let d = rpoch_recip(a, q, n)?;
        if d.is_zero() {
            return Err(Error::Singular(format!("({}; q)_{} has a vanishing factor", a, n)));
        }
        Ok(d.recip())
    }
}

/// `1/(a; q)_n`; zero-free for negative `n` since it is then a finite product.
pub fn rpoch_recip(a: &Q, q: &Q, n: i64) -> Result<Q> {
    if n >= 0 {
        let p = rpoch(a, q, n)?;
        if p.is_zero() {
            return Err(Error::Singular(format!("1/({}; q)_{} with a vanishing factor", a, n)));
        }
        Ok(p.recip())
    } else {
        let qi_ = q.recip();
        let mut acc = Q::one();
        let mut p = a * &qi_;
        for _ in 0..(-n) {
            acc *= Q::one() - &p;
            p *= &qi_;
        }
        Ok(acc)
    }
}

/// Product of several Pochhammers with the same length.
pub fn rpoch_many(args: &[Q], q: &Q, n: i64) -> Result<Q> {
    args.iter().try_fold(Q::one(), |acc, a| Ok(acc * rpoch(a, q, n)?))
}

pub fn rbinom2(k: i64) -> i64 {
    k * (k - 1) / 2
}

/// `q^{e}` for integer `e`.
pub fn rpow(q: &Q, e: i64) -> Q {
    pow_q(q, e)
}

/// `Δ_C(x q^r) / Δ_C(x)` evaluated at rationals.
pub fn delta_c_ratio(x: &[Q], r: &[i64], q: &Q) -> Result<Q> {
    let y: Vec<Q> = x.iter().zip(r).map(|(a, &k)| a * rpow(q, k)).collect();
    let num = delta_c_value(&y);
    let den = delta_c_value(x);
    if den.is_zero() {
        return Err(Error::Singular("Δ_C(x) vanishes".into()));
    }
    Ok(num / den)
}

pub fn delta_c_value(x: &[Q]) -> Q {
    let mut acc = Q::one();
    for (i, a) in x.iter().enumerate() {
        acc *= Q::one() - a * a;
        for b in &x[i + 1..] {
            acc *= (a - b) * (a * b - Q::one());
        }
    }
    acc
}

pub fn delta_b_value(x: &[Q]) -> Q {
    let mut acc = Q::one();
    for (i, a) in x.iter().enumerate() {
        acc *= Q::one() - a;
        for b in &x[i + 1..] {
            acc *= (a - b) * (a * b - Q::one());
        }
    }
    acc
}

/// A small deterministic source of rational sample values.
pub trait RationalSource {
    fn next_u64(&mut self) -> u64;

    /// A nonzero rational `±a/b` with `1 <= a, b <= height`.
    fn rational(&mut self, height: i64) -> Q {
        let a = (self.next_u64() % height as u64) as i64 + 1;
        let b = (self.next_u64() % height as u64) as i64 + 1;
        let s = if self.next_u64().is_multiple_of(2) { 1 } else { -1 };
        qf(s * a, b)
    }

    /// A rational avoiding `0, ±1`.
    fn generic(&mut self, height: i64) -> Q {
        loop {
            let v = self.rational(height);
            if v != qi(1) && v != qi(-1) {
                return v;
            }
        }
    }
}

impl<R: rand::RngCore> RationalSource for R {
    fn next_u64(&mut self) -> u64 {
        rand::RngCore::next_u64(self)
    }
}

/// The seeded generator used for every sampled point.
pub fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negative_index_pochhammer() {
        let q = qf(1, 3);
        let a = qf(2, 5);
        // (a)_{-1} = 1/(1 - a/q)
        assert_eq!(rpoch(&a, &q, -1).unwrap(), (Q::one() - &a / &q).recip());
        // (a)_n (a q^n)_{-n} = 1
        let aq2 = &a * &q * &q;
        assert_eq!(rpoch(&a, &q, 2).unwrap() * rpoch(&aq2, &q, -2).unwrap(), Q::one());
    }
}
