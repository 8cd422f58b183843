//! Both sides of the two-parameter `C_n` identities whose `b, c -> ∞`,
//! `c -> -q^{1/2}` and `c -> -1` limits give the character formulas.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partitions::{enum_partitions, PartFilter};
use crate::qseries::{pow_q, Product, QSeries, Q};
use crate::symfunc::schur::{delta_b, delta_c};
use crate::symfunc::{h_m_weight, pprime_fermionic, Alphabet, XLaurent};

use super::lattice::shell_sum;
use super::{TParam, XSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `x = (x_1..x_n)`, symplectic denominator, `K = m + n`.
    One,
    /// `x = (x_1..x_{n-1}, 1)`, odd orthogonal denominator, `K = m + n - 1/2`.
    Two,
}

/// `(vx)_r / (qx/v)_r v^{-r}`, with the `v -> ∞` limit `(-x)^r q^{C(r,2)}`.
fn f_param(p: &mut Product, v: &TParam, x: &Q, r: i64) -> Result<()> {
    match v {
        TParam::Inf => {
            p.mul_mono(&pow_q(&-x.clone(), r), r * (r - 1));
            Ok(())
        }
        TParam::Mono(c, e) => {
            p.mul_poch(&QSeries::mono(c * x, *e), r)?;
            p.div_poch(&QSeries::mono(x / c, 2 - e), r)?;
            p.mul_mono(&pow_q(c, -r), -e * r);
            Ok(())
        }
    }
}

/// `1/D(y; b, c)` over the letters `y`.
fn recip_d(letters: &[Q], b: &TParam, c: &TParam) -> Result<Product> {
    let mut p = Product::new();
    for (i, y) in letters.iter().enumerate() {
        for v in [b, c] {
            if let TParam::Mono(cv, e) = v {
                p.mul_poch_inf(&QSeries::mono(y / cv, 2 - e), 2)?;
            }
        }
        p.div_poch_inf(&QSeries::mono(y * y, 2), 2)?;
        for z in &letters[i + 1..] {
            p.div_poch_inf(&QSeries::mono(y * z, 2), 2)?;
        }
    }
    Ok(p)
}

/// `-t/v` as a series; zero for `v = ∞`.
fn weight_param(v: &TParam) -> Result<QSeries> {
    match v {
        TParam::Inf => Ok(QSeries::zero()),
        TParam::Mono(c, e) => {
            if *e > 1 {
                return Err(Error::Unsupported("weight parameter of negative valuation".into()));
            }
            Ok(QSeries::mono(-c.recip(), 1 - e))
        }
    }
}

/// `(lhs, rhs)` through `t^order` at the rational point `pts`. For
/// [`Variant::Two`] the point lists `x_1..x_{n-1}` and `x_n = 1` is added.
pub fn thm_main_sides(variant: Variant, m: i64, pts: &[Q], b: &TParam, c: &TParam, order: i64) -> Result<(QSeries, QSeries)> {
    let mut x = pts.to_vec();
    if variant == Variant::Two {
        x.push(Q::one());
    }
    let n = x.len();
    if n == 0 || m < 0 {
        return Err(Error::Invalid("need n >= 1 and m >= 0".into()));
    }
    XSpec::Point(x.clone()).check()?;
    let mut letters = vec![];
    for xi in pts {
        letters.push(xi.clone());
        letters.push(xi.recip());
    }
    if variant == Variant::Two {
        letters.push(Q::one());
    }

    // Left side.
    let (delta, point): (XLaurent, Vec<Q>) = match variant {
        Variant::One => (delta_c(n), x.clone()),
        Variant::Two => (delta_b(n), x.iter().map(|v| -v.clone()).collect()),
    };
    let spec = XSpec::Point(point);
    let d0 = spec.specialize(&delta, &vec![0; n])?.as_series().constant_term();
    if d0.is_zero() {
        return Err(Error::Singular("denominator vanishes at the point".into()));
    }
    let nn = n as i64;
    let sum = shell_sum(n, order, XLaurent::zero_to(0, order), |r| {
        let shift: Vec<i64> = r.iter().map(|&ri| 2 * ri).collect();
        let ratio = spec.specialize(&delta, &shift)?.as_series();
        let mut p = Product::new();
        p.mul_exact(&ratio.into_exact());
        p.mul_scalar(&d0.recip());
        for (xi, &ri) in x.iter().zip(r) {
            f_param(&mut p, b, xi, ri)?;
            f_param(&mut p, c, xi, ri)?;
            match variant {
                Variant::One => {
                    let k = 2 * (m + nn);
                    p.mul_mono(&pow_q(xi, k * ri), 2 * (1 - nn) * ri + k * ri * ri);
                }
                Variant::Two => {
                    let k = 2 * m + 2 * nn - 1;
                    let sign = if ri % 2 == 0 { Q::one() } else { -Q::one() };
                    p.mul_mono(&(sign * pow_q(xi, k * ri)), (3 - 2 * nn) * ri + k * ri * ri);
                }
            }
        }
        if p.is_zero() {
            return Ok(None);
        }
        Ok(Some(XLaurent::constant(0, p.finish(order)?)))
    })?;
    let lhs_prod = recip_d(&letters, b, c)?.finish(order)?;
    let lhs = (&sum.as_series() * &lhs_prod).truncate(order);

    // Right side.
    let w = weight_param(b)?;
    let z = weight_param(c)?;
    let alph = Alphabet::Point(letters.iter().map(|v| (v.clone(), 0)).collect());
    let mut rhs = QSeries::zero_to(order);
    for lambda in enum_partitions(2 * m, order, PartFilter::All) {
        let wt = lambda.weight();
        let h = h_m_weight(&lambda, m, &w, &z, order - wt)?;
        if h.is_zero() && h.is_exact() {
            continue;
        }
        let pp = pprime_fermionic(&lambda, &alph, order - wt)?.as_series();
        rhs = &rhs + &(&h * &pp).shift(wt).truncate(order);
    }
    Ok((lhs, rhs))
}
