//! Weyl-Kac lattice sums for `C_n^(1)`, `A_{2n}^(2)` and `D_{n+1}^(2)`, the
//! Hall-Littlewood sums they equal, and the limit machinery connecting the
//! two.

mod combinatorial;
mod conjectures;
mod lattice;
mod limits;
mod theorem;

pub use combinatorial::{char_combinatorial, level_one_combinatorial, CombKind};
pub use conjectures::{case2_sides, sum_m_sides, wz_finite_sides};
pub use lattice::{char_lattice, Algebra, CharSpec};
pub(crate) use lattice::MAX_SHELL;
pub use limits::{appendix_limit, l_mn, l_odd, odd_limit, LimitCheck};
pub use theorem::{thm_main_sides, Variant};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::qseries::{QSeries, Q};
use crate::rational::RationalSource;
use crate::symfunc::{Alphabet, Image, XLaurent};

/// How the variables `x_1..x_n` are specialized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum XSpec {
    /// Formal Laurent variables.
    Formal(usize),
    /// Fixed nonzero rationals.
    Point(Vec<Q>),
}

impl XSpec {
    pub fn n(&self) -> usize {
        match self {
            XSpec::Formal(n) => *n,
            XSpec::Point(v) => v.len(),
        }
    }

    /// Number of variables of the value ring.
    pub fn ring_n(&self) -> usize {
        match self {
            XSpec::Formal(n) => *n,
            XSpec::Point(_) => 0,
        }
    }

    /// Images of `x_i -> x_i t^{shift_i}`.
    pub fn images(&self, shift: &[i64]) -> Vec<Image> {
        match self {
            XSpec::Formal(n) => (0..*n)
                .map(|i| {
                    let mut im = Image::var(*n, i, false);
                    im.t_exp = shift[i];
                    im
                })
                .collect(),
            XSpec::Point(v) => v.iter().zip(shift).map(|(c, &s)| Image::value(c.clone(), s)).collect(),
        }
    }

    /// Evaluate a formal polynomial in `n` variables at `x_i t^{shift_i}`.
    pub fn specialize(&self, f: &XLaurent, shift: &[i64]) -> Result<XLaurent> {
        f.map_monomials(self.ring_n(), &self.images(shift))
    }

    /// The alphabet `x^± = (x_1, 1/x_1, ..)`, with an extra letter 1 if `tail`.
    pub fn plus_minus(&self, tail: bool) -> Alphabet {
        match self {
            XSpec::Formal(n) => Alphabet::plus_minus(*n, tail),
            XSpec::Point(v) => {
                let pts: Vec<(Q, i64)> = v.iter().map(|c| (c.clone(), 0)).collect();
                Alphabet::plus_minus_point(&pts, tail)
            }
        }
    }

    pub fn check(&self) -> Result<()> {
        if let XSpec::Point(v) = self {
            if v.iter().any(|c| c.is_zero()) {
                return Err(Error::Singular("zero coordinate".into()));
            }
        }
        Ok(())
    }
}

/// A parameter that is `∞` or a monomial `coef * t^t_exp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TParam {
    Inf,
    Mono(Q, i64),
}

impl TParam {
    pub fn series(&self) -> Option<QSeries> {
        match self {
            TParam::Inf => None,
            TParam::Mono(c, e) => Some(QSeries::mono(c.clone(), *e)),
        }
    }
}

/// `1/(a; t^step)_∞ = sum_k a^k / (t^step; t^step)_k` for an element `a`
/// of positive valuation.
pub(crate) fn recip_poch_inf(a: &XLaurent, step: i64, order: i64) -> Result<XLaurent> {
    let va = a.val_eff().ok_or_else(|| Error::Singular("zero argument".into()))?;
    if va <= 0 {
        return Err(Error::Singular("reciprocal product needs positive valuation".into()));
    }
    let n = a.nvars();
    let p = QSeries::t_pow(step);
    let mut acc = XLaurent::one(n).truncate(order);
    let mut pow = XLaurent::one(n);
    let mut k = 0;
    while (k + 1) * va <= order {
        k += 1;
        pow = (&pow * a).truncate(order);
        let c = crate::qseries::poch_recip_base(&p, step, crate::qseries::Extent::Finite(k), order)?;
        acc = &acc + &pow.scale(&c).truncate(order);
    }
    Ok(acc)
}

/// Formal monomial `t^t_exp x^{exps/2}` in `n` variables.
pub(crate) fn monomial(n: usize, t_exp: i64, exps: Vec<i32>) -> XLaurent {
    XLaurent::mono(n, exps, QSeries::t_pow(t_exp))
}

/// A point with `x_i ≠ ±1`, `x_i ≠ x_j^{±1}`, so that both `Δ_C(x)` and
/// `Δ_B(±x)` are nonzero.
pub fn sample_point(gen: &mut impl RationalSource, n: usize, height: i64) -> Vec<Q> {
    loop {
        let v: Vec<Q> = (0..n).map(|_| gen.generic(height)).collect();
        let ok = (0..n).all(|i| (i + 1..n).all(|j| v[i] != v[j] && v[i] != v[j].recip() && v[i] != -v[j].clone() && v[i] != -v[j].recip()));
        if ok {
            return v;
        }
    }
}
