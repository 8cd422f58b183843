//! `e^{-Λ} ch V(Λ)` from the Weyl-Kac formula, written as a sum over
//! `r ∈ Z^n` of symplectic or odd orthogonal numerators at shifted points.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::symfunc::schur::{delta_b, delta_c, so_odd_numerator, symp_numerator};
use crate::symfunc::XLaurent;

use super::{monomial, recip_poch_inf, XSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algebra {
    /// `C_n^(1)` with `x_i = e^{-α_i-..-α_{n-1}-α_n/2}`.
    C1,
    /// `A_{2n}^(2)`, symplectic form.
    A2EvenI,
    /// `A_{2n}^(2)`, odd orthogonal form in the variables `y`.
    A2EvenII,
    /// `D_{n+1}^(2)`.
    D2,
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Algebra::C1 => "C1",
            Algebra::A2EvenI => "A2even-I",
            Algebra::A2EvenII => "A2even-II",
            Algebra::D2 => "D2",
        };
        write!(f, "{}", s)
    }
}

impl FromStr for Algebra {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "C1" | "C(1)" | "Cn1" => Ok(Algebra::C1),
            "A2even-I" | "A2-I" => Ok(Algebra::A2EvenI),
            "A2even-II" | "A2-II" => Ok(Algebra::A2EvenII),
            "D2" | "D(2)" => Ok(Algebra::D2),
            _ => Err(Error::Parse(format!("unknown algebra {}", s))),
        }
    }
}

/// Highest weight data: `c` is `c_0` (or `c_n` for `A2EvenII`) and
/// `lambda` the partition (`μ` for `A2EvenII`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharSpec {
    pub algebra: Algebra,
    pub c: i64,
    pub lambda: Partition,
    pub n: usize,
}

impl CharSpec {
    pub fn new(algebra: Algebra, c: i64, lambda: Partition, n: usize) -> Result<Self> {
        if n == 0 || lambda.len() > n || c < 0 {
            return Err(Error::Invalid(format!("bad highest weight c={} λ={} n={}", c, lambda, n)));
        }
        if lambda.is_half() && matches!(algebra, Algebra::C1 | Algebra::A2EvenI) {
            return Err(Error::Invalid("half-partitions only for the odd orthogonal forms".into()));
        }
        Ok(CharSpec { algebra, c, lambda, n })
    }

    /// `κ = lev(Λ + ρ)`.
    pub fn kappa(&self) -> i64 {
        let n = self.n as i64;
        let l1 = self.lambda.first();
        let l1x2 = self.lambda.doubled().first().copied().unwrap_or(0);
        match self.algebra {
            Algebra::C1 => n + 1 + self.c + l1,
            Algebra::A2EvenI => 2 * n + 1 + self.c + 2 * l1,
            Algebra::A2EvenII => 2 * n + 1 + 2 * self.c + l1x2,
            Algebra::D2 => 2 * n + self.c + l1x2,
        }
    }

    /// `(quadratic, linear)` t-exponent of the `r_i` term, the doubled
    /// x-exponent slope `2κ` or `4κ`, and the q-shift `s` in `x q^{s r}`.
    fn shape(&self) -> (i64, i64, i64, i64) {
        let n = self.n as i64;
        let k = self.kappa();
        match self.algebra {
            Algebra::C1 => (2 * k, -2 * n, 4 * k, 1),
            Algebra::A2EvenI => (k, -2 * n, 2 * k, 1),
            Algebra::A2EvenII => (k, -(2 * n - 1), 2 * k, 1),
            Algebra::D2 => (2 * k, -2 * (2 * n - 1), 2 * k, 2),
        }
    }

    fn numerator(&self) -> Result<(XLaurent, XLaurent)> {
        match self.algebra {
            Algebra::C1 | Algebra::A2EvenI => Ok((symp_numerator(&self.lambda, self.n)?, delta_c(self.n))),
            Algebra::A2EvenII | Algebra::D2 => Ok((so_odd_numerator(&self.lambda, self.n)?, delta_b(self.n))),
        }
    }

    /// Reciprocal prefactor as `(t_exp, doubled exps, step)` triples.
    fn prefactor(&self) -> Vec<(i64, Vec<i32>, i64)> {
        let n = self.n;
        let mut out = vec![];
        let unit = |i: usize, d: i32| {
            let mut e = vec![0; n];
            e[i] = d;
            e
        };
        let pair = |i: usize, j: usize, a: i32, b: i32| {
            let mut e = vec![0; n];
            e[i] = a;
            e[j] = b;
            e
        };
        let pairs = |t: i64, step: i64, out: &mut Vec<(i64, Vec<i32>, i64)>| {
            for i in 0..n {
                for j in i + 1..n {
                    for (a, b) in [(2, 2), (2, -2), (-2, 2), (-2, -2)] {
                        out.push((t, pair(i, j, a, b), step));
                    }
                }
            }
        };
        match self.algebra {
            Algebra::C1 => {
                for _ in 0..n {
                    out.push((2, vec![0; n], 2));
                }
                for i in 0..n {
                    out.push((2, unit(i, 4), 2));
                    out.push((2, unit(i, -4), 2));
                }
                pairs(2, 2, &mut out);
            }
            Algebra::A2EvenI => {
                for _ in 0..n {
                    out.push((2, vec![0; n], 2));
                }
                for i in 0..n {
                    out.push((1, unit(i, 2), 2));
                    out.push((1, unit(i, -2), 2));
                    out.push((4, unit(i, 4), 4));
                    out.push((4, unit(i, -4), 4));
                }
                pairs(2, 2, &mut out);
            }
            Algebra::A2EvenII => {
                for _ in 0..n {
                    out.push((2, vec![0; n], 2));
                }
                for i in 0..n {
                    out.push((2, unit(i, 2), 2));
                    out.push((2, unit(i, -2), 2));
                    out.push((2, unit(i, 4), 4));
                    out.push((2, unit(i, -4), 4));
                }
                pairs(2, 2, &mut out);
            }
            Algebra::D2 => {
                for _ in 0..n - 1 {
                    out.push((4, vec![0; n], 4));
                }
                out.push((2, vec![0; n], 2));
                for i in 0..n {
                    out.push((2, unit(i, 2), 2));
                    out.push((2, unit(i, -2), 2));
                }
                pairs(4, 4, &mut out);
            }
        }
        out
    }
}

/// Shell `‖r‖_∞ = k` of `Z^n`.
pub(crate) fn shell(n: usize, k: i64) -> Vec<Vec<i64>> {
    let all = crate::partitions::MultiIndex::boxed(&vec![-k; n], &vec![k; n]);
    all.into_iter().map(|v| v.0).filter(|v| v.iter().map(|a| a.abs()).max().unwrap_or(0) == k).collect()
}

/// Largest shell tried before giving up.
pub(crate) const MAX_SHELL: i64 = 400;

/// Sum `f(r)` over `r ∈ Z^n` by shells, stopping once two consecutive
/// shells contribute nothing through `t^order`. `f` returns `None` for a
/// vanishing term, else the term and its valuation.
pub(crate) fn shell_sum(
    n: usize,
    order: i64,
    zero: XLaurent,
    mut f: impl FnMut(&[i64]) -> Result<Option<XLaurent>>,
) -> Result<XLaurent> {
    let mut acc = zero;
    let mut quiet = 0;
    for k in 0..=MAX_SHELL {
        let mut live = false;
        for r in shell(n, k) {
            if let Some(term) = f(&r)? {
                if term.val_eff().is_some_and(|v| v <= order) {
                    live = true;
                    acc = &acc + &term.truncate(order);
                }
            }
        }
        if live {
            quiet = 0;
        } else {
            quiet += 1;
            if quiet == 2 {
                return Ok(acc);
            }
        }
    }
    Err(Error::ShellBound(format!("lattice sum still live at shell {}", MAX_SHELL)))
}

/// `e^{-Λ} ch V(Λ)` through `t^order` (with `t^2 = q`).
pub fn char_lattice(spec: &CharSpec, x: &XSpec, order: i64) -> Result<XLaurent> {
    if x.n() != spec.n {
        return Err(Error::Invalid(format!("rank {} but {} variables", spec.n, x.n())));
    }
    x.check()?;
    let n = spec.n;
    let (num, delta) = spec.numerator()?;
    let (quad, lin, slope, s) = spec.shape();
    let doubled = padded_doubled(&spec.lambda, n);
    let rn = x.ring_n();
    // Terms are Laurent in t only through the shifts; the numerator can have
    // negative t-powers, so track slack below zero.
    let sum = shell_sum(n, order, XLaurent::zero_to(rn, order), |r| {
        let shift: Vec<i64> = r.iter().map(|&ri| 2 * s * ri).collect();
        let nv = x.specialize(&num, &shift)?;
        if nv.is_zero() {
            return Ok(None);
        }
        let texp: i64 = r.iter().map(|&ri| quad * ri * ri + lin * ri).sum();
        let exps: Vec<i32> = r.iter().zip(&doubled).map(|(&ri, &d)| (slope * ri) as i32 + d).collect();
        let mono = x.specialize(&monomial(n, texp, exps), &vec![0; n])?;
        Ok(Some(&nv * &mono))
    })?;
    let d = x.specialize(&delta, &vec![0; n])?;
    let mut body = sum.div_exact(&d)?;
    for (t, e, step) in spec.prefactor() {
        let a = x.specialize(&monomial(n, t, e), &vec![0; n])?;
        body = (&body * &recip_poch_inf(&a, step, order)?).truncate(order);
    }
    Ok(body.truncate(order))
}

/// Doubled parts padded to length `n`; half-partitions have all `n` parts.
fn padded_doubled(lambda: &Partition, n: usize) -> Vec<i32> {
    let mut d: Vec<i32> = lambda.doubled().iter().map(|&v| v as i32).collect();
    d.resize(n, 0);
    d
}
