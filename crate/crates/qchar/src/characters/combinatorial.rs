//! Hall-Littlewood sides of the character identities.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::partitions::{enum_partitions, PartFilter, Partition};
use crate::qseries::{poch_base, Extent, QSeries};
use crate::symfunc::{pprime_fermionic, qprime_fermionic, XLaurent};

use super::{monomial, XSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CombKind {
    /// `sum_{λ even} q^{|λ|/2} P'_λ(x^±)`.
    CnEven,
    /// `sum_λ q^{|λ|/2} P'_λ(x^±)`.
    A2All,
    /// `sum_λ q^{(|λ| + l(λ_odd))/2} P'_λ(x^±)`.
    A2Shifted,
    /// `sum_λ q^{|λ|} prod_{i<2m} (-q)_{m_i} P'_λ(x^±; q^2)`.
    DTwisted,
}

impl fmt::Display for CombKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CombKind::CnEven => "Cn-even",
            CombKind::A2All => "A2-all",
            CombKind::A2Shifted => "A2-shifted",
            CombKind::DTwisted => "D-twisted",
        };
        write!(f, "{}", s)
    }
}

impl FromStr for CombKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Cn-even" => Ok(CombKind::CnEven),
            "A2-all" => Ok(CombKind::A2All),
            "A2-shifted" => Ok(CombKind::A2Shifted),
            "D-twisted" => Ok(CombKind::DTwisted),
            _ => Err(Error::Parse(format!("unknown combinatorial kind {}", s))),
        }
    }
}

/// The sum over `λ` with `λ_1 <= two_m` through `t^order`. `two_m` may be
/// odd for the half-integer cases.
pub fn char_combinatorial(kind: CombKind, two_m: i64, x: &XSpec, order: i64) -> Result<XLaurent> {
    if two_m < 0 {
        return Err(Error::Invalid("m must be nonnegative".into()));
    }
    x.check()?;
    let alph = x.plus_minus(false);
    let rn = x.ring_n();
    let filter = if kind == CombKind::CnEven { PartFilter::Even } else { PartFilter::All };
    let per_weight = if kind == CombKind::DTwisted { 2 } else { 1 };
    let mut acc = XLaurent::zero_to(rn, order);
    for lambda in enum_partitions(two_m, order / per_weight, filter) {
        let shift = match kind {
            CombKind::CnEven | CombKind::A2All => lambda.weight(),
            CombKind::A2Shifted => lambda.weight() + lambda.lambda_odd().len() as i64,
            CombKind::DTwisted => 2 * lambda.weight(),
        };
        if shift > order {
            continue;
        }
        let term = if kind == CombKind::DTwisted {
            let inner = pprime_fermionic(&lambda, &alph, (order - shift) / 2)?.dilate(2);
            inner.scale(&d_weight(&lambda, two_m, order - shift)?)
        } else {
            pprime_fermionic(&lambda, &alph, order - shift)?
        };
        acc = &acc + &term.shift_t(shift).truncate(order);
    }
    Ok(acc)
}

/// `prod_{i=0}^{2m-1} (-q)_{m_i(λ)}` with `m_0 = ∞`; empty for `m = 0`.
fn d_weight(lambda: &Partition, two_m: i64, order: i64) -> Result<QSeries> {
    let mq = QSeries::mono(crate::qseries::qi(-1), 2);
    if two_m == 0 {
        return Ok(QSeries::one());
    }
    let mut acc = poch_base(&mq, 2, Extent::Infinite, order)?;
    for (part, mult) in lambda.multiplicities() {
        if part < two_m {
            acc = &acc * &poch_base(&mq, 2, Extent::Finite(mult), order)?;
        }
    }
    Ok(acc.truncate(order))
}

/// `x_1 sum_k q^k/(q)_k Q'_{(2^k 1)}(x^±)`, the conjectured form of
/// `e^{-Λ_1} ch V(Λ_1)` for `C_n^(1)`.
pub fn level_one_combinatorial(x: &XSpec, order: i64) -> Result<XLaurent> {
    x.check()?;
    let n = x.n();
    let alph = x.plus_minus(false);
    let rn = x.ring_n();
    let q = QSeries::t_pow(2);
    let mut acc = XLaurent::zero_to(rn, order);
    let mut k = 0;
    while 2 * k <= order {
        let mut parts = vec![2; k as usize];
        parts.push(1);
        let lambda = Partition::new(&parts);
        let qp = qprime_fermionic(&lambda, &alph, Some(order - 2 * k))?;
        let c = crate::qseries::poch_recip_base(&q, 2, Extent::Finite(k), order)?;
        acc = &acc + &qp.scale(&c).shift_t(2 * k).truncate(order);
        k += 1;
    }
    let mut e = vec![0; n];
    e[0] = 2;
    let x1 = x.specialize(&monomial(n, 0, e), &vec![0; n])?;
    Ok((&acc * &x1).truncate(order))
}
