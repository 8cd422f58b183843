//! Rogers-Szegő polynomials and the weights `h_λ`, `h^(m)_λ`.

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::qseries::{poch, qbinomial_poly, Extent, QSeries};

/// `H_m(z; q) = sum_i z^i [m, i]`.
pub fn rogers_szego(m: i64, z: &QSeries) -> QSeries {
    homogeneous_rs(m, z, &QSeries::one())
}

/// `b^m H_m(a/b; q) = sum_i a^i b^{m-i} [m, i]`, which needs no division.
pub fn homogeneous_rs(m: i64, a: &QSeries, b: &QSeries) -> QSeries {
    let mut acc = QSeries::zero();
    for i in 0..=m {
        let t = &(&a.pow(i as u32) * &b.pow((m - i) as u32)) * &qbinomial_poly(m, i);
        acc = &acc + &t;
    }
    acc
}

/// `h_λ(z; q) = prod_{i>=1} H_{m_i(λ)}(z; q)`.
pub fn h_lambda(lambda: &Partition, z: &QSeries) -> QSeries {
    lambda
        .multiplicities()
        .iter()
        .fold(QSeries::one(), |acc, (_, m)| &acc * &rogers_szego(*m, z))
}

/// `h^(m)_λ(w, z; q)`: odd parts `i < 2m` weigh `z^{m_i} H_{m_i}(w/z)`,
/// even parts `i < 2m` weigh `H_{m_i}(wz)`. For `m = 0` only `λ = ∅` is
/// allowed and the weight is `(wz)_∞`.
pub fn h_m_weight(lambda: &Partition, m: i64, w: &QSeries, z: &QSeries, order: i64) -> Result<QSeries> {
    if lambda.first() > 2 * m {
        return Err(Error::Invalid(format!("{} has a part larger than 2m = {}", lambda, 2 * m)));
    }
    if m == 0 {
        return poch(&(w * z), Extent::Infinite, order);
    }
    let wz = w * z;
    let mut acc = QSeries::one();
    for (part, mult) in lambda.multiplicities() {
        if part >= 2 * m {
            continue;
        }
        let f = if part % 2 == 1 { homogeneous_rs(mult, w, z) } else { rogers_szego(mult, &wz) };
        acc = &acc * &f;
    }
    Ok(acc)
}
