//! The `(w, z)` Hall-Littlewood sums: the proved `w = 0` case, the finite
//! two-parameter conjecture, and its form summed over `M`.

use crate::error::{Error, Result};
use crate::partitions::{enum_partitions, MultiIndex, PartFilter};
use crate::qseries::{poch, poch_recip, qbinomial_poly, Extent, Product, QSeries, Q};
use crate::symfunc::{f_tau_product, h_m_weight, homogeneous_rs, pprime_fermionic, Alphabet};

fn alphabet(x: &[(Q, i64)]) -> Alphabet {
    Alphabet::Point(x.to_vec())
}

/// `prod_i (-q^{1-r_i} v / x_i)_{r_i}`.
fn shifted_poch(p: &mut Product, v: &QSeries, x: &[(Q, i64)], r: &MultiIndex) -> Result<()> {
    if v.is_zero() {
        return Ok(());
    }
    for ((c, e), &ri) in x.iter().zip(&r.0) {
        let a = v.scale(&-c.recip()).shift(2 * (1 - ri) - e);
        p.mul_poch(&a, ri)?;
    }
    Ok(())
}

/// Chains `r^(1) ⊇ .. ⊇ r^(m)` with `|r^(l)| = M_l`, or any chain below a
/// given `r^(1)` when `sizes` is `None` past the first level.
fn chains(first: &MultiIndex, depth: usize, sizes: Option<&[i64]>) -> Vec<Vec<MultiIndex>> {
    let mut out = vec![];
    fn rec(cur: &mut Vec<MultiIndex>, depth: usize, sizes: Option<&[i64]>, out: &mut Vec<Vec<MultiIndex>>) {
        let l = cur.len();
        if l == depth {
            out.push(cur.clone());
            return;
        }
        let top = cur[l - 1].clone();
        let below: Vec<MultiIndex> = match sizes {
            Some(s) => MultiIndex::with_sum(&top.0, s[l]),
            None => MultiIndex::boxed(&vec![0; top.len()], &top.0),
        };
        for r in below {
            cur.push(r);
            rec(cur, depth, sizes, out);
            cur.pop();
        }
    }
    if depth == 0 {
        return vec![vec![]];
    }
    rec(&mut vec![first.clone()], depth, sizes, &mut out);
    out
}

/// `prod_i (-q^{1-r_i} w/x_i, -q^{1-r_i} z/x_i)_{r^(1)_i} prod_l f^(2)_{r^(l), r^(l+1)}`.
fn chain_term(chain: &[MultiIndex], w: &QSeries, z: &QSeries, x: &[(Q, i64)]) -> Result<Product> {
    let alph = alphabet(x);
    let mut p = Product::new();
    if let Some(r1) = chain.first() {
        shifted_poch(&mut p, w, x, r1)?;
        shifted_poch(&mut p, z, x, r1)?;
    }
    for (l, r) in chain.iter().enumerate() {
        let next = chain.get(l + 1).cloned().unwrap_or_else(|| MultiIndex::zeros(x.len()));
        p.mul_product(&f_tau_product(r, &next, 2, &alph)?);
        if p.is_zero() {
            break;
        }
    }
    Ok(p)
}

fn check_exact(v: &QSeries) -> Result<()> {
    if !v.is_exact() {
        return Err(Error::Invalid("parameters must be exact".into()));
    }
    Ok(())
}

/// Proved `w = 0` case: `sum z^{l(λ_odd)} P'_λ(x)` over `λ_1 <= 2m` with
/// `λ'_{2l-1} = M_l`, against the `r`-sum with `|r^(l)| = M_l`.
pub fn case2_sides(big_m: &[i64], z: &QSeries, x: &[(Q, i64)], order: i64) -> Result<(QSeries, QSeries)> {
    wz_sides(big_m, &QSeries::zero(), z, x, order, true)
}

/// The finite two-parameter conjecture for a fixed `M`.
pub fn wz_finite_sides(big_m: &[i64], w: &QSeries, z: &QSeries, x: &[(Q, i64)], order: i64) -> Result<(QSeries, QSeries)> {
    wz_sides(big_m, w, z, x, order, false)
}

fn wz_sides(big_m: &[i64], w: &QSeries, z: &QSeries, x: &[(Q, i64)], order: i64, restrict: bool) -> Result<(QSeries, QSeries)> {
    check_exact(w)?;
    check_exact(z)?;
    let m = big_m.len();
    let n = x.len();
    let alph = alphabet(x);
    let wz = w * z;
    let max_weight = 2 * m as i64 * big_m.first().copied().unwrap_or(0);

    let mut lhs = QSeries::zero_to(order);
    let filter = if restrict { PartFilter::OddColumns(big_m.to_vec()) } else { PartFilter::All };
    for lambda in enum_partitions(2 * m as i64, max_weight, filter) {
        let conj = lambda.conjugate()?;
        let mut weight = QSeries::one();
        let mut ok = true;
        for (l, &ml) in big_m.iter().enumerate() {
            let k = ml - conj.part(2 * l + 1);
            if k < 0 {
                ok = false;
                break;
            }
            if k == 0 {
                continue;
            }
            let bin = if l == 0 {
                poch_recip(&QSeries::q_pow(1), Extent::Finite(k), order)?
            } else {
                qbinomial_poly(lambda.multiplicity(2 * l as i64), k)
            };
            weight = &(&weight * &wz.pow(k as u32)) * &bin;
        }
        if !ok || weight.is_zero() {
            continue;
        }
        for (part, mult) in lambda.multiplicities() {
            if part % 2 == 1 {
                weight = &weight * &homogeneous_rs(mult, w, z);
            }
        }
        if weight.is_zero() {
            continue;
        }
        let pp = pprime_fermionic(&lambda, &alph, order)?.as_series();
        lhs = &lhs + &(&weight * &pp).truncate(order);
    }

    let mut rhs = QSeries::zero_to(order);
    if m == 0 {
        rhs = &rhs + &QSeries::one();
    } else {
        for r1 in MultiIndex::with_sum(&vec![big_m[0]; n], big_m[0]) {
            for chain in chains(&r1, m, Some(big_m)) {
                let p = chain_term(&chain, w, z, x)?;
                rhs = &rhs + &p.finish(order)?;
            }
        }
    }
    Ok((lhs.truncate(order), rhs.truncate(order)))
}

/// The `M`-summed form: `sum_{λ_1 <= 2m} h^(m)_λ(w, z) P'_λ(x)` against
/// `(wz)_∞` times the unrestricted `r`-sum. The point needs positive
/// t-valuation so that both sides converge termwise.
pub fn sum_m_sides(m: i64, w: &QSeries, z: &QSeries, x: &[(Q, i64)], order: i64) -> Result<(QSeries, QSeries)> {
    check_exact(w)?;
    check_exact(z)?;
    if x.iter().any(|p| p.1 < 1) {
        return Err(Error::Invalid("summed form needs x of positive valuation".into()));
    }
    let wz = w * z;
    if w.val_eff().is_some_and(|v| v < 0) || z.val_eff().is_some_and(|v| v < 0) || wz.val_eff().is_some_and(|v| v < 1) {
        return Err(Error::Invalid("need val(w), val(z) >= 0 and val(wz) > 0".into()));
    }
    let n = x.len();
    let alph = alphabet(x);
    let vmin = x.iter().map(|p| p.1).min().unwrap_or(1);

    let mut lhs = QSeries::zero_to(order);
    for lambda in enum_partitions(2 * m, order / vmin, PartFilter::All) {
        let h = h_m_weight(&lambda, m, w, z, order)?;
        if h.is_zero() && h.is_exact() {
            continue;
        }
        let pp = pprime_fermionic(&lambda, &alph, order)?.as_series();
        lhs = &lhs + &(&h * &pp).truncate(order);
    }

    let mut sum = QSeries::zero_to(order);
    if m == 0 {
        sum = &sum + &QSeries::one();
    } else {
        let mut quiet = 0;
        let mut k = 0;
        loop {
            let mut live = false;
            for r1 in MultiIndex::with_sum(&vec![k; n], k) {
                for chain in chains(&r1, m as usize, None) {
                    let p = chain_term(&chain, w, z, x)?;
                    if p.valuation().is_some_and(|v| v <= order) {
                        live = true;
                        sum = &sum + &p.finish(order)?;
                    }
                }
            }
            quiet = if live { 0 } else { quiet + 1 };
            if quiet == 2 {
                break;
            }
            k += 1;
            if k > super::lattice::MAX_SHELL {
                return Err(Error::ShellBound("summed form still live".into()));
            }
        }
    }
    let pref = poch(&wz, Extent::Infinite, order)?;
    Ok((lhs.truncate(order), (&pref * &sum).truncate(order)))
}
