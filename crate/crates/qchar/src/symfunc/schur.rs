//! Schur, symplectic and odd orthogonal Schur functions as bialternants.

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::qseries::{qi, QSeries};

use super::xlaurent::{Exps, XLaurent};

/// All permutations of `0..n` with their signs, in lexicographic order.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<(Vec<usize>, i64)>) {
        let n = used.len();
        if cur.len() == n {
            let inv = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| cur[i] > cur[j]).count();
            out.push((cur.clone(), if inv % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = vec![];
    rec(&mut vec![], &mut vec![false; n], &mut out);
    out
}

/// Leibniz expansion of `det(entry(i, j))`.
pub fn det(n: usize, nvars: usize, entry: impl Fn(usize, usize) -> XLaurent) -> XLaurent {
    let cells: Vec<Vec<XLaurent>> = (0..n).map(|i| (0..n).map(|j| entry(i, j)).collect()).collect();
    let mut acc = XLaurent::zero(nvars);
    for (p, s) in permutations(n) {
        let mut term = XLaurent::one(nvars);
        for (i, &j) in p.iter().enumerate() {
            term = &term * &cells[i][j];
            if term.is_zero() {
                break;
            }
        }
        acc = &acc + &term.scale_q(&qi(s));
    }
    acc
}

/// `x_i^{d/2}` for a doubled exponent `d`.
pub fn xpow2(n: usize, i: usize, d: i32) -> XLaurent {
    let mut e: Exps = vec![0; n];
    e[i] = d;
    XLaurent::mono(n, e, QSeries::one())
}

fn binom_diff(n: usize, i: usize, a: i32, b: i32) -> XLaurent {
    &xpow2(n, i, a) - &xpow2(n, i, b)
}

/// `prod_{i<j} (x_i - x_j)`.
pub fn vandermonde(n: usize) -> XLaurent {
    let mut acc = XLaurent::one(n);
    for i in 0..n {
        for j in i + 1..n {
            acc = &acc * &(&xpow2(n, i, 2) - &xpow2(n, j, 2));
        }
    }
    acc
}

fn pair_product(n: usize) -> XLaurent {
    let mut acc = XLaurent::one(n);
    for i in 0..n {
        for j in i + 1..n {
            let d = &xpow2(n, i, 2) - &xpow2(n, j, 2);
            let mut e = vec![0; n];
            e[i] = 2;
            e[j] = 2;
            let s = &XLaurent::mono(n, e, QSeries::one()) - &XLaurent::one(n);
            acc = &(&acc * &d) * &s;
        }
    }
    acc
}

/// `prod (1 - x_i) prod_{i<j} (x_i - x_j)(x_i x_j - 1)`.
pub fn delta_b(n: usize) -> XLaurent {
    (0..n).fold(pair_product(n), |acc, i| &acc * &(&XLaurent::one(n) - &xpow2(n, i, 2)))
}

/// `prod (1 - x_i^2) prod_{i<j} (x_i - x_j)(x_i x_j - 1)`.
pub fn delta_c(n: usize) -> XLaurent {
    (0..n).fold(pair_product(n), |acc, i| &acc * &(&XLaurent::one(n) - &xpow2(n, i, 4)))
}

fn doubled_parts(lambda: &Partition, n: usize) -> Result<Vec<i32>> {
    if lambda.len() > n {
        return Err(Error::Invalid(format!("{} has more than {} parts", lambda, n)));
    }
    let mut d: Vec<i32> = lambda.doubled().iter().map(|&p| p as i32).collect();
    let fill = if lambda.is_half() { 1 } else { 0 };
    if lambda.is_half() && d.len() < n && !d.is_empty() {
        return Err(Error::Invalid("half-partitions must have exactly n parts".into()));
    }
    d.resize(n, fill);
    if lambda.is_empty() {
        d = vec![0; n];
    }
    Ok(d)
}

/// Numerator `det(x_i^{lambda_j + n - j})`.
pub fn schur_numerator(lambda: &Partition, n: usize) -> Result<XLaurent> {
    let l = doubled_parts(lambda, n)?;
    Ok(det(n, n, |i, j| xpow2(n, i, l[j] + 2 * (n - 1 - j) as i32)))
}

/// `s_λ(x_1..x_n)`; zero when `l(λ) > n`.
pub fn schur(lambda: &Partition, n: usize) -> XLaurent {
    if lambda.len() > n {
        return XLaurent::zero(n);
    }
    schur_numerator(lambda, n).unwrap().div_exact(&vandermonde(n)).expect("bialternant division")
}

/// Numerator `det(x_i^{j-1-λ_j} - x_i^{2n-j+1+λ_j})` of the symplectic character.
pub fn symp_numerator(lambda: &Partition, n: usize) -> Result<XLaurent> {
    if lambda.is_half() {
        return Err(Error::Unsupported("symplectic characters need an integer partition".into()));
    }
    let l = doubled_parts(lambda, n)?;
    let n2 = n as i32;
    Ok(det(n, n, |i, j| {
        let j1 = j as i32 + 1;
        binom_diff(n, i, 2 * (j1 - 1) - l[j], 2 * (2 * n2 - j1 + 1) + l[j])
    }))
}

/// Numerator `det(x_i^{j-1-μ_j} - x_i^{2n-j+μ_j})` of the odd orthogonal character.
pub fn so_odd_numerator(mu: &Partition, n: usize) -> Result<XLaurent> {
    let l = doubled_parts(mu, n)?;
    let n2 = n as i32;
    Ok(det(n, n, |i, j| {
        let j1 = j as i32 + 1;
        binom_diff(n, i, 2 * (j1 - 1) - l[j], 2 * (2 * n2 - j1) + l[j])
    }))
}

pub fn symp_schur(lambda: &Partition, n: usize) -> Result<XLaurent> {
    symp_numerator(lambda, n)?.div_exact(&delta_c(n))
}

pub fn so_odd_schur(mu: &Partition, n: usize) -> Result<XLaurent> {
    so_odd_numerator(mu, n)?.div_exact(&delta_b(n))
}

/// Schur expansion of a symmetric polynomial, read off from `f * a_δ`.
pub fn schur_expand(f: &XLaurent) -> Result<Vec<(Partition, QSeries)>> {
    let n = f.nvars();
    if !f.is_symmetric() {
        return Err(Error::Invalid("schur_expand needs a symmetric input".into()));
    }
    let g = f * &vandermonde(n);
    let mut out = vec![];
    for (e, c) in g.terms() {
        let strictly = e.windows(2).all(|w| w[0] > w[1]);
        if !strictly {
            continue;
        }
        let parts: Vec<i64> = e.iter().enumerate().map(|(i, &d)| d as i64 / 2 - (n - 1 - i) as i64).collect();
        if e.iter().any(|d| d % 2 != 0) || parts.iter().any(|&p| p < 0) {
            return Err(Error::Invalid("not a polynomial symmetric function".into()));
        }
        out.push((Partition::new(&parts), c.clone()));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Hall inner product via Schur coefficients, valid in the stable range
/// `deg <= n`.
pub fn hall_pairing(f: &XLaurent, g: &XLaurent) -> Result<QSeries> {
    let n = f.nvars();
    for h in [f, g] {
        if let Some(d) = h.max_degree() {
            if d / 2 > n as i32 {
                return Err(Error::Invalid("degree exceeds the number of variables".into()));
            }
        }
    }
    let a = schur_expand(f)?;
    let b = schur_expand(g)?;
    let mut acc = QSeries::zero();
    for (p, c) in &a {
        if let Some((_, d)) = b.iter().find(|(r, _)| r == p) {
            acc = &acc + &(c * d);
        }
    }
    Ok(acc)
}

/// Render a Schur expansion as `c*s[λ] + ...`, with coefficients in `q`.
pub fn format_schur(exp: &[(Partition, QSeries)]) -> String {
    if exp.is_empty() {
        return "0".into();
    }
    exp.iter()
        .map(|(p, c)| {
            let parts: Vec<String> = p.parts().iter().map(|x| x.to_string()).collect();
            let s = if p.is_empty() { "1".to_string() } else { format!("s[{}]", parts.join(",")) };
            let poly = format_q_poly(c);
            match poly.as_str() {
                "1" => s,
                _ if p.is_empty() => poly,
                _ if c.terms().count() == 1 => format!("{}*{}", poly, s),
                _ => format!("({})*{}", poly, s),
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// A series with even t-exponents printed in `q`.
pub fn format_q_poly(c: &QSeries) -> String {
    let mut parts: Vec<String> = vec![];
    for (e, a) in c.terms() {
        let coef = crate::qseries::fmt_q(a);
        let mon = match (e % 2 == 0, e) {
            (_, 0) => String::new(),
            (true, 2) => "q".into(),
            (true, _) => format!("q^{}", e / 2),
            (false, _) => format!("q^({}/2)", e),
        };
        let term = match (coef.as_str(), mon.is_empty()) {
            (_, true) => coef,
            ("1", false) => mon,
            ("-1", false) => format!("-{}", mon),
            (_, false) => format!("{}*{}", coef, mon),
        };
        parts.push(term);
    }
    if let Some(o) = c.order() {
        parts.push(format!("O(t^{})", o + 1));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ").replace("+ -", "- ")
    }
}
