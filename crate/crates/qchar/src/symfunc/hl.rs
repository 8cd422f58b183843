//! Hall-Littlewood polynomials and the four routes to `Q'_μ`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::qseries::{poch, Extent, QSeries, Q};
use crate::rational::{rng, RationalSource};
use crate::tableaux::kostka_foulkes;

use super::hyper::{pprime_multisum, qprime_fermionic, Alphabet};
use super::schur::{permutations, schur, vandermonde, xpow2};
use super::xlaurent::{Image, XLaurent};

/// `v_λ(q) = prod_{i>=0} (q)_{m_i} / (1-q)^{m_i}` with `m_0 = n - l(λ)`.
pub fn v_lambda(lambda: &Partition, n: usize) -> QSeries {
    let q = QSeries::q_pow(1);
    let mut ms: Vec<i64> = lambda.multiplicities().iter().map(|p| p.1).collect();
    ms.push(n as i64 - lambda.len() as i64);
    let one_minus_q = &QSeries::one() - &q;
    let mut acc = QSeries::one();
    for m in ms {
        let num = poch(&q, Extent::Finite(m), 0).unwrap();
        acc = &acc * &num.div_exact(&one_minus_q.pow(m as u32)).expect("(q)_m divisible by (1-q)^m");
    }
    acc
}

/// `P_λ(x_1..x_n; q)` by symmetrization over `S_n`.
pub fn hall_littlewood_p(lambda: &Partition, n: usize) -> Result<XLaurent> {
    if lambda.len() > n {
        return Ok(XLaurent::zero(n));
    }
    let mut core = XLaurent::one(n);
    for i in 0..n {
        core = &core * &xpow2(n, i, 2 * lambda.part(i + 1) as i32);
    }
    let qx = |j: usize| xpow2(n, j, 2).scale(&QSeries::q_pow(1));
    for i in 0..n {
        for j in i + 1..n {
            core = &core * &(&xpow2(n, i, 2) - &qx(j));
        }
    }
    let mut num = XLaurent::zero(n);
    for (p, s) in permutations(n) {
        num = &num + &core.permute(&p).scale_q(&Q::from_integer(s.into()));
    }
    let sym = num.div_exact(&vandermonde(n))?;
    let v = v_lambda(lambda, n);
    let terms = sym.terms().map(|(e, c)| Ok((e.clone(), c.div_exact(&v)?))).collect::<Result<Vec<_>>>()?;
    Ok(XLaurent::from_terms(n, terms, None))
}

/// `Q_λ = b_λ P_λ`.
pub fn hall_littlewood_q(lambda: &Partition, n: usize) -> Result<XLaurent> {
    Ok(hall_littlewood_p(lambda, n)?.scale(&lambda.b_lambda()))
}

/// Garsia's form of the q-Bernstein operator, over the common denominator
/// `prod_{i<j} (x_i - x_j)`.
pub fn bernstein_b(m: i64, f: &XLaurent) -> Result<XLaurent> {
    let n = f.nvars();
    let mut num = XLaurent::zero(n);
    for i in 0..n {
        let mut vi = XLaurent::one(n);
        for a in 0..n {
            for b in a + 1..n {
                if a != i && b != i {
                    vi = &vi * &(&xpow2(n, a, 2) - &xpow2(n, b, 2));
                }
            }
        }
        let sign = if i % 2 == 0 { Q::one() } else { -Q::one() };
        let lead = xpow2(n, i, 2 * (m + n as i64 - 1) as i32).scale_q(&sign);
        num = &num + &(&(&lead * &vi) * &f.q_shift(i, 1));
    }
    num.div_exact(&vandermonde(n))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QMethod {
    Charge,
    Jing,
    Multisum,
    Fermionic,
}

impl QMethod {
    pub const ALL: [QMethod; 4] = [QMethod::Charge, QMethod::Jing, QMethod::Multisum, QMethod::Fermionic];
}

impl fmt::Display for QMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            QMethod::Charge => "charge",
            QMethod::Jing => "jing",
            QMethod::Multisum => "multisum",
            QMethod::Fermionic => "fermionic",
        };
        write!(f, "{}", s)
    }
}

impl FromStr for QMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "charge" => Ok(QMethod::Charge),
            "jing" => Ok(QMethod::Jing),
            "multisum" => Ok(QMethod::Multisum),
            "fermionic" => Ok(QMethod::Fermionic),
            _ => Err(Error::Parse(format!("unknown method {}", s))),
        }
    }
}

/// `Q'_μ(x_1..x_n; q)` as an exact symmetric polynomial.
pub fn qprime(mu: &Partition, n: usize, method: QMethod) -> Result<XLaurent> {
    match method {
        QMethod::Charge => Ok(qprime_charge(mu, n)),
        QMethod::Jing => qprime_jing(mu, n),
        QMethod::Multisum => qprime_multisum(mu, n),
        QMethod::Fermionic => qprime_fermionic(mu, &Alphabet::Formal(n), None),
    }
}

/// `P'_μ = Q'_μ / b_μ` through `t^order`.
pub fn pprime(mu: &Partition, n: usize, method: QMethod, order: i64) -> Result<XLaurent> {
    let q = qprime(mu, n, method)?;
    Ok(q.scale(&mu.b_lambda().inv(order)?).truncate(order))
}

/// `sum_λ K_{λμ}(q) s_λ`.
pub fn qprime_charge(mu: &Partition, n: usize) -> XLaurent {
    let mut acc = XLaurent::zero(n);
    for lambda in Partition::all_of(mu.weight()) {
        if lambda.len() > n || !lambda.dominates(mu) {
            continue;
        }
        let k = kostka_foulkes(&lambda, mu);
        if !k.is_zero() {
            acc = &acc + &schur(&lambda, n).scale(&k);
        }
    }
    acc
}

/// `B_{μ_1} ... B_{μ_k}(1)`.
pub fn qprime_jing(mu: &Partition, n: usize) -> Result<XLaurent> {
    let mut acc = XLaurent::one(n);
    for &m in mu.parts().iter().rev() {
        acc = bernstein_b(m, &acc)?;
    }
    Ok(acc)
}

/// The multisum can only be evaluated at points (its terms are rational
/// functions of `x`), so the Schur coefficients of `Q'_μ` are recovered by
/// solving `A c = V` with `A_{kν} = s_ν(p_k)` and `V_k = b_μ P'_μ(p_k)`,
/// then confirmed at two further points.
pub fn qprime_multisum(mu: &Partition, n: usize) -> Result<XLaurent> {
    let d = mu.weight();
    let basis: Vec<Partition> = Partition::all_of(d).into_iter().filter(|p| p.len() <= n).collect();
    let schurs: Vec<XLaurent> = basis.iter().map(|p| schur(p, n)).collect();
    let top = 2 * mu.n_stat();
    let b = mu.b_lambda();
    let mut gen = rng(0x51a7_e0c1 ^ (d as u64) << 8 ^ n as u64);

    let sample = |gen: &mut rand_chacha::ChaCha8Rng| -> Result<(Vec<Q>, Vec<Q>)> {
        let pt = distinct_point(gen, n);
        let alph = Alphabet::rational(&pt);
        let p = pprime_multisum(mu, &alph, top, false)?;
        let v = (&p * &b).truncate(top);
        let row: Vec<Q> = schurs.iter().map(|s| eval_rational(s, &pt)).collect();
        Ok((row, (0..=top).map(|e| v.coeff(e)).collect()))
    };

    let k = basis.len();
    let mut rows = vec![];
    let mut rhs = vec![];
    let mut attempts = 0;
    let coeffs = loop {
        while rows.len() < k {
            let (r, v) = sample(&mut gen)?;
            rows.push(r);
            rhs.push(v);
        }
        if let Some(c) = solve(&rows, &rhs) {
            break c;
        }
        attempts += 1;
        if attempts > 8 {
            return Err(Error::Singular("no invertible sample system found".into()));
        }
        rows.remove(0);
        rhs.remove(0);
    };
    let mut result = XLaurent::zero(n);
    for (i, s) in schurs.iter().enumerate() {
        let terms: Vec<(i64, Q)> = coeffs[i].iter().enumerate().map(|(e, c)| (e as i64, c.clone())).collect();
        let c = QSeries::from_terms(&terms, None);
        result = &result + &s.scale(&c);
    }
    for _ in 0..2 {
        let (row, v) = sample(&mut gen)?;
        for (e, ve) in v.iter().enumerate() {
            let got: Q = row.iter().zip(&coeffs).map(|(a, c)| a * &c[e]).sum();
            if &got != ve {
                return Err(Error::InexactDivision("multisum reconstruction failed a check point".into()));
            }
        }
    }
    Ok(result)
}

/// `n` distinct nonzero rationals of small height.
pub fn distinct_point(gen: &mut impl RationalSource, n: usize) -> Vec<Q> {
    loop {
        let pt: Vec<Q> = (0..n).map(|_| gen.rational(5)).collect();
        let distinct = (0..n).all(|i| (i + 1..n).all(|j| pt[i] != pt[j]));
        if distinct {
            return pt;
        }
    }
}

/// Value of a polynomial with constant coefficients at a rational point.
pub fn eval_rational(f: &XLaurent, pt: &[Q]) -> Q {
    let images: Vec<Image> = pt.iter().map(|c| Image::value(c.clone(), 0)).collect();
    f.map_monomials(0, &images).unwrap().as_series().constant_term()
}

/// Solve `A X = B` over the rationals for square `A`; `None` when singular.
pub fn solve(a: &[Vec<Q>], b: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let k = a.len();
    let w = b.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<Q>> = a.iter().zip(b).map(|(r, s)| r.iter().chain(s).cloned().collect()).collect();
    for col in 0..k {
        let piv = (col..k).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..k {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..k + w {
                    let v = &m[col][c] * &f;
                    m[r][c] -= v;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[k..].to_vec()).collect())
}
