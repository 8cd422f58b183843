//! The Nahm-Zagier-type series `F_{m,n}(u, w, z; q)` and its conjectured
//! equality with specialized Hall-Littlewood sums.

use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partitions::{enum_partitions, MultiIndex, PartFilter};
use crate::qseries::{pow_q, Product, QSeries, Q};
use crate::symfunc::{h_m_weight, pprime_fermionic, Alphabet};

/// A monomial `coef * t^t_exp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mono {
    pub coef: Q,
    pub t_exp: i64,
}

impl Mono {
    pub fn new(coef: Q, t_exp: i64) -> Self {
        Mono { coef, t_exp }
    }

    pub fn constant(coef: Q) -> Self {
        Mono { coef, t_exp: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.coef.is_zero()
    }

    pub fn series(&self) -> QSeries {
        if self.is_zero() {
            QSeries::zero()
        } else {
            QSeries::mono(self.coef.clone(), self.t_exp)
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Singular("inverse of zero".into()));
        }
        Ok(Mono { coef: self.coef.recip(), t_exp: -self.t_exp })
    }
}

impl std::fmt::Display for Mono {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.series())
    }
}

/// Parses `c`, `t^e`, `q^a` (with `a` a half-integer such as `1/2`),
/// `c*t^e` or `c*q^a`; a leading `-` negates.
impl FromStr for Mono {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("cannot read monomial {:?}", s));
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest.trim()),
            None => (false, s),
        };
        let (coef_s, var_s) = match body.find(['t', 'q']) {
            Some(i) => (body[..i].trim_end_matches('*').trim(), Some(&body[i..])),
            None => (body, None),
        };
        let mut coef = if coef_s.is_empty() { Q::one() } else { Q::from_str(coef_s).map_err(|_| bad())? };
        if neg {
            coef = -coef;
        }
        let t_exp = match var_s {
            None => 0,
            Some(v) => {
                let (base, exp) = match v.split_once('^') {
                    Some((b, e)) => (b, Q::from_str(e.trim_matches(['(', ')'])).map_err(|_| bad())?),
                    None => (v, Q::one()),
                };
                let scale = match base.trim() {
                    "t" => 1,
                    "q" => 2,
                    _ => return Err(bad()),
                };
                let e = exp * Q::from_integer(scale.into());
                if !e.is_integer() {
                    return Err(bad());
                }
                e.to_integer().try_into().map_err(|_| bad())?
            }
        };
        Ok(Mono { coef, t_exp })
    }
}

/// Data for `F_{m,n}(u, w, z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NahmSpec {
    pub m: usize,
    pub n: usize,
    pub u: Mono,
    pub w: Mono,
    pub z: Mono,
}

impl NahmSpec {
    pub fn new(m: usize, n: usize, u: Mono, w: Mono, z: Mono) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::Invalid("F_{m,n} needs m, n >= 1".into()));
        }
        if u.is_zero() {
            return Err(Error::Invalid("u must be nonzero".into()));
        }
        Ok(NahmSpec { m, n, u, w, z })
    }

    /// `u_a = u^{(-1)^{a-1}}`, zero-based.
    fn u_a(&self, a: usize) -> Mono {
        if a.is_multiple_of(2) {
            self.u.clone()
        } else {
            self.u.recip().unwrap()
        }
    }

    pub fn swapped(&self) -> Self {
        NahmSpec { w: self.z.clone(), z: self.w.clone(), ..self.clone() }
    }
}

/// `A_n` Cartan matrix entry.
fn cartan(a: usize, b: usize) -> i64 {
    if a == b {
        2
    } else if a.abs_diff(b) == 1 {
        -1
    } else {
        0
    }
}

/// Sum `term(r)` over `r ∈ N^d` by total size, stopping after two
/// consecutive sizes with no term of valuation `<= order`. `term` may
/// return `None` when a cheap bound already puts it above `order`.
pub(crate) fn size_shells(d: usize, order: i64, mut term: impl FnMut(&[i64]) -> Result<Option<Product>>) -> Result<QSeries> {
    let mut acc = QSeries::zero_to(order);
    let mut quiet = 0;
    for k in 0..=crate::characters::MAX_SHELL {
        let mut live = false;
        for r in MultiIndex::with_sum(&vec![k; d], k) {
            let Some(p) = term(&r.0)? else { continue };
            if p.valuation().is_some_and(|v| v <= order) {
                live = true;
                acc = &acc + &p.finish(order)?;
            }
        }
        quiet = if live { 0 } else { quiet + 1 };
        if quiet == 2 {
            return Ok(acc);
        }
    }
    Err(Error::ShellBound("F-sum still live".into()))
}

/// `(-z q^{1/2-R}/u)_R`.
fn z_factor(p: &mut Product, spec: &NahmSpec, big_r: i64) -> Result<()> {
    if spec.z.is_zero() {
        return Ok(());
    }
    let c = -&spec.z.coef / &spec.u.coef;
    p.mul_poch(&QSeries::mono(c, spec.z.t_exp - spec.u.t_exp + 1 - 2 * big_r), big_r)
}

/// A lower bound for the valuation of [`z_factor`].
fn z_floor(spec: &NahmSpec, big_r: i64) -> i64 {
    if spec.z.is_zero() {
        return 0;
    }
    let s = spec.z.t_exp - spec.u.t_exp + 1 - 2 * big_r;
    (0..big_r).map(|j| (s + 2 * j).min(0)).sum()
}

/// `(-u_a w q^{1/2+k})_∞`.
fn w_factor(p: &mut Product, spec: &NahmSpec, a: usize, k: i64) -> Result<()> {
    if spec.w.is_zero() {
        return Ok(());
    }
    let ua = spec.u_a(a);
    let c = -&ua.coef * &spec.w.coef;
    p.mul_poch_inf(&QSeries::mono(c, ua.t_exp + spec.w.t_exp + 1 + 2 * k), 2)
}

/// `u_a^{e} / (q)_k`.
fn power_factor(p: &mut Product, spec: &NahmSpec, a: usize, e: i64, k: i64) -> Result<()> {
    let ua = spec.u_a(a);
    p.mul_mono(&pow_q(&ua.coef, e), ua.t_exp * e);
    p.div_poch(&QSeries::t_pow(2), k)
}

/// `F_{m,n}(u, w, z; q)` through `t^order`, summed over `r^(a)_i`
/// with the quadratic form `(C_n)_{ab} min(i, j) r^(a)_i r^(b)_j`.
pub fn nahm_f(spec: &NahmSpec, order: i64) -> Result<QSeries> {
    let (m, n) = (spec.m, spec.n);
    size_shells(m * n, order, |r| {
        let at = |a: usize, i: usize| r[a * m + i];
        let mut quad = 0;
        for a in 0..n {
            for b in 0..n {
                let c = cartan(a, b);
                if c == 0 {
                    continue;
                }
                for i in 0..m {
                    for j in 0..m {
                        quad += c * (i.min(j) as i64 + 1) * at(a, i) * at(b, j);
                    }
                }
            }
        }
        let big_r = (0..m).map(|i| at(0, i)).sum();
        let mut floor = quad + z_floor(spec, big_r);
        for a in 0..n {
            floor += spec.u_a(a).t_exp * (0..m).map(|i| 2 * (i as i64 + 1) * at(a, i)).sum::<i64>();
        }
        if floor > order {
            return Ok(None);
        }
        let mut p = Product::new();
        p.mul_mono(&Q::one(), quad);
        z_factor(&mut p, spec, big_r)?;
        for a in 0..n {
            w_factor(&mut p, spec, a, at(a, m - 1))?;
            for i in 0..m {
                power_factor(&mut p, spec, a, 2 * (i as i64 + 1) * at(a, i), at(a, i))?;
            }
        }
        Ok(Some(p))
    })
}

/// The `m = 1` form as a sum over the positive root lattice, with
/// `<α, α>` computed from `α` in the `ε`-basis of `R^{n+1}`.
pub fn nahm_f_root_lattice(n: usize, u: &Mono, w: &Mono, z: &Mono, order: i64) -> Result<QSeries> {
    let spec = NahmSpec::new(1, n, u.clone(), w.clone(), z.clone())?;
    size_shells(n, order, |k| {
        let mut v = vec![0i64; n + 1];
        for (a, &ka) in k.iter().enumerate() {
            v[a] += ka;
            v[a + 1] -= ka;
        }
        let norm: i64 = v.iter().map(|c| c * c).sum();
        let mut p = Product::new();
        p.mul_mono(&Q::one(), norm);
        z_factor(&mut p, &spec, k[0])?;
        for (a, &ka) in k.iter().enumerate() {
            w_factor(&mut p, &spec, a, ka)?;
            power_factor(&mut p, &spec, a, 2 * ka, ka)?;
        }
        Ok(Some(p))
    })
}

/// `sum_{λ_1 <= 2m} q^{|λ|/2} h^(m)_λ(w, z) P'_λ(u, 1/u, u, ..)` with `n`
/// letters. The factor `q^{|λ|/2}` is absorbed as `x = q^{1/2}(u, 1/u, ..)`.
pub fn specialized_hl(spec: &NahmSpec, order: i64) -> Result<QSeries> {
    let letters: Vec<(Q, i64)> = (0..spec.n)
        .map(|a| {
            let ua = spec.u_a(a);
            (ua.coef, ua.t_exp + 1)
        })
        .collect();
    let vmin = letters.iter().map(|l| l.1).min().unwrap();
    if vmin < 1 {
        return Err(Error::Unsupported("specialization needs u of zero valuation".into()));
    }
    if spec.w.t_exp < 0 || spec.z.t_exp < 0 {
        return Err(Error::Unsupported("w and z need nonnegative valuation".into()));
    }
    let alph = Alphabet::Point(letters);
    let (w, z) = (spec.w.series(), spec.z.series());
    let mut acc = QSeries::zero_to(order);
    for lambda in enum_partitions(2 * spec.m as i64, order / vmin, PartFilter::All) {
        let h = h_m_weight(&lambda, spec.m as i64, &w, &z, order)?;
        if h.is_zero() && h.is_exact() {
            continue;
        }
        let pp = pprime_fermionic(&lambda, &alph, order)?.as_series();
        acc = &acc + &(&h * &pp).truncate(order);
    }
    Ok(acc)
}

/// `(specialized Hall-Littlewood sum, F_{m,n})`.
pub fn spec_sides(spec: &NahmSpec, order: i64) -> Result<(QSeries, QSeries)> {
    Ok((specialized_hl(spec, order)?, nahm_f(spec, order)?))
}

/// Whether the specialization is proved for these parameters: `m = 1`,
/// rank one, or `u = 1`, `w = z = 0` with `n` even.
pub fn spec_is_proved(spec: &NahmSpec) -> bool {
    let trivial_u = spec.u == Mono::constant(Q::one());
    spec.m == 1 || spec.n == 1 || (trivial_u && spec.w.is_zero() && spec.z.is_zero() && spec.n.is_multiple_of(2))
}

/// `sum q^{N_1^2 + .. + N_{k-1}^2} / ((q)_{n_1} .. (q)_{n_{k-1}})` with
/// `N_i = n_i + .. + n_{k-1}`.
pub fn andrews_gordon_sum(k: usize, order: i64) -> Result<QSeries> {
    if k < 2 {
        return Err(Error::Invalid("Andrews-Gordon needs k >= 2".into()));
    }
    size_shells(k - 1, order, |nv| {
        let mut p = Product::new();
        let mut tail = 0;
        let mut quad = 0;
        for &ni in nv.iter().rev() {
            tail += ni;
            quad += tail * tail;
            p.div_poch(&QSeries::t_pow(2), ni)?;
        }
        p.mul_mono(&Q::one(), 2 * quad);
        Ok(Some(p))
    })
}

/// `prod_{j ≢ 0, ±k mod 2k+1} 1/(1 - q^j)`.
pub fn andrews_gordon_product(k: usize, order: i64) -> Result<QSeries> {
    let modulus = 2 * k as i64 + 1;
    let mut p = Product::new();
    for j in 1..modulus {
        if j != k as i64 && j != k as i64 + 1 {
            p.div_poch_inf(&QSeries::t_pow(2 * j), 2 * modulus)?;
        }
    }
    p.finish(order)
}
