//! Generalised Macdonald eta-function identities: a lattice sum over
//! `v ≡ ρ (mod K)` times an eta quotient, against a principally specialized
//! `P'` sum and, for `m >= 1`, a series `F_{m,N}`.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partitions::{enum_partitions, PartFilter, Partition};
use crate::qseries::{eta_quotient, fmt_q, poch_base, qf, qi, EtaQuotient, Extent, QSeries, Q};
use crate::report::{params, FirstMismatch, IdentityReport, Standing};
use crate::rr::{nahm_f, spec_is_proved, Mono, NahmSpec};
use crate::symfunc::{pprime_fermionic, Alphabet};

/// `a m + b n + c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lin(pub i64, pub i64, pub i64);

impl Lin {
    pub fn eval(self, n: i64, m: i64) -> i64 {
        self.0 * m + self.1 * n + self.2
    }
}

/// `η(kτ)^{a n^2 + b n + c}` with `k = scale.0 / scale.1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EtaTerm {
    pub scale: (i64, i64),
    pub exp: (i64, i64, i64),
}

const fn eta(scale: (i64, i64), exp: (i64, i64, i64)) -> EtaTerm {
    EtaTerm { scale, exp }
}

/// Classical Weyl vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rho {
    /// `(n-1/2, .., 1/2)`.
    B,
    /// `(n, .., 1)`.
    C,
    /// `(n-1, .., 0)`.
    D,
}

impl Rho {
    pub fn vector(self, n: usize) -> Vec<Q> {
        (0..n)
            .map(|i| {
                let top = (n - i) as i64;
                match self {
                    Rho::B => qf(2 * top - 1, 2),
                    Rho::C => qi(top),
                    Rho::D => qi(top - 1),
                }
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chi {
    /// `prod v_i prod_{i<j} (v_i^2 - v_j^2)`.
    B,
    /// `prod_{i<j} (v_i^2 - v_j^2)`.
    D,
}

impl Chi {
    pub fn eval(self, v: &[Q]) -> Q {
        let mut acc = Q::one();
        for (i, vi) in v.iter().enumerate() {
            if self == Chi::B {
                acc *= vi;
            }
            for vj in &v[i + 1..] {
                acc *= vi * vi - vj * vj;
            }
        }
        acc
    }
}

/// Sign twist of the lattice sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Twist {
    None,
    /// `(-1)^{|v| - |ρ|}`.
    Parity,
    /// `(-1)^{(|v| - |ρ|) / (2(m+n))}`.
    Scaled,
}

/// Restriction on `λ` beyond `λ_1 <= 2m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HlFilter {
    All,
    Even,
    /// Every odd part has even multiplicity.
    OddPaired,
}

/// The power of `q` attached to `λ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HlShift {
    /// `q^{|λ|/2} P'_λ(1..1; q)`.
    Half,
    /// `q^{(|λ| + l(λ_odd))/2} P'_λ(1..1; q)`.
    HalfOdd,
    /// `q^{|λ|} P'_λ(1..1; q^2)`.
    Full,
}

/// Extra per-`λ` weight; products over `0 <= i < 2m` use `m_0(λ) = ∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HlWeight {
    One,
    /// `prod (-q^{1/2}; q^{1/2})_{m_i}`.
    NegHalfPoch,
    /// `prod (q; q^2)_{⌈m_i/2⌉}`.
    QOddPoch,
    /// `prod (-q; q)_{m_i}`.
    NegQPoch,
    /// `(-1)^{l(λ_odd)}`.
    SignOdd,
}

/// The factor in front of `F`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FPrefactor {
    None,
    /// `(-q^{1/2}; q^{1/2})_∞`.
    NegHalfInf,
    /// `(q; q^2)_∞`.
    QOddInf,
    /// `(-q; q)_∞`.
    NegQInf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HlSide {
    /// Number of ones, `a n + b`.
    pub ones: (i64, i64),
    pub filter: HlFilter,
    pub shift: HlShift,
    pub weight: HlWeight,
}

/// `prefactor * F_{m,N}(1, w, z; q)`, with `q -> q^2` when `base2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FSide {
    pub w: &'static str,
    pub z: &'static str,
    pub base2: bool,
    pub prefactor: FPrefactor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Class {
    Proved,
    /// Rests on the finite `(w, z)` conjecture.
    ConditionallyProved,
    Conjectural,
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Class::Proved => "proved",
            Class::ConditionallyProved => "conditionally-proved",
            Class::Conjectural => "conjectural",
        };
        write!(f, "{}", s)
    }
}

/// One registered identity
/// `E(τ) sum_v σ(v) χ(v/ρ) q^{(|v|^2 - |ρ|^2)/D + |ρ|^2/D0} = HL side = F side`
/// with `v ∈ ρ + K Z^n`. Without `D0` the prefactor is the Pochhammer
/// product underlying `E` and no fractional power appears.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EtaIdentity {
    pub id: &'static str,
    pub class: Class,
    pub rho: Rho,
    pub chi: Chi,
    pub twist: Twist,
    pub modulus: Lin,
    pub denom: Lin,
    pub norm: Option<Lin>,
    pub eta: &'static [EtaTerm],
    pub hl: HlSide,
    pub f: Option<FSide>,
}

const HL_C: HlSide = HlSide { ones: (2, 0), filter: HlFilter::Even, shift: HlShift::Half, weight: HlWeight::One };
const HL_BC: HlSide = HlSide { ones: (2, 0), filter: HlFilter::All, shift: HlShift::Half, weight: HlWeight::One };
const F_C: FSide = FSide { w: "0", z: "0", base2: false, prefactor: FPrefactor::None };
const F_BC: FSide = FSide { w: "0", z: "1", base2: false, prefactor: FPrefactor::None };
const A2ODD_ETA: &[EtaTerm] = &[eta((2, 1), (0, 2, -1)), eta((1, 1), (-2, -1, 1))];

pub const REGISTRY: &[EtaIdentity] = &[
    EtaIdentity {
        id: "MD-C",
        class: Class::Proved,
        rho: Rho::C,
        chi: Chi::B,
        twist: Twist::None,
        modulus: Lin(2, 2, 2),
        denom: Lin(4, 4, 4),
        norm: None,
        eta: &[eta((1, 1), (-2, -1, 0))],
        hl: HL_C,
        f: Some(F_C),
    },
    EtaIdentity {
        id: "MD-BC",
        class: Class::Proved,
        rho: Rho::C,
        chi: Chi::B,
        twist: Twist::None,
        modulus: Lin(2, 2, 1),
        denom: Lin(4, 4, 2),
        norm: None,
        eta: &[eta((1, 2), (0, -2, 0)), eta((2, 1), (0, -2, 0)), eta((1, 1), (-2, 3, 0))],
        hl: HL_BC,
        f: Some(F_BC),
    },
    EtaIdentity {
        id: "C1-FS",
        class: Class::Proved,
        rho: Rho::C,
        chi: Chi::B,
        twist: Twist::None,
        modulus: Lin(2, 2, 2),
        denom: Lin(4, 4, 4),
        norm: Some(Lin(0, 4, 4)),
        eta: &[eta((1, 1), (-2, -1, 0))],
        hl: HL_C,
        f: Some(F_C),
    },
    EtaIdentity {
        id: "BC-6a",
        class: Class::Proved,
        rho: Rho::B,
        chi: Chi::B,
        twist: Twist::None,
        modulus: Lin(2, 2, 1),
        denom: Lin(4, 4, 2),
        norm: Some(Lin(0, 4, 2)),
        eta: &[eta((2, 1), (0, 2, 0)), eta((1, 1), (-2, -3, 0))],
        hl: HlSide { ones: (2, 0), filter: HlFilter::All, shift: HlShift::HalfOdd, weight: HlWeight::One },
        f: Some(FSide { w: "0", z: "q^1/2", base2: false, prefactor: FPrefactor::None }),
    },
    EtaIdentity {
        id: "BC-6b",
        class: Class::Proved,
        rho: Rho::C,
        chi: Chi::B,
        twist: Twist::None,
        modulus: Lin(2, 2, 1),
        denom: Lin(4, 4, 2),
        norm: Some(Lin(0, 4, 2)),
        eta: &[eta((1, 2), (0, -2, 0)), eta((2, 1), (0, -2, 0)), eta((1, 1), (-2, 3, 0))],
        hl: HL_BC,
        f: Some(F_BC),
    },
    EtaIdentity {
        id: "BC-6c-RR",
        class: Class::Proved,
        rho: Rho::B,
        chi: Chi::D,
        twist: Twist::Parity,
        modulus: Lin(2, 2, 1),
        denom: Lin(4, 4, 2),
        norm: Some(Lin(0, 4, 2)),
        eta: &[eta((1, 1), (-2, 1, 0))],
        hl: HlSide { ones: (2, -1), filter: HlFilter::Even, shift: HlShift::Half, weight: HlWeight::One },
        f: Some(FSide { w: "0", z: "0", base2: false, prefactor: FPrefactor::None }),
    },
    EtaIdentity {
        id: "B1",
        class: Class::ConditionallyProved,
        rho: Rho::D,
        chi: Chi::D,
        twist: Twist::Parity,
        modulus: Lin(2, 2, -1),
        denom: Lin(4, 4, -2),
        norm: Some(Lin(0, 4, -2)),
        eta: &[eta((1, 2), (0, -2, 0)), eta((1, 1), (-2, 3, 0))],
        hl: HlSide { ones: (2, -1), filter: HlFilter::All, shift: HlShift::Half, weight: HlWeight::NegHalfPoch },
        f: Some(FSide { w: "q^1/2", z: "1", base2: false, prefactor: FPrefactor::NegHalfInf }),
    },
    EtaIdentity {
        id: "A2odd-a",
        class: Class::Proved,
        rho: Rho::D,
        chi: Chi::D,
        twist: Twist::Scaled,
        modulus: Lin(2, 2, 0),
        denom: Lin(4, 4, 0),
        norm: Some(Lin(0, 4, 0)),
        eta: A2ODD_ETA,
        hl: HlSide { ones: (2, -1), filter: HlFilter::All, shift: HlShift::HalfOdd, weight: HlWeight::One },
        f: Some(FSide { w: "0", z: "q^1/2", base2: false, prefactor: FPrefactor::None }),
    },
    EtaIdentity {
        id: "A2odd-b",
        class: Class::ConditionallyProved,
        rho: Rho::D,
        chi: Chi::D,
        twist: Twist::Scaled,
        modulus: Lin(2, 2, 0),
        denom: Lin(4, 4, 0),
        norm: Some(Lin(0, 4, 0)),
        eta: A2ODD_ETA,
        hl: HlSide { ones: (2, 0), filter: HlFilter::OddPaired, shift: HlShift::HalfOdd, weight: HlWeight::QOddPoch },
        f: Some(FSide { w: "-q^1/2", z: "q^1/2", base2: false, prefactor: FPrefactor::QOddInf }),
    },
    EtaIdentity {
        id: "D-6a",
        class: Class::Conjectural,
        rho: Rho::B,
        chi: Chi::B,
        twist: Twist::None,
        modulus: Lin(2, 2, 0),
        denom: Lin(2, 2, 0),
        norm: Some(Lin(0, 2, 0)),
        eta: &[eta((1, 1), (0, -2, -1)), eta((2, 1), (-2, 1, 1))],
        hl: HlSide { ones: (2, 0), filter: HlFilter::All, shift: HlShift::Full, weight: HlWeight::NegQPoch },
        f: Some(FSide { w: "q^1/2", z: "1", base2: true, prefactor: FPrefactor::NegQInf }),
    },
    EtaIdentity {
        id: "D-6b",
        class: Class::Proved,
        rho: Rho::B,
        chi: Chi::D,
        twist: Twist::None,
        modulus: Lin(2, 2, 0),
        denom: Lin(2, 2, 0),
        norm: Some(Lin(0, 2, 0)),
        eta: &[eta((1, 1), (0, 2, -1)), eta((2, 1), (-2, -1, 1))],
        hl: HlSide { ones: (2, -1), filter: HlFilter::All, shift: HlShift::Full, weight: HlWeight::SignOdd },
        f: Some(FSide { w: "0", z: "-1", base2: true, prefactor: FPrefactor::None }),
    },
    EtaIdentity {
        id: "D-new",
        class: Class::Proved,
        rho: Rho::B,
        chi: Chi::D,
        twist: Twist::Scaled,
        modulus: Lin(2, 2, 0),
        denom: Lin(2, 2, 0),
        norm: Some(Lin(0, 2, 0)),
        eta: &[eta((1, 1), (0, -2, 1)), eta((4, 1), (0, -2, 1)), eta((2, 1), (-2, 5, -2))],
        hl: HlSide { ones: (2, -1), filter: HlFilter::All, shift: HlShift::Full, weight: HlWeight::One },
        f: Some(FSide { w: "0", z: "1", base2: true, prefactor: FPrefactor::None }),
    },
];

pub fn identity(id: &str) -> Result<&'static EtaIdentity> {
    REGISTRY.iter().find(|e| e.id == id).ok_or_else(|| Error::UnknownId(id.to_string()))
}

fn check_rank(n: usize, m: i64) -> Result<()> {
    if n == 0 || m < 0 {
        return Err(Error::Invalid("eta identities need n >= 1 and m >= 0".into()));
    }
    Ok(())
}

impl EtaIdentity {
    pub fn eta_terms(&self, n: usize) -> Vec<(Q, i64)> {
        let n = n as i64;
        self.eta
            .iter()
            .map(|t| (qf(t.scale.0, t.scale.1), t.exp.0 * n * n + t.exp.1 * n + t.exp.2))
            .collect()
    }

    pub fn ones(&self, n: usize) -> usize {
        (self.hl.ones.0 * n as i64 + self.hl.ones.1) as usize
    }

    pub fn has_f_side(&self, m: i64) -> bool {
        self.f.is_some() && m >= 1
    }
}

/// All `k ∈ Z^n` with `max |k_i| = b`.
fn sup_shell(n: usize, b: i64) -> Vec<Vec<i64>> {
    let mut out = vec![];
    let mut k = vec![-b; n];
    loop {
        if k.iter().any(|x| x.abs() == b) {
            out.push(k.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            if k[i] < b {
                k[i] += 1;
                break;
            }
            k[i] = -b;
            i += 1;
        }
    }
}

fn norm2(v: &[Q]) -> Q {
    v.iter().map(|x| x * x).sum()
}

/// `sum_v σ(v) χ(v/ρ) t^{2(|v|^2 - |ρ|^2)/D}` through `t^order`, and the
/// extra power `|ρ|^2/D0` of `q` (zero without `D0`).
pub fn lattice_theta(e: &EtaIdentity, n: usize, m: i64, order: i64) -> Result<(Q, QSeries)> {
    check_rank(n, m)?;
    let ni = n as i64;
    let k_mod = e.modulus.eval(ni, m);
    let denom = e.denom.eval(ni, m);
    if k_mod <= 0 || denom <= 0 {
        return Err(Error::Invalid(format!("{} needs a positive modulus", e.id)));
    }
    let rho = e.rho.vector(n);
    let rho2 = norm2(&rho);
    let rho_sum: Q = rho.iter().sum();
    let chi_rho = e.chi.eval(&rho);
    if chi_rho.is_zero() {
        return Err(Error::Singular("χ(ρ) vanishes".into()));
    }
    let sign_div = match e.twist {
        Twist::None => None,
        Twist::Parity => Some(qi(1)),
        Twist::Scaled => Some(qi(2 * (m + ni))),
    };
    let mut terms = vec![];
    let mut quiet = 0;
    for b in 0..=crate::characters::MAX_SHELL {
        let mut live = false;
        for k in sup_shell(n, b) {
            let v: Vec<Q> = rho.iter().zip(&k).map(|(r, ki)| r + qi(k_mod * ki)).collect();
            let e_t = qi(2) * (norm2(&v) - &rho2) / qi(denom);
            if !e_t.is_integer() {
                return Err(Error::Invalid(format!("{}: exponent {} is not a half-integer power of q", e.id, fmt_q(&e_t))));
            }
            let e_t: i64 = e_t.to_integer().try_into().map_err(|_| Error::Invalid("exponent overflow".into()))?;
            if e_t > order {
                continue;
            }
            live = true;
            let mut c = e.chi.eval(&v) / &chi_rho;
            if let Some(d) = &sign_div {
                let s = (v.iter().sum::<Q>() - &rho_sum) / d;
                if !s.is_integer() {
                    return Err(Error::Invalid(format!("{}: sign exponent {} is not integral", e.id, fmt_q(&s))));
                }
                if s.to_integer().is_odd() {
                    c = -c;
                }
            }
            terms.push((e_t, c));
        }
        quiet = if live { 0 } else { quiet + 1 };
        if quiet == 2 {
            let offset = match e.norm {
                Some(d0) => rho2 / qi(d0.eval(ni, m)),
                None => Q::zero(),
            };
            return Ok((offset, QSeries::from_terms(&terms, Some(order))));
        }
    }
    Err(Error::ShellBound(format!("{}: lattice sum still live", e.id)))
}

/// The eta quotient `E` for rank `n`.
pub fn eta_factor(e: &EtaIdentity, n: usize, order: i64) -> Result<EtaQuotient> {
    eta_quotient(&e.eta_terms(n), order)
}

/// The left side as a power series in `t`. The fractional powers of `q`
/// must cancel exactly between `E` and `q^{|ρ|^2/D0}`.
pub fn lattice_side(e: &EtaIdentity, n: usize, m: i64, order: i64) -> Result<QSeries> {
    let (offset, theta) = lattice_theta(e, n, m, order)?;
    let eq = eta_factor(e, n, order)?;
    if e.norm.is_some() && !(&eq.offset + &offset).is_zero() {
        return Err(Error::Invalid(format!(
            "{}: eta offset {} and lattice offset {} do not cancel",
            e.id,
            fmt_q(&eq.offset),
            fmt_q(&offset)
        )));
    }
    Ok((&theta * &eq.body).truncate(order))
}

/// `P'_λ(1, .., 1; q)` with `ones` letters, by the fermionic formula.
pub fn principal_pprime(lambda: &Partition, ones: usize, order: i64) -> Result<QSeries> {
    let alph = Alphabet::Point(vec![(qi(1), 0); ones]);
    Ok(pprime_fermionic(lambda, &alph, order)?.as_series())
}

fn odd_paired(lambda: &Partition) -> bool {
    lambda.multiplicities().iter().all(|(p, mult)| p % 2 == 0 || mult % 2 == 0)
}

/// `prod_{i=0}^{2m-1} f(m_i(λ))` with `m_0 = ∞`.
fn mult_product(lambda: &Partition, m: i64, order: i64, a: &QSeries, step: i64, half: bool) -> Result<QSeries> {
    if m == 0 {
        return Ok(QSeries::one());
    }
    let mut acc = poch_base(a, step, Extent::Infinite, order)?;
    for (part, mult) in lambda.multiplicities() {
        if part < 2 * m {
            let k = if half { (mult + 1) / 2 } else { mult };
            acc = (&acc * &poch_base(a, step, Extent::Finite(k), order)?).truncate(order);
        }
    }
    Ok(acc)
}

fn hl_weight(e: &EtaIdentity, lambda: &Partition, m: i64, order: i64) -> Result<QSeries> {
    match e.hl.weight {
        HlWeight::One => Ok(QSeries::one()),
        HlWeight::NegHalfPoch => mult_product(lambda, m, order, &QSeries::mono(qi(-1), 1), 1, false),
        HlWeight::QOddPoch => mult_product(lambda, m, order, &QSeries::t_pow(2), 4, true),
        HlWeight::NegQPoch => mult_product(lambda, m, order, &QSeries::mono(qi(-1), 2), 2, false),
        HlWeight::SignOdd => {
            let s = if lambda.lambda_odd().len().is_multiple_of(2) { 1 } else { -1 };
            Ok(QSeries::constant(qi(s)))
        }
    }
}

/// The specialized Hall-Littlewood side through `t^order`.
pub fn hl_side(e: &EtaIdentity, n: usize, m: i64, order: i64) -> Result<QSeries> {
    check_rank(n, m)?;
    let ones = e.ones(n);
    let filter = if e.hl.filter == HlFilter::Even { PartFilter::Even } else { PartFilter::All };
    let max_weight = if e.hl.shift == HlShift::Full { order / 2 } else { order };
    let mut acc = QSeries::zero_to(order);
    for lambda in enum_partitions(2 * m, max_weight, filter) {
        if e.hl.filter == HlFilter::OddPaired && !odd_paired(&lambda) {
            continue;
        }
        let shift = match e.hl.shift {
            HlShift::Half => lambda.weight(),
            HlShift::HalfOdd => lambda.weight() + lambda.lambda_odd().len() as i64,
            HlShift::Full => 2 * lambda.weight(),
        };
        if shift > order {
            continue;
        }
        let rest = order - shift;
        let pp = match e.hl.shift {
            HlShift::Full => principal_pprime(&lambda, ones, rest / 2)?.dilate(2),
            _ => principal_pprime(&lambda, ones, rest)?,
        };
        let term = &hl_weight(e, &lambda, m, rest)? * &pp;
        acc = &acc + &term.shift(shift).truncate(order);
    }
    Ok(acc)
}

/// The `F_{m,N}` side; `None` for `m = 0` or identities without one.
pub fn f_side(e: &EtaIdentity, n: usize, m: i64, order: i64) -> Result<Option<QSeries>> {
    check_rank(n, m)?;
    let (Some(fs), true) = (e.f, m >= 1) else {
        return Ok(None);
    };
    let spec = f_spec(e, &fs, n, m)?;
    let f = if fs.base2 {
        nahm_f(&spec, order / 2)?.dilate(2).truncate(order)
    } else {
        nahm_f(&spec, order)?
    };
    let pre = match fs.prefactor {
        FPrefactor::None => return Ok(Some(f)),
        FPrefactor::NegHalfInf => poch_base(&QSeries::mono(qi(-1), 1), 1, Extent::Infinite, order)?,
        FPrefactor::QOddInf => poch_base(&QSeries::t_pow(2), 4, Extent::Infinite, order)?,
        FPrefactor::NegQInf => poch_base(&QSeries::mono(qi(-1), 2), 2, Extent::Infinite, order)?,
    };
    Ok(Some((&pre * &f).truncate(order)))
}

fn f_spec(e: &EtaIdentity, fs: &FSide, n: usize, m: i64) -> Result<NahmSpec> {
    NahmSpec::new(m as usize, e.ones(n), Mono::constant(qi(1)), fs.w.parse()?, fs.z.parse()?)
}

fn pair_report(id: String, standing: Standing, n: usize, m: i64, order: i64, pair: &str, sample: crate::report::Sample) -> IdentityReport {
    let p = params(&[("n", n.to_string()), ("m", m.to_string()), ("pair", pair.to_string())]);
    IdentityReport::from_samples(&id, standing, p, order, vec![sample])
}

/// Compare the lattice side with the Hall-Littlewood side (report `<id>`)
/// and, for `m >= 1`, the Hall-Littlewood side with `F` (report `<id>/F`).
pub fn verify_eta(e: &EtaIdentity, n: usize, m: i64, order: i64) -> Vec<IdentityReport> {
    let hl = hl_side(e, n, m, order);
    let standing = if m == 0 || e.class == Class::Proved { Standing::Proved } else { Standing::Conjectural };
    let first = match (&hl, lattice_side(e, n, m, order)) {
        (Ok(h), Ok(l)) => Ok(FirstMismatch::series(&l, h)),
        (Err(err), _) => Err(err.clone()),
        (_, Err(err)) => Err(err),
    };
    let mut out = vec![pair_report(e.id.to_string(), standing, n, m, order, "lattice=hl", first)];
    if let (Some(fs), true) = (e.f, m >= 1) {
        let standing = match f_spec(e, &fs, n, m) {
            Ok(spec) if spec_is_proved(&spec) => Standing::Proved,
            _ => Standing::Conjectural,
        };
        let second = match (&hl, f_side(e, n, m, order)) {
            (Ok(h), Ok(Some(f))) => Ok(FirstMismatch::series(h, &f)),
            (Ok(_), Ok(None)) => unreachable!("F side exists for m >= 1"),
            (Err(err), _) => Err(err.clone()),
            (_, Err(err)) => Err(err),
        };
        out.push(pair_report(format!("{}/F", e.id), standing, n, m, order, "hl=F", second));
    }
    out
}

/// `1!3!..(2n-1)!`, the reciprocal of the constant in the `C_n` eta-power
/// identity.
pub fn cn_constant(n: usize) -> Q {
    let mut acc = Q::one();
    let mut fact = Q::one();
    for k in 1..2 * n as i64 {
        fact *= qi(k);
        if k % 2 == 1 {
            acc *= &fact;
        }
    }
    acc
}
