//! The verification suite: a fixed catalog of checks, each expanding into a
//! grid of reports, run in parallel and emitted in id order.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::RngCore;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bailey::{
    andrews_sides, inversion_roundtrip, iterated_pair_check, random_alpha, random_point, sample_nonsingular, Param,
};
use crate::characters::{
    appendix_limit, case2_sides, char_combinatorial, char_lattice, level_one_combinatorial, sample_point, sum_m_sides,
    thm_main_sides, wz_finite_sides, Algebra, CharSpec, CombKind, TParam, Variant, XSpec,
};
use crate::error::{Error, Result};
use crate::eta::{cn_constant, lattice_theta, verify_eta, Chi, Class, Rho, REGISTRY};
use crate::partitions::{MultiIndex, Partition};
use crate::qseries::{eta_quotient, poch_base, poch_recip_base, qf, qi, triple_product, Extent, QSeries, Q};
use crate::rational::{rng, rpoch, rpow, RationalSource};
use crate::report::{params, FirstMismatch, IdentityReport, Sample, Standing};
use crate::rr::{
    andrews_gordon_product, andrews_gordon_sum, nahm_f, nahm_f_root_lattice, spec_is_proved, spec_sides, Mono, NahmSpec,
};
use crate::symfunc::hyper::{milne_lemma, milne_qbinomial};
use crate::symfunc::hl::distinct_point;
use crate::symfunc::{qprime, QMethod};

/// Redraws allowed when a random point hits a singular specialization.
const TRIES: usize = 50;

/// Run settings shared by every check. `None` keeps a check's own default.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Config {
    pub order: Option<i64>,
    pub n: Option<usize>,
    pub m: Option<i64>,
    pub points: Option<usize>,
    pub seed: u64,
    /// Record wall time in `runtime_ms` (breaks byte-identical output).
    pub timed: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Proved,
    Conjectural,
    All,
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "proved" => Ok(Suite::Proved),
            "conjectural" => Ok(Suite::Conjectural),
            "all" => Ok(Suite::All),
            _ => Err(Error::Parse(format!("unknown suite {} (proved|conjectural|all)", s))),
        }
    }
}

impl Suite {
    fn admits(self, s: Standing) -> bool {
        match self {
            Suite::All => true,
            Suite::Proved => s == Standing::Proved,
            Suite::Conjectural => s == Standing::Conjectural,
        }
    }
}

/// One catalog entry.
#[derive(Clone)]
pub struct Check {
    pub id: String,
    pub standing: Standing,
    pub family: &'static str,
    pub about: &'static str,
    run: fn(&Ctx) -> Vec<IdentityReport>,
}

impl fmt::Debug for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Check").field("id", &self.id).field("standing", &self.standing).finish()
    }
}

/// Reports of one check, tagged with the check's standing.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub standing: Standing,
    pub report: IdentityReport,
}

impl Outcome {
    /// A proved identity failed, or a proved check could not be evaluated.
    pub fn gates(&self) -> bool {
        use crate::report::Status;
        match self.report.status {
            Status::Fail => true,
            Status::Error => self.standing == Standing::Proved,
            _ => false,
        }
    }
}

struct Ctx<'a> {
    cfg: &'a Config,
    id: &'a str,
    standing: Standing,
}

impl Ctx<'_> {
    /// Per-check stream, so results do not depend on which checks run.
    fn rng(&self) -> ChaCha8Rng {
        rng(self.cfg.seed ^ fnv1a(self.id))
    }

    fn order(&self, default: i64) -> i64 {
        self.cfg.order.unwrap_or(default)
    }

    fn points(&self, default: usize) -> usize {
        self.cfg.points.unwrap_or(default)
    }

    fn ns(&self, default: &[usize]) -> Vec<usize> {
        self.cfg.n.map_or_else(|| default.to_vec(), |n| vec![n])
    }

    fn ms(&self, default: &[i64]) -> Vec<i64> {
        self.cfg.m.map_or_else(|| default.to_vec(), |m| vec![m])
    }

    fn cell(&self, p: BTreeMap<String, String>, order: i64, f: impl FnOnce() -> Vec<Sample>) -> IdentityReport {
        self.cell_as(self.standing, p, order, f)
    }

    fn cell_as(&self, standing: Standing, p: BTreeMap<String, String>, order: i64, f: impl FnOnce() -> Vec<Sample>) -> IdentityReport {
        let start = Instant::now();
        let mut r = IdentityReport::from_samples(self.id, standing, p, order, f());
        if self.cfg.timed {
            r.runtime_ms = start.elapsed().as_millis() as u64;
        }
        r
    }
}

fn fnv1a(s: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in s.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

/// `count` samples, each redrawn while the specialization is singular.
fn sampled<G: RngCore>(g: &mut G, count: usize, mut f: impl FnMut(&mut G) -> Result<Option<FirstMismatch>>) -> Vec<Sample> {
    (0..count).map(|_| sample_nonsingular(g, TRIES, &mut f)).collect()
}

fn series_pair(sides: Result<(QSeries, QSeries)>) -> Sample {
    sides.map(|(l, r)| FirstMismatch::series(&l, &r))
}

fn vals(v: &[Q]) -> Vec<Param> {
    v.iter().cloned().map(Param::Val).collect()
}

fn generic_vec(g: &mut impl RngCore, k: usize, height: i64) -> Vec<Q> {
    (0..k).map(|_| g.generic(height)).collect()
}

fn mi(v: &[i64]) -> MultiIndex {
    MultiIndex(v.to_vec())
}

macro_rules! check {
    ($id:expr, $standing:ident, $family:expr, $about:expr, $run:expr) => {
        Check { id: $id.to_string(), standing: Standing::$standing, family: $family, about: $about, run: $run }
    };
}

/// Every check, sorted by id. Eta identities appear as `eta:<id>`.
pub fn catalog() -> Vec<Check> {
    let mut out = vec![
        check!("qprime-routes", Proved, "symfunc", "Q'_mu by charge, Jing operators, multisum and fermionic chains", qprime_routes),
        check!("milne-lemma", Proved, "symfunc", "Milne's partial fraction lemma", milne),
        check!("q-binomial", Proved, "symfunc", "A_{n-1} q-binomial theorem", q_binomial),
        check!("andrews", Proved, "bailey", "C_n Andrews transformation, LHS = RHS", andrews),
        check!("jackson", Proved, "bailey", "m = 0 reduction against the 6phi5 closed form", jackson),
        check!("watson", Proved, "bailey", "m = 1 reduction against the classical q-Whipple form", watson),
        check!("bailey-inversion", Proved, "bailey", "alpha -> beta -> alpha on boxes inside (2,2)", bailey_inversion),
        check!("bailey-lemma", Proved, "bailey", "iterated Bailey lemma from the unit pair reproduces the transformation", bailey_lemma),
        check!("poch-negative", Proved, "qseries", "(a)_{-n}/(b)_{-n} = (q/b)_n/(q/a)_n (b/a)^n", poch_negative),
        check!("char-C1", Proved, "characters", "C_n^(1) lattice character = sum over even lambda", char_c1),
        check!("char-A2even-I", Proved, "characters", "A_2n^(2) lattice character = sum over all lambda", char_a2_one),
        check!("char-A2even-II", Proved, "characters", "second A_2n^(2) lattice character = shifted sum", char_a2_two),
        check!("limit-lemma", Proved, "characters", "x_{p+1} -> 1/x_p limit of L_{M,N} at p = 1", limit_lemma),
        check!("prop-w0", Proved, "characters", "w = 0 case of the (w, z) identity", prop_w0),
        check!("thm-main", Proved, "characters", "main theorem at b or c = infinity", thm_main),
        check!("thm-m1", Proved, "rr", "F_{1,n}(u, w, z) = Hall-Littlewood side", thm_m1),
        check!("root-lattice", Proved, "rr", "F_{1,n} against its root lattice form", root_lattice),
        check!("andrews-gordon", Proved, "rr", "F_{k-1,1}(1, 0, 0) = Andrews-Gordon product", andrews_gordon),
        check!("rr-desk", Proved, "rr", "Rogers-Ramanujan: lattice = P' sum = F_{1,1} = product", rr_desk),
        check!("eta-jacobi", Proved, "eta", "Jacobi eta^3 from the rank-one lattice", eta_jacobi),
        check!("eta-cn-constant", Proved, "eta", "C_n eta power and its constant 1!3!..(2n-1)!", eta_cn_constant),
        check!("wz-finite", Conjectural, "characters", "finite (w, z) identity", wz_finite),
        check!("summed-m", Conjectural, "characters", "identity summed over M", summed_m),
        check!("thm-main-finite", Conjectural, "characters", "main theorem with both parameters finite", thm_main_finite),
        check!("d-twisted", Conjectural, "characters", "D_{n+1}^(2) character = twisted sum", d_twisted),
        check!("half-integer", Conjectural, "characters", "A_2n^(2) and D_{n+1}^(2) at half-integer m", half_integer),
        check!("level-one", Conjectural, "characters", "level-one C_n^(1) character", level_one),
        check!("f-symmetry", Conjectural, "rr", "F_{m,n}(u, w, z) = F_{m,n}(u, z, w)", f_symmetry),
        check!("spec-m2", Conjectural, "rr", "F_{2,n}(u, w, z) = Hall-Littlewood side", spec_m2),
    ];
    for e in REGISTRY {
        let standing = if e.class == Class::Proved { Standing::Proved } else { Standing::Conjectural };
        let about = "eta quotient lattice sum = Hall-Littlewood side = F";
        out.push(Check { id: format!("eta:{}", e.id), standing, family: "eta", about, run: eta_identity });
    }
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}

/// The checks selected by `suite`, or the single check `id`.
pub fn select(suite: Suite, id: Option<&str>) -> Result<Vec<Check>> {
    let all = catalog();
    match id {
        Some(id) => all.into_iter().find(|c| c.id == id).map(|c| vec![c]).ok_or_else(|| Error::UnknownId(id.to_string())),
        None => Ok(all.into_iter().filter(|c| suite.admits(c.standing)).collect()),
    }
}

/// Run `checks` in parallel. Output is sorted by report id and otherwise
/// keeps each check's grid order, so it does not depend on scheduling.
pub fn run(checks: &[Check], cfg: &Config) -> Vec<Outcome> {
    let per: Vec<Vec<Outcome>> = checks
        .par_iter()
        .map(|c| {
            let ctx = Ctx { cfg, id: &c.id, standing: c.standing };
            (c.run)(&ctx).into_iter().map(|report| Outcome { standing: c.standing, report }).collect()
        })
        .collect();
    let mut out: Vec<Outcome> = per.into_iter().flatten().collect();
    out.sort_by(|a, b| a.report.id.cmp(&b.report.id));
    out
}

fn qprime_routes(ctx: &Ctx) -> Vec<IdentityReport> {
    let max_weight = ctx.cfg.order.unwrap_or(8);
    let mut out = vec![];
    for n in ctx.ns(&[2, 3]) {
        for d in 0..=max_weight {
            out.push(ctx.cell(params(&[("n", n as i64), ("weight", d)]), 0, || {
                Partition::all_of(d)
                    .iter()
                    .map(|mu| {
                        let base = qprime(mu, n, QMethod::Charge)?;
                        for m in [QMethod::Jing, QMethod::Multisum, QMethod::Fermionic] {
                            if let Some(bad) = FirstMismatch::laurent(&base, &qprime(mu, n, m)?) {
                                return Ok(Some(bad));
                            }
                        }
                        Ok(None)
                    })
                    .collect()
            }));
        }
    }
    out
}

fn milne(ctx: &Ctx) -> Vec<IdentityReport> {
    let mut g = ctx.rng();
    let pts = ctx.points(3);
    (1..=5)
        .map(|n| {
            ctx.cell(params(&[("n", n)]), 0, || {
                sampled(&mut g, pts, |g| {
                    let xs = distinct_point(g, n);
                    let ys: Vec<Q> = (0..n).map(|_| g.rational(9)).collect();
                    let (l, r) = milne_lemma(&xs, &ys)?;
                    Ok(FirstMismatch::value(&l, &r))
                })
            })
        })
        .collect()
}

fn q_binomial(ctx: &Ctx) -> Vec<IdentityReport> {
    let mut g = ctx.rng();
    let pts = ctx.points(1);
    let mut out = vec![];
    for n in ctx.ns(&[1, 2, 3]) {
        for nn in MultiIndex::boxed(&vec![0; n], &vec![4; n]) {
            if nn.sum() > 4 {
                continue;
            }
            out.push(ctx.cell(params(&[("n", n.to_string()), ("N", nn.to_string())]), 0, || {
                sampled(&mut g, pts, |g| {
                    let xs = distinct_point(g, n);
                    let qv = g.generic(7);
                    let (l, r) = milne_qbinomial(&nn.0, &xs, &qv)?;
                    Ok(FirstMismatch::value(&l, &r))
                })
            }));
        }
    }
    out
}

fn andrews_boxes(n: usize) -> Vec<MultiIndex> {
    match n {
        1 => vec![mi(&[1]), mi(&[2])],
        2 => MultiIndex::boxed(&[0, 0], &[2, 1]),
        _ => MultiIndex::boxed(&vec![0; n], &vec![1; n]),
    }
}

fn andrews(ctx: &Ctx) -> Vec<IdentityReport> {
    let mut g = ctx.rng();
    let pts = ctx.points(3);
    let mut out = vec![];
    for n in ctx.ns(&[1, 2]) {
        for m in ctx.ms(&[0, 1, 2]) {
            let m = m as usize;
            for nn in andrews_boxes(n) {
                let p = params(&[("n", n.to_string()), ("m", m.to_string()), ("N", nn.to_string())]);
                out.push(ctx.cell(p, 0, || {
                    sampled(&mut g, pts, |g| {
                        let p = random_point(g, n, 50);
                        let b = generic_vec(g, m + 1, 50);
                        let c = generic_vec(g, m + 1, 50);
                        let (l, r) = andrews_sides(&p, m, &nn, &vals(&b), &vals(&c))?;
                        Ok(FirstMismatch::value(&l, &r))
                    })
                }));
            }
        }
    }
    out
}

fn jackson(ctx: &Ctx) -> Vec<IdentityReport> {
    // n = 1: (qx^2, q/bc)_N / (qx/b, qx/c)_N
    let mut g = ctx.rng();
    let pts = ctx.points(3);
    (0..=3)
        .map(|nn| {
            ctx.cell(params(&[("n", 1), ("m", 0), ("N", nn)]), 0, || {
                sampled(&mut g, pts, |g| {
                    let p = random_point(g, 1, 30);
                    let (b, c) = (g.generic(30), g.generic(30));
                    let (q, x) = (&p.q, &p.x[0]);
                    let (l, r) = andrews_sides(&p, 0, &mi(&[nn]), &vals(std::slice::from_ref(&b)), &vals(std::slice::from_ref(&c)))?;
                    let want = rpoch(&(q * x * x), q, nn)? * rpoch(&(q / (&b * &c)), q, nn)?
                        / (rpoch(&(q * x / &b), q, nn)? * rpoch(&(q * x / &c), q, nn)?);
                    Ok(FirstMismatch::value(&want, &l).or_else(|| FirstMismatch::value(&want, &r)))
                })
            })
        })
        .collect()
}

/// Terminating balanced `4phi3` side of Watson's transformation of the
/// very-well-poised `8phi7` with `a`, parameters `b, c, d, e` and `q^{-N}`.
fn watson_rhs(q: &Q, a: &Q, b: &Q, c: &Q, d: &Q, e: &Q, nn: i64) -> Result<Q> {
    let qn = rpow(q, -nn);
    let top = [qn.clone(), d.clone(), e.clone(), a * q / (b * c)];
    let bottom = [a * q / b, a * q / c, d * e * &qn / a, q.clone()];
    let mut sum = Q::from_integer(0.into());
    for k in 0..=nn {
        let mut t = rpow(q, k);
        for (u, l) in top.iter().zip(&bottom) {
            t *= rpoch(u, q, k)? / rpoch(l, q, k)?;
        }
        sum += t;
    }
    let pre = rpoch(&(a * q), q, nn)? * rpoch(&(a * q / (d * e)), q, nn)? / (rpoch(&(a * q / d), q, nn)? * rpoch(&(a * q / e), q, nn)?);
    Ok(pre * sum)
}

fn watson(ctx: &Ctx) -> Vec<IdentityReport> {
    // n = 1, m = 1: the left side is 8W7(x^2; b1 x, c1 x, b2 x, c2 x, q^{-N}).
    let mut g = ctx.rng();
    let pts = ctx.points(3);
    let mut out = vec![];
    for nn in 0..=3 {
        out.push(ctx.cell(params(&[("n", 1), ("m", 1), ("N", nn)]), 0, || {
            sampled(&mut g, pts, |g| {
                let p = random_point(g, 1, 30);
                let b = generic_vec(g, 2, 30);
                let c = generic_vec(g, 2, 30);
                let (q, x) = (&p.q, &p.x[0]);
                let (l, r) = andrews_sides(&p, 1, &mi(&[nn]), &vals(&b), &vals(&c))?;
                let want = watson_rhs(q, &(x * x), &(&b[1] * x), &(&c[1] * x), &(&b[0] * x), &(&c[0] * x), nn)?;
                Ok(FirstMismatch::value(&want, &l).or_else(|| FirstMismatch::value(&want, &r)))
            })
        }));
    }
    for _ in 0..usize::from(ctx.cfg.n.is_none_or(|n| n == 2)) {
        out.push(ctx.cell(params(&[("n", "2"), ("m", "1"), ("N", "(1,1)")]), 0, || {
            sampled(&mut g, pts, |g| {
                let p = random_point(g, 2, 30);
                let b = generic_vec(g, 2, 30);
                let c = generic_vec(g, 2, 30);
                let (l, r) = andrews_sides(&p, 1, &mi(&[1, 1]), &vals(&b), &vals(&c))?;
                Ok(FirstMismatch::value(&l, &r))
            })
        }));
    }
    out
}

fn bailey_inversion(ctx: &Ctx) -> Vec<IdentityReport> {
    let mut g = ctx.rng();
    let pts = ctx.points(5);
    [mi(&[1]), mi(&[2]), mi(&[1, 1]), mi(&[2, 1]), mi(&[2, 2])]
        .into_iter()
        .filter(|b| ctx.cfg.n.is_none_or(|n| n == b.len()))
        .map(|bound| {
            ctx.cell(params(&[("n", bound.len().to_string()), ("box", bound.to_string())]), 0, || {
                sampled(&mut g, pts, |g| {
                    let p = random_point(g, bound.len(), 50);
                    let alpha = random_alpha(g, &bound, 50);
                    Ok(FirstMismatch::flag(inversion_roundtrip(&p, &alpha, &bound)?))
                })
            })
        })
        .collect()
}

fn bailey_lemma(ctx: &Ctx) -> Vec<IdentityReport> {
    let mut g = ctx.rng();
    let pts = ctx.points(2);
    [(0, mi(&[1, 1])), (1, mi(&[1, 1])), (1, mi(&[2, 1])), (2, mi(&[1, 0]))]
        .into_iter()
        .map(|(m, nn)| {
            ctx.cell(params(&[("n", "2".to_string()), ("m", m.to_string()), ("N", nn.to_string())]), 0, || {
                sampled(&mut g, pts, |g| {
                    let p = random_point(g, 2, 30);
                    let b = generic_vec(g, m + 1, 30);
                    let c = generic_vec(g, m + 1, 30);
                    Ok(FirstMismatch::flag(iterated_pair_check(&p, m, &nn, &b, &c)?))
                })
            })
        })
        .collect()
}

fn poch_negative(ctx: &Ctx) -> Vec<IdentityReport> {
    let mut g = ctx.rng();
    let pts = ctx.points(3);
    let order = ctx.order(20);
    let q = QSeries::t_pow(2);
    (1..=5)
        .map(|n| {
            ctx.cell(params(&[("n", n)]), order, || {
                sampled(&mut g, pts, |g| {
                    let (a, b, qv) = (g.generic(20), g.generic(20), g.generic(20));
                    let l = rpoch(&a, &qv, -n)? / rpoch(&b, &qv, -n)?;
                    let r = rpoch(&(&qv / &b), &qv, n)? / rpoch(&(&qv / &a), &qv, n)? * rpow(&(&b / &a), n);
                    if let Some(bad) = FirstMismatch::value(&l, &r) {
                        return Ok(Some(bad));
                    }
                    // the same identity as formal series in q
                    let (sa, sb) = (QSeries::constant(a.clone()), QSeries::constant(b.clone()));
                    let l = &poch_base(&sa, 2, Extent::Finite(-n), order)? * &poch_recip_base(&sb, 2, Extent::Finite(-n), order)?;
                    let qb = (&q * &QSeries::constant(b.recip())).truncate(order);
                    let qa = (&q * &QSeries::constant(a.recip())).truncate(order);
                    let r = &(&poch_base(&qb, 2, Extent::Finite(n), order)? * &poch_recip_base(&qa, 2, Extent::Finite(n), order)?)
                        * &QSeries::constant(rpow(&(&b / &a), n));
                    Ok(FirstMismatch::series(&l.truncate(order), &r.truncate(order)))
                })
            })
        })
        .collect()
}

fn char_grid(ctx: &Ctx, alg: Algebra, kind: CombKind, level: impl Fn(i64) -> i64) -> Vec<IdentityReport> {
    let mut g = ctx.rng();
    let order = ctx.order(16);
    let pts = ctx.points(3);
    let mut out = vec![];
    for n in ctx.ns(&[1, 2]) {
        for m in ctx.ms(&[0, 1, 2]) {
            let formal = n == 1;
            let p = params(&[("n", n.to_string()), ("m", m.to_string()), ("x", (if formal { "formal" } else { "point" }).to_string())]);
            out.push(ctx.cell(p, order, || {
                let xs: Vec<XSpec> =
                    if formal { vec![XSpec::Formal(1)] } else { (0..pts).map(|_| XSpec::Point(sample_point(&mut g, n, 9))).collect() };
                xs.iter()
                    .map(|x| {
                        let spec = CharSpec::new(alg, level(m), Partition::empty(), n)?;
                        let l = char_lattice(&spec, x, order)?;
                        let c = char_combinatorial(kind, 2 * m, x, order)?;
                        Ok(FirstMismatch::laurent(&l, &c))
                    })
                    .collect()
            }));
        }
    }
    out
}

fn char_c1(ctx: &Ctx) -> Vec<IdentityReport> {
    char_grid(ctx, Algebra::C1, CombKind::CnEven, |m| m)
}

fn char_a2_one(ctx: &Ctx) -> Vec<IdentityReport> {
    char_grid(ctx, Algebra::A2EvenI, CombKind::A2All, |m| 2 * m)
}

fn char_a2_two(ctx: &Ctx) -> Vec<IdentityReport> {
    char_grid(ctx, Algebra::A2EvenII, CombKind::A2Shifted, |m| m)
}

fn limit_lemma(ctx: &Ctx) -> Vec<IdentityReport> {
    let mut g = ctx.rng();
    let pts = ctx.points(3);
    MultiIndex::boxed(&[0, 0], &[1, 1])
        .into_iter()
        .map(|nn| {
            ctx.cell(params(&[("p", "1".to_string()), ("n", "2".to_string()), ("N", nn.to_string())]), 0, || {
                sampled(&mut g, pts, |g| {
                    let x = sample_point(g, 2, 20);
                    let q = g.generic(20);
                    let (b, c) = (generic_vec(g, 2, 20), generic_vec(g, 2, 20));
                    let chk = appendix_limit(1, &[], &nn.0, &x, &q, &b, &c)?;
                    Ok(FirstMismatch::value(&chk.target, &chk.limit))
                })
            })
        })
        .collect()
}

fn x_mono(g: &mut impl RngCore, n: usize, t_exp: i64) -> Vec<(Q, i64)> {
    sample_point(g, n, 9).into_iter().map(|c| (c, t_exp)).collect()
}

const SMALL_M: [&[i64]; 5] = [&[1], &[2], &[3], &[1, 1], &[2, 1]];

fn prop_w0(ctx: &Ctx) -> Vec<IdentityReport> {
    let mut g = ctx.rng();
    let order = ctx.order(8);
    let pts = ctx.points(1);
    let mut out = vec![];
    for n in ctx.ns(&[1, 2, 3]) {
        for big_m in SMALL_M {
            out.push(ctx.cell(params(&[("n", n.to_string()), ("M", format!("{:?}", big_m))]), order, || {
                sampled(&mut g, pts, |g| {
                    let x = x_mono(g, n, 0);
                    let z = QSeries::constant(g.generic(9));
                    series_pair(case2_sides(big_m, &z, &x, order))
                })
            }));
        }
    }
    out
}

fn wz_finite(ctx: &Ctx) -> Vec<IdentityReport> {
    let mut g = ctx.rng();
    let order = ctx.order(10);
    let pts = ctx.points(1);
    let mut out = vec![];
    for n in ctx.ns(&[2]) {
        for big_m in [&[1][..], &[2], &[1, 1]] {
            out.push(ctx.cell(params(&[("n", n.to_string()), ("M", format!("{:?}", big_m))]), order, || {
                sampled(&mut g, pts, |g| {
                    let x = x_mono(g, n, 0);
                    let w = QSeries::constant(g.generic(9));
                    let z = QSeries::constant(g.generic(9));
                    series_pair(wz_finite_sides(big_m, &w, &z, &x, order))
                })
            }));
        }
    }
    out
}

fn summed_m(ctx: &Ctx) -> Vec<IdentityReport> {
    let mut g = ctx.rng();
    let order = ctx.order(10);
    let pts = ctx.points(1);
    let mut out = vec![];
    for n in ctx.ns(&[2]) {
        for m in ctx.ms(&[0, 1, 2]) {
            out.push(ctx.cell(params(&[("n", n as i64), ("m", m)]), order, || {
                sampled(&mut g, pts, |g| {
                    let x = x_mono(g, n, 1);
                    let w = QSeries::mono(g.generic(9), 1);
                    let z = QSeries::constant(g.generic(9));
                    series_pair(sum_m_sides(m, &w, &z, &x, order))
                })
            }));
        }
    }
    out
}

fn thm_main(ctx: &Ctx) -> Vec<IdentityReport> {
    let mut g = ctx.rng();
    let order = ctx.order(10);
    let pts = ctx.points(1);
    let neg_half = TParam::Mono(qi(-1), 1);
    let neg_one = TParam::Mono(qi(-1), 0);
    let cases = [
        (Variant::One, TParam::Inf, TParam::Inf),
        (Variant::One, TParam::Inf, neg_half),
        (Variant::One, TParam::Inf, neg_one.clone()),
        (Variant::One, TParam::Inf, TParam::Mono(qf(2, 3), 0)),
        (Variant::Two, TParam::Inf, TParam::Inf),
        (Variant::Two, TParam::Inf, neg_one),
    ];
    let mut out = vec![];
    for (variant, b, c) in &cases {
        for m in ctx.ms(&[0, 1]) {
            let n = if *variant == Variant::One { 2 } else { 1 };
            let p = params(&[("variant", format!("{:?}", variant)), ("m", m.to_string()), ("b", tparam(b)), ("c", tparam(c))]);
            out.push(ctx.cell(p, order, || {
                sampled(&mut g, pts, |g| {
                    let x = sample_point(g, n, 9);
                    series_pair(thm_main_sides(*variant, m, &x, b, c, order))
                })
            }));
        }
    }
    out
}

fn tparam(p: &TParam) -> String {
    match p {
        TParam::Inf => "inf".into(),
        TParam::Mono(c, e) => Mono::new(c.clone(), *e).to_string(),
    }
}

fn thm_main_finite(ctx: &Ctx) -> Vec<IdentityReport> {
    let mut g = ctx.rng();
    let order = ctx.order(10);
    let pts = ctx.points(1);
    let (b, c) = (TParam::Mono(qi(-1), 0), TParam::Mono(qi(-1), 1));
    ctx.ms(&[1])
        .into_iter()
        .map(|m| {
            let p = params(&[("variant", "One".to_string()), ("m", m.to_string()), ("b", tparam(&b)), ("c", tparam(&c))]);
            ctx.cell(p, order, || {
                sampled(&mut g, pts, |g| {
                    let x = sample_point(g, 1, 9);
                    series_pair(thm_main_sides(Variant::One, m, &x, &b, &c, order))
                })
            })
        })
        .collect()
}

fn d_twisted(ctx: &Ctx) -> Vec<IdentityReport> {
    let mut g = ctx.rng();
    let order = ctx.order(12);
    let pts = ctx.points(1);
    let mut out = vec![];
    for n in ctx.ns(&[2, 3]) {
        for m in ctx.ms(&[0, 1, 2]) {
            out.push(ctx.cell(params(&[("n", n as i64), ("m", m)]), order, || {
                (0..pts)
                    .map(|_| {
                        let x = XSpec::Point(sample_point(&mut g, n, 9));
                        let spec = CharSpec::new(Algebra::D2, 2 * m, Partition::empty(), n)?;
                        let l = char_lattice(&spec, &x, order)?;
                        let c = char_combinatorial(CombKind::DTwisted, 2 * m, &x, order)?;
                        Ok(FirstMismatch::laurent(&l, &c))
                    })
                    .collect()
            }));
        }
    }
    out
}

fn half_integer(ctx: &Ctx) -> Vec<IdentityReport> {
    let mut g = ctx.rng();
    let order = ctx.order(12);
    let pts = ctx.points(1);
    let mut out = vec![];
    for n in ctx.ns(&[2]) {
        for two_m in [1, 3] {
            for (alg, kind) in [(Algebra::A2EvenI, CombKind::A2All), (Algebra::D2, CombKind::DTwisted)] {
                let p = params(&[("n", n.to_string()), ("m", format!("{}/2", two_m)), ("algebra", format!("{:?}", alg))]);
                out.push(ctx.cell(p, order, || {
                    (0..pts)
                        .map(|_| {
                            let x = XSpec::Point(sample_point(&mut g, n, 9));
                            let spec = CharSpec::new(alg, two_m, Partition::empty(), n)?;
                            let l = char_lattice(&spec, &x, order)?;
                            let c = char_combinatorial(kind, two_m, &x, order)?;
                            Ok(FirstMismatch::laurent(&l, &c))
                        })
                        .collect()
                }));
            }
        }
    }
    out
}

fn level_one(ctx: &Ctx) -> Vec<IdentityReport> {
    let mut g = ctx.rng();
    let order = ctx.order(10);
    let pts = ctx.points(1);
    let mut out = vec![];
    for n in ctx.ns(&[2]) {
        for formal in [true, false] {
            let p = params(&[("n", n.to_string()), ("x", (if formal { "formal" } else { "point" }).to_string())]);
            out.push(ctx.cell(p, order, || {
                let xs: Vec<XSpec> =
                    if formal { vec![XSpec::Formal(n)] } else { (0..pts).map(|_| XSpec::Point(sample_point(&mut g, n, 9))).collect() };
                xs.iter()
                    .map(|x| {
                        let spec = CharSpec::new(Algebra::C1, 0, Partition::new(&[1]), n)?;
                        let l = char_lattice(&spec, x, order)?;
                        let c = level_one_combinatorial(x, order)?;
                        Ok(FirstMismatch::laurent(&l, &c))
                    })
                    .collect()
            }));
        }
    }
    out
}

fn random_spec(g: &mut impl RngCore, m: usize, n: usize) -> Result<NahmSpec> {
    NahmSpec::new(m, n, Mono::constant(g.generic(9)), Mono::constant(g.generic(9)), Mono::constant(g.generic(9)))
}

fn spec_grid(ctx: &Ctx, m: usize, ns: &[usize], order: i64, pts: usize) -> Vec<IdentityReport> {
    let mut g = ctx.rng();
    ctx.ns(ns)
        .into_iter()
        .map(|n| {
            ctx.cell(params(&[("m", m), ("n", n)]), order, || {
                sampled(&mut g, pts, |g| {
                    let spec = random_spec(g, m, n)?;
                    series_pair(spec_sides(&spec, order))
                })
            })
        })
        .collect()
}

fn thm_m1(ctx: &Ctx) -> Vec<IdentityReport> {
    spec_grid(ctx, 1, &[1, 2, 3], ctx.order(12), ctx.points(2))
}

fn spec_m2(ctx: &Ctx) -> Vec<IdentityReport> {
    let mut out = spec_grid(ctx, 2, &[2, 3], ctx.order(10), ctx.points(1));
    // u = 1, w = z = 0 at even rank is proved
    let order = ctx.order(12);
    for n in ctx.ns(&[2]).into_iter().filter(|n| n % 2 == 0) {
        out.push(ctx.cell_as(Standing::Proved, params(&[("m", "2"), ("n", &n.to_string()), ("u", "1"), ("w", "0"), ("z", "0")]), order, || {
            let one = Mono::constant(qi(1));
            let zero = Mono::constant(qi(0));
            vec![NahmSpec::new(2, n, one, zero.clone(), zero).and_then(|spec| {
                debug_assert!(spec_is_proved(&spec));
                series_pair(spec_sides(&spec, order))
            })]
        }));
    }
    out
}

fn f_symmetry(ctx: &Ctx) -> Vec<IdentityReport> {
    let mut g = ctx.rng();
    let order = ctx.order(12);
    let pts = ctx.points(1);
    let mut out = vec![];
    for m in ctx.ms(&[1, 2]) {
        for n in ctx.ns(&[1, 2]) {
            out.push(ctx.cell(params(&[("m", m), ("n", n as i64)]), order, || {
                sampled(&mut g, pts, |g| {
                    let spec = random_spec(g, m as usize, n)?;
                    Ok(FirstMismatch::series(&nahm_f(&spec, order)?, &nahm_f(&spec.swapped(), order)?))
                })
            }));
        }
    }
    out
}

fn root_lattice(ctx: &Ctx) -> Vec<IdentityReport> {
    let mut g = ctx.rng();
    let order = ctx.order(12);
    let pts = ctx.points(2);
    ctx.ns(&[1, 2, 3])
        .into_iter()
        .map(|n| {
            ctx.cell(params(&[("m", 1), ("n", n)]), order, || {
                sampled(&mut g, pts, |g| {
                    let spec = random_spec(g, 1, n)?;
                    let f = nahm_f(&spec, order)?;
                    let r = nahm_f_root_lattice(n, &spec.u, &spec.w, &spec.z, order)?;
                    Ok(FirstMismatch::series(&f, &r))
                })
            })
        })
        .collect()
}

fn andrews_gordon(ctx: &Ctx) -> Vec<IdentityReport> {
    let order = ctx.order(20);
    (2..=4usize)
        .map(|k| {
            ctx.cell(params(&[("k", k)]), order, || {
                let sum = andrews_gordon_sum(k, order);
                let prod = andrews_gordon_product(k, order);
                vec![sum.and_then(|s| Ok(FirstMismatch::series(&prod?, &s)))]
            })
        })
        .collect()
}

fn rr_desk(ctx: &Ctx) -> Vec<IdentityReport> {
    let order = ctx.order(30);
    let e = crate::eta::identity("BC-6c-RR").expect("registry entry");
    vec![ctx.cell(params(&[("n", 1), ("m", 1)]), order, || {
        let product = triple_product(2, 3, 5, 5, order)
            .and_then(|t| Ok((&t * &crate::qseries::poch_recip(&QSeries::t_pow(2), Extent::Infinite, order)?).truncate(order)));
        let product = match product {
            Ok(p) => p,
            Err(e) => return vec![Err(e)],
        };
        let sides: [Result<QSeries>; 3] = [
            crate::eta::lattice_side(e, 1, 1, order),
            crate::eta::hl_side(e, 1, 1, order),
            crate::eta::f_side(e, 1, 1, order).and_then(|f| f.ok_or_else(|| Error::Invalid("no F side".into()))),
        ];
        sides.into_iter().map(|s| s.map(|s| FirstMismatch::series(&product, &s))).collect()
    })]
}

fn eta_jacobi(ctx: &Ctx) -> Vec<IdentityReport> {
    let order = ctx.order(40);
    let e = crate::eta::identity("C1-FS").expect("registry entry");
    vec![ctx.cell(params(&[("n", 1), ("m", 0)]), order, || {
        vec![(|| {
            let (off, theta) = lattice_theta(e, 1, 0, order)?;
            let eta3 = eta_quotient(&[(qi(1), 3)], order)?;
            if off != eta3.offset {
                return Ok(FirstMismatch::value(&eta3.offset, &off));
            }
            Ok(FirstMismatch::series(&eta3.body, &theta))
        })()]
    })]
}

fn eta_cn_constant(ctx: &Ctx) -> Vec<IdentityReport> {
    let order = ctx.order(20);
    let e = crate::eta::identity("MD-C").expect("registry entry");
    ctx.ns(&[1, 2])
        .into_iter()
        .map(|n| {
            ctx.cell(params(&[("n", n)]), order, || {
                let c0 = Ok(FirstMismatch::value(&cn_constant(n), &Chi::B.eval(&Rho::C.vector(n))));
                let power = (|| {
                    let (_, theta) = lattice_theta(e, n, 0, order)?;
                    let eta = eta_quotient(&[(qi(1), (2 * n * n + n) as i64)], order)?;
                    Ok(FirstMismatch::series(&eta.body, &theta))
                })();
                vec![c0, power]
            })
        })
        .collect()
}

fn eta_identity(ctx: &Ctx) -> Vec<IdentityReport> {
    let e = crate::eta::identity(ctx.id.trim_start_matches("eta:")).expect("catalog id comes from the registry");
    let mut out = vec![];
    for n in ctx.ns(&[1, 2]) {
        for m in ctx.ms(&[0, 1, 2]) {
            let order = ctx.order(if m == 0 { 20 } else { 12 });
            let start = Instant::now();
            let mut reps = verify_eta(e, n, m, order);
            for r in &mut reps {
                r.id = format!("eta:{}", r.id);
                if ctx.cfg.timed {
                    r.runtime_ms = start.elapsed().as_millis() as u64;
                }
            }
            out.extend(reps);
        }
    }
    out
}
