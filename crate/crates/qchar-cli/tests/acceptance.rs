//! Acceptance criteria 1-11, one PASS/FAIL line each. Criterion 10 covers
//! open conjectures and does not gate the exit status.

use std::process::{Command, ExitCode};

use qchar::report::{IdentityReport, Status};
use qchar::suite::{self, Config, Suite};

struct Criterion {
    number: u32,
    gating: bool,
    what: &'static str,
    ok: bool,
    detail: String,
}

fn run_ids(ids: &[&str], cfg: &Config) -> Vec<IdentityReport> {
    let checks: Vec<_> = suite::catalog().into_iter().filter(|c| ids.contains(&c.id.as_str())).collect();
    assert_eq!(checks.len(), ids.len(), "catalog is missing one of {:?}", ids);
    suite::run(&checks, cfg).into_iter().map(|o| o.report).collect()
}

fn param<'a>(r: &'a IdentityReport, k: &str) -> &'a str {
    r.params.get(k).map(String::as_str).unwrap_or("")
}

/// Every report passes (conjectural passes allowed when `conj`), and
/// `extra` holds for each.
fn judge(reports: &[IdentityReport], conj: bool, extra: impl Fn(&IdentityReport) -> Result<(), String>) -> (bool, String) {
    if reports.is_empty() {
        return (false, "no reports".into());
    }
    for r in reports {
        let good = r.status == Status::Pass || (conj && r.status == Status::ConjecturalPass);
        if !good {
            return (false, format!("{} {:?}: {}", r.id, r.params, r.to_text()));
        }
        if let Err(e) = extra(r) {
            return (false, format!("{} {:?}: {}", r.id, r.params, e));
        }
    }
    (true, format!("{} reports", reports.len()))
}

fn at_least(what: &str, got: i64, want: i64) -> Result<(), String> {
    if got >= want {
        Ok(())
    } else {
        Err(format!("{} = {} < {}", what, got, want))
    }
}

fn determinism() -> (bool, String) {
    let bin = env!("CARGO_BIN_EXE_qchar");
    let ids = ["andrews", "bailey-inversion", "char-C1", "poch-negative", "wz-finite", "thm-m1"];
    let run = |jobs: &str| -> Result<Vec<u8>, String> {
        let mut out = vec![];
        for id in ids {
            let o = Command::new(bin)
                .args(["verify", "--id", id, "--seed", "7", "--format", "json", "--jobs", jobs])
                .output()
                .map_err(|e| e.to_string())?;
            if !o.status.success() {
                return Err(format!("{} exited with {:?}", id, o.status.code()));
            }
            out.extend(o.stdout);
        }
        Ok(out)
    };
    match (run("1"), run("2")) {
        (Ok(a), Ok(b)) if a == b && !a.is_empty() => {
            for line in String::from_utf8_lossy(&a).lines() {
                if serde_json::from_str::<IdentityReport>(line).is_err() {
                    return (false, format!("not a report line: {}", line));
                }
            }
            (true, format!("{} identical bytes", a.len()))
        }
        (Ok(_), Ok(_)) => (false, "outputs differ".into()),
        (Err(e), _) | (_, Err(e)) => (false, e),
    }
}

fn main() -> ExitCode {
    let cfg = Config { seed: 20_240_601, ..Config::default() };
    let mut crits = vec![];
    let mut push = |number, gating, what, (ok, detail): (bool, String)| crits.push(Criterion { number, gating, what, ok, detail });

    let r = run_ids(&["qprime-routes"], &cfg);
    let weights: Vec<(String, String)> = r.iter().map(|r| (param(r, "n").to_string(), param(r, "weight").to_string())).collect();
    let covered = ["2", "3"].iter().all(|n| (0..=8).all(|d| weights.contains(&(n.to_string(), d.to_string()))));
    let (ok, detail) = judge(&r, false, |_| Ok(()));
    push(1, true, "four routes to Q' agree, |mu| <= 8, n in {2,3}", (ok && covered, detail));

    let grid = |r: &IdentityReport| {
        at_least("order", r.order, 16)?;
        if param(r, "n") == "2" {
            at_least("points", r.sample_points as i64, 3)?;
        }
        Ok(())
    };
    push(2, true, "C1 and A2even-I lattice = combinatorial", judge(&run_ids(&["char-C1", "char-A2even-I"], &cfg), false, grid));
    push(3, true, "A2even-II lattice = shifted sum", judge(&run_ids(&["char-A2even-II"], &cfg), false, grid));

    let r = run_ids(&["andrews", "jackson", "watson"], &cfg);
    push(4, true, "Andrews transformation with Jackson and Watson reductions", judge(&r, false, |r| at_least("points", r.sample_points as i64, 3)));

    let r = run_ids(&["bailey-inversion"], &cfg);
    push(5, true, "Bailey inversion roundtrip on boxes inside (2,2)", judge(&r, false, |r| at_least("points", r.sample_points as i64, 5)));

    let r = run_ids(&["rr-desk"], &cfg);
    push(6, true, "Rogers-Ramanujan desk check at order 30", judge(&r, false, |r| at_least("order", r.order, 30)));

    let eta_ids: Vec<String> = suite::catalog().into_iter().map(|c| c.id).filter(|id| id.starts_with("eta")).collect();
    let eta_refs: Vec<&str> = eta_ids.iter().map(String::as_str).collect();
    let m0 = Config { m: Some(0), ..cfg.clone() };
    let r = run_ids(&eta_refs, &m0);
    push(7, true, "eta identities at m = 0, Jacobi eta^3, C_n constant", judge(&r, false, |r| at_least("order", r.order, 20)));

    let r = run_ids(&["limit-lemma", "poch-negative"], &cfg);
    push(8, true, "limit lemma and negative-index Pochhammer ratio", judge(&r, false, |r| at_least("points", r.sample_points as i64, 3)));

    let r = run_ids(&["prop-w0", "thm-m1", "milne-lemma", "q-binomial"], &cfg);
    push(9, true, "w = 0 proposition, m = 1 theorem, Milne lemma, q-binomial", judge(&r, false, |_| Ok(())));

    let conj = suite::select(Suite::Conjectural, None).unwrap();
    let wanted = ["wz-finite", "f-symmetry", "spec-m2", "d-twisted", "half-integer", "level-one"];
    let picked: Vec<&str> = wanted.iter().copied().filter(|id| conj.iter().any(|c| c.id == *id)).collect();
    let r = run_ids(&picked, &cfg);
    let (ok, detail) = judge(&r, true, |r| at_least("order", r.order, 10));
    push(10, false, "conjectures hold to order >= 10", (ok && picked.len() == wanted.len(), detail));

    push(11, true, "byte-identical JSON across runs and thread counts", determinism());

    let mut gate_failed = false;
    for c in &crits {
        let tag = if c.ok { "PASS" } else { "FAIL" };
        let note = if c.gating { "" } else { " (non-gating)" };
        println!("criterion {:>2}: {} {}{} [{}]", c.number, tag, c.what, note, c.detail);
        gate_failed |= c.gating && !c.ok;
    }
    if gate_failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
