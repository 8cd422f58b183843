use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qchar::characters::{char_combinatorial, char_lattice, sample_point, Algebra, CharSpec, CombKind, XSpec};
use qchar::eta::{self, REGISTRY};
use qchar::partitions::Partition;
use qchar::rational::rng;
use qchar::report::IdentityReport;
use qchar::rr::{nahm_f, Mono, NahmSpec};
use qchar::suite::{self, Config, Suite};
use qchar::symfunc::schur::format_schur;
use qchar::symfunc::{qprime, schur_expand, QMethod};
use qchar::Error;

#[derive(Parser)]
#[command(name = "qchar", version, about = "Exact q-series verification of Hall-Littlewood and affine character identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification checks and print one report per line.
    Verify(VerifyArgs),
    /// Print a single computed object.
    Compute {
        #[command(subcommand)]
        object: Object,
    },
    /// List the check catalog and the eta identity registry.
    ListIdentities,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Clone, Default)]
struct Common {
    /// Truncation order in t = q^{1/2}.
    #[arg(long)]
    order: Option<i64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<i64>,
    /// Random sample points per grid cell.
    #[arg(long)]
    points: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Fill runtime_ms with wall time.
    #[arg(long)]
    timed: bool,
    /// key=value file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
#[command(args_conflicts_with_subcommands = true)]
struct VerifyArgs {
    #[command(subcommand)]
    target: Option<VerifyTarget>,
    #[arg(long)]
    suite: Option<String>,
    /// A single check id (see list-identities).
    #[arg(long)]
    id: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Subcommand)]
enum VerifyTarget {
    /// Verify eta identities directly at one (n, m).
    Eta {
        /// Registry id or `all`.
        #[arg(long)]
        id: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum Object {
    /// Q'_mu(x; q) in Schur form.
    Qprime {
        #[arg(long)]
        mu: Partition,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "charge")]
        method: QMethod,
    },
    /// F_{m,n}(u, w, z) through t^order.
    #[command(name = "F")]
    F {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        u: Mono,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        w: Mono,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        z: Mono,
        #[arg(long, default_value_t = 10)]
        order: i64,
    },
    /// A lattice character, or its Hall-Littlewood sum.
    Character {
        #[arg(long)]
        algebra: Algebra,
        /// The c_0 label of the highest weight (c_n for A2even-II).
        #[arg(long, default_value_t = 0)]
        c: i64,
        #[arg(long, default_value = "()")]
        lambda: Partition,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 8)]
        order: i64,
        /// `formal` or `random`.
        #[arg(long, default_value = "formal")]
        x: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "lattice")]
        side: CharSide,
    },
    /// One side of an eta identity.
    EtaSide {
        #[arg(long)]
        id: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: i64,
        #[arg(long, default_value_t = 12)]
        order: i64,
        #[arg(long, value_enum, default_value = "lattice")]
        side: EtaSide,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CharSide {
    Lattice,
    Sum,
}

#[derive(Clone, Copy, ValueEnum)]
enum EtaSide {
    Lattice,
    Hl,
    #[value(name = "F")]
    F,
}

/// Usage errors exit with 2, failed proved identities with 1.
enum Failure {
    Usage(String),
    Proved,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Verify(v) => verify(v),
        Command::Compute { object } => compute(object),
        Command::ListIdentities => {
            list();
            Ok(())
        }
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Proved) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}

/// Settings after merging the config file under the flags.
struct Settings {
    cfg: Config,
    format: Format,
    jobs: Option<usize>,
    suite: Option<String>,
}

fn read_config(path: &PathBuf) -> Result<BTreeMap<String, String>, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {}", path.display(), e)))?;
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("{}:{}: expected key=value", path.display(), i + 1)))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

fn parse_val<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, Failure> {
    v.parse().map_err(|_| Failure::Usage(format!("bad value for {}: {}", key, v)))
}

fn settings(c: &Common, suite: Option<String>) -> Result<Settings, Failure> {
    let mut s = Settings { cfg: Config::default(), format: Format::Json, jobs: None, suite: None };
    if let Some(path) = &c.config {
        for (k, v) in read_config(path)? {
            match k.as_str() {
                "order" => s.cfg.order = Some(parse_val(&k, &v)?),
                "n" => s.cfg.n = Some(parse_val(&k, &v)?),
                "m" => s.cfg.m = Some(parse_val(&k, &v)?),
                "points" => s.cfg.points = Some(parse_val(&k, &v)?),
                "seed" => s.cfg.seed = parse_val(&k, &v)?,
                "jobs" => s.jobs = Some(parse_val(&k, &v)?),
                "timed" => s.cfg.timed = parse_val(&k, &v)?,
                "suite" => s.suite = Some(v),
                "format" => s.format = Format::from_str(&v, false).map_err(Failure::Usage)?,
                _ => return Err(Failure::Usage(format!("unknown config key {}", k))),
            }
        }
    }
    if c.order.is_some() {
        s.cfg.order = c.order;
    }
    if c.n.is_some() {
        s.cfg.n = c.n;
    }
    if c.m.is_some() {
        s.cfg.m = c.m;
    }
    if c.points.is_some() {
        s.cfg.points = c.points;
    }
    if let Some(seed) = c.seed {
        s.cfg.seed = seed;
    }
    if let Some(f) = c.format {
        s.format = f;
    }
    if c.jobs.is_some() {
        s.jobs = c.jobs;
    }
    s.cfg.timed |= c.timed;
    if suite.is_some() {
        s.suite = suite;
    }
    if s.cfg.order.is_some_and(|o| o < 1) || s.cfg.points == Some(0) {
        return Err(Failure::Usage("order and points must be at least 1".into()));
    }
    Ok(s)
}

fn init_pool(jobs: Option<usize>) -> Result<(), Failure> {
    if let Some(j) = jobs {
        rayon::ThreadPoolBuilder::new().num_threads(j).build_global().map_err(|e| Failure::Usage(e.to_string()))?;
    }
    Ok(())
}

fn emit<'a>(format: Format, reports: impl IntoIterator<Item = &'a IdentityReport>) {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for r in reports {
        let line = match format {
            Format::Json => r.to_json(),
            Format::Text => r.to_text(),
        };
        // a closed pipe is not an error worth reporting
        if writeln!(out, "{}", line).is_err() {
            return;
        }
    }
}

fn verify(v: VerifyArgs) -> Result<(), Failure> {
    if let Some(VerifyTarget::Eta { id, common }) = v.target {
        return verify_eta(&id, &common);
    }
    let s = settings(&v.common, v.suite)?;
    init_pool(s.jobs)?;
    let which: Suite = s.suite.as_deref().unwrap_or("all").parse()?;
    let checks = suite::select(which, v.id.as_deref())?;
    let outcomes = suite::run(&checks, &s.cfg);
    emit(s.format, outcomes.iter().map(|o| &o.report));
    if outcomes.iter().any(|o| o.gates()) {
        return Err(Failure::Proved);
    }
    Ok(())
}

fn verify_eta(id: &str, common: &Common) -> Result<(), Failure> {
    let s = settings(common, None)?;
    init_pool(s.jobs)?;
    let ids: Vec<&eta::EtaIdentity> = if id == "all" { REGISTRY.iter().collect() } else { vec![eta::identity(id)?] };
    let n = s.cfg.n.unwrap_or(1);
    let m = s.cfg.m.unwrap_or(0);
    let order = s.cfg.order.unwrap_or(20);
    let mut reports: Vec<IdentityReport> = ids.iter().flat_map(|e| eta::verify_eta(e, n, m, order)).collect();
    reports.sort_by(|a, b| a.id.cmp(&b.id));
    emit(s.format, &reports);
    if reports.iter().any(|r| r.status == qchar::report::Status::Fail) {
        return Err(Failure::Proved);
    }
    Ok(())
}

fn compute(object: Object) -> Result<(), Failure> {
    let text = match object {
        Object::Qprime { mu, n, method } => format_schur(&schur_expand(&qprime(&mu, n, method)?)?),
        Object::F { m, n, u, w, z, order } => nahm_f(&NahmSpec::new(m, n, u, w, z)?, order)?.to_string(),
        Object::Character { algebra, c, lambda, n, order, x, seed, side } => {
            let spec = CharSpec::new(algebra, c, lambda.clone(), n)?;
            let x = match x.as_str() {
                "formal" => XSpec::Formal(n),
                "random" => XSpec::Point(sample_point(&mut rng(seed), n, 9)),
                _ => return Err(Failure::Usage(format!("--x must be formal or random, got {}", x))),
            };
            match side {
                CharSide::Lattice => char_lattice(&spec, &x, order)?.to_string(),
                CharSide::Sum => {
                    if !lambda.is_empty() {
                        return Err(Failure::Usage("the Hall-Littlewood sum needs lambda = ()".into()));
                    }
                    let (kind, two_m) = match algebra {
                        Algebra::C1 => (CombKind::CnEven, 2 * c),
                        Algebra::A2EvenI => (CombKind::A2All, c),
                        Algebra::A2EvenII => (CombKind::A2Shifted, 2 * c),
                        Algebra::D2 => (CombKind::DTwisted, c),
                    };
                    char_combinatorial(kind, two_m, &x, order)?.to_string()
                }
            }
        }
        Object::EtaSide { id, n, m, order, side } => {
            let e = eta::identity(&id)?;
            match side {
                EtaSide::Lattice => eta::lattice_side(e, n, m, order)?.to_string(),
                EtaSide::Hl => eta::hl_side(e, n, m, order)?.to_string(),
                EtaSide::F => eta::f_side(e, n, m, order)?
                    .ok_or_else(|| Failure::Usage(format!("{} has no F side at m = {}", id, m)))?
                    .to_string(),
            }
        }
    };
    println!("{}", text);
    Ok(())
}

fn list() {
    for c in suite::catalog() {
        let standing = serde_label(c.standing);
        println!("{:<18} {:<12} {:<11} {}", c.id, standing, c.family, c.about);
    }
    for e in REGISTRY {
        println!("{:<18} {:<12} {:<11} lattice and F sides as registered", e.id, e.class.to_string(), "eta-direct");
    }
}

fn serde_label(s: qchar::report::Standing) -> &'static str {
    match s {
        qchar::report::Standing::Proved => "proved",
        qchar::report::Standing::Conjectural => "conjectural",
    }
}
