use clap::{Args, Parser, Subcommand, ValueEnum};
use salg_cli::golden::{self, GoldenFile};
use salg_cli::instance::{pick_positive, Instance, EXAMPLES, NAMED};
use salg_cli::report::{render, summary_lines, Report};
use salg_cli::suites::{applies, full_plan, is_suite, run_plan, SUITES};
use salg_core::algebra::describe_vec;
use salg_core::algebra::json::{from_json, FieldSpec};
use salg_core::azumaya::{azumaya_check, enumerate_s_structures};
use std::path::PathBuf;
use std::process::ExitCode;

const USAGE: u8 = 2;
const FAILED: u8 = 1;

#[derive(Parser)]
#[command(name = "salg", version, about = "Exact verification of S-algebras, Azumaya invariants and splitting categories")]
struct Cli {
    /// Worker threads for independent checks.
    #[arg(long, global = true, env = "SALG_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and emit a report.
    Verify(VerifyArgs),
    /// Print a summary of an algebra file.
    Inspect { file: PathBuf },
    /// Regenerate or check pinned constants.
    Golden {
        action: GoldenAction,
        #[arg(long, default_value = "golden/constants.json")]
        golden: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// List suite names.
    ListSuites,
}

#[derive(Clone, Copy, ValueEnum)]
enum GoldenAction {
    Regen,
    Check,
}

#[derive(Args)]
struct VerifyArgs {
    suite: Option<String>,
    #[arg(long = "suite", conflicts_with = "suite")]
    suite_flag: Option<String>,
    /// Named algebra: quaternion, m2, qxq.
    #[arg(long, conflicts_with_all = ["q", "example", "input"])]
    alg: Option<String>,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long, default_value_t = 2, requires = "q")]
    d: usize,
    #[arg(long, default_value_t = 1, requires = "q")]
    psi_power: u32,
    /// η example: split, clifford-super, klein, clifford-rational.
    #[arg(long, conflicts_with_all = ["q", "input"])]
    example: Option<String>,
    /// Algebra file in the JSON format.
    #[arg(long, conflicts_with = "q")]
    input: Option<PathBuf>,
    /// Field as JSON, e.g. {"kind":"cyclotomic","N":3}.
    #[arg(long)]
    field: Option<String>,
    /// Write the JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Compare derived constants with a golden file.
    #[arg(long)]
    golden: Option<PathBuf>,
    /// Record wall-clock time per check; reports are then no longer reproducible.
    #[arg(long)]
    timing: bool,
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(USAGE)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            return usage(e);
        }
    }
    match cli.command {
        Command::Verify(a) => verify(a),
        Command::Inspect { file } => inspect(&file),
        Command::Golden { action, golden, seed } => golden_cmd(action, &golden, seed),
        Command::ListSuites => {
            for s in SUITES {
                println!("{s}");
            }
            ExitCode::SUCCESS
        }
    }
}

fn instance(a: &VerifyArgs) -> Result<Instance, String> {
    let field = match &a.field {
        Some(f) => Some(serde_json::from_str::<FieldSpec>(f).map_err(|e| format!("bad --field: {e}"))?),
        None => None,
    };
    if let Some(q) = a.q {
        if field.is_some() {
            return Err("--field does not apply to twisted algebras (their field is ℚ(ζ_p))".into());
        }
        return Ok(Instance::Twisted { q, d: a.d, psi_power: a.psi_power });
    }
    if let Some(name) = &a.alg {
        if !NAMED.contains(&name.as_str()) {
            return Err(format!("unknown algebra {name:?}; expected one of {}", NAMED.join(", ")));
        }
        return Ok(Instance::Named { name: name.clone(), field });
    }
    if let Some(name) = &a.example {
        if !EXAMPLES.contains(&name.as_str()) {
            return Err(format!("unknown example {name:?}; expected one of {}", EXAMPLES.join(", ")));
        }
        return Ok(Instance::Example { name: name.clone(), field });
    }
    if let Some(path) = &a.input {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        let algebra = from_json(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        return Ok(Instance::Input { path: path.display().to_string(), algebra });
    }
    Err("no instance given; use --alg, --q, --example or --input".into())
}

fn verify(a: VerifyArgs) -> ExitCode {
    let Some(suite) = a.suite.clone().or(a.suite_flag.clone()) else {
        return usage("no suite given");
    };
    if !is_suite(&suite) {
        return usage(format!("unknown suite {suite:?}; see `salg list-suites`"));
    }
    let plan = if suite == "all" {
        full_plan()
    } else {
        let inst = match instance(&a) {
            Ok(i) => i,
            Err(e) => return usage(e),
        };
        if !applies(&suite, &inst) {
            return usage(format!("suite {suite} does not apply to {}", inst.label()));
        }
        let name: &'static str = SUITES.iter().find(|s| **s == suite).expect("listed");
        vec![(name, inst)]
    };
    let mut reports = run_plan(&plan, a.seed, a.timing);
    let mut ok = reports.iter().all(Report::passed);
    for line in summary_lines(&reports) {
        println!("{line}");
    }
    if let Some(path) = &a.golden {
        let pinned = match golden::load(path) {
            Ok(g) => g,
            Err(e) => return usage(e),
        };
        let relevant: Vec<Report> = reports.iter().filter(|r| pinned.contains_key(&r.check)).cloned().collect();
        let pinned: GoldenFile = pinned.into_iter().filter(|(id, _)| relevant.iter().any(|r| &r.check == id)).collect();
        for p in golden::compare(&pinned, &relevant) {
            println!("GOLDEN {p}");
            ok = false;
        }
    }
    let json = render(&mut reports);
    match &a.report {
        Some(path) => {
            if let Err(e) = std::fs::write(path, json) {
                return usage(format!("cannot write {}: {e}", path.display()));
            }
        }
        None => print!("{json}"),
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(FAILED)
    }
}

fn inspect(file: &PathBuf) -> ExitCode {
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => return usage(format!("cannot read {}: {e}", file.display())),
    };
    let a = match from_json(&text) {
        Ok(a) => a,
        Err(e) => return usage(format!("{}: {e}", file.display())),
    };
    let ss = enumerate_s_structures(&a);
    let s = ss.as_ref().ok().cloned().map(pick_positive).and_then(Result::ok);
    let degree = s.as_ref().map_or("none".to_string(), |s| s.degree().to_string());
    let azumaya = match azumaya_check(&a, s.as_ref()) {
        Ok(r) if r.bijective => "yes".to_string(),
        Ok(r) => format!("no (rank {} of {})", r.rank, r.dim * r.dim),
        Err(e) => format!("undetermined ({e})"),
    };
    println!("dim {}, degree {degree}, Azumaya: {azumaya}", a.dim());
    println!("name: {}", a.name());
    println!("field: {}", a.field().name());
    println!("unit: {}", describe_vec(&a, a.unit()));
    match &ss {
        Ok(v) => {
            let degs: Vec<String> = v.iter().map(|s| s.degree().to_string()).collect();
            println!("S-structures: {} (degrees {})", v.len(), degs.join(", "));
        }
        Err(e) => println!("S-structures: none ({e})"),
    }
    ExitCode::SUCCESS
}

fn golden_cmd(action: GoldenAction, path: &PathBuf, seed: u64) -> ExitCode {
    match action {
        GoldenAction::Regen => {
            let g = match golden::regenerate(seed) {
                Ok(g) => g,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(FAILED);
                }
            };
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                if let Err(e) = std::fs::create_dir_all(dir) {
                    return usage(format!("cannot create {}: {e}", dir.display()));
                }
            }
            if let Err(e) = std::fs::write(path, golden::render(&g)) {
                return usage(format!("cannot write {}: {e}", path.display()));
            }
            println!("pinned {} checks in {}", g.len(), path.display());
            ExitCode::SUCCESS
        }
        GoldenAction::Check => {
            let pinned: GoldenFile = match golden::load(path) {
                Ok(g) => g,
                Err(e) => return usage(e),
            };
            let problems = golden::check(&pinned, seed);
            if problems.is_empty() {
                println!("golden check passed: {} checks", pinned.len());
                ExitCode::SUCCESS
            } else {
                for p in &problems {
                    println!("{p}");
                }
                ExitCode::from(FAILED)
            }
        }
    }
}
