//! `cnormal`: checks, decompositions, weighted shifts, verification suites
//! and instance generation for conjugate-normal matrices.

mod scalar;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cnormal::antilinear::{Compose, Conjugation};
use cnormal::cnormal::{
    cartesian_decompose, cjp_factor, cjp_synthesize, is_c_normal_battery, shift_criterion, skew_structure,
    weighted_shift,
};
use cnormal::douglas::{antilinear_polar, cnormal_polar, douglas_solve};
use cnormal::json::{read_matrix_file, to_antilinear, to_conjugation, Bundle, MapKind, MatrixJson};
use cnormal::random::{cjp_instance, normal_anticommuting, seeded, CjpOptions};
use cnormal::verify::{run_suite, RunConfig, Suite};
use cnormal::{CMatrix, Error, Tolerance};
use num_complex::Complex64;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "cnormal", version, about = "Conjugate-normal matrix toolkit")]
struct Cli {
    /// Relative tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol_rel: f64,
    /// Absolute tolerance.
    #[arg(long, global = true, default_value_t = 1e-12)]
    tol_abs: f64,
    /// Seed for `gen` and `verify`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Directory receiving `report.json` and one file per emitted matrix.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print the JSON report on stdout instead of a summary.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the ten-condition C-normality battery on T with conjugation C.
    Check { t: PathBuf, c: PathBuf },
    /// Factor a matrix.
    Decompose {
        #[command(subcommand)]
        kind: Decompose,
    },
    /// Build a weighted shift and compare the modulus criterion with the battery.
    Shift {
        /// Comma-separated weights such as `1,0+1i,-2.5i`.
        #[arg(long, conflicts_with = "file", allow_hyphen_values = true)]
        weights: Option<String>,
        /// JSON array of `[re, im]` pairs.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Run a seeded verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 2)]
        dim_min: usize,
        #[arg(long, default_value_t = 8)]
        dim_max: usize,
    },
    /// Generate a random instance.
    Gen {
        kind: GenKind,
        #[arg(long, default_value_t = 4)]
        dim: usize,
    },
}

#[derive(Subcommand)]
enum Decompose {
    /// T = A + iB with A, B C-symmetric.
    Cartesian { t: PathBuf, c: PathBuf },
    /// A = J∘|A| for an anti-linear A.
    Polar { a: PathBuf },
    /// T = C∘J∘|T| for a C-normal T.
    CnormalPolar {
        t: PathBuf,
        c: PathBuf,
        /// Extend J to a full anti-unitary.
        #[arg(long)]
        extend: bool,
    },
    /// Block structure of a normal T with C∘T∘C = −T.
    SkewStructure { t: PathBuf, c: PathBuf },
    /// T = C∘J∘P with J anti-unitary commuting with P ⪰ 0.
    Cjp { t: PathBuf, c: PathBuf },
    /// Minimal-norm C with A = B·C.
    Douglas { a: PathBuf, b: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Conjugation,
    Cnormal,
    NormalAnticommuting,
    CommutingJp,
}

enum Failure {
    /// Bad files, flags or shapes: exit 2.
    Input(String),
    /// The operation itself failed: exit 1.
    Op(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Op(e)
    }
}

fn input<T>(r: cnormal::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Input(e.to_string()))
}

/// What a command produced: a JSON report, matrices to write, a summary
/// line and whether it passed.
struct Outcome {
    report: serde_json::Value,
    matrices: Vec<MatrixJson>,
    summary: String,
    passed: bool,
}

impl Outcome {
    fn new(report: impl Serialize, matrices: Vec<MatrixJson>, summary: String, passed: bool) -> Self {
        let report = serde_json::to_value(report).expect("reports serialize");
        Self { report, matrices, summary, passed }
    }

    fn from_bundle(bundle: Bundle, label: &str) -> Self {
        let residuals: Vec<_> = bundle.residuals.iter().map(|(k, v)| format!("{k} {v:.2e}")).collect();
        let summary = format!("{label}: {} ({})", verdict(bundle.passed), residuals.join(", "));
        let matrices = bundle.factors.clone();
        let passed = bundle.passed;
        Self::new(bundle, matrices, summary, passed)
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

fn load_matrix(path: &Path) -> Result<CMatrix, Failure> {
    input(read_matrix_file(path).and_then(|m| m.to_matrix()))
}

fn load_pair(t: &Path, c: &Path, tol: &Tolerance) -> Result<(CMatrix, Conjugation), Failure> {
    let tm = load_matrix(t)?;
    let conj = input(read_matrix_file(c).and_then(|m| to_conjugation(&m, tol)))?;
    if !tm.is_square() || tm.nrows() != conj.dim() {
        return Err(Failure::Input(format!(
            "T is {}x{} but C is {}x{}",
            tm.nrows(),
            tm.ncols(),
            conj.dim(),
            conj.dim()
        )));
    }
    Ok((tm, conj))
}

fn linear(m: &CMatrix, name: &str) -> MatrixJson {
    MatrixJson::from_matrix(m).with_kind(MapKind::Linear).named(name)
}

fn check(t: &Path, c: &Path, tol: &Tolerance) -> Result<Outcome, Failure> {
    let (tm, conj) = load_pair(t, c, tol)?;
    let report = is_c_normal_battery(&tm, &conj, tol)?;
    let summary = format!(
        "C-normal: {} (conditions {}, C·T*T vs TT*·C residual {:.2e})",
        report.verdict,
        if report.coherent() { "agree" } else { "disagree" },
        report.residuals[0]
    );
    let passed = report.verdict;
    Ok(Outcome::new(report, Vec::new(), summary, passed))
}

fn decompose(kind: &Decompose, tol: &Tolerance) -> Result<Outcome, Failure> {
    let bundle = match kind {
        Decompose::Cartesian { t, c } => {
            let (tm, conj) = load_pair(t, c, tol)?;
            let pair = cartesian_decompose(&tm, &conj)?;
            let rec = (pair.recombine() - &tm).norm();
            let sym_a = (conj.sandwich(&pair.a.adjoint()) - &pair.a).norm();
            let sym_b = (conj.sandwich(&pair.b.adjoint()) - &pair.b).norm();
            let passed = rec <= tol.bound(tm.norm())
                && sym_a <= tol.bound(pair.a.norm())
                && sym_b <= tol.bound(pair.b.norm());
            Bundle::new(
                vec![linear(&pair.a, "A"), linear(&pair.b, "B")],
                [("reconstruction", rec), ("a_c_symmetric", sym_a), ("b_c_symmetric", sym_b)],
                passed,
            )
        }
        Decompose::Polar { a } => {
            let map = input(read_matrix_file(a).and_then(|m| to_antilinear(&m)))?;
            antilinear_polar(&map, tol)?.to_bundle(&map, tol)?
        }
        Decompose::CnormalPolar { t, c, extend } => {
            let (tm, conj) = load_pair(t, c, tol)?;
            cnormal_polar(&tm, &conj, tol, *extend)?.to_bundle(&tm, &conj, tol)
        }
        Decompose::SkewStructure { t, c } => {
            let (tm, conj) = load_pair(t, c, tol)?;
            let s = skew_structure(&tm, &conj, tol)?;
            Bundle::new(
                vec![
                    linear(&s.unitary, "W"),
                    linear(&s.block_plus, "T1"),
                    linear(&s.block_minus, "T2"),
                    linear(&s.block_imag, "T3"),
                ],
                [
                    ("reconstruction", s.reconstruction.residual),
                    ("swap", s.swap.residual),
                    ("hermitian", s.hermitian.residual),
                ],
                s.passed(),
            )
        }
        Decompose::Cjp { t, c } => {
            let (tm, conj) = load_pair(t, c, tol)?;
            let (j, p) = cjp_factor(&tm, &conj, tol)?;
            let rec = (cjp_synthesize(&conj, &j, &p, tol)? - &tm).norm();
            Bundle::new(
                vec![j.to_json().named("J"), linear(&p, "P")],
                [("reconstruction", rec)],
                rec <= tol.bound(tm.norm()),
            )
        }
        Decompose::Douglas { a, b } => {
            let (am, bm) = (load_matrix(a)?, load_matrix(b)?);
            if am.nrows() != bm.nrows() {
                return Err(Failure::Input(format!("A has {} rows but B has {}", am.nrows(), bm.nrows())));
            }
            let sol = douglas_solve(&am, &bm, tol)?;
            let r = sol.residuals(&am, &bm, tol)?;
            let passed = r.reconstruction <= tol.bound(am.norm())
                && r.range <= tol.bound(sol.factor.norm())
                && r.kernel <= tol.bound((am.ncols() as f64).sqrt())
                && r.norm <= tol.bound(1.0);
            Bundle::new(
                vec![linear(&sol.factor, "C")],
                [
                    ("reconstruction", r.reconstruction),
                    ("kernel", r.kernel),
                    ("range", r.range),
                    ("norm", r.norm),
                    ("norm_sq", sol.norm_sq),
                    ("k_min", sol.k_min),
                ],
                passed,
            )
        }
    };
    Ok(Outcome::from_bundle(bundle, "decomposition"))
}

#[derive(Serialize)]
struct ShiftReport {
    weights: Vec<[f64; 2]>,
    criterion: cnormal::cnormal::ShiftCriterion,
    battery_verdict: bool,
    agree: bool,
}

fn read_weights(weights: Option<&str>, file: Option<&Path>) -> Result<Vec<Complex64>, Failure> {
    let w = match (weights, file) {
        (Some(text), _) => scalar::parse_list(text).map_err(Failure::Input)?,
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
            let pairs: Vec<[f64; 2]> = serde_json::from_str(&text)
                .map_err(|e| Failure::Input(format!("malformed weights file: {e}")))?;
            if pairs.iter().flatten().any(|x| !x.is_finite()) {
                return Err(Failure::Input("non-finite weight".into()));
            }
            pairs.into_iter().map(|[re, im]| Complex64::new(re, im)).collect()
        }
        (None, None) => return Err(Failure::Input("give --weights or --file".into())),
    };
    if w.is_empty() {
        return Err(Failure::Input("at least one weight is required".into()));
    }
    Ok(w)
}

fn shift(weights: Option<&str>, file: Option<&Path>, tol: &Tolerance) -> Result<Outcome, Failure> {
    let w = read_weights(weights, file)?;
    let t = input(weighted_shift(&w))?;
    let crit = shift_criterion(&w, tol);
    let battery = is_c_normal_battery(&t, &Conjugation::flip(w.len() + 1), tol)?;
    let agree = crit.verdict == battery.verdict;
    let summary = format!(
        "C-normal for the flip conjugation: {} (modulus criterion {}, battery {}, max gap {:.2e})",
        crit.verdict && agree,
        crit.verdict,
        battery.verdict,
        crit.max_gap
    );
    let passed = crit.verdict && agree;
    let report = ShiftReport {
        weights: w.iter().map(|z| [z.re, z.im]).collect(),
        criterion: crit,
        battery_verdict: battery.verdict,
        agree,
    };
    Ok(Outcome::new(report, vec![linear(&t, "shift")], summary, passed))
}

fn verify(suite: Suite, trials: usize, dims: (usize, usize), seed: u64, tol: Tolerance) -> Result<Outcome, Failure> {
    let mut config = RunConfig::new(suite, seed, trials, dims);
    config.tol = tol;
    input(config.validate())?;
    let report = input(run_suite(&config))?;
    eprintln!("wall time {:.3} s", report.timing.wall_time_secs);
    let mut value = serde_json::to_value(&report).expect("reports serialize");
    if let Some(map) = value.as_object_mut() {
        map.remove("timing");
    }
    let summary = format!(
        "suite {}: {} trials, {} failures",
        report.suite,
        report.trials,
        report.failures.len()
    );
    let passed = report.passed();
    Ok(Outcome { report: value, matrices: Vec::new(), summary, passed })
}

fn generate(kind: GenKind, n: usize, seed: u64, tol: &Tolerance) -> Result<Outcome, Failure> {
    if !(1..=64).contains(&n) {
        return Err(Failure::Input(format!("dimension {n} outside 1..=64")));
    }
    let mut rng = seeded(seed);
    let bundle = match kind {
        GenKind::Conjugation => {
            let c = Conjugation::random(n, &mut rng);
            let valid = Conjugation::new(c.matrix().clone(), tol).is_ok();
            Bundle::new(vec![c.to_json().named("C")], [], valid)
        }
        GenKind::Cnormal => {
            let inst = cjp_instance(n, CjpOptions::default(), &mut rng);
            let report = is_c_normal_battery(&inst.t, &inst.conj, tol)?;
            Bundle::new(
                vec![linear(&inst.t, "T"), inst.conj.to_json().named("C")],
                [("c_normal", report.residuals[0])],
                report.verdict,
            )
        }
        GenKind::NormalAnticommuting => {
            let inst = normal_anticommuting(n, &mut rng);
            let skew = (inst.conj.sandwich(&inst.t) + &inst.t).norm();
            Bundle::new(
                vec![linear(&inst.t, "T"), inst.conj.to_json().named("C")],
                [("ctc_plus_t", skew)],
                skew <= tol.bound(inst.t.norm()),
            )
        }
        GenKind::CommutingJp => {
            let inst = cjp_instance(n, CjpOptions::default(), &mut rng);
            let jp = inst.j.compose(&inst.p)?;
            let pj = inst.p.compose(&inst.j)?;
            let com = (jp.matrix() - pj.matrix()).norm();
            Bundle::new(
                vec![inst.conj.to_json().named("C"), inst.j.to_json().named("J"), linear(&inst.p, "P")],
                [("commutation", com)],
                com <= tol.bound(inst.p.norm()),
            )
        }
    };
    Ok(Outcome::from_bundle(bundle, "instance"))
}

fn write_out(dir: &Path, outcome: &Outcome) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::Input(format!("cannot write to {}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(io)?;
    fs::write(dir.join("report.json"), render(&outcome.report)).map_err(io)?;
    for (k, m) in outcome.matrices.iter().enumerate() {
        let name = m.name.clone().unwrap_or_else(|| format!("matrix{k}"));
        fs::write(dir.join(format!("{name}.json")), render(m)).map_err(io)?;
    }
    Ok(())
}

fn render(value: &impl Serialize) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize") + "\n"
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let valid = |x: f64| x.is_finite() && x >= 0.0;
    if !valid(cli.tol_rel) || !valid(cli.tol_abs) {
        return Err(Failure::Input("tolerances must be finite and nonnegative".into()));
    }
    let tol = Tolerance::new(cli.tol_rel, cli.tol_abs);
    match &cli.command {
        Command::Check { t, c } => check(t, c, &tol),
        Command::Decompose { kind } => decompose(kind, &tol),
        Command::Shift { weights, file } => shift(weights.as_deref(), file.as_deref(), &tol),
        Command::Verify { suite, trials, dim_min, dim_max } => {
            verify(*suite, *trials, (*dim_min, *dim_max), cli.seed, tol)
        }
        Command::Gen { kind, dim } => generate(*kind, *dim, cli.seed, &tol),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(Failure::Input(msg)) => {
            eprintln!("input error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Op(e)) => {
            eprintln!("{e}");
            if cli.json {
                println!("{}", serde_json::json!({ "error": e.kind_name(), "message": e.to_string() }));
            }
            return ExitCode::from(1);
        }
    };
    if let Some(dir) = &cli.out {
        if let Err(Failure::Input(msg)) = write_out(dir, &outcome) {
            eprintln!("input error: {msg}");
            return ExitCode::from(2);
        }
    }
    if cli.json {
        print!("{}", render(&outcome.report));
    } else {
        println!("{}", outcome.summary);
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
