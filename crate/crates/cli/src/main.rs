//! Single command-line entry point for the qspace toolkit: exact Gaussian
//! coefficients, pair-system verification, bound evaluation, extension
//! counting, lifting, and exhaustive search.
//!
//! Machine-readable output is JSON on stdout; diagnostics go to stderr.
//! Numeric output is exact: integer strings or `p/q` rational strings,
//! never floating point.
//!
//! Exit codes: 0 success (verification passed, search exhausted), 1 usage
//! or I/O error, 2 verification failed / precondition not met / search
//! capped, 3 internal invariant violation (a provably true check failed,
//! which means a bug, not new mathematics).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use qspace_core::bounds::{
    bollobas_sum, lemma21_check, prop15_assumes_symmetry, prop15_lower, prop15_table, thm18_lhs,
    thm19_cap, tuza_sum,
};
use qspace_core::counting::{
    check_family_disjointness, extension_count_bruteforce, extension_count_formula, family_f,
    family_size_formula, ExtensionCountParams,
};
use qspace_core::exactnum::{q_binomial, q_binomial_poly, ExactScalar};
use qspace_core::extremal::{
    lift_set_system, search_max_set_system, search_max_weak_uv, sets_witness_report,
    uv_witness_report, SearchConfig,
};
use qspace_core::pairsystems::{
    verify_bollobas, verify_bollobas_all, verify_lovasz_skew, verify_lovasz_skew_all,
    verify_tuza_sets, verify_tuza_sets_all, verify_weak_isp, verify_weak_isp_all, verify_weak_uv,
    verify_weak_uv_all, SetPairSystem, SubspacePairSystem, VerificationReport, Violation,
};
use qspace_core::subspace::rref;
use qspace_core::{Error, Result};

const NODE_CAP_ENV: &str = "QSPACE_NODE_CAP";

#[derive(Parser)]
#[command(
    name = "qspace",
    version,
    about = "Exact arithmetic, verification, bounds, and search for cross-intersecting pair systems over GF(q)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Gaussian coefficient [n choose m]_q, or with --poly its polynomial in q
    Qbinom {
        n: usize,
        m: usize,
        /// Field order; required unless --poly is given
        q: Option<u64>,
        /// Print the polynomial coefficients (low to high) instead
        #[arg(long)]
        poly: bool,
    },
    /// Check a pair-system JSON file against one condition set
    Verify {
        #[arg(long, value_enum)]
        kind: VerifyKind,
        /// Required U-dimension (weak-uv only)
        #[arg(long)]
        u: Option<usize>,
        /// Required V-dimension (weak-uv only)
        #[arg(long)]
        v: Option<usize>,
        /// Report every violation instead of stopping at the first
        #[arg(long)]
        all: bool,
        file: PathBuf,
    },
    /// Evaluate a bound or weighted sum exactly
    #[command(subcommand)]
    Bound(BoundCommand),
    /// Extension counts and subspace-family checks
    #[command(subcommand)]
    Count(CountCommand),
    /// Lift a set-pair system to coordinate subspaces over F_q^n
    Lift {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
        file: PathBuf,
    },
    /// Exhaustive search for the largest system at fixed parameters
    #[command(subcommand)]
    Search(SearchCommand),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyKind {
    Bollobas,
    Tuza,
    Lovasz,
    WeakIsp,
    WeakUv,
}

#[derive(Subcommand)]
enum BoundCommand {
    /// Size cap (q/(q-1))^n * q^(u*v) for weak (u,v)-systems
    Thm19 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        u: usize,
        #[arg(long)]
        v: usize,
        #[arg(long)]
        q: u64,
    },
    /// Weighted subspace-count sum at level j against 1
    Thm18 {
        #[arg(long)]
        j: usize,
        file: PathBuf,
    },
    /// Weighted set sum p^|A_i| (1-p)^|B_i| against 1
    Tuza {
        /// Rational weight, e.g. 1/2
        #[arg(long)]
        p: String,
        file: PathBuf,
    },
    /// Sum of 1/C(|A_i|+|B_i|, |A_i|) against 1
    Bollobas { file: PathBuf },
    /// Recursive lower bound for the largest (a,b)-uniform system
    Prop15 {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        /// Emit the whole lower-bound table as TSV instead of JSON
        #[arg(long)]
        table: bool,
    },
    /// Gaussian-coefficient cap [n choose j]_q <= (q/(q-1))^n q^(j(n-j))
    Lemma21 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        q: u64,
    },
}

#[derive(Subcommand)]
enum CountCommand {
    /// Count l2-subspaces extending U1 and meeting K trivially
    Ext {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        l1: usize,
        #[arg(long)]
        l2: usize,
        #[arg(long)]
        q: u64,
        /// Witness JSON {"K":[[..]],"U1":[[..]]}; cross-checks by enumeration
        #[arg(long)]
        brute: Option<PathBuf>,
    },
    /// Size of the family F(i, j) of a system, formula vs enumeration
    Family {
        /// Pair index, 1-based
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        /// Include the family members
        #[arg(long)]
        list: bool,
        file: PathBuf,
    },
    /// Pairwise disjointness of all families F(i, j) plus the union bound
    Disjoint {
        #[arg(long)]
        j: usize,
        file: PathBuf,
    },
}

#[derive(Subcommand)]
enum SearchCommand {
    /// Largest weak (u,v)-system in F_q^n
    Uv {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        u: usize,
        #[arg(long)]
        v: usize,
        #[command(flatten)]
        opts: SearchOpts,
    },
    /// Largest (a,b)-uniform cross-intersecting set system on {1..ground}
    Sets {
        #[arg(long)]
        ground: usize,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[command(flatten)]
        opts: SearchOpts,
    },
}

#[derive(Args)]
struct SearchOpts {
    /// Node cap (default: QSPACE_NODE_CAP or 10000000)
    #[arg(long)]
    nodes: Option<u64>,
    /// Wall-clock cap in seconds
    #[arg(long)]
    seconds: Option<u64>,
    /// Write the witness system JSON to this path
    #[arg(long)]
    witness: Option<PathBuf>,
    /// Worker threads
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Assert the proven size cap on every improvement (sanity check)
    #[arg(long)]
    thm19_prune: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::InvariantViolation(_) => 3,
        Error::PreconditionViolated(_) => 2,
        _ => 1,
    }
}

fn usage(message: impl Into<String>) -> Error {
    Error::InvalidParameter(message.into())
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn load_sets(path: &Path) -> Result<SetPairSystem> {
    Ok(serde_json::from_str(&read_file(path)?)?)
}

fn load_subspace_system(path: &Path) -> Result<SubspacePairSystem> {
    Ok(serde_json::from_str(&read_file(path)?)?)
}

fn emit(value: &serde_json::Value) {
    println!("{value}");
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Qbinom { n, m, q, poly } => run_qbinom(n, m, q, poly),
        Command::Verify {
            kind,
            u,
            v,
            all,
            file,
        } => run_verify(kind, u, v, all, &file),
        Command::Bound(cmd) => run_bound(cmd),
        Command::Count(cmd) => run_count(cmd),
        Command::Lift { n, q, file } => run_lift(n, q, &file),
        Command::Search(cmd) => run_search(cmd),
    }
}

fn run_qbinom(n: usize, m: usize, q: Option<u64>, poly: bool) -> Result<u8> {
    if poly {
        if q.is_some() {
            return Err(usage(
                "--poly takes no field order; the result is a polynomial in q",
            ));
        }
        let p = q_binomial_poly(n, m);
        emit(&json!({ "coeffs": p.coeffs_string() }));
    } else {
        let q = q.ok_or_else(|| usage("missing field order q (or pass --poly)"))?;
        let value = q_binomial(n, m, q)?;
        emit(&json!({ "value": value.to_string() }));
    }
    Ok(0)
}

fn violations_json(violations: &[Violation]) -> serde_json::Value {
    serde_json::to_value(violations).expect("violations serialize")
}

fn run_verify(
    kind: VerifyKind,
    u: Option<usize>,
    v: Option<usize>,
    all: bool,
    file: &Path,
) -> Result<u8> {
    if kind != VerifyKind::WeakUv && (u.is_some() || v.is_some()) {
        return Err(usage("--u/--v apply to --kind weak-uv only"));
    }
    let no_violations = Vec::new;
    let (report, violations): (VerificationReport, Vec<Violation>) = match kind {
        VerifyKind::Bollobas => {
            let s = load_sets(file)?;
            let all_v = if all {
                verify_bollobas_all(&s)
            } else {
                no_violations()
            };
            (verify_bollobas(&s), all_v)
        }
        VerifyKind::Tuza => {
            let s = load_sets(file)?;
            let all_v = if all {
                verify_tuza_sets_all(&s)
            } else {
                no_violations()
            };
            (verify_tuza_sets(&s), all_v)
        }
        VerifyKind::Lovasz => {
            let s = load_subspace_system(file)?;
            let all_v = if all {
                verify_lovasz_skew_all(&s)
            } else {
                no_violations()
            };
            (verify_lovasz_skew(&s), all_v)
        }
        VerifyKind::WeakIsp => {
            let s = load_subspace_system(file)?;
            let all_v = if all {
                verify_weak_isp_all(&s)
            } else {
                no_violations()
            };
            (verify_weak_isp(&s), all_v)
        }
        VerifyKind::WeakUv => {
            let (u, v) = u
                .zip(v)
                .ok_or_else(|| usage("--kind weak-uv requires --u and --v"))?;
            let s = load_subspace_system(file)?;
            let all_v = if all {
                verify_weak_uv_all(&s, u, v)
            } else {
                no_violations()
            };
            (verify_weak_uv(&s, u, v), all_v)
        }
    };
    let mut out = serde_json::to_value(&report)?;
    if all {
        out["violations"] = violations_json(&violations);
    }
    emit(&out);
    Ok(if report.passed { 0 } else { 2 })
}

/// holds is reported only when the hypotheses of the inequality verified;
/// on other inputs the sum is still printed with holds = null.
fn sum_output(
    lhs: &ExactScalar,
    rhs: &ExactScalar,
    hypotheses_ok: bool,
) -> (serde_json::Value, u8) {
    let holds = hypotheses_ok.then(|| lhs <= rhs);
    let value = json!({
        "lhs": lhs.as_ratio_string(),
        "rhs": rhs.as_ratio_string(),
        "holds": holds,
        "hypotheses_verified": hypotheses_ok,
    });
    // a verified system breaking a proven inequality is a bug in this tool
    let code = if holds == Some(false) { 3 } else { 0 };
    (value, code)
}

fn run_bound(cmd: BoundCommand) -> Result<u8> {
    match cmd {
        BoundCommand::Thm19 { n, u, v, q } => {
            let cap = thm19_cap(n, u, v, q)?;
            emit(&json!({ "value": cap.as_ratio_string(), "holds": null }));
            Ok(0)
        }
        BoundCommand::Thm18 { j, file } => {
            let s = load_subspace_system(&file)?;
            let r = thm18_lhs(&s, j)?;
            let (out, code) = sum_output(&r.lhs, &r.rhs, verify_weak_isp(&s).passed);
            emit(&out);
            Ok(code)
        }
        BoundCommand::Tuza { p, file } => {
            let p = ExactScalar::parse(&p)?;
            let s = load_sets(&file)?;
            let r = tuza_sum(&s, &p)?;
            let (out, code) = sum_output(&r.lhs, &r.rhs, verify_tuza_sets(&s).passed);
            emit(&out);
            Ok(code)
        }
        BoundCommand::Bollobas { file } => {
            let s = load_sets(&file)?;
            let r = bollobas_sum(&s);
            let (out, code) = sum_output(&r.lhs, &r.rhs, verify_bollobas(&s).passed);
            emit(&out);
            Ok(code)
        }
        BoundCommand::Prop15 { a, b, table } => {
            if table {
                // TSV for external plotting: row i, then the bounds for j=1..=b
                let t = prop15_table(a, b)?;
                for (i, row) in t.iter().enumerate().skip(1) {
                    let cells: Vec<String> = row.iter().skip(1).map(|v| v.to_string()).collect();
                    println!("{i}\t{}", cells.join("\t"));
                }
                return Ok(0);
            }
            let value = prop15_lower(a, b)?;
            let mut out = json!({ "value": value.to_string(), "holds": null });
            if prop15_assumes_symmetry(a, b) {
                out["note"] = json!("assumes role symmetry");
            }
            emit(&out);
            Ok(0)
        }
        BoundCommand::Lemma21 { n, j, q } => {
            let r = lemma21_check(n, j, q)?;
            if !r.holds {
                return Err(Error::InvariantViolation(format!(
                    "proven Gaussian-coefficient cap failed at n={n} j={j} q={q}: {} > {}",
                    r.lhs.as_ratio_string(),
                    r.rhs.as_ratio_string()
                )));
            }
            emit(&json!({
                "lhs": r.lhs.as_ratio_string(),
                "rhs": r.rhs.as_ratio_string(),
                "holds": true,
            }));
            Ok(0)
        }
    }
}

fn run_count(cmd: CountCommand) -> Result<u8> {
    match cmd {
        CountCommand::Ext {
            n,
            d,
            l1,
            l2,
            q,
            brute,
        } => {
            let params = ExtensionCountParams::new(n, d, l1, l2, q)?;
            let formula = extension_count_formula(&params)?;
            let Some(witness_path) = brute else {
                emit(&json!({ "value": formula.to_string() }));
                return Ok(0);
            };
            let witness: serde_json::Value = serde_json::from_str(&read_file(&witness_path)?)?;
            let field = qspace_core::gfq::make_field(q)?;
            let parse_space = |key: &str| -> Result<_> {
                let rows: Vec<Vec<u8>> = serde_json::from_value(
                    witness
                        .get(key)
                        .cloned()
                        .ok_or_else(|| usage(format!("witness file lacks \"{key}\"")))?,
                )?;
                rref(&field, n, &rows)
            };
            let k_space = parse_space("K")?;
            let u1 = parse_space("U1")?;
            let brute_count = extension_count_bruteforce(&params, &k_space, &u1)?;
            let equal = formula == brute_count;
            emit(&json!({
                "value": formula.to_string(),
                "brute": brute_count.to_string(),
                "equal": equal,
            }));
            if !equal {
                return Err(Error::InvariantViolation(
                    "extension-count formula disagrees with enumeration".into(),
                ));
            }
            Ok(0)
        }
        CountCommand::Family { i, j, list, file } => {
            if i == 0 {
                return Err(usage("--i is 1-based"));
            }
            let s = load_subspace_system(&file)?;
            let members: Vec<_> = family_f(&s, i - 1, j)?.collect();
            let (u_dim, v_dim) = s.dims(i - 1)?;
            let formula = family_size_formula(s.ambient_dim(), u_dim, v_dim, j, s.q())?;
            let equal = ExactScalar::from_int(members.len() as u64) == formula;
            let mut out = json!({
                "size": members.len().to_string(),
                "formula": formula.to_string(),
                "equal": equal,
            });
            if list {
                out["subspaces"] = json!(members
                    .iter()
                    .map(|m| m.basis().to_vec())
                    .collect::<Vec<_>>());
            }
            emit(&out);
            if !equal {
                return Err(Error::InvariantViolation(
                    "family-size formula disagrees with enumeration".into(),
                ));
            }
            Ok(0)
        }
        CountCommand::Disjoint { j, file } => {
            let s = load_subspace_system(&file)?;
            let report = check_family_disjointness(&s, j)?;
            emit(&serde_json::to_value(&report)?);
            if report.report.passed {
                Ok(0)
            } else {
                Err(Error::InvariantViolation(
                    "families of a verified weak ISP-system must be pairwise disjoint".into(),
                ))
            }
        }
    }
}

fn run_lift(n: usize, q: u64, file: &Path) -> Result<u8> {
    let s = load_sets(file)?;
    let lifted = lift_set_system(&s, n, q)?;
    emit(&serde_json::to_value(&lifted)?);
    Ok(0)
}

fn search_config(opts: &SearchOpts) -> Result<SearchConfig> {
    let mut cfg = SearchConfig::default();
    if let Some(nodes) = opts.nodes {
        cfg.node_cap = nodes;
    } else if let Ok(text) = std::env::var(NODE_CAP_ENV) {
        cfg.node_cap = text.parse().map_err(|_| {
            usage(format!(
                "{NODE_CAP_ENV} must be a positive integer, got {text:?}"
            ))
        })?;
    }
    if let Some(seconds) = opts.seconds {
        cfg.time_cap = Duration::from_secs(seconds);
    }
    cfg.threads = opts.threads;
    cfg.prune_with_thm19 = opts.thm19_prune;
    cfg.report_witness = true;
    Ok(cfg)
}

fn run_search(cmd: SearchCommand) -> Result<u8> {
    match cmd {
        SearchCommand::Uv { n, q, u, v, opts } => {
            let cfg = search_config(&opts)?;
            let result = search_max_weak_uv(n, q, u, v, &cfg)?;
            let report = uv_witness_report(&result, u, v)?;
            if let Some(path) = &opts.witness {
                let text = serde_json::to_string_pretty(&report.system)?;
                fs::write(path, text + "\n")
                    .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
            }
            emit(&serde_json::to_value(&report)?);
            Ok(if result.exhausted { 0 } else { 2 })
        }
        SearchCommand::Sets { ground, a, b, opts } => {
            let cfg = search_config(&opts)?;
            let result = search_max_set_system(ground, a, b, &cfg)?;
            let report = sets_witness_report(&result)?;
            if let Some(path) = &opts.witness {
                let text = serde_json::to_string_pretty(&report.system)?;
                fs::write(path, text + "\n")
                    .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
            }
            emit(&serde_json::to_value(&report)?);
            Ok(if result.exhausted { 0 } else { 2 })
        }
    }
}
