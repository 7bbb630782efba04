mod input;
mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use icl_core::bicyclic::{is_icp_bicyclic, normalizer_bicyclic, BicyclicTrace, TkdSub};
use icl_core::oracle::{brute_force_left_congruences, certify, Strategy};
use icl_core::pairs::{
    build_lattice, candidate_pairs, closure_violation, decompose, is_inverse_congruence_pair, join_pairs, meet_pairs,
    rho_from_pair,
};
use icl_core::trace_kernel::{inverse_kernel, normalizer, trace};
use icl_core::{eq_join_transitive, eq_meet, Error, Result, DEFAULT_CAP};
use serde_json::{json, Value};

use render::{blocks, pair, sub_members, trace_blocks};

#[derive(Parser)]
#[command(
    name = "icl",
    version,
    about = "Left congruences of finite inverse semigroups of partial maps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Every left congruence with its inclusion order.
    Lattice {
        spec: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Every inverse congruence pair.
    Pairs { spec: PathBuf },
    /// Tests one pair and reconstructs its left congruence.
    CheckPair {
        spec: PathBuf,
        /// Blocks of idempotents such as `1,2|3`, or `iota`/`omega`.
        #[arg(long)]
        tau: String,
        /// `E`, `S` or extra elements such as `5,6`.
        #[arg(long)]
        sub: String,
    },
    /// Join of two pairs, given as `<tau>;<sub>`.
    Join(Binary),
    /// Meet of two pairs, given as `<tau>;<sub>`.
    Meet(Binary),
    /// Brute-force enumeration and the certification report.
    Oracle {
        spec: PathBuf,
        #[arg(long, default_value = "partitions")]
        strategy: Strategy,
    },
    /// Questions about the bicyclic monoid.
    Bicyclic {
        #[command(subcommand)]
        command: BicyclicCommand,
    },
    /// Splits a left congruence into its two components.
    Decompose {
        spec: PathBuf,
        /// Blocks of elements such as `1,2|3,4`.
        #[arg(long)]
        rho: String,
    },
}

#[derive(clap::Args)]
struct Binary {
    spec: PathBuf,
    #[arg(long)]
    p1: String,
    #[arg(long)]
    p2: String,
    /// Also compare against the relation-level computation.
    #[arg(long)]
    cross_check: bool,
}

#[derive(Subcommand)]
enum BicyclicCommand {
    /// Whether `(trace, sub)` is an inverse congruence pair.
    Check {
        /// `prefix=[..];tail=inf` or `prefix=[..];tail=per([..])`.
        #[arg(long)]
        trace: String,
        /// `E` or `k=K,d=D`.
        #[arg(long)]
        sub: String,
    },
}

fn lattice(spec: &Path, format: Format) -> Result<String> {
    let s = input::load_semigroup(spec)?;
    let l = build_lattice(&s)?;
    Ok(match format {
        Format::Dot => render::lattice_dot(&s, &l),
        Format::Json => to_json(&render::lattice_json(&s, &l)),
    })
}

fn pairs(spec: &Path) -> Result<String> {
    let s = input::load_semigroup(spec)?;
    let mut valid = Vec::new();
    let candidates = candidate_pairs(&s, DEFAULT_CAP)?;
    for p in &candidates {
        if is_inverse_congruence_pair(&s, p)? {
            valid.push(pair(&s, p));
        }
    }
    Ok(to_json(&json!({
        "elements": render::elements(&s),
        "candidates": candidates.len(),
        "count": valid.len(),
        "pairs": valid,
    })))
}

fn check_pair(spec: &Path, tau: &str, sub: &str) -> Result<String> {
    let s = input::load_semigroup(spec)?;
    let p = icl_core::IKPair::new(input::parse_trace(&s, tau)?, input::parse_sub(&s, sub)?);
    let n = normalizer(&s, &p.tau);
    let outside: Vec<usize> =
        p.t.members()
            .iter()
            .filter(|&a| !n.contains(a))
            .map(|a| a + 1)
            .collect();
    let valid = is_inverse_congruence_pair(&s, &p)?;
    let violation = closure_violation(&s, &p).map(|(x, e, f)| json!({"x": x + 1, "e": e + 1, "f": f + 1}));
    let relation = if valid {
        Some(blocks(&rho_from_pair(&s, &p)?))
    } else {
        None
    };
    Ok(to_json(&json!({
        "pair": pair(&s, &p),
        "valid": valid,
        "normalizer": sub_members(&n),
        "outside_normalizer": outside,
        "violation": violation,
        "relation": relation,
    })))
}

fn binary(args: &Binary, is_join: bool) -> Result<String> {
    let s = input::load_semigroup(&args.spec)?;
    let p1 = input::parse_pair(&s, &args.p1)?;
    let p2 = input::parse_pair(&s, &args.p2)?;
    let result = if is_join {
        join_pairs(&s, &p1, &p2)?
    } else {
        meet_pairs(&s, &p1, &p2)?
    };
    let rho = rho_from_pair(&s, &result)?;
    let cross_check = if args.cross_check {
        let (r1, r2) = (rho_from_pair(&s, &p1)?, rho_from_pair(&s, &p2)?);
        let expected = if is_join {
            eq_join_transitive(&r1, &r2)
        } else {
            eq_meet(&r1, &r2)
        };
        if expected != rho {
            return Err(Error::Invariant(format!(
                "pair arithmetic gives {:?}, relations give {:?}",
                blocks(&rho),
                blocks(&expected)
            )));
        }
        Some(true)
    } else {
        None
    };
    Ok(to_json(&json!({
        "p1": pair(&s, &p1),
        "p2": pair(&s, &p2),
        "result": pair(&s, &result),
        "relation": blocks(&rho),
        "cross_check": cross_check,
    })))
}

fn oracle(spec: &Path, strategy: Strategy) -> Result<String> {
    let s = input::load_semigroup(spec)?;
    let relations = brute_force_left_congruences(&s, strategy)?;
    let name = spec
        .file_stem()
        .map(|x| x.to_string_lossy().into_owned())
        .unwrap_or_default();
    let report = certify(&s, &name);
    Ok(to_json(&render::oracle_json(&report, strategy.to_string(), &relations)))
}

fn bicyclic_check(trace_text: &str, sub: &str) -> Result<String> {
    let tau: BicyclicTrace = trace_text.parse()?;
    let t: TkdSub = sub.parse()?;
    let valid = is_icp_bicyclic(&tau, t);
    Ok(to_json(&json!({
        "trace": tau.to_string(),
        "sub": t.to_string(),
        "verdict": if valid { "valid" } else { "invalid" },
        "valid": valid,
        "normalizer": normalizer_bicyclic(&tau).to_string(),
        "l": tau.l().ok(),
    })))
}

fn decompose_cmd(spec: &Path, rho_text: &str) -> Result<String> {
    let s = input::load_semigroup(spec)?;
    let rho = input::parse_relation(&s, rho_text)?;
    if let Some((c, a, b)) = rho.first_left_violation(&s) {
        return Err(Error::Input(format!(
            "not a left congruence: {} ~ {} but {}·{} and {}·{} are not",
            a + 1,
            b + 1,
            c + 1,
            a + 1,
            c + 1,
            b + 1
        )));
    }
    let d = decompose(&s, &rho);
    let witnesses: Vec<Value> = d
        .witnesses
        .iter()
        .map(|w| json!({"a": w.a + 1, "e": w.e + 1, "f": w.f + 1}))
        .collect();
    Ok(to_json(&json!({
        "rho": blocks(&rho),
        "trace": trace_blocks(&s, &trace(&s, &rho)),
        "inverse_kernel": sub_members(&inverse_kernel(&s, &rho)),
        "nu": blocks(&d.nu),
        "chi": blocks(&d.chi),
        "witnesses": witnesses,
    })))
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut out = serde_json::to_string_pretty(v).expect("serializable");
    out.push('\n');
    out
}

fn run(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Lattice { spec, format } => lattice(&spec, format),
        Command::Pairs { spec } => pairs(&spec),
        Command::CheckPair { spec, tau, sub } => check_pair(&spec, &tau, &sub),
        Command::Join(args) => binary(&args, true),
        Command::Meet(args) => binary(&args, false),
        Command::Oracle { spec, strategy } => oracle(&spec, strategy),
        Command::Bicyclic {
            command: BicyclicCommand::Check { trace, sub },
        } => bicyclic_check(&trace, &sub),
        Command::Decompose { spec, rho } => decompose_cmd(&spec, &rho),
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Input(_) => 1,
        Error::Resource { .. } => 2,
        Error::Invariant(_) => 3,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("icl: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
