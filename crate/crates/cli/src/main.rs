//! `qgk` — command-line front end for the q-deformation kernel.
//!
//! Every subcommand emits a JSON report with schema tag "qgk/1" to stdout
//! (or `--out`), byte-deterministic for a fixed config and seed.  Exit
//! codes: 0 = all checks within tolerance, 1 = a tolerance/verdict
//! failure, 2 = configuration or parse error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use serde_json::{json, Value};

use qgk_core::duality::{annihilation_report, calibrate, nondegeneracy_probe, pairing_axiom_check};
use qgk_core::freealg::{NCPoly, NCPolyJson};
use qgk_core::frt::{
    centrality_check, hopf_axiom_check, sl_quotient, sl_relation_table, span_equality_ranks,
};
use qgk_core::moyal::{is_associative, quantization_check, random_symbol};
use qgk_core::rewrite::{builtin_presentation, BuiltinKind, Presentation};
use qgk_core::rmatrix::{inverse_law_check, qybe_check, qybe_residual_at, standard_sln_rmatrix};
use qgk_core::sample::sample_z;
use qgk_core::twist::{
    cocycle_check, optional_f_checks, twisted_r_and_antipode, TwistScenario, TwistScenarioJson,
};
use qgk_core::uqnum::{check_uq_relations, coproduct_check, fundamental_rep};

const SCHEMA: &str = "qgk/1";

#[derive(Parser)]
#[command(name = "qgk", about = "exact + numeric checks for q-deformed matrix algebras")]
struct Cli {
    /// Write the JSON report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Numerical tolerance for residual checks
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the SL_q(N) presentation, quantum determinant, and antipode
    FrtGen {
        #[arg(long = "N", alias = "n", default_value_t = 2)]
        n: usize,
    },
    /// Reduce a noncommutative polynomial (JSON) to normal form
    Reduce {
        /// Presentation family: quantum_plane | quantum_exterior | frt | sl
        #[arg(long, default_value = "quantum_plane")]
        preset: String,
        #[arg(long = "N", alias = "n", default_value_t = 2)]
        n: usize,
        /// Input NCPoly JSON file (stdin if omitted)
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Verify the quantum Yang–Baxter equation symbolically and numerically
    Qybe {
        #[arg(long = "N", alias = "n", default_value_t = 2)]
        n: usize,
        /// Evaluation point "a+bi" (seeded samples if omitted)
        #[arg(long)]
        z: Option<String>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Verify the Hopf axioms and centrality of det_q for SL_q(N)
    HopfCheck {
        #[arg(long = "N", alias = "n", default_value_t = 2)]
        n: usize,
    },
    /// Check the U_q relations and coproduct in the fundamental representation
    UqCheck {
        /// Rank of the algebra (sl(N+1))
        #[arg(long = "N", alias = "n", default_value_t = 1)]
        n: usize,
        #[arg(long)]
        z: Option<String>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Number of sampled z points when --z is not given
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
    /// Calibrate and verify the R(SL_q)–U_q duality pairing
    PairCheck {
        #[arg(long = "N", alias = "n", default_value_t = 2)]
        n: usize,
        #[arg(long)]
        z: Option<String>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Maximum U_q monomial length for the annihilation check
        #[arg(long, default_value_t = 3)]
        max_deg: usize,
    },
    /// Run the twist verification suite on a scenario file
    TwistCheck {
        /// TwistScenario JSON file
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Exact Moyal product checks on seeded random symbols
    MoyalCheck {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        max_deg: u32,
    },
    /// Graded dimensions of a presentation vs the classical algebra
    Dims {
        /// Presentation family: quantum_plane | quantum_exterior | frt
        #[arg(long, default_value = "quantum_plane")]
        preset: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        max_deg: usize,
    },
}

/// Parse "a+bi" (also accepts "a", "bi", "i", "-i").
fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t: String = s.trim().chars().filter(|c| !c.is_whitespace()).collect();
    if let Ok(re) = t.parse::<f64>() {
        return Ok(Complex64::new(re, 0.0));
    }
    let body = t
        .strip_suffix('i')
        .ok_or_else(|| format!("cannot parse complex number {s:?}"))?;
    let bytes = body.as_bytes();
    let mut split = None;
    for (idx, &c) in bytes.iter().enumerate().skip(1) {
        if (c == b'+' || c == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
            split = Some(idx);
        }
    }
    let parse_im = |part: &str| -> Result<f64, String> {
        match part {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            other => other
                .parse::<f64>()
                .map_err(|e| format!("cannot parse imaginary part {other:?}: {e}")),
        }
    };
    match split {
        Some(idx) => {
            let re = body[..idx]
                .parse::<f64>()
                .map_err(|e| format!("cannot parse real part: {e}"))?;
            Ok(Complex64::new(re, parse_im(&body[idx..])?))
        }
        None => Ok(Complex64::new(0.0, parse_im(body)?)),
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut out = 1usize;
    for i in 0..k.min(n - k) {
        out = out * (n - i) / (i + 1);
    }
    out
}

fn emit(report: &Value, out: &Option<PathBuf>) -> Result<(), String> {
    let text = format!("{}\n", serde_json::to_string_pretty(report).expect("serializable"));
    match out {
        Some(path) => fs::write(path, text).map_err(|e| format!("cannot write {path:?}: {e}")),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Either a finished report with a pass/fail verdict (exit 0/1), or a
/// configuration/parse error (exit 2).
type RunResult = Result<(Value, bool), String>;

fn zs_for(z: &Option<String>, seed: u64, count: usize) -> Result<Vec<Complex64>, String> {
    match z {
        Some(s) => Ok(vec![parse_complex(s)?]),
        None => Ok(sample_z(seed, count, 2.0)),
    }
}

fn complex_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn presentation_for(preset: &str, n: usize) -> Result<Presentation, String> {
    match preset {
        "quantum_plane" => builtin_presentation(BuiltinKind::QuantumPlane, n)
            .map_err(|e| format!("bad preset config: {e}")),
        "quantum_exterior" => builtin_presentation(BuiltinKind::QuantumExterior, n)
            .map_err(|e| format!("bad preset config: {e}")),
        "frt" => sl_relation_table(n).map_err(|e| format!("bad preset config: {e}")),
        "sl" => Ok(sl_quotient(n)
            .map_err(|e| format!("bad preset config: {e}"))?
            .presentation()
            .clone()),
        other => Err(format!("unknown preset {other:?}")),
    }
}

fn run_frt_gen(n: usize) -> RunResult {
    let alg = sl_quotient(n).map_err(|e| format!("frt-gen failed: {e}"))?;
    let dump = serde_json::to_value(alg.to_json()).expect("serializable");
    let (rel_rank, table_rank, joint_rank) =
        span_equality_ranks(n).map_err(|e| format!("span check failed: {e}"))?;
    let spans_equal = rel_rank == table_rank && table_rank == joint_rank;
    let report = json!({
        "schema": SCHEMA,
        "command": "frt-gen",
        "N": n,
        "algebra": dump,
        "degree2_span_ranks": [rel_rank, table_rank, joint_rank],
        "spans_equal": spans_equal,
    });
    Ok((report, spans_equal))
}

fn run_reduce(preset: &str, n: usize, input: &Option<PathBuf>) -> RunResult {
    let pres = presentation_for(preset, n)?;
    let text = match input {
        Some(path) => fs::read_to_string(path).map_err(|e| format!("cannot read input: {e}"))?,
        None => {
            use std::io::Read;
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| format!("cannot read stdin: {e}"))?;
            buf
        }
    };
    let poly_json: NCPolyJson =
        serde_json::from_str(&text).map_err(|e| format!("bad NCPoly JSON: {e}"))?;
    let poly = NCPoly::from_json(pres.gens(), &poly_json)
        .map_err(|e| format!("bad polynomial: {e}"))?;
    let reduced = pres.reduce(&poly).map_err(|e| format!("reduction failed: {e}"))?;
    let report = json!({
        "schema": SCHEMA,
        "command": "reduce",
        "preset": preset,
        "normal_form": serde_json::to_value(reduced.to_json()).expect("serializable"),
    });
    Ok((report, true))
}

fn run_qybe(n: usize, z: &Option<String>, seed: u64, tol: f64) -> RunResult {
    let r = standard_sln_rmatrix(n).map_err(|e| format!("bad N: {e}"))?;
    let symbolic = qybe_check(&r);
    let inverse_law = inverse_law_check(&r);
    let mut residuals = Vec::new();
    let mut worst = 0.0_f64;
    for z in zs_for(z, seed, 5)? {
        let res = qybe_residual_at(&r, z).map_err(|e| format!("evaluation failed: {e}"))?;
        worst = worst.max(res);
        residuals.push(json!({ "z": complex_json(z), "residual": res }));
    }
    let ok = symbolic.holds && inverse_law && worst <= tol;
    let report = json!({
        "schema": SCHEMA,
        "command": "qybe",
        "N": n,
        "symbolic": if symbolic.holds { "exact" } else { "failed" },
        "inverse_law": inverse_law,
        "numeric": residuals,
        "max_residual": worst,
        "pass": ok,
    });
    Ok((report, ok))
}

fn run_hopf_check(n: usize) -> RunResult {
    let alg = sl_quotient(n).map_err(|e| format!("bad N: {e}"))?;
    let hopf = hopf_axiom_check(&alg).map_err(|e| format!("hopf check failed: {e}"))?;
    let central = centrality_check(n).map_err(|e| format!("centrality check failed: {e}"))?;
    let ok = hopf.all_pass() && central;
    let report = json!({
        "schema": SCHEMA,
        "command": "hopf-check",
        "N": n,
        "axioms": serde_json::to_value(&hopf).expect("serializable"),
        "determinant_central": central,
        "pass": ok,
    });
    Ok((report, ok))
}

fn residual_groups_json(groups: &std::collections::BTreeMap<String, f64>) -> Value {
    serde_json::to_value(groups).expect("serializable")
}

fn run_uq_check(n: usize, z: &Option<String>, seed: u64, count: usize, tol: f64) -> RunResult {
    let mut points = Vec::new();
    let mut worst = 0.0_f64;
    for z in zs_for(z, seed, count)? {
        let rep = fundamental_rep(n, z).map_err(|e| format!("bad parameters: {e}"))?;
        let rels = check_uq_relations(&rep).map_err(|e| format!("relation check failed: {e}"))?;
        let cop = coproduct_check(&rep).map_err(|e| format!("coproduct check failed: {e}"))?;
        worst = worst.max(rels.max_residual()).max(cop.max_residual());
        points.push(json!({
            "z": complex_json(z),
            "relations": residual_groups_json(&rels.groups),
            "coproduct": residual_groups_json(&cop.groups),
        }));
    }
    let ok = worst <= tol;
    let report = json!({
        "schema": SCHEMA,
        "command": "uq-check",
        "N": n,
        "points": points,
        "max_residual": worst,
        "tol": tol,
        "pass": ok,
    });
    Ok((report, ok))
}

fn run_pair_check(n: usize, z: &Option<String>, seed: u64, max_deg: usize, tol: f64) -> RunResult {
    let z = zs_for(z, seed, 1)?[0];
    let (ctx, cal) = calibrate(n, z).map_err(|e| format!("calibration failed: {e}"))?;
    let axioms = pairing_axiom_check(&ctx).map_err(|e| format!("axiom check failed: {e}"))?;
    let ann = annihilation_report(&ctx, max_deg)
        .map_err(|e| format!("annihilation check failed: {e}"))?;
    let (rank, expected) =
        nondegeneracy_probe(&ctx).map_err(|e| format!("nondegeneracy probe failed: {e}"))?;
    let worst = axioms.max_residual().max(ann.max_residual());
    let ok = worst <= tol && rank == expected;
    let report = json!({
        "schema": SCHEMA,
        "command": "pair-check",
        "N": n,
        "z": complex_json(z),
        "calibration": {
            "scale": format!("{:?}", cal.scale),
            "transpose": cal.transpose,
            "survivors": cal.survivors_at_first_z,
            "residual": cal.residual,
        },
        "axioms": residual_groups_json(&axioms.groups),
        "annihilation": residual_groups_json(&ann.groups),
        "nondegeneracy_rank": [rank, expected],
        "max_residual": worst,
        "tol": tol,
        "pass": ok,
    });
    Ok((report, ok))
}

fn run_twist_check(path: &PathBuf, tol: f64) -> RunResult {
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read scenario: {e}"))?;
    let scenario_json: TwistScenarioJson =
        serde_json::from_str(&text).map_err(|e| format!("bad scenario JSON: {e}"))?;
    let scenario =
        TwistScenario::from_json(&scenario_json).map_err(|e| format!("bad scenario: {e}"))?;
    let data = scenario.build().map_err(|e| format!("cannot build twist: {e}"))?;
    let cocycle = cocycle_check(&data);
    let (_r, _s, twist_report) =
        twisted_r_and_antipode(&data).map_err(|e| format!("twist check failed: {e}"))?;
    let (f_qybe, f21_vs_finv) = optional_f_checks(&data);
    let ok = twist_report.all_below(tol);
    let report = json!({
        "schema": SCHEMA,
        "command": "twist-check",
        "cocycle_residual": cocycle.cocycle_residual,
        "counit_residual": cocycle.counit_residual,
        "triangularity_residual": twist_report.triangularity_residual,
        "intertwining_residual": twist_report.intertwining_residual,
        "f_qybe_residual": f_qybe,
        "f21_vs_f_inverse": f21_vs_finv,
        "tol": tol,
        "pass": ok,
    });
    Ok((report, ok))
}

fn run_moyal_check(seed: u64, count: usize, max_deg: u32) -> RunResult {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut associative_failures = 0usize;
    let mut quantization_failures = 0usize;
    for _ in 0..count {
        for n in 1..=2usize {
            let a = random_symbol(&mut rng, n, max_deg, 3);
            let b = random_symbol(&mut rng, n, max_deg, 3);
            let c = random_symbol(&mut rng, n, max_deg, 3);
            if !is_associative(&a, &b, &c) {
                associative_failures += 1;
            }
            if !quantization_check(&a, &b).hbar1_matches {
                quantization_failures += 1;
            }
        }
    }
    let ok = associative_failures == 0 && quantization_failures == 0;
    let report = json!({
        "schema": SCHEMA,
        "command": "moyal-check",
        "pairs_checked": 2 * count,
        "associative_failures": associative_failures,
        "quantization_failures": quantization_failures,
        "exact": true,
        "pass": ok,
    });
    Ok((report, ok))
}

fn run_dims(preset: &str, n: usize, max_deg: usize) -> RunResult {
    let pres = presentation_for(preset, n)?;
    let dims: Vec<usize> = (0..=max_deg).map(|d| pres.graded_dimension(d)).collect();
    let classical: Option<Vec<usize>> = match preset {
        "quantum_plane" => Some((0..=max_deg).map(|d| binomial(n + d - 1, d)).collect()),
        "quantum_exterior" => Some((0..=max_deg).map(|d| binomial(n, d)).collect()),
        "frt" => Some((0..=max_deg).map(|d| binomial(n * n + d - 1, d)).collect()),
        _ => None,
    };
    let matches = classical.as_ref().map(|c| *c == dims);
    let ok = matches.unwrap_or(true);
    let report = json!({
        "schema": SCHEMA,
        "command": "dims",
        "preset": preset,
        "n": n,
        "dims": dims,
        "classical": classical,
        "matches_classical": matches,
        "pass": ok,
    });
    Ok((report, ok))
}

fn run(cli: &Cli) -> RunResult {
    match &cli.command {
        Command::FrtGen { n } => run_frt_gen(*n),
        Command::Reduce { preset, n, input } => run_reduce(preset, *n, input),
        Command::Qybe { n, z, seed } => run_qybe(*n, z, *seed, cli.tol),
        Command::HopfCheck { n } => run_hopf_check(*n),
        Command::UqCheck { n, z, seed, count } => run_uq_check(*n, z, *seed, *count, cli.tol),
        Command::PairCheck { n, z, seed, max_deg } => {
            run_pair_check(*n, z, *seed, *max_deg, cli.tol)
        }
        Command::TwistCheck { scenario } => run_twist_check(scenario, cli.tol),
        Command::MoyalCheck { seed, count, max_deg } => run_moyal_check(*seed, *count, *max_deg),
        Command::Dims { preset, n, max_deg } => run_dims(preset, *n, *max_deg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, pass)) => {
            if let Err(e) = emit(&report, &cli.out) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_parsing() {
        assert_eq!(parse_complex("1.5").unwrap(), Complex64::new(1.5, 0.0));
        assert_eq!(parse_complex("2i").unwrap(), Complex64::new(0.0, 2.0));
        assert_eq!(parse_complex("i").unwrap(), Complex64::new(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(parse_complex("1+2i").unwrap(), Complex64::new(1.0, 2.0));
        assert_eq!(parse_complex("-0.3-0.2i").unwrap(), Complex64::new(-0.3, -0.2));
        assert_eq!(parse_complex("1e-2+1e-3i").unwrap(), Complex64::new(0.01, 0.001));
        assert!(parse_complex("nope").is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(3, 0), 1);
        assert_eq!(binomial(2, 3), 0);
    }
}
