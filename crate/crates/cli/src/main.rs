//! Command-line interface for the quantum solvable algebra toolkit.
//!
//! Subcommands: `validate`, `center`, `admissible`, `strata`, `rep`,
//! `verify`. Every command prints human-readable text and can also write a
//! JSON document via `--out`. Exit codes: 0 = all checks pass,
//! 1 = a verification failed, 2 = invalid input.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::json;

use qsolv_core::file::{
    parse_algebra_file, parse_character_file, stratum_decls, AlgebraFile,
};
use qsolv_core::orealg::{identity_check, OreAlgebra, IDENTITY_NAMES};
use qsolv_core::qadjoint::{property_check, PROPERTY_NAMES};
use qsolv_core::qrep::{commutant_dimension, verify_rep};
use qsolv_core::qtorus::{center_at_eps, center_generic, TorusAlgebra};
use qsolv_core::strat::{
    admissible, build_stratum_rep, enumerate_strata_qcommuting, stratum_report,
    validate_user_stratum, Stratum, REPORT_SCHEMA_VERSION,
};

#[derive(Parser)]
#[command(name = "qsolv", version, about = "Exact toolkit for quantum solvable algebras at roots of unity")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse an algebra file and check every spec invariant.
    Validate {
        file: PathBuf,
        /// Write a JSON report to this path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Center lattices of a q-commuting algebra: generic and at q = ε.
    Center {
        file: PathBuf,
        #[arg(long)]
        l: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Admissibility of one root order or a range.
    Admissible {
        file: PathBuf,
        #[arg(long)]
        l: Option<u32>,
        /// Inclusive range, e.g. 2..7.
        #[arg(long, value_name = "A..B")]
        l_range: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Stratum report: ranks, leaf dimensions, representation dimensions.
    Strata {
        file: PathBuf,
        #[arg(long)]
        l: u32,
        /// Also build and verify a representation per admissible stratum.
        #[arg(long)]
        build_reps: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build and verify an irreducible representation for a character file.
    Rep {
        file: PathBuf,
        #[arg(long)]
        l: u32,
        #[arg(long = "char", value_name = "CHARFILE")]
        character: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the identity and property verification suites.
    Verify {
        file: PathBuf,
        #[arg(long)]
        l: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        degree: i64,
        /// all | ore | adjoint
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}

fn load_file(path: &Path) -> Result<AlgebraFile, String> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {}", path.display(), e))?;
    parse_algebra_file(&src).map_err(|e| format!("{}: {}", path.display(), e))
}

fn instantiate(file: &AlgebraFile, l: u32) -> Result<Arc<OreAlgebra>, String> {
    OreAlgebra::instantiate(&file.spec, l).map_err(|v| {
        let msgs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        format!("structural violations: {}", msgs.join("; "))
    })
}

fn write_json(out: &Option<PathBuf>, value: &serde_json::Value) -> Result<(), String> {
    if let Some(path) = out {
        let text = serde_json::to_string_pretty(value).expect("serializable");
        std::fs::write(path, text).map_err(|e| format!("cannot write {}: {}", path.display(), e))?;
    }
    Ok(())
}

/// Collect the strata of an algebra: enumerated when q-commuting, declared
/// (and validated) otherwise.
fn collect_strata(file: &AlgebraFile, alg: &Arc<OreAlgebra>) -> Result<Vec<Stratum>, String> {
    if !alg.has_relations() {
        return enumerate_strata_qcommuting(alg).map_err(|e| e.to_string());
    }
    let decls = stratum_decls(file, alg).map_err(|e| e.to_string())?;
    if decls.is_empty() {
        return Err(
            "algebra has relation tails; declare [[stratum]] blocks in the file".to_string()
        );
    }
    let mut out = Vec::new();
    for decl in &decls {
        match validate_user_stratum(alg, decl) {
            Ok(st) => out.push(st),
            Err(violations) => {
                let msgs: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
                return Err(format!(
                    "stratum '{}' invalid: {}",
                    decl.label.clone().unwrap_or_default(),
                    msgs.join("; ")
                ));
            }
        }
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.cmd {
        Cmd::Validate { file, out } => {
            let parsed = load_file(&file)?;
            let report = parsed.spec.validate();
            let violations: Vec<String> =
                report.violations.iter().map(|v| v.to_string()).collect();
            for v in &violations {
                println!("violation: {}", v);
            }
            let valid = report.is_valid();
            println!(
                "{}: {} (n = {}, m = {}, {} relation tails, {} strata declared)",
                file.display(),
                if valid { "valid" } else { "INVALID" },
                parsed.spec.n,
                parsed.spec.m,
                parsed.spec.relations.len(),
                parsed.strata.len()
            );
            write_json(
                &out,
                &json!({
                    "schema_version": REPORT_SCHEMA_VERSION,
                    "valid": valid,
                    "violations": violations,
                }),
            )?;
            Ok(if valid { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Cmd::Center { file, l, out } => {
            let parsed = load_file(&file)?;
            if !parsed.spec.relations.is_empty() {
                return Err("center lattices are computed for q-commuting algebras".into());
            }
            let torus = TorusAlgebra::new(l, parsed.spec.s.clone());
            let generic = center_generic(&torus);
            let at_eps = center_at_eps(&torus);
            println!("generic center lattice (kernel of S):");
            for row in &generic.basis {
                println!("  {:?}", row);
            }
            println!("center lattice at q = eps (S·n = 0 mod {}):", l);
            for row in &at_eps.basis {
                println!("  {:?}", row);
            }
            write_json(
                &out,
                &json!({
                    "schema_version": REPORT_SCHEMA_VERSION,
                    "l": l,
                    "generic_basis": generic.basis,
                    "at_eps_basis": at_eps.basis,
                }),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Admissible { file, l, l_range, out } => {
            let parsed = load_file(&file)?;
            let values = parse_l_values(l, l_range)?;
            let mut verdicts = Vec::new();
            let mut all_ok = true;
            for lv in values {
                let alg = instantiate(&parsed, lv)?;
                let verdict = admissible(&alg);
                let ok = verdict.admissible();
                all_ok &= ok;
                println!(
                    "l = {}: {}{}",
                    lv,
                    if ok { "admissible" } else { "NOT admissible" },
                    describe_admissibility(&verdict)
                );
                verdicts.push(verdict);
            }
            write_json(
                &out,
                &json!({
                    "schema_version": REPORT_SCHEMA_VERSION,
                    "verdicts": verdicts,
                }),
            )?;
            Ok(if all_ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Cmd::Strata { file, l, build_reps, out } => {
            let parsed = load_file(&file)?;
            let alg = instantiate(&parsed, l)?;
            let strata = collect_strata(&parsed, &alg)?;
            let report = stratum_report(&alg, &strata, build_reps);
            let mut ok = true;
            for rec in &report.strata {
                let rep_note = match &rec.rep {
                    Some(r) => {
                        if !r.verified || r.commutant_dimension != Some(1) {
                            ok = false;
                        }
                        format!(
                            ", rep dim {} verified={} commutant={:?}",
                            r.dimension, r.verified, r.commutant_dimension
                        )
                    }
                    None => {
                        if build_reps && rec.admissible.admissible() {
                            ok = false; // requested build did not succeed
                        }
                        String::new()
                    }
                };
                println!(
                    "stratum {}: surviving {:?}, rank {}, leaf dim {}, rep dim {}{}{}",
                    rec.label,
                    rec.surviving,
                    rec.rank,
                    rec.leaf_dimension,
                    rec.rep_dimension,
                    if rec.admissible.admissible() {
                        ""
                    } else {
                        " [not admissible]"
                    },
                    rep_note
                );
            }
            write_json(&out, &serde_json::to_value(&report).expect("report"))?;
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Cmd::Rep { file, l, character, out } => {
            let parsed = load_file(&file)?;
            let alg = instantiate(&parsed, l)?;
            let strata = collect_strata(&parsed, &alg)?;
            let stratum = strata
                .first()
                .ok_or_else(|| "no stratum available".to_string())?;
            let chi_src = std::fs::read_to_string(&character)
                .map_err(|e| format!("cannot read {}: {}", character.display(), e))?;
            let chi = parse_character_file(&chi_src, l).map_err(|e| e.to_string())?;
            let rep = build_stratum_rep(stratum, &chi).map_err(|e| e.to_string())?;
            let outcome = verify_rep(&rep);
            let commutant = commutant_dimension(&rep).map_err(|e| e.to_string())?;
            println!(
                "stratum {}: built dimension-{} representation, verified = {}, commutant = {}",
                stratum.label, rep.dimension, outcome.pass, commutant
            );
            for f in &outcome.failures {
                println!("  relation failure: {}", f);
            }
            write_json(
                &out,
                &json!({
                    "schema_version": REPORT_SCHEMA_VERSION,
                    "stratum": stratum.label,
                    "dimension": rep.dimension,
                    "verified": outcome.pass,
                    "failures": outcome.failures,
                    "commutant_dimension": commutant,
                }),
            )?;
            Ok(if outcome.pass && commutant == 1 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Cmd::Verify { file, l, seed, degree, suite, out } => {
            let parsed = load_file(&file)?;
            let alg = instantiate(&parsed, l)?;
            let mut outcomes = Vec::new();
            let run_ore = suite == "all" || suite == "ore";
            let run_adjoint = suite == "all" || suite == "adjoint";
            if !(run_ore || run_adjoint) {
                return Err(format!("unknown suite '{}'; use all|ore|adjoint", suite));
            }
            if run_ore {
                for name in IDENTITY_NAMES {
                    match identity_check(&alg, name, seed, degree) {
                        Ok(list) => outcomes.extend(list),
                        Err(e) => return Err(format!("suite {}: {}", name, e)),
                    }
                }
            }
            if run_adjoint {
                // The adjoint suite certifies the x_i^l as central witnesses;
                // without that premise it is reported as one failed check
                // rather than an input error.
                if !qsolv_core::orealg::lambda_member(&alg) {
                    outcomes.push(qsolv_core::orealg::CheckOutcome::fail(
                        "adjoint-suite",
                        "some x_i^l is not central at eps; adjoint checks skipped",
                    ));
                } else {
                    for name in PROPERTY_NAMES {
                        match property_check(&alg, name, seed, degree) {
                            Ok(list) => outcomes.extend(list),
                            Err(e) => return Err(format!("suite {}: {}", name, e)),
                        }
                    }
                }
            }
            let mut pass = true;
            for o in &outcomes {
                pass &= o.pass;
                println!(
                    "{}: {}{}",
                    o.name,
                    if o.pass { "pass" } else { "FAIL" },
                    o.detail
                        .as_ref()
                        .map(|d| format!(" ({})", d))
                        .unwrap_or_default()
                );
            }
            println!(
                "{} checks, {} failed",
                outcomes.len(),
                outcomes.iter().filter(|o| !o.pass).count()
            );
            let json_outcomes: Vec<serde_json::Value> = outcomes
                .iter()
                .map(|o| json!({"name": o.name, "pass": o.pass, "detail": o.detail}))
                .collect();
            write_json(
                &out,
                &json!({
                    "schema_version": REPORT_SCHEMA_VERSION,
                    "seed": seed,
                    "degree": degree,
                    "outcomes": json_outcomes,
                }),
            )?;
            Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn parse_l_values(l: Option<u32>, l_range: Option<String>) -> Result<Vec<u32>, String> {
    match (l, l_range) {
        (Some(v), None) => Ok(vec![v]),
        (None, Some(range)) => {
            let parts: Vec<&str> = range.split("..").collect();
            if parts.len() != 2 {
                return Err("l-range must look like A..B".into());
            }
            let a: u32 = parts[0].parse().map_err(|_| "bad range start".to_string())?;
            let b: u32 = parts[1].parse().map_err(|_| "bad range end".to_string())?;
            if a > b || a == 0 {
                return Err("need 0 < A <= B".into());
            }
            Ok((a..=b).collect())
        }
        (Some(_), Some(_)) => Err("give either --l or --l-range, not both".into()),
        (None, None) => Err("one of --l or --l-range is required".into()),
    }
}

fn describe_admissibility(v: &qsolv_core::strat::Admissibility) -> String {
    let mut notes = Vec::new();
    if !v.lambda_member {
        notes.push("x_i^l not central at eps".to_string());
    }
    if !v.minors_coprime {
        if let Some(w) = v.witness_minor {
            notes.push(format!("witness minor {}", w));
        }
    }
    if v.minors_skipped {
        notes.push("minor test skipped (matrix too large)".to_string());
    }
    if !v.skew_coprime {
        if let Some((i, s)) = v.skew_witness {
            notes.push(format!("gcd(l, s_{}) > 1 (s = {})", i, s));
        }
    }
    notes.push(format!("good reduction: {}", v.good_reduction));
    format!(" [{}]", notes.join("; "))
}
