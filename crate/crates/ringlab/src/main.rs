//! Command-line interface: decide the primary property for one
//! configuration, enumerate witness sets across an ideal lattice, verify
//! the whole fact catalog, or hunt for counterexamples with a seeded
//! random search. All machine output is a single JSON document on
//! standard output; diagnostics go to standard error.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ringlab::{
    build_ring, emit_expansion, emit_ideal, emit_mult_set, emit_reduction, emit_ring_desc,
    parse_expansion, parse_ideal, parse_mult_set, parse_reduction, parse_ring_desc,
};
use ringlab::{
    hunt, is_phi_delta_s_primary, parse_check_config, run_checks, token_to_value, CheckConfig,
    Counterexample, Ideal, LocalizedRing, RunReport,
};
use ringlab::{ExpansionFn, MultSet, ReductionFn, Ring, RingDesc};

#[derive(Parser)]
#[command(
    name = "ringlab",
    about = "Workbench for generalized primary ideals in finite commutative rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide which elements of S witness that the ideal is primary.
    Check(CheckArgs),
    /// List every proper ideal disjoint from S with its witness set.
    Enumerate(EnumerateArgs),
    /// Run the fact catalog over a configuration file (default config
    /// when the file is omitted).
    Verify(VerifyArgs),
    /// Search random configurations for violations, shrinking any find.
    Hunt(HuntArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// Ring literal, e.g. '{"type":"zmod","n":12}'.
    #[arg(long)]
    ring: String,
    /// Ideal literal, e.g. '{"gens":[4]}'.
    #[arg(long)]
    ideal: String,
    /// Reduction literal, e.g. empty, zero, '{"power":2}', omega, identity.
    #[arg(long)]
    phi: String,
    /// Expansion literal, e.g. identity, radical, '{"plus":{"gens":[6]}}'.
    #[arg(long)]
    delta: String,
    /// Multiplicative-set literal: the closure of '{"gens":[...]}' and 1.
    #[arg(long)]
    s: String,
    /// Replace S by its saturation before deciding.
    #[arg(long)]
    saturate: bool,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Ring literal, e.g. '{"type":"zmod","n":12}'.
    #[arg(long)]
    ring: String,
    /// Reduction literal, e.g. empty, zero, '{"power":2}', omega, identity.
    #[arg(long)]
    phi: String,
    /// Expansion literal, e.g. identity, radical, '{"plus":{"gens":[6]}}'.
    #[arg(long)]
    delta: String,
    /// Multiplicative-set literal: the closure of '{"gens":[...]}' and 1.
    #[arg(long)]
    s: String,
    /// Replace S by its saturation before enumerating.
    #[arg(long)]
    saturate: bool,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Configuration file (JSON). Omit to run the default configuration.
    config: Option<PathBuf>,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct HuntArgs {
    /// Seed for the reproducible random search.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of random configurations to sample.
    #[arg(long, default_value_t = 100)]
    budget: u64,
    /// Largest ring order to sample.
    #[arg(long, default_value_t = 24)]
    max_order: usize,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Check(args) => cmd_check(&args),
        Command::Enumerate(args) => cmd_enumerate(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Hunt(args) => cmd_hunt(&args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

/// The ring, maps, and multiplicative set shared by check and enumerate.
struct Configuration {
    desc: RingDesc,
    ring: Ring,
    phi: ReductionFn,
    delta: ExpansionFn,
    s: MultSet,
}

fn parse_configuration(
    ring: &str,
    phi: &str,
    delta: &str,
    s: &str,
    saturate: bool,
) -> Result<Configuration, String> {
    let desc = parse_ring_desc(&token_to_value(ring)).map_err(|e| e.to_string())?;
    let ring = build_ring(&desc).map_err(|e| e.to_string())?;
    let phi = parse_reduction(&token_to_value(phi)).map_err(|e| e.to_string())?;
    let delta = parse_expansion(&ring, &token_to_value(delta)).map_err(|e| e.to_string())?;
    let mut s = parse_mult_set(&ring, &token_to_value(s)).map_err(|e| e.to_string())?;
    if saturate {
        let localized = LocalizedRing::build(&ring, &s).map_err(|e| e.to_string())?;
        s = localized.saturation();
    }
    Ok(Configuration {
        desc,
        ring,
        phi,
        delta,
        s,
    })
}

fn config_echo(cfg: &Configuration) -> Value {
    json!({
        "ring": emit_ring_desc(&cfg.desc),
        "phi": emit_reduction(&cfg.phi).expect("parsed reductions have literal forms"),
        "delta": emit_expansion(&cfg.delta).expect("parsed expansions have literal forms"),
        "s": emit_mult_set(&cfg.s),
    })
}

fn compact(value: &Value) -> String {
    serde_json::to_string(value).expect("JSON values serialize")
}

/// Write to standard output, exiting with the conventional broken-pipe
/// status instead of panicking when the reader has gone away (e.g. when
/// the output is piped into `head`).
fn emit(text: &str) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    if stdout
        .write_all(text.as_bytes())
        .and_then(|()| stdout.flush())
        .is_err()
    {
        std::process::exit(141);
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn counterexample_text(ce: &Counterexample, out: &mut String) {
    let _ = writeln!(out, "counterexample: s={}, a={}, b={}", ce.s, ce.a, ce.b);
    let _ = writeln!(
        out,
        "  a*b = {} (in ideal: {}, in reduction image: {})",
        ce.ab,
        yes_no(ce.ab_in_ideal),
        yes_no(ce.ab_in_phi_image),
    );
    let _ = writeln!(
        out,
        "  s*a = {} (in ideal: {})",
        ce.sa,
        yes_no(ce.sa_in_ideal),
    );
    let _ = writeln!(
        out,
        "  s*b = {} (in expansion image: {})",
        ce.sb,
        yes_no(ce.sb_in_delta_image),
    );
}

fn cmd_check(args: &CheckArgs) -> Result<u8, String> {
    let cfg = parse_configuration(&args.ring, &args.phi, &args.delta, &args.s, args.saturate)?;
    let ideal = parse_ideal(&cfg.ring, &token_to_value(&args.ideal)).map_err(|e| e.to_string())?;
    if !ideal.is_proper() {
        return Err("ideal not proper".to_string());
    }
    if !cfg.s.disjoint_from(&ideal) {
        return Err("ideal meets the multiplicative set".to_string());
    }
    let report =
        is_phi_delta_s_primary(&ideal, &cfg.phi, &cfg.delta, &cfg.s).map_err(|e| e.to_string())?;
    match args.format {
        Format::Json => {
            let mut doc = config_echo(&cfg);
            doc["ideal"] = emit_ideal(&ideal);
            doc["holds"] = json!(report.holds);
            doc["witnesses"] = json!(report.witnesses);
            doc["counterexample"] =
                serde_json::to_value(&report.counterexample).expect("counterexamples serialize");
            emit(&format!(
                "{}\n",
                serde_json::to_string_pretty(&doc).expect("document serializes")
            ));
        }
        Format::Text => {
            let mut out = String::new();
            let echo = config_echo(&cfg);
            let _ = writeln!(out, "ring: {}", compact(&echo["ring"]));
            let _ = writeln!(out, "ideal: {}", compact(&emit_ideal(&ideal)));
            let _ = writeln!(out, "phi: {}", compact(&echo["phi"]));
            let _ = writeln!(out, "delta: {}", compact(&echo["delta"]));
            let _ = writeln!(out, "s: {}", compact(&echo["s"]));
            let _ = writeln!(out, "primary: {}", yes_no(report.holds));
            let _ = writeln!(out, "witnesses: {:?}", report.witnesses);
            if let Some(ce) = &report.counterexample {
                counterexample_text(ce, &mut out);
            }
            emit(&out);
        }
    }
    Ok(0)
}

fn cmd_enumerate(args: &EnumerateArgs) -> Result<u8, String> {
    let cfg = parse_configuration(&args.ring, &args.phi, &args.delta, &args.s, args.saturate)?;
    let mut rows: Vec<(Ideal, Vec<usize>)> = Vec::new();
    for ideal in Ideal::enumerate_proper(&cfg.ring) {
        if !cfg.s.disjoint_from(&ideal) {
            continue;
        }
        let report = is_phi_delta_s_primary(&ideal, &cfg.phi, &cfg.delta, &cfg.s)
            .map_err(|e| e.to_string())?;
        rows.push((ideal, report.witnesses));
    }
    match args.format {
        Format::Json => {
            let mut doc = config_echo(&cfg);
            doc["ideals"] = Value::Array(
                rows.iter()
                    .map(|(ideal, witnesses)| {
                        json!({"ideal": emit_ideal(ideal), "witnesses": witnesses})
                    })
                    .collect(),
            );
            emit(&format!(
                "{}\n",
                serde_json::to_string_pretty(&doc).expect("document serializes")
            ));
        }
        Format::Text => {
            let mut out = String::new();
            let echo = config_echo(&cfg);
            let _ = writeln!(
                out,
                "ring {} under phi {}, delta {}, s {}",
                compact(&echo["ring"]),
                compact(&echo["phi"]),
                compact(&echo["delta"]),
                compact(&echo["s"]),
            );
            let _ = writeln!(out, "proper ideals disjoint from s: {}", rows.len());
            for (ideal, witnesses) in &rows {
                let _ = writeln!(
                    out,
                    "{} -> witnesses {:?}",
                    compact(&emit_ideal(ideal)),
                    witnesses,
                );
            }
            emit(&out);
        }
    }
    Ok(0)
}

fn verdict(report: &RunReport) -> &'static str {
    match report.exit_code() {
        0 => "clean",
        2 => "violations found",
        _ => "vacuous",
    }
}

fn render_run(report: &RunReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut doc = serde_json::to_value(report).expect("reports serialize");
            doc["verdict"] = json!(verdict(report));
            format!(
                "{}\n",
                serde_json::to_string_pretty(&doc).expect("document serializes")
            )
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "seed {}", report.seed);
            for check in &report.checks {
                let skipped: u64 = check.skipped.values().sum();
                let _ = writeln!(
                    out,
                    "check {}: examined {}, skipped {}, violations {} ({} ms)",
                    check.id,
                    check.examined,
                    skipped,
                    check.violations.len(),
                    check.elapsed.as_millis(),
                );
                for note in &check.notes {
                    let _ = writeln!(out, "  note: {note}");
                }
                for violation in &check.violations {
                    let _ = writeln!(
                        out,
                        "  violation configuration: {}",
                        compact(&violation.configuration),
                    );
                    let _ = writeln!(
                        out,
                        "  counterexample: {}",
                        compact(&violation.counterexample),
                    );
                }
            }
            if !report.vacuous.is_empty() {
                let _ = writeln!(out, "vacuous checks: {}", report.vacuous.join(", "));
            }
            let _ = writeln!(
                out,
                "total: examined {}, violations {}",
                report.examined, report.violations,
            );
            let _ = writeln!(out, "verdict: {}", verdict(report));
            out
        }
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<u8, String> {
    let cfg = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            let value: Value =
                serde_json::from_str(&text).map_err(|e| format!("configuration: {e}"))?;
            parse_check_config(&value).map_err(|e| e.to_string())?
        }
        None => CheckConfig::default(),
    };
    let report = run_checks(&cfg).map_err(|e| e.to_string())?;
    emit(&render_run(&report, args.format));
    Ok(report.exit_code() as u8)
}

fn cmd_hunt(args: &HuntArgs) -> Result<u8, String> {
    let cfg = CheckConfig {
        seed: args.seed,
        budget: args.budget,
        ..CheckConfig::default()
    };
    let report = hunt(&cfg, args.max_order).map_err(|e| e.to_string())?;
    emit(&render_run(&report, args.format));
    Ok(report.exit_code() as u8)
}
