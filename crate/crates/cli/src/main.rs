//! Command-line frontend: construct B_h[g] sets, reduce them along
//! homomorphisms, verify exact multiplicities, print bound tables, replay the
//! embedded reference chains, and search for field presentations.

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bhg_core::algebra::arith::{prime_power_parts, primitive_root_mod};
use bhg_core::algebra::{find_primitive, FieldDescriptor};
use bhg_core::bounds::{bound_table, BoundFamily, BoundRanges, BoundValue};
use bhg_core::constructions::{derksen_set, gt_base, ruzsa_base, singer_generalized, singer_default};
use bhg_core::matchrep::{match_representation, match_representation_gt, MatchResult};
use bhg_core::reduction::{bc_g, gt_g, reduce_set, ruzsa_g};
use bhg_core::reproduce::reproduce;
use bhg_core::verifier::{exact_g, DEFAULT_CAP};
use bhg_core::{BhSet, Error, GroupDescriptor, Homomorphism, Result, VerificationReport};

#[derive(Parser)]
#[command(name = "bhg", version, about = "Construct, reduce, and verify B_h[g] sets in finite abelian groups")]
struct Cli {
    /// Emit JSON instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for the randomized property suites.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Cap on the number of h-multisets the verifier may enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: u128,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a set from one of the finite-field families.
    Construct(ConstructArgs),
    /// Reduce a cyclic-group set modulo N/d.
    Reduce(ReduceArgs),
    /// Measure the exact multiplicity g* of a set.
    Verify(VerifyArgs),
    /// Print a lower-bound table for one bound family.
    Bounds(BoundsArgs),
    /// Replay the embedded reference chains and property suites.
    Reproduce,
    /// Search for a field presentation reproducing a target set.
    Match(MatchArgs),
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Family {
    BoseChowla,
    Ruzsa,
    Gt,
    Singer,
    Derksen,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Form {
    /// The construction's native product or unit group.
    Base,
    /// Transported to Z_N (and reduced when --g is given).
    Modular,
    /// The coset quotient, for singer only.
    Quotient,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Prime power q (bose-chowla, singer).
    #[arg(long)]
    q: Option<u64>,
    /// Prime p (ruzsa, gt, derksen).
    #[arg(long)]
    p: Option<u64>,
    /// Sum length h (bose-chowla, gt); modulus degree for derksen.
    #[arg(long)]
    h: Option<u32>,
    /// Extension degree m over F_q (singer).
    #[arg(long)]
    m: Option<u32>,
    /// Reduction divisor (bose-chowla, ruzsa, gt).
    #[arg(long, default_value_t = 1)]
    g: u64,
    /// Primitive element: "auto" or comma-separated coefficients.
    #[arg(long, default_value = "auto")]
    theta: String,
    /// Defining element for singer: "auto" or comma-separated coefficients.
    #[arg(long, default_value = "auto")]
    beta: String,
    /// Field modulus: "auto" or comma-separated coefficients, constant first.
    #[arg(long, default_value = "auto")]
    modulus: String,
    /// Derksen translate set S, comma-separated residues.
    #[arg(long)]
    s: Option<String>,
    #[arg(long, value_enum, default_value_t = Form::Modular)]
    form: Form,
}

#[derive(Args)]
struct ReduceArgs {
    /// Path to a set JSON, or '-' for stdin.
    #[arg(long)]
    input: String,
    /// Divisor d; Z_N maps onto Z_{N/d}.
    #[arg(long)]
    divisor: u64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Path to a set JSON, or '-' for stdin.
    #[arg(long)]
    input: String,
    /// Gate: exit 1 when the measured g* exceeds this.
    #[arg(long)]
    g: Option<u64>,
}

#[derive(Args)]
struct BoundsArgs {
    /// ruzsa-eq1 | gt-eq2 | bc-eq3 | lindstrom | mo-a | mo-b | mo-c.
    #[arg(long)]
    family: String,
    /// Base parameter values (p, q, or N), comma-separated.
    #[arg(long)]
    base: String,
    /// h values, comma-separated; families with fixed h = 2 ignore this.
    #[arg(long, default_value = "2")]
    h: String,
    /// g values (eq1-eq3, lindstrom) or k values (mo-*), comma-separated.
    #[arg(long, default_value = "1")]
    g: String,
    /// Construct and verify a witness set for each eq1-eq3 row.
    #[arg(long)]
    witnesses: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatchConstruction {
    BoseChowla,
    Gt,
}

#[derive(Args)]
struct MatchArgs {
    #[arg(long, value_enum, default_value_t = MatchConstruction::BoseChowla)]
    construction: MatchConstruction,
    /// Prime power q (bose-chowla).
    #[arg(long)]
    q: Option<u64>,
    /// Prime p (gt).
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    h: u32,
    /// Candidate primitive element coefficients, comma-separated.
    #[arg(long)]
    theta: String,
    /// Target set residues, comma-separated.
    #[arg(long)]
    target: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Construct(args) => {
            let set = construct(args)?;
            print_set(&set, cli.json);
            Ok(ExitCode::SUCCESS)
        }
        Command::Reduce(args) => {
            let set = read_set(&args.input)?;
            let n = cyclic_order(&set)?;
            let phi = Homomorphism::mod_reduction(n, args.divisor)?;
            let reduced = reduce_set(&set, &phi)?;
            print_set(&reduced, cli.json);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(args) => {
            let set = read_set(&args.input)?;
            let report = exact_g(&set, cli.cap)?;
            print_report(&report, cli.json);
            match args.g {
                Some(g) if report.exact_g > g => Ok(ExitCode::from(1)),
                _ => Ok(ExitCode::SUCCESS),
            }
        }
        Command::Bounds(args) => {
            let family: BoundFamily = args.family.parse()?;
            let ranges = BoundRanges {
                base: parse_list(&args.base, "base")?,
                h: parse_list(&args.h, "h")?,
                g: parse_list(&args.g, "g")?,
            };
            let table = bound_table(family, &ranges, args.witnesses);
            if cli.json {
                for r in &table.records {
                    println!("{}", to_json(r));
                }
            } else {
                println!("{:<12} {:<24} {:>10} {:>12} {:>9}", "family", "parameters", "N", "bound", "achieved");
                for r in &table.records {
                    let params = [
                        r.parameters.p.map(|v| format!("p={v}")),
                        r.parameters.q.map(|v| format!("q={v}")),
                        r.parameters.h.map(|v| format!("h={v}")),
                        r.parameters.g.map(|v| format!("g={v}")),
                        r.parameters.k.map(|v| format!("k={v}")),
                    ]
                    .into_iter()
                    .flatten()
                    .collect::<Vec<_>>()
                    .join(" ");
                    let bound = match r.bound_value {
                        BoundValue::Exact(v) => v.to_string(),
                        BoundValue::Approx(v) => format!("{v:.4}"),
                    };
                    let achieved = r.achieved.map(|v| v.to_string()).unwrap_or_else(|| "-".into());
                    println!("{:<12} {:<24} {:>10} {:>12} {:>9}", r.family.name(), params, r.modulus_n, bound, achieved);
                }
            }
            for s in &table.skipped {
                eprintln!("skipped: {s}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Reproduce => {
            let report = reproduce(cli.cap, cli.seed)?;
            if cli.json {
                for c in &report.cases {
                    println!("{}", to_json(c));
                }
                println!(
                    "{}",
                    to_json(&serde_json::json!({
                        "passed": report.passed,
                        "failed": report.failed,
                        "informational": report.informational,
                    }))
                );
            } else {
                for c in &report.cases {
                    println!("{}", c.line());
                }
                println!("{} passed, {} failed, {} informational", report.passed, report.failed, report.informational);
            }
            if report.all_passed() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::Match(args) => {
            let theta = parse_list(&args.theta, "theta")?;
            let target = parse_list(&args.target, "target")?;
            let result = match args.construction {
                MatchConstruction::BoseChowla => {
                    match_representation(require(args.q, "q")?, args.h, &target, &theta)?
                }
                MatchConstruction::Gt => {
                    match_representation_gt(require(args.p, "p")?, args.h, &target, &theta)?
                }
            };
            print_match(&result, cli.json);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn construct(a: &ConstructArgs) -> Result<BhSet> {
    match a.family {
        Family::BoseChowla => {
            let q = require(a.q, "q")?;
            let h = require(a.h, "h")?;
            require_form(a.form, &[Form::Modular])?;
            let (p, k) = prime_power_parts(q)?;
            let ext = match opt_list(&a.modulus, "modulus")? {
                Some(m) => FieldDescriptor::quotient_ring(p, m.len().saturating_sub(1), m)?,
                None => FieldDescriptor::with_default_modulus(p, k as usize * h as usize)?,
            };
            let theta = match opt_list(&a.theta, "theta")? {
                Some(c) => ext.element(&c),
                None => find_primitive(&ext)?,
            };
            bc_g(&ext, q, h, &theta, a.g)
        }
        Family::Ruzsa => {
            let p = require(a.p, "p")?;
            require_form(a.form, &[Form::Base, Form::Modular])?;
            let theta = match opt_list(&a.theta, "theta")? {
                Some(c) if c.len() == 1 => c[0],
                Some(_) => {
                    return Err(Error::InvalidParameter("ruzsa takes a single residue for --theta".into()))
                }
                None => primitive_root_mod(p)?,
            };
            if a.form == Form::Base {
                require_unreduced(a.g, "the base form")?;
                ruzsa_base(p, theta)
            } else {
                ruzsa_g(p, theta, a.g)
            }
        }
        Family::Gt => {
            let p = require(a.p, "p")?;
            let h = require(a.h, "h")?;
            require_form(a.form, &[Form::Base, Form::Modular])?;
            if h < 3 {
                return Err(Error::BadDegree { h: h as u64, min: 3 });
            }
            let ext = match opt_list(&a.modulus, "modulus")? {
                Some(m) => FieldDescriptor::quotient_ring(p, m.len().saturating_sub(1), m)?,
                None => FieldDescriptor::with_default_modulus(p, (h - 1) as usize)?,
            };
            let theta = match opt_list(&a.theta, "theta")? {
                Some(c) => ext.element(&c),
                None => find_primitive(&ext)?,
            };
            if a.form == Form::Base {
                require_unreduced(a.g, "the base form")?;
                gt_base(&ext, p, h, &theta)
            } else {
                gt_g(&ext, p, h, &theta, a.g)
            }
        }
        Family::Singer => {
            let q = require(a.q, "q")?;
            let m = require(a.m, "m")?;
            require_form(a.form, &[Form::Modular, Form::Quotient])?;
            require_unreduced(a.g, "singer")?;
            let auto = a.beta == "auto" && a.modulus == "auto";
            let pair = if auto {
                singer_default(q, m)?
            } else {
                let (p, k) = prime_power_parts(q)?;
                let ext = match opt_list(&a.modulus, "modulus")? {
                    Some(f) => FieldDescriptor::quotient_ring(p, f.len().saturating_sub(1), f)?,
                    None => FieldDescriptor::with_default_modulus(p, k as usize * m as usize)?,
                };
                let beta = match opt_list(&a.beta, "beta")? {
                    Some(c) => ext.element(&c),
                    None => find_primitive(&ext)?,
                };
                singer_generalized(&ext, q, &beta)?
            };
            Ok(if a.form == Form::Quotient { pair.quotient } else { pair.modular })
        }
        Family::Derksen => {
            let p = require(a.p, "p")?;
            require_form(a.form, &[Form::Base, Form::Modular])?;
            require_unreduced(a.g, "derksen")?;
            let s = parse_list(a.s.as_deref().ok_or_else(|| missing("s"))?, "s")?;
            let modulus = match opt_list(&a.modulus, "modulus")? {
                Some(m) => m,
                None => {
                    let h = require(a.h, "h")?;
                    FieldDescriptor::with_default_modulus(p, h as usize)?.modulus
                }
            };
            derksen_set(p, &modulus, &s)
        }
    }
}

fn require<T>(v: Option<T>, what: &str) -> Result<T> {
    v.ok_or_else(|| missing(what))
}

fn missing(what: &str) -> Error {
    Error::InvalidParameter(format!("--{what} is required for this family"))
}

fn require_form(form: Form, allowed: &[Form]) -> Result<()> {
    if allowed.contains(&form) {
        Ok(())
    } else {
        Err(Error::InvalidParameter("this family does not offer the requested --form".into()))
    }
}

fn require_unreduced(g: u64, what: &str) -> Result<()> {
    if g == 1 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{what} does not take a reduction divisor; use the modular form of a reducible family or the reduce subcommand")))
    }
}

fn parse_list(s: &str, what: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|t| t.trim().parse::<u64>())
        .collect::<std::result::Result<Vec<u64>, _>>()
        .map_err(|_| Error::InvalidParameter(format!("--{what} must be a comma-separated list of integers, got '{s}'")))
}

fn opt_list(s: &str, what: &str) -> Result<Option<Vec<u64>>> {
    if s == "auto" {
        Ok(None)
    } else {
        parse_list(s, what).map(Some)
    }
}

fn read_set(path: &str) -> Result<BhSet> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::InvalidParameter(format!("could not read stdin: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidParameter(format!("could not read {path}: {e}")))?
    };
    serde_json::from_str(&text)
        .map_err(|e| Error::InvalidParameter(format!("could not parse set JSON: {e}")))
}

fn cyclic_order(set: &BhSet) -> Result<u64> {
    match set.group {
        GroupDescriptor::Cyclic { n } => Ok(n),
        _ => Err(Error::InvalidParameter("reduce --divisor applies to sets in cyclic groups".into())),
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("report types serialize")
}

fn print_set(set: &BhSet, json: bool) {
    if json {
        println!("{}", to_json(set));
        return;
    }
    println!("group: {}", to_json(&set.group));
    println!("h: {}", set.h);
    println!("claimed_g: {}", set.claimed_g);
    println!("size: {}", set.len());
    let elements = set
        .elements
        .iter()
        .map(to_json)
        .collect::<Vec<_>>()
        .join(" ");
    println!("elements: {elements}");
    if !set.provenance.notes.is_empty() {
        println!("notes: {}", set.provenance.notes.join("; "));
    }
}

fn print_report(report: &VerificationReport, json: bool) {
    if json {
        println!("{}", to_json(report));
        return;
    }
    println!("h: {}", report.h);
    println!("set size: {}", report.set_size);
    println!("group order: {}", report.group_order);
    println!("enumerated: {}", report.multisets_enumerated);
    println!("exact_g: {}", report.exact_g);
    if report.truncated {
        println!("witness list truncated to the first {} targets", report.witnesses.len());
    }
    for w in &report.witnesses {
        let reps = w
            .reps
            .iter()
            .map(to_json)
            .collect::<Vec<_>>()
            .join(" ");
        println!("witness {}: {reps}", to_json(&w.target));
    }
}

fn print_match(result: &MatchResult, json: bool) {
    if json {
        println!("{}", to_json(result));
        return;
    }
    match &result.found {
        Some(field) => println!(
            "found modulus {:?} after {} irreducible candidates ({} with the element primitive)",
            field.modulus, result.tried, result.with_primitive_theta
        ),
        None => println!(
            "no presentation found among {} irreducible candidates ({} with the element primitive)",
            result.tried, result.with_primitive_theta
        ),
    }
}
