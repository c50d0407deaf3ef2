use std::process::ExitCode;
use std::sync::Arc;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use treescale::balloracle::{exhaustive_orbit_count, orbit_count, orbit_count_capped};
use treescale::bmtree::{
    aggregate_scale, inverse_axis, localized_scale, modular, scale, scale_spectrum, symscale_case,
    AxisData, SpectrumMode, DEFAULT_EXPONENT_CAP, DEFAULT_MAX_LEN, DEFAULT_VALUE_CAP,
};
use treescale::groupspec::GroupSpec;
use treescale::sylow::{pi_core, sylow_basis, sylow_subgroup, sylow_subgroup_seeded};
use treescale::verify::run_suite;
use treescale::{Error, Execution, PermGroup};

const EXIT_PRECONDITION: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_VERIFY: u8 = 3;

#[derive(Parser)]
#[command(name = "treescale", version, about = "Scales of universal groups acting on regular trees")]
struct Cli {
    /// Emit JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,

    /// Run data-parallel work on one thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct AxisArgs {
    /// Group spec: sym:k, alt:k, cyclic:k, dihedral:k, trivial:k, sylow:p:<spec>, gens:k:(..);(..) or a file path.
    #[arg(long)]
    group: String,

    /// Axis literal, e.g. "twist=(1 2 3); word=1,4,2".
    #[arg(long)]
    axis: String,
}

#[derive(Subcommand)]
enum Command {
    /// Scale of the element with the given axis.
    Scale(AxisArgs),
    /// Axis of the inverse element.
    Inverse(AxisArgs),
    /// Modular function s(x)/s(x^-1).
    Modular(AxisArgs),
    /// Scale of the same axis over the designated Sylow p-subgroup of F.
    Localscale {
        #[command(flatten)]
        axis: AxisArgs,
        #[arg(long)]
        prime: u64,
    },
    /// Product of the localized scales over all primes (identity twist only).
    Aggregate(AxisArgs),
    /// Scale values, or p-exponents with --prime, for word lengths up to --max-len.
    Spectrum {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = DEFAULT_MAX_LEN)]
        max_len: usize,
        /// Value cap, or exponent cap with --prime.
        #[arg(long)]
        cap: Option<u128>,
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Predicted exponent sets for F = Sym(k).
    Predict {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        prime: u64,
    },
    /// A Sylow p-subgroup, or the pi-core with --pi.
    Sylow {
        #[arg(long)]
        group: String,
        #[arg(long, required_unless_present = "pi", conflicts_with = "pi")]
        prime: Option<u64>,
        /// Comma-separated prime set, e.g. 2,3.
        #[arg(long, value_delimiter = ',')]
        pi: Option<Vec<u64>>,
        /// Shuffle the element scan with this seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// A Sylow basis of a soluble group.
    Basis {
        #[arg(long)]
        group: String,
    },
    /// Ball orbit counts next to the scale formula.
    Oracle {
        #[command(flatten)]
        axis: AxisArgs,
        /// Power m of the translation.
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Ball depth cap for the counting oracle.
        #[arg(long)]
        depth_cap: Option<usize>,
    },
    /// Run the acceptance battery.
    Verify {
        /// all, spectrum, oracle, sylow, diagnostic, or one item such as c07.
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

fn group_of(spec: &str) -> treescale::Result<PermGroup> {
    spec.parse::<GroupSpec>()?.resolve()
}

fn axis_of(args: &AxisArgs) -> treescale::Result<AxisData> {
    let group = Arc::new(group_of(&args.group)?);
    AxisData::parse(&args.axis, group)
}

fn gens_text(g: &PermGroup) -> Vec<String> {
    g.generators().iter().map(|p| p.to_string()).collect()
}

fn emit<T: Serialize>(json: bool, report: &T, text: impl FnOnce() -> String) -> anyhow::Result<String> {
    if json {
        serde_json::to_string(report).context("serialising report")
    } else {
        Ok(text())
    }
}

#[derive(Serialize)]
struct ValueReport {
    command: &'static str,
    group: String,
    axis: String,
    value: String,
    paper_ref: &'static str,
}

#[derive(Serialize)]
struct SpectrumReport {
    mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    prime: Option<u64>,
    max_len: usize,
    cap: u128,
    truncated: bool,
    entries: Vec<u128>,
    paper_ref: &'static str,
}

#[derive(Serialize)]
struct PredictReport {
    k: usize,
    prime: u64,
    localized: String,
    ambient: String,
    paper_ref: &'static str,
}

#[derive(Serialize)]
struct GroupReport {
    group: String,
    order: u128,
    generators: Vec<String>,
}

#[derive(Serialize)]
struct SylowReport {
    group: String,
    prime: Option<u64>,
    pi: Option<Vec<u64>>,
    subgroup: GroupReport,
    paper_ref: &'static str,
}

#[derive(Serialize)]
struct BasisMember {
    prime: u64,
    order: u128,
    generators: Vec<String>,
}

#[derive(Serialize)]
struct BasisReport {
    group: String,
    members: Vec<BasisMember>,
    paper_ref: &'static str,
}

#[derive(Serialize)]
struct OracleReport {
    group: String,
    axis: String,
    m: usize,
    formula: String,
    orbit_count: String,
    exhaustive: Option<String>,
    paper_ref: &'static str,
}

#[derive(Serialize)]
struct VerifyItem {
    name: &'static str,
    passed: bool,
    label: &'static str,
    detail: String,
}

#[derive(Serialize)]
struct VerifyReport {
    suite: String,
    passed: bool,
    items: Vec<VerifyItem>,
}

fn value_report(cmd: &'static str, args: &AxisArgs, value: String, paper_ref: &'static str) -> ValueReport {
    ValueReport {
        command: cmd,
        group: args.group.clone(),
        axis: args.axis.clone(),
        value,
        paper_ref,
    }
}

fn render_set(entries: &[u128]) -> String {
    let parts: Vec<String> = entries.iter().map(|e| e.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// Runs one command, returning its standard output and exit status.
fn run(cli: Cli) -> anyhow::Result<(String, u8)> {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let json = cli.json;
    let out = match cli.command {
        Command::Scale(args) => {
            let v = scale(&axis_of(&args)?)?.to_string();
            let r = value_report("scale", &args, v.clone(), "scale as a product of suborbit lengths");
            emit(json, &r, || v)?
        }
        Command::Inverse(args) => {
            let inv = inverse_axis(&axis_of(&args)?)?.to_string();
            let r = value_report("inverse", &args, inv.clone(), "axis data of the inverse element");
            emit(json, &r, || inv)?
        }
        Command::Modular(args) => {
            let v = modular(&axis_of(&args)?)?.to_string();
            let r = value_report("modular", &args, v.clone(), "modular function as a ratio of scales");
            emit(json, &r, || v)?
        }
        Command::Localscale { axis, prime } => {
            let v = localized_scale(&axis_of(&axis)?, prime)?.to_string();
            let r = value_report("localscale", &axis, v.clone(), "scale over the Sylow local action");
            emit(json, &r, || v)?
        }
        Command::Aggregate(args) => {
            let v = aggregate_scale(&axis_of(&args)?)?.to_string();
            let r = value_report("aggregate", &args, v.clone(), "product of localized scales");
            emit(json, &r, || v)?
        }
        Command::Spectrum {
            group,
            max_len,
            cap,
            prime,
        } => {
            let g = group_of(&group)?;
            let (mode, default_cap) = match prime {
                Some(p) => (SpectrumMode::Exponents(p), DEFAULT_EXPONENT_CAP),
                None => (SpectrumMode::Values, DEFAULT_VALUE_CAP),
            };
            let spec = scale_spectrum(&g, max_len, mode, cap.unwrap_or(default_cap), exec)?;
            let entries: Vec<u128> = spec.entries.iter().copied().collect();
            let r = SpectrumReport {
                mode: if prime.is_some() { "exponents" } else { "values" },
                prime,
                max_len,
                cap: spec.cap,
                truncated: spec.truncated,
                entries,
                paper_ref: "scale values over all single-twist axes",
            };
            emit(json, &r, || {
                let mut line = render_set(&r.entries);
                if r.truncated {
                    line.push_str(&format!(" (truncated at cap {})", r.cap));
                }
                line
            })?
        }
        Command::Predict { k, prime } => {
            let case = symscale_case(k, prime)?;
            let r = PredictReport {
                k,
                prime,
                localized: case.localized.to_string(),
                ambient: case.ambient.to_string(),
                paper_ref: "exponent sets for the symmetric local action",
            };
            emit(json, &r, || case.to_string())?
        }
        Command::Sylow {
            group,
            prime,
            pi,
            seed,
        } => {
            let g = group_of(&group)?;
            let sub = match (&pi, prime, seed) {
                (Some(pi), _, _) => pi_core(&g, pi)?,
                (None, Some(p), Some(s)) => sylow_subgroup_seeded(&g, p, s)?,
                (None, Some(p), None) => sylow_subgroup(&g, p)?,
                (None, None, _) => unreachable!("clap requires --prime or --pi"),
            };
            let label = if pi.is_some() { "pi-core" } else { "Sylow subgroup" };
            let r = SylowReport {
                group,
                prime,
                pi,
                subgroup: GroupReport {
                    group: sub.to_string(),
                    order: sub.order(),
                    generators: gens_text(&sub),
                },
                paper_ref: label,
            };
            emit(json, &r, || format!("order {}: {}", sub.order(), sub))?
        }
        Command::Basis { group } => {
            let g = group_of(&group)?;
            let basis = sylow_basis(&g)?;
            let members: Vec<BasisMember> = basis
                .members()
                .iter()
                .map(|(&p, m)| BasisMember {
                    prime: p,
                    order: m.order(),
                    generators: gens_text(m),
                })
                .collect();
            let r = BasisReport {
                group,
                members,
                paper_ref: "pairwise permutable Sylow subgroups",
            };
            emit(json, &r, || {
                basis
                    .members()
                    .iter()
                    .map(|(p, m)| format!("{p}: order {} {}", m.order(), m))
                    .collect::<Vec<_>>()
                    .join("\n")
            })?
        }
        Command::Oracle { axis, m, depth_cap } => {
            let a = axis_of(&axis)?;
            let s = scale(&a)?;
            let formula = s
                .checked_pow(m as u32)
                .ok_or(Error::Overflow("scale power"))?;
            let count = match depth_cap {
                Some(cap) => orbit_count_capped(&a, m, cap)?,
                None => orbit_count(&a, m)?,
            };
            let exhaustive = if m == 1 {
                match exhaustive_orbit_count(&a) {
                    Ok(v) => Some(v.to_string()),
                    Err(Error::CapExceeded(_)) => None,
                    Err(e) => return Err(e.into()),
                }
            } else {
                None
            };
            let r = OracleReport {
                group: axis.group.clone(),
                axis: axis.axis.clone(),
                m,
                formula: formula.to_string(),
                orbit_count: count.to_string(),
                exhaustive,
                paper_ref: "orbit of the ball under the edge stabiliser",
            };
            emit(json, &r, || {
                format!(
                    "formula={} orbit_count={} exhaustive={}",
                    r.formula,
                    r.orbit_count,
                    r.exhaustive.as_deref().unwrap_or("n/a")
                )
            })?
        }
        Command::Verify { suite } => {
            let outcomes = run_suite(&suite, exec)?;
            let passed = outcomes.iter().all(|o| o.passed);
            let r = VerifyReport {
                suite,
                passed,
                items: outcomes
                    .into_iter()
                    .map(|o| VerifyItem {
                        name: o.name,
                        passed: o.passed,
                        label: o.label,
                        detail: o.detail,
                    })
                    .collect(),
            };
            let text = emit(json, &r, || {
                r.items
                    .iter()
                    .map(|i| {
                        let tag = if i.passed { "PASS" } else { "FAIL" };
                        format!("{tag} {} [{}] {}", i.name, i.label, i.detail)
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            })?;
            return Ok((text, if passed { 0 } else { EXIT_VERIFY }));
        }
    };
    Ok((out, 0))
}

fn exit_code(e: &anyhow::Error) -> (u8, &'static str) {
    match e.downcast_ref::<Error>() {
        Some(Error::Parse(_) | Error::PointOutOfRange { .. } | Error::DegreeMismatch { .. }) => {
            (EXIT_PARSE, "parse")
        }
        _ => (EXIT_PRECONDITION, "precondition"),
    }
}

/// Parses arguments and runs; `Ok` carries stdout and exit status, `Err`
/// the one-line `error<TAB>kind<TAB>reason` diagnostic and exit status.
fn execute<I, T>(args: I) -> Result<(String, u8), (String, u8)>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| {
        let msg = e.to_string();
        let head = msg.split("\n\nUsage").next().unwrap_or("");
        let line = head.trim_start_matches("error: ").split_whitespace().collect::<Vec<_>>().join(" ");
        (format!("error\tparse\t{line}"), EXIT_PARSE)
    })?;
    run(cli).map_err(|e| {
        let (code, kind) = exit_code(&e);
        let msg = format!("{e:#}").split_whitespace().collect::<Vec<_>>().join(" ");
        (format!("error\t{kind}\t{msg}"), code)
    })
}

fn main() -> ExitCode {
    // Help and version go through clap's own printer.
    if let Err(e) = Cli::try_parse() {
        if !e.use_stderr() {
            e.exit();
        }
    }
    match execute(std::env::args_os()) {
        Ok((out, code)) => {
            println!("{out}");
            ExitCode::from(code)
        }
        Err((line, code)) => {
            eprintln!("{line}");
            ExitCode::from(code)
        }
    }
}
