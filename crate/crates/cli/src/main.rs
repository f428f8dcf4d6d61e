//! `locmod`: single computations and verification campaigns.
//!
//! Exit codes: 0 success, 1 a case failed, 2 usage error, 3 budget exceeded.

use std::fmt::Write as _;
use std::io::{self, Write as _};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use locmod::campaigns::{self, CampaignOptions, DEFAULT_SEED};
use locmod::config::{Budgets, BUDGET_ENV};
use locmod::lattice_model::{stratify, PiModule};
use locmod::matrix_schemes::{
    dcp_generic_ideal, dcp_special_ideal, e2_ideal, naive_special_ideal, EigenvalueData, SchemeIdeal,
};
use locmod::multiplicities::{nearby_cycle_multiplicity, tensor_minuscule_decompose, verify_tensor_vs_kostka};
use locmod::orbits::{jordan_matrix, springer_fiber_count, PartialFlagSpec};
use locmod::partitions::{
    enumerate_strata, generic_fiber_dim, kostka_foulkes, kostka_number, r_min, s_max, special_fiber_dim, Partition,
};
use locmod::polyring::{Field, FieldKind, PrimeField};
use locmod::report::{CaseStatus, VerificationReport};
use locmod::with_field;

#[derive(Parser)]
#[command(name = "locmod", version, about = "Exact computations for local models of GL_d")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Global {
    /// Emit JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Resource limits as `key=value` pairs: spairs, terms, enumeration.
    #[arg(long, global = true, value_name = "SPEC")]
    budget: Option<String>,
    /// Seed for sampled properties.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Smaller parameter ranges.
    #[arg(long, global = true)]
    quick: bool,
    /// Record wall-clock times (output is then no longer reproducible).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// List S⁰(r, e, d) in descending order.
    Strata(Red),
    /// Special- and generic-fiber dimensions.
    Dims {
        #[command(flatten)]
        red: Red,
        /// Shape of the generic fiber; defaults to r_min(r, e).
        #[arg(long)]
        rvec: Option<Partition>,
    },
    /// Kostka number K_{λ,μ}.
    Kostka {
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        mu: Partition,
    },
    /// Kostka–Foulkes polynomial K_{λ,μ}(q).
    KostkaFoulkes {
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        mu: Partition,
    },
    /// Generators of a matrix-scheme ideal with provenance tags.
    EmitIdeal(EmitIdeal),
    /// Diagonal restriction of the nilpotent ideal against the closed formula.
    VerifyCoinvariant {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        e: u32,
        #[arg(long, default_value = "q")]
        field: FieldKind,
    },
    /// The S-operator ideal equals the characteristic-polynomial ideal.
    VerifyDcpLemma {
        #[arg(long)]
        r: u32,
        #[arg(long, default_value = "q")]
        field: FieldKind,
    },
    /// Entries of A^e lie in (σ_1, …, σ_r) when r ≤ e.
    VerifyKostant {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        e: Option<u32>,
        #[arg(long, default_value = "q")]
        field: FieldKind,
    },
    /// Minuscule tensor decomposition against Kostka numbers.
    VerifyTensorKostka {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        rvec: Partition,
    },
    /// Count partial flags compatible with a nilpotent of Jordan type s.
    SpringerCount {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        s: Partition,
        #[arg(long)]
        rvec: Partition,
    },
    /// Stratify the Π-stable r-dimensional subspaces of ⊕ k[Π]/Π^{e_i}.
    LatticeStratify {
        #[arg(long)]
        p: u64,
        /// Exponents e_1, e_2, … of the blocks.
        #[arg(long, value_delimiter = ',', required = true)]
        exponents: Vec<u32>,
        #[arg(long)]
        r: usize,
    },
    /// Multiplicities of V(λ) in the minuscule tensor product.
    Multiplicities {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        rvec: Partition,
    },
    /// Run every campaign.
    VerifyAll,
}

#[derive(Args)]
struct Red {
    #[arg(long)]
    r: u32,
    #[arg(long)]
    e: u32,
    #[arg(long)]
    d: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum IdealKind {
    /// A^e = 0 and characteristic polynomial T^r.
    Naive,
    /// Nilpotent ideal for a shape rvec.
    DcpSpecial,
    /// Generic-fiber ideal for given eigenvalues.
    DcpGeneric,
    /// A² = 0 with rank bound r2.
    E2,
}

#[derive(Args)]
struct EmitIdeal {
    #[arg(long, value_enum)]
    kind: IdealKind,
    #[arg(long, default_value = "q")]
    field: FieldKind,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    e: Option<u32>,
    #[arg(long)]
    rvec: Option<Partition>,
    /// `value:multiplicity` pairs, e.g. `0:2,1:1`.
    #[arg(long, value_delimiter = ',')]
    eigenvalues: Vec<String>,
    #[arg(long)]
    r1: Option<usize>,
    #[arg(long)]
    r2: Option<usize>,
}

/// Appends a line to the output buffer.
macro_rules! outln {
    ($out:expr, $($arg:tt)*) => {
        writeln!($out, $($arg)*).expect("writing to a String")
    };
}

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let mut out = String::new();
    let result = run(cli, &mut out);
    if let Err(e) = io::stdout().lock().write_all(out.as_bytes()) {
        if e.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_FAIL);
        }
    }
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            let code = match err.downcast_ref::<locmod::Error>() {
                Some(e) if e.is_budget() => EXIT_BUDGET,
                Some(locmod::Error::Range(_) | locmod::Error::Parse(_) | locmod::Error::Distinctness) => EXIT_USAGE,
                Some(locmod::Error::SizeMismatch { .. }) => EXIT_USAGE,
                _ => EXIT_FAIL,
            };
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli, out: &mut String) -> anyhow::Result<ExitCode> {
    let g = cli.global;
    let mut budgets = Budgets::from_env().with_context(|| format!("reading {BUDGET_ENV}"))?;
    if let Some(spec) = &g.budget {
        budgets = budgets.overridden_by(spec)?;
    }
    let opts = CampaignOptions { budgets, seed: g.seed, quick: g.quick, timings: g.timings };
    match cli.command {
        Command::Strata(Red { r, e, d }) => {
            let strata = enumerate_strata(r, e, d)?;
            if g.json {
                print_json(out, &strata.members)?;
            } else {
                for s in &strata.members {
                    outln!(out, "{s}");
                }
            }
        }
        Command::Dims { red: Red { r, e, d }, rvec } => {
            let rvec = rvec.unwrap_or_else(|| r_min(r, e));
            let special = special_fiber_dim(r, e, d)?;
            let generic = generic_fiber_dim(&rvec, d)?;
            let value = json!({
                "r": r.to_string(), "e": e.to_string(), "d": d.to_string(),
                "s_max": s_max(r, e),
                "special_fiber_dim": special.to_string(),
                "rvec": rvec,
                "generic_fiber_dim": generic.to_string(),
                "equal": special == generic,
            });
            if g.json {
                print_json(out, &value)?;
            } else {
                outln!(out, "special fiber  s_max={}  dim {special}", s_max(r, e));
                outln!(out, "generic fiber  rvec={rvec}  dim {generic}");
                outln!(out, "{}", if special == generic { "equal" } else { "differ" });
            }
        }
        Command::Kostka { lambda, mu } => {
            let k = kostka_number(&lambda, &mu)?;
            emit(out, &g, &json!({ "lambda": lambda, "mu": mu, "kostka": k.to_string() }), &k.to_string())?;
        }
        Command::KostkaFoulkes { lambda, mu } => {
            let k = kostka_foulkes(&lambda, &mu)?;
            let coeffs: Vec<String> = k.coeffs().iter().map(i64::to_string).collect();
            let value = json!({ "lambda": lambda, "mu": mu, "coefficients": coeffs, "polynomial": k.to_string() });
            emit(out, &g, &value, &k.to_string())?;
        }
        Command::EmitIdeal(args) => {
            let json = with_field!(args.field, |f| build_ideal(&args, f).map(|i| i.to_json()))?;
            if g.json {
                print_json(out, &json)?;
            } else {
                let tags = json.annotations.clone().unwrap_or_default();
                for (gen, tag) in json.generators.iter().zip(tags) {
                    outln!(out, "{gen}    [{tag}]");
                }
            }
        }
        Command::VerifyCoinvariant { r, e, field } => {
            let case = campaigns::coinvariant_case(r, e, field, &budgets);
            return finish(out, &g, VerificationReport::new("coinvariant", &budgets, vec![case]));
        }
        Command::VerifyDcpLemma { r, field } => {
            let case = campaigns::dcp_lemma_case(r, field, &budgets);
            return finish(out, &g, VerificationReport::new("dcp-lemma", &budgets, vec![case]));
        }
        Command::VerifyKostant { r, e, field } => {
            let case = campaigns::kostant_case(r, e.unwrap_or(r), field, &budgets);
            return finish(out, &g, VerificationReport::new("kostant", &budgets, vec![case]));
        }
        Command::VerifyTensorKostka { d, rvec } => {
            return finish(out, &g, verify_tensor_vs_kostka(d, &rvec)?);
        }
        Command::SpringerCount { p, s, rvec } => {
            let start = Instant::now();
            let a = jordan_matrix(&s, &PrimeField::new(p)?);
            let n = springer_fiber_count(&a, &PartialFlagSpec::new(rvec), budgets.max_enumeration)?;
            let mut value = json!({ "count": n.count.to_string(), "flags_enumerated": n.flags_enumerated.to_string() });
            if g.timings {
                value["elapsed_ms"] = json!(start.elapsed().as_millis().to_string());
            }
            emit(out, &g, &value, &n.count.to_string())?;
        }
        Command::LatticeStratify { p, exponents, r } => {
            let w = PiModule::new(PrimeField::new(p)?, exponents)?;
            let strata = stratify(&w, r, budgets.max_enumeration)?;
            let total: u64 = strata.values().sum();
            let rows: Vec<_> = strata
                .iter()
                .rev()
                .map(|(s, n)| json!({ "partition": s, "count": n.to_string() }))
                .collect();
            if g.json {
                print_json(out, &json!({ "total": total.to_string(), "strata": rows }))?;
            } else {
                for (s, n) in strata.iter().rev() {
                    outln!(out, "{s}\t{n}");
                }
                outln!(out, "total\t{total}");
            }
        }
        Command::Multiplicities { d, rvec } => {
            let table = tensor_minuscule_decompose(d, &rvec)?;
            let rows = table
                .descending()
                .into_iter()
                .map(|(lambda, m)| {
                    // strata are labelled by the dual of the weight
                    let nearby = nearby_cycle_multiplicity(&lambda.dual(), &rvec)?;
                    let kf = kostka_foulkes(&lambda.dual(), &rvec)?;
                    Ok(Row { lambda: lambda.clone(), multiplicity: m.to_string(), nearby: nearby.multiplicity.to_string(), kostka_foulkes: kf.to_string() })
                })
                .collect::<locmod::Result<Vec<_>>>()?;
            if g.json {
                print_json(out, &json!({ "d": d.to_string(), "rvec": rvec, "entries": rows }))?;
            } else {
                for r in &rows {
                    outln!(out, "{}\t{}\t{}", r.lambda, r.multiplicity, r.kostka_foulkes);
                }
            }
        }
        Command::VerifyAll => return finish(out, &g, campaigns::verify_all(&opts)),
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct Row {
    lambda: Partition,
    multiplicity: String,
    nearby: String,
    kostka_foulkes: String,
}

fn build_ideal<F: Field>(a: &EmitIdeal, field: F) -> anyhow::Result<SchemeIdeal<F>> {
    let need = |v: Option<usize>, name: &str| v.with_context(|| format!("--{name} is required for this kind"));
    Ok(match a.kind {
        IdealKind::Naive => naive_special_ideal(need(a.r, "r")?, a.e.context("--e is required for this kind")?, field)?,
        IdealKind::DcpSpecial => {
            let rvec = a.rvec.clone().context("--rvec is required for this kind")?;
            dcp_special_ideal(a.r.unwrap_or(rvec.size() as usize), &rvec, field)?
        }
        IdealKind::DcpGeneric => {
            if a.eigenvalues.is_empty() {
                bail!(locmod::Error::Parse("--eigenvalues is required for this kind".into()));
            }
            let pairs = a
                .eigenvalues
                .iter()
                .map(|s| {
                    let (v, m) = s.split_once(':').unwrap_or((s, "1"));
                    let parse = |t: &str| t.trim().parse().map_err(|_| locmod::Error::Parse(format!("bad eigenvalue {s:?}")));
                    Ok((parse(v)?, parse(m)? as u32))
                })
                .collect::<locmod::Result<Vec<(i64, u32)>>>()?;
            dcp_generic_ideal(&EigenvalueData::from_integers(&field, &pairs)?, field)?
        }
        IdealKind::E2 => e2_ideal(need(a.r1, "r1")?, need(a.r2, "r2")?, field)?,
    })
}

fn print_json<T: Serialize>(out: &mut String, v: &T) -> anyhow::Result<()> {
    outln!(out, "{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn emit<T: Serialize>(out: &mut String, g: &Global, v: &T, text: &str) -> anyhow::Result<()> {
    if g.json {
        print_json(out, v)
    } else {
        outln!(out, "{text}");
        Ok(())
    }
}

fn finish(out: &mut String, g: &Global, report: VerificationReport) -> anyhow::Result<ExitCode> {
    if g.json {
        print_json(out, &report)?;
    } else {
        for c in &report.cases {
            let status = match c.status {
                CaseStatus::Pass => "pass",
                CaseStatus::Fail => "FAIL",
                CaseStatus::BudgetExceeded => "BUDGET",
            };
            outln!(out, "{status:6} {}  expected {}  computed {}", c.name, c.expected.value, c.computed);
            if let (false, Some(note)) = (c.passed(), &c.note) {
                outln!(out, "       {note}");
            }
        }
        let failed = report.failures().count();
        outln!(out, "{}: {} cases, {failed} not passing", report.campaign, report.cases.len());
    }
    let code = if report.cases.iter().any(|c| c.status == CaseStatus::Fail) {
        EXIT_FAIL
    } else if report.any_budget_exceeded() {
        EXIT_BUDGET
    } else {
        0
    };
    Ok(ExitCode::from(code))
}
