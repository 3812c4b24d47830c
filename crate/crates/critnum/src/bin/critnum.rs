use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use critnum::error::{Error, Result};
use critnum::formulas::{
    chi_hat_closed, chi_unrestricted, classical_critical, rho_hat3_upper, rho_hat_prime, u_func,
    v_g_closed, CriticalValue, Quantity as Q, Source, ValueKind,
};
use critnum::group::is_prime;
use critnum::oracle::{
    chi_exact, chi_hat_exact, chi_hat_exact_star, construct_witness, max_sum_free,
    max_three_one_sum_free, rho_exact, rho_hat_exact, sigma_critical_exact, Construction,
    SearchBudget, WitnessSet, DEFAULT_CHI_THRESHOLD, DEFAULT_RHO_THRESHOLD,
};
use critnum::verify::{
    emit_report, verify_chi, verify_chi_hat, verify_classical, verify_ggh, verify_rho,
    verify_rho_hat3, verify_sum_free, verify_vg_equivalence, ReportFormat, SweepConfig,
    VerificationRecord,
};
use critnum::{groups_of_order, GroupSpec};

#[derive(Parser)]
#[command(name = "critnum", about = "Critical numbers of finite abelian groups", version)]
struct Cli {
    /// Worker threads for sweeps (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a closed-form value
    Compute(ComputeArgs),
    /// Compute a value by exhaustive search, independent of any formula
    Oracle(OracleArgs),
    /// Construct or check witness sets
    Witness {
        #[command(subcommand)]
        cmd: WitnessCmd,
    },
    /// Run formula-vs-oracle sweeps and emit a report
    Verify(VerifyArgs),
    /// List the abelian groups of a given order
    Groups {
        #[arg(long)]
        order: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum QuantityArg {
    U,
    VG,
    Rho,
    RhoHat,
    Chi,
    ChiHat,
    ChiHatStar,
    ClassicalCritical,
    SumFree,
    ThreeOneSumFree,
}

#[derive(Args)]
struct ComputeArgs {
    /// Group, e.g. "Z12" or "Z2xZ6"
    #[arg(long)]
    group: String,
    #[arg(long, value_enum)]
    quantity: QuantityArg,
    #[arg(long)]
    h: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    g: Option<usize>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    group: String,
    #[arg(long, value_enum)]
    quantity: QuantityArg,
    #[arg(long)]
    h: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    /// Wall-clock budget in seconds (overrides CRITNUM_BUDGET_SECONDS)
    #[arg(long)]
    budget_seconds: Option<f64>,
    /// Largest group order for subset-enumeration searches
    #[arg(long)]
    threshold: Option<usize>,
    /// Append the witness as a JSONL line to this file
    #[arg(long)]
    witness_out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum WitnessCmd {
    /// Build one of the explicit constructions and print it as JSONL
    Construct {
        #[arg(long, value_enum)]
        kind: ConstructionKind,
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        h: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-validate every witness in a JSONL file
    Check {
        #[arg(long)]
        file: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConstructionKind {
    CosetStripe,
    TwoTorsionPlusHalforbit,
    EvenElements,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Vg,
    Rho,
    Chi,
    ChiHat,
    RhoHat3,
    Classical,
    SumFree,
    Ggh,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Jsonl,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: SuiteArg,
    #[arg(long, default_value_t = 14)]
    max_n: usize,
    #[arg(long, default_value_t = 4)]
    max_h: usize,
    #[arg(long)]
    max_m: Option<usize>,
    #[arg(long)]
    budget_seconds: Option<f64>,
    #[arg(long)]
    threshold: Option<usize>,
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    /// Report destination (default: stdout)
    #[arg(long)]
    out: Option<PathBuf>,
}

fn env_budget_seconds() -> Option<f64> {
    std::env::var("CRITNUM_BUDGET_SECONDS")
        .ok()
        .and_then(|s| s.parse().ok())
}

fn make_budget(seconds: Option<f64>, threshold: Option<usize>, default_threshold: usize) -> SearchBudget {
    let mut b = SearchBudget::default().with_threshold(default_threshold);
    if let Some(s) = seconds.or_else(env_budget_seconds) {
        b = b.with_seconds(s);
    }
    if let Some(t) = threshold {
        b = b.with_threshold(t);
    }
    b
}

fn need(name: &str, v: Option<usize>) -> Result<usize> {
    v.ok_or_else(|| Error::invalid(format!("--{name} is required for this quantity")))
}

fn run_compute(a: ComputeArgs) -> Result<i32> {
    let group: GroupSpec = a.group.parse()?;
    let n = group.order();
    let value: CriticalValue = match a.quantity {
        QuantityArg::U => CriticalValue::exact(
            Q::U,
            u_func(n, need("m", a.m)?, need("h", a.h)?)?,
            Source::Formula,
            "divisor_min",
        ),
        QuantityArg::VG => CriticalValue::exact(
            Q::VG,
            v_g_closed(n, need("h", a.h)?, need("g", a.g)?)?,
            Source::Formula,
            "closed_form",
        ),
        QuantityArg::Rho => CriticalValue::exact(
            Q::Rho,
            u_func(n, need("m", a.m)?, need("h", a.h)?)?,
            Source::Formula,
            "rho_equals_u",
        ),
        QuantityArg::RhoHat => {
            let (m, h) = (need("m", a.m)?, need("h", a.h)?);
            if is_prime(n) {
                CriticalValue::exact(
                    Q::RhoHat,
                    rho_hat_prime(n, m, h)?,
                    Source::Formula,
                    "prime_order",
                )
            } else if group.is_cyclic() && h == 3 {
                CriticalValue {
                    quantity: Q::RhoHat,
                    kind: ValueKind::UpperBound,
                    value: Some(rho_hat3_upper(n, m)?),
                    source: Source::Formula,
                    case_tag: "h3_case_table".to_string(),
                }
            } else {
                return Err(Error::invalid(format!(
                    "no closed form for rho_hat on {group} with h={h}; use the oracle"
                )));
            }
        }
        QuantityArg::Chi => chi_unrestricted(n, need("h", a.h)?)?,
        QuantityArg::ChiHat => chi_hat_closed(&group, need("h", a.h)?)?,
        QuantityArg::ChiHatStar => {
            return Err(Error::invalid(
                "no closed form is wired up for chi_hat_star; use the oracle",
            ))
        }
        QuantityArg::ClassicalCritical => classical_critical(&group)?,
        QuantityArg::SumFree => CriticalValue::exact(
            Q::VG,
            v_g_closed(n, 3, 1)?,
            Source::Formula,
            "max_sum_free_v1",
        ),
        QuantityArg::ThreeOneSumFree => CriticalValue::exact(
            Q::VG,
            v_g_closed(n, 4, 2)?,
            Source::Formula,
            "max_three_one_sum_free_v2",
        ),
    };
    println!(
        "{}",
        serde_json::to_string(&json!({
            "group": group.to_string(),
            "quantity": value.quantity,
            "kind": value.kind,
            "value": value.value,
            "source": value.source,
            "case_tag": value.case_tag,
        }))?
    );
    Ok(0)
}

fn write_witness(w: &WitnessSet, path: &Option<PathBuf>) -> Result<()> {
    let line = w.to_json()?;
    match path {
        Some(p) => {
            let mut f = std::fs::OpenOptions::new().create(true).append(true).open(p)?;
            writeln!(f, "{line}")?;
        }
        None => println!("{line}"),
    }
    Ok(())
}

fn run_oracle(a: OracleArgs) -> Result<i32> {
    let group: GroupSpec = a.group.parse()?;
    let default_threshold = match a.quantity {
        QuantityArg::Rho | QuantityArg::RhoHat => DEFAULT_RHO_THRESHOLD,
        _ => DEFAULT_CHI_THRESHOLD,
    };
    let budget = make_budget(a.budget_seconds, a.threshold, default_threshold);
    let (value, kind, nodes, exhaustive, witness) = match a.quantity {
        QuantityArg::Rho | QuantityArg::RhoHat => {
            let (m, h) = (need("m", a.m)?, need("h", a.h)?);
            let r = if a.quantity == QuantityArg::Rho {
                rho_exact(&group, m, h, &budget)?
            } else {
                rho_hat_exact(&group, m, h, &budget)?
            };
            (Some(r.value), ValueKind::Exact, r.nodes, true, r.witness)
        }
        QuantityArg::Chi => {
            let r = chi_exact(&group, need("h", a.h)?, &budget)?;
            (r.value.value, r.value.kind, r.nodes, r.exhaustive, r.witness)
        }
        QuantityArg::ChiHat => {
            let r = chi_hat_exact(&group, need("h", a.h)?, &budget)?;
            (r.value.value, r.value.kind, r.nodes, r.exhaustive, r.witness)
        }
        QuantityArg::ChiHatStar => {
            let r = chi_hat_exact_star(&group, need("h", a.h)?, &budget)?;
            (r.value.value, r.value.kind, r.nodes, r.exhaustive, r.witness)
        }
        QuantityArg::ClassicalCritical => {
            let r = sigma_critical_exact(&group, &budget)?;
            (r.value.value, r.value.kind, r.nodes, r.exhaustive, r.witness)
        }
        QuantityArg::SumFree => {
            let r = max_sum_free(&group, &budget)?;
            let kind = if r.exhaustive {
                ValueKind::Exact
            } else {
                ValueKind::LowerBound
            };
            (Some(r.size), kind, r.nodes, r.exhaustive, r.witness)
        }
        QuantityArg::ThreeOneSumFree => {
            let r = max_three_one_sum_free(&group, &budget)?;
            let kind = if r.exhaustive {
                ValueKind::Exact
            } else {
                ValueKind::LowerBound
            };
            (Some(r.size), kind, r.nodes, r.exhaustive, r.witness)
        }
        QuantityArg::U | QuantityArg::VG => {
            return Err(Error::invalid(
                "u and v_g are formula-side quantities; use compute",
            ))
        }
    };
    println!(
        "{}",
        serde_json::to_string(&json!({
            "group": group.to_string(),
            "kind": kind,
            "value": value,
            "nodes": nodes,
            "exhaustive": exhaustive,
        }))?
    );
    write_witness(&witness, &a.witness_out)?;
    Ok(0)
}

fn run_witness(cmd: WitnessCmd) -> Result<i32> {
    match cmd {
        WitnessCmd::Construct {
            kind,
            group,
            n,
            h,
            d,
            out,
        } => {
            let c = match kind {
                ConstructionKind::CosetStripe => Construction::CosetStripe {
                    n: need("n", n)?,
                    h: need("h", h)?,
                    d: need("d", d)?,
                },
                ConstructionKind::TwoTorsionPlusHalforbit => {
                    let g = group
                        .ok_or_else(|| Error::invalid("--group is required for this construction"))?
                        .parse()?;
                    Construction::TwoTorsionPlusHalforbit { group: g }
                }
                ConstructionKind::EvenElements => Construction::EvenElements {
                    n: need("n", n)?,
                    h: need("h", h)?,
                },
            };
            let w = construct_witness(&c)?;
            write_witness(&w, &out)?;
            Ok(0)
        }
        WitnessCmd::Check { file } => {
            let reader = BufReader::new(File::open(&file)?);
            let mut failures = 0usize;
            let mut total = 0usize;
            for (i, line) in reader.lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                total += 1;
                match WitnessSet::from_json(&line).and_then(|w| w.validate()) {
                    Ok(()) => {}
                    Err(e) => {
                        eprintln!("line {}: {e}", i + 1);
                        failures += 1;
                    }
                }
            }
            println!("checked {total} witnesses, {failures} invalid");
            Ok(if failures > 0 { 1 } else { 0 })
        }
    }
}

fn run_verify(a: VerifyArgs) -> Result<i32> {
    let cfg = SweepConfig {
        max_n: a.max_n,
        max_h: a.max_h,
        max_m: a.max_m.unwrap_or(usize::MAX),
        budget: make_budget(a.budget_seconds, a.threshold, DEFAULT_RHO_THRESHOLD),
    };
    let mut records: Vec<VerificationRecord> = Vec::new();
    let want = |s: SuiteArg| a.suite == s || a.suite == SuiteArg::All;
    if want(SuiteArg::Vg) {
        records.extend(verify_vg_equivalence(cfg.max_n, cfg.max_h));
    }
    if want(SuiteArg::Rho) {
        records.extend(verify_rho(&cfg));
    }
    if want(SuiteArg::Chi) {
        records.extend(verify_chi(&cfg));
    }
    if want(SuiteArg::ChiHat) {
        records.extend(verify_chi_hat(&cfg));
    }
    if want(SuiteArg::RhoHat3) {
        records.extend(verify_rho_hat3(&cfg));
    }
    if want(SuiteArg::Classical) {
        records.extend(verify_classical(&cfg));
    }
    if want(SuiteArg::SumFree) {
        records.extend(verify_sum_free(&cfg));
    }
    if want(SuiteArg::Ggh) {
        records.extend(verify_ggh(&cfg));
    }
    let format = match a.format {
        FormatArg::Csv => ReportFormat::Csv,
        FormatArg::Jsonl => ReportFormat::Jsonl,
    };
    match &a.out {
        Some(p) => {
            let mut f = File::create(p)?;
            emit_report(&records, format, &mut f)?;
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            emit_report(&records, format, &mut lock)?;
        }
    }
    let failures = records.iter().filter(|r| r.is_failure()).count();
    if failures > 0 {
        eprintln!("{failures} mismatching records");
        Ok(1)
    } else {
        eprintln!("{} records, all consistent", records.len());
        Ok(0)
    }
}

fn run(cli: Cli) -> Result<i32> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| Error::invalid(format!("thread pool: {e}")))?;
    }
    match cli.cmd {
        Cmd::Compute(a) => run_compute(a),
        Cmd::Oracle(a) => run_oracle(a),
        Cmd::Witness { cmd } => run_witness(cmd),
        Cmd::Verify(a) => run_verify(a),
        Cmd::Groups { order } => {
            for g in groups_of_order(order)? {
                println!("{g}");
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e @ Error::InvalidArgument(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
