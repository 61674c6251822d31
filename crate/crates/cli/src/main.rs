//! `noether`: Noetherian operators and differential Artin-Rees experiments.
//!
//! Exit codes: 0 success, 1 input or engine error, 2 refutation,
//! 3 search exhausted.

mod config;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use noether_ops::closures::{check_closure_input, closure_schedule, symbolic_schedule};
use noether_ops::diffops::OperatorSet;
use noether_ops::groebner::RingSpec;
use noether_ops::noetherian::{
    combine_components, noetherian_ops_primary, verify_noetherian_ops, CertificateStatus,
    NoetherianCertificate,
};
use noether_ops::poly::parse_polynomial_list;
use noether_ops::uniformity::{
    artin_rees_experiment, check_reverse, diff_colon, power_schedule, separating_operator,
    verify_filtration, ExperimentBundle, ExperimentParams, SearchBounds,
};
use noether_ops::Error;

use config::{parse_component, ComponentSpec, ExperimentConfig, Format, Mode, Parameters};

#[derive(Parser)]
#[command(
    name = "noether",
    version,
    about = "Noetherian differential operators and differential Artin-Rees experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads for the search grid.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Noetherian operators of primary components, merged and verified.
    NoethOps(NoethOpsArgs),
    /// Check that operators describe an ideal.
    VerifyOps(VerifyOpsArgs),
    /// Truncated differential colon I^m : {ops}.
    DiffColon(DiffColonArgs),
    /// Least shift c per n for each ideal of the configured family.
    FindC(SearchArgs),
    /// Reverse containment J^(n+e) ⊆ I^n : {ops} for the configured family.
    CheckArReverse(SearchArgs),
    /// Constant search with integral closures of powers.
    CheckBs(SearchArgs),
    /// Constant search with symbolic powers.
    CheckSymb(SearchArgs),
    /// Minimal-order operator killing a but not b modulo p.
    SepOp(SepOpArgs),
    /// Structural checks on a filtration of the ring.
    VerifyFiltration(FiltrationArgs),
    /// Full experiment in the configured mode.
    Experiment(SearchArgs),
}

#[derive(Args)]
struct NoethOpsArgs {
    /// Ring file.
    #[arg(long)]
    ring: PathBuf,
    /// Primary ideal of a component; repeat per component.
    #[arg(long, required = true)]
    primary: Vec<String>,
    /// Prime of the matching component.
    #[arg(long, required = true)]
    prime: Vec<String>,
    /// Comma-separated independent variables of the matching component.
    #[arg(long)]
    independent: Vec<String>,
    /// Ideal the merged operators must describe; defaults to the defining
    /// ideal of the ring, or the intersection of the components for a
    /// polynomial ring.
    #[arg(long)]
    ideal: Option<String>,
    #[arg(long, default_value_t = 8)]
    degree: u32,
}

#[derive(Args)]
struct VerifyOpsArgs {
    #[arg(long)]
    ring: PathBuf,
    #[arg(long)]
    ideal: String,
    /// `;`-separated operators.
    #[arg(long)]
    ops: String,
    /// Ideal the operator values are reduced by; defaults to the radical of
    /// the ring.
    #[arg(long)]
    modulus: Option<String>,
    #[arg(long, default_value_t = 8)]
    degree: u32,
}

#[derive(Args)]
struct DiffColonArgs {
    #[arg(long)]
    ring: PathBuf,
    #[arg(long)]
    ops: String,
    #[arg(long)]
    ideal: String,
    #[arg(long)]
    power: u32,
    #[arg(long, default_value_t = 4)]
    degree: u32,
}

#[derive(Args)]
struct SearchArgs {
    /// JSON experiment configuration.
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    n_max: Option<u32>,
    #[arg(long)]
    c_max: Option<u32>,
    #[arg(long)]
    degree: Option<u32>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct SepOpArgs {
    #[arg(long)]
    ring: PathBuf,
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
    #[arg(long)]
    prime: String,
    /// `;`-separated images in R/p of the generators of b.
    #[arg(long)]
    psi: String,
    #[arg(long, default_value_t = 3)]
    t_max: u32,
    #[arg(long, default_value_t = 1)]
    coeff_deg: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct FiltrationArgs {
    #[arg(long)]
    ring: PathBuf,
    /// Terms of the chain in increasing order; repeat.
    #[arg(long, required = true)]
    chain: Vec<String>,
    /// Prime of each step; repeat.
    #[arg(long = "prime", required = true)]
    primes: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Outcome {
    Success,
    Refuted,
    Exhausted,
}

impl Outcome {
    fn code(self) -> u8 {
        match self {
            Outcome::Success => 0,
            Outcome::Refuted => 2,
            Outcome::Exhausted => 3,
        }
    }
}

struct Report {
    body: String,
    outcome: Outcome,
    default_path: Option<PathBuf>,
}

impl Report {
    fn new(body: String, outcome: Outcome) -> Self {
        Report {
            body,
            outcome,
            default_path: None,
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_ring(path: &Path) -> Result<RingSpec> {
    RingSpec::parse(&read(path)?).with_context(|| format!("ring file {}", path.display()))
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn certificate_report(
    cert: &NoetherianCertificate,
    ring: &RingSpec,
    format: Format,
) -> Result<Report> {
    let outcome = if cert.status == CertificateStatus::Refuted {
        Outcome::Refuted
    } else {
        Outcome::Success
    };
    let rec = cert.record(ring.vars());
    let body = match format {
        Format::Json => json(&rec)?,
        _ => {
            let mut s = String::new();
            writeln!(s, "operators: {}", rec.operators.join("; "))?;
            let modulus = if rec.modulus.is_empty() {
                "0".to_string()
            } else {
                rec.modulus.join("; ")
            };
            writeln!(s, "modulus: ({modulus})")?;
            writeln!(
                s,
                "status: {}",
                serde_json::to_value(rec.status)?
                    .as_str()
                    .unwrap_or_default()
            )?;
            writeln!(s, "degree_bound: {}", rec.degree_bound)?;
            if let (Some(w), Some(side)) = (&rec.witness, rec.witness_side) {
                writeln!(s, "witness: {w}")?;
                writeln!(
                    s,
                    "witness_side: {}",
                    serde_json::to_value(side)?.as_str().unwrap_or_default()
                )?;
            }
            s
        }
    };
    Ok(Report::new(body, outcome))
}

fn noeth_ops(args: &NoethOpsArgs, format: Format) -> Result<Report> {
    let ring = load_ring(&args.ring)?;
    let k = args.primary.len();
    if args.prime.len() != k || args.independent.len() > k {
        anyhow::bail!("give one --prime and at most one --independent per --primary");
    }
    let mut comps = Vec::with_capacity(k);
    for i in 0..k {
        let independent = args
            .independent
            .get(i)
            .map(|s| {
                s.split(',')
                    .map(|v| v.trim().to_string())
                    .filter(|v| !v.is_empty())
                    .collect()
            })
            .unwrap_or_default();
        let spec = ComponentSpec {
            primary: args.primary[i].clone(),
            prime: args.prime[i].clone(),
            independent,
        };
        let comp = parse_component(&ring, &spec).with_context(|| format!("component {}", i + 1))?;
        let ops = noetherian_ops_primary(&comp)?;
        comps.push((comp, ops));
    }
    let target = match &args.ideal {
        Some(text) => ring.parse_ideal(text)?,
        None if !ring.defining_ideal().is_zero_ideal() => ring.defining_ideal().clone(),
        None => {
            let mut acc = comps[0].0.primary().clone();
            for (c, _) in &comps[1..] {
                acc = acc.intersect(c.primary())?;
            }
            acc
        }
    };
    let merged = combine_components(&comps, &target, &ring)?;
    let cert = verify_noetherian_ops(&target, &merged, args.degree)?;
    certificate_report(&cert, &ring, format)
}

fn verify_ops(args: &VerifyOpsArgs, format: Format) -> Result<Report> {
    let ring = load_ring(&args.ring)?;
    let ideal = ring.parse_ideal(&args.ideal).context("ideal")?;
    let modulus = match &args.modulus {
        Some(m) => ring.parse_ideal(m).context("modulus")?,
        None => ring.radical().clone(),
    };
    let ops = OperatorSet::parse(&args.ops, ring.vars(), modulus).context("operators")?;
    let cert = verify_noetherian_ops(&ideal, &ops, args.degree)?;
    certificate_report(&cert, &ring, format)
}

#[derive(Serialize)]
struct ColonRecord {
    power: u32,
    degree: u32,
    dimension: usize,
    ambient_dimension: usize,
    full: bool,
    basis: Vec<String>,
}

fn diff_colon_cmd(args: &DiffColonArgs, format: Format) -> Result<Report> {
    let ring = load_ring(&args.ring)?;
    let ops =
        OperatorSet::parse(&args.ops, ring.vars(), ring.radical().clone()).context("operators")?;
    let i = ring.image_in_reduced(&ring.parse_ideal(&args.ideal).context("ideal")?);
    let s = diff_colon(&i, args.power, &ops, &ring, args.degree)?;
    let rec = ColonRecord {
        power: args.power,
        degree: args.degree,
        dimension: s.dim(),
        ambient_dimension: s.ambient_dim(),
        full: s.is_full(),
        basis: s.basis().iter().map(|f| ring.format(f)).collect(),
    };
    let body = match format {
        Format::Json => json(&rec)?,
        _ if rec.full => format!(
            "full space: every polynomial of degree <= {} (dimension {})\n",
            rec.degree, rec.dimension
        ),
        _ => {
            let mut s = format!(
                "dimension: {} of {}\n",
                rec.dimension, rec.ambient_dimension
            );
            for b in &rec.basis {
                writeln!(s, "{b}")?;
            }
            s
        }
    };
    Ok(Report::new(body, Outcome::Success))
}

fn load_config(args: &SearchArgs) -> Result<ExperimentConfig> {
    let mut cfg = ExperimentConfig::parse(&read(&args.config)?)?;
    let p = &mut cfg.parameters;
    if let Some(v) = args.n_max {
        p.n_max = v;
    }
    if let Some(v) = args.c_max {
        p.c_max = v;
    }
    if let Some(v) = args.degree {
        p.degree = v;
    }
    if let Some(v) = args.seed {
        p.seed = v;
    }
    if p.n_max == 0 || p.degree == 0 {
        anyhow::bail!("n_max and degree must be positive");
    }
    Ok(cfg)
}

#[derive(Serialize)]
struct ExperimentOutput<'a> {
    mode: Mode,
    parameters: &'a Parameters,
    #[serde(flatten)]
    bundle: noether_ops::uniformity::BundleRecord,
}

fn bundle_csv(bundle: &ExperimentBundle, ring: &RingSpec) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["J_id", "n", "c_min", "witness", "degree_bound"])?;
    for e in &bundle.entries {
        let rec = e.report.record(ring.vars());
        for row in &rec.rows {
            w.write_record([
                e.id.as_str(),
                &row.n.to_string(),
                &row.c_min.to_string(),
                row.witness.as_deref().unwrap_or(""),
                &rec.bounds.degree.to_string(),
            ])?;
        }
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn search(args: &SearchArgs, mode: Option<Mode>, format: Option<Format>) -> Result<Report> {
    let mut cfg = load_config(args)?;
    let mode = mode.unwrap_or(cfg.mode);
    cfg.mode = mode;
    let res = cfg.resolve()?;
    let p = &cfg.parameters;
    let params = ExperimentParams {
        bounds: SearchBounds {
            n_max: p.n_max,
            c_max: p.c_max,
            degree: p.degree,
        },
        seed: p.seed,
        samples: p.samples,
        filtration_length: p.filtration_length,
    };
    let bundle = match mode {
        Mode::ArtinRees => {
            artin_rees_experiment(&res.family, &res.ops, &res.ring, &params, &power_schedule)?
        }
        Mode::BrianconSkoda => {
            for (id, j) in &res.family {
                check_closure_input(j, &res.ring).with_context(|| format!("ideal `{id}`"))?;
            }
            artin_rees_experiment(&res.family, &res.ops, &res.ring, &params, &closure_schedule)?
        }
        Mode::Symbolic => {
            let d = p
                .dimension
                .context("the symbolic mode needs parameters.dimension")?;
            let schedule = symbolic_schedule(&res.ring, d, &res.witnesses);
            artin_rees_experiment(&res.family, &res.ops, &res.ring, &params, &schedule)?
        }
    };
    let outcome = if bundle.refuted() {
        Outcome::Refuted
    } else if bundle.exhausted {
        Outcome::Exhausted
    } else {
        Outcome::Success
    };
    eprintln!(
        "certificate: {:?}; aggregate c = {}; operator order e = {}{}",
        bundle.certificate.status,
        bundle.aggregate,
        bundle.operator_order,
        bundle
            .effective_bound
            .map(|b| format!("; k*e = {b}"))
            .unwrap_or_default()
    );
    let format = format.or(cfg.output.format).unwrap_or(Format::Csv);
    let body = match format {
        Format::Json => json(&ExperimentOutput {
            mode,
            parameters: p,
            bundle: bundle.record(res.ring.vars()),
        })?,
        _ => bundle_csv(&bundle, &res.ring)?,
    };
    Ok(Report {
        body,
        outcome,
        default_path: cfg.output.path.map(PathBuf::from),
    })
}

#[derive(Serialize)]
struct ReverseRow {
    id: String,
    n: u32,
    passed: bool,
    checked: usize,
    witness: Option<String>,
}

fn reverse(args: &SearchArgs, format: Option<Format>) -> Result<Report> {
    let cfg = load_config(args)?;
    let res = cfg.resolve()?;
    let p = &cfg.parameters;
    let mut rows = Vec::new();
    for (id, j) in &res.family {
        for n in 0..=p.n_max {
            let rc = check_reverse(j, &res.ops, &res.ring, n, p.degree)?;
            rows.push(ReverseRow {
                id: id.clone(),
                n,
                passed: rc.passed,
                checked: rc.checked,
                witness: rc.witness.map(|w| res.ring.format(&w)),
            });
        }
    }
    let outcome = if rows.iter().all(|r| r.passed) {
        Outcome::Success
    } else {
        Outcome::Refuted
    };
    let body = match format.or(cfg.output.format).unwrap_or(Format::Csv) {
        Format::Json => json(&rows)?,
        _ => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["J_id", "n", "passed", "checked", "witness"])?;
            for r in &rows {
                w.write_record([
                    r.id.as_str(),
                    &r.n.to_string(),
                    &r.passed.to_string(),
                    &r.checked.to_string(),
                    r.witness.as_deref().unwrap_or(""),
                ])?;
            }
            String::from_utf8(w.into_inner()?)?
        }
    };
    Ok(Report::new(body, outcome))
}

#[derive(Serialize)]
struct SeparatingRecord {
    operator: String,
    order: u32,
    coefficient_degree: u32,
    d: String,
    linearity_passed: bool,
    samples: usize,
    seed: u64,
}

fn sep_op(args: &SepOpArgs, format: Format) -> Result<Report> {
    let ring = load_ring(&args.ring)?;
    let a = ring.parse_ideal(&args.a).context("a")?;
    let b = ring.parse_ideal(&args.b).context("b")?;
    let p = ring.parse_ideal(&args.prime).context("prime")?;
    let psi = parse_polynomial_list(&args.psi, ring.vars()).context("psi")?;
    let found = match separating_operator(
        &a,
        &b,
        &ring,
        &p,
        &psi,
        args.t_max,
        args.coeff_deg,
        args.seed,
    ) {
        Err(e @ Error::InconsistentEmbedding(_)) => {
            return Ok(Report::new(format!("refuted: {e}\n"), Outcome::Refuted));
        }
        other => other?,
    };
    let Some(res) = found else {
        let msg = format!(
            "no operator of order <= {} with coefficient degree <= {}\n",
            args.t_max, args.coeff_deg
        );
        return Ok(Report::new(msg, Outcome::Exhausted));
    };
    let rec = SeparatingRecord {
        operator: res.delta.format(ring.vars()),
        order: res.order,
        coefficient_degree: res.coeff_degree,
        d: res.d_value.format(ring.vars()),
        linearity_passed: res.linearity.passed(),
        samples: res.linearity.samples,
        seed: res.linearity.seed,
    };
    let outcome = if rec.linearity_passed {
        Outcome::Success
    } else {
        Outcome::Refuted
    };
    let body = match format {
        Format::Json => json(&rec)?,
        _ => {
            let mut s = String::new();
            writeln!(s, "operator: {}", rec.operator)?;
            writeln!(s, "order: {}", rec.order)?;
            writeln!(s, "coefficient_degree: {}", rec.coefficient_degree)?;
            writeln!(s, "d: {}", rec.d)?;
            let verdict = if rec.linearity_passed {
                "passed"
            } else {
                "failed"
            };
            writeln!(
                s,
                "linearity: {verdict} ({} samples, seed {})",
                rec.samples, rec.seed
            )?;
            s
        }
    };
    Ok(Report::new(body, outcome))
}

fn filtration(args: &FiltrationArgs, format: Format) -> Result<Report> {
    let ring = load_ring(&args.ring)?;
    let chain = args
        .chain
        .iter()
        .map(|t| ring.parse_ideal(t))
        .collect::<Result<Vec<_>, _>>()
        .context("chain")?;
    let primes = args
        .primes
        .iter()
        .map(|t| ring.parse_ideal(t))
        .collect::<Result<Vec<_>, _>>()
        .context("primes")?;
    let rep = verify_filtration(&chain, &primes, &ring)?;
    let outcome = if rep.passed {
        Outcome::Success
    } else {
        Outcome::Refuted
    };
    let body = match format {
        Format::Json => json(&rep)?,
        _ => {
            let mut s = format!("{}\n", if rep.passed { "passed" } else { "failed" });
            for f in &rep.failures {
                writeln!(
                    s,
                    "step {}: {}: {}",
                    f.step,
                    serde_json::to_value(f.check)?.as_str().unwrap_or_default(),
                    f.detail
                )?;
            }
            for a in &rep.assumptions {
                writeln!(s, "assumed: {a}")?;
            }
            s
        }
    };
    Ok(Report::new(body, outcome))
}

fn dispatch(cli: &Cli) -> Result<Report> {
    let text = cli.format.unwrap_or(Format::Text);
    match &cli.command {
        Command::NoethOps(a) => noeth_ops(a, text),
        Command::VerifyOps(a) => verify_ops(a, text),
        Command::DiffColon(a) => diff_colon_cmd(a, text),
        Command::FindC(a) => search(a, Some(Mode::ArtinRees), cli.format),
        Command::CheckArReverse(a) => reverse(a, cli.format),
        Command::CheckBs(a) => search(a, Some(Mode::BrianconSkoda), cli.format),
        Command::CheckSymb(a) => search(a, Some(Mode::Symbolic), cli.format),
        Command::SepOp(a) => sep_op(a, text),
        Command::VerifyFiltration(a) => filtration(a, text),
        Command::Experiment(a) => search(a, None, cli.format),
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.max(1))
        .build()?;
    let report = pool.install(|| dispatch(cli))?;
    match cli.out.as_ref().or(report.default_path.as_ref()) {
        Some(path) => std::fs::write(path, &report.body)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{}", report.body),
    }
    Ok(report.outcome)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => ExitCode::from(outcome.code()),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
