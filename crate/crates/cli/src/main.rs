use std::collections::BTreeMap;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use cusp_strata::certify::{
    certify_with, closed_form, compare, CertificationResult, CertifyOptions, Comparison, Mode, DEFAULT_TRIALS,
};
use cusp_strata::exec::Execution;
use cusp_strata::field::MERSENNE_61;
use cusp_strata::stratum::conjecture_report;
use cusp_strata::{Error, NumericalSemigroup, StratumInput};
use cusp_strata_cli::diagram::Diagram;
use cusp_strata_cli::parse;
use cusp_strata_cli::sweep::{self, Family, SweepSpec};
use serde::Serialize;

const EXIT_INPUT: u8 = 2;
const EXIT_DISAGREE: u8 = 3;
const EXIT_ANOMALY: u8 = 4;

#[derive(Parser)]
#[command(name = "cusp-strata", version, about = "Codimensions of cuspidal Severi strata")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants of a numerical semigroup.
    Info {
        #[arg(long, short)]
        semigroup: String,
        #[arg(long, value_enum, default_value_t = Out::Text)]
        out: Out,
    },
    /// Betti elements, circuits and the data entering both formulas.
    Betti(Input),
    /// Both conjectural codimensions and any closed formula.
    Codim(Input),
    /// Run the elimination and print the condition ledger.
    Certify {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        engine: Engine,
    },
    /// Certify and compare against the formulas; exit 3 on disagreement.
    Compare {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        engine: Engine,
    },
    /// Compare over a family of inputs with a persistent result cache.
    Sweep {
        #[arg(long, value_enum)]
        family: FamilyKind,
        /// Range of `n` for the hyperelliptic family, e.g. `2..4`.
        #[arg(long, default_value = "2..4")]
        n: String,
        /// Range of `g`; cases with `g < n` are skipped.
        #[arg(long, default_value = "2..8")]
        g: String,
        #[arg(long, default_value_t = 70)]
        abc_max: u64,
        /// Explicit case `generators:profile`, e.g. `2,15:2,4,6,8`.
        #[arg(long = "case")]
        cases: Vec<String>,
        #[command(flatten)]
        engine: Engine,
        #[arg(long, env = "CUSP_STRATA_CACHE", default_value = ".cusp-strata-cache")]
        cache_dir: PathBuf,
        /// Recompute cases already in the cache.
        #[arg(long)]
        force: bool,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Out::Text)]
        out: Out,
    },
    /// Staircase diagram with the certified conditions marked.
    Diagram {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        engine: Engine,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
        /// Draw the grid without running the elimination.
        #[arg(long)]
        no_ledger: bool,
    },
}

#[derive(Args)]
struct Input {
    #[arg(long, short)]
    semigroup: String,
    #[arg(long, short)]
    profile: String,
    #[arg(long, value_enum, default_value_t = Out::Text)]
    out: Out,
}

#[derive(Args)]
struct Engine {
    #[arg(long, value_enum, default_value_t = ModeKind::Exact)]
    mode: ModeKind,
    #[arg(long, default_value_t = MERSENNE_61)]
    prime: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: usize,
    /// Pin a coefficient before elimination, e.g. `a_{1,3}=0`. Repeatable.
    #[arg(long = "fix")]
    fix: Vec<String>,
    #[arg(long)]
    max_conductor: Option<u64>,
    /// Break pivot ties at random in modular trials.
    #[arg(long)]
    randomize_pivots: bool,
}

impl Engine {
    fn options(&self) -> Result<CertifyOptions> {
        let mode = match self.mode {
            ModeKind::Exact => Mode::Exact,
            ModeKind::Modular => Mode::Modular {
                prime: self.prime,
                seed: self.seed,
                trials: self.trials,
            },
        };
        let mut opts = CertifyOptions::with_mode(mode);
        let fixed: BTreeMap<_, _> = self.fix.iter().map(|f| parse::assignment(f)).collect::<Result<_, _>>()?;
        opts.fixed = fixed;
        if let Some(c) = self.max_conductor {
            opts.limits.max_conductor = c;
        }
        opts.randomize_pivots = self.randomize_pivots;
        Ok(opts)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Out {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeKind {
    Exact,
    Modular,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyKind {
    Hyperelliptic,
    Supersymmetric,
    Explicit,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Ascii,
    Svg,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(
            Error::NonlinearCondition { .. }
            | Error::PivotDegenerate(_)
            | Error::TrialDisagreement(_)
            | Error::TruncationTooTight(_)
            | Error::StructureViolation(_),
        ) => EXIT_ANOMALY,
        Some(_) => EXIT_INPUT,
        None => 1,
    }
}

impl Input {
    fn stratum(&self) -> Result<StratumInput> {
        let gens = parse::integer_list(&self.semigroup)?;
        let profile = parse::integer_list(&self.profile)?;
        Ok(StratumInput::new(NumericalSemigroup::from_generators(&gens)?, profile)?)
    }
}

fn run(command: Command) -> Result<u8> {
    let stdout = io::stdout();
    let mut w = stdout.lock();
    match command {
        Command::Info { semigroup, out } => {
            let gens = parse::integer_list(&semigroup)?;
            let sg = NumericalSemigroup::from_generators(&gens)?;
            info(&mut w, &gens, &sg, out)?;
        }
        Command::Betti(input) => {
            let report = conjecture_report(&input.stratum()?)?;
            match input.out {
                Out::Json => json_line(&mut w, &report)?,
                Out::Csv => csv_rows(&mut w, report.summary.iter())?,
                Out::Text => {
                    writeln!(w, "S = ⟨{}⟩  k = {:?}", join(&report.semigroup), report.profile)?;
                    writeln!(w, "k*           {:?}", report.k_star)?;
                    writeln!(w, "ground set   {:?}", report.ground_set)?;
                    for b in &report.betti {
                        let fs: Vec<_> = b.factorizations.iter().map(|f| &f.exponents).collect();
                        writeln!(w, "Betti {:>4}   ψ = {}  factorizations {:?}  classes {:?}", b.element, b.psi, fs, b.classes)?;
                    }
                    for s in &report.summary {
                        writeln!(w, "  b = {:>4}  φ = {}  ψ = {}  ρ = {}", s.element, s.phi, s.psi, s.rho)?;
                    }
                    writeln!(w, "E            {:?}", report.e)?;
                    writeln!(w, "circuits     {:?}", report.circuits)?;
                    writeln!(w, "b(i)         {:?}", report.b_of_circuit)?;
                    writeln!(w, "B'           {:?}", report.b_prime)?;
                    writeln!(w, "m            {}", report.m.map_or("∞".to_string(), |m| m.to_string()))?;
                    writeln!(w, "k•           {:?}", report.k_bullet)?;
                    writeln!(w, "D            {}", report.d)?;
                }
            }
        }
        Command::Codim(input) => {
            let stratum = input.stratum()?;
            let report = conjecture_report(&stratum)?;
            let row = CodimRow {
                semigroup: join(&report.semigroup),
                profile: join(&report.profile),
                r_p: report.r_p,
                conj_a: report.cod_conj_a,
                conj_b: report.cod_conj_b,
                identity_residual: report.identity_residual(),
                closed_form: closed_form(&stratum).map(|c| format!("{}={}", c.name, c.value)),
            };
            match input.out {
                Out::Json => json_line(&mut w, &row)?,
                Out::Csv => csv_rows(&mut w, [&row])?,
                Out::Text => {
                    writeln!(w, "S = ⟨{}⟩  k = ({})", row.semigroup, row.profile)?;
                    writeln!(w, "r_P = {}", row.r_p)?;
                    writeln!(w, "conjecture A: {}", row.conj_a)?;
                    writeln!(w, "conjecture B: {}", row.conj_b)?;
                    writeln!(w, "identity residual: {}", row.identity_residual)?;
                    if let Some(c) = &row.closed_form {
                        writeln!(w, "closed form: {c}")?;
                    }
                }
            }
        }
        Command::Certify { input, engine } => {
            let result = certify_with(&input.stratum()?, &engine.options()?)?;
            match input.out {
                Out::Json => json_line(&mut w, &result)?,
                Out::Csv => csv_rows(&mut w, ledger_rows(&result).iter())?,
                Out::Text => certify_text(&mut w, &result)?,
            }
        }
        Command::Compare { input, engine } => {
            let c = compare(&input.stratum()?, &engine.options()?)?;
            let row = CompareRow::from(&c);
            match input.out {
                Out::Json => json_line(&mut w, &c)?,
                Out::Csv => csv_rows(&mut w, [&row])?,
                Out::Text => {
                    certify_text(&mut w, &c.engine)?;
                    writeln!(w, "conjecture A: {}", c.conj_a)?;
                    writeln!(w, "conjecture B: {}", c.conj_b)?;
                    writeln!(w, "identity residual: {}", c.identity_residual)?;
                    if let Some(f) = &c.closed_form {
                        let tag = if f.conjectural { " (predicted)" } else { "" };
                        writeln!(w, "closed form {}{tag}: {}", f.name, f.value)?;
                    }
                    writeln!(w, "agreement: {}", if row.agree { "yes" } else { "NO" })?;
                }
            }
            if !row.agree {
                return Ok(EXIT_DISAGREE);
            }
        }
        Command::Sweep {
            family,
            n,
            g,
            abc_max,
            cases,
            engine,
            cache_dir,
            force,
            jobs,
            out,
        } => {
            let family = match family {
                FamilyKind::Hyperelliptic => Family::Hyperelliptic {
                    n: range(&n)?,
                    g: range(&g)?,
                },
                FamilyKind::Supersymmetric => Family::Supersymmetric { abc_max },
                FamilyKind::Explicit => {
                    if cases.is_empty() {
                        return Err(Error::InvalidParameters("the explicit family needs at least one --case".into()).into());
                    }
                    Family::Explicit(cases.iter().map(|c| explicit_case(c)).collect::<Result<_>>()?)
                }
            };
            let mut options = engine.options()?;
            options.execution = Execution::Sequential;
            let spec = SweepSpec {
                family,
                options,
                jobs,
                cache_dir,
                force,
            };
            let summary = sweep::run(&spec)?;
            sweep_output(&mut w, &summary, out)?;
            if summary.disagreeing() > 0 {
                return Ok(EXIT_DISAGREE);
            }
            if summary.failed() > 0 {
                return Ok(EXIT_ANOMALY);
            }
        }
        Command::Diagram {
            input,
            engine,
            format,
            no_ledger,
        } => {
            let stratum = input.stratum()?;
            let ledger = if no_ledger {
                None
            } else {
                Some(certify_with(&stratum, &engine.options()?)?.ledger)
            };
            let d = Diagram::build(&stratum, ledger.as_ref())?;
            match (input.out, format) {
                (Out::Json, _) => json_line(&mut w, &d)?,
                (_, Format::Ascii) => write!(w, "{}", d.to_ascii())?,
                (_, Format::Svg) => write!(w, "{}", d.to_svg())?,
            }
        }
    }
    w.flush()?;
    Ok(0)
}

#[derive(Serialize)]
struct InfoRecord<'a> {
    semigroup: String,
    input: &'a [u64],
    #[serde(flatten)]
    record: cusp_strata::semigroup::SemigroupRecord,
    multiplicity: u64,
    hyperelliptic: bool,
    supersymmetric: Option<(u64, u64, u64)>,
}

#[derive(Serialize)]
struct InfoRow {
    semigroup: String,
    minimal_generators: String,
    gaps: String,
    conductor: u64,
    frobenius: i64,
    genus: u64,
    multiplicity: u64,
    hyperelliptic: bool,
    supersymmetric: String,
}

fn info(w: &mut impl Write, input: &[u64], sg: &NumericalSemigroup, out: Out) -> Result<()> {
    let rec = InfoRecord {
        semigroup: sg.to_string(),
        input,
        record: sg.record(),
        multiplicity: sg.multiplicity(),
        hyperelliptic: sg.is_hyperelliptic(),
        supersymmetric: sg.supersymmetric_triple(),
    };
    match out {
        Out::Json => json_line(w, &rec)?,
        Out::Csv => {
            let row = InfoRow {
                semigroup: rec.semigroup.clone(),
                minimal_generators: join(&rec.record.generators),
                gaps: join(&rec.record.gaps),
                conductor: rec.record.conductor,
                frobenius: rec.record.frobenius,
                genus: rec.record.genus,
                multiplicity: rec.multiplicity,
                hyperelliptic: rec.hyperelliptic,
                supersymmetric: rec.supersymmetric.map(|(a, b, c)| format!("{a},{b},{c}")).unwrap_or_default(),
            };
            csv_rows(w, [&row])?;
        }
        Out::Text => {
            let name = if sg.genus() == 0 { " = ℕ" } else { "" };
            writeln!(w, "S = {}{name}", rec.semigroup)?;
            writeln!(w, "input generators    {}", join(input))?;
            writeln!(w, "minimal generators  {}", join(&rec.record.generators))?;
            writeln!(w, "multiplicity        {}", rec.multiplicity)?;
            writeln!(w, "genus               {}", rec.record.genus)?;
            writeln!(w, "conductor           {}", rec.record.conductor)?;
            writeln!(w, "Frobenius number    {}", rec.record.frobenius)?;
            writeln!(w, "gaps                {}", join(&rec.record.gaps))?;
            writeln!(w, "hyperelliptic       {}", rec.hyperelliptic)?;
            match rec.supersymmetric {
                Some((a, b, c)) => writeln!(w, "supersymmetric      yes, (a,b,c) = ({a},{b},{c})")?,
                None => writeln!(w, "supersymmetric      no")?,
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct CodimRow {
    semigroup: String,
    profile: String,
    r_p: i64,
    conj_a: i64,
    conj_b: i64,
    identity_residual: i64,
    closed_form: Option<String>,
}

#[derive(Serialize)]
struct CompareRow {
    semigroup: String,
    profile: String,
    b_p: usize,
    engine: i64,
    conj_a: i64,
    conj_b: i64,
    closed_form: Option<i64>,
    identity_residual: i64,
    agree: bool,
}

impl From<&Comparison> for CompareRow {
    fn from(c: &Comparison) -> Self {
        CompareRow {
            semigroup: join(&c.semigroup),
            profile: join(&c.profile),
            b_p: c.engine.b_p,
            engine: c.engine.codimension,
            conj_a: c.conj_a,
            conj_b: c.conj_b,
            closed_form: c.closed_form.as_ref().map(|f| f.value),
            identity_residual: c.identity_residual,
            agree: sweep::agrees(c),
        }
    }
}

#[derive(Serialize)]
struct LedgerRow<'a> {
    gap: u64,
    source: &'a str,
    status: &'static str,
    pivot: Option<&'a str>,
    localized: bool,
    condition: &'a str,
}

fn ledger_rows(r: &CertificationResult) -> Vec<LedgerRow<'_>> {
    r.ledger
        .entries
        .iter()
        .map(|e| LedgerRow {
            gap: e.gap,
            source: &e.source,
            status: if e.pivot.is_some() { "independent" } else { "dependent" },
            pivot: e.pivot.as_deref(),
            localized: e.localized,
            condition: &e.condition,
        })
        .collect()
}

fn certify_text(w: &mut impl Write, r: &CertificationResult) -> Result<()> {
    writeln!(w, "S = ⟨{}⟩  k = ({})  conductor {}", join(&r.semigroup), join(&r.profile), r.conductor)?;
    for e in &r.ledger.entries {
        let status = match &e.pivot {
            Some(p) => format!("independent, pivot {p}{}", if e.localized { ", localized" } else { "" }),
            None => "dependent".to_string(),
        };
        writeln!(w, "  gap {:>3}  {:<12} {}  [{status}]", e.gap, e.source, e.condition)?;
    }
    for l in &r.ledger.localization {
        writeln!(w, "  assumed nonzero: {l}")?;
    }
    writeln!(w, "r_P = {}  b_P = {}  codimension = {}", r.r_p, r.b_p, r.codimension)?;
    writeln!(w, "unirational witness: {}", r.unirational_witness)?;
    for t in &r.trials {
        writeln!(
            w,
            "  trial seed {}: b_P {}, Jacobian rank {}, conditions vanish {}, {} point(s) drawn",
            t.seed, t.b_p, t.jacobian_rank, t.conditions_vanish, t.attempts
        )?;
    }
    Ok(())
}

fn sweep_output(w: &mut impl Write, s: &sweep::Summary, out: Out) -> Result<()> {
    match out {
        Out::Json => {
            for case in &s.cases {
                match &case.result {
                    Ok(c) => json_line(w, &cusp_strata_cli::cache::Record { key: case.key.clone(), comparison: c.clone() })?,
                    Err(e) => json_line(w, &serde_json::json!({ "key": case.key, "error": e }))?,
                }
            }
        }
        Out::Csv => {
            let rows: Vec<CompareRow> = s.cases.iter().filter_map(|c| c.result.as_ref().ok()).map(CompareRow::from).collect();
            csv_rows(w, rows.iter())?;
        }
        Out::Text => {
            writeln!(w, "{:<14} {:<16} {:>4} {:>6} {:>6} {:>6} {:>7}  {}", "S", "k", "b_P", "engine", "A", "B", "closed", "agree")?;
            for case in &s.cases {
                let gens = format!("⟨{}⟩", join(&case.key.generators));
                let k = format!("({})", join(&case.key.profile));
                match &case.result {
                    Ok(c) => {
                        let r = CompareRow::from(c);
                        let closed = r.closed_form.map_or("-".to_string(), |v| v.to_string());
                        let tag = if case.cached { " (cached)" } else { "" };
                        writeln!(
                            w,
                            "{gens:<14} {k:<16} {:>4} {:>6} {:>6} {:>6} {closed:>7}  {}{tag}",
                            r.b_p,
                            r.engine,
                            r.conj_a,
                            r.conj_b,
                            if r.agree { "yes" } else { "NO" }
                        )?;
                    }
                    Err(e) => writeln!(w, "{gens:<14} {k:<16} error: {e}")?,
                }
            }
            writeln!(
                w,
                "{} cases: {} agree, {} disagree, {} failed; {} computed, {} from cache",
                s.cases.len(),
                s.agreeing(),
                s.disagreeing(),
                s.failed(),
                s.computed,
                s.cases.len() - s.computed
            )?;
        }
    }
    Ok(())
}

fn json_line(w: &mut impl Write, value: &impl Serialize) -> Result<()> {
    serde_json::to_writer(&mut *w, value)?;
    writeln!(w)?;
    Ok(())
}

fn csv_rows<T: Serialize>(w: &mut impl Write, rows: impl IntoIterator<Item = T>) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for r in rows {
        out.serialize(r)?;
    }
    out.flush()?;
    Ok(())
}

fn join(xs: &[u64]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// `a..b` (inclusive) or a single value.
fn range(src: &str) -> Result<std::ops::RangeInclusive<u64>> {
    let bad = || Error::InvalidParameters(format!("expected a range like 2..8, got {src:?}"));
    let (lo, hi) = match src.split_once("..") {
        Some((lo, hi)) => (lo, hi.trim_start_matches('=')),
        None => (src, src),
    };
    let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad().into());
    }
    Ok(lo..=hi)
}

fn explicit_case(src: &str) -> Result<(Vec<u64>, Vec<u64>)> {
    let Some((gens, k)) = src.split_once(':') else {
        bail!(Error::InvalidParameters(format!("expected generators:profile, got {src:?}")));
    };
    let gens = parse::integer_list(gens).context("case generators")?;
    let k = parse::integer_list(k).context("case profile")?;
    Ok((gens, k))
}
