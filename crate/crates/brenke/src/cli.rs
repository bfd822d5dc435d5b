//! `brenke` command line.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;

use brenke_core::families::{verify_scaled_limit, AsymptoticCheck, AsymptoticReport, FamilySpec};
use brenke_core::lpdiag::{
    diagnose, necessary_battery, rho_convergence_report, stability_battery, BatteryTest, RhoReport, SignPattern, Verdict,
};
use brenke_core::numerics::{int, BallReal, ExactRational, Scalar};
use brenke_core::powerseries::{SeriesSpec, TruncatedSeries};
use brenke_core::zetacoeffs::ZetaCoefficientTable;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::cache::{resolve_path, GammaSource};
use crate::error::{AppError, ExitCode, Result};
use crate::expr::{describe, parse_rational_arg, parse_rational_list, parse_series, NamedParams};
use crate::output::{emit, Format, Number};
use crate::sweep::{cells_exit, thresholds, Cell, CellRow, Certifier, InterlaceRow, Threshold};

#[derive(Parser, Debug)]
#[command(name = "brenke", version, about = "Brenke polynomial families: certified real roots, zeta coefficients, asymptotics")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,
    /// γ cache file; defaults to $BRENKE_CACHE, then ./brenke-gamma-cache.json.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// Worker threads (all cores when omitted).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Working precision in bits.
    #[arg(long, global = true, default_value_t = 128)]
    pub bits: u32,
    /// Precision cap for escalating ball computations.
    #[arg(long, global = true, default_value_t = 4096)]
    pub bits_cap: u32,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute or extend the cached γ table.
    Gamma(GammaArgs),
    /// Certify real-rootedness of a family.
    Certify(CertifyArgs),
    /// Laguerre-Pólya diagnostics and the necessary-condition battery for B.
    Diagnose(DiagnoseArgs),
    /// Scaled-limit deviation tables.
    Asympt(AsymptArgs),
    /// Interlacing of consecutive members of a Brenke family.
    Interlace(InterlaceArgs),
    /// Sweep of the zeta-based families with thresholds and deviation tables.
    Report(ReportArgs),
}

#[derive(Args, Debug, Clone, Default)]
pub struct SeriesArgs {
    /// Series A: a name, a coefficient list or a polynomial in z.
    #[arg(long = "A")]
    pub a: Option<String>,
    /// Series B, same syntax as --A.
    #[arg(long = "B")]
    pub b: Option<String>,
    /// Comma-separated parameters of 0f1.
    #[arg(long)]
    pub phi: Option<String>,
    /// Parameter q of bq.
    #[arg(long)]
    pub q: Option<String>,
    /// Dunkl parameter μ.
    #[arg(long)]
    pub mu: Option<String>,
    /// Shift s of a bare `zeta`.
    #[arg(long)]
    pub zeta_shift: Option<u32>,
}

impl SeriesArgs {
    fn named(&self) -> Result<NamedParams> {
        Ok(NamedParams {
            phi: self.phi.as_deref().map(parse_rational_list).transpose()?,
            q: self.q.as_deref().map(parse_rational_arg).transpose()?,
            mu: self.mu.as_deref().map(parse_rational_arg).transpose()?,
            s: self.zeta_shift,
        })
    }

    fn series(&self, text: Option<&str>, flag: &str, default: Option<&str>) -> Result<SeriesSpec> {
        let t = text.or(default).ok_or_else(|| AppError::Usage(format!("{flag} is required")))?;
        parse_series(t, &self.named()?)
    }

    fn a(&self, default: Option<&str>) -> Result<SeriesSpec> {
        self.series(self.a.as_deref(), "--A", default)
    }

    fn b(&self, default: Option<&str>) -> Result<SeriesSpec> {
        self.series(self.b.as_deref(), "--B", default)
    }
}

#[derive(Args, Debug)]
pub struct GammaArgs {
    /// Largest index N.
    #[arg(long, allow_negative_numbers = true)]
    pub max_n: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Jensen,
    JensenShifted,
    Qhat,
    PAlpha,
    QAlpha,
    Dunkl,
    Brenke,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    #[arg(long, value_enum)]
    pub family: Option<FamilyKind>,
    /// Shorthand for `--family brenke`.
    #[arg(long)]
    pub brenke: bool,
    /// Exponent N of qhat.
    #[arg(long = "N")]
    pub big_n: Option<u32>,
    /// Shift s.
    #[arg(long)]
    pub s: Option<usize>,
    /// Sweep s over 0..=s-max instead of a single shift.
    #[arg(long)]
    pub s_max: Option<usize>,
    #[arg(long)]
    pub alpha: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub n_min: usize,
    #[arg(long)]
    pub n_max: usize,
    #[command(flatten)]
    pub series: SeriesArgs,
}

#[derive(Args, Debug)]
pub struct DiagnoseArgs {
    /// Truncation order of B.
    #[arg(long, default_value_t = 30)]
    pub n_max: usize,
    /// Largest index tried by the battery.
    #[arg(long, default_value_t = 10)]
    pub battery_n: usize,
    #[command(flatten)]
    pub series: SeriesArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    /// (z/τ_n)^n p_n(τ_n/z)/b_n → A(z).
    Las2,
    /// p_n(z/μ_n)/a_n → B(z).
    Las2a,
    /// Shifted Jensen polynomials of ζ → (1+z)^n/n!.
    Gorz,
    /// p^α_{n,s} → reversed Laguerre.
    Ass,
    /// q^α_{n,s} → Laguerre.
    Asajj,
}

#[derive(Args, Debug)]
pub struct AsymptArgs {
    #[arg(long, value_enum)]
    pub check: CheckKind,
    /// Fixed degree for gorz/ass/asajj.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value = "0")]
    pub alpha: String,
    #[arg(long, default_value_t = 25)]
    pub s_max: usize,
    #[arg(long, default_value_t = 5)]
    pub s_step: usize,
    /// Explicit comma-separated shifts, overriding --s-max/--s-step.
    #[arg(long)]
    pub s_values: Option<String>,
    /// Comma-separated degrees for las2/las2a.
    #[arg(long, default_value = "10,20,30,40")]
    pub indices: String,
    /// Domain radius r; samples lie on |z| = r/2 and [-r/2, r/2].
    #[arg(long, default_value_t = 2.0)]
    pub radius: f64,
    /// Final/initial deviation ratio required for "converged".
    #[arg(long, default_value_t = brenke_core::families::CONVERGENCE_FACTOR)]
    pub factor: f64,
    #[command(flatten)]
    pub series: SeriesArgs,
}

#[derive(Args, Debug)]
pub struct InterlaceArgs {
    #[arg(long, default_value_t = 15)]
    pub n_max: usize,
    /// Random (α, β) pairs for the Obreshkov cross-check, per pair of polynomials.
    #[arg(long, default_value_t = 50)]
    pub pairs: usize,
    #[command(flatten)]
    pub series: SeriesArgs,
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    #[arg(long, default_value = "0,1,2")]
    pub qhat_exponents: String,
    #[arg(long, default_value_t = 20)]
    pub qhat_n_max: usize,
    #[arg(long, default_value_t = 4)]
    pub shifted_n_max: usize,
    #[arg(long, default_value_t = 25)]
    pub shifted_s_max: usize,
    #[arg(long, default_value = "0,1/2")]
    pub alphas: String,
    #[arg(long, default_value_t = 3)]
    pub alpha_n_max: usize,
    #[arg(long, default_value_t = 20)]
    pub alpha_s_max: usize,
}

/// Parses `args` (program name first) and runs the command; returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => ExitCode::Usage as i32,
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(code) => code as i32,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code() as i32
        }
    }
}

pub fn execute(cli: &Cli) -> Result<ExitCode> {
    if cli.bits < 64 || cli.bits_cap < cli.bits {
        return Err(AppError::Usage("need 64 <= --bits <= --bits-cap".into()));
    }
    let ctx = Ctx {
        format: cli.format,
        output: cli.output.clone(),
        certifier: Certifier {
            source: GammaSource { cache: Some(resolve_path(cli.cache.as_deref())), jobs: cli.jobs },
            bits: cli.bits,
            cap: cli.bits_cap,
        },
        seed: cli.seed,
    };
    crate::gamma::with_jobs(cli.jobs, || match &cli.command {
        Command::Gamma(a) => cmd_gamma(&ctx, a),
        Command::Certify(a) => cmd_certify(&ctx, a),
        Command::Diagnose(a) => cmd_diagnose(&ctx, a),
        Command::Asympt(a) => cmd_asympt(&ctx, a),
        Command::Interlace(a) => cmd_interlace(&ctx, a),
        Command::Report(a) => cmd_report(&ctx, a),
    })?
}

struct Ctx {
    format: Format,
    output: Option<PathBuf>,
    certifier: Certifier,
    seed: u64,
}

impl Ctx {
    fn emit<T: Serialize, R: Serialize>(&self, doc: &T, rows: &[R]) -> Result<()> {
        emit(self.format, self.output.as_deref(), doc, rows)
    }

    fn gammas(&self, n_max: usize) -> Result<ZetaCoefficientTable> {
        self.certifier.source.table(n_max, self.certifier.bits)
    }
}

#[derive(Serialize)]
struct GammaRow {
    n: usize,
    mid: String,
    rad: String,
}

#[derive(Serialize)]
struct GammaDoc {
    bits: u32,
    #[serde(rename = "U")]
    cutoff: u32,
    #[serde(rename = "K")]
    terms: usize,
    xi_half: Number,
    gammas: Vec<GammaRow>,
}

fn cmd_gamma(ctx: &Ctx, a: &GammaArgs) -> Result<ExitCode> {
    let n_max = usize::try_from(a.max_n).map_err(|_| AppError::Usage("--max-n must be non-negative".into()))?;
    let t = ctx.gammas(n_max)?;
    let rows: Vec<GammaRow> = t.gammas[..=n_max]
        .iter()
        .enumerate()
        .map(|(n, g)| GammaRow { n, mid: g.mid_decimal(), rad: g.rad_decimal() })
        .collect();
    let doc = GammaDoc {
        bits: t.params.bits,
        cutoff: t.params.cutoff,
        terms: t.terms,
        xi_half: Number::ball(&t.xi_half),
        gammas: rows,
    };
    ctx.emit(&doc, &doc.gammas)?;
    Ok(ExitCode::Ok)
}

fn need<T: Clone>(v: &Option<T>, flag: &str) -> Result<T> {
    v.clone().ok_or_else(|| AppError::Usage(format!("{flag} is required")))
}

#[derive(Serialize)]
struct CertifyDoc {
    cells: Vec<Cell>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    thresholds: Vec<Threshold>,
}

fn cmd_certify(ctx: &Ctx, a: &CertifyArgs) -> Result<ExitCode> {
    let kind = match (a.family, a.brenke) {
        (Some(k), false) => k,
        (None, true) | (Some(FamilyKind::Brenke), true) => FamilyKind::Brenke,
        (None, false) => return Err(AppError::Usage("one of --family or --brenke is required".into())),
        (Some(_), true) => return Err(AppError::Usage("--brenke conflicts with --family".into())),
    };
    if a.n_min > a.n_max {
        return Err(AppError::Usage("--n-min exceeds --n-max".into()));
    }
    let shifts: Vec<usize> = match (a.s, a.s_max) {
        (Some(_), Some(_)) => return Err(AppError::Usage("--s conflicts with --s-max".into())),
        (_, Some(m)) => (0..=m).collect(),
        (s, None) => vec![s.unwrap_or(0)],
    };
    let alpha = || -> Result<ExactRational> { parse_rational_arg(a.alpha.as_deref().unwrap_or("0")) };
    let specs: Vec<FamilySpec> = match kind {
        FamilyKind::Jensen => vec![FamilySpec::Jensen],
        FamilyKind::Qhat => vec![FamilySpec::Qhat { big_n: need(&a.big_n, "--N")? }],
        FamilyKind::JensenShifted => shifts.iter().map(|&s| FamilySpec::JensenShifted { s }).collect(),
        FamilyKind::PAlpha => {
            let al = alpha()?;
            shifts.iter().map(|&s| FamilySpec::PAlpha { alpha: al.clone(), s }).collect()
        }
        FamilyKind::QAlpha => {
            let al = alpha()?;
            shifts.iter().map(|&s| FamilySpec::QAlpha { alpha: al.clone(), s }).collect()
        }
        FamilyKind::Dunkl => vec![FamilySpec::AppellDunkl {
            mu: parse_rational_arg(&need(&a.series.mu, "--mu")?)?,
            a: a.series.a(None)?,
        }],
        FamilyKind::Brenke => vec![FamilySpec::Brenke { a: a.series.a(None)?, b: a.series.b(Some("exp"))? }],
    };
    let cells = ctx.certifier.certify(&specs, a.n_min, a.n_max)?;
    for c in cells.iter().filter(|c| !c.real_rooted()) {
        eprintln!("{} n = {}{}: {}", c.family, c.n, c.s.map(|s| format!(" s = {s}")).unwrap_or_default(), c.status);
    }
    let doc = CertifyDoc {
        thresholds: if a.s_max.is_some() { thresholds(&cells) } else { Vec::new() },
        cells,
    };
    let rows: Vec<CellRow> = doc.cells.iter().map(Cell::row).collect();
    ctx.emit(&doc, &rows)?;
    Ok(cells_exit(&doc.cells))
}

fn verdict_text(v: Verdict) -> String {
    match v {
        Verdict::Pass => "PASS".into(),
        Verdict::Fail(n) => format!("FAIL@{n}"),
        Verdict::Inconclusive(n) => format!("INCONCLUSIVE@{n}"),
    }
}

fn test_text(t: BatteryTest) -> String {
    match t {
        BatteryTest::Exp => "exp".into(),
        BatteryTest::OneMinusSquare => "1-z^2".into(),
        BatteryTest::OnePlusPower(l) => format!("(1+z)^{l}"),
        BatteryTest::Coti => "coti".into(),
    }
}

#[derive(Serialize)]
struct IndexedNumber {
    n: usize,
    value: Number,
}

#[derive(Serialize)]
struct RhoReportDoc {
    rows: Vec<RhoRowDoc>,
    increasing: bool,
    approaching_one: bool,
    max_scaled: f64,
}

#[derive(Serialize)]
struct RhoRowDoc {
    n: usize,
    rho: f64,
    one_minus_rho: f64,
    /// `(1 - ρ_n) log n`.
    scaled: f64,
}

impl From<&RhoReport> for RhoReportDoc {
    fn from(r: &RhoReport) -> Self {
        RhoReportDoc {
            rows: r
                .rows
                .iter()
                .map(|x| RhoRowDoc { n: x.n, rho: x.rho, one_minus_rho: x.one_minus_rho, scaled: x.scaled })
                .collect(),
            increasing: r.increasing,
            approaching_one: r.approaching_one,
            max_scaled: r.max_scaled,
        }
    }
}

#[derive(Serialize)]
struct DiagnoseDoc {
    series: String,
    sign_pattern: &'static str,
    log_concave_up_to: usize,
    coti_satisfied_up_to: usize,
    rho: Vec<IndexedNumber>,
    tau: Vec<IndexedNumber>,
    rho_limit_estimate: Option<Number>,
    battery: BTreeMap<String, String>,
    stability: String,
    rho_report: Option<RhoReportDoc>,
}

#[derive(Serialize)]
struct DiagnoseRow {
    n: usize,
    rho: f64,
    one_minus_rho: f64,
    /// `1 - 1/n² - ρ_n`; positive where the coti inequality holds.
    coti_margin: f64,
    battery: String,
}

fn pattern_text(p: SignPattern) -> &'static str {
    match p {
        SignPattern::Constant => "constant",
        SignPattern::Alternating => "alternating",
        SignPattern::Neither => "neither",
        SignPattern::Undetermined => "undetermined",
    }
}

fn diagnose_doc<T: Scalar>(b: &TruncatedSeries<T>, battery_n: usize) -> Result<(DiagnoseDoc, ExitCode)> {
    let d = diagnose(b)?;
    let bat = necessary_battery(b, battery_n)?;
    let stab = stability_battery(b, battery_n)?;
    let rho_report = if b.order() >= 6 { Some(RhoReportDoc::from(&rho_convergence_report(b)?)) } else { None };
    let code = if bat.any_failed() {
        ExitCode::Falsified
    } else if bat.all_passed() {
        ExitCode::Ok
    } else {
        ExitCode::Inconclusive
    };
    let doc = DiagnoseDoc {
        series: describe(&b.spec),
        sign_pattern: pattern_text(d.sign_pattern),
        log_concave_up_to: d.log_concave_up_to,
        coti_satisfied_up_to: d.coti_satisfied_up_to,
        rho: d.rho.iter().map(|(n, v)| IndexedNumber { n: *n, value: Number::of(v) }).collect(),
        tau: d.tau.iter().map(|(n, v)| IndexedNumber { n: *n, value: Number::of(v) }).collect(),
        rho_limit_estimate: d.rho_limit_estimate.as_ref().map(Number::of),
        battery: bat.entries.iter().map(|e| (test_text(e.test), verdict_text(e.verdict))).collect(),
        stability: verdict_text(stab),
        rho_report,
    };
    Ok((doc, code))
}

fn cmd_diagnose(ctx: &Ctx, a: &DiagnoseArgs) -> Result<ExitCode> {
    let spec = a.series.b(None)?;
    let (doc, code) = if spec.needs_zeta() {
        let t = ctx.gammas(spec.zeta_index_needed(a.n_max))?;
        diagnose_doc(&TruncatedSeries::<BallReal>::ball(&spec, a.n_max, ctx.certifier.bits, Some(&t.gammas))?, a.battery_n)?
    } else {
        diagnose_doc(&TruncatedSeries::exact(&spec, a.n_max)?, a.battery_n)?
    };
    let summary = doc.battery.iter().map(|(k, v)| format!("{k}:{v}")).collect::<Vec<_>>().join(" ");
    let rows: Vec<DiagnoseRow> = doc
        .rho
        .iter()
        .map(|r| {
            let rho = r.value.approx();
            let n2 = (r.n * r.n) as f64;
            DiagnoseRow { n: r.n, rho, one_minus_rho: 1.0 - rho, coti_margin: 1.0 - 1.0 / n2 - rho, battery: summary.clone() }
        })
        .collect();
    ctx.emit(&doc, &rows)?;
    Ok(code)
}

#[derive(Serialize)]
struct DeviationRow {
    index: usize,
    deviation: f64,
}

#[derive(Serialize)]
struct AsymptDoc {
    check: String,
    params: BTreeMap<&'static str, String>,
    deviations: Vec<DeviationRow>,
    nonincreasing_tail: bool,
    converged: bool,
}

fn parse_usize_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse().map_err(|_| AppError::Usage(format!("not an index: {t:?}"))))
        .collect()
}

/// Runs an asymptotic check on the exact path when no γ are involved.
pub fn run_check(source: &GammaSource, bits: u32, check: &AsymptoticCheck, factor: f64) -> Result<AsymptoticReport> {
    let needed = match check {
        AsymptoticCheck::Brenke { a, b, indices, .. } | AsymptoticCheck::BrenkeDual { a, b, indices, .. } => {
            let top = indices.iter().copied().max().unwrap_or(0) + 60;
            [a, b].iter().filter(|s| s.needs_zeta()).map(|s| s.zeta_index_needed(top) + 1).max().unwrap_or(0)
        }
        AsymptoticCheck::ShiftedJensen { n, s_values }
        | AsymptoticCheck::LaguerreLimit { n, s_values, .. }
        | AsymptoticCheck::DualLaguerreLimit { n, s_values, .. } => n + s_values.iter().copied().max().unwrap_or(0) + 2,
    };
    if needed == 0 {
        return Ok(verify_scaled_limit::<ExactRational>(check, None, (), factor)?);
    }
    let t = source.table(needed - 1, bits)?;
    Ok(verify_scaled_limit::<BallReal>(check, Some(&t.gammas), bits, factor)?)
}

fn cmd_asympt(ctx: &Ctx, a: &AsymptArgs) -> Result<ExitCode> {
    let s_values = match &a.s_values {
        Some(s) => parse_usize_list(s)?,
        None => {
            let step = a.s_step.max(1);
            (1..).map(|k| k * step).take_while(|&s| s <= a.s_max).collect()
        }
    };
    let alpha = parse_rational_arg(&a.alpha)?;
    let mut params = BTreeMap::new();
    let check = match a.check {
        CheckKind::Las2 | CheckKind::Las2a => {
            let (sa, sb) = (a.series.a(Some("exp"))?, a.series.b(Some("0f1(2)"))?);
            params.insert("A", describe(&sa));
            params.insert("B", describe(&sb));
            params.insert("radius", a.radius.to_string());
            let indices = parse_usize_list(&a.indices)?;
            if a.check == CheckKind::Las2 {
                AsymptoticCheck::Brenke { a: sa, b: sb, indices, radius: a.radius }
            } else {
                AsymptoticCheck::BrenkeDual { a: sa, b: sb, indices, radius: a.radius }
            }
        }
        CheckKind::Gorz => {
            let n = a.n.unwrap_or(3);
            params.insert("n", n.to_string());
            AsymptoticCheck::ShiftedJensen { n, s_values }
        }
        CheckKind::Ass | CheckKind::Asajj => {
            let n = a.n.unwrap_or(2);
            params.insert("n", n.to_string());
            params.insert("alpha", alpha.to_string());
            if a.check == CheckKind::Ass {
                AsymptoticCheck::LaguerreLimit { n, alpha, s_values }
            } else {
                AsymptoticCheck::DualLaguerreLimit { n, alpha, s_values }
            }
        }
    };
    let r = run_check(&ctx.certifier.source, ctx.certifier.bits, &check, a.factor)?;
    let doc = AsymptDoc {
        check: format!("{:?}", a.check).to_lowercase(),
        params,
        deviations: r.deviations.iter().map(|&(index, deviation)| DeviationRow { index, deviation }).collect(),
        nonincreasing_tail: r.nonincreasing_tail,
        converged: r.converged,
    };
    ctx.emit(&doc, &doc.deviations)?;
    Ok(ExitCode::Ok)
}

#[derive(Serialize)]
struct InterlaceDoc {
    a: String,
    b: String,
    pairs: Vec<InterlaceRow>,
}

fn cmd_interlace(ctx: &Ctx, a: &InterlaceArgs) -> Result<ExitCode> {
    let (sa, sb) = (a.series.a(Some("exp"))?, a.series.b(None)?);
    let spec = FamilySpec::Brenke { a: sa.clone(), b: sb.clone() };
    let rows = ctx.certifier.interlace(&spec, a.n_max, a.pairs, ctx.seed)?;
    let code = if rows.iter().any(InterlaceRow::falsified) {
        ExitCode::Falsified
    } else if rows.iter().all(InterlaceRow::interlaces) {
        ExitCode::Ok
    } else {
        ExitCode::Inconclusive
    };
    let doc = InterlaceDoc { a: describe(&sa), b: describe(&sb), pairs: rows };
    ctx.emit(&doc, &doc.pairs)?;
    Ok(code)
}

#[derive(Serialize)]
struct AsymptSummary {
    check: &'static str,
    n: usize,
    alpha: String,
    deviations: Vec<DeviationRow>,
    nonincreasing_tail: bool,
}

#[derive(Serialize)]
struct ReportDoc {
    bits: u32,
    rho_report: RhoReportDoc,
    cells: Vec<Cell>,
    thresholds: BTreeMap<String, Vec<Threshold>>,
    asymptotics: Vec<AsymptSummary>,
}

fn cmd_report(ctx: &Ctx, a: &ReportArgs) -> Result<ExitCode> {
    let alphas = parse_rational_list(&a.alphas)?;
    let exps: Vec<u32> = parse_usize_list(&a.qhat_exponents)?.into_iter().map(|e| e as u32).collect();
    let need = (a.qhat_n_max + 1)
        .max(a.shifted_n_max + a.shifted_s_max + 2)
        .max(a.alpha_n_max + a.alpha_s_max + 2)
        .max(41);
    let table = ctx.gammas(need)?;
    let zeta = TruncatedSeries::<BallReal>::ball(&SeriesSpec::ZetaRelative { s: 0 }, 40, ctx.certifier.bits, Some(&table.gammas))?;
    let rho_report = RhoReportDoc::from(&rho_convergence_report(&zeta)?);

    let c = &ctx.certifier;
    let mut cells = Vec::new();
    let mut ths = BTreeMap::new();
    let qhat: Vec<FamilySpec> = exps.iter().map(|&big_n| FamilySpec::Qhat { big_n }).collect();
    cells.extend(c.certify(&qhat, 1, a.qhat_n_max)?);
    let shifted: Vec<FamilySpec> = (0..=a.shifted_s_max).map(|s| FamilySpec::JensenShifted { s }).collect();
    let sc = c.certify(&shifted, 1, a.shifted_n_max)?;
    ths.insert("jensen-shifted".to_string(), thresholds(&sc));
    cells.extend(sc);
    for al in &alphas {
        for (name, mk) in [
            ("p-alpha", (|alpha, s| FamilySpec::PAlpha { alpha, s }) as fn(ExactRational, usize) -> FamilySpec),
            ("q-alpha", |alpha, s| FamilySpec::QAlpha { alpha, s }),
        ] {
            let specs: Vec<FamilySpec> = (0..=a.alpha_s_max).map(|s| mk(al.clone(), s)).collect();
            let fc = c.certify(&specs, 1, a.alpha_n_max)?;
            ths.insert(format!("{name}(alpha={al})"), thresholds(&fc));
            cells.extend(fc);
        }
    }

    let mut asymptotics = Vec::new();
    let grid: Vec<usize> = (1..=5).map(|k| 5 * k).collect();
    let checks = [
        ("gorz", 3, int(0), AsymptoticCheck::ShiftedJensen { n: 3, s_values: grid.clone() }),
        ("ass", 2, int(0), AsymptoticCheck::LaguerreLimit { n: 2, alpha: int(0), s_values: vec![5, 10, 20] }),
        ("asajj", 2, int(0), AsymptoticCheck::DualLaguerreLimit { n: 2, alpha: int(0), s_values: vec![5, 10, 20] }),
    ];
    for (check, n, alpha, chk) in checks {
        let r = run_check(&c.source, c.bits, &chk, brenke_core::families::CONVERGENCE_FACTOR)?;
        asymptotics.push(AsymptSummary {
            check,
            n,
            alpha: alpha.to_string(),
            deviations: r.deviations.iter().map(|&(index, deviation)| DeviationRow { index, deviation }).collect(),
            nonincreasing_tail: r.nonincreasing_tail,
        });
    }
    let code = cells_exit(&cells);
    let doc = ReportDoc { bits: c.bits, rho_report, cells, thresholds: ths, asymptotics };
    let rows: Vec<CellRow> = doc.cells.iter().map(Cell::row).collect();
    ctx.emit(&doc, &rows)?;
    Ok(code)
}
