//! Command-line front end. Every subcommand calls one library function and
//! prints its result as JSON; [`execute`] returns that JSON together with
//! whether the command's checks passed.

pub mod render;
pub mod verify;

use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use pade_tilings::algebra::rational::{format_rational, parse_rational, to_f64};
use pade_tilings::approximants::{
    aztec_count_eps, aztec_full, aztec_multigap_solve, aztec_pade_eps, hexagon_hermite_pade, hexagon_multigap_solve,
    hexagon_reduced_count, macmahon,
};
use pade_tilings::kernels::{fredholm_nystrom, gap_determinant, HexKernelSpec, KernelSpec, KrawtchoukKernelSpec};
use pade_tilings::oracle::{count_lozenge, count_weighted_domino, sample_tiling};
use pade_tilings::regions::{
    build_aztec_region, build_hexagon_region, tiling_to_paths, AztecVariant, CellRegion, HexagonVariant, Tiling,
};
use pade_tilings::shuffling::{mc_gap_probability, shuffle_sample};
use pade_tilings::sweeps::{run_case, SweepCase};
use pade_tilings::GapSet;
use serde::Serialize;
use serde_json::{json, Value};

pub use render::render_svg;
pub use verify::{run_verify_sweep, Family, RunReport, VerifyConfig};

/// Largest deviation, in standard deviations, that a Monte Carlo estimate
/// may show and still pass.
pub const MC_SIGMA_LIMIT: f64 = 4.0;
/// Largest gap between a quadrature value and the exact determinant.
pub const NYSTROM_TOLERANCE: f64 = 1e-8;

#[derive(Parser, Debug)]
#[command(name = "pade-tilings", version, about = "Exact weighted tiling counts from Padé-type approximants")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Weighted tiling counts.
    #[command(subcommand)]
    Count(CountCommand),
    /// Approximant solutions and count ratios.
    #[command(subcommand)]
    Ratio(RatioCommand),
    /// Compare formulas with independent counts over a parameter grid.
    Verify(VerifyArgs),
    /// Draw a random tiling, or estimate a gap probability by shuffling.
    Sample(SampleArgs),
    /// Draw a random tiling and write it as SVG.
    Render(RenderArgs),
    /// Correlation kernel entries and gap determinants.
    #[command(subcommand)]
    Kernel(KernelCommand),
}

#[derive(Subcommand, Debug)]
pub enum CountCommand {
    /// `a^{v(T)}`-weighted count of a (reduced) Aztec diamond.
    Aztec(AztecCountArgs),
    /// Lozenge count of a (reduced) hexagon.
    Hexagon(HexagonCountArgs),
}

#[derive(Subcommand, Debug)]
pub enum RatioCommand {
    /// Padé data behind one ratio of Aztec counts.
    Pade(PadeArgs),
    /// Hermite-Padé data behind one hexagon count.
    Hermite(HermiteArgs),
    /// Ratio of counts for a gap with several clusters.
    #[command(subcommand)]
    Multigap(MultigapCommand),
}

#[derive(Subcommand, Debug)]
pub enum MultigapCommand {
    Aztec(AztecMultigapArgs),
    Hexagon(HexagonMultigapArgs),
}

#[derive(Subcommand, Debug)]
pub enum KernelCommand {
    /// One kernel entry `K(x, y)`.
    Entry(KernelEntryArgs),
    /// Exact gap probability `det(1 - 1_I K)`.
    Det(KernelDetArgs),
    /// The same determinant by quadrature of the contour integrals.
    Nystrom(KernelNystromArgs),
}

fn parse_a(s: &str) -> std::result::Result<BigRational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Parses clusters listed top first, e.g. `12..13,6..8,2` or `3..`.
pub fn parse_gaps(s: &str) -> Result<GapSet> {
    let mut clusters = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        let (lo, hi) = match part.split_once("..") {
            Some((lo, "")) => (lo, None),
            Some((lo, hi)) => (lo, Some(hi)),
            None => (part, Some(part)),
        };
        let lo: i64 = lo.trim().parse().with_context(|| format!("bad cluster `{part}`"))?;
        let hi = hi.map(|h| h.trim().parse::<i64>()).transpose().with_context(|| format!("bad cluster `{part}`"))?;
        clusters.push((lo, hi));
    }
    Ok(GapSet::from_clusters(&clusters)?)
}

#[derive(Args, Debug)]
pub struct AztecCountArgs {
    #[arg(long)]
    pub n: i64,
    /// Level parameter; omit together with `--k` for the whole diamond.
    #[arg(long, requires = "k")]
    pub m: Option<i64>,
    #[arg(long, requires = "m", allow_negative_numbers = true)]
    pub k: Option<i64>,
    /// 1 for level `2m-1`, 0 for level `2m`.
    #[arg(long, default_value_t = 1)]
    pub eps: u8,
    #[arg(long, default_value = "1", value_parser = parse_a)]
    pub a: BigRational,
    /// Also count by transfer matrices and compare.
    #[arg(long)]
    pub check: bool,
}

#[derive(Args, Debug)]
pub struct HexagonCountArgs {
    #[arg(long)]
    pub l: i64,
    #[arg(long)]
    pub m: i64,
    #[arg(long)]
    pub n: i64,
    /// Cut level; omit together with `--k` for the whole hexagon.
    #[arg(long, requires = "k")]
    pub r: Option<i64>,
    #[arg(long, requires = "r")]
    pub k: Option<i64>,
    /// Also count by the path determinant and compare.
    #[arg(long)]
    pub check: bool,
}

#[derive(Args, Debug)]
pub struct PadeArgs {
    #[arg(long)]
    pub n: i64,
    #[arg(long)]
    pub m: i64,
    #[arg(long)]
    pub j: i64,
    #[arg(long, default_value_t = 1)]
    pub eps: u8,
    #[arg(long, default_value = "1", value_parser = parse_a)]
    pub a: BigRational,
}

#[derive(Args, Debug)]
pub struct HermiteArgs {
    #[arg(long)]
    pub l: i64,
    #[arg(long)]
    pub m: i64,
    #[arg(long)]
    pub n: i64,
    #[arg(long)]
    pub r: i64,
    #[arg(long)]
    pub k: i64,
}

#[derive(Args, Debug)]
pub struct AztecMultigapArgs {
    #[arg(long)]
    pub n: i64,
    #[arg(long)]
    pub m: i64,
    #[arg(long, default_value_t = 1)]
    pub eps: u8,
    /// Clusters top first, e.g. `3..,-1..0`.
    #[arg(long, allow_hyphen_values = true)]
    pub gaps: String,
    /// Index of the bound to raise by one.
    #[arg(long)]
    pub jstar: usize,
    #[arg(long, default_value = "1", value_parser = parse_a)]
    pub a: BigRational,
    /// Also compute the ratio from transfer counts.
    #[arg(long)]
    pub check: bool,
}

#[derive(Args, Debug)]
pub struct HexagonMultigapArgs {
    #[arg(long)]
    pub l: i64,
    #[arg(long)]
    pub m: i64,
    #[arg(long)]
    pub n: i64,
    #[arg(long)]
    pub r: i64,
    /// Bounded clusters top first, e.g. `12..13,6..8,2..2`.
    #[arg(long)]
    pub gaps: String,
    /// Also compute the ratio from path determinants.
    #[arg(long)]
    pub check: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, value_delimiter = ',', default_value = "all")]
    pub family: Vec<Family>,
    /// Largest Aztec order.
    #[arg(long, default_value_t = 6)]
    pub n_max: i64,
    /// Largest hexagon side `L`.
    #[arg(long, default_value_t = 8)]
    pub l_max: i64,
    /// Largest hexagon side `N`.
    #[arg(long, default_value_t = 4)]
    pub hex_n_max: i64,
    /// Comma-separated weights.
    #[arg(long, value_delimiter = ',', default_value = "1,1/2", value_parser = parse_a)]
    pub a: Vec<BigRational>,
    /// Worker threads.
    #[arg(long, env = "PADE_TILINGS_JOBS")]
    pub jobs: Option<usize>,
    /// Report only the cases that did not match.
    #[arg(long)]
    pub failures_only: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Geometry {
    Aztec,
    Hexagon,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Domino shuffling; whole Aztec diamonds only.
    Shuffle,
    /// Exact sampling from the transfer or path counts.
    Dp,
}

/// A region: an Aztec diamond, possibly reduced, or a hexagon, possibly cut.
#[derive(Args, Debug)]
pub struct RegionArgs {
    #[arg(long, value_enum, default_value = "aztec")]
    pub geometry: Geometry,
    /// Aztec order, or the third hexagon side.
    #[arg(long)]
    pub n: i64,
    /// Aztec level parameter, or the second hexagon side.
    #[arg(long)]
    pub m: Option<i64>,
    /// First hexagon side.
    #[arg(long)]
    pub l: Option<i64>,
    /// Hexagon level.
    #[arg(long)]
    pub r: Option<i64>,
    /// Single semi-infinite gap `[k, ∞)`.
    #[arg(long, allow_negative_numbers = true, conflicts_with = "gaps")]
    pub k: Option<i64>,
    /// Several clusters, top first.
    #[arg(long, allow_hyphen_values = true)]
    pub gaps: Option<String>,
    /// 1 for level `2m-1`, 0 for level `2m`.
    #[arg(long, default_value_t = 1)]
    pub eps: u8,
    /// Weight per vertical domino, as `p/q`.
    #[arg(long, default_value = "1", value_parser = parse_a)]
    pub a: BigRational,
}

impl RegionArgs {
    fn gap_set(&self) -> Result<Option<GapSet>> {
        match (&self.gaps, self.k) {
            (Some(s), _) => Ok(Some(parse_gaps(s)?)),
            (None, Some(k)) => Ok(Some(GapSet::semi_infinite(k))),
            (None, None) => Ok(None),
        }
    }

    fn need(&self, v: Option<i64>, flag: &str) -> Result<i64> {
        v.ok_or_else(|| anyhow!("--{flag} is required for this geometry"))
    }

    pub fn region(&self) -> Result<CellRegion> {
        let gaps = self.gap_set()?;
        Ok(match self.geometry {
            Geometry::Aztec => {
                let variant = match gaps {
                    None => AztecVariant::Full,
                    Some(g) => {
                        let m = self.need(self.m, "m")?;
                        match (g.q(), g.k0, self.eps) {
                            (0, None, 1) => AztecVariant::Reduced { m, k: g.lowest() },
                            (0, None, _) => AztecVariant::Tilde { m, k: g.lowest() },
                            _ => AztecVariant::MultiGap { m, eps: self.eps, gaps: g },
                        }
                    }
                };
                build_aztec_region(self.n, &variant)?
            }
            Geometry::Hexagon => {
                let (l, m) = (self.need(self.l, "l")?, self.need(self.m, "m")?);
                let variant = match gaps {
                    None => HexagonVariant::Full,
                    Some(g) => {
                        let r = self.need(self.r, "r")?;
                        match (g.q(), g.k0) {
                            (0, None) => HexagonVariant::Reduced { r, k: g.lowest() },
                            _ => HexagonVariant::MultiGap { r, gaps: g },
                        }
                    }
                };
                build_hexagon_region(l, m, self.n, &variant)?
            }
        })
    }

    pub fn kernel(&self) -> Result<KernelSpec> {
        Ok(match self.geometry {
            Geometry::Aztec => {
                KrawtchoukKernelSpec::new(self.n, self.need(self.m, "m")?, self.eps, self.a.clone())?.into()
            }
            Geometry::Hexagon => {
                HexKernelSpec::new(self.need(self.l, "l")?, self.need(self.m, "m")?, self.n, self.need(self.r, "r")?)?
                    .into()
            }
        })
    }
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    #[command(flatten)]
    pub region: RegionArgs,
    #[arg(long, value_enum, default_value = "dp")]
    pub method: Method,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Instead of one tiling, estimate the probability of the gap
    /// `[k, ∞)` at level `2m-ε` from this many shuffled tilings.
    #[arg(long)]
    pub trials: Option<u64>,
    /// Attach the path system of the sampled tiling.
    #[arg(long)]
    pub paths: bool,
}

#[derive(Args, Debug)]
pub struct RenderArgs {
    #[command(flatten)]
    pub region: RegionArgs,
    #[arg(long, value_enum, default_value = "dp")]
    pub method: Method,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Draw the non-intersecting paths on top.
    #[arg(long)]
    pub paths: bool,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct KernelEntryArgs {
    #[command(flatten)]
    pub region: RegionArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub x: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub y: i64,
}

#[derive(Args, Debug)]
pub struct KernelDetArgs {
    #[command(flatten)]
    pub region: RegionArgs,
    /// Also count the region directly and compare.
    #[arg(long)]
    pub check: bool,
}

#[derive(Args, Debug)]
pub struct KernelNystromArgs {
    #[command(flatten)]
    pub region: RegionArgs,
    /// Starting number of nodes per contour.
    #[arg(long, default_value_t = 16)]
    pub nodes: usize,
}

/// JSON result of one command and whether its checks passed.
#[derive(Debug)]
pub struct Output {
    pub json: Value,
    pub ok: bool,
}

impl Output {
    fn plain<T: Serialize>(v: &T) -> Result<Self> {
        Ok(Output { json: serde_json::to_value(v)?, ok: true })
    }
}

#[derive(Serialize)]
struct CountReport {
    #[serde(flatten)]
    params: Value,
    count: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    matches: Option<bool>,
}

impl CountReport {
    fn new(params: Value, count: &BigRational, oracle: Option<BigRational>) -> Self {
        CountReport {
            params,
            count: format_rational(count),
            matches: oracle.as_ref().map(|o| o == count),
            oracle: oracle.as_ref().map(format_rational),
        }
    }

    fn output(self) -> Result<Output> {
        let ok = self.matches.unwrap_or(true);
        Ok(Output { json: serde_json::to_value(self)?, ok })
    }
}

/// Runs one parsed command. `argv` is echoed by `verify`.
pub fn execute(cli: &Cli, argv: Vec<String>) -> Result<Output> {
    match &cli.command {
        Command::Count(CountCommand::Aztec(args)) => count_aztec(args),
        Command::Count(CountCommand::Hexagon(args)) => count_hexagon(args),
        Command::Ratio(RatioCommand::Pade(p)) => Output::plain(&aztec_pade_eps(p.n, p.m, p.j, p.eps, &p.a)?),
        Command::Ratio(RatioCommand::Hermite(h)) => Output::plain(&hexagon_hermite_pade(h.l, h.m, h.n, h.r, h.k)?),
        Command::Ratio(RatioCommand::Multigap(MultigapCommand::Aztec(g))) => {
            let gaps = parse_gaps(&g.gaps)?;
            let sol = aztec_multigap_solve(g.n, g.m, g.eps, &gaps, g.jstar, &g.a)?;
            let case = SweepCase::AztecMultiGap { n: g.n, m: g.m, eps: g.eps, gaps, jstar: g.jstar, a: g.a.clone() };
            with_check(&sol, g.check.then_some(case))
        }
        Command::Ratio(RatioCommand::Multigap(MultigapCommand::Hexagon(g))) => {
            let gaps = parse_gaps(&g.gaps)?;
            let sol = hexagon_multigap_solve(g.l, g.m, g.n, g.r, &gaps)?;
            let case = SweepCase::HexagonMultiGap { l: g.l, m: g.m, n: g.n, r: g.r, gaps };
            with_check(&sol, g.check.then_some(case))
        }
        Command::Verify(args) => verify(args, argv),
        Command::Sample(args) => sample(args),
        Command::Render(args) => render(args),
        Command::Kernel(KernelCommand::Entry(args)) => {
            let spec = args.region.kernel()?;
            let value = spec.entry(args.x, args.y);
            Ok(Output { json: json!({ "x": args.x, "y": args.y, "value": format_rational(&value) }), ok: true })
        }
        Command::Kernel(KernelCommand::Det(args)) => kernel_det(args),
        Command::Kernel(KernelCommand::Nystrom(args)) => kernel_nystrom(args),
    }
}

fn with_check<T: Serialize>(solution: &T, case: Option<SweepCase>) -> Result<Output> {
    match case {
        None => Output::plain(solution),
        Some(case) => {
            let outcome = run_case(&case);
            let ok = outcome.matches;
            Ok(Output { json: json!({ "solution": solution, "check": outcome }), ok })
        }
    }
}

fn count_aztec(args: &AztecCountArgs) -> Result<Output> {
    let a_str = format_rational(&args.a);
    let (params, count, variant) = match (args.m, args.k) {
        (Some(m), Some(k)) => {
            let variant = if args.eps == 1 { AztecVariant::Reduced { m, k } } else { AztecVariant::Tilde { m, k } };
            let params = json!({ "n": args.n, "m": m, "k": k, "eps": args.eps, "a": a_str });
            (params, aztec_count_eps(args.n, m, k, args.eps, &args.a)?, variant)
        }
        _ => (json!({ "n": args.n, "a": a_str }), aztec_full(args.n, &args.a), AztecVariant::Full),
    };
    let oracle =
        if args.check { Some(count_weighted_domino(&build_aztec_region(args.n, &variant)?, &args.a)?) } else { None };
    CountReport::new(params, &count, oracle).output()
}

fn count_hexagon(args: &HexagonCountArgs) -> Result<Output> {
    let (l, m, n) = (args.l, args.m, args.n);
    let (params, count, variant) = match (args.r, args.k) {
        (Some(r), Some(k)) => {
            let params = json!({ "l": l, "m": m, "n": n, "r": r, "k": k });
            (params, hexagon_reduced_count(l, m, n, r, k)?, HexagonVariant::Reduced { r, k })
        }
        _ => (json!({ "l": l, "m": m, "n": n }), macmahon(l, m, n)?, HexagonVariant::Full),
    };
    let oracle = if args.check {
        Some(BigRational::from_integer(count_lozenge(&build_hexagon_region(l, m, n, &variant)?)?))
    } else {
        None
    };
    CountReport::new(params, &BigRational::from_integer(count), oracle).output()
}

fn verify(args: &VerifyArgs, argv: Vec<String>) -> Result<Output> {
    let jobs = args.jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let config = VerifyConfig {
        families: args.family.clone(),
        n_max: args.n_max,
        l_max: args.l_max,
        hex_n_max: args.hex_n_max,
        weights: args.a.clone(),
        jobs,
    };
    let mut report = run_verify_sweep(&config, argv)?;
    if args.failures_only {
        report.cases.retain(|c| !c.outcome.matches);
    }
    let ok = report.ok;
    Ok(Output { json: serde_json::to_value(&report)?, ok })
}

/// The sampled tiling for `sample` and `render`.
pub fn draw(region: &RegionArgs, method: Method, seed: u64) -> Result<Tiling> {
    match method {
        Method::Dp => Ok(sample_tiling(&region.region()?, &region.a, seed)?),
        Method::Shuffle => {
            if region.geometry != Geometry::Aztec || region.gap_set()?.is_some() {
                bail!("shuffling draws whole Aztec diamonds only");
            }
            Ok(Tiling::Domino(shuffle_sample(region.n, &region.a, seed)?))
        }
    }
}

fn sample(args: &SampleArgs) -> Result<Output> {
    let r = &args.region;
    if let Some(trials) = args.trials {
        let (Some(m), Some(k)) = (r.m, r.k) else { bail!("--trials needs --m and --k") };
        let est = mc_gap_probability(r.n, m, k, r.eps, &r.a, trials, args.seed)?;
        let ok = est.sigmas <= MC_SIGMA_LIMIT;
        return Ok(Output { json: serde_json::to_value(est)?, ok });
    }
    let tiling = draw(r, args.method, args.seed)?;
    if args.paths {
        let paths = tiling_to_paths(&tiling)?;
        return Ok(Output { json: json!({ "tiling": tiling, "paths": paths }), ok: true });
    }
    Output::plain(&tiling)
}

fn render(args: &RenderArgs) -> Result<Output> {
    let tiling = draw(&args.region, args.method, args.seed)?;
    let paths = if args.paths { Some(tiling_to_paths(&tiling)?) } else { None };
    let svg = render_svg(&tiling, paths.as_ref());
    std::fs::write(&args.out, &svg).with_context(|| format!("writing {}", args.out.display()))?;
    let pieces = match &tiling {
        Tiling::Domino(t) => t.dominoes.len(),
        Tiling::Lozenge(t) => t.lozenges.len(),
    };
    Ok(Output { json: json!({ "out": args.out, "pieces": pieces, "paths": args.paths, "bytes": svg.len() }), ok: true })
}

fn region_gaps(r: &RegionArgs) -> Result<GapSet> {
    r.gap_set()?.ok_or_else(|| anyhow!("give the gap with --k or --gaps"))
}

fn kernel_det(args: &KernelDetArgs) -> Result<Output> {
    let r = &args.region;
    let spec = r.kernel()?;
    let gaps = region_gaps(r)?;
    let det = gap_determinant(&spec, &gaps);
    let mut json = json!({ "gaps": gaps, "value": format_rational(&det) });
    let mut ok = true;
    if args.check {
        let region = r.region()?;
        let (total, restricted) = match r.geometry {
            Geometry::Aztec => (aztec_full(r.n, &r.a), count_weighted_domino(&region, &r.a)?),
            Geometry::Hexagon => (
                BigRational::from_integer(macmahon(r.need(r.l, "l")?, r.need(r.m, "m")?, r.n)?),
                BigRational::from_integer(count_lozenge(&region)?),
            ),
        };
        let oracle = restricted / total;
        ok = oracle == det;
        json["oracle"] = json!(format_rational(&oracle));
        json["matches"] = json!(ok);
    }
    Ok(Output { json, ok })
}

fn kernel_nystrom(args: &KernelNystromArgs) -> Result<Output> {
    let r = &args.region;
    let spec = r.kernel()?;
    let gaps = region_gaps(r)?;
    let est = fredholm_nystrom(&spec, &gaps, args.nodes)?;
    let exact = to_f64(&gap_determinant(&spec, &gaps));
    let difference = (est.value - exact).abs();
    let ok = difference <= NYSTROM_TOLERANCE;
    Ok(Output {
        json: json!({ "gaps": gaps, "estimate": est, "exact": exact, "difference": difference, "matches": ok }),
        ok,
    })
}
