//! Exhaustive formula-versus-oracle sweeps over parameter grids.

use std::time::Instant;

use anyhow::Result;
use clap::ValueEnum;
use num_rational::BigRational;
use pade_tilings::algebra::rational::format_rational;
use pade_tilings::sweeps::{
    aztec_count_grid, aztec_kernel_grid, aztec_multigap_grid, hexagon_count_grid, hexagon_kernel_grid,
    hexagon_multigap_grid, run_case, CaseOutcome, SweepCase,
};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Reduced Aztec counts at both levels.
    AztecCount,
    /// Reduced hexagon counts and box counts.
    HexagonCount,
    /// Ratios for gaps made of two clusters in the Aztec diamond.
    AztecMultigap,
    /// Ratios for gaps made of several clusters in the hexagon.
    HexagonMultigap,
    /// Gap probabilities from the Aztec kernel.
    AztecKernel,
    /// Gap probabilities from the hexagon kernel.
    HexagonKernel,
    All,
}

impl Family {
    pub const EACH: [Family; 6] = [
        Family::AztecCount,
        Family::HexagonCount,
        Family::AztecMultigap,
        Family::HexagonMultigap,
        Family::AztecKernel,
        Family::HexagonKernel,
    ];
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub families: Vec<Family>,
    /// Largest Aztec order `N`.
    pub n_max: i64,
    /// Largest hexagon side `L`.
    pub l_max: i64,
    /// Largest hexagon side `N` (number of paths).
    pub hex_n_max: i64,
    pub weights: Vec<BigRational>,
    pub jobs: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct GridEcho {
    pub families: Vec<Family>,
    pub n_max: i64,
    pub l_max: i64,
    pub hex_n_max: i64,
    pub weights: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub family: Family,
    #[serde(flatten)]
    pub outcome: CaseOutcome,
    pub millis: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub grid: GridEcho,
    pub cases: Vec<CaseReport>,
    pub passed: usize,
    pub failed: usize,
    pub ok: bool,
}

impl VerifyConfig {
    fn expanded_families(&self) -> Vec<Family> {
        if self.families.contains(&Family::All) {
            return Family::EACH.to_vec();
        }
        Family::EACH.iter().copied().filter(|f| self.families.contains(f)).collect()
    }

    pub fn cases(&self) -> Vec<(Family, SweepCase)> {
        let mut out = Vec::new();
        for family in self.expanded_families() {
            let cases = match family {
                Family::AztecCount => aztec_count_grid(self.n_max, &self.weights, &[0, 1]),
                Family::HexagonCount => hexagon_count_grid(self.l_max, self.hex_n_max),
                Family::AztecMultigap => aztec_multigap_grid(self.n_max, &self.weights),
                Family::HexagonMultigap => hexagon_multigap_grid(self.l_max, self.hex_n_max),
                Family::AztecKernel => aztec_kernel_grid(self.n_max, &self.weights),
                Family::HexagonKernel => hexagon_kernel_grid(self.l_max, self.hex_n_max),
                Family::All => unreachable!(),
            };
            out.extend(cases.into_iter().map(|c| (family, c)));
        }
        out
    }
}

/// Runs every case of the grid on a pool of `config.jobs` workers. Case
/// failures, including capacity errors, are recorded per case.
pub fn run_verify_sweep(config: &VerifyConfig, command: Vec<String>) -> Result<RunReport> {
    let cases = config.cases();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(config.jobs.max(1)).build()?;
    let reports: Vec<CaseReport> = pool.install(|| {
        cases
            .par_iter()
            .map(|(family, case)| {
                let start = Instant::now();
                let outcome = run_case(case);
                CaseReport { family: *family, outcome, millis: start.elapsed().as_secs_f64() * 1e3 }
            })
            .collect()
    });
    let passed = reports.iter().filter(|r| r.outcome.matches).count();
    let failed = reports.len() - passed;
    Ok(RunReport {
        command,
        grid: GridEcho {
            families: config.expanded_families(),
            n_max: config.n_max,
            l_max: config.l_max,
            hex_n_max: config.hex_n_max,
            weights: config.weights.iter().map(format_rational).collect(),
        },
        cases: reports,
        passed,
        failed,
        ok: failed == 0,
    })
}
