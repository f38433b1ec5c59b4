//! Ground truth for every formula: a transfer sweep over cells for domino
//! regions, path determinants for hexagons, brute-force enumeration for
//! tiny regions, and exact samplers built on the first two.

pub mod domino_dp;
pub mod enumerate;
pub mod lozenge;

use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::regions::paths::Tiling;
use crate::regions::{CellRegion, RegionKind};

pub use domino_dp::{
    count_weighted_domino, domino_count_by_vertical, domino_count_by_vertical_with_limit, eval_by_vertical,
    sample_domino, DEFAULT_WIDTH_LIMIT,
};
pub use enumerate::{enumerate_tilings_tiny, enumerate_with_limit, ENUMERATION_LIMIT};
pub use lozenge::{count_lozenge, sample_lozenge};

/// Exact sample: `a^{v(T)}`-weighted for domino regions, uniform for
/// hexagons (where `a` is ignored). Deterministic in `seed`.
pub fn sample_tiling(region: &CellRegion, a: &BigRational, seed: u64) -> Result<Tiling> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match region.kind {
        RegionKind::Aztec { .. } => Ok(Tiling::Domino(sample_domino(region, a, &mut rng)?)),
        RegionKind::Hexagon { .. } => Ok(Tiling::Lozenge(sample_lozenge(region, &mut rng)?)),
    }
}
