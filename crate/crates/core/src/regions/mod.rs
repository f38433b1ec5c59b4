//! Lattice regions, concrete tilings, and the passage from tilings to
//! non-intersecting paths and particle configurations.
//!
//! Aztec cells are unit squares `[i,i+1]×[j,j+1]` keyed by their lower-left
//! corner. Hexagon cells are the two triangles of each unit square cut along
//! its rising diagonal: `Upper` has corners `(i,j),(i,j+1),(i+1,j+1)` and
//! `Lower` has corners `(i,j),(i+1,j),(i+1,j+1)`.

pub mod domino;
pub mod lozenge;
pub mod paths;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::collections::BTreeSet;

use crate::error::{precondition, Result};
use crate::gaps::GapSet;

pub use domino::{classify_domino, count_vertical, Domino, DominoClass, DominoTiling};
pub use lozenge::{Lozenge, LozengeKind, LozengeTiling};
pub use paths::{paths_to_particles, paths_to_tiling, tiling_to_paths, ParticleConfig, PathSystem, Tiling};

/// A unit square `(i, j)` or triangle `(i, j, t)`; `t` is 0 for squares and
/// for upper triangles, 1 for lower triangles.
pub type CellId = (i64, i64, u8);

pub const UPPER: u8 = 0;
pub const LOWER: u8 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RegionKind {
    Aztec { n: i64 },
    Hexagon { l: i64, m: i64, n: i64 },
}

/// Particles at `level` are excluded from `sites`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParticleGap {
    pub level: i64,
    pub sites: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellRegion {
    #[serde(flatten)]
    pub kind: RegionKind,
    #[serde(serialize_with = "serialize_cells")]
    pub cells: BTreeSet<CellId>,
    /// Pairs of adjacent cells that may not form a single tile.
    #[serde(serialize_with = "serialize_edges")]
    pub forbidden: BTreeSet<(CellId, CellId)>,
    /// A particle exclusion that the cell set alone does not express.
    pub gap: Option<ParticleGap>,
}

fn cell_json(c: &CellId, hex: bool) -> Vec<i64> {
    if hex {
        vec![c.0, c.1, c.2 as i64]
    } else {
        vec![c.0, c.1]
    }
}

fn serialize_cells<S: Serializer>(cells: &BTreeSet<CellId>, s: S) -> std::result::Result<S::Ok, S::Error> {
    let hex = cells.iter().any(|c| c.2 != 0);
    let mut seq = s.serialize_seq(Some(cells.len()))?;
    for c in cells {
        seq.serialize_element(&cell_json(c, hex))?;
    }
    seq.end()
}

fn serialize_edges<S: Serializer>(edges: &BTreeSet<(CellId, CellId)>, s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(edges.len()))?;
    for (a, b) in edges {
        seq.serialize_element(&[cell_json(a, false), cell_json(b, false)])?;
    }
    seq.end()
}

impl CellRegion {
    pub fn is_aztec(&self) -> bool {
        matches!(self.kind, RegionKind::Aztec { .. })
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, c: &CellId) -> bool {
        self.cells.contains(c)
    }

    pub fn is_forbidden(&self, a: CellId, b: CellId) -> bool {
        self.forbidden.contains(&(a.min(b), a.max(b)))
    }
}

/// Which Aztec region to build.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AztecVariant {
    Full,
    /// `A_N^{m,k}`: no particle at or above `k` at level `2m-1`.
    Reduced {
        m: i64,
        k: i64,
    },
    /// `Ã_N^{m,k}`: no particle at or above `k` at level `2m`.
    Tilde {
        m: i64,
        k: i64,
    },
    /// No particle in the gap at level `2m - ε`.
    MultiGap {
        m: i64,
        eps: u8,
        gaps: GapSet,
    },
}

/// Whether the unit square with lower-left corner `(i, j)` lies in `A_N`.
pub fn in_aztec(n: i64, i: i64, j: i64) -> bool {
    let x = i.abs().max((i + 1).abs());
    let y = j.abs().max((j + 1).abs());
    x + y <= n + 1
}

/// Corner test for `y ≤ max{2m-1-N-x, x-2m-1+N+2k}` on the whole square.
fn below_reduction_line(n: i64, m: i64, k: i64, i: i64, j: i64) -> bool {
    let g = |x: i64| (2 * m - 1 - n - x).max(x - 2 * m - 1 + n + 2 * k);
    j + 1 <= g(i).min(g(i + 1))
}

fn aztec_cells(n: i64) -> BTreeSet<CellId> {
    let mut cells = BTreeSet::new();
    for j in -n - 1..=n {
        for i in -n - 1..=n {
            if in_aztec(n, i, j) {
                cells.insert((i, j, 0));
            }
        }
    }
    cells
}

pub fn build_aztec_region(n: i64, variant: &AztecVariant) -> Result<CellRegion> {
    precondition(n >= 0, || format!("need N ≥ 0, got {n}"))?;
    let kind = RegionKind::Aztec { n };
    let mut region = CellRegion { kind, cells: aztec_cells(n), forbidden: BTreeSet::new(), gap: None };
    match variant {
        AztecVariant::Full => {}
        AztecVariant::Reduced { m, k } => {
            let (m, k) = (*m, *k);
            precondition(1 <= m && m <= n, || format!("need 1 ≤ m ≤ N, got m={m}"))?;
            region.cells.retain(|&(i, j, _)| below_reduction_line(n, m, k, i, j));
        }
        AztecVariant::Tilde { m, k } => {
            let (m, k) = (*m, *k);
            precondition(1 <= m && m <= n, || format!("need 1 ≤ m ≤ N, got m={m}"))?;
            if m < n {
                region.cells.retain(|&(i, j, _)| below_reduction_line(n, m + 1, k + 1, i, j));
                // The segment hangs below the apex of the removed part.
                let x = 2 * m - k - n + 1;
                let left = (x - 1, k - 1, 0);
                let right = (x, k - 1, 0);
                region.forbidden.insert((left, right));
            }
        }
        AztecVariant::MultiGap { m, eps, gaps } => {
            let (m, eps) = (*m, *eps);
            precondition(1 <= m && m <= n, || format!("need 1 ≤ m ≤ N, got m={m}"))?;
            precondition(eps <= 1, || format!("ε must be 0 or 1, got {eps}"))?;
            region.gap = Some(ParticleGap { level: 2 * m - eps as i64, sites: gaps.sites_within(1 - n, m) });
        }
    }
    Ok(region)
}

/// Which hexagon region to build.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HexagonVariant {
    Full,
    /// `H^{r,k}`: the part of the hexagon below `y = max{k, x+k-r}`.
    Reduced {
        r: i64,
        k: i64,
    },
    /// Forbids particles of the gap at level `r`.
    MultiGap {
        r: i64,
        gaps: GapSet,
    },
}

/// Scaled centroid `(3x, 3y)` of a triangle.
fn centroid3(c: &CellId) -> (i64, i64) {
    if c.2 == UPPER {
        (3 * c.0 + 1, 3 * c.1 + 2)
    } else {
        (3 * c.0 + 2, 3 * c.1 + 1)
    }
}

fn hexagon_cells(l: i64, m: i64, n: i64) -> BTreeSet<CellId> {
    let mut cells = BTreeSet::new();
    for j in 0..m + n {
        for i in 0..l {
            for t in [UPPER, LOWER] {
                let c = (i, j, t);
                let (x, y) = centroid3(&c);
                if y >= x - 3 * (l - m) && y <= x + 3 * n {
                    cells.insert(c);
                }
            }
        }
    }
    cells
}

pub fn build_hexagon_region(l: i64, m: i64, n: i64, variant: &HexagonVariant) -> Result<CellRegion> {
    precondition(l > m && m >= 1 && n >= 1, || format!("need L > M ≥ 1 and N ≥ 1, got ({l},{m},{n})"))?;
    let kind = RegionKind::Hexagon { l, m, n };
    let mut region = CellRegion { kind, cells: hexagon_cells(l, m, n), forbidden: BTreeSet::new(), gap: None };
    match variant {
        HexagonVariant::Full => {}
        HexagonVariant::Reduced { r, k } => {
            let (r, k) = (*r, *k);
            precondition(0 <= r && r <= l, || format!("need 0 ≤ r ≤ L, got r={r}"))?;
            region.cells.retain(|c| {
                let (x, y) = centroid3(c);
                y <= (3 * k).max(x + 3 * k - 3 * r)
            });
            region.gap = Some(ParticleGap { level: r, sites: (k..m + n).collect() });
        }
        HexagonVariant::MultiGap { r, gaps } => {
            let r = *r;
            precondition(1 <= r && r <= l - 1, || format!("need 1 ≤ r ≤ L-1, got r={r}"))?;
            let sites = gaps.sites_within(0, m + n - 1);
            // Every excluded site sits inside a lozenge with horizontal edges.
            for &s in &sites {
                region.cells.remove(&(r - 1, s, LOWER));
                region.cells.remove(&(r, s, UPPER));
            }
            region.gap = Some(ParticleGap { level: r, sites });
        }
    }
    Ok(region)
}
