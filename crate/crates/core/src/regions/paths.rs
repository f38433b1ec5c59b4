//! Tilings as families of non-intersecting lattice paths, and the particle
//! configurations those paths cut out on each vertical line.
//!
//! Domino paths live on `{0,…,2N}×ℤ`. Path `j` runs from `(0,-j)` to
//! `(2N,-j)`; a south domino contributes two flat steps, a west domino an
//! up-step followed by a flat step, an east domino a single down-step, and
//! north dominoes contribute nothing. Once path `j` reaches the south-east
//! edge at `(2N-2j,-j)` it is padded with flat steps.
//!
//! Lozenge paths live on `{0,…,L}×ℤ` and run from `(0,j)` to `(L,M+j)`,
//! with a flat step through each square and an up-step through each
//! lozenge with vertical edges.

use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

use super::domino::{classify_domino, Domino, DominoClass, DominoTiling};
use super::lozenge::{Lozenge, LozengeKind, LozengeTiling};
use super::{in_aztec, CellRegion, RegionKind, LOWER, UPPER};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Tiling {
    Domino(DominoTiling),
    Lozenge(LozengeTiling),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PathKind {
    Aztec { n: i64 },
    Hexagon { l: i64, m: i64, n: i64 },
}

/// Paths as vertex lists, path `j` starting at height `-j` (domino) or `j`
/// (lozenge).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathSystem {
    #[serde(flatten)]
    pub kind: PathKind,
    pub paths: Vec<Vec<(i64, i64)>>,
}

/// Particle positions on one vertical line, strictly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParticleConfig {
    pub level: i64,
    pub positions: Vec<i64>,
}

impl ParticleConfig {
    pub fn max(&self) -> Option<i64> {
        self.positions.first().copied()
    }

    pub fn avoids(&self, sites: &[i64]) -> bool {
        !self.positions.iter().any(|p| sites.contains(p))
    }
}

/// Segment endpoints on domino boundaries use doubled `y` so that the
/// half-integer heights become odd integers.
type Pt = (i64, i64);

fn domino_segment(d: &Domino, n: i64) -> Option<(Pt, Pt, DominoClass)> {
    let (a, b) = d.a;
    match classify_domino(d, n) {
        DominoClass::North => None,
        DominoClass::South => Some(((a, 2 * b + 1), (a + 2, 2 * b + 1), DominoClass::South)),
        DominoClass::West => Some(((a, 2 * b + 1), (a + 1, 2 * b + 3), DominoClass::West)),
        DominoClass::East => Some(((a, 2 * b + 3), (a + 1, 2 * b + 1), DominoClass::East)),
    }
}

fn aztec_paths(t: &DominoTiling) -> Result<PathSystem> {
    let n = t.n;
    let full = t.completed()?;
    let mut by_start: BTreeMap<Pt, (Pt, DominoClass)> = BTreeMap::new();
    for d in &full.dominoes {
        if let Some((s, e, c)) = domino_segment(d, n) {
            if by_start.insert(s, (e, c)).is_some() {
                return Err(Error::InvalidTiling(format!("two path segments start at {s:?}")));
            }
        }
    }
    let segments = by_start.len();
    let mut used = 0usize;
    let mut paths = Vec::with_capacity(n as usize);
    for j in 0..n {
        let end = (n - j, -2 * j - 1);
        let mut pt: Pt = (-n + j, -2 * j - 1);
        let mut v = vec![(0, -j)];
        while pt != end {
            let (next, class) =
                *by_start.get(&pt).ok_or_else(|| Error::InvalidTiling(format!("path {j} breaks off at {pt:?}")))?;
            let (alpha, beta) = *v.last().unwrap();
            match class {
                DominoClass::South => v.extend([(alpha + 1, beta), (alpha + 2, beta)]),
                DominoClass::West => v.extend([(alpha + 1, beta + 1), (alpha + 2, beta + 1)]),
                DominoClass::East => v.push((alpha, beta - 1)),
                DominoClass::North => unreachable!(),
            }
            used += 1;
            pt = next;
        }
        let (mut alpha, beta) = *v.last().unwrap();
        debug_assert_eq!((alpha, beta), (2 * n - 2 * j, -j));
        while alpha < 2 * n {
            alpha += 1;
            v.push((alpha, beta));
        }
        paths.push(v);
    }
    if used != segments {
        return Err(Error::InvalidTiling(format!("{} segments belong to no path", segments - used)));
    }
    Ok(PathSystem { kind: PathKind::Aztec { n }, paths })
}

fn hexagon_paths(t: &LozengeTiling) -> Result<PathSystem> {
    let mut step: BTreeMap<(i64, i64), (i64, i64)> = BTreeMap::new();
    for z in &t.lozenges {
        match z.kind {
            LozengeKind::A => step.insert((z.i, z.j), (z.i + 1, z.j + 1)),
            LozengeKind::B => step.insert((z.i, z.j), (z.i + 1, z.j)),
            LozengeKind::C => None,
        };
    }
    let mut paths = Vec::with_capacity(t.n as usize);
    let mut used = 0;
    for j in 0..t.n {
        let mut v = vec![(0, j)];
        let mut pt = (0, j);
        while pt.0 < t.l {
            pt = *step.get(&pt).ok_or_else(|| Error::InvalidTiling(format!("path {j} breaks off at {pt:?}")))?;
            used += 1;
            v.push(pt);
        }
        if pt != (t.l, t.m + j) {
            return Err(Error::InvalidTiling(format!("path {j} ends at {pt:?}")));
        }
        paths.push(v);
    }
    if used != step.len() {
        return Err(Error::InvalidTiling("some lozenges lie on no path".into()));
    }
    Ok(PathSystem { kind: PathKind::Hexagon { l: t.l, m: t.m, n: t.n }, paths })
}

/// Paths of a tiling. Domino tilings of reduced regions are first completed
/// to the full diamond with north dominoes.
pub fn tiling_to_paths(t: &Tiling) -> Result<PathSystem> {
    let ps = match t {
        Tiling::Domino(d) => aztec_paths(d)?,
        Tiling::Lozenge(z) => hexagon_paths(z)?,
    };
    check_non_intersecting(&ps)?;
    Ok(ps)
}

fn check_non_intersecting(ps: &PathSystem) -> Result<()> {
    let mut seen = BTreeSet::new();
    for p in &ps.paths {
        for v in p {
            if !seen.insert(*v) {
                return Err(Error::InvalidTiling(format!("paths meet at {v:?}")));
            }
        }
    }
    Ok(())
}

/// Rebuilds the tiling of `region` from its paths.
pub fn paths_to_tiling(ps: &PathSystem, region: &CellRegion) -> Result<Tiling> {
    match (ps.kind, region.kind) {
        (PathKind::Aztec { n }, RegionKind::Aztec { n: rn }) if n == rn => {
            let full = aztec_tiling_from_paths(ps, n)?;
            Ok(Tiling::Domino(full.restricted_to(region)?))
        }
        (PathKind::Hexagon { l, m, n }, RegionKind::Hexagon { l: rl, m: rm, n: rn }) if (l, m, n) == (rl, rm, rn) => {
            Ok(Tiling::Lozenge(hexagon_tiling_from_paths(ps, region)?))
        }
        _ => Err(Error::InvalidTiling("path system and region do not match".into())),
    }
}

fn aztec_tiling_from_paths(ps: &PathSystem, n: i64) -> Result<DominoTiling> {
    let mut dominoes = Vec::new();
    for (j, path) in ps.paths.iter().enumerate() {
        let j = j as i64;
        let end = (n - j, -2 * j - 1);
        let mut pt: Pt = (-n + j, -2 * j - 1);
        let steps: Vec<(i64, i64)> = path.windows(2).map(|w| (w[1].0 - w[0].0, w[1].1 - w[0].1)).collect();
        let mut idx = 0;
        let bad = |msg: &str| Error::InvalidTiling(format!("path {j}: {msg}"));
        while pt != end {
            let (x, y2) = pt;
            match (steps.get(idx), steps.get(idx + 1)) {
                (Some(&(0, -1)), _) => {
                    dominoes.push(Domino::vertical(x, (y2 - 3) / 2));
                    pt = (x + 1, y2 - 2);
                    idx += 1;
                }
                (Some(&(1, 1)), Some(&(1, 0))) => {
                    dominoes.push(Domino::vertical(x, (y2 - 1) / 2));
                    pt = (x + 1, y2 + 2);
                    idx += 2;
                }
                (Some(&(1, 0)), Some(&(1, 0))) => {
                    dominoes.push(Domino::horizontal(x, (y2 - 1) / 2));
                    pt = (x + 2, y2);
                    idx += 2;
                }
                _ => return Err(bad("step sequence is not a domino path")),
            }
        }
        if steps[idx..].iter().any(|&s| s != (1, 0)) {
            return Err(bad("padding after the boundary must be flat"));
        }
    }
    let partial = DominoTiling::new(n, dominoes);
    for d in &partial.dominoes {
        if !in_aztec(n, d.a.0, d.a.1) || !in_aztec(n, d.b.0, d.b.1) {
            return Err(Error::InvalidTiling(format!("domino {d:?} leaves the diamond")));
        }
    }
    let full = partial.completed()?;
    let cells = full.covered();
    if cells.len() != 2 * full.dominoes.len() {
        return Err(Error::InvalidTiling("dominoes overlap".into()));
    }
    Ok(full)
}

fn hexagon_tiling_from_paths(ps: &PathSystem, region: &CellRegion) -> Result<LozengeTiling> {
    let PathKind::Hexagon { l, m, n } = ps.kind else { unreachable!() };
    let mut lozenges = Vec::new();
    let mut covered = BTreeSet::new();
    for path in &ps.paths {
        for w in path.windows(2) {
            let (x, y) = w[0];
            let kind = match w[1].1 - y {
                0 => LozengeKind::B,
                1 => LozengeKind::A,
                _ => return Err(Error::InvalidTiling("lozenge paths step by (1,0) or (1,1)".into())),
            };
            let z = Lozenge::new(kind, x, y);
            for c in z.triangles() {
                if !covered.insert(c) {
                    return Err(Error::InvalidTiling(format!("triangle {c:?} covered twice")));
                }
            }
            lozenges.push(z);
        }
    }
    for &c in &region.cells {
        if covered.contains(&c) || c.2 != LOWER {
            continue;
        }
        let partner = (c.0 + 1, c.1, UPPER);
        if !region.contains(&partner) || covered.contains(&partner) {
            return Err(Error::InvalidTiling(format!("triangle {c:?} cannot be covered")));
        }
        covered.insert(c);
        covered.insert(partner);
        lozenges.push(Lozenge::new(LozengeKind::C, c.0, c.1));
    }
    let t = LozengeTiling::new(l, m, n, lozenges);
    t.validate(region)?;
    Ok(t)
}

/// Particles on the vertical line `r`: for each path, the last vertex it
/// visits there (vertices that start a down-step are skipped).
pub fn paths_to_particles(ps: &PathSystem, r: i64) -> ParticleConfig {
    let mut positions: Vec<i64> =
        ps.paths.iter().filter_map(|p| p.iter().rev().find(|v| v.0 == r).map(|v| v.1)).collect();
    positions.sort_unstable_by(|a, b| b.cmp(a));
    ParticleConfig { level: r, positions }
}

/// The cell whose covering domino decides whether site `s` at level `r` of
/// `A_N` holds a particle: the square to the right of the path point.
pub fn aztec_site_cell(n: i64, r: i64, s: i64) -> (i64, i64) {
    (r - n - s, s - 1)
}

/// Sites reached only by the flat padding beyond the south-east edge; they
/// always hold a particle.
pub fn aztec_site_is_padding(n: i64, r: i64, s: i64) -> bool {
    s <= 0 && s > -n && r >= 2 * n + 2 * s
}

/// Particle occupancy read directly from the dominoes: a site inside the
/// diamond is occupied iff the cell to its right is covered by a south or
/// west domino.
pub fn aztec_particles_from_cells(t: &DominoTiling, r: i64) -> Result<ParticleConfig> {
    let full = t.completed()?;
    let owners = full.owners();
    let n = t.n;
    let mut positions = Vec::new();
    for s in (1 - n..=n).rev() {
        let (i, j) = aztec_site_cell(n, r, s);
        let occupied = match owners.get(&(i, j)) {
            Some(&idx) => classify_domino(&full.dominoes[idx], n).carries_particle(),
            None => aztec_site_is_padding(n, r, s),
        };
        if occupied {
            positions.push(s);
        }
    }
    Ok(ParticleConfig { level: r, positions })
}
