//! Exhaustive backtracking over tiles, independent of the transfer sweep and
//! of the path determinants.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::regions::domino::{Domino, DominoTiling};
use crate::regions::lozenge::{lozenges_through, Lozenge, LozengeTiling};
use crate::regions::paths::{aztec_particles_from_cells, Tiling};
use crate::regions::{CellId, CellRegion, RegionKind};

pub const ENUMERATION_LIMIT: u64 = 100_000;

/// Every tiling of a region. Aztec particle gaps are applied as a filter
/// on the finished tilings.
pub fn enumerate_tilings_tiny(region: &CellRegion) -> Result<Vec<Tiling>> {
    enumerate_with_limit(region, ENUMERATION_LIMIT)
}

pub fn enumerate_with_limit(region: &CellRegion, limit: u64) -> Result<Vec<Tiling>> {
    match region.kind {
        RegionKind::Aztec { n } => {
            let mut out = Vec::new();
            let mut free = region.cells.clone();
            let mut chosen = Vec::new();
            domino_search(region, &mut free, &mut chosen, &mut out, limit)?;
            let mut tilings = Vec::with_capacity(out.len());
            for ds in out {
                let t = DominoTiling::new(n, ds);
                if let Some(gap) = &region.gap {
                    if !aztec_particles_from_cells(&t, gap.level)?.avoids(&gap.sites) {
                        continue;
                    }
                }
                tilings.push(Tiling::Domino(t));
            }
            Ok(tilings)
        }
        RegionKind::Hexagon { l, m, n } => {
            let mut out = Vec::new();
            let mut free = region.cells.clone();
            let mut chosen = Vec::new();
            lozenge_search(&mut free, &mut chosen, &mut out, limit)?;
            Ok(out.into_iter().map(|zs| Tiling::Lozenge(LozengeTiling::new(l, m, n, zs))).collect())
        }
    }
}

fn too_many(limit: u64) -> Error {
    Error::TooMany { count: format!("more than {limit}"), limit }
}

fn domino_search(
    region: &CellRegion,
    free: &mut BTreeSet<CellId>,
    chosen: &mut Vec<Domino>,
    out: &mut Vec<Vec<Domino>>,
    limit: u64,
) -> Result<()> {
    // Lowest row first, then leftmost: the partner is above or to the right.
    let Some(&c) = free.iter().min_by_key(|c| (c.1, c.0)) else {
        if out.len() as u64 >= limit {
            return Err(too_many(limit));
        }
        out.push(chosen.clone());
        return Ok(());
    };
    for partner in [(c.0 + 1, c.1, 0), (c.0, c.1 + 1, 0)] {
        if !free.contains(&partner) || region.is_forbidden(c, partner) {
            continue;
        }
        free.remove(&c);
        free.remove(&partner);
        chosen.push(Domino { a: (c.0, c.1), b: (partner.0, partner.1) });
        let r = domino_search(region, free, chosen, out, limit);
        chosen.pop();
        free.insert(c);
        free.insert(partner);
        r?;
    }
    Ok(())
}

fn lozenge_search(
    free: &mut BTreeSet<CellId>,
    chosen: &mut Vec<Lozenge>,
    out: &mut Vec<Vec<Lozenge>>,
    limit: u64,
) -> Result<()> {
    let Some(&c) = free.iter().next() else {
        if out.len() as u64 >= limit {
            return Err(too_many(limit));
        }
        out.push(chosen.clone());
        return Ok(());
    };
    for z in lozenges_through(c) {
        let [t1, t2] = z.triangles();
        if !free.contains(&t1) || !free.contains(&t2) {
            continue;
        }
        free.remove(&t1);
        free.remove(&t2);
        chosen.push(z);
        let r = lozenge_search(free, chosen, out, limit);
        chosen.pop();
        free.insert(t1);
        free.insert(t2);
        r?;
    }
    Ok(())
}
