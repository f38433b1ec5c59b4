use serde::{Serialize, Serializer};
use std::collections::BTreeSet;

use super::{CellId, CellRegion, RegionKind, LOWER, UPPER};
use crate::error::{Error, Result};

/// The three lozenge shapes on the sheared lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum LozengeKind {
    /// Vertical edges, rising by one: `(0,0),(0,1),(1,2),(1,1)`. Carries an up-step.
    A,
    /// Unit square. Carries a flat step.
    B,
    /// Horizontal edges: `(0,0),(1,1),(2,1),(1,0)`. Carries no path.
    C,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Lozenge {
    pub kind: LozengeKind,
    pub i: i64,
    pub j: i64,
}

impl Lozenge {
    pub fn new(kind: LozengeKind, i: i64, j: i64) -> Self {
        Lozenge { kind, i, j }
    }

    /// The two triangles it covers.
    pub fn triangles(&self) -> [CellId; 2] {
        let (i, j) = (self.i, self.j);
        match self.kind {
            LozengeKind::A => [(i, j, UPPER), (i, j + 1, LOWER)],
            LozengeKind::B => [(i, j, UPPER), (i, j, LOWER)],
            LozengeKind::C => [(i, j, LOWER), (i + 1, j, UPPER)],
        }
    }

    /// Corner points in drawing order.
    pub fn corners(&self) -> [(i64, i64); 4] {
        let (i, j) = (self.i, self.j);
        match self.kind {
            LozengeKind::A => [(i, j), (i, j + 1), (i + 1, j + 2), (i + 1, j + 1)],
            LozengeKind::B => [(i, j), (i, j + 1), (i + 1, j + 1), (i + 1, j)],
            LozengeKind::C => [(i, j), (i + 1, j + 1), (i + 2, j + 1), (i + 1, j)],
        }
    }
}

/// Lozenges containing a given triangle.
pub(crate) fn lozenges_through(c: CellId) -> [Lozenge; 3] {
    let (i, j, t) = c;
    if t == UPPER {
        [Lozenge::new(LozengeKind::A, i, j), Lozenge::new(LozengeKind::B, i, j), Lozenge::new(LozengeKind::C, i - 1, j)]
    } else {
        [Lozenge::new(LozengeKind::A, i, j - 1), Lozenge::new(LozengeKind::B, i, j), Lozenge::new(LozengeKind::C, i, j)]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LozengeTiling {
    pub l: i64,
    pub m: i64,
    pub n: i64,
    pub lozenges: Vec<Lozenge>,
}

impl LozengeTiling {
    pub fn new(l: i64, m: i64, n: i64, mut lozenges: Vec<Lozenge>) -> Self {
        lozenges.sort();
        LozengeTiling { l, m, n, lozenges }
    }

    pub fn validate(&self, region: &CellRegion) -> Result<()> {
        let RegionKind::Hexagon { l, m, n } = region.kind else {
            return Err(Error::InvalidTiling("lozenge tiling of a non-hexagon region".into()));
        };
        if (l, m, n) != (self.l, self.m, self.n) {
            return Err(Error::InvalidTiling("hexagon parameters differ".into()));
        }
        let mut seen = BTreeSet::new();
        for z in &self.lozenges {
            for c in z.triangles() {
                if !region.contains(&c) {
                    return Err(Error::InvalidTiling(format!("triangle {c:?} lies outside the region")));
                }
                if !seen.insert(c) {
                    return Err(Error::InvalidTiling(format!("triangle {c:?} covered twice")));
                }
            }
        }
        if seen.len() != region.len() {
            return Err(Error::InvalidTiling(format!("{} of {} triangles covered", seen.len(), region.len())));
        }
        Ok(())
    }

    pub fn count_kind(&self, kind: LozengeKind) -> usize {
        self.lozenges.iter().filter(|z| z.kind == kind).count()
    }
}

impl Serialize for LozengeTiling {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct View<'a> {
            l: i64,
            m: i64,
            n: i64,
            lozenges: &'a [Lozenge],
        }
        View { l: self.l, m: self.m, n: self.n, lozenges: &self.lozenges }.serialize(s)
    }
}
