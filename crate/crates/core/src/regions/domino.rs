use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

use super::{in_aztec, CellRegion, RegionKind};
use crate::error::{Error, Result};

/// A domino covering two edge-adjacent unit squares, stored lower-left first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Domino {
    pub a: (i64, i64),
    pub b: (i64, i64),
}

impl Domino {
    pub fn new(p: (i64, i64), q: (i64, i64)) -> Result<Self> {
        let (a, b) = if p <= q { (p, q) } else { (q, p) };
        let adjacent = (b.0 - a.0, b.1 - a.1) == (1, 0) || (b.0 - a.0, b.1 - a.1) == (0, 1);
        if !adjacent {
            return Err(Error::InvalidTiling(format!("cells {p:?} and {q:?} are not adjacent")));
        }
        Ok(Domino { a, b })
    }

    pub fn horizontal(i: i64, j: i64) -> Self {
        Domino { a: (i, j), b: (i + 1, j) }
    }

    pub fn vertical(i: i64, j: i64) -> Self {
        Domino { a: (i, j), b: (i, j + 1) }
    }

    pub fn is_vertical(&self) -> bool {
        self.a.0 == self.b.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DominoClass {
    #[serde(rename = "N")]
    North,
    #[serde(rename = "S")]
    South,
    #[serde(rename = "E")]
    East,
    #[serde(rename = "W")]
    West,
}

impl DominoClass {
    pub fn letter(self) -> char {
        match self {
            DominoClass::North => 'N',
            DominoClass::South => 'S',
            DominoClass::East => 'E',
            DominoClass::West => 'W',
        }
    }

    /// South and west dominoes carry a path segment whose left end is on
    /// the left edge of the domino's lower-left cell or the cell above it.
    pub fn carries_particle(self) -> bool {
        matches!(self, DominoClass::South | DominoClass::West)
    }
}

/// Parity rule: a horizontal domino is north when `i + j + N` is even, a
/// vertical one is east when `i + j + N` is even, with `(i, j)` its lower-left
/// corner.
pub fn classify_domino(d: &Domino, n: i64) -> DominoClass {
    let even = (d.a.0 + d.a.1 + n).rem_euclid(2) == 0;
    match (d.is_vertical(), even) {
        (false, true) => DominoClass::North,
        (false, false) => DominoClass::South,
        (true, true) => DominoClass::East,
        (true, false) => DominoClass::West,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominoTiling {
    /// Order of the ambient diamond, used for classification.
    pub n: i64,
    pub dominoes: Vec<Domino>,
}

/// Number of vertical dominoes `v(T)`.
pub fn count_vertical(t: &DominoTiling) -> usize {
    t.dominoes.iter().filter(|d| d.is_vertical()).count()
}

#[derive(Serialize)]
struct DominoJson {
    cells: [[i64; 2]; 2],
    class: DominoClass,
}

impl DominoTiling {
    pub fn new(n: i64, mut dominoes: Vec<Domino>) -> Self {
        dominoes.sort();
        DominoTiling { n, dominoes }
    }

    pub fn classes(&self) -> Vec<DominoClass> {
        self.dominoes.iter().map(|d| classify_domino(d, self.n)).collect()
    }

    pub fn covered(&self) -> BTreeSet<(i64, i64)> {
        self.dominoes.iter().flat_map(|d| [d.a, d.b]).collect()
    }

    /// Owner map from cell to domino index.
    pub fn owners(&self) -> BTreeMap<(i64, i64), usize> {
        let mut m = BTreeMap::new();
        for (idx, d) in self.dominoes.iter().enumerate() {
            m.insert(d.a, idx);
            m.insert(d.b, idx);
        }
        m
    }

    /// Checks that the dominoes cover `region` exactly once and respect its
    /// forbidden pairs.
    pub fn validate(&self, region: &CellRegion) -> Result<()> {
        let RegionKind::Aztec { n } = region.kind else {
            return Err(Error::InvalidTiling("domino tiling of a non-Aztec region".into()));
        };
        if n != self.n {
            return Err(Error::InvalidTiling(format!("order {} does not match region order {n}", self.n)));
        }
        let mut seen = BTreeSet::new();
        for d in &self.dominoes {
            for c in [d.a, d.b] {
                if !region.contains(&(c.0, c.1, 0)) {
                    return Err(Error::InvalidTiling(format!("cell {c:?} lies outside the region")));
                }
                if !seen.insert(c) {
                    return Err(Error::InvalidTiling(format!("cell {c:?} covered twice")));
                }
            }
            if region.is_forbidden((d.a.0, d.a.1, 0), (d.b.0, d.b.1, 0)) {
                return Err(Error::InvalidTiling(format!("domino {d:?} crosses a forbidden edge")));
            }
        }
        if seen.len() != region.len() {
            return Err(Error::InvalidTiling(format!("{} of {} cells covered", seen.len(), region.len())));
        }
        Ok(())
    }

    /// Fills the cells of `A_N` not covered by this tiling with north
    /// dominoes, as in the correspondence between reduced regions and the
    /// full diamond.
    pub fn completed(&self) -> Result<DominoTiling> {
        let covered = self.covered();
        let mut out = self.dominoes.clone();
        let mut taken = BTreeSet::new();
        for j in -self.n - 1..=self.n {
            for i in -self.n - 1..=self.n {
                if !in_aztec(self.n, i, j) || covered.contains(&(i, j)) || taken.contains(&(i, j)) {
                    continue;
                }
                let partner = (i + 1, j);
                let d = Domino::horizontal(i, j);
                if !in_aztec(self.n, i + 1, j)
                    || covered.contains(&partner)
                    || classify_domino(&d, self.n) != DominoClass::North
                {
                    return Err(Error::InvalidTiling(format!(
                        "uncovered cell {:?} cannot be filled by a north domino",
                        (i, j)
                    )));
                }
                taken.insert((i, j));
                taken.insert(partner);
                out.push(d);
            }
        }
        Ok(DominoTiling::new(self.n, out))
    }

    /// Keeps only the dominoes inside `region`; the rest must be north
    /// dominoes lying entirely outside.
    pub fn restricted_to(&self, region: &CellRegion) -> Result<DominoTiling> {
        let mut kept = Vec::new();
        for d in &self.dominoes {
            let ina = region.contains(&(d.a.0, d.a.1, 0));
            let inb = region.contains(&(d.b.0, d.b.1, 0));
            match (ina, inb) {
                (true, true) => kept.push(*d),
                (false, false) if classify_domino(d, self.n) == DominoClass::North => {}
                _ => return Err(Error::InvalidTiling(format!("domino {d:?} straddles the region boundary"))),
            }
        }
        let t = DominoTiling::new(self.n, kept);
        t.validate(region)?;
        Ok(t)
    }
}

impl Serialize for DominoTiling {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct View {
            n: i64,
            dominoes: Vec<DominoJson>,
        }
        let dominoes = self
            .dominoes
            .iter()
            .map(|d| DominoJson { cells: [[d.a.0, d.a.1], [d.b.0, d.b.1]], class: classify_domino(d, self.n) })
            .collect();
        View { n: self.n, dominoes }.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_rule() {
        // A_1: the top horizontal domino is north, the bottom one south.
        assert_eq!(classify_domino(&Domino::horizontal(-1, 0), 1), DominoClass::North);
        assert_eq!(classify_domino(&Domino::horizontal(-1, -1), 1), DominoClass::South);
        assert_eq!(classify_domino(&Domino::vertical(-1, -1), 1), DominoClass::West);
        assert_eq!(classify_domino(&Domino::vertical(0, -1), 1), DominoClass::East);
    }
}
