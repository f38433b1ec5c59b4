//! Unions of integer intervals describing where particles are excluded.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The cluster vector `(k_{2q+1}, …, k_1; k_0)`.
///
/// Cluster `j` is `[k_{2j+1}, k_{2j}]`; `k_0 = None` means the top cluster is
/// unbounded above. Bounds satisfy
/// `k_{2q+1} ≤ k_{2q} < k_{2q-1} ≤ … ≤ k_2 < k_1 ≤ k_0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GapSet {
    /// `k_{2q+1}, …, k_1` in that order.
    pub k: Vec<i64>,
    /// `k_0`, or `None` for infinity.
    pub k0: Option<i64>,
}

impl GapSet {
    pub fn new(k: Vec<i64>, k0: Option<i64>) -> Result<Self> {
        let g = GapSet { k, k0 };
        g.validate()?;
        Ok(g)
    }

    /// `[k, ∞)`.
    pub fn semi_infinite(k: i64) -> Self {
        GapSet { k: vec![k], k0: None }
    }

    /// `[lo, hi]`.
    pub fn interval(lo: i64, hi: i64) -> Self {
        GapSet { k: vec![lo], k0: Some(hi) }
    }

    /// Builds from clusters listed top first: `[(k_1, k_0), (k_3, k_2), …]`.
    pub fn from_clusters(clusters: &[(i64, Option<i64>)]) -> Result<Self> {
        if clusters.is_empty() {
            return Err(Error::PreconditionViolation("a gap set needs at least one cluster".into()));
        }
        let mut k = Vec::new();
        for (idx, (lo, hi)) in clusters.iter().enumerate().rev() {
            k.push(*lo);
            if idx > 0 {
                k.push(hi.ok_or_else(|| Error::PreconditionViolation("only the top cluster may be unbounded".into()))?);
            }
        }
        Self::new(k, clusters[0].1)
    }

    fn validate(&self) -> Result<()> {
        if self.k.len() % 2 != 1 {
            return Err(Error::PreconditionViolation("gap set needs an odd number of finite bounds".into()));
        }
        for j in 1..=self.len_index() {
            let kj = self.kj(j).unwrap();
            let ok = match self.kj(j - 1) {
                None => true,
                Some(above) if j % 2 == 1 => kj <= above,
                Some(above) => kj < above,
            };
            if !ok {
                return Err(Error::PreconditionViolation(format!("gap bounds out of order at k_{j}: {self:?}")));
            }
        }
        Ok(())
    }

    /// Largest index `2q+1`.
    pub fn len_index(&self) -> usize {
        self.k.len()
    }

    /// Number of clusters minus one.
    pub fn q(&self) -> usize {
        (self.k.len() - 1) / 2
    }

    /// `k_j`, with `None` standing for `k_0 = ∞`.
    pub fn kj(&self, j: usize) -> Option<i64> {
        if j == 0 {
            self.k0
        } else {
            Some(self.k[self.k.len() - j])
        }
    }

    fn set_kj(&mut self, j: usize, v: i64) {
        if j == 0 {
            self.k0 = Some(v);
        } else {
            let n = self.k.len();
            self.k[n - j] = v;
        }
    }

    /// Lowest site `k_{2q+1}`.
    pub fn lowest(&self) -> i64 {
        self.k[0]
    }

    /// Clusters top first as `(lo, hi)`.
    pub fn clusters(&self) -> Vec<(i64, Option<i64>)> {
        (0..=self.q()).map(|j| (self.kj(2 * j + 1).unwrap(), self.kj(2 * j))).collect()
    }

    pub fn contains(&self, s: i64) -> bool {
        self.clusters().iter().any(|&(lo, hi)| s >= lo && hi.is_none_or(|h| s <= h))
    }

    /// Index of the cluster holding `s`.
    pub fn cluster_of(&self, s: i64) -> Option<usize> {
        self.clusters().iter().position(|&(lo, hi)| s >= lo && hi.is_none_or(|h| s <= h))
    }

    /// Sites of the gap within `[lo, hi]`, increasing.
    pub fn sites_within(&self, lo: i64, hi: i64) -> Vec<i64> {
        (lo..=hi).filter(|&s| self.contains(s)).collect()
    }

    /// The gap with `k_j` raised by one.
    pub fn bumped(&self, j: usize) -> Result<GapSet> {
        let mut g = self.clone();
        let v = self.kj(j).ok_or_else(|| Error::PreconditionViolation("cannot bump an infinite bound".into()))?;
        g.set_kj(j, v + 1);
        g.validate()?;
        Ok(g)
    }

    /// Whether raising `k_j` keeps every cluster nonempty and separated:
    /// odd `j` needs `k_j < k_{j-1}`, even `j` needs `k_j + 1 < k_{j-1}`.
    pub fn can_bump(&self, j: usize) -> bool {
        if j > self.len_index() {
            return false;
        }
        let Some(kj) = self.kj(j) else { return false };
        if j == 0 {
            return true;
        }
        match self.kj(j - 1) {
            None => true,
            Some(above) if j % 2 == 1 => kj < above,
            Some(above) => kj + 1 < above,
        }
    }

    /// `Σ_{j≥1} (k_{2j} + 1 - k_{2j+1})`, the total size of the lower clusters.
    pub fn lower_size(&self) -> i64 {
        (1..=self.q()).map(|j| self.kj(2 * j).unwrap() + 1 - self.kj(2 * j + 1).unwrap()).sum()
    }
}
