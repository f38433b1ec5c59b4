//! Propp's domino shuffling for `a^{v(T)}`-weighted tilings of `A_N`, and a
//! Monte Carlo estimate of gap probabilities built on it.
//!
//! One growth step from `A_n` to `A_{n+1}`: delete every 2×2 block where a
//! north domino sits under a south one or an east domino sits left of a west
//! one, slide the remaining dominoes one unit in their direction, then fill
//! the empty 2×2 blocks with a vertical pair (odds `a² : 1`) or a horizontal
//! pair.

use num_bigint::{BigUint, RandBigInt};
use num_rational::BigRational;
use num_traits::Signed;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::HashSet;

use crate::algebra::rational::to_f64;
use crate::approximants::{aztec_count_eps, aztec_full};
use crate::error::{precondition, Result};
use crate::regions::paths::{paths_to_particles, tiling_to_paths, Tiling};
use crate::regions::{classify_domino, in_aztec, Domino, DominoClass, DominoTiling};

pub struct ShuffleState {
    pub n: i64,
    pub tiling: DominoTiling,
    vertical_odds: BigUint,
    horizontal_odds: BigUint,
    rng: ChaCha8Rng,
}

impl ShuffleState {
    /// The empty tiling of `A_0`.
    pub fn new(a: &BigRational, seed: u64) -> Result<Self> {
        Self::with_rng(a, ChaCha8Rng::seed_from_u64(seed))
    }

    fn with_rng(a: &BigRational, rng: ChaCha8Rng) -> Result<Self> {
        precondition(a.is_positive(), || format!("need a > 0, got {a}"))?;
        let p = a.numer().magnitude();
        let q = a.denom().magnitude();
        Ok(ShuffleState {
            n: 0,
            tiling: DominoTiling::new(0, Vec::new()),
            vertical_odds: p * p,
            horizontal_odds: q * q,
            rng,
        })
    }

    /// Grows the tiling of `A_n` into a tiling of `A_{n+1}`.
    pub fn step(&mut self) {
        let n = self.n;
        let classes = self.tiling.classes();
        let owners = self.tiling.owners();
        let mut doomed = vec![false; classes.len()];
        for (idx, d) in self.tiling.dominoes.iter().enumerate() {
            let (partner, facing) = match classes[idx] {
                DominoClass::North => (Domino::horizontal(d.a.0, d.a.1 + 1), DominoClass::South),
                DominoClass::East => (Domino::vertical(d.a.0 + 1, d.a.1), DominoClass::West),
                _ => continue,
            };
            if let Some(&o) = owners.get(&partner.a) {
                if self.tiling.dominoes[o] == partner && classes[o] == facing {
                    doomed[idx] = true;
                    doomed[o] = true;
                }
            }
        }
        let mut moved: Vec<Domino> = Vec::with_capacity(classes.len() + 2 * n as usize + 2);
        for ((d, c), gone) in self.tiling.dominoes.iter().zip(&classes).zip(&doomed) {
            if *gone {
                continue;
            }
            let (dx, dy) = match c {
                DominoClass::North => (0, 1),
                DominoClass::South => (0, -1),
                DominoClass::East => (1, 0),
                DominoClass::West => (-1, 0),
            };
            moved.push(Domino { a: (d.a.0 + dx, d.a.1 + dy), b: (d.b.0 + dx, d.b.1 + dy) });
        }
        let next = n + 1;
        let mut filled: HashSet<(i64, i64)> = moved.iter().flat_map(|d| [d.a, d.b]).collect();
        let total = self.vertical_odds.clone() + &self.horizontal_odds;
        // The lowest, then leftmost, empty cell is the lower-left corner of its block.
        for j in -next - 1..=next {
            for i in -next - 1..=next {
                if !in_aztec(next, i, j) || filled.contains(&(i, j)) {
                    continue;
                }
                let block = [(i, j), (i + 1, j), (i, j + 1), (i + 1, j + 1)];
                debug_assert!(block.iter().all(|c| in_aztec(next, c.0, c.1) && !filled.contains(c)));
                filled.extend(block);
                if self.rng.gen_biguint_below(&total) < self.vertical_odds {
                    moved.push(Domino::vertical(i, j));
                    moved.push(Domino::vertical(i + 1, j));
                } else {
                    moved.push(Domino::horizontal(i, j));
                    moved.push(Domino::horizontal(i, j + 1));
                }
            }
        }
        self.n = next;
        self.tiling = DominoTiling::new(next, moved);
    }
}

/// An `a^{v(T)}`-weighted random tiling of `A_N`, deterministic in `seed`.
pub fn shuffle_sample(n: i64, a: &BigRational, seed: u64) -> Result<DominoTiling> {
    precondition(n >= 1, || format!("need N ≥ 1, got {n}"))?;
    let mut st = ShuffleState::new(a, seed)?;
    while st.n < n {
        st.step();
    }
    Ok(st.tiling)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct McEstimate {
    pub trials: u64,
    pub hits: u64,
    pub estimate: f64,
    /// `sqrt(p̂(1-p̂)/trials)`.
    pub stderr: f64,
    pub exact: f64,
    /// Distance from `exact` in units of `sqrt(p(1-p)/trials)` at the exact `p`.
    pub sigmas: f64,
}

/// Frequency of "no particle at or above `k` at level `2m-ε`" over
/// `trials` shuffled tilings. Trial `t` uses stream `t` of the seeded
/// generator, so trials are independent and reproducible.
pub fn mc_gap_probability(
    n: i64,
    m: i64,
    k: i64,
    eps: u8,
    a: &BigRational,
    trials: u64,
    seed: u64,
) -> Result<McEstimate> {
    precondition(trials > 0, || "need at least one trial".to_string())?;
    let exact = to_f64(&(aztec_count_eps(n, m, k, eps, a)? / aztec_full(n, a)));
    precondition(exact * trials as f64 >= 10.0, || {
        format!("event probability {exact:.3e} is too small for {trials} trials")
    })?;
    let level = 2 * m - eps as i64;
    let mut hits = 0u64;
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(t);
        let mut st = ShuffleState::with_rng(a, rng)?;
        while st.n < n {
            st.step();
        }
        let paths = tiling_to_paths(&Tiling::Domino(st.tiling))?;
        if paths_to_particles(&paths, level).max().is_none_or(|top| top < k) {
            hits += 1;
        }
    }
    let p = hits as f64 / trials as f64;
    let stderr = (p * (1.0 - p) / trials as f64).sqrt();
    let sd = (exact * (1.0 - exact) / trials as f64).sqrt();
    let diff = (p - exact).abs();
    let sigmas = if sd > 0.0 {
        diff / sd
    } else if diff < 1e-12 {
        0.0
    } else {
        f64::INFINITY
    };
    Ok(McEstimate { trials, hits, estimate: p, stderr, exact, sigmas })
}

/// Numbers of north, south, east and west dominoes.
pub fn class_counts(t: &DominoTiling) -> [usize; 4] {
    let mut out = [0; 4];
    for d in &t.dominoes {
        let idx = match classify_domino(d, t.n) {
            DominoClass::North => 0,
            DominoClass::South => 1,
            DominoClass::East => 2,
            DominoClass::West => 3,
        };
        out[idx] += 1;
    }
    out
}
