//! Broken-profile transfer over the cells of an Aztec region.
//!
//! Cells are swept row by row from the bottom. Bit `c` of the profile marks
//! column `c` as already covered: for columns left of the sweep position it
//! refers to the next row, for the rest to the current one.

use num_bigint::{BigUint, RandBigInt};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::regions::domino::{classify_domino, Domino, DominoClass, DominoTiling};
use crate::regions::paths::{aztec_site_cell, aztec_site_is_padding};
use crate::regions::{in_aztec, CellRegion, RegionKind};

pub const DEFAULT_WIDTH_LIMIT: usize = 24;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Step {
    Skip,
    Horizontal,
    Vertical,
}

/// Semiring of tiling weights.
trait Weight: Clone {
    type Ctx;
    fn zero() -> Self;
    fn start() -> Self;
    fn add_step(&mut self, other: &Self, step: Step, cx: &Self::Ctx);
}

/// Number of tilings by vertical-domino count.
#[derive(Clone, Debug, PartialEq, Eq)]
struct ByVertical(Vec<u128>);

impl Weight for ByVertical {
    type Ctx = ();
    fn zero() -> Self {
        ByVertical(Vec::new())
    }
    fn start() -> Self {
        ByVertical(vec![1])
    }
    fn add_step(&mut self, other: &Self, step: Step, _: &()) {
        let off = (step == Step::Vertical) as usize;
        if self.0.len() < other.0.len() + off {
            self.0.resize(other.0.len() + off, 0);
        }
        for (v, c) in other.0.iter().enumerate() {
            let slot = &mut self.0[v + off];
            *slot = slot.checked_add(*c).expect("tiling count exceeds u128");
        }
    }
}

/// Integer weight `p^v q^h` for `a = p/q`, `h` the number of horizontal
/// dominoes.
#[derive(Clone, Debug)]
struct Scaled(BigUint);

impl Weight for Scaled {
    type Ctx = (BigUint, BigUint);
    fn zero() -> Self {
        Scaled(BigUint::zero())
    }
    fn start() -> Self {
        Scaled(BigUint::one())
    }
    fn add_step(&mut self, other: &Self, step: Step, (p, q): &Self::Ctx) {
        match step {
            Step::Skip => self.0 += &other.0,
            Step::Horizontal => self.0 += &other.0 * q,
            Step::Vertical => self.0 += &other.0 * p,
        }
    }
}

/// A region prepared for the sweep.
struct Grid<'r> {
    n: i64,
    i0: i64,
    j0: i64,
    width: usize,
    region: &'r CellRegion,
    /// Cells that may not be covered by a south or west domino.
    no_particle: BTreeSet<(i64, i64)>,
    /// Some excluded site is occupied in every tiling.
    impossible: bool,
}

impl<'r> Grid<'r> {
    fn new(region: &'r CellRegion, limit: usize) -> Result<Self> {
        let RegionKind::Aztec { n } = region.kind else {
            return Err(Error::PreconditionViolation("domino oracle needs an Aztec region".into()));
        };
        let width = (2 * n + 2) as usize;
        if width > limit {
            return Err(Error::CapacityExceeded { width, limit });
        }
        let mut no_particle = BTreeSet::new();
        let mut impossible = false;
        if let Some(gap) = &region.gap {
            for &s in &gap.sites {
                let cell = aztec_site_cell(n, gap.level, s);
                if in_aztec(n, cell.0, cell.1) {
                    no_particle.insert(cell);
                } else if aztec_site_is_padding(n, gap.level, s) {
                    impossible = true;
                }
            }
        }
        Ok(Grid { n, i0: -n - 1, j0: -n - 1, width, region, no_particle, impossible })
    }

    fn steps(&self) -> usize {
        self.width * self.width
    }

    fn cell_at(&self, t: usize) -> (usize, (i64, i64)) {
        let c = t % self.width;
        (c, (self.i0 + c as i64, self.j0 + (t / self.width) as i64))
    }

    fn has(&self, c: (i64, i64)) -> bool {
        self.region.contains(&(c.0, c.1, 0))
    }

    fn allowed(&self, d: Domino) -> bool {
        if !self.has(d.b) || self.region.is_forbidden((d.a.0, d.a.1, 0), (d.b.0, d.b.1, 0)) {
            return false;
        }
        let class = classify_domino(&d, self.n);
        !(matches!(class, DominoClass::South | DominoClass::West)
            && (self.no_particle.contains(&d.a) || self.no_particle.contains(&d.b)))
    }

    /// Moves out of `state` at step `t`: next state, step kind, placed domino.
    fn moves(&self, t: usize, state: u32) -> Vec<(u32, Step, Option<Domino>)> {
        let (c, cell) = self.cell_at(t);
        let bit = 1u32 << c;
        if state & bit != 0 {
            return vec![(state & !bit, Step::Skip, None)];
        }
        if !self.has(cell) {
            return vec![(state, Step::Skip, None)];
        }
        let mut out = Vec::with_capacity(2);
        if c + 1 < self.width && state & (bit << 1) == 0 {
            let d = Domino::horizontal(cell.0, cell.1);
            if self.allowed(d) {
                out.push((state | (bit << 1), Step::Horizontal, Some(d)));
            }
        }
        let d = Domino::vertical(cell.0, cell.1);
        if self.allowed(d) {
            out.push((state | bit, Step::Vertical, Some(d)));
        }
        out
    }

    /// `layers[t]` maps profiles before step `t` to the weight of partial
    /// tilings reaching them; only the last layer is kept unless `keep`.
    fn sweep<W: Weight>(&self, cx: &W::Ctx, keep: bool) -> Vec<HashMap<u32, W>> {
        let mut cur: HashMap<u32, W> = HashMap::from([(0u32, W::start())]);
        let mut layers = Vec::new();
        for t in 0..self.steps() {
            let mut next: HashMap<u32, W> = HashMap::with_capacity(cur.len());
            for (&s, w) in &cur {
                for (s2, step, _) in self.moves(t, s) {
                    next.entry(s2).or_insert_with(W::zero).add_step(w, step, cx);
                }
            }
            if keep {
                layers.push(std::mem::replace(&mut cur, next));
            } else {
                cur = next;
            }
        }
        layers.push(cur);
        layers
    }
}

/// Number of tilings of an Aztec region (respecting forbidden pairs and any
/// particle gap) indexed by the number of vertical dominoes.
pub fn domino_count_by_vertical(region: &CellRegion) -> Result<Vec<u128>> {
    domino_count_by_vertical_with_limit(region, DEFAULT_WIDTH_LIMIT)
}

pub fn domino_count_by_vertical_with_limit(region: &CellRegion, limit: usize) -> Result<Vec<u128>> {
    let grid = Grid::new(region, limit)?;
    if grid.impossible {
        return Ok(Vec::new());
    }
    let last = grid.sweep::<ByVertical>(&(), false).pop().unwrap();
    let mut v = last.get(&0).map(|w| w.0.clone()).unwrap_or_default();
    while v.last() == Some(&0) {
        v.pop();
    }
    Ok(v)
}

/// `Σ_T a^{v(T)}` over the tilings of an Aztec region.
pub fn count_weighted_domino(region: &CellRegion, a: &BigRational) -> Result<BigRational> {
    let counts = domino_count_by_vertical(region)?;
    Ok(eval_by_vertical(&counts, a))
}

pub fn eval_by_vertical(counts: &[u128], a: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in counts.iter().rev() {
        acc = acc * a + BigRational::from_integer((*c).into());
    }
    acc
}

fn split_weight(a: &BigRational) -> Result<(BigUint, BigUint)> {
    let p = a.numer().to_biguint();
    let q = a.denom().to_biguint();
    match (p, q) {
        (Some(p), Some(q)) if !p.is_zero() => Ok((p, q)),
        _ => Err(Error::PreconditionViolation(format!("weight must be positive, got {a}"))),
    }
}

/// Exact sample from `a^{v(T)}`-weighted tilings of an Aztec region.
pub fn sample_domino<R: Rng>(region: &CellRegion, a: &BigRational, rng: &mut R) -> Result<DominoTiling> {
    let grid = Grid::new(region, DEFAULT_WIDTH_LIMIT)?;
    if grid.impossible {
        return Err(Error::Untileable);
    }
    let cx = split_weight(a)?;
    let layers = grid.sweep::<Scaled>(&cx, true);
    if layers.last().unwrap().get(&0).is_none_or(|w| w.0.is_zero()) {
        return Err(Error::Untileable);
    }
    // Walk backwards, picking each predecessor with probability proportional
    // to its forward weight times the step weight.
    let mut state = 0u32;
    let mut dominoes = Vec::new();
    for t in (0..grid.steps()).rev() {
        let mut options: Vec<(BigUint, u32, Option<Domino>)> = Vec::new();
        let mut total = BigUint::zero();
        for (&s, w) in &layers[t] {
            for (s2, step, d) in grid.moves(t, s) {
                if s2 != state {
                    continue;
                }
                let mut acc = Scaled::zero();
                acc.add_step(w, step, &cx);
                total += &acc.0;
                options.push((acc.0, s, d));
            }
        }
        let mut pick = rng.gen_biguint_below(&total);
        options.sort_by_key(|o| o.1);
        let mut chosen = None;
        for (w, s, d) in options {
            if pick < w {
                chosen = Some((s, d));
                break;
            }
            pick -= w;
        }
        let (s, d) = chosen.expect("selection falls inside the total weight");
        state = s;
        dominoes.extend(d);
    }
    Ok(DominoTiling::new(grid.n, dominoes))
}
