//! Seeded generators for filtrations, stopping times, and adapted processes.
//!
//! Every generator draws from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64(seed)`, and only ever consumes raw `next_u64` words. A
//! choice among `n` options is `next_u64() % n`. Sticking to those two
//! primitives keeps a seed reproducible in any language with a ChaCha8 port.
//!
//! Only validity and determinism are guaranteed; the distributions are not
//! uniform over anything in particular.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bijection::indicator_after;
use crate::error::{Error, Result};
use crate::filtration::{ExtTime, Filtration, TimeGrid};
use crate::process::{BinaryProcess, BorelSet, Endpoint, Interval, RandomTime, RealProcess};
use crate::rational::{int, ratio, Rational};
use crate::space::{Partition, SampleSpace};

/// Number of equal steps in the value lattice used by the real-valued generators.
pub const LATTICE_STEPS: i64 = 8;

struct Draw(ChaCha8Rng);

impl Draw {
    fn new(seed: u64) -> Self {
        Draw(ChaCha8Rng::seed_from_u64(seed))
    }

    fn below(&mut self, n: u64) -> u64 {
        self.0.next_u64() % n
    }

    fn coin(&mut self) -> bool {
        self.below(2) == 1
    }
}

pub fn atom_label(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("w{i}")
    }
}

/// Splits each block of `p` in two by a random bit per atom, with probability 1/2 per block.
fn split_some(p: &Partition, draw: &mut Draw) -> Partition {
    let split: Vec<bool> = (0..p.block_count()).map(|_| draw.coin()).collect();
    let keys: Vec<(usize, bool)> = (0..p.universe())
        .map(|a| {
            let b = p.block_of(a);
            (b, split[b] && draw.coin())
        })
        .collect();
    Partition::from_keys(&keys)
}

/// A valid filtration with `1..=max_atoms` atoms and `1..=max_times` grid times.
pub fn gen_filtration(seed: u64, max_atoms: usize, max_times: usize) -> Filtration {
    let mut draw = Draw::new(seed);
    let atoms = 1 + draw.below(max_atoms.max(1) as u64) as usize;
    let times = 1 + draw.below(max_times.max(1) as u64) as usize;

    let mut raw: Vec<i64> = (0..atoms).map(|_| draw.below(4) as i64).collect();
    if raw.iter().all(|&w| w == 0) {
        raw[0] = 1;
    }
    let total: i64 = raw.iter().sum();
    let space = SampleSpace::new(
        raw.iter()
            .enumerate()
            .map(|(i, &w)| (atom_label(i), ratio(w, total))),
    )
    .expect("weights sum to one");

    let mut t = int(draw.below(3) as i64);
    let mut grid = Vec::with_capacity(times);
    for _ in 0..times {
        grid.push(t.clone());
        t += ratio(1 + draw.below(4) as i64, 2);
    }
    let grid = TimeGrid::new(grid).expect("increasing by construction");

    let coarse_blocks = 1 + draw.below(atoms as u64);
    let keys: Vec<u64> = (0..atoms).map(|_| draw.below(coarse_blocks)).collect();
    let mut levels = vec![Partition::from_keys(&keys)];
    for _ in 1..times {
        let next = split_some(levels.last().expect("nonempty"), &mut draw);
        levels.push(next);
    }
    let terminal = if draw.coin() {
        Partition::discrete(atoms)
    } else {
        split_some(levels.last().expect("nonempty"), &mut draw)
    };
    Filtration::new(space, grid, levels, Some(terminal)).expect("shapes agree by construction")
}

/// Walks the grid, stopping each not-yet-stopped block of the current level
/// with probability 1/3.
pub fn gen_stopping_time(seed: u64, f: &Filtration) -> RandomTime {
    let mut draw = Draw::new(seed);
    let mut values = vec![ExtTime::Infinity; f.space().len()];
    for (t, level) in f.levels().iter().enumerate() {
        for block in level.blocks() {
            if values[block[0]] == ExtTime::Infinity && draw.below(3) == 0 {
                for &a in block {
                    values[a] = ExtTime::At(t);
                }
            }
        }
    }
    RandomTime::new(values)
}

/// The indicator process of a generated stopping time.
pub fn gen_stopping_process(seed: u64, f: &Filtration) -> BinaryProcess {
    indicator_after(&gen_stopping_time(seed, f), f.grid().len())
}

/// Closed range `[lo, hi]`, sampled on `LATTICE_STEPS + 1` evenly spaced points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueRange {
    lo: Rational,
    hi: Rational,
}

impl ValueRange {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::domain("value range has lo > hi"));
        }
        Ok(ValueRange { lo, hi })
    }

    fn lattice(&self, j: u64) -> Rational {
        &self.lo + (&self.hi - &self.lo) * ratio(j as i64, LATTICE_STEPS)
    }

    fn sample(&self, draw: &mut Draw) -> Rational {
        self.lattice(draw.below(LATTICE_STEPS as u64 + 1))
    }
}

impl Default for ValueRange {
    fn default() -> Self {
        ValueRange {
            lo: int(-2),
            hi: int(2),
        }
    }
}

/// Each section is constant on the blocks of its level.
pub fn gen_adapted_real_process(seed: u64, f: &Filtration, range: &ValueRange) -> RealProcess {
    let mut draw = Draw::new(seed);
    let rows = f
        .levels()
        .iter()
        .map(|level| {
            let per_block: Vec<Rational> = (0..level.block_count())
                .map(|_| range.sample(&mut draw))
                .collect();
            (0..level.universe())
                .map(|a| per_block[level.block_of(a)].clone())
                .collect()
        })
        .collect();
    RealProcess::from_rows(rows).expect("nonempty grid and space")
}

/// Up to two intervals and two points drawn from the lattice of `range`,
/// with occasional infinite ends.
pub fn gen_borel_set(seed: u64, range: &ValueRange) -> BorelSet {
    let mut draw = Draw::new(seed);
    let intervals = (0..draw.below(3))
        .map(|_| {
            let a = range.sample(&mut draw);
            let b = range.sample(&mut draw);
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let lo = if draw.below(5) == 0 {
                Endpoint::NegInfinity
            } else {
                Endpoint::Finite(lo)
            };
            let hi = if draw.below(5) == 0 {
                Endpoint::PosInfinity
            } else {
                Endpoint::Finite(hi)
            };
            let (lo_open, hi_open) = if lo == hi {
                (false, false)
            } else {
                (draw.coin(), draw.coin())
            };
            Interval::new(lo, lo_open, hi, hi_open).expect("ordered ends")
        })
        .collect();
    let points = (0..draw.below(3))
        .map(|_| range.sample(&mut draw))
        .collect();
    BorelSet::new(intervals, points)
}
