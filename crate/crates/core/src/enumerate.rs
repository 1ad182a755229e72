//! Exhaustive enumeration of stopping times and stopping processes.
//!
//! Stopping times are built as increasing chains of measurable events
//! `A_t = {τ ≤ t}`; stopping processes as decreasing chains `B_t = {X_t = 1}`.
//! At each level the next event is the previous one plus (or minus) a set of
//! whole blocks of that level, so only valid objects are ever produced.

use std::collections::BTreeSet;

use crate::bijection::{roundtrip_process, roundtrip_time, time_from_process};
use crate::error::{Error, Result};
use crate::filtration::{ExtTime, Filtration};
use crate::process::{processes_equal_as, times_equal_as, BinaryProcess, RandomTime};

/// Default bound on the number of partial states an enumeration may visit.
pub const DEFAULT_STATE_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Comparison {
    #[default]
    Exact,
    /// Equal outside a null event.
    AlmostSure,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RoundTripFailure {
    Time {
        original: RandomTime,
        result: Result<RandomTime>,
    },
    Process {
        original: BinaryProcess,
        result: Result<BinaryProcess>,
    },
    /// The stopping processes do not map onto the enumerated stopping times.
    ImageMismatch { missing: usize, extra: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationReport {
    pub stopping_time_count: usize,
    pub stopping_process_count: usize,
    pub roundtrip_failures: Vec<RoundTripFailure>,
}

impl EnumerationReport {
    pub fn is_bijection(&self) -> bool {
        self.roundtrip_failures.is_empty()
            && self.stopping_time_count == self.stopping_process_count
    }
}

struct Budget {
    cap: u64,
    used: u64,
}

impl Budget {
    fn take(&mut self, n: u64) -> Result<()> {
        self.used = self.used.saturating_add(n);
        if self.used > self.cap {
            Err(Error::CapExceeded { cap: self.cap })
        } else {
            Ok(())
        }
    }
}

fn require_valid(f: &Filtration) -> Result<()> {
    match f.validate().violation() {
        None => Ok(()),
        Some(v) => Err(Error::Domain(format!("invalid filtration: {v}"))),
    }
}

/// Subsets of `items` as index masks, charged to the budget up front.
fn subsets(k: usize, budget: &mut Budget) -> Result<impl Iterator<Item = u64>> {
    if k >= 63 {
        return Err(Error::CapExceeded { cap: budget.cap });
    }
    budget.take(1u64 << k)?;
    Ok(0..(1u64 << k))
}

pub fn enumerate_stopping_times(f: &Filtration) -> Result<Vec<RandomTime>> {
    enumerate_stopping_times_capped(f, DEFAULT_STATE_CAP)
}

/// All stopping times, sorted lexicographically by atom with +∞ greatest.
pub fn enumerate_stopping_times_capped(f: &Filtration, cap: u64) -> Result<Vec<RandomTime>> {
    require_valid(f)?;
    let mut budget = Budget { cap, used: 0 };
    let mut out = Vec::new();
    let mut values = vec![ExtTime::Infinity; f.space().len()];
    extend_times(f, 0, &mut values, &mut budget, &mut out)?;
    out.sort();
    Ok(out)
}

fn extend_times(
    f: &Filtration,
    t: usize,
    values: &mut Vec<ExtTime>,
    budget: &mut Budget,
    out: &mut Vec<RandomTime>,
) -> Result<()> {
    if t == f.grid().len() {
        out.push(RandomTime::new(values.clone()));
        return Ok(());
    }
    // Blocks not yet stopped; a valid filtration never splits a block across the stopped set.
    let free: Vec<&Vec<usize>> = f.levels()[t]
        .blocks()
        .iter()
        .filter(|b| values[b[0]] == ExtTime::Infinity)
        .collect();
    for mask in subsets(free.len(), budget)? {
        for (i, block) in free.iter().enumerate() {
            if mask >> i & 1 == 1 {
                for &a in block.iter() {
                    values[a] = ExtTime::At(t);
                }
            }
        }
        extend_times(f, t + 1, values, budget, out)?;
        for block in &free {
            for &a in block.iter() {
                values[a] = ExtTime::Infinity;
            }
        }
    }
    Ok(())
}

pub fn enumerate_stopping_processes(f: &Filtration) -> Result<Vec<BinaryProcess>> {
    enumerate_stopping_processes_capped(f, DEFAULT_STATE_CAP)
}

/// All stopping processes, sorted lexicographically by atom then time.
pub fn enumerate_stopping_processes_capped(f: &Filtration, cap: u64) -> Result<Vec<BinaryProcess>> {
    require_valid(f)?;
    let mut budget = Budget { cap, used: 0 };
    let mut out = Vec::new();
    let mut rows: Vec<Vec<bool>> = Vec::with_capacity(f.grid().len());
    extend_processes(f, &mut rows, &mut budget, &mut out)?;
    out.sort();
    Ok(out)
}

fn extend_processes(
    f: &Filtration,
    rows: &mut Vec<Vec<bool>>,
    budget: &mut Budget,
    out: &mut Vec<BinaryProcess>,
) -> Result<()> {
    let t = rows.len();
    if t == f.grid().len() {
        out.push(BinaryProcess::from_rows(rows.clone())?);
        return Ok(());
    }
    let n = f.space().len();
    // Blocks still reading 1; every atom is alive before the first row.
    let alive: Vec<&Vec<usize>> = f.levels()[t]
        .blocks()
        .iter()
        .filter(|b| rows.last().is_none_or(|prev| prev[b[0]]))
        .collect();
    for mask in subsets(alive.len(), budget)? {
        let mut row = vec![false; n];
        for (i, block) in alive.iter().enumerate() {
            if mask >> i & 1 == 1 {
                for &a in block.iter() {
                    row[a] = true;
                }
            }
        }
        rows.push(row);
        extend_processes(f, rows, budget, out)?;
        rows.pop();
    }
    Ok(())
}

pub fn check_bijection(f: &Filtration) -> Result<EnumerationReport> {
    check_bijection_with(f, DEFAULT_STATE_CAP, Comparison::Exact)
}

/// Enumerates both sides, round-trips every object, and checks that the
/// processes map onto exactly the enumerated times.
pub fn check_bijection_with(
    f: &Filtration,
    cap: u64,
    comparison: Comparison,
) -> Result<EnumerationReport> {
    let times = enumerate_stopping_times_capped(f, cap)?;
    let processes = enumerate_stopping_processes_capped(f, cap)?;
    let space = f.space();
    let mut failures = Vec::new();

    for tau in &times {
        let result = roundtrip_time(tau, f);
        let ok = match (&result, comparison) {
            (Ok(back), Comparison::Exact) => back == tau,
            (Ok(back), Comparison::AlmostSure) => times_equal_as(back, tau, space)?,
            (Err(_), _) => false,
        };
        if !ok {
            failures.push(RoundTripFailure::Time {
                original: tau.clone(),
                result,
            });
        }
    }
    for x in &processes {
        let result = roundtrip_process(x, f);
        let ok = match (&result, comparison) {
            (Ok(back), Comparison::Exact) => back == x,
            (Ok(back), Comparison::AlmostSure) => processes_equal_as(back, x, space)?,
            (Err(_), _) => false,
        };
        if !ok {
            failures.push(RoundTripFailure::Process {
                original: x.clone(),
                result,
            });
        }
    }

    let image: BTreeSet<RandomTime> = processes
        .iter()
        .filter_map(|x| time_from_process(x, f).ok())
        .collect();
    let expected: BTreeSet<RandomTime> = times.iter().cloned().collect();
    let missing = expected.difference(&image).count();
    let extra = image.difference(&expected).count();
    if missing > 0 || extra > 0 || image.len() != processes.len() {
        failures.push(RoundTripFailure::ImageMismatch { missing, extra });
    }

    Ok(EnumerationReport {
        stopping_time_count: times.len(),
        stopping_process_count: processes.len(),
        roundtrip_failures: failures,
    })
}
