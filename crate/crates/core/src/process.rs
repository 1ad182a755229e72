//! Random times, 0-1 processes, real processes, target sets, and the
//! stopping-time / stopping-process predicates.
//!
//! No càdlàg check exists: on a finite grid every path is right-continuous
//! with left limits, so the property is automatic.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::filtration::{ExtTime, Filtration};
use crate::rational::Rational;
use crate::space::{EventSet, SampleSpace};
use crate::verdict::{Verdict, Violation};

/// A map from atoms to grid times or +∞, indexed by atom.
///
/// The derived order is lexicographic by atom with +∞ greatest.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RandomTime {
    values: Vec<ExtTime>,
}

impl RandomTime {
    pub fn new(values: Vec<ExtTime>) -> Self {
        RandomTime { values }
    }

    pub fn constant(atoms: usize, t: ExtTime) -> Self {
        RandomTime {
            values: vec![t; atoms],
        }
    }

    pub fn values(&self) -> &[ExtTime] {
        &self.values
    }

    pub fn at(&self, atom: usize) -> ExtTime {
        self.values[atom]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `{ω : τ(ω) ≤ t}` for grid index `t`.
    pub fn stopped_by(&self, t: usize) -> EventSet {
        EventSet::from_indicator(self.values.iter().map(|&v| v <= ExtTime::At(t)).collect())
    }

    pub(crate) fn check_on(&self, f: &Filtration) -> Result<()> {
        if self.values.len() != f.space().len() {
            return Err(Error::domain(format!(
                "random time over {} atoms used with a space of {} atoms",
                self.values.len(),
                f.space().len()
            )));
        }
        let n = f.grid().len();
        if let Some(i) = self
            .values
            .iter()
            .position(|v| matches!(v, ExtTime::At(t) if *t >= n))
        {
            return Err(Error::domain(format!(
                "random time at atom {:?} is off the grid",
                f.space().label(i)
            )));
        }
        Ok(())
    }
}

/// A {0,1}-valued process on grid × atoms, stored time-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryProcess {
    atoms: usize,
    values: Vec<bool>,
}

impl BinaryProcess {
    /// One row per grid time, each row indexed by atom.
    pub fn from_rows(rows: Vec<Vec<bool>>) -> Result<Self> {
        let atoms = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || atoms == 0 {
            return Err(Error::domain(
                "process needs at least one time and one atom",
            ));
        }
        if rows.iter().any(|r| r.len() != atoms) {
            return Err(Error::domain("process rows have different lengths"));
        }
        Ok(BinaryProcess {
            atoms,
            values: rows.concat(),
        })
    }

    pub fn from_fn(times: usize, atoms: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut values = Vec::with_capacity(times * atoms);
        for t in 0..times {
            for a in 0..atoms {
                values.push(f(t, a));
            }
        }
        BinaryProcess { atoms, values }
    }

    pub fn constant(times: usize, atoms: usize, v: bool) -> Self {
        Self::from_fn(times, atoms, |_, _| v)
    }

    pub fn times(&self) -> usize {
        self.values.len() / self.atoms
    }

    pub fn atoms(&self) -> usize {
        self.atoms
    }

    pub fn get(&self, t: usize, atom: usize) -> bool {
        self.values[t * self.atoms + atom]
    }

    pub fn section(&self, t: usize) -> &[bool] {
        &self.values[t * self.atoms..(t + 1) * self.atoms]
    }

    pub fn path(&self, atom: usize) -> impl Iterator<Item = bool> + '_ {
        (0..self.times()).map(move |t| self.get(t, atom))
    }

    pub fn to_real(&self) -> RealProcess {
        RealProcess {
            atoms: self.atoms,
            values: self
                .values
                .iter()
                .map(|&b| {
                    if b {
                        crate::rational::one()
                    } else {
                        crate::rational::zero()
                    }
                })
                .collect(),
        }
    }

    pub(crate) fn check_on(&self, f: &Filtration) -> Result<()> {
        if self.atoms != f.space().len() || self.times() != f.grid().len() {
            return Err(Error::domain(format!(
                "process of shape {}x{} used with a filtration of shape {}x{}",
                self.times(),
                self.atoms,
                f.grid().len(),
                f.space().len()
            )));
        }
        Ok(())
    }
}

/// Lexicographic by atom, then by time, with 0 < 1. For stopping processes
/// this agrees with the order of the corresponding stopping times.
impl Ord for BinaryProcess {
    fn cmp(&self, other: &Self) -> Ordering {
        let key = |p: &BinaryProcess| {
            (0..p.atoms)
                .flat_map(|a| p.path(a).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        };
        key(self)
            .cmp(&key(other))
            .then_with(|| self.atoms.cmp(&other.atoms))
    }
}

impl PartialOrd for BinaryProcess {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A rational-valued process on grid × atoms, stored time-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RealProcess {
    atoms: usize,
    values: Vec<Rational>,
}

impl RealProcess {
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let atoms = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || atoms == 0 {
            return Err(Error::domain(
                "process needs at least one time and one atom",
            ));
        }
        if rows.iter().any(|r| r.len() != atoms) {
            return Err(Error::domain("process rows have different lengths"));
        }
        Ok(RealProcess {
            atoms,
            values: rows.concat(),
        })
    }

    pub fn times(&self) -> usize {
        self.values.len() / self.atoms
    }

    pub fn atoms(&self) -> usize {
        self.atoms
    }

    pub fn get(&self, t: usize, atom: usize) -> &Rational {
        &self.values[t * self.atoms + atom]
    }

    pub fn section(&self, t: usize) -> &[Rational] {
        &self.values[t * self.atoms..(t + 1) * self.atoms]
    }

    /// Block-constant sections at every level.
    pub fn is_adapted(&self, f: &Filtration) -> Result<bool> {
        self.check_on(f)?;
        for (t, level) in f.levels().iter().enumerate() {
            if !level.is_constant_on_blocks(self.section(t))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub(crate) fn check_on(&self, f: &Filtration) -> Result<()> {
        if self.atoms != f.space().len() || self.times() != f.grid().len() {
            return Err(Error::domain(format!(
                "process of shape {}x{} used with a filtration of shape {}x{}",
                self.times(),
                self.atoms,
                f.grid().len(),
                f.space().len()
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Endpoint {
    NegInfinity,
    Finite(Rational),
    PosInfinity,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Endpoint,
    lo_open: bool,
    hi: Endpoint,
    hi_open: bool,
}

impl Interval {
    pub fn new(lo: Endpoint, lo_open: bool, hi: Endpoint, hi_open: bool) -> Result<Self> {
        match lo.cmp(&hi) {
            Ordering::Greater => {
                return Err(Error::domain("interval has lower end above upper end"))
            }
            Ordering::Equal if lo_open || hi_open => {
                return Err(Error::domain(
                    "degenerate interval must be closed on both sides",
                ))
            }
            _ => {}
        }
        if lo == Endpoint::PosInfinity || hi == Endpoint::NegInfinity {
            return Err(Error::domain("interval cannot be empty at infinity"));
        }
        Ok(Interval {
            lo,
            lo_open,
            hi,
            hi_open,
        })
    }

    pub fn closed(lo: Rational, hi: Rational) -> Result<Self> {
        Self::new(Endpoint::Finite(lo), false, Endpoint::Finite(hi), false)
    }

    pub fn lo(&self) -> (&Endpoint, bool) {
        (&self.lo, self.lo_open)
    }

    pub fn hi(&self) -> (&Endpoint, bool) {
        (&self.hi, self.hi_open)
    }

    pub fn contains(&self, v: &Rational) -> bool {
        let v = Endpoint::Finite(v.clone());
        let above = match v.cmp(&self.lo) {
            Ordering::Greater => true,
            Ordering::Equal => !self.lo_open,
            Ordering::Less => false,
        };
        let below = match v.cmp(&self.hi) {
            Ordering::Less => true,
            Ordering::Equal => !self.hi_open,
            Ordering::Greater => false,
        };
        above && below
    }
}

/// A finite union of intervals and points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BorelSet {
    intervals: Vec<Interval>,
    points: Vec<Rational>,
}

impl BorelSet {
    pub fn new(intervals: Vec<Interval>, points: Vec<Rational>) -> Self {
        BorelSet { intervals, points }
    }

    pub fn point(p: Rational) -> Self {
        BorelSet {
            intervals: Vec::new(),
            points: vec![p],
        }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn points(&self) -> &[Rational] {
        &self.points
    }

    pub fn member(&self, v: &Rational) -> bool {
        self.points.contains(v) || self.intervals.iter().any(|i| i.contains(v))
    }
}

/// `{τ ≤ t}` must be a union of level-`t` blocks for every grid time `t`.
pub fn is_stopping_time(tau: &RandomTime, f: &Filtration) -> Result<Verdict> {
    tau.check_on(f)?;
    for (t, level) in f.levels().iter().enumerate() {
        let event = tau.stopped_by(t);
        if !level.is_measurable(&event)? {
            return Ok(Verdict::Fails(Violation::EventNotMeasurable {
                time: f.grid().value(ExtTime::At(t)),
                event: f.space().labels_of(&event),
            }));
        }
    }
    Ok(Verdict::Holds)
}

/// Adapted and non-increasing. At each grid time the transition into `t`
/// is checked for monotonicity before the section at `t` for adaptedness.
pub fn is_stopping_process(x: &BinaryProcess, f: &Filtration) -> Result<Verdict> {
    x.check_on(f)?;
    let grid = f.grid();
    for (t, level) in f.levels().iter().enumerate() {
        if t > 0 {
            if let Some(a) = (0..x.atoms()).find(|&a| !x.get(t - 1, a) && x.get(t, a)) {
                return Ok(Verdict::Fails(Violation::NotMonotone {
                    atom: f.space().label(a).to_string(),
                    earlier: grid.value(ExtTime::At(t - 1)),
                    later: grid.value(ExtTime::At(t)),
                }));
            }
        }
        let section = x.section(t);
        if let Some(block) = level
            .blocks()
            .iter()
            .find(|b| b.iter().any(|&a| section[a] != section[b[0]]))
        {
            return Ok(Verdict::Fails(Violation::NotAdapted {
                time: grid.value(ExtTime::At(t)),
                block: block
                    .iter()
                    .map(|&a| f.space().label(a).to_string())
                    .collect(),
            }));
        }
    }
    Ok(Verdict::Holds)
}

/// Equality outside a null event.
pub fn times_equal_as(a: &RandomTime, b: &RandomTime, space: &SampleSpace) -> Result<bool> {
    if a.len() != space.len() || b.len() != space.len() {
        return Err(Error::domain("random times and space differ in atom count"));
    }
    let diff = EventSet::from_indicator(
        a.values
            .iter()
            .zip(&b.values)
            .map(|(x, y)| x != y)
            .collect(),
    );
    space.null_event(&diff)
}

/// Equality outside a null event, for 0-1 processes.
pub fn processes_equal_as(
    a: &BinaryProcess,
    b: &BinaryProcess,
    space: &SampleSpace,
) -> Result<bool> {
    if a.atoms() != space.len() || b.atoms() != space.len() || a.times() != b.times() {
        return Err(Error::domain("processes and space differ in shape"));
    }
    let diff =
        EventSet::from_indicator((0..space.len()).map(|w| a.path(w).ne(b.path(w))).collect());
    space.null_event(&diff)
}
