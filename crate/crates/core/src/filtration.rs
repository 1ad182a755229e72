//! Finite time grids and filtrations as refinement chains of partitions.
//!
//! The filtration is only defined at grid times and at +∞. Asking for the
//! level between two grid times is an error rather than an extension.

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};
use crate::space::{Partition, SampleSpace};
use crate::verdict::{Verdict, Violation};

/// A point of the grid by index, or +∞. Ordered with every grid time below +∞.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtTime {
    At(usize),
    Infinity,
}

impl ExtTime {
    /// `self > t` for a grid index `t`.
    pub fn after(self, t: usize) -> bool {
        self > ExtTime::At(t)
    }
}

/// A time given by value rather than grid position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TimeValue {
    Finite(Rational),
    Infinity,
}

impl TimeValue {
    pub fn parse(text: &str) -> Option<Self> {
        if text == "inf" {
            Some(TimeValue::Infinity)
        } else {
            crate::rational::parse_rational(text).map(TimeValue::Finite)
        }
    }
}

impl fmt::Display for TimeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TimeValue::Finite(r) => f.write_str(&format_rational(r)),
            TimeValue::Infinity => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TimeGrid {
    times: Vec<Rational>,
}

impl TimeGrid {
    pub fn new(times: Vec<Rational>) -> Result<Self> {
        if times.is_empty() {
            return Err(Error::domain("time grid must be nonempty"));
        }
        if let Some(w) = times.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::domain(format!(
                "time grid is not strictly increasing at {} -> {}",
                format_rational(&w[0]),
                format_rational(&w[1])
            )));
        }
        Ok(TimeGrid { times })
    }

    /// The grid `0, 1, ..., n-1`.
    pub fn integers(n: usize) -> Result<Self> {
        Self::new((0..n as i64).map(crate::rational::int).collect())
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn times(&self) -> &[Rational] {
        &self.times
    }

    pub fn time(&self, i: usize) -> &Rational {
        &self.times[i]
    }

    pub fn position(&self, t: &Rational) -> Option<usize> {
        self.times.binary_search(t).ok()
    }

    pub fn resolve(&self, t: &TimeValue) -> Result<ExtTime> {
        match t {
            TimeValue::Infinity => Ok(ExtTime::Infinity),
            TimeValue::Finite(r) => self.position(r).map(ExtTime::At).ok_or_else(|| {
                Error::domain(format!("time {} is not on the grid", format_rational(r)))
            }),
        }
    }

    pub fn value(&self, t: ExtTime) -> TimeValue {
        match t {
            ExtTime::At(i) => TimeValue::Finite(self.times[i].clone()),
            ExtTime::Infinity => TimeValue::Infinity,
        }
    }

    pub(crate) fn at(&self, i: usize) -> TimeValue {
        TimeValue::Finite(self.times[i].clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filtration {
    space: SampleSpace,
    grid: TimeGrid,
    levels: Vec<Partition>,
    terminal: Partition,
}

impl Filtration {
    /// Checks shapes only; use [`Filtration::validate`] for the information ordering.
    /// A missing terminal level defaults to the discrete partition.
    pub fn new(
        space: SampleSpace,
        grid: TimeGrid,
        levels: Vec<Partition>,
        terminal: Option<Partition>,
    ) -> Result<Self> {
        if levels.len() != grid.len() {
            return Err(Error::domain(format!(
                "filtration has {} levels for {} grid times",
                levels.len(),
                grid.len()
            )));
        }
        let n = space.len();
        let terminal = terminal.unwrap_or_else(|| Partition::discrete(n));
        if levels
            .iter()
            .chain(std::iter::once(&terminal))
            .any(|p| p.universe() != n)
        {
            return Err(Error::domain(
                "filtration level is over a different number of atoms than the space",
            ));
        }
        Ok(Filtration {
            space,
            grid,
            levels,
            terminal,
        })
    }

    /// Every level is the trivial partition {Ω}.
    pub fn trivial(space: SampleSpace, grid: TimeGrid) -> Self {
        let n = space.len();
        let levels = vec![Partition::trivial(n); grid.len()];
        Filtration {
            space,
            grid,
            levels,
            terminal: Partition::discrete(n),
        }
    }

    pub fn space(&self) -> &SampleSpace {
        &self.space
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn levels(&self) -> &[Partition] {
        &self.levels
    }

    pub fn terminal(&self) -> &Partition {
        &self.terminal
    }

    pub fn level(&self, t: ExtTime) -> &Partition {
        match t {
            ExtTime::At(i) => &self.levels[i],
            ExtTime::Infinity => &self.terminal,
        }
    }

    /// The partition for F_t; `t` must be a grid time or +∞.
    pub fn level_at(&self, t: &TimeValue) -> Result<&Partition> {
        Ok(self.level(self.grid.resolve(t)?))
    }

    pub fn validate(&self) -> Verdict {
        let n = self.levels.len();
        for later in 0..n {
            for earlier in 0..later {
                if !self.levels[later]
                    .refines(&self.levels[earlier])
                    .expect("levels share the universe")
                {
                    return Verdict::Fails(Violation::NotIncreasing {
                        earlier: self.grid.at(earlier),
                        later: self.grid.at(later),
                    });
                }
            }
        }
        for earlier in 0..n {
            if !self
                .terminal
                .refines(&self.levels[earlier])
                .expect("levels share the universe")
            {
                return Verdict::Fails(Violation::NotIncreasing {
                    earlier: self.grid.at(earlier),
                    later: TimeValue::Infinity,
                });
            }
        }
        Verdict::Holds
    }

    /// Same filtration with atoms relabelled: atom `i` moves to position `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.space.len();
        let mut check = perm.to_vec();
        check.sort_unstable();
        if check != (0..n).collect::<Vec<_>>() {
            return Err(Error::domain("not a permutation of the atoms"));
        }
        let mut atoms = vec![None; n];
        for (i, &j) in perm.iter().enumerate() {
            atoms[j] = Some((
                self.space.label(i).to_string(),
                self.space.weight(i).clone(),
            ));
        }
        let space = SampleSpace::new(atoms.into_iter().map(|a| a.expect("permutation")))?;
        let levels = self
            .levels
            .iter()
            .map(|p| p.permuted(perm))
            .collect::<Result<_>>()?;
        let terminal = self.terminal.permuted(perm)?;
        Filtration::new(space, self.grid.clone(), levels, Some(terminal))
    }
}
