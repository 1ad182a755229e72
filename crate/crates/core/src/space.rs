//! Finite sample spaces, events, and partitions standing in for σ-algebras.
//!
//! On a finite Ω every σ-algebra is generated by exactly one partition, so a
//! [`Partition`] is the only representation used. Atoms are addressed by their
//! index in the owning [`SampleSpace`].

use std::collections::HashMap;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{one, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleSpace {
    labels: Vec<String>,
    weights: Vec<Rational>,
    index: HashMap<String, usize>,
}

impl SampleSpace {
    /// Builds a space from `(label, weight)` pairs in atom order.
    pub fn new<S: Into<String>>(atoms: impl IntoIterator<Item = (S, Rational)>) -> Result<Self> {
        let mut labels = Vec::new();
        let mut weights = Vec::new();
        let mut index = HashMap::new();
        for (label, weight) in atoms {
            let label = label.into();
            if label.is_empty() {
                return Err(Error::domain("atom labels must be nonempty"));
            }
            if weight.is_negative() {
                return Err(Error::domain(format!("atom {label:?} has negative weight")));
            }
            if index.insert(label.clone(), labels.len()).is_some() {
                return Err(Error::domain(format!("duplicate atom label {label:?}")));
            }
            labels.push(label);
            weights.push(weight);
        }
        if labels.is_empty() {
            return Err(Error::domain("sample space must have at least one atom"));
        }
        let total: Rational = weights.iter().sum();
        if total != one() {
            return Err(Error::domain(format!(
                "weights sum to {}, not 1",
                crate::rational::format_rational(&total)
            )));
        }
        Ok(SampleSpace {
            labels,
            weights,
            index,
        })
    }

    pub fn uniform<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::domain("sample space must have at least one atom"));
        }
        let w = Rational::new(1.into(), labels.len().into());
        Self::new(labels.into_iter().map(|l| (l, w.clone())))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, atom: usize) -> &str {
        &self.labels[atom]
    }

    pub fn weight(&self, atom: usize) -> &Rational {
        &self.weights[atom]
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Event from atom labels; unknown labels are a domain error.
    pub fn event<S: AsRef<str>>(&self, labels: impl IntoIterator<Item = S>) -> Result<EventSet> {
        let mut e = EventSet::empty(self.len());
        for l in labels {
            let l = l.as_ref();
            let i = self
                .index_of(l)
                .ok_or_else(|| Error::domain(format!("unknown atom {l:?}")))?;
            e.insert(i);
        }
        Ok(e)
    }

    pub fn probability(&self, e: &EventSet) -> Result<Rational> {
        self.check_event(e)?;
        Ok(e.atoms().map(|i| &self.weights[i]).sum())
    }

    /// True iff the event carries total weight exactly zero.
    pub fn null_event(&self, e: &EventSet) -> Result<bool> {
        Ok(self.probability(e)?.is_zero())
    }

    pub(crate) fn check_event(&self, e: &EventSet) -> Result<()> {
        if e.universe() != self.len() {
            return Err(Error::domain(format!(
                "event over {} atoms used with a space of {} atoms",
                e.universe(),
                self.len()
            )));
        }
        Ok(())
    }

    pub fn labels_of(&self, e: &EventSet) -> Vec<String> {
        e.atoms().map(|i| self.labels[i].clone()).collect()
    }
}

/// A subset of the atoms of a space with `universe` atoms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EventSet {
    members: Vec<bool>,
}

impl EventSet {
    pub fn empty(universe: usize) -> Self {
        EventSet {
            members: vec![false; universe],
        }
    }

    pub fn full(universe: usize) -> Self {
        EventSet {
            members: vec![true; universe],
        }
    }

    pub fn from_atoms(universe: usize, atoms: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut e = Self::empty(universe);
        for a in atoms {
            if a >= universe {
                return Err(Error::domain(format!("atom index {a} out of range")));
            }
            e.members[a] = true;
        }
        Ok(e)
    }

    pub fn from_indicator(members: Vec<bool>) -> Self {
        EventSet { members }
    }

    pub fn universe(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, atom: usize) -> bool {
        self.members.get(atom).copied().unwrap_or(false)
    }

    pub fn insert(&mut self, atom: usize) {
        self.members[atom] = true;
    }

    pub fn atoms(&self) -> impl Iterator<Item = usize> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i))
    }

    pub fn is_empty(&self) -> bool {
        !self.members.iter().any(|&m| m)
    }

    pub fn indicator(&self) -> &[bool] {
        &self.members
    }
}

/// Disjoint nonempty blocks covering `0..universe`, kept in canonical form:
/// atoms ascending within a block, blocks ordered by their least atom.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl Partition {
    pub fn from_blocks(universe: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut owner = vec![usize::MAX; universe];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::domain("partition has an empty block"));
            }
            for &a in block {
                if a >= universe {
                    return Err(Error::domain(format!("atom index {a} out of range")));
                }
                if owner[a] != usize::MAX {
                    return Err(Error::domain(format!("atom {a} appears in two blocks")));
                }
                owner[a] = b;
            }
        }
        if let Some(a) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::domain(format!(
                "atom {a} is not covered by any block"
            )));
        }
        Ok(Self::from_keys(&owner))
    }

    /// Groups atoms by equal key; `keys[i]` is the key of atom `i`.
    pub fn from_keys<K: Eq + std::hash::Hash>(keys: &[K]) -> Self {
        let mut slot: HashMap<&K, usize> = HashMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut block_of = Vec::with_capacity(keys.len());
        // Scanning atoms in order yields blocks sorted by least atom.
        for (i, k) in keys.iter().enumerate() {
            let b = *slot.entry(k).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[b].push(i);
            block_of.push(b);
        }
        Partition { blocks, block_of }
    }

    pub fn from_labels<S: AsRef<str>>(space: &SampleSpace, blocks: &[Vec<S>]) -> Result<Self> {
        let blocks = blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|l| {
                        space
                            .index_of(l.as_ref())
                            .ok_or_else(|| Error::domain(format!("unknown atom {:?}", l.as_ref())))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_blocks(space.len(), blocks)
    }

    /// The trivial σ-algebra {∅, Ω}.
    pub fn trivial(universe: usize) -> Self {
        Self::from_keys(&vec![(); universe])
    }

    /// The power set: every atom on its own.
    pub fn discrete(universe: usize) -> Self {
        Self::from_keys(&(0..universe).collect::<Vec<_>>())
    }

    pub fn universe(&self) -> usize {
        self.block_of.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of(&self, atom: usize) -> usize {
        self.block_of[atom]
    }

    fn check_universe(&self, universe: usize, what: &str) -> Result<()> {
        if universe != self.universe() {
            return Err(Error::domain(format!(
                "{what} over {universe} atoms used with a partition of {} atoms",
                self.universe()
            )));
        }
        Ok(())
    }

    /// True iff `e` is a union of blocks.
    pub fn is_measurable(&self, e: &EventSet) -> Result<bool> {
        self.check_universe(e.universe(), "event")?;
        Ok(self.blocks.iter().all(|block| {
            let inside = e.contains(block[0]);
            block.iter().all(|&a| e.contains(a) == inside)
        }))
    }

    /// True iff every block of `self` lies inside a block of `coarse`.
    pub fn refines(&self, coarse: &Partition) -> Result<bool> {
        self.check_universe(coarse.universe(), "partition")?;
        Ok(self.blocks.iter().all(|block| {
            let target = coarse.block_of[block[0]];
            block.iter().all(|&a| coarse.block_of[a] == target)
        }))
    }

    /// True iff `values` (indexed by atom) is constant on each block.
    pub fn is_constant_on_blocks<T: PartialEq>(&self, values: &[T]) -> Result<bool> {
        self.check_universe(values.len(), "function")?;
        Ok(self.blocks.iter().all(|block| {
            let v = &values[block[0]];
            block.iter().all(|&a| values[a] == *v)
        }))
    }

    /// Applies an atom relabelling: atom `i` becomes `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        self.check_universe(perm.len(), "permutation")?;
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&a| perm[a]).collect())
            .collect();
        Self::from_blocks(self.universe(), blocks)
    }
}
