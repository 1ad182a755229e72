//! Brute-force ground truth shared by the integration suites.
//!
//! These filters walk every candidate function and test the defining
//! conditions directly on pairs of atoms, without calling the library's
//! predicates or enumerators.

#![allow(dead_code)]

use stopping_core::{
    BinaryProcess, ExtTime, Filtration, Partition, RandomTime, SampleSpace, TimeGrid,
};

/// Ω = {a,b,c,d}, grid {0,1,2}, levels {Ω} → {{a,b},{c,d}} → singletons.
pub fn reference() -> Filtration {
    Filtration::new(
        SampleSpace::uniform(["a", "b", "c", "d"]).unwrap(),
        TimeGrid::integers(3).unwrap(),
        vec![
            Partition::trivial(4),
            Partition::from_blocks(4, vec![vec![0, 1], vec![2, 3]]).unwrap(),
            Partition::discrete(4),
        ],
        None,
    )
    .unwrap()
}

fn same_block(p: &Partition, a: usize, b: usize) -> bool {
    p.blocks()
        .iter()
        .any(|blk| blk.contains(&a) && blk.contains(&b))
}

/// `{τ ≤ t}` never separates two atoms sharing a level-`t` block.
pub fn oracle_is_stopping_time(values: &[ExtTime], f: &Filtration) -> bool {
    let k = values.len();
    f.levels().iter().enumerate().all(|(t, level)| {
        (0..k).all(|a| {
            (0..k).all(|b| {
                !same_block(level, a, b)
                    || ((values[a] <= ExtTime::At(t)) == (values[b] <= ExtTime::At(t)))
            })
        })
    })
}

/// `rows[t][a]`: block-constant at each level and never rising along a path.
pub fn oracle_is_stopping_process(rows: &[Vec<bool>], f: &Filtration) -> bool {
    let k = rows[0].len();
    let adapted = f.levels().iter().enumerate().all(|(t, level)| {
        (0..k).all(|a| (0..k).all(|b| !same_block(level, a, b) || rows[t][a] == rows[t][b]))
    });
    let monotone = rows.windows(2).all(|w| (0..k).all(|a| w[0][a] >= w[1][a]));
    adapted && monotone
}

/// Filters all (n+1)^k candidate times; output in lexicographic order, +∞ greatest.
pub fn brute_force_times(f: &Filtration) -> Vec<RandomTime> {
    let k = f.space().len();
    let n = f.grid().len();
    let choices: Vec<ExtTime> = (0..n).map(ExtTime::At).chain([ExtTime::Infinity]).collect();
    let total = (n + 1).pow(k as u32);
    let mut out = Vec::new();
    for code in 0..total {
        // Most significant digit is atom 0, so codes ascend lexicographically.
        let mut values = vec![ExtTime::Infinity; k];
        let mut c = code;
        for a in (0..k).rev() {
            values[a] = choices[c % (n + 1)];
            c /= n + 1;
        }
        if oracle_is_stopping_time(&values, f) {
            out.push(RandomTime::new(values));
        }
    }
    out
}

/// Filters all 2^(n·k) candidate 0-1 processes; output in atom-major lexicographic order.
pub fn brute_force_processes(f: &Filtration) -> Vec<BinaryProcess> {
    let k = f.space().len();
    let n = f.grid().len();
    let bits = n * k;
    let mut out = Vec::new();
    for code in 0u64..(1u64 << bits) {
        // Bit order: atom-major, time-minor, most significant first.
        let bit = |a: usize, t: usize| code >> (bits - 1 - (a * n + t)) & 1 == 1;
        let rows: Vec<Vec<bool>> = (0..n)
            .map(|t| (0..k).map(|a| bit(a, t)).collect())
            .collect();
        if oracle_is_stopping_process(&rows, f) {
            out.push(BinaryProcess::from_rows(rows).unwrap());
        }
    }
    out
}
