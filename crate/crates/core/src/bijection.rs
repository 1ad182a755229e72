//! The correspondence between stopping processes and stopping times, and
//! first hitting times of real processes.
//!
//! `time_from_process` sends a 0-1 process to the first grid time its path
//! reads 0 (or +∞ if it never does). `process_from_time` sends τ to the
//! indicator process `1{τ > t}`. Both reject inputs that fail their
//! defining predicate, so they only ever act on verified objects.

use crate::error::{Error, Result};
use crate::filtration::{ExtTime, Filtration};
use crate::process::{
    is_stopping_process, is_stopping_time, BinaryProcess, BorelSet, RandomTime, RealProcess,
};
use crate::verdict::Verdict;

pub fn time_from_process(x: &BinaryProcess, f: &Filtration) -> Result<RandomTime> {
    if let Verdict::Fails(v) = is_stopping_process(x, f)? {
        return Err(Error::Rejected(format!("not a stopping process: {v}")));
    }
    Ok(first_zero(x))
}

pub(crate) fn first_zero(x: &BinaryProcess) -> RandomTime {
    RandomTime::new(
        (0..x.atoms())
            .map(|a| {
                x.path(a)
                    .position(|v| !v)
                    .map_or(ExtTime::Infinity, ExtTime::At)
            })
            .collect(),
    )
}

pub fn process_from_time(tau: &RandomTime, f: &Filtration) -> Result<BinaryProcess> {
    if let Verdict::Fails(v) = is_stopping_time(tau, f)? {
        return Err(Error::Rejected(format!("not a stopping time: {v}")));
    }
    Ok(indicator_after(tau, f.grid().len()))
}

pub(crate) fn indicator_after(tau: &RandomTime, times: usize) -> BinaryProcess {
    BinaryProcess::from_fn(times, tau.len(), |t, a| tau.at(a).after(t))
}

pub fn roundtrip_time(tau: &RandomTime, f: &Filtration) -> Result<RandomTime> {
    time_from_process(&process_from_time(tau, f)?, f)
}

pub fn roundtrip_process(x: &BinaryProcess, f: &Filtration) -> Result<BinaryProcess> {
    process_from_time(&time_from_process(x, f)?, f)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HittingTime {
    pub time: RandomTime,
    /// Whether `time` is a stopping time for the filtration.
    pub verdict: Verdict,
}

/// First grid time at which each path lies in `target`, with the stopping
/// verdict of the result. Defined for any process; the verdict holds
/// whenever `x` is adapted.
pub fn hitting_time(x: &RealProcess, target: &BorelSet, f: &Filtration) -> Result<HittingTime> {
    x.check_on(f)?;
    let time = RandomTime::new(
        (0..x.atoms())
            .map(|a| {
                (0..x.times())
                    .find(|&t| target.member(x.get(t, a)))
                    .map_or(ExtTime::Infinity, ExtTime::At)
            })
            .collect(),
    );
    let verdict = is_stopping_time(&time, f)?;
    Ok(HittingTime { time, verdict })
}
