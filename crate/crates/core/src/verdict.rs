use std::fmt;

use crate::filtration::TimeValue;

/// Outcome of a verification predicate. A failure carries the first
/// violation found, scanning in grid order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(Violation),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(v) => Some(v),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// The level at `later` does not refine the level at `earlier`.
    NotIncreasing {
        earlier: TimeValue,
        later: TimeValue,
    },
    /// `{τ ≤ time}` is not a union of blocks of the level at `time`.
    EventNotMeasurable { time: TimeValue, event: Vec<String> },
    /// The section at `time` takes two values on the listed block.
    NotAdapted { time: TimeValue, block: Vec<String> },
    /// A path goes from 0 back up to 1.
    NotMonotone {
        atom: String,
        earlier: TimeValue,
        later: TimeValue,
    },
}

fn braces(labels: &[String]) -> String {
    format!("{{{}}}", labels.join(","))
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotIncreasing { earlier, later } => write!(
                f,
                "filtration decreases between times ({earlier}, {later}): level at {later} does not refine level at {earlier}"
            ),
            Violation::EventNotMeasurable { time, event } => write!(
                f,
                "not a stopping time at t={time}: event {{tau <= {time}}} = {} is not measurable",
                braces(event)
            ),
            Violation::NotAdapted { time, block } => write!(
                f,
                "not adapted at t={time}: section is not constant on block {}",
                braces(block)
            ),
            Violation::NotMonotone {
                atom,
                earlier,
                later,
            } => write!(
                f,
                "not non-increasing: path of {atom} goes from 0 at t={earlier} to 1 at t={later}"
            ),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => f.write_str("ok"),
            Verdict::Fails(v) => v.fmt(f),
        }
    }
}
