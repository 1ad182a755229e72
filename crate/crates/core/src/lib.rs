//! Stopping times and stopping processes on finite filtered probability spaces.
//!
//! A stopping process is a {0,1}-valued adapted process whose paths never
//! go back up from 0 to 1, a "traffic light" that can turn red once and
//! stays red. This crate checks both notions on finite spaces and converts
//! between them:
//!
//! * [`time_from_process`] maps a stopping process to the first time it reads 0;
//! * [`process_from_time`] maps a stopping time τ to the process `1{τ > t}`.
//!
//! The two are mutually inverse, which the [`enumerate`] module verifies
//! exhaustively on small filtrations.
//!
//! ```
//! use stopping_core::{
//!     process_from_time, time_from_process, ExtTime, Filtration, Partition, RandomTime,
//!     SampleSpace, TimeGrid,
//! };
//!
//! let space = SampleSpace::uniform(["a", "b", "c", "d"]).unwrap();
//! let halves = Partition::from_blocks(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
//! let f = Filtration::new(
//!     space,
//!     TimeGrid::integers(3).unwrap(),
//!     vec![Partition::trivial(4), halves, Partition::discrete(4)],
//!     None,
//! )
//! .unwrap();
//!
//! let tau = RandomTime::new(vec![ExtTime::At(1), ExtTime::At(1), ExtTime::At(2), ExtTime::Infinity]);
//! let x = process_from_time(&tau, &f).unwrap();
//! assert_eq!(x.path(2).collect::<Vec<_>>(), vec![true, true, false]);
//! assert_eq!(time_from_process(&x, &f).unwrap(), tau);
//! ```

pub mod bijection;
pub mod cli;
pub mod document;
pub mod enumerate;
pub mod error;
pub mod filtration;
pub mod generate;
pub mod process;
pub mod rational;
pub mod space;
pub mod verdict;

pub use bijection::{
    hitting_time, process_from_time, roundtrip_process, roundtrip_time, time_from_process,
    HittingTime,
};
pub use enumerate::{
    check_bijection, check_bijection_with, enumerate_stopping_processes, enumerate_stopping_times,
    Comparison, EnumerationReport, RoundTripFailure, DEFAULT_STATE_CAP,
};
pub use error::{Error, Result};
pub use filtration::{ExtTime, Filtration, TimeGrid, TimeValue};
pub use process::{
    is_stopping_process, is_stopping_time, processes_equal_as, times_equal_as, BinaryProcess,
    BorelSet, Endpoint, Interval, RandomTime, RealProcess,
};
pub use rational::Rational;
pub use space::{EventSet, Partition, SampleSpace};
pub use verdict::{Verdict, Violation};
