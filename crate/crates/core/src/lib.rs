//! States of Matter Search (SMS) global optimization.
//!
//! The optimizer splits a run into three phases named after the states of
//! matter. The gas phase favours wide random movement and frequent
//! re-seeding, the liquid phase narrows both, and the solid phase only lets
//! molecules vibrate around their current positions. Each phase drives the
//! same operators (direction update, movement, collisions, random
//! positions) with its own parameter set.
//!
//! Alongside the optimizer the crate ships:
//!
//! * [`baselines`]: global-best PSO and DE/rand/1/bin reference optimizers.
//! * [`benchmarks`]: 24 classic and GECCO-style test functions with seeded
//!   instance generation and a plain-text instance dump format.
//! * [`stats`]: AB/MB/SD summaries and the Wilcoxon rank-sum test.
//! * [`harness`]: experiment grids, report export and the `sms` CLI backend.
//!
//! ```
//! use sms_core::{benchmarks::{make_instance, BenchmarkId}, sms::{run_sms, SmsParams}};
//!
//! let mut spec = make_instance(BenchmarkId::F1, 30, 0).unwrap();
//! let params = SmsParams { generations: 50, ..SmsParams::default() };
//! let result = run_sms(&mut spec, &params, 7).unwrap();
//! assert_eq!(result.trace.len(), 50);
//! assert!(result.best.value <= result.trace[0]);
//! ```

pub mod baselines;
pub mod benchmarks;
pub mod error;
pub mod harness;
pub mod objective;
pub mod optimizer;
pub mod population;
pub mod rng;
pub mod sms;
pub mod space;
pub mod stats;

pub use error::{Error, Result};
pub use objective::{Objective, ObjectiveSpec};
pub use optimizer::{Optimizer, RunResult};
pub use population::{BestRecord, Molecule, Population};
pub use rng::{RandomStream, UniformSource};
pub use space::Bounds;

/// Library version string, echoed into experiment provenance.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
