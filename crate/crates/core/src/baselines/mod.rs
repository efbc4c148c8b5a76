//! Reference optimizers used for comparison: global-best PSO with linearly
//! decreasing inertia and DE/rand/1/bin.
//!
//! Both follow the same contract as the SMS driver: one seeded stream per
//! run, positions clamped to the box, `Np * (gen + 1)` evaluations and a
//! best-so-far trace of length `gen`.

mod de;
mod pso;

pub use de::{run_de, De, DeParams, DeScheme};
pub use pso::{run_pso, Pso, PsoParams};
