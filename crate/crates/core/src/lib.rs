//! Two-dimensional finite-volume and discrete-velocity solvers for
//! isothermal gas flows.
//!
//! The crate provides four models on a shared structured grid:
//!
//! * isothermal Euler and Navier-Stokes,
//! * a hybrid continuum-kinetic model (Euler plus a kinetic stress closure),
//! * the BGK equation on a discrete velocity lattice,
//!
//! together with a linear stability analyzer for the hybrid model and the
//! benchmark setups used to compare them.
//!
//! ```
//! use hybridflow_core::{FluidModel, FluidSolver, Grid2D, FluidState, ModelParams};
//!
//! let grid = Grid2D::periodic(16, 16, (0.0, 1.0), (0.0, 1.0)).unwrap();
//! let solver = FluidSolver::new(grid.clone(), ModelParams::default(), FluidModel::Euler).unwrap();
//! let mut state = FluidState::uniform(&grid, 1.0, 0.5, 0.0);
//! solver.advance(&mut state, 10).unwrap();
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod boundary;
pub mod error;
pub mod exec;
pub mod experiment;
pub mod field;
pub mod fluid;
pub mod grid;
pub mod kinetic;
pub mod params;
pub mod reconstruct;
pub mod stability;

pub use boundary::{apply_boundary, Axis};
pub use error::{Error, Result};
pub use exec::{init_thread_pool, Execution};
pub use experiment::{build_initial, extract_slice, l2_distance, Experiment, RunDefaults, Slice};
pub use field::{primitive, total_mass, total_momentum, Field2D, FluidState, Primitives};
pub use fluid::{FluidModel, FluidSolver};
pub use grid::{AxisBoundary, BoundaryCondition, BoundaryKind, Grid2D, WallSpeed, GHOST};
pub use kinetic::{ImexTableau, KineticSolver, KineticState, VelocityGrid};
pub use params::{ModelParams, TimeStep};
pub use reconstruct::Reconstruction;
