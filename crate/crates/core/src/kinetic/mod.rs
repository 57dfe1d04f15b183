//! Discrete-velocity BGK model.
//!
//! The distribution lives on a spatial grid times a Cartesian velocity
//! lattice. Transport is explicit (WENO3 upwinded by the sign of each
//! velocity component) and relaxation towards the local Maxwellian is
//! implicit, integrated with an IMEX Runge-Kutta scheme whose implicit
//! stages have closed-form solutions. The default scheme is ARS(2,2,2),
//! which stays stable and consistent with the Euler limit as `tau -> 0`.

mod imex;
mod solver;
mod velocity;

pub use imex::ImexTableau;
pub use solver::{kinetic_apply_boundary, KineticSolver, KineticState, NEGATIVITY_TOLERANCE};
pub use velocity::{cell_moments, ik_stress, maxwellian, maxwellian_at, maxwellian_into, Moments, VelocityGrid};
