//! Finite-volume solvers for the isothermal Euler, Navier-Stokes and hybrid
//! continuum-kinetic (HMM) systems.
//!
//! All three share the hyperbolic part: WENO3 interface states fed to a
//! Rusanov flux, first-order explicit Euler in time. The viscous models add
//! a stress tensor evaluated on cell faces and applied in flux-difference
//! form, so mass and momentum telescope on periodic domains.

mod flux;
mod solver;
mod stress;

pub use flux::{max_wavespeed, physical_flux, rusanov_flux, Conserved};
pub use solver::{FluidModel, FluidSolver};
pub use stress::{hmm_stress, ns_stress, FaceStress, StressFields, StressModel};
