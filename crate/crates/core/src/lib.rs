//! Exact-rational verification of Kochen-Specker contextuality.
//!
//! * [`exactlin`]: rational scalars, vectors, matrices, row reduction.
//! * [`qlogic`]: rays, projectors, the subspace lattice, contexts.
//! * [`ksengine`]: scenarios, valuation search, parity certificates,
//!   noncontextual-model feasibility.
//! * [`probability`]: finite probability spaces, density operators, the
//!   Born rule.
//! * [`symmetry`]: two-particle (anti)symmetrization.
//! * [`cli`]: scenario and state file formats, command dispatch.

pub mod cli;
pub mod exactlin;
pub mod ksengine;
pub mod probability;
pub mod qlogic;
pub mod symmetry;
