//! Numerical verification of explicit formulas.
//!
//! For an elliptic curve `E_0/F_q` the crate evaluates both sides of the
//! function-field explicit formula, its closed-orbit form and the
//! holomorphic (Dolbeault) index identity, each by several independent
//! routes; for the Riemann zeta function it evaluates both sides of the
//! classical explicit formula from an ingested table of zeros.

pub mod curve;
pub mod field;
pub mod formula;
pub mod quadrature;
pub mod report;
pub mod riemann;
pub mod spectral;
pub mod test_function;
