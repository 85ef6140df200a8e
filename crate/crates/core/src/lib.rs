//! Exact-arithmetic toolkit for the higher-order q-Dolan-Grady relations
//! of the q-Onsager algebra and its simply-laced generalizations, with
//! matrix realizations on the open XXZ spin chain, divided polynomials at
//! roots of unity, and the associated symmetry checks.
//!
//! Layout:
//! - [`qring`]: Laurent polynomials in q over exact rationals, q-brackets,
//!   q-factorials, Gaussian binomials.
//! - [`rho`]: the commuting deformation parameter adjoined to the scalars.
//! - [`freealg`]: the two-letter free algebra and the normal-ordering
//!   reductions.
//! - [`coeff`]: the c^[r,p]_j tables by three independent routes.
//! - [`reps`]: symbolic and numeric matrix backends on the spin chain.
//! - [`hierarchy`]: descendants and the commuting charges I_1, I_3.
//! - [`report`]: JSON verification records.

pub mod coeff;
pub mod freealg;
pub mod hierarchy;
pub mod qring;
pub mod report;
pub mod reps;
pub mod rho;

pub use coeff::{CoeffTable, Flavor, Provenance};
pub use freealg::{NcPoly, Word};
pub use qring::{qbinom, qfact, qnum, qnum_base, LaurentQ};
pub use reps::{ChainParams, QMode};
pub use rho::RhoPoly;
