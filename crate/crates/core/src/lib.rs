//! Exact-plus-numeric engine for an elliptic deformation of the A1 spherical
//! double affine Hecke algebra at level K=2.
//!
//! The crate is organized in layers:
//! - [`scalar`], [`laurent`], [`ratfunc`]: exact arithmetic over Gaussian
//!   rationals, Laurent polynomials in (Q, p, s) on a half-integer exponent
//!   lattice, and rational functions thereof.
//! - [`fraction`], [`ring`]: formal fractions over the localized module, the
//!   plethystic exponential with canonical forms, and the ring of
//!   pexp-expressions with SL(2,Z) parameter shifts and two-tier zero testing.
//! - [`numeric`]: arbitrary-precision evaluation of iterated q-Pochhammer
//!   symbols on the extended parameter range, and numeric certification of
//!   ring elements at sample points.
//! - [`freegroup`]: reduced words in the free group on two generators, the
//!   swap automorphism, and the homomorphism to SL(2,Z).
//! - [`operators`]: 3x3 matrices of ring elements, twisted difference
//!   operators, and the SL(2,Z) relation checks (braid relation, S-hat
//!   squared and fourth powers).
//! - [`freealgebra`]: the free algebra on countably many generators, the
//!   twelve relator families, the PSL(2,Z) automorphisms, and exact
//!   verification of ideal-membership certificates.
//! - [`representation`]: the recursive 3x3 matrix families, the homomorphism
//!   Psi, relator annihilation, shift and equivariance checks, and the
//!   undeformed quotient data Psi0.
//! - [`laumon`]: partition combinatorics, Nekrasov edge factors, the affine
//!   Laumon character as a truncated sum, and the closed-form eigenfunctions
//!   psi_ij with eigen-relation and specialization checks.
//! - [`report`]: suite/check record types shared with the command line tool.

pub mod scalar;
pub mod laurent;
pub mod ratfunc;
pub mod fraction;
pub mod ring;
pub mod numeric;
pub mod freegroup;
pub mod operators;
pub mod freealgebra;
pub mod representation;
pub mod laumon;
pub mod report;

pub use fraction::FormalFraction;
pub use freegroup::{FreeWord, Sl2zMatrix};
pub use laurent::{Exp3, LaurentPoly};
pub use numeric::{CFix, NumericPolicy, SamplePoint};
pub use ratfunc::RatFunc;
pub use ring::{PexpAtom, RingElement};
pub use scalar::GaussRat;
