//! Exact-arithmetic toolkit for quantum solvable algebras specialized at
//! roots of unity.
//!
//! The crate is organized in layers:
//!
//! - [`scalar`]: the coefficient tower: rationals, the cyclotomic field
//!   `Q(ε)`, Laurent polynomials in `q` over `Q(ε)`, and q-combinatorics.
//! - [`intlat`]: integer matrix and lattice algorithms (Smith normal form,
//!   alternating normal form, kernels, congruence lifting, minor gcds).
//! - [`linalg`]: dense exact linear algebra over `Q(ε)`.
//! - [`qtorus`]: twisted Laurent polynomial algebras (quantum tori), their
//!   centers at generic `q` and at `q = ε`.
//! - [`orealg`]: iterated q-skew Ore extensions with PBW normal forms, the
//!   `τ`/`δ` calculus, and an executable identity suite.
//! - [`qadjoint`]: specialization at `ε`, the quantum adjoint action, the
//!   derivations `θ` and `Δ`, Poisson brackets and rank computations.
//! - [`qrep`]: construction and verification of irreducible representations
//!   via clock/shift matrices.
//! - [`strat`]: stratification data, admissibility, and report generation.
//! - [`mod@file`]: the algebra-definition text format and character files.

// Index loops over dense matrices and exponent vectors are the house style
// in the numeric kernels; iterator rewrites obscure the paired row/column
// updates.
#![allow(clippy::needless_range_loop)]

pub mod file;
pub mod intlat;
pub mod linalg;
pub mod orealg;
pub mod qadjoint;
pub mod qrep;
pub mod qtorus;
pub mod scalar;
pub mod strat;

pub use intlat::{AlternatingForm, IntMat};
pub use orealg::{OreAlgebra, OreElement};
pub use qadjoint::{CentralWitness, SpecElement};
pub use qrep::{CentralCharacter, Rep};
pub use qtorus::{CenterLattice, TorusAlgebra, TorusElement};
pub use scalar::{CycScalar, QLaurent};
pub use strat::{Report, Stratum};
