//! s-ordered Stratonovich-Weyl kernels for the symmetric irreps
//! `(λ,0,…,0)` of SU(n).
//!
//! The crate is organised bottom-up:
//!
//! * [`repr`] builds the irrep in an occupation-number basis, the coset
//!   representatives `Λ(Ω)` and quadrature grids on `SU(n)/U(n-1)`.
//! * [`tensor`] decomposes the operator space into trace-orthonormal
//!   irreducible tensor operators; [`cg`] is an independent SU(2)
//!   Clebsch-Gordan route used as an oracle.
//! * [`kernel`] computes generalized characters, the overlap matrix and
//!   the `F`, `c`, `G` coefficient families together with `P̂^(s)`.
//! * [`phase_space`] maps operators to symbols and back and checks the
//!   Stratonovich-Weyl axioms.
//! * [`io`] and [`cli`] hold the file formats and the command line.

pub mod cg;
pub mod cli;
pub mod error;
pub mod golden;
pub mod io;
pub mod kernel;
pub mod linalg;
pub mod phase_space;
pub mod quadrature;
pub mod repr;
pub mod tensor;

pub use error::{Error, Result};

/// Complex dense matrix used for every operator in the crate.
pub type CMatrix = nalgebra::DMatrix<num_complex::Complex64>;
pub use num_complex::Complex64;
