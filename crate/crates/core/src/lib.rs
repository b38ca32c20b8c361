//! Askey-Wilson and big/little q-Jacobi polynomials as zonal spherical
//! functions on quantum projective spaces.
//!
//! The crate has two halves that check each other:
//!
//! * the special-function side ([`qseries`], [`polyring`], [`qclassical`],
//!   [`qdiffop`], [`orthmeasure`]) builds the polynomials, their q-difference
//!   operator and their orthogonality measure;
//! * the representation side ([`uqrep`]) builds finite-dimensional
//!   `U_q(gl(n))` modules from L-operator matrices and re-derives the
//!   spherical functions as torus restrictions of bi-invariant matrix
//!   coefficients.
//!
//! All theorem checks run in exact rational arithmetic; measures and limit
//! transitions run in `f64`. Data-parallel loops go through [`parallel`],
//! which uses rayon when the `parallel` feature is enabled (the default).

pub mod error;
pub mod linalg;
pub mod numfield;
pub mod orthmeasure;
pub mod parallel;
pub mod polyring;
pub mod qclassical;
pub mod qdiffop;
pub mod qseries;
pub mod uqrep;

pub use error::{Error, Result};
pub use numfield::{Field, QContext, Rational, Scalar};
pub use polyring::{LaurentPoly, MultiLaurent, XPoly};
