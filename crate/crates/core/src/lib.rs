//! Exact classification of linear and affine maps over Q, finite fields and
//! `F_p(t)`: primary decomposition, refined centralizer-invariant flags,
//! semisimple plus nilpotent splitting, conjugacy and z-equivalence, affine
//! translation indices, and brute-force certification over tiny fields.

pub mod affine;
pub mod canonical;
pub mod error;
pub mod fields;
pub mod linalg;
pub mod operator;
pub mod oracle;
pub mod poly;
pub mod sn;
pub mod zclass;

pub use error::{Error, Result};
pub use fields::{Elem, Field, FieldElement, FieldSpec, FpPoly, Ternary};
pub use poly::Polynomial;
pub use linalg::{Matrix, Subspace, Vector};
