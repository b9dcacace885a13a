//! Finite fields, polynomials over them and the linear algebra built on top.

pub mod bivar;
pub mod factor;
pub mod field;
pub mod parse;
pub mod poly;
pub mod ring;

pub use bivar::BivarPoly;
pub use field::{Field, GaloisField};
pub use poly::Poly;
pub use ring::{BivarRing, CommRing, FieldRing, Matrix, PolyRing};
