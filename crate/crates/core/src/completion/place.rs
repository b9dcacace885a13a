//! Places of `F_q(t)`: monic irreducible polynomials and the infinite place.

use std::fmt;

use crate::error::{Error, Result};
use crate::ff::factor::is_irreducible;
use crate::ff::field::Field;
use crate::ff::parse::parse_t_poly;
use crate::ff::poly::Poly;

/// A place of `F_q(t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Place {
    /// The place `1/t`.
    Infinite,
    /// The place of a monic irreducible polynomial in `t`.
    Finite(Poly),
}

impl Place {
    /// Validates and wraps a polynomial; it is made monic first.
    pub fn finite(v: &Poly) -> Result<Self> {
        if v.degree().unwrap_or(0) == 0 {
            return Err(Error::InvalidPlace(format!("{v} is constant")));
        }
        let v = v.monic();
        if !is_irreducible(&v) {
            return Err(Error::InvalidPlace(format!("{v} is not irreducible")));
        }
        Ok(Place::Finite(v))
    }

    /// Parses `inf` or a polynomial in `t`.
    pub fn parse(s: &str, field: &Field) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "oo" | "∞" => Ok(Place::Infinite),
            other => Self::finite(&parse_t_poly(other, field).map_err(|e| Error::InvalidPlace(e.to_string()))?),
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Place::Infinite => 1,
            Place::Finite(v) => v.degree().unwrap_or(0),
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Place::Infinite)
    }

    pub fn poly(&self) -> Option<&Poly> {
        match self {
            Place::Infinite => None,
            Place::Finite(v) => Some(v),
        }
    }

    /// Absolute norm `q^deg`.
    pub fn norm(&self, q: u64) -> u64 {
        q.pow(self.degree() as u32)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinite => write!(f, "inf"),
            Place::Finite(v) => write!(f, "{}", v.to_string_var("t")),
        }
    }
}
