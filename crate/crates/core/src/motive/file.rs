//! The motive file format.
//!
//! ```toml
//! [field]
//! p = 3            # characteristic
//! e = 2            # [F_q : F_p], default 1
//! modulus = "a^2 + 1"   # defining polynomial of F_q in the variable a
//!
//! [motive]
//! name = "example"
//! rank = 2
//! matrix = ["th + 1", "t*th + th", "t + 1", "t^2 + th"]   # row-major, or a list of rows
//! h = 0            # optional: the matrix is then (t-th)^h times the matrix of tau
//! ```
//!
//! Entries use the expression grammar of [`crate::ff::parse`]. When `e > 1` and no modulus is
//! given, the first monic irreducible polynomial of degree `e` in place order is used.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::ff::bivar::BivarPoly;
use crate::ff::factor::irreducibles_of_degree;
use crate::ff::field::{Field, GaloisField};
use crate::ff::parse::{eval_fraction, parse_base_modulus, parse_expr};
use crate::ff::ring::Matrix;
use crate::motive::Motive;

/// The `[field]` section.
#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub p: u32,
    #[serde(default = "one")]
    pub e: u32,
    pub modulus: Option<String>,
}

fn one() -> u32 {
    1
}

impl FieldSpec {
    /// Constructs `F_q`.
    pub fn build(&self) -> Result<Field> {
        if self.e == 0 {
            return Err(Error::InvalidField("e must be positive".into()));
        }
        let fp = GaloisField::prime(self.p)?;
        if self.e == 1 && self.modulus.is_none() {
            return Ok(fp);
        }
        let coeffs = match &self.modulus {
            Some(s) => parse_base_modulus(s, self.p)?,
            None => irreducibles_of_degree(&fp, self.e as usize).remove(0).into_coeffs(),
        };
        if coeffs.len() != self.e as usize + 1 {
            return Err(Error::InvalidField(format!("modulus must have degree e = {}", self.e)));
        }
        GaloisField::new(self.p, Some(&coeffs))
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum MatrixSpec {
    Flat(Vec<String>),
    Rows(Vec<Vec<String>>),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MotiveSection {
    rank: usize,
    matrix: MatrixSpec,
    h: Option<i64>,
    name: Option<String>,
}

/// A parsed motive file.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MotiveFile {
    pub field: FieldSpec,
    motive: MotiveSection,
}

impl MotiveFile {
    /// Builds the motive described by the file.
    pub fn build(&self) -> Result<Motive> {
        let field = self.field.build()?;
        let r = self.motive.rank;
        let flat: Vec<String> = match &self.motive.matrix {
            MatrixSpec::Flat(v) => v.clone(),
            MatrixSpec::Rows(rows) => {
                if rows.len() != r || rows.iter().any(|x| x.len() != r) {
                    return Err(Error::File(format!("matrix must be {r} x {r}")));
                }
                rows.iter().flatten().cloned().collect()
            }
        };
        if r == 0 || flat.len() != r * r {
            return Err(Error::File(format!("matrix needs rank^2 = {} entries, found {}", r * r, flat.len())));
        }
        let mut entries = Vec::with_capacity(flat.len());
        for s in &flat {
            entries.push(eval_fraction(&parse_expr(s)?, &field)?);
        }
        if let Some(h) = self.motive.h {
            // The file gives (t-th)^h times the matrix of tau.
            let tm = BivarPoly::t_minus_theta(&field);
            let p = tm.pow(h.unsigned_abs());
            for e in entries.iter_mut() {
                if h >= 0 {
                    e.den = e.den.mul(&p);
                } else {
                    e.num = e.num.mul(&p);
                }
            }
        }
        let m = Matrix::from_fn(r, r, |i, j| entries[i * r + j].clone());
        let motive = Motive::from_matrix(&field, &m)?;
        Ok(match &self.motive.name {
            Some(n) => motive.with_name(n.clone()),
            None => motive,
        })
    }
}

/// Parses the text of a motive file.
pub fn parse_motive_file(text: &str) -> Result<Motive> {
    let file: MotiveFile = toml::from_str(text).map_err(|e| Error::File(e.to_string()))?;
    file.build()
}

pub(super) fn render(m: &Motive) -> String {
    let f = m.field();
    let mut out = String::from("[field]\n");
    out += &format!("p = {}\n", f.characteristic());
    if f.base_degree() > 1 {
        out += &format!("e = {}\n", f.base_degree());
        let modulus = crate::ff::field::format_poly_terms(f.base_modulus(), "a", |c| c.to_string());
        out += &format!("modulus = \"{modulus}\"\n");
    }
    out += "\n[motive]\n";
    if let Some(n) = m.name() {
        out += &format!("name = \"{n}\"\n");
    }
    out += &format!("rank = {}\n", m.rank());
    let rows: Vec<String> = m
        .phi()
        .to_rows()
        .iter()
        .map(|row| {
            let cells: Vec<String> = row.iter().map(|e| format!("\"{}\"", e.to_expr())).collect();
            format!("  [{}]", cells.join(", "))
        })
        .collect();
    out += &format!("matrix = [\n{}\n]\n", rows.join(",\n"));
    out += &format!("h = {}\n", m.h());
    out
}
