//! JSON input documents. Matrices are arrays of rows, vectors are flat
//! arrays, and every scalar is either a JSON integer or a decimal string
//! for values outside the i64 range. Vertex and site numbers are 1-based
//! in documents; the library is 0-based.

use std::fs;
use std::io::Read;
use std::path::PathBuf;

use chipfire::exact::{Int, IntVector, Rational};
use chipfire::{IntMatrix, RatMatrix};
use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::CliError;

/// An integer scalar: a JSON number, or a decimal string when it does not
/// fit in i64. Floats are rejected at the serde layer.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum IntScalar {
    Small(i64),
    Big(String),
}

impl IntScalar {
    fn to_int(&self) -> Result<Int, CliError> {
        match self {
            IntScalar::Small(v) => Ok(Int::from(*v)),
            IntScalar::Big(s) => s
                .trim()
                .parse::<Int>()
                .map_err(|_| CliError::Parse(format!("not an integer: {s:?}"))),
        }
    }
}

/// A rational scalar: a JSON integer or a string "p/q" or "p".
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum RatScalar {
    Small(i64),
    Written(String),
}

impl RatScalar {
    fn to_rational(&self) -> Result<Rational, CliError> {
        match self {
            RatScalar::Small(v) => Ok(Rational::from_integer(Int::from(*v))),
            RatScalar::Written(s) => s
                .trim()
                .parse::<Rational>()
                .map_err(|_| CliError::Parse(format!("not a rational: {s:?}"))),
        }
    }
}

pub fn to_int_vec(scalars: &[IntScalar]) -> Result<IntVector, CliError> {
    scalars.iter().map(IntScalar::to_int).collect()
}

pub fn to_int_matrix(rows: &[Vec<IntScalar>]) -> Result<IntMatrix, CliError> {
    let rows = rows
        .iter()
        .map(|r| to_int_vec(r))
        .collect::<Result<Vec<_>, _>>()?;
    IntMatrix::from_rows(rows).map_err(CliError::Lib)
}

pub fn to_rat_matrix(rows: &[Vec<RatScalar>]) -> Result<RatMatrix, CliError> {
    let rows = rows
        .iter()
        .map(|r| r.iter().map(RatScalar::to_rational).collect())
        .collect::<Result<Vec<_>, _>>()?;
    RatMatrix::from_rows(rows).map_err(CliError::Lib)
}

/// check-mmatrix: `{"m": [[..], ..]}`.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    pub m: Vec<Vec<RatScalar>>,
}

/// coker, parallelepiped: `{"l": [[..], ..]}`.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeDoc {
    pub l: Vec<Vec<IntScalar>>,
}

/// classify, superstables, criticals, check-duality.
/// `m` defaults to `l` (the classical pairing).
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDoc {
    pub l: Vec<Vec<IntScalar>>,
    pub m: Option<Vec<Vec<RatScalar>>>,
}

/// membership, stabilize, energy.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDoc {
    pub l: Vec<Vec<IntScalar>>,
    pub m: Option<Vec<Vec<RatScalar>>>,
    pub config: Vec<IntScalar>,
}

/// fire: `site` is 1-based.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FireDoc {
    pub l: Vec<Vec<IntScalar>>,
    pub m: Option<Vec<Vec<RatScalar>>>,
    pub config: Vec<IntScalar>,
    pub site: usize,
}

/// from-graph: `{"vertices": n, "edges": [[u, v, mult], ..], "sink": s}`
/// with 1-based vertex numbers. Edges are read as undirected unless
/// `"directed": true`.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub vertices: usize,
    pub edges: Vec<(usize, usize, u64)>,
    pub sink: usize,
    #[serde(default)]
    pub directed: bool,
}

/// from-complex: `{"facets": [[i, j, k], ..], "tree": [[i, j], ..]}` with
/// 1-based vertex labels.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    pub facets: Vec<[usize; 3]>,
    pub tree: Vec<[usize; 2]>,
}

pub fn read_document(path: &Option<PathBuf>) -> Result<String, CliError> {
    match path {
        Some(p) => fs::read_to_string(p)
            .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", p.display()))),
        None => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| CliError::Parse(format!("cannot read stdin: {e}")))?;
            Ok(text)
        }
    }
}

pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse(format!("invalid document: {e}")))
}

/// 1-based document index to a 0-based library index.
pub fn to_zero_based(label: &str, value: usize) -> Result<usize, CliError> {
    value
        .checked_sub(1)
        .ok_or_else(|| CliError::Parse(format!("{label} numbers are 1-based, got 0")))
}
