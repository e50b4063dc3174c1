//! Recognition of M-matrices and the positive witnesses they admit.
//!
//! A square rational matrix qualifies when its off-diagonal entries are
//! nonpositive, its diagonal is positive, and its inverse exists and is
//! entrywise nonnegative. The inverse test is the decision procedure; the
//! equivalent characterizations (a positive vector mapped to a positive
//! vector, termination of firing dynamics) are exercised by the test suite
//! rather than checked here.

use num_integer::Integer;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exact::{Int, IntVector, RatMatrix, RatVector, Rational};

/// Why a candidate failed `check_m_matrix`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MMatrixFailure {
    /// An off-diagonal entry is positive or a diagonal entry is nonpositive.
    BadSignPattern,
    Singular,
    NegativeInverseEntry,
}

impl std::fmt::Display for MMatrixFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            MMatrixFailure::BadSignPattern => "bad sign pattern",
            MMatrixFailure::Singular => "singular",
            MMatrixFailure::NegativeInverseEntry => "inverse has a negative entry",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MMatrixVerdict {
    pub is_m_matrix: bool,
    pub failure_reason: Option<MMatrixFailure>,
    /// Present whenever the matrix is invertible, even on failure.
    pub inverse: Option<RatMatrix>,
    /// w = M^-1 * 1, strictly positive with M*w = 1; present on success.
    pub positive_witness: Option<RatVector>,
}

impl MMatrixVerdict {
    fn failure(reason: MMatrixFailure, inverse: Option<RatMatrix>) -> Self {
        MMatrixVerdict {
            is_m_matrix: false,
            failure_reason: Some(reason),
            inverse,
            positive_witness: None,
        }
    }
}

/// Decide whether `m` is an M-matrix.
pub fn check_m_matrix(m: &RatMatrix) -> Result<MMatrixVerdict> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    for i in 0..n {
        for j in 0..n {
            let e = m.get(i, j);
            let ok = if i == j {
                e.is_positive()
            } else {
                !e.is_positive()
            };
            if !ok {
                return Ok(MMatrixVerdict::failure(
                    MMatrixFailure::BadSignPattern,
                    None,
                ));
            }
        }
    }
    let inverse = match m.inverse() {
        Ok(inv) => inv,
        Err(Error::SingularMatrix) => {
            return Ok(MMatrixVerdict::failure(MMatrixFailure::Singular, None));
        }
        Err(e) => return Err(e),
    };
    if !inverse.is_nonnegative() {
        return Ok(MMatrixVerdict::failure(
            MMatrixFailure::NegativeInverseEntry,
            Some(inverse),
        ));
    }
    let ones = vec![Rational::one(); n];
    let witness = inverse.mul_vec(&ones)?;
    debug_assert!(witness.iter().all(Rational::is_positive));
    Ok(MMatrixVerdict {
        is_m_matrix: true,
        failure_reason: None,
        inverse: Some(inverse),
        positive_witness: Some(witness),
    })
}

/// Strictly positive rational w with M*w = 1 (the all-ones vector).
pub fn positive_vector_witness(m: &RatMatrix) -> Result<RatVector> {
    let verdict = check_m_matrix(m)?;
    match verdict.positive_witness {
        Some(w) => Ok(w),
        None => Err(Error::NotAnMMatrix {
            reason: verdict.failure_reason.expect("failure carries a reason"),
        }),
    }
}

/// Integer witness u > 0 with M*u = kappa * 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerWitness {
    pub u: IntVector,
    pub kappa: Int,
}

/// Scale the rational witness by the lcm of its denominators.
pub fn integer_positive_witness(m: &RatMatrix) -> Result<IntegerWitness> {
    let w = positive_vector_witness(m)?;
    Ok(scale_witness(&w))
}

pub(crate) fn scale_witness(w: &[Rational]) -> IntegerWitness {
    let kappa = w.iter().fold(Int::one(), |acc, e| acc.lcm(e.denom()));
    let u = w
        .iter()
        .map(|e| (e * Rational::from_integer(kappa.clone())).to_integer())
        .collect();
    IntegerWitness { u, kappa }
}
