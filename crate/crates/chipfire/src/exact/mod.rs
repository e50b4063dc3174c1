//! Exact integer and rational linear algebra.
//!
//! Everything in this crate runs on arbitrary-precision arithmetic; no
//! floating point appears anywhere. Matrices are dense and row-major, which
//! is plenty for the desk-scale dimensions this library targets.

mod matrix;
mod snf;

pub use matrix::{IntMatrix, RatMatrix};
pub use snf::{smith_normal_form, SmithDecomposition};

pub type Int = num_bigint::BigInt;
pub type Rational = num_rational::BigRational;

pub type IntVector = Vec<Int>;
pub type RatVector = Vec<Rational>;

use num_traits::{One, Zero};

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(Int::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(Int::from(p), Int::from(q))
}

pub fn int_vec(v: &[i64]) -> IntVector {
    v.iter().copied().map(Int::from).collect()
}

pub fn rat_vec(v: &[i64]) -> RatVector {
    v.iter().copied().map(rat).collect()
}

pub fn zero_int_vec(n: usize) -> IntVector {
    vec![Int::zero(); n]
}

pub fn ones_rat_vec(n: usize) -> RatVector {
    vec![Rational::one(); n]
}

pub fn is_zero_vec(v: &[Int]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn to_rational_vec(v: &[Int]) -> RatVector {
    v.iter()
        .map(|a| Rational::from_integer(a.clone()))
        .collect()
}

/// Exact floor of each coordinate.
pub fn floor_vec(v: &[Rational]) -> IntVector {
    v.iter().map(|a| a.floor().to_integer()).collect()
}

pub fn all_integer(v: &[Rational]) -> bool {
    v.iter().all(Rational::is_integer)
}

pub fn sub_vec(a: &[Int], b: &[Int]) -> IntVector {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add_vec(a: &[Int], b: &[Int]) -> IntVector {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_rat_vec(a: &[Rational], b: &[Rational]) -> RatVector {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Squared Euclidean norm, exact.
pub fn norm_sq(v: &[Rational]) -> Rational {
    v.iter().map(|a| a * a).sum()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
