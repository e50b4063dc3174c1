//! Pairings (L, M) and membership in the configuration sets they induce.
//!
//! L is any invertible integer matrix and M an M-matrix of the same size.
//! N = L * M^-1 carries module coordinates ("R-view") to chip coordinates
//! ("S-view"): the valid chip configurations are S+ = {N*x : x >= 0, N*x
//! integral} and the corresponding module states are R+ = {x : x >= 0, N*x
//! integral}. Both views describe the same dynamics and the translation
//! between them is exact.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exact::{
    all_integer, smith_normal_form, to_rational_vec, Int, IntMatrix, IntVector, RatMatrix,
    RatVector, Rational, SmithDecomposition,
};
use crate::mmatrix::{check_m_matrix, scale_witness, IntegerWitness};

/// Chip configuration: an integer vector read in the S-view.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConfigS(IntVector);

impl ConfigS {
    pub fn new(entries: IntVector) -> Self {
        ConfigS(entries)
    }

    pub fn from_i64s(entries: &[i64]) -> Self {
        ConfigS(entries.iter().copied().map(Int::from).collect())
    }

    pub fn entries(&self) -> &[Int] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> IntVector {
        self.0
    }
}

impl std::fmt::Display for ConfigS {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Module state: a rational vector read in the R-view.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConfigR(RatVector);

impl ConfigR {
    pub fn new(entries: RatVector) -> Self {
        ConfigR(entries)
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> RatVector {
        self.0
    }
}

impl std::fmt::Display for ConfigR {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// An invertible integer matrix paired with an M-matrix, plus every exact
/// inverse and decomposition the rest of the crate leans on.
#[derive(Debug, Clone)]
pub struct Pairing {
    l: IntMatrix,
    m: RatMatrix,
    m_inv: RatMatrix,
    l_inv: RatMatrix,
    n_mat: RatMatrix,
    n_inv: RatMatrix,
    dim: usize,
    det_l_abs: Int,
    snf: SmithDecomposition,
    u_inv: IntMatrix,
    witness: IntegerWitness,
}

impl Pairing {
    /// Validate (L, M) and precompute the caches.
    pub fn new(l: IntMatrix, m: RatMatrix) -> Result<Self> {
        if !l.is_square() {
            return Err(Error::NonSquare {
                rows: l.rows(),
                cols: l.cols(),
            });
        }
        if m.rows() != l.rows() || m.cols() != l.cols() {
            return Err(Error::DimensionMismatch {
                expected: l.rows(),
                got: m.rows(),
            });
        }
        let det = l.det()?;
        if det == Int::from(0) {
            return Err(Error::SingularL);
        }
        let verdict = check_m_matrix(&m)?;
        if !verdict.is_m_matrix {
            return Err(Error::NotAnMMatrix {
                reason: verdict.failure_reason.expect("failure carries a reason"),
            });
        }
        let m_inv = verdict.inverse.expect("verdict carries the inverse");
        let witness = scale_witness(&verdict.positive_witness.expect("witness present"));
        let l_rat = l.to_rational();
        let l_inv = l_rat.inverse().map_err(|e| match e {
            Error::SingularMatrix => Error::SingularL,
            other => other,
        })?;
        let n_mat = l_rat.mul(&m_inv)?;
        let n_inv = m.mul(&l_inv)?;
        debug_assert_eq!(
            n_mat.mul(&n_inv).unwrap(),
            RatMatrix::identity(l.rows()),
            "N and N^-1 must be mutually inverse"
        );
        let snf = smith_normal_form(&l)?;
        let u_inv = snf
            .u
            .to_rational()
            .inverse()?
            .to_integer()
            .expect("U is unimodular, so its inverse is integral");
        let dim = l.rows();
        Ok(Pairing {
            l,
            m,
            m_inv,
            l_inv,
            n_mat,
            n_inv,
            dim,
            det_l_abs: det.abs(),
            snf,
            u_inv,
            witness,
        })
    }

    pub fn l(&self) -> &IntMatrix {
        &self.l
    }

    pub fn m(&self) -> &RatMatrix {
        &self.m
    }

    pub fn m_inv(&self) -> &RatMatrix {
        &self.m_inv
    }

    pub fn l_inv(&self) -> &RatMatrix {
        &self.l_inv
    }

    /// N = L * M^-1.
    pub fn n(&self) -> &RatMatrix {
        &self.n_mat
    }

    /// N^-1 = M * L^-1.
    pub fn n_inv(&self) -> &RatMatrix {
        &self.n_inv
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn det_l_abs(&self) -> &Int {
        &self.det_l_abs
    }

    pub fn smith(&self) -> &SmithDecomposition {
        &self.snf
    }

    pub(crate) fn u_inv(&self) -> &IntMatrix {
        &self.u_inv
    }

    /// Integer u > 0 with M*u = kappa * 1.
    pub fn witness(&self) -> &IntegerWitness {
        &self.witness
    }

    fn check_dim(&self, len: usize) -> Result<()> {
        if len != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: len,
            });
        }
        Ok(())
    }

    /// x = N^-1 * f, the module state under a chip configuration.
    pub fn to_r_coords(&self, f: &ConfigS) -> Result<ConfigR> {
        self.check_dim(f.len())?;
        let x = self.n_inv.mul_vec(&to_rational_vec(f.entries()))?;
        Ok(ConfigR::new(x))
    }

    /// f = N * x, defined when the product is integral.
    pub fn to_s_coords(&self, x: &ConfigR) -> Result<ConfigS> {
        self.check_dim(x.len())?;
        let f = self.n_mat.mul_vec(x.entries())?;
        if !all_integer(&f) {
            return Err(Error::InvalidConfiguration);
        }
        Ok(ConfigS::new(f.iter().map(Rational::to_integer).collect()))
    }

    /// Membership in S+: the module state exists and is nonnegative.
    pub fn in_s_plus(&self, f: &ConfigS) -> Result<bool> {
        let x = self.to_r_coords(f)?;
        Ok(x.entries().iter().all(|e| !e.is_negative()))
    }

    /// Membership in R+: nonnegative with integral image under N.
    pub fn in_r_plus(&self, x: &ConfigR) -> Result<bool> {
        self.check_dim(x.len())?;
        if x.entries().iter().any(Rational::is_negative) {
            return Ok(false);
        }
        let f = self.n_mat.mul_vec(x.entries())?;
        Ok(all_integer(&f))
    }

    /// Whether f - g lies in the image of L, i.e. the two configurations
    /// belong to the same firing equivalence class.
    pub fn same_class(&self, f: &ConfigS, g: &ConfigS) -> Result<bool> {
        self.check_dim(f.len())?;
        self.check_dim(g.len())?;
        let diff: RatVector = f
            .entries()
            .iter()
            .zip(g.entries())
            .map(|(a, b)| Rational::from_integer(a - b))
            .collect();
        let z = self.l_inv.mul_vec(&diff)?;
        Ok(all_integer(&z))
    }
}
