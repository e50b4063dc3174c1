//! Chip-firing for pairings of an invertible integer matrix L with an
//! M-matrix M.
//!
//! The classical abelian sandpile arises as the pairing (L, L) of a reduced
//! graph Laplacian with itself; decoupling the two matrices keeps the whole
//! theory intact while admitting far more general firing rules. This crate
//! provides:
//!
//! * exact integer and rational linear algebra, including Smith normal form
//!   ([`exact`]);
//! * the M-matrix decision procedure and its positive witnesses
//!   ([`mmatrix`]);
//! * pairings, the two coordinate views they induce, and membership tests
//!   ([`pairing`]);
//! * firing dynamics, stabilization under pluggable policies, and the
//!   superstability test ([`dynamics`]);
//! * per-coset critical and superstable configurations, energies, and the
//!   duality experiment ([`classify`]);
//! * pairings sourced from graphs and 2-dimensional simplicial complexes,
//!   plus fundamental parallelepiped enumeration ([`constructors`]).
//!
//! ```
//! use chipfire::{ConfigS, IntMatrix, Pairing, Policy, RatMatrix};
//!
//! let l = IntMatrix::from_i64s(&[&[2, -1, 1], &[-1, 2, -1], &[1, -1, 2]]);
//! let m = RatMatrix::from_i64s(&[&[3, -1, -1], &[-1, 3, -1], &[-1, -1, 3]]);
//! let p = Pairing::new(l, m).unwrap();
//! let r = p
//!     .stabilize(&ConfigS::from_i64s(&[6, -1, 5]), Policy::LowestIndex)
//!     .unwrap();
//! assert_eq!(r.stable_config, ConfigS::from_i64s(&[4, 0, 4]));
//! ```

pub mod classify;
pub mod constructors;
pub mod dynamics;
pub mod error;
pub mod exact;
pub mod mmatrix;
pub mod pairing;
pub mod sampling;

pub use classify::{ClassReport, CosetLabel, DualityReport, DEFAULT_BALL_CAP};
pub use constructors::{
    classical_pairing, fundamental_parallelepiped_points, identity_pairing,
    reduced_combinatorial_laplacian, reduced_graph_laplacian, Digraph, SimplicialComplex2D,
};
pub use dynamics::{
    FiringScript, Policy, StabilizationResult, SuperstableCheck, DEFAULT_BOX_CAP,
    DEFAULT_FIRING_CAP,
};
pub use error::{Error, Result};
pub use exact::{smith_normal_form, Int, IntMatrix, RatMatrix, Rational, SmithDecomposition};
pub use mmatrix::{
    check_m_matrix, integer_positive_witness, positive_vector_witness, IntegerWitness,
    MMatrixFailure, MMatrixVerdict,
};
pub use pairing::{ConfigR, ConfigS, Pairing};
