//! Random instance generation, used by the test suites and handy for
//! experimenting with pairings beyond the worked examples.

use num_traits::{Signed, Zero};
use rand::Rng;

use crate::constructors::Digraph;
use crate::exact::{to_rational_vec, Int, IntMatrix, IntVector, RatMatrix, Rational};
use crate::pairing::{ConfigS, Pairing};

/// Entries uniform in [-bound, bound].
pub fn int_matrix<R: Rng>(rng: &mut R, n: usize, bound: i64) -> IntMatrix {
    let data = (0..n * n)
        .map(|_| Int::from(rng.gen_range(-bound..=bound)))
        .collect();
    IntMatrix::new(n, n, data).expect("sized correctly")
}

/// Rejection-sample until |det| lands in [det_min, det_max].
pub fn invertible_int_matrix<R: Rng>(
    rng: &mut R,
    n: usize,
    bound: i64,
    det_min: u64,
    det_max: u64,
) -> IntMatrix {
    loop {
        let l = int_matrix(rng, n, bound);
        let det = l.det().expect("square").abs();
        if det >= Int::from(det_min) && det <= Int::from(det_max) {
            return l;
        }
    }
}

/// Strictly diagonally dominant with nonpositive off-diagonal entries, so
/// always an M-matrix. A random row is sometimes rescaled by 1/2 to keep
/// rational entries in play.
pub fn diagonally_dominant_m_matrix<R: Rng>(rng: &mut R, n: usize, bound: i64) -> RatMatrix {
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut row: Vec<Rational> = (0..n)
            .map(|_| Rational::from_integer(Int::from(rng.gen_range(-bound..=0))))
            .collect();
        let dominance: Rational = row.iter().map(|e| -e).sum();
        row[i] = dominance + Rational::from_integer(Int::from(rng.gen_range(1..=3)));
        rows.push(row);
    }
    if rng.gen_bool(0.3) {
        let i = rng.gen_range(0..n);
        let half = Rational::new(Int::from(1), Int::from(2));
        for e in &mut rows[i] {
            *e *= &half;
        }
    }
    let m = RatMatrix::from_rows(rows).expect("sized correctly");
    debug_assert!(crate::mmatrix::check_m_matrix(&m).unwrap().is_m_matrix);
    m
}

/// Positive integer diagonal matrix with entries in [1, bound].
pub fn positive_diagonal<R: Rng>(rng: &mut R, n: usize, bound: i64) -> RatMatrix {
    let mut d = RatMatrix::identity(n);
    for i in 0..n {
        d.set(
            i,
            i,
            Rational::from_integer(Int::from(rng.gen_range(1..=bound))),
        );
    }
    d
}

pub fn random_pairing<R: Rng>(
    rng: &mut R,
    n: usize,
    bound: i64,
    det_min: u64,
    det_max: u64,
) -> Pairing {
    let l = invertible_int_matrix(rng, n, bound, det_min, det_max);
    let m = diagonally_dominant_m_matrix(rng, n, bound.abs().max(1));
    Pairing::new(l, m).expect("valid by construction")
}

/// A member of S+ with headroom extra witness translations above the least
/// nonnegative one, so callers can land near or far from the thresholds.
pub fn s_plus_member<R: Rng>(rng: &mut R, p: &Pairing, bound: i64, headroom: u64) -> ConfigS {
    let r: IntVector = (0..p.dim())
        .map(|_| Int::from(rng.gen_range(-bound..=bound)))
        .collect();
    let x0 = p
        .n_inv()
        .mul_vec(&to_rational_vec(&r))
        .expect("dimension fixed");
    let kappa = Rational::from_integer(p.witness().kappa.clone());
    let mut need = Int::zero();
    for xi in &x0 {
        if xi.is_negative() {
            let steps = (-xi / &kappa).ceil().to_integer();
            if steps > need {
                need = steps;
            }
        }
    }
    need += Int::from(rng.gen_range(0..=headroom));
    let lu = p.l().mul_vec(&p.witness().u).expect("dimension fixed");
    let f = ConfigS::new(r.iter().zip(&lu).map(|(a, b)| a + b * &need).collect());
    debug_assert!(p.in_s_plus(&f).unwrap());
    f
}

/// Connected undirected multigraph: a random spanning tree plus extra
/// random edges. The sink is the last vertex.
pub fn connected_graph<R: Rng>(rng: &mut R, vertices: usize, extra_edges: usize) -> Digraph {
    assert!(vertices >= 2);
    let mut edges: Vec<(usize, usize, u64)> = Vec::new();
    for v in 1..vertices {
        let u = rng.gen_range(0..v);
        edges.push((u, v, rng.gen_range(1..=2)));
    }
    for _ in 0..extra_edges {
        let a = rng.gen_range(0..vertices);
        let b = rng.gen_range(0..vertices);
        if a != b {
            edges.push((a.min(b), a.max(b), 1));
        }
    }
    Digraph::undirected(vertices, &edges, vertices - 1).expect("valid by construction")
}
