//! Sources of pairings: reduced Laplacians of graphs and of 2-dimensional
//! complexes, plus the classical and identity pairings any invertible L
//! admits, and the lattice-point fundamental domain of L.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{Int, IntMatrix, IntVector, RatMatrix, Rational};
use crate::pairing::Pairing;

/// Directed multigraph with a distinguished sink. Vertices are 0..n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    vertex_count: usize,
    edges: Vec<(usize, usize, u64)>,
    sink: usize,
}

impl Digraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize, u64)>, sink: usize) -> Result<Self> {
        if sink >= vertex_count {
            return Err(Error::InvalidGraph(format!(
                "sink {sink} out of range for {vertex_count} vertices"
            )));
        }
        for &(a, b, mult) in &edges {
            if a >= vertex_count || b >= vertex_count {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a}, {b}) out of range for {vertex_count} vertices"
                )));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {a}")));
            }
            if mult == 0 {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a}, {b}) has multiplicity zero"
                )));
            }
        }
        Ok(Digraph {
            vertex_count,
            edges,
            sink,
        })
    }

    /// Both directions of every listed edge.
    pub fn undirected(
        vertex_count: usize,
        edges: &[(usize, usize, u64)],
        sink: usize,
    ) -> Result<Self> {
        let mut directed = Vec::with_capacity(edges.len() * 2);
        for &(a, b, mult) in edges {
            directed.push((a, b, mult));
            directed.push((b, a, mult));
        }
        Digraph::new(vertex_count, directed, sink)
    }

    /// Complete graph on n vertices with the last one as sink.
    pub fn complete(n: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                edges.push((a, b, 1));
            }
        }
        Digraph::undirected(n, &edges, n - 1)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn sink(&self) -> usize {
        self.sink
    }
}

/// Laplacian of the graph with the sink row and column deleted, transposed
/// so that firing non-sink vertex i subtracts the matrix's i-th column
/// (vertex i keeps out-degree many chips fewer, each out-neighbour gains
/// the edge multiplicity). Vertices keep their order with the sink skipped.
///
/// The result passes `check_m_matrix` exactly when every non-sink vertex
/// has a directed path to the sink; otherwise this reports
/// `DisconnectedFromSink`.
pub fn reduced_graph_laplacian(g: &Digraph) -> Result<IntMatrix> {
    let n = g.vertex_count;
    // position of each non-sink vertex among the rows
    let index: Vec<Option<usize>> = (0..n)
        .map(|v| {
            if v == g.sink {
                None
            } else {
                Some(if v < g.sink { v } else { v - 1 })
            }
        })
        .collect();
    let mut l = IntMatrix::zero(n - 1, n - 1);
    for &(from, to, mult) in &g.edges {
        let m = Int::from(mult);
        if let Some(col) = index[from] {
            let d = l.get(col, col) + &m;
            l.set(col, col, d);
            if let Some(row) = index[to] {
                let off = l.get(row, col) - &m;
                l.set(row, col, off);
            }
        }
    }
    let verdict = crate::mmatrix::check_m_matrix(&l.to_rational())?;
    if !verdict.is_m_matrix {
        return Err(Error::DisconnectedFromSink);
    }
    Ok(l)
}

/// Triangulated surface piece: oriented triangles on positive integer
/// vertex labels, with a chosen spanning tree of the 1-skeleton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex2D {
    facets: Vec<[usize; 3]>,
    tree: Vec<[usize; 2]>,
}

impl SimplicialComplex2D {
    /// Facets may be listed in any vertex order; each is normalized to
    /// i < j < k, which is the orientation used by the boundary map.
    pub fn new(facets: Vec<[usize; 3]>, tree: Vec<[usize; 2]>) -> Result<Self> {
        if facets.is_empty() {
            return Err(Error::EmptyComplex);
        }
        let mut normalized = Vec::with_capacity(facets.len());
        for f in &facets {
            let mut t = *f;
            t.sort_unstable();
            if t[0] == t[1] || t[1] == t[2] {
                return Err(Error::InvalidFacet(format!("degenerate facet {f:?}")));
            }
            if t[0] == 0 {
                return Err(Error::InvalidFacet(format!(
                    "vertex labels must be positive, got {f:?}"
                )));
            }
            normalized.push(t);
        }
        let mut sorted_facets = normalized.clone();
        sorted_facets.sort_unstable();
        sorted_facets.dedup();
        if sorted_facets.len() != normalized.len() {
            return Err(Error::InvalidFacet("duplicate facet".into()));
        }

        let vertices = vertex_set(&normalized);
        let skeleton = one_skeleton(&normalized);
        let mut tree_edges = Vec::with_capacity(tree.len());
        for e in &tree {
            let [a, b] = *e;
            let edge = if a < b { [a, b] } else { [b, a] };
            if a == b {
                return Err(Error::NotASpanningTree(format!("degenerate edge {e:?}")));
            }
            if !skeleton.contains(&edge) {
                return Err(Error::NotASpanningTree(format!(
                    "edge {edge:?} is not in the 1-skeleton"
                )));
            }
            tree_edges.push(edge);
        }
        if tree_edges.len() != vertices.len().saturating_sub(1) {
            return Err(Error::NotASpanningTree(format!(
                "{} edges cannot span {} vertices",
                tree_edges.len(),
                vertices.len()
            )));
        }
        // acyclic with |V| - 1 edges means spanning
        let mut uf: std::collections::BTreeMap<usize, usize> =
            vertices.iter().map(|&v| (v, v)).collect();
        fn find(uf: &mut std::collections::BTreeMap<usize, usize>, v: usize) -> usize {
            let parent = uf[&v];
            if parent == v {
                return v;
            }
            let root = find(uf, parent);
            uf.insert(v, root);
            root
        }
        for &[a, b] in &tree_edges {
            let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
            if ra == rb {
                return Err(Error::NotASpanningTree(format!(
                    "edge [{a}, {b}] closes a cycle"
                )));
            }
            uf.insert(ra, rb);
        }
        Ok(SimplicialComplex2D {
            facets: normalized,
            tree: tree_edges,
        })
    }

    pub fn facets(&self) -> &[[usize; 3]] {
        &self.facets
    }

    /// Non-tree edges of the 1-skeleton in lexicographic order; these index
    /// the rows of the reduced Laplacian.
    pub fn cycle_edges(&self) -> Vec<[usize; 2]> {
        one_skeleton(&self.facets)
            .into_iter()
            .filter(|e| !self.tree.contains(e))
            .collect()
    }
}

fn vertex_set(facets: &[[usize; 3]]) -> Vec<usize> {
    let mut vs: Vec<usize> = facets.iter().flatten().copied().collect();
    vs.sort_unstable();
    vs.dedup();
    vs
}

fn one_skeleton(facets: &[[usize; 3]]) -> Vec<[usize; 2]> {
    let mut edges: Vec<[usize; 2]> = facets
        .iter()
        .flat_map(|&[i, j, k]| [[i, j], [i, k], [j, k]])
        .collect();
    edges.sort_unstable();
    edges.dedup();
    edges
}

/// Boundary-of-boundary Laplacian with the tree rows removed.
///
/// The boundary of facet [i, j, k] (i < j < k) places +1 on edges [i, j] and
/// [j, k] and -1 on edge [i, k]. Restricting the boundary matrix to the
/// non-tree edge rows and multiplying by its own transpose gives an
/// invertible integer matrix indexed by `cycle_edges`.
pub fn reduced_combinatorial_laplacian(c: &SimplicialComplex2D) -> Result<IntMatrix> {
    let rows = c.cycle_edges();
    let mut boundary = IntMatrix::zero(rows.len(), c.facets.len());
    for (col, &[i, j, k]) in c.facets.iter().enumerate() {
        for (edge, sign) in [([i, j], 1), ([j, k], 1), ([i, k], -1)] {
            if let Some(row) = rows.iter().position(|e| *e == edge) {
                boundary.set(row, col, Int::from(sign));
            }
        }
    }
    boundary.mul(&boundary.transpose())
}

/// All integer points p with L^-1 p in [0, 1)^n, found by scanning the
/// integer bounding box of the parallelepiped's vertices {L*b : b in
/// {0,1}^n} and filtering exactly. There are always |det L| of them.
pub fn fundamental_parallelepiped_points(l: &IntMatrix, det_cap: u64) -> Result<Vec<IntVector>> {
    if !l.is_square() {
        return Err(Error::NonSquare {
            rows: l.rows(),
            cols: l.cols(),
        });
    }
    let det = l.det()?;
    if det.is_zero() {
        return Err(Error::SingularL);
    }
    if det.abs() > Int::from(det_cap) {
        return Err(Error::DeterminantExceedsCap {
            det: det.abs(),
            cap: det_cap,
        });
    }
    let n = l.rows();
    let l_inv = l.to_rational().inverse()?;
    let mut lo = vec![Int::zero(); n];
    let mut hi = vec![Int::zero(); n];
    for corner in 0..(1usize << n) {
        let b: IntVector = (0..n)
            .map(|i| {
                if corner & (1 << i) != 0 {
                    Int::one()
                } else {
                    Int::zero()
                }
            })
            .collect();
        let v = l.mul_vec(&b)?;
        for i in 0..n {
            if v[i] < lo[i] {
                lo[i] = v[i].clone();
            }
            if v[i] > hi[i] {
                hi[i] = v[i].clone();
            }
        }
    }
    let mut points = Vec::new();
    let mut p = lo.clone();
    'scan: loop {
        let image = l_inv.mul_vec(
            &p.iter()
                .map(|e| Rational::from_integer(e.clone()))
                .collect::<Vec<_>>(),
        )?;
        if image
            .iter()
            .all(|e| !e.is_negative() && *e < Rational::one())
        {
            points.push(p.clone());
        }
        let mut k = n;
        loop {
            if k == 0 {
                break 'scan;
            }
            k -= 1;
            p[k] += 1;
            if p[k] <= hi[k] {
                break;
            }
            p[k] = lo[k].clone();
        }
    }
    points.sort();
    debug_assert_eq!(Int::from(points.len()), det.abs());
    Ok(points)
}

/// (L, L): requires L itself to be an M-matrix. Chips and module
/// coordinates coincide (N is the identity).
pub fn classical_pairing(l: &IntMatrix) -> Result<Pairing> {
    Pairing::new(l.clone(), l.to_rational())
}

/// (L, I): every site's threshold is 1 and membership in S+ means
/// L^-1 f >= 0.
pub fn identity_pairing(l: &IntMatrix) -> Result<Pairing> {
    Pairing::new(l.clone(), RatMatrix::identity(l.rows()))
}
