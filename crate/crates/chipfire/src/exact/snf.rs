use num_traits::{Signed, Zero};

use super::{Int, IntMatrix, IntVector};
use crate::error::{Error, Result};

/// Unimodular U, V and diagonal D with U*A*V = D.
///
/// D's diagonal is positive and each entry divides the next, so the diagonal
/// lists the invariant factors of coker(A) and their product is |det A|.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    pub fn invariant_factors(&self) -> IntVector {
        self.d.diagonal()
    }
}

// Quotient q minimizing |a - q*b|; the remainder satisfies 2|r| <= |b|.
fn div_nearest(a: &Int, b: &Int) -> Int {
    let (mut q, r) = num_integer::Integer::div_rem(a, b);
    if &r.abs() * 2 > b.abs() {
        if r.is_negative() == b.is_negative() {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

fn swap_cols(m: &mut [Vec<Int>], a: usize, b: usize) {
    for row in m {
        row.swap(a, b);
    }
}

fn row_sub(m: &mut [Vec<Int>], i: usize, t: usize, q: &Int) {
    let src = m[t].clone();
    for (dst, s) in m[i].iter_mut().zip(&src) {
        *dst -= q * s;
    }
}

fn col_sub(m: &mut [Vec<Int>], j: usize, t: usize, q: &Int) {
    for row in m {
        let s = q * &row[t];
        row[j] -= s;
    }
}

fn row_add(m: &mut [Vec<Int>], t: usize, i: usize) {
    let src = m[i].clone();
    for (dst, s) in m[t].iter_mut().zip(&src) {
        *dst += s;
    }
}

fn negate_row(m: &mut [Vec<Int>], t: usize) {
    for e in &mut m[t] {
        *e = -std::mem::take(e);
    }
}

/// Smith normal form of a square invertible integer matrix.
///
/// Pivots are chosen as the smallest nonzero entry in absolute value of the
/// trailing submatrix; gcd reduction runs until the pivot divides everything
/// it must, which yields the divisibility chain directly.
pub fn smith_normal_form(a: &IntMatrix) -> Result<SmithDecomposition> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let det = a.det()?;
    if det.is_zero() {
        return Err(Error::SingularMatrix);
    }

    let mut d: Vec<Vec<Int>> = (0..n).map(|i| a.row(i).to_vec()).collect();
    let ident: Vec<Vec<Int>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Int::from(1) } else { Int::zero() })
                .collect()
        })
        .collect();
    let mut u = ident.clone();
    let mut v = ident;

    for t in 0..n {
        'reduce: loop {
            // invertibility keeps the trailing submatrix nonzero
            let mut pivot = None;
            for (i, row) in d.iter().enumerate().skip(t) {
                for (j, e) in row.iter().enumerate().skip(t) {
                    if e.is_zero() {
                        continue;
                    }
                    let better = match &pivot {
                        None => true,
                        Some((_, _, mag)) => &e.abs() < mag,
                    };
                    if better {
                        pivot = Some((i, j, e.abs()));
                    }
                }
            }
            let (pi, pj, _) = pivot.expect("invertible matrix has a pivot");
            d.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut d, t, pj);
            swap_cols(&mut v, t, pj);

            for i in t + 1..n {
                if d[i][t].is_zero() {
                    continue;
                }
                let q = div_nearest(&d[i][t], &d[t][t]);
                row_sub(&mut d, i, t, &q);
                row_sub(&mut u, i, t, &q);
                if !d[i][t].is_zero() {
                    // remainder is smaller than the pivot; reselect
                    continue 'reduce;
                }
            }
            for j in t + 1..n {
                if d[t][j].is_zero() {
                    continue;
                }
                let q = div_nearest(&d[t][j], &d[t][t]);
                col_sub(&mut d, j, t, &q);
                col_sub(&mut v, j, t, &q);
                if !d[t][j].is_zero() {
                    continue 'reduce;
                }
            }
            for i in t + 1..n {
                for j in t + 1..n {
                    if !num_integer::Integer::is_multiple_of(&d[i][j], &d[t][t]) {
                        // pull the offending row up so gcd reduction sees it
                        row_add(&mut d, t, i);
                        row_add(&mut u, t, i);
                        continue 'reduce;
                    }
                }
            }
            break;
        }
        if d[t][t].is_negative() {
            negate_row(&mut d, t);
            negate_row(&mut u, t);
        }
    }

    let out = SmithDecomposition {
        u: IntMatrix::from_rows(u)?,
        d: IntMatrix::from_rows(d)?,
        v: IntMatrix::from_rows(v)?,
    };
    debug_assert_eq!(
        out.u.mul(a).unwrap().mul(&out.v).unwrap(),
        out.d,
        "U*A*V must equal D"
    );
    debug_assert_eq!(
        out.invariant_factors().iter().product::<Int>(),
        det.abs(),
        "invariant factors must multiply to |det A|"
    );
    Ok(out)
}
