//! Exact linear algebra over the rationals and integers, sized for the
//! small dense systems that show up in polytope work (n <= 8 or so).

use num::{One, Signed, Zero};

use super::rat::{Int, Q};

/// Reduced row echelon form in place; returns the pivot column of each
/// pivot row (so `pivots.len()` is the rank).
pub fn rref(rows: &mut Vec<Vec<Q>>) -> Vec<usize> {
    let nrows = rows.len();
    if nrows == 0 {
        return vec![];
    }
    let ncols = rows[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].clone().recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..nrows {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    let t = &rows[r][j] * &f;
                    rows[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == nrows {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Determinant by fraction-free-ish Gaussian elimination.
pub fn det(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    debug_assert!(m.iter().all(|r| r.len() == n));
    let mut a = m.to_vec();
    let mut sign = false;
    let mut acc = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            a.swap(p, c);
            sign = !sign;
        }
        acc *= &a[c][c];
        let inv = a[c][c].clone().recip();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for j in c..n {
                let t = &a[c][j] * &f;
                a[i][j] -= t;
            }
        }
    }
    if sign {
        -acc
    } else {
        acc
    }
}

/// Solves A x = b for square or rectangular A; `None` when inconsistent,
/// otherwise one solution (free variables set to zero).
pub fn solve(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let nrows = a.len();
    debug_assert_eq!(nrows, b.len());
    let ncols = if nrows == 0 { 0 } else { a[0].len() };
    let mut aug: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&ncols) {
        return None; // pivot in the rhs column: inconsistent
    }
    let mut x = vec![Q::zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = aug[i][ncols].clone();
    }
    Some(x)
}

/// Solves A x = b demanding a unique solution (rank = ncols), else `None`.
pub fn solve_unique(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let ncols = if a.is_empty() { 0 } else { a[0].len() };
    if rank(a) != ncols {
        return None;
    }
    solve(a, b)
}

/// Basis of the right null space { x : A x = 0 }.
pub fn null_space(a: &[Vec<Q>]) -> Vec<Vec<Q>> {
    if a.is_empty() {
        return vec![];
    }
    let ncols = a[0].len();
    let mut m = a.to_vec();
    let pivots = rref(&mut m);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivot_set.contains(c)) {
        let mut v = vec![Q::zero(); ncols];
        v[free] = Q::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -m[i][free].clone();
        }
        basis.push(v);
    }
    basis
}

pub fn int_det(m: &[Vec<Int>]) -> Q {
    det(&to_q_matrix(m))
}

pub fn to_q_matrix(m: &[Vec<Int>]) -> Vec<Vec<Q>> {
    m.iter()
        .map(|r| r.iter().map(|x| Q::from_integer(x.clone())).collect())
        .collect()
}

pub fn identity_int(n: usize) -> Vec<Vec<Int>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Int::one() } else { Int::zero() }).collect())
        .collect()
}

/// Row-vector action x -> x g.
pub fn row_apply(x: &[Q], g: &[Vec<Int>]) -> Vec<Q> {
    let n = g.len();
    let ncols = g[0].len();
    debug_assert_eq!(x.len(), n);
    (0..ncols)
        .map(|j| (0..n).map(|i| &x[i] * &Q::from_integer(g[i][j].clone())).sum())
        .collect()
}

pub fn mat_mul_int(a: &[Vec<Int>], b: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let n = a.len();
    let k = b.len();
    let m = b[0].len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).map(|l| &a[i][l] * &b[l][j]).sum())
                .collect()
        })
        .collect()
}

/// Basis of the saturated integer kernel { x in Z^n : A x = 0 } for an
/// integer matrix A, via column reduction (a column-style Hermite form).
/// The result is a basis: the kernel of an integer matrix is saturated.
pub fn int_kernel(a: &[Vec<Int>], ncols: usize) -> Vec<Vec<Int>> {
    // Work on a copy of A and track the unimodular column transform V.
    let nrows = a.len();
    let mut m: Vec<Vec<Int>> = a.to_vec();
    let mut v = identity_int(ncols);
    let col_is_zero = |m: &Vec<Vec<Int>>, c: usize| (0..nrows).all(|r| m[r][c].is_zero());
    let mut lead = 0usize;
    for r in 0..nrows {
        if lead >= ncols {
            break;
        }
        // Clear row r to a single nonzero entry at column `lead` using
        // gcd-style column operations on columns lead..ncols.
        loop {
            let mut best: Option<usize> = None;
            for c in lead..ncols {
                if !m[r][c].is_zero() {
                    best = match best {
                        None => Some(c),
                        Some(b) if m[r][c].abs() < m[r][b].abs() => Some(c),
                        keep => keep,
                    };
                }
            }
            let Some(p) = best else { break };
            // Move the pivot candidate to `lead`.
            if p != lead {
                for row in m.iter_mut() {
                    row.swap(p, lead);
                }
                for row in v.iter_mut() {
                    row.swap(p, lead);
                }
            }
            // Reduce all other entries in row r modulo the pivot.
            let mut done = true;
            for c in lead + 1..ncols {
                if m[r][c].is_zero() {
                    continue;
                }
                let qt = div_round(&m[r][c], &m[r][lead]);
                if !qt.is_zero() {
                    for row in m.iter_mut() {
                        let t = &row[lead] * &qt;
                        row[c] -= t;
                    }
                    for row in v.iter_mut() {
                        let t = &row[lead] * &qt;
                        row[c] -= t;
                    }
                }
                if !m[r][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !m[r][lead].is_zero() {
            lead += 1;
        }
    }
    // Columns of V corresponding to zero columns of the reduced M span the kernel.
    let mut basis = Vec::new();
    for c in 0..ncols {
        if col_is_zero(&m, c) {
            basis.push((0..ncols).map(|r| v[r][c].clone()).collect());
        }
    }
    basis
}

fn div_round(a: &Int, b: &Int) -> Int {
    // Nearest-integer division keeps the entries small-ish.
    let two = Int::from(2);
    let (q0, r) = num::integer::div_rem(a.clone(), b.clone());
    if &(r.abs() * &two) > &b.abs() {
        if (a.is_negative()) == (b.is_negative()) {
            q0 + 1
        } else {
            q0 - 1
        }
    } else {
        q0
    }
}

/// Basis (rows) of the saturated lattice S intersect Z^n, where S is the
/// rational span of the given direction vectors.
pub fn saturated_lattice_basis(directions: &[Vec<Q>], n: usize) -> Vec<Vec<Int>> {
    if directions.is_empty() {
        return vec![];
    }
    // Equations cutting out span(directions): a basis of the orthogonal
    // complement, cleared to integers.
    let orth = null_space(directions);
    if orth.is_empty() {
        // Full span: the standard basis.
        return identity_int(n);
    }
    let a: Vec<Vec<Int>> = orth
        .iter()
        .map(|v| super::rat::primitive_integer(v))
        .collect();
    int_kernel(&a, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::rat::{q, qi, qvec};

    #[test]
    fn det_and_solve() {
        let m = vec![qvec(&[2, 1]), qvec(&[1, 3])];
        assert_eq!(det(&m), qi(5));
        let x = solve_unique(&m, &qvec(&[3, 4])).unwrap();
        assert_eq!(x, vec![qi(1), qi(1)]);
        let singular = vec![qvec(&[1, 2]), qvec(&[2, 4])];
        assert!(solve_unique(&singular, &qvec(&[1, 1])).is_none());
        assert!(solve(&singular, &qvec(&[1, 3])).is_none()); // inconsistent
    }

    #[test]
    fn null_space_basics() {
        let m = vec![qvec(&[1, 1, 1])];
        let ns = null_space(&m);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(super::super::rat::dot(&m[0], v).is_zero());
        }
    }

    #[test]
    fn integer_kernel_is_saturated() {
        // Kernel of (2 -2): plain gcd reasoning gives (1,1), not (2,2).
        let a = vec![vec![Int::from(2), Int::from(-2)]];
        let k = int_kernel(&a, 2);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert_eq!(v[0], v[1]);
        assert_eq!(v[0].abs(), Int::one());
    }

    #[test]
    fn saturated_basis_of_diagonal_direction() {
        // Span of (1/2, 1/2): saturation is Z*(1,1).
        let b = saturated_lattice_basis(&[vec![q(1, 2), q(1, 2)]], 2);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0][0].abs(), Int::one());
        assert_eq!(b[0][0], b[0][1]);
    }

    #[test]
    fn row_action() {
        let g = vec![
            vec![Int::from(1), Int::from(1)],
            vec![Int::from(0), Int::from(1)],
        ];
        assert_eq!(row_apply(&qvec(&[1, 0]), &g), qvec(&[1, 1]));
        assert_eq!(row_apply(&qvec(&[0, 1]), &g), qvec(&[0, 1]));
    }
}
