//! Exact integer linear algebra on small dense matrices.
//!
//! Everything here works on row lists (`&[Vec<i64>]`). Intermediate values
//! are widened to `i128`; the matrices that show up in practice have
//! dimension below twenty and entries of a few units, so overflow is not a
//! concern, but conversions back to `i64` are still checked.

use itertools::Itertools;
use num_rational::Ratio;

type Q = Ratio<i128>;

fn narrow(x: i128) -> i64 {
    i64::try_from(x).expect("integer overflow in lattice arithmetic")
}

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// Returns the nonzero rows of the echelon form. Each row has a strictly
/// positive pivot, pivots move strictly to the right, and the entries above a
/// pivot lie in `[0, pivot)`.
pub fn hermite_rows(rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), ncols, "row length mismatch");
            r.iter().map(|&x| x as i128).collect()
        })
        .collect();
    let mut top = 0;
    for col in 0..ncols {
        if top == m.len() {
            break;
        }
        // Euclid on the column until a single nonzero entry remains at `top`.
        loop {
            let pivot = (top..m.len())
                .filter(|&i| m[i][col] != 0)
                .min_by_key(|&i| m[i][col].abs());
            let Some(pivot) = pivot else { break };
            m.swap(top, pivot);
            let mut cleared = true;
            for i in top + 1..m.len() {
                if m[i][col] != 0 {
                    let q = m[i][col].div_euclid(m[top][col]);
                    let (head, tail) = m.split_at_mut(i);
                    for (x, &y) in tail[0][col..].iter_mut().zip(&head[top][col..]) {
                        *x -= q * y;
                    }
                    if m[i][col] != 0 {
                        cleared = false;
                    }
                }
            }
            if cleared {
                break;
            }
        }
        if m[top][col] == 0 {
            continue;
        }
        if m[top][col] < 0 {
            for x in m[top].iter_mut() {
                *x = -*x;
            }
        }
        let (head, tail) = m.split_at_mut(top);
        let prow = &tail[0];
        for row in head.iter_mut() {
            let q = row[col].div_euclid(prow[col]);
            if q != 0 {
                for k in 0..ncols {
                    row[k] -= q * prow[k];
                }
            }
        }
        top += 1;
    }
    m.truncate(top);
    m.into_iter()
        .map(|r| r.into_iter().map(narrow).collect())
        .collect()
}

/// An integer sublattice of `Z^n` held in Hermite normal form, supporting
/// canonical reduction of cosets and membership.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sublattice {
    dim: usize,
    rows: Vec<Vec<i64>>,
    pivots: Vec<usize>,
}

impl Sublattice {
    pub fn new(rows: &[Vec<i64>], dim: usize) -> Self {
        let rows = hermite_rows(rows, dim);
        let pivots = rows
            .iter()
            .map(|r| r.iter().position(|&x| x != 0).unwrap())
            .collect();
        Sublattice { dim, rows, pivots }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn hnf_rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// Reduces `v` to the representative of `v + L` whose pivot coordinates
    /// lie in `[0, pivot)`.
    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        let mut out = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let q = out[c].div_euclid(row[c]);
            if q != 0 {
                for (o, &r) in out.iter_mut().zip(row) {
                    *o -= q * r;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }
}

fn to_q(rows: &[Vec<i64>]) -> Vec<Vec<Q>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| Q::from_integer(x as i128)).collect())
        .collect()
}

/// Reduced row echelon form over the rationals, in place. Returns pivot columns.
fn rref(m: &mut [Vec<Q>], ncols: usize) -> Vec<usize> {
    let zero = Q::from_integer(0);
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        let Some(p) = (top..m.len()).find(|&i| m[i][col] != zero) else {
            continue;
        };
        m.swap(top, p);
        let inv = m[top][col].recip();
        for x in m[top].iter_mut() {
            *x *= inv;
        }
        for i in 0..m.len() {
            if i != top && m[i][col] != zero {
                let f = m[i][col];
                let prow = m[top].clone();
                for (x, y) in m[i].iter_mut().zip(prow) {
                    *x -= f * y;
                }
            }
        }
        pivots.push(col);
        top += 1;
        if top == m.len() {
            break;
        }
    }
    pivots
}

/// Rank over the rationals.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let Some(first) = rows.first() else { return 0 };
    let ncols = first.len();
    let mut m = to_q(rows);
    rref(&mut m, ncols).len()
}

/// Solves `sum_i c_i * basis[i] = v` for integer coefficients `c`.
///
/// The basis rows must be linearly independent, so the rational solution is
/// unique when it exists; `None` is returned when there is no rational
/// solution or when the unique one is not integral.
pub fn solve_integer(basis: &[Vec<i64>], v: &[i64]) -> Option<Vec<i64>> {
    let k = basis.len();
    let n = v.len();
    // Columns are the basis vectors, last column is the right-hand side.
    let mut m: Vec<Vec<Q>> = (0..n)
        .map(|j| {
            let mut row: Vec<Q> = basis
                .iter()
                .map(|b| Q::from_integer(b[j] as i128))
                .collect();
            row.push(Q::from_integer(v[j] as i128));
            row
        })
        .collect();
    let pivots = rref(&mut m, k + 1);
    if pivots.contains(&k) {
        return None;
    }
    assert_eq!(pivots.len(), k, "solve_integer needs an independent basis");
    let mut coeffs = vec![0i64; k];
    for (row, &c) in pivots.iter().enumerate() {
        let x = m[row][k];
        if !x.is_integer() {
            return None;
        }
        coeffs[c] = narrow(x.to_integer());
    }
    Some(coeffs)
}

/// Determinant via fraction-free (Bareiss) elimination.
pub fn determinant(square: &[Vec<i64>]) -> i128 {
    let n = square.len();
    if n == 0 {
        return 1;
    }
    let mut m: Vec<Vec<i128>> = square
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return 0;
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// True when the rows are independent and span a saturated sublattice, i.e.
/// `Z^n / span(rows)` is torsion-free. Decided by the gcd of all maximal
/// minors being one.
pub fn is_saturated(rows: &[Vec<i64>]) -> bool {
    let k = rows.len();
    if k == 0 {
        return true;
    }
    let n = rows[0].len();
    let mut g = 0i128;
    for cols in (0..n).combinations(k) {
        let minor: Vec<Vec<i64>> = rows
            .iter()
            .map(|r| cols.iter().map(|&c| r[c]).collect())
            .collect();
        g = gcd(g, determinant(&minor));
        if g == 1 {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_of_simple_rows() {
        let h = hermite_rows(&[vec![2, 4], vec![3, 5]], 2);
        // lattice has determinant 2, so HNF is [[1, x], [0, 2]]
        assert_eq!(h.len(), 2);
        assert_eq!(h[0][0], 1);
        assert_eq!(h[1], vec![0, 2]);
        assert!(h[0][1] >= 0 && h[0][1] < 2);
    }

    #[test]
    fn hermite_drops_dependent_rows() {
        let h = hermite_rows(&[vec![1, -1, 0], vec![2, -2, 0], vec![0, 1, -1]], 3);
        assert_eq!(h.len(), 2);
    }

    #[test]
    fn sublattice_reduce_is_canonical() {
        let l = Sublattice::new(&[vec![1, -1, -1, 1]], 4);
        assert_eq!(l.reduce(&[1, -1, -1, 1]), vec![0, 0, 0, 0]);
        assert_eq!(l.reduce(&[2, 0, -1, 2]), l.reduce(&[1, 1, 0, 1]));
        assert!(!l.contains(&[1, 0, 0, 0]));
    }

    #[test]
    fn solve_integer_cases() {
        let basis = vec![vec![1, -1, 0], vec![0, 1, -1]];
        assert_eq!(solve_integer(&basis, &[2, 0, -2]), Some(vec![2, 2]));
        assert_eq!(solve_integer(&basis, &[1, 0, 0]), None);
        let twice = vec![vec![2, 0]];
        assert_eq!(solve_integer(&twice, &[1, 0]), None);
        assert_eq!(solve_integer(&twice, &[4, 0]), Some(vec![2]));
        assert_eq!(solve_integer(&[], &[0, 0]), Some(vec![]));
        assert_eq!(solve_integer(&[], &[0, 1]), None);
    }

    #[test]
    fn determinant_and_rank() {
        assert_eq!(determinant(&[vec![2, 1], vec![1, 1]]), 1);
        assert_eq!(determinant(&[vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(
            determinant(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]),
            -3
        );
        assert_eq!(rank(&[vec![1, 2], vec![2, 4]]), 1);
    }

    #[test]
    fn saturation() {
        assert!(is_saturated(&[vec![1, -2, 1]]));
        assert!(!is_saturated(&[vec![2, 0, 2]]));
        assert!(is_saturated(&[vec![1, 1, 0], vec![0, 1, 1]]));
        assert!(!is_saturated(&[vec![1, 1], vec![1, -1]]));
    }
}
