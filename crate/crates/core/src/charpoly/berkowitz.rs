//! Division-free characteristic polynomial over a commutative ring.
//!
//! Berkowitz's recursion: with `A_{k+1} = [[A_k, C], [R, a]]`,
//! `det(xI - A_{k+1})` is the Toeplitz product of the column
//! `(1, -a, -RC, -RA_kC, …, -RA_k^{k-1}C)` with the coefficients of
//! `det(xI - A_k)`. Only ring additions and multiplications occur.

use crate::rings::CommRing;

/// Sparse square matrix: for each row, `(column, entry)` pairs.
pub struct SparseMatrix<E> {
    rows: Vec<Vec<(usize, E)>>,
    cols: Vec<Vec<(usize, E)>>,
}

impl<E: Clone> SparseMatrix<E> {
    pub fn new(n: usize, entries: impl IntoIterator<Item = (usize, usize, E)>) -> Self {
        let mut rows = vec![Vec::new(); n];
        let mut cols = vec![Vec::new(); n];
        for (i, j, e) in entries {
            rows[i].push((j, e.clone()));
            cols[j].push((i, e));
        }
        for r in rows.iter_mut().chain(cols.iter_mut()) {
            r.sort_by_key(|(k, _)| *k);
        }
        SparseMatrix { rows, cols }
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }
}

/// Coefficients `a_0 = 1, a_1, …, a_n` of `det(xI - A) = Σ a_j x^{n-j}`.
pub fn charpoly<R: CommRing>(ring: &R, a: &SparseMatrix<R::Elem>) -> Vec<R::Elem> {
    let n = a.n();
    let mut p = vec![ring.one()];
    for k in 0..n {
        let diag = a.rows[k]
            .iter()
            .find(|(j, _)| *j == k)
            .map(|(_, e)| e.clone())
            .unwrap_or_else(|| ring.zero());
        let row: Vec<&(usize, R::Elem)> = a.rows[k].iter().filter(|(j, _)| *j < k).collect();

        // t[0] = 1, t[1] = -a, t[r] = -R A_k^{r-2} C
        let mut t = Vec::with_capacity(k + 2);
        t.push(ring.one());
        t.push(ring.neg(&diag));
        let mut w = vec![ring.zero(); k];
        for (i, e) in a.cols[k].iter().filter(|(i, _)| *i < k) {
            w[*i] = e.clone();
        }
        for r in 2..=k + 1 {
            let mut dot = ring.zero();
            for (j, e) in &row {
                if !ring.is_zero(&w[*j]) {
                    ring.mul_add_assign(&mut dot, e, &w[*j]);
                }
            }
            t.push(ring.neg(&dot));
            if r < k + 1 {
                w = mat_vec(ring, a, k, &w);
            }
        }

        let mut next = vec![ring.zero(); k + 2];
        for (j, pj) in p.iter().enumerate() {
            if ring.is_zero(pj) {
                continue;
            }
            for (d, td) in t.iter().enumerate().take(k + 2 - j) {
                if !ring.is_zero(td) {
                    ring.mul_add_assign(&mut next[j + d], td, pj);
                }
            }
        }
        p = next;
    }
    p
}

/// `A_k w` for the leading `k × k` block.
fn mat_vec<R: CommRing>(ring: &R, a: &SparseMatrix<R::Elem>, k: usize, w: &[R::Elem]) -> Vec<R::Elem> {
    (0..k)
        .map(|i| {
            let mut acc = ring.zero();
            for (j, e) in a.rows[i].iter().take_while(|(j, _)| *j < k) {
                if !ring.is_zero(&w[*j]) {
                    ring.mul_add_assign(&mut acc, e, &w[*j]);
                }
            }
            acc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{LaurentPoly, LaurentRing};

    fn int_matrix(rows: &[&[i64]]) -> SparseMatrix<LaurentPoly> {
        let n = rows.len();
        SparseMatrix::new(
            n,
            rows.iter().enumerate().flat_map(|(i, r)| {
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| **v != 0)
                    .map(move |(j, v)| (i, j, LaurentPoly::constant(*v)))
            }),
        )
    }

    fn consts(p: &[LaurentPoly]) -> Vec<i64> {
        use num_traits::ToPrimitive;
        p.iter()
            .map(|c| c.as_constant().unwrap().to_i64().unwrap())
            .collect()
    }

    #[test]
    fn integer_matrices() {
        // [[2,1],[1,2]]: x^2 - 4x + 3
        assert_eq!(consts(&charpoly(&LaurentRing, &int_matrix(&[&[2, 1], &[1, 2]]))), vec![1, -4, 3]);
        // upper triangular diag(1,2,3): (x-1)(x-2)(x-3)
        let m = int_matrix(&[&[1, 5, 7], &[0, 2, -4], &[0, 0, 3]]);
        assert_eq!(consts(&charpoly(&LaurentRing, &m)), vec![1, -6, 11, -6]);
        // companion-like 3x3 with trace 0: det(xI - A) for A = [[0,1,0],[0,0,1],[6,-11,6]]
        let m = int_matrix(&[&[0, 1, 0], &[0, 0, 1], &[6, -11, 6]]);
        assert_eq!(consts(&charpoly(&LaurentRing, &m)), vec![1, -6, 11, -6]);
    }

    #[test]
    fn empty_matrix() {
        let m: SparseMatrix<LaurentPoly> = SparseMatrix::new(0, []);
        assert_eq!(charpoly(&LaurentRing, &m), vec![LaurentPoly::one()]);
    }
}
