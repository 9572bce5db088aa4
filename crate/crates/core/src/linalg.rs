//! Gaussian elimination over Q(ζ₈).

use crate::field::FieldElem;

/// Reduced row echelon form; returns the pivot columns.
pub fn rref(rows: &mut [Vec<FieldElem>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for k in 0..rows.len() {
            if k != r && !rows[k][c].is_zero() {
                let factor = rows[k][c].clone();
                let pivot_row = rows[r].clone();
                for (x, p) in rows[k].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&factor * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[Vec<FieldElem>]) -> usize {
    rref(&mut rows.to_vec()).len()
}

/// Basis of the right kernel `{x : M x = 0}`.
pub fn kernel(rows: &[Vec<FieldElem>], ncols: usize) -> Vec<Vec<FieldElem>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![FieldElem::zero(); ncols];
            v[free] = FieldElem::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -&m[row][free];
            }
            v
        })
        .collect()
}

/// Matrix rank of an integer matrix.
pub fn integer_rank(rows: &[Vec<i64>]) -> usize {
    let m: Vec<Vec<FieldElem>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| FieldElem::from_int(x)).collect())
        .collect();
    rank(&m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(xs: &[i64]) -> Vec<FieldElem> {
        xs.iter().map(|&x| FieldElem::from_int(x)).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let m = vec![row(&[1, 2, 3]), row(&[2, 4, 6]), row(&[0, 1, 1])];
        assert_eq!(rank(&m), 2);
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 1);
        for r in &m {
            let dot = r
                .iter()
                .zip(&k[0])
                .fold(FieldElem::zero(), |acc, (a, b)| &acc + &(a * b));
            assert!(dot.is_zero());
        }
        assert_eq!(integer_rank(&[vec![6, 4, 4, 2]]), 1);
        assert_eq!(integer_rank(&[]), 0);
    }

    #[test]
    fn complex_entries() {
        let i = FieldElem::i();
        let m = vec![vec![FieldElem::one(), i.clone()], vec![i.clone(), -FieldElem::one()]];
        assert_eq!(rank(&m), 1);
    }
}
