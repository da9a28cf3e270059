//! Dense exact linear algebra over F_p: rank and nullspace by Gauss-Jordan
//! elimination with deterministic pivoting (first nonzero entry, rows and
//! columns scanned in order).

use super::fp::Field;

/// Row-reduces `rows` in place to reduced row echelon form.
/// Returns the pivot column of each pivot row; the rank is the length of
/// that list.
pub fn rref(field: &Field, rows: &mut Vec<Vec<u64>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(pivot_row) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, pivot_row);
        let inv = field.inv(rows[r][col]);
        for x in rows[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][col] != 0 {
                let factor = rows[i][col];
                for c in col..ncols {
                    let sub = field.mul(factor, rows[r][c]);
                    rows[i][c] = field.sub(rows[i][c], sub);
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank(field: &Field, mut rows: Vec<Vec<u64>>) -> usize {
    rref(field, &mut rows).len()
}

/// A basis of the right nullspace `{v : M v = 0}`, one vector per free
/// column, in column order.
pub fn nullspace(field: &Field, mut rows: Vec<Vec<u64>>, ncols: usize) -> Vec<Vec<u64>> {
    debug_assert!(rows.iter().all(|r| r.len() == ncols));
    let pivots = rref(field, &mut rows);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::with_capacity(ncols - pivots.len());
    for free in 0..ncols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![0u64; ncols];
        v[free] = 1;
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = field.neg(rows[row][free]);
        }
        basis.push(v);
    }
    basis
}

/// Determinant of a square matrix (in place).
pub fn determinant(field: &Field, mut m: Vec<Vec<u64>>) -> u64 {
    let n = m.len();
    let mut det = 1u64;
    for col in 0..n {
        let Some(pivot_row) = (col..n).find(|&i| m[i][col] != 0) else {
            return 0;
        };
        if pivot_row != col {
            m.swap(col, pivot_row);
            det = field.neg(det);
        }
        det = field.mul(det, m[col][col]);
        let inv = field.inv(m[col][col]);
        for i in (col + 1)..n {
            if m[i][col] != 0 {
                let factor = field.mul(m[i][col], inv);
                for c in col..n {
                    let sub = field.mul(factor, m[col][c]);
                    m[i][c] = field.sub(m[i][c], sub);
                }
            }
        }
    }
    det
}

/// Inverse of a square matrix; `None` when singular.
pub fn inverse(field: &Field, m: &[Vec<u64>]) -> Option<Vec<Vec<u64>>> {
    let n = m.len();
    let mut aug: Vec<Vec<u64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u64::from(i == j)));
            r
        })
        .collect();
    let pivots = rref(field, &mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

#[cfg_attr(not(test), allow(dead_code))]
pub fn mat_vec(field: &Field, m: &[Vec<u64>], v: &[u64]) -> Vec<u64> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(0u64, |acc, (a, b)| field.add(acc, field.mul(*a, *b)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field() -> Field {
        Field::new(2_147_483_647).unwrap()
    }

    #[test]
    fn rank_and_nullspace() {
        let f = field();
        // rows: [1 2 3], [2 4 6], [0 1 1]
        let rows = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        assert_eq!(rank(&f, rows.clone()), 2);
        let ns = nullspace(&f, rows.clone(), 3);
        assert_eq!(ns.len(), 1);
        for v in &ns {
            for row in &rows {
                let dot = row
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (a, b)| f.add(acc, f.mul(*a, *b)));
                assert_eq!(dot, 0);
            }
        }
    }

    #[test]
    fn determinant_and_inverse() {
        let f = field();
        let m = vec![vec![2, 1, 0], vec![0, 3, 1], vec![1, 0, 1]];
        let det = determinant(&f, m.clone());
        assert_eq!(det, 7);
        let inv = inverse(&f, &m).unwrap();
        let prod = mat_vec(&f, &inv, &[2, 0, 1]);
        assert_eq!(prod, vec![1, 0, 0]);
        let singular = vec![vec![1, 2], vec![2, 4]];
        assert_eq!(determinant(&f, singular.clone()), 0);
        assert!(inverse(&f, &singular).is_none());
    }
}
