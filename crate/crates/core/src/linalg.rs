//! Small dense linear algebra over a [`Scalar`] field. Pivoting picks the
//! first non-negligible entry, so exact runs are reproducible.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub type Matrix<S> = Vec<Vec<S>>;

pub fn identity<S: Scalar>(n: usize) -> Matrix<S> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { S::one() } else { S::zero() }).collect())
        .collect()
}

pub fn transpose<S: Clone>(m: &Matrix<S>) -> Matrix<S> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn conj_transpose<S: Scalar>(m: &Matrix<S>) -> Matrix<S> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|row| row[j].conj()).collect()).collect()
}

pub fn mat_mul<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> Matrix<S> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(S::zero(), |acc, k| acc + row[k].clone() * b[k][j].clone()))
                .collect()
        })
        .collect()
}

pub fn determinant<S: Scalar>(m: &Matrix<S>) -> S {
    let n = m.len();
    let mut a = m.clone();
    let mut det = S::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].negligible()) else {
            return S::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det = det * pivot.clone();
        for r in col + 1..n {
            if a[r][col].negligible() {
                continue;
            }
            let f = a[r][col].clone() / pivot.clone();
            for c in col..n {
                let v = a[col][c].clone() * f.clone();
                a[r][c] = a[r][c].clone() - v;
            }
        }
    }
    det
}

/// Solves `A x = b` for square nonsingular `A`.
pub fn solve<S: Scalar>(a: &Matrix<S>, b: &[S]) -> Result<Vec<S>> {
    let n = a.len();
    let mut aug: Matrix<S> = a
        .iter()
        .zip(b)
        .map(|(row, v)| {
            let mut r = row.clone();
            r.push(v.clone());
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !aug[r][col].negligible()).ok_or(Error::Singular)?;
        aug.swap(p, col);
        let pivot = aug[col][col].clone();
        for c in col..=n {
            aug[col][c] = aug[col][c].clone() / pivot.clone();
        }
        for r in 0..n {
            if r == col || aug[r][col].negligible() {
                continue;
            }
            let f = aug[r][col].clone();
            for c in col..=n {
                let v = aug[col][c].clone() * f.clone();
                aug[r][c] = aug[r][c].clone() - v;
            }
        }
    }
    Ok(aug.into_iter().map(|mut r| r.pop().expect("augmented column")).collect())
}

pub fn inverse<S: Scalar>(a: &Matrix<S>) -> Result<Matrix<S>> {
    let n = a.len();
    let id: Matrix<S> = identity(n);
    let cols: Vec<Vec<S>> = (0..n)
        .map(|j| {
            let e: Vec<S> = id.iter().map(|row| row[j].clone()).collect();
            solve(a, &e)
        })
        .collect::<Result<_>>()?;
    Ok(transpose(&cols))
}

/// Reduced row echelon form; returns pivot columns.
pub fn row_reduce<S: Scalar>(m: &mut Matrix<S>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].negligible()) else {
            continue;
        };
        m.swap(p, r);
        let pivot = m[r][c].clone();
        for k in c..cols {
            m[r][k] = m[r][k].clone() / pivot.clone();
        }
        for i in 0..rows {
            if i == r || m[i][c].negligible() {
                continue;
            }
            let f = m[i][c].clone();
            for k in c..cols {
                let v = m[r][k].clone() * f.clone();
                m[i][k] = m[i][k].clone() - v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right null space of `m` (`cols` unknowns).
pub fn null_space<S: Scalar>(m: &Matrix<S>, cols: usize) -> Matrix<S> {
    let mut a = m.clone();
    let pivots = row_reduce(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![S::zero(); cols];
            v[f] = S::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f].clone();
            }
            v
        })
        .collect()
}

/// Indices of the first maximal run of linearly independent columns, scanning left to right.
pub fn independent_columns<S: Scalar>(m: &Matrix<S>) -> Vec<usize> {
    let cols = m.first().map_or(0, Vec::len);
    let mut kept: Vec<usize> = Vec::new();
    for c in 0..cols {
        let mut trial: Vec<usize> = kept.clone();
        trial.push(c);
        let sub: Matrix<S> = m.iter().map(|row| trial.iter().map(|&j| row[j].clone()).collect()).collect();
        let mut sub_t = transpose(&sub);
        if row_reduce(&mut sub_t).len() == trial.len() {
            kept = trial;
        }
    }
    kept
}

/// `H = L D L*` for Hermitian `H`, with `L` unit lower triangular. Returns
/// `None` if a zero pivot appears before the end (the matrix is then not
/// positive definite). The diagonal `D` is returned as scalars with zero
/// imaginary part.
pub fn ldl_hermitian<S: Scalar>(h: &Matrix<S>) -> Option<(Matrix<S>, Vec<S>)> {
    let n = h.len();
    let mut l: Matrix<S> = identity(n);
    let mut d: Vec<S> = vec![S::zero(); n];
    for j in 0..n {
        let mut dj = h[j][j].clone();
        for k in 0..j {
            dj = dj - l[j][k].clone() * d[k].clone() * l[j][k].conj();
        }
        if dj.negligible() {
            return None;
        }
        d[j] = dj.clone();
        for i in j + 1..n {
            let mut v = h[i][j].clone();
            for k in 0..j {
                v = v - l[i][k].clone() * d[k].clone() * l[j][k].conj();
            }
            l[i][j] = v / dj.clone();
        }
    }
    Some((l, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{cxi, Cx};

    #[test]
    fn det_and_inverse() {
        let m: Matrix<Cx> = vec![vec![cxi(2, 0), cxi(1, 1)], vec![cxi(0, 1), cxi(3, 0)]];
        // 6 - (1+i)i = 6 - i + 1 = 7 - i
        assert_eq!(determinant(&m), cxi(7, -1));
        let inv = inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), identity::<Cx>(2));
    }

    #[test]
    fn null_space_of_rank_one() {
        let m: Matrix<Cx> = vec![vec![cxi(1, 0), cxi(2, 0), cxi(3, 0)]];
        let ns = null_space(&m, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            let dot = v.iter().zip(&m[0]).fold(cxi(0, 0), |a, (x, y)| a + x * y);
            assert_eq!(dot, cxi(0, 0));
        }
    }

    #[test]
    fn ldl_reconstructs() {
        let h: Matrix<Cx> = vec![vec![cxi(2, 0), cxi(1, -1)], vec![cxi(1, 1), cxi(3, 0)]];
        let (l, d) = ldl_hermitian(&h).unwrap();
        let dm: Matrix<Cx> = (0..2)
            .map(|i| (0..2).map(|j| if i == j { d[i].clone() } else { cxi(0, 0) }).collect())
            .collect();
        let back = mat_mul(&mat_mul(&l, &dm), &conj_transpose(&l));
        assert_eq!(back, h);
    }
}
