//! Small dense determinants.
//!
//! Sizes up to 3 use cofactor expansion. Larger exact matrices use
//! fraction-free (Bareiss) elimination; floating matrices use Gaussian
//! elimination with partial pivoting.

use std::cmp::Ordering;

use crate::scalar::Scalar;

fn check_square<T>(rows: &[Vec<T>]) {
    let n = rows.len();
    assert!(rows.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
}

/// Cofactor expansion for `n <= 3`.
pub fn determinant_small<T: Scalar>(m: &[Vec<T>]) -> T {
    match m.len() {
        0 => T::one(),
        1 => m[0][0].clone(),
        2 => m[0][0].clone() * m[1][1].clone() - m[0][1].clone() * m[1][0].clone(),
        3 => {
            let minor = |r: usize, c: usize| {
                let (r0, r1) = ((r + 1) % 3, (r + 2) % 3);
                let (c0, c1) = ((c + 1) % 3, (c + 2) % 3);
                m[r0][c0].clone() * m[r1][c1].clone() - m[r0][c1].clone() * m[r1][c0].clone()
            };
            // cyclic minors already carry the cofactor sign
            m[0][0].clone() * minor(0, 0) + m[0][1].clone() * minor(0, 1) + m[0][2].clone() * minor(0, 2)
        }
        _ => panic!("determinant_small called with n > 3"),
    }
}

/// Bareiss elimination. Every division is exact in an integral domain; in a
/// field it keeps intermediate entries equal to minors of the input.
pub fn bareiss<T: Scalar>(mut m: Vec<Vec<T>>) -> T {
    check_square(&m);
    let n = m.len();
    if n == 0 {
        return T::one();
    }
    let mut sign_flip = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if m[k][k].sign(0.0) == Ordering::Equal {
            match (k + 1..n).find(|&i| m[i][k].sign(0.0) != Ordering::Equal) {
                Some(i) => {
                    m.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone())
                    / prev.clone();
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        -det
    } else {
        det
    }
}

/// Partial-pivot Gaussian elimination.
pub fn partial_pivot(mut m: Vec<Vec<f64>>) -> f64 {
    check_square(&m);
    let n = m.len();
    let mut det = 1.0;
    for k in 0..n {
        let p = (k..n)
            .max_by(|&a, &b| m[a][k].abs().total_cmp(&m[b][k].abs()))
            .expect("non-empty range");
        if m[p][k] == 0.0 {
            return 0.0;
        }
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        let pivot = m[k][k];
        det *= pivot;
        for i in k + 1..n {
            let f = m[i][k] / pivot;
            for j in k + 1..n {
                m[i][j] -= f * m[k][j];
            }
        }
    }
    det
}

pub fn determinant_exact<T: Scalar>(rows: Vec<Vec<T>>) -> T {
    check_square(&rows);
    if rows.len() <= 3 {
        determinant_small(&rows)
    } else {
        bareiss(rows)
    }
}

pub fn determinant_f64(rows: Vec<Vec<f64>>) -> f64 {
    check_square(&rows);
    if rows.len() <= 3 {
        determinant_small(&rows)
    } else {
        partial_pivot(rows)
    }
}
