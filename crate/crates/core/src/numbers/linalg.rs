//! Exact dense linear algebra over ℚ and ℤ.

use num_bigint::BigInt;
use num_rational::BigRational;
use super::poly::Field;
use num_traits::{One, Zero};

pub type QMat = Vec<Vec<BigRational>>;

/// Determinant by Gaussian elimination over ℚ.
pub fn det_q(m: &QMat) -> BigRational {
    let n = m.len();
    if n == 0 {
        return BigRational::one();
    }
    let mut a = m.clone();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let piv = a[c][c].clone();
        det *= &piv;
        for r in (c + 1)..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &piv;
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    det
}

/// Determinant of an integer matrix by fraction-free Bareiss elimination.
pub fn det_int(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = ((k + 1)..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(p, k);
            sign = -sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Rank over ℚ.
pub fn rank_q(m: &QMat) -> usize {
    let mut a = m.clone();
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(p, r);
        let piv = a[r][c].clone();
        for i in (r + 1)..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &piv;
            for k in c..cols {
                let t = &f * &a[r][k];
                a[i][k] -= t;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Solve a square nonsingular system `m x = b` over ℚ.
pub fn solve_q(m: &QMat, b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = m.len();
    let mut a: QMat = m.iter().zip(b).map(|(row, bi)| {
        let mut r = row.clone();
        r.push(bi.clone());
        r
    }).collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(p, c);
        let piv = a[c][c].clone();
        for k in c..=n {
            let t = &a[c][k] / &piv;
            a[c][k] = t;
        }
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone();
            for k in c..=n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    Some(a.into_iter().map(|r| r[n].clone()).collect())
}

/// Solve a square nonsingular system over any exact field.
pub fn solve_field<F: Field>(m: &[Vec<F>], b: &[F]) -> Option<Vec<F>> {
    let n = m.len();
    let mut a: Vec<Vec<F>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero_elem())?;
        a.swap(p, c);
        let inv = a[c][c].inv();
        for k in c..=n {
            a[c][k] = a[c][k].mul(&inv);
        }
        for r in 0..n {
            if r == c || a[r][c].is_zero_elem() {
                continue;
            }
            let f = a[r][c].clone();
            for k in c..=n {
                let t = f.mul(&a[c][k]);
                a[r][k] = a[r][k].sub(&t);
            }
        }
    }
    Some(a.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

pub fn int_mat_to_q(m: &[Vec<BigInt>]) -> QMat {
    m.iter().map(|r| r.iter().map(|v| BigRational::from_integer(v.clone())).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn im(v: &[&[i64]]) -> Vec<Vec<BigInt>> {
        v.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn determinants_agree() {
        let m = im(&[&[2, -1, 0], &[1, 3, 4], &[0, 5, -2]]);
        let d = det_int(&m);
        assert_eq!(d, BigInt::from(-54));
        assert_eq!(det_q(&int_mat_to_q(&m)), BigRational::from_integer(d));
    }

    #[test]
    fn solve_small() {
        let m = int_mat_to_q(&im(&[&[1, 1], &[1, -1]]));
        let b = vec![BigRational::from_integer(3.into()), BigRational::from_integer(1.into())];
        let x = solve_q(&m, &b).unwrap();
        assert_eq!(x[0], BigRational::from_integer(2.into()));
        assert_eq!(x[1], BigRational::from_integer(1.into()));
    }

    #[test]
    fn rank_deficient() {
        let m = int_mat_to_q(&im(&[&[1, 2], &[2, 4]]));
        assert_eq!(rank_q(&m), 1);
    }
}
