//! Division polynomials of y² = x(x−1)(x−Λ) and the multiplication-map numerator/denominator.
//!
//! `f_n` denotes ψ_n for odd n and ψ_n/(2y) for even n, so every `f_n` lies in ℤ[x, Λ].

use super::bivariate::{BivariatePolynomial, IPoly2};
use crate::error::{pre, Result};
use num_bigint::BigInt;
use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

/// x(x−1)(x−Λ) = x³ − (1+Λ)x² + Λx.
pub fn cubic() -> IPoly2 {
    IPoly2::from_small(&[&[], &[0, 1], &[-1, -1], &[1]])
}

fn base(n: u32) -> IPoly2 {
    // b2 = −4(1+Λ), b4 = 2Λ, b6 = 0, b8 = −Λ².
    match n {
        0 => IPoly2::default(),
        1 | 2 => IPoly2::constant(1),
        // 3x⁴ + b2x³ + 3b4x² + b8
        3 => IPoly2::from_small(&[&[0, 0, -1], &[], &[0, 6], &[-4, -4], &[3]]),
        // 2x⁶ + b2x⁵ + 5b4x⁴ + 10b8x² + b2b8x + b4b8
        4 => IPoly2::from_small(&[&[0, 0, 0, -2], &[0, 0, 4, 4], &[0, 0, -10], &[], &[0, 10], &[-4, -4], &[2]]),
        _ => unreachable!(),
    }
}

struct Cache {
    f: RwLock<HashMap<u32, Arc<IPoly2>>>,
    ab: RwLock<HashMap<u32, Arc<(IPoly2, IPoly2)>>>,
    pub_ab: RwLock<HashMap<u32, Arc<(BivariatePolynomial, BivariatePolynomial)>>>,
    primitive: RwLock<HashMap<u32, Arc<IPoly2>>>,
}

fn cache() -> &'static Cache {
    static C: OnceLock<Cache> = OnceLock::new();
    C.get_or_init(|| Cache {
        f: RwLock::new(HashMap::new()),
        ab: RwLock::new(HashMap::new()),
        pub_ab: RwLock::new(HashMap::new()),
        primitive: RwLock::new(HashMap::new()),
    })
}

/// The reduced division polynomial f_n (memoized).
pub fn f_n(n: u32) -> Arc<IPoly2> {
    if let Some(p) = cache().f.read().unwrap().get(&n) {
        return p.clone();
    }
    let p = if n <= 4 {
        base(n)
    } else if n % 2 == 1 {
        let m = n / 2;
        let fsq = cubic().mul(&cubic()).scale(&BigInt::from(16));
        let t1 = f_n(m + 2).mul(&f_n(m).pow(3));
        let t2 = f_n(m - 1).mul(&f_n(m + 1).pow(3));
        if m % 2 == 0 {
            fsq.mul(&t1).sub(&t2)
        } else {
            t1.sub(&fsq.mul(&t2))
        }
    } else {
        let m = n / 2;
        let a = f_n(m + 2).mul(&f_n(m - 1).pow(2));
        let b = f_n(m - 2).mul(&f_n(m + 1).pow(2));
        f_n(m).mul(&a.sub(&b))
    };
    let p = Arc::new(p);
    cache().f.write().unwrap().insert(n, p.clone());
    p
}

/// (A_n, B_n) over ℤ with x([n]P) = A_n / B_n.
pub fn ab_int(n: u32) -> Result<Arc<(IPoly2, IPoly2)>> {
    if n == 0 {
        return pre("division polynomials need n ≥ 1");
    }
    if let Some(p) = cache().ab.read().unwrap().get(&n) {
        return Ok(p.clone());
    }
    let fcub = cubic().scale(&BigInt::from(4));
    let fnn = f_n(n);
    let sq = fnn.mul(&fnn);
    let (b, cross) = if n % 2 == 1 {
        (sq, fcub.mul(&f_n(n - 1).mul(&f_n(n + 1))))
    } else {
        (fcub.mul(&sq), f_n(n - 1).mul(&f_n(n + 1)))
    };
    let x = IPoly2::from_small(&[&[], &[1]]);
    let a = x.mul(&b).sub(&cross);
    let r = Arc::new((a, b));
    cache().ab.write().unwrap().insert(n, r.clone());
    Ok(r)
}

/// (A_n, B_n) as rational bivariate polynomials (memoized).
pub fn division_polynomials(n: u32) -> Result<Arc<(BivariatePolynomial, BivariatePolynomial)>> {
    if let Some(p) = cache().pub_ab.read().unwrap().get(&n) {
        return Ok(p.clone());
    }
    let ab = ab_int(n)?;
    let r = Arc::new((ab.0.to_bivariate(), ab.1.to_bivariate()));
    cache().pub_ab.write().unwrap().insert(n, r.clone());
    Ok(r)
}

/// Λ^d P(Λ⁻¹X, Λ⁻¹) = P(X, Λ), i.e. the coefficient map (i, j) ↦ (i, d − i − j) fixes P.
fn reciprocal_symmetric(p: &BivariatePolynomial, d: u32) -> bool {
    p.terms().iter().all(|(&(i, j), c)| i + j <= d && p.coeff(i, d - i - j) == *c)
}

/// Outcome of the functional-equation check, with the measured Λ-degrees.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct FunctionalEquationReport {
    pub n: u32,
    pub a_symmetric: bool,
    pub b_symmetric: bool,
    pub deg_lambda_a: u32,
    pub deg_lambda_b: u32,
    pub holds: bool,
}

pub fn functional_equation_report(n: u32) -> Result<FunctionalEquationReport> {
    let ab = division_polynomials(n)?;
    let d = n * n;
    let a_symmetric = reciprocal_symmetric(&ab.0, d);
    let b_symmetric = reciprocal_symmetric(&ab.1, d - 1);
    let deg_lambda_a = ab.0.deg_lambda().unwrap_or(0);
    let deg_lambda_b = ab.1.deg_lambda().unwrap_or(0);
    let holds = a_symmetric && b_symmetric && deg_lambda_a <= d && deg_lambda_b <= d;
    Ok(FunctionalEquationReport { n, a_symmetric, b_symmetric, deg_lambda_a, deg_lambda_b, holds })
}

/// Both reciprocity identities hold exactly and the Λ-degrees are at most n².
pub fn check_functional_equation(n: u32) -> bool {
    functional_equation_report(n).map(|r| r.holds).unwrap_or(false)
}

/// Polynomial in X over ℤ[Λ] whose roots are the abscissas of points of exact order N ≥ 3
/// (for N = 2 it is the cubic itself). Obtained by dividing out proper divisors.
pub fn primitive_division_poly(n: u32) -> Result<Arc<IPoly2>> {
    if n < 2 {
        return pre("primitive division polynomial needs N ≥ 2");
    }
    if let Some(p) = cache().primitive.read().unwrap().get(&n) {
        return Ok(p.clone());
    }
    let p = if n == 2 {
        cubic()
    } else {
        let mut cur = (*f_n(n)).clone();
        for d in 3..n {
            if n % d == 0 {
                let hd = primitive_division_poly(d)?;
                cur = cur
                    .div_exact(&hd)
                    .ok_or_else(|| crate::error::Error::Precondition(format!("h_{d} does not divide f_{n}")))?;
            }
        }
        // Even orders: 2-torsion abscissas already removed by the f_n normalisation.
        cur
    };
    let p = Arc::new(p);
    cache().primitive.write().unwrap().insert(n, p.clone());
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_one_and_two() {
        let ab = division_polynomials(1).unwrap();
        assert_eq!(ab.0.to_string(), "X");
        assert_eq!(ab.1.to_string(), "1");
        let ab = division_polynomials(2).unwrap();
        let expect_a = IPoly2::from_small(&[&[0, 0, 1], &[], &[0, -2], &[], &[1]]).to_bivariate();
        let expect_b = IPoly2::from_small(&[&[], &[0, 4], &[-4, -4], &[4]]).to_bivariate();
        assert_eq!(ab.0, expect_a);
        assert_eq!(ab.1, expect_b);
    }

    #[test]
    fn degrees_small_n() {
        for n in 1..=8u32 {
            let ab = division_polynomials(n).unwrap();
            assert_eq!(ab.0.deg_x(), Some(n * n));
            assert_eq!(ab.1.deg_x(), Some(n * n - 1));
            assert!(ab.0.is_monic_in_x());
            assert!(check_functional_equation(n), "n = {n}");
        }
    }

    #[test]
    fn primitive_three_torsion_degree() {
        // Points of exact order 3 have 4 abscissas.
        assert_eq!(primitive_division_poly(3).unwrap().deg_x(), Some(4));
        // Exact order 4: (16 - 4)/2 = 6 abscissas.
        assert_eq!(primitive_division_poly(4).unwrap().deg_x(), Some(6));
        // Exact order 6: J_2(6)/2 = 12; exact order 8: J_2(8)/2 = 24.
        assert_eq!(primitive_division_poly(6).unwrap().deg_x(), Some(12));
        assert_eq!(primitive_division_poly(8).unwrap().deg_x(), Some(24));
    }
}
