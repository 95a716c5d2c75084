//! Absolute logarithmic Weil heights.

use super::algebraic::AlgebraicNumber;
use super::numfield::{norm_poly, Nf};
use super::poly::{primitive_int, Field, Poly, QPoly, Q};
use super::real::{ln_bigint, ln_rational_dy, Interval};
use super::roots::{isolate, refine_disc};
use crate::error::{pre, Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

pub const DEFAULT_TOL: f64 = 1e-12;

/// A real value with a certified absolute error bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HeightValue {
    pub value: f64,
    pub error: f64,
}

impl HeightValue {
    pub fn exact_within(value: f64, error: f64) -> Self {
        HeightValue { value, error }
    }

    pub fn from_interval(i: Interval) -> Self {
        HeightValue { value: i.mid(), error: i.width() / 2.0 }
    }

    pub fn interval(&self) -> Interval {
        Interval::new(self.value - self.error, self.value + self.error)
    }

    /// True when the certified enclosure lies within `tol` of `x`.
    pub fn close_to(&self, x: f64, tol: f64) -> bool {
        (self.value - x).abs() + self.error <= tol
    }
}

/// A point of projective space with rational coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectivePoint(pub Vec<Q>);

impl ProjectivePoint {
    pub fn new(coords: Vec<Q>) -> Result<Self> {
        if coords.iter().all(|c| c.is_zero()) {
            return pre("projective point with all coordinates zero");
        }
        Ok(ProjectivePoint(coords))
    }

    /// Coprime integer representative.
    pub fn primitive(&self) -> Vec<BigInt> {
        let p = Poly::new(self.0.clone(), Q::zero());
        let mut v = primitive_int(&p);
        v.resize(self.0.len(), BigInt::zero());
        v
    }
}

fn ln_big_precise(n: &BigInt) -> HeightValue {
    let d = ln_rational_dy(&BigRational::from_integer(n.abs()), 96).to_interval();
    let i = ln_bigint(&n.abs());
    let lo = d.lo.max(i.lo);
    let hi = d.hi.min(i.hi);
    HeightValue::from_interval(Interval::new(lo, hi))
}

/// h([x_0 : … : x_n]) for rational coordinates: log of the largest coprime integer coordinate.
pub fn weil_height(p: &ProjectivePoint) -> HeightValue {
    let v = p.primitive();
    let m = v.iter().map(|c| c.abs()).max().unwrap();
    ln_big_precise(&m)
}

/// Height of a single rational number, h(a/b) = log max(|a|, |b|).
pub fn height_of_rational(x: &Q) -> HeightValue {
    weil_height(&ProjectivePoint(vec![x.clone(), Q::from_integer(1.into())]))
}

/// h(α) = log M(α) / deg α, computed from certified root discs.
pub fn height_of_algebraic(a: &AlgebraicNumber, tol: f64) -> Result<HeightValue> {
    let d = a.degree();
    if d == 1 {
        let r = -a.min_poly.coeff(0) / a.min_poly.coeff(1);
        return Ok(height_of_rational(&r));
    }
    let lc = a.leading_coefficient();
    let lc_h = ln_big_precise(&lc);
    let mut roots = isolate(&a.min_poly)?;
    let mut bits = 64;
    loop {
        let mut sum = lc_h.interval();
        for r in &roots {
            let c = r.approx().norm();
            let rad = r.radius() * (1.0 + 1e-12) + c * 4.0 * f64::EPSILON;
            let lo = (c - rad).max(1.0).ln();
            let hi = (c + rad).max(1.0).ln();
            sum = sum.add(Interval::new(lo, hi * (1.0 + 4.0 * f64::EPSILON)));
        }
        let hv = HeightValue::from_interval(sum.scale(1.0 / d as f64));
        if hv.error <= tol || bits > 4096 {
            if hv.error > tol {
                return Err(Error::Precision(format!("height error {:e} above {tol:e}", hv.error)));
            }
            return Ok(hv);
        }
        bits *= 2;
        roots = roots
            .iter()
            .map(|r| refine_disc(&a.min_poly, r, bits).unwrap_or_else(|| r.clone()))
            .collect();
    }
}

/// Height of a polynomial: height of its coefficient vector as a projective point.
pub fn polynomial_height(p: &QPoly) -> Result<HeightValue> {
    if p.is_zero() {
        return pre("height of the zero polynomial");
    }
    Ok(weil_height(&ProjectivePoint(p.coeffs().to_vec())))
}

/// h([x_0 : … : x_n]) for coordinates in a common number field K.
///
/// [K:ℚ]·h = Σ_σ log max_i |σ(x_i)| − log cont(N_{K/ℚ}(Σ x_i T^i)).
pub fn weil_height_nf(coords: &[Nf], tol: f64) -> Result<HeightValue> {
    if coords.iter().all(|c| c.is_zero_elem()) {
        return pre("projective point with all coordinates zero");
    }
    let field = coords[0].field.clone();
    if field.is_rational() {
        let v: Vec<Q> = coords.iter().map(|c| c.c.coeff(0)).collect();
        return Ok(weil_height(&ProjectivePoint(v)));
    }
    let d = field.degree();
    let z = coords[0].zero_like();
    let f = Poly::new(coords.to_vec(), z);
    let nrm = norm_poly(&f);
    let cont = content_q(&nrm);
    let cont_h = HeightValue::from_interval(ln_rational_dy(&cont, 96).to_interval());
    let mut bits = 64u32;
    loop {
        let mut sum = Interval::point(0.0).sub(cont_h.interval());
        for i in 0..d {
            let mut lo = 0f64;
            let mut hi = 0f64;
            for c in coords {
                if c.is_zero_elem() {
                    continue;
                }
                let (v, e) = if bits == 64 { c.embed(i) } else { c.embed_refined(i, bits) };
                lo = lo.max(v.norm() - e);
                hi = hi.max(v.norm() + e);
            }
            if lo <= 0.0 {
                lo = f64::MIN_POSITIVE;
            }
            sum = sum.add(Interval::new(lo.ln(), hi.ln()));
            sum = Interval::new(sum.lo - 4.0 * f64::EPSILON * sum.lo.abs(), sum.hi + 4.0 * f64::EPSILON * sum.hi.abs());
        }
        let hv = HeightValue::from_interval(sum.scale(1.0 / d as f64));
        if hv.error <= tol {
            return Ok(hv);
        }
        if bits >= 2048 {
            return Err(Error::Precision(format!("height error {:e} above {tol:e}", hv.error)));
        }
        bits *= 2;
    }
}

/// Positive rational content of a rational polynomial (gcd of numerators over lcm of denominators).
pub fn content_q(p: &QPoly) -> Q {
    use num_integer::Integer;
    let mut num = BigInt::zero();
    let mut den = BigInt::from(1);
    for c in p.coeffs() {
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    BigRational::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::numfield::NumberField;
    use crate::numbers::poly::{q, qpoly, qr};

    #[test]
    fn rational_points() {
        let p = ProjectivePoint::new(vec![q(3), q(4), q(5)]).unwrap();
        assert!(weil_height(&p).close_to(5f64.ln(), 1e-12));
        let p = ProjectivePoint::new(vec![qr(1, 2), qr(1, 3)]).unwrap();
        assert!(weil_height(&p).close_to(3f64.ln(), 1e-12));
        assert!(ProjectivePoint::new(vec![q(0), q(0)]).is_err());
    }

    #[test]
    fn algebraic_heights() {
        let a = AlgebraicNumber::new(&qpoly(&[-2, 0, 1]), 0).unwrap();
        assert!(height_of_algebraic(&a, 1e-12).unwrap().close_to(0.5 * 2f64.ln(), 1e-12));
        let i = AlgebraicNumber::new(&qpoly(&[1, 0, 1]), 0).unwrap();
        assert!(height_of_algebraic(&i, 1e-12).unwrap().close_to(0.0, 1e-12));
    }

    #[test]
    fn polynomial_heights() {
        assert!(polynomial_height(&qpoly(&[5, -4, 3])).unwrap().close_to(5f64.ln(), 1e-12));
        let p = crate::numbers::poly::qpoly_from(vec![q(1), qr(1, 2)]);
        assert!(polynomial_height(&p).unwrap().close_to(2f64.ln(), 1e-12));
    }

    #[test]
    fn number_field_points_match_minpoly_height() {
        let k = NumberField::new(&qpoly(&[-2, 0, 1]));
        let t = Nf::gen(&k);
        let one = t.one_like();
        // h(√2) as [√2 : 1].
        let h = weil_height_nf(&[t.clone(), one.clone()], 1e-12).unwrap();
        assert!(h.close_to(0.5 * 2f64.ln(), 1e-12));
        // (1+√2)/3 has minimal polynomial 9x^2 - 6x - 1.
        let x = t.add(&one).div(&Nf::from_int(&k, 3));
        let h1 = weil_height_nf(&[x, one], 1e-12).unwrap();
        let a = AlgebraicNumber::new(&qpoly(&[-1, -6, 9]), 1).unwrap();
        let h2 = height_of_algebraic(&a, 1e-12).unwrap();
        assert!((h1.value - h2.value).abs() < 1e-11);
    }
}
