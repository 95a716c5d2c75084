//! Algebraic numbers as a minimal polynomial plus a refinable isolating region.

use super::numfield::{FieldRef, Nf, NumberField};
use super::poly::{factor_q, normalize_q, primitive_int, QPoly, Q};
use super::roots::{isolate, refine_disc, RootDisc};
use crate::error::{pre, Result};
use num_complex::Complex64;
use num_rational::BigRational;

#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraicNumber {
    /// Primitive irreducible integer polynomial with positive leading coefficient.
    pub min_poly: QPoly,
    /// Isolating disc around the chosen root.
    pub region: RootDisc,
    /// Index of the root in the deterministic ordering of `isolate`.
    pub index: usize,
}

impl AlgebraicNumber {
    /// The `index`-th root of an irreducible polynomial.
    pub fn new(min_poly: &QPoly, index: usize) -> Result<Self> {
        let f = factor_q(min_poly);
        if f.len() != 1 || f[0].1 != 1 {
            return pre("minimal polynomial must be irreducible over Q");
        }
        let p = normalize_q(min_poly);
        let roots = isolate(&p)?;
        if index >= roots.len() {
            return pre(format!("root index {index} out of range"));
        }
        Ok(AlgebraicNumber { min_poly: p, region: roots[index].clone(), index })
    }

    pub fn rational(v: &Q) -> Self {
        let p = normalize_q(&super::poly::qpoly_from(vec![-v.clone(), Q::from_integer(1.into())]));
        AlgebraicNumber::new(&p, 0).expect("linear polynomial")
    }

    pub fn degree(&self) -> usize {
        self.min_poly.deg_or_zero()
    }

    /// Shrink the isolating region to radius ≤ 2^-bits.
    pub fn refine(&mut self, bits: u32) {
        if let Some(r) = refine_disc(&self.min_poly, &self.region, bits) {
            self.region = r;
        }
    }

    /// Rational box `[re_lo, re_hi] × [im_lo, im_hi]` containing the number.
    pub fn isolating_box(&self) -> [BigRational; 4] {
        self.region.to_box()
    }

    pub fn approx(&self) -> Complex64 {
        self.region.approx()
    }

    pub fn is_real(&self) -> bool {
        self.region.real
    }

    /// The field ℚ(α) with α mapped to the generator, and the embedding index of α.
    pub fn field(&self) -> (FieldRef, Nf) {
        let k = NumberField::new(&self.min_poly);
        let g = Nf::gen(&k);
        (k, g)
    }

    pub fn leading_coefficient(&self) -> num_bigint::BigInt {
        primitive_int(&self.min_poly).pop().unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::poly::qpoly;

    #[test]
    fn refine_sqrt2() {
        let mut a = AlgebraicNumber::new(&qpoly(&[-2, 0, 1]), 1).unwrap();
        a.refine(100);
        assert!(a.region.rad_exp <= -100);
        assert!((a.approx().re - 2f64.sqrt()).abs() < 1e-15);
        assert!(a.is_real());
    }

    #[test]
    fn reducible_rejected() {
        assert!(AlgebraicNumber::new(&qpoly(&[-1, 0, 1]), 0).is_err());
    }
}
