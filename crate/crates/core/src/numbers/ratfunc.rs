//! The rational function field ℚ(t), used for gcds over ℚ(Λ).

use super::poly::{Field, QPoly, Q};
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Reduced fraction `num / den` with monic denominator.
#[derive(Clone, PartialEq, Debug)]
pub struct RatFunc {
    pub num: QPoly,
    pub den: QPoly,
}

impl RatFunc {
    pub fn new(num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero());
        if num.is_zero() {
            return RatFunc { num, den: QPoly::one(&Q::zero()) };
        }
        let g = num.gcd(&den);
        let mut n = num.exact_div(&g).unwrap();
        let mut d = den.exact_div(&g).unwrap();
        let l = d.lc();
        n = n.scale(&l.recip());
        d = d.scale(&l.recip());
        RatFunc { num: n, den: d }
    }

    pub fn from_poly(p: QPoly) -> Self {
        RatFunc { num: p, den: QPoly::one(&Q::zero()) }
    }

    pub fn is_poly(&self) -> bool {
        self.den.degree() == Some(0)
    }
}

impl Field for RatFunc {
    fn zero_like(&self) -> Self {
        RatFunc::from_poly(QPoly::zero(&Q::zero()))
    }
    fn one_like(&self) -> Self {
        RatFunc::from_poly(QPoly::one(&Q::zero()))
    }
    fn is_zero_elem(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        RatFunc::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }
    fn sub(&self, o: &Self) -> Self {
        RatFunc::new(self.num.mul(&o.den).sub(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }
    fn mul(&self, o: &Self) -> Self {
        RatFunc::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }
    fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }
    fn inv(&self) -> Self {
        RatFunc::new(self.den.clone(), self.num.clone())
    }
    fn from_q(&self, q: &BigRational) -> Self {
        RatFunc::from_poly(QPoly::constant(q.clone()))
    }
    fn is_one_elem(&self) -> bool {
        self.num == self.den && self.num.degree() == Some(0) && self.num.coeff(0).is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::poly::{qpoly, Poly};

    #[test]
    fn gcd_over_function_field() {
        // (X - t)(X + 1) and (X - t)(X - 2) share X - t.
        let t = RatFunc::from_poly(qpoly(&[0, 1]));
        let one = t.one_like();
        let x_minus_t = Poly::new(vec![t.neg(), one.clone()], t.zero_like());
        let a = x_minus_t.mul(&Poly::new(vec![one.clone(), one.clone()], t.zero_like()));
        let b = x_minus_t.mul(&Poly::new(vec![one.from_q(&crate::numbers::poly::q(-2)), one.clone()], t.zero_like()));
        assert_eq!(a.gcd(&b), x_minus_t);
    }
}
