//! Fibers E_λ : Y²Z = X(X−Z)(X−λZ) and their group law.

use super::divpoly::ab_int;
use crate::error::{domain, pre, Error, Result};
use crate::numbers::numfield::{extend, lift_qpoly, sqrt_in_field, FieldRef, Nf, NumberField};
use crate::numbers::poly::{Field, Poly, Q};
use std::fmt;

/// A smooth fiber of the Legendre family over an explicit number field K ∋ λ.
#[derive(Clone, PartialEq)]
pub struct LegendreFiber {
    pub lambda: Nf,
}

impl fmt::Debug for LegendreFiber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E[lambda = {}] over {:?}", self.lambda, self.lambda.field)
    }
}

impl LegendreFiber {
    pub fn new(lambda: Nf) -> Result<Self> {
        if lambda.is_zero_elem() || lambda.is_one_elem() {
            return domain("lambda must avoid 0 and 1");
        }
        Ok(LegendreFiber { lambda })
    }

    pub fn rational(lambda: Q) -> Result<Self> {
        LegendreFiber::new(Nf::from_rational(&NumberField::rational(), lambda))
    }

    pub fn over(field: &FieldRef, lambda: Q) -> Result<Self> {
        LegendreFiber::new(Nf::from_rational(field, lambda))
    }

    pub fn field(&self) -> &FieldRef {
        &self.lambda.field
    }

    pub fn el(&self, v: Q) -> Nf {
        Nf::from_rational(self.field(), v)
    }

    /// x(x−1)(x−λ).
    pub fn rhs(&self, x: &Nf) -> Nf {
        let one = x.one_like();
        x.mul(&x.sub(&one)).mul(&x.sub(&self.lambda))
    }

    fn a2(&self) -> Nf {
        self.lambda.add(&self.lambda.one_like()).neg()
    }

    pub fn identity(&self) -> LegendrePoint {
        LegendrePoint { fiber: self.clone(), xy: None }
    }

    pub fn point(&self, x: Nf, y: Nf) -> Result<LegendrePoint> {
        if y.mul(&y) != self.rhs(&x) {
            return pre("point does not satisfy the curve equation");
        }
        Ok(LegendrePoint { fiber: self.clone(), xy: Some((x, y)) })
    }

    pub fn point_q(&self, x: Q, y: Q) -> Result<LegendrePoint> {
        self.point(self.el(x), self.el(y))
    }

    /// Point with abscissa x and y in K, choosing the root deterministically; None if y ∉ K.
    pub fn point_with_x(&self, x: Nf) -> Option<LegendrePoint> {
        let y = sqrt_in_field(&self.rhs(&x))?;
        Some(LegendrePoint { fiber: self.clone(), xy: Some((x, y)) })
    }

    /// Base-change to an extension, given the image of K's generator.
    pub fn base_change(&self, alpha: &Nf) -> LegendreFiber {
        LegendreFiber { lambda: alpha.eval_qpoly(&self.lambda.c) }
    }

    /// j = 256(λ²−λ+1)³ / (λ²(λ−1)²).
    pub fn j_invariant(&self) -> Nf {
        j_invariant(&self.lambda).expect("fiber is smooth")
    }
}

/// A point of E_λ(K): `None` is the identity [0:1:0].
#[derive(Clone, PartialEq)]
pub struct LegendrePoint {
    pub fiber: LegendreFiber,
    pub xy: Option<(Nf, Nf)>,
}

impl fmt::Debug for LegendrePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.xy {
            None => write!(f, "[0:1:0]"),
            Some((x, y)) => write!(f, "({x}, {y})"),
        }
    }
}

impl LegendrePoint {
    pub fn is_identity(&self) -> bool {
        self.xy.is_none()
    }

    pub fn x(&self) -> Option<&Nf> {
        self.xy.as_ref().map(|p| &p.0)
    }

    /// Projective coordinates [X:Y:Z].
    pub fn projective(&self) -> [Nf; 3] {
        let k = self.fiber.field();
        match &self.xy {
            None => [Nf::from_int(k, 0), Nf::from_int(k, 1), Nf::from_int(k, 0)],
            Some((x, y)) => [x.clone(), y.clone(), Nf::from_int(k, 1)],
        }
    }

    pub fn neg(&self) -> LegendrePoint {
        LegendrePoint { fiber: self.fiber.clone(), xy: self.xy.as_ref().map(|(x, y)| (x.clone(), y.neg())) }
    }

    pub fn on_curve(&self) -> bool {
        match &self.xy {
            None => true,
            Some((x, y)) => y.mul(y) == self.fiber.rhs(x),
        }
    }

    /// Map the point into an extension field.
    pub fn base_change(&self, alpha: &Nf) -> LegendrePoint {
        LegendrePoint {
            fiber: self.fiber.base_change(alpha),
            xy: self.xy.as_ref().map(|(x, y)| (alpha.eval_qpoly(&x.c), alpha.eval_qpoly(&y.c))),
        }
    }
}

/// Chord–tangent addition.
pub fn add(p: &LegendrePoint, q: &LegendrePoint) -> Result<LegendrePoint> {
    if p.fiber != q.fiber {
        return domain("points lie on different fibers");
    }
    let e = &p.fiber;
    let (x1, y1) = match &p.xy {
        None => return Ok(q.clone()),
        Some(v) => v,
    };
    let (x2, y2) = match &q.xy {
        None => return Ok(p.clone()),
        Some(v) => v,
    };
    let a2 = e.a2();
    let m = if x1 == x2 {
        if y1.add(y2).is_zero_elem() {
            return Ok(e.identity());
        }
        // (3x² + 2a2x + a4) / 2y
        let num = x1.mul(x1).scale_int(3).add(&a2.mul(x1).scale_int(2)).add(&e.lambda);
        num.div(&y1.scale_int(2))
    } else {
        y2.sub(y1).div(&x2.sub(x1))
    };
    let x3 = m.mul(&m).sub(&a2).sub(x1).sub(x2);
    let y3 = m.mul(&x1.sub(&x3)).sub(y1);
    Ok(LegendrePoint { fiber: e.clone(), xy: Some((x3, y3)) })
}

/// [n]P by double-and-add.
pub fn multiply(n: i64, p: &LegendrePoint) -> LegendrePoint {
    let base = if n < 0 { p.neg() } else { p.clone() };
    let mut k = n.unsigned_abs();
    let mut acc = p.fiber.identity();
    let mut cur = base;
    while k > 0 {
        if k & 1 == 1 {
            acc = add(&acc, &cur).expect("same fiber");
        }
        k >>= 1;
        if k > 0 {
            cur = add(&cur, &cur).expect("same fiber");
        }
    }
    acc
}

/// Exact order of P when it is at most `max_n`.
pub fn torsion_order(p: &LegendrePoint, max_n: u64) -> Option<u64> {
    let mut cur = p.clone();
    for k in 1..=max_n {
        if cur.is_identity() {
            return Some(k);
        }
        cur = add(&cur, p).expect("same fiber");
    }
    None
}

/// Order via the multiplication map: smallest n with B_n(x, λ) = 0, else via A_n/B_n never vanishing.
/// Independent of the group law except for the 2-torsion test y = 0.
pub fn torsion_order_by_divpoly(p: &LegendrePoint, max_n: u32) -> Option<u32> {
    let (x, y) = match &p.xy {
        None => return Some(1),
        Some(v) => v,
    };
    if y.is_zero_elem() {
        return (max_n >= 2).then_some(2);
    }
    for n in 2..=max_n {
        let ab = ab_int(n).ok()?;
        if ab.1.specialize_lambda(&p.fiber.lambda).eval(x).is_zero_elem() {
            return Some(n);
        }
    }
    None
}

/// j(λ) = 256(λ²−λ+1)³ / (λ²(λ−1)²).
pub fn j_invariant(lambda: &Nf) -> Result<Nf> {
    let one = lambda.one_like();
    if lambda.is_zero_elem() || lambda.is_one_elem() {
        return domain("j is undefined at lambda in {0, 1}");
    }
    let l2 = lambda.mul(lambda);
    let t = l2.sub(lambda).add(&one);
    let num = t.mul(&t).mul(&t).scale_int(256);
    let lm1 = lambda.sub(&one);
    let den = l2.mul(&lm1).mul(&lm1);
    Ok(num.div(&den))
}

pub fn j_invariant_q(lambda: &Q) -> Result<Q> {
    let k = NumberField::rational();
    Ok(j_invariant(&Nf::from_rational(&k, lambda.clone()))?.c.coeff(0))
}

/// λ⁶ = (1/256)jλ²(λ−1)² + 3λ⁵ − 6λ⁴ + 7λ³ − 6λ² + 3λ − 1, checked exactly.
pub fn check_j_sextic(lambda: &Nf) -> Result<bool> {
    let j = j_invariant(lambda)?;
    let one = lambda.one_like();
    let pw: Vec<Nf> = (0..=6).map(|k| lambda.pow(k)).collect();
    let lm1 = lambda.sub(&one);
    let mut rhs = j.mul(&pw[2]).mul(&lm1).mul(&lm1).mul(&one.from_q(&crate::numbers::poly::qr(1, 256)));
    for (k, c) in [(5usize, 3i64), (4, -6), (3, 7), (2, -6), (1, 3)] {
        rhs = rhs.add(&pw[k].scale_int(c));
    }
    rhs = rhs.sub(&one);
    Ok(pw[6] == rhs)
}

pub fn check_j_sextic_q(lambda: &Q) -> Result<bool> {
    check_j_sextic(&Nf::from_rational(&NumberField::rational(), lambda.clone()))
}

/// Lift an abscissa to a point, extending the field by √(x(x−1)(x−λ)) if needed.
/// Returns the (possibly base-changed) fiber's point.
pub fn lift_x(fiber: &LegendreFiber, x: &Nf) -> Result<LegendrePoint> {
    if let Some(p) = fiber.point_with_x(x.clone()) {
        return Ok(p);
    }
    let r = fiber.rhs(x);
    let z = r.zero_like();
    let f = Poly::new(vec![r.neg(), z.clone(), z.one_like()], z);
    let ext = extend(&f)?;
    let e2 = fiber.base_change(&ext.alpha);
    let x2 = ext.embed(x);
    e2.point(x2, ext.beta.clone()).map_err(|_| Error::Precondition("lifted point off curve".into()))
}

/// Number of points killed by a (identity included), counted through the abscissas of B_a(·, λ).
pub fn count_a_torsion(fiber: &LegendreFiber, a: u32) -> Result<u64> {
    if a == 0 {
        return pre("a must be positive");
    }
    if a == 1 {
        return Ok(1);
    }
    let ab = ab_int(a)?;
    let b = ab.1.specialize_lambda(&fiber.lambda);
    // Over the algebraic closure: distinct roots of B_a; 2-torsion abscissas carry one point, others two.
    let sqf = b.exact_div(&b.gcd(&b.derivative())).unwrap();
    let nroots = sqf.degree().unwrap_or(0) as u64;
    let cub = lift_qpoly(fiber.field(), &crate::numbers::poly::qpoly(&[0, 1]))
        .mul(&lift_qpoly(fiber.field(), &crate::numbers::poly::qpoly(&[-1, 1])))
        .mul(&Poly::new(vec![fiber.lambda.neg(), fiber.lambda.one_like()], fiber.lambda.zero_like()));
    let two_tors = sqf.gcd(&cub).degree().unwrap_or(0) as u64;
    Ok(1 + two_tors + 2 * (nroots - two_tors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::poly::{q, qr};

    fn fib(l: i64) -> LegendreFiber {
        LegendreFiber::rational(q(l)).unwrap()
    }

    #[test]
    fn rejects_degenerate() {
        assert!(LegendreFiber::rational(q(0)).is_err());
        assert!(LegendreFiber::rational(q(1)).is_err());
    }

    #[test]
    fn two_torsion_sum() {
        let e = fib(7);
        let p = e.point_q(q(0), q(0)).unwrap();
        let r = e.point_q(q(1), q(0)).unwrap();
        let s = add(&p, &r).unwrap();
        assert_eq!(s, e.point_q(q(7), q(0)).unwrap());
        assert_eq!(add(&p, &e.identity()).unwrap(), p);
    }

    #[test]
    fn order_four_point() {
        let e = fib(-3);
        let p = e.point_q(q(-1), q(2)).unwrap();
        assert_eq!(add(&p, &p).unwrap(), e.point_q(q(1), q(0)).unwrap());
        assert_eq!(multiply(2, &p), e.point_q(q(1), q(0)).unwrap());
        assert!(multiply(4, &p).is_identity());
        assert_eq!(multiply(1, &p), p);
        assert_eq!(torsion_order(&p, 10), Some(4));
        assert_eq!(torsion_order_by_divpoly(&p, 10), Some(4));
        assert_eq!(torsion_order(&e.identity(), 5), Some(1));
        assert_eq!(torsion_order(&e.point_q(q(0), q(0)).unwrap(), 5), Some(2));
    }

    #[test]
    fn j_values() {
        assert_eq!(j_invariant_q(&q(2)).unwrap(), q(1728));
        assert_eq!(j_invariant_q(&q(-1)).unwrap(), q(1728));
        assert!(check_j_sextic_q(&qr(7, 3)).unwrap());
        assert!(j_invariant_q(&q(1)).is_err());
    }

    #[test]
    fn lift_to_quadratic() {
        let e = fib(-1);
        let p = lift_x(&e, &e.el(q(2))).unwrap();
        assert_eq!(p.fiber.field().degree(), 2);
        assert!(p.on_curve());
    }

    #[test]
    fn torsion_counts() {
        let e = fib(5);
        for a in 1..=6 {
            assert_eq!(count_a_torsion(&e, a).unwrap(), (a * a) as u64);
        }
    }
}
