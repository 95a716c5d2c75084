//! Dense univariate polynomials over an exact field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Exact field arithmetic. Elements may carry context (a number field, say),
/// so constants are produced from an existing element.
pub trait Field: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; panics on zero.
    fn inv(&self) -> Self;
    fn from_q(&self, q: &BigRational) -> Self;

    fn is_one_elem(&self) -> bool {
        self.sub(&self.one_like()).is_zero_elem()
    }

    fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }
}

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Field for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn from_q(&self, q: &BigRational) -> Self {
        q.clone()
    }
    fn is_one_elem(&self) -> bool {
        One::is_one(self)
    }
}

/// Polynomial with coefficients from low to high degree, no trailing zeros.
#[derive(Clone, PartialEq)]
pub struct Poly<F: Field> {
    coeffs: Vec<F>,
    zero: F,
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>, zero: F) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero_elem()) {
            coeffs.pop();
        }
        Poly { coeffs, zero: zero.zero_like() }
    }

    pub fn zero(like: &F) -> Self {
        Poly { coeffs: vec![], zero: like.zero_like() }
    }

    pub fn constant(c: F) -> Self {
        let z = c.zero_like();
        Poly::new(vec![c], z)
    }

    pub fn one(like: &F) -> Self {
        Poly::constant(like.one_like())
    }

    /// The monomial `x`.
    pub fn x(like: &F) -> Self {
        Poly::new(vec![like.zero_like(), like.one_like()], like.zero_like())
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn zero_elem(&self) -> &F {
        &self.zero
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect();
        Poly::new(c, self.zero.clone())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n).map(|i| self.coeff(i).sub(&o.coeff(i))).collect();
        Poly::new(c, self.zero.clone())
    }

    pub fn neg(&self) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.neg()).collect(), self.zero.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(&self.zero);
        }
        let mut c = vec![self.zero.clone(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_elem() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        Poly::new(c, self.zero.clone())
    }

    pub fn scale(&self, k: &F) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.mul(k)).collect(), self.zero.clone())
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![self.zero.clone(); k];
        c.extend(self.coeffs.iter().cloned());
        Poly::new(c, self.zero.clone())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.zero);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Euclidean division, panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() < d.coeffs.len() {
            return (Poly::zero(&self.zero), self.clone());
        }
        let inv = d.lc().inv();
        let mut r = self.coeffs.clone();
        let mut qv = vec![self.zero.clone(); self.coeffs.len() - dd];
        for k in (0..qv.len()).rev() {
            let c = r[k + dd].mul(&inv);
            if !c.is_zero_elem() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    r[k + j] = r[k + j].sub(&c.mul(dj));
                }
            }
            qv[k] = c;
        }
        r.truncate(dd);
        (Poly::new(qv, self.zero.clone()), Poly::new(r, self.zero.clone()))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Exact quotient; `None` if the division leaves a remainder.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().inv())
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns (g, s, t) with s·self + t·o = g, g monic.
    pub fn xgcd(&self, o: &Self) -> (Self, Self, Self) {
        let z = &self.zero;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(z), Poly::zero(z));
        let (mut t0, mut t1) = (Poly::zero(z), Poly::one(z));
        while !r1.is_zero() {
            let (qq, r) = r0.divrem(&r1);
            r0 = r1;
            r1 = r;
            let s = s0.sub(&qq.mul(&s1));
            s0 = s1;
            s1 = s;
            let t = t0.sub(&qq.mul(&t1));
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let k = r0.lc().inv();
        (r0.scale(&k), s0.scale(&k), t0.scale(&k))
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = self.zero.clone();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Evaluate at a polynomial argument.
    pub fn compose(&self, p: &Self) -> Self {
        let mut acc = Poly::zero(&self.zero);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(p).add(&Poly::constant(c.clone()));
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&c.from_q(&q(i as i64))))
            .collect();
        Poly::new(c, self.zero.clone())
    }

    /// Squarefree part (monic).
    pub fn squarefree(&self) -> Self {
        if self.deg_or_zero() == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).unwrap().monic()
    }

    pub fn map<G: Field>(&self, zero: &G, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.coeffs.iter().map(f).collect(), zero.clone())
    }

    /// Resultant via the Euclidean remainder sequence.
    pub fn resultant(&self, o: &Self) -> F {
        let z = self.zero.clone();
        if self.is_zero() || o.is_zero() {
            return z;
        }
        let mut a = self.clone();
        let mut b = o.clone();
        let mut res = z.one_like();
        loop {
            let da = a.degree().unwrap();
            let db = match b.degree() {
                None => return z,
                Some(d) => d,
            };
            if db == 0 {
                let lb = b.lc();
                let mut p = z.one_like();
                for _ in 0..da {
                    p = p.mul(&lb);
                }
                return res.mul(&p);
            }
            let r = a.rem(&b);
            if r.is_zero() {
                return z;
            }
            let dr = r.degree().unwrap();
            // res(a,b) = (-1)^{da db} lc(b)^{da - dr} res(b, r)
            if (da * db) % 2 == 1 {
                res = res.neg();
            }
            let lb = b.lc();
            for _ in 0..(da - dr) {
                res = res.mul(&lb);
            }
            a = b;
            b = r;
        }
    }
}

// ---- Rational polynomials ----

pub type QPoly = Poly<Q>;

pub fn qpoly(c: &[i64]) -> QPoly {
    Poly::new(c.iter().map(|&v| q(v)).collect(), Q::zero())
}

pub fn qpoly_from(c: Vec<Q>) -> QPoly {
    Poly::new(c, Q::zero())
}

/// Primitive integer polynomial proportional to `p` with positive leading coefficient.
pub fn primitive_int(p: &QPoly) -> Vec<BigInt> {
    if p.is_zero() {
        return vec![];
    }
    let l = p.coeffs().iter().fold(BigInt::one(), |a, c| a.lcm(c.denom()));
    let mut v: Vec<BigInt> = p.coeffs().iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = v.iter().fold(BigInt::zero(), |a, c| a.gcd(c));
    for c in v.iter_mut() {
        *c /= &g;
    }
    if v.last().unwrap().is_negative() {
        for c in v.iter_mut() {
            *c = -c.clone();
        }
    }
    v
}

pub fn from_int_coeffs(v: &[BigInt]) -> QPoly {
    qpoly_from(v.iter().map(|c| BigRational::from_integer(c.clone())).collect())
}

/// Content-normalised rational polynomial (primitive integer, positive lc).
pub fn normalize_q(p: &QPoly) -> QPoly {
    from_int_coeffs(&primitive_int(p))
}

/// Factorization over ℚ into irreducible primitive integer polynomials with multiplicities.
/// Constant factors are dropped.
pub fn factor_q(p: &QPoly) -> Vec<(QPoly, u32)> {
    use algebraics::polynomial::Polynomial;
    if p.deg_or_zero() == 0 {
        return vec![];
    }
    let ip: Polynomial<BigInt> = primitive_int(p).into();
    let f = ip.factor();
    let mut out: Vec<(QPoly, u32)> = f
        .polynomial_factors
        .into_iter()
        .map(|pf| {
            let coeffs: Vec<BigInt> = pf.polynomial.into_coefficients();
            (normalize_q(&from_int_coeffs(&coeffs)), pf.power as u32)
        })
        .filter(|(p, _)| p.deg_or_zero() > 0)
        .collect();
    out.sort_by(|a, b| poly_order(&a.0, &b.0));
    out
}

/// Deterministic total order: by degree, then coefficients from the top.
pub fn poly_order(a: &QPoly, b: &QPoly) -> std::cmp::Ordering {
    a.deg_or_zero().cmp(&b.deg_or_zero()).then_with(|| {
        for i in (0..=a.deg_or_zero()).rev() {
            let c = a.coeff(i).cmp(&b.coeff(i));
            if c != std::cmp::Ordering::Equal {
                return c;
            }
        }
        std::cmp::Ordering::Equal
    })
}

/// Rational roots (distinct), sorted.
pub fn rational_roots(p: &QPoly) -> Vec<Q> {
    let mut r: Vec<Q> = factor_q(p)
        .into_iter()
        .filter(|(f, _)| f.degree() == Some(1))
        .map(|(f, _)| -(f.coeff(0) / f.coeff(1)))
        .collect();
    r.sort();
    r
}

/// Newton interpolation through (x_i, y_i).
pub fn interpolate<F: Field>(xs: &[F], ys: &[F]) -> Poly<F> {
    assert_eq!(xs.len(), ys.len());
    assert!(!xs.is_empty());
    let z = xs[0].zero_like();
    let n = xs.len();
    let mut dd: Vec<F> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = dd[i].sub(&dd[i - 1]).div(&xs[i].sub(&xs[i - j]));
        }
    }
    let mut p = Poly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        let lin = Poly::new(vec![xs[i].neg(), z.one_like()], z.clone());
        p = p.mul(&lin).add(&Poly::constant(dd[i].clone()));
    }
    p
}

/// Render with variable name, highest degree first.
pub fn fmt_qpoly(p: &QPoly, var: &str) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for i in (0..p.coeffs().len()).rev() {
        let c = p.coeff(i);
        if Zero::is_zero(&c) {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if mono.is_empty() {
            s.push_str(&a.to_string());
        } else if One::is_one(&a) {
            s.push_str(&mono);
        } else {
            s.push_str(&format!("{a}*{mono}"));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_and_gcd() {
        let a = qpoly(&[-1, 0, 1]); // x^2 - 1
        let b = qpoly(&[1, 1]);
        let (qq, r) = a.divrem(&b);
        assert_eq!(qq, qpoly(&[-1, 1]));
        assert!(r.is_zero());
        let g = qpoly(&[-1, 0, 0, 1]).gcd(&a);
        assert_eq!(g, qpoly(&[-1, 1]));
    }

    #[test]
    fn xgcd_identity() {
        let a = qpoly(&[2, 0, 1]);
        let b = qpoly(&[1, 3]);
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
        assert_eq!(g, qpoly(&[1]));
    }

    #[test]
    fn resultant_matches_root_product() {
        // res(x^2 - 2, x - 3) = (3)^2 - 2 up to sign convention: prod over roots of a of b(r)
        let a = qpoly(&[-2, 0, 1]);
        let b = qpoly(&[-3, 1]);
        assert_eq!(a.resultant(&b), q(7));
        let c = qpoly(&[1, 0, 1]);
        let d = qpoly(&[-1, 0, 1]);
        assert_eq!(c.resultant(&d), q(4));
    }

    #[test]
    fn factor_example() {
        // (x^2 - 2)(x - 3)^2 (3x - 4)
        let p = qpoly(&[-2, 0, 1]).mul(&qpoly(&[-3, 1]).pow(2)).mul(&qpoly(&[-4, 3]));
        let f = factor_q(&p);
        assert_eq!(f.len(), 3);
        assert!(f.contains(&(qpoly(&[-3, 1]), 2)));
        assert!(f.contains(&(qpoly(&[-4, 3]), 1)));
        assert_eq!(rational_roots(&p), vec![qr(4, 3), q(3)]);
    }

    #[test]
    fn interpolation_recovers() {
        let p = qpoly(&[5, -3, 0, 7]);
        let xs: Vec<Q> = (0..4).map(q).collect();
        let ys: Vec<Q> = xs.iter().map(|x| p.eval(x)).collect();
        assert_eq!(interpolate(&xs, &ys), p);
    }

    #[test]
    fn format() {
        assert_eq!(fmt_qpoly(&qpoly(&[16, -24, 9]), "L"), "9*L^2 - 24*L + 16");
    }
}
