//! Bivariate polynomials in (X, Λ).

use crate::numbers::numfield::Nf;
use crate::numbers::poly::{Field, Poly, QPoly, Q};
use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Sparse polynomial over ℚ: (deg_X, deg_Λ) ↦ coefficient, zero coefficients never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BivariatePolynomial {
    terms: BTreeMap<(u32, u32), Q>,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), Q)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in it {
            p.add_term(k, c);
        }
        p
    }

    pub fn add_term(&mut self, k: (u32, u32), c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), Q> {
        &self.terms
    }

    pub fn coeff(&self, i: u32, j: u32) -> Q {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn deg_lambda(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }

    /// Total degree in X and Λ together.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0 + k.1).max()
    }

    /// Coefficient of X^i as a polynomial in Λ.
    pub fn x_coeff(&self, i: u32) -> QPoly {
        let mut v = Vec::new();
        for (&(a, b), c) in &self.terms {
            if a == i {
                if v.len() <= b as usize {
                    v.resize(b as usize + 1, Q::zero());
                }
                v[b as usize] = c.clone();
            }
        }
        Poly::new(v, Q::zero())
    }

    /// Leading coefficient in X is the constant 1.
    pub fn is_monic_in_x(&self) -> bool {
        match self.deg_x() {
            None => false,
            Some(d) => {
                let l = self.x_coeff(d);
                l.degree() == Some(0) && l.coeff(0).is_one()
            }
        }
    }

    /// Specialise Λ to a field element, giving a polynomial in X.
    pub fn specialize_lambda<F: Field>(&self, lambda: &F) -> Poly<F> {
        let z = lambda.zero_like();
        let dx = self.deg_x().unwrap_or(0) as usize;
        let dl = self.deg_lambda().unwrap_or(0) as usize;
        let mut pw = vec![lambda.one_like()];
        for k in 1..=dl {
            pw.push(pw[k - 1].mul(lambda));
        }
        let mut c = vec![z.clone(); dx + 1];
        for (&(a, b), v) in &self.terms {
            c[a as usize] = c[a as usize].add(&pw[b as usize].mul(&lambda.from_q(v)));
        }
        Poly::new(c, z)
    }

    pub fn eval<F: Field>(&self, x: &F, lambda: &F) -> F {
        self.specialize_lambda(lambda).eval(x)
    }

    pub fn eval_nf(&self, x: &Nf, lambda: &Nf) -> Nf {
        self.eval(x, lambda)
    }

    pub fn scale(&self, k: &Q) -> Self {
        Self::from_terms(self.terms.iter().map(|(a, c)| (*a, c * k)))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.add_term(*k, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Q::one()))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for (&(a, b), c) in &self.terms {
            for (&(d, e), f) in &o.terms {
                r.add_term((a + d, b + e), c * f);
            }
        }
        r
    }
}

impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mono = match (i, j) {
                (0, 0) => String::new(),
                _ => {
                    let mut s = Vec::new();
                    if i > 0 {
                        s.push(if i == 1 { "X".to_string() } else { format!("X^{i}") });
                    }
                    if j > 0 {
                        s.push(if j == 1 { "L".to_string() } else { format!("L^{j}") });
                    }
                    s.join("*")
                }
            };
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        Ok(())
    }
}

/// Dense integer polynomial in X with coefficients in ℤ[Λ]; row i holds the Λ-coefficients of X^i.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IPoly2 {
    pub rows: Vec<Vec<BigInt>>,
}

fn trim_row(r: &mut Vec<BigInt>) {
    while r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
}

impl IPoly2 {
    pub fn new(mut rows: Vec<Vec<BigInt>>) -> Self {
        for r in rows.iter_mut() {
            trim_row(r);
        }
        while rows.last().is_some_and(|r| r.is_empty()) {
            rows.pop();
        }
        IPoly2 { rows }
    }

    pub fn from_small(rows: &[&[i64]]) -> Self {
        IPoly2::new(rows.iter().map(|r| r.iter().map(|&c| BigInt::from(c)).collect()).collect())
    }

    pub fn constant(c: i64) -> Self {
        IPoly2::new(vec![vec![BigInt::from(c)]])
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn deg_x(&self) -> Option<usize> {
        self.rows.len().checked_sub(1)
    }

    pub fn deg_lambda(&self) -> Option<usize> {
        self.rows.iter().filter_map(|r| r.len().checked_sub(1)).max()
    }

    pub fn term_count(&self) -> usize {
        self.rows.iter().map(|r| r.iter().filter(|c| !c.is_zero()).count()).sum()
    }

    pub fn max_bits(&self) -> u64 {
        self.rows.iter().flat_map(|r| r.iter().map(|c| c.bits())).max().unwrap_or(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.rows.len().max(o.rows.len());
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.rows.get(i).map(|v| v.as_slice()).unwrap_or(&[]);
            let b = o.rows.get(i).map(|v| v.as_slice()).unwrap_or(&[]);
            let m = a.len().max(b.len());
            let mut r = Vec::with_capacity(m);
            for j in 0..m {
                match (a.get(j), b.get(j)) {
                    (Some(x), Some(y)) => r.push(x + y),
                    (Some(x), None) => r.push(x.clone()),
                    (None, Some(y)) => r.push(y.clone()),
                    (None, None) => unreachable!(),
                }
            }
            rows.push(r);
        }
        IPoly2::new(rows)
    }

    pub fn neg(&self) -> Self {
        IPoly2 { rows: self.rows.iter().map(|r| r.iter().map(|c| -c).collect()).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        IPoly2::new(self.rows.iter().map(|r| r.iter().map(|c| c * k).collect()).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return IPoly2::default();
        }
        if self.term_count().min(o.term_count()) <= 16 {
            return self.mul_schoolbook(o);
        }
        self.mul_kronecker(o)
    }

    pub fn mul_schoolbook(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return IPoly2::default();
        }
        let dx = self.rows.len() + o.rows.len() - 1;
        let dl = self.deg_lambda().unwrap() + o.deg_lambda().unwrap() + 1;
        let mut rows = vec![vec![BigInt::zero(); dl]; dx];
        for (i, ra) in self.rows.iter().enumerate() {
            for (j, ca) in ra.iter().enumerate() {
                if ca.is_zero() {
                    continue;
                }
                for (k, rb) in o.rows.iter().enumerate() {
                    for (l, cb) in rb.iter().enumerate() {
                        if !cb.is_zero() {
                            rows[i + k][j + l] += ca * cb;
                        }
                    }
                }
            }
        }
        IPoly2::new(rows)
    }

    /// Multiply by packing both operands into single integers (Kronecker substitution).
    pub fn mul_kronecker(&self, o: &Self) -> Self {
        let stride = self.deg_lambda().unwrap() + o.deg_lambda().unwrap() + 1;
        let terms = self.term_count().min(o.term_count()) as u64;
        let w = (self.max_bits() + o.max_bits() + 64 - terms.leading_zeros() as u64 + 2) as usize;
        let a = pack(self, stride, w);
        let b = pack(o, stride, w);
        let prod = a * b;
        let nx = self.rows.len() + o.rows.len() - 1;
        unpack(&prod, stride, w, nx)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = IPoly2::constant(1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact division by a divisor whose X-leading coefficient is a nonzero integer constant.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let dd = d.deg_x()?;
        let lcrow = &d.rows[dd];
        if lcrow.len() != 1 {
            return None;
        }
        let lc = &lcrow[0];
        let mut rem = self.clone();
        if rem.is_zero() {
            return Some(IPoly2::default());
        }
        let rd = rem.deg_x().unwrap();
        if rd < dd {
            return None;
        }
        let mut quot = vec![Vec::new(); rd - dd + 1];
        while let Some(r) = rem.deg_x() {
            if r < dd {
                return None;
            }
            let mut qrow = Vec::with_capacity(rem.rows[r].len());
            for c in &rem.rows[r] {
                let (qq, rr) = num_integer::Integer::div_rem(c, lc);
                if !rr.is_zero() {
                    return None;
                }
                qrow.push(qq);
            }
            let mut mono = vec![Vec::new(); r - dd + 1];
            mono[r - dd] = qrow.clone();
            let sub = IPoly2::new(mono).mul(d);
            rem = rem.sub(&sub);
            quot[r - dd] = qrow;
            if rem.deg_x() == Some(r) {
                return None;
            }
        }
        Some(IPoly2::new(quot))
    }

    pub fn to_bivariate(&self) -> BivariatePolynomial {
        let mut terms = BTreeMap::new();
        for (i, r) in self.rows.iter().enumerate() {
            for (j, c) in r.iter().enumerate() {
                if !c.is_zero() {
                    terms.insert((i as u32, j as u32), BigRational::from_integer(c.clone()));
                }
            }
        }
        BivariatePolynomial { terms }
    }

    /// Specialise Λ to an exact value.
    pub fn specialize_lambda<F: Field>(&self, lambda: &F) -> Poly<F> {
        let z = lambda.zero_like();
        let coeffs: Vec<F> = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = z.clone();
                for c in r.iter().rev() {
                    acc = acc.mul(lambda).add(&lambda.from_q(&BigRational::from_integer(c.clone())));
                }
                acc
            })
            .collect();
        Poly::new(coeffs, z)
    }

    /// Specialise X to an exact rational, giving a polynomial in Λ.
    pub fn specialize_x(&self, x: &Q) -> QPoly {
        let mut acc = Poly::zero(&Q::zero());
        for r in self.rows.iter().rev() {
            let row = Poly::new(r.iter().map(|c| BigRational::from_integer(c.clone())).collect(), Q::zero());
            acc = acc.scale(x).add(&row);
        }
        acc
    }
}

fn or_bits(limbs: &mut [u64], off: usize, digits: &[u64]) {
    let word = off / 64;
    let sh = off % 64;
    for (k, &d) in digits.iter().enumerate() {
        limbs[word + k] |= d << sh;
        if sh != 0 {
            limbs[word + k + 1] |= d >> (64 - sh);
        }
    }
}

fn pack(p: &IPoly2, stride: usize, w: usize) -> BigInt {
    let slots = p.rows.len() * stride;
    let nlimbs = (slots * w).div_ceil(64) + 2;
    let mut pos = vec![0u64; nlimbs];
    let mut neg = vec![0u64; nlimbs];
    let mut any_neg = false;
    for (i, r) in p.rows.iter().enumerate() {
        for (j, c) in r.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let off = (i * stride + j) * w;
            let (s, mag) = c.to_u64_digits();
            if s == Sign::Minus {
                any_neg = true;
                or_bits(&mut neg, off, &mag);
            } else {
                or_bits(&mut pos, off, &mag);
            }
        }
    }
    let pv = BigInt::from_biguint(Sign::Plus, biguint_from_u64(pos));
    if any_neg {
        pv - BigInt::from_biguint(Sign::Plus, biguint_from_u64(neg))
    } else {
        pv
    }
}

fn biguint_from_u64(v: Vec<u64>) -> BigUint {
    let mut d32 = Vec::with_capacity(v.len() * 2);
    for x in v {
        d32.push(x as u32);
        d32.push((x >> 32) as u32);
    }
    BigUint::new(d32)
}

fn get_bits(limbs: &[u64], off: usize, w: usize) -> BigUint {
    let n = w.div_ceil(64);
    let mut out = vec![0u64; n];
    let word = off / 64;
    let sh = off % 64;
    for (k, o) in out.iter_mut().enumerate() {
        let lo = limbs.get(word + k).copied().unwrap_or(0);
        let hi = limbs.get(word + k + 1).copied().unwrap_or(0);
        *o = if sh == 0 { lo } else { (lo >> sh) | (hi << (64 - sh)) };
    }
    let extra = n * 64 - w;
    if extra > 0 {
        let last = out.last_mut().unwrap();
        *last &= u64::MAX >> extra;
    }
    biguint_from_u64(out)
}

fn unpack(v: &BigInt, stride: usize, w: usize, nx: usize) -> IPoly2 {
    let (sign, mag) = v.to_u64_digits();
    let full = BigUint::one() << w;
    let half = BigUint::one() << (w - 1);
    let mut carry = BigUint::zero();
    let mut rows = vec![Vec::with_capacity(stride); nx];
    for (k, slot) in (0..nx * stride).enumerate() {
        let mut c = get_bits(&mag, slot * w, w);
        c += &carry;
        let val = if c >= half {
            carry = BigUint::one();
            BigInt::from_biguint(Sign::Plus, c) - BigInt::from_biguint(Sign::Plus, full.clone())
        } else {
            carry = BigUint::zero();
            BigInt::from_biguint(Sign::Plus, c)
        };
        let val = if sign == Sign::Minus { -val } else { val };
        rows[k / stride].push(val);
    }
    IPoly2::new(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_poly() -> impl Strategy<Value = IPoly2> {
        prop::collection::vec(prop::collection::vec(-1_000_000_000_000i64..1_000_000_000_000, 0..8), 0..8)
            .prop_map(|rows| IPoly2::new(rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect()))
    }

    proptest! {
        #[test]
        fn kronecker_matches_schoolbook(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            prop_assert_eq!(a.mul_kronecker(&b), a.mul_schoolbook(&b));
        }

        #[test]
        fn exact_division_roundtrip(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            // Make the divisor's X-leading coefficient a constant.
            let mut rows = b.rows.clone();
            rows.push(vec![BigInt::from(3)]);
            let d = IPoly2::new(rows);
            let p = a.mul(&d);
            prop_assert_eq!(p.div_exact(&d), Some(a));
        }
    }

    #[test]
    fn display_and_degrees() {
        let p = IPoly2::from_small(&[&[0, -1], &[], &[1]]).to_bivariate();
        assert_eq!(p.to_string(), "X^2 - L");
        assert_eq!(p.deg_x(), Some(2));
        assert_eq!(p.deg_lambda(), Some(1));
        assert!(p.is_monic_in_x());
    }

    #[test]
    fn signed_unpack_negative_product() {
        let a = IPoly2::from_small(&[&[-5, 7, -9, 11, -13, 15, -17, 19, -21, 23, -25, 27, -29, 31, -33, 35, -37]]);
        let b = IPoly2::from_small(&[&[-1, -2, -3, -4, -5, -6, -7, -8, -9, -10, -11, -12, -13, -14, -15, -16, -17]]);
        assert_eq!(a.mul_kronecker(&b), a.mul_schoolbook(&b));
        assert_eq!(a.neg().mul_kronecker(&b), a.neg().mul_schoolbook(&b));
    }
}
