//! Number fields ℚ(θ) = ℚ[t]/(m) and polynomial algebra over them.

use super::linalg::{det_q, QMat};
use super::poly::{factor_q, interpolate, normalize_q, q, qpoly_from, Field, Poly, QPoly, Q};
use super::roots::{eval_at_root, isolate, refine_disc, RootDisc};
use crate::error::Result;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use std::sync::{Arc, OnceLock};

/// ℚ[t]/(m) for a monic irreducible `m`.
pub struct NumberField {
    min: QPoly,
    embeddings: OnceLock<Vec<RootDisc>>,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[t]/({})", super::poly::fmt_qpoly(&self.min, "t"))
    }
}

impl PartialEq for NumberField {
    fn eq(&self, o: &Self) -> bool {
        self.min == o.min
    }
}

pub type FieldRef = Arc<NumberField>;

impl NumberField {
    /// Field defined by an irreducible polynomial (made monic). Irreducibility is the caller's duty.
    pub fn new(min: &QPoly) -> FieldRef {
        assert!(min.deg_or_zero() >= 1, "defining polynomial must have positive degree");
        Arc::new(NumberField { min: min.monic(), embeddings: OnceLock::new() })
    }

    /// ℚ itself, presented as ℚ[t]/(t).
    pub fn rational() -> FieldRef {
        NumberField::new(&qpoly_from(vec![Q::zero(), Q::one()]))
    }

    pub fn degree(&self) -> usize {
        self.min.deg_or_zero()
    }

    pub fn min_poly(&self) -> &QPoly {
        &self.min
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    /// Certified complex embeddings (roots of the defining polynomial).
    pub fn embeddings(&self) -> &[RootDisc] {
        self.embeddings.get_or_init(|| isolate(&self.min).expect("root isolation of defining polynomial"))
    }
}

/// Element of a number field, stored as a polynomial in the generator of degree < [K:ℚ].
#[derive(Clone)]
pub struct Nf {
    pub field: FieldRef,
    pub c: QPoly,
}

impl fmt::Debug for Nf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Nf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.is_rational() {
            write!(f, "{}", self.c.coeff(0))
        } else {
            write!(f, "{}", super::poly::fmt_qpoly(&self.c, "t"))
        }
    }
}

impl PartialEq for Nf {
    fn eq(&self, o: &Self) -> bool {
        (Arc::ptr_eq(&self.field, &o.field) || *self.field == *o.field) && self.c == o.c
    }
}

impl Nf {
    pub fn new(field: &FieldRef, c: QPoly) -> Nf {
        let c = if c.deg_or_zero() >= field.degree() { c.rem(&field.min) } else { c };
        Nf { field: field.clone(), c }
    }

    pub fn from_rational(field: &FieldRef, v: Q) -> Nf {
        Nf { field: field.clone(), c: QPoly::constant(v) }
    }

    pub fn from_int(field: &FieldRef, v: i64) -> Nf {
        Nf::from_rational(field, q(v))
    }

    /// The generator t.
    pub fn gen(field: &FieldRef) -> Nf {
        Nf::new(field, qpoly_from(vec![Q::zero(), Q::one()]))
    }

    /// Rational value if the element lies in ℚ.
    pub fn to_rational(&self) -> Option<Q> {
        match self.c.degree() {
            None => Some(Q::zero()),
            Some(0) => Some(self.c.coeff(0)),
            _ => None,
        }
    }

    pub fn pow(&self, mut e: u64) -> Nf {
        let mut base = self.clone();
        let mut acc = self.one_like();
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

    /// Matrix of multiplication by `self` in the power basis (column j = self·t^j).
    pub fn mult_matrix(&self) -> QMat {
        let d = self.field.degree();
        let mut cols: Vec<Vec<Q>> = Vec::with_capacity(d);
        let mut cur = self.clone();
        let t = Nf::gen(&self.field);
        for _ in 0..d {
            cols.push((0..d).map(|i| cur.c.coeff(i)).collect());
            cur = cur.mul(&t);
        }
        (0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect()
    }

    pub fn norm(&self) -> Q {
        if self.field.is_rational() {
            return self.c.coeff(0);
        }
        det_q(&self.mult_matrix())
    }

    pub fn trace(&self) -> Q {
        let m = self.mult_matrix();
        (0..m.len()).fold(Q::zero(), |a, i| a + &m[i][i])
    }

    /// Characteristic polynomial over ℚ (monic, degree [K:ℚ]).
    pub fn charpoly(&self) -> QPoly {
        let d = self.field.degree();
        let m = self.mult_matrix();
        let xs: Vec<Q> = (0..=d as i64).map(q).collect();
        let ys: Vec<Q> = xs
            .iter()
            .map(|x| {
                let a: QMat = (0..d)
                    .map(|i| (0..d).map(|j| if i == j { x - &m[i][j] } else { -m[i][j].clone() }).collect())
                    .collect();
                det_q(&a)
            })
            .collect();
        interpolate(&xs, &ys)
    }

    /// Minimal polynomial over ℚ as a primitive integer-normalised polynomial.
    pub fn minpoly(&self) -> QPoly {
        if let Some(r) = self.to_rational() {
            return normalize_q(&qpoly_from(vec![-r, Q::one()]));
        }
        let cp = self.charpoly();
        for (f, _) in factor_q(&cp) {
            if self.eval_qpoly(&f).is_zero_elem() {
                return f;
            }
        }
        unreachable!("charpoly factor must annihilate the element")
    }

    pub fn eval_qpoly(&self, p: &QPoly) -> Nf {
        let mut acc = self.zero_like();
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self).add(&self.from_q(c));
        }
        acc
    }

    /// Certified value in the i-th complex embedding: centre and error radius.
    pub fn embed(&self, i: usize) -> (Complex64, f64) {
        eval_at_root(&self.c, &self.field.embeddings()[i])
    }

    /// Same as [`Nf::embed`] with the root disc refined to `bits` bits first.
    pub fn embed_refined(&self, i: usize, bits: u32) -> (Complex64, f64) {
        let d = &self.field.embeddings()[i];
        let r = refine_disc(&self.field.min, d, bits).unwrap_or_else(|| d.clone());
        eval_at_root(&self.c, &r)
    }
}

impl Field for Nf {
    fn zero_like(&self) -> Self {
        Nf { field: self.field.clone(), c: QPoly::zero(&Q::zero()) }
    }
    fn one_like(&self) -> Self {
        Nf { field: self.field.clone(), c: QPoly::one(&Q::zero()) }
    }
    fn is_zero_elem(&self) -> bool {
        self.c.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        Nf { field: self.field.clone(), c: self.c.add(&o.c) }
    }
    fn sub(&self, o: &Self) -> Self {
        Nf { field: self.field.clone(), c: self.c.sub(&o.c) }
    }
    fn mul(&self, o: &Self) -> Self {
        if self.field.is_rational() {
            return Nf { field: self.field.clone(), c: QPoly::constant(self.c.coeff(0) * o.c.coeff(0)) };
        }
        Nf::new(&self.field, self.c.mul(&o.c))
    }
    fn neg(&self) -> Self {
        Nf { field: self.field.clone(), c: self.c.neg() }
    }
    fn inv(&self) -> Self {
        assert!(!self.is_zero_elem(), "inverse of zero");
        if self.field.is_rational() {
            return Nf { field: self.field.clone(), c: QPoly::constant(self.c.coeff(0).recip()) };
        }
        let (g, s, _) = self.c.xgcd(&self.field.min);
        debug_assert_eq!(g.degree(), Some(0));
        Nf::new(&self.field, s)
    }
    fn from_q(&self, v: &BigRational) -> Self {
        Nf { field: self.field.clone(), c: QPoly::constant(v.clone()) }
    }
    fn is_one_elem(&self) -> bool {
        self.c.degree() == Some(0) && self.c.coeff(0).is_one()
    }
}

pub type NfPoly = Poly<Nf>;

/// Lift a rational polynomial into K[x].
pub fn lift_qpoly(field: &FieldRef, p: &QPoly) -> NfPoly {
    let z = Nf::from_int(field, 0);
    p.map(&z, |c| Nf::from_rational(field, c.clone()))
}

/// Norm N_{K/ℚ}(P) ∈ ℚ[x] of a polynomial over K, by evaluation and interpolation.
pub fn norm_poly(p: &NfPoly) -> QPoly {
    let field = &p.zero_elem().field;
    let d = field.degree();
    if p.is_zero() {
        return QPoly::zero(&Q::zero());
    }
    if d == 1 {
        return p.map(&Q::zero(), |c| c.c.coeff(0));
    }
    let n = p.degree().unwrap() * d;
    let xs: Vec<Q> = (0..=n as i64).map(q).collect();
    let ys: Vec<Q> = xs
        .iter()
        .map(|x| p.eval(&Nf::from_rational(field, x.clone())).norm())
        .collect();
    interpolate(&xs, &ys)
}

/// Substitute x ↦ x + c in a polynomial over K.
pub fn shift_poly(p: &NfPoly, c: &Nf) -> NfPoly {
    let lin = Poly::new(vec![c.clone(), c.one_like()], c.zero_like());
    p.compose(&lin)
}

fn is_squarefree_q(p: &QPoly) -> bool {
    p.gcd(&p.derivative()).deg_or_zero() == 0
}

/// Factor a polynomial over K into monic irreducibles with multiplicities (Trager).
pub fn factor_over(p: &NfPoly) -> Vec<(NfPoly, u32)> {
    let Some(deg) = p.degree() else { return vec![] };
    if deg == 0 {
        return vec![];
    }
    let field = p.zero_elem().field.clone();
    let sqf = p.exact_div(&p.gcd(&p.derivative())).unwrap().monic();
    let alpha = Nf::gen(&field);
    let mut irreducibles: Vec<NfPoly> = Vec::new();
    if sqf.degree() == Some(1) {
        irreducibles.push(sqf.clone());
    } else {
        for k in shifts() {
            let shift = alpha.scale_int(k);
            let sk = shift_poly(&sqf, &shift.neg());
            let nrm = norm_poly(&sk);
            if !is_squarefree_q(&nrm) {
                continue;
            }
            for (g, _) in factor_q(&nrm) {
                let h = sk.gcd(&lift_qpoly(&field, &g));
                if h.deg_or_zero() > 0 {
                    irreducibles.push(shift_poly(&h, &shift).monic());
                }
            }
            break;
        }
    }
    let mut out = Vec::new();
    for f in irreducibles {
        let mut m = 0;
        let mut rest = p.clone();
        while let Some(qq) = rest.exact_div(&f) {
            m += 1;
            rest = qq;
            if rest.deg_or_zero() == 0 {
                break;
            }
        }
        out.push((f, m));
    }
    out
}

fn shifts() -> impl Iterator<Item = i64> {
    (0..).map(|i: i64| if i % 2 == 0 { i / 2 } else { -(i + 1) / 2 }).take(64)
}

impl Nf {
    pub fn scale_int(&self, k: i64) -> Nf {
        self.mul(&Nf::from_int(&self.field, k))
    }
}

/// Roots of a polynomial over K lying in K, sorted deterministically.
pub fn roots_in_field(p: &NfPoly) -> Vec<Nf> {
    let mut r: Vec<Nf> = factor_over(p)
        .into_iter()
        .filter(|(f, _)| f.degree() == Some(1))
        .map(|(f, _)| f.coeff(0).neg().div(&f.coeff(1)))
        .collect();
    r.sort_by(|a, b| nf_order(a, b));
    r
}

/// Deterministic order on elements of the same field.
pub fn nf_order(a: &Nf, b: &Nf) -> std::cmp::Ordering {
    let n = a.field.degree();
    for i in (0..n).rev() {
        let c = a.c.coeff(i).cmp(&b.c.coeff(i));
        if c != std::cmp::Ordering::Equal {
            return c;
        }
    }
    std::cmp::Ordering::Equal
}

/// Square root inside K, if one exists.
pub fn sqrt_in_field(a: &Nf) -> Option<Nf> {
    if a.is_zero_elem() {
        return Some(a.clone());
    }
    if let Some(r) = a.to_rational() {
        if let Some(s) = rational_sqrt(&r) {
            return Some(Nf::from_rational(&a.field, s));
        }
        if a.field.is_rational() {
            return None;
        }
    }
    let z = a.zero_like();
    let p = Poly::new(vec![a.neg(), z.clone(), z.one_like()], z);
    roots_in_field(&p).into_iter().next_back()
}

pub fn rational_sqrt(r: &Q) -> Option<Q> {
    use num_traits::Signed;
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| BigRational::new(n, d))
}

/// An extension L = K[x]/(f) presented absolutely, with the embedding of K.
#[derive(Clone, Debug)]
pub struct Extension {
    pub field: FieldRef,
    /// Image in L of the generator of K.
    pub alpha: Nf,
    /// A root of f in L.
    pub beta: Nf,
}

impl Extension {
    /// Map an element of K into L.
    pub fn embed(&self, a: &Nf) -> Nf {
        self.alpha.eval_qpoly(&a.c)
    }
}

/// Adjoin a root of an irreducible polynomial `f` over K.
pub fn extend(f: &NfPoly) -> Result<Extension> {
    let k = f.zero_elem().field.clone();
    let deg = f.degree().unwrap_or(0);
    assert!(deg >= 1);
    if deg == 1 {
        let root = f.coeff(0).neg().div(&f.coeff(1));
        return Ok(Extension { field: k.clone(), alpha: Nf::gen(&k), beta: root });
    }
    let alpha = Nf::gen(&k);
    for s in shifts() {
        // γ = β + sα has minimal polynomial N(f(x - sα)).
        let fs = shift_poly(f, &alpha.scale_int(-s));
        let nrm = norm_poly(&fs);
        if !is_squarefree_q(&nrm) {
            continue;
        }
        let l = NumberField::new(&normalize_q(&nrm));
        let gamma = Nf::gen(&l);
        // α_L is the common root of m_K(z) and f(γ - s z) in L[z].
        let zl = Nf::from_int(&l, 0);
        let mk = lift_qpoly(&l, k.min_poly());
        let lin = Poly::new(vec![gamma.clone(), Nf::from_int(&l, -s)], zl.clone());
        let mut fz = Poly::zero(&zl);
        let mut pw = Poly::one(&zl);
        for i in 0..=deg {
            let ci = f.coeff(i);
            // ci(z) as a polynomial in z over L.
            let cz = ci.c.map(&zl, |v| Nf::from_rational(&l, v.clone()));
            fz = fz.add(&cz.mul(&pw));
            pw = pw.mul(&lin);
        }
        let g = mk.gcd(&fz);
        if g.degree() != Some(1) {
            continue;
        }
        let alpha_l = g.coeff(0).neg();
        let beta = gamma.sub(&alpha_l.scale_int(s));
        return Ok(Extension { field: l, alpha: alpha_l, beta });
    }
    Err(crate::error::Error::Precision("no primitive element found among small shifts".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::poly::qpoly;

    fn k2() -> FieldRef {
        NumberField::new(&qpoly(&[-2, 0, 1]))
    }

    #[test]
    fn arithmetic_in_q_sqrt2() {
        let k = k2();
        let t = Nf::gen(&k);
        assert_eq!(t.mul(&t), Nf::from_int(&k, 2));
        let a = t.add(&Nf::from_int(&k, 1));
        assert_eq!(a.mul(&a.inv()), a.one_like());
        assert_eq!(a.norm(), q(-1));
        assert_eq!(a.minpoly(), qpoly(&[-1, -2, 1]));
    }

    #[test]
    fn factor_over_extension() {
        let k = k2();
        // x^2 - 2 splits over Q(√2); x^2 - 3 does not.
        let p = lift_qpoly(&k, &qpoly(&[-2, 0, 1]));
        let f = factor_over(&p);
        assert_eq!(f.len(), 2);
        assert!(f.iter().all(|(g, m)| g.degree() == Some(1) && *m == 1));
        let p3 = lift_qpoly(&k, &qpoly(&[-3, 0, 1]));
        assert_eq!(factor_over(&p3).len(), 1);
        assert!(sqrt_in_field(&Nf::from_int(&k, 8)).is_some());
        assert!(sqrt_in_field(&Nf::from_int(&k, 3)).is_none());
    }

    #[test]
    fn extension_tower() {
        let k = k2();
        let f = lift_qpoly(&k, &qpoly(&[-3, 0, 1]));
        let e = extend(&f).unwrap();
        assert_eq!(e.field.degree(), 4);
        assert_eq!(e.beta.mul(&e.beta), Nf::from_int(&e.field, 3));
        assert_eq!(e.alpha.mul(&e.alpha), Nf::from_int(&e.field, 2));
        let s = e.embed(&Nf::gen(&k).add(&Nf::from_int(&k, 1)));
        assert_eq!(s.sub(&e.alpha), Nf::from_int(&e.field, 1));
    }

    #[test]
    fn embeddings_of_sqrt2() {
        let k = k2();
        let t = Nf::gen(&k);
        let vals: Vec<f64> = (0..2).map(|i| t.embed(i).0.re).collect();
        assert!((vals[0] + 2f64.sqrt()).abs() < 1e-12);
        assert!((vals[1] - 2f64.sqrt()).abs() < 1e-12);
    }
}
