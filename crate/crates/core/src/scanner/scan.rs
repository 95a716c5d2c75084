//! Torsion points on curves C ⊂ ℰ: elimination against primitive division
//! polynomials, exact back-substitution and certification.

use super::spec::{CurveSpec, ReducedForm};
use crate::error::{domain, pre, Error, Result};
use crate::legendre::bivariate::IPoly2;
use crate::legendre::curve::{multiply, torsion_order, torsion_order_by_divpoly, LegendreFiber, LegendrePoint};
use crate::legendre::divpoly::primitive_division_poly;
use crate::numbers::arith::factorize_u64;
use crate::numbers::numfield::{extend, factor_over, lift_qpoly, nf_order, Nf, NfPoly, NumberField};
use crate::numbers::poly::{factor_q, fmt_qpoly, interpolate, poly_order, Field, Poly, QPoly, Q};
use crate::numbers::ratfunc::RatFunc;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

/// A torsion point of exact order `order` on C, over the field generated by its coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct TorsionHit {
    pub point: LegendrePoint,
    pub order: u64,
    pub certificate: Certificate,
}

/// Transcript of the exact checks performed on a hit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub on_fiber: bool,
    pub on_curve: bool,
    pub order_by_multiply: Option<u64>,
    pub order_by_divpoly: Option<u64>,
    pub hash: String,
}

impl Certificate {
    pub fn valid_for(&self, order: u64) -> bool {
        self.on_fiber && self.on_curve && self.order_by_multiply == Some(order) && self.order_by_divpoly == Some(order)
    }
}

impl TorsionHit {
    pub fn lambda(&self) -> &Nf {
        &self.point.fiber.lambda
    }

    /// Minimal polynomial of λ over ℚ.
    pub fn lambda_minpoly(&self) -> QPoly {
        normalize(&self.lambda().minpoly())
    }

    pub fn lambda_minpoly_string(&self) -> String {
        fmt_qpoly(&self.lambda_minpoly(), "L")
    }

    pub fn field_string(&self) -> String {
        let k = self.point.fiber.field();
        if k.is_rational() { "Q".into() } else { format!("Q[t]/({})", fmt_qpoly(k.min_poly(), "t")) }
    }

    pub fn coords_strings(&self) -> [String; 3] {
        let p = self.point.projective();
        [p[0].to_string(), p[1].to_string(), p[2].to_string()]
    }

    /// Canonical text hashed into the certificate.
    pub fn canonical_text(&self) -> String {
        let c = self.coords_strings();
        format!("field={};lambda={};X={};Y={};Z={};order={}", self.field_string(), self.lambda(), c[0], c[1], c[2], self.order)
    }

    pub fn record(&self, margin_log: Option<f64>) -> HitRecord {
        HitRecord {
            lambda_minpoly: self.lambda_minpoly_string(),
            lambda: self.lambda().to_string(),
            field: self.field_string(),
            point_coords: self.coords_strings(),
            order: self.order,
            margin_log,
            certificate_hash: self.certificate.hash.clone(),
        }
    }
}

/// Serialized hit.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HitRecord {
    pub lambda_minpoly: String,
    pub lambda: String,
    pub field: String,
    pub point_coords: [String; 3],
    pub order: u64,
    pub margin_log: Option<f64>,
    pub certificate_hash: String,
}

fn normalize(p: &QPoly) -> QPoly {
    crate::numbers::poly::normalize_q(p)
}

fn hash_text(s: &str) -> String {
    let d = Sha256::digest(s.as_bytes());
    d.iter().map(|b| format!("{b:02x}")).collect()
}

/// Re-run every check on a claimed hit from scratch.
pub fn certify(spec: &CurveSpec, point: &LegendrePoint, order: u64) -> Certificate {
    let on_fiber = point.on_curve();
    let on_curve = spec.vanishes_at(&point.fiber.lambda, &point.projective());
    let limit = order.max(1);
    let order_by_multiply = exact_order_by_multiply(point, limit);
    let order_by_divpoly = torsion_order_by_divpoly(point, limit as u32).map(|n| n as u64);
    let probe = TorsionHit {
        point: point.clone(),
        order,
        certificate: Certificate { on_fiber, on_curve, order_by_multiply, order_by_divpoly, hash: String::new() },
    };
    let hash = hash_text(&probe.canonical_text());
    Certificate { hash, ..probe.certificate }
}

/// Order n of P if [n]P = O and [n/p]P ≠ O for every prime p | n, checked for the
/// smallest n ≤ limit returned by repeated addition.
fn exact_order_by_multiply(p: &LegendrePoint, limit: u64) -> Option<u64> {
    let n = torsion_order(p, limit)?;
    if !multiply(n as i64, p).is_identity() {
        return None;
    }
    for (q, _) in factorize_u64(n) {
        if multiply((n / q) as i64, p).is_identity() {
            return None;
        }
    }
    Some(n)
}

/// Re-verify a hit, including its recorded hash.
pub fn recertify(spec: &CurveSpec, hit: &TorsionHit) -> bool {
    let c = certify(spec, &hit.point, hit.order);
    c.valid_for(hit.order) && c == hit.certificate
}

fn make_hit(spec: &CurveSpec, point: LegendrePoint, order: u64) -> Result<TorsionHit> {
    let certificate = certify(spec, &point, order);
    if !certificate.valid_for(order) {
        return Err(Error::Verification(format!("candidate point {point:?} failed certification for order {order}")));
    }
    Ok(TorsionHit { point, order, certificate })
}

#[derive(Clone, Debug, PartialEq)]
pub enum SectionScan {
    Hits(Vec<TorsionHit>),
    /// Points of order N lie on C over every fiber; the witness is the common factor over ℚ(Λ).
    GenericallyTorsion { witness: String },
}

impl SectionScan {
    pub fn hits(&self) -> &[TorsionHit] {
        match self {
            SectionScan::Hits(h) => h,
            SectionScan::GenericallyTorsion { .. } => &[],
        }
    }

    pub fn is_generic(&self) -> bool {
        matches!(self, SectionScan::GenericallyTorsion { .. })
    }
}

/// Res_X(h, G) ∈ ℚ[Λ] for h with constant leading coefficient, by evaluation and interpolation.
pub fn resultant_in_x(h: &IPoly2, g: &IPoly2) -> QPoly {
    let z = Q::zero();
    if g.is_zero() {
        return QPoly::zero(&z);
    }
    let dh = h.deg_x().unwrap_or(0);
    let dg = g.deg_x().unwrap_or(0);
    let bound = dh * g.deg_lambda().unwrap_or(0) + dg * h.deg_lambda().unwrap_or(0);
    let lc_g = QPoly::new(g.rows[dg].iter().map(|c| Q::from_integer(c.clone())).collect(), z.clone());
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut k = 0i64;
    while xs.len() <= bound {
        let lam = Q::from_integer(k.into());
        k += 1;
        // Keep deg_X G fixed so specialisation commutes with the resultant.
        if lc_g.eval(&lam).is_zero() {
            continue;
        }
        let hv = h.specialize_lambda(&lam);
        let gv = g.specialize_lambda(&lam);
        ys.push(hv.resultant(&gv));
        xs.push(lam);
    }
    interpolate(&xs, &ys)
}

fn to_ratfunc(p: &IPoly2) -> Poly<RatFunc> {
    let t = RatFunc::from_poly(crate::numbers::poly::qpoly(&[0, 1]));
    p.specialize_lambda(&t)
}

/// gcd over ℚ(Λ)[X] of h and all norm forms.
fn generic_common_factor(h: &IPoly2, forms: &[ReducedForm]) -> Poly<RatFunc> {
    let mut g = to_ratfunc(h);
    for f in forms {
        g = g.gcd(&to_ratfunc(&f.norm));
        if g.deg_or_zero() == 0 {
            break;
        }
    }
    g
}

fn fmt_ratfunc_poly(p: &Poly<RatFunc>) -> String {
    let monic = p.monic();
    let mut parts = Vec::new();
    for i in (0..monic.coeffs().len()).rev() {
        let c = monic.coeff(i);
        if c.is_zero_elem() {
            continue;
        }
        let cs = if c.is_poly() {
            fmt_qpoly(&c.num, "L")
        } else {
            format!("({})/({})", fmt_qpoly(&c.num, "L"), fmt_qpoly(&c.den, "L"))
        };
        let mono = match i {
            0 => String::new(),
            1 => "X".into(),
            _ => format!("X^{i}"),
        };
        parts.push(match (cs.as_str(), mono.is_empty()) {
            ("1", false) => mono,
            (_, true) => format!("({cs})"),
            _ => format!("({cs})*{mono}"),
        });
    }
    parts.join(" + ")
}

/// All points of exact order N on C, over every fiber of the Legendre family.
pub fn scan_section(spec: &CurveSpec, n: u64) -> Result<SectionScan> {
    if n == 0 {
        return pre("N must be at least 1");
    }
    if n == 1 {
        return scan_identity(spec);
    }
    let n32 = u32::try_from(n).map_err(|_| Error::Precondition("N too large".into()))?;
    let forms = spec.reduced();
    check_no_vertical_component(&forms)?;
    let h = primitive_division_poly(n32)?;
    let w = generic_common_factor(&h, &forms);
    if w.deg_or_zero() > 0 {
        return Ok(SectionScan::GenericallyTorsion { witness: fmt_ratfunc_poly(&w) });
    }
    // A generic combination of the norm forms shares a root with h over λ₀
    // whenever every form does.
    let elim = (1..=8i64)
        .map(|shift| {
            let mut comb = IPoly2::default();
            for (i, f) in forms.iter().enumerate() {
                let k = num_bigint::BigInt::from((i as i64 + 1) * shift + (i as i64) * (i as i64));
                comb = comb.add(&f.norm.scale(&k));
            }
            resultant_in_x(&h, &comb)
        })
        .find(|r| !r.is_zero())
        .ok_or_else(|| Error::Precondition("elimination degenerated for every combination".into()))?;
    let mut candidates: Vec<QPoly> = factor_q(&elim)
        .into_iter()
        .map(|(p, _)| p)
        .filter(|p| !is_excluded_lambda(p))
        .collect();
    candidates.sort_by(poly_order);
    let per: Vec<Result<Vec<TorsionHit>>> = candidates
        .par_iter()
        .map(|p| {
            let fiber = fiber_for_factor(p)?;
            fiber_hits(spec, &forms, &fiber, n)
        })
        .collect();
    let mut hits = Vec::new();
    for r in per {
        hits.extend(r?);
    }
    Ok(SectionScan::Hits(hits))
}

fn scan_identity(spec: &CurveSpec) -> Result<SectionScan> {
    let Some(locus) = spec.identity_locus() else {
        return Ok(SectionScan::GenericallyTorsion { witness: "zero section".into() });
    };
    let mut hits = Vec::new();
    let mut facs: Vec<QPoly> = factor_q(&locus).into_iter().map(|(p, _)| p).filter(|p| !is_excluded_lambda(p)).collect();
    facs.sort_by(poly_order);
    for p in facs {
        let fiber = fiber_for_factor(&p)?;
        hits.push(make_hit(spec, fiber.identity(), 1)?);
    }
    Ok(SectionScan::Hits(hits))
}

/// λ ∈ {0, 1} lies outside the family.
fn is_excluded_lambda(p: &QPoly) -> bool {
    p.degree() == Some(1) && {
        let r = -(p.coeff(0) / p.coeff(1));
        r.is_zero() || r == Q::from_integer(1.into())
    }
}

fn fiber_for_factor(p: &QPoly) -> Result<LegendreFiber> {
    if p.degree() == Some(1) {
        LegendreFiber::rational(-(p.coeff(0) / p.coeff(1)))
    } else {
        let k = NumberField::new(p);
        LegendreFiber::new(Nf::gen(&k))
    }
}

/// The forms must not all vanish on a whole fiber: the common λ-content of
/// (F₀, F₁) over all forms has to be constant on λ ∉ {0, 1}.
fn check_no_vertical_component(forms: &[ReducedForm]) -> Result<()> {
    let z = Q::zero();
    let mut g: Option<QPoly> = None;
    for f in forms {
        for p in [&f.f0, &f.f1] {
            for r in &p.rows {
                let row = QPoly::new(r.iter().map(|c| Q::from_integer(c.clone())).collect(), z.clone());
                if row.is_zero() {
                    continue;
                }
                g = Some(match g {
                    None => row,
                    Some(h) => h.gcd(&row),
                });
            }
        }
    }
    if let Some(g) = g {
        for (p, _) in factor_q(&g) {
            if !is_excluded_lambda(&p) {
                return domain(format!("curve contains the whole fiber over a root of {}", fmt_qpoly(&p, "L")));
            }
        }
    }
    Ok(())
}

/// Points of exact order n on C inside one fiber, over the fields their coordinates generate.
fn fiber_hits(spec: &CurveSpec, forms: &[ReducedForm], fiber: &LegendreFiber, n: u64) -> Result<Vec<TorsionHit>> {
    let lam = &fiber.lambda;
    let mut hits = Vec::new();
    if n == 1 {
        if spec.contains_identity_at(lam) {
            hits.push(make_hit(spec, fiber.identity(), 1)?);
        }
        return Ok(hits);
    }
    let h = primitive_division_poly(n as u32)?;
    let mut g: NfPoly = h.specialize_lambda(lam);
    for f in forms {
        let gv = f.norm.specialize_lambda(lam);
        if !gv.is_zero() {
            g = g.gcd(&gv);
        }
    }
    if g.deg_or_zero() == 0 {
        return Ok(hits);
    }
    let mut factors: Vec<NfPoly> = factor_over(&g).into_iter().map(|(f, _)| f).collect();
    factors.sort_by(|a, b| nf_poly_order(a, b));
    for f in factors {
        for p in points_over_factor(forms, fiber, &f)? {
            if spec.vanishes_at(&p.fiber.lambda, &p.projective()) {
                hits.push(make_hit(spec, p, n)?);
            }
        }
    }
    Ok(hits)
}

fn nf_poly_order(a: &NfPoly, b: &NfPoly) -> std::cmp::Ordering {
    a.deg_or_zero().cmp(&b.deg_or_zero()).then_with(|| {
        for i in (0..=a.deg_or_zero()).rev() {
            let c = nf_order(&a.coeff(i), &b.coeff(i));
            if c != std::cmp::Ordering::Equal {
                return c;
            }
        }
        std::cmp::Ordering::Equal
    })
}

/// Points (x, y) with x a root of the irreducible factor f and y forced by the forms.
fn points_over_factor(forms: &[ReducedForm], fiber: &LegendreFiber, f: &NfPoly) -> Result<Vec<LegendrePoint>> {
    let ext = extend(f)?;
    let e = fiber.base_change(&ext.alpha);
    let x = ext.beta.clone();
    let rhs = e.rhs(&x);
    if rhs.is_zero_elem() {
        return Ok(vec![e.point(x.clone(), x.zero_like())?]);
    }
    // If some F₁(x) ≠ 0 then y = −F₀(x)/F₁(x).
    for fm in forms {
        let f1 = fm.f1.specialize_lambda(&e.lambda).eval(&x);
        if !f1.is_zero_elem() {
            let f0 = fm.f0.specialize_lambda(&e.lambda).eval(&x);
            let y = f0.neg().div(&f1);
            return Ok(match e.point(x, y) {
                Ok(p) => vec![p],
                Err(_) => vec![],
            });
        }
    }
    // Y is unconstrained: both square roots, adjoining one if needed.
    let p = crate::legendre::curve::lift_x(&e, &x)?;
    let q = p.neg();
    Ok(vec![p, q])
}

/// Result of scanning one fiber.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberScan {
    pub lambda: Q,
    /// Hits of order 2 ≤ n ≤ maxN.
    pub hits: Vec<TorsionHit>,
    /// The order-1 hit when the zero section meets C in this fiber.
    pub zero_section: Option<TorsionHit>,
    /// Geometric points of C ∩ E_λ₀ (identity included), when finite.
    pub intersection_count: Option<u64>,
    /// 3·D₂.
    pub bezout_bound: u64,
}

/// Torsion points of order ≤ maxN on the fiber of C over a rational λ₀.
pub fn scan_fiber(lambda0: &Q, spec: &CurveSpec, max_n: u64) -> Result<FiberScan> {
    if max_n < 1 {
        return pre("maxN must be at least 1");
    }
    let fiber = LegendreFiber::rational(lambda0.clone())?;
    let forms = spec.reduced();
    let zero_section = if spec.contains_identity_at(&fiber.lambda) { Some(make_hit(spec, fiber.identity(), 1)?) } else { None };
    let per: Vec<Result<Vec<TorsionHit>>> = (2..=max_n).into_par_iter().map(|n| fiber_hits(spec, &forms, &fiber, n)).collect();
    let mut hits = Vec::new();
    for r in per {
        hits.extend(r?);
    }
    let intersection_count = intersection_count(spec, &forms, &fiber)?;
    Ok(FiberScan {
        lambda: lambda0.clone(),
        hits,
        zero_section,
        intersection_count,
        bezout_bound: 3 * spec.d2 as u64,
    })
}

/// Number of geometric points of C on E_λ₀, or `None` if C contains the fiber.
fn intersection_count(spec: &CurveSpec, forms: &[ReducedForm], fiber: &LegendreFiber) -> Result<Option<u64>> {
    let lam = &fiber.lambda;
    let mut g: Option<NfPoly> = None;
    for f in forms {
        let gv = f.norm.specialize_lambda(lam);
        if gv.is_zero() {
            continue;
        }
        g = Some(match g {
            None => gv,
            Some(h) => h.gcd(&gv),
        });
    }
    let Some(g) = g else { return Ok(None) };
    let mut count = u64::from(spec.contains_identity_at(lam));
    for (f, _) in factor_over(&g) {
        let deg = f.deg_or_zero() as u64;
        let pts = points_over_factor(forms, fiber, &f)?;
        let on = pts.iter().filter(|p| spec.vanishes_at(&p.fiber.lambda, &p.projective())).count() as u64;
        count += deg * on;
    }
    Ok(Some(count))
}

/// The rational polynomial lifted to the field of λ.
pub fn lift(fiber: &LegendreFiber, p: &QPoly) -> NfPoly {
    lift_qpoly(fiber.field(), p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::poly::{q, qr};

    fn line() -> CurveSpec {
        CurveSpec::single(&[([0, 0, 1, 0, 0], q(1)), ([0, 0, 0, 0, 1], q(-2))]).unwrap()
    }

    fn lambdas(s: &SectionScan) -> Vec<Q> {
        let mut v: Vec<Q> = s.hits().iter().map(|h| h.lambda().to_rational().unwrap()).collect();
        v.sort();
        v.dedup();
        v
    }

    #[test]
    fn line_x_equals_two() {
        let s2 = scan_section(&line(), 2).unwrap();
        assert_eq!(lambdas(&s2), vec![q(2)]);
        assert_eq!(s2.hits()[0].coords_strings(), ["2".to_string(), "0".into(), "1".into()]);
        let s4 = scan_section(&line(), 4).unwrap();
        assert_eq!(lambdas(&s4), vec![qr(4, 3), q(4)]);
        assert!(s4.hits().iter().all(|h| h.order == 4 && h.certificate.valid_for(4)));
        assert!(scan_section(&line(), 3).unwrap().hits().iter().all(|h| h.order == 3));
        assert!(scan_section(&line(), 0).is_err());
    }

    #[test]
    fn vertical_section_is_generic() {
        let x0 = CurveSpec::single(&[([0, 0, 1, 0, 0], q(1))]).unwrap();
        let s = scan_section(&x0, 2).unwrap();
        match s {
            SectionScan::GenericallyTorsion { witness } => assert_eq!(witness, "X"),
            _ => panic!("expected generic torsion"),
        }
    }

    #[test]
    fn fiber_examples() {
        let r = scan_fiber(&q(2), &line(), 4).unwrap();
        assert_eq!(r.hits.len(), 1);
        assert_eq!(r.hits[0].order, 2);
        assert!(r.zero_section.is_some());
        let r5 = scan_fiber(&q(5), &line(), 6).unwrap();
        assert!(r5.hits.is_empty());
        // X = 2Z meets E_5 at (2, ±√-6) and at [0:1:0].
        assert_eq!(r5.intersection_count, Some(3));
        assert!(r5.intersection_count.unwrap() <= r5.bezout_bound);
        assert!(scan_fiber(&q(1), &line(), 3).is_err());
    }

    #[test]
    fn hash_and_forgery() {
        let s = scan_section(&line(), 2).unwrap();
        let h = &s.hits()[0];
        assert!(recertify(&line(), h));
        let mut forged = h.clone();
        forged.order = 4;
        assert!(!recertify(&line(), &forged));
    }

    #[test]
    fn fiber_curve_is_rejected() {
        // Λ − 2M contains the whole fiber over λ = 2.
        let v = CurveSpec::single(&[([1, 0, 0, 0, 0], q(1)), ([0, 1, 0, 0, 0], q(-2))]).unwrap();
        assert!(matches!(scan_section(&v, 3), Err(Error::Domain(_))));
    }
}
