//! Canonical heights on Legendre fibers.
//!
//! Values use the normalisation ĥ(P) = lim h([x:y:1](2ⁿP)) / 4ⁿ, which is 3/2 times the
//! x-coordinate height limit ĥ_x(P) = lim h(x(2ⁿP)) / 4ⁿ tracked internally.

use super::curve::{LegendreFiber, LegendrePoint};
use crate::error::{pre, Error, Result};
use crate::numbers::arith::factorize_bigint;
use crate::numbers::height::{height_of_rational, weil_height, weil_height_nf, HeightValue, ProjectivePoint};
use crate::numbers::linalg::solve_field;
use crate::numbers::numfield::Nf;
use crate::numbers::poly::{Field, Poly, Q};
use crate::numbers::real::{ln_rational_dy, Dy, Interval};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Ratio between the two normalisations: ĥ = NORM · ĥ_x.
pub const NORM: f64 = 1.5;

/// Binary forms (coefficients of X⁴, X³Z, …, Z⁴) of the x-only duplication map, scaled by the
/// denominator of λ when λ = a/b: F = (bX² − aZ²)², G = 4bXZ(X−Z)(bX−aZ).
fn duplication_forms<F: Field>(a: &F, b: &F) -> (Vec<F>, Vec<F>) {
    let z = a.zero_like();
    let two = a.from_q(&Q::from_integer(2.into()));
    let four = a.from_q(&Q::from_integer(4.into()));
    // index = power of X (degree 4 form), coefficient of X^i Z^{4-i}
    let f = vec![a.mul(a), z.clone(), two.mul(a).mul(b).neg(), z.clone(), b.mul(b)];
    // 4b XZ (X - Z)(bX - aZ) = 4b[ b X³Z - (a+b) X²Z² + a XZ³ ]
    let fb = four.mul(b);
    let g = vec![z.clone(), fb.mul(a), fb.mul(&a.add(b)).neg(), fb.mul(b), z];
    (f, g)
}

fn eval_form<F: Field>(c: &[F], x: &F, zc: &F) -> F {
    // Σ c_i X^i Z^{4-i}
    let mut acc = x.zero_like();
    let n = c.len() - 1;
    for (i, ci) in c.iter().enumerate() {
        if ci.is_zero_elem() {
            continue;
        }
        let mut t = ci.clone();
        for _ in 0..i {
            t = t.mul(x);
        }
        for _ in 0..(n - i) {
            t = t.mul(zc);
        }
        acc = acc.add(&t);
    }
    acc
}

/// Cubic forms (a1, b1, a2, b2) with a1F + b1G = X⁷ and a2F + b2G = Z⁷.
fn nullstellensatz<F: Field>(f: &[F], g: &[F]) -> Option<[Vec<F>; 4]> {
    let z = f[0].zero_like();
    // Unknowns: a_0..a_3, b_0..b_3 (coefficient of X^i Z^{3-i}); equations: X^k Z^{7-k}, k = 0..7.
    let mut m = vec![vec![z.clone(); 8]; 8];
    for i in 0..4 {
        for j in 0..5 {
            m[i + j][i] = m[i + j][i].add(&f[j]);
            m[i + j][4 + i] = m[i + j][4 + i].add(&g[j]);
        }
    }
    let mut rhs_x = vec![z.clone(); 8];
    rhs_x[7] = z.one_like();
    let mut rhs_z = vec![z.clone(); 8];
    rhs_z[0] = z.one_like();
    let s1 = solve_field(&m, &rhs_x)?;
    let s2 = solve_field(&m, &rhs_z)?;
    Some([s1[..4].to_vec(), s1[4..].to_vec(), s2[..4].to_vec(), s2[4..].to_vec()])
}

/// Certified constants with −c_low ≤ h(x(2Q)) − 4h(x(Q)) ≤ c_up for every Q on the fiber.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct DuplicationConstants {
    pub c_up: f64,
    pub c_low: f64,
}

fn ln_count(n: usize) -> f64 {
    (n as f64).ln() * (1.0 + 1e-15)
}

/// Affine height h([1 : c_1 : … : c_m]) plus log of the term count.
fn coefficient_bound(coeffs: &[Nf], terms: usize) -> Result<f64> {
    let k = coeffs[0].field.clone();
    let mut v = vec![Nf::from_int(&k, 1)];
    v.extend(coeffs.iter().filter(|c| !c.is_zero_elem()).cloned());
    let h = weil_height_nf(&v, 1e-12)?;
    Ok(h.value + h.error + ln_count(terms) + 1e-12)
}

pub fn duplication_constants(fiber: &LegendreFiber) -> Result<DuplicationConstants> {
    let lam = &fiber.lambda;
    let one = lam.one_like();
    let (f, g) = duplication_forms(lam, &one);
    let ns = nullstellensatz(&f, &g).ok_or_else(|| Error::Domain("singular fiber".into()))?;
    let mut fg = f.clone();
    fg.extend(g.iter().cloned());
    let c_up = coefficient_bound(&fg, 5)?;
    let mut all: Vec<Nf> = Vec::new();
    for v in &ns {
        all.extend(v.iter().cloned());
    }
    let c_low = coefficient_bound(&all, 8)?;
    Ok(DuplicationConstants { c_up, c_low })
}

/// The one-sided tail bound (3h(λ) + ln 72)/(3·4ⁿ), in the ĥ normalisation.
pub fn classical_tail_bound(h_lambda: f64, n: u32) -> f64 {
    (3.0 * h_lambda + 72f64.ln()) / (3.0 * 4f64.powi(n as i32))
}

/// ĥ(P) with certified error at most `tol`.
pub fn canonical_height(p: &LegendrePoint, tol: f64) -> Result<HeightValue> {
    if !(tol > 0.0) {
        return pre("tolerance must be positive");
    }
    let x = match &p.xy {
        None => return Ok(HeightValue { value: 0.0, error: 0.0 }),
        Some((x, _)) => x.clone(),
    };
    if let (Some(xq), Some(lq)) = (x.to_rational(), p.fiber.lambda.to_rational()) {
        let hx = canonical_height_x_rational(&xq, &lq, tol / NORM)?;
        return Ok(HeightValue { value: hx.value * NORM, error: hx.error * NORM });
    }
    let hx = canonical_height_x_exact(&p.fiber, &x, tol / NORM)?;
    Ok(HeightValue { value: hx.value * NORM, error: hx.error * NORM })
}

fn steps_for(c: &DuplicationConstants, tol: f64) -> u32 {
    let mut n = 0u32;
    while (c.c_up + c.c_low) / (3.0 * 4f64.powi(n as i32)) > tol / 4.0 {
        n += 1;
    }
    n
}

/// p-adic precision state: (X, Z) modulo p^k, p-primitive.
struct PadicState {
    p: BigInt,
    k: u32,
    x: BigInt,
    z: BigInt,
    ln_p: Interval,
}

fn vp(v: &BigInt, p: &BigInt, cap: u32) -> u32 {
    if v.is_zero() {
        return cap;
    }
    let mut e = 0;
    let mut t = v.clone();
    while e < cap && t.is_multiple_of(p) {
        t /= p;
        e += 1;
    }
    e
}

/// ĥ_x for rational x and λ by tracking every place separately.
pub fn canonical_height_x_rational(x: &Q, lambda: &Q, tol: f64) -> Result<HeightValue> {
    let fiber = LegendreFiber::rational(lambda.clone())?;
    let consts = duplication_constants(&fiber)?;
    let n = steps_for(&consts, tol);
    let a = lambda.numer().clone();
    let b = lambda.denom().clone();
    let qa = Q::from_integer(a.clone());
    let qb = Q::from_integer(b.clone());
    let (fq, gq) = duplication_forms(&qa, &qb);
    let fi: Vec<BigInt> = fq.iter().map(|c| c.to_integer()).collect();
    let gi: Vec<BigInt> = gq.iter().map(|c| c.to_integer()).collect();

    // Primes of bad reduction for the pair (F, G).
    let fpoly = Poly::new(fq.clone(), Q::zero());
    let gpoly = Poly::new(gq.clone(), Q::zero());
    // G has formal degree 4 but vanishes at X⁴, so the form resultant picks up lc(F) = b².
    let res = (fpoly.resultant(&gpoly) * &qb * &qb).abs().to_integer();
    let bad: Vec<(BigInt, u32)> = factorize_bigint(&res);

    let x0 = x.numer().clone();
    let z0 = x.denom().clone();
    let h0 = weil_height(&ProjectivePoint(vec![x.clone(), Q::one()]));

    // Non-archimedean contributions: Σ_k δ_p(Q_k)/4^{k+1}, exact rationals times ln p.
    let mut nonarch = Interval::point(0.0);
    for (p, vres) in &bad {
        let mut st = PadicState {
            p: p.clone(),
            k: (n + 1) * vres + 4,
            x: x0.clone(),
            z: z0.clone(),
            ln_p: ln_rational_dy(&Q::from_integer(p.clone()), 96).to_interval(),
        };
        let mut weighted = Q::zero();
        for step in 0..n {
            let modulus = st.p.pow(st.k);
            let fv = eval_int_form(&fi, &st.x, &st.z).mod_floor(&modulus);
            let gv = eval_int_form(&gi, &st.x, &st.z).mod_floor(&modulus);
            let e = vp(&fv, &st.p, st.k).min(vp(&gv, &st.p, st.k));
            if e >= st.k || e > *vres {
                return Err(Error::Precision("p-adic precision exhausted".into()));
            }
            let pe = st.p.pow(e);
            st.x = fv / &pe;
            st.z = gv / &pe;
            st.k -= e;
            // δ_p = −e ln p
            weighted -= Q::new(BigInt::from(e), BigInt::from(4u8).pow(step + 1));
        }
        let w = Interval::new(weighted.to_f64().unwrap(), weighted.to_f64().unwrap());
        let w = Interval::new(w.lo - w.lo.abs() * 1e-15, w.hi + w.hi.abs() * 1e-15);
        nonarch = nonarch.add(w.mul(st.ln_p));
    }

    // Archimedean contribution with adaptive precision.
    let mut prec = 128u32;
    let arch = loop {
        match archimedean_sum(&x0, &z0, &fi, &gi, n, prec) {
            Some(iv) if iv.width() <= tol / 8.0 => break iv,
            _ if prec >= 8192 => return Err(Error::Precision("archimedean precision exhausted".into())),
            _ => prec *= 2,
        }
    };
    let scale = 3.0 * 4f64.powi(n as i32);
    let tail = Interval::new(-consts.c_low / scale, consts.c_up / scale);
    let total = h0.interval().add(nonarch).add(arch).add(tail);
    let hv = HeightValue::from_interval(total);
    if hv.error > tol {
        return Err(Error::Precision(format!("error {:e} above tolerance {tol:e}", hv.error)));
    }
    Ok(hv)
}

fn eval_int_form(c: &[BigInt], x: &BigInt, z: &BigInt) -> BigInt {
    let n = c.len() - 1;
    let mut acc = BigInt::zero();
    for (i, ci) in c.iter().enumerate() {
        if ci.is_zero() {
            continue;
        }
        acc += ci * x.pow(i as u32) * z.pow((n - i) as u32);
    }
    acc
}

fn eval_dy_form(c: &[BigInt], x: &Dy, z: &Dy) -> Dy {
    let n = c.len() - 1;
    let mut acc = Dy::from_int(0, x.prec);
    for (i, ci) in c.iter().enumerate() {
        if ci.is_zero() {
            continue;
        }
        let mut t = Dy::from_int(1, x.prec);
        for _ in 0..i {
            t = t.mul(x);
        }
        for _ in 0..(n - i) {
            t = t.mul(z);
        }
        acc = acc.add(&t.mul_int(ci));
    }
    acc
}

fn normalise(x: &Dy, z: &Dy) -> Option<(Dy, Dy)> {
    let ax = x.abs();
    let az = z.abs();
    let pick_x = ax.hi >= az.hi;
    let d = if pick_x { x } else { z };
    if d.contains_zero() {
        return None;
    }
    Some((x.div(d)?, z.div(d)?))
}

fn archimedean_sum(x0: &BigInt, z0: &BigInt, fi: &[BigInt], gi: &[BigInt], n: u32, prec: u32) -> Option<Interval> {
    let (mut x, mut z) = {
        let m = x0.abs().max(z0.abs());
        let xq = BigRational::new(x0.clone(), m.clone());
        let zq = BigRational::new(z0.clone(), m);
        (Dy::from_rational(&xq, prec), Dy::from_rational(&zq, prec))
    };
    let mut sum = Interval::point(0.0);
    for step in 0..n {
        let fv = eval_dy_form(fi, &x, &z);
        let gv = eval_dy_form(gi, &x, &z);
        let top = fv.abs().max(&gv.abs()).ln()?;
        let bot = x.abs().max(&z.abs()).ln()?;
        let delta = top.sub(&bot.mul_int(&BigInt::from(4)));
        let w = 4f64.powi(step as i32 + 1);
        let di = delta.to_interval();
        sum = sum.add(Interval::new(di.lo / w, di.hi / w));
        let (nx, nz) = normalise(&fv, &gv)?;
        x = nx;
        z = nz;
    }
    Some(Interval::new(sum.lo - sum.lo.abs() * 1e-15, sum.hi + sum.hi.abs() * 1e-15))
}

/// Exact iteration for points over number fields: detects torsion by cycles, otherwise
/// uses h(x(2ⁿP))/4ⁿ and fails when the certified error stays above `tol`.
pub fn canonical_height_x_exact(fiber: &LegendreFiber, x: &Nf, tol: f64) -> Result<HeightValue> {
    let consts = duplication_constants(fiber)?;
    let lam = &fiber.lambda;
    let one = lam.one_like();
    let (f, g) = duplication_forms(lam, &one);
    let mut seen: Vec<Option<Nf>> = Vec::new();
    let mut cur = Some(x.clone());
    let max_bits = 1u64 << 16;
    let mut n = 0u32;
    loop {
        if seen.contains(&cur) {
            return Ok(HeightValue { value: 0.0, error: 0.0 });
        }
        seen.push(cur.clone());
        let scale = 3.0 * 4f64.powi(n as i32);
        let width = (consts.c_up + consts.c_low) / scale;
        let size: u64 = cur.as_ref().map(|v| v.c.coeffs().iter().map(|c| c.numer().bits() + c.denom().bits()).sum()).unwrap_or(0);
        if width <= tol || size > max_bits {
            let h = match &cur {
                None => HeightValue { value: 0.0, error: 0.0 },
                Some(v) => weil_height_nf(&[v.clone(), v.one_like()], tol / 4.0)?,
            };
            let w = 4f64.powi(n as i32);
            let iv = Interval::new((h.value - h.error) / w - consts.c_low / scale, (h.value + h.error) / w + consts.c_up / scale);
            let hv = HeightValue::from_interval(iv);
            if hv.error > tol {
                return Err(Error::Precision(format!(
                    "exact iteration reached error {:e} above tolerance {tol:e}",
                    hv.error
                )));
            }
            return Ok(hv);
        }
        cur = match cur {
            None => None,
            Some(v) => {
                let fv = eval_form(&f, &v, &one);
                let gv = eval_form(&g, &v, &one);
                if gv.is_zero_elem() {
                    None
                } else {
                    Some(fv.div(&gv))
                }
            }
        };
        n += 1;
    }
}

/// h([x:y:1]) = ½ h([x² : x(x−1)(x−λ) : 1]).
pub fn naive_point_height(p: &LegendrePoint) -> Result<HeightValue> {
    let (x, _) = p.xy.as_ref().ok_or_else(|| Error::Precondition("identity has no affine height".into()))?;
    let r = p.fiber.rhs(x);
    let h = if let (Some(xq), Some(rq)) = (x.to_rational(), r.to_rational()) {
        weil_height(&ProjectivePoint(vec![&xq * &xq, rq, Q::one()]))
    } else {
        weil_height_nf(&[x.mul(x), r, x.one_like()], 1e-13)?
    };
    Ok(HeightValue { value: h.value / 2.0, error: h.error / 2.0 })
}

/// h(λ) for the fiber parameter.
pub fn lambda_height(fiber: &LegendreFiber) -> Result<HeightValue> {
    let l = &fiber.lambda;
    match l.to_rational() {
        Some(q) => Ok(height_of_rational(&q)),
        None => weil_height_nf(&[l.clone(), l.one_like()], 1e-13),
    }
}

/// ĥ(P) ≤ h([x:y:1]) + 3·max{1, h(λ)}, decided with certified enclosures.
pub fn upper_bound_check(p: &LegendrePoint) -> Result<bool> {
    if p.is_identity() {
        return pre("upper bound check needs an affine point");
    }
    let hh = canonical_height(p, 1e-9)?;
    let hn = naive_point_height(p)?;
    let hl = lambda_height(&p.fiber)?;
    let rhs_lo = hn.value - hn.error + 3.0 * (hl.value - hl.error).max(1.0);
    Ok(hh.value + hh.error <= rhs_lo)
}

/// Naive height of the abscissa, h(x(P)).
pub fn x_height(p: &LegendrePoint) -> Result<HeightValue> {
    let (x, _) = p.xy.as_ref().ok_or_else(|| Error::Precondition("identity".into()))?;
    match x.to_rational() {
        Some(q) => Ok(height_of_rational(&q)),
        None => weil_height_nf(&[x.clone(), x.one_like()], 1e-13),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::legendre::curve::{lift_x, multiply};
    use crate::numbers::poly::q;

    #[test]
    fn torsion_has_zero_height() {
        let e = LegendreFiber::rational(q(-3)).unwrap();
        let p = e.point_q(q(-1), q(2)).unwrap();
        let h = canonical_height(&p, 1e-9).unwrap();
        assert!(h.close_to(0.0, 1e-9), "{h:?}");
    }

    #[test]
    fn quadratic_scaling() {
        let e = LegendreFiber::rational(q(-1)).unwrap();
        let p = lift_x(&e, &e.el(q(2))).unwrap();
        let h1 = canonical_height(&p, 1e-9).unwrap();
        assert!(h1.value > 0.0);
        let p2 = multiply(2, &p);
        let h2 = canonical_height(&p2, 1e-9).unwrap();
        assert!((h2.value - 4.0 * h1.value).abs() <= 2e-8, "{h1:?} {h2:?}");
        let h_coarse = canonical_height(&p, 1e-6).unwrap();
        assert!((h_coarse.value - h1.value).abs() <= 1e-6);
        assert!(upper_bound_check(&p).unwrap());
    }

    #[test]
    fn constants_are_finite() {
        let e = LegendreFiber::rational(q(5)).unwrap();
        let c = duplication_constants(&e).unwrap();
        assert!(c.c_up > 0.0 && c.c_low > 0.0 && c.c_up.is_finite() && c.c_low.is_finite());
    }
}
