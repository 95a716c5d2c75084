//! Certified isolation of the complex roots of a squarefree rational polynomial.
//!
//! Roots are first approximated by Aberth iteration in `f64`, then certified
//! with Weierstrass inclusion discs; pairwise disjoint discs of radius
//! `n·|W_i|` each hold exactly one root. Refinement runs Newton steps in exact
//! dyadic arithmetic and certifies the new disc with the bound
//! `|z - ζ| ≤ n·|p(z)/p'(z)|`.

use super::poly::{primitive_int, QPoly};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact complex rational.
#[derive(Clone, Debug, PartialEq)]
pub struct CQ {
    pub re: BigRational,
    pub im: BigRational,
}

impl CQ {
    pub fn zero() -> Self {
        CQ { re: BigRational::zero(), im: BigRational::zero() }
    }
    pub fn from_re(re: BigRational) -> Self {
        CQ { re, im: BigRational::zero() }
    }
    pub fn add(&self, o: &CQ) -> CQ {
        CQ { re: &self.re + &o.re, im: &self.im + &o.im }
    }
    pub fn sub(&self, o: &CQ) -> CQ {
        CQ { re: &self.re - &o.re, im: &self.im - &o.im }
    }
    pub fn mul(&self, o: &CQ) -> CQ {
        CQ {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
    pub fn div(&self, o: &CQ) -> CQ {
        let d = o.norm_sqr();
        let conj = CQ { re: o.re.clone(), im: -&o.im };
        let n = self.mul(&conj);
        CQ { re: n.re / &d, im: n.im / d }
    }
    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
    /// Round both parts to multiples of `2^-bits`.
    pub fn round(&self, bits: u32) -> CQ {
        CQ { re: round_dyadic(&self.re, bits), im: round_dyadic(&self.im, bits) }
    }
}

pub fn rat_to_f64(q: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let nb = q.numer().bits() as i64;
    let db = q.denom().bits() as i64;
    let sn = nb.saturating_sub(60).max(0) as u32;
    let sd = db.saturating_sub(60).max(0) as u32;
    let n: BigInt = q.numer() >> sn;
    let d: BigInt = q.denom() >> sd;
    n.to_f64().unwrap() / d.to_f64().unwrap() * 2f64.powi(sn as i32 - sd as i32)
}

pub fn round_dyadic(q: &BigRational, bits: u32) -> BigRational {
    let scaled = q * BigRational::from_integer(BigInt::one() << bits);
    BigRational::new(scaled.round().to_integer(), BigInt::one() << bits)
}

/// Exact evaluation at a complex rational point.
pub fn eval_cq(p: &QPoly, z: &CQ) -> CQ {
    let mut acc = CQ::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(z);
        acc.re += c;
    }
    acc
}

/// A disc `D(center, 2^rad_exp)` containing exactly one root.
#[derive(Clone, Debug, PartialEq)]
pub struct RootDisc {
    pub center: CQ,
    pub rad_exp: i64,
    /// True when the root is certified real (center imaginary part is then 0).
    pub real: bool,
}

impl RootDisc {
    pub fn radius(&self) -> f64 {
        2f64.powi(self.rad_exp.clamp(-1070, 1000) as i32)
    }

    pub fn approx(&self) -> Complex64 {
        self.center.to_c64()
    }

    /// Rational box `[re_lo, re_hi] × [im_lo, im_hi]` enclosing the disc.
    pub fn to_box(&self) -> [BigRational; 4] {
        let r = if self.rad_exp >= 0 {
            BigRational::from_integer(BigInt::one() << self.rad_exp as u32)
        } else {
            BigRational::new(BigInt::one(), BigInt::one() << (-self.rad_exp) as u32)
        };
        let im_r = if self.real { BigRational::zero() } else { r.clone() };
        [
            &self.center.re - &r,
            &self.center.re + &r,
            &self.center.im - &im_r,
            &self.center.im + &im_r,
        ]
    }
}

fn ceil_log2(x: f64) -> i64 {
    if x <= 0.0 {
        return -1074;
    }
    let e = x.log2().ceil() as i64;
    if 2f64.powi(e as i32) < x { e + 1 } else { e }
}

/// Isolate all complex roots of a squarefree polynomial of degree ≥ 1.
pub fn isolate(p: &QPoly) -> Result<Vec<RootDisc>> {
    let deg = p.degree().unwrap_or(0);
    if deg == 0 {
        return Ok(vec![]);
    }
    if deg == 1 {
        let r = -(p.coeff(0) / p.coeff(1));
        return Ok(vec![RootDisc { center: CQ::from_re(r), rad_exp: -1074, real: true }]);
    }
    let ip = primitive_int(p);
    let scale = ip.iter().map(|c| c.bits()).max().unwrap() as i32;
    let a: Vec<f64> = ip
        .iter()
        .map(|c| {
            let q = BigRational::new(c.clone(), BigInt::one());
            rat_to_f64(&q) * 2f64.powi(-scale)
        })
        .collect();
    for attempt in 0..4 {
        let z = aberth(&a, 200 + 400 * attempt, attempt as u64);
        if let Some(discs) = certify(&a, &z) {
            let mut out = discs;
            // Improve the centres exactly until every disc is small enough
            // that conjugate pairs separate and real roots are recognised.
            for d in out.iter_mut() {
                *d = refine_disc(p, d, 60).unwrap_or_else(|| d.clone());
            }
            mark_real(&mut out);
            out.sort_by(|x, y| {
                let (a, b) = (x.approx(), y.approx());
                a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap())
            });
            return Ok(out);
        }
    }
    Err(Error::Precision(format!("could not isolate roots of a degree {deg} polynomial in double precision")))
}

fn horner(a: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in a.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn aberth(a: &[f64], iters: usize, seed: u64) -> Vec<Complex64> {
    let n = a.len() - 1;
    let lead = a[n].abs();
    // Fujiwara-type bound on root moduli.
    let mut bound: f64 = 0.0;
    for k in 1..=n {
        let r = (a[n - k].abs() / lead).powf(1.0 / k as f64);
        bound = bound.max(r);
    }
    let rad = (2.0 * bound).max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let th = 2.0 * std::f64::consts::PI * (k as f64 + 0.25 + 0.1 * seed as f64) / n as f64 + 0.4;
            Complex64::from_polar(rad * (0.5 + 0.5 * (k as f64 + 1.0) / n as f64), th)
        })
        .collect();
    for _ in 0..iters {
        let mut maxc: f64 = 0.0;
        for i in 0..n {
            let (p, dp) = horner(a, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    s += (z[i] - z[j]).inv();
                }
            }
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                maxc = maxc.max(w.norm() / z[i].norm().max(1e-300));
            }
        }
        if maxc < 1e-17 {
            break;
        }
    }
    z
}

fn certify(a: &[f64], z: &[Complex64]) -> Option<Vec<RootDisc>> {
    let n = z.len();
    let u = f64::EPSILON;
    let mut discs = Vec::with_capacity(n);
    let mut rads = Vec::with_capacity(n);
    for i in 0..n {
        let (p, _) = horner(a, z[i]);
        let absz = z[i].norm();
        let mut s = 0.0;
        let mut pw = 1.0;
        for c in a {
            s += c.abs() * pw;
            pw *= absz;
        }
        // Horner rounding plus coefficient conversion error, generously bounded.
        let err = (4.0 * (n as f64 + 2.0) * u) * s * 1.01;
        let pnum = (p.norm() + err) * (1.0 + 8.0 * u);
        let mut den = a[n].abs();
        for j in 0..n {
            if j != i {
                den *= (z[i] - z[j]).norm();
            }
        }
        den *= 1.0 - 4.0 * (n as f64 + 2.0) * u;
        if !(den > 0.0) || !den.is_finite() {
            return None;
        }
        let r = n as f64 * pnum / den * (1.0 + 1e-12);
        if !r.is_finite() {
            return None;
        }
        rads.push(r);
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let d = (z[i] - z[j]).norm();
            if rads[i] + rads[j] >= d * (1.0 - 1e-12) {
                return None;
            }
        }
    }
    for i in 0..n {
        let e = ceil_log2(rads[i]).max(-1074);
        let center = CQ {
            re: BigRational::from_float(z[i].re)?,
            im: BigRational::from_float(z[i].im)?,
        };
        discs.push(RootDisc { center, rad_exp: e, real: false });
    }
    // Radii were rounded up to powers of two; recheck disjointness exactly enough.
    for i in 0..n {
        for j in (i + 1)..n {
            let d = (z[i] - z[j]).norm();
            if discs[i].radius() + discs[j].radius() >= d * (1.0 - 1e-12) {
                // Fall back to the exact radii by shrinking the exponent where possible.
                return None;
            }
        }
    }
    Some(discs)
}

fn mark_real(discs: &mut [RootDisc]) {
    let n = discs.len();
    for i in 0..n {
        let c = discs[i].approx();
        let r = discs[i].radius();
        if c.im.abs() > r {
            continue;
        }
        // The conjugate disc may meet no other disc; then the root is its own conjugate.
        let conj = Complex64::new(c.re, -c.im);
        let alone = (0..n).all(|j| {
            j == i || (discs[j].approx() - conj).norm() > discs[j].radius() + r
        });
        // Moving the centre onto the axis moves it by at most r, so the
        // doubled disc still contains the root; it must stay isolating.
        let moved = Complex64::new(c.re, 0.0);
        let isolating = (0..n).all(|j| {
            j == i || (discs[j].approx() - moved).norm() > discs[j].radius() + 2.0 * r
        });
        if alone && isolating {
            discs[i].real = true;
            discs[i].center.im = BigRational::zero();
            discs[i].rad_exp += 1;
        }
    }
}

fn pow2_rat(e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(BigInt::one() << e as u32)
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << (-e) as u32)
    }
}

/// Newton-refine a certified disc to radius at most `2^-bits`.
/// Returns `None` if a Newton step leaves the original disc.
pub fn refine_disc(p: &QPoly, d: &RootDisc, bits: u32) -> Option<RootDisc> {
    let n = p.degree()? as i64;
    let dp = p.derivative();
    let mut cur = d.clone();
    let mut work_bits = (-(cur.rad_exp.min(0)) as u32 + 8).max(64);
    for _ in 0..64 {
        if cur.rad_exp <= -(bits as i64) {
            return Some(cur);
        }
        let z = cur.center.clone();
        let pz = eval_cq(p, &z);
        let dpz = eval_cq(&dp, &z);
        if dpz.norm_sqr().is_zero() {
            return None;
        }
        work_bits = (work_bits * 2).min(bits + 64);
        let mut znew = z.sub(&pz.div(&dpz)).round(work_bits);
        if cur.real {
            znew.im = BigRational::zero();
        }
        let pn = eval_cq(p, &znew);
        let dn = eval_cq(&dp, &znew);
        if dn.norm_sqr().is_zero() {
            return None;
        }
        // r^2 ≤ n^2 |p|^2 / |p'|^2, rounded up to a power of two.
        let r2 = BigRational::from_integer((n * n).into()) * pn.norm_sqr() / dn.norm_sqr();
        let e = if r2.is_zero() {
            -(bits as i64) - 64
        } else {
            let lb = r2.numer().bits() as i64 - r2.denom().bits() as i64 + 1;
            (lb + 1) / 2 + 1
        };
        if e >= cur.rad_exp {
            // No progress; keep the current certified disc.
            return Some(cur);
        }
        // The new disc must sit inside the old one: |Δ| + 2^e ≤ 2^old.
        let delta = znew.sub(&cur.center).norm_sqr();
        let gap = pow2_rat(cur.rad_exp) - pow2_rat(e);
        if gap.is_negative() || delta > &gap * &gap {
            return None;
        }
        cur = RootDisc { center: znew, rad_exp: e, real: cur.real };
    }
    Some(cur)
}

/// Certified value of a rational polynomial at the root in `d`, as an `f64`
/// centre with an absolute error radius.
pub fn eval_at_root(a: &QPoly, d: &RootDisc) -> (Complex64, f64) {
    let c = eval_cq(a, &d.center);
    let cc = c.to_c64();
    let r = d.radius();
    let absz = d.center.to_c64().norm() + r;
    let mut s = 0.0;
    let mut pw = 1.0;
    for (k, ak) in a.coeffs().iter().enumerate().skip(1) {
        s += rat_to_f64(&ak.abs()) * k as f64 * pw;
        pw *= absz;
    }
    let err = s * r * (1.0 + 1e-9) + cc.norm() * 4.0 * f64::EPSILON + f64::MIN_POSITIVE;
    (cc, err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::poly::qpoly;

    #[test]
    fn sqrt_two_roots() {
        let p = qpoly(&[-2, 0, 1]);
        let r = isolate(&p).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|d| d.real));
        let v = r[1].approx().re;
        assert!((v - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn imaginary_roots_not_real() {
        let r = isolate(&qpoly(&[1, 0, 1])).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|d| !d.real));
    }

    #[test]
    fn refinement_shrinks() {
        let p = qpoly(&[-2, 0, 1]);
        let r = isolate(&p).unwrap();
        let f = refine_disc(&p, &r[1], 200).unwrap();
        assert!(f.rad_exp <= -200);
        let c = f.center.re.clone();
        let sq = &c * &c - BigRational::from_integer(2.into());
        assert!(rat_to_f64(&sq).abs() < 1e-55);
    }

    #[test]
    fn twelve_integer_roots() {
        let mut p = qpoly(&[1]);
        for k in 1..=12 {
            p = p.mul(&qpoly(&[-k, 1]));
        }
        let r = isolate(&p).unwrap();
        assert_eq!(r.len(), 12);
        for (k, d) in r.iter().enumerate() {
            assert!(d.real);
            assert!((d.approx().re - (k + 1) as f64).abs() < 1e-9);
        }
    }

    #[test]
    fn roots_of_unity() {
        let p = qpoly(&[-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        let r = isolate(&p).unwrap();
        assert_eq!(r.len(), 20);
        assert_eq!(r.iter().filter(|d| d.real).count(), 2);
        for d in &r {
            assert!((d.approx().norm() - 1.0).abs() < 1e-12);
        }
    }
}
