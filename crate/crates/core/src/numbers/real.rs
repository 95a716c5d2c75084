//! Certified real intervals.
//!
//! [`Interval`] is a cheap `f64` interval with outward rounding. [`Dy`] is a
//! dyadic interval `[lo, hi] / 2^prec` over big integers, used whenever `f64`
//! cannot settle a question.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

/// Closed `f64` interval, endpoints rounded outward after every operation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

fn down(x: f64) -> f64 {
    if x.is_finite() { x.next_down() } else { x }
}

fn up(x: f64) -> f64 {
    if x.is_finite() { x.next_up() } else { x }
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    /// Enclosure of an integer that may not be exactly representable.
    pub fn from_u64(n: u64) -> Self {
        let x = n as f64;
        if x as u64 == n && (n as f64) < 9.0e15 {
            Interval::point(x)
        } else {
            Interval::new(down(x), up(x))
        }
    }

    pub fn add(self, o: Interval) -> Interval {
        Interval::new(down(self.lo + o.lo), up(self.hi + o.hi))
    }

    pub fn sub(self, o: Interval) -> Interval {
        Interval::new(down(self.lo - o.hi), up(self.hi - o.lo))
    }

    pub fn mul(self, o: Interval) -> Interval {
        let c = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        let lo = c.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = c.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Interval::new(down(lo), up(hi))
    }

    /// Division; `None` if the divisor straddles zero.
    pub fn div(self, o: Interval) -> Option<Interval> {
        if o.lo <= 0.0 && o.hi >= 0.0 {
            return None;
        }
        let c = [self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi];
        let lo = c.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = c.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Some(Interval::new(down(lo), up(hi)))
    }

    /// Natural log; libm `ln` is accurate to well under one ulp, so two ulps
    /// of outward slack on each side keep the enclosure valid.
    pub fn ln(self) -> Option<Interval> {
        if self.lo <= 0.0 {
            return None;
        }
        Some(Interval::new(down(down(self.lo.ln())), up(up(self.hi.ln()))))
    }

    pub fn scale(self, k: f64) -> Interval {
        self.mul(Interval::point(k))
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn certainly_le(&self, o: &Interval) -> bool {
        self.hi <= o.lo
    }

    pub fn certainly_ge(&self, o: &Interval) -> bool {
        self.lo >= o.hi
    }
}

/// Natural log of a positive big integer as an `f64` enclosure.
pub fn ln_bigint(n: &BigInt) -> Interval {
    assert!(n.is_positive(), "ln of non-positive integer");
    let bits = n.bits();
    if bits <= 52 {
        return Interval::point(n.to_f64().unwrap()).ln().unwrap();
    }
    let shift = bits - 53;
    let top: BigInt = n >> shift;
    let t = top.to_f64().unwrap();
    // n lies in [t, t+1] * 2^shift.
    let lo = Interval::point(t).ln().unwrap().lo;
    let hi = Interval::point(t + 1.0).ln().unwrap().hi;
    let l2 = Interval::point(std::f64::consts::LN_2)
        .mul(Interval::new(down(1.0), up(1.0)))
        .scale(shift as f64);
    Interval::new(lo, hi).add(l2)
}

/// Natural log of a positive rational as an `f64` enclosure.
pub fn ln_rational(q: &BigRational) -> Interval {
    ln_bigint(q.numer()).sub(ln_bigint(q.denom()))
}

// ---- Dyadic intervals ----

/// Interval `[lo, hi] · 2^-prec` with big-integer endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dy {
    pub lo: BigInt,
    pub hi: BigInt,
    pub prec: u32,
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

fn pow2(k: u32) -> BigInt {
    BigInt::one() << k
}

impl Dy {
    pub fn from_rational(q: &BigRational, prec: u32) -> Dy {
        let s = q.numer() << prec;
        Dy { lo: floor_div(&s, q.denom()), hi: ceil_div(&s, q.denom()), prec }
    }

    pub fn from_int(n: i64, prec: u32) -> Dy {
        let v = BigInt::from(n) << prec;
        Dy { lo: v.clone(), hi: v, prec }
    }

    pub fn lo_rational(&self) -> BigRational {
        BigRational::new(self.lo.clone(), pow2(self.prec))
    }

    pub fn hi_rational(&self) -> BigRational {
        BigRational::new(self.hi.clone(), pow2(self.prec))
    }

    /// Hull with another interval at the same precision.
    pub fn hull(&self, o: &Dy) -> Dy {
        Dy {
            lo: self.lo.clone().min(o.lo.clone()),
            hi: self.hi.clone().max(o.hi.clone()),
            prec: self.prec,
        }
    }

    pub fn add(&self, o: &Dy) -> Dy {
        debug_assert_eq!(self.prec, o.prec);
        Dy { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi, prec: self.prec }
    }

    pub fn neg(&self) -> Dy {
        Dy { lo: -&self.hi, hi: -&self.lo, prec: self.prec }
    }

    pub fn sub(&self, o: &Dy) -> Dy {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Dy) -> Dy {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let mn = c.iter().min().unwrap();
        let mx = c.iter().max().unwrap();
        let d = pow2(self.prec);
        Dy { lo: floor_div(mn, &d), hi: ceil_div(mx, &d), prec: self.prec }
    }

    pub fn mul_int(&self, k: &BigInt) -> Dy {
        let a = &self.lo * k;
        let b = &self.hi * k;
        if k.is_negative() {
            Dy { lo: b, hi: a, prec: self.prec }
        } else {
            Dy { lo: a, hi: b, prec: self.prec }
        }
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn div(&self, o: &Dy) -> Option<Dy> {
        if o.contains_zero() {
            return None;
        }
        let num = [&self.lo << self.prec, &self.hi << self.prec];
        let mut lo: Option<BigInt> = None;
        let mut hi: Option<BigInt> = None;
        for n in &num {
            for d in [&o.lo, &o.hi] {
                let (f, c) = if d.is_negative() {
                    (floor_div(&-n, &-d), ceil_div(&-n, &-d))
                } else {
                    (floor_div(n, d), ceil_div(n, d))
                };
                lo = Some(match lo { Some(x) => x.min(f), None => f });
                hi = Some(match hi { Some(x) => x.max(c), None => c });
            }
        }
        Some(Dy { lo: lo.unwrap(), hi: hi.unwrap(), prec: self.prec })
    }

    pub fn abs(&self) -> Dy {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            Dy { lo: BigInt::zero(), hi: self.hi.clone().max(-&self.lo), prec: self.prec }
        }
    }

    /// Elementwise max of two intervals.
    pub fn max(&self, o: &Dy) -> Dy {
        Dy {
            lo: self.lo.clone().max(o.lo.clone()),
            hi: self.hi.clone().max(o.hi.clone()),
            prec: self.prec,
        }
    }

    /// Widen by `ulps` units in the last place on each side.
    pub fn widen(&self, ulps: u64) -> Dy {
        let u = BigInt::from(ulps);
        Dy { lo: &self.lo - &u, hi: &self.hi + &u, prec: self.prec }
    }

    pub fn width_f64(&self) -> f64 {
        to_f64_scaled(&(&self.hi - &self.lo), self.prec)
    }

    /// `f64` enclosure of this interval.
    pub fn to_interval(&self) -> Interval {
        let lo = to_f64_scaled(&self.lo, self.prec);
        let hi = to_f64_scaled(&self.hi, self.prec);
        Interval::new(down(lo), up(hi))
    }

    /// Sign if certain.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Natural log of a positive interval.
    pub fn ln(&self) -> Option<Dy> {
        if !self.lo.is_positive() {
            return None;
        }
        let a = ln_rational_dy(&self.lo_rational(), self.prec);
        let b = ln_rational_dy(&self.hi_rational(), self.prec);
        Some(Dy { lo: a.lo, hi: b.hi, prec: self.prec })
    }

    pub fn exp(&self) -> Dy {
        let a = exp_rational_dy(&self.lo_rational(), self.prec);
        let b = exp_rational_dy(&self.hi_rational(), self.prec);
        Dy { lo: a.lo, hi: b.hi, prec: self.prec }
    }
}

/// `n / 2^prec` rounded to nearest `f64` (inexact; callers widen).
pub fn to_f64_scaled(n: &BigInt, prec: u32) -> f64 {
    let bits = n.bits();
    if bits <= 60 {
        return n.to_f64().unwrap() * (2f64).powi(-(prec as i32));
    }
    let sh = bits - 60;
    let top: BigInt = n >> sh;
    top.to_f64().unwrap() * (2f64).powi(sh as i32 - prec as i32)
}

/// Fixed-point `2·atanh(a/b)` for `0 ≤ a/b ≤ 1/3`, returned at `prec` bits.
fn two_atanh(a: &BigInt, b: &BigInt, prec: u32) -> Dy {
    let guard = 24 + 2 * (64 - (prec as u64 + 1).leading_zeros());
    let q = prec + guard;
    let one = pow2(q);
    let t0 = floor_div(&(a << q), b);
    let z2 = floor_div(&((a * a) << q), &(b * b));
    let mut t = t0;
    let mut sum = BigInt::zero();
    let mut i: u64 = 0;
    while !t.is_zero() {
        sum += &t / BigInt::from(2 * i + 1);
        t = (&t * &z2) / &one;
        i += 1;
    }
    // Each term carries at most (2i + 3) ulps of error; the truncated tail
    // is below one ulp times 9/8.
    let err = BigInt::from(4 * (i + 2) * (i + 2) + 8);
    let lo = (&sum - &err) * 2;
    let hi = (&sum + &err) * 2;
    Dy { lo: lo >> guard, hi: (hi >> guard) + 1, prec }
}

/// Enclosure of ln 2.
pub fn ln2_dy(prec: u32) -> Dy {
    two_atanh(&BigInt::one(), &BigInt::from(3), prec)
}

/// Enclosure of ln q for positive rational q.
pub fn ln_rational_dy(q: &BigRational, prec: u32) -> Dy {
    assert!(q.is_positive());
    // q = 2^k m with m in [2/3, 4/3), so z = (m-1)/(m+1) lies in [-1/5, 1/7].
    let k = q.numer().bits() as i64 - q.denom().bits() as i64;
    let mut m = if k >= 0 {
        BigRational::new(q.numer().clone(), q.denom() << (k as u32))
    } else {
        BigRational::new(q.numer() << ((-k) as u32), q.denom().clone())
    };
    let mut k = k;
    let four_thirds = BigRational::new(4.into(), 3.into());
    let two_thirds = BigRational::new(2.into(), 3.into());
    while m >= four_thirds {
        m /= BigRational::from_integer(2.into());
        k += 1;
    }
    while m < two_thirds {
        m *= BigRational::from_integer(2.into());
        k -= 1;
    }
    let z = (&m - BigRational::one()) / (&m + BigRational::one());
    let core = if z.is_negative() {
        two_atanh(&-z.numer(), z.denom(), prec).neg()
    } else {
        two_atanh(z.numer(), z.denom(), prec)
    };
    let l2 = ln2_dy(prec + 8);
    let kl2 = l2.mul_int(&BigInt::from(k));
    let kl2 = Dy { lo: kl2.lo >> 8u32, hi: (kl2.hi >> 8u32) + 1, prec };
    core.add(&kl2)
}

/// Enclosure of exp q for rational q.
pub fn exp_rational_dy(q: &BigRational, prec: u32) -> Dy {
    // Halve until |s| < 1/2, sum the Taylor series, then square back.
    let mut j: u32 = 0;
    let half = BigRational::new(1.into(), 2.into());
    let mut s = q.clone();
    while s.abs() >= half {
        s /= BigRational::from_integer(2.into());
        j += 1;
    }
    let guard = 32 + 2 * j;
    let p = prec + guard;
    let one = pow2(p);
    let sf = floor_div(&(s.numer() << p), s.denom());
    let mut term = one.clone();
    let mut sum = one.clone();
    let mut i: u64 = 1;
    loop {
        term = (&term * &sf) / (&one * BigInt::from(i));
        if term.is_zero() {
            break;
        }
        sum += &term;
        i += 1;
    }
    let err = BigInt::from(2 * i + 4);
    let mut r = Dy { lo: &sum - &err, hi: &sum + &err, prec: p };
    for _ in 0..j {
        r = r.mul(&r);
    }
    Dy { lo: r.lo >> guard, hi: (r.hi >> guard) + 1, prec }
}

/// Enclosure of `base^exp` for positive rational base.
pub fn pow_rational_dy(base: &BigRational, exp: &BigRational, prec: u32) -> Dy {
    let l = ln_rational_dy(base, prec + 16);
    let e = Dy::from_rational(exp, prec + 16);
    let x = l.mul(&e);
    let r = x.exp();
    Dy { lo: r.lo >> 16u32, hi: (r.hi >> 16u32) + 1, prec }
}

/// Sign of a big integer as an `Ordering` against zero.
pub fn sign_of(n: &BigInt) -> Ordering {
    match n.sign() {
        Sign::Minus => Ordering::Less,
        Sign::NoSign => Ordering::Equal,
        Sign::Plus => Ordering::Greater,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn ln2_encloses_libm_value() {
        let d = ln2_dy(200);
        let i = d.to_interval();
        assert!(i.lo <= std::f64::consts::LN_2 && std::f64::consts::LN_2 <= i.hi);
        assert!(d.width_f64() < 1e-55);
    }

    #[test]
    fn ln_and_exp_are_inverse() {
        for (a, b) in [(7, 3), (1, 1000), (123456, 7), (5, 4)] {
            let x = q(a, b);
            let l = ln_rational_dy(&x, 120);
            let e = l.exp();
            assert!(e.lo_rational() <= x && x <= e.hi_rational(), "{a}/{b}");
            let f = (a as f64 / b as f64).ln();
            let iv = l.to_interval();
            assert!(iv.lo - 1e-15 <= f && f <= iv.hi + 1e-15);
        }
    }

    #[test]
    fn pow_two_to_eighteen_fifths() {
        let d = pow_rational_dy(&q(2, 1), &q(18, 5), 100);
        let v = 2f64.powf(3.6);
        let i = d.to_interval();
        assert!(i.lo <= v + 1e-12 && v - 1e-12 <= i.hi);
        assert!(d.width_f64() < 1e-25);
    }

    #[test]
    fn ln_bigint_large() {
        let n: BigInt = BigInt::from(10).pow(400);
        let i = ln_bigint(&n);
        let t = 400.0 * std::f64::consts::LN_10;
        assert!(i.lo <= t && t <= i.hi);
        assert!(i.width() < 1e-10);
    }

    #[test]
    fn interval_ops_enclose() {
        let a = Interval::point(0.1);
        let b = Interval::point(0.2);
        let s = a.add(b);
        assert!(s.lo <= 0.30000000000000004 && s.hi >= 0.3);
        assert!(a.div(Interval::new(-1.0, 1.0)).is_none());
    }
}
