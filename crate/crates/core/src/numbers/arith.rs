//! Elementary arithmetic functions and the analytic inequalities on ω and φ.

use super::real::{ln_rational_dy, Dy, Interval};
use crate::error::{pre, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

/// Prime factorization by trial division, as (prime, exponent) pairs.
pub fn factorize_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Number of distinct prime divisors.
pub fn omega(n: u64) -> u32 {
    assert!(n >= 1, "omega needs N >= 1");
    factorize_u64(n).len() as u32
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi needs N >= 1");
    factorize_u64(n).iter().fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// Sieve of Eratosthenes, `is_prime[k]` for k < n.
pub fn prime_sieve(n: usize) -> Vec<bool> {
    let mut s = vec![true; n.max(2)];
    s[0] = false;
    s[1] = false;
    let mut i = 2;
    while i * i < n {
        if s[i] {
            let mut j = i * i;
            while j < n {
                s[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    s.truncate(n);
    s
}

/// Smallest omega(n) table for 0..n via a linear pass over a sieve.
pub fn omega_table(n: usize) -> Vec<u8> {
    let mut w = vec![0u8; n];
    for p in 2..n {
        if w[p] == 0 {
            let mut m = p;
            while m < n {
                w[m] += 1;
                m += p;
            }
        }
    }
    w
}

/// Euler phi for 0..n via sieve.
pub fn phi_table(n: usize) -> Vec<u64> {
    let mut phi: Vec<u64> = (0..n as u64).collect();
    for p in 2..n {
        if phi[p] == p as u64 {
            let mut m = p;
            while m < n {
                phi[m] = phi[m] / p as u64 * (p as u64 - 1);
                m += p;
            }
        }
    }
    phi
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InequalityReport {
    pub robin_ok: bool,
    pub phi_ok: bool,
}

/// Checks ω(N) ≤ 7 ln N / (5 ln ln N) and φ(N) ≥ N / (2 ln N + 1).
///
/// A bound is reported true only when an interval enclosure proves it.
pub fn check_analytic_inequalities(n: u64) -> Result<InequalityReport> {
    if n < 3 {
        return pre("N >= 3 (ln ln N must be positive)");
    }
    Ok(check_with(n, omega(n), euler_phi(n)))
}

/// Same as [`check_analytic_inequalities`] with ω and φ supplied.
pub fn check_with(n: u64, w: u32, phi: u64) -> InequalityReport {
    let ln_n = Interval::from_u64(n).ln().unwrap();
    let robin = match ln_n.ln() {
        Some(lln) if lln.lo > 0.0 => {
            let rhs = ln_n.scale(7.0).div(lln.scale(5.0));
            match rhs {
                Some(r) if (w as f64) <= r.lo => Some(true),
                Some(r) if (w as f64) > r.hi => Some(false),
                _ => None,
            }
        }
        _ => None,
    };
    let robin_ok = robin.unwrap_or_else(|| robin_precise(n, w));
    let rhs = Interval::from_u64(n).div(ln_n.scale(2.0).add(Interval::point(1.0))).unwrap();
    let phi_ok = if (phi as f64) >= rhs.hi && (phi as f64) as u64 == phi {
        true
    } else if (phi as f64) < rhs.lo {
        false
    } else {
        phi_precise(n, phi)
    };
    InequalityReport { robin_ok, phi_ok }
}

fn robin_precise(n: u64, w: u32) -> bool {
    let nq = BigRational::from_integer(n.into());
    for prec in [128u32, 512, 2048] {
        let ln_n = ln_rational_dy(&nq, prec);
        let Some(lln) = ln_n.ln() else { return false };
        if lln.sign() != Some(std::cmp::Ordering::Greater) {
            continue;
        }
        // 5 w ln ln N ≤ 7 ln N
        let lhs = lln.mul_int(&BigInt::from(5 * w as i64));
        let rhs = ln_n.mul_int(&BigInt::from(7));
        let d = rhs.sub(&lhs);
        match d.sign() {
            Some(std::cmp::Ordering::Less) => return false,
            Some(_) => return true,
            None => {}
        }
    }
    false
}

fn phi_precise(n: u64, phi: u64) -> bool {
    let nq = BigRational::from_integer(n.into());
    for prec in [128u32, 512, 2048] {
        let ln_n = ln_rational_dy(&nq, prec);
        // phi (2 ln N + 1) ≥ N
        let lhs = ln_n
            .mul_int(&BigInt::from(2))
            .add(&Dy::from_int(1, prec))
            .mul_int(&BigInt::from(phi));
        let d = lhs.sub(&Dy::from_int(n as i64, prec));
        match d.sign() {
            Some(std::cmp::Ordering::Less) => return false,
            Some(_) => return true,
            None => {}
        }
    }
    false
}

/// Smallest prime `a` with `lo ≤ a < hi` and gcd(a, N) = 1, by direct sieve.
pub fn find_coprime_prime(n: u64, lo: f64, hi: f64) -> Result<Option<u64>> {
    if !(lo <= hi) {
        return pre("lo <= hi");
    }
    if hi <= 2.0 {
        return Ok(None);
    }
    let start = if lo <= 2.0 { 2u64 } else { lo.ceil() as u64 };
    // a < hi: the largest admissible integer is ceil(hi) - 1.
    let end = hi.ceil() as u64;
    if start >= end {
        return Ok(None);
    }
    if end > 1 << 32 {
        return pre("hi must be below 2^32 for the direct sieve");
    }
    let sieve = prime_sieve(end as usize);
    Ok((start..end).find(|&a| sieve[a as usize] && n.gcd(&a) == 1))
}

/// Integer factorization for arbitrary size: trial division to `limit`
/// followed by Pollard rho on the cofactor.
pub fn factorize_bigint(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    if n.is_zero() || n.is_one() {
        return out;
    }
    let mut p = 2u64;
    while p < 10_000 {
        let bp = BigInt::from(p);
        if (&n % &bp).is_zero() {
            let mut e = 0;
            while (&n % &bp).is_zero() {
                n /= &bp;
                e += 1;
            }
            out.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            match out.iter_mut().find(|(q, _)| *q == m) {
                Some(e) => e.1 += 1,
                None => out.push((m, 1)),
            }
            continue;
        }
        let d = pollard_rho(&m);
        stack.push(&m / &d);
        stack.push(d);
    }
    out.sort();
    out
}

/// Miller–Rabin with fixed bases (deterministic below 3.3e24, probabilistic above).
pub fn is_probable_prime(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if n < &two {
        return false;
    }
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let bp = BigInt::from(p);
        if n == &bp {
            return true;
        }
        if (n % &bp).is_zero() {
            return false;
        }
    }
    let nm1: BigInt = n - BigInt::one();
    let mut d = nm1.clone();
    let mut s = 0;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'outer: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: &BigInt) -> BigInt {
    if n.is_even() {
        return BigInt::from(2);
    }
    let mut c = BigInt::one();
    loop {
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut x = BigInt::from(2);
        let mut y = x.clone();
        let mut d = BigInt::one();
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            d = (&x - &y).abs().gcd(n);
        }
        if &d != n {
            return d;
        }
        c += 1;
    }
}

/// Exact `ln` of a small integer as `f64` (for display only).
pub fn ln_u64(n: u64) -> f64 {
    (n.to_f64().unwrap()).ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_examples() {
        assert_eq!(omega(1), 0);
        assert_eq!(omega(12), 2);
        assert_eq!(omega(30), 3);
    }

    #[test]
    fn phi_examples() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(5), 4);
        assert_eq!(euler_phi(12), 4);
    }

    #[test]
    fn inequality_examples() {
        let r = check_analytic_inequalities(3).unwrap();
        assert!(r.robin_ok && r.phi_ok);
        let r = check_analytic_inequalities(30).unwrap();
        assert!(r.robin_ok && r.phi_ok);
        assert!(check_analytic_inequalities(2).is_err());
    }

    #[test]
    fn coprime_prime_examples() {
        assert_eq!(find_coprime_prime(6, 2.0, 7.0).unwrap(), Some(5));
        assert_eq!(find_coprime_prime(1, 2.0, 3.0).unwrap(), Some(2));
        assert_eq!(find_coprime_prime(2, 4.0, 5.0).unwrap(), None);
        assert!(find_coprime_prime(2, 5.0, 4.0).is_err());
    }

    #[test]
    fn tables_match_direct() {
        let w = omega_table(2000);
        let p = phi_table(2000);
        for n in 1..2000u64 {
            assert_eq!(w[n as usize] as u32, omega(n));
            assert_eq!(p[n as usize], euler_phi(n));
        }
    }

    #[test]
    fn bigint_factorization() {
        let n = BigInt::from(2u64.pow(5) * 3 * 1_000_003u64) * BigInt::from(998_244_353u64);
        let f = factorize_bigint(&n);
        let back = f.iter().fold(BigInt::one(), |a, (p, e)| a * p.pow(*e));
        assert_eq!(back, n);
        assert!(f.iter().all(|(p, _)| is_probable_prime(p)));
    }
}
