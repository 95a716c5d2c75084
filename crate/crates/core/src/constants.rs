//! Effective constants shared by the degree calculus and the bound engine.
//!
//! The shipped table `data/constants.txt` is a versioned text file of
//! `key = value` lines. Values are exact: integers, fractions `p/q`, or power
//! products such as `2^12 * 3 * 5^15`. Any key missing from the table falls
//! back to the formula in this module; a table entry always wins, so an
//! alternative evaluation can be swapped in without recompiling.
//!
//! Constant chain for images and preimages under a k×g matrix (M = g + k(2g−1),
//! r = k(2g−1)):
//!
//! * c1 = (2M+1)^(2M+1) bounds the degree of a hypersurface of multidegree
//!   (d₀, …, d_M) in P¹ × (P²)^M by c1·Σdᵢ.
//! * c4 = (4c1)^M (3c1)^r: M Legendre equations of total degree 4, k·g
//!   multiplication graphs of total degree ≤ 3max{1,a²} (the a² factors make
//!   up Π(M)²) and k(g−1) addition graphs of total degree 3.
//! * c5 = (g+1+2k)^(g+1+2k), c6 = (k+1+2g)^(k+1+2g) dominate the multinomial
//!   degrees of V × (P²)^k and W × (P²)^g.
//! * C(k,g) = c4 · max{c5, c6}.
//!
//! For sums, C(g) = binom(2g+2, g+1) · degΔ · C(g, 2g) with
//! degΔ = 2(4g+3)^(4g+3) for the diagonal pulled back from (P¹)².
//!
//! c(g) = max_{1≤k≤g} k·2^k/ν_k with ν_k = π^{k/2}/Γ(k/2+1), the volume of the
//! unit k-ball.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

type Q = BigRational;

pub const BUILTIN_TABLE: &str = include_str!("../data/constants.txt");

/// Exact product of prime powers.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PowerProduct(pub BTreeMap<u64, u64>);

fn small_factor(mut n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

impl PowerProduct {
    pub fn one() -> Self {
        PowerProduct::default()
    }

    /// base^exp with the base split into primes.
    pub fn pow_of(base: u64, exp: u64) -> Self {
        let mut r = PowerProduct::one();
        if exp == 0 {
            return r;
        }
        for (p, e) in small_factor(base) {
            *r.0.entry(p).or_insert(0) += e * exp;
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (p, e) in &o.0 {
            *r.0.entry(*p).or_insert(0) += e;
        }
        r
    }

    pub fn pow(&self, k: u64) -> Self {
        PowerProduct(self.0.iter().map(|(p, e)| (*p, e * k)).collect())
    }

    pub fn value(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |acc, (p, e)| acc * num_traits::pow(BigInt::from(*p), *e as usize))
    }

    /// Natural logarithm as f64.
    pub fn ln(&self) -> f64 {
        self.0.iter().map(|(p, e)| *e as f64 * (*p as f64).ln()).sum()
    }

    pub fn larger(&self, o: &Self) -> Self {
        // Exponents can be large; compare logs first and fall back to exact values.
        let (a, b) = (self.ln(), o.ln());
        if (a - b).abs() > 1e-6 * a.max(b).max(1.0) {
            return if a >= b { self.clone() } else { o.clone() };
        }
        if self.value() >= o.value() { self.clone() } else { o.clone() }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut r = PowerProduct::one();
        for part in s.split('*') {
            let part = part.trim();
            let (b, e) = match part.split_once('^') {
                Some((b, e)) => (b.trim(), e.trim()),
                None => (part, "1"),
            };
            let b: u64 = b.parse().map_err(|_| Error::Format(format!("power product base {b:?}")))?;
            let e: u64 = e.parse().map_err(|_| Error::Format(format!("power product exponent {e:?}")))?;
            if b == 0 {
                return Err(Error::Format("power product with zero base".into()));
            }
            r = r.mul(&PowerProduct::pow_of(b, e));
        }
        Ok(r)
    }
}

impl fmt::Display for PowerProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> =
            self.0.iter().map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") }).collect();
        write!(f, "{}", parts.join(" * "))
    }
}

/// C(k, g) from the formula chain in the module docs.
pub fn c_kg_formula(k: u64, g: u64) -> PowerProduct {
    let r = k * (2 * g - 1);
    let m = g + r;
    let c1 = PowerProduct::pow_of(2 * m + 1, 2 * m + 1);
    let c4 = PowerProduct::pow_of(4, 1).mul(&c1).pow(m).mul(&PowerProduct::pow_of(3, 1).mul(&c1).pow(r));
    let c5 = PowerProduct::pow_of(g + 1 + 2 * k, g + 1 + 2 * k);
    let c6 = PowerProduct::pow_of(k + 1 + 2 * g, k + 1 + 2 * g);
    c4.mul(&c5.larger(&c6))
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// C(g) from the formula chain in the module docs.
pub fn c_g_formula(g: u64) -> PowerProduct {
    let b = binomial(2 * g + 2, g + 1);
    let delta = PowerProduct::pow_of(2, 1).mul(&PowerProduct::pow_of(4 * g + 3, 4 * g + 3));
    PowerProduct::pow_of(b, 1).mul(&delta).mul(&c_kg_formula(g, 2 * g))
}

/// Volume of the unit k-ball.
pub fn unit_ball_volume(k: u32) -> f64 {
    // ν_k = π^{k/2} / Γ(k/2 + 1), via ν_k = 2π/k · ν_{k−2}.
    let pi = std::f64::consts::PI;
    let mut v = if k % 2 == 0 { 1.0 } else { 2.0 };
    let mut j = if k % 2 == 0 { 2 } else { 3 };
    while j <= k {
        v *= 2.0 * pi / j as f64;
        j += 2;
    }
    v
}

/// k·2^k/ν_k.
pub fn lattice_factor(k: u32) -> f64 {
    k as f64 * 2f64.powi(k as i32) / unit_ball_volume(k)
}

/// c(g) = max over 1 ≤ k ≤ g of k·2^k/ν_k.
pub fn c_lat_formula(g: u32) -> f64 {
    (1..=g.max(1)).map(lattice_factor).fold(0.0_f64, f64::max)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Rational(Q),
    Product(PowerProduct),
}

impl Value {
    fn parse(s: &str) -> Result<Value> {
        if s.contains('^') || s.contains('*') {
            return Ok(Value::Product(PowerProduct::parse(s)?));
        }
        Ok(Value::Rational(crate::bounds::logbound::parse_rational(s)?))
    }

    pub fn to_rational(&self) -> Q {
        match self {
            Value::Rational(q) => q.clone(),
            Value::Product(p) => Q::from_integer(p.value()),
        }
    }
}

/// Parsed constants table.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstantsTable {
    pub version: String,
    pub entries: BTreeMap<String, Value>,
}

impl ConstantsTable {
    pub fn builtin() -> ConstantsTable {
        ConstantsTable::parse(BUILTIN_TABLE).expect("shipped constants table parses")
    }

    pub fn load(path: &Path) -> Result<ConstantsTable> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        ConstantsTable::parse(&text)
    }

    pub fn parse(text: &str) -> Result<ConstantsTable> {
        let mut version = None;
        let mut entries = BTreeMap::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Format(format!("constants line {}: expected key = value", no + 1)))?;
            let (k, v) = (k.trim(), v.trim());
            if k == "version" {
                version = Some(v.to_string());
                continue;
            }
            let val = Value::parse(v).map_err(|e| Error::Format(format!("constants line {}: {e}", no + 1)))?;
            if entries.insert(k.to_string(), val).is_some() {
                return Err(Error::Format(format!("constants line {}: duplicate key {k}", no + 1)));
            }
        }
        let version = version.ok_or_else(|| Error::Format("constants table has no version".into()))?;
        Ok(ConstantsTable { version, entries })
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.entries.get(key)
    }

    /// C(k, g) as a power product (table entry `C_kg[k,g]`, else the formula).
    pub fn c_kg(&self, k: u64, g: u64) -> PowerProduct {
        match self.get(&format!("C_kg[{k},{g}]")) {
            Some(Value::Product(p)) => p.clone(),
            Some(Value::Rational(q)) if q.is_integer() => {
                PowerProduct::parse(&q.to_integer().to_string()).unwrap_or_else(|_| c_kg_formula(k, g))
            }
            _ => c_kg_formula(k, g),
        }
    }

    /// C(g) (table entry `C_g[g]`, else the formula).
    pub fn c_g(&self, g: u64) -> PowerProduct {
        match self.get(&format!("C_g[{g}]")) {
            Some(Value::Product(p)) => p.clone(),
            Some(Value::Rational(q)) if q.is_integer() => {
                PowerProduct::parse(&q.to_integer().to_string()).unwrap_or_else(|_| c_g_formula(g))
            }
            _ => c_g_formula(g),
        }
    }

    /// c(g) (table entry `c_lat[g]`, else the formula).
    pub fn c_lat(&self, g: u32) -> f64 {
        match self.get(&format!("c_lat[{g}]")) {
            Some(v) => v.to_rational().to_f64().unwrap_or_else(|| c_lat_formula(g)),
            None => c_lat_formula(g),
        }
    }

    /// γ(g) for the fibered-power theorem. Always a placeholder: the table
    /// value is an admissible choice, not a derived one.
    pub fn gamma_fibered(&self, g: u32) -> Result<Q> {
        self.get(&format!("gamma_fib[{g}]"))
            .map(|v| v.to_rational())
            .ok_or_else(|| Error::InvalidInput(format!("constants table has no gamma_fib[{g}]")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_volumes() {
        let pi = std::f64::consts::PI;
        assert_eq!(unit_ball_volume(1), 2.0);
        assert!((unit_ball_volume(2) - pi).abs() < 1e-15);
        assert!((unit_ball_volume(3) - 4.0 * pi / 3.0).abs() < 1e-14);
        assert!((unit_ball_volume(4) - pi * pi / 2.0).abs() < 1e-14);
    }

    #[test]
    fn c_lat_small() {
        assert_eq!(c_lat_formula(1), 1.0);
        assert!((c_lat_formula(2) - 8.0 / std::f64::consts::PI).abs() < 1e-14);
    }

    #[test]
    fn c11_by_hand() {
        // M = 2, r = 1, c1 = 5^5, c4 = (4·5^5)²(3·5^5), c5 = c6 = 4^4.
        let expect = BigInt::from(4u32).pow(2) * 3u32 * BigInt::from(5u32).pow(15) * 256u32;
        assert_eq!(c_kg_formula(1, 1).value(), expect);
    }

    #[test]
    fn builtin_table_matches_formulas() {
        let t = ConstantsTable::builtin();
        for (key, v) in &t.entries {
            if let (Some(rest), Value::Product(p)) = (key.strip_prefix("C_kg["), v) {
                let (k, g) = rest.trim_end_matches(']').split_once(',').unwrap();
                assert_eq!(*p, c_kg_formula(k.parse().unwrap(), g.parse().unwrap()), "{key}");
            }
            if let (Some(rest), Value::Product(p)) = (key.strip_prefix("C_g["), v) {
                assert_eq!(*p, c_g_formula(rest.trim_end_matches(']').parse().unwrap()), "{key}");
            }
        }
        assert!(t.gamma_fibered(2).is_ok());
    }

    #[test]
    fn override_wins() {
        let t = ConstantsTable::parse("version = test\nC_kg[1,1] = 7\nc_lat[2] = 3\n").unwrap();
        assert_eq!(t.c_kg(1, 1).value(), BigInt::from(7));
        assert_eq!(t.c_lat(2), 3.0);
        assert!(ConstantsTable::parse("C_kg[1,1] = 7\n").is_err());
    }
}
