//! Exact real expressions and the log-space bound type built on them.
//!
//! An [`Expr`] is a finite sum `Σ q · f₁ ⋯ f_r` with rational `q` and factors
//! `ln n`, `ln ln n` or `b^e` (0 < e < 1). Logarithms of integers are split
//! over primes so ℚ-linear relations between them are visible syntactically.
//! Signs of non-constant expressions are settled by dyadic interval evaluation.

use crate::error::{Error, Result};
use crate::numbers::arith::factorize_bigint;
use crate::numbers::real::{ln_rational_dy, pow_rational_dy, Dy};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

type Q = BigRational;

/// Precision ladder for sign determination, in bits.
const PRECISIONS: [u32; 6] = [64, 128, 256, 512, 1024, 2048];

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Factor {
    /// ln n, n ≥ 2
    Ln(BigInt),
    /// ln ln n, n ≥ 3
    LnLn(BigInt),
    /// b^e with b > 0, b ≠ 1 and 0 < e < 1
    Pow(Q, Q),
}

impl Factor {
    fn eval(&self, prec: u32) -> Dy {
        match self {
            Factor::Ln(n) => ln_rational_dy(&Q::from_integer(n.clone()), prec),
            Factor::LnLn(n) => {
                let l = ln_rational_dy(&Q::from_integer(n.clone()), prec + 8);
                let r = l.ln().expect("ln n > 0 for n ≥ 3");
                Dy { lo: r.lo >> 8u32, hi: (r.hi >> 8u32) + 1, prec }
            }
            Factor::Pow(b, e) => pow_rational_dy(b, e, prec),
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Ln(n) => write!(f, "ln({n})"),
            Factor::LnLn(n) => write!(f, "lnln({n})"),
            Factor::Pow(b, e) => write!(f, "({b})^({e})"),
        }
    }
}

type Monomial = Vec<Factor>;

/// Exact real expression; see the module docs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Expr {
    terms: BTreeMap<Monomial, Q>,
}

fn factor_limit_bits() -> u64 {
    160
}

/// ln of a positive integer as a sum of prime logarithms.
fn ln_integer(n: &BigInt) -> Expr {
    assert!(n.is_positive());
    let mut e = Expr::zero();
    if n.is_one() {
        return e;
    }
    if n.bits() <= factor_limit_bits() {
        for (p, k) in factorize_bigint(n) {
            e.add_term(vec![Factor::Ln(p)], Q::from_integer(k.into()));
        }
    } else {
        // Too large to factor: strip small primes, keep the cofactor whole.
        let mut m = n.clone();
        let mut p = 2u32;
        while p < 1000 {
            let bp = BigInt::from(p);
            let mut k = 0;
            while (&m % &bp).is_zero() {
                m /= &bp;
                k += 1;
            }
            if k > 0 {
                e.add_term(vec![Factor::Ln(bp)], Q::from_integer(k.into()));
            }
            p += 1;
        }
        if !m.is_one() {
            e.add_term(vec![Factor::Ln(m)], Q::one());
        }
    }
    e
}

fn pow_factor(b: &Q, e: &Q) -> (Q, Option<Factor>) {
    // b^e = b^⌊e⌋ · b^{e−⌊e⌋}
    let fl = e.floor();
    let frac = e - &fl;
    let k = fl.to_integer();
    let c = if k.is_negative() {
        Q::one() / pow_q(b, &(-k))
    } else {
        pow_q(b, &k)
    };
    if frac.is_zero() || b.is_one() {
        (c, None)
    } else {
        (c, Some(Factor::Pow(b.clone(), frac)))
    }
}

fn pow_q(b: &Q, k: &BigInt) -> Q {
    let k = k.to_u32().expect("exponent fits u32");
    num_traits::pow(b.clone(), k as usize)
}

impl Expr {
    pub fn zero() -> Expr {
        Expr::default()
    }

    pub fn constant(q: Q) -> Expr {
        let mut e = Expr::zero();
        e.add_term(Vec::new(), q);
        e
    }

    pub fn int(n: i64) -> Expr {
        Expr::constant(Q::from_integer(n.into()))
    }

    /// ln q for a positive rational q.
    pub fn ln_rational(q: &Q) -> Result<Expr> {
        if !q.is_positive() {
            return Err(Error::Domain(format!("ln of non-positive {q}")));
        }
        Ok(ln_integer(q.numer()).sub(&ln_integer(q.denom())))
    }

    pub fn ln_u64(n: u64) -> Expr {
        ln_integer(&BigInt::from(n.max(1)))
    }

    /// b^e for positive rational b and rational e.
    pub fn pow(b: &Q, e: &Q) -> Result<Expr> {
        if !b.is_positive() {
            return Err(Error::Domain(format!("power of non-positive base {b}")));
        }
        let (c, f) = pow_factor(b, e);
        let mut out = Expr::zero();
        out.add_term(f.into_iter().collect(), c);
        Ok(out)
    }

    fn add_term(&mut self, mut m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        m.sort();
        let e = self.terms.entry(m.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value when the expression has no transcendental factor.
    pub fn as_rational(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Factor], &Q)> {
        self.terms.iter().map(|(m, c)| (m.as_slice(), c))
    }

    /// Coefficient of the monomial made of exactly `m`.
    pub fn coeff(&self, m: &[Factor]) -> Q {
        let mut k = m.to_vec();
        k.sort();
        self.terms.get(&k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add(&self, o: &Expr) -> Expr {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn neg(&self) -> Expr {
        self.scale(&-Q::one())
    }

    pub fn sub(&self, o: &Expr) -> Expr {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &Q) -> Expr {
        let mut r = Expr::zero();
        for (m, c) in &self.terms {
            r.add_term(m.clone(), c * k);
        }
        r
    }

    pub fn mul(&self, o: &Expr) -> Expr {
        let mut r = Expr::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let mut m = m1.clone();
                m.extend(m2.iter().cloned());
                r.add_term(m, c1 * c2);
            }
        }
        r
    }

    /// ln of this expression, available when the value is a positive rational
    /// or a positive rational multiple of ln n.
    pub fn ln(&self) -> Result<Expr> {
        if let Some(q) = self.as_rational() {
            return Expr::ln_rational(&q);
        }
        if let Some((c, n)) = self.as_log_of_integer() {
            if n > BigInt::from(2) {
                let mut r = Expr::ln_rational(&c)?;
                r.add_term(vec![Factor::LnLn(n)], Q::one());
                return Ok(r);
            }
        }
        Err(Error::Domain(format!("ln of {self} is not representable")))
    }

    /// Write a positive combination Σ k_p ln p as c·ln n with n ∈ ℤ minimal.
    fn as_log_of_integer(&self) -> Option<(Q, BigInt)> {
        let mut ps = Vec::new();
        for (m, c) in &self.terms {
            match m.as_slice() {
                [Factor::Ln(p)] if c.is_positive() => ps.push((p.clone(), c.clone())),
                _ => return None,
            }
        }
        let num = ps.iter().fold(BigInt::zero(), |a, (_, c)| a.gcd(c.numer()));
        let den = ps.iter().fold(BigInt::one(), |a, (_, c)| a.lcm(c.denom()));
        let g = Q::new(num, den);
        let mut n = BigInt::one();
        for (p, c) in &ps {
            let e = (c / &g).to_integer().to_usize()?;
            n *= num_traits::pow(p.clone(), e);
        }
        Some((g, n))
    }

    /// Dyadic enclosure at `prec` bits.
    pub fn eval(&self, prec: u32) -> Dy {
        let mut acc = Dy::from_int(0, prec);
        for (m, c) in &self.terms {
            let mut t = Dy::from_rational(c, prec + 16);
            for f in m {
                t = t.mul(&f.eval(prec + 16));
            }
            acc = acc.add(&Dy { lo: t.lo >> 16u32, hi: (t.hi >> 16u32) + 1, prec });
        }
        acc
    }

    pub fn approx(&self) -> f64 {
        if let Some(q) = self.as_rational() {
            return q.to_f64().unwrap_or(f64::NAN);
        }
        self.eval(96).to_interval().mid()
    }

    /// Sign, exact for constants and certified otherwise. Expressions whose
    /// enclosure still straddles zero at the finest precision are reported as zero.
    pub fn sign(&self) -> Ordering {
        if let Some(q) = self.as_rational() {
            return q.cmp(&Q::zero());
        }
        for p in PRECISIONS {
            if let Some(s) = self.eval(p).sign() {
                return s;
            }
        }
        Ordering::Equal
    }

    /// Sign only when it can be certified.
    pub fn certified_sign(&self) -> Option<Ordering> {
        if let Some(q) = self.as_rational() {
            return Some(q.cmp(&Q::zero()));
        }
        PRECISIONS.iter().find_map(|&p| self.eval(p).sign())
    }

    pub fn cmp_expr(&self, o: &Expr) -> Ordering {
        self.sub(o).sign()
    }

    pub fn max_expr(&self, o: &Expr) -> Expr {
        if self.cmp_expr(o) == Ordering::Less { o.clone() } else { self.clone() }
    }

    /// Parse the syntax produced by `Display`.
    pub fn parse(s: &str) -> Result<Expr> {
        Parser { s: s.as_bytes(), i: 0 }.expr()
    }
}

fn fmt_q(q: &Q) -> String {
    if q.is_integer() { q.numer().to_string() } else { format!("{}/{}", q.numer(), q.denom()) }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let (sign, mag) = if c.is_negative() { ("-", -c.clone()) } else { ("+", c.clone()) };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if m.is_empty() {
                write!(f, "{}", fmt_q(&mag))?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", fmt_q(&mag))?;
                }
                let parts: Vec<String> = m.iter().map(|x| x.to_string()).collect();
                write!(f, "{}", parts.join("*"))?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
}

impl Parser<'_> {
    fn err<T>(&self, what: &str) -> Result<T> {
        Err(Error::Format(format!("expression: {what} at byte {}", self.i)))
    }

    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i] == b' ' {
            self.i += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.i).copied()
    }

    fn eat(&mut self, t: &str) -> bool {
        if self.s[self.i..].starts_with(t.as_bytes()) {
            self.i += t.len();
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let st = self.i;
        if self.peek() == Some(b'-') {
            self.i += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.i += 1;
        }
        let t = std::str::from_utf8(&self.s[st..self.i]).unwrap();
        t.parse::<BigInt>().or_else(|_| self.err("integer expected"))
    }

    fn rational(&mut self) -> Result<Q> {
        let n = self.integer()?;
        if self.peek() == Some(b'/') {
            self.i += 1;
            let d = self.integer()?;
            if d.is_zero() {
                return self.err("zero denominator");
            }
            Ok(Q::new(n, d))
        } else {
            Ok(Q::from_integer(n))
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.eat("lnln(") {
            let n = self.integer()?;
            if !self.eat(")") || n < BigInt::from(3) {
                return self.err("bad lnln");
            }
            let mut e = Expr::zero();
            e.add_term(vec![Factor::LnLn(n)], Q::one());
            Ok(e)
        } else if self.eat("ln(") {
            let n = self.integer()?;
            if !self.eat(")") || !n.is_positive() {
                return self.err("bad ln");
            }
            Ok(ln_integer(&n))
        } else if self.eat("(") {
            let b = self.rational()?;
            if !self.eat(")^(") {
                return self.err("bad power");
            }
            let e = self.rational()?;
            if !self.eat(")") {
                return self.err("bad power");
            }
            Expr::pow(&b, &e)
        } else {
            Ok(Expr::constant(self.rational()?))
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut t = self.factor()?;
        while self.eat("*") {
            t = t.mul(&self.factor()?);
        }
        Ok(t)
    }

    fn expr(&mut self) -> Result<Expr> {
        self.ws();
        let neg = self.eat("-");
        let mut e = self.term()?;
        if neg {
            e = e.neg();
        }
        loop {
            self.ws();
            if self.i == self.s.len() {
                return Ok(e);
            }
            let sub = if self.eat("+") {
                false
            } else if self.eat("-") {
                true
            } else {
                return self.err("operator expected");
            };
            self.ws();
            let t = self.term()?;
            e = if sub { e.sub(&t) } else { e.add(&t) };
        }
    }
}

/// A non-negative real stored through its natural logarithm.
///
/// `LogBound::zero()` stands for the value 0; every other value is ≥ 1, so
/// its logarithm is non-negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogBound {
    log: Option<Expr>,
}

impl LogBound {
    pub fn zero() -> LogBound {
        LogBound { log: None }
    }

    pub fn one() -> LogBound {
        LogBound { log: Some(Expr::zero()) }
    }

    /// The bound e^log. Rejects logarithms that are certainly negative.
    pub fn from_log(log: Expr) -> Result<LogBound> {
        if log.certified_sign() == Some(Ordering::Less) {
            return Err(Error::Domain(format!("log-bound {log} is below 0")));
        }
        Ok(LogBound { log: Some(log) })
    }

    /// Value max{1, q}; zero maps to zero.
    pub fn from_rational(q: &Q) -> Result<LogBound> {
        if q.is_negative() {
            return Err(Error::Domain(format!("negative bound {q}")));
        }
        if q.is_zero() {
            return Ok(LogBound::zero());
        }
        if q < &Q::one() {
            return Ok(LogBound::one());
        }
        Ok(LogBound { log: Some(Expr::ln_rational(q)?) })
    }

    pub fn from_u64(n: u64) -> LogBound {
        if n == 0 { LogBound::zero() } else { LogBound { log: Some(Expr::ln_u64(n)) } }
    }

    pub fn from_bigint(n: &BigInt) -> Result<LogBound> {
        LogBound::from_rational(&Q::from_integer(n.clone()))
    }

    /// exp(e) for an exact non-negative expression e.
    pub fn exp(e: Expr) -> Result<LogBound> {
        LogBound::from_log(e)
    }

    pub fn is_zero(&self) -> bool {
        self.log.is_none()
    }

    pub fn log(&self) -> Option<&Expr> {
        self.log.as_ref()
    }

    pub fn mul(&self, o: &LogBound) -> LogBound {
        match (&self.log, &o.log) {
            (Some(a), Some(b)) => LogBound { log: Some(a.add(b)) },
            _ => LogBound::zero(),
        }
    }

    /// self^k for rational k ≥ 0.
    pub fn pow(&self, k: &Q) -> LogBound {
        if k.is_zero() {
            return LogBound::one();
        }
        match &self.log {
            Some(l) => LogBound { log: Some(l.scale(k)) },
            None => LogBound::zero(),
        }
    }

    pub fn pow_u64(&self, k: u64) -> LogBound {
        self.pow(&Q::from_integer(k.into()))
    }

    pub fn max(&self, o: &LogBound) -> LogBound {
        if self.cmp_bound(o) == Ordering::Less { o.clone() } else { self.clone() }
    }

    /// Certified comparison of the represented values.
    pub fn cmp_bound(&self, o: &LogBound) -> Ordering {
        match (&self.log, &o.log) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(a), Some(b)) => a.cmp_expr(b),
        }
    }

    pub fn le(&self, o: &LogBound) -> bool {
        self.cmp_bound(o) != Ordering::Greater
    }

    /// Natural log as f64 (−∞ for zero).
    pub fn ln_approx(&self) -> f64 {
        self.log.as_ref().map_or(f64::NEG_INFINITY, |l| l.approx())
    }

    pub fn log10_approx(&self) -> f64 {
        self.ln_approx() / std::f64::consts::LN_10
    }

    /// Exact value when it is an integer small enough to materialize.
    pub fn to_integer(&self) -> Option<BigInt> {
        match &self.log {
            None => Some(BigInt::zero()),
            Some(l) => {
                let mut v = BigInt::one();
                for (m, c) in l.terms() {
                    match m {
                        [Factor::Ln(p)] if c.is_integer() && !c.is_negative() => {
                            let k = c.to_integer().to_u32()?;
                            if (p.bits() as u64) * k as u64 > 1 << 20 {
                                return None;
                            }
                            v *= num_traits::pow(p.clone(), k as usize);
                        }
                        _ => return None,
                    }
                }
                Some(v)
            }
        }
    }

    /// Exact textual form: `exp(<expr>)` or `0`.
    pub fn expr_string(&self) -> String {
        match &self.log {
            None => "0".into(),
            Some(l) => format!("exp({l})"),
        }
    }

    pub fn parse(s: &str) -> Result<LogBound> {
        let s = s.trim();
        let s = s.split(" [").next().unwrap_or(s).trim();
        if s == "0" {
            return Ok(LogBound::zero());
        }
        let inner = s
            .strip_prefix("exp(")
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Format(format!("log-bound: expected exp(...) in {s:?}")))?;
        LogBound::from_log(Expr::parse(inner)?)
    }

    /// Decimal display of log₁₀, e.g. `10^12.345678`.
    pub fn log10_display(&self) -> String {
        match &self.log {
            None => "0".into(),
            Some(_) => {
                let l = self.log10_approx();
                if l < 15.0 {
                    let v = 10f64.powf(l);
                    format!("{v:.6e} (10^{l:.6})")
                } else {
                    format!("10^{l:.6e}")
                }
            }
        }
    }

    pub fn record(&self, name: &str, inputs: &[(&str, String)]) -> BoundRecord {
        BoundRecord {
            name: name.to_string(),
            log_value: self.log.as_ref().map_or("-inf".to_string(), |l| l.to_string()),
            ln_approx: self.ln_approx(),
            log10_display: self.log10_display(),
            inputs: inputs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
        }
    }
}

impl fmt::Display for LogBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.log {
            None => write!(f, "0"),
            Some(_) => write!(f, "{} [ln ~ {:.12}]", self.expr_string(), self.ln_approx()),
        }
    }
}

impl Serialize for LogBound {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.expr_string())
    }
}

impl<'de> Deserialize<'de> for LogBound {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        LogBound::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Serialized form of a named bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundRecord {
    pub name: String,
    pub log_value: String,
    pub ln_approx: f64,
    pub log10_display: String,
    pub inputs: BTreeMap<String, String>,
}

/// Parse a decimal or fraction ("1.25", "-3/4", "2e10") into an exact rational.
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Q::new(n, d));
    }
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (ip, fp) = mant.split_once('.').unwrap_or((mant, ""));
    if ip.is_empty() && fp.is_empty() || !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{ip}{fp}").parse().map_err(|_| bad())?;
    let scale = exp - fp.len() as i32;
    let ten = BigInt::from(10);
    let mut q = if scale >= 0 {
        Q::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        Q::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        q = -q;
    }
    Ok(q)
}

/// Exact ⌈x⌉ for a rational.
pub fn ceil_q(x: &Q) -> BigInt {
    let (d, r) = x.numer().div_mod_floor(x.denom());
    if r.is_zero() { d } else { d + 1 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::poly::qr;

    #[test]
    fn ln_splits_over_primes() {
        let a = Expr::ln_u64(18000);
        let b = Expr::ln_u64(2).scale(&qr(4, 1)).add(&Expr::ln_u64(3).scale(&qr(2, 1))).add(&Expr::ln_u64(5).scale(&qr(3, 1)));
        assert_eq!(a, b);
        assert!(Expr::ln_u64(4).sub(&Expr::ln_u64(2).scale(&qr(2, 1))).is_zero());
    }

    #[test]
    fn pow_normalises_integer_part() {
        let e = Expr::pow(&qr(2, 1), &qr(18, 5)).unwrap();
        assert_eq!(e.to_string(), "8*(2)^(3/5)");
        assert!((e.approx() - 2f64.powf(3.6)).abs() < 1e-12);
        assert_eq!(Expr::pow(&qr(3, 1), &qr(2, 1)).unwrap().as_rational(), Some(qr(9, 1)));
    }

    #[test]
    fn certified_comparison() {
        // 4 ln 18 < 2^{18/5}
        let a = Expr::ln_u64(18).scale(&qr(4, 1));
        let b = Expr::pow(&qr(2, 1), &qr(18, 5)).unwrap();
        assert_eq!(a.cmp_expr(&b), Ordering::Less);
        assert_eq!(Expr::ln_u64(7).cmp_expr(&Expr::ln_u64(7)), Ordering::Equal);
    }

    #[test]
    fn display_parse_roundtrip() {
        let e = Expr::ln_u64(12)
            .scale(&qr(-7, 3))
            .add(&Expr::int(22_000_000_000))
            .add(&Expr::pow(&qr(5, 2), &qr(1, 3)).unwrap())
            .add(&Expr::ln_u64(10).ln().unwrap());
        let s = e.to_string();
        assert_eq!(Expr::parse(&s).unwrap(), e, "{s}");
        let b = LogBound::from_log(Expr::ln_u64(18000).scale(&qr(4, 1))).unwrap();
        assert_eq!(LogBound::parse(&b.to_string()).unwrap(), b);
    }

    #[test]
    fn integers_materialize() {
        let b = LogBound::from_u64(18000).pow_u64(4);
        assert_eq!(b.to_integer(), Some(BigInt::from(18000u64).pow(4)));
        assert_eq!(LogBound::from_u64(1).to_integer(), Some(BigInt::one()));
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("1.25").unwrap(), qr(5, 4));
        assert_eq!(parse_rational("-3/4").unwrap(), qr(-3, 4));
        assert_eq!(parse_rational("2.2e10").unwrap(), qr(22_000_000_000, 1));
        assert_eq!(parse_rational("1e-3").unwrap(), qr(1, 1000));
        assert!(parse_rational("abc").is_err());
    }
}
