//! Classical modular polynomials Φ_m(J₁, J₂) read from a text table.

use crate::error::{Error, Result};
use crate::numbers::arith::factorize_u64;
use crate::numbers::poly::Q;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::path::Path;

const BUILTIN: &str = include_str!("../../data/moddb.txt");

/// Φ_m stored by (a, b) ↦ coefficient of J₁^a J₂^b, for every a and b.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ModularPolyDB {
    entries: BTreeMap<u64, BTreeMap<(u32, u32), BigInt>>,
}

/// ψ(m) = m·∏_{p | m}(1 + 1/p), the degree of Φ_m in each variable.
pub fn psi(m: u64) -> u64 {
    factorize_u64(m).iter().fold(m, |acc, &(p, _)| acc / p * (p + 1))
}

impl ModularPolyDB {
    pub fn builtin() -> ModularPolyDB {
        ModularPolyDB::parse(BUILTIN).expect("shipped table is valid")
    }

    pub fn load(path: &Path) -> Result<ModularPolyDB> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        ModularPolyDB::parse(&text)
    }

    /// Parse "m a b c" lines; for m ≥ 2 only a ≥ b is stored and the mirror is implied.
    pub fn parse(text: &str) -> Result<ModularPolyDB> {
        let mut entries: BTreeMap<u64, BTreeMap<(u32, u32), BigInt>> = BTreeMap::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |why: &str| Error::Format(format!("modular db line {}: {why}", ln + 1));
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 4 {
                return Err(bad("expected 'm a b coefficient'"));
            }
            let m: u64 = f[0].parse().map_err(|_| bad("bad m"))?;
            let a: u32 = f[1].parse().map_err(|_| bad("bad a"))?;
            let b: u32 = f[2].parse().map_err(|_| bad("bad b"))?;
            let c: BigInt = f[3].parse().map_err(|_| bad("bad coefficient"))?;
            if m == 0 {
                return Err(bad("m must be positive"));
            }
            if m >= 2 && a < b {
                return Err(bad("terms must be stored with a >= b"));
            }
            let e = entries.entry(m).or_default();
            let mut put = |k: (u32, u32)| -> Result<()> {
                if e.insert(k, c.clone()).is_some() {
                    return Err(bad("duplicate term"));
                }
                Ok(())
            };
            put((a, b))?;
            if m >= 2 && a != b {
                put((b, a))?;
            }
        }
        let db = ModularPolyDB { entries };
        db.validate()?;
        Ok(db)
    }

    fn validate(&self) -> Result<()> {
        let phi1: BTreeMap<(u32, u32), BigInt> = [((1, 0), BigInt::one()), ((0, 1), -BigInt::one())].into_iter().collect();
        if let Some(p) = self.entries.get(&1) {
            if *p != phi1 {
                return Err(Error::Format("Phi_1 must be J1 - J2".into()));
            }
        }
        for (&m, p) in &self.entries {
            if m == 1 {
                continue;
            }
            let d = psi(m) as u32;
            let da = p.keys().map(|k| k.0).max().unwrap_or(0);
            if da != d || p.get(&(d, 0)) != Some(&BigInt::one()) {
                return Err(Error::Format(format!("Phi_{m} must have degree {d} with J1^{d} coefficient 1")));
            }
        }
        Ok(())
    }

    /// Φ_m, with Φ₁ = J₁ − J₂ always available.
    pub fn get(&self, m: u64) -> Result<BTreeMap<(u32, u32), BigInt>> {
        if m == 1 {
            return Ok([((1, 0), BigInt::one()), ((0, 1), -BigInt::one())].into_iter().collect());
        }
        self.entries.get(&m).cloned().ok_or(Error::DbIncomplete(m))
    }

    pub fn degrees(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.entries.keys().copied().collect();
        if !v.contains(&1) {
            v.insert(0, 1);
        }
        v
    }

    /// Φ_m(j1, j2), exactly.
    pub fn eval(&self, m: u64, j1: &Q, j2: &Q) -> Result<Q> {
        let p = self.get(m)?;
        let mut acc = Q::zero();
        for ((a, b), c) in p {
            acc += Q::from_integer(c) * num_traits::pow(j1.clone(), a as usize) * num_traits::pow(j2.clone(), b as usize);
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::poly::q;

    #[test]
    fn psi_values() {
        assert_eq!(psi(1), 1);
        assert_eq!(psi(2), 3);
        assert_eq!(psi(3), 4);
        assert_eq!(psi(4), 6);
        assert_eq!(psi(6), 12);
    }

    #[test]
    fn builtin_table() {
        let db = ModularPolyDB::builtin();
        assert_eq!(db.degrees(), vec![1, 2, 3]);
        assert_eq!(db.eval(2, &q(1728), &q(287496)).unwrap(), q(0));
        assert_eq!(db.eval(2, &q(287496), &q(1728)).unwrap(), q(0));
        assert_eq!(db.eval(3, &q(0), &q(-12288000)).unwrap(), q(0));
        assert_eq!(db.eval(1, &q(5), &q(5)).unwrap(), q(0));
        assert_eq!(db.get(4), Err(Error::DbIncomplete(4)));
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(ModularPolyDB::parse("1 1 0 2\n1 0 1 -1\n").is_err());
        assert!(ModularPolyDB::parse("2 0 3 1\n").is_err());
        assert!(ModularPolyDB::parse("2 2 0 1\n").is_err());
        assert!(ModularPolyDB::parse("2 3 0 1\n2 3 0 1\n").is_err());
        assert!(ModularPolyDB::parse("2 3 0\n").is_err());
    }
}
