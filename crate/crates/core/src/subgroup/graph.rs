//! Multihomogeneous polynomials cutting out the graphs of addition and of
//! multiplication by n on the Legendre family.

use crate::error::Result;
use crate::legendre::divpoly::ab_int;
use crate::numbers::poly::Field;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Integer polynomial in named variables grouped into projective blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vec<String>,
    blocks: Vec<Vec<usize>>,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MultiPoly {
    pub fn new(vars: &[&str], blocks: Vec<Vec<usize>>) -> Self {
        MultiPoly { vars: vars.iter().map(|s| s.to_string()).collect(), blocks, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: BigInt) {
        debug_assert_eq!(exps.len(), self.vars.len());
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(exps.clone()).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree in each block, or `None` if some block is not homogeneous.
    pub fn multidegree(&self) -> Option<Vec<u32>> {
        let mut out: Option<Vec<u32>> = None;
        for e in self.terms.keys() {
            let d: Vec<u32> = self.blocks.iter().map(|b| b.iter().map(|&i| e[i]).sum()).collect();
            match &out {
                None => out = Some(d),
                Some(o) if *o != d => return None,
                _ => {}
            }
        }
        Some(out.unwrap_or_else(|| vec![0; self.blocks.len()]))
    }

    pub fn eval<F: Field>(&self, vals: &[F]) -> F {
        assert_eq!(vals.len(), self.vars.len());
        let zero = vals[0].zero_like();
        let mut acc = zero.clone();
        for (e, c) in &self.terms {
            let mut t = zero.from_q(&num_rational::BigRational::from_integer(c.clone()));
            for (v, &k) in vals.iter().zip(e) {
                for _ in 0..k {
                    t = t.mul(v);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest exponent vectors first so the output reads like hand-written forms.
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono: Vec<String> = self
                .vars
                .iter()
                .zip(e)
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{mag}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

const ADD_VARS: [&str; 11] = ["L", "M", "X1", "Y1", "Z1", "X2", "Y2", "Z2", "X3", "Y3", "Z3"];

/// The determinant |X1 Y1 Z1; X2 Y2 Z2; X3 −Y3 Z3|, vanishing on the graph of
/// addition; blocks (Λ,M), P1, P2, P3.
pub fn addition_graph_polynomial() -> MultiPoly {
    let mut p = MultiPoly::new(&ADD_VARS, vec![vec![0, 1], vec![2, 3, 4], vec![5, 6, 7], vec![8, 9, 10]]);
    let mono = |idx: [usize; 3]| {
        let mut e = vec![0u32; 11];
        for i in idx {
            e[i] += 1;
        }
        e
    };
    // X1Y2Z3 − Y1X2Z3 + X1Z2Y3 − Z1X2Y3 + Y1Z2X3 − Z1Y2X3
    let (x1, y1, z1, x2, y2, z2, x3, y3, z3) = (2, 3, 4, 5, 6, 7, 8, 9, 10);
    for (m, s) in [
        ([x1, y2, z3], 1),
        ([y1, x2, z3], -1),
        ([x1, z2, y3], 1),
        ([z1, x2, y3], -1),
        ([y1, z2, x3], 1),
        ([z1, y2, x3], -1),
    ] {
        p.add_term(mono(m), BigInt::from(s));
    }
    p
}

const MUL_VARS: [&str; 8] = ["L", "M", "X1", "Y1", "Z1", "X2", "Y2", "Z2"];

/// Z₂·Ã_n − X₂·B̃_n, with Ã_n = Z₁^{n²}M^e·A_n(X₁/Z₁, Λ/M) and B̃_n likewise
/// (both of degree n² in (X₁,Z₁) and e in (Λ,M)); vanishes on the graph of [n].
/// For n = 0 the polynomial is Z₂; negative n gives the same polynomial as |n|
/// since it does not involve Y₂.
pub fn multiplication_graph_polynomial(n: i64) -> Result<MultiPoly> {
    let blocks = vec![vec![0, 1], vec![2, 3, 4], vec![5, 6, 7]];
    let mut p = MultiPoly::new(&MUL_VARS, blocks);
    let n = n.unsigned_abs();
    if n == 0 {
        p.add_term(vec![0, 0, 0, 0, 0, 0, 0, 1], BigInt::one());
        return Ok(p);
    }
    let ab = ab_int(n as u32)?;
    let (a, b) = (&ab.0, &ab.1);
    let d = (n * n) as u32;
    let e = a.deg_lambda().unwrap_or(0).max(b.deg_lambda().unwrap_or(0)) as u32;
    for (poly, slot, sign) in [(a, 7usize, 1i32), (b, 5usize, -1i32)] {
        for (i, row) in poly.rows.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (i, j) = (i as u32, j as u32);
                let mut ex = vec![j, e - j, i, 0, d - i, 0, 0, 0];
                ex[slot] = 1;
                p.add_term(ex, if sign > 0 { c.clone() } else { -c.clone() });
            }
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::legendre::curve::{add, multiply, LegendreFiber};
    use crate::numbers::poly::{q, Q};

    fn coords(p: &crate::legendre::LegendrePoint) -> Vec<Q> {
        p.projective().iter().map(|c| c.to_rational().unwrap()).collect()
    }

    #[test]
    fn addition_polynomial_shape() {
        let p = addition_graph_polynomial();
        assert_eq!(p.multidegree(), Some(vec![0, 1, 1, 1]));
        assert_eq!(p.terms().len(), 6);
        // 2-torsion triple (0,0,1), (1,0,1), (λ,0,1).
        let v: Vec<Q> = [2, 1, 0, 0, 1, 1, 0, 1, 2, 0, 1].iter().map(|&x| q(x)).collect();
        assert!(p.eval(&v).is_zero());
    }

    #[test]
    fn addition_polynomial_on_graph() {
        // λ = −3 has the rational points (−1, ±2) and (3, ±6).
        let f = LegendreFiber::rational(q(-3)).unwrap();
        let p1 = f.point_q(q(-1), q(2)).unwrap();
        let p2 = f.point_q(q(3), q(6)).unwrap();
        let s = add(&p1, &p2).unwrap();
        let poly = addition_graph_polynomial();
        let mut v = vec![q(-3), q(1)];
        v.extend(coords(&p1));
        v.extend(coords(&p2));
        v.extend(coords(&s));
        assert!(poly.eval(&v).is_zero());
        // Off the graph: −R must avoid P1, P2 and −(P1+P2), the three points on their line.
        let wrong = multiply(2, &p2);
        let nw = wrong.neg();
        assert!(nw != p1 && nw != p2 && nw != s.neg());
        let mut v2 = v[..8].to_vec();
        v2.extend(coords(&wrong));
        assert!(!poly.eval(&v2).is_zero());
    }

    #[test]
    fn multiplication_polynomial_shapes() {
        let p2 = multiplication_graph_polynomial(2).unwrap();
        assert_eq!(p2.multidegree(), Some(vec![2, 4, 1]));
        let p1 = multiplication_graph_polynomial(1).unwrap();
        assert_eq!(p1.multidegree(), Some(vec![0, 1, 1]));
        assert_eq!(p1.to_string(), "X1*Z2 - Z1*X2");
        let p0 = multiplication_graph_polynomial(0).unwrap();
        assert_eq!(p0.to_string(), "Z2");
        assert_eq!(multiplication_graph_polynomial(-3).unwrap(), multiplication_graph_polynomial(3).unwrap());
    }

    #[test]
    fn multiplication_polynomial_on_graph() {
        let f = LegendreFiber::rational(q(-3)).unwrap();
        let p = f.point_q(q(3), q(6)).unwrap();
        for n in 1..=6i64 {
            let poly = multiplication_graph_polynomial(n).unwrap();
            let mut v = vec![q(-3), q(1)];
            v.extend(coords(&p));
            v.extend(coords(&multiply(n, &p)));
            assert!(poly.eval(&v).is_zero(), "n = {n}");
        }
    }
}
