//! Curves in the Legendre surface given by bihomogeneous forms in ((Λ,M),(X,Y,Z)).

use crate::bounds::logbound::parse_rational;
use crate::error::{Error, Result};
use crate::legendre::bivariate::IPoly2;
use crate::legendre::divpoly::cubic;
use crate::numbers::numfield::Nf;
use crate::numbers::poly::{Field, QPoly, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecTerm {
    pub e_lambda: u32,
    pub e_m: u32,
    pub e_x: u32,
    pub e_y: u32,
    pub e_z: u32,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecPoly {
    pub terms: Vec<SpecTerm>,
}

/// Numbers in the file may be written as JSON numbers or as strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NumText {
    Int(u64),
    Float(f64),
    Text(String),
}

impl NumText {
    fn to_q(&self) -> Result<Q> {
        match self {
            NumText::Int(n) => Ok(Q::from_integer((*n).into())),
            NumText::Float(f) => parse_rational(&f.to_string()),
            NumText::Text(s) => parse_rational(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveFile {
    pub polys: Vec<SpecPoly>,
    #[serde(rename = "D1")]
    pub d1: u32,
    #[serde(rename = "D2")]
    pub d2: u32,
    #[serde(rename = "H", default = "zero_text")]
    pub h: NumText,
}

fn zero_text() -> NumText {
    NumText::Int(0)
}

/// One validated form: coefficients keyed by (e_Λ, e_M, e_X, e_Y, e_Z).
#[derive(Clone, Debug, PartialEq)]
pub struct Form {
    pub terms: BTreeMap<[u32; 5], Q>,
    pub bidegree: (u32, u32),
}

/// The form on the chart M = 1, Z = 1, reduced modulo Y² = X(X−1)(X−Λ) to F₀ + Y·F₁.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedForm {
    pub f0: IPoly2,
    pub f1: IPoly2,
    /// F₀² − X(X−1)(X−Λ)·F₁², vanishing at both (x, ±y) whenever the form vanishes at (x, y).
    pub norm: IPoly2,
}

/// A validated curve specification.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveSpec {
    pub forms: Vec<Form>,
    pub d1: u32,
    pub d2: u32,
    pub h: Q,
}

impl CurveSpec {
    pub fn from_file(f: &CurveFile) -> Result<CurveSpec> {
        if f.polys.is_empty() {
            return Err(Error::Format("curve needs at least one polynomial".into()));
        }
        if f.d1 < 1 || f.d2 < 1 {
            return Err(Error::Format("D1 and D2 must be at least 1".into()));
        }
        let h = f.h.to_q()?;
        if h < Q::zero() {
            return Err(Error::Format("H must be non-negative".into()));
        }
        let mut forms = Vec::new();
        for (i, p) in f.polys.iter().enumerate() {
            let mut terms: BTreeMap<[u32; 5], Q> = BTreeMap::new();
            for t in &p.terms {
                let c = parse_rational(&t.coeff).map_err(|_| Error::Format(format!("poly {i}: bad coefficient {:?}", t.coeff)))?;
                let e = terms.entry([t.e_lambda, t.e_m, t.e_x, t.e_y, t.e_z]).or_insert_with(Q::zero);
                *e += c;
            }
            terms.retain(|_, c| !c.is_zero());
            if terms.is_empty() {
                return Err(Error::Format(format!("poly {i} is zero")));
            }
            let mut bideg = None;
            for e in terms.keys() {
                let d = (e[0] + e[1], e[2] + e[3] + e[4]);
                match bideg {
                    None => bideg = Some(d),
                    Some(b) if b != d => {
                        return Err(Error::Format(format!("poly {i} is not bihomogeneous: bidegrees {b:?} and {d:?}")))
                    }
                    _ => {}
                }
            }
            let bidegree = bideg.unwrap();
            if bidegree.0 > f.d1 || bidegree.1 > f.d2 {
                return Err(Error::Format(format!("poly {i} has bidegree {bidegree:?} above ({}, {})", f.d1, f.d2)));
            }
            forms.push(Form { terms, bidegree });
        }
        Ok(CurveSpec { forms, d1: f.d1, d2: f.d2, h })
    }

    pub fn parse_json(text: &str) -> Result<CurveSpec> {
        let f: CurveFile = serde_json::from_str(text).map_err(|e| Error::Format(format!("curve file: {e}")))?;
        CurveSpec::from_file(&f)
    }

    pub fn load(path: &Path) -> Result<CurveSpec> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        CurveSpec::parse_json(&text)
    }

    pub fn to_file(&self) -> CurveFile {
        CurveFile {
            polys: self
                .forms
                .iter()
                .map(|f| SpecPoly {
                    terms: f
                        .terms
                        .iter()
                        .map(|(e, c)| SpecTerm { e_lambda: e[0], e_m: e[1], e_x: e[2], e_y: e[3], e_z: e[4], coeff: c.to_string() })
                        .collect(),
                })
                .collect(),
            d1: self.d1,
            d2: self.d2,
            h: NumText::Text(self.h.to_string()),
        }
    }

    /// The curve cut out by a single form, with the smallest admissible bidegree bounds.
    pub fn single(terms: &[([u32; 5], Q)]) -> Result<CurveSpec> {
        let polys = vec![SpecPoly {
            terms: terms
                .iter()
                .map(|(e, c)| SpecTerm { e_lambda: e[0], e_m: e[1], e_x: e[2], e_y: e[3], e_z: e[4], coeff: c.to_string() })
                .collect(),
        }];
        let d1 = terms.iter().map(|(e, _)| e[0] + e[1]).max().unwrap_or(0).max(1);
        let d2 = terms.iter().map(|(e, _)| e[2] + e[3] + e[4]).max().unwrap_or(0).max(1);
        CurveSpec::from_file(&CurveFile { polys, d1, d2, h: NumText::Int(0) })
    }

    /// Multiply every form by a nonzero rational.
    pub fn scaled(&self, k: &Q) -> CurveSpec {
        let mut s = self.clone();
        for f in s.forms.iter_mut() {
            for c in f.terms.values_mut() {
                *c *= k;
            }
        }
        s
    }

    pub fn reduced(&self) -> Vec<ReducedForm> {
        self.forms.iter().map(reduce_form).collect()
    }

    /// Whether every form vanishes at the zero section [0:1:0] of the fiber over λ.
    pub fn contains_identity_at(&self, lambda: &Nf) -> bool {
        self.forms.iter().all(|f| lambda.eval_qpoly(&identity_poly(f)).is_zero_elem())
    }

    /// The polynomial in Λ whose roots are the fibers where [0:1:0] lies on the curve;
    /// `None` when the zero section lies on it in every fiber.
    pub fn identity_locus(&self) -> Option<QPoly> {
        let mut g: Option<QPoly> = None;
        for f in &self.forms {
            let p = identity_poly(f);
            g = Some(match g {
                None => p,
                Some(h) => h.gcd(&p),
            });
        }
        g.filter(|p| !p.is_zero())
    }

    /// Evaluate every form at (λ, 1, X, Y, Z) and report whether all vanish.
    pub fn vanishes_at(&self, lambda: &Nf, xyz: &[Nf; 3]) -> bool {
        self.forms.iter().all(|f| eval_form(f, lambda, xyz).is_zero_elem())
    }
}

/// F(λ, 1, 0, 1, 0) as a polynomial in λ.
fn identity_poly(f: &Form) -> QPoly {
    let mut c = vec![Q::zero(); f.terms.keys().map(|e| e[0] as usize + 1).max().unwrap_or(1)];
    for (e, v) in &f.terms {
        if e[2] == 0 && e[4] == 0 {
            c[e[0] as usize] += v;
        }
    }
    QPoly::new(c, Q::zero())
}

pub fn eval_form(f: &Form, lambda: &Nf, xyz: &[Nf; 3]) -> Nf {
    let mut acc = lambda.zero_like();
    for (e, c) in &f.terms {
        let mut t = lambda.from_q(c).mul(&lambda.pow(e[0] as u64));
        for (v, &k) in xyz.iter().zip(&e[2..]) {
            t = t.mul(&v.pow(k as u64));
        }
        acc = acc.add(&t);
    }
    acc
}

fn reduce_form(f: &Form) -> ReducedForm {
    // Clear denominators: the zero set is unchanged.
    let l = f.terms.values().fold(BigInt::one(), |a, c| a.lcm(c.denom()));
    let mut f0 = IPoly2::default();
    let mut f1 = IPoly2::default();
    let cub = cubic();
    for (e, c) in &f.terms {
        let ci = (c * Q::from_integer(l.clone())).to_integer();
        let (lam, x, y) = (e[0] as usize, e[2] as usize, e[3]);
        let mut rows = vec![vec![BigInt::zero(); lam + 1]; x + 1];
        rows[x][lam] = ci;
        let mono = IPoly2::new(rows).mul(&cub.pow(y / 2));
        if y % 2 == 0 {
            f0 = f0.add(&mono);
        } else {
            f1 = f1.add(&mono);
        }
    }
    let norm = f0.mul(&f0).sub(&cub.mul(&f1).mul(&f1));
    ReducedForm { f0, f1, norm }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::poly::q;

    pub(crate) const X_MINUS_2Z: &str = r#"{"polys":[{"terms":[
        {"e_lambda":0,"e_m":0,"e_x":1,"e_y":0,"e_z":0,"coeff":"1"},
        {"e_lambda":0,"e_m":0,"e_x":0,"e_y":0,"e_z":1,"coeff":"-2"}]}],
        "D1":1,"D2":1,"H":0}"#;

    #[test]
    fn parse_and_reduce() {
        let c = CurveSpec::parse_json(X_MINUS_2Z).unwrap();
        assert_eq!(c.forms[0].bidegree, (0, 1));
        let r = &c.reduced()[0];
        assert_eq!(r.f0, IPoly2::from_small(&[&[-2], &[1]]));
        assert!(r.f1.is_zero());
        assert_eq!(c.identity_locus(), None);
    }

    #[test]
    fn rejects_bad_input() {
        let bad = X_MINUS_2Z.replace(r#""e_z":1"#, r#""e_z":2"#);
        assert!(matches!(CurveSpec::parse_json(&bad), Err(Error::Format(_))));
        let big = X_MINUS_2Z.replace(r#""D2":1"#, r#""D2":0"#);
        assert!(CurveSpec::parse_json(&big).is_err());
        assert!(CurveSpec::parse_json("{").is_err());
    }

    #[test]
    fn y_reduction() {
        // Y²Z − X³ vanishes on the curve exactly where (1+Λ)X² − ΛX does.
        let c = CurveSpec::single(&[([0, 0, 0, 2, 1], q(1)), ([0, 0, 3, 0, 0], q(-1))]).unwrap();
        let r = &c.reduced()[0];
        assert_eq!(r.f0, IPoly2::from_small(&[&[], &[0, 1], &[-1, -1]]));
    }
}
