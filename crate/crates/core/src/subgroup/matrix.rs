//! Integer matrices presenting algebraic subgroups of E^g, their kernel
//! degrees and short lattice bases.

use crate::constants::{lattice_factor, ConstantsTable};
use crate::error::{pre, Error, Result};
use crate::numbers::linalg::det_int;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::fmt;

/// Non-negative exact degree. The empty set has degree 0.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DegreeValue(pub BigInt);

impl DegreeValue {
    pub fn new(v: BigInt) -> Result<Self> {
        if v.is_negative() {
            return pre(format!("degree {v} is negative"));
        }
        Ok(DegreeValue(v))
    }

    pub fn from_u64(v: u64) -> Self {
        DegreeValue(BigInt::from(v))
    }

    pub fn value(&self) -> &BigInt {
        &self.0
    }
}

impl fmt::Display for DegreeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for DegreeValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

/// k×g integer matrix, 1 ≤ k ≤ g.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupMatrix {
    rows: Vec<Vec<BigInt>>,
    g: usize,
}

impl SubgroupMatrix {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let k = rows.len();
        let g = rows.first().map_or(0, |r| r.len());
        if k == 0 || g == 0 || k > g {
            return pre(format!("matrix shape {k}x{g} needs 1 ≤ k ≤ g"));
        }
        if rows.iter().any(|r| r.len() != g) {
            return pre("ragged matrix");
        }
        Ok(SubgroupMatrix { rows, g })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        SubgroupMatrix::new(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect())
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// U·M for a k×k integer matrix U.
    pub fn left_mul(&self, u: &[Vec<BigInt>]) -> Result<Self> {
        let rows = u
            .iter()
            .map(|ur| {
                (0..self.g)
                    .map(|j| ur.iter().zip(&self.rows).map(|(a, r)| a * &r[j]).sum())
                    .collect()
            })
            .collect();
        SubgroupMatrix::new(rows)
    }
}

/// All increasing k-subsets of 0..n.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let mut i = k;
        while i > 0 && cur[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        cur[i - 1] += 1;
        for j in i..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// The k×k minors of a k×g matrix, one per column subset in lexicographic order.
pub fn maximal_minors(rows: &[Vec<BigInt>]) -> Vec<BigInt> {
    let k = rows.len();
    let g = rows.first().map_or(0, |r| r.len());
    combinations(g, k)
        .into_iter()
        .map(|cols| {
            let sub: Vec<Vec<BigInt>> = rows.iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect()).collect();
            det_int(&sub)
        })
        .collect()
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, i| a * i)
}

/// Degree of the kernel of the homomorphism E^g → E^k given by M:
/// (g−k)!·3^{g−k}·ΣΔ² over the maximal minors Δ.
pub fn kernel_degree(m: &SubgroupMatrix) -> Result<DegreeValue> {
    let sq: BigInt = maximal_minors(&m.rows).iter().map(|d| d * d).sum();
    if sq.is_zero() {
        return pre(format!("matrix has rank < {}", m.k()));
    }
    let e = m.g - m.k();
    Ok(DegreeValue(factorial(e) * num_traits::pow(BigInt::from(3), e) * sq))
}

/// det(M·Mᵗ) = ΣΔ², both sides computed exactly.
pub fn cauchy_binet_check(m: &SubgroupMatrix) -> bool {
    let k = m.k();
    let gram: Vec<Vec<BigInt>> = (0..k)
        .map(|i| (0..k).map(|j| m.rows[i].iter().zip(&m.rows[j]).map(|(a, b)| a * b).sum()).collect())
        .collect();
    let sq: BigInt = maximal_minors(&m.rows).iter().map(|d| d * d).sum();
    det_int(&gram) == sq
}

/// Π(M) = Π max{1, |a_ij|}.
pub fn pi_of_matrix(rows: &[Vec<BigInt>]) -> BigInt {
    rows.iter().flatten().fold(BigInt::one(), |acc, a| {
        let a = a.abs();
        if a > BigInt::one() { acc * a } else { acc }
    })
}

/// Row Hermite normal form; zero rows dropped.
pub fn hermite_normal_form(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let n = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..n {
        if r == a.len() {
            break;
        }
        // Euclid down column c on rows r.. until one nonzero entry remains.
        loop {
            let piv = (r..a.len()).filter(|&i| !a[i][c].is_zero()).min_by_key(|&i| a[i][c].abs());
            let Some(p) = piv else { break };
            a.swap(r, p);
            let mut done = true;
            for i in r + 1..a.len() {
                if !a[i][c].is_zero() {
                    let q = a[i][c].div_floor(&a[r][c]);
                    let pr = a[r].clone();
                    for (x, y) in a[i].iter_mut().zip(&pr) {
                        *x -= &q * y;
                    }
                    if !a[i][c].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            for x in a[r].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..r {
            let q = a[i][c].div_floor(&a[r][c]);
            if !q.is_zero() {
                let pr = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pr) {
                    *x -= &q * y;
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

/// Sublattice of ℤ^g spanned by linearly independent integer vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeBasis {
    #[serde(serialize_with = "ser_rows")]
    pub vectors: Vec<Vec<BigInt>>,
}

fn ser_rows<S: serde::Serializer>(v: &[Vec<BigInt>], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for r in v {
        let r: Vec<String> = r.iter().map(|x| x.to_string()).collect();
        seq.serialize_element(&r)?;
    }
    seq.end()
}

impl LatticeBasis {
    pub fn new(vectors: Vec<Vec<BigInt>>) -> Result<Self> {
        let g = vectors.first().map_or(0, |r| r.len());
        if vectors.is_empty() || g == 0 || vectors.iter().any(|r| r.len() != g) {
            return pre("lattice basis needs equal-length nonempty vectors");
        }
        if vectors.len() > g || maximal_minors(&vectors).iter().all(|d| d.is_zero()) {
            return pre("lattice basis vectors are linearly dependent");
        }
        Ok(LatticeBasis { vectors })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        LatticeBasis::new(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect())
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn gram(&self) -> Vec<Vec<BigInt>> {
        let v = &self.vectors;
        (0..v.len()).map(|i| (0..v.len()).map(|j| dot(&v[i], &v[j])).collect()).collect()
    }

    pub fn gram_det(&self) -> BigInt {
        det_int(&self.gram())
    }

    /// (ℚ·Λ) ∩ ℤ^g = Λ, i.e. the maximal minors are coprime.
    pub fn is_saturated(&self) -> bool {
        maximal_minors(&self.vectors).iter().fold(BigInt::zero(), |a, d| a.gcd(d)).is_one()
    }

    /// Same lattice, compared through Hermite normal forms.
    pub fn same_lattice(&self, o: &LatticeBasis) -> bool {
        hermite_normal_form(&self.vectors) == hermite_normal_form(&o.vectors)
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm_sq(a: &[BigInt]) -> BigInt {
    dot(a, a)
}

/// Per-vector norm data certifying ‖vᵢ‖ ≤ k·2^k·ν_k⁻¹·D.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BasisCertificate {
    pub norms: Vec<f64>,
    pub bound: f64,
    pub gram_det: String,
    /// Each inequality, decided with exact rational enclosures of π.
    pub holds: Vec<bool>,
}

impl BasisCertificate {
    pub fn all_hold(&self) -> bool {
        self.holds.iter().all(|&b| b)
    }
}

/// Tight rational enclosure of π.
fn pi_bounds() -> (BigRational, BigRational) {
    let d: BigInt = num_traits::pow(BigInt::from(10), 30);
    let lo: BigInt = "3141592653589793238462643383279".parse().unwrap();
    (BigRational::new(lo.clone(), d.clone()), BigRational::new(lo + 1, d))
}

/// ν_k² = r·π^m with r rational; returns (r, m).
fn ball_volume_sq(k: usize) -> (BigRational, usize) {
    let fact = |n: usize| -> BigInt { factorial(n) };
    if k % 2 == 0 {
        // π^{k/2}/(k/2)!
        let f = fact(k / 2);
        (BigRational::new(BigInt::one(), &f * &f), k)
    } else {
        // 2^k ((k−1)/2)! π^{(k−1)/2} / k!
        let num = BigInt::from(2).pow(k as u32) * fact((k - 1) / 2);
        let den = fact(k);
        (BigRational::new(&num * &num, &den * &den), k - 1)
    }
}

/// Exact decision of n² ≤ (k·2^k/ν_k)²·det, i.e. n²·r·π^m ≤ k²·4^k·det.
fn certify_norm(nsq: &BigInt, k: usize, det: &BigInt) -> bool {
    let (r, m) = ball_volume_sq(k);
    let rhs = BigRational::from_integer(BigInt::from(k * k) * BigInt::from(4).pow(k as u32) * det);
    let lhs = BigRational::from_integer(nsq.clone()) * r;
    let (plo, phi) = pi_bounds();
    if m == 0 {
        return lhs <= rhs;
    }
    let hi = &lhs * num_traits::pow(phi, m);
    if hi <= rhs {
        return true;
    }
    let lo = lhs * num_traits::pow(plo, m);
    debug_assert!(lo > rhs, "π enclosure too coarse to decide the certificate");
    false
}

/// Exact LLL with δ = 3/4 on integer vectors.
fn lll(b: &mut [Vec<BigInt>]) {
    let n = b.len();
    let q = |x: &BigInt| BigRational::from_integer(x.clone());
    let gso = |b: &[Vec<BigInt>]| -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
        let mut star: Vec<Vec<BigRational>> = Vec::new();
        let mut mu = vec![vec![BigRational::zero(); n]; n];
        let mut bb = Vec::new();
        for i in 0..n {
            let mut v: Vec<BigRational> = b[i].iter().map(q).collect();
            for j in 0..i {
                let num: BigRational = b[i].iter().zip(&star[j]).map(|(x, y)| q(x) * y).sum();
                mu[i][j] = num / &bb[j];
                for (vi, sj) in v.iter_mut().zip(&star[j]) {
                    *vi -= &mu[i][j] * sj;
                }
            }
            bb.push(v.iter().map(|x| x * x).sum::<BigRational>());
            star.push(v);
        }
        (mu, bb)
    };
    let delta = BigRational::new(3.into(), 4.into());
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let (mu, _) = gso(b);
            let r = mu[k][j].round().to_integer();
            if !r.is_zero() {
                let bj = b[j].clone();
                for (x, y) in b[k].iter_mut().zip(&bj) {
                    *x -= &r * y;
                }
            }
        }
        let (mu, bb) = gso(b);
        if bb[k] >= (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &bb[k - 1] {
            k += 1;
        } else {
            b.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
}

/// Pairwise greedy reduction: replace bᵢ by bᵢ − r·bⱼ while a norm drops.
fn greedy_pairs(b: &mut [Vec<BigInt>]) {
    loop {
        let mut changed = false;
        for i in 0..b.len() {
            for j in 0..b.len() {
                if i == j {
                    continue;
                }
                let nj = norm_sq(&b[j]);
                let r = BigRational::new(dot(&b[i], &b[j]), nj).round().to_integer();
                if r.is_zero() {
                    continue;
                }
                let cand: Vec<BigInt> = b[i].iter().zip(&b[j]).map(|(x, y)| x - &r * y).collect();
                if norm_sq(&cand) < norm_sq(&b[i]) {
                    b[i] = cand;
                    changed = true;
                }
            }
        }
        b.sort_by_key(|v| norm_sq(v));
        if !changed {
            return;
        }
    }
}

/// Short basis of a saturated lattice together with the norm certificate.
pub fn reduced_basis(l: &LatticeBasis) -> Result<(LatticeBasis, BasisCertificate)> {
    if !l.is_saturated() {
        return pre("lattice is not saturated: (Q·L) ∩ Z^g is strictly larger");
    }
    let mut b = l.vectors.clone();
    if b.len() <= 3 {
        // Lagrange for k = 2, greedy pair reduction seeded by LLL for k = 3.
        if b.len() == 3 {
            lll(&mut b);
        }
        greedy_pairs(&mut b);
    } else {
        lll(&mut b);
        greedy_pairs(&mut b);
    }
    for v in b.iter_mut() {
        // Sign normalisation: first nonzero entry positive.
        if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            for x in v.iter_mut() {
                *x = -x.clone();
            }
        }
    }
    let out = LatticeBasis { vectors: b };
    if !out.same_lattice(l) {
        return Err(Error::Verification("reduction changed the lattice".into()));
    }
    let k = out.rank();
    let det = out.gram_det();
    let d = det.to_f64().unwrap_or(f64::INFINITY).sqrt();
    let cert = BasisCertificate {
        norms: out.vectors.iter().map(|v| norm_sq(v).to_f64().unwrap_or(f64::INFINITY).sqrt()).collect(),
        bound: lattice_factor(k as u32) * d,
        gram_det: det.to_string(),
        holds: out.vectors.iter().map(|v| certify_norm(&norm_sq(v), k, &det)).collect(),
    };
    Ok((out, cert))
}

/// Entry bound c(g)·√degB for a matrix presenting a subgroup of degree degB.
pub fn matrix_from_degree_bound(deg_b: &DegreeValue, g: usize, k: usize) -> Result<f64> {
    matrix_from_degree_bound_with(&ConstantsTable::builtin(), deg_b, g, k)
}

pub fn matrix_from_degree_bound_with(t: &ConstantsTable, deg_b: &DegreeValue, g: usize, k: usize) -> Result<f64> {
    if deg_b.0.is_zero() {
        return pre("degree of a subgroup is at least 1");
    }
    if k == 0 || k > g {
        return pre(format!("codimension {k} outside 1..={g}"));
    }
    let d = deg_b.0.to_f64().unwrap_or(f64::INFINITY);
    Ok(t.c_lat(g as u32) * d.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> SubgroupMatrix {
        SubgroupMatrix::from_i64(rows).unwrap()
    }

    #[test]
    fn kernel_degree_examples() {
        assert_eq!(kernel_degree(&m(&[&[3]])).unwrap(), DegreeValue::from_u64(9));
        assert_eq!(kernel_degree(&m(&[&[1, -1]])).unwrap(), DegreeValue::from_u64(6));
        assert_eq!(kernel_degree(&m(&[&[1, 1, 1]])).unwrap(), DegreeValue::from_u64(54));
        assert!(kernel_degree(&m(&[&[1, 2], &[2, 4]])).is_err());
    }

    #[test]
    fn cauchy_binet_examples() {
        assert!(cauchy_binet_check(&m(&[&[1, 0], &[0, 1]])));
        assert!(cauchy_binet_check(&m(&[&[1, -1]])));
        assert!(cauchy_binet_check(&m(&[&[1, 2, 3, 4], &[-5, 6, 0, 7]])));
    }

    #[test]
    fn pi_examples() {
        let z = vec![vec![BigInt::zero(); 3]; 2];
        assert_eq!(pi_of_matrix(&z), BigInt::one());
        assert_eq!(pi_of_matrix(m(&[&[1, -1]]).rows()), BigInt::one());
        assert_eq!(pi_of_matrix(m(&[&[2, 3], &[0, -4]]).rows()), BigInt::from(24));
    }

    #[test]
    fn hnf_of_equivalent_bases() {
        let a = vec![vec![BigInt::from(1), BigInt::from(2)], vec![BigInt::from(3), BigInt::from(4)]];
        let b = vec![vec![BigInt::from(1), BigInt::from(0)], vec![BigInt::from(0), BigInt::from(2)]];
        assert_eq!(hermite_normal_form(&a), hermite_normal_form(&b));
    }

    #[test]
    fn reduced_basis_examples() {
        let (b, c) = reduced_basis(&LatticeBasis::from_i64(&[&[3, 4]]).unwrap()).unwrap();
        assert_eq!(b.vectors, vec![vec![BigInt::from(3), BigInt::from(4)]]);
        assert!(c.all_hold());
        assert!((c.bound - 5.0).abs() < 1e-12);

        let (b, c) = reduced_basis(&LatticeBasis::from_i64(&[&[1, 0], &[7, 1]]).unwrap()).unwrap();
        assert!(b.vectors.iter().all(|v| norm_sq(v) == BigInt::one()));
        assert!(c.all_hold());

        let l = LatticeBasis::from_i64(&[&[1, 0, 0], &[0, 2, 1]]).unwrap();
        let (_, c) = reduced_basis(&l).unwrap();
        assert!(c.all_hold());
        assert_eq!(c.gram_det, "5");
        let expect = 2.0 * 4.0 / std::f64::consts::PI * 5f64.sqrt();
        assert!((c.bound - expect).abs() < 1e-12);
        assert!(c.norms.iter().all(|&n| n <= 2.0 * 4.0 * (2.0 / std::f64::consts::PI) * 5f64.sqrt()));
    }

    #[test]
    fn non_saturated_rejected() {
        assert!(reduced_basis(&LatticeBasis::from_i64(&[&[2, 4]]).unwrap()).is_err());
    }

    #[test]
    fn degree_bound_examples() {
        let b = matrix_from_degree_bound(&DegreeValue::from_u64(9), 1, 1).unwrap();
        assert!((b - 3.0).abs() < 1e-12);
        let b = matrix_from_degree_bound(&DegreeValue::from_u64(6), 2, 1).unwrap();
        assert!((b - 8.0 / std::f64::consts::PI * 6f64.sqrt()).abs() < 1e-12);
        assert!(matrix_from_degree_bound(&DegreeValue::from_u64(0), 2, 1).is_err());
    }
}
