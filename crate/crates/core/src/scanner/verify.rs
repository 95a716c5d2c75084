//! Isogeny detection against E₀ and confrontation of hits with the curve bound.

use super::moddb::ModularPolyDB;
use super::scan::{recertify, HitRecord, TorsionHit};
use super::spec::CurveSpec;
use crate::bounds::{mm_curve_bound, LogBound};
use crate::error::{domain, pre, Result};
use crate::legendre::curve::j_invariant_q;
use crate::numbers::poly::Q;
use num_traits::Zero;
use serde::Serialize;

/// Degrees m ≤ maxdeg with Φ_m(j(λ₀), j₀) = 0.
pub fn detect_isogenous_fiber(lambda0: &Q, j0: &Q, max_deg: u64, db: &ModularPolyDB) -> Result<Vec<u64>> {
    if lambda0.is_zero() || *lambda0 == Q::from_integer(1.into()) {
        return domain("lambda must avoid 0 and 1");
    }
    if max_deg < 1 {
        return pre("maxdeg must be at least 1");
    }
    // Fail before evaluating anything if the table has a gap.
    for m in 1..=max_deg {
        db.get(m)?;
    }
    let j = j_invariant_q(lambda0)?;
    let mut out = Vec::new();
    for m in 1..=max_deg {
        if db.eval(m, &j, j0)?.is_zero() {
            out.push(m);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyEntry {
    pub hit: HitRecord,
    pub isogenous: bool,
    pub certified: bool,
    pub within_bound: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub bound: LogBound,
    pub bound_ln: f64,
    pub entries: Vec<VerifyEntry>,
    pub passed: bool,
}

/// Check order ≤ max{(3CD₂)⁴, exp(2^{18/5})} for every hit flagged as lying on a fiber
/// isogenous to E₀. Every hit is re-certified; an uncertified hit fails the report.
pub fn verify_mm_bound(spec: &CurveSpec, serre_c: &LogBound, hits: &[TorsionHit], isogenous: &[bool]) -> Result<VerifyReport> {
    if hits.len() != isogenous.len() {
        return pre("one isogeny flag per hit is required");
    }
    let bound = mm_curve_bound(serre_c, spec.d2 as u64)?;
    let bound_ln = bound.ln_approx();
    let mut entries = Vec::new();
    let mut passed = true;
    for (h, &iso) in hits.iter().zip(isogenous) {
        let certified = recertify(spec, h);
        let order = LogBound::from_u64(h.order);
        let within = iso.then(|| order.le(&bound));
        let margin = iso.then(|| bound_ln - (h.order as f64).ln());
        passed &= certified && within != Some(false);
        entries.push(VerifyEntry { hit: h.record(margin), isogenous: iso, certified, within_bound: within });
    }
    Ok(VerifyReport { bound, bound_ln, entries, passed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::poly::q;
    use crate::scanner::scan::scan_section;

    fn line() -> CurveSpec {
        CurveSpec::single(&[([0, 0, 1, 0, 0], q(1)), ([0, 0, 0, 0, 1], q(-2))]).unwrap()
    }

    #[test]
    fn isogeny_examples() {
        let db = ModularPolyDB::builtin();
        let j2 = j_invariant_q(&q(2)).unwrap();
        assert!(detect_isogenous_fiber(&q(2), &j2, 3, &db).unwrap().contains(&1));
        assert!(detect_isogenous_fiber(&q(-1), &q(287496), 3, &db).unwrap().contains(&2));
        assert!(detect_isogenous_fiber(&q(5), &q(7), 3, &db).unwrap().is_empty());
        assert_eq!(detect_isogenous_fiber(&q(5), &q(7), 4, &db), Err(crate::Error::DbIncomplete(4)));
    }

    #[test]
    fn verify_against_cm_bound() {
        let spec = line();
        let mut hits = Vec::new();
        for n in [2, 4] {
            hits.extend(scan_section(&spec, n).unwrap().hits().to_vec());
        }
        let flags = vec![true; hits.len()];
        let r = verify_mm_bound(&spec, &LogBound::from_u64(6), &hits, &flags).unwrap();
        assert!(r.passed);
        assert!(r.entries.iter().all(|e| e.hit.margin_log.unwrap() > 0.0));
        let empty = verify_mm_bound(&spec, &LogBound::from_u64(6), &[], &[]).unwrap();
        assert!(empty.passed);
        let mut forged = hits.clone();
        forged[0].order = 1_000_000_000_000;
        assert!(!verify_mm_bound(&spec, &LogBound::from_u64(6), &forged, &flags).unwrap().passed);
    }
}
