//! The explicit bounds, each evaluated exactly in log-space.

use super::logbound::{Expr, LogBound};
use crate::constants::ConstantsTable;
use crate::error::{pre, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::cmp::Ordering;

type Q = BigRational;

fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn qmax(a: &Q, b: &Q) -> Q {
    if a >= b { a.clone() } else { b.clone() }
}

/// ln of a rational ≥ 1.
fn ln_q(x: &Q) -> Result<Expr> {
    Expr::ln_rational(x)
}

/// max{(3·C·D₂)⁴, exp(2^{18/5})}.
pub fn mm_curve_bound(c: &LogBound, d2: u64) -> Result<LogBound> {
    if d2 < 1 {
        return pre("D2 must be at least 1");
    }
    let Some(lc) = c.log() else {
        return pre("C must be at least 1");
    };
    let poly = LogBound::from_log(lc.add(&Expr::ln_u64(3 * d2)).scale(&qi(4)))?;
    let floor = LogBound::exp(Expr::pow(&qi(2), &Q::new(18.into(), 5.into()))?)?;
    Ok(poly.max(&floor))
}

/// Inputs shared by the curve-level bounds.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MMCurveParams {
    pub c: LogBound,
    pub d1: u64,
    pub d2: u64,
    #[serde(serialize_with = "ser_q")]
    pub h: Q,
    #[serde(serialize_with = "ser_q")]
    pub h_e0: Q,
}

fn ser_q<S: serde::Serializer>(v: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub const GAMMA_1: i64 = 12698;
pub const GAMMA_2: i64 = 22_000_000_000;
pub const GAMMA_3: i64 = 26471;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MlBounds {
    pub deg_phi: LogBound,
    pub n: LogBound,
}

/// deg φ ≤ max{2,h(E₀)}^{γ₁}·max{D₁,D₂,𝓗}⁶ and
/// N ≤ exp(γ₂)·max{1,h(E₀)}^{γ₃}·max{D₁,D₂,𝓗}⁹.
pub fn ml_bounds(p: &MMCurveParams) -> Result<MlBounds> {
    if p.d1 < 1 || p.d2 < 1 || p.h.is_negative() {
        return pre("need D1, D2 ≥ 1 and H ≥ 0");
    }
    let m = qmax(&qmax(&qi(p.d1 as i64), &qi(p.d2 as i64)), &p.h);
    let lm = ln_q(&m)?;
    let deg_phi = ln_q(&qmax(&qi(2), &p.h_e0))?.scale(&qi(GAMMA_1)).add(&lm.scale(&qi(6)));
    let n = Expr::int(GAMMA_2)
        .add(&ln_q(&qmax(&qi(1), &p.h_e0))?.scale(&qi(GAMMA_3)))
        .add(&lm.scale(&qi(9)));
    Ok(MlBounds { deg_phi: LogBound::from_log(deg_phi)?, n: LogBound::from_log(n)? })
}

/// B = max{2A₁/A₃, 4A₂²/A₃²}: any x ≥ 1 with A₃x ≤ A₁ + A₂ ln x has x ≤ B.
pub fn solve_log_inequality(a1: &Q, a2: &Q, a3: &Q) -> Result<Q> {
    if !a1.is_positive() || !a2.is_positive() || !a3.is_positive() {
        return pre("A1, A2, A3 must be positive");
    }
    Ok(qmax(&(qi(2) * a1 / a3), &(qi(4) * a2 * a2 / (a3 * a3))))
}

/// 20((D₁+D₂)·max{1,h(λ)} + 𝓗).
pub fn fiber_point_height_bound(d1: u64, d2: u64, h: &Q, h_lambda: &Q) -> Result<Q> {
    if d1 < 1 || d2 < 1 || h.is_negative() || h_lambda.is_negative() {
        return pre("need D1, D2 ≥ 1 and H, h(λ) ≥ 0");
    }
    Ok(qi(20) * (qi((d1 + d2) as i64) * qmax(&Q::one(), h_lambda) + h))
}

/// The finer pre-bound 3h(Q) + D₂·h(F) + 18D₂.
pub fn fiber_point_pre_bound(h_q: &Q, d2: u64, h_f: &Q) -> Result<Q> {
    if d2 < 1 || h_q.is_negative() || h_f.is_negative() {
        return pre("need D2 ≥ 1 and non-negative heights");
    }
    Ok(qi(3) * h_q + qi(d2 as i64) * h_f + qi(18 * d2 as i64))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LambdaHeightBounds {
    pub from_j: String,
    pub via_isogeny: String,
    #[serde(skip)]
    pub from_j_expr: Expr,
    #[serde(skip)]
    pub via_isogeny_expr: Expr,
}

/// h(λ) ≤ h(j) + ln 256 + ln 30, and h(λ) ≤ h(j(E₀)) + 19 + 12·ln deg φ.
pub fn lambda_height_bounds(h_j: &Q, deg_phi: &LogBound, h_je0: &Q) -> Result<LambdaHeightBounds> {
    if h_j.is_negative() || h_je0.is_negative() {
        return pre("heights must be non-negative");
    }
    let Some(ld) = deg_phi.log() else {
        return pre("deg φ must be at least 1");
    };
    let from_j = Expr::constant(h_j.clone()).add(&Expr::ln_u64(256)).add(&Expr::ln_u64(30));
    let via = Expr::constant(h_je0 + qi(19)).add(&ld.scale(&qi(12)));
    Ok(LambdaHeightBounds {
        from_j: from_j.to_string(),
        via_isogeny: via.to_string(),
        from_j_expr: from_j,
        via_isogeny_expr: via,
    })
}

/// 74·max{1, h(E₀)}, bounding max{1, h(j(E₀))}.
pub fn faltings_j_relation(h_e0: &Q) -> Q {
    qi(74) * qmax(&Q::one(), h_e0)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KummerChain {
    pub n1: LogBound,
    /// The coefficient 2^{-126}; it is below 1, so it is kept as an exact rational.
    #[serde(serialize_with = "ser_q")]
    pub index_floor_coeff: Q,
}

/// N₁ ≤ 3·2¹²⁸·D₂ ≤ 2¹³⁰·D₂, with index floor 2^{-126}·N₁².
pub fn kummer_chain_bounds(d2: u64) -> Result<KummerChain> {
    if d2 < 1 {
        return pre("D2 must be at least 1");
    }
    let n1 = LogBound::from_log(Expr::ln_u64(2).scale(&qi(130)).add(&Expr::ln_u64(d2)))?;
    let coeff = Q::new(BigInt::one(), num_traits::pow(BigInt::from(2), 126));
    Ok(KummerChain { n1, index_floor_coeff: coeff })
}

/// Inputs of the torsion-order descent on a fibered power.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DescentParams {
    pub g: u64,
    pub dim_y: u64,
    pub c: u64,
    pub deg_v: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DescentResult {
    #[serde(serialize_with = "ser_q")]
    pub xi: Q,
    pub t0: u64,
    pub b: u64,
    /// ln N must exceed each of these; order: 17-power, squared, degree, c^{8/5}.
    pub thresholds: Vec<LogBound>,
    pub final_bound: LogBound,
    pub dominant: usize,
    #[serde(serialize_with = "ser_q")]
    pub gamma_g: Q,
}

/// Ξ = (dim Y + 2)²(g − dim Y)/4.
pub fn descent_xi(g: u64, dim_y: u64) -> Q {
    Q::new(BigInt::from((dim_y + 2).pow(2) * (g - dim_y)), BigInt::from(4))
}

/// Plateau recurrence: s = 1, then s ← s + ⌊(s+1)Ξ/m′⌋ + 1 for m′ = dim Y, …, 1.
pub fn descent_t0(g: u64, dim_y: u64) -> u64 {
    if dim_y == 0 {
        return 0;
    }
    let xi = descent_xi(g, dim_y);
    let mut s = BigInt::one();
    for m in (1..=dim_y).rev() {
        let step = (Q::from_integer(&s + 1) * &xi / qi(m as i64)).floor().to_integer();
        s = &s + step + 1;
    }
    s.to_u64().expect("t0 fits u64")
}

/// Thresholds on ln N from the descent, their maximum, and the smallest γ
/// (rounded up to 10⁻⁶) with final ≤ max{exp(γc²), (deg V)^γ}.
pub fn hindry_descent(p: &DescentParams) -> Result<DescentResult> {
    if p.dim_y >= p.g {
        return pre("need g − dim Y > 0");
    }
    if p.c < 1 {
        return pre("need c ≥ 1");
    }
    if p.deg_v < 1 {
        return pre("need deg V ≥ 1");
    }
    let xi = descent_xi(p.g, p.dim_y);
    let t0 = descent_t0(p.g, p.dim_y);
    let b = p.c * (p.g - p.dim_y);
    let t = BigInt::from(t0 + 1) * BigInt::from(t0 + 2);
    let bt = Q::from_integer(BigInt::from(b) * &t);
    let ln25 = Expr::ln_u64(25);
    let th = [
        ln25.add(&Expr::ln_u64(17).scale(&bt)).scale(&qi(16)),
        Expr::constant(qi(128) * &bt * (qi(128) * &bt)),
        ln25.scale(&qi(32)).add(&Expr::ln_u64(p.deg_v).scale(&(qi(16) * Q::from_integer(t.clone())))),
        Expr::pow(&qi(p.c as i64), &Q::new(8.into(), 5.into()))?,
    ];
    let mut thresholds = Vec::new();
    for e in &th {
        thresholds.push(LogBound::from_log(e.clone())?);
    }
    let mut dominant = 0;
    for i in 1..thresholds.len() {
        if thresholds[i].cmp_bound(&thresholds[dominant]) == Ordering::Greater {
            dominant = i;
        }
    }
    let final_bound = thresholds[dominant].clone();
    let gamma_g = smallest_gamma(&th[dominant], p.c, p.deg_v);
    Ok(DescentResult { xi, t0, b, thresholds, final_bound, dominant, gamma_g })
}

/// Smallest γ ∈ 10⁻⁶ℤ with L ≤ γ·max{c², ln deg V}, certified.
fn smallest_gamma(l: &Expr, c: u64, deg_v: u64) -> Q {
    let c2 = Expr::constant(Q::from_integer(BigInt::from(c) * BigInt::from(c)));
    let denom = c2.max_expr(&Expr::ln_u64(deg_v));
    let scale = BigInt::from(1_000_000);
    let ok = |k: &BigInt| denom.scale(&Q::new(k.clone(), scale.clone())).cmp_expr(l) != Ordering::Less;
    // The float estimate only seeds the search; the exact comparisons decide.
    let est = (l.approx() / denom.approx() * 1e6).ceil();
    let mut k = BigInt::from_f64(est).unwrap_or_else(BigInt::zero).max(BigInt::zero());
    // Gallop to a bracket bad < k ≤ good, with bad = −1 standing for "0 works", then bisect.
    let mut step = BigInt::one();
    while !ok(&k) {
        k += &step;
        step *= 2;
    }
    let mut good = k;
    let mut step = BigInt::one();
    let mut bad = loop {
        let cand = &good - &step;
        if cand.is_negative() {
            break BigInt::from(-1);
        }
        if !ok(&cand) {
            break cand;
        }
        good = cand;
        step *= 2;
    };
    while &good - &bad > BigInt::one() {
        let mid: BigInt = (&good + &bad) / 2;
        if ok(&mid) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    Q::new(good, scale)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FiberedPowerBound {
    #[serde(serialize_with = "ser_q")]
    pub gamma: Q,
    pub order_q: LogBound,
    pub deg_b: LogBound,
    pub case2: LogBound,
}

/// Case 1: max{2, deg V}^γ for both the torsion order and deg B.
/// Case 2: 2^{max{2,h(E₀),[K:ℚ]}^γ}·max{2,h(E₀),deg V}^γ; with CM the exponent base omits h(E₀).
#[allow(clippy::too_many_arguments)]
pub fn fibered_power_bound(
    g: u32,
    deg_v: u64,
    dim_v: u64,
    h_e0: &Q,
    deg_k: u64,
    is_cm: bool,
    table: &ConstantsTable,
) -> Result<FiberedPowerBound> {
    if g < 1 || dim_v > g as u64 || deg_v < 1 || deg_k < 1 {
        return pre("need g ≥ 1, dim V ≤ g, deg V ≥ 1, [K:Q] ≥ 1");
    }
    let gamma = table.gamma_fibered(g)?;
    let two = qi(2);
    let case1 = LogBound::from_log(ln_q(&qmax(&two, &qi(deg_v as i64)))?.scale(&gamma))?;
    let base = if is_cm { qmax(&two, &qi(deg_k as i64)) } else { qmax(&qmax(&two, h_e0), &qi(deg_k as i64)) };
    let tower = Expr::ln_u64(2).mul(&Expr::pow(&base, &gamma)?);
    let tail = ln_q(&qmax(&qmax(&two, h_e0), &qi(deg_v as i64)))?.scale(&gamma);
    let case2 = LogBound::from_log(tower.add(&tail))?;
    Ok(FiberedPowerBound { gamma, order_q: case1.clone(), deg_b: case1, case2 })
}

/// C·N^{(g−j)·dim V}·deg A·δ^{g−j}.
pub fn torsion_coset_count_bound(c: &LogBound, n: u64, g: u64, j: u64, dim_v: u64, deg_a: u64, delta: u64) -> Result<LogBound> {
    if j > dim_v || dim_v > g {
        return pre("need 0 ≤ j ≤ dim V ≤ g");
    }
    if n < 1 || deg_a < 1 || delta < 1 {
        return pre("need N, deg A, δ ≥ 1");
    }
    let gj = qi((g - j) as i64);
    let rest = Expr::ln_u64(n)
        .scale(&(&gj * qi(dim_v as i64)))
        .add(&Expr::ln_u64(deg_a))
        .add(&Expr::ln_u64(delta).scale(&gj));
    Ok(c.mul(&LogBound::from_log(rest)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::poly::{q, qr};

    fn lb(n: u64) -> LogBound {
        LogBound::from_u64(n)
    }

    #[test]
    fn mm_curve_examples() {
        let e = LogBound::exp(Expr::pow(&q(2), &qr(18, 5)).unwrap()).unwrap();
        assert_eq!(mm_curve_bound(&lb(6), 1).unwrap(), e);
        assert_eq!(mm_curve_bound(&lb(1), 1).unwrap(), e);
        assert_eq!(mm_curve_bound(&lb(6), 10).unwrap().to_integer(), Some(BigInt::from(180u64.pow(4))));
        assert_eq!(mm_curve_bound(&lb(6), 1000).unwrap().to_integer(), Some(BigInt::from(18000u64.pow(4))));
        assert!(mm_curve_bound(&lb(6), 0).is_err());
    }

    #[test]
    fn ml_examples() {
        let p = MMCurveParams { c: lb(6), d1: 1, d2: 1, h: q(1), h_e0: q(1) };
        let r = ml_bounds(&p).unwrap();
        assert_eq!(r.deg_phi.log().unwrap(), &Expr::ln_u64(2).scale(&q(12698)));
        assert_eq!(r.n.log().unwrap().as_rational(), Some(q(22_000_000_000)));
        let p3 = MMCurveParams { h_e0: q(3), ..p.clone() };
        assert_eq!(ml_bounds(&p3).unwrap().deg_phi.log().unwrap(), &Expr::ln_u64(3).scale(&q(12698)));
        let a = ml_bounds(&MMCurveParams { d2: 5, ..p.clone() }).unwrap();
        let b = ml_bounds(&MMCurveParams { d2: 10, ..p }).unwrap();
        let diff = b.deg_phi.log().unwrap().sub(a.deg_phi.log().unwrap());
        assert_eq!(diff, Expr::ln_u64(2).scale(&q(6)));
    }

    #[test]
    fn log_inequality_examples() {
        assert_eq!(solve_log_inequality(&q(1), &q(1), &q(1)).unwrap(), q(4));
        assert_eq!(solve_log_inequality(&q(10), &qr(1, 1_000_000_000), &q(1)).unwrap(), q(20));
        assert!(solve_log_inequality(&q(0), &q(1), &q(1)).is_err());
    }

    #[test]
    fn height_examples() {
        assert_eq!(fiber_point_height_bound(1, 1, &q(0), &q(0)).unwrap(), q(40));
        assert_eq!(fiber_point_height_bound(2, 3, &q(1), &q(2)).unwrap(), q(220));
        assert_eq!(fiber_point_pre_bound(&q(1), 2, &q(3)).unwrap(), q(45));
        let l = lambda_height_bounds(&q(0), &LogBound::one(), &q(5)).unwrap();
        assert_eq!(l.via_isogeny_expr.as_rational(), Some(q(24)));
        assert!((l.from_j_expr.approx() - (256f64.ln() + 30f64.ln())).abs() < 1e-12);
        assert_eq!(faltings_j_relation(&q(0)), q(74));
        assert_eq!(faltings_j_relation(&q(1)), q(74));
        assert_eq!(faltings_j_relation(&q(2)), q(148));
    }

    #[test]
    fn kummer_examples() {
        let two = BigInt::from(2);
        assert_eq!(kummer_chain_bounds(1).unwrap().n1.to_integer(), Some(num_traits::pow(two.clone(), 130)));
        assert_eq!(kummer_chain_bounds(4).unwrap().n1.to_integer(), Some(num_traits::pow(two, 132)));
        assert!(kummer_chain_bounds(0).is_err());
    }

    #[test]
    fn descent_examples() {
        let r = hindry_descent(&DescentParams { g: 2, dim_y: 0, c: 1, deg_v: 5 }).unwrap();
        assert_eq!((r.b, r.t0, r.dominant), (2, 0, 1));
        assert_eq!(r.final_bound.log().unwrap().as_rational(), Some(q(262144)));
        // γ·max{1, ln 5} ≥ 262144 with ln 5 ≈ 1.6094.
        let g = r.gamma_g.to_f64().unwrap();
        assert!(g * 5f64.ln() >= 262144.0 && (g - 1e-6) * 5f64.ln() < 262144.0);
        assert_eq!(descent_xi(3, 1), qr(9, 2));
        // s = 1 + ⌊2·(9/2)/1⌋ + 1 = 11
        assert_eq!(descent_t0(3, 1), 11);
        assert!(hindry_descent(&DescentParams { g: 2, dim_y: 2, c: 1, deg_v: 5 }).is_err());
    }

    #[test]
    fn fibered_examples() {
        let t = ConstantsTable::builtin();
        let r = fibered_power_bound(1, 1, 1, &q(5), 3, false, &t).unwrap();
        assert_eq!(r.order_q.log().unwrap(), &Expr::ln_u64(2).scale(&r.gamma));
        let cm = fibered_power_bound(1, 1, 1, &q(5), 3, true, &t).unwrap();
        assert_eq!(cm.case2.cmp_bound(&r.case2), Ordering::Less);
        let low = fibered_power_bound(1, 1, 1, &q(1), 3, false, &t).unwrap();
        let low_cm = fibered_power_bound(1, 1, 1, &q(1), 3, true, &t).unwrap();
        assert_eq!(low.case2, low_cm.case2);
    }

    #[test]
    fn coset_examples() {
        let r = torsion_coset_count_bound(&lb(1), 10, 2, 0, 1, 3, 2).unwrap();
        assert_eq!(r.to_integer(), Some(BigInt::from(1200)));
        let r = torsion_coset_count_bound(&lb(7), 10, 2, 2, 2, 3, 2).unwrap();
        assert_eq!(r.to_integer(), Some(BigInt::from(21)));
        assert!(torsion_coset_count_bound(&lb(1), 10, 2, 2, 1, 3, 2).is_err());
    }
}
