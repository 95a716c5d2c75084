//! Galois action on torsion modelled by homotheties of (ℤ/Nℤ)^{2g}.

use crate::bounds::{Expr, LogBound};
use crate::error::{domain, pre, Result};
use crate::numbers::arith::{euler_phi, omega};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeSet, HashSet, VecDeque};

type Q = BigRational;

/// Largest modulus handled exhaustively by [`verify_orbit_bound`].
pub const EXHAUSTIVE_LIMIT: u64 = 200;

/// Element of (ℤ/Nℤ)^r.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ModElem {
    pub n: u64,
    pub coords: Vec<u64>,
}

impl ModElem {
    pub fn new(n: u64, coords: &[i64]) -> Result<Self> {
        if n < 2 {
            return pre("modulus must be at least 2");
        }
        let coords = coords.iter().map(|&c| c.rem_euclid(n as i64) as u64).collect();
        Ok(ModElem { n, coords })
    }

    pub fn scale(&self, a: u64) -> ModElem {
        ModElem { n: self.n, coords: self.coords.iter().map(|&c| mulmod(c, a, self.n)).collect() }
    }

    pub fn add(&self, o: &ModElem) -> ModElem {
        ModElem { n: self.n, coords: self.coords.iter().zip(&o.coords).map(|(a, b)| (a + b) % self.n).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Additive order.
    pub fn order(&self) -> u64 {
        let g = self.coords.iter().fold(self.n, |a, &c| a.gcd(&c));
        self.n / g
    }
}

fn mulmod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

pub fn powmod(mut a: u64, mut e: u64, n: u64) -> u64 {
    let mut r = 1 % n;
    a %= n;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, n);
        }
        a = mulmod(a, a, n);
        e >>= 1;
    }
    r
}

pub fn units(n: u64) -> Vec<u64> {
    (1..n).filter(|a| a.gcd(&n) == 1).collect()
}

/// Subgroup of (ℤ/Nℤ)* given by generators; elements are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomothetySubgroup {
    pub n: u64,
    pub generators: Vec<u64>,
    elements: Vec<u64>,
}

impl HomothetySubgroup {
    pub fn new(n: u64, generators: &[u64]) -> Result<Self> {
        if n < 2 {
            return pre("modulus must be at least 2");
        }
        if let Some(g) = generators.iter().find(|g| g.gcd(&n) != 1) {
            return pre(format!("{g} is not a unit mod {n}"));
        }
        let gens: Vec<u64> = generators.iter().map(|g| g % n).collect();
        let mut seen = BTreeSet::from([1 % n]);
        let mut queue = VecDeque::from([1 % n]);
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = mulmod(x, g, n);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        Ok(HomothetySubgroup { n, generators: gens, elements: seen.into_iter().collect() })
    }

    /// The full unit group.
    pub fn full(n: u64) -> Result<Self> {
        HomothetySubgroup::new(n, &units(n))
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn index(&self) -> u64 {
        euler_phi(self.n) / self.order()
    }

    pub fn contains(&self, a: u64) -> bool {
        self.elements.binary_search(&(a % self.n)).is_ok()
    }

    /// Distinct values of a^e for a in the subgroup.
    pub fn power_image(&self, e: u64) -> Vec<u64> {
        let s: BTreeSet<u64> = self.elements.iter().map(|&a| powmod(a, e, self.n)).collect();
        s.into_iter().collect()
    }
}

/// {a^{2c}·p : a ∈ G}.
pub fn orbit(p: &ModElem, g: &HomothetySubgroup, c: u64) -> Result<BTreeSet<ModElem>> {
    orbit_with_exponent(p, g, 2 * c)
}

/// {a^e·p : a ∈ G}.
pub fn orbit_with_exponent(p: &ModElem, g: &HomothetySubgroup, e: u64) -> Result<BTreeSet<ModElem>> {
    if p.n != g.n {
        return domain(format!("point modulus {} differs from group modulus {}", p.n, g.n));
    }
    if e == 0 {
        return pre("exponent must be positive");
    }
    Ok(g.power_image(e).into_iter().map(|s| p.scale(s)).collect())
}

/// φ(N)/(2^{ω(N)}·2C).
pub fn orbit_lower_bound(n: u64, c_index: u64) -> Result<Q> {
    if n < 2 || c_index < 1 {
        return pre("orbit bound needs N ≥ 2 and C ≥ 1");
    }
    Ok(Q::new(BigInt::from(euler_phi(n)), BigInt::from(2u64 << omega(n)) * c_index))
}

/// Lower bounds for orbit sizes of points of exact order N.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitBoundFormula {
    /// φ(N)/(2^ω·2C), orbits under a^{2c}.
    IndexC,
    /// φ(N)/(2^ω·2C·c^ω), orbits under a^{2c}; equals `IndexC` at c = 1.
    IndexCExponent,
    /// φ(N)/(2c^ω), orbits under a^c, full unit group only.
    FullGroupExponent,
}

impl OrbitBoundFormula {
    pub fn bound(self, n: u64, c_index: u64, c: u64) -> Q {
        let phi = BigInt::from(euler_phi(n));
        let w = omega(n);
        let cw = num_traits::pow(BigInt::from(c), w as usize);
        match self {
            OrbitBoundFormula::IndexC => Q::new(phi, BigInt::from(2u64 << w) * c_index),
            OrbitBoundFormula::IndexCExponent => Q::new(phi, BigInt::from(2u64 << w) * c_index * cw),
            OrbitBoundFormula::FullGroupExponent => Q::new(phi, BigInt::from(2) * cw),
        }
    }

    fn exponent(self, c: u64) -> u64 {
        match self {
            OrbitBoundFormula::FullGroupExponent => c,
            _ => 2 * c,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrbitCheck {
    pub n: u64,
    pub c_index: u64,
    pub c: u64,
    pub formula: OrbitBoundFormula,
    pub holds: bool,
    /// Points and subgroups were sampled rather than enumerated.
    pub sampled: bool,
    pub subgroups_checked: usize,
    pub points_checked: u64,
    pub min_orbit: u64,
    pub bound: String,
}

/// Every subgroup of (ℤ/Nℤ)* with index at most `max_index`.
pub fn subgroups_of_index_at_most(n: u64, max_index: u64) -> Vec<HomothetySubgroup> {
    let us = units(n);
    let phi = us.len() as u64;
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut out = Vec::new();
    let trivial = HomothetySubgroup::new(n, &[]).unwrap();
    let mut queue = VecDeque::from([trivial]);
    seen.insert(queue[0].elements.clone());
    while let Some(h) = queue.pop_front() {
        for &u in &us {
            if h.contains(u) {
                continue;
            }
            let mut gens = h.generators.clone();
            gens.push(u);
            let k = HomothetySubgroup::new(n, &gens).unwrap();
            if seen.insert(k.elements.clone()) {
                queue.push_back(k);
            }
        }
        if phi / h.order() <= max_index {
            out.push(h);
        }
    }
    out.sort_by(|a, b| a.elements.cmp(&b.elements));
    out
}

/// Points of exact order N in (ℤ/Nℤ)².
pub fn order_n_points(n: u64) -> Vec<(u64, u64)> {
    let mut v = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a.gcd(&b).gcd(&n) == 1 {
                v.push((a, b));
            }
        }
    }
    v
}

fn min_orbit_size(n: u64, mults: &[u64], points: &[(u64, u64)]) -> u64 {
    let mut stamp = vec![0u32; (n * n) as usize];
    let mut tick = 0u32;
    let mut best = u64::MAX;
    for &(a, b) in points {
        tick += 1;
        let mut size = 0;
        for &s in mults {
            let key = (mulmod(a, s, n) * n + mulmod(b, s, n)) as usize;
            if stamp[key] != tick {
                stamp[key] = tick;
                size += 1;
            }
        }
        best = best.min(size);
    }
    best
}

/// Check |{a^{2c}p : a ∈ G}| against the chosen formula for every point of
/// exact order N in (ℤ/Nℤ)² and every subgroup G of index ≤ C. Above
/// [`EXHAUSTIVE_LIMIT`] both points and subgroups are sampled with a fixed seed.
pub fn verify_orbit_bound(n: u64, c_index: u64, c: u64, samples: usize, formula: OrbitBoundFormula) -> Result<OrbitCheck> {
    if n < 2 || c_index < 1 || c < 1 {
        return pre("orbit check needs N ≥ 2, C ≥ 1, c ≥ 1");
    }
    let bound = formula.bound(n, c_index, c);
    let e = formula.exponent(c);
    let sampled = n > EXHAUSTIVE_LIMIT;
    let (groups, points) = if !sampled {
        let gs = if formula == OrbitBoundFormula::FullGroupExponent {
            vec![HomothetySubgroup::full(n)?]
        } else {
            subgroups_of_index_at_most(n, c_index)
        };
        (gs, order_n_points(n))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(n ^ (c_index << 20) ^ (c << 40));
        let us = units(n);
        let phi = us.len() as u64;
        let mut gs = vec![HomothetySubgroup::full(n)?];
        if formula != OrbitBoundFormula::FullGroupExponent {
            for _ in 0..samples.max(1) {
                // Grow a random subgroup until its index drops to C or below.
                let mut gens = vec![us[rng.gen_range(0..us.len())]];
                let mut h = HomothetySubgroup::new(n, &gens)?;
                while phi / h.order() > c_index {
                    gens.push(us[rng.gen_range(0..us.len())]);
                    h = HomothetySubgroup::new(n, &gens)?;
                }
                gs.push(h);
            }
        }
        let mut pts = Vec::new();
        while pts.len() < samples.max(1) {
            let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if a.gcd(&b).gcd(&n) == 1 {
                pts.push((a, b));
            }
        }
        (gs, pts)
    };
    let if_empty = if groups.is_empty() { Some(0) } else { None };
    let min_orbit = if_empty.unwrap_or_else(|| {
        groups.par_iter().map(|g| min_orbit_size(n, &g.power_image(e), &points)).min().unwrap_or(u64::MAX)
    });
    if groups.is_empty() {
        return pre(format!("no subgroup of index ≤ {c_index} mod {n}"));
    }
    Ok(OrbitCheck {
        n,
        c_index,
        c,
        formula,
        holds: Q::from_integer(min_orbit.into()) >= bound,
        sampled,
        subgroups_checked: groups.len(),
        points_checked: points.len() as u64,
        min_orbit,
        bound: bound.to_string(),
    })
}

/// The submodule of (ℤ/Nℤ)^r generated by `gens`.
pub fn submodule(n: u64, rank: usize, gens: &[ModElem]) -> Result<BTreeSet<ModElem>> {
    if gens.iter().any(|g| g.n != n || g.coords.len() != rank) {
        return domain("generator outside the module");
    }
    let zero = ModElem { n, coords: vec![0; rank] };
    let mut seen = BTreeSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.add(g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    Ok(seen)
}

/// Multiplication by b on M/S, tabulated on canonical coset representatives.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InducedAction {
    pub n: u64,
    pub b: u64,
    pub submodule_size: usize,
    pub preserved: bool,
    pub well_defined: bool,
    pub quotient_size: u64,
    /// (coset representative, representative of its image), both minimal in their coset.
    pub map: Vec<(Vec<u64>, Vec<u64>)>,
}

/// Check b·S = S and return the map induced by b on the quotient.
pub fn quotient_descent(b: u64, n: u64, rank: usize, gens: &[ModElem]) -> Result<InducedAction> {
    if b.gcd(&n) != 1 {
        return pre(format!("{b} is not a unit mod {n}"));
    }
    let s = submodule(n, rank, gens)?;
    let bs: BTreeSet<ModElem> = s.iter().map(|x| x.scale(b)).collect();
    let preserved = bs == s;
    let total = (n as u128).pow(rank as u32);
    if total > 1 << 20 {
        return pre("module too large to tabulate the quotient");
    }
    let rep = |x: &ModElem| -> ModElem { s.iter().map(|t| x.add(t)).min().unwrap() };
    let mut reps: BTreeSet<ModElem> = BTreeSet::new();
    let mut well_defined = true;
    let mut map = Vec::new();
    for idx in 0..total as u64 {
        let mut coords = Vec::with_capacity(rank);
        let mut t = idx;
        for _ in 0..rank {
            coords.push(t % n);
            t /= n;
        }
        coords.reverse();
        let x = ModElem { n, coords };
        let r = rep(&x);
        if r != x {
            continue;
        }
        let img = rep(&x.scale(b));
        // Every representative of the coset must land in the same image coset.
        well_defined &= s.iter().all(|t| rep(&x.add(t).scale(b)) == img);
        reps.insert(r.clone());
        map.push((r.coords, img.coords));
    }
    Ok(InducedAction {
        n,
        b,
        submodule_size: s.len(),
        preserved,
        well_defined,
        quotient_size: reps.len() as u64,
        map,
    })
}

/// Membership of w in the cyclic submodule ⟨v⟩ by solving k·v ≡ w coordinatewise.
pub fn in_cyclic(v: &[u64], w: &[u64], n: u64) -> bool {
    if n < (1 << 31) {
        solve_multiple::<i64>(v, w, n)
    } else {
        solve_multiple::<i128>(v, w, n)
    }
}

fn solve_multiple<T>(v: &[u64], w: &[u64], n: u64) -> bool
where
    T: num_integer::Integer + Copy + From<i32> + TryFrom<u64> + num_traits::Signed,
{
    let conv = |x: u64| T::try_from(x).ok().expect("coordinate fits");
    let (zero, one) = (T::from(0), T::from(1));
    // Combined congruence k ≡ r (mod m), starting from k free.
    let (mut r, mut m) = (zero, one);
    let ni = conv(n);
    for (&vi, &wi) in v.iter().zip(w) {
        let (vi, wi) = (conv(vi), conv(wi));
        let g = vi.gcd(&ni);
        if !(wi % g).is_zero() {
            return false;
        }
        let mod_i = ni / g;
        let vi_r = (vi / g) % mod_i;
        let wi_r = (wi / g) % mod_i;
        let inv = if mod_i == one { zero } else { mod_inverse(vi_r, mod_i) };
        let ki = (wi_r * inv).mod_floor(&mod_i);
        // Merge k ≡ r (mod m) with k ≡ ki (mod mod_i).
        let gg = m.gcd(&mod_i);
        if !(ki - r).mod_floor(&gg).is_zero() {
            return false;
        }
        let l = m / gg * mod_i;
        let mg = mod_i / gg;
        let step = ((ki - r) / gg).mod_floor(&mg);
        let inv_m = if mg == one { zero } else { mod_inverse((m / gg).mod_floor(&mg), mg) };
        r = (r + m * (step * inv_m).mod_floor(&mg)).mod_floor(&l);
        m = l;
    }
    true
}

fn mod_inverse<T: num_integer::Integer + Copy + num_traits::Signed>(a: T, m: T) -> T {
    a.extended_gcd(&m).x.mod_floor(&m)
}

/// Outcome of the exhaustive check that homotheties preserve every cyclic submodule.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PreservationSweep {
    pub max_n: u64,
    pub rank: usize,
    pub submodules: u64,
    pub pairs: u64,
    pub holds: bool,
}

/// For 2 ≤ N ≤ max_n, every cyclic submodule S of (ℤ/Nℤ)^rank and every unit b:
/// b·S = S. Each submodule is visited once through its lexicographically
/// smallest generator; b·S = S follows from b·v ∈ S and |⟨b·v⟩| = |S|.
pub fn preservation_sweep(max_n: u64, rank: usize) -> PreservationSweep {
    let per_n: Vec<(u64, u64, bool)> = (2..=max_n)
        .into_par_iter()
        .map(|n| {
            let us = units(n);
            let total = n.pow(rank as u32);
            let mut subs = 0u64;
            let mut pairs = 0u64;
            let mut ok = true;
            let mut v = vec![0u64; rank];
            let mut w = vec![0u64; rank];
            for idx in 0..total {
                let mut t = idx;
                for c in v.iter_mut().rev() {
                    *c = t % n;
                    t /= n;
                }
                // Skip v unless it is the smallest generator of ⟨v⟩. The first nonzero
                // coordinate x can be moved to gcd(x, N) by a unit, so it must divide N.
                if v.iter().find(|&&c| c != 0).is_some_and(|&x| n % x != 0) {
                    continue;
                }
                let canonical = us.iter().all(|&u| {
                    // Lexicographic u·v ≥ v, stopping at the first differing coordinate.
                    for &vi in &v {
                        let x = mulmod(vi, u, n);
                        if x != vi {
                            return x > vi;
                        }
                    }
                    true
                });
                if !canonical {
                    continue;
                }
                subs += 1;
                let ord = n / v.iter().fold(n, |a, &c| a.gcd(&c));
                for &b in &us {
                    pairs += 1;
                    for (wi, &vi) in w.iter_mut().zip(&v) {
                        *wi = mulmod(vi, b, n);
                    }
                    let ord_w = n / w.iter().fold(n, |a, &c| a.gcd(&c));
                    if ord_w != ord || !in_cyclic(&v, &w, n) {
                        ok = false;
                    }
                }
            }
            (subs, pairs, ok)
        })
        .collect();
    PreservationSweep {
        max_n,
        rank,
        submodules: per_n.iter().map(|x| x.0).sum(),
        pairs: per_n.iter().map(|x| x.1).sum(),
        holds: per_n.iter().all(|x| x.2),
    }
}

/// Parameters of the explicit Serre-type constant.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SerreConstantParams {
    pub is_cm: bool,
    pub deg_k: u64,
    pub deg_k_over_qj: u64,
    /// Stable Faltings height of E₀ (an input, never computed here).
    #[serde(serialize_with = "ser_q")]
    pub h_e0: Q,
}

fn ser_q<S: serde::Serializer>(v: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// CM: 6·[K:ℚ(j(E₀))]. Non-CM: ln C = 1.9·10¹⁰ + 12395·ln([K:ℚ]·max{1, h(E₀), ln[K:ℚ]}).
pub fn serre_constant_bound(p: &SerreConstantParams) -> Result<LogBound> {
    if p.deg_k < 1 || p.deg_k_over_qj < 1 || p.deg_k_over_qj > p.deg_k {
        return pre("degrees must satisfy 1 ≤ [K:Q(j)] ≤ [K:Q]");
    }
    if p.is_cm {
        return Ok(LogBound::from_u64(6 * p.deg_k_over_qj));
    }
    let m = Expr::int(1).max_expr(&Expr::constant(p.h_e0.clone())).max_expr(&Expr::ln_u64(p.deg_k));
    let arg = m.scale(&Q::from_integer(p.deg_k.into()));
    let log = Expr::int(19_000_000_000).add(&arg.ln()?.scale(&Q::from_integer(12395.into())));
    LogBound::from_log(log)
}

/// b² mod N.
pub fn squaring_rule(b: u64, n: u64) -> Result<u64> {
    if n < 1 || b.gcd(&n) != 1 {
        return pre(format!("{b} is not a unit mod {n}"));
    }
    Ok(mulmod(b, b, n))
}

/// Sizes of the orbits of p and u·p agree for every unit u.
pub fn orbit_size_scaling_invariant(p: &ModElem, g: &HomothetySubgroup, c: u64) -> Result<bool> {
    let base = orbit(p, g, c)?.len();
    for u in units(p.n) {
        if orbit(&p.scale(u), g, c)?.len() != base {
            return Ok(false);
        }
    }
    Ok(true)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::poly::{q, qr};

    #[test]
    fn orbit_examples() {
        let g5 = HomothetySubgroup::full(5).unwrap();
        let zero = ModElem::new(5, &[0, 0]).unwrap();
        assert_eq!(orbit(&zero, &g5, 1).unwrap().len(), 1);
        let p = ModElem::new(5, &[1, 0]).unwrap();
        let o: Vec<Vec<u64>> = orbit(&p, &g5, 1).unwrap().into_iter().map(|e| e.coords).collect();
        assert_eq!(o, vec![vec![1, 0], vec![4, 0]]);
        let g12 = HomothetySubgroup::full(12).unwrap();
        let p = ModElem::new(12, &[1, 5]).unwrap();
        assert_eq!(orbit(&p, &g12, 1).unwrap().len(), 1);
        let wrong = ModElem::new(7, &[1, 0]).unwrap();
        assert!(orbit(&wrong, &g12, 1).is_err());
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(orbit_lower_bound(5, 1).unwrap(), q(1));
        assert_eq!(orbit_lower_bound(12, 1).unwrap(), qr(1, 2));
        assert_eq!(orbit_lower_bound(2, 1).unwrap(), qr(1, 4));
    }

    #[test]
    fn verify_examples() {
        let r = verify_orbit_bound(5, 1, 1, 0, OrbitBoundFormula::IndexC).unwrap();
        assert!(r.holds && !r.sampled);
        let r = verify_orbit_bound(12, 1, 1, 0, OrbitBoundFormula::IndexC).unwrap();
        assert!(r.holds);
        let r = verify_orbit_bound(210, 2, 2, 200, OrbitBoundFormula::IndexCExponent).unwrap();
        assert!(r.holds && r.sampled);
    }

    #[test]
    fn subgroup_enumeration_counts() {
        // (ℤ/8)* ≅ C2×C2 has 5 subgroups; (ℤ/7)* ≅ C6 has 4.
        assert_eq!(subgroups_of_index_at_most(8, 4).len(), 5);
        assert_eq!(subgroups_of_index_at_most(7, 6).len(), 4);
        assert_eq!(subgroups_of_index_at_most(7, 2).len(), 2);
    }

    #[test]
    fn descent_examples() {
        let s = [ModElem::new(4, &[2, 0]).unwrap()];
        let a = quotient_descent(3, 4, 2, &s).unwrap();
        assert!(a.preserved && a.well_defined);
        assert_eq!(a.quotient_size, 8);
        for (x, y) in &a.map {
            let sx = ModElem { n: 4, coords: x.clone() }.scale(3);
            let rep = submodule(4, 2, &s).unwrap().iter().map(|t| sx.add(t)).min().unwrap();
            assert_eq!(&rep.coords, y);
        }
        let id = quotient_descent(1, 4, 2, &s).unwrap();
        assert!(id.map.iter().all(|(x, y)| x == y));
        let s6 = [ModElem::new(6, &[3, 3]).unwrap()];
        let a = quotient_descent(5, 6, 2, &s6).unwrap();
        assert!(a.preserved && a.well_defined);
        assert_eq!(a.quotient_size, 18);
    }

    #[test]
    fn serre_examples() {
        let cm = |d| SerreConstantParams { is_cm: true, deg_k: 3, deg_k_over_qj: d, h_e0: q(0) };
        assert_eq!(serre_constant_bound(&cm(1)).unwrap().to_integer(), Some(BigInt::from(6)));
        assert_eq!(serre_constant_bound(&cm(3)).unwrap().to_integer(), Some(BigInt::from(18)));
        let ncm = SerreConstantParams { is_cm: false, deg_k: 1, deg_k_over_qj: 1, h_e0: q(1) };
        let b = serre_constant_bound(&ncm).unwrap();
        assert_eq!(b.log().unwrap().as_rational(), Some(q(19_000_000_000)));
    }

    #[test]
    fn squaring_examples() {
        assert_eq!(squaring_rule(1, 9).unwrap(), 1);
        assert_eq!(squaring_rule(2, 5).unwrap(), 4);
        assert_eq!(squaring_rule(3, 8).unwrap(), 1);
        assert!(squaring_rule(2, 8).is_err());
    }

    #[test]
    fn cyclic_membership() {
        assert!(in_cyclic(&[2, 4], &[4, 8], 12));
        assert!(!in_cyclic(&[2, 4], &[4, 6], 12));
        assert!(in_cyclic(&[3, 3], &[3, 3], 6));
        assert!(!in_cyclic(&[1, 0], &[0, 1], 5));
    }

    #[test]
    fn small_preservation_sweep() {
        let r = preservation_sweep(12, 2);
        assert!(r.holds);
        assert!(r.submodules > 0);
    }
}
