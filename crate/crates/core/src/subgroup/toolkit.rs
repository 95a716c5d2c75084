//! Degree bounds for intersections, projections, images, preimages and sums.

use super::matrix::{pi_of_matrix, DegreeValue, SubgroupMatrix};
use crate::constants::ConstantsTable;
use crate::error::{pre, Result};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Image,
    Preimage,
}

/// C(k,g)·Π(M)²·deg for the image of V ⊂ E^(g) or the preimage of W ⊂ E^(k)
/// under the homomorphism given by the k×g matrix M. Both directions share
/// the bound.
pub fn image_preimage_degree_bound(m: &SubgroupMatrix, deg: &DegreeValue, dir: Direction) -> DegreeValue {
    image_preimage_degree_bound_with(&ConstantsTable::builtin(), m, deg, dir)
}

pub fn image_preimage_degree_bound_with(
    t: &ConstantsTable,
    m: &SubgroupMatrix,
    deg: &DegreeValue,
    _dir: Direction,
) -> DegreeValue {
    let pi = pi_of_matrix(m.rows());
    let c = t.c_kg(m.k() as u64, m.g() as u64).value();
    DegreeValue(c * &pi * &pi * deg.value())
}

/// deg(V + W) ≤ C(g)·degV·degW.
pub fn sum_degree_bound(deg_v: &DegreeValue, deg_w: &DegreeValue, g: u64) -> Result<DegreeValue> {
    sum_degree_bound_with(&ConstantsTable::builtin(), deg_v, deg_w, g)
}

pub fn sum_degree_bound_with(t: &ConstantsTable, deg_v: &DegreeValue, deg_w: &DegreeValue, g: u64) -> Result<DegreeValue> {
    if g == 0 {
        return pre("g must be at least 1");
    }
    Ok(DegreeValue(t.c_g(g).value() * deg_v.value() * deg_w.value()))
}

/// Elementary degree bounds in products of projective spaces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum ToolkitOp {
    /// deg(V ∩ W) ≤ degV·degW
    Bezout { deg_v: u64, deg_w: u64 },
    /// deg W ≤ degV·d^(dimV − dimW) for a component W cut out of V by forms of multidegree ≤ (d,…,d)
    Bezout2 { deg_v: u64, d: u64, dim_v: u64, dim_w: u64 },
    /// V is cut out by forms of multidegree at most (degV, …, degV); returns degV
    Faltings { deg_v: u64 },
    /// deg of the closure of a projection ≤ deg
    Projection { deg: u64 },
}

pub fn degree_toolkit(op: &ToolkitOp) -> Result<DegreeValue> {
    let b = |v: u64| BigInt::from(v);
    Ok(DegreeValue(match *op {
        ToolkitOp::Bezout { deg_v, deg_w } => b(deg_v) * b(deg_w),
        ToolkitOp::Bezout2 { deg_v, d, dim_v, dim_w } => {
            if d == 0 {
                return pre("bezout2 needs d ≥ 1");
            }
            if dim_w > dim_v {
                return pre(format!("dim W = {dim_w} exceeds dim V = {dim_v}"));
            }
            b(deg_v) * num_traits::pow(b(d), (dim_v - dim_w) as usize)
        }
        ToolkitOp::Faltings { deg_v } => b(deg_v),
        ToolkitOp::Projection { deg } => b(deg),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toolkit_examples() {
        assert_eq!(degree_toolkit(&ToolkitOp::Bezout { deg_v: 2, deg_w: 3 }).unwrap(), DegreeValue::from_u64(6));
        let op = ToolkitOp::Bezout2 { deg_v: 4, d: 2, dim_v: 3, dim_w: 1 };
        assert_eq!(degree_toolkit(&op).unwrap(), DegreeValue::from_u64(16));
        assert_eq!(degree_toolkit(&ToolkitOp::Projection { deg: 7 }).unwrap(), DegreeValue::from_u64(7));
        assert!(degree_toolkit(&ToolkitOp::Bezout2 { deg_v: 4, d: 2, dim_v: 1, dim_w: 3 }).is_err());
    }

    #[test]
    fn image_bound_examples() {
        let t = ConstantsTable::builtin();
        let c11 = t.c_kg(1, 1).value();
        let id = SubgroupMatrix::from_i64(&[&[1]]).unwrap();
        assert_eq!(image_preimage_degree_bound(&id, &DegreeValue::from_u64(0), Direction::Image), DegreeValue::from_u64(0));
        assert_eq!(image_preimage_degree_bound(&id, &DegreeValue::from_u64(1), Direction::Image).0, c11.clone());
        let m = SubgroupMatrix::from_i64(&[&[-5]]).unwrap();
        let r = image_preimage_degree_bound(&m, &DegreeValue::from_u64(3), Direction::Preimage);
        assert_eq!(r.0, c11 * 25 * 3);
    }

    #[test]
    fn sum_bound_examples() {
        let t = ConstantsTable::builtin();
        let d = DegreeValue::from_u64;
        assert_eq!(sum_degree_bound(&d(4), &d(0), 2).unwrap(), d(0));
        assert_eq!(sum_degree_bound(&d(1), &d(1), 1).unwrap().0, t.c_g(1).value());
        assert_eq!(sum_degree_bound(&d(3), &d(5), 2).unwrap().0, t.c_g(2).value() * 15);
    }
}
