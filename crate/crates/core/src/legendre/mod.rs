//! The Legendre family E_λ : Y²Z = X(X−Z)(X−λZ).

pub mod bivariate;
pub mod curve;
pub mod divpoly;
pub mod height;

pub use bivariate::BivariatePolynomial;
pub use curve::{add, check_j_sextic, j_invariant, multiply, torsion_order, LegendreFiber, LegendrePoint};
pub use divpoly::{check_functional_equation, division_polynomials};
pub use height::{canonical_height, upper_bound_check};
