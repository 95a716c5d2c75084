//! Arithmetic foundations: integers, exact reals, polynomials, number fields, heights.

pub mod arith;
pub mod linalg;
pub mod numfield;
pub mod poly;
pub mod ratfunc;
pub mod real;
pub mod roots;
pub mod algebraic;
pub mod height;
