//! Degrees of algebraic subgroups of E^g and of images, preimages and sums.

pub mod graph;
pub mod matrix;
pub mod toolkit;

pub use graph::{addition_graph_polynomial, multiplication_graph_polynomial, MultiPoly};
pub use matrix::{
    cauchy_binet_check, kernel_degree, matrix_from_degree_bound, pi_of_matrix, reduced_basis, BasisCertificate,
    DegreeValue, LatticeBasis, SubgroupMatrix,
};
pub use toolkit::{degree_toolkit, image_preimage_degree_bound, sum_degree_bound, Direction, ToolkitOp};
