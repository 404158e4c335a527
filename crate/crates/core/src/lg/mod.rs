//! Landau–Ginzburg models: potentials, matrix factorizations and orbifolds.

pub mod cohomology;
pub mod groebner;
pub mod jacobi;
pub mod mf;
pub mod orbifold;
pub mod poly;

pub use cohomology::{hom_cohomology, hom_cohomology_with, HomClass, HomCohomology};
pub use groebner::{groebner, normal_form};
pub use jacobi::{jacobi, JacobiAlgebra};
pub use mf::{
    identity_mf, mf_external_tensor, mf_tensor, rank_one_mf, twisted_identity, MatrixFactorization,
    PolyMatrix,
};
pub use orbifold::{
    lg_circle_spaces, lg_torus_invariants, orbifold_algebra, GroupAction, OrbifoldAlgebra,
};
pub use poly::Poly;
