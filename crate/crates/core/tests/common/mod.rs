#![allow(dead_code)]

use rspin_core::constructors::{
    builtin, graded_center_data, matrix_algebra, FrobeniusAlgebraData, GradedCenter,
};
use rspin_core::matrix::Matrix;
use rspin_core::scalars::CycScalar;
use rspin_core::superlinalg::{Parity, SuperMap, SuperSpace};

pub const BUILTINS: [&str; 5] = [
    "trivial",
    "group_algebra_Z2",
    "group_algebra_Z3",
    "clifford1",
    "matrix_algebra_2",
];

fn lift(m: &SuperMap, order: u32) -> SuperMap {
    let src = m.matrix();
    let mut out = Matrix::zeros(order, src.rows(), src.cols());
    for i in 0..src.rows() {
        for j in 0..src.cols() {
            out.set(i, j, src.get(i, j).embed(order).unwrap());
        }
    }
    SuperMap::new(m.source().clone(), m.target().clone(), Parity::Even, out).unwrap()
}

/// `M_2` over `Q(ζ_3)` with counit `−ζ·tr(diag(1, ζ) x)`; not symmetric.
pub fn twisted_matrix_algebra() -> FrobeniusAlgebraData {
    let order = 3;
    let base = matrix_algebra(2).unwrap();
    let zeta = CycScalar::zeta(order);
    let lambda = -&zeta;
    let mut counit = Matrix::zeros(order, 1, 4);
    counit.set(0, 0, lambda.clone());
    counit.set(0, 3, &lambda * &zeta);
    FrobeniusAlgebraData::with_derived_comult(
        base.space().clone(),
        lift(base.mult(), order),
        lift(base.unit(), order),
        SuperMap::new(
            base.space().clone(),
            SuperSpace::unit(),
            Parity::Even,
            counit,
        )
        .unwrap(),
    )
    .unwrap()
}

pub fn named_algebras() -> Vec<(String, FrobeniusAlgebraData)> {
    let mut out: Vec<(String, FrobeniusAlgebraData)> = BUILTINS
        .iter()
        .map(|n| (n.to_string(), builtin(n).unwrap()))
        .collect();
    out.push(("twisted_matrix_algebra".into(), twisted_matrix_algebra()));
    out
}

/// Graded centers at every `r ≤ max_r` with `γ^r = 1`.
pub fn graded_centers(max_r: u32) -> Vec<(String, u32, GradedCenter)> {
    let mut out = Vec::new();
    for (name, alg) in named_algebras() {
        for r in 1..=max_r {
            if let Ok(gc) = graded_center_data(&alg, r) {
                out.push((name.clone(), r, gc));
            }
        }
    }
    out
}
