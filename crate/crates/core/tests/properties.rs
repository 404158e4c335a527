mod common;

use proptest::prelude::*;
use rspin_core::constructors::{builtin, graded_center};
use rspin_core::lg::cohomology::hom_cohomology;
use rspin_core::lg::groebner::{groebner, normal_form};
use rspin_core::lg::mf::rank_one_mf;
use rspin_core::lg::{jacobi, Poly};
use rspin_core::matrix::Matrix;
use rspin_core::scalars::{totient, CycScalar};
use rspin_core::superlinalg::{braiding, Parity, SuperMap, SuperSpace};
use rspin_core::surface::{
    evaluate_surface, evaluate_surface_with, evaluate_torus, HandleSplitting, RSpinClosedSurface,
    RSpinTorus,
};

fn scalar(order: u32) -> impl Strategy<Value = CycScalar> {
    let n = totient(order);
    prop::collection::vec((-6i64..=6, 1i64..=4), n).prop_map(move |cs| {
        cs.iter()
            .enumerate()
            .fold(CycScalar::zero(order), |acc, (k, &(p, q))| {
                &acc + &(&CycScalar::from_ratio(order, p, q)
                    * &CycScalar::zeta_pow(order, k as i64))
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_field_axioms(
        (order, a, b, c) in (1u32..=12).prop_flat_map(|o| (Just(o), scalar(o), scalar(o), scalar(o)))
    ) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(CycScalar::parse(order, &a.to_string()).unwrap(), a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inverse().unwrap()).is_one());
        }
        prop_assert!(CycScalar::zeta_pow(order, order as i64).is_one());
    }

    #[test]
    fn torus_depends_on_residues_and_gcd(a in -20i64..20, b in -20i64..20, pick in 0usize..4) {
        let (name, r) = [("clifford1", 2u32), ("clifford1", 4), ("group_algebra_Z3", 3), ("matrix_algebra_2", 5)][pick];
        let lf = graded_center(&builtin(name).unwrap(), r).unwrap();
        let m = r as i64;
        let t = evaluate_torus(&lf, &RSpinTorus::new(r, a, b).unwrap()).unwrap();
        let shifted = evaluate_torus(&lf, &RSpinTorus::new(r, a + 3 * m, b - 2 * m).unwrap()).unwrap();
        prop_assert_eq!(&t, &shifted);
        let d = rspin_core::scalars::gcd(rspin_core::scalars::gcd(a.rem_euclid(m) as u64, b.rem_euclid(m) as u64), r as u64);
        let normal = evaluate_torus(&lf, &RSpinTorus::new(r, d as i64, 0).unwrap()).unwrap();
        prop_assert_eq!(t, normal);
    }

    #[test]
    fn handles_commute(hs in prop::collection::vec((0i64..2, 0i64..2), 1..=3), rot in 0usize..3) {
        let lf = graded_center(&builtin("clifford1").unwrap(), 2).unwrap();
        let s = RSpinClosedSurface::new(2, &hs).unwrap();
        let mut rotated = hs.clone();
        let k = rot % rotated.len();
        rotated.rotate_left(k);
        rotated.reverse();
        let v = evaluate_surface(&lf, &s).unwrap();
        prop_assert_eq!(&v, &evaluate_surface(&lf, &RSpinClosedSurface::new(2, &rotated).unwrap()).unwrap());
        prop_assert_eq!(v, evaluate_surface_with(&lf, &s, HandleSplitting::Right).unwrap());
    }

    #[test]
    fn braiding_is_involutive_and_supertrace_multiplies(
        p in prop::collection::vec(0u32..2, 0..4),
        q in prop::collection::vec(0u32..2, 0..4),
        entries in prop::collection::vec(-3i64..=3, 32),
    ) {
        let v = SuperSpace::from_parities(p.into_iter().map(Parity::from_bit).collect());
        let w = SuperSpace::from_parities(q.into_iter().map(Parity::from_bit).collect());
        let b = braiding(1, &v, &w);
        let bb = braiding(1, &w, &v).compose(&b).unwrap();
        prop_assert!(bb.is_identity());
        // even endomorphisms: keep only entries between equal parities
        let even_map = |s: &SuperSpace, off: usize| {
            let n = s.dim();
            let mut m = Matrix::zeros(1, n, n);
            for i in 0..n {
                for j in 0..n {
                    if s.parity(i) == s.parity(j) {
                        m.set(i, j, CycScalar::from_int(1, entries[(off + i * n + j) % entries.len()]));
                    }
                }
            }
            SuperMap::new(s.clone(), s.clone(), Parity::Even, m).unwrap()
        };
        let f = even_map(&v, 0);
        let g = even_map(&w, 7);
        prop_assert_eq!(f.tensor(&g).supertrace(), &f.supertrace() * &g.supertrace());
    }

    #[test]
    fn groebner_normal_form_properties(
        a in 2u32..6, b in 2u32..6,
        p in prop::collection::vec((0u32..5, 0u32..5, -4i64..=4), 1..5),
        q in prop::collection::vec((0u32..5, 0u32..5, -4i64..=4), 1..5),
    ) {
        let vars = vec!["x".to_string(), "y".to_string()];
        let mk = |ts: &[(u32, u32, i64)]| {
            Poly::from_terms(&vars, 1, ts.iter().map(|&(i, j, c)| (vec![i, j], CycScalar::from_int(1, c))))
        };
        // chain-type potential x^a y + y^b
        let w = Poly::parse(&format!("x^{a}*y + y^{b}"), 1).unwrap();
        let gb = groebner(&[w.partial_derivative("x").unwrap(), w.partial_derivative("y").unwrap()]);
        let (p, q) = (mk(&p), mk(&q));
        let np = normal_form(&p, &gb);
        prop_assert_eq!(normal_form(&np, &gb), np.clone());
        let nq = normal_form(&q, &gb);
        prop_assert_eq!(normal_form(&p.mul(&q), &gb), normal_form(&np.mul(&nq), &gb));
        prop_assert!(normal_form(&p.sub(&np), &gb).is_zero());
    }

    #[test]
    fn jacobi_dimension_is_milnor_number(a in 2u32..7, b in 2u32..7, c in 2u32..5, chain in any::<bool>()) {
        // quasi-homogeneous isolated singularities: μ = Π (1/q_i − 1)
        let (w, mu) = if chain {
            // x^a y + y^b: q_y = 1/b, q_x = (b − 1)/(ab)
            (format!("x^{a}*y + y^{b}"), (a * b - b + 1) as usize)
        } else {
            (format!("x^{a} + y^{b} + z^{c}"), ((a - 1) * (b - 1) * (c - 1)) as usize)
        };
        let j = jacobi(&Poly::parse(&w, 1).unwrap()).unwrap();
        prop_assert_eq!(j.dim(), mu, "{}", w);
    }

    #[test]
    fn rank_one_endomorphisms(n in 2u32..8, k in 1u32..7) {
        prop_assume!(k < n);
        let x = |e: u32| Poly::parse(&format!("x^{e}"), 1).unwrap();
        let m = rank_one_mf(&x(k), &x(n - k)).unwrap();
        let h = hom_cohomology(&m, &m).unwrap();
        let expect = k.min(n - k) as usize;
        prop_assert_eq!(h.dims(), (expect, expect));
    }
}

#[test]
fn torus_is_supertrace_of_nakayama_power() {
    // T(a, b) = str(N_{-a}^{2-b}) on C_{-a}
    for (name, r, gc) in common::graded_centers(6) {
        let lf = &gc.algebra;
        for a in 0..r as i64 {
            for b in 0..r as i64 {
                let t = evaluate_torus(lf, &RSpinTorus::new(r, a, b).unwrap()).unwrap();
                let s = lf.nakayama_pow(-a, 2 - b).supertrace();
                assert_eq!(t, s, "{name} r={r} ({a},{b})");
            }
        }
    }
}

#[test]
fn symmetric_algebras_have_constant_circle_spaces() {
    // with γ = 1 every C_a is the (super)center; compare with a brute-force centralizer
    for name in [
        "group_algebra_Z2",
        "group_algebra_Z3",
        "matrix_algebra_2",
        "trivial",
    ] {
        let alg = builtin(name).unwrap();
        let n = alg.dim();
        let mult = alg.mult().matrix();
        // x is central iff e_i x = x e_i for all i
        let mut rows = Vec::new();
        for i in 0..n {
            for k in 0..n {
                let row: Vec<CycScalar> = (0..n)
                    .map(|j| mult.get(k, i * n + j) - mult.get(k, j * n + i))
                    .collect();
                rows.push(row);
            }
        }
        let center_dim = n - Matrix::from_rows(1, rows).unwrap().rank();
        for r in 1..=4 {
            let lf = graded_center(&alg, r).unwrap();
            for a in 0..r as i64 {
                assert_eq!(lf.space(a).dim(), center_dim, "{name} r={r} a={a}");
            }
        }
    }
}

#[test]
fn genus_one_surface_is_torus() {
    for (name, r, gc) in common::graded_centers(6) {
        for a in 0..r as i64 {
            for b in 0..r as i64 {
                let s =
                    evaluate_surface(&gc.algebra, &RSpinClosedSurface::new(r, &[(a, b)]).unwrap())
                        .unwrap();
                let t = evaluate_torus(&gc.algebra, &RSpinTorus::new(r, a, b).unwrap()).unwrap();
                assert_eq!(s, t, "{name} r={r} ({a},{b})");
            }
        }
    }
}
