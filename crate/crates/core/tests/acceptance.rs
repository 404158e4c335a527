//! The seven acceptance criteria, each reported on its own line.

mod common;

use std::collections::BTreeSet;
use std::io::Write;

use rspin_core::constructors::{builtin, graded_center};
use rspin_core::io::{LambdaFrobeniusFile, ScalarRepr};
use rspin_core::lambda_frobenius::RelationFamily;
use rspin_core::lg::cohomology::hom_cohomology;
use rspin_core::lg::mf::{identity_mf, twisted_identity};
use rspin_core::lg::orbifold::{lg_circle_spaces, lg_torus_invariants, GroupAction};
use rspin_core::lg::Poly;
use rspin_core::scalars::gcd;
use rspin_core::superlinalg::quantum_dimension;
use rspin_core::surface::{
    divisors, evaluate_surface, evaluate_torus, RSpinClosedSurface, RSpinTorus,
};

/// Bypasses the test harness capture so the line lands in the log.
fn report(n: u32, name: &str, failures: &[String]) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    let mut out = std::io::stdout().lock();
    writeln!(out, "\nacceptance criterion {n} ({name}): {status}").unwrap();
    for f in failures.iter().take(10) {
        writeln!(out, "    {f}").unwrap();
    }
    assert!(failures.is_empty(), "criterion {n} failed: {failures:?}");
}

#[test]
fn criterion_1_axiom_suite() {
    let mut failures = Vec::new();
    let cases: [(&str, &[u32]); 4] = [
        ("trivial", &[1, 2, 3, 4, 5, 6, 7, 8]),
        ("group_algebra_Z2", &[1, 2, 3, 4]),
        ("group_algebra_Z3", &[1, 2, 3, 4]),
        ("clifford1", &[2, 4, 6, 8]),
    ];
    for (name, rs) in cases {
        let alg = builtin(name).unwrap();
        for &r in rs {
            let lf = graded_center(&alg, r).unwrap();
            let report = lf.validate();
            for family in RelationFamily::ALL {
                if !report.family_passed(family) {
                    failures.push(format!("{name} r={r}: {} fails", family.name()));
                }
            }
        }
    }
    // negative control: kill the product C_1 ⊗ C_1 → C_1 of a valid algebra
    let lf = graded_center(&builtin("clifford1").unwrap(), 2).unwrap();
    let mut file = LambdaFrobeniusFile::from_algebra(&lf);
    for row in file.mu[1][1].iter_mut() {
        row.fill(ScalarRepr::Int(0));
    }
    let mutated = file.build().unwrap();
    if mutated.validate().is_valid() {
        failures.push("mutated product still validates".into());
    }
    report(1, "axiom suite", &failures);
}

#[test]
fn criterion_2_torus_normal_form() {
    let mut failures = Vec::new();
    for (name, r, gc) in common::graded_centers(8) {
        let lf = &gc.algebra;
        for a in 0..r {
            for b in 0..r {
                let d = gcd(gcd(a as u64, b as u64), r as u64) as i64;
                let lhs =
                    evaluate_torus(lf, &RSpinTorus::new(r, a as i64, b as i64).unwrap()).unwrap();
                let rhs = evaluate_torus(lf, &RSpinTorus::new(r, d, 0).unwrap()).unwrap();
                if lhs != rhs {
                    failures.push(format!(
                        "{name} r={r} T({a},{b}) = {lhs} but T({d},0) = {rhs}"
                    ));
                }
            }
        }
    }
    report(2, "torus normal form", &failures);
}

#[test]
fn criterion_3_quantum_dimension() {
    // the global sign flag is +1: no sign is applied anywhere
    let mut failures = Vec::new();
    for (name, r, gc) in common::graded_centers(8) {
        let lf = &gc.algebra;
        for d in divisors(r) {
            let t = evaluate_torus(lf, &RSpinTorus::new(r, d as i64, 0).unwrap()).unwrap();
            let q = quantum_dimension(lf.order(), lf.space(d as i64));
            if t != q {
                failures.push(format!("{name} r={r} d={d}: T = {t}, sdim = {q}"));
            }
        }
    }
    report(3, "torus values are quantum dimensions", &failures);
}

#[test]
fn criterion_4_lg_circle_spaces() {
    let mut failures = Vec::new();
    for r in 3..=5u32 {
        let w = Poly::parse(&format!("x^{r}"), r).unwrap();
        let act = GroupAction::new(r, [("x", 1)]).unwrap();
        let spaces = match lg_circle_spaces(&w, &act) {
            Ok(s) => s,
            Err(e) => {
                failures.push(format!("r={r}: {e}"));
                continue;
            }
        };
        for (a, s) in &spaces {
            let expect = match a {
                0 => (r as usize - 1, 0),
                a if a % 2 == 1 => (1, 0),
                _ => (0, 1),
            };
            if (s.even_dim(), s.odd_dim()) != expect {
                failures.push(format!(
                    "r={r} C_{a} = ({}|{}), expected {expect:?}",
                    s.even_dim(),
                    s.odd_dim()
                ));
            }
        }
        let inv = lg_torus_invariants(&spaces, r);
        let mut classes = BTreeSet::new();
        for (d, v) in &inv {
            let abs = v.as_integer().map(|n| if n < 0.into() { -n } else { n });
            let expect: i64 = if *d == r { r as i64 - 1 } else { 1 };
            if abs != Some(expect.into()) {
                failures.push(format!("r={r} |T({d},0)| = {v}, expected {expect}"));
            }
            classes.insert(abs);
        }
        if classes.len() != 2 {
            failures.push(format!("r={r}: {} distinguishable classes", classes.len()));
        }
    }
    report(4, "LG circle spaces and tori", &failures);
}

#[test]
fn criterion_5_lg_hom_dimensions() {
    let mut failures = Vec::new();
    for r in 3..=5u32 {
        let n = r as usize - 1;
        let w = Poly::parse(&format!("x^{r}"), r).unwrap();
        let act = GroupAction::new(r, [("x", 1)]).unwrap();
        let id = identity_mf(&w);
        let end = hom_cohomology(&id, &id).unwrap().dims();
        if end != (n, 0) {
            failures.push(format!("r={r}: End(1_W) = {end:?}"));
        }
        let shifted = hom_cohomology(&id, &id.shift()).unwrap().dims();
        if shifted != (0, n) {
            failures.push(format!("r={r}: Hom(1_W, 1_W[1]) = {shifted:?}"));
        }
        for g in 1..r as i64 {
            let t = twisted_identity(&w, &act, g).unwrap();
            let h = hom_cohomology(&id, &t).unwrap().dims();
            if h != (0, 1) {
                failures.push(format!("r={r} g={g}: Hom(1_W, g(1_W)) = {h:?}"));
            }
        }
    }
    report(5, "LG Hom dimensions", &failures);
}

#[test]
fn criterion_6_nakayama_coherence() {
    let mut failures = Vec::new();
    for (name, r, gc) in common::graded_centers(8) {
        let lf = &gc.algebra;
        for a in 0..r as i64 {
            let n = lf.nakayama(a);
            if !lf.nakayama_pow(a, a).is_identity() {
                failures.push(format!("{name} r={r}: N_{a}^{a} != id"));
            }
            if !n.pow(r as u64).unwrap().is_identity() {
                failures.push(format!("{name} r={r}: N_{a}^r != id"));
            }
            if gc.gamma_on(a).matrix() != n.matrix() {
                failures.push(format!("{name} r={r}: N_{a} differs from gamma on C_{a}"));
            }
        }
    }
    report(6, "Nakayama coherence", &failures);
}

#[test]
fn criterion_7_genus_two() {
    let mut failures = Vec::new();
    let lf = graded_center(&builtin("clifford1").unwrap(), 2).unwrap();
    let mut values = BTreeSet::new();
    for code in 0..16i64 {
        let h = [
            (code & 1, (code >> 1) & 1),
            ((code >> 2) & 1, (code >> 3) & 1),
        ];
        let s = RSpinClosedSurface::new(2, &h).unwrap();
        values.insert(evaluate_surface(&lf, &s).unwrap().to_string());
    }
    if values.len() != 2 {
        failures.push(format!("genus 2 values {values:?}"));
    }
    for a in 0..2 {
        for b in 0..2 {
            let s = evaluate_surface(&lf, &RSpinClosedSurface::new(2, &[(a, b)]).unwrap()).unwrap();
            let t = evaluate_torus(&lf, &RSpinTorus::new(2, a, b).unwrap()).unwrap();
            if s != t {
                failures.push(format!("({a},{b}): surface {s}, torus {t}"));
            }
        }
    }
    report(7, "genus-two brute force", &failures);
}
