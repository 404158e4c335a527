//! Command implementations. Each returns an [`Outcome`] or a library error.

use std::collections::BTreeSet;

use rspin_core::constructors::{
    builtin, default_r, graded_center_data, FrobeniusAlgebraData, GradedCenter,
};
use rspin_core::io::{read_algebra_file, AlgebraFile};
use rspin_core::lambda_frobenius::LambdaFrobenius;
use rspin_core::lg::cohomology::hom_cohomology;
use rspin_core::lg::mf::{identity_mf, twisted_identity};
use rspin_core::lg::orbifold::{
    circle_spaces_checked, fermat_exponents, lg_torus_invariants, orbifold_algebra, GroupAction,
};
use rspin_core::lg::{jacobi, Poly};
use rspin_core::matrix::Matrix;
use rspin_core::scalars::{gcd, CycScalar};
use rspin_core::superlinalg::SuperSpace;
use rspin_core::surface::{
    all_torus_invariants, evaluate_surface, evaluate_torus, RSpinClosedSurface, RSpinTorus,
};
use rspin_core::{Error, Result};
use serde_json::{json, Value};

use crate::{Orbifold, Outcome, Source};

enum Loaded {
    Frobenius(FrobeniusAlgebraData),
    Lambda(LambdaFrobenius),
}

fn source_json(source: &Source) -> Value {
    match (&source.builtin, &source.file) {
        (Some(b), _) => json!({ "builtin": b }),
        (_, Some(f)) => json!({ "file": f.display().to_string() }),
        _ => Value::Null,
    }
}

fn load(source: &Source) -> Result<Loaded> {
    if let Some(name) = &source.builtin {
        return builtin(name).map(Loaded::Frobenius);
    }
    let path = source.file.as_ref().expect("clap enforces one source");
    match read_algebra_file(path)? {
        AlgebraFile::FrobeniusAlgebra(f) => f.build().map(Loaded::Frobenius),
        AlgebraFile::LambdaFrobenius(f) => f.build().map(Loaded::Lambda),
    }
}

/// The Λ_r-Frobenius algebra of a source, with the graded-center data when
/// it was built from a Frobenius algebra.
fn lambda(source: &Source, r: Option<u32>) -> Result<(LambdaFrobenius, Option<GradedCenter>)> {
    match load(source)? {
        Loaded::Frobenius(alg) => {
            let r = r.unwrap_or_else(|| default_r(&alg));
            let gc = graded_center_data(&alg, r)?;
            Ok((gc.algebra.clone(), Some(gc)))
        }
        Loaded::Lambda(l) => {
            if let Some(r) = r {
                if r != l.r() {
                    return Err(Error::RMismatch {
                        algebra: l.r(),
                        surface: r,
                    });
                }
            }
            Ok((l, None))
        }
    }
}

fn dims(s: &SuperSpace) -> String {
    format!("({}|{})", s.even_dim(), s.odd_dim())
}

fn dims_json(s: &SuperSpace) -> Value {
    json!([s.even_dim(), s.odd_dim()])
}

fn matrix_json(m: &Matrix) -> Value {
    json!(m.to_string_rows())
}

fn spaces_json(l: &LambdaFrobenius) -> Value {
    Value::Array(l.spaces().iter().map(dims_json).collect())
}

pub fn check(source: &Source, r: Option<u32>) -> Result<Outcome> {
    let mut inputs = source_json(source);
    let lf = match lambda(source, r) {
        Ok((lf, _)) => lf,
        Err(Error::InvalidAlgebra(msg)) => {
            return Ok(Outcome {
                inputs,
                results: json!({ "valid": false, "stage": "frobenius_algebra", "failures": msg }),
                text: vec![format!("FAIL frobenius algebra: {msg}")],
                ok: false,
            })
        }
        Err(e) => return Err(e),
    };
    inputs["r"] = json!(lf.r());
    let report = lf.validate();
    let mut text = vec![format!(
        "r = {}, circle spaces {}",
        lf.r(),
        lf.spaces().iter().map(dims).collect::<Vec<_>>().join(" ")
    )];
    let mut families = Vec::new();
    for (family, total, failed) in report.summary() {
        let status = if failed == 0 { "pass" } else { "FAIL" };
        text.push(format!(
            "{status} {:<16} {}/{} relations",
            family.name(),
            total - failed,
            total
        ));
        families.push(json!({ "family": family.name(), "checked": total, "failed": failed }));
    }
    let failures: Vec<Value> = report
        .failures()
        .map(|c| {
            text.push(format!("  failing {} at {:?}", c.relation, c.indices));
            json!({ "family": c.family.name(), "relation": c.relation, "indices": c.indices })
        })
        .collect();
    Ok(Outcome {
        inputs,
        results: json!({
            "valid": report.is_valid(),
            "circle_spaces": spaces_json(&lf),
            "families": families,
            "failures": failures,
        }),
        text,
        ok: report.is_valid(),
    })
}

pub fn nakayama(source: &Source, r: Option<u32>) -> Result<Outcome> {
    let mut inputs = source_json(source);
    let (lf, gc) = lambda(source, r)?;
    inputs["r"] = json!(lf.r());
    let mut text = Vec::new();
    let mut results = json!({});
    if let Some(gc) = &gc {
        let order = gc.gamma.order_up_to(64);
        text.push(format!(
            "gamma (order {}):",
            order.map_or("> 64".to_string(), |o| o.to_string())
        ));
        text.extend(rows_text(gc.gamma.map().matrix()));
        results["gamma"] =
            json!({ "order": order, "matrix": matrix_json(gc.gamma.map().matrix()) });
    }
    let mut per_a = Vec::new();
    let mut ok = true;
    for a in 0..lf.r() as i64 {
        let n = lf.nakayama(a);
        let twist = lf.nakayama_pow(a, a).is_identity();
        let deck = n.pow(lf.r() as u64)?.is_identity();
        let restricts = gc.as_ref().map(|g| g.gamma_on(a).matrix() == n.matrix());
        ok &= twist && deck && restricts.unwrap_or(true);
        text.push(format!(
            "N_{a} on C_{a} {}: N^a = id {twist}, N^r = id {deck}{}",
            dims(lf.space(a)),
            restricts.map_or(String::new(), |b| format!(", equals gamma {b}"))
        ));
        text.extend(rows_text(n.matrix()).into_iter().map(|l| format!("  {l}")));
        per_a.push(json!({
            "a": a,
            "matrix": matrix_json(n.matrix()),
            "twist_identity": twist,
            "deck_identity": deck,
            "equals_gamma": restricts,
        }));
    }
    results["nakayama"] = Value::Array(per_a);
    Ok(Outcome {
        inputs,
        results,
        text,
        ok,
    })
}

fn rows_text(m: &Matrix) -> Vec<String> {
    if m.rows() == 0 || m.cols() == 0 {
        return vec!["[]".into()];
    }
    m.to_string_rows()
        .iter()
        .map(|r| format!("[{}]", r.join(", ")))
        .collect()
}

pub fn torus(
    source: &Source,
    r: Option<u32>,
    spec: Option<&str>,
    a: Option<i64>,
    b: Option<i64>,
    all_divisors: bool,
) -> Result<Outcome> {
    let parsed: Option<RSpinTorus> = spec.map(str::parse).transpose()?;
    let r = r.or(parsed.map(|t| t.r));
    let (lf, _) = lambda(source, r)?;
    let mut inputs = source_json(source);
    inputs["r"] = json!(lf.r());
    if all_divisors || (parsed.is_none() && a.is_none() && b.is_none()) {
        let table = all_torus_invariants(&lf);
        let mut text = vec!["d  T(d,0)".to_string()];
        let mut rows = Vec::new();
        for (d, v) in &table {
            text.push(format!("{d}  {v}"));
            rows.push(json!({ "d": d, "value": v.to_string() }));
        }
        inputs["all_divisors"] = json!(true);
        return Ok(Outcome {
            inputs,
            results: json!({ "invariants": rows }),
            text,
            ok: true,
        });
    }
    let t = match parsed {
        Some(t) => t,
        None => RSpinTorus::new(lf.r(), a.unwrap_or(0), b.unwrap_or(0))?,
    };
    let v = evaluate_torus(&lf, &t)?;
    inputs["torus"] = json!(t.to_string());
    Ok(Outcome {
        inputs,
        results: json!({ "value": v.to_string() }),
        text: vec![format!("{t}: {v}")],
        ok: true,
    })
}

fn surface_from_parts(
    r: u32,
    genus: Option<u32>,
    holonomies: Option<&str>,
) -> Result<RSpinClosedSurface> {
    let mut s = format!("surface r={r}");
    if let Some(g) = genus {
        s.push_str(&format!(" genus={g}"));
    }
    if let Some(h) = holonomies {
        s.push_str(&format!(
            " holonomies=[{}]",
            h.trim().trim_start_matches('[').trim_end_matches(']')
        ));
    }
    s.parse()
}

pub fn surface(
    source: &Source,
    spec: Option<&str>,
    r: Option<u32>,
    genus: Option<u32>,
    holonomies: Option<&str>,
    all_holonomies: bool,
) -> Result<Outcome> {
    let parsed: Option<RSpinClosedSurface> = spec.map(str::parse).transpose()?;
    let r = r.or(parsed.as_ref().map(|s| s.r));
    let (lf, _) = lambda(source, r)?;
    let r = lf.r();
    let mut inputs = source_json(source);
    inputs["r"] = json!(r);
    if all_holonomies {
        let g = genus
            .or(parsed.as_ref().map(|s| s.genus))
            .ok_or_else(|| Error::Parse("--all-holonomies needs a genus".into()))?;
        inputs["genus"] = json!(g);
        let count = (r as u64).pow(2 * g);
        let mut rows = Vec::new();
        let mut text = vec!["holonomies  value".to_string()];
        let mut distinct = BTreeSet::new();
        for code in 0..count {
            let mut c = code;
            let mut handles = Vec::new();
            for _ in 0..g {
                let a = (c % r as u64) as i64;
                c /= r as u64;
                let b = (c % r as u64) as i64;
                c /= r as u64;
                handles.push((a, b));
            }
            let s = RSpinClosedSurface::new(r, &handles)?;
            let v = evaluate_surface(&lf, &s)?;
            let hol = format!("{handles:?}");
            text.push(format!("{hol}  {v}"));
            distinct.insert(v.to_string());
            rows.push(json!({ "holonomies": handles, "value": v.to_string() }));
        }
        text.push(format!("distinct values: {}", distinct.len()));
        return Ok(Outcome {
            inputs,
            results: json!({ "values": rows, "distinct": distinct.into_iter().collect::<Vec<_>>() }),
            text,
            ok: true,
        });
    }
    let s = match parsed {
        Some(s) => s,
        None => surface_from_parts(r, genus, holonomies)?,
    };
    let v = evaluate_surface(&lf, &s)?;
    inputs["surface"] = json!(s.to_string());
    Ok(Outcome {
        inputs,
        results: json!({ "value": v.to_string() }),
        text: vec![format!("{s}: {v}")],
        ok: true,
    })
}

pub fn lg_jacobi(potential: &str) -> Result<Outcome> {
    let w = Poly::parse(potential, 1)?;
    let j = jacobi(&w)?;
    let basis = j.basis_strings();
    let gb: Vec<String> = j.groebner_basis().iter().map(|g| g.to_string()).collect();
    Ok(Outcome {
        inputs: json!({ "potential": w.to_string() }),
        results: json!({ "dim": j.dim(), "basis": basis, "groebner_basis": gb }),
        text: vec![format!("dim {}, basis: {}", j.dim(), basis.join(", "))],
        ok: true,
    })
}

fn parse_group(s: &str) -> Result<u32> {
    let digits = s.trim().trim_start_matches(['Z', 'z']);
    digits
        .parse::<u32>()
        .ok()
        .filter(|&r| r > 0)
        .ok_or_else(|| Error::Parse(format!("group must look like Z5, got `{s}`")))
}

/// Potential over `Q(ζ_r)` and its action. Without `--group` the group is
/// `Z_r` with `r` the lcm of the exponents and weights `r / d_i`.
fn action(o: &Orbifold) -> Result<(Poly, GroupAction, Value)> {
    let w1 = Poly::parse(&o.potential, 1)?.trimmed();
    let exps = fermat_exponents(&w1)?;
    let lcm = exps
        .iter()
        .fold(1u64, |acc, (_, d)| acc / gcd(acc, *d as u64) * *d as u64) as u32;
    let r = match &o.group {
        Some(g) => parse_group(g)?,
        None => lcm,
    };
    let vars = w1.vars().to_vec();
    let weights: Vec<i64> = match &o.weights {
        Some(ws) => ws.clone(),
        None => exps
            .iter()
            .map(|(_, d)| {
                if r % d == 0 {
                    Ok((r / d) as i64)
                } else {
                    Err(Error::Parse(format!(
                        "no default weights for Z{r}; pass --weights"
                    )))
                }
            })
            .collect::<Result<_>>()?,
    };
    let act = GroupAction::from_vars(r, &vars, &weights)?;
    let w = Poly::parse(&o.potential, r)?.trimmed();
    act.check_invariant(&w)?;
    let inputs = json!({
        "potential": w.to_string(),
        "group": format!("Z{r}"),
        "variables": vars,
        "weights": vars.iter().map(|v| act.weight(v)).collect::<Vec<_>>(),
    });
    Ok((w, act, inputs))
}

pub fn lg_hom(o: &Orbifold, g: i64, shift: bool) -> Result<Outcome> {
    let (w, act, mut inputs) = action(o)?;
    inputs["g"] = json!(g.rem_euclid(act.r() as i64));
    inputs["shift"] = json!(shift);
    let source = identity_mf(&w);
    let mut target = twisted_identity(&w, &act, g)?;
    if shift {
        target = target.shift();
    }
    let h = hom_cohomology(&source, &target)?;
    let (e, od) = h.dims();
    let mut text = vec![format!("H_even {e}, H_odd {od}")];
    let classes: Vec<Value> = h
        .classes()
        .iter()
        .map(|c| {
            let p = if c.parity.bit() == 0 { "even" } else { "odd" };
            text.push(format!("  {p} class in degree {}", c.degree));
            let rep = &c.representative;
            let entries: Vec<Vec<String>> = (0..rep.rows())
                .map(|i| (0..rep.cols()).map(|j| rep.get(i, j).to_string()).collect())
                .collect();
            json!({ "parity": p, "degree": c.degree, "representative": entries })
        })
        .collect();
    Ok(Outcome {
        inputs,
        results: json!({ "even": e, "odd": od, "classes": classes }),
        text,
        ok: true,
    })
}

pub fn lg_orbifold(o: &Orbifold) -> Result<Outcome> {
    let (w, act, inputs) = action(o)?;
    let alg = orbifold_algebra(&w, &act)?;
    let r = act.r();
    let mut text = vec![format!(
        "orbifold of {} by Z{r}: total {}",
        w,
        dims(&alg.space())
    )];
    let mut sectors = Vec::new();
    for s in alg.sectors() {
        let gamma = CycScalar::zeta_pow(r, -alg.det_exponent(s.g as i64));
        text.push(format!("  g={} {} gamma {}", s.g, dims(&s.space), gamma));
        sectors.push(json!({
            "g": s.g,
            "dims": dims_json(&s.space),
            "gamma": gamma.to_string(),
            "rho_generator": matrix_json(&s.rho[1 % r as usize]),
        }));
    }
    let failures = alg.check();
    text.push(format!(
        "checks: {}",
        if failures.is_empty() {
            "pass".to_string()
        } else {
            failures.join(", ")
        }
    ));
    Ok(Outcome {
        inputs,
        results: json!({
            "dims": dims_json(&alg.space()),
            "sectors": sectors,
            "counit_normalization": alg.counit_normalization().to_string(),
            "failures": failures,
        }),
        text,
        ok: failures.is_empty(),
    })
}

pub fn lg_circle_spaces(o: &Orbifold) -> Result<Outcome> {
    let (w, act, inputs) = action(o)?;
    let r = act.r();
    let alg = orbifold_algebra(&w, &act)?;
    let spaces = circle_spaces_checked(&alg)?;
    let mut text = vec!["a  C_a".to_string()];
    let mut table = Vec::new();
    for (a, s) in &spaces {
        text.push(format!("{a}  {}", dims(s)));
        table.push(json!({ "a": a, "dims": dims_json(s) }));
    }
    let inv = lg_torus_invariants(&spaces, r);
    text.push("d  T(d,0) up to sign".to_string());
    let mut tori = Vec::new();
    let mut distinct = BTreeSet::new();
    for (d, v) in &inv {
        let abs = v.as_integer().map(|n| if n < 0.into() { -n } else { n });
        let shown = abs.as_ref().map_or(v.to_string(), |n| n.to_string());
        text.push(format!("{d}  {shown}"));
        distinct.insert(shown.clone());
        tori.push(json!({ "d": d, "value": v.to_string(), "abs": shown }));
    }
    text.push(format!("distinguishable torus classes: {}", distinct.len()));
    Ok(Outcome {
        inputs,
        results: json!({
            "circle_spaces": table,
            "torus_invariants": tori,
            "distinguishable": distinct.len(),
        }),
        text,
        ok: true,
    })
}
