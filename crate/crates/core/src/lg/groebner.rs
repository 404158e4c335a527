//! Buchberger's algorithm under grevlex.

use std::collections::BTreeSet;

use super::poly::{divides, grevlex, Monomial, Poly};

fn lcm(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

fn monic(p: &Poly) -> Poly {
    let (_, c) = p.leading().expect("nonzero");
    p.scale(&c.inverse().expect("nonzero"))
}

fn lm(p: &Poly) -> &Monomial {
    p.leading().expect("nonzero").0
}

fn s_polynomial(f: &Poly, g: &Poly) -> Poly {
    let (mf, cf) = f.leading().expect("nonzero");
    let (mg, cg) = g.leading().expect("nonzero");
    let l = lcm(mf, mg);
    let uf: Monomial = l.iter().zip(mf).map(|(a, b)| a - b).collect();
    let ug: Monomial = l.iter().zip(mg).map(|(a, b)| a - b).collect();
    f.mul_monomial(&uf, &cf.inverse().expect("nonzero"))
        .sub(&g.mul_monomial(&ug, &cg.inverse().expect("nonzero")))
}

/// Full reduction of `p` modulo `basis`; every term of the result is
/// outside the leading-monomial ideal.
pub fn normal_form(p: &Poly, basis: &[Poly]) -> Poly {
    let mut rest = p.clone();
    let mut out = Poly::zero(p.vars(), p.order());
    while let Some((m, c)) = rest.leading().map(|(m, c)| (m.clone(), c.clone())) {
        match basis.iter().find(|g| divides(lm(g), &m)) {
            Some(g) => {
                let (gm, gc) = g.leading().unwrap();
                let e: Monomial = m.iter().zip(gm).map(|(a, b)| a - b).collect();
                let f = c.try_div(gc).expect("nonzero");
                rest = rest.sub(&g.mul_monomial(&e, &f));
            }
            None => {
                out.add_term(m.clone(), c.clone());
                rest = rest.sub(&Poly::monomial(p.vars(), m, c));
            }
        }
    }
    out
}

/// Reduced Gröbner basis of the ideal generated by `gens`, sorted by
/// leading monomial.
pub fn groebner(gens: &[Poly]) -> Vec<Poly> {
    let Some(first) = gens.first() else {
        return Vec::new();
    };
    let mut vars: Vec<String> = Vec::new();
    for g in gens {
        vars.extend(g.vars().iter().cloned());
    }
    let order = first.order();
    let mut basis: Vec<Poly> = gens
        .iter()
        .map(|g| g.with_vars(&vars).expect("superset"))
        .filter(|g| !g.is_zero())
        .map(|g| monic(&g))
        .collect();
    if basis.is_empty() {
        return vec![];
    }
    // (lcm, i, j) so that iteration follows the normal selection strategy
    let mut pairs: BTreeSet<(PairKey, usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert((PairKey(lcm(lm(&basis[i]), lm(&basis[j]))), i, j));
        }
    }
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    while let Some(entry) = pairs.pop_first() {
        let (PairKey(l), i, j) = entry;
        done.insert((i, j));
        if coprime(lm(&basis[i]), lm(&basis[j])) {
            continue;
        }
        let processed = |a: usize, b: usize| done.contains(&(a.min(b), a.max(b)));
        let chain = (0..basis.len()).any(|k| {
            k != i && k != j && divides(lm(&basis[k]), &l) && processed(i, k) && processed(j, k)
        });
        if chain {
            continue;
        }
        let h = normal_form(&s_polynomial(&basis[i], &basis[j]), &basis);
        if !h.is_zero() {
            let h = monic(&h);
            let k = basis.len();
            for (i2, g) in basis.iter().enumerate() {
                pairs.insert((PairKey(lcm(lm(g), lm(&h))), i2, k));
            }
            basis.push(h);
        }
    }
    // minimalize, then inter-reduce
    let mut minimal: Vec<Poly> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let redundant = basis
            .iter()
            .enumerate()
            .any(|(k2, g2)| k2 != k && divides(lm(g2), lm(g)) && (lm(g2) != lm(g) || k2 < k));
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced: Vec<Poly> = (0..minimal.len())
        .map(|k| {
            let others: Vec<Poly> = minimal
                .iter()
                .enumerate()
                .filter(|(k2, _)| *k2 != k)
                .map(|(_, g)| g.clone())
                .collect();
            monic(&normal_form(&minimal[k], &others))
        })
        .collect();
    reduced.sort_by(|a, b| grevlex(lm(a), lm(b)));
    debug_assert!(reduced.iter().all(|g| g.order() == order));
    reduced
}

#[derive(Clone, PartialEq, Eq)]
struct PairKey(Monomial);

impl PartialOrd for PairKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PairKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        grevlex(&self.0, &other.0).then_with(|| self.0.cmp(&other.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        Poly::parse(s, 1).unwrap()
    }

    #[test]
    fn single_monomial() {
        assert_eq!(groebner(&[p("x^2")]), vec![p("x^2")]);
    }

    #[test]
    fn linear_generator_kills_variable() {
        let g = groebner(&[p("3*x^2"), p("2*y")]);
        let vars = g[0].vars().to_vec();
        assert_eq!(
            g,
            vec![
                p("y").with_vars(&vars).unwrap(),
                p("x^2").with_vars(&vars).unwrap()
            ]
        );
    }

    #[test]
    fn textbook_example() {
        // (x^2 - y, x^3 - x) has reduced basis {x^2 - y, x*y - x, y^2 - y}
        let g = groebner(&[p("x^2 - y"), p("x^3 - x")]);
        let vars = g[0].vars().to_vec();
        let expect: Vec<Poly> = ["y^2 - y", "x*y - x", "x^2 - y"]
            .iter()
            .map(|s| p(s).with_vars(&vars).unwrap())
            .collect();
        let mut got = g.clone();
        got.sort_by(|a, b| a.to_string().cmp(&b.to_string()));
        let mut want = expect;
        want.sort_by(|a, b| a.to_string().cmp(&b.to_string()));
        assert_eq!(got, want);
    }

    #[test]
    fn generators_reduce_to_zero() {
        let gens = [p("x^2*y - 1"), p("x*y^2 - x")];
        let g = groebner(&gens);
        for f in &gens {
            assert!(normal_form(&f.with_vars(g[0].vars()).unwrap(), &g).is_zero());
        }
    }
}
