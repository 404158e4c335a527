//! Jacobi algebras `k[x]/(∂_1 W, …, ∂_n W)`.

use super::groebner::{groebner, normal_form};
use super::poly::{divides, Monomial, Poly};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalars::CycScalar;

#[derive(Clone, Debug)]
pub struct JacobiAlgebra {
    potential: Poly,
    groebner_basis: Vec<Poly>,
    monomial_basis: Vec<Monomial>,
    mult_table: Vec<Vec<Vec<CycScalar>>>,
}

pub fn jacobi(w: &Poly) -> Result<JacobiAlgebra> {
    let w = w.trimmed();
    let n = w.nvars();
    let order = w.order();
    let gens: Vec<Poly> = w
        .vars()
        .iter()
        .map(|v| w.partial_derivative(v).expect("own variable"))
        .collect();
    let gb = if n == 0 { Vec::new() } else { groebner(&gens) };
    let leads: Vec<Monomial> = gb.iter().map(|g| g.leading().unwrap().0.clone()).collect();
    // staircase is finite iff every variable has a pure power among the leading monomials
    let mut bounds = vec![0u32; n];
    for (i, v) in w.vars().iter().enumerate() {
        let pure = leads
            .iter()
            .filter(|m| m.iter().enumerate().all(|(j, &e)| j == i || e == 0))
            .map(|m| m[i])
            .min();
        bounds[i] = pure.ok_or_else(|| Error::InfiniteQuotient(v.clone()))?;
    }
    let mut basis = Vec::new();
    let mut stack = vec![vec![0u32; n]];
    while let Some(m) = stack.pop() {
        if leads.iter().any(|l| divides(l, &m)) || basis.contains(&m) {
            continue;
        }
        for i in 0..n {
            if m[i] + 1 < bounds[i] {
                let mut next = m.clone();
                next[i] += 1;
                stack.push(next);
            }
        }
        basis.push(m);
    }
    // by degree, then with earlier variables first
    basis.sort_by_key(|m| (m.iter().sum::<u32>(), std::cmp::Reverse(m.clone())));
    let mut alg = JacobiAlgebra {
        potential: w,
        groebner_basis: gb,
        monomial_basis: basis,
        mult_table: Vec::new(),
    };
    let one = CycScalar::one(order);
    let vars = alg.potential.vars().to_vec();
    let table = alg
        .monomial_basis
        .iter()
        .map(|a| {
            alg.monomial_basis
                .iter()
                .map(|b| {
                    let m: Monomial = a.iter().zip(b).map(|(x, y)| x + y).collect();
                    alg.coordinates(&Poly::monomial(&vars, m, one.clone()))
                })
                .collect()
        })
        .collect();
    alg.mult_table = table;
    Ok(alg)
}

impl JacobiAlgebra {
    pub fn potential(&self) -> &Poly {
        &self.potential
    }

    pub fn groebner_basis(&self) -> &[Poly] {
        &self.groebner_basis
    }

    pub fn monomial_basis(&self) -> &[Monomial] {
        &self.monomial_basis
    }

    pub fn dim(&self) -> usize {
        self.monomial_basis.len()
    }

    /// Coordinates of `nf(b_i · b_j)` in the monomial basis.
    pub fn product(&self, i: usize, j: usize) -> &[CycScalar] {
        &self.mult_table[i][j]
    }

    pub fn normal_form(&self, p: &Poly) -> Poly {
        let p = p
            .with_vars(self.potential.vars())
            .expect("polynomial in the Jacobi ring variables");
        normal_form(&p, &self.groebner_basis)
    }

    pub fn coordinates(&self, p: &Poly) -> Vec<CycScalar> {
        let nf = self.normal_form(p);
        self.monomial_basis.iter().map(|m| nf.coeff(m)).collect()
    }

    pub fn basis_strings(&self) -> Vec<String> {
        self.monomial_basis
            .iter()
            .map(|m| self.potential.monomial_string(m))
            .collect()
    }

    /// Multiplication by `p` as a matrix on the monomial basis.
    pub fn multiplication_matrix(&self, p: &Poly) -> Matrix {
        let order = self.potential.order();
        let cols: Vec<Vec<CycScalar>> = self
            .monomial_basis
            .iter()
            .map(|m| {
                let q = p
                    .with_vars(self.potential.vars())
                    .expect("same ring")
                    .mul_monomial(m, &CycScalar::one(order));
                self.coordinates(&q)
            })
            .collect();
        Matrix::from_columns(order, self.dim(), &cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        Poly::parse(s, 1).unwrap()
    }

    #[test]
    fn fermat_examples() {
        for r in 2..=7 {
            let j = jacobi(&p(&format!("x^{r}"))).unwrap();
            assert_eq!(j.dim(), r - 1);
        }
        assert_eq!(
            jacobi(&p("x^4")).unwrap().basis_strings(),
            vec!["1", "x", "x^2"]
        );
        let j = jacobi(&p("x^3 + y^3")).unwrap();
        assert_eq!(j.basis_strings(), vec!["1", "x", "y", "x*y"]);
    }

    #[test]
    fn infinite_quotient_names_variable() {
        assert_eq!(
            jacobi(&p("x^2*y")).unwrap_err(),
            Error::InfiniteQuotient("y".into())
        );
        assert!(matches!(
            jacobi(&p("x^2*y^2")),
            Err(Error::InfiniteQuotient(_))
        ));
    }

    #[test]
    fn multiplication_table_is_associative() {
        let j = jacobi(&p("x^3 + y^4")).unwrap();
        let n = j.dim();
        let mul = |a: &[CycScalar], b: &[CycScalar]| -> Vec<CycScalar> {
            let mut out = vec![CycScalar::zero(1); n];
            for i in 0..n {
                for k in 0..n {
                    let c = &a[i] * &b[k];
                    if c.is_zero() {
                        continue;
                    }
                    for (o, t) in out.iter_mut().zip(j.product(i, k)) {
                        *o += &(&c * t);
                    }
                }
            }
            out
        };
        let e = |i: usize| {
            (0..n)
                .map(|k| CycScalar::from_int(1, (k == i) as i64))
                .collect::<Vec<_>>()
        };
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    assert_eq!(
                        mul(&mul(&e(a), &e(b)), &e(c)),
                        mul(&e(a), &mul(&e(b), &e(c)))
                    );
                }
            }
        }
    }
}
