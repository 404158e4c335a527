//! Matrix factorizations and the Koszul-type identity factorization.

use std::fmt;

use super::orbifold::GroupAction;
use super::poly::{primed, Poly};
use crate::error::{Error, Result};
use crate::scalars::CycScalar;
use crate::superlinalg::Parity;

#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    vars: Vec<String>,
    order: u32,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zeros(vars: &[String], order: u32, rows: usize, cols: usize) -> Self {
        let z = Poly::zero(vars, order);
        PolyMatrix {
            rows,
            cols,
            vars: z.vars().to_vec(),
            order,
            entries: vec![z; rows * cols],
        }
    }

    /// `p · 1`.
    pub fn scalar(p: &Poly, n: usize) -> Self {
        let mut m = Self::zeros(p.vars(), p.order(), n, n);
        for i in 0..n {
            m.set(i, i, p.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.entries[i * self.cols + j] =
            p.with_vars(&self.vars).expect("entry in the matrix ring");
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> PolyMatrix {
        let entries: Vec<Poly> = self.entries.iter().map(f).collect();
        let vars = entries
            .first()
            .map(|p| p.vars().to_vec())
            .unwrap_or_else(|| self.vars.clone());
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            vars,
            order: self.order,
            entries,
        }
    }

    pub fn with_vars(&self, vars: &[String]) -> Result<PolyMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|p| p.with_vars(vars))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            vars: Poly::zero(vars, self.order).vars().to_vec(),
            order: self.order,
            entries,
        })
    }

    pub fn neg(&self) -> PolyMatrix {
        self.map(Poly::neg)
    }

    pub fn scale(&self, c: &CycScalar) -> PolyMatrix {
        self.map(|p| p.scale(c))
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch("polynomial matrix sum".into()));
        }
        let mut out = self.clone();
        for (k, e) in out.entries.iter_mut().enumerate() {
            *e = e.add(&other.entries[k]);
        }
        out.vars = out
            .entries
            .first()
            .map(|p| p.vars().to_vec())
            .unwrap_or(out.vars);
        Ok(out)
    }

    pub fn sub(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "polynomial matrix product {}x{} · {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut vars = self.vars.clone();
        vars.extend(other.vars.iter().cloned());
        let mut out = PolyMatrix::zeros(&vars, self.order, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.entries[idx] = out.entries[idx].add(&a.mul(b));
                    }
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "PolyMatrix {}x{} over [{}]",
            self.rows,
            self.cols,
            self.vars.join(",")
        )?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A free `Z_2`-graded module with an odd differential `d`, `d² = (V − W)·1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFactorization {
    source: Poly,
    target: Poly,
    parities: Vec<Parity>,
    d: PolyMatrix,
}

impl MatrixFactorization {
    pub fn new(source: Poly, target: Poly, parities: Vec<Parity>, d: PolyMatrix) -> Result<Self> {
        let n = parities.len();
        if d.rows() != n || d.cols() != n {
            return Err(Error::ShapeMismatch(
                "differential must be square of module rank".into(),
            ));
        }
        for i in 0..n {
            for j in 0..n {
                if parities[i] == parities[j] && !d.get(i, j).is_zero() {
                    return Err(Error::Factorization(format!(
                        "differential entry ({i},{j}) is not odd"
                    )));
                }
            }
        }
        let mut vars = d.vars().to_vec();
        vars.extend(source.vars().iter().cloned());
        vars.extend(target.vars().iter().cloned());
        let d = d.with_vars(&vars)?;
        let source = source.with_vars(d.vars())?;
        let target = target.with_vars(d.vars())?;
        let square = d.mul(&d)?;
        if square != PolyMatrix::scalar(&target.sub(&source), n) {
            return Err(Error::Factorization("d² ≠ (V − W)·1".into()));
        }
        Ok(MatrixFactorization {
            source,
            target,
            parities,
            d,
        })
    }

    pub fn vars(&self) -> &[String] {
        self.d.vars()
    }

    pub fn order(&self) -> u32 {
        self.d.order()
    }

    pub fn source_potential(&self) -> &Poly {
        &self.source
    }

    pub fn target_potential(&self) -> &Poly {
        &self.target
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn differential(&self) -> &PolyMatrix {
        &self.d
    }

    pub fn dim(&self) -> usize {
        self.parities.len()
    }

    /// `(even rank, odd rank)`.
    pub fn rank(&self) -> (usize, usize) {
        let e = self.parities.iter().filter(|p| **p == Parity::Even).count();
        (e, self.parities.len() - e)
    }

    fn block(&self, from: Parity, to: Parity) -> PolyMatrix {
        let rows: Vec<usize> = (0..self.dim())
            .filter(|&i| self.parities[i] == to)
            .collect();
        let cols: Vec<usize> = (0..self.dim())
            .filter(|&i| self.parities[i] == from)
            .collect();
        let mut out = PolyMatrix::zeros(self.vars(), self.order(), rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.d.get(i, j).clone());
            }
        }
        out
    }

    /// `d_0: X^0 → X^1`.
    pub fn d0(&self) -> PolyMatrix {
        self.block(Parity::Even, Parity::Odd)
    }

    /// `d_1: X^1 → X^0`.
    pub fn d1(&self) -> PolyMatrix {
        self.block(Parity::Odd, Parity::Even)
    }

    /// `X[1]`: parities flipped and `d ↦ −d`.
    pub fn shift(&self) -> MatrixFactorization {
        MatrixFactorization {
            source: self.source.clone(),
            target: self.target.clone(),
            parities: self.parities.iter().map(|p| p.flip()).collect(),
            d: self.d.neg(),
        }
    }

    pub fn shifted(&self, n: i64) -> MatrixFactorization {
        if n.rem_euclid(2) == 1 {
            self.shift()
        } else {
            self.clone()
        }
    }

    /// Applies a ring substitution to the differential and both potentials.
    pub fn substitute(&self, f: impl Fn(&Poly) -> Poly) -> Result<MatrixFactorization> {
        MatrixFactorization::new(
            f(&self.source),
            f(&self.target),
            self.parities.clone(),
            self.d.map(&f),
        )
    }
}

fn koszul_sign(mask: usize, i: usize) -> i64 {
    if (mask & ((1 << i) - 1)).count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Exterior algebra on `n` generators with `d = Σ a_i θ_i + b_i θ_i^*`.
/// Basis vectors are indexed by subsets of `{0,…,n−1}` as bit masks.
pub fn koszul_differential(
    a: &[Poly],
    b: &[Poly],
    vars: &[String],
    order: u32,
) -> (Vec<Parity>, PolyMatrix) {
    let n = a.len();
    let size = 1usize << n;
    let parities = (0..size)
        .map(|s| Parity::from_bit(s.count_ones() % 2))
        .collect();
    let mut d = PolyMatrix::zeros(vars, order, size, size);
    for s in 0..size {
        for i in 0..n {
            let sign = CycScalar::from_int(order, koszul_sign(s, i));
            let bit = 1 << i;
            let (t, coef) = if s & bit == 0 {
                (s | bit, &a[i])
            } else {
                (s & !bit, &b[i])
            };
            let cur = d.get(t, s).clone();
            d.set(t, s, cur.add(&coef.scale(&sign)));
        }
    }
    (parities, d)
}

/// The unit 1-morphism `I_W` over `k[x, x']`.
pub fn identity_mf(w: &Poly) -> MatrixFactorization {
    let w = w.trimmed();
    let order = w.order();
    let ring: Vec<String> = w
        .vars()
        .iter()
        .flat_map(|v| [v.clone(), primed(v)])
        .collect();
    let q: Vec<Poly> = (0..w.nvars())
        .map(|i| w.difference_quotient(i).with_vars(&ring).unwrap())
        .collect();
    let l: Vec<Poly> = w
        .vars()
        .iter()
        .map(|v| {
            Poly::var(&ring, order, &primed(v))
                .unwrap()
                .sub(&Poly::var(&ring, order, v).unwrap())
        })
        .collect();
    let (parities, d) = koszul_differential(&q, &l, &ring, order);
    let source = w.with_vars(&ring).unwrap();
    let target = w.rename(primed).with_vars(&ring).unwrap();
    MatrixFactorization::new(source, target, parities, d).expect("identity factorization")
}

/// `_g(1_W)`: the identity with `x'_i ↦ ξ^{−g w_i} x'_i`, where the scalars
/// live in `Q(ξ)`, `ξ = ζ_r`.
pub fn twisted_identity(w: &Poly, act: &GroupAction, g: i64) -> Result<MatrixFactorization> {
    act.check_invariant(w)?;
    let w = w.embed(act.r())?.trimmed();
    let id = identity_mf(&w);
    let subst = |p: &Poly| {
        let mut out = p.clone();
        for v in w.vars() {
            let c = CycScalar::zeta_pow(act.r(), -g * act.weight(v) as i64);
            out = out.scale_variable(&primed(v), &c);
        }
        out
    };
    id.substitute(subst)
}

fn graded_tensor(
    y: &MatrixFactorization,
    x: &MatrixFactorization,
    source: Poly,
    target: Poly,
) -> Result<MatrixFactorization> {
    let order = x.order();
    if y.order() != order {
        return Err(Error::OrderMismatch(y.order(), order));
    }
    let mut vars = x.vars().to_vec();
    vars.extend(y.vars().iter().cloned());
    let (ny, nx) = (y.dim(), x.dim());
    let mut d = PolyMatrix::zeros(&vars, order, ny * nx, ny * nx);
    for i in 0..ny {
        for j in 0..nx {
            let col = i * nx + j;
            for k in 0..ny {
                let e = y.differential().get(k, i);
                if !e.is_zero() {
                    let cur = d.get(k * nx + j, col).clone();
                    d.set(k * nx + j, col, cur.add(e));
                }
            }
            let sign = CycScalar::from_int(
                order,
                if y.parities()[i] == Parity::Odd {
                    -1
                } else {
                    1
                },
            );
            for l in 0..nx {
                let e = x.differential().get(l, j);
                if !e.is_zero() {
                    let cur = d.get(i * nx + l, col).clone();
                    d.set(i * nx + l, col, cur.add(&e.scale(&sign)));
                }
            }
        }
    }
    let parities = (0..ny * nx)
        .map(|k| y.parities()[k / nx] + x.parities()[k % nx])
        .collect();
    MatrixFactorization::new(source, target, parities, d)
}

/// `Y ⊗ X` for `X: W₁ → W₂`, `Y: W₂ → W₃`, with middle variables kept as
/// ring variables.
pub fn mf_tensor(y: &MatrixFactorization, x: &MatrixFactorization) -> Result<MatrixFactorization> {
    let mut vars = x.vars().to_vec();
    vars.extend(y.vars().iter().cloned());
    let mid_x = x.target_potential().with_vars(&vars)?;
    let mid_y = y.source_potential().with_vars(&vars)?;
    if mid_x != mid_y {
        return Err(Error::Factorization(format!(
            "potential mismatch: {} vs {}",
            x.target_potential().trimmed(),
            y.source_potential().trimmed()
        )));
    }
    graded_tensor(
        y,
        x,
        x.source_potential().clone(),
        y.target_potential().clone(),
    )
}

/// `X ⊠ Y` over disjoint variables, with potentials added.
pub fn mf_external_tensor(
    x: &MatrixFactorization,
    y: &MatrixFactorization,
) -> Result<MatrixFactorization> {
    if x.vars().iter().any(|v| y.vars().contains(v)) {
        return Err(Error::Factorization(
            "external product needs disjoint variables".into(),
        ));
    }
    graded_tensor(
        x,
        y,
        x.source_potential().add(y.source_potential()),
        x.target_potential().add(y.target_potential()),
    )
}

/// The rank-one factorization `(k, 0) → (k[x], a·b)` with `d_0 = a`, `d_1 = b`.
pub fn rank_one_mf(a: &Poly, b: &Poly) -> Result<MatrixFactorization> {
    let mut vars = a.vars().to_vec();
    vars.extend(b.vars().iter().cloned());
    let order = a.order();
    let mut d = PolyMatrix::zeros(&vars, order, 2, 2);
    d.set(1, 0, a.clone());
    d.set(0, 1, b.clone());
    let target = a.mul(b);
    MatrixFactorization::new(
        Poly::zero(&vars, order),
        target,
        vec![Parity::Even, Parity::Odd],
        d,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        Poly::parse(s, 1).unwrap()
    }

    #[test]
    fn identity_for_cubic() {
        let i = identity_mf(&p("x^3"));
        assert_eq!(i.rank(), (1, 1));
        let vars = i.vars().to_vec();
        assert_eq!(
            i.d0().get(0, 0),
            &p("x'^2 + x'*x + x^2").with_vars(&vars).unwrap()
        );
        assert_eq!(i.d1().get(0, 0), &p("x' - x").with_vars(&vars).unwrap());
    }

    #[test]
    fn identity_for_two_variables() {
        let i = identity_mf(&p("x^3 + y^3"));
        assert_eq!(i.rank(), (2, 2));
        assert_eq!(i.vars(), &["x", "x'", "y", "y'"]);
    }

    #[test]
    fn external_product_of_rank_one() {
        let x = rank_one_mf(&p("x"), &p("x^2")).unwrap();
        let y = rank_one_mf(&p("y^2"), &p("y")).unwrap();
        let t = mf_external_tensor(&x, &y).unwrap();
        assert_eq!(t.rank(), (2, 2));
        assert_eq!(t.target_potential().trimmed(), p("x^3 + y^3"));
        let sq = t.differential().mul(t.differential()).unwrap();
        assert_eq!(
            sq,
            PolyMatrix::scalar(&p("x^3 + y^3").with_vars(t.vars()).unwrap(), 4)
        );
    }

    #[test]
    fn shift_flips_ranks() {
        let x = rank_one_mf(&p("x"), &p("x^4")).unwrap();
        let s = x.shift();
        assert_eq!(s.parities(), &[Parity::Odd, Parity::Even]);
        assert_eq!(s.shift(), x);
    }

    #[test]
    fn broken_factorization_is_rejected() {
        let vars = vec!["x".to_string()];
        let mut d = PolyMatrix::zeros(&vars, 1, 2, 2);
        d.set(1, 0, p("x"));
        d.set(0, 1, p("x"));
        let err = MatrixFactorization::new(
            Poly::zero(&vars, 1),
            p("x^3"),
            vec![Parity::Even, Parity::Odd],
            d,
        );
        assert!(matches!(err, Err(Error::Factorization(_))));
    }
}
