//! Cohomology of morphism complexes between matrix factorizations.
//!
//! For a quasi-homogeneous potential the Hom complex splits into
//! finite-dimensional slices of fixed weighted degree, and `δ` raises the
//! degree by half the degree of the potential. Cohomology is computed slice
//! by slice with exact linear algebra.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap, VecDeque};

use super::mf::{MatrixFactorization, PolyMatrix};
use super::poly::{base_name, Monomial, Poly};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalars::{CycScalar, Rational};
use crate::superlinalg::{Parity, SuperSpace};

/// Environment variable bounding the number of degree blocks scanned.
pub const NMAX_ENV: &str = "RSPIN_NMAX";
pub const DEFAULT_NMAX: u32 = 64;

/// Positive integer weights with every potential of degree `2 · half`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    vars: Vec<String>,
    weights: Vec<i64>,
    half: i64,
}

impl Grading {
    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn weight(&self, var: &str) -> Option<i64> {
        self.vars
            .iter()
            .position(|v| v == var)
            .map(|i| self.weights[i])
    }

    /// Half the degree of the potential; `δ` has this degree.
    pub fn half(&self) -> i64 {
        self.half
    }

    pub fn degree(&self, p: &Poly) -> Option<i64> {
        if p.is_zero() {
            return None;
        }
        let ws: Vec<i64> = p
            .vars()
            .iter()
            .map(|v| self.weight(v))
            .collect::<Option<_>>()?;
        p.weighted_degree(&ws)
    }
}

/// Finds rational weights making every nonzero potential homogeneous of
/// degree one, extends them to primed copies, and clears denominators.
pub fn infer_grading(ring: &[String], potentials: &[&Poly]) -> Result<Grading> {
    let mut known: BTreeMap<String, Rational> = BTreeMap::new();
    for w in potentials {
        let w = w.trimmed();
        if w.is_zero() {
            continue;
        }
        let monos: Vec<&Monomial> = w.terms().keys().collect();
        let rows: Vec<Vec<CycScalar>> = monos
            .iter()
            .map(|m| {
                m.iter()
                    .map(|&e| CycScalar::from_int(1, e as i64))
                    .collect()
            })
            .collect();
        let a = Matrix::from_rows(1, rows).expect("rectangular");
        if a.rank() < w.nvars() {
            return Err(Error::Unsupported(format!(
                "potential `{w}` does not determine unique weights"
            )));
        }
        let sol = a
            .solve(&vec![CycScalar::one(1); monos.len()])
            .ok_or_else(|| {
                Error::Unsupported(format!("potential `{w}` is not quasi-homogeneous"))
            })?;
        for (v, q) in w.vars().iter().zip(sol) {
            let q = q.as_rational().expect("rational").clone();
            if let Some(prev) = known.get(v.as_str()) {
                if *prev != q {
                    return Err(Error::Unsupported(format!("conflicting weights for `{v}`")));
                }
            }
            known.insert(v.clone(), q);
        }
    }
    let mut by_base: BTreeMap<String, Rational> = BTreeMap::new();
    for (v, q) in &known {
        by_base.insert(base_name(v).to_string(), q.clone());
    }
    let mut vars = ring.to_vec();
    vars.sort();
    vars.dedup();
    let qs: Vec<Rational> = vars
        .iter()
        .map(|v| {
            known
                .get(v)
                .or_else(|| by_base.get(base_name(v)))
                .cloned()
                .ok_or_else(|| Error::Unsupported(format!("no weight for variable `{v}`")))
        })
        .collect::<Result<_>>()?;
    if qs.iter().any(|q| *q <= Rational::from_integer(0.into())) {
        return Err(Error::Unsupported("weights must be positive".into()));
    }
    let mut denom = num_bigint::BigInt::from(2);
    for q in &qs {
        denom = num_integer::Integer::lcm(&denom, q.denom());
    }
    let weights: Vec<i64> = qs
        .iter()
        .map(|q| {
            let w = q * Rational::from_integer(denom.clone());
            i64::try_from(w.to_integer()).expect("weight fits in i64")
        })
        .collect();
    let total = i64::try_from(denom).expect("degree fits in i64");
    Ok(Grading {
        vars,
        weights,
        half: total / 2,
    })
}

/// Degrees of basis vectors so that every nonzero entry of `d` has degree
/// `half`. Components not linked by `d` start at degree zero.
pub fn basis_degrees(x: &MatrixFactorization, grading: &Grading) -> Result<Vec<i64>> {
    let n = x.dim();
    let d = x.differential();
    let mut edges: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..n {
            let e = d.get(i, j);
            if e.is_zero() {
                continue;
            }
            let deg = grading.degree(e).ok_or_else(|| {
                Error::Unsupported(format!("differential entry `{e}` is not homogeneous"))
            })?;
            // g(i) = g(j) + half − deg
            let shift = grading.half - deg;
            edges[j].push((i, shift));
            edges[i].push((j, -shift));
        }
    }
    let mut deg: Vec<Option<i64>> = vec![None; n];
    for start in 0..n {
        if deg[start].is_some() {
            continue;
        }
        deg[start] = Some(0);
        let mut queue = VecDeque::from([start]);
        while let Some(j) = queue.pop_front() {
            let gj = deg[j].unwrap();
            for &(i, s) in &edges[j] {
                match deg[i] {
                    None => {
                        deg[i] = Some(gj + s);
                        queue.push_back(i);
                    }
                    Some(gi) if gi != gj + s => {
                        return Err(Error::Unsupported(
                            "differential is not compatible with any grading".into(),
                        ))
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(deg.into_iter().map(|g| g.unwrap()).collect())
}

type SliceKey = (usize, usize, Monomial);
type Pending = HashMap<(i64, Parity), (SliceSpace, Vec<Vec<CycScalar>>)>;
type Components = BTreeMap<(i64, Parity), Vec<(SliceKey, CycScalar)>>;

#[derive(Clone, Debug)]
struct SliceSpace {
    basis: Vec<SliceKey>,
    index: HashMap<SliceKey, usize>,
}

/// `Hom(X, X')` over the common ring, graded by weighted degree.
#[derive(Debug)]
pub struct HomComplex {
    ring: Vec<String>,
    order: u32,
    grading: Grading,
    src: MatrixFactorization,
    tgt: MatrixFactorization,
    g_src: Vec<i64>,
    g_tgt: Vec<i64>,
    monomials: RefCell<HashMap<i64, Vec<Monomial>>>,
}

impl HomComplex {
    pub fn new(x: &MatrixFactorization, x2: &MatrixFactorization) -> Result<Self> {
        if x.order() != x2.order() {
            return Err(Error::OrderMismatch(x.order(), x2.order()));
        }
        let mut ring = x.vars().to_vec();
        ring.extend(x2.vars().iter().cloned());
        ring.sort();
        ring.dedup();
        let lift = |m: &MatrixFactorization| -> Result<MatrixFactorization> {
            MatrixFactorization::new(
                m.source_potential().with_vars(&ring)?,
                m.target_potential().with_vars(&ring)?,
                m.parities().to_vec(),
                m.differential().with_vars(&ring)?,
            )
        };
        let (src, tgt) = (lift(x)?, lift(x2)?);
        let pot = |m: &MatrixFactorization| m.target_potential().sub(m.source_potential());
        if pot(&src) != pot(&tgt) {
            return Err(Error::Factorization(
                "morphisms need factorizations of the same potential".into(),
            ));
        }
        let grading = infer_grading(&ring, &[src.source_potential(), src.target_potential()])?;
        let g_src = basis_degrees(&src, &grading)?;
        let g_tgt = basis_degrees(&tgt, &grading)?;
        Ok(HomComplex {
            ring,
            order: x.order(),
            grading,
            src,
            tgt,
            g_src,
            g_tgt,
            monomials: RefCell::new(HashMap::new()),
        })
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn ring(&self) -> &[String] {
        &self.ring
    }

    /// Monomials of weighted degree exactly `t`.
    fn monomials_of_degree(&self, t: i64) -> Vec<Monomial> {
        if t < 0 {
            return Vec::new();
        }
        if let Some(m) = self.monomials.borrow().get(&t) {
            return m.clone();
        }
        fn rec(w: &[i64], k: usize, left: i64, cur: &mut Monomial, out: &mut Vec<Monomial>) {
            if k == w.len() {
                if left == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            let mut e = 0;
            while e * w[k] <= left {
                cur[k] = e as u32;
                rec(w, k + 1, left - e * w[k], cur, out);
                e += 1;
            }
            cur[k] = 0;
        }
        let mut out = Vec::new();
        let w = &self.grading.weights;
        rec(w, 0, t, &mut vec![0; w.len()], &mut out);
        self.monomials.borrow_mut().insert(t, out.clone());
        out
    }

    fn entry_parity(&self, i: usize, j: usize) -> Parity {
        self.tgt.parities()[i] + self.src.parities()[j]
    }

    fn slice(&self, degree: i64, parity: Parity) -> SliceSpace {
        let mut basis = Vec::new();
        for i in 0..self.tgt.dim() {
            for j in 0..self.src.dim() {
                if self.entry_parity(i, j) != parity {
                    continue;
                }
                for m in self.monomials_of_degree(self.g_src[j] + degree - self.g_tgt[i]) {
                    basis.push((i, j, m));
                }
            }
        }
        let index = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(k, key)| (key, k))
            .collect();
        SliceSpace { basis, index }
    }

    /// Matrix of `δ` from the `(degree, parity)` slice to the next one.
    fn delta_matrix(&self, from: &SliceSpace, to: &SliceSpace, parity: Parity) -> Matrix {
        let mut m = Matrix::zeros(self.order, to.basis.len(), from.basis.len());
        let sign = if parity == Parity::Odd { 1 } else { -1 };
        let dt = self.tgt.differential();
        let ds = self.src.differential();
        let mut bump = |row: SliceKey, c: &CycScalar, col: usize| {
            let r = *to.index.get(&row).expect("δ preserves the grading");
            let cur = m.get(r, col) + c;
            m.set(r, col, cur);
        };
        for (col, (i, j, mono)) in from.basis.iter().enumerate() {
            for k in 0..self.tgt.dim() {
                for (e, c) in dt.get(k, *i).terms() {
                    let prod: Monomial = e.iter().zip(mono).map(|(a, b)| a + b).collect();
                    bump((k, *j, prod), c, col);
                }
            }
            let s = CycScalar::from_int(self.order, sign);
            for l in 0..self.src.dim() {
                for (e, c) in ds.get(*j, l).terms() {
                    let prod: Monomial = e.iter().zip(mono).map(|(a, b)| a + b).collect();
                    bump((*i, l, prod), &(c * &s), col);
                }
            }
        }
        m
    }

    fn to_poly_matrix(&self, space: &SliceSpace, v: &[CycScalar]) -> PolyMatrix {
        let mut out = PolyMatrix::zeros(&self.ring, self.order, self.tgt.dim(), self.src.dim());
        for ((i, j, m), c) in space.basis.iter().zip(v) {
            if c.is_zero() {
                continue;
            }
            let cur = out.get(*i, *j).clone();
            out.set(
                *i,
                *j,
                cur.add(&Poly::monomial(&self.ring, m.clone(), c.clone())),
            );
        }
        out
    }

    /// `δ(φ) = d' φ − (−1)^{|φ|} φ d`.
    pub fn delta(&self, phi: &PolyMatrix, parity: Parity) -> Result<PolyMatrix> {
        let phi = phi.with_vars(&self.ring)?;
        let left = self.tgt.differential().mul(&phi)?;
        let right = phi.mul(self.src.differential())?;
        match parity {
            Parity::Even => left.sub(&right),
            Parity::Odd => left.add(&right),
        }
    }

    /// Splits `φ` into homogeneous `(degree, parity)` components.
    fn decompose(&self, phi: &PolyMatrix) -> Result<Components> {
        let phi = phi.with_vars(&self.ring)?;
        let mut out = Components::new();
        for i in 0..phi.rows() {
            for j in 0..phi.cols() {
                for (m, c) in phi.get(i, j).terms() {
                    let deg: i64 = m
                        .iter()
                        .zip(&self.grading.weights)
                        .map(|(&e, &w)| e as i64 * w)
                        .sum();
                    let d = deg + self.g_tgt[i] - self.g_src[j];
                    out.entry((d, self.entry_parity(i, j)))
                        .or_default()
                        .push(((i, j, m.clone()), c.clone()));
                }
            }
        }
        Ok(out)
    }

    fn degree_range(&self) -> (i64, i64) {
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for &gt in &self.g_tgt {
            for &gs in &self.g_src {
                lo = lo.min(gt - gs);
                hi = hi.max(gt - gs);
            }
        }
        (lo, hi)
    }

    /// Top degree of the Jacobi algebras acting on the complex.
    fn socle_bound(&self) -> i64 {
        let mut bases: BTreeMap<&str, i64> = BTreeMap::new();
        for (v, w) in self.grading.vars.iter().zip(&self.grading.weights) {
            bases.insert(base_name(v), *w);
        }
        bases
            .values()
            .map(|w| (2 * self.grading.half - 2 * w).max(0))
            .sum()
    }
}

/// One cohomology class with a cocycle representative.
#[derive(Clone, Debug)]
pub struct HomClass {
    pub parity: Parity,
    pub degree: i64,
    pub representative: PolyMatrix,
}

#[derive(Clone, Debug)]
struct CohomologySlice {
    degree: i64,
    parity: Parity,
    space: SliceSpace,
    reps: Vec<Vec<CycScalar>>,
    image: Vec<Vec<CycScalar>>,
    first_class: usize,
}

#[derive(Debug)]
pub struct HomCohomology {
    complex: HomComplex,
    slices: Vec<CohomologySlice>,
    classes: Vec<HomClass>,
    scanned: (i64, i64),
}

impl HomCohomology {
    pub fn classes(&self) -> &[HomClass] {
        &self.classes
    }

    pub fn even(&self) -> impl Iterator<Item = &HomClass> {
        self.classes.iter().filter(|c| c.parity == Parity::Even)
    }

    pub fn odd(&self) -> impl Iterator<Item = &HomClass> {
        self.classes.iter().filter(|c| c.parity == Parity::Odd)
    }

    /// `(even | odd)` with classes in their stored order.
    pub fn space(&self) -> SuperSpace {
        SuperSpace::from_parities(self.classes.iter().map(|c| c.parity).collect())
    }

    pub fn dims(&self) -> (usize, usize) {
        let s = self.space();
        (s.even_dim(), s.odd_dim())
    }

    pub fn complex(&self) -> &HomComplex {
        &self.complex
    }

    /// Degree window `[lo, hi)` that was scanned.
    pub fn scanned(&self) -> (i64, i64) {
        self.scanned
    }

    /// Coordinates of the class of a cocycle `φ` in the class basis.
    pub fn reduce(&self, phi: &PolyMatrix) -> Result<Vec<CycScalar>> {
        let order = self.complex.order;
        let mut coords = vec![CycScalar::zero(order); self.classes.len()];
        for ((degree, parity), terms) in self.complex.decompose(phi)? {
            let Some(slice) = self
                .slices
                .iter()
                .find(|s| s.degree == degree && s.parity == parity)
            else {
                let space = self.complex.slice(degree, parity);
                let v = dense(&space, &terms, order);
                let next = self
                    .complex
                    .slice(degree + self.complex.grading.half, parity.flip());
                let dm = self.complex.delta_matrix(&space, &next, parity);
                if !dm.apply(&v).iter().all(CycScalar::is_zero) {
                    return Err(Error::Factorization("not a cocycle".into()));
                }
                if degree < self.scanned.0 || degree >= self.scanned.1 {
                    return Err(Error::Inconclusive(format!(
                        "component of degree {degree} lies outside the scanned window"
                    )));
                }
                continue;
            };
            let v = dense(&slice.space, &terms, order);
            let mut cols = slice.reps.clone();
            cols.extend(slice.image.iter().cloned());
            let a = Matrix::from_columns(order, slice.space.basis.len(), &cols);
            let x = a
                .solve(&v)
                .ok_or_else(|| Error::Factorization("not a cocycle".into()))?;
            for k in 0..slice.reps.len() {
                coords[slice.first_class + k] = x[k].clone();
            }
        }
        Ok(coords)
    }
}

fn dense(space: &SliceSpace, terms: &[(SliceKey, CycScalar)], order: u32) -> Vec<CycScalar> {
    let mut v = vec![CycScalar::zero(order); space.basis.len()];
    for (k, c) in terms {
        let idx = *space.index.get(k).expect("term in slice");
        v[idx] = &v[idx] + c;
    }
    v
}

fn nmax_from_env() -> u32 {
    std::env::var(NMAX_ENV)
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_NMAX)
}

pub fn hom_cohomology(x: &MatrixFactorization, x2: &MatrixFactorization) -> Result<HomCohomology> {
    hom_cohomology_with(x, x2, nmax_from_env())
}

/// Scans degree blocks of width `half` upward from the lowest nonempty
/// slice. The scan stops once it is past the socle bound and a window of
/// `2·half` consecutive degrees carries no cohomology; `nmax` bounds the
/// number of blocks.
pub fn hom_cohomology_with(
    x: &MatrixFactorization,
    x2: &MatrixFactorization,
    nmax: u32,
) -> Result<HomCohomology> {
    let complex = HomComplex::new(x, x2)?;
    let half = complex.grading.half;
    let (lo, hi) = complex.degree_range();
    let top = hi + complex.socle_bound();
    let order = complex.order;
    let mut slices: Vec<CohomologySlice> = Vec::new();
    let mut classes: Vec<HomClass> = Vec::new();
    let mut last_nonzero = lo - 1;
    let mut kernels: Pending = HashMap::new();
    let mut images: HashMap<(i64, Parity), Vec<Vec<CycScalar>>> = HashMap::new();
    let mut degree = lo - half;
    let mut blocks = 0u32;
    let mut accepted = false;
    // the slice at `degree` is finished once the incoming images are known
    while blocks <= nmax {
        for parity in [Parity::Even, Parity::Odd] {
            let space = complex.slice(degree, parity);
            let next = complex.slice(degree + half, parity.flip());
            let dm = complex.delta_matrix(&space, &next, parity);
            let image = dm.image();
            images.insert((degree + half, parity.flip()), image);
            kernels.insert((degree, parity), (space, dm.kernel()));
        }
        let finished = degree;
        for parity in [Parity::Even, Parity::Odd] {
            let (space, kernel) = kernels.remove(&(finished, parity)).expect("computed");
            let image = images.remove(&(finished, parity)).unwrap_or_default();
            if kernel.len() == image.len() {
                continue;
            }
            let mut cols = image.clone();
            cols.extend(kernel.iter().cloned());
            let pivots = Matrix::from_columns(order, space.basis.len(), &cols)
                .echelon()
                .pivots;
            let reps: Vec<Vec<CycScalar>> = pivots
                .iter()
                .filter(|&&p| p >= image.len())
                .map(|&p| cols[p].clone())
                .collect();
            let first_class = classes.len();
            for rep in &reps {
                let phi = complex.to_poly_matrix(&space, rep);
                debug_assert!(complex
                    .delta(&phi, parity)
                    .map(|m| m.is_zero())
                    .unwrap_or(false));
                classes.push(HomClass {
                    parity,
                    degree: finished,
                    representative: phi,
                });
            }
            last_nonzero = finished;
            slices.push(CohomologySlice {
                degree: finished,
                parity,
                space,
                reps,
                image,
                first_class,
            });
        }
        degree += 1;
        if (degree - lo) % half == 0 {
            blocks += 1;
        }
        if degree > top && degree - last_nonzero > 2 * half {
            accepted = true;
            break;
        }
    }
    if !accepted {
        return Err(Error::Inconclusive(format!(
            "cohomology did not stabilize within {nmax} degree blocks (set {NMAX_ENV} to raise the ceiling)"
        )));
    }
    for c in &classes {
        if !complex.delta(&c.representative, c.parity)?.is_zero() {
            return Err(Error::Factorization("representative is not closed".into()));
        }
    }
    // stable order: parity, then degree, then discovery order
    let mut order_idx: Vec<usize> = (0..classes.len()).collect();
    order_idx.sort_by_key(|&k| (classes[k].parity, classes[k].degree, k));
    let mut remap = vec![0; classes.len()];
    for (new, &old) in order_idx.iter().enumerate() {
        remap[old] = new;
    }
    let classes: Vec<HomClass> = order_idx.iter().map(|&k| classes[k].clone()).collect();
    for s in &mut slices {
        s.first_class = remap[s.first_class];
    }
    Ok(HomCohomology {
        complex,
        slices,
        classes,
        scanned: (lo, degree),
    })
}

#[cfg(test)]
mod tests {
    use super::super::mf::{identity_mf, rank_one_mf};
    use super::*;

    fn p(s: &str) -> Poly {
        Poly::parse(s, 1).unwrap()
    }

    #[test]
    fn fermat_grading() {
        let w = p("x^3 + y^6");
        let ring: Vec<String> = vec!["x".into(), "y".into()];
        let g = infer_grading(&ring, &[&w]).unwrap();
        assert_eq!(g.weights(), &[2, 1]);
        assert_eq!(g.half(), 3);
        assert!(infer_grading(&ring, &[&p("x^3 + x*y + y^2")]).is_err());
    }

    #[test]
    fn endomorphisms_of_identity_are_the_jacobi_algebra() {
        for r in 2..=5 {
            let i = identity_mf(&p(&format!("x^{r}")));
            let h = hom_cohomology(&i, &i).unwrap();
            assert_eq!(h.dims(), (r - 1, 0), "r = {r}");
            let shifted = hom_cohomology(&i, &i.shift()).unwrap();
            assert_eq!(shifted.dims(), (0, r - 1), "r = {r}");
        }
    }

    #[test]
    fn rank_one_factorizations() {
        // End of (x^a | x^{n-a}) is k[x]/(x^min(a, n-a)) in both parities
        let a = rank_one_mf(&p("x"), &p("x^2")).unwrap();
        assert_eq!(hom_cohomology(&a, &a).unwrap().dims(), (1, 1));
        let b = rank_one_mf(&p("x^2"), &p("x^2")).unwrap();
        assert_eq!(hom_cohomology(&b, &b).unwrap().dims(), (2, 2));
        let c = rank_one_mf(&p("x"), &p("x^3")).unwrap();
        assert_eq!(hom_cohomology(&c, &b).unwrap().dims(), (1, 1));
    }

    #[test]
    fn reduce_recovers_coordinates() {
        let i = identity_mf(&p("x^4"));
        let h = hom_cohomology(&i, &i).unwrap();
        for (k, c) in h.classes().iter().enumerate() {
            let coords = h.reduce(&c.representative).unwrap();
            for (l, x) in coords.iter().enumerate() {
                assert_eq!(x.is_one(), k == l);
                assert!(k == l || x.is_zero());
            }
        }
    }

    #[test]
    fn inconclusive_when_ceiling_too_low() {
        let i = identity_mf(&p("x^5"));
        assert!(matches!(
            hom_cohomology_with(&i, &i, 0),
            Err(Error::Inconclusive(_))
        ));
    }
}
