//! Diagonal cyclic orbifolds of Fermat potentials.

use std::collections::BTreeMap;

use super::cohomology::{hom_cohomology, HomCohomology};
use super::mf::{identity_mf, twisted_identity, PolyMatrix};
use super::poly::{base_name, Poly};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalars::{CycScalar, Rational};
use crate::superlinalg::{quantum_dimension, Parity, SuperMap, SuperSpace};

/// `Z_r` acting by `x_i ↦ ξ^{w_i} x_i`, `ξ = ζ_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    r: u32,
    weights: BTreeMap<String, u32>,
}

impl GroupAction {
    pub fn new<S: Into<String>>(
        r: u32,
        weights: impl IntoIterator<Item = (S, i64)>,
    ) -> Result<Self> {
        if r == 0 {
            return Err(Error::Parse("group order must be positive".into()));
        }
        let weights = weights
            .into_iter()
            .map(|(v, w)| (v.into(), w.rem_euclid(r as i64) as u32))
            .collect();
        Ok(GroupAction { r, weights })
    }

    /// Weights listed in the (sorted) variable order of `vars`.
    pub fn from_vars(r: u32, vars: &[String], weights: &[i64]) -> Result<Self> {
        if vars.len() != weights.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} variables but {} weights",
                vars.len(),
                weights.len()
            )));
        }
        Self::new(r, vars.iter().cloned().zip(weights.iter().copied()))
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn weights(&self) -> &BTreeMap<String, u32> {
        &self.weights
    }

    /// Weight of a variable or of a primed copy; unlisted variables are fixed.
    pub fn weight(&self, var: &str) -> u32 {
        self.weights
            .get(var)
            .or_else(|| self.weights.get(base_name(var)))
            .copied()
            .unwrap_or(0)
    }

    pub fn check_invariant(&self, w: &Poly) -> Result<()> {
        let ws: Vec<u64> = w.vars().iter().map(|v| self.weight(v) as u64).collect();
        for m in w.terms().keys() {
            let total: u64 = m.iter().zip(&ws).map(|(&e, &k)| e as u64 * k).sum();
            if total % self.r as u64 != 0 {
                return Err(Error::Unsupported(format!(
                    "`{}` is not invariant under the action",
                    w.monomial_string(m)
                )));
            }
        }
        Ok(())
    }

    /// `k` with `det(g) = ξ^k` on the given variables.
    pub fn det_exponent(&self, vars: &[String], g: i64) -> i64 {
        let s: i64 = vars.iter().map(|v| self.weight(v) as i64).sum();
        (g * s).rem_euclid(self.r as i64)
    }

    fn restrict(&self, var: &str) -> GroupAction {
        GroupAction {
            r: self.r,
            weights: BTreeMap::from([(var.to_string(), self.weight(var))]),
        }
    }
}

/// `(variable, exponent)` for each summand of `W = Σ c_i x_i^{d_i}`.
pub fn fermat_exponents(w: &Poly) -> Result<Vec<(String, u32)>> {
    let w = w.trimmed();
    if w.terms().len() != w.nvars() || w.nvars() == 0 {
        return Err(Error::Unsupported(format!("`{w}` is not a Fermat sum")));
    }
    let mut out = Vec::new();
    for m in w.terms().keys() {
        let nz: Vec<usize> = (0..m.len()).filter(|&i| m[i] > 0).collect();
        if nz.len() != 1 || m[nz[0]] < 2 {
            return Err(Error::Unsupported(format!("`{w}` is not a Fermat sum")));
        }
        out.push((w.vars()[nz[0]].clone(), m[nz[0]]));
    }
    out.sort();
    Ok(out)
}

/// One summand `c·x^d` in one twisted sector.
#[derive(Debug)]
pub struct VariableSector {
    pub var: String,
    pub exponent: u32,
    pub g: u32,
    pub cohomology: HomCohomology,
    /// `ρ(h)` on the class basis, `h = 0,…,r−1`.
    pub rho: Vec<Matrix>,
}

impl VariableSector {
    pub fn is_twisted(&self, act: &GroupAction) -> bool {
        (self.g as u64 * act.weight(&self.var) as u64) % act.r() as u64 != 0
    }
}

/// `Hom(1_W, _g(1_W))` for one `g`, as a graded tensor over the summands.
#[derive(Debug)]
pub struct OrbifoldSector {
    pub g: u32,
    pub space: SuperSpace,
    pub factors: Vec<VariableSector>,
    pub rho: Vec<Matrix>,
}

/// The orbifold data `⊕_g Hom(1_W, _g(1_W))` with its `Z_r` action and
/// Nakayama automorphism `γ = det(g)^{−1}` on sector `g`.
#[derive(Debug)]
pub struct OrbifoldAlgebra {
    potential: Poly,
    action: GroupAction,
    sectors: Vec<OrbifoldSector>,
}

/// `ρ(h)φ = D⁻¹ σ_h(φ) D` with `σ_h` scaling `x, x'` by `ξ^{−h w}` and
/// `D = diag(1, ξ^{h w})` on the exterior basis.
fn rho_on_representative(phi: &PolyMatrix, var: &str, w: u32, r: u32, h: i64) -> PolyMatrix {
    let lambda = CycScalar::zeta_pow(r, -h * w as i64);
    let primed = super::poly::primed(var);
    let scaled = phi.map(|p| {
        p.scale_variable(var, &lambda)
            .scale_variable(&primed, &lambda)
    });
    let d = [CycScalar::one(r), CycScalar::zeta_pow(r, h * w as i64)];
    let mut out = scaled.clone();
    for i in 0..2 {
        for j in 0..2 {
            let c = d[j].try_div(&d[i]).expect("units");
            out.set(i, j, scaled.get(i, j).scale(&c));
        }
    }
    out
}

fn variable_sector(
    var: &str,
    exponent: u32,
    coeff: &CycScalar,
    act: &GroupAction,
    g: u32,
) -> Result<VariableSector> {
    let r = act.r();
    let sub = act.restrict(var);
    let ring = vec![var.to_string()];
    let mut mono = vec![0u32; 1];
    mono[0] = exponent;
    let p = Poly::monomial(&ring, mono, coeff.embed(r)?);
    let source = identity_mf(&p);
    let target = twisted_identity(&p, &sub, g as i64)?;
    let cohomology = hom_cohomology(&source, &target)?;
    let n = cohomology.classes().len();
    let w = sub.weight(var);
    let mut rho = Vec::with_capacity(r as usize);
    for h in 0..r as i64 {
        let cols: Vec<Vec<CycScalar>> = cohomology
            .classes()
            .iter()
            .map(|c| cohomology.reduce(&rho_on_representative(&c.representative, var, w, r, h)))
            .collect::<Result<_>>()?;
        rho.push(Matrix::from_columns(r, n, &cols));
    }
    Ok(VariableSector {
        var: var.to_string(),
        exponent,
        g,
        cohomology,
        rho,
    })
}

pub fn orbifold_algebra(w: &Poly, act: &GroupAction) -> Result<OrbifoldAlgebra> {
    let r = act.r();
    let w = w.embed(r)?.trimmed();
    act.check_invariant(&w)?;
    let summands = fermat_exponents(&w)?;
    let mut sectors = Vec::with_capacity(r as usize);
    for g in 0..r {
        let mut factors = Vec::new();
        for (v, d) in &summands {
            let mut m = vec![0u32; w.nvars()];
            m[w.index_of(v).expect("own variable")] = *d;
            factors.push(variable_sector(v, *d, &w.coeff(&m), act, g)?);
        }
        let mut space = SuperSpace::unit();
        let mut rho = vec![Matrix::identity(r, 1); r as usize];
        for f in &factors {
            space = space.tensor(&f.cohomology.space());
            for (acc, m) in rho.iter_mut().zip(&f.rho) {
                *acc = acc.kron(m);
            }
        }
        sectors.push(OrbifoldSector {
            g,
            space,
            factors,
            rho,
        });
    }
    let alg = OrbifoldAlgebra {
        potential: w,
        action: act.clone(),
        sectors,
    };
    let failures = alg.check();
    if !failures.is_empty() {
        return Err(Error::InvalidAlgebra(format!(
            "failing relations: {}",
            failures.join(", ")
        )));
    }
    Ok(alg)
}

impl OrbifoldAlgebra {
    pub fn r(&self) -> u32 {
        self.action.r()
    }

    pub fn potential(&self) -> &Poly {
        &self.potential
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    pub fn sectors(&self) -> &[OrbifoldSector] {
        &self.sectors
    }

    pub fn sector(&self, g: u32) -> &OrbifoldSector {
        &self.sectors[g as usize]
    }

    /// Number of summands, i.e. the shift `n` of the Serre functor.
    pub fn nvars(&self) -> usize {
        self.potential.nvars()
    }

    /// All sectors, `g` ascending.
    pub fn space(&self) -> SuperSpace {
        SuperSpace::from_parities(
            self.sectors
                .iter()
                .flat_map(|s| s.space.parities().iter().copied())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.space().dim()
    }

    /// Counit normalization making the averaging over `Z_r` idempotent.
    pub fn counit_normalization(&self) -> Rational {
        Rational::new(1.into(), self.r().into())
    }

    pub fn det_exponent(&self, g: i64) -> i64 {
        self.action.det_exponent(self.potential.vars(), g)
    }

    fn block_diagonal(&self, blocks: impl Fn(&OrbifoldSector) -> Matrix) -> SuperMap {
        let r = self.r();
        let space = self.space();
        let mut m = Matrix::zeros(r, space.dim(), space.dim());
        let mut off = 0;
        for s in &self.sectors {
            let b = blocks(s);
            for i in 0..b.rows() {
                for j in 0..b.cols() {
                    m.set(off + i, off + j, b.get(i, j).clone());
                }
            }
            off += b.rows();
        }
        SuperMap::new(space.clone(), space, Parity::Even, m).expect("even block map")
    }

    /// `ρ(h)` on `⊕_g Hom(1_W, _g(1_W))`.
    pub fn rho(&self, h: i64) -> SuperMap {
        let h = h.rem_euclid(self.r() as i64) as usize;
        self.block_diagonal(|s| s.rho[h].clone())
    }

    /// `γ = det(g)^{−1}` on sector `g`.
    pub fn gamma(&self) -> SuperMap {
        let r = self.r();
        self.block_diagonal(|s| {
            let c = CycScalar::zeta_pow(r, -self.det_exponent(s.g as i64));
            Matrix::identity(r, s.space.dim()).scale(&c)
        })
    }

    /// Names of failed structural checks.
    pub fn check(&self) -> Vec<&'static str> {
        let r = self.r() as i64;
        let mut out = Vec::new();
        if !self.rho(0).is_identity() {
            out.push("action-unit");
        }
        let composes = (0..r).all(|h| {
            (0..r).all(|k| {
                self.rho(h)
                    .compose(&self.rho(k))
                    .map(|m| m.matrix() == self.rho(h + k).matrix())
                    .unwrap_or(false)
            })
        });
        if !composes {
            out.push("action-composition");
        }
        let gamma = self.gamma();
        let commutes = (0..r).all(|h| {
            let rh = self.rho(h);
            matches!((gamma.compose(&rh), rh.compose(&gamma)), (Ok(a), Ok(b)) if a.matrix() == b.matrix())
        });
        if !commutes {
            out.push("gamma-equivariance");
        }
        if !gamma
            .pow(self.r() as u64)
            .map(|m| m.is_identity())
            .unwrap_or(false)
        {
            out.push("gamma-order");
        }
        out
    }

    /// `(1/r) Σ_h det(h)^{a−1} ρ(h)`.
    pub fn circle_projector(&self, a: i64) -> SuperMap {
        let r = self.r();
        let mut acc = SuperMap::zero(r, &self.space(), &self.space(), Parity::Even);
        for h in 0..r as i64 {
            let c = CycScalar::zeta_pow(r, (a - 1) * self.det_exponent(h));
            acc = acc.add(&self.rho(h).scale(&c)).expect("same shape");
        }
        acc.scale(&CycScalar::from_rational(r, self.counit_normalization()))
    }
}

/// Circle spaces from the projector images, shifted by `n(1−a)`.
pub fn circle_spaces_from_projectors(alg: &OrbifoldAlgebra) -> Result<BTreeMap<u32, SuperSpace>> {
    let r = alg.r();
    let n = alg.nvars() as i64;
    let mut out = BTreeMap::new();
    for a in 0..r as i64 {
        let p = alg.circle_projector(a);
        if p.compose(&p)?.matrix() != p.matrix() {
            return Err(Error::NotIdempotent(format!(
                "circle projector for a = {a}"
            )));
        }
        let m = p.matrix();
        let space = alg.space();
        let mut even = 0;
        let mut odd = 0;
        for parity in [Parity::Even, Parity::Odd] {
            let idx = space.indices_of(parity);
            let block = m.select(&idx, &idx);
            // p is even, so its image splits by parity
            let rk = block.rank();
            match parity {
                Parity::Even => even = rk,
                Parity::Odd => odd = rk,
            }
        }
        out.insert(a as u32, SuperSpace::new(even, odd).shifted(n * (1 - a)));
    }
    Ok(out)
}

/// Closed-form characters: an untwisted summand contributes even classes
/// `x^j` (`j ≤ d−2`) of character `ξ^{−h w j}`, a twisted summand one odd
/// class of character `ξ^{h w}`.
pub fn circle_spaces_from_characters(
    w: &Poly,
    act: &GroupAction,
) -> Result<BTreeMap<u32, SuperSpace>> {
    let r = act.r() as i64;
    let summands = fermat_exponents(w)?;
    let vars: Vec<String> = summands.iter().map(|(v, _)| v.clone()).collect();
    let n = vars.len() as i64;
    let total_weight: i64 = vars.iter().map(|v| act.weight(v) as i64).sum();
    let mut out = BTreeMap::new();
    for a in 0..r {
        let mut even = 0;
        let mut odd = 0;
        for g in 0..r {
            // (character exponent, parity) of each class in the sector
            let mut classes: Vec<(i64, u32)> = vec![(0, 0)];
            for (v, d) in &summands {
                let wv = act.weight(v) as i64;
                let local: Vec<(i64, u32)> = if (g * wv) % r == 0 {
                    (0..*d as i64 - 1).map(|j| (-wv * j, 0)).collect()
                } else {
                    vec![(wv, 1)]
                };
                classes = classes
                    .iter()
                    .flat_map(|&(c, p)| local.iter().map(move |&(c2, p2)| (c + c2, p + p2)))
                    .collect();
            }
            for (c, p) in classes {
                if (c + (a - 1) * total_weight).rem_euclid(r) == 0 {
                    if p % 2 == 0 {
                        even += 1;
                    } else {
                        odd += 1;
                    }
                }
            }
        }
        out.insert(a as u32, SuperSpace::new(even, odd).shifted(n * (1 - a)));
    }
    Ok(out)
}

/// Circle spaces `C_a`, computed from the orbifold action and checked
/// against the closed-form characters.
pub fn lg_circle_spaces(w: &Poly, act: &GroupAction) -> Result<BTreeMap<u32, SuperSpace>> {
    let alg = orbifold_algebra(w, act)?;
    circle_spaces_checked(&alg)
}

pub fn circle_spaces_checked(alg: &OrbifoldAlgebra) -> Result<BTreeMap<u32, SuperSpace>> {
    let a = circle_spaces_from_projectors(alg)?;
    let b = circle_spaces_from_characters(alg.potential(), alg.action())?;
    for (k, sa) in &a {
        let sb = &b[k];
        if (sa.even_dim(), sa.odd_dim()) != (sb.even_dim(), sb.odd_dim()) {
            return Err(Error::CrossCheck(format!(
                "C_{k}: projector gives ({}|{}), characters give ({}|{})",
                sa.even_dim(),
                sa.odd_dim(),
                sb.even_dim(),
                sb.odd_dim()
            )));
        }
    }
    Ok(a)
}

/// Torus invariants `T(d, 0) = sdim C_d` for the divisors `d` of `r`.
/// Values are meaningful up to a global sign.
pub fn lg_torus_invariants(spaces: &BTreeMap<u32, SuperSpace>, r: u32) -> BTreeMap<u32, CycScalar> {
    crate::surface::divisors(r)
        .into_iter()
        .map(|d| (d, quantum_dimension(r, &spaces[&(d % r)])))
        .collect()
}
