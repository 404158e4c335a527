//! Λ_r-Frobenius algebras from Δ-separable Frobenius algebras via the
//! twisted-center projector, and a few built-in algebras.

use crate::error::{Error, Result};
use crate::lambda_frobenius::{LambdaFrobenius, LambdaFrobeniusData};
use crate::matrix::Matrix;
use crate::scalars::CycScalar;
use crate::superlinalg::{
    braiding, split_idempotent, Parity, SplitIdempotent, SuperMap, SuperSpace,
};

/// A Δ-separable Frobenius algebra in super vector spaces. Every invariant
/// is checked on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusAlgebraData {
    space: SuperSpace,
    mult: SuperMap,
    unit: SuperMap,
    counit: SuperMap,
    comult: SuperMap,
}

impl FrobeniusAlgebraData {
    pub fn new(
        space: SuperSpace,
        mult: SuperMap,
        unit: SuperMap,
        counit: SuperMap,
        comult: SuperMap,
    ) -> Result<Self> {
        let data = Self::unchecked(space, mult, unit, counit, comult)?;
        let failed = data.relation_failures();
        if !failed.is_empty() {
            return Err(Error::InvalidAlgebra(format!(
                "failing relations: {}",
                failed.join(", ")
            )));
        }
        Ok(data)
    }

    /// Checks shapes and parities only.
    pub fn unchecked(
        space: SuperSpace,
        mult: SuperMap,
        unit: SuperMap,
        counit: SuperMap,
        comult: SuperMap,
    ) -> Result<Self> {
        let aa = space.tensor(&space);
        let one = SuperSpace::unit();
        let order = mult.order();
        let shapes: [(&str, &SuperMap, &SuperSpace, &SuperSpace); 4] = [
            ("mult", &mult, &aa, &space),
            ("unit", &unit, &one, &space),
            ("counit", &counit, &space, &one),
            ("comult", &comult, &space, &aa),
        ];
        for (name, m, src, tgt) in shapes {
            if m.source() != src || m.target() != tgt {
                return Err(Error::ShapeMismatch(format!("{name} has the wrong shape")));
            }
            if m.parity() != Parity::Even && !m.matrix().is_zero() {
                return Err(Error::Parity(format!("{name} must be even")));
            }
            if m.order() != order {
                return Err(Error::OrderMismatch(m.order(), order));
            }
        }
        Ok(FrobeniusAlgebraData {
            space,
            mult,
            unit,
            counit,
            comult,
        })
    }

    /// Builds the comultiplication `(μ ⊗ 1)(1 ⊗ c)` from the copairing `c`
    /// dual to `ε ∘ μ`.
    pub fn with_derived_comult(
        space: SuperSpace,
        mult: SuperMap,
        unit: SuperMap,
        counit: SuperMap,
    ) -> Result<Self> {
        let order = mult.order();
        let n = space.dim();
        let pairing = counit.compose(&mult)?;
        let b = Matrix::from_columns(
            order,
            n,
            &(0..n)
                .map(|j| {
                    (0..n)
                        .map(|i| pairing.matrix().get(0, i * n + j).clone())
                        .collect()
                })
                .collect::<Vec<_>>(),
        );
        let binv = b
            .inverse()
            .map_err(|_| Error::Degenerate("the pairing ε∘μ is singular".into()))?;
        let mut cvec = Matrix::zeros(order, n * n, 1);
        for j in 0..n {
            for k in 0..n {
                cvec.set(j * n + k, 0, binv.get(j, k).clone());
            }
        }
        let copairing =
            SuperMap::new(SuperSpace::unit(), space.tensor(&space), Parity::Even, cvec)?;
        let id = SuperMap::identity(order, &space);
        let comult = mult.tensor(&id).compose(&id.tensor(&copairing))?;
        Self::new(space, mult, unit, counit, comult)
    }

    pub fn order(&self) -> u32 {
        self.mult.order()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &SuperSpace {
        &self.space
    }

    pub fn mult(&self) -> &SuperMap {
        &self.mult
    }

    pub fn unit(&self) -> &SuperMap {
        &self.unit
    }

    pub fn counit(&self) -> &SuperMap {
        &self.counit
    }

    pub fn comult(&self) -> &SuperMap {
        &self.comult
    }

    fn id(&self) -> SuperMap {
        SuperMap::identity(self.order(), &self.space)
    }

    /// `ε ∘ μ`.
    pub fn pairing(&self) -> SuperMap {
        self.counit.compose(&self.mult).expect("shapes")
    }

    /// `Δ ∘ η`.
    pub fn copairing(&self) -> SuperMap {
        self.comult.compose(&self.unit).expect("shapes")
    }

    /// Names of the defining relations that fail.
    pub fn relation_failures(&self) -> Vec<&'static str> {
        let id = self.id();
        let (m, d) = (&self.mult, &self.comult);
        let c = |x: Result<SuperMap>| x.expect("shapes");
        let checks: [(&'static str, SuperMap, SuperMap); 9] = [
            (
                "associativity",
                c(m.compose(&m.tensor(&id))),
                c(m.compose(&id.tensor(m))),
            ),
            (
                "unit-left",
                c(m.compose(&self.unit.tensor(&id))),
                id.clone(),
            ),
            (
                "unit-right",
                c(m.compose(&id.tensor(&self.unit))),
                id.clone(),
            ),
            (
                "coassociativity",
                c(d.tensor(&id).compose(d)),
                c(id.tensor(d).compose(d)),
            ),
            (
                "counit-left",
                c(self.counit.tensor(&id).compose(d)),
                id.clone(),
            ),
            (
                "counit-right",
                c(id.tensor(&self.counit).compose(d)),
                id.clone(),
            ),
            (
                "frobenius-left",
                c(m.tensor(&id).compose(&id.tensor(d))),
                c(d.compose(m)),
            ),
            (
                "frobenius-right",
                c(id.tensor(m).compose(&d.tensor(&id))),
                c(d.compose(m)),
            ),
            ("separability", c(m.compose(d)), id),
        ];
        checks
            .into_iter()
            .filter(|(_, l, r)| l.matrix() != r.matrix())
            .map(|(n, _, _)| n)
            .collect()
    }

    /// Whether the pairing is supersymmetric, i.e. `γ = 1`.
    pub fn is_symmetric(&self) -> bool {
        nakayama_gamma(self)
            .map(|g| g.map().is_identity())
            .unwrap_or(false)
    }
}

/// An even, invertible algebra and coalgebra automorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraAutomorphism {
    map: SuperMap,
}

impl AlgebraAutomorphism {
    pub fn new(alg: &FrobeniusAlgebraData, map: SuperMap) -> Result<Self> {
        if map.source() != alg.space() || map.target() != alg.space() {
            return Err(Error::ShapeMismatch(
                "automorphism must be an endomorphism".into(),
            ));
        }
        if map.parity() != Parity::Even {
            return Err(Error::Parity("automorphism must be even".into()));
        }
        map.inverse()
            .map_err(|_| Error::InvalidAlgebra("automorphism is not invertible".into()))?;
        let c = |x: Result<SuperMap>| x.expect("shapes");
        let g2 = map.tensor(&map);
        let ok = c(map.compose(alg.mult())) == c(alg.mult().compose(&g2))
            && c(map.compose(alg.unit())) == *alg.unit()
            && c(alg.counit().compose(&map)) == *alg.counit()
            && c(alg.comult().compose(&map)) == c(g2.compose(alg.comult()));
        if !ok {
            return Err(Error::InvalidAlgebra(
                "map does not preserve the Frobenius structure".into(),
            ));
        }
        Ok(AlgebraAutomorphism { map })
    }

    pub fn map(&self) -> &SuperMap {
        &self.map
    }

    pub fn pow(&self, k: i64) -> SuperMap {
        let base = if k < 0 {
            self.map.inverse().expect("invertible")
        } else {
            self.map.clone()
        };
        base.pow(k.unsigned_abs()).expect("endomorphism")
    }

    /// Smallest `k ≥ 1` with `γ^k = 1`, searched up to `limit`.
    pub fn order_up_to(&self, limit: u64) -> Option<u64> {
        let mut acc = self.map.clone();
        for k in 1..=limit {
            if acc.is_identity() {
                return Some(k);
            }
            acc = acc.compose(&self.map).expect("endomorphism");
        }
        None
    }
}

/// The Nakayama automorphism `γ_A`. Its inverse is the zig-zag
/// `(1 ⊗ β)(b_{A,A} ⊗ 1)(1 ⊗ c)` with `β = ε∘μ` and `c = Δ∘η`.
pub fn nakayama_gamma(alg: &FrobeniusAlgebraData) -> Result<AlgebraAutomorphism> {
    let order = alg.order();
    let id = alg.id();
    let inv = id
        .tensor(&alg.pairing())
        .compose(&braiding(order, alg.space(), alg.space()).tensor(&id))?
        .compose(&id.tensor(&alg.copairing()))?;
    let gamma = inv
        .inverse()
        .map_err(|_| Error::Degenerate("zig-zag is not invertible".into()))?;
    AlgebraAutomorphism::new(alg, gamma)
}

/// Which copairing leg carries `γ^{1-a}` in the projector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(not(test), allow(dead_code))]
enum TwistLeg {
    Left,
    Right,
}

const SHIPPED_LEG: TwistLeg = TwistLeg::Left;

/// `P_a(x) = Σ_i (-1)^{|x||e_i|} γ^{1-a}(ē_i) · x · e_i` where `Δ(1) = Σ ē_i ⊗ e_i`.
pub fn twisted_center_projector(
    alg: &FrobeniusAlgebraData,
    gamma: &AlgebraAutomorphism,
    r: u32,
    a: i64,
) -> SuperMap {
    projector_with(alg, gamma, r, a, SHIPPED_LEG)
}

fn projector_with(
    alg: &FrobeniusAlgebraData,
    gamma: &AlgebraAutomorphism,
    r: u32,
    a: i64,
    leg: TwistLeg,
) -> SuperMap {
    let order = alg.order();
    let id = alg.id();
    let tw = gamma.pow((1 - a).rem_euclid(r as i64));
    let twist = match leg {
        TwistLeg::Left => tw.tensor(&id).tensor(&id),
        TwistLeg::Right => id.tensor(&id).tensor(&tw),
    };
    // 𝟙 ⊗ A and A share a basis, so this is a map A → A⊗A⊗A.
    let spread = alg.copairing().tensor(&id);
    let swap = id.tensor(&braiding(order, alg.space(), alg.space()));
    let mult2 = alg.mult().compose(&alg.mult().tensor(&id)).expect("shapes");
    mult2
        .compose(&twist)
        .and_then(|m| m.compose(&swap))
        .and_then(|m| m.compose(&spread))
        .expect("shapes")
}

/// The graded center together with the splittings of its projectors.
#[derive(Clone, Debug)]
pub struct GradedCenter {
    pub algebra: LambdaFrobenius,
    pub gamma: AlgebraAutomorphism,
    pub splittings: Vec<SplitIdempotent>,
}

impl GradedCenter {
    /// `γ` restricted and corestricted to `C_a`.
    pub fn gamma_on(&self, a: i64) -> SuperMap {
        let s = &self.splittings[self.algebra.idx(a)];
        self.gamma
            .map()
            .sandwich(&s.projection, &s.inclusion)
            .expect("shapes")
    }
}

pub fn graded_center(alg: &FrobeniusAlgebraData, r: u32) -> Result<LambdaFrobenius> {
    Ok(graded_center_data(alg, r)?.algebra)
}

pub fn graded_center_data(alg: &FrobeniusAlgebraData, r: u32) -> Result<GradedCenter> {
    graded_center_with(alg, r, SHIPPED_LEG)
}

fn graded_center_with(alg: &FrobeniusAlgebraData, r: u32, leg: TwistLeg) -> Result<GradedCenter> {
    if r == 0 {
        return Err(Error::InvalidAlgebra("r must be positive".into()));
    }
    let gamma = nakayama_gamma(alg)?;
    if !gamma.pow(r as i64).is_identity() {
        return Err(Error::InvalidAlgebra(format!(
            "the Nakayama automorphism does not satisfy γ^{r} = 1"
        )));
    }
    let ri = r as i64;
    let mut splittings = Vec::with_capacity(r as usize);
    for a in 0..ri {
        let p = projector_with(alg, &gamma, r, a, leg);
        let split = split_idempotent(&p).map_err(|e| match e {
            Error::NotIdempotent(m) => Error::NotIdempotent(format!("P_{a}: {m}")),
            other => other,
        })?;
        splittings.push(split);
    }
    let md = |a: i64| a.rem_euclid(ri) as usize;
    let c = |x: Result<SuperMap>| x.expect("shapes");
    let mut mu = Vec::with_capacity(r as usize);
    let mut delta = Vec::with_capacity(r as usize);
    for a in 0..ri {
        let (sa, mut row_mu, mut row_delta) = (&splittings[md(a)], Vec::new(), Vec::new());
        for b in 0..ri {
            let sb = &splittings[md(b)];
            let sm = &splittings[md(a + b - 1)];
            row_mu.push(c(sm
                .projection
                .compose(alg.mult())
                .and_then(|m| m.compose(&sa.inclusion.tensor(&sb.inclusion)))));
            let sd = &splittings[md(a + b + 1)];
            row_delta.push(c(sa
                .projection
                .tensor(&sb.projection)
                .compose(alg.comult())
                .and_then(|m| m.compose(&sd.inclusion))));
        }
        mu.push(row_mu);
        delta.push(row_delta);
    }
    let eta = c(splittings[md(1)].projection.compose(alg.unit()));
    let eps = c(alg.counit().compose(&splittings[md(-1)].inclusion));
    let algebra = LambdaFrobenius::new(LambdaFrobeniusData {
        r,
        spaces: splittings.iter().map(|s| s.image.clone()).collect(),
        mu,
        eta,
        delta,
        eps,
    })?;
    Ok(GradedCenter {
        algebra,
        gamma,
        splittings,
    })
}

fn even_map(src: SuperSpace, tgt: SuperSpace, m: Matrix) -> SuperMap {
    SuperMap::new(src, tgt, Parity::Even, m).expect("builtin maps are even")
}

fn q(order: u32, n: i64, d: i64) -> CycScalar {
    CycScalar::from_ratio(order, n, d)
}

/// `k` with all structure maps `1`.
pub fn trivial_algebra() -> FrobeniusAlgebraData {
    let one = SuperMap::identity(1, &SuperSpace::unit());
    FrobeniusAlgebraData::new(
        SuperSpace::unit(),
        one.clone(),
        one.clone(),
        one.clone(),
        one,
    )
    .expect("trivial algebra")
}

/// `k[Z_n]` with `ε(Σ a_g g) = n·a_e` and `Δ(g) = (1/n) Σ_h gh ⊗ h^{-1}`.
pub fn group_algebra(n: usize) -> Result<FrobeniusAlgebraData> {
    if n == 0 {
        return Err(Error::InvalidAlgebra("group order must be positive".into()));
    }
    let order = 1;
    let v = SuperSpace::new(n, 0);
    let mut mult = Matrix::zeros(order, n, n * n);
    for i in 0..n {
        for j in 0..n {
            mult.set((i + j) % n, i * n + j, CycScalar::one(order));
        }
    }
    let mut unit = Matrix::zeros(order, n, 1);
    unit.set(0, 0, CycScalar::one(order));
    let mut counit = Matrix::zeros(order, 1, n);
    counit.set(0, 0, CycScalar::from_int(order, n as i64));
    let mut comult = Matrix::zeros(order, n * n, n);
    for g in 0..n {
        for h in 0..n {
            comult.set(((g + h) % n) * n + (n - h) % n, g, q(order, 1, n as i64));
        }
    }
    let vv = v.tensor(&v);
    let one = SuperSpace::unit();
    FrobeniusAlgebraData::new(
        v.clone(),
        even_map(vv.clone(), v.clone(), mult),
        even_map(one.clone(), v.clone(), unit),
        even_map(v.clone(), one, counit),
        even_map(v, vv, comult),
    )
}

/// `Cl₁ = k⟨θ⟩/(θ² = 1)` with `θ` odd and `ε(x + yθ) = 2x`.
pub fn clifford1() -> FrobeniusAlgebraData {
    let order = 1;
    let v = SuperSpace::from_parities(vec![Parity::Even, Parity::Odd]);
    let vv = v.tensor(&v);
    let one = SuperSpace::unit();
    // basis of A⊗A: 1⊗1, 1⊗θ, θ⊗1, θ⊗θ
    let mult = Matrix::from_ints(order, &[&[1, 0, 0, 1], &[0, 1, 1, 0]]);
    let unit = Matrix::from_ints(order, &[&[1], &[0]]);
    let counit = Matrix::from_ints(order, &[&[2, 0]]);
    let half = q(order, 1, 2);
    let z = CycScalar::zero(order);
    let comult = Matrix::from_rows(
        order,
        vec![
            vec![half.clone(), z.clone()],
            vec![z.clone(), half.clone()],
            vec![z.clone(), half.clone()],
            vec![half, z],
        ],
    )
    .expect("rectangular");
    FrobeniusAlgebraData::new(
        v.clone(),
        even_map(vv.clone(), v.clone(), mult),
        even_map(one.clone(), v.clone(), unit),
        even_map(v.clone(), one, counit),
        even_map(v, vv, comult),
    )
    .expect("Cl1")
}

/// `M_n(k)` with `ε = n·tr` and `Δ(e_ij) = (1/n) Σ_k e_ik ⊗ e_kj`.
pub fn matrix_algebra(n: usize) -> Result<FrobeniusAlgebraData> {
    if n == 0 {
        return Err(Error::InvalidAlgebra("matrix size must be positive".into()));
    }
    let order = 1;
    let d = n * n;
    let e = |i: usize, j: usize| i * n + j;
    let v = SuperSpace::new(d, 0);
    let mut mult = Matrix::zeros(order, d, d * d);
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                mult.set(e(i, l), e(i, j) * d + e(j, l), CycScalar::one(order));
            }
        }
    }
    let mut unit = Matrix::zeros(order, d, 1);
    let mut counit = Matrix::zeros(order, 1, d);
    for i in 0..n {
        unit.set(e(i, i), 0, CycScalar::one(order));
        counit.set(0, e(i, i), CycScalar::from_int(order, n as i64));
    }
    let mut comult = Matrix::zeros(order, d * d, d);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                comult.set(e(i, k) * d + e(k, j), e(i, j), q(order, 1, n as i64));
            }
        }
    }
    let vv = v.tensor(&v);
    let one = SuperSpace::unit();
    FrobeniusAlgebraData::new(
        v.clone(),
        even_map(vv.clone(), v.clone(), mult),
        even_map(one.clone(), v.clone(), unit),
        even_map(v.clone(), one, counit),
        even_map(v, vv, comult),
    )
}

pub const BUILTIN_NAMES: [&str; 4] = [
    "trivial",
    "group_algebra_Zn",
    "clifford1",
    "matrix_algebra_n",
];

/// Resolves `trivial`, `clifford1`, `group_algebra_Z<n>` and `matrix_algebra_<n>`.
pub fn builtin(name: &str) -> Result<FrobeniusAlgebraData> {
    let unknown = || {
        Error::Parse(format!(
            "unknown builtin `{name}`; expected trivial, clifford1, group_algebra_Z<n> or matrix_algebra_<n>"
        ))
    };
    match name {
        "trivial" => Ok(trivial_algebra()),
        "clifford1" => Ok(clifford1()),
        _ => {
            if let Some(n) = name.strip_prefix("group_algebra_Z") {
                group_algebra(n.parse().map_err(|_| unknown())?)
            } else if let Some(n) = name.strip_prefix("matrix_algebra_") {
                matrix_algebra(n.parse().map_err(|_| unknown())?)
            } else {
                Err(unknown())
            }
        }
    }
}

/// Smallest `r` at which the builtin has a graded center: the order of `γ`.
pub fn default_r(alg: &FrobeniusAlgebraData) -> u32 {
    nakayama_gamma(alg)
        .ok()
        .and_then(|g| g.order_up_to(64))
        .unwrap_or(1) as u32
}
