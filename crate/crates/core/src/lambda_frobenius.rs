//! Closed Λ_r-Frobenius algebras in super vector spaces.
//!
//! The data is a family of circle spaces `C_a`, `a ∈ Z_r`, with
//! `μ_{a,b}: C_a⊗C_b → C_{a+b-1}`, `η: 𝟙 → C_1`,
//! `Δ_{a,b}: C_{a+b+1} → C_a⊗C_b` and `ε: C_{-1} → 𝟙`.
//! All indices are taken modulo `r` and stored as canonical residues.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalars::CycScalar;
use crate::superlinalg::{braiding, Parity, SuperMap, SuperSpace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaFrobenius {
    r: u32,
    order: u32,
    spaces: Vec<SuperSpace>,
    mu: Vec<SuperMap>,
    eta: SuperMap,
    delta: Vec<SuperMap>,
    eps: SuperMap,
    nakayama: Vec<SuperMap>,
}

/// Builder input: structure maps indexed by canonical residues, `mu[a][b]`
/// and `delta[a][b]`.
pub struct LambdaFrobeniusData {
    pub r: u32,
    pub spaces: Vec<SuperSpace>,
    pub mu: Vec<Vec<SuperMap>>,
    pub eta: SuperMap,
    pub delta: Vec<Vec<SuperMap>>,
    pub eps: SuperMap,
}

impl LambdaFrobenius {
    pub fn new(data: LambdaFrobeniusData) -> Result<Self> {
        let LambdaFrobeniusData {
            r,
            spaces,
            mu,
            eta,
            delta,
            eps,
        } = data;
        if r == 0 {
            return Err(Error::InvalidAlgebra("r must be positive".into()));
        }
        let ru = r as usize;
        if spaces.len() != ru || mu.len() != ru || delta.len() != ru {
            return Err(Error::InvalidAlgebra(format!(
                "expected {r} circle spaces and {r}x{r} structure maps"
            )));
        }
        let order = eta.order();
        let md = |a: usize| (a as i64).rem_euclid(r as i64) as usize;
        let check = |what: &str, m: &SuperMap, src: SuperSpace, tgt: SuperSpace| -> Result<()> {
            if m.parity() != Parity::Even && !m.matrix().is_zero() {
                return Err(Error::InvalidAlgebra(format!("{what} is not even")));
            }
            if m.source() != &src || m.target() != &tgt {
                return Err(Error::InvalidAlgebra(format!(
                    "{what} has shape {:?} -> {:?}, expected {:?} -> {:?}",
                    m.source(),
                    m.target(),
                    src,
                    tgt
                )));
            }
            if m.order() != order {
                return Err(Error::OrderMismatch(m.order(), order));
            }
            Ok(())
        };
        let mut mu_flat = Vec::with_capacity(ru * ru);
        let mut delta_flat = Vec::with_capacity(ru * ru);
        for a in 0..ru {
            if mu[a].len() != ru || delta[a].len() != ru {
                return Err(Error::InvalidAlgebra("ragged structure map table".into()));
            }
            for b in 0..ru {
                let c = md(a + b + ru - 1);
                check(
                    &format!("mu[{a},{b}]"),
                    &mu[a][b],
                    spaces[a].tensor(&spaces[b]),
                    spaces[c].clone(),
                )?;
                let c = md(a + b + 1);
                check(
                    &format!("delta[{a},{b}]"),
                    &delta[a][b],
                    spaces[c].clone(),
                    spaces[a].tensor(&spaces[b]),
                )?;
                mu_flat.push(mu[a][b].clone());
                delta_flat.push(delta[a][b].clone());
            }
        }
        check("eta", &eta, SuperSpace::unit(), spaces[md(1)].clone())?;
        check("eps", &eps, spaces[md(ru - 1)].clone(), SuperSpace::unit())?;
        let mut alg = LambdaFrobenius {
            r,
            order,
            spaces,
            mu: mu_flat,
            eta,
            delta: delta_flat,
            eps,
            nakayama: Vec::new(),
        };
        alg.nakayama = (0..r as i64)
            .map(|a| alg.compute_nakayama(a))
            .collect::<Result<_>>()?;
        Ok(alg)
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// Cyclotomic order of the scalar field.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn idx(&self, a: i64) -> usize {
        a.rem_euclid(self.r as i64) as usize
    }

    pub fn space(&self, a: i64) -> &SuperSpace {
        &self.spaces[self.idx(a)]
    }

    pub fn spaces(&self) -> &[SuperSpace] {
        &self.spaces
    }

    pub fn mu(&self, a: i64, b: i64) -> &SuperMap {
        &self.mu[self.idx(a) * self.r as usize + self.idx(b)]
    }

    pub fn delta(&self, a: i64, b: i64) -> &SuperMap {
        &self.delta[self.idx(a) * self.r as usize + self.idx(b)]
    }

    pub fn eta(&self) -> &SuperMap {
        &self.eta
    }

    pub fn eps(&self) -> &SuperMap {
        &self.eps
    }

    fn id(&self, a: i64) -> SuperMap {
        SuperMap::identity(self.order, self.space(a))
    }

    /// `p_a = ε ∘ μ_{a,-a}: C_a ⊗ C_{-a} → 𝟙`.
    pub fn pairing(&self, a: i64) -> SuperMap {
        self.eps.compose(self.mu(a, -a)).expect("pairing shapes")
    }

    /// `c_a = Δ_{a,-a} ∘ η: 𝟙 → C_a ⊗ C_{-a}`.
    pub fn copairing(&self, a: i64) -> SuperMap {
        self.delta(a, -a)
            .compose(&self.eta)
            .expect("copairing shapes")
    }

    /// `N_a = (1 ⊗ p_a) ∘ (b_{C_a,C_a} ⊗ 1) ∘ (1 ⊗ c_a)`: the input strand
    /// crosses the left leg of the copairing and is capped by the pairing.
    fn compute_nakayama(&self, a: i64) -> Result<SuperMap> {
        let ca = self.space(a);
        let step1 = self.id(a).tensor(&self.copairing(a));
        let step2 = braiding(self.order, ca, ca).tensor(&self.id(-a));
        let step3 = self.id(a).tensor(&self.pairing(a));
        step3.compose(&step2.compose(&step1)?)
    }

    pub fn nakayama(&self, a: i64) -> &SuperMap {
        &self.nakayama[self.idx(a)]
    }

    /// `N_a^k` with the exponent read modulo `r`.
    pub fn nakayama_pow(&self, a: i64, k: i64) -> SuperMap {
        let e = k.rem_euclid(self.r as i64) as u64;
        self.nakayama(a).pow(e).expect("endomorphism")
    }

    /// `p_a ∘ (f ⊗ 1) ∘ c_a` for an endomorphism `f` of `C_a`.
    pub fn loop_trace(&self, a: i64, f: &SuperMap) -> CycScalar {
        let m = self
            .pairing(a)
            .compose(&f.tensor(&self.id(-a)))
            .and_then(|x| x.compose(&self.copairing(a)))
            .expect("loop shapes");
        m.as_scalar().expect("scalar")
    }

    pub fn validate(&self) -> ValidationReport {
        let r = self.r as i64;
        let mut checks = Vec::new();
        let mut push = |family, relation: &str, indices: Vec<i64>, lhs: SuperMap, rhs: SuperMap| {
            let passed = lhs.matrix() == rhs.matrix();
            checks.push(RelationCheck {
                family,
                relation: relation.to_string(),
                indices: indices.iter().map(|&i| i.rem_euclid(r) as u32).collect(),
                passed,
                lhs: lhs.matrix().clone(),
                rhs: rhs.matrix().clone(),
            });
        };
        let c = |x: Result<SuperMap>| x.expect("validated shapes");

        for a in 0..r {
            for b in 0..r {
                for d in 0..r {
                    let lhs = c(self
                        .mu(a + b - 1, d)
                        .compose(&self.mu(a, b).tensor(&self.id(d))));
                    let rhs = c(self
                        .mu(a, b + d - 1)
                        .compose(&self.id(a).tensor(self.mu(b, d))));
                    push(
                        RelationFamily::Associativity,
                        "assoc",
                        vec![a, b, d],
                        lhs,
                        rhs,
                    );
                    let lhs = c(self
                        .delta(a, b)
                        .tensor(&self.id(d))
                        .compose(self.delta(a + b + 1, d)));
                    let rhs = c(self
                        .id(a)
                        .tensor(self.delta(b, d))
                        .compose(self.delta(a, b + d + 1)));
                    push(
                        RelationFamily::Associativity,
                        "coassoc",
                        vec![a, b, d],
                        lhs,
                        rhs,
                    );
                }
            }
        }

        for a in 0..r {
            let id = self.id(a);
            push(
                RelationFamily::Unitality,
                "unit-left",
                vec![a],
                c(self.mu(1, a).compose(&self.eta.tensor(&id))),
                id.clone(),
            );
            push(
                RelationFamily::Unitality,
                "unit-right",
                vec![a],
                c(self.mu(a, 1).compose(&id.tensor(&self.eta))),
                id.clone(),
            );
            push(
                RelationFamily::Unitality,
                "counit-left",
                vec![a],
                c(self.eps.tensor(&id).compose(self.delta(-1, a))),
                id.clone(),
            );
            push(
                RelationFamily::Unitality,
                "counit-right",
                vec![a],
                c(id.tensor(&self.eps).compose(self.delta(a, -1))),
                id,
            );
        }

        // Δ_{s,t} μ_{a,b} = (μ_{a,u} ⊗ 1)(1 ⊗ Δ_{u,t}) = (1 ⊗ μ_{v,b})(Δ_{s,v} ⊗ 1)
        // with s + t = a + b - 2, u = b - t - 1, v = a - s - 1.
        for a in 0..r {
            for b in 0..r {
                for s in 0..r {
                    let t = a + b - 2 - s;
                    let (u, v) = (b - t - 1, a - s - 1);
                    let mid = c(self.delta(s, t).compose(self.mu(a, b)));
                    let left = c(self
                        .mu(a, u)
                        .tensor(&self.id(t))
                        .compose(&self.id(a).tensor(self.delta(u, t))));
                    let right = c(self
                        .id(s)
                        .tensor(self.mu(v, b))
                        .compose(&self.delta(s, v).tensor(&self.id(b))));
                    push(
                        RelationFamily::Frobenius,
                        "frobenius-left",
                        vec![a, b, s],
                        left,
                        mid.clone(),
                    );
                    push(
                        RelationFamily::Frobenius,
                        "frobenius-right",
                        vec![a, b, s],
                        mid,
                        right,
                    );
                }
            }
        }

        for a in 0..r {
            for b in 0..r {
                let left = c(self
                    .mu(b, a)
                    .compose(&self.nakayama_pow(b, 1 - a).tensor(&self.id(a))));
                let middle =
                    c(self
                        .mu(a, b)
                        .compose(&braiding(self.order, self.space(b), self.space(a))));
                let right = c(self
                    .mu(b, a)
                    .compose(&self.id(b).tensor(&self.nakayama_pow(a, b - 1))));
                push(
                    RelationFamily::Commutativity,
                    "commutativity-left",
                    vec![a, b],
                    left,
                    middle.clone(),
                );
                push(
                    RelationFamily::Commutativity,
                    "commutativity-right",
                    vec![a, b],
                    middle,
                    right,
                );
            }
        }

        for a in 0..r {
            push(
                RelationFamily::Twist,
                "twist-power",
                vec![a],
                self.nakayama_pow(a, a),
                self.id(a),
            );
            for b in 0..r {
                let lhs = self.loop_trace(a, &self.nakayama_pow(a, b));
                let rhs = self.loop_trace(a + b - 1, &self.nakayama_pow(a + b - 1, b));
                push(
                    RelationFamily::Twist,
                    "twist-pairing",
                    vec![a, b],
                    SuperMap::scalar(lhs),
                    SuperMap::scalar(rhs),
                );
            }
        }

        for a in 0..r {
            let lhs = self.nakayama(a).pow(self.r as u64).expect("endomorphism");
            push(
                RelationFamily::DeckTransformation,
                "deck",
                vec![a],
                lhs,
                self.id(a),
            );
        }

        checks.sort_by(|x, y| {
            (x.family, &x.relation, &x.indices).cmp(&(y.family, &y.relation, &y.indices))
        });
        ValidationReport { checks }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationFamily {
    Associativity,
    Unitality,
    Frobenius,
    Commutativity,
    Twist,
    DeckTransformation,
}

impl RelationFamily {
    pub const ALL: [RelationFamily; 6] = [
        RelationFamily::Associativity,
        RelationFamily::Unitality,
        RelationFamily::Frobenius,
        RelationFamily::Commutativity,
        RelationFamily::Twist,
        RelationFamily::DeckTransformation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RelationFamily::Associativity => "(co)associativity",
            RelationFamily::Unitality => "(co)unitality",
            RelationFamily::Frobenius => "frobenius",
            RelationFamily::Commutativity => "commutativity",
            RelationFamily::Twist => "twist",
            RelationFamily::DeckTransformation => "deck-transformation",
        }
    }
}

impl fmt::Display for RelationFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub family: RelationFamily,
    pub relation: String,
    pub indices: Vec<u32>,
    pub passed: bool,
    pub lhs: Matrix,
    pub rhs: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<RelationCheck>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn family_passed(&self, family: RelationFamily) -> bool {
        self.checks
            .iter()
            .filter(|c| c.family == family)
            .all(|c| c.passed)
    }

    /// `(family, checks run, checks failed)` per family.
    pub fn summary(&self) -> Vec<(RelationFamily, usize, usize)> {
        RelationFamily::ALL
            .iter()
            .map(|&f| {
                let total = self.checks.iter().filter(|c| c.family == f).count();
                let failed = self
                    .checks
                    .iter()
                    .filter(|c| c.family == f && !c.passed)
                    .count();
                (f, total, failed)
            })
            .collect()
    }
}

/// The algebra with every `C_a = 𝟙` and all structure maps equal to `1`.
pub fn trivial(r: u32, order: u32) -> LambdaFrobenius {
    let one = SuperMap::identity(order, &SuperSpace::unit());
    let ru = r as usize;
    LambdaFrobenius::new(LambdaFrobeniusData {
        r,
        spaces: vec![SuperSpace::unit(); ru],
        mu: vec![vec![one.clone(); ru]; ru],
        eta: one.clone(),
        delta: vec![vec![one.clone(); ru]; ru],
        eps: one,
    })
    .expect("trivial algebra")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_algebra_passes_everything() {
        for r in 1..=4 {
            let alg = trivial(r, 1);
            let report = alg.validate();
            assert!(report.is_valid());
            for a in 0..r as i64 {
                assert!(alg.nakayama(a).is_identity());
                assert_eq!(alg.pairing(a).parity(), Parity::Even);
                assert_eq!(alg.pairing(a).as_scalar(), Some(CycScalar::one(1)));
            }
        }
    }

    #[test]
    fn report_covers_every_index_tuple() {
        let r = 3usize;
        let report = trivial(r as u32, 1).validate();
        let count = |rel: &str| report.checks.iter().filter(|c| c.relation == rel).count();
        assert_eq!(count("assoc"), r * r * r);
        assert_eq!(count("coassoc"), r * r * r);
        assert_eq!(count("frobenius-left"), r * r * r);
        assert_eq!(count("commutativity-right"), r * r);
        assert_eq!(count("twist-pairing"), r * r);
        assert_eq!(count("deck"), r);
        assert_eq!(count("unit-left"), r);
    }

    #[test]
    fn corrupted_multiplication_is_reported() {
        let alg = trivial(2, 1);
        let one = SuperMap::identity(1, &SuperSpace::unit());
        let mut mu = vec![vec![one.clone(); 2]; 2];
        mu[0][0] = one.scale(&CycScalar::from_int(1, -1));
        let bad = LambdaFrobenius::new(LambdaFrobeniusData {
            r: 2,
            spaces: alg.spaces().to_vec(),
            mu,
            eta: one.clone(),
            delta: vec![vec![one.clone(); 2]; 2],
            eps: one,
        })
        .unwrap();
        let report = bad.validate();
        assert!(!report.is_valid());
        assert!(!report.family_passed(RelationFamily::Frobenius));
    }

    #[test]
    fn shape_errors_are_rejected() {
        let one = SuperMap::identity(1, &SuperSpace::unit());
        let res = LambdaFrobenius::new(LambdaFrobeniusData {
            r: 2,
            spaces: vec![SuperSpace::unit(), SuperSpace::new(2, 0)],
            mu: vec![vec![one.clone(); 2]; 2],
            eta: one.clone(),
            delta: vec![vec![one.clone(); 2]; 2],
            eps: one,
        });
        assert!(matches!(res, Err(Error::InvalidAlgebra(_))));
    }
}
