//! JSON input files for Frobenius and Λ_r-Frobenius algebras.
//!
//! Scalars are strings in the syntax of [`CycScalar::parse`] (`"1/2"`,
//! `"1 - z^2"`) or plain JSON integers. Matrices are lists of rows.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::constructors::FrobeniusAlgebraData;
use crate::error::{Error, Result};
use crate::lambda_frobenius::{LambdaFrobenius, LambdaFrobeniusData};
use crate::matrix::Matrix;
use crate::scalars::CycScalar;
use crate::superlinalg::{Parity, SuperMap, SuperSpace};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarRepr {
    Int(i64),
    Text(String),
}

impl ScalarRepr {
    fn to_scalar(&self, order: u32) -> Result<CycScalar> {
        match self {
            ScalarRepr::Int(n) => Ok(CycScalar::from_int(order, *n)),
            ScalarRepr::Text(s) => CycScalar::parse(order, s),
        }
    }

    fn from_scalar(c: &CycScalar) -> Self {
        match c.as_integer().and_then(|n| i64::try_from(n).ok()) {
            Some(n) => ScalarRepr::Int(n),
            None => ScalarRepr::Text(c.to_string()),
        }
    }
}

pub type MatrixRepr = Vec<Vec<ScalarRepr>>;

/// `mult[i][j]` lists the coordinates of `e_i · e_j`; `comult[k][i][j]` is
/// the coefficient of `e_i ⊗ e_j` in `Δ(e_k)`. Without `comult` the
/// comultiplication is derived from the pairing `ε ∘ μ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrobeniusAlgebraFile {
    #[serde(default = "one")]
    pub order: u32,
    pub parities: Vec<u8>,
    pub mult: Vec<Vec<Vec<ScalarRepr>>>,
    pub unit: Vec<ScalarRepr>,
    pub counit: Vec<ScalarRepr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comult: Option<Vec<Vec<Vec<ScalarRepr>>>>,
}

/// `spaces[a]` lists the parities of `C_a`; `mu[a][b]` and `delta[a][b]`
/// are the matrices of `μ_{a,b}` and `Δ_{a,b}` for `a, b ∈ {0,…,r−1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LambdaFrobeniusFile {
    pub r: u32,
    #[serde(default = "one")]
    pub order: u32,
    pub spaces: Vec<Vec<u8>>,
    pub mu: Vec<Vec<MatrixRepr>>,
    pub eta: MatrixRepr,
    pub delta: Vec<Vec<MatrixRepr>>,
    pub eps: MatrixRepr,
}

fn one() -> u32 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AlgebraFile {
    FrobeniusAlgebra(FrobeniusAlgebraFile),
    LambdaFrobenius(LambdaFrobeniusFile),
}

#[derive(Clone, Debug)]
pub enum LoadedAlgebra {
    Frobenius(FrobeniusAlgebraData),
    Lambda(LambdaFrobenius),
}

fn space_from(parities: &[u8]) -> Result<SuperSpace> {
    parities
        .iter()
        .map(|&p| match p {
            0 => Ok(Parity::Even),
            1 => Ok(Parity::Odd),
            _ => Err(Error::Parse(format!("parity must be 0 or 1, got {p}"))),
        })
        .collect::<Result<Vec<_>>>()
        .map(SuperSpace::from_parities)
}

fn parities_of(space: &SuperSpace) -> Vec<u8> {
    space.parities().iter().map(|p| p.bit() as u8).collect()
}

fn matrix_from(
    order: u32,
    rows: &MatrixRepr,
    nrows: usize,
    ncols: usize,
    what: &str,
) -> Result<Matrix> {
    if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::ShapeMismatch(format!(
            "{what} must be {nrows}×{ncols}"
        )));
    }
    let rows = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|s| s.to_scalar(order))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if nrows == 0 {
        return Ok(Matrix::zeros(order, 0, ncols));
    }
    Matrix::from_rows(order, rows)
}

fn matrix_repr(m: &Matrix) -> MatrixRepr {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(ScalarRepr::from_scalar).collect())
        .collect()
}

fn even_map(src: SuperSpace, tgt: SuperSpace, m: Matrix, what: &str) -> Result<SuperMap> {
    SuperMap::new(src, tgt, Parity::Even, m).map_err(|e| Error::Parity(format!("{what}: {e}")))
}

impl FrobeniusAlgebraFile {
    /// Builds the maps and checks shapes, without checking relations.
    pub fn unchecked(&self) -> Result<FrobeniusAlgebraData> {
        let (space, mult, unit, counit) = self.maps()?;
        let comult = self.comult_map(&space)?;
        FrobeniusAlgebraData::unchecked(space, mult, unit, counit, comult)
    }

    pub fn build(&self) -> Result<FrobeniusAlgebraData> {
        let (space, mult, unit, counit) = self.maps()?;
        if self.comult.is_none() {
            return FrobeniusAlgebraData::with_derived_comult(space, mult, unit, counit);
        }
        let comult = self.comult_map(&space)?;
        FrobeniusAlgebraData::new(space, mult, unit, counit, comult)
    }

    fn maps(&self) -> Result<(SuperSpace, SuperMap, SuperMap, SuperMap)> {
        let order = self.order;
        let space = space_from(&self.parities)?;
        let n = space.dim();
        if self.mult.len() != n || self.mult.iter().any(|row| row.len() != n) {
            return Err(Error::ShapeMismatch(format!(
                "mult must be {n}×{n} products"
            )));
        }
        let mut m = Matrix::zeros(order, n, n * n);
        for i in 0..n {
            for j in 0..n {
                let prod = &self.mult[i][j];
                if prod.len() != n {
                    return Err(Error::ShapeMismatch(format!(
                        "product e_{i}·e_{j} needs {n} coordinates"
                    )));
                }
                for (k, c) in prod.iter().enumerate() {
                    m.set(k, i * n + j, c.to_scalar(order)?);
                }
            }
        }
        let unit_rows: MatrixRepr = self.unit.iter().map(|c| vec![c.clone()]).collect();
        let counit_rows: MatrixRepr = vec![self.counit.clone()];
        let one = SuperSpace::unit();
        let aa = space.tensor(&space);
        let mult = even_map(aa, space.clone(), m, "mult")?;
        let unit = even_map(
            one.clone(),
            space.clone(),
            matrix_from(order, &unit_rows, n, 1, "unit")?,
            "unit",
        )?;
        let counit = even_map(
            space.clone(),
            one,
            matrix_from(order, &counit_rows, 1, n, "counit")?,
            "counit",
        )?;
        Ok((space, mult, unit, counit))
    }

    fn comult_map(&self, space: &SuperSpace) -> Result<SuperMap> {
        let order = self.order;
        let n = space.dim();
        let mut m = Matrix::zeros(order, n * n, n);
        if let Some(c) = &self.comult {
            if c.len() != n {
                return Err(Error::ShapeMismatch(format!("comult needs {n} entries")));
            }
            for (k, mat) in c.iter().enumerate() {
                let mk = matrix_from(order, mat, n, n, "comult entry")?;
                for i in 0..n {
                    for j in 0..n {
                        m.set(i * n + j, k, mk.get(i, j).clone());
                    }
                }
            }
        }
        even_map(space.clone(), space.tensor(space), m, "comult")
    }

    pub fn from_algebra(alg: &FrobeniusAlgebraData) -> Self {
        let n = alg.dim();
        let mm = alg.mult().matrix();
        let dm = alg.comult().matrix();
        FrobeniusAlgebraFile {
            order: alg.order(),
            parities: parities_of(alg.space()),
            mult: (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            (0..n)
                                .map(|k| ScalarRepr::from_scalar(mm.get(k, i * n + j)))
                                .collect()
                        })
                        .collect()
                })
                .collect(),
            unit: alg
                .unit()
                .matrix()
                .column(0)
                .iter()
                .map(ScalarRepr::from_scalar)
                .collect(),
            counit: alg
                .counit()
                .matrix()
                .row(0)
                .iter()
                .map(ScalarRepr::from_scalar)
                .collect(),
            comult: Some(
                (0..n)
                    .map(|k| {
                        (0..n)
                            .map(|i| {
                                (0..n)
                                    .map(|j| ScalarRepr::from_scalar(dm.get(i * n + j, k)))
                                    .collect()
                            })
                            .collect()
                    })
                    .collect(),
            ),
        }
    }
}

impl LambdaFrobeniusFile {
    pub fn build(&self) -> Result<LambdaFrobenius> {
        let r = self.r as usize;
        let order = self.order;
        if r == 0 || self.spaces.len() != r || self.mu.len() != r || self.delta.len() != r {
            return Err(Error::ShapeMismatch(format!(
                "expected {r} graded components"
            )));
        }
        let spaces: Vec<SuperSpace> = self
            .spaces
            .iter()
            .map(|p| space_from(p))
            .collect::<Result<_>>()?;
        let idx = |a: i64| a.rem_euclid(r as i64) as usize;
        let mut mu = Vec::with_capacity(r);
        let mut delta = Vec::with_capacity(r);
        for a in 0..r {
            if self.mu[a].len() != r || self.delta[a].len() != r {
                return Err(Error::ShapeMismatch(format!(
                    "expected {r} maps for a = {a}"
                )));
            }
            let mut mrow = Vec::with_capacity(r);
            let mut drow = Vec::with_capacity(r);
            for b in 0..r {
                let ab = spaces[a].tensor(&spaces[b]);
                let prod = &spaces[idx(a as i64 + b as i64 - 1)];
                let m = matrix_from(
                    order,
                    &self.mu[a][b],
                    prod.dim(),
                    ab.dim(),
                    &format!("mu[{a}][{b}]"),
                )?;
                mrow.push(even_map(
                    ab.clone(),
                    prod.clone(),
                    m,
                    &format!("mu[{a}][{b}]"),
                )?);
                let co = &spaces[idx(a as i64 + b as i64 + 1)];
                let d = matrix_from(
                    order,
                    &self.delta[a][b],
                    ab.dim(),
                    co.dim(),
                    &format!("delta[{a}][{b}]"),
                )?;
                drow.push(even_map(co.clone(), ab, d, &format!("delta[{a}][{b}]"))?);
            }
            mu.push(mrow);
            delta.push(drow);
        }
        let one = SuperSpace::unit();
        let c1 = spaces[idx(1)].clone();
        let cm1 = spaces[idx(-1)].clone();
        let eta = even_map(
            one.clone(),
            c1.clone(),
            matrix_from(order, &self.eta, c1.dim(), 1, "eta")?,
            "eta",
        )?;
        let eps = even_map(
            cm1.clone(),
            one,
            matrix_from(order, &self.eps, 1, cm1.dim(), "eps")?,
            "eps",
        )?;
        LambdaFrobenius::new(LambdaFrobeniusData {
            r: self.r,
            spaces,
            mu,
            eta,
            delta,
            eps,
        })
    }

    pub fn from_algebra(alg: &LambdaFrobenius) -> Self {
        let r = alg.r() as i64;
        LambdaFrobeniusFile {
            r: alg.r(),
            order: alg.order(),
            spaces: alg.spaces().iter().map(parities_of).collect(),
            mu: (0..r)
                .map(|a| (0..r).map(|b| matrix_repr(alg.mu(a, b).matrix())).collect())
                .collect(),
            eta: matrix_repr(alg.eta().matrix()),
            delta: (0..r)
                .map(|a| {
                    (0..r)
                        .map(|b| matrix_repr(alg.delta(a, b).matrix()))
                        .collect()
                })
                .collect(),
            eps: matrix_repr(alg.eps().matrix()),
        }
    }
}

pub fn parse_algebra_file(text: &str) -> Result<AlgebraFile> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("algebra file: {e}")))
}

pub fn read_algebra_file(path: &Path) -> Result<AlgebraFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse_algebra_file(&text)
}

/// Reads and verifies an algebra file.
pub fn load_algebra(path: &Path) -> Result<LoadedAlgebra> {
    match read_algebra_file(path)? {
        AlgebraFile::FrobeniusAlgebra(f) => f.build().map(LoadedAlgebra::Frobenius),
        AlgebraFile::LambdaFrobenius(f) => f.build().map(LoadedAlgebra::Lambda),
    }
}

/// Conventions that affect signs or orientations of reported values.
pub fn convention_flags() -> BTreeMap<&'static str, &'static str> {
    BTreeMap::from([
        ("scalar_syntax", "z = exp(2*pi*i/order)"),
        ("nakayama", "braided zig-zag (1 x p_a)(b x 1)(1 x c_a)"),
        ("gamma", "inverse of the zig-zag (1 x beta)(b x 1)(1 x c)"),
        ("twist_leg", "left"),
        ("handle_splitting", "left"),
        ("torus_representative", "divisor r stands for 0"),
        (
            "lg_sign",
            "LG torus values are reported up to a global sign",
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{builtin, graded_center};

    #[test]
    fn frobenius_round_trip() {
        for name in [
            "trivial",
            "clifford1",
            "group_algebra_Z3",
            "matrix_algebra_2",
        ] {
            let alg = builtin(name).unwrap();
            let file = AlgebraFile::FrobeniusAlgebra(FrobeniusAlgebraFile::from_algebra(&alg));
            let text = serde_json::to_string(&file).unwrap();
            match parse_algebra_file(&text).unwrap() {
                AlgebraFile::FrobeniusAlgebra(f) => assert_eq!(f.build().unwrap(), alg),
                _ => panic!("wrong kind"),
            }
        }
    }

    #[test]
    fn lambda_round_trip() {
        let lf = graded_center(&builtin("clifford1").unwrap(), 2).unwrap();
        let file = LambdaFrobeniusFile::from_algebra(&lf);
        let back = file.build().unwrap();
        assert_eq!(LambdaFrobeniusFile::from_algebra(&back), file);
        assert!(back.validate().is_valid());
    }

    #[test]
    fn derived_comult_and_rejection() {
        let text = r#"{"kind": "frobenius_algebra", "parities": [0, 0],
            "mult": [[[1, 0], [0, 1]], [[0, 1], [1, 0]]],
            "unit": [1, 0], "counit": [2, 0]}"#;
        let AlgebraFile::FrobeniusAlgebra(f) = parse_algebra_file(text).unwrap() else {
            panic!()
        };
        assert_eq!(f.build().unwrap(), builtin("group_algebra_Z2").unwrap());
        let bad = text.replace("[2, 0]", "[1, 0]");
        let AlgebraFile::FrobeniusAlgebra(f) = parse_algebra_file(&bad).unwrap() else {
            panic!()
        };
        assert!(matches!(f.build(), Err(Error::InvalidAlgebra(_))));
        assert!(parse_algebra_file(r#"{"kind": "frobenius_algebra"}"#).is_err());
    }
}
