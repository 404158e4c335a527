//! Z₂-graded linear algebra with the Koszul sign rule.
//!
//! A [`SuperSpace`] carries one parity per basis vector. Spaces built with
//! [`SuperSpace::new`] list the even basis first; tensor products keep the
//! lexicographic order of basis pairs, which makes associators and unitors
//! identity matrices. [`SuperSpace::regrade_permutation`] recovers the
//! (even, odd) block layout when one is needed.

use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalars::CycScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(b: u32) -> Self {
        if b % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u32 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    /// `(-1)^{|self|·|other|}` as a sign bit.
    pub fn koszul(self, other: Parity) -> bool {
        self == Parity::Odd && other == Parity::Odd
    }

    pub fn flip(self) -> Self {
        self + Parity::Odd
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.bit() + rhs.bit())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SuperSpace {
    parities: Vec<Parity>,
}

impl SuperSpace {
    /// `(even|odd)` with the even basis listed first.
    pub fn new(even: usize, odd: usize) -> Self {
        let mut parities = vec![Parity::Even; even];
        parities.extend(std::iter::repeat_n(Parity::Odd, odd));
        SuperSpace { parities }
    }

    pub fn from_parities(parities: Vec<Parity>) -> Self {
        SuperSpace { parities }
    }

    /// The monoidal unit `(1|0)`.
    pub fn unit() -> Self {
        Self::new(1, 0)
    }

    pub fn dim(&self) -> usize {
        self.parities.len()
    }

    pub fn even_dim(&self) -> usize {
        self.parities.iter().filter(|p| **p == Parity::Even).count()
    }

    pub fn odd_dim(&self) -> usize {
        self.dim() - self.even_dim()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parities[i]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    /// Indices of basis vectors of parity `p`, in order.
    pub fn indices_of(&self, p: Parity) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.parities[i] == p).collect()
    }

    pub fn is_canonical(&self) -> bool {
        self.parities.windows(2).all(|w| w[0] <= w[1])
    }

    /// Permutation `σ` with `σ[k]` = old index of the `k`-th basis vector in
    /// the (even, odd) block layout.
    pub fn regrade_permutation(&self) -> Vec<usize> {
        let mut perm = self.indices_of(Parity::Even);
        perm.extend(self.indices_of(Parity::Odd));
        perm
    }

    pub fn tensor(&self, other: &SuperSpace) -> SuperSpace {
        let mut parities = Vec::with_capacity(self.dim() * other.dim());
        for &p in &self.parities {
            for &q in &other.parities {
                parities.push(p + q);
            }
        }
        SuperSpace { parities }
    }

    /// Parity shift `V[1]`.
    pub fn shift(&self) -> SuperSpace {
        SuperSpace {
            parities: self.parities.iter().map(|p| p.flip()).collect(),
        }
    }

    pub fn shifted(&self, n: i64) -> SuperSpace {
        if n.rem_euclid(2) == 0 {
            self.clone()
        } else {
            self.shift()
        }
    }
}

impl fmt::Debug for SuperSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})", self.even_dim(), self.odd_dim())
    }
}

impl fmt::Display for SuperSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})", self.even_dim(), self.odd_dim())
    }
}

/// Supertrace of the identity: `even_dim - odd_dim`.
pub fn quantum_dimension(order: u32, v: &SuperSpace) -> CycScalar {
    CycScalar::from_int(order, v.even_dim() as i64 - v.odd_dim() as i64)
}

/// A parity-homogeneous vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomVector {
    pub parity: Parity,
    pub coords: Vec<CycScalar>,
}

/// Parity-homogeneous linear map; `matrix` is `target.dim() × source.dim()`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SuperMap {
    source: SuperSpace,
    target: SuperSpace,
    parity: Parity,
    matrix: Matrix,
}

impl SuperMap {
    pub fn new(
        source: SuperSpace,
        target: SuperSpace,
        parity: Parity,
        matrix: Matrix,
    ) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::ShapeMismatch(format!(
                "matrix {}x{} for map {:?} -> {:?}",
                matrix.rows(),
                matrix.cols(),
                source,
                target
            )));
        }
        for i in 0..target.dim() {
            for j in 0..source.dim() {
                if target.parity(i) != source.parity(j) + parity && !matrix.get(i, j).is_zero() {
                    return Err(Error::Parity(format!(
                        "{parity} map has a nonzero entry at ({i},{j}) joining {} and {} basis vectors",
                        source.parity(j),
                        target.parity(i)
                    )));
                }
            }
        }
        Ok(SuperMap {
            source,
            target,
            parity,
            matrix,
        })
    }

    pub fn identity(order: u32, v: &SuperSpace) -> Self {
        SuperMap {
            source: v.clone(),
            target: v.clone(),
            parity: Parity::Even,
            matrix: Matrix::identity(order, v.dim()),
        }
    }

    pub fn zero(order: u32, source: &SuperSpace, target: &SuperSpace, parity: Parity) -> Self {
        SuperMap {
            source: source.clone(),
            target: target.clone(),
            parity,
            matrix: Matrix::zeros(order, target.dim(), source.dim()),
        }
    }

    /// The scalar `c` as an even endomorphism of the unit object.
    pub fn scalar(c: CycScalar) -> Self {
        let order = c.order();
        let matrix = Matrix::from_rows(order, vec![vec![c]]).expect("1x1");
        SuperMap {
            source: SuperSpace::unit(),
            target: SuperSpace::unit(),
            parity: Parity::Even,
            matrix,
        }
    }

    pub fn source(&self) -> &SuperSpace {
        &self.source
    }

    pub fn target(&self) -> &SuperSpace {
        &self.target
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn order(&self) -> u32 {
        self.matrix.order()
    }

    /// The 1×1 value of an endomorphism of the unit object.
    pub fn as_scalar(&self) -> Option<CycScalar> {
        (self.source.dim() == 1
            && self.target.dim() == 1
            && self.source == SuperSpace::unit()
            && self.target == SuperSpace::unit())
        .then(|| self.matrix.get(0, 0).clone())
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.matrix.is_identity()
    }

    pub fn scale(&self, c: &CycScalar) -> SuperMap {
        SuperMap {
            matrix: self.matrix.scale(c),
            ..self.clone()
        }
    }

    pub fn add(&self, other: &SuperMap) -> Result<SuperMap> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::ShapeMismatch(
                "sum of maps with different shapes".into(),
            ));
        }
        if self.parity != other.parity && !self.matrix.is_zero() && !other.matrix.is_zero() {
            return Err(Error::Parity("sum of maps of different parity".into()));
        }
        let parity = if self.matrix.is_zero() {
            other.parity
        } else {
            self.parity
        };
        Ok(SuperMap {
            source: self.source.clone(),
            target: self.target.clone(),
            parity,
            matrix: self.matrix.add(&other.matrix)?,
        })
    }

    pub fn sub(&self, other: &SuperMap) -> Result<SuperMap> {
        self.add(&other.scale(&-CycScalar::one(self.order())))
    }

    /// `g ∘ f` with `self = g`.
    pub fn compose(&self, f: &SuperMap) -> Result<SuperMap> {
        if f.target != self.source {
            return Err(Error::ShapeMismatch(format!(
                "cannot compose {:?}->{:?} after {:?}->{:?}",
                self.source, self.target, f.source, f.target
            )));
        }
        Ok(SuperMap {
            source: f.source.clone(),
            target: self.target.clone(),
            parity: self.parity + f.parity,
            matrix: self.matrix.mul(&f.matrix)?,
        })
    }

    pub fn pow(&self, k: u64) -> Result<SuperMap> {
        if self.source != self.target {
            return Err(Error::ShapeMismatch("power of a non-endomorphism".into()));
        }
        let parity = if k % 2 == 0 {
            Parity::Even
        } else {
            self.parity
        };
        Ok(SuperMap {
            matrix: self.matrix.pow(k)?,
            parity,
            ..self.clone()
        })
    }

    pub fn inverse(&self) -> Result<SuperMap> {
        Ok(SuperMap {
            source: self.target.clone(),
            target: self.source.clone(),
            parity: self.parity,
            matrix: self.matrix.inverse()?,
        })
    }

    /// Koszul tensor product: `(f⊗g)(v⊗w) = (-1)^{|g||v|} f(v)⊗g(w)`.
    pub fn tensor(&self, g: &SuperMap) -> SuperMap {
        let mut matrix = self.matrix.kron(&g.matrix);
        if g.parity == Parity::Odd {
            let minus = -CycScalar::one(self.order());
            for (j, p) in self.source.parities().iter().enumerate() {
                if *p == Parity::Odd {
                    for l in 0..g.source.dim() {
                        let col = j * g.source.dim() + l;
                        for i in 0..matrix.rows() {
                            let v = matrix.get(i, col);
                            if !v.is_zero() {
                                let nv = v * &minus;
                                matrix.set(i, col, nv);
                            }
                        }
                    }
                }
            }
        }
        SuperMap {
            source: self.source.tensor(&g.source),
            target: self.target.tensor(&g.target),
            parity: self.parity + g.parity,
            matrix,
        }
    }

    /// Supertrace `Σ (-1)^{|i|} f_ii` of an endomorphism.
    pub fn supertrace(&self) -> CycScalar {
        let mut t = CycScalar::zero(self.order());
        for i in 0..self.source.dim() {
            match self.source.parity(i) {
                Parity::Even => t += self.matrix.get(i, i),
                Parity::Odd => t += &-self.matrix.get(i, i),
            }
        }
        t
    }

    /// Restricts to the subspace spanned by the columns of `inclusion` and
    /// corestricts along `projection`: returns `projection ∘ self ∘ inclusion`.
    pub fn sandwich(&self, projection: &SuperMap, inclusion: &SuperMap) -> Result<SuperMap> {
        projection.compose(&self.compose(inclusion)?)
    }
}

impl fmt::Debug for SuperMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SuperMap {:?} -> {:?} ({}) {:?}",
            self.source, self.target, self.parity, self.matrix
        )
    }
}

/// Symmetric braiding `b_{V,W}(v⊗w) = (-1)^{|v||w|} w⊗v`.
pub fn braiding(order: u32, v: &SuperSpace, w: &SuperSpace) -> SuperMap {
    let (m, n) = (v.dim(), w.dim());
    let mut matrix = Matrix::zeros(order, m * n, m * n);
    for i in 0..m {
        for j in 0..n {
            let sign = if v.parity(i).koszul(w.parity(j)) {
                -1
            } else {
                1
            };
            matrix.set(j * m + i, i * n + j, CycScalar::from_int(order, sign));
        }
    }
    SuperMap {
        source: v.tensor(w),
        target: w.tensor(v),
        parity: Parity::Even,
        matrix,
    }
}

fn block_columns(f: &SuperMap, p: Parity) -> (Vec<usize>, Matrix) {
    let cols = f.source.indices_of(p);
    let rows: Vec<usize> = (0..f.target.dim()).collect();
    (cols.clone(), f.matrix.select(&rows, &cols))
}

/// Kernel basis, computed separately on the even and odd source blocks so
/// that every returned vector is homogeneous.
pub fn kernel_basis(f: &SuperMap) -> Vec<HomVector> {
    let order = f.order();
    let mut out = Vec::new();
    for p in [Parity::Even, Parity::Odd] {
        let (cols, block) = block_columns(f, p);
        if cols.is_empty() {
            continue;
        }
        for v in block.kernel() {
            let mut coords = vec![CycScalar::zero(order); f.source.dim()];
            for (k, &c) in cols.iter().enumerate() {
                coords[c] = v[k].clone();
            }
            out.push(HomVector { parity: p, coords });
        }
    }
    out
}

/// Image basis; vectors are homogeneous with even ones listed first.
pub fn image_basis(f: &SuperMap) -> Vec<HomVector> {
    let mut out = Vec::new();
    for p in [Parity::Even, Parity::Odd] {
        let src = p + f.parity;
        let (cols, block) = block_columns(f, src);
        if cols.is_empty() {
            continue;
        }
        for v in block.image() {
            out.push(HomVector {
                parity: p,
                coords: v,
            });
        }
    }
    out
}

/// Splitting `p = inclusion ∘ projection`, `projection ∘ inclusion = id`.
#[derive(Clone, Debug)]
pub struct SplitIdempotent {
    pub inclusion: SuperMap,
    pub projection: SuperMap,
    pub image: SuperSpace,
}

pub fn split_idempotent(p: &SuperMap) -> Result<SplitIdempotent> {
    let order = p.order();
    if p.parity() != Parity::Even && !p.matrix().is_zero() {
        return Err(Error::NotIdempotent("idempotent must be even".into()));
    }
    if p.source() != p.target() {
        return Err(Error::NotIdempotent(
            "idempotent must be an endomorphism".into(),
        ));
    }
    let sq = p.compose(p)?;
    let residual = sq.matrix().sub(p.matrix())?;
    if !residual.is_zero() {
        let nonzero = (0..residual.rows())
            .flat_map(|i| (0..residual.cols()).map(move |j| (i, j)))
            .filter(|&(i, j)| !residual.get(i, j).is_zero())
            .count();
        return Err(Error::NotIdempotent(format!(
            "p∘p - p has {nonzero} nonzero entries"
        )));
    }
    let basis = image_basis(p);
    let image = SuperSpace::from_parities(basis.iter().map(|v| v.parity).collect());
    let cols: Vec<Vec<CycScalar>> = basis.into_iter().map(|v| v.coords).collect();
    let incl_matrix = Matrix::from_columns(order, p.source().dim(), &cols);
    let inclusion = SuperMap::new(
        image.clone(),
        p.source().clone(),
        Parity::Even,
        incl_matrix.clone(),
    )?;
    // Left inverse of the inclusion from an invertible square block of rows.
    let pivots = incl_matrix.transpose().echelon().pivots;
    let all: Vec<usize> = (0..image.dim()).collect();
    let square = incl_matrix.select(&pivots, &all);
    let square_inv = square.inverse()?;
    let mut left_inv = Matrix::zeros(order, image.dim(), p.source().dim());
    for (k, &row) in pivots.iter().enumerate() {
        for i in 0..image.dim() {
            left_inv.set(i, row, square_inv.get(i, k).clone());
        }
    }
    let proj_matrix = left_inv.mul(p.matrix())?;
    let projection = SuperMap::new(p.source().clone(), image.clone(), Parity::Even, proj_matrix)?;
    Ok(SplitIdempotent {
        inclusion,
        projection,
        image,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(m: &[&[i64]]) -> Matrix {
        Matrix::from_ints(1, m)
    }

    fn map(src: SuperSpace, tgt: SuperSpace, p: Parity, m: &[&[i64]]) -> SuperMap {
        SuperMap::new(src, tgt, p, ints(m)).unwrap()
    }

    #[test]
    fn compose_examples() {
        let v = SuperSpace::new(1, 1);
        let f = map(v.clone(), v.clone(), Parity::Odd, &[&[0, 2], &[3, 0]]);
        let id = SuperMap::identity(1, &v);
        assert_eq!(id.compose(&f).unwrap(), f);
        let ff = f.compose(&f).unwrap();
        assert_eq!(ff.parity(), Parity::Even);
        assert_eq!(ff.matrix(), &ints(&[&[6, 0], &[0, 6]]));
        let a = map(
            SuperSpace::new(2, 0),
            SuperSpace::new(2, 0),
            Parity::Even,
            &[&[1, 2], &[3, 4]],
        );
        let b = map(
            SuperSpace::new(2, 0),
            SuperSpace::new(2, 0),
            Parity::Even,
            &[&[0, 1], &[1, 0]],
        );
        assert_eq!(a.compose(&b).unwrap().matrix(), &ints(&[&[2, 1], &[4, 3]]));
        assert!(a.compose(&f).is_err());
    }

    #[test]
    fn parity_blocks_are_enforced() {
        let v = SuperSpace::new(1, 1);
        assert!(SuperMap::new(
            v.clone(),
            v.clone(),
            Parity::Even,
            ints(&[&[1, 1], &[0, 1]])
        )
        .is_err());
        assert!(SuperMap::new(v.clone(), v, Parity::Odd, ints(&[&[1, 0], &[0, 0]])).is_err());
    }

    #[test]
    fn tensor_of_odd_maps_on_one_one() {
        // f = g = odd swap on (1|1). Enumerate basis v_i ⊗ w_j by hand:
        // (f⊗g)(v⊗w) = (-1)^{|v|} f(v)⊗g(w).
        let v = SuperSpace::new(1, 1);
        let f = map(v.clone(), v.clone(), Parity::Odd, &[&[0, 1], &[1, 0]]);
        let t = f.tensor(&f);
        let expected = ints(&[&[0, 0, 0, -1], &[0, 0, -1, 0], &[0, 1, 0, 0], &[1, 0, 0, 0]]);
        assert_eq!(t.matrix(), &expected);
        assert_eq!(t.parity(), Parity::Even);
        let id = SuperMap::identity(1, &v);
        assert!(id.tensor(&id).is_identity());
    }

    #[test]
    fn braiding_examples() {
        let even = SuperSpace::new(1, 0);
        let odd = SuperSpace::new(0, 1);
        assert!(braiding(1, &even, &even).is_identity());
        assert_eq!(braiding(1, &odd, &odd).matrix(), &ints(&[&[-1]]));
        let v = SuperSpace::new(1, 1);
        let w = SuperSpace::new(2, 1);
        let bb = braiding(1, &w, &v).compose(&braiding(1, &v, &w)).unwrap();
        assert!(bb.is_identity());
    }

    #[test]
    fn quantum_dimensions() {
        assert_eq!(
            quantum_dimension(1, &SuperSpace::new(1, 0)),
            CycScalar::from_int(1, 1)
        );
        assert_eq!(
            quantum_dimension(1, &SuperSpace::new(0, 1)),
            CycScalar::from_int(1, -1)
        );
        assert_eq!(
            quantum_dimension(1, &SuperSpace::new(3, 1)),
            CycScalar::from_int(1, 2)
        );
    }

    #[test]
    fn kernel_and_image() {
        let v = SuperSpace::new(2, 1);
        let zero = SuperMap::zero(1, &v, &v, Parity::Even);
        assert_eq!(kernel_basis(&zero).len(), 3);
        assert_eq!(image_basis(&zero).len(), 0);
        let id = SuperMap::identity(1, &v);
        assert_eq!(kernel_basis(&id).len(), 0);
        assert_eq!(image_basis(&id).len(), 3);
        let w = SuperSpace::new(2, 0);
        let rank1 = map(w.clone(), w, Parity::Even, &[&[1, 2], &[2, 4]]);
        assert_eq!(kernel_basis(&rank1).len(), 1);
    }

    #[test]
    fn split_idempotent_examples() {
        let v = SuperSpace::new(2, 1);
        let s = split_idempotent(&SuperMap::identity(1, &v)).unwrap();
        assert_eq!(s.image, v);
        let s = split_idempotent(&SuperMap::zero(1, &v, &v, Parity::Even)).unwrap();
        assert_eq!(s.image, SuperSpace::new(0, 0));
        let w = SuperSpace::new(2, 0);
        let p = map(w.clone(), w.clone(), Parity::Even, &[&[1, 0], &[0, 0]]);
        let s = split_idempotent(&p).unwrap();
        assert_eq!(s.image, SuperSpace::new(1, 0));
        let bad = map(w.clone(), w, Parity::Even, &[&[2, 0], &[0, 0]]);
        assert!(matches!(
            split_idempotent(&bad),
            Err(Error::NotIdempotent(_))
        ));
    }

    #[test]
    fn regrade_permutation_orders_blocks() {
        let v = SuperSpace::new(1, 1);
        let vv = v.tensor(&v);
        assert_eq!(
            vv.parities(),
            &[Parity::Even, Parity::Odd, Parity::Odd, Parity::Even]
        );
        assert_eq!(vv.regrade_permutation(), vec![0, 3, 1, 2]);
        assert!(!vv.is_canonical());
    }

    // Random homogeneous maps between small spaces, small integer entries.
    fn arb_map(src: (usize, usize), tgt: (usize, usize)) -> impl Strategy<Value = SuperMap> {
        let s = SuperSpace::new(src.0, src.1);
        let t = SuperSpace::new(tgt.0, tgt.1);
        let n = s.dim() * t.dim();
        (any::<bool>(), proptest::collection::vec(-3i64..=3, n)).prop_map(move |(odd, vals)| {
            let parity = if odd { Parity::Odd } else { Parity::Even };
            let mut m = Matrix::zeros(1, t.dim(), s.dim());
            for i in 0..t.dim() {
                for j in 0..s.dim() {
                    if t.parity(i) == s.parity(j) + parity {
                        m.set(i, j, CycScalar::from_int(1, vals[i * s.dim() + j]));
                    }
                }
            }
            SuperMap::new(s.clone(), t.clone(), parity, m).unwrap()
        })
    }

    proptest! {
        #[test]
        fn supertrace_is_graded_cyclic(f in arb_map((2, 1), (1, 2)), g in arb_map((1, 2), (2, 1))) {
            let fg = f.compose(&g).unwrap().supertrace();
            let gf = g.compose(&f).unwrap().supertrace();
            let sign = if f.parity().koszul(g.parity()) { -1 } else { 1 };
            prop_assert_eq!(fg, gf.scale(&crate::scalars::Rational::from_integer(sign.into())));
        }

        #[test]
        fn tensor_is_functorial(
            f1 in arb_map((1, 1), (2, 1)), f2 in arb_map((2, 1), (1, 1)),
            g1 in arb_map((1, 1), (1, 1)), g2 in arb_map((1, 1), (1, 2)),
        ) {
            // (f2⊗g2)∘(f1⊗g1) = (-1)^{|g2||f1|} (f2∘f1)⊗(g2∘g1)
            let lhs = f2.tensor(&g2).compose(&f1.tensor(&g1)).unwrap();
            let mut rhs = f2.compose(&f1).unwrap().tensor(&g2.compose(&g1).unwrap());
            if g2.parity().koszul(f1.parity()) {
                rhs = rhs.scale(&CycScalar::from_int(1, -1));
            }
            prop_assert_eq!(lhs.matrix(), rhs.matrix());
        }

        #[test]
        fn braiding_is_natural(f in arb_map((1, 1), (2, 1)), g in arb_map((2, 0), (1, 1))) {
            // b ∘ (f⊗g) = (g⊗f) ∘ b up to the Koszul sign (-1)^{|f||g|}.
            let lhs = braiding(1, f.target(), g.target()).compose(&f.tensor(&g)).unwrap();
            let mut rhs = g.tensor(&f).compose(&braiding(1, f.source(), g.source())).unwrap();
            if f.parity().koszul(g.parity()) {
                rhs = rhs.scale(&CycScalar::from_int(1, -1));
            }
            prop_assert_eq!(lhs.matrix(), rhs.matrix());
        }

        #[test]
        fn braiding_is_symmetric(a in 0usize..3, b in 0usize..3, c in 0usize..3, d in 0usize..3) {
            let v = SuperSpace::new(a, b);
            let w = SuperSpace::new(c, d);
            prop_assert!(braiding(1, &w, &v).compose(&braiding(1, &v, &w)).unwrap().is_identity());
        }

        #[test]
        fn split_idempotent_roundtrip(vals in proptest::collection::vec(-2i64..=2, 9)) {
            // Coordinate projector conjugated by an invertible even matrix.
            let v = SuperSpace::new(2, 1);
            let mut q = Matrix::identity(1, 3);
            q.set(0, 1, CycScalar::from_int(1, vals[0]));
            q.set(1, 0, CycScalar::from_int(1, vals[1]));
            if q.rank() < 3 { return Ok(()); }
            let keep = vals[2].rem_euclid(2) == 0;
            let mut d = Matrix::zeros(1, 3, 3);
            d.set(0, 0, CycScalar::one(1));
            if keep { d.set(2, 2, CycScalar::one(1)); }
            let p = q.mul(&d).unwrap().mul(&q.inverse().unwrap()).unwrap();
            let p = SuperMap::new(v.clone(), v, Parity::Even, p).unwrap();
            let s = split_idempotent(&p).unwrap();
            prop_assert!(s.projection.compose(&s.inclusion).unwrap().is_identity());
            prop_assert_eq!(s.inclusion.compose(&s.projection).unwrap(), p);
        }
    }
}
