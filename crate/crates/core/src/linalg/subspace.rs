use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::fields::{Elem, Field};

use super::matrix::Matrix;

/// A linear subspace of `F^n`, stored as the RREF of a basis.
///
/// Two subspaces are equal iff their representations are identical.
#[derive(Clone)]
pub struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis
    }
}

impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.basis.hash(state);
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: ambient dimension, then dimension, then row-major entries.
impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ambient_dim(), self.dim())
            .cmp(&(other.ambient_dim(), other.dim()))
            .then_with(|| self.basis.data().cmp(other.basis.data()))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace[{}<{}]({})", self.dim(), self.ambient_dim(), self)
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dim() == 0 {
            write!(f, "0^{}", self.ambient_dim())
        } else {
            write!(f, "{}", self.basis)
        }
    }
}

impl Subspace {
    /// Row span of `m`.
    pub fn from_matrix(m: &Matrix) -> Self {
        let ech = m.rref();
        Subspace {
            basis: ech.matrix,
            pivots: ech.pivots,
        }
    }

    pub fn span(field: &Field, n: usize, vectors: &[Vec<Elem>]) -> Result<Self> {
        Ok(Self::from_matrix(&Matrix::from_rows(field, n, vectors)?))
    }

    pub fn zero(field: &Field, n: usize) -> Self {
        Self::from_matrix(&Matrix::zeros(field, 0, n))
    }

    pub fn full(field: &Field, n: usize) -> Self {
        Self::from_matrix(&Matrix::identity(field, n))
    }

    /// Span of the given standard basis vectors.
    pub fn coordinate(field: &Field, n: usize, indices: &[usize]) -> Self {
        let rows: Vec<Vec<Elem>> = indices
            .iter()
            .map(|&i| {
                let mut v = vec![Elem::ZERO; n];
                v[i] = Elem::ONE;
                v
            })
            .collect();
        Self::span(field, n, &rows).expect("coordinate vectors have length n")
    }

    pub fn parse(field: &Field, n: usize, text: &str) -> Result<Self> {
        let t = text.trim();
        if t.is_empty() || t.starts_with("0^") {
            return Ok(Self::zero(field, n));
        }
        let m = Matrix::parse(field, t)?;
        if m.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "subspace with {} columns in ambient dimension {n}",
                m.cols()
            )));
        }
        Ok(Self::from_matrix(&m))
    }

    pub fn field(&self) -> &Field {
        self.basis.field()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(format!(
                "{} vs {}",
                self.field(),
                other.field()
            )));
        }
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::DimensionMismatch(format!(
                "ambient dimensions {} and {}",
                self.ambient_dim(),
                other.ambient_dim()
            )));
        }
        Ok(())
    }

    /// `v` minus its component along the basis, read off at the pivot columns.
    /// Zero iff `v` lies in the subspace.
    pub fn reduce(&self, v: &[Elem]) -> Vec<Elem> {
        let f = self.field();
        let mut out = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = out[p];
            if c.is_zero() {
                continue;
            }
            let row = self.basis.row(i);
            for (o, &b) in out.iter_mut().zip(row) {
                *o = f.sub(*o, f.mul(c, b));
            }
        }
        out
    }

    pub fn contains_vector(&self, v: &[Elem]) -> bool {
        v.len() == self.ambient_dim() && self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Coordinates of `v` with respect to the RREF basis, or `None` if `v ∉ self`.
    pub fn coords(&self, v: &[Elem]) -> Option<Vec<Elem>> {
        self.contains_vector(v)
            .then(|| self.pivots.iter().map(|&p| v[p]).collect())
    }

    /// Whether `self ⊆ other`.
    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim() == other.ambient_dim()
            && self.dim() <= other.dim()
            && (0..self.dim()).all(|i| other.contains_vector(self.basis.row(i)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        Ok(Self::from_matrix(&self.basis.vstack(&other.basis)?))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let both = self.annihilator().sum(&other.annihilator())?;
        Ok(both.annihilator())
    }

    /// `U^⊥` under the standard pairing, i.e. the kernel of the basis matrix.
    pub fn annihilator(&self) -> Subspace {
        let k = self.basis.kernel();
        Subspace {
            pivots: k.rref().pivots,
            basis: k,
        }
    }

    /// Image under the linear map `v ↦ M v` (column convention).
    pub fn image(&self, m: &Matrix) -> Result<Subspace> {
        if m.cols() != self.ambient_dim() || m.field() != self.field() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} map on ambient dimension {}",
                m.rows(),
                m.cols(),
                self.ambient_dim()
            )));
        }
        Ok(Self::from_matrix(&self.basis.mul(&m.transpose())?))
    }

    /// Preimage of the coordinate change `v ↦ v·m` (row convention).
    pub fn right_mul(&self, m: &Matrix) -> Result<Subspace> {
        Ok(Self::from_matrix(&self.basis.mul(m)?))
    }

    /// Every vector of the subspace, in coefficient order over the basis.
    pub fn vectors(&self) -> Vec<Vec<Elem>> {
        let f = self.field();
        let q = f.order() as usize;
        let d = self.dim();
        let n = self.ambient_dim();
        let total = q.pow(d as u32);
        let mut out = Vec::with_capacity(total);
        for idx in 0..total {
            let mut rest = idx;
            let mut v = vec![Elem::ZERO; n];
            for i in 0..d {
                let c = Elem((rest % q) as u32);
                rest /= q;
                if c.is_zero() {
                    continue;
                }
                for (o, &b) in v.iter_mut().zip(self.basis.row(i)) {
                    *o = f.add(*o, f.mul(c, b));
                }
            }
            out.push(v);
        }
        out
    }

    /// Project coordinates onto a contiguous block of columns.
    pub fn restrict_columns(&self, cols: std::ops::Range<usize>) -> Subspace {
        Self::from_matrix(&self.basis.submatrix(0..self.dim(), cols))
    }

    /// Embed into a larger ambient space, placing coordinates at `offset..`.
    pub fn embed_columns(&self, ambient: usize, offset: usize) -> Subspace {
        let f = self.field();
        let mut m = Matrix::zeros(f, self.dim(), ambient);
        for r in 0..self.dim() {
            for c in 0..self.ambient_dim() {
                m.set(r, offset + c, self.basis.get(r, c));
            }
        }
        Self::from_matrix(&m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::FiniteField;

    fn f2() -> Field {
        FiniteField::new(2, 1).unwrap()
    }

    fn v(f: &Field, xs: &[i64]) -> Vec<Elem> {
        xs.iter().map(|&x| f.from_int(x)).collect()
    }

    #[test]
    fn sum_and_intersection_examples() {
        let f = f2();
        let u = Subspace::coordinate(&f, 3, &[0]);
        let w = Subspace::coordinate(&f, 3, &[1]);
        assert_eq!(u.sum(&w).unwrap().dim(), 2);
        assert_eq!(u.intersect(&w).unwrap().dim(), 0);
        assert_eq!(u.sum(&u).unwrap(), u);
        assert_eq!(u.intersect(&u).unwrap(), u);

        let u = Subspace::span(&f, 3, &[v(&f, &[1, 1, 0]), v(&f, &[0, 0, 1])]).unwrap();
        let w = Subspace::span(&f, 3, &[v(&f, &[0, 1, 1])]).unwrap();
        // exhaust the 8 vectors of F_2^3
        let common = u
            .vectors()
            .into_iter()
            .filter(|x| w.contains_vector(x))
            .count();
        assert_eq!(common, 1);
        assert!(u.intersect(&w).unwrap().is_zero());
        assert!(u.sum(&w).unwrap().is_full());
    }

    #[test]
    fn ambient_mismatch() {
        let f = f2();
        let u = Subspace::full(&f, 2);
        let w = Subspace::full(&f, 3);
        assert!(matches!(u.sum(&w), Err(Error::DimensionMismatch(_))));
        assert!(matches!(u.intersect(&w), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn annihilator_examples() {
        let f = f2();
        assert!(Subspace::full(&f, 3).annihilator().is_zero());
        assert!(Subspace::zero(&f, 3).annihilator().is_full());
        let l = Subspace::span(&f, 2, &[v(&f, &[1, 1])]).unwrap();
        assert_eq!(l.annihilator(), l);
    }

    #[test]
    fn canonical_under_row_operations() {
        let f = FiniteField::new(3, 1).unwrap();
        let a = Subspace::span(&f, 3, &[v(&f, &[1, 2, 0]), v(&f, &[0, 1, 1])]).unwrap();
        let b = Subspace::span(&f, 3, &[v(&f, &[1, 0, 1]), v(&f, &[0, 2, 2])]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn coords_and_reduce() {
        let f = f2();
        let u = Subspace::span(&f, 3, &[v(&f, &[1, 1, 0]), v(&f, &[0, 0, 1])]).unwrap();
        assert_eq!(u.coords(&v(&f, &[1, 1, 1])), Some(v(&f, &[1, 1])));
        assert_eq!(u.coords(&v(&f, &[1, 0, 0])), None);
        assert_eq!(u.vectors().len(), 4);
    }

    #[test]
    fn parse_round_trip() {
        let f = FiniteField::new(2, 2).unwrap();
        let u = Subspace::parse(&f, 2, "1 0,1").unwrap();
        assert_eq!(Subspace::parse(&f, 2, &u.to_string()).unwrap(), u);
        let z = Subspace::zero(&f, 2);
        assert_eq!(Subspace::parse(&f, 2, &z.to_string()).unwrap(), z);
    }

    /// All row spaces of all 3x3 matrices over F_2.
    fn all_subspaces_f2_cubed() -> Vec<Subspace> {
        let f = f2();
        let mut set = std::collections::BTreeSet::new();
        for bits in 0u32..512 {
            let data = (0..9).map(|i| Elem((bits >> i) & 1)).collect();
            set.insert(Subspace::from_matrix(&Matrix::new(&f, 3, 3, data).unwrap()));
        }
        set.into_iter().collect()
    }

    #[test]
    fn annihilator_is_inclusion_reversing_involution() {
        let all = all_subspaces_f2_cubed();
        assert_eq!(all.len(), 16);
        for u in &all {
            let a = u.annihilator();
            assert_eq!(a.dim(), 3 - u.dim());
            assert_eq!(a.annihilator(), *u);
            for w in &all {
                assert_eq!(
                    u.is_subspace_of(w),
                    w.annihilator().is_subspace_of(&a),
                    "{u} vs {w}"
                );
            }
            // pairing oracle: every vector of U is orthogonal to every vector of U^⊥
            for x in u.vectors() {
                for y in a.vectors() {
                    let dot = x.iter().zip(&y).fold(0, |acc, (p, q)| acc ^ (p.0 & q.0));
                    assert_eq!(dot, 0);
                }
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn random(f: &Field, rows: usize, cols: usize, seed: &[u32]) -> Matrix {
            let q = f.order() as u32;
            let data = seed.iter().take(rows * cols).map(|&x| Elem(x % q)).collect();
            Matrix::new(f, rows, cols, data).unwrap()
        }

        proptest! {
            #[test]
            fn canonical_under_random_row_operations(
                seed in prop::collection::vec(0u32..9, 12),
                ops in prop::collection::vec((0usize..3, 0usize..3, 1u32..9), 0..12),
                k in 1u32..3,
            ) {
                let f = FiniteField::new(3, k).unwrap();
                let m = random(&f, 3, 4, &seed);
                let mut rows = m.row_vecs();
                for (i, j, c) in ops {
                    let c = Elem(c % f.order() as u32);
                    if i == j {
                        if !c.is_zero() {
                            rows[i] = rows[i].iter().map(|&x| f.mul(c, x)).collect();
                        }
                    } else {
                        let add: Vec<Elem> = rows[j].iter().map(|&x| f.mul(c, x)).collect();
                        rows[i] = rows[i].iter().zip(&add).map(|(&a, &b)| f.add(a, b)).collect();
                    }
                    rows.swap(0, 2);
                }
                let a = Subspace::from_matrix(&m);
                let b = Subspace::span(&f, 4, &rows).unwrap();
                prop_assert_eq!(a, b);
            }

            #[test]
            fn modular_law(
                s1 in prop::collection::vec(0u32..3, 12),
                s2 in prop::collection::vec(0u32..3, 12),
                r1 in 0usize..4, r2 in 0usize..4,
            ) {
                let f = FiniteField::new(3, 1).unwrap();
                let u = Subspace::from_matrix(&random(&f, r1, 4, &s1));
                let w = Subspace::from_matrix(&random(&f, r2, 4, &s2));
                let s = u.sum(&w).unwrap();
                let i = u.intersect(&w).unwrap();
                prop_assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
                prop_assert!(i.is_subspace_of(&u) && i.is_subspace_of(&w));
                prop_assert!(u.is_subspace_of(&s) && w.is_subspace_of(&s));
                // membership oracle for the intersection
                let common = u.vectors().into_iter().filter(|x| w.contains_vector(x)).count();
                prop_assert_eq!(common as u64, 3u64.pow(i.dim() as u32));
            }
        }
    }
}
