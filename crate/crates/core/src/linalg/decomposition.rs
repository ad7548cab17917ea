use crate::error::{Error, Result};
use crate::fields::{Elem, Field};

use super::{Matrix, Subspace};

/// `V = V₁ ⊕ V₂` with an ordered basis `b`: rows `0..n₁` span `V₁`, the rest `V₂`.
///
/// Coordinates are row vectors: `v = x·b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    basis: Matrix,
    inverse: Matrix,
    n1: usize,
    v1: Subspace,
    v2: Subspace,
}

impl Decomposition {
    pub fn new(basis: Matrix, n1: usize) -> Result<Self> {
        let n = basis.rows();
        if !basis.is_square() {
            return Err(Error::DimensionMismatch("decomposition basis must be square".into()));
        }
        if n1 == 0 || n1 >= n {
            return Err(Error::OutOfRange(format!(
                "need 1 <= n1 < n, got n1 = {n1}, n = {n}"
            )));
        }
        let inverse = basis.inverse()?;
        let v1 = Subspace::from_matrix(&basis.submatrix(0..n1, 0..n));
        let v2 = Subspace::from_matrix(&basis.submatrix(n1..n, 0..n));
        Ok(Decomposition {
            basis,
            inverse,
            n1,
            v1,
            v2,
        })
    }

    /// `span(e₁..e_{n₁}) ⊕ span(e_{n₁+1}..e_n)`.
    pub fn standard(field: &Field, n: usize, n1: usize) -> Result<Self> {
        Self::new(Matrix::identity(field, n), n1)
    }

    /// Stack the RREF bases of two complementary subspaces.
    pub fn from_subspaces(v1: &Subspace, v2: &Subspace) -> Result<Self> {
        let n = v1.ambient_dim();
        if v1.dim() + v2.dim() != n || !v1.intersect(v2)?.is_zero() {
            return Err(Error::DimensionMismatch(
                "subspaces are not complementary".into(),
            ));
        }
        Self::new(v1.basis().vstack(v2.basis())?, v1.dim())
    }

    pub fn field(&self) -> &Field {
        self.basis.field()
    }

    pub fn n(&self) -> usize {
        self.basis.rows()
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n() - self.n1
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn v1(&self) -> &Subspace {
        &self.v1
    }

    pub fn v2(&self) -> &Subspace {
        &self.v2
    }

    pub fn to_coords(&self, v: &[Elem]) -> Result<Vec<Elem>> {
        self.inverse.vec_mul(v)
    }

    pub fn from_coords(&self, x: &[Elem]) -> Result<Vec<Elem>> {
        self.basis.vec_mul(x)
    }

    /// Re-express a subspace in `b`-coordinates.
    pub fn subspace_to_coords(&self, u: &Subspace) -> Result<Subspace> {
        self.check(u)?;
        u.right_mul(&self.inverse)
    }

    pub fn subspace_from_coords(&self, u: &Subspace) -> Result<Subspace> {
        self.check(u)?;
        u.right_mul(&self.basis)
    }

    /// Matrix of `v ↦ M v` in `b`-coordinates, `P⁻¹ M P` with `P = bᵀ`.
    pub fn matrix_to_coords(&self, m: &Matrix) -> Result<Matrix> {
        self.inverse.transpose().mul(m)?.mul(&self.basis.transpose())
    }

    pub fn matrix_from_coords(&self, m: &Matrix) -> Result<Matrix> {
        self.basis.transpose().mul(m)?.mul(&self.inverse.transpose())
    }

    fn check(&self, u: &Subspace) -> Result<()> {
        if u.ambient_dim() != self.n() || u.field() != self.field() {
            return Err(Error::DimensionMismatch(format!(
                "subspace of F^{} against a decomposition of F^{}",
                u.ambient_dim(),
                self.n()
            )));
        }
        Ok(())
    }

    /// Image of `Z` under the projection `V → V₁` along `V₂`, kept in the ambient space.
    pub fn project_along(&self, z: &Subspace) -> Result<Subspace> {
        let coords = self.subspace_to_coords(z)?;
        let mut m = coords.basis().clone();
        for r in 0..m.rows() {
            for c in self.n1..self.n() {
                m.set(r, c, Elem::ZERO);
            }
        }
        self.subspace_from_coords(&Subspace::from_matrix(&m))
    }

    /// Whether `m` (column convention, standard coordinates) preserves both summands.
    pub fn is_block_diagonal(&self, m: &Matrix) -> Result<bool> {
        let c = self.matrix_to_coords(m)?;
        let n1 = self.n1;
        let n = self.n();
        Ok(c.submatrix(0..n1, n1..n).is_zero() && c.submatrix(n1..n, 0..n1).is_zero())
    }
}
