use crate::error::{Error, Result};
use crate::fields::Elem;

use super::{Matrix, Subspace};

/// Coordinates on `W/T` for `T ≤ W`.
///
/// A vector of `W` is written in `W`'s RREF basis, reduced modulo `T` (also in
/// those coordinates) and read off at the non-pivot columns of `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientChart {
    ambient: Subspace,
    sub: Subspace,
    sub_in_ambient: Subspace,
    transversal: Vec<usize>,
}

impl QuotientChart {
    pub fn new(ambient: &Subspace, sub: &Subspace) -> Result<Self> {
        if !sub.is_subspace_of(ambient) {
            return Err(Error::DimensionMismatch(
                "quotient chart requires T to lie in W".into(),
            ));
        }
        let rows: Vec<Vec<Elem>> = (0..sub.dim())
            .map(|i| ambient.coords(sub.basis().row(i)).expect("T lies in W"))
            .collect();
        let sub_in_ambient = Subspace::span(ambient.field(), ambient.dim(), &rows)?;
        let transversal = (0..ambient.dim())
            .filter(|c| !sub_in_ambient.pivots().contains(c))
            .collect();
        Ok(QuotientChart {
            ambient: ambient.clone(),
            sub: sub.clone(),
            sub_in_ambient,
            transversal,
        })
    }

    pub fn ambient(&self) -> &Subspace {
        &self.ambient
    }

    pub fn sub(&self) -> &Subspace {
        &self.sub
    }

    pub fn quotient_dim(&self) -> usize {
        self.transversal.len()
    }

    /// Indices, in `W`-coordinates, that parametrize the quotient.
    pub fn transversal(&self) -> &[usize] {
        &self.transversal
    }

    /// The chart map `u: W → F^{dim W − dim T}`.
    pub fn project(&self, v: &[Elem]) -> Result<Vec<Elem>> {
        let w = self.ambient.coords(v).ok_or_else(|| {
            Error::DimensionMismatch("vector does not lie in the chart's ambient space".into())
        })?;
        let r = self.sub_in_ambient.reduce(&w);
        Ok(self.transversal.iter().map(|&i| r[i]).collect())
    }

    /// Canonical representative in `W` of a quotient coordinate vector.
    pub fn lift(&self, x: &[Elem]) -> Result<Vec<Elem>> {
        if x.len() != self.quotient_dim() {
            return Err(Error::DimensionMismatch(format!(
                "quotient vector of length {} for a chart of dimension {}",
                x.len(),
                self.quotient_dim()
            )));
        }
        let mut w = vec![Elem::ZERO; self.ambient.dim()];
        for (&i, &c) in self.transversal.iter().zip(x) {
            w[i] = c;
        }
        self.ambient.basis().vec_mul(&w)
    }

    /// Matrix whose rows are the lifts of the quotient basis vectors.
    pub fn lift_matrix(&self) -> Matrix {
        let f = self.ambient.field();
        let rows: Vec<Vec<Elem>> = (0..self.quotient_dim())
            .map(|i| {
                let mut x = vec![Elem::ZERO; self.quotient_dim()];
                x[i] = Elem::ONE;
                self.lift(&x).expect("unit vector has chart length")
            })
            .collect();
        Matrix::from_rows(f, self.ambient.ambient_dim(), &rows).expect("lifts lie in the ambient")
    }

    /// Full preimage `u⁻¹(X)` of a subspace of quotient coordinates.
    pub fn preimage(&self, x: &Subspace) -> Result<Subspace> {
        let lifted = x.basis().mul(&self.lift_matrix())?;
        Subspace::from_matrix(&lifted).sum(&self.sub)
    }
}
