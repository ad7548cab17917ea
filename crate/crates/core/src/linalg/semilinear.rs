use crate::error::{Error, Result};
use crate::fields::{Elem, Field, FieldAutomorphism};

use super::{Matrix, Subspace};

/// `v ↦ c·σ(v)` with `σ` applied coordinatewise and `c` invertible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemilinearMap {
    sigma: FieldAutomorphism,
    matrix: Matrix,
}

impl SemilinearMap {
    pub fn new(sigma: FieldAutomorphism, matrix: Matrix) -> Result<Self> {
        if sigma.field() != matrix.field() {
            return Err(Error::FieldMismatch(format!(
                "automorphism of {} with a matrix over {}",
                sigma.field(),
                matrix.field()
            )));
        }
        if !matrix.is_invertible() {
            return Err(Error::Singular);
        }
        Ok(SemilinearMap { sigma, matrix })
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        SemilinearMap {
            sigma: FieldAutomorphism::identity(field),
            matrix: Matrix::identity(field, n),
        }
    }

    /// Plain linear map (σ = id) for automorphisms of a given tower.
    pub fn linear(identity: FieldAutomorphism, matrix: Matrix) -> Result<Self> {
        debug_assert!(identity.is_identity());
        Self::new(identity, matrix)
    }

    pub fn sigma(&self) -> &FieldAutomorphism {
        &self.sigma
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply_vector(&self, v: &[Elem]) -> Result<Vec<Elem>> {
        let sv: Vec<Elem> = v.iter().map(|&x| self.sigma.apply(x)).collect();
        self.matrix.mul_vec(&sv)
    }

    /// On a row basis `B` the image is spanned by the rows of `σ(B)·cᵀ`.
    pub fn apply(&self, u: &Subspace) -> Result<Subspace> {
        if u.ambient_dim() != self.dim() || u.field() != self.matrix.field() {
            return Err(Error::DimensionMismatch(format!(
                "map on F^{} applied to a subspace of F^{}",
                self.dim(),
                u.ambient_dim()
            )));
        }
        let img = u
            .basis()
            .conjugate(&self.sigma)
            .mul(&self.matrix.transpose())?;
        Ok(Subspace::from_matrix(&img))
    }

    /// `self ∘ other = (σ_s σ_t, c_s·σ_s(c_t))`.
    pub fn compose(&self, other: &SemilinearMap) -> Result<SemilinearMap> {
        let sigma = self.sigma.compose(&other.sigma)?;
        let matrix = self.matrix.mul(&other.matrix.conjugate(&self.sigma))?;
        Ok(SemilinearMap { sigma, matrix })
    }

    /// `(σ⁻¹, σ⁻¹(c⁻¹))`.
    pub fn inverse(&self) -> Result<SemilinearMap> {
        let sigma = self.sigma.inverse();
        let matrix = self.matrix.inverse()?.conjugate(&sigma);
        Ok(SemilinearMap { sigma, matrix })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::make_tower;
    use proptest::prelude::*;

    #[test]
    fn frobenius_examples() {
        let tower = make_tower(2, 1, 2).unwrap();
        let f4 = tower.top().clone();
        let gal = tower.galois_group();
        let frob = SemilinearMap::new(gal.generator(), Matrix::identity(&f4, 2)).unwrap();
        let w = Elem(2);
        let u = Subspace::span(&f4, 2, &[vec![Elem::ONE, w]]).unwrap();
        let w2 = f4.mul(w, w);
        let expected = Subspace::span(&f4, 2, &[vec![Elem::ONE, w2]]).unwrap();
        assert_eq!(frob.apply(&u).unwrap(), expected);
        let prime = Subspace::span(&f4, 2, &[vec![Elem::ONE, Elem::ONE]]).unwrap();
        assert_eq!(frob.apply(&prime).unwrap(), prime);
        assert_eq!(SemilinearMap::identity(&f4, 2).apply(&u).unwrap(), u);
    }

    #[test]
    fn singular_rejected() {
        let tower = make_tower(2, 1, 2).unwrap();
        let z = Matrix::zeros(tower.top(), 2, 2);
        assert_eq!(
            SemilinearMap::new(tower.galois_group().generator(), z),
            Err(Error::Singular)
        );
    }

    fn invertible(f: &Field, n: usize, seed: &[u32]) -> Option<Matrix> {
        let q = f.order() as u32;
        let data = seed.iter().take(n * n).map(|&s| Elem(s % q)).collect();
        let m = Matrix::new(f, n, n, data).ok()?;
        m.is_invertible().then_some(m)
    }

    proptest! {
        #[test]
        fn compose_matches_sequential_application(
            a in prop::collection::vec(0u32..4, 9),
            b in prop::collection::vec(0u32..4, 9),
            e1 in 0usize..2, e2 in 0usize..2,
            rows in prop::collection::vec(0u32..4, 6),
        ) {
            let tower = make_tower(2, 1, 2).unwrap();
            let f = tower.top().clone();
            let gal = tower.galois_group();
            let (Some(ma), Some(mb)) = (invertible(&f, 3, &a), invertible(&f, 3, &b)) else {
                return Ok(());
            };
            let s = SemilinearMap::new(gal.element(e1), ma).unwrap();
            let t = SemilinearMap::new(gal.element(e2), mb).unwrap();
            let u = Subspace::from_matrix(
                &Matrix::new(&f, 2, 3, rows.iter().map(|&x| Elem(x)).collect()).unwrap(),
            );
            let st = s.compose(&t).unwrap();
            prop_assert_eq!(st.apply(&u).unwrap(), s.apply(&t.apply(&u).unwrap()).unwrap());
            let back = s.inverse().unwrap().apply(&s.apply(&u).unwrap()).unwrap();
            prop_assert_eq!(back, u.clone());
            for v in u.vectors() {
                prop_assert_eq!(
                    st.apply_vector(&v).unwrap(),
                    s.apply_vector(&t.apply_vector(&v).unwrap()).unwrap()
                );
            }
        }

        #[test]
        fn preserves_lattice_operations(
            a in prop::collection::vec(0u32..4, 9),
            e in 0usize..2,
            r1 in prop::collection::vec(0u32..4, 6),
            r2 in prop::collection::vec(0u32..4, 6),
        ) {
            let tower = make_tower(2, 1, 2).unwrap();
            let f = tower.top().clone();
            let Some(m) = invertible(&f, 3, &a) else { return Ok(()); };
            let s = SemilinearMap::new(tower.galois_group().element(e), m).unwrap();
            let mk = |r: &[u32]| Subspace::from_matrix(
                &Matrix::new(&f, 2, 3, r.iter().map(|&x| Elem(x)).collect()).unwrap(),
            );
            let (u, w) = (mk(&r1), mk(&r2));
            prop_assert_eq!(
                s.apply(&u.sum(&w).unwrap()).unwrap(),
                s.apply(&u).unwrap().sum(&s.apply(&w).unwrap()).unwrap()
            );
            prop_assert_eq!(
                s.apply(&u.intersect(&w).unwrap()).unwrap(),
                s.apply(&u).unwrap().intersect(&s.apply(&w).unwrap()).unwrap()
            );
        }

        #[test]
        fn twisted_homogeneity(
            a in prop::collection::vec(0u32..4, 4),
            v in prop::collection::vec(0u32..4, 2),
            alpha in 0u32..4,
        ) {
            let tower = make_tower(2, 1, 2).unwrap();
            let f = tower.top().clone();
            let Some(m) = invertible(&f, 2, &a) else { return Ok(()); };
            let sigma = tower.galois_group().generator();
            let s = SemilinearMap::new(sigma.clone(), m).unwrap();
            let v: Vec<Elem> = v.into_iter().map(Elem).collect();
            let av: Vec<Elem> = v.iter().map(|&x| f.mul(Elem(alpha), x)).collect();
            let lhs = s.apply_vector(&av).unwrap();
            let rhs: Vec<Elem> = s
                .apply_vector(&v)
                .unwrap()
                .into_iter()
                .map(|x| f.mul(sigma.apply(Elem(alpha)), x))
                .collect();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
