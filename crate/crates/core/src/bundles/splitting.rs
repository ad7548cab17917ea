//! Splitting `V = V₁ ⊕ V₂` from a finite-order projective map commuting with
//! a twisted action, so that every lift becomes block-diagonal.

use serde::Serialize;

use crate::autgroup::{ProjectiveMap, TwistedAction};
use crate::error::{Error, Result};
use crate::fields::Elem;
use crate::linalg::{Decomposition, Matrix, Subspace};

/// Which hypothesis made the split available.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SplitCondition {
    /// `order(g) > n!`.
    OrderExceedsFactorial,
    /// Only the weaker `h^{n!}` non-scalar held.
    NonScalarPower,
}

#[derive(Clone, Debug)]
pub struct SplitResult {
    pub decomposition: Decomposition,
    /// Lift of `g` with `order(h) = order(g)`.
    pub h: Matrix,
    pub order: u64,
    /// Distinct eigenvalues of `h`, canonical order.
    pub eigenvalues: Vec<Elem>,
    /// Distinct eigenvalues of `h^{n!}`, canonical order; `V₁` belongs to `power_eigenvalues[chosen]`.
    pub power_eigenvalues: Vec<Elem>,
    pub chosen: usize,
    /// `h c_σ = ν_σ c_σ σ(h)`.
    pub nu: Vec<Elem>,
    pub nu_orders: Vec<u64>,
    pub block_diagonal: Vec<bool>,
    pub condition: SplitCondition,
    /// The action with lifts re-expressed in the eigenbasis.
    pub action: TwistedAction,
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Projective order: least `m` with `g^m` scalar.
fn projective_order(g: &Matrix) -> Result<(u64, Elem)> {
    let q = g.field().order() as u128;
    let bound = q.saturating_pow(g.rows() as u32).min(1 << 24);
    let mut acc = g.clone();
    for m in 1..=bound {
        if let Some(mu) = acc.scalar_value() {
            return Ok((m as u64, mu));
        }
        acc = acc.mul(g)?;
    }
    Err(Error::InfiniteOrder)
}

/// Split using the eigenspace of the least eigenvalue of `h^{n!}`.
pub fn split_from_automorphism(g: &ProjectiveMap, action: &TwistedAction) -> Result<SplitResult> {
    split_from_automorphism_with(g, action, 0)
}

/// Split using the eigenspace of `power_eigenvalues[chosen]`.
pub fn split_from_automorphism_with(
    g: &ProjectiveMap,
    action: &TwistedAction,
    chosen: usize,
) -> Result<SplitResult> {
    let field = action.field().clone();
    let n = action.n();
    let lift = g.lift();
    if lift.field() != &field || lift.rows() != n {
        return Err(Error::FieldMismatch("g and the action live over different spaces".into()));
    }
    for (e, entry) in action.entries().iter().enumerate() {
        let s = entry.semilinear().ok_or(Error::DimensionSwapping(e))?;
        let lhs = lift.mul(s.matrix())?;
        let rhs = s.matrix().mul(&lift.conjugate(entry.sigma()))?;
        if lhs.proportionality(&rhs).is_none() {
            return Err(Error::DoesNotCommute(e));
        }
    }

    let (order, mu) = projective_order(lift)?;
    // h = λg with λ^m μ = 1
    let lambda = field
        .elements()
        .find(|&l| !l.is_zero() && field.mul(field.pow(l, order as u128), mu) == Elem::ONE)
        .ok_or(Error::EigenvaluesNotInField)?;
    let h = lift.scale(lambda);

    let mut eigen: Vec<(Elem, Subspace)> = Vec::new();
    for l in field.elements().filter(|l| !l.is_zero()) {
        let shifted = h.sub(&Matrix::scalar(&field, n, l))?;
        let k = Subspace::from_matrix(&shifted.kernel());
        if !k.is_zero() {
            eigen.push((l, k));
        }
    }
    if eigen.iter().map(|(_, k)| k.dim()).sum::<usize>() != n {
        return Err(Error::EigenvaluesNotInField);
    }

    let nf = factorial(n);
    if h.pow(nf)?.scalar_value().is_some() {
        return Err(Error::ScalarPower);
    }
    let power = |l: Elem| field.pow(l, nf);
    let mut power_eigenvalues: Vec<Elem> = eigen.iter().map(|(l, _)| power(*l)).collect();
    power_eigenvalues.sort();
    power_eigenvalues.dedup();
    let target = *power_eigenvalues
        .get(chosen)
        .ok_or_else(|| Error::OutOfRange(format!("eigenvalue index {chosen}")))?;

    let (first, rest): (Vec<_>, Vec<_>) = eigen.iter().partition(|(l, _)| power(*l) == target);
    let rows: Vec<Vec<Elem>> = first
        .iter()
        .chain(&rest)
        .flat_map(|(_, k)| k.basis().row_vecs())
        .collect();
    let n1: usize = first.iter().map(|(_, k)| k.dim()).sum();
    let b = Matrix::from_rows(&field, n, &rows)?;
    let decomposition = Decomposition::new(b.clone(), n1)?;

    let q = b.transpose();
    let q_inv = q.inverse()?;
    let mut lifts = Vec::new();
    let mut block_diagonal = Vec::new();
    let mut nu = Vec::new();
    let mut nu_orders = Vec::new();
    for entry in action.entries() {
        let sigma = entry.sigma();
        let m = entry.semilinear().expect("checked above").matrix();
        let c = q_inv.mul(m)?.mul(&q.conjugate(sigma))?;
        block_diagonal.push(
            c.submatrix(0..n1, n1..n).is_zero() && c.submatrix(n1..n, 0..n1).is_zero(),
        );
        lifts.push(c);
        let v = h
            .mul(m)?
            .proportionality(&m.mul(&h.conjugate(sigma))?)
            .ok_or(Error::DoesNotCommute(entry.sigma().exponent()))?;
        nu_orders.push(field.multiplicative_order(v).ok_or(Error::InfiniteOrder)?);
        nu.push(v);
    }
    let action = TwistedAction::linear(action.tower(), b, lifts)?;
    let condition = if order as u128 > nf {
        SplitCondition::OrderExceedsFactorial
    } else {
        SplitCondition::NonScalarPower
    };
    Ok(SplitResult {
        decomposition,
        h,
        order,
        eigenvalues: eigen.iter().map(|(l, _)| *l).collect(),
        power_eigenvalues,
        chosen,
        nu,
        nu_orders,
        block_diagonal,
        condition,
        action,
    })
}
