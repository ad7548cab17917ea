use serde::Serialize;

use super::scalar::{nullspace, ScalarField};
use crate::error::{Error, Result};

/// Largest dimension [`tensor_table`] will build.
pub const MAX_TENSOR_DIM: usize = 256;

/// Finite-dimensional algebra given by structure constants `e_i e_j = Σ_k t_ijk e_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureAlgebra<F: ScalarField> {
    field: F,
    dim: usize,
    // sparse, sorted by index, no zero coefficients
    table: Vec<Vec<(usize, F::Elem)>>,
    unit: Vec<F::Elem>,
    labels: Vec<String>,
}

impl<F: ScalarField> StructureAlgebra<F> {
    pub fn from_fn(
        field: &F,
        dim: usize,
        unit: Vec<F::Elem>,
        labels: Vec<String>,
        product: impl Fn(usize, usize) -> Vec<(usize, F::Elem)>,
    ) -> Result<Self> {
        if unit.len() != dim || labels.len() != dim {
            return Err(Error::DimensionMismatch("unit or labels do not match the dimension".into()));
        }
        let mut table = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let mut dense = vec![field.zero(); dim];
                for (k, c) in product(i, j) {
                    if k >= dim {
                        return Err(Error::OutOfRange(format!("basis index {k}")));
                    }
                    dense[k] = field.add(&dense[k], &c);
                }
                table.push(sparse(field, &dense));
            }
        }
        Ok(StructureAlgebra { field: field.clone(), dim, table, unit, labels })
    }

    /// The base field as a one-dimensional algebra.
    pub fn base(field: &F) -> Self {
        StructureAlgebra::from_fn(field, 1, vec![field.one()], vec!["1".into()], |_, _| {
            vec![(0, field.one())]
        })
        .expect("one-dimensional table is well formed")
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[F::Elem] {
        &self.unit
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `e_i e_j` as sparse `(index, coefficient)` pairs.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, F::Elem)] {
        &self.table[i * self.dim + j]
    }

    pub fn basis_element(&self, i: usize) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.dim];
        v[i] = self.field.one();
        v
    }

    pub fn zero(&self) -> Vec<F::Elem> {
        vec![self.field.zero(); self.dim]
    }

    pub fn add(&self, u: &[F::Elem], v: &[F::Elem]) -> Vec<F::Elem> {
        u.iter().zip(v).map(|(x, y)| self.field.add(x, y)).collect()
    }

    pub fn scale(&self, c: &F::Elem, u: &[F::Elem]) -> Vec<F::Elem> {
        u.iter().map(|x| self.field.mul(c, x)).collect()
    }

    pub fn mul(&self, u: &[F::Elem], v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = self.zero();
        for (i, ui) in u.iter().enumerate().filter(|(_, x)| !f.is_zero(x)) {
            for (j, vj) in v.iter().enumerate().filter(|(_, x)| !f.is_zero(x)) {
                let c = f.mul(ui, vj);
                for (k, t) in self.basis_product(i, j) {
                    out[*k] = f.add(&out[*k], &f.mul(&c, t));
                }
            }
        }
        out
    }

    pub fn is_zero_element(&self, u: &[F::Elem]) -> bool {
        u.iter().all(|x| self.field.is_zero(x))
    }

    /// Checks `(e_i e_j) e_k = e_i (e_j e_k)` on all basis triples.
    pub fn check_associativity(&self) -> Result<()> {
        for i in 0..self.dim {
            let ei = self.basis_element(i);
            for j in 0..self.dim {
                let ej = self.basis_element(j);
                let eij = self.mul(&ei, &ej);
                for k in 0..self.dim {
                    let ek = self.basis_element(k);
                    if self.mul(&eij, &ek) != self.mul(&ei, &self.mul(&ej, &ek)) {
                        return Err(Error::AlgebraCheck(format!(
                            "associativity fails on basis triple ({i}, {j}, {k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks that the stored unit is a two-sided identity on the basis.
    pub fn check_unit(&self) -> Result<()> {
        for i in 0..self.dim {
            let e = self.basis_element(i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(Error::AlgebraCheck(format!("unit fails on basis element {i}")));
            }
        }
        Ok(())
    }

    /// Basis of the center, from the linear system `x e_j = e_j x`.
    pub fn center(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let mut rows = Vec::new();
        for j in 0..self.dim {
            // row (j, k): Σ_i x_i (t_ijk − t_jik)
            let mut block = vec![vec![f.zero(); self.dim]; self.dim];
            for i in 0..self.dim {
                for (k, c) in self.basis_product(i, j) {
                    block[*k][i] = f.add(&block[*k][i], c);
                }
                for (k, c) in self.basis_product(j, i) {
                    block[*k][i] = f.sub(&block[*k][i], c);
                }
            }
            rows.extend(block);
        }
        nullspace(f, rows, self.dim)
    }

    /// Matrix of `v ↦ u v`; column `j` holds `u e_j`.
    pub fn left_multiplication(&self, u: &[F::Elem]) -> Vec<Vec<F::Elem>> {
        let mut m = vec![vec![self.field.zero(); self.dim]; self.dim];
        for j in 0..self.dim {
            for (k, c) in self.mul(u, &self.basis_element(j)).into_iter().enumerate() {
                m[k][j] = c;
            }
        }
        m
    }

    /// Same underlying space with `x ∘ y = y x`.
    pub fn opposite(&self) -> Self {
        let d = self.dim;
        let table = (0..d * d).map(|ij| self.table[(ij % d) * d + ij / d].clone()).collect();
        StructureAlgebra { table, ..self.clone() }
    }

    pub fn format_element(&self, u: &[F::Elem]) -> String {
        let terms: Vec<String> = u
            .iter()
            .zip(&self.labels)
            .filter(|(c, _)| !self.field.is_zero(c))
            .map(|(c, l)| {
                if l == "1" {
                    self.field.format(c)
                } else if *c == self.field.one() {
                    l.clone()
                } else {
                    format!("{}*{}", self.field.format(c), l)
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

fn sparse<F: ScalarField>(f: &F, dense: &[F::Elem]) -> Vec<(usize, F::Elem)> {
    dense
        .iter()
        .enumerate()
        .filter(|(_, c)| !f.is_zero(c))
        .map(|(k, c)| (k, c.clone()))
        .collect()
}

/// `A ⊗ B` with basis `e_i ⊗ f_j` at index `i·dim B + j`.
pub fn tensor_table<F: ScalarField>(a: &StructureAlgebra<F>, b: &StructureAlgebra<F>) -> Result<StructureAlgebra<F>> {
    if a.field != b.field {
        return Err(Error::FieldMismatch("tensor factors over different fields".into()));
    }
    let dim = a.dim * b.dim;
    if dim > MAX_TENSOR_DIM {
        return Err(Error::BudgetExceeded {
            what: "tensor dimension".into(),
            needed: dim as u128,
            budget: MAX_TENSOR_DIM as u128,
        });
    }
    let f = &a.field;
    let unit = (0..dim).map(|ij| f.mul(&a.unit[ij / b.dim], &b.unit[ij % b.dim])).collect();
    let labels = (0..dim)
        .map(|ij| format!("({})⊗({})", a.labels[ij / b.dim], b.labels[ij % b.dim]))
        .collect();
    StructureAlgebra::from_fn(f, dim, unit, labels, |x, y| {
        let (i, j) = (x / b.dim, x % b.dim);
        let (k, l) = (y / b.dim, y % b.dim);
        let mut out = Vec::new();
        for (r, s) in a.basis_product(i, k) {
            for (t, u) in b.basis_product(j, l) {
                out.push((r * b.dim + t, f.mul(s, u)));
            }
        }
        out
    })
}

/// `(a, b; ω, m)`: generators `x₁, x₂` with `x₁^m = a`, `x₂^m = b`, `x₁x₂ = ω x₂x₁`.
#[derive(Clone, Debug, PartialEq)]
pub struct CyclicAlgebra<F: ScalarField> {
    algebra: StructureAlgebra<F>,
    m: usize,
    a: F::Elem,
    b: F::Elem,
    omega: F::Elem,
}

/// Cyclic algebra with the canonical primitive `m`-th root of unity.
pub fn make_cyclic<F: ScalarField>(field: &F, m: usize, a: F::Elem, b: F::Elem) -> Result<CyclicAlgebra<F>> {
    let omega = field.root_of_unity(m)?;
    make_cyclic_with_root(field, m, a, b, omega)
}

pub fn make_cyclic_with_root<F: ScalarField>(
    field: &F,
    m: usize,
    a: F::Elem,
    b: F::Elem,
    omega: F::Elem,
) -> Result<CyclicAlgebra<F>> {
    if m == 0 {
        return Err(Error::OutOfRange("degree must be positive".into()));
    }
    if field.is_zero(&a) || field.is_zero(&b) {
        return Err(Error::Zero("cyclic algebra parameters".into()));
    }
    let primitive = field.pow(&omega, m) == field.one() && (1..m).all(|d| field.pow(&omega, d) != field.one());
    if !primitive {
        return Err(Error::OutOfRange(format!("{} is not a primitive {m}-th root of unity", field.format(&omega))));
    }
    // ω^{-jk}
    let omega_inv = field.inv(&omega).expect("root of unity is nonzero");
    let powers: Vec<F::Elem> = (0..m).map(|e| field.pow(&omega_inv, e)).collect();
    let labels = (0..m * m)
        .map(|x| {
            let part = |g: &str, e: usize| match e {
                0 => None,
                1 => Some(g.to_string()),
                _ => Some(format!("{g}^{e}")),
            };
            let parts: Vec<String> = [part("x1", x / m), part("x2", x % m)].into_iter().flatten().collect();
            if parts.is_empty() {
                "1".into()
            } else {
                parts.join("*")
            }
        })
        .collect();
    let mut unit = vec![field.zero(); m * m];
    unit[0] = field.one();
    let algebra = StructureAlgebra::from_fn(field, m * m, unit, labels, |x, y| {
        let (i, j) = (x / m, x % m);
        let (k, l) = (y / m, y % m);
        let mut c = powers[(j * k) % m].clone();
        let (mut e1, mut e2) = (i + k, j + l);
        if e1 >= m {
            e1 -= m;
            c = field.mul(&c, &a);
        }
        if e2 >= m {
            e2 -= m;
            c = field.mul(&c, &b);
        }
        vec![(e1 * m + e2, c)]
    })?;
    algebra.check_unit()?;
    algebra.check_associativity()?;
    let center = algebra.center().len();
    if center != 1 {
        return Err(Error::AlgebraCheck(format!("center has dimension {center}")));
    }
    Ok(CyclicAlgebra { algebra, m, a, b, omega })
}

impl<F: ScalarField> CyclicAlgebra<F> {
    pub fn algebra(&self) -> &StructureAlgebra<F> {
        &self.algebra
    }

    pub fn field(&self) -> &F {
        self.algebra.field()
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn a(&self) -> &F::Elem {
        &self.a
    }

    pub fn b(&self) -> &F::Elem {
        &self.b
    }

    pub fn omega(&self) -> &F::Elem {
        &self.omega
    }

    /// `x₁^i x₂^j`.
    pub fn monomial(&self, i: usize, j: usize) -> Vec<F::Elem> {
        self.algebra.basis_element((i % self.m) * self.m + j % self.m)
    }

    pub fn x1(&self) -> Vec<F::Elem> {
        self.monomial(1 % self.m, 0)
    }

    pub fn x2(&self) -> Vec<F::Elem> {
        self.monomial(0, 1 % self.m)
    }

    pub fn opposite(&self) -> StructureAlgebra<F> {
        self.algebra.opposite()
    }
}

/// Outcome of [`zero_divisor_search`]; running out of budget is distinct from exhausting the space.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum ZeroDivisorSearch<E> {
    Found { left: Vec<E>, right: Vec<E>, examined: u128 },
    /// Every nonzero element was examined and none is a left zero divisor.
    NotFound { examined: u128 },
    BudgetExceeded { examined: u128, space: u128 },
    /// Infinite field: only small integer coefficient vectors were tried.
    NotExhaustible { examined: u128, caveat: String },
}

impl<E> ZeroDivisorSearch<E> {
    pub fn is_found(&self) -> bool {
        matches!(self, ZeroDivisorSearch::Found { .. })
    }
}

/// Searches for `u, v ≠ 0` with `uv = 0` by testing left multiplication by `u` for singularity.
///
/// Over a finite field the candidates `u` run through all nonzero coefficient
/// vectors in integer order; over `ℚ` through vectors with entries in `{−1, 0, 1}`.
pub fn zero_divisor_search<F: ScalarField>(alg: &StructureAlgebra<F>, budget: u128) -> ZeroDivisorSearch<F::Elem> {
    let f = alg.field();
    let (digits, exhaustible) = match f.elements() {
        Some(all) => (all, true),
        None => (vec![f.zero(), f.one(), f.from_int(-1)], false),
    };
    let q = digits.len() as u128;
    let space = (0..alg.dim()).try_fold(1u128, |acc, _| acc.checked_mul(q)).unwrap_or(u128::MAX) - 1;
    let mut examined = 0;
    for index in 1..=space {
        if examined == budget {
            return ZeroDivisorSearch::BudgetExceeded { examined, space };
        }
        examined += 1;
        let mut rest = index;
        let u: Vec<F::Elem> = (0..alg.dim())
            .map(|_| {
                let d = digits[(rest % q) as usize].clone();
                rest /= q;
                d
            })
            .collect();
        if let Some(v) = nullspace(f, alg.left_multiplication(&u), alg.dim()).into_iter().next() {
            debug_assert!(alg.is_zero_element(&alg.mul(&u, &v)));
            return ZeroDivisorSearch::Found { left: u, right: v, examined };
        }
    }
    if exhaustible {
        ZeroDivisorSearch::NotFound { examined }
    } else {
        ZeroDivisorSearch::NotExhaustible {
            examined,
            caveat: "Q is infinite; a failed search does not show the algebra is a division algebra".into(),
        }
    }
}
