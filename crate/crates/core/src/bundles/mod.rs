//! Rational maps `φ₁, φ₂, ψ` out of a flag variety attached to
//! `V = V₁ ⊕ V₂`, their loci of definition, and the fiber charts that
//! exhibit them as vector bundles.
//!
//! All chart computations happen in the coordinates of the decomposition
//! basis `b`, where `V₁` is spanned by the first `n₁` unit vectors. Base flags
//! live natively in `F^{n₁}` and `F^{n₂}`.

mod equivariance;
mod splitting;

pub use equivariance::{
    descent_count_check, equivariance_check, equivariance_check_unchecked, fiber_action_check,
    BlockAction, DescentReport, EquivarianceReport, FiberActionReport, Violation,
};
pub use splitting::{split_from_automorphism, split_from_automorphism_with, SplitCondition, SplitResult};

use crate::error::{Error, Result};
use crate::fields::{Elem, Field};
use crate::flags::{enumerate_flags, Flag, FlagSignature, SplitSignature};
use crate::linalg::{Decomposition, Matrix, QuotientChart, Subspace};

/// A point of the base of `ψ`: `S` in `V₁`, `T` in `V₂`.
pub type BasePoint = (Flag, Flag);

/// Fiber coordinates `(f, g)`: `f ∈ Hom(S_p, V₂)` as a `d_p × n₂` matrix whose
/// rows are the images of the RREF basis of `S_p`; `g ∈ Hom(V₁, V₂/T₁)` as an
/// `n₁ × (n₂ − dim T₁)` matrix in quotient-chart coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiberCoords {
    pub f: Matrix,
    pub g: Matrix,
}

impl FiberCoords {
    pub fn add(&self, other: &FiberCoords) -> Result<FiberCoords> {
        Ok(FiberCoords {
            f: self.f.add(&other.f)?,
            g: self.g.add(&other.g)?,
        })
    }

    pub fn scale(&self, a: Elem) -> FiberCoords {
        FiberCoords {
            f: self.f.scale(a),
            g: self.g.scale(a),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero() && self.g.is_zero()
    }

    fn flatten(&self) -> Vec<Elem> {
        self.f.data().iter().chain(self.g.data()).copied().collect()
    }
}

/// The linear map `F(f, g) = u∘f − g∘i` at one base point.
#[derive(Clone, Debug)]
pub struct Constraint {
    /// Matrix of `F` on flattened `(f, g)` (column convention).
    pub matrix: Matrix,
    pub rank: usize,
    pub surjective: bool,
    /// `E = Ker F`, in flattened coordinates.
    pub kernel: Subspace,
}

/// `V = V₁ ⊕ V₂` together with a split signature `d | e`.
#[derive(Clone, Debug)]
pub struct BundleContext {
    decomp: Decomposition,
    split: SplitSignature,
    v2_coords: Subspace,
}

impl BundleContext {
    pub fn new(decomp: Decomposition, split: SplitSignature) -> Result<Self> {
        if decomp.n() != split.n() || decomp.n1() != split.n1() {
            return Err(Error::DimensionMismatch(format!(
                "decomposition with n = {}, n1 = {} against split {split}",
                decomp.n(),
                decomp.n1()
            )));
        }
        let v2_coords =
            Subspace::coordinate(decomp.field(), split.n(), &(split.n1()..split.n()).collect::<Vec<_>>());
        Ok(BundleContext {
            decomp,
            split,
            v2_coords,
        })
    }

    /// `V₁ = span(e₁..e_{n₁})`, `V₂ = span(e_{n₁+1}..e_n)`.
    pub fn standard(field: &Field, split: SplitSignature) -> Result<Self> {
        Self::new(Decomposition::standard(field, split.n(), split.n1())?, split)
    }

    pub fn field(&self) -> &Field {
        self.decomp.field()
    }

    pub fn decomposition(&self) -> &Decomposition {
        &self.decomp
    }

    pub fn split(&self) -> &SplitSignature {
        &self.split
    }

    fn n(&self) -> usize {
        self.split.n()
    }

    fn n1(&self) -> usize {
        self.split.n1()
    }

    fn n2(&self) -> usize {
        self.split.n2()
    }

    fn p(&self) -> usize {
        self.split.p()
    }

    fn has_upper(&self) -> bool {
        !self.split.upper().is_empty()
    }

    /// `dim V₂/T₁`.
    pub fn quotient_dim(&self) -> usize {
        self.n2() - self.split.t1()
    }

    /// `dim E = d_p·n₂ + n₁·(n₂ − t₁) − d_p·(n₂ − t₁)`.
    pub fn rank(&self) -> usize {
        let dp = self.split.d_p();
        let m = self.quotient_dim();
        dp * self.n2() + self.n1() * m - dp * m
    }

    fn check_full(&self, flag: &Flag) -> Result<()> {
        if flag.signature() != self.split.full() {
            return Err(Error::InvalidSignature(format!(
                "flag of signature {} against split {}",
                flag.signature(),
                self.split
            )));
        }
        Ok(())
    }

    fn to_coords(&self, z: &Subspace) -> Result<Subspace> {
        self.decomp.subspace_to_coords(z)
    }

    fn from_coords(&self, z: &Subspace) -> Result<Subspace> {
        self.decomp.subspace_from_coords(z)
    }

    /// `Z_p ∩ V₂ = 0` (vacuous without a lower part).
    pub fn in_u1(&self, flag: &Flag) -> Result<bool> {
        self.check_full(flag)?;
        match self.p() {
            0 => Ok(true),
            p => Ok(flag.get(p - 1).intersect(self.decomp.v2())?.is_zero()),
        }
    }

    /// `W₁ + V₂ = V` (vacuous without an upper part).
    pub fn in_u2(&self, flag: &Flag) -> Result<bool> {
        self.check_full(flag)?;
        if !self.has_upper() {
            return Ok(true);
        }
        Ok(flag.get(self.p()).sum(self.decomp.v2())?.is_full())
    }

    pub fn in_u(&self, flag: &Flag) -> Result<bool> {
        Ok(self.in_u1(flag)? && self.in_u2(flag)?)
    }

    /// `pr(Z₁) < … < pr(Z_p)` in `V₁ ≅ F^{n₁}`.
    pub fn phi1(&self, flag: &Flag) -> Result<Flag> {
        if !self.in_u1(flag)? {
            return Err(Error::OutsideDomain(format!("{flag}: Z_p meets V2")));
        }
        let chain = flag.chain()[..self.p()]
            .iter()
            .map(|z| Ok(self.to_coords(z)?.restrict_columns(0..self.n1())))
            .collect::<Result<Vec<_>>>()?;
        Flag::new(self.split.lower_base(), chain)
    }

    /// `W₁ ∩ V₂ < … < W_q ∩ V₂` in `V₂ ≅ F^{n₂}`.
    pub fn phi2(&self, flag: &Flag) -> Result<Flag> {
        if !self.in_u2(flag)? {
            return Err(Error::OutsideDomain(format!("{flag}: W_1 + V2 is not V")));
        }
        let chain = flag.chain()[self.p()..]
            .iter()
            .map(|w| {
                let c = self.to_coords(w)?.intersect(&self.v2_coords)?;
                Ok(c.restrict_columns(self.n1()..self.n()))
            })
            .collect::<Result<Vec<_>>>()?;
        Flag::new(self.split.upper_base(), chain)
    }

    pub fn psi(&self, flag: &Flag) -> Result<BasePoint> {
        Ok((self.phi1(flag)?, self.phi2(flag)?))
    }

    /// All base points `(S, T) ∈ Fl(d, V₁) × Fl(e − n₁, V₂)`.
    pub fn base_points(&self, budget: u128) -> Result<Vec<BasePoint>> {
        let lower = enumerate_flags(self.field(), &self.split.lower_base(), budget)?;
        let upper = enumerate_flags(self.field(), &self.split.upper_base(), budget)?;
        let needed = (lower.len() as u128) * (upper.len() as u128);
        if needed > budget {
            return Err(Error::BudgetExceeded {
                what: "base points".into(),
                needed,
                budget,
            });
        }
        Ok(lower
            .iter()
            .flat_map(|s| upper.iter().map(move |t| (s.clone(), t.clone())))
            .collect())
    }

    fn check_base(&self, s: &Flag, t: &Flag) -> Result<()> {
        if *s.signature() != self.split.lower_base() || *t.signature() != self.split.upper_base() {
            return Err(Error::InvalidSignature(format!(
                "base point ({}, {}) against split {}",
                s.signature(),
                t.signature(),
                self.split
            )));
        }
        Ok(())
    }

    /// `S_p`, or the zero subspace of `F^{n₁}`.
    fn s_p(&self, s: &Flag) -> Subspace {
        s.last().cloned().unwrap_or_else(|| Subspace::zero(self.field(), self.n1()))
    }

    /// Chart for `u: V₂ → V₂/T₁`; without an upper part `T₁ = V₂`.
    pub fn quotient_chart(&self, t: &Flag) -> Result<QuotientChart> {
        let full = Subspace::full(self.field(), self.n2());
        let t1 = t.chain().first().cloned().unwrap_or_else(|| full.clone());
        QuotientChart::new(&full, &t1)
    }

    pub fn zero_coords(&self) -> FiberCoords {
        FiberCoords {
            f: Matrix::zeros(self.field(), self.split.d_p(), self.n2()),
            g: Matrix::zeros(self.field(), self.n1(), self.quotient_dim()),
        }
    }

    /// `Z_i = {v + f(v) : v ∈ S_i}`, as members of `V`.
    pub fn param_phi1(&self, s: &Flag, f: &Matrix) -> Result<Flag> {
        let sp = self.s_p(s);
        if f.rows() != sp.dim() || f.cols() != self.n2() {
            return Err(Error::DimensionMismatch(format!(
                "f is {}x{}, expected {}x{}",
                f.rows(),
                f.cols(),
                sp.dim(),
                self.n2()
            )));
        }
        let chain = s
            .chain()
            .iter()
            .map(|si| {
                let rows = si
                    .basis()
                    .row_vecs()
                    .into_iter()
                    .map(|v| {
                        let a = sp.coords(&v).expect("S_i lies in S_p");
                        let mut row = v;
                        row.extend(f.vec_mul(&a)?);
                        Ok(row)
                    })
                    .collect::<Result<Vec<_>>>()?;
                self.from_coords(&Subspace::span(self.field(), self.n(), &rows)?)
            })
            .collect::<Result<Vec<_>>>()?;
        Flag::new(FlagSignature::relaxed(self.n(), self.split.lower())?, chain)
    }

    /// `(φ₁(flag), f)` with `f` read off the `V₂`-block of the RREF of `Z_p`.
    pub fn coord_phi1(&self, flag: &Flag) -> Result<(Flag, Matrix)> {
        let s = self.phi1(flag)?;
        let f = match self.p() {
            0 => Matrix::zeros(self.field(), 0, self.n2()),
            p => {
                let zp = self.to_coords(flag.get(p - 1))?;
                debug_assert_eq!(zp.basis().submatrix(0..zp.dim(), 0..self.n1()), *self.s_p(&s).basis());
                zp.basis().submatrix(0..zp.dim(), self.n1()..self.n())
            }
        };
        Ok((s, f))
    }

    /// `W₁ = u⁻¹(graph g)`, `W_j = W₁ + T_j`, as members of `V`.
    pub fn param_phi2(&self, t: &Flag, g: &Matrix) -> Result<Flag> {
        let sig = FlagSignature::relaxed(self.n(), self.split.upper())?;
        if !self.has_upper() {
            return Flag::new(sig, vec![]);
        }
        let chart = self.quotient_chart(t)?;
        if g.rows() != self.n1() || g.cols() != chart.quotient_dim() {
            return Err(Error::DimensionMismatch(format!(
                "g is {}x{}, expected {}x{}",
                g.rows(),
                g.cols(),
                self.n1(),
                chart.quotient_dim()
            )));
        }
        let mut rows = Vec::with_capacity(self.n());
        for i in 0..self.n1() {
            let mut row = vec![Elem::ZERO; self.n1()];
            row[i] = Elem::ONE;
            row.extend(chart.lift(g.row(i))?);
            rows.push(row);
        }
        let graph = Subspace::span(self.field(), self.n(), &rows)?;
        let chain = t
            .chain()
            .iter()
            .map(|tj| {
                let w = graph.sum(&tj.embed_columns(self.n(), self.n1()))?;
                self.from_coords(&w)
            })
            .collect::<Result<Vec<_>>>()?;
        Flag::new(sig, chain)
    }

    /// `(φ₂(flag), g)` with `g(e_i) = u(Y_i)` for the leading rows `[I | Y]`
    /// of the RREF of `W₁`.
    pub fn coord_phi2(&self, flag: &Flag) -> Result<(Flag, Matrix)> {
        let t = self.phi2(flag)?;
        if !self.has_upper() {
            return Ok((t, Matrix::zeros(self.field(), self.n1(), 0)));
        }
        let chart = self.quotient_chart(&t)?;
        let w1 = self.to_coords(flag.get(self.p()))?;
        debug_assert_eq!(&w1.pivots()[..self.n1()], &(0..self.n1()).collect::<Vec<_>>()[..]);
        let rows = (0..self.n1())
            .map(|i| chart.project(&w1.basis().row(i)[self.n1()..]))
            .collect::<Result<Vec<_>>>()?;
        let g = Matrix::from_rows(self.field(), chart.quotient_dim(), &rows)?;
        Ok((t, g))
    }

    /// `F(f, g) = u∘f − g∘i ∈ Hom(S_p, V₂/T₁)`, rows indexed by the basis of `S_p`.
    pub fn f_map(&self, s: &Flag, t: &Flag, x: &FiberCoords) -> Result<Matrix> {
        let fld = self.field();
        let sp = self.s_p(s);
        let chart = self.quotient_chart(t)?;
        let rows = (0..sp.dim())
            .map(|k| {
                let uf = chart.project(x.f.row(k))?;
                let gi = x.g.vec_mul(sp.basis().row(k))?;
                Ok(uf.iter().zip(&gi).map(|(&a, &b)| fld.sub(a, b)).collect())
            })
            .collect::<Result<Vec<Vec<Elem>>>>()?;
        Matrix::from_rows(fld, chart.quotient_dim(), &rows)
    }

    fn unflatten(&self, v: &[Elem]) -> FiberCoords {
        let fld = self.field();
        let nf = self.split.d_p() * self.n2();
        FiberCoords {
            f: Matrix::new(fld, self.split.d_p(), self.n2(), v[..nf].to_vec()).expect("shape"),
            g: Matrix::new(fld, self.n1(), self.quotient_dim(), v[nf..].to_vec()).expect("shape"),
        }
    }

    /// `F` as an explicit linear map, with its rank and kernel `E`.
    pub fn constraint(&self, s: &Flag, t: &Flag) -> Result<Constraint> {
        self.check_base(s, t)?;
        let fld = self.field();
        let dim_in = self.split.d_p() * self.n2() + self.n1() * self.quotient_dim();
        let dim_out = self.split.d_p() * self.quotient_dim();
        let columns = (0..dim_in)
            .map(|j| {
                let mut v = vec![Elem::ZERO; dim_in];
                v[j] = Elem::ONE;
                Ok(self.f_map(s, t, &self.unflatten(&v))?.data().to_vec())
            })
            .collect::<Result<Vec<_>>>()?;
        let matrix = Matrix::from_rows(fld, dim_out, &columns)?.transpose();
        let matrix = if dim_in == 0 { Matrix::zeros(fld, dim_out, 0) } else { matrix };
        let rank = matrix.rank();
        let kernel = Subspace::from_matrix(&matrix.kernel());
        Ok(Constraint {
            surjective: rank == dim_out,
            rank,
            kernel,
            matrix,
        })
    }

    /// Every `(f, g)` with `F(f, g) = 0` at `(S, T)`.
    pub fn fiber(&self, s: &Flag, t: &Flag) -> Result<Vec<FiberCoords>> {
        let c = self.constraint(s, t)?;
        Ok(c.kernel.vectors().iter().map(|v| self.unflatten(v)).collect())
    }

    /// The flag with `ψ`-image `(S, T)` and fiber coordinates `(f, g)`.
    pub fn param_psi(&self, s: &Flag, t: &Flag, x: &FiberCoords) -> Result<Flag> {
        self.check_base(s, t)?;
        if !self.f_map(s, t, x)?.is_zero() {
            return Err(Error::OffKernel);
        }
        let lower = self.param_phi1(s, &x.f)?;
        let upper = self.param_phi2(t, &x.g)?;
        let chain: Vec<Subspace> = lower.chain().iter().chain(upper.chain()).cloned().collect();
        Flag::new(self.split.full().clone(), chain)
    }

    pub fn coord_psi(&self, flag: &Flag) -> Result<(BasePoint, FiberCoords)> {
        let (s, f) = self.coord_phi1(flag)?;
        let (t, g) = self.coord_phi2(flag)?;
        Ok(((s, t), FiberCoords { f, g }))
    }

    /// Whether `Z_p ≤ W₁` for the flags built from `(f, g)` without the kernel condition.
    pub fn lower_in_upper(&self, s: &Flag, t: &Flag, x: &FiberCoords) -> Result<bool> {
        let lower = self.param_phi1(s, &x.f)?;
        let upper = self.param_phi2(t, &x.g)?;
        match (lower.last(), upper.chain().first()) {
            (Some(z), Some(w)) => Ok(z.is_subspace_of(w)),
            _ => Ok(true),
        }
    }

    /// Every point of `Fl(d, V₁) × Fl(e − n₁, V₂)` paired with every `(f, g)`.
    pub fn enumerate_coordinates(&self, budget: u128) -> Result<Vec<(BasePoint, FiberCoords)>> {
        let mut out = Vec::new();
        for (s, t) in self.base_points(budget)? {
            for x in self.fiber(&s, &t)? {
                out.push(((s.clone(), t.clone()), x));
            }
        }
        Ok(out)
    }

    /// All `(f, g)` pairs, whether or not they satisfy `F = 0`.
    pub fn all_coordinate_pairs(&self) -> Vec<FiberCoords> {
        let dim_in = self.split.d_p() * self.n2() + self.n1() * self.quotient_dim();
        Subspace::full(self.field(), dim_in)
            .vectors()
            .iter()
            .map(|v| self.unflatten(v))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::FiniteField;
    use crate::flags::{enumerate_flags, SplitSignature, DEFAULT_ENUMERATION_BUDGET};

    const B: u128 = DEFAULT_ENUMERATION_BUDGET;

    fn ctx(p: u64, n: usize, n1: usize, lower: &[usize], upper: &[usize]) -> BundleContext {
        let f = FiniteField::new(p, 1).unwrap();
        BundleContext::standard(&f, SplitSignature::from_parts(n, n1, lower, upper).unwrap()).unwrap()
    }

    fn span(f: &Field, n: usize, rows: &[&[u32]]) -> Subspace {
        let rows: Vec<Vec<Elem>> = rows.iter().map(|r| r.iter().map(|&x| Elem(x)).collect()).collect();
        Subspace::span(f, n, &rows).unwrap()
    }

    #[test]
    fn u1_count_for_lines() {
        let c = ctx(2, 3, 2, &[1], &[]);
        let flags = enumerate_flags(c.field(), c.split().full(), B).unwrap();
        let u1 = flags.iter().filter(|fl| c.in_u1(fl).unwrap()).count();
        assert_eq!(u1, 6);
    }

    #[test]
    fn phi_examples() {
        let c = ctx(2, 3, 2, &[1], &[]);
        let f = c.field().clone();
        let fl = Flag::from_chain(vec![span(&f, 3, &[&[1, 0, 1]])]).unwrap();
        let s = c.phi1(&fl).unwrap();
        assert_eq!(s.get(0), &span(&f, 2, &[&[1, 0]]));

        let c2 = ctx(2, 3, 1, &[], &[2]);
        let fl = Flag::from_chain(vec![span(&f, 3, &[&[1, 1, 0], &[0, 0, 1]])]).unwrap();
        let t = c2.phi2(&fl).unwrap();
        // W ∩ V₂ = span(e₃) read in V₂-coordinates
        assert_eq!(t.get(0), &span(&f, 2, &[&[0, 1]]));
        let bad = Flag::from_chain(vec![span(&f, 3, &[&[0, 1, 0], &[0, 0, 1]])]).unwrap();
        assert!(matches!(c2.phi2(&bad), Err(Error::OutsideDomain(_))));
        assert!(!c2.in_u2(&bad).unwrap());
    }

    #[test]
    fn graph_construction() {
        let c = ctx(2, 3, 2, &[1], &[]);
        let f = c.field().clone();
        let s = Flag::from_chain(vec![span(&f, 2, &[&[1, 0]])]).unwrap();
        let fm = Matrix::from_ints(&f, &[&[1]]).unwrap();
        let z = c.param_phi1(&s, &fm).unwrap();
        assert_eq!(z.get(0), &span(&f, 3, &[&[1, 0, 1]]));
        let zero = c.param_phi1(&s, &Matrix::zeros(&f, 1, 1)).unwrap();
        assert_eq!(zero.get(0), &span(&f, 3, &[&[1, 0, 0]]));
    }

    #[test]
    fn quotient_pullback() {
        let c = ctx(2, 3, 1, &[], &[2]);
        let f = c.field().clone();
        let t = Flag::from_chain(vec![span(&f, 2, &[&[1, 0]])]).unwrap();
        let g = Matrix::from_ints(&f, &[&[1]]).unwrap();
        let w = c.param_phi2(&t, &g).unwrap();
        assert_eq!(w.get(0).dim(), 2);
        assert!(span(&f, 3, &[&[0, 1, 0]]).is_subspace_of(w.get(0)));
        assert!(c.in_u2(&Flag::from_chain(w.chain().to_vec()).unwrap()).unwrap());
        let zero = c.param_phi2(&t, &Matrix::zeros(&f, 1, 1)).unwrap();
        assert_eq!(zero.get(0), &span(&f, 3, &[&[1, 0, 0], &[0, 1, 0]]));
    }

    #[test]
    fn mixed_instance_rank() {
        let c = ctx(2, 4, 2, &[1], &[3]);
        assert_eq!(c.rank(), 3);
        for (s, t) in c.base_points(B).unwrap() {
            let k = c.constraint(&s, &t).unwrap();
            assert!(k.surjective);
            assert_eq!(k.kernel.dim(), 3);
            assert_eq!(c.fiber(&s, &t).unwrap().len(), 8);
        }
        // a pair off the kernel is rejected
        let (s, t) = &c.base_points(B).unwrap()[0];
        let off = c
            .all_coordinate_pairs()
            .into_iter()
            .find(|x| !c.f_map(s, t, x).unwrap().is_zero())
            .unwrap();
        assert_eq!(c.param_psi(s, t, &off), Err(Error::OffKernel));
    }

    #[test]
    fn round_trips_and_cardinality() {
        for p in [2, 3] {
            for c in [ctx(p, 3, 2, &[1], &[]), ctx(p, 3, 1, &[], &[2]), ctx(p, 4, 2, &[1], &[3])] {
                let flags = enumerate_flags(c.field(), c.split().full(), B).unwrap();
                let u: Vec<&Flag> = flags.iter().filter(|fl| c.in_u(fl).unwrap()).collect();
                let coords = c.enumerate_coordinates(B).unwrap();
                let base = c.base_points(B).unwrap().len();
                assert_eq!(u.len(), base * (p as usize).pow(c.rank() as u32));
                assert_eq!(coords.len(), u.len());
                for fl in &u {
                    let ((s, t), x) = c.coord_psi(fl).unwrap();
                    assert_eq!(c.param_psi(&s, &t, &x).unwrap(), **fl);
                }
                for ((s, t), x) in &coords {
                    let fl = c.param_psi(s, t, x).unwrap();
                    assert!(c.in_u(&fl).unwrap());
                    assert_eq!(c.coord_psi(&fl).unwrap(), ((s.clone(), t.clone()), x.clone()));
                }
            }
        }
    }

    #[test]
    fn non_standard_decomposition() {
        let f = FiniteField::new(3, 1).unwrap();
        let b = Matrix::from_ints(&f, &[&[1, 1, 0, 0], &[0, 1, 2, 0], &[0, 0, 1, 1], &[1, 0, 0, 1]]).unwrap();
        let d = Decomposition::new(b, 2).unwrap();
        let c = BundleContext::new(d, SplitSignature::from_parts(4, 2, &[1], &[3]).unwrap()).unwrap();
        let flags = enumerate_flags(&f, c.split().full(), B).unwrap();
        let mut count = 0;
        for fl in flags.iter().filter(|fl| c.in_u(fl).unwrap()) {
            let ((s, t), x) = c.coord_psi(fl).unwrap();
            assert_eq!(c.param_psi(&s, &t, &x).unwrap(), *fl);
            count += 1;
        }
        assert_eq!(count, c.base_points(B).unwrap().len() * 27);
    }
}
