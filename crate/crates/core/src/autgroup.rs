//! Admissibility, the duality involution, projective-linear actions on flags,
//! and twisted Galois actions `T(σ) = a_σ ∘ B_b(σ)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{Elem, Field, FieldAutomorphism, Tower};
use crate::flags::{Flag, FlagSet, FlagSignature};
use crate::linalg::{Matrix, SemilinearMap, Subspace};

/// `false` iff `n ≥ 3` and `d_i + d_{r+1−i} = n` for every `i`.
pub fn is_admissible(sig: &FlagSignature) -> bool {
    !(sig.n() >= 3 && sig.is_self_dual())
}

/// `U_r^⊥ < … < U_1^⊥` in the dual space (standard dual basis).
pub fn dual_flag(flag: &Flag) -> Flag {
    let chain: Vec<Subspace> = flag.chain().iter().rev().map(|z| z.annihilator()).collect();
    Flag::new(flag.signature().dual(), chain).expect("annihilators reverse inclusions")
}

/// `τ = j ∘ *`, with `j: V* → V` given by `j0` on dual coordinates.
pub fn tau(flag: &Flag, j0: &Matrix) -> Result<Flag> {
    if !flag.signature().is_self_dual() {
        return Err(Error::NotSelfDual(flag.signature().to_string()));
    }
    if !j0.is_invertible() || j0.rows() != flag.signature().n() {
        return Err(Error::Singular);
    }
    let dual = dual_flag(flag);
    let chain = dual
        .chain()
        .iter()
        .map(|z| z.image(j0))
        .collect::<Result<Vec<_>>>()?;
    Flag::new(flag.signature().clone(), chain)
}

/// An element of `PGL_n`, stored by the lift whose first nonzero entry is 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjectiveMap {
    lift: Matrix,
}

impl ProjectiveMap {
    pub fn new(m: &Matrix) -> Result<Self> {
        if !m.is_invertible() {
            return Err(Error::Singular);
        }
        let lead = *m.data().iter().find(|x| !x.is_zero()).expect("invertible");
        let inv = m.field().inv(lead).expect("nonzero");
        Ok(ProjectiveMap { lift: m.scale(inv) })
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        ProjectiveMap {
            lift: Matrix::identity(field, n),
        }
    }

    pub fn lift(&self) -> &Matrix {
        &self.lift
    }

    pub fn compose(&self, other: &ProjectiveMap) -> Result<ProjectiveMap> {
        Self::new(&self.lift.mul(&other.lift)?)
    }

    pub fn apply(&self, flag: &Flag) -> Result<Flag> {
        flag.map(|z| z.image(&self.lift))
    }

    /// Whether `m` is a nonzero multiple of the canonical lift.
    pub fn is_lifted_by(&self, m: &Matrix) -> bool {
        m.proportionality(&self.lift).is_some()
    }
}

impl fmt::Debug for ProjectiveMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProjectiveMap({})", self.lift)
    }
}

/// `|PGL_n(F_q)| = q^{n(n−1)/2} Π_{i=2}^{n} (q^i − 1)`.
pub fn pgl_order(n: usize, q: u64) -> Option<u128> {
    let q = q as u128;
    let mut acc = q.checked_pow((n * n.saturating_sub(1) / 2) as u32)?;
    for i in 2..=n {
        acc = acc.checked_mul(q.checked_pow(i as u32)? - 1)?;
    }
    Some(acc)
}

/// All of `PGL_n(F_q)` in canonical-lift order.
pub fn enumerate_pgl(field: &Field, n: usize, budget: u128) -> Result<Vec<ProjectiveMap>> {
    let q = field.order();
    let order = pgl_order(n, q).unwrap_or(u128::MAX);
    let candidates = (q as u128).checked_pow((n * n) as u32).unwrap_or(u128::MAX);
    if order > budget || candidates > budget.saturating_mul(q as u128) {
        return Err(Error::BudgetExceeded {
            what: format!("PGL_{n}(F_{q})"),
            needed: order.max(candidates),
            budget,
        });
    }
    let mut out = Vec::with_capacity(order as usize);
    for idx in 0..candidates {
        let mut rest = idx;
        let data: Vec<Elem> = (0..n * n)
            .map(|_| {
                let x = Elem((rest % q as u128) as u32);
                rest /= q as u128;
                x
            })
            .collect();
        if data.iter().find(|x| !x.is_zero()) != Some(&Elem::ONE) {
            continue;
        }
        let m = Matrix::new(field, n, n, data)?;
        if m.is_invertible() {
            out.push(ProjectiveMap { lift: m });
        }
    }
    debug_assert_eq!(out.len() as u128, order);
    Ok(out)
}

/// Search `pgl` for an element inducing `perm` on `flags`.
pub fn is_pgl_induced(
    perm: &[usize],
    flags: &FlagSet,
    pgl: &[ProjectiveMap],
) -> Result<Option<ProjectiveMap>> {
    for g in pgl {
        // cheap rejection on the first few flags before tabulating everything
        let mut ok = true;
        for (i, fl) in flags.flags().iter().enumerate() {
            if flags.index_of(&g.apply(fl)?) != Some(perm[i]) {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(Some(g.clone()));
        }
    }
    Ok(None)
}

/// Composition of index permutations, `(a ∘ b)(i) = a(b(i))`.
pub fn compose_permutations(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&i| a[i]).collect()
}

pub fn invert_permutation(a: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

/// One value `T(σ)` of a twisted action: lift `c_σ` in `b`-coordinates, and
/// whether `a_σ` involves the duality `τ` (then `a_σ = c_σ ∘ τ`).
#[derive(Clone, Debug)]
pub struct ActionEntry {
    sigma: FieldAutomorphism,
    lift: Matrix,
    dual: bool,
    /// `v ↦ M σ(v)` in standard coordinates, `M = P c σ(P)⁻¹` with `P = bᵀ`.
    standard: Option<SemilinearMap>,
}

impl ActionEntry {
    pub fn sigma(&self) -> &FieldAutomorphism {
        &self.sigma
    }

    pub fn lift(&self) -> &Matrix {
        &self.lift
    }

    pub fn is_dual(&self) -> bool {
        self.dual
    }

    /// The semilinear map realizing `T(σ)` (absent for dual entries).
    pub fn semilinear(&self) -> Option<&SemilinearMap> {
        self.standard.as_ref()
    }
}

/// `σ ↦ T(σ) = a_σ ∘ B_b(σ)` for `Γ = Gal(F_{q^k}/F_q)` acting on `F_{q^k}^n`.
#[derive(Clone, Debug)]
pub struct TwistedAction {
    tower: Arc<Tower>,
    basis: Matrix,
    basis_inv: Matrix,
    entries: Vec<ActionEntry>,
}

/// Declarative description of a cocycle, keyed by automorphism exponent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<String>,
    #[serde(default)]
    pub lifts: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub dual: BTreeMap<String, bool>,
}

/// Outcome of [`TwistedAction::validate_cocycle`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocycleReport {
    pub valid: bool,
    /// First `(σ, τ)` exponent pair with `T(στ) ≠ T(σ)T(τ)`.
    pub violation: Option<(usize, usize)>,
    /// Agreement of the lift-level identity `c_{στ} ∝ c_σ·σ(c_τ)` with the flag-level one.
    pub lifts_consistent: bool,
    pub probe_size: usize,
}

impl TwistedAction {
    /// Lifts indexed by exponent; `dual[e]` marks entries composed with `τ`.
    pub fn new(tower: &Arc<Tower>, basis: Matrix, lifts: Vec<Matrix>, dual: Vec<bool>) -> Result<Self> {
        let field = tower.top();
        let k = tower.relative_degree() as usize;
        let n = basis.rows();
        if lifts.len() != k || dual.len() != k {
            return Err(Error::DimensionMismatch(format!(
                "{} lifts for a Galois group of order {k}",
                lifts.len()
            )));
        }
        if basis.field() != field || !basis.is_square() {
            return Err(Error::FieldMismatch("basis must be square over the top field".into()));
        }
        let basis_inv = basis.inverse()?;
        let gal = tower.galois_group();
        let p = basis.transpose();
        let mut entries = Vec::with_capacity(k);
        for (e, (c, d)) in lifts.into_iter().zip(dual).enumerate() {
            if c.rows() != n || c.field() != field {
                return Err(Error::DimensionMismatch(format!("lift {e} has the wrong shape")));
            }
            if !c.is_invertible() {
                return Err(Error::Singular);
            }
            let sigma = gal.element(e);
            let standard = if d {
                None
            } else {
                let m = p.mul(&c)?.mul(&p.conjugate(&sigma).inverse()?)?;
                Some(SemilinearMap::new(sigma.clone(), m)?)
            };
            entries.push(ActionEntry {
                sigma,
                lift: c,
                dual: d,
                standard,
            });
        }
        Ok(TwistedAction {
            tower: Arc::clone(tower),
            basis,
            basis_inv,
            entries,
        })
    }

    /// `a_σ ≡ 1`: the coordinatewise Galois action.
    pub fn trivial(tower: &Arc<Tower>, n: usize) -> Self {
        let f = tower.top();
        let k = tower.relative_degree() as usize;
        Self::new(
            tower,
            Matrix::identity(f, n),
            vec![Matrix::identity(f, n); k],
            vec![false; k],
        )
        .expect("identity data is well formed")
    }

    /// Purely linear lifts relative to the basis `b`.
    pub fn linear(tower: &Arc<Tower>, basis: Matrix, lifts: Vec<Matrix>) -> Result<Self> {
        let k = lifts.len();
        Self::new(tower, basis, lifts, vec![false; k])
    }

    /// The coboundary `a_σ = g·σ(g)⁻¹` (standard basis).
    pub fn coboundary(tower: &Arc<Tower>, g: &Matrix) -> Result<Self> {
        let gal = tower.galois_group();
        let lifts = gal
            .elements()
            .map(|s| g.mul(&g.conjugate(&s).inverse()?))
            .collect::<Result<Vec<_>>>()?;
        Self::linear(tower, Matrix::identity(tower.top(), g.rows()), lifts)
    }

    pub fn from_spec(tower: &Arc<Tower>, n: usize, spec: &CocycleSpec) -> Result<Self> {
        let f = tower.top();
        let k = tower.relative_degree() as usize;
        let basis = match &spec.basis {
            Some(t) => Matrix::parse(f, t)?,
            None => Matrix::identity(f, n),
        };
        let key = |s: &str| -> Result<usize> {
            let e: usize = s
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("exponent key {s:?}")))?;
            if e >= k {
                return Err(Error::OutOfRange(format!("exponent {e} in a group of order {k}")));
            }
            Ok(e)
        };
        let mut lifts = vec![Matrix::identity(f, n); k];
        for (s, m) in &spec.lifts {
            lifts[key(s)?] = Matrix::parse(f, m)?;
        }
        let mut dual = vec![false; k];
        for (s, &d) in &spec.dual {
            dual[key(s)?] = d;
        }
        Self::new(tower, basis, lifts, dual)
    }

    pub fn tower(&self) -> &Arc<Tower> {
        &self.tower
    }

    pub fn field(&self) -> &Field {
        self.tower.top()
    }

    pub fn n(&self) -> usize {
        self.basis.rows()
    }

    pub fn order(&self) -> usize {
        self.entries.len()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn entry(&self, e: usize) -> &ActionEntry {
        &self.entries[e % self.entries.len()]
    }

    pub fn entries(&self) -> &[ActionEntry] {
        &self.entries
    }

    pub fn has_dual_entries(&self) -> bool {
        self.entries.iter().any(|e| e.dual)
    }

    /// `T(σ_e)` on a single subspace; undefined for dual entries.
    pub fn apply_subspace(&self, e: usize, u: &Subspace) -> Result<Subspace> {
        match &self.entry(e).standard {
            Some(s) => s.apply(u),
            None => Err(Error::DimensionSwapping(e)),
        }
    }

    /// `T(σ_e)` on a flag.
    pub fn apply(&self, e: usize, flag: &Flag) -> Result<Flag> {
        let entry = self.entry(e);
        if let Some(s) = &entry.standard {
            return flag.apply(s);
        }
        // dual entry: work in b-coordinates, where τ uses j0 = I
        let coords = flag.map(|z| z.right_mul(&self.basis_inv))?;
        let conj = coords.map(|z| Ok(Subspace::from_matrix(&z.basis().conjugate(&entry.sigma))))?;
        let dual = tau(&conj, &Matrix::identity(self.field(), self.n()))?;
        let moved = dual.map(|z| z.image(&entry.lift))?;
        moved.map(|z| z.right_mul(&self.basis))
    }

    pub fn permutation(&self, e: usize, flags: &FlagSet) -> Result<Vec<usize>> {
        flags.permutation(|fl| self.apply(e, fl))
    }

    /// The lift-level value predicted for `T(σ)T(τ)`: `(c_σ·σ(c_τ)^{±}, ε_σ ⊕ ε_τ)`,
    /// where the exponent is `−ᵀ` when `a_σ` involves `τ` (`τ∘c = c^{−ᵀ}∘τ`).
    fn composed_lift(&self, s: usize, t: usize) -> Result<(Matrix, bool)> {
        let a = self.entry(s);
        let b = self.entry(t);
        let moved = b.lift.conjugate(&a.sigma);
        let moved = if a.dual { moved.inverse()?.transpose() } else { moved };
        Ok((a.lift.mul(&moved)?, a.dual ^ b.dual))
    }

    /// First exponent pair violating `c_{στ} ∝ c_σ·σ(c_τ)` (with the duality rule).
    pub fn lift_violation(&self) -> Result<Option<(usize, usize)>> {
        let k = self.order();
        for s in 0..k {
            for t in 0..k {
                let (m, d) = self.composed_lift(s, t)?;
                let target = self.entry(s + t);
                if d != target.dual || m.proportionality(&target.lift).is_none() {
                    return Ok(Some((s, t)));
                }
            }
        }
        Ok(None)
    }

    /// Check `T(στ) = T(σ)∘T(τ)` on every flag of `probe`.
    pub fn validate_cocycle(&self, probe: &FlagSet) -> Result<CocycleReport> {
        let k = self.order();
        let perms = (0..k)
            .map(|e| self.permutation(e, probe))
            .collect::<Result<Vec<_>>>()?;
        let mut violation = None;
        'outer: for s in 0..k {
            for t in 0..k {
                if perms[(s + t) % k] != compose_permutations(&perms[s], &perms[t]) {
                    violation = Some((s, t));
                    break 'outer;
                }
            }
        }
        let lift_level = self.lift_violation()?;
        Ok(CocycleReport {
            valid: violation.is_none(),
            violation,
            lifts_consistent: lift_level.is_none() == violation.is_none(),
            probe_size: probe.len(),
        })
    }

    /// Flags fixed by every `T(σ)`; errors if the cocycle identity fails on `flags`.
    pub fn fixed_flags(&self, flags: &FlagSet) -> Result<Vec<Flag>> {
        let report = self.validate_cocycle(flags)?;
        if let Some((s, t)) = report.violation {
            return Err(Error::InvalidCocycle(s, t));
        }
        let mut out = Vec::new();
        for fl in flags.flags() {
            let mut fixed = true;
            for e in 1..self.order() {
                if self.apply(e, fl)? != *fl {
                    fixed = false;
                    break;
                }
            }
            if fixed {
                out.push(fl.clone());
            }
        }
        Ok(out)
    }

    /// Orbits of `Γ` on `flags`, as sorted index lists.
    pub fn orbits(&self, flags: &FlagSet) -> Result<Vec<Vec<usize>>> {
        let perms = (0..self.order())
            .map(|e| self.permutation(e, flags))
            .collect::<Result<Vec<_>>>()?;
        let mut seen = vec![false; flags.len()];
        let mut out = Vec::new();
        for i in 0..flags.len() {
            if seen[i] {
                continue;
            }
            let mut orbit: Vec<usize> = perms.iter().map(|p| p[i]).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &j in &orbit {
                seen[j] = true;
            }
            out.push(orbit);
        }
        Ok(out)
    }
}
