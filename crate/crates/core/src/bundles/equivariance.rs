//! Compatibility of a twisted action with the charts: invariance of the
//! loci, intertwining of `φ₁, φ₂, ψ`, the induced semilinear action on fibers,
//! and fixed-point accounting.

use serde::Serialize;

use super::{BasePoint, BundleContext, FiberCoords};
use crate::autgroup::TwistedAction;
use crate::error::{Error, Result};
use crate::fields::{Elem, FieldAutomorphism};
use crate::flags::{enumerate_flags, FlagSet};
use crate::linalg::{Matrix, SemilinearMap};

const MAX_WITNESSES: usize = 16;

/// A failing `(σ, flag)` with the identity that failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub sigma: usize,
    pub point: String,
    pub identity: String,
}

#[derive(Default)]
struct Witnesses {
    count: usize,
    items: Vec<Violation>,
}

impl Witnesses {
    fn record(&mut self, sigma: usize, point: impl ToString, identity: &str) {
        self.count += 1;
        if self.items.len() < MAX_WITNESSES {
            self.items.push(Violation {
                sigma,
                point: point.to_string(),
                identity: identity.into(),
            });
        }
    }
}

/// Per-σ block data: the lift in decomposition coordinates, split as
/// `diag(c₁, c₂)`, and the induced actions `Q₁(σ) = c₁∘σ`, `Q₂(σ) = c₂∘σ`.
#[derive(Clone, Debug)]
pub struct BlockAction {
    sigmas: Vec<FieldAutomorphism>,
    lifts: Vec<Matrix>,
    q1: Vec<SemilinearMap>,
    q2: Vec<SemilinearMap>,
    block: Vec<bool>,
}

impl BlockAction {
    /// Rejects lifts that are not block-diagonal for the context's decomposition.
    pub fn new(action: &TwistedAction, ctx: &BundleContext) -> Result<Self> {
        let b = Self::forced(action, ctx)?;
        if let Some(e) = b.block.iter().position(|&ok| !ok) {
            return Err(Error::NonBlockLift(e));
        }
        Ok(b)
    }

    /// Uses the diagonal blocks even when the off-diagonal blocks are nonzero.
    pub fn forced(action: &TwistedAction, ctx: &BundleContext) -> Result<Self> {
        let d = ctx.decomposition();
        if action.field() != d.field() || action.n() != d.n() {
            return Err(Error::FieldMismatch(
                "twisted action and bundle context live over different spaces".into(),
            ));
        }
        let (n, n1) = (d.n(), d.n1());
        let q = d.basis().transpose();
        let q_inv = q.inverse()?;
        let mut out = BlockAction {
            sigmas: vec![],
            lifts: vec![],
            q1: vec![],
            q2: vec![],
            block: vec![],
        };
        for (e, entry) in action.entries().iter().enumerate() {
            let s = entry.semilinear().ok_or(Error::DimensionSwapping(e))?;
            let sigma = entry.sigma().clone();
            let c = q_inv.mul(s.matrix())?.mul(&q.conjugate(&sigma))?;
            let block = c.submatrix(0..n1, n1..n).is_zero() && c.submatrix(n1..n, 0..n1).is_zero();
            out.q1.push(SemilinearMap::new(sigma.clone(), c.submatrix(0..n1, 0..n1))?);
            out.q2.push(SemilinearMap::new(sigma.clone(), c.submatrix(n1..n, n1..n))?);
            out.sigmas.push(sigma);
            out.lifts.push(c);
            out.block.push(block);
        }
        Ok(out)
    }

    pub fn order(&self) -> usize {
        self.sigmas.len()
    }

    /// Lift of `T(σ_e)` in decomposition coordinates.
    pub fn lift(&self, e: usize) -> &Matrix {
        &self.lifts[e]
    }

    pub fn is_block(&self, e: usize) -> bool {
        self.block[e]
    }

    /// `Q(σ) = Q₁(σ) × Q₂(σ)` on base points.
    pub fn apply_base(&self, e: usize, base: &BasePoint) -> Result<BasePoint> {
        Ok((base.0.apply(&self.q1[e])?, base.1.apply(&self.q2[e])?))
    }

    /// `f ↦ (c₂∘σ)∘f∘(c₁∘σ)⁻¹`, `g ↦ (c̄₂∘σ)∘g∘(c₁∘σ)⁻¹`, landing over `Q(σ)(S, T)`.
    pub fn transport(
        &self,
        ctx: &BundleContext,
        e: usize,
        base: &BasePoint,
        x: &FiberCoords,
    ) -> Result<FiberCoords> {
        let (s, t) = base;
        let image = self.apply_base(e, base)?;
        let q1_inv = self.q1[e].inverse()?;
        let q2 = &self.q2[e];
        let fld = ctx.field();

        let sp = ctx.s_p(s);
        let sp_new = ctx.s_p(&image.0);
        let f_rows = sp_new
            .basis()
            .row_vecs()
            .into_iter()
            .map(|v| {
                let pre = q1_inv.apply_vector(&v)?;
                let a = sp.coords(&pre).ok_or_else(|| {
                    Error::AlgebraCheck("Q1 does not carry S_p onto its image".into())
                })?;
                q2.apply_vector(&x.f.vec_mul(&a)?)
            })
            .collect::<Result<Vec<_>>>()?;
        let f = Matrix::from_rows(fld, ctx.n2(), &f_rows)?;

        let chart = ctx.quotient_chart(t)?;
        let chart_new = ctx.quotient_chart(&image.1)?;
        let g_rows = (0..ctx.n1())
            .map(|i| {
                let mut unit = vec![Elem::ZERO; ctx.n1()];
                unit[i] = Elem::ONE;
                let pre = q1_inv.apply_vector(&unit)?;
                let lifted = chart.lift(&x.g.vec_mul(&pre)?)?;
                chart_new.project(&q2.apply_vector(&lifted)?)
            })
            .collect::<Result<Vec<_>>>()?;
        let g = Matrix::from_rows(fld, chart_new.quotient_dim(), &g_rows)?;
        Ok(FiberCoords { f, g })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivarianceReport {
    pub cocycle_valid: bool,
    pub block_diagonal: Vec<bool>,
    pub flags_checked: usize,
    pub flags_in_u: usize,
    pub u_preserved: bool,
    pub u1_preserved: bool,
    pub u2_preserved: bool,
    pub phi1_intertwined: bool,
    pub phi2_intertwined: bool,
    pub psi_intertwined: bool,
    pub violation_count: usize,
    pub violations: Vec<Violation>,
    pub passed: bool,
}

/// Invariance of `U₁, U₂, U` and `φ∘T(σ) = Q(σ)∘φ` on every flag; lifts
/// must be block-diagonal.
pub fn equivariance_check(
    action: &TwistedAction,
    ctx: &BundleContext,
    budget: u128,
) -> Result<EquivarianceReport> {
    let blocks = BlockAction::new(action, ctx)?;
    scan(action, ctx, &blocks, budget)
}

/// As [`equivariance_check`] but with the diagonal blocks of arbitrary lifts;
/// a negative control for non-block lifts.
pub fn equivariance_check_unchecked(
    action: &TwistedAction,
    ctx: &BundleContext,
    budget: u128,
) -> Result<EquivarianceReport> {
    let blocks = BlockAction::forced(action, ctx)?;
    scan(action, ctx, &blocks, budget)
}

fn scan(
    action: &TwistedAction,
    ctx: &BundleContext,
    blocks: &BlockAction,
    budget: u128,
) -> Result<EquivarianceReport> {
    let flags = FlagSet::from_flags(enumerate_flags(ctx.field(), ctx.split().full(), budget)?);
    let cocycle_valid = action.validate_cocycle(&flags)?.valid;
    let mut w = Witnesses::default();
    let (mut u1_ok, mut u2_ok, mut u_ok) = (true, true, true);
    let (mut phi1_ok, mut phi2_ok, mut psi_ok) = (true, true, true);
    let mut in_u = 0;
    for fl in flags.flags() {
        let (a1, a2) = (ctx.in_u1(fl)?, ctx.in_u2(fl)?);
        in_u += usize::from(a1 && a2);
        for e in 0..action.order() {
            let img = action.apply(e, fl)?;
            let (b1, b2) = (ctx.in_u1(&img)?, ctx.in_u2(&img)?);
            if a1 != b1 {
                u1_ok = false;
                w.record(e, fl, "T(σ)U1 = U1");
            }
            if a2 != b2 {
                u2_ok = false;
                w.record(e, fl, "T(σ)U2 = U2");
            }
            if (a1 && a2) != (b1 && b2) {
                u_ok = false;
                w.record(e, fl, "T(σ)U = U");
            }
            if a1 {
                let lhs = if b1 { Some(ctx.phi1(&img)?) } else { None };
                let rhs = ctx.phi1(fl)?.apply(&blocks.q1[e])?;
                if lhs.as_ref() != Some(&rhs) {
                    phi1_ok = false;
                    w.record(e, fl, "phi1∘T(σ) = Q1(σ)∘phi1");
                }
            }
            if a2 {
                let lhs = if b2 { Some(ctx.phi2(&img)?) } else { None };
                let rhs = ctx.phi2(fl)?.apply(&blocks.q2[e])?;
                if lhs.as_ref() != Some(&rhs) {
                    phi2_ok = false;
                    w.record(e, fl, "phi2∘T(σ) = Q2(σ)∘phi2");
                }
            }
            if a1 && a2 {
                let lhs = if b1 && b2 { Some(ctx.psi(&img)?) } else { None };
                let rhs = blocks.apply_base(e, &ctx.psi(fl)?)?;
                if lhs.as_ref() != Some(&rhs) {
                    psi_ok = false;
                    w.record(e, fl, "psi∘T(σ) = Q(σ)∘psi");
                }
            }
        }
    }
    let passed = cocycle_valid && w.count == 0;
    Ok(EquivarianceReport {
        cocycle_valid,
        block_diagonal: blocks.block.clone(),
        flags_checked: flags.len(),
        flags_in_u: in_u,
        u_preserved: u_ok,
        u1_preserved: u1_ok,
        u2_preserved: u2_ok,
        phi1_intertwined: phi1_ok,
        phi2_intertwined: phi2_ok,
        psi_intertwined: psi_ok,
        violation_count: w.count,
        violations: w.items,
        passed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberActionReport {
    pub base_points: usize,
    pub fiber_points: usize,
    pub transport_matches_action: bool,
    pub zero_section_preserved: bool,
    pub additive: bool,
    pub twisted_homogeneous: bool,
    pub violation_count: usize,
    pub violations: Vec<Violation>,
    pub passed: bool,
}

/// The transported coordinates parametrize the `T(σ)`-image flag, and the
/// transport is additive and `σ`-semilinear on every fiber.
pub fn fiber_action_check(
    action: &TwistedAction,
    ctx: &BundleContext,
    budget: u128,
) -> Result<FiberActionReport> {
    let blocks = BlockAction::new(action, ctx)?;
    let fld = ctx.field().clone();
    let scalars: Vec<Elem> = fld.elements().collect();
    let mut w = Witnesses::default();
    let (mut transport_ok, mut zero_ok, mut add_ok, mut hom_ok) = (true, true, true, true);
    let bases = ctx.base_points(budget)?;
    let mut points = 0;
    for base in &bases {
        let (s, t) = base;
        let fiber = ctx.fiber(s, t)?;
        let image = |e: usize, x: &FiberCoords| blocks.transport(ctx, e, base, x);
        for e in 0..blocks.order() {
            let target = blocks.apply_base(e, base)?;
            let moved = fiber.iter().map(|x| image(e, x)).collect::<Result<Vec<_>>>()?;
            for (x, y) in fiber.iter().zip(&moved) {
                points += 1;
                let lhs = ctx.param_psi(&target.0, &target.1, y);
                let rhs = action.apply(e, &ctx.param_psi(s, t, x)?)?;
                if lhs.as_ref() != Ok(&rhs) {
                    transport_ok = false;
                    w.record(e, format!("{} | {} | {:?}", s, t, x.flatten()), "param∘transport = T(σ)∘param");
                }
                if x.is_zero() && !y.is_zero() {
                    zero_ok = false;
                    w.record(e, format!("{s} | {t}"), "zero section maps to zero section");
                }
                let sigma = &blocks.sigmas[e];
                for &a in &scalars {
                    if image(e, &x.scale(a))? != y.scale(sigma.apply(a)) {
                        hom_ok = false;
                        w.record(e, format!("{:?} * {}", x.flatten(), a.0), "action(αx) = σ(α)action(x)");
                    }
                }
            }
            for (i, x) in fiber.iter().enumerate() {
                for (j, y) in fiber.iter().enumerate().skip(i) {
                    if image(e, &x.add(y)?)? != moved[i].add(&moved[j])? {
                        add_ok = false;
                        w.record(e, format!("{:?} + {:?}", x.flatten(), y.flatten()), "action(x+y) = action(x)+action(y)");
                    }
                }
            }
        }
    }
    Ok(FiberActionReport {
        base_points: bases.len(),
        fiber_points: points,
        transport_matches_action: transport_ok,
        zero_section_preserved: zero_ok,
        additive: add_ok,
        twisted_homogeneous: hom_ok,
        violation_count: w.count,
        passed: w.count == 0,
        violations: w.items,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DescentReport {
    pub equivariance_passed: bool,
    pub base_field_order: u64,
    pub rank: usize,
    /// `|{T-fixed flags in U}|`.
    pub fixed_in_u: u128,
    pub fixed_base_points: usize,
    /// `Σ_{Q-fixed base} q^rank`.
    pub predicted: u128,
    /// Fixed fiber points counted through the transport, summed over fixed bases.
    pub fixed_fiber_points: u128,
    pub passed: bool,
}

/// `|U^T| = Σ_{(S,T) ∈ base^Q} q^{dim E}`, with `q` the order of the fixed field.
pub fn descent_count_check(
    action: &TwistedAction,
    ctx: &BundleContext,
    budget: u128,
) -> Result<DescentReport> {
    let equivariance = equivariance_check(action, ctx, budget)?;
    let blocks = BlockAction::new(action, ctx)?;
    let q = action.tower().base().order();
    let rank = ctx.rank();

    let mut fixed_in_u: u128 = 0;
    for fl in enumerate_flags(ctx.field(), ctx.split().full(), budget)? {
        if !ctx.in_u(&fl)? {
            continue;
        }
        let mut fixed = true;
        for e in 1..action.order() {
            if action.apply(e, &fl)? != fl {
                fixed = false;
                break;
            }
        }
        fixed_in_u += u128::from(fixed);
    }

    let mut fixed_bases = 0;
    let mut fixed_fiber_points: u128 = 0;
    for base in ctx.base_points(budget)? {
        let mut fixed = true;
        for e in 1..blocks.order() {
            if blocks.apply_base(e, &base)? != base {
                fixed = false;
                break;
            }
        }
        if !fixed {
            continue;
        }
        fixed_bases += 1;
        for x in ctx.fiber(&base.0, &base.1)? {
            let mut still = true;
            for e in 1..blocks.order() {
                if blocks.transport(ctx, e, &base, &x)? != x {
                    still = false;
                    break;
                }
            }
            fixed_fiber_points += u128::from(still);
        }
    }
    let predicted = fixed_bases as u128 * (q as u128).pow(rank as u32);
    Ok(DescentReport {
        equivariance_passed: equivariance.passed,
        base_field_order: q,
        rank,
        fixed_in_u,
        fixed_base_points: fixed_bases,
        predicted,
        fixed_fiber_points,
        passed: equivariance.passed && fixed_in_u == predicted && fixed_fiber_points == predicted,
    })
}
