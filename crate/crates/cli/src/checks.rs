//! Registry of named verification checks.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::{Arc, OnceLock};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use flagdescent::autgroup::{
    compose_permutations, enumerate_pgl, invert_permutation, is_admissible, tau, CocycleSpec, ProjectiveMap,
    TwistedAction,
};
use flagdescent::brauer::{
    hilbert_symbol, index_chain_bs_surface, is_norm_finite, make_cyclic_with_root, quaternion_splits_q,
    relevant_places, zero_divisor_search, Bs2Branch, Rationals, ScalarField, StructureAlgebra, ZeroDivisorSearch,
};
use flagdescent::bundles::{
    descent_count_check, equivariance_check, equivariance_check_unchecked, fiber_action_check,
    split_from_automorphism, BundleContext, SplitCondition,
};
use flagdescent::fields::{make_tower_with_budget, primitive_root_of_unity, Elem, Field, FiniteField, Tower};
use flagdescent::flags::{enumerate_flags, enumerate_subspaces, gaussian_binomial, FlagSet, FlagSignature, SplitSignature};
use flagdescent::linalg::{Decomposition, Matrix};
use flagdescent::{Error, Result};

use crate::plan::Budget;

/// Result of a check that ran to completion.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub passed: bool,
    pub counts: BTreeMap<String, Value>,
    pub witnesses: Vec<String>,
}

const MAX_WITNESSES: usize = 16;

impl Outcome {
    fn new() -> Self {
        Outcome { passed: true, ..Default::default() }
    }

    fn count(&mut self, key: &str, value: impl Serialize) {
        self.counts.insert(key.into(), serde_json::to_value(value).expect("counts serialize"));
    }

    fn require(&mut self, cond: bool, witness: impl FnOnce() -> String) {
        if !cond {
            self.passed = false;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(witness());
            }
        }
    }
}

type Runner = Box<dyn Fn(&Value, &Budget) -> Result<Outcome> + Send + Sync>;
type Validator = Box<dyn Fn(&Value) -> std::result::Result<(), String> + Send + Sync>;

pub struct CheckSpec {
    pub id: &'static str,
    pub statement: &'static str,
    pub defaults: Value,
    validate: Validator,
    run: Runner,
}

impl CheckSpec {
    pub fn module(&self) -> &'static str {
        self.id.split_once('.').map_or(self.id, |(m, _)| m)
    }

    pub fn validate(&self, params: &Value) -> std::result::Result<(), String> {
        (self.validate)(params)
    }

    pub fn run(&self, params: &Value, budget: &Budget) -> Result<Outcome> {
        (self.run)(params, budget)
    }
}

fn check<P>(id: &'static str, statement: &'static str, run: fn(&P, &Budget) -> Result<Outcome>) -> CheckSpec
where
    P: DeserializeOwned + Serialize + Default + 'static,
{
    CheckSpec {
        id,
        statement,
        defaults: serde_json::to_value(P::default()).expect("defaults serialize"),
        validate: Box::new(|v| serde_json::from_value::<P>(v.clone()).map(|_| ()).map_err(|e| e.to_string())),
        run: Box::new(move |v, b| {
            let p: P = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
            run(&p, b)
        }),
    }
}

pub fn registry() -> &'static [CheckSpec] {
    static REGISTRY: OnceLock<Vec<CheckSpec>> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        vec![
            check("autgroup.admissibility",
                "For every signature 0 < d_1 < ... < d_r < n with n <= max_n, the classifier reports admissible exactly when not (n >= 3 and d_i + d_{r+1-i} = n for all i).",
                admissibility),
            check("autgroup.tau-involution",
                "The correlation tau = j0 o (duality), j0 = I, maps Fl(d, V) to itself and tau^2 = id on every flag.",
                tau_involution),
            check("autgroup.tau-not-pgl",
                "The permutation induced by tau on Fl(d, V) is induced by no element of PGL(V), so tau is an automorphism outside PGL(V) for self-dual d.",
                tau_not_pgl),
            check("autgroup.tau-normalizes-pgl",
                "For every g in PGL(V), tau g tau^-1 acts on Fl(d, V) as some element of PGL(V).",
                tau_normalizes_pgl),
            check("autgroup.cocycle",
                "The lifts c_sigma define a twisted action: T(sigma tau) = T(sigma) T(tau) on every flag of Fl(d, F_{q^r}^n), agreeing with the lift-level identity c_{sigma tau} ~ c_sigma sigma(c_tau).",
                cocycle),
            check("autgroup.trivial-descent-count",
                "For the trivial cocycle over F_{q^r}/F_q, the flags fixed by every T(sigma) are exactly the F_q-rational flags: |Fl(d, F_{q^r}^n)^Gal| = |Fl(d, F_q^n)|.",
                trivial_descent_count),
            check("flags.subspace-counts",
                "For each q and n <= max_n, 0 <= d <= n, enumerate_subspaces returns [n choose d]_q distinct subspaces.",
                subspace_counts),
            check("flags.flag-count",
                "|Fl(d, F_q^n)| equals the product of Gaussian binomials along the chain (and the expected value when given).",
                flag_count),
            check("bundles.chart-bijection",
                "On U = U_1 cap U_2, psi = (phi_1, phi_2) with fiber coordinates (f, g) is a bijection onto {(S, T, f, g) : F(f, g) = 0}; |U| = |base| q^rank and the zero section gives Z_i = S_i, W_j = V_1 + T_j.",
                chart_bijection),
            check("bundles.kernel-equivalence",
                "For every base point (S, T) and every pair (f, g): Z_p <= W_1 if and only if F(f, g) = u o f - s o g vanishes, so the fiber is E = Ker F.",
                kernel_equivalence),
            check("bundles.equivariance",
                "With block-diagonal lifts, T(sigma) preserves U_1, U_2 and U, and phi_1, phi_2, psi intertwine T(sigma) with the induced action Q(sigma) on the base.",
                equivariance),
            check("bundles.fiber-action",
                "The transported fiber coordinates (f', g') parametrize the T(sigma)-image flag; transport fixes the zero section, is additive and sigma-semilinear on each fiber.",
                fiber_action),
            check("bundles.off-block-rejected",
                "A lift with a nonzero off-diagonal block is rejected, and forcing its diagonal blocks breaks equivariance.",
                off_block_rejected),
            check("bundles.descent-count",
                "|T-fixed flags in U| = sum over Q-fixed base points of q^rank, with q the order of the fixed field.",
                descent_count),
            check("bundles.splitting",
                "A projective automorphism g commuting with the action, with order(g) > n! and eigenvalues in the field, splits V = V_1 + V_2 into h^{n!}-eigenspaces with every lift block-diagonal and ord(nu_sigma) <= n.",
                splitting),
            check("bundles.splitting-scalar-rejected",
                "If h^{n!} is scalar the eigenspace method yields no splitting and reports so.",
                splitting_scalar_rejected),
            check("brauer.cyclic-algebra",
                "The cyclic algebra x1^m = a, x2^m = b, x1 x2 = w x2 x1 is associative on all basis triples with 1-dimensional center; over a finite field it has zero divisors.",
                cyclic_algebra),
            check("brauer.quaternion",
                "(a, b)_Q splits iff the Hilbert symbol is +1 at infinity, 2 and every odd prime dividing ab; the product of all local symbols is +1.",
                quaternion),
            check("brauer.trivial-splittings",
                "(1, b) and (a, -a) split over Q for all nonzero |a|, |b| <= bound.",
                trivial_splittings),
            check("brauer.hilbert-product-formula",
                "prod_v (a, b)_v = +1 for all nonzero |a|, |b| <= bound.",
                hilbert_product),
            check("brauer.norm-surjective",
                "The norm F_{q^r}^x -> F_q^x is surjective, so every b != 0 is a norm and every cyclic algebra over F_q splits.",
                norm_surjective),
            check("brauer.bs2-chain",
                "A Brauer-Severi surface X is ruled iff trivial: nontrivial X is minimal with ind(X) = 3; a ruling over a nontrivial conic Q gives 2 = ind(Q) = ind(X^m) | ind(X) = 3, and over a trivial curve a rational point forces ind(X) = 1.",
                bs2_chain),
        ]
    })
}

pub fn find(id: &str) -> Option<&'static CheckSpec> {
    registry().iter().find(|c| c.id == id)
}

pub fn ids() -> Vec<&'static str> {
    registry().iter().map(|c| c.id).collect()
}

fn field_with_budget(desc: &str, budget: &Budget) -> Result<Field> {
    let head = desc.split_once('/').map_or(desc, |(h, _)| h);
    let (p, k) = head.split_once('^').unwrap_or((head, "1"));
    let bad = || Error::Parse(format!("field descriptor {desc:?}"));
    let p: u64 = p.trim().parse().map_err(|_| bad())?;
    let k: u32 = k.trim().parse().map_err(|_| bad())?;
    FiniteField::with_budget(p, k, budget.max_field_size)?;
    FiniteField::parse_descriptor(desc)
}

fn tower(p: u64, k: u32, r: u32, budget: &Budget) -> Result<Arc<Tower>> {
    make_tower_with_budget(p, k, r, budget.max_field_size)
}

// ---- autgroup ----------------------------------------------------------------

#[derive(Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct MaxN {
    max_n: usize,
}

impl Default for MaxN {
    fn default() -> Self {
        MaxN { max_n: 8 }
    }
}

fn admissibility(p: &MaxN, _: &Budget) -> Result<Outcome> {
    let mut out = Outcome::new();
    let mut checked = 0u64;
    for n in 2..=p.max_n {
        for mask in 1u32..1 << (n - 1) {
            let dims: Vec<usize> = (1..n).filter(|d| mask & (1 << (d - 1)) != 0).collect();
            let sig = FlagSignature::new(n, &dims)?;
            let set: BTreeSet<usize> = dims.iter().copied().collect();
            let mirrored: BTreeSet<usize> = dims.iter().map(|d| n - d).collect();
            let expected = !(n >= 3 && set == mirrored);
            out.require(is_admissible(&sig) == expected, || format!("{sig}"));
            checked += 1;
        }
    }
    out.count("signatures", checked);
    Ok(out)
}

#[derive(Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct FlagParams {
    field: String,
    n: usize,
    dims: Vec<usize>,
}

impl Default for FlagParams {
    fn default() -> Self {
        FlagParams { field: "2^1".into(), n: 3, dims: vec![1, 2] }
    }
}

struct TauSetup {
    flags: FlagSet,
    tau: Vec<usize>,
    field: Field,
}

fn tau_setup(p: &FlagParams, b: &Budget) -> Result<TauSetup> {
    let field = field_with_budget(&p.field, b)?;
    let sig = FlagSignature::new(p.n, &p.dims)?;
    let flags = FlagSet::enumerate(&field, &sig, b.max_flags)?;
    let j0 = Matrix::identity(&field, p.n);
    let tau = flags.permutation(|fl| tau(fl, &j0))?;
    Ok(TauSetup { flags, tau, field })
}

fn pgl_permutations(s: &TauSetup, n: usize, b: &Budget) -> Result<Vec<Vec<usize>>> {
    enumerate_pgl(&s.field, n, b.max_flags)?
        .iter()
        .map(|g| s.flags.permutation(|fl| g.apply(fl)))
        .collect()
}

fn tau_involution(p: &FlagParams, b: &Budget) -> Result<Outcome> {
    let s = tau_setup(p, b)?;
    let mut out = Outcome::new();
    let sq = compose_permutations(&s.tau, &s.tau);
    for (i, &j) in sq.iter().enumerate() {
        out.require(i == j, || format!("tau^2 moves {}", s.flags.flags()[i]));
    }
    out.count("flags", s.flags.len());
    Ok(out)
}

fn tau_not_pgl(p: &FlagParams, b: &Budget) -> Result<Outcome> {
    let s = tau_setup(p, b)?;
    let perms = pgl_permutations(&s, p.n, b)?;
    let mut out = Outcome::new();
    let hit = perms.iter().position(|g| *g == s.tau);
    out.require(hit.is_none(), || format!("tau agrees with PGL element #{}", hit.unwrap_or(0)));
    out.count("flags", s.flags.len());
    out.count("pgl_elements", perms.len());
    Ok(out)
}

fn tau_normalizes_pgl(p: &FlagParams, b: &Budget) -> Result<Outcome> {
    let s = tau_setup(p, b)?;
    let perms = pgl_permutations(&s, p.n, b)?;
    let induced: HashSet<&Vec<usize>> = perms.iter().collect();
    let t_inv = invert_permutation(&s.tau);
    let mut out = Outcome::new();
    for (i, g) in perms.iter().enumerate() {
        let conj = compose_permutations(&s.tau, &compose_permutations(g, &t_inv));
        out.require(induced.contains(&conj), || format!("tau g tau^-1 outside PGL for g #{i}"));
    }
    out.count("pgl_elements", perms.len());
    Ok(out)
}

#[derive(Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct CocycleParams {
    p: u64,
    k: u32,
    r: u32,
    n: usize,
    dims: Vec<usize>,
    cocycle: CocycleSpec,
}

impl Default for CocycleParams {
    fn default() -> Self {
        CocycleParams { p: 2, k: 1, r: 2, n: 3, dims: vec![1, 2], cocycle: CocycleSpec::default() }
    }
}

fn cocycle(p: &CocycleParams, b: &Budget) -> Result<Outcome> {
    let t = tower(p.p, p.k, p.r, b)?;
    let action = TwistedAction::from_spec(&t, p.n, &p.cocycle)?;
    let flags = FlagSet::enumerate(t.top(), &FlagSignature::new(p.n, &p.dims)?, b.max_flags)?;
    let report = action.validate_cocycle(&flags)?;
    let mut out = Outcome::new();
    out.require(report.valid, || format!("cocycle identity fails at {:?}", report.violation));
    out.require(report.lifts_consistent, || "lift-level and flag-level verdicts disagree".into());
    out.count("flags", flags.len());
    if report.valid {
        out.count("fixed_flags", action.fixed_flags(&flags)?.len());
        out.count("orbits", action.orbits(&flags)?.len());
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct DescentParams {
    p: u64,
    k: u32,
    r: u32,
    n: usize,
    dims: Vec<usize>,
}

impl Default for DescentParams {
    fn default() -> Self {
        DescentParams { p: 2, k: 1, r: 2, n: 3, dims: vec![1, 2] }
    }
}

fn trivial_descent_count(p: &DescentParams, b: &Budget) -> Result<Outcome> {
    let t = tower(p.p, p.k, p.r, b)?;
    let sig = FlagSignature::new(p.n, &p.dims)?;
    let flags = FlagSet::enumerate(t.top(), &sig, b.max_flags)?;
    let fixed = TwistedAction::trivial(&t, p.n).fixed_flags(&flags)?.len();
    let rational = enumerate_flags(t.base(), &sig, b.max_flags)?.len();
    let mut out = Outcome::new();
    out.require(fixed == rational, || format!("{fixed} fixed flags, {rational} rational flags"));
    out.count("flags", flags.len());
    out.count("fixed_flags", fixed);
    out.count("rational_flags", rational);
    Ok(out)
}

// ---- flags -------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct SubspaceCountParams {
    qs: Vec<u64>,
    max_n: usize,
}

impl Default for SubspaceCountParams {
    fn default() -> Self {
        SubspaceCountParams { qs: vec![2, 3], max_n: 5 }
    }
}

fn subspace_counts(p: &SubspaceCountParams, b: &Budget) -> Result<Outcome> {
    let mut out = Outcome::new();
    let mut total: u128 = 0;
    for &q in &p.qs {
        let f = field_with_budget(&q.to_string(), b)?;
        for n in 0..=p.max_n {
            for d in 0..=n {
                let subs = enumerate_subspaces(&f, n, d, b.max_flags)?;
                let g = gaussian_binomial(n, d, q)?;
                let distinct = subs.iter().collect::<BTreeSet<_>>().len();
                out.require(subs.len() as u128 == g && distinct == subs.len(), || {
                    format!("q={q} n={n} d={d}: {} enumerated, {distinct} distinct, expected {g}", subs.len())
                });
                total += subs.len() as u128;
            }
        }
    }
    out.count("subspaces", total);
    Ok(out)
}

#[derive(Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct FlagCountParams {
    field: String,
    n: usize,
    dims: Vec<usize>,
    expected: Option<u128>,
}

impl Default for FlagCountParams {
    fn default() -> Self {
        FlagCountParams { field: "2^1".into(), n: 3, dims: vec![1, 2], expected: Some(21) }
    }
}

fn flag_count(p: &FlagCountParams, b: &Budget) -> Result<Outcome> {
    let f = field_with_budget(&p.field, b)?;
    let sig = FlagSignature::new(p.n, &p.dims)?;
    let formula = sig.count(f.order())?;
    let flags = enumerate_flags(&f, &sig, b.max_flags)?;
    let mut out = Outcome::new();
    out.require(flags.len() as u128 == formula, || format!("{} enumerated, formula {formula}", flags.len()));
    if let Some(e) = p.expected {
        out.require(formula == e, || format!("formula {formula}, expected {e}"));
    }
    out.count("flags", flags.len());
    Ok(out)
}

// ---- bundles -----------------------------------------------------------------

#[derive(Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct BundleParams {
    p: u64,
    k: u32,
    /// Degree of the Galois extension; 1 means no twisting.
    r: u32,
    n: usize,
    n1: usize,
    lower: Vec<usize>,
    upper: Vec<usize>,
    /// Rows spanning V_1 then V_2; standard basis when absent.
    basis: Option<String>,
    /// Twisted action; trivial when absent.
    cocycle: Option<CocycleSpec>,
}

impl Default for BundleParams {
    fn default() -> Self {
        BundleParams {
            p: 2,
            k: 1,
            r: 1,
            n: 4,
            n1: 2,
            lower: vec![1],
            upper: vec![3],
            basis: None,
            cocycle: None,
        }
    }
}

struct BundleSetup {
    ctx: BundleContext,
    action: TwistedAction,
}

fn bundle_setup(p: &BundleParams, b: &Budget) -> Result<BundleSetup> {
    let t = tower(p.p, p.k, p.r, b)?;
    let f = t.top().clone();
    let split = SplitSignature::from_parts(p.n, p.n1, &p.lower, &p.upper)?;
    let ctx = match &p.basis {
        Some(text) => BundleContext::new(Decomposition::new(Matrix::parse(&f, text)?, p.n1)?, split)?,
        None => BundleContext::standard(&f, split)?,
    };
    let action = match &p.cocycle {
        Some(spec) => TwistedAction::from_spec(&t, p.n, spec)?,
        None => TwistedAction::trivial(&t, p.n),
    };
    Ok(BundleSetup { ctx, action })
}

fn chart_bijection(p: &BundleParams, b: &Budget) -> Result<Outcome> {
    let BundleSetup { ctx, .. } = bundle_setup(p, b)?;
    let f = ctx.field().clone();
    let mut out = Outcome::new();
    let mut u = 0u128;
    for fl in enumerate_flags(&f, ctx.split().full(), b.max_flags)? {
        if ctx.in_u(&fl)? {
            let (base, x) = ctx.coord_psi(&fl)?;
            out.require(ctx.param_psi(&base.0, &base.1, &x)? == fl, || format!("param(coord({fl})) differs"));
            u += 1;
        }
    }
    let bases = ctx.base_points(b.max_flags)?;
    let coords = ctx.enumerate_coordinates(b.max_flags)?;
    for ((s, t), x) in &coords {
        let fl = ctx.param_psi(s, t, x)?;
        out.require(ctx.in_u(&fl)?, || format!("param lands outside U at {fl}"));
        out.require(ctx.coord_psi(&fl)? == ((s.clone(), t.clone()), x.clone()), || format!("coord(param) differs at {fl}"));
    }
    let v1 = ctx.decomposition().v1().clone();
    let zero = ctx.zero_coords();
    let lower = ctx.split().lower().len();
    for (s, t) in &bases {
        let fl = ctx.param_psi(s, t, &zero)?;
        let lifted_s = ctx.param_phi1(s, &zero.f)?;
        for (i, z) in lifted_s.chain().iter().enumerate() {
            out.require(fl.get(i) == z && z.is_subspace_of(&v1), || format!("zero section: Z_{i} of {fl}"));
        }
        for j in 0..t.chain().len() {
            out.require(v1.is_subspace_of(fl.get(lower + j)), || format!("zero section: W_{j} of {fl} misses V_1"));
        }
    }
    let predicted = bases.len() as u128 * u128::from(f.order()).pow(ctx.rank() as u32);
    out.require(u == predicted && coords.len() as u128 == predicted, || {
        format!("|U| = {u}, coordinates {}, predicted {predicted}", coords.len())
    });
    out.count("flags_in_u", u);
    out.count("base_points", bases.len());
    out.count("rank", ctx.rank());
    Ok(out)
}

fn kernel_equivalence(p: &BundleParams, b: &Budget) -> Result<Outcome> {
    let BundleSetup { ctx, .. } = bundle_setup(p, b)?;
    let pairs = ctx.all_coordinate_pairs();
    let bases = ctx.base_points(b.max_flags)?;
    let mut out = Outcome::new();
    let q = u128::from(ctx.field().order());
    for (s, t) in &bases {
        let mut kernel = 0u128;
        for x in &pairs {
            let incidence = ctx.lower_in_upper(s, t, x)?;
            let vanishes = ctx.f_map(s, t, x)?.is_zero();
            out.require(incidence == vanishes, || {
                format!("base ({s} | {t}), f = {}, g = {}: Z_p <= W_1 is {incidence}, F = 0 is {vanishes}", x.f, x.g)
            });
            kernel += u128::from(vanishes);
        }
        out.require(kernel == q.pow(ctx.rank() as u32), || format!("kernel of size {kernel} over ({s} | {t})"));
    }
    out.count("base_points", bases.len());
    out.count("pairs_per_base", pairs.len());
    out.count("rank", ctx.rank());
    Ok(out)
}

fn equivariance(p: &BundleParams, b: &Budget) -> Result<Outcome> {
    let s = bundle_setup(p, b)?;
    let r = equivariance_check(&s.action, &s.ctx, b.max_flags)?;
    let mut out = Outcome::new();
    out.require(r.passed, || format!("{r:?}"));
    out.witnesses.extend(r.violations.iter().take(MAX_WITNESSES).map(|v| format!("{v:?}")));
    out.count("flags", r.flags_checked);
    out.count("flags_in_u", r.flags_in_u);
    out.count("violations", r.violation_count);
    Ok(out)
}

fn fiber_action(p: &BundleParams, b: &Budget) -> Result<Outcome> {
    let s = bundle_setup(p, b)?;
    let r = fiber_action_check(&s.action, &s.ctx, b.max_flags)?;
    let mut out = Outcome::new();
    out.require(r.passed, || format!("{r:?}"));
    out.count("base_points", r.base_points);
    out.count("fiber_points", r.fiber_points);
    out.count("violations", r.violation_count);
    Ok(out)
}

/// Same fields as [`BundleParams`], defaulting to a shear lift over `F_4/F_2`.
#[derive(Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct OffBlockParams {
    p: u64,
    k: u32,
    r: u32,
    n: usize,
    n1: usize,
    lower: Vec<usize>,
    upper: Vec<usize>,
    basis: Option<String>,
    cocycle: Option<CocycleSpec>,
}

impl Default for OffBlockParams {
    fn default() -> Self {
        let mut lifts = BTreeMap::new();
        lifts.insert("1".to_string(), "1 1 0; 0 1 0; 0 0 1".to_string());
        OffBlockParams {
            p: 2,
            k: 1,
            r: 2,
            n: 3,
            n1: 1,
            lower: vec![1],
            upper: vec![2],
            basis: None,
            cocycle: Some(CocycleSpec { basis: None, lifts, dual: BTreeMap::new() }),
        }
    }
}

impl OffBlockParams {
    fn bundle(&self) -> BundleParams {
        BundleParams {
            p: self.p,
            k: self.k,
            r: self.r,
            n: self.n,
            n1: self.n1,
            lower: self.lower.clone(),
            upper: self.upper.clone(),
            basis: self.basis.clone(),
            cocycle: self.cocycle.clone(),
        }
    }
}

fn off_block_rejected(p: &OffBlockParams, b: &Budget) -> Result<Outcome> {
    let s = bundle_setup(&p.bundle(), b)?;
    let mut out = Outcome::new();
    match equivariance_check(&s.action, &s.ctx, b.max_flags) {
        Err(Error::NonBlockLift(e)) => out.count("rejected_exponent", e),
        Err(e) => return Err(e),
        Ok(_) => out.require(false, || "off-block lift accepted".into()),
    }
    let forced = equivariance_check_unchecked(&s.action, &s.ctx, b.max_flags)?;
    out.require(!forced.passed, || "forced diagonal blocks still pass".into());
    out.count("forced_violations", forced.violation_count);
    Ok(out)
}

fn descent_count(p: &BundleParams, b: &Budget) -> Result<Outcome> {
    let s = bundle_setup(p, b)?;
    let r = descent_count_check(&s.action, &s.ctx, b.max_flags)?;
    let mut out = Outcome::new();
    out.require(r.passed, || format!("{r:?}"));
    out.count("fixed_in_u", r.fixed_in_u);
    out.count("fixed_base_points", r.fixed_base_points);
    out.count("predicted", r.predicted);
    out.count("base_field_order", r.base_field_order);
    Ok(out)
}

#[derive(Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct SplittingParams {
    p: u64,
    k: u32,
    r: u32,
    n: usize,
    /// `g = diag(1, …, 1, λ)` with `λ` the least base-field element of this order.
    eigen_order: u64,
    /// Lift `c_1 = diag(α, 1, …, 1)`, `α` the least top-field element of this order.
    twist_order: Option<u64>,
}

impl Default for SplittingParams {
    fn default() -> Self {
        SplittingParams { p: 2, k: 3, r: 1, n: 3, eigen_order: 7, twist_order: None }
    }
}

fn diagonal_twist(t: &Arc<Tower>, n: usize, order: u64) -> Result<TwistedAction> {
    let f = t.top().clone();
    let alpha = primitive_root_of_unity(&f, order)?;
    let mut d = vec![Elem::ONE; n];
    d[0] = alpha;
    let c = Matrix::diagonal(&f, &d);
    let gal = t.galois_group();
    // c_e = c σ(c) ⋯ σ^{e−1}(c)
    let mut lifts = vec![Matrix::identity(&f, n)];
    for e in 1..gal.order() {
        let prev = lifts[e - 1].clone();
        lifts.push(prev.mul(&c.conjugate(&gal.element(e - 1)))?);
    }
    TwistedAction::linear(t, Matrix::identity(&f, n), lifts)
}

fn splitting(p: &SplittingParams, b: &Budget) -> Result<Outcome> {
    let t = tower(p.p, p.k, p.r, b)?;
    let f = t.top().clone();
    let action = match p.twist_order {
        Some(o) => diagonal_twist(&t, p.n, o)?,
        None => TwistedAction::trivial(&t, p.n),
    };
    let mut out = Outcome::new();
    out.require(action.lift_violation()?.is_none(), || "twist is not a cocycle".into());
    let lambda = t.embed(primitive_root_of_unity(t.base(), p.eigen_order)?);
    let mut d = vec![Elem::ONE; p.n];
    d[p.n - 1] = lambda;
    let g = ProjectiveMap::new(&Matrix::diagonal(&f, &d))?;
    let r = split_from_automorphism(&g, &action)?;
    let dec = &r.decomposition;
    out.require(dec.v1().intersect(dec.v2())?.is_zero() && dec.n1() + dec.n2() == p.n, || "not a direct sum".into());
    for v in [dec.v1(), dec.v2()] {
        out.require(v.image(&r.h)? == *v, || format!("summand {v} not h-stable"));
    }
    out.require(r.block_diagonal.iter().all(|&x| x), || format!("block-diagonal: {:?}", r.block_diagonal));
    out.require(r.nu_orders.iter().all(|&o| o as usize <= p.n), || format!("nu orders {:?}", r.nu_orders));
    out.require(r.condition == SplitCondition::OrderExceedsFactorial, || format!("condition {:?}", r.condition));
    out.count("order", r.order);
    out.count("n1", dec.n1());
    out.count("nu_orders", &r.nu_orders);
    out.count("condition", r.condition);
    Ok(out)
}

#[derive(Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct ScalarParams {
    p: u64,
    k: u32,
    n: usize,
}

impl Default for ScalarParams {
    fn default() -> Self {
        ScalarParams { p: 2, k: 3, n: 3 }
    }
}

fn splitting_scalar_rejected(p: &ScalarParams, b: &Budget) -> Result<Outcome> {
    let t = tower(p.p, p.k, 1, b)?;
    let f = t.top().clone();
    let c = f.as_ref().elements().last().expect("nonempty field");
    let g = ProjectiveMap::new(&Matrix::scalar(&f, p.n, c))?;
    let mut out = Outcome::new();
    let r = split_from_automorphism(&g, &TwistedAction::trivial(&t, p.n));
    out.require(matches!(r, Err(Error::ScalarPower)), || format!("got {:?}", r.map(|s| s.order)));
    Ok(out)
}

// ---- brauer ------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct CyclicParams {
    /// `p^k`, or `Q`.
    field: String,
    m: usize,
    /// Field elements; `w` stands for the primitive root of unity used.
    a: String,
    b: String,
}

impl Default for CyclicParams {
    fn default() -> Self {
        CyclicParams { field: "5^1".into(), m: 2, a: "1".into(), b: "1".into() }
    }
}

fn cyclic_outcome<F: ScalarField>(field: &F, m: usize, a: F::Elem, b: F::Elem, w: F::Elem, budget: u128) -> Result<Outcome> {
    let c = make_cyclic_with_root(field, m, a, b, w)?;
    let alg: &StructureAlgebra<F> = c.algebra();
    let mut out = Outcome::new();
    out.require(alg.check_associativity().is_ok(), || "associativity".into());
    let center = alg.center().len();
    out.require(center == 1, || format!("center of dimension {center}"));
    out.count("dimension", alg.dim());
    out.count("center_dimension", center);
    let search = zero_divisor_search(alg, budget);
    match &search {
        ZeroDivisorSearch::Found { left, right, examined } => {
            out.require(alg.is_zero_element(&alg.mul(left, right)), || "witness product is nonzero".into());
            out.count("zero_divisor", format!("({}) * ({}) = 0", alg.format_element(left), alg.format_element(right)));
            out.count("examined", examined);
        }
        ZeroDivisorSearch::NotFound { examined } => {
            // finite fields always split
            out.require(field.elements().is_none(), || format!("no zero divisor among {examined} elements"));
        }
        ZeroDivisorSearch::BudgetExceeded { examined, space } => {
            return Err(Error::BudgetExceeded { what: "zero-divisor search".into(), needed: *space, budget: *examined });
        }
        ZeroDivisorSearch::NotExhaustible { caveat, .. } => out.count("caveat", caveat),
    }
    Ok(out)
}

fn cyclic_algebra(p: &CyclicParams, b: &Budget) -> Result<Outcome> {
    fn run<F: ScalarField>(field: &F, p: &CyclicParams, budget: u128) -> Result<Outcome> {
        let w = field.root_of_unity(p.m)?;
        let parse = |s: &str| if s == "w" { Ok(w.clone()) } else { field.parse(s) };
        cyclic_outcome(field, p.m, parse(&p.a)?, parse(&p.b)?, w.clone(), budget)
    }
    if p.field.eq_ignore_ascii_case("q") {
        run(&Rationals, p, b.max_flags)
    } else {
        run(&field_with_budget(&p.field, b)?, p, b.max_flags)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct QuaternionParams {
    a: i64,
    b: i64,
    expect_split: Option<bool>,
}

impl Default for QuaternionParams {
    fn default() -> Self {
        QuaternionParams { a: -1, b: -1, expect_split: Some(false) }
    }
}

fn quaternion(p: &QuaternionParams, _: &Budget) -> Result<Outcome> {
    let v = quaternion_splits_q(p.a, p.b)?;
    let mut out = Outcome::new();
    if let Some(e) = p.expect_split {
        out.require(v.splits == e, || format!("splits = {}, expected {e}", v.splits));
    }
    out.count("splits", v.splits);
    out.count("ramified", &v.ramified);
    out.count("product", v.product);
    Ok(out)
}

#[derive(Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct Bound {
    bound: i64,
}

impl Default for Bound {
    fn default() -> Self {
        Bound { bound: 50 }
    }
}

fn nonzero(bound: i64) -> impl Iterator<Item = i64> + Clone {
    (-bound..=bound).filter(|&x| x != 0)
}

fn trivial_splittings(p: &Bound, _: &Budget) -> Result<Outcome> {
    let mut out = Outcome::new();
    for x in nonzero(p.bound) {
        out.require(quaternion_splits_q(1, x)?.splits, || format!("(1, {x}) reported non-split"));
        out.require(quaternion_splits_q(x, -x)?.splits, || format!("({x}, {}) reported non-split", -x));
    }
    out.count("pairs", 4 * p.bound);
    Ok(out)
}

fn hilbert_product(p: &Bound, _: &Budget) -> Result<Outcome> {
    let mut out = Outcome::new();
    let mut pairs = 0u64;
    for a in nonzero(p.bound) {
        for b in nonzero(p.bound) {
            let total = relevant_places(a, b).into_iter().map(|v| hilbert_symbol(a, b, v)).product::<Result<i8>>()?;
            out.require(total == 1, || format!("product formula gives {total} at ({a}, {b})"));
            pairs += 1;
        }
    }
    out.count("pairs", pairs);
    Ok(out)
}

#[derive(Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct NormParams {
    p: u64,
    k: u32,
    r: u32,
}

impl Default for NormParams {
    fn default() -> Self {
        NormParams { p: 2, k: 1, r: 2 }
    }
}

fn norm_surjective(p: &NormParams, b: &Budget) -> Result<Outcome> {
    let t = tower(p.p, p.k, p.r, b)?;
    let mut out = Outcome::new();
    for x in t.base().as_ref().elements().skip(1) {
        let w = is_norm_finite(&t, x)?;
        out.require(w.is_norm && w.always_norm, || format!("{} is not a norm", t.base().format_elem(x)));
    }
    out.count("units", t.base().order() - 1);
    Ok(out)
}

#[derive(Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct NoParams {}

fn bs2_chain(_: &NoParams, _: &Budget) -> Result<Outcome> {
    let mut out = Outcome::new();
    let mut branches = BTreeSet::new();
    for bits in 0..8u8 {
        let (trivial, exists, curve_trivial) = (bits & 1 == 1, bits & 2 == 2, bits & 4 == 4);
        let v = index_chain_bs_surface(trivial, exists, curve_trivial);
        out.require(v.contradiction.is_some() == (!trivial && exists), || format!("{v:?}"));
        out.require(v.ruled == (trivial || exists), || format!("{v:?}"));
        branches.insert(serde_json::to_string(&v.branch).expect("branch serializes"));
    }
    let v = index_chain_bs_surface(false, true, false);
    out.require(v.branch == Bs2Branch::NontrivialCurve, || format!("{:?}", v.branch));
    let fact = |s: &str| v.facts.iter().find(|f| f.subject == s).and_then(|f| f.value);
    out.require(fact("X") == Some(3) && fact("Q") == Some(2), || format!("{:?}", v.facts));
    out.require(v.divisibility.iter().any(|d| d.divisor == 2 && d.dividend == 3 && !d.holds), || {
        format!("{:?}", v.divisibility)
    });
    out.count("combinations", 8);
    out.count("branches", branches.len());
    out.count("contradiction", v.contradiction);
    Ok(out)
}

/// Descriptors for the named suites, as `(id, params)`.
pub fn suite(name: &str) -> Option<Vec<(&'static str, Value)>> {
    match name {
        "smoke" => Some(vec![
            ("autgroup.admissibility", json!({"max_n": 6})),
            ("flags.flag-count", json!({"field": "2^1", "n": 3, "dims": [1, 2], "expected": 21})),
            ("bundles.kernel-equivalence", json!({})),
            ("brauer.quaternion", json!({"a": -1, "b": -1, "expect_split": false})),
            ("brauer.bs2-chain", json!({})),
        ]),
        "paper" => {
            let mut v = vec![
                ("autgroup.admissibility", json!({"max_n": 8})),
                ("autgroup.tau-involution", json!({"field": "2^1", "n": 3, "dims": [1, 2]})),
                ("autgroup.tau-not-pgl", json!({"field": "2^1", "n": 3, "dims": [1, 2]})),
                ("autgroup.tau-normalizes-pgl", json!({"field": "2^1", "n": 3, "dims": [1, 2]})),
                ("flags.subspace-counts", json!({"qs": [2, 3], "max_n": 5})),
                ("flags.flag-count", json!({"field": "2^1", "n": 3, "dims": [1, 2], "expected": 21})),
                ("flags.flag-count", json!({"field": "3^1", "n": 3, "dims": [1, 2], "expected": 52})),
            ];
            for q in [2, 3] {
                v.push(("bundles.chart-bijection", json!({"p": q, "n": 3, "n1": 2, "lower": [1], "upper": []})));
                v.push(("bundles.chart-bijection", json!({"p": q, "n": 3, "n1": 1, "lower": [], "upper": [2]})));
                v.push(("bundles.chart-bijection", json!({"p": q, "n": 4, "n1": 2, "lower": [1], "upper": [3]})));
            }
            v.push(("bundles.kernel-equivalence", json!({"p": 2, "n": 4, "n1": 2, "lower": [1], "upper": [3]})));
            // ω = x in F_4
            let twist = json!({"lifts": {"1": "0,1 0 0; 0 1 0; 0 0 1"}});
            for (n1, lower, upper) in [(1, json!([1]), json!([2])), (2, json!([1, 2]), json!([]))] {
                for cocycle in [Value::Null, twist.clone()] {
                    let params = json!({"p": 2, "r": 2, "n": 3, "n1": n1, "lower": lower, "upper": upper, "cocycle": cocycle});
                    v.push(("bundles.equivariance", params.clone()));
                    v.push(("bundles.fiber-action", params.clone()));
                    v.push(("bundles.descent-count", params));
                }
            }
            v.extend([
                ("bundles.off-block-rejected", json!({})),
                ("autgroup.cocycle", json!({"p": 2, "r": 2, "n": 3, "dims": [1, 2], "cocycle": twist})),
                ("autgroup.trivial-descent-count", json!({"p": 2, "r": 2, "n": 3, "dims": [1, 2]})),
                ("autgroup.trivial-descent-count", json!({"p": 3, "r": 2, "n": 3, "dims": [1, 2]})),
                ("bundles.splitting", json!({"p": 2, "k": 3, "r": 1, "n": 3, "eigen_order": 7})),
                ("bundles.splitting", json!({"p": 2, "k": 3, "r": 2, "n": 3, "eigen_order": 7, "twist_order": 9})),
                ("bundles.splitting-scalar-rejected", json!({"p": 2, "k": 3, "n": 3})),
                ("brauer.cyclic-algebra", json!({"field": "5^1", "m": 2, "a": "1", "b": "1"})),
                ("brauer.cyclic-algebra", json!({"field": "2^2", "m": 3, "a": "w", "b": "w"})),
                ("brauer.cyclic-algebra", json!({"field": "Q", "m": 2, "a": "-1", "b": "-1"})),
                ("brauer.quaternion", json!({"a": -1, "b": -1, "expect_split": false})),
                ("brauer.trivial-splittings", json!({"bound": 50})),
                ("brauer.hilbert-product-formula", json!({"bound": 50})),
                ("brauer.norm-surjective", json!({"p": 2, "k": 1, "r": 2})),
                ("brauer.bs2-chain", json!({})),
            ]);
            Some(v)
        }
        _ => None,
    }
}
