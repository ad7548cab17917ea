//! End-to-end acceptance suite. Each criterion prints one PASS/FAIL line and
//! is held to a wall-clock bound; all arithmetic is exact.

use std::collections::{BTreeSet, HashSet};
use std::io::Write;
use std::sync::Arc;
use std::time::{Duration, Instant};

use flagdescent::autgroup::{
    compose_permutations, enumerate_pgl, invert_permutation, is_admissible, tau, ProjectiveMap, TwistedAction,
};
use flagdescent::brauer::{
    index_chain_bs_surface, make_cyclic, quaternion_splits_q, relevant_places, hilbert_symbol, zero_divisor_search,
    Bs2Branch, Divisibility, Place, Rationals, ScalarField, ZeroDivisorSearch,
};
use flagdescent::bundles::{
    descent_count_check, equivariance_check, equivariance_check_unchecked, fiber_action_check,
    split_from_automorphism, BundleContext, SplitCondition,
};
use flagdescent::fields::{make_tower, primitive_root_of_unity, Elem, Field, FiniteField, Tower};
use flagdescent::flags::{
    enumerate_flags, enumerate_subspaces, gaussian_binomial, FlagSet, FlagSignature, SplitSignature,
    DEFAULT_ENUMERATION_BUDGET,
};
use flagdescent::linalg::{Matrix, Subspace};
use flagdescent::Error;

const B: u128 = DEFAULT_ENUMERATION_BUDGET;

fn criterion(id: u32, name: &str, bound: Duration, body: impl FnOnce() -> Result<(), String>) {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let outcome = outcome.and_then(|()| {
        if elapsed <= bound {
            Ok(())
        } else {
            Err(format!("took {elapsed:?}, bound {bound:?}"))
        }
    });
    let line = match &outcome {
        Ok(()) => format!("PASS criterion {id:>2}: {name} ({:.2}s)\n", elapsed.as_secs_f64()),
        Err(e) => format!("FAIL criterion {id:>2}: {name} ({:.2}s): {e}\n", elapsed.as_secs_f64()),
    };
    // Direct write: libtest captures the print macros but not the raw handle.
    let _ = std::io::stderr().write_all(line.as_bytes());
    if let Err(e) = outcome {
        panic!("criterion {id} failed: {e}");
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

/// Every subset of `1..n` as a strictly increasing list.
fn all_signatures(n: usize) -> Vec<Vec<usize>> {
    (1u32..1 << (n - 1))
        .map(|mask| (1..n).filter(|d| mask & (1 << (d - 1)) != 0).collect())
        .collect()
}

#[test]
fn c01_admissibility_classifier() {
    criterion(1, "admissibility classifier on all signatures with n <= 8", secs(1), || {
        let mut checked = 0;
        for n in 2..=8 {
            for dims in all_signatures(n) {
                let sig = FlagSignature::new(n, &dims).map_err(err)?;
                // oracle: the set of dimensions is closed under d ↦ n − d
                let set: BTreeSet<usize> = dims.iter().copied().collect();
                let mirrored: BTreeSet<usize> = dims.iter().map(|d| n - d).collect();
                let expected = !(n >= 3 && set == mirrored);
                ensure(is_admissible(&sig) == expected, || format!("{sig}"))?;
                checked += 1;
            }
        }
        ensure(checked == (2..=8).map(|n| (1 << (n - 1)) - 1).sum::<usize>(), || "coverage".into())?;
        let spot = |n, d: &[usize]| is_admissible(&FlagSignature::new(n, d).unwrap());
        ensure(!spot(3, &[1, 2]) && !spot(4, &[2]) && spot(3, &[1]), || "spot values".into())
    });
}

#[test]
fn c02_tau_on_point_line_flags() {
    criterion(2, "tau is an involution outside PGL_3(F_2) that normalizes it", secs(5), || {
        let f = FiniteField::new(2, 1).map_err(err)?;
        let sig = FlagSignature::new(3, &[1, 2]).map_err(err)?;
        let flags = FlagSet::enumerate(&f, &sig, B).map_err(err)?;
        ensure(flags.len() == 21, || format!("{} flags", flags.len()))?;
        let j0 = Matrix::identity(&f, 3);
        let t = flags.permutation(|fl| tau(fl, &j0)).map_err(err)?;
        ensure(compose_permutations(&t, &t) == (0..21).collect::<Vec<_>>(), || "tau^2 != id".into())?;

        let pgl = enumerate_pgl(&f, 3, B).map_err(err)?;
        ensure(pgl.len() == 168, || format!("|PGL| = {}", pgl.len()))?;
        let perms: Vec<Vec<usize>> =
            pgl.iter().map(|g| flags.permutation(|fl| g.apply(fl))).collect::<Result<_, _>>().map_err(err)?;
        let induced: HashSet<&Vec<usize>> = perms.iter().collect();
        ensure(induced.len() == 168, || "PGL acts unfaithfully".into())?;
        ensure(!induced.contains(&t), || "tau is induced by PGL".into())?;
        let t_inv = invert_permutation(&t);
        for (i, g) in perms.iter().enumerate() {
            let conj = compose_permutations(&t, &compose_permutations(g, &t_inv));
            ensure(induced.contains(&conj), || format!("tau g tau^-1 not in PGL for g #{i}"))?;
        }
        Ok(())
    });
}

/// All subspaces of `F_p^n` as sets of vectors, by closing spans of vector tuples.
fn brute_subspaces(p: u32, n: usize, d: usize) -> BTreeSet<BTreeSet<Vec<u32>>> {
    let vectors: Vec<Vec<u32>> = (0..p.pow(n as u32))
        .map(|mut x| {
            (0..n)
                .map(|_| {
                    let c = x % p;
                    x /= p;
                    c
                })
                .collect()
        })
        .collect();
    let span = |gens: &[&Vec<u32>]| -> BTreeSet<Vec<u32>> {
        let mut out = BTreeSet::new();
        for mut coeffs in 0..p.pow(gens.len() as u32) {
            let mut v = vec![0; n];
            for g in gens {
                let c = coeffs % p;
                coeffs /= p;
                for (x, y) in v.iter_mut().zip(g.iter()) {
                    *x = (*x + c * y) % p;
                }
            }
            out.insert(v);
        }
        out
    };
    let mut out = BTreeSet::new();
    let mut stack = vec![Vec::<&Vec<u32>>::new()];
    while let Some(gens) = stack.pop() {
        if gens.len() == d {
            let s = span(&gens);
            if s.len() == p.pow(d as u32) as usize {
                out.insert(s);
            }
            continue;
        }
        for v in &vectors {
            let mut next = gens.clone();
            next.push(v);
            stack.push(next);
        }
    }
    out
}

#[test]
fn c03_counting() {
    criterion(3, "subspace and flag counts against Gaussian binomials and nested exhaustion", secs(10), || {
        for p in [2u64, 3] {
            let f = FiniteField::new(p, 1).map_err(err)?;
            for n in 0..=5 {
                for d in 0..=n {
                    let subs = enumerate_subspaces(&f, n, d, B).map_err(err)?;
                    let g = gaussian_binomial(n, d, p).map_err(err)?;
                    ensure(subs.len() as u128 == g, || format!("q={p} n={n} d={d}: {} vs {g}", subs.len()))?;
                    let distinct: BTreeSet<&Subspace> = subs.iter().collect();
                    ensure(distinct.len() == subs.len(), || "duplicates".into())?;
                }
            }
        }
        for (p, expected) in [(2u32, 21usize), (3, 52)] {
            let lines = brute_subspaces(p, 3, 1);
            let planes = brute_subspaces(p, 3, 2);
            let nested = lines.iter().map(|l| planes.iter().filter(|w| l.is_subset(w)).count()).sum::<usize>();
            let f = FiniteField::new(p as u64, 1).map_err(err)?;
            let flags = enumerate_flags(&f, &FlagSignature::new(3, &[1, 2]).map_err(err)?, B).map_err(err)?;
            ensure(nested == expected && flags.len() == expected, || {
                format!("q={p}: oracle {nested}, enumerated {}", flags.len())
            })?;
        }
        Ok(())
    });
}

fn bundle_instances() -> Vec<(usize, usize, Vec<usize>, Vec<usize>)> {
    vec![(3, 2, vec![1], vec![]), (3, 1, vec![], vec![2]), (4, 2, vec![1], vec![3])]
}

#[test]
fn c04_vector_bundle_structure() {
    criterion(4, "charts of U are bijective, |U| = |base| q^rank, zero sections", secs(60), || {
        for q in [2u64, 3] {
            let f = FiniteField::new(q, 1).map_err(err)?;
            for (n, n1, lower, upper) in bundle_instances() {
                let tag = format!("q={q} n={n} n1={n1} d={lower:?} e={upper:?}");
                let ctx = BundleContext::standard(&f, SplitSignature::from_parts(n, n1, &lower, &upper).map_err(err)?)
                    .map_err(err)?;
                let mut u = Vec::new();
                for fl in enumerate_flags(&f, ctx.split().full(), B).map_err(err)? {
                    if ctx.in_u(&fl).map_err(err)? {
                        let (base, x) = ctx.coord_psi(&fl).map_err(err)?;
                        ensure(ctx.param_psi(&base.0, &base.1, &x).map_err(err)? == fl, || format!("{tag}: param∘coord"))?;
                        u.push(fl);
                    }
                }
                let bases = ctx.base_points(B).map_err(err)?;
                let coords = ctx.enumerate_coordinates(B).map_err(err)?;
                for ((s, t), x) in &coords {
                    let fl = ctx.param_psi(s, t, x).map_err(err)?;
                    ensure(ctx.in_u(&fl).map_err(err)?, || format!("{tag}: image outside U"))?;
                    ensure(ctx.coord_psi(&fl).map_err(err)? == ((s.clone(), t.clone()), x.clone()), || {
                        format!("{tag}: coord∘param")
                    })?;
                }
                let predicted = bases.len() as u128 * (q as u128).pow(ctx.rank() as u32);
                ensure(u.len() as u128 == predicted && coords.len() as u128 == predicted, || {
                    format!("{tag}: |U| = {}, coords {}, predicted {predicted}", u.len(), coords.len())
                })?;

                // zero section: Z_i = S_i ⊂ V₁ and W_j = V₁ + T_j
                let v1 = Subspace::coordinate(&f, n, &(0..n1).collect::<Vec<_>>());
                let p = lower.len();
                for (s, t) in &bases {
                    let fl = ctx.param_psi(s, t, &ctx.zero_coords()).map_err(err)?;
                    for (i, si) in s.chain().iter().enumerate() {
                        ensure(*fl.get(i) == si.embed_columns(n, 0), || format!("{tag}: Z_{i} off the zero section"))?;
                    }
                    for (j, tj) in t.chain().iter().enumerate() {
                        let w = v1.sum(&tj.embed_columns(n, n1)).map_err(err)?;
                        ensure(*fl.get(p + j) == w, || format!("{tag}: W_{j} off the zero section"))?;
                    }
                }
            }
        }
        Ok(())
    });
}

#[test]
fn c05_kernel_equivalence() {
    criterion(5, "Z_1 <= W_1 iff F(f, g) = 0 on every base point and coordinate pair", secs(30), || {
        let f = FiniteField::new(2, 1).map_err(err)?;
        let ctx = BundleContext::standard(&f, SplitSignature::from_parts(4, 2, &[1], &[3]).map_err(err)?).map_err(err)?;
        let pairs = ctx.all_coordinate_pairs();
        ensure(pairs.len() == 16, || format!("{} coordinate pairs", pairs.len()))?;
        let bases = ctx.base_points(B).map_err(err)?;
        for (s, t) in &bases {
            let mut kernel = 0;
            for x in &pairs {
                let incidence = ctx.lower_in_upper(s, t, x).map_err(err)?;
                let vanishes = ctx.f_map(s, t, x).map_err(err)?.is_zero();
                ensure(incidence == vanishes, || format!("incidence {incidence}, F = 0 {vanishes} at {x:?}"))?;
                kernel += usize::from(vanishes);
            }
            ensure(kernel == 1 << ctx.rank(), || format!("kernel size {kernel}"))?;
        }
        Ok(())
    });
}

struct Instance {
    name: &'static str,
    tower: Arc<Tower>,
    action: TwistedAction,
    ctx: BundleContext,
}

/// Trivial and diagonal cocycles over `F_4/F_2` on `Fl(1<2, F_4³)`, split at `n₁ = 1` and `n₁ = 2`.
fn f4_instances() -> Vec<Instance> {
    let tower = make_tower(2, 1, 2).unwrap();
    let f = tower.top().clone();
    let omega = primitive_root_of_unity(&f, 3).unwrap();
    let twist = Matrix::diagonal(&f, &[omega, Elem::ONE, Elem::ONE]);
    let mut out = Vec::new();
    for (n1, lower, upper) in [(1, vec![1], vec![2]), (2, vec![1, 2], vec![])] {
        let split = SplitSignature::from_parts(3, n1, &lower, &upper).unwrap();
        let ctx = BundleContext::standard(&f, split).unwrap();
        out.push(Instance {
            name: if n1 == 1 { "trivial, n1=1" } else { "trivial, n1=2" },
            tower: tower.clone(),
            action: TwistedAction::trivial(&tower, 3),
            ctx: ctx.clone(),
        });
        out.push(Instance {
            name: if n1 == 1 { "diag(w,1,1), n1=1" } else { "diag(w,1,1), n1=2" },
            tower: tower.clone(),
            action: TwistedAction::linear(&tower, Matrix::identity(&f, 3), vec![Matrix::identity(&f, 3), twist.clone()])
                .unwrap(),
            ctx,
        });
    }
    out
}

#[test]
fn c06_equivariance() {
    criterion(6, "twisted actions preserve U and intertwine the bundle charts", secs(60), || {
        for inst in f4_instances() {
            let r = equivariance_check(&inst.action, &inst.ctx, B).map_err(err)?;
            ensure(r.flags_checked == 105, || format!("{}: {} flags", inst.name, r.flags_checked))?;
            ensure(r.cocycle_valid && r.u_preserved && r.u1_preserved && r.u2_preserved, || {
                format!("{}: cocycle or invariance {r:?}", inst.name)
            })?;
            ensure(r.phi1_intertwined && r.phi2_intertwined && r.psi_intertwined && r.passed, || {
                format!("{}: intertwining {:?}", inst.name, r.violations)
            })?;
            let fr = fiber_action_check(&inst.action, &inst.ctx, B).map_err(err)?;
            ensure(
                fr.transport_matches_action && fr.zero_section_preserved && fr.additive && fr.twisted_homogeneous && fr.passed,
                || format!("{}: fiber action {fr:?}", inst.name),
            )?;
        }
        let inst = &f4_instances()[0];
        let f = inst.tower.top().clone();
        let shear = Matrix::from_ints(&f, &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]).map_err(err)?;
        let bad = TwistedAction::linear(&inst.tower, Matrix::identity(&f, 3), vec![Matrix::identity(&f, 3), shear])
            .map_err(err)?;
        ensure(matches!(equivariance_check(&bad, &inst.ctx, B), Err(Error::NonBlockLift(1))), || {
            "off-block lift accepted".into()
        })?;
        let forced = equivariance_check_unchecked(&bad, &inst.ctx, B).map_err(err)?;
        ensure(forced.cocycle_valid && !forced.passed && forced.violation_count > 0, || {
            "off-block lift passes when forced".into()
        })
    });
}

#[test]
fn c07_splitting() {
    criterion(7, "eigenspace splitting from an automorphism of order 7 > 3!", secs(5), || {
        let check = |tower: &Arc<Tower>, action: &TwistedAction| -> Result<(), String> {
            let top = tower.top().clone();
            let lambda = tower.embed(primitive_root_of_unity(tower.base(), 7).map_err(err)?);
            let h = Matrix::diagonal(&top, &[Elem::ONE, Elem::ONE, lambda]);
            let g = ProjectiveMap::new(&h).map_err(err)?;
            let r = split_from_automorphism(&g, action).map_err(err)?;
            ensure(r.order == 7 && r.condition == SplitCondition::OrderExceedsFactorial, || format!("order {}", r.order))?;
            let d = &r.decomposition;
            ensure(d.n1() + d.n2() == 3 && d.v1().intersect(d.v2()).map_err(err)?.is_zero(), || "not a direct sum".into())?;
            for v in [d.v1(), d.v2()] {
                ensure(v.image(&r.h).map_err(err)? == *v, || "summand not h-stable".into())?;
            }
            ensure(r.block_diagonal.iter().all(|&b| b), || format!("lifts not block-diagonal: {:?}", r.block_diagonal))?;
            ensure(r.nu_orders.iter().all(|&o| o <= 3), || format!("nu orders {:?}", r.nu_orders))?;
            // re-expressed action acts on the same flags
            let flags = FlagSet::enumerate(&top, &FlagSignature::new(3, &[1]).map_err(err)?, B).map_err(err)?;
            for e in 0..action.order() {
                ensure(
                    r.action.permutation(e, &flags).map_err(err)? == action.permutation(e, &flags).map_err(err)?,
                    || "re-expressed action differs".into(),
                )?;
            }
            Ok(())
        };
        let f8 = make_tower(2, 3, 1).map_err(err)?;
        check(&f8, &TwistedAction::trivial(&f8, 3))?;
        let f64 = make_tower(2, 3, 2).map_err(err)?;
        let top = f64.top().clone();
        let alpha = primitive_root_of_unity(&top, 9).map_err(err)?;
        let c = Matrix::diagonal(&top, &[alpha, Elem::ONE, Elem::ONE]);
        let twisted = TwistedAction::linear(&f64, Matrix::identity(&top, 3), vec![Matrix::identity(&top, 3), c])
            .map_err(err)?;
        check(&f64, &twisted)?;

        let scalar = ProjectiveMap::new(&Matrix::scalar(f8.top(), 3, Elem(5))).map_err(err)?;
        ensure(
            split_from_automorphism(&scalar, &TwistedAction::trivial(&f8, 3)) .map(|_| ()) == Err(Error::ScalarPower),
            || "scalar input accepted".into(),
        )
    });
}

#[test]
fn c08_descent_counting() {
    criterion(8, "fixed points in U are counted by fixed base points times q^rank", secs(60), || {
        for inst in f4_instances() {
            let d = descent_count_check(&inst.action, &inst.ctx, B).map_err(err)?;
            ensure(d.passed && d.fixed_in_u == d.predicted && d.fixed_fiber_points == d.predicted, || {
                format!("{}: {d:?}", inst.name)
            })?;
        }
        // trivial cocycles: fixed flags over F_{q²} are exactly the flags over F_q
        for (p, expected) in [(2u64, 21usize), (3, 52)] {
            let tower = make_tower(p, 1, 2).map_err(err)?;
            let sig = FlagSignature::new(3, &[1, 2]).map_err(err)?;
            let flags = FlagSet::enumerate(tower.top(), &sig, B).map_err(err)?;
            let fixed = TwistedAction::trivial(&tower, 3).fixed_flags(&flags).map_err(err)?;
            let base: &Field = tower.base();
            let below = enumerate_flags(base, &sig, B).map_err(err)?;
            ensure(fixed.len() == expected && below.len() == expected, || {
                format!("q={p}: {} fixed, {} rational", fixed.len(), below.len())
            })?;
        }
        Ok(())
    });
}

#[test]
fn c09_cyclic_algebras() {
    criterion(9, "cyclic algebras, zero divisors, and quaternion splitting over Q", secs(30), || {
        let f5 = FiniteField::new(5, 1).map_err(err)?;
        let f4 = FiniteField::new(2, 2).map_err(err)?;
        let w = primitive_root_of_unity(&f4, 3).map_err(err)?;
        for (name, a) in [("(F_5,2,1,1)", make_cyclic(&f5, 2, Elem(1), Elem(1))), ("(F_4,3,w,w)", make_cyclic(&f4, 3, w, w))] {
            let a = a.map_err(err)?;
            let alg = a.algebra();
            alg.check_associativity().map_err(err)?;
            ensure(alg.center().len() == 1, || format!("{name}: center"))?;
            match zero_divisor_search(alg, B) {
                ZeroDivisorSearch::Found { left, right, .. } => ensure(
                    !alg.is_zero_element(&left) && !alg.is_zero_element(&right) && alg.is_zero_element(&alg.mul(&left, &right)),
                    || format!("{name}: bad witness"),
                )?,
                other => return Err(format!("{name}: {other:?}")),
            }
        }
        let q = Rationals;
        let h = make_cyclic(&q, 2, q.from_int(-1), q.from_int(-1)).map_err(err)?;
        h.algebra().check_associativity().map_err(err)?;
        ensure(h.algebra().center().len() == 1, || "Hamilton center".into())?;

        let hamilton = quaternion_splits_q(-1, -1).map_err(err)?;
        ensure(!hamilton.splits && hamilton.ramified == vec![Place::Infinity, Place::Prime(2)], || {
            format!("{hamilton:?}")
        })?;
        for x in (-50i64..=50).filter(|&x| x != 0) {
            ensure(quaternion_splits_q(1, x).map_err(err)?.splits, || format!("(1, {x})"))?;
            ensure(quaternion_splits_q(x, -x).map_err(err)?.splits, || format!("({x}, {})", -x))?;
        }
        for a in (-50i64..=50).filter(|&x| x != 0) {
            for b in (-50i64..=50).filter(|&x| x != 0) {
                let total: i8 = relevant_places(a, b)
                    .into_iter()
                    .map(|v| hilbert_symbol(a, b, v))
                    .product::<Result<i8, _>>()
                    .map_err(err)?;
                ensure(total == 1, || format!("product formula fails at ({a}, {b})"))?;
            }
        }
        Ok(())
    });
}

#[test]
fn c10_bs2_chain() {
    criterion(10, "index chain for Brauer-Severi surfaces covers every branch", secs(1), || {
        let mut seen = BTreeSet::new();
        for bits in 0..8u8 {
            let (trivial, exists, curve_trivial) = (bits & 1 == 1, bits & 2 == 2, bits & 4 == 4);
            let v = index_chain_bs_surface(trivial, exists, curve_trivial);
            ensure(v == index_chain_bs_surface(trivial, exists, curve_trivial), || "nondeterministic".into())?;
            ensure(v.contradiction.is_some() == (!trivial && exists), || format!("{v:?}"))?;
            ensure(v.ruled == (trivial || exists), || format!("{v:?}"))?;
            seen.insert(format!("{:?}", v.branch));
        }
        ensure(seen.len() == 4, || format!("branches {seen:?}"))?;
        let v = index_chain_bs_surface(false, true, false);
        ensure(v.branch == Bs2Branch::NontrivialCurve, || format!("{:?}", v.branch))?;
        ensure(v.divisibility == vec![Divisibility { divisor: 2, dividend: 3, holds: false }], || {
            format!("{:?}", v.divisibility)
        })?;
        let index = |s: &str| v.facts.iter().find(|f| f.subject == s).and_then(|f| f.value);
        ensure(index("X") == Some(3) && index("Q") == Some(2), || format!("{:?}", v.facts))?;
        ensure(index_chain_bs_surface(true, false, false).branch == Bs2Branch::TrivialRuled, || "trivial".into())
    });
}
