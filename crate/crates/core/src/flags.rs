//! Flags, enumeration of flag varieties over `F_q`, and the incidence loci
//! attached to a decomposition `V = V₁ ⊕ V₂`.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fields::{Elem, Field};
use crate::linalg::{Decomposition, Matrix, QuotientChart, SemilinearMap, Subspace};

/// Default cap on the number of objects an enumeration may produce.
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 1 << 20;

/// Strictly increasing dimension list `d₁ < … < d_r` in ambient dimension `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlagSignature {
    n: usize,
    dims: Vec<usize>,
}

impl FlagSignature {
    /// Requires `r ≥ 1`, `0 < d₁` and `d_r < n`.
    pub fn new(n: usize, dims: &[usize]) -> Result<Self> {
        let sig = Self::relaxed(n, dims)?;
        if dims.is_empty() || *dims.last().unwrap() >= n {
            return Err(Error::InvalidSignature(format!(
                "{dims:?} in dimension {n}: need a nonempty list of proper dimensions"
            )));
        }
        Ok(sig)
    }

    /// Allows the empty signature and `d_r = n`; used for base flags of the
    /// bundle charts, where the last space may fill all of `V₁`.
    pub fn relaxed(n: usize, dims: &[usize]) -> Result<Self> {
        let increasing = dims.windows(2).all(|w| w[0] < w[1]);
        if !increasing || dims.first() == Some(&0) || dims.last().is_some_and(|&d| d > n) {
            return Err(Error::InvalidSignature(format!(
                "{dims:?} in dimension {n}"
            )));
        }
        Ok(FlagSignature {
            n,
            dims: dims.to_vec(),
        })
    }

    /// Parse a comma-separated dimension list such as `1,2`.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        Self::new(n, &parse_dims(text)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// `(n − d_r < … < n − d₁)`.
    pub fn dual(&self) -> FlagSignature {
        FlagSignature {
            n: self.n,
            dims: self.dims.iter().rev().map(|&d| self.n - d).collect(),
        }
    }

    /// `d_i + d_{r+1−i} = n` for every `i`.
    pub fn is_self_dual(&self) -> bool {
        *self == self.dual()
    }

    /// Number of points of `Fl(d, F_q^n)`.
    pub fn count(&self, q: u64) -> Result<u128> {
        let mut prev = 0;
        let mut total: u128 = 1;
        for &d in &self.dims {
            total = total
                .checked_mul(gaussian_binomial(self.n - prev, d - prev, q)?)
                .ok_or_else(overflow)?;
            prev = d;
        }
        Ok(total)
    }
}

impl fmt::Display for FlagSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|n={})", self.dims.iter().join(","), self.n)
    }
}

pub fn parse_dims(text: &str) -> Result<Vec<usize>> {
    let t = text.trim();
    if t.is_empty() {
        return Ok(Vec::new());
    }
    t.split([',', '<'])
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("dimension {s:?}: {e}")))
        })
        .collect()
}

fn overflow() -> Error {
    Error::BudgetExceeded {
        what: "count".into(),
        needed: u128::MAX,
        budget: u128::MAX,
    }
}

/// A chain `Z₁ < … < Z_r` with `dim Z_i = d_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flag {
    signature: FlagSignature,
    chain: Vec<Subspace>,
}

impl Flag {
    /// Checks dimensions and containments.
    pub fn new(signature: FlagSignature, chain: Vec<Subspace>) -> Result<Self> {
        if chain.len() != signature.len() {
            return Err(Error::InvalidFlag(format!(
                "{} subspaces for signature {signature}",
                chain.len()
            )));
        }
        for (i, (z, &d)) in chain.iter().zip(signature.dims()).enumerate() {
            if z.ambient_dim() != signature.n() || z.dim() != d {
                return Err(Error::InvalidFlag(format!(
                    "member {i} has dimension {} in F^{}, expected {d} in F^{}",
                    z.dim(),
                    z.ambient_dim(),
                    signature.n()
                )));
            }
        }
        if let Some(i) = chain
            .windows(2)
            .position(|w| !w[0].is_subspace_of(&w[1]))
        {
            return Err(Error::InvalidFlag(format!(
                "member {i} is not contained in member {}",
                i + 1
            )));
        }
        Ok(Flag { signature, chain })
    }

    /// Read the signature off the chain.
    pub fn from_chain(chain: Vec<Subspace>) -> Result<Self> {
        let n = chain
            .first()
            .map(|z| z.ambient_dim())
            .ok_or_else(|| Error::InvalidFlag("empty chain without ambient dimension".into()))?;
        let dims: Vec<usize> = chain.iter().map(|z| z.dim()).collect();
        Self::new(FlagSignature::relaxed(n, &dims)?, chain)
    }

    pub fn empty(n: usize) -> Self {
        Flag {
            signature: FlagSignature { n, dims: vec![] },
            chain: vec![],
        }
    }

    /// `[Z₁];[Z₂];…` with each block in matrix text format.
    pub fn parse(field: &Field, signature: &FlagSignature, text: &str) -> Result<Self> {
        let t = text.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("flag {t:?} must be bracketed blocks")))?;
        let chain = inner
            .split("];[")
            .map(|b| Subspace::parse(field, signature.n(), b))
            .collect::<Result<Vec<_>>>()?;
        Self::new(signature.clone(), chain)
    }

    pub fn signature(&self) -> &FlagSignature {
        &self.signature
    }

    pub fn chain(&self) -> &[Subspace] {
        &self.chain
    }

    pub fn get(&self, i: usize) -> &Subspace {
        &self.chain[i]
    }

    pub fn last(&self) -> Option<&Subspace> {
        self.chain.last()
    }

    /// Apply `s` to every member of the chain.
    pub fn apply(&self, s: &SemilinearMap) -> Result<Flag> {
        let chain = self
            .chain
            .iter()
            .map(|z| s.apply(z))
            .collect::<Result<Vec<_>>>()?;
        Ok(Flag {
            signature: self.signature.clone(),
            chain,
        })
    }

    /// Apply a chain-preserving transformation of subspaces; re-validated.
    pub fn map(&self, f: impl Fn(&Subspace) -> Result<Subspace>) -> Result<Flag> {
        let chain = self.chain.iter().map(f).collect::<Result<Vec<_>>>()?;
        Flag::from_chain_with_n(self.signature.n(), chain)
    }

    fn from_chain_with_n(n: usize, chain: Vec<Subspace>) -> Result<Flag> {
        let dims: Vec<usize> = chain.iter().map(|z| z.dim()).collect();
        let n = chain.first().map_or(n, |z| z.ambient_dim());
        Flag::new(FlagSignature::relaxed(n, &dims)?, chain)
    }

    /// The first `p` members and the remaining ones.
    pub fn split_at(&self, p: usize) -> (Flag, Flag) {
        let n = self.signature.n();
        let (a, b) = self.chain.split_at(p);
        let lower = Flag::from_chain_with_n(n, a.to_vec()).expect("sub-chain of a flag");
        let upper = Flag::from_chain_with_n(n, b.to_vec()).expect("sub-chain of a flag");
        (lower, upper)
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self.chain.iter().map(|z| format!("[{z}]")).collect();
        f.write_str(&blocks.join(";"))
    }
}

/// `[n choose d]_q = Π_{i<d} (q^{n−i} − 1)/(q^{d−i} − 1)`.
pub fn gaussian_binomial(n: usize, d: usize, q: u64) -> Result<u128> {
    if d > n {
        return Err(Error::OutOfRange(format!("d = {d} exceeds n = {n}")));
    }
    if q < 2 {
        return Err(Error::OutOfRange(format!("q = {q} must be at least 2")));
    }
    let q = q as u128;
    let pow = |e: usize| -> Result<u128> { q.checked_pow(e as u32).ok_or_else(overflow) };
    // multiply-then-divide keeps every intermediate an integer
    let mut acc: u128 = 1;
    for i in 0..d {
        let num = pow(n - i)? - 1;
        let den = pow(i + 1)? - 1;
        acc = acc.checked_mul(num).ok_or_else(overflow)? / den;
    }
    Ok(acc)
}

fn check_budget(what: &str, needed: u128, budget: u128) -> Result<()> {
    if needed > budget {
        return Err(Error::BudgetExceeded {
            what: what.into(),
            needed,
            budget,
        });
    }
    Ok(())
}

/// Every `d`-dimensional subspace of `F^n`, once each, in canonical order.
pub fn enumerate_subspaces(field: &Field, n: usize, d: usize, budget: u128) -> Result<Vec<Subspace>> {
    let total = gaussian_binomial(n, d, field.order())?;
    check_budget("subspace enumeration", total, budget)?;
    let q = field.order();
    let mut out = Vec::with_capacity(total as usize);
    for pivots in (0..n).combinations(d) {
        // free entries: right of the row's pivot, outside every pivot column
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| {
                let pivots = &pivots;
                (p + 1..n)
                    .filter(move |c| !pivots.contains(c))
                    .map(move |c| (i, c))
            })
            .collect();
        let mut base = Matrix::zeros(field, d, n);
        for (i, &p) in pivots.iter().enumerate() {
            base.set(i, p, Elem::ONE);
        }
        let fills = (q as u128).pow(free.len() as u32);
        for idx in 0..fills {
            let mut m = base.clone();
            let mut rest = idx;
            for &(r, c) in &free {
                m.set(r, c, Elem((rest % q as u128) as u32));
                rest /= q as u128;
            }
            out.push(Subspace::from_matrix(&m));
        }
    }
    out.sort();
    debug_assert_eq!(out.len() as u128, total);
    Ok(out)
}

/// Every point of `Fl(sig, F^n)`, once each, in canonical order.
///
/// Each member is chosen as the preimage of a subspace of the quotient by
/// the previous member.
pub fn enumerate_flags(field: &Field, sig: &FlagSignature, budget: u128) -> Result<Vec<Flag>> {
    let total = sig.count(field.order())?;
    check_budget("flag enumeration", total, budget)?;
    let n = sig.n();
    let full = Subspace::full(field, n);
    let mut partial: Vec<Vec<Subspace>> = vec![vec![]];
    let mut prev_dim = 0;
    for &d in sig.dims() {
        let mut next = Vec::new();
        let quotient_subspaces = enumerate_subspaces(field, n - prev_dim, d - prev_dim, u128::MAX)?;
        for chain in partial {
            let prev = chain.last().cloned().unwrap_or_else(|| Subspace::zero(field, n));
            let chart = QuotientChart::new(&full, &prev)?;
            for x in &quotient_subspaces {
                let mut c = chain.clone();
                c.push(chart.preimage(x)?);
                next.push(c);
            }
        }
        partial = next;
        prev_dim = d;
    }
    let mut flags: Vec<Flag> = partial
        .into_iter()
        .map(|chain| Flag {
            signature: sig.clone(),
            chain,
        })
        .collect();
    flags.sort();
    Ok(flags)
}

/// Enumerated flags with an index, so that maps on flags become permutations.
#[derive(Clone, Debug)]
pub struct FlagSet {
    flags: Vec<Flag>,
    index: HashMap<Flag, usize>,
}

impl FlagSet {
    pub fn enumerate(field: &Field, sig: &FlagSignature, budget: u128) -> Result<Self> {
        Ok(Self::from_flags(enumerate_flags(field, sig, budget)?))
    }

    pub fn from_flags(flags: Vec<Flag>) -> Self {
        let index = flags.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        FlagSet { flags, index }
    }

    pub fn flags(&self) -> &[Flag] {
        &self.flags
    }

    pub fn len(&self) -> usize {
        self.flags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flags.is_empty()
    }

    pub fn index_of(&self, flag: &Flag) -> Option<usize> {
        self.index.get(flag).copied()
    }

    /// Tabulate a map on flags as a permutation of indices.
    pub fn permutation(&self, f: impl Fn(&Flag) -> Result<Flag>) -> Result<Vec<usize>> {
        self.flags
            .iter()
            .map(|fl| {
                let image = f(fl)?;
                self.index_of(&image).ok_or_else(|| {
                    Error::InvalidFlag(format!("image {image} is not in the flag set"))
                })
            })
            .collect()
    }
}

/// `d₀` cut at `n₁` into a lower part `d = (dims ≤ n₁)` and an upper part
/// `e = (dims > n₁)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitSignature {
    full: FlagSignature,
    n1: usize,
    p: usize,
}

/// Which of the three configurations a split falls into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SplitCase {
    /// Every dimension is at most `n₁` (upper part empty).
    LowerOnly,
    /// Every dimension exceeds `n₁` (lower part empty).
    UpperOnly,
    /// `d₁ ≤ n₁ < d_r`.
    Mixed,
}

impl SplitSignature {
    pub fn new(full: FlagSignature, n1: usize) -> Result<Self> {
        if n1 == 0 || n1 >= full.n() {
            return Err(Error::OutOfRange(format!(
                "split index {n1} must satisfy 0 < n1 < {}",
                full.n()
            )));
        }
        let p = full.dims().iter().take_while(|&&d| d <= n1).count();
        Ok(SplitSignature { full, n1, p })
    }

    /// Build from explicit parts; checks `d_p ≤ n₁ < e₁`.
    pub fn from_parts(n: usize, n1: usize, lower: &[usize], upper: &[usize]) -> Result<Self> {
        let dims: Vec<usize> = lower.iter().chain(upper).copied().collect();
        let split = Self::new(FlagSignature::new(n, &dims)?, n1)?;
        if split.p != lower.len() {
            return Err(Error::InvalidSignature(format!(
                "lower part {lower:?} and upper part {upper:?} do not split at n1 = {n1}"
            )));
        }
        Ok(split)
    }

    pub fn full(&self) -> &FlagSignature {
        &self.full
    }

    pub fn n(&self) -> usize {
        self.full.n()
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n() - self.n1
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn lower(&self) -> &[usize] {
        &self.full.dims()[..self.p]
    }

    pub fn upper(&self) -> &[usize] {
        &self.full.dims()[self.p..]
    }

    pub fn case(&self) -> SplitCase {
        match (self.lower().is_empty(), self.upper().is_empty()) {
            (false, true) => SplitCase::LowerOnly,
            (true, false) => SplitCase::UpperOnly,
            _ => SplitCase::Mixed,
        }
    }

    /// `d_p`, or 0 when the lower part is empty.
    pub fn d_p(&self) -> usize {
        self.lower().last().copied().unwrap_or(0)
    }

    /// `e₁ − n₁`, or `n₂` when the upper part is empty (then `T₁ = V₂`).
    pub fn t1(&self) -> usize {
        self.upper().first().map_or(self.n2(), |&e| e - self.n1)
    }

    /// Signature `d` of the lower base flag, living in `V₁ ≅ F^{n₁}`.
    pub fn lower_base(&self) -> FlagSignature {
        FlagSignature::relaxed(self.n1, self.lower()).expect("lower dims are at most n1")
    }

    /// Signature `e − n₁` of the upper base flag, living in `V₂ ≅ F^{n₂}`.
    pub fn upper_base(&self) -> FlagSignature {
        let shifted: Vec<usize> = self.upper().iter().map(|&e| e - self.n1).collect();
        FlagSignature::relaxed(self.n2(), &shifted).expect("shifted upper dims lie in (0, n2)")
    }
}

impl fmt::Display for SplitSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}|{}; n={}, n1={})",
            self.lower().iter().join(","),
            self.upper().iter().join(","),
            self.n(),
            self.n1
        )
    }
}

/// Incidence data of a flag with respect to `V = V₁ ⊕ V₂`.
///
/// `A₁`: `dim(Z_p ∩ V₂) > 0`; `A₂`: `dim(W₁ ∩ V₂) > e₁ − n₁`. Absent parts
/// make the corresponding condition vacuously false.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchubertMembership {
    pub dim_zp_cap_v2: Option<usize>,
    pub dim_w1_cap_v2: Option<usize>,
    pub in_a1: bool,
    pub in_a2: bool,
    pub in_a: bool,
}

impl SchubertMembership {
    pub fn in_u(&self) -> bool {
        !self.in_a
    }
}

pub fn schubert_membership(
    flag: &Flag,
    d: &Decomposition,
    split: &SplitSignature,
) -> Result<SchubertMembership> {
    if flag.signature() != split.full() {
        return Err(Error::InvalidSignature(format!(
            "flag of signature {} against split {split}",
            flag.signature()
        )));
    }
    if d.n() != split.n() || d.n1() != split.n1() {
        return Err(Error::DimensionMismatch(format!(
            "decomposition with n = {}, n1 = {} against split {split}",
            d.n(),
            d.n1()
        )));
    }
    let p = split.p();
    let dim_zp_cap_v2 = match p {
        0 => None,
        _ => Some(flag.get(p - 1).intersect(d.v2())?.dim()),
    };
    let dim_w1_cap_v2 = match split.upper().is_empty() {
        true => None,
        false => Some(flag.get(p).intersect(d.v2())?.dim()),
    };
    let in_a1 = dim_zp_cap_v2.is_some_and(|k| k > 0);
    let in_a2 = dim_w1_cap_v2.is_some_and(|k| k > split.t1());
    Ok(SchubertMembership {
        dim_zp_cap_v2,
        dim_w1_cap_v2,
        in_a1,
        in_a2,
        in_a: in_a1 || in_a2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::FiniteField;
    use std::collections::BTreeSet;

    fn field(p: u64, k: u32) -> Field {
        FiniteField::new(p, k).unwrap()
    }

    /// Independent oracle: row spaces of every `d × n` matrix, deduplicated.
    fn brute_subspaces(f: &Field, n: usize, d: usize) -> BTreeSet<Subspace> {
        let q = f.order() as usize;
        let cells = n * d;
        let mut out = BTreeSet::new();
        for idx in 0..q.pow(cells as u32) {
            let mut rest = idx;
            let data = (0..cells)
                .map(|_| {
                    let x = Elem((rest % q) as u32);
                    rest /= q;
                    x
                })
                .collect();
            let s = Subspace::from_matrix(&Matrix::new(f, d, n, data).unwrap());
            if s.dim() == d {
                out.insert(s);
            }
        }
        out
    }

    #[test]
    fn gaussian_binomial_examples() {
        assert_eq!(gaussian_binomial(2, 1, 2).unwrap(), 3);
        assert_eq!(gaussian_binomial(7, 0, 5).unwrap(), 1);
        assert_eq!(gaussian_binomial(4, 2, 2).unwrap(), 35);
        assert_eq!(gaussian_binomial(3, 1, 3).unwrap(), 13);
        assert!(gaussian_binomial(2, 3, 2).is_err());
        assert_eq!(brute_subspaces(&field(2, 1), 4, 2).len(), 35);
    }

    #[test]
    fn enumerate_subspace_examples() {
        let f2 = field(2, 1);
        let lines = enumerate_subspaces(&f2, 2, 1, 100).unwrap();
        let expected: Vec<Subspace> = [[0, 1], [1, 0], [1, 1]]
            .iter()
            .map(|v| Subspace::span(&f2, 2, &[v.iter().map(|&x| Elem(x)).collect()]).unwrap())
            .collect();
        assert_eq!(lines, expected);
        assert_eq!(
            enumerate_subspaces(&f2, 3, 3, 100).unwrap(),
            vec![Subspace::full(&f2, 3)]
        );
        assert_eq!(enumerate_subspaces(&field(3, 1), 3, 1, 100).unwrap().len(), 13);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for (p, n) in [(2, 4), (3, 3)] {
            let f = field(p, 1);
            for d in 0..=n {
                let fast: BTreeSet<Subspace> =
                    enumerate_subspaces(&f, n, d, u128::MAX).unwrap().into_iter().collect();
                assert_eq!(fast, brute_subspaces(&f, n, d), "p={p} n={n} d={d}");
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let f = field(3, 1);
        assert!(matches!(
            enumerate_subspaces(&f, 5, 2, 10),
            Err(Error::BudgetExceeded { needed: 1210, .. })
        ));
        let sig = FlagSignature::new(3, &[1, 2]).unwrap();
        assert!(matches!(
            enumerate_flags(&f, &sig, 51),
            Err(Error::BudgetExceeded { needed: 52, .. })
        ));
    }

    #[test]
    fn flag_counts() {
        let sig = FlagSignature::new(3, &[1, 2]).unwrap();
        assert_eq!(enumerate_flags(&field(2, 1), &sig, 1000).unwrap().len(), 21);
        assert_eq!(enumerate_flags(&field(3, 1), &sig, 1000).unwrap().len(), 52);
        let lines = FlagSignature::new(2, &[1]).unwrap();
        assert_eq!(enumerate_flags(&field(2, 1), &lines, 1000).unwrap().len(), 3);
    }

    #[test]
    fn signatures() {
        assert!(FlagSignature::new(3, &[0, 2]).is_err());
        assert!(FlagSignature::new(3, &[2, 1]).is_err());
        assert!(FlagSignature::new(3, &[1, 3]).is_err());
        assert!(FlagSignature::new(3, &[]).is_err());
        assert!(FlagSignature::relaxed(3, &[1, 3]).is_ok());
        assert!(FlagSignature::relaxed(3, &[]).is_ok());
        let s = FlagSignature::new(5, &[1, 3]).unwrap();
        assert_eq!(s.dual().dims(), &[2, 4]);
        assert!(FlagSignature::new(4, &[1, 3]).unwrap().is_self_dual());
    }

    #[test]
    fn flag_text_round_trip() {
        let f = field(2, 2);
        let sig = FlagSignature::new(3, &[1, 2]).unwrap();
        for fl in enumerate_flags(&f, &sig, 1000).unwrap().iter().step_by(7) {
            assert_eq!(Flag::parse(&f, &sig, &fl.to_string()).unwrap(), *fl);
        }
        assert!(Flag::parse(&f, &sig, "[0 1 0];[1 0 0;0 0 1]").is_err());
    }

    #[test]
    fn split_cases() {
        let full = FlagSignature::new(4, &[1, 3]).unwrap();
        let s = SplitSignature::new(full.clone(), 2).unwrap();
        assert_eq!((s.lower(), s.upper()), (&[1][..], &[3][..]));
        assert_eq!(s.case(), SplitCase::Mixed);
        assert_eq!(SplitSignature::new(full.clone(), 3).unwrap().case(), SplitCase::LowerOnly);
        let up = SplitSignature::new(FlagSignature::new(3, &[2]).unwrap(), 1).unwrap();
        assert_eq!(up.case(), SplitCase::UpperOnly);
        assert_eq!(up.upper_base().dims(), &[1]);
        assert!(SplitSignature::from_parts(4, 2, &[3], &[]).is_err());
        assert!(SplitSignature::from_parts(4, 2, &[1], &[3]).is_ok());
    }

    #[test]
    fn schubert_examples() {
        let f = field(2, 1);
        let full = FlagSignature::new(3, &[1, 2]).unwrap();
        let split = SplitSignature::new(full.clone(), 1).unwrap();
        let d = Decomposition::standard(&f, 3, 1).unwrap();
        let flags = enumerate_flags(&f, &full, 1000).unwrap();
        let mut in_u = 0;
        for fl in &flags {
            let m = schubert_membership(fl, &d, &split).unwrap();
            // oracle: the two defining conditions, evaluated directly
            let z1_ok = fl.get(0).intersect(d.v2()).unwrap().is_zero();
            let w1_ok = fl.get(1).sum(d.v2()).unwrap().is_full();
            assert_eq!(m.in_u(), z1_ok && w1_ok);
            assert_eq!(m.in_a, m.in_a1 || m.in_a2);
            in_u += usize::from(m.in_u());
        }
        assert_eq!(in_u, 12);

        // a V₂-line lies in A₁
        let d2 = Decomposition::standard(&f, 3, 2).unwrap();
        let lines = SplitSignature::new(FlagSignature::new(3, &[1]).unwrap(), 2).unwrap();
        let fl = Flag::new(lines.full().clone(), vec![Subspace::coordinate(&f, 3, &[2])]).unwrap();
        let m = schubert_membership(&fl, &d2, &lines).unwrap();
        assert!(m.in_a1 && !m.in_a2 && m.dim_w1_cap_v2.is_none());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]
            #[test]
            fn counts_match_gaussian_binomials(n in 1usize..=5, d in 0usize..=5, p in prop::sample::select(vec![2u64, 3])) {
                prop_assume!(d <= n);
                let f = field(p, 1);
                let subs = enumerate_subspaces(&f, n, d, u128::MAX).unwrap();
                prop_assert_eq!(subs.len() as u128, gaussian_binomial(n, d, p).unwrap());
                prop_assert!(subs.windows(2).all(|w| w[0] < w[1]));
            }

            #[test]
            fn enumerated_flags_are_valid_and_partitioned(
                n in 2usize..=4,
                mask in 1u32..8,
                n1 in 1usize..4,
                p in prop::sample::select(vec![2u64, 3]),
            ) {
                let dims: Vec<usize> = (1..n).filter(|i| mask & (1 << (i - 1)) != 0).collect();
                prop_assume!(!dims.is_empty() && n1 < n);
                let f = field(p, 1);
                let sig = FlagSignature::new(n, &dims).unwrap();
                let flags = enumerate_flags(&f, &sig, 100_000).unwrap();
                prop_assert_eq!(flags.len() as u128, sig.count(p).unwrap());
                let split = SplitSignature::new(sig.clone(), n1).unwrap();
                let d = Decomposition::standard(&f, n, n1).unwrap();
                for fl in &flags {
                    prop_assert!(Flag::new(sig.clone(), fl.chain().to_vec()).is_ok());
                    let m = schubert_membership(fl, &d, &split).unwrap();
                    prop_assert_eq!(m.in_u(), !(m.in_a1 || m.in_a2));
                }
            }
        }
    }
}
