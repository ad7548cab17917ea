//! Index arithmetic for Brauer-Severi surfaces.

use serde::Serialize;

/// What is known about the index of one variety.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexFact {
    pub subject: String,
    pub value: Option<u64>,
    /// Asserted divisors of the index.
    pub divisors: Vec<u64>,
    /// Numbers the index is asserted to divide (degrees of zero-cycles).
    pub multiples: Vec<u64>,
    pub notes: Vec<String>,
}

impl IndexFact {
    pub fn new(subject: &str) -> Self {
        IndexFact { subject: subject.into(), value: None, divisors: Vec::new(), multiples: Vec::new(), notes: Vec::new() }
    }

    pub fn with_value(mut self, value: u64, note: &str) -> Self {
        self.value = Some(value);
        self.notes.push(note.into());
        self
    }

    pub fn with_divisor(mut self, d: u64, note: &str) -> Self {
        self.divisors.push(d);
        self.notes.push(note.into());
        self
    }

    pub fn with_multiple(mut self, k: u64, note: &str) -> Self {
        self.multiples.push(k);
        self.notes.push(note.into());
        self
    }

    /// Every asserted divisor divides the value, which divides every asserted multiple.
    pub fn is_consistent(&self) -> bool {
        self.value.is_none_or(|v| {
            v > 0
                && self.divisors.iter().all(|d| *d > 0 && v % d == 0)
                && self.multiples.iter().all(|k| k % v == 0)
        })
    }
}

/// `divisor | dividend`, evaluated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Divisibility {
    pub divisor: u64,
    pub dividend: u64,
    pub holds: bool,
}

impl Divisibility {
    fn new(divisor: u64, dividend: u64) -> Self {
        Divisibility { divisor, dividend, holds: dividend % divisor == 0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Bs2Branch {
    /// A trivial surface is `ℙ²`, hence rational and ruled.
    TrivialRuled,
    /// Ruled through a nontrivial conic: index divisibility fails.
    NontrivialCurve,
    /// Ruled through a trivial curve: a rational point forces triviality.
    TrivialCurve,
    /// Nontrivial and no ruling: nothing to contradict.
    NotRuled,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bs2Verdict {
    pub surface_trivial: bool,
    pub curve_exists: bool,
    pub curve_trivial: bool,
    pub branch: Bs2Branch,
    pub ruled: bool,
    pub contradiction: Option<String>,
    pub facts: Vec<IndexFact>,
    pub divisibility: Vec<Divisibility>,
    /// Deduction rules used, in order.
    pub rules: Vec<&'static str>,
}

/// Replays the argument that a Brauer-Severi surface is ruled iff it is trivial.
///
/// `curve_exists` stands for a ruling, i.e. a dominant rational map onto a
/// Brauer-Severi curve `Q`; `curve_trivial` says whether `Q ≅ ℙ¹`.
pub fn index_chain_bs_surface(surface_trivial: bool, curve_exists: bool, curve_trivial: bool) -> Bs2Verdict {
    const DIM: u64 = 2;
    let mut facts = Vec::new();
    let mut divisibility = Vec::new();
    let mut rules = Vec::new();
    let verdict = |branch, ruled, contradiction: Option<String>, facts, divisibility, rules| Bs2Verdict {
        surface_trivial,
        curve_exists,
        curve_trivial,
        branch,
        ruled,
        contradiction,
        facts,
        divisibility,
        rules,
    };

    if surface_trivial {
        rules.push("trivial-is-projective-space");
        facts.push(IndexFact::new("X").with_value(1, "X ≅ ℙ² has rational points"));
        return verdict(Bs2Branch::TrivialRuled, true, None, facts, divisibility, rules);
    }

    rules.push("nontrivial-surface-is-minimal");
    rules.push("index-is-minimal-dimension-plus-one");
    let ind_x = DIM + 1;
    facts.push(IndexFact::new("X^min").with_value(DIM, "X nontrivial, so X^min = X"));
    let mut x = IndexFact::new("X").with_value(ind_x, "ind(X) = dim X^min + 1");

    if !curve_exists {
        facts.push(x);
        return verdict(Bs2Branch::NotRuled, false, None, facts, divisibility, rules);
    }

    if curve_trivial {
        rules.push("trivial-curve-gives-rational-point");
        rules.push("chatelet");
        let d = Divisibility::new(ind_x, 1);
        x = x.with_multiple(1, "a rational point is a zero-cycle of degree 1");
        facts.push(x);
        facts.push(IndexFact::new("Q").with_value(1, "Q ≅ ℙ¹"));
        let msg = format!("X has a rational point, so ind(X) = 1, but ind(X) = {ind_x} and {ind_x} ∤ 1");
        divisibility.push(d);
        return verdict(Bs2Branch::TrivialCurve, true, Some(msg), facts, divisibility, rules);
    }

    rules.push("nontrivial-curve-index");
    rules.push("amitsur-similarity");
    rules.push("tensor-power-index-divides");
    let ind_q = 1 + 1;
    facts.push(IndexFact::new("Q").with_value(ind_q, "Q nontrivial conic, ind(Q) = dim Q + 1"));
    facts.push(IndexFact::new("X^⊗m").with_value(ind_q, "Q similar to X^⊗m"));
    x = x.with_divisor(ind_q, "ind(X^⊗m) divides ind(X)");
    let d = Divisibility::new(ind_q, ind_x);
    let msg = format!("{ind_q} = ind(Q) = ind(X^⊗m) divides ind(X) = {ind_x}, but {ind_q} ∤ {ind_x}");
    debug_assert!(!x.is_consistent() && !d.holds);
    facts.push(x);
    divisibility.push(d);
    verdict(Bs2Branch::NontrivialCurve, true, Some(msg), facts, divisibility, rules)
}
