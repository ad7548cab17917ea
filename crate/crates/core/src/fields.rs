//! Finite fields `F_{p^k}`, towers `F_q ⊂ F_{q^k}` and their cyclic Galois groups.
//!
//! Elements are stored as the integer `Σ c_i p^i` of their coefficient vector
//! `(c_0, …, c_{k-1})` over `F_p` in the polynomial basis `1, x, …, x^{k-1}`.
//! That integer is also the canonical element order used whenever a choice has
//! to be made (a root of unity, an eigenvalue, a lift). Moduli are the least
//! monic irreducible polynomial of the requested degree in the same order.
//!
//! Multiplication goes through discrete log tables built at construction, so a
//! field is immutable after [`FiniteField::new`] and can be shared freely.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Shared handle to a finite field.
pub type Field = Arc<FiniteField>;

/// Default cap on the cardinality of fields built through [`make_tower`].
pub const DEFAULT_FIELD_BUDGET: u64 = 1 << 16;

/// An element of some [`FiniteField`], encoded as `Σ c_i p^i`.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A finite field `F_p[x]/(modulus)`.
pub struct FiniteField {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteField({})", self.descriptor())
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

// Polynomials over F_p as little-endian coefficient vectors.

fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = poly_trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let factor = (*r.last().unwrap() as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &c) in m.iter().enumerate() {
            let sub = (factor as u64 * c as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        r = poly_trim(r);
    }
    r
}

fn inv_mod(a: u32, p: u32) -> u32 {
    pow_mod(a as u64, p as u64 - 2, p as u64) as u32
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

fn monic_from_index(index: u64, degree: u32, p: u32) -> Vec<u32> {
    let mut coeffs = Vec::with_capacity(degree as usize + 1);
    let mut rest = index;
    for _ in 0..degree {
        coeffs.push((rest % p as u64) as u32);
        rest /= p as u64;
    }
    coeffs.push(1);
    coeffs
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let m = poly_trim(modulus.to_vec());
    if m.len() < 2 {
        return false;
    }
    let deg = (m.len() - 1) as u32;
    for d in 1..=deg / 2 {
        for idx in 0..(p as u64).pow(d) {
            let divisor = monic_from_index(idx, d, p);
            if poly_rem(&m, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Least monic irreducible of the given degree over `F_p` in canonical order.
pub fn canonical_modulus(p: u32, degree: u32) -> Vec<u32> {
    (0..(p as u64).pow(degree))
        .map(|idx| monic_from_index(idx, degree, p))
        .find(|m| is_irreducible(m, p))
        .expect("irreducible polynomials exist in every degree")
}

impl FiniteField {
    /// The field of order `p^k` with canonical modulus.
    pub fn new(p: u64, k: u32) -> Result<Field> {
        Self::with_budget(p, k, DEFAULT_FIELD_BUDGET)
    }

    pub fn with_budget(p: u64, k: u32, budget: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::ZeroDegree);
        }
        let size = (p as u128).checked_pow(k).unwrap_or(u128::MAX);
        if size > budget as u128 {
            return Err(Error::BudgetExceeded {
                what: format!("field of order {p}^{k}"),
                needed: size,
                budget: budget as u128,
            });
        }
        let modulus = canonical_modulus(p as u32, k);
        Self::build(p as u32, modulus)
    }

    /// The field `F_p[x]/(modulus)`; `modulus` is little-endian and must be monic irreducible.
    pub fn with_modulus(p: u64, modulus: &[u32]) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let m = poly_trim(modulus.iter().map(|&c| c % p as u32).collect());
        if m.len() < 2 || *m.last().unwrap() != 1 || !is_irreducible(&m, p as u32) {
            return Err(Error::ReducibleModulus(modulus.to_vec()));
        }
        let size = (p as u128).pow(m.len() as u32 - 1);
        if size > u32::MAX as u128 / 2 {
            return Err(Error::BudgetExceeded {
                what: "field representation".into(),
                needed: size,
                budget: u32::MAX as u128 / 2,
            });
        }
        Self::build(p as u32, m)
    }

    fn build(p: u32, modulus: Vec<u32>) -> Result<Field> {
        let k = (modulus.len() - 1) as u32;
        let q = p.pow(k);
        let mut field = FiniteField {
            p,
            k,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        let order = (q - 1) as u64;
        let generator = (1..q)
            .find(|&g| field.raw_order(g) == order)
            .expect("multiplicative group of a finite field is cyclic");
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..order {
            exp.push(x);
            log[x as usize] = i as u32;
            x = field.raw_mul(x, generator);
        }
        field.exp = exp;
        field.log = log;
        Ok(Arc::new(field))
    }

    fn digits(&self, x: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.k as usize);
        let mut rest = x;
        for _ in 0..self.k {
            out.push(rest % self.p);
            rest /= self.p;
        }
        out
    }

    fn undigits(&self, coeffs: &[u32]) -> u32 {
        coeffs
            .iter()
            .rev()
            .fold(0u32, |acc, &c| acc * self.p + c % self.p)
    }

    fn raw_mul(&self, a: u32, b: u32) -> u32 {
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u32; 2 * self.k as usize];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % self.p as u64) as u32;
            }
        }
        let mut r = poly_rem(&prod, &self.modulus, self.p);
        r.resize(self.k as usize, 0);
        self.undigits(&r)
    }

    fn raw_order(&self, g: u32) -> u64 {
        let mut x = g;
        let mut n = 1u64;
        while x != 1 {
            x = self.raw_mul(x, g);
            n += 1;
            if n > self.q as u64 {
                return 0;
            }
        }
        n
    }

    pub fn characteristic(&self) -> u64 {
        self.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u64 {
        self.q as u64
    }

    /// Little-endian coefficients of the modulus (monic, length `k + 1`).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// The image of an integer under `Z → F_p ⊂ F`.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem> {
        if coeffs.len() > self.k as usize {
            return Err(Error::FieldMismatch(format!(
                "{} coefficients for a degree-{} field",
                coeffs.len(),
                self.k
            )));
        }
        Ok(Elem(self.undigits(coeffs)))
    }

    pub fn coeffs(&self, x: Elem) -> Vec<u32> {
        self.digits(x.0)
    }

    /// Whether `x` is a valid element encoding for this field.
    pub fn contains(&self, x: Elem) -> bool {
        x.0 < self.q
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.q).map(Elem)
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if self.k == 1 {
            return Elem((a.0 + b.0) % self.p);
        }
        let (mut x, mut y) = (a.0, b.0);
        let (mut out, mut place) = (0u32, 1u32);
        for _ in 0..self.k {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        Elem(out)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 {
            return a;
        }
        if self.k == 1 {
            return Elem((self.p - a.0) % self.p);
        }
        let mut x = a.0;
        let (mut out, mut place) = (0u32, 1u32);
        for _ in 0..self.k {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        Elem(out)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let n = self.q as usize - 1;
        let s = self.log[a.0 as usize] as usize + self.log[b.0 as usize] as usize;
        Elem(self.exp[if s >= n { s - n } else { s }])
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a.0 == 0 {
            return None;
        }
        let n = self.q - 1;
        Some(Elem(self.exp[((n - self.log[a.0 as usize]) % n) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Elem, e: u128) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        let n = (self.q - 1) as u128;
        let l = self.log[a.0 as usize] as u128;
        Elem(self.exp[(l * (e % n) % n) as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: Elem) -> Option<u64> {
        if a.0 == 0 {
            return None;
        }
        let n = (self.q - 1) as u64;
        Some(n / gcd(self.log[a.0 as usize] as u64, n))
    }

    /// Field descriptor `p^k/c0,c1,…,ck` (modulus coefficients little-endian).
    pub fn descriptor(&self) -> String {
        let coeffs: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
        format!("{}^{}/{}", self.p, self.k, coeffs.join(","))
    }

    /// Parse `p^k` (canonical modulus) or `p^k/c0,…,ck`.
    pub fn parse_descriptor(text: &str) -> Result<Field> {
        let bad = || Error::Parse(format!("field descriptor {text:?}"));
        let (head, tail) = match text.split_once('/') {
            Some((h, t)) => (h, Some(t)),
            None => (text, None),
        };
        let (p, k) = match head.split_once('^') {
            Some((p, k)) => (
                p.trim().parse::<u64>().map_err(|_| bad())?,
                k.trim().parse::<u32>().map_err(|_| bad())?,
            ),
            None => (head.trim().parse::<u64>().map_err(|_| bad())?, 1),
        };
        match tail {
            None => FiniteField::new(p, k),
            Some(t) => {
                let coeffs = t
                    .split(',')
                    .map(|c| c.trim().parse::<u32>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>>>()?;
                if coeffs.len() != k as usize + 1 {
                    return Err(bad());
                }
                FiniteField::with_modulus(p, &coeffs)
            }
        }
    }

    /// Comma-separated little-endian coefficients.
    pub fn format_elem(&self, x: Elem) -> String {
        let c: Vec<String> = self.coeffs(x).iter().map(|c| c.to_string()).collect();
        c.join(",")
    }

    pub fn parse_elem(&self, text: &str) -> Result<Elem> {
        let coeffs = text
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<i64>()
                    .map(|v| v.rem_euclid(self.p as i64) as u32)
                    .map_err(|_| Error::Parse(format!("element {text:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.from_coeffs(&coeffs)
    }
}

/// Least element of multiplicative order exactly `m`.
pub fn primitive_root_of_unity(field: &FiniteField, m: u64) -> Result<Elem> {
    let group = field.order() - 1;
    if m == 0 || group % m != 0 {
        return Err(Error::MissingRootOfUnity { m, order: group });
    }
    Ok(field
        .elements()
        .find(|&x| field.multiplicative_order(x) == Some(m))
        .expect("cyclic group has elements of every order dividing its size"))
}

/// `F_q ⊂ F_{q^k}` with an explicit embedding of the base into the top field.
#[derive(Debug)]
pub struct Tower {
    base: Field,
    top: Field,
    relative_degree: u32,
    embedding: Vec<Elem>,
    restriction: HashMap<Elem, Elem>,
}

impl PartialEq for Tower {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base
            && self.top == other.top
            && self.relative_degree == other.relative_degree
    }
}

impl Eq for Tower {}

/// Build `F_{p^b} ⊂ F_{p^{bk}}` and its Galois group.
pub fn make_tower(p: u64, base_degree: u32, relative_degree: u32) -> Result<Arc<Tower>> {
    make_tower_with_budget(p, base_degree, relative_degree, DEFAULT_FIELD_BUDGET)
}

pub fn make_tower_with_budget(
    p: u64,
    base_degree: u32,
    relative_degree: u32,
    budget: u64,
) -> Result<Arc<Tower>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if base_degree == 0 || relative_degree == 0 {
        return Err(Error::ZeroDegree);
    }
    let total = base_degree
        .checked_mul(relative_degree)
        .ok_or(Error::ZeroDegree)?;
    let base = FiniteField::with_budget(p, base_degree, budget)?;
    let top = FiniteField::with_budget(p, total, budget)?;
    Tower::new(base, top)
}

impl Tower {
    /// The tower `base ⊂ top`; requires `deg(top)` to be a multiple of `deg(base)`.
    pub fn new(base: Field, top: Field) -> Result<Arc<Tower>> {
        if base.characteristic() != top.characteristic() || top.degree() % base.degree() != 0 {
            return Err(Error::FieldMismatch(format!(
                "{base} does not embed in {top}"
            )));
        }
        // Send the class of x in the base to the least root of its modulus in the top.
        let modulus = base.modulus().to_vec();
        let eval = |t: Elem| {
            modulus.iter().rev().fold(Elem::ZERO, |acc, &c| {
                top.add(top.mul(acc, t), top.from_int(c as i64))
            })
        };
        let root = top
            .elements()
            .find(|&t| eval(t).is_zero())
            .expect("top field contains a copy of the base");
        let embedding: Vec<Elem> = base
            .elements()
            .map(|x| {
                base.coeffs(x).iter().rev().fold(Elem::ZERO, |acc, &c| {
                    top.add(top.mul(acc, root), top.from_int(c as i64))
                })
            })
            .collect();
        let restriction = base.elements().map(|x| (embedding[x.0 as usize], x)).collect();
        Ok(Arc::new(Tower {
            relative_degree: top.degree() / base.degree(),
            base,
            top,
            embedding,
            restriction,
        }))
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn top(&self) -> &Field {
        &self.top
    }

    pub fn relative_degree(&self) -> u32 {
        self.relative_degree
    }

    pub fn embed(&self, x: Elem) -> Elem {
        self.embedding[x.0 as usize]
    }

    /// Preimage of a top-field element lying in the embedded base.
    pub fn restrict(&self, x: Elem) -> Option<Elem> {
        self.restriction.get(&x).copied()
    }

    pub fn galois_group(self: &Arc<Self>) -> GaloisGroup {
        GaloisGroup {
            tower: Arc::clone(self),
        }
    }

    /// Norm `N(x) = Π_σ σ(x)` from the top field down to the (embedded) base.
    pub fn norm(self: &Arc<Self>, x: Elem) -> Elem {
        self.galois_group()
            .elements()
            .fold(Elem::ONE, |acc, s| self.top.mul(acc, s.apply(x)))
    }
}

/// `Gal(F_{q^k}/F_q)`, cyclic of order `k`, generated by `x ↦ x^q`.
#[derive(Clone, Debug)]
pub struct GaloisGroup {
    tower: Arc<Tower>,
}

impl GaloisGroup {
    pub fn tower(&self) -> &Arc<Tower> {
        &self.tower
    }

    pub fn order(&self) -> usize {
        self.tower.relative_degree as usize
    }

    pub fn element(&self, exponent: usize) -> FieldAutomorphism {
        let k = self.tower.relative_degree as u64;
        let e = exponent as u64 % k;
        let top = Arc::clone(&self.tower.top);
        let n = top.order() - 1;
        let shift = pow_mod(self.tower.base.order(), e, n.max(1)) as u128;
        FieldAutomorphism {
            top,
            base_order: self.tower.base.order(),
            degree: k as u32,
            exponent: e as u32,
            shift,
        }
    }

    pub fn identity(&self) -> FieldAutomorphism {
        self.element(0)
    }

    pub fn generator(&self) -> FieldAutomorphism {
        self.element(1)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldAutomorphism> + '_ {
        (0..self.order()).map(|e| self.element(e))
    }

    /// Elements of the top field fixed by the generator.
    pub fn fixed_field(&self) -> Vec<Elem> {
        let g = self.generator();
        self.tower
            .top
            .elements()
            .filter(|&x| g.apply(x) == x)
            .collect()
    }
}

/// The automorphism `x ↦ x^(q^e)` of `F_{q^k}`.
#[derive(Clone, Debug)]
pub struct FieldAutomorphism {
    top: Field,
    base_order: u64,
    degree: u32,
    exponent: u32,
    shift: u128,
}

impl PartialEq for FieldAutomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.top == other.top
            && self.base_order == other.base_order
            && self.degree == other.degree
            && self.exponent == other.exponent
    }
}

impl Eq for FieldAutomorphism {}

impl FieldAutomorphism {
    /// The identity automorphism of `field`, viewed over itself.
    pub fn identity(field: &Field) -> Self {
        FieldAutomorphism {
            top: Arc::clone(field),
            base_order: field.order(),
            degree: 1,
            exponent: 0,
            shift: 1,
        }
    }

    pub fn field(&self) -> &Field {
        &self.top
    }

    pub fn exponent(&self) -> usize {
        self.exponent as usize
    }

    pub fn group_order(&self) -> usize {
        self.degree as usize
    }

    pub fn is_identity(&self) -> bool {
        self.exponent == 0
    }

    pub fn apply(&self, x: Elem) -> Elem {
        if self.exponent == 0 || x.is_zero() {
            return x;
        }
        self.top.pow(x, self.shift)
    }

    pub fn try_apply(&self, x: Elem) -> Result<Elem> {
        if !self.top.contains(x) {
            return Err(Error::FieldMismatch(format!(
                "element {} is not in {}",
                x.0, self.top
            )));
        }
        Ok(self.apply(x))
    }

    fn with_exponent(&self, e: u32) -> Self {
        let n = self.top.order() - 1;
        FieldAutomorphism {
            top: Arc::clone(&self.top),
            base_order: self.base_order,
            degree: self.degree,
            exponent: e,
            shift: pow_mod(self.base_order, e as u64, n.max(1)) as u128,
        }
    }

    /// `self ∘ other`; exponents add modulo the group order.
    pub fn compose(&self, other: &FieldAutomorphism) -> Result<Self> {
        if self.top != other.top
            || self.base_order != other.base_order
            || self.degree != other.degree
        {
            return Err(Error::FieldMismatch(
                "automorphisms of different towers".into(),
            ));
        }
        Ok(self.with_exponent((self.exponent + other.exponent) % self.degree))
    }

    pub fn inverse(&self) -> Self {
        self.with_exponent((self.degree - self.exponent) % self.degree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_extension_of_f2() {
        let tower = make_tower(2, 1, 2).unwrap();
        assert_eq!(tower.top().order(), 4);
        assert_eq!(tower.top().modulus(), &[1, 1, 1]);
        let gal = tower.galois_group();
        assert_eq!(gal.order(), 2);
        let g = gal.generator();
        assert_eq!(g.compose(&g).unwrap(), gal.identity());
    }

    #[test]
    fn trivial_tower() {
        let tower = make_tower(3, 1, 1).unwrap();
        assert_eq!(tower.base(), tower.top());
        assert_eq!(tower.galois_group().order(), 1);
        assert!(tower.galois_group().generator().is_identity());
        for x in tower.base().elements() {
            assert_eq!(tower.embed(x), x);
        }
    }

    #[test]
    fn fixed_field_of_f8_over_f2() {
        let tower = make_tower(2, 1, 3).unwrap();
        let g = tower.galois_group().generator();
        // exhaust all 8 elements: x^2 = x iff x in {0,1}
        let fixed: Vec<Elem> = tower
            .top()
            .elements()
            .filter(|&x| tower.top().mul(x, x) == x)
            .collect();
        assert_eq!(fixed, vec![Elem(0), Elem(1)]);
        assert_eq!(tower.galois_group().fixed_field(), fixed);
        assert_eq!(g.group_order(), 3);
    }

    #[test]
    fn tower_errors() {
        assert_eq!(make_tower(4, 1, 1).unwrap_err(), Error::NotPrime(4));
        assert_eq!(make_tower(2, 0, 1).unwrap_err(), Error::ZeroDegree);
        assert_eq!(make_tower(2, 1, 0).unwrap_err(), Error::ZeroDegree);
        assert!(matches!(
            make_tower_with_budget(2, 2, 3, 32),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn roots_of_unity() {
        let f3 = FiniteField::new(3, 1).unwrap();
        assert_eq!(primitive_root_of_unity(&f3, 2).unwrap(), Elem(2));
        let f2 = FiniteField::new(2, 1).unwrap();
        assert_eq!(primitive_root_of_unity(&f2, 1).unwrap(), Elem(1));
        let f4 = FiniteField::new(2, 2).unwrap();
        let nonzero_nonone: Vec<Elem> = f4
            .elements()
            .filter(|&x| !x.is_zero() && x != Elem::ONE)
            .collect();
        // both non-identity units of F_4 have order 3; the least is returned
        assert!(nonzero_nonone
            .iter()
            .all(|&x| f4.multiplicative_order(x) == Some(3)));
        assert_eq!(primitive_root_of_unity(&f4, 3).unwrap(), nonzero_nonone[0]);
        assert!(matches!(
            primitive_root_of_unity(&f4, 2),
            Err(Error::MissingRootOfUnity { m: 2, order: 3 })
        ));
    }

    #[test]
    fn frobenius_on_f4() {
        let tower = make_tower(2, 1, 2).unwrap();
        let f4 = tower.top();
        let frob = tower.galois_group().generator();
        let omega = primitive_root_of_unity(f4, 3).unwrap();
        assert_eq!(frob.apply(Elem::ZERO), Elem::ZERO);
        assert_eq!(frob.apply(Elem::ONE), Elem::ONE);
        // with modulus x^2+x+1, x^2 = x+1
        assert_eq!(omega, Elem(2));
        assert_eq!(frob.apply(omega), Elem(3));
        assert_eq!(frob.apply(omega), f4.mul(omega, omega));
    }

    #[test]
    fn apply_rejects_foreign_elements() {
        let tower = make_tower(2, 1, 2).unwrap();
        let frob = tower.galois_group().generator();
        assert!(matches!(frob.try_apply(Elem(9)), Err(Error::FieldMismatch(_))));
    }

    #[test]
    fn canonical_moduli() {
        assert_eq!(canonical_modulus(2, 3), vec![1, 1, 0, 1]);
        assert_eq!(canonical_modulus(3, 2), vec![1, 0, 1]);
        assert!(!is_irreducible(&[1, 0, 1], 2));
        assert!(FiniteField::with_modulus(2, &[1, 0, 1]).is_err());
    }

    #[test]
    fn descriptor_round_trip() {
        let f4 = FiniteField::new(2, 2).unwrap();
        assert_eq!(f4.descriptor(), "2^2/1,1,1");
        let back = FiniteField::parse_descriptor("2^2/1,1,1").unwrap();
        assert_eq!(*back, *f4);
        let f5 = FiniteField::parse_descriptor("5^1").unwrap();
        assert_eq!(f5.order(), 5);
        let x = f4.parse_elem("0,1").unwrap();
        assert_eq!(f4.format_elem(x), "0,1");
        assert!(FiniteField::parse_descriptor("2^2/1,1").is_err());
    }

    #[test]
    fn embedding_is_a_ring_homomorphism() {
        let tower = make_tower(2, 2, 2).unwrap();
        let (b, t) = (tower.base(), tower.top());
        for x in b.elements() {
            for y in b.elements() {
                assert_eq!(tower.embed(b.add(x, y)), t.add(tower.embed(x), tower.embed(y)));
                assert_eq!(tower.embed(b.mul(x, y)), t.mul(tower.embed(x), tower.embed(y)));
            }
        }
    }

    #[test]
    fn fixed_field_equals_embedded_base_exhaustively() {
        for (p, b, k) in [(2, 1, 2), (2, 1, 3), (2, 2, 2), (3, 1, 2), (2, 3, 2), (2, 2, 3), (3, 2, 2), (5, 1, 2), (2, 1, 12)] {
            let tower = make_tower(p, b, k).unwrap();
            assert!(tower.top().order() <= 4096);
            let mut fixed = tower.galois_group().fixed_field();
            let mut image: Vec<Elem> = tower.base().elements().map(|x| tower.embed(x)).collect();
            fixed.sort();
            image.sort();
            assert_eq!(fixed, image, "tower {p},{b},{k}");
        }
    }

    #[test]
    fn automorphisms_are_ring_homomorphisms_exhaustively() {
        for (p, b, k) in [(2, 1, 2), (2, 1, 3), (3, 1, 2), (2, 2, 2)] {
            let tower = make_tower(p, b, k).unwrap();
            let t = tower.top();
            for s in tower.galois_group().elements() {
                for x in t.elements() {
                    for y in t.elements() {
                        assert_eq!(s.apply(t.add(x, y)), t.add(s.apply(x), s.apply(y)));
                        assert_eq!(s.apply(t.mul(x, y)), t.mul(s.apply(x), s.apply(y)));
                    }
                }
            }
        }
    }

    #[test]
    fn field_axioms_small() {
        for (p, k) in [(2, 1), (3, 1), (2, 2), (3, 2), (5, 1), (2, 3)] {
            let f = FiniteField::new(p, k).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
                }
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.raw_mul(a.0, b.0).into_elem());
                }
            }
        }
    }

    trait IntoElem {
        fn into_elem(self) -> Elem;
    }

    impl IntoElem for u32 {
        fn into_elem(self) -> Elem {
            Elem(self)
        }
    }
}
