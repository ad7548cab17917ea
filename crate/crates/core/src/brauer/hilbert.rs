//! Quaternion algebras over `ℚ` through local Hilbert symbols.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A place of `ℚ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Infinity,
    Prime(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => write!(f, "inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `n` divided by its largest square factor, sign kept.
pub fn squarefree_part(n: i64) -> Result<i64> {
    if n == 0 {
        return Err(Error::Zero("squarefree part of 0".into()));
    }
    let core: u64 = prime_factors(n.unsigned_abs())
        .into_iter()
        .filter(|&(_, e)| e % 2 == 1)
        .map(|(p, _)| p)
        .product();
    Ok(n.signum() * core as i64)
}

/// `n = p^v · u` with `p ∤ u`.
fn split_valuation(mut n: i128, p: i128) -> (u32, i128) {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    (v, n)
}

fn pow_mod(mut base: u128, mut e: u128, m: u128) -> u128 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc
}

/// Legendre symbol `(u/p)` for an odd prime `p ∤ u`, by Euler's criterion.
fn legendre(u: i128, p: u64) -> i8 {
    let r = pow_mod(u.rem_euclid(p as i128) as u128, (p as u128 - 1) / 2, p as u128);
    if r == 1 {
        1
    } else {
        -1
    }
}

/// `(a, b)_v` by the classical explicit formulas.
pub fn hilbert_symbol(a: i64, b: i64, place: Place) -> Result<i8> {
    if a == 0 || b == 0 {
        return Err(Error::Zero("Hilbert symbol argument".into()));
    }
    let (a, b) = (a as i128, b as i128);
    Ok(match place {
        Place::Infinity => {
            if a < 0 && b < 0 {
                -1
            } else {
                1
            }
        }
        Place::Prime(2) => {
            let (alpha, u) = split_valuation(a, 2);
            let (beta, v) = split_valuation(b, 2);
            let eps = |x: i128| ((x - 1) / 2).rem_euclid(2);
            let omega = |x: i128| ((x * x - 1) / 8).rem_euclid(2);
            let e = eps(u) * eps(v) + alpha as i128 * omega(v) + beta as i128 * omega(u);
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Place::Prime(p) => {
            if p < 3 || prime_factors(p) != vec![(p, 1)] {
                return Err(Error::NotPrime(p));
            }
            let (alpha, u) = split_valuation(a, p as i128);
            let (beta, v) = split_valuation(b, p as i128);
            let mut s: i8 = if alpha * beta % 2 == 1 && p % 4 == 3 { -1 } else { 1 };
            if beta % 2 == 1 {
                s *= legendre(u, p);
            }
            if alpha % 2 == 1 {
                s *= legendre(v, p);
            }
            s
        }
    })
}

/// `∞`, `2`, and the odd primes dividing `ab`: the only places where `(a, b)_v` can be `−1`.
pub fn relevant_places(a: i64, b: i64) -> Vec<Place> {
    let mut primes: Vec<u64> = prime_factors(a.unsigned_abs())
        .into_iter()
        .chain(prime_factors(b.unsigned_abs()))
        .map(|(p, _)| p)
        .filter(|&p| p != 2)
        .collect();
    primes.sort_unstable();
    primes.dedup();
    [Place::Infinity, Place::Prime(2)]
        .into_iter()
        .chain(primes.into_iter().map(Place::Prime))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalSymbol {
    pub place: Place,
    pub symbol: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuaternionVerdict {
    pub a: i64,
    pub b: i64,
    pub a_reduced: i64,
    pub b_reduced: i64,
    pub local: Vec<LocalSymbol>,
    /// `∏_v (a, b)_v`; always `+1`.
    pub product: i8,
    pub ramified: Vec<Place>,
    pub splits: bool,
}

/// Whether `(a, b)_ℚ ≅ M₂(ℚ)`, i.e. `b` is a norm from `ℚ(√a)`.
pub fn quaternion_splits_q(a: i64, b: i64) -> Result<QuaternionVerdict> {
    let a_reduced = squarefree_part(a)?;
    let b_reduced = squarefree_part(b)?;
    let local = relevant_places(a_reduced, b_reduced)
        .into_iter()
        .map(|place| Ok(LocalSymbol { place, symbol: hilbert_symbol(a_reduced, b_reduced, place)? }))
        .collect::<Result<Vec<_>>>()?;
    let product = local.iter().map(|l| l.symbol).product();
    if product != 1 {
        return Err(Error::AlgebraCheck(format!("product formula gives {product} for ({a}, {b})")));
    }
    let ramified: Vec<Place> = local.iter().filter(|l| l.symbol == -1).map(|l| l.place).collect();
    Ok(QuaternionVerdict {
        a,
        b,
        a_reduced,
        b_reduced,
        splits: ramified.is_empty(),
        local,
        product,
        ramified,
    })
}

/// Searches `x² − a y² = b` over rationals `x/z, y/z` with `|x|, |y|, z ≤ bound`.
pub fn norm_search_q(a: i64, b: i64, bound: i64) -> Option<(BigRational, BigRational)> {
    let (a, b) = (a as i128, b as i128);
    for z in 1..=bound as i128 {
        for x in -(bound as i128)..=bound as i128 {
            for y in -(bound as i128)..=bound as i128 {
                if x * x - a * y * y == b * z * z {
                    let r = |n: i128| BigRational::new(BigInt::from(n), BigInt::from(z));
                    return Some((r(x), r(y)));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn hamilton_is_ramified_at_infinity_and_two() {
        let v = quaternion_splits_q(-1, -1).unwrap();
        assert!(!v.splits);
        assert_eq!(v.ramified, vec![Place::Infinity, Place::Prime(2)]);
        assert_eq!(v.product, 1);
    }

    #[test]
    fn trivial_splittings() {
        for x in (-30i64..=30).filter(|&x| x != 0) {
            assert!(quaternion_splits_q(1, x).unwrap().splits);
            assert!(quaternion_splits_q(x, -x).unwrap().splits);
        }
        assert_eq!(squarefree_part(-72).unwrap(), -2);
        assert!(quaternion_splits_q(0, 1).is_err());
    }

    #[test]
    fn known_local_values() {
        assert_eq!(hilbert_symbol(2, 3, Place::Prime(3)).unwrap(), -1);
        assert_eq!(hilbert_symbol(-1, 3, Place::Prime(3)).unwrap(), -1);
        assert_eq!(hilbert_symbol(-1, 5, Place::Prime(5)).unwrap(), 1);
        assert_eq!(hilbert_symbol(2, 5, Place::Prime(2)).unwrap(), -1);
        assert_eq!(hilbert_symbol(3, 3, Place::Prime(2)).unwrap(), -1);
        assert!(hilbert_symbol(2, 3, Place::Prime(9)).is_err());
    }

    #[test]
    fn product_formula_on_small_pairs() {
        for a in (-50i64..=50).filter(|&x| x != 0) {
            for b in (-50i64..=50).filter(|&x| x != 0) {
                let total: i8 = relevant_places(a, b).into_iter().map(|v| hilbert_symbol(a, b, v).unwrap()).product();
                assert_eq!(total, 1, "({a}, {b})");
            }
        }
    }

    #[test]
    fn search_witness_implies_split() {
        for a in (-12i64..=12).filter(|&x| x != 0) {
            for b in (-12i64..=12).filter(|&x| x != 0) {
                if let Some((x, y)) = norm_search_q(a, b, 6) {
                    let lhs = &x * &x - BigRational::from_integer(a.into()) * &y * &y;
                    assert_eq!(lhs, BigRational::from_integer(b.into()));
                    assert!(quaternion_splits_q(a, b).unwrap().splits, "({a}, {b})");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn symmetric_and_bimultiplicative(a in -60i64..60, b1 in -60i64..60, b2 in -60i64..60) {
            prop_assume!(a != 0 && b1 != 0 && b2 != 0);
            let mut places = relevant_places(a, b1 * b2);
            places.extend(relevant_places(a, b1));
            places.extend(relevant_places(a, b2));
            for v in places {
                let s = |x, y| hilbert_symbol(x, y, v).unwrap();
                prop_assert_eq!(s(a, b1), s(b1, a));
                prop_assert_eq!(s(a, b1 * b2), s(a, b1) * s(a, b2));
            }
        }
    }
}
