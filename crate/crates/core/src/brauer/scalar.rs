use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fields::{primitive_root_of_unity, Elem, Field};

/// Exact field arithmetic shared by finite fields and `ℚ`.
pub trait ScalarField: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// A primitive `m`-th root of unity, if the field has one.
    fn root_of_unity(&self, m: usize) -> Result<Self::Elem>;
    /// All elements, when the field is finite.
    fn elements(&self) -> Option<Vec<Self::Elem>>;
    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, text: &str) -> Result<Self::Elem>;
    fn descriptor(&self) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn pow(&self, a: &Self::Elem, e: usize) -> Self::Elem {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, a))
    }
}

impl ScalarField for Field {
    type Elem = Elem;

    fn zero(&self) -> Elem {
        Elem::ZERO
    }
    fn one(&self) -> Elem {
        Elem::ONE
    }
    fn from_int(&self, n: i64) -> Elem {
        self.as_ref().from_int(n)
    }
    fn add(&self, a: &Elem, b: &Elem) -> Elem {
        self.as_ref().add(*a, *b)
    }
    fn neg(&self, a: &Elem) -> Elem {
        self.as_ref().neg(*a)
    }
    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        self.as_ref().mul(*a, *b)
    }
    fn inv(&self, a: &Elem) -> Option<Elem> {
        self.as_ref().inv(*a)
    }
    fn is_zero(&self, a: &Elem) -> bool {
        a.is_zero()
    }
    fn root_of_unity(&self, m: usize) -> Result<Elem> {
        primitive_root_of_unity(self, m as u64)
    }
    fn elements(&self) -> Option<Vec<Elem>> {
        Some(self.as_ref().elements().collect())
    }
    fn format(&self, a: &Elem) -> String {
        self.format_elem(*a)
    }
    fn parse(&self, text: &str) -> Result<Elem> {
        self.parse_elem(text)
    }
    fn descriptor(&self) -> String {
        self.as_ref().descriptor()
    }
}

/// The rationals, with exact big-integer arithmetic.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl ScalarField for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_int(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn root_of_unity(&self, m: usize) -> Result<BigRational> {
        match m {
            1 => Ok(self.one()),
            2 => Ok(-self.one()),
            _ => Err(Error::MissingRootOfUnity { m: m as u64, order: 2 }),
        }
    }
    fn elements(&self) -> Option<Vec<BigRational>> {
        None
    }
    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else if a.is_negative() {
            format!("-{}", -a)
        } else {
            a.to_string()
        }
    }
    fn parse(&self, text: &str) -> Result<BigRational> {
        text.trim().parse().map_err(|_| Error::Parse(format!("rational {text:?}")))
    }
    fn descriptor(&self) -> String {
        "Q".into()
    }
}

/// Basis of the solution space of `rows · x = 0`.
pub(crate) fn nullspace<F: ScalarField>(f: &F, mut rows: Vec<Vec<F::Elem>>, ncols: usize) -> Vec<Vec<F::Elem>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = f.inv(&rows[r][c]).expect("nonzero pivot");
        rows[r] = rows[r].iter().map(|x| f.mul(x, &inv)).collect();
        for i in 0..rows.len() {
            if i != r && !f.is_zero(&rows[i][c]) {
                let k = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x = f.sub(x, &f.mul(&k, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![f.zero(); ncols];
            v[free] = f.one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(&rows[i][free]);
            }
            v
        })
        .collect()
}
