//! Arbitrary-precision exact rationals.
//!
//! Every coordinate and scalar in the engine is a `Rational`. Values are kept
//! in lowest terms with a positive denominator (zero is `0/1`), arithmetic is
//! exact, and the text form is `p` or `p/q` matching the on-disk formats.
//! `num_rational::BigRational` maintains exactly these invariants, so this is
//! a thin newtype that owns parsing, formatting and decimal rendering.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Construct `numer/denom`, reduced. Errors on a zero denominator.
    pub fn new(numer: BigInt, denom: BigInt) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::precondition("rational denominator must be nonzero"));
        }
        Ok(Rational(BigRational::new(numer, denom)))
    }

    pub fn from_int(v: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Rational(BigRational::from_integer(v))
    }

    pub fn from_biguint(v: &BigUint) -> Self {
        Rational(BigRational::from_integer(BigInt::from(v.clone())))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Division that reports a zero divisor instead of panicking.
    pub fn checked_div(&self, rhs: &Rational) -> Option<Rational> {
        if rhs.is_zero() {
            None
        } else {
            Some(Rational(&self.0 / &rhs.0))
        }
    }

    /// Decimal expansion truncated toward zero to `sig` significant digits.
    /// Exact values shorter than `sig` digits render exactly ("63", "3.5").
    /// Display-only; the exact text form stays `p` or `p/q`.
    pub fn to_decimal(&self, sig: usize) -> String {
        assert!(sig > 0, "need at least one significant digit");
        if self.is_zero() {
            return "0".to_string();
        }
        let neg = self.is_negative();
        let num = self.0.numer().magnitude().clone();
        let den = self.0.denom().magnitude().clone();
        let (int_part, mut rem) = num.div_rem(&den);

        let mut out = String::new();
        if neg {
            out.push('-');
        }
        let int_digits = int_part.to_string();
        out.push_str(&int_digits);
        let mut used = if int_part.is_zero() { 0 } else { int_digits.len() };

        if rem.is_zero() || used >= sig {
            return out;
        }

        let mut frac = String::new();
        let ten = BigUint::from(10u32);
        // leading fractional zeros are not significant
        while !rem.is_zero() && (used < sig) {
            rem *= &ten;
            let (digit, next) = rem.div_rem(&den);
            let d = digit.to_string();
            if !(used == 0 && digit.is_zero()) {
                used += 1;
            }
            frac.push_str(&d);
            rem = next;
        }
        while frac.ends_with('0') {
            frac.pop();
        }
        if !frac.is_empty() {
            out.push('.');
            out.push_str(&frac);
        }
        out
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p` or `p/q`. Input need not be reduced; the value is
    /// normalized on construction. `q = 0` is rejected.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::precondition(format!("invalid rational literal {s:?}"));
        match s.split_once('/') {
            None => {
                let n = BigInt::from_str(s).map_err(|_| bad())?;
                Ok(Rational::from_bigint(n))
            }
            Some((p, q)) => {
                let n = BigInt::from_str(p).map_err(|_| bad())?;
                let d = BigInt::from_str(q).map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(Rational(BigRational::new(n, d)))
            }
        }
    }
}
