//! Exact arithmetic in the Eisenstein field `Q(ρ)`, `ρ = e^{2πi/3}`.
//!
//! Elements are stored in the basis `{1, ρ}` as two canonical rationals, so
//! every coordinate that appears in the constructions (slopes, offsets,
//! lattice generators) is an exact pair `a + bρ`. Products are reduced with
//! `ρ² = -ρ - 1`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    Rational::from_str(s).map_err(|e| Error::Parse(format!("bad rational `{s}`: {e}")))
}

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// An element `re + rho·ρ` of `Q(ρ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EisensteinNumber {
    re: Rational,
    rho: Rational,
}

impl EisensteinNumber {
    pub fn new(re: Rational, rho: Rational) -> Self {
        EisensteinNumber { re, rho }
    }

    pub fn from_ints(re: i64, rho: i64) -> Self {
        Self::new(integer(re), integer(rho))
    }

    pub fn from_rational(re: Rational) -> Self {
        Self::new(re, Rational::zero())
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0)
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0)
    }

    /// The primitive cube root of unity `ρ`.
    pub fn rho() -> Self {
        Self::from_ints(0, 1)
    }

    /// `a = (1 - ρ)/3`, the order-three translation used by both families.
    pub fn a() -> Self {
        Self::new(rational(1, 3), rational(-1, 3))
    }

    pub fn re_part(&self) -> &Rational {
        &self.re
    }

    pub fn rho_part(&self) -> &Rational {
        &self.rho
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.rho.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.rho.is_zero()
    }

    /// Both coordinates are integers, i.e. the element lies in `Z[ρ]`.
    pub fn is_integral(&self) -> bool {
        self.re.is_integer() && self.rho.is_integer()
    }

    /// Complex conjugation: `conj(a + bρ) = (a - b) - bρ`.
    pub fn conjugate(&self) -> Self {
        Self::new(&self.re - &self.rho, -&self.rho)
    }

    /// Field norm `a² - ab + b²`.
    pub fn norm(&self) -> Rational {
        &self.re * &self.re - &self.re * &self.rho + &self.rho * &self.rho
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let c = self.conjugate();
        Ok(Self::new(c.re / &n, c.rho / n))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inverse()?)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::new(&self.re * q, &self.rho * q)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative order when the element is a root of unity in `Q(ρ)`
    /// (orders 1, 2, 3 or 6); `None` otherwise.
    pub fn root_of_unity_order(&self) -> Option<u32> {
        if self.norm() != Rational::one() || !self.is_integral() {
            return None;
        }
        (1..=6).find(|&k| self.pow(k).is_one())
    }

    /// Renders with the ASCII letter `r` in place of `ρ`.
    pub fn to_ascii(&self) -> String {
        self.render("r")
    }

    fn render(&self, symbol: &str) -> String {
        if self.rho.is_zero() {
            return format_rational(&self.re);
        }
        let mut out = String::new();
        if !self.re.is_zero() {
            out.push_str(&format_rational(&self.re));
            if self.rho.is_positive() {
                out.push('+');
            }
        }
        if self.rho.is_negative() {
            out.push('-');
        }
        let mag = self.rho.abs();
        if !mag.is_one() {
            out.push_str(&format_rational(&mag));
        }
        out.push_str(symbol);
        out
    }
}

impl fmt::Display for EisensteinNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("ρ"))
    }
}

impl FromStr for EisensteinNumber {
    type Err = Error;

    /// Accepts `a/b+c/dρ` style literals; `r` may stand for `ρ`, coefficients
    /// of `ρ` may be omitted (`1-ρ`), and terms may appear in any order.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty Eisenstein literal".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, c) in compact.char_indices() {
            if (c == '+' || c == '-') && i > 0 {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);

        let mut re = Rational::zero();
        let mut rho = Rational::zero();
        for term in terms {
            let (sign, body) = match term.strip_prefix('-') {
                Some(rest) => (-1, rest),
                None => (1, term.strip_prefix('+').unwrap_or(term)),
            };
            let rho_body = body
                .strip_suffix('ρ')
                .or_else(|| body.strip_suffix('r'))
                .map(|b| b.strip_suffix('*').unwrap_or(b));
            let (coef, is_rho) = match rho_body {
                Some("") => (Rational::one(), true),
                Some(b) => (parse_rational(b)?, true),
                None if body.is_empty() => {
                    return Err(Error::Parse(format!("dangling sign in `{s}`")))
                }
                None => (parse_rational(body)?, false),
            };
            let coef = coef * integer(sign);
            if is_rho {
                rho += coef;
            } else {
                re += coef;
            }
        }
        Ok(Self::new(re, rho))
    }
}

impl Serialize for EisensteinNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [format_rational(&self.re), format_rational(&self.rho)].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for EisensteinNumber {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let [re, rho] = <[String; 2]>::deserialize(deserializer)?;
        let re = parse_rational(&re).map_err(serde::de::Error::custom)?;
        let rho = parse_rational(&rho).map_err(serde::de::Error::custom)?;
        Ok(Self::new(re, rho))
    }
}

impl Add for &EisensteinNumber {
    type Output = EisensteinNumber;
    fn add(self, rhs: &EisensteinNumber) -> EisensteinNumber {
        EisensteinNumber::new(&self.re + &rhs.re, &self.rho + &rhs.rho)
    }
}

impl Sub for &EisensteinNumber {
    type Output = EisensteinNumber;
    fn sub(self, rhs: &EisensteinNumber) -> EisensteinNumber {
        EisensteinNumber::new(&self.re - &rhs.re, &self.rho - &rhs.rho)
    }
}

impl Mul for &EisensteinNumber {
    type Output = EisensteinNumber;
    // (a + bρ)(c + dρ) = (ac - bd) + (ad + bc - bd)ρ
    fn mul(self, rhs: &EisensteinNumber) -> EisensteinNumber {
        let bd = &self.rho * &rhs.rho;
        EisensteinNumber::new(
            &self.re * &rhs.re - &bd,
            &self.re * &rhs.rho + &self.rho * &rhs.re - bd,
        )
    }
}

impl Neg for &EisensteinNumber {
    type Output = EisensteinNumber;
    fn neg(self) -> EisensteinNumber {
        EisensteinNumber::new(-&self.re, -&self.rho)
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for EisensteinNumber {
            type Output = EisensteinNumber;
            fn $m(self, rhs: EisensteinNumber) -> EisensteinNumber {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&EisensteinNumber> for EisensteinNumber {
            type Output = EisensteinNumber;
            fn $m(self, rhs: &EisensteinNumber) -> EisensteinNumber {
                (&self).$m(rhs)
            }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for EisensteinNumber {
    type Output = EisensteinNumber;
    fn neg(self) -> EisensteinNumber {
        -&self
    }
}
