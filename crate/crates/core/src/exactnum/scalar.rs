use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::value::MapAccessDeserializer;
use serde::de::{Error as _, MapAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ArithError;

pub type Rational = num_rational::BigRational;

/// Parses `["-"] digits ["/" digits]`. Input must already be reduced with a
/// positive denominator; `2/4` and `3/-1` are rejected.
pub fn parse_rational(s: &str) -> Result<Rational, ArithError> {
    let malformed = || ArithError::Malformed(s.to_string());
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => {
            if !digits(n) || !digits(d) {
                return Err(malformed());
            }
            (n, Some(d))
        }
        None => {
            if !digits(body) {
                return Err(malformed());
            }
            (body, None)
        }
    };
    let mut n = BigInt::from_str(num).map_err(|_| malformed())?;
    if neg {
        n = -n;
    }
    let d = match den {
        Some(d) => BigInt::from_str(d).map_err(|_| malformed())?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(ArithError::DivisionByZero);
    }
    if !n.gcd(&d).is_one() && !(n.is_zero() && d.is_one()) {
        return Err(ArithError::NotReduced(s.to_string()));
    }
    if n.is_zero() && neg {
        return Err(ArithError::NotReduced(s.to_string()));
    }
    Ok(Rational::new_raw(n, d))
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// An element `re + im·i` of ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    re: Rational,
    im: Rational,
}

impl Scalar {
    pub fn new(re: Rational, im: Rational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn i() -> Self {
        Scalar::new(Rational::zero(), Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::new(Rational::from_integer(n.into()), Rational::zero())
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        Scalar::new(Rational::new(num.into(), den.into()), Rational::zero())
    }

    pub fn gaussian(re: i64, im: i64) -> Self {
        Scalar::new(Rational::from_integer(re.into()), Rational::from_integer(im.into()))
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn im(&self) -> &Rational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar::new(self.re.clone(), -&self.im)
    }

    /// |z|², always rational.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(Scalar::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Self, ArithError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Fused `self += a * b`, the inner step of every elimination loop.
    pub fn add_mul(&mut self, a: &Scalar, b: &Scalar) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self += &(a * b);
    }

    /// Re-reduces both parts. Values built through the public API are always
    /// canonical already, so this is the identity on them.
    pub fn normalize(&self) -> Self {
        let fix = |r: &Rational| Rational::new(r.numer().clone(), r.denom().clone());
        Scalar::new(fix(&self.re), fix(&self.im))
    }

    pub fn is_canonical(&self) -> bool {
        let ok = |r: &Rational| r.denom().is_positive() && r.numer().gcd(r.denom()).is_one();
        ok(&self.re) && ok(&self.im)
    }

    /// Reads the CLI form: `3`, `-1/2`, `i`, `2i`, `1+i`, `1/2-3/4i`.
    pub fn parse_compact(s: &str) -> Result<Self, ArithError> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let malformed = || ArithError::Malformed(s.to_string());
        if t.is_empty() {
            return Err(malformed());
        }
        let Some(body) = t.strip_suffix('i') else {
            return Ok(Scalar::new(parse_loose(&t)?, Rational::zero()));
        };
        // split at the last sign that is not the leading one
        let split = body
            .char_indices()
            .skip(1)
            .filter(|(_, c)| *c == '+' || *c == '-')
            .map(|(k, _)| k)
            .last();
        let (re_part, im_part) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("", body),
        };
        let re = if re_part.is_empty() { Rational::zero() } else { parse_loose(re_part)? };
        let im_part = im_part.strip_prefix('+').unwrap_or(im_part);
        let im = match im_part {
            "" => Rational::one(),
            "-" => -Rational::one(),
            other => parse_loose(other).map_err(|_| malformed())?,
        };
        Ok(Scalar::new(re, im))
    }
}

fn parse_loose(s: &str) -> Result<Rational, ArithError> {
    let malformed = || ArithError::Malformed(s.to_string());
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| malformed())?;
    let d = BigInt::from_str(d).map_err(|_| malformed())?;
    if d.is_zero() {
        return Err(ArithError::DivisionByZero);
    }
    Ok(Rational::new(n, d))
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re = format_rational(&self.re);
        if self.im.is_zero() {
            return write!(f, "{re}");
        }
        let im = if self.im.is_one() {
            String::new()
        } else if (-&self.im).is_one() {
            "-".to_string()
        } else {
            format_rational(&self.im)
        };
        if self.re.is_zero() {
            write!(f, "{im}i")
        } else if self.im.is_positive() {
            write!(f, "{re}+{im}i")
        } else {
            write!(f, "{re}{im}i")
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Scalar {
    type Err = ArithError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scalar::parse_compact(s)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::new(r, Rational::zero())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScalarRepr {
    re: String,
    im: String,
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ScalarRepr { re: format_rational(&self.re), im: format_rational(&self.im) }.serialize(s)
    }
}

/// Accepts the canonical `{"re": .., "im": ..}` object or a compact string
/// such as `"1/2-3i"`.
impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Scalar;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a scalar object {\"re\",\"im\"} or a string like \"1/2-3i\"")
            }

            fn visit_str<E: serde::de::Error>(self, v: &str) -> Result<Scalar, E> {
                Scalar::parse_compact(v).map_err(E::custom)
            }

            fn visit_map<A: MapAccess<'de>>(self, map: A) -> Result<Scalar, A::Error> {
                let repr = ScalarRepr::deserialize(MapAccessDeserializer::new(map))?;
                let re = parse_rational(&repr.re).map_err(A::Error::custom)?;
                let im = parse_rational(&repr.im).map_err(A::Error::custom)?;
                Ok(Scalar::new(re, im))
            }
        }
        d.deserialize_any(V)
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Scalar::new(&self.re * &rhs.re, Rational::zero());
        }
        Scalar::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-&self.re, -&self.im)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re, -self.im)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}
