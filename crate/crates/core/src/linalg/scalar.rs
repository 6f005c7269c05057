use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::Rational;

use crate::error::{Error, Result};

/// The coefficient field of a computation.
///
/// A computation never mixes fields: every scalar, matrix and cochain built
/// from one [`Field`] only ever meets values of that same field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Field {
    /// The rationals, with arbitrary-precision numerators and denominators.
    #[default]
    Rational,
    /// The prime field `Z/pZ`.
    Prime(u64),
}

impl Field {
    /// Builds the prime field `Z/pZ`, rejecting composite or out-of-range `p`.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= 1 << 62 {
            return Err(Error::InvalidInput(format!("prime {p} exceeds 2^62")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(Rational::zero()),
            Field::Prime(p) => Scalar::Residue { value: 0, modulus: p },
        }
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(Rational::from_integer(n)),
            Field::Prime(p) => Scalar::Residue {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    /// The image of `num / den` in this field, or `None` when `den` vanishes here.
    pub fn fraction(self, num: i64, den: i64) -> Option<Scalar> {
        self.from_i64(num).div(&self.from_i64(den))
    }

    /// Parses a scalar: `"p/q"` or `"p"`. Over a prime field the integer
    /// forms are reduced and a denominator must be invertible.
    pub fn parse(self, text: &str) -> Result<Scalar> {
        let bad = || Error::InvalidInput(format!("bad scalar syntax {text:?}"));
        let (num, den) = match text.split_once('/') {
            Some((n, d)) if !d.starts_with('-') => {
                (parse_int(n).ok_or_else(bad)?, parse_int(d).ok_or_else(bad)?)
            }
            Some(_) => return Err(bad()),
            None => (parse_int(text).ok_or_else(bad)?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(Error::InvalidInput(format!("zero denominator in {text:?}")));
        }
        match self {
            Field::Rational => Ok(Scalar::Rational(Rational::from_big(BigRational::new(num, den)))),
            Field::Prime(p) => {
                let num = self.reduce(&num);
                let den = self.reduce(&den);
                num.div(&den).ok_or_else(|| {
                    Error::InvalidInput(format!("denominator of {text:?} vanishes mod {p}"))
                })
            }
        }
    }

    fn reduce(self, n: &BigInt) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(Rational::from_big(BigRational::from_integer(n.clone()))),
            Field::Prime(p) => {
                let r = n.mod_floor_u64(p);
                Scalar::Residue { value: r, modulus: p }
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => f.write_str("Q"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `Q` or `Fp:<p>`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "Q" {
            return Ok(Field::Rational);
        }
        let p = s
            .strip_prefix("Fp:")
            .and_then(|p| p.parse::<u64>().ok())
            .ok_or_else(|| Error::InvalidInput(format!("unknown field {s:?}, expected Q or Fp:<p>")))?;
        Field::prime(p)
    }
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

trait ModFloor {
    fn mod_floor_u64(&self, p: u64) -> u64;
}

impl ModFloor for BigInt {
    fn mod_floor_u64(&self, p: u64) -> u64 {
        let m = BigInt::from(p);
        let r = ((self % &m) + &m) % &m;
        r.to_u64().expect("residue fits in u64")
    }
}

/// Deterministic Miller-Rabin, exact for every `u64`.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// An exact element of a [`Field`].
///
/// Rationals are kept in lowest terms with a positive denominator; residues
/// satisfy `0 <= value < modulus`. Combining scalars from different fields
/// is a programming error and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(Rational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Residue { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn div(&self, rhs: &Scalar) -> Option<Scalar> {
        rhs.inv().map(|r| self * &r)
    }

    /// `self -= a * b`, the elimination kernel.
    pub fn sub_mul_assign(&mut self, a: &Scalar, b: &Scalar) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        match (&mut *self, a, b) {
            (Scalar::Rational(x), Scalar::Rational(a), Scalar::Rational(b)) => *x = x.sub(&a.mul(b)),
            _ => *self = &*self - &(a * b),
        }
    }

    /// `self += a * b`.
    pub fn add_mul_assign(&mut self, a: &Scalar, b: &Scalar) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        match (&mut *self, a, b) {
            (Scalar::Rational(x), Scalar::Rational(a), Scalar::Rational(b)) => *x = x.add(&a.mul(b)),
            _ => *self = &*self + &(a * b),
        }
    }
}

impl fmt::Display for Scalar {
    /// Canonical text: `p/q` (or `p` when `q = 1`) for rationals, the residue otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

fn mixed(a: &Scalar, b: &Scalar) -> ! {
    panic!("mixed fields: {} and {}", a.field(), b.field())
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a.add(b)),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, modulus: q })
                if modulus == q =>
            {
                Scalar::Residue {
                    value: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                    modulus: *modulus,
                }
            }
            _ => mixed(self, rhs),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a.sub(b)),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, modulus: q })
                if modulus == q =>
            {
                Scalar::Residue {
                    value: ((*a as u128 + *modulus as u128 - *b as u128) % *modulus as u128)
                        as u64,
                    modulus: *modulus,
                }
            }
            _ => mixed(self, rhs),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a.mul(b)),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, modulus: q })
                if modulus == q =>
            {
                Scalar::Residue {
                    value: mul_mod(*a, *b, *modulus),
                    modulus: *modulus,
                }
            }
            _ => mixed(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(a.neg()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

impl Add for Scalar {
    type Output = Scalar;

    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;

    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;

    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => *a = a.add(b),
            _ => *self = &*self + rhs,
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => *a = a.sub(b),
            _ => *self = &*self - rhs,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_canonical() {
        let q = Field::Rational;
        assert_eq!(q.parse("2/4").unwrap().to_string(), "1/2");
        assert!(q.parse("-6/-3").is_err());
        assert!(q.parse("6/-3").is_err());
        assert_eq!(q.parse("-6/3").unwrap().to_string(), "-2");
        assert_eq!(q.parse("0/5").unwrap().to_string(), "0");
    }

    #[test]
    fn rejects_bad_syntax() {
        let q = Field::Rational;
        for bad in ["1/0", "", "1.5", "x", "1/", "/2", "1 /2", "--1"] {
            assert!(q.parse(bad).is_err(), "{bad:?} should be rejected");
        }
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let three = f.from_i64(3);
        let five = f.from_i64(-2);
        assert_eq!((&three + &five).to_string(), "1");
        assert_eq!((&three * &five).to_string(), "1");
        assert_eq!(three.inv().unwrap(), five);
        assert_eq!(f.parse("1/2").unwrap().to_string(), "4");
        assert!(f.parse("1/7").is_err());
        assert_eq!((-&f.one()).to_string(), "6");
    }

    #[test]
    fn primality() {
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(91).is_err());
        assert!(Field::prime(2).is_ok());
        assert!(Field::prime(1_000_000_007).is_ok());
        assert!(Field::prime(3_215_031_751).is_err());
        assert_eq!("Fp:13".parse::<Field>().unwrap(), Field::Prime(13));
        assert!("Fp:12".parse::<Field>().is_err());
        assert_eq!("Q".parse::<Field>().unwrap(), Field::Rational);
    }

    #[test]
    #[should_panic(expected = "mixed fields")]
    fn mixing_fields_panics() {
        let _ = &Field::Rational.one() + &Field::Prime(5).one();
    }
}
