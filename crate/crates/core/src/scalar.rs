//! Exact scalars: arbitrary-precision rationals and prime fields.
//!
//! Rationals are kept in lowest terms with positive denominator (the
//! [`num_rational::BigRational`] canonical form), prime-field elements as
//! representatives in `0..p`. The textual forms are `a/b` (or just `a` when
//! `b = 1`) and `k mod p`; they are bit-stable, which the serialization
//! layer relies on.

use alloc::string::{String, ToString};
use alloc::{format, vec::Vec};
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The ground field of a presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    /// Integers modulo `p`; `p` must be prime and below `2^31`.
    PrimeField(u64),
}

impl FieldSpec {
    pub fn prime_field(p: u64) -> Result<Self, ScalarError> {
        if p < (1 << 31) && is_prime(p) {
            Ok(FieldSpec::PrimeField(p))
        } else {
            Err(ScalarError::NotPrime(p))
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::zero()),
            FieldSpec::PrimeField(p) => Scalar::Fp { val: 0, p: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::one()),
            FieldSpec::PrimeField(p) => Scalar::Fp { val: 1 % *p, p: *p },
        }
    }

    /// The image of the integer `n` in the field.
    pub fn from_integer(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::PrimeField(p) => {
                let m = n.rem_euclid(*p as i64) as u64;
                Scalar::Fp { val: m, p: *p }
            }
        }
    }

    /// Parses the canonical textual form, rejecting non-canonical spellings.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar, ScalarError> {
        let text = text.trim();
        match self {
            FieldSpec::Rationals => parse_rational(text),
            FieldSpec::PrimeField(p) => parse_mod(text, *p),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "rationals"),
            FieldSpec::PrimeField(p) => write!(f, "mod {p}"),
        }
    }
}

/// An element of the ground field, carrying enough context to be
/// self-contained in arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rat(BigRational),
    Fp { val: u64, p: u64 },
}

/// Errors raised while constructing or parsing scalars.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScalarError {
    NotPrime(u64),
    /// The text is not a scalar of the expected field.
    Malformed(String),
    /// Parseable but not in canonical form; the payload is the canonical
    /// spelling.
    NotCanonical { given: String, canonical: String },
}

impl fmt::Display for ScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarError::NotPrime(p) => write!(f, "{p} is not a supported prime"),
            ScalarError::Malformed(s) => write!(f, "malformed scalar `{s}`"),
            ScalarError::NotCanonical { given, canonical } => {
                write!(f, "non-canonical scalar `{given}`; write `{canonical}`")
            }
        }
    }
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rat(_) => FieldSpec::Rationals,
            Scalar::Fp { p, .. } => FieldSpec::PrimeField(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp { val, .. } => *val == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fp { val, p } => *val == 1 % *p,
        }
    }

    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => {
                assert!(!r.is_zero(), "inverse of zero");
                Scalar::Rat(r.recip())
            }
            Scalar::Fp { val, p } => {
                assert!(*val != 0, "inverse of zero");
                Scalar::Fp { val: mod_inv(*val, *p), p: *p }
            }
        }
    }

    /// Builds a rational from a (numerator, denominator) pair.
    pub fn rational(num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        Scalar::Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }
}

fn both<'a>(a: &'a Scalar, b: &'a Scalar) -> (&'a Scalar, &'a Scalar) {
    assert_eq!(a.field(), b.field(), "mixed ground fields in scalar arithmetic");
    (a, b)
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match both(self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Fp { val: a, p }, Scalar::Fp { val: b, .. }) => {
                Scalar::Fp { val: (a + b) % p, p: *p }
            }
            _ => unreachable!(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match both(self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            (Scalar::Fp { val: a, p }, Scalar::Fp { val: b, .. }) => {
                Scalar::Fp { val: (a + p - b) % p, p: *p }
            }
            _ => unreachable!(),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match both(self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Fp { val: a, p }, Scalar::Fp { val: b, .. }) => {
                Scalar::Fp { val: ((*a as u128 * *b as u128) % *p as u128) as u64, p: *p }
            }
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Fp { val, p } => Scalar::Fp { val: (p - val) % p, p: *p },
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { val, p } => write!(f, "{val} mod {p}"),
        }
    }
}

fn parse_rational(text: &str) -> Result<Scalar, ScalarError> {
    let malformed = || ScalarError::Malformed(text.to_string());
    let (num_s, den_s) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let num: BigInt = num_s.parse().map_err(|_| malformed())?;
    let den: BigInt = match den_s {
        Some(d) => d.parse().map_err(|_| malformed())?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(malformed());
    }
    let value = BigRational::new(num.clone(), den.clone());
    let canonical = Scalar::Rat(value.clone()).to_string();
    // Canonical form: lowest terms, positive denominator, no "/1".
    let is_canonical = den.is_positive()
        && *value.numer() == num
        && *value.denom() == den
        && !(den.is_one() && den_s.is_some());
    if is_canonical {
        Ok(Scalar::Rat(value))
    } else {
        Err(ScalarError::NotCanonical { given: text.to_string(), canonical })
    }
}

fn parse_mod(text: &str, p: u64) -> Result<Scalar, ScalarError> {
    let malformed = || ScalarError::Malformed(text.to_string());
    let mut parts = text.split_whitespace();
    let k: u64 = parts.next().ok_or_else(malformed)?.parse().map_err(|_| malformed())?;
    match (parts.next(), parts.next(), parts.next()) {
        (Some("mod"), Some(q), None) => {
            let q: u64 = q.parse().map_err(|_| malformed())?;
            if q != p {
                return Err(malformed());
            }
        }
        _ => return Err(malformed()),
    }
    if k >= p {
        return Err(ScalarError::NotCanonical {
            given: text.to_string(),
            canonical: format!("{} mod {p}", k % p),
        });
    }
    Ok(Scalar::Fp { val: k, p })
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p.
    let mut base = a as u128;
    let mut exp = p - 2;
    let m = p as u128;
    let mut acc: u128 = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc as u64
}

fn is_prime(n: u64) -> bool {
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

/// Formats a linear combination `c1 g1 + c2 g2 + ...` with canonical scalar
/// spellings; the empty combination prints as `0`.
pub fn format_combination<'a>(terms: impl Iterator<Item = (&'a Scalar, String)>) -> String {
    let parts: Vec<String> = terms.map(|(c, label)| format!("{c} {label}")).collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_rational_parsing() {
        let f = FieldSpec::Rationals;
        assert_eq!(f.parse_scalar("3"), Ok(Scalar::rational(3, 1)));
        assert_eq!(f.parse_scalar("-1/2"), Ok(Scalar::rational(-1, 2)));
        assert!(matches!(
            f.parse_scalar("2/4"),
            Err(ScalarError::NotCanonical { canonical, .. }) if canonical == "1/2"
        ));
        assert!(matches!(
            f.parse_scalar("1/-2"),
            Err(ScalarError::NotCanonical { canonical, .. }) if canonical == "-1/2"
        ));
        assert!(matches!(f.parse_scalar("3/1"), Err(ScalarError::NotCanonical { .. })));
        assert!(matches!(f.parse_scalar("x"), Err(ScalarError::Malformed(_))));
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = FieldSpec::prime_field(7).unwrap();
        let a = f.from_integer(3);
        let b = f.from_integer(5);
        assert_eq!(&a * &b, f.from_integer(1));
        assert_eq!(a.inv(), b);
        assert_eq!(f.parse_scalar("4 mod 7"), Ok(f.from_integer(4)));
        assert!(matches!(f.parse_scalar("9 mod 7"), Err(ScalarError::NotCanonical { .. })));
        assert!(FieldSpec::prime_field(6).is_err());
    }

    proptest! {
        #[test]
        fn rational_roundtrip(n in -1000i64..1000, d in 1i64..1000) {
            let s = Scalar::rational(n, d);
            let back = FieldSpec::Rationals.parse_scalar(&s.to_string()).unwrap();
            prop_assert_eq!(s, back);
        }

        #[test]
        fn field_axioms_spot(n1 in -50i64..50, n2 in -50i64..50, n3 in -50i64..50) {
            for f in [FieldSpec::Rationals, FieldSpec::prime_field(101).unwrap()] {
                let (a, b, c) = (f.from_integer(n1), f.from_integer(n2), f.from_integer(n3));
                prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
                prop_assert_eq!(&a - &a, f.zero());
                if !b.is_zero() {
                    prop_assert_eq!(&(&a * &b) * &b.inv(), a.clone());
                }
            }
        }
    }
}
