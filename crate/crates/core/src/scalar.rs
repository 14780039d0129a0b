//! Exact scalars: arbitrary-precision rationals and prime fields.
//!
//! Every combinatorial coefficient in this crate is produced as an exact
//! integer (or rational) first and only then pushed into the working field
//! through [`FieldSpec::reduce`], the unique ring morphism from the rationals
//! with `p`-coprime denominators.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Integer = BigInt;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("denominator {den} is not invertible modulo {p}")]
    NonInvertibleDenominator { den: Integer, p: u64 },
    #[error("{den} does not divide {num}")]
    NotAnIndex { num: Integer, den: Integer },
    #[error("cannot parse field `{0}` (expected `q` or `fp:<prime>`)")]
    BadField(String),
}

/// The working field: the rationals or `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, ScalarError> {
        if p < (1 << 32) && is_prime(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(ScalarError::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        self.from_integer(&Integer::from(n))
    }

    /// The image of an integer; always defined.
    pub fn from_integer(&self, n: &Integer) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            FieldSpec::Prime(p) => Scalar::Modular {
                value: residue(n, p),
                p,
            },
        }
    }

    /// Ring morphism `Z[1/d] -> F`; fails when `p` divides the denominator.
    pub fn reduce(&self, q: &BigRational) -> Result<Scalar, ScalarError> {
        match *self {
            FieldSpec::Rationals => Ok(Scalar::Rational(q.clone())),
            FieldSpec::Prime(p) => {
                let den = residue(q.denom(), p);
                if den == 0 {
                    return Err(ScalarError::NonInvertibleDenominator {
                        den: q.denom().clone(),
                        p,
                    });
                }
                let num = residue(q.numer(), p);
                Ok(Scalar::Modular {
                    value: mul_mod(num, inv_mod(den, p), p),
                    p,
                })
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rationals);
        }
        let p = s
            .strip_prefix("fp:")
            .and_then(|t| t.parse::<u64>().ok())
            .ok_or_else(|| ScalarError::BadField(s.to_string()))?;
        FieldSpec::prime(p)
    }
}

fn residue(n: &Integer, p: u64) -> u64 {
    let r = n.mod_floor(&Integer::from(p));
    r.to_u64().expect("residue fits in u64")
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    (a * b) % p
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// An exact field element. Values of different fields never mix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Modular { p, .. } => FieldSpec::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Modular { value, p } => Scalar::Modular {
                value: inv_mod(*value, *p),
                p: *p,
            },
        })
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(num_traits::pow(q.clone(), exp as usize)),
            Scalar::Modular { value, p } => Scalar::Modular {
                value: pow_mod(*value, exp as u64, *p),
                p: *p,
            },
        }
    }

    /// Numerator and denominator of a rational value; residues report themselves over 1.
    pub fn num_den(&self) -> (Integer, Integer) {
        match self {
            Scalar::Rational(q) => (q.numer().clone(), q.denom().clone()),
            Scalar::Modular { value, .. } => (Integer::from(*value), Integer::one()),
        }
    }
}

fn same_field(a: &Scalar, b: &Scalar) -> u64 {
    match (a, b) {
        (Scalar::Rational(_), Scalar::Rational(_)) => 0,
        (Scalar::Modular { p, .. }, Scalar::Modular { p: q, .. }) if p == q => *p,
        _ => panic!("scalar field mismatch: {} vs {}", a.field(), b.field()),
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let p = same_field(self, rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Modular { value: a, .. }, Scalar::Modular { value: b, .. }) => {
                Scalar::Modular { value: (a + b) % p, p }
            }
            _ => unreachable!(),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let p = same_field(self, rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Modular { value: a, .. }, Scalar::Modular { value: b, .. }) => {
                Scalar::Modular { value: mul_mod(*a, *b, p), p }
            }
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular { value, p } => Scalar::Modular {
                value: (p - value) % p,
                p: *p,
            },
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Scalar::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

pub fn factorial(n: u64) -> Integer {
    (1..=n).fold(Integer::one(), |acc, k| acc * k)
}

/// `C(m, k)`, zero when `k > m`.
pub fn binomial(m: u64, k: u64) -> Integer {
    if k > m {
        return Integer::zero();
    }
    let k = k.min(m - k);
    let mut acc = Integer::one();
    for i in 0..k {
        acc = acc * (m - i) / (i + 1);
    }
    acc
}

/// Exact quotient `num / den`, which must be a subgroup index.
pub fn index_ratio(num: &Integer, den: &Integer) -> Result<Integer, ScalarError> {
    if den.is_zero() || !num.is_multiple_of(den) {
        return Err(ScalarError::NotAnIndex {
            num: num.clone(),
            den: den.clone(),
        });
    }
    Ok(num / den)
}

/// Parses `"3"`, `"-2"` or `"3/2"` into a rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Integer = n.trim().parse().ok()?;
            let d: Integer = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => s.parse::<Integer>().ok().map(BigRational::from_integer),
    }
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(Integer::from(n), Integer::from(d))
}

pub fn is_nonnegative(q: &BigRational) -> bool {
    !q.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), Integer::from(10));
        assert_eq!(binomial(4, 2), Integer::from(6));
        assert_eq!(binomial(3, 5), Integer::from(0));
        assert_eq!(binomial(0, 0), Integer::from(1));
    }

    #[test]
    fn pascal_rule_up_to_64() {
        for m in 1..=64u64 {
            for k in 1..=m {
                assert_eq!(binomial(m, k), binomial(m - 1, k - 1) + binomial(m - 1, k));
            }
        }
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(f(2).reduce(&rational(6, 1)).unwrap(), f(2).from_i64(0));
        assert_eq!(f(5).reduce(&rational(6, 1)).unwrap(), f(5).from_i64(1));
        assert_eq!(f(3).reduce(&rational(3, 2)).unwrap(), f(3).from_i64(0));
        assert!(matches!(
            f(3).reduce(&rational(1, 3)),
            Err(ScalarError::NonInvertibleDenominator { .. })
        ));
    }

    #[test]
    fn index_ratio_examples() {
        let i = |n: i64| Integer::from(n);
        assert_eq!(index_ratio(&i(2), &i(1)).unwrap(), i(2));
        assert_eq!(index_ratio(&i(12), &i(4)).unwrap(), i(3));
        assert!(matches!(index_ratio(&i(6), &i(4)), Err(ScalarError::NotAnIndex { .. })));
    }

    #[test]
    fn field_parsing() {
        assert_eq!("q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("fp:3".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(3));
        assert!("fp:4".parse::<FieldSpec>().is_err());
        assert!("fp:".parse::<FieldSpec>().is_err());
        assert_eq!(FieldSpec::Prime(7).to_string(), "fp:7");
    }

    #[test]
    fn rationals_are_normalized() {
        let q = FieldSpec::Rationals;
        let a = q.reduce(&rational(2, 4)).unwrap();
        let b = q.reduce(&rational(-1, -2)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "1/2");
    }

    fn field_strategy() -> impl Strategy<Value = FieldSpec> {
        prop_oneof![
            Just(FieldSpec::Rationals),
            Just(FieldSpec::Prime(2)),
            Just(FieldSpec::Prime(3)),
            Just(FieldSpec::Prime(7)),
        ]
    }

    fn rat() -> impl Strategy<Value = BigRational> {
        (-50i64..50, 1i64..12).prop_map(|(n, d)| rational(n, d))
    }

    proptest! {
        #[test]
        fn field_axioms(field in field_strategy(), a in -40i64..40, b in -40i64..40, c in -40i64..40) {
            let (a, b, c) = (field.from_i64(a), field.from_i64(b), field.from_i64(c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a - &a).is_zero());
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn reduce_is_a_ring_morphism(p in prop_oneof![Just(2u64), Just(3), Just(5), Just(13)], a in rat(), b in rat()) {
            let field = FieldSpec::prime(p).unwrap();
            let ok = |q: &BigRational| (q.denom() % Integer::from(p)) != Integer::zero();
            prop_assume!(ok(&a) && ok(&b));
            let ra = field.reduce(&a).unwrap();
            let rb = field.reduce(&b).unwrap();
            prop_assert_eq!(field.reduce(&(&a + &b)).unwrap(), &ra + &rb);
            prop_assert_eq!(field.reduce(&(&a * &b)).unwrap(), &ra * &rb);
        }
    }
}
