//! Exact scalars and the combinatorial number functions built on them.
//!
//! Rationals are [`num_rational::BigRational`], which keeps every value
//! gcd-reduced with a positive denominator, so structural equality is
//! mathematical equality. Polynomials in the formal variable `a` live in
//! [`poly`].

mod poly;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use poly::Poly;

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked rational arithmetic. Division by zero is reported rather than
/// panicking.
pub fn rat_arith(x: &Rational, y: &Rational, op: ArithOp) -> Result<Rational> {
    Ok(match op {
        ArithOp::Add => x + y,
        ArithOp::Sub => x - y,
        ArithOp::Mul => x * y,
        ArithOp::Div => {
            if y.is_zero() {
                return Err(Error::DivisionByZero);
            }
            x / y
        }
    })
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn half() -> Rational {
    frac(1, 2)
}

/// Parses `p`, `p/q` or a finite decimal such as `-0.25`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::ParseRational(s.to_string());
    let t = s.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, fracpart)) = t.split_once('.') {
        if fracpart.is_empty() || !fracpart.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !whole_digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits: BigInt = format!("{whole_digits}{fracpart}")
            .parse()
            .map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), fracpart.len());
        let value = Rational::new(digits, scale);
        return Ok(if negative { -value } else { value });
    }
    let p: BigInt = t.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(p))
}

/// Serde adapter writing a rational as the string `"p/q"` (`"p"` when q = 1).
pub mod rational_str {
    use super::{parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(x)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for a sequence of rationals as coefficient strings.
pub mod rational_vec_str {
    use super::{parse_rational, Rational};
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(xs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

/// Integer binomial coefficient C(n, k), zero when k > n.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for t in 0..k {
        // exact at every step: acc * (n - t) is divisible by (t + 1)
        acc = acc * (n - t) as u64 / (t + 1) as u64;
    }
    acc
}

/// C(x, n) = x(x-1)...(x-n+1)/n! for rational x.
pub fn generalized_binomial(x: &Rational, n: usize) -> Rational {
    let mut num = Rational::one();
    for t in 0..n {
        num *= x - int(t as i64);
    }
    num / Rational::from_integer(factorial(n).into())
}

/// m! / (p_1! p_2! ...), requiring the parts to sum to m.
pub fn multinomial(m: usize, parts: &[usize]) -> Result<BigUint> {
    let sum: usize = parts.iter().sum();
    if sum != m {
        return Err(Error::MultinomialMismatch { m, sum });
    }
    let denom = parts
        .iter()
        .fold(BigUint::one(), |acc, &p| acc * factorial(p));
    let (q, r) = factorial(m).div_rem(&denom);
    debug_assert!(r.is_zero());
    Ok(q)
}

/// Values that support the rising factorial: a multiplicative identity,
/// multiplication, and translation by a nonnegative integer.
pub trait RisingBase: Clone {
    fn unit() -> Self;
    fn times(&self, other: &Self) -> Self;
    fn plus_int(&self, k: usize) -> Self;
}

impl RisingBase for Rational {
    fn unit() -> Self {
        Rational::one()
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn plus_int(&self, k: usize) -> Self {
        self + int(k as i64)
    }
}

impl RisingBase for Poly {
    fn unit() -> Self {
        Poly::one()
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn plus_int(&self, k: usize) -> Self {
        self + &Poly::constant(int(k as i64))
    }
}

/// (x)_n = x(x+1)...(x+n-1), with (x)_0 = 1.
pub fn rising_factorial<T: RisingBase>(x: &T, n: usize) -> T {
    (0..n).fold(T::unit(), |acc, k| acc.times(&x.plus_int(k)))
}

pub fn to_rational(n: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from(n.clone()))
}

/// 2^e as a rational, e may be negative.
pub fn pow2(e: i64) -> Rational {
    let p = Rational::from_integer(BigInt::one() << e.unsigned_abs() as usize);
    if e >= 0 {
        p
    } else {
        p.recip()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..20).prop_map(|(p, q)| frac(p, q))
    }

    #[test]
    fn rat_arith_examples() {
        assert_eq!(
            rat_arith(&frac(1, 2), &frac(1, 3), ArithOp::Add).unwrap(),
            frac(5, 6)
        );
        assert_eq!(
            rat_arith(&frac(-7, 9), &int(0), ArithOp::Mul).unwrap(),
            Rational::zero()
        );
        let d = rat_arith(&frac(3, 4), &frac(3, 4), ArithOp::Sub).unwrap();
        assert!(d.is_zero());
        assert_eq!(d.denom(), &BigInt::one());
        assert_eq!(
            rat_arith(&int(1), &int(0), ArithOp::Div),
            Err(Error::DivisionByZero)
        );
        assert_eq!(
            rat_arith(&int(1), &frac(-2, 3), ArithOp::Div).unwrap(),
            frac(-3, 2)
        );
    }

    #[test]
    fn normalization_is_canonical() {
        let x = frac(6, -4);
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
    }

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational("7/3").unwrap(), frac(7, 3));
        assert_eq!(parse_rational("-4/6").unwrap(), frac(-2, 3));
        assert_eq!(parse_rational("0").unwrap(), int(0));
        assert_eq!(parse_rational("0.5").unwrap(), half());
        assert_eq!(parse_rational("-1.25").unwrap(), frac(-5, 4));
        for bad in ["", "1/0", "x", "1/2/3", "1.", "1.-2", "--1"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} accepted");
        }
    }

    #[test]
    fn display_omits_unit_denominator() {
        assert_eq!(int(5).to_string(), "5");
        assert_eq!(frac(-3, 2).to_string(), "-3/2");
    }

    #[test]
    fn rising_factorial_examples() {
        assert_eq!(rising_factorial(&frac(17, 5), 0), int(1));
        assert_eq!(rising_factorial(&int(2), 3), int(24));
        let a_plus_2 = Poly::from_coeffs(vec![int(2), int(1)]);
        assert_eq!(
            rising_factorial(&a_plus_2, 2),
            Poly::from_coeffs(vec![int(6), int(5), int(1)])
        );
        assert_eq!(rising_factorial(&Poly::x(), 0), Poly::one());
        // (-m)_i vanishes once i exceeds m
        assert!(rising_factorial(&int(-3), 4).is_zero());
    }

    #[test]
    fn generalized_binomial_examples() {
        assert_eq!(generalized_binomial(&frac(3, 7), 0), int(1));
        assert_eq!(generalized_binomial(&int(5), 2), int(10));
        assert_eq!(generalized_binomial(&frac(-1, 2), 1), frac(-1, 2));
        // C(-1/2, 2) = (-1/2)(-3/2)/2
        assert_eq!(generalized_binomial(&frac(-1, 2), 2), frac(3, 8));
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial(3, &[1, 1, 1]).unwrap(), BigUint::from(6u32));
        assert_eq!(multinomial(9, &[9]).unwrap(), BigUint::one());
        assert_eq!(multinomial(4, &[2, 1, 1]).unwrap(), BigUint::from(12u32));
        assert_eq!(multinomial(0, &[0, 0]).unwrap(), BigUint::one());
        assert_eq!(
            multinomial(4, &[2, 1]),
            Err(Error::MultinomialMismatch { m: 4, sum: 3 })
        );
    }

    #[test]
    fn pow2_signs() {
        assert_eq!(pow2(3), int(8));
        assert_eq!(pow2(-2), frac(1, 4));
        assert_eq!(pow2(0), int(1));
    }

    #[test]
    fn binomial_matches_pascal() {
        let mut row = vec![BigUint::one()];
        for n in 0..40usize {
            for (k, v) in row.iter().enumerate() {
                assert_eq!(&binomial(n, k), v);
            }
            assert!(binomial(n, n + 1).is_zero());
            let mut next = vec![BigUint::one(); n + 2];
            for k in 1..=n {
                next[k] = &row[k - 1] + &row[k];
            }
            row = next;
        }
    }

    proptest! {
        #[test]
        fn rising_factorial_recurrence(x in arb_rational(), n in 1usize..=30) {
            let lhs = rising_factorial(&x, n);
            let rhs = rising_factorial(&x, n - 1) * (&x + int(n as i64 - 1));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn generalized_binomial_agrees_on_integers(k in 0usize..60, n in 0usize..60) {
            prop_assume!(n <= k);
            prop_assert_eq!(
                generalized_binomial(&int(k as i64), n),
                to_rational(&binomial(k, n))
            );
        }
    }
}
