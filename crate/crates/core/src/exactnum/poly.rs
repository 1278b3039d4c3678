//! Dense univariate polynomials in the formal variable `a` over the rationals.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{int, Rational};

/// Coefficients are stored degree-ascending with trailing zeros trimmed, so
/// the zero polynomial is the empty vector and `==` is polynomial equality.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The variable `a`.
    pub fn x() -> Self {
        Self::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    /// `c0 + c1*a`
    pub fn linear(c0: Rational, c1: Rational) -> Self {
        Self::from_coeffs(vec![c0, c1])
    }

    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `a^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Horner evaluation at a rational point.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Square-and-multiply; `p^0 = 1` for every p, including zero.
    pub fn pow(&self, mut n: usize) -> Self {
        let mut result = Poly::one();
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `[p^0, p^1, ..., p^n]`
    pub fn powers(&self, n: usize) -> Vec<Poly> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(Poly::one());
        for k in 1..=n {
            let next = &out[k - 1] * self;
            out.push(next);
        }
        out
    }
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Self {
        Poly::constant(c)
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        if rhs.coeffs.len() > self.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), Rational::zero());
        }
        for (c, r) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *c += r;
        }
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }
}

impl AddAssign for Poly {
    fn add_assign(&mut self, rhs: Poly) {
        *self += &rhs;
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += x * y;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Mul<&Rational> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Rational) -> Poly {
        self.scale(rhs)
    }
}

impl Mul<Rational> for Poly {
    type Output = Poly;
    fn mul(self, rhs: Rational) -> Poly {
        self.scale(&rhs)
    }
}

impl Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

impl<'a> Sum<&'a Poly> for Poly {
    fn sum<I: Iterator<Item = &'a Poly>>(iter: I) -> Poly {
        iter.fold(Poly::zero(), |mut acc, p| {
            acc += p;
            acc
        })
    }
}

impl Product for Poly {
    fn product<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::one(), |acc, p| &acc * &p)
    }
}

/// Human-readable form, highest degree first: `3/2*a^2 + 15/4*a + 21/8`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            let unit = mag == int(1);
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !unit {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        f.write_str("a")?;
                    } else {
                        write!(f, "a^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        super::rational_vec_str::serialize(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        super::rational_vec_str::deserialize(d).map(Poly::from_coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::super::frac;
    use super::*;
    use proptest::prelude::*;

    fn arb_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec((-9i64..10, 1i64..5), 0..6)
            .prop_map(|cs| Poly::from_coeffs(cs.into_iter().map(|(p, q)| frac(p, q)).collect()))
    }

    fn p(cs: &[i64]) -> Poly {
        Poly::from_coeffs(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn trims_trailing_zeros() {
        let z = Poly::from_coeffs(vec![int(0), int(0)]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        assert_eq!(p(&[1, 2, 0]).degree(), Some(1));
        assert!((&p(&[1, 1]) - &p(&[1, 1])).is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let sq = &p(&[1, 1]) * &p(&[-1, 1]);
        assert_eq!(sq, p(&[-1, 0, 1]));
        assert_eq!(sq.eval(&int(3)), int(8));
    }

    #[test]
    fn pow_zero_is_one() {
        assert_eq!(p(&[4, 5, 6]).pow(0), Poly::one());
        assert_eq!(Poly::zero().pow(0), Poly::one());
        assert_eq!(Poly::zero().pow(3), Poly::zero());
        assert_eq!(p(&[1, 1]).pow(3), p(&[1, 3, 3, 1]));
    }

    #[test]
    fn display() {
        let q = Poly::from_coeffs(vec![frac(21, 8), frac(15, 4), frac(3, 2)]);
        assert_eq!(q.to_string(), "3/2*a^2 + 15/4*a + 21/8");
        assert_eq!(p(&[-3, -1]).to_string(), "-a - 3");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn serializes_as_coefficient_strings() {
        let q = Poly::from_coeffs(vec![frac(3, 2), int(1)]);
        let js = serde_json::to_string(&q).unwrap();
        assert_eq!(js, r#"["3/2","1"]"#);
        let back: Poly = serde_json::from_str(&js).unwrap();
        assert_eq!(back, q);
        let trimmed: Poly = serde_json::from_str(r#"["1","0"]"#).unwrap();
        assert_eq!(trimmed, Poly::one());
        assert!(serde_json::from_str::<Poly>(r#"["1/0"]"#).is_err());
    }

    proptest! {
        #[test]
        fn ring_axioms(x in arb_poly(), y in arb_poly(), z in arb_poly()) {
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert!(x.coeffs().last().is_none_or(|c| !c.is_zero()));
        }

        #[test]
        fn eval_is_a_homomorphism(x in arb_poly(), y in arb_poly(), n in -6i64..7, d in 1i64..4) {
            let t = frac(n, d);
            prop_assert_eq!((&x + &y).eval(&t), x.eval(&t) + y.eval(&t));
            prop_assert_eq!((&x * &y).eval(&t), x.eval(&t) * y.eval(&t));
            prop_assert_eq!(x.pow(3).eval(&t), num_traits::pow(x.eval(&t), 3));
        }

        #[test]
        fn serde_roundtrip(x in arb_poly()) {
            let js = serde_json::to_string(&x).unwrap();
            prop_assert_eq!(serde_json::from_str::<Poly>(&js).unwrap(), x);
        }
    }
}
