//! Four closed forms for the Boros-Moll polynomial P_m(a), its coefficient
//! table d_i(m), sequence-shape checks, and a floating-point cross-check
//! against the quartic integral
//!
//! ```text
//! ∫_0^∞ dx / (x^4 + 2ax^2 + 1)^(m+1) = π P_m(a) / (2^(m+3/2) (a+1)^(m+1/2)),   a > -1.
//! ```

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{
    binomial, factorial, generalized_binomial, half, int, pow2, rising_factorial, to_rational,
    Poly, Rational,
};
use crate::quadrature;

/// Which closed form to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    /// The original double sum over (j, k).
    Double,
    /// The single sum in powers of (a+1).
    Single,
    /// 2^{-2m} C(2m,m) 2F1(-m, m+1; 1/2-m; (a+1)/2).
    Hyp,
    /// Jacobi polynomial with α = m+1/2, β = -m-1/2.
    Jacobi,
}

impl Route {
    pub const ALL: [Route; 4] = [Route::Double, Route::Single, Route::Hyp, Route::Jacobi];

    pub fn name(self) -> &'static str {
        match self {
            Route::Double => "double",
            Route::Single => "single",
            Route::Hyp => "hyp",
            Route::Jacobi => "jacobi",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Route {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Route::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown method {s:?}")))
    }
}

pub fn p_route(route: Route, m: usize) -> Result<Poly> {
    Ok(match route {
        Route::Double => p_double_sum(m),
        Route::Single => p_single_sum(m),
        Route::Hyp => p_hypergeometric(m)?,
        Route::Jacobi => p_jacobi(m),
    })
}

/// Σ_{j,k} C(2m+1, 2j) C(m-j, k) C(2k+2j, k+j) (a+1)^j (a-1)^k / 2^{3(k+j)}.
///
/// Accumulated over the integers after scaling by 2^{3m}, grouping by j.
#[allow(clippy::needless_range_loop)]
pub fn p_double_sum(m: usize) -> Poly {
    // coefficient rows of (a+1)^n and (a-1)^n
    let plus: Vec<Vec<BigInt>> = (0..=m)
        .map(|n| (0..=n).map(|i| BigInt::from(binomial(n, i))).collect())
        .collect();
    let minus: Vec<Vec<BigInt>> = (0..=m)
        .map(|n| {
            (0..=n)
                .map(|i| {
                    let c = BigInt::from(binomial(n, i));
                    if (n - i) % 2 == 0 {
                        c
                    } else {
                        -c
                    }
                })
                .collect()
        })
        .collect();
    let mut total = vec![BigInt::zero(); m + 1];
    for j in 0..=m {
        let mut inner = vec![BigInt::zero(); m - j + 1];
        for k in 0..=(m - j) {
            let c = binomial(m - j, k) * binomial(2 * (k + j), k + j);
            let c = BigInt::from(c << (3 * (m - k - j)));
            for (slot, x) in inner.iter_mut().zip(&minus[k]) {
                *slot += &c * x;
            }
        }
        let outer = BigInt::from(binomial(2 * m + 1, 2 * j));
        for (p, x) in plus[j].iter().enumerate() {
            let x = &outer * x;
            for (q, y) in inner.iter().enumerate() {
                total[p + q] += &x * y;
            }
        }
    }
    let denom = BigInt::one() << (3 * m);
    Poly::from_coeffs(
        total
            .into_iter()
            .map(|c| Rational::new(c, denom.clone()))
            .collect(),
    )
}

/// 2^{-2m} Σ_k 2^k C(2m-2k, m-k) C(m+k, k) (a+1)^k.
pub fn p_single_sum(m: usize) -> Poly {
    let plus = Poly::linear(int(1), int(1)).powers(m);
    let mut total = Poly::zero();
    for (k, pk) in plus.iter().enumerate() {
        let c = binomial(2 * m - 2 * k, m - k) * binomial(m + k, k);
        total += &pk.scale(&(to_rational(&c) * pow2(k as i64)));
    }
    total.scale(&pow2(-2 * m as i64))
}

/// d_i(m) = 2^{-2m} Σ_{k=i}^{m} 2^k C(2m-2k, m-k) C(m+k, k) C(k, i).
pub fn d_coeff(m: usize, i: usize) -> Result<Rational> {
    if i > m {
        return Err(Error::IndexOutOfRange { i, m });
    }
    let sum = (i..=m).fold(Rational::zero(), |acc, k| {
        let c = binomial(2 * m - 2 * k, m - k) * binomial(m + k, k) * binomial(k, i);
        acc + to_rational(&c) * pow2(k as i64)
    });
    Ok(sum * pow2(-2 * m as i64))
}

/// The terminating 2F1 route. The lower parameter 1/2-m runs through
/// half-integers, so (1/2-m)_k never vanishes; a zero is reported as an error.
pub fn p_hypergeometric(m: usize) -> Result<Poly> {
    let upper_a = int(-(m as i64));
    let upper_b = int(m as i64 + 1);
    let lower = half() - int(m as i64);
    let arg = Poly::linear(half(), half());
    let arg_powers = arg.powers(m);
    let mut total = Poly::zero();
    for (k, xk) in arg_powers.iter().enumerate() {
        let denom = rising_factorial(&lower, k) * to_rational(&factorial(k));
        if denom.is_zero() {
            return Err(Error::VanishingDenominator { m, k });
        }
        let coeff = rising_factorial(&upper_a, k) * rising_factorial(&upper_b, k) / denom;
        total += &xk.scale(&coeff);
    }
    let prefactor = pow2(-2 * m as i64) * to_rational(&binomial(2 * m, m));
    Ok(total.scale(&prefactor))
}

/// Jacobi parameters (α, β).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiParams {
    pub alpha: Rational,
    pub beta: Rational,
}

impl JacobiParams {
    /// α = m + 1/2, β = -m - 1/2.
    pub fn boros_moll(m: usize) -> Self {
        let alpha = int(m as i64) + half();
        JacobiParams {
            beta: -alpha.clone(),
            alpha,
        }
    }
}

/// Σ_{k=0}^{m} (-1)^{m-k} C(m+β, m-k) C(m+k+α+β, k) ((1+a)/2)^k.
pub fn p_jacobi(m: usize) -> Poly {
    let JacobiParams { alpha, beta } = JacobiParams::boros_moll(m);
    let mq = int(m as i64);
    let arg_powers = Poly::linear(half(), half()).powers(m);
    let mut total = Poly::zero();
    for (k, xk) in arg_powers.iter().enumerate() {
        let sign = if (m - k).is_multiple_of(2) {
            int(1)
        } else {
            int(-1)
        };
        let c = sign
            * generalized_binomial(&(&mq + &beta), m - k)
            * generalized_binomial(&(&mq + int(k as i64) + &alpha + &beta), k);
        total += &xk.scale(&c);
    }
    total
}

/// The coefficients d_0(m), ..., d_m(m).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffTable {
    pub m: usize,
    #[serde(with = "crate::exactnum::rational_vec_str")]
    pub d: Vec<Rational>,
}

impl CoeffTable {
    pub fn new(m: usize) -> Self {
        let d = (0..=m)
            .map(|i| d_coeff(m, i).expect("index within range"))
            .collect();
        CoeffTable { m, d }
    }

    pub fn to_poly(&self) -> Poly {
        Poly::from_coeffs(self.d.clone())
    }

    /// Rows `m,i,d_i` without a header line.
    pub fn csv_rows(&self) -> Vec<String> {
        self.d
            .iter()
            .enumerate()
            .map(|(i, d)| format!("{},{},{}", self.m, i, d))
            .collect()
    }
}

/// Tables for m = 0..=m_max, computed in parallel and returned in order of m.
pub fn coeff_tables(m_max: usize) -> Vec<CoeffTable> {
    (0..=m_max).into_par_iter().map(CoeffTable::new).collect()
}

pub fn is_positive(seq: &[Rational]) -> bool {
    seq.iter().all(Signed::is_positive)
}

/// Weakly rises to a peak then weakly falls; plateaus are allowed.
pub fn is_unimodal(seq: &[Rational]) -> bool {
    let mut i = 0;
    while i + 1 < seq.len() && seq[i] <= seq[i + 1] {
        i += 1;
    }
    while i + 1 < seq.len() && seq[i] >= seq[i + 1] {
        i += 1;
    }
    i + 1 >= seq.len()
}

/// d_i^2 ≥ d_{i-1} d_{i+1} at every interior index.
pub fn is_log_concave(seq: &[Rational]) -> bool {
    seq.windows(3).all(|w| &w[1] * &w[1] >= &w[0] * &w[2])
}

pub fn check_positive(m: usize) -> bool {
    is_positive(&CoeffTable::new(m).d)
}

pub fn check_unimodal(m: usize) -> bool {
    is_unimodal(&CoeffTable::new(m).d)
}

pub fn check_log_concave(m: usize) -> bool {
    is_log_concave(&CoeffTable::new(m).d)
}

/// Every property for one m, computed from a single table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyRow {
    pub m: usize,
    pub positive: bool,
    pub unimodal: bool,
    pub log_concave: bool,
    pub table_consistent: bool,
    pub routes_equal: bool,
}

impl PropertyRow {
    pub fn all_pass(&self) -> bool {
        self.positive
            && self.unimodal
            && self.log_concave
            && self.table_consistent
            && self.routes_equal
    }
}

pub fn property_row(m: usize) -> Result<PropertyRow> {
    let table = CoeffTable::new(m);
    let single = p_single_sum(m);
    let routes_equal =
        p_double_sum(m) == single && p_hypergeometric(m)? == single && p_jacobi(m) == single;
    Ok(PropertyRow {
        m,
        positive: is_positive(&table.d),
        unimodal: is_unimodal(&table.d),
        log_concave: is_log_concave(&table.d),
        table_consistent: table.to_poly() == single && table.d.len() == m + 1,
        routes_equal,
    })
}

/// Quadrature result next to the closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegralCheck {
    pub m: usize,
    pub a: f64,
    pub quadrature: f64,
    pub error_estimate: f64,
    pub closed_form: f64,
    pub residual: f64,
}

const MAX_INTERVALS: usize = 4000;

/// π P_m(a) / (2^{m+3/2} (a+1)^{m+1/2}), with P_m(a) evaluated exactly at
/// the rational value of the double `a`.
pub fn integral_closed_form(m: usize, a: f64) -> Result<f64> {
    check_integral_args(a, 1.0)?;
    let exact_a = Rational::from_f64(a)
        .ok_or_else(|| Error::InvalidArgument(format!("a = {a} is not finite")))?;
    let pm = p_single_sum(m)
        .eval(&exact_a)
        .to_f64()
        .ok_or_else(|| Error::InvalidArgument("P_m(a) overflows a double".into()))?;
    let mf = m as f64;
    Ok(std::f64::consts::PI * pm / (2f64.powf(mf + 1.5) * (a + 1.0).powf(mf + 0.5)))
}

/// The integral split at x = 1; the tail is mapped onto (0, 1] by x ↦ 1/x,
/// which turns it into ∫_0^1 t^{4m+2} / (t^4 + 2at^2 + 1)^{m+1} dt.
pub fn integral_check(m: usize, a: f64, tol: f64) -> Result<IntegralCheck> {
    check_integral_args(a, tol)?;
    let power = m as i32 + 1;
    let head = move |x: f64| {
        let x2 = x * x;
        (x2 * x2 + 2.0 * a * x2 + 1.0).powi(-power)
    };
    let tail = move |t: f64| {
        let t2 = t * t;
        t.powi(4 * m as i32 + 2) * (t2 * t2 + 2.0 * a * t2 + 1.0).powi(-power)
    };
    let first = quadrature::integrate(head, 0.0, 1.0, tol / 2.0, MAX_INTERVALS)?;
    let second = quadrature::integrate(tail, 0.0, 1.0, tol / 2.0, MAX_INTERVALS)?;
    let q = first.value + second.value;
    let closed_form = integral_closed_form(m, a)?;
    Ok(IntegralCheck {
        m,
        a,
        quadrature: q,
        error_estimate: first.error + second.error,
        closed_form,
        residual: (q - closed_form).abs(),
    })
}

/// |quadrature - closed form| for the quartic integral.
pub fn integral_residual(m: usize, a: f64, tol: f64) -> Result<f64> {
    integral_check(m, a, tol).map(|c| c.residual)
}

fn check_integral_args(a: f64, tol: f64) -> Result<()> {
    if !(a.is_finite() && a > -1.0) {
        return Err(Error::InvalidArgument(format!(
            "a = {a} must satisfy a > -1"
        )));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance {tol} must be positive"
        )));
    }
    Ok(())
}

/// Leading coefficient d_m(m) = 2^{-m} C(2m, m), the k = m term of the single sum.
pub fn leading_coeff(m: usize) -> Rational {
    to_rational(&binomial(2 * m, m)) * pow2(-(m as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::frac;
    use num_traits::One;

    fn p1() -> Poly {
        Poly::linear(frac(3, 2), Rational::one())
    }

    fn p2() -> Poly {
        Poly::from_coeffs(vec![frac(21, 8), frac(30, 8), frac(12, 8)])
    }

    #[test]
    fn double_sum_small_cases() {
        assert_eq!(p_double_sum(0), Poly::one());
        assert_eq!(p_double_sum(1), p1());
        assert_eq!(p_double_sum(2), p2());
    }

    #[test]
    fn single_sum_small_cases() {
        assert_eq!(p_single_sum(0), Poly::one());
        assert_eq!(p_single_sum(1), p1());
        assert_eq!(p_single_sum(2), p2());
    }

    #[test]
    fn hypergeometric_small_cases() {
        assert_eq!(p_hypergeometric(0).unwrap(), Poly::one());
        assert_eq!(p_hypergeometric(1).unwrap(), p1());
        assert_eq!(p_hypergeometric(5).unwrap(), p_single_sum(5));
    }

    #[test]
    fn jacobi_small_cases() {
        assert_eq!(p_jacobi(0), Poly::one());
        assert_eq!(p_jacobi(1), p1());
        assert_eq!(p_jacobi(3), p_single_sum(3));
        let params = JacobiParams::boros_moll(4);
        assert!((&params.alpha + &params.beta).is_zero());
        assert_eq!(params.alpha, frac(9, 2));
    }

    #[test]
    fn d_coeff_examples() {
        assert_eq!(d_coeff(1, 1).unwrap(), int(1));
        assert_eq!(d_coeff(1, 0).unwrap(), frac(3, 2));
        assert_eq!(d_coeff(2, 0).unwrap(), frac(21, 8));
        assert_eq!(d_coeff(2, 3), Err(Error::IndexOutOfRange { i: 3, m: 2 }));
    }

    #[test]
    fn routes_agree_up_to_twelve() {
        for m in 0..=12 {
            let single = p_single_sum(m);
            for route in Route::ALL {
                assert_eq!(p_route(route, m).unwrap(), single, "route {route} at m={m}");
            }
            assert_eq!(single.degree(), Some(m));
            assert_eq!(single.coeff(m), leading_coeff(m));
            assert_eq!(d_coeff(m, m).unwrap(), leading_coeff(m));
        }
    }

    #[test]
    fn shape_checks_small() {
        for m in [0, 1, 20] {
            assert!(check_positive(m));
            assert!(check_unimodal(m));
            assert!(check_log_concave(m));
        }
    }

    #[test]
    fn shape_predicates_on_handmade_sequences() {
        let s = |v: &[i64]| v.iter().map(|&x| int(x)).collect::<Vec<_>>();
        assert!(is_unimodal(&s(&[1, 2, 2, 3, 1])));
        assert!(is_unimodal(&s(&[3, 3, 3])));
        assert!(is_unimodal(&s(&[])));
        assert!(!is_unimodal(&s(&[1, 3, 2, 4])));
        assert!(!is_unimodal(&s(&[2, 1, 2])));
        assert!(is_log_concave(&s(&[1, 2, 4])));
        assert!(!is_log_concave(&s(&[1, 1, 4])));
        assert!(!is_positive(&s(&[1, 0])));
        assert!(is_positive(&s(&[])));
    }

    #[test]
    fn coeff_table_serialization() {
        let t = CoeffTable::new(1);
        let js = serde_json::to_string(&t).unwrap();
        assert_eq!(js, r#"{"m":1,"d":["3/2","1"]}"#);
        assert_eq!(serde_json::from_str::<CoeffTable>(&js).unwrap(), t);
        assert_eq!(t.csv_rows(), vec!["1,0,3/2", "1,1,1"]);
        let tables = coeff_tables(6);
        assert!(tables
            .iter()
            .enumerate()
            .all(|(m, t)| t.m == m && t.d.len() == m + 1));
    }

    #[test]
    fn route_names_round_trip() {
        for r in Route::ALL {
            assert_eq!(r.name().parse::<Route>().unwrap(), r);
        }
        assert!("simpson".parse::<Route>().is_err());
    }

    #[test]
    fn integral_examples() {
        let c = integral_check(0, 1.0, 1e-10).unwrap();
        assert!((c.closed_form - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
        assert!(c.residual < 1e-8);
        assert!(integral_residual(1, 0.0, 1e-10).unwrap() < 1e-8);
        assert!(integral_residual(3, 2.0, 1e-10).unwrap() < 1e-8);
    }

    #[test]
    fn integral_rejects_bad_arguments() {
        assert!(integral_residual(1, -1.0, 1e-10).is_err());
        assert!(integral_residual(1, 0.0, -1.0).is_err());
        assert!(integral_residual(1, f64::NAN, 1e-10).is_err());
    }
}
