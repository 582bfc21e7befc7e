use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::WeightsError;

/// Polynomial with exact rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolynomial {
    coefficients: Vec<BigRational>,
}

impl RationalPolynomial {
    pub fn new(mut coefficients: Vec<BigRational>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        RationalPolynomial { coefficients }
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coefficients.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.coefficients.iter().all(BigRational::is_integer)
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let a = c.abs();
            if wrote {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let mono = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            if k == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for RationalPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coefficients.iter().map(ToString::to_string).collect();
        v.serialize(s)
    }
}

/// Result of an exact interpolation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolynomialFit {
    pub polynomial: RationalPolynomial,
    pub degree: usize,
    pub points: usize,
    /// Points beyond the `degree + 1` needed to determine the polynomial.
    pub checks: usize,
}

/// Minimal-degree exact interpolant through all points, optionally bounded in degree.
pub fn fit_polynomial(
    points: &[(BigRational, BigRational)],
    degree_bound: Option<usize>,
) -> Result<PolynomialFit, WeightsError> {
    let mut pts: Vec<(BigRational, BigRational)> = Vec::with_capacity(points.len());
    for (x, y) in points {
        match pts.iter().find(|(a, _)| a == x) {
            Some((_, b)) if b != y => return Err(WeightsError::DuplicateArgument(x.to_string())),
            Some(_) => {}
            None => pts.push((x.clone(), y.clone())),
        }
    }
    if pts.len() < 2 {
        return Err(WeightsError::TooFewPoints(pts.len()));
    }
    // Newton divided differences, then expansion into the monomial basis.
    let m = pts.len();
    let mut dd: Vec<BigRational> = pts.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..m {
        for i in (level..m).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&pts[i].0 - &pts[i - level].0);
        }
    }
    let mut coeffs = vec![BigRational::zero(); m];
    for i in (0..m).rev() {
        // coeffs ← coeffs·(x − x_i) + dd[i]
        let mut next = vec![BigRational::zero(); m];
        for k in 0..m {
            if k + 1 < m {
                next[k + 1] += &coeffs[k];
            }
            next[k] -= &coeffs[k] * &pts[i].0;
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    let polynomial = RationalPolynomial::new(coeffs);
    let degree = polynomial.degree();
    if let Some(bound) = degree_bound {
        if degree > bound {
            return Err(WeightsError::DegreeBound { degree, bound });
        }
    }
    debug_assert!(pts.iter().all(|(x, y)| &polynomial.eval(x) == y));
    Ok(PolynomialFit { polynomial, degree, points: m, checks: m - degree - 1 })
}

/// Convenience wrapper for integer data.
pub fn fit_integer_points(points: &[(i64, i128)], degree_bound: Option<usize>) -> Result<PolynomialFit, WeightsError> {
    let pts: Vec<(BigRational, BigRational)> = points
        .iter()
        .map(|&(x, y)| (BigRational::from_integer(BigInt::from(x)), BigRational::from_integer(BigInt::from(y))))
        .collect();
    fit_polynomial(&pts, degree_bound)
}
