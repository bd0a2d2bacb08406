//! Exact rationals and univariate polynomials over them.
//!
//! Every scalar in the crate is a [`Rational`]; there is no floating point
//! anywhere. Univariate polynomials are stored as dense coefficient vectors,
//! lowest degree first, with trailing zeros trimmed so that the zero
//! polynomial is the empty vector.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses `[+-]int[/posint]`, e.g. `-3/2`. Surrounding whitespace is ignored.
pub fn parse_rational(text: &str) -> Result<Rational> {
    parse_rational_at(text, 0)
}

/// Like [`parse_rational`], reporting error columns relative to `offset`.
pub(crate) fn parse_rational_at(text: &str, offset: usize) -> Result<Rational> {
    let lead = text.len() - text.trim_start().len();
    let body = text.trim();
    let err = |col: usize, message: &str| Error::Parse {
        column: offset + lead + col + 1,
        message: message.to_string(),
    };
    if body.is_empty() {
        return Err(err(0, "expected a rational number"));
    }
    let (negative, digits_start) = match body.as_bytes()[0] {
        b'-' => (true, 1),
        b'+' => (false, 1),
        _ => (false, 0),
    };
    let rest = &body[digits_start..];
    let (numer_text, denom_text) = match rest.find('/') {
        Some(slash) => (&rest[..slash], Some((&rest[slash + 1..], digits_start + slash + 1))),
        None => (rest, None),
    };
    let digits = |s: &str, col: usize| -> Result<BigInt> {
        if s.is_empty() {
            return Err(err(col, "expected digits"));
        }
        if let Some(pos) = s.find(|c: char| !c.is_ascii_digit()) {
            return Err(err(col + pos, "unexpected character in number"));
        }
        Ok(s.parse::<BigInt>().expect("validated digits"))
    };
    let mut numer = digits(numer_text, digits_start)?;
    if negative {
        numer = -numer;
    }
    let denom = match denom_text {
        Some((s, col)) => {
            let d = digits(s, col)?;
            if d.is_zero() {
                return Err(err(col, "zero denominator"));
            }
            d
        }
        None => BigInt::one(),
    };
    Ok(Rational::new(numer, denom))
}

/// Least common multiple of the denominators of `values` (1 for an empty list).
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UnivariatePoly {
    coeffs: Vec<Rational>,
}

impl UnivariatePoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Self::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    /// Coefficients, lowest degree first.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn evaluate(&self, x: i64) -> Rational {
        self.evaluate_at(&rat(x))
    }

    pub fn evaluate_at(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Lagrange interpolation through `points`; the result has degree below
    /// the number of points.
    pub fn interpolate(points: &[(i64, Rational)]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Precondition("empty interpolation input".into()));
        }
        for (i, (xi, _)) in points.iter().enumerate() {
            if points[..i].iter().any(|(xj, _)| xj == xi) {
                return Err(Error::DegenerateInterpolation(*xi));
            }
        }
        let mut acc = vec![Rational::zero(); points.len()];
        for (i, (xi, yi)) in points.iter().enumerate() {
            if yi.is_zero() {
                continue;
            }
            // basis_i(x) = prod_{j != i} (x - xj) / (xi - xj)
            let mut basis = vec![Rational::one()];
            let mut denom = Rational::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                let shift = rat(*xj);
                let mut next = vec![Rational::zero(); basis.len() + 1];
                for (p, c) in basis.iter().enumerate() {
                    next[p + 1] += c;
                    next[p] -= c * &shift;
                }
                basis = next;
                denom *= rat(xi - xj);
            }
            let scale = yi / denom;
            for (slot, c) in acc.iter_mut().zip(basis) {
                *slot += c * &scale;
            }
        }
        Ok(Self::from_coeffs(acc))
    }

    /// Forward differences `Δ^j P(0)` for `j = 0..=degree`, so that
    /// `P(x) = Σ_j Δ^j P(0) · C(x, j)`.
    pub fn newton_coefficients(&self) -> Vec<Rational> {
        let mut values: Vec<Rational> = (0..=self.degree() as i64).map(|x| self.evaluate(x)).collect();
        let mut out = Vec::with_capacity(values.len());
        while !values.is_empty() {
            out.push(values[0].clone());
            values = values.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        out
    }
}

impl fmt::Display for UnivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (power, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match power {
                0 => write!(f, "{magnitude}")?,
                _ => {
                    if !magnitude.is_one() {
                        write!(f, "{magnitude}*")?;
                    }
                    write!(f, "x")?;
                    if power > 1 {
                        write!(f, "^{power}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
