//! Multilinear polynomials keyed by subset monomials `x_S = prod_{i in S} x_i`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ratpoly::{common_denominator, Rational};
use crate::slice::domain::SliceDomain;
use crate::subset::{binomial, Subset, MAX_N};

/// `Σ_S c(S) x_S` over variables `x_1..x_n`. Zero coefficients are never
/// stored, so the zero polynomial has no terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultilinearPoly {
    n: usize,
    terms: BTreeMap<Subset, Rational>,
}

impl MultilinearPoly {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_N, "n = {n} exceeds {MAX_N}");
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Self::monomial(n, Subset::EMPTY, c)
    }

    pub fn monomial(n: usize, s: Subset, c: Rational) -> Self {
        let mut p = Self::zero(n);
        p.add_term(s, c);
        p
    }

    /// Sums the given terms; indices must lie in `[n]`.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Subset, Rational)>) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::InvalidDomain(format!("n = {n} exceeds {MAX_N}")));
        }
        let mut p = Self::zero(n);
        for (s, c) in terms {
            if s.max() > n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: s.max(),
                });
            }
            p.add_term(s, c);
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Same polynomial viewed over `n` variables; `n` must cover every index.
    pub fn with_n(mut self, n: usize) -> Result<Self> {
        let used = self.support().max();
        if used > n || n > MAX_N {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: used,
            });
        }
        self.n = n;
        Ok(self)
    }

    pub fn add_term(&mut self, s: Subset, c: Rational) {
        debug_assert!(s.max() <= self.n);
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(s).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&s);
        }
    }

    pub fn coeff(&self, s: Subset) -> Rational {
        self.terms.get(&s).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Subset, &Rational)> {
        self.terms.iter().map(|(s, c)| (*s, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest monomial size, 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|s| s.len()).max().unwrap_or(0)
    }

    /// Union of all monomials with a non-zero coefficient.
    pub fn support(&self) -> Subset {
        self.terms.keys().fold(Subset::EMPTY, |acc, s| acc.union(*s))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let mut out = self.clone();
        for (s, c) in other.terms() {
            out.add_term(s, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        let mut out = Self::zero(self.n);
        for (s, c) in self.terms() {
            out.add_term(s, c * factor);
        }
        out
    }

    /// Product followed by multilinearization (`x_S x_T = x_{S ∪ T}`), which
    /// agrees with the ordinary product on 0/1 inputs.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let mut out = Self::zero(self.n);
        for (s, a) in self.terms() {
            for (t, b) in other.terms() {
                out.add_term(s.union(t), a * b);
            }
        }
        out
    }

    /// Value at the 0/1 vector whose 1-set is `point`.
    pub fn evaluate(&self, point: Subset) -> Rational {
        self.terms
            .iter()
            .filter(|(s, _)| s.is_subset_of(point))
            .fold(Rational::zero(), |acc, (_, c)| acc + c)
    }

    /// Value at a point of `dom`, checking that the point belongs to it.
    pub fn evaluate_on_point(&self, dom: &SliceDomain, point: Subset) -> Result<Rational> {
        if dom.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: dom.n(),
            });
        }
        if !dom.contains(point) {
            return Err(Error::PointOutsideDomain(point));
        }
        Ok(self.evaluate(point))
    }

    /// Integer form `(D, [(S, D·c(S))])` with `D` the common denominator,
    /// used by the bulk evaluators.
    pub(crate) fn scaled_terms(&self) -> (BigInt, Vec<(u64, BigInt)>) {
        let denom = common_denominator(self.terms.values());
        let scale = Rational::from_integer(denom.clone());
        let terms = self
            .terms
            .iter()
            .map(|(s, c)| (s.bits(), (c * &scale).to_integer()))
            .collect();
        (denom, terms)
    }

    /// Rewrites the polynomial using only monomials of size exactly `d`,
    /// via `x_S = C(k-|S|, d-|S|)^{-1} Σ_{S ⊆ T, |T| = d} x_T`, which holds on
    /// `([n] choose k)` whenever `k >= d`.
    pub fn homogenize(&self, dom: &SliceDomain, d: usize) -> Result<MultilinearPoly> {
        if dom.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: dom.n(),
            });
        }
        if dom.k() < d {
            return Err(Error::SliceTooSmall { k: dom.k(), d });
        }
        if self.degree() > d {
            return Err(Error::DegreeExceedsTarget {
                degree: self.degree(),
                target: d,
            });
        }
        if dom.n() < d {
            return Err(Error::Precondition(format!("n = {} < d = {d}", dom.n())));
        }
        let ground = dom.ground();
        let mut out = Self::zero(self.n);
        for (s, c) in self.terms() {
            let weight = binomial((dom.k() - s.len()) as u64, (d - s.len()) as u64);
            let share = c / Rational::from_integer(BigInt::from(weight));
            for extra in ground.difference(s).subsets_of_size(d - s.len()) {
                out.add_term(s.union(extra), share.clone());
            }
        }
        Ok(out)
    }
}

impl fmt::Display for MultilinearPoly {
    /// Renders in the polynomial text grammar, e.g. `3 - 2*x{1} + 1/2*x{1,2}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (pos, (s, c)) in self.terms.iter().enumerate() {
            let magnitude = c.abs();
            match (pos, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if s.is_empty() {
                write!(f, "{magnitude}")?;
            } else {
                if !magnitude.is_one() {
                    write!(f, "{magnitude}*")?;
                }
                write!(f, "x{s}")?;
            }
        }
        Ok(())
    }
}

/// A polynomial whose monomials may carry integer powers, e.g. `x_1^2 x_2`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RawPoly {
    /// Each term: coefficient and `(1-based variable, power >= 1)` factors.
    pub terms: Vec<(Rational, Vec<(usize, u32)>)>,
}

impl RawPoly {
    pub fn max_index(&self) -> usize {
        self.terms
            .iter()
            .flat_map(|(_, fs)| fs.iter().map(|&(i, _)| i))
            .max()
            .unwrap_or(0)
    }
}

/// Replaces every power `x_i^p` (p >= 1) by `x_i` and collects terms; the
/// result agrees with the input on all 0/1 inputs.
pub fn multilinearize(raw: &RawPoly, n: usize) -> Result<MultilinearPoly> {
    let terms = raw.terms.iter().map(|(c, factors)| {
        let s = factors
            .iter()
            .filter(|&&(_, p)| p >= 1)
            .fold(Subset::EMPTY, |acc, &(i, _)| acc.with(i));
        (s, c.clone())
    });
    if raw.max_index() > n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: raw.max_index(),
        });
    }
    MultilinearPoly::from_terms(n, terms)
}
