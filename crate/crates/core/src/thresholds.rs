//! Junta thresholds for `A`-valued degree-`d` functions on the slice.
//!
//! `W(A,d)` is the least `W` such that every polynomial of degree at most `d`
//! taking values in `A` at `0, 1, ..., W` is constant. The threshold is
//!
//! ```text
//! k(A,d) = d + max_{1 <= s <= d} floor(d/s) * (W(A,s) - s)
//! ```
//!
//! and `kappa(A,d)` is the same quantity written as a three-way maximum over
//! the constraints that the non-junta constructions have to dodge. The two
//! are computed independently and compared in [`build_table`].

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ratpoly::{common_denominator, parse_rational_at, rat, Rational, UnivariatePoly};

/// A finite set of rationals with at least two elements, sorted increasingly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ValueSet {
    elements: Vec<Rational>,
}

impl ValueSet {
    /// Sorts the input; duplicates and sets with fewer than two elements are
    /// rejected.
    pub fn new(mut elements: Vec<Rational>) -> Result<Self> {
        elements.sort();
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidValueSet(format!("duplicate element {}", w[0])));
        }
        if elements.len() < 2 {
            return Err(Error::InvalidValueSet(
                "a value set needs at least two elements".into(),
            ));
        }
        Ok(Self { elements })
    }

    pub fn from_integers(values: &[i64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| rat(v)).collect())
    }

    pub fn elements(&self) -> &[Rational] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, value: &Rational) -> bool {
        self.elements.binary_search(value).is_ok()
    }

    /// Whether the whole set is an arithmetic progression.
    pub fn is_arithmetic_progression(&self) -> bool {
        longest_ap(self) == self.len()
    }
}

impl fmt::Display for ValueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl FromStr for ValueSet {
    type Err = Error;

    /// `{r1,r2,...}` with rational entries; whitespace is insignificant.
    fn from_str(text: &str) -> Result<Self> {
        let lead = text.len() - text.trim_start().len();
        let body = text.trim();
        let parse_err = |column: usize, message: &str| Error::Parse {
            column,
            message: message.to_string(),
        };
        if !body.starts_with('{') {
            return Err(parse_err(lead + 1, "expected '{'"));
        }
        if !body.ends_with('}') || body.len() < 2 {
            return Err(parse_err(lead + body.len(), "expected '}'"));
        }
        let inner = &body[1..body.len() - 1];
        let mut elements = Vec::new();
        let mut offset = lead + 1;
        if !inner.trim().is_empty() {
            for piece in inner.split(',') {
                elements.push(parse_rational_at(piece, offset)?);
                offset += piece.len() + 1;
            }
        }
        ValueSet::new(elements)
    }
}

/// One row of the threshold table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdRow {
    pub set: ValueSet,
    pub d: usize,
    pub w: usize,
    pub k: usize,
    pub kappa: usize,
    pub attaining_s: BTreeSet<usize>,
}

/// `A` scaled by the common denominator, so the witness search runs on
/// integers.
struct ScaledSet {
    members: Vec<BigInt>,
}

impl ScaledSet {
    fn new(set: &ValueSet) -> Self {
        let denom = common_denominator(set.elements());
        let members = set
            .elements()
            .iter()
            .map(|e| (e * Rational::from_integer(denom.clone())).to_integer())
            .collect();
        Self { members }
    }

    fn contains(&self, v: &BigInt) -> bool {
        self.members.binary_search(v).is_ok()
    }

    /// Visits every tuple of `A^(d+1)` in lexicographic order (first entry
    /// most significant) until `visit` returns `true`.
    fn for_each_tuple(&self, len: usize, mut visit: impl FnMut(&[usize]) -> bool) {
        let base = self.members.len();
        let mut idx = vec![0usize; len];
        loop {
            if visit(&idx) {
                return;
            }
            let mut pos = len;
            loop {
                if pos == 0 {
                    return;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < base {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }

    /// Largest `L <= cap` with `P(0..=L)` all in `A`, where `P` is the
    /// degree-`d` polynomial through the tuple at `0..=d`. Extension runs on
    /// the forward-difference table, so it is exact integer arithmetic.
    fn run_length(&self, idx: &[usize], cap: usize) -> usize {
        let d = idx.len() - 1;
        let mut diffs: Vec<BigInt> = idx.iter().map(|&i| self.members[i].clone()).collect();
        // diffs[j] <- Δ^j P(0)
        for j in 1..=d {
            for i in (j..=d).rev() {
                let prev = diffs[i - 1].clone();
                diffs[i] -= prev;
            }
        }
        // advance to x = d; those values are tuple entries and lie in A
        let step = |diffs: &mut Vec<BigInt>| {
            for j in 0..d {
                let next = diffs[j + 1].clone();
                diffs[j] += next;
            }
        };
        for _ in 0..d {
            step(&mut diffs);
        }
        let mut x = d;
        while x < cap {
            step(&mut diffs);
            if !self.contains(&diffs[0]) {
                break;
            }
            x += 1;
        }
        x
    }
}

fn is_constant_tuple(idx: &[usize]) -> bool {
    idx.iter().all(|&i| i == idx[0])
}

fn tuple_polynomial(set: &ValueSet, idx: &[usize]) -> UnivariatePoly {
    let pts: Vec<_> = idx
        .iter()
        .enumerate()
        .map(|(x, &i)| (x as i64, set.elements()[i].clone()))
        .collect();
    UnivariatePoly::interpolate(&pts).expect("distinct abscissae")
}

/// Searches for a non-constant polynomial of degree at most `d` with
/// `P(0), ..., P(last)` all in `A`. Value tuples at `0..=d` are enumerated
/// lexicographically in the set's order, so the certificate is deterministic.
pub fn find_nonconstant_witness(set: &ValueSet, d: usize, last: usize) -> Option<UnivariatePoly> {
    assert!(d >= 1, "degree must be at least 1");
    let scaled = ScaledSet::new(set);
    let mut found = None;
    scaled.for_each_tuple(d + 1, |idx| {
        if is_constant_tuple(idx) || scaled.run_length(idx, last) < last {
            return false;
        }
        found = Some(tuple_polynomial(set, idx));
        true
    });
    found
}

/// `W(A,d)`, guaranteed to satisfy `d < W <= |A| d`.
///
/// The search computes, in one pass over `A^(d+1)`, how far each non-constant
/// tuple extends inside `A`; `W` is one past the longest extension. This is the
/// same as scanning `L = d+1, d+2, ...` for the first `L` without a witness.
pub fn compute_w(set: &ValueSet, d: usize) -> usize {
    assert!(d >= 1, "W(A,d) is defined for d >= 1");
    let cap = set.len() * d;
    let scaled = ScaledSet::new(set);
    let mut longest = d;
    scaled.for_each_tuple(d + 1, |idx| {
        if !is_constant_tuple(idx) {
            longest = longest.max(scaled.run_length(idx, cap));
        }
        false
    });
    let w = longest + 1;
    assert!(
        d < w && w <= cap,
        "W({set},{d}) = {w} violates d < W <= |A|d"
    );
    w
}

/// `W(A,s)` for `s = 1..=d_max`, indexed by `s - 1`.
pub fn w_profile(set: &ValueSet, d_max: usize) -> Vec<usize> {
    (1..=d_max).map(|s| compute_w(set, s)).collect()
}

fn k_from_profile(profile: &[usize], d: usize) -> (usize, BTreeSet<usize>) {
    let values: Vec<(usize, usize)> = (1..=d)
        .map(|s| (s, (d / s) * (profile[s - 1] - s)))
        .collect();
    let best = values.iter().map(|&(_, v)| v).max().expect("d >= 1");
    let attaining = values
        .iter()
        .filter(|&&(_, v)| v == best)
        .map(|&(s, _)| s)
        .collect();
    (d + best, attaining)
}

fn kappa_from_profile(profile: &[usize], d: usize) -> usize {
    let w = |s: usize| profile[s - 1];
    let first = d + 1;
    let second = (0..d).map(|e| e + w(d - e)).max().unwrap_or(0);
    let third = (1..=d)
        .flat_map(|s| (1..=d / s).map(move |r| (s, r)))
        .map(|(s, r)| d - r * s + r * w(s))
        .max()
        .unwrap_or(0);
    first.max(second).max(third)
}

/// `k(A,d)` and every `s` attaining the maximum in its defining formula.
pub fn compute_k(set: &ValueSet, d: usize) -> (usize, BTreeSet<usize>) {
    assert!(d >= 1, "k(A,d) is defined for d >= 1");
    k_from_profile(&w_profile(set, d), d)
}

/// `kappa(A,d)` as the three-way maximum over the construction constraints.
pub fn compute_kappa(set: &ValueSet, d: usize) -> usize {
    assert!(d >= 1, "kappa(A,d) is defined for d >= 1");
    kappa_from_profile(&w_profile(set, d), d)
}

/// Length of the longest arithmetic progression inside `A` (at least 2).
pub fn longest_ap(set: &ValueSet) -> usize {
    let e = set.elements();
    let mut best = 2;
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            let step = &e[j] - &e[i];
            debug_assert!(!step.is_zero());
            let mut len = 2;
            let mut next = &e[j] + &step;
            while set.contains(&next) {
                len += 1;
                next += &step;
            }
            best = best.max(len);
        }
    }
    best
}

/// Threshold rows for every set and every `d <= d_max`, sets in input order
/// and `d` ascending. `W(A,s)` is computed once per set.
pub fn build_table(sets: &[ValueSet], d_max: usize) -> Result<Vec<ThresholdRow>> {
    if d_max == 0 {
        return Err(Error::Precondition("d_max must be at least 1".into()));
    }
    let mut rows = Vec::with_capacity(sets.len() * d_max);
    for set in sets {
        let profile = w_profile(set, d_max);
        for d in 1..=d_max {
            let (k, attaining_s) = k_from_profile(&profile, d);
            let kappa = kappa_from_profile(&profile, d);
            if kappa != k {
                return Err(Error::ThresholdMismatch {
                    set: set.to_string(),
                    d,
                    k,
                    kappa,
                });
            }
            rows.push(ThresholdRow {
                set: set.clone(),
                d,
                w: profile[d - 1],
                k,
                kappa,
                attaining_s,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::ratio;

    fn set(values: &[i64]) -> ValueSet {
        ValueSet::from_integers(values).unwrap()
    }

    /// Checks a certificate directly against the definition.
    fn verifies(set: &ValueSet, d: usize, last: usize, p: &UnivariatePoly) -> bool {
        !p.is_constant() && p.degree() <= d && (0..=last as i64).all(|x| set.contains(&p.evaluate(x)))
    }

    /// W by the upward scan over `find_nonconstant_witness`.
    fn w_by_scan(set: &ValueSet, d: usize) -> usize {
        (d + 1..)
            .find(|&l| find_nonconstant_witness(set, d, l).is_none())
            .unwrap()
    }

    #[test]
    fn value_set_parsing() {
        let s: ValueSet = " { 3, 0 ,1/2 }".parse().unwrap();
        assert_eq!(s.elements(), &[rat(0), ratio(1, 2), rat(3)]);
        assert_eq!(s.to_string(), "{0,1/2,3}");
        assert!(matches!("{1}".parse::<ValueSet>(), Err(Error::InvalidValueSet(_))));
        assert!(matches!("{1,1}".parse::<ValueSet>(), Err(Error::InvalidValueSet(_))));
        assert!(matches!("{}".parse::<ValueSet>(), Err(Error::InvalidValueSet(_))));
        assert!(matches!("0,1".parse::<ValueSet>(), Err(Error::Parse { column: 1, .. })));
        assert!(matches!("{0,x}".parse::<ValueSet>(), Err(Error::Parse { column: 4, .. })));
    }

    #[test]
    fn witness_examples() {
        let boolean = set(&[0, 1]);
        let p = find_nonconstant_witness(&boolean, 1, 1).unwrap();
        assert_eq!(p, UnivariatePoly::x());
        assert!(find_nonconstant_witness(&boolean, 1, 2).is_none());

        let a013 = set(&[0, 1, 3]);
        let p = find_nonconstant_witness(&a013, 2, 5).unwrap();
        assert!(verifies(&a013, 2, 5, &p));
        // the only such polynomial is the gate polynomial 3 - 2x + x(x-1)/2
        assert_eq!(p, UnivariatePoly::from_coeffs(vec![rat(3), ratio(-5, 2), ratio(1, 2)]));
        assert!(find_nonconstant_witness(&a013, 2, 6).is_none());
    }

    #[test]
    fn w_examples() {
        assert_eq!(compute_w(&set(&[0, 1]), 2), 4);
        assert_eq!(compute_w(&set(&[0, 1, 4, 5, 20]), 3), 7);
        assert_eq!(compute_w(&set(&[0, 1, 27, 126, 370]), 4), 10);
    }

    #[test]
    fn w_matches_upward_scan() {
        for values in [&[0, 1][..], &[0, 1, 3], &[0, 2, 4], &[-1, 0, 5, 6]] {
            let s = set(values);
            for d in 1..=3 {
                assert_eq!(compute_w(&s, d), w_by_scan(&s, d), "A = {s}, d = {d}");
            }
        }
    }

    #[test]
    fn k_and_kappa_examples() {
        assert_eq!(compute_k(&set(&[0, 1]), 3), (6, BTreeSet::from([1])));
        assert_eq!(compute_k(&set(&[0, 1, 3]), 2), (6, BTreeSet::from([2])));
        assert_eq!(
            compute_k(&set(&[0, 1, 27, 126, 370]), 2),
            (4, BTreeSet::from([1, 2]))
        );
        assert_eq!(compute_kappa(&set(&[0, 1]), 1), 2);
        assert_eq!(compute_kappa(&set(&[0, 1, 3]), 4), 12);
        assert_eq!(compute_kappa(&set(&[0, 1, 2]), 3), 9);
    }

    /// Smallest kappa meeting the three construction constraints, checked
    /// one candidate at a time with the witness search.
    fn kappa_by_definition(set: &ValueSet, d: usize) -> usize {
        (d + 1..)
            .find(|&kappa| {
                let cond2 = (0..d).all(|e| find_nonconstant_witness(set, d - e, kappa - e).is_none());
                let cond3 = (0..=d).all(|t| {
                    (1..=d).all(|r| {
                        (1..=d)
                            .filter(|&s| t + r * s <= d)
                            .all(|s| find_nonconstant_witness(set, s, (kappa - t) / r).is_none())
                    })
                });
                cond2 && cond3
            })
            .unwrap()
    }

    #[test]
    fn kappa_formula_matches_definition() {
        for values in [&[0, 1][..], &[0, 1, 3], &[0, 1, 4, 5, 20]] {
            let s = set(values);
            for d in 1..=3 {
                assert_eq!(compute_kappa(&s, d), kappa_by_definition(&s, d), "A = {s}, d = {d}");
            }
        }
    }

    #[test]
    fn longest_ap_examples() {
        assert_eq!(longest_ap(&set(&[0, 1, 3])), 2);
        assert_eq!(longest_ap(&set(&[0, 1, 2, 3])), 4);
        assert_eq!(longest_ap(&set(&[0, 5, 7, 8, 12, 13, 15])), 2);
        assert_eq!(longest_ap(&set(&[1, 4, 5, 7, 9, 10])), 4);
    }

    /// Brute force over every subset, checking the AP property directly.
    fn longest_ap_brute(set: &ValueSet) -> usize {
        let e = set.elements();
        let mut best = 0;
        for mask in 1u32..(1 << e.len()) {
            let chosen: Vec<_> = (0..e.len()).filter(|i| mask >> i & 1 == 1).map(|i| &e[i]).collect();
            let is_ap = chosen.windows(3).all(|w| w[1] - w[0] == w[2] - w[1]);
            if is_ap {
                best = best.max(chosen.len());
            }
        }
        best
    }

    #[test]
    fn longest_ap_matches_brute_force_and_w1() {
        for values in [&[0, 5, 7, 8, 12, 13, 15][..], &[0, 1, 27, 126, 370], &[2, 3, 5, 7, 11, 13]] {
            let s = set(values);
            assert_eq!(longest_ap(&s), longest_ap_brute(&s));
            assert_eq!(compute_w(&s, 1), longest_ap(&s));
        }
    }

    #[test]
    fn table_rows() {
        let rows = build_table(&[set(&[0, 1])], 1).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!((rows[0].w, rows[0].k, rows[0].kappa), (2, 2, 2));
        assert_eq!(rows[0].attaining_s, BTreeSet::from([1]));

        let rows = build_table(&[set(&[0, 2, 4])], 2).unwrap();
        assert_eq!(rows.iter().map(|r| r.k).collect::<Vec<_>>(), vec![3, 6]);
        assert!(build_table(&[set(&[0, 1])], 0).is_err());
    }

    #[test]
    fn bounds_and_monotonicity() {
        for values in [&[0, 1][..], &[0, 1, 3], &[0, 1, 4, 5, 20], &[-2, 0, 1, 7]] {
            let s = set(values);
            let profile = w_profile(&s, 4);
            for d in 1..=4 {
                let w = profile[d - 1];
                assert!(d < w && w <= s.len() * d);
                let cert = find_nonconstant_witness(&s, d, w - 1).expect("certificate below W");
                assert!(verifies(&s, d, w - 1, &cert));
                assert_eq!(compute_kappa(&s, d), compute_k(&s, d).0);
            }
            assert!(profile.windows(2).all(|p| p[0] <= p[1]));
        }
    }

    #[test]
    fn rational_value_sets() {
        // scaling the set does not change any threshold
        let halves: ValueSet = "{0,1/2,3/2}".parse().unwrap();
        let ints = set(&[0, 1, 3]);
        for d in 1..=3 {
            assert_eq!(compute_w(&halves, d), compute_w(&ints, d));
        }
    }
}
