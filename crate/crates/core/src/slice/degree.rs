//! Degree of a function on the slice: the least `d` such that some
//! polynomial of degree at most `d` agrees with it on every point.
//!
//! [`slice_degree`] decides "degree <= d" by solving for the homogeneous
//! degree-`d` expansion with the triangular extraction system and checking
//! that it reproduces the table. [`slice_degree_by_rank`] answers the same
//! question by fraction-free Gaussian elimination on the dense evaluation
//! matrix; it is much slower and serves as the independent reference.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ratpoly::{common_denominator, Rational};
use crate::recovery;
use crate::slice::domain::SliceDomain;
use crate::slice::table::SliceTable;
use crate::subset::{subsets_up_to, Subset};

/// Largest dense matrix (rows times columns) the rank route will build.
pub const MAX_RANK_ENTRIES: u128 = 4_000_000;

/// Whether `f` has degree at most `d` on its slice.
pub fn is_degree_at_most(f: &SliceTable, d: usize) -> bool {
    let dom = f.domain();
    // every function on the slice has degree <= min(k, n-k)
    if d >= dom.k().min(dom.n() - dom.k()) || f.is_constant() {
        return true;
    }
    // now k > d and n - k > d, so the extraction hypotheses hold
    match recovery::extract_from_table(f, d) {
        Ok(_) => true,
        Err(Error::ExceedsStatedDegree(_)) => false,
        Err(e) => unreachable!("extraction preconditions hold: {e}"),
    }
}

/// Exact degree of `f` on its slice.
pub fn slice_degree(f: &SliceTable) -> usize {
    let dom = f.domain();
    let top = dom.k().min(dom.n() - dom.k());
    (0..top).find(|&d| is_degree_at_most(f, d)).unwrap_or(top)
}

/// Exact degree via the rank of the evaluation matrix of all monomials of
/// size at most `d`, for increasing `d`.
pub fn slice_degree_by_rank(f: &SliceTable) -> Result<usize> {
    for d in 0..=f.domain().n() {
        if in_span_by_rank(f, d)? {
            return Ok(d);
        }
    }
    unreachable!("monomials of size <= n span every function")
}

/// Whether `f` lies in the span of the monomials of size at most `d`,
/// decided by comparing `rank(M)` with `rank([M | f])`.
pub fn in_span_by_rank(f: &SliceTable, d: usize) -> Result<bool> {
    let dom = f.domain();
    let monomials: Vec<Subset> = subsets_up_to(dom.n(), d).collect();
    let base = evaluation_rows(dom, &monomials, None)?;
    let augmented = evaluation_rows(dom, &monomials, Some(f))?;
    Ok(bareiss_rank(base) == bareiss_rank(augmented))
}

/// Rank of the matrix `[x_S(point)]` with one row per point of `dom` and
/// one column per monomial.
pub fn evaluation_rank(dom: &SliceDomain, monomials: &[Subset]) -> Result<usize> {
    Ok(bareiss_rank(evaluation_rows(dom, monomials, None)?))
}

fn evaluation_rows(
    dom: &SliceDomain,
    monomials: &[Subset],
    extra: Option<&SliceTable>,
) -> Result<Vec<Vec<BigInt>>> {
    let cols = monomials.len() as u128 + u128::from(extra.is_some());
    let entries = dom.size().saturating_mul(cols);
    if entries > MAX_RANK_ENTRIES {
        return Err(Error::DomainTooLarge {
            points: entries,
            limit: MAX_RANK_ENTRIES,
        });
    }
    let scale = extra.map(|f| Rational::from_integer(common_denominator(f.values())));
    Ok(dom
        .points()
        .enumerate()
        .map(|(row, x)| {
            let mut r: Vec<BigInt> = monomials
                .iter()
                .map(|s| if s.is_subset_of(x) { BigInt::one() } else { BigInt::zero() })
                .collect();
            if let (Some(f), Some(scale)) = (extra, &scale) {
                r.push((&f.values()[row] * scale).to_integer());
            }
            r
        })
        .collect())
}

/// Rank by fraction-free (Bareiss) elimination; every division is exact.
pub(crate) fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let (top, bottom) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in bottom.iter_mut() {
            let factor = row[col].clone();
            for j in col + 1..cols {
                let value = &pivot_row[col] * &row[j] - &factor * &pivot_row[j];
                debug_assert!((&value % &prev).is_zero(), "inexact Bareiss step");
                row[j] = value / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}
