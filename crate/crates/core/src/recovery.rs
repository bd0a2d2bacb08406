//! Recovering structure from dense homogeneous expansions.
//!
//! A function of degree at most `d` on `([n] choose k)` with `n - k >= d`
//! has a unique expansion `f = Σ_{|S|=d} c(S) x_S`. [`extract_from_table`]
//! reads the coefficients off the table by solving, for each `S`, a small
//! lower-triangular system. [`bunching_assign`] extends `c` to smaller sets
//! by plurality vote, and [`sparsify`] turns the layered coefficients into
//! an equivalent sparse polynomial whose support exposes the junta.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ratpoly::{common_denominator, Rational};
use crate::slice::{MultilinearPoly, SliceDomain, SliceTable};
use crate::subset::{binomial, binomial_u64, KSubsets, Subset};

/// Lower-triangular `(d+1) x (d+1)` matrix relating the block sums `h(e)` to
/// the partial coefficient sums `γ(e')`.
///
/// Fix `|S| = d`, a disjoint `|I| = k`, and `T ⊆ S ∪ I` of size `d` with
/// `|T ∩ S| = e'`. Entry `[e][e']` is the number of pairs `S' ⊆ S` of size
/// `e`, `I' ⊆ I` of size `k - e` with `T ⊆ S' ∪ I'`, which is
/// `C(d-e', e-e') * C(k-d+e', (k-e)-(d-e'))`.
pub fn transfer_matrix(k: usize, d: usize) -> Vec<Vec<u128>> {
    assert!(k >= d, "transfer matrix needs k >= d");
    (0..=d)
        .map(|e| {
            (0..=d)
                .map(|ep| {
                    if ep > e || k - e < d - ep {
                        return 0;
                    }
                    binomial((d - ep) as u64, (e - ep) as u64)
                        * binomial((k - d + ep) as u64, ((k - e) - (d - ep)) as u64)
                })
                .collect()
        })
        .collect()
}

/// How the auxiliary set `I` is chosen for each `S` during extraction. The
/// result does not depend on the choice when the degree bound holds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum IndexChoice {
    /// The `k` smallest indices outside `S`.
    #[default]
    Lowest,
    /// The `k` largest indices outside `S`.
    Highest,
}

/// `f = Σ_{|S|=d} c(S) x_S` on `([n] choose k)`, stored densely by the colex
/// rank of `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousExpansion {
    n: usize,
    k: usize,
    d: usize,
    coeffs: Vec<Rational>,
}

impl HomogeneousExpansion {
    /// Reads the expansion off a homogeneous polynomial of degree `d`.
    pub fn from_poly(p: &MultilinearPoly, dom: &SliceDomain, d: usize) -> Result<Self> {
        if p.n() != dom.n() {
            return Err(Error::DimensionMismatch {
                expected: dom.n(),
                actual: p.n(),
            });
        }
        if dom.k() < d {
            return Err(Error::SliceTooSmall { k: dom.k(), d });
        }
        let mut coeffs = vec![Rational::zero(); binomial_u64(dom.n(), d) as usize];
        for (s, c) in p.terms() {
            if s.len() != d {
                return Err(Error::Precondition(format!(
                    "term {s} is not of degree {d}"
                )));
            }
            coeffs[s.colex_rank()] = c.clone();
        }
        Ok(Self {
            n: dom.n(),
            k: dom.k(),
            d,
            coeffs,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn coeff(&self, s: Subset) -> &Rational {
        assert_eq!(s.len(), self.d);
        &self.coeffs[s.colex_rank()]
    }

    /// `(S, c(S))` for every size-`d` subset of `[n]`, zeros included.
    pub fn iter(&self) -> impl Iterator<Item = (Subset, &Rational)> {
        KSubsets::new(self.n, self.d).zip(self.coeffs.iter())
    }

    pub fn to_poly(&self) -> MultilinearPoly {
        let terms = self
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(s, c)| (s, c.clone()));
        MultilinearPoly::from_terms(self.n, terms).expect("indices lie in [n]")
    }
}

/// Extracts the homogeneous expansion of degree `d` from an evaluation
/// oracle. The oracle is tabulated once, so the domain must pass the size
/// guard.
pub fn extract_coefficients(
    oracle: impl Fn(Subset) -> Rational,
    dom: &SliceDomain,
    d: usize,
) -> Result<HomogeneousExpansion> {
    extract_from_table(&SliceTable::from_fn(*dom, oracle)?, d)
}

/// Extracts the homogeneous expansion of degree `d` from a value table and
/// checks that it reproduces the table.
pub fn extract_from_table(f: &SliceTable, d: usize) -> Result<HomogeneousExpansion> {
    extract_from_table_with(f, d, IndexChoice::Lowest)
}

pub fn extract_from_table_with(
    f: &SliceTable,
    d: usize,
    choice: IndexChoice,
) -> Result<HomogeneousExpansion> {
    let dom = f.domain();
    let (n, k) = (dom.n(), dom.k());
    if k < d {
        return Err(Error::SliceTooSmall { k, d });
    }
    if n < k + d {
        return Err(Error::ExtractionDomain { n, k, d });
    }
    let denom = common_denominator(f.values());
    let scaled: Vec<BigInt> = f
        .values()
        .iter()
        .map(|v| (v * Rational::from_integer(denom.clone())).to_integer())
        .collect();
    let m: Vec<Vec<BigInt>> = transfer_matrix(k, d)
        .into_iter()
        .map(|row| row.into_iter().map(BigInt::from).collect())
        .collect();
    let ground = dom.ground();
    let mut coeffs = Vec::with_capacity(binomial_u64(n, d) as usize);
    for s in KSubsets::new(n, d) {
        let outside: Vec<usize> = ground.difference(s).iter().collect();
        let i_set = match choice {
            IndexChoice::Lowest => Subset::of(&outside[..k]),
            IndexChoice::Highest => Subset::of(&outside[outside.len() - k..]),
        };
        let h: Vec<BigInt> = (0..=d)
            .map(|e| {
                let mut sum = BigInt::zero();
                for s_part in s.subsets_of_size(e) {
                    for i_part in i_set.subsets_of_size(k - e) {
                        sum += &scaled[s_part.union(i_part).colex_rank()];
                    }
                }
                sum
            })
            .collect();
        // forward substitution; only γ(d) is kept
        let mut gamma: Vec<Rational> = Vec::with_capacity(d + 1);
        for e in 0..=d {
            let mut rhs = Rational::from_integer(h[e].clone());
            for (ep, g) in gamma.iter().enumerate() {
                rhs -= g * Rational::from_integer(m[e][ep].clone());
            }
            gamma.push(rhs / Rational::from_integer(m[e][e].clone()));
        }
        coeffs.push(gamma.pop().expect("d + 1 entries") / Rational::from_integer(denom.clone()));
    }
    let expansion = HomogeneousExpansion { n, k, d, coeffs };
    verify_expansion(&expansion, f)?;
    Ok(expansion)
}

/// Errors with the first point where the expansion disagrees with `f`.
fn verify_expansion(e: &HomogeneousExpansion, f: &SliceTable) -> Result<()> {
    let denom = common_denominator(&e.coeffs);
    let scaled: Vec<BigInt> = e
        .coeffs
        .iter()
        .map(|c| (c * Rational::from_integer(denom.clone())).to_integer())
        .collect();
    let denom = Rational::from_integer(denom);
    for (index, (x, value)) in f.iter().enumerate() {
        let mut sum = BigInt::zero();
        for s in x.subsets_of_size(e.d) {
            sum += &scaled[s.colex_rank()];
        }
        if Rational::from_integer(sum) != value * &denom {
            return Err(Error::ExceedsStatedDegree(index));
        }
    }
    Ok(())
}

/// Coefficients on every subset of size at most `d`, level by level. The
/// top level is the homogeneous expansion; lower levels come from
/// [`bunching_assign`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayeredCoefficients {
    n: usize,
    k: usize,
    d: usize,
    levels: Vec<Vec<Rational>>,
    exceptions: Vec<usize>,
}

impl LayeredCoefficients {
    /// Builds layered coefficients from explicit levels; `levels[e]` lists
    /// the values on size-`e` subsets in colex order.
    pub fn from_levels(n: usize, k: usize, levels: Vec<Vec<Rational>>) -> Result<Self> {
        let d = levels.len().checked_sub(1).ok_or_else(|| {
            Error::Precondition("at least one level is required".into())
        })?;
        if k < d {
            return Err(Error::SliceTooSmall { k, d });
        }
        for (e, level) in levels.iter().enumerate() {
            if level.len() as u64 != binomial_u64(n, e) {
                return Err(Error::Precondition(format!(
                    "level {e} has {} values, expected C({n},{e})",
                    level.len()
                )));
            }
        }
        Ok(Self {
            n,
            k,
            d,
            exceptions: vec![0; d],
            levels,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn get(&self, s: Subset) -> &Rational {
        &self.levels[s.len()][s.colex_rank()]
    }

    /// For each level `e < d`, the number of pairs `(T, i)` with `|T| = e`,
    /// `i ∉ T` and `c(T ∪ {i}) != c(T)`.
    pub fn exception_counts(&self) -> &[usize] {
        &self.exceptions
    }

    pub fn top_level(&self) -> HomogeneousExpansion {
        HomogeneousExpansion {
            n: self.n,
            k: self.k,
            d: self.d,
            coeffs: self.levels[self.d].clone(),
        }
    }
}

/// Extends `c` downward: each `T` with `|T| < d` receives the most common
/// value among `c(T ∪ {i})`, `i ∉ T`, ties going to the smallest value.
pub fn bunching_assign(e: &HomogeneousExpansion) -> LayeredCoefficients {
    let (n, d) = (e.n, e.d);
    let mut levels: Vec<Vec<Rational>> = vec![Vec::new(); d + 1];
    levels[d] = e.coeffs.clone();
    let mut exceptions = vec![0; d];
    let ground = Subset::prefix(n);
    for level in (0..d).rev() {
        let above = &levels[level + 1];
        let mut values = Vec::with_capacity(binomial_u64(n, level) as usize);
        let mut missed = 0;
        for t in KSubsets::new(n, level) {
            let mut counts: HashMap<&Rational, usize> = HashMap::new();
            for i in ground.difference(t).iter() {
                *counts.entry(&above[t.with(i).colex_rank()]).or_insert(0) += 1;
            }
            // empty when level = n, which needs d > n and cannot produce a term
            let winner = counts
                .iter()
                .max_by(|a, b| a.1.cmp(b.1).then_with(|| b.0.cmp(a.0)))
                .map_or_else(Rational::zero, |(v, _)| (*v).clone());
            missed += n - level - counts.get(&winner).copied().unwrap_or(0);
            values.push(winner);
        }
        exceptions[level] = missed;
        levels[level] = values;
    }
    LayeredCoefficients {
        n,
        k: e.k,
        d,
        levels,
        exceptions,
    }
}

/// A sparse polynomial of degree at most `d` equal on the slice to the
/// source expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseRepresentation {
    n: usize,
    k: usize,
    d: usize,
    coeffs: BTreeMap<Subset, Rational>,
    support: Subset,
}

impl SparseRepresentation {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Nonzero coefficients.
    pub fn coeffs(&self) -> &BTreeMap<Subset, Rational> {
        &self.coeffs
    }

    pub fn coeff(&self, s: Subset) -> Rational {
        self.coeffs.get(&s).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> Subset {
        self.support
    }

    pub fn to_poly(&self) -> MultilinearPoly {
        MultilinearPoly::from_terms(self.n, self.coeffs.clone()).expect("indices lie in [n]")
    }
}

/// Polynomial text on the first line, `support {..}` on the second.
impl fmt::Display for SparseRepresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.to_poly())?;
        write!(f, "support {}", self.support)
    }
}

/// Runs the stages `c_{e+1}(S) = c_e(S) - Σ_{T ⊆ S, |T| = e} c_e(T)` for
/// `|S| > e`, then scales `C(S) = C(k-|S|, d-|S|) c_d(S)`.
pub fn sparsify(layers: &LayeredCoefficients) -> SparseRepresentation {
    let (n, k, d) = (layers.n, layers.k, layers.d);
    let mut c = layers.levels.clone();
    for e in 0..d {
        // stage e reads only level e, which it leaves untouched
        let (lower, upper) = c.split_at_mut(e + 1);
        let base = &lower[e];
        for (offset, level) in upper.iter_mut().enumerate() {
            let size = e + 1 + offset;
            for (s, value) in KSubsets::new(n, size).zip(level.iter_mut()) {
                for t in s.subsets_of_size(e) {
                    *value -= &base[t.colex_rank()];
                }
            }
        }
    }
    let mut coeffs = BTreeMap::new();
    let mut support = Subset::EMPTY;
    for (size, level) in c.into_iter().enumerate() {
        let scale = Rational::from_integer(BigInt::from(binomial((k - size) as u64, (d - size) as u64)));
        for (s, value) in KSubsets::new(n, size).zip(level) {
            if !value.is_zero() {
                support = support.union(s);
                coeffs.insert(s, value * &scale);
            }
        }
    }
    SparseRepresentation {
        n,
        k,
        d,
        coeffs,
        support,
    }
}

/// Union of the index sets of the nonzero terms.
pub fn support_variables(s: &SparseRepresentation) -> Subset {
    s.coeffs
        .keys()
        .fold(Subset::EMPTY, |acc, &t| acc.union(t))
}

/// Homogenize, tabulate, extract, bunch and sparsify in one go.
pub fn sparse_form(p: &MultilinearPoly, dom: &SliceDomain, d: usize) -> Result<SparseRepresentation> {
    let table = crate::slice::truth_table(p, dom)?;
    let expansion = extract_from_table(&table, d)?;
    Ok(sparsify(&bunching_assign(&expansion)))
}

impl From<&HomogeneousExpansion> for LayeredCoefficients {
    /// Layered coefficients with zero lower levels.
    fn from(e: &HomogeneousExpansion) -> Self {
        let mut levels: Vec<Vec<Rational>> = (0..e.d)
            .map(|l| vec![Rational::zero(); binomial_u64(e.n, l) as usize])
            .collect();
        levels.push(e.coeffs.clone());
        LayeredCoefficients {
            n: e.n,
            k: e.k,
            d: e.d,
            levels,
            exceptions: vec![0; e.d],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{rat, ratio};
    use crate::slice::{parse_poly, truth_table};

    /// Exhaustive count of the pairs `(S', I')` covering `T`.
    fn pair_count(k: usize, d: usize, e: usize, ep: usize) -> u128 {
        // S = {1..d}, I = {d+1..d+k}, T meets S in {1..e'} and I in the
        // first d-e' elements of I
        let s = Subset::prefix(d);
        let i = Subset::range(d + 1, d + k);
        let t = Subset::prefix(ep).union(Subset::range(d + 1, d + (d - ep)));
        let mut count = 0;
        for sp in s.subsets_of_size(e) {
            for ip in i.subsets_of_size(k - e) {
                if t.is_subset_of(sp.union(ip)) {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn transfer_matrix_matches_pair_counts() {
        assert_eq!(transfer_matrix(0, 0), vec![vec![1]]);
        assert_eq!(transfer_matrix(2, 1), vec![vec![1, 0], vec![1, 2]]);
        for k in 0..=6 {
            for d in 0..=k {
                let m = transfer_matrix(k, d);
                for e in 0..=d {
                    assert!(m[e][e] > 0, "k={k} d={d} e={e}");
                    for ep in 0..=d {
                        assert_eq!(m[e][ep], pair_count(k, d, e, ep), "k={k} d={d} [{e}][{ep}]");
                    }
                }
            }
        }
    }

    fn expansion_of(text: &str, n: usize, k: usize, d: usize) -> HomogeneousExpansion {
        let dom = SliceDomain::new(n, k).unwrap();
        let h = parse_poly(text, n).unwrap().homogenize(&dom, d).unwrap();
        HomogeneousExpansion::from_poly(&h, &dom, d).unwrap()
    }

    #[test]
    fn extraction_examples() {
        let dom = SliceDomain::new(3, 1).unwrap();
        let e = extract_coefficients(|x| if x.contains(1) { rat(1) } else { rat(0) }, &dom, 1).unwrap();
        assert_eq!(e.coeff(Subset::of(&[1])), &rat(1));
        assert_eq!(e.coeff(Subset::of(&[2])), &rat(0));
        assert_eq!(e.coeff(Subset::of(&[3])), &rat(0));

        let dom = SliceDomain::new(5, 2).unwrap();
        let h = parse_poly("x{1}", 5).unwrap().homogenize(&dom, 2).unwrap();
        let t = truth_table(&h, &dom).unwrap();
        let e = extract_from_table(&t, 2).unwrap();
        assert_eq!(e.to_poly(), h);
    }

    #[test]
    fn extraction_errors() {
        let dom = SliceDomain::new(5, 2).unwrap();
        let t = truth_table(&parse_poly("x{1,2}", 5).unwrap(), &dom).unwrap();
        assert!(matches!(extract_from_table(&t, 1), Err(Error::ExceedsStatedDegree(_))));
        let dom = SliceDomain::new(5, 3).unwrap();
        let t = truth_table(&parse_poly("x{1,2}", 5).unwrap(), &dom).unwrap();
        assert_eq!(
            extract_from_table(&t, 3),
            Err(Error::ExtractionDomain { n: 5, k: 3, d: 3 })
        );
        let dom = SliceDomain::new(5, 1).unwrap();
        let t = SliceTable::constant(dom, rat(1)).unwrap();
        assert_eq!(extract_from_table(&t, 2), Err(Error::SliceTooSmall { k: 1, d: 2 }));
    }

    #[test]
    fn bunching_examples() {
        // x_1 with d = 2 on (8, 3): c({1,j}) = 1/2, everything else 0
        let e = expansion_of("x{1}", 8, 3, 2);
        let layers = bunching_assign(&e);
        assert_eq!(layers.get(Subset::of(&[1])), &ratio(1, 2));
        assert_eq!(layers.get(Subset::of(&[4])), &rat(0));
        assert_eq!(layers.get(Subset::EMPTY), &rat(0));
        // every {j}, j != 1, sees one 1/2; {1} sees none off; ∅ sees one 1/2
        assert_eq!(layers.exception_counts(), &[1, 7]);

        let e = expansion_of("3", 6, 3, 2);
        let layers = bunching_assign(&e);
        for t in crate::subset::subsets_up_to(6, 2) {
            assert_eq!(layers.get(t), &rat(1), "{t}");
        }
        assert_eq!(layers.exception_counts(), &[0, 0]);
    }

    #[test]
    fn plurality_ties_go_to_smallest_value() {
        // n = 2, d = 1: c({1}) = 2, c({2}) = -1, so c(∅) = -1
        let layers = LayeredCoefficients::from_levels(2, 1, vec![vec![rat(0)], vec![rat(2), rat(-1)]]).unwrap();
        let e = layers.top_level();
        assert_eq!(bunching_assign(&e).get(Subset::EMPTY), &rat(-1));
    }

    #[test]
    fn sparsify_examples() {
        for (n, k) in [(8, 3), (9, 4)] {
            let sparse = sparsify(&bunching_assign(&expansion_of("x{1}", n, k, 2)));
            assert_eq!(sparse.coeffs().len(), 1);
            assert_eq!(sparse.coeff(Subset::of(&[1])), rat(1));
            assert_eq!(support_variables(&sparse), Subset::of(&[1]));
        }
        let sparse = sparsify(&bunching_assign(&expansion_of("7/2", 7, 3, 3)));
        assert_eq!(sparse.to_poly(), parse_poly("7/2", 7).unwrap());
        assert_eq!(sparse.support(), Subset::EMPTY);
        assert_eq!(sparse.to_string(), "7/2\nsupport {}");
    }

    #[test]
    fn support_variables_examples() {
        let mk = |terms: Vec<(Subset, Rational)>| {
            let coeffs: BTreeMap<_, _> = terms.into_iter().collect();
            let support = coeffs.keys().fold(Subset::EMPTY, |a: Subset, &t| a.union(t));
            SparseRepresentation { n: 6, k: 3, d: 2, coeffs, support }
        };
        assert_eq!(support_variables(&mk(vec![(Subset::EMPTY, rat(3))])), Subset::EMPTY);
        let s = mk(vec![(Subset::of(&[1, 2]), rat(1)), (Subset::of(&[5]), rat(-1))]);
        assert_eq!(support_variables(&s), Subset::of(&[1, 2, 5]));
    }

    #[test]
    fn gate_example_support() {
        // 3 - 2 Σ x_i + Σ x_i x_j over x_1..x_7 is P(Σ_{i<=7} x_i) for
        // P(t) = 3 - 5t/2 + t^2/2
        let mut text = String::from("3");
        for i in 1..=7 {
            text += &format!(" - 2*x{{{i}}}");
        }
        for pair in KSubsets::new(7, 2) {
            let v: Vec<_> = pair.iter().collect();
            text += &format!(" + x{{{},{}}}", v[0], v[1]);
        }
        let check = |n: usize, k: usize, support: Subset| {
            let p = parse_poly(&text, n).unwrap();
            let dom = SliceDomain::new(n, k).unwrap();
            let sparse = sparse_form(&p, &dom, 2).unwrap();
            assert_eq!(sparse.support(), support, "n={n} k={k}");
            assert_eq!(truth_table(&sparse.to_poly(), &dom).unwrap(), truth_table(&p, &dom).unwrap());
        };
        check(16, 5, Subset::prefix(7));
        // on 12 points Σ_{i<=7} x_i = 5 - Σ_{i>7} x_i, and the shorter side wins
        check(12, 5, Subset::range(8, 12));
        // with n = 7 the sum is pinned to 5 and the function is constant
        check(7, 5, Subset::EMPTY);
    }
}
