//! Explicit `A`-valued low-degree functions on the slice that are far from
//! juntas, one family per way the threshold conditions can fail, plus the
//! decomposition of an `A`-valued function into Boolean indicators.
//!
//! Every family comes with disjoint index sets `I`, `J` such that each pair
//! in `I x J` is sensitive; a function with such a pair of sets is not a
//! junta on fewer than `min(|I|, |J|)` coordinates.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ratpoly::{Rational, UnivariatePoly};
use crate::slice::{MultilinearPoly, SliceTable};
use crate::subset::{KSubsets, Subset, MAX_N};
use crate::thresholds::{compute_k, find_nonconstant_witness, ValueSet};

/// Which construction produced a counterexample, with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// `a + (b - a) Σ_{i<=m} x_{block_i}` with blocks of size `k`.
    BlockSum { a: Rational, b: Rational },
    /// `a (1 - x_{[e]}) + x_{[e]} P(Σ_{i<=m} x_{e+i})`.
    Gate { a: Rational, e: usize },
    /// `a (1 - x_{[t]}) + x_{[t]} P(Σ_{i<=m} x_{block_i})` with blocks of
    /// size `r` after the first `t` coordinates; `s = deg P`.
    BlockGate {
        a: Rational,
        t: usize,
        r: usize,
        s: usize,
    },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::BlockSum { .. } => "block_sum",
            Family::Gate { .. } => "gate",
            Family::BlockGate { .. } => "block_gate",
        }
    }

    /// Gate size and block size.
    fn layout(&self, k: usize) -> (usize, usize) {
        match *self {
            Family::BlockSum { .. } => (0, k),
            Family::Gate { e, .. } => (e, 1),
            Family::BlockGate { t, r, .. } => (t, r),
        }
    }
}

/// Parameters of a generated counterexample and its certificate sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterexampleSpec {
    pub family: Family,
    pub set: ValueSet,
    pub d: usize,
    pub k: usize,
    /// Number of blocks actually used.
    pub m: usize,
    pub n: usize,
    pub witness_poly: Option<UnivariatePoly>,
    /// Least `w >= 1` with `P(w) != P(w-1)`; swap witnesses use `w` full blocks.
    pub step: Option<usize>,
    pub i_set: Subset,
    pub j_set: Subset,
}

impl CounterexampleSpec {
    /// The junta size the certificate rules out: the function is not a
    /// junta on fewer than this many coordinates.
    pub fn certified_bound(&self) -> usize {
        self.i_set.len().min(self.j_set.len())
    }

    /// A point `x` with `f(x) != f(x^(i j))` for `i ∈ I`, `j ∈ J`.
    pub fn swap_witness(&self, i: usize, j: usize) -> Subset {
        assert!(self.i_set.contains(i) && self.j_set.contains(j));
        let (t, r) = self.family.layout(self.k);
        let block_of = |h: usize| Subset::range(t + (h - 1) * r + 1, t + h * r);
        let own = (i - t - 1) / r + 1;
        if let Family::BlockSum { .. } = self.family {
            return block_of(own);
        }
        let w = self.step.expect("gate families record their step");
        let mut x = Subset::prefix(t).union(block_of(own));
        for h in (1..=self.m).filter(|&h| h != own).take(w - 1) {
            x = x.union(block_of(h));
        }
        let filler: Vec<usize> = self.j_set.without(j).iter().take(self.k - x.len()).collect();
        x.union(Subset::of(&filler))
    }
}

impl fmt::Display for CounterexampleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} A={} d={} k={} m={} n={}",
            self.family.name(),
            self.set,
            self.d,
            self.k,
            self.m,
            self.n
        )?;
        match &self.family {
            Family::BlockSum { a, b } => write!(f, " a={a} b={b}")?,
            Family::Gate { a, e } => write!(f, " a={a} e={e}")?,
            Family::BlockGate { a, t, r, s } => write!(f, " a={a} t={t} r={r} s={s}")?,
        }
        if let Some(p) = &self.witness_poly {
            write!(f, " P={p}")?;
        }
        Ok(())
    }
}

/// A generated function together with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub spec: CounterexampleSpec,
    pub poly: MultilinearPoly,
}

fn check_dimension(n: usize) -> Result<()> {
    if n > MAX_N {
        return Err(Error::Precondition(format!(
            "the construction needs n = {n} > {MAX_N} variables"
        )));
    }
    Ok(())
}

/// `a + (b - a) Σ_{i<=m} x_{{(i-1)k+1..ik}}` on `n = 2km` variables. On
/// `([n] choose k)` it equals `b` on the `m` blocks and `a` elsewhere.
pub fn construct_block_sum(a: Rational, b: Rational, k: usize, m: usize) -> Result<Counterexample> {
    if a == b {
        return Err(Error::DegenerateConstruction("a = b".into()));
    }
    if k == 0 || m == 0 {
        return Err(Error::Precondition("block sums need k >= 1 and m >= 1".into()));
    }
    let n = 2 * k * m;
    check_dimension(n)?;
    let mut poly = MultilinearPoly::constant(n, a.clone());
    for h in 1..=m {
        poly.add_term(Subset::range((h - 1) * k + 1, h * k), &b - &a);
    }
    let set = ValueSet::new(vec![a.clone(), b.clone()])?;
    let spec = CounterexampleSpec {
        family: Family::BlockSum { a, b },
        set,
        d: k,
        k,
        m,
        n,
        witness_poly: None,
        step: None,
        i_set: Subset::prefix(k * m),
        j_set: Subset::range(k * m + 1, n),
    };
    Ok(Counterexample { spec, poly })
}

/// `a (1 - x_{[e]}) + x_{[e]} P(Σ_{i<=m} x_{e+i})` on `n = e + 2m` variables.
pub fn construct_gate(
    set: &ValueSet,
    a: &Rational,
    e: usize,
    p: &UnivariatePoly,
    m: usize,
    k: usize,
) -> Result<Counterexample> {
    let mut out = build_gated(set, a, e, 1, p, m, k)?;
    out.spec.family = Family::Gate { a: a.clone(), e };
    Ok(out)
}

/// `a (1 - x_{[t]}) + x_{[t]} P(Σ_{i<=m} x_{block_i})`, blocks of size `r`,
/// on `n = t + 2rm` variables.
pub fn construct_block_gate(
    set: &ValueSet,
    a: &Rational,
    t: usize,
    r: usize,
    p: &UnivariatePoly,
    m: usize,
    k: usize,
) -> Result<Counterexample> {
    build_gated(set, a, t, r, p, m, k)
}

fn build_gated(
    set: &ValueSet,
    a: &Rational,
    t: usize,
    r: usize,
    p: &UnivariatePoly,
    m: usize,
    k: usize,
) -> Result<Counterexample> {
    if !set.contains(a) {
        return Err(Error::Precondition(format!("a = {a} is not in {set}")));
    }
    if r == 0 {
        return Err(Error::Precondition("block size r must be at least 1".into()));
    }
    if p.is_constant() {
        return Err(Error::Precondition("P must be non-constant".into()));
    }
    if k < t {
        return Err(Error::Precondition(format!("k = {k} is smaller than the gate size {t}")));
    }
    if m < k - t {
        return Err(Error::Precondition(format!("m = {m} must be at least k - {t} = {}", k - t)));
    }
    let last = (k - t) / r;
    if let Some(w) = (0..=last).find(|&w| !set.contains(&p.evaluate(w as i64))) {
        return Err(Error::Precondition(format!(
            "P({w}) = {} is not in {set}",
            p.evaluate(w as i64)
        )));
    }
    let step = (1..=last)
        .find(|&w| p.evaluate(w as i64) != p.evaluate(w as i64 - 1))
        .ok_or_else(|| {
            Error::DegenerateConstruction(format!("P is constant on 0..={last}"))
        })?;
    let n = t + 2 * r * m;
    check_dimension(n)?;

    // P(Σ y_h) = Σ_j Δ^j P(0) e_j(y) for 0/1 values y_h
    let gate = Subset::prefix(t);
    let block_of = |h: usize| Subset::range(t + (h - 1) * r + 1, t + h * r);
    let mut poly = MultilinearPoly::constant(n, a.clone());
    poly.add_term(gate, -a.clone());
    for (j, c) in p.newton_coefficients().into_iter().enumerate() {
        if j > m {
            break;
        }
        for chosen in KSubsets::new(m, j) {
            let mono = chosen.iter().fold(gate, |acc, h| acc.union(block_of(h)));
            poly.add_term(mono, c.clone());
        }
    }
    let s = p.degree();
    let spec = CounterexampleSpec {
        family: Family::BlockGate { a: a.clone(), t, r, s },
        set: set.clone(),
        d: t + r * s,
        k,
        m,
        n,
        witness_poly: Some(p.clone()),
        step: Some(step),
        i_set: Subset::range(t + 1, t + r * m),
        j_set: Subset::range(t + r * m + 1, n),
    };
    Ok(Counterexample { spec, poly })
}

/// An `A`-valued function of degree at most `d` on `([n] choose k)` that is
/// not a junta on fewer than `m` coordinates, for any `1 <= k < k(A,d)`.
///
/// The first failing threshold condition picks the family: `k <= d` gives
/// a block sum; otherwise the first `e` with a non-constant witness for
/// degree `d - e` on `0..=k-e` gives a gate; otherwise the first `(t, r, s)`
/// in lexicographic order gives a block gate. Gate families need at least
/// `k - e` (or `k - t`) blocks, so the block count is raised to that when
/// `m` is smaller; the certificate then rules out even larger juntas.
pub fn best_counterexample(set: &ValueSet, d: usize, k: usize, m: usize) -> Result<Counterexample> {
    if d == 0 {
        return Err(Error::Precondition("d must be at least 1".into()));
    }
    if k == 0 || m == 0 {
        return Err(Error::Precondition("k and m must be at least 1".into()));
    }
    let (threshold, _) = compute_k(set, d);
    if k >= threshold {
        return Err(Error::NoCounterexample { k, threshold });
    }
    let a = set.elements()[0].clone();
    let mut out = if k <= d {
        let b = set.elements()[1].clone();
        let mut out = construct_block_sum(a, b, k, m)?;
        out.spec.set = set.clone();
        out
    } else if let Some((e, p)) =
        (0..d).find_map(|e| find_nonconstant_witness(set, d - e, k - e).map(|p| (e, p)))
    {
        construct_gate(set, &a, e, &p, m.max(k - e), k)?
    } else {
        let (t, r, p) = block_gate_candidates(d)
            .find_map(|(t, r, s)| find_nonconstant_witness(set, s, (k - t) / r).map(|p| (t, r, p)))
            .expect("k < k(A,d) means some threshold condition fails");
        construct_block_gate(set, &a, t, r, &p, m.max(k - t), k)?
    };
    out.spec.d = d;
    Ok(out)
}

/// `(t, r, s)` with `t >= 0`, `r, s >= 1`, `t + rs <= d`, lexicographically.
fn block_gate_candidates(d: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..d).flat_map(move |t| {
        (1..=d - t).flat_map(move |r| (1..=(d - t) / r).map(move |s| (t, r, s)))
    })
}

/// Splits an `A`-valued `f` into Boolean indicators
/// `f_a = Π_{b != a} (f - b) / (a - b)`, so that `f = Σ_a a f_a`.
pub fn indicator_decomposition(f: &SliceTable, set: &ValueSet) -> Result<BTreeMap<Rational, SliceTable>> {
    f.require_a_valued(set)?;
    set.elements()
        .iter()
        .map(|a| {
            let values = f
                .values()
                .iter()
                .map(|v| {
                    set.elements()
                        .iter()
                        .filter(|b| *b != a)
                        .fold(Rational::one(), |acc, b| acc * (v - b) / (a - b))
                })
                .collect();
            Ok((a.clone(), SliceTable::new(*f.domain(), values)?))
        })
        .collect()
}

/// `Σ_a a f_a`, the inverse of [`indicator_decomposition`].
pub fn recombine(parts: &BTreeMap<Rational, SliceTable>) -> Option<SliceTable> {
    let mut iter = parts.iter();
    let (_, first) = iter.next()?;
    let mut values = vec![Rational::zero(); first.values().len()];
    for (a, table) in parts {
        for (acc, v) in values.iter_mut().zip(table.values()) {
            *acc += a * v;
        }
    }
    SliceTable::new(*first.domain(), values).ok()
}
