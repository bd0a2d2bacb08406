use std::collections::BTreeMap;

use slicekit::constructions::{best_counterexample, indicator_decomposition, CounterexampleSpec};
use slicekit::junta::{minimum_junta, sensitivity_graph, JuntaReport};
use slicekit::ratpoly::rat;
use slicekit::recovery::{bunching_assign, extract_from_table, sparsify, SparseRepresentation};
use slicekit::slice::{is_degree_at_most, slice_degree, slice_degree_by_rank, truth_table};
use slicekit::thresholds::build_table;
use slicekit::{Error, MultilinearPoly, Rational, SliceDomain, SliceTable, Subset, ThresholdRow, ValueSet};

use crate::{exit, Failure};


/// Largest `|A|^C(n,k)` the exhaustive verifier will enumerate.
pub const MAX_VERIFY_TABLES: u128 = 1 << 24;

/// Progress is reported after every this many tables.
pub const PROGRESS_INTERVAL: u64 = 1 << 16;

/// Threshold rows for each set (in input order) and `d = 1..=d_max`.
pub fn cmd_table(sets: &[ValueSet], d_max: usize) -> anyhow::Result<Vec<ThresholdRow>> {
    Ok(build_table(sets, d_max)?)
}

/// Outcome of the `A`-valuedness check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Valued,
    Outside { point: Subset, value: Rational },
}

/// The degree-`d` homogeneous expansion and its sparsified form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expansion {
    Computed {
        d: usize,
        nonzero: usize,
        sparse: SparseRepresentation,
        exceptions: Vec<usize>,
    },
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Analysis {
    pub domain: SliceDomain,
    pub degree: usize,
    pub degree_bound: Option<(usize, bool)>,
    pub membership: Option<(ValueSet, Membership)>,
    pub expansion: Expansion,
    pub junta: JuntaReport,
}

impl Analysis {
    pub fn is_a_valued(&self) -> Option<bool> {
        self.membership
            .as_ref()
            .map(|(_, m)| *m == Membership::Valued)
    }
}

/// Degree, `A`-valuedness, expansion, sparse support and minimum junta of
/// a polynomial viewed on `([n] choose k)`.
pub fn cmd_analyze(
    poly: &MultilinearPoly,
    n: usize,
    k: usize,
    set: Option<&ValueSet>,
    d: Option<usize>,
) -> anyhow::Result<Analysis> {
    let domain = SliceDomain::new(n, k)?;
    let poly = poly.clone().with_n(n)?;
    let table = truth_table(&poly, &domain)?;
    let degree = slice_degree(&table);
    let membership = set.map(|set| {
        let status = match table.non_member_point(set) {
            None => Membership::Valued,
            Some(point) => Membership::Outside {
                point,
                value: table.value(point).clone(),
            },
        };
        (set.clone(), status)
    });
    let target = d.unwrap_or(degree);
    let expansion = if target < degree {
        Expansion::Skipped(format!("degree {degree} exceeds d = {target}"))
    } else if n < k + target {
        Expansion::Skipped(format!("needs n >= k + d = {}", k + target))
    } else {
        let e = extract_from_table(&table, target)?;
        let nonzero = e.iter().filter(|(_, c)| **c != rat(0)).count();
        let layers = bunching_assign(&e);
        let exceptions = layers.exception_counts().to_vec();
        Expansion::Computed {
            d: target,
            nonzero,
            sparse: sparsify(&layers),
            exceptions,
        }
    };
    Ok(Analysis {
        domain,
        degree,
        degree_bound: d.map(|d| (d, degree <= d)),
        membership,
        expansion,
        junta: minimum_junta(&table),
    })
}

/// A counterexample with the results of checking it exhaustively.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructReport {
    pub spec: CounterexampleSpec,
    pub poly: MultilinearPoly,
    pub a_valued: bool,
    /// The polynomial itself has degree at most `d`.
    pub poly_degree: usize,
    /// Extraction at degree `d` reproduces the table.
    pub degree_by_extraction: bool,
    /// Exact degree from the evaluation-matrix rank, when small enough.
    pub degree_by_rank: Option<usize>,
    pub lower_bound: usize,
    pub min_junta: usize,
    pub junta_witness: Subset,
}

impl ConstructReport {
    /// Every check passed and both junta arguments rule out `m - 1`.
    pub fn certified(&self, m: usize) -> bool {
        let d = self.spec.d;
        self.a_valued
            && self.poly_degree <= d
            && self.degree_by_extraction
            && self.degree_by_rank.is_none_or(|r| r <= d)
            && self.lower_bound >= m
            && self.min_junta >= self.lower_bound
    }
}

pub fn cmd_construct(set: &ValueSet, d: usize, k: usize, m: usize) -> anyhow::Result<ConstructReport> {
    let c = best_counterexample(set, d, k, m)?;
    let domain = SliceDomain::new(c.spec.n, k)?;
    let table = truth_table(&c.poly, &domain)?;
    let degree_by_rank = match slice_degree_by_rank(&table) {
        Ok(r) => Some(r),
        Err(Error::DomainTooLarge { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let graph = sensitivity_graph(&table);
    let lower_bound = graph.lower_bound(c.spec.i_set, c.spec.j_set)?;
    let junta = slicekit::junta::minimum_junta_of(&graph);
    Ok(ConstructReport {
        a_valued: table.is_a_valued(set),
        poly_degree: c.poly.degree(),
        degree_by_extraction: is_degree_at_most(&table, d),
        degree_by_rank,
        lower_bound,
        min_junta: junta.min_size,
        junta_witness: junta.witness,
        spec: c.spec,
        poly: c.poly,
    })
}

/// A degree-`<= d` table whose minimum junta exceeds the bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub index: u64,
    pub values: Vec<Rational>,
    pub min_junta: usize,
    pub witness: Subset,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub domain: SliceDomain,
    pub set: ValueSet,
    pub d: usize,
    pub bound: usize,
    pub functions_scanned: u64,
    pub degree_le_d_count: u64,
    pub max_min_junta: usize,
    pub violations: Vec<Violation>,
}

/// Enumerates every `A`-valued table on `([n] choose k)` (value vectors in
/// colex order, position 0 least significant), keeps those of degree at
/// most `d`, and checks each is a junta on at most `bound` coordinates.
/// `progress(done, total)` is called every [`PROGRESS_INTERVAL`] tables.
pub fn cmd_verify_exhaustive(
    n: usize,
    k: usize,
    d: usize,
    set: &ValueSet,
    bound: usize,
    mut progress: impl FnMut(u64, u64),
) -> anyhow::Result<VerificationReport> {
    let domain = SliceDomain::new(n, k)?;
    let points = domain.size();
    let total = u32::try_from(points)
        .ok()
        .and_then(|p| (set.len() as u128).checked_pow(p))
        .filter(|&t| t <= MAX_VERIFY_TABLES)
        .ok_or_else(|| Failure {
            code: exit::GUARD,
            message: format!(
                "enumerating {}^{points} tables needs |A|^C(n,k) <= {MAX_VERIFY_TABLES}",
                set.len()
            ),
        })? as u64;
    let base = set.len();
    let elements = set.elements();
    let mut digits = vec![0usize; points as usize];
    let mut report = VerificationReport {
        domain,
        set: set.clone(),
        d,
        bound,
        functions_scanned: 0,
        degree_le_d_count: 0,
        max_min_junta: 0,
        violations: Vec::new(),
    };
    for index in 0..total {
        if index > 0 {
            // increment, position 0 least significant
            for digit in digits.iter_mut() {
                *digit += 1;
                if *digit < base {
                    break;
                }
                *digit = 0;
            }
        }
        let values: Vec<Rational> = digits.iter().map(|&i| elements[i].clone()).collect();
        let table = SliceTable::new(domain, values)?;
        report.functions_scanned += 1;
        if is_degree_at_most(&table, d) {
            report.degree_le_d_count += 1;
            let junta = minimum_junta(&table);
            report.max_min_junta = report.max_min_junta.max(junta.min_size);
            if junta.min_size > bound {
                report.violations.push(Violation {
                    index,
                    values: table.values().to_vec(),
                    min_junta: junta.min_size,
                    witness: junta.witness,
                });
            }
        }
        if (index + 1) % PROGRESS_INTERVAL == 0 {
            progress(index + 1, total);
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub table: SliceTable,
    pub degree: usize,
    pub parts: BTreeMap<Rational, SliceTable>,
    pub part_degrees: BTreeMap<Rational, usize>,
    pub reconstructs: bool,
}

impl Decomposition {
    /// Every part is Boolean with degree at most `(|A| - 1) deg f`.
    pub fn parts_within_bound(&self, set_size: usize) -> bool {
        let cap = (set_size - 1) * self.degree;
        self.parts.values().all(|t| {
            t.values()
                .iter()
                .all(|v| *v == rat(0) || *v == rat(1))
        }) && self.part_degrees.values().all(|&deg| deg <= cap)
    }
}

pub fn cmd_decompose(poly: &MultilinearPoly, n: usize, k: usize, set: &ValueSet) -> anyhow::Result<Decomposition> {
    let domain = SliceDomain::new(n, k)?;
    let table = truth_table(&poly.clone().with_n(n)?, &domain)?;
    decompose_table(table, set)
}

/// Indicator decomposition of a table with the reconstruction check.
pub fn decompose_table(table: SliceTable, set: &ValueSet) -> anyhow::Result<Decomposition> {
    let parts = indicator_decomposition(&table, set)?;
    let recombined = slicekit::constructions::recombine(&parts);
    let part_degrees = parts
        .iter()
        .map(|(a, t)| (a.clone(), slice_degree(t)))
        .collect();
    Ok(Decomposition {
        degree: slice_degree(&table),
        reconstructs: recombined.as_ref() == Some(&table),
        table,
        parts,
        part_degrees,
    })
}
