//! Exact junta detection on the slice.
//!
//! Coordinates `i, j` are joined in the sensitivity graph when swapping them
//! changes `f` somewhere. `f` is a `J`-junta exactly when every edge meets
//! `J`: if `f` is invariant under all transpositions outside `J`, then
//! `f(x)` depends only on `x|_J`, because the weight outside `J` is forced
//! to be `k - |x ∩ J|` and the transpositions act transitively on the ways
//! to place it. So the minimum junta is a minimum vertex cover.

use std::fmt;

use crate::error::{Error, Result};
use crate::slice::SliceTable;
use crate::subset::Subset;

/// Pairs of coordinates whose transposition changes the function, each with
/// a point witnessing the change.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SensitivityGraph {
    n: usize,
    adjacency: Vec<u64>,
    witnesses: Vec<(usize, usize, Subset)>,
}

impl SensitivityGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i != j && self.adjacency[i - 1] >> (j - 1) & 1 == 1
    }

    /// Edges `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.witnesses.iter().map(|&(i, j, _)| (i, j))
    }

    pub fn num_edges(&self) -> usize {
        self.witnesses.len()
    }

    /// `(i, j, x)` with `f(x) != f(x^(i j))`, one per edge.
    pub fn witnesses(&self) -> &[(usize, usize, Subset)] {
        &self.witnesses
    }

    pub fn neighbors(&self, i: usize) -> Subset {
        Subset::from_bits(self.adjacency[i - 1])
    }

    /// Whether every edge has an endpoint in `cover`.
    pub fn is_vertex_cover(&self, cover: Subset) -> bool {
        let outside = !cover.bits();
        (0..self.n).all(|v| outside >> v & 1 == 0 || self.adjacency[v] & outside == 0)
    }
}

/// Exhaustive scan of all points and all swaps.
pub fn sensitivity_graph(f: &SliceTable) -> SensitivityGraph {
    let dom = f.domain();
    let n = dom.n();
    let classes = f.value_classes();
    let ground = dom.ground();
    let mut adjacency = vec![0u64; n];
    let mut witness_at = vec![None; n * n];
    for (index, x) in dom.points().enumerate() {
        let outside = ground.difference(x);
        for i in x.iter() {
            let without = x.without(i);
            for j in outside.iter() {
                if adjacency[i - 1] >> (j - 1) & 1 == 1 {
                    continue;
                }
                if classes[index] != classes[without.with(j).colex_rank()] {
                    adjacency[i - 1] |= 1 << (j - 1);
                    adjacency[j - 1] |= 1 << (i - 1);
                    witness_at[(i.min(j) - 1) * n + i.max(j) - 1] = Some(x);
                }
            }
        }
    }
    let witnesses = witness_at
        .into_iter()
        .enumerate()
        .filter_map(|(slot, x)| x.map(|x| (slot / n + 1, slot % n + 1, x)))
        .collect();
    SensitivityGraph {
        n,
        adjacency,
        witnesses,
    }
}

/// Whether `f(x)` is determined by `x|_J`.
pub fn is_junta_on(f: &SliceTable, j: Subset) -> bool {
    sensitivity_graph(f).is_vertex_cover(j)
}

/// Minimum junta size with an optimal witness set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JuntaReport {
    pub min_size: usize,
    pub witness: Subset,
    /// Every sensitive pair with a point where swapping it changes `f`.
    pub certificate_pairs: Vec<(usize, usize, Subset)>,
}

impl fmt::Display for JuntaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.min_size, self.witness)
    }
}

pub fn minimum_junta(f: &SliceTable) -> JuntaReport {
    minimum_junta_of(&sensitivity_graph(f))
}

pub fn minimum_junta_of(graph: &SensitivityGraph) -> JuntaReport {
    let witness = minimum_vertex_cover(&graph.adjacency);
    JuntaReport {
        min_size: witness.len(),
        witness,
        certificate_pairs: graph.witnesses.clone(),
    }
}

/// If every pair in `I x J` is sensitive, no junta is smaller than
/// `min(|I|, |J|)`; returns that bound, or 0 when some pair is not sensitive.
pub fn junta_lower_bound(f: &SliceTable, i: Subset, j: Subset) -> Result<usize> {
    sensitivity_graph(f).lower_bound(i, j)
}

impl SensitivityGraph {
    pub fn lower_bound(&self, i: Subset, j: Subset) -> Result<usize> {
        if !i.is_disjoint(j) {
            return Err(Error::OverlappingSets);
        }
        if i.max() > self.n || j.max() > self.n {
            return Err(Error::Precondition(format!(
                "index sets must lie in 1..={}",
                self.n
            )));
        }
        let complete = i.iter().all(|a| j.is_subset_of(self.neighbors(a)));
        Ok(if complete { i.len().min(j.len()) } else { 0 })
    }
}

/// Exact minimum vertex cover by branch and bound. Branches on a vertex of
/// maximum degree (lowest index on ties), taking it first and its whole
/// neighborhood second; prunes with a greedy maximal matching.
fn minimum_vertex_cover(adjacency: &[u64]) -> Subset {
    let alive: u64 = adjacency
        .iter()
        .enumerate()
        .filter(|(_, &a)| a != 0)
        .fold(0, |acc, (v, _)| acc | 1 << v);
    // every non-isolated vertex is a cover; strictly smaller ones are sought
    let mut best = alive;
    search(adjacency, alive, 0, &mut best);
    Subset::from_bits(best)
}

fn search(adjacency: &[u64], alive: u64, chosen: u64, best: &mut u64) {
    let mut pick = None;
    let mut pick_degree = 0;
    let mut rest = alive;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let degree = (adjacency[v] & alive).count_ones();
        if degree > pick_degree {
            pick = Some(v);
            pick_degree = degree;
        }
    }
    let Some(v) = pick else {
        if chosen.count_ones() < best.count_ones() {
            *best = chosen;
        }
        return;
    };
    if chosen.count_ones() + matching_bound(adjacency, alive) >= best.count_ones() {
        return;
    }
    search(adjacency, alive & !(1 << v), chosen | 1 << v, best);
    let nbrs = adjacency[v] & alive;
    search(adjacency, alive & !nbrs & !(1 << v), chosen | nbrs, best);
}

/// Size of a greedy maximal matching among `alive` vertices, a lower bound
/// on any vertex cover of that induced subgraph.
fn matching_bound(adjacency: &[u64], alive: u64) -> u32 {
    let mut free = alive;
    let mut size = 0;
    while free != 0 {
        let v = free.trailing_zeros() as usize;
        free &= free - 1;
        let partners = adjacency[v] & free;
        if partners != 0 {
            free &= !(1 << partners.trailing_zeros());
            size += 1;
        }
    }
    size
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::rat;
    use crate::slice::{parse_poly, truth_table, SliceDomain};
    use crate::subset::KSubsets;
    use proptest::prelude::*;

    fn table(text: &str, n: usize, k: usize) -> SliceTable {
        truth_table(&parse_poly(text, n).unwrap(), &SliceDomain::new(n, k).unwrap()).unwrap()
    }

    fn edge_list(g: &SensitivityGraph) -> Vec<(usize, usize)> {
        g.edges().collect()
    }

    #[test]
    fn graph_examples() {
        let c = SliceTable::constant(SliceDomain::new(5, 2).unwrap(), rat(3)).unwrap();
        assert_eq!(sensitivity_graph(&c).num_edges(), 0);
        assert!(is_junta_on(&c, Subset::EMPTY));

        let x1 = table("x{1}", 4, 2);
        assert_eq!(edge_list(&sensitivity_graph(&x1)), vec![(1, 2), (1, 3), (1, 4)]);
        assert!(is_junta_on(&x1, Subset::of(&[1])));
        assert!(!is_junta_on(&x1, Subset::EMPTY));

        let x12 = table("x{1,2}", 4, 2);
        let g = sensitivity_graph(&x12);
        assert_eq!(edge_list(&g), vec![(1, 3), (1, 4), (2, 3), (2, 4)]);
        assert!(is_junta_on(&x12, Subset::of(&[1, 2])));
        for &(i, j, x) in g.witnesses() {
            let swapped = if x.contains(i) {
                x.without(i).with(j)
            } else {
                x.without(j).with(i)
            };
            assert_ne!(x12.value(x), x12.value(swapped));
        }
    }

    #[test]
    fn minimum_junta_examples() {
        let r = minimum_junta(&table("x{1}", 4, 2));
        assert_eq!((r.min_size, r.witness), (1, Subset::of(&[1])));
        let r = minimum_junta(&table("x{1} + x{2}", 4, 1));
        assert_eq!(r.min_size, 2);
        let c = SliceTable::constant(SliceDomain::new(4, 0).unwrap(), rat(0)).unwrap();
        assert_eq!(minimum_junta(&c).min_size, 0);
        let c = SliceTable::constant(SliceDomain::new(4, 4).unwrap(), rat(2)).unwrap();
        assert_eq!(minimum_junta(&c).min_size, 0);
    }

    #[test]
    fn lower_bound_examples() {
        let x1 = table("x{1}", 4, 2);
        assert_eq!(junta_lower_bound(&x1, Subset::of(&[1]), Subset::of(&[2])), Ok(1));
        assert_eq!(junta_lower_bound(&x1, Subset::of(&[2]), Subset::of(&[3])), Ok(0));
        assert_eq!(
            junta_lower_bound(&x1, Subset::of(&[1, 2]), Subset::of(&[2])),
            Err(Error::OverlappingSets)
        );
        let c = SliceTable::constant(SliceDomain::new(6, 3).unwrap(), rat(1)).unwrap();
        assert_eq!(junta_lower_bound(&c, Subset::of(&[1, 2]), Subset::of(&[3, 4])), Ok(0));
    }

    /// Smallest `J` (by size, then colex) such that equal restrictions
    /// `x ∩ J` always give equal values.
    fn definitional_minimum(f: &SliceTable) -> usize {
        let n = f.domain().n();
        (0..=n)
            .find(|&size| KSubsets::new(n, size).any(|j| depends_only_on(f, j)))
            .unwrap()
    }

    fn depends_only_on(f: &SliceTable, j: Subset) -> bool {
        let mut seen = std::collections::HashMap::new();
        f.iter()
            .all(|(x, v)| seen.entry(x.intersection(j)).or_insert(v) == &v)
    }

    /// Smallest vertex cover by exhaustive search.
    fn exhaustive_cover(g: &SensitivityGraph) -> usize {
        let n = g.n();
        (0..=n)
            .find(|&size| KSubsets::new(n, size).any(|c| g.is_vertex_cover(c)))
            .unwrap()
    }

    fn arb_table(max_n: usize) -> impl Strategy<Value = SliceTable> {
        (1..=max_n)
            .prop_flat_map(|n| (Just(n), 0..=n))
            .prop_flat_map(|(n, k)| {
                let dom = SliceDomain::new(n, k).unwrap();
                let size = dom.size() as usize;
                (Just(dom), prop::collection::vec(0i64..3, size))
            })
            .prop_map(|(dom, values)| SliceTable::new(dom, values.into_iter().map(rat).collect()).unwrap())
    }

    /// Random low-degree functions of a few variables make sparse graphs.
    fn arb_junta_table() -> impl Strategy<Value = SliceTable> {
        (5usize..=9, prop::collection::vec((0u64..64, -2i64..=2), 1..5)).prop_flat_map(|(n, terms)| {
            (Just(n), 1..n, Just(terms))
        })
        .prop_map(|(n, k, terms)| {
            let mut p = crate::slice::MultilinearPoly::zero(n);
            for (mask, c) in terms {
                let s = Subset::from_bits(mask & Subset::prefix(n).bits());
                p.add_term(s, rat(c));
            }
            truth_table(&p, &SliceDomain::new(n, k).unwrap()).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        #[test]
        fn cover_is_optimal_and_matches_definition(f in prop_oneof![arb_table(8), arb_junta_table()]) {
            let g = sensitivity_graph(&f);
            let report = minimum_junta_of(&g);
            prop_assert!(is_junta_on(&f, report.witness));
            prop_assert!(depends_only_on(&f, report.witness));
            prop_assert_eq!(report.min_size, exhaustive_cover(&g));
            prop_assert_eq!(report.min_size, definitional_minimum(&f));
            for v in report.witness.iter() {
                prop_assert!(!g.is_vertex_cover(report.witness.without(v)));
            }
        }

        #[test]
        fn dual_preserves_minimum_junta(f in prop_oneof![arb_table(8), arb_junta_table()]) {
            prop_assert_eq!(minimum_junta(&f).min_size, minimum_junta(&f.dual()).min_size);
        }

        #[test]
        fn lower_bound_never_exceeds_minimum(f in arb_junta_table(), split in 1usize..5) {
            let n = f.domain().n();
            let report = minimum_junta(&f);
            let i = Subset::prefix(split.min(n - 1));
            let j = Subset::prefix(n).difference(i);
            let bound = junta_lower_bound(&f, i, j).unwrap();
            prop_assert!(bound <= report.min_size);
        }
    }
}
