use std::collections::BTreeSet;

use proptest::prelude::*;
use slicekit::ratpoly::{rat, ratio};
use slicekit::recovery::{
    bunching_assign, extract_from_table, extract_from_table_with, sparsify, HomogeneousExpansion,
    IndexChoice, LayeredCoefficients,
};
use slicekit::slice::truth_table;
use slicekit::subset::{binomial_u64, subsets_up_to, KSubsets};
use slicekit::{MultilinearPoly, Rational, SliceDomain, Subset};

/// `(n, k, d)` with `k >= d` and `n >= k + d`, small enough to tabulate.
fn arb_extraction_domain() -> impl Strategy<Value = (usize, usize, usize)> {
    (0usize..=3)
        .prop_flat_map(|d| (Just(d), d.max(1)..=5))
        .prop_flat_map(|(d, k)| (k + d..=(k + d + 3).min(11), Just(k), Just(d)))
}

fn arb_poly(n: usize, d: usize) -> impl Strategy<Value = MultilinearPoly> {
    let monomials: Vec<Subset> = subsets_up_to(n, d).collect();
    let len = monomials.len();
    prop::collection::vec((any::<bool>(), -6i64..=6, 1i64..=4), len).prop_map(move |coeffs| {
        let mut p = MultilinearPoly::zero(n);
        for (s, (keep, num, den)) in monomials.iter().zip(coeffs) {
            if keep {
                p.add_term(*s, ratio(num, den));
            }
        }
        p
    })
}

fn arb_case() -> impl Strategy<Value = (SliceDomain, usize, MultilinearPoly)> {
    arb_extraction_domain().prop_flat_map(|(n, k, d)| {
        (Just(SliceDomain::new(n, k).unwrap()), Just(d), arb_poly(n, d))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn extraction_inverts_homogenization((dom, d, p) in arb_case()) {
        let h = p.homogenize(&dom, d).unwrap();
        let table = truth_table(&h, &dom).unwrap();
        let extracted = extract_from_table(&table, d).unwrap();
        prop_assert_eq!(&extracted, &HomogeneousExpansion::from_poly(&h, &dom, d).unwrap());
        let other = extract_from_table_with(&table, d, IndexChoice::Highest).unwrap();
        prop_assert_eq!(extracted, other);
    }

    #[test]
    fn sparsify_preserves_values_for_any_lower_levels(
        (dom, d, p) in arb_case(),
        seed in prop::collection::vec(-3i64..=3, 64),
    ) {
        // the telescoping identity only uses the top level
        let h = p.homogenize(&dom, d).unwrap();
        let top = HomogeneousExpansion::from_poly(&h, &dom, d).unwrap();
        let n = dom.n();
        let mut levels: Vec<Vec<Rational>> = (0..d)
            .map(|e| {
                (0..binomial_u64(n, e) as usize)
                    .map(|i| rat(seed[(i * 7 + e) % seed.len()]))
                    .collect()
            })
            .collect();
        levels.push(top.iter().map(|(_, c)| c.clone()).collect());
        let layers = LayeredCoefficients::from_levels(n, dom.k(), levels).unwrap();
        let sparse = sparsify(&layers);
        prop_assert_eq!(truth_table(&sparse.to_poly(), &dom).unwrap(), truth_table(&p, &dom).unwrap());
        prop_assert!(sparse.to_poly().degree() <= d);
    }

    #[test]
    fn bunching_keeps_the_top_level((dom, d, p) in arb_case()) {
        let h = p.homogenize(&dom, d).unwrap();
        let top = HomogeneousExpansion::from_poly(&h, &dom, d).unwrap();
        let layers = bunching_assign(&top);
        prop_assert_eq!(layers.top_level(), top.clone());
        for (s, c) in top.iter() {
            prop_assert_eq!(layers.get(s), c);
        }
    }

    #[test]
    fn excess_degree_is_rejected((dom, d, _p) in arb_case()) {
        // a monomial of size d + 1 is not of degree d when n - k > d and k > d
        prop_assume!(dom.k() > d && dom.n() - dom.k() > d);
        let mono = MultilinearPoly::monomial(dom.n(), Subset::prefix(d + 1), rat(1));
        let table = truth_table(&mono, &dom).unwrap();
        prop_assert!(extract_from_table(&table, d).is_err());
    }
}

#[test]
fn quantized_coefficients_do_not_depend_on_n() {
    // every Boolean degree-1 function of x_1..x_3 on ([n] choose 2)
    let mut per_n = Vec::new();
    for n in [6, 8, 10] {
        let dom = SliceDomain::new(n, 2).unwrap();
        let boolean = slicekit::ValueSet::from_integers(&[0, 1]).unwrap();
        let mut seen = BTreeSet::new();
        for a0 in -1..=2 {
            for code in 0..27 {
                let mut p = MultilinearPoly::constant(n, rat(a0));
                let mut c = code;
                for i in 1..=3 {
                    p.add_term(Subset::of(&[i]), rat(c % 3 - 1));
                    c /= 3;
                }
                let table = truth_table(&p, &dom).unwrap();
                if !table.is_a_valued(&boolean) {
                    continue;
                }
                let e = extract_from_table(&table, 1).unwrap();
                seen.extend(e.iter().map(|(_, c)| c.clone()));
            }
        }
        per_n.push(seen);
    }
    let expected: BTreeSet<Rational> = [ratio(-1, 2), rat(0), ratio(1, 2), rat(1)].into_iter().collect();
    for seen in per_n {
        assert_eq!(seen, expected);
    }
}

#[test]
fn planted_juntas_with_room_recover_their_support() {
    // n >= k + d + 4|J|d
    let cases: [(&[usize], usize, usize); 4] = [(&[3], 1, 4), (&[2, 5], 2, 3), (&[1, 4], 1, 5), (&[2, 7, 9], 2, 2)];
    for (j, d, k) in cases {
        let n = k + d + 4 * j.len() * d;
        let dom = SliceDomain::new(n, k).unwrap();
        let mut p = MultilinearPoly::constant(n, rat(1));
        for size in 1..=d.min(j.len()) {
            for local in KSubsets::new(j.len(), size) {
                let s = Subset::of(&local.iter().map(|i| j[i - 1]).collect::<Vec<_>>());
                p.add_term(s, ratio(local.bits() as i64 + 1, 2));
            }
        }
        let table = truth_table(&p, &dom).unwrap();
        let sparse = sparsify(&bunching_assign(&extract_from_table(&table, d).unwrap()));
        assert!(sparse.support().is_subset_of(Subset::of(j)), "J={j:?}: {}", sparse.support());
        assert_eq!(truth_table(&sparse.to_poly(), &dom).unwrap(), table);
    }
}
