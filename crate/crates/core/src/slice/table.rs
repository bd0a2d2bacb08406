use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ratpoly::Rational;
use crate::slice::domain::SliceDomain;
use crate::slice::poly::MultilinearPoly;
use crate::subset::Subset;
use crate::thresholds::ValueSet;

/// A function on the slice given by its full value table, in canonical
/// (colex) point order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceTable {
    domain: SliceDomain,
    values: Vec<Rational>,
}

impl SliceTable {
    pub fn new(domain: SliceDomain, values: Vec<Rational>) -> Result<Self> {
        if values.len() as u128 != domain.size() {
            return Err(Error::Precondition(format!(
                "table has {} values but the domain has {} points",
                values.len(),
                domain.size()
            )));
        }
        Ok(Self { domain, values })
    }

    /// Tabulates `f` over the domain, subject to the size guard.
    pub fn from_fn(domain: SliceDomain, f: impl Fn(Subset) -> Rational) -> Result<Self> {
        domain.check_size()?;
        let values = domain.points().map(f).collect();
        Ok(Self { domain, values })
    }

    pub fn constant(domain: SliceDomain, value: Rational) -> Result<Self> {
        Self::from_fn(domain, |_| value.clone())
    }

    pub fn domain(&self) -> &SliceDomain {
        &self.domain
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Value at a point of the domain.
    pub fn value(&self, point: Subset) -> &Rational {
        &self.values[self.domain.index_of(point)]
    }

    /// `(point, value)` pairs in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (Subset, &Rational)> {
        self.domain.points().zip(self.values.iter())
    }

    pub fn is_constant(&self) -> bool {
        self.values.windows(2).all(|w| w[0] == w[1])
    }

    /// First point (canonical order) whose value lies outside `set`.
    pub fn non_member_point(&self, set: &ValueSet) -> Option<Subset> {
        self.iter().find(|(_, v)| !set.contains(v)).map(|(p, _)| p)
    }

    pub fn is_a_valued(&self, set: &ValueSet) -> bool {
        self.non_member_point(set).is_none()
    }

    /// Errors with the first offending point unless the table is `set`-valued.
    pub fn require_a_valued(&self, set: &ValueSet) -> Result<()> {
        match self.non_member_point(set) {
            None => Ok(()),
            Some(point) => Err(Error::NotAValued {
                point,
                value: self.value(point).clone(),
            }),
        }
    }

    /// The dual function `x -> f(1 - x)` on `([n] choose n-k)`.
    pub fn dual(&self) -> SliceTable {
        let n = self.domain.n();
        let dual_domain = self.domain.dual();
        let values = dual_domain
            .points()
            .map(|p| self.value(p.complement(n)).clone())
            .collect();
        SliceTable {
            domain: dual_domain,
            values,
        }
    }

    /// Maps each value to a small integer class, equal values sharing a class.
    /// Lets exhaustive scans compare values without touching bignums.
    pub(crate) fn value_classes(&self) -> Vec<u32> {
        let mut distinct: Vec<&Rational> = self.values.iter().collect();
        distinct.sort();
        distinct.dedup();
        self.values
            .iter()
            .map(|v| distinct.binary_search(&v).expect("present") as u32)
            .collect()
    }
}

/// Exhaustive value table of `p` over `dom`.
pub fn truth_table(p: &MultilinearPoly, dom: &SliceDomain) -> Result<SliceTable> {
    if p.n() != dom.n() {
        return Err(Error::DimensionMismatch {
            expected: p.n(),
            actual: dom.n(),
        });
    }
    dom.check_size()?;
    let (denom, terms) = p.scaled_terms();
    let values = dom
        .points()
        .map(|x| {
            let bits = x.bits();
            let mut acc = BigInt::zero();
            for (mask, c) in &terms {
                if mask & !bits == 0 {
                    acc += c;
                }
            }
            Rational::new(acc, denom.clone())
        })
        .collect();
    Ok(SliceTable {
        domain: *dom,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::rat;
    use crate::slice::parse::parse_poly;
    use crate::subset::KSubsets;

    /// `3 - 2 Σ_{i<=m} x_i + Σ_{i<j<=m} x_i x_j` on `n` variables.
    fn gate_example(n: usize, m: usize) -> MultilinearPoly {
        let mut p = MultilinearPoly::constant(n, rat(3));
        for i in 1..=m {
            p.add_term(Subset::of(&[i]), rat(-2));
        }
        for pair in KSubsets::new(m, 2) {
            p.add_term(pair, rat(1));
        }
        p
    }

    #[test]
    fn truth_table_examples() {
        let dom = SliceDomain::new(3, 1).unwrap();
        let x1 = parse_poly("x{1}", 3).unwrap();
        let t = truth_table(&x1, &dom).unwrap();
        assert_eq!(t.values(), &[rat(1), rat(0), rat(0)]);

        let one = parse_poly("1", 4).unwrap();
        let t = truth_table(&one, &SliceDomain::new(4, 2).unwrap()).unwrap();
        assert!(t.values().iter().all(|v| *v == rat(1)));

        let a013 = ValueSet::from_integers(&[0, 1, 3]).unwrap();
        let dom = SliceDomain::new(7, 5).unwrap();
        let t = truth_table(&gate_example(7, 7), &dom).unwrap();
        assert_eq!(t.values().len(), 21);
        assert!(t.is_a_valued(&a013));

        assert!(truth_table(&x1, &SliceDomain::new(4, 1).unwrap()).is_err());
    }

    #[test]
    fn truth_table_matches_pointwise_evaluation() {
        let p = parse_poly("1/3 - x{2} + 5/7*x{1,4} - 2*x{2,3,5}", 6).unwrap();
        let dom = SliceDomain::new(6, 3).unwrap();
        let t = truth_table(&p, &dom).unwrap();
        for (x, v) in t.iter() {
            assert_eq!(*v, p.evaluate(x));
        }
    }

    #[test]
    fn a_valuedness() {
        let boolean = ValueSet::from_integers(&[0, 1]).unwrap();
        let dom = SliceDomain::new(5, 2).unwrap();
        assert!(SliceTable::constant(dom, rat(0)).unwrap().is_a_valued(&boolean));
        let mut avg = MultilinearPoly::zero(5);
        for i in 1..=5 {
            avg.add_term(Subset::of(&[i]), crate::ratpoly::ratio(1, 2));
        }
        assert!(truth_table(&avg, &dom).unwrap().is_a_valued(&boolean));

        // with k = 6 the gate polynomial evaluates to P(6) = 6
        let a013 = ValueSet::from_integers(&[0, 1, 3]).unwrap();
        let dom = SliceDomain::new(7, 6).unwrap();
        let t = truth_table(&gate_example(7, 7), &dom).unwrap();
        assert_eq!(t.non_member_point(&a013), Some(Subset::prefix(6)));
        assert_eq!(
            t.require_a_valued(&a013),
            Err(Error::NotAValued {
                point: Subset::prefix(6),
                value: rat(6)
            })
        );
    }

    #[test]
    fn dual_examples() {
        let dom = SliceDomain::new(3, 1).unwrap();
        let t = truth_table(&parse_poly("x{1}", 3).unwrap(), &dom).unwrap();
        let d = t.dual();
        assert_eq!(d.domain().k(), 2);
        let expected = truth_table(&parse_poly("1 - x{1}", 3).unwrap(), d.domain()).unwrap();
        assert_eq!(d, expected);
        assert_eq!(d.dual(), t);

        let c = SliceTable::constant(SliceDomain::new(5, 2).unwrap(), rat(4)).unwrap();
        assert_eq!(c.dual(), SliceTable::constant(SliceDomain::new(5, 3).unwrap(), rat(4)).unwrap());
    }
}
