//! Subsets of `[n]` as 64-bit masks, plus colexicographic enumeration and
//! ranking.
//!
//! Coordinate `i` (1-based) lives in bit `i - 1`. For sets of equal size the
//! numeric order of the masks is exactly colex order, which is the canonical
//! order used for slice points throughout the crate.

use std::fmt;
use std::sync::OnceLock;

/// Largest supported ambient dimension.
pub const MAX_N: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub const fn from_bits(bits: u64) -> Self {
        Subset(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// Builds a subset from 1-based indices.
    pub fn of(indices: &[usize]) -> Self {
        indices.iter().fold(Subset::EMPTY, |s, &i| s.with(i))
    }

    /// `{1, ..., m}`.
    pub fn prefix(m: usize) -> Self {
        Subset(low_mask(m))
    }

    /// `{lo, ..., hi}` (1-based, inclusive); empty when `hi < lo`.
    pub fn range(lo: usize, hi: usize) -> Self {
        if hi < lo {
            return Subset::EMPTY;
        }
        Subset(low_mask(hi) & !low_mask(lo - 1))
    }

    pub fn with(self, index: usize) -> Self {
        assert!((1..=MAX_N).contains(&index), "index {index} out of range");
        Subset(self.0 | 1 << (index - 1))
    }

    pub fn without(self, index: usize) -> Self {
        Subset(self.0 & !(1 << (index - 1)))
    }

    pub fn contains(self, index: usize) -> bool {
        index >= 1 && index <= MAX_N && self.0 >> (index - 1) & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    /// Largest element, or 0 for the empty set.
    pub fn max(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    /// Complement within `[n]`.
    pub fn complement(self, n: usize) -> Subset {
        Subset(!self.0 & low_mask(n))
    }

    /// 1-based elements in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i + 1)
        })
    }

    /// All subsets of `self` with exactly `size` elements, in colex order.
    pub fn subsets_of_size(self, size: usize) -> impl Iterator<Item = Subset> {
        let positions: Vec<u32> = self.iter().map(|i| (i - 1) as u32).collect();
        KSubsets::new(positions.len(), size).map(move |inner| {
            let mut out = 0u64;
            let mut b = inner.0;
            while b != 0 {
                let t = b.trailing_zeros() as usize;
                out |= 1 << positions[t];
                b &= b - 1;
            }
            Subset(out)
        })
    }

    /// Colex rank among all subsets of the same size.
    pub fn colex_rank(self) -> usize {
        let mut rank = 0u64;
        for (j, i) in self.iter().enumerate() {
            rank += binomial_u64(i - 1, j + 1);
        }
        rank as usize
    }

    /// Inverse of [`Subset::colex_rank`] for subsets of size `size`.
    pub fn colex_unrank(mut rank: usize, size: usize) -> Subset {
        let mut bits = 0u64;
        for j in (1..=size).rev() {
            // largest p with C(p, j) <= rank
            let mut p = j - 1;
            while binomial_u64(p + 1, j) as usize <= rank {
                p += 1;
            }
            rank -= binomial_u64(p, j) as usize;
            bits |= 1 << p;
        }
        Subset(bits)
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Graded colex: smaller sets first, then colex (numeric mask) order.
impl Ord for Subset {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.len(), self.0).cmp(&(other.len(), other.0))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (pos, i) in self.iter().enumerate() {
            if pos > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

fn low_mask(m: usize) -> u64 {
    if m >= 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

fn pascal() -> &'static [[u64; MAX_N + 1]; MAX_N + 1] {
    static TABLE: OnceLock<Box<[[u64; MAX_N + 1]; MAX_N + 1]>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Box::new([[0u64; MAX_N + 1]; MAX_N + 1]);
        for n in 0..=MAX_N {
            t[n][0] = 1;
            for k in 1..=n {
                t[n][k] = t[n - 1][k - 1] + if k < n { t[n - 1][k] } else { 0 };
            }
        }
        t
    })
}

/// `C(n, k)` for `n <= 64`, zero when `k > n`.
pub fn binomial_u64(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    pascal()[n][k]
}

/// `C(n, k)` for arbitrary `n`, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// All `k`-subsets of `[n]` in colex order (Gosper's hack).
#[derive(Clone, Debug)]
pub struct KSubsets {
    next: Option<u64>,
    limit: u64,
}

impl KSubsets {
    pub fn new(n: usize, k: usize) -> Self {
        assert!(n <= MAX_N, "n = {n} exceeds {MAX_N}");
        let next = if k > n {
            None
        } else {
            Some(low_mask(k))
        };
        Self {
            next,
            limit: low_mask(n),
        }
    }
}

impl Iterator for KSubsets {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            match cur.checked_add(c) {
                Some(r) => {
                    let nxt = (((r ^ cur) >> 2) / c) | r;
                    (nxt & !self.limit == 0).then_some(nxt)
                }
                None => None,
            }
        };
        Some(Subset(cur))
    }
}

/// All subsets of `[n]` with at most `d` elements, graded colex order.
pub fn subsets_up_to(n: usize, d: usize) -> impl Iterator<Item = Subset> {
    (0..=d.min(n)).flat_map(move |size| KSubsets::new(n, size))
}
