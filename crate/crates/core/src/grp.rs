//! The free abelian group `G = ⊕ℤ` with its total lexicographic order.
//!
//! Elements are finitely supported integer exponent vectors over the
//! generators `x1, x2, ...`, written multiplicatively.  The order compares
//! exponent sequences position by position from index 1; absent positions
//! count as zero.  The squares subgroup `H = {g^2 : g ∈ G}` consists of the
//! vectors with all exponents even.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// A finitely supported exponent vector, an element of `G`.
///
/// The identity is the empty map; stored exponents are never zero, so
/// structural equality coincides with group equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupElement {
    exponents: BTreeMap<u32, i64>,
}

impl GroupElement {
    /// The identity element.
    pub fn identity() -> Self {
        Self::default()
    }

    /// The generator `x_i` (indices start at 1).
    pub fn generator(i: u32) -> Self {
        assert!(i >= 1, "generator indices start at 1");
        Self::from_exponents([(i, 1)])
    }

    /// Builds an element from `(index, exponent)` pairs, dropping zeros.
    pub fn from_exponents<I: IntoIterator<Item = (u32, i64)>>(pairs: I) -> Self {
        let mut exponents = BTreeMap::new();
        for (i, n) in pairs {
            assert!(i >= 1, "generator indices start at 1");
            let e = exponents.entry(i).or_insert(0i64);
            *e += n;
            if *e == 0 {
                exponents.remove(&i);
            }
        }
        Self { exponents }
    }

    pub fn is_identity(&self) -> bool {
        self.exponents.is_empty()
    }

    /// Exponent of `x_i` (zero when absent).
    pub fn exponent(&self, i: u32) -> i64 {
        self.exponents.get(&i).copied().unwrap_or(0)
    }

    /// Iterates `(index, exponent)` pairs with ascending index.
    pub fn iter(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.exponents.iter().map(|(&i, &n)| (i, n))
    }

    /// Largest generator index in the support, or 0 for the identity.
    pub fn max_index(&self) -> u32 {
        self.exponents.keys().next_back().copied().unwrap_or(0)
    }

    /// Height `Σ_i |n_i|`, used by truncation budgets.
    pub fn height(&self) -> u64 {
        self.exponents.values().map(|n| n.unsigned_abs()).sum()
    }

    /// Group operation: exponentwise sum.
    pub fn compose(&self, other: &Self) -> Self {
        let mut result = self.exponents.clone();
        for (&i, &n) in &other.exponents {
            let e = result.entry(i).or_insert(0);
            *e += n;
            if *e == 0 {
                result.remove(&i);
            }
        }
        Self { exponents: result }
    }

    /// Group inverse: all exponents negated.
    pub fn invert(&self) -> Self {
        Self {
            exponents: self.exponents.iter().map(|(&i, &n)| (i, -n)).collect(),
        }
    }

    /// Lexicographic order on exponent sequences.
    pub fn lex_compare(&self, other: &Self) -> Ordering {
        let mut a = self.exponents.iter().peekable();
        let mut b = other.exponents.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                (Some((&i, &n)), Some((&j, &m))) => {
                    if i == j {
                        match n.cmp(&m) {
                            Ordering::Equal => {
                                a.next();
                                b.next();
                            }
                            ord => return ord,
                        }
                    } else if i < j {
                        // other has exponent 0 at position i
                        match n.cmp(&0) {
                            Ordering::Equal => unreachable!("stored exponents are nonzero"),
                            ord => return ord,
                        }
                    } else {
                        match 0.cmp(&m) {
                            Ordering::Equal => unreachable!("stored exponents are nonzero"),
                            ord => return ord,
                        }
                    }
                }
                (Some((_, &n)), None) => return n.cmp(&0),
                (None, Some((_, &m))) => return 0.cmp(&m),
            }
        }
    }

    /// Membership in the squares subgroup `H`: all exponents even.
    pub fn in_h(&self) -> bool {
        self.exponents.values().all(|n| n % 2 == 0)
    }
}

/// Checks that composing with `k` preserves the order of `g` and `h`.
pub fn translation_invariance_check(g: &GroupElement, h: &GroupElement, k: &GroupElement) -> bool {
    g.lex_compare(h) == g.compose(k).lex_compare(&h.compose(k))
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.lex_compare(other))
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lex_compare(other)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, n) in self.iter() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if n == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{n}")?;
            }
        }
        Ok(())
    }
}
