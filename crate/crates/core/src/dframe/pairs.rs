use std::fmt;

use thiserror::Error;

use crate::bits::ElemSet;
use crate::lattice::FinFrame;

/// An element `α = (α₊, α₋)` of `L₊ × L₋`, as a pair of indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pair {
    pub plus: usize,
    pub minus: usize,
}

impl Pair {
    pub const fn new(plus: usize, minus: usize) -> Self {
        Pair { plus, minus }
    }
}

impl fmt::Debug for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.plus, self.minus)
    }
}

/// The four pair operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairOp {
    /// Logical join `(α₊ ∨ β₊, α₋ ∧ β₋)`.
    Join,
    /// Logical meet `(α₊ ∧ β₊, α₋ ∨ β₋)`.
    Meet,
    /// Information join `(α₊ ∨ β₊, α₋ ∨ β₋)`.
    InfoJoin,
    /// Information meet `(α₊ ∧ β₊, α₋ ∧ β₋)`.
    InfoMeet,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("pair {pair:?} does not lie in a {plus}x{minus} carrier")]
pub struct CarrierMismatch {
    pub pair: Pair,
    pub plus: usize,
    pub minus: usize,
}

/// The two frames `L₊, L₋`, viewed as the carrier of pair relations.
#[derive(Clone, Copy, Debug)]
pub struct PairSpace<'a> {
    pub plus: &'a FinFrame,
    pub minus: &'a FinFrame,
}

impl<'a> PairSpace<'a> {
    pub fn new(plus: &'a FinFrame, minus: &'a FinFrame) -> Self {
        PairSpace { plus, minus }
    }

    pub fn tt(&self) -> Pair {
        Pair::new(self.plus.top(), self.minus.bottom())
    }

    pub fn ff(&self) -> Pair {
        Pair::new(self.plus.bottom(), self.minus.top())
    }

    /// `⊥ = (0, 0)`, bottom of the information order.
    pub fn bot(&self) -> Pair {
        Pair::new(self.plus.bottom(), self.minus.bottom())
    }

    /// `⊤ = (1, 1)`.
    pub fn top(&self) -> Pair {
        Pair::new(self.plus.top(), self.minus.top())
    }

    pub fn contains(&self, a: Pair) -> bool {
        a.plus < self.plus.len() && a.minus < self.minus.len()
    }

    #[inline]
    pub fn join(&self, a: Pair, b: Pair) -> Pair {
        Pair::new(
            self.plus.join(a.plus, b.plus),
            self.minus.meet(a.minus, b.minus),
        )
    }

    #[inline]
    pub fn meet(&self, a: Pair, b: Pair) -> Pair {
        Pair::new(
            self.plus.meet(a.plus, b.plus),
            self.minus.join(a.minus, b.minus),
        )
    }

    #[inline]
    pub fn info_join(&self, a: Pair, b: Pair) -> Pair {
        Pair::new(
            self.plus.join(a.plus, b.plus),
            self.minus.join(a.minus, b.minus),
        )
    }

    #[inline]
    pub fn info_meet(&self, a: Pair, b: Pair) -> Pair {
        Pair::new(
            self.plus.meet(a.plus, b.plus),
            self.minus.meet(a.minus, b.minus),
        )
    }

    /// Applies `op` after checking both operands lie in this carrier.
    pub fn pair_op(&self, op: PairOp, a: Pair, b: Pair) -> Result<Pair, CarrierMismatch> {
        for p in [a, b] {
            if !self.contains(p) {
                return Err(CarrierMismatch {
                    pair: p,
                    plus: self.plus.len(),
                    minus: self.minus.len(),
                });
            }
        }
        Ok(match op {
            PairOp::Join => self.join(a, b),
            PairOp::Meet => self.meet(a, b),
            PairOp::InfoJoin => self.info_join(a, b),
            PairOp::InfoMeet => self.info_meet(a, b),
        })
    }

    /// Information order `α ⊑ β`.
    #[inline]
    pub fn info_leq(&self, a: Pair, b: Pair) -> bool {
        self.plus.leq(a.plus, b.plus) && self.minus.leq(a.minus, b.minus)
    }

    /// Logical order `α ≤ β`: plus increases, minus decreases.
    #[inline]
    pub fn logic_leq(&self, a: Pair, b: Pair) -> bool {
        self.plus.leq(a.plus, b.plus) && self.minus.leq(b.minus, a.minus)
    }

    /// All pairs, plus-major.
    pub fn pairs(&self) -> impl Iterator<Item = Pair> + '_ {
        let m = self.minus.len();
        (0..self.plus.len()).flat_map(move |p| (0..m).map(move |q| Pair::new(p, q)))
    }

    pub fn empty(&self) -> PairRelation {
        PairRelation::empty(self.plus.len(), self.minus.len())
    }

    pub fn full(&self) -> PairRelation {
        PairRelation::full(self.plus.len(), self.minus.len())
    }

    pub fn relation(&self, pairs: impl IntoIterator<Item = Pair>) -> PairRelation {
        let mut r = self.empty();
        for p in pairs {
            r.insert(p);
        }
        r
    }

    /// Renders a pair with element labels, e.g. `(m,0)`.
    pub fn show(&self, a: Pair) -> String {
        format!(
            "({},{})",
            self.plus.label(a.plus),
            self.minus.label(a.minus)
        )
    }
}

/// A subset of `L₊ × L₋`: one bit row of minus elements per plus element.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PairRelation {
    n_minus: usize,
    rows: Vec<ElemSet>,
}

impl fmt::Debug for PairRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl PairRelation {
    pub fn empty(n_plus: usize, n_minus: usize) -> Self {
        PairRelation {
            n_minus,
            rows: vec![ElemSet::EMPTY; n_plus],
        }
    }

    pub fn full(n_plus: usize, n_minus: usize) -> Self {
        PairRelation {
            n_minus,
            rows: vec![ElemSet::full(n_minus); n_plus],
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows.len(), self.n_minus)
    }

    /// `{ q | (p, q) ∈ R }`.
    #[inline]
    pub fn row(&self, p: usize) -> ElemSet {
        self.rows[p]
    }

    /// `{ p | (p, q) ∈ R }`.
    pub fn column(&self, q: usize) -> ElemSet {
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, r)| r.contains(q))
            .map(|(p, _)| p)
            .collect()
    }

    #[inline]
    pub fn contains(&self, a: Pair) -> bool {
        self.rows.get(a.plus).is_some_and(|r| r.contains(a.minus))
    }

    /// Inserts `a`; returns whether it was new.
    pub fn insert(&mut self, a: Pair) -> bool {
        let row = &mut self.rows[a.plus];
        let fresh = !row.contains(a.minus);
        row.insert(a.minus);
        fresh
    }

    pub fn remove(&mut self, a: Pair) {
        self.rows[a.plus] = self.rows[a.plus].difference(ElemSet::singleton(a.minus));
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    /// Members in plus-major order.
    pub fn iter(&self) -> impl Iterator<Item = Pair> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(p, r)| r.iter().map(move |q| Pair::new(p, q)))
    }

    pub fn to_vec(&self) -> Vec<Pair> {
        self.iter().collect()
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip(other, ElemSet::union)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip(other, ElemSet::intersection)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip(other, ElemSet::difference)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.rows
            .iter()
            .zip(&other.rows)
            .all(|(a, b)| a.is_subset(*b))
    }

    /// `A₊ × A₋` as a relation.
    pub fn product(n_plus: usize, n_minus: usize, a_plus: ElemSet, a_minus: ElemSet) -> Self {
        let rows = (0..n_plus)
            .map(|p| {
                if a_plus.contains(p) {
                    a_minus
                } else {
                    ElemSet::EMPTY
                }
            })
            .collect();
        PairRelation { n_minus, rows }
    }

    fn zip(&self, other: &Self, f: impl Fn(ElemSet, ElemSet) -> ElemSet) -> Self {
        assert_eq!(
            self.dims(),
            other.dims(),
            "pair relations over different carriers"
        );
        PairRelation {
            n_minus: self.n_minus,
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| f(*a, *b))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds_of_both_orders() {
        let two = FinFrame::chain(&["0", "1"]);
        let s = PairSpace::new(&two, &two);
        assert_eq!(s.meet(s.tt(), s.ff()), s.ff());
        assert_eq!(s.join(s.tt(), s.ff()), s.tt());
        assert_eq!(s.info_meet(s.tt(), s.ff()), s.bot());
        assert_eq!(s.info_join(s.tt(), s.ff()), s.top());
    }

    #[test]
    fn chain3_join_example() {
        let c = FinFrame::chain(&["0", "m", "1"]);
        let s = PairSpace::new(&c, &c);
        assert_eq!(s.join(Pair::new(1, 0), Pair::new(0, 1)), Pair::new(1, 0));
    }

    #[test]
    fn mismatched_carrier_is_an_error() {
        let two = FinFrame::chain(&["0", "1"]);
        let s = PairSpace::new(&two, &two);
        assert!(s
            .pair_op(PairOp::Join, Pair::new(2, 0), Pair::new(0, 0))
            .is_err());
        assert_eq!(
            s.pair_op(PairOp::InfoJoin, Pair::new(1, 0), Pair::new(0, 1)),
            Ok(s.top())
        );
    }

    /// Both orders on the pair carrier are distributive lattices with the
    /// expected bounds. Checked by full scan on a product of small frames.
    #[test]
    fn pair_orders_are_distributive() {
        let c = FinFrame::chain(&["0", "m", "1"]);
        let d = FinFrame::from_generating(
            ["0", "a", "b", "1"].iter().map(|s| s.to_string()).collect(),
            &[(0, 1), (0, 2), (1, 3), (2, 3)],
        )
        .unwrap();
        let s = PairSpace::new(&c, &d);
        let all: Vec<Pair> = s.pairs().collect();
        for &x in &all {
            assert!(s.logic_leq(s.ff(), x) && s.logic_leq(x, s.tt()));
            assert!(s.info_leq(s.bot(), x) && s.info_leq(x, s.top()));
            for &y in &all {
                for &z in &all {
                    assert_eq!(s.meet(x, s.join(y, z)), s.join(s.meet(x, y), s.meet(x, z)));
                    assert_eq!(
                        s.info_meet(x, s.info_join(y, z)),
                        s.info_join(s.info_meet(x, y), s.info_meet(x, z))
                    );
                }
                let j = s.join(x, y);
                assert!(s.logic_leq(x, j) && s.logic_leq(y, j));
                assert!(all
                    .iter()
                    .all(|&u| !(s.logic_leq(x, u) && s.logic_leq(y, u)) || s.logic_leq(j, u)));
            }
        }
    }

    #[test]
    fn relation_set_algebra() {
        let mut r = PairRelation::empty(3, 3);
        assert!(r.insert(Pair::new(1, 2)));
        assert!(!r.insert(Pair::new(1, 2)));
        r.insert(Pair::new(0, 0));
        assert_eq!(r.to_vec(), vec![Pair::new(0, 0), Pair::new(1, 2)]);
        assert_eq!(r.column(2), ElemSet::singleton(1));
        let p = PairRelation::product(3, 3, ElemSet::from_indices([0, 1]), ElemSet::singleton(2));
        assert_eq!(r.intersection(&p).to_vec(), vec![Pair::new(1, 2)]);
        assert!(r.difference(&p).is_subset(&r));
        assert_eq!(r.union(&p).len(), 3);
    }
}
