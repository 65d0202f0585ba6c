use std::fmt;

use thiserror::Error;

use super::poset::{FinPoset, OrderError};
use crate::bits::{ElemSet, MAX_ELEMENTS};

/// Raw, unchecked frame data. This is what [`validate_frame`] inspects; a
/// [`FinFrame`] can only be built from tables that validate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameTables {
    pub labels: Vec<String>,
    pub leq: Vec<Vec<bool>>,
    pub bottom: usize,
    pub top: usize,
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
}

/// Malformed tables: wrong shapes or indices out of range.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StructuralError {
    #[error("frame has no elements")]
    Empty,
    #[error("{0} elements exceed the limit of {MAX_ELEMENTS}")]
    TooLarge(usize),
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("table `{table}` is not {n}x{n}")]
    Shape { table: &'static str, n: usize },
    #[error("table `{table}` entry ({row},{col}) = {value} is out of range")]
    OutOfRange {
        table: &'static str,
        row: usize,
        col: usize,
        value: usize,
    },
    #[error("distinguished element `{name}` = {value} is out of range")]
    BadConstant { name: &'static str, value: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrameLaw {
    Reflexive,
    Antisymmetric,
    Transitive,
    Bottom,
    Top,
    MeetIsGlb,
    JoinIsLub,
    Distributive,
}

impl fmt::Display for FrameLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FrameLaw::Reflexive => "reflexivity",
            FrameLaw::Antisymmetric => "antisymmetry",
            FrameLaw::Transitive => "transitivity",
            FrameLaw::Bottom => "bottom",
            FrameLaw::Top => "top",
            FrameLaw::MeetIsGlb => "meet is greatest lower bound",
            FrameLaw::JoinIsLub => "join is least upper bound",
            FrameLaw::Distributive => "distributivity",
        })
    }
}

/// The first violated law, with the element indices that witness it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawViolation {
    pub law: FrameLaw,
    pub witness: Vec<usize>,
}

impl fmt::Display for LawViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at {:?}", self.law, self.witness)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrameValidation {
    Valid,
    Violation(LawViolation),
}

impl FrameValidation {
    pub fn is_valid(&self) -> bool {
        matches!(self, FrameValidation::Valid)
    }
}

fn structural(t: &FrameTables) -> Result<usize, StructuralError> {
    let n = t.labels.len();
    if n == 0 {
        return Err(StructuralError::Empty);
    }
    if n > MAX_ELEMENTS {
        return Err(StructuralError::TooLarge(n));
    }
    for (i, l) in t.labels.iter().enumerate() {
        if t.labels[..i].contains(l) {
            return Err(StructuralError::DuplicateLabel(l.clone()));
        }
    }
    if t.leq.len() != n || t.leq.iter().any(|r| r.len() != n) {
        return Err(StructuralError::Shape { table: "leq", n });
    }
    for (name, table) in [("meet", &t.meet), ("join", &t.join)] {
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(StructuralError::Shape { table: name, n });
        }
        for (row, r) in table.iter().enumerate() {
            for (col, &value) in r.iter().enumerate() {
                if value >= n {
                    return Err(StructuralError::OutOfRange {
                        table: name,
                        row,
                        col,
                        value,
                    });
                }
            }
        }
    }
    if t.bottom >= n {
        return Err(StructuralError::BadConstant {
            name: "bottom",
            value: t.bottom,
        });
    }
    if t.top >= n {
        return Err(StructuralError::BadConstant {
            name: "top",
            value: t.top,
        });
    }
    Ok(n)
}

/// Checks that the tables describe a finite frame (a finite distributive
/// lattice). Laws are checked in a fixed order and the first failure is
/// reported with a witness that is minimal in index order.
pub fn validate_frame(t: &FrameTables) -> Result<FrameValidation, StructuralError> {
    let n = structural(t)?;
    let leq = &t.leq;
    let fail =
        |law, witness: Vec<usize>| Ok(FrameValidation::Violation(LawViolation { law, witness }));

    for i in 0..n {
        if !leq[i][i] {
            return fail(FrameLaw::Reflexive, vec![i]);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if leq[i][j] && leq[j][i] {
                return fail(FrameLaw::Antisymmetric, vec![i, j]);
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if leq[i][j] && leq[j][k] && !leq[i][k] {
                    return fail(FrameLaw::Transitive, vec![i, j, k]);
                }
            }
        }
    }
    for x in 0..n {
        if !leq[t.bottom][x] {
            return fail(FrameLaw::Bottom, vec![x]);
        }
    }
    for x in 0..n {
        if !leq[x][t.top] {
            return fail(FrameLaw::Top, vec![x]);
        }
    }
    for x in 0..n {
        for y in 0..n {
            let m = t.meet[x][y];
            if !leq[m][x] || !leq[m][y] {
                return fail(FrameLaw::MeetIsGlb, vec![x, y]);
            }
            if let Some(z) = (0..n).find(|&z| leq[z][x] && leq[z][y] && !leq[z][m]) {
                return fail(FrameLaw::MeetIsGlb, vec![x, y, z]);
            }
            let j = t.join[x][y];
            if !leq[x][j] || !leq[y][j] {
                return fail(FrameLaw::JoinIsLub, vec![x, y]);
            }
            if let Some(z) = (0..n).find(|&z| leq[x][z] && leq[y][z] && !leq[j][z]) {
                return fail(FrameLaw::JoinIsLub, vec![x, y, z]);
            }
        }
    }
    // Binary distributivity; with the empty join handled by the bottom law
    // this is the frame law for finite families.
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = t.meet[x][t.join[y][z]];
                let rhs = t.join[t.meet[x][y]][t.meet[x][z]];
                if lhs != rhs {
                    return fail(FrameLaw::Distributive, vec![x, y, z]);
                }
            }
        }
    }
    Ok(FrameValidation::Valid)
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FrameError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Structure(#[from] StructuralError),
    #[error("no {op} for `{a}` and `{b}`: not a lattice")]
    NotALattice {
        op: &'static str,
        a: String,
        b: String,
    },
    #[error("law violated: {0}")]
    Law(LawViolation),
}

/// A finite frame: a finite distributive lattice with explicit tables.
#[derive(Clone, PartialEq, Eq)]
pub struct FinFrame {
    poset: FinPoset,
    bottom: usize,
    top: usize,
    meet: Vec<u8>,
    join: Vec<u8>,
}

impl fmt::Debug for FinFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinFrame")
            .field("elements", &self.poset.labels())
            .field("hasse", &self.poset.hasse())
            .finish()
    }
}

impl FinFrame {
    /// Derives meet and join tables from an order, failing if they do not
    /// exist or the resulting lattice is not distributive.
    pub fn from_poset(poset: FinPoset) -> Result<Self, FrameError> {
        let n = poset.len();
        if n == 0 {
            return Err(StructuralError::Empty.into());
        }
        let all = poset.all();
        let greatest = |s: ElemSet| s.iter().find(|&g| s.is_subset(poset.down(g)));
        let least = |s: ElemSet| s.iter().find(|&g| s.is_subset(poset.up(g)));
        let bottom = least(all).ok_or_else(|| FrameError::NotALattice {
            op: "bottom",
            a: poset.label(0).to_string(),
            b: poset.label(0).to_string(),
        })?;
        let top = greatest(all).ok_or_else(|| FrameError::NotALattice {
            op: "top",
            a: poset.label(0).to_string(),
            b: poset.label(0).to_string(),
        })?;
        let mut meet = vec![0u8; n * n];
        let mut join = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                let lower = poset.down(a).intersection(poset.down(b));
                let m = greatest(lower).ok_or_else(|| FrameError::NotALattice {
                    op: "meet",
                    a: poset.label(a).to_string(),
                    b: poset.label(b).to_string(),
                })?;
                let upper = poset.up(a).intersection(poset.up(b));
                let j = least(upper).ok_or_else(|| FrameError::NotALattice {
                    op: "join",
                    a: poset.label(a).to_string(),
                    b: poset.label(b).to_string(),
                })?;
                meet[a * n + b] = m as u8;
                join[a * n + b] = j as u8;
            }
        }
        let frame = FinFrame {
            poset,
            bottom,
            top,
            meet,
            join,
        };
        if let Some(w) = frame.distributivity_witness() {
            return Err(FrameError::Law(LawViolation {
                law: FrameLaw::Distributive,
                witness: w,
            }));
        }
        Ok(frame)
    }

    /// Builds a frame from labels and a generating `<=` relation.
    pub fn from_generating(
        labels: Vec<String>,
        pairs: &[(usize, usize)],
    ) -> Result<Self, FrameError> {
        Self::from_poset(FinPoset::from_generating(labels, pairs)?)
    }

    /// Validates raw tables and wraps them.
    pub fn from_tables(t: FrameTables) -> Result<Self, FrameError> {
        match validate_frame(&t)? {
            FrameValidation::Violation(v) => Err(FrameError::Law(v)),
            FrameValidation::Valid => {
                let n = t.labels.len();
                let poset = FinPoset::from_relation(t.labels, &t.leq)?;
                let flat = |tab: &Vec<Vec<usize>>| {
                    tab.iter().flatten().map(|&x| x as u8).collect::<Vec<u8>>()
                };
                let meet = flat(&t.meet);
                let join = flat(&t.join);
                debug_assert_eq!(meet.len(), n * n);
                Ok(FinFrame {
                    poset,
                    bottom: t.bottom,
                    top: t.top,
                    meet,
                    join,
                })
            }
        }
    }

    /// A family of sets ordered by inclusion. The family must be closed under
    /// union and intersection; labels are taken in the given order.
    pub fn from_sets(labels: Vec<String>, sets: &[ElemSet]) -> Result<Self, FrameError> {
        let n = sets.len();
        let leq: Vec<Vec<bool>> = (0..n)
            .map(|i| (0..n).map(|j| sets[i].is_subset(sets[j])).collect())
            .collect();
        Self::from_poset(FinPoset::from_relation(labels, &leq)?)
    }

    /// The chain `labels[0] < labels[1] < ...`.
    pub fn chain(labels: &[&str]) -> Self {
        let pairs: Vec<(usize, usize)> = (1..labels.len()).map(|i| (i - 1, i)).collect();
        Self::from_generating(labels.iter().map(|s| s.to_string()).collect(), &pairs)
            .expect("a chain is a frame")
    }

    /// The one-element frame `0 = 1`.
    pub fn trivial() -> Self {
        Self::chain(&["0"])
    }

    pub fn to_tables(&self) -> FrameTables {
        let n = self.len();
        FrameTables {
            labels: self.poset.labels().to_vec(),
            leq: (0..n)
                .map(|a| (0..n).map(|b| self.leq(a, b)).collect())
                .collect(),
            bottom: self.bottom,
            top: self.top,
            meet: (0..n)
                .map(|a| (0..n).map(|b| self.meet(a, b)).collect())
                .collect(),
            join: (0..n)
                .map(|a| (0..n).map(|b| self.join(a, b)).collect())
                .collect(),
        }
    }

    fn distributivity_witness(&self) -> Option<Vec<usize>> {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.meet(x, self.join(y, z)) != self.join(self.meet(x, y), self.meet(x, z))
                    {
                        return Some(vec![x, y, z]);
                    }
                }
            }
        }
        None
    }

    pub fn poset(&self) -> &FinPoset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// True for the one-element frame.
    pub fn is_trivial(&self) -> bool {
        self.len() == 1
    }

    pub fn labels(&self) -> &[String] {
        self.poset.labels()
    }

    pub fn label(&self, i: usize) -> &str {
        self.poset.label(i)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.poset.index_of(label)
    }

    pub fn all(&self) -> ElemSet {
        self.poset.all()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    #[inline]
    pub fn bottom(&self) -> usize {
        self.bottom
    }

    #[inline]
    pub fn top(&self) -> usize {
        self.top
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b] as usize
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b] as usize
    }

    /// `⋁ s`, with `⋁ ∅ = 0`.
    pub fn join_all(&self, s: ElemSet) -> usize {
        s.iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// `⋀ s`, with `⋀ ∅ = 1`.
    pub fn meet_all(&self, s: ElemSet) -> usize {
        s.iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// `{ x | ∃ s ∈ S, x ≤ s }`.
    pub fn downset(&self, s: ElemSet) -> ElemSet {
        self.poset.down_closure(s)
    }

    pub fn upset(&self, s: ElemSet) -> ElemSet {
        self.poset.up_closure(s)
    }

    /// `↓x` as a set.
    #[inline]
    pub fn below(&self, x: usize) -> ElemSet {
        self.poset.down(x)
    }

    #[inline]
    pub fn above(&self, x: usize) -> ElemSet {
        self.poset.up(x)
    }

    /// Every join of a subset of `s` (including `⋁ ∅ = 0`), as a set of
    /// elements. Linear in `|s|` times the frame size.
    pub fn subset_joins(&self, s: ElemSet) -> ElemSet {
        let mut reach = ElemSet::singleton(self.bottom);
        for g in s {
            let mut next = reach;
            for r in reach {
                next.insert(self.join(r, g));
            }
            reach = next;
        }
        reach
    }

    /// Join-irreducible elements (non-bottom, not a join of strictly smaller
    /// elements).
    pub fn join_irreducibles(&self) -> ElemSet {
        self.elements()
            .filter(|&x| {
                let strictly_below = self.below(x).difference(ElemSet::singleton(x));
                x != self.bottom && self.join_all(strictly_below) != x
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(ls: &[&str]) -> Vec<String> {
        ls.iter().map(|s| s.to_string()).collect()
    }

    fn diamond() -> FinFrame {
        FinFrame::from_generating(
            labels(&["0", "a", "b", "1"]),
            &[(0, 1), (0, 2), (1, 3), (2, 3)],
        )
        .unwrap()
    }

    /// N5 with raw tables computed by hand: 0 < a < b < 1, 0 < c < 1.
    fn pentagon_tables() -> FrameTables {
        let p = FinPoset::from_generating(
            labels(&["0", "a", "b", "c", "1"]),
            &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)],
        )
        .unwrap();
        let n = 5;
        let glb = |x: usize, y: usize| {
            let s = p.down(x).intersection(p.down(y));
            s.iter().find(|&g| s.is_subset(p.down(g))).unwrap()
        };
        let lub = |x: usize, y: usize| {
            let s = p.up(x).intersection(p.up(y));
            s.iter().find(|&g| s.is_subset(p.up(g))).unwrap()
        };
        FrameTables {
            labels: p.labels().to_vec(),
            leq: (0..n)
                .map(|a| (0..n).map(|b| p.leq(a, b)).collect())
                .collect(),
            bottom: 0,
            top: 4,
            meet: (0..n)
                .map(|a| (0..n).map(|b| glb(a, b)).collect())
                .collect(),
            join: (0..n)
                .map(|a| (0..n).map(|b| lub(a, b)).collect())
                .collect(),
        }
    }

    /// Independent brute-force distributivity scan over all triples.
    fn brute_force_distributive(t: &FrameTables) -> Option<(usize, usize, usize)> {
        let n = t.labels.len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if t.meet[x][t.join[y][z]] != t.join[t.meet[x][y]][t.meet[x][z]] {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    #[test]
    fn two_element_chain_is_a_frame() {
        let two = FinFrame::chain(&["0", "1"]);
        assert_eq!(
            validate_frame(&two.to_tables()).unwrap(),
            FrameValidation::Valid
        );
    }

    #[test]
    fn pentagon_fails_distributivity() {
        let t = pentagon_tables();
        let oracle = brute_force_distributive(&t).expect("N5 is not distributive");
        match validate_frame(&t).unwrap() {
            FrameValidation::Violation(v) => {
                assert_eq!(v.law, FrameLaw::Distributive);
                assert_eq!(v.witness, vec![oracle.0, oracle.1, oracle.2]);
                // the witness genuinely violates the law
                let [x, y, z] = [v.witness[0], v.witness[1], v.witness[2]];
                assert_ne!(t.meet[x][t.join[y][z]], t.join[t.meet[x][y]][t.meet[x][z]]);
            }
            other => panic!("expected violation, got {other:?}"),
        }
        let p =
            FinPoset::from_generating(t.labels.clone(), &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)])
                .unwrap();
        assert!(matches!(FinFrame::from_poset(p), Err(FrameError::Law(_))));
    }

    #[test]
    fn diamond_passes() {
        let t = diamond().to_tables();
        assert_eq!(brute_force_distributive(&t), None);
        assert!(validate_frame(&t).unwrap().is_valid());
    }

    #[test]
    fn structural_errors_are_distinct() {
        let mut t = diamond().to_tables();
        t.meet[1][2] = 9;
        assert_eq!(
            validate_frame(&t),
            Err(StructuralError::OutOfRange {
                table: "meet",
                row: 1,
                col: 2,
                value: 9
            })
        );
        let mut t = diamond().to_tables();
        t.join.pop();
        assert_eq!(
            validate_frame(&t),
            Err(StructuralError::Shape {
                table: "join",
                n: 4
            })
        );
        let mut t = diamond().to_tables();
        t.top = 7;
        assert!(matches!(
            validate_frame(&t),
            Err(StructuralError::BadConstant { .. })
        ));
    }

    #[test]
    fn wrong_meet_table_is_a_law_violation() {
        let mut t = diamond().to_tables();
        t.meet[1][2] = 1; // a ∧ b := a
        match validate_frame(&t).unwrap() {
            FrameValidation::Violation(v) => assert_eq!(v.law, FrameLaw::MeetIsGlb),
            _ => panic!(),
        }
    }

    #[test]
    fn downsets() {
        let c3 = FinFrame::chain(&["0", "m", "1"]);
        assert_eq!(
            c3.downset(ElemSet::singleton(1)),
            ElemSet::from_indices([0, 1])
        );
        let d = diamond();
        assert_eq!(
            d.downset(ElemSet::singleton(1)),
            ElemSet::from_indices([0, 1])
        );
        assert_eq!(d.downset(ElemSet::EMPTY), ElemSet::EMPTY);
    }

    #[test]
    fn not_a_lattice_is_rejected() {
        // two incomparable maximal elements
        let err =
            FinFrame::from_generating(labels(&["0", "a", "b"]), &[(0, 1), (0, 2)]).unwrap_err();
        assert!(matches!(err, FrameError::NotALattice { .. }));
    }

    #[test]
    fn tables_are_glb_and_lub() {
        let d = diamond();
        for x in d.elements() {
            for y in d.elements() {
                let m = d.meet(x, y);
                let lower: Vec<usize> = d
                    .elements()
                    .filter(|&z| d.leq(z, x) && d.leq(z, y))
                    .collect();
                assert!(lower.iter().all(|&z| d.leq(z, m)) && lower.contains(&m));
                let j = d.join(x, y);
                let upper: Vec<usize> = d
                    .elements()
                    .filter(|&z| d.leq(x, z) && d.leq(y, z))
                    .collect();
                assert!(upper.iter().all(|&z| d.leq(j, z)) && upper.contains(&j));
            }
        }
    }

    #[test]
    fn directed_subsets_contain_their_supremum() {
        let d = diamond();
        for mask in 1u64..(1 << d.len()) {
            let s = ElemSet(mask);
            let directed = s.iter().all(|x| {
                s.iter()
                    .all(|y| s.iter().any(|z| d.leq(x, z) && d.leq(y, z)))
            });
            if directed {
                assert!(s.contains(d.join_all(s)));
            }
        }
    }

    #[test]
    fn join_irreducibles_and_subset_joins() {
        let d = diamond();
        assert_eq!(d.join_irreducibles(), ElemSet::from_indices([1, 2]));
        assert_eq!(d.subset_joins(ElemSet::from_indices([1, 2])), d.all());
        assert_eq!(d.subset_joins(ElemSet::EMPTY), ElemSet::singleton(0));
    }
}
