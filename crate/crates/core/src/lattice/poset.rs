use std::collections::HashMap;

use thiserror::Error;

use crate::bits::{ElemSet, MAX_ELEMENTS};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("no elements")]
    Empty,
    #[error("{0} elements exceed the limit of {MAX_ELEMENTS}")]
    TooLarge(usize),
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("element index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("order is not reflexive at {0}")]
    NotReflexive(usize),
    #[error("order is not antisymmetric: {0} <= {1} <= {0}")]
    NotAntisymmetric(usize, usize),
    #[error("order is not transitive: {0} <= {1} <= {2}")]
    NotTransitive(usize, usize, usize),
}

/// A finite partial order on labelled elements.
///
/// Rows are bitsets: `up[i]` holds every `j` with `i <= j`, `down[i]` every
/// `j` with `j <= i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinPoset {
    labels: Vec<String>,
    up: Vec<ElemSet>,
    down: Vec<ElemSet>,
}

fn check_labels(labels: &[String]) -> Result<(), OrderError> {
    if labels.len() > MAX_ELEMENTS {
        return Err(OrderError::TooLarge(labels.len()));
    }
    let mut seen = HashMap::new();
    for (i, l) in labels.iter().enumerate() {
        if seen.insert(l.as_str(), i).is_some() {
            return Err(OrderError::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

impl FinPoset {
    /// Builds the reflexive-transitive closure of `pairs` (each `(a, b)`
    /// meaning `a <= b`) and rejects it if antisymmetry fails.
    pub fn from_generating(
        labels: Vec<String>,
        pairs: &[(usize, usize)],
    ) -> Result<Self, OrderError> {
        check_labels(&labels)?;
        let n = labels.len();
        let mut up: Vec<ElemSet> = (0..n).map(ElemSet::singleton).collect();
        for &(a, b) in pairs {
            if a >= n {
                return Err(OrderError::IndexOutOfRange(a));
            }
            if b >= n {
                return Err(OrderError::IndexOutOfRange(b));
            }
            up[a].insert(b);
        }
        // Warshall over bit rows.
        for k in 0..n {
            for i in 0..n {
                if up[i].contains(k) {
                    up[i] = up[i].union(up[k]);
                }
            }
        }
        for i in 0..n {
            for j in up[i] {
                if j != i && up[j].contains(i) {
                    let (a, b) = if i < j { (i, j) } else { (j, i) };
                    return Err(OrderError::NotAntisymmetric(a, b));
                }
            }
        }
        Ok(Self::from_up_rows(labels, up))
    }

    /// Wraps an explicit relation, verifying the partial-order laws.
    pub fn from_relation(labels: Vec<String>, leq: &[Vec<bool>]) -> Result<Self, OrderError> {
        check_labels(&labels)?;
        let n = labels.len();
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(OrderError::IndexOutOfRange(n));
        }
        for i in 0..n {
            if !leq[i][i] {
                return Err(OrderError::NotReflexive(i));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if leq[i][j] && leq[j][i] {
                    return Err(OrderError::NotAntisymmetric(i, j));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !leq[i][j] {
                    continue;
                }
                for k in 0..n {
                    if leq[j][k] && !leq[i][k] {
                        return Err(OrderError::NotTransitive(i, j, k));
                    }
                }
            }
        }
        let up = (0..n)
            .map(|i| (0..n).filter(|&j| leq[i][j]).collect())
            .collect();
        Ok(Self::from_up_rows(labels, up))
    }

    fn from_up_rows(labels: Vec<String>, up: Vec<ElemSet>) -> Self {
        let n = labels.len();
        let mut down = vec![ElemSet::EMPTY; n];
        for (i, row) in up.iter().enumerate() {
            for j in *row {
                down[j].insert(i);
            }
        }
        FinPoset { labels, up, down }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    #[inline]
    pub fn up(&self, a: usize) -> ElemSet {
        self.up[a]
    }

    #[inline]
    pub fn down(&self, a: usize) -> ElemSet {
        self.down[a]
    }

    pub fn all(&self) -> ElemSet {
        ElemSet::full(self.len())
    }

    /// Downward closure of a set of elements.
    pub fn down_closure(&self, s: ElemSet) -> ElemSet {
        s.iter()
            .fold(ElemSet::EMPTY, |acc, x| acc.union(self.down[x]))
    }

    pub fn up_closure(&self, s: ElemSet) -> ElemSet {
        s.iter()
            .fold(ElemSet::EMPTY, |acc, x| acc.union(self.up[x]))
    }

    /// Maximal elements of `s`.
    pub fn maxima(&self, s: ElemSet) -> ElemSet {
        s.iter()
            .filter(|&x| self.up[x].intersection(s) == ElemSet::singleton(x))
            .collect()
    }

    /// The covering pairs `a < b` with nothing strictly between, sorted.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            let strictly_above = self.up[a].difference(ElemSet::singleton(a));
            for b in strictly_above {
                let between = strictly_above
                    .intersection(self.down[b])
                    .difference(ElemSet::singleton(b));
                if between.is_empty() {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// A linear extension: elements sorted so that `a < b` implies `a` first.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| (self.down[i].len(), i));
        order
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(ls: &[&str]) -> Vec<String> {
        ls.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn closure_of_generating_pairs() {
        let p = FinPoset::from_generating(labels(&["0", "m", "1"]), &[(0, 1), (1, 2)]).unwrap();
        assert!(p.leq(0, 2));
        assert!(p.leq(1, 1));
        assert!(!p.leq(2, 0));
        assert_eq!(p.hasse(), vec![(0, 1), (1, 2)]);
        assert_eq!(
            p.down_closure(ElemSet::singleton(1)),
            ElemSet::from_indices([0, 1])
        );
    }

    #[test]
    fn rejects_cycles_and_duplicates() {
        let err = FinPoset::from_generating(labels(&["0", "1"]), &[(0, 1), (1, 0)]).unwrap_err();
        assert_eq!(err, OrderError::NotAntisymmetric(0, 1));
        let err = FinPoset::from_generating(labels(&["a", "a"]), &[]).unwrap_err();
        assert_eq!(err, OrderError::DuplicateLabel("a".into()));
        let err = FinPoset::from_generating(labels(&["a"]), &[(0, 3)]).unwrap_err();
        assert_eq!(err, OrderError::IndexOutOfRange(3));
    }

    #[test]
    fn explicit_relation_laws() {
        let t = true;
        let f = false;
        let not_trans = vec![vec![t, t, f], vec![f, t, t], vec![f, f, t]];
        assert_eq!(
            FinPoset::from_relation(labels(&["a", "b", "c"]), &not_trans).unwrap_err(),
            OrderError::NotTransitive(0, 1, 2)
        );
        let not_refl = vec![vec![f]];
        assert_eq!(
            FinPoset::from_relation(labels(&["a"]), &not_refl).unwrap_err(),
            OrderError::NotReflexive(0)
        );
    }

    #[test]
    fn maxima_and_extension() {
        // 0 < a, b < 1
        let p = FinPoset::from_generating(
            labels(&["0", "a", "b", "1"]),
            &[(0, 1), (0, 2), (1, 3), (2, 3)],
        )
        .unwrap();
        assert_eq!(
            p.maxima(ElemSet::from_indices([0, 1, 2])),
            ElemSet::from_indices([1, 2])
        );
        let ext = p.linear_extension();
        assert_eq!(ext[0], 0);
        assert_eq!(ext[3], 3);
    }
}
