use thiserror::Error;

use super::{DFrame, PairRelation};
use crate::bits::ElemSet;
use crate::lattice::FinFrame;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BispaceError {
    #[error("a bispace has at most 6 points, got {0}")]
    TooManyPoints(usize),
    #[error("duplicate point `{0}`")]
    DuplicatePoint(String),
    #[error("{side} opens mention a point outside the space")]
    StrayPoint { side: &'static str },
    #[error("{side} opens are not a topology: {reason}")]
    NotATopology {
        side: &'static str,
        reason: &'static str,
    },
}

/// A finite set with two topologies `τ₊, τ₋`.
///
/// Opens are kept sorted by size, then by bitmask, so that `∅` comes first
/// and the whole space last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinBispace {
    points: Vec<String>,
    plus: Vec<ElemSet>,
    minus: Vec<ElemSet>,
}

/// Carriers are limited by the 64-element frame bound; six points allow up
/// to 64 opens.
const MAX_POINTS: usize = 6;

fn canonical(mut opens: Vec<ElemSet>) -> Vec<ElemSet> {
    opens.sort_by_key(|s| (s.len(), s.0));
    opens.dedup();
    opens
}

fn check_topology(n: usize, opens: &[ElemSet], side: &'static str) -> Result<(), BispaceError> {
    let all = ElemSet::full(n);
    if opens.iter().any(|o| !o.is_subset(all)) {
        return Err(BispaceError::StrayPoint { side });
    }
    if !opens.contains(&ElemSet::EMPTY) {
        return Err(BispaceError::NotATopology {
            side,
            reason: "missing the empty set",
        });
    }
    if !opens.contains(&all) {
        return Err(BispaceError::NotATopology {
            side,
            reason: "missing the whole space",
        });
    }
    for a in opens {
        for b in opens {
            if !opens.contains(&a.union(*b)) {
                return Err(BispaceError::NotATopology {
                    side,
                    reason: "not closed under union",
                });
            }
            if !opens.contains(&a.intersection(*b)) {
                return Err(BispaceError::NotATopology {
                    side,
                    reason: "not closed under intersection",
                });
            }
        }
    }
    Ok(())
}

/// Closes a family of point sets under binary union and intersection and
/// adds `∅` and the whole space.
fn close(n: usize, sub: &[ElemSet]) -> Vec<ElemSet> {
    let mut opens: Vec<ElemSet> = sub.to_vec();
    opens.push(ElemSet::EMPTY);
    opens.push(ElemSet::full(n));
    loop {
        let mut next = opens.clone();
        for a in &opens {
            for b in &opens {
                for c in [a.union(*b), a.intersection(*b)] {
                    if !next.contains(&c) {
                        next.push(c);
                    }
                }
            }
        }
        if next.len() == opens.len() {
            return canonical(opens);
        }
        opens = next;
    }
}

impl FinBispace {
    /// Wraps two families that must already be topologies.
    pub fn new(
        points: Vec<String>,
        plus: Vec<ElemSet>,
        minus: Vec<ElemSet>,
    ) -> Result<Self, BispaceError> {
        Self::check_points(&points)?;
        let n = points.len();
        let plus = canonical(plus);
        let minus = canonical(minus);
        check_topology(n, &plus, "plus")?;
        check_topology(n, &minus, "minus")?;
        Ok(FinBispace {
            points,
            plus,
            minus,
        })
    }

    /// The bispace whose topologies are generated by the given families under
    /// finite unions and intersections.
    pub fn generated(
        points: Vec<String>,
        plus: &[ElemSet],
        minus: &[ElemSet],
    ) -> Result<Self, BispaceError> {
        Self::check_points(&points)?;
        let n = points.len();
        let all = ElemSet::full(n);
        if plus.iter().any(|o| !o.is_subset(all)) {
            return Err(BispaceError::StrayPoint { side: "plus" });
        }
        if minus.iter().any(|o| !o.is_subset(all)) {
            return Err(BispaceError::StrayPoint { side: "minus" });
        }
        Ok(FinBispace {
            plus: close(n, plus),
            minus: close(n, minus),
            points,
        })
    }

    fn check_points(points: &[String]) -> Result<(), BispaceError> {
        if points.len() > MAX_POINTS {
            return Err(BispaceError::TooManyPoints(points.len()));
        }
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(BispaceError::DuplicatePoint(p.clone()));
            }
        }
        Ok(())
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn opens_plus(&self) -> &[ElemSet] {
        &self.plus
    }

    pub fn opens_minus(&self) -> &[ElemSet] {
        &self.minus
    }

    /// Every topology on `n` points, in a fixed order.
    pub fn all_topologies(n: usize) -> Vec<Vec<ElemSet>> {
        assert!(n <= 3, "topology enumeration is meant for at most 3 points");
        let all = ElemSet::full(n);
        let proper: Vec<ElemSet> = (1..all.0).map(ElemSet).collect();
        let mut out = Vec::new();
        for mask in 0u32..(1 << proper.len()) {
            let mut fam: Vec<ElemSet> = vec![ElemSet::EMPTY, all];
            fam.extend(
                (0..proper.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| proper[i]),
            );
            let fam = canonical(fam);
            if check_topology(n, &fam, "plus").is_ok() {
                out.push(fam);
            }
        }
        out
    }

    /// Labels an open by its points, e.g. `{x,y}`.
    pub fn open_label(&self, open: ElemSet) -> String {
        let names: Vec<&str> = open.iter().map(|i| self.points[i].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// `Ω^d(X) = (τ₊, τ₋; con, tot)` with `(U, V) ∈ con` iff `U ∩ V = ∅` and
/// `(U, V) ∈ tot` iff `U ∪ V = X`.
pub fn omega_d(x: &FinBispace) -> DFrame {
    let frame = |opens: &[ElemSet]| {
        let labels = opens.iter().map(|&o| x.open_label(o)).collect();
        FinFrame::from_sets(labels, opens).expect("a finite topology is a frame")
    };
    let plus = frame(&x.plus);
    let minus = frame(&x.minus);
    let all = ElemSet::full(x.points.len());
    let mut con = PairRelation::empty(x.plus.len(), x.minus.len());
    let mut tot = con.clone();
    for (i, u) in x.plus.iter().enumerate() {
        for (j, v) in x.minus.iter().enumerate() {
            if u.intersection(*v).is_empty() {
                con.insert(super::Pair::new(i, j));
            }
            if u.union(*v) == all {
                tot.insert(super::Pair::new(i, j));
            }
        }
    }
    DFrame::new(plus, minus, con, tot).expect("relations are sized by the opens")
}
