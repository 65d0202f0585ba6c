//! d-frames: two frames with a consistency and a totality relation.

mod bispace;
mod hom;
mod pairs;

use std::fmt;

use thiserror::Error;

use crate::lattice::FinFrame;

pub use bispace::{omega_d, BispaceError, FinBispace};
pub use hom::{enumerate_dframe_homs, is_dframe_hom, DFrameHom, DHomError, DHomWitness};
pub use pairs::{CarrierMismatch, Pair, PairOp, PairRelation, PairSpace};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DFrameError {
    #[error("{which} relation is sized {got:?}, carriers are {expected:?}")]
    Dims {
        which: &'static str,
        expected: (usize, usize),
        got: (usize, usize),
    },
}

/// `(L₊, L₋; con, tot)`. Construction only checks shapes; the axioms are
/// decided by [`check_axioms`].
#[derive(Clone, PartialEq, Eq)]
pub struct DFrame {
    pub plus: FinFrame,
    pub minus: FinFrame,
    pub con: PairRelation,
    pub tot: PairRelation,
}

impl fmt::Debug for DFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DFrame")
            .field("plus", &self.plus)
            .field("minus", &self.minus)
            .field("con", &self.con)
            .field("tot", &self.tot)
            .finish()
    }
}

impl DFrame {
    pub fn new(
        plus: FinFrame,
        minus: FinFrame,
        con: PairRelation,
        tot: PairRelation,
    ) -> Result<Self, DFrameError> {
        let expected = (plus.len(), minus.len());
        for (which, r) in [("con", &con), ("tot", &tot)] {
            if r.dims() != expected {
                return Err(DFrameError::Dims {
                    which,
                    expected,
                    got: r.dims(),
                });
            }
        }
        Ok(DFrame {
            plus,
            minus,
            con,
            tot,
        })
    }

    pub fn space(&self) -> PairSpace<'_> {
        PairSpace::new(&self.plus, &self.minus)
    }

    pub fn is_trivial(&self) -> bool {
        self.plus.is_trivial() && self.minus.is_trivial()
    }
}

/// The seven axioms, in checking order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    ConDown,
    TotUp,
    TtFf,
    ConMeetJoin,
    TotMeetJoin,
    ConDirected,
    ConTot,
}

impl Axiom {
    pub const ALL: [Axiom; 7] = [
        Axiom::ConDown,
        Axiom::TotUp,
        Axiom::TtFf,
        Axiom::ConMeetJoin,
        Axiom::TotMeetJoin,
        Axiom::ConDirected,
        Axiom::ConTot,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::ConDown => "con-down",
            Axiom::TotUp => "tot-up",
            Axiom::TtFf => "con,tot-tt,ff",
            Axiom::ConMeetJoin => "con-meet,join",
            Axiom::TotMeetJoin => "tot-meet,join",
            Axiom::ConDirected => "con-directed",
            Axiom::ConTot => "con-tot",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A counterexample to one axiom. The pairs are, per axiom:
///
/// * `con-down`: `[α, β]` with `α ∈ con`, `β ⊑ α`, `β ∉ con`; dually for `tot-up`.
/// * `con,tot-tt,ff`: `[γ]`, the missing constant (`which` names the relation).
/// * `*-meet,join`: `[α, β, γ]` with `γ = α ∧ β` or `α ∨ β` missing.
/// * `con-directed`: the directed subset followed by its missing supremum.
/// * `con-tot`: `[α, β]` with `α ∈ con`, `β ∈ tot`, a shared coordinate and `α ⋢ β`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomWitness {
    pub which: &'static str,
    pub pairs: Vec<Pair>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomResult {
    pub axiom: Axiom,
    pub witness: Option<AxiomWitness>,
}

impl AxiomResult {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub results: Vec<AxiomResult>,
}

impl AxiomReport {
    pub fn get(&self, a: Axiom) -> &AxiomResult {
        self.results
            .iter()
            .find(|r| r.axiom == a)
            .expect("all axioms are reported")
    }

    pub fn holds(&self, a: Axiom) -> bool {
        self.get(a).holds()
    }

    pub fn is_dframe(&self) -> bool {
        self.results.iter().all(AxiomResult::holds)
    }

    /// Every axiom except `con-tot` holds.
    pub fn is_pre_dframe(&self) -> bool {
        self.results
            .iter()
            .filter(|r| r.axiom != Axiom::ConTot)
            .all(AxiomResult::holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomResult> {
        self.results.iter().filter(|r| !r.holds())
    }
}

fn witness(which: &'static str, pairs: Vec<Pair>) -> Option<AxiomWitness> {
    Some(AxiomWitness { which, pairs })
}

/// First `(α, β)` with `α ∈ r`, `β` related to `α` by `rel`, `β ∉ r`.
fn closed_under_order(
    s: PairSpace<'_>,
    r: &PairRelation,
    which: &'static str,
    rel: impl Fn(Pair, Pair) -> bool,
) -> Option<AxiomWitness> {
    for a in r.iter() {
        for b in s.pairs() {
            if rel(b, a) && !r.contains(b) {
                return witness(which, vec![a, b]);
            }
        }
    }
    None
}

fn closed_under_meet_join(
    s: PairSpace<'_>,
    r: &PairRelation,
    which: &'static str,
) -> Option<AxiomWitness> {
    for a in r.iter() {
        for b in r.iter() {
            for c in [s.meet(a, b), s.join(a, b)] {
                if !r.contains(c) {
                    return witness(which, vec![a, b, c]);
                }
            }
        }
    }
    None
}

/// Subsets of `members` small enough to enumerate: all of them when there
/// are at most 12 members, otherwise those of size at most 3.
fn small_subsets(members: &[Pair]) -> Vec<Vec<Pair>> {
    let n = members.len();
    let mut out = Vec::new();
    if n <= 12 {
        for mask in 1u32..(1 << n) {
            out.push(
                (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| members[i])
                    .collect(),
            );
        }
    } else {
        for i in 0..n {
            out.push(vec![members[i]]);
            for j in i + 1..n {
                out.push(vec![members[i], members[j]]);
                for k in j + 1..n {
                    out.push(vec![members[i], members[j], members[k]]);
                }
            }
        }
    }
    out
}

/// Whether a nonempty set of pairs is directed in the information order.
pub fn is_directed(s: PairSpace<'_>, set: &[Pair]) -> bool {
    !set.is_empty()
        && set.iter().all(|&a| {
            set.iter()
                .all(|&b| set.iter().any(|&c| s.info_leq(a, c) && s.info_leq(b, c)))
        })
}

pub fn info_sup(s: PairSpace<'_>, set: &[Pair]) -> Pair {
    set.iter().fold(s.bot(), |acc, &a| s.info_join(acc, a))
}

fn closed_under_directed(s: PairSpace<'_>, con: &PairRelation) -> Option<AxiomWitness> {
    let members = con.to_vec();
    for sub in small_subsets(&members) {
        if !is_directed(s, &sub) {
            continue;
        }
        let sup = info_sup(s, &sub);
        // A finite directed set contains its supremum.
        debug_assert!(sub.contains(&sup));
        if !con.contains(sup) {
            let mut pairs = sub;
            pairs.push(sup);
            return witness("con", pairs);
        }
    }
    None
}

/// First `(α, β)` breaking `con-tot`: pairs sharing the plus coordinate are
/// scanned first, then pairs sharing the minus coordinate.
pub fn con_tot_witness(
    s: PairSpace<'_>,
    con: &PairRelation,
    tot: &PairRelation,
) -> Option<(Pair, Pair)> {
    for a in con.iter() {
        for b in tot.iter().filter(|b| b.plus == a.plus) {
            if !s.info_leq(a, b) {
                return Some((a, b));
            }
        }
    }
    for a in con.iter() {
        for b in tot.iter().filter(|b| b.minus == a.minus) {
            if !s.info_leq(a, b) {
                return Some((a, b));
            }
        }
    }
    None
}

/// Decides each of the seven axioms, with the first counterexample in
/// plus-major index order.
pub fn check_axioms(d: &DFrame) -> AxiomReport {
    let s = d.space();
    let tt_ff = [("con", &d.con), ("tot", &d.tot)]
        .into_iter()
        .flat_map(|(w, r)| [(w, r, s.tt()), (w, r, s.ff())])
        .find(|(_, r, c)| !r.contains(*c))
        .and_then(|(w, _, c)| witness(w, vec![c]));
    let results = vec![
        AxiomResult {
            axiom: Axiom::ConDown,
            witness: closed_under_order(s, &d.con, "con", |b, a| s.info_leq(b, a)),
        },
        AxiomResult {
            axiom: Axiom::TotUp,
            witness: closed_under_order(s, &d.tot, "tot", |b, a| s.info_leq(a, b)),
        },
        AxiomResult {
            axiom: Axiom::TtFf,
            witness: tt_ff,
        },
        AxiomResult {
            axiom: Axiom::ConMeetJoin,
            witness: closed_under_meet_join(s, &d.con, "con"),
        },
        AxiomResult {
            axiom: Axiom::TotMeetJoin,
            witness: closed_under_meet_join(s, &d.tot, "tot"),
        },
        AxiomResult {
            axiom: Axiom::ConDirected,
            witness: closed_under_directed(s, &d.con),
        },
        AxiomResult {
            axiom: Axiom::ConTot,
            witness: con_tot_witness(s, &d.con, &d.tot)
                .and_then(|(a, b)| witness("con,tot", vec![a, b])),
        },
    ];
    AxiomReport { results }
}

/// Standard small d-frames used throughout tests and examples.
pub mod fixtures {
    use super::*;

    /// `Ω^d` of the one-point bispace: both frames are `{0 < 1}`.
    pub fn two_d() -> DFrame {
        let two = FinFrame::chain(&["0", "1"]);
        let s = PairSpace::new(&two, &two);
        let con = s.relation([Pair::new(0, 0), Pair::new(0, 1), Pair::new(1, 0)]);
        let tot = s.relation([Pair::new(1, 1), Pair::new(1, 0), Pair::new(0, 1)]);
        DFrame::new(two.clone(), two, con, tot).unwrap()
    }

    /// `Ω^d` of the Sierpiński bispace: both frames are `{0 < m < 1}`;
    /// `con` holds the pairs with a `0` coordinate plus `(m,m)`, `tot` the
    /// pairs with a `1` coordinate plus `(m,m)`.
    pub fn sier() -> DFrame {
        let c = FinFrame::chain(&["0", "m", "1"]);
        let s = PairSpace::new(&c, &c);
        let con = s.relation(
            s.pairs()
                .filter(|p| p.plus == 0 || p.minus == 0 || (p.plus == 1 && p.minus == 1)),
        );
        let tot = s.relation(
            s.pairs()
                .filter(|p| p.plus == 2 || p.minus == 2 || (p.plus == 1 && p.minus == 1)),
        );
        DFrame::new(c.clone(), c, con, tot).unwrap()
    }

    /// The d-frame on the one-element frames.
    pub fn trivial() -> DFrame {
        let one = FinFrame::trivial();
        let full = PairRelation::full(1, 1);
        DFrame::new(one.clone(), one, full.clone(), full).unwrap()
    }
}
