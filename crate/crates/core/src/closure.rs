//! Closure operators on pair relations and generation of pre-d-frames.
//!
//! On finite carriers a nonempty directed set contains its own supremum, so
//! one step of directed-supremum closure `D` returns its input unchanged.
//! `D` is still computed through [`d_one_step`] (and, for small inputs,
//! literally through [`d_one_step_literal`]) so the tower keeps the shape of
//! the general construction.

use thiserror::Error;

use crate::bits::ElemSet;
use crate::capacity::{Capacity, CapacityError, Guard};
use crate::dframe::{
    enumerate_dframe_homs, info_sup, is_dframe_hom, is_directed, DFrame, DFrameHom, Pair,
    PairRelation, PairSpace,
};
use crate::lattice::{FinFrame, FrameHom};
use crate::presentation::{
    check_presentation_map, enumerate_c_ideals, extend_universal, FramePresentation, IdealFrame,
    PresentationError, UniversalError,
};

/// `↓R` in the information order.
pub fn down_close(s: PairSpace<'_>, r: &PairRelation) -> PairRelation {
    let mut out = s.empty();
    for a in r.iter() {
        for p in s.plus.below(a.plus) {
            for q in s.minus.below(a.minus) {
                out.insert(Pair::new(p, q));
            }
        }
    }
    out
}

/// `↑R` in the information order.
pub fn up_close(s: PairSpace<'_>, r: &PairRelation) -> PairRelation {
    let mut out = s.empty();
    for a in r.iter() {
        for p in s.plus.above(a.plus) {
            for q in s.minus.above(a.minus) {
                out.insert(Pair::new(p, q));
            }
        }
    }
    out
}

/// Which binary logical operations a closure uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LogicOps {
    Meet,
    Join,
    Both,
}

/// Least superset of `r` closed under the chosen binary logical operations.
/// Only binary operations are applied: the empty relation stays empty.
pub fn wedge_vee_close(s: PairSpace<'_>, r: &PairRelation, ops: LogicOps) -> PairRelation {
    let mut out = r.clone();
    let mut frontier: Vec<Pair> = r.to_vec();
    while let Some(a) = frontier.pop() {
        let members = out.to_vec();
        for b in members {
            let mut new = Vec::with_capacity(2);
            if ops != LogicOps::Join {
                new.push(s.meet(a, b));
            }
            if ops != LogicOps::Meet {
                new.push(s.join(a, b));
            }
            for c in new {
                if out.insert(c) {
                    frontier.push(c);
                }
            }
        }
    }
    out
}

/// Which infinitary logical operation a family closure uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BigOp {
    /// `(⋁ᵢ αⁱ₊, ⋀ᵢ αⁱ₋)`.
    Joins,
    /// `(⋀ᵢ αⁱ₊, ⋁ᵢ αⁱ₋)`.
    Meets,
}

/// `{ ⋁ᵢ αⁱ : {αⁱ} ⊆ R nonempty }` (or the meet version), computed by
/// folding each member into the set of values reached so far.
pub fn big_close(s: PairSpace<'_>, r: &PairRelation, op: BigOp) -> PairRelation {
    let mut reach = s.empty();
    for a in r.iter() {
        let so_far = reach.to_vec();
        reach.insert(a);
        for b in so_far {
            reach.insert(match op {
                BigOp::Joins => s.join(a, b),
                BigOp::Meets => s.meet(a, b),
            });
        }
    }
    reach
}

/// The same family closure, by enumerating every nonempty subfamily.
pub fn big_close_literal(
    s: PairSpace<'_>,
    r: &PairRelation,
    op: BigOp,
    cap: &Capacity,
) -> Result<PairRelation, CapacityError> {
    let members = r.to_vec();
    cap.check(Guard::Family, members.len() as u128)?;
    let mut out = s.empty();
    for mask in 1u64..(1u64 << members.len()) {
        let fam = members
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &a)| a);
        let v = fam
            .reduce(|x, y| match op {
                BigOp::Joins => s.join(x, y),
                BigOp::Meets => s.meet(x, y),
            })
            .expect("family is nonempty");
        out.insert(v);
    }
    Ok(out)
}

/// `D(R) = { ⊔A | A ⊆ R directed }`. A finite directed set contains its
/// supremum, so every member of `D(R)` is already the maximum of some
/// directed subset of `R`: the result is `R` itself.
pub fn d_one_step(r: &PairRelation) -> PairRelation {
    r.clone()
}

/// `D(R)` by enumerating every nonempty subset of `R`, keeping the directed
/// ones and adding their suprema. Exponential in `|R|`.
pub fn d_one_step_literal(
    s: PairSpace<'_>,
    r: &PairRelation,
    cap: &Capacity,
) -> Result<PairRelation, CapacityError> {
    let members = r.to_vec();
    cap.check(Guard::Family, members.len() as u128)?;
    let mut out = s.empty();
    let mut sub = Vec::with_capacity(members.len());
    for mask in 1u64..(1u64 << members.len()) {
        sub.clear();
        sub.extend(
            members
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &a)| a),
        );
        if is_directed(s, &sub) {
            out.insert(info_sup(s, &sub));
        }
    }
    Ok(out)
}

/// The generator sets `B₊ ⊆ L₊`, `B₋ ⊆ L₋`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    pub plus: ElemSet,
    pub minus: ElemSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{side} generators do not generate: element {element} is not the join of the generators below it")]
pub struct NotGenerating {
    pub side: &'static str,
    pub element: usize,
}

fn first_ungenerated(f: &FinFrame, gens: ElemSet) -> Option<usize> {
    f.elements()
        .find(|&x| f.join_all(f.below(x).intersection(gens)) != x)
}

impl GeneratorSet {
    /// Checks that every element is the join of the generators below it.
    pub fn new(s: PairSpace<'_>, plus: ElemSet, minus: ElemSet) -> Result<Self, NotGenerating> {
        if let Some(element) = first_ungenerated(s.plus, plus) {
            return Err(NotGenerating {
                side: "plus",
                element,
            });
        }
        if let Some(element) = first_ungenerated(s.minus, minus) {
            return Err(NotGenerating {
                side: "minus",
                element,
            });
        }
        Ok(GeneratorSet { plus, minus })
    }

    /// Every element generates.
    pub fn full(s: PairSpace<'_>) -> Self {
        GeneratorSet {
            plus: s.plus.all(),
            minus: s.minus.all(),
        }
    }

    /// The join-irreducible elements, the smallest generating sets.
    pub fn irreducible(s: PairSpace<'_>) -> Self {
        GeneratorSet {
            plus: s.plus.join_irreducibles(),
            minus: s.minus.join_irreducibles(),
        }
    }

    /// `B₊ × B₋` as a relation.
    pub fn product(&self, s: PairSpace<'_>) -> PairRelation {
        PairRelation::product(s.plus.len(), s.minus.len(), self.plus, self.minus)
    }

    /// `B±(x) = ↓x ∩ B±`.
    pub fn below_plus(&self, s: PairSpace<'_>, x: usize) -> ElemSet {
        s.plus.below(x).intersection(self.plus)
    }

    pub fn below_minus(&self, s: PairSpace<'_>, y: usize) -> ElemSet {
        s.minus.below(y).intersection(self.minus)
    }
}

/// Iterates over all subsets of `set`, smallest mask first.
fn subsets(set: ElemSet) -> impl Iterator<Item = ElemSet> {
    let full = set.0;
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == full {
            None
        } else {
            Some((cur.wrapping_sub(full)) & full)
        };
        Some(ElemSet(cur))
    })
}

/// `D̄(R) = { (⋁A₊, ⋁A₋) | A± ⊆ B± with A₊ × A₋ ⊆ R }`. Empty `A±` are
/// allowed, with `⋁∅ = 0`. For each `A₊`, the admissible `A₋` are exactly
/// the subsets of the generators related to every member of `A₊`.
pub fn d_bar(
    s: PairSpace<'_>,
    r: &PairRelation,
    gens: &GeneratorSet,
    cap: &Capacity,
) -> Result<PairRelation, CapacityError> {
    cap.check(Guard::Family, gens.plus.len() as u128)?;
    let mut out = s.empty();
    for a_plus in subsets(gens.plus) {
        let common = a_plus
            .iter()
            .fold(s.minus.all(), |acc, a| acc.intersection(r.row(a)));
        let x = s.plus.join_all(a_plus);
        for y in s.minus.subset_joins(common.intersection(gens.minus)) {
            out.insert(Pair::new(x, y));
        }
    }
    Ok(out)
}

/// Least relation containing `R` and `tt, ff`, closed under `↓`, `∧`, `∨`
/// and directed suprema. Fixpoint iteration.
pub fn con_min(s: PairSpace<'_>, r: &PairRelation) -> PairRelation {
    let mut cur = r.clone();
    cur.insert(s.tt());
    cur.insert(s.ff());
    loop {
        let next = d_one_step(&wedge_vee_close(s, &down_close(s, &cur), LogicOps::Both));
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// Least relation containing `R` and `tt, ff`, closed under `↑`, `∧`, `∨`.
pub fn tot_min(s: PairSpace<'_>, r: &PairRelation) -> PairRelation {
    let mut cur = r.clone();
    cur.insert(s.tt());
    cur.insert(s.ff());
    loop {
        let next = wedge_vee_close(s, &up_close(s, &cur), LogicOps::Both);
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// `R ∪ {tt, ff}`.
pub fn with_constants(s: PairSpace<'_>, r: &PairRelation) -> PairRelation {
    let mut out = r.clone();
    out.insert(s.tt());
    out.insert(s.ff());
    out
}

/// The closed form for `CON`: iterate `D` on `↓(R ∪ {tt,ff})_∧∨` until it
/// stops changing. Returns the limit and the number of steps that changed
/// the relation.
pub fn con_by_iteration(
    s: PairSpace<'_>,
    r: &PairRelation,
    cap: &Capacity,
) -> Result<(PairRelation, usize), CapacityError> {
    let mut cur = down_close(
        s,
        &wedge_vee_close(s, &with_constants(s, r), LogicOps::Both),
    );
    let mut steps = 0;
    loop {
        let next = if cur.len() <= cap.max_family.min(16) {
            d_one_step_literal(s, &cur, cap)?
        } else {
            d_one_step(&cur)
        };
        if next == cur {
            return Ok((cur, steps));
        }
        cur = next;
        steps += 1;
    }
}

/// The closed form for `TOT`: `↑(R ∪ {tt,ff})_∧∨`.
pub fn tot_closed_form(s: PairSpace<'_>, r: &PairRelation) -> PairRelation {
    up_close(
        s,
        &wedge_vee_close(s, &with_constants(s, r), LogicOps::Both),
    )
}

/// A presentation of a pre-d-frame: two frame presentations and generating
/// relations on `B₊ × B₋`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreDFramePresentation {
    pub plus: FramePresentation,
    pub minus: FramePresentation,
    pub con1: PairRelation,
    pub tot1: PairRelation,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PreDFrameError {
    #[error("{which} is sized {got:?}, generators are {expected:?}")]
    Dims {
        which: &'static str,
        expected: (usize, usize),
        got: (usize, usize),
    },
    #[error("{side} component: {source}")]
    Component {
        side: &'static str,
        source: PresentationError,
    },
}

impl PreDFramePresentation {
    pub fn new(
        plus: FramePresentation,
        minus: FramePresentation,
        con1: PairRelation,
        tot1: PairRelation,
    ) -> Result<Self, PreDFrameError> {
        let expected = (plus.base().len(), minus.base().len());
        for (which, r) in [("con1", &con1), ("tot1", &tot1)] {
            if r.dims() != expected {
                return Err(PreDFrameError::Dims {
                    which,
                    expected,
                    got: r.dims(),
                });
            }
        }
        Ok(PreDFramePresentation {
            plus,
            minus,
            con1,
            tot1,
        })
    }
}

/// The pre-d-frame `(CIdl₊, CIdl₋; CON(⟦con₁⟧), TOT(⟦tot₁⟧))` together with
/// the data it was generated from.
#[derive(Clone, Debug)]
pub struct Generated {
    pub plus: IdealFrame,
    pub minus: IdealFrame,
    /// `⟦con₁⟧` and `⟦tot₁⟧` inside `L₊ × L₋`.
    pub con1: PairRelation,
    pub tot1: PairRelation,
    pub dframe: DFrame,
}

impl Generated {
    pub fn space(&self) -> PairSpace<'_> {
        self.dframe.space()
    }

    /// `⟦B±⟧`.
    pub fn generators(&self) -> GeneratorSet {
        GeneratorSet {
            plus: self.plus.generators(),
            minus: self.minus.generators(),
        }
    }
}

fn embed(r: &PairRelation, plus: &IdealFrame, minus: &IdealFrame) -> PairRelation {
    let mut out = PairRelation::empty(plus.frame().len(), minus.frame().len());
    for a in r.iter() {
        out.insert(Pair::new(plus.sem(a.plus), minus.sem(a.minus)));
    }
    out
}

pub fn generate_pre_dframe(
    p: &PreDFramePresentation,
    cap: &Capacity,
) -> Result<Generated, PreDFrameError> {
    let plus = enumerate_c_ideals(&p.plus, cap).map_err(|source| PreDFrameError::Component {
        side: "plus",
        source,
    })?;
    let minus = enumerate_c_ideals(&p.minus, cap).map_err(|source| PreDFrameError::Component {
        side: "minus",
        source,
    })?;
    Ok(generate_from_ideals(p, plus, minus))
}

/// Builds the pre-d-frame on already enumerated C-ideal frames of `p`'s two
/// presentations.
pub fn generate_from_ideals(
    p: &PreDFramePresentation,
    plus: IdealFrame,
    minus: IdealFrame,
) -> Generated {
    let con1 = embed(&p.con1, &plus, &minus);
    let tot1 = embed(&p.tot1, &plus, &minus);
    let s = PairSpace::new(plus.frame(), minus.frame());
    let con = con_min(s, &con1);
    let tot = tot_min(s, &tot1);
    let dframe = DFrame::new(plus.frame().clone(), minus.frame().clone(), con, tot)
        .expect("sized by the frames");
    Generated {
        plus,
        minus,
        con1,
        tot1,
        dframe,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DUniversalError {
    #[error("{side} map: {source}")]
    Presentation {
        side: &'static str,
        source: UniversalError,
    },
    #[error(
        "generator pair ({plus},{minus}) of {relation} is not sent into {relation} of the target"
    )]
    Relation {
        relation: &'static str,
        plus: usize,
        minus: usize,
    },
    #[error("extension is not a d-frame homomorphism: {0}")]
    NotDHom(String),
    #[error("{0} d-frame homomorphisms factor the map, expected exactly one")]
    NotUnique(usize),
    #[error(transparent)]
    Capacity(#[from] CapacityError),
}

/// Extends a presentation-preserving pair `f± : B± → M±` to the unique
/// d-frame homomorphism `f̄` with `f = f̄ ∘ ⟦-⟧`, checking every
/// precondition and the uniqueness of `f̄` among all d-frame homomorphisms.
pub fn verify_dfrm_universal(
    p: &PreDFramePresentation,
    g: &Generated,
    target: &DFrame,
    f_plus: &[usize],
    f_minus: &[usize],
    cap: &Capacity,
) -> Result<DFrameHom, DUniversalError> {
    check_presentation_map(&p.plus, f_plus, &target.plus).map_err(|source| {
        DUniversalError::Presentation {
            side: "plus",
            source,
        }
    })?;
    check_presentation_map(&p.minus, f_minus, &target.minus).map_err(|source| {
        DUniversalError::Presentation {
            side: "minus",
            source,
        }
    })?;
    for (relation, gen, rel) in [("con", &p.con1, &target.con), ("tot", &p.tot1, &target.tot)] {
        if let Some(a) = gen
            .iter()
            .find(|a| !rel.contains(Pair::new(f_plus[a.plus], f_minus[a.minus])))
        {
            return Err(DUniversalError::Relation {
                relation,
                plus: a.plus,
                minus: a.minus,
            });
        }
    }
    let ext_plus = extend_universal(&p.plus, &g.plus, f_plus, &target.plus).map_err(|source| {
        DUniversalError::Presentation {
            side: "plus",
            source,
        }
    })?;
    let ext_minus =
        extend_universal(&p.minus, &g.minus, f_minus, &target.minus).map_err(|source| {
            DUniversalError::Presentation {
                side: "minus",
                source,
            }
        })?;
    let h = DFrameHom {
        plus: ext_plus,
        minus: ext_minus,
    };
    match is_dframe_hom(&h, &g.dframe, target) {
        Ok(None) => {}
        Ok(Some(w)) => {
            return Err(DUniversalError::NotDHom(format!(
                "{:?} ↦ {:?} leaves {}",
                w.pair, w.image, w.relation
            )))
        }
        Err(e) => return Err(DUniversalError::NotDHom(e.to_string())),
    }
    let factoring = factoring_homs(g, target, f_plus, f_minus, cap)?;
    if factoring.len() != 1 || factoring[0] != h {
        return Err(DUniversalError::NotUnique(factoring.len()));
    }
    Ok(h)
}

/// All d-frame homomorphisms `g` out of the generated d-frame with
/// `g ∘ ⟦-⟧ = f` on both sides.
pub fn factoring_homs(
    g: &Generated,
    target: &DFrame,
    f_plus: &[usize],
    f_minus: &[usize],
    cap: &Capacity,
) -> Result<Vec<DFrameHom>, CapacityError> {
    let factors = |h: &FrameHom, ideals: &IdealFrame, f: &[usize]| {
        (0..f.len()).all(|b| h.apply(ideals.sem(b)) == f[b])
    };
    Ok(enumerate_dframe_homs(&g.dframe, target, cap)?
        .into_iter()
        .filter(|h| factors(&h.plus, &g.plus, f_plus) && factors(&h.minus, &g.minus, f_minus))
        .collect())
}

/// `(⋁ᵢ bⁱ₊, ⋁ᵢ bⁱ₋) ∈ con`, computed directly and through the criterion
/// "every `(bⁱ₊, bⁱ'₋)` is in `con`".
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitJoin {
    pub direct: bool,
    pub pairwise: bool,
}

impl SplitJoin {
    pub fn agrees(&self) -> bool {
        self.direct == self.pairwise
    }
}

pub fn split_join_membership(d: &DFrame, family_plus: ElemSet, family_minus: ElemSet) -> SplitJoin {
    let joined = Pair::new(d.plus.join_all(family_plus), d.minus.join_all(family_minus));
    let pairwise = family_plus
        .iter()
        .all(|a| family_minus.iter().all(|b| d.con.contains(Pair::new(a, b))));
    SplitJoin {
        direct: d.con.contains(joined),
        pairwise,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dframe::fixtures::{sier, two_d};
    use crate::dframe::{check_axioms, Axiom};
    use crate::presentation::{self_presentation, MeetSemilattice};

    fn chain3() -> FinFrame {
        FinFrame::chain(&["0", "m", "1"])
    }

    fn two() -> FinFrame {
        FinFrame::chain(&["0", "1"])
    }

    const Z: usize = 0;
    const M: usize = 1;
    const O: usize = 2;

    #[test]
    fn down_and_up_examples() {
        let t = two();
        let s = PairSpace::new(&t, &t);
        let d = down_close(s, &s.relation([s.tt()]));
        assert_eq!(d.to_vec(), vec![Pair::new(0, 0), Pair::new(1, 0)]);
        let u = up_close(s, &s.relation([s.ff()]));
        assert_eq!(u.to_vec(), vec![Pair::new(0, 1), Pair::new(1, 1)]);
        let si = sier();
        assert_eq!(down_close(si.space(), &si.con), si.con);
    }

    #[test]
    fn wedge_vee_examples() {
        let t = two();
        let s2 = PairSpace::new(&t, &t);
        let r = s2.relation([s2.tt(), s2.ff()]);
        assert_eq!(wedge_vee_close(s2, &r, LogicOps::Both), r);

        let c = chain3();
        let s = PairSpace::new(&c, &c);
        let r = s.relation([Pair::new(M, Z), Pair::new(Z, M)]);
        assert_eq!(wedge_vee_close(s, &r, LogicOps::Join), r);
        let r = s.relation([Pair::new(M, M), Pair::new(O, Z)]);
        assert_eq!(wedge_vee_close(s, &r, LogicOps::Meet), r);
        assert!(wedge_vee_close(s, &s.empty(), LogicOps::Both).is_empty());
    }

    #[test]
    fn big_close_examples() {
        let c = chain3();
        let s = PairSpace::new(&c, &c);
        let cap = Capacity::default();
        let r = s.relation([s.tt()]);
        assert_eq!(big_close(s, &r, BigOp::Joins), r);
        let r = s.relation([Pair::new(M, M), Pair::new(Z, O)]);
        let j = big_close(s, &r, BigOp::Joins);
        assert_eq!(j, r);
        assert_eq!(j, big_close_literal(s, &r, BigOp::Joins, &cap).unwrap());
    }

    #[test]
    fn big_close_matches_literal_on_all_small_relations() {
        let c = chain3();
        let s = PairSpace::new(&c, &c);
        let cap = Capacity::default();
        let all: Vec<Pair> = s.pairs().collect();
        for mask in 0u32..(1 << all.len()) {
            let r = s.relation(
                (0..all.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| all[i]),
            );
            for op in [BigOp::Joins, BigOp::Meets] {
                assert_eq!(
                    big_close(s, &r, op),
                    big_close_literal(s, &r, op, &cap).unwrap()
                );
            }
            // Meet-then-joins absorbs binary joins by distributivity.
            let wedge = wedge_vee_close(s, &r, LogicOps::Meet);
            let both = wedge_vee_close(s, &r, LogicOps::Both);
            assert_eq!(
                big_close(s, &wedge, BigOp::Joins),
                big_close(s, &both, BigOp::Joins)
            );
        }
    }

    #[test]
    fn d_examples() {
        let c = chain3();
        let s = PairSpace::new(&c, &c);
        let cap = Capacity::default();
        let r = s.relation([Pair::new(M, Z), Pair::new(Z, M)]);
        assert_eq!(d_one_step_literal(s, &r, &cap).unwrap(), r);
        assert!(d_one_step_literal(s, &s.empty(), &cap).unwrap().is_empty());
        let si = sier();
        assert_eq!(
            d_one_step_literal(si.space(), &si.con, &cap).unwrap(),
            si.con
        );
    }

    #[test]
    fn d_bar_examples() {
        let si = sier();
        let s = si.space();
        let cap = Capacity::default();
        assert_eq!(
            d_bar(s, &si.con, &GeneratorSet::full(s), &cap).unwrap(),
            si.con
        );

        let r = s.relation([Pair::new(M, M)]);
        let gens = GeneratorSet {
            plus: ElemSet::singleton(M),
            minus: ElemSet::singleton(M),
        };
        let db = d_bar(s, &r, &gens, &cap).unwrap();
        for p in [
            Pair::new(Z, Z),
            Pair::new(M, Z),
            Pair::new(Z, M),
            Pair::new(M, M),
        ] {
            assert!(db.contains(p), "{p:?}");
        }
    }

    /// Literal `D̄`: every pair of generator subsets, checked for independence.
    fn d_bar_literal(s: PairSpace<'_>, r: &PairRelation, gens: &GeneratorSet) -> PairRelation {
        let mut out = s.empty();
        for a in subsets(gens.plus) {
            for b in subsets(gens.minus) {
                if a.iter()
                    .all(|x| b.iter().all(|y| r.contains(Pair::new(x, y))))
                {
                    out.insert(Pair::new(s.plus.join_all(a), s.minus.join_all(b)));
                }
            }
        }
        out
    }

    #[test]
    fn d_bar_matches_literal() {
        let c = chain3();
        let t = two();
        let s = PairSpace::new(&c, &t);
        let cap = Capacity::default();
        let all: Vec<Pair> = s.pairs().collect();
        for gens in [GeneratorSet::full(s), GeneratorSet::irreducible(s)] {
            for mask in 0u32..(1 << all.len()) {
                let r = s.relation(
                    (0..all.len())
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| all[i]),
                );
                assert_eq!(
                    d_bar(s, &r, &gens, &cap).unwrap(),
                    d_bar_literal(s, &r, &gens)
                );
            }
        }
    }

    #[test]
    fn generator_sets_are_checked() {
        let c = chain3();
        let s = PairSpace::new(&c, &c);
        assert!(GeneratorSet::new(
            s,
            ElemSet::from_indices([M, O]),
            ElemSet::from_indices([M, O])
        )
        .is_ok());
        let e = GeneratorSet::new(s, ElemSet::singleton(M), c.all()).unwrap_err();
        assert_eq!(
            e,
            NotGenerating {
                side: "plus",
                element: O
            }
        );
        assert_eq!(
            GeneratorSet::irreducible(s).plus,
            ElemSet::from_indices([M, O])
        );
    }

    #[test]
    fn con_min_and_tot_min_examples() {
        let c = chain3();
        let s = PairSpace::new(&c, &c);
        let con = con_min(s, &s.empty());
        let axes: Vec<Pair> = s.pairs().filter(|p| p.plus == Z || p.minus == Z).collect();
        assert_eq!(con.to_vec(), axes);
        let tot = tot_min(s, &s.empty());
        let tops: Vec<Pair> = s.pairs().filter(|p| p.plus == O || p.minus == O).collect();
        assert_eq!(tot.to_vec(), tops);
        let si = sier();
        assert_eq!(con_min(si.space(), &si.con), si.con);
        assert_eq!(tot_min(si.space(), &si.tot), si.tot);
    }

    #[test]
    fn closed_forms_agree_with_fixpoints() {
        let c = chain3();
        let t = two();
        let s = PairSpace::new(&c, &t);
        let cap = Capacity::default();
        let all: Vec<Pair> = s.pairs().collect();
        for mask in 0u32..(1 << all.len()) {
            let r = s.relation(
                (0..all.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| all[i]),
            );
            let (con, steps) = con_by_iteration(s, &r, &cap).unwrap();
            assert_eq!(con, con_min(s, &r));
            assert!(steps <= 1);
            assert_eq!(tot_closed_form(s, &r), tot_min(s, &r));
        }
    }

    /// Closure properties of `↓`, `↑` and `D` on closed relations, and the
    /// equality of `D` and `D̄` on relations that also contain `tt` and `ff`.
    #[test]
    fn closure_properties_exhaustive() {
        let c = chain3();
        let t = two();
        let s = PairSpace::new(&t, &c);
        let cap = Capacity::default();
        let gens = GeneratorSet::irreducible(s);
        let all: Vec<Pair> = s.pairs().collect();
        for mask in 0u32..(1 << all.len()) {
            let r = s.relation(
                (0..all.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| all[i]),
            );
            let r = wedge_vee_close(s, &r, LogicOps::Both);
            for closed in [down_close(s, &r), up_close(s, &r)] {
                assert_eq!(wedge_vee_close(s, &closed, LogicOps::Both), closed);
            }
            let d = d_one_step_literal(s, &r, &cap).unwrap();
            assert_eq!(wedge_vee_close(s, &d, LogicOps::Both), d);
            let down = down_close(s, &with_constants(s, &r));
            let down = wedge_vee_close(s, &down, LogicOps::Both);
            assert_eq!(down_close(s, &d_one_step(&down)), d_one_step(&down));
            assert_eq!(
                d_bar(s, &down, &gens, &cap).unwrap(),
                d_one_step_literal(s, &down, &cap).unwrap()
            );
        }
    }

    fn trivial_semilattice() -> MeetSemilattice {
        MeetSemilattice::from_generating(vec!["1".into()], &[]).unwrap()
    }

    #[test]
    fn generated_examples() {
        let cap = Capacity::default();
        let one = FramePresentation::new(trivial_semilattice(), []).unwrap();
        let p = PreDFramePresentation::new(
            one.clone(),
            one,
            PairRelation::empty(1, 1),
            PairRelation::empty(1, 1),
        )
        .unwrap();
        let g = generate_pre_dframe(&p, &cap).unwrap();
        assert_eq!((g.dframe.plus.len(), g.dframe.minus.len()), (2, 2));
        let r = check_axioms(&g.dframe);
        assert!(r.is_dframe(), "{r:?}");

        // SIER presented by itself reproduces SIER.
        let si = sier();
        let sp = self_presentation(&si.plus);
        let p = PreDFramePresentation::new(sp.clone(), sp, si.con.clone(), si.tot.clone()).unwrap();
        let g = generate_pre_dframe(&p, &cap).unwrap();
        assert_eq!(g.plus.sem_map(), &[0, 1, 2]);
        assert_eq!(g.dframe.con, si.con);
        assert_eq!(g.dframe.tot, si.tot);

        // con₁ = {(top, top)}, tot₁ = ∅ over free two-generator semilattices.
        let two_gens = FramePresentation::new(
            MeetSemilattice::from_generating(
                vec!["gh".into(), "g".into(), "h".into(), "1".into()],
                &[(0, 1), (0, 2), (1, 3), (2, 3)],
            )
            .unwrap(),
            [],
        )
        .unwrap();
        let mut con1 = PairRelation::empty(4, 4);
        con1.insert(Pair::new(3, 3));
        let p =
            PreDFramePresentation::new(two_gens.clone(), two_gens, con1, PairRelation::empty(4, 4))
                .unwrap();
        let g = generate_pre_dframe(&p, &cap).unwrap();
        let r = check_axioms(&g.dframe);
        assert!(r.is_pre_dframe(), "{r:?}");
        // (1,1) ∈ con next to tt ∈ tot breaks con-tot.
        assert!(!r.holds(Axiom::ConTot));
    }

    #[test]
    fn universal_examples() {
        let cap = Capacity::default();
        let si = sier();
        let sp = self_presentation(&si.plus);
        let p = PreDFramePresentation::new(sp.clone(), sp, si.con.clone(), si.tot.clone()).unwrap();
        let g = generate_pre_dframe(&p, &cap).unwrap();
        let h = verify_dfrm_universal(&p, &g, &g.dframe, g.plus.sem_map(), g.minus.sem_map(), &cap)
            .unwrap();
        assert_eq!(h, DFrameHom::identity(&g.dframe));

        // Into TWO_D: m ↦ 1 on plus and m ↦ 0 on minus keeps con₁ inside con.
        let td = two_d();
        let h = verify_dfrm_universal(&p, &g, &td, &[0, 1, 1], &[0, 0, 1], &cap).unwrap();
        assert_eq!(h.plus.map(), &[0, 1, 1]);
        // m ↦ 1 on both sides sends (m,m) ∈ con₁ to (1,1) ∉ con.
        let e = verify_dfrm_universal(&p, &g, &td, &[0, 1, 1], &[0, 1, 1], &cap).unwrap_err();
        assert_eq!(
            e,
            DUniversalError::Relation {
                relation: "con",
                plus: 1,
                minus: 1
            }
        );
        // Not order preserving, so it breaks a cover or a meet first.
        let e = verify_dfrm_universal(&p, &g, &td, &[1, 0, 1], &[0, 0, 1], &cap).unwrap_err();
        assert!(matches!(
            e,
            DUniversalError::Presentation { side: "plus", .. }
        ));
    }

    #[test]
    fn split_join_examples() {
        let si = sier();
        let m = ElemSet::singleton(M);
        let o = ElemSet::singleton(O);
        assert_eq!(
            split_join_membership(&si, m, m),
            SplitJoin {
                direct: true,
                pairwise: true
            }
        );
        assert_eq!(
            split_join_membership(&si, o, m),
            SplitJoin {
                direct: false,
                pairwise: false
            }
        );
        assert_eq!(
            split_join_membership(&si, ElemSet::EMPTY, ElemSet::EMPTY),
            SplitJoin {
                direct: true,
                pairwise: true
            }
        );
        for a in 0u64..8 {
            for b in 0u64..8 {
                assert!(split_join_membership(&si, ElemSet(a), ElemSet(b)).agrees());
            }
        }
    }
}
