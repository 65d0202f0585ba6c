//! Frame presentations by generators and covers, and the frame of C-ideals.
//!
//! A presentation is a finite meet-semilattice `B` of generators together
//! with a set of covers `U ⊣ a` (`U ⊆ ↓a`), each read as the equation
//! `⋁U = a`. The presented frame is the lattice of C-ideals: downsets of `B`
//! that contain `a` whenever they contain all of `U` for a cover `U ⊣ a`.
//!
//! Nullary covers `∅ ⊣ a` are allowed. They force `a` into every C-ideal,
//! so the bottom of the presented frame is `⟨∅⟩`, which need not be empty.

use std::collections::{HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::bits::ElemSet;
use crate::capacity::{Capacity, CapacityError, Guard};
use crate::lattice::{
    enumerate_homs, hom_violation, FinFrame, FinPoset, FrameError, FrameHom, FrameTables,
    HomViolation, OrderError,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("no meet for `{0}` and `{1}`")]
    MissingMeet(String, String),
    #[error("generators have no top element")]
    MissingTop,
    #[error("cover of `{covered}` lists `{stray}`, which is not below it")]
    CoverNotBelow { covered: String, stray: String },
    #[error("cover index out of range: {0}")]
    IndexOutOfRange(usize),
    #[error("presentation is not stable: cover {cover} restricted to `{below}` is missing")]
    NotStable { cover: usize, below: String },
    #[error(transparent)]
    Capacity(#[from] CapacityError),
    #[error("C-ideals do not form a frame: {0}")]
    NotAFrame(FrameError),
}

/// A finite meet-semilattice with top (closed under all finite meets).
#[derive(Clone, PartialEq, Eq)]
pub struct MeetSemilattice {
    poset: FinPoset,
    top: usize,
    meet: Vec<u8>,
}

impl fmt::Debug for MeetSemilattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MeetSemilattice")
            .field("elements", &self.poset.labels())
            .field("hasse", &self.poset.hasse())
            .finish()
    }
}

impl MeetSemilattice {
    pub fn from_poset(poset: FinPoset) -> Result<Self, PresentationError> {
        let n = poset.len();
        let all = poset.all();
        let top = all
            .iter()
            .find(|&t| all.is_subset(poset.down(t)))
            .ok_or(PresentationError::MissingTop)?;
        let mut meet = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                let lower = poset.down(a).intersection(poset.down(b));
                let m = lower
                    .iter()
                    .find(|&g| lower.is_subset(poset.down(g)))
                    .ok_or_else(|| {
                        PresentationError::MissingMeet(poset.label(a).into(), poset.label(b).into())
                    })?;
                meet[a * n + b] = m as u8;
            }
        }
        Ok(MeetSemilattice { poset, top, meet })
    }

    pub fn from_generating(
        labels: Vec<String>,
        pairs: &[(usize, usize)],
    ) -> Result<Self, PresentationError> {
        Self::from_poset(FinPoset::from_generating(labels, pairs)?)
    }

    /// The meet-semilattice reduct of a frame.
    pub fn from_frame(frame: &FinFrame) -> Self {
        Self::from_poset(frame.poset().clone()).expect("a frame has all finite meets")
    }

    pub fn poset(&self) -> &FinPoset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn top(&self) -> usize {
        self.top
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b] as usize
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    pub fn label(&self, i: usize) -> &str {
        self.poset.label(i)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.poset.index_of(label)
    }
}

/// `coverers ⊣ covered`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cover {
    pub covered: usize,
    pub coverers: ElemSet,
}

impl Cover {
    /// `b ∈ U`, so every downset satisfies `U ⊣ b`.
    pub fn is_trivial(&self) -> bool {
        self.coverers.contains(self.covered)
    }

    pub fn new(covered: usize, coverers: impl IntoIterator<Item = usize>) -> Self {
        Cover {
            covered,
            coverers: coverers.into_iter().collect(),
        }
    }
}

/// Generators and covers. Covers are deduplicated and kept in insertion
/// order; `is_stable` records whether the cover set is closed under
/// restriction `{u ∧ b : u ∈ U} ⊣ b` for `b ≤ a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramePresentation {
    base: MeetSemilattice,
    covers: Vec<Cover>,
    stable: bool,
}

fn restrict(base: &MeetSemilattice, c: &Cover, b: usize) -> Cover {
    Cover {
        covered: b,
        coverers: c.coverers.iter().map(|u| base.meet(u, b)).collect(),
    }
}

impl FramePresentation {
    pub fn new(
        base: MeetSemilattice,
        covers: impl IntoIterator<Item = Cover>,
    ) -> Result<Self, PresentationError> {
        let mut seen = HashSet::new();
        let mut list = Vec::new();
        for c in covers {
            if c.covered >= base.len() {
                return Err(PresentationError::IndexOutOfRange(c.covered));
            }
            if let Some(u) = c.coverers.iter().find(|&u| u >= base.len()) {
                return Err(PresentationError::IndexOutOfRange(u));
            }
            let below = base.poset().down(c.covered);
            if let Some(stray) = c.coverers.difference(below).first() {
                return Err(PresentationError::CoverNotBelow {
                    covered: base.label(c.covered).into(),
                    stray: base.label(stray).into(),
                });
            }
            if seen.insert(c) {
                list.push(c);
            }
        }
        let mut p = FramePresentation {
            base,
            covers: list,
            stable: false,
        };
        p.stable = p.stability_violation().is_none();
        Ok(p)
    }

    pub fn base(&self) -> &MeetSemilattice {
        &self.base
    }

    pub fn covers(&self) -> &[Cover] {
        &self.covers
    }

    pub fn is_stable(&self) -> bool {
        self.stable
    }

    /// The first `(cover index, b)` whose restriction to `b` is missing.
    /// Restrictions `U ⊣ b` with `b ∈ U` hold in every downset and count
    /// as present.
    pub fn stability_violation(&self) -> Option<(usize, usize)> {
        let set: HashSet<Cover> = self.covers.iter().copied().collect();
        for (i, c) in self.covers.iter().enumerate() {
            for b in self.base.poset().down(c.covered) {
                let r = restrict(&self.base, c, b);
                if !r.is_trivial() && !set.contains(&r) {
                    return Some((i, b));
                }
            }
        }
        None
    }

    fn require_stable(&self) -> Result<(), PresentationError> {
        match self.stability_violation() {
            None => Ok(()),
            Some((cover, b)) => Err(PresentationError::NotStable {
                cover,
                below: self.base.label(b).into(),
            }),
        }
    }

    /// Is `s` a C-ideal: a downset closed under every cover?
    pub fn is_c_ideal(&self, s: ElemSet) -> bool {
        self.base.poset().down_closure(s) == s
            && self
                .covers
                .iter()
                .all(|c| !c.coverers.is_subset(s) || s.contains(c.covered))
    }
}

/// The least cover set containing the input and closed under restriction.
pub fn stability_close(pres: &FramePresentation) -> FramePresentation {
    let base = &pres.base;
    let mut seen: HashSet<Cover> = pres.covers.iter().copied().collect();
    let mut list = pres.covers.clone();
    let mut next = 0;
    while next < list.len() {
        let c = list[next];
        next += 1;
        for b in base.poset().down(c.covered) {
            let r = restrict(base, &c, b);
            if seen.insert(r) {
                list.push(r);
            }
        }
    }
    FramePresentation {
        base: base.clone(),
        covers: list,
        stable: true,
    }
}

/// `⟨M⟩`: the least C-ideal containing `m`. Meaningful for stable
/// presentations.
pub fn c_ideal_generate(pres: &FramePresentation, m: ElemSet) -> ElemSet {
    let poset = pres.base.poset();
    let mut ideal = poset.down_closure(m);
    loop {
        let mut grown = ideal;
        for c in &pres.covers {
            if c.coverers.is_subset(grown) && !grown.contains(c.covered) {
                grown = grown.union(poset.down(c.covered));
            }
        }
        if grown == ideal {
            return ideal;
        }
        ideal = grown;
    }
}

/// The presented frame: all C-ideals ordered by inclusion, together with the
/// generator map `b ↦ ⟨{b}⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealFrame {
    frame: FinFrame,
    ideals: Vec<ElemSet>,
    index: HashMap<ElemSet, usize>,
    sem: Vec<usize>,
}

impl IdealFrame {
    pub fn frame(&self) -> &FinFrame {
        &self.frame
    }

    pub fn into_frame(self) -> FinFrame {
        self.frame
    }

    /// The C-ideal behind frame element `i`.
    pub fn ideal(&self, i: usize) -> ElemSet {
        self.ideals[i]
    }

    pub fn ideals(&self) -> &[ElemSet] {
        &self.ideals
    }

    pub fn index_of(&self, ideal: ElemSet) -> Option<usize> {
        self.index.get(&ideal).copied()
    }

    /// `⟦b⟧ = ⟨{b}⟩` as a frame element.
    pub fn sem(&self, b: usize) -> usize {
        self.sem[b]
    }

    pub fn sem_map(&self) -> &[usize] {
        &self.sem
    }

    /// `⟦B⟧` as a set of frame elements.
    pub fn generators(&self) -> ElemSet {
        self.sem.iter().copied().collect()
    }
}

/// A presentation of `frame` by itself: every element generates, `∅` covers
/// the bottom and `{a, b}` covers `a ∨ b`, closed under restriction. Its
/// C-ideal frame is isomorphic to `frame` via `⟦-⟧`.
pub fn self_presentation(frame: &FinFrame) -> FramePresentation {
    let base = MeetSemilattice::from_frame(frame);
    let mut covers = vec![Cover::new(frame.bottom(), [])];
    for a in frame.elements() {
        for b in frame.elements() {
            covers.push(Cover::new(frame.join(a, b), [a, b]));
        }
    }
    stability_close(&FramePresentation::new(base, covers).expect("covers lie below their targets"))
}

fn ideal_label(base: &MeetSemilattice, ideal: ElemSet) -> String {
    let maxima: Vec<&str> = base
        .poset()
        .maxima(ideal)
        .iter()
        .map(|i| base.label(i))
        .collect();
    format!("{{{}}}", maxima.join(","))
}

/// All downsets of a poset, by deciding elements along a linear extension.
fn downsets(poset: &FinPoset) -> Vec<ElemSet> {
    let order = poset.linear_extension();
    let mut out = Vec::new();
    fn go(i: usize, order: &[usize], poset: &FinPoset, cur: ElemSet, out: &mut Vec<ElemSet>) {
        if i == order.len() {
            out.push(cur);
            return;
        }
        let x = order[i];
        go(i + 1, order, poset, cur, out);
        let strictly_below = poset.down(x).difference(ElemSet::singleton(x));
        if strictly_below.is_subset(cur) {
            go(i + 1, order, poset, cur.with(x), out);
        }
    }
    go(0, &order, poset, ElemSet::EMPTY, &mut out);
    out
}

/// Enumerates every C-ideal and assembles the presented frame. Meets are
/// intersections; joins are `⟨I ∪ J⟩`, recomputed by the fixpoint rather
/// than looked up. The result is validated as a frame before returning.
pub fn enumerate_c_ideals(
    pres: &FramePresentation,
    cap: &Capacity,
) -> Result<IdealFrame, PresentationError> {
    pres.require_stable()?;
    let base = &pres.base;
    cap.check(Guard::Generators, base.len() as u128)?;
    let mut ideals: Vec<ElemSet> = downsets(base.poset())
        .into_iter()
        .filter(|&s| pres.is_c_ideal(s))
        .collect();
    cap.check(Guard::Elements, ideals.len() as u128)?;
    ideals.sort_by_key(|s| (s.len(), s.0));
    let index: HashMap<ElemSet, usize> = ideals.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let n = ideals.len();
    let lookup = |s: ElemSet| -> usize { index[&s] };

    let mut meet = vec![vec![0; n]; n];
    let mut join = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let cap_ij = ideals[i].intersection(ideals[j]);
            meet[i][j] = *index.get(&cap_ij).ok_or_else(|| {
                PresentationError::NotAFrame(FrameError::NotALattice {
                    op: "meet",
                    a: ideal_label(base, ideals[i]),
                    b: ideal_label(base, ideals[j]),
                })
            })?;
            join[i][j] = lookup(c_ideal_generate(pres, ideals[i].union(ideals[j])));
        }
    }
    let tables = FrameTables {
        labels: ideals.iter().map(|&s| ideal_label(base, s)).collect(),
        leq: (0..n)
            .map(|i| (0..n).map(|j| ideals[i].is_subset(ideals[j])).collect())
            .collect(),
        bottom: lookup(c_ideal_generate(pres, ElemSet::EMPTY)),
        top: lookup(base.poset().all()),
        meet,
        join,
    };
    let frame = FinFrame::from_tables(tables).map_err(PresentationError::NotAFrame)?;
    let sem = (0..base.len())
        .map(|b| lookup(c_ideal_generate(pres, ElemSet::singleton(b))))
        .collect();
    Ok(IdealFrame {
        frame,
        ideals,
        index,
        sem,
    })
}

/// Why a generator map fails to be a meet-semilattice homomorphism turning
/// covers into joins.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum UniversalError {
    #[error("map has {got} entries, expected {expected}")]
    Arity { expected: usize, got: usize },
    #[error("image {value} of generator {at} is out of range")]
    OutOfRange { at: usize, value: usize },
    #[error("top generator not sent to top")]
    Top,
    #[error("meet of generators {0} and {1} not preserved")]
    Meet(usize, usize),
    #[error("cover {0} not sent to a join")]
    Cover(usize),
    #[error("extension is not a frame homomorphism: {0}")]
    NotHom(HomViolation),
    #[error("extension does not factor the map at generator {0}")]
    NoFactor(usize),
}

/// Checks that `f: B → L` preserves finite meets and sends every cover to a
/// join.
pub fn check_presentation_map(
    pres: &FramePresentation,
    f: &[usize],
    target: &FinFrame,
) -> Result<(), UniversalError> {
    let base = &pres.base;
    if f.len() != base.len() {
        return Err(UniversalError::Arity {
            expected: base.len(),
            got: f.len(),
        });
    }
    if let Some((at, &value)) = f.iter().enumerate().find(|(_, &v)| v >= target.len()) {
        return Err(UniversalError::OutOfRange { at, value });
    }
    if f[base.top()] != target.top() {
        return Err(UniversalError::Top);
    }
    for a in 0..base.len() {
        for b in 0..base.len() {
            if f[base.meet(a, b)] != target.meet(f[a], f[b]) {
                return Err(UniversalError::Meet(a, b));
            }
        }
    }
    for (i, c) in pres.covers.iter().enumerate() {
        let joined = c
            .coverers
            .iter()
            .fold(target.bottom(), |acc, u| target.join(acc, f[u]));
        if joined != f[c.covered] {
            return Err(UniversalError::Cover(i));
        }
    }
    Ok(())
}

/// The unique frame homomorphism `f̄: CIdl → L` with `f = f̄ ∘ ⟦-⟧`, given by
/// `f̄(I) = ⋁ f[I]`.
pub fn extend_universal(
    pres: &FramePresentation,
    cidl: &IdealFrame,
    f: &[usize],
    target: &FinFrame,
) -> Result<FrameHom, UniversalError> {
    check_presentation_map(pres, f, target)?;
    let map: Vec<usize> = cidl
        .ideals
        .iter()
        .map(|ideal| {
            ideal
                .iter()
                .fold(target.bottom(), |acc, b| target.join(acc, f[b]))
        })
        .collect();
    if let Some(v) = hom_violation(cidl.frame(), target, &map) {
        return Err(UniversalError::NotHom(v));
    }
    if let Some(b) = (0..f.len()).find(|&b| map[cidl.sem(b)] != f[b]) {
        return Err(UniversalError::NoFactor(b));
    }
    Ok(FrameHom::new_unchecked(map))
}

/// Every frame homomorphism `g: CIdl → L` with `g ∘ ⟦-⟧ = f`, found by
/// exhaustive search. Used to confirm uniqueness of [`extend_universal`].
pub fn extensions_through(
    cidl: &IdealFrame,
    f: &[usize],
    target: &FinFrame,
    cap: &Capacity,
) -> Result<Vec<FrameHom>, CapacityError> {
    Ok(enumerate_homs(cidl.frame(), target, cap)?
        .into_iter()
        .filter(|g| (0..f.len()).all(|b| g.apply(cidl.sem(b)) == f[b]))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(ls: &[&str]) -> Vec<String> {
        ls.iter().map(|s| s.to_string()).collect()
    }

    /// Free meet-semilattice on g, h: elements gh < g, h < 1.
    fn free_gh() -> MeetSemilattice {
        MeetSemilattice::from_generating(
            labels(&["gh", "g", "h", "1"]),
            &[(0, 1), (0, 2), (1, 3), (2, 3)],
        )
        .unwrap()
    }

    const GH: usize = 0;
    const G: usize = 1;
    const H: usize = 2;
    const ONE: usize = 3;

    fn gh_cover() -> FramePresentation {
        let p = FramePresentation::new(free_gh(), [Cover::new(ONE, [G, H])]).unwrap();
        stability_close(&p)
    }

    /// Independent oracle: filter all 2^|B| subsets.
    fn brute_force_ideals(p: &FramePresentation) -> Vec<ElemSet> {
        let n = p.base().len();
        let mut out: Vec<ElemSet> = (0u64..1 << n)
            .map(ElemSet)
            .filter(|&s| p.is_c_ideal(s))
            .collect();
        out.sort_by_key(|s| (s.len(), s.0));
        out
    }

    #[test]
    fn stability_closure_of_gh_cover() {
        let p = FramePresentation::new(free_gh(), [Cover::new(ONE, [G, H])]).unwrap();
        // Every proper restriction contains its target, so the cover alone
        // already counts as stable; the closure still lists them.
        assert!(p.is_stable());
        let closed = stability_close(&p);
        assert!(closed.is_stable());
        // oracle: every b <= 1 restricts {g, h}
        let mut expected: Vec<Cover> = (0..4)
            .map(|b| Cover {
                covered: b,
                coverers: [G, H].iter().map(|&u| free_gh().meet(u, b)).collect(),
            })
            .collect();
        expected.sort();
        let mut got = closed.covers().to_vec();
        got.sort();
        assert_eq!(got, expected);
        // {g, g∧h} ⊣ g is among them
        assert!(got.contains(&Cover::new(G, [GH, G])));
    }

    #[test]
    fn stability_closure_edge_cases() {
        let empty = FramePresentation::new(free_gh(), []).unwrap();
        assert!(empty.is_stable());
        assert_eq!(stability_close(&empty), empty);
        let refl = FramePresentation::new(free_gh(), [Cover::new(G, [G])]).unwrap();
        let closed = stability_close(&refl);
        assert!(closed
            .covers()
            .iter()
            .all(|c| c.coverers == ElemSet::singleton(c.covered)));
        assert_eq!(closed.covers().len(), 2);
    }

    #[test]
    fn malformed_cover_is_rejected() {
        let err = FramePresentation::new(free_gh(), [Cover::new(G, [H])]).unwrap_err();
        assert_eq!(
            err,
            PresentationError::CoverNotBelow {
                covered: "g".into(),
                stray: "h".into()
            }
        );
    }

    #[test]
    fn ideal_generation() {
        let none = FramePresentation::new(free_gh(), []).unwrap();
        assert_eq!(
            c_ideal_generate(&none, ElemSet::singleton(G)),
            ElemSet::from_indices([GH, G])
        );
        assert_eq!(c_ideal_generate(&none, ElemSet::EMPTY), ElemSet::EMPTY);
        let p = gh_cover();
        assert_eq!(
            c_ideal_generate(&p, ElemSet::from_indices([G, H])),
            ElemSet::full(4)
        );
    }

    #[test]
    fn generated_ideal_is_intersection_of_ideals_above() {
        let p = gh_cover();
        let all = brute_force_ideals(&p);
        for m in 0u64..16 {
            let m = ElemSet(m);
            let meet = all
                .iter()
                .filter(|i| m.is_subset(**i))
                .fold(ElemSet::full(4), |a, &i| a.intersection(i));
            assert_eq!(c_ideal_generate(&p, m), meet);
        }
    }

    #[test]
    fn frame_of_ideals_sizes() {
        let cap = Capacity::default();
        let none = FramePresentation::new(free_gh(), []).unwrap();
        let f = enumerate_c_ideals(&none, &cap).unwrap();
        assert_eq!(f.frame().len(), 6);
        assert_eq!(f.ideals(), brute_force_ideals(&none).as_slice());

        let p = gh_cover();
        let f = enumerate_c_ideals(&p, &cap).unwrap();
        assert_eq!(f.frame().len(), 5);
        let expected = [
            ElemSet::EMPTY,
            ElemSet::from_indices([GH]),
            ElemSet::from_indices([GH, G]),
            ElemSet::from_indices([GH, H]),
            ElemSet::full(4),
        ];
        assert_eq!(f.ideals(), expected.as_slice());

        let single = FramePresentation::new(
            MeetSemilattice::from_generating(labels(&["1"]), &[]).unwrap(),
            [],
        )
        .unwrap();
        let f = enumerate_c_ideals(&single, &cap).unwrap();
        assert_eq!(f.ideals(), &[ElemSet::EMPTY, ElemSet::singleton(0)]);
    }

    #[test]
    fn meets_are_intersections() {
        let p = gh_cover();
        let f = enumerate_c_ideals(&p, &Capacity::default()).unwrap();
        for i in f.frame().elements() {
            for j in f.frame().elements() {
                assert_eq!(
                    f.ideal(f.frame().meet(i, j)),
                    f.ideal(i).intersection(f.ideal(j))
                );
            }
        }
    }

    #[test]
    fn nullary_cover_moves_the_bottom() {
        let p = FramePresentation::new(free_gh(), [Cover::new(GH, [])]).unwrap();
        let p = stability_close(&p);
        let f = enumerate_c_ideals(&p, &Capacity::default()).unwrap();
        assert_eq!(f.ideal(f.frame().bottom()), ElemSet::singleton(GH));
    }

    #[test]
    fn unstable_presentation_is_refused() {
        // ∅ ⊣ 1 restricts to ∅ ⊣ g∧h, which is missing.
        let p = FramePresentation::new(free_gh(), [Cover::new(ONE, [])]).unwrap();
        assert_eq!(p.stability_violation(), Some((0, GH)));
        assert!(matches!(
            enumerate_c_ideals(&p, &Capacity::default()),
            Err(PresentationError::NotStable { .. })
        ));
    }

    #[test]
    fn generator_guard() {
        let p = gh_cover();
        let cap = Capacity {
            max_generators: 3,
            ..Capacity::default()
        };
        assert!(matches!(
            enumerate_c_ideals(&p, &cap),
            Err(PresentationError::Capacity(_))
        ));
    }

    #[test]
    fn sem_map_examples() {
        let cap = Capacity::default();
        let none = FramePresentation::new(free_gh(), []).unwrap();
        let f = enumerate_c_ideals(&none, &cap).unwrap();
        for b in 0..4 {
            assert_eq!(f.ideal(f.sem(b)), none.base().poset().down(b));
        }
        let p = gh_cover();
        let f = enumerate_c_ideals(&p, &cap).unwrap();
        let fr = f.frame();
        assert_eq!(fr.join(f.sem(G), f.sem(H)), f.sem(ONE));
        assert_eq!(f.sem(ONE), fr.top());
        assert!(check_presentation_map(&p, f.sem_map(), fr).is_ok());
    }

    fn diamond() -> FinFrame {
        FinFrame::from_generating(
            labels(&["0", "a", "b", "1"]),
            &[(0, 1), (0, 2), (1, 3), (2, 3)],
        )
        .unwrap()
    }

    #[test]
    fn extension_into_diamond() {
        let p = gh_cover();
        let cidl = enumerate_c_ideals(&p, &Capacity::default()).unwrap();
        let d = diamond();
        let f = vec![0, 1, 2, 3]; // gh->0, g->a, h->b, 1->1
        let ext = extend_universal(&p, &cidl, &f, &d).unwrap();
        // ideals in order: ∅, {gh}, {gh,g}, {gh,h}, B
        assert_eq!(ext.map(), &[0, 0, 1, 2, 3]);
        let all = extensions_through(&cidl, &f, &d, &Capacity::default()).unwrap();
        assert_eq!(all, vec![ext]);
    }

    #[test]
    fn extension_of_sem_is_identity() {
        let p = gh_cover();
        let cidl = enumerate_c_ideals(&p, &Capacity::default()).unwrap();
        let ext = extend_universal(&p, &cidl, cidl.sem_map(), cidl.frame()).unwrap();
        assert_eq!(ext, FrameHom::identity(cidl.frame()));
    }

    #[test]
    fn bad_maps_are_rejected() {
        let p = gh_cover();
        let cidl = enumerate_c_ideals(&p, &Capacity::default()).unwrap();
        let d = diamond();
        assert_eq!(
            extend_universal(&p, &cidl, &[0, 0, 0, 0], &d),
            Err(UniversalError::Top)
        );
        // g, h -> a: meets fine but the cover {g,h} ⊣ 1 gives a ≠ 1
        assert!(matches!(
            extend_universal(&p, &cidl, &[1, 1, 1, 3], &d),
            Err(UniversalError::Cover(_))
        ));
        // not meet preserving: gh -> a, h -> b, yet gh∧h = gh
        assert_eq!(
            extend_universal(&p, &cidl, &[1, 1, 2, 3], &d),
            Err(UniversalError::Meet(0, 2))
        );
        assert!(matches!(
            extend_universal(&p, &cidl, &[0, 1], &d),
            Err(UniversalError::Arity { .. })
        ));
        // constant top preserves meets and covers, so it extends
        assert!(extend_universal(&p, &cidl, &[3, 3, 3, 3], &d).is_ok());
    }
}
