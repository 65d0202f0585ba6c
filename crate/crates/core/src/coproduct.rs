//! Coproducts of finite frames and d-frames.
//!
//! Elements of the restricted product `∏′ᵢ Lⁱ` are tuples, stored as
//! mixed-radix indices with the first component varying slowest. For finite
//! families every tuple qualifies, since the "all but finitely many
//! coordinates are 1" constraint is vacuous.

use std::fmt;

use thiserror::Error;

use crate::bits::ElemSet;
use crate::capacity::{Capacity, CapacityError, Guard};
use crate::closure::{
    generate_from_ideals, verify_dfrm_universal, DUniversalError, Generated, PreDFramePresentation,
};
use crate::conditions::{ConditionReport, Side, Tower};
use crate::dframe::{
    check_axioms, enumerate_dframe_homs, is_dframe_hom, AxiomReport, DFrame, DFrameHom, Pair,
    PairRelation, PairSpace,
};
use crate::lattice::{FinFrame, FrameHom, HomViolation};
use crate::presentation::{
    enumerate_c_ideals, Cover, FramePresentation, IdealFrame, MeetSemilattice, PresentationError,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CoproductError {
    #[error(transparent)]
    Capacity(#[from] CapacityError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error("coproduct covers are not stable")]
    Unstable,
    #[error("injection {index} is not a frame homomorphism: {violation}")]
    InjectionNotHom {
        index: usize,
        violation: HomViolation,
    },
    #[error("injection {index} is not a d-frame homomorphism")]
    InjectionNotDHom { index: usize },
}

/// `∏′ᵢ Lⁱ` with coordinatewise meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedProduct {
    components: Vec<FinFrame>,
    strides: Vec<usize>,
    len: usize,
}

impl RestrictedProduct {
    pub fn new(components: Vec<FinFrame>, cap: &Capacity) -> Result<Self, CapacityError> {
        let size = components
            .iter()
            .fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128));
        cap.check(Guard::Generators, size)?;
        cap.check(Guard::Elements, size)?;
        let mut strides = vec![1; components.len()];
        for j in (0..components.len().saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * components[j + 1].len();
        }
        Ok(RestrictedProduct {
            components,
            strides,
            len: size as usize,
        })
    }

    pub fn components(&self) -> &[FinFrame] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn coord(&self, u: usize, j: usize) -> usize {
        u / self.strides[j] % self.components[j].len()
    }

    pub fn coords(&self, u: usize) -> Vec<usize> {
        (0..self.components.len())
            .map(|j| self.coord(u, j))
            .collect()
    }

    pub fn encode(&self, coords: &[usize]) -> usize {
        coords.iter().zip(&self.strides).map(|(c, s)| c * s).sum()
    }

    /// `1⃗`.
    pub fn ones(&self) -> usize {
        self.encode(
            &self
                .components
                .iter()
                .map(FinFrame::top)
                .collect::<Vec<_>>(),
        )
    }

    /// `a *ⱼ u`: `u` with coordinate `j` replaced by `a`.
    pub fn star(&self, a: usize, j: usize, u: usize) -> usize {
        u - self.coord(u, j) * self.strides[j] + a * self.strides[j]
    }

    pub fn meet(&self, u: usize, v: usize) -> usize {
        let c: Vec<usize> = (0..self.components.len())
            .map(|j| self.components[j].meet(self.coord(u, j), self.coord(v, j)))
            .collect();
        self.encode(&c)
    }

    pub fn leq(&self, u: usize, v: usize) -> bool {
        (0..self.components.len())
            .all(|j| self.components[j].leq(self.coord(u, j), self.coord(v, j)))
    }

    /// `u ∈ n`: some coordinate is bottom.
    pub fn in_n(&self, u: usize) -> bool {
        (0..self.components.len()).any(|j| self.coord(u, j) == self.components[j].bottom())
    }

    pub fn label(&self, u: usize) -> String {
        let parts: Vec<&str> = (0..self.components.len())
            .map(|j| self.components[j].label(self.coord(u, j)))
            .collect();
        format!("({})", parts.join(","))
    }

    pub fn semilattice(&self) -> MeetSemilattice {
        let labels = (0..self.len).map(|u| self.label(u)).collect();
        let mut pairs = Vec::new();
        for u in 0..self.len {
            for (j, comp) in self.components.iter().enumerate() {
                for (lo, hi) in comp.poset().hasse() {
                    if self.coord(u, j) == lo {
                        pairs.push((u, self.star(hi, j, u)));
                    }
                }
            }
        }
        MeetSemilattice::from_generating(labels, &pairs)
            .expect("a product of frames is a meet-semilattice")
    }
}

/// `{ aᵏ *ⱼ u : k ∈ K } ⊣ (⋁ₖ aᵏ) *ⱼ u` for every component `j`, context `u`
/// and `K ⊆ Lʲ`, including `K = ∅`.
pub fn coproduct_covers(
    rp: &RestrictedProduct,
    cap: &Capacity,
) -> Result<Vec<Cover>, CapacityError> {
    let mut out = Vec::new();
    for (j, comp) in rp.components.iter().enumerate() {
        cap.check(Guard::Family, comp.len() as u128)?;
        for u in (0..rp.len).filter(|&u| rp.coord(u, j) == comp.top()) {
            for mask in 0u64..(1u64 << comp.len()) {
                let k = ElemSet(mask);
                let covered = rp.star(comp.join_all(k), j, u);
                out.push(Cover::new(covered, k.iter().map(|a| rp.star(a, j, u))));
            }
        }
    }
    Ok(out)
}

/// `⊕ᵢ Lⁱ` as the C-ideals of `(∏′ᵢ Lⁱ, C)`, with injections `ιʲ = ⟦-⟧ ∘ κʲ`.
#[derive(Clone, Debug)]
pub struct FrameCoproduct {
    pub product: RestrictedProduct,
    pub presentation: FramePresentation,
    pub ideals: IdealFrame,
    pub injections: Vec<FrameHom>,
}

impl FrameCoproduct {
    pub fn frame(&self) -> &FinFrame {
        self.ideals.frame()
    }

    /// `n`, the bottom C-ideal.
    pub fn n(&self) -> usize {
        self.frame().bottom()
    }

    /// `a ⊕ⱼ u = ⟦a *ⱼ u⟧`.
    pub fn oplus(&self, a: usize, j: usize, u: usize) -> usize {
        self.ideals.sem(self.product.star(a, j, u))
    }

    /// The `j`-strip `a ⊕ⱼ 1⃗`.
    pub fn strip(&self, j: usize, a: usize) -> usize {
        self.oplus(a, j, self.product.ones())
    }
}

pub fn frame_coproduct(
    components: &[FinFrame],
    cap: &Capacity,
) -> Result<FrameCoproduct, CoproductError> {
    let product = RestrictedProduct::new(components.to_vec(), cap)?;
    let covers = coproduct_covers(&product, cap)?;
    let presentation = FramePresentation::new(product.semilattice(), covers)?;
    if !presentation.is_stable() {
        return Err(CoproductError::Unstable);
    }
    let ideals = enumerate_c_ideals(&presentation, cap)?;
    let mut injections = Vec::new();
    for (index, comp) in components.iter().enumerate() {
        let map = comp
            .elements()
            .map(|a| ideals.sem(product.star(a, index, product.ones())))
            .collect();
        let hom = FrameHom::new(comp, ideals.frame(), map).map_err(|e| match e {
            crate::lattice::HomError::Law(violation) => {
                CoproductError::InjectionNotHom { index, violation }
            }
            other => unreachable!("injection has the right shape: {other}"),
        })?;
        injections.push(hom);
    }
    Ok(FrameCoproduct {
        product,
        presentation,
        ideals,
        injections,
    })
}

/// `⊕ᵢ Lⁱ` of a family of d-frames.
#[derive(Clone, Debug)]
pub struct DFrameCoproduct {
    pub components: Vec<DFrame>,
    pub plus: FrameCoproduct,
    pub minus: FrameCoproduct,
    pub presentation: PreDFramePresentation,
    pub generated: Generated,
    pub injections: Vec<DFrameHom>,
}

impl DFrameCoproduct {
    pub fn dframe(&self) -> &DFrame {
        &self.generated.dframe
    }

    pub fn space(&self) -> PairSpace<'_> {
        self.generated.space()
    }

    /// The strip pair `(a ⊕ⱼ 1⃗, b ⊕ⱼ 1⃗)`.
    pub fn strip_pair(&self, j: usize, p: Pair) -> Pair {
        Pair::new(self.plus.strip(j, p.plus), self.minus.strip(j, p.minus))
    }
}

pub fn dframe_coproduct(
    family: &[DFrame],
    cap: &Capacity,
) -> Result<DFrameCoproduct, CoproductError> {
    let plus_frames: Vec<FinFrame> = family.iter().map(|d| d.plus.clone()).collect();
    let minus_frames: Vec<FinFrame> = family.iter().map(|d| d.minus.clone()).collect();
    let plus = frame_coproduct(&plus_frames, cap)?;
    let minus = frame_coproduct(&minus_frames, cap)?;
    let (bp, bm) = (&plus.product, &minus.product);
    let mut con1 = PairRelation::empty(bp.len(), bm.len());
    let mut tot1 = con1.clone();
    for (j, d) in family.iter().enumerate() {
        let lift = |a: Pair| {
            Pair::new(
                bp.star(a.plus, j, bp.ones()),
                bm.star(a.minus, j, bm.ones()),
            )
        };
        for a in d.con.iter() {
            con1.insert(lift(a));
        }
        for a in d.tot.iter() {
            tot1.insert(lift(a));
        }
    }
    let presentation = PreDFramePresentation::new(
        plus.presentation.clone(),
        minus.presentation.clone(),
        con1,
        tot1,
    )
    .expect("relations are sized by the products");
    let generated = generate_from_ideals(&presentation, plus.ideals.clone(), minus.ideals.clone());
    let mut injections = Vec::new();
    for (index, d) in family.iter().enumerate() {
        let h = DFrameHom {
            plus: plus.injections[index].clone(),
            minus: minus.injections[index].clone(),
        };
        match is_dframe_hom(&h, d, &generated.dframe) {
            Ok(None) => injections.push(h),
            _ => return Err(CoproductError::InjectionNotDHom { index }),
        }
    }
    Ok(DFrameCoproduct {
        components: family.to_vec(),
        plus,
        minus,
        presentation,
        generated,
        injections,
    })
}

/// Rectangle and cross structure of one coproduct element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometryTag {
    /// `u` with `⟦u⟧ = x`, fewest non-top coordinates first.
    pub rectangle: Option<Vec<usize>>,
    /// The largest `dⁱ` with `dⁱ ⊕ᵢ 1⃗ ≤ x`, when `x = ⋁ᵢ dⁱ ⊕ᵢ 1⃗`.
    pub cross: Option<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Geometry {
    Strip,
    Rectangle,
    Cross,
    Other,
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Geometry::Strip => "strip",
            Geometry::Rectangle => "rectangle",
            Geometry::Cross => "cross",
            Geometry::Other => "other",
        })
    }
}

impl GeometryTag {
    /// `I(γ)` for a rectangle: coordinates that are not top.
    pub fn rectangle_support(&self, comps: &[FinFrame]) -> Option<Vec<usize>> {
        let u = self.rectangle.as_ref()?;
        Some(
            (0..comps.len())
                .filter(|&i| u[i] != comps[i].top())
                .collect(),
        )
    }

    /// `I(δ)` for a cross: coordinates that are not bottom.
    pub fn cross_support(&self, comps: &[FinFrame]) -> Option<Vec<usize>> {
        let d = self.cross.as_ref()?;
        Some(
            (0..comps.len())
                .filter(|&i| d[i] != comps[i].bottom())
                .collect(),
        )
    }

    pub fn kind(&self, comps: &[FinFrame]) -> Geometry {
        match self.rectangle_support(comps) {
            Some(s) if s.len() <= 1 => Geometry::Strip,
            Some(_) => Geometry::Rectangle,
            None if self.cross.is_some() => Geometry::Cross,
            None => Geometry::Other,
        }
    }
}

pub fn classify_geometry(fc: &FrameCoproduct, x: usize) -> GeometryTag {
    let rp = &fc.product;
    let comps = rp.components();
    let non_top = |u: usize| {
        (0..comps.len())
            .filter(|&i| rp.coord(u, i) != comps[i].top())
            .count()
    };
    let rectangle = (0..rp.len())
        .filter(|&u| fc.ideals.sem(u) == x)
        .min_by_key(|&u| (non_top(u), u))
        .map(|u| rp.coords(u));
    let frame = fc.frame();
    let d: Vec<usize> = (0..comps.len())
        .map(|i| {
            let below = comps[i]
                .elements()
                .filter(|&a| frame.leq(fc.strip(i, a), x));
            comps[i].join_all(below.collect())
        })
        .collect();
    let joined = (0..comps.len()).fold(frame.bottom(), |acc, i| frame.join(acc, fc.strip(i, d[i])));
    GeometryTag {
        rectangle,
        cross: (joined == x).then_some(d),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RecCrossError {
    #[error("first argument is not a rectangle")]
    NotRectangle,
    #[error("second argument is not a cross")]
    NotCross,
    #[error("rectangle is not below the cross")]
    NotBelow,
    #[error("rectangle is the top element, whose support is empty")]
    EmptySupport,
}

/// For a rectangle `γ ≤` a cross `δ`, the least `i ∈ I(γ)` with
/// `γⁱ ≤ δⁱ`. `Ok(None)` would contradict the rectangle-cross lemma.
pub fn rec_cross_check(
    fc: &FrameCoproduct,
    gamma: usize,
    delta: usize,
) -> Result<Option<usize>, RecCrossError> {
    let comps = fc.product.components();
    let g = classify_geometry(fc, gamma);
    let d = classify_geometry(fc, delta);
    let (Some(c), Some(support)) = (g.rectangle.as_ref(), g.rectangle_support(comps)) else {
        return Err(RecCrossError::NotRectangle);
    };
    let Some(dd) = d.cross.as_ref() else {
        return Err(RecCrossError::NotCross);
    };
    if !fc.frame().leq(gamma, delta) {
        return Err(RecCrossError::NotBelow);
    }
    if support.is_empty() {
        return Err(RecCrossError::EmptySupport);
    }
    Ok(support.into_iter().find(|&i| comps[i].leq(c[i], dd[i])))
}

/// Counts for a sweep of [`rec_cross_check`] over every qualifying pair.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RecCrossTally {
    pub qualifying: usize,
    pub failures: usize,
    /// `γ = 1⃗ ≤ δ = 1⃗`, excluded because `I(γ) = ∅`.
    pub top_excluded: usize,
}

pub fn rec_cross_sweep(fc: &FrameCoproduct) -> RecCrossTally {
    let mut t = RecCrossTally::default();
    let tags: Vec<GeometryTag> = fc
        .frame()
        .elements()
        .map(|x| classify_geometry(fc, x))
        .collect();
    for gamma in fc
        .frame()
        .elements()
        .filter(|&x| tags[x].rectangle.is_some())
    {
        for delta in fc.frame().elements().filter(|&x| tags[x].cross.is_some()) {
            match rec_cross_check(fc, gamma, delta) {
                Ok(Some(_)) => t.qualifying += 1,
                Ok(None) => {
                    t.qualifying += 1;
                    t.failures += 1;
                }
                Err(RecCrossError::EmptySupport) => t.top_excluded += 1,
                Err(_) => {}
            }
        }
    }
    t
}

/// Which closure a pair is decomposed for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CanonKind {
    ConMeet,
    ConJoin,
    TotMeet,
    TotJoin,
}

impl CanonKind {
    fn is_meet(self) -> bool {
        matches!(self, CanonKind::ConMeet | CanonKind::TotMeet)
    }
}

/// One component pair per index, with the indices where it is not the
/// neutral unit (`tt` for meets, `ff` for joins).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub parts: Vec<Pair>,
    pub support: Vec<usize>,
}

/// Recombines per-component pairs as `⋀ⱼ` (or `⋁ⱼ`) of their strip pairs.
pub fn recombine(cop: &DFrameCoproduct, parts: &[Pair], kind: CanonKind) -> Pair {
    let s = cop.space();
    let start = if kind.is_meet() { s.tt() } else { s.ff() };
    parts.iter().enumerate().fold(start, |acc, (j, &p)| {
        let strip = cop.strip_pair(j, p);
        if kind.is_meet() {
            s.meet(acc, strip)
        } else {
            s.join(acc, strip)
        }
    })
}

/// Searches per-component pairs from `conʲ` (or `totʲ`) whose recombination
/// is `alpha`, preferring the unit at each index. `None` when `alpha` has no
/// such form.
pub fn canonical_form(
    cop: &DFrameCoproduct,
    alpha: Pair,
    kind: CanonKind,
    cap: &Capacity,
) -> Result<Option<CanonicalForm>, CapacityError> {
    let candidates: Vec<Vec<Pair>> = cop
        .components
        .iter()
        .map(|d| {
            let s = d.space();
            let unit = if kind.is_meet() { s.tt() } else { s.ff() };
            let rel = match kind {
                CanonKind::ConMeet | CanonKind::ConJoin => &d.con,
                CanonKind::TotMeet | CanonKind::TotJoin => &d.tot,
            };
            let mut c = vec![unit];
            c.extend(rel.iter().filter(|&p| p != unit));
            c
        })
        .collect();
    let space = candidates
        .iter()
        .fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128));
    cap.check(Guard::HomSpace, space)?;
    let mut choice = vec![0usize; candidates.len()];
    loop {
        let parts: Vec<Pair> = choice
            .iter()
            .enumerate()
            .map(|(j, &k)| candidates[j][k])
            .collect();
        if recombine(cop, &parts, kind) == alpha {
            let support = (0..parts.len()).filter(|&j| choice[j] != 0).collect();
            return Ok(Some(CanonicalForm { parts, support }));
        }
        // Odometer over the choices, last index fastest.
        let mut j = candidates.len();
        loop {
            if j == 0 {
                return Ok(None);
            }
            j -= 1;
            choice[j] += 1;
            if choice[j] < candidates[j].len() {
                break;
            }
            choice[j] = 0;
        }
    }
}

/// Tallies for the four coproduct basics: order reflection outside `n`,
/// injectivity outside `n`, strips preserve meets, strips preserve joins.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BasicsReport {
    pub checked: [usize; 4],
    pub failures: [usize; 4],
    /// Tuples in `n`, excluded from the first two claims.
    pub in_n: usize,
}

impl BasicsReport {
    pub fn all_pass(&self) -> bool {
        self.failures == [0; 4]
    }
}

pub fn copr_basics_suite(
    fc: &FrameCoproduct,
    cap: &Capacity,
) -> Result<BasicsReport, CapacityError> {
    let rp = &fc.product;
    let frame = fc.frame();
    let sem = |u: usize| fc.ideals.sem(u);
    let mut r = BasicsReport::default();
    for u in 0..rp.len() {
        if rp.in_n(u) {
            r.in_n += 1;
            continue;
        }
        for v in 0..rp.len() {
            r.checked[0] += 1;
            if frame.leq(sem(u), sem(v)) != rp.leq(u, v) {
                r.failures[0] += 1;
            }
            if !rp.in_n(v) && u != v {
                r.checked[1] += 1;
                if sem(u) == sem(v) {
                    r.failures[1] += 1;
                }
            }
        }
    }
    for (j, comp) in rp.components().iter().enumerate() {
        cap.check(Guard::Family, comp.len() as u128)?;
        for u in 0..rp.len() {
            for a in comp.elements() {
                for b in comp.elements() {
                    r.checked[2] += 1;
                    if frame.meet(fc.oplus(a, j, u), fc.oplus(b, j, u))
                        != fc.oplus(comp.meet(a, b), j, u)
                    {
                        r.failures[2] += 1;
                    }
                }
            }
            for mask in 0u64..(1u64 << comp.len()) {
                let k = ElemSet(mask);
                r.checked[3] += 1;
                let lhs = k
                    .iter()
                    .fold(frame.bottom(), |acc, a| frame.join(acc, fc.oplus(a, j, u)));
                if lhs != fc.oplus(comp.join_all(k), j, u) {
                    r.failures[3] += 1;
                }
            }
        }
    }
    Ok(r)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StripsIso {
    /// Some component has a trivial frame.
    NotApplicable,
    Holds,
    Fails(String),
}

/// Checks that `ιⁱ` is a bijection onto the `i`-strips that preserves and
/// reflects `con₁` and `tot₁`.
pub fn strips_iso_check(cop: &DFrameCoproduct, i: usize) -> StripsIso {
    if cop
        .components
        .iter()
        .any(|d| d.plus.is_trivial() || d.minus.is_trivial())
    {
        return StripsIso::NotApplicable;
    }
    let d = &cop.components[i];
    let inj = &cop.injections[i];
    for (side, comp, fc, h) in [
        ("plus", &d.plus, &cop.plus, &inj.plus),
        ("minus", &d.minus, &cop.minus, &inj.minus),
    ] {
        let strips: ElemSet = comp.elements().map(|a| fc.strip(i, a)).collect();
        let image: ElemSet = h.map().iter().copied().collect();
        if image.len() != comp.len() {
            return StripsIso::Fails(format!("{side} injection is not injective"));
        }
        if image != strips {
            return StripsIso::Fails(format!("{side} injection does not land on the strips"));
        }
    }
    for (name, rel, gen) in [
        ("con", &d.con, &cop.generated.con1),
        ("tot", &d.tot, &cop.generated.tot1),
    ] {
        for p in d.space().pairs() {
            if rel.contains(p) != gen.contains(inj.apply(p)) {
                return StripsIso::Fails(format!("{name} differs at {p:?}"));
            }
        }
    }
    StripsIso::Holds
}

/// Everything checked about one constructed coproduct.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub sizes: (usize, usize),
    pub axioms: AxiomReport,
    pub mu: Vec<ConditionReport>,
    pub indep: Vec<ConditionReport>,
    pub strips: Vec<StripsIso>,
    pub basics: [BasicsReport; 2],
    pub rec_cross: [RecCrossTally; 2],
}

impl Certificate {
    pub fn passes(&self) -> bool {
        self.axioms.is_dframe()
            && self
                .mu
                .iter()
                .chain(&self.indep)
                .all(ConditionReport::holds)
            && self
                .strips
                .iter()
                .all(|s| !matches!(s, StripsIso::Fails(_)))
            && self.basics.iter().all(BasicsReport::all_pass)
            && self.rec_cross.iter().all(|t| t.failures == 0)
    }
}

pub fn certify(cop: &DFrameCoproduct, cap: &Capacity) -> Result<Certificate, CapacityError> {
    let tower = Tower::from_generated(&cop.generated);
    let d = cop.dframe();
    Ok(Certificate {
        sizes: (d.plus.len(), d.minus.len()),
        axioms: check_axioms(d),
        mu: Side::BOTH.iter().map(|&s| tower.check_mu(s)).collect(),
        indep: Side::BOTH.iter().map(|&s| tower.check_indep(s)).collect(),
        strips: (0..cop.components.len())
            .map(|i| strips_iso_check(cop, i))
            .collect(),
        basics: [
            copr_basics_suite(&cop.plus, cap)?,
            copr_basics_suite(&cop.minus, cap)?,
        ],
        rec_cross: [rec_cross_sweep(&cop.plus), rec_cross_sweep(&cop.minus)],
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CoproductUnivError {
    #[error("expected {expected} cocone legs, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("cocone leg {0} is not a d-frame homomorphism")]
    Leg(usize),
    #[error("{side} cover {cover} is not sent to a join")]
    CoverComputation { side: &'static str, cover: usize },
    #[error(transparent)]
    Universal(#[from] DUniversalError),
    #[error("mediating map does not restrict to leg {0}")]
    NotMediating(usize),
    #[error("{0} mediating d-frame homomorphisms, expected exactly one")]
    NotUnique(usize),
    #[error(transparent)]
    Capacity(#[from] CapacityError),
}

/// `λ(u) = ⋀ⱼ λʲ(uⱼ)` on one side of the restricted product.
fn product_map(rp: &RestrictedProduct, legs: &[&FrameHom], target: &FinFrame) -> Vec<usize> {
    (0..rp.len())
        .map(|u| {
            (0..legs.len()).fold(target.top(), |acc, j| {
                target.meet(acc, legs[j].apply(rp.coord(u, j)))
            })
        })
        .collect()
}

/// The mediating `λ̄` for a cocone `λʲ : Lʲ → M`, with all checks: legs are
/// d-frame homomorphisms, `λ` sends coproduct covers to joins, `λ̄` extends
/// `λ`, `λʲ = λ̄ ∘ ιʲ`, and no other d-frame homomorphism does so.
pub fn coproduct_universal_check(
    cop: &DFrameCoproduct,
    target: &DFrame,
    cocone: &[DFrameHom],
    cap: &Capacity,
) -> Result<DFrameHom, CoproductUnivError> {
    if cocone.len() != cop.components.len() {
        return Err(CoproductUnivError::Arity {
            expected: cop.components.len(),
            got: cocone.len(),
        });
    }
    for (j, leg) in cocone.iter().enumerate() {
        if !matches!(is_dframe_hom(leg, &cop.components[j], target), Ok(None)) {
            return Err(CoproductUnivError::Leg(j));
        }
    }
    let plus_legs: Vec<&FrameHom> = cocone.iter().map(|l| &l.plus).collect();
    let minus_legs: Vec<&FrameHom> = cocone.iter().map(|l| &l.minus).collect();
    let f_plus = product_map(&cop.plus.product, &plus_legs, &target.plus);
    let f_minus = product_map(&cop.minus.product, &minus_legs, &target.minus);
    for (side, fc, f, m) in [
        ("plus", &cop.plus, &f_plus, &target.plus),
        ("minus", &cop.minus, &f_minus, &target.minus),
    ] {
        for (cover, c) in fc.presentation.covers().iter().enumerate() {
            let joined = c
                .coverers
                .iter()
                .fold(m.bottom(), |acc, u| m.join(acc, f[u]));
            if joined != f[c.covered] {
                return Err(CoproductUnivError::CoverComputation { side, cover });
            }
        }
    }
    let h = verify_dfrm_universal(
        &cop.presentation,
        &cop.generated,
        target,
        &f_plus,
        &f_minus,
        cap,
    )?;
    let mediates = |g: &DFrameHom, j: usize| {
        let (leg, inj) = (&cocone[j], &cop.injections[j]);
        cop.components[j]
            .space()
            .pairs()
            .all(|p| g.apply(inj.apply(p)) == leg.apply(p))
    };
    if let Some(j) = (0..cocone.len()).find(|&j| !mediates(&h, j)) {
        return Err(CoproductUnivError::NotMediating(j));
    }
    let all = enumerate_dframe_homs(cop.dframe(), target, cap)?;
    let count = all
        .iter()
        .filter(|g| (0..cocone.len()).all(|j| mediates(g, j)))
        .count();
    if count != 1 {
        return Err(CoproductUnivError::NotUnique(count));
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dframe::fixtures::{sier, trivial, two_d};

    fn two() -> FinFrame {
        FinFrame::chain(&["0", "1"])
    }

    fn chain3() -> FinFrame {
        FinFrame::chain(&["0", "m", "1"])
    }

    /// Downsets of an `a × b` grid poset, counted as monotone staircase
    /// paths: `C(a + b, a)`.
    fn grid_downsets(a: u64, b: u64) -> u64 {
        (1..=a).fold(1, |acc, k| acc * (b + k) / k)
    }

    #[test]
    fn restricted_product_basics() {
        let cap = Capacity::default();
        let rp = RestrictedProduct::new(vec![chain3(), two()], &cap).unwrap();
        assert_eq!(rp.len(), 6);
        assert_eq!(rp.ones(), rp.encode(&[2, 1]));
        let u = rp.encode(&[1, 1]);
        assert_eq!(rp.coords(rp.star(0, 0, u)), vec![0, 1]);
        assert_eq!(
            rp.coords(rp.meet(rp.encode(&[2, 0]), rp.encode(&[1, 1]))),
            vec![1, 0]
        );
        assert!(rp.in_n(rp.encode(&[2, 0])) && !rp.in_n(u));
        assert_eq!(rp.label(u), "(m,1)");
        assert_eq!(rp.semilattice().top(), rp.ones());
    }

    #[test]
    fn coproduct_sizes_match_grid_oracle() {
        let cap = Capacity::default();
        let c = frame_coproduct(&[two(), two()], &cap).unwrap();
        assert_eq!(c.frame().len(), 2);
        // Nonzero parts of each chain form a grid whose downsets are the
        // elements, plus the bottom n.
        assert_eq!(c.frame().len() as u64, grid_downsets(1, 1));
        let n = c.ideals.ideal(c.n());
        let expected: ElemSet = [[0, 0], [0, 1], [1, 0]]
            .iter()
            .map(|t| c.product.encode(t))
            .collect();
        assert_eq!(n, expected);

        let c = frame_coproduct(&[chain3(), chain3()], &cap).unwrap();
        assert_eq!(c.frame().len(), 6);
        assert_eq!(c.frame().len() as u64, grid_downsets(2, 2));
    }

    #[test]
    fn unary_coproduct_is_the_component() {
        let cap = Capacity::default();
        let c = frame_coproduct(&[chain3()], &cap).unwrap();
        assert_eq!(c.frame().len(), 3);
        assert_eq!(c.injections[0].map(), &[0, 1, 2]);
        assert!(c.presentation.is_stable());
    }

    #[test]
    fn covers_are_stable_and_include_tautologies() {
        let cap = Capacity::default();
        let rp = RestrictedProduct::new(vec![chain3(), chain3()], &cap).unwrap();
        let covers = coproduct_covers(&rp, &cap).unwrap();
        let u = rp.encode(&[1, 2]);
        assert!(covers.contains(&Cover::new(u, [u])));
        let p = FramePresentation::new(rp.semilattice(), covers).unwrap();
        assert!(p.is_stable());
        let closed = crate::presentation::stability_close(&p);
        assert_eq!(closed.covers().len(), p.covers().len());
    }

    #[test]
    fn dframe_coproduct_examples() {
        let cap = Capacity::default();
        let c = dframe_coproduct(&[two_d(), two_d()], &cap).unwrap();
        let d = c.dframe();
        let t = two_d();
        assert_eq!((d.plus.len(), d.minus.len()), (2, 2));
        assert_eq!(
            (d.con.to_vec(), d.tot.to_vec()),
            (t.con.to_vec(), t.tot.to_vec())
        );

        let c = dframe_coproduct(&[sier(), sier()], &cap).unwrap();
        assert_eq!((c.dframe().plus.len(), c.dframe().minus.len()), (6, 6));
        let cert = certify(&c, &cap).unwrap();
        assert!(cert.passes(), "{cert:?}");

        let c = dframe_coproduct(&[sier(), trivial()], &cap).unwrap();
        assert!(c.dframe().is_trivial());
        assert!(check_axioms(c.dframe()).is_dframe());
        assert_eq!(strips_iso_check(&c, 0), StripsIso::NotApplicable);
    }

    #[test]
    fn geometry_examples() {
        let cap = Capacity::default();
        let c = frame_coproduct(&[chain3(), chain3()], &cap).unwrap();
        let comps = c.product.components().to_vec();
        let strip = c.strip(0, 1);
        assert_eq!(classify_geometry(&c, strip).kind(&comps), Geometry::Strip);
        let rect = c.ideals.sem(c.product.encode(&[1, 1]));
        let tag = classify_geometry(&c, rect);
        assert_eq!(tag.kind(&comps), Geometry::Rectangle);
        assert_eq!(tag.rectangle_support(&comps), Some(vec![0, 1]));
        let cross = c.frame().join(c.strip(0, 1), c.strip(1, 1));
        let tag = classify_geometry(&c, cross);
        assert_eq!(tag.kind(&comps), Geometry::Cross);
        assert_eq!(tag.cross_support(&comps), Some(vec![0, 1]));
    }

    #[test]
    fn rec_cross_examples() {
        let cap = Capacity::default();
        let c = frame_coproduct(&[chain3(), chain3()], &cap).unwrap();
        // γ directly below one strip of δ.
        let gamma = c.ideals.sem(c.product.encode(&[1, 1]));
        let delta = c.frame().join(c.strip(0, 1), c.strip(1, 0));
        assert_eq!(rec_cross_check(&c, gamma, delta), Ok(Some(0)));
        // γ = n via (0, 1): its zero coordinate qualifies.
        assert_eq!(rec_cross_check(&c, c.n(), delta), Ok(Some(0)));
        assert_eq!(
            rec_cross_check(&c, c.frame().top(), c.frame().top()),
            Err(RecCrossError::EmptySupport)
        );
        assert_eq!(
            rec_cross_check(&c, c.frame().top(), delta),
            Err(RecCrossError::NotBelow)
        );
        let t = rec_cross_sweep(&c);
        assert_eq!(t.failures, 0);
        assert!(t.qualifying > 0);
        assert_eq!(t.top_excluded, 1);
    }

    #[test]
    fn canonical_forms_round_trip() {
        let cap = Capacity::default();
        let c = dframe_coproduct(&[sier(), sier()], &cap).unwrap();
        let tower = Tower::from_generated(&c.generated);
        for (kind, rel) in [
            (CanonKind::ConMeet, &tower.con_w),
            (CanonKind::ConJoin, &tower.con_v),
            (CanonKind::TotMeet, &tower.tot_w),
            (CanonKind::TotJoin, &tower.tot_v),
        ] {
            for a in rel.iter() {
                let f = canonical_form(&c, a, kind, &cap)
                    .unwrap()
                    .unwrap_or_else(|| panic!("{kind:?} {a:?}"));
                assert_eq!(recombine(&c, &f.parts, kind), a);
            }
        }
        let s = c.space();
        let f = canonical_form(&c, s.tt(), CanonKind::ConMeet, &cap)
            .unwrap()
            .unwrap();
        assert!(f.support.is_empty());
        // A 1-strip pair meets a 2-strip pair: support {0, 1}.
        let m = 1;
        let alpha = s.meet(
            c.strip_pair(0, Pair::new(m, m)),
            c.strip_pair(1, Pair::new(m, m)),
        );
        let f = canonical_form(&c, alpha, CanonKind::ConMeet, &cap)
            .unwrap()
            .unwrap();
        assert_eq!(f.support, vec![0, 1]);
        let comps = c.plus.product.components().to_vec();
        assert_eq!(
            classify_geometry(&c.plus, alpha.plus).kind(&comps),
            Geometry::Rectangle
        );
        assert_eq!(
            classify_geometry(&c.minus, alpha.minus).kind(&comps),
            Geometry::Cross
        );
        // With a zero plus coordinate the rectangle collapses to n.
        let beta = s.meet(
            c.strip_pair(0, Pair::new(m, 0)),
            c.strip_pair(1, Pair::new(0, m)),
        );
        assert_eq!(beta.plus, c.plus.n());
    }

    #[test]
    fn basics_hold() {
        let cap = Capacity::default();
        for comps in [
            vec![chain3(), chain3()],
            vec![chain3(), two()],
            vec![chain3()],
        ] {
            let c = frame_coproduct(&comps, &cap).unwrap();
            let r = copr_basics_suite(&c, &cap).unwrap();
            assert!(r.all_pass(), "{r:?}");
        }
    }

    #[test]
    fn universality_examples() {
        let cap = Capacity::default();
        let c = dframe_coproduct(&[two_d(), two_d()], &cap).unwrap();
        let id = DFrameHom::identity(&two_d());
        let h = coproduct_universal_check(&c, &two_d(), &[id.clone(), id], &cap).unwrap();
        assert_eq!(h.plus.map(), &[0, 1]);

        let c = dframe_coproduct(&[sier(), sier()], &cap).unwrap();
        let h = coproduct_universal_check(&c, c.dframe(), &c.injections.clone(), &cap).unwrap();
        assert_eq!(h, DFrameHom::identity(c.dframe()));

        let c = dframe_coproduct(&[sier(), two_d()], &cap).unwrap();
        let legs = [
            DFrameHom::identity(&sier()),
            DFrameHom {
                plus: FrameHom::new(&two(), &chain3(), vec![0, 2]).unwrap(),
                minus: FrameHom::new(&two(), &chain3(), vec![0, 2]).unwrap(),
            },
        ];
        coproduct_universal_check(&c, &sier(), &legs, &cap).unwrap();

        let bad = [legs[0].clone(), legs[0].clone()];
        assert_eq!(
            coproduct_universal_check(&c, &sier(), &bad, &cap),
            Err(CoproductUnivError::Leg(1))
        );
    }
}
