//! Sufficient conditions for (con-tot) on generated pre-d-frames.
//!
//! Every quantifier ranges over a materialized relation held by [`Tower`],
//! so a failing condition always comes with concrete pairs.

use std::fmt;

use crate::bits::ElemSet;
use crate::capacity::{Capacity, CapacityError};
use crate::closure::{
    big_close, con_by_iteration, d_bar, d_one_step, down_close, tot_closed_form, up_close,
    wedge_vee_close, with_constants, BigOp, Generated, GeneratorSet, LogicOps,
};
use crate::dframe::{con_tot_witness, Pair, PairRelation, PairSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Plus, Side::Minus];

    fn sub(self) -> &'static str {
        match self {
            Side::Plus => "₊",
            Side::Minus => "₋",
        }
    }

    fn ascii(self) -> char {
        match self {
            Side::Plus => '+',
            Side::Minus => '-',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConditionId {
    Lambda(u8, Side),
    Alpha(Side),
    Mu(Side),
    Indep(Side),
    IndSplit(Side),
    RInd,
}

impl ConditionId {
    /// The fixed reporting order.
    pub fn all() -> Vec<ConditionId> {
        let mut out = Vec::new();
        for stage in 0..=4 {
            for side in Side::BOTH {
                out.push(ConditionId::Lambda(stage, side));
            }
        }
        for make in [
            ConditionId::Alpha,
            ConditionId::Mu,
            ConditionId::Indep,
            ConditionId::IndSplit,
        ] {
            for side in Side::BOTH {
                out.push(make(side));
            }
        }
        out.push(ConditionId::RInd);
        out
    }

    /// A plain-ASCII key such as `lambda4+`, for JSON output.
    pub fn key(self) -> String {
        match self {
            ConditionId::Lambda(i, s) => format!("lambda{i}{}", s.ascii()),
            ConditionId::Alpha(s) => format!("alpha{}", s.ascii()),
            ConditionId::Mu(s) => format!("mu{}", s.ascii()),
            ConditionId::Indep(s) => format!("Indep{}", s.ascii()),
            ConditionId::IndSplit(s) => format!("ind{}", s.ascii()),
            ConditionId::RInd => "R-ind".into(),
        }
    }
}

impl fmt::Display for ConditionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const SUP: [&str; 5] = ["⁰", "¹", "²", "³", "⁴"];
        match *self {
            ConditionId::Lambda(i, s) => write!(f, "λ{}{}", SUP[i as usize], s.sub()),
            ConditionId::Alpha(s) => write!(f, "α{}", s.sub()),
            ConditionId::Mu(s) => write!(f, "μ{}", s.sub()),
            ConditionId::Indep(s) => write!(f, "Indep{}", s.sub()),
            ConditionId::IndSplit(s) => write!(f, "↓con∧∨-ind{}", s.sub()),
            ConditionId::RInd => write!(f, "R-ind"),
        }
    }
}

/// A counterexample to a condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// `α` and `β` satisfy the premise but not the conclusion.
    Pairs { alpha: Pair, beta: Pair },
    /// A family sharing one coordinate (`fixed`) whose other coordinates
    /// (`family`) join above `β` on that side.
    Family {
        side: Side,
        fixed: usize,
        family: ElemSet,
        beta: Pair,
    },
    /// A pair in the left-hand side of an inclusion but not the right.
    Outside(Pair),
}

impl Witness {
    pub fn show(&self, s: PairSpace<'_>) -> String {
        match self {
            Witness::Pairs { alpha, beta } => format!("α={}, β={}", s.show(*alpha), s.show(*beta)),
            Witness::Family {
                side,
                fixed,
                family,
                beta,
            } => {
                let members: Vec<String> = family
                    .iter()
                    .map(|x| match side {
                        Side::Plus => s.show(Pair::new(x, *fixed)),
                        Side::Minus => s.show(Pair::new(*fixed, x)),
                    })
                    .collect();
                format!("family {{{}}}, β={}", members.join(","), s.show(*beta))
            }
            Witness::Outside(a) => s.show(*a),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub id: ConditionId,
    pub witness: Option<Witness>,
}

impl ConditionReport {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// Every relation the conditions quantify over, for one instance.
///
/// Every closure is seeded with both logical units `tt` and `ff`, which any
/// con or tot relation of a d-frame contains.
#[derive(Clone, Debug)]
pub struct Tower<'a> {
    pub s: PairSpace<'a>,
    pub gens: GeneratorSet,
    pub con_w: PairRelation,
    pub con_v: PairRelation,
    pub con_wv: PairRelation,
    /// `con_{∧,⋁}`.
    pub con_w_joins: PairRelation,
    /// `con_{∨,⋀}`.
    pub con_v_meets: PairRelation,
    /// `con_{∧,∨,⋁}`.
    pub con_wv_joins: PairRelation,
    /// `con_{∧,∨,⋀}`.
    pub con_wv_meets: PairRelation,
    pub down_con_wv: PairRelation,
    /// `D(↓con_∧∨)`.
    pub scon: PairRelation,
    pub tot_w: PairRelation,
    pub tot_v: PairRelation,
    pub tot_wv: PairRelation,
    /// `↑tot_∧∨`.
    pub tot: PairRelation,
}

impl<'a> Tower<'a> {
    pub fn new(
        s: PairSpace<'a>,
        gens: GeneratorSet,
        con1: &PairRelation,
        tot1: &PairRelation,
    ) -> Self {
        let con1 = with_constants(s, con1);
        let tot1 = with_constants(s, tot1);
        let con_w = wedge_vee_close(s, &con1, LogicOps::Meet);
        let con_v = wedge_vee_close(s, &con1, LogicOps::Join);
        let con_wv = wedge_vee_close(s, &con1, LogicOps::Both);
        let con_w_joins = big_close(s, &con_w, BigOp::Joins);
        let con_v_meets = big_close(s, &con_v, BigOp::Meets);
        let con_wv_joins = big_close(s, &con_wv, BigOp::Joins);
        let con_wv_meets = big_close(s, &con_wv, BigOp::Meets);
        let down_con_wv = down_close(s, &con_wv);
        let scon = d_one_step(&down_con_wv);
        let tot_w = wedge_vee_close(s, &tot1, LogicOps::Meet);
        let tot_v = wedge_vee_close(s, &tot1, LogicOps::Join);
        let tot_wv = wedge_vee_close(s, &tot1, LogicOps::Both);
        let tot = up_close(s, &tot_wv);
        Tower {
            s,
            gens,
            con_w,
            con_v,
            con_wv,
            con_w_joins,
            con_v_meets,
            con_wv_joins,
            con_wv_meets,
            down_con_wv,
            scon,
            tot_w,
            tot_v,
            tot_wv,
            tot,
        }
    }

    pub fn from_generated(g: &'a Generated) -> Self {
        Tower::new(g.space(), g.generators(), &g.con1, &g.tot1)
    }

    /// The `(α, β)` ranges of the stage, `μ` and order-shaped conditions.
    fn ranges(&self, id: ConditionId) -> Option<(&PairRelation, &PairRelation)> {
        use ConditionId::*;
        use Side::*;
        Some(match id {
            Lambda(0, _) => (&self.scon, &self.tot),
            Lambda(1, _) => (&self.scon, &self.tot_wv),
            Lambda(2, Plus) => (&self.scon, &self.tot_w),
            Lambda(2, Minus) => (&self.scon, &self.tot_v),
            Lambda(3, Plus) => (&self.con_wv_joins, &self.tot_w),
            Lambda(3, Minus) => (&self.con_wv_meets, &self.tot_v),
            Lambda(4, Plus) => (&self.con_w_joins, &self.tot_w),
            Lambda(4, Minus) => (&self.con_v_meets, &self.tot_v),
            Mu(Plus) => (&self.con_v, &self.tot_w),
            Mu(Minus) => (&self.con_w, &self.tot_v),
            _ => return None,
        })
    }

    /// Premise and conclusion of the order-shaped conditions. Stage 0 asks
    /// for equality on the premise side, the others for `β ≤ α` there.
    fn order_violated(&self, id: ConditionId, alpha: Pair, beta: Pair) -> bool {
        let exact = matches!(id, ConditionId::Lambda(0, _));
        let (p, m) = (self.s.plus, self.s.minus);
        match side_of(id) {
            Side::Plus => {
                let premise = if exact {
                    alpha.plus == beta.plus
                } else {
                    p.leq(beta.plus, alpha.plus)
                };
                premise && !m.leq(alpha.minus, beta.minus)
            }
            Side::Minus => {
                let premise = if exact {
                    alpha.minus == beta.minus
                } else {
                    m.leq(beta.minus, alpha.minus)
                };
                premise && !p.leq(alpha.plus, beta.plus)
            }
        }
    }

    fn order_condition(&self, id: ConditionId) -> ConditionReport {
        let (a, b) = self.ranges(id).expect("order-shaped condition");
        let witness = a.iter().find_map(|alpha| {
            b.iter()
                .find(|&beta| self.order_violated(id, alpha, beta))
                .map(|beta| Witness::Pairs { alpha, beta })
        });
        ConditionReport { id, witness }
    }

    pub fn check_lambda(&self, stage: u8, side: Side) -> ConditionReport {
        assert!(stage <= 4, "stages run from 0 to 4");
        self.order_condition(ConditionId::Lambda(stage, side))
    }

    pub fn check_mu(&self, side: Side) -> ConditionReport {
        self.order_condition(ConditionId::Mu(side))
    }

    /// `α₊`: families `{(xᵏ, y)} ⊆ ↓con_∧∨`, `β ∈ tot_∧`, `β₊ ≤ ⋁xᵏ ⟹ y ≤ β₋`.
    /// For a fixed `y` only the joins reachable from the column matter; each
    /// is recorded with one family reaching it.
    pub fn check_alpha_aux(&self, side: Side) -> ConditionReport {
        let id = ConditionId::Alpha(side);
        let (fixed_frame, free_frame, beta_range) = match side {
            Side::Plus => (self.s.minus, self.s.plus, &self.tot_w),
            Side::Minus => (self.s.plus, self.s.minus, &self.tot_v),
        };
        for fixed in fixed_frame.elements() {
            let column = match side {
                Side::Plus => self.down_con_wv.column(fixed),
                Side::Minus => self.down_con_wv.row(fixed),
            };
            let mut reach: Vec<(usize, ElemSet)> = Vec::new();
            for x in column.iter() {
                let known = reach.clone();
                if !reach.iter().any(|&(j, _)| j == x) {
                    reach.push((x, ElemSet::singleton(x)));
                }
                for (j, fam) in known {
                    let k = free_frame.join(j, x);
                    if !reach.iter().any(|&(v, _)| v == k) {
                        reach.push((k, fam.with(x)));
                    }
                }
            }
            for &(joined, family) in &reach {
                for beta in beta_range.iter() {
                    let (b_free, b_fixed) = match side {
                        Side::Plus => (beta.plus, beta.minus),
                        Side::Minus => (beta.minus, beta.plus),
                    };
                    if free_frame.leq(b_free, joined) && !fixed_frame.leq(fixed, b_fixed) {
                        return ConditionReport {
                            id,
                            witness: Some(Witness::Family {
                                side,
                                fixed,
                                family,
                                beta,
                            }),
                        };
                    }
                }
            }
        }
        ConditionReport { id, witness: None }
    }

    /// `Indep₊: (L₊ × B₋) ∩ ↓con_{∧,⋁} ⊆ ↓con_∨` and its dual.
    pub fn check_indep(&self, side: Side) -> ConditionReport {
        let (np, nm) = self.con_wv.dims();
        let (lhs, rhs) = match side {
            Side::Plus => (
                PairRelation::product(np, nm, self.s.plus.all(), self.gens.minus)
                    .intersection(&down_close(self.s, &self.con_w_joins)),
                down_close(self.s, &self.con_v),
            ),
            Side::Minus => (
                PairRelation::product(np, nm, self.gens.plus, self.s.minus.all())
                    .intersection(&down_close(self.s, &self.con_v_meets)),
                down_close(self.s, &self.con_w),
            ),
        };
        inclusion(ConditionId::Indep(side), &lhs, &rhs)
    }

    /// `↓con_∧∨-ind₊: (B₊ × B₋) ∩ ↓con_{∧,⋁} ⊆ ↓con_∧∨` and its dual.
    pub fn check_indep_split(&self, side: Side) -> ConditionReport {
        let family = match side {
            Side::Plus => &self.con_w_joins,
            Side::Minus => &self.con_v_meets,
        };
        let lhs = self
            .gens
            .product(self.s)
            .intersection(&down_close(self.s, family));
        inclusion(ConditionId::IndSplit(side), &lhs, &self.down_con_wv)
    }

    /// Re-evaluates a failing report from scratch; `true` when the witness is
    /// a genuine violation of the condition.
    pub fn recheck(&self, report: &ConditionReport) -> bool {
        let Some(w) = &report.witness else {
            return false;
        };
        let id = report.id;
        match (id, w) {
            (ConditionId::Lambda(..) | ConditionId::Mu(_), Witness::Pairs { alpha, beta }) => {
                let (a, b) = self.ranges(id).expect("order-shaped condition");
                a.contains(*alpha) && b.contains(*beta) && self.order_violated(id, *alpha, *beta)
            }
            (
                ConditionId::Alpha(side),
                Witness::Family {
                    side: wside,
                    fixed,
                    family,
                    beta,
                },
            ) => {
                if family.is_empty() || side != *wside {
                    return false;
                }
                let (s, dc) = (self.s, &self.down_con_wv);
                match side {
                    Side::Plus => {
                        family.iter().all(|x| dc.contains(Pair::new(x, *fixed)))
                            && self.tot_w.contains(*beta)
                            && s.plus.leq(beta.plus, s.plus.join_all(*family))
                            && !s.minus.leq(*fixed, beta.minus)
                    }
                    Side::Minus => {
                        family.iter().all(|y| dc.contains(Pair::new(*fixed, y)))
                            && self.tot_v.contains(*beta)
                            && s.minus.leq(beta.minus, s.minus.join_all(*family))
                            && !s.plus.leq(*fixed, beta.plus)
                    }
                }
            }
            (ConditionId::Indep(side), Witness::Outside(a)) => {
                let in_lhs = match side {
                    Side::Plus => {
                        self.gens.minus.contains(a.minus) && in_down(self.s, &self.con_w_joins, *a)
                    }
                    Side::Minus => {
                        self.gens.plus.contains(a.plus) && in_down(self.s, &self.con_v_meets, *a)
                    }
                };
                let rhs = match side {
                    Side::Plus => &self.con_v,
                    Side::Minus => &self.con_w,
                };
                in_lhs && !in_down(self.s, rhs, *a)
            }
            (ConditionId::IndSplit(side), Witness::Outside(a)) => {
                let family = match side {
                    Side::Plus => &self.con_w_joins,
                    Side::Minus => &self.con_v_meets,
                };
                self.gens.plus.contains(a.plus)
                    && self.gens.minus.contains(a.minus)
                    && in_down(self.s, family, *a)
                    && !in_down(self.s, &self.con_wv, *a)
            }
            (ConditionId::RInd, Witness::Outside(a)) => {
                self.gens.plus.contains(a.plus)
                    && self.gens.minus.contains(a.minus)
                    && !self.down_con_wv.contains(*a)
            }
            _ => false,
        }
    }
}

fn side_of(id: ConditionId) -> Side {
    match id {
        ConditionId::Lambda(_, s)
        | ConditionId::Alpha(s)
        | ConditionId::Mu(s)
        | ConditionId::Indep(s)
        | ConditionId::IndSplit(s) => s,
        ConditionId::RInd => Side::Plus,
    }
}

/// `a ∈ ↓R`, by scanning `R`.
fn in_down(s: PairSpace<'_>, r: &PairRelation, a: Pair) -> bool {
    r.iter().any(|b| s.info_leq(a, b))
}

fn inclusion(id: ConditionId, lhs: &PairRelation, rhs: &PairRelation) -> ConditionReport {
    ConditionReport {
        id,
        witness: lhs.difference(rhs).iter().next().map(Witness::Outside),
    }
}

/// Outcome of the independence criterion `(B₊ × B₋) ∩ D̄(R) ⊆ R`, with the
/// verdict of the original per-pair form alongside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RIndOutcome {
    pub report: ConditionReport,
    /// `B₊(α₊) × B₋(α₋) ⊆ R` for every `α ∈ D̄(R)`.
    pub original_holds: bool,
}

impl RIndOutcome {
    pub fn agrees(&self) -> bool {
        self.report.holds() == self.original_holds
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RIndError {
    #[error("relation is not down-closed: {0:?} is missing")]
    NotDownClosed(Pair),
    #[error("relation is not closed under logical meet and join: {0:?} is missing")]
    NotWedgeVeeClosed(Pair),
    #[error(transparent)]
    Capacity(#[from] CapacityError),
}

pub fn check_r_ind(
    s: PairSpace<'_>,
    r: &PairRelation,
    gens: &GeneratorSet,
    cap: &Capacity,
) -> Result<RIndOutcome, RIndError> {
    if let Some(a) = down_close(s, r).difference(r).iter().next() {
        return Err(RIndError::NotDownClosed(a));
    }
    if let Some(a) = wedge_vee_close(s, r, LogicOps::Both)
        .difference(r)
        .iter()
        .next()
    {
        return Err(RIndError::NotWedgeVeeClosed(a));
    }
    let db = d_bar(s, r, gens, cap)?;
    let report = inclusion(ConditionId::RInd, &gens.product(s).intersection(&db), r);
    let original_holds = db.iter().all(|a| {
        let (bp, bm) = (gens.below_plus(s, a.plus), gens.below_minus(s, a.minus));
        bp.iter()
            .all(|x| bm.iter().all(|y| r.contains(Pair::new(x, y))))
    });
    Ok(RIndOutcome {
        report,
        original_holds,
    })
}

/// One asserted or observed implication on one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Implication {
    pub name: String,
    pub premise: bool,
    pub conclusion: bool,
    /// Asserted implications are claimed to hold; the others are statistics.
    pub asserted: bool,
}

impl Implication {
    pub fn violated(&self) -> bool {
        self.premise && !self.conclusion
    }
}

/// All conditions, both gates and the implication table for one instance.
#[derive(Clone, Debug)]
pub struct InstanceReport {
    pub reports: Vec<ConditionReport>,
    /// Ground truth: a (con-tot) witness on the generated pre-d-frame.
    pub con_tot_witness: Option<(Pair, Pair)>,
    /// `λ⁴± ∧ ↓con_∧∨-ind±`.
    pub lambda_bundle: bool,
    /// `μ± ∧ Indep±`.
    pub mu_bundle: bool,
    pub implications: Vec<Implication>,
    pub witnesses_recheck: bool,
}

impl InstanceReport {
    pub fn get(&self, id: ConditionId) -> &ConditionReport {
        self.reports
            .iter()
            .find(|r| r.id == id)
            .expect("every condition is evaluated")
    }

    pub fn holds(&self, id: ConditionId) -> bool {
        self.get(id).holds()
    }

    pub fn con_tot(&self) -> bool {
        self.con_tot_witness.is_none()
    }

    /// Asserted implications that fail on this instance.
    pub fn violations(&self) -> impl Iterator<Item = &Implication> {
        self.implications
            .iter()
            .filter(|i| i.asserted && i.violated())
    }

    /// Ground truth holds but a bundle does not.
    pub fn separates(&self) -> bool {
        self.con_tot() && !(self.lambda_bundle && self.mu_bundle)
    }
}

/// Evaluates every condition on `g`, checks both gates against the ground
/// truth, and records the stage implications.
pub fn evaluate(g: &Generated, cap: &Capacity) -> Result<InstanceReport, CapacityError> {
    let t = Tower::from_generated(g);
    let s = t.s;
    let mut reports = Vec::new();
    for id in ConditionId::all() {
        reports.push(match id {
            ConditionId::Lambda(i, side) => t.check_lambda(i, side),
            ConditionId::Alpha(side) => t.check_alpha_aux(side),
            ConditionId::Mu(side) => t.check_mu(side),
            ConditionId::Indep(side) => t.check_indep(side),
            ConditionId::IndSplit(side) => t.check_indep_split(side),
            ConditionId::RInd => continue,
        });
    }
    let r_ind = match check_r_ind(s, &t.down_con_wv, &t.gens, cap) {
        Ok(out) => out,
        Err(RIndError::Capacity(e)) => return Err(e),
        Err(e) => unreachable!("↓con_∧∨ is down-closed and ∧∨-closed: {e}"),
    };
    reports.push(r_ind.report.clone());
    let forms = Implication {
        name: "R-ind compact ⟺ original".into(),
        premise: !r_ind.agrees(),
        conclusion: false,
        asserted: true,
    };
    let con_tot_witness = con_tot_witness(s, &g.dframe.con, &g.dframe.tot);
    finish(&t, g, reports, vec![forms], con_tot_witness, cap)
}

fn finish(
    t: &Tower<'_>,
    g: &Generated,
    reports: Vec<ConditionReport>,
    mut implications: Vec<Implication>,
    con_tot_witness: Option<(Pair, Pair)>,
    cap: &Capacity,
) -> Result<InstanceReport, CapacityError> {
    let holds = |id: ConditionId| {
        reports
            .iter()
            .find(|r| r.id == id)
            .expect("evaluated")
            .holds()
    };
    use ConditionId::*;
    let mut imp = |name: String, premise: bool, conclusion: bool, asserted: bool| {
        implications.push(Implication {
            name,
            premise,
            conclusion,
            asserted,
        })
    };
    for side in Side::BOTH {
        let l = |i: u8| holds(Lambda(i, side));
        for (a, b, asserted) in [
            (1, 0, true),
            (0, 1, true),
            (2, 1, true),
            (1, 2, true),
            (3, 2, true),
            (2, 3, false),
            (4, 3, true),
            (3, 4, true),
            (4, 1, true),
            (1, 4, true),
        ] {
            imp(
                format!("{} ⟹ {}", Lambda(a, side), Lambda(b, side)),
                l(a),
                l(b),
                asserted,
            );
        }
        imp(
            format!("{} ⟹ {}", Alpha(side), Lambda(2, side)),
            holds(Alpha(side)),
            l(2),
            true,
        );
        imp(
            format!("{} ⟹ {}", Indep(side), IndSplit(side)),
            holds(Indep(side)),
            holds(IndSplit(side)),
            true,
        );
    }
    let split = holds(IndSplit(Side::Plus)) && holds(IndSplit(Side::Minus));
    imp("ind₊ ∧ ind₋ ⟹ R-ind".into(), split, holds(RInd), true);
    imp("R-ind ⟹ ind₊ ∧ ind₋".into(), holds(RInd), split, true);

    let both = |f: fn(Side) -> ConditionId| Side::BOTH.iter().all(|&s| holds(f(s)));
    let lambda_bundle = both(|s| Lambda(4, s)) && both(IndSplit);
    let mu_bundle = both(Mu) && both(Indep);
    let ground = con_tot_witness.is_none();
    imp("λ⁴± ∧ ind± ⟹ (con-tot)".into(), lambda_bundle, ground, true);
    imp("μ± ∧ Indep± ⟹ (con-tot)".into(), mu_bundle, ground, true);
    imp(
        "(con-tot) ⟹ λ⁰±".into(),
        ground,
        both(|s| Lambda(0, s)),
        true,
    );

    let s = t.s;
    let (con, steps) = con_by_iteration(s, &g.con1, cap)?;
    let corollary =
        con == g.dframe.con && steps <= 1 && tot_closed_form(s, &g.tot1) == g.dframe.tot;
    imp(
        "closed forms of CON and TOT".into(),
        !corollary,
        false,
        true,
    );
    imp(
        "D(↓con_∧∨) = CON".into(),
        t.scon != g.dframe.con,
        false,
        true,
    );

    let witnesses_recheck = reports.iter().all(|r| r.holds() || t.recheck(r));
    Ok(InstanceReport {
        reports,
        con_tot_witness,
        lambda_bundle,
        mu_bundle,
        implications,
        witnesses_recheck,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::{generate_pre_dframe, PreDFramePresentation};
    use crate::dframe::fixtures::sier;
    use crate::lattice::FinFrame;
    use crate::presentation::self_presentation;

    fn generate(frame: &FinFrame, con1: &[(usize, usize)], tot1: &[(usize, usize)]) -> Generated {
        let p = self_presentation(frame);
        let n = frame.len();
        let rel = |ps: &[(usize, usize)]| {
            let mut r = PairRelation::empty(n, n);
            for &(a, b) in ps {
                r.insert(Pair::new(a, b));
            }
            r
        };
        let pre = PreDFramePresentation::new(p.clone(), p, rel(con1), rel(tot1)).unwrap();
        generate_pre_dframe(&pre, &Capacity::default()).unwrap()
    }

    fn sier_generated() -> Generated {
        let si = sier();
        let con: Vec<_> = si.con.iter().map(|a| (a.plus, a.minus)).collect();
        let tot: Vec<_> = si.tot.iter().map(|a| (a.plus, a.minus)).collect();
        generate(&si.plus, &con, &tot)
    }

    fn assert_consistent(r: &InstanceReport) {
        let bad: Vec<_> = r.violations().collect();
        assert!(bad.is_empty(), "{bad:?}");
        assert!(r.witnesses_recheck);
    }

    #[test]
    fn sier_self_presentation_satisfies_everything() {
        let g = sier_generated();
        let r = evaluate(&g, &Capacity::default()).unwrap();
        for c in &r.reports {
            assert!(c.holds(), "{} fails: {:?}", c.id, c.witness);
        }
        assert!(r.con_tot() && r.lambda_bundle && r.mu_bundle);
        assert_consistent(&r);
    }

    #[test]
    fn inconsistent_top_pair_fails_stage_zero() {
        let two = FinFrame::chain(&["0", "1"]);
        let g = generate(&two, &[(1, 1)], &[(1, 0)]);
        let r = evaluate(&g, &Capacity::default()).unwrap();
        let l0 = r.get(ConditionId::Lambda(0, Side::Plus));
        assert_eq!(
            l0.witness,
            Some(Witness::Pairs {
                alpha: Pair::new(1, 1),
                beta: Pair::new(1, 0)
            })
        );
        assert!(!r.holds(ConditionId::Alpha(Side::Plus)));
        match &r.get(ConditionId::Alpha(Side::Plus)).witness {
            Some(Witness::Family { family, .. }) => assert_eq!(family.len(), 1),
            w => panic!("unexpected witness {w:?}"),
        }
        assert!(!r.holds(ConditionId::Mu(Side::Plus)));
        assert!(!r.con_tot() && !r.lambda_bundle && !r.mu_bundle);
        assert_consistent(&r);
    }

    #[test]
    fn empty_generating_relations_hold() {
        for frame in [
            FinFrame::chain(&["0", "1"]),
            FinFrame::chain(&["0", "m", "1"]),
        ] {
            let g = generate(&frame, &[], &[]);
            let r = evaluate(&g, &Capacity::default()).unwrap();
            for c in &r.reports {
                assert!(c.holds(), "{} fails: {:?}", c.id, c.witness);
            }
            assert_consistent(&r);
        }
    }

    #[test]
    fn trivial_frames_hold_vacuously() {
        let one = FinFrame::trivial();
        let g = generate(&one, &[], &[]);
        let r = evaluate(&g, &Capacity::default()).unwrap();
        assert!(r.reports.iter().all(ConditionReport::holds));
        assert_consistent(&r);
    }

    #[test]
    fn r_ind_examples() {
        let cap = Capacity::default();
        let si = sier();
        let s = si.space();
        let out = check_r_ind(s, &si.con, &GeneratorSet::full(s), &cap).unwrap();
        assert!(out.report.holds() && out.agrees());

        let c = FinFrame::chain(&["0", "m", "1"]);
        let s = PairSpace::new(&c, &c);
        let axes = s.relation(s.pairs().filter(|p| p.plus == 0 || p.minus == 0));
        for gens in [GeneratorSet::full(s), GeneratorSet::irreducible(s)] {
            let out = check_r_ind(s, &axes, &gens, &cap).unwrap();
            assert!(out.report.holds() && out.agrees());
        }

        // Without the axes, D̄ adds (0, 1) from the empty plus family.
        let two = FinFrame::chain(&["0", "1"]);
        let s = PairSpace::new(&two, &two);
        let r = s.relation([Pair::new(0, 0)]);
        let gens = GeneratorSet {
            plus: two.all(),
            minus: two.all(),
        };
        let out = check_r_ind(s, &r, &gens, &cap).unwrap();
        assert_eq!(out.report.witness, Some(Witness::Outside(Pair::new(0, 1))));
        assert!(out.agrees());

        assert_eq!(
            check_r_ind(s, &s.relation([s.tt()]), &gens, &cap),
            Err(RIndError::NotDownClosed(Pair::new(0, 0)))
        );
        // Over 2² × 2, (a,0) ∨ (b,0) = (ab,0) lies outside ↓{(a,1),(b,1)}.
        let sq = FinFrame::from_sets(
            ["", "a", "b", "ab"].map(String::from).to_vec(),
            &[ElemSet(0), ElemSet(1), ElemSet(2), ElemSet(3)],
        )
        .unwrap();
        let s = PairSpace::new(&sq, &two);
        let r = down_close(s, &s.relation([Pair::new(1, 1), Pair::new(2, 1)]));
        let gens = GeneratorSet::full(s);
        assert_eq!(
            check_r_ind(s, &r, &gens, &cap),
            Err(RIndError::NotWedgeVeeClosed(Pair::new(3, 0)))
        );
    }

    #[test]
    fn forged_witnesses_do_not_recheck() {
        let g = sier_generated();
        let t = Tower::from_generated(&g);
        let fake = ConditionReport {
            id: ConditionId::Lambda(1, Side::Plus),
            witness: Some(Witness::Pairs {
                alpha: Pair::new(0, 0),
                beta: Pair::new(2, 0),
            }),
        };
        assert!(!t.recheck(&fake));
        let fake = ConditionReport {
            id: ConditionId::RInd,
            witness: Some(Witness::Outside(Pair::new(0, 0))),
        };
        assert!(!t.recheck(&fake));
    }

    #[test]
    fn ids_have_fixed_order_and_names() {
        let ids = ConditionId::all();
        assert_eq!(ids.len(), 19);
        assert_eq!(ids[0].to_string(), "λ⁰₊");
        assert_eq!(ids[9].to_string(), "λ⁴₋");
        assert_eq!(ids[9].key(), "lambda4-");
        assert_eq!(ids.last().unwrap().to_string(), "R-ind");
    }

    /// Every relation pair over CHAIN_3 presented by itself, up to two
    /// generating pairs on each side.
    #[test]
    fn small_sweep_is_consistent() {
        let c = FinFrame::chain(&["0", "m", "1"]);
        let pairs: Vec<(usize, usize)> = (0..3).flat_map(|a| (0..3).map(move |b| (a, b))).collect();
        let mut small: Vec<Vec<(usize, usize)>> = vec![vec![]];
        for (i, &a) in pairs.iter().enumerate() {
            small.push(vec![a]);
            for &b in &pairs[i + 1..] {
                small.push(vec![a, b]);
            }
        }
        let cap = Capacity::default();
        for con in &small {
            for tot in small.iter().step_by(3) {
                let g = generate(&c, con, tot);
                assert_consistent(&evaluate(&g, &cap).unwrap());
            }
        }
    }
}
