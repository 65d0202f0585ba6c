//! Sweeps over small pre-d-frame presentations.
//!
//! Each instance is generated and evaluated with [`evaluate`]. The sweep
//! collects asserted implications that fail (there should be none) and
//! instances where `(con-tot)` holds without either sufficient bundle.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bits::ElemSet;
use crate::capacity::{Capacity, CapacityError};
use crate::closure::{generate_pre_dframe, PreDFrameError, PreDFramePresentation};
use crate::conditions::{evaluate, ConditionId, InstanceReport};
use crate::dframe::{Pair, PairRelation};
use crate::presentation::{
    enumerate_c_ideals, stability_close, Cover, FramePresentation, MeetSemilattice,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Exhaustive,
    Random,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    /// Largest `|B₊|` and `|B₋|`.
    pub max_b: usize,
    /// Largest `|con₁|` and `|tot₁|`.
    pub max_rel: usize,
    pub mode: SearchMode,
    /// Instances drawn in random mode.
    pub samples: usize,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_b: 2,
            max_rel: 2,
            mode: SearchMode::Exhaustive,
            samples: 1000,
            seed: 0,
        }
    }
}

/// Exhaustive sweeps stop at three generators per side.
pub const EXHAUSTIVE_MAX_B: usize = 3;

/// Largest powerset used for random generator semilattices.
const RANDOM_POINTS: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("{0} must be positive")]
    NotPositive(&'static str),
    #[error("exhaustive mode allows --max-b up to {EXHAUSTIVE_MAX_B}, got {0}")]
    ExhaustiveTooLarge(usize),
    #[error(transparent)]
    Capacity(#[from] CapacityError),
    #[error("generated instance is malformed: {0}")]
    Generation(String),
}

impl SearchConfig {
    pub fn validate(&self) -> Result<(), SearchError> {
        if self.max_b == 0 {
            return Err(SearchError::NotPositive("max-b"));
        }
        if self.max_rel == 0 {
            return Err(SearchError::NotPositive("max-rel"));
        }
        match self.mode {
            SearchMode::Exhaustive if self.max_b > EXHAUSTIVE_MAX_B => {
                Err(SearchError::ExhaustiveTooLarge(self.max_b))
            }
            SearchMode::Random if self.samples == 0 => Err(SearchError::NotPositive("samples")),
            _ => Ok(()),
        }
    }
}

/// One reported instance.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Finding {
    pub detail: String,
    pub instance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImplicationTally {
    pub name: String,
    pub asserted: bool,
    pub premise: usize,
    pub violated: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub config: SearchConfig,
    pub instances: usize,
    pub con_tot: usize,
    /// `(key, instances where it holds)` in the fixed condition order.
    pub conditions: Vec<(String, usize)>,
    pub implications: Vec<ImplicationTally>,
    pub violations: Vec<Finding>,
    pub separations: usize,
    /// The first few separating instances in sorted order.
    pub separation_examples: Vec<Finding>,
    pub witness_recheck_failures: usize,
}

/// How many separating instances are listed in full.
pub const SEPARATION_EXAMPLES: usize = 10;

impl SearchReport {
    pub fn clean(&self) -> bool {
        self.violations.is_empty() && self.witness_recheck_failures == 0
    }

    /// Plain text with a fixed line order.
    pub fn to_text(&self) -> String {
        let c = &self.config;
        let mut out = String::new();
        let mode = match c.mode {
            SearchMode::Exhaustive => "exhaustive".to_string(),
            SearchMode::Random => format!("random samples={} seed={}", c.samples, c.seed),
        };
        out.push_str(&format!(
            "search max-b={} max-rel={} mode={}\n",
            c.max_b, c.max_rel, mode
        ));
        out.push_str(&format!("instances {}\n", self.instances));
        out.push_str(&format!("con-tot {}\n", self.con_tot));
        out.push_str("\ncondition holds\n");
        for (k, n) in &self.conditions {
            out.push_str(&format!("{k} {n}\n"));
        }
        out.push_str("\nimplication | asserted | premise | violated\n");
        for t in &self.implications {
            out.push_str(&format!(
                "{} | {} | {} | {}\n",
                t.name,
                if t.asserted { "yes" } else { "no" },
                t.premise,
                t.violated
            ));
        }
        out.push_str(&format!("\nviolations {}\n", self.violations.len()));
        for f in &self.violations {
            out.push_str(&format!("violation {}: {}\n", f.detail, f.instance));
        }
        out.push_str(&format!("witness-recheck-failures {}\n", self.witness_recheck_failures));
        out.push_str(&format!("separations {}\n", self.separations));
        for f in &self.separation_examples {
            out.push_str(&format!("separation {}: {}\n", f.detail, f.instance));
        }
        out
    }
}

/// A one-line description: generators, covers, then both relations.
pub fn describe(p: &PreDFramePresentation) -> String {
    fn side(pres: &FramePresentation) -> String {
        let b = pres.base();
        let labels: Vec<&str> = (0..b.len()).map(|i| b.label(i)).collect();
        let order: Vec<String> = b
            .poset()
            .hasse()
            .iter()
            .map(|&(x, y)| format!("{}<{}", b.label(x), b.label(y)))
            .collect();
        let covers: Vec<String> = pres
            .covers()
            .iter()
            .map(|c| {
                let us: Vec<&str> = c.coverers.iter().map(|u| b.label(u)).collect();
                let mut parts = vec![b.label(c.covered), "<="];
                parts.extend(us);
                parts.join(" ")
            })
            .collect();
        format!(
            "[{}; {}] covers [{}]",
            labels.join(" "),
            order.join(" "),
            covers.join("; ")
        )
    }
    let rel = |r: &PairRelation| {
        let v: Vec<String> = r
            .iter()
            .map(|a| {
                format!(
                    "({} {})",
                    p.plus.base().label(a.plus),
                    p.minus.base().label(a.minus)
                )
            })
            .collect();
        format!("[{}]", v.join(" "))
    };
    format!(
        "B+ {} | B- {} | con1 {} | tot1 {}",
        side(&p.plus),
        side(&p.minus),
        rel(&p.con1),
        rel(&p.tot1)
    )
}

fn chain(n: usize) -> MeetSemilattice {
    let labels: Vec<String> = match n {
        1 => vec!["1".into()],
        2 => vec!["0".into(), "1".into()],
        _ => (0..n)
            .map(|i| match i {
                0 => "0".to_string(),
                i if i + 1 == n => "1".to_string(),
                i => format!("m{i}"),
            })
            .collect(),
    };
    let pairs: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    MeetSemilattice::from_generating(labels, &pairs).expect("a chain is a meet-semilattice")
}

/// Covers `U ⊣ a` with `U ⊆ ↓a` and `a ∉ U`.
fn proper_covers(b: &MeetSemilattice) -> Vec<Cover> {
    let mut out = Vec::new();
    for a in 0..b.len() {
        let below = b.poset().down(a).difference(ElemSet::singleton(a));
        let members: Vec<usize> = below.iter().collect();
        for mask in 0u64..(1 << members.len()) {
            let u = (0..members.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| members[i]);
            out.push(Cover::new(a, u));
        }
    }
    out
}

/// Every stable presentation on a chain of at most `max_b` generators, one
/// per distinct C-ideal family. Presentations with the same C-ideals
/// generate the same pre-d-frame.
pub fn exhaustive_presentations(
    max_b: usize,
    cap: &Capacity,
) -> Result<Vec<FramePresentation>, SearchError> {
    let mut out = Vec::new();
    for n in 1..=max_b {
        let base = chain(n);
        let candidates = proper_covers(&base);
        let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
        for mask in 0u64..(1 << candidates.len()) {
            let covers = (0..candidates.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| candidates[i]);
            let p = FramePresentation::new(base.clone(), covers)
                .map_err(|e| SearchError::Generation(e.to_string()))?;
            let p = stability_close(&p);
            let ideals = enumerate_c_ideals(&p, cap).map_err(|e| match e {
                crate::presentation::PresentationError::Capacity(c) => SearchError::Capacity(c),
                e => SearchError::Generation(e.to_string()),
            })?;
            let key: Vec<u64> = ideals.ideals().iter().map(|s| s.0).collect();
            if seen.insert(key) {
                out.push(p);
            }
        }
    }
    Ok(out)
}

/// Every relation on `n_plus × n_minus` with at most `max_rel` pairs,
/// ordered by size then lexicographically.
pub fn small_relations(n_plus: usize, n_minus: usize, max_rel: usize) -> Vec<PairRelation> {
    let pairs: Vec<Pair> = (0..n_plus)
        .flat_map(|p| (0..n_minus).map(move |q| Pair::new(p, q)))
        .collect();
    let mut out = vec![PairRelation::empty(n_plus, n_minus)];
    fn go(
        pairs: &[Pair],
        start: usize,
        left: usize,
        cur: &mut PairRelation,
        out: &mut Vec<PairRelation>,
    ) {
        if left == 0 {
            return;
        }
        for i in start..pairs.len() {
            cur.insert(pairs[i]);
            out.push(cur.clone());
            go(pairs, i + 1, left - 1, cur, out);
            cur.remove(pairs[i]);
        }
    }
    let mut cur = PairRelation::empty(n_plus, n_minus);
    go(&pairs, 0, max_rel, &mut cur, &mut out);
    out.sort_by_key(|r| r.len());
    out
}

fn set_label(points: &[&str], s: ElemSet) -> String {
    let names: Vec<&str> = s.iter().map(|i| points[i]).collect();
    format!("{{{}}}", names.join(","))
}

/// A random meet-subsemilattice of a small powerset containing the whole
/// set, with random covers `U ⊣ a` such that `⋃U = a` there.
fn random_presentation(rng: &mut ChaCha8Rng, max_b: usize) -> FramePresentation {
    const POINTS: [&str; RANDOM_POINTS] = ["x", "y", "z"];
    const TRIES: usize = 64;
    let mut sets = vec![ElemSet::full(1)];
    let mut n = 1;
    for _ in 0..TRIES {
        n = rng.gen_range(1..=RANDOM_POINTS);
        let all = ElemSet::full(n);
        let mut fam: BTreeSet<u64> = BTreeSet::from([all.0]);
        for s in 0..all.0 {
            if rng.gen_bool(0.35) {
                fam.insert(s);
            }
        }
        loop {
            let cur: Vec<u64> = fam.iter().copied().collect();
            let before = fam.len();
            for &a in &cur {
                for &b in &cur {
                    fam.insert(a & b);
                }
            }
            if fam.len() == before {
                break;
            }
        }
        if fam.len() <= max_b {
            sets = fam.into_iter().map(ElemSet).collect();
            break;
        }
    }
    if sets.len() == 1 {
        n = 1;
        sets = vec![ElemSet::full(1)];
    }
    let points = &POINTS[..n];
    let labels: Vec<String> = sets.iter().map(|&s| set_label(points, s)).collect();
    let mut pairs = Vec::new();
    for (i, a) in sets.iter().enumerate() {
        for (j, b) in sets.iter().enumerate() {
            if i != j && a.is_subset(*b) {
                pairs.push((i, j));
            }
        }
    }
    let base = MeetSemilattice::from_generating(labels, &pairs)
        .expect("an intersection-closed family with its top is a meet-semilattice");
    let mut covers = Vec::new();
    for _ in 0..rng.gen_range(0..=2) {
        for _ in 0..TRIES {
            let a = rng.gen_range(0..sets.len());
            let below: Vec<usize> = (0..sets.len())
                .filter(|&u| u != a && sets[u].is_subset(sets[a]))
                .collect();
            let u: Vec<usize> = below.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
            let union = u.iter().fold(ElemSet::EMPTY, |acc, &i| acc.union(sets[i]));
            if union == sets[a] {
                covers.push(Cover::new(a, u));
                break;
            }
        }
    }
    let p = FramePresentation::new(base, covers).expect("covers lie below their targets");
    stability_close(&p)
}

fn random_relation(rng: &mut ChaCha8Rng, n_plus: usize, n_minus: usize, max_rel: usize) -> PairRelation {
    let mut pairs: Vec<Pair> = (0..n_plus)
        .flat_map(|p| (0..n_minus).map(move |q| Pair::new(p, q)))
        .collect();
    pairs.shuffle(rng);
    let k = rng.gen_range(0..=max_rel.min(pairs.len()));
    let mut r = PairRelation::empty(n_plus, n_minus);
    for &a in &pairs[..k] {
        r.insert(a);
    }
    r
}

/// The `i`-th random instance for `seed`; independent of every other index.
pub fn random_instance(seed: u64, i: usize, max_b: usize, max_rel: usize) -> PreDFramePresentation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i as u64);
    let plus = random_presentation(&mut rng, max_b);
    let minus = random_presentation(&mut rng, max_b);
    let (np, nm) = (plus.base().len(), minus.base().len());
    let con1 = random_relation(&mut rng, np, nm, max_rel);
    let tot1 = random_relation(&mut rng, np, nm, max_rel);
    PreDFramePresentation::new(plus, minus, con1, tot1).expect("relations are sized to the bases")
}

/// Every instance of an exhaustive sweep, in a fixed order.
pub fn exhaustive_instances(
    max_b: usize,
    max_rel: usize,
    cap: &Capacity,
) -> Result<Vec<PreDFramePresentation>, SearchError> {
    let pres = exhaustive_presentations(max_b, cap)?;
    let mut out = Vec::new();
    for p in &pres {
        for m in &pres {
            let rels = small_relations(p.base().len(), m.base().len(), max_rel);
            for c in &rels {
                for t in &rels {
                    out.push(
                        PreDFramePresentation::new(p.clone(), m.clone(), c.clone(), t.clone())
                            .expect("relations are sized to the bases"),
                    );
                }
            }
        }
    }
    Ok(out)
}

/// Generates and evaluates one instance.
pub fn evaluate_instance(
    p: &PreDFramePresentation,
    cap: &Capacity,
) -> Result<InstanceReport, SearchError> {
    let g = generate_pre_dframe(p, cap).map_err(|e| match e {
        PreDFrameError::Component {
            source: crate::presentation::PresentationError::Capacity(c),
            ..
        } => SearchError::Capacity(c),
        e => SearchError::Generation(e.to_string()),
    })?;
    Ok(evaluate(&g, cap)?)
}

/// Runs the sweep. Instances are evaluated in parallel; the report only
/// depends on the configuration.
pub fn run_search(config: &SearchConfig, cap: &Capacity) -> Result<SearchReport, SearchError> {
    config.validate()?;
    let instances: Vec<PreDFramePresentation> = match config.mode {
        SearchMode::Exhaustive => exhaustive_instances(config.max_b, config.max_rel, cap)?,
        SearchMode::Random => (0..config.samples)
            .into_par_iter()
            .map(|i| random_instance(config.seed, i, config.max_b, config.max_rel))
            .collect(),
    };
    let results: Vec<Result<InstanceReport, SearchError>> = instances
        .par_iter()
        .map(|p| evaluate_instance(p, cap))
        .collect();

    let ids = ConditionId::all();
    let mut holds = vec![0usize; ids.len()];
    let mut tallies: Vec<ImplicationTally> = Vec::new();
    let mut tally_index: BTreeMap<String, usize> = BTreeMap::new();
    let mut violations = Vec::new();
    let mut separations = Vec::new();
    let mut con_tot = 0;
    let mut witness_recheck_failures = 0;
    for (p, r) in instances.iter().zip(results) {
        let r = r?;
        for (k, id) in ids.iter().enumerate() {
            holds[k] += r.holds(*id) as usize;
        }
        con_tot += r.con_tot() as usize;
        witness_recheck_failures += !r.witnesses_recheck as usize;
        for imp in &r.implications {
            let k = *tally_index.entry(imp.name.clone()).or_insert_with(|| {
                tallies.push(ImplicationTally {
                    name: imp.name.clone(),
                    asserted: imp.asserted,
                    premise: 0,
                    violated: 0,
                });
                tallies.len() - 1
            });
            tallies[k].premise += imp.premise as usize;
            tallies[k].violated += imp.violated() as usize;
        }
        let violated: Vec<&str> = r.violations().map(|i| i.name.as_str()).collect();
        if !violated.is_empty() {
            violations.push(Finding {
                detail: violated.join("; "),
                instance: describe(p),
            });
        }
        if r.separates() {
            let mut missing = Vec::new();
            if !r.lambda_bundle {
                missing.push("λ-bundle fails");
            }
            if !r.mu_bundle {
                missing.push("μ-bundle fails");
            }
            separations.push(Finding {
                detail: missing.join(", "),
                instance: describe(p),
            });
        }
    }
    violations.sort();
    separations.sort();
    let n_sep = separations.len();
    separations.truncate(SEPARATION_EXAMPLES);
    Ok(SearchReport {
        config: config.clone(),
        instances: instances.len(),
        con_tot,
        conditions: ids.iter().map(|id| id.key()).zip(holds).collect(),
        implications: tallies,
        violations,
        separations: n_sep,
        separation_examples: separations,
        witness_recheck_failures,
    })
}
