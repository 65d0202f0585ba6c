//! The operations behind the `dfrm` binary. Each returns the report text, a
//! structured JSON value and an exit status, so the binary only has to
//! handle arguments and I/O.

use serde_json::{json, Value};
use thiserror::Error;

use crate::capacity::{Capacity, CapacityError};
use crate::closure::{generate_pre_dframe, Generated, PreDFrameError};
use crate::conditions::{evaluate, ConditionId, InstanceReport};
use crate::coproduct::{certify, dframe_coproduct, Certificate, CoproductError, StripsIso};
use crate::dframe::{check_axioms, AxiomReport, DFrame, PairSpace};
use crate::presentation::PresentationError;
use crate::search::{run_search, SearchConfig, SearchError};
use crate::text::{Decl, Document};

/// Process exit statuses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    MathFailure = 1,
    InputError = 2,
    Capacity = 3,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }

    fn from_ok(ok: bool) -> Status {
        if ok {
            Status::Success
        } else {
            Status::MathFailure
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CommandError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Capacity(#[from] CapacityError),
}

impl CommandError {
    pub fn status(&self) -> Status {
        match self {
            CommandError::Input(_) => Status::InputError,
            CommandError::Capacity(_) => Status::Capacity,
        }
    }
}

impl From<SearchError> for CommandError {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::Capacity(c) => CommandError::Capacity(c),
            e => CommandError::Input(e.to_string()),
        }
    }
}

impl From<PreDFrameError> for CommandError {
    fn from(e: PreDFrameError) -> Self {
        match e {
            PreDFrameError::Component {
                source: PresentationError::Capacity(c),
                ..
            } => CommandError::Capacity(c),
            e => CommandError::Input(e.to_string()),
        }
    }
}

impl From<CoproductError> for CommandError {
    fn from(e: CoproductError) -> Self {
        match e {
            CoproductError::Capacity(c)
            | CoproductError::Presentation(PresentationError::Capacity(c)) => {
                CommandError::Capacity(c)
            }
            e => CommandError::Input(e.to_string()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub status: Status,
    pub text: String,
    pub json: Value,
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn axiom_lines(d: &DFrame, r: &AxiomReport, prefix: &str, out: &mut String) -> Vec<Value> {
    let s = d.space();
    let mut json = Vec::new();
    for a in &r.results {
        let witness = a.witness.as_ref().map(|w| {
            let pairs: Vec<String> = w.pairs.iter().map(|&p| s.show(p)).collect();
            format!("{} {}", w.which, pairs.join(" "))
        });
        match &witness {
            None => out.push_str(&format!("{prefix}{} holds\n", a.axiom)),
            Some(w) => out.push_str(&format!("{prefix}{} fails: {w}\n", a.axiom)),
        }
        json.push(json!({"axiom": a.axiom.name(), "holds": a.holds(), "witness": witness}));
    }
    json
}

/// Structural checks happen while parsing; this adds axiom checks for
/// d-frames and stability for presentations.
pub fn cmd_validate(doc: &Document) -> Outcome {
    let mut text = String::new();
    let mut entries = Vec::new();
    let mut ok = true;
    for (name, decl) in doc.iter() {
        let kind = decl.kind();
        match decl {
            Decl::Frame(f) => {
                text.push_str(&format!("{kind} {name}: ok, {} elements\n", f.len()));
                entries.push(json!({"kind": kind.keyword(), "name": name, "ok": true, "elements": f.len()}));
            }
            Decl::Semilattice(s) => {
                text.push_str(&format!("{kind} {name}: ok, {} elements\n", s.len()));
                entries.push(json!({"kind": kind.keyword(), "name": name, "ok": true, "elements": s.len()}));
            }
            Decl::Presentation { value, .. } => {
                let violation = value.stability_violation().map(|(cover, below)| {
                    format!("cover {cover} restricted to `{}` is missing", value.base().label(below))
                });
                ok &= violation.is_none();
                match &violation {
                    None => text.push_str(&format!(
                        "{kind} {name}: ok, {} covers, stable\n",
                        value.covers().len()
                    )),
                    Some(v) => text.push_str(&format!("{kind} {name}: not stable: {v}\n")),
                }
                entries.push(json!({"kind": kind.keyword(), "name": name, "ok": violation.is_none(), "covers": value.covers().len(), "stability_violation": violation}));
            }
            Decl::Bispace(x) => {
                text.push_str(&format!(
                    "{kind} {name}: ok, {} points, {} plus opens, {} minus opens\n",
                    x.points().len(),
                    x.opens_plus().len(),
                    x.opens_minus().len()
                ));
                entries.push(json!({"kind": kind.keyword(), "name": name, "ok": true, "points": x.points().len()}));
            }
            Decl::DFrame { value, .. } => {
                let r = check_axioms(value);
                ok &= r.is_dframe();
                text.push_str(&format!(
                    "{kind} {name}: {} ({}x{})\n",
                    if r.is_dframe() { "d-frame" } else { "not a d-frame" },
                    value.plus.len(),
                    value.minus.len()
                ));
                let axioms = axiom_lines(value, &r, "  ", &mut text);
                entries.push(json!({"kind": kind.keyword(), "name": name, "ok": r.is_dframe(), "axioms": axioms}));
            }
            Decl::PreDFrame { value, .. } => {
                let stable = value.plus.is_stable() && value.minus.is_stable();
                ok &= stable;
                text.push_str(&format!(
                    "{kind} {name}: {}, generators {}x{}, |con1|={} |tot1|={}\n",
                    if stable { "ok" } else { "unstable component" },
                    value.plus.base().len(),
                    value.minus.base().len(),
                    value.con1.len(),
                    value.tot1.len()
                ));
                entries.push(json!({"kind": kind.keyword(), "name": name, "ok": stable}));
            }
        }
    }
    Outcome {
        status: Status::from_ok(ok),
        text,
        json: json!({"command": "validate", "ok": ok, "declarations": entries}),
    }
}

fn generated(doc: &Document, name: &str, cap: &Capacity) -> Result<Generated, CommandError> {
    let p = doc
        .predframe(name)
        .ok_or_else(|| CommandError::Input(format!("no predframe named `{name}`")))?;
    Ok(generate_pre_dframe(p, cap)?)
}

/// Generates the pre-d-frame and prints it as a document.
pub fn cmd_gen(doc: &Document, name: &str, cap: &Capacity) -> Result<Outcome, CommandError> {
    let g = generated(doc, name, cap)?;
    let d = &g.dframe;
    let mut out = Document::new();
    out.push_dframe_with_frames(name, d)
        .map_err(|e| CommandError::Input(e.to_string()))?;
    let r = check_axioms(d);
    let mut text = format!(
        "# generated from predframe {name}: |L+|={} |L-|={}, pre-d-frame {}, con-tot {}\n",
        d.plus.len(),
        d.minus.len(),
        yes_no(r.is_pre_dframe()),
        if r.holds(crate::dframe::Axiom::ConTot) { "holds" } else { "fails" }
    );
    text.push_str(&out.to_text());
    Ok(Outcome {
        status: Status::Success,
        json: json!({
            "command": "gen",
            "name": name,
            "sizes": [d.plus.len(), d.minus.len()],
            "pre_dframe": r.is_pre_dframe(),
            "dframe": r.is_dframe(),
            "document": out.to_text(),
        }),
        text,
    })
}

fn condition_rows(r: &InstanceReport, s: PairSpace<'_>) -> Vec<(String, bool, String)> {
    ConditionId::all()
        .into_iter()
        .map(|id| {
            let c = r.get(id);
            let w = c.witness.as_ref().map_or_else(|| "-".to_string(), |w| w.show(s));
            (id.key(), c.holds(), w)
        })
        .collect()
}

/// Runs the condition ladder and both gates on a generated pre-d-frame.
pub fn cmd_check(
    doc: &Document,
    name: &str,
    conditions: bool,
    cap: &Capacity,
) -> Result<Outcome, CommandError> {
    let g = generated(doc, name, cap)?;
    let r = evaluate(&g, cap)?;
    let s = g.dframe.space();
    let mut text = format!(
        "predframe {name}: |L+|={} |L-|={}\n",
        g.dframe.plus.len(),
        g.dframe.minus.len()
    );
    let witness = r
        .con_tot_witness
        .map(|(a, b)| format!("α={}, β={}", s.show(a), s.show(b)));
    match &witness {
        None => text.push_str("con-tot holds\n"),
        Some(w) => text.push_str(&format!("con-tot fails: {w}\n")),
    }
    text.push_str(&format!("lambda-bundle {}\n", yes_no(r.lambda_bundle)));
    text.push_str(&format!("mu-bundle {}\n", yes_no(r.mu_bundle)));
    let violations: Vec<&str> = r.violations().map(|i| i.name.as_str()).collect();
    text.push_str(&format!("implication violations {}\n", violations.len()));
    for v in &violations {
        text.push_str(&format!("violation {v}\n"));
    }
    if !r.witnesses_recheck {
        text.push_str("witness recheck failed\n");
    }
    let rows = condition_rows(&r, s);
    if conditions {
        text.push_str("\ncondition | holds | witness\n");
        for (k, h, w) in &rows {
            text.push_str(&format!("{k} | {} | {w}\n", yes_no(*h)));
        }
    }
    let ok = r.con_tot() && violations.is_empty() && r.witnesses_recheck;
    let cond_json: Vec<Value> = rows
        .iter()
        .map(|(k, h, w)| json!({"id": k, "holds": h, "witness": if *h { Value::Null } else { json!(w) }}))
        .collect();
    let imps: Vec<Value> = r
        .implications
        .iter()
        .map(|i| json!({"name": i.name, "asserted": i.asserted, "premise": i.premise, "conclusion": i.conclusion}))
        .collect();
    Ok(Outcome {
        status: Status::from_ok(ok),
        text,
        json: json!({
            "command": "check",
            "name": name,
            "con_tot": r.con_tot(),
            "con_tot_witness": witness,
            "lambda_bundle": r.lambda_bundle,
            "mu_bundle": r.mu_bundle,
            "violations": violations,
            "witnesses_recheck": r.witnesses_recheck,
            "conditions": cond_json,
            "implications": imps,
        }),
    })
}

fn certificate_text(c: &Certificate, d: &DFrame) -> (String, Value) {
    let mut t = String::from("# certificate\n");
    t.push_str(&format!("# sizes {} {}\n", c.sizes.0, c.sizes.1));
    let mut axioms_text = String::new();
    let axioms = axiom_lines(d, &c.axioms, "# axiom ", &mut axioms_text);
    t.push_str(&axioms_text);
    let s = d.space();
    let mut conds = Vec::new();
    for r in c.mu.iter().chain(&c.indep) {
        let w = r.witness.as_ref().map(|w| w.show(s));
        match &w {
            None => t.push_str(&format!("# {} holds\n", r.id.key())),
            Some(w) => t.push_str(&format!("# {} fails: {w}\n", r.id.key())),
        }
        conds.push(json!({"id": r.id.key(), "holds": r.holds(), "witness": w}));
    }
    let mut strips = Vec::new();
    for (i, st) in c.strips.iter().enumerate() {
        let v = match st {
            StripsIso::NotApplicable => "not-applicable".to_string(),
            StripsIso::Holds => "holds".to_string(),
            StripsIso::Fails(why) => format!("fails: {why}"),
        };
        t.push_str(&format!("# strips {i} {v}\n"));
        strips.push(json!(v));
    }
    let mut basics = Vec::new();
    for (side, b) in ["plus", "minus"].iter().zip(&c.basics) {
        t.push_str(&format!(
            "# basics {side} checked {:?} failures {:?} in-n {}\n",
            b.checked, b.failures, b.in_n
        ));
        basics.push(json!({"side": side, "checked": b.checked, "failures": b.failures, "in_n": b.in_n}));
    }
    let mut rc = Vec::new();
    for (side, r) in ["plus", "minus"].iter().zip(&c.rec_cross) {
        t.push_str(&format!(
            "# rec-cross {side} qualifying {} failures {} top-excluded {}\n",
            r.qualifying, r.failures, r.top_excluded
        ));
        rc.push(json!({"side": side, "qualifying": r.qualifying, "failures": r.failures, "top_excluded": r.top_excluded}));
    }
    t.push_str(&format!("# passes {}\n", yes_no(c.passes())));
    let json = json!({
        "sizes": [c.sizes.0, c.sizes.1],
        "axioms": axioms,
        "conditions": conds,
        "strips": strips,
        "basics": basics,
        "rec_cross": rc,
        "passes": c.passes(),
    });
    (t, json)
}

/// Builds the coproduct of the named d-frames and certifies it.
pub fn cmd_coproduct(
    doc: &Document,
    names: &[String],
    cap: &Capacity,
) -> Result<Outcome, CommandError> {
    if names.is_empty() {
        return Err(CommandError::Input("no d-frames named".into()));
    }
    let family = names
        .iter()
        .map(|n| {
            doc.dframe(n)
                .cloned()
                .ok_or_else(|| CommandError::Input(format!("no dframe named `{n}`")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let cop = dframe_coproduct(&family, cap)?;
    let cert = certify(&cop, cap)?;
    let name = names.join("+");
    let mut out = Document::new();
    out.push_dframe_with_frames(&name, cop.dframe())
        .map_err(|e| CommandError::Input(e.to_string()))?;
    let (cert_text, cert_json) = certificate_text(&cert, cop.dframe());
    let mut text = out.to_text();
    text.push('\n');
    text.push_str(&cert_text);
    Ok(Outcome {
        status: Status::from_ok(cert.passes()),
        text,
        json: json!({
            "command": "coproduct",
            "names": names,
            "document": out.to_text(),
            "certificate": cert_json,
        }),
    })
}

pub fn cmd_search(config: &SearchConfig, cap: &Capacity) -> Result<Outcome, CommandError> {
    let r = run_search(config, cap)?;
    Ok(Outcome {
        status: Status::from_ok(r.clean()),
        text: r.to_text(),
        json: serde_json::to_value(&r).expect("reports serialize"),
    })
}
