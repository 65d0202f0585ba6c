//! The line-oriented text format shared by the CLI, the fixtures and the FFI.
//!
//! ```text
//! # comment
//! frame two
//!   elem 0
//!   elem 1
//!   leq 0 1
//!
//! dframe two_d
//!   plus two
//!   minus two
//!   con 0 0
//! ```
//!
//! A declaration header `<kind> <name>` starts at column 1 and owns the
//! indented `key value...` lines beneath it. Kinds are `frame`,
//! `semilattice`, `presentation`, `bispace`, `dframe` and `predframe`.
//! References must name an earlier declaration.
//!
//! | kind | keys |
//! |------|------|
//! | `frame`, `semilattice` | `elem <label>...`, `leq <a> <b>` |
//! | `presentation` | `base <semilattice or frame>`, `cover <a> <= <u>...` |
//! | `bispace` | `point <p>...`, `open+ <p>...`, `open- <p>...` |
//! | `dframe` | `plus <frame>`, `minus <frame>`, `con <a> <b>`, `tot <a> <b>`, or `bispace <name>` alone |
//! | `predframe` | `plus <presentation or frame>`, `minus ...`, `con <a> <b>`, `tot <a> <b>` |
//!
//! Bispace opens are closed under finite unions and intersections on load.
//! A frame named as a predframe component stands for its self-presentation.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::bits::ElemSet;
use crate::closure::PreDFramePresentation;
use crate::dframe::{omega_d, DFrame, FinBispace, Pair, PairRelation};
use crate::lattice::FinFrame;
use crate::presentation::{self_presentation, Cover, FramePresentation, MeetSemilattice};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Frame,
    Semilattice,
    Presentation,
    Bispace,
    DFrame,
    PreDFrame,
}

impl Kind {
    pub const ALL: [Kind; 6] = [
        Kind::Frame,
        Kind::Semilattice,
        Kind::Presentation,
        Kind::Bispace,
        Kind::DFrame,
        Kind::PreDFrame,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            Kind::Frame => "frame",
            Kind::Semilattice => "semilattice",
            Kind::Presentation => "presentation",
            Kind::Bispace => "bispace",
            Kind::DFrame => "dframe",
            Kind::PreDFrame => "predframe",
        }
    }

    fn from_keyword(s: &str) -> Option<Kind> {
        Kind::ALL.into_iter().find(|k| k.keyword() == s)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// Where a d-frame's carriers come from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DFrameSource {
    Frames { plus: String, minus: String },
    Bispace(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    Frame(FinFrame),
    Semilattice(MeetSemilattice),
    Presentation {
        base: String,
        value: FramePresentation,
    },
    Bispace(FinBispace),
    DFrame {
        source: DFrameSource,
        value: DFrame,
    },
    PreDFrame {
        plus: String,
        minus: String,
        value: PreDFramePresentation,
    },
}

impl Decl {
    pub fn kind(&self) -> Kind {
        match self {
            Decl::Frame(_) => Kind::Frame,
            Decl::Semilattice(_) => Kind::Semilattice,
            Decl::Presentation { .. } => Kind::Presentation,
            Decl::Bispace(_) => Kind::Bispace,
            Decl::DFrame { .. } => Kind::DFrame,
            Decl::PreDFrame { .. } => Kind::PreDFrame,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown kind `{0}`")]
    UnknownKind(String),
    #[error("duplicate name `{0}`")]
    Duplicate(String),
    #[error("`{0}` is declared later in the file")]
    ForwardReference(String),
    #[error("no declaration named `{0}`")]
    Dangling(String),
    #[error("`{name}` is a {found}, expected {expected}")]
    WrongKind {
        name: String,
        found: Kind,
        expected: &'static str,
    },
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("invalid {kind} `{name}`: {message}")]
    Invalid {
        kind: Kind,
        name: String,
        message: String,
    },
}

/// A diagnostic with a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

/// Errors from building a document in memory.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("duplicate name `{0}`")]
    Duplicate(String),
    #[error("`{0}` is not a valid name or label")]
    BadToken(String),
    #[error("no declaration named `{0}`")]
    Dangling(String),
    #[error("`{name}` is a {found}, expected {expected}")]
    WrongKind {
        name: String,
        found: Kind,
        expected: &'static str,
    },
    #[error("declaration disagrees with `{0}`")]
    Mismatch(String),
}

/// Named declarations in file order.
#[derive(Clone, Debug, Default)]
pub struct Document {
    decls: Vec<(String, Decl)>,
    index: HashMap<String, usize>,
}

impl PartialEq for Document {
    fn eq(&self, other: &Self) -> bool {
        self.decls == other.decls
    }
}

impl Eq for Document {}

fn is_token(s: &str) -> bool {
    !s.is_empty() && !s.contains(char::is_whitespace) && !s.contains('#') && s != "<="
}

impl Document {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.decls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.decls.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Decl)> {
        self.decls.iter().map(|(n, d)| (n.as_str(), d))
    }

    pub fn get(&self, name: &str) -> Option<&Decl> {
        self.index.get(name).map(|&i| &self.decls[i].1)
    }

    pub fn names_of(&self, kind: Kind) -> Vec<&str> {
        self.iter()
            .filter(|(_, d)| d.kind() == kind)
            .map(|(n, _)| n)
            .collect()
    }

    pub fn frame(&self, name: &str) -> Option<&FinFrame> {
        match self.get(name)? {
            Decl::Frame(f) => Some(f),
            _ => None,
        }
    }

    pub fn bispace(&self, name: &str) -> Option<&FinBispace> {
        match self.get(name)? {
            Decl::Bispace(b) => Some(b),
            _ => None,
        }
    }

    pub fn dframe(&self, name: &str) -> Option<&DFrame> {
        match self.get(name)? {
            Decl::DFrame { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn predframe(&self, name: &str) -> Option<&PreDFramePresentation> {
        match self.get(name)? {
            Decl::PreDFrame { value, .. } => Some(value),
            _ => None,
        }
    }

    fn lookup(&self, name: &str, ok: &[Kind], expected: &'static str) -> Result<&Decl, DocumentError> {
        let d = self
            .get(name)
            .ok_or_else(|| DocumentError::Dangling(name.into()))?;
        if ok.contains(&d.kind()) {
            Ok(d)
        } else {
            Err(DocumentError::WrongKind {
                name: name.into(),
                found: d.kind(),
                expected,
            })
        }
    }

    /// The presentation a predframe component name stands for.
    fn component(&self, name: &str) -> Result<FramePresentation, DocumentError> {
        match self.lookup(name, &[Kind::Presentation, Kind::Frame], "presentation or frame")? {
            Decl::Presentation { value, .. } => Ok(value.clone()),
            Decl::Frame(f) => Ok(self_presentation(f)),
            _ => unreachable!(),
        }
    }

    fn check_consistent(&self, name: &str, decl: &Decl) -> Result<(), DocumentError> {
        let mismatch = |what: &str| Err(DocumentError::Mismatch(what.into()));
        match decl {
            Decl::Frame(f) => check_labels(f.labels()),
            Decl::Semilattice(s) => check_labels(s.poset().labels()),
            Decl::Bispace(b) => check_labels(b.points()),
            Decl::Presentation { base, value } => {
                let expect = match self.lookup(base, &[Kind::Semilattice, Kind::Frame], "semilattice or frame")? {
                    Decl::Semilattice(s) => s.clone(),
                    Decl::Frame(f) => MeetSemilattice::from_frame(f),
                    _ => unreachable!(),
                };
                if value.base() != &expect {
                    return mismatch(base);
                }
                Ok(())
            }
            Decl::DFrame { source, value } => match source {
                DFrameSource::Frames { plus, minus } => {
                    for (r, f) in [(plus, &value.plus), (minus, &value.minus)] {
                        match self.lookup(r, &[Kind::Frame], "frame")? {
                            Decl::Frame(g) if g == f => {}
                            _ => return mismatch(r),
                        }
                    }
                    Ok(())
                }
                DFrameSource::Bispace(b) => match self.lookup(b, &[Kind::Bispace], "bispace")? {
                    Decl::Bispace(x) if omega_d(x) == *value => Ok(()),
                    _ => mismatch(b),
                },
            },
            Decl::PreDFrame { plus, minus, value } => {
                if self.component(plus)? != value.plus {
                    return mismatch(plus);
                }
                if self.component(minus)? != value.minus {
                    return mismatch(minus);
                }
                let _ = name;
                Ok(())
            }
        }
    }

    /// Appends a declaration after checking its name, its labels and that
    /// every reference names an earlier declaration holding the same data.
    pub fn push(&mut self, name: &str, decl: Decl) -> Result<(), DocumentError> {
        if !is_token(name) {
            return Err(DocumentError::BadToken(name.into()));
        }
        if self.index.contains_key(name) {
            return Err(DocumentError::Duplicate(name.into()));
        }
        self.check_consistent(name, &decl)?;
        self.index.insert(name.into(), self.decls.len());
        self.decls.push((name.into(), decl));
        Ok(())
    }

    /// Pushes `name.plus`, `name.minus` and then the d-frame `name`.
    pub fn push_dframe_with_frames(&mut self, name: &str, d: &DFrame) -> Result<(), DocumentError> {
        let (p, m) = (format!("{name}.plus"), format!("{name}.minus"));
        self.push(&p, Decl::Frame(d.plus.clone()))?;
        self.push(&m, Decl::Frame(d.minus.clone()))?;
        self.push(
            name,
            Decl::DFrame {
                source: DFrameSource::Frames { plus: p, minus: m },
                value: d.clone(),
            },
        )
    }

    /// Pushes bases, presentations and then the predframe `name`.
    pub fn push_predframe_with_parts(
        &mut self,
        name: &str,
        p: &PreDFramePresentation,
    ) -> Result<(), DocumentError> {
        let mut refs = Vec::new();
        for (side, pres) in [("plus", &p.plus), ("minus", &p.minus)] {
            let base = format!("{name}.{side}.base");
            let pn = format!("{name}.{side}");
            self.push(&base, Decl::Semilattice(pres.base().clone()))?;
            self.push(
                &pn,
                Decl::Presentation {
                    base,
                    value: pres.clone(),
                },
            )?;
            refs.push(pn);
        }
        let minus = refs.pop().unwrap();
        let plus = refs.pop().unwrap();
        self.push(
            name,
            Decl::PreDFrame {
                plus,
                minus,
                value: p.clone(),
            },
        )
    }

    /// The canonical text: two-space indentation, one blank line between
    /// declarations, `leq` lines listing the Hasse diagram.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, (name, decl)) in self.decls.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            out.push_str(&format!("{} {}\n", decl.kind(), name));
            write_body(&mut out, decl);
        }
        out
    }
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn check_labels(labels: &[String]) -> Result<(), DocumentError> {
    match labels.iter().find(|l| !is_token(l)) {
        Some(l) => Err(DocumentError::BadToken(l.clone())),
        None => Ok(()),
    }
}

fn line(out: &mut String, parts: &[&str]) {
    out.push_str("  ");
    out.push_str(&parts.join(" "));
    out.push('\n');
}

fn write_order(out: &mut String, labels: &[String], hasse: &[(usize, usize)]) {
    for l in labels {
        line(out, &["elem", l]);
    }
    for &(a, b) in hasse {
        line(out, &["leq", &labels[a], &labels[b]]);
    }
}

fn write_relation(out: &mut String, key: &str, r: &PairRelation, plus: &dyn Fn(usize) -> String, minus: &dyn Fn(usize) -> String) {
    for a in r.iter() {
        line(out, &[key, &plus(a.plus), &minus(a.minus)]);
    }
}

fn write_body(out: &mut String, decl: &Decl) {
    match decl {
        Decl::Frame(f) => write_order(out, f.labels(), &f.poset().hasse()),
        Decl::Semilattice(s) => write_order(out, s.poset().labels(), &s.poset().hasse()),
        Decl::Presentation { base, value } => {
            line(out, &["base", base]);
            let b = value.base();
            for c in value.covers() {
                let mut parts = vec!["cover", b.label(c.covered), "<="];
                parts.extend(c.coverers.iter().map(|u| b.label(u)));
                line(out, &parts);
            }
        }
        Decl::Bispace(x) => {
            let pts: Vec<&str> = x.points().iter().map(String::as_str).collect();
            if !pts.is_empty() {
                let mut parts = vec!["point"];
                parts.extend(&pts);
                line(out, &parts);
            }
            let all = ElemSet::full(pts.len());
            for (key, opens) in [("open+", x.opens_plus()), ("open-", x.opens_minus())] {
                for o in opens.iter().filter(|o| !o.is_empty() && **o != all) {
                    let mut parts = vec![key];
                    parts.extend(o.iter().map(|i| pts[i]));
                    line(out, &parts);
                }
            }
        }
        Decl::DFrame { source, value } => match source {
            DFrameSource::Bispace(b) => line(out, &["bispace", b]),
            DFrameSource::Frames { plus, minus } => {
                line(out, &["plus", plus]);
                line(out, &["minus", minus]);
                let p = |i: usize| value.plus.label(i).to_string();
                let m = |i: usize| value.minus.label(i).to_string();
                write_relation(out, "con", &value.con, &p, &m);
                write_relation(out, "tot", &value.tot, &p, &m);
            }
        },
        Decl::PreDFrame { plus, minus, value } => {
            line(out, &["plus", plus]);
            line(out, &["minus", minus]);
            let p = |i: usize| value.plus.base().label(i).to_string();
            let m = |i: usize| value.minus.base().label(i).to_string();
            write_relation(out, "con", &value.con1, &p, &m);
            write_relation(out, "tot", &value.tot1, &p, &m);
        }
    }
}

// ---------------------------------------------------------------------------
// Parsing

#[derive(Clone, Debug)]
struct Tok<'a> {
    text: &'a str,
    column: usize,
}

#[derive(Debug)]
struct BodyLine<'a> {
    line: usize,
    toks: Vec<Tok<'a>>,
}

struct Block<'a> {
    kind: Kind,
    name: Tok<'a>,
    line: usize,
    body: Vec<BodyLine<'a>>,
}

fn tokenize(s: &str) -> Vec<Tok<'_>> {
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (col, (byte, ch)) in s.char_indices().enumerate() {
        if ch.is_whitespace() {
            if let Some((b, c)) = start.take() {
                out.push(Tok {
                    text: &s[b..byte],
                    column: c + 1,
                });
            }
        } else if start.is_none() {
            start = Some((byte, col));
        }
    }
    if let Some((b, c)) = start {
        out.push(Tok {
            text: &s[b..],
            column: c + 1,
        });
    }
    out
}

fn err(line: usize, column: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, column, kind }
}

fn syntax(line: usize, column: usize, msg: impl Into<String>) -> ParseError {
    err(line, column, ParseErrorKind::Syntax(msg.into()))
}

/// Parses a document, stopping at the first error.
pub fn parse(text: &str) -> Result<Document, ParseError> {
    let mut blocks: Vec<Block<'_>> = Vec::new();
    let mut declared: HashMap<&str, usize> = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let content = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let toks = tokenize(content);
        if toks.is_empty() {
            continue;
        }
        let indented = content.starts_with(char::is_whitespace);
        if indented {
            match blocks.last_mut() {
                Some(b) => b.body.push(BodyLine { line: lineno, toks }),
                None => {
                    return Err(syntax(
                        lineno,
                        toks[0].column,
                        "indented line outside a declaration",
                    ))
                }
            }
            continue;
        }
        let kind = Kind::from_keyword(toks[0].text).ok_or_else(|| {
            err(lineno, 1, ParseErrorKind::UnknownKind(toks[0].text.into()))
        })?;
        if toks.len() != 2 {
            let col = toks.get(2).map_or(content.len() + 1, |t| t.column);
            return Err(syntax(lineno, col, "a header is `<kind> <name>`"));
        }
        let name = toks[1].clone();
        if declared.insert(name.text, lineno).is_some() {
            return Err(err(
                lineno,
                name.column,
                ParseErrorKind::Duplicate(name.text.into()),
            ));
        }
        blocks.push(Block {
            kind,
            name,
            line: lineno,
            body: Vec::new(),
        });
    }

    let mut doc = Document::new();
    for b in &blocks {
        let decl = build(&doc, &declared, b)?;
        doc.push(b.name.text, decl).map_err(|e| {
            let kind = match e {
                DocumentError::Duplicate(n) => ParseErrorKind::Duplicate(n),
                DocumentError::Dangling(n) => ParseErrorKind::Dangling(n),
                other => ParseErrorKind::Invalid {
                    kind: b.kind,
                    name: b.name.text.into(),
                    message: other.to_string(),
                },
            };
            err(b.line, 1, kind)
        })?;
    }
    Ok(doc)
}

struct Ctx<'d, 'a> {
    doc: &'d Document,
    declared: &'d HashMap<&'a str, usize>,
    block: &'d Block<'a>,
}

impl<'d, 'a> Ctx<'d, 'a> {
    fn invalid(&self, message: impl fmt::Display) -> ParseError {
        err(
            self.block.line,
            1,
            ParseErrorKind::Invalid {
                kind: self.block.kind,
                name: self.block.name.text.into(),
                message: message.to_string(),
            },
        )
    }

    fn resolve(&self, line: usize, t: &Tok<'_>, ok: &[Kind], expected: &'static str) -> Result<&'d Decl, ParseError> {
        match self.doc.get(t.text) {
            Some(d) if ok.contains(&d.kind()) => Ok(d),
            Some(d) => Err(err(
                line,
                t.column,
                ParseErrorKind::WrongKind {
                    name: t.text.into(),
                    found: d.kind(),
                    expected,
                },
            )),
            None if self.declared.contains_key(t.text) => Err(err(
                line,
                t.column,
                ParseErrorKind::ForwardReference(t.text.into()),
            )),
            None => Err(err(line, t.column, ParseErrorKind::Dangling(t.text.into()))),
        }
    }

    fn unknown_key(&self, l: &BodyLine<'_>) -> ParseError {
        syntax(
            l.line,
            l.toks[0].column,
            format!("unknown key `{}` in a {}", l.toks[0].text, self.block.kind),
        )
    }
}

fn arity(l: &BodyLine<'_>, n: usize) -> Result<(), ParseError> {
    if l.toks.len() == n + 1 {
        return Ok(());
    }
    let col = l.toks.get(n + 1).map_or_else(
        || {
            let last = l.toks.last().unwrap();
            last.column + last.text.chars().count()
        },
        |t| t.column,
    );
    Err(syntax(
        l.line,
        col,
        format!("`{}` takes {} argument(s)", l.toks[0].text, n),
    ))
}

fn at_least(l: &BodyLine<'_>, n: usize) -> Result<(), ParseError> {
    if l.toks.len() > n {
        Ok(())
    } else {
        let last = l.toks.last().unwrap();
        Err(syntax(
            l.line,
            last.column + last.text.chars().count(),
            format!("`{}` needs at least {} argument(s)", l.toks[0].text, n),
        ))
    }
}

fn label_index(
    l: &BodyLine<'_>,
    t: &Tok<'_>,
    find: &dyn Fn(&str) -> Option<usize>,
) -> Result<usize, ParseError> {
    find(t.text).ok_or_else(|| err(l.line, t.column, ParseErrorKind::UnknownLabel(t.text.into())))
}

/// `elem`/`leq` blocks shared by frames and semilattices.
type LabelledOrder = (Vec<String>, Vec<(usize, usize)>);

fn parse_order(cx: &Ctx<'_, '_>) -> Result<LabelledOrder, ParseError> {
    let mut labels: Vec<String> = Vec::new();
    let mut pos: HashMap<&str, usize> = HashMap::new();
    let mut pairs = Vec::new();
    for l in &cx.block.body {
        match l.toks[0].text {
            "elem" => {
                at_least(l, 1)?;
                for t in &l.toks[1..] {
                    if pos.insert(t.text, labels.len()).is_some() {
                        return Err(err(
                            l.line,
                            t.column,
                            ParseErrorKind::Duplicate(t.text.into()),
                        ));
                    }
                    labels.push(t.text.into());
                }
            }
            "leq" => {
                arity(l, 2)?;
                let find = |s: &str| pos.get(s).copied();
                let a = label_index(l, &l.toks[1], &find)?;
                let b = label_index(l, &l.toks[2], &find)?;
                pairs.push((a, b));
            }
            _ => return Err(cx.unknown_key(l)),
        }
    }
    Ok((labels, pairs))
}

fn parse_relation(
    l: &BodyLine<'_>,
    r: &mut PairRelation,
    plus: &dyn Fn(&str) -> Option<usize>,
    minus: &dyn Fn(&str) -> Option<usize>,
) -> Result<(), ParseError> {
    arity(l, 2)?;
    let a = label_index(l, &l.toks[1], plus)?;
    let b = label_index(l, &l.toks[2], minus)?;
    r.insert(Pair::new(a, b));
    Ok(())
}

/// Splits `plus`/`minus`/`con`/`tot` lines (and `bispace` for d-frames).
struct PairBlock<'b, 'a> {
    plus: Option<(&'b BodyLine<'a>, &'b Tok<'a>)>,
    minus: Option<(&'b BodyLine<'a>, &'b Tok<'a>)>,
    bispace: Option<(&'b BodyLine<'a>, &'b Tok<'a>)>,
    rels: Vec<&'b BodyLine<'a>>,
}

fn split_pair_block<'b, 'a>(
    cx: &Ctx<'_, 'a>,
    body: &'b [BodyLine<'a>],
    allow_bispace: bool,
) -> Result<PairBlock<'b, 'a>, ParseError> {
    let mut pb = PairBlock {
        plus: None,
        minus: None,
        bispace: None,
        rels: Vec::new(),
    };
    for l in body {
        let key = l.toks[0].text;
        let slot = match key {
            "plus" => &mut pb.plus,
            "minus" => &mut pb.minus,
            "bispace" if allow_bispace => &mut pb.bispace,
            "con" | "tot" => {
                pb.rels.push(l);
                continue;
            }
            _ => return Err(cx.unknown_key(l)),
        };
        arity(l, 1)?;
        if slot.is_some() {
            return Err(syntax(l.line, l.toks[0].column, format!("`{key}` given twice")));
        }
        *slot = Some((l, &l.toks[1]));
    }
    Ok(pb)
}

fn missing(cx: &Ctx<'_, '_>, key: &str) -> ParseError {
    syntax(
        cx.block.line,
        cx.block.name.column,
        format!("{} `{}` has no `{key}` line", cx.block.kind, cx.block.name.text),
    )
}

fn build(
    doc: &Document,
    declared: &HashMap<&str, usize>,
    block: &Block<'_>,
) -> Result<Decl, ParseError> {
    let cx = Ctx {
        doc,
        declared,
        block,
    };
    match block.kind {
        Kind::Frame => {
            let (labels, pairs) = parse_order(&cx)?;
            FinFrame::from_generating(labels, &pairs)
                .map(Decl::Frame)
                .map_err(|e| cx.invalid(e))
        }
        Kind::Semilattice => {
            let (labels, pairs) = parse_order(&cx)?;
            MeetSemilattice::from_generating(labels, &pairs)
                .map(Decl::Semilattice)
                .map_err(|e| cx.invalid(e))
        }
        Kind::Presentation => build_presentation(&cx),
        Kind::Bispace => build_bispace(&cx),
        Kind::DFrame => build_dframe(&cx),
        Kind::PreDFrame => build_predframe(&cx),
    }
}

fn build_presentation(cx: &Ctx<'_, '_>) -> Result<Decl, ParseError> {
    let mut base: Option<(String, MeetSemilattice)> = None;
    let mut covers = Vec::new();
    for l in &cx.block.body {
        match l.toks[0].text {
            "base" => {
                arity(l, 1)?;
                if base.is_some() {
                    return Err(syntax(l.line, l.toks[0].column, "`base` given twice"));
                }
                let t = &l.toks[1];
                let s = match cx.resolve(l.line, t, &[Kind::Semilattice, Kind::Frame], "semilattice or frame")? {
                    Decl::Semilattice(s) => s.clone(),
                    Decl::Frame(f) => MeetSemilattice::from_frame(f),
                    _ => unreachable!(),
                };
                base = Some((t.text.into(), s));
            }
            "cover" => {
                let Some((_, s)) = &base else {
                    return Err(syntax(l.line, l.toks[0].column, "`cover` before `base`"));
                };
                at_least(l, 2)?;
                if l.toks[2].text != "<=" {
                    return Err(syntax(l.line, l.toks[2].column, "expected `<=`"));
                }
                let find = |x: &str| s.index_of(x);
                let a = label_index(l, &l.toks[1], &find)?;
                let us = l.toks[3..]
                    .iter()
                    .map(|t| label_index(l, t, &find))
                    .collect::<Result<Vec<_>, _>>()?;
                covers.push(Cover::new(a, us));
            }
            _ => return Err(cx.unknown_key(l)),
        }
    }
    let (name, s) = base.ok_or_else(|| missing(cx, "base"))?;
    let value = FramePresentation::new(s, covers).map_err(|e| cx.invalid(e))?;
    Ok(Decl::Presentation { base: name, value })
}

fn build_bispace(cx: &Ctx<'_, '_>) -> Result<Decl, ParseError> {
    let mut points: Vec<String> = Vec::new();
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for l in &cx.block.body {
        match l.toks[0].text {
            "point" => {
                at_least(l, 1)?;
                points.extend(l.toks[1..].iter().map(|t| t.text.to_string()));
            }
            key @ ("open+" | "open-") => {
                let find = |x: &str| points.iter().position(|p| p == x);
                let mut o = ElemSet::EMPTY;
                for t in &l.toks[1..] {
                    o.insert(label_index(l, t, &find)?);
                }
                if key == "open+" {
                    plus.push(o);
                } else {
                    minus.push(o);
                }
            }
            _ => return Err(cx.unknown_key(l)),
        }
    }
    FinBispace::generated(points, &plus, &minus)
        .map(Decl::Bispace)
        .map_err(|e| cx.invalid(e))
}

fn build_dframe(cx: &Ctx<'_, '_>) -> Result<Decl, ParseError> {
    let pb = split_pair_block(cx, &cx.block.body, true)?;
    if let Some((l, t)) = pb.bispace {
        if let Some((l2, _)) = pb.plus.or(pb.minus) {
            return Err(syntax(l2.line, l2.toks[0].column, "`bispace` excludes `plus` and `minus`"));
        }
        if let Some(l2) = pb.rels.first() {
            return Err(syntax(l2.line, l2.toks[0].column, "`bispace` excludes `con` and `tot`"));
        }
        let Decl::Bispace(x) = cx.resolve(l.line, t, &[Kind::Bispace], "bispace")? else {
            unreachable!()
        };
        return Ok(Decl::DFrame {
            source: DFrameSource::Bispace(t.text.into()),
            value: omega_d(x),
        });
    }
    let (lp, tp) = pb.plus.ok_or_else(|| missing(cx, "plus"))?;
    let (lm, tm) = pb.minus.ok_or_else(|| missing(cx, "minus"))?;
    let Decl::Frame(fp) = cx.resolve(lp.line, tp, &[Kind::Frame], "frame")? else {
        unreachable!()
    };
    let Decl::Frame(fm) = cx.resolve(lm.line, tm, &[Kind::Frame], "frame")? else {
        unreachable!()
    };
    let mut con = PairRelation::empty(fp.len(), fm.len());
    let mut tot = con.clone();
    for l in pb.rels {
        let r = if l.toks[0].text == "con" { &mut con } else { &mut tot };
        parse_relation(l, r, &|x| fp.index_of(x), &|x| fm.index_of(x))?;
    }
    let value = DFrame::new(fp.clone(), fm.clone(), con, tot).map_err(|e| cx.invalid(e))?;
    Ok(Decl::DFrame {
        source: DFrameSource::Frames {
            plus: tp.text.into(),
            minus: tm.text.into(),
        },
        value,
    })
}

fn build_predframe(cx: &Ctx<'_, '_>) -> Result<Decl, ParseError> {
    let pb = split_pair_block(cx, &cx.block.body, false)?;
    let (lp, tp) = pb.plus.ok_or_else(|| missing(cx, "plus"))?;
    let (lm, tm) = pb.minus.ok_or_else(|| missing(cx, "minus"))?;
    let comp = |l: &BodyLine<'_>, t: &Tok<'_>| -> Result<FramePresentation, ParseError> {
        Ok(
            match cx.resolve(l.line, t, &[Kind::Presentation, Kind::Frame], "presentation or frame")? {
                Decl::Presentation { value, .. } => value.clone(),
                Decl::Frame(f) => self_presentation(f),
                _ => unreachable!(),
            },
        )
    };
    let pp = comp(lp, tp)?;
    let pm = comp(lm, tm)?;
    let mut con = PairRelation::empty(pp.base().len(), pm.base().len());
    let mut tot = con.clone();
    for l in pb.rels {
        let r = if l.toks[0].text == "con" { &mut con } else { &mut tot };
        parse_relation(l, r, &|x| pp.base().index_of(x), &|x| pm.base().index_of(x))?;
    }
    let value = PreDFramePresentation::new(pp, pm, con, tot).map_err(|e| cx.invalid(e))?;
    Ok(Decl::PreDFrame {
        plus: tp.text.into(),
        minus: tm.text.into(),
        value,
    })
}
