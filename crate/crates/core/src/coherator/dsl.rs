//! Line-oriented tower scripts.
//!
//! ```text
//! dim 3
//! # composition of 1-cells
//! lift comp_1_0 : D1 -> D1 +0 D1 ; src = eps2 * s1 ; tgt = eps1 * t1
//! ```
//!
//! Terms use `s<k>`, `t<k>` for faces, `eps<k>` for cocone legs, `id`,
//! declared generator names, `g * f` for composition (`f` applied first) and
//! `[c1; c2; …]` for tuples out of a globular sum.

use std::fmt;

use super::term::{Morph, Term};
use super::tower::Tower;
use crate::error::Error;
use crate::globe::{realize_sum, Side, Table, Word, DEFAULT_TRUNCATION};

/// Category of a script error; decides the CLI exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DslErrorKind {
    Parse,
    Type,
    Inadmissible,
    Duplicate,
    Truncation,
}

/// A script error with a 1-based source position.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{col}: {message}")]
pub struct DslError {
    pub kind: DslErrorKind,
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl DslError {
    fn new(kind: DslErrorKind, pos: Pos, message: impl Into<String>) -> DslError {
        DslError { kind, line: pos.line, col: pos.col, message: message.into() }
    }

    fn from_kernel(pos: Pos, e: Error) -> DslError {
        let kind = match e {
            Error::Inadmissible(_) => DslErrorKind::Inadmissible,
            Error::DuplicateName(_) => DslErrorKind::Duplicate,
            Error::Truncation { .. } => DslErrorKind::Truncation,
            _ => DslErrorKind::Type,
        };
        DslError::new(kind, pos, e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

// ----- lexing -----

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(usize),
    Plus,
    Arrow,
    Colon,
    Semi,
    Eq,
    Star,
    LBrack,
    RBrack,
    LParen,
    RParen,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Num(n) => write!(f, "`{n}`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Arrow => write!(f, "`->`"),
            Tok::Colon => write!(f, "`:`"),
            Tok::Semi => write!(f, "`;`"),
            Tok::Eq => write!(f, "`=`"),
            Tok::Star => write!(f, "`*`"),
            Tok::LBrack => write!(f, "`[`"),
            Tok::RBrack => write!(f, "`]`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
        }
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '.' || c == '\''
}

fn lex_line(text: &str, line: usize) -> Result<Vec<(Tok, Pos)>, DslError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col: i + 1 };
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            ':' => Some(Tok::Colon),
            ';' => Some(Tok::Semi),
            '=' => Some(Tok::Eq),
            '*' => Some(Tok::Star),
            '[' => Some(Tok::LBrack),
            ']' => Some(Tok::RBrack),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, pos));
            i += 1;
        } else if c == '-' {
            if chars.get(i + 1) == Some(&'>') {
                out.push((Tok::Arrow, pos));
                i += 2;
            } else {
                return Err(DslError::new(DslErrorKind::Parse, pos, "expected `->`"));
            }
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let n = s.parse().map_err(|_| DslError::new(DslErrorKind::Parse, pos, format!("number `{s}` out of range")))?;
            out.push((Tok::Num(n), pos));
        } else if is_ident_start(c) {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
        } else {
            return Err(DslError::new(DslErrorKind::Parse, pos, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

// ----- syntax -----

/// Surface syntax of a term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RawTerm {
    Face {
        side: Side,
        index: usize,
        pos: Pos,
    },
    Eps {
        leg: usize,
        pos: Pos,
    },
    Id {
        pos: Pos,
    },
    Name {
        name: String,
        pos: Pos,
    },
    /// `Comp(g, f)` is `g * f`.
    Comp(Box<RawTerm>, Box<RawTerm>),
    Tuple {
        comps: Vec<RawTerm>,
        pos: Pos,
    },
}

impl RawTerm {
    pub fn pos(&self) -> Pos {
        match self {
            RawTerm::Face { pos, .. } | RawTerm::Eps { pos, .. } | RawTerm::Id { pos } | RawTerm::Name { pos, .. } => *pos,
            RawTerm::Tuple { pos, .. } => *pos,
            RawTerm::Comp(g, _) => g.pos(),
        }
    }

    /// Structural equality ignoring positions.
    pub fn same_shape(&self, other: &RawTerm) -> bool {
        match (self, other) {
            (RawTerm::Face { side: a, index: i, .. }, RawTerm::Face { side: b, index: j, .. }) => a == b && i == j,
            (RawTerm::Eps { leg: a, .. }, RawTerm::Eps { leg: b, .. }) => a == b,
            (RawTerm::Id { .. }, RawTerm::Id { .. }) => true,
            (RawTerm::Name { name: a, .. }, RawTerm::Name { name: b, .. }) => a == b,
            (RawTerm::Comp(g1, f1), RawTerm::Comp(g2, f2)) => g1.same_shape(g2) && f1.same_shape(f2),
            (RawTerm::Tuple { comps: a, .. }, RawTerm::Tuple { comps: b, .. }) => {
                a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.same_shape(y))
            }
            _ => false,
        }
    }
}

/// One script statement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    Dim { value: usize, pos: Pos },
    Lift { name: String, source_dim: usize, target: Table, src: RawTerm, tgt: RawTerm, pos: Pos },
}

const KEYWORDS: [&str; 5] = ["dim", "lift", "src", "tgt", "id"];

fn numbered(s: &str, prefix: &str) -> Option<usize> {
    let rest = s.strip_prefix(prefix)?;
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    rest.parse().ok()
}

fn is_reserved(s: &str) -> bool {
    KEYWORDS.contains(&s) || ["s", "t", "eps", "D"].iter().any(|p| numbered(s, p).is_some())
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    i: usize,
    end: Pos,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(t, _)| t)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.i).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, DslError> {
        let found = match self.peek() {
            Some(t) => format!(", found {t}"),
            None => ", found end of line".to_string(),
        };
        Err(DslError::new(DslErrorKind::Parse, self.pos(), format!("{}{found}", msg.into())))
    }

    fn expect(&mut self, t: Tok) -> Result<Pos, DslError> {
        if self.peek() == Some(&t) {
            let p = self.pos();
            self.i += 1;
            Ok(p)
        } else {
            self.err(format!("expected {t}"))
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), DslError> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == kw => {
                self.i += 1;
                Ok(())
            }
            _ => self.err(format!("expected `{kw}`")),
        }
    }

    fn number(&mut self) -> Result<usize, DslError> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                let n = *n;
                self.i += 1;
                Ok(n)
            }
            _ => self.err("expected a number"),
        }
    }

    fn disk(&mut self) -> Result<usize, DslError> {
        match self.peek() {
            Some(Tok::Ident(s)) => match numbered(s, "D") {
                Some(n) => {
                    self.i += 1;
                    Ok(n)
                }
                None => self.err("expected a disk `D<n>`"),
            },
            _ => self.err("expected a disk `D<n>`"),
        }
    }

    fn table(&mut self) -> Result<Table, DslError> {
        let pos = self.pos();
        let mut upper = vec![self.disk()?];
        let mut lower = Vec::new();
        while self.peek() == Some(&Tok::Plus) {
            self.i += 1;
            lower.push(self.number()?);
            upper.push(self.disk()?);
        }
        Table::new(upper, lower).map_err(|e| DslError::new(DslErrorKind::Parse, pos, e.to_string()))
    }

    fn term(&mut self) -> Result<RawTerm, DslError> {
        let first = self.atom()?;
        if self.peek() == Some(&Tok::Star) {
            self.i += 1;
            let rest = self.term()?;
            Ok(RawTerm::Comp(Box::new(first), Box::new(rest)))
        } else {
            Ok(first)
        }
    }

    fn atom(&mut self) -> Result<RawTerm, DslError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::LBrack) => {
                self.i += 1;
                let mut comps = vec![self.term()?];
                while self.peek() == Some(&Tok::Semi) {
                    self.i += 1;
                    comps.push(self.term()?);
                }
                self.expect(Tok::RBrack)?;
                Ok(RawTerm::Tuple { comps, pos })
            }
            Some(Tok::LParen) => {
                self.i += 1;
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Some(Tok::Ident(s)) => {
                self.i += 1;
                if s == "id" {
                    return Ok(RawTerm::Id { pos });
                }
                for (prefix, side) in [("s", Side::Src), ("t", Side::Tgt)] {
                    if let Some(index) = numbered(&s, prefix) {
                        if index == 0 {
                            return Err(DslError::new(DslErrorKind::Parse, pos, "face indices start at 1"));
                        }
                        return Ok(RawTerm::Face { side, index, pos });
                    }
                }
                if let Some(leg) = numbered(&s, "eps") {
                    if leg == 0 {
                        return Err(DslError::new(DslErrorKind::Parse, pos, "legs are numbered from 1"));
                    }
                    return Ok(RawTerm::Eps { leg, pos });
                }
                if is_reserved(&s) {
                    return Err(DslError::new(DslErrorKind::Parse, pos, format!("reserved word `{s}` cannot be used as a term")));
                }
                Ok(RawTerm::Name { name: s, pos })
            }
            _ => self.err("expected a term"),
        }
    }

    fn done(&self) -> Result<(), DslError> {
        if self.i < self.toks.len() {
            self.err("unexpected trailing input")
        } else {
            Ok(())
        }
    }
}

fn parser_for(text: &str, line: usize) -> Result<Parser, DslError> {
    let toks = lex_line(text, line)?;
    Ok(Parser { toks, i: 0, end: Pos { line, col: text.chars().count() + 1 } })
}

/// Parses a single term written on one line.
pub fn parse_term(text: &str) -> Result<RawTerm, DslError> {
    let mut p = parser_for(text, 1)?;
    let t = p.term()?;
    p.done()?;
    Ok(t)
}

/// Parses a table literal such as `D2 +1 D2 +0 D1`.
pub fn parse_table(text: &str) -> Result<Table, DslError> {
    let mut p = parser_for(text, 1)?;
    let t = p.table()?;
    p.done()?;
    Ok(t)
}

/// Parses a whole script into statements.
pub fn parse_script(text: &str) -> Result<Vec<Statement>, DslError> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let mut p = parser_for(line, lineno)?;
        if p.toks.is_empty() {
            continue;
        }
        let pos = p.pos();
        match p.peek() {
            Some(Tok::Ident(s)) if s == "dim" => {
                p.i += 1;
                let value = p.number()?;
                p.done()?;
                out.push(Statement::Dim { value, pos });
            }
            Some(Tok::Ident(s)) if s == "lift" => {
                p.i += 1;
                let name_pos = p.pos();
                let name = match p.peek() {
                    Some(Tok::Ident(s)) => s.clone(),
                    _ => return p.err("expected a generator name"),
                };
                if is_reserved(&name) {
                    return Err(DslError::new(DslErrorKind::Parse, name_pos, format!("reserved word `{name}` cannot name a generator")));
                }
                p.i += 1;
                p.expect(Tok::Colon)?;
                let source_dim = p.disk()?;
                if source_dim == 0 {
                    return Err(DslError::new(DslErrorKind::Parse, name_pos, "a lifting has source D<n+1>, never D0"));
                }
                p.expect(Tok::Arrow)?;
                let target = p.table()?;
                p.expect(Tok::Semi)?;
                p.expect_keyword("src")?;
                p.expect(Tok::Eq)?;
                let src = p.term()?;
                p.expect(Tok::Semi)?;
                p.expect_keyword("tgt")?;
                p.expect(Tok::Eq)?;
                let tgt = p.term()?;
                p.done()?;
                out.push(Statement::Lift { name, source_dim, target, src, tgt, pos });
            }
            _ => return p.err("expected `dim` or `lift`"),
        }
    }
    Ok(out)
}

// ----- elaboration -----

enum ElabError {
    /// Not enough type information flows into this subterm.
    Underdetermined(Pos),
    Fatal(DslError),
}

impl From<DslError> for ElabError {
    fn from(e: DslError) -> Self {
        ElabError::Fatal(e)
    }
}

fn type_error(pos: Pos, msg: impl Into<String>) -> ElabError {
    ElabError::Fatal(DslError::new(DslErrorKind::Type, pos, msg))
}

fn kernel(pos: Pos) -> impl Fn(Error) -> ElabError {
    move |e| ElabError::Fatal(DslError::from_kernel(pos, e))
}

fn check_ends(m: Morph, pos: Pos, src: Option<&Table>, tgt: Option<&Table>) -> Result<Morph, ElabError> {
    if let Some(s) = src {
        if &m.source != s {
            return Err(type_error(pos, format!("term has source {}, expected {s}", m.source)));
        }
    }
    if let Some(t) = tgt {
        if &m.target != t {
            return Err(type_error(pos, format!("term has target {}, expected {t}", m.target)));
        }
    }
    Ok(m)
}

/// Elaborates surface syntax against an optional expected source and target.
pub fn elaborate(tower: &Tower, raw: &RawTerm, src: Option<&Table>, tgt: Option<&Table>) -> Result<Morph, DslError> {
    match elab(tower, raw, src, tgt) {
        Ok(m) => Ok(m),
        Err(ElabError::Fatal(e)) => Err(e),
        Err(ElabError::Underdetermined(pos)) => {
            Err(DslError::new(DslErrorKind::Type, pos, "cannot infer the type of this term; add context"))
        }
    }
}

/// Elaborates a disk-sourced term `D_n → target`.
pub fn elaborate_term(tower: &Tower, raw: &RawTerm, n: usize, target: &Table) -> Result<Term, DslError> {
    let m = elaborate(tower, raw, Some(&Table::disk(n)), Some(target))?;
    Ok(m.as_term().cloned().expect("disk-sourced morphisms have one component"))
}

fn elab(tower: &Tower, raw: &RawTerm, src: Option<&Table>, tgt: Option<&Table>) -> Result<Morph, ElabError> {
    let pos = raw.pos();
    match raw {
        RawTerm::Face { side, index, .. } => {
            if *index > tower.truncation() {
                return Err(type_error(pos, format!("face into D{index} exceeds the truncation {}", tower.truncation())));
            }
            let t = tower.word(&Word::face(*side, index - 1, *index));
            check_ends(Morph::from_term(t), pos, src, tgt)
        }
        RawTerm::Eps { leg, .. } => {
            let Some(table) = tgt else { return Err(ElabError::Underdetermined(pos)) };
            let t = tower.eps(table, *leg).map_err(|e| type_error(pos, e.to_string()))?;
            check_ends(Morph::from_term(t), pos, src, tgt)
        }
        RawTerm::Id { .. } => {
            let Some(table) = src.or(tgt) else { return Err(ElabError::Underdetermined(pos)) };
            check_ends(tower.identity(table), pos, src, tgt)
        }
        RawTerm::Name { name, .. } => {
            let id = tower.lookup(name).ok_or_else(|| type_error(pos, format!("unknown generator `{name}`")))?;
            check_ends(Morph::from_term(tower.app(id)), pos, src, tgt)
        }
        RawTerm::Comp(g, f) => {
            let (gm, fm) = match elab(tower, f, src, None) {
                Ok(fm) => (elab(tower, g, Some(&fm.target), tgt)?, fm),
                Err(ElabError::Underdetermined(_)) => {
                    let gm = elab(tower, g, None, tgt)?;
                    let fm = elab(tower, f, src, Some(&gm.source))?;
                    (gm, fm)
                }
                Err(e) => return Err(e),
            };
            tower.compose(&gm, &fm).map_err(kernel(pos))
        }
        RawTerm::Tuple { comps, .. } => elab_tuple(tower, comps, pos, src, tgt),
    }
}

fn elab_tuple(tower: &Tower, comps: &[RawTerm], pos: Pos, src: Option<&Table>, tgt: Option<&Table>) -> Result<Morph, ElabError> {
    if let Some(s) = src {
        if s.width() != comps.len() {
            return Err(type_error(pos, format!("{} components for a tuple out of {s}", comps.len())));
        }
    }
    let leg_src = |k: usize| src.map(|s| Table::disk(s.leg_dim(k + 1)));
    // Find the common target, from the context or from the first component that determines it.
    let mut target = tgt.cloned();
    let mut done: Vec<Option<Term>> = vec![None; comps.len()];
    if target.is_none() {
        for (k, c) in comps.iter().enumerate() {
            match elab(tower, c, leg_src(k).as_ref(), None) {
                Ok(m) => {
                    target = Some(m.target.clone());
                    done[k] = Some(disk_term(m, c.pos())?);
                    break;
                }
                Err(ElabError::Underdetermined(_)) => continue,
                Err(e) => return Err(e),
            }
        }
    }
    let Some(target) = target else { return Err(ElabError::Underdetermined(pos)) };
    let mut terms = Vec::with_capacity(comps.len());
    for (k, c) in comps.iter().enumerate() {
        let t = match done[k].take() {
            Some(t) => t,
            None => disk_term(elab(tower, c, leg_src(k).as_ref(), Some(&target))?, c.pos())?,
        };
        if t.target() != &target {
            return Err(type_error(c.pos(), format!("tuple component maps into {}, expected {target}", t.target())));
        }
        terms.push(t);
    }
    let source = match src {
        Some(s) => s.clone(),
        None => infer_source(tower, &terms).map_err(|e| type_error(pos, e))?,
    };
    let m = tower.tuple(&source, terms).map_err(kernel(pos))?;
    check_ends(m, pos, src, tgt.or(Some(&target)))
}

fn disk_term(m: Morph, pos: Pos) -> Result<Term, ElabError> {
    match m.as_term() {
        Some(t) => Ok(t.clone()),
        None => Err(type_error(pos, format!("tuple components must be out of a disk, found {}", m.source))),
    }
}

/// The table whose gluing dimensions are, at every joint, the highest at which
/// the adjacent components match.
fn infer_source(tower: &Tower, terms: &[Term]) -> Result<Table, String> {
    let upper: Vec<usize> = terms.iter().map(Term::source_dim).collect();
    let mut lower = Vec::new();
    for k in 0..terms.len().saturating_sub(1) {
        let top = upper[k].min(upper[k + 1]);
        let found = (0..top).rev().find(|&g| {
            let a = tower.precompose_word(&terms[k], &Word::face(Side::Src, g, upper[k]));
            let b = tower.precompose_word(&terms[k + 1], &Word::face(Side::Tgt, g, upper[k + 1]));
            matches!((a, b), (Ok(a), Ok(b)) if a == b)
        });
        match found {
            Some(g) => lower.push(g),
            None => return Err(format!("tuple components {} and {} do not match in any dimension", k + 1, k + 2)),
        }
    }
    Table::new(upper, lower).map_err(|e| e.to_string())
}

// ----- scripts -----

/// Builds a tower by replaying a script.
pub fn load_script(text: &str) -> Result<Tower, DslError> {
    let stmts = parse_script(text)?;
    let mut tower: Option<Tower> = None;
    for st in &stmts {
        match st {
            Statement::Dim { value, pos } => {
                if tower.as_ref().is_some_and(|t| !t.is_empty()) {
                    return Err(DslError::new(DslErrorKind::Parse, *pos, "`dim` must precede every `lift`"));
                }
                tower = Some(Tower::new(*value));
            }
            Statement::Lift { name, source_dim, target, src, tgt, pos } => {
                let tw = tower.get_or_insert_with(|| Tower::new(DEFAULT_TRUNCATION));
                declare_statement(tw, name, *source_dim, target, src, tgt, *pos)?;
            }
        }
    }
    Ok(tower.unwrap_or_default())
}

fn declare_statement(
    tower: &mut Tower,
    name: &str,
    source_dim: usize,
    target: &Table,
    src: &RawTerm,
    tgt: &RawTerm,
    pos: Pos,
) -> Result<(), DslError> {
    if source_dim > tower.truncation() {
        return Err(DslError::from_kernel(pos, Error::Truncation { dim: source_dim, truncation: tower.truncation() }));
    }
    if tower.lookup(name).is_some() {
        return Err(DslError::from_kernel(pos, Error::DuplicateName(name.to_string())));
    }
    let f = elaborate_term(tower, src, source_dim - 1, target)?;
    let g = elaborate_term(tower, tgt, source_dim - 1, target)?;
    tower.declare_lift(name, f, g).map_err(|e| DslError::from_kernel(pos, e))?;
    Ok(())
}

// ----- printing -----

/// Renders a term in script syntax; the output elaborates back to `t`
/// whenever its target is known.
pub fn print_term(tower: &Tower, t: &Term) -> String {
    match t {
        Term::Cell { target, dim, cell } => {
            let (k, w) = realize_sum(target).presentation(*dim, *cell);
            let mut parts = Vec::new();
            if target.as_disk().is_none() {
                parts.push(format!("eps{k}"));
            }
            let letters = w.letters();
            for l in letters.iter().rev() {
                let c = if l.side == Side::Src { 's' } else { 't' };
                parts.push(format!("{c}{}", l.index));
            }
            if parts.is_empty() {
                "id".to_string()
            } else {
                parts.join(" * ")
            }
        }
        Term::App { gen, args, .. } => {
            let name = tower.gen(*gen).name.clone();
            if **args == tower.identity(&args.source) {
                return name;
            }
            format!("{} * {name}", print_morph(tower, args))
        }
    }
}

/// Renders a morphism: a bare term for width one, a tuple otherwise.
pub fn print_morph(tower: &Tower, m: &Morph) -> String {
    match m.as_term() {
        Some(t) => match t {
            Term::App { .. } if !print_term(tower, t).contains(' ') => print_term(tower, t),
            Term::Cell { .. } => print_term(tower, t),
            _ => format!("({})", print_term(tower, t)),
        },
        None => {
            let parts: Vec<String> = m.comps.iter().map(|c| print_term(tower, c)).collect();
            format!("[{}]", parts.join("; "))
        }
    }
}

/// Renders a full tower as a script that reloads to an equal tower.
pub fn print_tower(tower: &Tower) -> String {
    let mut out = format!("dim {}\n", tower.truncation());
    for h in tower.generators() {
        out.push_str(&format!(
            "lift {} : D{} -> {} ; src = {} ; tgt = {}\n",
            h.name,
            h.source_dim,
            h.target,
            print_term(tower, &h.src),
            print_term(tower, &h.tgt)
        ));
    }
    out
}
