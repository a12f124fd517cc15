//! Shared helpers: running the binary, and an independent recognizer for
//! tower scripts used as a parsing oracle.

#![allow(dead_code)]

use std::path::Path;
use std::process::{Command, Output};

use globular::coherator::dsl::{RawTerm, Statement};
use globular::Side;
use rand::Rng;

pub fn globular(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_globular")).args(args).current_dir(dir).output().expect("the binary runs")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

// ----- rendering the kernel's syntax trees -----

fn render_term(t: &RawTerm) -> String {
    match t {
        RawTerm::Face { side: Side::Src, index, .. } => format!("s{index}"),
        RawTerm::Face { side: Side::Tgt, index, .. } => format!("t{index}"),
        RawTerm::Eps { leg, .. } => format!("eps{leg}"),
        RawTerm::Id { .. } => "id".into(),
        RawTerm::Name { name, .. } => name.clone(),
        RawTerm::Comp(g, f) => format!("({} * {})", render_term(g), render_term(f)),
        RawTerm::Tuple { comps, .. } => format!("[{}]", comps.iter().map(render_term).collect::<Vec<_>>().join("; ")),
    }
}

pub fn render(stmts: &[Statement]) -> Vec<String> {
    stmts
        .iter()
        .map(|s| match s {
            Statement::Dim { value, .. } => format!("dim {value}"),
            Statement::Lift { name, source_dim, target, src, tgt, .. } => {
                format!("lift {name} D{source_dim} -> {target} src {} tgt {}", render_term(src), render_term(tgt))
            }
        })
        .collect()
}

// ----- the reference recognizer -----

/// A character-level recursive-descent reading of one line.
struct Line {
    chars: Vec<char>,
    i: usize,
}

type R<T> = Result<T, String>;

fn ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '\'')
}

/// `prefix` followed by a nonempty run of digits that fits a `usize`.
fn indexed(word: &str, prefix: &str) -> Option<usize> {
    let rest = word.strip_prefix(prefix)?;
    if rest.is_empty() || !rest.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    rest.parse().ok()
}

fn reserved(word: &str) -> bool {
    ["dim", "lift", "src", "tgt", "id"].contains(&word) || ["s", "t", "eps", "D"].iter().any(|p| indexed(word, p).is_some())
}

impl Line {
    fn skip(&mut self) {
        while self.i < self.chars.len() && self.chars[self.i].is_whitespace() {
            self.i += 1;
        }
        if self.chars.get(self.i) == Some(&'#') {
            self.i = self.chars.len();
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip();
        self.i >= self.chars.len()
    }

    fn symbol(&mut self, s: &str) -> R<()> {
        self.skip();
        let want: Vec<char> = s.chars().collect();
        if self.chars[self.i..].starts_with(&want) {
            self.i += want.len();
            Ok(())
        } else {
            Err(format!("expected {s}"))
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip();
        self.chars.get(self.i).copied()
    }

    fn word(&mut self) -> R<String> {
        self.skip();
        match self.chars.get(self.i) {
            Some(&c) if ident_start(c) => {
                let start = self.i;
                while self.i < self.chars.len() && ident_char(self.chars[self.i]) {
                    self.i += 1;
                }
                Ok(self.chars[start..self.i].iter().collect())
            }
            _ => Err("expected a word".into()),
        }
    }

    fn number(&mut self) -> R<usize> {
        self.skip();
        let start = self.i;
        while self.i < self.chars.len() && self.chars[self.i].is_ascii_digit() {
            self.i += 1;
        }
        let digits: String = self.chars[start..self.i].iter().collect();
        digits.parse().map_err(|_| "expected a number".to_string())
    }

    fn disk(&mut self) -> R<usize> {
        let w = self.word()?;
        indexed(&w, "D").ok_or_else(|| "expected a disk".to_string())
    }

    fn table(&mut self) -> R<String> {
        let mut upper = vec![self.disk()?];
        let mut lower = vec![];
        while self.peek() == Some('+') {
            self.i += 1;
            lower.push(self.number()?);
            upper.push(self.disk()?);
        }
        for (k, &l) in lower.iter().enumerate() {
            if upper[k] <= l || upper[k + 1] <= l {
                return Err("bad table".into());
            }
        }
        let mut s = format!("D{}", upper[0]);
        for (l, u) in lower.iter().zip(&upper[1..]) {
            s.push_str(&format!(" +{l} D{u}"));
        }
        Ok(s)
    }

    fn term(&mut self) -> R<String> {
        let first = self.atom()?;
        if self.peek() == Some('*') {
            self.i += 1;
            let rest = self.term()?;
            Ok(format!("({first} * {rest})"))
        } else {
            Ok(first)
        }
    }

    fn atom(&mut self) -> R<String> {
        match self.peek() {
            Some('[') => {
                self.i += 1;
                let mut parts = vec![self.term()?];
                while self.peek() == Some(';') {
                    self.i += 1;
                    parts.push(self.term()?);
                }
                self.symbol("]")?;
                Ok(format!("[{}]", parts.join("; ")))
            }
            Some('(') => {
                self.i += 1;
                let t = self.term()?;
                self.symbol(")")?;
                Ok(t)
            }
            _ => {
                let w = self.word()?;
                for p in ["s", "t", "eps"] {
                    if let Some(k) = indexed(&w, p) {
                        return if k == 0 { Err("index 0".into()) } else { Ok(format!("{p}{k}")) };
                    }
                }
                if w != "id" && reserved(&w) {
                    return Err("reserved".into());
                }
                Ok(w)
            }
        }
    }

    fn keyword(&mut self, kw: &str) -> R<()> {
        if self.word()? == kw {
            Ok(())
        } else {
            Err(format!("expected {kw}"))
        }
    }

    fn statement(&mut self) -> R<Option<String>> {
        if self.at_end() {
            return Ok(None);
        }
        let head = self.word()?;
        let out = match head.as_str() {
            "dim" => format!("dim {}", self.number()?),
            "lift" => {
                let name = self.word()?;
                if reserved(&name) {
                    return Err("reserved name".into());
                }
                self.symbol(":")?;
                let n = self.disk()?;
                if n == 0 {
                    return Err("D0 source".into());
                }
                self.symbol("->")?;
                let table = self.table()?;
                self.symbol(";")?;
                self.keyword("src")?;
                self.symbol("=")?;
                let src = self.term()?;
                self.symbol(";")?;
                self.keyword("tgt")?;
                self.symbol("=")?;
                let tgt = self.term()?;
                format!("lift {name} D{n} -> {table} src {src} tgt {tgt}")
            }
            _ => return Err("expected dim or lift".into()),
        };
        if !self.at_end() {
            return Err("trailing input".into());
        }
        Ok(Some(out))
    }
}

/// Every character the kernel's lexer accepts outside comments.
fn lexically_clean(line: &str) -> bool {
    let body = line.split('#').next().unwrap_or("");
    let chars: Vec<char> = body.chars().collect();
    chars
        .iter()
        .enumerate()
        .all(|(i, &c)| c.is_whitespace() || ident_char(c) || "+:;=*[]()>".contains(c) || (c == '-' && chars.get(i + 1) == Some(&'>')))
}

/// The statements of a script, or the 1-based line of the first error.
pub fn reference_parse(text: &str) -> Result<Vec<String>, usize> {
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let mut l = Line { chars: line.chars().collect(), i: 0 };
        match l.statement() {
            Ok(s) if lexically_clean(line) => out.extend(s),
            _ => return Err(k + 1),
        }
    }
    Ok(out)
}

/// Near misses of `base`: one or two character edits drawn from the
/// script alphabet, `count` of them, all distinct.
pub fn mutants<G: Rng>(base: &str, rng: &mut G, count: usize) -> Vec<String> {
    const ALPHABET: &[char] = &[
        '[', ']', '(', ')', ';', ':', '=', '*', '+', '-', '>', '#', ' ', '0', '1', '2', '9', 's', 't', 'D', 'e', 'x', '_', '.', '\'', '@',
        '!', 'é', '\n',
    ];
    let chars: Vec<char> = base.chars().collect();
    let mut out = Vec::new();
    while out.len() < count {
        let mut m = chars.clone();
        for _ in 0..rng.gen_range(1..=2) {
            let i = rng.gen_range(0..m.len());
            let c = ALPHABET[rng.gen_range(0..ALPHABET.len())];
            match rng.gen_range(0..4) {
                0 => {
                    m.remove(i);
                }
                1 => m.insert(i, c),
                2 => m[i] = c,
                _ => {
                    if i + 1 < m.len() {
                        m.swap(i, i + 1);
                    }
                }
            }
        }
        let s: String = m.into_iter().collect();
        if s != base && !out.contains(&s) {
            out.push(s);
        }
    }
    out
}
