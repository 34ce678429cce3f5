//! Corpus text format: entries naming a family instance or giving a
//! presentation, with optional label and expected invariants.
//!
//! ```text
//! # comment
//! family X:7
//! family Q:4 label "SmallGroup(16,9)" expect order=16 involutions=1
//! group Mod4 { gens x:8, y:2; conj x^y = x^5 } expect order=16
//! ```
//!
//! Inside braces, statements are separated by `;`:
//! `gens a:4, b:2`, `pow a: b`, `conj a^b = a^-1`, `rel a b = b a^-1`.
//! A word is a space-separated product of factors `g`, `g^k` or `g^h`
//! (the conjugate `h^-1 g h`); `1` is the empty word.

use crate::error::{Error, Result};
use crate::families::{build, FamilySpec};
use crate::group::Group;
use crate::invariants::InvariantFingerprint;
use crate::presentation::{collect, PcPresentation, Word};
use std::fmt;

/// Fingerprint fields an entry may state expectations for.
pub const EXPECT_KEYS: [&str; 9] = [
    "order",
    "exponent",
    "class",
    "involutions",
    "rank",
    "center",
    "frattini",
    "derived",
    "d",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EntryBody {
    Family(FamilySpec),
    Presentation(PcPresentation),
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub label: Option<String>,
    pub body: EntryBody,
    pub expected: Vec<(String, u64)>,
    /// Line of the entry's first token.
    pub line: usize,
}

/// Equality ignores the source line.
impl PartialEq for CorpusEntry {
    fn eq(&self, other: &Self) -> bool {
        self.label == other.label && self.body == other.body && self.expected == other.expected
    }
}

impl Eq for CorpusEntry {}

impl CorpusEntry {
    /// The label if given, otherwise the family spec or presentation name.
    pub fn name(&self) -> String {
        if let Some(l) = &self.label {
            return l.clone();
        }
        match &self.body {
            EntryBody::Family(s) => s.to_string(),
            EntryBody::Presentation(p) => p.name.clone(),
        }
    }

    pub fn build(&self, cap: usize) -> Result<Group> {
        let g = match &self.body {
            EntryBody::Family(s) => build(s, cap)?,
            EntryBody::Presentation(p) => collect(p, cap)?,
        };
        Ok(g.with_label(self.name()))
    }

    /// Expected values that disagree with `fp`, as `(key, expected, actual)`.
    pub fn mismatches(&self, fp: &InvariantFingerprint) -> Vec<(String, u64, u64)> {
        self.expected
            .iter()
            .filter_map(|(k, v)| {
                let actual = fingerprint_field(fp, k)?;
                (actual != *v).then(|| (k.clone(), *v, actual))
            })
            .collect()
    }
}

pub fn fingerprint_field(fp: &InvariantFingerprint, key: &str) -> Option<u64> {
    Some(match key {
        "order" => fp.order as u64,
        "exponent" => fp.exponent,
        "class" => fp.class as u64,
        "involutions" => fp.involutions as u64,
        "rank" => fp.p_rank as u64,
        "center" => fp.center_order as u64,
        "frattini" => fp.frattini_order as u64,
        "derived" => fp.derived_order as u64,
        "d" => fp.generator_rank as u64,
        _ => return None,
    })
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

impl fmt::Display for CorpusEntry {
    /// Canonical form, accepted by [`parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.body {
            EntryBody::Family(s) => {
                write!(f, "family {s}")?;
                if let Some(l) = &self.label {
                    write!(f, " label {}", quote(l))?;
                }
            }
            EntryBody::Presentation(p) => {
                write!(f, "group {}", p.name)?;
                if let Some(l) = &self.label {
                    write!(f, " label {}", quote(l))?;
                }
                let text = p.to_string();
                let body = &text[text.find('{').expect("presentation body")..];
                write!(f, " {body}")?;
            }
        }
        if !self.expected.is_empty() {
            let kv: Vec<String> = self.expected.iter().map(|(k, v)| format!("{k}={v}")).collect();
            write!(f, " expect {}", kv.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Str(String),
    Punct(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        col,
        msg: msg.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    for (li, raw) in text.lines().enumerate() {
        let line = li + 1;
        let chars: Vec<char> = raw.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c.is_ascii_alphabetic() || c == '_' {
                let s: String = chars[i..]
                    .iter()
                    .take_while(|c| c.is_ascii_alphanumeric() || **c == '_')
                    .collect();
                i += s.len();
                out.push(Token { tok: Tok::Ident(s), line, col });
            } else if c.is_ascii_digit() || (c == '-' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
                let start = i;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let v = s.parse().map_err(|_| syntax(line, col, format!("integer {s} out of range")))?;
                out.push(Token { tok: Tok::Int(v), line, col });
            } else if c == '"' {
                let mut s = String::new();
                i += 1;
                loop {
                    match chars.get(i) {
                        None => return Err(syntax(line, col, "unterminated string")),
                        Some('"') => {
                            i += 1;
                            break;
                        }
                        Some('\\') => {
                            match chars.get(i + 1) {
                                Some(&e) => s.push(e),
                                None => return Err(syntax(line, col, "unterminated string")),
                            }
                            i += 2;
                        }
                        Some(&ch) => {
                            s.push(ch);
                            i += 1;
                        }
                    }
                }
                out.push(Token { tok: Tok::Str(s), line, col });
            } else if "{};:,=^".contains(c) {
                out.push(Token { tok: Tok::Punct(c), line, col });
                i += 1;
            } else {
                return Err(syntax(line, col, format!("unexpected character '{c}'")));
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |t| (t.line, t.col))
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        let (l, c) = self.here();
        syntax(l, c, msg)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    fn punct(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(&Tok::Punct(c)) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{c}'")))
        }
    }

    fn eat_punct(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Punct(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.err("expected a name")),
        }
    }

    fn int(&mut self) -> Result<i64> {
        match self.peek() {
            Some(Tok::Int(v)) => {
                let v = *v;
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.err("expected an integer")),
        }
    }

    fn at_keyword(&self, k: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == k)
    }

    fn at_entry_start(&self) -> bool {
        self.at_keyword("group") || self.at_keyword("family")
    }

    fn entry(&mut self) -> Result<CorpusEntry> {
        let line = self.here().0;
        let kw = self.ident()?;
        let (label, body) = match kw.as_str() {
            "family" => {
                let (l, c) = self.here();
                let mut spec = self.ident()?;
                if self.eat_punct(':') {
                    let mut ps = vec![self.int()?.to_string()];
                    while self.eat_punct(',') {
                        ps.push(self.int()?.to_string());
                    }
                    spec = format!("{spec}:{}", ps.join(","));
                }
                let spec: FamilySpec = spec.parse().map_err(|e| match e {
                    Error::ParamOutOfRange(msg) if msg.starts_with("unknown family") => syntax(l, c, msg),
                    Error::ParamOutOfRange(msg) => Error::Semantic(format!("line {l}, column {c}: {msg}")),
                    other => other,
                })?;
                (self.label()?, EntryBody::Family(spec))
            }
            "group" => {
                let name = self.ident()?;
                let label = self.label()?;
                (label, EntryBody::Presentation(self.presentation(name)?))
            }
            _ => {
                self.pos -= 1;
                return Err(self.err("expected 'group' or 'family'"));
            }
        };
        let mut expected = Vec::new();
        if self.at_keyword("expect") {
            self.pos += 1;
            loop {
                let (l, c) = self.here();
                let k = self.ident()?;
                if !EXPECT_KEYS.contains(&k.as_str()) {
                    return Err(syntax(l, c, format!("unknown expected field '{k}'")));
                }
                self.punct('=')?;
                let v = self.int()?;
                if v < 0 {
                    return Err(syntax(l, c, "expected values are nonnegative"));
                }
                expected.push((k, v as u64));
                if !self.eat_punct(',') && !matches!(self.peek(), Some(Tok::Ident(s)) if EXPECT_KEYS.contains(&s.as_str()))
                {
                    break;
                }
            }
        }
        Ok(CorpusEntry {
            label,
            body,
            expected,
            line,
        })
    }

    fn label(&mut self) -> Result<Option<String>> {
        if !self.at_keyword("label") {
            return Ok(None);
        }
        self.pos += 1;
        match self.next() {
            Some(Tok::Str(s)) => Ok(Some(s)),
            _ => {
                self.pos -= 1;
                Err(self.err("expected a quoted label"))
            }
        }
    }

    fn presentation(&mut self, name: String) -> Result<PcPresentation> {
        self.punct('{')?;
        let mut p = PcPresentation::new(name);
        let mut pending_pow: Vec<(String, Vec<Factor>, (usize, usize))> = Vec::new();
        let mut pending_conj: Vec<(String, String, Vec<Factor>, (usize, usize))> = Vec::new();
        let mut pending_rel: Vec<(Vec<Factor>, Vec<Factor>, (usize, usize))> = Vec::new();
        loop {
            if self.eat_punct('}') {
                break;
            }
            let at = self.here();
            let kw = self.ident()?;
            match kw.as_str() {
                "gens" => loop {
                    let g = self.ident()?;
                    self.punct(':')?;
                    let (l, c) = self.here();
                    let r = self.int()?;
                    if r < 1 || r > u32::MAX as i64 {
                        return Err(syntax(l, c, "relative order out of range"));
                    }
                    p.gen(&g, r as u32);
                    if !self.eat_punct(',') {
                        break;
                    }
                },
                "pow" => {
                    let g = self.ident()?;
                    self.punct(':')?;
                    let w = self.word()?;
                    pending_pow.push((g, w, at));
                }
                "conj" => {
                    let t = self.ident()?;
                    self.punct('^')?;
                    let b = self.ident()?;
                    self.punct('=')?;
                    let w = self.word()?;
                    pending_conj.push((t, b, w, at));
                }
                "rel" => {
                    let l = self.word()?;
                    self.punct('=')?;
                    let r = self.word()?;
                    pending_rel.push((l, r, at));
                }
                _ => return Err(syntax(at.0, at.1, format!("unknown statement '{kw}'"))),
            }
            if !self.eat_punct(';') {
                self.punct('}')?;
                break;
            }
        }
        let lookup = |p: &PcPresentation, g: &str, at: (usize, usize)| {
            p.gen_index(g).ok_or_else(|| {
                Error::Semantic(format!("line {}, column {}: undefined generator '{g}'", at.0, at.1))
            })
        };
        let to_word = |p: &PcPresentation, fs: &[Factor], at| -> Result<Word> {
            let mut w = Word::identity();
            for f in fs {
                match f {
                    Factor::Power(g, e) => w = w.then(lookup(p, g, at)?, *e),
                    Factor::Conj(g, h) => {
                        let (gi, hi) = (lookup(p, g, at)?, lookup(p, h, at)?);
                        w = w.then(hi, -1).then(gi, 1).then(hi, 1);
                    }
                }
            }
            Ok(w)
        };
        for (g, w, at) in pending_pow {
            let gi = lookup(&p, &g, at)?;
            let w = to_word(&p, &w, at)?;
            p.power(gi, w);
        }
        for (t, b, w, at) in pending_conj {
            let (ti, bi) = (lookup(&p, &t, at)?, lookup(&p, &b, at)?);
            let w = to_word(&p, &w, at)?;
            p.conj(ti, bi, w);
        }
        for (l, r, at) in pending_rel {
            let (l, r) = (to_word(&p, &l, at)?, to_word(&p, &r, at)?);
            p.rel(l, r);
        }
        p.validate()?;
        Ok(p)
    }

    /// Factors up to the next `;`, `=`, `}` or `,`.
    fn word(&mut self) -> Result<Vec<Factor>> {
        let mut out = Vec::new();
        loop {
            match self.peek() {
                Some(Tok::Int(1)) if out.is_empty() => {
                    self.pos += 1;
                    break;
                }
                Some(Tok::Ident(_)) => {
                    let g = self.ident()?;
                    if self.eat_punct('^') {
                        match self.peek() {
                            Some(Tok::Int(_)) => out.push(Factor::Power(g, self.int()?)),
                            Some(Tok::Ident(_)) => out.push(Factor::Conj(g, self.ident()?)),
                            _ => return Err(self.err("expected an exponent or a generator")),
                        }
                    } else {
                        out.push(Factor::Power(g, 1));
                    }
                }
                _ if out.is_empty() => return Err(self.err("expected a word")),
                _ => break,
            }
        }
        Ok(out)
    }
}

enum Factor {
    Power(String, i64),
    Conj(String, String),
}

fn parser(text: &str) -> Result<Parser> {
    let toks = tokenize(text)?;
    let end = toks.last().map_or((1, 1), |t| (t.line, t.col + 1));
    Ok(Parser { toks, pos: 0, end })
}

/// Parses a whole corpus; the first error aborts.
pub fn parse(text: &str) -> Result<Vec<CorpusEntry>> {
    let mut p = parser(text)?;
    let mut out = Vec::new();
    while p.peek().is_some() {
        out.push(p.entry()?);
    }
    Ok(out)
}

/// Parses exactly one entry.
pub fn parse_entry(text: &str) -> Result<CorpusEntry> {
    let mut p = parser(text)?;
    let e = p.entry()?;
    if p.peek().is_some() {
        return Err(p.err("unexpected text after entry"));
    }
    Ok(e)
}

/// Parses entry by entry; a malformed entry yields an error and parsing
/// resumes at the next `group` or `family` keyword.
pub fn parse_lenient(text: &str) -> Vec<Result<CorpusEntry>> {
    let mut p = match parser(text) {
        Ok(p) => p,
        Err(e) => return lenient_by_lines(text, e),
    };
    let mut out = Vec::new();
    while p.peek().is_some() {
        let start = p.pos;
        match p.entry() {
            Ok(e) => out.push(Ok(e)),
            Err(e) => {
                out.push(Err(e));
                p.pos = p.pos.max(start + 1);
                while p.peek().is_some() && !p.at_entry_start() {
                    p.pos += 1;
                }
            }
        }
    }
    out
}

/// Fallback when the text cannot even be tokenized: split before each line
/// starting with an entry keyword and parse the chunks separately.
fn lenient_by_lines(text: &str, first: Error) -> Vec<Result<CorpusEntry>> {
    let mut chunks: Vec<(usize, String)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let t = line.trim_start();
        if chunks.is_empty() || t.starts_with("group ") || t.starts_with("family ") {
            chunks.push((i, String::new()));
        }
        let last = chunks.last_mut().expect("chunk");
        last.1.push_str(line);
        last.1.push('\n');
    }
    if chunks.is_empty() {
        return vec![Err(first)];
    }
    let mut out = Vec::new();
    for (offset, chunk) in chunks {
        let padded = format!("{}{}", "\n".repeat(offset), chunk);
        match parser(&padded) {
            Err(e) => out.push(Err(e)),
            Ok(mut p) => {
                while p.peek().is_some() {
                    match p.entry() {
                        Ok(e) => out.push(Ok(e)),
                        Err(e) => {
                            out.push(Err(e));
                            break;
                        }
                    }
                }
            }
        }
    }
    out
}

/// Canonical text of a whole corpus, one entry per line.
pub fn print(entries: &[CorpusEntry]) -> String {
    entries.iter().map(|e| format!("{e}\n")).collect()
}

/// The bundled corpus of family instances.
pub const BUNDLED: &str = include_str!("../corpus/families.txt");
