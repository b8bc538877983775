//! Text format for knowledge bases (`.dkb`) and queries.
//!
//! ```text
//! # comment
//! EmpStud [= Student
//! Student ~[= !exists pays.Tax
//! EmpStud & Parent ~[= !exists pays.Tax
//! ```
//!
//! Concept grammar, loosest binding first:
//!
//! ```text
//! concept := disj
//! disj    := conj ('|' conj)*
//! conj    := unary ('&' unary)*
//! unary   := '!' unary | 'exists' ROLE '.' unary | 'forall' ROLE '.' unary
//!          | 'top' | 'bot' | ATOM | '(' concept ')'
//! ```
//!
//! `|` and `&` associate to the left. One axiom per line; a line starting
//! with `@` is a directive, and no directives are currently defined.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::concept::{Axiom, Concept, Dci, Gci, KnowledgeBase};

const RESERVED: [&str; 4] = ["top", "bot", "exists", "forall"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceSpan {
    pub file: Option<PathBuf>,
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.file {
            Some(p) => write!(f, "{}:{}:{}", p.display(), self.line, self.column),
            None => write!(f, "{}:{}", self.line, self.column),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{span}: syntax error: expected {expected}, found {found}")]
    Syntax { span: SourceSpan, expected: String, found: String },
    #[error("{span}: unknown directive '@{name}'")]
    UnknownDirective { span: SourceSpan, name: String },
    #[error("query must contain exactly one axiom, found {found}")]
    QueryArity { found: usize },
    #[error("cannot read {path}: {message}")]
    Io { path: PathBuf, message: String },
}

impl ParseError {
    pub fn span(&self) -> Option<&SourceSpan> {
        match self {
            ParseError::Syntax { span, .. } | ParseError::UnknownDirective { span, .. } => Some(span),
            _ => None,
        }
    }

    fn with_file(mut self, file: &Path) -> Self {
        match &mut self {
            ParseError::Syntax { span, .. } | ParseError::UnknownDirective { span, .. } => {
                span.file = Some(file.to_path_buf());
            }
            _ => {}
        }
        self
    }
}

/// A parsed knowledge base plus the source position of every axiom,
/// TBox axioms first, then DTBox axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedDocument {
    pub kb: KnowledgeBase,
    pub axiom_spans: Vec<SourceSpan>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Top,
    Bot,
    Exists,
    Forall,
    Bang,
    Amp,
    Pipe,
    Dot,
    LParen,
    RParen,
    Subsumed,
    DefSubsumed,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Top => "'top'".into(),
            Tok::Bot => "'bot'".into(),
            Tok::Exists => "'exists'".into(),
            Tok::Forall => "'forall'".into(),
            Tok::Bang => "'!'".into(),
            Tok::Amp => "'&'".into(),
            Tok::Pipe => "'|'".into(),
            Tok::Dot => "'.'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Subsumed => "'[='".into(),
            Tok::DefSubsumed => "'~[='".into(),
            Tok::End => "end of line".into(),
        }
    }
}

struct Lexed {
    tok: Tok,
    column: usize,
}

fn syntax(line: usize, column: usize, expected: &str, found: String) -> ParseError {
    ParseError::Syntax { span: SourceSpan { file: None, line, column }, expected: expected.to_string(), found }
}

/// Tokenises one line (comment already stripped). Columns are 1-based char offsets.
fn lex_line(text: &str, line: usize) -> Result<Vec<Lexed>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let simple = match c {
            '!' => Some(Tok::Bang),
            '&' => Some(Tok::Amp),
            '|' => Some(Tok::Pipe),
            '.' => Some(Tok::Dot),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Lexed { tok, column });
            i += 1;
            continue;
        }
        if c == '[' && chars.get(i + 1) == Some(&'=') {
            out.push(Lexed { tok: Tok::Subsumed, column });
            i += 2;
            continue;
        }
        if c == '~' && chars.get(i + 1) == Some(&'[') && chars.get(i + 2) == Some(&'=') {
            out.push(Lexed { tok: Tok::DefSubsumed, column });
            i += 3;
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            let tok = match word.as_str() {
                "top" => Tok::Top,
                "bot" => Tok::Bot,
                "exists" => Tok::Exists,
                "forall" => Tok::Forall,
                _ => Tok::Ident(word),
            };
            out.push(Lexed { tok, column });
            continue;
        }
        return Err(syntax(line, column, "a concept or axiom symbol", format!("'{c}'")));
    }
    out.push(Lexed { tok: Tok::End, column: chars.len() + 1 });
    Ok(out)
}

struct LineParser {
    toks: Vec<Lexed>,
    pos: usize,
    line: usize,
}

impl LineParser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> &Lexed {
        let t = &self.toks[self.pos];
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> ParseError {
        let t = &self.toks[self.pos];
        syntax(self.line, t.column, expected, t.tok.describe())
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn concept(&mut self) -> Result<Concept, ParseError> {
        let mut left = self.conj()?;
        while *self.peek() == Tok::Pipe {
            self.bump();
            let right = self.conj()?;
            left = Concept::or(left, right);
        }
        Ok(left)
    }

    fn conj(&mut self) -> Result<Concept, ParseError> {
        let mut left = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            let right = self.unary()?;
            left = Concept::and(left, right);
        }
        Ok(left)
    }

    fn role(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                Ok(name)
            }
            _ => Err(self.error("a role name")),
        }
    }

    fn unary(&mut self) -> Result<Concept, ParseError> {
        match self.peek().clone() {
            Tok::Bang => {
                self.bump();
                Ok(Concept::not(self.unary()?))
            }
            Tok::Exists | Tok::Forall => {
                let universal = *self.peek() == Tok::Forall;
                self.bump();
                let role = self.role()?;
                self.expect(Tok::Dot, "'.'")?;
                let filler = self.unary()?;
                Ok(if universal { Concept::forall(role, filler) } else { Concept::exists(role, filler) })
            }
            Tok::Top => {
                self.bump();
                Ok(Concept::Top)
            }
            Tok::Bot => {
                self.bump();
                Ok(Concept::Bottom)
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Concept::Atom(name))
            }
            Tok::LParen => {
                self.bump();
                let c = self.concept()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(c)
            }
            _ => Err(self.error("a concept")),
        }
    }

    fn axiom(&mut self) -> Result<Axiom, ParseError> {
        let lhs = self.concept()?;
        let defeasible = match self.peek() {
            Tok::Subsumed => false,
            Tok::DefSubsumed => true,
            _ => return Err(self.error("'[=' or '~[='")),
        };
        self.bump();
        let rhs = self.concept()?;
        if *self.peek() != Tok::End {
            return Err(self.error("end of line"));
        }
        Ok(if defeasible { Axiom::Defeasible(Dci::new(lhs, rhs)) } else { Axiom::Strict(Gci::new(lhs, rhs)) })
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Parses every axiom line of `text`, returning axioms with their positions.
fn parse_axioms(text: &str) -> Result<Vec<(Axiom, SourceSpan)>, ParseError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let body = strip_comment(raw);
        let trimmed = body.trim_start();
        if trimmed.trim_end().is_empty() {
            continue;
        }
        let column = body.chars().count() - trimmed.chars().count() + 1;
        if let Some(rest) = trimmed.strip_prefix('@') {
            let name: String = rest.chars().take_while(|c| c.is_ascii_alphanumeric() || *c == '_').collect();
            return Err(ParseError::UnknownDirective { span: SourceSpan { file: None, line: line_no, column }, name });
        }
        let toks = lex_line(body, line_no)?;
        let mut p = LineParser { toks, pos: 0, line: line_no };
        let axiom = p.axiom()?;
        out.push((axiom, SourceSpan { file: None, line: line_no, column }));
    }
    Ok(out)
}

pub fn parse_kb(text: &str) -> Result<ParsedDocument, ParseError> {
    let mut kb = KnowledgeBase::default();
    let mut strict_spans = Vec::new();
    let mut defeasible_spans = Vec::new();
    for (axiom, span) in parse_axioms(text)? {
        if axiom.is_defeasible() {
            defeasible_spans.push(span);
        } else {
            strict_spans.push(span);
        }
        kb.push(axiom);
    }
    strict_spans.extend(defeasible_spans);
    Ok(ParsedDocument { kb, axiom_spans: strict_spans })
}

/// Reads and parses a `.dkb` file; error spans carry the file path.
pub fn parse_kb_file(path: &Path) -> Result<ParsedDocument, ParseError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ParseError::Io { path: path.to_path_buf(), message: e.to_string() })?;
    let mut doc = parse_kb(&text).map_err(|e| e.with_file(path))?;
    for span in &mut doc.axiom_spans {
        span.file = Some(path.to_path_buf());
    }
    Ok(doc)
}

pub fn parse_query(text: &str) -> Result<Axiom, ParseError> {
    let mut axioms = parse_axioms(text)?;
    if axioms.len() != 1 {
        return Err(ParseError::QueryArity { found: axioms.len() });
    }
    Ok(axioms.pop().expect("one axiom").0)
}

/// Parses a single concept expression (the whole input must be consumed).
pub fn parse_concept(text: &str) -> Result<Concept, ParseError> {
    let toks = lex_line(text, 1)?;
    let mut p = LineParser { toks, pos: 0, line: 1 };
    let c = p.concept()?;
    if *p.peek() != Tok::End {
        return Err(p.error("end of input"));
    }
    Ok(c)
}

const PREC_DISJ: u8 = 0;
const PREC_CONJ: u8 = 1;
const PREC_UNARY: u8 = 2;

fn precedence(c: &Concept) -> u8 {
    match c {
        Concept::Or(..) => PREC_DISJ,
        Concept::And(..) => PREC_CONJ,
        _ => PREC_UNARY,
    }
}

fn render_into(c: &Concept, min_prec: u8, out: &mut String) {
    let paren = precedence(c) < min_prec;
    if paren {
        out.push('(');
    }
    match c {
        Concept::Top => out.push_str("top"),
        Concept::Bottom => out.push_str("bot"),
        Concept::Atom(a) => out.push_str(a),
        Concept::Not(inner) => {
            out.push('!');
            render_into(inner, PREC_UNARY, out);
        }
        Concept::And(l, r) => {
            render_into(l, PREC_CONJ, out);
            out.push_str(" & ");
            render_into(r, PREC_UNARY, out);
        }
        Concept::Or(l, r) => {
            render_into(l, PREC_DISJ, out);
            out.push_str(" | ");
            render_into(r, PREC_CONJ, out);
        }
        Concept::Exists(role, f) | Concept::Forall(role, f) => {
            out.push_str(if matches!(c, Concept::Exists(..)) { "exists " } else { "forall " });
            out.push_str(role);
            out.push('.');
            render_into(f, PREC_UNARY, out);
        }
    }
    if paren {
        out.push(')');
    }
}

/// Renders a concept in the text syntax with the fewest parentheses that
/// still parse back to the same tree.
pub fn render_concept(c: &Concept) -> String {
    let mut s = String::new();
    render_into(c, PREC_DISJ, &mut s);
    s
}

pub fn is_reserved(word: &str) -> bool {
    RESERVED.contains(&word)
}

/// JSON form of an axiom: `{"kind":"gci"|"dci","lhs":"...","rhs":"..."}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomJson {
    pub kind: AxiomKind,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AxiomKind {
    Gci,
    Dci,
}

impl From<&Axiom> for AxiomJson {
    fn from(a: &Axiom) -> Self {
        AxiomJson {
            kind: if a.is_defeasible() { AxiomKind::Dci } else { AxiomKind::Gci },
            lhs: render_concept(a.lhs()),
            rhs: render_concept(a.rhs()),
        }
    }
}

impl From<&Gci> for AxiomJson {
    fn from(g: &Gci) -> Self {
        AxiomJson::from(&Axiom::Strict(g.clone()))
    }
}

impl From<&Dci> for AxiomJson {
    fn from(d: &Dci) -> Self {
        AxiomJson::from(&Axiom::Defeasible(d.clone()))
    }
}

impl TryFrom<&AxiomJson> for Axiom {
    type Error = ParseError;

    fn try_from(j: &AxiomJson) -> Result<Self, Self::Error> {
        let lhs = parse_concept(&j.lhs)?;
        let rhs = parse_concept(&j.rhs)?;
        Ok(match j.kind {
            AxiomKind::Gci => Axiom::Strict(Gci::new(lhs, rhs)),
            AxiomKind::Dci => Axiom::Defeasible(Dci::new(lhs, rhs)),
        })
    }
}
