//! The line-oriented session language.
//!
//! ```text
//! ring R = poly(p=7; vars=x,y,z; order=grevlex) / ideal(x^3 + y^3 + z^3) domain
//! ideal J in R = (x, y) prime
//! extension B over R = adjoin(t) / relations(t^2 - x)
//! witness u in R = auto
//! chain C over R = (B)
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. The trailing
//! `domain` / `prime` flags are optional. Generator lists are kept in
//! canonical order (descending, duplicates and zeros dropped), so printing a
//! parsed session and parsing it again is a fixpoint.

use std::collections::HashMap;
use std::fmt::{self, Write as _};
use std::sync::Arc;

use crate::algebra::{parse_polynomial_at, MonomialOrder, PolyRing, Polynomial};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct RingDecl {
    pub name: String,
    pub ring: Arc<PolyRing>,
    pub ideal: Vec<Polynomial>,
    pub domain: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdealDecl {
    pub name: String,
    pub gens: Vec<Polynomial>,
    pub prime: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExtensionDecl {
    pub name: String,
    pub adjoined: Vec<String>,
    pub ambient: Arc<PolyRing>,
    pub relations: Vec<Polynomial>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum WitnessSpec {
    Auto,
    Poly(Polynomial),
}

#[derive(Clone, Debug, PartialEq)]
pub struct WitnessDecl {
    pub name: String,
    pub spec: WitnessSpec,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainDecl {
    pub name: String,
    pub members: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Decl {
    Ring(RingDecl),
    Ideal(IdealDecl),
    Extension(ExtensionDecl),
    Witness(WitnessDecl),
    Chain(ChainDecl),
}

impl Decl {
    pub fn name(&self) -> &str {
        match self {
            Decl::Ring(d) => &d.name,
            Decl::Ideal(d) => &d.name,
            Decl::Extension(d) => &d.name,
            Decl::Witness(d) => &d.name,
            Decl::Chain(d) => &d.name,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Session {
    pub decls: Vec<Decl>,
}

impl Session {
    pub fn ring(&self) -> Option<&RingDecl> {
        self.decls.iter().find_map(|d| match d {
            Decl::Ring(r) => Some(r),
            _ => None,
        })
    }

    pub fn get(&self, name: &str) -> Option<&Decl> {
        self.decls.iter().find(|d| d.name() == name)
    }

    pub fn ideals(&self) -> impl Iterator<Item = &IdealDecl> {
        self.decls.iter().filter_map(|d| match d {
            Decl::Ideal(i) => Some(i),
            _ => None,
        })
    }

    pub fn extensions(&self) -> impl Iterator<Item = &ExtensionDecl> {
        self.decls.iter().filter_map(|d| match d {
            Decl::Extension(e) => Some(e),
            _ => None,
        })
    }

    pub fn witnesses(&self) -> impl Iterator<Item = &WitnessDecl> {
        self.decls.iter().filter_map(|d| match d {
            Decl::Witness(w) => Some(w),
            _ => None,
        })
    }

    pub fn chains(&self) -> impl Iterator<Item = &ChainDecl> {
        self.decls.iter().filter_map(|d| match d {
            Decl::Chain(c) => Some(c),
            _ => None,
        })
    }
}

/// Sorted descending, zeros and duplicates removed.
pub fn canonical_list(mut gens: Vec<Polynomial>) -> Vec<Polynomial> {
    gens.retain(|g| !g.is_zero());
    gens.sort_by(|a, b| b.canonical_cmp(a));
    gens.dedup();
    gens
}

struct Line {
    chars: Vec<char>,
    pos: usize,
    number: usize,
}

impl Line {
    fn new(text: &str, number: usize) -> Self {
        Line {
            chars: text.chars().collect(),
            pos: 0,
            number,
        }
    }

    fn column(&self) -> usize {
        self.pos + 1
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            line: self.number,
            column: self.column(),
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => self.error(format!("expected `{c}`, found `{d}`")),
            None => self.error(format!("expected `{c}`, found end of line")),
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        match self.chars.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() || *c == '_' => {}
            Some(c) => return self.error(format!("expected a name, found `{c}`")),
            None => return self.error("expected a name, found end of line"),
        }
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_')
        {
            self.pos += 1;
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        let save = self.pos;
        match self.ident() {
            Ok(w) if w == kw => Ok(()),
            Ok(w) => {
                self.pos = save;
                self.skip_ws();
                self.error(format!("expected `{kw}`, found `{w}`"))
            }
            Err(_) => {
                self.pos = save;
                self.skip_ws();
                self.error(format!("expected `{kw}`"))
            }
        }
    }

    fn try_keyword(&mut self, kw: &str) -> bool {
        let save = self.pos;
        match self.ident() {
            Ok(w) if w == kw => true,
            _ => {
                self.pos = save;
                false
            }
        }
    }

    /// Text between a `(` and its matching `)`, with the column where it starts.
    fn group(&mut self) -> Result<(String, usize)> {
        self.expect('(')?;
        let start = self.pos;
        let mut depth = 1;
        while self.pos < self.chars.len() {
            match self.chars[self.pos] {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        let inner: String = self.chars[start..self.pos].iter().collect();
                        self.pos += 1;
                        return Ok((inner, start + 1));
                    }
                }
                _ => {}
            }
            self.pos += 1;
        }
        self.error("unbalanced parentheses")
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.error(format!("unexpected `{c}` after declaration")),
        }
    }
}

/// Split at top-level commas: (piece, column of its first non-blank char).
fn split_list(text: &str, column: usize, line: usize) -> Result<Vec<(String, usize)>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for i in 0..=chars.len() {
        let c = chars.get(i).copied();
        match c {
            Some('(') => depth += 1,
            Some(')') => depth -= 1,
            _ => {}
        }
        if c.is_none() || (c == Some(',') && depth == 0) {
            let piece: String = chars[start..i].iter().collect();
            let lead = piece.chars().take_while(|c| c.is_whitespace()).count();
            if piece.trim().is_empty() {
                return Err(Error::Syntax {
                    line,
                    column: column + i,
                    message: "empty list entry".into(),
                });
            }
            out.push((piece.trim().to_string(), column + start + lead));
            start = i + 1;
        }
    }
    Ok(out)
}

fn parse_poly_list(ring: &Arc<PolyRing>, text: &str, column: usize, line: usize) -> Result<Vec<Polynomial>> {
    let gens = split_list(text, column, line)?
        .into_iter()
        .map(|(piece, col)| parse_polynomial_at(ring, &piece, line, col))
        .collect::<Result<Vec<_>>>()?;
    Ok(canonical_list(gens))
}

fn parse_ident_list(text: &str, column: usize, line: usize) -> Result<Vec<String>> {
    split_list(text, column, line)?
        .into_iter()
        .map(|(piece, col)| {
            let ok = piece
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && piece.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if ok {
                Ok(piece)
            } else {
                Err(Error::Syntax {
                    line,
                    column: col,
                    message: format!("`{piece}` is not a name"),
                })
            }
        })
        .collect()
}

#[derive(Default)]
struct Scope {
    kinds: HashMap<String, &'static str>,
    ring: Option<(String, Arc<PolyRing>)>,
    extensions: HashMap<String, Arc<PolyRing>>,
}

impl Scope {
    fn declare(&mut self, name: &str, kind: &'static str) -> Result<()> {
        if self.kinds.insert(name.to_string(), kind).is_some() {
            return Err(Error::DuplicateName(name.to_string()));
        }
        Ok(())
    }

    fn ring_named(&self, name: &str) -> Result<Arc<PolyRing>> {
        match &self.ring {
            Some((n, r)) if n == name => Ok(r.clone()),
            _ => Err(Error::UnknownIdentifier(name.to_string())),
        }
    }
}

fn parse_ring(l: &mut Line, scope: &mut Scope) -> Result<Decl> {
    let name = l.ident()?;
    l.expect('=')?;
    l.keyword("poly")?;
    l.expect('(')?;
    let mut p: Option<u64> = None;
    let mut vars: Option<Vec<String>> = None;
    let mut order: Option<MonomialOrder> = None;
    loop {
        let key = l.ident()?;
        l.expect('=')?;
        l.skip_ws();
        let start = l.pos;
        while l.pos < l.chars.len() && !matches!(l.chars[l.pos], ';' | ')') {
            l.pos += 1;
        }
        let value: String = l.chars[start..l.pos].iter().collect::<String>().trim().to_string();
        let col = start + 1;
        let dup = |l: &Line| l.error::<()>(format!("`{key}` given twice"));
        match key.as_str() {
            "p" => {
                if p.is_some() {
                    dup(l)?;
                }
                let v: u64 = value.parse().map_err(|_| Error::Syntax {
                    line: l.number,
                    column: col,
                    message: format!("`{value}` is not a characteristic"),
                })?;
                p = Some(v);
            }
            "vars" => {
                if vars.is_some() {
                    dup(l)?;
                }
                vars = Some(parse_ident_list(&value, col, l.number)?);
            }
            "order" => {
                if order.is_some() {
                    dup(l)?;
                }
                order = Some(match value.as_str() {
                    "lex" => MonomialOrder::Lex,
                    "grevlex" => MonomialOrder::Grevlex,
                    other => {
                        return Err(Error::Syntax {
                            line: l.number,
                            column: col,
                            message: format!("unknown order `{other}`"),
                        })
                    }
                });
            }
            other => return l.error(format!("unknown ring parameter `{other}`")),
        }
        match l.peek() {
            Some(';') => l.pos += 1,
            Some(')') => {
                l.pos += 1;
                break;
            }
            _ => return l.error("expected `;` or `)`"),
        }
    }
    let Some(p) = p else { return l.error("missing `p=`") };
    let Some(vars) = vars else {
        return l.error("missing `vars=`");
    };
    if vars.is_empty() {
        return l.error("a ring needs at least one variable");
    }
    let ring = PolyRing::new(p, vars, order.unwrap_or(MonomialOrder::Grevlex))?;
    let mut ideal = Vec::new();
    if l.peek() == Some('/') {
        l.pos += 1;
        l.keyword("ideal")?;
        let (text, col) = l.group()?;
        ideal = parse_poly_list(&ring, &text, col, l.number)?;
    }
    let domain = l.try_keyword("domain");
    l.finish()?;
    if scope.ring.is_some() {
        return Err(Error::Syntax {
            line: l.number,
            column: 1,
            message: "only one ring per session".into(),
        });
    }
    scope.declare(&name, "ring")?;
    scope.ring = Some((name.clone(), ring.clone()));
    Ok(Decl::Ring(RingDecl {
        name,
        ring,
        ideal,
        domain,
    }))
}

fn parse_ideal(l: &mut Line, scope: &mut Scope) -> Result<Decl> {
    let name = l.ident()?;
    l.keyword("in")?;
    let ring = scope.ring_named(&l.ident()?)?;
    l.expect('=')?;
    let (text, col) = l.group()?;
    let gens = parse_poly_list(&ring, &text, col, l.number)?;
    let prime = l.try_keyword("prime");
    l.finish()?;
    scope.declare(&name, "ideal")?;
    Ok(Decl::Ideal(IdealDecl { name, gens, prime }))
}

fn parse_extension(l: &mut Line, scope: &mut Scope) -> Result<Decl> {
    let name = l.ident()?;
    l.keyword("over")?;
    let ring = scope.ring_named(&l.ident()?)?;
    l.expect('=')?;
    l.keyword("adjoin")?;
    let (text, col) = l.group()?;
    let adjoined = parse_ident_list(&text, col, l.number)?;
    let mut names = ring.names().to_vec();
    names.extend(adjoined.iter().cloned());
    let order = match ring.order() {
        MonomialOrder::Lex => MonomialOrder::Lex,
        _ => MonomialOrder::Grevlex,
    };
    let ambient = PolyRing::new(ring.characteristic() as u64, names, order)?;
    l.expect('/')?;
    l.keyword("relations")?;
    let (text, col) = l.group()?;
    let relations = parse_poly_list(&ambient, &text, col, l.number)?;
    l.finish()?;
    scope.declare(&name, "extension")?;
    scope.extensions.insert(name.clone(), ambient.clone());
    Ok(Decl::Extension(ExtensionDecl {
        name,
        adjoined,
        ambient,
        relations,
    }))
}

fn parse_witness(l: &mut Line, scope: &mut Scope) -> Result<Decl> {
    let name = l.ident()?;
    l.keyword("in")?;
    let ring = scope.ring_named(&l.ident()?)?;
    l.expect('=')?;
    let spec = if l.try_keyword("auto") {
        WitnessSpec::Auto
    } else {
        l.keyword("poly")?;
        let (text, col) = l.group()?;
        WitnessSpec::Poly(parse_polynomial_at(
            &ring,
            text.trim(),
            l.number,
            col + text.len() - text.trim_start().len(),
        )?)
    };
    l.finish()?;
    scope.declare(&name, "witness")?;
    Ok(Decl::Witness(WitnessDecl { name, spec }))
}

fn parse_chain(l: &mut Line, scope: &mut Scope) -> Result<Decl> {
    let name = l.ident()?;
    l.keyword("over")?;
    scope.ring_named(&l.ident()?)?;
    l.expect('=')?;
    let (text, col) = l.group()?;
    let members = parse_ident_list(&text, col, l.number)?;
    for m in &members {
        if !scope.extensions.contains_key(m) {
            return Err(Error::UnknownIdentifier(m.clone()));
        }
    }
    l.finish()?;
    scope.declare(&name, "chain")?;
    Ok(Decl::Chain(ChainDecl { name, members }))
}

pub fn parse_session(text: &str) -> Result<Session> {
    let mut scope = Scope::default();
    let mut decls = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut l = Line::new(raw, idx + 1);
        let kw = l.ident()?;
        let decl = match kw.as_str() {
            "ring" => parse_ring(&mut l, &mut scope)?,
            "ideal" => parse_ideal(&mut l, &mut scope)?,
            "extension" => parse_extension(&mut l, &mut scope)?,
            "witness" => parse_witness(&mut l, &mut scope)?,
            "chain" => parse_chain(&mut l, &mut scope)?,
            other => {
                return Err(Error::Syntax {
                    line: idx + 1,
                    column: 1 + raw.len() - raw.trim_start().len(),
                    message: format!("unknown declaration `{other}`"),
                })
            }
        };
        decls.push(decl);
    }
    Ok(Session { decls })
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    let mut s = String::new();
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        let _ = write!(s, "{x}");
    }
    s
}

impl fmt::Display for Decl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decl::Ring(r) => {
                let order = match r.ring.order() {
                    MonomialOrder::Lex => "lex",
                    _ => "grevlex",
                };
                write!(
                    f,
                    "ring {} = poly(p={}; vars={}; order={}) / ideal({})",
                    r.name,
                    r.ring.characteristic(),
                    r.ring.names().join(","),
                    order,
                    join(&r.ideal)
                )?;
                if r.domain {
                    write!(f, " domain")?;
                }
                Ok(())
            }
            Decl::Ideal(i) => {
                write!(f, "ideal {} in {} = ({})", i.name, RING_PLACEHOLDER, join(&i.gens))?;
                if i.prime {
                    write!(f, " prime")?;
                }
                Ok(())
            }
            Decl::Extension(e) => write!(
                f,
                "extension {} over {} = adjoin({}) / relations({})",
                e.name,
                RING_PLACEHOLDER,
                e.adjoined.join(", "),
                join(&e.relations)
            ),
            Decl::Witness(w) => match &w.spec {
                WitnessSpec::Auto => write!(f, "witness {} in {} = auto", w.name, RING_PLACEHOLDER),
                WitnessSpec::Poly(u) => write!(f, "witness {} in {} = poly({u})", w.name, RING_PLACEHOLDER),
            },
            Decl::Chain(c) => write!(
                f,
                "chain {} over {} = ({})",
                c.name,
                RING_PLACEHOLDER,
                c.members.join(", ")
            ),
        }
    }
}

const RING_PLACEHOLDER: &str = "\u{0}";

/// Canonical text of the whole session; one declaration per line.
pub fn print_session(s: &Session) -> String {
    let ring_name = s.ring().map(|r| r.name.as_str()).unwrap_or("R");
    let mut out = String::new();
    for d in &s.decls {
        out.push_str(&d.to_string().replace(RING_PLACEHOLDER, ring_name));
        out.push('\n');
    }
    out
}

/// `(g1, g2, …)` with generators in canonical order; `(0)` for none.
pub fn print_ideal(gens: &[Polynomial]) -> String {
    let gens = canonical_list(gens.to_vec());
    if gens.is_empty() {
        "(0)".to_string()
    } else {
        format!("({})", join(&gens))
    }
}

pub fn print_chain(members: &[String]) -> String {
    format!("chain({})", members.join(", "))
}
