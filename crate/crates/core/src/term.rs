//! Terms over variables with `dom`, `ran`, composition (`;`) and join (`+`).
//!
//! One AST serves both signatures. Composition is read as angelic or demonic
//! composition depending on the evaluation mode; the demonic signature has no
//! join, and that restriction is enforced by the operations that need it
//! rather than by the type.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! term := comp ('+' comp)*
//! comp := atom (';' atom)*
//! atom := 'dom' '(' term ')' | 'ran' '(' term ')' | var | '(' term ')'
//! var  := [a-z][a-zA-Z0-9_]*      (excluding `dom` and `ran`)
//! ```

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default cap on the total node count produced by [`join_normal_form`].
pub const DEFAULT_JNF_NODE_CAP: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Dom(Box<Term>),
    Ran(Box<Term>),
    Comp(Box<Term>, Box<Term>),
    Join(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn dom(t: Term) -> Term {
        Term::Dom(Box::new(t))
    }

    pub fn ran(t: Term) -> Term {
        Term::Ran(Box::new(t))
    }

    pub fn comp(l: Term, r: Term) -> Term {
        Term::Comp(Box::new(l), Box::new(r))
    }

    pub fn join(l: Term, r: Term) -> Term {
        Term::Join(Box::new(l), Box::new(r))
    }

    /// Left-associated composition of a non-empty sequence.
    pub fn comp_all<I: IntoIterator<Item = Term>>(terms: I) -> Option<Term> {
        terms.into_iter().reduce(Term::comp)
    }

    /// Left-associated join of a non-empty sequence.
    pub fn join_all<I: IntoIterator<Item = Term>>(terms: I) -> Option<Term> {
        terms.into_iter().reduce(Term::join)
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::Dom(t) | Term::Ran(t) => 1 + t.size(),
            Term::Comp(l, r) | Term::Join(l, r) => 1 + l.size() + r.size(),
        }
    }

    pub fn is_join_free(&self) -> bool {
        match self {
            Term::Var(_) => true,
            Term::Dom(t) | Term::Ran(t) => t.is_join_free(),
            Term::Comp(l, r) => l.is_join_free() && r.is_join_free(),
            Term::Join(..) => false,
        }
    }

    /// Returns an error naming `context` if the term contains a join.
    pub fn require_join_free(&self, context: &str) -> Result<()> {
        if self.is_join_free() {
            Ok(())
        } else {
            Err(Error::JoinNotAllowed(format!("{context}: `{self}`")))
        }
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_variables(&mut out);
        out
    }

    fn collect_variables(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(x) => {
                out.insert(x.clone());
            }
            Term::Dom(t) | Term::Ran(t) => t.collect_variables(out),
            Term::Comp(l, r) | Term::Join(l, r) => {
                l.collect_variables(out);
                r.collect_variables(out);
            }
        }
    }

    /// The subterm at `path`, where each step selects child 0 (left / only)
    /// or child 1 (right).
    pub fn subterm(&self, path: &[u8]) -> Option<&Term> {
        let Some((&step, rest)) = path.split_first() else {
            return Some(self);
        };
        match (self, step) {
            (Term::Dom(t) | Term::Ran(t), 0) => t.subterm(rest),
            (Term::Comp(l, _) | Term::Join(l, _), 0) => l.subterm(rest),
            (Term::Comp(_, r) | Term::Join(_, r), 1) => r.subterm(rest),
            _ => None,
        }
    }

    /// A copy of `self` with the subterm at `path` replaced.
    pub fn replace_at(&self, path: &[u8], replacement: Term) -> Option<Term> {
        let Some((&step, rest)) = path.split_first() else {
            return Some(replacement);
        };
        Some(match (self, step) {
            (Term::Dom(t), 0) => Term::dom(t.replace_at(rest, replacement)?),
            (Term::Ran(t), 0) => Term::ran(t.replace_at(rest, replacement)?),
            (Term::Comp(l, r), 0) => Term::comp(l.replace_at(rest, replacement)?, (**r).clone()),
            (Term::Comp(l, r), 1) => Term::comp((**l).clone(), r.replace_at(rest, replacement)?),
            (Term::Join(l, r), 0) => Term::join(l.replace_at(rest, replacement)?, (**r).clone()),
            (Term::Join(l, r), 1) => Term::join((**l).clone(), r.replace_at(rest, replacement)?),
            _ => return None,
        })
    }

    /// All positions in pre-order.
    pub fn positions(&self) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.collect_positions(&mut path, &mut out);
        out
    }

    fn collect_positions(&self, path: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        out.push(path.clone());
        match self {
            Term::Var(_) => {}
            Term::Dom(t) | Term::Ran(t) => {
                path.push(0);
                t.collect_positions(path, out);
                path.pop();
            }
            Term::Comp(l, r) | Term::Join(l, r) => {
                path.push(0);
                l.collect_positions(path, out);
                path.pop();
                path.push(1);
                r.collect_positions(path, out);
                path.pop();
            }
        }
    }

    /// Simultaneous substitution of variables. Unmapped variables are kept.
    pub fn substitute(&self, subst: &BTreeMap<String, Term>) -> Term {
        match self {
            Term::Var(x) => subst.get(x).cloned().unwrap_or_else(|| self.clone()),
            Term::Dom(t) => Term::dom(t.substitute(subst)),
            Term::Ran(t) => Term::ran(t.substitute(subst)),
            Term::Comp(l, r) => Term::comp(l.substitute(subst), r.substitute(subst)),
            Term::Join(l, r) => Term::join(l.substitute(subst), r.substitute(subst)),
        }
    }

    /// First-order matching of `self` as a pattern against `target`.
    pub fn match_against(&self, target: &Term) -> Option<BTreeMap<String, Term>> {
        let mut subst = BTreeMap::new();
        if self.match_into(target, &mut subst) {
            Some(subst)
        } else {
            None
        }
    }

    fn match_into(&self, target: &Term, subst: &mut BTreeMap<String, Term>) -> bool {
        match (self, target) {
            (Term::Var(x), _) => match subst.get(x) {
                Some(bound) => bound == target,
                None => {
                    subst.insert(x.clone(), target.clone());
                    true
                }
            },
            (Term::Dom(p), Term::Dom(t)) | (Term::Ran(p), Term::Ran(t)) => p.match_into(t, subst),
            (Term::Comp(pl, pr), Term::Comp(tl, tr)) | (Term::Join(pl, pr), Term::Join(tl, tr)) => {
                pl.match_into(tl, subst) && pr.match_into(tr, subst)
            }
            _ => false,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_term(self))
    }
}

impl FromStr for Term {
    type Err = Error;

    fn from_str(s: &str) -> Result<Term> {
        parse_term(s)
    }
}

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_term(self))
    }
}

impl<'de> Deserialize<'de> for Term {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Term, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_term(&text).map_err(serde::de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// Parsing

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token<'a> {
    Ident(&'a str),
    LParen,
    RParen,
    Semi,
    Plus,
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    /// Returns the next token and its starting offset.
    fn next(&mut self) -> Result<(Token<'a>, usize)> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let Some(&b) = bytes.get(start) else {
            return Ok((Token::End, start));
        };
        let tok = match b {
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b';' => Token::Semi,
            b'+' => Token::Plus,
            b'a'..=b'z' => {
                let mut end = start + 1;
                while end < bytes.len() && (bytes[end].is_ascii_alphanumeric() || bytes[end] == b'_') {
                    end += 1;
                }
                self.pos = end;
                return Ok((Token::Ident(&self.src[start..end]), start));
            }
            _ => {
                let ch = self.src[start..].chars().next().unwrap_or('?');
                return Err(Error::Syntax { offset: start, message: format!("unexpected character `{ch}`") });
            }
        };
        self.pos = start + 1;
        Ok((tok, start))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    peeked: Option<(Token<'a>, usize)>,
}

impl<'a> Parser<'a> {
    fn peek(&mut self) -> Result<&(Token<'a>, usize)> {
        if self.peeked.is_none() {
            self.peeked = Some(self.lexer.next()?);
        }
        Ok(self.peeked.as_ref().expect("just filled"))
    }

    fn bump(&mut self) -> Result<(Token<'a>, usize)> {
        match self.peeked.take() {
            Some(t) => Ok(t),
            None => self.lexer.next(),
        }
    }

    fn expect(&mut self, want: Token<'static>, what: &str) -> Result<()> {
        let (tok, offset) = self.bump()?;
        if tok == want {
            Ok(())
        } else {
            Err(Error::Syntax { offset, message: format!("expected {what}, found {}", describe(&tok)) })
        }
    }

    fn term(&mut self) -> Result<Term> {
        let mut acc = self.comp()?;
        while self.peek()?.0 == Token::Plus {
            self.bump()?;
            acc = Term::join(acc, self.comp()?);
        }
        Ok(acc)
    }

    fn comp(&mut self) -> Result<Term> {
        let mut acc = self.atom()?;
        while self.peek()?.0 == Token::Semi {
            self.bump()?;
            acc = Term::comp(acc, self.atom()?);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Term> {
        let (tok, offset) = self.bump()?;
        match tok {
            Token::Ident(kw @ ("dom" | "ran")) => {
                let (next, next_offset) = self.bump()?;
                if next != Token::LParen {
                    return Err(Error::Syntax {
                        offset: next_offset,
                        message: format!("reserved word `{kw}` cannot be used as a variable; expected `(`"),
                    });
                }
                let inner = self.term()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(if kw == "dom" { Term::dom(inner) } else { Term::ran(inner) })
            }
            Token::Ident(name) => Ok(Term::var(name)),
            Token::LParen => {
                let inner = self.term()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(inner)
            }
            other => Err(Error::Syntax { offset, message: format!("expected a term, found {}", describe(&other)) }),
        }
    }
}

fn describe(tok: &Token<'_>) -> String {
    match tok {
        Token::Ident(s) => format!("`{s}`"),
        Token::LParen => "`(`".into(),
        Token::RParen => "`)`".into(),
        Token::Semi => "`;`".into(),
        Token::Plus => "`+`".into(),
        Token::End => "end of input".into(),
    }
}

/// Parses a term. Composition binds tighter than join; both associate to the left.
pub fn parse_term(text: &str) -> Result<Term> {
    let mut parser = Parser { lexer: Lexer { src: text, pos: 0 }, peeked: None };
    let t = parser.term()?;
    let (tok, offset) = parser.bump()?;
    if tok != Token::End {
        return Err(Error::Syntax { offset, message: format!("unexpected {} after term", describe(&tok)) });
    }
    Ok(t)
}

// ---------------------------------------------------------------------------
// Printing

/// Prints a term in the input grammar with as few parentheses as possible.
pub fn format_term(t: &Term) -> String {
    let mut out = String::new();
    write_term(t, 0, &mut out);
    out
}

// Precedence levels: 0 = join context, 1 = composition left operand, 2 = atom.
fn write_term(t: &Term, level: u8, out: &mut String) {
    match t {
        Term::Var(x) => out.push_str(x),
        Term::Dom(s) | Term::Ran(s) => {
            out.push_str(if matches!(t, Term::Dom(_)) { "dom(" } else { "ran(" });
            write_term(s, 0, out);
            out.push(')');
        }
        Term::Comp(l, r) => {
            let paren = level > 1;
            if paren {
                out.push('(');
            }
            write_term(l, 1, out);
            out.push(';');
            write_term(r, 2, out);
            if paren {
                out.push(')');
            }
        }
        Term::Join(l, r) => {
            let paren = level > 0;
            if paren {
                out.push('(');
            }
            write_term(l, 0, out);
            out.push_str(" + ");
            write_term(r, 1, out);
            if paren {
                out.push(')');
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Join normal form

/// Distributes every operation over join, returning join-free disjuncts in
/// left-to-right order with structural duplicates removed.
///
/// The output can be exponential in the number of join nodes; see
/// [`join_normal_form_capped`].
pub fn join_normal_form(t: &Term) -> Result<Vec<Term>> {
    join_normal_form_capped(t, DEFAULT_JNF_NODE_CAP)
}

/// As [`join_normal_form`], failing with [`Error::ResourceLimit`] once the
/// disjuncts of any intermediate result exceed `node_cap` nodes in total.
pub fn join_normal_form_capped(t: &Term, node_cap: usize) -> Result<Vec<Term>> {
    let parts = jnf(t, node_cap)?;
    let mut seen = HashSet::new();
    Ok(parts.into_iter().filter(|p| seen.insert(p.clone())).collect())
}

fn jnf(t: &Term, cap: usize) -> Result<Vec<Term>> {
    let out = match t {
        Term::Var(_) => vec![t.clone()],
        Term::Dom(s) => jnf(s, cap)?.into_iter().map(Term::dom).collect(),
        Term::Ran(s) => jnf(s, cap)?.into_iter().map(Term::ran).collect(),
        Term::Join(l, r) => {
            let mut out = jnf(l, cap)?;
            out.extend(jnf(r, cap)?);
            out
        }
        Term::Comp(l, r) => {
            let left = jnf(l, cap)?;
            let right = jnf(r, cap)?;
            let total: usize = left.iter().map(Term::size).sum::<usize>() * right.len()
                + right.iter().map(Term::size).sum::<usize>() * left.len()
                + left.len() * right.len();
            if total > cap {
                return Err(over_cap(total, cap));
            }
            let mut out = Vec::with_capacity(left.len() * right.len());
            for a in &left {
                for b in &right {
                    out.push(Term::comp(a.clone(), b.clone()));
                }
            }
            out
        }
    };
    let total: usize = out.iter().map(Term::size).sum();
    if total > cap {
        return Err(over_cap(total, cap));
    }
    Ok(out)
}

fn over_cap(total: usize, cap: usize) -> Error {
    Error::ResourceLimit(format!("join normal form needs {total} nodes, cap is {cap}"))
}

// ---------------------------------------------------------------------------
// Out-signature

/// Per-variable count of occurrences that are not under any `dom` or `ran`.
/// Every variable of the term has an entry, possibly zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OutSignature {
    pub counts: BTreeMap<String, usize>,
}

impl OutSignature {
    pub fn get(&self, var: &str) -> usize {
        self.counts.get(var).copied().unwrap_or(0)
    }

    /// Total number of variable occurrences outside `dom`/`ran`.
    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }
}

/// Computes the out-signature of a join-free term.
pub fn out_signature(t: &Term) -> Result<OutSignature> {
    t.require_join_free("out_signature")?;
    let mut counts: BTreeMap<String, usize> = t.variables().into_iter().map(|v| (v, 0)).collect();
    count_outside(t, &mut counts);
    Ok(OutSignature { counts })
}

fn count_outside(t: &Term, counts: &mut BTreeMap<String, usize>) {
    match t {
        Term::Var(x) => *counts.entry(x.clone()).or_insert(0) += 1,
        Term::Dom(_) | Term::Ran(_) => {}
        Term::Comp(l, r) | Term::Join(l, r) => {
            count_outside(l, counts);
            count_outside(r, counts);
        }
    }
}

// ---------------------------------------------------------------------------
// Generation

/// All join-free terms over `vars` with at most `max_nodes` AST nodes,
/// ordered by size and then by construction order.
pub fn enumerate_join_free(vars: &[&str], max_nodes: usize) -> Vec<Term> {
    let mut by_size: Vec<Vec<Term>> = vec![Vec::new(); max_nodes + 1];
    for n in 1..=max_nodes {
        let mut level = Vec::new();
        if n == 1 {
            level.extend(vars.iter().map(|v| Term::var(*v)));
        } else {
            for t in &by_size[n - 1] {
                level.push(Term::dom(t.clone()));
                level.push(Term::ran(t.clone()));
            }
            for left_size in 1..n - 1 {
                let right_size = n - 1 - left_size;
                for l in &by_size[left_size] {
                    for r in &by_size[right_size] {
                        level.push(Term::comp(l.clone(), r.clone()));
                    }
                }
            }
        }
        by_size[n] = level;
    }
    by_size.into_iter().flatten().collect()
}

/// A random term of depth at most `depth` over `vars`. Joins appear only
/// when `allow_join` is set.
pub fn random_term<R: Rng + ?Sized>(rng: &mut R, vars: &[String], depth: usize, allow_join: bool) -> Term {
    assert!(!vars.is_empty(), "random_term needs at least one variable");
    if depth == 0 || rng.gen_bool(0.3) {
        return Term::var(vars[rng.gen_range(0..vars.len())].clone());
    }
    let choices = if allow_join { 4 } else { 3 };
    match rng.gen_range(0..choices) {
        0 => Term::dom(random_term(rng, vars, depth - 1, allow_join)),
        1 => Term::ran(random_term(rng, vars, depth - 1, allow_join)),
        2 => Term::comp(random_term(rng, vars, depth - 1, allow_join), random_term(rng, vars, depth - 1, allow_join)),
        _ => Term::join(random_term(rng, vars, depth - 1, allow_join), random_term(rng, vars, depth - 1, allow_join)),
    }
}
