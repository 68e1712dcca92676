//! Signatures, terms and identities.
//!
//! Terms are written in prefix notation: `(op child ...)` for applications
//! and bare identifiers for variables, e.g. `(· (· x y) x)`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Name = Arc<str>;

/// An operation symbol together with its arity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OpSymbol {
    pub name: Name,
    pub arity: usize,
}

/// An ordered list of operation symbols, all of arity at least one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    ops: Vec<OpSymbol>,
}

impl Signature {
    pub fn new<S: AsRef<str>>(ops: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let mut out: Vec<OpSymbol> = Vec::new();
        for (name, arity) in ops {
            let name = name.as_ref();
            validate_symbol_name(name)?;
            if arity == 0 {
                return Err(Error::NullarySymbol(name.to_string()));
            }
            if out.iter().any(|op| &*op.name == name) {
                return Err(Error::DuplicateSymbol(name.to_string()));
            }
            out.push(OpSymbol {
                name: name.into(),
                arity,
            });
        }
        Ok(Self { ops: out })
    }

    /// Parses `op <symbol> <arity>` lines. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut ops = Vec::new();
        for line in text.lines() {
            let line = strip_comment(line);
            if line.is_empty() {
                continue;
            }
            ops.push(parse_op_line(line)?);
        }
        Self::new(ops)
    }

    pub fn ops(&self) -> &[OpSymbol] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.ops.iter().position(|op| &*op.name == name)
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.index_of(name).map(|i| self.ops[i].arity)
    }

    /// True when some symbol has arity two or more.
    pub fn is_plural(&self) -> bool {
        self.ops.iter().any(|op| op.arity >= 2)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for op in &self.ops {
            writeln!(f, "op {} {}", op.name, op.arity)?;
        }
        Ok(())
    }
}

pub(crate) fn parse_op_line(line: &str) -> Result<(String, usize)> {
    let parts: Vec<&str> = line.split_whitespace().collect();
    match parts.as_slice() {
        ["op", name, arity] => {
            let arity = arity
                .parse::<usize>()
                .map_err(|_| Error::Syntax(format!("bad arity in `{line}`")))?;
            Ok((name.to_string(), arity))
        }
        _ => Err(Error::Syntax(format!("expected `op <symbol> <arity>`, got `{line}`"))),
    }
}

pub(crate) fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => line[..i].trim(),
        None => line.trim(),
    }
}

fn validate_symbol_name(name: &str) -> Result<()> {
    if name.is_empty()
        || name == "="
        || name.chars().any(|c| c.is_whitespace() || c == '(' || c == ')' || c == '#')
    {
        return Err(Error::Syntax(format!("invalid symbol name `{name}`")));
    }
    Ok(())
}

/// A term: a variable or an operation symbol applied to subterms.
///
/// The derived ordering is structural and only used to canonicalize; the
/// enumeration order lives in [`crate::enumerate`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Name),
    App(Name, Vec<Term>),
}

impl Term {
    pub fn var(name: &str) -> Self {
        Term::Var(name.into())
    }

    pub fn app(op: &str, args: Vec<Term>) -> Self {
        Term::App(op.into(), args)
    }

    pub fn unary(op: &str, a: Term) -> Self {
        Term::App(op.into(), vec![a])
    }

    pub fn binary(op: &str, a: Term, b: Term) -> Self {
        Term::App(op.into(), vec![a, b])
    }

    pub fn parse(text: &str, sig: &Signature) -> Result<Self> {
        let tokens = tokenize(text)?;
        let mut pos = 0;
        let term = parse_tokens(&tokens, &mut pos, sig)?;
        if pos != tokens.len() {
            return Err(Error::Syntax(format!("trailing input after term in `{text}`")));
        }
        Ok(term)
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    /// Checks that every symbol is declared with the arity used here.
    pub fn check(&self, sig: &Signature) -> Result<()> {
        match self {
            Term::Var(_) => Ok(()),
            Term::App(op, args) => {
                let arity = sig
                    .arity(op)
                    .ok_or_else(|| Error::UnknownSymbol(op.to_string()))?;
                if arity != args.len() {
                    return Err(Error::ArityMismatch {
                        symbol: op.to_string(),
                        expected: arity,
                        found: args.len(),
                    });
                }
                args.iter().try_for_each(|a| a.check(sig))
            }
        }
    }

    /// Simultaneous substitution; unmapped variables stay fixed.
    pub fn substitute(&self, map: &HashMap<Name, Term>) -> Term {
        match self {
            Term::Var(v) => map.get(v).cloned().unwrap_or_else(|| self.clone()),
            Term::App(op, args) => {
                Term::App(op.clone(), args.iter().map(|a| a.substitute(map)).collect())
            }
        }
    }

    /// Renames the variable `from` to the term `to`.
    pub fn replace_var(&self, from: &str, to: &Term) -> Term {
        let mut map = HashMap::new();
        map.insert(Name::from(from), to.clone());
        self.substitute(&map)
    }

    pub fn variables(&self) -> VarInfo {
        let mut order = Vec::new();
        self.collect_vars(&mut order);
        let first = order[0].clone();
        let last = order[order.len() - 1].clone();
        let set: BTreeSet<Name> = order.iter().cloned().collect();
        VarInfo { set, first, last }
    }

    /// Distinct variables in order of first occurrence.
    pub fn vars_in_order(&self) -> Vec<Name> {
        let mut occ = Vec::new();
        self.collect_vars(&mut occ);
        let mut seen = BTreeSet::new();
        occ.retain(|v| seen.insert(v.clone()));
        occ
    }

    /// Variable occurrences, left to right, with repetition.
    pub fn leaves(&self) -> Vec<Name> {
        let mut occ = Vec::new();
        self.collect_vars(&mut occ);
        occ
    }

    fn collect_vars(&self, out: &mut Vec<Name>) {
        match self {
            Term::Var(v) => out.push(v.clone()),
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn var_set(&self) -> BTreeSet<Name> {
        let mut occ = Vec::new();
        self.collect_vars(&mut occ);
        occ.into_iter().collect()
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::App(op, args) => {
                write!(f, "({op}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Result of [`Term::variables`]. A term always contains at least one
/// variable because there are no nullary symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarInfo {
    pub set: BTreeSet<Name>,
    pub first: Name,
    pub last: Name,
}

/// An equation `lhs = rhs`, universally quantified.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Identity {
    pub lhs: Term,
    pub rhs: Term,
}

impl Identity {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Self { lhs, rhs }
    }

    /// Parses `lhs = rhs`.
    pub fn parse(text: &str, sig: &Signature) -> Result<Self> {
        let tokens = tokenize(text)?;
        let mut depth = 0i32;
        let mut split = None;
        for (i, tok) in tokens.iter().enumerate() {
            match tok {
                Token::Open => depth += 1,
                Token::Close => depth -= 1,
                Token::Atom(a) if depth == 0 && a == "=" => {
                    if split.is_some() {
                        return Err(Error::Syntax(format!("more than one `=` in `{text}`")));
                    }
                    split = Some(i);
                }
                _ => {}
            }
        }
        let split = split.ok_or_else(|| Error::Syntax(format!("missing `=` in `{text}`")))?;
        let side = |toks: &[Token]| -> Result<Term> {
            let mut pos = 0;
            let t = parse_tokens(toks, &mut pos, sig)?;
            if pos != toks.len() {
                return Err(Error::Syntax(format!("trailing input in `{text}`")));
            }
            Ok(t)
        };
        Ok(Self {
            lhs: side(&tokens[..split])?,
            rhs: side(&tokens[split + 1..])?,
        })
    }

    pub fn check(&self, sig: &Signature) -> Result<()> {
        self.lhs.check(sig)?;
        self.rhs.check(sig)
    }

    /// Distinct variables, first occurrence order over lhs then rhs.
    pub fn variables(&self) -> Vec<Name> {
        let mut vars = self.lhs.vars_in_order();
        for v in self.rhs.vars_in_order() {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        vars
    }

    /// Both sides have the same set of variables.
    pub fn is_regular(&self) -> bool {
        self.lhs.var_set() == self.rhs.var_set()
    }

    pub fn substitute(&self, map: &HashMap<Name, Term>) -> Identity {
        Identity::new(self.lhs.substitute(map), self.rhs.substitute(map))
    }

    pub fn flipped(&self) -> Identity {
        Identity::new(self.rhs.clone(), self.lhs.clone())
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

impl Serialize for Identity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Parses an identity list: optional `op` lines, then one identity per line.
/// Returns the declared signature (if any) and the raw identity lines.
pub fn split_identity_file(text: &str) -> Result<(Option<Signature>, Vec<String>)> {
    let mut ops = Vec::new();
    let mut lines = Vec::new();
    for line in text.lines() {
        let line = strip_comment(line);
        if line.is_empty() {
            continue;
        }
        if line.starts_with("op ") {
            if !lines.is_empty() {
                return Err(Error::Syntax("`op` lines must precede identities".into()));
            }
            ops.push(parse_op_line(line)?);
        } else {
            lines.push(line.to_string());
        }
    }
    let sig = if ops.is_empty() {
        None
    } else {
        Some(Signature::new(ops)?)
    };
    Ok((sig, lines))
}

/// Parses a whole identity file against `sig` (or the file's own signature).
pub fn parse_identity_file(text: &str, sig: Option<&Signature>) -> Result<(Signature, Vec<Identity>)> {
    let (declared, lines) = split_identity_file(text)?;
    let sig = match (declared, sig) {
        (Some(d), Some(s)) if &d != s => {
            return Err(Error::SignatureMismatch(
                "identity file declares a different signature".into(),
            ))
        }
        (Some(d), _) => d,
        (None, Some(s)) => s.clone(),
        (None, None) => {
            return Err(Error::SignatureMismatch(
                "identity file has no `op` lines and no signature was supplied".into(),
            ))
        }
    };
    let ids = lines
        .iter()
        .map(|l| Identity::parse(l, &sig))
        .collect::<Result<Vec<_>>>()?;
    Ok((sig, ids))
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Open,
    Close,
    Atom(String),
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut cur = String::new();
    let flush = |cur: &mut String, tokens: &mut Vec<Token>| {
        if !cur.is_empty() {
            tokens.push(Token::Atom(std::mem::take(cur)));
        }
    };
    for c in text.chars() {
        match c {
            '(' => {
                flush(&mut cur, &mut tokens);
                tokens.push(Token::Open);
            }
            ')' => {
                flush(&mut cur, &mut tokens);
                tokens.push(Token::Close);
            }
            c if c.is_whitespace() => flush(&mut cur, &mut tokens),
            c => cur.push(c),
        }
    }
    flush(&mut cur, &mut tokens);
    if tokens.is_empty() {
        return Err(Error::Syntax("empty term".into()));
    }
    Ok(tokens)
}

fn parse_tokens(tokens: &[Token], pos: &mut usize, sig: &Signature) -> Result<Term> {
    match tokens.get(*pos) {
        None => Err(Error::Syntax("unexpected end of input".into())),
        Some(Token::Close) => Err(Error::Syntax("unexpected `)`".into())),
        Some(Token::Atom(a)) => {
            *pos += 1;
            if a == "=" {
                return Err(Error::Syntax("unexpected `=`".into()));
            }
            Ok(Term::Var(a.as_str().into()))
        }
        Some(Token::Open) => {
            *pos += 1;
            let op = match tokens.get(*pos) {
                Some(Token::Atom(a)) => a.clone(),
                _ => return Err(Error::Syntax("expected an operation symbol after `(`".into())),
            };
            *pos += 1;
            let arity = sig
                .arity(&op)
                .ok_or_else(|| Error::UnknownSymbol(op.clone()))?;
            let mut args = Vec::new();
            loop {
                match tokens.get(*pos) {
                    Some(Token::Close) => {
                        *pos += 1;
                        break;
                    }
                    None => return Err(Error::Syntax("missing `)`".into())),
                    _ => args.push(parse_tokens(tokens, pos, sig)?),
                }
            }
            if args.len() != arity {
                return Err(Error::ArityMismatch {
                    symbol: op,
                    expected: arity,
                    found: args.len(),
                });
            }
            Ok(Term::App(op.into(), args))
        }
    }
}
