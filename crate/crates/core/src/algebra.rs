//! Finite algebras given by operation tables.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::term::{parse_op_line, strip_comment, Identity, Name, Signature, Term};

/// Carrier elements are dense indices `0..n`.
pub type Element = usize;

/// A finite algebra: carrier `0..n` and one total table per symbol.
///
/// Tables are stored row-major over argument tuples in lexicographic order,
/// so the last argument varies fastest.
#[derive(Clone, Debug)]
pub struct FiniteAlgebra {
    sig: Signature,
    n: usize,
    tables: Vec<Vec<Element>>,
    labels: Option<Vec<String>>,
}

impl PartialEq for FiniteAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.sig == other.sig && self.n == other.n && self.tables == other.tables
    }
}

impl Eq for FiniteAlgebra {}

impl FiniteAlgebra {
    pub fn new(sig: Signature, n: usize, tables: Vec<Vec<Element>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidAlgebra("carrier must be nonempty".into()));
        }
        if tables.len() != sig.len() {
            return Err(Error::InvalidAlgebra(format!(
                "{} tables for {} symbols",
                tables.len(),
                sig.len()
            )));
        }
        for (op, table) in sig.ops().iter().zip(&tables) {
            let expected = n.pow(op.arity as u32);
            if table.len() != expected {
                return Err(Error::InvalidAlgebra(format!(
                    "table for `{}` has {} entries, expected {expected}",
                    op.name,
                    table.len()
                )));
            }
            if let Some(&bad) = table.iter().find(|&&e| e >= n) {
                return Err(Error::InvalidAlgebra(format!(
                    "table for `{}` contains {bad}, outside 0..{n}",
                    op.name
                )));
            }
        }
        Ok(Self {
            sig,
            n,
            tables,
            labels: None,
        })
    }

    /// Builds tables by calling `f(op_index, args)` on every argument tuple.
    pub fn from_fn(sig: Signature, n: usize, mut f: impl FnMut(usize, &[Element]) -> Element) -> Result<Self> {
        let tables = sig
            .ops()
            .iter()
            .enumerate()
            .map(|(i, op)| tuples(n, op.arity).map(|args| f(i, &args)).collect())
            .collect();
        Self::new(sig, n, tables)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::InvalidAlgebra("label count differs from carrier size".into()));
        }
        if labels.iter().collect::<BTreeSet<_>>().len() != labels.len() {
            return Err(Error::InvalidAlgebra("duplicate element labels".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn table(&self, op: usize) -> &[Element] {
        &self.tables[op]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, e: Element) -> String {
        match &self.labels {
            Some(l) => l[e].clone(),
            None => e.to_string(),
        }
    }

    pub fn element_by_label(&self, text: &str) -> Option<Element> {
        if let Some(labels) = &self.labels {
            if let Some(i) = labels.iter().position(|l| l == text) {
                return Some(i);
            }
        }
        text.parse::<usize>().ok().filter(|&e| e < self.n)
    }

    /// Applies symbol number `op` to `args`.
    pub fn apply(&self, op: usize, args: &[Element]) -> Element {
        let idx = args.iter().fold(0, |acc, &a| acc * self.n + a);
        self.tables[op][idx]
    }

    pub fn apply_named(&self, op: &str, args: &[Element]) -> Result<Element> {
        let i = self
            .sig
            .index_of(op)
            .ok_or_else(|| Error::UnknownSymbol(op.to_string()))?;
        Ok(self.apply(i, args))
    }

    pub fn evaluate(&self, t: &Term, env: &HashMap<Name, Element>) -> Result<Element> {
        match t {
            Term::Var(v) => env
                .get(v)
                .copied()
                .ok_or_else(|| Error::UnboundVariable(v.to_string())),
            Term::App(op, args) => {
                let i = self.op_index_checked(op, args.len())?;
                let vals = args
                    .iter()
                    .map(|a| self.evaluate(a, env))
                    .collect::<Result<Vec<_>>>()?;
                Ok(self.apply(i, &vals))
            }
        }
    }

    fn op_index_checked(&self, op: &str, arity: usize) -> Result<usize> {
        let i = self.sig.index_of(op).ok_or_else(|| {
            Error::SignatureMismatch(format!("symbol `{op}` is not in the algebra's signature"))
        })?;
        let expected = self.sig.ops()[i].arity;
        if expected != arity {
            return Err(Error::ArityMismatch {
                symbol: op.to_string(),
                expected,
                found: arity,
            });
        }
        Ok(i)
    }

    /// Compiles `t` for repeated evaluation with variables bound by position in `vars`.
    pub fn compile(&self, t: &Term, vars: &[Name]) -> Result<CompiledTerm> {
        let mut code = Vec::new();
        self.compile_into(t, vars, &mut code)?;
        Ok(CompiledTerm { code })
    }

    fn compile_into(&self, t: &Term, vars: &[Name], code: &mut Vec<Instr>) -> Result<()> {
        match t {
            Term::Var(v) => {
                let slot = vars
                    .iter()
                    .position(|w| w == v)
                    .ok_or_else(|| Error::UnboundVariable(v.to_string()))?;
                code.push(Instr::Load(slot));
            }
            Term::App(op, args) => {
                let i = self.op_index_checked(op, args.len())?;
                for a in args {
                    self.compile_into(a, vars, code)?;
                }
                code.push(Instr::Apply(i, args.len()));
            }
        }
        Ok(())
    }

    /// First assignment (in lexicographic order) violating `id`, if any.
    pub fn counterexample(&self, id: &Identity) -> Result<Option<Vec<(Name, Element)>>> {
        let vars = id.variables();
        let lhs = self.compile(&id.lhs, &vars)?;
        let rhs = self.compile(&id.rhs, &vars)?;
        let mut stack = Vec::new();
        for env in tuples(self.n, vars.len()) {
            if lhs.eval(self, &env, &mut stack) != rhs.eval(self, &env, &mut stack) {
                return Ok(Some(vars.iter().cloned().zip(env).collect()));
            }
        }
        Ok(None)
    }

    /// Checks `id` under all `n^k` assignments.
    pub fn satisfies(&self, id: &Identity) -> Result<bool> {
        Ok(self.counterexample(id)?.is_none())
    }

    pub fn satisfies_all<'a>(&self, ids: impl IntoIterator<Item = &'a Identity>) -> Result<bool> {
        for id in ids {
            if !self.satisfies(id)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_subuniverse(&self, set: &BTreeSet<Element>) -> bool {
        let elems: Vec<Element> = set.iter().copied().collect();
        self.sig.ops().iter().enumerate().all(|(i, op)| {
            tuples(elems.len(), op.arity).all(|idx| {
                let args: Vec<Element> = idx.iter().map(|&j| elems[j]).collect();
                set.contains(&self.apply(i, &args))
            })
        })
    }

    /// Least superset of `set` closed under every operation.
    pub fn subuniverse_closure(&self, set: &BTreeSet<Element>) -> BTreeSet<Element> {
        let mut closed = set.clone();
        loop {
            let elems: Vec<Element> = closed.iter().copied().collect();
            let mut added = false;
            for (i, op) in self.sig.ops().iter().enumerate() {
                for idx in tuples(elems.len(), op.arity) {
                    let args: Vec<Element> = idx.iter().map(|&j| elems[j]).collect();
                    added |= closed.insert(self.apply(i, &args));
                }
            }
            if !added {
                return closed;
            }
        }
    }

    /// The subalgebra on `set`; element `k` of the result is the `k`-th
    /// smallest member of `set`, labelled as in `self`.
    pub fn restrict(&self, set: &BTreeSet<Element>) -> Result<FiniteAlgebra> {
        if set.is_empty() || set.iter().any(|&e| e >= self.n) {
            return Err(Error::NotSubuniverse(format!("{set:?}")));
        }
        if !self.is_subuniverse(set) {
            return Err(Error::NotSubuniverse(format_set(set)));
        }
        let elems: Vec<Element> = set.iter().copied().collect();
        let local = |e: Element| elems.binary_search(&e).unwrap();
        let sub = FiniteAlgebra::from_fn(self.sig.clone(), elems.len(), |i, args| {
            let global: Vec<Element> = args.iter().map(|&a| elems[a]).collect();
            local(self.apply(i, &global))
        })?;
        sub.with_labels(elems.iter().map(|&e| self.label(e)).collect())
    }

    /// Elements `a` with `ω(a, …, a) = a` for every symbol.
    pub fn idempotent_elements(&self) -> BTreeSet<Element> {
        (0..self.n)
            .filter(|&a| {
                self.sig
                    .ops()
                    .iter()
                    .enumerate()
                    .all(|(i, op)| self.apply(i, &vec![a; op.arity]) == a)
            })
            .collect()
    }

    /// Brute-force isomorphism test (intended for small carriers).
    pub fn is_isomorphic(&self, other: &FiniteAlgebra) -> bool {
        if self.n != other.n || self.sig != other.sig {
            return false;
        }
        (0..self.n).permutations(self.n).any(|perm| {
            self.sig.ops().iter().enumerate().all(|(i, op)| {
                tuples(self.n, op.arity).all(|args| {
                    let mapped: Vec<Element> = args.iter().map(|&a| perm[a]).collect();
                    perm[self.apply(i, &args)] == other.apply(i, &mapped)
                })
            })
        })
    }

    /// Realizes a band `(table, ·)` in the signature `sig`: unary symbols act
    /// as the identity map and an `n`-ary symbol as the left-associated
    /// product of its arguments.
    pub fn band_algebra_from(table: &[Vec<Element>], sig: &Signature) -> Result<FiniteAlgebra> {
        let n = table.len();
        if n == 0 || table.iter().any(|row| row.len() != n || row.iter().any(|&e| e >= n)) {
            return Err(Error::NotBand("table is not a square table over 0..n".into()));
        }
        let mul = |a: Element, b: Element| table[a][b];
        for a in 0..n {
            if mul(a, a) != a {
                return Err(Error::NotBand(format!("{a}·{a} ≠ {a}")));
            }
            for b in 0..n {
                for c in 0..n {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(Error::NotBand(format!("({a}·{b})·{c} ≠ {a}·({b}·{c})")));
                    }
                }
            }
        }
        FiniteAlgebra::from_fn(sig.clone(), n, |_, args| {
            args[1..].iter().fold(args[0], |acc, &b| mul(acc, b))
        })
    }

    /// Parses the algebra text format; see the crate README for the grammar.
    pub fn parse(text: &str) -> Result<FiniteAlgebra> {
        let mut size: Option<usize> = None;
        let mut labels: Option<Vec<String>> = None;
        let mut ops: Vec<(String, usize)> = Vec::new();
        let mut table_tokens: Vec<(String, Vec<String>)> = Vec::new();
        for line in text.lines() {
            let line = strip_comment(line);
            if line.is_empty() {
                continue;
            }
            let mut words = line.split_whitespace();
            match words.next() {
                Some("size") => {
                    let n = words
                        .next()
                        .and_then(|w| w.parse::<usize>().ok())
                        .ok_or_else(|| Error::Syntax(format!("bad size line `{line}`")))?;
                    size = Some(n);
                }
                Some("elements") => labels = Some(words.map(str::to_string).collect()),
                Some("op") => ops.push(parse_op_line(line)?),
                Some("table") => {
                    let name = words
                        .next()
                        .ok_or_else(|| Error::Syntax("table line needs a symbol".into()))?;
                    table_tokens.push((name.to_string(), Vec::new()));
                }
                Some(_) => match table_tokens.last_mut() {
                    Some((_, toks)) => toks.extend(line.split_whitespace().map(str::to_string)),
                    None => return Err(Error::Syntax(format!("unexpected line `{line}`"))),
                },
                None => {}
            }
        }
        let n = size.ok_or_else(|| Error::Syntax("missing `size` line".into()))?;
        let sig = Signature::new(ops)?;
        let resolve = |tok: &str| -> Result<Element> {
            if let Some(l) = &labels {
                if let Some(i) = l.iter().position(|x| x == tok) {
                    return Ok(i);
                }
            }
            tok.parse::<usize>()
                .map_err(|_| Error::Syntax(format!("unknown element `{tok}`")))
        };
        let mut tables = vec![None; sig.len()];
        for (name, toks) in &table_tokens {
            let i = sig
                .index_of(name)
                .ok_or_else(|| Error::UnknownSymbol(name.clone()))?;
            if tables[i].is_some() {
                return Err(Error::Syntax(format!("duplicate table for `{name}`")));
            }
            tables[i] = Some(toks.iter().map(|t| resolve(t)).collect::<Result<Vec<_>>>()?);
        }
        let tables = tables
            .into_iter()
            .enumerate()
            .map(|(i, t)| {
                t.ok_or_else(|| Error::Syntax(format!("missing table for `{}`", sig.ops()[i].name)))
            })
            .collect::<Result<Vec<_>>>()?;
        let alg = FiniteAlgebra::new(sig, n, tables)?;
        match labels {
            Some(l) => alg.with_labels(l),
            None => Ok(alg),
        }
    }
}

/// Canonical text form; `FiniteAlgebra::parse` reads it back.
impl fmt::Display for FiniteAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "size {}", self.n)?;
        if let Some(labels) = &self.labels {
            writeln!(f, "elements {}", labels.join(" "))?;
        }
        write!(f, "{}", self.sig)?;
        for (op, table) in self.sig.ops().iter().zip(&self.tables) {
            writeln!(f, "table {}", op.name)?;
            for row in table.chunks(self.n) {
                let row: Vec<String> = row.iter().map(|&e| self.label(e)).collect();
                writeln!(f, "{}", row.join(" "))?;
            }
        }
        Ok(())
    }
}

pub(crate) fn format_set(set: &BTreeSet<Element>) -> String {
    format!("{{{}}}", set.iter().map(|e| e.to_string()).join(","))
}

#[derive(Clone, Copy, Debug)]
enum Instr {
    Load(usize),
    Apply(usize, usize),
}

/// A term compiled to postfix code against one algebra's tables.
#[derive(Clone, Debug)]
pub struct CompiledTerm {
    code: Vec<Instr>,
}

impl CompiledTerm {
    pub fn eval(&self, alg: &FiniteAlgebra, env: &[Element], stack: &mut Vec<Element>) -> Element {
        stack.clear();
        for ins in &self.code {
            match *ins {
                Instr::Load(slot) => stack.push(env[slot]),
                Instr::Apply(op, arity) => {
                    let base = stack.len() - arity;
                    let v = alg.apply(op, &stack[base..]);
                    stack.truncate(base);
                    stack.push(v);
                }
            }
        }
        stack[0]
    }
}

/// All tuples in `0..n` of length `k`, lexicographic (last position fastest).
pub fn tuples(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = if k == 0 { 1 } else { n.checked_pow(k as u32).unwrap_or(0) };
    let mut cur = vec![0usize; k];
    let mut emitted = 0usize;
    std::iter::from_fn(move || {
        if emitted == total || (n == 0 && k > 0) {
            return None;
        }
        let out = cur.clone();
        emitted += 1;
        for i in (0..k).rev() {
            cur[i] += 1;
            if cur[i] < n {
                break;
            }
            cur[i] = 0;
        }
        Some(out)
    })
}
