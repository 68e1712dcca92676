//! Deterministic term enumeration.
//!
//! Terms are listed by size; within one size variables come first (in pool
//! order), then applications by symbol order, then argument tuples
//! lexicographically under this same order.

use std::cmp::Ordering;

use crate::term::{Name, Signature, Term};

/// Name of the `i`-th pool variable: `x, y, z, w, x5, x6, ...`.
pub fn pool_var(i: usize) -> Name {
    match i {
        0 => "x".into(),
        1 => "y".into(),
        2 => "z".into(),
        3 => "w".into(),
        _ => format!("x{}", i + 1).into(),
    }
}

pub fn variable_pool(k: usize) -> Vec<Name> {
    (0..k).map(pool_var).collect()
}

/// Memoized enumerator over a fixed signature and variable list.
#[derive(Clone, Debug)]
pub struct TermEnumerator {
    sig: Signature,
    vars: Vec<Name>,
    by_size: Vec<Vec<Term>>,
}

impl TermEnumerator {
    pub fn new(sig: Signature, vars: Vec<Name>) -> Self {
        Self {
            sig,
            vars,
            by_size: vec![Vec::new()],
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn vars(&self) -> &[Name] {
        &self.vars
    }

    /// All terms with exactly `size` nodes, in enumeration order.
    pub fn terms_of_size(&mut self, size: usize) -> &[Term] {
        while self.by_size.len() <= size {
            let s = self.by_size.len();
            let next = self.build(s);
            self.by_size.push(next);
        }
        &self.by_size[size]
    }

    /// All terms of size at most `max_size`, in enumeration order.
    pub fn terms_up_to(&mut self, max_size: usize) -> Vec<Term> {
        self.terms_of_size(max_size);
        self.by_size[..=max_size].iter().flatten().cloned().collect()
    }

    fn build(&self, size: usize) -> Vec<Term> {
        if size == 1 {
            return self.vars.iter().map(|v| Term::Var(v.clone())).collect();
        }
        let mut out = Vec::new();
        for op in self.sig.ops() {
            if op.arity + 1 > size {
                continue;
            }
            let mut acc = Vec::with_capacity(op.arity);
            self.arg_tuples(op.arity, size - 1, &mut acc, &mut |args| {
                out.push(Term::App(op.name.clone(), args.to_vec()))
            });
        }
        out
    }

    /// Calls `emit` for every `k`-tuple of terms whose sizes sum to `budget`,
    /// lexicographically.
    fn arg_tuples(&self, k: usize, budget: usize, acc: &mut Vec<Term>, emit: &mut dyn FnMut(&[Term])) {
        if k == 0 {
            if budget == 0 {
                emit(acc);
            }
            return;
        }
        // the remaining k-1 arguments need at least one node each
        for s in 1..=budget.saturating_sub(k - 1) {
            for t in &self.by_size[s] {
                acc.push(t.clone());
                self.arg_tuples(k - 1, budget - s, acc, emit);
                acc.pop();
            }
        }
    }
}

/// The enumeration order as a comparator. Symbols and variables outside the
/// signature or pool sort after known ones, by name.
pub fn compare_terms(a: &Term, b: &Term, sig: &Signature, vars: &[Name]) -> Ordering {
    a.size().cmp(&b.size()).then_with(|| match (a, b) {
        (Term::Var(x), Term::Var(y)) => {
            let key = |v: &Name| (vars.iter().position(|w| w == v).unwrap_or(usize::MAX), v.clone());
            key(x).cmp(&key(y))
        }
        (Term::Var(_), Term::App(..)) => Ordering::Less,
        (Term::App(..), Term::Var(_)) => Ordering::Greater,
        (Term::App(f, xs), Term::App(g, ys)) => {
            let key = |o: &Name| (sig.index_of(o).unwrap_or(usize::MAX), o.clone());
            key(f).cmp(&key(g)).then_with(|| {
                xs.iter()
                    .zip(ys)
                    .map(|(x, y)| compare_terms(x, y, sig, vars))
                    .find(|o| o.is_ne())
                    .unwrap_or_else(|| xs.len().cmp(&ys.len()))
            })
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn catalan(m: u64) -> u64 {
        (0..m).fold(1, |c, i| c * 2 * (2 * i + 1) / (i + 2))
    }

    #[test]
    fn pool_names() {
        let names: Vec<String> = variable_pool(6).iter().map(|n| n.to_string()).collect();
        assert_eq!(names, ["x", "y", "z", "w", "x5", "x6"]);
    }

    #[test]
    fn counts_match_closed_form() {
        // binary trees with m internal nodes and m+1 leaves from k variables
        let mut e = TermEnumerator::new(fixtures::groupoid_sig(), variable_pool(2));
        for m in 0..5u64 {
            let size = (2 * m + 1) as usize;
            assert_eq!(e.terms_of_size(size).len() as u64, catalan(m) * 2u64.pow(m as u32 + 1));
            assert!(e.terms_of_size(size + 1).is_empty());
        }
        let mut u = TermEnumerator::new(fixtures::monounary_sig(), variable_pool(3));
        for s in 1..8 {
            assert_eq!(u.terms_of_size(s).len(), 3);
        }
    }

    #[test]
    fn first_terms() {
        let mut e = TermEnumerator::new(fixtures::groupoid_sig(), variable_pool(2));
        let shown: Vec<String> = e.terms_up_to(3).iter().map(|t| t.to_string()).collect();
        assert_eq!(shown, ["x", "y", "(· x x)", "(· x y)", "(· y x)", "(· y y)"]);
        let five: Vec<String> = e.terms_of_size(5).iter().take(3).map(|t| t.to_string()).collect();
        assert_eq!(five, ["(· x (· x x))", "(· x (· x y))", "(· x (· y x))"]);
    }

    #[test]
    fn order_is_sorted_and_duplicate_free() {
        let sig = fixtures::group_sig();
        let vars = variable_pool(2);
        let mut e = TermEnumerator::new(sig.clone(), vars.clone());
        let all = e.terms_up_to(6);
        let mut sorted = all.clone();
        sorted.sort_by(|a, b| compare_terms(a, b, &sig, &vars));
        sorted.dedup();
        assert_eq!(all, sorted);
        for t in &all {
            t.check(&sig).unwrap();
        }
    }
}
