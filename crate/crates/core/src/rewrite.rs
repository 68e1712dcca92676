//! First-order term rewriting: matching, unification, innermost
//! normalization and critical pairs.

use std::collections::HashMap;
use std::fmt;

use crate::term::{Name, Term};

pub type Subst = HashMap<Name, Term>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Term,
    pub rhs: Term,
}

impl Rule {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Self { lhs, rhs }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.lhs, self.rhs)
    }
}

/// Extends `subst` so that `pattern` instantiates to `t`.
pub fn match_term(pattern: &Term, t: &Term, subst: &mut Subst) -> bool {
    match (pattern, t) {
        (Term::Var(v), _) => match subst.get(v) {
            Some(bound) => bound == t,
            None => {
                subst.insert(v.clone(), t.clone());
                true
            }
        },
        (Term::App(f, xs), Term::App(g, ys)) => {
            f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(p, s)| match_term(p, s, subst))
        }
        _ => false,
    }
}

/// Most general unifier, fully applied (idempotent), with occurs check.
pub fn unify(a: &Term, b: &Term) -> Option<Subst> {
    let mut subst = Subst::new();
    let mut stack = vec![(a.clone(), b.clone())];
    while let Some((s, t)) = stack.pop() {
        let s = resolve(&s, &subst);
        let t = resolve(&t, &subst);
        match (&s, &t) {
            _ if s == t => {}
            (Term::Var(v), other) | (other, Term::Var(v)) => {
                if other.var_set().contains(v) {
                    return None;
                }
                let single: Subst = [(v.clone(), other.clone())].into();
                for val in subst.values_mut() {
                    *val = val.substitute(&single);
                }
                subst.insert(v.clone(), other.clone());
            }
            (Term::App(f, xs), Term::App(g, ys)) => {
                if f != g || xs.len() != ys.len() {
                    return None;
                }
                stack.extend(xs.iter().cloned().zip(ys.iter().cloned()));
            }
        }
    }
    Some(subst)
}

fn resolve(t: &Term, subst: &Subst) -> Term {
    t.substitute(subst)
}

#[derive(Clone, Debug, Default)]
pub struct RewriteSystem {
    rules: Vec<Rule>,
}

impl RewriteSystem {
    pub fn new(rules: Vec<Rule>) -> Self {
        Self { rules }
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// Innermost normal form. Assumes the system terminates.
    pub fn normalize(&self, t: &Term) -> Term {
        let t = match t {
            Term::Var(_) => return t.clone(),
            Term::App(op, args) => Term::App(op.clone(), args.iter().map(|a| self.normalize(a)).collect()),
        };
        for rule in &self.rules {
            let mut subst = Subst::new();
            if match_term(&rule.lhs, &t, &mut subst) {
                return self.normalize(&rule.rhs.substitute(&subst));
            }
        }
        t
    }

    /// All critical pairs between rules (including self-overlaps at
    /// non-root positions).
    pub fn critical_pairs(&self) -> Vec<(Term, Term)> {
        let mut out = Vec::new();
        for (i, r1) in self.rules.iter().enumerate() {
            for (j, r2) in self.rules.iter().enumerate() {
                let r2 = rename(r2, "'");
                for (pos, sub) in positions(&r1.lhs) {
                    if sub.is_var() || (i == j && pos.is_empty()) {
                        continue;
                    }
                    if let Some(mgu) = unify(sub, &r2.lhs) {
                        let top = r1.rhs.substitute(&mgu);
                        let inner = replace_at(&r1.lhs, &pos, &r2.rhs).substitute(&mgu);
                        out.push((top, inner));
                    }
                }
            }
        }
        out
    }

    /// Critical pairs whose sides have different normal forms.
    pub fn unjoinable_pairs(&self) -> Vec<(Term, Term)> {
        self.critical_pairs()
            .into_iter()
            .map(|(a, b)| (self.normalize(&a), self.normalize(&b)))
            .filter(|(a, b)| a != b)
            .collect()
    }

    /// Local confluence; together with termination this gives convergence.
    pub fn is_locally_confluent(&self) -> bool {
        self.unjoinable_pairs().is_empty()
    }
}

fn rename(rule: &Rule, suffix: &str) -> Rule {
    let mut map = Subst::new();
    for v in rule.lhs.var_set().into_iter().chain(rule.rhs.var_set()) {
        map.insert(v.clone(), Term::Var(format!("{v}{suffix}").into()));
    }
    Rule::new(rule.lhs.substitute(&map), rule.rhs.substitute(&map))
}

fn positions(t: &Term) -> Vec<(Vec<usize>, &Term)> {
    let mut out = vec![(Vec::new(), t)];
    if let Term::App(_, args) = t {
        for (i, a) in args.iter().enumerate() {
            for (mut p, s) in positions(a) {
                p.insert(0, i);
                out.push((p, s));
            }
        }
    }
    out
}

fn replace_at(t: &Term, pos: &[usize], with: &Term) -> Term {
    match (pos.split_first(), t) {
        (None, _) => with.clone(),
        (Some((&i, rest)), Term::App(op, args)) => {
            let mut args = args.clone();
            args[i] = replace_at(&args[i], rest, with);
            Term::App(op.clone(), args)
        }
        (Some(_), Term::Var(_)) => unreachable!("position below a variable"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn t(s: &str) -> Term {
        Term::parse(s, &fixtures::quasigroup_sig()).unwrap()
    }

    fn rule(l: &str, r: &str) -> Rule {
        Rule::new(t(l), t(r))
    }

    fn axioms() -> Vec<Rule> {
        vec![
            rule("(\\ x (· x y))", "y"),
            rule("(· x (\\ x y))", "y"),
            rule("(/ (· x y) y)", "x"),
            rule("(· (/ x y) y)", "x"),
        ]
    }

    #[test]
    fn matching() {
        let mut s = Subst::new();
        assert!(match_term(&t("(· x x)"), &t("(· (/ a b) (/ a b))"), &mut s));
        assert_eq!(s[&Name::from("x")], t("(/ a b)"));
        assert!(!match_term(&t("(· x x)"), &t("(· a b)"), &mut Subst::new()));
    }

    #[test]
    fn unification() {
        let mgu = unify(&t("(· x (/ y z))"), &t("(· (/ z w) x)")).unwrap();
        let a = t("(· x (/ y z))").substitute(&mgu);
        let b = t("(· (/ z w) x)").substitute(&mgu);
        assert_eq!(a, b);
        assert!(unify(&t("x"), &t("(· x y)")).is_none());
        assert!(unify(&t("(· x y)"), &t("(/ x y)")).is_none());
    }

    #[test]
    fn bare_axioms_are_not_confluent() {
        let sys = RewriteSystem::new(axioms());
        assert!(!sys.is_locally_confluent());
    }

    #[test]
    fn completed_system_is_confluent() {
        let mut rules = axioms();
        rules.push(rule("(/ x (\\ y x))", "y"));
        rules.push(rule("(\\ (/ x y) x)", "y"));
        let sys = RewriteSystem::new(rules);
        assert!(!sys.critical_pairs().is_empty());
        assert!(sys.is_locally_confluent(), "{:?}", sys.unjoinable_pairs());
        assert_eq!(sys.normalize(&t("(/ (· x y) y)")), t("x"));
        assert_eq!(sys.normalize(&t("(\\ x (· x (/ y z)))")), t("(/ y z)"));
    }
}
