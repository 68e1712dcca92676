//! Rewrite systems for quasigroups and loops over `(·, /, \)`.
//!
//! The quasigroup system is the four axioms oriented left to right plus
//! `x/(y\x) → y` and `(x/y)\x → y`; it terminates (every rule shrinks the
//! term) and its critical pairs all join, so normal forms decide the
//! equational theory. The loop system adds rules for the unit and is only
//! known to be sound.

use crate::rewrite::{Rule, RewriteSystem};
use crate::term::Term;

fn v(name: &str) -> Term {
    Term::var(name)
}

fn mul(a: Term, b: Term) -> Term {
    Term::binary("·", a, b)
}

fn rdiv(a: Term, b: Term) -> Term {
    Term::binary("/", a, b)
}

fn ldiv(a: Term, b: Term) -> Term {
    Term::binary("\\", a, b)
}

/// Marker for the loop unit. It has no arguments, so it never collides
/// with a parsed term.
pub fn unit() -> Term {
    Term::App("1".into(), Vec::new())
}

pub fn quasigroup_rules() -> Vec<Rule> {
    let (x, y) = (v("x"), v("y"));
    vec![
        Rule::new(ldiv(x.clone(), mul(x.clone(), y.clone())), y.clone()),
        Rule::new(mul(x.clone(), ldiv(x.clone(), y.clone())), y.clone()),
        Rule::new(rdiv(mul(x.clone(), y.clone()), y.clone()), x.clone()),
        Rule::new(mul(rdiv(x.clone(), y.clone()), y.clone()), x.clone()),
        Rule::new(rdiv(x.clone(), ldiv(y.clone(), x.clone())), y.clone()),
        Rule::new(ldiv(rdiv(x.clone(), y.clone()), x.clone()), y),
    ]
}

pub fn loop_rules() -> Vec<Rule> {
    let x = v("x");
    let mut rules = quasigroup_rules();
    rules.extend([
        Rule::new(rdiv(x.clone(), x.clone()), unit()),
        Rule::new(ldiv(x.clone(), x.clone()), unit()),
        Rule::new(mul(unit(), x.clone()), x.clone()),
        Rule::new(mul(x.clone(), unit()), x.clone()),
        Rule::new(rdiv(x.clone(), unit()), x.clone()),
        Rule::new(ldiv(unit(), x.clone()), x),
    ]);
    rules
}

pub fn quasigroup_system() -> RewriteSystem {
    RewriteSystem::new(quasigroup_rules())
}

pub fn loop_system() -> RewriteSystem {
    RewriteSystem::new(loop_rules())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{variable_pool, TermEnumerator};
    use crate::fixtures;
    use crate::term::Identity;

    #[test]
    fn quasigroup_system_converges() {
        assert!(quasigroup_system().is_locally_confluent());
    }

    #[test]
    fn normal_forms_are_sound_in_models() {
        let sig = fixtures::quasigroup_sig();
        let mut e = TermEnumerator::new(sig, variable_pool(2));
        let terms = e.terms_up_to(5);
        let qs = quasigroup_system();
        let ls = loop_system();
        let quasigroups = [fixtures::steiner3(), fixtures::cyclic_quasigroup(3)];
        let loops = [fixtures::cyclic_quasigroup(2), fixtures::cyclic_quasigroup(3)];
        for a in &terms {
            for b in &terms {
                let id = Identity::new(a.clone(), b.clone());
                if qs.normalize(a) == qs.normalize(b) {
                    for m in &quasigroups {
                        assert!(m.satisfies(&id).unwrap(), "{id}");
                    }
                }
                if ls.normalize(a) == ls.normalize(b) {
                    for m in &loops {
                        assert!(m.satisfies(&id).unwrap(), "{id}");
                    }
                }
            }
        }
    }
}
