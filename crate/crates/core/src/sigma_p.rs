//! Generation of `Σ^p`: substitution instances of a base `Σ` of `V` in
//! which every variable is replaced by a term from one `W`-class of term
//! idempotents.
//!
//! `Σ^p` is infinite; the generator yields a deterministic prefix of it
//! bounded by the variable pool and term size.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::algebra::{Element, FiniteAlgebra};
use crate::enumerate::{variable_pool, TermEnumerator};
use crate::error::{Error, Result};
use crate::term::{Identity, Name, Term};
use crate::variety::VarietySpec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaPConfig {
    /// Number of variables terms are built from (`x, y, z, w, x5, …`).
    pub pool: usize,
    pub max_term_size: usize,
    pub max_results: Option<usize>,
    pub dedup: bool,
}

impl Default for SigmaPConfig {
    fn default() -> Self {
        Self {
            pool: 2,
            max_term_size: 3,
            max_results: None,
            dedup: true,
        }
    }
}

impl SigmaPConfig {
    pub fn validate(&self) -> Result<()> {
        if self.pool == 0 || self.max_term_size == 0 || self.max_results == Some(0) {
            return Err(Error::InvalidConfig("pool, term size and result bounds must be positive".into()));
        }
        Ok(())
    }
}

/// Splits `terms` into `W`-classes, keeping first-occurrence order both of
/// the classes and within them. Uses normal-form keys when `W` has them and
/// pairwise decisions otherwise.
pub fn equivalence_classes(w: &VarietySpec, terms: &[Term]) -> Result<Vec<Vec<Term>>> {
    let mut classes: Vec<Vec<Term>> = Vec::new();
    let keyed = match terms.first() {
        Some(t) => w.class_key(t)?.is_some(),
        None => return Ok(classes),
    };
    if keyed {
        let mut index = HashMap::new();
        for t in terms {
            let key = w.class_key(t)?.expect("keys are all or nothing for one decision");
            let i = *index.entry(key).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[i].push(t.clone());
        }
    } else {
        'terms: for t in terms {
            for class in &mut classes {
                if w.equivalent(&class[0], t)? {
                    class.push(t.clone());
                    continue 'terms;
                }
            }
            classes.push(vec![t.clone()]);
        }
    }
    Ok(classes)
}

/// One generated identity and where it came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Emission {
    /// Index of the base identity `σ` that was instantiated.
    pub sigma_index: usize,
    /// Index of the class the substituted terms were drawn from.
    pub class_index: usize,
    pub substitution: Vec<(Name, Term)>,
    pub identity: Identity,
}

/// Pull-based stream of [`Emission`]s: for each `σ` in order, each class in
/// order, each tuple of class members (with repetition) in lexicographic
/// order.
#[derive(Clone, Debug)]
pub struct SigmaPStream {
    sigmas: Vec<(Identity, Vec<Name>)>,
    classes: Vec<Vec<Term>>,
    sigma: usize,
    class: usize,
    tuple: Option<Vec<usize>>,
    seen: Option<HashSet<Identity>>,
    remaining: Option<usize>,
}

impl SigmaPStream {
    /// The `W`-classes of term idempotents substitutions are drawn from.
    pub fn classes(&self) -> &[Vec<Term>] {
        &self.classes
    }

    fn advance(&mut self) {
        let k = self.sigmas[self.sigma].1.len();
        let n = self.classes[self.class].len();
        let tuple = self.tuple.as_mut().expect("advance follows a current tuple");
        for i in (0..k).rev() {
            tuple[i] += 1;
            if tuple[i] < n {
                return;
            }
            tuple[i] = 0;
        }
        self.tuple = None;
        self.class += 1;
        if self.class == self.classes.len() {
            self.class = 0;
            self.sigma += 1;
        }
    }
}

impl Iterator for SigmaPStream {
    type Item = Emission;

    fn next(&mut self) -> Option<Emission> {
        loop {
            if self.remaining == Some(0) || self.sigma >= self.sigmas.len() || self.classes.is_empty() {
                return None;
            }
            let (sigma, vars) = &self.sigmas[self.sigma];
            let tuple = self.tuple.get_or_insert_with(|| vec![0; vars.len()]);
            let class = &self.classes[self.class];
            let substitution: Vec<(Name, Term)> =
                vars.iter().zip(tuple.iter()).map(|(v, &i)| (v.clone(), class[i].clone())).collect();
            let map: HashMap<Name, Term> = substitution.iter().cloned().collect();
            let emission = Emission {
                sigma_index: self.sigma,
                class_index: self.class,
                identity: sigma.substitute(&map),
                substitution,
            };
            self.advance();
            if let Some(seen) = &mut self.seen {
                if !seen.insert(emission.identity.clone()) {
                    continue;
                }
            }
            if let Some(r) = &mut self.remaining {
                *r -= 1;
            }
            return Some(emission);
        }
    }
}

/// Builds the `Σ^p` stream for base `sigma_v` of `V` and variety `W`.
///
/// Term-idempotent filtering is skipped when `W` is flagged idempotent.
/// If no class survives the stream is empty; this is decided before the
/// base is checked against `W`'s signature, since an empty set of
/// substitutions makes every base vacuous.
pub fn sigma_p_generate(sigma_v: &[Identity], w: &VarietySpec, cfg: &SigmaPConfig) -> Result<SigmaPStream> {
    cfg.validate()?;
    w.decision()?;
    let mut e = TermEnumerator::new(w.signature().clone(), variable_pool(cfg.pool));
    let terms = e.terms_up_to(cfg.max_term_size);
    let mut classes = equivalence_classes(w, &terms)?;
    if !w.is_idempotent() {
        let mut kept = Vec::new();
        for class in classes {
            if w.is_term_idempotent(&class[0])? {
                kept.push(class);
            }
        }
        classes = kept;
    }
    if !classes.is_empty() {
        for id in sigma_v {
            id.check(w.signature())?;
        }
    }
    Ok(SigmaPStream {
        sigmas: sigma_v.iter().map(|id| (id.clone(), id.variables())).collect(),
        classes,
        sigma: 0,
        class: 0,
        tuple: None,
        seen: cfg.dedup.then(HashSet::new),
        remaining: cfg.max_results,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub identity: Identity,
    /// A violating assignment, if any.
    pub counterexample: Option<Vec<(String, Element)>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HoldsReport {
    pub all_pass: bool,
    pub checks: Vec<IdentityCheck>,
}

impl fmt::Display for HoldsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.counterexample {
                None => writeln!(f, "pass {}", c.identity)?,
                Some(env) => {
                    let env: Vec<String> = env.iter().map(|(v, e)| format!("{v}={e}")).collect();
                    writeln!(f, "fail {} at {}", c.identity, env.join(", "))?
                }
            }
        }
        writeln!(f, "verdict: {}", if self.all_pass { "pass" } else { "fail" })
    }
}

/// Checks each identity in `alg`.
pub fn sigma_p_holds_in(alg: &FiniteAlgebra, ids: &[Identity]) -> Result<HoldsReport> {
    let checks = ids
        .iter()
        .map(|id| {
            id.check(alg.signature())?;
            Ok(IdentityCheck {
                identity: id.clone(),
                counterexample: alg
                    .counterexample(id)?
                    .map(|env| env.into_iter().map(|(v, e)| (v.to_string(), e)).collect()),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HoldsReport {
        all_pass: checks.iter().all(|c| c.counterexample.is_none()),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::replica::maltsev_member;
    use crate::variety::preset;

    fn left_zero_law() -> Vec<Identity> {
        vec![Identity::parse("(· x y) = x", &fixtures::groupoid_sig()).unwrap()]
    }

    fn cfg(pool: usize, size: usize) -> SigmaPConfig {
        SigmaPConfig {
            pool,
            max_term_size: size,
            max_results: None,
            dedup: true,
        }
    }

    fn generate(w: &str, pool: usize, size: usize) -> Vec<Emission> {
        sigma_p_generate(&left_zero_law(), &preset(w).unwrap(), &cfg(pool, size)).unwrap().collect()
    }

    fn shown(ems: &[Emission]) -> Vec<String> {
        ems.iter().map(|e| e.identity.to_string()).collect()
    }

    #[test]
    fn semilattice_instances() {
        let out = shown(&generate("S", 2, 3));
        assert!(out.contains(&"(· x x) = x".to_string()));
        assert!(out.contains(&"(· (· x y) (· y x)) = (· x y)".to_string()));
        // the class of x is {x, x·x}; pairs from it come first
        assert_eq!(&out[..3], ["(· x x) = x", "(· x (· x x)) = x", "(· (· x x) x) = (· x x)"]);
    }

    #[test]
    fn constant_semigroup_instances_have_product_shape() {
        let out = generate("CS", 2, 5);
        assert!(!out.is_empty());
        for e in &out {
            let Term::App(_, args) = &e.identity.lhs else { panic!() };
            assert!(!args[0].is_var() && !args[1].is_var());
            assert_eq!(args[0], e.identity.rhs);
        }
    }

    #[test]
    fn no_idempotents_means_nothing() {
        assert!(generate("U_{2,0}", 2, 6).is_empty());
        assert!(generate("U2", 1, 2).is_empty());
        // u(u(x)) is a term idempotent of U_2, so the groupoid base is now checked
        let u2 = preset("U2").unwrap();
        assert!(sigma_p_generate(&left_zero_law(), &u2, &cfg(1, 3)).is_err());
    }

    #[test]
    fn left_zero_instances() {
        let out = shown(&generate("LZ", 3, 3));
        assert!(out.contains(&"(· (· x y) (· x z)) = (· x y)".to_string()));
    }

    #[test]
    fn emissions_are_substitution_instances_of_equivalent_idempotents() {
        for w in ["S", "LZ", "CS", "GP", "B:group", "C"] {
            let w = preset(w).unwrap();
            let base = if *w.signature() == fixtures::groupoid_sig() {
                left_zero_law()
            } else {
                vec![Identity::parse("(· x (inv x)) = (· y (inv y))", w.signature()).unwrap()]
            };
            let mut stream = sigma_p_generate(&base, &w, &cfg(2, 4)).unwrap();
            let classes = stream.classes().to_vec();
            for e in stream.by_ref().take(300) {
                let map: HashMap<Name, Term> = e.substitution.iter().cloned().collect();
                assert_eq!(base[e.sigma_index].substitute(&map), e.identity);
                let terms: Vec<&Term> = e.substitution.iter().map(|(_, t)| t).collect();
                for t in &terms {
                    assert!(classes[e.class_index].contains(t));
                    assert!(w.equivalent(terms[0], t).unwrap());
                }
                assert!(w.is_term_idempotent(terms[0]).unwrap());
            }
        }
    }

    #[test]
    fn bounds_and_dedup() {
        let w = preset("S").unwrap();
        let mut c = cfg(2, 3);
        c.max_results = Some(4);
        assert_eq!(sigma_p_generate(&left_zero_law(), &w, &c).unwrap().count(), 4);
        c.max_results = None;
        c.dedup = false;
        let raw = sigma_p_generate(&left_zero_law(), &w, &c).unwrap().count();
        c.dedup = true;
        let dedup = sigma_p_generate(&left_zero_law(), &w, &c).unwrap().count();
        assert!(raw >= dedup);
        c.pool = 0;
        assert!(sigma_p_generate(&left_zero_law(), &w, &c).is_err());
        let base_only = crate::variety::VarietySpec::from_base("W", fixtures::groupoid_sig(), vec![]).unwrap();
        assert!(matches!(
            sigma_p_generate(&left_zero_law(), &base_only, &cfg(2, 3)),
            Err(Error::NoDecision(_))
        ));
    }

    #[test]
    fn deterministic() {
        assert_eq!(generate("B", 2, 5), generate("B", 2, 5));
    }

    #[test]
    fn holds_in_members() {
        let ids: Vec<Identity> = generate("S", 2, 5).into_iter().map(|e| e.identity).collect();
        assert!(sigma_p_holds_in(&fixtures::lz2(), &ids).unwrap().all_pass);
        assert!(sigma_p_holds_in(&fixtures::trivial_groupoid(), &ids).unwrap().all_pass);
        let comm = Identity::parse("(· x y) = (· y x)", &fixtures::groupoid_sig()).unwrap();
        assert!(!sigma_p_holds_in(&fixtures::lz2(), std::slice::from_ref(&comm)).unwrap().all_pass);

        let c = preset("C").unwrap();
        let lz = preset("LZ").unwrap();
        let a = fixtures::groupoid_a4();
        assert!(maltsev_member(&a, &c, &lz).unwrap().member);
        let ids: Vec<Identity> = sigma_p_generate(c.base().unwrap(), &lz, &cfg(3, 3))
            .unwrap()
            .map(|e| e.identity)
            .collect();
        assert!(!ids.is_empty());
        assert!(sigma_p_holds_in(&a, &ids).unwrap().all_pass);
    }

    #[test]
    fn a4_is_outside_lz_over_s() {
        let a = fixtures::groupoid_a4();
        let (lz, s) = (preset("LZ").unwrap(), preset("S").unwrap());
        assert!(!maltsev_member(&a, &lz, &s).unwrap().member);
        let ids: Vec<Identity> = generate("S", 2, 3).into_iter().map(|e| e.identity).collect();
        let report = sigma_p_holds_in(&a, &ids).unwrap();
        let failing: Vec<String> = report
            .checks
            .iter()
            .filter(|c| c.counterexample.is_some())
            .map(|c| c.identity.to_string())
            .collect();
        assert_eq!(failing, ["(· (· x y) (· y x)) = (· x y)", "(· (· y x) (· x y)) = (· y x)"]);
    }

    #[test]
    fn classes_from_keys_match_pairwise_classes() {
        let s = preset("S").unwrap();
        let g = crate::variety::fin_generated("gen", fixtures::sl2());
        let mut e = TermEnumerator::new(s.signature().clone(), variable_pool(2));
        let terms = e.terms_up_to(5);
        assert_eq!(equivalence_classes(&s, &terms).unwrap(), equivalence_classes(&g, &terms).unwrap());
    }
}
