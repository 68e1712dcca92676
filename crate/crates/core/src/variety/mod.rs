//! Varieties given by an equational base, a decision procedure for their
//! identities, or both.

pub mod band;
pub mod group;
pub mod lattice;
pub mod monounary;
pub mod presets;
pub mod quasigroup;

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::FiniteAlgebra;
use crate::enumerate::{pool_var, TermEnumerator};
use crate::error::{Error, Result};
use crate::rewrite::RewriteSystem;
use crate::term::{Identity, Name, Signature, Term};

pub use band::{free_band_normal_form, BandKind};
pub use group::free_group_reduce;
pub use lattice::whitman_leq;
pub use presets::{fin_generated, preset, regularized, PRESET_NAMES};

/// Whether an oracle's `false` answers can be trusted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleStrength {
    Complete,
    SoundOnly,
}

/// A procedure deciding `W ⊨ s = t`.
#[derive(Clone, Debug)]
pub enum Decision {
    /// Band varieties, read through the band translation.
    Band(BandKind),
    /// `s = t` iff both are non-variables or they are the same variable.
    ConstantSemigroup,
    /// Free reduction over `(·, inv)`.
    Group,
    /// The inner decision plus equal variable sets.
    Regularized(Box<Decision>),
    /// Whitman's algorithm over `(+, ·)`.
    Lattice,
    /// Evaluation in the 2-element Boolean algebra.
    Boolean(Arc<FiniteAlgebra>),
    /// Normal forms of a convergent rewrite system.
    Quasigroup(Arc<RewriteSystem>),
    /// Normal forms of a sound, possibly incomplete rewrite system.
    Loop(Arc<RewriteSystem>),
    /// `U_k` when `cycle` is `None`, `U_{n,k}` with `n = cycle` otherwise.
    Monounary { tail: usize, cycle: Option<usize> },
    /// Commutative groupoids: arguments sorted recursively.
    Commutative,
    /// The trivial variety: every identity holds.
    Trivial,
    /// The variety of all algebras: only `t = t` holds.
    Syntactic,
    /// The variety generated by a finite algebra.
    FinGenerated(Arc<FiniteAlgebra>),
}

/// A normal form for a term's equivalence class; two terms are
/// equivalent exactly when their keys are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ClassKey {
    Constant,
    Names(Vec<Name>),
    Signed(Vec<(Name, bool)>),
    Term(Term),
    Mono(Option<Name>, usize),
    Pair(Box<ClassKey>, Box<ClassKey>),
}

impl Decision {
    pub fn strength(&self) -> OracleStrength {
        match self {
            Decision::Loop(_) => OracleStrength::SoundOnly,
            Decision::Regularized(inner) => inner.strength(),
            _ => OracleStrength::Complete,
        }
    }

    /// Normal form key, or `None` when the procedure only compares pairs.
    pub fn class_key(&self, t: &Term) -> Result<Option<ClassKey>> {
        Ok(Some(match self {
            Decision::Band(kind) => {
                let word = band::band_word(t);
                ClassKey::Names(match kind {
                    BandKind::Semilattice => word.into_iter().collect::<BTreeSet<_>>().into_iter().collect(),
                    BandKind::LeftZero => vec![word[0].clone()],
                    BandKind::RightZero => vec![word[word.len() - 1].clone()],
                    BandKind::Rectangular => vec![word[0].clone(), word[word.len() - 1].clone()],
                    BandKind::Free => free_band_normal_form(&word)?,
                })
            }
            Decision::ConstantSemigroup => match t {
                Term::Var(v) => ClassKey::Names(vec![v.clone()]),
                Term::App(..) => ClassKey::Constant,
            },
            Decision::Group => ClassKey::Signed(free_group_reduce(t)?),
            Decision::Regularized(inner) => match inner.class_key(t)? {
                Some(k) => ClassKey::Pair(
                    Box::new(k),
                    Box::new(ClassKey::Names(t.var_set().into_iter().collect())),
                ),
                None => return Ok(None),
            },
            Decision::Quasigroup(sys) | Decision::Loop(sys) => ClassKey::Term(sys.normalize(t)),
            Decision::Monounary { tail, cycle } => {
                let (a, x) = monounary::exponent(t)?;
                let (x, a) = monounary::canonical(*cycle, *tail, a, x);
                ClassKey::Mono(x, a)
            }
            Decision::Commutative => ClassKey::Term(sort_arguments(t)),
            Decision::Trivial => ClassKey::Constant,
            Decision::Syntactic => ClassKey::Term(t.clone()),
            Decision::Lattice | Decision::Boolean(_) | Decision::FinGenerated(_) => return Ok(None),
        }))
    }

    pub fn decide(&self, s: &Term, t: &Term) -> Result<bool> {
        match self {
            Decision::Lattice => Ok(lattice::lattice_equal(s, t)),
            Decision::Boolean(a) | Decision::FinGenerated(a) => a.satisfies(&Identity::new(s.clone(), t.clone())),
            Decision::Regularized(inner) => Ok(s.var_set() == t.var_set() && inner.decide(s, t)?),
            _ => Ok(self.class_key(s)? == self.class_key(t)?),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Decision::Band(kind) => format!("band normal form ({})", kind.name()),
            Decision::ConstantSemigroup => "constant-semigroup criterion".into(),
            Decision::Group => "free group reduction".into(),
            Decision::Regularized(inner) => format!("regularized {}", inner.describe()),
            Decision::Lattice => "Whitman's algorithm".into(),
            Decision::Boolean(_) => "evaluation in the 2-element Boolean algebra".into(),
            Decision::Quasigroup(_) => "convergent quasigroup rewriting".into(),
            Decision::Loop(_) => "loop rewriting (sound only)".into(),
            Decision::Monounary { .. } => "exponent arithmetic".into(),
            Decision::Commutative => "sorted arguments".into(),
            Decision::Trivial => "trivial variety".into(),
            Decision::Syntactic => "syntactic equality".into(),
            Decision::FinGenerated(_) => "evaluation in the generating algebra".into(),
        }
    }
}

fn sort_arguments(t: &Term) -> Term {
    match t {
        Term::Var(_) => t.clone(),
        Term::App(op, args) => {
            let mut args: Vec<Term> = args.iter().map(sort_arguments).collect();
            args.sort();
            Term::App(op.clone(), args)
        }
    }
}

/// A variety of algebras of one signature.
#[derive(Clone, Debug)]
pub struct VarietySpec {
    name: String,
    sig: Signature,
    base: Option<Vec<Identity>>,
    decision: Option<Decision>,
    idempotent: bool,
}

impl VarietySpec {
    /// Validates the base against `sig` and, when `idempotent` is set,
    /// that every `ω(x, …, x) = x` holds.
    pub fn new(
        name: impl Into<String>,
        sig: Signature,
        base: Option<Vec<Identity>>,
        decision: Option<Decision>,
        idempotent: bool,
    ) -> Result<Self> {
        let name = name.into();
        if base.is_none() && decision.is_none() {
            return Err(Error::InvalidVariety(format!(
                "`{name}` needs an equational base or a decision procedure"
            )));
        }
        for id in base.iter().flatten() {
            id.check(&sig)?;
        }
        let spec = Self {
            name,
            sig,
            base,
            decision,
            idempotent,
        };
        if idempotent {
            spec.validate_idempotent()?;
        }
        Ok(spec)
    }

    /// A variety known only through its base.
    pub fn from_base(name: impl Into<String>, sig: Signature, base: Vec<Identity>) -> Result<Self> {
        Self::new(name, sig, Some(base), None, false)
    }

    /// Attaches a decision procedure, keeping the base.
    pub fn with_decision(self, decision: Decision) -> Result<Self> {
        Self::new(self.name, self.sig, self.base, Some(decision), self.idempotent)
    }

    pub fn with_idempotent(self, idempotent: bool) -> Result<Self> {
        Self::new(self.name, self.sig, self.base, self.decision, idempotent)
    }

    fn validate_idempotent(&self) -> Result<()> {
        for law in self.idempotent_laws() {
            let ok = match &self.decision {
                Some(d) => d.decide(&law.lhs, &law.rhs)?,
                None => self
                    .base
                    .iter()
                    .flatten()
                    .any(|id| *id == law || id.flipped() == law),
            };
            if !ok {
                return Err(Error::NotIdempotent {
                    name: self.name.clone(),
                    detail: format!("`{law}` is not confirmed"),
                });
            }
        }
        Ok(())
    }

    /// `ω(x, …, x) = x` for every symbol.
    pub fn idempotent_laws(&self) -> Vec<Identity> {
        let x = Term::var("x");
        self.sig
            .ops()
            .iter()
            .map(|op| Identity::new(Term::App(op.name.clone(), vec![x.clone(); op.arity]), x.clone()))
            .collect()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn base(&self) -> Result<&[Identity]> {
        self.base.as_deref().ok_or_else(|| Error::NoBase(self.name.clone()))
    }

    pub fn has_base(&self) -> bool {
        self.base.is_some()
    }

    pub fn decision(&self) -> Result<&Decision> {
        self.decision.as_ref().ok_or_else(|| Error::NoDecision(self.name.clone()))
    }

    pub fn is_idempotent(&self) -> bool {
        self.idempotent
    }

    pub fn strength(&self) -> Option<OracleStrength> {
        self.decision.as_ref().map(Decision::strength)
    }

    /// `W ⊨ id`.
    pub fn models(&self, id: &Identity) -> Result<bool> {
        id.check(&self.sig)?;
        self.decision()?.decide(&id.lhs, &id.rhs)
    }

    pub fn equivalent(&self, s: &Term, t: &Term) -> Result<bool> {
        self.models(&Identity::new(s.clone(), t.clone()))
    }

    pub fn class_key(&self, t: &Term) -> Result<Option<ClassKey>> {
        t.check(&self.sig)?;
        self.decision()?.class_key(t)
    }

    /// `W ⊨ ω(t, …, t) = t` for every symbol `ω`.
    pub fn is_term_idempotent(&self, t: &Term) -> Result<bool> {
        for op in self.sig.ops() {
            let lhs = Term::App(op.name.clone(), vec![t.clone(); op.arity]);
            if !self.models(&Identity::new(lhs, t.clone()))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Smallest term idempotent in `x` alone with at most `max_size` nodes.
    /// Substituting `x` for every variable of a term idempotent gives
    /// another one, so one variable suffices.
    pub fn find_term_idempotent(&self, max_size: usize) -> Result<Option<Term>> {
        self.decision()?;
        let mut e = TermEnumerator::new(self.sig.clone(), vec![pool_var(0)]);
        for t in e.terms_up_to(max_size) {
            if self.is_term_idempotent(&t)? {
                return Ok(Some(t));
            }
        }
        Ok(None)
    }

    /// Smallest unary term idempotent `t` with `W ⊨ t(x) = t(y)`.
    pub fn is_polarized(&self, max_size: usize) -> Result<Option<Term>> {
        self.decision()?;
        let y = Term::Var(pool_var(1));
        let mut e = TermEnumerator::new(self.sig.clone(), vec![pool_var(0)]);
        for t in e.terms_up_to(max_size) {
            if self.is_term_idempotent(&t)? && self.equivalent(&t, &t.replace_var("x", &y))? {
                return Ok(Some(t));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{variable_pool, TermEnumerator};
    use crate::fixtures;

    fn id(w: &VarietySpec, s: &str) -> Identity {
        Identity::parse(s, w.signature()).unwrap()
    }

    fn t(w: &VarietySpec, s: &str) -> Term {
        Term::parse(s, w.signature()).unwrap()
    }

    #[test]
    fn models_examples() {
        let s = preset("S").unwrap();
        assert!(s.models(&id(&s, "(· x y) = (· y x)")).unwrap());
        let lz = preset("LZ").unwrap();
        assert!(lz.models(&id(&lz, "(· x y) = (· x z)")).unwrap());
        assert!(!lz.models(&id(&lz, "(· x y) = (· y x)")).unwrap());
        let gp = preset("GP").unwrap();
        assert!(gp.models(&id(&gp, "(· x (inv x)) = (· y (inv y))")).unwrap());
        let cs = preset("CS").unwrap();
        assert!(cs.models(&id(&cs, "(· x y) = (· z t)")).unwrap());
        assert!(!cs.models(&id(&cs, "(· x y) = x")).unwrap());
        let l = preset("L").unwrap();
        assert!(l.models(&id(&l, "(+ x (· x y)) = x")).unwrap());
        assert!(l.models(&id(&l, "(+ (· x y) y) = y")).unwrap());
        assert!(!l.models(&id(&l, "(+ x y) = (· x y)")).unwrap());
    }

    #[test]
    fn missing_decision_or_base() {
        let v = VarietySpec::from_base("V", fixtures::groupoid_sig(), vec![]).unwrap();
        assert!(matches!(
            v.models(&Identity::new(Term::var("x"), Term::var("x"))),
            Err(Error::NoDecision(_))
        ));
        let g = fin_generated("gen", fixtures::sl2());
        assert!(matches!(g.base(), Err(Error::NoBase(_))));
        assert!(VarietySpec::new("none", fixtures::groupoid_sig(), None, None, false).is_err());
    }

    #[test]
    fn idempotent_flag_is_validated() {
        for name in ["S", "LZ", "RZ", "RB", "B", "L", "trivial", "LZ:group", "B:quasigroup"] {
            assert!(preset(name).unwrap().is_idempotent(), "{name}");
        }
        let err = VarietySpec::new(
            "GP*",
            fixtures::group_sig(),
            None,
            Some(Decision::Group),
            true,
        );
        assert!(matches!(err, Err(Error::NotIdempotent { .. })));
    }

    #[test]
    fn term_idempotents() {
        let gp = preset("GP").unwrap();
        assert!(gp.is_term_idempotent(&t(&gp, "(· x (inv x))")).unwrap());
        assert!(!gp.is_term_idempotent(&t(&gp, "x")).unwrap());
        assert_eq!(gp.find_term_idempotent(4).unwrap(), Some(t(&gp, "(· x (inv x))")));
        let s = preset("S").unwrap();
        assert!(s.is_term_idempotent(&t(&s, "(· x (· y x))")).unwrap());
        assert_eq!(preset("U_{2,0}").unwrap().find_term_idempotent(12).unwrap(), None);
        let u3 = preset("U3").unwrap();
        assert_eq!(u3.find_term_idempotent(3).unwrap(), None);
        assert_eq!(u3.find_term_idempotent(6).unwrap(), Some(t(&u3, "(u (u (u x)))")));
    }

    #[test]
    fn polarization() {
        let gp = preset("GP").unwrap();
        assert_eq!(gp.is_polarized(4).unwrap(), Some(t(&gp, "(· x (inv x))")));
        assert_eq!(preset("S").unwrap().is_polarized(7).unwrap(), None);
        let trivial = preset("trivial").unwrap();
        assert_eq!(trivial.is_polarized(1).unwrap(), Some(Term::var("x")));
        let u2 = preset("U2").unwrap();
        assert_eq!(u2.is_polarized(3).unwrap(), Some(t(&u2, "(u (u x))")));
    }

    #[test]
    fn exhaustive_search_matches_direct_checks() {
        // smallest group term idempotent by brute force over all terms in x
        let gp = preset("GP").unwrap();
        let mut e = TermEnumerator::new(gp.signature().clone(), variable_pool(1));
        let by_reduction = e
            .terms_up_to(4)
            .into_iter()
            .find(|t| free_group_reduce(t).unwrap().is_empty())
            .unwrap();
        assert_eq!(gp.find_term_idempotent(4).unwrap(), Some(by_reduction));
    }

    #[test]
    fn presets_are_sound_on_member_fixtures() {
        let members: &[(&str, &[&str])] = &[
            ("S", &["SL2", "ONE"]),
            ("LZ", &["LZ2", "ONE"]),
            ("RZ", &["RZ2"]),
            ("RB", &["RB4", "LZ2", "RZ2"]),
            ("B", &["BAND3", "RB4", "SL2", "LZ2"]),
            ("CS", &["CS2", "ONE"]),
            ("C", &["COMM3", "SL2", "CS2"]),
            ("GP", &["Z2", "Z3", "S3"]),
            ("RGP", &["Z2", "S3", "CLIFFORD3"]),
            ("L", &["CHAIN3", "N5", "M3"]),
            ("BA", &["BA2", "BA4"]),
            ("QG", &["QZ3", "STEINER3"]),
            ("LOOP", &["QZ3"]),
            ("U2", &["MONO_TAIL2"]),
            ("U_{2,0}", &["MONO_CYCLE2"]),
            ("trivial", &["ONE"]),
        ];
        for (name, algs) in members {
            let w = preset(name).unwrap();
            let mut e = TermEnumerator::new(w.signature().clone(), variable_pool(3));
            let terms = e.terms_up_to(if w.signature().len() > 2 { 4 } else { 5 });
            let algs: Vec<FiniteAlgebra> = algs.iter().map(|a| fixtures::by_name(a).unwrap()).collect();
            for a in &algs {
                assert!(a.satisfies_all(w.base().unwrap()).unwrap(), "{name} base fails in a member");
            }
            for l in &terms {
                for r in &terms {
                    let identity = Identity::new(l.clone(), r.clone());
                    if w.models(&identity).unwrap() {
                        for a in &algs {
                            assert!(a.satisfies(&identity).unwrap(), "{name}: {identity}");
                        }
                    }
                }
            }
            for law in w.base().unwrap() {
                assert!(w.models(law).unwrap(), "{name} does not model its own base: {law}");
            }
        }
    }

    #[test]
    fn keys_agree_with_decisions() {
        for name in ["S", "B", "GP", "RGP", "QG", "U3", "C", "CS"] {
            let w = preset(name).unwrap();
            let mut e = TermEnumerator::new(w.signature().clone(), variable_pool(2));
            let terms = e.terms_up_to(5);
            for a in &terms {
                for b in &terms {
                    let by_key = w.class_key(a).unwrap().unwrap() == w.class_key(b).unwrap().unwrap();
                    assert_eq!(by_key, w.equivalent(a, b).unwrap());
                }
            }
        }
    }

    #[test]
    fn generated_semilattice_matches_preset() {
        let s = preset("S").unwrap();
        let g = fin_generated("SL2", fixtures::sl2());
        let mut e = TermEnumerator::new(s.signature().clone(), variable_pool(3));
        let terms = e.terms_up_to(5);
        for a in &terms {
            for b in &terms {
                assert_eq!(g.equivalent(a, b).unwrap(), s.equivalent(a, b).unwrap());
            }
        }
    }

    #[test]
    fn regularized_group() {
        let r = preset("RGP").unwrap();
        let gp = preset("GP").unwrap();
        assert!(r.models(&id(&r, "(· x (inv x)) = (· (inv x) x)")).unwrap());
        assert!(!r.models(&id(&r, "(· x (inv x)) = (· y (inv y))")).unwrap());
        assert!(gp.models(&id(&gp, "(· x (inv x)) = (· y (inv y))")).unwrap());
        let mut e = TermEnumerator::new(r.signature().clone(), variable_pool(2));
        for term in e.terms_up_to(5) {
            let tt = Term::binary("·", term.clone(), Term::unary("inv", term.clone()));
            assert_eq!(r.is_term_idempotent(&term).unwrap(), r.equivalent(&term, &tt).unwrap());
        }
    }
}
