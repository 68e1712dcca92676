//! Binary terms `f`, `g` with `V ⊨ f(x,y) = x`, `V ⊨ g(x,y) = y` and
//! `W ⊨ f = g`. Their existence makes `V∘W` a variety.

use std::fmt;

use serde::Serialize;

use crate::enumerate::{variable_pool, TermEnumerator};
use crate::error::{Error, Result};
use crate::term::{Identity, Name, Term};
use crate::variety::{OracleStrength, VarietySpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessStatus {
    /// All three conditions hold and every oracle used is complete.
    Verified,
    /// All three conditions hold but some oracle is only sound.
    CandidateSoundOnly,
    /// A complete oracle rejected a condition.
    Refuted,
    /// Only a sound-only oracle rejected a condition, so nothing is known.
    Inconclusive,
}

impl fmt::Display for WitnessStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WitnessStatus::Verified => "verified",
            WitnessStatus::CandidateSoundOnly => "candidate-sound-only",
            WitnessStatus::Refuted => "refuted",
            WitnessStatus::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionCheck {
    /// `V` or `W`.
    pub variety: String,
    pub identity: Identity,
    pub holds: bool,
    pub oracle: OracleStrength,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FGWitness {
    pub f: Term,
    pub g: Term,
    pub status: WitnessStatus,
    pub checks: Vec<ConditionCheck>,
}

impl fmt::Display for FGWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "f = {}", self.f)?;
        writeln!(f, "g = {}", self.g)?;
        for c in &self.checks {
            let strength = match c.oracle {
                OracleStrength::Complete => "",
                OracleStrength::SoundOnly => " (sound-only oracle)",
            };
            let verdict = if c.holds { "holds" } else { "fails" };
            writeln!(f, "{} ⊨ {}: {verdict}{strength}", c.variety, c.identity)?;
        }
        writeln!(f, "status: {}", self.status)
    }
}

fn x() -> Term {
    Term::var("x")
}

fn y() -> Term {
    Term::var("y")
}

fn check_binary(t: &Term) -> Result<()> {
    let allowed: [Name; 2] = ["x".into(), "y".into()];
    if t.var_set().iter().all(|v| allowed.contains(v)) {
        Ok(())
    } else {
        Err(Error::WrongVariables {
            term: t.to_string(),
            allowed: "x, y".into(),
        })
    }
}

fn check_shared_signature(v: &VarietySpec, w: &VarietySpec) -> Result<()> {
    if v.signature() != w.signature() {
        return Err(Error::SignatureMismatch(format!(
            "`{}` and `{}` have different signatures",
            v.name(),
            w.name()
        )));
    }
    Ok(())
}

/// Evaluates the three conditions with the oracles of `v` and `w`.
pub fn fg_verify(v: &VarietySpec, w: &VarietySpec, f: &Term, g: &Term) -> Result<FGWitness> {
    check_shared_signature(v, w)?;
    check_binary(f)?;
    check_binary(g)?;
    let conditions = [
        ("V", v, Identity::new(f.clone(), x())),
        ("V", v, Identity::new(g.clone(), y())),
        ("W", w, Identity::new(f.clone(), g.clone())),
    ];
    let mut checks = Vec::new();
    for (label, variety, identity) in conditions {
        let holds = variety.models(&identity)?;
        checks.push(ConditionCheck {
            variety: label.to_string(),
            identity,
            holds,
            oracle: variety.decision()?.strength(),
        });
    }
    let complete = |c: &ConditionCheck| c.oracle == OracleStrength::Complete;
    let status = if checks.iter().any(|c| !c.holds && complete(c)) {
        WitnessStatus::Refuted
    } else if checks.iter().any(|c| !c.holds) {
        WitnessStatus::Inconclusive
    } else if checks.iter().all(complete) {
        WitnessStatus::Verified
    } else {
        WitnessStatus::CandidateSoundOnly
    };
    Ok(FGWitness {
        f: f.clone(),
        g: g.clone(),
        status,
        checks,
    })
}

/// Smallest pair by combined size, then by the enumeration index of `f`,
/// then of `g`, among binary terms of at most `max_size` nodes each.
pub fn fg_search(v: &VarietySpec, w: &VarietySpec, max_size: usize) -> Result<Option<FGWitness>> {
    check_shared_signature(v, w)?;
    v.decision()?;
    w.decision()?;
    let mut e = TermEnumerator::new(v.signature().clone(), variable_pool(2));
    let terms = e.terms_up_to(max_size);
    let mut fs = Vec::new();
    let mut gs = Vec::new();
    for t in &terms {
        if v.equivalent(t, &x())? {
            fs.push(t);
        }
        if v.equivalent(t, &y())? {
            gs.push(t);
        }
    }
    let g_keys = gs.iter().map(|g| w.class_key(g)).collect::<Result<Vec<_>>>()?;
    let max_total = fs.iter().map(|t| t.size()).max().unwrap_or(0) + gs.iter().map(|t| t.size()).max().unwrap_or(0);
    for total in 2..=max_total {
        for f in &fs {
            let want = match total.checked_sub(f.size()) {
                Some(s) if s > 0 => s,
                _ => continue,
            };
            let f_key = w.class_key(f)?;
            for (g, g_key) in gs.iter().zip(&g_keys) {
                if g.size() != want {
                    continue;
                }
                let same = match (&f_key, g_key) {
                    (Some(a), Some(b)) => a == b,
                    _ => w.equivalent(f, g)?,
                };
                if same {
                    return fg_verify(v, w, f, g).map(Some);
                }
            }
        }
    }
    Ok(None)
}

/// For bands: `f` and `g` both contain `x` and `y` and agree on their first
/// and on their last variable. Then `f = g` holds in every band.
pub fn bands_fg_shortcut(f: &Term, g: &Term) -> bool {
    let both = |t: &Term| {
        let vars = t.var_set();
        vars.contains("x") && vars.contains("y")
    };
    if !both(f) || !both(g) {
        return false;
    }
    let (a, b) = (f.variables(), g.variables());
    a.first == b.first && a.last == b.last
}

/// `(t(x,y), t(y,x))` for a strongly irregular identity `t(x,y) = x` in
/// which `t` contains both variables. Either side may be the variable.
pub fn strongly_irregular_pair(id: &Identity) -> Result<(Term, Term)> {
    let t = match (&id.lhs, &id.rhs) {
        (t, Term::Var(v)) | (Term::Var(v), t) if &**v == "x" && !t.is_var() => t,
        _ => {
            return Err(Error::WrongVariables {
                term: id.to_string(),
                allowed: "t(x, y) = x".into(),
            })
        }
    };
    let vars = t.var_set();
    if vars.len() != 2 || !vars.contains("x") || !vars.contains("y") {
        return Err(Error::WrongVariables {
            term: t.to_string(),
            allowed: "x, y (both occurring)".into(),
        });
    }
    let swap = [(Name::from("x"), y()), (Name::from("y"), x())].into_iter().collect();
    Ok((t.clone(), t.substitute(&swap)))
}
