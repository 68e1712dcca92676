//! Named varieties.
//!
//! Band-family presets (`S`, `LZ`, `RZ`, `RB`, `B`) and `trivial`/`all`
//! take an optional signature suffix, e.g. `B:lattice`, and are then read
//! through the band translation: unary symbols act as the identity and an
//! `n`-ary symbol is the left-associated product of its arguments.

use std::sync::Arc;

use crate::algebra::FiniteAlgebra;
use crate::enumerate::pool_var;
use crate::error::{Error, Result};
use crate::fixtures;
use crate::term::{Identity, Signature, Term};

use super::band::{product, product_symbol, BandKind};
use super::monounary::power;
use super::quasigroup::{loop_system, quasigroup_system};
use super::{Decision, VarietySpec};

pub const PRESET_NAMES: &[(&str, &str)] = &[
    ("S", "semilattices"),
    ("LZ", "left-zero bands"),
    ("RZ", "right-zero bands"),
    ("RB", "rectangular bands"),
    ("B", "bands"),
    ("C", "commutative groupoids"),
    ("CS", "constant semigroups"),
    ("GP", "groups over (·, inv)"),
    ("RGP", "regularized groups (Clifford semigroups)"),
    ("L", "lattices over (+, ·)"),
    ("BA", "Boolean algebras over (+, ·, ')"),
    ("QG", "quasigroups over (·, /, \\)"),
    ("LOOP", "loops over (·, /, \\), sound-only oracle"),
    ("U<k>", "monounary u^k(x) = u^k(y)"),
    ("U<n>,<k>", "monounary u^(n+k)(x) = u^k(x)"),
    ("trivial", "x = y"),
    ("all", "all algebras (no identities)"),
    ("gen:<fixture>", "variety generated by a built-in algebra"),
];

fn ids(sig: &Signature, lines: &[&str]) -> Vec<Identity> {
    lines.iter().map(|l| Identity::parse(l, sig).unwrap()).collect()
}

fn signature_named(name: &str) -> Result<Signature> {
    Ok(match name.to_ascii_lowercase().as_str() {
        "groupoid" => fixtures::groupoid_sig(),
        "group" => fixtures::group_sig(),
        "lattice" => fixtures::lattice_sig(),
        "boolean" => fixtures::boolean_sig(),
        "quasigroup" => fixtures::quasigroup_sig(),
        "monounary" => fixtures::monounary_sig(),
        _ => return Err(Error::UnknownPreset(format!("unknown signature `{name}`"))),
    })
}

/// Looks up a preset by name (case-insensitive).
pub fn preset(name: &str) -> Result<VarietySpec> {
    if let Some(alg) = name.strip_prefix("gen:") {
        let a = fixtures::by_name(alg).ok_or_else(|| Error::UnknownPreset(name.to_string()))?;
        return Ok(fin_generated(name, a));
    }
    let (head, sig) = match name.split_once(':') {
        Some((h, s)) => (h, Some(signature_named(s)?)),
        None => (name, None),
    };
    let upper = head.to_ascii_uppercase();
    let family = |kind| band_variety(name, kind, sig.clone().unwrap_or_else(fixtures::groupoid_sig));
    let fixed = |v: Result<VarietySpec>| {
        if sig.is_some() {
            Err(Error::UnknownPreset(format!("`{head}` has a fixed signature")))
        } else {
            v
        }
    };
    match upper.as_str() {
        "S" => family(BandKind::Semilattice),
        "LZ" => family(BandKind::LeftZero),
        "RZ" => family(BandKind::RightZero),
        "RB" => family(BandKind::Rectangular),
        "B" => family(BandKind::Free),
        "TRIVIAL" => trivial(sig.unwrap_or_else(fixtures::groupoid_sig)),
        "ALL" => all_algebras(sig.unwrap_or_else(fixtures::groupoid_sig)),
        "C" => fixed(commutative()),
        "CS" => fixed(constant_semigroups()),
        "GP" => fixed(groups()),
        "RGP" => fixed(clifford()),
        "L" => fixed(lattices()),
        "BA" => fixed(boolean_algebras()),
        "QG" => fixed(quasigroups()),
        "LOOP" => fixed(loops()),
        _ if upper.starts_with('U') => fixed(monounary(name, &upper[1..])),
        _ => Err(Error::UnknownPreset(name.to_string())),
    }
}

/// The variety generated by `alg`, decided by evaluation in `alg`.
pub fn fin_generated(name: &str, alg: FiniteAlgebra) -> VarietySpec {
    let idempotent = alg.idempotent_elements().len() == alg.size();
    VarietySpec::new(
        name,
        alg.signature().clone(),
        None,
        Some(Decision::FinGenerated(Arc::new(alg))),
        idempotent,
    )
    .expect("a generating algebra satisfies its own idempotent laws")
}

/// Regular identities of `inner`: its decision plus equal variable sets.
pub fn regularized(inner: &VarietySpec) -> Result<VarietySpec> {
    let d = inner.decision()?.clone();
    VarietySpec::new(
        format!("R({})", inner.name()),
        inner.signature().clone(),
        None,
        Some(Decision::Regularized(Box::new(d))),
        inner.is_idempotent(),
    )
}

fn band_variety(name: &str, kind: BandKind, sig: Signature) -> Result<VarietySpec> {
    let m = product_symbol(&sig)?;
    let v = |i| Term::Var(pool_var(i));
    let mul = |a, b| product(&m, a, b);
    let mut base = Vec::new();
    for op in sig.ops() {
        if op.name == m.0 && op.arity == 2 {
            continue;
        }
        let args: Vec<Term> = (0..op.arity).map(v).collect();
        let lhs = Term::App(op.name.clone(), args.clone());
        let rhs = args.into_iter().reduce(mul).expect("arity is positive");
        base.push(Identity::new(lhs, rhs));
    }
    let assoc = Identity::new(mul(mul(v(0), v(1)), v(2)), mul(v(0), mul(v(1), v(2))));
    let idem = Identity::new(mul(v(0), v(0)), v(0));
    match kind {
        BandKind::LeftZero => base.push(Identity::new(mul(v(0), v(1)), v(0))),
        BandKind::RightZero => base.push(Identity::new(mul(v(0), v(1)), v(1))),
        BandKind::Semilattice => base.extend([assoc, idem, Identity::new(mul(v(0), v(1)), mul(v(1), v(0)))]),
        BandKind::Rectangular => base.extend([
            assoc,
            idem,
            Identity::new(mul(mul(v(0), v(1)), v(2)), mul(v(0), v(2))),
        ]),
        BandKind::Free => base.extend([assoc, idem]),
    }
    VarietySpec::new(name, sig, Some(base), Some(Decision::Band(kind)), true)
}

fn trivial(sig: Signature) -> Result<VarietySpec> {
    let base = vec![Identity::new(Term::var("x"), Term::var("y"))];
    VarietySpec::new("trivial", sig, Some(base), Some(Decision::Trivial), true)
}

fn all_algebras(sig: Signature) -> Result<VarietySpec> {
    VarietySpec::new("all", sig, Some(Vec::new()), Some(Decision::Syntactic), false)
}

fn commutative() -> Result<VarietySpec> {
    let sig = fixtures::groupoid_sig();
    let base = ids(&sig, &["(· x y) = (· y x)"]);
    VarietySpec::new("C", sig, Some(base), Some(Decision::Commutative), false)
}

fn constant_semigroups() -> Result<VarietySpec> {
    let sig = fixtures::groupoid_sig();
    let base = ids(&sig, &["(· x y) = (· z w)"]);
    VarietySpec::new("CS", sig, Some(base), Some(Decision::ConstantSemigroup), false)
}

fn groups() -> Result<VarietySpec> {
    let sig = fixtures::group_sig();
    let base = ids(
        &sig,
        &[
            "(· (· x y) z) = (· x (· y z))",
            "(· x (inv x)) = (· y (inv y))",
            "(· x (· y (inv y))) = x",
        ],
    );
    VarietySpec::new("GP", sig, Some(base), Some(Decision::Group), false)
}

fn clifford() -> Result<VarietySpec> {
    let sig = fixtures::group_sig();
    let base = ids(
        &sig,
        &[
            "(· (· x y) z) = (· x (· y z))",
            "(inv (inv x)) = x",
            "(· (· x (inv x)) x) = x",
            "(· x (inv x)) = (· (inv x) x)",
            "(· (· x (inv x)) (· y (inv y))) = (· (· y (inv y)) (· x (inv x)))",
        ],
    );
    let decision = Decision::Regularized(Box::new(Decision::Group));
    VarietySpec::new("RGP", sig, Some(base), Some(decision), false)
}

const LATTICE_LAWS: &[&str] = &[
    "(+ (+ x y) z) = (+ x (+ y z))",
    "(· (· x y) z) = (· x (· y z))",
    "(+ x y) = (+ y x)",
    "(· x y) = (· y x)",
    "(+ x (· x y)) = x",
    "(· x (+ x y)) = x",
];

fn lattices() -> Result<VarietySpec> {
    let sig = fixtures::lattice_sig();
    let base = ids(&sig, LATTICE_LAWS);
    VarietySpec::new("L", sig, Some(base), Some(Decision::Lattice), true)
}

fn boolean_algebras() -> Result<VarietySpec> {
    let sig = fixtures::boolean_sig();
    let mut base = ids(&sig, LATTICE_LAWS);
    base.extend(ids(
        &sig,
        &[
            "(· x (+ y z)) = (+ (· x y) (· x z))",
            "(+ x (· y (' y))) = x",
            "(· x (+ y (' y))) = x",
        ],
    ));
    let two = Arc::new(fixtures::boolean_algebra(1));
    VarietySpec::new("BA", sig, Some(base), Some(Decision::Boolean(two)), false)
}

const QUASIGROUP_LAWS: &[&str] = &[
    "(\\ x (· x y)) = y",
    "(· x (\\ x y)) = y",
    "(/ (· x y) y) = x",
    "(· (/ x y) y) = x",
];

fn quasigroups() -> Result<VarietySpec> {
    let sig = fixtures::quasigroup_sig();
    let base = ids(&sig, QUASIGROUP_LAWS);
    let decision = Decision::Quasigroup(Arc::new(quasigroup_system()));
    VarietySpec::new("QG", sig, Some(base), Some(decision), false)
}

fn loops() -> Result<VarietySpec> {
    let sig = fixtures::quasigroup_sig();
    let mut base = ids(&sig, QUASIGROUP_LAWS);
    base.extend(ids(&sig, &["(/ x x) = (\\ y y)"]));
    let decision = Decision::Loop(Arc::new(loop_system()));
    VarietySpec::new("LOOP", sig, Some(base), Some(decision), false)
}

/// `U<k>` or `U<n>,<k>`; also accepts `U_k`, `U_{n,k}`.
fn monounary(name: &str, params: &str) -> Result<VarietySpec> {
    let cleaned: String = params.chars().filter(|c| !matches!(c, '_' | '{' | '}')).collect();
    let bad = || Error::UnknownPreset(name.to_string());
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let (cycle, tail) = match cleaned.split_once(',') {
        Some((n, k)) => (Some(num(n)?), num(k)?),
        None => (None, num(&cleaned)?),
    };
    if cycle == Some(0) {
        return Err(bad());
    }
    let sig = fixtures::monounary_sig();
    let (x, y) = (Term::var("x"), Term::var("y"));
    let base = match cycle {
        None => Identity::new(power("u", tail, x), power("u", tail, y)),
        Some(n) => Identity::new(power("u", n + tail, x.clone()), power("u", tail, x)),
    };
    let display = match cycle {
        None => format!("U_{tail}"),
        Some(n) => format!("U_{{{n},{tail}}}"),
    };
    VarietySpec::new(display, sig, Some(vec![base]), Some(Decision::Monounary { tail, cycle }), false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry() {
        for (name, _) in PRESET_NAMES {
            if name.contains('<') {
                continue;
            }
            preset(name).unwrap();
        }
        assert_eq!(preset("U_{2,0}").unwrap().name(), "U_{2,0}");
        assert_eq!(preset("u3").unwrap().name(), "U_3");
        assert!(preset("U0,1").is_err());
        assert!(preset("GP:lattice").is_err());
        assert!(preset("nope").is_err());
        assert!(preset("S:monounary").is_err());
        assert_eq!(preset("gen:SL2").unwrap().name(), "gen:SL2");
    }

    #[test]
    fn band_translation_base() {
        let b = preset("LZ:quasigroup").unwrap();
        let shown: Vec<String> = b.base().unwrap().iter().map(|i| i.to_string()).collect();
        assert_eq!(shown, ["(/ x y) = (· x y)", "(\\ x y) = (· x y)", "(· x y) = x"]);
        let l = preset("S:boolean").unwrap();
        assert!(l.base().unwrap().iter().any(|i| i.to_string() == "(' x) = x"));
    }
}
