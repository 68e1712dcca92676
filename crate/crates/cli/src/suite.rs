//! The `verify-paper` suite: the published finite examples replayed
//! against the builtin (or overridden) fixtures.

use std::collections::BTreeSet;

use anyhow::{bail, Result};
use malcev::congruence::{all_congruences_with_guard, is_congruence, quotient};
use malcev::replica::{h_closure_probe, maltsev_member, replica_congruence, w_sum_decomposition};
use malcev::variety::free_band_normal_form;
use malcev::witness::{fg_search, fg_verify, WitnessStatus};
use malcev::{fixtures, preset, FiniteAlgebra, Identity, Partition, Term};

/// The published 4-element table, row-major.
const A_TABLE: [usize; 16] = [0, 0, 0, 0, 0, 1, 0, 0, 2, 2, 2, 2, 2, 3, 2, 3];

pub struct Fixtures {
    pub a: FiniteAlgebra,
    pub b: FiniteAlgebra,
    pub guard: usize,
}

impl Fixtures {
    pub fn builtin(guard: usize) -> Self {
        Self {
            a: fixtures::groupoid_a4(),
            b: fixtures::groupoid_b3(),
            guard,
        }
    }

    /// Replaces fixture `A` or `B` (case-insensitive, `A4`/`B3` also accepted).
    pub fn set(&mut self, name: &str, alg: FiniteAlgebra) -> Result<()> {
        match name.to_ascii_uppercase().as_str() {
            "A" | "A4" => self.a = alg,
            "B" | "B3" => self.b = alg,
            _ => bail!("unknown fixture `{name}`; expected A or B"),
        }
        Ok(())
    }
}

type Outcome = std::result::Result<(), String>;

pub struct Check {
    pub name: &'static str,
    pub about: &'static str,
    pub run: fn(&Fixtures) -> Outcome,
}

fn ensure(cond: bool, why: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(why())
    }
}

fn lift<T>(r: malcev::Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn groupoid(a: &FiniteAlgebra) -> Outcome {
    ensure(*a.signature() == fixtures::groupoid_sig(), || "not a groupoid".into())
}

fn theta() -> Partition {
    Partition::parse(4, "{{0,2},{1},{3}}").unwrap()
}

fn a_table(fx: &Fixtures) -> Outcome {
    groupoid(&fx.a)?;
    ensure(fx.a.size() == 4 && fx.a.table(0) == A_TABLE, || {
        format!("table {:?} differs from {:?}", fx.a.table(0), A_TABLE)
    })
}

fn a_replica(fx: &Fixtures) -> Outcome {
    groupoid(&fx.a)?;
    let rho = lift(replica_congruence(&fx.a, &lift(preset("LZ"))?))?;
    ensure(rho == lift(Partition::parse(fx.a.size(), "{{0,1},{2,3}}"))?, || format!("replica is {rho}"))
}

fn a_blocks(fx: &Fixtures) -> Outcome {
    groupoid(&fx.a)?;
    let sum = lift(w_sum_decomposition(&fx.a, &lift(preset("LZ"))?))?;
    ensure(sum.blocks.len() == 2, || format!("{} replica blocks", sum.blocks.len()))?;
    for (elements, block) in &sum.blocks {
        ensure(block.is_isomorphic(&fixtures::sl2()), || format!("block {elements:?} is not a 2-element semilattice"))?;
    }
    ensure(sum.quotient.is_isomorphic(&fixtures::lz2()), || "replica quotient is not LZ2".into())
}

fn a_member(fx: &Fixtures) -> Outcome {
    groupoid(&fx.a)?;
    let report = lift(maltsev_member(&fx.a, &lift(preset("C"))?, &lift(preset("LZ"))?))?;
    ensure(report.member, || format!("non-member: {}", report.to_string().replace('\n', "; ")))
}

fn a_theta(fx: &Fixtures) -> Outcome {
    groupoid(&fx.a)?;
    ensure(fx.a.size() == 4 && is_congruence(&fx.a, &theta()), || "{{0,2},{1},{3}} is not a congruence".into())
}

fn b_quotient(fx: &Fixtures) -> Outcome {
    a_theta(fx)?;
    let (q, _) = lift(quotient(&fx.a, &theta()))?;
    ensure(fx.b.size() == 3 && q.table(0) == fx.b.table(0), || format!("quotient table {:?}", q.table(0)))
}

fn b_congruences(fx: &Fixtures) -> Outcome {
    groupoid(&fx.b)?;
    let proper: Vec<Partition> = lift(all_congruences_with_guard(&fx.b, fx.guard))?
        .into_iter()
        .filter(|p| !p.is_discrete() && !p.is_total())
        .collect();
    let alpha = lift(Partition::parse(fx.b.size(), "{{0,2},{1}}"))?;
    ensure(proper == [alpha], || format!("proper congruences {proper:?}"))
}

fn b_non_member(fx: &Fixtures) -> Outcome {
    groupoid(&fx.b)?;
    let report = lift(maltsev_member(&fx.b, &lift(preset("C"))?, &lift(preset("LZ"))?))?;
    ensure(!report.member, || "B is a member".into())?;
    let alpha = lift(Partition::parse(fx.b.size(), "{{0,2},{1}}"))?;
    let (q, _) = lift(quotient(&fx.b, &alpha))?;
    let lz = lift(Identity::parse("(· x y) = x", fx.b.signature()))?;
    ensure(!lift(q.satisfies(&lz))?, || "B/alpha is a left-zero band".into())
}

fn a_probe(fx: &Fixtures) -> Outcome {
    groupoid(&fx.a)?;
    let report = lift(h_closure_probe(&fx.a, &lift(preset("C"))?, &lift(preset("LZ"))?, fx.guard))?;
    ensure(report.member, || "A is not a member".into())?;
    ensure(report.failures.iter().any(|f| f.theta == theta()), || {
        "the quotient by {{0,2},{1},{3}} is not reported".into()
    })
}

fn free_band(_: &Fixtures) -> Outcome {
    let mut forms = BTreeSet::new();
    for len in 1..=6u32 {
        for bits in 0..(1u32 << len) {
            let word: Vec<char> = (0..len).map(|i| if bits >> i & 1 == 0 { 'x' } else { 'y' }).collect();
            forms.insert(lift(free_band_normal_form(&word))?.into_iter().collect::<String>());
        }
    }
    let expected: BTreeSet<String> = ["x", "y", "xy", "yx", "xyx", "yxy"].map(String::from).into();
    ensure(forms == expected, || format!("normal forms {forms:?}"))
}

fn witness(v: &str, w: &str, f: &str, g: &str) -> Outcome {
    let (v, w) = (lift(preset(v))?, lift(preset(w))?);
    let f = lift(Term::parse(f, v.signature()))?;
    let g = lift(Term::parse(g, v.signature()))?;
    let report = lift(fg_verify(&v, &w, &f, &g))?;
    ensure(report.status == WitnessStatus::Verified, || format!("status {}", report.status))
}

fn fg_lattices(_: &Fixtures) -> Outcome {
    witness("L", "B:lattice", "(+ x (· x y))", "(+ (· x y) y)")
}

fn fg_boolean(_: &Fixtures) -> Outcome {
    witness("BA", "B:boolean", "(+ x (· x y))", "(+ (· x y) y)")
}

fn fg_quasigroups(_: &Fixtures) -> Outcome {
    witness("QG", "B:quasigroup", "(/ (· x y) y)", "(\\ x (· x y))")
}

fn fg_groups(_: &Fixtures) -> Outcome {
    witness("GP", "B:group", "(· (· x (inv y)) y)", "(· (· x (inv x)) y)")
}

fn fg_groups_search(_: &Fixtures) -> Outcome {
    let found = lift(fg_search(&lift(preset("GP"))?, &lift(preset("B:group"))?, 6))?;
    ensure(matches!(&found, Some(w) if w.status == WitnessStatus::Verified), || "no verified pair".into())
}

pub const CHECKS: &[Check] = &[
    Check { name: "a-table", about: "A is the published 4-element multiplication table", run: a_table },
    Check { name: "a-replica-lz", about: "the LZ-replica congruence of A is {{0,1},{2,3}}", run: a_replica },
    Check { name: "a-blocks-semilattices", about: "both replica classes of A are 2-element semilattices", run: a_blocks },
    Check { name: "a-member", about: "A lies in (commutative groupoids)∘LZ", run: a_member },
    Check { name: "a-theta", about: "{{0,2},{1},{3}} is a congruence of A", run: a_theta },
    Check { name: "b-quotient", about: "B is A/{{0,2},{1},{3}}", run: b_quotient },
    Check { name: "b-congruences", about: "B has exactly one proper non-trivial congruence {{0,2},{1}}", run: b_congruences },
    Check { name: "b-non-member", about: "B is outside (commutative groupoids)∘LZ and B/alpha is not left-zero", run: b_non_member },
    Check { name: "a-probe", about: "the quotient probe of A reports the non-member quotient B", run: a_probe },
    Check { name: "free-band-2", about: "the free band on x, y has the 6 normal forms x y xy yx xyx yxy", run: free_band },
    Check { name: "fg-lattices", about: "x+x·y, x·y+y witness lattices over bands", run: fg_lattices },
    Check { name: "fg-boolean", about: "x+x·y, x·y+y witness Boolean algebras over bands", run: fg_boolean },
    Check { name: "fg-quasigroups", about: "(x·y)/y, x\\(x·y) witness quasigroups over bands", run: fg_quasigroups },
    Check { name: "fg-groups", about: "x·y⁻¹·y, x·x⁻¹·y witness groups over bands", run: fg_groups },
    Check { name: "fg-groups-search", about: "search up to size 6 finds a verified pair for groups over bands", run: fg_groups_search },
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_fixtures_pass_every_check() {
        let fx = Fixtures::builtin(10);
        for c in CHECKS {
            assert_eq!((c.run)(&fx), Ok(()), "{}", c.name);
        }
    }

    #[test]
    fn swapped_fixtures_fail() {
        let mut fx = Fixtures::builtin(10);
        fx.set("a", fixtures::lz2()).unwrap();
        fx.set("B3", fixtures::groupoid_a4()).unwrap();
        assert!(a_table(&fx).is_err());
        assert!(b_quotient(&fx).is_err());
        assert!(fx.set("C", fixtures::lz2()).is_err());
    }

    #[test]
    fn names_are_unique() {
        let names: BTreeSet<&str> = CHECKS.iter().map(|c| c.name).collect();
        assert_eq!(names.len(), CHECKS.len());
    }
}
