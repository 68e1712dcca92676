//! Replica congruences and membership in Mal'tsev products.
//!
//! `A` lies in `V∘W` when its `W`-replica `A/ϱ` is in `W` (always true by
//! construction) and every `ϱ`-class that is a subalgebra lies in `V`.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::algebra::{format_set, tuples, Element, FiniteAlgebra};
use crate::congruence::{all_congruences_with_guard, congruence_generated, quotient};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::term::{Identity, Name};
use crate::variety::VarietySpec;

fn check_signature(alg: &FiniteAlgebra, w: &VarietySpec) -> Result<()> {
    if alg.signature() != w.signature() {
        return Err(Error::SignatureMismatch(format!(
            "algebra and variety `{}` have different signatures",
            w.name()
        )));
    }
    Ok(())
}

/// Least congruence whose quotient satisfies `W`'s base: the closure of all
/// pairs `(p(d̄), q(d̄))` for `p = q` in the base.
pub fn replica_congruence(alg: &FiniteAlgebra, w: &VarietySpec) -> Result<Partition> {
    check_signature(alg, w)?;
    let mut pairs = Vec::new();
    let mut stack = Vec::new();
    for id in w.base()? {
        let vars = id.variables();
        let lhs = alg.compile(&id.lhs, &vars)?;
        let rhs = alg.compile(&id.rhs, &vars)?;
        for env in tuples(alg.size(), vars.len()) {
            let (a, b) = (lhs.eval(alg, &env, &mut stack), rhs.eval(alg, &env, &mut stack));
            if a != b {
                pairs.push((a, b));
            }
        }
    }
    Ok(congruence_generated(alg, pairs))
}

/// An identity together with a violating assignment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub identity: Identity,
    pub assignment: Vec<(String, Element)>,
}

impl Failure {
    fn new(identity: &Identity, assignment: Vec<(Name, Element)>) -> Self {
        Self {
            identity: identity.clone(),
            assignment: assignment.into_iter().map(|(v, e)| (v.to_string(), e)).collect(),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let env: Vec<String> = self.assignment.iter().map(|(v, e)| format!("{v}={e}")).collect();
        write!(f, "{} fails at {}", self.identity, env.join(", "))
    }
}

fn first_failure(alg: &FiniteAlgebra, ids: &[Identity]) -> Result<Option<Failure>> {
    for id in ids {
        if let Some(cex) = alg.counterexample(id)? {
            return Ok(Some(Failure::new(id, cex)));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockReport {
    pub elements: Vec<Element>,
    pub is_subalgebra: bool,
    pub checked_against_v: bool,
    /// First base identity of `V` failing in the block, with the assignment
    /// given in elements of the original algebra.
    pub failure: Option<Failure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipReport {
    pub member: bool,
    pub replica: Partition,
    pub blocks: Vec<BlockReport>,
    /// Set by [`relative_member`]: the first base identity of `K` that fails.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_failure: Option<Option<Failure>>,
}

impl fmt::Display for MembershipReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verdict: {}", if self.member { "member" } else { "non-member" })?;
        writeln!(f, "replica: {}", self.replica)?;
        for b in &self.blocks {
            let set: BTreeSet<Element> = b.elements.iter().copied().collect();
            write!(f, "block {}: ", format_set(&set))?;
            match (&b.is_subalgebra, &b.failure) {
                (false, _) => writeln!(f, "not a subalgebra")?,
                (true, None) => writeln!(f, "subalgebra, in V")?,
                (true, Some(fail)) => writeln!(f, "subalgebra, {fail}")?,
            }
        }
        match &self.k_failure {
            Some(None) => writeln!(f, "K: satisfied")?,
            Some(Some(fail)) => writeln!(f, "K: {fail}")?,
            None => {}
        }
        Ok(())
    }
}

/// Membership of `alg` in `V∘W`. Every replica class that is a subalgebra
/// must satisfy `V`'s base. When `W` is flagged idempotent every class must
/// be a subalgebra; a class that is not is reported as an error.
pub fn maltsev_member(alg: &FiniteAlgebra, v: &VarietySpec, w: &VarietySpec) -> Result<MembershipReport> {
    check_signature(alg, v)?;
    let v_base = v.base()?;
    let replica = replica_congruence(alg, w)?;
    let mut blocks = Vec::new();
    for elements in replica.blocks() {
        let set: BTreeSet<Element> = elements.iter().copied().collect();
        let is_subalgebra = alg.is_subuniverse(&set);
        if !is_subalgebra && w.is_idempotent() {
            return Err(Error::NotIdempotent {
                name: w.name().to_string(),
                detail: format!("replica class {} is not a subalgebra", format_set(&set)),
            });
        }
        let failure = if is_subalgebra {
            let sub = alg.restrict(&set)?;
            first_failure(&sub, v_base)?.map(|mut fail| {
                for (_, e) in &mut fail.assignment {
                    *e = elements[*e];
                }
                fail
            })
        } else {
            None
        };
        blocks.push(BlockReport {
            elements,
            is_subalgebra,
            checked_against_v: is_subalgebra,
            failure,
        });
    }
    Ok(MembershipReport {
        member: blocks.iter().all(|b| b.failure.is_none()),
        replica,
        blocks,
        k_failure: None,
    })
}

/// Membership in `V∘_K W`: `alg` must also satisfy `K`'s base.
pub fn relative_member(
    alg: &FiniteAlgebra,
    v: &VarietySpec,
    w: &VarietySpec,
    k: &VarietySpec,
) -> Result<MembershipReport> {
    check_signature(alg, k)?;
    let k_failure = first_failure(alg, k.base()?)?;
    let mut report = maltsev_member(alg, v, w)?;
    report.member &= k_failure.is_none();
    report.k_failure = Some(k_failure);
    Ok(report)
}

/// `alg` as a `W`-sum: its replica classes (all subalgebras) and the
/// replica quotient.
#[derive(Clone, Debug)]
pub struct WSum {
    pub replica: Partition,
    pub blocks: Vec<(Vec<Element>, FiniteAlgebra)>,
    pub quotient: FiniteAlgebra,
}

pub fn w_sum_decomposition(alg: &FiniteAlgebra, w: &VarietySpec) -> Result<WSum> {
    if !w.is_idempotent() {
        return Err(Error::InvalidVariety(format!("`{}` is not flagged idempotent", w.name())));
    }
    let replica = replica_congruence(alg, w)?;
    let blocks = replica
        .blocks()
        .into_iter()
        .map(|elements| {
            let set: BTreeSet<Element> = elements.iter().copied().collect();
            alg.restrict(&set).map(|sub| (elements, sub))
        })
        .collect::<Result<Vec<_>>>()?;
    let (quotient, _) = quotient(alg, &replica)?;
    Ok(WSum {
        replica,
        blocks,
        quotient,
    })
}

/// A congruence whose quotient leaves `V∘W`.
#[derive(Clone, Debug, Serialize)]
pub struct ProbeFailure {
    pub theta: Partition,
    pub report: MembershipReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    /// Whether `alg` itself is in `V∘W`.
    pub member: bool,
    pub congruences_checked: usize,
    pub failures: Vec<ProbeFailure>,
}

impl fmt::Display for ProbeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "algebra: {}", if self.member { "member" } else { "non-member" })?;
        writeln!(f, "congruences checked: {}", self.congruences_checked)?;
        writeln!(f, "failing quotients: {}", self.failures.len())?;
        for fail in &self.failures {
            writeln!(f, "theta {}", fail.theta)?;
            for line in fail.report.to_string().lines() {
                writeln!(f, "  {line}")?;
            }
        }
        Ok(())
    }
}

/// Tests every quotient of `alg` for membership in `V∘W` and reports all
/// that fail, in congruence enumeration order.
pub fn h_closure_probe(alg: &FiniteAlgebra, v: &VarietySpec, w: &VarietySpec, guard: usize) -> Result<ProbeReport> {
    let member = maltsev_member(alg, v, w)?.member;
    let congruences = all_congruences_with_guard(alg, guard)?;
    let mut failures = Vec::new();
    for theta in &congruences {
        let (q, _) = quotient(alg, theta)?;
        let report = maltsev_member(&q, v, w)?;
        if !report.member {
            failures.push(ProbeFailure {
                theta: theta.clone(),
                report,
            });
        }
    }
    Ok(ProbeReport {
        member,
        congruences_checked: congruences.len(),
        failures,
    })
}
