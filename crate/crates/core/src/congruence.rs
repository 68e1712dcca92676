//! Congruences of finite algebras.
//!
//! Compatibility is tested through basic translations: a partition is a
//! congruence iff every map `a ↦ ω(c₁, …, a, …, cₖ)` preserves it.

use std::collections::BTreeSet;

use crate::algebra::{tuples, Element, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::partition::{Partition, Partitions, Relation, UnionFind};
use crate::term::{Name, Term};

/// Default carrier-size limit for exhaustive congruence enumeration.
pub const DEFAULT_GUARD: usize = 10;

/// Calls `f(τ(a), τ(b))` for every basic translation `τ`.
fn for_each_translation(alg: &FiniteAlgebra, a: Element, b: Element, mut f: impl FnMut(Element, Element)) {
    let n = alg.size();
    let mut args = Vec::new();
    for (op, sym) in alg.signature().ops().iter().enumerate() {
        let k = sym.arity;
        for pos in 0..k {
            for others in tuples(n, k - 1) {
                args.clear();
                args.extend_from_slice(&others[..pos]);
                args.push(a);
                args.extend_from_slice(&others[pos..]);
                let x = alg.apply(op, &args);
                args[pos] = b;
                let y = alg.apply(op, &args);
                f(x, y);
            }
        }
    }
}

pub fn is_congruence(alg: &FiniteAlgebra, p: &Partition) -> bool {
    if p.size() != alg.size() {
        return false;
    }
    p.blocks().iter().all(|block| {
        block[1..].iter().all(|&e| {
            let mut ok = true;
            for_each_translation(alg, block[0], e, |x, y| ok &= p.same_block(x, y));
            ok
        })
    })
}

fn check_congruence(alg: &FiniteAlgebra, p: &Partition) -> Result<()> {
    if is_congruence(alg, p) {
        Ok(())
    } else {
        Err(Error::NotCongruence(p.to_string()))
    }
}

/// Least congruence containing `pairs`.
///
/// Union-find plus a worklist: every successful merge of `(a, b)` queues
/// `(τ(a), τ(b))` for all basic translations `τ`, until nothing new merges.
pub fn congruence_generated(alg: &FiniteAlgebra, pairs: impl IntoIterator<Item = (Element, Element)>) -> Partition {
    let mut uf = UnionFind::new(alg.size());
    let mut work: Vec<(Element, Element)> = pairs.into_iter().collect();
    while let Some((a, b)) = work.pop() {
        if uf.union(a, b) {
            for_each_translation(alg, a, b, |x, y| {
                if x != y {
                    work.push((x, y));
                }
            });
        }
    }
    uf.to_partition()
}

pub fn principal_congruence(alg: &FiniteAlgebra, a: Element, b: Element) -> Partition {
    congruence_generated(alg, [(a, b)])
}

/// Every congruence, found by filtering all partitions of the carrier.
/// Order is restricted-growth order: total partition first, discrete last.
pub fn all_congruences(alg: &FiniteAlgebra) -> Result<Vec<Partition>> {
    all_congruences_with_guard(alg, DEFAULT_GUARD)
}

pub fn all_congruences_with_guard(alg: &FiniteAlgebra, guard: usize) -> Result<Vec<Partition>> {
    if alg.size() > guard {
        return Err(Error::GuardExceeded {
            size: alg.size(),
            guard,
        });
    }
    Ok(Partitions::new(alg.size())
        .filter(|p| is_congruence(alg, p))
        .collect())
}

/// `A/θ` with blocks numbered by least element, plus the class map.
pub fn quotient(alg: &FiniteAlgebra, theta: &Partition) -> Result<(FiniteAlgebra, Vec<usize>)> {
    check_congruence(alg, theta)?;
    let reps = theta.representatives();
    let q = FiniteAlgebra::from_fn(alg.signature().clone(), reps.len(), |op, args| {
        let lifted: Vec<Element> = args.iter().map(|&c| reps[c]).collect();
        theta.block_of(alg.apply(op, &lifted))
    })?;
    Ok((q, theta.labels().to_vec()))
}

pub fn compose(alg: &FiniteAlgebra, alpha: &Partition, beta: &Partition) -> Result<Relation> {
    check_congruence(alg, alpha)?;
    check_congruence(alg, beta)?;
    Ok(alpha.to_relation().compose(&beta.to_relation()))
}

/// Least congruence above both.
pub fn join(alg: &FiniteAlgebra, alpha: &Partition, beta: &Partition) -> Result<Partition> {
    check_congruence(alg, alpha)?;
    check_congruence(alg, beta)?;
    Ok(alpha.join(beta))
}

pub fn meet(alg: &FiniteAlgebra, alpha: &Partition, beta: &Partition) -> Result<Partition> {
    check_congruence(alg, alpha)?;
    check_congruence(alg, beta)?;
    Ok(alpha.meet(beta))
}

/// `α∘β = β∘α`.
pub fn permutable(alg: &FiniteAlgebra, alpha: &Partition, beta: &Partition) -> Result<bool> {
    Ok(compose(alg, alpha, beta)? == compose(alg, beta, alpha)?)
}

/// `α∘β∘α = β∘α∘β`.
pub fn three_permutable(alg: &FiniteAlgebra, alpha: &Partition, beta: &Partition) -> Result<bool> {
    let (a, b) = (alpha.to_relation(), beta.to_relation());
    check_congruence(alg, alpha)?;
    check_congruence(alg, beta)?;
    Ok(a.compose(&b).compose(&a) == b.compose(&a).compose(&b))
}

/// True iff the ternary term `p(x,y,z)` satisfies `p(a,b,b) = a` and
/// `p(a,a,b) = b` for all `a, b` in a common block of `theta`.
pub fn is_maltsev_on_classes(alg: &FiniteAlgebra, theta: &Partition, p: &Term) -> Result<bool> {
    check_congruence(alg, theta)?;
    let vars: Vec<Name> = ["x", "y", "z"].into_iter().map(Name::from).collect();
    let allowed: BTreeSet<Name> = vars.iter().cloned().collect();
    if !p.var_set().is_subset(&allowed) {
        return Err(Error::WrongVariables {
            term: p.to_string(),
            allowed: "x, y, z".into(),
        });
    }
    let code = alg.compile(p, &vars)?;
    let mut stack = Vec::new();
    for block in theta.blocks() {
        for &a in &block {
            for &b in &block {
                if code.eval(alg, &[a, b, b], &mut stack) != a || code.eval(alg, &[a, a, b], &mut stack) != b {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn part(n: usize, s: &str) -> Partition {
        Partition::parse(n, s).unwrap()
    }

    /// Least congruence containing `pairs`, by intersecting every compatible
    /// partition that contains them.
    fn brute_force_generated(alg: &FiniteAlgebra, pairs: &[(usize, usize)]) -> Partition {
        Partitions::new(alg.size())
            .filter(|p| is_congruence(alg, p) && pairs.iter().all(|&(a, b)| p.same_block(a, b)))
            .fold(Partition::total(alg.size()), |acc, p| acc.meet(&p))
    }

    #[test]
    fn congruences_of_a4() {
        let a = fixtures::groupoid_a4();
        assert!(is_congruence(&a, &part(4, "{{0,1},{2,3}}")));
        assert!(is_congruence(&a, &part(4, "{{0,2},{1},{3}}")));
        assert!(!is_congruence(&a, &part(4, "{{0,3},{1,2}}")));
        // 0·0 = 0 but 3·0 = 2
        assert_eq!((a.apply(0, &[0, 0]), a.apply(0, &[3, 0])), (0, 2));
    }

    #[test]
    fn generated_matches_brute_force() {
        let a = fixtures::groupoid_a4();
        let expected = brute_force_generated(&a, &[(0, 1)]);
        assert_eq!(expected, part(4, "{{0,1},{2,3}}"));
        assert_eq!(congruence_generated(&a, [(0, 1)]), expected);
        assert!(congruence_generated(&a, []).is_discrete());
        assert!(congruence_generated(&a, [(2, 2)]).is_discrete());
        for (_, alg) in fixtures::all().into_iter().filter(|(_, a)| a.size() <= 5) {
            for x in 0..alg.size() {
                for y in 0..alg.size() {
                    assert_eq!(
                        congruence_generated(&alg, [(x, y)]),
                        brute_force_generated(&alg, &[(x, y)])
                    );
                }
            }
        }
    }

    #[test]
    fn enumeration() {
        let b = fixtures::groupoid_b3();
        let cons = all_congruences(&b).unwrap();
        assert_eq!(cons.len(), 3);
        let proper: Vec<_> = cons.iter().filter(|c| !c.is_discrete() && !c.is_total()).collect();
        assert_eq!(proper, vec![&part(3, "{{0,2},{1}}")]);
        assert_eq!(all_congruences(&fixtures::trivial_groupoid()).unwrap().len(), 1);
        let lz = all_congruences(&fixtures::lz2()).unwrap();
        assert_eq!(lz, vec![Partition::total(2), Partition::discrete(2)]);
        let big = fixtures::boolean_algebra(2);
        assert!(matches!(
            all_congruences_with_guard(&big, 3),
            Err(Error::GuardExceeded { size: 4, guard: 3 })
        ));
    }

    #[test]
    fn quotients() {
        let a = fixtures::groupoid_a4();
        let (b, map) = quotient(&a, &part(4, "{{0,2},{1},{3}}")).unwrap();
        assert_eq!(b, fixtures::groupoid_b3());
        assert_eq!(map, vec![0, 1, 0, 2]);
        let (same, _) = quotient(&a, &Partition::discrete(4)).unwrap();
        assert_eq!(same, a);
        let (one, _) = quotient(&a, &Partition::total(4)).unwrap();
        assert_eq!(one.size(), 1);
        assert!(matches!(
            quotient(&a, &part(4, "{{0,3},{1,2}}")),
            Err(Error::NotCongruence(_))
        ));
    }

    #[test]
    fn quotient_independent_of_representatives() {
        for (_, alg) in fixtures::all().into_iter().filter(|(_, a)| a.size() <= 5) {
            for theta in all_congruences(&alg).unwrap() {
                let (q, _) = quotient(&alg, &theta).unwrap();
                let blocks = theta.blocks();
                // pick the largest element of each block instead of the least
                let alt = FiniteAlgebra::from_fn(alg.signature().clone(), blocks.len(), |op, args| {
                    let lifted: Vec<usize> = args.iter().map(|&c| *blocks[c].last().unwrap()).collect();
                    theta.block_of(alg.apply(op, &lifted))
                })
                .unwrap();
                assert_eq!(q, alt);
            }
        }
    }

    #[test]
    fn relation_algebra() {
        let a = fixtures::groupoid_a4();
        let delta = Partition::discrete(4);
        let rho = part(4, "{{0,1},{2,3}}");
        let theta = part(4, "{{0,2},{1},{3}}");
        assert!(permutable(&a, &delta, &theta).unwrap());
        let j = join(&a, &rho, &theta).unwrap();
        assert!(rho.refines(&j) && theta.refines(&j));
        assert!(permutable(&a, &rho, &part(4, "{{0,3},{1,2}}")).is_err());
    }

    #[test]
    fn maltsev_on_classes() {
        let g = fixtures::s3_group();
        let sig = g.signature().clone();
        let p = Term::parse("(· x (· (inv y) z))", &sig).unwrap();
        for theta in all_congruences(&g).unwrap() {
            assert!(is_maltsev_on_classes(&g, &theta, &p).unwrap());
        }
        let a = fixtures::groupoid_a4();
        let rho = part(4, "{{0,1},{2,3}}");
        assert!(!is_maltsev_on_classes(&a, &rho, &Term::var("x")).unwrap());
        assert!(is_maltsev_on_classes(&a, &Partition::discrete(4), &Term::var("x")).unwrap());
        assert!(matches!(
            is_maltsev_on_classes(&a, &rho, &Term::var("w")),
            Err(Error::WrongVariables { .. })
        ));
    }
}
