//! Built-in signatures and small algebras used by tests, the CLI and benches.

use crate::algebra::{Element, FiniteAlgebra};
use crate::term::Signature;

pub fn groupoid_sig() -> Signature {
    Signature::new([("·", 2)]).unwrap()
}

/// Groups as `(·, inv)`; the identity is the derived term `x·inv(x)`.
pub fn group_sig() -> Signature {
    Signature::new([("·", 2), ("inv", 1)]).unwrap()
}

/// Lattices as `(+, ·)` with `+` the join.
pub fn lattice_sig() -> Signature {
    Signature::new([("+", 2), ("·", 2)]).unwrap()
}

/// Boolean algebras as `(+, ·, ')`.
pub fn boolean_sig() -> Signature {
    Signature::new([("+", 2), ("·", 2), ("'", 1)]).unwrap()
}

/// Quasigroups as `(·, /, \)`.
pub fn quasigroup_sig() -> Signature {
    Signature::new([("·", 2), ("/", 2), ("\\", 2)]).unwrap()
}

pub fn monounary_sig() -> Signature {
    Signature::new([("u", 1)]).unwrap()
}

fn groupoid(n: usize, rows: &[&[Element]]) -> FiniteAlgebra {
    let table = rows.iter().flat_map(|r| r.iter().copied()).collect();
    FiniteAlgebra::new(groupoid_sig(), n, vec![table]).unwrap()
}

/// The 4-element groupoid whose left-zero replica has the two semilattice
/// blocks `{0,1}` and `{2,3}`.
pub fn groupoid_a4() -> FiniteAlgebra {
    groupoid(4, &[&[0, 0, 0, 0], &[0, 1, 0, 0], &[2, 2, 2, 2], &[2, 3, 2, 3]])
}

/// Quotient of [`groupoid_a4`] by `{{0,2},{1},{3}}`, elements `b0 b1 b2`.
pub fn groupoid_b3() -> FiniteAlgebra {
    groupoid(3, &[&[0, 0, 0], &[0, 1, 0], &[0, 2, 2]])
        .with_labels(vec!["b0".into(), "b1".into(), "b2".into()])
        .unwrap()
}

pub fn trivial_groupoid() -> FiniteAlgebra {
    groupoid(1, &[&[0]])
}

/// Left-zero band: `i·j = i`.
pub fn lz2() -> FiniteAlgebra {
    groupoid(2, &[&[0, 0], &[1, 1]])
}

/// Right-zero band: `i·j = j`.
pub fn rz2() -> FiniteAlgebra {
    groupoid(2, &[&[0, 1], &[0, 1]])
}

/// Two-element meet semilattice `0 < 1`.
pub fn sl2() -> FiniteAlgebra {
    groupoid(2, &[&[0, 0], &[0, 1]])
}

/// Rectangular band on `{0,1}²`, element `2i + j`, `(i,j)(k,l) = (i,l)`.
pub fn rect_band_2x2() -> FiniteAlgebra {
    FiniteAlgebra::from_fn(groupoid_sig(), 4, |_, a| (a[0] / 2) * 2 + a[1] % 2).unwrap()
}

/// LZ2 with an adjoined identity element 2.
pub fn band3() -> FiniteAlgebra {
    groupoid(3, &[&[0, 0, 0], &[1, 1, 1], &[0, 1, 2]])
}

/// Constant semigroup `x·y = 0`.
pub fn cs2() -> FiniteAlgebra {
    groupoid(2, &[&[0, 0], &[0, 0]])
}

/// Commutative, non-associative groupoid `x·y = x + y + 1 mod 3`.
pub fn comm3() -> FiniteAlgebra {
    FiniteAlgebra::from_fn(groupoid_sig(), 3, |_, a| (a[0] + a[1] + 1) % 3).unwrap()
}

/// Cyclic group of order `n` as `(·, inv)`.
pub fn cyclic_group(n: usize) -> FiniteAlgebra {
    FiniteAlgebra::from_fn(group_sig(), n, |op, a| match op {
        0 => (a[0] + a[1]) % n,
        _ => (n - a[0]) % n,
    })
    .unwrap()
}

pub fn z2_group() -> FiniteAlgebra {
    cyclic_group(2).with_labels(vec!["e".into(), "g".into()]).unwrap()
}

/// Symmetric group on three points as `(·, inv)`, composition `(p·q)(i) = q(p(i))`.
pub fn s3_group() -> FiniteAlgebra {
    let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
    FiniteAlgebra::from_fn(group_sig(), 6, |op, a| {
        let p = perms[a[0]];
        match op {
            0 => {
                let q = perms[a[1]];
                index([q[p[0]], q[p[1]], q[p[2]]])
            }
            _ => {
                let mut inv = [0; 3];
                for (i, &pi) in p.iter().enumerate() {
                    inv[pi] = i;
                }
                index(inv)
            }
        }
    })
    .unwrap()
}

/// `Z2` with an adjoined zero `z`: a Clifford semigroup over the chain `z < {e,g}`.
pub fn clifford3() -> FiniteAlgebra {
    FiniteAlgebra::from_fn(group_sig(), 3, |op, a| match op {
        0 if a[0] == 0 || a[1] == 0 => 0,
        0 => 1 + ((a[0] - 1) + (a[1] - 1)) % 2,
        _ => a[0],
    })
    .unwrap()
    .with_labels(vec!["z".into(), "e".into(), "g".into()])
    .unwrap()
}

/// Lattice from a partial order given by `leq`, with `+` = join and `·` = meet.
pub fn lattice_from_order(n: usize, leq: impl Fn(usize, usize) -> bool) -> FiniteAlgebra {
    let join = |a: usize, b: usize| {
        let ubs: Vec<usize> = (0..n).filter(|&c| leq(a, c) && leq(b, c)).collect();
        *ubs.iter().find(|&&c| ubs.iter().all(|&d| leq(c, d))).unwrap()
    };
    let meet = |a: usize, b: usize| {
        let lbs: Vec<usize> = (0..n).filter(|&c| leq(c, a) && leq(c, b)).collect();
        *lbs.iter().find(|&&c| lbs.iter().all(|&d| leq(d, c))).unwrap()
    };
    FiniteAlgebra::from_fn(lattice_sig(), n, |op, a| match op {
        0 => join(a[0], a[1]),
        _ => meet(a[0], a[1]),
    })
    .unwrap()
}

pub fn chain(n: usize) -> FiniteAlgebra {
    lattice_from_order(n, |a, b| a <= b)
}

/// Pentagon: `0 < 1 < 2 < 4`, `0 < 3 < 4`.
pub fn n5() -> FiniteAlgebra {
    lattice_from_order(5, |a, b| {
        a == b || a == 0 || b == 4 || (a == 1 && b == 2)
    })
}

/// Diamond: `0 < 1, 2, 3 < 4`.
pub fn m3() -> FiniteAlgebra {
    lattice_from_order(5, |a, b| a == b || a == 0 || b == 4)
}

/// Boolean algebra of subsets of a `k`-element set, elements as bitmasks.
pub fn boolean_algebra(k: u32) -> FiniteAlgebra {
    let n = 1usize << k;
    FiniteAlgebra::from_fn(boolean_sig(), n, |op, a| match op {
        0 => a[0] | a[1],
        1 => a[0] & a[1],
        _ => !a[0] & (n - 1),
    })
    .unwrap()
}

/// `Z_n` as a quasigroup: `x·y = x+y`, `x/y = x−y`, `x\y = y−x`.
pub fn cyclic_quasigroup(n: usize) -> FiniteAlgebra {
    FiniteAlgebra::from_fn(quasigroup_sig(), n, |op, a| match op {
        0 => (a[0] + a[1]) % n,
        1 => (a[0] + n - a[1]) % n,
        _ => (a[1] + n - a[0]) % n,
    })
    .unwrap()
}

/// Idempotent, non-associative quasigroup `x·y = −x−y mod 3`; both
/// divisions are given by the same formula.
pub fn steiner3() -> FiniteAlgebra {
    FiniteAlgebra::from_fn(quasigroup_sig(), 3, |_, a| (6 - a[0] - a[1]) % 3).unwrap()
}

/// Monounary algebra: a tail of length `tail` feeding a cycle of length `cycle`.
/// Elements `0..cycle` form the cycle, `cycle..cycle+tail` the tail.
pub fn rho(tail: usize, cycle: usize) -> FiniteAlgebra {
    FiniteAlgebra::from_fn(monounary_sig(), tail + cycle, |_, a| {
        let x = a[0];
        if x < cycle {
            (x + 1) % cycle
        } else if x == cycle {
            0
        } else {
            x - 1
        }
    })
    .unwrap()
}

/// Every named fixture, for registries and exhaustive property checks.
pub fn all() -> Vec<(&'static str, FiniteAlgebra)> {
    vec![
        ("A4", groupoid_a4()),
        ("B3", groupoid_b3()),
        ("LZ2", lz2()),
        ("RZ2", rz2()),
        ("SL2", sl2()),
        ("RB4", rect_band_2x2()),
        ("BAND3", band3()),
        ("CS2", cs2()),
        ("COMM3", comm3()),
        ("ONE", trivial_groupoid()),
        ("Z2", z2_group()),
        ("Z3", cyclic_group(3)),
        ("S3", s3_group()),
        ("CLIFFORD3", clifford3()),
        ("CHAIN2", chain(2)),
        ("CHAIN3", chain(3)),
        ("N5", n5()),
        ("M3", m3()),
        ("BA2", boolean_algebra(1)),
        ("BA4", boolean_algebra(2)),
        ("QZ3", cyclic_quasigroup(3)),
        ("STEINER3", steiner3()),
        ("MONO_TAIL2", rho(2, 1)),
        ("MONO_CYCLE2", rho(0, 2)),
    ]
}

pub fn by_name(name: &str) -> Option<FiniteAlgebra> {
    all()
        .into_iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .map(|(_, a)| a)
}
