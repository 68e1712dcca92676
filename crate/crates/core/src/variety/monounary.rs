//! Monounary varieties `U_k` (`u^k(x) = u^k(y)`) and `U_{n,k}`
//! (`u^{n+k}(x) = u^k(x)`). Every term is `u^a(x)` for some `a` and `x`.

use crate::error::{Error, Result};
use crate::term::{Name, Term};

/// `(a, x)` for the term `u^a(x)`.
pub fn exponent(t: &Term) -> Result<(usize, Name)> {
    let mut a = 0;
    let mut cur = t;
    loop {
        match cur {
            Term::Var(x) => return Ok((a, x.clone())),
            Term::App(_, args) if args.len() == 1 => {
                a += 1;
                cur = &args[0];
            }
            Term::App(op, args) => {
                return Err(Error::ArityMismatch {
                    symbol: op.to_string(),
                    expected: 1,
                    found: args.len(),
                })
            }
        }
    }
}

pub fn power(op: &str, a: usize, x: Term) -> Term {
    (0..a).fold(x, |t, _| Term::unary(op, t))
}

/// Canonical `(variable, exponent)` of `u^a(x)`; the variable is dropped
/// once the term is constant.
pub fn canonical(cycle: Option<usize>, tail: usize, a: usize, x: Name) -> (Option<Name>, usize) {
    match cycle {
        None if a >= tail => (None, tail),
        None => (Some(x), a),
        Some(n) if a >= tail => (Some(x), tail + (a - tail) % n),
        Some(_) => (Some(x), a),
    }
}
