//! Free group words over `(·, inv)`.

use crate::error::{Error, Result};
use crate::term::{Name, Term};

/// A letter and whether it is inverted.
pub type Letter = (Name, bool);

/// Freely reduced word of a group term. The empty word is the identity.
pub fn free_group_reduce(t: &Term) -> Result<Vec<Letter>> {
    let mut flat = Vec::new();
    flatten(t, false, &mut flat)?;
    let mut stack: Vec<Letter> = Vec::with_capacity(flat.len());
    for (v, inv) in flat {
        match stack.last() {
            Some((w, winv)) if *w == v && *winv != inv => {
                stack.pop();
            }
            _ => stack.push((v, inv)),
        }
    }
    Ok(stack)
}

fn flatten(t: &Term, inverted: bool, out: &mut Vec<Letter>) -> Result<()> {
    match t {
        Term::Var(v) => out.push((v.clone(), inverted)),
        Term::App(op, args) => match (&**op, args.as_slice()) {
            ("·", [a, b]) => {
                let (first, second) = if inverted { (b, a) } else { (a, b) };
                flatten(first, inverted, out)?;
                flatten(second, inverted, out)?;
            }
            ("inv", [a]) => flatten(a, !inverted, out)?,
            _ => return Err(Error::UnknownSymbol(op.to_string())),
        },
    }
    Ok(())
}

pub fn format_word(word: &[Letter]) -> String {
    if word.is_empty() {
        return "e".into();
    }
    word.iter()
        .map(|(v, inv)| if *inv { format!("{v}⁻¹") } else { v.to_string() })
        .collect::<Vec<_>>()
        .join("")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn red(s: &str) -> String {
        format_word(&free_group_reduce(&Term::parse(s, &fixtures::group_sig()).unwrap()).unwrap())
    }

    #[test]
    fn reductions() {
        assert_eq!(red("(· x (· (inv y) y))"), "x");
        assert_eq!(red("(· x (inv x))"), "e");
        assert_eq!(red("(inv (· x y))"), "y⁻¹x⁻¹");
        assert_eq!(red("(inv (inv x))"), "x");
        assert_eq!(red("(· (· x y) (inv (· x y)))"), "e");
    }
}
