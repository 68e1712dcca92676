//! Free band normal forms and the band translation of terms.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::term::{Name, Signature, Term};

/// Which band variety a leaf-word decision targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BandKind {
    Semilattice,
    LeftZero,
    RightZero,
    Rectangular,
    Free,
}

impl BandKind {
    pub fn name(self) -> &'static str {
        match self {
            BandKind::Semilattice => "S",
            BandKind::LeftZero => "LZ",
            BandKind::RightZero => "RZ",
            BandKind::Rectangular => "RB",
            BandKind::Free => "B",
        }
    }
}

/// Canonical representative of `word` in the free band.
///
/// With `p` the longest prefix missing one letter of the content, `a` the
/// letter after it, and `b`, `s` the mirror image on the right, the form is
/// `nf(p)·a` followed by `b·nf(s)`, overlapping the longest suffix of the
/// first part that is a prefix of the second.
pub fn free_band_normal_form<T: Clone + Ord>(word: &[T]) -> Result<Vec<T>> {
    if word.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(normal_form(word))
}

fn normal_form<T: Clone + Ord>(word: &[T]) -> Vec<T> {
    let content: BTreeSet<&T> = word.iter().collect();
    if content.len() == 1 {
        return vec![word[0].clone()];
    }
    let mut seen = BTreeSet::new();
    let mut i = 0;
    while i < word.len() {
        seen.insert(&word[i]);
        if seen.len() == content.len() {
            break;
        }
        i += 1;
    }
    seen.clear();
    let mut j = word.len() - 1;
    loop {
        seen.insert(&word[j]);
        if seen.len() == content.len() {
            break;
        }
        j -= 1;
    }
    let mut left = normal_form(&word[..i]);
    left.push(word[i].clone());
    let mut right = vec![word[j].clone()];
    right.extend(normal_form(&word[j + 1..]));
    let overlap = (1..=left.len().min(right.len()))
        .rev()
        .find(|&k| left[left.len() - k..] == right[..k])
        .unwrap_or(0);
    left.extend_from_slice(&right[overlap..]);
    left
}

/// The word a term denotes under the band translation: unary symbols act
/// as the identity and an `n`-ary symbol is the product of its arguments,
/// so the word is just the sequence of variable occurrences.
pub fn band_word(t: &Term) -> Vec<Name> {
    t.leaves()
}

/// First symbol of arity at least two; the derived band product is
/// `m(x, y) = ω(x, y, …, y)`.
pub(crate) fn product_symbol(sig: &Signature) -> Result<(Name, usize)> {
    sig.ops()
        .iter()
        .find(|op| op.arity >= 2)
        .map(|op| (op.name.clone(), op.arity))
        .ok_or_else(|| Error::InvalidVariety("band translation needs a symbol of arity at least 2".into()))
}

pub(crate) fn product(sym: &(Name, usize), a: Term, b: Term) -> Term {
    let mut args = vec![a];
    args.extend(std::iter::repeat_n(b, sym.1 - 1));
    Term::App(sym.0.clone(), args)
}
