//! Resolving algebra and variety arguments.

use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use malcev::congruence::DEFAULT_GUARD;
use malcev::fixtures;
use malcev::term::{parse_identity_file, split_identity_file};
use malcev::{preset, Decision, FiniteAlgebra, Identity, Signature, VarietySpec};

/// A path to an algebra file if one exists there, otherwise a builtin name.
pub fn algebra(arg: &str) -> Result<FiniteAlgebra> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
        return FiniteAlgebra::parse(&text).with_context(|| format!("parsing {arg}"));
    }
    fixtures::by_name(arg).ok_or_else(|| anyhow!("`{arg}` is neither a file nor a builtin algebra"))
}

/// A preset name, or a path to an identity file. Identity files give a
/// base only; `generated_by` attaches evaluation in that algebra as the
/// decision. `sig` is used when the file declares no `op` lines.
pub fn variety(arg: &str, sig: Option<&Signature>, generated_by: Option<&str>) -> Result<VarietySpec> {
    let path = Path::new(arg);
    let spec = if path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
        let fallback = sig.cloned().unwrap_or_else(fixtures::groupoid_sig);
        let (sig, base) = parse_ids(&text, &fallback).with_context(|| format!("parsing {arg}"))?;
        let name = path.file_stem().map_or(arg.into(), |s| s.to_string_lossy().into_owned());
        VarietySpec::from_base(name, sig, base)?
    } else {
        if generated_by.is_some() {
            bail!("--generated-by applies to identity files, not to the preset `{arg}`");
        }
        return preset(arg).map_err(Into::into);
    };
    match generated_by {
        None => Ok(spec),
        Some(g) => {
            let alg = algebra(g)?;
            if alg.signature() != spec.signature() {
                bail!("generating algebra `{g}` has a different signature than `{}`", spec.name());
            }
            let idempotent = alg.idempotent_elements().len() == alg.size();
            let base = spec.base()?.to_vec();
            for id in &base {
                if let Some(cex) = alg.counterexample(id)? {
                    let env: Vec<String> = cex.iter().map(|(v, e)| format!("{v}={e}")).collect();
                    bail!("generating algebra `{g}` violates `{id}` at {}", env.join(", "));
                }
            }
            Ok(spec
                .with_decision(Decision::FinGenerated(Arc::new(alg)))?
                .with_idempotent(idempotent)?)
        }
    }
}

/// The congruence enumeration guard, overridable through `MALCEV_GUARD`.
pub fn guard() -> Result<usize> {
    match std::env::var("MALCEV_GUARD") {
        Ok(v) => v.trim().parse().map_err(|_| anyhow!("MALCEV_GUARD must be a number, got `{v}`")),
        Err(_) => Ok(DEFAULT_GUARD),
    }
}

/// Reads an identity file whose signature comes from the file or, failing
/// that, from `sig`.
pub fn identities(path: &str, sig: &Signature) -> Result<Vec<Identity>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    Ok(parse_ids(&text, sig).with_context(|| format!("parsing {path}"))?.1)
}

fn parse_ids(text: &str, fallback: &Signature) -> malcev::Result<(Signature, Vec<Identity>)> {
    match split_identity_file(text)?.0 {
        Some(_) => parse_identity_file(text, None),
        None => parse_identity_file(text, Some(fallback)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_names_and_presets() {
        assert_eq!(algebra("a4").unwrap(), fixtures::groupoid_a4());
        assert!(algebra("Z7").is_err());
        assert_eq!(variety("LZ", None, None).unwrap().name(), "LZ");
        assert!(variety("LZ", None, Some("LZ2")).is_err());
    }

    #[test]
    fn identity_file_signature_wins() {
        let ids = "op u 1\n(u x) = x\n";
        let (sig, base) = parse_ids(ids, &fixtures::groupoid_sig()).unwrap();
        assert_eq!(sig, fixtures::monounary_sig());
        assert_eq!(base.len(), 1);
        assert!(parse_ids("(u x) = x\n", &fixtures::groupoid_sig()).is_err());
    }
}
