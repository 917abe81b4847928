//! Built-in rigs, rings, groups and theories, addressed as `kind:name`.

use std::collections::BTreeSet;

use commutant_core::ring::{FinAbGroup, FinRing};
use commutant_core::theory::projections_theory;
use commutant_core::{full_theory, Limits, OpTable, Rig, Slice, Theory};

use crate::error::{CliError, CliResult};

pub const THEORY_KINDS: [&str; 5] = ["mat", "mat_aff", "pointed", "full", "projections"];

/// The registry. In test mode some entries can be deliberately corrupted to
/// check that the example suite notices.
#[derive(Clone, Debug, Default)]
pub struct Registry {
    corrupt: BTreeSet<String>,
}

fn unknown(kind: &str, name: &str) -> CliError {
    CliError::parse(&format!("{kind}:{name}"), "unknown builtin")
}

/// Splits `kind:name`, mapping `pointed_mod` to `pointed`.
pub fn split_key(key: &str) -> CliResult<(&str, &str)> {
    let (kind, name) = key
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("builtin `{key}` is not of the form kind:name")))?;
    Ok((if kind == "pointed_mod" { "pointed" } else { kind }, name))
}

impl Registry {
    pub fn new() -> Self {
        Registry::default()
    }

    /// A registry whose entries named by `keys` are corrupted.
    pub fn with_corruption<I: IntoIterator<Item = String>>(keys: I) -> CliResult<Self> {
        let mut corrupt = BTreeSet::new();
        for key in keys {
            let (kind, name) = split_key(&key)?;
            if !THEORY_KINDS.contains(&kind) {
                return Err(CliError::Usage(format!("only theory builtins can be corrupted, not `{key}`")));
            }
            corrupt.insert(format!("{kind}:{name}"));
        }
        Ok(Registry { corrupt })
    }

    pub fn rig(&self, name: &str) -> CliResult<Rig> {
        Rig::builtin(name).ok_or_else(|| unknown("rig", name))
    }

    pub fn ring(&self, name: &str) -> CliResult<FinRing> {
        FinRing::builtin(name).ok_or_else(|| unknown("ring", name))
    }

    pub fn group(&self, name: &str) -> CliResult<FinAbGroup> {
        FinAbGroup::builtin(name).ok_or_else(|| unknown("group", name))
    }

    /// A theory builtin such as `mat:Z4`, `full:2` or `projections:3`.
    pub fn theory(&self, key: &str, max_arity: usize) -> CliResult<Theory> {
        let (kind, name) = split_key(key)?;
        let size = || name.parse::<usize>().map_err(|_| unknown(kind, name));
        let theory = match kind {
            "mat" => self.rig(name)?.mat_theory(max_arity)?,
            "mat_aff" => self.rig(name)?.mat_aff_theory(max_arity)?,
            "pointed" => self.rig(name)?.pointed_mod_theory(max_arity)?,
            "full" => full_theory(size()?, max_arity)?,
            "projections" => projections_theory(size()?, max_arity)?,
            _ => return Err(unknown(kind, name)),
        };
        if self.corrupt.contains(&format!("{kind}:{name}")) {
            return Ok(corrupt(&theory)?);
        }
        Ok(theory)
    }
}

/// Drops the last non-projection operation of the highest arity that has one.
fn corrupt(t: &Theory) -> commutant_core::Result<Theory> {
    let lim = Limits::default();
    let mut slices: Vec<Vec<OpTable>> = Vec::new();
    for n in 0..=t.max_arity() {
        slices.push(t.ops(n, &lim)?.into_owned());
    }
    let mut dropped = None;
    for slice in slices.iter_mut().rev() {
        if let Some(pos) = slice.iter().rposition(|op| !op.is_projection()) {
            dropped = Some(slice.remove(pos));
            break;
        }
    }
    let generators = t
        .generators()
        .map(|g| g.iter().filter(|op| Some(*op) != dropped.as_ref()).cloned().collect());
    let list = slices.into_iter().map(Slice::Ops).collect();
    Theory::from_slice_list(t.carrier().clone(), t.max_arity(), list, generators)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_theories() {
        let r = Registry::new();
        assert_eq!(r.theory("mat:bool2", 3).unwrap().arity_counts(), [1, 2, 4, 8]);
        assert_eq!(r.theory("full:2", 2).unwrap().arity_counts(), [2, 4, 16]);
        assert_eq!(r.theory("pointed_mod:bool2", 1).unwrap().arity_counts(), [2, 3]);
        assert!(r.theory("mat:Q", 2).is_err());
        assert!(r.theory("mat", 2).is_err());
        assert!(r.theory("nope:2", 2).is_err());
    }

    #[test]
    fn corruption_drops_one_operation() {
        let r = Registry::with_corruption(["mat:bool2".to_string()]).unwrap();
        assert_eq!(r.theory("mat:bool2", 3).unwrap().arity_counts(), [1, 2, 4, 7]);
        assert_eq!(r.theory("mat:Z2", 3).unwrap().arity_counts(), [1, 2, 4, 8]);
        assert!(Registry::with_corruption(["ring:F4".to_string()]).is_err());
    }
}
