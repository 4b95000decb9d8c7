//! Resolving command-line specs to groups, representations and states.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use wavicle::io::{GroupFile, IrrepSetFile, RepFile, StateFile};
use wavicle::{
    builtin_irreps, pauli_representation, regular_representation, rep_in_irrep_basis, BuiltinGroup, DensityOperator,
    FiniteGroup, IrrepSet, UnitaryRep,
};

use crate::error::{CliError, CliResult};

/// A value that is either a builtin name or a file path.
pub enum Source<T> {
    Builtin(T),
    File(PathBuf),
}

/// Builtin names and file paths may not coincide.
pub fn resolve<T>(value: &str, what: &str, parse: impl Fn(&str) -> Option<T>) -> CliResult<Source<T>> {
    let path = Path::new(value);
    match (parse(value), path.is_file()) {
        (Some(_), true) => Err(CliError::Ambiguous(value.to_string())),
        (Some(b), false) => Ok(Source::Builtin(b)),
        (None, true) => Ok(Source::File(path.to_path_buf())),
        (None, false) => Err(CliError::Usage(format!("`{value}` is neither a builtin {what} nor an existing file"))),
    }
}

/// Byte offset of a 1-based line and column.
pub fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    let line_start: usize = text.split_inclusive('\n').take(line.saturating_sub(1)).map(str::len).sum();
    (line_start + column.saturating_sub(1)).min(text.len())
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let display = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: display.clone(), source })?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse {
        offset: byte_offset(&text, e.line(), e.column()),
        path: display,
        message: e.to_string(),
    })
}

pub fn load_group(spec: &str) -> CliResult<Arc<FiniteGroup>> {
    let group = match resolve(spec, "group", |s| s.parse::<BuiltinGroup>().ok())? {
        Source::Builtin(kind) => FiniteGroup::builtin(kind)?,
        Source::File(path) => read_json::<GroupFile>(&path)?.into_group()?,
    };
    Ok(Arc::new(group))
}

/// Explicit irreps from a file, else the builtin set when one exists.
pub fn load_irreps(group: &Arc<FiniteGroup>, path: Option<&str>, tol: f64) -> CliResult<Option<IrrepSet>> {
    match path {
        Some(p) => Ok(Some(read_json::<IrrepSetFile>(Path::new(p))?.into_irreps(Arc::clone(group), tol)?)),
        None => match builtin_irreps(group) {
            Ok(set) => Ok(Some(set)),
            Err(wavicle::Error::UnsupportedGroup(_)) => Ok(None),
            Err(e) => Err(e.into()),
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinRep {
    /// Permutation matrices of left multiplication.
    Regular,
    /// The regular representation block-diagonalized by the irreps.
    IrrepBasis,
    /// `{I, σx, σy, σz}` for klein4, projective.
    Pauli,
}

impl FromStr for BuiltinRep {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "regular" => Ok(BuiltinRep::Regular),
            "irrep-basis" => Ok(BuiltinRep::IrrepBasis),
            "pauli" => Ok(BuiltinRep::Pauli),
            _ => Err(()),
        }
    }
}

impl fmt::Display for BuiltinRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BuiltinRep::Regular => "regular",
            BuiltinRep::IrrepBasis => "irrep-basis",
            BuiltinRep::Pauli => "pauli",
        })
    }
}

/// `spec` is `regular` (default), `irrep-basis`, `pauli` or a rep file.
pub fn load_rep(
    group: &Arc<FiniteGroup>,
    spec: Option<&str>,
    irreps: Option<&IrrepSet>,
    tol: f64,
) -> CliResult<UnitaryRep> {
    let source = match spec {
        None => Source::Builtin(BuiltinRep::Regular),
        Some(s) => resolve(s, "representation", |v| v.parse::<BuiltinRep>().ok())?,
    };
    match source {
        Source::Builtin(BuiltinRep::Regular) => Ok(regular_representation(group)),
        Source::Builtin(BuiltinRep::IrrepBasis) => {
            let set = irreps.ok_or_else(|| {
                CliError::Usage(format!("group `{}` has no builtin irreps; pass --irreps", group.name()))
            })?;
            Ok(rep_in_irrep_basis(set)?)
        }
        Source::Builtin(BuiltinRep::Pauli) => {
            let rep = pauli_representation();
            if rep.group().table() != group.table() || rep.group().labels() != group.labels() {
                return Err(CliError::Usage("the pauli representation needs --group klein4".into()));
            }
            Ok(rep)
        }
        Source::File(path) => Ok(read_json::<RepFile>(&path)?.into_rep(Arc::clone(group), tol)?),
    }
}

/// `spec` is a state file or one of the names accepted by `named`.
pub fn load_state(
    spec: &str,
    tol: f64,
    named: impl Fn(&str) -> Option<DensityOperator>,
) -> CliResult<DensityOperator> {
    match resolve(spec, "state", named)? {
        Source::Builtin(rho) => Ok(rho),
        Source::File(path) => Ok(read_json::<StateFile>(&path)?.into_density(tol)?),
    }
}

/// Comma-separated probabilities.
pub fn parse_priors(text: &str) -> CliResult<Vec<f64>> {
    text.split(',')
        .map(|x| {
            x.trim().parse::<f64>().map_err(|e| CliError::Usage(format!("bad prior `{}`: {e}", x.trim())))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn offsets() {
        let text = "{\n  \"a\": 1,\n  x\n}";
        assert_eq!(byte_offset(text, 1, 1), 0);
        assert_eq!(byte_offset(text, 3, 3), 14);
        assert_eq!(&text[14..15], "x");
        assert_eq!(byte_offset(text, 9, 9), text.len());
    }

    #[test]
    fn priors() {
        assert_eq!(parse_priors("0.5, 0.5,0,0").unwrap(), vec![0.5, 0.5, 0.0, 0.0]);
        assert!(parse_priors("0.5,a").is_err());
    }
}
