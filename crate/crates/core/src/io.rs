//! JSON file formats. Complex numbers are `[re, im]` pairs; matrices are
//! arrays of rows.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Irrep, IrrepSet, UnitaryRep};
use crate::info::{Ensemble, EnsembleMember, Povm, PovmElement};
use crate::linalg::{c64, CMatrix, CVector, DensityOperator, Ket, C64};

pub type ComplexPair = [f64; 2];
pub type MatrixJson = Vec<Vec<ComplexPair>>;

/// Rounds to 12 significant decimal digits.
pub fn round_sig12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if rounded == 0.0 {
        0.0
    } else {
        rounded
    }
}

pub fn serialize_sig12<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(round_sig12(*x))
}

pub fn serialize_sig12_vec<S: Serializer>(v: &[f64], s: S) -> std::result::Result<S::Ok, S::Error> {
    v.iter().map(|x| round_sig12(*x)).collect::<Vec<_>>().serialize(s)
}

pub fn serialize_sig12_table<S: Serializer>(v: &[Vec<f64>], s: S) -> std::result::Result<S::Ok, S::Error> {
    v.iter().map(|row| row.iter().map(|x| round_sig12(*x)).collect::<Vec<_>>()).collect::<Vec<_>>().serialize(s)
}

pub(crate) fn serialize_complex_vec<S: Serializer>(v: &[C64], s: S) -> std::result::Result<S::Ok, S::Error> {
    v.iter().map(complex_to_json).collect::<Vec<_>>().serialize(s)
}

pub(crate) fn serialize_complex_vec_opt<S: Serializer>(
    v: &Option<Vec<C64>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    v.as_ref().map(|v| v.iter().map(complex_to_json).collect::<Vec<_>>()).serialize(s)
}

pub fn complex_to_json(z: &C64) -> ComplexPair {
    [round_sig12(z.re), round_sig12(z.im)]
}

pub fn complex_from_json(p: &ComplexPair) -> C64 {
    c64(p[0], p[1])
}

pub fn matrix_to_json(m: &CMatrix) -> MatrixJson {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| complex_to_json(&m[(i, j)])).collect()).collect()
}

pub fn matrix_from_json(rows: &MatrixJson) -> Result<CMatrix> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    if nrows == 0 || ncols == 0 {
        return Err(Error::BadParameter("matrix must be non-empty".into()));
    }
    if let Some(i) = rows.iter().position(|r| r.len() != ncols) {
        return Err(Error::BadParameter(format!("row {i} has {} entries, expected {ncols}", rows[i].len())));
    }
    Ok(CMatrix::from_fn(nrows, ncols, |i, j| complex_from_json(&rows[i][j])))
}

pub fn vector_to_json(v: &CVector) -> Vec<ComplexPair> {
    v.iter().map(complex_to_json).collect()
}

/// `{"name", "elements", "table"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub name: String,
    pub elements: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

impl GroupFile {
    pub fn from_group(g: &FiniteGroup) -> Self {
        Self { name: g.name().into(), elements: g.labels().to_vec(), table: g.table().to_vec() }
    }

    pub fn into_group(self) -> Result<FiniteGroup> {
        FiniteGroup::new(self.name, self.elements, self.table)
    }
}

/// `{"group", "dim", "matrices": {label: matrix}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepFile {
    pub group: String,
    pub dim: usize,
    pub matrices: BTreeMap<String, MatrixJson>,
}

impl RepFile {
    pub fn from_rep(rep: &UnitaryRep) -> Self {
        let g = rep.group();
        Self {
            group: g.name().into(),
            dim: rep.dim(),
            matrices: g.elements().map(|x| (g.label(x).to_string(), matrix_to_json(rep.matrix(x)))).collect(),
        }
    }

    /// Matrices ordered by group element, without representation checks.
    pub fn matrices_for(&self, group: &FiniteGroup) -> Result<Vec<CMatrix>> {
        if self.group != group.name() {
            return Err(Error::InvalidRepresentation(format!(
                "file is for group `{}` but the group is `{}`",
                self.group,
                group.name()
            )));
        }
        if let Some(extra) = self.matrices.keys().find(|k| group.index_of(k).is_err()) {
            return Err(Error::UnknownElement(extra.clone()));
        }
        group
            .labels()
            .iter()
            .map(|l| {
                let m = self
                    .matrices
                    .get(l)
                    .ok_or_else(|| Error::InvalidRepresentation(format!("no matrix for element `{l}`")))?;
                let m = matrix_from_json(m)?;
                if m.shape() != (self.dim, self.dim) {
                    return Err(Error::InvalidRepresentation(format!(
                        "matrix for `{l}` is {}x{}, declared dimension {}",
                        m.nrows(),
                        m.ncols(),
                        self.dim
                    )));
                }
                Ok(m)
            })
            .collect()
    }

    pub fn into_rep(self, group: Arc<FiniteGroup>, tol: f64) -> Result<UnitaryRep> {
        let matrices = self.matrices_for(&group)?;
        UnitaryRep::with_tol(group, matrices, tol)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IrrepFile {
    pub label: String,
    pub dim: usize,
    pub matrices: BTreeMap<String, MatrixJson>,
}

/// `{"group", "irreps": [{"label", "dim", "matrices"}]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IrrepSetFile {
    pub group: String,
    pub irreps: Vec<IrrepFile>,
}

impl IrrepSetFile {
    pub fn from_irreps(set: &IrrepSet) -> Self {
        let g = set.group();
        Self {
            group: g.name().into(),
            irreps: set
                .irreps()
                .iter()
                .map(|q| IrrepFile {
                    label: q.label.clone(),
                    dim: q.dim,
                    matrices: g.elements().map(|x| (g.label(x).to_string(), matrix_to_json(&q.matrices[x]))).collect(),
                })
                .collect(),
        }
    }

    pub fn into_irreps(self, group: Arc<FiniteGroup>, tol: f64) -> Result<IrrepSet> {
        if self.group != group.name() {
            return Err(Error::InvalidIrreps(format!(
                "file is for group `{}` but the group is `{}`",
                self.group,
                group.name()
            )));
        }
        let irreps = self
            .irreps
            .into_iter()
            .map(|q| {
                let as_rep = RepFile { group: self.group.clone(), dim: q.dim, matrices: q.matrices };
                let matrices =
                    as_rep.matrices_for(&group).map_err(|e| Error::InvalidIrreps(format!("irrep `{}`: {e}", q.label)))?;
                Ok(Irrep { label: q.label, dim: q.dim, matrices })
            })
            .collect::<Result<Vec<_>>>()?;
        IrrepSet::with_tol(group, irreps, tol)
    }
}

/// Either `{"ket": [amplitudes]}` or `{"density": matrix}`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ket: Option<Vec<ComplexPair>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub density: Option<MatrixJson>,
}

impl StateFile {
    pub fn from_ket(k: &Ket) -> Self {
        Self { ket: Some(vector_to_json(k.amplitudes())), density: None }
    }

    pub fn from_density(rho: &DensityOperator) -> Self {
        Self { ket: None, density: Some(matrix_to_json(rho.matrix())) }
    }

    /// Kets are projected onto density operators.
    pub fn into_density(self, tol: f64) -> Result<DensityOperator> {
        match (self.ket, self.density) {
            (Some(amps), None) => {
                let v = CVector::from_iterator(amps.len(), amps.iter().map(complex_from_json));
                Ok(Ket::with_tol(v, tol)?.density())
            }
            (None, Some(m)) => DensityOperator::with_tol(matrix_from_json(&m)?, tol),
            _ => Err(Error::BadParameter("state file needs exactly one of `ket` or `density`".into())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnsembleMemberFile {
    pub label: String,
    pub probability: f64,
    pub density: MatrixJson,
}

/// `{"members": [{"label", "probability", "density"}]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnsembleFile {
    pub members: Vec<EnsembleMemberFile>,
}

impl EnsembleFile {
    pub fn from_ensemble(e: &Ensemble) -> Self {
        Self {
            members: e
                .members()
                .iter()
                .map(|m| EnsembleMemberFile {
                    label: m.label.clone(),
                    probability: round_sig12(m.probability),
                    density: matrix_to_json(m.state.matrix()),
                })
                .collect(),
        }
    }

    pub fn into_ensemble(self, tol: f64) -> Result<Ensemble> {
        let members = self
            .members
            .into_iter()
            .map(|m| {
                Ok(EnsembleMember {
                    label: m.label,
                    probability: m.probability,
                    state: DensityOperator::with_tol(matrix_from_json(&m.density)?, tol)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ensemble::new(members)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PovmElementFile {
    pub label: String,
    pub effect: MatrixJson,
}

/// `{"elements": [{"label", "effect"}]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PovmFile {
    pub elements: Vec<PovmElementFile>,
}

impl PovmFile {
    pub fn from_povm(p: &Povm) -> Self {
        Self {
            elements: p
                .elements()
                .iter()
                .map(|e| PovmElementFile { label: e.label.clone(), effect: matrix_to_json(&e.effect) })
                .collect(),
        }
    }

    pub fn into_povm(self, tol: f64) -> Result<Povm> {
        let elements = self
            .elements
            .into_iter()
            .map(|e| Ok(PovmElement { label: e.label, effect: matrix_from_json(&e.effect)? }))
            .collect::<Result<Vec<_>>>()?;
        Povm::with_tol(elements, tol)
    }
}
