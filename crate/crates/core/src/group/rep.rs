use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::{BuiltinGroup, FiniteGroup};
use crate::error::{Error, Result};
use crate::linalg::{c64, hs_inner, identity, max_abs_diff, pauli_x, pauli_y, pauli_z, tol, unitarity_residual, CMatrix, C64};

/// Phases `ω(g,h)` with `T_g T_h = ω(g,h) T_{g∘h}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cocycle(Vec<Vec<C64>>);

impl Cocycle {
    pub fn get(&self, g: usize, h: usize) -> C64 {
        self.0[g][h]
    }

    pub fn rows(&self) -> &[Vec<C64>] {
        &self.0
    }

    pub fn is_trivial(&self, tol: f64) -> bool {
        self.0.iter().flatten().all(|w| (w - c64(1., 0.)).norm() <= tol)
    }

    /// Elementwise power, the cocycle of an `n`-fold tensor power.
    pub fn pow(&self, n: usize) -> Cocycle {
        Cocycle(self.0.iter().map(|row| row.iter().map(|w| w.powu(n as u32)).collect()).collect())
    }

    /// Worst residual of `ω(g,h)ω(g∘h,k) = ω(h,k)ω(g,h∘k)` over all triples.
    pub fn identity_residual(&self, group: &FiniteGroup) -> f64 {
        let mut worst = 0.0f64;
        for g in group.elements() {
            for h in group.elements() {
                for k in group.elements() {
                    let lhs = self.get(g, h) * self.get(group.compose(g, h), k);
                    let rhs = self.get(h, k) * self.get(g, group.compose(h, k));
                    worst = worst.max((lhs - rhs).norm());
                }
            }
        }
        worst
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RepKind {
    Ordinary,
    Projective(Cocycle),
}

/// Why a set of matrices fails to represent the group.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RepViolation {
    WrongCount { expected: usize, found: usize },
    BadShape { element: String, rows: usize, cols: usize },
    NotUnitary { element: String, residual: f64 },
    /// `T_g T_h` is not a unit multiple of `T_{g∘h}`.
    Composition { g: String, h: String, residual: f64 },
}

impl fmt::Display for RepViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepViolation::WrongCount { expected, found } => write!(f, "expected {expected} matrices, found {found}"),
            RepViolation::BadShape { element, rows, cols } => {
                write!(f, "matrix for `{element}` has shape {rows}x{cols}")
            }
            RepViolation::NotUnitary { element, residual } => {
                write!(f, "matrix for `{element}` is not unitary (residual {residual:.3e})")
            }
            RepViolation::Composition { g, h, residual } => {
                write!(f, "T({g})T({h}) is not a phase times T({g}∘{h}) (residual {residual:.3e})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RepClassification {
    Ordinary,
    Projective(Cocycle),
    Invalid(RepViolation),
}

/// Classifies `matrices` (indexed by group element) as an ordinary or
/// projective unitary representation, extracting the cocycle phases.
pub fn validate_representation(group: &FiniteGroup, matrices: &[CMatrix], tol: f64) -> RepClassification {
    let n = group.order();
    if matrices.len() != n {
        return RepClassification::Invalid(RepViolation::WrongCount { expected: n, found: matrices.len() });
    }
    let dim = matrices[0].nrows();
    for (g, m) in matrices.iter().enumerate() {
        if m.nrows() != dim || m.ncols() != dim || dim == 0 {
            return RepClassification::Invalid(RepViolation::BadShape {
                element: group.label(g).into(),
                rows: m.nrows(),
                cols: m.ncols(),
            });
        }
        let residual = unitarity_residual(m);
        if residual > tol {
            return RepClassification::Invalid(RepViolation::NotUnitary { element: group.label(g).into(), residual });
        }
    }
    let mut omega = vec![vec![c64(1., 0.); n]; n];
    for g in 0..n {
        for h in 0..n {
            let gh = group.compose(g, h);
            let product = &matrices[g] * &matrices[h];
            let w = hs_inner(&matrices[gh], &product) / dim as f64;
            let residual = max_abs_diff(&product, &matrices[gh].map(|z| z * w));
            if residual > tol || (w.norm() - 1.0).abs() > tol {
                return RepClassification::Invalid(RepViolation::Composition {
                    g: group.label(g).into(),
                    h: group.label(h).into(),
                    residual: residual.max((w.norm() - 1.0).abs()),
                });
            }
            omega[g][h] = w / w.norm();
        }
    }
    let cocycle = Cocycle(omega);
    if cocycle.is_trivial(tol) {
        RepClassification::Ordinary
    } else {
        RepClassification::Projective(cocycle)
    }
}

/// Unitary (possibly projective) representation `g ↦ T_g`.
#[derive(Debug, Clone)]
pub struct UnitaryRep {
    group: Arc<FiniteGroup>,
    dim: usize,
    matrices: Vec<CMatrix>,
    kind: RepKind,
}

impl UnitaryRep {
    pub fn new(group: Arc<FiniteGroup>, matrices: Vec<CMatrix>) -> Result<Self> {
        Self::with_tol(group, matrices, tol::VERDICT)
    }

    pub fn with_tol(group: Arc<FiniteGroup>, matrices: Vec<CMatrix>, tol: f64) -> Result<Self> {
        let kind = match validate_representation(&group, &matrices, tol) {
            RepClassification::Ordinary => RepKind::Ordinary,
            RepClassification::Projective(c) => RepKind::Projective(c),
            RepClassification::Invalid(v) => return Err(Error::InvalidRepresentation(v.to_string())),
        };
        let dim = matrices[0].nrows();
        Ok(Self { group, dim, matrices, kind })
    }

    /// Assembles a representation whose classification is known by construction.
    pub(crate) fn from_parts(group: Arc<FiniteGroup>, matrices: Vec<CMatrix>, kind: RepKind) -> Self {
        let dim = matrices[0].nrows();
        Self { group, dim, matrices, kind }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, g: usize) -> &CMatrix {
        &self.matrices[g]
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.matrices
    }

    pub fn kind(&self) -> &RepKind {
        &self.kind
    }

    pub fn is_ordinary(&self) -> bool {
        matches!(self.kind, RepKind::Ordinary)
    }

    /// `χ(g) = Tr T_g`.
    pub fn character(&self, g: usize) -> C64 {
        self.matrices[g].trace()
    }

    pub(crate) fn ensure_dim(&self, dim: usize) -> Result<()> {
        if dim == self.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.dim, found: dim })
        }
    }
}

/// Left-regular representation: `T_g` permutes basis vectors `|h⟩ ↦ |g∘h⟩`.
pub fn regular_representation(group: &Arc<FiniteGroup>) -> UnitaryRep {
    let n = group.order();
    let matrices = group
        .elements()
        .map(|g| {
            let mut m = CMatrix::zeros(n, n);
            for h in 0..n {
                m[(group.compose(g, h), h)] = c64(1., 0.);
            }
            m
        })
        .collect();
    UnitaryRep::from_parts(Arc::clone(group), matrices, RepKind::Ordinary)
}

/// `{I, σx}` for the path-interchange group `cyclic:2`; this is its
/// regular representation.
pub fn path_interchange_representation() -> UnitaryRep {
    let group = Arc::new(FiniteGroup::builtin(BuiltinGroup::Cyclic(2)).expect("cyclic:2 is valid"));
    UnitaryRep::from_parts(group, vec![identity(2), pauli_x()], RepKind::Ordinary)
}

/// `klein4 → {I, σx, σy, σz}` on a qubit; projective since `σxσy = iσz`.
pub fn pauli_representation() -> UnitaryRep {
    let group = Arc::new(FiniteGroup::builtin(BuiltinGroup::Klein4).expect("klein4 is valid"));
    UnitaryRep::new(group, vec![identity(2), pauli_x(), pauli_y(), pauli_z()])
        .expect("Pauli matrices close up to phases")
}
