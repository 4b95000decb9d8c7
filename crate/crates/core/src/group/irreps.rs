use std::f64::consts::PI;
use std::sync::Arc;

use super::rep::{RepKind, UnitaryRep};
use super::{BuiltinGroup, FiniteGroup};
use crate::error::{Error, Result};
use crate::linalg::{c64, max_abs_diff, tol, unitarity_residual, CMatrix, CVector, Ket, C64};

/// One irreducible representation `g ↦ D^(q)(g)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Irrep {
    pub label: String,
    pub dim: usize,
    /// Indexed by group element.
    pub matrices: Vec<CMatrix>,
}

impl Irrep {
    pub fn character(&self, g: usize) -> C64 {
        self.matrices[g].trace()
    }

    fn one_dimensional(label: &str, values: impl IntoIterator<Item = C64>) -> Self {
        Irrep {
            label: label.into(),
            dim: 1,
            matrices: values.into_iter().map(|v| CMatrix::from_element(1, 1, v)).collect(),
        }
    }
}

/// Position `(q, i, a)` of a basis vector `|q,i,a⟩`: irrep index, row index,
/// copy index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisLabel {
    pub irrep: usize,
    pub row: usize,
    pub copy: usize,
}

/// Irreducible representations of a group, validated by the homomorphism
/// property and Schur orthogonality.
#[derive(Debug, Clone)]
pub struct IrrepSet {
    group: Arc<FiniteGroup>,
    irreps: Vec<Irrep>,
    basis: Vec<BasisLabel>,
}

impl IrrepSet {
    pub fn new(group: Arc<FiniteGroup>, irreps: Vec<Irrep>) -> Result<Self> {
        Self::with_tol(group, irreps, tol::VERDICT)
    }

    pub fn with_tol(group: Arc<FiniteGroup>, irreps: Vec<Irrep>, tol: f64) -> Result<Self> {
        let n = group.order();
        for irrep in &irreps {
            let bad = |msg: String| Error::InvalidIrreps(format!("irrep `{}`: {msg}", irrep.label));
            if irrep.dim == 0 {
                return Err(bad("dimension must be positive".into()));
            }
            if irrep.matrices.len() != n {
                return Err(bad(format!("{} matrices for a group of order {n}", irrep.matrices.len())));
            }
            for (g, m) in irrep.matrices.iter().enumerate() {
                if m.shape() != (irrep.dim, irrep.dim) {
                    return Err(bad(format!("matrix for `{}` has the wrong shape", group.label(g))));
                }
                if unitarity_residual(m) > tol {
                    return Err(bad(format!("matrix for `{}` is not unitary", group.label(g))));
                }
            }
            for g in group.elements() {
                for h in group.elements() {
                    let residual =
                        max_abs_diff(&(&irrep.matrices[g] * &irrep.matrices[h]), &irrep.matrices[group.compose(g, h)]);
                    if residual > tol {
                        return Err(bad(format!(
                            "D({})D({}) != D({}∘{}) (residual {residual:.3e})",
                            group.label(g),
                            group.label(h),
                            group.label(g),
                            group.label(h)
                        )));
                    }
                }
            }
        }
        let residual = schur_residual(&irreps, n);
        if residual > tol {
            return Err(Error::InvalidIrreps(format!("Schur orthogonality fails (residual {residual:.3e})")));
        }
        let basis = irreps
            .iter()
            .enumerate()
            .flat_map(|(q, ir)| {
                (0..ir.dim).flat_map(move |row| (0..ir.dim).map(move |copy| BasisLabel { irrep: q, row, copy }))
            })
            .collect();
        Ok(Self { group, irreps, basis })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn irreps(&self) -> &[Irrep] {
        &self.irreps
    }

    pub fn dims(&self) -> Vec<usize> {
        self.irreps.iter().map(|q| q.dim).collect()
    }

    /// Ordered `(q, i, a)` labels of the block-diagonal basis.
    pub fn basis_labels(&self) -> &[BasisLabel] {
        &self.basis
    }

    pub fn is_complete(&self) -> bool {
        self.basis.len() == self.group.order()
    }

    pub fn ensure_complete(&self) -> Result<()> {
        if self.is_complete() {
            Ok(())
        } else {
            Err(Error::IncompleteIrrepSet { sum: self.basis.len(), order: self.group.order() })
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.irreps.iter().all(|q| q.dim == 1)
    }

    /// Rows indexed by irrep, columns by group element.
    pub fn character_table(&self) -> Vec<Vec<C64>> {
        self.irreps.iter().map(|q| self.group.elements().map(|g| q.character(g)).collect()).collect()
    }
}

/// Worst deviation from `(1/n)Σ_g D^q_ij(g)* D^q'_kl(g) = δ_qq' δ_ik δ_jl / n_q`.
fn schur_residual(irreps: &[Irrep], order: usize) -> f64 {
    let mut worst = 0.0f64;
    for (q, a) in irreps.iter().enumerate() {
        for (p, b) in irreps.iter().enumerate() {
            if a.dim == 0 || b.dim == 0 {
                continue;
            }
            for i in 0..a.dim {
                for j in 0..a.dim {
                    for k in 0..b.dim {
                        for l in 0..b.dim {
                            let sum: C64 =
                                (0..order).map(|g| a.matrices[g][(i, j)].conj() * b.matrices[g][(k, l)]).sum();
                            let avg = sum / order as f64;
                            let expected = if q == p && i == k && j == l { 1.0 / a.dim as f64 } else { 0.0 };
                            worst = worst.max((avg - c64(expected, 0.)).norm());
                        }
                    }
                }
            }
        }
    }
    worst
}

/// Irreps of the builtin families. Groups whose name and table do not
/// match a builtin are rejected with `UnsupportedGroup`.
pub fn builtin_irreps(group: &Arc<FiniteGroup>) -> Result<IrrepSet> {
    let unsupported = || Error::UnsupportedGroup(group.name().to_string());
    let kind: BuiltinGroup = group.name().parse().map_err(|_| unsupported())?;
    let reference = FiniteGroup::builtin(kind).map_err(|_| unsupported())?;
    if reference.table() != group.table() || reference.labels() != group.labels() {
        return Err(unsupported());
    }
    let irreps = match kind {
        BuiltinGroup::Cyclic(n) => (0..n)
            .map(|k| {
                Irrep::one_dimensional(
                    &format!("k{k}"),
                    (0..n).map(|m| root_of_unity(k * m, n)),
                )
            })
            .collect(),
        BuiltinGroup::Klein4 => {
            // elements e, x, y, z; each row is a sign character
            let rows: [(&str, [f64; 4]); 4] = [
                ("A", [1., 1., 1., 1.]),
                ("B1", [1., 1., -1., -1.]),
                ("B2", [1., -1., 1., -1.]),
                ("B3", [1., -1., -1., 1.]),
            ];
            rows.iter().map(|(l, v)| Irrep::one_dimensional(l, v.iter().map(|&x| c64(x, 0.)))).collect()
        }
        BuiltinGroup::Dihedral(n) => dihedral_irreps(n),
        BuiltinGroup::Symmetric3 => dihedral_irreps(3),
    };
    IrrepSet::new(Arc::clone(group), irreps)
}

/// `exp(2πi m/n)`, exact at multiples of a quarter turn.
fn root_of_unity(m: usize, n: usize) -> C64 {
    let m = m % n;
    match (4 * m).checked_rem(n) {
        Some(0) => [c64(1., 0.), c64(0., 1.), c64(-1., 0.), c64(0., -1.)][4 * m / n],
        _ => C64::from_polar(1.0, 2.0 * PI * m as f64 / n as f64),
    }
}

/// Elements are ordered `r^k s^m` at index `k + n·m`.
fn dihedral_irreps(n: usize) -> Vec<Irrep> {
    let elements = || (0..2 * n).map(move |x| (x % n, x / n));
    let sign = |e: usize| if e.is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut out = vec![
        Irrep::one_dimensional("A1", elements().map(|_| c64(1., 0.))),
        Irrep::one_dimensional("A2", elements().map(|(_, m)| c64(sign(m), 0.))),
    ];
    if n.is_multiple_of(2) {
        out.push(Irrep::one_dimensional("B1", elements().map(|(k, _)| c64(sign(k), 0.))));
        out.push(Irrep::one_dimensional("B2", elements().map(|(k, m)| c64(sign(k + m), 0.))));
    }
    for j in 1..=(n - 1) / 2 {
        let matrices = elements()
            .map(|(k, m)| {
                let w = root_of_unity(j * k, n);
                let (c, s) = (w.re, w.im);
                let rot = CMatrix::from_row_slice(2, 2, &[c64(c, 0.), c64(-s, 0.), c64(s, 0.), c64(c, 0.)]);
                if m == 0 {
                    rot
                } else {
                    rot * CMatrix::from_row_slice(2, 2, &[c64(1., 0.), c64(0., 0.), c64(0., 0.), c64(-1., 0.)])
                }
            })
            .collect();
        let label = if n == 3 { "E".to_string() } else { format!("E{j}") };
        out.push(Irrep { label, dim: 2, matrices });
    }
    out
}

/// `|g⟩ = Σ_{q,i,a} √(n_q/n_G) D^(q)_{i,a}(g) |q,i,a⟩` in the ordered
/// `(q, i, a)` basis.
pub fn reference_state(irreps: &IrrepSet, g: usize) -> Result<Ket> {
    irreps.ensure_complete()?;
    let n = irreps.group.order() as f64;
    let amps = CVector::from_iterator(
        irreps.basis.len(),
        irreps.basis.iter().map(|b| {
            let q = &irreps.irreps[b.irrep];
            q.matrices[g][(b.row, b.copy)] * (q.dim as f64 / n).sqrt()
        }),
    );
    Ket::new(amps)
}

/// The regular representation in the `(q, i, a)` basis: block diagonal
/// with `n_q` copies of each `D^(q)`.
pub fn rep_in_irrep_basis(irreps: &IrrepSet) -> Result<UnitaryRep> {
    irreps.ensure_complete()?;
    let dim = irreps.basis.len();
    let matrices = irreps
        .group
        .elements()
        .map(|g| {
            let mut m = CMatrix::zeros(dim, dim);
            let mut offset = 0;
            for q in &irreps.irreps {
                let block = &q.matrices[g];
                for a in 0..q.dim {
                    for k in 0..q.dim {
                        for j in 0..q.dim {
                            m[(offset + k * q.dim + a, offset + j * q.dim + a)] = block[(k, j)];
                        }
                    }
                }
                offset += q.dim * q.dim;
            }
            m
        })
        .collect();
    Ok(UnitaryRep::from_parts(Arc::clone(&irreps.group), matrices, RepKind::Ordinary))
}

/// A representation together with a covariant orthonormal set of reference
/// states, `T_{g'}|g⟩ = |g'∘g⟩`.
#[derive(Debug, Clone)]
pub struct ReferenceFrame {
    rep: UnitaryRep,
    states: Vec<Ket>,
}

impl ReferenceFrame {
    /// Reference states in the block-diagonal irrep basis.
    pub fn from_irreps(irreps: &IrrepSet) -> Result<Self> {
        let rep = rep_in_irrep_basis(irreps)?;
        let states = irreps.group.elements().map(|g| reference_state(irreps, g)).collect::<Result<_>>()?;
        Ok(Self { rep, states })
    }

    /// Reference states for an existing representation. Works when `rep` is
    /// the regular representation either in the irrep basis or as
    /// permutation matrices; anything else, including every projective
    /// representation, is refused.
    pub fn for_rep(rep: &UnitaryRep, irreps: &IrrepSet) -> Result<Self> {
        let undefined = |why: &str| Error::ReferenceStateUndefined(why.to_string());
        if !rep.is_ordinary() {
            return Err(undefined("the representation is projective"));
        }
        if rep.group().table() != irreps.group().table() {
            return Err(undefined("the representation and irreps belong to different groups"));
        }
        let order = rep.group().order();
        if rep.dim() != order {
            return Err(undefined(&format!("dimension {} differs from the group order {order}", rep.dim())));
        }
        let candidates = [
            Self::from_irreps(irreps)?.states,
            (0..order).map(|g| Ket::basis(order, g)).collect::<Result<Vec<_>>>()?,
        ];
        for states in candidates {
            let frame = Self { rep: rep.clone(), states };
            if frame.covariance_residual() <= tol::VERDICT {
                return Ok(frame);
            }
        }
        Err(undefined("the representation is not the regular representation in a supported basis"))
    }

    pub fn rep(&self) -> &UnitaryRep {
        &self.rep
    }

    pub fn state(&self, g: usize) -> &Ket {
        &self.states[g]
    }

    pub fn states(&self) -> &[Ket] {
        &self.states
    }

    /// Columns are the reference states.
    pub fn matrix(&self) -> CMatrix {
        let n = self.states.len();
        CMatrix::from_fn(self.rep.dim(), n, |i, g| self.states[g].amplitudes()[i])
    }

    /// `Σ_g |g⟩ / √n_G`.
    pub fn uniform_superposition(&self) -> Ket {
        let sum = self.states.iter().fold(CVector::zeros(self.rep.dim()), |acc, s| acc + s.amplitudes());
        Ket::normalized(sum).expect("reference states are orthonormal")
    }

    /// Worst `|T_{g'}|g⟩ - |g'∘g⟩|` over all pairs.
    pub fn covariance_residual(&self) -> f64 {
        let group = self.rep.group();
        let mut worst = 0.0f64;
        for gp in group.elements() {
            for g in group.elements() {
                let moved = self.rep.matrix(gp) * self.states[g].amplitudes();
                let target = self.states[group.compose(gp, g)].amplitudes();
                worst = worst.max((moved - target).camax());
            }
        }
        worst
    }

    /// Worst `|⟨g|g'⟩ - δ|`.
    pub fn gram_residual(&self) -> f64 {
        let m = self.matrix();
        max_abs_diff(&(m.adjoint() * &m), &CMatrix::identity(self.states.len(), self.states.len()))
    }
}
