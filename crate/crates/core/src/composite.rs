//! Collective group actions `T_g ⊗ ... ⊗ T_g` on several copies of a system.

use crate::error::{Error, Result};
use crate::group::{ReferenceFrame, RepKind, UnitaryRep};
use crate::info::{capacity_report, CapacityReport, SearchConfig};
use crate::linalg::{tensor_power, tensor_product, CMatrix, DensityOperator, Ket, C64};

/// Largest total dimension `Dⁿ` accepted by [`global_representation`].
pub const DIMENSION_CAP: usize = 1024;

/// The `n`-fold tensor-power representation of a base representation.
#[derive(Debug, Clone)]
pub struct GlobalRep {
    base: UnitaryRep,
    copies: usize,
    rep: UnitaryRep,
}

impl GlobalRep {
    pub fn base(&self) -> &UnitaryRep {
        &self.base
    }

    pub fn copies(&self) -> usize {
        self.copies
    }

    /// The collective action as a representation on `Dⁿ` dimensions.
    pub fn rep(&self) -> &UnitaryRep {
        &self.rep
    }

    pub fn dim(&self) -> usize {
        self.rep.dim()
    }
}

/// `T_g^(n) = T_g^{⊗n}`. A projective base with cocycle `ω` gives cocycle `ωⁿ`.
pub fn global_representation(rep: &UnitaryRep, n: usize) -> Result<GlobalRep> {
    if n == 0 {
        return Err(Error::BadParameter("number of copies must be at least 1".into()));
    }
    let dim = rep.dim().saturating_pow(u32::try_from(n).unwrap_or(u32::MAX));
    if dim > DIMENSION_CAP {
        return Err(Error::DimensionCapExceeded { dim, cap: DIMENSION_CAP });
    }
    let matrices = rep.matrices().iter().map(|t| tensor_power(t, n)).collect();
    let kind = match rep.kind() {
        RepKind::Ordinary => RepKind::Ordinary,
        RepKind::Projective(omega) => RepKind::Projective(omega.pow(n)),
    };
    let global = UnitaryRep::from_parts(rep.group().clone(), matrices, kind);
    Ok(GlobalRep { base: rep.clone(), copies: n, rep: global })
}

/// Capacity report of a state on `n` copies under the collective action. The
/// budget is `n·log₂D - S(ρ)`.
pub fn composite_capacity_report(
    rep: &UnitaryRep,
    n: usize,
    rho: &DensityOperator,
    cfg: &SearchConfig,
) -> Result<CapacityReport> {
    let global = global_representation(rep, n)?;
    capacity_report(global.rep(), rho, cfg)
}

/// `|g⟩^{⊗n}`.
pub fn reference_product(frame: &ReferenceFrame, g: usize, n: usize) -> Ket {
    let state = frame.state(g);
    (1..n).fold(state.clone(), |acc, _| acc.tensor(state))
}

/// `Σ_g |g⟩^{⊗n} / √n_G`, the globally symmetric correlated state.
pub fn correlated_symmetric_state(frame: &ReferenceFrame, n: usize) -> Ket {
    let order = frame.states().len();
    let mut acc = reference_product(frame, 0, n).amplitudes().clone();
    for g in 1..order {
        acc += reference_product(frame, g, n).amplitudes();
    }
    Ket::normalized(acc).expect("reference products are orthonormal")
}

/// `T_g ⊗ T_h` on two copies.
pub fn local_action(rep: &UnitaryRep, g: usize, h: usize) -> CMatrix {
    tensor_product(rep.matrix(g), rep.matrix(h))
}

/// `⟨ψ| T_g ⊗ T_h |ψ⟩` for a two-copy state.
pub fn local_asymmetry_overlap(rep: &UnitaryRep, state: &Ket, g: usize, h: usize) -> Result<C64> {
    let expected = rep.dim() * rep.dim();
    if state.dim() != expected {
        return Err(Error::DimensionMismatch { expected, found: state.dim() });
    }
    let order = rep.group().order();
    if g >= order || h >= order {
        return Err(Error::UnknownElement(format!("index {} out of range", g.max(h))));
    }
    Ok(state.inner(&state.apply(&local_action(rep, g, h))?))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::group::{
        builtin_irreps, path_interchange_representation, pauli_representation, regular_representation,
        BuiltinGroup, FiniteGroup,
    };
    use crate::linalg::{c64, identity, max_abs_diff, pauli_x};

    fn frame(kind: BuiltinGroup) -> ReferenceFrame {
        let g = Arc::new(FiniteGroup::builtin(kind).unwrap());
        ReferenceFrame::from_irreps(&builtin_irreps(&g).unwrap()).unwrap()
    }

    #[test]
    fn two_copy_path_interchange() {
        let global = global_representation(&path_interchange_representation(), 2).unwrap();
        assert_eq!(global.dim(), 4);
        assert!(max_abs_diff(global.rep().matrix(0), &identity(4)) < 1e-15);
        assert!(max_abs_diff(global.rep().matrix(1), &tensor_product(&pauli_x(), &pauli_x())) < 1e-15);
        assert!(global.rep().is_ordinary());
    }

    #[test]
    fn single_copy_is_the_base() {
        let base = pauli_representation();
        let global = global_representation(&base, 1).unwrap();
        assert_eq!(global.rep().matrices(), base.matrices());
        assert_eq!(global.rep().kind(), base.kind());
    }

    #[test]
    fn projective_cocycle_is_raised_to_the_power() {
        let global = global_representation(&pauli_representation(), 2).unwrap();
        let RepKind::Projective(omega) = global.rep().kind() else { panic!("expected projective") };
        assert!((omega.get(1, 2) + c64(1., 0.)).norm() < 1e-12);
    }

    #[test]
    fn cyclic_three_regular_squared() {
        let g = Arc::new(FiniteGroup::builtin(BuiltinGroup::Cyclic(3)).unwrap());
        let global = global_representation(&regular_representation(&g), 2).unwrap();
        assert_eq!(global.rep().matrices().len(), 3);
        assert!(global.rep().matrices().iter().all(|m| m.shape() == (9, 9)));
    }

    #[test]
    fn dimension_cap() {
        let g = Arc::new(FiniteGroup::builtin(BuiltinGroup::Symmetric3).unwrap());
        let rep = regular_representation(&g);
        assert!(global_representation(&rep, 3).is_ok());
        assert!(matches!(global_representation(&rep, 4), Err(Error::DimensionCapExceeded { dim: 1296, cap: 1024 })));
        assert!(global_representation(&path_interchange_representation(), 10).is_ok());
        assert!(global_representation(&path_interchange_representation(), 11).is_err());
        assert!(global_representation(&rep, 0).is_err());
    }

    #[test]
    fn reference_products_and_correlated_state() {
        let f = frame(BuiltinGroup::Cyclic(2));
        let cfg = SearchConfig::default();
        let r = composite_capacity_report(f.rep(), 2, &reference_product(&f, 1, 2).density(), &cfg).unwrap();
        assert!((r.i_asym_bound - 1.0).abs() < 1e-9 && (r.i_sym_bound - 1.0).abs() < 1e-9);
        let r = composite_capacity_report(f.rep(), 2, &correlated_symmetric_state(&f, 2).density(), &cfg).unwrap();
        assert!(r.i_asym_bound.abs() < 1e-9 && (r.i_sym_bound - 2.0).abs() < 1e-9);
        assert!(matches!(
            composite_capacity_report(f.rep(), 3, &correlated_symmetric_state(&f, 2).density(), &cfg),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn local_overlaps() {
        let f = frame(BuiltinGroup::Cyclic(2));
        let phi = correlated_symmetric_state(&f, 2);
        assert!((local_asymmetry_overlap(f.rep(), &phi, 1, 1).unwrap() - c64(1., 0.)).norm() < 1e-12);
        assert!(local_asymmetry_overlap(f.rep(), &phi, 0, 1).unwrap().norm() < 1e-12);
        assert!(matches!(local_asymmetry_overlap(f.rep(), &f.state(0).clone(), 0, 1), Err(Error::DimensionMismatch { .. })));

        let f = frame(BuiltinGroup::Symmetric3);
        let phi = correlated_symmetric_state(&f, 2);
        for g in 0..6 {
            for h in 0..6 {
                let expected = if g == h { 1.0 } else { 0.0 };
                assert!((local_asymmetry_overlap(f.rep(), &phi, g, h).unwrap() - c64(expected, 0.)).norm() < 1e-10);
            }
        }
    }
}
