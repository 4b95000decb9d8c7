//! Group twirl, the entropic symmetry and asymmetry measures, and
//! G-invariance of unitaries.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{IrrepSet, ReferenceFrame, UnitaryRep};
use crate::linalg::{
    conjugate, ensure_square, ensure_unitary, hs_inner, max_abs_diff, CMatrix, DensityOperator, C64,
};

/// `G[ρ] = (1/n_G) Σ_g T_g ρ T_g^dagger`. Cocycle phases cancel, so
/// projective representations are accepted.
pub fn twirl(rep: &UnitaryRep, rho: &DensityOperator) -> Result<DensityOperator> {
    rep.ensure_dim(rho.dim())?;
    let n = rep.group().order();
    let mut acc = CMatrix::zeros(rho.dim(), rho.dim());
    for t in rep.matrices() {
        acc += conjugate(t, rho.matrix());
    }
    Ok(DensityOperator::from_matrix_unchecked(acc.unscale(n as f64)))
}

/// True iff `G[ρ] = ρ` and every `T_g ρ T_g^dagger = ρ`, both within `tol`.
pub fn is_symmetric_state(rep: &UnitaryRep, rho: &DensityOperator, tol: f64) -> Result<bool> {
    let twirled = twirl(rep, rho)?;
    let by_twirl = max_abs_diff(twirled.matrix(), rho.matrix()) < tol;
    let by_elements = rep.matrices().iter().all(|t| max_abs_diff(&conjugate(t, rho.matrix()), rho.matrix()) < tol);
    Ok(by_twirl && by_elements)
}

/// `W_G(ρ) = log₂D - S(G[ρ])`.
pub fn symmetry(rep: &UnitaryRep, rho: &DensityOperator) -> Result<f64> {
    let twirled = twirl(rep, rho)?;
    Ok((rho.dim() as f64).log2() - twirled.entropy())
}

/// `A_G(ρ) = S(G[ρ]) - S(ρ)`.
pub fn asymmetry(rep: &UnitaryRep, rho: &DensityOperator) -> Result<f64> {
    let twirled = twirl(rep, rho)?;
    Ok(twirled.entropy() - rho.entropy())
}

/// Outcome of [`check_g_invariant_unitary`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GInvarianceVerdict {
    pub invariant: bool,
    /// `ω(g)` with `T_g U T_g^dagger = ω(g) U`, present when invariant.
    #[serde(serialize_with = "crate::io::serialize_complex_vec_opt")]
    pub phases: Option<Vec<C64>>,
    /// Element index and residual of the first failure.
    pub witness: Option<(usize, f64)>,
}

/// Tests `T_g U T_g^dagger = ω(g) U` with `|ω(g)| = 1` for every element.
/// That condition is equivalent to the conjugation channels of `U` and
/// `T_g` commuting on every state.
pub fn check_g_invariant_unitary(rep: &UnitaryRep, u: &CMatrix, tol: f64) -> Result<GInvarianceVerdict> {
    let dim = ensure_square(u)?;
    rep.ensure_dim(dim)?;
    ensure_unitary(u, tol)?;
    let mut phases = Vec::with_capacity(rep.group().order());
    for (g, t) in rep.matrices().iter().enumerate() {
        let moved = conjugate(t, u);
        let w = hs_inner(u, &moved) / dim as f64;
        let residual = max_abs_diff(&moved, &u.map(|z| z * w)).max((w.norm() - 1.0).abs());
        if residual > tol {
            return Ok(GInvarianceVerdict { invariant: false, phases: None, witness: Some((g, residual)) });
        }
        phases.push(w / w.norm());
    }
    Ok(GInvarianceVerdict { invariant: true, phases: Some(phases), witness: None })
}

/// For an abelian group, the diagonal unitaries `V_χ|g⟩ = χ(g)|g⟩` in the
/// reference-state basis, one per character, written as matrices on the
/// space of [`crate::group::rep_in_irrep_basis`].
pub fn character_phase_encoders(irreps: &IrrepSet) -> Result<Vec<CMatrix>> {
    if !irreps.is_abelian() {
        return Err(Error::NonAbelianGroup(irreps.group().name().to_string()));
    }
    let frame = ReferenceFrame::from_irreps(irreps)?;
    let refs = frame.matrix();
    Ok(irreps
        .irreps()
        .iter()
        .map(|chi| {
            let diag = CMatrix::from_fn(refs.ncols(), refs.ncols(), |i, j| {
                if i == j {
                    chi.character(i)
                } else {
                    C64::default()
                }
            });
            conjugate(&refs, &diag)
        })
        .collect())
}

/// Asymmetry-preservation residual `|A(UρU^dagger) - A(ρ)|`; the G-invariant
/// unitaries are exactly those for which this vanishes on all states.
pub fn asymmetry_shift(rep: &UnitaryRep, u: &CMatrix, rho: &DensityOperator) -> Result<f64> {
    let moved = rho.conjugated(u)?;
    Ok((asymmetry(rep, &moved)? - asymmetry(rep, rho)?).abs())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::group::{builtin_irreps, path_interchange_representation, BuiltinGroup, FiniteGroup};
    use crate::linalg::{c64, identity, pauli_x, pauli_y, pauli_z, tensor_product, Ket};

    fn qubit(a: f64, b: f64) -> DensityOperator {
        Ket::normalized(crate::linalg::CVector::from_vec(vec![c64(a, 0.), c64(b, 0.)])).unwrap().density()
    }

    #[test]
    fn twirl_examples() {
        let rep = path_interchange_representation();
        let mixed = DensityOperator::maximally_mixed(2);
        assert!(max_abs_diff(twirl(&rep, &mixed).unwrap().matrix(), mixed.matrix()) < 1e-15);
        let zero = qubit(1., 0.);
        assert!(max_abs_diff(twirl(&rep, &zero).unwrap().matrix(), mixed.matrix()) < 1e-15);
        assert!(matches!(
            twirl(&rep, &DensityOperator::maximally_mixed(3)),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn twirl_of_reference_state_is_maximally_mixed() {
        let set = builtin_irreps(&Arc::new(FiniteGroup::builtin(BuiltinGroup::Symmetric3).unwrap())).unwrap();
        let frame = ReferenceFrame::from_irreps(&set).unwrap();
        let out = twirl(frame.rep(), &frame.state(3).density()).unwrap();
        assert!(max_abs_diff(out.matrix(), DensityOperator::maximally_mixed(6).matrix()) < 1e-12);
    }

    #[test]
    fn symmetric_state_checks() {
        let rep = path_interchange_representation();
        assert!(is_symmetric_state(&rep, &DensityOperator::maximally_mixed(2), 1e-9).unwrap());
        assert!(is_symmetric_state(&rep, &qubit(1., 1.), 1e-9).unwrap());
        assert!(!is_symmetric_state(&rep, &qubit(1., 0.), 1e-9).unwrap());
    }

    #[test]
    fn measure_examples() {
        let rep = path_interchange_representation();
        let zero = qubit(1., 0.);
        assert!(symmetry(&rep, &zero).unwrap().abs() < 1e-12);
        assert!((asymmetry(&rep, &zero).unwrap() - 1.0).abs() < 1e-12);
        let plus = qubit(1., 1.);
        assert!(asymmetry(&rep, &plus).unwrap().abs() < 1e-12);
        assert!((symmetry(&rep, &plus).unwrap() - 1.0).abs() < 1e-12);
        let mixed = DensityOperator::maximally_mixed(2);
        assert!(asymmetry(&rep, &mixed).unwrap().abs() < 1e-12);
    }

    #[test]
    fn invariance_verdicts() {
        let rep = path_interchange_representation();
        let v = check_g_invariant_unitary(&rep, &identity(2), 1e-9).unwrap();
        assert!(v.invariant);
        assert!(v.phases.unwrap().iter().all(|w| (w - c64(1., 0.)).norm() < 1e-12));

        let v = check_g_invariant_unitary(&rep, &pauli_z(), 1e-9).unwrap();
        assert!(v.invariant);
        let phases = v.phases.unwrap();
        assert!((phases[1] + c64(1., 0.)).norm() < 1e-12);

        // Hadamard is not invariant under path interchange
        let h = (pauli_x() + pauli_z()).unscale(2f64.sqrt());
        let v = check_g_invariant_unitary(&rep, &h, 1e-9).unwrap();
        assert!(!v.invariant);
        assert_eq!(v.witness.unwrap().0, 1);

        assert!(matches!(
            check_g_invariant_unitary(&rep, &(pauli_z() + identity(2)), 1e-9),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn local_pauli_encoder_is_invariant_under_global_paulis() {
        let global = crate::composite::global_representation(&crate::group::pauli_representation(), 2).unwrap();
        let u = tensor_product(&identity(2), &pauli_y());
        let v = check_g_invariant_unitary(global.rep(), &u, 1e-9).unwrap();
        assert!(v.invariant);
    }

    fn reference_basis_diagonal(set: &IrrepSet, v: &CMatrix) -> Vec<C64> {
        let refs = ReferenceFrame::from_irreps(set).unwrap().matrix();
        let d = refs.adjoint() * v * &refs;
        assert!(crate::linalg::off_diagonal_max(&d) < 1e-12);
        (0..d.nrows()).map(|i| d[(i, i)]).collect()
    }

    #[test]
    fn phase_encoders_cyclic_two() {
        let set = builtin_irreps(&Arc::new(FiniteGroup::builtin(BuiltinGroup::Cyclic(2)).unwrap())).unwrap();
        let enc = character_phase_encoders(&set).unwrap();
        assert_eq!(enc.len(), 2);
        let d0 = reference_basis_diagonal(&set, &enc[0]);
        let d1 = reference_basis_diagonal(&set, &enc[1]);
        assert!((d0[0] - c64(1., 0.)).norm() < 1e-12 && (d0[1] - c64(1., 0.)).norm() < 1e-12);
        assert!((d1[0] - c64(1., 0.)).norm() < 1e-12 && (d1[1] + c64(1., 0.)).norm() < 1e-12);
    }

    #[test]
    fn phase_encoders_cyclic_three_are_invariant_and_orthogonalizing() {
        let set = builtin_irreps(&Arc::new(FiniteGroup::builtin(BuiltinGroup::Cyclic(3)).unwrap())).unwrap();
        let frame = ReferenceFrame::from_irreps(&set).unwrap();
        let phi = frame.uniform_superposition();
        let enc = character_phase_encoders(&set).unwrap();
        let encoded: Vec<Ket> = enc.iter().map(|v| phi.apply(v).unwrap()).collect();
        for a in 0..3 {
            assert!(check_g_invariant_unitary(frame.rep(), &enc[a], 1e-9).unwrap().invariant);
            for b in 0..3 {
                let expected = if a == b { 1.0 } else { 0.0 };
                assert!((encoded[a].inner(&encoded[b]) - c64(expected, 0.)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn phase_encoders_klein_four_are_signs() {
        let set = builtin_irreps(&Arc::new(FiniteGroup::builtin(BuiltinGroup::Klein4).unwrap())).unwrap();
        for v in character_phase_encoders(&set).unwrap() {
            for d in reference_basis_diagonal(&set, &v) {
                assert!(d.im.abs() < 1e-12 && (d.re.abs() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn phase_encoders_reject_non_abelian() {
        let set = builtin_irreps(&Arc::new(FiniteGroup::builtin(BuiltinGroup::Symmetric3).unwrap())).unwrap();
        assert!(matches!(character_phase_encoders(&set), Err(Error::NonAbelianGroup(_))));
    }
}
