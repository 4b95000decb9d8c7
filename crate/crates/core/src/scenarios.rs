//! The two-path interferometer and superdense coding, analysed through the
//! symmetry/asymmetry capacities.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::composite::{global_representation, local_action};
use crate::error::{Error, Result};
use crate::group::{path_interchange_representation, pauli_representation, UnitaryRep};
use crate::info::{
    capacity_report_with_encoders, mutual_information, CapacityReport, Ensemble, EnsembleMember, Povm, PovmElement,
    SearchConfig,
};
use crate::io::{round_sig12, serialize_complex_vec, serialize_sig12, serialize_sig12_table, serialize_sig12_vec};
use crate::linalg::{
    c64, conjugate, identity, max_abs_diff, pauli_x, pauli_y, pauli_z, tensor_product, tol, CMatrix, CVector,
    DensityOperator, Ket, C64,
};
use crate::measures::{asymmetry_shift, check_g_invariant_unitary};

/// Beam splitter after a phase shift on the lower path:
/// `U(φ) = (I + iσy)/√2 · exp(iφ|1⟩⟨1|)`. Path `|0⟩` is the upper path.
pub fn interferometer_unitary(phi: f64) -> CMatrix {
    let splitter = (identity(2) + pauli_y() * c64(0., 1.)).unscale(2f64.sqrt());
    let mut shifter = identity(2);
    shifter[(1, 1)] = C64::from_polar(1.0, phi);
    splitter * shifter
}

/// Probability of the upper detector, `⟨0|U(φ) ρ U(φ)^dagger|0⟩`.
pub fn upper_detection_probability(rho: &DensityOperator, phi: f64) -> f64 {
    conjugate(&interferometer_unitary(phi), rho.matrix())[(0, 0)].re.clamp(0.0, 1.0)
}

/// `n` phases evenly spaced over `[0, 2π]`, both ends included.
pub fn phase_grid(n: usize) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::BadParameter("phase grid needs at least 2 points".into()));
    }
    let step = std::f64::consts::TAU / (n - 1) as f64;
    Ok((0..n).map(|k| k as f64 * step).collect())
}

/// Detection probabilities over a phase scan with both visibilities.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FringeData {
    #[serde(serialize_with = "serialize_sig12_vec")]
    pub phases: Vec<f64>,
    #[serde(serialize_with = "serialize_sig12_vec")]
    pub p_upper: Vec<f64>,
    /// `2|⟨1|ρ|0⟩|`.
    #[serde(serialize_with = "serialize_sig12")]
    pub visibility_formula: f64,
    /// `(max - min)/(max + min)` over the scan.
    #[serde(serialize_with = "serialize_sig12")]
    pub visibility_empirical: f64,
}

impl FringeData {
    /// `phase_rad,p_upper` rows, 12 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("phase_rad,p_upper\n");
        for (phi, p) in self.phases.iter().zip(&self.p_upper) {
            writeln!(out, "{},{}", round_sig12(*phi), round_sig12(*p)).expect("writing to a String");
        }
        out
    }
}

pub fn fringe_scan(rho: &DensityOperator, phases: &[f64]) -> Result<FringeData> {
    if rho.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: rho.dim() });
    }
    if phases.is_empty() {
        return Err(Error::BadParameter("no phases given".into()));
    }
    if let Some(phi) = phases.iter().find(|p| !p.is_finite()) {
        return Err(Error::BadParameter(format!("phase {phi} is not finite")));
    }
    let p_upper: Vec<f64> = phases.iter().map(|&phi| upper_detection_probability(rho, phi)).collect();
    let max = p_upper.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = p_upper.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(FringeData {
        phases: phases.to_vec(),
        p_upper,
        visibility_formula: (2.0 * rho.matrix()[(1, 0)].norm()).min(1.0),
        visibility_empirical: if max + min > 0.0 { (max - min) / (max + min) } else { 0.0 },
    })
}

/// Invariance check of one encoder.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EncoderAudit {
    pub encoder: String,
    pub invariant: bool,
    /// `ω(g)` per group element, empty when not invariant.
    #[serde(serialize_with = "serialize_complex_vec")]
    pub phases: Vec<C64>,
    /// `|A(UρU^dagger) - A(ρ)|` on the analysed state.
    #[serde(serialize_with = "serialize_sig12")]
    pub asymmetry_shift: f64,
}

fn audit_encoders(rep: &UnitaryRep, encoders: &[(&str, CMatrix)], rho: &DensityOperator) -> Result<Vec<EncoderAudit>> {
    encoders
        .iter()
        .map(|(label, u)| {
            let verdict = check_g_invariant_unitary(rep, u, tol::VERDICT)?;
            Ok(EncoderAudit {
                encoder: label.to_string(),
                invariant: verdict.invariant,
                phases: verdict.phases.unwrap_or_default(),
                asymmetry_shift: asymmetry_shift(rep, u, rho)?,
            })
        })
        .collect()
}

/// Capacities, fringes and encoder audits of a path qubit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TwoPathReport {
    pub capacity: CapacityReport,
    pub fringe: FringeData,
    pub encoders: Vec<EncoderAudit>,
}

/// Path interchange `{I, σx}` with phase-flip encoders `{I, σz}`.
pub fn two_path_report(rho: &DensityOperator, phases: &[f64], cfg: &SearchConfig) -> Result<TwoPathReport> {
    if rho.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: rho.dim() });
    }
    let rep = path_interchange_representation();
    let encoders = [("I", identity(2)), ("Z", pauli_z())];
    let unitaries: Vec<CMatrix> = encoders.iter().map(|(_, u)| u.clone()).collect();
    Ok(TwoPathReport {
        capacity: capacity_report_with_encoders(&rep, rho, &unitaries, None, cfg)?,
        fringe: fringe_scan(rho, phases)?,
        encoders: audit_encoders(&rep, &encoders, rho)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BellState {
    #[serde(rename = "phi+")]
    PhiPlus,
    #[serde(rename = "phi-")]
    PhiMinus,
    #[serde(rename = "psi+")]
    PsiPlus,
    #[serde(rename = "psi-")]
    PsiMinus,
}

impl BellState {
    pub const ALL: [BellState; 4] = [BellState::PhiPlus, BellState::PhiMinus, BellState::PsiPlus, BellState::PsiMinus];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        match self {
            BellState::PhiPlus => "phi+",
            BellState::PhiMinus => "phi-",
            BellState::PsiPlus => "psi+",
            BellState::PsiMinus => "psi-",
        }
    }
}

impl FromStr for BellState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BellState::ALL
            .into_iter()
            .find(|b| b.label().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::BadParameter(format!("unknown Bell state `{s}`; expected phi+, phi-, psi+ or psi-")))
    }
}

/// `Φ± = (|00⟩ ± |11⟩)/√2`, `Ψ± = (|01⟩ ± |10⟩)/√2` with `|0⟩ = ↑`.
#[derive(Debug, Clone, PartialEq)]
pub struct BellBasis {
    states: [Ket; 4],
}

impl BellBasis {
    pub fn state(&self, b: BellState) -> &Ket {
        &self.states[b.index()]
    }

    pub fn states(&self) -> &[Ket; 4] {
        &self.states
    }

    /// Projective measurement onto the four Bell states, labelled by state.
    pub fn measurement(&self) -> Povm {
        let elements = BellState::ALL
            .iter()
            .map(|b| PovmElement { label: b.label().into(), effect: self.state(*b).projector() })
            .collect();
        Povm::new(elements).expect("Bell projectors are complete")
    }
}

pub fn bell_basis() -> BellBasis {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let ket = |a: [f64; 4]| Ket::new(CVector::from_iterator(4, a.iter().map(|&x| c64(x * r, 0.)))).expect("normalized");
    BellBasis {
        states: [
            ket([1., 0., 0., 1.]),
            ket([1., 0., 0., -1.]),
            ket([0., 1., 1., 0.]),
            ket([0., 1., -1., 0.]),
        ],
    }
}

/// `I ⊗ σ_k` for `k = 0, x, y, z`: Bob's operations on the lower spin.
pub fn superdense_encoders() -> [(&'static str, CMatrix); 4] {
    let one = identity(2);
    [
        ("I", tensor_product(&one, &identity(2))),
        ("X", tensor_product(&one, &pauli_x())),
        ("Y", tensor_product(&one, &pauli_y())),
        ("Z", tensor_product(&one, &pauli_z())),
    ]
}

/// Decoding statistics of superdense coding.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuperdenseOutcome {
    pub initial: BellState,
    #[serde(serialize_with = "serialize_sig12_vec")]
    pub priors: Vec<f64>,
    pub messages: Vec<String>,
    pub outcomes: Vec<String>,
    /// `P(outcome | message)`, one row per message.
    #[serde(serialize_with = "serialize_sig12_table")]
    pub table: Vec<Vec<f64>>,
    #[serde(serialize_with = "serialize_sig12")]
    pub mutual_information: f64,
}

impl SuperdenseOutcome {
    /// Whether every row has a single outcome of probability one.
    pub fn is_deterministic(&self, tol: f64) -> bool {
        self.table.iter().all(|row| {
            row.iter().filter(|p| p.abs() > tol).count() == 1 && row.iter().any(|p| (p - 1.0).abs() <= tol)
        })
    }
}

/// Encodes message `k` with `I ⊗ σ_k` on a shared Bell state and decodes
/// with a Bell measurement.
pub fn superdense_simulate(initial: BellState, priors: &[f64]) -> Result<SuperdenseOutcome> {
    if priors.len() != 4 {
        return Err(Error::BadParameter(format!("expected 4 message priors, found {}", priors.len())));
    }
    let basis = bell_basis();
    let start = basis.state(initial);
    let encoders = superdense_encoders();
    let members = encoders
        .iter()
        .zip(priors)
        .map(|((label, u), &p)| {
            Ok(EnsembleMember { label: label.to_string(), probability: p, state: start.apply(u)?.density() })
        })
        .collect::<Result<Vec<_>>>()?;
    let ensemble = Ensemble::new(members)?;
    let measurement = basis.measurement();
    let table = ensemble
        .members()
        .iter()
        .map(|m| {
            measurement
                .elements()
                .iter()
                .map(|e| crate::linalg::hs_inner(&e.effect, m.state.matrix()).re.max(0.0))
                .collect()
        })
        .collect();
    Ok(SuperdenseOutcome {
        initial,
        priors: priors.to_vec(),
        messages: encoders.iter().map(|(l, _)| l.to_string()).collect(),
        outcomes: BellState::ALL.iter().map(|b| b.label().to_string()).collect(),
        table,
        mutual_information: mutual_information(&ensemble, &measurement)?,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BellInvariance {
    pub state: BellState,
    /// `max_g |P_g ρ_B P_g^dagger - ρ_B|` over global Paulis.
    #[serde(serialize_with = "serialize_sig12")]
    pub residual: f64,
    pub symmetric: bool,
}

/// Capacities of a two-qubit state under global Paulis with audits.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuperdenseReport {
    pub capacity: CapacityReport,
    pub bell_invariance: Vec<BellInvariance>,
    pub encoders: Vec<EncoderAudit>,
    /// Worst `1 - |⟨(T_e⊗T_r)B|(T_g⊗T_h)B⟩|` with `r = h∘g⁻¹`, over Bell
    /// states and pairs `(g, h)`.
    #[serde(serialize_with = "serialize_sig12")]
    pub local_form_residual: f64,
    /// Worst `|I⊗σ_k - T_e⊗T_k|`.
    #[serde(serialize_with = "serialize_sig12")]
    pub encoder_local_residual: f64,
}

pub fn superdense_report(rho: &DensityOperator, cfg: &SearchConfig) -> Result<SuperdenseReport> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, found: rho.dim() });
    }
    let pauli = pauli_representation();
    let global = global_representation(&pauli, 2)?;
    let group = pauli.group().clone();
    let encoders = superdense_encoders();
    let unitaries: Vec<CMatrix> = encoders.iter().map(|(_, u)| u.clone()).collect();
    let capacity = capacity_report_with_encoders(global.rep(), rho, &unitaries, None, cfg)?;

    let basis = bell_basis();
    let bell_invariance = BellState::ALL
        .iter()
        .map(|&b| {
            let proj = basis.state(b).projector();
            let residual = global
                .rep()
                .matrices()
                .iter()
                .map(|t| max_abs_diff(&conjugate(t, &proj), &proj))
                .fold(0.0, f64::max);
            BellInvariance { state: b, residual, symmetric: residual <= 1e-12 }
        })
        .collect();

    let mut local_form_residual = 0.0f64;
    for b in BellState::ALL {
        let ket = basis.state(b);
        for g in group.elements() {
            for h in group.elements() {
                let r = group.compose(h, group.inverse(g));
                let lhs = ket.apply(&local_action(&pauli, g, h))?;
                let rhs = ket.apply(&local_action(&pauli, group.identity(), r))?;
                local_form_residual = local_form_residual.max(1.0 - rhs.inner(&lhs).norm());
            }
        }
    }
    let encoder_local_residual = group
        .elements()
        .map(|k| max_abs_diff(&unitaries[k], &local_action(&pauli, group.identity(), k)))
        .fold(0.0, f64::max);

    Ok(SuperdenseReport {
        capacity,
        bell_invariance,
        encoders: audit_encoders(global.rep(), &encoders, rho)?,
        local_form_residual,
        encoder_local_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::unitarity_residual;

    fn ket(a: C64, b: C64) -> DensityOperator {
        Ket::normalized(CVector::from_vec(vec![a, b])).unwrap().density()
    }

    #[test]
    fn interferometer_examples() {
        let u0 = interferometer_unitary(0.0);
        let bs = (identity(2) + pauli_y() * c64(0., 1.)).unscale(2f64.sqrt());
        assert!(max_abs_diff(&u0, &bs) < 1e-15);
        let plus = ket(c64(1., 0.), c64(1., 0.));
        for k in 0..50 {
            let phi = 0.37 * k as f64;
            assert!(unitarity_residual(&interferometer_unitary(phi)) < 1e-12);
            let expected = (phi / 2.0).cos().powi(2);
            assert!((upper_detection_probability(&plus, phi) - expected).abs() < 1e-12);
        }
        assert!(upper_detection_probability(&plus, std::f64::consts::PI) < 1e-15);
    }

    #[test]
    fn fringe_examples() {
        let grid = phase_grid(361).unwrap();
        let plus = fringe_scan(&ket(c64(1., 0.), c64(1., 0.)), &grid).unwrap();
        assert!((plus.visibility_formula - 1.0).abs() < 1e-12);
        assert!((plus.visibility_empirical - 1.0).abs() < 1e-6);
        let zero = fringe_scan(&ket(c64(1., 0.), c64(0., 0.)), &grid).unwrap();
        assert!(zero.visibility_formula.abs() < 1e-15 && zero.visibility_empirical.abs() < 1e-12);
        assert!(zero.p_upper.iter().all(|p| (p - 0.5).abs() < 1e-12));
        let mixed = fringe_scan(&DensityOperator::maximally_mixed(2), &grid).unwrap();
        assert!(mixed.visibility_formula.abs() < 1e-15 && mixed.visibility_empirical.abs() < 1e-12);
        assert!(matches!(fringe_scan(&DensityOperator::maximally_mixed(3), &grid), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn fringe_csv() {
        let data = fringe_scan(&ket(c64(1., 0.), c64(1., 0.)), &phase_grid(3).unwrap()).unwrap();
        let csv = data.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "phase_rad,p_upper");
        assert_eq!(lines[1], "0,1");
        assert!(lines[2].starts_with("3.14159265359,"));
        assert_eq!(lines.len(), 4);
    }

    #[test]
    fn two_path_examples() {
        let cfg = SearchConfig::default();
        let grid = phase_grid(361).unwrap();
        let r = two_path_report(&ket(c64(1., 0.), c64(0., 0.)), &grid, &cfg).unwrap();
        assert!((r.capacity.i_asym_bound - 1.0).abs() < 1e-10 && r.capacity.i_sym_bound.abs() < 1e-10);
        assert!(r.encoders.iter().all(|e| e.invariant));
        let r = two_path_report(&ket(c64(1., 0.), c64(-1., 0.)), &grid, &cfg).unwrap();
        assert!(r.capacity.i_asym_bound.abs() < 1e-10 && (r.capacity.i_sym_bound - 1.0).abs() < 1e-10);
        let audit = r.capacity.symmetric_audit.as_ref().unwrap();
        assert!(audit.asymmetry_preserved && audit.maximal);
        let achieved = r.capacity.achieved_sym.as_ref().unwrap();
        assert!((achieved.bits - 1.0).abs() < 1e-10);
    }

    #[test]
    fn bell_basis_properties() {
        let b = bell_basis();
        for (i, x) in b.states().iter().enumerate() {
            for (j, y) in b.states().iter().enumerate() {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((x.inner(y) - c64(expected, 0.)).norm() < 1e-12);
            }
        }
        let flip = |u: &CMatrix, from: BellState, to: BellState| {
            let moved = b.state(from).apply(u).unwrap();
            (moved.inner(b.state(to)).norm() - 1.0).abs() < 1e-12
        };
        assert!(flip(&tensor_product(&identity(2), &pauli_x()), BellState::PsiMinus, BellState::PhiMinus));
        assert!(flip(&tensor_product(&identity(2), &pauli_z()), BellState::PsiMinus, BellState::PsiPlus));
        assert_eq!("PSI-".parse::<BellState>().unwrap(), BellState::PsiMinus);
        assert!("chi".parse::<BellState>().is_err());
    }

    #[test]
    fn superdense_examples() {
        let uniform = [0.25; 4];
        let out = superdense_simulate(BellState::PsiMinus, &uniform).unwrap();
        assert!((out.mutual_information - 2.0).abs() < 1e-10);
        assert!(out.is_deterministic(1e-10));
        let out = superdense_simulate(BellState::PsiMinus, &[1., 0., 0., 0.]).unwrap();
        assert!(out.mutual_information.abs() < 1e-12);
        assert!((out.table[0][BellState::PsiMinus.index()] - 1.0).abs() < 1e-12);
        let out = superdense_simulate(BellState::PhiPlus, &uniform).unwrap();
        assert!((out.mutual_information - 2.0).abs() < 1e-10);
        let out = superdense_simulate(BellState::PsiMinus, &[0.5, 0.5, 0., 0.]).unwrap();
        assert!((out.mutual_information - 1.0).abs() < 1e-10);
        assert!(superdense_simulate(BellState::PsiMinus, &[0.5, 0.5]).is_err());
    }

    #[test]
    fn superdense_report_examples() {
        let cfg = SearchConfig::default();
        for b in BellState::ALL {
            let r = superdense_report(&bell_basis().state(b).density(), &cfg).unwrap();
            assert!(r.capacity.i_asym_bound.abs() < 1e-10 && (r.capacity.i_sym_bound - 2.0).abs() < 1e-10);
            assert!((r.capacity.achieved_sym.as_ref().unwrap().bits - 2.0).abs() < 1e-10);
            assert!(r.bell_invariance.iter().all(|x| x.symmetric));
            assert!(r.encoders.iter().all(|e| e.invariant && e.asymmetry_shift < 1e-9));
            assert!(r.local_form_residual < 1e-12 && r.encoder_local_residual < 1e-15);
        }
        let r = c64(std::f64::consts::FRAC_1_SQRT_2, 0.);
        let up_up_plus_up_down =
            Ket::new(CVector::from_vec(vec![r, r, c64(0., 0.), c64(0., 0.)])).unwrap().density();
        let rep = superdense_report(&up_up_plus_up_down, &cfg).unwrap();
        assert!((rep.capacity.i_asym_bound - 2.0).abs() < 1e-10 && rep.capacity.i_sym_bound.abs() < 1e-10);
        assert!(rep.capacity.achieved_sym.is_none());
        assert!(!rep.capacity.symmetric_audit.as_ref().unwrap().asymmetry_preserved);
        let mixed = superdense_report(&DensityOperator::maximally_mixed(4), &cfg).unwrap();
        assert!(mixed.capacity.i_asym_bound.abs() < 1e-10 && mixed.capacity.i_sym_bound.abs() < 1e-10);
    }
}
