//! Encodings, Holevo quantities, accessible information and capacity
//! reports.
//!
//! Two encodings are modelled. The asymmetric encoding sends `T_g ρ T_g^dagger`
//! with uniform probability over the group; its accessible information is
//! bounded by `A_G(ρ)`. The symmetric encoding sends `U_j ρ U_j^dagger` for
//! G-invariant unitaries `U_j`; when the average state keeps the asymmetry of
//! `ρ`, its accessible information is bounded by `W_G(ρ)`.
//!
//! Accessible information is computed exactly when the ensemble commutes
//! (measure in the common eigenbasis). Otherwise a seeded multi-restart local
//! search over projective measurements, started from the pretty good
//! measurement, gives a certified lower bound; the Holevo quantity is the
//! matching upper bound.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::io::serialize_sig12;
use crate::linalg::{
    commutator_residual, eig_hermitian, entropy_bits, hs_inner, identity, max_abs_diff, simultaneous_eigenbasis,
    tol, validate_distribution, CMatrix, DensityOperator, C64,
};
use crate::measures::{asymmetry, check_g_invariant_unitary, twirl};
use crate::group::UnitaryRep;
use crate::sampling::random_unitary;

/// Accessible-information searches are skipped above this dimension in
/// [`capacity_report`]; the bounds are still reported.
pub const SEARCH_DIM_LIMIT: usize = 32;

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleMember {
    pub label: String,
    pub probability: f64,
    pub state: DensityOperator,
}

/// Labelled states with prior probabilities.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    members: Vec<EnsembleMember>,
    dim: usize,
}

impl Ensemble {
    pub fn new(members: Vec<EnsembleMember>) -> Result<Self> {
        let Some(first) = members.first() else {
            return Err(Error::BadParameter("ensemble is empty".into()));
        };
        let dim = first.state.dim();
        if let Some(m) = members.iter().find(|m| m.state.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: m.state.dim() });
        }
        let probs: Vec<f64> = members.iter().map(|m| m.probability).collect();
        validate_distribution(&probs)?;
        let members = members.into_iter().map(|m| EnsembleMember { probability: m.probability.max(0.0), ..m }).collect();
        Ok(Self { members, dim })
    }

    pub fn members(&self) -> &[EnsembleMember] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.members.iter().map(|m| m.probability).collect()
    }

    /// `ρ_av = Σ pᵢ ρᵢ`.
    pub fn average(&self) -> DensityOperator {
        let mut acc = CMatrix::zeros(self.dim, self.dim);
        for m in &self.members {
            acc += m.state.matrix().scale(m.probability);
        }
        DensityOperator::from_matrix_unchecked(acc)
    }

    /// Largest pairwise commutator among the member states.
    pub fn commutation_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, a) in self.members.iter().enumerate() {
            for b in &self.members[i + 1..] {
                worst = worst.max(commutator_residual(a.state.matrix(), b.state.matrix()));
            }
        }
        worst
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PovmElement {
    pub label: String,
    /// `E_k = M_k^dagger M_k`.
    pub effect: CMatrix,
}

/// Positive operator-valued measure: PSD effects summing to the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Povm {
    elements: Vec<PovmElement>,
    dim: usize,
}

impl Povm {
    pub fn new(elements: Vec<PovmElement>) -> Result<Self> {
        Self::with_tol(elements, tol::VERDICT)
    }

    pub fn with_tol(elements: Vec<PovmElement>, tol: f64) -> Result<Self> {
        let Some(first) = elements.first() else {
            return Err(Error::InvalidPovm("no elements".into()));
        };
        let dim = first.effect.nrows();
        let mut total = CMatrix::zeros(dim, dim);
        for e in &elements {
            if e.effect.shape() != (dim, dim) {
                return Err(Error::InvalidPovm(format!("element `{}` has the wrong shape", e.label)));
            }
            let spec = eig_hermitian(&e.effect)
                .map_err(|err| Error::InvalidPovm(format!("element `{}`: {err}", e.label)))?;
            let min = spec.eigenvalues.last().copied().unwrap_or(0.0);
            if min < -tol {
                return Err(Error::InvalidPovm(format!("element `{}` has eigenvalue {min:.3e}", e.label)));
            }
            total += &e.effect;
        }
        let residual = max_abs_diff(&total, &identity(dim));
        if residual > tol {
            return Err(Error::InvalidPovm(format!("effects sum to identity only within {residual:.3e}")));
        }
        Ok(Self { elements, dim })
    }

    /// Rank-one projectors onto the columns of an orthonormal basis.
    pub fn projective(basis: &CMatrix) -> Result<Self> {
        let elements = (0..basis.ncols())
            .map(|k| {
                let col = basis.column(k);
                PovmElement { label: format!("b{k}"), effect: col * col.adjoint() }
            })
            .collect();
        Self::new(elements)
    }

    /// The uninformative single-outcome measurement `{I}`.
    pub fn trivial(dim: usize) -> Self {
        Self { elements: vec![PovmElement { label: "1".into(), effect: identity(dim) }], dim }
    }

    pub fn elements(&self) -> &[PovmElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// `{(g, 1/n_G, T_g ρ T_g^dagger)}`.
pub fn asym_encoding_ensemble(rep: &UnitaryRep, rho: &DensityOperator) -> Result<Ensemble> {
    rep.ensure_dim(rho.dim())?;
    let group = rep.group();
    let p = 1.0 / group.order() as f64;
    let members = group
        .elements()
        .map(|g| {
            Ok(EnsembleMember { label: group.label(g).to_string(), probability: p, state: rho.conjugated(rep.matrix(g))? })
        })
        .collect::<Result<Vec<_>>>()?;
    Ensemble::new(members)
}

/// Checks made on a symmetric encoding.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymEncodingAudit {
    #[serde(serialize_with = "serialize_sig12")]
    pub asymmetry_input: f64,
    #[serde(serialize_with = "serialize_sig12")]
    pub asymmetry_average: f64,
    /// `A(ρ_av) = A(ρ)` within 1e-9: the encoding uses only the symmetry.
    pub asymmetry_preserved: bool,
    #[serde(serialize_with = "serialize_sig12")]
    pub twirl_entropy_average: f64,
    /// `S(G[ρ_av]) = log₂D` within 1e-6: the encoding exhausts the symmetry.
    pub maximal: bool,
}

/// `{(j, q_j, U_j ρ U_j^dagger)}` for G-invariant encoders. Probabilities
/// default to uniform.
pub fn sym_encoding_ensemble(
    rep: &UnitaryRep,
    rho: &DensityOperator,
    encoders: &[CMatrix],
    probs: Option<&[f64]>,
) -> Result<(Ensemble, SymEncodingAudit)> {
    rep.ensure_dim(rho.dim())?;
    if encoders.is_empty() {
        return Err(Error::BadParameter("no encoders given".into()));
    }
    let uniform = vec![1.0 / encoders.len() as f64; encoders.len()];
    let probs = probs.unwrap_or(&uniform);
    if probs.len() != encoders.len() {
        return Err(Error::BadParameter(format!("{} probabilities for {} encoders", probs.len(), encoders.len())));
    }
    for (j, u) in encoders.iter().enumerate() {
        if u.nrows() != rho.dim() {
            return Err(Error::DimensionMismatch { expected: rho.dim(), found: u.nrows() });
        }
        let verdict = check_g_invariant_unitary(rep, u, tol::VERDICT)?;
        if let Some((g, residual)) = verdict.witness {
            return Err(Error::EncoderNotInvariant { encoder: j, element: rep.group().label(g).into(), residual });
        }
    }
    let members = encoders
        .iter()
        .zip(probs)
        .enumerate()
        .map(|(j, (u, &p))| Ok(EnsembleMember { label: format!("u{j}"), probability: p, state: rho.conjugated(u)? }))
        .collect::<Result<Vec<_>>>()?;
    let ensemble = Ensemble::new(members)?;
    let average = ensemble.average();
    let asymmetry_input = asymmetry(rep, rho)?;
    let asymmetry_average = asymmetry(rep, &average)?;
    let twirl_entropy_average = twirl(rep, &average)?.entropy();
    let audit = SymEncodingAudit {
        asymmetry_input,
        asymmetry_average,
        asymmetry_preserved: (asymmetry_average - asymmetry_input).abs() <= 1e-9,
        twirl_entropy_average,
        maximal: (twirl_entropy_average - (rho.dim() as f64).log2()).abs() <= 1e-6,
    };
    Ok((ensemble, audit))
}

/// `χ = S(ρ_av) - Σ pᵢ S(ρᵢ)`.
pub fn holevo_chi(ens: &Ensemble) -> f64 {
    let mixed: f64 = ens.members.iter().map(|m| m.probability * m.state.entropy()).sum();
    (ens.average().entropy() - mixed).max(0.0)
}

/// `I = H({p}) - Σ_k P(k) H({P(·|k)})` from priors and a row-per-member
/// table of outcome likelihoods.
fn mutual_information_table(priors: &[f64], likelihood: &[Vec<f64>]) -> f64 {
    let outcomes = likelihood.first().map_or(0, Vec::len);
    let mut conditional = 0.0;
    for k in 0..outcomes {
        let pk: f64 = priors.iter().zip(likelihood).map(|(p, row)| p * row[k]).sum();
        if pk <= 0.0 {
            continue;
        }
        let posterior = priors.iter().zip(likelihood).map(|(p, row)| p * row[k] / pk);
        conditional += pk * entropy_bits(posterior);
    }
    (entropy_bits(priors.iter().copied()) - conditional).max(0.0)
}

/// Mutual information between the ensemble label and the measurement outcome.
pub fn mutual_information(ens: &Ensemble, povm: &Povm) -> Result<f64> {
    if povm.dim != ens.dim {
        return Err(Error::DimensionMismatch { expected: ens.dim, found: povm.dim });
    }
    let likelihood: Vec<Vec<f64>> = ens
        .members
        .iter()
        .map(|m| povm.elements.iter().map(|e| hs_inner(&e.effect, m.state.matrix()).re.max(0.0)).collect())
        .collect();
    Ok(mutual_information_table(&ens.probabilities(), &likelihood))
}

/// How an accessible-information value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AccessMethod {
    /// Exact: projective measurement in the common eigenbasis of a
    /// commuting ensemble.
    CommonEigenbasis,
    PrettyGoodMeasurement,
    ProjectiveSearch,
}

/// An achieved mutual information with the measurement that attains it.
#[derive(Debug, Clone, PartialEq)]
pub struct AccessibleInfo {
    pub bits: f64,
    pub povm: Povm,
    pub method: AccessMethod,
    /// Holevo upper bound of the same ensemble.
    pub holevo: f64,
}

impl AccessibleInfo {
    pub fn is_exact(&self) -> bool {
        self.method == AccessMethod::CommonEigenbasis
    }
}

/// Exact accessible information of a commuting ensemble, which equals its
/// Holevo quantity.
pub fn accessible_info_commuting(ens: &Ensemble) -> Result<AccessibleInfo> {
    let states: Vec<CMatrix> = ens.members.iter().map(|m| m.state.matrix().clone()).collect();
    let basis = simultaneous_eigenbasis(&states)?;
    let povm = Povm::projective(&basis)?;
    let bits = mutual_information(ens, &povm)?;
    Ok(AccessibleInfo { bits, povm, method: AccessMethod::CommonEigenbasis, holevo: holevo_chi(ens) })
}

/// `E_i = ρ_av^{-1/2} pᵢρᵢ ρ_av^{-1/2}`, inverting on the support of `ρ_av`;
/// a `null` element `I - Π_support` is appended when `ρ_av` is singular.
pub fn pretty_good_measurement(ens: &Ensemble) -> Povm {
    let spec = eig_hermitian(ens.average().matrix()).expect("average state is Hermitian");
    let dim = ens.dim;
    let support: Vec<usize> = (0..dim).filter(|&k| spec.eigenvalues[k] > tol::CLAMP).collect();
    let v = &spec.eigenvectors;
    let mut inv_sqrt = CMatrix::zeros(dim, dim);
    let mut projector = CMatrix::zeros(dim, dim);
    for &k in &support {
        let col = v.column(k);
        let outer = col * col.adjoint();
        inv_sqrt += outer.scale(1.0 / spec.eigenvalues[k].sqrt());
        projector += outer;
    }
    let mut elements: Vec<PovmElement> = ens
        .members
        .iter()
        .map(|m| {
            let e = &inv_sqrt * m.state.matrix().scale(m.probability) * &inv_sqrt;
            PovmElement { label: m.label.clone(), effect: (&e + e.adjoint()).scale(0.5) }
        })
        .collect();
    if support.len() < dim {
        elements.push(PovmElement { label: "null".into(), effect: identity(dim) - projector });
    }
    Povm { elements, dim }
}

/// Settings for [`accessible_info_search`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SearchConfig {
    pub restarts: usize,
    /// Proposals per restart.
    pub max_iterations: usize,
    pub seed: u64,
    /// A restart ends once a step-size halving gains less than this (bits).
    pub convergence_tol: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { restarts: 8, max_iterations: 4000, seed: 0x0077_6976_6163_6c65, convergence_tol: 1e-12 }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts < 1 {
            return Err(Error::BadParameter("search needs at least one restart".into()));
        }
        if self.convergence_tol.is_nan() || self.convergence_tol <= 0.0 {
            return Err(Error::BadParameter("convergence tolerance must be positive".into()));
        }
        Ok(())
    }
}

/// Mutual information of the projective measurement onto the columns of `basis`.
fn projective_mi(priors: &[f64], states: &[CMatrix], basis: &CMatrix) -> f64 {
    let likelihood: Vec<Vec<f64>> = states
        .iter()
        .map(|rho| {
            (0..basis.ncols())
                .map(|k| {
                    let col = basis.column(k);
                    col.dotc(&(rho * col)).re.max(0.0)
                })
                .collect()
        })
        .collect();
    mutual_information_table(priors, &likelihood)
}

/// Rotates columns `j`, `k` of `basis` by a complex Givens rotation.
fn givens(basis: &CMatrix, j: usize, k: usize, theta: f64, phase: f64) -> CMatrix {
    let (s, c) = theta.sin_cos();
    let w = C64::from_polar(1.0, phase);
    let mut out = basis.clone();
    let uj = basis.column(j);
    let uk = basis.column(k);
    out.set_column(j, &(uj.map(|z| z * c) + uk.map(|z| z * (w * s))));
    out.set_column(k, &(uk.map(|z| z * c) - uj.map(|z| z * (w.conj() * s))));
    out
}

fn search_restart(
    priors: &[f64],
    states: &[CMatrix],
    start: CMatrix,
    rng: &mut ChaCha8Rng,
    cfg: &SearchConfig,
) -> (f64, CMatrix) {
    let dim = start.nrows();
    let mut basis = start;
    let mut value = projective_mi(priors, states, &basis);
    if dim < 2 {
        return (value, basis);
    }
    let patience = 2 * dim * (dim - 1) + 4;
    let mut step = 0.5;
    let mut failures = 0;
    let mut epoch_start = value;
    for _ in 0..cfg.max_iterations {
        let j = rng.random_range(0..dim);
        let mut k = rng.random_range(0..dim - 1);
        if k >= j {
            k += 1;
        }
        let theta = step * rng.sample::<f64, _>(rand_distr::StandardNormal);
        let phase = rng.random_range(0.0..std::f64::consts::TAU);
        let candidate = givens(&basis, j, k, theta, phase);
        let v = projective_mi(priors, states, &candidate);
        if v > value {
            basis = candidate;
            value = v;
            failures = 0;
            continue;
        }
        failures += 1;
        if failures >= patience {
            failures = 0;
            step *= 0.5;
            let gained = value - epoch_start;
            epoch_start = value;
            if step < 1e-7 || (step < 1e-3 && gained < cfg.convergence_tol) {
                break;
            }
        }
    }
    (value, basis)
}

/// Lower bound on the accessible information by local search over
/// projective measurements.
///
/// Restart 0 starts from a basis diagonalizing a random combination of the
/// pretty-good-measurement effects; the others start from Haar-random
/// bases. Each restart draws from its own stream of the configured seed and
/// results merge by maximum with ties to the lowest restart, so the output
/// does not depend on scheduling. The pretty good measurement itself is
/// returned when no projective measurement beats it.
pub fn accessible_info_search(ens: &Ensemble, cfg: &SearchConfig) -> Result<AccessibleInfo> {
    cfg.validate()?;
    let priors = ens.probabilities();
    let states: Vec<CMatrix> = ens.members.iter().map(|m| m.state.matrix().clone()).collect();
    let pgm = pretty_good_measurement(ens);
    let pgm_bits = mutual_information(ens, &pgm)?;
    let dim = ens.dim;

    let results: Vec<(f64, CMatrix)> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(r as u64);
            let start = if r == 0 {
                let mut combo = CMatrix::zeros(dim, dim);
                for e in &pgm.elements {
                    combo += e.effect.scale(rng.random_range(-1.0..1.0));
                }
                eig_hermitian(&combo).expect("PGM effects are Hermitian").eigenvectors
            } else {
                random_unitary(&mut rng, dim)
            };
            search_restart(&priors, &states, start, &mut rng, cfg)
        })
        .collect();
    let (best_bits, best_basis) = results
        .into_iter()
        .reduce(|best, next| if next.0 > best.0 { next } else { best })
        .expect("at least one restart");

    let (povm, method) = if best_bits >= pgm_bits {
        (Povm::projective(&best_basis)?, AccessMethod::ProjectiveSearch)
    } else {
        (pgm, AccessMethod::PrettyGoodMeasurement)
    };
    let bits = mutual_information(ens, &povm)?;
    Ok(AccessibleInfo { bits, povm, method, holevo: holevo_chi(ens) })
}

/// Exact value for commuting ensembles, search otherwise.
pub fn accessible_info(ens: &Ensemble, cfg: &SearchConfig) -> Result<AccessibleInfo> {
    match accessible_info_commuting(ens) {
        Err(Error::NotCommuting { .. }) | Err(Error::NoCommonBasis { .. }) => accessible_info_search(ens, cfg),
        other => other,
    }
}

/// An achieved capacity as it appears in a report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Achieved {
    #[serde(serialize_with = "serialize_sig12")]
    pub bits: f64,
    #[serde(serialize_with = "serialize_sig12")]
    pub holevo: f64,
    pub method: AccessMethod,
    pub exact: bool,
    pub outcomes: usize,
    /// Within 1e-9 of the corresponding bound.
    pub saturates_bound: bool,
}

impl Achieved {
    fn new(info: &AccessibleInfo, bound: f64) -> Self {
        Self {
            bits: info.bits,
            holevo: info.holevo,
            method: info.method,
            exact: info.is_exact(),
            outcomes: info.povm.len(),
            saturates_bound: (info.bits - bound).abs() <= 1e-9,
        }
    }
}

/// Symmetry/asymmetry measures, the capacity bounds they imply, and the
/// capacities actually achieved where computed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CapacityReport {
    pub dim: usize,
    pub representation: &'static str,
    #[serde(serialize_with = "serialize_sig12")]
    pub state_entropy: f64,
    #[serde(serialize_with = "serialize_sig12")]
    pub twirl_entropy: f64,
    /// `W_G(ρ)`.
    #[serde(rename = "W", serialize_with = "serialize_sig12")]
    pub symmetry: f64,
    /// `A_G(ρ)`.
    #[serde(rename = "A", serialize_with = "serialize_sig12")]
    pub asymmetry: f64,
    #[serde(serialize_with = "serialize_sig12")]
    pub i_asym_bound: f64,
    #[serde(serialize_with = "serialize_sig12")]
    pub i_sym_bound: f64,
    #[serde(serialize_with = "serialize_sig12")]
    pub sum: f64,
    /// `log₂D - S(ρ)`.
    #[serde(serialize_with = "serialize_sig12")]
    pub budget: f64,
    /// `budget` minus the achieved capacities, using the bound for any
    /// capacity that was not computed.
    #[serde(serialize_with = "serialize_sig12")]
    pub slack: f64,
    pub achieved_asym: Option<Achieved>,
    pub achieved_sym: Option<Achieved>,
    pub symmetric_audit: Option<SymEncodingAudit>,
}

impl CapacityReport {
    fn refresh_slack(&mut self) {
        let asym = self.achieved_asym.as_ref().map_or(self.i_asym_bound, |a| a.bits);
        let sym = self.achieved_sym.as_ref().map_or(self.i_sym_bound, |a| a.bits);
        self.slack = self.budget - asym - sym;
    }

    /// Duality residual `|sum - budget|`.
    pub fn duality_residual(&self) -> f64 {
        (self.sum - self.budget).abs()
    }
}

/// Measures and bounds only; no accessible-information computation.
pub fn capacity_bounds(rep: &UnitaryRep, rho: &DensityOperator) -> Result<CapacityReport> {
    let twirled = twirl(rep, rho)?;
    let state_entropy = rho.entropy();
    let twirl_entropy = twirled.entropy();
    let log_d = (rho.dim() as f64).log2();
    let symmetry = log_d - twirl_entropy;
    let asymmetry = twirl_entropy - state_entropy;
    let mut report = CapacityReport {
        dim: rho.dim(),
        representation: if rep.is_ordinary() { "ordinary" } else { "projective" },
        state_entropy,
        twirl_entropy,
        symmetry,
        asymmetry,
        i_asym_bound: asymmetry,
        i_sym_bound: symmetry,
        sum: asymmetry + symmetry,
        budget: log_d - state_entropy,
        slack: 0.0,
        achieved_asym: None,
        achieved_sym: None,
        symmetric_audit: None,
    };
    report.refresh_slack();
    Ok(report)
}

/// Bounds plus the achieved asymmetric capacity: exact when the group orbit
/// commutes, searched otherwise (up to [`SEARCH_DIM_LIMIT`]).
pub fn capacity_report(rep: &UnitaryRep, rho: &DensityOperator, cfg: &SearchConfig) -> Result<CapacityReport> {
    let mut report = capacity_bounds(rep, rho)?;
    let ens = asym_encoding_ensemble(rep, rho)?;
    let info = match accessible_info_commuting(&ens) {
        Ok(info) => Some(info),
        Err(Error::NotCommuting { .. }) | Err(Error::NoCommonBasis { .. }) if rho.dim() <= SEARCH_DIM_LIMIT => {
            Some(accessible_info_search(&ens, cfg)?)
        }
        Err(Error::NotCommuting { .. }) | Err(Error::NoCommonBasis { .. }) => None,
        Err(e) => return Err(e),
    };
    report.achieved_asym = info.map(|i| Achieved::new(&i, report.i_asym_bound));
    report.refresh_slack();
    Ok(report)
}

/// [`capacity_report`] plus a symmetric encoding by the given G-invariant
/// encoders. The achieved symmetric capacity is only recorded when the
/// encoding preserves the asymmetry on average; the audit is always kept.
pub fn capacity_report_with_encoders(
    rep: &UnitaryRep,
    rho: &DensityOperator,
    encoders: &[CMatrix],
    probs: Option<&[f64]>,
    cfg: &SearchConfig,
) -> Result<CapacityReport> {
    let mut report = capacity_report(rep, rho, cfg)?;
    let (ens, audit) = sym_encoding_ensemble(rep, rho, encoders, probs)?;
    if audit.asymmetry_preserved {
        let info = accessible_info(&ens, cfg)?;
        report.achieved_sym = Some(Achieved::new(&info, report.i_sym_bound));
    }
    report.symmetric_audit = Some(audit);
    report.refresh_slack();
    Ok(report)
}
