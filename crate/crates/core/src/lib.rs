//! Entropic symmetry and asymmetry of finite-dimensional quantum states with
//! respect to finite groups.
//!
//! A state `ρ` carries two complementary kinds of classical information
//! relative to a group representation `{T_g}`: information encoded by moving
//! it around its group orbit (bounded by the asymmetry `A_G`) and
//! information encoded by G-invariant unitaries (bounded by the symmetry
//! `W_G`). Their sum never exceeds `log₂D - S(ρ)`.
//!
//! ```
//! use wavicle::{capacity_report, path_interchange_representation, Ket, SearchConfig};
//!
//! let rep = path_interchange_representation();
//! let upper_path = Ket::basis(2, 0).unwrap().density();
//! let report = capacity_report(&rep, &upper_path, &SearchConfig::default()).unwrap();
//! assert!((report.i_asym_bound - 1.0).abs() < 1e-10);
//! assert!(report.i_sym_bound.abs() < 1e-10);
//! ```

pub mod composite;
pub mod error;
pub mod group;
pub mod info;
pub mod io;
pub mod linalg;
pub mod measures;
pub mod sampling;
pub mod scenarios;

pub use composite::{
    composite_capacity_report, correlated_symmetric_state, global_representation, local_action,
    local_asymmetry_overlap, reference_product, GlobalRep,
};
pub use error::{Error, Result};
pub use group::{
    builtin_irreps, path_interchange_representation, pauli_representation, reference_state, regular_representation,
    rep_in_irrep_basis, validate_group, validate_representation, BuiltinGroup, FiniteGroup, Irrep, IrrepSet,
    ReferenceFrame, RepClassification, RepKind, UnitaryRep,
};
pub use info::{
    accessible_info, accessible_info_commuting, accessible_info_search, asym_encoding_ensemble, capacity_bounds,
    capacity_report, capacity_report_with_encoders, holevo_chi, mutual_information, pretty_good_measurement,
    sym_encoding_ensemble, AccessMethod, AccessibleInfo, Achieved, CapacityReport, Ensemble, EnsembleMember, Povm,
    PovmElement, SearchConfig, SymEncodingAudit,
};
pub use linalg::{CMatrix, CVector, DensityOperator, Ket, Spectrum, C64};
pub use measures::{
    asymmetry, character_phase_encoders, check_g_invariant_unitary, is_symmetric_state, symmetry, twirl,
    GInvarianceVerdict,
};
pub use scenarios::{
    bell_basis, fringe_scan, interferometer_unitary, phase_grid, superdense_report, superdense_simulate,
    two_path_report, BellBasis, BellState, FringeData,
};
