use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use wavicle::io::{complex_to_json, matrix_to_json, ComplexPair, MatrixJson};
use wavicle::linalg::{conjugate, max_abs_diff, Ket};
use wavicle::sampling::random_density;
use wavicle::scenarios::{SuperdenseOutcome, SuperdenseReport, TwoPathReport};
use wavicle::{
    bell_basis, capacity_bounds, capacity_report, global_representation, phase_grid, superdense_report,
    superdense_simulate, twirl, two_path_report, BellState, CapacityReport, DensityOperator, ReferenceFrame,
    SearchConfig, UnitaryRep,
};

use crate::error::{CliError, CliResult};
use crate::inputs::{load_group, load_irreps, load_rep, load_state, parse_priors};
use crate::report::{emit, write_file, RunManifest};
use crate::{AnalyzeArgs, GroupInfoArgs, ScenarioArgs, ScenarioName, VerifyArgs};

#[derive(Serialize)]
struct RepresentationInfo {
    dim: usize,
    kind: &'static str,
}

#[derive(Serialize)]
struct ReferenceStates {
    /// Columns are the reference states in element order.
    matrix: MatrixJson,
    #[serde(serialize_with = "wavicle::io::serialize_sig12")]
    gram_residual: f64,
    #[serde(serialize_with = "wavicle::io::serialize_sig12")]
    covariance_residual: f64,
}

#[derive(Serialize)]
struct GroupInfo {
    name: String,
    order: usize,
    abelian: bool,
    elements: Vec<String>,
    table: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    irrep_labels: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    irrep_dims: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    irreps_complete: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    character_table: Option<Vec<Vec<ComplexPair>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    representation: Option<RepresentationInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reference_states: Option<ReferenceStates>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reference_states_omitted: Option<String>,
}

fn kind(rep: &UnitaryRep) -> &'static str {
    if rep.is_ordinary() {
        "ordinary"
    } else {
        "projective"
    }
}

pub fn group_info(args: &GroupInfoArgs) -> CliResult<()> {
    let manifest = RunManifest::new("group-info", args.common.tol, args.common.out.as_deref())
        .input("group", Some(&args.group))
        .input("rep", args.rep.as_deref())
        .input("irreps", args.irreps.as_deref());
    let group = load_group(&args.group)?;
    let irreps = load_irreps(&group, args.irreps.as_deref(), args.common.tol)?;
    let rep = match &args.rep {
        Some(spec) => Some(load_rep(&group, Some(spec), irreps.as_ref(), args.common.tol)?),
        None => None,
    };

    let frame = match (&irreps, &rep) {
        (None, _) => Err(format!("no irreducible representations known for `{}`", group.name())),
        (Some(set), Some(rep)) => ReferenceFrame::for_rep(rep, set).map_err(|e| e.to_string()),
        (Some(set), None) => ReferenceFrame::from_irreps(set).map_err(|e| e.to_string()),
    };
    let (reference_states, reference_states_omitted) = match frame {
        Ok(f) => (
            Some(ReferenceStates {
                matrix: matrix_to_json(&f.matrix()),
                gram_residual: f.gram_residual(),
                covariance_residual: f.covariance_residual(),
            }),
            None,
        ),
        Err(why) => (None, Some(why)),
    };

    let info = GroupInfo {
        name: group.name().to_string(),
        order: group.order(),
        abelian: group.is_abelian(),
        elements: group.labels().to_vec(),
        table: group.table().to_vec(),
        irrep_labels: irreps.as_ref().map(|s| s.irreps().iter().map(|q| q.label.clone()).collect()),
        irrep_dims: irreps.as_ref().map(|s| s.dims()),
        irreps_complete: irreps.as_ref().map(|s| s.is_complete()),
        character_table: irreps
            .as_ref()
            .map(|s| s.character_table().iter().map(|row| row.iter().map(complex_to_json).collect()).collect()),
        representation: rep.as_ref().map(|r| RepresentationInfo { dim: r.dim(), kind: kind(r) }),
        reference_states,
        reference_states_omitted,
    };
    emit(&manifest, &info)
}

#[derive(Serialize)]
struct AnalyzeReport {
    group: String,
    copies: usize,
    representation: RepresentationInfo,
    capacity: CapacityReport,
}

pub fn analyze(args: &AnalyzeArgs) -> CliResult<()> {
    let manifest = RunManifest::new("analyze", args.common.tol, args.common.out.as_deref())
        .input("group", Some(&args.group))
        .input("rep", args.rep.as_deref())
        .input("irreps", args.irreps.as_deref())
        .input("state", Some(&args.state))
        .parameter("copies", args.copies)
        .seed(args.seed);
    let group = load_group(&args.group)?;
    let irreps = load_irreps(&group, args.irreps.as_deref(), args.common.tol)?;
    let base = load_rep(&group, args.rep.as_deref(), irreps.as_ref(), args.common.tol)?;
    let global = global_representation(&base, args.copies)?;
    let rho = load_state(&args.state, args.common.tol, |_| None)?;
    let cfg = SearchConfig { seed: args.seed, ..SearchConfig::default() };
    let report = AnalyzeReport {
        group: group.name().to_string(),
        copies: args.copies,
        representation: RepresentationInfo { dim: global.dim(), kind: kind(global.rep()) },
        capacity: capacity_report(global.rep(), &rho, &cfg)?,
    };
    emit(&manifest, &report)
}

fn named_path_state(name: &str) -> Option<DensityOperator> {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let amps = match name {
        "zero" => [1.0, 0.0],
        "one" => [0.0, 1.0],
        "plus" => [r, r],
        "minus" => [r, -r],
        _ => return None,
    };
    Ket::from_slice(&amps.map(|a| wavicle::linalg::c64(a, 0.))).ok().map(|k| k.density())
}

fn csv_path(args: &ScenarioArgs) -> PathBuf {
    match (&args.csv, &args.common.out) {
        (Some(csv), _) => PathBuf::from(csv),
        (None, Some(out)) => Path::new(out).with_extension("csv"),
        (None, None) => PathBuf::from("fringe.csv"),
    }
}

#[derive(Serialize)]
struct SuperdenseScenario {
    #[serde(skip_serializing_if = "Option::is_none")]
    simulation: Option<SuperdenseOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    simulation_omitted: Option<String>,
    analysis: SuperdenseReport,
}

pub fn scenario(args: &ScenarioArgs) -> CliResult<()> {
    let tol = args.common.tol;
    let cfg = SearchConfig { seed: args.seed, ..SearchConfig::default() };
    let manifest = RunManifest::new(&format!("scenario {}", args.name), tol, args.common.out.as_deref()).seed(args.seed);
    match args.name {
        ScenarioName::Interferometer => {
            let state = args.state.as_deref().unwrap_or("plus");
            let csv = csv_path(args);
            let manifest = manifest
                .input("state", Some(state))
                .parameter("phases", args.phases)
                .parameter("csv", csv.display().to_string());
            if args.priors.is_some() {
                return Err(CliError::Usage("--priors applies to the superdense scenario".into()));
            }
            let rho = load_state(state, tol, named_path_state)?;
            let report: TwoPathReport = two_path_report(&rho, &phase_grid(args.phases)?, &cfg)?;
            write_file(&csv, &report.fringe.to_csv())?;
            emit(&manifest, &report)
        }
        ScenarioName::Superdense => {
            let state = args.state.as_deref().unwrap_or("psi-");
            let priors = match &args.priors {
                Some(text) => parse_priors(text)?,
                None => vec![0.25; 4],
            };
            let manifest = manifest.input("state", Some(state)).parameter("priors", &priors);
            let basis = bell_basis();
            let named = |s: &str| s.parse::<BellState>().ok();
            let bell = match crate::inputs::resolve(state, "Bell state", named)? {
                crate::inputs::Source::Builtin(b) => Some(b),
                crate::inputs::Source::File(_) => None,
            };
            let rho = match bell {
                Some(b) => basis.state(b).density(),
                None => load_state(state, tol, |_| None)?,
            };
            let (simulation, simulation_omitted) = match bell {
                Some(b) => (Some(superdense_simulate(b, &priors)?), None),
                None => (None, Some("decoding is simulated only for a named Bell state".to_string())),
            };
            let report = SuperdenseScenario { simulation, simulation_omitted, analysis: superdense_report(&rho, &cfg)? };
            emit(&manifest, &report)
        }
    }
}

#[derive(Serialize)]
struct PropertyResult {
    name: &'static str,
    pass: bool,
    #[serde(serialize_with = "wavicle::io::serialize_sig12")]
    worst_residual: f64,
    #[serde(serialize_with = "wavicle::io::serialize_sig12")]
    threshold: f64,
}

#[derive(Serialize)]
struct VerifyReport {
    group: String,
    representation: RepresentationInfo,
    trials: usize,
    properties: Vec<PropertyResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reference_states_omitted: Option<String>,
    all_pass: bool,
}

pub fn verify(args: &VerifyArgs) -> CliResult<()> {
    let tol = args.common.tol;
    let manifest = RunManifest::new("verify", tol, args.common.out.as_deref())
        .input("group", Some(&args.group))
        .input("rep", args.rep.as_deref())
        .input("irreps", args.irreps.as_deref())
        .parameter("trials", args.trials)
        .seed(args.seed);
    if args.trials < 1 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let group = load_group(&args.group)?;
    let irreps = load_irreps(&group, args.irreps.as_deref(), tol)?;
    let rep = load_rep(&group, args.rep.as_deref(), irreps.as_ref(), tol)?;

    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let (mut duality, mut negativity, mut idempotence, mut invariance) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..args.trials {
        let rho = random_density(&mut rng, rep.dim());
        let r = capacity_bounds(&rep, &rho)?;
        duality = duality.max((r.i_asym_bound + r.i_sym_bound - r.budget).abs());
        negativity = negativity.max(-r.i_asym_bound.min(r.i_sym_bound));
        let once = twirl(&rep, &rho)?;
        idempotence = idempotence.max(max_abs_diff(twirl(&rep, &once)?.matrix(), once.matrix()));
        for t in rep.matrices() {
            invariance = invariance.max(max_abs_diff(&conjugate(t, once.matrix()), once.matrix()));
        }
    }
    let check = |name, worst: f64| PropertyResult { name, pass: worst <= tol, worst_residual: worst, threshold: tol };
    let mut properties = vec![
        check("duality_identity", duality),
        check("nonnegative_bounds", negativity.max(0.0)),
        check("twirl_idempotence", idempotence),
        check("twirl_invariance", invariance),
    ];
    let frame = match &irreps {
        Some(set) => ReferenceFrame::for_rep(&rep, set).map_err(|e| e.to_string()),
        None => Err(format!("no irreducible representations known for `{}`", group.name())),
    };
    let reference_states_omitted = match frame {
        Ok(f) => {
            properties.push(check("reference_orthonormality", f.gram_residual()));
            properties.push(check("reference_covariance", f.covariance_residual()));
            None
        }
        Err(why) => Some(why),
    };
    let all_pass = properties.iter().all(|p| p.pass);
    let failed: Vec<&str> = properties.iter().filter(|p| !p.pass).map(|p| p.name).collect();
    let report = VerifyReport {
        group: group.name().to_string(),
        representation: RepresentationInfo { dim: rep.dim(), kind: kind(&rep) },
        trials: args.trials,
        properties,
        reference_states_omitted,
        all_pass,
    };
    emit(&manifest, &report)?;
    if all_pass {
        Ok(())
    } else {
        Err(CliError::SweepFailed(failed.join(", ")))
    }
}
