//! JSON file formats.
//!
//! Complex numbers are `[re, im]` pairs and angles are radians. Floats are
//! written in the shortest form that parses back to the same `f64`, so
//! `load(save(x)) == x` bit for bit.

use std::f64::consts::FRAC_PI_2;
use std::path::Path;

use num_complex::Complex64;
use serde::{de::DeserializeOwned, Deserialize, Serialize};
use spinor_pair::dynamics::{
    DriftFit, EvolutionReport, LocalHamiltonian, PhaseLedger, Schedule, Segment, TracePoint,
};
use spinor_pair::tolerance::EPS_DEGEN;
use spinor_pair::{AngleSet, LocalSpinor, PureState, Qubit, SpinorDecomposition};

use crate::error::CliError;

/// Deviations of `|psi|^2` from 1 up to this are fixed silently on load.
pub const RENORMALIZE_SILENT: f64 = 1e-9;
/// Up to this they are fixed with a warning; beyond it the file is rejected.
pub const RENORMALIZE_WARN: f64 = 1e-6;

/// Something a loader wants the user to know about.
#[derive(Debug, Clone, PartialEq)]
pub enum LoadNote {
    Renormalized { norm_sq: f64 },
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn complex([re, im]: [f64; 2]) -> Complex64 {
    Complex64::new(re, im)
}

fn all_finite(values: &[f64]) -> bool {
    values.iter().all(|v| v.is_finite())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub amplitudes: Vec<[f64; 2]>,
}

impl StateFile {
    pub fn from_state(psi: &PureState) -> Self {
        StateFile {
            amplitudes: psi.amplitudes().iter().copied().map(pair).collect(),
        }
    }

    /// Checks and normalizes the amplitudes. Exact states are kept as they
    /// are, so saving and loading changes nothing.
    pub fn to_state(&self) -> Result<(PureState, Option<LoadNote>), CliError> {
        let amps: [[f64; 2]; 4] = self.amplitudes.as_slice().try_into().map_err(|_| {
            CliError::parse(format!(
                "expected 4 amplitudes, found {}",
                self.amplitudes.len()
            ))
        })?;
        if !all_finite(amps.as_flattened()) {
            return Err(CliError::parse("non-finite amplitude"));
        }
        let amps = amps.map(complex);
        if let Ok(psi) = PureState::new(amps) {
            return Ok((psi, None));
        }
        let norm_sq: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        let deviation = (norm_sq - 1.0).abs();
        if deviation > RENORMALIZE_WARN {
            return Err(CliError::parse(format!(
                "amplitudes are not normalized: |psi|^2 = {norm_sq}"
            )));
        }
        let psi = PureState::normalized(amps).map_err(CliError::from)?;
        let note = (deviation > RENORMALIZE_SILENT).then_some(LoadNote::Renormalized { norm_sq });
        Ok((psi, note))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AngleFile {
    pub chi: f64,
    pub theta1: f64,
    pub phi1: f64,
    pub theta2: f64,
    pub phi2: f64,
    pub gamma: Option<f64>,
}

impl AngleFile {
    pub fn from_angles(a: &AngleSet) -> Self {
        AngleFile {
            chi: a.chi,
            theta1: a.theta1,
            phi1: a.phi1,
            theta2: a.theta2,
            phi2: a.phi2,
            gamma: a.gamma,
        }
    }

    pub fn to_angles(&self) -> Result<AngleSet, CliError> {
        let a = AngleSet {
            chi: self.chi,
            theta1: self.theta1,
            phi1: self.phi1,
            theta2: self.theta2,
            phi2: self.phi2,
            gamma: self.gamma,
        };
        a.validate().map_err(CliError::parse)?;
        Ok(a)
    }

    /// The state these angles describe. A missing `gamma` is only accepted
    /// for separable angles, where it is a global phase and taken as 0.
    pub fn to_state(&self) -> Result<PureState, CliError> {
        let mut a = self.to_angles()?;
        if a.gamma.is_none() {
            if a.chi >= EPS_DEGEN {
                return Err(CliError::parse(format!(
                    "gamma is null but chi = {} is not 0",
                    a.chi
                )));
            }
            a.gamma = Some(0.0);
        }
        Ok(spinor_pair::state_from_angles(&a))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpinorFile {
    pub chi: f64,
    pub spinor1: [[f64; 2]; 2],
    pub spinor2: [[f64; 2]; 2],
}

impl SpinorFile {
    pub fn from_decomposition(d: &SpinorDecomposition) -> Self {
        SpinorFile {
            chi: d.chi,
            spinor1: d.spinor1.components().map(pair),
            spinor2: d.spinor2.components().map(pair),
        }
    }

    pub fn to_decomposition(&self) -> Result<SpinorDecomposition, CliError> {
        if !self.chi.is_finite() || !(0.0..=FRAC_PI_2).contains(&self.chi) {
            return Err(CliError::parse(format!(
                "chi = {} outside [0, pi/2]",
                self.chi
            )));
        }
        let spinor = |c: [[f64; 2]; 2], name: &str| {
            LocalSpinor::new(complex(c[0]), complex(c[1]))
                .map_err(|e| CliError::parse(format!("{name}: {e}")))
        };
        Ok(SpinorDecomposition::new(
            self.chi,
            spinor(self.spinor1, "spinor1")?,
            spinor(self.spinor2, "spinor2")?,
        ))
    }
}

/// One piece of a schedule file. A file is a JSON array of these.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HamiltonianEntry {
    pub qubit: u8,
    pub h_i: f64,
    pub v: [f64; 3],
    pub duration: f64,
}

impl HamiltonianEntry {
    pub fn from_segment(qubit: Qubit, seg: &Segment) -> Self {
        HamiltonianEntry {
            qubit: qubit.index(),
            h_i: seg.hamiltonian.h_i,
            v: seg.hamiltonian.v,
            duration: seg.duration,
        }
    }
}

pub type HamiltonianFile = Vec<HamiltonianEntry>;

pub fn schedule_to_file(qubit: Qubit, schedule: &Schedule) -> HamiltonianFile {
    schedule
        .segments
        .iter()
        .map(|s| HamiltonianEntry::from_segment(qubit, s))
        .collect()
}

/// Checks every entry belongs to `qubit` and has a positive duration.
pub fn schedule_from_file(
    entries: &[HamiltonianEntry],
    qubit: Qubit,
) -> Result<Schedule, CliError> {
    let mut segments = Vec::with_capacity(entries.len());
    for (k, e) in entries.iter().enumerate() {
        if e.qubit != qubit.index() {
            return Err(CliError::parse(format!(
                "entry {k} is for qubit {} in the schedule of qubit {}",
                e.qubit,
                qubit.index()
            )));
        }
        if !all_finite(&[e.h_i, e.v[0], e.v[1], e.v[2], e.duration]) {
            return Err(CliError::parse(format!("entry {k} has a non-finite value")));
        }
        if e.duration <= 0.0 {
            return Err(CliError::parse(format!(
                "entry {k}: duration {} is not positive",
                e.duration
            )));
        }
        segments.push(Segment {
            hamiltonian: LocalHamiltonian::new(e.h_i, e.v),
            duration: e.duration,
        });
    }
    Ok(Schedule::new(segments))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LedgerRecord {
    pub beta1: f64,
    pub beta2: f64,
}

impl From<PhaseLedger> for LedgerRecord {
    fn from(l: PhaseLedger) -> Self {
        LedgerRecord {
            beta1: l.beta1,
            beta2: l.beta2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub time: f64,
    pub concurrence: f64,
    /// Absent at maximal entanglement.
    pub angles: Option<AngleFile>,
}

impl From<&TracePoint> for TraceRecord {
    fn from(p: &TracePoint) -> Self {
        TraceRecord {
            time: p.time,
            concurrence: p.concurrence,
            angles: p.angles.as_ref().map(AngleFile::from_angles),
        }
    }
}

/// Output of `evolve`. Fields belonging to a backend that was not run are
/// absent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvolutionRecord {
    pub backend: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub final_state_full: Option<StateFile>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub final_state_separable: Option<StateFile>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub final_spinors: Option<SpinorFile>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ledger: Option<LedgerRecord>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub max_component_deviation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub trace: Option<Vec<TraceRecord>>,
}

impl EvolutionRecord {
    pub fn from_report(report: &EvolutionReport) -> Self {
        EvolutionRecord {
            backend: "both".into(),
            final_state_full: Some(StateFile::from_state(&report.final_state_full)),
            final_state_separable: Some(StateFile::from_state(&report.final_state_separable)),
            final_spinors: Some(SpinorFile::from_decomposition(&report.final_decomposition)),
            ledger: Some(report.ledger.into()),
            max_component_deviation: Some(report.max_component_deviation),
            trace: report
                .trace
                .as_ref()
                .map(|t| t.iter().map(TraceRecord::from).collect()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DriftRecord {
    pub qubit: u8,
    pub energy: f64,
    pub slope: f64,
    pub intercept: f64,
    pub residual: f64,
    pub max_angle_drift: f64,
    pub times: Vec<f64>,
    pub gamma: Vec<f64>,
}

impl DriftRecord {
    pub fn new(qubit: Qubit, energy: f64, times: Vec<f64>, fit: DriftFit) -> Self {
        DriftRecord {
            qubit: qubit.index(),
            energy,
            slope: fit.slope,
            intercept: fit.intercept,
            residual: fit.residual,
            max_angle_drift: fit.max_angle_drift,
            times,
            gamma: fit.gamma,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub steps: usize,
    pub trials: usize,
    pub seed: u64,
    pub ns_per_step_full: f64,
    pub ns_per_step_separable: f64,
    pub speedup: f64,
    pub max_deviation: f64,
    /// `VALID` when `max_deviation < 1e-9`, else `INVALID`.
    pub status: String,
    /// `LOW_CONFIDENCE` below 1000 steps, else `NORMAL`.
    pub timing: String,
}

impl BenchReport {
    pub fn is_valid(&self) -> bool {
        self.status == "VALID"
    }
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("formats serialize infallibly");
    s.push('\n');
    s
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::parse(e.to_string()))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("cannot read {}: {e}", path.display())))?;
    from_json(&text)
}

/// Writes to `path`, or to standard output when `path` is `None`.
pub fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CliError::parse(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
