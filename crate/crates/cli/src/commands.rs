//! The subcommands, minus argument parsing and file I/O.

use clap::ValueEnum;
use spinor_pair::dynamics::{
    compare_backends, evolve_full_schedule, evolve_separable_schedule, recombine, recurrence_drift,
    separate, Schedule,
};
use spinor_pair::{
    angles_or_separable, cross_check_gamma, decompose, reconstruct, sample_states, PureState,
    Qubit, SampleSpec,
};

use crate::error::CliError;
use crate::formats::{
    from_json, schedule_from_file, to_json, AngleFile, DriftRecord, EvolutionRecord,
    HamiltonianFile, LedgerRecord, LoadNote, SpinorFile, StateFile,
};

/// Agreement required of the two backends.
pub const BACKEND_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Representation {
    Amplitudes,
    Angles,
    Spinors,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Backend {
    Full,
    Separable,
    Both,
}

/// What a command produced: the text for `--out` or stdout, its exit status
/// and diagnostics meant for stderr.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub exit_code: i32,
    pub notes: Vec<String>,
}

impl Outcome {
    fn ok(text: String, notes: Vec<String>) -> Self {
        Outcome {
            text,
            exit_code: 0,
            notes,
        }
    }
}

fn note_text(note: LoadNote) -> String {
    match note {
        LoadNote::Renormalized { norm_sq } => {
            format!("warning: renormalized input state (|psi|^2 was {norm_sq})")
        }
    }
}

/// Parses a state given in any representation.
pub fn load_state(
    text: &str,
    from: Representation,
    notes: &mut Vec<String>,
) -> Result<PureState, CliError> {
    match from {
        Representation::Amplitudes => {
            let (psi, note) = from_json::<StateFile>(text)?.to_state()?;
            notes.extend(note.map(note_text));
            Ok(psi)
        }
        Representation::Angles => from_json::<AngleFile>(text)?.to_state(),
        Representation::Spinors => Ok(reconstruct(
            &from_json::<SpinorFile>(text)?.to_decomposition()?,
        )),
    }
}

fn render_state(
    psi: &PureState,
    to: Representation,
    cross_check: bool,
    notes: &mut Vec<String>,
) -> Result<String, CliError> {
    Ok(match to {
        Representation::Amplitudes => to_json(&StateFile::from_state(psi)),
        Representation::Spinors => to_json(&SpinorFile::from_decomposition(&decompose(psi))),
        Representation::Angles => {
            if cross_check {
                let check = cross_check_gamma(psi)?;
                notes.push(format!(
                    "closed-form sin(gamma) = {:.17e}, decomposition sin(gamma) = {:.17e}, difference {:.3e}",
                    check.closed_form_sine,
                    check.robust_sine,
                    check.discrepancy()
                ));
            }
            to_json(&AngleFile::from_angles(&angles_or_separable(psi)?))
        }
    })
}

/// `convert`: re-expresses a state. With `cross_check` the closed-form
/// recurrence is evaluated as well, which fails at separable, maximally
/// entangled and polar states.
pub fn convert(
    text: &str,
    from: Representation,
    to: Representation,
    cross_check: bool,
) -> Result<Outcome, CliError> {
    let mut notes = Vec::new();
    if from == to && !cross_check {
        // a pure re-serialization still validates
        let psi = load_state(text, from, &mut notes)?;
        let text = match from {
            Representation::Spinors => to_json(&from_json::<SpinorFile>(text)?),
            Representation::Angles => to_json(&from_json::<AngleFile>(text)?),
            Representation::Amplitudes => to_json(&StateFile::from_state(&psi)),
        };
        return Ok(Outcome::ok(text, notes));
    }
    let psi = load_state(text, from, &mut notes)?;
    let out = render_state(&psi, to, cross_check, &mut notes)?;
    Ok(Outcome::ok(out, notes))
}

/// `decompose`: amplitudes to a spinor file.
pub fn decompose_cmd(text: &str) -> Result<Outcome, CliError> {
    convert(
        text,
        Representation::Amplitudes,
        Representation::Spinors,
        false,
    )
}

fn load_schedule(text: Option<&str>, qubit: Qubit) -> Result<Schedule, CliError> {
    match text {
        None => Ok(Schedule::default()),
        Some(t) => schedule_from_file(&from_json::<HamiltonianFile>(t)?, qubit),
    }
}

/// `evolve`: runs one or both backends over the two schedules.
///
/// With `both`, the exit status is 1 unless the backends agree within
/// [`BACKEND_TOLERANCE`].
pub fn evolve(
    state: &str,
    schedule1: Option<&str>,
    schedule2: Option<&str>,
    backend: Backend,
    trace: bool,
) -> Result<Outcome, CliError> {
    let mut notes = Vec::new();
    let psi = load_state(state, Representation::Amplitudes, &mut notes)?;
    let s1 = load_schedule(schedule1, Qubit::First)?;
    let s2 = load_schedule(schedule2, Qubit::Second)?;
    let record = match backend {
        Backend::Both => {
            let report = compare_backends(&psi, &s1, &s2, trace);
            notes.push(format!(
                "max component deviation {:.3e}",
                report.max_component_deviation
            ));
            EvolutionRecord::from_report(&report)
        }
        Backend::Full => {
            let mut points = Vec::new();
            let out = evolve_full_schedule(&psi, &s1, &s2, trace.then_some(&mut points));
            EvolutionRecord {
                backend: "full".into(),
                final_state_full: Some(StateFile::from_state(&out)),
                final_state_separable: None,
                final_spinors: None,
                ledger: None,
                max_component_deviation: None,
                trace: trace.then(|| points.iter().map(Into::into).collect()),
            }
        }
        Backend::Separable => {
            let (d, ledger) = separate(&psi);
            let (d, ledger) = evolve_separable_schedule(&d, ledger, &s1, &s2);
            EvolutionRecord {
                backend: "separable".into(),
                final_state_full: None,
                final_state_separable: Some(StateFile::from_state(&recombine(&d, &ledger))),
                final_spinors: Some(SpinorFile::from_decomposition(&d)),
                ledger: Some(LedgerRecord::from(ledger)),
                max_component_deviation: None,
                trace: None,
            }
        }
    };
    let exit_code = match record.max_component_deviation {
        Some(dev) if dev.is_nan() || dev >= BACKEND_TOLERANCE => 1,
        _ => 0,
    };
    Ok(Outcome {
        text: to_json(&record),
        exit_code,
        notes,
    })
}

/// Drift mode of `evolve`: rotates `qubit` about its own Bloch axis and fits
/// `gamma(t)` on `points` equally spaced times in `[0, duration]`.
pub fn drift(
    state: &str,
    qubit: Qubit,
    energy: f64,
    points: usize,
    duration: f64,
) -> Result<Outcome, CliError> {
    if points < 2 || duration <= 0.0 || !duration.is_finite() {
        return Err(CliError::parse(
            "drift needs at least 2 points and a positive duration",
        ));
    }
    let mut notes = Vec::new();
    let psi = load_state(state, Representation::Amplitudes, &mut notes)?;
    let times: Vec<f64> = (0..points)
        .map(|k| duration * k as f64 / (points - 1) as f64)
        .collect();
    let fit = recurrence_drift(&psi, qubit, energy, &times)?;
    notes.push(format!(
        "slope {:.12} residual {:.3e}",
        fit.slope, fit.residual
    ));
    Ok(Outcome::ok(
        to_json(&DriftRecord::new(qubit, energy, times, fit)),
        notes,
    ))
}

/// `sample`: a JSON array of state files.
pub fn sample(count: usize, seed: u64, fixed_chi: Option<f64>) -> Result<Outcome, CliError> {
    let states = sample_states(&SampleSpec {
        count,
        seed,
        fixed_chi,
    })?;
    let files: Vec<StateFile> = states.iter().map(StateFile::from_state).collect();
    Ok(Outcome::ok(to_json(&files), Vec::new()))
}
