//! State and gate inputs: inline JSON, files, or a few named presets.

use std::f64::consts::PI;
use std::fs;
use std::path::Path;

use magic_jsd::linalg::CMatrix;
use magic_jsd::stabilizer::{hadamard, phase_gate, qutrit_t_state, t_type_state};
use magic_jsd::state::parse_matrix;
use magic_jsd::{AnyState, PureState};

use crate::Failure;

pub const STATE_PRESETS: &str = "0, 1, +, -, +i, -i, T, qutrit-T";
pub const GATE_PRESETS: &str = "I, H, S, T, T^1/2, T^1/4";

fn preset_state(name: &str) -> Option<PureState> {
    let basis = |k| PureState::basis(2, k);
    Some(match name {
        "0" | "|0>" => basis(0),
        "1" | "|1>" => basis(1),
        "+" | "|+>" => PureState::bloch(PI / 2.0, 0.0),
        "-" | "|->" => PureState::bloch(PI / 2.0, PI),
        "+i" | "|+i>" => PureState::bloch(PI / 2.0, PI / 2.0),
        "-i" | "|-i>" => PureState::bloch(PI / 2.0, 3.0 * PI / 2.0),
        "T" => t_type_state(0, 0),
        "qutrit-T" => qutrit_t_state(),
        _ => return None,
    })
}

fn preset_gate(name: &str) -> Option<CMatrix> {
    Some(match name {
        "I" => CMatrix::identity(2),
        "H" => hadamard(),
        "S" => phase_gate(PI / 2.0),
        "T" => phase_gate(PI / 4.0),
        "T^1/2" => phase_gate(PI / 8.0),
        "T^1/4" => phase_gate(PI / 16.0),
        _ => return None,
    })
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Resolves `--x` (inline JSON or preset name) or `--x-file`.
fn source(inline: Option<&str>, file: Option<&Path>, what: &str) -> Result<String, Failure> {
    match (inline, file) {
        (Some(_), Some(_)) => Err(Failure::Input(format!("give {what} inline or as a file, not both"))),
        (Some(s), None) => Ok(s.to_string()),
        (None, Some(p)) => read_file(p),
        (None, None) => Err(Failure::Input(format!("missing {what}"))),
    }
}

pub fn state(inline: Option<&str>, file: Option<&Path>, what: &str) -> Result<AnyState, Failure> {
    let text = source(inline, file, what)?;
    let trimmed = text.trim();
    if !trimmed.starts_with('{') {
        return preset_state(trimmed)
            .map(AnyState::Pure)
            .ok_or_else(|| Failure::Input(format!("{what}: unknown preset {trimmed:?} (known: {STATE_PRESETS})")));
    }
    AnyState::parse(trimmed).map_err(|e| Failure::Input(format!("{what}: {e}")))
}

pub fn gate(inline: Option<&str>, file: Option<&Path>) -> Result<CMatrix, Failure> {
    let text = source(inline, file, "unitary")?;
    let trimmed = text.trim();
    if !trimmed.starts_with('{') {
        return preset_gate(trimmed)
            .ok_or_else(|| Failure::Input(format!("unitary: unknown preset {trimmed:?} (known: {GATE_PRESETS})")));
    }
    parse_matrix(trimmed).map_err(|e| Failure::Input(format!("unitary: {e}")))
}
