//! Magic generating power of a unitary.
//!
//! The power is the largest magic `U` can produce from a stabilizer input.
//! It depends on `U` only through the min-max overlap
//! `C_U = min_{phi in S} max_{psi in S} |<psi|U|phi>|`, and pure stabilizer
//! inputs suffice because the stabilizer polytope is convex.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::entropy::{angular_power_sum, unified_from_power_sum};
use crate::error::{Error, Result};
use crate::jsd::jsd_pure_from_overlap;
use crate::linalg::{inner, CMatrix};
use crate::magic::magic_entropic;
use crate::params::ParamPair;
use crate::stabilizer::{phase_gate, StabilizerSet, TIE_TOL};
use crate::state::PureState;

pub const TOL_UNITARY: f64 = 1e-12;

#[derive(Debug, Clone, Serialize)]
pub struct GatePowerResult {
    pub value: f64,
    pub c_u: f64,
    pub worst_input_label: String,
    pub best_output_label: String,
    pub params: ParamPair,
}

/// Brute-force min-max over the enumerated stabilizer set.
pub fn gate_power(u: &CMatrix, p: ParamPair, set: &StabilizerSet) -> Result<GatePowerResult> {
    if u.dim() != set.dim() {
        return Err(Error::DimMismatch(u.dim(), set.dim()));
    }
    let defect = u.unitarity_defect();
    if defect > TOL_UNITARY {
        return Err(Error::NonUnitary(defect));
    }
    let images: Vec<Vec<C64>> = set.states.iter().map(|phi| u.apply(phi.amplitudes())).collect();
    // (best overlap, best output) per input
    let per_input: Vec<(f64, usize)> = images
        .iter()
        .map(|img| {
            let ov: Vec<f64> = set
                .states
                .iter()
                .map(|psi| inner(psi.amplitudes(), img).norm().min(1.0))
                .collect();
            let max = ov.iter().copied().fold(0.0, f64::max);
            let arg = ov.iter().position(|&o| o >= max - TIE_TOL).expect("nonempty");
            (max, arg)
        })
        .collect();
    let c_u = per_input.iter().map(|x| x.0).fold(f64::INFINITY, f64::min);
    let worst = per_input.iter().position(|x| x.0 <= c_u + TIE_TOL).expect("nonempty");
    Ok(GatePowerResult {
        value: jsd_pure_from_overlap(c_u, p),
        c_u,
        worst_input_label: set.labels[worst].clone(),
        best_output_label: set.labels[per_input[worst].1].clone(),
        params: p,
    })
}

/// `N(x) = g(w(x))`: magic of an equatorial qubit state whose best
/// stabilizer overlap is `cos x`.
pub fn n_func(x: f64, p: ParamPair) -> f64 {
    unified_from_power_sum(angular_power_sum(x, p.alpha()), p)
}

/// `K(x) = N(x + pi/32) - N(x) - N(pi/32)`
pub fn k_func(x: f64, p: ParamPair) -> f64 {
    n_func(x + PI / 32.0, p) - n_func(x, p) - n_func(PI / 32.0, p)
}

/// The fourth root of the T gate, `diag(1, e^{i pi/16})`.
pub fn t_gate_fourth_root() -> CMatrix {
    phase_gate(PI / 16.0)
}

/// `(|0> + e^{i pi/8}|1>)/sqrt 2`
pub fn boost_input_state() -> PureState {
    PureState::bloch(PI / 2.0, PI / 8.0)
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct BoostRecord {
    /// `M(U psi) - M(psi)`
    pub delta: f64,
    /// Generating power of `U`.
    pub power: f64,
    pub boosted: bool,
    /// `K(pi/64)` from the closed form.
    pub k_closed_form: f64,
    /// Largest gap between pipeline and closed-form values.
    pub closed_form_gap: f64,
}

/// Runs the magic-boosting demonstration for `U = T^{1/4}` on
/// `(|0> + e^{i pi/8}|1>)/sqrt 2` through the full pipeline and
/// cross-checks against `N` and `K`.
pub fn boost_demo(p: ParamPair, set: &StabilizerSet) -> Result<BoostRecord> {
    let u = t_gate_fourth_root();
    let psi = boost_input_state();
    let out = psi.evolve(&u)?;
    let m_in = magic_entropic(&psi, p, set)?.value;
    let m_out = magic_entropic(&out, p, set)?.value;
    let power = gate_power(&u, p, set)?.value;
    let delta = m_out - m_in;

    let gaps = [
        (m_in - n_func(PI / 32.0, p)).abs(),
        (m_out - n_func(3.0 * PI / 64.0, p)).abs(),
        (power - n_func(PI / 64.0, p)).abs(),
    ];
    Ok(BoostRecord {
        delta,
        power,
        boosted: delta > power,
        k_closed_form: k_func(PI / 64.0, p),
        closed_form_gap: gaps.into_iter().fold(0.0, f64::max),
    })
}
