use std::f64::consts::PI;

use super::{Case, Regimes, Tracker, VerifyConfig};
use crate::gate_power::{boost_demo, gate_power, k_func, n_func};
use crate::linalg::CMatrix;
use crate::params::ParamPair;
use crate::random::Sampler;
use crate::scan::example3_axes;
use crate::stabilizer::{hadamard, phase_gate, qubit_clifford_group, StabilizerSet};

pub(super) fn cases(cfg: &VerifyConfig) -> Vec<Case> {
    let n = cfg.samples.max(1);
    let mut s = Sampler::new(cfg.seed ^ 0x6761_7465);
    let qubit = StabilizerSet::new(2, 1).expect("supported");
    let pair = StabilizerSet::new(2, 2).expect("supported");
    let cliffords = qubit_clifford_group();
    vec![
        nonnegative(&mut s, &qubit, n),
        cliffords_have_no_power(&mut s, &qubit, &cliffords, n),
        t_family_positive(&qubit),
        clifford_sandwich(&mut s, &qubit, &cliffords, n),
        tensor_monotone(&mut s, &qubit, &pair, n),
        k_positive_on_grid(),
        k_vanishes_at_zero(),
        n_convex(),
        phase_gate_closed_form(&qubit),
        boost_on_grid(&qubit),
    ]
}

fn t_family() -> [CMatrix; 3] {
    [phase_gate(PI / 4.0), phase_gate(PI / 8.0), phase_gate(PI / 16.0)]
}

fn nonnegative(s: &mut Sampler, set: &StabilizerSet, n: usize) -> Case {
    let mut t = Tracker::new();
    for _ in 0..n {
        let p = Regimes::any(s);
        let u = s.unitary(2);
        match gate_power(&u, p, set) {
            Ok(r) => t.record(-r.value),
            Err(e) => t.error(e),
        }
    }
    t.finish("gate power nonnegative", 1e-12)
}

fn cliffords_have_no_power(s: &mut Sampler, set: &StabilizerSet, cliffords: &[CMatrix], n: usize) -> Case {
    let mut t = Tracker::new();
    let mut params: Vec<ParamPair> = Regimes::quadrants().to_vec();
    params.extend((0..n.min(50)).map(|_| Regimes::any(s)));
    for p in params {
        for v in cliffords {
            t.record(gate_power(v, p, set).unwrap().value.abs());
        }
    }
    t.finish("Clifford gates have zero power", 1e-12)
}

fn t_family_positive(set: &StabilizerSet) -> Case {
    let mut t = Tracker::new();
    for u in t_family() {
        for p in Regimes::quadrants() {
            t.record(1e-8 - gate_power(&u, p, set).unwrap().value);
        }
    }
    t.finish("T, T^(1/2), T^(1/4) have positive power", 0.0)
}

fn clifford_sandwich(s: &mut Sampler, set: &StabilizerSet, cliffords: &[CMatrix], n: usize) -> Case {
    let mut t = Tracker::new();
    let family = t_family();
    for k in 0..n {
        let p = Regimes::any(s);
        let u = if k % 2 == 0 {
            family[s.index(3)].clone()
        } else {
            s.unitary(2)
        };
        let (v1, v2) = (&cliffords[s.index(24)], &cliffords[s.index(24)]);
        let base = gate_power(&u, p, set).unwrap().value;
        let moved = gate_power(&(&(v1 * &u) * v2), p, set).unwrap().value;
        t.equal(moved, base);
    }
    t.finish("gate power invariant under Clifford sandwiches", 1e-10)
}

fn tensor_monotone(s: &mut Sampler, qubit: &StabilizerSet, pair: &StabilizerSet, n: usize) -> Case {
    let mut t = Tracker::new();
    let [a, b, c] = t_family();
    let gates = [a, b, c, hadamard()];
    for _ in 0..n.clamp(1, 20) {
        let p = Regimes::upper_monotone(s);
        for u1 in &gates {
            let single = gate_power(u1, p, qubit).unwrap().value;
            for u2 in &gates {
                let joint = gate_power(&u1.kron(u2), p, pair).unwrap().value;
                t.at_most(single, joint);
            }
        }
    }
    t.finish("gate power of a product at least that of a factor", 1e-10)
}

fn k_positive_on_grid() -> Case {
    let mut t = Tracker::new();
    let (alphas, betas) = example3_axes(50, 50);
    for &a in &alphas {
        for &b in &betas {
            let p = ParamPair::new(a, b).unwrap();
            t.flag(k_func(PI / 64.0, p) > 0.0);
        }
    }
    t.finish("K(pi/64) positive on the boost grid", 0.0)
}

fn k_vanishes_at_zero() -> Case {
    let mut t = Tracker::new();
    let (alphas, betas) = example3_axes(50, 50);
    for &a in &alphas {
        for &b in &betas {
            t.record(k_func(0.0, ParamPair::new(a, b).unwrap()).abs());
        }
    }
    t.finish("K(0) vanishes", 1e-12)
}

fn n_convex() -> Case {
    let mut t = Tracker::new();
    let h = 1e-4;
    for alpha in [1.05, 1.3, 1.5, 1.7, 1.95] {
        for beta in [-5.0, -1.0, -0.1, 0.1, 0.5, 0.9] {
            let p = ParamPair::new(alpha, beta).unwrap();
            for k in 1..400 {
                let x = PI / 16.0 * k as f64 / 400.0;
                let second = n_func(x + h, p) - 2.0 * n_func(x, p) + n_func(x - h, p);
                t.record(-second);
            }
        }
    }
    t.finish("N convex on (0, pi/16)", 1e-10)
}

fn phase_gate_closed_form(set: &StabilizerSet) -> Case {
    let mut t = Tracker::new();
    for k in 1..=100 {
        let delta = PI / 4.0 * k as f64 / 100.0;
        for p in Regimes::quadrants() {
            let r = gate_power(&phase_gate(delta), p, set).unwrap();
            t.equal(r.c_u, (delta / 2.0).cos());
            t.equal(r.value, n_func(r.c_u.acos() / 2.0, p));
        }
    }
    t.finish("phase-gate power matches its closed form", 1e-10)
}

fn boost_on_grid(set: &StabilizerSet) -> Case {
    let mut t = Tracker::new();
    let (alphas, betas) = example3_axes(50, 50);
    for &a in &alphas {
        for &b in &betas {
            let r = boost_demo(ParamPair::new(a, b).unwrap(), set).unwrap();
            t.flag(r.boosted);
            t.equal(r.delta - r.power, r.k_closed_form);
        }
    }
    t.finish("T^(1/4) boosts magic beyond its power on the grid", 1e-10)
}
