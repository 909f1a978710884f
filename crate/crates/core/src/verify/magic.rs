use std::f64::consts::PI;

use super::{Case, Regimes, Tracker, VerifyConfig};
use crate::magic::{
    magic_entropic, magic_entropic_brute_force, magic_mixed_upper_bound_from_ensemble, magic_relative,
    magic_relative_brute_force, qubit_magic_bound, qubit_qmax, t_type_overlap, MixedBoundOptions,
};
use crate::params::ParamPair;
use crate::random::Sampler;
use crate::stabilizer::{qubit_clifford_group, qutrit_t_state, t_type_state, StabilizerSet};
use crate::state::{trace_distance, PureState};

pub(super) fn cases(cfg: &VerifyConfig) -> Vec<Case> {
    let n = cfg.samples.max(1);
    let mut s = Sampler::new(cfg.seed ^ 0x6d61_6769);
    let sets = [
        StabilizerSet::new(2, 1).expect("supported"),
        StabilizerSet::new(3, 1).expect("supported"),
        StabilizerSet::new(2, 2).expect("supported"),
    ];
    let grid = BlochGrid::new(200, 200);
    vec![
        vanishes_on_stabilizers(&sets),
        positive_on_magic_states(&sets),
        clifford_invariance(&mut s, &sets[0], n),
        mixed_bound_convexity(&mut s, &sets[0], n),
        tensor_with_stabilizer(&mut s, &sets[0], &sets[2], n),
        lipschitz(&mut s, &sets[0], n),
        duality(&mut s, &sets, n),
        grid_upper_bound(&grid, &sets[0]),
        grid_argmax_at_t_type(&grid, &sets[0]),
        grid_qmax_floor(&grid),
        closed_form_vs_brute_force(&mut s, &sets, n),
    ]
}

/// `theta` over `[0, pi]` inclusive, `phi` over `[0, 2 pi)`.
struct BlochGrid {
    thetas: Vec<f64>,
    phis: Vec<f64>,
}

impl BlochGrid {
    fn new(nt: usize, np: usize) -> Self {
        Self {
            thetas: (0..nt).map(|i| PI * i as f64 / (nt - 1) as f64).collect(),
            phis: (0..np).map(|j| 2.0 * PI * j as f64 / np as f64).collect(),
        }
    }

    fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.thetas
            .iter()
            .flat_map(move |&t| self.phis.iter().map(move |&p| (t, p)))
    }

    fn d_theta(&self) -> f64 {
        self.thetas[1] - self.thetas[0]
    }

    fn d_phi(&self) -> f64 {
        self.phis[1] - self.phis[0]
    }
}

fn grid_params() -> Vec<ParamPair> {
    [(0.5, 2.0), (0.5, -2.0), (1.5, 0.5), (1.5, -2.0), (3.0, 2.0), (1.9, 5.0)]
        .iter()
        .map(|&(a, b)| ParamPair::new(a, b).unwrap())
        .collect()
}

fn vanishes_on_stabilizers(sets: &[StabilizerSet]) -> Case {
    let mut t = Tracker::new();
    for set in sets {
        for phi in &set.states {
            for p in Regimes::quadrants() {
                t.record(magic_entropic(phi, p, set).unwrap().value.abs());
                t.record(magic_relative(phi, p, set).unwrap().value.abs());
            }
        }
    }
    t.finish("magic vanishes on stabilizer states", 1e-10)
}

fn positive_on_magic_states(sets: &[StabilizerSet]) -> Case {
    let mut t = Tracker::new();
    let mut states: Vec<(PureState, &StabilizerSet)> = Vec::new();
    for j in 0..2 {
        for k in 0..4 {
            states.push((t_type_state(j, k), &sets[0]));
        }
    }
    states.push((qutrit_t_state(), &sets[1]));
    for (psi, set) in &states {
        for p in Regimes::quadrants() {
            t.record(1e-6 - magic_entropic(psi, p, set).unwrap().value);
            t.record(1e-6 - magic_relative(psi, p, set).unwrap().value);
        }
    }
    t.finish("magic positive on T-type states", 0.0)
}

fn clifford_invariance(s: &mut Sampler, set: &StabilizerSet, n: usize) -> Case {
    let mut t = Tracker::new();
    let cliffords = qubit_clifford_group();
    for _ in 0..n {
        let p = Regimes::any(s);
        let psi = s.pure_state(2);
        let base = magic_entropic(&psi, p, set).unwrap().value;
        for v in &cliffords {
            t.equal(magic_entropic(&psi.evolve(v).unwrap(), p, set).unwrap().value, base);
        }
    }
    t.finish("magic invariant under Clifford unitaries", 1e-10)
}

fn mixed_bound_convexity(s: &mut Sampler, set: &StabilizerSet, n: usize) -> Case {
    let mut t = Tracker::new();
    for k in 0..n {
        let p = Regimes::any(s);
        let parts = 2 + s.index(3);
        let raw: Vec<f64> = (0..parts).map(|_| s.uniform() + 1e-3).collect();
        let total: f64 = raw.iter().sum();
        let ensemble: Vec<(f64, PureState)> = raw.iter().map(|w| (w / total, s.pure_state(2))).collect();
        let average: f64 = ensemble
            .iter()
            .map(|(w, psi)| w * magic_entropic(psi, p, set).unwrap().value)
            .sum();
        let opts = MixedBoundOptions {
            trials: 8,
            seed: k as u64,
            ..MixedBoundOptions::default()
        };
        match magic_mixed_upper_bound_from_ensemble(&ensemble, p, set, opts) {
            Ok(b) => t.at_most(b.value, average),
            Err(e) => t.error(e),
        }
    }
    t.finish("mixed-state bound below ensemble averages", 1e-9)
}

fn tensor_with_stabilizer(s: &mut Sampler, qubit: &StabilizerSet, pair: &StabilizerSet, n: usize) -> Case {
    let mut t = Tracker::new();
    for _ in 0..n {
        let p = Regimes::upper_monotone(s);
        let psi = s.pure_state(2);
        let sigma = &qubit.states[s.index(qubit.len())];
        let single = magic_entropic(&psi, p, qubit).unwrap().value;
        let joint = magic_entropic(&psi.tensor(sigma), p, pair).unwrap().value;
        t.equal(joint, single);
    }
    t.finish("magic unchanged by appending a stabilizer qubit", 1e-10)
}

fn lipschitz(s: &mut Sampler, set: &StabilizerSet, n: usize) -> Case {
    let mut t = Tracker::new();
    for _ in 0..n {
        let p = Regimes::lipschitz(s);
        let (a, b) = (s.pure_state(2), s.pure_state(2));
        let gap = (magic_entropic(&a, p, set).unwrap().value - magic_entropic(&b, p, set).unwrap().value).abs();
        let td = trace_distance(&a.projector(), &b.projector()).unwrap();
        t.at_most(gap, p.lipschitz_constant() * td);
    }
    t.finish("magic Lipschitz in trace distance", 1e-9)
}

fn duality(s: &mut Sampler, sets: &[StabilizerSet], n: usize) -> Case {
    let mut t = Tracker::new();
    for _ in 0..n {
        let p = Regimes::dual(s);
        let set = &sets[s.index(sets.len())];
        let psi = s.pure_state(set.dim());
        let m = magic_relative(&psi, p, set).unwrap().value;
        let big = magic_entropic(&psi, p.reflected().unwrap(), set).unwrap().value;
        t.equal(m, big);
    }
    t.finish("relative magic equals entropic magic at 2 - alpha", 1e-12)
}

fn grid_upper_bound(grid: &BlochGrid, set: &StabilizerSet) -> Case {
    let mut t = Tracker::new();
    for p in grid_params() {
        let bound = qubit_magic_bound(p);
        for (theta, phi) in grid.points() {
            let r = magic_entropic(&PureState::bloch(theta, phi), p, set).unwrap();
            t.at_most(r.value, bound);
            t.equal(r.c_psi, qubit_qmax(theta, phi));
        }
    }
    t.finish("qubit magic below the T-type bound on a Bloch grid", 1e-9)
}

fn grid_argmax_at_t_type(grid: &BlochGrid, set: &StabilizerSet) -> Case {
    let mut t = Tracker::new();
    let theta0 = (1.0 / 3f64.sqrt()).acos();
    let t_dirs: Vec<(f64, f64)> = [theta0, PI - theta0]
        .iter()
        .flat_map(|&th| (0..4).map(move |k| (th, (2 * k + 1) as f64 * PI / 4.0)))
        .collect();
    let circ = |a: f64, b: f64| {
        let d = (a - b).rem_euclid(2.0 * PI);
        d.min(2.0 * PI - d)
    };
    for p in grid_params() {
        let (mut best, mut arg) = (f64::NEG_INFINITY, (0.0, 0.0));
        for (theta, phi) in grid.points() {
            let v = magic_entropic(&PureState::bloch(theta, phi), p, set).unwrap().value;
            if v > best {
                best = v;
                arg = (theta, phi);
            }
        }
        let near = t_dirs
            .iter()
            .any(|&(th, ph)| (arg.0 - th).abs() <= grid.d_theta() && circ(arg.1, ph) <= grid.d_phi());
        t.flag(near);
    }
    t.finish("grid maximum sits next to a T-type direction", 0.0)
}

fn grid_qmax_floor(grid: &BlochGrid) -> Case {
    let mut t = Tracker::new();
    let floor = t_type_overlap();
    for (theta, phi) in grid.points() {
        t.at_most(floor, qubit_qmax(theta, phi));
    }
    t.finish("best stabilizer overlap never below the T-type value", 1e-12)
}

fn closed_form_vs_brute_force(s: &mut Sampler, sets: &[StabilizerSet], n: usize) -> Case {
    let mut t = Tracker::new();
    for k in 0..n {
        let p = if k % 2 == 0 {
            ParamPair::new(Regimes::alpha_below_one(s), Regimes::beta_in(s, -3.0, 3.0)).unwrap()
        } else {
            ParamPair::new(Regimes::alpha_above_one(s), Regimes::beta_in(s, -3.0, 3.0)).unwrap()
        };
        let set = &sets[s.index(2)];
        let psi = s.pure_state(set.dim());
        t.equal(
            magic_entropic(&psi, p, set).unwrap().value,
            magic_entropic_brute_force(&psi, p, set).unwrap(),
        );
        if p.alpha() < 2.0 {
            t.equal(
                magic_relative(&psi, p, set).unwrap().value,
                magic_relative_brute_force(&psi, p, set).unwrap(),
            );
        }
    }
    t.finish("overlap closed form equals brute-force minimum", 1e-10)
}
