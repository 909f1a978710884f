use super::{depolarize, note, Case, Regimes, Tracker, VerifyConfig};
use crate::entropy::quantum_entropy;
use crate::jsd::{jsd, jsd_prime, jsd_prime_pure, jsd_pure};
use crate::params::ParamPair;
use crate::random::Sampler;
use crate::stabilizer::{qubit_clifford_group, StabilizerSet};
use crate::state::{trace_distance, DensityMatrix};

pub(super) fn cases(cfg: &VerifyConfig) -> Vec<Case> {
    let n = cfg.samples.max(1);
    let mut s = Sampler::new(cfg.seed ^ 0x006a_7364);
    vec![
        pure_duality(&mut s, n),
        closed_forms(&mut s, n),
        nonnegative(&mut s, n),
        upper_bound(&mut s, n),
        sign_gaps(&mut s, n),
        tensor_scaling(&mut s, n),
        unitary_and_symmetry(&mut s, n),
        lipschitz(&mut s, n),
        prime_faithful(&mut s, n),
        prime_tensor_invariance(&mut s, n),
        prime_data_processing(&mut s, n),
        prime_unitary_and_symmetry(&mut s, n),
        prime_joint_convexity(&mut s, n),
        clifford_images(&mut s, n),
    ]
}

fn random_state(s: &mut Sampler, dim: usize) -> DensityMatrix {
    let rank = 1 + s.index(dim);
    s.density_matrix(dim, rank).expect("valid rank")
}

fn pure_duality(s: &mut Sampler, n: usize) -> Case {
    let mut t = Tracker::new();
    for _ in 0..n {
        let p = Regimes::dual(s);
        let q = p.reflected().unwrap();
        let dim = 2 + s.index(3);
        let (psi, phi) = (s.pure_state(dim), s.pure_state(dim));
        t.equal(jsd_pure(&psi, &phi, p).unwrap(), jsd_prime_pure(&psi, &phi, q).unwrap());
    }
    t.finish("pure-state duality under alpha -> 2 - alpha", 1e-10)
}

fn closed_forms(s: &mut Sampler, n: usize) -> Case {
    let mut t = Tracker::new();
    for _ in 0..n {
        let p = Regimes::dual(s);
        let dim = 2 + s.index(3);
        let (psi, phi) = (s.pure_state(dim), s.pure_state(dim));
        let (a, b) = (psi.projector(), phi.projector());
        match (jsd(&a, &b, p), jsd_prime(&a, &b, p)) {
            (Ok(j), Ok(jp)) => {
                t.equal(j, jsd_pure(&psi, &phi, p).unwrap());
                t.equal(jp, jsd_prime_pure(&psi, &phi, p).unwrap());
            }
            (Err(e), _) | (_, Err(e)) => t.error(e),
        }
    }
    t.finish("pure closed forms match matrix evaluation", 1e-10)
}

/// `alpha in (0,1)` with `beta < 1`, or `alpha > 1` with `beta >= 1`.
fn positive_range(s: &mut Sampler) -> ParamPair {
    if s.uniform() < 0.5 {
        ParamPair::new(Regimes::alpha_below_one(s), Regimes::beta_in(s, -3.0, 0.99)).unwrap()
    } else {
        Regimes::lipschitz(s)
    }
}

fn nonnegative(s: &mut Sampler, n: usize) -> Case {
    let mut t = Tracker::new();
    for _ in 0..n {
        let p = positive_range(s);
        let dim = 2 + s.index(3);
        let (a, b) = (random_state(s, dim), random_state(s, dim));
        match jsd(&a, &b, p) {
            Ok(j) => t.record(-j),
            Err(e) => t.error(e),
        }
    }
    t.finish("entropic divergence nonnegative", 1e-10)
}

fn upper_bound(s: &mut Sampler, n: usize) -> Case {
    let mut t = Tracker::new();
    for _ in 0..n {
        let p = Regimes::lipschitz(s);
        let bound = (2f64.powf(1.0 - p.alpha() * p.beta()) - 1.0) / p.denominator();
        let dim = 2 + s.index(3);
        let (a, b) = if s.uniform() < 0.2 {
            let psi = s.pure_state(dim);
            let mut amps = s.pure_state(dim).amplitudes().to_vec();
            let c = crate::linalg::inner(psi.amplitudes(), &amps);
            for (x, y) in amps.iter_mut().zip(psi.amplitudes()) {
                *x -= c * y;
            }
            let phi = crate::state::PureState::normalized(amps).unwrap();
            (psi.projector(), phi.projector())
        } else {
            (random_state(s, dim), random_state(s, dim))
        };
        t.at_most(jsd(&a, &b, p).unwrap(), bound);
    }
    t.finish("entropic divergence upper bound", 1e-10)
}

type Draw = fn(&mut Sampler) -> ParamPair;

/// Frequency of negative values outside the positivity ranges. Recorded only.
fn sign_gaps(s: &mut Sampler, n: usize) -> Case {
    let regimes: [(&str, Draw); 3] = [
        ("alpha<1,beta>1", |s| {
            ParamPair::new(Regimes::alpha_below_one(s), s.uniform_in(1.01, 3.0)).unwrap()
        }),
        ("alpha>1,0<beta<1", |s| {
            ParamPair::new(Regimes::alpha_above_one(s), s.uniform_in(0.01, 0.99)).unwrap()
        }),
        ("alpha>1,beta<0", |s| {
            ParamPair::new(Regimes::alpha_above_one(s), s.uniform_in(-3.0, -0.01)).unwrap()
        }),
    ];
    let mut parts = Vec::new();
    for (name, draw) in regimes {
        let mut negative = 0;
        for _ in 0..n {
            let p = draw(s);
            let dim = 2 + s.index(3);
            let (a, b) = (random_state(s, dim), random_state(s, dim));
            if jsd(&a, &b, p).map(|j| j < -1e-10).unwrap_or(false) {
                negative += 1;
            }
        }
        parts.push(format!("{name}: {negative}/{n} negative"));
    }
    note("entropic divergence sign outside positivity ranges", parts.join("; "))
}

fn tensor_scaling(s: &mut Sampler, n: usize) -> Case {
    let mut t = Tracker::new();
    for _ in 0..n {
        let p = Regimes::any(s);
        let (a, b) = (random_state(s, 2), random_state(s, 2));
        let tau = random_state(s, 2);
        let base = jsd(&a, &b, p).unwrap();
        let scaled = jsd(&a.tensor(&tau), &b.tensor(&tau), p).unwrap();
        t.equal(scaled, (1.0 + p.denominator() * quantum_entropy(&tau, p)) * base);
        let pure = s.pure_state(2).projector();
        t.equal(jsd(&a.tensor(&pure), &b.tensor(&pure), p).unwrap(), base);
    }
    t.finish("entropic divergence under tensoring", 1e-9)
}

fn unitary_and_symmetry(s: &mut Sampler, n: usize) -> Case {
    let mut t = Tracker::new();
    for _ in 0..n {
        let p = Regimes::any(s);
        let dim = 2 + s.index(3);
        let (a, b) = (random_state(s, dim), random_state(s, dim));
        let u = s.unitary(dim);
        let j = jsd(&a, &b, p).unwrap();
        t.equal(
            jsd(&a.conjugate_by(&u).unwrap(), &b.conjugate_by(&u).unwrap(), p).unwrap(),
            j,
        );
        t.equal(jsd(&b, &a, p).unwrap(), j);
    }
    t.finish("entropic divergence unitary invariance and symmetry", 1e-10)
}

fn lipschitz(s: &mut Sampler, n: usize) -> Case {
    let mut t = Tracker::new();
    for _ in 0..n {
        let p = Regimes::lipschitz(s);
        let dim = 2 + s.index(3);
        let (a, a2, b) = (random_state(s, dim), random_state(s, dim), random_state(s, dim));
        let gap = (jsd(&a, &b, p).unwrap() - jsd(&a2, &b, p).unwrap()).abs();
        t.at_most(gap, p.lipschitz_constant() * trace_distance(&a, &a2).unwrap());
        let gap = (jsd(&b, &a, p).unwrap() - jsd(&b, &a2, p).unwrap()).abs();
        t.at_most(gap, p.lipschitz_constant() * trace_distance(&a, &a2).unwrap());
    }
    t.finish("entropic divergence Lipschitz in each slot", 1e-9)
}

fn prime_faithful(s: &mut Sampler, n: usize) -> Case {
    let mut t = Tracker::new();
    for _ in 0..n {
        let p = Regimes::lower_monotone(s);
        let dim = 2 + s.index(3);
        let (a, b) = (random_state(s, dim), random_state(s, dim));
        t.record(jsd_prime(&a, &a, p).unwrap().abs() - 1e-10);
        let jp = jsd_prime(&a, &b, p).unwrap();
        t.record(-jp - 1e-10);
        if trace_distance(&a, &b).unwrap() >= 1e-3 {
            t.record(1e-6 - jp);
        }
    }
    t.finish("relative divergence faithful", 0.0)
}

fn prime_tensor_invariance(s: &mut Sampler, n: usize) -> Case {
    let mut t = Tracker::new();
    for _ in 0..n {
        let p = Regimes::lower_monotone(s);
        let (a, b, tau) = (random_state(s, 2), random_state(s, 2), random_state(s, 2));
        let base = jsd_prime(&a, &b, p).unwrap();
        t.equal(jsd_prime(&a.tensor(&tau), &b.tensor(&tau), p).unwrap(), base);
    }
    t.finish("relative divergence unchanged by tensoring", 1e-9)
}

fn prime_data_processing(s: &mut Sampler, n: usize) -> Case {
    let mut t = Tracker::new();
    for _ in 0..n {
        let p = Regimes::lower_monotone(s);
        let (a, b) = (random_state(s, 4), random_state(s, 4));
        let before = jsd_prime(&a, &b, p).unwrap();
        let after = jsd_prime(
            &a.partial_trace_second(2, 2).unwrap(),
            &b.partial_trace_second(2, 2).unwrap(),
            p,
        )
        .unwrap();
        t.at_most(after, before);
        let (c, d) = (random_state(s, 2), random_state(s, 2));
        let q = s.uniform();
        t.at_most(
            jsd_prime(&depolarize(&c, q), &depolarize(&d, q), p).unwrap(),
            jsd_prime(&c, &d, p).unwrap(),
        );
    }
    t.finish("relative divergence data processing", 1e-9)
}

fn prime_unitary_and_symmetry(s: &mut Sampler, n: usize) -> Case {
    let mut t = Tracker::new();
    for _ in 0..n {
        let p = Regimes::lower_monotone(s);
        let dim = 2 + s.index(3);
        let (a, b) = (random_state(s, dim), random_state(s, dim));
        let u = s.unitary(dim);
        let j = jsd_prime(&a, &b, p).unwrap();
        t.equal(
            jsd_prime(&a.conjugate_by(&u).unwrap(), &b.conjugate_by(&u).unwrap(), p).unwrap(),
            j,
        );
        t.equal(jsd_prime(&b, &a, p).unwrap(), j);
    }
    t.finish("relative divergence unitary invariance and symmetry", 1e-9)
}

fn prime_joint_convexity(s: &mut Sampler, n: usize) -> Case {
    let mut t = Tracker::new();
    for _ in 0..n {
        let p = Regimes::lower_monotone(s);
        let dim = 2 + s.index(2);
        let w = s.uniform();
        let (a1, a2, b1, b2) = (
            random_state(s, dim),
            random_state(s, dim),
            random_state(s, dim),
            random_state(s, dim),
        );
        let a = DensityMatrix::mixture(&[(w, &a1), (1.0 - w, &a2)]).unwrap();
        let b = DensityMatrix::mixture(&[(w, &b1), (1.0 - w, &b2)]).unwrap();
        let rhs = w * jsd_prime(&a1, &b1, p).unwrap() + (1.0 - w) * jsd_prime(&a2, &b2, p).unwrap();
        t.at_most(jsd_prime(&a, &b, p).unwrap(), rhs);
    }
    t.finish("relative divergence jointly convex", 1e-9)
}

fn clifford_images(s: &mut Sampler, n: usize) -> Case {
    let mut t = Tracker::new();
    let cliffords = qubit_clifford_group();
    let set = StabilizerSet::new(2, 1).unwrap();
    for _ in 0..n {
        let p = Regimes::upper_monotone(s);
        let psi = s.pure_state(2);
        let phi = if s.uniform() < 0.5 {
            set.states[s.index(set.len())].clone()
        } else {
            s.pure_state(2)
        };
        let e = &cliffords[s.index(cliffords.len())];
        let before = jsd_pure(&psi, &phi, p).unwrap();
        let after = jsd_pure(&psi.evolve(e).unwrap(), &phi.evolve(e).unwrap(), p).unwrap();
        t.at_most(after, before);
    }
    t.finish("Clifford images do not increase the divergence", 1e-10)
}
