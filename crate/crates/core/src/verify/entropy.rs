use super::{depolarize, Case, Regimes, Tracker, VerifyConfig};
use crate::entropy::{
    angular_power_sum, binary_power_sum, quantum_entropy, quantum_relative_entropy, tsallis_entropy, unified_entropy,
    unified_from_power_sum, ProbVector,
};
use crate::linalg::{eig_hermitian, matrix_power_on_support, CMatrix};
use crate::params::ParamPair;
use crate::random::Sampler;
use crate::state::{trace_distance, DensityMatrix};

pub(super) fn cases(cfg: &VerifyConfig) -> Vec<Case> {
    let n = cfg.samples.max(1);
    let mut s = Sampler::new(cfg.seed);
    vec![
        eig_reconstruction(&mut s, n),
        power_identity(&mut s, n),
        power_round_trip(&mut s, n),
        triangle_inequality(&mut s, n),
        tensor_associativity(&mut s, n),
        von_neumann_limit(&mut s, n),
        entropy_factorization(&mut s, n),
        unitary_invariance(&mut s, n),
        entropy_lipschitz(&mut s, n),
        relative_nonnegative(&mut s, n),
        relative_additivity(&mut s, n),
        relative_partial_trace(&mut s, n),
        relative_depolarizing(&mut s, n),
        relative_joint_convexity(&mut s, n),
        g_monotone(),
        g_convex(),
        f_monotone(),
        tsallis_in_alpha_above_one(),
        tsallis_in_alpha_below_one(),
        unified_in_beta(),
        w_decreasing(),
        w_concave(),
    ]
}

fn random_state(s: &mut Sampler, dim: usize) -> DensityMatrix {
    let rank = 1 + s.index(dim);
    s.density_matrix(dim, rank).expect("valid rank")
}

/// Full-rank state, so relative entropies stay finite.
fn full_rank(s: &mut Sampler, dim: usize) -> DensityMatrix {
    s.density_matrix(dim, dim).expect("valid rank")
}

fn eig_reconstruction(s: &mut Sampler, n: usize) -> Case {
    let mut t = Tracker::new();
    for _ in 0..n {
        let dim = 1 + s.index(9);
        let a = s.hermitian(dim);
        match eig_hermitian(&a) {
            Ok(spec) => {
                t.record(spec.reconstruct().max_abs_diff(&a));
                let v = &spec.eigenvectors;
                t.record((&v.adjoint() * v).max_abs_diff(&CMatrix::identity(dim)));
            }
            Err(e) => t.error(e),
        }
    }
    t.finish("eigendecomposition reconstructs", 1e-10)
}

fn power_identity(s: &mut Sampler, n: usize) -> Case {
    let mut t = Tracker::new();
    for _ in 0..n {
        let dim = 2 + s.index(3);
        let rho = random_state(s, dim);
        let one = matrix_power_on_support(rho.matrix(), 1.0).unwrap();
        t.record(one.max_abs_diff(rho.matrix()));
    }
    t.finish("support power with exponent one", 1e-12)
}

fn power_round_trip(s: &mut Sampler, n: usize) -> Case {
    let mut t = Tracker::new();
    for _ in 0..n {
        let dim = 2 + s.index(3);
        let rho = full_rank(s, dim);
        let m = rho.matrix();
        let sq = matrix_power_on_support(m, 2.0).unwrap();
        let back = matrix_power_on_support(&sq, 0.5).unwrap();
        t.record(back.max_abs_diff(m));
    }
    t.finish("support power round trip", 1e-9)
}

fn triangle_inequality(s: &mut Sampler, n: usize) -> Case {
    let mut t = Tracker::new();
    for _ in 0..n {
        let dim = 2 + s.index(3);
        let (a, b, c) = (random_state(s, dim), random_state(s, dim), random_state(s, dim));
        let ab = trace_distance(&a, &b).unwrap();
        let bc = trace_distance(&b, &c).unwrap();
        let ac = trace_distance(&a, &c).unwrap();
        t.at_most(ac, ab + bc);
    }
    t.finish("trace distance triangle inequality", 1e-10)
}

fn tensor_associativity(s: &mut Sampler, n: usize) -> Case {
    let mut t = Tracker::new();
    for _ in 0..n.min(200) {
        let (a, b, c) = (random_state(s, 2), random_state(s, 2), random_state(s, 2));
        let left = a.tensor(&b).tensor(&c);
        let right = a.tensor(&b.tensor(&c));
        t.record(left.matrix().max_abs_diff(right.matrix()));
    }
    t.finish("tensor associativity", 0.0)
}

fn von_neumann_limit(s: &mut Sampler, n: usize) -> Case {
    let mut t = Tracker::new();
    let lo = ParamPair::new(1.0 - 1e-5, 1.0).unwrap();
    let hi = ParamPair::new(1.0 + 1e-5, 1.0).unwrap();
    for _ in 0..n {
        let rho = random_state(s, 2);
        let vn: f64 = eig_hermitian(rho.matrix())
            .unwrap()
            .eigenvalues
            .iter()
            .filter(|&&l| l > 0.0)
            .map(|&l| -l * l.ln())
            .sum();
        let (below, above) = (quantum_entropy(&rho, lo), quantum_entropy(&rho, hi));
        t.at_most(above, vn + 1e-12);
        t.at_most(vn, below + 1e-12);
        t.equal(below, vn);
        t.equal(above, vn);
    }
    t.finish("alpha -> 1 recovers von Neumann entropy", 1e-3)
}

fn entropy_factorization(s: &mut Sampler, n: usize) -> Case {
    let mut t = Tracker::new();
    for k in 0..n {
        let p = Regimes::quadrants()[k % 4];
        let p = ParamPair::new(p.alpha() + s.uniform_in(-0.4, 0.4), p.beta() * s.uniform_in(0.2, 1.5)).unwrap();
        let db = 2 + s.index(2);
        let (a, b) = (random_state(s, 2), random_state(s, db));
        let (sa, sb) = (quantum_entropy(&a, p), quantum_entropy(&b, p));
        let joint = quantum_entropy(&a.tensor(&b), p);
        t.equal(joint, sa + sb + p.denominator() * sa * sb);
    }
    t.finish("entropy of a product factorizes", 1e-9)
}

fn unitary_invariance(s: &mut Sampler, n: usize) -> Case {
    let mut t = Tracker::new();
    for _ in 0..n {
        let p = Regimes::any(s);
        let dim = 2 + s.index(3);
        let (rho, sigma) = (random_state(s, dim), full_rank(s, dim));
        let u = s.unitary(dim);
        let (ru, su) = (rho.conjugate_by(&u).unwrap(), sigma.conjugate_by(&u).unwrap());
        t.equal(quantum_entropy(&ru, p), quantum_entropy(&rho, p));
        match (
            quantum_relative_entropy(&rho, &sigma, p),
            quantum_relative_entropy(&ru, &su, p),
        ) {
            (Ok(a), Ok(b)) => t.close(a.value, b.value),
            (Err(e), _) | (_, Err(e)) => t.error(e),
        }
    }
    t.finish("entropies are unitarily invariant", 1e-9)
}

fn entropy_lipschitz(s: &mut Sampler, n: usize) -> Case {
    let mut t = Tracker::new();
    for _ in 0..n {
        let p = Regimes::lipschitz(s);
        let dim = 2 + s.index(3);
        let (a, b) = (random_state(s, dim), random_state(s, dim));
        let gap = (quantum_entropy(&a, p) - quantum_entropy(&b, p)).abs();
        t.at_most(gap, p.lipschitz_constant() * trace_distance(&a, &b).unwrap());
    }
    t.finish("entropy Lipschitz bound", 1e-9)
}

fn relative_nonnegative(s: &mut Sampler, n: usize) -> Case {
    let mut t = Tracker::new();
    for _ in 0..n {
        let p = Regimes::any(s);
        let dim = 2 + s.index(3);
        let (rho, sigma) = (random_state(s, dim), full_rank(s, dim));
        match quantum_relative_entropy(&rho, &sigma, p) {
            Ok(d) => t.record(-d.value),
            Err(e) => t.error(e),
        }
        match quantum_relative_entropy(&rho, &rho, p) {
            Ok(d) => t.record(d.value.abs()),
            Err(e) => t.error(e),
        }
    }
    t.finish("relative entropy nonnegative, zero on equal states", 1e-10)
}

fn relative_additivity(s: &mut Sampler, n: usize) -> Case {
    let mut t = Tracker::new();
    for _ in 0..n {
        let p = Regimes::any(s);
        let (r1, s1) = (random_state(s, 2), full_rank(s, 2));
        let (r2, s2) = (random_state(s, 2), full_rank(s, 2));
        let d = |a: &DensityMatrix, b: &DensityMatrix| quantum_relative_entropy(a, b, p).map(|r| r.value);
        match (d(&r1, &s1), d(&r2, &s2), d(&r1.tensor(&r2), &s1.tensor(&s2))) {
            (Ok(d1), Ok(d2), Ok(d12)) => {
                let expected = d1 + d2 + (p.alpha() - 1.0) * p.beta() * d1 * d2;
                t.close(d12, expected);
            }
            (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => t.error(e),
        }
    }
    t.finish("relative entropy of products", 1e-9)
}

fn relative_partial_trace(s: &mut Sampler, n: usize) -> Case {
    let mut t = Tracker::new();
    for _ in 0..n {
        let p = Regimes::lower_monotone(s);
        let (rho, sigma) = (random_state(s, 4), full_rank(s, 4));
        let before = quantum_relative_entropy(&rho, &sigma, p);
        let after = quantum_relative_entropy(
            &rho.partial_trace_second(2, 2).unwrap(),
            &sigma.partial_trace_second(2, 2).unwrap(),
            p,
        );
        match (before, after) {
            (Ok(b), Ok(a)) => t.at_most(a.value, b.value),
            (Err(e), _) | (_, Err(e)) => t.error(e),
        }
    }
    t.finish("relative entropy shrinks under partial trace", 1e-9)
}

fn relative_depolarizing(s: &mut Sampler, n: usize) -> Case {
    let mut t = Tracker::new();
    for _ in 0..n {
        let p = Regimes::lower_monotone(s);
        let (rho, sigma) = (random_state(s, 2), full_rank(s, 2));
        let q = s.uniform();
        let before = quantum_relative_entropy(&rho, &sigma, p);
        let after = quantum_relative_entropy(&depolarize(&rho, q), &depolarize(&sigma, q), p);
        match (before, after) {
            (Ok(b), Ok(a)) => t.at_most(a.value, b.value),
            (Err(e), _) | (_, Err(e)) => t.error(e),
        }
    }
    t.finish("relative entropy shrinks under depolarizing", 1e-9)
}

fn relative_joint_convexity(s: &mut Sampler, n: usize) -> Case {
    let mut t = Tracker::new();
    for _ in 0..n {
        let p = Regimes::lower_monotone(s);
        let dim = 2 + s.index(2);
        let raw = [s.uniform() + 1e-3, s.uniform() + 1e-3, s.uniform() + 1e-3];
        let total: f64 = raw.iter().sum();
        let w: Vec<f64> = raw.iter().map(|x| x / total).collect();
        let rhos: Vec<DensityMatrix> = (0..3).map(|_| random_state(s, dim)).collect();
        let sigmas: Vec<DensityMatrix> = (0..3).map(|_| full_rank(s, dim)).collect();
        let mix = |xs: &[DensityMatrix]| {
            let parts: Vec<(f64, &DensityMatrix)> = w.iter().copied().zip(xs).collect();
            DensityMatrix::mixture(&parts).unwrap()
        };
        let lhs = quantum_relative_entropy(&mix(&rhos), &mix(&sigmas), p).map(|r| r.value);
        let rhs: Result<f64, _> = (0..3)
            .map(|j| quantum_relative_entropy(&rhos[j], &sigmas[j], p).map(|r| w[j] * r.value))
            .sum();
        match (lhs, rhs) {
            (Ok(l), Ok(r)) => t.at_most(l, r),
            (Err(e), _) | (_, Err(e)) => t.error(e),
        }
    }
    t.finish("relative entropy jointly convex", 1e-9)
}

const BETAS: [f64; 8] = [-5.0, -2.0, -0.5, 0.3, 0.8, 1.5, 2.0, 5.0];

fn g_monotone() -> Case {
    let mut t = Tracker::new();
    for alpha in [0.2, 0.5, 0.9, 1.1, 1.5, 3.0] {
        for beta in BETAS {
            let p = ParamPair::new(alpha, beta).unwrap();
            let sign = if alpha < 1.0 { 1.0 } else { -1.0 };
            for k in 1..400 {
                let (x0, x1) = (0.01 * k as f64, 0.01 * (k + 1) as f64);
                let step = unified_from_power_sum(x1, p) - unified_from_power_sum(x0, p);
                t.record(-sign * step);
            }
        }
    }
    t.finish("g monotone in x", -1e-15)
}

fn g_convex() -> Case {
    let mut t = Tracker::new();
    for alpha in [1.1, 1.5, 3.0] {
        for beta in [-5.0, -2.0, -0.5, 0.3, 0.8] {
            let p = ParamPair::new(alpha, beta).unwrap();
            let h = 1e-3;
            for k in 1..1000 {
                let x = 0.05 + 0.004 * k as f64;
                let second = unified_from_power_sum(x + h, p) - 2.0 * unified_from_power_sum(x, p)
                    + unified_from_power_sum(x - h, p);
                t.record(-second);
            }
        }
    }
    t.finish("g convex in x", 1e-10)
}

fn f_monotone() -> Case {
    let mut t = Tracker::new();
    for alpha in [0.2, 0.5, 0.9, 1.1, 1.5, 3.0] {
        let sign = if alpha < 1.0 { -1.0 } else { 1.0 };
        for k in 0..499 {
            let (l0, l1) = (0.5 + 0.001 * k as f64, 0.5 + 0.001 * (k + 1) as f64);
            t.record(-sign * (binary_power_sum(l1, alpha) - binary_power_sum(l0, alpha)));
        }
    }
    t.finish("f monotone on (1/2, 1)", -1e-15)
}

const LAMBDAS: [f64; 6] = [0.05, 0.2, 0.35, 0.5, 0.7, 0.9];

fn tsallis_in_alpha_above_one() -> Case {
    let mut t = Tracker::new();
    for l in LAMBDAS {
        for k in 0..200 {
            let (a0, a1) = (1.01 + 0.02 * k as f64, 1.01 + 0.02 * (k + 1) as f64);
            t.record(tsallis_entropy(l, a1) - tsallis_entropy(l, a0));
        }
    }
    t.finish("Tsallis entropy decreasing in alpha above 1", 0.0)
}

fn tsallis_in_alpha_below_one() -> Case {
    let mut t = Tracker::new();
    for l in LAMBDAS {
        for k in 0..98 {
            let (a0, a1) = (0.01 + 0.01 * k as f64, 0.01 + 0.01 * (k + 1) as f64);
            t.record(tsallis_entropy(l, a0) - tsallis_entropy(l, a1));
        }
    }
    t.finish("Tsallis entropy increasing in alpha below 1", 0.0)
}

fn unified_in_beta() -> Case {
    let mut t = Tracker::new();
    for l in LAMBDAS {
        let probs = ProbVector::new(vec![l, 1.0 - l]).unwrap();
        for alpha in [0.2, 0.5, 0.9, 1.1, 1.5, 3.0] {
            let sign = if alpha < 1.0 { 1.0 } else { -1.0 };
            for k in 0..200 {
                let (b0, b1) = (1.01 + 0.05 * k as f64, 1.01 + 0.05 * (k + 1) as f64);
                let h0 = unified_entropy(&probs, ParamPair::new(alpha, b0).unwrap());
                let h1 = unified_entropy(&probs, ParamPair::new(alpha, b1).unwrap());
                t.record(-sign * (h1 - h0));
            }
        }
    }
    t.finish("unified entropy monotone in beta above 1", 0.0)
}

fn w_decreasing() -> Case {
    let mut t = Tracker::new();
    let quarter = std::f64::consts::FRAC_PI_4;
    for alpha in [1.05, 1.3, 1.5, 1.7, 1.95] {
        for k in 0..499 {
            let (x0, x1) = (quarter * k as f64 / 500.0, quarter * (k + 1) as f64 / 500.0);
            let x0 = x0.max(1e-6);
            t.record(angular_power_sum(x1, alpha) - angular_power_sum(x0, alpha));
        }
    }
    t.finish("w decreasing on (0, pi/4)", -1e-15)
}

fn w_concave() -> Case {
    let mut t = Tracker::new();
    let top = std::f64::consts::PI / 16.0;
    let h = 1e-4;
    for alpha in [1.05, 1.3, 1.5, 1.7, 1.95] {
        for k in 1..=400 {
            let x = top * k as f64 / 400.0;
            let second = angular_power_sum(x + h, alpha) - 2.0 * angular_power_sum(x, alpha)
                + angular_power_sum((x - h).max(0.0), alpha);
            t.record(second);
        }
    }
    t.finish("w concave on (0, pi/16]", 1e-10)
}
