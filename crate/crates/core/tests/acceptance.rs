//! Acceptance criteria. Each criterion prints one PASS/FAIL line with the
//! measured error and runtime; the process exits non-zero if any fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use magic_jsd::gate_power::{boost_demo, gate_power, k_func, n_func, t_gate_fourth_root};
use magic_jsd::jsd::{jsd, jsd_prime, jsd_pure};
use magic_jsd::magic::{c_psi, magic_entropic, magic_relative, tradeoff_bound_check, tradeoff_constants};
use magic_jsd::scan::{example3_axes, scan_example1, Cell, GridSpec};
use magic_jsd::stabilizer::{phase_gate, qubit_clifford_group, qutrit_t_state};
use magic_jsd::verify::{self, Suite, VerifyConfig};
use magic_jsd::{ParamPair, PureState, Sampler, StabilizerSet};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn pp(a: f64, b: f64) -> ParamPair {
    ParamPair::new(a, b).expect("admissible parameters")
}

/// `alpha` in `(0, 2)` away from 1, `beta` in `(-3, 3)` away from 0.
fn sample_params(s: &mut Sampler) -> ParamPair {
    loop {
        let a = s.uniform_in(0.02, 1.98);
        let b = s.uniform_in(-3.0, 3.0);
        if (a - 1.0).abs() > 0.02 && b.abs() > 0.02 {
            return pp(a, b);
        }
    }
}

fn qutrit_overlap() -> Outcome {
    let set = StabilizerSet::new(3, 1).unwrap();
    let psi = qutrit_t_state();
    let start = Instant::now();
    let best = c_psi(&psi, &set).unwrap();
    let elapsed = start.elapsed();
    let expected = (1.0 + (2.0 * PI / 9.0).cos()) / 3.0;
    let err = (best.value - expected).abs();
    let ties_ok = best.ties == ["ψ_{0,0}", "ψ_{0,2}", "ψ_{2,2}"];
    let fast = elapsed < Duration::from_millis(1);
    outcome(
        err <= 1e-12 && ties_ok && fast,
        format!(
            "c = {:.12}, expected {:.12}, err {err:.3e}; witnesses {:?}; {elapsed:?}",
            best.value, expected, best.ties
        ),
    )
}

fn qutrit_formulas() -> Outcome {
    let set = StabilizerSet::new(3, 1).unwrap();
    let psi = qutrit_t_state();
    let cos = (2.0 * PI / 9.0).cos();
    let (l1, l2) = (2.0 / 3.0 + cos / 6.0, 1.0 / 3.0 - cos / 6.0);
    let start = Instant::now();
    let (mut formula_err, mut dual_err) = (0.0f64, 0.0f64);
    for (a, b) in GridSpec::example2().points() {
        let p = pp(a, b);
        let m_big = magic_entropic(&psi, p, &set).unwrap().value;
        let m_small = magic_relative(&psi, p, &set).unwrap().value;
        let denom = (1.0 - a) * b;
        let direct_big = ((l1.powf(a) + l2.powf(a)).powf(b) - 1.0) / denom;
        let direct_small = (1.0 - (l1.powf(2.0 - a) + l2.powf(2.0 - a)).powf(b)) / denom;
        formula_err = formula_err
            .max((m_big - direct_big).abs())
            .max((m_small - direct_small).abs());
        let reflected = magic_entropic(&psi, pp(2.0 - a, b), &set).unwrap().value;
        dual_err = dual_err.max((m_small - reflected).abs());
    }
    let elapsed = start.elapsed();
    outcome(
        formula_err <= 1e-10 && dual_err <= 1e-12 && elapsed < Duration::from_secs(5),
        format!("formula err {formula_err:.3e}, duality err {dual_err:.3e}; {elapsed:?}"),
    )
}

fn duality() -> Outcome {
    let mut s = Sampler::new(3);
    let params: Vec<ParamPair> = (0..20).map(|_| sample_params(&mut s)).collect();
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut failures = 0;
    for k in 0..1000 {
        let dim = 2 + k % 3;
        let (psi, phi) = (s.pure_state(dim), s.pure_state(dim));
        let (rho, sigma) = (psi.projector(), phi.projector());
        for &p in &params {
            match (jsd(&rho, &sigma, p), jsd_prime(&rho, &sigma, p.reflected().unwrap())) {
                (Ok(j), Ok(jp)) => worst = worst.max((j - jp).abs()),
                _ => failures += 1,
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        worst <= 1e-10 && failures == 0 && elapsed < Duration::from_secs(30),
        format!("20000 evaluations, worst {worst:.3e}, errors {failures}; {elapsed:?}"),
    )
}

fn closed_form_vs_brute_force() -> Outcome {
    let mut s = Sampler::new(4);
    let start = Instant::now();
    let mut worst = 0.0f64;
    for d in [2, 3] {
        let set = StabilizerSet::new(d, 1).unwrap();
        for _ in 0..1000 {
            let psi = s.pure_state(d);
            let below = pp(s.uniform_in(0.05, 0.95), s.uniform_in(-3.0, 3.0));
            let above = pp(s.uniform_in(1.05, 3.0), s.uniform_in(-3.0, 3.0));
            for p in [below, above] {
                let closed = magic_entropic(&psi, p, &set).unwrap().value;
                let brute = set
                    .states
                    .iter()
                    .map(|phi| jsd_pure(&psi, phi, p).unwrap())
                    .fold(f64::INFINITY, f64::min);
                worst = worst.max((closed - brute).abs());
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        worst <= 1e-10 && elapsed < Duration::from_secs(30),
        format!("4000 evaluations, worst {worst:.3e}; {elapsed:?}"),
    )
}

fn circular_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

fn bloch_bound() -> Outcome {
    let p = pp(0.5, 2.0);
    let grid = GridSpec::example1();
    let start = Instant::now();
    let table = scan_example1(p, &grid).unwrap();
    let num = |c: &Cell| match c {
        Cell::Num(x) => *x,
        Cell::Bool(_) => f64::NAN,
    };
    let best = table
        .rows
        .iter()
        .max_by(|a, b| num(&a[3]).total_cmp(&num(&b[3])))
        .unwrap();
    let (theta, phi, max_m) = (num(&best[0]), num(&best[1]), num(&best[3]));
    let (d_theta, d_phi) = (PI / 199.0, 2.0 * PI / 200.0);
    let t_theta = [(1.0 / 3f64.sqrt()).acos(), (-1.0 / 3f64.sqrt()).acos()];
    let near_t = t_theta.iter().any(|&tt| (theta - tt).abs() <= d_theta)
        && (0..4).any(|k| circular_gap(phi, PI / 4.0 + k as f64 * PI / 2.0) <= d_phi);

    let set = StabilizerSet::new(2, 1).unwrap();
    let directions = [
        (0.0, 0.0),
        (PI, 0.0),
        (PI / 2.0, 0.0),
        (PI / 2.0, PI),
        (PI / 2.0, PI / 2.0),
        (PI / 2.0, 3.0 * PI / 2.0),
    ];
    let stab_worst = directions
        .iter()
        .map(|&(t, f)| magic_entropic(&PureState::bloch(t, f), p, &set).unwrap().value.abs())
        .fold(0.0, f64::max);
    let elapsed = start.elapsed();
    outcome(
        (max_m - 0.459665).abs() <= 1e-3 && near_t && stab_worst <= 1e-10 && elapsed < Duration::from_secs(10),
        format!(
            "max M = {max_m:.6} at (theta {theta:.4}, phi {phi:.4}), near T direction: {near_t}; \
             stabilizer directions worst {stab_worst:.3e}; {elapsed:?}"
        ),
    )
}

fn boost() -> Outcome {
    let set = StabilizerSet::new(2, 1).unwrap();
    let (alphas, betas) = example3_axes(50, 50);
    let start = Instant::now();
    let (mut not_boosted, mut k_gap, mut k_zero) = (0, 0.0f64, 0.0f64);
    for &a in &alphas {
        for &b in &betas {
            let p = pp(a, b);
            let r = boost_demo(p, &set).unwrap();
            if !r.boosted {
                not_boosted += 1;
            }
            k_gap = k_gap.max((r.delta - r.power - k_func(PI / 64.0, p)).abs());
            k_zero = k_zero.max(k_func(0.0, p).abs());
        }
    }
    let elapsed = start.elapsed();
    let points = alphas.len() * betas.len();
    outcome(
        points == 2500 && not_boosted == 0 && k_gap <= 1e-10 && k_zero <= 1e-12 && elapsed < Duration::from_secs(10),
        format!("{points} points, {not_boosted} not boosted, K gap {k_gap:.3e}, K(0) {k_zero:.3e}; {elapsed:?}"),
    )
}

fn gate_anchors() -> Outcome {
    let set = StabilizerSet::new(2, 1).unwrap();
    let params = [pp(0.5, 2.0), pp(0.5, -2.0), pp(1.5, 2.0), pp(1.5, -2.0), pp(3.0, 0.5)];
    let start = Instant::now();
    let cliffords = qubit_clifford_group();
    let clifford_worst = cliffords
        .iter()
        .flat_map(|v| params.iter().map(move |&p| (v, p)))
        .map(|(v, p)| gate_power(v, p, &set).unwrap().value.abs())
        .fold(0.0, f64::max);
    let (mut quarter_c, mut quarter_v, mut t_c) = (0.0f64, 0.0f64, 0.0f64);
    for &p in &params {
        let r = gate_power(&t_gate_fourth_root(), p, &set).unwrap();
        quarter_c = quarter_c.max((r.c_u - (PI / 32.0).cos()).abs());
        quarter_v = quarter_v.max((r.value - n_func(PI / 64.0, p)).abs());
        let t = gate_power(&phase_gate(PI / 4.0), p, &set).unwrap();
        t_c = t_c.max((t.c_u - (PI / 8.0).cos()).abs());
    }
    let elapsed = start.elapsed();
    outcome(
        cliffords.len() == 24
            && clifford_worst <= 1e-12
            && quarter_c <= 1e-12
            && quarter_v <= 1e-12
            && t_c <= 1e-12
            && elapsed < Duration::from_secs(1),
        format!(
            "{} Cliffords worst {clifford_worst:.3e}; T^(1/4) C_U err {quarter_c:.3e}, value err {quarter_v:.3e}; \
             T C_U err {t_c:.3e}; {elapsed:?}",
            cliffords.len()
        ),
    )
}

fn robustness_tradeoff() -> Outcome {
    let mut s = Sampler::new(8);
    let start = Instant::now();
    let constants = tradeoff_constants();
    let residual = constants.residual().abs();
    let mut violations = Vec::new();
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..1000 {
        let psi = s.pure_state(2);
        for beta in [1.5, 2.0, 5.0] {
            for alpha in [0.5, 1.5, 3.0] {
                let c = tradeoff_bound_check(&psi, pp(alpha, beta), &constants).unwrap();
                worst = worst.max(c.lhs - c.rhs);
                if !c.ok && !violations.contains(&alpha) {
                    violations.push(alpha);
                }
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        residual <= 1e-12 && violations.is_empty() && elapsed < Duration::from_secs(10),
        format!(
            "lambda0 = {:.12}, residual {residual:.1e}, t0 = {:.6}; worst lhs - t0 = {worst:.6}, \
             violating alphas {violations:?}; {elapsed:?}",
            constants.lambda0, constants.t0
        ),
    )
}

fn projectors_permuted(set: &StabilizerSet, v: &magic_jsd::CMatrix) -> bool {
    let projectors: Vec<_> = set.states.iter().map(|s| s.projector()).collect();
    let mut used = vec![false; projectors.len()];
    projectors.iter().all(|p| {
        let image = p.conjugate_by(v).unwrap();
        let slot =
            (0..projectors.len()).find(|&j| !used[j] && image.matrix().max_abs_diff(projectors[j].matrix()) < 1e-10);
        slot.map(|j| used[j] = true).is_some()
    })
}

fn stabilizer_structure() -> Outcome {
    let start = Instant::now();
    let counts: Vec<usize> = [(2, 1), (3, 1), (2, 2)]
        .iter()
        .map(|&(d, n)| StabilizerSet::new(d, n).unwrap().len())
        .collect();
    let formula: usize = 4 * (2 + 1) * (4 + 1);
    let qubit = StabilizerSet::new(2, 1).unwrap();
    let cliffords = qubit_clifford_group();
    let permuting = cliffords.iter().filter(|v| projectors_permuted(&qubit, v)).count();
    let elapsed = start.elapsed();
    outcome(
        counts == [6, 12, formula] && formula == 60 && permuting == 24 && elapsed < Duration::from_secs(30),
        format!(
            "counts {counts:?}, two-qubit formula {formula}; {permuting}/{} Cliffords permute the projectors; {elapsed:?}",
            cliffords.len()
        ),
    )
}

fn property_suites() -> Outcome {
    let start = Instant::now();
    let report = verify::run(Suite::All, &VerifyConfig::default());
    let elapsed = start.elapsed();
    let failed: Vec<&str> = report
        .cases
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.name.as_str())
        .collect();
    outcome(
        report.all_passed() && elapsed < Duration::from_secs(180),
        format!(
            "{} passed, {} failed {failed:?}; {elapsed:?}",
            report.passed, report.failed
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(usize, fn() -> Outcome); 10] = [
        (1, qutrit_overlap),
        (2, qutrit_formulas),
        (3, duality),
        (4, closed_form_vs_brute_force),
        (5, bloch_bound),
        (6, boost),
        (7, gate_anchors),
        (8, robustness_tradeoff),
        (9, stabilizer_structure),
        (10, property_suites),
    ];
    let mut failed = 0;
    for (n, check) in criteria {
        let o = check();
        let verdict = if o.passed { "PASS" } else { "FAIL" };
        println!("criterion {n}: {verdict} ({})", o.detail);
        if !o.passed {
            failed += 1;
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
