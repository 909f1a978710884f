use super::{Case, Tracker, VerifyConfig};
use crate::linalg::{inner, CMatrix};
use crate::random::Sampler;
use crate::stabilizer::{
    magic_log, pauli_matrices, qubit_clifford_group, qubit_robustness, stabilizer_fidelity, weyl_operator,
    StabilizerSet,
};

pub(super) fn cases(cfg: &VerifyConfig) -> Vec<Case> {
    let n = cfg.samples.max(1);
    let mut s = Sampler::new(cfg.seed ^ 0x57ab);
    let qubit = StabilizerSet::new(2, 1).expect("supported");
    let qutrit = StabilizerSet::new(3, 1).expect("supported");
    let pair = StabilizerSet::new(2, 2).expect("supported");
    let cliffords = qubit_clifford_group();
    vec![
        count_case("qubit count = 6", qubit.len(), 6),
        count_case("qutrit count = 12", qutrit.len(), 12),
        count_case("two-qubit count = 60", pair.len(), two_qubit_count_formula(2)),
        count_case("qubit Clifford group order = 24", cliffords.len(), 24),
        weyl_covariance(&cliffords),
        overlap_structure("qubit overlaps squared in {0, 1/2}", &qubit, &[0.0, 0.5]),
        overlap_structure("qutrit overlaps squared in {0, 1/3}", &qutrit, &[0.0, 1.0 / 3.0]),
        pauli_stabilized(&pair),
        clifford_permutes(&qubit, &cliffords),
        robustness_fidelity(&mut s, &qubit, n),
        dmin_robustness(&mut s, &qubit, n),
        robustness_lp(&mut s, n),
    ]
}

/// `2^n prod_{k=1}^{n} (2^k + 1)` pure stabilizer states on `n` qubits.
fn two_qubit_count_formula(n: u32) -> usize {
    (1..=n).fold(1usize << n, |acc, k| acc * ((1usize << k) + 1))
}

fn count_case(name: &str, got: usize, want: usize) -> Case {
    let mut t = Tracker::new();
    t.flag(got == want);
    let mut c = t.finish(name, 0.0);
    c.detail = format!("got {got}, expected {want}");
    c
}

fn projector_distance(a: &CMatrix, b: &CMatrix) -> f64 {
    a.max_abs_diff(b)
}

/// Equal up to a global phase: `|Tr(A^dagger B)| = d`.
fn equal_up_to_phase(a: &CMatrix, b: &CMatrix) -> bool {
    let d = a.dim() as f64;
    let tr = a.adjoint().trace_product(b);
    (tr.norm() - d).abs() < 1e-9
}

fn weyl_covariance(cliffords: &[CMatrix]) -> Case {
    let mut t = Tracker::new();
    let weyl: Vec<CMatrix> = (0..2)
        .flat_map(|a| (0..2).map(move |b| weyl_operator(2, a, b).matrix))
        .collect();
    for v in cliffords {
        for w in &weyl {
            let image = w.conjugate_by(v);
            t.flag(weyl.iter().any(|x| equal_up_to_phase(&image, x)));
        }
    }
    t.finish("Clifford conjugation permutes Weyl operators", 0.0)
}

fn overlap_structure(name: &str, set: &StabilizerSet, allowed: &[f64]) -> Case {
    let mut t = Tracker::new();
    for i in 0..set.len() {
        for j in 0..set.len() {
            let o = inner(set.states[i].amplitudes(), set.states[j].amplitudes()).norm_sqr();
            if i == j {
                t.equal(o, 1.0);
            } else {
                t.record(allowed.iter().map(|a| (o - a).abs()).fold(f64::INFINITY, f64::min));
            }
        }
    }
    t.finish(name, 1e-10)
}

fn pauli_stabilized(set: &StabilizerSet) -> Case {
    let p = pauli_matrices();
    let paulis: Vec<CMatrix> = (0..4)
        .flat_map(|a| (0..4).map(move |b| (a, b)))
        .map(|(a, b)| p[a].kron(&p[b]))
        .collect();
    let mut t = Tracker::new();
    for psi in &set.states {
        let fixed: Vec<&CMatrix> = paulis
            .iter()
            .filter(|q| (inner(psi.amplitudes(), &q.apply(psi.amplitudes())).norm() - 1.0).abs() < 1e-10)
            .collect();
        let abelian = fixed.iter().all(|a| {
            fixed
                .iter()
                .all(|b| (&(*a * *b) - &(*b * *a)).max_abs_diff(&CMatrix::zeros(4)) < 1e-12)
        });
        t.flag(fixed.len() == 4 && abelian);
    }
    t.finish("each two-qubit state fixed by a 4-element abelian Pauli group", 0.0)
}

fn clifford_permutes(set: &StabilizerSet, cliffords: &[CMatrix]) -> Case {
    let projectors: Vec<CMatrix> = set.states.iter().map(|s| CMatrix::outer(s.amplitudes())).collect();
    let mut t = Tracker::new();
    for v in cliffords {
        let mut hit = vec![false; projectors.len()];
        let mut ok = true;
        for pr in &projectors {
            let image = pr.conjugate_by(v);
            match projectors.iter().position(|q| projector_distance(&image, q) < 1e-10) {
                Some(k) if !hit[k] => hit[k] = true,
                _ => ok = false,
            }
        }
        t.flag(ok && hit.iter().all(|&h| h));
    }
    t.finish("every qubit Clifford permutes the stabilizer projectors", 0.0)
}

fn robustness_fidelity(s: &mut Sampler, set: &StabilizerSet, n: usize) -> Case {
    let mut t = Tracker::new();
    for _ in 0..n {
        let psi = s.pure_state(2);
        let r = qubit_robustness(&psi.projector()).unwrap();
        let f = stabilizer_fidelity(&psi, set).unwrap();
        t.at_most(1.0 / (1.0 + r.value), f.fidelity);
    }
    t.finish("1/(1+R) at most the stabilizer fidelity", 1e-10)
}

fn dmin_robustness(s: &mut Sampler, set: &StabilizerSet, n: usize) -> Case {
    let mut t = Tracker::new();
    for _ in 0..n {
        let psi = s.pure_state(2);
        let r = qubit_robustness(&psi.projector()).unwrap();
        let f = stabilizer_fidelity(&psi, set).unwrap();
        t.at_most(f.d_min, magic_log(1.0 + r.value));
    }
    t.finish("min-relative entropy at most log(1+R)", 1e-10)
}

fn robustness_lp(s: &mut Sampler, n: usize) -> Case {
    let mut t = Tracker::new();
    for _ in 0..n {
        let rho = if s.uniform() < 0.5 {
            s.pure_state(2).projector()
        } else {
            s.density_matrix(2, 2).unwrap()
        };
        match qubit_robustness(&rho) {
            Ok(r) => t.equal(r.value, r.lp_value),
            Err(e) => t.error(e),
        }
    }
    t.finish("robustness closed form matches the LP", 1e-9)
}
