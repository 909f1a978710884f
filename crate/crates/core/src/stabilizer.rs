//! Stabilizer-formalism machinery for one qubit, one qutrit and two qubits.
//!
//! Pure stabilizer sets are enumerated explicitly: the six qubit states, the
//! twelve qutrit states (computational basis plus the nine
//! `(|0> + w^j|1> + w^k|2>)/sqrt 3`), and the sixty two-qubit states found by
//! exhausting the abelian Pauli stabilizer groups.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use minilp::{ComparisonOp, OptimizationDirection, Problem};
use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{inner, overlap_defect, CMatrix};
use crate::state::{DensityMatrix, PureState, PureStateJson};

/// Overlaps within this distance of the maximum count as ties.
pub const TIE_TOL: f64 = 1e-12;
/// Projector distance under which two enumerated states are the same.
pub const DEDUP_TOL: f64 = 1e-8;
/// Slack on the octahedron membership test `|r|_1 <= 1`.
pub const OCTAHEDRON_TOL: f64 = 1e-10;

/// Logarithm used for the min-relative entropy of magic (bits).
pub fn magic_log(x: f64) -> f64 {
    x.log2()
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Heisenberg-Weyl displacement `T_u = tau^{-u1 u2} Z^{u1} X^{u2}` with
/// `tau = e^{(d+1) pi i / d}`.
#[derive(Debug, Clone)]
pub struct WeylOperator {
    pub d: usize,
    pub u: (usize, usize),
    pub matrix: CMatrix,
}

pub fn weyl_operator(d: usize, u1: i64, u2: i64) -> WeylOperator {
    assert!(d >= 2, "Weyl operators need d >= 2");
    let di = d as i64;
    let a = u1.rem_euclid(di) as usize;
    let b = u2.rem_euclid(di) as usize;
    // tau has order dividing 2d; reduce the exponent there
    let tau_exp = (2 * d - (a * b) % (2 * d)) % (2 * d);
    let tau_pow = C64::from_polar(1.0, (d as f64 + 1.0) * PI / d as f64 * tau_exp as f64);
    let omega = |k: usize| C64::from_polar(1.0, 2.0 * PI * (k % d) as f64 / d as f64);
    let mut m = CMatrix::zeros(d);
    // Z^a X^b |k> = w^{a (k + b)} |k + b>
    for k in 0..d {
        let row = (k + b) % d;
        m[(row, k)] = tau_pow * omega(a * row);
    }
    WeylOperator {
        d,
        u: (a, b),
        matrix: m,
    }
}

/// Explicit list of pure stabilizer states.
#[derive(Debug, Clone)]
pub struct StabilizerSet {
    pub d: usize,
    pub n: usize,
    pub states: Vec<PureState>,
    pub labels: Vec<String>,
}

impl StabilizerSet {
    /// Supported systems: `(d, n)` in `{(2,1), (3,1), (2,2)}`.
    pub fn new(d: usize, n: usize) -> Result<Self> {
        match (d, n) {
            (2, 1) => Ok(qubit_set()),
            (3, 1) => Ok(qutrit_set()),
            (2, 2) => Ok(two_qubit_set()),
            _ => Err(Error::Unsupported { d, n }),
        }
    }

    pub fn dim(&self) -> usize {
        self.d.pow(self.n as u32)
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &PureState)> {
        self.labels.iter().map(String::as_str).zip(&self.states)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Export layout, entries sorted lexicographically by label.
    pub fn export(&self) -> StabilizerSetJson {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| self.labels[a].cmp(&self.labels[b]));
        let clean = |x: f64| if x == 0.0 { 0.0 } else { x };
        StabilizerSetJson {
            d: self.d,
            n: self.n,
            states: order
                .iter()
                .map(|&i| {
                    let j = self.states[i].to_json();
                    PureStateJson {
                        dim: j.dim,
                        amps: j.amps.iter().map(|&[re, im]| [clean(re), clean(im)]).collect(),
                    }
                })
                .collect(),
            labels: order.iter().map(|&i| self.labels[i].clone()).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StabilizerSetJson {
    pub d: usize,
    pub n: usize,
    pub states: Vec<PureStateJson>,
    pub labels: Vec<String>,
}

fn qubit_set() -> StabilizerSet {
    let h = FRAC_1_SQRT_2;
    let raw: [(&str, [C64; 2]); 6] = [
        ("|0⟩", [c(1.0, 0.0), c(0.0, 0.0)]),
        ("|1⟩", [c(0.0, 0.0), c(1.0, 0.0)]),
        ("|+⟩", [c(h, 0.0), c(h, 0.0)]),
        ("|-⟩", [c(h, 0.0), c(-h, 0.0)]),
        ("|+i⟩", [c(h, 0.0), c(0.0, h)]),
        ("|-i⟩", [c(h, 0.0), c(0.0, -h)]),
    ];
    StabilizerSet {
        d: 2,
        n: 1,
        labels: raw.iter().map(|(l, _)| l.to_string()).collect(),
        states: raw
            .iter()
            .map(|(_, a)| PureState::new(a.to_vec()).expect("unit vectors"))
            .collect(),
    }
}

fn qutrit_set() -> StabilizerSet {
    let mut labels = Vec::with_capacity(12);
    let mut states = Vec::with_capacity(12);
    for m in 0..3 {
        labels.push(format!("|{m}⟩"));
        states.push(PureState::basis(3, m));
    }
    let r = 1.0 / 3f64.sqrt();
    let omega = |k: usize| C64::from_polar(r, 2.0 * PI * k as f64 / 3.0);
    for j in 0..3 {
        for k in 0..3 {
            labels.push(format!("ψ_{{{j},{k}}}"));
            states.push(PureState::new(vec![c(r, 0.0), omega(j), omega(k)]).expect("unit vector"));
        }
    }
    StabilizerSet {
        d: 3,
        n: 1,
        states,
        labels,
    }
}

/// Single-qubit Paulis in the order I, X, Y, Z.
pub fn pauli_matrices() -> [CMatrix; 4] {
    let z0 = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    let mk = |rows: [[C64; 2]; 2]| CMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).expect("2x2");
    [
        CMatrix::identity(2),
        mk([[z0, one], [one, z0]]),
        mk([[z0, c(0.0, -1.0)], [c(0.0, 1.0), z0]]),
        mk([[one, z0], [z0, -one]]),
    ]
}

const PAULI_NAMES: [char; 4] = ['I', 'X', 'Y', 'Z'];

struct TwoQubitPauli {
    name: String,
    matrix: CMatrix,
}

fn two_qubit_paulis() -> Vec<TwoQubitPauli> {
    let p = pauli_matrices();
    let mut out = Vec::with_capacity(16);
    for a in 0..4 {
        for b in 0..4 {
            out.push(TwoQubitPauli {
                name: format!("{}{}", PAULI_NAMES[a], PAULI_NAMES[b]),
                matrix: p[a].kron(&p[b]),
            });
        }
    }
    out
}

/// Writes `m` as `sign * P` for a two-qubit Pauli `P`.
fn signed_pauli_name(m: &CMatrix, paulis: &[TwoQubitPauli]) -> String {
    for p in paulis {
        let t = p.matrix.trace_product(m) / 4.0;
        if (t.norm() - 1.0).abs() < 1e-9 {
            let sign = if t.re > 0.0 { '+' } else { '-' };
            return format!("{sign}{}", p.name);
        }
    }
    unreachable!("product of Paulis is a signed Pauli")
}

fn two_qubit_set() -> StabilizerSet {
    let paulis = two_qubit_paulis();
    let id = CMatrix::identity(4);
    let mut states: Vec<PureState> = Vec::new();
    let mut projectors: Vec<CMatrix> = Vec::new();
    let mut labels = Vec::new();

    for i in 1..16 {
        for j in i + 1..16 {
            let (p, q) = (&paulis[i].matrix, &paulis[j].matrix);
            let pq = p * q;
            if pq.max_abs_diff(&(q * p)) > 1e-12 {
                continue;
            }
            for (s1, s2) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                let g1 = p.scale_real(s1);
                let g2 = q.scale_real(s2);
                let g3 = pq.scale_real(s1 * s2);
                if g3.max_abs_diff(&id.scale_real(-1.0)) < 1e-12 {
                    continue;
                }
                let proj = (&(&id + &g1) * &(&id + &g2)).scale_real(0.25);
                if projectors.iter().any(|e| e.max_abs_diff(&proj) <= DEDUP_TOL) {
                    continue;
                }
                let col = (0..4)
                    .max_by(|&a, &b| proj[(a, a)].re.total_cmp(&proj[(b, b)].re))
                    .expect("nonempty");
                let v: Vec<C64> = (0..4).map(|r| proj[(r, col)]).collect();
                let psi = PureState::normalized(v).expect("rank-one projector").canonical_phase();
                let mut names: Vec<String> = [&g1, &g2, &g3].iter().map(|g| signed_pauli_name(g, &paulis)).collect();
                names.sort_by(|a, b| a[1..].cmp(&b[1..]));
                labels.push(names.join(","));
                states.push(psi);
                projectors.push(proj);
            }
        }
    }
    StabilizerSet {
        d: 2,
        n: 2,
        states,
        labels,
    }
}

/// `|T_{j,k}> = cos(t_j/2)|0> + e^{i p_k} sin(t_j/2)|1>` with
/// `t_0 = arccos(1/sqrt 3)`, `t_1 = pi - t_0`, `p_k = (2k+1) pi / 4`.
pub fn t_type_state(j: usize, k: usize) -> PureState {
    assert!(j < 2 && k < 4, "T-type index out of range");
    let theta0 = (1.0 / 3f64.sqrt()).acos();
    let theta = if j == 0 { theta0 } else { PI - theta0 };
    let phi = (2 * k + 1) as f64 * PI / 4.0;
    PureState::bloch(theta, phi)
}

/// `(e^{2 pi i/9}|0> + |1> + e^{-2 pi i/9}|2>) / sqrt 3`
pub fn qutrit_t_state() -> PureState {
    let r = 1.0 / 3f64.sqrt();
    PureState::new(vec![
        C64::from_polar(r, 2.0 * PI / 9.0),
        c(r, 0.0),
        C64::from_polar(r, -2.0 * PI / 9.0),
    ])
    .expect("unit vector")
}

/// Canonical representative of `u` modulo global phase.
fn canonical_unitary(u: &CMatrix) -> CMatrix {
    let n = u.dim();
    let lead = (0..n * n)
        .map(|k| u[(k / n, k % n)])
        .find(|z| z.norm() > 1e-9)
        .expect("nonzero matrix");
    u.scale(lead.conj() / lead.norm())
}

/// Hadamard gate.
pub fn hadamard() -> CMatrix {
    let h = FRAC_1_SQRT_2;
    CMatrix::from_rows(vec![vec![c(h, 0.0), c(h, 0.0)], vec![c(h, 0.0), c(-h, 0.0)]]).expect("2x2")
}

/// `diag(1, e^{i delta})`
pub fn phase_gate(delta: f64) -> CMatrix {
    CMatrix::from_diag(&[c(1.0, 0.0), C64::from_polar(1.0, delta)])
}

/// The 24 single-qubit Cliffords modulo phase, by closing `<H, S>`.
/// Element 0 is the identity; the rest follow breadth-first order.
pub fn qubit_clifford_group() -> Vec<CMatrix> {
    let gens = [hadamard(), phase_gate(PI / 2.0)];
    let mut group = vec![CMatrix::identity(2)];
    let mut frontier = 0;
    while frontier < group.len() {
        let g = group[frontier].clone();
        for h in &gens {
            let cand = canonical_unitary(&(h * &g));
            if !group.iter().any(|e| e.max_abs_diff(&cand) < 1e-9) {
                group.push(cand);
            }
        }
        frontier += 1;
    }
    group
}

/// Bloch vector `(Tr rho X, Tr rho Y, Tr rho Z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlochVector {
    pub r: [f64; 3],
}

impl BlochVector {
    pub fn l1(&self) -> f64 {
        self.r.iter().map(|x| x.abs()).sum()
    }

    pub fn l2(&self) -> f64 {
        self.r.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

pub fn bloch_vector(rho: &DensityMatrix) -> Result<BlochVector> {
    if rho.dim() != 2 {
        return Err(Error::DimMismatch(rho.dim(), 2));
    }
    let p = pauli_matrices();
    let m = rho.matrix();
    Ok(BlochVector {
        r: [
            m.trace_product(&p[1]).re,
            m.trace_product(&p[2]).re,
            m.trace_product(&p[3]).re,
        ],
    })
}

/// Membership in the Bloch octahedron `|r_x| + |r_y| + |r_z| <= 1`.
pub fn qubit_is_stabilizer(rho: &DensityMatrix) -> Result<bool> {
    Ok(bloch_vector(rho)?.l1() <= 1.0 + OCTAHEDRON_TOL)
}

/// Robustness of magic of a qubit state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Robustness {
    /// `max(0, (|r|_1 - 1) / 2)`
    pub value: f64,
    /// Optimum of the linear program over the six octahedron vertices.
    pub lp_value: f64,
    /// Closed form and LP agree within `1e-9`.
    pub certified: bool,
}

/// Robustness of magic `min { s >= 0 : (rho + s sigma)/(1+s) in STAB }`.
///
/// The LP writes `r = sum_i (x_i - y_i) v_i` with `sum x - sum y = 1`,
/// `x, y >= 0` over the octahedron vertices `v_i = +-e_k`, and minimizes
/// `s = sum y`.
pub fn qubit_robustness(rho: &DensityMatrix) -> Result<Robustness> {
    let r = bloch_vector(rho)?;
    let value = ((r.l1() - 1.0) / 2.0).max(0.0);
    let lp_value = robustness_lp(&r)?;
    Ok(Robustness {
        value,
        lp_value,
        certified: (lp_value - value).abs() <= 1e-9,
    })
}

fn robustness_lp(r: &BlochVector) -> Result<f64> {
    let vertices: [[f64; 3]; 6] = [
        [1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, -1.0, 0.0],
        [0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0],
    ];
    let mut lp = Problem::new(OptimizationDirection::Minimize);
    let x: Vec<_> = (0..6).map(|_| lp.add_var(0.0, (0.0, f64::INFINITY))).collect();
    let y: Vec<_> = (0..6).map(|_| lp.add_var(1.0, (0.0, f64::INFINITY))).collect();
    let mut norm_row: Vec<_> = x.iter().map(|&v| (v, 1.0)).collect();
    norm_row.extend(y.iter().map(|&v| (v, -1.0)));
    lp.add_constraint(norm_row.as_slice(), ComparisonOp::Eq, 1.0);
    for axis in 0..3 {
        let mut row = Vec::new();
        for (i, v) in vertices.iter().enumerate() {
            if v[axis] != 0.0 {
                row.push((x[i], v[axis]));
                row.push((y[i], -v[axis]));
            }
        }
        lp.add_constraint(row.as_slice(), ComparisonOp::Eq, r.r[axis]);
    }
    let sol = lp.solve().map_err(|e| Error::Lp(e.to_string()))?;
    Ok(sol.objective())
}

/// Best overlap of a pure state with a stabilizer set.
#[derive(Debug, Clone, PartialEq)]
pub struct MaxOverlap {
    /// `max |<psi|phi>|`
    pub value: f64,
    /// `1 - value`, computed without cancellation.
    pub defect: f64,
    /// Lowest index within `TIE_TOL` of the maximum.
    pub index: usize,
    pub label: String,
    /// Every index within `TIE_TOL` of the maximum.
    pub ties: Vec<usize>,
}

pub fn max_overlap(psi: &PureState, set: &StabilizerSet) -> Result<MaxOverlap> {
    if psi.dim() != set.dim() {
        return Err(Error::DimMismatch(psi.dim(), set.dim()));
    }
    let overlaps: Vec<f64> = set
        .states
        .iter()
        .map(|phi| inner(phi.amplitudes(), psi.amplitudes()).norm().min(1.0))
        .collect();
    let value = overlaps.iter().copied().fold(0.0, f64::max);
    let ties: Vec<usize> = (0..overlaps.len())
        .filter(|&i| overlaps[i] >= value - TIE_TOL)
        .collect();
    let index = ties[0];
    Ok(MaxOverlap {
        value,
        defect: overlap_defect(set.states[index].amplitudes(), psi.amplitudes()),
        index,
        label: set.labels[index].clone(),
        ties,
    })
}

/// Stabilizer fidelity and the pure-state min-relative entropy of magic.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilizerFidelity {
    /// `max |<psi|phi>|^2`
    pub fidelity: f64,
    /// `-log2(fidelity)`
    pub d_min: f64,
    pub witness: String,
}

pub fn stabilizer_fidelity(psi: &PureState, set: &StabilizerSet) -> Result<StabilizerFidelity> {
    let best = max_overlap(psi, set)?;
    let fidelity = best.value * best.value;
    Ok(StabilizerFidelity {
        fidelity,
        d_min: -magic_log(fidelity),
        witness: best.label,
    })
}
