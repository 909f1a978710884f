//! Validated quantum states and their JSON wire format.
//!
//! A density matrix is serialized as `{"dim": n, "rows": [[[re, im], ...], ...]}`
//! and a pure state as `{"dim": n, "amps": [[re, im], ...]}`.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, eig_hermitian, CMatrix};

pub const TOL_TRACE: f64 = 1e-12;
pub const TOL_NORM: f64 = 1e-12;
pub const TOL_PSD: f64 = 1e-10;

/// Hermitian, positive semi-definite, unit-trace matrix.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: CMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if !matrix.is_finite() {
            return Err(Error::Malformed("non-finite entry".into()));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > TOL_TRACE || tr.im.abs() > TOL_TRACE {
            return Err(Error::InvalidTrace(tr.re));
        }
        let spec = eig_hermitian(&matrix)?;
        let min = spec.eigenvalues.last().copied().unwrap_or(0.0);
        if min < -TOL_PSD {
            return Err(Error::NotPsd(min));
        }
        Ok(Self { matrix })
    }

    /// Maximally mixed state `I/d`.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            matrix: CMatrix::identity(dim).scale_real(1.0 / dim as f64),
        }
    }

    pub fn from_diag(probs: &[f64]) -> Result<Self> {
        Self::new(CMatrix::from_real_diag(probs))
    }

    /// Convex combination `sum_j w_j rho_j`.
    pub fn mixture(parts: &[(f64, &DensityMatrix)]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::Malformed("empty mixture".into()))?;
        let dim = first.1.dim();
        let mut acc = CMatrix::zeros(dim);
        for (w, rho) in parts {
            if rho.dim() != dim {
                return Err(Error::DimMismatch(dim, rho.dim()));
            }
            acc = &acc + &rho.matrix.scale_real(*w);
        }
        Self::new(acc)
    }

    /// Equal mixture `(a + b) / 2`.
    pub fn midpoint(a: &DensityMatrix, b: &DensityMatrix) -> Result<Self> {
        Self::mixture(&[(0.5, a), (0.5, b)])
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        DensityMatrix {
            matrix: self.matrix.kron(&other.matrix),
        }
    }

    /// `U rho U^dagger`; the caller guarantees `u` is unitary.
    pub fn conjugate_by(&self, u: &CMatrix) -> Result<DensityMatrix> {
        if u.dim() != self.dim() {
            return Err(Error::DimMismatch(self.dim(), u.dim()));
        }
        Ok(DensityMatrix {
            matrix: self.matrix.conjugate_by(u),
        })
    }

    /// Traces out the second factor of a `d_keep x d_drop` bipartition.
    pub fn partial_trace_second(&self, d_keep: usize, d_drop: usize) -> Result<DensityMatrix> {
        if d_keep * d_drop != self.dim() {
            return Err(Error::DimMismatch(self.dim(), d_keep * d_drop));
        }
        let mut out = CMatrix::zeros(d_keep);
        for i in 0..d_keep {
            for j in 0..d_keep {
                out[(i, j)] = (0..d_drop).map(|k| self.matrix[(i * d_drop + k, j * d_drop + k)]).sum();
            }
        }
        DensityMatrix::new(out)
    }

    pub fn to_json(&self) -> DensityMatrixJson {
        DensityMatrixJson {
            dim: self.dim(),
            rows: self
                .matrix
                .rows()
                .map(|r| r.iter().map(|z| [z.re, z.im]).collect())
                .collect(),
        }
    }

    pub fn from_json(j: &DensityMatrixJson) -> Result<Self> {
        if j.rows.len() != j.dim {
            return Err(Error::Malformed(format!("dim {} but {} rows", j.dim, j.rows.len())));
        }
        let rows = j
            .rows
            .iter()
            .map(|r| r.iter().map(|&[re, im]| C64::new(re, im)).collect())
            .collect();
        Self::new(CMatrix::from_rows(rows)?)
    }
}

impl From<&PureState> for DensityMatrix {
    fn from(psi: &PureState) -> Self {
        psi.projector()
    }
}

/// Unit-norm state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amps: Vec<C64>,
}

impl PureState {
    pub fn new(amps: Vec<C64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::Malformed("empty state vector".into()));
        }
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Malformed("non-finite amplitude".into()));
        }
        let n = linalg::norm(&amps);
        if (n - 1.0).abs() > TOL_NORM {
            return Err(Error::NotNormalized(n));
        }
        Ok(Self { amps })
    }

    /// Normalizes `amps` first; fails only on the zero vector.
    pub fn normalized(amps: Vec<C64>) -> Result<Self> {
        let n = linalg::norm(&amps);
        if n == 0.0 || !n.is_finite() {
            return Err(Error::NotNormalized(n));
        }
        Self::new(amps.into_iter().map(|z| z / n).collect())
    }

    pub fn basis(dim: usize, k: usize) -> Self {
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        amps[k] = C64::new(1.0, 0.0);
        Self { amps }
    }

    /// `cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>`
    pub fn bloch(theta: f64, phi: f64) -> Self {
        Self {
            amps: vec![
                C64::new((theta / 2.0).cos(), 0.0),
                C64::from_polar((theta / 2.0).sin(), phi),
            ],
        }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn projector(&self) -> DensityMatrix {
        DensityMatrix {
            matrix: CMatrix::outer(&self.amps),
        }
    }

    pub fn tensor(&self, other: &PureState) -> PureState {
        PureState {
            amps: linalg::kron_vec(&self.amps, &other.amps),
        }
    }

    /// `U|psi>`, renormalized to absorb rounding.
    pub fn evolve(&self, u: &CMatrix) -> Result<PureState> {
        if u.dim() != self.dim() {
            return Err(Error::DimMismatch(self.dim(), u.dim()));
        }
        PureState::normalized(u.apply(&self.amps))
    }

    /// Multiplies by the global phase that makes the first non-negligible
    /// amplitude real and positive.
    pub fn canonical_phase(&self) -> PureState {
        let lead = self
            .amps
            .iter()
            .find(|z| z.norm() > 1e-9)
            .copied()
            .unwrap_or(C64::new(1.0, 0.0));
        let ph = lead.conj() / lead.norm();
        PureState {
            amps: self.amps.iter().map(|z| z * ph).collect(),
        }
    }

    pub fn to_json(&self) -> PureStateJson {
        PureStateJson {
            dim: self.dim(),
            amps: self.amps.iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn from_json(j: &PureStateJson) -> Result<Self> {
        if j.amps.len() != j.dim {
            return Err(Error::Malformed(format!(
                "dim {} but {} amplitudes",
                j.dim,
                j.amps.len()
            )));
        }
        Self::new(j.amps.iter().map(|&[re, im]| C64::new(re, im)).collect())
    }
}

/// `|<psi|phi>|`
pub fn overlap(psi: &PureState, phi: &PureState) -> Result<f64> {
    if psi.dim() != phi.dim() {
        return Err(Error::DimMismatch(psi.dim(), phi.dim()));
    }
    Ok(linalg::inner(psi.amplitudes(), phi.amplitudes()).norm().min(1.0))
}

/// Trace distance with the halved convention `1/2 Tr|a - b|`.
pub fn trace_distance(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimMismatch(a.dim(), b.dim()));
    }
    let diff = a.matrix() - b.matrix();
    let spec = eig_hermitian(&diff)?;
    Ok(0.5 * spec.eigenvalues.iter().map(|l| l.abs()).sum::<f64>())
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct DensityMatrixJson {
    pub dim: usize,
    pub rows: Vec<Vec<[f64; 2]>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct PureStateJson {
    pub dim: usize,
    pub amps: Vec<[f64; 2]>,
}

/// Either JSON state shape, discriminated by the `rows`/`amps` field.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateJson {
    Pure(PureStateJson),
    Mixed(DensityMatrixJson),
}

/// A parsed state of either kind.
#[derive(Debug, Clone)]
pub enum AnyState {
    Pure(PureState),
    Mixed(DensityMatrix),
}

impl AnyState {
    pub fn parse(text: &str) -> Result<Self> {
        match serde_json::from_str::<StateJson>(text)? {
            StateJson::Pure(p) => Ok(AnyState::Pure(PureState::from_json(&p)?)),
            StateJson::Mixed(m) => Ok(AnyState::Mixed(DensityMatrix::from_json(&m)?)),
        }
    }

    pub fn density(&self) -> DensityMatrix {
        match self {
            AnyState::Pure(p) => p.projector(),
            AnyState::Mixed(m) => m.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            AnyState::Pure(p) => p.dim(),
            AnyState::Mixed(m) => m.dim(),
        }
    }
}

/// Parses a matrix written in the density-matrix JSON layout without
/// imposing state invariants (used for unitaries).
pub fn parse_matrix(text: &str) -> Result<CMatrix> {
    let j: DensityMatrixJson = serde_json::from_str(text)?;
    if j.rows.len() != j.dim {
        return Err(Error::Malformed(format!("dim {} but {} rows", j.dim, j.rows.len())));
    }
    CMatrix::from_rows(
        j.rows
            .iter()
            .map(|r| r.iter().map(|&[re, im]| C64::new(re, im)).collect())
            .collect(),
    )
}

pub fn matrix_to_json(m: &CMatrix) -> DensityMatrixJson {
    DensityMatrixJson {
        dim: m.dim(),
        rows: m.rows().map(|r| r.iter().map(|z| [z.re, z.im]).collect()).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn plus() -> PureState {
        PureState::new(vec![C64::new(FRAC_1_SQRT_2, 0.0), C64::new(FRAC_1_SQRT_2, 0.0)]).unwrap()
    }

    #[test]
    fn trace_distance_examples() {
        let z = PureState::basis(2, 0).projector();
        let o = PureState::basis(2, 1).projector();
        assert!(trace_distance(&z, &z).unwrap().abs() < 1e-15);
        assert!((trace_distance(&z, &o).unwrap() - 1.0).abs() < 1e-15);
        let d = trace_distance(&z, &plus().projector()).unwrap();
        assert!((d - FRAC_1_SQRT_2).abs() < 1e-14);
    }

    #[test]
    fn overlap_examples() {
        let z = PureState::basis(2, 0);
        assert_eq!(overlap(&z, &z).unwrap(), 1.0);
        assert_eq!(overlap(&z, &PureState::basis(2, 1)).unwrap(), 0.0);
        assert!((overlap(&z, &plus()).unwrap() - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(matches!(
            overlap(&z, &PureState::basis(3, 0)),
            Err(Error::DimMismatch(2, 3))
        ));
    }

    #[test]
    fn tensor_examples() {
        let k = PureState::basis(2, 0).tensor(&PureState::basis(2, 1));
        assert_eq!(k, PureState::basis(4, 1));
        let p0 = plus().tensor(&PureState::basis(2, 0));
        let a = p0.amplitudes();
        assert!((a[0].re - FRAC_1_SQRT_2).abs() < 1e-15 && a[1].norm() == 0.0);
        assert!((a[2].re - FRAC_1_SQRT_2).abs() < 1e-15 && a[3].norm() == 0.0);
        let mm = DensityMatrix::maximally_mixed(2).tensor(&DensityMatrix::maximally_mixed(2));
        assert_eq!(
            mm.matrix().max_abs_diff(DensityMatrix::maximally_mixed(4).matrix()),
            0.0
        );
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(
            DensityMatrix::from_diag(&[0.6, 0.6]),
            Err(Error::InvalidTrace(_))
        ));
        assert!(matches!(DensityMatrix::from_diag(&[1.5, -0.5]), Err(Error::NotPsd(_))));
        assert!(matches!(
            PureState::new(vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0)]),
            Err(Error::NotNormalized(_))
        ));
    }

    #[test]
    fn json_shapes() {
        let p = AnyState::parse(r#"{"dim":2,"amps":[[1,0],[0,0]]}"#).unwrap();
        assert!(matches!(p, AnyState::Pure(_)));
        let m = AnyState::parse(r#"{"dim":2,"rows":[[[0.5,0],[0,0]],[[0,0],[0.5,0]]]}"#).unwrap();
        assert!(matches!(m, AnyState::Mixed(_)));
        assert!(AnyState::parse(r#"{"dim":3,"amps":[[1,0],[0,0]]}"#).is_err());
        let text = serde_json::to_string(&plus().to_json()).unwrap();
        assert!(text.starts_with(r#"{"dim":2,"amps":[["#));
    }

    #[test]
    fn partial_trace_of_product() {
        let a = DensityMatrix::from_diag(&[0.75, 0.25]).unwrap();
        let b = plus().projector();
        let r = a.tensor(&b).partial_trace_second(2, 2).unwrap();
        assert!(r.matrix().max_abs_diff(a.matrix()) < 1e-15);
    }
}
