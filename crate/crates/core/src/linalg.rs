//! Small dense complex matrices and the Hermitian eigensolver.
//!
//! Everything here targets dimensions of at most a few tens, so matrices
//! are stored as a flat row-major `Vec<C64>` and products are the naive
//! triple loop.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Entrywise tolerance used when checking Hermiticity.
pub const TOL_HERM: f64 = 1e-12;

/// Eigenvalues below this fraction of the largest eigenvalue are treated as
/// outside the support.
pub const SUPPORT_CUTOFF: f64 = 1e-12;

const JACOBI_MAX_SWEEPS: usize = 100;

/// Square complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![C64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_diag(diag: &[C64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &z) in diag.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let d: Vec<C64> = diag.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::from_diag(&d)
    }

    /// Builds a matrix from rows; every row must have `rows.len()` entries.
    pub fn from_rows(rows: Vec<Vec<C64>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::Malformed("empty matrix".into()));
        }
        let mut data = Vec::with_capacity(dim * dim);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != dim {
                return Err(Error::Malformed(format!(
                    "row {i} has {} entries, expected {dim}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Malformed("non-finite entry".into()));
        }
        Ok(Self { dim, data })
    }

    /// `|v><v|`
    pub fn outer(v: &[C64]) -> Self {
        let n = v.len();
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = v[i] * v[j].conj();
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> impl Iterator<Item = &[C64]> {
        self.data.chunks(self.dim)
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// `Tr(self * other)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> C64 {
        let n = self.dim;
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..n {
            for k in 0..n {
                acc += self[(i, k)] * other[(k, i)];
            }
        }
        acc
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Self) -> Self {
        let (n, m) = (self.dim, other.dim);
        let mut out = Self::zeros(n * m);
        for i in 0..n {
            for j in 0..n {
                let a = self[(i, j)];
                for k in 0..m {
                    for l in 0..m {
                        out[(i * m + k, j * m + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// `U A U^dagger`
    pub fn conjugate_by(&self, u: &Self) -> Self {
        &(u * self) * &u.adjoint()
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        self.rows()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn unitarity_defect(&self) -> f64 {
        (&self.adjoint() * self).max_abs_diff(&Self::identity(self.dim))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix product dimension mismatch");
        let n = self.dim;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;

    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix sum dimension mismatch");
        CMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;

    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix difference dimension mismatch");
        CMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix({}x{})", self.dim, self.dim)?;
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|z| format!("{:+.6}{:+.6}i", z.re, z.im)).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct Spectrum {
    /// Sorted in descending order.
    pub eigenvalues: Vec<f64>,
    /// Column `k` is the eigenvector of `eigenvalues[k]`.
    pub eigenvectors: CMatrix,
}

impl Spectrum {
    pub fn eigenvector(&self, k: usize) -> Vec<C64> {
        (0..self.eigenvectors.dim())
            .map(|i| self.eigenvectors[(i, k)])
            .collect()
    }

    /// `V f(diag(lambda)) V^dagger`
    pub fn map(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        let fl: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = C64::new(0.0, 0.0);
                for k in 0..n {
                    if fl[k] != 0.0 {
                        acc += v[(i, k)] * v[(j, k)].conj() * fl[k];
                    }
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    pub fn reconstruct(&self) -> CMatrix {
        self.map(|l| l)
    }

    /// Threshold separating support eigenvalues from numerical zeros.
    pub fn support_threshold(&self) -> f64 {
        let top = self.eigenvalues.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
        SUPPORT_CUTOFF * top.max(f64::MIN_POSITIVE)
    }
}

/// Cyclic Jacobi eigensolver for Hermitian matrices.
///
/// Sweeps visit the upper triangle in row order. Each rotation first
/// removes the phase of the pivot, then applies a real Givens rotation.
pub fn eig_hermitian(m: &CMatrix) -> Result<Spectrum> {
    let defect = m.hermiticity_defect();
    if defect > TOL_HERM {
        return Err(Error::NonHermitian(defect));
    }
    let n = m.dim();
    // symmetrize so the rotations start from an exactly Hermitian matrix
    let mut a = CMatrix::zeros(n);
    for i in 0..n {
        a[(i, i)] = C64::new(m[(i, i)].re, 0.0);
        for j in i + 1..n {
            let z = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
            a[(i, j)] = z;
            a[(j, i)] = z.conj();
        }
    }
    let mut v = CMatrix::identity(n);
    let scale: f64 = a.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();

    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= f64::EPSILON * 1e-3 * scale.max(f64::MIN_POSITIVE) || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let eigenvalues = order.iter().map(|&k| a[(k, k)].re).collect();
    let mut eigenvectors = CMatrix::zeros(n);
    for (col, &k) in order.iter().enumerate() {
        for i in 0..n {
            eigenvectors[(i, col)] = v[(i, k)];
        }
    }
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
    })
}

fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let n = a.dim();
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // phase e^{-i phi} that makes the pivot real
    let phase = apq.conj() / r;
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.is_infinite() {
        0.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    // G = diag(1, phase) * [[c, s], [-s, c]]
    let g_pp = C64::new(c, 0.0);
    let g_pq = C64::new(s, 0.0);
    let g_qp = phase * (-s);
    let g_qq = phase * c;

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * g_pp + akq * g_qp;
        a[(k, q)] = akp * g_pq + akq * g_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
}

/// Applies `lambda -> lambda^p` on the support and maps every eigenvalue
/// below the support threshold to zero, whatever the sign of `p`.
pub fn matrix_power_on_support(m: &CMatrix, p: f64) -> Result<CMatrix> {
    let spec = eig_hermitian(m)?;
    Ok(power_from_spectrum(&spec, p))
}

pub(crate) fn power_from_spectrum(spec: &Spectrum, p: f64) -> CMatrix {
    let cut = spec.support_threshold();
    spec.map(|l| if l > cut { l.powf(p) } else { 0.0 })
}

/// Euclidean inner product `<a|b>` (conjugate-linear in `a`).
pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// `1 - |<a|b>|` for unit vectors, taken from the residual `b - <a|b> a`
/// so nearly parallel vectors keep full relative precision.
pub fn overlap_defect(a: &[C64], b: &[C64]) -> f64 {
    let c = inner(a, b);
    let s = c.norm().min(1.0);
    let r2: f64 = a.iter().zip(b).map(|(x, y)| (y - c * x).norm_sqr()).sum();
    (r2 / (1.0 + s)).min(1.0)
}

pub fn norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn kron_vec(a: &[C64], b: &[C64]) -> Vec<C64> {
    a.iter().flat_map(|&x| b.iter().map(move |&y| x * y)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn maximally_mixed_qubit() {
        let s = eig_hermitian(&CMatrix::identity(2).scale_real(0.5)).unwrap();
        assert_eq!(s.eigenvalues, vec![0.5, 0.5]);
    }

    #[test]
    fn projector_spectrum() {
        let s = eig_hermitian(&CMatrix::outer(&[c(1.0, 0.0), c(0.0, 0.0)])).unwrap();
        assert!((s.eigenvalues[0] - 1.0).abs() < 1e-15);
        assert!(s.eigenvalues[1].abs() < 1e-15);
    }

    #[test]
    fn zero_plus_mixture() {
        // characteristic polynomial of [[3/4, 1/4], [1/4, 1/4]]:
        // l^2 - l + 1/8 = 0 -> l = (1 +- 1/sqrt 2) / 2
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let m = &CMatrix::outer(&[c(1.0, 0.0), c(0.0, 0.0)]) + &CMatrix::outer(&[c(h, 0.0), c(h, 0.0)]);
        let s = eig_hermitian(&m.scale_real(0.5)).unwrap();
        assert!((s.eigenvalues[0] - (1.0 + h) / 2.0).abs() < 1e-14);
        assert!((s.eigenvalues[1] - (1.0 - h) / 2.0).abs() < 1e-14);
        assert!((s.eigenvalues[0] - 0.853553).abs() < 1e-6);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = CMatrix::from_rows(vec![vec![c(1.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(1.0, 0.0)]]).unwrap();
        assert!(matches!(eig_hermitian(&m), Err(Error::NonHermitian(_))));
    }

    #[test]
    fn complex_pivot() {
        // sigma_y has eigenvalues +-1
        let y = CMatrix::from_rows(vec![vec![c(0.0, 0.0), c(0.0, -1.0)], vec![c(0.0, 1.0), c(0.0, 0.0)]]).unwrap();
        let s = eig_hermitian(&y).unwrap();
        assert!((s.eigenvalues[0] - 1.0).abs() < 1e-15);
        assert!((s.eigenvalues[1] + 1.0).abs() < 1e-15);
        assert!(s.reconstruct().max_abs_diff(&y) < 1e-15);
    }

    #[test]
    fn powers_on_support() {
        let half = CMatrix::identity(2).scale_real(0.5);
        let sq = matrix_power_on_support(&half, 2.0).unwrap();
        assert!(sq.max_abs_diff(&CMatrix::identity(2).scale_real(0.25)) < 1e-15);

        let proj = CMatrix::outer(&[c(1.0, 0.0), c(0.0, 0.0)]);
        let inv_sqrt = matrix_power_on_support(&proj, -0.5).unwrap();
        assert!(inv_sqrt.max_abs_diff(&proj) < 1e-15);

        let d = CMatrix::from_real_diag(&[0.75, 0.25]);
        let r = matrix_power_on_support(&d, 0.5).unwrap();
        assert!((r[(0, 0)].re - 0.75f64.sqrt()).abs() < 1e-15);
        assert!((r[(1, 1)].re - 0.5).abs() < 1e-15);
        assert!((r[(0, 0)].re - 0.866025).abs() < 1e-6);
    }

    #[test]
    fn kron_shapes() {
        let a = CMatrix::identity(2).scale_real(0.5);
        let k = a.kron(&a);
        assert!(k.max_abs_diff(&CMatrix::identity(4).scale_real(0.25)) == 0.0);
        let v = kron_vec(&[c(0.0, 0.0), c(1.0, 0.0)], &[c(1.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(v[2], c(1.0, 0.0));
    }
}
