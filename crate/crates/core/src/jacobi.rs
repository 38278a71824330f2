//! Cyclic-by-row Jacobi eigensolver for dense symmetric matrices.
//!
//! Independent of the closed forms in [`crate::analytic`]; used as the oracle.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::Hamiltonian;
use crate::matrix::Matrix;
use crate::spectrum::{EigenSystem, Mode, ModeLabel, SpectralPath};

pub const DEFAULT_JACOBI_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_SWEEPS: usize = 100;
/// Largest dimension the numeric oracle is run on by default.
pub const NUMERIC_DIM_CAP: usize = 600;

#[derive(Debug, Clone)]
pub struct NumericSpectrum {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Column `k` is the eigenvector of `eigenvalues[k]`.
    pub eigenvectors: Matrix,
    pub sweeps: usize,
    pub off_diagonal_norm: f64,
}

impl NumericSpectrum {
    pub fn eigenvector(&self, k: usize) -> Vec<f64> {
        self.eigenvectors.column(k)
    }
}

fn off_diagonal_norm(a: &Matrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

/// Eigendecomposition with the default sweep cap.
pub fn jacobi_eigendecompose(m: &Matrix, tol: f64) -> Result<NumericSpectrum> {
    jacobi_with_cap(m, tol, DEFAULT_MAX_SWEEPS)
}

/// Runs sweeps in fixed row order until the off-diagonal Frobenius norm is at
/// most `tol * ‖m‖_F`.
pub fn jacobi_with_cap(m: &Matrix, tol: f64, max_sweeps: usize) -> Result<NumericSpectrum> {
    if !m.is_square() || m.rows() == 0 {
        return Err(Error::BadShape {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let (deviation, row, col) = m.asymmetry();
    if deviation > 1e-12 * m.max_abs().max(1.0) {
        return Err(Error::NotSymmetric {
            row,
            col,
            deviation,
        });
    }

    let n = m.rows();
    // symmetrize so rounding in the input cannot bias the rotations
    let mut a = Matrix::from_fn(n, n, |i, j| 0.5 * (m[(i, j)] + m[(j, i)]));
    let mut v = Matrix::identity(n);
    let target = tol * a.frobenius_norm();

    let mut sweeps = 0;
    let mut off = off_diagonal_norm(&a);
    while off > target {
        if sweeps == max_sweeps {
            return Err(Error::NoConvergence {
                sweeps,
                residual: off,
            });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut a, &mut v, p, q, c, s);
            }
        }
        sweeps += 1;
        off = off_diagonal_norm(&a);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));
    let eigenvalues = order.iter().map(|&i| a[(i, i)]).collect();
    let eigenvectors = Matrix::from_fn(n, n, |i, k| v[(i, order[k])]);

    Ok(NumericSpectrum {
        eigenvalues,
        eigenvectors,
        sweeps,
        off_diagonal_norm: off,
    })
}

/// `A ← Jᵀ A J`, `V ← V J` with `J_pp = J_qq = c`, `J_pq = s`, `J_qp = −s`.
fn rotate(a: &mut Matrix, v: &mut Matrix, p: usize, q: usize, c: f64, s: f64) {
    let n = a.rows();
    for k in 0..n {
        let (akp, akq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = c * akp - s * akq;
        a[(k, q)] = s * akp + c * akq;
    }
    for k in 0..n {
        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = c * apk - s * aqk;
        a[(q, k)] = s * apk + c * aqk;
    }
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;
    for k in 0..n {
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

/// Groups a numeric spectrum into eigenspaces of `hamiltonian`.
pub fn group_degenerate(s: &NumericSpectrum, hamiltonian: Arc<Hamiltonian>, tol: f64) -> EigenSystem {
    let modes = s
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(k, &lambda)| (lambda, Mode::new(ModeLabel::Numeric, k + 1, None, s.eigenvector(k))))
        .collect();
    EigenSystem::from_modes(hamiltonian, SpectralPath::Numeric, modes, tol)
}

/// Jacobi decomposition plus grouping at the default tolerances.
pub fn numeric_spectrum(hamiltonian: Arc<Hamiltonian>) -> Result<EigenSystem> {
    let s = jacobi_eigendecompose(hamiltonian.matrix(), DEFAULT_JACOBI_TOL)?;
    Ok(group_degenerate(&s, hamiltonian, crate::spectrum::DEFAULT_GROUPING_TOL))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, normalized_adjacency, Family};
    use crate::spectrum::DEFAULT_GROUPING_TOL;

    #[test]
    fn one_by_one() {
        let s = jacobi_eigendecompose(&Matrix::from_rows(&[vec![3.5]]), 1e-12).unwrap();
        assert_eq!(s.eigenvalues, vec![3.5]);
        assert_eq!(s.eigenvector(0), vec![1.0]);
        assert_eq!(s.sweeps, 0);
    }

    #[test]
    fn swap_matrix() {
        let m = Matrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        let s = jacobi_eigendecompose(&m, 1e-12).unwrap();
        assert!((s.eigenvalues[0] + 1.0).abs() < 1e-15);
        assert!((s.eigenvalues[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_asymmetric_and_empty() {
        let m = Matrix::from_rows(&[vec![0.0, 1.0], vec![0.5, 0.0]]);
        assert!(matches!(jacobi_eigendecompose(&m, 1e-12), Err(Error::NotSymmetric { .. })));
        assert!(matches!(
            jacobi_eigendecompose(&Matrix::zeros(0, 0), 1e-12),
            Err(Error::BadShape { .. })
        ));
    }

    #[test]
    fn sweep_cap_reports_residual() {
        let h = normalized_adjacency(&build_graph(Family::Barbell, 5).unwrap());
        match jacobi_with_cap(h.matrix(), 1e-12, 1) {
            Err(Error::NoConvergence { sweeps: 1, residual }) => assert!(residual > 0.0),
            other => panic!("expected NoConvergence, got {other:?}"),
        }
    }

    #[test]
    fn barbell_three_grouping() {
        let h = Arc::new(normalized_adjacency(&build_graph(Family::Barbell, 3).unwrap()));
        let es = numeric_spectrum(h).unwrap();
        assert_eq!(es.multiplicities(), vec![1, 2, 1, 1, 1]);
        let s73 = 73f64.sqrt();
        let want = [(1.0 - s73) / 12.0, -0.5, -1.0 / 6.0, (1.0 + s73) / 12.0, 1.0];
        for (got, want) in es.eigenvalues().iter().zip(want) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn identity_is_one_space() {
        let h = Arc::new(Hamiltonian::from_matrix(Matrix::identity(4)).unwrap());
        let s = jacobi_eigendecompose(h.matrix(), 1e-12).unwrap();
        let es = group_degenerate(&s, h, DEFAULT_GROUPING_TOL);
        assert_eq!(es.multiplicities(), vec![4]);
    }

    #[test]
    fn star_full_three_grouping() {
        let h = Arc::new(normalized_adjacency(&build_graph(Family::StarFull, 3).unwrap()));
        assert_eq!(numeric_spectrum(h).unwrap().multiplicities(), vec![7, 2, 1]);
    }
}
