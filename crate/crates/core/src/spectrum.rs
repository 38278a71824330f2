//! Eigensystems grouped into degenerate eigenspaces.
//!
//! Both the closed-form path ([`crate::analytic`]) and the Jacobi path
//! ([`crate::jacobi`]) end up here, so everything downstream (dynamics, IPR)
//! is agnostic to where the spectrum came from.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Hamiltonian;
use crate::matrix::{dot, Matrix};

/// Two eigenvalues belong to the same eigenspace when they differ by at most
/// `DEFAULT_GROUPING_TOL * max(1, spread)`.
pub const DEFAULT_GROUPING_TOL: f64 = 1e-9;

/// Largest `‖Σ_k Π_k − I‖_F` accepted before any dynamics call.
pub const COMPLETENESS_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModeLabel {
    BarbellDegenerate,
    BarbellSymPlus,
    BarbellSymMinus,
    BarbellAntiPlus,
    BarbellAntiMinus,
    V1Psi1,
    V1Psi2,
    V1Chi,
    V1W,
    V2Psi1,
    V2Psi2,
    V2Psi3,
    V2Phi4,
    V2Phi5,
    V2W,
    /// Column of a numerically computed eigenvector matrix.
    Numeric,
}

impl ModeLabel {
    pub const ALL: [ModeLabel; 16] = [
        ModeLabel::BarbellDegenerate,
        ModeLabel::BarbellSymPlus,
        ModeLabel::BarbellSymMinus,
        ModeLabel::BarbellAntiPlus,
        ModeLabel::BarbellAntiMinus,
        ModeLabel::V1Psi1,
        ModeLabel::V1Psi2,
        ModeLabel::V1Chi,
        ModeLabel::V1W,
        ModeLabel::V2Psi1,
        ModeLabel::V2Psi2,
        ModeLabel::V2Psi3,
        ModeLabel::V2Phi4,
        ModeLabel::V2Phi5,
        ModeLabel::V2W,
        ModeLabel::Numeric,
    ];

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|l| l.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownLabel(s.to_string()))
    }
}

impl fmt::Display for ModeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpectralPath {
    Analytic,
    Numeric,
}

impl fmt::Display for SpectralPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpectralPath::Analytic => "analytic",
            SpectralPath::Numeric => "numeric",
        })
    }
}

/// One normalized eigenvector together with the family of modes it
/// belongs to. `index` is the 1-based position inside that family (the `k`
/// of `d_k`, the `j` of `chi_j`, the `r` of `w^{(r)}`); `block` selects the
/// clique for clique-supported families (0 = A, 1 = B on the barbell).
#[derive(Debug, Clone, PartialEq)]
pub struct Mode {
    pub label: ModeLabel,
    pub index: usize,
    pub block: Option<usize>,
    pub vector: Vec<f64>,
}

impl Mode {
    pub fn new(label: ModeLabel, index: usize, block: Option<usize>, vector: Vec<f64>) -> Self {
        Self {
            label,
            index,
            block,
            vector,
        }
    }

    pub fn name(&self) -> String {
        match self.block {
            Some(b) => format!("{}[{}]#{}", self.label, b, self.index),
            None => format!("{}#{}", self.label, self.index),
        }
    }
}

#[derive(Debug, Clone)]
pub struct EigenSpace {
    pub eigenvalue: f64,
    pub modes: Vec<Mode>,
}

impl EigenSpace {
    pub fn multiplicity(&self) -> usize {
        self.modes.len()
    }

    /// Label of the first mode; merged spaces carry several labels, see
    /// [`EigenSpace::labels`].
    pub fn label(&self) -> ModeLabel {
        self.modes[0].label
    }

    pub fn labels(&self) -> Vec<ModeLabel> {
        let mut out: Vec<ModeLabel> = Vec::new();
        for m in &self.modes {
            if !out.contains(&m.label) {
                out.push(m.label);
            }
        }
        out
    }

    /// `Π v`.
    pub fn project(&self, v: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; v.len()];
        for m in &self.modes {
            let c = dot(&m.vector, v);
            if c == 0.0 {
                continue;
            }
            for (o, x) in out.iter_mut().zip(&m.vector) {
                *o += c * x;
            }
        }
        out
    }

    /// Column `j` of the projector, `Π e_j`.
    pub fn projector_column(&self, j: usize) -> Vec<f64> {
        let n = self.modes[0].vector.len();
        let mut out = vec![0.0; n];
        for m in &self.modes {
            let c = m.vector[j];
            if c == 0.0 {
                continue;
            }
            for (o, x) in out.iter_mut().zip(&m.vector) {
                *o += c * x;
            }
        }
        out
    }

    pub fn projector(&self) -> Matrix {
        let n = self.modes[0].vector.len();
        let mut p = Matrix::zeros(n, n);
        for m in &self.modes {
            p.add_outer(&m.vector, 1.0);
        }
        p
    }
}

/// Summary row for export.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenSpaceSummary {
    pub eigenvalue: f64,
    pub multiplicity: usize,
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vectors: Option<Vec<f64>>,
}

#[derive(Debug, Clone)]
pub struct EigenSystem {
    spaces: Vec<EigenSpace>,
    hamiltonian: Arc<Hamiltonian>,
    path: SpectralPath,
    completeness: OnceLock<f64>,
}

impl EigenSystem {
    /// Groups `(eigenvalue, mode)` pairs into eigenspaces. Pairs are sorted
    /// ascending and contiguous runs within `tol * max(1, spread)` of the
    /// run's first value are merged.
    pub fn from_modes(
        hamiltonian: Arc<Hamiltonian>,
        path: SpectralPath,
        mut modes: Vec<(f64, Mode)>,
        tol: f64,
    ) -> Self {
        modes.sort_by(|a, b| a.0.total_cmp(&b.0));
        let spread = match (modes.first(), modes.last()) {
            (Some(a), Some(b)) => b.0 - a.0,
            _ => 0.0,
        };
        let eps = tol * spread.max(1.0);

        let mut spaces: Vec<EigenSpace> = Vec::new();
        let mut run: Vec<(f64, Mode)> = Vec::new();
        let flush = |run: &mut Vec<(f64, Mode)>, spaces: &mut Vec<EigenSpace>| {
            if run.is_empty() {
                return;
            }
            let mean = run.iter().map(|(l, _)| l).sum::<f64>() / run.len() as f64;
            spaces.push(EigenSpace {
                eigenvalue: mean,
                modes: run.drain(..).map(|(_, m)| m).collect(),
            });
        };
        for (lambda, mode) in modes {
            if let Some((first, _)) = run.first() {
                if lambda - first > eps {
                    flush(&mut run, &mut spaces);
                }
            }
            run.push((lambda, mode));
        }
        flush(&mut run, &mut spaces);

        Self {
            spaces,
            hamiltonian,
            path,
            completeness: OnceLock::new(),
        }
    }

    pub fn spaces(&self) -> &[EigenSpace] {
        &self.spaces
    }

    pub fn hamiltonian(&self) -> &Hamiltonian {
        &self.hamiltonian
    }

    pub fn hamiltonian_arc(&self) -> Arc<Hamiltonian> {
        Arc::clone(&self.hamiltonian)
    }

    pub fn path(&self) -> SpectralPath {
        self.path
    }

    pub fn dim(&self) -> usize {
        self.hamiltonian.dim()
    }

    pub fn mode_count(&self) -> usize {
        self.spaces.iter().map(EigenSpace::multiplicity).sum()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.spaces.iter().map(|s| s.eigenvalue).collect()
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.spaces.iter().map(EigenSpace::multiplicity).collect()
    }

    /// All modes with the eigenvalue of the space they sit in.
    pub fn modes(&self) -> impl Iterator<Item = (f64, &Mode)> {
        self.spaces
            .iter()
            .flat_map(|s| s.modes.iter().map(move |m| (s.eigenvalue, m)))
    }

    pub fn find_mode(&self, label: ModeLabel, index: usize, block: Option<usize>) -> Option<(f64, &Mode)> {
        self.modes()
            .find(|(_, m)| m.label == label && m.index == index && m.block == block)
    }

    /// Space containing the eigenvalue closest to `lambda`.
    pub fn space_near(&self, lambda: f64) -> &EigenSpace {
        self.spaces
            .iter()
            .min_by(|a, b| (a.eigenvalue - lambda).abs().total_cmp(&(b.eigenvalue - lambda).abs()))
            .expect("empty eigensystem")
    }

    /// `‖Σ_k Π_k − I‖_F`, computed once and cached.
    pub fn completeness_deviation(&self) -> f64 {
        *self.completeness.get_or_init(|| self.compute_completeness())
    }

    fn compute_completeness(&self) -> f64 {
        let n = self.dim();
        let mut sum = Matrix::zeros(n, n);
        for (_, m) in self.modes() {
            sum.add_outer(&m.vector, 1.0);
        }
        sum.frobenius_distance(&Matrix::identity(n))
    }

    /// Errors unless the projectors resolve the identity within `tol`.
    pub fn ensure_complete(&self, tol: f64) -> Result<()> {
        if self.mode_count() != self.dim() {
            return Err(Error::IncompleteEigensystem {
                deviation: (self.dim() as f64 - self.mode_count() as f64).abs().sqrt(),
            });
        }
        let deviation = self.completeness_deviation();
        if deviation > tol {
            return Err(Error::IncompleteEigensystem { deviation });
        }
        Ok(())
    }

    /// Largest `‖H v − λ v‖_∞` over all modes.
    pub fn max_residual(&self) -> f64 {
        self.modes()
            .map(|(lambda, m)| {
                let hv = self.hamiltonian.apply(&m.vector);
                hv.iter()
                    .zip(&m.vector)
                    .fold(0.0f64, |acc, (a, b)| acc.max((a - lambda * b).abs()))
            })
            .fold(0.0, f64::max)
    }

    /// Largest `|⟨v_a, v_b⟩ − δ_ab|` over all mode pairs.
    pub fn gram_deviation(&self) -> f64 {
        let vectors: Vec<&[f64]> = self.modes().map(|(_, m)| m.vector.as_slice()).collect();
        let mut worst = 0.0f64;
        for (a, va) in vectors.iter().enumerate() {
            for (b, vb) in vectors.iter().enumerate().skip(a) {
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((dot(va, vb) - target).abs());
            }
        }
        worst
    }

    pub fn summary(&self, full_vectors: bool) -> Vec<EigenSpaceSummary> {
        self.spaces
            .iter()
            .map(|s| EigenSpaceSummary {
                eigenvalue: s.eigenvalue,
                multiplicity: s.multiplicity(),
                label: s
                    .labels()
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join("+"),
                vectors: full_vectors.then(|| {
                    s.modes.iter().flat_map(|m| m.vector.iter().copied()).collect()
                }),
            })
            .collect()
    }
}

/// Per-eigenvalue comparison between two eigensystems of the same Hamiltonian.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumComparison {
    pub same_structure: bool,
    pub max_eigenvalue_gap: f64,
    pub max_projector_distance: f64,
}

/// Compares distinct eigenvalues, multiplicities and projectors of two
/// eigensystems. Projector distances are only computed when the space
/// structure matches.
pub fn compare_systems(a: &EigenSystem, b: &EigenSystem) -> SpectrumComparison {
    let same_structure = a.multiplicities() == b.multiplicities();
    if !same_structure {
        return SpectrumComparison {
            same_structure,
            max_eigenvalue_gap: f64::INFINITY,
            max_projector_distance: f64::INFINITY,
        };
    }
    let mut gap = 0.0f64;
    let mut dist = 0.0f64;
    for (sa, sb) in a.spaces().iter().zip(b.spaces()) {
        gap = gap.max((sa.eigenvalue - sb.eigenvalue).abs());
        dist = dist.max(sa.projector().frobenius_distance(&sb.projector()));
    }
    SpectrumComparison {
        same_structure,
        max_eigenvalue_gap: gap,
        max_projector_distance: dist,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, normalized_adjacency, Family};

    fn dummy_modes(values: &[f64]) -> Vec<(f64, Mode)> {
        values
            .iter()
            .enumerate()
            .map(|(i, &l)| {
                let mut v = vec![0.0; values.len()];
                v[i] = 1.0;
                (l, Mode::new(ModeLabel::Numeric, i + 1, None, v))
            })
            .collect()
    }

    #[test]
    fn groups_contiguous_values() {
        let h = Arc::new(normalized_adjacency(&build_graph(Family::StarFull, 2).unwrap()));
        let es = EigenSystem::from_modes(
            h,
            SpectralPath::Numeric,
            dummy_modes(&[0.5, -0.5, 1.0, -0.5 + 1e-12, -0.5 - 1e-12]),
            DEFAULT_GROUPING_TOL,
        );
        assert_eq!(es.multiplicities(), vec![3, 1, 1]);
        assert!((es.eigenvalues()[0] + 0.5).abs() < 1e-15);
        assert!(es.completeness_deviation() < 1e-15);
    }

    #[test]
    fn incomplete_system_is_rejected() {
        let h = Arc::new(normalized_adjacency(&build_graph(Family::StarFull, 2).unwrap()));
        let mut modes = dummy_modes(&[0.0, 1.0, 2.0, 3.0, 4.0]);
        modes.pop();
        let es = EigenSystem::from_modes(h, SpectralPath::Numeric, modes, DEFAULT_GROUPING_TOL);
        assert!(matches!(
            es.ensure_complete(1e-9),
            Err(Error::IncompleteEigensystem { .. })
        ));
    }

    #[test]
    fn label_roundtrip() {
        for l in ModeLabel::ALL {
            assert_eq!(ModeLabel::parse(&l.to_string()).unwrap(), l);
        }
        assert!(ModeLabel::parse("psi9").is_err());
    }
}
