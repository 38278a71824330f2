//! Eigenstate and dynamical inverse participation ratios.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::StarStates;
use crate::dynamics::{limiting_distribution, Start};
use crate::error::{Error, Result};
use crate::graph::{ClassTag, Family, GraphInstance};
use crate::matrix::{dot, Matrix};
use crate::spectrum::{EigenSystem, ModeLabel, SpectralPath};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IprKind {
    Eigenstate,
    Dynamical,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IprRecord {
    pub kind: IprKind,
    pub subject: String,
    pub value: f64,
    pub effective_support: f64,
    pub path: SpectralPath,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference_formula: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
}

impl IprRecord {
    pub fn new(kind: IprKind, subject: impl Into<String>, value: f64, path: SpectralPath) -> Self {
        Self {
            kind,
            subject: subject.into(),
            value,
            effective_support: 1.0 / value,
            path,
            reference_formula: None,
            residual: None,
        }
    }

    /// Attaches a reference value and records `value − reference`.
    pub fn with_reference(mut self, formula: impl Into<String>, reference: f64) -> Self {
        self.reference_formula = Some(formula.into());
        self.residual = Some(self.value - reference);
        self
    }

    /// `1/N ≤ value ≤ 1` up to `slack`.
    pub fn in_range(&self, dim: usize, slack: f64) -> bool {
        self.value >= 1.0 / dim as f64 - slack && self.value <= 1.0 + slack
    }
}

/// `Σ_i v_i⁴` of a unit vector.
pub fn eigenstate_ipr(v: &[f64]) -> Result<f64> {
    let norm_sq = dot(v, v);
    if (norm_sq - 1.0).abs() > 1e-10 {
        return Err(Error::NotNormalized { norm_sq });
    }
    Ok(v.iter().map(|x| x.powi(4)).sum())
}

/// Eigenstate IPR of every mode of the eigensystem, in spectrum order.
pub fn mode_iprs(es: &EigenSystem) -> Result<Vec<IprRecord>> {
    es.modes()
        .map(|(_, m)| {
            Ok(IprRecord::new(
                IprKind::Eigenstate,
                m.name(),
                eigenstate_ipr(&m.vector)?,
                es.path(),
            ))
        })
        .collect()
}

/// `Σ_i π̄_i²` for the given start.
pub fn dynamical_ipr(es: &EigenSystem, start: &Start) -> Result<f64> {
    let lim = limiting_distribution(es, start)?;
    Ok(lim.probabilities.iter().map(|p| p * p).sum())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralOverlap {
    /// `c_μ = ⟨φ_μ|start⟩`, in the order of [`EigenSystem::modes`].
    pub coefficients: Vec<f64>,
    /// `‖Π_k |start⟩‖²` per eigenspace.
    pub weights: Vec<f64>,
}

pub fn spectral_overlap(es: &EigenSystem, start: &Start) -> Result<SpectralOverlap> {
    let v = start.to_vector(es.dim())?;
    let coefficients: Vec<f64> = es.modes().map(|(_, m)| dot(&m.vector, &v)).collect();
    let weights = es
        .spaces()
        .iter()
        .map(|s| s.modes.iter().map(|m| dot(&m.vector, &v).powi(2)).sum())
        .collect();
    Ok(SpectralOverlap {
        coefficients,
        weights,
    })
}

/// `Σ_μ c_μ⁴ IPR_μ` in the eigensystem's own basis. Degenerate cross terms
/// are dropped, so the value depends on the basis chosen inside each
/// degenerate space; analytic systems use their labelled basis.
pub fn observation1_lower_bound(es: &EigenSystem, start: &Start) -> Result<f64> {
    let v = start.to_vector(es.dim())?;
    let mut total = 0.0;
    for (_, m) in es.modes() {
        let c = dot(&m.vector, &v);
        if c != 0.0 {
            total += c.powi(4) * eigenstate_ipr(&m.vector)?;
        }
    }
    Ok(total)
}

/// Diagonal, degenerate-pair and quartet pieces of `π̄_{ij}` for a fixed
/// start vertex `j`.
///
/// With `a_μ = φ_μ(i) φ_μ(j)`: `X_μ = a_μ²`, `Y_{μν} = 2 a_μ a_ν` for
/// `μ < ν` in one eigenspace, and `Z_{μν,rs} = ½ Y_{μν} Y_{rs}` for every
/// pair of degenerate pairs (the equal-gap condition reads `0 = 0`).
/// Individual `Y` terms are available through [`XyzDiagnostic::y_term`];
/// only per-space totals are stored.
#[derive(Debug, Clone)]
pub struct XyzDiagnostic {
    pub start: usize,
    /// Rows are targets `i`, columns modes in [`EigenSystem::modes`] order.
    pub x: Matrix,
    /// Rows are targets, columns eigenspaces: `Σ_{μ<ν ∈ k} Y_{μν}`.
    pub y_by_space: Matrix,
    pub x_totals: Vec<f64>,
    pub y_totals: Vec<f64>,
    pub z_totals: Vec<f64>,
    vectors: Vec<Vec<f64>>,
}

impl XyzDiagnostic {
    pub fn y_term(&self, i: usize, mu: usize, nu: usize) -> f64 {
        let (a, b) = (&self.vectors[mu], &self.vectors[nu]);
        2.0 * a[i] * a[self.start] * b[i] * b[self.start]
    }

    /// `π̄_{i,start} = ΣX + ΣY` per target.
    pub fn pi_bar(&self) -> Vec<f64> {
        self.x_totals.iter().zip(&self.y_totals).map(|(x, y)| x + y).collect()
    }

    /// `Σ_i (Σ_μ X)²`.
    pub fn t1(&self) -> f64 {
        self.x_totals.iter().map(|x| x * x).sum()
    }

    /// `2 Σ_i (Σ X)(Σ Y)`.
    pub fn t2(&self) -> f64 {
        2.0 * self.x_totals.iter().zip(&self.y_totals).map(|(x, y)| x * y).sum::<f64>()
    }

    /// `Σ_i (Σ Y)²`.
    pub fn t3(&self) -> f64 {
        self.y_totals.iter().map(|y| y * y).sum()
    }

    /// `Σ_i Σ Z`, which equals `t3 / 2`.
    pub fn z_sum(&self) -> f64 {
        self.z_totals.iter().sum()
    }

    /// `Σ_i (ΣX + ΣY)²`, the dynamical IPR.
    pub fn reconstruction(&self) -> f64 {
        self.t1() + self.t2() + self.t3()
    }

    /// `t1 + t2 + Σ Z`, the three-term sum with `Z` as defined.
    pub fn xyz_sum(&self) -> f64 {
        self.t1() + self.t2() + self.z_sum()
    }
}

pub fn xyz_decomposition(es: &EigenSystem, start: usize) -> Result<XyzDiagnostic> {
    let dim = es.dim();
    if start >= dim {
        return Err(Error::IndexOutOfRange {
            index: start,
            len: dim,
        });
    }
    let vectors: Vec<Vec<f64>> = es.modes().map(|(_, m)| m.vector.clone()).collect();
    let mut x = Matrix::zeros(dim, vectors.len());
    let mut y_by_space = Matrix::zeros(dim, es.spaces().len());
    let mut x_totals = vec![0.0; dim];
    let mut y_totals = vec![0.0; dim];

    let mut col = 0;
    for (k, space) in es.spaces().iter().enumerate() {
        let cols = col..col + space.multiplicity();
        for i in 0..dim {
            let (mut sum, mut sum_sq) = (0.0, 0.0);
            for mu in cols.clone() {
                let a = vectors[mu][i] * vectors[mu][start];
                x[(i, mu)] = a * a;
                sum += a;
                sum_sq += a * a;
            }
            // Σ_{μ<ν} 2 a_μ a_ν = (Σ a)² − Σ a²
            let y = sum * sum - sum_sq;
            y_by_space[(i, k)] = y;
            x_totals[i] += sum_sq;
            y_totals[i] += y;
        }
        col = cols.end;
    }
    let z_totals = y_totals.iter().map(|y| 0.5 * y * y).collect();

    Ok(XyzDiagnostic {
        start,
        x,
        y_by_space,
        x_totals,
        y_totals,
        z_totals,
        vectors,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassEntry {
    pub class: ClassTag,
    pub representative: usize,
    /// Second vertex of the class used for the symmetry check, if any.
    pub witness: Option<usize>,
    pub value: f64,
    /// `|ĪPR(representative) − ĪPR(witness)|`.
    pub symmetry_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassReport {
    pub family: Family,
    pub n: usize,
    pub path: SpectralPath,
    pub entries: Vec<ClassEntry>,
}

impl ClassReport {
    pub fn get(&self, class: ClassTag) -> Option<&ClassEntry> {
        self.entries.iter().find(|e| e.class == class)
    }
}

/// Dynamical IPR for one representative of every vertex class, with the
/// last vertex of the class as a symmetry witness.
pub fn vertex_class_report(g: &GraphInstance, es: &EigenSystem) -> Result<ClassReport> {
    if es.dim() != g.vertex_count() {
        return Err(Error::DimensionMismatch {
            expected: g.vertex_count(),
            actual: es.dim(),
        });
    }
    let entries = g
        .family()
        .class_tags()
        .par_iter()
        .map(|&class| {
            let members = g.vertices_of(class);
            let representative = members[0];
            let witness = (members.len() > 1).then(|| *members.last().unwrap());
            let value = dynamical_ipr(es, &Start::Vertex(representative))?;
            let symmetry_deviation = match witness {
                Some(w) => (dynamical_ipr(es, &Start::Vertex(w))? - value).abs(),
                None => 0.0,
            };
            Ok(ClassEntry {
                class,
                representative,
                witness,
                value,
                symmetry_deviation,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassReport {
        family: g.family(),
        n: g.n(),
        path: es.path(),
        entries,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OverlapSums {
    /// `Σ_j ⟨u_j|b_p⟩²`.
    pub u_sq: f64,
    /// `Σ_j ⟨u_j|b_p⟩⁴`.
    pub alpha: f64,
    /// `Σ_r ⟨w_p^{(r)}|c_{p,q}⟩²`.
    pub w_sq: f64,
    /// `Σ_r ⟨w_p^{(r)}|c_{p,q}⟩⁴`.
    pub beta: f64,
}

/// Overlap sums of the single-bridge star: bridge `p` (0-based clique)
/// against the `|u_j⟩` combinations, and internal vertex `(p, q)`,
/// `1 <= q < n`, against the internal eigenvectors `w_p^{(r)}` of `es`.
pub fn overlap_identity_sums(es: &EigenSystem, g: &GraphInstance, p: usize, q: usize) -> Result<OverlapSums> {
    if g.family() != Family::StarSingle {
        return Err(Error::FamilyMismatch {
            expected: Family::StarSingle,
            actual: g.family(),
        });
    }
    let n = g.n();
    if p >= n {
        return Err(Error::IndexOutOfRange { index: p, len: n });
    }
    if q == 0 || q >= n {
        return Err(Error::IndexOutOfRange { index: q, len: n });
    }
    let st = StarStates::new(g)?;
    let bridge = g.star_vertex(p, 0);
    let internal = g.star_vertex(p, q);

    let (mut u_sq, mut alpha) = (0.0, 0.0);
    for j in 1..n {
        let o = st.u(j)[bridge];
        u_sq += o * o;
        alpha += o.powi(4);
    }

    let ws: Vec<f64> = es
        .modes()
        .filter(|(_, m)| m.label == ModeLabel::V2W && m.block == Some(p))
        .map(|(_, m)| m.vector[internal])
        .collect();
    if ws.len() != n - 2 {
        return Err(Error::NeedsAnalyticBasis);
    }
    let w_sq = ws.iter().map(|o| o * o).sum();
    let beta = ws.iter().map(|o| o.powi(4)).sum();

    Ok(OverlapSums {
        u_sq,
        alpha,
        w_sq,
        beta,
    })
}
