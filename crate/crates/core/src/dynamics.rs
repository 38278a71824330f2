//! Walk dynamics from spectral projectors: `U(t) = Σ_k e^{−iλ_k t} Π_k`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{basis_vector, dot};
use crate::spectrum::{EigenSystem, COMPLETENESS_TOL};

/// Initial state: a vertex, or an arbitrary real unit vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Start {
    Vertex(usize),
    State(Vec<f64>),
}

impl Start {
    pub fn to_vector(&self, dim: usize) -> Result<Vec<f64>> {
        match self {
            Start::Vertex(i) if *i < dim => Ok(basis_vector(dim, *i)),
            Start::Vertex(i) => Err(Error::IndexOutOfRange { index: *i, len: dim }),
            Start::State(v) => {
                if v.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        actual: v.len(),
                    });
                }
                let norm_sq = dot(v, v);
                if (norm_sq - 1.0).abs() > 1e-10 {
                    return Err(Error::NotNormalized { norm_sq });
                }
                Ok(v.clone())
            }
        }
    }
}

impl From<usize> for Start {
    fn from(i: usize) -> Self {
        Start::Vertex(i)
    }
}

impl From<Vec<f64>> for Start {
    fn from(v: Vec<f64>) -> Self {
        Start::State(v)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WalkState {
    pub amplitudes: Vec<Complex64>,
    pub time: f64,
}

impl WalkState {
    pub fn norm_sq(&self) -> f64 {
        self.amplitudes.iter().map(Complex64::norm_sqr).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(Complex64::norm_sqr).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitingDistribution {
    pub start: Start,
    pub probabilities: Vec<f64>,
}

impl LimitingDistribution {
    pub fn total(&self) -> f64 {
        self.probabilities.iter().sum()
    }
}

/// The start state split into its eigenspace components `Π_k |start⟩`,
/// reusable across many times.
#[derive(Debug, Clone)]
pub struct Propagator {
    eigenvalues: Vec<f64>,
    components: Vec<Vec<f64>>,
}

impl Propagator {
    pub fn new(es: &EigenSystem, start: &Start) -> Result<Self> {
        let v = checked_start(es, start)?;
        Ok(Self {
            eigenvalues: es.eigenvalues(),
            components: es.spaces().iter().map(|s| s.project(&v)).collect(),
        })
    }

    pub fn state(&self, t: f64) -> WalkState {
        let dim = self.components.first().map_or(0, Vec::len);
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        for (lambda, comp) in self.eigenvalues.iter().zip(&self.components) {
            let phase = Complex64::from_polar(1.0, -lambda * t);
            for (a, &c) in amplitudes.iter_mut().zip(comp) {
                *a += phase * c;
            }
        }
        WalkState { amplitudes, time: t }
    }

    pub fn probabilities(&self, t: f64) -> Vec<f64> {
        self.state(t).probabilities()
    }

    /// `Σ_k (Π_k |start⟩)_i²`.
    pub fn limit(&self) -> Vec<f64> {
        let dim = self.components.first().map_or(0, Vec::len);
        let mut out = vec![0.0; dim];
        for comp in &self.components {
            for (o, c) in out.iter_mut().zip(comp) {
                *o += c * c;
            }
        }
        out
    }
}

fn checked_start(es: &EigenSystem, start: &Start) -> Result<Vec<f64>> {
    let deviation = es.completeness_deviation();
    if deviation > COMPLETENESS_TOL {
        return Err(Error::IncompleteEigensystem { deviation });
    }
    start.to_vector(es.dim())
}

pub fn evolve(es: &EigenSystem, start: &Start, t: f64) -> Result<WalkState> {
    Ok(Propagator::new(es, start)?.state(t))
}

/// `π_i(t) = |⟨i|U(t)|start⟩|²`.
pub fn transition_probabilities(es: &EigenSystem, start: &Start, t: f64) -> Result<Vec<f64>> {
    Ok(evolve(es, start, t)?.probabilities())
}

/// Long-time average `π̄_i = Σ_k ⟨i|Π_k|start⟩²`.
pub fn limiting_distribution(es: &EigenSystem, start: &Start) -> Result<LimitingDistribution> {
    Ok(LimitingDistribution {
        start: start.clone(),
        probabilities: Propagator::new(es, start)?.limit(),
    })
}

/// Trapezoidal average of `π(t)` over `[0, T]`. The step is adjusted down to
/// `T / ceil(T / dt)` so the grid ends exactly at `T`.
pub fn finite_time_average(es: &EigenSystem, start: &Start, t_max: f64, dt: f64) -> Result<Vec<f64>> {
    if !(t_max > 0.0 && dt > 0.0 && dt <= t_max / 10.0) {
        return Err(Error::InvalidWindow { t_max, dt });
    }
    let prop = Propagator::new(es, start)?;
    let steps = (t_max / dt).ceil() as usize;
    let h = t_max / steps as f64;
    let mut acc = vec![0.0; es.dim()];
    for s in 0..=steps {
        let w = if s == 0 || s == steps { 0.5 } else { 1.0 };
        for (a, p) in acc.iter_mut().zip(prop.probabilities(s as f64 * h)) {
            *a += w * p;
        }
    }
    acc.iter_mut().for_each(|a| *a *= h / t_max);
    Ok(acc)
}
