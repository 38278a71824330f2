//! Closed-form eigensystems of the three families.
//!
//! Vectors are written down directly from their component formulas (no
//! orthogonalization), so the labelled basis is exactly the one the IPR
//! formulas refer to. Vertex ordering follows [`crate::graph::build_graph`].

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{normalized_adjacency, Family, GraphInstance};
use crate::matrix::normalize;
use crate::spectrum::{EigenSystem, Mode, ModeLabel, SpectralPath, DEFAULT_GROUPING_TOL};

/// Roots of `a x² + b x + c = 0` via `q = −(b + sign(b)√disc)/2`, returned as
/// `(larger, smaller)`. Assumes real roots and `a != 0`.
pub fn solve_quadratic(a: f64, b: f64, c: f64) -> (f64, f64) {
    let disc = (b * b - 4.0 * a * c).max(0.0);
    let sign = if b >= 0.0 { 1.0 } else { -1.0 };
    let q = -0.5 * (b + sign * disc.sqrt());
    let (r1, r2) = if q == 0.0 { (0.0, 0.0) } else { (q / a, c / q) };
    if r1 >= r2 {
        (r1, r2)
    } else {
        (r2, r1)
    }
}

/// Helmert vector `(e_1 + … + e_r − r e_{r+1})/√(r(r+1))` on `len` slots,
/// `1 <= r < len`.
pub fn helmert(len: usize, r: usize) -> Vec<f64> {
    assert!(r >= 1 && r < len, "helmert index {r} out of range for length {len}");
    let scale = 1.0 / ((r * (r + 1)) as f64).sqrt();
    let mut v = vec![0.0; len];
    v[..r].iter_mut().for_each(|x| *x = scale);
    v[r] = -(r as f64) * scale;
    v
}

/// Places `values` at the given vertex indices of a zero vector of length `dim`.
fn scatter(dim: usize, indices: impl IntoIterator<Item = usize>, values: &[f64]) -> Vec<f64> {
    let mut v = vec![0.0; dim];
    for (i, &x) in indices.into_iter().zip(values) {
        v[i] = x;
    }
    v
}

fn require(g: &GraphInstance, family: Family) -> Result<()> {
    if g.family() != family {
        return Err(Error::FamilyMismatch {
            expected: family,
            actual: g.family(),
        });
    }
    Ok(())
}

/// Auxiliary states of the star families: clique blocks `|s_j⟩`, bridges
/// `|b_j⟩`, internal blocks `|c_j⟩`, their uniform mixtures and the
/// Helmert combinations `|u_j⟩`, `|v_j⟩`. Clique indices are 0-based;
/// Helmert indices `j` run from 1.
#[derive(Debug, Clone, Copy)]
pub struct StarStates {
    n: usize,
}

impl StarStates {
    pub fn new(g: &GraphInstance) -> Result<Self> {
        if g.family() == Family::Barbell {
            return Err(Error::FamilyMismatch {
                expected: Family::StarFull,
                actual: g.family(),
            });
        }
        Ok(Self { n: g.n() })
    }

    fn dim(&self) -> usize {
        self.n * self.n + 1
    }

    fn vertex(&self, clique: usize, member: usize) -> usize {
        1 + clique * self.n + member
    }

    pub fn center(&self) -> Vec<f64> {
        scatter(self.dim(), [0], &[1.0])
    }

    /// Uniform state over every vertex of clique `j`.
    pub fn s(&self, j: usize) -> Vec<f64> {
        let a = 1.0 / (self.n as f64).sqrt();
        scatter(self.dim(), (0..self.n).map(|k| self.vertex(j, k)), &vec![a; self.n])
    }

    /// Uniform state over all clique vertices.
    pub fn big_s(&self) -> Vec<f64> {
        let mut v = vec![1.0 / self.n as f64; self.dim()];
        v[0] = 0.0;
        v
    }

    /// Bridge (first) vertex of clique `j`.
    pub fn b(&self, j: usize) -> Vec<f64> {
        scatter(self.dim(), [self.vertex(j, 0)], &[1.0])
    }

    /// Uniform state over the internal vertices of clique `j`.
    pub fn c(&self, j: usize) -> Vec<f64> {
        let a = 1.0 / ((self.n - 1) as f64).sqrt();
        scatter(self.dim(), (1..self.n).map(|k| self.vertex(j, k)), &vec![a; self.n - 1])
    }

    pub fn big_b(&self) -> Vec<f64> {
        let a = 1.0 / (self.n as f64).sqrt();
        scatter(self.dim(), (0..self.n).map(|j| self.vertex(j, 0)), &vec![a; self.n])
    }

    pub fn big_c(&self) -> Vec<f64> {
        let mut v = vec![0.0; self.dim()];
        let a = 1.0 / ((self.n * (self.n - 1)) as f64).sqrt();
        for j in 0..self.n {
            for k in 1..self.n {
                v[self.vertex(j, k)] = a;
            }
        }
        v
    }

    /// Helmert combination of `block(0..=j)`; `j` in `1..n`.
    fn helmert_of(&self, j: usize, block: impl Fn(usize) -> Vec<f64>) -> Vec<f64> {
        let coeffs = helmert(self.n, j);
        let mut v = vec![0.0; self.dim()];
        for (m, &cm) in coeffs.iter().enumerate().take(j + 1) {
            for (o, x) in v.iter_mut().zip(block(m)) {
                *o += cm * x;
            }
        }
        v
    }

    pub fn u(&self, j: usize) -> Vec<f64> {
        self.helmert_of(j, |m| self.b(m))
    }

    pub fn v(&self, j: usize) -> Vec<f64> {
        self.helmert_of(j, |m| self.c(m))
    }

    /// Helmert combination of the `|s_m⟩` blocks, i.e. `|χ_j⟩`.
    pub fn chi(&self, j: usize) -> Vec<f64> {
        self.helmert_of(j, |m| self.s(m))
    }
}

fn add_scaled(terms: &[(f64, &[f64])]) -> Vec<f64> {
    let mut out = vec![0.0; terms[0].1.len()];
    for (w, v) in terms {
        for (o, x) in out.iter_mut().zip(v.iter()) {
            *o += w * x;
        }
    }
    out
}

/// Antisymmetric-sector quadratic `n(n−1)λ² − (n²−3n+1)λ − (2n−3) = 0`.
pub fn barbell_antisymmetric_eigenvalues(n: usize) -> (f64, f64) {
    let nf = n as f64;
    solve_quadratic(nf * (nf - 1.0), -(nf * nf - 3.0 * nf + 1.0), -(2.0 * nf - 3.0))
}

/// Closed-form eigensystem of the barbell graph.
pub fn barbell_spectrum(g: &GraphInstance) -> Result<EigenSystem> {
    require(g, Family::Barbell)?;
    let n = g.n();
    let dim = 2 * n;
    let nf = n as f64;
    let mut modes = Vec::with_capacity(dim);

    let lambda0 = -1.0 / (nf - 1.0);
    for (block, offset) in [(0, 0), (1, n + 1)] {
        for k in 1..=n - 2 {
            let v = scatter(dim, offset..offset + n - 1, &helmert(n - 1, k));
            modes.push((lambda0, Mode::new(ModeLabel::BarbellDegenerate, k, Some(block), v)));
        }
    }

    // Components: 1 on the non-bridge vertices of A, b on Br_A, ±b on Br_B,
    // ±1 on the non-bridge vertices of B, with b fixed by the clique equation.
    let inner = (nf - 2.0) / (nf - 1.0);
    let sector = |lambda: f64, sign: f64| {
        let b = (lambda - inner) * (nf * (nf - 1.0)).sqrt();
        let mut v = vec![0.0; dim];
        v[..n - 1].iter_mut().for_each(|x| *x = 1.0);
        v[n - 1] = b;
        v[n] = sign * b;
        v[n + 1..].iter_mut().for_each(|x| *x = sign);
        normalize(&mut v);
        v
    };
    let sym_minus = -1.0 / (nf * (nf - 1.0));
    let (anti_plus, anti_minus) = barbell_antisymmetric_eigenvalues(n);
    for (lambda, sign, label) in [
        (1.0, 1.0, ModeLabel::BarbellSymPlus),
        (sym_minus, 1.0, ModeLabel::BarbellSymMinus),
        (anti_plus, -1.0, ModeLabel::BarbellAntiPlus),
        (anti_minus, -1.0, ModeLabel::BarbellAntiMinus),
    ] {
        modes.push((lambda, Mode::new(label, 1, None, sector(lambda, sign))));
    }

    Ok(EigenSystem::from_modes(
        Arc::new(normalized_adjacency(g)),
        SpectralPath::Analytic,
        modes,
        DEFAULT_GROUPING_TOL,
    ))
}

/// Closed-form eigensystem of the star of cliques with every clique vertex
/// joined to the center.
pub fn star_full_spectrum(g: &GraphInstance) -> Result<EigenSystem> {
    require(g, Family::StarFull)?;
    let n = g.n();
    let nf = n as f64;
    let st = StarStates::new(g)?;
    let dim = st.dim();
    let mut modes = Vec::with_capacity(dim);

    let (c0, cs) = (st.center(), st.big_s());
    let norm = 1.0 / (1.0 + nf).sqrt();
    let psi1 = add_scaled(&[(norm, &c0), (nf.sqrt() * norm, &cs)]);
    let psi2 = add_scaled(&[(nf.sqrt() * norm, &c0), (-norm, &cs)]);
    modes.push((1.0, Mode::new(ModeLabel::V1Psi1, 1, None, psi1)));
    modes.push((-1.0 / nf, Mode::new(ModeLabel::V1Psi2, 1, None, psi2)));

    for j in 1..n {
        modes.push(((nf - 1.0) / nf, Mode::new(ModeLabel::V1Chi, j, None, st.chi(j))));
    }
    for clique in 0..n {
        for r in 1..n {
            let v = scatter(dim, (0..n).map(|k| g.star_vertex(clique, k)), &helmert(n, r));
            modes.push((-1.0 / nf, Mode::new(ModeLabel::V1W, r, Some(clique), v)));
        }
    }

    Ok(EigenSystem::from_modes(
        Arc::new(normalized_adjacency(g)),
        SpectralPath::Analytic,
        modes,
        DEFAULT_GROUPING_TOL,
    ))
}

/// Non-unit roots of the center/bridge/internal sector,
/// `λ² + λ/(n−1) − (n−2)/(n(n−1)) = 0`, as `(λ₂, λ₃)`.
pub fn star_single_w1_eigenvalues(n: usize) -> (f64, f64) {
    let nf = n as f64;
    solve_quadratic(1.0, 1.0 / (nf - 1.0), -(nf - 2.0) / (nf * (nf - 1.0)))
}

/// Roots of the bridge/internal difference sector,
/// `λ² − ((n−2)/(n−1))λ − 1/n = 0`, as `(λ₄, λ₅)`.
pub fn star_single_w2_eigenvalues(n: usize) -> (f64, f64) {
    let nf = n as f64;
    solve_quadratic(1.0, -(nf - 2.0) / (nf - 1.0), -1.0 / nf)
}

/// Closed-form eigensystem of the star of cliques with one bridge vertex per
/// clique joined to the center.
pub fn star_single_spectrum(g: &GraphInstance) -> Result<EigenSystem> {
    require(g, Family::StarSingle)?;
    let n = g.n();
    let nf = n as f64;
    let st = StarStates::new(g)?;
    let dim = st.dim();
    let mut modes = Vec::with_capacity(dim);

    let (c0, cb, cc) = (st.center(), st.big_b(), st.big_c());
    let d = 1.0 + nf + (nf - 1.0).powi(2);
    let psi1 = add_scaled(&[(1.0, &c0), (nf.sqrt(), &cb), (nf - 1.0, &cc)]);
    let mut psi1 = psi1;
    psi1.iter_mut().for_each(|x| *x /= d.sqrt());
    modes.push((1.0, Mode::new(ModeLabel::V2Psi1, 1, None, psi1)));

    let (l2, l3) = star_single_w1_eigenvalues(n);
    for (lambda, label) in [(l2, ModeLabel::V2Psi2), (l3, ModeLabel::V2Psi3)] {
        let z = lambda * lambda * nf - 1.0;
        let norm = 1.0 / (1.0 + lambda * lambda * nf + z * z).sqrt();
        let v = add_scaled(&[(norm, &c0), (norm * lambda * nf.sqrt(), &cb), (norm * z, &cc)]);
        modes.push((lambda, Mode::new(label, 1, None, v)));
    }

    let (l4, l5) = star_single_w2_eigenvalues(n);
    for j in 1..n {
        let (u, v) = (st.u(j), st.v(j));
        for (lambda, label) in [(l4, ModeLabel::V2Phi4), (l5, ModeLabel::V2Phi5)] {
            let beta = lambda * nf.sqrt();
            let norm = 1.0 / (1.0 + beta * beta).sqrt();
            let phi = add_scaled(&[(norm, &u), (norm * beta, &v)]);
            modes.push((lambda, Mode::new(label, j, None, phi)));
        }
    }

    let lambda6 = -1.0 / (nf - 1.0);
    for clique in 0..n {
        for r in 1..n - 1 {
            let v = scatter(dim, (1..n).map(|k| g.star_vertex(clique, k)), &helmert(n - 1, r));
            modes.push((lambda6, Mode::new(ModeLabel::V2W, r, Some(clique), v)));
        }
    }

    Ok(EigenSystem::from_modes(
        Arc::new(normalized_adjacency(g)),
        SpectralPath::Analytic,
        modes,
        DEFAULT_GROUPING_TOL,
    ))
}

/// Closed-form eigensystem for any family.
pub fn analytic_spectrum(g: &GraphInstance) -> Result<EigenSystem> {
    match g.family() {
        Family::Barbell => barbell_spectrum(g),
        Family::StarFull => star_full_spectrum(g),
        Family::StarSingle => star_single_spectrum(g),
    }
}

/// Leading-order large-`n` eigenvalue expansions, as catalogued. `n` may be
/// `f64::INFINITY`.
///
/// The star-single `V2Psi2`/`V2Psi3` entries are the catalogued expansions and
/// do not track the exact roots of [`star_single_w1_eigenvalues`], which
/// approach `±1/√n`; likewise `BarbellAntiPlus` is catalogued as `2/n` while
/// the exact root tends to 1. They are reference values only.
pub fn asymptotic_eigenvalues(family: Family, n: f64) -> Result<Vec<(ModeLabel, f64)>> {
    let min = family.min_size();
    if n < min as f64 {
        return Err(Error::SizeTooSmall {
            family,
            n: n as usize,
            min,
        });
    }
    Ok(match family {
        Family::Barbell => vec![
            (ModeLabel::BarbellAntiPlus, 2.0 / n),
            (ModeLabel::BarbellAntiMinus, -2.0 / n),
            (ModeLabel::BarbellSymMinus, -1.0 / (n * n)),
        ],
        Family::StarFull => Vec::new(),
        Family::StarSingle => vec![
            (ModeLabel::V2Psi2, 1.0 - 3.0 / (2.0 * n)),
            (ModeLabel::V2Psi3, -1.0 + 1.0 / (2.0 * n)),
            (ModeLabel::V2Phi4, 1.0 - 1.0 / (4.0 * n * n)),
            (ModeLabel::V2Phi5, -1.0 / n + 1.0 / (n * n)),
        ],
    })
}

/// Single entry of [`asymptotic_eigenvalues`].
pub fn asymptotic_eigenvalue(family: Family, label: ModeLabel, n: f64) -> Result<f64> {
    asymptotic_eigenvalues(family, n)?
        .into_iter()
        .find(|(l, _)| *l == label)
        .map(|(_, v)| v)
        .ok_or_else(|| Error::UnknownLabel(format!("{label} has no expansion for {family}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::matrix::dot;

    fn check_eigensystem(es: &EigenSystem) {
        assert_eq!(es.mode_count(), es.dim());
        assert!(es.max_residual() < 1e-10, "residual {}", es.max_residual());
        assert!(es.gram_deviation() < 1e-10, "gram {}", es.gram_deviation());
    }

    #[test]
    fn quadratic_is_stable_for_tiny_roots() {
        let (hi, lo) = solve_quadratic(1.0, -1.0, -1e-12);
        assert!((hi - (1.0 + 1e-12)).abs() < 1e-15);
        // the textbook formula loses every digit of this root
        let exact = -1e-12 / (1.0 + 1e-12);
        assert!(((lo - exact) / exact).abs() < 1e-14);
    }

    #[test]
    fn helmert_is_orthonormal() {
        let vs: Vec<_> = (1..5).map(|r| helmert(5, r)).collect();
        for (a, va) in vs.iter().enumerate() {
            assert!(va.iter().sum::<f64>().abs() < 1e-15);
            for (b, vb) in vs.iter().enumerate() {
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((dot(va, vb) - want).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn barbell_three() {
        let g = build_graph(Family::Barbell, 3).unwrap();
        let es = barbell_spectrum(&g).unwrap();
        check_eigensystem(&es);
        assert_eq!(es.multiplicities(), vec![1, 2, 1, 1, 1]);
        let s73 = 73f64.sqrt();
        let want = [(1.0 - s73) / 12.0, -0.5, -1.0 / 6.0, (1.0 + s73) / 12.0, 1.0];
        for (got, want) in es.eigenvalues().iter().zip(want) {
            assert!((got - want).abs() < 1e-14, "{got} vs {want}");
        }
    }

    #[test]
    fn all_families_are_eigensystems() {
        for family in Family::ALL {
            for n in family.min_size()..=9 {
                let g = build_graph(family, n).unwrap();
                let es = analytic_spectrum(&g).unwrap();
                check_eigensystem(&es);
                es.ensure_complete(1e-9).unwrap();
            }
        }
    }

    #[test]
    fn star_full_three_merges_minus_one_over_n() {
        let g = build_graph(Family::StarFull, 3).unwrap();
        let es = star_full_spectrum(&g).unwrap();
        assert_eq!(es.multiplicities(), vec![7, 2, 1]);
        let ev = es.eigenvalues();
        assert!((ev[0] + 1.0 / 3.0).abs() < 1e-15);
        assert!((ev[1] - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(ev[2], 1.0);
        for j in 1..3 {
            let (_, chi) = es.find_mode(ModeLabel::V1Chi, j, None).unwrap();
            assert_eq!(chi.vector[0], 0.0);
        }
    }

    #[test]
    fn star_single_three() {
        let g = build_graph(Family::StarSingle, 3).unwrap();
        let es = star_single_spectrum(&g).unwrap();
        assert_eq!(es.multiplicities(), vec![1, 3, 2, 1, 2, 1]);
        let (l4, l5) = star_single_w2_eigenvalues(3);
        assert!((l4 + l5 - 0.5).abs() < 1e-15);
        assert!((l4 * l5 + 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(*es.eigenvalues().last().unwrap(), 1.0);
    }

    #[test]
    fn wrong_family_is_rejected() {
        let g = build_graph(Family::StarFull, 3).unwrap();
        assert!(matches!(barbell_spectrum(&g), Err(Error::FamilyMismatch { .. })));
    }

    #[test]
    fn catalogued_expansions() {
        let v = asymptotic_eigenvalue(Family::Barbell, ModeLabel::BarbellAntiPlus, 100.0).unwrap();
        assert!((v - 0.02).abs() < 1e-15);
        let v = asymptotic_eigenvalue(Family::StarSingle, ModeLabel::V2Psi2, 100.0).unwrap();
        assert!((v - 0.985).abs() < 1e-15);
        let v = asymptotic_eigenvalue(Family::StarSingle, ModeLabel::V2Phi5, f64::INFINITY).unwrap();
        assert_eq!(v, 0.0);
        assert!(asymptotic_eigenvalue(Family::StarFull, ModeLabel::V1Psi1, 10.0).is_err());
    }
}
