//! Graph construction shared by the integration tests, written from the
//! family definitions rather than through the library.

#![allow(dead_code)]

use nalgebra::DMatrix;

use cliquewalk::Family;

pub fn edges(family: Family, n: usize) -> (usize, Vec<(usize, usize)>) {
    let mut e = Vec::new();
    let clique = |e: &mut Vec<(usize, usize)>, first: usize| {
        for a in first..first + n {
            for b in a + 1..first + n {
                e.push((a, b));
            }
        }
    };
    match family {
        Family::Barbell => {
            clique(&mut e, 0);
            clique(&mut e, n);
            e.push((n - 1, n));
            (2 * n, e)
        }
        Family::StarFull | Family::StarSingle => {
            for j in 0..n {
                let first = 1 + j * n;
                clique(&mut e, first);
                if family == Family::StarFull {
                    (first..first + n).for_each(|v| e.push((0, v)));
                } else {
                    e.push((0, first));
                }
            }
            (n * n + 1, e)
        }
    }
}

/// `Γ^{-1/2} M Γ^{-1/2}`.
pub fn hamiltonian(family: Family, n: usize) -> DMatrix<f64> {
    let (dim, e) = edges(family, n);
    let mut m = DMatrix::zeros(dim, dim);
    for (a, b) in e {
        m[(a, b)] = 1.0;
        m[(b, a)] = 1.0;
    }
    let deg: Vec<f64> = (0..dim).map(|i| m.row(i).sum()).collect();
    DMatrix::from_fn(dim, dim, |i, j| m[(i, j)] / (deg[i] * deg[j]).sqrt())
}

/// Limiting distribution from `start` via nalgebra's symmetric eigensolver,
/// grouping eigenvalues closer than `tol`.
pub fn limit_oracle(h: &DMatrix<f64>, start: usize, tol: f64) -> Vec<f64> {
    let eig = h.clone().symmetric_eigen();
    let dim = h.nrows();
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let mut out = vec![0.0; dim];
    let mut i = 0;
    while i < dim {
        let mut j = i + 1;
        while j < dim && eig.eigenvalues[order[j]] - eig.eigenvalues[order[i]] < tol {
            j += 1;
        }
        let mut proj = vec![0.0; dim];
        for &k in &order[i..j] {
            let col = eig.eigenvectors.column(k);
            let c = col[start];
            for (p, x) in proj.iter_mut().zip(col.iter()) {
                *p += c * x;
            }
        }
        for (o, p) in out.iter_mut().zip(&proj) {
            *o += p * p;
        }
        i = j;
    }
    out
}

pub fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
