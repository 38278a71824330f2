//! The three graph families and their normalized adjacency Hamiltonians.
//!
//! Vertex ordering is canonical and every analytic formula in
//! [`crate::analytic`] indexes into it:
//!
//! * barbell `B(n)`: `A_1 .. A_{n-1}, Br_A, Br_B, B_{n+2} .. B_{2n}` (so the
//!   bridge edge joins indices `n-1` and `n`);
//! * star of cliques (both variants): center first, then clique `0`, clique
//!   `1`, ...; inside clique `j` the member with within-clique index 0 is the
//!   one attached to the center in the single-connection variant.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// Two `n`-cliques joined by one bridge edge.
    Barbell,
    /// `n` cliques of size `n`, the hub adjacent to every clique vertex.
    StarFull,
    /// `n` cliques of size `n`, the hub adjacent to one vertex per clique.
    StarSingle,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Barbell, Family::StarFull, Family::StarSingle];

    pub fn min_size(self) -> usize {
        match self {
            Family::Barbell => 3,
            Family::StarFull => 2,
            Family::StarSingle => 3,
        }
    }

    pub fn vertex_count(self, n: usize) -> usize {
        match self {
            Family::Barbell => 2 * n,
            Family::StarFull | Family::StarSingle => n * n + 1,
        }
    }

    /// Short name used on the command line and in file output.
    pub fn cli_name(self) -> &'static str {
        match self {
            Family::Barbell => "barbell",
            Family::StarFull => "star1",
            Family::StarSingle => "star2",
        }
    }

    pub fn class_tags(self) -> &'static [ClassTag] {
        match self {
            Family::Barbell => &[
                ClassTag::CliqueA,
                ClassTag::BridgeA,
                ClassTag::BridgeB,
                ClassTag::CliqueB,
            ],
            Family::StarFull => &[ClassTag::Center, ClassTag::StarCliqueVertex],
            Family::StarSingle => &[ClassTag::Center, ClassTag::StarBridge, ClassTag::StarInternal],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::Barbell => "Barbell",
            Family::StarFull => "StarFull",
            Family::StarSingle => "StarSingle",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "barbell" | "b" => Ok(Family::Barbell),
            "star1" | "starfull" | "variant1" | "full" => Ok(Family::StarFull),
            "star2" | "starsingle" | "variant2" | "single" => Ok(Family::StarSingle),
            _ => Err(format!(
                "unknown family `{s}` (expected barbell, star1 or star2)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClassTag {
    CliqueA,
    CliqueB,
    BridgeA,
    BridgeB,
    Center,
    StarBridge,
    StarInternal,
    StarCliqueVertex,
}

impl ClassTag {
    pub const ALL: [ClassTag; 8] = [
        ClassTag::CliqueA,
        ClassTag::CliqueB,
        ClassTag::BridgeA,
        ClassTag::BridgeB,
        ClassTag::Center,
        ClassTag::StarBridge,
        ClassTag::StarInternal,
        ClassTag::StarCliqueVertex,
    ];
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for ClassTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClassTag::ALL
            .into_iter()
            .find(|t| t.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownClass(s.to_string()))
    }
}

/// Structural class of one vertex. Indices are zero-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexClass {
    pub tag: ClassTag,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clique_index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub within_clique_index: Option<usize>,
}

impl VertexClass {
    fn new(tag: ClassTag, clique: Option<usize>, within: Option<usize>) -> Self {
        Self {
            tag,
            clique_index: clique,
            within_clique_index: within,
        }
    }
}

/// A concrete family member. Immutable once built.
#[derive(Debug, Clone)]
pub struct GraphInstance {
    family: Family,
    n: usize,
    adjacency: Matrix,
    degrees: Vec<usize>,
    classes: Vec<VertexClass>,
}

/// Builds the family member of size parameter `n`.
pub fn build_graph(family: Family, n: usize) -> Result<GraphInstance> {
    let min = family.min_size();
    if n < min {
        return Err(Error::SizeTooSmall { family, n, min });
    }
    let count = family.vertex_count(n);
    let mut edges = Vec::new();
    let mut classes = Vec::with_capacity(count);

    match family {
        Family::Barbell => {
            for i in 0..n - 1 {
                classes.push(VertexClass::new(ClassTag::CliqueA, None, Some(i)));
            }
            classes.push(VertexClass::new(ClassTag::BridgeA, None, None));
            classes.push(VertexClass::new(ClassTag::BridgeB, None, None));
            for i in 0..n - 1 {
                classes.push(VertexClass::new(ClassTag::CliqueB, None, Some(i)));
            }
            // clique A = 0..n, clique B = n..2n
            for offset in [0, n] {
                for a in 0..n {
                    for b in (a + 1)..n {
                        edges.push((offset + a, offset + b));
                    }
                }
            }
            edges.push((n - 1, n));
        }
        Family::StarFull | Family::StarSingle => {
            classes.push(VertexClass::new(ClassTag::Center, None, None));
            for j in 0..n {
                let base = 1 + j * n;
                for k in 0..n {
                    let tag = match (family, k) {
                        (Family::StarFull, _) => ClassTag::StarCliqueVertex,
                        (_, 0) => ClassTag::StarBridge,
                        _ => ClassTag::StarInternal,
                    };
                    classes.push(VertexClass::new(tag, Some(j), Some(k)));
                    for l in (k + 1)..n {
                        edges.push((base + k, base + l));
                    }
                }
                if family == Family::StarFull {
                    edges.extend((0..n).map(|k| (0, base + k)));
                } else {
                    edges.push((0, base));
                }
            }
        }
    }

    let mut adjacency = Matrix::zeros(count, count);
    for &(a, b) in &edges {
        adjacency[(a, b)] = 1.0;
        adjacency[(b, a)] = 1.0;
    }
    let degrees = (0..count)
        .map(|i| adjacency.row(i).iter().filter(|&&x| x != 0.0).count())
        .collect();

    Ok(GraphInstance {
        family,
        n,
        adjacency,
        degrees,
        classes,
    })
}

impl GraphInstance {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.degrees.len()
    }

    pub fn adjacency(&self) -> &Matrix {
        &self.adjacency
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn classes(&self) -> &[VertexClass] {
        &self.classes
    }

    /// Lexicographically sorted edge list `(i, j)` with `i < j`.
    pub fn edges(&self) -> Vec<[usize; 2]> {
        let n = self.vertex_count();
        let mut out = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if self.adjacency[(i, j)] != 0.0 {
                    out.push([i, j]);
                }
            }
        }
        out
    }

    /// All vertices of the given class, in canonical order.
    pub fn vertices_of(&self, tag: ClassTag) -> Vec<usize> {
        self.classes
            .iter()
            .enumerate()
            .filter(|(_, c)| c.tag == tag)
            .map(|(i, _)| i)
            .collect()
    }

    /// First vertex of a class, used as its representative.
    pub fn representative(&self, tag: ClassTag) -> Result<usize> {
        self.vertices_of(tag)
            .first()
            .copied()
            .ok_or_else(|| Error::UnknownClass(format!("{tag} (not present in {})", self.family)))
    }

    /// Index of vertex `member` of clique `clique` in a star instance.
    pub fn star_vertex(&self, clique: usize, member: usize) -> usize {
        debug_assert!(self.family != Family::Barbell);
        1 + clique * self.n + member
    }

    pub fn to_export(&self) -> GraphExport {
        GraphExport {
            family: self.family.cli_name().to_string(),
            n: self.n,
            edges: self.edges(),
            degrees: self.degrees.clone(),
            classes: self.classes.clone(),
        }
    }
}

/// JSON export schema for a graph instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphExport {
    pub family: String,
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    pub degrees: Vec<usize>,
    pub classes: Vec<VertexClass>,
}

/// Normalized adjacency `Γ^{-1/2} M Γ^{-1/2}` of a graph instance, or an
/// arbitrary symmetric matrix for the numeric path (`source` is then `None`).
#[derive(Debug, Clone)]
pub struct Hamiltonian {
    pub source: Option<(Family, usize)>,
    matrix: Matrix,
}

impl Hamiltonian {
    pub fn from_matrix(matrix: Matrix) -> Result<Self> {
        if !matrix.is_square() || matrix.rows() == 0 {
            return Err(Error::BadShape {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let (deviation, row, col) = matrix.asymmetry();
        if deviation > 1e-12 * matrix.max_abs().max(1.0) {
            return Err(Error::NotSymmetric {
                row,
                col,
                deviation,
            });
        }
        Ok(Self {
            source: None,
            matrix,
        })
    }

    pub fn family(&self) -> Option<Family> {
        self.source.map(|(f, _)| f)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        self.matrix.mul_vec(v)
    }
}

pub fn normalized_adjacency(g: &GraphInstance) -> Hamiltonian {
    let scale: Vec<f64> = g.degrees.iter().map(|&d| 1.0 / (d as f64).sqrt()).collect();
    let n = g.vertex_count();
    let matrix = Matrix::from_fn(n, n, |i, j| g.adjacency[(i, j)] * scale[i] * scale[j]);
    Hamiltonian {
        source: Some((g.family, g.n)),
        matrix,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn barbell_three_degrees() {
        let g = build_graph(Family::Barbell, 3).unwrap();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.degrees(), &[2, 2, 3, 3, 2, 2]);
        assert_eq!(g.classes()[2].tag, ClassTag::BridgeA);
        assert_eq!(g.classes()[3].tag, ClassTag::BridgeB);
    }

    #[test]
    fn star_full_two() {
        let g = build_graph(Family::StarFull, 2).unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.degrees(), &[4, 2, 2, 2, 2]);
    }

    #[test]
    fn star_single_three() {
        let g = build_graph(Family::StarSingle, 3).unwrap();
        assert_eq!(g.vertex_count(), 10);
        assert_eq!(g.degrees()[0], 3);
        for j in 0..3 {
            assert_eq!(g.degrees()[g.star_vertex(j, 0)], 3);
            assert_eq!(g.degrees()[g.star_vertex(j, 1)], 2);
            assert_eq!(g.degrees()[g.star_vertex(j, 2)], 2);
        }
        assert_eq!(g.vertices_of(ClassTag::StarInternal).len(), 6);
    }

    #[test]
    fn rejects_small_sizes() {
        for (family, bad) in [(Family::Barbell, 2), (Family::StarFull, 1), (Family::StarSingle, 2)] {
            let err = build_graph(family, bad).unwrap_err();
            assert!(matches!(err, Error::SizeTooSmall { .. }), "{err}");
            assert!(err.to_string().contains("requires n >="));
        }
    }

    #[test]
    fn hamiltonian_entries() {
        let h = normalized_adjacency(&build_graph(Family::Barbell, 3).unwrap());
        assert!((h.matrix()[(0, 1)] - 0.5).abs() < 1e-15);

        let n = 5;
        let h = normalized_adjacency(&build_graph(Family::StarFull, n).unwrap());
        assert!((h.matrix()[(0, 1)] - (n as f64).powf(-1.5)).abs() < 1e-15);

        let h = normalized_adjacency(&build_graph(Family::StarSingle, n).unwrap());
        // two internal vertices of clique 0
        assert!((h.matrix()[(2, 3)] - 1.0 / (n as f64 - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn family_parsing() {
        assert_eq!("star1".parse::<Family>().unwrap(), Family::StarFull);
        assert_eq!("StarSingle".parse::<Family>().unwrap(), Family::StarSingle);
        assert!("triangle".parse::<Family>().is_err());
        assert_eq!("center".parse::<ClassTag>().unwrap(), ClassTag::Center);
    }
}
