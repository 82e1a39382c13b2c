//! Integer Hamiltonians attached to a graph.
//!
//! A [`Hamiltonian`] is a symmetric integer matrix whose off-diagonal entry
//! `(u, v)` is nonzero exactly when `{u, v}` is an edge, with every nonzero
//! off-diagonal entry of one sign. Adjacency, Laplacian and signless
//! Laplacian matrices (weighted or not) all belong to this class; arbitrary
//! matrices enter through [`Hamiltonian::custom`] and are validated.

use std::fmt;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HamiltonianKind {
    /// 0/1 adjacency matrix; edge weights are ignored.
    Adjacency,
    /// `D - W` with `D` the weighted degrees.
    Laplacian,
    /// `D + W`.
    SignlessLaplacian,
    /// `W`, the weighted adjacency matrix.
    WeightedAdjacency,
    Custom,
}

impl fmt::Display for HamiltonianKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            HamiltonianKind::Adjacency => "adjacency",
            HamiltonianKind::Laplacian => "laplacian",
            HamiltonianKind::SignlessLaplacian => "signless_laplacian",
            HamiltonianKind::WeightedAdjacency => "weighted_adjacency",
            HamiltonianKind::Custom => "custom",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HamiltonianError {
    #[error("matrix is {rows}x{cols} but the graph has {n} vertices")]
    Shape { rows: usize, cols: usize, n: usize },
    #[error("entry ({row}, {col}) = {value} is not an integer")]
    NonInteger { row: usize, col: usize, value: f64 },
    #[error("entries ({row}, {col}) and ({col}, {row}) differ")]
    Asymmetric { row: usize, col: usize },
    #[error("entry ({row}, {col}) disagrees with the graph: {reason}")]
    PatternMismatch {
        row: usize,
        col: usize,
        reason: &'static str,
    },
    #[error("entry ({row}, {col}) has the opposite sign to the other off-diagonal entries")]
    MixedSign { row: usize, col: usize },
    #[error("custom matrices must be built with Hamiltonian::custom")]
    CustomKind,
}

/// Dense square matrix of arbitrary-precision integers, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix {
            n,
            data: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::from(1);
        }
        m
    }

    /// Builds from rows; fails on ragged input.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(IntMatrix {
            n,
            data: rows.iter().flatten().cloned().map(Into::into).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.n + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| {
            self.get(i, j).to_f64().expect("BigInt converts to f64")
        })
    }

    /// Rows as `i64` when every entry fits.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.n)
            .map(|i| self.row(i).iter().map(ToPrimitive::to_i64).collect())
            .collect()
    }

    pub fn trace(&self) -> BigInt {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }
}

#[derive(Debug, Clone)]
pub struct Hamiltonian {
    kind: HamiltonianKind,
    entries: IntMatrix,
    graph: Graph,
}

impl Hamiltonian {
    /// Builds one of the standard matrices of `g`. Use [`Hamiltonian::custom`]
    /// for caller-supplied matrices.
    pub fn build(g: &Graph, kind: HamiltonianKind) -> Result<Self, HamiltonianError> {
        let n = g.order();
        let mut entries = IntMatrix::zeros(n);
        let off_sign: i64 = match kind {
            HamiltonianKind::Laplacian => -1,
            HamiltonianKind::Custom => return Err(HamiltonianError::CustomKind),
            _ => 1,
        };
        let with_degree = matches!(
            kind,
            HamiltonianKind::Laplacian | HamiltonianKind::SignlessLaplacian
        );
        for (u, v, w) in g.weighted_edges() {
            let w = if kind == HamiltonianKind::Adjacency { 1 } else { w };
            let w = BigInt::from(w);
            entries.set(u, v, &w * off_sign);
            entries.set(v, u, &w * off_sign);
            if with_degree {
                let du = entries.get(u, u) + &w;
                let dv = entries.get(v, v) + &w;
                entries.set(u, u, du);
                entries.set(v, v, dv);
            }
        }
        Ok(Hamiltonian {
            kind,
            entries,
            graph: g.clone(),
        })
    }

    /// Wraps a caller-supplied integer matrix after checking that it belongs
    /// to the admissible class for `g`.
    pub fn custom(g: &Graph, entries: IntMatrix) -> Result<Self, HamiltonianError> {
        validate(g, &entries)?;
        Ok(Hamiltonian {
            kind: HamiltonianKind::Custom,
            entries,
            graph: g.clone(),
        })
    }

    /// Like [`Hamiltonian::custom`] but from floating-point rows, each of
    /// which must hold exact integers.
    pub fn custom_from_f64(g: &Graph, rows: &[Vec<f64>]) -> Result<Self, HamiltonianError> {
        let n = g.order();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(HamiltonianError::Shape {
                rows: rows.len(),
                cols: rows.first().map_or(0, Vec::len),
                n,
            });
        }
        let mut m = IntMatrix::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if !x.is_finite() || x.fract() != 0.0 || x.abs() > 9.007_199_254_740_992e15 {
                    return Err(HamiltonianError::NonInteger {
                        row: i,
                        col: j,
                        value: x,
                    });
                }
                m.set(i, j, BigInt::from(x as i64));
            }
        }
        Self::custom(g, m)
    }

    pub fn kind(&self) -> HamiltonianKind {
        self.kind
    }

    pub fn entries(&self) -> &IntMatrix {
        &self.entries
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn dim(&self) -> usize {
        self.entries.dim()
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        self.entries.to_f64()
    }

    /// Exact `tr(M^2)`, which for symmetric `M` is the sum of squared entries.
    pub fn trace_square(&self) -> BigInt {
        self.entries.data.iter().map(|x| x * x).sum()
    }

    pub fn row_sums(&self) -> Vec<BigInt> {
        (0..self.dim())
            .map(|i| self.entries.row(i).iter().sum())
            .collect()
    }

    /// JSON dump: `{"kind": ..., "entries": [[...], ...]}`. Entries that do
    /// not fit in an `i64` are written as decimal strings.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = (0..self.dim())
            .map(|i| {
                self.entries
                    .row(i)
                    .iter()
                    .map(|x| match x.to_i64() {
                        Some(v) => serde_json::Value::from(v),
                        None => serde_json::Value::from(x.to_string()),
                    })
                    .collect()
            })
            .collect();
        serde_json::json!({ "kind": self.kind, "entries": rows })
    }
}

/// Checks symmetry, agreement of the off-diagonal zero pattern with `g`,
/// and that all nonzero off-diagonal entries share one sign.
pub fn validate(g: &Graph, m: &IntMatrix) -> Result<(), HamiltonianError> {
    let n = g.order();
    if m.dim() != n {
        return Err(HamiltonianError::Shape {
            rows: m.dim(),
            cols: m.dim(),
            n,
        });
    }
    let mut sign: Option<bool> = None;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let x = m.get(i, j);
            if x != m.get(j, i) {
                return Err(HamiltonianError::Asymmetric {
                    row: i.min(j),
                    col: i.max(j),
                });
            }
            match (x.is_zero(), g.has_edge(i, j)) {
                (true, true) => {
                    return Err(HamiltonianError::PatternMismatch {
                        row: i,
                        col: j,
                        reason: "zero entry on an edge",
                    })
                }
                (false, false) => {
                    return Err(HamiltonianError::PatternMismatch {
                        row: i,
                        col: j,
                        reason: "nonzero entry on a non-edge",
                    })
                }
                (true, false) => {}
                (false, true) => {
                    let positive = x.is_positive();
                    match sign {
                        None => sign = Some(positive),
                        Some(s) if s != positive => {
                            return Err(HamiltonianError::MixedSign { row: i, col: j })
                        }
                        Some(_) => {}
                    }
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, hypercube, path, star};

    fn rows(h: &Hamiltonian) -> Vec<Vec<i64>> {
        h.entries().to_i64_rows().unwrap()
    }

    #[test]
    fn small_fixtures() {
        let p2 = path(2).unwrap();
        let a = Hamiltonian::build(&p2, HamiltonianKind::Adjacency).unwrap();
        assert_eq!(rows(&a), vec![vec![0, 1], vec![1, 0]]);
        let l = Hamiltonian::build(&p2, HamiltonianKind::Laplacian).unwrap();
        assert_eq!(rows(&l), vec![vec![1, -1], vec![-1, 1]]);
        let q = Hamiltonian::build(&p2, HamiltonianKind::SignlessLaplacian).unwrap();
        assert_eq!(rows(&q), vec![vec![1, 1], vec![1, 1]]);

        let p3 = path(3).unwrap();
        let a3 = Hamiltonian::build(&p3, HamiltonianKind::Adjacency).unwrap();
        assert_eq!(rows(&a3), vec![vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]]);
    }

    #[test]
    fn trace_square_fixtures() {
        let p3 = path(3).unwrap();
        let a = Hamiltonian::build(&p3, HamiltonianKind::Adjacency).unwrap();
        assert_eq!(a.trace_square(), BigInt::from(4));
        let q3 = hypercube(3).unwrap();
        let a = Hamiltonian::build(&q3, HamiltonianKind::Adjacency).unwrap();
        assert_eq!(a.trace_square(), BigInt::from(24));

        // direct product oracle for L(P2)
        let l = Hamiltonian::build(&path(2).unwrap(), HamiltonianKind::Laplacian).unwrap();
        let m = rows(&l);
        let tr: i64 = (0..2)
            .flat_map(|i| (0..2).map(move |k| (i, k)))
            .map(|(i, k)| m[i][k] * m[k][i])
            .sum();
        assert_eq!(tr, 4);
        assert_eq!(l.trace_square(), BigInt::from(4));
    }

    #[test]
    fn weights_enter_all_but_plain_adjacency() {
        let g = Graph::with_weights(3, [(0, 1, 2), (1, 2, 3)]).unwrap();
        let a = Hamiltonian::build(&g, HamiltonianKind::Adjacency).unwrap();
        assert_eq!(rows(&a)[0][1], 1);
        let w = Hamiltonian::build(&g, HamiltonianKind::WeightedAdjacency).unwrap();
        assert_eq!(rows(&w), vec![vec![0, 2, 0], vec![2, 0, 3], vec![0, 3, 0]]);
        let l = Hamiltonian::build(&g, HamiltonianKind::Laplacian).unwrap();
        assert_eq!(rows(&l), vec![vec![2, -2, 0], vec![-2, 5, -3], vec![0, -3, 3]]);
        assert!(l.row_sums().iter().all(Zero::is_zero));
    }

    #[test]
    fn laplacian_identities() {
        for g in [cycle(5).unwrap(), star(4).unwrap(), hypercube(3).unwrap()] {
            let l = Hamiltonian::build(&g, HamiltonianKind::Laplacian).unwrap();
            assert!(l.row_sums().iter().all(Zero::is_zero));
            assert_eq!(l.entries().trace(), BigInt::from(2 * g.size()));
            let a = Hamiltonian::build(&g, HamiltonianKind::Adjacency).unwrap();
            assert_eq!(a.trace_square(), BigInt::from(2 * g.size()));
        }
    }

    #[test]
    fn custom_validation_errors() {
        let p3 = path(3).unwrap();
        assert!(matches!(
            Hamiltonian::build(&p3, HamiltonianKind::Custom),
            Err(HamiltonianError::CustomKind)
        ));
        let ok = vec![vec![5.0, -2.0, 0.0], vec![-2.0, 0.0, -7.0], vec![0.0, -7.0, 1.0]];
        let h = Hamiltonian::custom_from_f64(&p3, &ok).unwrap();
        assert_eq!(h.kind(), HamiltonianKind::Custom);

        let mut frac = ok.clone();
        frac[1][1] = 0.5;
        assert!(matches!(
            Hamiltonian::custom_from_f64(&p3, &frac),
            Err(HamiltonianError::NonInteger { row: 1, col: 1, .. })
        ));
        let mut asym = ok.clone();
        asym[0][1] = -3.0;
        assert_eq!(
            Hamiltonian::custom_from_f64(&p3, &asym).unwrap_err(),
            HamiltonianError::Asymmetric { row: 0, col: 1 }
        );
        let mut mixed = ok.clone();
        mixed[1][2] = 7.0;
        mixed[2][1] = 7.0;
        assert!(matches!(
            Hamiltonian::custom_from_f64(&p3, &mixed),
            Err(HamiltonianError::MixedSign { .. })
        ));
        let mut extra = ok.clone();
        extra[0][2] = -1.0;
        extra[2][0] = -1.0;
        assert!(matches!(
            Hamiltonian::custom_from_f64(&p3, &extra),
            Err(HamiltonianError::PatternMismatch { row: 0, col: 2, .. })
        ));
        let mut missing = ok;
        missing[0][1] = 0.0;
        missing[1][0] = 0.0;
        assert!(matches!(
            Hamiltonian::custom_from_f64(&p3, &missing),
            Err(HamiltonianError::PatternMismatch { row: 0, col: 1, .. })
        ));
        assert!(matches!(
            Hamiltonian::custom_from_f64(&p3, &[vec![0.0]]),
            Err(HamiltonianError::Shape { .. })
        ));
    }

    #[test]
    fn json_dump() {
        let h = Hamiltonian::build(&path(2).unwrap(), HamiltonianKind::Laplacian).unwrap();
        assert_eq!(
            h.to_json().to_string(),
            r#"{"entries":[[1,-1],[-1,1]],"kind":"laplacian"}"#
        );
    }
}
