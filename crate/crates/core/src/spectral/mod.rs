//! Spectral decomposition `M = Σ θ_r E_r` and eigenvalue supports.
//!
//! Two layers work side by side. A floating-point symmetric eigensolve
//! yields the distinct eigenvalues and their orthogonal projectors; the
//! exact characteristic polynomial ([`charpoly`]) is then used to certify
//! that a numerically integer or quadratic eigenvalue really is one.

pub mod charpoly;
pub mod krylov;

use nalgebra::DMatrix;
use serde::Serialize;
use thiserror::Error;

pub use charpoly::{certify_integer_eigenvalue, certify_quadratic_factor, char_poly, CharPoly};
pub use krylov::walk_module_dimension;

use crate::hamiltonian::Hamiltonian;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("cannot decompose an empty matrix")]
    Empty,
    #[error("symmetric eigensolver did not converge on a {0}x{0} matrix")]
    NoConvergence(usize),
    #[error("vertex {vertex} out of range for order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
}

const MAX_EIGEN_ITERATIONS: usize = 100_000;

#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    /// Distinct eigenvalues, strictly decreasing.
    thetas: Vec<f64>,
    multiplicities: Vec<usize>,
    idempotents: Vec<DMatrix<f64>>,
    charpoly: CharPoly,
    spectral_radius: f64,
    warnings: Vec<String>,
}

impl SpectralDecomposition {
    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    pub fn idempotents(&self) -> &[DMatrix<f64>] {
        &self.idempotents
    }

    pub fn charpoly(&self) -> &CharPoly {
        &self.charpoly
    }

    pub fn spectral_radius(&self) -> f64 {
        self.spectral_radius
    }

    /// Near-degenerate clusters and similar numerical notes.
    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn order(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    /// Eigenvalues repeated by multiplicity, in decreasing order.
    pub fn expanded_eigenvalues(&self) -> Vec<f64> {
        self.thetas
            .iter()
            .zip(&self.multiplicities)
            .flat_map(|(&t, &k)| std::iter::repeat_n(t, k))
            .collect()
    }

    /// Max-norm residuals of `Σ E_r = I`, `E_r E_s = δ_rs E_r` and
    /// `Σ θ_r E_r = M`.
    pub fn residuals(&self, m: &DMatrix<f64>) -> Residuals {
        let n = self.order();
        let mut sum = DMatrix::<f64>::zeros(n, n);
        let mut recon = DMatrix::<f64>::zeros(n, n);
        for (e, &t) in self.idempotents.iter().zip(&self.thetas) {
            sum += e;
            recon += e * t;
        }
        let completeness = (sum - DMatrix::identity(n, n)).amax();
        let reconstruction = (recon - m).amax();
        let mut orthogonality: f64 = 0.0;
        for (r, er) in self.idempotents.iter().enumerate() {
            for (s, es) in self.idempotents.iter().enumerate() {
                let prod = er * es;
                let err = if r == s {
                    (prod - er).amax()
                } else {
                    prod.amax()
                };
                orthogonality = orthogonality.max(err);
            }
        }
        Residuals {
            completeness,
            orthogonality,
            reconstruction,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Residuals {
    pub completeness: f64,
    pub orthogonality: f64,
    pub reconstruction: f64,
}

impl Residuals {
    pub fn max(&self) -> f64 {
        self.completeness
            .max(self.orthogonality)
            .max(self.reconstruction)
    }
}

/// Numerical eigendecomposition with gap-based clustering.
///
/// Sorted eigenvalues are merged (single linkage) while consecutive gaps
/// stay below `tol * (1 + ρ)`, ρ the spectral radius. Each cluster's
/// representative is the mean of its members and its projector is the sum
/// of `v vᵀ` over the member eigenvectors.
pub fn decompose(h: &Hamiltonian, tol: f64) -> Result<SpectralDecomposition, SpectralError> {
    let n = h.dim();
    if n == 0 {
        return Err(SpectralError::Empty);
    }
    let charpoly = char_poly(h.entries());
    let m = h.to_f64();
    if n == 1 {
        return Ok(SpectralDecomposition {
            thetas: vec![m[(0, 0)]],
            multiplicities: vec![1],
            idempotents: vec![DMatrix::identity(1, 1)],
            charpoly,
            spectral_radius: m[(0, 0)].abs(),
            warnings: Vec::new(),
        });
    }

    let eig = m
        .try_symmetric_eigen(f64::EPSILON, MAX_EIGEN_ITERATIONS)
        .ok_or(SpectralError::NoConvergence(n))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let spectral_radius = eig.eigenvalues.amax();
    let merge_gap = tol * (1.0 + spectral_radius);

    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for &i in &order {
        match clusters.last_mut() {
            Some(c)
                if eig.eigenvalues[*c.last().unwrap()] - eig.eigenvalues[i] < merge_gap =>
            {
                c.push(i)
            }
            _ => clusters.push(vec![i]),
        }
    }

    let mut thetas = Vec::with_capacity(clusters.len());
    let mut multiplicities = Vec::with_capacity(clusters.len());
    let mut idempotents = Vec::with_capacity(clusters.len());
    let mut warnings = Vec::new();
    for c in &clusters {
        let values: Vec<f64> = c.iter().map(|&i| eig.eigenvalues[i]).collect();
        let spread = values[0] - values[values.len() - 1];
        if spread > 10.0 * merge_gap {
            warnings.push(format!(
                "eigenvalue cluster near {:.12} has spread {spread:.3e} over {} members",
                values[0],
                values.len()
            ));
        }
        thetas.push(values.iter().sum::<f64>() / values.len() as f64);
        multiplicities.push(c.len());
        let mut e = DMatrix::<f64>::zeros(n, n);
        for &i in c {
            let v = eig.eigenvectors.column(i);
            e += v * v.transpose();
        }
        idempotents.push(e);
    }

    Ok(SpectralDecomposition {
        thetas,
        multiplicities,
        idempotents,
        charpoly,
        spectral_radius,
        warnings,
    })
}

/// The eigenvalues `θ_r` whose projector does not annihilate `e_a`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenvalueSupport {
    pub vertex: usize,
    /// Indices into [`SpectralDecomposition::thetas`], increasing (so
    /// eigenvalues decreasing).
    pub support: Vec<usize>,
    /// `‖E_r e_a‖` for every `r`, supported or not.
    pub norms: Vec<f64>,
}

impl EigenvalueSupport {
    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn eigenvalues<'a>(
        &'a self,
        dec: &'a SpectralDecomposition,
    ) -> impl Iterator<Item = f64> + 'a {
        self.support.iter().map(|&r| dec.thetas[r])
    }
}

pub fn eigenvalue_support(
    dec: &SpectralDecomposition,
    a: usize,
    tol_support: f64,
) -> Result<EigenvalueSupport, SpectralError> {
    let n = dec.order();
    if a >= n {
        return Err(SpectralError::VertexOutOfRange { vertex: a, n });
    }
    let norms: Vec<f64> = dec
        .idempotents
        .iter()
        .map(|e| e.column(a).norm())
        .collect();
    let support = norms
        .iter()
        .enumerate()
        .filter(|(_, &x)| x > tol_support)
        .map(|(r, _)| r)
        .collect();
    Ok(EigenvalueSupport {
        vertex: a,
        support,
        norms,
    })
}
