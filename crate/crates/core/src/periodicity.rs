//! Support classification, minimal periods and periodicity certificates.
//!
//! If `a` is periodic, the eigenvalues in its support are either all
//! integers or all of the form `(α + β_r √Δ)/2` with one square-free `Δ > 1`
//! and one `α`. Given that shape, `a` returns at the first time
//! `τ = 2π / (g √Δ)` where `g = gcd((θ_0 - θ_r) / √Δ)`.
//!
//! Classification is exact: each numerically suggested integer eigenvalue
//! is checked as a root of the characteristic polynomial and each quadratic
//! pair as an exact factor. A certificate is only issued after `|U(τ)_{aa}|`
//! has been evaluated at the computed `τ`.

use std::f64::consts::TAU;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::evolution::amplitude;
use crate::spectral::{
    certify_integer_eigenvalue, certify_quadratic_factor, decompose, eigenvalue_support, CharPoly,
    EigenvalueSupport, SpectralDecomposition,
};
use crate::{Error, Hamiltonian, HamiltonianKind, Result, Tolerances};

/// How close a float must be to an integer before exact certification is
/// attempted.
const NEAR_INTEGER: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SupportClass {
    Integer,
    Quadratic,
    Unstructured,
}

/// Support eigenvalues written as `θ_r = (α + β_r √Δ) / 2`.
///
/// Integer supports use `Δ = 1`, `α = 0`, `β_r = 2θ_r`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SupportClassification {
    pub class: SupportClass,
    pub delta: u64,
    pub alpha: i64,
    /// One per support eigenvalue, in support order (decreasing θ).
    pub betas: Vec<i64>,
    /// Every membership was confirmed against the exact characteristic
    /// polynomial.
    pub certified: bool,
    pub notes: Vec<String>,
}

impl SupportClassification {
    fn unstructured(notes: Vec<String>) -> Self {
        SupportClassification {
            class: SupportClass::Unstructured,
            delta: 0,
            alpha: 0,
            betas: Vec::new(),
            certified: false,
            notes,
        }
    }
}

/// Splits `d > 0` as `f^2 * s` with `s` square-free; returns `(f, s)`.
pub fn square_free_decomposition(mut d: u64) -> (u64, u64) {
    assert!(d > 0);
    let mut f = 1;
    let mut s = 1;
    let mut p = 2;
    while p * p <= d {
        let mut e = 0;
        while d.is_multiple_of(p) {
            d /= p;
            e += 1;
        }
        f *= p.pow(e / 2);
        if e % 2 == 1 {
            s *= p;
        }
        p += 1;
    }
    (f, s * d)
}

fn near_integer(x: f64) -> Option<i64> {
    let r = x.round();
    ((x - r).abs() < NEAR_INTEGER && r.abs() < 9.0e15).then_some(r as i64)
}

/// Certified conjugate data for a non-integer eigenvalue: `x^2 - s x + p`.
fn certified_minimal_quadratic(
    theta: f64,
    index: usize,
    dec: &SpectralDecomposition,
    cp: &CharPoly,
) -> Option<(i64, i64)> {
    let mut candidates: Vec<(f64, i64, i64)> = dec
        .thetas()
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != index)
        .filter_map(|(_, &other)| {
            let s = near_integer(theta + other)?;
            let p = near_integer(theta * other)?;
            let err = (theta + other - s as f64).abs() + (theta * other - p as f64).abs();
            Some((err, s, p))
        })
        .collect();
    candidates.sort_by(|x, y| x.0.total_cmp(&y.0));
    candidates.into_iter().find_map(|(_, s, p)| {
        certify_quadratic_factor(cp, &BigInt::from(s), &BigInt::from(p)).then_some((s, p))
    })
}

/// Classifies the support of one vertex as integer, quadratic or neither.
pub fn classify_support(
    dec: &SpectralDecomposition,
    supp: &EigenvalueSupport,
    cp: &CharPoly,
) -> SupportClassification {
    let mut notes = Vec::new();
    let values: Vec<(usize, f64)> = supp.support.iter().map(|&r| (r, dec.thetas()[r])).collect();

    let integers: Vec<Option<i64>> = values
        .iter()
        .map(|&(_, theta)| {
            let k = near_integer(theta)?;
            if certify_integer_eigenvalue(cp, &BigInt::from(k)) {
                Some(k)
            } else {
                notes.push(format!(
                    "θ = {theta:.12} is within {NEAR_INTEGER:e} of {k} but {k} is not a root"
                ));
                None
            }
        })
        .collect();

    if integers.iter().all(Option::is_some) {
        return SupportClassification {
            class: SupportClass::Integer,
            delta: 1,
            alpha: 0,
            betas: integers.iter().map(|k| 2 * k.unwrap()).collect(),
            certified: true,
            notes,
        };
    }

    let mut alpha: Option<i64> = None;
    let mut delta: Option<u64> = None;
    let mut betas = vec![0i64; values.len()];
    for (slot, (&(r, theta), int)) in values.iter().zip(&integers).enumerate() {
        if int.is_some() {
            continue;
        }
        let Some((s, p)) = certified_minimal_quadratic(theta, r, dec, cp) else {
            notes.push(format!(
                "θ = {theta:.12} has no certified quadratic conjugate in the spectrum"
            ));
            return SupportClassification::unstructured(notes);
        };
        let disc = (s as i128 * s as i128 - 4 * p as i128) as u64;
        let (f, d) = square_free_decomposition(disc);
        let beta = if 2.0 * theta > s as f64 { f as i64 } else { -(f as i64) };
        betas[slot] = beta;
        match (alpha, delta) {
            (None, None) => {
                alpha = Some(s);
                delta = Some(d);
            }
            (Some(a0), Some(d0)) if a0 == s && d0 == d => {}
            (Some(a0), Some(d0)) => {
                notes.push(format!(
                    "θ = {theta:.12} has (α, Δ) = ({s}, {d}), but an earlier support \
                     eigenvalue has ({a0}, {d0})"
                ));
                return SupportClassification::unstructured(notes);
            }
            _ => unreachable!(),
        }
    }
    let alpha = alpha.expect("at least one non-integer support eigenvalue");
    let delta = delta.expect("set together with alpha");

    // Integer members (zero included) must be (α + 0·√Δ)/2.
    for (&(_, theta), int) in values.iter().zip(&integers) {
        if let Some(k) = int {
            if 2 * k != alpha {
                notes.push(format!(
                    "integer support eigenvalue {k} (θ = {theta:.12}) is not of the form \
                     (α + β√Δ)/2 with α = {alpha}, Δ = {delta}"
                ));
                return SupportClassification::unstructured(notes);
            }
        }
    }
    SupportClassification {
        class: SupportClass::Quadratic,
        delta,
        alpha,
        betas,
        certified: true,
        notes,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodicityCertificate {
    pub vertex: usize,
    pub model: HamiltonianKind,
    #[serde(flatten)]
    pub classification: SupportClassification,
    pub g: u64,
    pub tau_min: f64,
    pub verified_modulus: f64,
    /// Support eigenvalues, decreasing.
    pub support: Vec<f64>,
    /// `‖E_r e_a‖` for the support eigenvalues.
    pub support_norms: Vec<f64>,
    /// Single-eigenvalue support: `|U(t)_{aa}| = 1` at every `t`, and
    /// `τ_min = 2π` is a convention.
    pub degenerate: bool,
}

impl PeriodicityCertificate {
    pub fn support_size(&self) -> usize {
        self.support.len()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NotPeriodic {
    pub vertex: usize,
    pub classification: SupportClassification,
    /// `|U(τ)_{aa}|` at the computed candidate τ, when one was tested.
    pub measured_modulus: Option<f64>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Periodicity {
    Periodic(PeriodicityCertificate),
    NotPeriodic(NotPeriodic),
}

impl Periodicity {
    pub fn certificate(&self) -> Option<&PeriodicityCertificate> {
        match self {
            Periodicity::Periodic(c) => Some(c),
            Periodicity::NotPeriodic(_) => None,
        }
    }

    pub fn classification(&self) -> &SupportClassification {
        match self {
            Periodicity::Periodic(c) => &c.classification,
            Periodicity::NotPeriodic(np) => &np.classification,
        }
    }
}

/// Computes `g` and `τ_min = 2π/(g√Δ)` from a classification, then checks
/// `|U(τ_min)_{aa}| > 1 - tol.period`.
///
/// `(θ_0 - θ_r)/√Δ = (β_0 - β_r)/2`; the gcd of these halves is taken
/// exactly. For certified algebraic integers the differences are always
/// even, so `g` is an integer.
pub fn minimal_period(
    cls: &SupportClassification,
    dec: &SpectralDecomposition,
    supp: &EigenvalueSupport,
    model: HamiltonianKind,
    tol: &Tolerances,
) -> Periodicity {
    let vertex = supp.vertex;
    let not_periodic = |measured_modulus, reason: String| {
        Periodicity::NotPeriodic(NotPeriodic {
            vertex,
            classification: cls.clone(),
            measured_modulus,
            reason,
        })
    };
    if cls.class == SupportClass::Unstructured {
        return not_periodic(
            None,
            "support is neither all-integer nor single-(α, Δ) quadratic".into(),
        );
    }

    let degenerate = cls.betas.len() == 1;
    let diff_gcd = cls.betas[1..]
        .iter()
        .fold(0i64, |g, b| g.gcd(&(cls.betas[0] - b)));
    let g = if degenerate {
        1
    } else if diff_gcd % 2 == 0 {
        (diff_gcd / 2) as u64
    } else {
        return not_periodic(
            None,
            format!("half-integer period gcd {diff_gcd}/2; support is not algebraic-integral"),
        );
    };
    let tau_min = if degenerate {
        TAU
    } else {
        TAU / (g as f64 * (cls.delta as f64).sqrt())
    };

    let modulus = amplitude(dec, vertex, vertex, tau_min).norm();
    if modulus <= 1.0 - tol.period {
        return not_periodic(
            Some(modulus),
            format!("|U(τ)_aa| = {modulus} at τ = {tau_min}"),
        );
    }
    Periodicity::Periodic(PeriodicityCertificate {
        vertex,
        model,
        classification: cls.clone(),
        g,
        tau_min,
        verified_modulus: modulus,
        support: supp.eigenvalues(dec).collect(),
        support_norms: supp.support.iter().map(|&r| supp.norms[r]).collect(),
        degenerate,
    })
}

/// One Hamiltonian with its decomposition, shared by per-vertex queries.
#[derive(Debug, Clone)]
pub struct WalkAnalysis {
    hamiltonian: Hamiltonian,
    decomposition: SpectralDecomposition,
    tolerances: Tolerances,
}

impl WalkAnalysis {
    pub fn new(h: &Hamiltonian, tol: Tolerances) -> Result<Self> {
        Ok(WalkAnalysis {
            hamiltonian: h.clone(),
            decomposition: decompose(h, tol.cluster)?,
            tolerances: tol,
        })
    }

    pub fn hamiltonian(&self) -> &Hamiltonian {
        &self.hamiltonian
    }

    pub fn decomposition(&self) -> &SpectralDecomposition {
        &self.decomposition
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tolerances
    }

    pub fn support(&self, a: usize) -> Result<EigenvalueSupport> {
        Ok(eigenvalue_support(
            &self.decomposition,
            a,
            self.tolerances.support,
        )?)
    }

    pub fn classify(&self, a: usize) -> Result<(EigenvalueSupport, SupportClassification)> {
        let supp = self.support(a)?;
        let cls = classify_support(&self.decomposition, &supp, self.decomposition.charpoly());
        Ok((supp, cls))
    }

    /// Full pipeline for vertex `a`.
    ///
    /// A quadratic classification under the Laplacian is an error: the
    /// Laplacian is positive semidefinite with 0 in every support, which
    /// rules quadratic supports out.
    pub fn periodicity(&self, a: usize) -> Result<Periodicity> {
        let (supp, cls) = self.classify(a)?;
        let kind = self.hamiltonian.kind();
        if kind == HamiltonianKind::Laplacian && cls.class == SupportClass::Quadratic {
            return Err(Error::LaplacianCorollary {
                vertex: a,
                delta: cls.delta,
            });
        }
        Ok(minimal_period(
            &cls,
            &self.decomposition,
            &supp,
            kind,
            &self.tolerances,
        ))
    }
}

pub fn is_periodic(h: &Hamiltonian, a: usize, tol: &Tolerances) -> Result<Periodicity> {
    if a >= h.dim() {
        return Err(Error::VertexOutOfRange {
            vertex: a,
            n: h.dim(),
        });
    }
    WalkAnalysis::new(h, *tol)?.periodicity(a)
}

/// Grid check that no time in `(0, τ_min)` already returns to `a`:
/// `|U(t)_{aa}| < 1 - threshold` at `samples` interior points.
pub fn minimality_spot_check(
    dec: &SpectralDecomposition,
    cert: &PeriodicityCertificate,
    samples: usize,
    threshold: f64,
) -> bool {
    if cert.degenerate {
        return true;
    }
    let a = cert.vertex;
    (1..=samples).all(|i| {
        let t = cert.tau_min * i as f64 / (samples + 1) as f64;
        amplitude(dec, a, a, t).norm() < 1.0 - threshold
    })
}

/// Largest `|U(t)_{aa}|` over `samples` evenly spaced `t` in `(0, t_max]`.
pub fn max_return_modulus(
    dec: &SpectralDecomposition,
    a: usize,
    t_max: f64,
    samples: usize,
) -> f64 {
    (1..=samples)
        .map(|i| amplitude(dec, a, a, t_max * i as f64 / samples as f64).norm())
        .fold(0.0, f64::max)
}
