//! The propagator `U(t) = exp(itM) = Σ_r e^{iθ_r t} E_r`, transfer
//! fidelities and perfect state transfer detection.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::periodicity::{Periodicity, PeriodicityCertificate, WalkAnalysis};
use crate::spectral::SpectralDecomposition;
use crate::{Error, Hamiltonian, Result, Tolerances};

#[derive(Debug, Clone)]
pub struct TransitionMatrix {
    pub time: f64,
    pub entries: DMatrix<Complex64>,
}

impl TransitionMatrix {
    /// `max |U U* - I|`.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.entries.nrows();
        let prod = &self.entries * self.entries.adjoint();
        (prod - DMatrix::<Complex64>::identity(n, n))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

pub fn transition_matrix(dec: &SpectralDecomposition, t: f64) -> TransitionMatrix {
    let n = dec.order();
    let mut u = DMatrix::<Complex64>::zeros(n, n);
    for (e, &theta) in dec.idempotents().iter().zip(dec.thetas()) {
        let phase = Complex64::from_polar(1.0, theta * t);
        u.zip_apply(e, |z, x| *z += phase * x);
    }
    TransitionMatrix {
        time: t,
        entries: u,
    }
}

/// The single entry `U(t)_{ab}`.
pub fn amplitude(dec: &SpectralDecomposition, a: usize, b: usize, t: f64) -> Complex64 {
    dec.idempotents()
        .iter()
        .zip(dec.thetas())
        .map(|(e, &theta)| Complex64::from_polar(e[(a, b)], theta * t))
        .sum()
}

/// `|U(t)_{ab}|^2`, clamped to `[0, 1]`.
pub fn fidelity(dec: &SpectralDecomposition, a: usize, b: usize, t: f64) -> f64 {
    amplitude(dec, a, b, t).norm_sqr().clamp(0.0, 1.0)
}

/// `samples` evenly spaced points of the fidelity on `[0, t_max]`.
pub fn fidelity_curve(
    dec: &SpectralDecomposition,
    a: usize,
    b: usize,
    t_max: f64,
    samples: usize,
) -> Result<Vec<(f64, f64)>> {
    let n = dec.order();
    for v in [a, b] {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
    }
    if samples < 2 {
        return Err(Error::InvalidArgument("need at least 2 samples".into()));
    }
    if !(t_max.is_finite() && t_max > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "t_max must be positive and finite, got {t_max}"
        )));
    }
    let step = t_max / (samples - 1) as f64;
    Ok((0..samples)
        .map(|i| {
            let t = if i == samples - 1 { t_max } else { i as f64 * step };
            (t, fidelity(dec, a, b, t))
        })
        .collect())
}

/// CSV with header `t,fidelity`; floats use shortest round-trip formatting.
pub fn curve_to_csv(curve: &[(f64, f64)]) -> String {
    let mut out = String::from("t,fidelity\n");
    for (t, f) in curve {
        writeln!(out, "{t:?},{f:?}").unwrap();
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PstVerdict {
    Pst,
    NoPstAtTestedTimes,
}

/// Where the reported time came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PstSource {
    /// An odd multiple of half the source vertex's minimal period.
    Candidate,
    Grid,
    /// Source vertex not periodic; nothing was evaluated.
    NotPeriodic,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PstReport {
    pub a: usize,
    pub b: usize,
    pub time: f64,
    pub fidelity: f64,
    pub verdict: PstVerdict,
    pub source: PstSource,
}

impl PstReport {
    pub fn is_pst(&self) -> bool {
        self.verdict == PstVerdict::Pst
    }
}

/// PST search between `a` and `b` under `h`.
pub fn detect_pst(h: &Hamiltonian, a: usize, b: usize, tol: &Tolerances) -> Result<PstReport> {
    let analysis = WalkAnalysis::new(h, *tol)?;
    let cert = match analysis.periodicity(a)? {
        Periodicity::Periodic(c) => Some(c),
        Periodicity::NotPeriodic(_) => None,
    };
    detect_pst_with(analysis.decomposition(), cert.as_ref(), a, b, tol)
}

/// PST search reusing a decomposition and `a`'s periodicity outcome.
///
/// PST from `a` forces `a` to be periodic, so `None` short-circuits. With a
/// certificate, the odd multiples `k τ_min / 2` (k = 1, 3, 5, 7) inside
/// `(0, 2π]` are tried first and the earliest passing one is reported;
/// otherwise the best point of a uniform grid over `(0, 2π]` is reported.
pub fn detect_pst_with(
    dec: &SpectralDecomposition,
    cert: Option<&PeriodicityCertificate>,
    a: usize,
    b: usize,
    tol: &Tolerances,
) -> Result<PstReport> {
    let n = dec.order();
    for v in [a, b] {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
    }
    if a == b {
        return Err(Error::InvalidArgument(
            "PST needs two distinct vertices".into(),
        ));
    }
    let threshold = 1.0 - tol.pst;
    let Some(cert) = cert else {
        return Ok(PstReport {
            a,
            b,
            time: 0.0,
            fidelity: 0.0,
            verdict: PstVerdict::NoPstAtTestedTimes,
            source: PstSource::NotPeriodic,
        });
    };

    let mut best = (0.0, 0.0, PstSource::Grid);
    for k in [1.0, 3.0, 5.0, 7.0] {
        let t = k * cert.tau_min / 2.0;
        if t > TAU + 1e-12 {
            break;
        }
        let f = fidelity(dec, a, b, t);
        if f > threshold {
            return Ok(PstReport {
                a,
                b,
                time: t,
                fidelity: f,
                verdict: PstVerdict::Pst,
                source: PstSource::Candidate,
            });
        }
        if f > best.1 {
            best = (t, f, PstSource::Candidate);
        }
    }
    let grid = tol.pst_grid.max(1);
    for i in 1..=grid {
        let t = TAU * i as f64 / grid as f64;
        let f = fidelity(dec, a, b, t);
        if f > best.1 {
            best = (t, f, PstSource::Grid);
        }
    }
    let (time, fidelity, source) = best;
    Ok(PstReport {
        a,
        b,
        time,
        fidelity,
        verdict: if fidelity > threshold {
            PstVerdict::Pst
        } else {
            PstVerdict::NoPstAtTestedTimes
        },
        source,
    })
}
