//! Eccentricity lower bounds on the size of graphs with a periodic vertex.
//!
//! For a periodic vertex `a` with eccentricity `ε_a` in a graph with `m`
//! edges:
//!
//! * adjacency walks satisfy `(ε_a / 3)^3 < 2m`,
//! * Laplacian walks satisfy `(ε_a / 3)^2 < m`.
//!
//! Both rest on two lemmas checked here as well: distinct support
//! eigenvalues are at least `2π/τ_min` apart, and `ε_a + 1 ≤ |Φ_a|`.
//! Verdicts on the strict inequalities are computed over the integers
//! (`ε^3 < 54m`, `ε^2 < 9m`).

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt::Write as _;

use serde::Serialize;

use crate::graph::{eccentricity, Graph};
use crate::periodicity::PeriodicityCertificate;
use crate::spectral::{EigenvalueSupport, SpectralDecomposition};
use crate::{Error, HamiltonianKind, Result};

/// Slack for the gap comparison in [`check_lemma1`].
pub const GAP_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundModel {
    Adjacency,
    Laplacian,
}

impl BoundModel {
    pub fn kind(self) -> HamiltonianKind {
        match self {
            BoundModel::Adjacency => HamiltonianKind::Adjacency,
            BoundModel::Laplacian => HamiltonianKind::Laplacian,
        }
    }

    pub fn for_kind(kind: HamiltonianKind) -> Option<Self> {
        match kind {
            HamiltonianKind::Adjacency => Some(BoundModel::Adjacency),
            HamiltonianKind::Laplacian => Some(BoundModel::Laplacian),
            _ => None,
        }
    }
}

/// Every pair of distinct support eigenvalues is at least `2π/τ_min` apart.
pub fn check_lemma1(cert: &PeriodicityCertificate, _dec: &SpectralDecomposition) -> bool {
    let gap = TAU / cert.tau_min;
    // support is sorted, so adjacent gaps are the smallest ones
    cert.support
        .windows(2)
        .all(|w| w[0] - w[1] >= gap - GAP_SLACK)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Lemma2Check {
    pub eccentricity: usize,
    pub support_size: usize,
    /// `ε_a ≤ |Φ_a|`.
    pub stated_ok: bool,
    /// `ε_a + 1 ≤ |Φ_a|`, the form the bound theorems use.
    pub proof_ok: bool,
}

pub fn check_lemma2(g: &Graph, a: usize, supp: &EigenvalueSupport) -> Result<Lemma2Check> {
    lemma2(g, a, supp.len())
}

fn lemma2(g: &Graph, a: usize, support_size: usize) -> Result<Lemma2Check> {
    let eccentricity = eccentricity(g, a)?;
    Ok(Lemma2Check {
        eccentricity,
        support_size,
        stated_ok: eccentricity <= support_size,
        proof_ok: eccentricity < support_size,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub vertex: usize,
    pub model: BoundModel,
    pub eccentricity: usize,
    pub support_size: usize,
    pub edge_count: usize,
    pub lemma2_stated_ok: bool,
    pub lemma2_ok: bool,
    /// `|Φ_a| ≤ 3·∛(2m) + 1` (adjacency) or `|Φ_a| ≤ 3·√m + 1` (Laplacian).
    pub support_bound_ok: bool,
    pub theorem_lhs: f64,
    pub theorem_rhs: f64,
    pub theorem_ok: bool,
    /// `lhs / rhs`; absent for vacuous reports.
    pub tightness: Option<f64>,
    /// `ε_a = 0`: a single-vertex graph, where the bound says nothing.
    pub vacuous: bool,
}

impl BoundReport {
    pub fn all_ok(&self) -> bool {
        self.theorem_ok && self.lemma2_ok && self.support_bound_ok
    }
}

/// `(ε_a/3)^3 < 2m` for an adjacency certificate.
pub fn check_adjacency_bound(
    g: &Graph,
    a: usize,
    cert: &PeriodicityCertificate,
) -> Result<BoundReport> {
    bound_report(g, a, cert, BoundModel::Adjacency)
}

/// `(ε_a/3)^2 < m` for a Laplacian certificate.
pub fn check_laplacian_bound(
    g: &Graph,
    a: usize,
    cert: &PeriodicityCertificate,
) -> Result<BoundReport> {
    bound_report(g, a, cert, BoundModel::Laplacian)
}

/// Dispatches on the certificate's model.
pub fn check_bound(g: &Graph, cert: &PeriodicityCertificate) -> Result<BoundReport> {
    let model = BoundModel::for_kind(cert.model).ok_or_else(|| {
        Error::InvalidArgument(format!("no eccentricity bound for the {} model", cert.model))
    })?;
    bound_report(g, cert.vertex, cert, model)
}

fn bound_report(
    g: &Graph,
    a: usize,
    cert: &PeriodicityCertificate,
    model: BoundModel,
) -> Result<BoundReport> {
    if cert.model != model.kind() {
        return Err(Error::ModelMismatch {
            expected: model.kind(),
            found: cert.model,
        });
    }
    if cert.vertex != a {
        return Err(Error::InvalidArgument(format!(
            "certificate is for vertex {}, not {a}",
            cert.vertex
        )));
    }
    let l2 = lemma2(g, a, cert.support_size())?;
    let eps = l2.eccentricity as u128;
    let m = g.size() as u128;
    let phi_minus_one = (cert.support_size() as u128).saturating_sub(1);

    let (lhs, rhs, strict_ok, support_bound_ok) = match model {
        BoundModel::Adjacency => (
            (l2.eccentricity as f64 / 3.0).powi(3),
            2.0 * g.size() as f64,
            eps.pow(3) < 54 * m,
            phi_minus_one.pow(3) <= 54 * m,
        ),
        BoundModel::Laplacian => (
            (l2.eccentricity as f64 / 3.0).powi(2),
            g.size() as f64,
            eps.pow(2) < 9 * m,
            phi_minus_one.pow(2) <= 9 * m,
        ),
    };
    let vacuous = l2.eccentricity == 0;
    Ok(BoundReport {
        vertex: a,
        model,
        eccentricity: l2.eccentricity,
        support_size: l2.support_size,
        edge_count: g.size(),
        lemma2_stated_ok: l2.stated_ok,
        lemma2_ok: l2.proof_ok,
        support_bound_ok,
        theorem_lhs: lhs,
        theorem_rhs: rhs,
        theorem_ok: vacuous || strict_ok,
        tightness: (!vacuous).then(|| lhs / rhs),
        vacuous,
    })
}

/// `θ_j^2 ≤ 2m/(j+1)` with eigenvalues (repeated) sorted by decreasing
/// square.
pub fn adjacency_tail_bound_holds(dec: &SpectralDecomposition, m: usize) -> bool {
    let mut squares: Vec<f64> = dec.expanded_eigenvalues().iter().map(|x| x * x).collect();
    squares.sort_by(|a, b| b.total_cmp(a));
    tail_bound(&squares, m)
}

/// `λ_j ≤ 2m/(j+1)` with Laplacian eigenvalues sorted decreasing.
pub fn laplacian_tail_bound_holds(dec: &SpectralDecomposition, m: usize) -> bool {
    tail_bound(&dec.expanded_eigenvalues(), m)
}

fn tail_bound(sorted_desc: &[f64], m: usize) -> bool {
    let two_m = 2.0 * m as f64;
    let slack = 1e-9 * (1.0 + two_m);
    sorted_desc
        .iter()
        .enumerate()
        .all(|(j, &x)| x <= two_m / (j + 1) as f64 + slack)
}

// ---------------------------------------------------------------------------
// surveys

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurveyEntry {
    pub family: String,
    pub report: BoundReport,
}

/// One row per (family, model): the report with the largest tightness.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurveyRow {
    pub family: String,
    pub model: BoundModel,
    pub reports: usize,
    pub max_tightness: Option<f64>,
    pub vertex: usize,
    pub eccentricity: usize,
    pub edge_count: usize,
    pub support_size: usize,
    pub all_ok: bool,
}

/// Rows sorted by decreasing max tightness (families with only vacuous
/// reports last), ties by family name.
pub fn tightness_survey(entries: &[SurveyEntry]) -> Vec<SurveyRow> {
    let mut groups: BTreeMap<(&str, BoundModel), Vec<&BoundReport>> = BTreeMap::new();
    for e in entries {
        groups
            .entry((e.family.as_str(), e.report.model))
            .or_default()
            .push(&e.report);
    }
    let mut rows: Vec<SurveyRow> = groups
        .into_iter()
        .map(|((family, model), reports)| {
            let best = reports
                .iter()
                .copied()
                .max_by(|x, y| {
                    x.tightness
                        .unwrap_or(-1.0)
                        .total_cmp(&y.tightness.unwrap_or(-1.0))
                        .then(y.vertex.cmp(&x.vertex))
                })
                .expect("groups are nonempty");
            SurveyRow {
                family: family.to_string(),
                model,
                reports: reports.len(),
                max_tightness: best.tightness,
                vertex: best.vertex,
                eccentricity: best.eccentricity,
                edge_count: best.edge_count,
                support_size: best.support_size,
                all_ok: reports.iter().all(|r| r.all_ok()),
            }
        })
        .collect();
    rows.sort_by(|x, y| {
        y.max_tightness
            .unwrap_or(-1.0)
            .total_cmp(&x.max_tightness.unwrap_or(-1.0))
            .then_with(|| x.family.cmp(&y.family))
    });
    rows
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(String::new, |v| format!("{v:?}"))
}

fn model_name(m: BoundModel) -> &'static str {
    match m {
        BoundModel::Adjacency => "adjacency",
        BoundModel::Laplacian => "laplacian",
    }
}

pub fn survey_to_csv(rows: &[SurveyRow]) -> String {
    let mut out = String::from(
        "family,model,reports,max_tightness,vertex,eccentricity,edge_count,support_size,all_ok\n",
    );
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.family,
            model_name(r.model),
            r.reports,
            opt(r.max_tightness),
            r.vertex,
            r.eccentricity,
            r.edge_count,
            r.support_size,
            r.all_ok
        )
        .unwrap();
    }
    out
}

/// Flat CSV, one row per report.
pub fn reports_to_csv(entries: &[SurveyEntry]) -> String {
    let mut out = String::from(
        "family,vertex,model,eccentricity,support_size,edge_count,lemma2_stated_ok,lemma2_ok,\
         support_bound_ok,theorem_lhs,theorem_rhs,theorem_ok,tightness,vacuous\n",
    );
    for e in entries {
        let r = &e.report;
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{:?},{:?},{},{},{}",
            e.family,
            r.vertex,
            model_name(r.model),
            r.eccentricity,
            r.support_size,
            r.edge_count,
            r.lemma2_stated_ok,
            r.lemma2_ok,
            r.support_bound_ok,
            r.theorem_lhs,
            r.theorem_rhs,
            r.theorem_ok,
            opt(r.tightness),
            r.vacuous
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cartesian_power, cycle, hypercube, path};
    use crate::periodicity::WalkAnalysis;
    use crate::{Hamiltonian, Tolerances};

    fn certify(g: &Graph, kind: HamiltonianKind, a: usize) -> (PeriodicityCertificate, WalkAnalysis) {
        let w = WalkAnalysis::new(&Hamiltonian::build(g, kind).unwrap(), Tolerances::default())
            .unwrap();
        let c = w.periodicity(a).unwrap().certificate().cloned().unwrap();
        (c, w)
    }

    #[test]
    fn lemma1_fixtures() {
        for (g, a) in [
            (path(2).unwrap(), 0),
            (hypercube(3).unwrap(), 5),
            (path(3).unwrap(), 0),
        ] {
            let (c, w) = certify(&g, HamiltonianKind::Adjacency, a);
            assert!(check_lemma1(&c, w.decomposition()));
        }
        // equality cases: the gap is exactly 2π/τ
        let (c, _) = certify(&path(3).unwrap(), HamiltonianKind::Adjacency, 0);
        assert!((c.support[0] - c.support[1] - TAU / c.tau_min).abs() < 1e-12);
    }

    #[test]
    fn lemma2_fixtures() {
        for (g, a, eps, phi) in [
            (hypercube(3).unwrap(), 0, 3, 4),
            (path(3).unwrap(), 0, 2, 3),
            (path(1).unwrap(), 0, 0, 1),
        ] {
            let w = WalkAnalysis::new(
                &Hamiltonian::build(&g, HamiltonianKind::Adjacency).unwrap(),
                Tolerances::default(),
            )
            .unwrap();
            let l = check_lemma2(&g, a, &w.support(a).unwrap()).unwrap();
            assert_eq!((l.eccentricity, l.support_size), (eps, phi));
            assert!(l.stated_ok && l.proof_ok);
        }
        let split = Graph::empty(2);
        let w = WalkAnalysis::new(
            &Hamiltonian::build(&split, HamiltonianKind::Adjacency).unwrap(),
            Tolerances::default(),
        )
        .unwrap();
        assert!(check_lemma2(&split, 0, &w.support(0).unwrap()).is_err());
    }

    #[test]
    fn adjacency_bound_fixtures() {
        let sq = cartesian_power(&path(3).unwrap(), 2).unwrap();
        let (c, _) = certify(&sq, HamiltonianKind::Adjacency, 0);
        let r = check_adjacency_bound(&sq, 0, &c).unwrap();
        assert_eq!((r.eccentricity, r.edge_count), (4, 12));
        assert!((r.theorem_lhs - 64.0 / 27.0).abs() < 1e-12);
        assert_eq!(r.theorem_rhs, 24.0);
        assert!(r.theorem_ok && r.all_ok());
        assert!((r.tightness.unwrap() - 0.098765432).abs() < 1e-8);

        let p2 = path(2).unwrap();
        let (c, _) = certify(&p2, HamiltonianKind::Adjacency, 0);
        let r = check_adjacency_bound(&p2, 0, &c).unwrap();
        assert!((r.theorem_lhs - 1.0 / 27.0).abs() < 1e-15);
        assert_eq!(r.theorem_rhs, 2.0);
        assert!(r.theorem_ok);

        let q3 = hypercube(3).unwrap();
        let (c, _) = certify(&q3, HamiltonianKind::Adjacency, 3);
        let r = check_adjacency_bound(&q3, 3, &c).unwrap();
        assert_eq!((r.theorem_lhs, r.theorem_rhs), (1.0, 24.0));
        assert!(r.all_ok());

        assert!(matches!(
            check_laplacian_bound(&q3, 3, &c),
            Err(Error::ModelMismatch { .. })
        ));
    }

    #[test]
    fn laplacian_bound_fixtures() {
        let p2 = path(2).unwrap();
        let (c, _) = certify(&p2, HamiltonianKind::Laplacian, 0);
        let r = check_laplacian_bound(&p2, 0, &c).unwrap();
        assert!((r.theorem_lhs - 1.0 / 9.0).abs() < 1e-15);
        assert_eq!(r.theorem_rhs, 1.0);
        assert!(r.theorem_ok);

        let c4 = cycle(4).unwrap();
        let (c, w) = certify(&c4, HamiltonianKind::Laplacian, 0);
        assert_eq!(w.decomposition().multiplicities(), &[1, 2, 1]);
        let r = check_laplacian_bound(&c4, 0, &c).unwrap();
        assert_eq!(r.eccentricity, 2);
        assert!((r.theorem_lhs - 4.0 / 9.0).abs() < 1e-15);
        assert_eq!(r.theorem_rhs, 4.0);
        assert!(r.all_ok());

        let k1 = path(1).unwrap();
        let (c, _) = certify(&k1, HamiltonianKind::Laplacian, 0);
        let r = check_laplacian_bound(&k1, 0, &c).unwrap();
        assert!(r.vacuous && r.theorem_ok);
        assert_eq!(r.tightness, None);

        assert!(matches!(
            check_adjacency_bound(&k1, 0, &c),
            Err(Error::ModelMismatch { .. })
        ));
    }

    #[test]
    fn tail_bounds() {
        for g in [hypercube(3).unwrap(), cycle(7).unwrap(), path(5).unwrap()] {
            let a = WalkAnalysis::new(
                &Hamiltonian::build(&g, HamiltonianKind::Adjacency).unwrap(),
                Tolerances::default(),
            )
            .unwrap();
            assert!(adjacency_tail_bound_holds(a.decomposition(), g.size()));
            let l = WalkAnalysis::new(
                &Hamiltonian::build(&g, HamiltonianKind::Laplacian).unwrap(),
                Tolerances::default(),
            )
            .unwrap();
            assert!(laplacian_tail_bound_holds(l.decomposition(), g.size()));
        }
    }

    /// `(2k/3)^3 / (2 · 2k · 3^(k-1))` for the corner of the k-th power of P3.
    fn p3_power_tightness(k: i32) -> f64 {
        let eps = 2.0 * k as f64;
        let m = 2.0 * k as f64 * 3f64.powi(k - 1);
        (eps / 3.0).powi(3) / (2.0 * m)
    }

    #[test]
    fn survey_of_p3_powers() {
        let p3 = path(3).unwrap();
        let mut entries = Vec::new();
        for k in 1..=4 {
            let g = cartesian_power(&p3, k).unwrap();
            let (c, _) = certify(&g, HamiltonianKind::Adjacency, 0);
            entries.push(SurveyEntry {
                family: format!("p3power-{k}"),
                report: check_adjacency_bound(&g, 0, &c).unwrap(),
            });
        }
        let rows = tightness_survey(&entries);
        assert_eq!(rows.len(), 4);
        for row in &rows {
            let k: i32 = row.family.strip_prefix("p3power-").unwrap().parse().unwrap();
            assert!((row.max_tightness.unwrap() - p3_power_tightness(k)).abs() < 1e-12);
            assert!(row.all_ok);
        }
        // peaks at k = 2, then falls off
        assert_eq!(rows[0].family, "p3power-2");
        assert!(p3_power_tightness(4) < p3_power_tightness(3));

        assert!(tightness_survey(&[]).is_empty());
        let single = tightness_survey(&entries[..1]);
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].max_tightness, entries[0].report.tightness);
        assert_eq!(single[0].eccentricity, entries[0].report.eccentricity);

        let csv = survey_to_csv(&rows);
        assert_eq!(csv.lines().count(), 5);
        assert!(reports_to_csv(&entries).lines().nth(1).unwrap().starts_with("p3power-1,0,adjacency,2,3,2,"));
    }
}
