//! Per-graph analysis reports (`analyze`) and their one-line summaries
//! (`search`).

use qwalk_core::bounds::{check_bound, check_lemma1, BoundModel, BoundReport};
use qwalk_core::evolution::{detect_pst_with, PstReport};
use qwalk_core::graph::{eccentricity, to_graph6};
use qwalk_core::periodicity::WalkAnalysis;
use qwalk_core::spectral::{walk_module_dimension, Residuals};
use qwalk_core::{Graph, Hamiltonian, HamiltonianKind, Periodicity, Result, Tolerances};
use serde::Serialize;

/// Two periodic vertices are paired for a PST search only when their
/// minimal periods agree to this precision.
const PERIOD_MATCH: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphMeta {
    pub n: usize,
    pub m: usize,
    pub source: String,
    pub graph6: Option<String>,
    pub weighted: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumSummary {
    pub thetas: Vec<f64>,
    pub multiplicities: Vec<usize>,
    /// Characteristic polynomial coefficients, constant term first, as
    /// decimal strings.
    pub charpoly: Vec<String>,
    pub charpoly_text: String,
    pub residuals: Residuals,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VertexReport {
    pub vertex: usize,
    /// `None` when some vertex is unreachable from this one.
    pub eccentricity: Option<usize>,
    /// Support eigenvalues, decreasing.
    pub support: Vec<f64>,
    /// `‖E_r e_a‖` for every distinct eigenvalue, in spectrum order.
    pub projection_norms: Vec<f64>,
    pub walk_module_dimension: usize,
    pub periodicity: Periodicity,
    pub lemma1_ok: Option<bool>,
    pub bounds: Option<BoundReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub graph: GraphMeta,
    pub model: HamiltonianKind,
    pub tolerances: Tolerances,
    pub spectrum: SpectrumSummary,
    pub warnings: Vec<String>,
    pub vertices: Vec<VertexReport>,
    pub pst_pairs: Vec<PstReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<serde_json::Value>,
}

impl AnalysisReport {
    pub fn periodic_vertices(&self) -> impl Iterator<Item = &VertexReport> {
        self.vertices
            .iter()
            .filter(|v| v.periodicity.certificate().is_some())
    }
}

pub struct AnalyzeOptions<'a> {
    pub source: &'a str,
    pub tolerances: Tolerances,
    pub dump_matrix: bool,
}

/// Runs the whole pipeline on every vertex, then searches for PST between
/// periodic vertices with matching minimal periods.
pub fn analyze_graph(
    g: &Graph,
    kind: HamiltonianKind,
    opts: &AnalyzeOptions<'_>,
) -> Result<AnalysisReport> {
    let h = Hamiltonian::build(g, kind)?;
    let tol = opts.tolerances;
    let analysis = WalkAnalysis::new(&h, tol)?;
    let dec = analysis.decomposition();
    let m_f64 = h.to_f64();

    let mut vertices = Vec::with_capacity(g.order());
    for a in 0..g.order() {
        let supp = analysis.support(a)?;
        let periodicity = analysis.periodicity(a)?;
        let ecc = eccentricity(g, a).ok();
        let (lemma1_ok, bounds) = match periodicity.certificate() {
            Some(cert) => {
                let bounds = match (ecc, BoundModel::for_kind(kind)) {
                    (Some(_), Some(_)) => Some(check_bound(g, cert)?),
                    _ => None,
                };
                (Some(check_lemma1(cert, dec)), bounds)
            }
            None => (None, None),
        };
        vertices.push(VertexReport {
            vertex: a,
            eccentricity: ecc,
            support: supp.eigenvalues(dec).collect(),
            projection_norms: supp.norms.clone(),
            walk_module_dimension: walk_module_dimension(&h, a),
            periodicity,
            lemma1_ok,
            bounds,
        });
    }

    let mut pst_pairs = Vec::new();
    for (i, va) in vertices.iter().enumerate() {
        let Some(ca) = va.periodicity.certificate() else {
            continue;
        };
        for vb in &vertices[i + 1..] {
            let Some(cb) = vb.periodicity.certificate() else {
                continue;
            };
            if (ca.tau_min - cb.tau_min).abs() > PERIOD_MATCH {
                continue;
            }
            let report = detect_pst_with(dec, Some(ca), va.vertex, vb.vertex, &tol)?;
            if report.is_pst() {
                pst_pairs.push(report);
            }
        }
    }

    let cp = dec.charpoly();
    Ok(AnalysisReport {
        graph: GraphMeta {
            n: g.order(),
            m: g.size(),
            source: opts.source.to_string(),
            graph6: to_graph6(g).ok(),
            weighted: g.is_weighted(),
        },
        model: kind,
        tolerances: tol,
        spectrum: SpectrumSummary {
            thetas: dec.thetas().to_vec(),
            multiplicities: dec.multiplicities().to_vec(),
            charpoly: cp.coeffs().iter().map(ToString::to_string).collect(),
            charpoly_text: cp.to_string(),
            residuals: dec.residuals(&m_f64),
        },
        warnings: dec.warnings().to_vec(),
        vertices,
        pst_pairs,
        matrix: opts.dump_matrix.then(|| h.to_json()),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodicSummary {
    pub vertex: usize,
    pub class: qwalk_core::SupportClass,
    pub delta: u64,
    pub g: u64,
    pub tau_min: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundSummary {
    pub vertex: usize,
    pub eccentricity: usize,
    pub support_size: usize,
    pub lemma1_ok: bool,
    pub lemma2_ok: bool,
    pub theorem_ok: bool,
    pub tightness: Option<f64>,
}

/// One JSONL line of `search` output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResult {
    /// 1-based input line number.
    pub line: usize,
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub model: HamiltonianKind,
    pub periodic_vertices: Vec<PeriodicSummary>,
    pub pst_pairs: Vec<(usize, usize, f64)>,
    pub bounds: Vec<BoundSummary>,
    pub all_bounds_ok: bool,
    pub max_tightness: Option<f64>,
}

impl SearchResult {
    pub fn from_report(line: usize, graph6: &str, r: &AnalysisReport) -> Self {
        let periodic_vertices = r
            .periodic_vertices()
            .map(|v| {
                let c = v.periodicity.certificate().unwrap();
                PeriodicSummary {
                    vertex: v.vertex,
                    class: c.classification.class,
                    delta: c.classification.delta,
                    g: c.g,
                    tau_min: c.tau_min,
                }
            })
            .collect();
        let bounds: Vec<BoundSummary> = r
            .periodic_vertices()
            .filter_map(|v| {
                let b = v.bounds.as_ref()?;
                Some(BoundSummary {
                    vertex: v.vertex,
                    eccentricity: b.eccentricity,
                    support_size: b.support_size,
                    lemma1_ok: v.lemma1_ok.unwrap_or(false),
                    lemma2_ok: b.lemma2_ok,
                    theorem_ok: b.theorem_ok,
                    tightness: b.tightness,
                })
            })
            .collect();
        let all_bounds_ok = bounds
            .iter()
            .all(|b| b.lemma1_ok && b.lemma2_ok && b.theorem_ok);
        let max_tightness = bounds
            .iter()
            .filter_map(|b| b.tightness)
            .max_by(f64::total_cmp);
        SearchResult {
            line,
            graph6: graph6.to_string(),
            n: r.graph.n,
            m: r.graph.m,
            model: r.model,
            periodic_vertices,
            pst_pairs: r.pst_pairs.iter().map(|p| (p.a, p.b, p.time)).collect(),
            bounds,
            all_bounds_ok,
            max_tightness,
        }
    }
}
