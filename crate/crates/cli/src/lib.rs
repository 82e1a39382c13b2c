//! Library side of the `qwalk` binary, split out so the integration tests
//! can drive the same code paths as the command line.

pub mod report;
pub mod search;
pub mod source;

pub use qwalk_core::enumerate::enumerate_labeled_graphs;
pub use report::{analyze_graph, AnalysisReport, AnalyzeOptions, SearchResult};
pub use search::{run_search, SearchSummary};
