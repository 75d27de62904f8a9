//! Self-contained run documents: everything needed to re-verify a pipeline
//! run offline lives in the payload (graph echo, trace, certificate), with
//! a one-based human summary on top.

use crate::formats::GraphDocument;
use oddsig_core::pipeline::{BalancedSeparatorCertificate, DecompTrace};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunMeta {
    pub command: String,
    pub delta: usize,
    /// Balance parameter as a `p/q` string.
    pub c: String,
    pub d: usize,
    pub paper_params: bool,
    pub detector_budget: u64,
    pub exact_treewidth_cap: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Minimal d at which the final separator still verifies (tight mode).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tight_minimal_d: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunSummary {
    /// One-based vertex ids of the separator.
    pub separator: Vec<usize>,
    /// One-based bounding centers witnessing d-boundedness.
    pub bounding_centers: Vec<usize>,
    pub component_count: usize,
    pub stage_count: usize,
    pub short_circuited: bool,
    pub verified: bool,
    pub reverified_offline: bool,
}

/// The machine section is zero-based, exactly as the engine works; the
/// graph echo and summary are one-based like every external format.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub meta: RunMeta,
    pub graph: GraphDocument,
    pub summary: RunSummary,
    pub trace: DecompTrace,
    pub certificate: BalancedSeparatorCertificate,
}

impl CertificateDocument {
    pub fn new(
        meta: RunMeta,
        graph: GraphDocument,
        trace: DecompTrace,
        certificate: BalancedSeparatorCertificate,
        verified: bool,
        reverified: bool,
    ) -> Self {
        let summary = RunSummary {
            separator: certificate.separator.iter().map(|v| v + 1).collect(),
            bounding_centers: certificate.bounding_centers.iter().map(|v| v + 1).collect(),
            component_count: certificate.component_weights.len(),
            stage_count: trace.stages.len(),
            short_circuited: trace.short_circuited,
            verified,
            reverified_offline: reverified,
        };
        CertificateDocument {
            meta,
            graph,
            summary,
            trace,
            certificate,
        }
    }
}
