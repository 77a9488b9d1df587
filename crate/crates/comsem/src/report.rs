use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::commuting_graph;
use crate::invariants::GraphInvariants;
use crate::knit::knit_degree;
use crate::semigroup::FiniteSemigroup;

/// Largest commuting graph for which a report computes the knit degree.
/// Matches the exhaustive-search guarantee of the knit solver; bigger
/// graphs report `None` rather than risk an open-ended path search.
pub const KNIT_REPORT_LIMIT: usize = 16;

/// Invariants of a semigroup together with those of its commuting graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    /// Number of elements, zero included.
    pub order: usize,
    pub center_size: usize,
    /// True when the semigroup is commutative, i.e. the commuting graph is
    /// empty and its invariants below are vacuous.
    pub vacuous: bool,
    pub graph: GraphInvariants,
    pub knit_degree: Option<usize>,
}

impl InvariantReport {
    pub fn for_semigroup(s: &FiniteSemigroup) -> Result<InvariantReport> {
        let gamma = commuting_graph(s);
        let graph = GraphInvariants::compute(&gamma)?;
        let knit = if gamma.order() <= KNIT_REPORT_LIMIT {
            knit_degree(s)
        } else {
            None
        };
        Ok(InvariantReport {
            order: s.order(),
            center_size: s.center().len(),
            vacuous: gamma.order() == 0,
            graph,
            knit_degree: knit,
        })
    }
}
