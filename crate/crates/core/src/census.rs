//! Batch classification of graph6 lines.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{classify_with, ClassifyOptions, Stage, Verdict};
use crate::error::ParseError;
use crate::formats::{parse_graph6, to_graph6};
use crate::graph::Graph;

/// One-line summary of a verdict, stable for a given graph and seed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRecord {
    /// Absent for graphs too large for graph6.
    pub graph6: Option<String>,
    pub verdict: String,
    pub stage: Option<Stage>,
    pub stage_number: Option<u8>,
    pub evidence: String,
    pub seed: u64,
}

impl VerdictRecord {
    pub fn new(g: &Graph, v: &Verdict, seed: u64) -> Self {
        VerdictRecord {
            graph6: to_graph6(g).ok(),
            verdict: v.label().to_string(),
            stage: v.stage(),
            stage_number: v.stage().map(Stage::number),
            evidence: v.describe(),
            seed,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

#[derive(Clone, Debug)]
pub struct Classified {
    pub graph: Graph,
    pub verdict: Verdict,
    pub record: VerdictRecord,
}

#[derive(Clone, Debug)]
pub struct CensusItem {
    /// 1-based line number in the input.
    pub line: usize,
    pub outcome: Result<Classified, ParseError>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusSummary {
    pub total: usize,
    #[serde(rename = "in")]
    pub in_count: usize,
    pub out: usize,
    pub unknown: usize,
    pub errors: usize,
}

/// Classifies every nonblank line independently and in parallel. Line `k`
/// (1-based) uses seed `opts.seed + k - 1`; output order follows the input.
pub fn census<S: AsRef<str> + Sync>(
    lines: &[S],
    opts: &ClassifyOptions,
) -> (Vec<CensusItem>, CensusSummary) {
    let items: Vec<CensusItem> = lines
        .par_iter()
        .enumerate()
        .filter_map(|(idx, raw)| {
            let text = raw.as_ref().trim();
            if text.is_empty() {
                return None;
            }
            let seed = opts.seed.wrapping_add(idx as u64);
            let outcome = parse_graph6(text).map(|graph| {
                let verdict = classify_with(&graph, &ClassifyOptions { seed, ..*opts });
                let record = VerdictRecord::new(&graph, &verdict, seed);
                Classified {
                    graph,
                    verdict,
                    record,
                }
            });
            Some(CensusItem {
                line: idx + 1,
                outcome,
            })
        })
        .collect();
    let mut summary = CensusSummary::default();
    for item in &items {
        summary.total += 1;
        match &item.outcome {
            Ok(c) => match c.verdict {
                Verdict::In { .. } => summary.in_count += 1,
                Verdict::Out { .. } => summary.out += 1,
                Verdict::Unknown { .. } => summary.unknown += 1,
            },
            Err(_) => summary.errors += 1,
        }
    }
    (items, summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_streams() {
        let (items, s) = census::<&str>(&[], &ClassifyOptions::default());
        assert!(items.is_empty());
        assert_eq!(s, CensusSummary::default());

        let lines = ["C~", "", "not graph6", "Ch"];
        let (items, s) = census(&lines, &ClassifyOptions::default());
        assert_eq!(items.len(), 3);
        assert_eq!(items[0].line, 1);
        assert_eq!(items[0].outcome.as_ref().unwrap().record.verdict, "in");
        assert!(items[1].outcome.is_err());
        assert_eq!(items[1].line, 3);
        assert_eq!(items[2].outcome.as_ref().unwrap().record.seed, 3);
        assert_eq!(s, CensusSummary { total: 3, in_count: 2, out: 0, unknown: 0, errors: 1 });
    }
}
