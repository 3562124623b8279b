//! Self-contained JSON documents for certificates, witnesses and matrix
//! property witnesses. Each document carries its graph or matrix, so
//! [`Document::replay`] needs no other input.
//!
//! Graphs serialize as `{"n": 5, "edges": [[0, 1], ...]}` and matrices as
//! lists of rows of rational strings (`"3"`, `"-1/2"`). The top-level
//! `"kind"` field selects the variant.

use serde::{Deserialize, Serialize};

use crate::classify::{MembershipProof, Verdict};
use crate::error::DocumentError;
use crate::forcing::{replay_check, ForcingCertificate};
use crate::graph::Graph;
use crate::linalg::RatMatrix;
use crate::refute::Witness;
use crate::strong::{satisfies_constraints, PropertyKind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Document {
    ForcingCertificate(ForcingCertificate),
    Witness(Witness),
    Membership {
        graph: Graph,
        proof: MembershipProof,
    },
    /// A nonzero `x` showing that `matrix` lacks `property`.
    PropertyWitness {
        matrix: RatMatrix,
        property: PropertyKind,
        x: RatMatrix,
    },
}

/// What a successful replay established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReplayOutcome {
    /// The forcing steps are sound and end at `K_n`.
    Member,
    /// The forcing steps are sound but stop short of `K_n`.
    Partial,
    NotMember,
    LacksProperty(PropertyKind),
}

impl Document {
    /// The document proving a verdict; `Unknown` has none.
    pub fn from_verdict(g: &Graph, v: &Verdict) -> Option<Document> {
        match v {
            Verdict::In {
                proof: MembershipProof::Forcing { certificate },
                ..
            } => Some(Document::ForcingCertificate(certificate.clone())),
            Verdict::In { proof, .. } => Some(Document::Membership {
                graph: g.clone(),
                proof: proof.clone(),
            }),
            Verdict::Out { witness, .. } => Some(Document::Witness(witness.clone())),
            Verdict::Unknown { .. } => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Document::ForcingCertificate(_) => "forcing-certificate",
            Document::Witness(_) => "witness",
            Document::Membership { .. } => "membership",
            Document::PropertyWitness { .. } => "property-witness",
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Document, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Re-validates the document from scratch; `Err` explains the failure.
    pub fn replay(&self) -> Result<ReplayOutcome, String> {
        match self {
            Document::ForcingCertificate(cert) => {
                replay_check(cert)?;
                Ok(if cert.final_graph.is_complete() {
                    ReplayOutcome::Member
                } else {
                    ReplayOutcome::Partial
                })
            }
            Document::Witness(w) => {
                w.check().map_err(|e| e.to_string())?;
                Ok(ReplayOutcome::NotMember)
            }
            Document::Membership { graph, proof } => {
                proof.check(graph)?;
                Ok(ReplayOutcome::Member)
            }
            Document::PropertyWitness {
                matrix,
                property,
                x,
            } => {
                if !matrix.is_square() || !matrix.is_symmetric() {
                    return Err("matrix is not square and symmetric".into());
                }
                match satisfies_constraints(matrix, x, *property) {
                    Ok(true) => Ok(ReplayOutcome::LacksProperty(*property)),
                    Ok(false) => Err(format!("x does not satisfy the {property} constraints")),
                    Err(e) => Err(e.to_string()),
                }
            }
        }
    }
}
