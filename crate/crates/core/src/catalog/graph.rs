use std::fmt::Write as _;

use serde::Serialize;

use super::claims::{EdgeAnnotation, TheoremRecord};
use super::verify::{check_edge, check_isomorphism};
use super::{catalog, CatalogError, Label};
use crate::deformation::{leibniz_defect, metric_of_deformation, DeformationRecord, IsoWitness};
use crate::exactnum::{Scalar, TPoly};

#[derive(Clone, Debug, Serialize)]
pub struct GraphNode {
    pub id: String,
    pub label: Label,
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphEdge {
    pub source: String,
    pub target: String,
    pub cocycle: String,
    pub annotation: EdgeAnnotation,
    /// Every requirement of the edge was replayed successfully.
    pub verified: bool,
    pub record: DeformationRecord,
}

#[derive(Clone, Debug, Serialize)]
pub struct DeformationGraph {
    pub dim: usize,
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<GraphEdge>,
}

/// Metric algebras of dimension 4 or 5 and the deformations between them.
pub fn deformation_graph(dim: usize) -> Result<DeformationGraph, CatalogError> {
    if !(4..=5).contains(&dim) {
        return Err(CatalogError::UnsupportedDim(dim));
    }
    let cat = catalog();
    let nodes = cat
        .entries()
        .iter()
        .filter(|e| e.dim == dim && e.metric && !e.filler)
        .map(|e| GraphNode { id: e.id.clone(), label: e.label.clone() })
        .collect();
    let mut edges = Vec::new();
    for claim in cat.claims() {
        let TheoremRecord::DeformationEdge { dim: d, source, target, cocycle, isomorphisms, annotation, .. } = claim
        else {
            continue;
        };
        if *d != dim {
            continue;
        }
        let (verified, _) = check_edge(source, target, cocycle, isomorphisms)?;
        let entry = cat.get(source)?;
        let phi = entry.cocycle(cocycle)?.at(&Scalar::one())?;
        let family = entry.deformation(cocycle, &Scalar::one())?;
        let order = leibniz_defect(&family)?.obstruction_order;
        let mut iso = None;
        for id in isomorphisms {
            let found = cat.claims().iter().find_map(|c| match c {
                TheoremRecord::Isomorphism(c) if &c.id == id => Some(c),
                _ => None,
            });
            if let Some(c) = found {
                if check_isomorphism(c)?.0 {
                    let t0 = c.source.t0.clone().unwrap_or_else(Scalar::one);
                    iso = Some(IsoWitness { matrix: c.matrix.clone(), t0 });
                    break;
                }
            }
        }
        let metric = match &iso {
            Some(w) => metric_of_deformation(&family, &w.t0)?.metric,
            None => false,
        };
        edges.push(GraphEdge {
            source: source.clone(),
            target: target.clone(),
            cocycle: cocycle.clone(),
            annotation: *annotation,
            verified,
            record: DeformationRecord {
                base: source.clone(),
                cocycles: vec![(phi, TPoly::t())],
                obstruction_order: order.into(),
                target: Some(target.clone()),
                iso,
                metric,
            },
        });
    }
    Ok(DeformationGraph { dim, nodes, edges })
}

fn cocycle_label(name: &str, unicode: bool) -> String {
    if !unicode {
        return name.to_string();
    }
    for (ascii, greek) in [("phi", "φ"), ("psi", "ψ")] {
        if let Some(rest) = name.strip_prefix(ascii) {
            return format!("{greek}{rest}");
        }
    }
    name.to_string()
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

impl DeformationGraph {
    /// Graphviz source. Edges missing from the drawn figure are dashed,
    /// edges that failed replay are red.
    pub fn to_dot(&self, unicode: bool) -> String {
        let label = |l: &Label| if unicode { l.unicode.clone() } else { l.ascii.clone() };
        let mut out = String::new();
        let _ = writeln!(out, "digraph metric_deformations_dim{} {{", self.dim);
        out.push_str("  rankdir=LR;\n  node [shape=box];\n");
        for n in &self.nodes {
            let _ = writeln!(out, "  {} [label={}];", quote(&n.id), quote(&label(&n.label)));
        }
        for e in &self.edges {
            let mut attrs = vec![format!("label={}", quote(&cocycle_label(&e.cocycle, unicode)))];
            if e.annotation == EdgeAnnotation::TextOnly {
                attrs.push("style=dashed".into());
            }
            if !e.verified {
                attrs.push("color=red".into());
                attrs.push("xlabel=\"unverified\"".into());
            }
            let _ = writeln!(out, "  {} -> {} [{}];", quote(&e.source), quote(&e.target), attrs.join(", "));
        }
        out.push_str("}\n");
        out
    }
}
