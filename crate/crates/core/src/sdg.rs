//! Subject dependency graph: the unknown subjects a user must study, in
//! prerequisite order, to reach a target subject.
//!
//! A subject belongs to the graph when it is unknown and some chain of
//! unknown subjects, each a prerequisite of the next, leads from it to the
//! target. Walking prerequisites backwards from any such subject always
//! ends at a subject that is basic or whose prerequisites are all known,
//! so the graph is exactly the set of unknown ancestors of the target
//! reachable through unknown subjects, with every prerequisite arc between
//! two members.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::model::{Catalog, SubjectId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubjectDependencyGraph {
    target: SubjectId,
    nodes: BTreeSet<SubjectId>,
    arcs: BTreeSet<(SubjectId, SubjectId)>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SdgError {
    #[error("unknown target subject {0}")]
    UnknownTarget(SubjectId),
    #[error("prerequisite cycle through subject {0}")]
    CyclicCatalog(SubjectId),
}

impl SubjectDependencyGraph {
    pub fn target(&self) -> &SubjectId {
        &self.target
    }

    pub fn nodes(&self) -> &BTreeSet<SubjectId> {
        &self.nodes
    }

    /// Arcs `(prerequisite, dependent)`.
    pub fn arcs(&self) -> &BTreeSet<(SubjectId, SubjectId)> {
        &self.arcs
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    /// `a<TAB>b` per arc, one per line, in arc order.
    pub fn edge_list(&self) -> String {
        let mut out = String::new();
        for (a, b) in &self.arcs {
            let _ = writeln!(out, "{a}\t{b}");
        }
        out
    }
}

pub fn build_sdg(
    catalog: &Catalog,
    known: &BTreeSet<SubjectId>,
    target: &SubjectId,
) -> Result<SubjectDependencyGraph, SdgError> {
    if catalog.subject(target).is_none() {
        return Err(SdgError::UnknownTarget(target.clone()));
    }
    let mut graph = SubjectDependencyGraph {
        target: target.clone(),
        nodes: BTreeSet::new(),
        arcs: BTreeSet::new(),
    };
    if known.contains(target) {
        return Ok(graph);
    }

    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Open,
        Done,
    }
    let mut marks: BTreeMap<SubjectId, Mark> = BTreeMap::new();
    let mut stack: Vec<(SubjectId, Vec<&SubjectId>)> =
        vec![(target.clone(), unknown_prereqs(catalog, known, target))];
    marks.insert(target.clone(), Mark::Open);
    while let Some((_, pending)) = stack.last_mut() {
        match pending.pop() {
            Some(p) => match marks.get(p) {
                Some(Mark::Open) => return Err(SdgError::CyclicCatalog(p.clone())),
                Some(Mark::Done) => {}
                None => {
                    marks.insert(p.clone(), Mark::Open);
                    stack.push((p.clone(), unknown_prereqs(catalog, known, p)));
                }
            },
            None => {
                let (node, _) = stack.pop().expect("non-empty");
                marks.insert(node, Mark::Done);
            }
        }
    }

    graph.nodes = marks.into_keys().collect();
    for b in &graph.nodes {
        for p in unknown_prereqs(catalog, known, b) {
            graph.arcs.insert((p.clone(), b.clone()));
        }
    }
    Ok(graph)
}

fn unknown_prereqs<'c>(
    catalog: &'c Catalog,
    known: &BTreeSet<SubjectId>,
    id: &SubjectId,
) -> Vec<&'c SubjectId> {
    catalog
        .subject(id)
        .map(|s| {
            s.prerequisites
                .iter()
                .filter(|p| !known.contains(*p) && catalog.subject(p).is_some())
                .collect()
        })
        .unwrap_or_default()
}

/// Linearization consistent with every arc; ties go to the smallest id.
pub fn topological_order(g: &SubjectDependencyGraph) -> Vec<SubjectId> {
    let mut indegree: BTreeMap<&SubjectId, usize> = g.nodes.iter().map(|n| (n, 0)).collect();
    let mut successors: BTreeMap<&SubjectId, Vec<&SubjectId>> = BTreeMap::new();
    for (a, b) in &g.arcs {
        *indegree.get_mut(b).expect("arc endpoint is a node") += 1;
        successors.entry(a).or_default().push(b);
    }
    let mut ready: BTreeSet<&SubjectId> = indegree
        .iter()
        .filter(|(_, &d)| d == 0)
        .map(|(n, _)| *n)
        .collect();
    let mut order = Vec::with_capacity(g.nodes.len());
    while let Some(n) = ready.pop_first() {
        order.push(n.clone());
        for s in successors.get(n).into_iter().flatten() {
            let d = indegree.get_mut(s).expect("successor is a node");
            *d -= 1;
            if *d == 0 {
                ready.insert(s);
            }
        }
    }
    debug_assert_eq!(order.len(), g.nodes.len(), "graph is acyclic by construction");
    order
}
