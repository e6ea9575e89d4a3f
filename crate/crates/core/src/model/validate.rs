use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{Catalog, ObjectId, SubjectId};

/// One broken catalog invariant.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    DuplicateSubject(SubjectId),
    DuplicateObject(ObjectId),
    DuplicateSkill(String),
    EmptySkillName,
    SelfPrerequisite(SubjectId),
    DanglingPrerequisite { subject: SubjectId, missing: SubjectId },
    DanglingObjectRef { subject: SubjectId, missing: ObjectId },
    ForeignObjectRef { subject: SubjectId, object: ObjectId, owner: SubjectId },
    DanglingObjectSubject { object: ObjectId, missing: SubjectId },
    UnlistedObject { object: ObjectId, subject: SubjectId },
    NoMediaComponent(ObjectId),
    ZeroSize(ObjectId),
    ZeroDuration(ObjectId),
    DanglingSkillSubject { skill: String, missing: SubjectId },
    RepeatedSkillSubject { skill: String, subject: SubjectId },
    SkillOrder { skill: String, subject: SubjectId, prerequisite: SubjectId },
    /// Members of one strongly connected component of the prerequisite
    /// relation, ascending.
    PrerequisiteCycle(Vec<SubjectId>),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            DuplicateSubject(id) => write!(f, "duplicate subject id {id}"),
            DuplicateObject(id) => write!(f, "duplicate learning object id {id}"),
            DuplicateSkill(n) => write!(f, "duplicate skill name {n:?}"),
            EmptySkillName => write!(f, "skill with empty name"),
            SelfPrerequisite(id) => write!(f, "subject {id} lists itself as a prerequisite"),
            DanglingPrerequisite { subject, missing } => {
                write!(f, "subject {subject}: unknown prerequisite {missing}")
            }
            DanglingObjectRef { subject, missing } => {
                write!(f, "subject {subject}: unknown learning object {missing}")
            }
            ForeignObjectRef { subject, object, owner } => write!(
                f,
                "subject {subject} lists learning object {object}, which belongs to {owner}"
            ),
            DanglingObjectSubject { object, missing } => {
                write!(f, "learning object {object}: unknown subject {missing}")
            }
            UnlistedObject { object, subject } => write!(
                f,
                "learning object {object} is not listed by its subject {subject}"
            ),
            NoMediaComponent(id) => write!(f, "learning object {id} has no media component"),
            ZeroSize(id) => write!(f, "learning object {id} has zero size"),
            ZeroDuration(id) => write!(f, "learning object {id} has zero duration"),
            DanglingSkillSubject { skill, missing } => {
                write!(f, "skill {skill:?}: unknown subject {missing}")
            }
            RepeatedSkillSubject { skill, subject } => {
                write!(f, "skill {skill:?}: subject {subject} listed twice")
            }
            SkillOrder { skill, subject, prerequisite } => write!(
                f,
                "skill {skill:?}: {subject} is listed before its prerequisite {prerequisite}"
            ),
            PrerequisiteCycle(ids) => {
                let ids: Vec<&str> = ids.iter().map(|s| s.as_str()).collect();
                write!(f, "prerequisite cycle among {{{}}}", ids.join(", "))
            }
        }
    }
}

/// Every violation found in a catalog, sorted. Empty means well-formed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

pub fn validate_catalog(catalog: &Catalog) -> ValidationReport {
    let mut out = Vec::new();

    let mut seen = BTreeSet::new();
    for s in catalog.subjects() {
        if !seen.insert(&s.id) {
            out.push(Violation::DuplicateSubject(s.id.clone()));
        }
    }
    let mut seen = BTreeSet::new();
    for o in catalog.objects() {
        if !seen.insert(&o.id) {
            out.push(Violation::DuplicateObject(o.id.clone()));
        }
    }
    let mut seen = BTreeSet::new();
    for sk in catalog.skills() {
        if sk.name.is_empty() {
            out.push(Violation::EmptySkillName);
        } else if !seen.insert(&sk.name) {
            out.push(Violation::DuplicateSkill(sk.name.clone()));
        }
    }

    for s in catalog.subjects() {
        for p in &s.prerequisites {
            if *p == s.id {
                out.push(Violation::SelfPrerequisite(s.id.clone()));
            } else if catalog.subject(p).is_none() {
                out.push(Violation::DanglingPrerequisite {
                    subject: s.id.clone(),
                    missing: p.clone(),
                });
            }
        }
        for oid in &s.learning_objects {
            match catalog.object(oid) {
                None => out.push(Violation::DanglingObjectRef {
                    subject: s.id.clone(),
                    missing: oid.clone(),
                }),
                Some(o) if o.subject != s.id => out.push(Violation::ForeignObjectRef {
                    subject: s.id.clone(),
                    object: oid.clone(),
                    owner: o.subject.clone(),
                }),
                Some(_) => {}
            }
        }
    }

    for o in catalog.objects() {
        match catalog.subject(&o.subject) {
            None => out.push(Violation::DanglingObjectSubject {
                object: o.id.clone(),
                missing: o.subject.clone(),
            }),
            Some(s) if !s.learning_objects.contains(&o.id) => {
                out.push(Violation::UnlistedObject {
                    object: o.id.clone(),
                    subject: o.subject.clone(),
                })
            }
            Some(_) => {}
        }
        if o.media.is_empty() {
            out.push(Violation::NoMediaComponent(o.id.clone()));
        }
        if o.size == 0 {
            out.push(Violation::ZeroSize(o.id.clone()));
        }
        if o.duration == 0 {
            out.push(Violation::ZeroDuration(o.id.clone()));
        }
    }

    for sk in catalog.skills() {
        let mut position = BTreeMap::new();
        for (i, sid) in sk.subject_list.iter().enumerate() {
            if catalog.subject(sid).is_none() {
                out.push(Violation::DanglingSkillSubject {
                    skill: sk.name.clone(),
                    missing: sid.clone(),
                });
            }
            if position.insert(sid, i).is_some() {
                out.push(Violation::RepeatedSkillSubject {
                    skill: sk.name.clone(),
                    subject: sid.clone(),
                });
            }
        }
        for (i, sid) in sk.subject_list.iter().enumerate() {
            let Some(subject) = catalog.subject(sid) else { continue };
            for p in &subject.prerequisites {
                if let Some(&j) = position.get(p) {
                    if j > i {
                        out.push(Violation::SkillOrder {
                            skill: sk.name.clone(),
                            subject: sid.clone(),
                            prerequisite: p.clone(),
                        });
                    }
                }
            }
        }
    }

    for component in cyclic_components(catalog) {
        out.push(Violation::PrerequisiteCycle(component));
    }

    out.sort();
    out.dedup();
    ValidationReport { violations: out }
}

/// Strongly connected components of the prerequisite relation that contain
/// a cycle. Self-loops are reported separately and ignored here.
fn cyclic_components(catalog: &Catalog) -> Vec<Vec<SubjectId>> {
    let ids: Vec<&SubjectId> = catalog
        .subjects()
        .iter()
        .map(|s| &s.id)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let index: BTreeMap<&SubjectId, usize> = ids.iter().enumerate().map(|(i, id)| (*id, i)).collect();
    let n = ids.len();
    let mut succ = vec![Vec::new(); n];
    let mut pred = vec![Vec::new(); n];
    for (i, id) in ids.iter().enumerate() {
        let subject = catalog.subject(id).expect("indexed id resolves");
        for p in &subject.prerequisites {
            if p == *id {
                continue;
            }
            if let Some(&j) = index.get(p) {
                // edge prerequisite -> dependent
                succ[j].push(i);
                pred[i].push(j);
            }
        }
    }

    // Kosaraju: finish order on the forward graph, then sweep the reverse.
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for root in 0..n {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        let mut stack = vec![(root, 0usize)];
        while let Some((v, next)) = stack.last_mut() {
            if let Some(&w) = succ[*v].get(*next) {
                *next += 1;
                if !visited[w] {
                    visited[w] = true;
                    stack.push((w, 0));
                }
            } else {
                order.push(*v);
                stack.pop();
            }
        }
    }

    let mut component = vec![usize::MAX; n];
    let mut result = Vec::new();
    for &root in order.iter().rev() {
        if component[root] != usize::MAX {
            continue;
        }
        let label = root;
        component[root] = label;
        let mut members = vec![root];
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &w in &pred[v] {
                if component[w] == usize::MAX {
                    component[w] = label;
                    members.push(w);
                    stack.push(w);
                }
            }
        }
        if members.len() > 1 {
            let mut names: Vec<SubjectId> = members.iter().map(|&m| ids[m].clone()).collect();
            names.sort();
            result.push(names);
        }
    }
    result
}
