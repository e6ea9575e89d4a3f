//! Seeded generators and independent oracles shared by the integration
//! tests and the acceptance run.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use adaptlearn_core::model::{
    Catalog, DeviceProfile, LearningObject, MediaSet, ObjectId, SessionEnvironment, Skill, Subject,
    SubjectId, UserProfile,
};
use adaptlearn_core::ontology::{AcmlMessage, MessageParameter, ParameterKind};
use adaptlearn_core::sdg::{build_sdg, SubjectDependencyGraph};
use adaptlearn_core::solver::{Choice, ChoiceRow, FeasibleChoiceTable};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

const PIECES: &[&str] = &["a", "B", "z9", "&", "<", ">", "\"", "'", "é", "λ", "-", "_", " ", "x y", "&amp;", "]]>"];

/// Non-empty text without leading or trailing whitespace.
pub fn text(r: &mut ChaCha8Rng, max_pieces: usize) -> String {
    loop {
        let n = r.random_range(1..=max_pieces);
        let s: String = (0..n).map(|_| *PIECES.choose(r).unwrap()).collect();
        let s = s.trim().to_owned();
        if !s.is_empty() {
            return s;
        }
    }
}

pub fn subject_name(i: usize) -> SubjectId {
    SubjectId::new(format!("s{i}"))
}

/// Prerequisites always point to lower indices, so the relation is a DAG.
pub fn random_prerequisites(r: &mut ChaCha8Rng, n: usize, p_edge: f64) -> Vec<BTreeSet<SubjectId>> {
    (0..n)
        .map(|i| (0..i).filter(|_| r.random_bool(p_edge)).map(subject_name).collect())
        .collect()
}

/// A valid catalog: DAG prerequisites, objects with random media, sizes
/// and durations, and skills listed in index order.
pub fn random_catalog(r: &mut ChaCha8Rng, n_subjects: usize, max_objects: usize, max_duration: u64) -> Catalog {
    let prereqs = random_prerequisites(r, n_subjects, 0.35);
    let mut subjects = Vec::new();
    let mut objects = Vec::new();
    for (i, prerequisites) in prereqs.into_iter().enumerate() {
        let id = subject_name(i);
        let mut learning_objects = BTreeSet::new();
        for j in 0..r.random_range(1..=max_objects) {
            let oid = ObjectId::new(format!("{id}o{j}"));
            let mut media = MediaSet::new(r.random_bool(0.6), r.random_bool(0.5), r.random_bool(0.4));
            if media.is_empty() {
                media.text = true;
            }
            let duration = r.random_range(1..=max_duration);
            let rate = r.random_range(1..=200u64);
            learning_objects.insert(oid.clone());
            objects.push(LearningObject {
                id: oid.clone(),
                name: text(r, 3),
                subject: id.clone(),
                location: format!("http://lor.example/{oid}"),
                media,
                size: rate * duration + r.random_range(0..duration),
                duration,
            });
        }
        subjects.push(Subject {
            id,
            name: text(r, 3),
            prerequisites,
            learning_objects,
        });
    }
    let n_skills = if n_subjects == 0 { 0 } else { r.random_range(0..=3) };
    let skills = (0..n_skills)
        .map(|k| {
            let mut members: Vec<usize> = (0..n_subjects).filter(|_| r.random_bool(0.4)).collect();
            if members.is_empty() {
                members.push(r.random_range(0..n_subjects));
            }
            Skill {
                name: format!("{} {k}", text(r, 2)),
                subject_list: members.into_iter().map(subject_name).collect(),
            }
        })
        .collect();
    Catalog::new(subjects, objects, skills)
}

/// [`random_catalog`] with a random subject count.
pub fn random_catalog_sized(
    r: &mut ChaCha8Rng,
    subjects: std::ops::RangeInclusive<usize>,
    max_objects: usize,
    max_duration: u64,
) -> Catalog {
    let n = r.random_range(subjects);
    random_catalog(r, n, max_objects, max_duration)
}

pub fn random_known(r: &mut ChaCha8Rng, catalog: &Catalog, p: f64) -> BTreeSet<SubjectId> {
    catalog
        .subjects()
        .iter()
        .filter(|_| r.random_bool(p))
        .map(|s| s.id.clone())
        .collect()
}

pub fn random_device(r: &mut ChaCha8Rng) -> DeviceProfile {
    let mut enabled = MediaSet::new(r.random_bool(0.7), r.random_bool(0.7), r.random_bool(0.7));
    if enabled.is_empty() {
        enabled.text = true;
    }
    DeviceProfile {
        id: text(r, 2),
        max_bandwidth: r.random_range(1.0..400.0),
        enabled,
    }
}

pub fn random_user(r: &mut ChaCha8Rng, catalog: Option<&Catalog>) -> UserProfile {
    let mut user = UserProfile::new(text(r, 2), r.random_range(1.0..2000.0));
    for _ in 0..r.random_range(0..4) {
        user.acquired_skills.insert(text(r, 2));
    }
    if r.random_bool(0.5) {
        let skill = format!("wanted {}", text(r, 2));
        if !user.acquired_skills.contains(&skill) {
            user.desired_skill = Some(skill);
        }
    }
    match catalog {
        Some(c) => {
            for s in c.subjects() {
                if r.random_bool(0.3) {
                    user.known_subjects.insert(s.id.clone(), s.name.clone());
                }
            }
        }
        None => {
            for i in 0..r.random_range(0..5) {
                user.known_subjects.insert(SubjectId::new(format!("k{i}{}", text(r, 1))), text(r, 2));
            }
        }
    }
    user
}

pub fn random_env(r: &mut ChaCha8Rng) -> SessionEnvironment {
    SessionEnvironment::new(r.random_range(1.0..400.0))
}

pub fn random_message(r: &mut ChaCha8Rng) -> AcmlMessage {
    let mut params = vec![
        MessageParameter::new(ParameterKind::Sender, text(r, 2)),
        MessageParameter::new(ParameterKind::Receiver, text(r, 2)),
    ];
    for _ in 0..r.random_range(0..5) {
        let kind = *[ParameterKind::Ontology, ParameterKind::Content, ParameterKind::ReplyWith, ParameterKind::InReplyTo]
            .choose(r)
            .unwrap();
        let body = if r.random_bool(0.3) {
            format!("{}\n  {}", text(r, 3), text(r, 3))
        } else {
            text(r, 4)
        };
        params.push(MessageParameter::new(kind, body));
    }
    for p in params.iter_mut() {
        if r.random_bool(0.3) {
            p.link = Some(format!("http://host.example/{}", text(r, 2)));
        }
    }
    // sender and receiver anywhere in the sequence
    let n = params.len();
    for i in (1..n).rev() {
        params.swap(i, r.random_range(0..=i));
    }
    let kind = *["request", "inform", "failure", "agree"].choose(r).unwrap();
    AcmlMessage::new(kind, params).expect("generated message is valid")
}

/// Every prerequisite chain ending at `target`: a sequence of unknown subjects,
/// each a prerequisite of the next, whose first member is basic or has
/// only known prerequisites. Returns the union of their nodes and of
/// their consecutive pairs.
pub fn chain_union(
    catalog: &Catalog,
    known: &BTreeSet<SubjectId>,
    target: &SubjectId,
) -> (BTreeSet<SubjectId>, BTreeSet<(SubjectId, SubjectId)>) {
    let mut nodes = BTreeSet::new();
    let mut arcs = BTreeSet::new();
    if known.contains(target) {
        return (nodes, arcs);
    }
    // depth-first over reversed chains: path[0] = target
    let mut stack = vec![vec![target.clone()]];
    while let Some(path) = stack.pop() {
        let head = path.last().unwrap();
        let subject = catalog.subject(head).unwrap();
        let starts_chain = subject.prerequisites.iter().all(|p| known.contains(p));
        if starts_chain {
            nodes.extend(path.iter().cloned());
            for w in path.windows(2) {
                arcs.insert((w[1].clone(), w[0].clone()));
            }
        }
        for p in &subject.prerequisites {
            if !known.contains(p) && !path.contains(p) {
                let mut longer = path.clone();
                longer.push(p.clone());
                stack.push(longer);
            }
        }
    }
    (nodes, arcs)
}

/// A random graph of at most `max_subjects` nodes and a table over it.
/// Rows may be empty with small probability.
pub fn random_instance(
    r: &mut ChaCha8Rng,
    max_subjects: usize,
    max_options: usize,
    max_duration: u64,
) -> (SubjectDependencyGraph, FeasibleChoiceTable, f64) {
    let n = r.random_range(1..=max_subjects);
    let mut prereqs = random_prerequisites(r, n, 0.5);
    // give every subject a dependent so all of them lead to the last one
    for i in 0..n.saturating_sub(1) {
        if !prereqs[i + 1..].iter().any(|p| p.contains(&subject_name(i))) {
            let later = r.random_range(i + 1..n);
            prereqs[later].insert(subject_name(i));
        }
    }
    let subjects: Vec<Subject> = prereqs
        .into_iter()
        .enumerate()
        .map(|(i, prerequisites)| Subject {
            id: subject_name(i),
            name: String::new(),
            prerequisites,
            learning_objects: BTreeSet::new(),
        })
        .collect();
    let catalog = Catalog::new(subjects, vec![], vec![]);
    let sdg = build_sdg(&catalog, &BTreeSet::new(), &subject_name(n - 1)).unwrap();
    assert_eq!(sdg.len(), n);

    let order = adaptlearn_core::sdg::topological_order(&sdg);
    let rows = order
        .into_iter()
        .map(|s| {
            let k = if r.random_bool(0.03) { 0 } else { r.random_range(1..=max_options) };
            let options = (0..k)
                .map(|j| {
                    let duration = r.random_range(1..=max_duration);
                    // small rates so equal objectives occur often
                    let size = r.random_range(1..=4u64) * duration * r.random_range(1..=3u64);
                    Choice::new(ObjectId::new(format!("{s}-{j}")), size, duration)
                })
                .collect();
            ChoiceRow { subject: s, options }
        })
        .collect();
    let max_time = r.random_range(0.0..(max_duration as f64 * max_subjects as f64 * 0.8));
    (sdg, FeasibleChoiceTable::from_rows(rows), max_time)
}

/// Subjects of `catalog` keyed by id, for quick name lookup.
pub fn names(catalog: &Catalog) -> BTreeMap<SubjectId, String> {
    catalog.subjects().iter().map(|s| (s.id.clone(), s.name.clone())).collect()
}

/// Reference UDA to SMA skill request, with placeholder links.
pub const REFERENCE_MESSAGE: &str = r#"<?xml version="1.0" encoding="UTF-8"?>
<!DOCTYPE fipa_acl SYSTEM "fipa_acl.dtd">
<message>
    <messagetype>
        request
    </messagetype>
    <messageparameter>
        <sender link="http://example.org/user">
            UDA
        </sender>
    </messageparameter>
    <messageparameter>
        <receiver link="http://example.org/catalog">
            SMA
        </receiver>
    </messageparameter>
    <messageparameter>
        <ontology link="http://example.org/user/UDAontology.xml">
            Ontology of UDA
        </ontology>
    </messageparameter>
    <messageparameter>
        <content>
            Request of available skills
        </content>
    </messageparameter>
    <messageparameter>
        <reply-with>
            List of skills
        </reply-with>
    </messageparameter>
</message>
"#;
