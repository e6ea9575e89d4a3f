//! Skill and subject queries answered by the skill manager.
//!
//! `available_skills` walks the catalog skills and keeps those whose name
//! is absent from the user's acquired set, returning `<Skill>` names.
//! `remaining_subjects` looks up the skill named by the request, walks its
//! stored subject list and keeps subjects absent from the known set.
//! Subjects are matched by id; [`name_mismatches`] reports known subjects
//! whose profile name disagrees with the catalog.

use std::collections::BTreeSet;

use crate::model::{Catalog, SubjectId, UserProfile};
use crate::ontology::tree::{parse_document, XmlWriter};
use crate::ontology::CodecError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SkillError {
    #[error("unknown skill {0:?}")]
    UnknownSkill(String),
}

/// Catalog skills not yet acquired, by ascending name.
pub fn available_skills(catalog: &Catalog, acquired: &BTreeSet<String>) -> Vec<String> {
    let names: BTreeSet<&str> = catalog
        .skills()
        .iter()
        .map(|s| s.name.as_str())
        .filter(|n| !acquired.contains(*n))
        .collect();
    names.into_iter().map(str::to_owned).collect()
}

/// The skill's subject list without the known subjects, order kept.
pub fn remaining_subjects(
    catalog: &Catalog,
    skill: &str,
    known: &BTreeSet<SubjectId>,
) -> Result<Vec<SubjectId>, SkillError> {
    let skill = catalog
        .skill(skill)
        .ok_or_else(|| SkillError::UnknownSkill(skill.to_owned()))?;
    Ok(skill
        .subject_list
        .iter()
        .filter(|s| !known.contains(*s))
        .cloned()
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NameMismatch {
    pub subject: SubjectId,
    pub profile_name: String,
    /// `None` when the catalog has no such subject.
    pub catalog_name: Option<String>,
}

pub fn name_mismatches(catalog: &Catalog, user: &UserProfile) -> Vec<NameMismatch> {
    user.known_subjects
        .iter()
        .filter_map(|(id, name)| {
            let catalog_name = catalog.subject(id).map(|s| s.name.clone());
            (catalog_name.as_deref() != Some(name.as_str())).then(|| NameMismatch {
                subject: id.clone(),
                profile_name: name.clone(),
                catalog_name,
            })
        })
        .collect()
}

/// `<SkillSet>` reply payload.
pub fn encode_skill_set(names: &[String]) -> String {
    list_document("SkillSet", "Skill", names.iter().map(String::as_str))
}

pub fn decode_skill_set(xml_text: &str) -> Result<Vec<String>, CodecError> {
    decode_list(xml_text, "SkillSet", "Skill")
}

/// `<SubjectSet>` reply payload.
pub fn encode_subject_set(ids: &[SubjectId]) -> String {
    list_document("SubjectSet", "Subject", ids.iter().map(SubjectId::as_str))
}

pub fn decode_subject_set(xml_text: &str) -> Result<Vec<SubjectId>, CodecError> {
    Ok(decode_list(xml_text, "SubjectSet", "Subject")?
        .into_iter()
        .map(SubjectId::from)
        .collect())
}

fn list_document<'a>(root: &str, item: &str, items: impl Iterator<Item = &'a str>) -> String {
    let mut w = XmlWriter::new();
    let mut items = items.peekable();
    if items.peek().is_none() {
        w.empty(root, &[]);
        return w.finish();
    }
    w.open(root, &[]);
    for i in items {
        w.leaf(item, i);
    }
    w.close(root);
    w.finish()
}

fn decode_list(xml_text: &str, root: &str, item: &str) -> Result<Vec<String>, CodecError> {
    let doc = parse_document(xml_text)?;
    doc.expect_name(root)?;
    doc.children_named(item)?
        .iter()
        .map(|el| {
            el.no_children()?;
            if el.text.is_empty() {
                return Err(CodecError::SchemaViolation {
                    name: item.to_owned(),
                    reason: "must not be empty".into(),
                });
            }
            Ok(el.text.clone())
        })
        .collect()
}
