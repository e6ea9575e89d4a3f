use super::tree::{parse_document, Element, XmlWriter};
use super::{flag, non_empty, parse_flag, parse_u64, CodecError};
use crate::model::{
    validate_catalog, Catalog, LearningObject, MediaSet, ObjectId, Skill, Subject, SubjectId,
    ValidationReport,
};

/// Parse a catalog document and validate the result.
///
/// Structural problems (bad XML, missing attributes, wrong types) are
/// errors. Broken catalog invariants are returned in the report alongside
/// the catalog.
pub fn parse_catalog(xml_text: &str) -> Result<(Catalog, ValidationReport), CodecError> {
    let root = parse_document(xml_text)?;
    root.expect_name("Catalog")?;
    let parts = root.sequence(&["SkillSet", "SubjSet", "LObjSet"])?;

    let skills = parts[0]
        .children_named("Skill")?
        .iter()
        .map(parse_skill)
        .collect::<Result<Vec<_>, _>>()?;
    let subjects = parts[1]
        .children_named("Subj")?
        .iter()
        .map(parse_subject)
        .collect::<Result<Vec<_>, _>>()?;
    let objects = parts[2]
        .children_named("LObj")?
        .iter()
        .map(parse_object)
        .collect::<Result<Vec<_>, _>>()?;

    let catalog = Catalog::new(subjects, objects, skills);
    let report = validate_catalog(&catalog);
    Ok((catalog, report))
}

fn parse_skill(el: &Element) -> Result<Skill, CodecError> {
    let name = el.required_attr("Name")?.to_owned();
    let list = el.sequence(&["SkSubjList"])?[0];
    let subject_list = list
        .children_named("Subject")?
        .iter()
        .map(|s| {
            s.no_children()?;
            Ok(SubjectId::from(non_empty("Subject", &s.text)?))
        })
        .collect::<Result<Vec<_>, CodecError>>()?;
    Ok(Skill { name, subject_list })
}

fn parse_subject(el: &Element) -> Result<Subject, CodecError> {
    let id = non_empty("SubjId", el.required_attr("SubjId")?)?.into();
    let name = el.required_attr("SubjName")?.to_owned();
    let sets = el.sequence(&["SubjPrereqSet", "SubjLObjSet"])?;
    let mut prerequisites = std::collections::BTreeSet::new();
    for p in sets[0].children_named("Prereq")? {
        p.no_children()?;
        prerequisites.insert(SubjectId::from(non_empty("SubjId", p.required_attr("SubjId")?)?));
    }
    let mut learning_objects = std::collections::BTreeSet::new();
    for o in sets[1].children_named("LObjRef")? {
        o.no_children()?;
        learning_objects.insert(ObjectId::from(non_empty("LObjId", o.required_attr("LObjId")?)?));
    }
    Ok(Subject {
        id,
        name,
        prerequisites,
        learning_objects,
    })
}

fn parse_object(el: &Element) -> Result<LearningObject, CodecError> {
    el.no_children()?;
    Ok(LearningObject {
        id: non_empty("LObjId", el.required_attr("LObjId")?)?.into(),
        name: el.required_attr("LObjName")?.to_owned(),
        subject: non_empty("LObjSubject", el.required_attr("LObjSubject")?)?.into(),
        location: el.required_attr("LObjLocation")?.to_owned(),
        media: MediaSet {
            video: parse_flag("LObjVC", el.required_attr("LObjVC")?)?,
            audio: parse_flag("LObjAC", el.required_attr("LObjAC")?)?,
            text: parse_flag("LObjTC", el.required_attr("LObjTC")?)?,
        },
        size: parse_u64("LObjSize", el.required_attr("LObjSize")?)?,
        duration: parse_u64("LObjDuration", el.required_attr("LObjDuration")?)?,
    })
}

pub fn serialize_catalog(catalog: &Catalog) -> String {
    let mut w = XmlWriter::new();
    w.open("Catalog", &[]);

    if catalog.skills().is_empty() {
        w.empty("SkillSet", &[]);
    } else {
        w.open("SkillSet", &[]);
        for skill in catalog.skills() {
            w.open("Skill", &[("Name", &skill.name)]);
            if skill.subject_list.is_empty() {
                w.empty("SkSubjList", &[]);
            } else {
                w.open("SkSubjList", &[]);
                for s in &skill.subject_list {
                    w.leaf("Subject", s.as_str());
                }
                w.close("SkSubjList");
            }
            w.close("Skill");
        }
        w.close("SkillSet");
    }

    if catalog.subjects().is_empty() {
        w.empty("SubjSet", &[]);
    } else {
        w.open("SubjSet", &[]);
        for s in catalog.subjects() {
            w.open("Subj", &[("SubjId", s.id.as_str()), ("SubjName", &s.name)]);
            if s.prerequisites.is_empty() {
                w.empty("SubjPrereqSet", &[]);
            } else {
                w.open("SubjPrereqSet", &[]);
                for p in &s.prerequisites {
                    w.empty("Prereq", &[("SubjId", p.as_str())]);
                }
                w.close("SubjPrereqSet");
            }
            if s.learning_objects.is_empty() {
                w.empty("SubjLObjSet", &[]);
            } else {
                w.open("SubjLObjSet", &[]);
                for o in &s.learning_objects {
                    w.empty("LObjRef", &[("LObjId", o.as_str())]);
                }
                w.close("SubjLObjSet");
            }
            w.close("Subj");
        }
        w.close("SubjSet");
    }

    if catalog.objects().is_empty() {
        w.empty("LObjSet", &[]);
    } else {
        w.open("LObjSet", &[]);
        for o in catalog.objects() {
            let size = o.size.to_string();
            let duration = o.duration.to_string();
            w.empty(
                "LObj",
                &[
                    ("LObjId", o.id.as_str()),
                    ("LObjName", &o.name),
                    ("LObjSubject", o.subject.as_str()),
                    ("LObjLocation", &o.location),
                    ("LObjVC", flag(o.media.video)),
                    ("LObjAC", flag(o.media.audio)),
                    ("LObjTC", flag(o.media.text)),
                    ("LObjSize", &size),
                    ("LObjDuration", &duration),
                ],
            );
        }
        w.close("LObjSet");
    }

    w.close("Catalog");
    w.finish()
}
