use std::collections::{BTreeMap, BTreeSet};

use super::tree::{parse_document, XmlWriter};
use super::{flag, non_empty, parse_flag, parse_positive_float, CodecError};
use crate::model::{DeviceProfile, MediaSet, SubjectId, UserProfile};

pub fn parse_uda_ontology(xml_text: &str) -> Result<(DeviceProfile, UserProfile), CodecError> {
    let root = parse_document(xml_text)?;
    root.expect_name("UDAOntology")?;
    let parts = root.sequence(&["DP", "UP"])?;
    let device = parse_device(parts[0])?;
    let user = parse_user(parts[1])?;
    Ok((device, user))
}

fn parse_device(dp: &super::tree::Element) -> Result<DeviceProfile, CodecError> {
    dp.no_children()?;
    let id = non_empty("DId", dp.required_attr("DId")?)?.to_owned();
    let max_bandwidth = parse_positive_float("BMax", dp.required_attr("BMax")?)?;
    let video = parse_flag("VE", dp.required_attr("VE")?)?;
    let audio = parse_flag("AE", dp.required_attr("AE")?)?;
    let text = parse_flag("TE", dp.required_attr("TE")?)?;
    let enabled = MediaSet { video, audio, text };
    if enabled.is_empty() {
        return Err(CodecError::schema("DP", "device enables no media kind"));
    }
    Ok(DeviceProfile {
        id,
        max_bandwidth,
        enabled,
    })
}

fn parse_user(up: &super::tree::Element) -> Result<UserProfile, CodecError> {
    let id = non_empty("UId", up.required_attr("UId")?)?.to_owned();
    let desired_skill = up.attr("DesSkill").map(str::to_owned);
    let max_time = parse_positive_float("MaxTime", up.required_attr("MaxTime")?)?;
    let sets = up.sequence(&["AcqSkillSet", "KnownSubjSet"])?;

    let mut acquired_skills = BTreeSet::new();
    for skill in sets[0].children_named("AcqSkill")? {
        let name = non_empty("AcqSkill", &skill.text)?;
        if !acquired_skills.insert(name.to_owned()) {
            return Err(CodecError::schema("AcqSkill", format!("skill {name:?} listed twice")));
        }
    }

    let mut known_subjects = BTreeMap::new();
    for subj in sets[1].children_named("Subj")? {
        subj.no_children()?;
        let sid = non_empty("SubjId", subj.required_attr("SubjId")?)?;
        let name = subj.required_attr("SubjName")?;
        if known_subjects
            .insert(SubjectId::from(sid), name.to_owned())
            .is_some()
        {
            return Err(CodecError::schema("KnownSubjSet", format!("subject {sid} listed twice")));
        }
    }

    if let Some(skill) = &desired_skill {
        if acquired_skills.contains(skill) {
            return Err(CodecError::schema("DesSkill", format!("{skill:?} is already acquired")));
        }
    }

    Ok(UserProfile {
        id,
        desired_skill,
        acquired_skills,
        known_subjects,
        max_time,
    })
}

pub fn serialize_uda_ontology(dp: &DeviceProfile, up: &UserProfile) -> String {
    let mut w = XmlWriter::new();
    w.open("UDAOntology", &[]);
    let bmax = dp.max_bandwidth.to_string();
    w.empty(
        "DP",
        &[
            ("DId", &dp.id),
            ("BMax", &bmax),
            ("VE", flag(dp.enabled.video)),
            ("AE", flag(dp.enabled.audio)),
            ("TE", flag(dp.enabled.text)),
        ],
    );

    let max_time = up.max_time.to_string();
    let mut attrs: Vec<(&str, &str)> = vec![("UId", &up.id)];
    if let Some(skill) = &up.desired_skill {
        attrs.push(("DesSkill", skill));
    }
    attrs.push(("MaxTime", &max_time));
    w.open("UP", &attrs);

    if up.acquired_skills.is_empty() {
        w.empty("AcqSkillSet", &[]);
    } else {
        w.open("AcqSkillSet", &[]);
        for skill in &up.acquired_skills {
            w.leaf("AcqSkill", skill);
        }
        w.close("AcqSkillSet");
    }

    if up.known_subjects.is_empty() {
        w.empty("KnownSubjSet", &[]);
    } else {
        w.open("KnownSubjSet", &[]);
        for (id, name) in &up.known_subjects {
            w.empty("Subj", &[("SubjId", id.as_str()), ("SubjName", name)]);
        }
        w.close("KnownSubjSet");
    }

    w.close("UP");
    w.close("UDAOntology");
    w.finish()
}
