//! Learning program payload, carried as message content.
//!
//! ```text
//! <LearningProgram>
//!     <Step SubjId=".." LObjId=".." LObjSize=".." LObjDuration=".."/>
//!     <Order Before=".." After=".."/>
//! </LearningProgram>
//! ```
//!
//! Steps are in study order. Order elements list object pairs; the subject
//! arcs are recovered through the steps.

use std::collections::BTreeMap;

use super::tree::{parse_document, XmlWriter};
use super::{non_empty, parse_u64, CodecError};
use crate::model::{ObjectId, SubjectId};
use crate::solver::{LearningProgram, ProgramStep};

pub fn encode_program(program: &LearningProgram) -> String {
    let mut w = XmlWriter::new();
    if program.is_empty() {
        w.empty("LearningProgram", &[]);
        return w.finish();
    }
    w.open("LearningProgram", &[]);
    for s in program.steps() {
        let size = s.size.to_string();
        let duration = s.duration.to_string();
        w.empty(
            "Step",
            &[
                ("SubjId", s.subject.as_str()),
                ("LObjId", s.object.as_str()),
                ("LObjSize", &size),
                ("LObjDuration", &duration),
            ],
        );
    }
    for (before, after) in program.order_pairs() {
        w.empty("Order", &[("Before", before.as_str()), ("After", after.as_str())]);
    }
    w.close("LearningProgram");
    w.finish()
}

pub fn decode_program(xml_text: &str) -> Result<LearningProgram, CodecError> {
    let root = parse_document(xml_text)?;
    root.expect_name("LearningProgram")?;

    let mut steps = Vec::new();
    let mut owner: BTreeMap<ObjectId, SubjectId> = BTreeMap::new();
    let mut arcs = Vec::new();
    for el in &root.children {
        el.no_children()?;
        match el.name.as_str() {
            "Step" if arcs.is_empty() => {
                let subject = SubjectId::from(non_empty("SubjId", el.required_attr("SubjId")?)?);
                let object = ObjectId::from(non_empty("LObjId", el.required_attr("LObjId")?)?);
                let size = positive("LObjSize", el.required_attr("LObjSize")?)?;
                let duration = positive("LObjDuration", el.required_attr("LObjDuration")?)?;
                if steps.iter().any(|s: &ProgramStep| s.subject == subject) {
                    return Err(CodecError::schema("SubjId", format!("subject {subject} assigned twice")));
                }
                if owner.insert(object.clone(), subject.clone()).is_some() {
                    return Err(CodecError::schema("LObjId", format!("object {object} assigned twice")));
                }
                steps.push(ProgramStep {
                    subject,
                    object,
                    size,
                    duration,
                });
            }
            "Order" => {
                let end = |attr: &str| -> Result<SubjectId, CodecError> {
                    let id = ObjectId::from(el.required_attr(attr)?);
                    owner
                        .get(&id)
                        .cloned()
                        .ok_or_else(|| CodecError::schema(attr, format!("object {id} is not in a step")))
                };
                arcs.push((end("Before")?, end("After")?));
            }
            other => return Err(CodecError::schema(other, "unexpected element in <LearningProgram>")),
        }
    }
    Ok(LearningProgram::new(steps, arcs.iter()))
}

fn positive(name: &str, value: &str) -> Result<u64, CodecError> {
    match parse_u64(name, value)? {
        0 => Err(CodecError::schema(name, "must be positive")),
        v => Ok(v),
    }
}
