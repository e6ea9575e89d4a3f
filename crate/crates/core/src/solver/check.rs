//! Re-checks a program against the catalog directly, without going through
//! the feasibility table or rational bitrates.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use super::LearningProgram;
use crate::model::{Catalog, DeviceProfile, ObjectId, SessionEnvironment, SubjectId};
use crate::sdg::SubjectDependencyGraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstraintViolation {
    /// A graph subject without exactly one assigned object.
    Cardinality(SubjectId),
    /// An assigned object that is unknown or belongs to another subject.
    WrongSubject { subject: SubjectId, object: ObjectId },
    Duration { total: u64 },
    Bandwidth(ObjectId),
    Video(ObjectId),
    Audio(ObjectId),
    Text(ObjectId),
    OrderPairs,
}

/// `value = mantissa * 2^exponent` for a finite non-negative float.
fn decompose(value: f64) -> (u64, i32) {
    let bits = value.to_bits();
    let exp_bits = ((bits >> 52) & 0x7ff) as i32;
    let frac = bits & ((1u64 << 52) - 1);
    if exp_bits == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), exp_bits - 1075)
    }
}

/// `size / duration <= bandwidth`, in integers.
fn carries(size: u64, duration: u64, bandwidth: f64) -> bool {
    if !(bandwidth.is_finite() && bandwidth >= 0.0) {
        return bandwidth == f64::INFINITY;
    }
    let (mantissa, exponent) = decompose(bandwidth);
    let mut lhs = BigUint::from(size);
    let mut rhs = BigUint::from(mantissa) * BigUint::from(duration);
    if exponent < 0 {
        lhs <<= (-exponent) as usize;
    } else {
        rhs <<= exponent as usize;
    }
    lhs <= rhs
}

/// Every violated constraint family; empty means the program is valid.
pub fn check_program(
    program: &LearningProgram,
    sdg: &SubjectDependencyGraph,
    catalog: &Catalog,
    device: &DeviceProfile,
    env: &SessionEnvironment,
    max_time: f64,
) -> Vec<ConstraintViolation> {
    let mut out = Vec::new();
    let bandwidth = if device.max_bandwidth < env.network_bandwidth {
        device.max_bandwidth
    } else {
        env.network_bandwidth
    };

    for subject in sdg.nodes() {
        let hits = program.steps().iter().filter(|s| &s.subject == subject).count();
        if hits != 1 {
            out.push(ConstraintViolation::Cardinality(subject.clone()));
        }
    }
    for step in program.steps() {
        if !sdg.nodes().contains(&step.subject) {
            out.push(ConstraintViolation::Cardinality(step.subject.clone()));
        }
    }

    let mut total = 0u64;
    for step in program.steps() {
        let Some(object) = catalog.object(&step.object) else {
            out.push(ConstraintViolation::WrongSubject {
                subject: step.subject.clone(),
                object: step.object.clone(),
            });
            continue;
        };
        if object.subject != step.subject {
            out.push(ConstraintViolation::WrongSubject {
                subject: step.subject.clone(),
                object: step.object.clone(),
            });
        }
        total += object.duration;
        if !carries(object.size, object.duration, bandwidth) {
            out.push(ConstraintViolation::Bandwidth(object.id.clone()));
        }
        if object.media.video && !device.enabled.video {
            out.push(ConstraintViolation::Video(object.id.clone()));
        }
        if object.media.audio && !device.enabled.audio {
            out.push(ConstraintViolation::Audio(object.id.clone()));
        }
        if object.media.text && !device.enabled.text {
            out.push(ConstraintViolation::Text(object.id.clone()));
        }
    }
    if total as f64 > max_time {
        out.push(ConstraintViolation::Duration { total });
    }

    let expected: BTreeSet<(ObjectId, ObjectId)> = sdg
        .arcs()
        .iter()
        .filter_map(|(a, b)| {
            let find = |s: &SubjectId| program.steps().iter().find(|st| &st.subject == s);
            Some((find(a)?.object.clone(), find(b)?.object.clone()))
        })
        .collect();
    if &expected != program.order_pairs() {
        out.push(ConstraintViolation::OrderPairs);
    }
    out
}
