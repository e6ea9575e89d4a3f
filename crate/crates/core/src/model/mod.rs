//! Catalog and profile types.
//!
//! Everything here is plain immutable data. Sizes are whole bytes and
//! durations whole seconds, so the solver never has to reason about
//! fractional time. Bandwidths are bytes per second.

mod validate;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use validate::{validate_catalog, ValidationReport, Violation};

macro_rules! string_id {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(String);

        impl $name {
            pub fn new(id: impl Into<String>) -> Self {
                Self(id.into())
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                Self(s.to_owned())
            }
        }

        impl From<String> for $name {
            fn from(s: String) -> Self {
                Self(s)
            }
        }
    };
}

string_id!(
    /// Identifier of a subject.
    SubjectId
);
string_id!(
    /// Identifier of a learning object.
    ObjectId
);

/// Media kinds a learning object may carry and a device may render.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MediaSet {
    pub video: bool,
    pub audio: bool,
    pub text: bool,
}

impl MediaSet {
    pub const fn new(text: bool, audio: bool, video: bool) -> Self {
        Self { video, audio, text }
    }

    pub fn is_empty(&self) -> bool {
        !(self.video || self.audio || self.text)
    }

    /// True when every component present in `self` is also present in `caps`.
    pub fn fits(&self, caps: &MediaSet) -> bool {
        (!self.video || caps.video) && (!self.audio || caps.audio) && (!self.text || caps.text)
    }
}

/// An ability a user wants to achieve, made of an ordered list of subjects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skill {
    pub name: String,
    pub subject_list: Vec<SubjectId>,
}

/// A topic node. A subject with no prerequisites is basic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subject {
    pub id: SubjectId,
    pub name: String,
    pub prerequisites: BTreeSet<SubjectId>,
    pub learning_objects: BTreeSet<ObjectId>,
}

impl Subject {
    pub fn is_basic(&self) -> bool {
        self.prerequisites.is_empty()
    }
}

/// Descriptor of one learning object. Content bytes are not modeled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LearningObject {
    pub id: ObjectId,
    pub name: String,
    pub subject: SubjectId,
    pub location: String,
    pub media: MediaSet,
    /// Bytes.
    pub size: u64,
    /// Seconds of playback.
    pub duration: u64,
}

impl LearningObject {
    /// Required bandwidth, `size / duration`, as an exact rational.
    ///
    /// Panics if `duration` is zero; catalogs that pass validation never
    /// contain such objects.
    pub fn bitrate(&self) -> BigRational {
        BigRational::new(BigInt::from(self.size), BigInt::from(self.duration))
    }

    /// Bitrate in bytes per second, for reporting only.
    pub fn bitrate_f64(&self) -> f64 {
        self.size as f64 / self.duration as f64
    }
}

/// Capabilities of the device a user studies on.
#[derive(Debug, Clone, PartialEq)]
pub struct DeviceProfile {
    pub id: String,
    /// Bytes per second the device can guarantee.
    pub max_bandwidth: f64,
    pub enabled: MediaSet,
}

/// Learner state.
#[derive(Debug, Clone, PartialEq)]
pub struct UserProfile {
    pub id: String,
    pub desired_skill: Option<String>,
    pub acquired_skills: BTreeSet<String>,
    /// Known subjects keyed by id, with the name the profile recorded.
    pub known_subjects: BTreeMap<SubjectId, String>,
    /// Seconds the user can spend on one learning program.
    pub max_time: f64,
}

impl UserProfile {
    pub fn new(id: impl Into<String>, max_time: f64) -> Self {
        Self {
            id: id.into(),
            desired_skill: None,
            acquired_skills: BTreeSet::new(),
            known_subjects: BTreeMap::new(),
            max_time,
        }
    }

    pub fn knows(&self, subject: &SubjectId) -> bool {
        self.known_subjects.contains_key(subject)
    }

    pub fn known_ids(&self) -> BTreeSet<SubjectId> {
        self.known_subjects.keys().cloned().collect()
    }
}

/// Conditions of the network a session runs over.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SessionEnvironment {
    /// Bytes per second available on the network for this user.
    pub network_bandwidth: f64,
}

impl SessionEnvironment {
    pub fn new(network_bandwidth: f64) -> Self {
        Self { network_bandwidth }
    }
}

/// Bandwidth an object may require on this device and network:
/// `min(device max, network)`.
pub fn effective_bandwidth(device: &DeviceProfile, env: &SessionEnvironment) -> f64 {
    device.max_bandwidth.min(env.network_bandwidth)
}

/// Problems with a profile value itself.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProfileError {
    #[error("device {0}: maximum bandwidth must be positive and finite")]
    DeviceBandwidth(String),
    #[error("device {0}: no media kind enabled")]
    DeviceMedia(String),
    #[error("user {0}: maximum time must be positive and finite")]
    UserMaxTime(String),
    #[error("user {0}: desired skill {1:?} is already acquired")]
    DesiredAlreadyAcquired(String, String),
    #[error("network bandwidth must be positive and finite")]
    NetworkBandwidth,
}

impl DeviceProfile {
    pub fn check(&self) -> Result<(), ProfileError> {
        if !(self.max_bandwidth.is_finite() && self.max_bandwidth > 0.0) {
            return Err(ProfileError::DeviceBandwidth(self.id.clone()));
        }
        if self.enabled.is_empty() {
            return Err(ProfileError::DeviceMedia(self.id.clone()));
        }
        Ok(())
    }
}

impl UserProfile {
    pub fn check(&self) -> Result<(), ProfileError> {
        if !(self.max_time.is_finite() && self.max_time > 0.0) {
            return Err(ProfileError::UserMaxTime(self.id.clone()));
        }
        if let Some(skill) = &self.desired_skill {
            if self.acquired_skills.contains(skill) {
                return Err(ProfileError::DesiredAlreadyAcquired(
                    self.id.clone(),
                    skill.clone(),
                ));
            }
        }
        Ok(())
    }
}

impl SessionEnvironment {
    pub fn check(&self) -> Result<(), ProfileError> {
        if self.network_bandwidth.is_finite() && self.network_bandwidth > 0.0 {
            Ok(())
        } else {
            Err(ProfileError::NetworkBandwidth)
        }
    }
}

/// Subjects, learning objects and skills, stored in document order.
///
/// Lookups resolve to the first occurrence of an id; duplicates are left in
/// place so that [`validate_catalog`] can report them.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Catalog {
    subjects: Vec<Subject>,
    objects: Vec<LearningObject>,
    skills: Vec<Skill>,
    subject_index: BTreeMap<SubjectId, usize>,
    object_index: BTreeMap<ObjectId, usize>,
}

impl Catalog {
    pub fn new(subjects: Vec<Subject>, objects: Vec<LearningObject>, skills: Vec<Skill>) -> Self {
        let mut subject_index = BTreeMap::new();
        for (i, s) in subjects.iter().enumerate() {
            subject_index.entry(s.id.clone()).or_insert(i);
        }
        let mut object_index = BTreeMap::new();
        for (i, o) in objects.iter().enumerate() {
            object_index.entry(o.id.clone()).or_insert(i);
        }
        Self {
            subjects,
            objects,
            skills,
            subject_index,
            object_index,
        }
    }

    pub fn subjects(&self) -> &[Subject] {
        &self.subjects
    }

    pub fn objects(&self) -> &[LearningObject] {
        &self.objects
    }

    pub fn skills(&self) -> &[Skill] {
        &self.skills
    }

    pub fn subject(&self, id: &SubjectId) -> Option<&Subject> {
        self.subject_index.get(id).map(|&i| &self.subjects[i])
    }

    pub fn object(&self, id: &ObjectId) -> Option<&LearningObject> {
        self.object_index.get(id).map(|&i| &self.objects[i])
    }

    pub fn skill(&self, name: &str) -> Option<&Skill> {
        self.skills.iter().find(|s| s.name == name)
    }

    pub fn is_empty(&self) -> bool {
        self.subjects.is_empty() && self.objects.is_empty() && self.skills.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn media_fit_is_componentwise() {
        let text_audio = MediaSet::new(true, true, false);
        assert!(MediaSet::new(true, false, false).fits(&text_audio));
        assert!(MediaSet::new(true, true, false).fits(&text_audio));
        assert!(!MediaSet::new(false, false, true).fits(&text_audio));
        assert!(MediaSet::default().is_empty());
    }

    #[test]
    fn bitrate_is_exact() {
        let o = LearningObject {
            id: "o".into(),
            name: "o".into(),
            subject: "s".into(),
            location: "http://x".into(),
            media: MediaSet::new(true, false, false),
            size: 40_000,
            duration: 600,
        };
        assert_eq!(o.bitrate(), BigRational::new(200.into(), 3.into()));
        assert!((o.bitrate_f64() - 66.666_666).abs() < 1e-3);
    }

    #[test]
    fn profile_checks() {
        let mut up = UserProfile::new("u", 10.0);
        assert!(up.check().is_ok());
        up.desired_skill = Some("S".into());
        up.acquired_skills.insert("S".into());
        assert!(matches!(up.check(), Err(ProfileError::DesiredAlreadyAcquired(..))));
        let dp = DeviceProfile {
            id: "d".into(),
            max_bandwidth: 0.0,
            enabled: MediaSet::new(true, false, false),
        };
        assert_eq!(dp.check(), Err(ProfileError::DeviceBandwidth("d".into())));
        assert!(SessionEnvironment::new(f64::NAN).check().is_err());
    }
}
