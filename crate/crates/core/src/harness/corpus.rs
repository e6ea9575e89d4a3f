use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{Catalog, LearningObject, MediaSet, ObjectId, Skill, Subject, SubjectId};

/// Parameters of a synthetic catalog.
///
/// Every subject draws one rate per media kind from the matching range.
/// An object's bitrate is the sum of the rates of the components it
/// carries, so within a subject a richer object always needs more
/// bandwidth. With the default ranges, text-only objects need 0.5-5 kB/s,
/// audio-bearing ones 8-40 kB/s and video-bearing ones 15-200 kB/s.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusSpec {
    pub seed: u64,
    pub n_subjects: usize,
    pub objects_per_subject: usize,
    pub p_text: f64,
    pub p_audio: f64,
    pub p_video: f64,
    /// Bytes per second contributed by each component, inclusive.
    pub text_rate: (u64, u64),
    pub audio_rate: (u64, u64),
    pub video_rate: (u64, u64),
    /// Seconds, inclusive.
    pub duration: (u64, u64),
    /// Subjects are split into this many layers; prerequisites come from
    /// earlier layers only.
    pub layers: usize,
    pub max_prerequisites: usize,
    pub n_skills: usize,
    /// Make the first object of every subject text-only, so each subject
    /// can be studied at any bandwidth above the text rate.
    pub text_baseline: bool,
}

pub const DEFAULT_SEED: u64 = 20_050_101;

impl Default for CorpusSpec {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            n_subjects: 80,
            objects_per_subject: 25,
            p_text: 0.72,
            p_audio: 0.72,
            p_video: 0.72,
            text_rate: (500, 5_000),
            audio_rate: (8_000, 35_000),
            video_rate: (15_000, 160_000),
            duration: (300, 1_800),
            layers: 6,
            max_prerequisites: 3,
            n_skills: 6,
            text_baseline: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid corpus spec: {0}")]
pub struct CorpusSpecError(pub String);

impl CorpusSpec {
    pub fn check(&self) -> Result<(), CorpusSpecError> {
        let err = |m: &str| Err(CorpusSpecError(m.to_owned()));
        for (name, p) in [("p_text", self.p_text), ("p_audio", self.p_audio), ("p_video", self.p_video)] {
            if !(0.0..=1.0).contains(&p) {
                return err(&format!("{name} must lie in [0, 1]"));
            }
        }
        if self.p_text + self.p_audio + self.p_video == 0.0 {
            return err("at least one component probability must be positive");
        }
        for (name, (lo, hi)) in [
            ("text_rate", self.text_rate),
            ("audio_rate", self.audio_rate),
            ("video_rate", self.video_rate),
            ("duration", self.duration),
        ] {
            if lo == 0 || lo > hi {
                return err(&format!("{name} must be a non-empty range of positive values"));
            }
        }
        if self.n_subjects == 0 || self.objects_per_subject == 0 || self.layers == 0 {
            return err("subject, object and layer counts must be positive");
        }
        if self.max_prerequisites == 0 && self.layers > 1 {
            return err("max_prerequisites must be positive when there are several layers");
        }
        Ok(())
    }
}

pub fn subject_id(index: usize) -> SubjectId {
    SubjectId::new(format!("S{index:03}"))
}

/// Deterministic in `spec`. Panics on an invalid spec; call
/// [`CorpusSpec::check`] first for untrusted input.
pub fn generate_corpus(spec: &CorpusSpec) -> Catalog {
    spec.check().expect("valid corpus spec");
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.n_subjects;
    let layer_of = |s: usize| s * spec.layers / n;
    let forced: Vec<usize> = [spec.p_text, spec.p_audio, spec.p_video]
        .iter()
        .enumerate()
        .filter(|(_, p)| **p > 0.0)
        .map(|(i, _)| i)
        .collect();

    // rescale the other objects so the overall component fractions still
    // match the spec probabilities
    let baseline = spec.text_baseline && spec.p_text > 0.0;
    let k = spec.objects_per_subject as f64;
    let probs = if baseline && spec.objects_per_subject > 1 {
        [
            ((spec.p_text * k - 1.0) / (k - 1.0)).clamp(0.0, 1.0),
            (spec.p_audio * k / (k - 1.0)).min(1.0),
            (spec.p_video * k / (k - 1.0)).min(1.0),
        ]
    } else {
        [spec.p_text, spec.p_audio, spec.p_video]
    };

    let mut subjects = Vec::with_capacity(n);
    let mut objects = Vec::with_capacity(n * spec.objects_per_subject);
    for s in 0..n {
        let id = subject_id(s);
        let earlier = (0..s).take_while(|&t| layer_of(t) < layer_of(s)).count();
        let prerequisites = if earlier == 0 {
            Default::default()
        } else {
            let k = rng.random_range(1..=spec.max_prerequisites.min(earlier));
            sample(&mut rng, earlier, k).into_iter().map(subject_id).collect()
        };

        let rates = [
            rng.random_range(spec.text_rate.0..=spec.text_rate.1),
            rng.random_range(spec.audio_rate.0..=spec.audio_rate.1),
            rng.random_range(spec.video_rate.0..=spec.video_rate.1),
        ];
        let mut learning_objects = std::collections::BTreeSet::new();
        for j in 0..spec.objects_per_subject {
            let mut present = [
                rng.random_bool(probs[0]),
                rng.random_bool(probs[1]),
                rng.random_bool(probs[2]),
            ];
            if j == 0 && baseline {
                present = [true, false, false];
            } else if !present.iter().any(|&b| b) {
                present[forced[rng.random_range(0..forced.len())]] = true;
            }
            let rate: u64 = rates.iter().zip(present).filter(|(_, p)| *p).map(|(r, _)| r).sum();
            let duration = rng.random_range(spec.duration.0..=spec.duration.1);
            let oid = ObjectId::new(format!("{id}.{j:02}"));
            learning_objects.insert(oid.clone());
            objects.push(LearningObject {
                name: format!("Object {j} of subject {s}"),
                location: format!("lor://objects/{oid}"),
                id: oid,
                subject: id.clone(),
                media: MediaSet::new(present[0], present[1], present[2]),
                size: rate * duration,
                duration,
            });
        }
        subjects.push(Subject {
            name: format!("Subject {s}"),
            id,
            prerequisites,
            learning_objects,
        });
    }

    // ids sort like indices and prerequisites point to lower indices, so a
    // sorted list is in prerequisite order
    let skills = (0..spec.n_skills)
        .map(|k| {
            let size = rng.random_range(2..=5usize).min(n);
            let mut members = sample(&mut rng, n, size).into_vec();
            members.sort_unstable();
            Skill {
                name: format!("Skill {k}"),
                subject_list: members.into_iter().map(subject_id).collect(),
            }
        })
        .collect();

    Catalog::new(subjects, objects, skills)
}
