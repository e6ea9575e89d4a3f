use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::model::{Catalog, DeviceProfile, MediaSet, ObjectId, SessionEnvironment, SubjectId, UserProfile};
use crate::solver::{plan_program, Plan, PlanError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Typology {
    TextAudio,
    TextVideo,
    AudioVideo,
    TextAudioVideo,
}

impl Typology {
    pub const ALL: [Typology; 4] = [
        Typology::TextAudio,
        Typology::TextVideo,
        Typology::AudioVideo,
        Typology::TextAudioVideo,
    ];

    pub fn media(self) -> MediaSet {
        match self {
            Typology::TextAudio => MediaSet::new(true, true, false),
            Typology::TextVideo => MediaSet::new(true, false, true),
            Typology::AudioVideo => MediaSet::new(false, true, true),
            Typology::TextAudioVideo => MediaSet::new(true, true, true),
        }
    }

    pub fn slug(self) -> &'static str {
        match self {
            Typology::TextAudio => "text-audio",
            Typology::TextVideo => "text-video",
            Typology::AudioVideo => "audio-video",
            Typology::TextAudioVideo => "text-audio-video",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Typology::TextAudio => "Text and Audio",
            Typology::TextVideo => "Text and Video",
            Typology::AudioVideo => "Audio and Video",
            Typology::TextAudioVideo => "Text, Audio and Video",
        }
    }

    pub fn from_slug(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.slug() == s)
    }

    pub fn device(self, bandwidth: f64) -> DeviceProfile {
        DeviceProfile {
            id: self.slug().to_owned(),
            max_bandwidth: bandwidth,
            enabled: self.media(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Regime {
    Low,
    Medium,
    High,
}

impl Regime {
    pub const ALL: [Regime; 3] = [Regime::Low, Regime::Medium, Regime::High];

    /// Effective bandwidth used for the regime, bytes per second.
    pub fn bandwidth(self) -> f64 {
        match self {
            Regime::Low => 10_000.0,
            Regime::Medium => 55_000.0,
            Regime::High => 150_000.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Regime::Low => "low",
            Regime::Medium => "medium",
            Regime::High => "high",
        }
    }
}

impl std::str::FromStr for Regime {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Self::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| format!("unknown regime {s:?}; expected low, medium or high"))
    }
}

/// `n` evenly spaced points from `step` to `n * step`, in kB/s, as bytes
/// per second.
pub fn sweep_points(step_kb: u32, n: u32) -> Vec<f64> {
    (1..=n).map(|i| f64::from(i * step_kb) * 1000.0).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct PopulationSpec {
    pub seed: u64,
    pub users: usize,
    /// Chance that each subject is already known.
    pub p_known: f64,
    /// Seconds, inclusive.
    pub max_time: (u64, u64),
}

impl Default for PopulationSpec {
    fn default() -> Self {
        Self {
            seed: 7,
            users: 50,
            p_known: 0.3,
            max_time: (14_400, 43_200),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticUser {
    pub profile: UserProfile,
    pub target: SubjectId,
}

/// Each user knows every subject independently with `p_known` and targets
/// a uniformly drawn unknown subject. Users who know everything are not
/// generated.
pub fn generate_population(catalog: &Catalog, spec: &PopulationSpec) -> Vec<SyntheticUser> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut users = Vec::with_capacity(spec.users);
    for u in 0..spec.users {
        let mut profile = UserProfile::new(format!("user{u:03}"), 0.0);
        let mut unknown = Vec::new();
        for s in catalog.subjects() {
            if rng.random_bool(spec.p_known) {
                profile.known_subjects.insert(s.id.clone(), s.name.clone());
            } else {
                unknown.push(s.id.clone());
            }
        }
        profile.max_time = rng.random_range(spec.max_time.0..=spec.max_time.1) as f64;
        if unknown.is_empty() {
            continue;
        }
        let target = unknown.swap_remove(rng.random_range(0..unknown.len()));
        users.push(SyntheticUser { profile, target });
    }
    users
}

/// Plan for every user on one device, in user order.
pub fn solve_population(
    catalog: &Catalog,
    users: &[SyntheticUser],
    device: &DeviceProfile,
    env: &SessionEnvironment,
) -> Vec<Result<Plan, PlanError>> {
    users
        .par_iter()
        .map(|u| plan_program(catalog, device, &u.profile, env, &u.target))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectionFractionRow {
    pub typology: Typology,
    pub bandwidth: u64,
    pub n_selected: usize,
    pub n_text: usize,
    pub n_audio: usize,
    pub n_video: usize,
    pub n_users: usize,
    /// Users whose plan was infeasible.
    pub n_skipped: usize,
}

impl SelectionFractionRow {
    fn fraction(&self, n: usize) -> f64 {
        if self.n_selected == 0 {
            0.0
        } else {
            n as f64 / self.n_selected as f64
        }
    }

    pub fn frac_text(&self) -> f64 {
        self.fraction(self.n_text)
    }

    pub fn frac_audio(&self) -> f64 {
        self.fraction(self.n_audio)
    }

    pub fn frac_video(&self) -> f64 {
        self.fraction(self.n_video)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SelectionFractionReport {
    pub rows: Vec<SelectionFractionRow>,
}

pub const CSV_HEADER: &str = "typology,bandwidth_bytes_per_s,frac_text,frac_audio,frac_video,n_selected";

impl SelectionFractionReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{:.4},{:.4},{:.4},{}",
                r.typology.slug(),
                r.bandwidth,
                r.frac_text(),
                r.frac_audio(),
                r.frac_video(),
                r.n_selected
            );
        }
        out
    }

    pub fn row(&self, typology: Typology, bandwidth: u64) -> Option<&SelectionFractionRow> {
        self.rows
            .iter()
            .find(|r| r.typology == typology && r.bandwidth == bandwidth)
    }
}

/// One row per typology, fractions with two decimals.
impl fmt::Display for SelectionFractionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<24}{:>12}{:>8}{:>8}{:>8}{:>10}{:>8}", "Device", "bytes/s", "Text", "Audio", "Video", "selected", "skipped")?;
        for r in &self.rows {
            writeln!(
                f,
                "{:<24}{:>12}{:>8.2}{:>8.2}{:>8.2}{:>10}{:>8}",
                r.typology.label(),
                r.bandwidth,
                r.frac_text(),
                r.frac_audio(),
                r.frac_video(),
                r.n_selected,
                r.n_skipped
            )?;
        }
        Ok(())
    }
}

fn cell(catalog: &Catalog, users: &[SyntheticUser], typology: Typology, bandwidth: f64) -> SelectionFractionRow {
    let device = typology.device(bandwidth);
    let env = SessionEnvironment::new(bandwidth);
    let mut selected: BTreeSet<ObjectId> = BTreeSet::new();
    let mut skipped = 0;
    for result in solve_population(catalog, users, &device, &env) {
        match result {
            Ok(plan) => selected.extend(plan.program.steps().iter().map(|s| s.object.clone())),
            Err(_) => skipped += 1,
        }
    }
    let count = |pick: fn(&MediaSet) -> bool| {
        selected
            .iter()
            .filter(|id| catalog.object(id).is_some_and(|o| pick(&o.media)))
            .count()
    };
    SelectionFractionRow {
        typology,
        bandwidth: bandwidth as u64,
        n_selected: selected.len(),
        n_text: count(|m| m.text),
        n_audio: count(|m| m.audio),
        n_video: count(|m| m.video),
        n_users: users.len(),
        n_skipped: skipped,
    }
}

pub fn run_device_matrix(catalog: &Catalog, regime: Regime) -> SelectionFractionReport {
    let users = generate_population(catalog, &PopulationSpec::default());
    run_device_matrix_with(catalog, &users, regime.bandwidth())
}

/// Every typology at one effective bandwidth.
pub fn run_device_matrix_with(catalog: &Catalog, users: &[SyntheticUser], bandwidth: f64) -> SelectionFractionReport {
    SelectionFractionReport {
        rows: Typology::ALL
            .into_iter()
            .map(|t| cell(catalog, users, t, bandwidth))
            .collect(),
    }
}

pub fn run_bandwidth_sweep(catalog: &Catalog, points: &[f64]) -> SelectionFractionReport {
    let users = generate_population(catalog, &PopulationSpec::default());
    run_bandwidth_sweep_with(catalog, &users, points, Typology::TextAudioVideo)
}

pub fn run_bandwidth_sweep_with(
    catalog: &Catalog,
    users: &[SyntheticUser],
    points: &[f64],
    typology: Typology,
) -> SelectionFractionReport {
    SelectionFractionReport {
        rows: points.iter().map(|&b| cell(catalog, users, typology, b)).collect(),
    }
}
