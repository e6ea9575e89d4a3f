//! Benchmark fixtures.

use std::collections::BTreeSet;

use adaptlearn_core::harness::{generate_corpus, generate_population, CorpusSpec, PopulationSpec, Typology};
use adaptlearn_core::model::{Catalog, DeviceProfile, ObjectId, SessionEnvironment, Subject, SubjectId, UserProfile};
use adaptlearn_core::ontology::{AcmlMessage, MessageParameter, ParameterKind};
use adaptlearn_core::sdg::{build_sdg, topological_order, SubjectDependencyGraph};
use adaptlearn_core::solver::{Choice, ChoiceRow, FeasibleChoiceTable};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn default_corpus() -> Catalog {
    generate_corpus(&CorpusSpec::default())
}

pub struct PlanCase {
    pub device: DeviceProfile,
    pub user: UserProfile,
    pub env: SessionEnvironment,
    pub target: SubjectId,
}

/// Default population on a device handling every medium.
pub fn plan_cases(catalog: &Catalog, bandwidth: f64) -> Vec<PlanCase> {
    generate_population(catalog, &PopulationSpec::default())
        .into_iter()
        .map(|u| PlanCase {
            device: Typology::TextAudioVideo.device(bandwidth),
            user: u.profile,
            env: SessionEnvironment::new(bandwidth),
            target: u.target,
        })
        .collect()
}

/// `subjects` subjects in a chain with `options` objects each, durations
/// in 300..=1800 s and a budget of about 60% of the longest program.
pub fn chain_instance(subjects: usize, options: usize, seed: u64) -> (SubjectDependencyGraph, FeasibleChoiceTable, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let id = |i: usize| SubjectId::new(format!("s{i:03}"));
    let list: Vec<Subject> = (0..subjects)
        .map(|i| Subject {
            id: id(i),
            name: String::new(),
            prerequisites: if i == 0 { BTreeSet::new() } else { [id(i - 1)].into() },
            learning_objects: BTreeSet::new(),
        })
        .collect();
    let catalog = Catalog::new(list, vec![], vec![]);
    let sdg = build_sdg(&catalog, &BTreeSet::new(), &id(subjects - 1)).expect("chain target exists");
    let rows = topological_order(&sdg)
        .into_iter()
        .map(|s| {
            let options = (0..options)
                .map(|j| {
                    let duration = rng.random_range(300..=1800u64);
                    let rate = rng.random_range(500..=200_000u64);
                    Choice::new(ObjectId::new(format!("{s}.{j:02}")), rate * duration, duration)
                })
                .collect();
            ChoiceRow { subject: s, options }
        })
        .collect();
    let budget = subjects as f64 * 1800.0 * 0.6;
    (sdg, FeasibleChoiceTable::from_rows(rows), budget)
}

pub fn sample_message() -> AcmlMessage {
    AcmlMessage::new(
        "request",
        vec![
            MessageParameter::new(ParameterKind::Sender, "UDA").with_link("http://example.org/user"),
            MessageParameter::new(ParameterKind::Receiver, "SMA").with_link("http://example.org/catalog"),
            MessageParameter::new(ParameterKind::Ontology, "Ontology of UDA"),
            MessageParameter::new(ParameterKind::Content, "Request of available skills"),
            MessageParameter::new(ParameterKind::ReplyWith, "List of skills"),
        ],
    )
    .expect("valid message")
}
