mod common;

use std::collections::BTreeSet;

use adaptlearn_core::model::{
    Catalog, DeviceProfile, LearningObject, MediaSet, ObjectId, SessionEnvironment, Skill, Subject, SubjectId,
    UserProfile,
};
use adaptlearn_core::ontology::{decode_acml, encode_acml};
use adaptlearn_core::session::{
    replay, run_session, FirstChoicePolicy, Phase, ScriptedPolicy, SessionEngine, SessionError, SessionEvent,
    SessionState, SessionStatus, LPA,
};
use adaptlearn_core::solver::InfeasibilityDiagnosis;
use proptest::prelude::*;
use rand::Rng;

/// Skill "S" over subjects [A, B], A a prerequisite of B, two objects each.
fn two_subjects() -> Catalog {
    let mut objects = Vec::new();
    let mut subjects = Vec::new();
    for (id, prereqs) in [("A", vec![]), ("B", vec!["A"])] {
        let mut refs = BTreeSet::new();
        for (k, rate) in [("t", 10u64), ("v", 1000)] {
            let oid = ObjectId::new(format!("{id}-{k}"));
            refs.insert(oid.clone());
            objects.push(LearningObject {
                id: oid.clone(),
                name: oid.to_string(),
                subject: id.into(),
                location: format!("lor://{oid}"),
                media: if k == "t" { MediaSet::new(true, false, false) } else { MediaSet::new(false, false, true) },
                size: rate * 600,
                duration: 600,
            });
        }
        subjects.push(Subject {
            id: id.into(),
            name: format!("Subject {id}"),
            prerequisites: prereqs.into_iter().map(SubjectId::from).collect(),
            learning_objects: refs,
        });
    }
    let skills = vec![Skill {
        name: "S".into(),
        subject_list: vec!["A".into(), "B".into()],
    }];
    Catalog::new(subjects, objects, skills)
}

fn device() -> DeviceProfile {
    DeviceProfile {
        id: "d".into(),
        max_bandwidth: 5000.0,
        enabled: MediaSet::new(true, true, true),
    }
}

fn env() -> SessionEnvironment {
    SessionEnvironment::new(5000.0)
}

fn user() -> UserProfile {
    UserProfile::new("u", 7200.0)
}

fn ids(items: &[&str]) -> BTreeSet<SubjectId> {
    items.iter().map(|s| SubjectId::from(*s)).collect()
}

#[test]
fn skill_with_prerequisite_chain() {
    let c = two_subjects();
    let out = run_session(&c, &device(), &user(), &env(), &mut FirstChoicePolicy::new(None)).unwrap();
    assert_eq!(out.status, SessionStatus::Completed);
    assert!(out.profile().known_ids().is_superset(&ids(&["A", "B"])));
    assert!(out.profile().acquired_skills.contains("S"));
    assert_eq!(out.profile().desired_skill, None);
    assert!(out.transcript().iter().any(|m| m.content() == Some("Request of available skills")));
    // known subjects carry catalog names
    assert_eq!(out.profile().known_subjects[&SubjectId::from("A")], "Subject A");
}

#[test]
fn known_skill_subjects_acquire_without_planning() {
    let c = two_subjects();
    let mut u = user();
    u.desired_skill = Some("S".into());
    u.known_subjects.insert("A".into(), "Subject A".into());
    u.known_subjects.insert("B".into(), "Subject B".into());
    let out = run_session(&c, &device(), &u, &env(), &mut FirstChoicePolicy::new(None)).unwrap();
    assert_eq!(out.status, SessionStatus::Completed);
    assert!(out.profile().acquired_skills.contains("S"));
    assert!(out.transcript().iter().all(|m| m.sender() != LPA && m.receiver() != LPA));
    assert_eq!(out.transcript().len(), 2);
}

#[test]
fn stop_after_first_program_then_resume() {
    let c = two_subjects();
    let full = run_session(&c, &device(), &user(), &env(), &mut FirstChoicePolicy::new(None)).unwrap();

    let cut = run_session(&c, &device(), &user(), &env(), &mut FirstChoicePolicy::new(Some(1))).unwrap();
    assert_eq!(cut.status, SessionStatus::Interrupted);
    assert_eq!(cut.profile().desired_skill.as_deref(), Some("S"));
    // the first offered subject is A, whose program is A alone
    assert_eq!(cut.profile().known_ids(), ids(&["A"]));

    let resumed = run_session(&c, &device(), cut.profile(), &env(), &mut FirstChoicePolicy::new(None)).unwrap();
    assert_eq!(resumed.status, SessionStatus::Completed);
    assert_eq!(resumed.profile(), full.profile());
}

#[test]
fn scripted_choices() {
    let c = two_subjects();
    let mut policy = ScriptedPolicy::parse("skill S\nsubject B\n").unwrap();
    let out = run_session(&c, &device(), &user(), &env(), &mut policy).unwrap();
    // B's program covers A then B, so the skill completes in one program
    assert_eq!(out.status, SessionStatus::Completed);
    assert!(out.profile().acquired_skills.contains("S"));
    let studied: Vec<&SessionEvent> = out.events.iter().filter(|e| **e == SessionEvent::Complete).collect();
    assert_eq!(studied.len(), 2);
}

#[test]
fn infeasible_program_halts_with_diagnosis() {
    let c = two_subjects();
    let slow = SessionEnvironment::new(1.0);
    let out = run_session(&c, &device(), &user(), &slow, &mut FirstChoicePolicy::new(None)).unwrap();
    assert_eq!(out.status, SessionStatus::Infeasible(InfeasibilityDiagnosis::NoFeasibleObject("A".into())));
    assert!(matches!(out.state.phase, Phase::SubjectSelection { .. }));
    assert_eq!(out.transcript().last().unwrap().message_type(), "failure");
    assert!(out.profile().known_subjects.is_empty());
}

#[test]
fn invalid_events_and_choices() {
    let c = two_subjects();
    let engine = SessionEngine::new(&c);
    let idle = SessionState::new(device(), user(), env());
    assert!(matches!(engine.step(idle.clone(), &SessionEvent::Complete), Err(SessionError::InvalidEvent { .. })));
    assert!(matches!(engine.step(idle.clone(), &SessionEvent::Stop), Err(SessionError::InvalidEvent { .. })));

    let choosing = engine.step(idle, &SessionEvent::Start).unwrap();
    assert_eq!(choosing.phase, Phase::SkillSelection { offered: vec!["S".into()] });
    assert_eq!(
        engine.step(choosing.clone(), &SessionEvent::ChooseSkill("Nope".into())),
        Err(SessionError::InvalidChoice("Nope".into()))
    );
    let subjects = engine.step(choosing, &SessionEvent::ChooseSkill("S".into())).unwrap();
    assert!(matches!(
        engine.step(subjects.clone(), &SessionEvent::ChooseSubject("Z".into())),
        Err(SessionError::InvalidChoice(_))
    ));
    let studying = engine.step(subjects, &SessionEvent::ChooseSubject("B".into())).unwrap();
    let Phase::Studying { program, cursor: 0 } = &studying.phase else { panic!("{:?}", studying.phase) };
    assert_eq!(program.steps().len(), 2);
    let after_one = engine.step(studying, &SessionEvent::Complete).unwrap();
    assert!(matches!(after_one.phase, Phase::Studying { cursor: 1, .. }));
    let done = engine.step(after_one, &SessionEvent::Complete).unwrap();
    assert_eq!(done.phase, Phase::Finished { interrupted: false });
}

fn random_setup(seed: u64) -> (Catalog, DeviceProfile, SessionEnvironment, UserProfile) {
    let mut r = common::rng(seed);
    let catalog = common::random_catalog_sized(&mut r, 1..=7, 3, 100);
    let device = DeviceProfile {
        id: "d".into(),
        max_bandwidth: 1e6,
        enabled: MediaSet::new(true, r.random_bool(0.5), r.random_bool(0.5)),
    };
    let env = SessionEnvironment::new(r.random_range(20.0..400.0));
    let mut user = UserProfile::new("u", r.random_range(100.0..3000.0));
    for s in catalog.subjects() {
        if r.random_bool(0.2) {
            user.known_subjects.insert(s.id.clone(), s.name.clone());
        }
    }
    (catalog, device, env, user)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn profile_only_grows_and_learning_is_sound(seed in any::<u64>()) {
        let (c, d, e, u) = random_setup(seed);
        let out = run_session(&c, &d, &u, &e, &mut FirstChoicePolicy::new(None)).unwrap();
        let engine = SessionEngine::new(&c);
        let mut state = SessionState::new(d, u, e);
        for event in &out.events {
            let next = engine.step(state.clone(), event).unwrap();
            prop_assert!(next.user.known_ids().is_superset(&state.user.known_ids()));
            prop_assert!(next.user.acquired_skills.is_superset(&state.user.acquired_skills));
            prop_assert!(next.transcript.starts_with(&state.transcript));
            for new in next.user.known_ids().difference(&state.user.known_ids()) {
                let prereqs = &c.subject(new).unwrap().prerequisites;
                prop_assert!(prereqs.iter().all(|p| state.user.knows(p)), "{} learned too early", new);
            }
            state = next;
        }
        prop_assert_eq!(&state, &out.state);
    }

    #[test]
    fn transcripts_round_trip_and_alternate(seed in any::<u64>()) {
        let (c, d, e, u) = random_setup(seed);
        let out = run_session(&c, &d, &u, &e, &mut FirstChoicePolicy::new(None)).unwrap();
        prop_assert_eq!(out.transcript().len() % 2, 0);
        for pair in out.transcript().chunks(2) {
            prop_assert_eq!(pair[0].message_type(), "request");
            prop_assert_eq!(pair[1].receiver(), pair[0].sender());
        }
        for m in out.transcript() {
            prop_assert_eq!(decode_acml(&encode_acml(m)), Ok(m.clone()));
        }
    }

    #[test]
    fn sessions_are_deterministic_and_replayable(seed in any::<u64>(), stop in 1usize..3) {
        let (c, d, e, u) = random_setup(seed);
        let a = run_session(&c, &d, &u, &e, &mut FirstChoicePolicy::new(Some(stop))).unwrap();
        let b = run_session(&c, &d, &u, &e, &mut FirstChoicePolicy::new(Some(stop))).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(replay(&c, &d, &u, &e, &a.events).unwrap(), a.state);
    }
}
