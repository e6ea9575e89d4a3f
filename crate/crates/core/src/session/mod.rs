//! Learning sessions between the user-device agent (UDA), the skill
//! manager (SMA) and the learning program agent (LPA).
//!
//! [`SessionEngine::step`] is the transition function. Each transition that
//! needs another agent performs a request/reply exchange through the
//! mailbox, which round-trips both messages through the XML envelope and
//! appends them to the transcript. [`run_session`] drives `step` with a
//! [`UserPolicy`] and records the events it applied, so [`replay`] can
//! rebuild the same final state.
//!
//! Only the profile carries over between sessions. A session started with a
//! desired skill already set goes straight to subject selection and asks for
//! a fresh program.

mod mailbox;
mod policy;

use std::fmt;

pub use mailbox::{MailboxError, LPA, SMA, UDA};
pub use policy::{Decision, FirstChoicePolicy, ScriptError, ScriptLine, ScriptedPolicy, UserPolicy};

use mailbox::{exchange, message, LPA_ONTOLOGY, SMA_ONTOLOGY, UDA_ONTOLOGY};

use crate::model::{Catalog, DeviceProfile, SessionEnvironment, SubjectId, UserProfile};
use crate::ontology::{decode_program, encode_program, AcmlMessage, ParameterKind};
use crate::skills::{available_skills, decode_skill_set, decode_subject_set, encode_skill_set, encode_subject_set, remaining_subjects};
use crate::solver::{plan_program, InfeasibilityDiagnosis, LearningProgram, PlanError};

pub const SKILLS_REQUEST: &str = "Request of available skills";
pub const SKILLS_TAG: &str = "List of skills";
pub const SUBJECTS_TAG: &str = "List of subjects";
pub const PROGRAM_TAG: &str = "Learning program";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Phase {
    Idle,
    SkillSelection { offered: Vec<String> },
    SubjectSelection { offered: Vec<SubjectId> },
    Studying { program: LearningProgram, cursor: usize },
    Finished { interrupted: bool },
}

impl Phase {
    fn name(&self) -> &'static str {
        match self {
            Phase::Idle => "idle",
            Phase::SkillSelection { .. } => "skill-selection",
            Phase::SubjectSelection { .. } => "subject-selection",
            Phase::Studying { .. } => "studying",
            Phase::Finished { .. } => "finished",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SessionEvent {
    Start,
    ChooseSkill(String),
    ChooseSubject(SubjectId),
    /// The learner finished the current object.
    Complete,
    Stop,
}

impl fmt::Display for SessionEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SessionEvent::Start => f.write_str("start"),
            SessionEvent::ChooseSkill(s) => write!(f, "choose skill {s}"),
            SessionEvent::ChooseSubject(s) => write!(f, "choose subject {s}"),
            SessionEvent::Complete => f.write_str("complete"),
            SessionEvent::Stop => f.write_str("stop"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SessionError {
    #[error("event `{event}` is not valid in phase {phase}")]
    InvalidEvent { phase: &'static str, event: String },
    #[error("choice {0:?} was not offered")]
    InvalidChoice(String),
    #[error(transparent)]
    Mailbox(#[from] MailboxError),
    #[error("plan request failed: {0}")]
    Plan(PlanError),
    #[error("unexpected reply: {0}")]
    Protocol(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SessionState {
    pub phase: Phase,
    pub device: DeviceProfile,
    pub user: UserProfile,
    pub env: SessionEnvironment,
    pub transcript: Vec<AcmlMessage>,
    /// Set when the last program request could not be satisfied.
    pub diagnosis: Option<InfeasibilityDiagnosis>,
}

impl SessionState {
    pub fn new(device: DeviceProfile, user: UserProfile, env: SessionEnvironment) -> Self {
        Self {
            phase: Phase::Idle,
            device,
            user,
            env,
            transcript: Vec::new(),
            diagnosis: None,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SessionEngine<'c> {
    pub catalog: &'c Catalog,
}

impl<'c> SessionEngine<'c> {
    pub fn new(catalog: &'c Catalog) -> Self {
        Self { catalog }
    }

    pub fn step(&self, mut state: SessionState, event: &SessionEvent) -> Result<SessionState, SessionError> {
        let invalid = |state: &SessionState| SessionError::InvalidEvent {
            phase: state.phase.name(),
            event: event.to_string(),
        };
        match (&state.phase, event) {
            (Phase::Idle, SessionEvent::Start) => {
                if state.user.desired_skill.is_some() {
                    self.ask_subjects(&mut state)?;
                } else {
                    let offered = self.ask_skills(&mut state)?;
                    state.phase = if offered.is_empty() {
                        Phase::Finished { interrupted: false }
                    } else {
                        Phase::SkillSelection { offered }
                    };
                }
            }
            (Phase::SkillSelection { offered }, SessionEvent::ChooseSkill(skill)) => {
                if !offered.contains(skill) {
                    return Err(SessionError::InvalidChoice(skill.clone()));
                }
                state.user.desired_skill = Some(skill.clone());
                self.ask_subjects(&mut state)?;
            }
            (Phase::SubjectSelection { offered }, SessionEvent::ChooseSubject(subject)) => {
                if !offered.contains(subject) {
                    return Err(SessionError::InvalidChoice(subject.to_string()));
                }
                match self.ask_program(&mut state, subject)? {
                    Ok(program) => {
                        state.diagnosis = None;
                        state.phase = Phase::Studying { program, cursor: 0 };
                        self.finish_if_done(&mut state)?;
                    }
                    Err(diag) => state.diagnosis = Some(diag),
                }
            }
            (Phase::Studying { program, cursor }, SessionEvent::Complete) => {
                let subject = program.steps()[*cursor].subject.clone();
                let cursor = cursor + 1;
                let name = self
                    .catalog
                    .subject(&subject)
                    .map(|s| s.name.clone())
                    .unwrap_or_default();
                state.user.known_subjects.insert(subject, name);
                if let Phase::Studying { cursor: c, .. } = &mut state.phase {
                    *c = cursor;
                }
                self.finish_if_done(&mut state)?;
            }
            (Phase::Idle | Phase::Finished { .. }, SessionEvent::Stop) => return Err(invalid(&state)),
            (_, SessionEvent::Stop) => state.phase = Phase::Finished { interrupted: true },
            _ => return Err(invalid(&state)),
        }
        Ok(state)
    }

    /// Leave `Studying` once every step is done.
    fn finish_if_done(&self, state: &mut SessionState) -> Result<(), SessionError> {
        if let Phase::Studying { program, cursor } = &state.phase {
            if *cursor == program.steps().len() {
                self.ask_subjects(state)?;
            }
        }
        Ok(())
    }

    fn ask_skills(&self, state: &mut SessionState) -> Result<Vec<String>, SessionError> {
        let request = message(
            "request",
            UDA,
            SMA,
            UDA_ONTOLOGY,
            SKILLS_REQUEST,
            Some((ParameterKind::ReplyWith, SKILLS_TAG)),
        )
        .map_err(MailboxError::from)?;
        let acquired = state.user.acquired_skills.clone();
        let reply = exchange(&mut state.transcript, request, |_| {
            let names = available_skills(self.catalog, &acquired);
            inform(SMA, SMA_ONTOLOGY, &encode_skill_set(&names), SKILLS_TAG)
        })?;
        decode_skill_set(content(&reply)?).map_err(|e| SessionError::Protocol(e.to_string()))
    }

    /// Ask for the remaining subjects of the desired skill. An empty answer
    /// means the skill is acquired and the session ends.
    fn ask_subjects(&self, state: &mut SessionState) -> Result<(), SessionError> {
        let skill = state.user.desired_skill.clone().expect("desired skill set");
        let request = message(
            "request",
            UDA,
            SMA,
            UDA_ONTOLOGY,
            &format!("Request of subjects for skill: {skill}"),
            Some((ParameterKind::ReplyWith, SUBJECTS_TAG)),
        )
        .map_err(MailboxError::from)?;
        let known = state.user.known_ids();
        let reply = exchange(&mut state.transcript, request, |_| {
            let subjects = remaining_subjects(self.catalog, &skill, &known)
                .map_err(|e| SessionError::Protocol(e.to_string()))?;
            inform(SMA, SMA_ONTOLOGY, &encode_subject_set(&subjects), SUBJECTS_TAG)
        })?;
        let offered = decode_subject_set(content(&reply)?).map_err(|e| SessionError::Protocol(e.to_string()))?;
        state.phase = if offered.is_empty() {
            state.user.desired_skill = None;
            state.user.acquired_skills.insert(skill);
            Phase::Finished { interrupted: false }
        } else {
            Phase::SubjectSelection { offered }
        };
        Ok(())
    }

    fn ask_program(
        &self,
        state: &mut SessionState,
        subject: &SubjectId,
    ) -> Result<Result<LearningProgram, InfeasibilityDiagnosis>, SessionError> {
        let request = message(
            "request",
            UDA,
            LPA,
            UDA_ONTOLOGY,
            &format!("Request of learning program for subject: {subject}"),
            Some((ParameterKind::ReplyWith, PROGRAM_TAG)),
        )
        .map_err(MailboxError::from)?;
        let (device, user, env) = (&state.device, &state.user, &state.env);
        let mut outcome = None;
        let reply = exchange(&mut state.transcript, request, |_| {
            match plan_program(self.catalog, device, user, env, subject) {
                Ok(plan) => inform(LPA, LPA_ONTOLOGY, &encode_program(&plan.program), PROGRAM_TAG),
                Err(PlanError::Infeasible(diag)) => {
                    let reply = reply_message("failure", LPA, LPA_ONTOLOGY, &diag.to_string(), PROGRAM_TAG);
                    outcome = Some(diag);
                    reply
                }
                Err(e) => Err(SessionError::Plan(e)),
            }
        })?;
        if let Some(diag) = outcome {
            return Ok(Err(diag));
        }
        let program = decode_program(content(&reply)?).map_err(|e| SessionError::Protocol(e.to_string()))?;
        Ok(Ok(program))
    }
}

fn inform(from: &str, ontology: (&str, &str), content: &str, tag: &str) -> Result<AcmlMessage, SessionError> {
    reply_message("inform", from, ontology, content, tag)
}

fn reply_message(
    kind: &str,
    from: &str,
    ontology: (&str, &str),
    content: &str,
    tag: &str,
) -> Result<AcmlMessage, SessionError> {
    Ok(message(kind, from, UDA, ontology, content, Some((ParameterKind::InReplyTo, tag)))
        .map_err(MailboxError::from)?)
}

fn content(msg: &AcmlMessage) -> Result<&str, SessionError> {
    msg.content()
        .ok_or_else(|| SessionError::Protocol(format!("{} reply without content", msg.message_type())))
}

#[derive(Debug, Clone, PartialEq)]
pub enum SessionStatus {
    /// Nothing left to learn: the skill was acquired or none was available.
    Completed,
    /// The policy stopped or ran out of answers.
    Interrupted,
    Infeasible(InfeasibilityDiagnosis),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SessionOutcome {
    pub state: SessionState,
    pub events: Vec<SessionEvent>,
    pub status: SessionStatus,
}

impl SessionOutcome {
    pub fn profile(&self) -> &UserProfile {
        &self.state.user
    }

    pub fn transcript(&self) -> &[AcmlMessage] {
        &self.state.transcript
    }
}

/// Drive a session to its end with `policy`.
pub fn run_session(
    catalog: &Catalog,
    device: &DeviceProfile,
    user: &UserProfile,
    env: &SessionEnvironment,
    policy: &mut dyn UserPolicy,
) -> Result<SessionOutcome, SessionError> {
    let engine = SessionEngine::new(catalog);
    let mut state = SessionState::new(device.clone(), user.clone(), *env);
    let mut events = Vec::new();
    let mut apply = |state: SessionState, event: SessionEvent| {
        let next = engine.step(state, &event)?;
        events.push(event);
        Ok::<_, SessionError>(next)
    };

    state = apply(state, SessionEvent::Start)?;
    // continue is asked once per finished program, before the next subject
    let mut program_finished = false;
    let status = loop {
        let event = match &state.phase {
            Phase::Idle => unreachable!("left by start"),
            Phase::Finished { interrupted: true } => break SessionStatus::Interrupted,
            Phase::Finished { interrupted: false } => break SessionStatus::Completed,
            Phase::SubjectSelection { .. } if state.diagnosis.is_some() => {
                break SessionStatus::Infeasible(state.diagnosis.clone().expect("checked"));
            }
            Phase::SkillSelection { offered } => match policy.skill_choice(offered) {
                Some(s) => SessionEvent::ChooseSkill(s),
                None => SessionEvent::Stop,
            },
            Phase::SubjectSelection { offered } => {
                let finished = std::mem::take(&mut program_finished);
                if finished && policy.continue_choice() == Decision::Stop {
                    SessionEvent::Stop
                } else {
                    match policy.subject_choice(offered) {
                        Some(s) => SessionEvent::ChooseSubject(s),
                        None => SessionEvent::Stop,
                    }
                }
            }
            Phase::Studying { program, cursor } => {
                program_finished = cursor + 1 == program.steps().len();
                SessionEvent::Complete
            }
        };
        state = apply(state, event)?;
    };
    Ok(SessionOutcome { state, events, status })
}

/// Fold recorded events from a fresh state.
pub fn replay(
    catalog: &Catalog,
    device: &DeviceProfile,
    user: &UserProfile,
    env: &SessionEnvironment,
    events: &[SessionEvent],
) -> Result<SessionState, SessionError> {
    let engine = SessionEngine::new(catalog);
    events.iter().try_fold(
        SessionState::new(device.clone(), user.clone(), *env),
        |state, e| engine.step(state, e),
    )
}
