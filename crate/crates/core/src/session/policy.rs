use std::collections::VecDeque;
use std::fmt;

use crate::model::SubjectId;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Continue,
    Stop,
}

/// The learner's choices. `None` means the policy has nothing more to say,
/// which ends the session as an interruption.
pub trait UserPolicy {
    fn skill_choice(&mut self, offered: &[String]) -> Option<String>;
    fn subject_choice(&mut self, offered: &[SubjectId]) -> Option<SubjectId>;
    /// Asked after each finished program while subjects remain.
    fn continue_choice(&mut self) -> Decision;
}

/// Takes the first offer every time; stops after `stop_after` finished
/// programs when set.
#[derive(Debug, Clone, Default)]
pub struct FirstChoicePolicy {
    pub stop_after: Option<usize>,
    finished: usize,
}

impl FirstChoicePolicy {
    pub fn new(stop_after: Option<usize>) -> Self {
        Self {
            stop_after,
            finished: 0,
        }
    }
}

impl UserPolicy for FirstChoicePolicy {
    fn skill_choice(&mut self, offered: &[String]) -> Option<String> {
        offered.first().cloned()
    }

    fn subject_choice(&mut self, offered: &[SubjectId]) -> Option<SubjectId> {
        offered.first().cloned()
    }

    fn continue_choice(&mut self) -> Decision {
        self.finished += 1;
        match self.stop_after {
            Some(n) if self.finished >= n => Decision::Stop,
            _ => Decision::Continue,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScriptLine {
    Skill(String),
    Subject(SubjectId),
    Continue,
    Stop,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {reason}")]
pub struct ScriptError {
    pub line: usize,
    pub reason: String,
}

/// Choices read from a script, one per line:
///
/// ```text
/// # comment
/// skill C++ programmer
/// subject Classes
/// continue
/// stop
/// ```
///
/// Each kind of choice is consumed in file order, independently of the
/// other kinds. A question with no remaining answer of its kind ends the
/// session.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ScriptedPolicy {
    skills: VecDeque<String>,
    subjects: VecDeque<SubjectId>,
    decisions: VecDeque<Decision>,
}

impl ScriptedPolicy {
    pub fn parse(text: &str) -> Result<Self, ScriptError> {
        let lines = text
            .lines()
            .enumerate()
            .filter_map(|(i, raw)| {
                let line = raw.split('#').next().unwrap_or("").trim();
                (!line.is_empty()).then(|| parse_line(i + 1, line))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_lines(lines))
    }

    pub fn from_lines(lines: impl IntoIterator<Item = ScriptLine>) -> Self {
        let mut policy = Self::default();
        for line in lines {
            match line {
                ScriptLine::Skill(s) => policy.skills.push_back(s),
                ScriptLine::Subject(s) => policy.subjects.push_back(s),
                ScriptLine::Continue => policy.decisions.push_back(Decision::Continue),
                ScriptLine::Stop => policy.decisions.push_back(Decision::Stop),
            }
        }
        policy
    }
}

fn parse_line(line: usize, text: &str) -> Result<ScriptLine, ScriptError> {
    let err = |reason: &str| ScriptError {
        line,
        reason: reason.to_owned(),
    };
    let (word, rest) = match text.split_once(char::is_whitespace) {
        Some((w, r)) => (w, r.trim()),
        None => (text, ""),
    };
    match (word, rest.is_empty()) {
        ("skill", false) => Ok(ScriptLine::Skill(rest.to_owned())),
        ("subject", false) => Ok(ScriptLine::Subject(rest.into())),
        ("skill" | "subject", true) => Err(err(&format!("`{word}` needs an argument"))),
        ("continue", true) => Ok(ScriptLine::Continue),
        ("stop", true) => Ok(ScriptLine::Stop),
        ("continue" | "stop", false) => Err(err(&format!("`{word}` takes no argument"))),
        _ => Err(err(&format!("unknown directive `{word}`"))),
    }
}

impl fmt::Display for ScriptLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScriptLine::Skill(s) => write!(f, "skill {s}"),
            ScriptLine::Subject(s) => write!(f, "subject {s}"),
            ScriptLine::Continue => f.write_str("continue"),
            ScriptLine::Stop => f.write_str("stop"),
        }
    }
}

impl UserPolicy for ScriptedPolicy {
    fn skill_choice(&mut self, _offered: &[String]) -> Option<String> {
        self.skills.pop_front()
    }

    fn subject_choice(&mut self, _offered: &[SubjectId]) -> Option<SubjectId> {
        self.subjects.pop_front()
    }

    fn continue_choice(&mut self) -> Decision {
        self.decisions.pop_front().unwrap_or(Decision::Stop)
    }
}
