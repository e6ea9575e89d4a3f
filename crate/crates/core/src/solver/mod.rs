//! Best learning program: pick one learning object per graph subject,
//! maximizing the summed bitrate of the picks, subject to the device's
//! media capabilities, the effective bandwidth and the user's time budget.
//!
//! This is a multiple-choice knapsack (classes are subjects, weight is
//! duration, profit is bitrate). [`solve_blp`] runs an exact dynamic
//! program over integer time with exact rational profits; [`brute_force_blp`]
//! enumerates every assignment and exists to cross-check it.

mod brute;
mod check;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::model::{
    effective_bandwidth, Catalog, DeviceProfile, LearningObject, ObjectId, SessionEnvironment,
    SubjectId, UserProfile,
};
use crate::sdg::{build_sdg, topological_order, SdgError, SubjectDependencyGraph};

pub use brute::{brute_force_blp, BRUTE_FORCE_LIMIT};
pub use check::{check_program, ConstraintViolation};

/// Largest accepted time budget, in seconds.
pub const MAX_TIME_LIMIT: u64 = 1_000_000;

/// One candidate object for a subject.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Choice {
    pub object: ObjectId,
    pub size: u64,
    pub duration: u64,
    bitrate: BigRational,
}

impl Choice {
    pub fn new(object: ObjectId, size: u64, duration: u64) -> Self {
        assert!(duration > 0, "choice {object} has zero duration");
        let bitrate = BigRational::new(BigInt::from(size), BigInt::from(duration));
        Self {
            object,
            size,
            duration,
            bitrate,
        }
    }

    fn from_object(o: &LearningObject) -> Self {
        Self::new(o.id.clone(), o.size, o.duration)
    }

    pub fn bitrate(&self) -> &BigRational {
        &self.bitrate
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChoiceRow {
    pub subject: SubjectId,
    /// Ascending object id.
    pub options: Vec<Choice>,
}

/// Feasible objects per graph subject, rows in the graph's topological
/// order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FeasibleChoiceTable {
    rows: Vec<ChoiceRow>,
}

impl FeasibleChoiceTable {
    /// Rows are sorted by option id; callers supply them in topological
    /// subject order.
    pub fn from_rows(mut rows: Vec<ChoiceRow>) -> Self {
        for row in &mut rows {
            row.options.sort_by(|a, b| a.object.cmp(&b.object));
        }
        Self { rows }
    }

    pub fn rows(&self) -> &[ChoiceRow] {
        &self.rows
    }

    /// Number of full assignments, saturating.
    pub fn combinations(&self) -> u128 {
        self.rows
            .iter()
            .fold(1u128, |acc, r| acc.saturating_mul(r.options.len() as u128))
    }
}

/// Why no program exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InfeasibilityDiagnosis {
    NoFeasibleObject(SubjectId),
    TimeBudgetExceeded { min_total_duration: u64, max_time: u64 },
}

impl fmt::Display for InfeasibilityDiagnosis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NoFeasibleObject(s) => write!(f, "subject {s} has no feasible learning object"),
            Self::TimeBudgetExceeded {
                min_total_duration,
                max_time,
            } => write!(
                f,
                "shortest program takes {min_total_duration} s, budget is {max_time} s"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PlanError {
    #[error("infeasible: {0}")]
    Infeasible(InfeasibilityDiagnosis),
    #[error("time budget {0} s exceeds the {MAX_TIME_LIMIT} s limit")]
    BudgetTooLarge(f64),
    #[error("time budget must be a positive finite number of seconds, got {0}")]
    InvalidBudget(f64),
    #[error("{0} assignments exceed the brute-force limit")]
    InstanceTooLarge(u128),
    #[error("choice table does not match the dependency graph")]
    TableMismatch,
    #[error(transparent)]
    Graph(#[from] SdgError),
}

impl PlanError {
    pub fn diagnosis(&self) -> Option<&InfeasibilityDiagnosis> {
        match self {
            Self::Infeasible(d) => Some(d),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProgramStep {
    pub subject: SubjectId,
    pub object: ObjectId,
    pub size: u64,
    pub duration: u64,
}

impl ProgramStep {
    pub fn bitrate_f64(&self) -> f64 {
        self.size as f64 / self.duration as f64
    }
}

/// One object per subject, with the prerequisite order between objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LearningProgram {
    steps: Vec<ProgramStep>,
    assignment: BTreeMap<SubjectId, ObjectId>,
    order_pairs: BTreeSet<(ObjectId, ObjectId)>,
    objective: BigRational,
}

impl LearningProgram {
    /// Build from steps in study order and the graph arcs that induce the
    /// object order. Arcs whose endpoints are not both assigned are ignored.
    pub fn new<'a>(
        steps: Vec<ProgramStep>,
        arcs: impl IntoIterator<Item = &'a (SubjectId, SubjectId)>,
    ) -> Self {
        let assignment: BTreeMap<SubjectId, ObjectId> = steps
            .iter()
            .map(|s| (s.subject.clone(), s.object.clone()))
            .collect();
        let order_pairs = arcs
            .into_iter()
            .filter_map(|(a, b)| Some((assignment.get(a)?.clone(), assignment.get(b)?.clone())))
            .collect();
        let objective = steps.iter().fold(BigRational::zero(), |acc, s| {
            acc + BigRational::new(BigInt::from(s.size), BigInt::from(s.duration))
        });
        Self {
            steps,
            assignment,
            order_pairs,
            objective,
        }
    }

    pub fn empty() -> Self {
        Self::new(Vec::new(), std::iter::empty())
    }

    /// Steps in study order (a topological order of the graph).
    pub fn steps(&self) -> &[ProgramStep] {
        &self.steps
    }

    pub fn assignment(&self) -> &BTreeMap<SubjectId, ObjectId> {
        &self.assignment
    }

    /// Pairs `(earlier, later)`: the later object's subject has the earlier
    /// object's subject as a prerequisite.
    pub fn order_pairs(&self) -> &BTreeSet<(ObjectId, ObjectId)> {
        &self.order_pairs
    }

    /// Summed bitrate in bytes per second, exact.
    pub fn objective_value(&self) -> &BigRational {
        &self.objective
    }

    pub fn objective_f64(&self) -> f64 {
        self.objective.to_f64().unwrap_or(f64::NAN)
    }

    pub fn total_duration(&self) -> u64 {
        self.steps.iter().map(|s| s.duration).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `subject<TAB>object<TAB>duration<TAB>bitrate` per step, bitrate in
    /// bytes per second with three decimals.
    pub fn report(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{:.3}",
                s.subject,
                s.object,
                s.duration,
                s.bitrate_f64()
            );
        }
        out
    }
}

/// Objects of each graph subject that the device can render and the
/// effective bandwidth can carry. A bitrate equal to the bandwidth is
/// feasible.
pub fn filter_feasible(
    sdg: &SubjectDependencyGraph,
    catalog: &Catalog,
    device: &DeviceProfile,
    env: &SessionEnvironment,
) -> FeasibleChoiceTable {
    let bandwidth = effective_bandwidth(device, env);
    let limit = BigRational::from_float(bandwidth).unwrap_or_else(BigRational::zero);
    let rows = topological_order(sdg)
        .into_iter()
        .map(|subject| {
            let options = catalog
                .subject(&subject)
                .into_iter()
                .flat_map(|s| s.learning_objects.iter())
                .filter_map(|id| catalog.object(id))
                .filter(|o| o.duration > 0 && o.media.fits(&device.enabled))
                .map(Choice::from_object)
                .filter(|c| c.bitrate <= limit)
                .collect();
            ChoiceRow { subject, options }
        })
        .collect();
    FeasibleChoiceTable::from_rows(rows)
}

pub(crate) fn budget_seconds(max_time: f64) -> Result<u64, PlanError> {
    if !(max_time.is_finite() && max_time > 0.0) {
        return Err(PlanError::InvalidBudget(max_time));
    }
    if max_time > MAX_TIME_LIMIT as f64 {
        return Err(PlanError::BudgetTooLarge(max_time));
    }
    // durations are whole seconds, so the fractional part can never be used
    Ok(max_time.floor() as u64)
}

pub(crate) fn check_table(
    sdg: &SubjectDependencyGraph,
    table: &FeasibleChoiceTable,
) -> Result<(), PlanError> {
    let rows: BTreeSet<&SubjectId> = table.rows.iter().map(|r| &r.subject).collect();
    if rows.len() != table.rows.len() || rows.into_iter().ne(sdg.nodes().iter()) {
        return Err(PlanError::TableMismatch);
    }
    let position: BTreeMap<&SubjectId, usize> =
        table.rows.iter().enumerate().map(|(i, r)| (&r.subject, i)).collect();
    if sdg.arcs().iter().any(|(a, b)| position[a] > position[b]) {
        return Err(PlanError::TableMismatch);
    }
    Ok(())
}

pub(crate) fn assemble(
    sdg: &SubjectDependencyGraph,
    table: &FeasibleChoiceTable,
    picks: &[usize],
) -> LearningProgram {
    let steps = table
        .rows
        .iter()
        .zip(picks)
        .map(|(row, &i)| {
            let c = &row.options[i];
            ProgramStep {
                subject: row.subject.clone(),
                object: c.object.clone(),
                size: c.size,
                duration: c.duration,
            }
        })
        .collect();
    LearningProgram::new(steps, sdg.arcs())
}

#[derive(Clone)]
struct State {
    value: BigRational,
    picks: Vec<usize>,
}

impl State {
    /// Higher value wins; equal values go to the lexicographically smaller
    /// pick vector. Options within a row are sorted by id, so comparing
    /// indices compares object ids.
    fn beats(&self, other: &State) -> bool {
        match self.value.cmp(&other.value) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Equal => self.picks < other.picks,
        }
    }
}

/// Exact optimum. Among equal objectives the lexicographically smallest
/// object-id vector, in table row order, is returned.
pub fn solve_blp(
    sdg: &SubjectDependencyGraph,
    table: &FeasibleChoiceTable,
    max_time: f64,
) -> Result<LearningProgram, PlanError> {
    let budget = budget_seconds(max_time)?;
    check_table(sdg, table)?;
    if let Some(row) = table.rows.iter().find(|r| r.options.is_empty()) {
        return Err(PlanError::Infeasible(InfeasibilityDiagnosis::NoFeasibleObject(
            row.subject.clone(),
        )));
    }
    let min_total: u64 = table
        .rows
        .iter()
        .map(|r| r.options.iter().map(|c| c.duration).min().unwrap_or(0))
        .sum();
    if min_total > budget {
        return Err(PlanError::Infeasible(InfeasibilityDiagnosis::TimeBudgetExceeded {
            min_total_duration: min_total,
            max_time: budget,
        }));
    }

    // best state per used time, for each prefix of rows
    let mut layer: BTreeMap<u64, State> = BTreeMap::new();
    layer.insert(
        0,
        State {
            value: BigRational::zero(),
            picks: Vec::new(),
        },
    );
    for row in &table.rows {
        let mut next: BTreeMap<u64, State> = BTreeMap::new();
        for (&used, state) in &layer {
            for (i, choice) in row.options.iter().enumerate() {
                let t = used + choice.duration;
                if t > budget {
                    continue;
                }
                let mut picks = Vec::with_capacity(state.picks.len() + 1);
                picks.extend_from_slice(&state.picks);
                picks.push(i);
                let candidate = State {
                    value: &state.value + &choice.bitrate,
                    picks,
                };
                match next.get(&t) {
                    Some(cur) if !candidate.beats(cur) => {}
                    _ => {
                        next.insert(t, candidate);
                    }
                }
            }
        }
        layer = prune_dominated(next);
    }

    let best = layer
        .into_values()
        .reduce(|a, b| if b.beats(&a) { b } else { a })
        .expect("feasible instance has at least one complete assignment");
    Ok(assemble(sdg, table, &best.picks))
}

/// Drop a state when another state using no more time beats it. Such a
/// state can never be the prefix of the reported optimum: swapping in the
/// dominating prefix keeps feasibility and does at least as well.
fn prune_dominated(states: BTreeMap<u64, State>) -> BTreeMap<u64, State> {
    let mut kept: BTreeMap<u64, State> = BTreeMap::new();
    let mut champion: Option<State> = None;
    for (t, s) in states {
        if champion.as_ref().is_some_and(|c| !s.beats(c)) {
            continue;
        }
        champion = Some(s.clone());
        kept.insert(t, s);
    }
    kept
}

/// A full plan: graph, feasible table and optimal program.
#[derive(Debug, Clone)]
pub struct Plan {
    pub sdg: SubjectDependencyGraph,
    pub table: FeasibleChoiceTable,
    pub program: LearningProgram,
}

/// Graph construction, filtering and solving in one call.
pub fn plan_program(
    catalog: &Catalog,
    device: &DeviceProfile,
    user: &UserProfile,
    env: &SessionEnvironment,
    target: &SubjectId,
) -> Result<Plan, PlanError> {
    let sdg = build_sdg(catalog, &user.known_ids(), target)?;
    let table = filter_feasible(&sdg, catalog, device, env);
    let program = solve_blp(&sdg, &table, user.max_time)?;
    Ok(Plan {
        sdg,
        table,
        program,
    })
}
