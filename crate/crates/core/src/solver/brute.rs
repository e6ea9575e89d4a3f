use num_rational::BigRational;
use num_traits::Zero;

use super::{
    assemble, budget_seconds, check_table, FeasibleChoiceTable, InfeasibilityDiagnosis,
    LearningProgram, PlanError,
};
use crate::sdg::SubjectDependencyGraph;

/// Largest number of assignments [`brute_force_blp`] will enumerate.
pub const BRUTE_FORCE_LIMIT: u128 = 1_000_000;

/// Exhaustive enumeration with the same tie-break as
/// [`solve_blp`](super::solve_blp).
pub fn brute_force_blp(
    sdg: &SubjectDependencyGraph,
    table: &FeasibleChoiceTable,
    max_time: f64,
) -> Result<LearningProgram, PlanError> {
    let budget = budget_seconds(max_time)?;
    check_table(sdg, table)?;
    let rows = table.rows();
    if let Some(row) = rows.iter().find(|r| r.options.is_empty()) {
        return Err(PlanError::Infeasible(InfeasibilityDiagnosis::NoFeasibleObject(
            row.subject.clone(),
        )));
    }
    let combos = table.combinations();
    if combos > BRUTE_FORCE_LIMIT {
        return Err(PlanError::InstanceTooLarge(combos));
    }

    let mut picks = vec![0usize; rows.len()];
    let mut best: Option<(BigRational, Vec<usize>)> = None;
    let mut shortest = u64::MAX;
    loop {
        let duration: u64 = rows.iter().zip(&picks).map(|(r, &i)| r.options[i].duration).sum();
        shortest = shortest.min(duration);
        if duration <= budget {
            let value = rows
                .iter()
                .zip(&picks)
                .fold(BigRational::zero(), |acc, (r, &i)| acc + r.options[i].bitrate());
            // odometer order visits pick vectors in increasing lexicographic
            // order, so only a strictly larger value replaces the incumbent
            if best.as_ref().is_none_or(|(v, _)| value > *v) {
                best = Some((value, picks.clone()));
            }
        }

        // advance the odometer, last row fastest
        let mut k = rows.len();
        loop {
            if k == 0 {
                return match best {
                    Some((_, p)) => Ok(assemble(sdg, table, &p)),
                    None => Err(PlanError::Infeasible(InfeasibilityDiagnosis::TimeBudgetExceeded {
                        min_total_duration: shortest,
                        max_time: budget,
                    })),
                };
            }
            k -= 1;
            picks[k] += 1;
            if picks[k] < rows[k].options.len() {
                break;
            }
            picks[k] = 0;
        }
    }
}
