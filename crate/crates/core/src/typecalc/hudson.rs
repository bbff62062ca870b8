//! Hudson's arithmetic properness test for homaloidal types.

use super::{classify, quad_transform, MultiplicityType, TypeError};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HudsonStep {
    pub input: MultiplicityType,
    /// Zero-based positions the transformation was based at.
    pub indices: [usize; 3],
    pub output: MultiplicityType,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Proper,
    /// `witness_index` is the zero-based position of the first negative multiplicity.
    Improper {
        witness_index: usize,
    },
    NonTerminating {
        step_limit: usize,
    },
}

impl Verdict {
    pub fn is_proper(&self) -> bool {
        matches!(self, Verdict::Proper)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Proper => "proper",
            Verdict::Improper { .. } => "improper",
            Verdict::NonTerminating { .. } => "non-terminating",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HudsonTrace {
    pub start: MultiplicityType,
    pub steps: Vec<HudsonStep>,
    pub verdict: Verdict,
}

impl HudsonTrace {
    /// The last type reached (the start type when no step was taken).
    pub fn final_type(&self) -> &MultiplicityType {
        self.steps.last().map_or(&self.start, |s| &s.output)
    }

    /// 10·d, the default bound on the number of transformations.
    pub fn default_step_limit(t: &MultiplicityType) -> usize {
        (t.degree().max(1) as usize).saturating_mul(10)
    }
}

fn is_terminal(t: &MultiplicityType) -> bool {
    t.degree() == 1 && t.mults().iter().all(|&m| m == 0)
}

/// Iterates quadratic transformations at the three highest multiplicities
/// until a negative multiplicity shows up, `(1; 0^r)` is reached, or
/// `step_limit` transformations have been applied.
pub fn hudson_test(t: &MultiplicityType, step_limit: usize) -> Result<HudsonTrace, TypeError> {
    let class = classify(t)?;
    if !class.is_homaloidal {
        return Err(TypeError::NotHomaloidal(format!(
            "{t} violates Σν = 3(d−1) or Σν² = d²−1"
        )));
    }
    let start = t.padded(3);
    let mut current = start.clone();
    let mut steps = Vec::new();
    loop {
        if is_terminal(&current) {
            return Ok(HudsonTrace {
                start,
                steps,
                verdict: Verdict::Proper,
            });
        }
        if steps.len() >= step_limit {
            return Ok(HudsonTrace {
                start,
                steps,
                verdict: Verdict::NonTerminating { step_limit },
            });
        }
        let idx = current.sorted_indices();
        let indices = [idx[0], idx[1], idx[2]];
        let output = quad_transform(&current, indices[0], indices[1], indices[2])?;
        let negative = indices
            .iter()
            .copied()
            .filter(|&i| output.mults()[i] < 0)
            .min();
        steps.push(HudsonStep {
            input: current,
            indices,
            output: output.clone(),
        });
        if let Some(witness_index) = negative {
            return Ok(HudsonTrace {
                start,
                steps,
                verdict: Verdict::Improper { witness_index },
            });
        }
        current = output;
    }
}
