//! Simulation of x(r+1) = A ⊗ x(r), the dynamics of a multi-machine
//! interactive production process where `x_i(r)` is the start time of
//! machine `i` in stage `r` and `a_ij` the time machine `j` needs to prepare
//! components for machine `i`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::matrix::Matrix;
use crate::scalar::{MaxPlus, Tolerance};
use crate::spectral::{is_eigenvector, max_cycle_mean};
use crate::text::format_row;

/// The orbit x(0), …, x(T) and where it starts moving in regular steps.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimTrace {
    pub lambda: MaxPlus,
    pub states: Vec<Vec<MaxPlus>>,
    /// Smallest k with x(k+1) = λ ⊗ x(k).
    pub steady_index: Option<usize>,
}

impl SimTrace {
    pub fn reached_eigenvector(&self) -> bool {
        self.steady_index.is_some()
    }

    /// Header line `# lambda=<λ> steady_index=<k|none>` followed by one state
    /// per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let steady = self
            .steady_index
            .map_or_else(|| "none".to_string(), |k| k.to_string());
        writeln!(out, "# lambda={} steady_index={}", self.lambda, steady).unwrap();
        for state in &self.states {
            writeln!(out, "{}", format_row(state)).unwrap();
        }
        out
    }
}

/// Bounded attraction verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AttrVerdict {
    /// x(step) is an eigenvector.
    Member { step: usize },
    /// No eigenvector among x(0), …, x(horizon).
    NotWithin { horizon: usize },
}

impl AttrVerdict {
    pub fn is_member(self) -> bool {
        matches!(self, AttrVerdict::Member { .. })
    }
}

/// Default orbit horizon, max(2n², 64).
pub fn default_horizon(n: usize) -> usize {
    (2 * n * n).max(64)
}

fn validate_start(op: &'static str, a: &Matrix, x0: &[MaxPlus]) -> Result<(), Error> {
    let n = a.require_square(op)?;
    if x0.len() != n {
        return Err(Error::VectorLength {
            op,
            expected: n,
            found: x0.len(),
        });
    }
    if x0.iter().all(|x| x.is_eps()) {
        return Err(Error::EpsilonVector { op });
    }
    Ok(())
}

/// Iterates `t_max` steps from `x0`, recording the first k ≤ t_max − 1 with
/// x(k+1) = λ(A) ⊗ x(k).
pub fn simulate(
    a: &Matrix,
    x0: &[MaxPlus],
    t_max: usize,
    tol: Tolerance,
) -> Result<SimTrace, Error> {
    validate_start("simulate", a, x0)?;
    let lambda = max_cycle_mean(a)?;
    let mut states = Vec::with_capacity(t_max + 1);
    states.push(x0.to_vec());
    let mut steady_index = None;
    for k in 0..t_max {
        let next = a.apply(&states[k])?;
        if steady_index.is_none() {
            let shifted: Vec<MaxPlus> = states[k].iter().map(|&v| lambda.otimes(v)).collect();
            if tol.eq_slices(&next, &shifted) {
                steady_index = Some(k);
            }
        }
        states.push(next);
    }
    Ok(SimTrace {
        lambda,
        states,
        steady_index,
    })
}

/// Whether some x(k), k ≤ `horizon`, is an eigenvector of A for λ(A).
pub fn in_attr(
    a: &Matrix,
    x0: &[MaxPlus],
    horizon: usize,
    tol: Tolerance,
) -> Result<AttrVerdict, Error> {
    validate_start("in_attr", a, x0)?;
    let lambda = max_cycle_mean(a)?;
    let mut x = x0.to_vec();
    for step in 0..=horizon {
        if x.iter().any(|v| v.is_finite()) && is_eigenvector(a, &x, lambda, tol)? {
            return Ok(AttrVerdict::Member { step });
        }
        if step < horizon {
            x = a.apply(&x)?;
        }
    }
    Ok(AttrVerdict::NotWithin { horizon })
}
