//! Max-plus k-th roots.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::matrix::Matrix;
use crate::pdiag::pdiag_power;
use crate::scalar::{MaxPlus, Tolerance};

/// A violated instance of a_ij + a_tt ≥ a_it + a_tj (0-based indices).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootWitness {
    pub i: usize,
    pub j: usize,
    pub t: usize,
    /// a_ij + a_tt
    pub lhs: f64,
    /// a_it + a_tj
    pub rhs: f64,
}

impl fmt::Display for RootWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(i,j,t) = ({},{},{}): {} < {}",
            self.i + 1,
            self.j + 1,
            self.t + 1,
            MaxPlus::new(self.lhs),
            MaxPlus::new(self.rhs)
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootConditionReport {
    pub holds: bool,
    pub witness: Option<RootWitness>,
}

/// Checks a_ij ⊗ a_tt ≥ a_it ⊗ a_tj over all (i, j, t), reporting the first
/// violation in lexicographic (i, j, t) order.
pub fn root_condition(a: &Matrix, tol: Tolerance) -> Result<RootConditionReport, Error> {
    let n = a.require_square("root_condition")?;
    a.require_finite("root_condition")?;
    let at = |i: usize, j: usize| a.get(i, j).value();
    for i in 0..n {
        for j in 0..n {
            for t in 0..n {
                let lhs = at(i, j) + at(t, t);
                let rhs = at(i, t) + at(t, j);
                if lhs < rhs - tol.tau() {
                    return Ok(RootConditionReport {
                        holds: false,
                        witness: Some(RootWitness { i, j, t, lhs, rhs }),
                    });
                }
            }
        }
    }
    Ok(RootConditionReport {
        holds: true,
        witness: None,
    })
}

/// B_ij = a_ij + ((1 − k)/k) · max(a_ii, a_jj), which satisfies B^k = A
/// whenever the root condition holds. Refuses inputs that fail it.
pub fn kth_root(a: &Matrix, k: usize, tol: Tolerance) -> Result<Matrix, Error> {
    if k < 1 {
        return Err(Error::ExponentTooSmall {
            op: "kth_root",
            min: 1,
            found: k,
        });
    }
    let report = root_condition(a, tol)?;
    if let Some(w) = report.witness {
        return Err(Error::RootConditionFails(w));
    }
    let exponent = (1.0 - k as f64) / k as f64;
    let n = a.rows();
    Ok(Matrix::from_fn(n, n, |i, j| {
        a.get(i, j).otimes(a.get(i, i).oplus(a.get(j, j)).pow(exponent))
    }))
}

/// A matrix that has a k-th root yet fails the root condition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootCounterexample {
    /// D = pdiag(a)^k.
    pub matrix: Matrix,
    pub report: RootConditionReport,
    /// The smallest qualifying index (0-based) in 1..n−1.
    pub index: usize,
}

/// Builds D = pdiag(a)^k for a nondecreasing `a` with a_1 ≥ 0 that has some
/// interior a_i > max((k − 2)·a_n, k·a_1) / (k − 1). Such a D fails the root
/// condition although pdiag(a) is a k-th root of it.
pub fn root_counterexample(
    k: usize,
    a: &[f64],
    tol: Tolerance,
) -> Result<RootCounterexample, Error> {
    let n = a.len();
    if n < 3 {
        return Err(Error::DimensionTooSmall {
            op: "root_counterexample",
            min: 3,
            found: n,
        });
    }
    if k < 2 {
        return Err(Error::ExponentTooSmall {
            op: "root_counterexample",
            min: 2,
            found: k,
        });
    }
    if let Some(index) = a.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFiniteValue {
            op: "root_counterexample",
            index,
        });
    }
    if a[0] < 0.0 || a.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::HypothesisNotMet(
            "diagonal must be nondecreasing with a nonnegative first entry".into(),
        ));
    }
    let kf = k as f64;
    let threshold = ((kf - 2.0) * a[n - 1]).max(kf * a[0]) / (kf - 1.0);
    let index = (1..n - 1).find(|&i| a[i] > threshold).ok_or_else(|| {
        Error::HypothesisNotMet(format!(
            "no interior entry exceeds {}",
            MaxPlus::new(threshold)
        ))
    })?;
    let matrix = pdiag_power(a, k)?;
    let report = root_condition(&matrix, tol)?;
    Ok(RootCounterexample {
        matrix,
        report,
        index,
    })
}
