//! Pseudo-diagonal canonical forms.
//!
//! A pseudo-diagonal matrix pdiag(d) has the real vector `d` on its diagonal
//! and 0 everywhere else. A matrix is pseudo-diagonalizable when it is similar
//! to one. This module recognizes such matrices in O(n²), constructs the
//! diagonal scaling that exhibits the similarity, and uses the canonical form
//! to give closed forms for powers, the transitive closure of the normalized
//! matrix, the eigenspace, cyclicity and stability.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::genperm::{conjugate, GenPerm};
use crate::matrix::Matrix;
use crate::scalar::{MaxPlus, Tolerance};
use crate::spectral::SpectralSummary;

/// Which check of the recognizer failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WitnessKind {
    /// An ε entry; only finite matrices qualify.
    Eps,
    /// K_ij = a_ij ⊗ a_ji ≠ 0.
    K,
    /// T_ij = a_ij ⊗ a_{j,i+1} ⊗ a_{i+1,i} ≠ 0.
    T,
}

/// A failed check, with 0-based indices and the offending value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PdiagWitness {
    pub kind: WitnessKind,
    pub i: usize,
    pub j: usize,
    pub value: MaxPlus,
}

impl fmt::Display for PdiagWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            WitnessKind::Eps => "entry",
            WitnessKind::K => "K",
            WitnessKind::T => "T",
        };
        write!(f, "{name}[{},{}] = {}", self.i + 1, self.j + 1, self.value)
    }
}

/// Outcome of recognition, and of diagonalization when it succeeds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PdiagCertificate {
    pub verdict: bool,
    /// p with diag(p) ⊗ A ⊗ diag(p)^{-1} = pdiag(diagonal).
    pub scaling: Option<Vec<f64>>,
    pub diagonal: Option<Vec<f64>>,
    pub witness: Option<PdiagWitness>,
}

/// Runs the K and T checks. Never fills in the scaling; see [`diagonalize`].
pub fn check_pdiag(a: &Matrix, tol: Tolerance) -> Result<PdiagCertificate, Error> {
    let n = a.require_square("check_pdiag")?;
    let witness = match a.first_eps() {
        Some((i, j)) => Some(PdiagWitness {
            kind: WitnessKind::Eps,
            i,
            j,
            value: MaxPlus::EPS,
        }),
        None => first_failed_check(a, n, tol),
    };
    Ok(PdiagCertificate {
        verdict: witness.is_none(),
        scaling: None,
        diagonal: None,
        witness,
    })
}

fn first_failed_check(a: &Matrix, n: usize, tol: Tolerance) -> Option<PdiagWitness> {
    for i in 0..n {
        for j in i + 1..n {
            let k = a.get(i, j).otimes(a.get(j, i));
            if !tol.is_zero(k) {
                return Some(PdiagWitness {
                    kind: WitnessKind::K,
                    i,
                    j,
                    value: k,
                });
            }
        }
    }
    for i in 0..n.saturating_sub(2) {
        for j in i + 2..n {
            let t = a.get(i, j).otimes(a.get(j, i + 1)).otimes(a.get(i + 1, i));
            if !tol.is_zero(t) {
                return Some(PdiagWitness {
                    kind: WitnessKind::T,
                    i,
                    j,
                    value: t,
                });
            }
        }
    }
    None
}

/// Recognizes A and, if it is pseudo-diagonalizable, returns the scaling p
/// (anchored at p_n = 0) solving p_i − p_{i+1} = a_{i+1,i} and the diagonal
/// d_i = a_ii of the canonical form.
pub fn diagonalize(a: &Matrix, tol: Tolerance) -> Result<PdiagCertificate, Error> {
    let mut cert = check_pdiag(a, tol)?;
    if let Some(w) = cert.witness {
        return Err(Error::NotPseudoDiagonalizable(w));
    }
    let n = a.rows();
    let mut scaling = vec![0.0; n];
    for i in (0..n.saturating_sub(1)).rev() {
        scaling[i] = scaling[i + 1] + a.get(i + 1, i).value();
    }
    cert.diagonal = Some(a.diagonal().iter().map(|d| d.value()).collect());
    cert.scaling = Some(scaling);
    Ok(cert)
}

/// Applies a certificate: diag(p) ⊗ A ⊗ diag(p)^{-1}.
pub fn apply_scaling(a: &Matrix, scaling: &[f64]) -> Result<Matrix, Error> {
    conjugate(a, &GenPerm::diagonal(scaling.to_vec())?)
}

/// True when A is finite, its off-diagonal entries are 0 and it is square.
pub fn is_pseudo_diagonal(a: &Matrix, tol: Tolerance) -> bool {
    a.is_square()
        && a.is_finite()
        && (0..a.rows()).all(|i| (0..a.cols()).all(|j| i == j || tol.is_zero(a.get(i, j))))
}

fn validate_diagonal(op: &'static str, d: &[f64]) -> Result<(), Error> {
    if d.len() < 2 {
        return Err(Error::DimensionTooSmall {
            op,
            min: 2,
            found: d.len(),
        });
    }
    match d.iter().position(|v| !v.is_finite()) {
        Some(index) => Err(Error::NonFiniteValue { op, index }),
        None => Ok(()),
    }
}

fn max_of(d: &[f64]) -> f64 {
    d.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

/// pdiag(d)^k for k ≥ 2 in closed form, without any matrix products.
pub fn pdiag_power(d: &[f64], k: usize) -> Result<Matrix, Error> {
    validate_diagonal("pdiag_power", d)?;
    if k < 2 {
        return Err(Error::ExponentTooSmall {
            op: "pdiag_power",
            min: 2,
            found: k,
        });
    }
    let n = d.len();
    let top = max_of(d);
    let kf = k as f64;
    let entry = if n == 2 {
        two_by_two_power(d, k)
    } else if top <= 0.0 {
        Box::new(|_, _| 0.0) as Box<dyn Fn(usize, usize) -> f64>
    } else {
        let base = (kf - 2.0) * top;
        Box::new(move |i: usize, j: usize| {
            if d[i].max(d[j]) <= 0.0 {
                base
            } else if i == j {
                (kf * d[i]).max(base)
            } else {
                ((kf - 1.0) * d[i]).max((kf - 1.0) * d[j]).max(base)
            }
        })
    };
    Ok(Matrix::from_fn(n, n, |i, j| MaxPlus::new(entry(i, j))))
}

/// The three 2×2 regimes, written for an unsorted diagonal.
fn two_by_two_power(d: &[f64], k: usize) -> Box<dyn Fn(usize, usize) -> f64 + '_> {
    let kf = k as f64;
    let (lo, hi) = (d[0].min(d[1]), d[0].max(d[1]));
    let argmax = if d[0] >= d[1] { 0 } else { 1 };
    if hi <= 0.0 {
        // Alternates: 0 where i + j + k is even (1-based), max(d) otherwise.
        Box::new(move |i, j| if (i + j + k).is_multiple_of(2) { 0.0 } else { hi })
    } else if lo <= 0.0 {
        Box::new(move |i, j| {
            if i != j {
                (kf - 1.0) * hi
            } else if i == argmax {
                kf * hi
            } else {
                (kf - 2.0) * hi
            }
        })
    } else {
        Box::new(move |i, j| {
            if i == j {
                (kf * d[i]).max((kf - 2.0) * hi)
            } else {
                (kf - 1.0) * hi
            }
        })
    }
}

/// λ(pdiag(d)) = max(d) ⊕ 0.
pub fn pdiag_lambda(d: &[f64]) -> f64 {
    max_of(d).max(0.0)
}

/// Γ(D_λ) for D = pdiag(d), computed as D_λ ⊕ D_λ².
pub fn pdiag_gamma_lambda(d: &[f64]) -> Result<Matrix, Error> {
    validate_diagonal("pdiag_gamma_lambda", d)?;
    let lambda = pdiag_lambda(d);
    let first = Matrix::pdiag(d).scale(MaxPlus::new(-lambda));
    let second = pdiag_power(d, 2)?.scale(MaxPlus::new(-2.0 * lambda));
    first.oplus(&second)
}

/// Eigenvalue and eigenspace basis of pdiag(d).
///
/// With max(d) ≤ 0 every node is critical and equivalent, λ = 0 and the
/// all-zeros vector spans the eigenspace. Otherwise λ = max(d), the critical
/// nodes are the positions of the maximum (each its own class) and the
/// corresponding columns of pdiag(d) form the basis.
pub fn pdiag_eig(d: &[f64], tol: Tolerance) -> Result<SpectralSummary, Error> {
    validate_diagonal("pdiag_eig", d)?;
    let n = d.len();
    let top = max_of(d);
    if top <= 0.0 {
        return Ok(SpectralSummary {
            lambda: MaxPlus::ZERO,
            critical_nodes: (0..n).collect(),
            classes: vec![(0..n).collect()],
            eigenbasis: vec![vec![MaxPlus::ZERO; n]],
        });
    }
    let argmax: Vec<usize> = (0..n)
        .filter(|&i| tol.eq(MaxPlus::new(d[i]), MaxPlus::new(top)))
        .collect();
    let matrix = Matrix::pdiag(d);
    Ok(SpectralSummary {
        lambda: MaxPlus::new(top),
        classes: argmax.iter().map(|&i| vec![i]).collect(),
        eigenbasis: argmax.iter().map(|&j| matrix.col(j)).collect(),
        critical_nodes: argmax,
    })
}

/// Eigenvalue and eigenspace basis of a pseudo-diagonalizable matrix, read
/// directly from its diagonal.
pub fn pdiagable_eig(a: &Matrix, tol: Tolerance) -> Result<SpectralSummary, Error> {
    let cert = check_pdiag(a, tol)?;
    if let Some(w) = cert.witness {
        return Err(Error::NotPseudoDiagonalizable(w));
    }
    let n = a.rows();
    if n < 2 {
        return Err(Error::DimensionTooSmall {
            op: "pdiagable_eig",
            min: 2,
            found: n,
        });
    }
    let diag: Vec<f64> = a.diagonal().iter().map(|x| x.value()).collect();
    let top = max_of(&diag);
    if top > 0.0 {
        let nodes: Vec<usize> = (0..n)
            .filter(|&i| tol.eq(MaxPlus::new(diag[i]), MaxPlus::new(top)))
            .collect();
        Ok(SpectralSummary {
            lambda: MaxPlus::new(top),
            classes: nodes.iter().map(|&i| vec![i]).collect(),
            eigenbasis: nodes.iter().map(|&m| a.col(m)).collect(),
            critical_nodes: nodes,
        })
    } else {
        let mut column = a.col(0);
        column[0] = MaxPlus::ZERO;
        Ok(SpectralSummary {
            lambda: MaxPlus::ZERO,
            critical_nodes: (0..n).collect(),
            classes: vec![(0..n).collect()],
            eigenbasis: vec![column],
        })
    }
}

/// Γ(A_λ) for a pseudo-diagonalizable A.
///
/// With a positive largest diagonal entry λ this is A_λ off the diagonal and
/// max(a_ii − λ, −2λ) on it; the diagonal differs from A_λ whenever some
/// a_ii < −λ. Otherwise it is I ⊕ A.
pub fn pdiagable_gamma_lambda(a: &Matrix, tol: Tolerance) -> Result<Matrix, Error> {
    let cert = check_pdiag(a, tol)?;
    if let Some(w) = cert.witness {
        return Err(Error::NotPseudoDiagonalizable(w));
    }
    let diag: Vec<f64> = a.diagonal().iter().map(|x| x.value()).collect();
    let top = max_of(&diag);
    if top > 0.0 {
        let n = a.rows();
        Ok(Matrix::from_fn(n, n, |i, j| {
            let v = a.get(i, j).value() - top;
            MaxPlus::new(if i == j { v.max(-2.0 * top) } else { v })
        }))
    } else {
        Matrix::identity(a.rows()).oplus(a)
    }
}

/// Cyclicity of pdiag(d): 2 for a 2×2 matrix with negative diagonal, else 1.
pub fn pdiag_cyclicity(d: &[f64]) -> Result<usize, Error> {
    validate_diagonal("pdiag_cyclicity", d)?;
    Ok(if d.len() == 2 && max_of(d) < 0.0 { 2 } else { 1 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StabilityKind {
    /// Every starting vector reaches the eigenspace.
    StronglyStable,
    /// Only eigenvectors do.
    WeaklyStable,
}

/// Starting vectors whose orbit reaches the eigenspace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Attraction {
    /// All of ℝ̄ⁿ.
    Everything,
    /// {x ∈ ℝ̄² : x₁ = x₂}.
    EqualPair,
}

impl Attraction {
    pub fn contains(self, x: &[MaxPlus], tol: Tolerance) -> bool {
        match self {
            Attraction::Everything => true,
            Attraction::EqualPair => x.len() == 2 && tol.eq(x[0], x[1]),
        }
    }
}

impl fmt::Display for Attraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Attraction::Everything => f.write_str("all vectors"),
            Attraction::EqualPair => f.write_str("x1 = x2"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub kind: StabilityKind,
    pub attraction: Attraction,
}

pub fn pdiag_stability(d: &[f64]) -> Result<StabilityReport, Error> {
    validate_diagonal("pdiag_stability", d)?;
    Ok(if d.len() == 2 && max_of(d) < 0.0 {
        StabilityReport {
            kind: StabilityKind::WeaklyStable,
            attraction: Attraction::EqualPair,
        }
    } else {
        StabilityReport {
            kind: StabilityKind::StronglyStable,
            attraction: Attraction::Everything,
        }
    })
}
