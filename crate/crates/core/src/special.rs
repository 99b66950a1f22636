//! Optimal-node and separable matrices.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::genperm::{conjugate, GenPerm};
use crate::matrix::Matrix;
use crate::pdiag::check_pdiag;
use crate::scalar::{MaxPlus, Tolerance};
use crate::spectral::{critical_structure, SpectralSummary};

/// a_ij = u_i + v_j, gauge-fixed by u_1 = 0.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeparableFactorization {
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

/// Optimal nodes: k with a_ik + a_kj ≥ a_il + a_lj for all i, j, l.
///
/// For fixed (i, j) the right-hand side is maximized by (A ⊗ A)_ij, so each
/// candidate is tested against the square once.
pub fn optimal_nodes(a: &Matrix, tol: Tolerance) -> Result<Vec<usize>, Error> {
    let n = a.require_square("optimal_nodes")?;
    a.require_finite("optimal_nodes")?;
    let square = a.otimes(a)?;
    Ok((0..n)
        .filter(|&k| {
            (0..n).all(|i| {
                (0..n).all(|j| tol.le(square.get(i, j), a.get(i, k).otimes(a.get(k, j))))
            })
        })
        .collect())
}

/// For an optimal-node matrix with smallest optimal node k: λ = a_kk and the
/// column A_k spans the eigenspace.
pub fn optimal_node_eig(a: &Matrix, tol: Tolerance) -> Result<SpectralSummary, Error> {
    let k = *optimal_nodes(a, tol)?.first().ok_or(Error::NotOptimalNode)?;
    let crit = critical_structure(a, tol)?;
    Ok(SpectralSummary {
        lambda: a.get(k, k),
        critical_nodes: crit.nodes,
        classes: crit.classes,
        eigenbasis: vec![a.col(k)],
    })
}

pub fn separable_factor(
    a: &Matrix,
    tol: Tolerance,
) -> Result<Option<SeparableFactorization>, Error> {
    let n = a.require_square("separable_factor")?;
    a.require_finite("separable_factor")?;
    let v: Vec<f64> = (0..n).map(|j| a.get(0, j).value()).collect();
    let u: Vec<f64> = (0..n).map(|i| a.get(i, 0).value() - a.get(0, 0).value()).collect();
    let fits = (0..n).all(|i| (0..n).all(|j| tol.eq(a.get(i, j), MaxPlus::new(u[i] + v[j]))));
    Ok(fits.then_some(SeparableFactorization { u, v }))
}

/// A diagonal similarity turning a separable matrix symmetric:
/// p_i = (v_i − u_i) / 2 and S = diag(p) ⊗ A ⊗ diag(p)^{-1}, with
/// S_ij = (u_i + v_i + u_j + v_j) / 2.
pub fn symmetrize_separable(a: &Matrix, tol: Tolerance) -> Result<(GenPerm, Matrix), Error> {
    let f = separable_factor(a, tol)?.ok_or(Error::NotSeparable)?;
    let p: Vec<f64> = f.v.iter().zip(&f.u).map(|(v, u)| (v - u) / 2.0).collect();
    let scaling = GenPerm::diagonal(p)?;
    let s = conjugate(a, &scaling)?;
    Ok((scaling, s))
}

/// Separable / optimal-node flags for a pseudo-diagonalizable matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialClassification {
    pub separable: bool,
    pub optimal_node: bool,
    /// Smallest k with a_kk ≥ 0 and every other diagonal entry ≤ 0.
    pub node: Option<usize>,
}

/// Classifies a pseudo-diagonalizable matrix from its diagonal alone.
pub fn classify_pdiagable_special(
    a: &Matrix,
    tol: Tolerance,
) -> Result<SpecialClassification, Error> {
    let cert = check_pdiag(a, tol)?;
    if let Some(w) = cert.witness {
        return Err(Error::NotPseudoDiagonalizable(w));
    }
    let n = a.rows();
    if n < 2 {
        return Err(Error::DimensionTooSmall {
            op: "classify_pdiagable_special",
            min: 2,
            found: n,
        });
    }
    let d: Vec<MaxPlus> = a.diagonal();
    let separable = if n == 2 {
        tol.is_zero(d[0].otimes(d[1]))
    } else {
        d.iter().all(|&x| tol.is_zero(x))
    };
    let node = (0..n).find(|&k| {
        tol.le(MaxPlus::ZERO, d[k]) && (0..n).all(|i| i == k || tol.le(d[i], MaxPlus::ZERO))
    });
    Ok(SpecialClassification {
        separable,
        optimal_node: node.is_some(),
        node,
    })
}
