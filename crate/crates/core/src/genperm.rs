//! Generalized permutation matrices, the invertible max-plus matrices.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::matrix::Matrix;
use crate::scalar::MaxPlus;

/// A generalized permutation matrix: row `i` holds the finite weight
/// `weights[i]` in column `perm[i]` and ε everywhere else.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenPerm {
    perm: Vec<usize>,
    weights: Vec<f64>,
}

impl GenPerm {
    pub fn new(perm: Vec<usize>, weights: Vec<f64>) -> Result<Self, Error> {
        let n = perm.len();
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        if weights.len() != n {
            return Err(Error::VectorLength {
                op: "genperm",
                expected: n,
                found: weights.len(),
            });
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidPermutation(perm));
            }
        }
        if let Some(index) = weights.iter().position(|w| !w.is_finite()) {
            return Err(Error::NonFiniteValue { op: "genperm", index });
        }
        Ok(GenPerm { perm, weights })
    }

    pub fn identity(n: usize) -> Self {
        GenPerm::diagonal(vec![0.0; n]).expect("identity is valid")
    }

    /// diag(p).
    pub fn diagonal(weights: Vec<f64>) -> Result<Self, Error> {
        GenPerm::new((0..weights.len()).collect(), weights)
    }

    /// A pure permutation matrix (all weights 0).
    pub fn permutation(perm: Vec<usize>) -> Result<Self, Error> {
        let n = perm.len();
        GenPerm::new(perm, vec![0.0; n])
    }

    /// Recovers the permutation and weights from a matrix with exactly one
    /// finite entry per row and column.
    pub fn from_matrix(a: &Matrix) -> Result<Self, Error> {
        let n = a.require_square("genperm")?;
        let mut perm = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for i in 0..n {
            let finite: Vec<usize> = (0..n).filter(|&j| a.get(i, j).is_finite()).collect();
            match finite.as_slice() {
                [j] => {
                    perm.push(*j);
                    weights.push(a.get(i, *j).value());
                }
                _ => return Err(Error::InvalidPermutation(finite)),
            }
        }
        GenPerm::new(perm, weights)
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    /// π as a slice: row `i` is finite in column `perm()[i]`.
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// p_i = P_{i, π(i)}.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_fn(self.n(), self.n(), |i, j| {
            if self.perm[i] == j {
                MaxPlus::new(self.weights[i])
            } else {
                MaxPlus::EPS
            }
        })
    }

    /// P^{-1}: permutation π^{-1}, with the entry at (j, π^{-1}(j)) equal to
    /// −p_{π^{-1}(j)}.
    pub fn inverse(&self) -> GenPerm {
        let n = self.n();
        let mut perm = vec![0; n];
        let mut weights = vec![0.0; n];
        for (i, &j) in self.perm.iter().enumerate() {
            perm[j] = i;
            weights[j] = -self.weights[i];
        }
        GenPerm { perm, weights }
    }

    /// P ⊗ x, i.e. (P ⊗ x)_i = p_i + x_{π(i)}.
    pub fn apply(&self, x: &[MaxPlus]) -> Result<Vec<MaxPlus>, Error> {
        if x.len() != self.n() {
            return Err(Error::VectorLength {
                op: "genperm_apply",
                expected: self.n(),
                found: x.len(),
            });
        }
        Ok(self
            .perm
            .iter()
            .zip(&self.weights)
            .map(|(&j, &w)| MaxPlus::new(w).otimes(x[j]))
            .collect())
    }

    /// Image of an index set under π.
    pub fn map_indices(&self, indices: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = indices.iter().map(|&k| self.perm[k]).collect();
        out.sort_unstable();
        out
    }
}

/// P ⊗ A ⊗ P^{-1}, evaluated entrywise as a_{π(i),π(j)} + (p_i − p_j) without
/// forming any matrix product.
///
/// The opposite similarity P^{-1} ⊗ A ⊗ P is `conjugate(a, &p.inverse())`.
pub fn conjugate(a: &Matrix, p: &GenPerm) -> Result<Matrix, Error> {
    let n = a.require_square("conjugate")?;
    if p.n() != n {
        return Err(Error::ShapeMismatch {
            op: "conjugate",
            left: a.shape(),
            right: (p.n(), p.n()),
        });
    }
    let w = p.weights();
    let pi = p.perm();
    Ok(Matrix::from_fn(n, n, |i, j| {
        a.get(pi[i], pi[j]).otimes(MaxPlus::new(w[i] - w[j]))
    }))
}
