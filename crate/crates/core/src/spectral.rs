//! The max-plus eigenproblem for square matrices.
//!
//! λ(A) is computed with Karp's algorithm on the digraph whose arcs are the
//! finite entries (arc `i → j` carries `a_ij`). Critical arcs are read off the
//! transitive closure of the normalized matrix A_λ = (−λ) ⊗ A: an arc lies on
//! a critical cycle iff `(A_λ)_ij + Γ(A_λ)_ji = 0`. The equivalence classes of
//! critical nodes are the strongly connected components of the critical
//! digraph, and one fundamental eigenvector (column of Γ(A_λ)) is taken per
//! class.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::matrix::Matrix;
use crate::scalar::{MaxPlus, Tolerance};

/// λ, the critical nodes, their classes, and one eigenvector per class.
///
/// Indices are 0-based. `classes` are sorted by their smallest member and each
/// class is sorted.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralSummary {
    pub lambda: MaxPlus,
    pub critical_nodes: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
    pub eigenbasis: Vec<Vec<MaxPlus>>,
}

impl SpectralSummary {
    pub fn dimension(&self) -> usize {
        self.eigenbasis.len()
    }
}

/// Critical nodes and their equivalence classes.
#[derive(Clone, Debug, PartialEq)]
pub struct CriticalStructure {
    pub lambda: f64,
    pub nodes: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
    /// `arcs[i][j]` is true iff `i → j` lies on a critical cycle.
    pub arcs: Vec<Vec<bool>>,
    /// Γ(A_λ).
    pub closure: Matrix,
}

/// Eventual period and transient of the power sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Periodicity {
    pub period: usize,
    pub transient: usize,
}

/// λ(A), the maximum cycle mean; ε when A has no cycle of finite weight.
#[allow(clippy::needless_range_loop)]
pub fn max_cycle_mean(a: &Matrix) -> Result<MaxPlus, Error> {
    let n = a.require_square("max_cycle_mean")?;
    // walk[k][v]: heaviest walk with exactly k arcs ending at v, starting anywhere.
    let mut walk = vec![vec![f64::NEG_INFINITY; n]; n + 1];
    walk[0].fill(0.0);
    for k in 1..=n {
        for v in 0..n {
            let mut best = f64::NEG_INFINITY;
            for u in 0..n {
                let w = a.get(u, v).value();
                if w != f64::NEG_INFINITY && walk[k - 1][u] != f64::NEG_INFINITY {
                    best = best.max(walk[k - 1][u] + w);
                }
            }
            walk[k][v] = best;
        }
    }
    let mut lambda = f64::NEG_INFINITY;
    for v in 0..n {
        let top = walk[n][v];
        if top == f64::NEG_INFINITY {
            continue;
        }
        let worst = (0..n)
            .filter(|&k| walk[k][v] != f64::NEG_INFINITY)
            .map(|k| (top - walk[k][v]) / (n - k) as f64)
            .fold(f64::INFINITY, f64::min);
        lambda = lambda.max(worst);
    }
    Ok(MaxPlus::new(lambda))
}

/// A ⊕ A² ⊕ … ⊕ Aⁿ for any square matrix.
pub(crate) fn closure_sum(a: &Matrix) -> Matrix {
    let mut power = a.clone();
    let mut acc = a.clone();
    for _ in 1..a.rows() {
        power = power.otimes(a).expect("square");
        acc = acc.oplus(&power).expect("same shape");
    }
    acc
}

/// Γ(A) = A ⊕ A² ⊕ … ⊕ Aⁿ for finite square A.
pub fn transitive_closure(a: &Matrix) -> Result<Matrix, Error> {
    a.require_square("transitive_closure")?;
    a.require_finite("transitive_closure")?;
    Ok(closure_sum(a))
}

/// A_λ = (λ(A))^{-1} ⊗ A.
pub fn normalize(a: &Matrix, lambda: f64) -> Matrix {
    a.scale(MaxPlus::new(-lambda))
}

pub fn critical_structure(a: &Matrix, tol: Tolerance) -> Result<CriticalStructure, Error> {
    let n = a.require_square("critical_structure")?;
    let lambda = max_cycle_mean(a)?
        .finite()
        .ok_or(Error::Acyclic { op: "critical_structure" })?;
    let normalized = normalize(a, lambda);
    let closure = closure_sum(&normalized);

    let arcs: Vec<Vec<bool>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| tol.is_zero(normalized.get(i, j).otimes(closure.get(j, i))))
                .collect()
        })
        .collect();
    let nodes: Vec<usize> = (0..n).filter(|&i| tol.is_zero(closure.get(i, i))).collect();
    let classes = strong_components(&arcs, &nodes);
    Ok(CriticalStructure {
        lambda,
        nodes,
        classes,
        arcs,
        closure,
    })
}

/// Strongly connected components of the digraph `arcs`, restricted to `nodes`.
#[allow(clippy::needless_range_loop)]
fn strong_components(arcs: &[Vec<bool>], nodes: &[usize]) -> Vec<Vec<usize>> {
    let n = arcs.len();
    let mut reach = arcs.to_vec();
    for (i, row) in reach.iter_mut().enumerate() {
        row[i] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    let mut assigned = vec![false; n];
    let mut classes = Vec::new();
    for &i in nodes {
        if assigned[i] {
            continue;
        }
        let class: Vec<usize> = nodes
            .iter()
            .copied()
            .filter(|&j| reach[i][j] && reach[j][i])
            .collect();
        for &j in &class {
            assigned[j] = true;
        }
        classes.push(class);
    }
    classes
}

/// Eigenvalue and a basis of the eigenspace of a finite square matrix.
///
/// The basis holds one fundamental eigenvector per critical class: the
/// column of Γ(A_λ) at the lowest-indexed node of the class.
pub fn eigenbasis(a: &Matrix, tol: Tolerance) -> Result<SpectralSummary, Error> {
    a.require_square("eigenbasis")?;
    a.require_finite("eigenbasis")?;
    let crit = critical_structure(a, tol)?;
    let eigenbasis = crit
        .classes
        .iter()
        .map(|class| crit.closure.col(class[0]))
        .collect();
    Ok(SpectralSummary {
        lambda: MaxPlus::new(crit.lambda),
        critical_nodes: crit.nodes,
        classes: crit.classes,
        eigenbasis,
    })
}

/// Whether A ⊗ x = λ ⊗ x under `tol`. The all-ε vector is rejected.
pub fn is_eigenvector(
    a: &Matrix,
    x: &[MaxPlus],
    lambda: MaxPlus,
    tol: Tolerance,
) -> Result<bool, Error> {
    a.require_square("is_eigenvector")?;
    if x.iter().all(|v| v.is_eps()) {
        return Err(Error::EpsilonVector { op: "is_eigenvector" });
    }
    let lhs = a.apply(x)?;
    let rhs: Vec<MaxPlus> = x.iter().map(|&v| lambda.otimes(v)).collect();
    Ok(tol.eq_slices(&lhs, &rhs))
}

/// Largest |(A ⊗ x)_i − (λ ⊗ x)_i| over finite coordinates; `+inf` if the
/// ε patterns differ.
pub fn eigen_residual(a: &Matrix, x: &[MaxPlus], lambda: MaxPlus) -> Result<f64, Error> {
    let lhs = Matrix::column(&a.apply(x)?);
    let rhs = Matrix::column(&x.iter().map(|&v| lambda.otimes(v)).collect::<Vec<_>>());
    Ok(lhs.max_abs_diff(&rhs))
}

/// Cyclicity of a finite matrix: the cyclicity of its critical digraph.
///
/// Each strongly connected component contributes the gcd of its cycle
/// lengths; components are combined with the lcm, which is the period of the
/// power sequence.
pub fn cyclicity(a: &Matrix, tol: Tolerance) -> Result<usize, Error> {
    a.require_square("cyclicity")?;
    a.require_finite("cyclicity")?;
    let crit = critical_structure(a, tol)?;
    Ok(crit
        .classes
        .iter()
        .map(|class| component_cyclicity(&crit.arcs, class))
        .fold(1, lcm))
}

/// gcd of cycle lengths in a strongly connected component, from BFS levels:
/// every arc `u → v` contributes `level(u) + 1 − level(v)`.
fn component_cyclicity(arcs: &[Vec<bool>], class: &[usize]) -> usize {
    let n = arcs.len();
    let mut member = vec![false; n];
    for &v in class {
        member[v] = true;
    }
    let mut level: Vec<Option<i64>> = vec![None; n];
    let mut queue = std::collections::VecDeque::from([class[0]]);
    level[class[0]] = Some(0);
    while let Some(u) = queue.pop_front() {
        for v in 0..n {
            if member[v] && arcs[u][v] && level[v].is_none() {
                level[v] = Some(level[u].unwrap() + 1);
                queue.push_back(v);
            }
        }
    }
    let mut g = 0usize;
    for &u in class {
        for &v in class {
            if arcs[u][v] {
                let (lu, lv) = (level[u].unwrap(), level[v].unwrap());
                g = gcd(g, (lu + 1 - lv).unsigned_abs() as usize);
            }
        }
    }
    g.max(1)
}

/// Smallest `p ≥ 1` and, for it, the smallest transient `T ≥ 1` with
/// A^{k+p} = λ^p ⊗ A^k for every `k` in `T ..= k_max − p`.
///
/// A candidate `p` is only accepted when that verified window holds at least
/// `p` values of `k`; otherwise the horizon is too short and `None` results.
pub fn empirical_period(
    a: &Matrix,
    k_max: usize,
    tol: Tolerance,
) -> Result<Option<Periodicity>, Error> {
    a.require_square("empirical_period")?;
    a.require_finite("empirical_period")?;
    let lambda = max_cycle_mean(a)?.value();
    let mut powers = Vec::with_capacity(k_max + 1);
    powers.push(Matrix::identity(a.rows()));
    for k in 1..=k_max {
        let next = powers[k - 1].otimes(a)?;
        powers.push(next);
    }
    for p in 1..k_max {
        let shift = MaxPlus::new(lambda * p as f64);
        let holds = |k: usize| powers[k + p].approx_eq(&powers[k].scale(shift), tol);
        let last = k_max - p;
        let mut transient = last + 1;
        while transient > 1 && holds(transient - 1) {
            transient -= 1;
        }
        if last + 1 - transient >= p {
            return Ok(Some(Periodicity {
                period: p,
                transient,
            }));
        }
    }
    Ok(None)
}

/// Residuation test: whether `v` is a max-combination of `generators`.
///
/// The greatest coefficients with ⊕_k α_k ⊗ c_k ≤ v are
/// α_k = min_i (v_i − (c_k)_i); `v` lies in the span iff they reproduce it.
pub fn in_span(v: &[MaxPlus], generators: &[Vec<MaxPlus>], tol: Tolerance) -> bool {
    let mut combo = vec![MaxPlus::EPS; v.len()];
    for c in generators {
        let alpha = c
            .iter()
            .zip(v)
            .filter(|(ci, _)| ci.is_finite())
            .map(|(ci, vi)| vi.value() - ci.value())
            .fold(f64::INFINITY, f64::min);
        if alpha == f64::NEG_INFINITY {
            continue;
        }
        // A generator that is entirely ε contributes nothing.
        if alpha == f64::INFINITY {
            continue;
        }
        for (slot, ci) in combo.iter_mut().zip(c) {
            *slot = slot.oplus(MaxPlus::new(alpha).otimes(*ci));
        }
    }
    tol.eq_slices(&combo, v)
}

/// Whether each generator set lies in the span of the other.
pub fn same_span(left: &[Vec<MaxPlus>], right: &[Vec<MaxPlus>], tol: Tolerance) -> bool {
    left.iter().all(|v| in_span(v, right, tol)) && right.iter().all(|v| in_span(v, left, tol))
}

/// True when no generator is a max-combination of the others.
pub fn is_independent(generators: &[Vec<MaxPlus>], tol: Tolerance) -> bool {
    (0..generators.len()).all(|i| {
        let others: Vec<Vec<MaxPlus>> = generators
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.clone())
            .collect();
        !in_span(&generators[i], &others, tol)
    })
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}
