//! Brute-force reference computations for max-plus matrices.
//!
//! Everything here works on plain `Vec<Vec<f64>>` grids with `-inf` for ε and
//! shares no code with the `maxplus` crate, so it can check that crate's
//! results independently. All routines are exponential or high-degree
//! polynomial and meant for small matrices only.

pub type Grid = Vec<Vec<f64>>;

const EPS: f64 = f64::NEG_INFINITY;

fn add(a: f64, b: f64) -> f64 {
    if a == EPS || b == EPS {
        EPS
    } else {
        a + b
    }
}

pub fn mul(a: &Grid, b: &Grid) -> Grid {
    let (n, m, p) = (a.len(), b.len(), b[0].len());
    assert_eq!(a[0].len(), m);
    let mut out = vec![vec![EPS; p]; n];
    for i in 0..n {
        for j in 0..p {
            for k in 0..m {
                out[i][j] = out[i][j].max(add(a[i][k], b[k][j]));
            }
        }
    }
    out
}

pub fn oplus(a: &Grid, b: &Grid) -> Grid {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x.max(*y)).collect())
        .collect()
}

pub fn power(a: &Grid, k: usize) -> Grid {
    assert!(k >= 1);
    let mut acc = a.clone();
    for _ in 1..k {
        acc = mul(&acc, a);
    }
    acc
}

/// A ⊕ A² ⊕ … ⊕ Aⁿ by explicit powers.
pub fn closure(a: &Grid) -> Grid {
    let n = a.len();
    let mut acc = a.clone();
    for k in 2..=n {
        acc = oplus(&acc, &power(a, k));
    }
    acc
}

pub fn shift(a: &Grid, lambda: f64) -> Grid {
    a.iter()
        .map(|r| r.iter().map(|&x| add(x, lambda)).collect())
        .collect()
}

/// Largest entrywise difference; `+inf` if the ε patterns differ.
pub fn max_diff(a: &Grid, b: &Grid) -> f64 {
    let mut worst: f64 = 0.0;
    for (r, s) in a.iter().zip(b) {
        for (&x, &y) in r.iter().zip(s) {
            let d = match (x == EPS, y == EPS) {
                (true, true) => 0.0,
                (false, false) => (x - y).abs(),
                _ => f64::INFINITY,
            };
            worst = worst.max(d);
        }
    }
    worst
}

/// An elementary cycle: its node sequence and weight.
#[derive(Clone, Debug)]
pub struct Cycle {
    pub nodes: Vec<usize>,
    pub weight: f64,
}

impl Cycle {
    pub fn mean(&self) -> f64 {
        self.weight / self.nodes.len() as f64
    }
}

/// All cyclic permutations of subsets of 0..n with finite weight. Each cycle
/// is listed once, starting at its smallest node.
pub fn cycles(a: &Grid) -> Vec<Cycle> {
    let n = a.len();
    let mut out = Vec::new();
    for start in 0..n {
        let mut path = vec![start];
        let mut used = vec![false; n];
        used[start] = true;
        extend(a, start, &mut path, &mut used, 0.0, &mut out);
    }
    out
}

fn extend(
    a: &Grid,
    start: usize,
    path: &mut Vec<usize>,
    used: &mut [bool],
    weight: f64,
    out: &mut Vec<Cycle>,
) {
    let last = *path.last().unwrap();
    if a[last][start] != EPS {
        out.push(Cycle {
            nodes: path.clone(),
            weight: weight + a[last][start],
        });
    }
    for next in start + 1..a.len() {
        if !used[next] && a[last][next] != EPS {
            used[next] = true;
            path.push(next);
            extend(a, start, path, used, weight + a[last][next], out);
            path.pop();
            used[next] = false;
        }
    }
}

/// λ(A) by enumeration; `-inf` when there are no cycles.
pub fn max_cycle_mean(a: &Grid) -> f64 {
    cycles(a).iter().map(Cycle::mean).fold(EPS, f64::max)
}

/// Critical nodes and the classes of "lies on a common critical cycle",
/// closed transitively.
pub fn critical_classes(a: &Grid, tol: f64) -> (Vec<usize>, Vec<Vec<usize>>) {
    let n = a.len();
    let lambda = max_cycle_mean(a);
    let critical: Vec<Cycle> = cycles(a)
        .into_iter()
        .filter(|c| (c.mean() - lambda).abs() <= tol)
        .collect();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    let mut is_critical = vec![false; n];
    for c in &critical {
        for &v in &c.nodes {
            is_critical[v] = true;
            let (ra, rb) = (find(&mut parent, c.nodes[0]), find(&mut parent, v));
            parent[rb] = ra;
        }
    }
    let nodes: Vec<usize> = (0..n).filter(|&v| is_critical[v]).collect();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut root_of_class: Vec<usize> = Vec::new();
    for &v in &nodes {
        let r = find(&mut parent, v);
        match root_of_class.iter().position(|&x| x == r) {
            Some(p) => classes[p].push(v),
            None => {
                root_of_class.push(r);
                classes.push(vec![v]);
            }
        }
    }
    (nodes, classes)
}

/// gcd of the lengths of all critical cycles inside each class, combined
/// across classes with the lcm.
pub fn critical_cyclicity(a: &Grid, tol: f64) -> usize {
    let lambda = max_cycle_mean(a);
    let (_, classes) = critical_classes(a, tol);
    let critical: Vec<Cycle> = cycles(a)
        .into_iter()
        .filter(|c| (c.mean() - lambda).abs() <= tol)
        .collect();
    classes
        .iter()
        .map(|class| {
            critical
                .iter()
                .filter(|c| class.contains(&c.nodes[0]))
                .fold(0, |g, c| gcd(g, c.nodes.len()))
        })
        .fold(1, |l, g| l / gcd(l, g) * g)
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Pseudo-diagonalizability by checking every triple: A finite and
/// a_ik + a_kj equals a_ij (i ≠ j) or 0 (i = j) for all k ∉ {i, j}.
pub fn is_pseudo_diagonalizable(a: &Grid, tol: f64) -> bool {
    let n = a.len();
    if a.iter().flatten().any(|&x| x == EPS) {
        return false;
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                let target = if i == j { 0.0 } else { a[i][j] };
                if (a[i][k] + a[k][j] - target).abs() > tol {
                    return false;
                }
            }
        }
    }
    true
}

/// Optimal nodes by the literal quadruple loop over (k, i, j, l).
pub fn optimal_nodes(a: &Grid, tol: f64) -> Vec<usize> {
    let n = a.len();
    (0..n)
        .filter(|&k| {
            (0..n).all(|i| {
                (0..n).all(|j| (0..n).all(|l| a[i][k] + a[k][j] >= a[i][l] + a[l][j] - tol))
            })
        })
        .collect()
}

/// Separability via the four-point identity a_ij + a_kl = a_il + a_kj.
pub fn is_separable(a: &Grid, tol: f64) -> bool {
    let n = a.len();
    (0..n).all(|i| {
        (0..n).all(|j| {
            (0..n).all(|k| (0..n).all(|l| (a[i][j] + a[k][l] - a[i][l] - a[k][j]).abs() <= tol))
        })
    })
}

/// Whether `v` is a max-combination of `gens`, by residuation.
pub fn in_span(v: &[f64], gens: &[Vec<f64>], tol: f64) -> bool {
    let mut combo = vec![EPS; v.len()];
    for g in gens {
        let alpha = g
            .iter()
            .zip(v)
            .filter(|(gi, _)| **gi != EPS)
            .map(|(gi, vi)| if *vi == EPS { EPS } else { vi - gi })
            .fold(f64::INFINITY, f64::min);
        if alpha == EPS || alpha == f64::INFINITY {
            continue;
        }
        for (c, gi) in combo.iter_mut().zip(g) {
            *c = c.max(add(alpha, *gi));
        }
    }
    combo.iter().zip(v).all(|(c, x)| match (*c == EPS, *x == EPS) {
        (true, true) => true,
        (false, false) => (c - x).abs() <= tol,
        _ => false,
    })
}

pub fn same_span(a: &[Vec<f64>], b: &[Vec<f64>], tol: f64) -> bool {
    a.iter().all(|v| in_span(v, b, tol)) && b.iter().all(|v| in_span(v, a, tol))
}

/// Every x with A ⊗ x = λ ⊗ x, checked to `tol`.
pub fn is_eigenvector(a: &Grid, x: &[f64], lambda: f64, tol: f64) -> bool {
    let col: Grid = x.iter().map(|&v| vec![v]).collect();
    let lhs = mul(a, &col);
    let rhs = shift(&col, lambda);
    max_diff(&lhs, &rhs) <= tol
}
