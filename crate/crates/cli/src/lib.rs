//! Command logic behind the `maxplus` binary.
//!
//! Every command produces a report that renders either as text or as JSON,
//! plus an exit status. Matrices are read in the text format of
//! [`maxplus::text`]; `-` reads standard input.

use std::fmt::Display;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use maxplus::mmipp::{default_horizon, in_attr, simulate};
use maxplus::pdiag::{
    apply_scaling, check_pdiag, diagonalize, is_pseudo_diagonal, pdiag_power, pdiag_stability,
    pdiagable_eig, pdiagable_gamma_lambda, Attraction,
};
use maxplus::roots::{kth_root, root_condition, root_counterexample};
use maxplus::special::{classify_pdiagable_special, optimal_nodes, separable_factor};
use maxplus::spectral::{
    cyclicity, eigenbasis, is_eigenvector, max_cycle_mean, normalize, transitive_closure,
};
use maxplus::text::{parse_matrix, parse_vector};
use maxplus::{Error, Matrix, MaxPlus, Tolerance};
use serde::Serialize;

pub mod report;

use report::*;

#[derive(Debug, Parser)]
#[command(name = "maxplus", version, about = "Max-plus matrix analysis")]
pub struct Cli {
    /// Tolerance for every equality-based verdict.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full report: eigenvalue, canonical form, eigenspace, special structure.
    Analyze { matrix: PathBuf },
    /// Eigenvalue and eigenspace basis.
    Eig {
        matrix: PathBuf,
        /// Skip the pseudo-diagonalizable shortcut.
        #[arg(long)]
        general: bool,
    },
    /// Pseudo-diagonalizability certificate and canonical form.
    Pdiag { matrix: PathBuf },
    /// k-th power; closed form as well for pseudo-diagonal input.
    Power {
        matrix: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Transitive closure A ⊕ A² ⊕ … ⊕ Aⁿ.
    Closure {
        matrix: PathBuf,
        /// Close A − λ(A) instead of A.
        #[arg(long)]
        normalized: bool,
    },
    /// Root condition and k-th root, or a matrix with a root that fails it.
    Roots {
        #[arg(required_unless_present = "counterexample")]
        matrix: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Nondecreasing diagonal, e.g. "0 1 2"; builds pdiag(a)^k.
        #[arg(long, value_name = "DIAGONAL", conflicts_with = "matrix")]
        counterexample: Option<String>,
    },
    /// Orbit x(r+1) = A ⊗ x(r).
    Simulate {
        matrix: PathBuf,
        #[arg(long, default_value_t = 20)]
        steps: usize,
        /// Start vector; all zeros by default.
        #[arg(long)]
        x0: Option<String>,
        /// Also test attraction, within the given horizon (default max(2n², 64)).
        #[arg(long, value_name = "HORIZON", num_args = 0..=1)]
        attr: Option<Option<usize>>,
    },
    /// Separable and optimal-node structure.
    Classify { matrix: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// A well-formed input violates a precondition.
    Precondition,
    /// A result failed its own consistency check.
    Invariant,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Precondition => 2,
            Status::Invariant => 3,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Library(#[from] Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Usage(_) => 1,
            CliError::Library(e) if e.is_input_error() => 1,
            CliError::Library(_) => 2,
        }
    }
}

/// Rendered output and its exit status.
#[derive(Debug)]
pub struct Output {
    pub body: String,
    pub status: Status,
}

fn render<R: Serialize + Display>(report: &R, json: bool, status: Status) -> Output {
    let body = if json {
        let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
        s.push('\n');
        s
    } else {
        report.to_string()
    };
    Output { body, status }
}

pub fn read_matrix(path: &Path) -> Result<Matrix, CliError> {
    let io = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        s
    } else {
        std::fs::read_to_string(path).map_err(io)?
    };
    Ok(parse_matrix(&text)?)
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let tol = Tolerance::new(cli.tol)?;
    let json = cli.json;
    match &cli.command {
        Command::Analyze { matrix } => {
            let (report, status) = analyze(&read_matrix(matrix)?, tol)?;
            Ok(render(&report, json, status))
        }
        Command::Eig { matrix, general } => {
            let (report, status) = eig(&read_matrix(matrix)?, *general, tol)?;
            Ok(render(&report, json, status))
        }
        Command::Pdiag { matrix } => {
            let (report, status) = pdiag(&read_matrix(matrix)?, tol)?;
            Ok(render(&report, json, status))
        }
        Command::Power { matrix, k } => {
            let (report, status) = power(&read_matrix(matrix)?, *k, tol)?;
            Ok(render(&report, json, status))
        }
        Command::Closure { matrix, normalized } => {
            let (report, status) = closure(&read_matrix(matrix)?, *normalized, tol)?;
            Ok(render(&report, json, status))
        }
        Command::Roots {
            matrix,
            k,
            counterexample,
        } => match (matrix, counterexample) {
            (_, Some(diag)) => {
                let (report, status) = counterexample_report(diag, *k, tol)?;
                Ok(render(&report, json, status))
            }
            (Some(path), None) => {
                let (report, status) = roots(&read_matrix(path)?, *k, tol)?;
                Ok(render(&report, json, status))
            }
            (None, None) => Err(CliError::Usage("a matrix file or --counterexample is required".into())),
        },
        Command::Simulate {
            matrix,
            steps,
            x0,
            attr,
        } => {
            let a = read_matrix(matrix)?;
            let x0 = match x0 {
                Some(text) => parse_vector(text)?,
                None => vec![MaxPlus::ZERO; a.rows()],
            };
            let horizon = attr.map(|h| h.unwrap_or_else(|| default_horizon(a.rows())));
            let report = simulate_report(&a, &x0, *steps, horizon, tol)?;
            Ok(render(&report, json, Status::Ok))
        }
        Command::Classify { matrix } => {
            let (report, status) = classify(&read_matrix(matrix)?, tol)?;
            Ok(render(&report, json, status))
        }
    }
}

fn require_square(a: &Matrix) -> Result<(), CliError> {
    if a.is_square() {
        Ok(())
    } else {
        Err(Error::NotSquare {
            op: "analysis",
            rows: a.rows(),
            cols: a.cols(),
        }
        .into())
    }
}

fn all_eigenvectors(a: &Matrix, e: &EigenReport, tol: Tolerance) -> Result<bool, CliError> {
    for x in &e.basis {
        if !is_eigenvector(a, x, e.lambda, tol)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn analyze(a: &Matrix, tol: Tolerance) -> Result<(AnalysisReport, Status), CliError> {
    require_square(a)?;
    let finite = a.is_finite();
    let lambda = max_cycle_mean(a)?;
    let (pdiag, mut status) = pdiag(a, tol)?;
    let (spectral, special, cyc) = if finite {
        let (e, s) = eig(a, false, tol)?;
        let (c, s2) = classify(a, tol)?;
        if s != Status::Ok || s2 != Status::Ok {
            status = Status::Invariant;
        }
        (Some(e), Some(c), Some(cyclicity(a, tol)?))
    } else {
        (None, None, None)
    };
    let stability = match (&pdiag.diagonal, &pdiag.scaling) {
        (Some(d), Some(p)) if d.len() >= 2 => {
            let s = pdiag_stability(d)?;
            let attraction = match s.attraction {
                Attraction::Everything => "all vectors".to_string(),
                Attraction::EqualPair if p[0] == p[1] => "x1 = x2".to_string(),
                Attraction::EqualPair => format!("x1 - x2 = {}", MaxPlus::new(p[1] - p[0])),
            };
            Some(StabilityInfo {
                kind: s.kind,
                attraction,
            })
        }
        _ => None,
    };
    let report = AnalysisReport {
        rows: a.rows(),
        cols: a.cols(),
        finite,
        lambda,
        cyclicity: cyc,
        pdiag,
        spectral,
        special,
        stability,
    };
    Ok((report, status))
}

pub fn eig(a: &Matrix, general: bool, tol: Tolerance) -> Result<(EigenReport, Status), CliError> {
    require_square(a)?;
    let shortcut = !general && a.rows() >= 2 && check_pdiag(a, tol)?.verdict;
    let report = if shortcut {
        EigenReport::new("pseudo-diagonalizable", pdiagable_eig(a, tol)?)
    } else {
        EigenReport::new("general", eigenbasis(a, tol)?)
    };
    let status = if all_eigenvectors(a, &report, tol)? {
        Status::Ok
    } else {
        Status::Invariant
    };
    Ok((report, status))
}

pub fn pdiag(a: &Matrix, tol: Tolerance) -> Result<(PdiagReport, Status), CliError> {
    require_square(a)?;
    let cert = check_pdiag(a, tol)?;
    if !cert.verdict {
        let report = PdiagReport {
            verdict: false,
            witness: cert.witness.map(WitnessReport::from),
            scaling: None,
            diagonal: None,
            canonical: None,
        };
        return Ok((report, Status::Ok));
    }
    let cert = diagonalize(a, tol)?;
    let scaling = cert.scaling.expect("diagonalize returns a scaling");
    let canonical = apply_scaling(a, &scaling)?;
    let status = if is_pseudo_diagonal(&canonical, tol) {
        Status::Ok
    } else {
        Status::Invariant
    };
    let report = PdiagReport {
        verdict: true,
        witness: None,
        scaling: Some(scaling),
        diagonal: cert.diagonal,
        canonical: Some(canonical),
    };
    Ok((report, status))
}

pub fn power(a: &Matrix, k: usize, tol: Tolerance) -> Result<(PowerReport, Status), CliError> {
    require_square(a)?;
    let iterated = a.pow(k)?;
    let closed_form = if k >= 2 && a.rows() >= 2 && is_pseudo_diagonal(a, tol) {
        let d: Vec<f64> = a.diagonal().iter().map(|x| x.value()).collect();
        Some(pdiag_power(&d, k)?)
    } else {
        None
    };
    let matches = closed_form.as_ref().map(|c| c.approx_eq(&iterated, tol));
    let status = if matches == Some(false) {
        Status::Invariant
    } else {
        Status::Ok
    };
    let report = PowerReport {
        k,
        iterated,
        closed_form,
        matches,
    };
    Ok((report, status))
}

pub fn closure(
    a: &Matrix,
    normalized: bool,
    tol: Tolerance,
) -> Result<(ClosureReport, Status), CliError> {
    require_square(a)?;
    let (lambda, target) = if normalized {
        let l = max_cycle_mean(a)?;
        let Some(value) = l.finite() else {
            return Err(Error::Acyclic { op: "closure" }.into());
        };
        (Some(l), normalize(a, value))
    } else {
        (None, a.clone())
    };
    let result = transitive_closure(&target)?;
    let shortcut_match = if normalized && a.rows() >= 2 && check_pdiag(a, tol)?.verdict {
        Some(pdiagable_gamma_lambda(a, tol)?.approx_eq(&result, tol))
    } else {
        None
    };
    let status = if shortcut_match == Some(false) {
        Status::Invariant
    } else {
        Status::Ok
    };
    let report = ClosureReport {
        normalized,
        lambda,
        closure: result,
        shortcut_match,
    };
    Ok((report, status))
}

pub fn roots(a: &Matrix, k: usize, tol: Tolerance) -> Result<(RootReport, Status), CliError> {
    require_square(a)?;
    if k < 1 {
        return Err(CliError::Usage("--k must be at least 1".into()));
    }
    let condition = root_condition(a, tol)?;
    if let Some(w) = condition.witness {
        let report = RootReport {
            k,
            condition_holds: false,
            witness: Some(w.into()),
            root: None,
            verified: None,
        };
        return Ok((report, Status::Precondition));
    }
    let root = kth_root(a, k, tol)?;
    let verified = root.pow(k)?.approx_eq(a, tol);
    let report = RootReport {
        k,
        condition_holds: true,
        witness: None,
        root: Some(root),
        verified: Some(verified),
    };
    let status = if verified { Status::Ok } else { Status::Invariant };
    Ok((report, status))
}

pub fn counterexample_report(
    diagonal: &str,
    k: usize,
    tol: Tolerance,
) -> Result<(CounterexampleReport, Status), CliError> {
    let d: Vec<f64> = parse_vector(diagonal)?
        .iter()
        .map(|x| x.finite().ok_or(Error::NonFiniteValue { op: "root_counterexample", index: 0 }))
        .collect::<Result<_, _>>()?;
    let c = root_counterexample(k, &d, tol)?;
    let root = Matrix::pdiag(&d);
    let verified = root.pow(k)?.approx_eq(&c.matrix, tol);
    let status = if verified && !c.report.holds {
        Status::Ok
    } else {
        Status::Invariant
    };
    let report = CounterexampleReport {
        k,
        diagonal: d,
        index: c.index + 1,
        matrix: c.matrix,
        condition_holds: c.report.holds,
        witness: c.report.witness.map(Into::into),
        root,
        verified,
    };
    Ok((report, status))
}

pub fn simulate_report(
    a: &Matrix,
    x0: &[MaxPlus],
    steps: usize,
    attr_horizon: Option<usize>,
    tol: Tolerance,
) -> Result<SimulateReport, CliError> {
    let trace = simulate(a, x0, steps, tol)?;
    let attr = match attr_horizon {
        Some(h) => Some(AttrReport::new(in_attr(a, x0, h, tol)?, h)),
        None => None,
    };
    Ok(SimulateReport { steps, trace, attr })
}

pub fn classify(a: &Matrix, tol: Tolerance) -> Result<(SpecialReport, Status), CliError> {
    require_square(a)?;
    let factorization = separable_factor(a, tol)?;
    let nodes = optimal_nodes(a, tol)?;
    let from_diagonal = if a.rows() >= 2 && check_pdiag(a, tol)?.verdict {
        let c = classify_pdiagable_special(a, tol)?;
        Some(DiagonalClassification {
            separable: c.separable,
            optimal_node: c.optimal_node,
            node: c.node.map(|k| k + 1),
        })
    } else {
        None
    };
    let report = SpecialReport {
        separable: factorization.is_some(),
        factorization,
        optimal_nodes: nodes.iter().map(|k| k + 1).collect(),
        from_diagonal,
    };
    let consistent = report.from_diagonal.as_ref().is_none_or(|c| {
        c.separable == report.separable && c.optimal_node == !report.optimal_nodes.is_empty()
    });
    let status = if consistent { Status::Ok } else { Status::Invariant };
    Ok((report, status))
}
