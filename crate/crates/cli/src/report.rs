//! Report types. Each prints as a plain-text block and serializes to JSON.
//! Node indices in reports are 1-based; time steps start at 0.

use std::fmt::{self, Display, Formatter};

use maxplus::mmipp::{AttrVerdict, SimTrace};
use maxplus::pdiag::{StabilityKind, WitnessKind};
use maxplus::text::format_row;
use maxplus::{Matrix, MaxPlus, PdiagWitness, RootWitness, SeparableFactorization, SpectralSummary};
use serde::{Deserialize, Serialize};

fn reals(v: &[f64]) -> String {
    v.iter()
        .map(|&x| MaxPlus::new(x).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn indices(v: &[usize]) -> String {
    if v.is_empty() {
        return "none".into();
    }
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn classes(c: &[Vec<usize>]) -> String {
    if c.is_empty() {
        return "none".into();
    }
    c.iter()
        .map(|class| format!("{{{}}}", class.iter().map(usize::to_string).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn write_matrix(f: &mut Formatter<'_>, label: &str, m: &Matrix) -> fmt::Result {
    writeln!(f, "{label}:")?;
    for i in 0..m.rows() {
        writeln!(f, "  {}", format_row(m.row(i)))?;
    }
    Ok(())
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

/// A failed pseudo-diagonalizability check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub kind: String,
    pub i: usize,
    pub j: usize,
    pub value: MaxPlus,
}

impl From<PdiagWitness> for WitnessReport {
    fn from(w: PdiagWitness) -> Self {
        let kind = match w.kind {
            WitnessKind::Eps => "eps",
            WitnessKind::K => "K",
            WitnessKind::T => "T",
        };
        WitnessReport {
            kind: kind.into(),
            i: w.i + 1,
            j: w.j + 1,
            value: w.value,
        }
    }
}

impl Display for WitnessReport {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self.kind.as_str() {
            "eps" => write!(f, "entry ({},{}) is eps", self.i, self.j),
            k => write!(f, "{k}({},{}) = {} != 0", self.i, self.j, self.value),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PdiagReport {
    pub verdict: bool,
    pub witness: Option<WitnessReport>,
    /// p with diag(p) ⊗ A ⊗ diag(p)^{-1} = pdiag(diagonal).
    pub scaling: Option<Vec<f64>>,
    pub diagonal: Option<Vec<f64>>,
    pub canonical: Option<Matrix>,
}

impl Display for PdiagReport {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        writeln!(f, "pseudo-diagonalizable: {}", self.verdict)?;
        if let Some(w) = &self.witness {
            writeln!(f, "witness: {w}")?;
        }
        if let Some(p) = &self.scaling {
            writeln!(f, "scaling: {}", reals(p))?;
        }
        if let Some(d) = &self.diagonal {
            writeln!(f, "diagonal: {}", reals(d))?;
        }
        if let Some(c) = &self.canonical {
            write_matrix(f, "canonical form", c)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenReport {
    /// "general" or "pseudo-diagonalizable".
    pub method: String,
    pub lambda: MaxPlus,
    pub dimension: usize,
    pub critical_nodes: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
    pub basis: Vec<Vec<MaxPlus>>,
}

impl EigenReport {
    pub fn new(method: &str, s: SpectralSummary) -> Self {
        EigenReport {
            method: method.into(),
            lambda: s.lambda,
            dimension: s.dimension(),
            critical_nodes: one_based(&s.critical_nodes),
            classes: s.classes.iter().map(|c| one_based(c)).collect(),
            basis: s.eigenbasis,
        }
    }
}

impl Display for EigenReport {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        writeln!(f, "eigenvalue: {}", self.lambda)?;
        writeln!(f, "method: {}", self.method)?;
        writeln!(f, "dimension: {}", self.dimension)?;
        writeln!(f, "critical nodes: {}", indices(&self.critical_nodes))?;
        writeln!(f, "critical classes: {}", classes(&self.classes))?;
        writeln!(f, "basis:")?;
        for (k, v) in self.basis.iter().enumerate() {
            writeln!(f, "  v{}: {}", k + 1, format_row(v))?;
        }
        Ok(())
    }
}

/// Separable / optimal-node flags read off the diagonal of a
/// pseudo-diagonalizable matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalClassification {
    pub separable: bool,
    pub optimal_node: bool,
    pub node: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpecialReport {
    pub separable: bool,
    pub factorization: Option<SeparableFactorization>,
    pub optimal_nodes: Vec<usize>,
    pub from_diagonal: Option<DiagonalClassification>,
}

impl Display for SpecialReport {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        writeln!(f, "separable: {}", self.separable)?;
        if let Some(uv) = &self.factorization {
            writeln!(f, "  u: {}", reals(&uv.u))?;
            writeln!(f, "  v: {}", reals(&uv.v))?;
        }
        writeln!(f, "optimal nodes: {}", indices(&self.optimal_nodes))?;
        if let Some(c) = &self.from_diagonal {
            let node = c.node.map_or_else(|| "none".to_string(), |k| k.to_string());
            writeln!(
                f,
                "from diagonal: separable {}, optimal-node {} (node {node})",
                c.separable, c.optimal_node
            )?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StabilityInfo {
    pub kind: StabilityKind,
    /// The attraction set in the input's coordinates.
    pub attraction: String,
}

impl Display for StabilityInfo {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            StabilityKind::StronglyStable => "strongly stable",
            StabilityKind::WeaklyStable => "weakly stable",
        };
        writeln!(f, "stability: {kind}; attracts {}", self.attraction)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub rows: usize,
    pub cols: usize,
    pub finite: bool,
    pub lambda: MaxPlus,
    pub cyclicity: Option<usize>,
    pub pdiag: PdiagReport,
    pub spectral: Option<EigenReport>,
    pub special: Option<SpecialReport>,
    pub stability: Option<StabilityInfo>,
}

impl Display for AnalysisReport {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        writeln!(f, "shape: {}x{}", self.rows, self.cols)?;
        writeln!(f, "finite: {}", self.finite)?;
        writeln!(f, "max cycle mean: {}", self.lambda)?;
        if let Some(c) = self.cyclicity {
            writeln!(f, "cyclicity: {c}")?;
        }
        write!(f, "{}", self.pdiag)?;
        if let Some(s) = &self.spectral {
            write!(f, "{s}")?;
        }
        if let Some(s) = &self.special {
            write!(f, "{s}")?;
        }
        if let Some(s) = &self.stability {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerReport {
    pub k: usize,
    pub iterated: Matrix,
    pub closed_form: Option<Matrix>,
    #[serde(rename = "match")]
    pub matches: Option<bool>,
}

impl Display for PowerReport {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        writeln!(f, "k: {}", self.k)?;
        write_matrix(f, "iterated", &self.iterated)?;
        if let Some(c) = &self.closed_form {
            write_matrix(f, "closed form", c)?;
        }
        if let Some(m) = self.matches {
            writeln!(f, "match: {m}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosureReport {
    pub normalized: bool,
    pub lambda: Option<MaxPlus>,
    pub closure: Matrix,
    /// Agreement with the pseudo-diagonalizable shortcut, when it applies.
    pub shortcut_match: Option<bool>,
}

impl Display for ClosureReport {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        if let Some(l) = self.lambda {
            writeln!(f, "normalized by: {l}")?;
        }
        write_matrix(f, "closure", &self.closure)?;
        if let Some(m) = self.shortcut_match {
            writeln!(f, "shortcut match: {m}")?;
        }
        Ok(())
    }
}

/// A violated root-condition triple, 1-based.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootWitnessReport {
    pub i: usize,
    pub j: usize,
    pub t: usize,
    pub lhs: f64,
    pub rhs: f64,
}

impl From<RootWitness> for RootWitnessReport {
    fn from(w: RootWitness) -> Self {
        RootWitnessReport {
            i: w.i + 1,
            j: w.j + 1,
            t: w.t + 1,
            lhs: w.lhs,
            rhs: w.rhs,
        }
    }
}

impl Display for RootWitnessReport {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(i,j,t) = ({},{},{}): a_ij + a_tt = {} < a_it + a_tj = {}",
            self.i,
            self.j,
            self.t,
            MaxPlus::new(self.lhs),
            MaxPlus::new(self.rhs)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootReport {
    pub k: usize,
    pub condition_holds: bool,
    pub witness: Option<RootWitnessReport>,
    pub root: Option<Matrix>,
    pub verified: Option<bool>,
}

impl Display for RootReport {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        writeln!(f, "k: {}", self.k)?;
        writeln!(f, "root condition: {}", if self.condition_holds { "holds" } else { "fails" })?;
        if let Some(w) = &self.witness {
            writeln!(f, "witness: {w}")?;
        }
        if let Some(r) = &self.root {
            write_matrix(f, "root", r)?;
        }
        if let Some(v) = self.verified {
            writeln!(f, "verified: {v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub k: usize,
    pub diagonal: Vec<f64>,
    pub index: usize,
    pub matrix: Matrix,
    pub condition_holds: bool,
    pub witness: Option<RootWitnessReport>,
    /// pdiag(diagonal), a k-th root of `matrix`.
    pub root: Matrix,
    pub verified: bool,
}

impl Display for CounterexampleReport {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        writeln!(f, "k: {}", self.k)?;
        writeln!(f, "diagonal: {}", reals(&self.diagonal))?;
        writeln!(f, "qualifying index: {}", self.index)?;
        write_matrix(f, "matrix", &self.matrix)?;
        writeln!(f, "root condition: {}", if self.condition_holds { "holds" } else { "fails" })?;
        if let Some(w) = &self.witness {
            writeln!(f, "witness: {w}")?;
        }
        write_matrix(f, "root", &self.root)?;
        writeln!(f, "verified: {}", self.verified)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AttrReport {
    pub horizon: usize,
    pub member: bool,
    pub step: Option<usize>,
}

impl AttrReport {
    pub fn new(verdict: AttrVerdict, horizon: usize) -> Self {
        let step = match verdict {
            AttrVerdict::Member { step } => Some(step),
            AttrVerdict::NotWithin { .. } => None,
        };
        AttrReport {
            horizon,
            member: step.is_some(),
            step,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimulateReport {
    pub steps: usize,
    pub trace: SimTrace,
    pub attr: Option<AttrReport>,
}

impl Display for SimulateReport {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.trace.to_text())?;
        if let Some(a) = &self.attr {
            match a.step {
                Some(s) => writeln!(f, "# attr: eigenvector at step {s}")?,
                None => writeln!(f, "# attr: not within {}", a.horizon)?,
            }
        }
        Ok(())
    }
}
