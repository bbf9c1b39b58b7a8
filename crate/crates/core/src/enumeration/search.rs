use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{free_trees_with_cap, CanonicalTree, EnumerationError};
use crate::graph::Graph;
use crate::spectral::{sym_eigenvalues, SpectralError, Spectrum};

/// Values closer than this to the minimum are treated as tied.
pub const TIE_TOL: f64 = 1e-9;

/// Trees handed to the worker pool at a time.
const CHUNK: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistic {
    Xi1,
    Xi2,
    Energy,
}

impl Statistic {
    pub fn name(self) -> &'static str {
        match self {
            Self::Xi1 => "xi1",
            Self::Xi2 => "xi2",
            Self::Energy => "energy",
        }
    }

    pub fn of(self, s: &Spectrum) -> Result<f64, SpectralError> {
        match self {
            Self::Xi1 => s.xi(1),
            Self::Xi2 => s.xi(2),
            Self::Energy => Ok(s.energy()),
        }
    }

    pub fn of_tree(self, tree: &Graph) -> Result<f64, SpectralError> {
        self.of(&sym_eigenvalues(&tree.eccentricity_matrix())?)
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Statistic {
    type Err = EnumerationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "xi1" => Ok(Self::Xi1),
            "xi2" => Ok(Self::Xi2),
            "energy" => Ok(Self::Energy),
            other => Err(EnumerationError::UnknownStatistic(other.to_owned())),
        }
    }
}

/// Which trees take part in a search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct TreeFilter {
    pub exclude_star: bool,
    pub min_diameter: Option<usize>,
    pub max_diameter: Option<usize>,
}

impl TreeFilter {
    pub fn all() -> Self {
        Self::default()
    }

    pub fn exclude_star() -> Self {
        Self { exclude_star: true, ..Self::default() }
    }

    pub fn diameter_range(lo: usize, hi: usize) -> Self {
        Self { exclude_star: false, min_diameter: Some(lo), max_diameter: Some(hi) }
    }

    pub fn accepts(&self, tree: &CanonicalTree) -> bool {
        if self.exclude_star && tree.tree().is_star() {
            return false;
        }
        if self.min_diameter.is_none() && self.max_diameter.is_none() {
            return true;
        }
        let d = tree.diameter();
        self.min_diameter.is_none_or(|lo| d >= lo) && self.max_diameter.is_none_or(|hi| d <= hi)
    }
}

/// How statistic evaluation is scheduled. Without the `parallel` feature both
/// variants run on the calling thread.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankedTree {
    pub code: String,
    pub diameter: usize,
    pub value: f64,
    pub edges: Vec<(usize, usize)>,
}

impl RankedTree {
    fn new(tree: &CanonicalTree, value: f64) -> Self {
        Self { code: tree.code().to_owned(), diameter: tree.diameter(), value, edges: tree.tree().edges().to_vec() }
    }

    pub fn to_graph(&self) -> Graph {
        Graph::from_edge_list(self.edges.len() + 1, &self.edges).expect("ranked trees are valid trees")
    }
}

fn rank_order(a: &RankedTree, b: &RankedTree) -> Ordering {
    a.value.total_cmp(&b.value).then_with(|| a.code.cmp(&b.code))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremalReport {
    pub n: usize,
    pub statistic: Statistic,
    pub filter: TreeFilter,
    pub trees_examined: usize,
    /// All trees within [`TIE_TOL`] of the minimum, in (value, code) order.
    pub winners: Vec<RankedTree>,
    pub runner_up: Option<RankedTree>,
    /// Gap between the minimum and the runner-up, when there is one.
    pub margin: Option<f64>,
    pub unique: bool,
}

impl ExtremalReport {
    pub fn winner(&self) -> &RankedTree {
        &self.winners[0]
    }
}

/// Evaluates `f` over `items`, on the rayon pool when requested.
pub(crate) fn map_items<T, R, F>(items: &[T], exec: Execution, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

/// Streams the free trees of order `n` in chunks, evaluating `stat` on those
/// accepted by `filter`, and hands each evaluated chunk to `sink`.
fn scan<S>(
    n: usize,
    cap: usize,
    stat: Statistic,
    filter: TreeFilter,
    exec: Execution,
    mut sink: S,
) -> Result<usize, EnumerationError>
where
    S: FnMut(Vec<RankedTree>),
{
    let mut trees = free_trees_with_cap(n, cap)?;
    let mut examined = 0;
    loop {
        let raw: Vec<CanonicalTree> = trees.by_ref().take(CHUNK).collect();
        let exhausted = raw.len() < CHUNK;
        let chunk: Vec<CanonicalTree> = raw.into_iter().filter(|t| filter.accepts(t)).collect();
        examined += chunk.len();
        let ranked = map_items(&chunk, exec, |t| stat.of_tree(t.tree()).map(|v| RankedTree::new(t, v)));
        sink(ranked.into_iter().collect::<Result<Vec<_>, _>>()?);
        if exhausted {
            return Ok(examined);
        }
    }
}

/// Keeps the trees within `TIE_TOL` of the minimum plus the best tree outside that band.
fn reduce_extremal(mut pool: Vec<RankedTree>) -> Vec<RankedTree> {
    pool.sort_by(rank_order);
    let Some(min) = pool.first().map(|t| t.value) else {
        return pool;
    };
    let ties = pool.iter().take_while(|t| t.value - min <= TIE_TOL).count();
    pool.truncate(ties + 1);
    pool
}

pub fn extremal_search(
    n: usize,
    stat: Statistic,
    filter: TreeFilter,
    exec: Execution,
) -> Result<ExtremalReport, EnumerationError> {
    extremal_search_with_cap(n, super::DEFAULT_CAP, stat, filter, exec)
}

pub fn extremal_search_with_cap(
    n: usize,
    cap: usize,
    stat: Statistic,
    filter: TreeFilter,
    exec: Execution,
) -> Result<ExtremalReport, EnumerationError> {
    let mut best: Vec<RankedTree> = Vec::new();
    let examined = scan(n, cap, stat, filter, exec, |chunk| {
        best.extend(chunk);
        best = reduce_extremal(std::mem::take(&mut best));
    })?;
    if best.is_empty() {
        return Err(EnumerationError::NoCandidates { n });
    }
    let min = best[0].value;
    let split = best.iter().take_while(|t| t.value - min <= TIE_TOL).count();
    let runner_up = best.get(split).cloned();
    best.truncate(split);
    let margin = runner_up.as_ref().map(|r| r.value - min);
    Ok(ExtremalReport {
        n,
        statistic: stat,
        filter,
        trees_examined: examined,
        unique: best.len() == 1,
        winners: best,
        runner_up,
        margin,
    })
}

/// The `top_k` smallest trees by `(value, code)`.
pub fn rank_trees(
    n: usize,
    cap: usize,
    stat: Statistic,
    filter: TreeFilter,
    top_k: usize,
    exec: Execution,
) -> Result<Vec<RankedTree>, EnumerationError> {
    let mut best: Vec<RankedTree> = Vec::new();
    scan(n, cap, stat, filter, exec, |chunk| {
        best.extend(chunk);
        best.sort_by(rank_order);
        best.truncate(top_k);
    })?;
    Ok(best)
}
