use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use ecctree::closed_forms::{ClosedFormError, IntPolynomial};
use ecctree::enumeration::{rank_trees, EnumerationError, Execution, Statistic, TreeFilter};
use ecctree::partitions::{
    char_poly_exact, char_poly_scaled, is_equitable, nontrivial_factor, quotient, spectrum_contained, PartitionError,
    VertexPartition,
};
use ecctree::spectral::sym_eigenvalues;
use ecctree::{FamilyError, FamilySpec, Graph, GraphError, SpectralError};
use thiserror::Error;

use crate::report::{Cell, Report, Section};

/// Everything here maps to exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read `{}`: {source}", path.display())]
    Read { path: PathBuf, source: io::Error },
    #[error("cannot write `{}`: {source}", path.display())]
    Write { path: PathBuf, source: io::Error },
    #[error("`{}`: {source}", path.display())]
    EdgeList { path: PathBuf, source: GraphError },
    #[error("`{}`: {source}", path.display())]
    PartitionFile { path: PathBuf, source: PartitionError },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    ClosedForm(#[from] ClosedFormError),
}

#[derive(Debug, Clone, Copy)]
pub struct Options {
    pub tol: Option<f64>,
    pub cap: usize,
    pub exec: Execution,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_owned(), source })
}

fn read_graph(path: &Path) -> Result<Graph, CliError> {
    Graph::parse_edge_list(&read(path)?).map_err(|source| CliError::EdgeList { path: path.to_owned(), source })
}

/// An existing file is read as an edge list; anything else must be a family string.
fn load_graph(input: &str) -> Result<(Graph, &'static str), CliError> {
    let path = Path::new(input);
    if path.is_file() {
        return Ok((read_graph(path)?, "edge-list"));
    }
    if input.contains(':') {
        let spec: FamilySpec = input.parse()?;
        return Ok((spec.build()?, "family"));
    }
    Err(CliError::Usage(format!("`{input}` is neither an edge-list file nor a family string such as star:n=5")))
}

pub fn spectrum(input: &str, matrix: bool, opts: &Options, report: &mut Report) -> Result<(), CliError> {
    let (graph, source) = load_graph(input)?;
    report.input("input", input);
    report.input("source", source);
    if let Some(tol) = opts.tol {
        report.input("tol", tol);
    }
    let m = graph.eccentricity_matrix();
    let mut spectrum = sym_eigenvalues(&m)?;
    if let Some(tol) = opts.tol {
        spectrum = spectrum.with_zero_tol(tol);
    }
    let tol = spectrum.zero_tol();
    let shown = spectrum.values().iter().map(|&x| if x.abs() <= tol { 0.0 } else { x });
    let inertia = spectrum.inertia();
    let xi2 = if graph.order() >= 2 { Some(spectrum.xi(2)?) } else { None };
    report.push(Section::fields(
        "summary",
        vec![
            ("order", graph.order().into()),
            ("edges", graph.edges().len().into()),
            ("tree", graph.is_tree().into()),
            ("diameter", (graph.diametrical_path().len() - 1).into()),
            ("zero_tol", Cell::float(tol)),
            ("spectrum", Cell::floats(shown)),
            ("inertia", Cell::List(vec![inertia.n_plus.into(), inertia.n_minus.into(), inertia.n_zero.into()])),
            ("energy", spectrum.energy().into()),
            ("xi1", spectrum.xi(1)?.into()),
            ("xi2", Cell::opt_float(xi2)),
        ],
    ));
    if matrix {
        let rows = m.rows().map(|r| r.iter().map(|&x| Cell::from(x)).collect()).collect();
        report.push(Section::matrix("eccentricity_matrix", rows));
    }
    Ok(())
}

/// `x^k (q)`, or the bare factor when there is no root at zero.
fn factored(k: usize, q: &IntPolynomial) -> String {
    let power = match k {
        0 => return q.to_string(),
        1 => "x".to_owned(),
        _ => format!("x^{k}"),
    };
    if q.coeffs().len() == 1 && q.coeff(0) == 1.into() {
        power
    } else {
        format!("{power} ({q})")
    }
}

pub fn quotient_cmd(graph_path: &Path, partition_path: &Path, report: &mut Report) -> Result<(), CliError> {
    report.input("graph", graph_path.display().to_string());
    report.input("partition", partition_path.display().to_string());
    let graph = read_graph(graph_path)?;
    let pi = VertexPartition::parse(&read(partition_path)?)
        .map_err(|source| CliError::PartitionFile { path: partition_path.to_owned(), source })?;
    if pi.order() != graph.order() {
        return Err(CliError::Usage(format!(
            "partition covers {} vertices but the graph has {}",
            pi.order(),
            graph.order()
        )));
    }
    let m = graph.eccentricity_matrix();
    let q = quotient(&m, &pi)?;
    let equitable = is_equitable(&m, &pi)?;
    let (poly, scale) = if q.is_integral() {
        (char_poly_exact(&q)?, 1.into())
    } else {
        let scaled = char_poly_scaled(&q);
        (scaled.poly, scaled.scale)
    };
    let (k, factor) = nontrivial_factor(&poly);
    let contained = if equitable { Cell::Bool(spectrum_contained(&q, &m, &pi)?) } else { Cell::Null };
    report.push(Section::fields(
        "summary",
        vec![
            ("order", graph.order().into()),
            ("cells", pi.len().into()),
            ("cell_sizes", Cell::List(q.cell_sizes().iter().map(|&s| s.into()).collect())),
            ("equitable", equitable.into()),
            ("integral", q.is_integral().into()),
            ("characteristic_polynomial", poly.to_string().into()),
            ("scale", scale.to_string().into()),
            ("factored", factored(k, &factor).into()),
            ("spectrum_contained", contained),
        ],
    ));
    let rows = (0..q.dim()).map(|i| (0..q.dim()).map(|j| Cell::text(q.get(i, j).to_string())).collect()).collect();
    report.push(Section::matrix("quotient_matrix", rows));
    Ok(())
}

pub struct EnumerateArgs {
    pub n: usize,
    pub statistic: Statistic,
    pub top: usize,
    pub filter: TreeFilter,
}

pub fn enumerate(args: &EnumerateArgs, opts: &Options, report: &mut Report) -> Result<(), CliError> {
    if args.top == 0 {
        return Err(CliError::Usage("--top must be at least 1".into()));
    }
    report.input("n", args.n);
    report.input("statistic", args.statistic.name());
    report.input("top", args.top);
    report.input("exclude_star", args.filter.exclude_star);
    report.input("min_diameter", args.filter.min_diameter.map_or(Cell::Null, Cell::from));
    report.input("max_diameter", args.filter.max_diameter.map_or(Cell::Null, Cell::from));
    report.input("cap", opts.cap);
    let ranked = rank_trees(args.n, opts.cap, args.statistic, args.filter, args.top, opts.exec)?;
    let rows = ranked
        .iter()
        .enumerate()
        .map(|(i, t)| vec![(i + 1).into(), t.code.clone().into(), t.diameter.into(), t.value.into()])
        .collect();
    report.push(Section::table("ranking", &["rank", "code", "diameter", "value"], rows));
    Ok(())
}

pub fn export(family: &str, output: Option<&Path>) -> Result<Option<String>, CliError> {
    let spec: FamilySpec = family.parse()?;
    let text = spec.build()?.to_edge_list();
    match output {
        Some(path) => {
            fs::write(path, text).map_err(|source| CliError::Write { path: path.to_owned(), source })?;
            Ok(None)
        }
        None => Ok(Some(text)),
    }
}
