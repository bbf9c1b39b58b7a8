use std::f64::consts::SQRT_2;
use std::ops::RangeInclusive;

use ecctree::closed_forms::{self as cf, Verdict};
use ecctree::enumeration::{
    canonical_code, extremal_search_with_cap, verify_inertia_with_tol, verify_orderings, verify_prior_results,
    Statistic, TreeFilter,
};
use ecctree::FamilySpec;

use crate::commands::{CliError, Options};
use crate::report::{round_sig, Cell, Report, Section};

/// Tolerance for comparing an extremal value with its closed form.
const VALUE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Check {
    /// Inertia of every tree predicted from its diameter.
    Inertia,
    /// Minimum of xi2 over non-star trees.
    Xi2Min,
    /// Minimum E-energy over all trees.
    EnergyMin,
    /// Strict xi orderings within caterpillar families.
    Orderings,
    /// Known spectral-radius minimisers and inequalities.
    Prior,
    /// Closed-form bounds over a grid of orders.
    Bounds,
    /// Printed versus corrected constants, decided by eigensolves.
    Typos,
}

impl Check {
    fn name(self) -> &'static str {
        match self {
            Self::Inertia => "inertia",
            Self::Xi2Min => "xi2-min",
            Self::EnergyMin => "energy-min",
            Self::Orderings => "orderings",
            Self::Prior => "prior",
            Self::Bounds => "bounds",
            Self::Typos => "typos",
        }
    }

    /// Default range and smallest admissible order.
    fn domain(self) -> (RangeInclusive<usize>, usize) {
        match self {
            Self::Inertia => (4..=12, 4),
            Self::Xi2Min => (5..=12, 5),
            Self::EnergyMin => (2..=12, 2),
            Self::Orderings => (6..=20, 4),
            Self::Prior => (5..=12, 4),
            Self::Bounds => (4..=10_000, 4),
            Self::Typos => (0..=0, 0),
        }
    }

    fn enumerates(self) -> bool {
        matches!(self, Self::Inertia | Self::Xi2Min | Self::EnergyMin | Self::Prior)
    }
}

/// Parses `7`, `5..11` or `5..=11`; both ends are inclusive.
pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("bad range bound `{t}`: {e}"));
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (num(lo)?, num(hi.strip_prefix('=').unwrap_or(hi))?),
        None => {
            let n = num(s)?;
            (n, n)
        }
    };
    if lo > hi {
        return Err(format!("empty range `{s}`"));
    }
    Ok(lo..=hi)
}

type Row = Vec<Cell>;

fn row(check: &str, scope: String, pass: bool, margin: Option<f64>, detail: String) -> Row {
    vec![check.into(), scope.into(), pass.into(), Cell::opt_float(margin), detail.into()]
}

fn fmt(x: f64) -> String {
    round_sig(x).to_string()
}

fn code_of(spec: FamilySpec) -> Result<String, CliError> {
    Ok(canonical_code(&spec.build()?))
}

fn inertia(n: usize, opts: &Options) -> Result<Row, CliError> {
    let r = verify_inertia_with_tol(n, opts.cap, opts.exec, opts.tol)?;
    let mut detail = format!("{} trees, {} failures", r.trees, r.failures.len());
    if let Some(f) = r.failures.first() {
        let (e, o) = (f.expected, f.observed);
        detail += &format!(
            "; first {} expected ({}, {}, {}) observed ({}, {}, {})",
            f.code, e.n_plus, e.n_minus, e.n_zero, o.n_plus, o.n_minus, o.n_zero
        );
    }
    Ok(row("inertia", format!("n={n}"), r.pass(), None, detail))
}

/// Exhaustive minimum of `stat` compared with the expected tree and its closed-form value.
fn minimum(
    check: &str,
    n: usize,
    stat: Statistic,
    filter: TreeFilter,
    expected: FamilySpec,
    closed: Option<f64>,
    opts: &Options,
) -> Result<Row, CliError> {
    let r = extremal_search_with_cap(n, opts.cap, stat, filter, opts.exec)?;
    let winner = r.winner();
    let is_expected = winner.code == code_of(expected)?;
    let error = closed.map(|c| (winner.value - c).abs());
    let pass = r.unique && is_expected && error.is_none_or(|e| e <= VALUE_TOL);
    let at = if is_expected { expected.to_string() } else { winner.code.clone() };
    let mut detail = format!("{} trees, minimum {} at {at}", r.trees_examined, fmt(winner.value));
    if let (Some(c), Some(e)) = (closed, error) {
        detail += &format!(", closed form {} (error {e:.1e})", fmt(c));
    }
    if !r.unique {
        detail += &format!(", {} tied", r.winners.len());
    }
    Ok(row(check, format!("n={n}"), pass, r.margin, detail))
}

fn xi2_min(n: usize, opts: &Options) -> Result<Row, CliError> {
    let closed = cf::xi2_diam3(n, 0)?;
    minimum("xi2-min", n, Statistic::Xi2, TreeFilter::exclude_star(), FamilySpec::odd(3, 0, n - 4), Some(closed), opts)
}

fn energy_min(n: usize, opts: &Options) -> Result<Row, CliError> {
    let (expected, closed) = match n {
        2 => (FamilySpec::Star { n }, Some(2.0)),
        3..=4 => (FamilySpec::Star { n }, Some(cf::star_spectrum(n)?.energy())),
        _ => (FamilySpec::odd(3, 0, n - 4), Some(cf::energy_t_n3(n)?)),
    };
    minimum("energy-min", n, Statistic::Energy, TreeFilter::all(), expected, closed, opts)
}

fn orderings(n: usize) -> Result<Vec<Row>, CliError> {
    let mut rows = Vec::new();
    for d in [3, 5, 6, 7] {
        if n < d + 1 {
            continue;
        }
        let r = verify_orderings(n, d)?;
        let detail = format!(
            "chain of {} trees ordered by {}, max disagreement {:.1e}",
            r.chain.len(),
            r.statistic,
            r.max_disagreement
        );
        rows.push(row("orderings", format!("n={n},d={d}"), r.pass, r.min_margin, detail));
    }
    Ok(rows)
}

fn prior(n: usize, opts: &Options) -> Result<Vec<Row>, CliError> {
    let r = verify_prior_results(n, opts.cap, opts.exec)?;
    Ok(r.claims.into_iter().map(|c| row(c.claim, format!("n={n},{}", c.scope), c.pass, c.margin, c.detail)).collect())
}

fn bounds(range: &RangeInclusive<usize>) -> Result<Vec<Row>, CliError> {
    let (lo, hi) = (*range.start(), *range.end());
    let mut rows = Vec::new();
    let mut slack = f64::INFINITY;
    let mut pass = true;
    for n in lo.max(4)..=hi {
        pass &= cf::xi2_sqrt2_bound(n);
        slack = slack.min(SQRT_2 - cf::xi2_diam3(n, 0)?);
    }
    rows.push(row(
        "xi2-below-sqrt2",
        format!("n={}..{hi}", lo.max(4)),
        pass,
        Some(slack),
        "xi2(T(n,3;0,n-4)) < sqrt(2)".into(),
    ));
    if hi >= 5 {
        let (mut slack, mut pass) = (f64::INFINITY, true);
        for n in lo.max(5)..=hi {
            let (below, above) = cf::xi1_bounds_t_n3(n)?;
            let x = cf::xi1_t_n3(n)?;
            pass &= cf::xi1_bounds_exact(n) && below < x && x < above;
            slack = slack.min((x - below).min(above - x));
        }
        let detail = "sqrt(13n-37) < xi1(T(n,3;0,n-4)) < sqrt(13n-36)".to_owned();
        rows.push(row("xi1-sandwich", format!("n={}..{hi}", lo.max(5)), pass, Some(slack), detail));
    }
    let (mut slack, mut pass) = (f64::INFINITY, true);
    for d in lo.max(4)..=hi {
        pass &= cf::lambda2_exceeds_sqrt2_exact(d);
        slack = slack.min(cf::xi2_floor_d_ge_4(d)? - SQRT_2);
    }
    let detail = "second eigenvalue of the diametrical block exceeds sqrt(2)".to_owned();
    rows.push(row("lambda2-above-sqrt2", format!("d={}..{hi}", lo.max(4)), pass, Some(slack), detail));
    Ok(rows)
}

fn typos(report: &mut Report) -> Vec<Row> {
    let mut rows = Vec::new();
    let mut table = Vec::new();
    for d in cf::adjudicate_all() {
        let decided = matches!(d.verdict, Verdict::Printed | Verdict::Derived);
        let verdict = match d.verdict {
            Verdict::Printed => "printed form matches",
            Verdict::Derived => "corrected form matches",
            Verdict::Both => "both forms match",
            Verdict::Neither => "neither form matches",
        };
        let detail = format!(
            "printed {} (max error {:.1e}) vs corrected {} (max error {:.1e}): {verdict}",
            d.printed.form, d.printed.max_error, d.derived.form, d.derived.max_error
        );
        rows.push(row(d.id.name(), format!("{} trees", d.instances.len()), decided, None, detail));
        table.push(vec![
            d.id.name().into(),
            d.quantity.clone().into(),
            d.printed.form.clone().into(),
            d.printed.max_error.into(),
            d.derived.form.clone().into(),
            d.derived.max_error.into(),
            match d.verdict {
                Verdict::Printed => "printed",
                Verdict::Derived => "corrected",
                Verdict::Both => "both",
                Verdict::Neither => "neither",
            }
            .into(),
        ]);
    }
    report.push(Section::table(
        "discrepancies",
        &["id", "quantity", "printed", "printed_error", "corrected", "corrected_error", "verdict"],
        table,
    ));
    rows
}

/// Runs `check` over `range` and reports whether every row passed.
pub fn verify(
    check: Check,
    range: Option<RangeInclusive<usize>>,
    opts: &Options,
    report: &mut Report,
) -> Result<bool, CliError> {
    let (default, min) = check.domain();
    if check == Check::Typos && range.is_some() {
        return Err(CliError::Usage("verify typos takes no range".into()));
    }
    let range = range.unwrap_or(default);
    if check != Check::Typos {
        if *range.start() < min {
            return Err(CliError::Usage(format!("verify {} needs n >= {min}", check.name())));
        }
        if check.enumerates() && *range.end() > opts.cap {
            return Err(CliError::Usage(format!(
                "n = {} exceeds the enumeration cap {}; raise it with --cap",
                range.end(),
                opts.cap
            )));
        }
    }
    report.input("check", check.name());
    if check != Check::Typos {
        report.input("range", format!("{}..{}", range.start(), range.end()));
    }
    if check.enumerates() {
        report.input("cap", opts.cap);
    }
    if let (Check::Inertia, Some(tol)) = (check, opts.tol) {
        report.input("tol", tol);
    }

    let mut rows = Vec::new();
    match check {
        Check::Inertia => {
            for n in range {
                rows.push(inertia(n, opts)?);
            }
        }
        Check::Xi2Min => {
            for n in range {
                rows.push(xi2_min(n, opts)?);
            }
        }
        Check::EnergyMin => {
            for n in range {
                rows.push(energy_min(n, opts)?);
            }
        }
        Check::Orderings => {
            for n in range {
                rows.extend(orderings(n)?);
            }
        }
        Check::Prior => {
            for n in range {
                rows.extend(prior(n, opts)?);
            }
        }
        Check::Bounds => rows = bounds(&range)?,
        Check::Typos => rows = typos(report),
    }
    let passed = rows.iter().filter(|r| r[2] == Cell::Bool(true)).count();
    let failed = rows.len() - passed;
    report.sections.insert(0, Section::table("checks", &["check", "scope", "pass", "margin", "detail"], rows));
    report.push(Section::fields(
        "summary",
        vec![
            ("checks", (passed + failed).into()),
            ("passed", passed.into()),
            ("failed", failed.into()),
            ("status", if failed == 0 { "pass" } else { "fail" }.into()),
        ],
    ));
    Ok(failed == 0)
}
