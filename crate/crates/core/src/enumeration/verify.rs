use serde::Serialize;

use super::search::{map_items, Execution};
use super::{canonical_code, centers, free_trees_with_cap, CanonicalTree, EnumerationError};
use crate::closed_forms as cf;
use crate::families::FamilySpec;
use crate::graph::Graph;
use crate::spectral::{sym_eigenvalues, Inertia};

/// Adjacent members of an ordering chain must differ by more than this.
pub const CHAIN_MARGIN: f64 = 1e-10;

/// Closed-form chain values must agree with the eigensolve within this.
pub const AGREEMENT_TOL: f64 = 1e-8;

/// Winner values in the prior-results checks are compared to closed forms within this.
const VALUE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InertiaFailure {
    pub code: String,
    pub diameter: usize,
    pub expected: Inertia,
    pub observed: Inertia,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InertiaReport {
    pub n: usize,
    pub trees: usize,
    pub passed: usize,
    pub failures: Vec<InertiaFailure>,
}

impl InertiaReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Number of center neighbours whose branch reaches depth `radius - 1`.
pub fn central_branch_count(tree: &Graph) -> usize {
    let c = centers(tree);
    assert_eq!(c.len(), 1, "even diameter trees have one center");
    let center = c[0];
    let dist = tree.bfs(center);
    let radius = dist.iter().copied().max().unwrap_or(0);
    tree.neighbors(center)
        .iter()
        .filter(|&&u| {
            // depth of the branch through u, measured from u
            let mut stack = vec![u];
            let mut seen = vec![false; tree.order()];
            seen[center] = true;
            seen[u] = true;
            let mut deepest = 0;
            while let Some(x) = stack.pop() {
                deepest = deepest.max(dist[x] - 1);
                for &y in tree.neighbors(x) {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            deepest + 1 == radius
        })
        .count()
}

/// Inertia predicted from the diameter alone: `(2, 2, n - 4)` for odd
/// diameter, `(l, l, n - 2l)` for even diameter at least 4, and the star's
/// `(1, n - 1, 0)`.
pub fn predicted_inertia(tree: &Graph) -> Inertia {
    let n = tree.order();
    let diameter = tree.diametrical_path().len() - 1;
    match diameter {
        0 => Inertia::new(0, 0, 1),
        d if d % 2 == 1 => Inertia::new(2, 2, n - 4),
        2 => Inertia::new(1, n - 1, 0),
        _ => {
            let l = central_branch_count(tree);
            Inertia::new(l, l, n - 2 * l)
        }
    }
}

pub fn verify_inertia(n: usize, cap: usize, exec: Execution) -> Result<InertiaReport, EnumerationError> {
    verify_inertia_with_tol(n, cap, exec, None)
}

/// Like [`verify_inertia`], classifying eigenvalues with `zero_tol` instead of the default threshold.
pub fn verify_inertia_with_tol(
    n: usize,
    cap: usize,
    exec: Execution,
    zero_tol: Option<f64>,
) -> Result<InertiaReport, EnumerationError> {
    if n < 4 {
        return Err(EnumerationError::OrderTooSmall { n, min: 4 });
    }
    let trees: Vec<CanonicalTree> = free_trees_with_cap(n, cap)?.collect();
    let outcomes = map_items(&trees, exec, |t| {
        let mut spectrum = sym_eigenvalues(&t.tree().eccentricity_matrix())?;
        if let Some(tol) = zero_tol {
            spectrum = spectrum.with_zero_tol(tol);
        }
        let observed = spectrum.inertia();
        let expected = predicted_inertia(t.tree());
        Ok::<_, EnumerationError>((observed == expected).then_some(()).ok_or_else(|| InertiaFailure {
            code: t.code().to_owned(),
            diameter: t.diameter(),
            expected,
            observed,
        }))
    });
    let mut failures = Vec::new();
    for o in outcomes {
        if let Err(f) = o? {
            failures.push(f);
        }
    }
    Ok(InertiaReport { n, trees: trees.len(), passed: trees.len() - failures.len(), failures })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainMember {
    pub tree: String,
    pub formula: f64,
    pub eigensolve: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderingReport {
    pub n: usize,
    pub d: usize,
    pub statistic: &'static str,
    pub chain: Vec<ChainMember>,
    /// Smallest gap between consecutive members; `None` for one-member chains.
    pub min_margin: Option<f64>,
    pub max_disagreement: f64,
    pub pass: bool,
}

/// Family members in the order the chain claims is strictly increasing.
pub fn ordering_chain(n: usize, d: usize) -> Result<Vec<FamilySpec>, EnumerationError> {
    let bad = |msg: String| EnumerationError::Family(crate::families::FamilyError::InvalidFamilyParameters(msg));
    if n < d + 1 {
        return Err(bad(format!("no tree of order {n} has diameter {d}")));
    }
    let m = n - d - 1;
    match d {
        3 => {
            if n < 4 {
                return Err(bad(format!("order {n} too small")));
            }
            Ok((0..=m / 2).map(|a| FamilySpec::odd(3, a, m - a)).collect())
        }
        d if d >= 5 && d % 2 == 1 => Ok((0..=m / 2).rev().map(|a| FamilySpec::odd(d, a, m - a)).collect()),
        d if d >= 6 => Ok((0..=m)
            .map(|b| {
                let rest = m - b;
                FamilySpec::even(d, rest / 2, b, rest.div_ceil(2))
            })
            .collect()),
        _ => Err(bad(format!("no ordering chain for diameter {d}"))),
    }
}

fn formula_value(spec: &FamilySpec) -> Result<f64, EnumerationError> {
    Ok(match *spec {
        FamilySpec::OddCaterpillar { n, d: 3, a, .. } => cf::xi2_diam3(n, a)?,
        FamilySpec::OddCaterpillar { d, a, b, .. } => cf::xi1_odd_quartic(d, a, b)?.largest_root()?,
        FamilySpec::EvenCaterpillar { d, a, b, c, .. } => cf::xi1_even_quartic(d, a, b, c)?.largest_root()?,
        _ => unreachable!("chains hold caterpillars"),
    })
}

/// Checks the strict ordering of the diameter-`d` caterpillars of order `n`:
/// by `xi_2` for `d = 3`, by `xi_1` for `d >= 5`.
pub fn verify_orderings(n: usize, d: usize) -> Result<OrderingReport, EnumerationError> {
    let specs = ordering_chain(n, d)?;
    let k = if d == 3 { 2 } else { 1 };
    let mut chain = Vec::with_capacity(specs.len());
    for spec in &specs {
        let g = spec.build()?;
        let eig = sym_eigenvalues(&g.eccentricity_matrix())?.xi(k)?;
        chain.push(ChainMember { tree: spec.to_string(), formula: formula_value(spec)?, eigensolve: eig });
    }
    let min_margin = chain.windows(2).map(|w| w[1].formula - w[0].formula).reduce(f64::min);
    let max_disagreement = chain.iter().map(|m| (m.formula - m.eigensolve).abs()).fold(0.0, f64::max);
    let pass = min_margin.is_none_or(|m| m > CHAIN_MARGIN) && max_disagreement <= AGREEMENT_TOL;
    Ok(OrderingReport {
        n,
        d,
        statistic: if k == 2 { "xi2" } else { "xi1" },
        chain,
        min_margin,
        max_disagreement,
        pass,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimResult {
    pub claim: &'static str,
    pub scope: String,
    pub pass: bool,
    /// Smallest slack observed; positive when the claim holds strictly.
    pub margin: Option<f64>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PriorReport {
    pub n: usize,
    pub claims: Vec<ClaimResult>,
}

impl PriorReport {
    pub fn pass(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }
}

struct Scored {
    code: String,
    diameter: usize,
    xi1: f64,
}

/// Unique minimiser among `pool`, compared against `expected`.
fn argmin_claim(claim: &'static str, scope: String, pool: &[&Scored], expected: &FamilySpec) -> ClaimResult {
    let mut sorted: Vec<&&Scored> = pool.iter().collect();
    sorted.sort_by(|a, b| a.xi1.total_cmp(&b.xi1).then_with(|| a.code.cmp(&b.code)));
    let want = canonical_code(&expected.build_unchecked().expect("expected extremal tree is valid"));
    let margin = sorted.get(1).map(|r| r.xi1 - sorted[0].xi1);
    let is_expected = sorted.first().is_some_and(|w| w.code == want);
    let unique = margin.is_none_or(|m| m > super::TIE_TOL);
    ClaimResult {
        claim,
        scope,
        pass: is_expected && unique,
        margin,
        detail: format!("expected {expected}, minimum {}", sorted.first().map_or(f64::NAN, |w| w.xi1)),
    }
}

fn xi1_of(spec: &FamilySpec) -> Result<f64, EnumerationError> {
    Ok(sym_eigenvalues(&spec.build_unchecked()?.eccentricity_matrix())?.xi(1)?)
}

/// Pairwise claim `xi1(smaller) < xi1(larger)` over a family grid.
fn pairwise_claim(
    claim: &'static str,
    scope: String,
    pairs: Vec<(FamilySpec, FamilySpec)>,
) -> Result<ClaimResult, EnumerationError> {
    let mut margin: Option<f64> = None;
    let mut worst = String::new();
    for (lo, hi) in &pairs {
        let gap = xi1_of(hi)? - xi1_of(lo)?;
        if margin.is_none_or(|m| gap < m) {
            margin = Some(gap);
            worst = format!("{lo} < {hi}");
        }
    }
    Ok(ClaimResult {
        claim,
        scope,
        pass: margin.is_none_or(|m| m > 0.0),
        margin,
        detail: format!("{} pairs, tightest {worst}", pairs.len()),
    })
}

/// Re-checks the known spectral-radius results at order `n`: the diameter
/// 2..4 minimiser, the minimisers for each fixed diameter, the global lower
/// bound and the two diameter-reduction inequalities.
pub fn verify_prior_results(n: usize, cap: usize, exec: Execution) -> Result<PriorReport, EnumerationError> {
    if n < 4 {
        return Err(EnumerationError::OrderTooSmall { n, min: 4 });
    }
    let trees: Vec<CanonicalTree> = free_trees_with_cap(n, cap)?.collect();
    let scored = map_items(&trees, exec, |t| {
        Ok::<_, EnumerationError>(Scored {
            code: t.code().to_owned(),
            diameter: t.diameter(),
            xi1: sym_eigenvalues(&t.tree().eccentricity_matrix())?.xi(1)?,
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;

    let mut claims = Vec::new();
    let low: Vec<&Scored> = scored.iter().filter(|s| (2..=4).contains(&s.diameter)).collect();
    claims.push(argmin_claim("diameter-2-4-minimum", "d=2..4".into(), &low, &FamilySpec::odd(3, 0, n - 4)));

    for d in 5..n {
        let pool: Vec<&Scored> = scored.iter().filter(|s| s.diameter == d).collect();
        let m = n - d - 1;
        let (claim, expected) = if d % 2 == 1 {
            ("odd-diameter-minimum", FamilySpec::odd(d, m / 2, m.div_ceil(2)))
        } else if d >= 6 {
            ("even-diameter-minimum", FamilySpec::even(d, m / 2, 0, m.div_ceil(2)))
        } else {
            continue;
        };
        claims.push(argmin_claim(claim, format!("d={d}"), &pool, &expected));
    }

    let all: Vec<&Scored> = scored.iter().collect();
    let expected =
        if n <= 15 { FamilySpec::odd(3, 0, n - 4) } else { FamilySpec::odd(5, (n - 6) / 2, (n - 6).div_ceil(2)) };
    let mut global = argmin_claim("global-minimum", "all trees".into(), &all, &expected);
    let bound = cf::min_gen_bound(n)?;
    let min = all.iter().map(|s| s.xi1).fold(f64::INFINITY, f64::min);
    global.pass &= (min - bound).abs() <= VALUE_TOL;
    global.detail = format!("{}, bound {bound}", global.detail);
    claims.push(global);

    for d in (7..n).step_by(2) {
        let m = n - d - 1;
        let pairs = (0..=m).map(|a| (FamilySpec::odd(d - 2, a + 1, m - a + 1), FamilySpec::odd(d, a, m - a))).collect();
        claims.push(pairwise_claim("odd-diameter-reduction", format!("d={d}"), pairs)?);
    }
    for d in (6..n).step_by(2) {
        let m = n - d - 1;
        let mut pairs = Vec::new();
        for a in 0..=m {
            for b in 0..=m - a {
                let c = m - a - b;
                pairs.push((FamilySpec::odd(d - 1, a, b + c + 1), FamilySpec::even(d, a, b, c)));
            }
        }
        claims.push(pairwise_claim("even-diameter-reduction", format!("d={d}"), pairs)?);
    }
    Ok(PriorReport { n, claims })
}
