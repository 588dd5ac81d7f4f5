//! Reproducible numerical checks of the distance-spectral criterion for
//! k-criticality.
//!
//! Every check returns a serializable report. Randomized checks draw each
//! candidate from its own ChaCha stream keyed by `(seed, index)` and merge
//! results in index order, so a report depends only on its configuration
//! and never on thread count or scheduling.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::enumerate::connected_graphs_up_to_iso;
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::factors::{
    find_odd_factor_bruteforce, has_odd_factor, is_k_critical, is_k_critical_definitional,
    FactorConfig, OddBoundFunction, Violation,
};
use crate::graph::{
    build_family, complete, extremal_graph, gnp, split_join_graph, vertex_connectivity, FamilySpec,
    Graph,
};
use crate::params::OddFactorParams;
use crate::quotient::{char_poly_b, char_poly_bstar, g_poly, largest_root};
use crate::spectrum::{distance_matrix_with, mu, mu_dense, WienerBound};

/// Slack allowed when comparing floating spectral radii to integer bounds.
pub const BOUND_SLACK: f64 = 1e-9;
/// Minimum gap for the strict comparison between the two families.
pub const CHAIN_GAP: f64 = 1e-7;
/// Maximum disagreement between closed-form and dense spectral radii.
pub const ROOT_AGREEMENT: f64 = 1e-6;
/// Minimum drop in the spectral radius after adding an edge.
pub const EDGE_GAP: f64 = 1e-9;
/// Tolerance on `μ(G) ≤ θ` when screening samples.
pub const THETA_SLACK: f64 = 1e-9;

const STREAM_THEOREM: u64 = 1;
const STREAM_CRITICALITY: u64 = 2;
const STREAM_EDGES: u64 = 3;
const STREAM_FAMILIES: u64 = 4;

fn rng_for(seed: u64, domain: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((domain << 56) | index);
    rng
}

fn random_connected<R: Rng>(n: usize, density: f64, rng: &mut R) -> Graph {
    loop {
        let g = gnp(n, density, rng);
        if g.is_connected() {
            return g;
        }
    }
}

/// Each comparison in the closing argument of the criterion, evaluated at
/// one `(b, k, n, s)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProofChainReport {
    pub params: OddFactorParams,
    pub s: usize,
    /// Whether `n` meets the order threshold; points below it are still
    /// evaluated and reported.
    pub order_bound_met: bool,
    /// `θ = μ(G_*)` as the largest root of the closed-form cubic.
    pub theta: f64,
    pub theta_dense: f64,
    /// `μ(G_2)` as the largest root of its closed-form cubic.
    pub mu_split: f64,
    pub mu_split_dense: f64,
    /// `2W(G_*)/n`, the Rayleigh lower bound on θ.
    pub wiener_bound: f64,
    /// `n + b + 1`.
    pub theta_floor: usize,
    pub bound_check: bool,
    pub g_at_floor: i128,
    pub g_negative: bool,
    pub axis_numerator: i128,
    pub axis_denominator: i128,
    pub axis: f64,
    pub axis_check: bool,
    pub chain_gap: f64,
    pub chain_verdict: bool,
    pub tolerances: ChainTolerances,
    pub elapsed_seconds: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainTolerances {
    pub bound_slack: f64,
    pub chain_gap: f64,
    pub root_agreement: f64,
}

impl ProofChainReport {
    pub fn all_checks_pass(&self) -> bool {
        self.bound_check && self.g_negative && self.axis_check && self.chain_verdict
    }
}

fn check_agreement(closed_form: f64, dense: f64) -> Result<()> {
    if (closed_form - dense).abs() > ROOT_AGREEMENT {
        return Err(Error::RootMismatch {
            closed_form,
            dense,
            tol: ROOT_AGREEMENT,
        });
    }
    Ok(())
}

/// Evaluates every comparison for `k + 2 ≤ s ≤ (n + bk − 2)/(b + 1)`.
pub fn check_proof_chain(p: &OddFactorParams, s: usize) -> Result<ProofChainReport> {
    let start = Instant::now();
    if s < p.k + 2 {
        return Err(Error::param(format!(
            "s = {s} must be at least k + 2 = {}; s = k + 1 is the extremal graph itself",
            p.k + 2
        )));
    }
    p.check_split(s)?;
    let gstar = extremal_graph(p)?;
    let split = split_join_graph(p, s)?;

    let theta = largest_root(&char_poly_bstar(p)?);
    let theta_dense = mu_dense(&gstar)?;
    check_agreement(theta, theta_dense)?;
    let mu_split = largest_root(&char_poly_b(p, s)?);
    let mu_split_dense = mu_dense(&split)?;
    check_agreement(mu_split, mu_split_dense)?;

    let wiener_bound =
        WienerBound::of(&distance_matrix_with(&gstar, Execution::Sequential)?).value();
    let theta_floor = p.n + p.b + 1;
    let g = g_poly(p, s)?;
    let g_at_floor = g.eval_exact(theta_floor as i128);
    let (axis_numerator, axis_denominator) = g.axis();
    let chain_gap = mu_split_dense - theta_dense;
    Ok(ProofChainReport {
        params: *p,
        s,
        order_bound_met: p.meets_order_bound(),
        theta,
        theta_dense,
        mu_split,
        mu_split_dense,
        wiener_bound,
        theta_floor,
        bound_check: theta_dense >= theta_floor as f64 - BOUND_SLACK
            && wiener_bound >= theta_floor as f64 - BOUND_SLACK,
        g_at_floor,
        g_negative: g_at_floor < 0,
        axis_numerator,
        axis_denominator,
        axis: axis_numerator as f64 / axis_denominator as f64,
        axis_check: axis_numerator < theta_floor as i128 * axis_denominator,
        chain_gap,
        chain_verdict: chain_gap > CHAIN_GAP,
        tolerances: ChainTolerances {
            bound_slack: BOUND_SLACK,
            chain_gap: CHAIN_GAP,
            root_agreement: ROOT_AGREEMENT,
        },
        elapsed_seconds: start.elapsed().as_secs_f64(),
    })
}

/// `f_B − f_{B*} = (s − k − 1)·g` coefficientwise, and the same identity
/// evaluated at `θ` (where `f_{B*}` vanishes) up to rounding.
pub fn check_difference_identity(p: &OddFactorParams, s: usize) -> Result<bool> {
    p.check_split(s)?;
    let fb = char_poly_b(p, s)?;
    let fbs = char_poly_bstar(p)?;
    let factor = s as i128 - p.k as i128 - 1;
    let g = g_poly(p, s)?;
    let exact = fb.difference(&fbs) == g.scaled_as_cubic(factor);

    let theta = largest_root(&fbs);
    let lhs = fb.eval(theta);
    let rhs = factor as f64 * g.eval(theta);
    let scale = fb.magnitude(theta).max(fbs.magnitude(theta));
    Ok(exact && (lhs - rhs).abs() <= ROOT_AGREEMENT * scale.max(1.0))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityConfig {
    pub seed: u64,
    /// Random connected graphs for the edge-addition check.
    pub graphs: usize,
    pub min_order: usize,
    pub max_order: usize,
    /// Valid family tuples to collect for the family comparison.
    pub family_tuples: usize,
    #[serde(skip)]
    pub exec: Execution,
}

impl Default for MonotonicityConfig {
    fn default() -> Self {
        MonotonicityConfig {
            seed: 0,
            graphs: 500,
            min_order: 4,
            max_order: 20,
            family_tuples: 50,
            exec: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeAdditionRecord {
    pub id: usize,
    pub n: usize,
    pub m: usize,
    pub mu: f64,
    pub pairs: usize,
    /// Smallest `μ(G) − μ(G + uv)` over all non-edges.
    pub min_gap: Option<f64>,
    pub failures: Vec<(usize, usize, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyComparison {
    pub attempt: usize,
    pub s: usize,
    pub p: usize,
    pub parts: Vec<usize>,
    pub n: usize,
    pub mu_parts: f64,
    pub mu_concentrated: f64,
    pub gap: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkippedTuple {
    pub attempt: usize,
    pub s: usize,
    pub p: usize,
    pub parts: Vec<usize>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityReport {
    pub config: MonotonicityConfig,
    pub edge_additions: Vec<EdgeAdditionRecord>,
    pub edge_pairs_checked: usize,
    pub edge_failures: usize,
    pub min_edge_gap: Option<f64>,
    pub family_comparisons: Vec<FamilyComparison>,
    pub family_failures: usize,
    pub skipped: Vec<SkippedTuple>,
}

impl MonotonicityReport {
    pub fn passed(&self) -> bool {
        self.edge_failures == 0
            && self.family_failures == 0
            && self.family_comparisons.len() >= self.config.family_tuples
            && self.edge_additions.len() == self.config.graphs
    }
}

fn edge_addition(id: usize, config: &MonotonicityConfig) -> Result<EdgeAdditionRecord> {
    let mut rng = rng_for(config.seed, STREAM_EDGES, id as u64);
    let n = rng.random_range(config.min_order..=config.max_order);
    let density = rng.random_range(0.15..0.85);
    let g = random_connected(n, density, &mut rng);
    let base = mu(&g)?;
    let mut min_gap: Option<f64> = None;
    let mut failures = Vec::new();
    let mut pairs = 0;
    for (u, v) in g.non_edges() {
        pairs += 1;
        let gap = base - mu(&g.with_edge(u, v)?)?;
        min_gap = Some(min_gap.map_or(gap, |m| m.min(gap)));
        if gap <= EDGE_GAP {
            failures.push((u, v, gap));
        }
    }
    Ok(EdgeAdditionRecord {
        id,
        n,
        m: g.size(),
        mu: base,
        pairs,
        min_gap,
        failures,
    })
}

enum TupleOutcome {
    Valid(FamilyComparison),
    Skipped(SkippedTuple),
}

fn family_tuple(attempt: usize, seed: u64) -> Result<TupleOutcome> {
    let mut rng = rng_for(seed, STREAM_FAMILIES, attempt as u64);
    let s = rng.random_range(1..=4);
    let p = rng.random_range(1..=3);
    let t = rng.random_range(2..=4);
    let mut parts: Vec<usize> = (0..t).map(|_| p + rng.random_range(0..=4)).collect();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    let n = s + parts.iter().sum::<usize>();
    let concentrated = n - s - p * (t - 1);
    if parts[0] >= concentrated {
        return Ok(TupleOutcome::Skipped(SkippedTuple {
            attempt,
            s,
            p,
            parts,
            reason: format!("largest part is not below n - s - p(t-1) = {concentrated}"),
        }));
    }
    let mu_parts = mu_dense(&build_family(&FamilySpec::new(s, parts.clone())?)?)?;
    let mut target = vec![concentrated];
    target.extend(std::iter::repeat_n(p, t - 1));
    let mu_concentrated = mu_dense(&build_family(&FamilySpec::new(s, target)?)?)?;
    let gap = mu_parts - mu_concentrated;
    Ok(TupleOutcome::Valid(FamilyComparison {
        attempt,
        s,
        p,
        parts,
        n,
        mu_parts,
        mu_concentrated,
        gap,
        holds: gap > EDGE_GAP,
    }))
}

/// Checks that adding any edge strictly lowers μ on random connected
/// graphs, and that spreading the non-clique vertices over several cliques
/// gives a larger μ than concentrating them in one.
pub fn check_monotonicity_lemmas(config: &MonotonicityConfig) -> Result<MonotonicityReport> {
    if config.min_order < 2 || config.min_order > config.max_order {
        return Err(Error::param("need 2 <= min_order <= max_order"));
    }
    let edge_additions =
        exec::map_indexed(config.exec, config.graphs, |id| edge_addition(id, config))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
    let edge_pairs_checked = edge_additions.iter().map(|r| r.pairs).sum();
    let edge_failures = edge_additions.iter().map(|r| r.failures.len()).sum();
    let min_edge_gap = edge_additions
        .iter()
        .filter_map(|r| r.min_gap)
        .min_by(f64::total_cmp);

    let mut family_comparisons = Vec::new();
    let mut skipped = Vec::new();
    let max_attempts = config.family_tuples * 20;
    let mut attempt = 0;
    while family_comparisons.len() < config.family_tuples && attempt < max_attempts {
        let batch = (config.family_tuples - family_comparisons.len()).max(8);
        let outcomes = exec::map_indexed(config.exec, batch, |i| {
            family_tuple(attempt + i, config.seed)
        });
        for outcome in outcomes {
            attempt += 1;
            if family_comparisons.len() >= config.family_tuples {
                break;
            }
            match outcome? {
                TupleOutcome::Valid(c) => family_comparisons.push(c),
                TupleOutcome::Skipped(s) => skipped.push(s),
            }
        }
    }
    let family_failures = family_comparisons.iter().filter(|c| !c.holds).count();
    Ok(MonotonicityReport {
        config: config.clone(),
        edge_additions,
        edge_pairs_checked,
        edge_failures,
        min_edge_gap,
        family_comparisons,
        family_failures,
        skipped,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalityOracleConfig {
    pub seed: u64,
    pub graphs: usize,
    pub max_order: usize,
    pub bs: Vec<usize>,
    pub ks: Vec<usize>,
    #[serde(skip)]
    pub exec: Execution,
}

impl Default for CriticalityOracleConfig {
    fn default() -> Self {
        CriticalityOracleConfig {
            seed: 0,
            graphs: 2000,
            max_order: 9,
            bs: vec![1, 3],
            ks: vec![1, 2],
            exec: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalityCase {
    pub id: usize,
    pub b: usize,
    pub k: usize,
    pub n: usize,
    pub m: usize,
    pub subset_criterion: bool,
    pub definitional: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalityOracleReport {
    pub config: CriticalityOracleConfig,
    pub cases: Vec<CriticalityCase>,
    pub critical: usize,
    pub not_critical: usize,
    pub disagreements: Vec<usize>,
}

fn criticality_case(id: usize, config: &CriticalityOracleConfig) -> Result<CriticalityCase> {
    let mut rng = rng_for(config.seed, STREAM_CRITICALITY, id as u64);
    let b = config.bs[rng.random_range(0..config.bs.len())];
    let k = config.ks[rng.random_range(0..config.ks.len())];
    let orders: Vec<usize> = ((k + 2)..=config.max_order)
        .filter(|n| n % 2 == k % 2)
        .collect();
    if orders.is_empty() {
        return Err(Error::param(format!(
            "no order of matching parity for k = {k}"
        )));
    }
    let n = orders[rng.random_range(0..orders.len())];
    let density = rng.random_range(0.3..0.95);
    let g = random_connected(n, density, &mut rng);
    let f = OddBoundFunction::constant(n, b)?;
    let cfg = FactorConfig::sequential();
    Ok(CriticalityCase {
        id,
        b,
        k,
        n,
        m: g.size(),
        subset_criterion: is_k_critical(&g, &f, k, &cfg)?.verdict,
        definitional: is_k_critical_definitional(&g, &f, k, &cfg)?,
    })
}

/// Compares the subset criterion for k-criticality with the definition on
/// random connected graphs.
pub fn check_criticality_oracle(
    config: &CriticalityOracleConfig,
) -> Result<CriticalityOracleReport> {
    if config.bs.is_empty() || config.ks.is_empty() {
        return Err(Error::param("need at least one b and one k"));
    }
    let cases = exec::map_indexed(config.exec, config.graphs, |id| {
        criticality_case(id, config)
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let critical = cases.iter().filter(|c| c.definitional).count();
    Ok(CriticalityOracleReport {
        config: config.clone(),
        not_critical: cases.len() - critical,
        critical,
        disagreements: cases
            .iter()
            .filter(|c| c.subset_criterion != c.definitional)
            .map(|c| c.id)
            .collect(),
        cases,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExistenceStratum {
    pub n: usize,
    pub b: usize,
    pub graphs: usize,
    pub with_factor: usize,
    /// Edge lists of graphs where the two verdicts differ.
    pub disagreements: Vec<String>,
}

/// Subset criterion versus edge-subset search for `f ≡ b`, over every
/// connected graph (up to isomorphism) of each order `1..=max_order`.
pub fn check_existence_oracle(
    max_order: usize,
    bs: &[usize],
    exec: Execution,
) -> Result<Vec<ExistenceStratum>> {
    let mut out = Vec::new();
    for n in 1..=max_order {
        let graphs = connected_graphs_up_to_iso(n)?;
        for &b in bs {
            let f = OddBoundFunction::constant(n, b)?;
            let cfg = FactorConfig::sequential();
            let verdicts = exec::map_indexed(exec, graphs.len(), |i| -> Result<(bool, bool)> {
                let g = &graphs[i];
                let criterion = has_odd_factor(g, &f, &cfg)?.verdict;
                let brute = find_odd_factor_bruteforce(g, &f, &cfg)?.is_some();
                Ok((criterion, brute))
            })
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
            out.push(ExistenceStratum {
                n,
                b,
                graphs: graphs.len(),
                with_factor: verdicts.iter().filter(|v| v.1).count(),
                disagreements: verdicts
                    .iter()
                    .zip(&graphs)
                    .filter(|(v, _)| v.0 != v.1)
                    .map(|(_, g)| g.to_edge_list())
                    .collect(),
            });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremConfig {
    pub samples: usize,
    pub seed: u64,
    /// Edge densities cycled through by candidate index.
    pub densities: Vec<f64>,
    /// Give up after this many candidates; defaults to `200 × samples`.
    pub max_candidates: Option<usize>,
    #[serde(skip)]
    pub exec: Execution,
}

impl TheoremConfig {
    pub fn new(samples: usize, seed: u64) -> Self {
        TheoremConfig {
            samples,
            seed,
            densities: (3..=9).map(|d| f64::from(d) / 10.0).collect(),
            max_candidates: None,
            exec: Execution::default(),
        }
    }
}

/// One sampled graph that meets every hypothesis and was scored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub id: usize,
    pub seed: u64,
    pub density: f64,
    pub m: usize,
    pub kappa: usize,
    pub mu: f64,
    pub critical: bool,
}

/// A hand-picked graph checked alongside the random samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeRecord {
    pub name: String,
    pub kappa: usize,
    pub mu: f64,
    pub hypotheses_hold: bool,
    pub critical: bool,
    /// Critical, or exempt as the extremal graph, or outside the hypotheses.
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremalCheck {
    pub critical: bool,
    pub violation: Option<Violation>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub params: OddFactorParams,
    pub config: TheoremConfig,
    pub theta: f64,
    pub theta_dense: f64,
    pub theta_slack: f64,
    pub candidates_drawn: usize,
    pub rejected_disconnected: usize,
    pub rejected_spectral: usize,
    pub rejected_connectivity: usize,
    /// True if the candidate budget ran out before enough samples qualified.
    pub shortfall: bool,
    pub samples: Vec<SampleRecord>,
    /// Sample ids that are not k-critical although `μ < θ`.
    pub counterexamples: Vec<usize>,
    /// Sample ids that are not k-critical with `μ = θ` within tolerance.
    pub equality_cases: Vec<usize>,
    pub extremal: ExtremalCheck,
    pub probes: Vec<ProbeRecord>,
}

impl TheoremReport {
    pub fn consistent(&self) -> bool {
        self.counterexamples.is_empty()
            && !self.extremal.critical
            && self.probes.iter().all(|p| p.consistent)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One row per scored sample: `id,seed,kappa,mu,verdict`.
    pub fn to_csv(&self) -> String {
        #[derive(Serialize)]
        struct Row {
            id: usize,
            seed: u64,
            kappa: usize,
            mu: f64,
            verdict: &'static str,
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        for s in &self.samples {
            w.serialize(Row {
                id: s.id,
                seed: s.seed,
                kappa: s.kappa,
                mu: s.mu,
                verdict: if s.critical {
                    "critical"
                } else {
                    "not-critical"
                },
            })
            .expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv is utf-8")
    }
}

enum Candidate {
    Disconnected,
    AboveTheta,
    LowConnectivity,
    Scored(SampleRecord),
}

fn evaluate_candidate(
    id: usize,
    p: &OddFactorParams,
    theta: f64,
    config: &TheoremConfig,
) -> Result<Candidate> {
    let mut rng = rng_for(config.seed, STREAM_THEOREM, id as u64);
    let density = config.densities[id % config.densities.len()];
    let g = gnp(p.n, density, &mut rng);
    if !g.is_connected() {
        return Ok(Candidate::Disconnected);
    }
    let mu = mu(&g)?;
    if mu > theta + THETA_SLACK {
        return Ok(Candidate::AboveTheta);
    }
    let kappa = vertex_connectivity(&g)?;
    if kappa < p.k + 1 {
        return Ok(Candidate::LowConnectivity);
    }
    let f = OddBoundFunction::constant(p.n, p.b)?;
    let critical = is_k_critical(&g, &f, p.k, &FactorConfig::sequential())?.verdict;
    Ok(Candidate::Scored(SampleRecord {
        id,
        seed: config.seed,
        density,
        m: g.size(),
        kappa,
        mu,
        critical,
    }))
}

fn probe(
    name: String,
    g: &Graph,
    p: &OddFactorParams,
    theta: f64,
    exempt: bool,
) -> Result<ProbeRecord> {
    let kappa = vertex_connectivity(g)?;
    let mu = mu(g)?;
    let f = OddBoundFunction::constant(p.n, p.b)?;
    let critical = is_k_critical(g, &f, p.k, &FactorConfig::sequential())?.verdict;
    let hypotheses_hold = kappa > p.k && mu <= theta + THETA_SLACK;
    Ok(ProbeRecord {
        name,
        kappa,
        mu,
        hypotheses_hold,
        critical,
        consistent: critical || exempt || !hypotheses_hold,
    })
}

/// Samples `(k+1)`-connected graphs of order `n` with `μ(G) ≤ θ` and checks
/// each is k-critical with respect to `[1,b]`-odd factors.
///
/// Alongside the samples it checks the extremal graph (which must fail),
/// `K_n`, and the extremal graph plus each missing edge.
pub fn verify_theorem_instance(
    p: &OddFactorParams,
    config: &TheoremConfig,
) -> Result<TheoremReport> {
    p.require_order_bound()?;
    if config.samples == 0 {
        return Err(Error::param("samples must be at least 1"));
    }
    if config.densities.is_empty() || config.densities.iter().any(|d| !(0.0..=1.0).contains(d)) {
        return Err(Error::param("densities must be a nonempty list in [0, 1]"));
    }
    let gstar = extremal_graph(p)?;
    let theta = largest_root(&char_poly_bstar(p)?);
    let theta_dense = mu_dense(&gstar)?;
    check_agreement(theta, theta_dense)?;

    let f = OddBoundFunction::constant(p.n, p.b)?;
    let ext = is_k_critical(&gstar, &f, p.k, &FactorConfig::default())?;
    let extremal = ExtremalCheck {
        critical: ext.verdict,
        violation: ext.violation,
    };

    let max_candidates = config
        .max_candidates
        .unwrap_or(config.samples.saturating_mul(200));
    let batch = 256;
    let mut report = TheoremReport {
        params: *p,
        config: config.clone(),
        theta,
        theta_dense,
        theta_slack: THETA_SLACK,
        candidates_drawn: 0,
        rejected_disconnected: 0,
        rejected_spectral: 0,
        rejected_connectivity: 0,
        shortfall: false,
        samples: Vec::new(),
        counterexamples: Vec::new(),
        equality_cases: Vec::new(),
        extremal,
        probes: Vec::new(),
    };
    'outer: while report.samples.len() < config.samples {
        let start = report.candidates_drawn;
        if start >= max_candidates {
            report.shortfall = true;
            break;
        }
        let len = batch.min(max_candidates - start);
        let outcomes = exec::map_indexed(config.exec, len, |i| {
            evaluate_candidate(start + i, p, theta, config)
        });
        for outcome in outcomes {
            report.candidates_drawn += 1;
            match outcome? {
                Candidate::Disconnected => report.rejected_disconnected += 1,
                Candidate::AboveTheta => report.rejected_spectral += 1,
                Candidate::LowConnectivity => report.rejected_connectivity += 1,
                Candidate::Scored(rec) => {
                    if !rec.critical {
                        if (rec.mu - theta).abs() <= THETA_SLACK {
                            report.equality_cases.push(rec.id);
                        } else {
                            report.counterexamples.push(rec.id);
                        }
                    }
                    report.samples.push(rec);
                    if report.samples.len() == config.samples {
                        break 'outer;
                    }
                }
            }
        }
    }

    let mut probes = vec![
        probe(format!("K_{}", p.n), &complete(p.n)?, p, theta, false)?,
        probe("extremal".to_string(), &gstar, p, theta, true)?,
    ];
    let non_edges: Vec<(usize, usize)> = gstar.non_edges().collect();
    let plus_edge = exec::map_indexed(config.exec, non_edges.len(), |i| {
        let (u, v) = non_edges[i];
        probe(
            format!("extremal+{u}-{v}"),
            &gstar.with_edge(u, v)?,
            p,
            theta,
            false,
        )
    });
    for r in plus_edge {
        probes.push(r?);
    }
    report.probes = probes;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(b: usize, k: usize, n: usize) -> OddFactorParams {
        OddFactorParams::new(b, k, n).unwrap()
    }

    #[test]
    fn proof_chain_example() {
        let r = check_proof_chain(&p(1, 1, 15), 3).unwrap();
        assert!((r.theta - 17.707).abs() < 0.01);
        assert!(r.theta >= 17.0);
        assert!(r.g_at_floor < 0);
        assert!(r.all_checks_pass(), "{r:?}");
        assert!(check_proof_chain(&p(3, 1, 17), 3)
            .unwrap()
            .all_checks_pass());
        assert!(check_proof_chain(&p(1, 1, 15), 2).is_err());
        assert!(check_proof_chain(&p(1, 1, 15), 8).is_err());
    }

    #[test]
    fn identity_examples() {
        assert!(check_difference_identity(&p(1, 1, 15), 2).unwrap());
        assert!(check_difference_identity(&p(1, 1, 15), 3).unwrap());
        assert!(check_difference_identity(&p(3, 2, 20), 4).unwrap());
        let params = p(1, 1, 15);
        let diff = char_poly_b(&params, 2)
            .unwrap()
            .difference(&char_poly_bstar(&params).unwrap());
        assert_eq!(diff.0, [0; 4]);
    }

    #[test]
    fn small_monotonicity_run() {
        let cfg = MonotonicityConfig {
            graphs: 10,
            max_order: 9,
            family_tuples: 5,
            seed: 7,
            ..Default::default()
        };
        let r = check_monotonicity_lemmas(&cfg).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn family_comparison_example() {
        // K_2 ∨ (K_3 ∪ K_3) against K_2 ∨ (K_5 ∪ K_1)
        let spread =
            mu_dense(&build_family(&FamilySpec::new(2, vec![3, 3]).unwrap()).unwrap()).unwrap();
        let packed =
            mu_dense(&build_family(&FamilySpec::new(2, vec![5, 1]).unwrap()).unwrap()).unwrap();
        assert!(spread > packed + 1e-9);
    }

    #[test]
    fn p3_edge_addition() {
        let p3 = crate::graph::path(3);
        let before = mu(&p3).unwrap();
        let after = mu(&p3.with_edge(0, 2).unwrap()).unwrap();
        assert!((before - (1.0 + 3f64.sqrt())).abs() < 1e-9);
        assert!((after - 2.0).abs() < 1e-9);
    }

    #[test]
    fn theorem_rejects_even_b() {
        assert!(OddFactorParams::new(2, 1, 15).is_err());
        let below = p(1, 1, 11);
        assert!(verify_theorem_instance(&below, &TheoremConfig::new(1, 0)).is_err());
    }

    #[test]
    fn small_theorem_run_is_deterministic() {
        let params = p(1, 1, 15);
        let mut cfg = TheoremConfig::new(20, 11);
        cfg.exec = Execution::Sequential;
        let a = verify_theorem_instance(&params, &cfg).unwrap();
        cfg.exec = Execution::Parallel;
        let b = verify_theorem_instance(&params, &cfg).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.samples.len(), 20);
        assert!(a.consistent());
        let k15 = &a.probes[0];
        assert!(k15.hypotheses_hold && k15.critical && (k15.mu - 14.0).abs() < 1e-9);
        assert!(a.to_csv().starts_with("id,seed,kappa,mu,verdict\n"));
    }
}
