//! Lifting set-pair systems into coordinate-subspace systems, and exhaustive
//! search for the largest systems at desk scale.
//!
//! Both searches share one engine: pre-enumerate every admissible candidate
//! pair, sort the candidates lexicographically, and run a depth-first search
//! over index-increasing selections, extending a partial system only when
//! the pairwise compatibility condition holds against everything already
//! chosen. A branch is pruned when `current size + remaining candidates`
//! cannot beat the best system found so far.
//!
//! Determinism contract:
//!
//! * single-threaded runs reproduce `best_size`, the witness, and
//!   `nodes_visited` exactly;
//! * multi-threaded runs split the tree at the root level, workers share a
//!   monotone best-size value for pruning (strict inequality, so branches
//!   that could still tie the record are never cut), and per-root results
//!   are reduced in candidate order, not arrival order — `best_size`,
//!   `exhausted` and the witness come out identical to the single-threaded
//!   run, while `nodes_visited` may vary with scheduling;
//! * the reported witness is always the lexicographically least maximum
//!   system under the fixed candidate order.
//!
//! Caps make a search inexact rather than failed: hitting the node or time
//! cap yields `exhausted = false` and the best system seen, which is then
//! only a lower bound.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::bounds::{bollobas_sum, thm18_lhs, thm19_cap, tuza_sum, BoundResult};
use crate::error::{Error, Result};
use crate::exactnum::ExactScalar;
use crate::gfq::make_field;
use crate::pairsystems::{
    verify_tuza_sets, verify_weak_uv, SetPairSystem, SubspacePairSystem, VerificationReport,
};
use crate::subspace::{enumerate_subspaces, rref, Subspace};

/// Knobs for the exhaustive searches.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Maximum number of search-tree nodes to visit.
    pub node_cap: u64,
    /// Wall-clock limit.
    pub time_cap: Duration,
    /// Assert the proven size cap on every improvement. Off by default; it
    /// never cuts a branch the size prune would keep, it only turns a cap
    /// violation into a hard error (such a violation would mean a bug).
    pub prune_with_thm19: bool,
    /// Attach the best system found to the result.
    pub report_witness: bool,
    /// Worker threads; 1 means fully sequential.
    pub threads: usize,
}

impl Default for SearchConfig {
    fn default() -> SearchConfig {
        SearchConfig {
            node_cap: 10_000_000,
            time_cap: Duration::from_secs(60),
            prune_with_thm19: false,
            report_witness: true,
            threads: 1,
        }
    }
}

impl SearchConfig {
    fn validate(&self) -> Result<()> {
        if self.node_cap == 0 || self.threads == 0 || self.time_cap.is_zero() {
            return Err(Error::InvalidParameter(
                "search caps and thread count must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Outcome of a search.
///
/// When `exhausted` is true, `best_size` is the true maximum for the given
/// ambient parameters; otherwise it is only a lower bound. The witness, if
/// requested, always re-verifies under the relevant condition set.
#[derive(Debug, Clone)]
pub struct SearchResult<S> {
    pub best_size: usize,
    pub witness: Option<S>,
    pub exhausted: bool,
    pub nodes_visited: u64,
}

// ---------------------------------------------------------------------------
// generic DFS over a compatibility graph
// ---------------------------------------------------------------------------

fn bits(set: &[u64]) -> Vec<usize> {
    let mut out = Vec::new();
    for (w, &word) in set.iter().enumerate() {
        let mut x = word;
        while x != 0 {
            out.push(w * 64 + x.trailing_zeros() as usize);
            x &= x - 1;
        }
    }
    out
}

/// allowed ∩ adj[idx] ∩ {indices > idx}
fn narrow(allowed: &[u64], adj_row: &[u64], idx: usize) -> Vec<u64> {
    let mut next: Vec<u64> = allowed.iter().zip(adj_row).map(|(a, b)| a & b).collect();
    let wi = idx / 64;
    for w in next.iter_mut().take(wi) {
        *w = 0;
    }
    let bi = idx % 64;
    next[wi] &= !((1u64 << bi) | ((1u64 << bi) - 1));
    next
}

struct Shared {
    best_len: AtomicUsize,
    nodes: AtomicU64,
    capped: AtomicBool,
}

struct Dfs<'a> {
    adj: &'a [Vec<u64>],
    cfg: &'a SearchConfig,
    start: Instant,
    shared: Option<&'a Shared>,
    assert_cap: Option<&'a BigInt>,
    chosen: Vec<usize>,
    best: Vec<usize>,
    nodes: u64,
    capped: bool,
    cap_violation: Option<Error>,
}

impl<'a> Dfs<'a> {
    fn new(
        adj: &'a [Vec<u64>],
        cfg: &'a SearchConfig,
        start: Instant,
        shared: Option<&'a Shared>,
        assert_cap: Option<&'a BigInt>,
    ) -> Dfs<'a> {
        Dfs {
            adj,
            cfg,
            start,
            shared,
            assert_cap,
            chosen: Vec::new(),
            best: Vec::new(),
            nodes: 0,
            capped: false,
            cap_violation: None,
        }
    }

    fn record_improvement(&mut self) {
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
            if let Some(cap) = self.assert_cap {
                if BigInt::from(self.best.len()) > *cap {
                    self.cap_violation = Some(Error::InvariantViolation(format!(
                        "search found {} pairs, above the proven cap {}",
                        self.best.len(),
                        cap
                    )));
                }
            }
            if let Some(shared) = self.shared {
                shared
                    .best_len
                    .fetch_max(self.best.len(), Ordering::Relaxed);
            }
        }
    }

    fn visit_node(&mut self) -> bool {
        self.nodes += 1;
        let over_node_cap = match self.shared {
            Some(shared) => shared.nodes.fetch_add(1, Ordering::Relaxed) + 1 > self.cfg.node_cap,
            None => self.nodes > self.cfg.node_cap,
        };
        let over_time = self.nodes % 1024 == 0 && self.start.elapsed() > self.cfg.time_cap;
        let sibling_capped = self
            .shared
            .is_some_and(|s| s.capped.load(Ordering::Relaxed));
        if over_node_cap || over_time || sibling_capped {
            self.capped = true;
            if let Some(shared) = self.shared {
                shared.capped.store(true, Ordering::Relaxed);
            }
            return false;
        }
        true
    }

    fn extend(&mut self, allowed: &[u64]) {
        self.record_improvement();
        if self.cap_violation.is_some() {
            return;
        }
        let eligible = bits(allowed);
        for (pos, &idx) in eligible.iter().enumerate() {
            let potential = self.chosen.len() + (eligible.len() - pos);
            let prune = match self.shared {
                None => potential <= self.best.len(),
                // strict against the shared record: a branch that can still
                // tie it may hold the lexicographically smaller witness
                Some(shared) => {
                    potential <= self.best.len()
                        || potential < shared.best_len.load(Ordering::Relaxed)
                }
            };
            if prune {
                break;
            }
            if !self.visit_node() {
                return;
            }
            let next = narrow(allowed, &self.adj[idx], idx);
            self.chosen.push(idx);
            self.extend(&next);
            self.chosen.pop();
            if self.capped || self.cap_violation.is_some() {
                return;
            }
        }
    }
}

struct EngineOutcome {
    best: Vec<usize>,
    exhausted: bool,
    nodes: u64,
}

/// Runs the maximum-compatible-subsystem search over `n` candidates with the
/// given symmetric adjacency bitsets.
fn run_engine(
    n: usize,
    adj: &[Vec<u64>],
    cfg: &SearchConfig,
    assert_cap: Option<&BigInt>,
) -> Result<EngineOutcome> {
    cfg.validate()?;
    let words = n.div_ceil(64);
    let start = Instant::now();
    let mut full = vec![u64::MAX; words];
    if words > 0 {
        // clear the unused high bits of the last word
        full[words - 1] >>= words * 64 - n;
    }

    if cfg.threads == 1 || n == 0 {
        let mut dfs = Dfs::new(adj, cfg, start, None, assert_cap);
        dfs.extend(&full);
        if let Some(err) = dfs.cap_violation {
            return Err(err);
        }
        return Ok(EngineOutcome {
            best: dfs.best,
            exhausted: !dfs.capped,
            nodes: dfs.nodes,
        });
    }

    let shared = Shared {
        best_len: AtomicUsize::new(0),
        nodes: AtomicU64::new(0),
        capped: AtomicBool::new(false),
    };
    let next_root = AtomicUsize::new(0);
    let workers = cfg.threads.min(n);

    struct Task {
        root: usize,
        best: Vec<usize>,
        capped: bool,
        nodes: u64,
        cap_violation: Option<Error>,
    }

    let mut per_root: Vec<Option<Task>> = (0..n).map(|_| None).collect();
    let task_results: Vec<Vec<Task>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                let shared = &shared;
                let next_root = &next_root;
                let full = &full;
                scope.spawn(move || {
                    let mut done = Vec::new();
                    loop {
                        let root = next_root.fetch_add(1, Ordering::Relaxed);
                        if root >= n {
                            return done;
                        }
                        let mut dfs = Dfs::new(adj, cfg, start, Some(shared), assert_cap);
                        if dfs.visit_node() {
                            dfs.chosen.push(root);
                            let allowed = narrow(full, &adj[root], root);
                            dfs.extend(&allowed);
                        }
                        done.push(Task {
                            root,
                            best: dfs.best,
                            capped: dfs.capped,
                            nodes: dfs.nodes,
                            cap_violation: dfs.cap_violation,
                        });
                    }
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });

    let mut nodes = 0u64;
    let mut capped = false;
    for task in task_results.into_iter().flatten() {
        nodes += task.nodes;
        capped |= task.capped;
        let root = task.root;
        per_root[root] = Some(task);
    }
    // reduce by candidate order: the first root attaining the maximum holds
    // the lexicographically least maximum system
    let mut best: Vec<usize> = Vec::new();
    for task in per_root.into_iter().flatten() {
        if let Some(err) = task.cap_violation {
            return Err(err);
        }
        if task.best.len() > best.len() {
            best = task.best;
        }
    }
    Ok(EngineOutcome {
        best,
        exhausted: !capped,
        nodes,
    })
}

// ---------------------------------------------------------------------------
// lifting
// ---------------------------------------------------------------------------

/// Lifts a set-pair system to the coordinate-subspace system over F_q^n:
/// U_i = span{e_k : k in A_i}, V_i = span{e_l : l in B_i}, with elements
/// 1-based against the standard basis.
///
/// Requires every element to lie in 1..=n and the input to satisfy the
/// one-direction cross-intersection condition; the lift of such a system
/// always satisfies the weak ISP condition, and uniform set sizes (a, b)
/// lift to uniform dimensions (u, v) = (a, b).
pub fn lift_set_system(s: &SetPairSystem, n: usize, q: u64) -> Result<SubspacePairSystem> {
    for (a, b) in s.pairs() {
        for &e in a.iter().chain(b.iter()) {
            if e == 0 {
                return Err(Error::InvalidInput(
                    "set elements are 1-based; 0 cannot index a basis vector".into(),
                ));
            }
            if e as usize > n {
                return Err(Error::AmbientTooSmall { element: e, n });
            }
        }
    }
    if !verify_tuza_sets(s).passed {
        return Err(Error::PreconditionViolated(
            "system fails the cross-intersection condition; its lift need not be weak ISP".into(),
        ));
    }
    let field = make_field(q)?;
    let coordinate_space = |set: &BTreeSet<u32>| -> Result<Subspace> {
        let rows: Vec<Vec<u8>> = set
            .iter()
            .map(|&k| {
                let mut row = vec![0u8; n];
                row[(k - 1) as usize] = 1;
                row
            })
            .collect();
        rref(&field, n, &rows)
    };
    let pairs = s
        .pairs()
        .iter()
        .map(|(a, b)| Ok((coordinate_space(a)?, coordinate_space(b)?)))
        .collect::<Result<Vec<_>>>()?;
    SubspacePairSystem::new(&field, n, pairs)
}

// ---------------------------------------------------------------------------
// subspace-pair search
// ---------------------------------------------------------------------------

/// Exhaustive search for the largest weak (u,v)-system in F_q^n.
///
/// Candidates are all ordered pairs (U, V) of a u-subspace and a v-subspace
/// with U ∩ V = {0}, sorted lexicographically by (RREF of U, RREF of V).
pub fn search_max_weak_uv(
    n: usize,
    q: u64,
    u: usize,
    v: usize,
    cfg: &SearchConfig,
) -> Result<SearchResult<SubspacePairSystem>> {
    cfg.validate()?;
    if u + v > n {
        return Err(Error::InvalidParameter(format!(
            "u + v = {} exceeds ambient dimension {n}; no pair has trivial intersection",
            u + v
        )));
    }
    let field = make_field(q)?;
    let us: Vec<Subspace> = enumerate_subspaces(&field, n, u)?.collect();
    let vs: Vec<Subspace> = enumerate_subspaces(&field, n, v)?.collect();
    let product = us.len() as u64 * vs.len() as u64;
    if product > cfg.node_cap {
        return Err(Error::EnumerationTooLarge {
            count: product.to_string(),
            cap: cfg.node_cap,
        });
    }
    let mut candidates: Vec<(Subspace, Subspace)> = Vec::new();
    for uu in &us {
        for vv in &vs {
            if uu.is_trivial_intersection(vv)? {
                candidates.push((uu.clone(), vv.clone()));
            }
        }
    }
    candidates.sort();

    let m = candidates.len();
    let words = m.div_ceil(64);
    let mut adj = vec![vec![0u64; words]; m];
    for i in 0..m {
        for j in i + 1..m {
            let compatible = !candidates[i].0.is_trivial_intersection(&candidates[j].1)?
                || !candidates[j].0.is_trivial_intersection(&candidates[i].1)?;
            if compatible {
                adj[i][j / 64] |= 1 << (j % 64);
                adj[j][i / 64] |= 1 << (i % 64);
            }
        }
    }

    let cap_floor = if cfg.prune_with_thm19 {
        let cap = thm19_cap(n, u, v, q)?;
        Some(cap.numer().div_floor(cap.denom()))
    } else {
        None
    };
    let outcome = run_engine(m, &adj, cfg, cap_floor.as_ref())?;

    let witness = cfg
        .report_witness
        .then(|| {
            let pairs = outcome
                .best
                .iter()
                .map(|&i| candidates[i].clone())
                .collect();
            SubspacePairSystem::new(&field, n, pairs)
        })
        .transpose()?;
    Ok(SearchResult {
        best_size: outcome.best.len(),
        witness,
        exhausted: outcome.exhausted,
        nodes_visited: outcome.nodes,
    })
}

// ---------------------------------------------------------------------------
// set-pair search
// ---------------------------------------------------------------------------

fn subsets_of_size(ground: usize, size: usize) -> Vec<BTreeSet<u32>> {
    let mut out = Vec::new();
    if size > ground {
        return out;
    }
    let mut cols: Vec<u32> = (1..=size as u32).collect();
    loop {
        out.push(cols.iter().copied().collect());
        let mut i = size;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cols[i] < (ground - size + i + 1) as u32 {
                cols[i] += 1;
                for t in i + 1..size {
                    cols[t] = cols[t - 1] + 1;
                }
                break;
            }
        }
    }
}

fn mask(set: &BTreeSet<u32>) -> u64 {
    set.iter().fold(0u64, |m, &e| m | 1 << (e - 1))
}

/// Exhaustive search for the largest set-pair system on ground set
/// {1, ..., ground} with |A_i| = a, |B_i| = b, A_i ∩ B_i = ∅, and the
/// one-direction cross-intersection condition between distinct pairs.
///
/// `exhausted` certifies the maximum for THIS ground size only; the
/// unbounded-ground extremal value is the supremum over all ground sizes
/// (see [`ladder_search_sets`]).
pub fn search_max_set_system(
    ground: usize,
    a: usize,
    b: usize,
    cfg: &SearchConfig,
) -> Result<SearchResult<SetPairSystem>> {
    cfg.validate()?;
    if ground == 0 || a == 0 || b == 0 {
        return Err(Error::InvalidParameter(
            "ground, a, and b must all be at least 1".into(),
        ));
    }
    if a > ground || b > ground {
        return Err(Error::InvalidParameter(format!(
            "set sizes a={a}, b={b} cannot exceed ground size {ground}"
        )));
    }
    if ground > 60 {
        return Err(Error::InvalidParameter(
            "ground sizes above 60 are outside desk scale".into(),
        ));
    }
    let a_sets = subsets_of_size(ground, a);
    let b_sets = subsets_of_size(ground, b);
    let product = a_sets.len() as u64 * b_sets.len() as u64;
    if product > cfg.node_cap {
        return Err(Error::EnumerationTooLarge {
            count: product.to_string(),
            cap: cfg.node_cap,
        });
    }
    let mut candidates: Vec<(BTreeSet<u32>, BTreeSet<u32>)> = Vec::new();
    for sa in &a_sets {
        for sb in &b_sets {
            if sa.intersection(sb).next().is_none() {
                candidates.push((sa.clone(), sb.clone()));
            }
        }
    }
    candidates.sort();
    let masks: Vec<(u64, u64)> = candidates.iter().map(|(a, b)| (mask(a), mask(b))).collect();

    let m = candidates.len();
    let words = m.div_ceil(64);
    let mut adj = vec![vec![0u64; words]; m];
    for i in 0..m {
        for j in i + 1..m {
            let compatible = masks[i].0 & masks[j].1 != 0 || masks[j].0 & masks[i].1 != 0;
            if compatible {
                adj[i][j / 64] |= 1 << (j % 64);
                adj[j][i / 64] |= 1 << (i % 64);
            }
        }
    }

    let outcome = run_engine(m, &adj, cfg, None)?;
    let witness = cfg.report_witness.then(|| {
        SetPairSystem::new(
            outcome
                .best
                .iter()
                .map(|&i| candidates[i].clone())
                .collect(),
        )
    });
    Ok(SearchResult {
        best_size: outcome.best.len(),
        witness,
        exhausted: outcome.exhausted,
        nodes_visited: outcome.nodes,
    })
}

/// One rung of a growing-ground ladder.
#[derive(Debug, Clone, Serialize)]
pub struct LadderStep {
    pub ground: usize,
    pub best_size: usize,
    pub exhausted: bool,
}

/// Result of a ladder of fixed-ground searches.
///
/// The unbounded-ground extremal value is a supremum this tool cannot
/// certify, so `label` is "best found" unless the value coincides with the
/// proven closed form for one-element B-sides (or A-sides, by symmetry).
#[derive(Debug, Clone, Serialize)]
pub struct LadderResult {
    pub best_size: usize,
    pub best_ground: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<SetPairSystem>,
    pub all_exhausted: bool,
    pub steps: Vec<LadderStep>,
    pub label: String,
}

/// Runs fixed-ground searches on ground sizes a+b, a+b+1, ... and stops
/// after two consecutive increments bring no improvement (or a search hits
/// a cap, which ends the ladder unexhausted).
pub fn ladder_search_sets(
    a: usize,
    b: usize,
    cfg: &SearchConfig,
    max_ground: usize,
) -> Result<LadderResult> {
    let mut steps = Vec::new();
    let mut best_size = 0usize;
    let mut best_ground = 0usize;
    let mut witness = None;
    let mut all_exhausted = true;
    let mut stale = 0usize;
    let mut ground = a + b;
    while ground <= max_ground {
        let result = search_max_set_system(ground, a, b, cfg)?;
        steps.push(LadderStep {
            ground,
            best_size: result.best_size,
            exhausted: result.exhausted,
        });
        if result.best_size > best_size {
            best_size = result.best_size;
            best_ground = ground;
            witness = result.witness;
            stale = 0;
        } else {
            stale += 1;
        }
        if !result.exhausted {
            all_exhausted = false;
            break;
        }
        if stale >= 2 {
            break;
        }
        ground += 1;
    }
    let closed_form = (b == 1 && best_size == 2 * a + 1) || (a == 1 && best_size == 2 * b + 1);
    let label = if closed_form && all_exhausted {
        format!("m({a},{b})")
    } else {
        "best found".to_string()
    };
    Ok(LadderResult {
        best_size,
        best_ground,
        witness,
        all_exhausted,
        steps,
        label,
    })
}

// ---------------------------------------------------------------------------
// witness reports
// ---------------------------------------------------------------------------

/// One row of the weighted-sum table in a witness report.
#[derive(Debug, Clone, Serialize)]
pub struct Thm18Entry {
    pub j: usize,
    pub lhs: ExactScalar,
    pub holds: bool,
}

/// Witness, verification transcript, and every applicable bound for a
/// subspace-pair search result.
#[derive(Debug, Clone, Serialize)]
pub struct UvWitnessReport {
    pub best_size: usize,
    pub exhausted: bool,
    pub nodes_visited: u64,
    pub system: SubspacePairSystem,
    pub verification: VerificationReport,
    pub thm18: Vec<Thm18Entry>,
    pub thm19_cap: ExactScalar,
}

/// Builds the full report for a (u,v)-search result; requires the search to
/// have been run with `report_witness`.
pub fn uv_witness_report(
    result: &SearchResult<SubspacePairSystem>,
    u: usize,
    v: usize,
) -> Result<UvWitnessReport> {
    let system = result.witness.clone().ok_or_else(|| {
        Error::PreconditionViolated("witness reporting was disabled for this search".into())
    })?;
    let verification = verify_weak_uv(&system, u, v);
    let thm18 = (0..=system.ambient_dim())
        .map(|j| {
            let r = thm18_lhs(&system, j)?;
            Ok(Thm18Entry {
                j,
                lhs: r.lhs,
                holds: r.holds,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(UvWitnessReport {
        best_size: result.best_size,
        exhausted: result.exhausted,
        nodes_visited: result.nodes_visited,
        thm19_cap: thm19_cap(system.ambient_dim(), u, v, system.q())?,
        system,
        verification,
        thm18,
    })
}

/// Witness, verification transcript, and sum bounds for a set-pair search
/// result.
#[derive(Debug, Clone, Serialize)]
pub struct SetsWitnessReport {
    pub best_size: usize,
    pub exhausted: bool,
    pub nodes_visited: u64,
    pub system: SetPairSystem,
    pub verification: VerificationReport,
    pub bollobas: BoundResult,
    pub tuza_at_half: BoundResult,
}

pub fn sets_witness_report(result: &SearchResult<SetPairSystem>) -> Result<SetsWitnessReport> {
    let system = result.witness.clone().ok_or_else(|| {
        Error::PreconditionViolated("witness reporting was disabled for this search".into())
    })?;
    let verification = verify_tuza_sets(&system);
    let half = ExactScalar::from_ratio(1, 2)?;
    Ok(SetsWitnessReport {
        best_size: result.best_size,
        exhausted: result.exhausted,
        nodes_visited: result.nodes_visited,
        bollobas: bollobas_sum(&system),
        tuza_at_half: tuza_sum(&system, &half)?,
        system,
        verification,
    })
}
