//! Set-pair systems (A_i, B_i) and subspace-pair systems (U_i, V_i), with
//! verifiers for the classical cross-intersection hypotheses.
//!
//! Five condition sets are checked:
//!
//! * `bollobas` — A_i ∩ B_i = ∅ and A_i ∩ B_j ≠ ∅ for every ordered i ≠ j;
//! * `tuza` — A_i ∩ B_i = ∅ and, per unordered {i, j}, A_i ∩ B_j ≠ ∅ or
//!   A_j ∩ B_i ≠ ∅;
//! * `uniform` — all |A_i| = r and |B_i| = s;
//! * `lovasz` — U_i ∩ V_i = {0} and U_i ∩ V_j ≠ {0} whenever i < j (the
//!   skew, order-dependent condition);
//! * `weak-isp` / `weak-uv` — U_i ∩ V_i = {0} and, per unordered {i, j},
//!   U_i ∩ V_j ≠ {0} or U_j ∩ V_i ≠ {0}; `weak-uv` additionally fixes
//!   dim U_i = u and dim V_i = v.
//!
//! Verifiers scan conditions in lexicographic (condition, i, j) order and
//! report the first violation; `*_all` variants collect every violation.
//! Reported indices are 1-based. Empty and singleton systems pass every
//! cross condition vacuously.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gfq::{make_field, FieldTable};
use crate::subspace::{rref, Subspace};
use std::sync::Arc;

/// An ordered list of set pairs (A_i, B_i) over the naturals.
///
/// Order matters for the skew conditions; the ground set is implicit (the
/// union of all elements). Sets are stored sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "SetsJson", into = "SetsJson")]
pub struct SetPairSystem {
    pairs: Vec<(BTreeSet<u32>, BTreeSet<u32>)>,
}

impl SetPairSystem {
    pub fn new(pairs: Vec<(BTreeSet<u32>, BTreeSet<u32>)>) -> SetPairSystem {
        SetPairSystem { pairs }
    }

    pub fn empty() -> SetPairSystem {
        SetPairSystem { pairs: Vec::new() }
    }

    /// Convenience constructor from slices.
    pub fn from_slices(pairs: &[(&[u32], &[u32])]) -> SetPairSystem {
        SetPairSystem {
            pairs: pairs
                .iter()
                .map(|(a, b)| (a.iter().copied().collect(), b.iter().copied().collect()))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(BTreeSet<u32>, BTreeSet<u32>)] {
        &self.pairs
    }

    /// Union of all elements.
    pub fn ground(&self) -> BTreeSet<u32> {
        self.pairs
            .iter()
            .flat_map(|(a, b)| a.iter().chain(b.iter()).copied())
            .collect()
    }

    pub fn max_element(&self) -> Option<u32> {
        self.ground().into_iter().next_back()
    }
}

#[derive(Serialize, Deserialize)]
struct SetsJson {
    pairs: Vec<SetPairJson>,
}

#[derive(Serialize, Deserialize)]
struct SetPairJson {
    #[serde(rename = "A")]
    a: Vec<u32>,
    #[serde(rename = "B")]
    b: Vec<u32>,
}

impl From<SetsJson> for SetPairSystem {
    fn from(json: SetsJson) -> SetPairSystem {
        SetPairSystem {
            pairs: json
                .pairs
                .into_iter()
                .map(|p| (p.a.into_iter().collect(), p.b.into_iter().collect()))
                .collect(),
        }
    }
}

impl From<SetPairSystem> for SetsJson {
    fn from(s: SetPairSystem) -> SetsJson {
        SetsJson {
            pairs: s
                .pairs
                .into_iter()
                .map(|(a, b)| SetPairJson {
                    a: a.into_iter().collect(),
                    b: b.into_iter().collect(),
                })
                .collect(),
        }
    }
}

/// An ordered list of subspace pairs (U_i, V_i) sharing one ambient F_q^n.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SubspaceSystemJson", into = "SubspaceSystemJson")]
pub struct SubspacePairSystem {
    field: Arc<FieldTable>,
    n: usize,
    pairs: Vec<(Subspace, Subspace)>,
}

impl SubspacePairSystem {
    pub fn new(
        field: &Arc<FieldTable>,
        n: usize,
        pairs: Vec<(Subspace, Subspace)>,
    ) -> Result<SubspacePairSystem> {
        for (u, v) in &pairs {
            for s in [u, v] {
                if s.ambient_dim() != n {
                    return Err(Error::DimensionMismatch(s.ambient_dim(), n));
                }
                if s.q() != field.q() {
                    return Err(Error::InvalidInput(format!(
                        "field mismatch: GF({}) vs GF({})",
                        s.q(),
                        field.q()
                    )));
                }
            }
        }
        Ok(SubspacePairSystem {
            field: Arc::clone(field),
            n,
            pairs,
        })
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(Subspace, Subspace)] {
        &self.pairs
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.field.q()
    }

    pub fn field(&self) -> &Arc<FieldTable> {
        &self.field
    }

    /// (dim U_i, dim V_i).
    pub fn dims(&self, i: usize) -> Result<(usize, usize)> {
        let (u, v) = self.pairs.get(i).ok_or(Error::InvalidIndex {
            index: i,
            len: self.pairs.len(),
        })?;
        Ok((u.dim(), v.dim()))
    }
}

#[derive(Serialize, Deserialize)]
struct SubspaceSystemJson {
    q: u64,
    n: usize,
    pairs: Vec<SubspacePairJson>,
}

#[derive(Serialize, Deserialize)]
struct SubspacePairJson {
    #[serde(rename = "U")]
    u: Vec<Vec<u8>>,
    #[serde(rename = "V")]
    v: Vec<Vec<u8>>,
}

impl TryFrom<SubspaceSystemJson> for SubspacePairSystem {
    type Error = Error;

    /// Bases are validated and re-canonicalized (row-reduced) on load.
    fn try_from(json: SubspaceSystemJson) -> Result<SubspacePairSystem> {
        let field = make_field(json.q)?;
        let pairs = json
            .pairs
            .into_iter()
            .map(|p| Ok((rref(&field, json.n, &p.u)?, rref(&field, json.n, &p.v)?)))
            .collect::<Result<Vec<_>>>()?;
        SubspacePairSystem::new(&field, json.n, pairs)
    }
}

impl From<SubspacePairSystem> for SubspaceSystemJson {
    fn from(s: SubspacePairSystem) -> SubspaceSystemJson {
        SubspaceSystemJson {
            q: s.field.q(),
            n: s.n,
            pairs: s
                .pairs
                .into_iter()
                .map(|(u, v)| SubspacePairJson {
                    u: u.basis().to_vec(),
                    v: v.basis().to_vec(),
                })
                .collect(),
        }
    }
}

/// One failed condition instance; indices are 1-based.
///
/// For per-pair conditions (disjointness, sizes, dimensions) `j == i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub condition: String,
    pub i: usize,
    pub j: usize,
}

/// Outcome of running one condition set over a system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    /// Condition-set name (`bollobas`, `tuza`, `uniform`, `lovasz`,
    /// `weak-isp`, `weak-uv`, `family-disjointness`).
    pub kind: String,
    pub passed: bool,
    /// First violation in lexicographic (condition, i, j) order.
    pub first_violation: Option<Violation>,
    /// Number of condition instances evaluated before stopping.
    pub checks: usize,
}

impl VerificationReport {
    fn from_scan(kind: &str, scan: Scan) -> VerificationReport {
        VerificationReport {
            kind: kind.to_string(),
            passed: scan.violations.is_empty(),
            first_violation: scan.violations.into_iter().next(),
            checks: scan.checks,
        }
    }
}

/// Condition scanner: evaluates checks in the order they are offered and
/// either stops at the first failure or records them all.
struct Scan {
    collect_all: bool,
    violations: Vec<Violation>,
    checks: usize,
}

impl Scan {
    fn new(collect_all: bool) -> Scan {
        Scan {
            collect_all,
            violations: Vec::new(),
            checks: 0,
        }
    }

    /// Records one check; returns false once scanning should stop.
    fn check(&mut self, condition: &str, i: usize, j: usize, ok: bool) -> bool {
        self.checks += 1;
        if !ok {
            self.violations.push(Violation {
                condition: condition.to_string(),
                i,
                j,
            });
            if !self.collect_all {
                return false;
            }
        }
        true
    }

    fn active(&self) -> bool {
        self.collect_all || self.violations.is_empty()
    }
}

fn disjoint_sets(a: &BTreeSet<u32>, b: &BTreeSet<u32>) -> bool {
    a.intersection(b).next().is_none()
}

fn meets_sets(a: &BTreeSet<u32>, b: &BTreeSet<u32>) -> bool {
    a.intersection(b).next().is_some()
}

fn scan_bollobas(s: &SetPairSystem, all: bool) -> Scan {
    let mut scan = Scan::new(all);
    let pairs = s.pairs();
    for (i, (a, b)) in pairs.iter().enumerate() {
        if !scan.check("disjoint", i + 1, i + 1, disjoint_sets(a, b)) {
            return scan;
        }
    }
    for i in 0..pairs.len() {
        for j in 0..pairs.len() {
            if i == j {
                continue;
            }
            if !scan.check("cross", i + 1, j + 1, meets_sets(&pairs[i].0, &pairs[j].1)) {
                return scan;
            }
        }
    }
    scan
}

/// Both-direction cross-intersection: A_i ∩ B_i = ∅ and A_i ∩ B_j ≠ ∅ for
/// every ordered pair i ≠ j.
pub fn verify_bollobas(s: &SetPairSystem) -> VerificationReport {
    VerificationReport::from_scan("bollobas", scan_bollobas(s, false))
}

pub fn verify_bollobas_all(s: &SetPairSystem) -> Vec<Violation> {
    scan_bollobas(s, true).violations
}

fn scan_tuza(s: &SetPairSystem, all: bool) -> Scan {
    let mut scan = Scan::new(all);
    let pairs = s.pairs();
    for (i, (a, b)) in pairs.iter().enumerate() {
        if !scan.check("disjoint", i + 1, i + 1, disjoint_sets(a, b)) {
            return scan;
        }
    }
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            let ok = meets_sets(&pairs[i].0, &pairs[j].1) || meets_sets(&pairs[j].0, &pairs[i].1);
            if !scan.check("cross", i + 1, j + 1, ok) {
                return scan;
            }
        }
    }
    scan
}

/// One-direction-suffices cross-intersection over unordered pairs.
pub fn verify_tuza_sets(s: &SetPairSystem) -> VerificationReport {
    VerificationReport::from_scan("tuza", scan_tuza(s, false))
}

pub fn verify_tuza_sets_all(s: &SetPairSystem) -> Vec<Violation> {
    scan_tuza(s, true).violations
}

fn scan_uniform(s: &SetPairSystem, r: usize, s_size: usize, all: bool) -> Scan {
    let mut scan = Scan::new(all);
    for (i, (a, _)) in s.pairs().iter().enumerate() {
        if !scan.check("a-size", i + 1, i + 1, a.len() == r) {
            return scan;
        }
    }
    for (i, (_, b)) in s.pairs().iter().enumerate() {
        if !scan.check("b-size", i + 1, i + 1, b.len() == s_size) {
            return scan;
        }
    }
    scan
}

/// All |A_i| = r and |B_i| = s.
pub fn verify_uniform(s: &SetPairSystem, r: usize, s_size: usize) -> VerificationReport {
    VerificationReport::from_scan("uniform", scan_uniform(s, r, s_size, false))
}

pub fn verify_uniform_all(s: &SetPairSystem, r: usize, s_size: usize) -> Vec<Violation> {
    scan_uniform(s, r, s_size, true).violations
}

fn trivial(u: &Subspace, v: &Subspace) -> bool {
    u.is_trivial_intersection(v)
        .expect("pairs share one ambient space")
}

fn scan_lovasz(s: &SubspacePairSystem, all: bool) -> Scan {
    let mut scan = Scan::new(all);
    let pairs = s.pairs();
    for (i, (u, v)) in pairs.iter().enumerate() {
        if !scan.check("disjoint", i + 1, i + 1, trivial(u, v)) {
            return scan;
        }
    }
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            // skew condition: U_i must meet V_j nontrivially for i < j
            if !scan.check("cross", i + 1, j + 1, !trivial(&pairs[i].0, &pairs[j].1)) {
                return scan;
            }
        }
    }
    scan
}

/// Skew subspace condition: U_i ∩ V_i = {0} and U_i ∩ V_j ≠ {0} for i < j.
/// Order-dependent by design.
pub fn verify_lovasz_skew(s: &SubspacePairSystem) -> VerificationReport {
    VerificationReport::from_scan("lovasz", scan_lovasz(s, false))
}

pub fn verify_lovasz_skew_all(s: &SubspacePairSystem) -> Vec<Violation> {
    scan_lovasz(s, true).violations
}

fn scan_weak_isp(s: &SubspacePairSystem, all: bool) -> Scan {
    let mut scan = Scan::new(all);
    let pairs = s.pairs();
    for (i, (u, v)) in pairs.iter().enumerate() {
        if !scan.check("disjoint", i + 1, i + 1, trivial(u, v)) {
            return scan;
        }
    }
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            let ok = !trivial(&pairs[i].0, &pairs[j].1) || !trivial(&pairs[j].0, &pairs[i].1);
            if !scan.check("cross", i + 1, j + 1, ok) {
                return scan;
            }
        }
    }
    scan
}

/// Weak ISP condition: U_i ∩ V_i = {0} and, for each unordered {i, j},
/// U_i ∩ V_j ≠ {0} or U_j ∩ V_i ≠ {0}. Invariant under permuting the list.
pub fn verify_weak_isp(s: &SubspacePairSystem) -> VerificationReport {
    VerificationReport::from_scan("weak-isp", scan_weak_isp(s, false))
}

pub fn verify_weak_isp_all(s: &SubspacePairSystem) -> Vec<Violation> {
    scan_weak_isp(s, true).violations
}

fn scan_weak_uv(s: &SubspacePairSystem, u: usize, v: usize, all: bool) -> Scan {
    let mut scan = scan_weak_isp(s, all);
    if !scan.active() {
        return scan;
    }
    for (i, (us, _)) in s.pairs().iter().enumerate() {
        if !scan.check("u-dim", i + 1, i + 1, us.dim() == u) {
            return scan;
        }
    }
    for (i, (_, vs)) in s.pairs().iter().enumerate() {
        if !scan.check("v-dim", i + 1, i + 1, vs.dim() == v) {
            return scan;
        }
    }
    scan
}

/// Weak ISP plus uniform dimensions dim U_i = u, dim V_i = v.
pub fn verify_weak_uv(s: &SubspacePairSystem, u: usize, v: usize) -> VerificationReport {
    VerificationReport::from_scan("weak-uv", scan_weak_uv(s, u, v, false))
}

pub fn verify_weak_uv_all(s: &SubspacePairSystem, u: usize, v: usize) -> Vec<Violation> {
    scan_weak_uv(s, u, v, true).violations
}
