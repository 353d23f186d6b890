//! Mechanical checks of the structural claims about iterated graphs.
//!
//! Each check builds the relevant iterated graph, replays the explicit
//! construction behind the claim where one exists, and confirms the claimed
//! value with the exact solvers when the budget allows. Every instance carries
//! certificates that [`recheck`] can confirm without any search.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::forcing::{self, closure, is_fort, loop_closure, replay_schedule, Chronology, Force};
use crate::graph::Graph;
use crate::graph6::{emit_graph6, parse_graph6};
use crate::iterated::{enumerate_plans, lineage_index, CloningPlan, IteratedGraph, Mode};
use crate::solvers::{
    self, burning_number, failed_zero_forcing_number, min_fort, superfluous_burning_number,
    zero_forcing_number, Budget, Parameter,
};

/// Largest number of plans a burning family may enumerate.
pub const PLAN_CAP: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Verified,
    Violated,
    Skipped { reason: String },
    /// The budget ran out before the claim could be settled either way.
    Undecided { reason: String },
}

/// Evidence attached to an instance. Everything except [`Certificate::Value`]
/// is checkable on the instance graph alone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// `members` is a fort.
    Fort { members: Vec<usize> },
    /// The closure of `members` is not all of `V`.
    FailedSet { members: Vec<usize> },
    /// `members` forces `V` within `rounds` synchronous rounds.
    ZeroForcingSet { members: Vec<usize>, rounds: usize },
    /// Every vertex has at least two members in its closed neighbourhood and
    /// at least two in its anti-neighbourhood.
    TwoSided { members: Vec<usize> },
    /// `vertex` has fewer than two members of `members` on one side.
    OneSided { members: Vec<usize>, vertex: usize },
    /// Replaying `schedule` from `start` is legal and forces `V`.
    Schedule { start: Vec<usize>, schedule: Chronology },
    /// `sources` burn `V` in `sources.len()` rounds (the last one idle when
    /// `superfluous`).
    Burning { sources: Vec<usize>, superfluous: bool },
    /// `sources` ignite in rounds 1, 2, ... and after `rounds` rounds every
    /// vertex of `covers` is burned.
    PartialBurn { sources: Vec<usize>, rounds: usize, covers: Vec<usize> },
    /// A solver result; `value: None` means the search was bracketed.
    Value {
        parameter: Parameter,
        value: Option<usize>,
        bounds: (usize, usize),
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    /// graph6 of the base graph.
    pub base: String,
    pub mode: Mode,
    pub l: usize,
    /// Explicit plan lines when the plan is not determined by `mode`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plan: Option<String>,
    /// graph6 of the instance graph (omitted for skipped instances).
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub graph6: String,
    #[serde(flatten)]
    pub verdict: Verdict,
    pub certificates: Vec<Certificate>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Instance {
    fn new(base: &Graph, mode: Mode, l: usize) -> Self {
        Self {
            base: emit_graph6(base),
            mode,
            l,
            plan: None,
            graph6: String::new(),
            verdict: Verdict::Verified,
            certificates: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn on(mut self, g: &Graph) -> Self {
        self.graph6 = emit_graph6(g);
        self
    }

    fn fail(&mut self, why: impl Into<String>) {
        self.verdict = Verdict::Violated;
        self.notes.push(why.into());
    }

    fn undecided(&mut self, why: impl Into<String>) {
        if self.verdict == Verdict::Verified {
            self.verdict = Verdict::Undecided { reason: why.into() };
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub claim_id: String,
    pub instances: Vec<Instance>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub verified: usize,
    pub violated: usize,
    pub skipped: usize,
    pub undecided: usize,
}

impl TheoremReport {
    fn new(claim_id: &str) -> Self {
        Self {
            claim_id: claim_id.to_string(),
            instances: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn tally(&self) -> Tally {
        let mut t = Tally::default();
        for i in &self.instances {
            match i.verdict {
                Verdict::Verified => t.verified += 1,
                Verdict::Violated => t.violated += 1,
                Verdict::Skipped { .. } => t.skipped += 1,
                Verdict::Undecided { .. } => t.undecided += 1,
            }
        }
        t
    }

    pub fn has_violation(&self) -> bool {
        self.tally().violated > 0
    }

    pub fn has_undecided(&self) -> bool {
        self.tally().undecided > 0
    }

    /// Merges the instances of `other` (same claim) into `self`.
    pub fn extend(&mut self, other: TheoremReport) {
        self.instances.extend(other.instances);
        for n in other.notes {
            if !self.notes.contains(&n) {
                self.notes.push(n);
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Fixed-width table with one row per report.
pub fn summary_table(reports: &[TheoremReport]) -> String {
    let mut out = format!(
        "{:<22} {:>9} {:>9} {:>8} {:>10}\n",
        "claim", "verified", "violated", "skipped", "undecided"
    );
    for r in reports {
        let t = r.tally();
        let _ = writeln!(
            out,
            "{:<22} {:>9} {:>9} {:>8} {:>10}",
            r.claim_id, t.verified, t.violated, t.skipped, t.undecided
        );
    }
    out
}

fn set(n: usize, members: &[usize]) -> VertexSet {
    VertexSet::from_indices(n, members.iter().copied())
}

/// Re-checks a certificate against `g` without searching.
pub fn recheck(g: &Graph, cert: &Certificate) -> bool {
    let n = g.order();
    let in_range = |m: &[usize]| m.iter().all(|&v| v < n);
    match cert {
        Certificate::Fort { members } => in_range(members) && is_fort(g, &set(n, members)),
        Certificate::FailedSet { members } => {
            in_range(members) && !closure(g, &set(n, members)).0.is_full()
        }
        Certificate::ZeroForcingSet { members, rounds } => {
            if !in_range(members) {
                return false;
            }
            let (c, chron) = closure(g, &set(n, members));
            c.is_full() && chron.rounds() <= *rounds
        }
        Certificate::TwoSided { members } => {
            in_range(members) && (0..n).all(|a| two_sided_at(g, &set(n, members), a))
        }
        Certificate::OneSided { members, vertex } => {
            in_range(members) && *vertex < n && !two_sided_at(g, &set(n, members), *vertex)
        }
        Certificate::Schedule { start, schedule } => {
            in_range(start) && replay_schedule(g, &set(n, start), schedule).is_ok()
        }
        Certificate::Burning {
            sources,
            superfluous,
        } => solvers::verify_burning(g, sources, *superfluous),
        Certificate::PartialBurn {
            sources,
            rounds,
            covers,
        } => {
            in_range(sources)
                && in_range(covers)
                && covers.iter().all(|&v| {
                    sources.iter().enumerate().any(|(i, &s)| {
                        i < *rounds && g.distances_from(s)[v].is_some_and(|d| d < rounds - i)
                    })
                })
        }
        Certificate::Value { .. } => true,
    }
}

fn two_sided_at(g: &Graph, u: &VertexSet, a: usize) -> bool {
    let closed = g.closed_neighborhood(a).expect("a < n");
    let inside = u.intersection_len(&closed);
    inside >= 2 && u.len() - inside >= 2
}

fn value_cert(r: &solvers::SolverReport) -> Certificate {
    Certificate::Value {
        parameter: r.parameter,
        value: r.value,
        bounds: r.bounds,
    }
}

fn build(base: &Graph, plan: &CloningPlan) -> IteratedGraph {
    IteratedGraph::build(base, plan).expect("plan width matches the base")
}

fn require_level(l: usize, min: usize) -> Result<()> {
    if l < min {
        return Err(Error::Precondition(format!("needs l >= {min}, got {l}")));
    }
    Ok(())
}

/// The six-vertex set grown from base vertex `u`: anticlone chains of
/// `v = u'_1` and `w = v'_2` through levels 3, 4 and 5.
pub fn ilat_six_set(ig: &IteratedGraph, u: usize) -> Vec<usize> {
    let c = |x: usize, t: usize| ig.child(x, t).expect("depth is at least 5");
    let v = c(u, 1);
    let w = c(v, 2);
    let (v3, w3) = (c(v, 3), c(w, 3));
    let (v4, w4) = (c(v3, 4), c(w3, 4));
    let (v5, w5) = (c(v4, 5), c(w4, 5));
    vec![v3, w3, v4, w4, v5, w5]
}

/// Large failed sets in anticlone iterates: for every base vertex the
/// six-vertex set is two-sided and a fort, so `FZ >= n - 6`. The exact
/// minimum fort (through size 6) is confirmed under `budget`.
pub fn check_fzf_ilat_lower(base: &Graph, l: usize, budget: &Budget) -> Result<TheoremReport> {
    require_level(l, 5)?;
    if base.order() == 0 {
        return Err(Error::EmptyGraph);
    }
    let ig = build(base, &CloningPlan::ilat(base.order(), l));
    let g = ig.graph();
    let n = g.order();
    let mut inst = Instance::new(base, Mode::Ilat, l).on(g);
    let mut good = 0;
    for u in 0..base.order() {
        let members = ilat_six_set(&ig, u);
        let s = set(n, &members);
        match (0..n).find(|&a| !two_sided_at(g, &s, a)) {
            Some(a) => {
                inst.notes.push(format!("base vertex {u}: vertex {a} is one-sided"));
                inst.certificates.push(Certificate::OneSided { members, vertex: a });
            }
            None if !is_fort(g, &s) => {
                inst.notes.push(format!("base vertex {u}: set is not a fort"));
            }
            None => {
                good += 1;
                inst.certificates.push(Certificate::TwoSided {
                    members: members.clone(),
                });
                inst.certificates.push(Certificate::Fort { members });
            }
        }
    }
    if good == 0 {
        inst.fail("no base vertex yields a two-sided fort");
    } else if good < base.order() {
        inst.notes.push(format!(
            "warning: only {good} of {} base vertices yield the construction",
            base.order()
        ));
    }
    let search = min_fort(g, 6, budget)?;
    inst.certificates.push(value_cert(&search));
    match search.value {
        Some(k) => {
            inst.certificates.push(Certificate::Fort {
                members: search.witness.clone(),
            });
            inst.notes.push(format!("FZ = {} (minimum fort of size {k})", n - k));
        }
        None if search.budget_exhausted => inst
            .notes
            .push("exact search bracketed; bound rests on the explicit fort".into()),
        None => inst.fail("no fort of size <= 6 exists"),
    }
    let mut report = TheoremReport::new("fzf-ilat-lower");
    report.instances.push(inst);
    Ok(report)
}

/// The three base conditions under which `FZ(ILAT_l) = n - 2` is claimed,
/// evaluated literally.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinusTwoConditions {
    pub closed_twins: bool,
    pub isolated_plus_dominator: bool,
    pub single_vertex: bool,
}

impl MinusTwoConditions {
    pub fn of(g: &Graph) -> Self {
        let n = g.order();
        let closed: Vec<VertexSet> = (0..n)
            .map(|v| g.closed_neighborhood(v).expect("v < n"))
            .collect();
        let closed_twins = (0..n).any(|u| (u + 1..n).any(|v| closed[u] == closed[v]));
        let isolated_plus_dominator = (0..n).any(|x| {
            g.degree(x) == 0
                && (0..n).any(|v| v != x && (0..n).all(|y| y == x || y == v || g.has_edge(v, y)))
        });
        Self {
            closed_twins,
            isolated_plus_dominator,
            single_vertex: n == 1,
        }
    }

    pub fn any(&self) -> bool {
        self.closed_twins || self.isolated_plus_dominator || self.single_vertex
    }
}

/// Checks `FZ(ILAT_l(base)) = n - 2` if and only if one of the three base
/// conditions holds.
pub fn classify_fzf_minus2(base: &Graph, l: usize, budget: &Budget) -> Result<TheoremReport> {
    require_level(l, 1)?;
    if base.order() == 0 {
        return Err(Error::EmptyGraph);
    }
    let cond = MinusTwoConditions::of(base);
    let ig = build(base, &CloningPlan::ilat(base.order(), l));
    let g = ig.graph();
    let n = g.order();
    let mut inst = Instance::new(base, Mode::Ilat, l).on(g);
    inst.notes.push(format!(
        "conditions: closed twins {}, isolated + dominator {}, single vertex {}",
        cond.closed_twins, cond.isolated_plus_dominator, cond.single_vertex
    ));
    let fz = failed_zero_forcing_number(g, budget)?;
    inst.certificates.push(value_cert(&fz));
    if let Some(f) = &fz.fort {
        inst.certificates.push(Certificate::Fort { members: f.clone() });
    }
    match fz.value {
        Some(v) => {
            let minus_two = v + 2 == n;
            if minus_two != cond.any() {
                inst.fail(format!(
                    "FZ = n - {} while the base conditions {} hold",
                    n - v,
                    if cond.any() { "do" } else { "do not" }
                ));
            }
        }
        None => inst.undecided(format!("FZ bracketed in {:?}", fz.bounds)),
    }
    let mut report = TheoremReport::new("fzf-minus2");
    report.instances.push(inst);
    Ok(report)
}

/// Checks that no minimum fort of `ILAT_l(base)` has exactly three vertices.
pub fn check_fzf_not_minus3(base: &Graph, l: usize, budget: &Budget) -> Result<TheoremReport> {
    require_level(l, 4)?;
    if base.order() == 0 {
        return Err(Error::EmptyGraph);
    }
    let ig = build(base, &CloningPlan::ilat(base.order(), l));
    let g = ig.graph();
    let mut inst = Instance::new(base, Mode::Ilat, l).on(g);
    let search = min_fort(g, 3, budget)?;
    inst.certificates.push(value_cert(&search));
    match search.value {
        Some(k) => {
            inst.certificates.push(Certificate::Fort {
                members: search.witness.clone(),
            });
            if k == 3 {
                inst.fail("minimum fort has exactly three vertices");
            }
        }
        None if search.budget_exhausted => {
            inst.undecided(format!("fort search bracketed in {:?}", search.bounds))
        }
        None => inst.notes.push("no fort of size <= 3".into()),
    }
    let mut report = TheoremReport::new("fzf-not-minus3");
    report.instances.push(inst);
    Ok(report)
}

/// `u` and `v` are non-adjacent and both adjacent to every other vertex.
pub fn minus4_hypothesis(base: &Graph, u: usize, v: usize) -> Result<()> {
    let n = base.order();
    for x in [u, v] {
        if x >= n {
            return Err(Error::VertexOutOfRange { v: x, n });
        }
    }
    if u == v {
        return Err(Error::Precondition("u and v must differ".into()));
    }
    let expected = VertexSet::from_indices(n, (0..n).filter(|&x| x != u && x != v));
    for x in [u, v] {
        if base.neighborhood(x)? != expected {
            return Err(Error::Precondition(format!(
                "N({x}) must be every vertex except {u} and {v}"
            )));
        }
    }
    Ok(())
}

/// Checks that `{u, v, u'_1, v'_1}` is a minimum fort of `ILAT_l(base)`, so
/// `FZ = n - 4`.
pub fn check_fzf_minus4_family(
    base: &Graph,
    u: usize,
    v: usize,
    l: usize,
    budget: &Budget,
) -> Result<TheoremReport> {
    require_level(l, 1)?;
    minus4_hypothesis(base, u, v)?;
    let ig = build(base, &CloningPlan::ilat(base.order(), l));
    let g = ig.graph();
    let n = g.order();
    let mut inst = Instance::new(base, Mode::Ilat, l).on(g);
    let mut members = vec![u, v, ig.child(u, 1).unwrap(), ig.child(v, 1).unwrap()];
    members.sort_unstable();
    let fort = set(n, &members);
    let failed = fort.complement().to_vec();
    if !is_fort(g, &fort) {
        inst.fail("the four-vertex set is not a fort");
    } else {
        inst.certificates.push(Certificate::Fort {
            members: members.clone(),
        });
        inst.certificates.push(Certificate::FailedSet { members: failed });
    }
    let search = min_fort(g, 4, budget)?;
    inst.certificates.push(value_cert(&search));
    match search.value {
        Some(4) => inst.notes.push(format!("FZ = {}", n - 4)),
        Some(k) => {
            inst.certificates.push(Certificate::Fort {
                members: search.witness.clone(),
            });
            inst.fail(format!("a fort of size {k} exists, so FZ = n - {k}"));
        }
        None if search.budget_exhausted => {
            inst.undecided(format!("fort search bracketed in {:?}", search.bounds))
        }
        None => inst.fail("no fort of size <= 4 found"),
    }
    let mut report = TheoremReport::new("fzf-minus4");
    report.instances.push(inst);
    Ok(report)
}

/// Checks that the failed zero forcing number of `ILAT_l(base)` is one of
/// `n - 2`, `n - 4`, `n - 5`, `n - 6`, by fort search through size 6.
pub fn check_fzf_ilat_spectrum(base: &Graph, l: usize, budget: &Budget) -> Result<TheoremReport> {
    require_level(l, 1)?;
    if base.order() == 0 {
        return Err(Error::EmptyGraph);
    }
    let ig = build(base, &CloningPlan::ilat(base.order(), l));
    let g = ig.graph();
    let mut inst = Instance::new(base, Mode::Ilat, l).on(g);
    let search = min_fort(g, 6, budget)?;
    inst.certificates.push(value_cert(&search));
    match search.value {
        Some(k) => {
            inst.certificates.push(Certificate::Fort {
                members: search.witness.clone(),
            });
            if ![2, 4, 5, 6].contains(&k) {
                inst.fail(format!("FZ = n - {k}"));
            }
        }
        None if search.budget_exhausted => {
            inst.undecided(format!("fort search bracketed in {:?}", search.bounds))
        }
        None => inst.fail("no fort of size <= 6"),
    }
    let mut report = TheoremReport::new("fzf-ilat-spectrum");
    report.instances.push(inst);
    Ok(report)
}

fn require_ilt(ig: &IteratedGraph) -> Result<()> {
    if ig.plan().has_anticlone() {
        return Err(Error::NotIlt);
    }
    Ok(())
}

fn require_base_set(ig: &IteratedGraph, u: &VertexSet) -> Result<()> {
    if u.universe() != ig.order() {
        return Err(Error::Precondition(format!(
            "set over {} vertices used with a graph on {}",
            u.universe(),
            ig.order()
        )));
    }
    match u.iter().find(|&v| v >= ig.base_order()) {
        Some(v) => Err(Error::NotBaseVertex(v)),
        None => Ok(()),
    }
}

/// `U` together with every descendant of `U`, in a pure-clone graph.
pub fn ilt_descendant_lift(ig: &IteratedGraph, u: &VertexSet) -> Result<VertexSet> {
    require_ilt(ig)?;
    require_base_set(ig, u)?;
    let mut w = u.clone();
    for v in u.iter() {
        w.union_with(&ig.descendants(v)?);
    }
    Ok(w)
}

/// Expands each force `u -> v` of a base chronology into `2^l` forces of
/// `ILT_l`, covering `v` and all its descendants.
///
/// Writing `p + T` for the descendant of base vertex `p` with ancestors at
/// exactly the levels in `T`, the first stage forces `v + T` for
/// `T ⊆ {1..l-1}` (by increasing `|T|`) from `u + ({1..l} \ T)`, which lies in
/// level `l`. The second stage forces `v + T` with `l ∈ T` (by increasing
/// `|T|`) from `u + ({1..m} \ T)`, where `m` is the largest level below `l`
/// missing from `T`.
pub fn ilt_forcing_schedule(
    ig: &IteratedGraph,
    u: &VertexSet,
    base_chronology: &Chronology,
) -> Result<Chronology> {
    require_ilt(ig)?;
    require_base_set(ig, u)?;
    let n0 = ig.base_order();
    let l = ig.depth();
    let base_graph = ig.graph().prefix(n0);
    let start = VertexSet::from_indices(n0, u.iter());
    if let Err(e) = replay_schedule(&base_graph, &start, base_chronology) {
        let (step, reason) = match e {
            forcing::ReplayError::Illegal { step, reason } => (step, reason),
            forcing::ReplayError::Incomplete { unforced } => (
                base_chronology.len(),
                format!("{unforced} base vertices remain unforced"),
            ),
        };
        return Err(Error::InvalidChronology { step, reason });
    }
    let full: u64 = (1u64 << l) - 1;
    let ordered = |masks: Vec<u64>| {
        let mut m = masks;
        m.sort_by_key(|&t| (t.count_ones(), t));
        m
    };
    let mut steps = Vec::with_capacity(base_chronology.len() << l);
    for f in base_chronology.iter() {
        let below = if l == 0 { 0 } else { full >> 1 };
        for t in ordered((0..=below).filter(|t| t & !below == 0).collect()) {
            steps.push((lineage_index(n0, f.forcer, full & !t), lineage_index(n0, f.target, t)));
        }
        if l == 0 {
            continue;
        }
        let top = 1u64 << (l - 1);
        for t in ordered((0..=full).filter(|t| t & top != 0).collect()) {
            // Largest m in [0, l-1] with level m not in t (level 0 never is).
            let m = (1..l).rev().find(|&m| t >> (m - 1) & 1 == 0).unwrap_or(0);
            let prefix = (1u64 << m) - 1;
            steps.push((lineage_index(n0, f.forcer, prefix & !t), lineage_index(n0, f.target, t)));
        }
    }
    Ok(steps
        .into_iter()
        .enumerate()
        .map(|(i, (forcer, target))| Force {
            round: i + 1,
            forcer,
            target,
        })
        .collect())
}

/// Checks the block structure of a lifted schedule: each base force expands to
/// `2^l` forces whose first half targets levels below `l` from level-`l`
/// forcers, and whose second half targets level `l` from lower forcers, with
/// clone distances to the base target nondecreasing within each half.
pub fn check_schedule_structure(
    ig: &IteratedGraph,
    base_chronology: &Chronology,
    schedule: &Chronology,
) -> std::result::Result<(), String> {
    let l = ig.depth();
    let block = 1usize << l;
    if schedule.len() != base_chronology.len() * block {
        return Err(format!(
            "expected {} forces, found {}",
            base_chronology.len() * block,
            schedule.len()
        ));
    }
    for (b, (base_force, forces)) in base_chronology
        .iter()
        .zip(schedule.steps.chunks(block))
        .enumerate()
    {
        let half = if l == 0 { block } else { block / 2 };
        for (stage, part) in [(1, &forces[..half]), (2, &forces[half..])] {
            let mut last = 0;
            for f in part {
                let d = ig
                    .clone_distance(f.target, base_force.target)
                    .map_err(|e| format!("block {b}: {e}"))?;
                if d < last {
                    return Err(format!("block {b} stage {stage}: clone distance decreases"));
                }
                last = d;
                let (fl, tl) = (ig.level_of(f.forcer), ig.level_of(f.target));
                let ok = match stage {
                    1 => fl == l && tl < l.max(1) || l == 0,
                    _ => fl < l && tl == l,
                };
                if !ok {
                    return Err(format!(
                        "block {b} stage {stage}: force {} -> {} has levels {fl} -> {tl}",
                        f.forcer, f.target
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Lifts a minimum zero forcing set of `base` to `ILT_l(base)`, replays the
/// two-stage schedule, and checks `Z(ILT_l) <= 2^l Z(base)`. The exact
/// `Z(ILT_l)` is computed when `exact` is set.
pub fn check_ilt_zf_lift(
    base: &Graph,
    l: usize,
    exact: bool,
    budget: &Budget,
) -> Result<TheoremReport> {
    let z = zero_forcing_number(base, budget)?;
    let ig = build(base, &CloningPlan::ilt(base.order(), l));
    let g = ig.graph();
    let n = g.order();
    let mut inst = Instance::new(base, Mode::Ilt, l).on(g);
    let Some(zb) = z.value else {
        inst.undecided("base zero forcing number bracketed");
        let mut report = TheoremReport::new("ilt-zf-lift");
        report.instances.push(inst);
        return Ok(report);
    };
    let u = VertexSet::from_indices(n, z.witness.iter().copied());
    let (_, base_chron) = closure(base, &VertexSet::from_indices(base.order(), u.iter()));
    let w = ilt_descendant_lift(&ig, &u)?;
    if w.len() != zb << l {
        inst.fail(format!("lift has {} vertices, expected {}", w.len(), zb << l));
    }
    let (forced, chron) = closure(g, &w);
    if forced.is_full() {
        inst.certificates.push(Certificate::ZeroForcingSet {
            members: w.to_vec(),
            rounds: chron.rounds(),
        });
    } else {
        inst.certificates.push(Certificate::FailedSet { members: w.to_vec() });
        inst.fail("the lifted set does not force");
    }
    let schedule = ilt_forcing_schedule(&ig, &u, &base_chron)?;
    match replay_schedule(g, &w, &schedule) {
        Ok(()) => inst.certificates.push(Certificate::Schedule {
            start: w.to_vec(),
            schedule: schedule.clone(),
        }),
        Err(e) => inst.fail(format!("schedule replay: {e}")),
    }
    if let Err(e) = check_schedule_structure(&ig, &base_chron, &schedule) {
        inst.fail(format!("schedule structure: {e}"));
    }
    if exact {
        let zh = zero_forcing_number(g, budget)?;
        inst.certificates.push(value_cert(&zh));
        match zh.value {
            Some(v) if v > zb << l => inst.fail(format!("Z(ILT_l) = {v} exceeds 2^l Z(base)")),
            Some(v) => inst.notes.push(format!("Z = {v}, lift size {}", zb << l)),
            None => inst.notes.push(format!("exact Z bracketed in {:?}", zh.bounds)),
        }
    }
    let mut report = TheoremReport::new("ilt-zf-lift");
    report.instances.push(inst);
    Ok(report)
}

/// `V` minus level `l - 2` and the level-`l` children of level `l - 2`.
pub fn ilat_upper_set(ig: &IteratedGraph) -> VertexSet {
    let l = ig.depth();
    let n = ig.order();
    let mut out = VertexSet::full(n);
    for v in ig.level_range(l - 2) {
        out.remove(v);
        out.remove(ig.child(v, l).expect("depth >= 2"));
    }
    out
}

/// Checks `n/2 - 1 <= Z(ILAT_l) <= 3n/4` and that the explicit upper-bound set
/// forces within two rounds.
pub fn check_ilat_zf_bounds(base: &Graph, l: usize, budget: &Budget) -> Result<TheoremReport> {
    require_level(l, 2)?;
    if base.order() == 0 {
        return Err(Error::EmptyGraph);
    }
    let ig = build(base, &CloningPlan::ilat(base.order(), l));
    let g = ig.graph();
    let n = g.order();
    let mut inst = Instance::new(base, Mode::Ilat, l).on(g);
    let s = ilat_upper_set(&ig);
    let (forced, chron) = closure(g, &s);
    if forced.is_full() && chron.rounds() <= 2 {
        inst.certificates.push(Certificate::ZeroForcingSet {
            members: s.to_vec(),
            rounds: 2,
        });
    } else {
        if !forced.is_full() {
            inst.certificates.push(Certificate::FailedSet { members: s.to_vec() });
        }
        inst.fail(format!(
            "explicit set forces {} of {n} vertices in {} rounds",
            forced.len(),
            chron.rounds()
        ));
    }
    if 4 * s.len() > 3 * n {
        inst.fail(format!("explicit set has {} > 3n/4 vertices", s.len()));
    }
    let z = zero_forcing_number(g, budget)?;
    inst.certificates.push(value_cert(&z));
    // Integer forms of n/2 - 1 <= Z and Z <= 3n/4.
    let lower_ok = |z: usize| 2 * z + 2 >= n;
    let upper_ok = |z: usize| 4 * z <= 3 * n;
    match z.value {
        Some(v) => {
            inst.certificates.push(Certificate::ZeroForcingSet {
                members: z.witness.clone(),
                rounds: n,
            });
            if !lower_ok(v) || !upper_ok(v) {
                inst.fail(format!("Z = {v} lies outside [n/2 - 1, 3n/4] for n = {n}"));
            }
        }
        None => {
            let (lo, hi) = (z.bounds.0, z.bounds.1.min(s.len()));
            if lower_ok(lo) && upper_ok(hi) {
                inst.notes.push(format!("Z bracketed in [{lo}, {hi}], inside the bounds"));
            } else {
                inst.undecided(format!("Z bracketed in [{lo}, {hi}]"));
            }
        }
    }
    let mut report = TheoremReport::new("ilat-zf-bounds");
    report.instances.push(inst);
    Ok(report)
}

/// A failed loop zero forcing set of the base, together with every non-base
/// vertex, fails to force `ILT_l(base)`.
pub fn check_loop_lift(base: &Graph, w: &VertexSet, l: usize) -> Result<TheoremReport> {
    let n0 = base.order();
    if w.universe() != n0 {
        return Err(Error::Precondition(format!(
            "set over {} vertices used with a base on {n0}",
            w.universe()
        )));
    }
    let mut report = TheoremReport::new("loop-lift");
    let mut inst = Instance::new(base, Mode::Ilt, l);
    if loop_closure(base, w).is_full() {
        inst.verdict = Verdict::Skipped {
            reason: "set loop-forces the base".into(),
        };
        report.instances.push(inst);
        return Ok(report);
    }
    let ig = build(base, &CloningPlan::ilt(n0, l));
    let g = ig.graph();
    let mut inst = inst.on(g);
    let mut start = VertexSet::from_indices(g.order(), w.iter());
    for v in n0..g.order() {
        start.insert(v);
    }
    let (forced, chron) = closure(g, &start);
    if forced.is_full() {
        inst.certificates.push(Certificate::ZeroForcingSet {
            members: start.to_vec(),
            rounds: chron.rounds(),
        });
        inst.fail("the lifted set forces every vertex");
    } else {
        inst.certificates.push(Certificate::FailedSet {
            members: start.to_vec(),
        });
    }
    report.instances.push(inst);
    Ok(report)
}

/// Burning claims over every plan of the family: `b(H) <= 4` when `H` has an
/// anticlone, `b*(H) <= 4` with the explicit sources `u`, `u'_l` when the last
/// level has one, and the `b(base)` versus `b(base) + 1` split for the pure
/// clone plan.
pub fn check_burning_bound(
    base: &Graph,
    l: usize,
    mode: Mode,
    budget: &Budget,
) -> Result<TheoremReport> {
    require_level(l, 1)?;
    let stream = enumerate_plans(base.order(), l, mode, PLAN_CAP)?;
    let base_burn = if base.order() > 0 && base.is_connected() {
        Some((
            burning_number(base, budget)?,
            superfluous_burning_number(base, budget)?,
        ))
    } else {
        None
    };
    let instances: Vec<Result<Instance>> = (0..stream.total())
        .into_par_iter()
        .map(|i| burning_instance(base, &stream.nth_plan(i), mode, base_burn.as_ref(), budget))
        .collect();
    let mut report = TheoremReport::new("burning");
    report.notes.push(
        "the anticlone bound is checked as b(H) <= 4 for the grown graph H; the printed \
         statement names the base graph"
            .into(),
    );
    report.notes.push(
        "the superfluous bound is checked as b*(H) <= 4; the printed statement names the base \
         graph while the argument burns H"
            .into(),
    );
    for inst in instances {
        report.instances.push(inst?);
    }
    Ok(report)
}

fn burning_instance(
    base: &Graph,
    plan: &CloningPlan,
    mode: Mode,
    base_burn: Option<&(solvers::SolverReport, solvers::SolverReport)>,
    budget: &Budget,
) -> Result<Instance> {
    let l = plan.depth();
    let ig = build(base, plan);
    let g = ig.graph();
    let mut inst = Instance::new(base, mode, l);
    if mode == Mode::Iim || mode == Mode::Ilm {
        inst.plan = Some(plan.to_text());
    }
    if !g.is_connected() {
        inst.verdict = Verdict::Skipped {
            reason: "disconnected".into(),
        };
        return Ok(inst);
    }
    let mut inst = inst.on(g);
    let b = burning_number(g, budget)?;
    inst.certificates.push(value_cert(&b));
    if let Some(v) = b.value {
        inst.certificates.push(Certificate::Burning {
            sources: b.witness.clone(),
            superfluous: false,
        });
        if plan.has_anticlone() && v > 4 {
            inst.fail(format!("b(H) = {v} > 4"));
        }
    } else {
        inst.undecided(format!("b(H) bracketed in {:?}", b.bounds));
    }
    if plan.final_level_has_anticlone() {
        let last = plan.level(l);
        let u = last.iter().position(|&a| a).expect("final level has an anticlone");
        let ul = ig.child(u, l).expect("u lies below level l");
        let lower: Vec<usize> = (0..ig.level_range(l).start).collect();
        let covered = |v: usize| v == u || v == ul || g.has_edge(u, v) || g.has_edge(ul, v);
        if lower.iter().all(|&v| covered(v)) {
            inst.certificates.push(Certificate::PartialBurn {
                sources: vec![u, ul],
                rounds: 3,
                covers: lower,
            });
        } else {
            inst.fail(format!("sources {u}, {ul} miss a vertex below level {l}"));
        }
        let explicit = vec![u, ul, u, u];
        if solvers::verify_burning(g, &explicit, true) {
            inst.certificates.push(Certificate::Burning {
                sources: explicit,
                superfluous: true,
            });
        } else {
            inst.fail(format!("sources {u}, {ul} do not burn H within 4 rounds"));
        }
        let bs = superfluous_burning_number(g, budget)?;
        inst.certificates.push(value_cert(&bs));
        match bs.value {
            Some(v) if v > 4 => inst.fail(format!("b*(H) = {v} > 4")),
            Some(_) => inst.certificates.push(Certificate::Burning {
                sources: bs.witness.clone(),
                superfluous: true,
            }),
            None => inst.undecided(format!("b*(H) bracketed in {:?}", bs.bounds)),
        }
    }
    if !plan.has_anticlone() {
        match (base_burn, b.value) {
            (Some((bb, bbs)), Some(bh)) => match (bb.value, bbs.value) {
                (Some(x), Some(y)) => {
                    let expected = if x == y { x } else { x + 1 };
                    inst.notes.push(format!("b(base) = {x}, b*(base) = {y}, b(H) = {bh}"));
                    if bh != expected {
                        inst.fail(format!("b(H) = {bh}, expected {expected}"));
                    }
                }
                _ => inst.undecided("base burning numbers bracketed"),
            },
            (None, _) => inst.undecided("base graph is disconnected"),
            (_, None) => {}
        }
    }
    Ok(inst)
}

/// One line of a verification config.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    pub claim: String,
    pub base: Graph,
    pub levels: std::ops::RangeInclusive<usize>,
    pub mode: Mode,
    pub budget: Budget,
    /// `u=..`, `v=..`, `w=a,b,..`, `exact=true` and similar trailing options.
    pub options: Vec<(String, String)>,
}

pub const CLAIMS: &[&str] = &[
    "fzf-ilat-lower",
    "fzf-minus2",
    "fzf-not-minus3",
    "fzf-minus4",
    "fzf-ilat-spectrum",
    "ilt-zf-lift",
    "ilat-zf-bounds",
    "loop-lift",
    "burning",
];

fn parse_budget(tok: &str) -> std::result::Result<Budget, String> {
    if tok == "-" {
        return Ok(Budget::unlimited());
    }
    let mut budget = Budget::unlimited();
    for part in tok.split(',') {
        if let Some(secs) = part.strip_suffix('s') {
            let secs: f64 = secs.parse().map_err(|_| format!("bad seconds {part:?}"))?;
            if secs.is_nan() || secs <= 0.0 {
                return Err("budget must be positive".into());
            }
            budget.wall = Some(std::time::Duration::from_secs_f64(secs));
        } else if let Some(c) = part.strip_suffix('c') {
            let c: u64 = c.parse().map_err(|_| format!("bad candidate cap {part:?}"))?;
            if c == 0 {
                return Err("budget must be positive".into());
            }
            budget.max_candidates = Some(c);
        } else {
            return Err(format!("bad budget {part:?} (use 30s, 100000c or -)"));
        }
    }
    Ok(budget)
}

/// Base graph token: a shorthand such as `k3` or `p4`, or a graph6 string.
pub fn parse_base(tok: &str) -> std::result::Result<Graph, String> {
    if let Some(g) = Graph::named(tok) {
        return Ok(g);
    }
    parse_graph6(tok).map_err(|e| format!("base {tok:?}: {e}"))
}

impl Family {
    pub fn parse_line(line: &str) -> std::result::Result<Self, String> {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() < 5 {
            return Err("expected: claim base l_lo..l_hi mode budget [key=value ...]".into());
        }
        let claim = toks[0].to_string();
        if !CLAIMS.contains(&claim.as_str()) {
            return Err(format!("unknown claim {claim:?}"));
        }
        let base = parse_base(toks[1])?;
        let levels = match toks[2].split_once("..") {
            Some((a, b)) => {
                let lo = a.parse().map_err(|_| format!("bad level {a:?}"))?;
                let hi = b.parse().map_err(|_| format!("bad level {b:?}"))?;
                if lo > hi {
                    return Err(format!("empty level range {}", toks[2]));
                }
                lo..=hi
            }
            None => {
                let l = toks[2].parse().map_err(|_| format!("bad level {:?}", toks[2]))?;
                l..=l
            }
        };
        let mode = toks[3].parse()?;
        let budget = parse_budget(toks[4])?;
        let options = toks[5..]
            .iter()
            .map(|t| {
                t.split_once('=')
                    .map(|(k, v)| (k.to_string(), v.to_string()))
                    .ok_or_else(|| format!("bad option {t:?} (expected key=value)"))
            })
            .collect::<std::result::Result<_, _>>()?;
        Ok(Self {
            claim,
            base,
            levels,
            mode,
            budget,
            options,
        })
    }

    fn option(&self, key: &str) -> Option<&str> {
        self.options
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    fn index_option(&self, key: &str) -> Result<usize> {
        let raw = self
            .option(key)
            .ok_or_else(|| Error::Precondition(format!("{} needs {key}=<index>", self.claim)))?;
        raw.parse()
            .map_err(|_| Error::Precondition(format!("bad {key}={raw}")))
    }

    fn expect_mode(&self, mode: Mode) -> Result<()> {
        if self.mode != mode {
            return Err(Error::Precondition(format!(
                "{} runs on {mode} graphs, not {}",
                self.claim, self.mode
            )));
        }
        Ok(())
    }

    /// Runs the claim for one level.
    pub fn run_level(&self, l: usize) -> Result<TheoremReport> {
        let (g, b) = (&self.base, &self.budget);
        match self.claim.as_str() {
            "fzf-ilat-lower" => self.expect_mode(Mode::Ilat).and_then(|_| check_fzf_ilat_lower(g, l, b)),
            "fzf-minus2" => self.expect_mode(Mode::Ilat).and_then(|_| classify_fzf_minus2(g, l, b)),
            "fzf-not-minus3" => self.expect_mode(Mode::Ilat).and_then(|_| check_fzf_not_minus3(g, l, b)),
            "fzf-minus4" => {
                self.expect_mode(Mode::Ilat)?;
                check_fzf_minus4_family(g, self.index_option("u")?, self.index_option("v")?, l, b)
            }
            "fzf-ilat-spectrum" => {
                self.expect_mode(Mode::Ilat).and_then(|_| check_fzf_ilat_spectrum(g, l, b))
            }
            "ilt-zf-lift" => {
                self.expect_mode(Mode::Ilt)?;
                check_ilt_zf_lift(g, l, self.option("exact") == Some("true"), b)
            }
            "ilat-zf-bounds" => self.expect_mode(Mode::Ilat).and_then(|_| check_ilat_zf_bounds(g, l, b)),
            "loop-lift" => {
                self.expect_mode(Mode::Ilt)?;
                let raw = self
                    .option("w")
                    .ok_or_else(|| Error::Precondition("loop-lift needs w=<i,j,...>".into()))?;
                let members = raw
                    .split(',')
                    .map(|x| x.parse::<usize>())
                    .collect::<std::result::Result<BTreeSet<_>, _>>()
                    .map_err(|_| Error::Precondition(format!("bad w={raw}")))?;
                if let Some(&v) = members.iter().find(|&&v| v >= g.order()) {
                    return Err(Error::VertexOutOfRange { v, n: g.order() });
                }
                check_loop_lift(g, &VertexSet::from_indices(g.order(), members), l)
            }
            "burning" => check_burning_bound(g, l, self.mode, b),
            other => Err(Error::Precondition(format!("unknown claim {other:?}"))),
        }
    }

    /// Runs every level of the family, levels in parallel, merged in order.
    pub fn run(&self) -> Result<TheoremReport> {
        let parts: Vec<Result<TheoremReport>> = self
            .levels
            .clone()
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|l| self.run_level(l))
            .collect();
        let mut report = TheoremReport::new(&self.claim);
        for p in parts {
            report.extend(p?);
        }
        Ok(report)
    }
}

/// Parses a config: one family per line, `#` comments and blank lines ignored.
pub fn parse_config(text: &str) -> Result<Vec<Family>> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .map(|(line, l)| Family::parse_line(l).map_err(|reason| Error::Config { line, reason }))
        .collect()
}

/// Runs every family; reports for the same claim are merged, in first
/// appearance order.
pub fn run_config(families: &[Family]) -> Result<Vec<TheoremReport>> {
    let mut out: Vec<TheoremReport> = Vec::new();
    for f in families {
        let r = f.run()?;
        match out.iter_mut().find(|x| x.claim_id == r.claim_id) {
            Some(existing) => existing.extend(r),
            None => out.push(r),
        }
    }
    Ok(out)
}
