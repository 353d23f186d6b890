//! Exact Z, FZ, minimum fort, burning number and superfluous burning number.
//!
//! Every search ascends the parameter from a proven lower bound and returns
//! the first feasible value together with a certificate. Subset searches are
//! split by their smallest element across the rayon pool; the reduction keeps
//! the first prefix (in index order) that succeeded, so the witness and the
//! `explored` counter do not depend on the number of workers.
//!
//! Budgets are checked between size levels (candidate cap) and inside the
//! search loops (wall clock). A search that runs out of budget reports the
//! bracket it established instead of a value.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::{self, VertexSet};
use crate::error::{Error, Result};
use crate::forcing::{self, closure};
use crate::graph::Graph;

/// Search limits. `None` means unlimited.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_candidates: Option<u64>,
    pub wall: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn candidates(max: u64) -> Self {
        Self {
            max_candidates: Some(max),
            wall: None,
        }
    }

    pub fn with_wall(mut self, wall: Duration) -> Self {
        self.wall = Some(wall);
        self
    }

    fn start(&self) -> Tracker {
        Tracker {
            deadline: self.wall.map(|w| Instant::now() + w),
            max_candidates: self.max_candidates,
            timed_out: AtomicBool::new(false),
        }
    }
}

struct Tracker {
    deadline: Option<Instant>,
    max_candidates: Option<u64>,
    timed_out: AtomicBool,
}

impl Tracker {
    /// Polled from inner loops every few thousand candidates.
    fn expired(&self) -> bool {
        if self.timed_out.load(Ordering::Relaxed) {
            return true;
        }
        match self.deadline {
            Some(d) if Instant::now() >= d => {
                self.timed_out.store(true, Ordering::Relaxed);
                true
            }
            _ => false,
        }
    }

    fn may_start_level(&self, explored: u64) -> bool {
        !self.expired() && self.max_candidates.is_none_or(|m| explored < m)
    }
}

const POLL_MASK: u64 = 0xfff;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parameter {
    #[serde(rename = "Z")]
    ZeroForcing,
    #[serde(rename = "FZ")]
    FailedZeroForcing,
    #[serde(rename = "min_fort")]
    MinFort,
    #[serde(rename = "b")]
    Burning,
    #[serde(rename = "b_star")]
    SuperfluousBurning,
}

/// Result of an exact search, with its certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverReport {
    pub parameter: Parameter,
    /// `None` when the budget ran out before the value was pinned down, or
    /// when a capped fort search found nothing within the cap.
    pub value: Option<usize>,
    /// Z: a minimum zero forcing set. FZ: a maximum failed set. Fort: the
    /// fort. Burning: the source sequence `x_1, x_2, ...`.
    pub witness: Vec<usize>,
    /// Minimum fort behind an FZ value.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fort: Option<Vec<usize>>,
    /// For burning certificates, the position (0-based) of the source whose
    /// ball covers each vertex.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub covered_by: Option<Vec<usize>>,
    pub explored: u64,
    /// `(lower, upper)`. Collapses to `(value, value)` once the value is
    /// known, otherwise the bracket actually proven.
    pub bounds: (usize, usize),
    pub budget_exhausted: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl SolverReport {
    fn new(parameter: Parameter, bounds: (usize, usize)) -> Self {
        Self {
            parameter,
            value: None,
            witness: Vec::new(),
            fort: None,
            covered_by: None,
            explored: 0,
            bounds,
            budget_exhausted: false,
            notes: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Degree-based information about `Z(G)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub order: usize,
    pub edges: usize,
    /// `δ(G)`, a proven lower bound on `Z(G)`.
    pub min_degree: usize,
    /// `2|E| / |V|`. Reported only; it is not a lower bound in general
    /// (`P_3` has average degree 4/3 and `Z = 1`).
    pub average_degree: f64,
    /// The lower bound the solver actually prunes with.
    pub zf_lower: usize,
    pub zf_upper: usize,
}

pub fn zf_lower_bounds(g: &Graph) -> BoundsReport {
    let n = g.order();
    let m = g.edge_count();
    let min_degree = g.min_degree();
    BoundsReport {
        order: n,
        edges: m,
        min_degree,
        average_degree: if n == 0 { 0.0 } else { 2.0 * m as f64 / n as f64 },
        zf_lower: min_degree.max(n.min(1)),
        zf_upper: if m > 0 { n - 1 } else { n },
    }
}

/// Outcome of searching one prefix of a size level.
struct PrefixHit {
    members: Vec<usize>,
    explored: u64,
}

/// Runs `search(first)` for every admissible smallest element in parallel
/// and returns the first success in index order, plus the total number of
/// candidates examined up to and including it (or in the whole level).
fn first_prefix<F>(n: usize, k: usize, counts: &[AtomicU64], search: F) -> (Option<Vec<usize>>, u64)
where
    F: Fn(usize) -> Option<PrefixHit> + Sync,
{
    let last_first = n - k;
    let hit = (0..=last_first).into_par_iter().find_map_first(|a| {
        let found = search(a);
        if let Some(h) = &found {
            counts[a].store(h.explored, Ordering::Relaxed);
        }
        found.map(|h| (a, h.members))
    });
    match hit {
        Some((a, members)) => {
            let explored = counts[..=a].iter().map(|c| c.load(Ordering::Relaxed)).sum();
            (Some(members), explored)
        }
        None => (None, counts.iter().map(|c| c.load(Ordering::Relaxed)).sum()),
    }
}

/// Exact `Z(G)`. The witness is the lexicographically least minimum zero
/// forcing set.
pub fn zero_forcing_number(g: &Graph, budget: &Budget) -> Result<SolverReport> {
    let n = g.order();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let bounds = zf_lower_bounds(g);
    let mut report = SolverReport::new(Parameter::ZeroForcing, (bounds.zf_lower, bounds.zf_upper));
    let tracker = budget.start();
    let stride = g.stride();
    for k in bounds.zf_lower..=bounds.zf_upper {
        if !tracker.may_start_level(report.explored) {
            report.budget_exhausted = true;
            report.bounds = (k, bounds.zf_upper);
            return Ok(report);
        }
        let counts: Vec<AtomicU64> = (0..n).map(|_| AtomicU64::new(0)).collect();
        let (found, explored) = first_prefix(n, k, &counts, |a| {
            let mut idx: Vec<usize> = (a..a + k).collect();
            let mut mask = vec![0u64; stride];
            let mut scratch = vec![0u64; stride];
            let mut local = 0u64;
            loop {
                mask.iter_mut().for_each(|w| *w = 0);
                for &v in &idx {
                    bitset::set_bit(&mut mask, v);
                }
                local += 1;
                if forcing::forces_all(g, &mask, &mut scratch) {
                    return Some(PrefixHit {
                        members: idx,
                        explored: local,
                    });
                }
                if local & POLL_MASK == 0 && tracker.expired() {
                    counts[a].store(local, Ordering::Relaxed);
                    return None;
                }
                if !next_combination(&mut idx[1..], n) {
                    counts[a].store(local, Ordering::Relaxed);
                    return None;
                }
            }
        });
        report.explored += explored;
        if tracker.expired() && found.is_none() {
            report.budget_exhausted = true;
            report.bounds = (k, bounds.zf_upper);
            return Ok(report);
        }
        if let Some(members) = found {
            report.value = Some(k);
            report.bounds = (k, k);
            report.witness = members;
            if bounds.average_degree > k as f64 {
                report.notes.push(format!(
                    "average degree {:.4} exceeds Z = {k}; it is not used as a bound",
                    bounds.average_degree
                ));
            }
            return Ok(report);
        }
    }
    unreachable!("V minus one endpoint of an edge (or V itself) always forces")
}

/// Advances `idx` (strictly increasing, values `< n`) to the next combination
/// in lexicographic order. Returns `false` after the last one.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Depth-first search for a fort of exactly `k` vertices with smallest
/// element `first`, in lexicographic order.
struct FortSearch<'a> {
    g: &'a Graph,
    k: usize,
    stride: usize,
    tracker: &'a Tracker,
    explored: u64,
    aborted: bool,
    picked: Vec<usize>,
    // Per depth: members, vertices with >= 1 neighbour in F, with >= 2.
    members: Vec<u64>,
    ones: Vec<u64>,
    twos: Vec<u64>,
}

impl<'a> FortSearch<'a> {
    fn new(g: &'a Graph, k: usize, tracker: &'a Tracker) -> Self {
        let stride = g.stride();
        Self {
            g,
            k,
            stride,
            tracker,
            explored: 0,
            aborted: false,
            picked: Vec::with_capacity(k),
            members: vec![0; stride * (k + 1)],
            ones: vec![0; stride * (k + 1)],
            twos: vec![0; stride * (k + 1)],
        }
    }

    fn push(&mut self, v: usize) {
        let d = self.picked.len();
        let s = self.stride;
        let (lo, hi) = (d * s, (d + 1) * s);
        self.members.copy_within(lo..hi, hi);
        self.ones.copy_within(lo..hi, hi);
        self.twos.copy_within(lo..hi, hi);
        bitset::set_bit(&mut self.members[hi..hi + s], v);
        for (i, &a) in self.g.row(v).iter().enumerate() {
            let one = self.ones[hi + i];
            self.twos[hi + i] |= one & a;
            self.ones[hi + i] |= a;
        }
        self.picked.push(v);
    }

    /// Returns `true` once `picked` holds a fort.
    fn run(&mut self) -> bool {
        let d = self.picked.len();
        let s = self.stride;
        let at = d * s;
        self.explored += 1;
        if self.explored & POLL_MASK == 0 && self.tracker.expired() {
            self.aborted = true;
        }
        if self.aborted {
            return false;
        }
        let n = self.g.order();
        let last = *self.picked.last().expect("search starts from a first element");
        // Vertices outside F with exactly one neighbour in F.
        let mut lonely = false;
        let mut blocked = false;
        for i in 0..s {
            let mut w = self.ones[at + i] & !self.twos[at + i] & !self.members[at + i];
            lonely |= w != 0;
            while w != 0 {
                let v = i * 64 + w.trailing_zeros() as usize;
                w &= w - 1;
                // v must later enter F itself or gain a second neighbour in F,
                // and only indices above `last` remain available.
                if v <= last && !self.g.neighbors(v).any(|x| x > last) {
                    blocked = true;
                    break;
                }
            }
            if blocked {
                break;
            }
        }
        if d == self.k {
            return !lonely;
        }
        if blocked {
            return false;
        }
        let remaining = self.k - d;
        for v in last + 1..=n - remaining {
            self.push(v);
            if self.run() {
                return true;
            }
            self.picked.pop();
            if self.aborted {
                return false;
            }
        }
        false
    }
}

/// Smallest fort with at most `cap` vertices; the witness is the
/// lexicographically least among the smallest.
pub fn min_fort(g: &Graph, cap: usize, budget: &Budget) -> Result<SolverReport> {
    let n = g.order();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let cap = cap.min(n);
    let tracker = budget.start();
    let mut report = SolverReport::new(Parameter::MinFort, (1, cap));
    for k in 1..=cap {
        if !tracker.may_start_level(report.explored) {
            report.budget_exhausted = true;
            report.bounds = (k, n);
            return Ok(report);
        }
        let counts: Vec<AtomicU64> = (0..n).map(|_| AtomicU64::new(0)).collect();
        let (found, explored) = first_prefix(n, k, &counts, |a| {
            let mut search = FortSearch::new(g, k, &tracker);
            search.push(a);
            let hit = search.run();
            counts[a].store(search.explored, Ordering::Relaxed);
            hit.then(|| PrefixHit {
                members: search.picked.clone(),
                explored: search.explored,
            })
        });
        report.explored += explored;
        if found.is_none() && tracker.expired() {
            report.budget_exhausted = true;
            report.bounds = (k, n);
            return Ok(report);
        }
        if let Some(members) = found {
            report.value = Some(k);
            report.bounds = (k, k);
            report.witness = members;
            return Ok(report);
        }
    }
    // No fort within the cap: the minimum lies in (cap, n].
    report.bounds = (cap + 1, n);
    Ok(report)
}

/// A cheap upper bound on the minimum fort size: for every vertex `v`, the
/// unforced part of the closure of `V \ N[v]`.
fn heuristic_fort(g: &Graph) -> VertexSet {
    let n = g.order();
    let mut best = VertexSet::full(n);
    for v in 0..n {
        let start = g.closed_neighborhood(v).expect("v < n").complement();
        let (forced, _) = closure(g, &start);
        let fort = forced.complement();
        if !fort.is_empty() && fort.len() < best.len() {
            best = fort;
        }
    }
    best
}

/// Exact `FZ(G) = n - (minimum fort size)`.
pub fn failed_zero_forcing_number(g: &Graph, budget: &Budget) -> Result<SolverReport> {
    let n = g.order();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let seed = heuristic_fort(g);
    let fort = min_fort(g, seed.len(), budget)?;
    let mut report = SolverReport::new(Parameter::FailedZeroForcing, (n - seed.len(), n - 1));
    report.explored = fort.explored;
    match fort.value {
        Some(k) => {
            let f = VertexSet::from_indices(n, fort.witness.iter().copied());
            report.value = Some(n - k);
            report.bounds = (n - k, n - k);
            report.witness = f.complement().to_vec();
            report.fort = Some(fort.witness);
        }
        None if fort.budget_exhausted => {
            // Forts below fort.bounds.0 are ruled out; `seed` is a fort.
            report.budget_exhausted = true;
            report.bounds = (n - seed.len(), n - fort.bounds.0);
            report.fort = Some(seed.to_vec());
            report.witness = seed.complement().to_vec();
        }
        None => unreachable!("the heuristic fort bounds the capped search"),
    }
    Ok(report)
}

/// Distance matrix and balls used by both burning searches.
struct BallTable {
    n: usize,
    stride: usize,
    dist: Vec<Vec<usize>>,
    // balls[r][c] = words of ball(c, r).
    balls: Vec<Vec<u64>>,
    max_ball: Vec<usize>,
    radius: usize,
}

impl BallTable {
    fn new(g: &Graph) -> Result<Self> {
        let n = g.order();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        let dist: Vec<Vec<usize>> = (0..n)
            .map(|s| g.distances_from(s).into_iter().map(|d| d.expect("connected")).collect())
            .collect();
        let radius = dist.iter().map(|row| *row.iter().max().unwrap()).min().unwrap();
        let stride = g.stride();
        let mut balls = Vec::new();
        let mut max_ball = Vec::new();
        for r in 0..=radius {
            let mut layer = vec![0u64; stride * n];
            let mut best = 0;
            for c in 0..n {
                let words = &mut layer[c * stride..(c + 1) * stride];
                for (v, &d) in dist[c].iter().enumerate() {
                    if d <= r {
                        bitset::set_bit(words, v);
                    }
                }
                best = best.max(bitset::popcount(words) as usize);
            }
            balls.push(layer);
            max_ball.push(best);
        }
        Ok(Self {
            n,
            stride,
            dist,
            balls,
            max_ball,
            radius,
        })
    }

    fn ball(&self, c: usize, r: usize) -> &[u64] {
        let r = r.min(self.radius);
        &self.balls[r][c * self.stride..(c + 1) * self.stride]
    }

    fn max_ball(&self, r: usize) -> usize {
        self.max_ball[r.min(self.radius)]
    }

    /// Smallest `t` for which the ball-size budget could possibly cover `V`
    /// with radii `t - 1, ..., floor`.
    fn counting_lower(&self, floor: usize) -> usize {
        let mut t = floor + 1;
        loop {
            let total: usize = (floor..t).map(|r| self.max_ball(r)).sum();
            if total >= self.n {
                return t;
            }
            t += 1;
        }
    }

    fn center(&self) -> usize {
        (0..self.n)
            .min_by_key(|&c| *self.dist[c].iter().max().unwrap())
            .unwrap()
    }
}

/// Cover search: assign a centre to each radius slot so that the balls cover
/// `V`. Branches on the lowest uncovered vertex; slots of equal radius are
/// interchangeable, so only the first free slot of each radius is tried.
struct CoverSearch<'a> {
    table: &'a BallTable,
    radii: Vec<usize>,
    centers: Vec<Option<usize>>,
    tracker: &'a Tracker,
    explored: u64,
    aborted: bool,
}

impl CoverSearch<'_> {
    fn run(&mut self, covered: &[u64]) -> bool {
        self.explored += 1;
        if self.explored & POLL_MASK == 0 && self.tracker.expired() {
            self.aborted = true;
        }
        if self.aborted {
            return false;
        }
        let n = self.table.n;
        let uncovered = n - bitset::popcount(covered) as usize;
        if uncovered == 0 {
            return true;
        }
        let capacity: usize = self
            .radii
            .iter()
            .zip(&self.centers)
            .filter(|(_, c)| c.is_none())
            .map(|(&r, _)| self.table.max_ball(r))
            .sum();
        if capacity < uncovered {
            return false;
        }
        let w = (0..n).find(|&v| !bitset::test_bit(covered, v)).unwrap();
        let mut tried_radius = Vec::new();
        for slot in 0..self.radii.len() {
            let r = self.radii[slot];
            if self.centers[slot].is_some() || tried_radius.contains(&r) {
                continue;
            }
            tried_radius.push(r);
            for c in 0..n {
                if self.table.dist[w][c] > r {
                    continue;
                }
                self.centers[slot] = Some(c);
                let next: Vec<u64> = covered
                    .iter()
                    .zip(self.table.ball(c, r))
                    .map(|(a, b)| a | b)
                    .collect();
                if self.run(&next) {
                    return true;
                }
                self.centers[slot] = None;
                if self.aborted {
                    return false;
                }
            }
        }
        false
    }
}

/// Tries radii `t-1, ..., floor` for `t` ascending from `lower`.
fn burning_search(
    g: &Graph,
    budget: &Budget,
    parameter: Parameter,
    floor: usize,
) -> Result<SolverReport> {
    let table = BallTable::new(g)?;
    let n = table.n;
    let upper = (table.radius + 1).max(floor + 1);
    let lower = table.counting_lower(floor).min(upper);
    let tracker = budget.start();
    let mut report = SolverReport::new(parameter, (lower, upper));
    for t in lower..=upper {
        if !tracker.may_start_level(report.explored) {
            report.budget_exhausted = true;
            report.bounds = (t, upper);
            return Ok(report);
        }
        let radii: Vec<usize> = (floor..t).rev().collect();
        let mut search = CoverSearch {
            table: &table,
            centers: vec![None; radii.len()],
            radii,
            tracker: &tracker,
            explored: 0,
            aborted: false,
        };
        let found = if t == upper {
            // A centre of the graph with radius t - 1 >= rad(G) always works.
            search.centers[0] = Some(table.center());
            search.run(table.ball(table.center(), t - 1)) || {
                search.centers[0] = None;
                search.run(&vec![0; table.stride])
            }
        } else {
            search.run(&vec![0; table.stride])
        };
        report.explored += search.explored;
        if search.aborted {
            report.budget_exhausted = true;
            report.bounds = (t, upper);
            return Ok(report);
        }
        if found {
            let fill = 0;
            let mut sources: Vec<usize> = search.centers.iter().map(|c| c.unwrap_or(fill)).collect();
            if parameter == Parameter::SuperfluousBurning {
                // The t-th source is immaterial; record it as a repeat of x_1.
                sources.push(sources.first().copied().unwrap_or(fill));
            }
            let radii: Vec<usize> = (0..sources.len()).map(|i| t - 1 - i).collect();
            let covered_by = (0..n)
                .map(|v| {
                    (0..sources.len())
                        .find(|&i| (parameter == Parameter::Burning || i + 1 < t)
                            && table.dist[sources[i]][v] <= radii[i])
                        .expect("cover is complete")
                })
                .collect();
            report.value = Some(t);
            report.bounds = (t, t);
            report.witness = sources;
            report.covered_by = Some(covered_by);
            return Ok(report);
        }
    }
    unreachable!("a centre burns the graph within rad(G) + 1 rounds")
}

/// Exact burning number `b(G)` of a connected graph: the least `t` with
/// sources `x_1..x_t` such that the balls `ball(x_i, t - i)` cover `V`.
pub fn burning_number(g: &Graph, budget: &Budget) -> Result<SolverReport> {
    burning_search(g, budget, Parameter::Burning, 0)
}

/// Exact `b*(G)`: the least `t` such that `x_1..x_{t-1}` with
/// `ball(x_i, t - i)` already cover `V`, leaving the `t`-th source idle.
pub fn superfluous_burning_number(g: &Graph, budget: &Budget) -> Result<SolverReport> {
    burning_search(g, budget, Parameter::SuperfluousBurning, 1)
}

/// Checks a burning certificate by recomputing distances: `sources` burn `V`
/// in `sources.len()` rounds. With `superfluous`, the last source may not be
/// used.
pub fn verify_burning(g: &Graph, sources: &[usize], superfluous: bool) -> bool {
    let t = sources.len();
    let n = g.order();
    if sources.iter().any(|&s| s >= n) {
        return false;
    }
    let used = if superfluous { t.saturating_sub(1) } else { t };
    let dists: Vec<Vec<Option<usize>>> = sources[..used].iter().map(|&s| g.distances_from(s)).collect();
    (0..n).all(|v| {
        dists
            .iter()
            .enumerate()
            .any(|(i, d)| d[v].is_some_and(|d| d < t - i))
    })
}

/// Number of rounds until every vertex burns when `sources[i]` ignites in
/// round `i + 1`, following the fire round by round.
pub fn burn_rounds(g: &Graph, sources: &[usize], max_rounds: usize) -> Option<usize> {
    let n = g.order();
    let mut burned = VertexSet::empty(n);
    for round in 1..=max_rounds {
        let mut next = burned.clone();
        for v in burned.iter() {
            next.union_with(&g.neighborhood(v).expect("v < n"));
        }
        if let Some(&s) = sources.get(round - 1) {
            next.insert(s);
        }
        burned = next;
        if burned.is_full() {
            return Some(round);
        }
    }
    None
}
