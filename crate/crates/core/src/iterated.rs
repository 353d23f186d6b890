//! Clone/anticlone growth models with explicit lineage.
//!
//! Every step doubles the vertex count: vertex `j` of the current graph gets a
//! child with index `|V| + j`, adjacent either to `N[j]` (clone) or to
//! `AN[j] = V \ N[j]` (anticlone), both taken in the pre-step graph. The
//! children of one step form a new level, which is always an independent set.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Which growth rule families a plan belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Clone every vertex at every step.
    Ilt,
    /// Anticlone every vertex at every step.
    Ilat,
    /// One rule per step, shared by every vertex.
    Ilm,
    /// Independent rule per vertex per step.
    Iim,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "ilt" => Ok(Mode::Ilt),
            "ilat" => Ok(Mode::Ilat),
            "ilm" => Ok(Mode::Ilm),
            "iim" => Ok(Mode::Iim),
            other => Err(format!("unknown mode {other:?} (expected ilt, ilat, ilm or iim)")),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Ilt => "ilt",
            Mode::Ilat => "ilat",
            Mode::Ilm => "ilm",
            Mode::Iim => "iim",
        })
    }
}

/// Per-level, per-vertex choice of clone (`false`) or anticlone (`true`).
///
/// `levels[t - 1]` has one entry per vertex present before step `t`, that is
/// `base_n * 2^(t-1)` entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CloningPlan {
    base_n: usize,
    levels: Vec<Vec<bool>>,
}

impl CloningPlan {
    pub fn new(base_n: usize, levels: Vec<Vec<bool>>) -> Result<Self> {
        for (i, level) in levels.iter().enumerate() {
            let expected = base_n << i;
            if level.len() != expected {
                return Err(Error::PlanWidth {
                    level: i + 1,
                    expected,
                    found: level.len(),
                });
            }
        }
        Ok(Self { base_n, levels })
    }

    /// Plan with one rule per level (`true` = anticlone everything).
    pub fn uniform(base_n: usize, per_level: &[bool]) -> Self {
        let levels = per_level
            .iter()
            .enumerate()
            .map(|(i, &anti)| vec![anti; base_n << i])
            .collect();
        Self { base_n, levels }
    }

    pub fn ilt(base_n: usize, l: usize) -> Self {
        Self::uniform(base_n, &vec![false; l])
    }

    pub fn ilat(base_n: usize, l: usize) -> Self {
        Self::uniform(base_n, &vec![true; l])
    }

    pub fn base_order(&self) -> usize {
        self.base_n
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Choices of step `t` (1-based).
    pub fn level(&self, t: usize) -> &[bool] {
        &self.levels[t - 1]
    }

    pub fn levels(&self) -> &[Vec<bool>] {
        &self.levels
    }

    /// Keeps only the first `t` steps.
    pub fn truncated(&self, t: usize) -> Self {
        Self {
            base_n: self.base_n,
            levels: self.levels[..t.min(self.levels.len())].to_vec(),
        }
    }

    /// The most specific family this plan belongs to. An empty plan is ILT.
    pub fn mode(&self) -> Mode {
        let all = |want: bool| self.levels.iter().flatten().all(|&a| a == want);
        if all(false) {
            Mode::Ilt
        } else if all(true) {
            Mode::Ilat
        } else if self.levels.iter().all(|l| l.windows(2).all(|w| w[0] == w[1])) {
            Mode::Ilm
        } else {
            Mode::Iim
        }
    }

    pub fn has_anticlone(&self) -> bool {
        self.levels.iter().flatten().any(|&a| a)
    }

    /// Whether the last step anticlones at least one vertex.
    pub fn final_level_has_anticlone(&self) -> bool {
        self.levels.last().is_some_and(|l| l.iter().any(|&a| a))
    }

    /// One line per level over `{c, a}`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for level in &self.levels {
            out.extend(level.iter().map(|&a| if a { 'a' } else { 'c' }));
            out.push('\n');
        }
        out
    }
}

/// A plan as written in a plan file, before the base order is known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlanSpec {
    Explicit(Vec<Vec<bool>>),
    Ilt(usize),
    Ilat(usize),
    /// One entry per level, `true` = anticlone.
    Ilm(Vec<bool>),
}

impl PlanSpec {
    /// Accepts either explicit `{c,a}` lines, or one shorthand line
    /// `ILT <l>`, `ILAT <l>` or `ILM <pattern over c/a>`.
    pub fn parse(text: &str) -> Result<Self> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        let syntax = |line: usize, reason: String| Error::PlanSyntax { line, reason };
        if let Some(&(line, first)) = lines.first() {
            let mut parts = first.split_whitespace();
            let head = parts.next().unwrap_or("").to_ascii_uppercase();
            if matches!(head.as_str(), "ILT" | "ILAT" | "ILM") {
                let arg = parts
                    .next()
                    .ok_or_else(|| syntax(line, format!("{head} needs an argument")))?;
                if parts.next().is_some() || lines.len() > 1 {
                    return Err(syntax(line, "shorthand plan must be a single line".into()));
                }
                let depth = || {
                    arg.parse::<usize>()
                        .map_err(|_| syntax(line, format!("bad level count {arg:?}")))
                };
                return match head.as_str() {
                    "ILT" => Ok(PlanSpec::Ilt(depth()?)),
                    "ILAT" => Ok(PlanSpec::Ilat(depth()?)),
                    _ => Ok(PlanSpec::Ilm(parse_choices(arg).map_err(|r| syntax(line, r))?)),
                };
            }
        }
        let levels = lines
            .iter()
            .map(|&(line, l)| parse_choices(l).map_err(|r| syntax(line, r)))
            .collect::<Result<_>>()?;
        Ok(PlanSpec::Explicit(levels))
    }

    pub fn into_plan(self, base_n: usize) -> Result<CloningPlan> {
        match self {
            PlanSpec::Explicit(levels) => CloningPlan::new(base_n, levels),
            PlanSpec::Ilt(l) => Ok(CloningPlan::ilt(base_n, l)),
            PlanSpec::Ilat(l) => Ok(CloningPlan::ilat(base_n, l)),
            PlanSpec::Ilm(p) => Ok(CloningPlan::uniform(base_n, &p)),
        }
    }
}

fn parse_choices(s: &str) -> std::result::Result<Vec<bool>, String> {
    s.chars()
        .map(|c| match c {
            'c' | 'C' | '0' => Ok(false),
            'a' | 'A' | '1' => Ok(true),
            other => Err(format!("unexpected character {other:?} (expected c or a)")),
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Base,
    Clone,
    Anticlone,
}

impl fmt::Display for VertexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VertexKind::Base => "base",
            VertexKind::Clone => "clone",
            VertexKind::Anticlone => "anticlone",
        })
    }
}

/// Per-vertex level, parent and kind.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Lineage {
    pub level: Vec<usize>,
    pub parent: Vec<Option<usize>>,
    pub kind: Vec<VertexKind>,
}

impl Lineage {
    /// Sidecar text: one `index level parent kind` line per vertex, `-` for no parent.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in 0..self.level.len() {
            let parent = self.parent[v].map_or_else(|| "-".to_string(), |p| p.to_string());
            out.push_str(&format!("{v} {} {parent} {}\n", self.level[v], self.kind[v]));
        }
        out
    }
}

/// A graph grown from a base by a [`CloningPlan`], with its lineage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IteratedGraph {
    graph: Graph,
    lineage: Lineage,
    plan: CloningPlan,
}

impl IteratedGraph {
    /// Level-0 snapshot of `base`.
    pub fn from_base(base: Graph) -> Self {
        let n = base.order();
        Self {
            lineage: Lineage {
                level: vec![0; n],
                parent: vec![None; n],
                kind: vec![VertexKind::Base; n],
            },
            plan: CloningPlan {
                base_n: n,
                levels: Vec::new(),
            },
            graph: base,
        }
    }

    /// Applies every step of `plan` to `base`.
    pub fn build(base: &Graph, plan: &CloningPlan) -> Result<Self> {
        if plan.base_n != base.order() {
            return Err(Error::PlanWidth {
                level: 1,
                expected: base.order(),
                found: plan.base_n,
            });
        }
        plan.levels
            .iter()
            .try_fold(Self::from_base(base.clone()), |ig, choices| ig.step(choices))
    }

    /// One growth step. `choices[j]` is `true` when vertex `j` is anticloned.
    pub fn step(&self, choices: &[bool]) -> Result<Self> {
        let n = self.graph.order();
        if choices.len() != n {
            return Err(Error::PlanWidth {
                level: self.depth() + 1,
                expected: n,
                found: choices.len(),
            });
        }
        let mut g = Graph::empty(2 * n);
        for (u, v) in self.graph.edges() {
            g.add_edge_unchecked(u, v);
        }
        for (j, &anti) in choices.iter().enumerate() {
            let child = n + j;
            for w in 0..n {
                let in_closed = w == j || self.graph.has_edge(j, w);
                if in_closed != anti {
                    g.add_edge_unchecked(child, w);
                }
            }
        }
        let mut lineage = self.lineage.clone();
        let level = self.depth() + 1;
        for (j, &anti) in choices.iter().enumerate() {
            lineage.level.push(level);
            lineage.parent.push(Some(j));
            lineage.kind.push(if anti {
                VertexKind::Anticlone
            } else {
                VertexKind::Clone
            });
        }
        let mut plan = self.plan.clone();
        plan.levels.push(choices.to_vec());
        Ok(Self {
            graph: g,
            lineage,
            plan,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn lineage(&self) -> &Lineage {
        &self.lineage
    }

    pub fn plan(&self) -> &CloningPlan {
        &self.plan
    }

    pub fn base_order(&self) -> usize {
        self.plan.base_n
    }

    /// Number of growth steps applied.
    pub fn depth(&self) -> usize {
        self.plan.levels.len()
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    /// Index range of level `t`.
    pub fn level_range(&self, t: usize) -> Range<usize> {
        level_range(self.plan.base_n, t)
    }

    pub fn level_set(&self, t: usize) -> VertexSet {
        VertexSet::from_indices(self.order(), self.level_range(t))
    }

    pub fn level_of(&self, v: usize) -> usize {
        self.lineage.level[v]
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.lineage.parent[v]
    }

    /// Index of the child of `v` added at step `t` (`v'_t`).
    pub fn child(&self, v: usize, t: usize) -> Option<usize> {
        let r = self.level_range(t);
        (t >= 1 && t <= self.depth() && v < r.start).then(|| v + r.start)
    }

    /// All `u` whose parent chain reaches `v`, excluding `v`.
    pub fn descendants(&self, v: usize) -> Result<VertexSet> {
        let n = self.order();
        if v >= n {
            return Err(Error::VertexOutOfRange { v, n });
        }
        let mut out = VertexSet::empty(n);
        for u in self.level_range(self.level_of(v) + 1).start..n {
            let p = self.lineage.parent[u].expect("non-base vertices have parents");
            if p == v || out.contains(p) {
                out.insert(u);
            }
        }
        Ok(out)
    }

    /// Number of parent hops from `x` up to `y`, which equals the number of
    /// levels at or after `y`'s level holding a proper ancestor of `x`.
    pub fn clone_distance(&self, x: usize, y: usize) -> Result<usize> {
        let n = self.order();
        for v in [x, y] {
            if v >= n {
                return Err(Error::VertexOutOfRange { v, n });
            }
        }
        let mut cur = x;
        let mut hops = 0;
        while cur != y {
            match self.lineage.parent[cur] {
                Some(p) if cur > y => {
                    cur = p;
                    hops += 1;
                }
                _ => return Err(Error::NotDescendant { x, y }),
            }
        }
        Ok(hops)
    }
}

/// Index range of level `t` when the base has `base_n` vertices.
pub fn level_range(base_n: usize, t: usize) -> Range<usize> {
    if t == 0 {
        0..base_n
    } else {
        (base_n << (t - 1))..(base_n << t)
    }
}

/// In a pure-clone or pure-anticlone graph, the descendant of base vertex `p`
/// obtained by taking a child at exactly the steps in `steps` (bit `t - 1`
/// for step `t`).
pub fn lineage_index(base_n: usize, p: usize, steps: u64) -> usize {
    p + base_n * steps as usize
}

/// Exhaustive, duplicate-free stream of plans in lexicographic order
/// (clone before anticlone, level 1 first, vertex 0 first).
pub fn enumerate_plans(base_n: usize, l: usize, mode: Mode, cap: u64) -> Result<PlanStream> {
    let bits: u64 = match mode {
        Mode::Ilt | Mode::Ilat => 0,
        Mode::Ilm => l as u64,
        Mode::Iim => (0..l).map(|i| (base_n as u64) << i).sum(),
    };
    if bits >= 63 || (1u64 << bits) > cap {
        return Err(Error::PlanOverflow { bits, cap });
    }
    Ok(PlanStream {
        base_n,
        l,
        mode,
        bits,
        next: 0,
        total: 1u64 << bits,
    })
}

/// Iterator returned by [`enumerate_plans`]. Plan `i` is determined by `i`
/// alone, so the stream can be split across workers by index range.
#[derive(Debug, Clone)]
pub struct PlanStream {
    base_n: usize,
    l: usize,
    mode: Mode,
    bits: u64,
    next: u64,
    total: u64,
}

impl PlanStream {
    pub fn total(&self) -> u64 {
        self.total
    }

    /// The `i`-th plan of the stream.
    pub fn nth_plan(&self, i: u64) -> CloningPlan {
        assert!(i < self.total);
        match self.mode {
            Mode::Ilt => CloningPlan::ilt(self.base_n, self.l),
            Mode::Ilat => CloningPlan::ilat(self.base_n, self.l),
            Mode::Ilm => {
                let pattern: Vec<bool> = (0..self.l)
                    .map(|t| i >> (self.bits - 1 - t as u64) & 1 == 1)
                    .collect();
                CloningPlan::uniform(self.base_n, &pattern)
            }
            Mode::Iim => {
                let mut k = 0;
                let levels = (0..self.l)
                    .map(|t| {
                        (0..self.base_n << t)
                            .map(|_| {
                                let bit = i >> (self.bits - 1 - k) & 1 == 1;
                                k += 1;
                                bit
                            })
                            .collect()
                    })
                    .collect();
                CloningPlan {
                    base_n: self.base_n,
                    levels,
                }
            }
        }
    }
}

impl Iterator for PlanStream {
    type Item = CloningPlan;

    fn next(&mut self) -> Option<CloningPlan> {
        (self.next < self.total).then(|| {
            let plan = self.nth_plan(self.next);
            self.next += 1;
            plan
        })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.next) as usize;
        (left, Some(left))
    }
}
