//! Zero forcing and loop zero forcing, forts, and forcing chronologies.
//!
//! Forcing rule: a forced vertex with exactly one unforced neighbour forces
//! it. Loop rule (loop forcing only): an unforced vertex whose neighbours are
//! all forced becomes forced. Rounds are synchronous: every force of a round
//! is computed against the round-start state, forcers in ascending order.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitset::{self, VertexSet};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// `forcer` forces `target` in round `round` (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Force {
    pub round: usize,
    pub forcer: usize,
    pub target: usize,
}

/// Ordered record of forces.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Chronology {
    pub steps: Vec<Force>,
}

impl Chronology {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Last round that contains a force, 0 when empty.
    pub fn rounds(&self) -> usize {
        self.steps.iter().map(|f| f.round).max().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Force> {
        self.steps.iter()
    }

    /// `round forcer target` per line.
    pub fn to_text(&self) -> String {
        self.steps
            .iter()
            .map(|f| format!("{} {} {}\n", f.round, f.forcer, f.target))
            .collect()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut steps = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let nums: Vec<usize> = line
                .split_whitespace()
                .map(str::parse)
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::InvalidChronology {
                    step: i + 1,
                    reason: format!("expected `round forcer target`, found {line:?}"),
                })?;
            let [round, forcer, target] = nums[..] else {
                return Err(Error::InvalidChronology {
                    step: i + 1,
                    reason: format!("expected three fields, found {}", nums.len()),
                });
            };
            steps.push(Force {
                round,
                forcer,
                target,
            });
        }
        Ok(Self { steps })
    }
}

impl FromIterator<Force> for Chronology {
    fn from_iter<T: IntoIterator<Item = Force>>(iter: T) -> Self {
        Self {
            steps: iter.into_iter().collect(),
        }
    }
}

fn check_universe(g: &Graph, s: &VertexSet) {
    assert_eq!(
        s.universe(),
        g.order(),
        "vertex set universe does not match graph order"
    );
}

/// Forcing closure of `start` with a chronology of every force.
///
/// Within a round, forcers are scanned in ascending order; if two forcers
/// could force the same target, only the smaller forcer is recorded.
pub fn closure(g: &Graph, start: &VertexSet) -> (VertexSet, Chronology) {
    check_universe(g, start);
    let mut forced = start.clone();
    let mut chronology = Chronology::default();
    let mut round = 0;
    loop {
        round += 1;
        let mut next = forced.clone();
        let mut any = false;
        for u in forced.iter() {
            let row = g.row(u);
            if bitset::and_not_count_capped(row, forced.words()) == 1 {
                let target = bitset::and_not_single(row, forced.words());
                if !next.contains(target) {
                    next.insert(target);
                    chronology.steps.push(Force {
                        round,
                        forcer: u,
                        target,
                    });
                    any = true;
                }
            }
        }
        if !any {
            return (forced, chronology);
        }
        forced = next;
    }
}

pub fn is_zero_forcing_set(g: &Graph, s: &VertexSet) -> bool {
    check_universe(g, s);
    let mut scratch = vec![0; g.stride()];
    forces_all(g, s.words(), &mut scratch)
}

/// Allocation-free closure test used by the solvers. `forced` is scratch of
/// `g.stride()` words; on return it holds the closure of `start`.
///
/// Forces are applied as soon as they are found; the fixed point does not
/// depend on the order.
#[inline]
pub(crate) fn forces_all(g: &Graph, start: &[u64], forced: &mut [u64]) -> bool {
    let n = g.order();
    forced.copy_from_slice(start);
    let target_count = n as u32;
    let mut count = bitset::popcount(forced);
    loop {
        let before = count;
        for wi in 0..forced.len() {
            let mut word = forced[wi];
            while word != 0 {
                let u = wi * 64 + word.trailing_zeros() as usize;
                word &= word - 1;
                let row = g.row(u);
                if bitset::and_not_count_capped(row, forced) == 1 {
                    let t = bitset::and_not_single(row, forced);
                    bitset::set_bit(forced, t);
                    count += 1;
                }
            }
        }
        if count == target_count {
            return true;
        }
        if count == before {
            return false;
        }
    }
}

/// Closure under the forcing rule and the loop rule.
pub fn loop_closure(g: &Graph, start: &VertexSet) -> VertexSet {
    check_universe(g, start);
    let mut forced = start.clone();
    loop {
        let mut next = forced.clone();
        for u in forced.iter() {
            let row = g.row(u);
            if bitset::and_not_count_capped(row, forced.words()) == 1 {
                next.insert(bitset::and_not_single(row, forced.words()));
            }
        }
        for v in forced.complement().iter() {
            if bitset::and_not_count_capped(g.row(v), forced.words()) == 0 {
                next.insert(v);
            }
        }
        if next == forced {
            return forced;
        }
        forced = next;
    }
}

/// A fort is a nonempty set `F` such that no vertex outside `F` has exactly
/// one neighbour in `F`. A set fails to force iff it misses some fort.
pub fn is_fort(g: &Graph, f: &VertexSet) -> bool {
    check_universe(g, f);
    !f.is_empty() && exactly_one_outside(g, f.words()).iter().all(|&w| w == 0)
}

/// Vertices outside `set` with exactly one neighbour in `set`.
pub(crate) fn exactly_one_outside(g: &Graph, set: &[u64]) -> Vec<u64> {
    let stride = g.stride();
    let mut ones = vec![0u64; stride];
    let mut twos = vec![0u64; stride];
    for u in bitset::Ones::new(set) {
        for (i, &a) in g.row(u).iter().enumerate() {
            twos[i] |= ones[i] & a;
            ones[i] |= a;
        }
    }
    (0..stride).map(|i| ones[i] & !twos[i] & !set[i]).collect()
}

/// Why a schedule replay did not end with every vertex forced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReplayError {
    /// Step `step` (0-based) is not a legal force.
    Illegal { step: usize, reason: String },
    /// Every step was legal but `unforced` vertices remain.
    Incomplete { unforced: usize },
}

impl fmt::Display for ReplayError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReplayError::Illegal { step, reason } => write!(f, "step {step} is illegal: {reason}"),
            ReplayError::Incomplete { unforced } => {
                write!(f, "schedule ends with {unforced} vertices unforced")
            }
        }
    }
}

impl std::error::Error for ReplayError {}

/// Executes `schedule` in order from `start`, checking each force against
/// the state left by the previous one. Returns the final forced set.
pub fn apply_schedule(
    g: &Graph,
    start: &VertexSet,
    schedule: &Chronology,
) -> std::result::Result<VertexSet, ReplayError> {
    check_universe(g, start);
    let n = g.order();
    let mut forced = start.clone();
    for (step, f) in schedule.steps.iter().enumerate() {
        let illegal = |reason: String| ReplayError::Illegal { step, reason };
        if f.forcer >= n || f.target >= n {
            return Err(illegal(format!("vertex out of range ({} -> {})", f.forcer, f.target)));
        }
        if !forced.contains(f.forcer) {
            return Err(illegal(format!("forcer {} is not forced", f.forcer)));
        }
        if forced.contains(f.target) {
            return Err(illegal(format!("target {} is already forced", f.target)));
        }
        if !g.has_edge(f.forcer, f.target) {
            return Err(illegal(format!("{} is not adjacent to {}", f.forcer, f.target)));
        }
        let unforced = bitset::and_not_count_capped(g.row(f.forcer), forced.words());
        if unforced != 1 {
            return Err(illegal(format!(
                "forcer {} has more than one unforced neighbour",
                f.forcer
            )));
        }
        forced.insert(f.target);
    }
    Ok(forced)
}

/// `Ok` iff every force of `schedule` is legal and all of `V` ends forced.
pub fn replay_schedule(
    g: &Graph,
    start: &VertexSet,
    schedule: &Chronology,
) -> std::result::Result<(), ReplayError> {
    let forced = apply_schedule(g, start, schedule)?;
    match g.order() - forced.len() {
        0 => Ok(()),
        unforced => Err(ReplayError::Incomplete { unforced }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(n: usize, members: &[usize]) -> VertexSet {
        VertexSet::from_indices(n, members.iter().copied())
    }

    fn force(round: usize, forcer: usize, target: usize) -> Force {
        Force {
            round,
            forcer,
            target,
        }
    }

    #[test]
    fn closure_examples() {
        let p3 = Graph::path(3);
        let (c, chron) = closure(&p3, &set(3, &[0]));
        assert!(c.is_full());
        assert_eq!(chron.steps, vec![force(1, 0, 1), force(2, 1, 2)]);

        let k3 = Graph::complete(3);
        let (c, chron) = closure(&k3, &set(3, &[0]));
        assert_eq!(c.to_vec(), vec![0]);
        assert!(chron.is_empty());

        let c5 = Graph::cycle(5);
        let (c, chron) = closure(&c5, &VertexSet::full(5));
        assert!(c.is_full() && chron.is_empty());

        assert!(closure(&c5, &VertexSet::empty(5)).0.is_empty());
    }

    #[test]
    fn shared_target_is_recorded_once() {
        // Leaves 1 and 2 of a star both see only the centre 0.
        let g = Graph::star(2);
        let (c, chron) = closure(&g, &set(3, &[1, 2]));
        assert!(c.is_full());
        assert_eq!(chron.steps, vec![force(1, 1, 0)]);
    }

    #[test]
    fn zero_forcing_set_examples() {
        assert!(is_zero_forcing_set(&Graph::path(3), &set(3, &[0])));
        assert!(is_zero_forcing_set(&Graph::complete(3), &set(3, &[0, 1])));
        assert!(!is_zero_forcing_set(&Graph::complete(3), &set(3, &[0])));
        assert!(is_zero_forcing_set(&Graph::empty(0), &VertexSet::empty(0)));
    }

    #[test]
    fn loop_closure_examples() {
        let two = Graph::empty(2);
        assert!(closure(&two, &VertexSet::empty(2)).0.is_empty());
        assert!(loop_closure(&two, &VertexSet::empty(2)).is_full());

        assert!(loop_closure(&Graph::cycle(4), &set(4, &[0, 2])).is_full());
        assert!(!closure(&Graph::cycle(4), &set(4, &[0, 2])).0.is_full());

        let p3 = Graph::path(3);
        assert_eq!(loop_closure(&p3, &set(3, &[0])), closure(&p3, &set(3, &[0])).0);
        assert_eq!(loop_closure(&Graph::complete(3), &set(3, &[0])).to_vec(), vec![0]);
    }

    #[test]
    fn fort_examples() {
        let k3 = Graph::complete(3);
        assert!(is_fort(&k3, &set(3, &[1, 2])));
        assert!(!is_fort(&k3, &set(3, &[1])));
        assert!(is_fort(&Graph::path(3), &set(3, &[0, 2])));
        assert!(!is_fort(&k3, &VertexSet::empty(3)));
        assert!(is_fort(&Graph::empty(2), &set(2, &[1])));
    }

    #[test]
    fn replay_examples() {
        let p3 = Graph::path(3);
        let s = set(3, &[0]);
        let ok: Chronology = [force(1, 0, 1), force(2, 1, 2)].into_iter().collect();
        assert_eq!(replay_schedule(&p3, &s, &ok), Ok(()));

        let bad: Chronology = [force(1, 1, 2)].into_iter().collect();
        assert!(matches!(
            replay_schedule(&p3, &s, &bad),
            Err(ReplayError::Illegal { step: 0, .. })
        ));

        let k3 = Graph::complete(3);
        let one: Chronology = [force(1, 0, 2)].into_iter().collect();
        assert_eq!(replay_schedule(&k3, &set(3, &[0, 1]), &one), Ok(()));

        let short: Chronology = [force(1, 0, 1)].into_iter().collect();
        assert_eq!(
            replay_schedule(&p3, &s, &short),
            Err(ReplayError::Incomplete { unforced: 1 })
        );
        let two_unforced: Chronology = [force(1, 0, 1)].into_iter().collect();
        assert!(matches!(
            replay_schedule(&k3, &set(3, &[0]), &two_unforced),
            Err(ReplayError::Illegal { step: 0, .. })
        ));
    }

    #[test]
    fn chronology_text_round_trip() {
        let c: Chronology = [force(1, 0, 1), force(2, 1, 2)].into_iter().collect();
        assert_eq!(c.to_text(), "1 0 1\n2 1 2\n");
        assert_eq!(Chronology::parse(&c.to_text()).unwrap(), c);
        assert!(Chronology::parse("1 2\n").is_err());
        assert!(Chronology::parse("1 a 2\n").is_err());
    }

    fn arb_graph_and_sets() -> impl Strategy<Value = (Graph, VertexSet, VertexSet)> {
        (1usize..70).prop_flat_map(|n| {
            (
                proptest::collection::vec((0..n, 0..n), 0..3 * n),
                proptest::collection::vec(any::<bool>(), n),
                proptest::collection::vec(any::<bool>(), n),
            )
                .prop_map(move |(pairs, a, b)| {
                    let edges: Vec<_> = pairs.into_iter().filter(|(u, v)| u != v).collect();
                    let g = Graph::new(n, &edges).unwrap();
                    let s = VertexSet::from_indices(n, (0..n).filter(|&i| a[i]));
                    let extra = VertexSet::from_indices(n, (0..n).filter(|&i| b[i]));
                    let t = s.union(&extra);
                    (g, s, t)
                })
        })
    }

    proptest! {
        #[test]
        fn closure_properties((g, s, t) in arb_graph_and_sets()) {
            let (cs, chron) = closure(&g, &s);
            let (ct, _) = closure(&g, &t);
            prop_assert!(cs.is_subset(&ct));
            prop_assert_eq!(closure(&g, &cs).0, cs.clone());
            prop_assert_eq!(apply_schedule(&g, &s, &chron), Ok(cs.clone()));
            prop_assert!(cs.is_subset(&loop_closure(&g, &s)));
            prop_assert_eq!(is_zero_forcing_set(&g, &s), cs.is_full());
            let mut scratch = vec![0; g.stride()];
            forces_all(&g, s.words(), &mut scratch);
            prop_assert_eq!(VertexSet::from_words(g.order(), scratch), cs.clone());
            if !cs.is_full() {
                // The unforced remainder of a stalled closure is a fort.
                prop_assert!(is_fort(&g, &cs.complement()));
            }
        }
    }
}
