//! Naive reference implementations used only by tests. They follow the
//! textbook definitions directly and share no code with the library kernels.
#![allow(dead_code)]

use iterforce::Graph;
use rand::Rng;

/// Forced-set closure by repeated scans over adjacency lists.
pub fn naive_closure(g: &Graph, start: &[bool]) -> Vec<bool> {
    let n = g.order();
    let adj: Vec<Vec<usize>> = (0..n).map(|v| (0..n).filter(|&u| g.has_edge(u, v)).collect()).collect();
    let mut forced = start.to_vec();
    loop {
        let mut changed = false;
        for v in 0..n {
            if !forced[v] {
                continue;
            }
            let white: Vec<usize> = adj[v].iter().copied().filter(|&u| !forced[u]).collect();
            if white.len() == 1 {
                forced[white[0]] = true;
                changed = true;
            }
        }
        if !changed {
            return forced;
        }
    }
}

pub fn mask_to_flags(n: usize, mask: u64) -> Vec<bool> {
    (0..n).map(|v| mask >> v & 1 == 1).collect()
}

pub fn forces_everything(g: &Graph, mask: u64) -> bool {
    naive_closure(g, &mask_to_flags(g.order(), mask)).iter().all(|&f| f)
}

/// Minimum zero forcing set size by scanning all subsets.
pub fn naive_z(g: &Graph) -> usize {
    let n = g.order();
    (0u64..1 << n)
        .filter(|&m| forces_everything(g, m))
        .map(|m| m.count_ones() as usize)
        .min()
        .unwrap()
}

/// Largest set whose closure is not everything, by scanning all subsets.
pub fn naive_fz(g: &Graph) -> usize {
    let n = g.order();
    (0u64..1 << n)
        .filter(|&m| !forces_everything(g, m))
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap()
}

/// Direct fort test: nonempty, and no outside vertex has exactly one
/// neighbour inside.
pub fn naive_is_fort(g: &Graph, mask: u64) -> bool {
    let n = g.order();
    mask != 0
        && (0..n).filter(|&v| mask >> v & 1 == 0).all(|v| {
            (0..n).filter(|&u| mask >> u & 1 == 1 && g.has_edge(u, v)).count() != 1
        })
}

pub fn naive_min_fort(g: &Graph) -> usize {
    let n = g.order();
    (1u64..1 << n)
        .filter(|&m| naive_is_fort(g, m))
        .map(|m| m.count_ones() as usize)
        .min()
        .unwrap()
}

/// Runs the fire process: source `seq[i]` ignites at step `i + 1`, and
/// each later step spreads fire to closed neighbourhoods first.
pub fn burned_after(g: &Graph, seq: &[Option<usize>]) -> Vec<bool> {
    let n = g.order();
    let mut burned = vec![false; n];
    for s in seq {
        let mut next = burned.clone();
        for (v, _) in burned.iter().enumerate().filter(|(_, b)| **b) {
            for (u, slot) in next.iter_mut().enumerate() {
                if g.has_edge(u, v) {
                    *slot = true;
                }
            }
        }
        if let Some(s) = s {
            next[*s] = true;
        }
        burned = next;
    }
    burned
}

fn sequences(n: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n.pow(len as u32)).map(move |mut code| {
        (0..len)
            .map(|_| {
                let x = code % n;
                code /= n;
                x
            })
            .collect()
    })
}

/// Burning number by trying every source sequence of each length.
pub fn naive_b(g: &Graph) -> usize {
    let n = g.order();
    (1..=n)
        .find(|&t| {
            sequences(n, t).any(|seq| {
                let seq: Vec<Option<usize>> = seq.into_iter().map(Some).collect();
                burned_after(g, &seq).iter().all(|&b| b)
            })
        })
        .unwrap()
}

/// Superfluous burning number: the last step adds no source.
pub fn naive_b_star(g: &Graph) -> usize {
    let n = g.order();
    (2..=n + 1)
        .find(|&t| {
            sequences(n, t - 1).any(|seq| {
                let mut seq: Vec<Option<usize>> = seq.into_iter().map(Some).collect();
                seq.push(None);
                burned_after(g, &seq).iter().all(|&b| b)
            })
        })
        .unwrap()
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).unwrap()
}

/// Every labelled graph on `n` vertices.
pub fn all_labelled(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len())
        .map(|m| {
            let edges: Vec<(usize, usize)> =
                pairs.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &e)| e).collect();
            Graph::new(n, &edges).unwrap()
        })
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// One representative per isomorphism class, by brute-force canonical form.
pub fn iso_classes(n: usize) -> Vec<Graph> {
    let perms = permutations(n);
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for g in all_labelled(n) {
        let key = perms
            .iter()
            .map(|p| {
                let edges: Vec<(usize, usize)> = g
                    .edges()
                    .map(|(u, v)| (p[u].min(p[v]), p[u].max(p[v])))
                    .collect();
                iterforce::emit_graph6(&Graph::new(n, &edges).unwrap())
            })
            .min()
            .unwrap();
        if seen.insert(key) {
            out.push(g);
        }
    }
    out
}
