use super::{EdgeId, Pseudograph};
use crate::error::{Error, Result};

/// Cut-edges of `g`, in increasing id order.
///
/// Iterative DFS lowpoint. The tree edge is skipped by id rather than by
/// parent vertex, so a parallel copy of a tree edge correctly counts as a
/// back edge.
pub fn bridges(g: &Pseudograph) -> Vec<EdgeId> {
    let n = g.vertex_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut out = Vec::new();
    let mut time = 0;
    // (vertex, edge used to enter it, next incidence index)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();
    for root in g.vertices() {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        stack.push((root, usize::MAX, 0));
        while let Some(top) = stack.last_mut() {
            let (x, via, next) = *top;
            if let Some(&e) = g.incident(x).get(next) {
                top.2 += 1;
                if e == via {
                    continue;
                }
                let y = g.edge(e).other(x);
                if disc[y] == usize::MAX {
                    disc[y] = time;
                    low[y] = time;
                    time += 1;
                    stack.push((y, e, 0));
                } else {
                    low[x] = low[x].min(disc[y]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[x]);
                    if low[x] > disc[p] {
                        out.push(via);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// All edge sets of exactly three edges that form a cut `δ(S)` for some
/// vertex set `S`. In a cubic graph this includes the trivial vertex stars.
///
/// Brute force over all triples; meant for desk-scale graphs.
pub fn three_edge_cuts(g: &Pseudograph) -> Vec<[EdgeId; 3]> {
    let m = g.edge_count();
    let (base_components, _) = g.components_without(&[]);
    let mut removed = vec![false; m];
    let mut out = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                let triple = [a, b, c];
                if triple.iter().any(|&e| g.edge(e).is_loop()) {
                    continue;
                }
                for &e in &triple {
                    removed[e] = true;
                }
                let (count, label) = g.components_without(&removed);
                for &e in &triple {
                    removed[e] = false;
                }
                if count > base_components && is_exact_cut(g, &triple, count, &label) {
                    out.push(triple);
                }
            }
        }
    }
    out
}

/// Whether some union of components puts every edge of `cut` across the
/// boundary.
fn is_exact_cut(g: &Pseudograph, cut: &[EdgeId], count: usize, label: &[usize]) -> bool {
    // A connected graph minus three edges has at most four components.
    if count > 16 {
        return false;
    }
    let sides = 1usize << count;
    (1..sides - 1).any(|mask| {
        cut.iter().all(|&e| {
            let (u, v) = g.endpoints(e);
            ((mask >> label[u]) & 1) != ((mask >> label[v]) & 1)
        })
    })
}

/// Upper bound on the number of deleted edge sets examined by
/// [`is_cyclically_k_edge_connected`].
pub const CYCLIC_CUT_BUDGET: u64 = 60_000_000;

/// Whether at least `k` edges must be deleted before two components each
/// containing a cycle appear.
///
/// Graphs that never split into two cyclic components (for example `K4` or
/// `K_{3,3}`) are treated as having infinite cyclic connectivity and return
/// `true` for every `k`.
pub fn is_cyclically_k_edge_connected(g: &Pseudograph, k: usize) -> Result<bool> {
    if k > 6 {
        return Err(Error::input(format!("cyclic connectivity supports k <= 6, got {k}")));
    }
    let m = g.edge_count();
    let work: u64 = (0..k).map(|j| binomial(m as u64, j as u64)).sum();
    if work > CYCLIC_CUT_BUDGET {
        return Err(Error::Resource(format!(
            "cyclic {k}-edge-connectivity needs {work} cut checks on {m} edges"
        )));
    }
    let mut removed = vec![false; m];
    let mut chosen = Vec::with_capacity(k);
    for size in 0..k {
        if splits_cyclically(g, size, 0, &mut chosen, &mut removed) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn splits_cyclically(
    g: &Pseudograph,
    size: usize,
    start: usize,
    chosen: &mut Vec<EdgeId>,
    removed: &mut [bool],
) -> bool {
    if chosen.len() == size {
        return cyclic_components(g, removed) >= 2;
    }
    for e in start..g.edge_count() {
        chosen.push(e);
        removed[e] = true;
        let hit = splits_cyclically(g, size, e + 1, chosen, removed);
        removed[e] = false;
        chosen.pop();
        if hit {
            return true;
        }
    }
    false
}

fn cyclic_components(g: &Pseudograph, removed: &[bool]) -> usize {
    let (count, label) = g.components_without(removed);
    let mut vertices = vec![0usize; count];
    let mut edges = vec![0usize; count];
    for v in g.vertices() {
        vertices[label[v]] += 1;
    }
    for e in g.edges() {
        if !removed[e.id] {
            edges[label[e.u]] += 1;
        }
    }
    (0..count).filter(|&c| edges[c] >= vertices[c]).count()
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}
