use super::{girth, Pseudograph, VertexId};
use crate::generators;

/// A vertex bijection `g -> h` preserving every edge multiplicity, if one exists.
///
/// Plain backtracking over vertices in BFS order with degree, loop-count and
/// multiplicity pruning. Only intended for small graphs.
pub fn find_isomorphism(g: &Pseudograph, h: &Pseudograph) -> Option<Vec<VertexId>> {
    let n = g.vertex_count();
    if n != h.vertex_count() || g.edge_count() != h.edge_count() {
        return None;
    }
    let profile = |x: &Pseudograph, v: VertexId| (x.degree(v), x.multiplicity(v, v));
    let mut pg: Vec<_> = g.vertices().map(|v| profile(g, v)).collect();
    let mut ph: Vec<_> = h.vertices().map(|v| profile(h, v)).collect();
    pg.sort_unstable();
    ph.sort_unstable();
    if pg != ph {
        return None;
    }
    if n == 0 {
        return Some(Vec::new());
    }
    let order = bfs_order(g);
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(g, h, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

pub fn is_isomorphic(g: &Pseudograph, h: &Pseudograph) -> bool {
    find_isomorphism(g, h).is_some()
}

pub fn is_isomorphic_to_petersen(g: &Pseudograph) -> bool {
    if g.vertex_count() != 10 || g.edge_count() != 15 || !super::is_cubic(g) || !g.is_simple() {
        return false;
    }
    if girth(g) != Some(5) {
        return false;
    }
    is_isomorphic(g, &generators::petersen())
}

fn bfs_order(g: &Pseudograph) -> Vec<VertexId> {
    let mut seen = vec![false; g.vertex_count()];
    let mut order = Vec::with_capacity(g.vertex_count());
    for s in g.vertices() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut head = order.len();
        order.push(s);
        while head < order.len() {
            let x = order[head];
            head += 1;
            for y in g.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    order.push(y);
                }
            }
        }
    }
    order
}

fn extend(
    g: &Pseudograph,
    h: &Pseudograph,
    order: &[VertexId],
    depth: usize,
    map: &mut [VertexId],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for w in h.vertices() {
        if used[w] || g.degree(v) != h.degree(w) || g.multiplicity(v, v) != h.multiplicity(w, w) {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&u| g.multiplicity(u, v) == h.multiplicity(map[u], w));
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend(g, h, order, depth + 1, map, used) {
            return true;
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    false
}
