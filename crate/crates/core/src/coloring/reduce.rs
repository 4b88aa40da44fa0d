//! Reductions along 2-edge-cuts and triangles, and lifting colourings back.

use serde::{Deserialize, Serialize};

use super::{is_normal, EdgeClass, EdgeColoring};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Pseudograph, VertexId};

/// The two smaller graphs obtained from a 2-edge-cut `{e1, e2}`.
///
/// `g1` is the side containing the first endpoint of `e1` with the new edge
/// `h1` joining the two cut ends; likewise `g2`/`h2`. `h1` and `h2` are the
/// last edges of their graphs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoCutSplit {
    pub cut: [EdgeId; 2],
    pub g1: Pseudograph,
    pub g2: Pseudograph,
    /// Original edge id of every edge of `g1` except `h1`.
    pub origin1: Vec<EdgeId>,
    pub origin2: Vec<EdgeId>,
    /// Side (0 for `g1`, 1 for `g2`) of each original vertex.
    pub side_of: Vec<u8>,
}

impl TwoCutSplit {
    pub fn h1(&self) -> EdgeId {
        self.g1.edge_count() - 1
    }

    pub fn h2(&self) -> EdgeId {
        self.g2.edge_count() - 1
    }
}

fn side_graph(g: &Pseudograph, label: &[usize], side: usize, ends: [VertexId; 2]) -> (Pseudograph, Vec<EdgeId>) {
    let vertices: Vec<VertexId> = g.vertices().filter(|&v| label[v] == side).collect();
    let mut index = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in vertices.iter().enumerate() {
        index[v] = i;
    }
    let mut pairs = Vec::new();
    let mut origin = Vec::new();
    for e in g.edges() {
        if label[e.u] == side && label[e.v] == side {
            pairs.push((index[e.u], index[e.v]));
            origin.push(e.id);
        }
    }
    pairs.push((index[ends[0]], index[ends[1]]));
    (Pseudograph::new(vertices.len(), &pairs).expect("indices in range"), origin)
}

/// Splits `g` along the 2-edge-cut `{e1, e2}`.
pub fn split_two_cut(g: &Pseudograph, e1: EdgeId, e2: EdgeId) -> Result<TwoCutSplit> {
    if e1 == e2 || e1 >= g.edge_count() || e2 >= g.edge_count() {
        return Err(Error::input("a 2-edge-cut needs two distinct existing edges"));
    }
    let mut removed = vec![false; g.edge_count()];
    removed[e1] = true;
    removed[e2] = true;
    let (count, label) = g.components_without(&removed);
    let (a1, b1) = g.endpoints(e1);
    let (x, y) = g.endpoints(e2);
    if count != 2 || label[a1] == label[b1] || label[x] == label[y] {
        return Err(Error::input(format!("edges {e1} and {e2} do not form a 2-edge-cut")));
    }
    let (a2, b2) = if label[x] == label[a1] { (x, y) } else { (y, x) };
    if a1 == a2 || b1 == b2 {
        return Err(Error::input("the cut edges share an endpoint, so the graph has a bridge"));
    }
    let (g1, origin1) = side_graph(g, &label, label[a1], [a1, a2]);
    let (g2, origin2) = side_graph(g, &label, label[b1], [b1, b2]);
    let side_of = label.iter().map(|&l| u8::from(l != label[a1])).collect();
    Ok(TwoCutSplit {
        cut: [e1, e2],
        g1,
        g2,
        origin1,
        origin2,
        side_of,
    })
}

/// Every 2-edge-cut `{e1, e2}` with `e1 < e2` whose removal leaves exactly
/// two components with no shared cut endpoint.
pub fn two_edge_cuts(g: &Pseudograph) -> Vec<[EdgeId; 2]> {
    let mut out = Vec::new();
    let mut removed = vec![false; g.edge_count()];
    for e1 in 0..g.edge_count() {
        removed[e1] = true;
        for e2 in e1 + 1..g.edge_count() {
            removed[e2] = true;
            if g.components_without(&removed).0 == 2 && split_two_cut(g, e1, e2).is_ok() {
                out.push([e1, e2]);
            }
            removed[e2] = false;
        }
        removed[e1] = false;
    }
    out
}

/// Glues normal colourings of the two halves into one of `g`.
///
/// The palette of `c2` is renamed so that `h2` gets the colour of `h1`;
/// both cut edges then take that colour. Renamings are tried in
/// lexicographic order until the result verifies as normal.
pub fn lift_over_2_cut(g: &Pseudograph, split: &TwoCutSplit, c1: &EdgeColoring, c2: &EdgeColoring) -> Result<EdgeColoring> {
    for (graph, c) in [(&split.g1, c1), (&split.g2, c2)] {
        if !is_normal(graph, c)?.normal {
            return Err(Error::input("colourings of the halves must be normal"));
        }
    }
    let k = c1.k.max(c2.k);
    let h1_color = c1.colors[split.h1()];
    let h2_color = c2.colors[split.h2()];
    let mut base = vec![0u32; g.edge_count()];
    for (i, &e) in split.origin1.iter().enumerate() {
        base[e] = c1.colors[i];
    }
    for &e in &split.cut {
        base[e] = h1_color;
    }
    let mut perm: Vec<u32> = (1..=k).collect();
    loop {
        if perm[h2_color as usize - 1] == h1_color {
            let mut colors = base.clone();
            for (i, &e) in split.origin2.iter().enumerate() {
                colors[e] = perm[c2.colors[i] as usize - 1];
            }
            let c = EdgeColoring { k, colors };
            if is_normal(g, &c).map(|r| r.normal).unwrap_or(false) {
                return Ok(c);
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Err(Error::Discrepancy("no palette renaming yields a normal colouring".into()))
}

fn next_permutation(p: &mut [u32]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// `g / T` for a triangle `T`, with bookkeeping to lift colourings back.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleContraction {
    pub triangle: [VertexId; 3],
    /// Triangle edges; `triangle_edges[i]` is opposite `triangle[i]`.
    pub triangle_edges: [EdgeId; 3],
    /// Edge leaving `triangle[i]`.
    pub star: [EdgeId; 3],
    pub quotient: Pseudograph,
    /// Original id of each quotient edge.
    pub origin: Vec<EdgeId>,
}

/// Contracts the triangle on `t` to a single vertex (the last vertex of the
/// quotient). Vertex ids above the removed ones shift down.
pub fn contract_triangle(g: &Pseudograph, t: [VertexId; 3]) -> Result<TriangleContraction> {
    let n = g.vertex_count();
    if t.iter().any(|&v| v >= n || g.degree(v) != 3) || t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
        return Err(Error::input("triangle needs three distinct cubic vertices"));
    }
    let mut triangle_edges = [0; 3];
    for i in 0..3 {
        let (a, b) = (t[(i + 1) % 3], t[(i + 2) % 3]);
        if g.multiplicity(a, b) != 1 {
            return Err(Error::input(format!("vertices {a} and {b} must be joined by exactly one edge")));
        }
        triangle_edges[i] = g.incident(a).iter().copied().find(|&e| g.edge(e).other(a) == b).expect("adjacent");
    }
    let mut star = [0; 3];
    for i in 0..3 {
        star[i] = g
            .incident(t[i])
            .iter()
            .copied()
            .find(|e| !triangle_edges.contains(e))
            .expect("cubic vertex has an outside edge");
    }
    let mut index = vec![usize::MAX; n];
    let mut next = 0;
    for v in g.vertices() {
        if !t.contains(&v) {
            index[v] = next;
            next += 1;
        }
    }
    let hub = next;
    for &v in &t {
        index[v] = hub;
    }
    let mut pairs = Vec::new();
    let mut origin = Vec::new();
    for e in g.edges() {
        if !triangle_edges.contains(&e.id) {
            pairs.push((index[e.u], index[e.v]));
            origin.push(e.id);
        }
    }
    Ok(TriangleContraction {
        triangle: t,
        triangle_edges,
        star,
        quotient: Pseudograph::new(hub + 1, &pairs)?,
        origin,
    })
}

/// Every triangle `{a, b, c}` with `a < b < c`.
pub fn triangles(g: &Pseudograph) -> Vec<[VertexId; 3]> {
    let mut out = Vec::new();
    for a in g.vertices() {
        for b in g.neighbors(a).filter(|&b| b > a) {
            for c in g.neighbors(b).filter(|&c| c > b) {
                if g.adjacent(a, c) && !out.contains(&[a, b, c]) {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// Extends a normal colouring of `g / T` to `g`: each triangle edge copies
/// the colour of its opposite edge, which makes all three poor.
pub fn lift_over_triangle(g: &Pseudograph, tc: &TriangleContraction, cq: &EdgeColoring) -> Result<EdgeColoring> {
    if !is_normal(&tc.quotient, cq)?.normal {
        return Err(Error::input("colouring of the quotient must be normal"));
    }
    let mut colors = vec![0u32; g.edge_count()];
    for (q, &e) in tc.origin.iter().enumerate() {
        colors[e] = cq.colors[q];
    }
    for i in 0..3 {
        colors[tc.triangle_edges[i]] = colors[tc.star[i]];
    }
    let c = EdgeColoring { k: cq.k, colors };
    if !is_normal(g, &c)?.normal {
        return Err(Error::Discrepancy("lifted colouring is not normal".into()));
    }
    for &e in &tc.triangle_edges {
        if super::classify_unchecked(g, &c, e).class != EdgeClass::Poor {
            return Err(Error::Discrepancy(format!("triangle edge {e} is not poor")));
        }
    }
    Ok(c)
}
