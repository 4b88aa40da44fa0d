//! H-colourings: edge maps sending every star of `G` onto a star of `H`.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::flow::{SearchLimits, SearchStats};
use crate::graph::{is_cubic, EdgeId, Pseudograph, VertexId};

struct HSearch<'a> {
    g: &'a Pseudograph,
    h: &'a Pseudograph,
    order: Vec<VertexId>,
    phi: Vec<Option<EdgeId>>,
    limits: SearchLimits,
    stats: SearchStats,
}

impl HSearch<'_> {
    fn extend(&mut self, depth: usize) -> Result<bool> {
        if depth == self.order.len() {
            return Ok(true);
        }
        let v = self.order[depth];
        let star = self.g.incident(v).to_vec();
        let images: Vec<EdgeId> = star.iter().filter_map(|&e| self.phi[e]).collect();
        let open: Vec<EdgeId> = star.iter().copied().filter(|&e| self.phi[e].is_none()).collect();
        let targets: Vec<VertexId> = match images.first() {
            Some(&x) => {
                let (a, b) = self.h.endpoints(x);
                if a == b { vec![a] } else { vec![a, b] }
            }
            None => self.h.vertices().collect(),
        };
        for w in targets {
            let hstar = self.h.incident(w);
            let mut rest: Vec<EdgeId> = hstar.to_vec();
            let mut fits = true;
            for x in &images {
                match rest.iter().position(|y| y == x) {
                    Some(i) => {
                        rest.swap_remove(i);
                    }
                    None => {
                        fits = false;
                        break;
                    }
                }
            }
            if !fits {
                continue;
            }
            rest.sort_unstable();
            loop {
                self.stats.nodes += 1;
                self.limits.check(self.stats.nodes)?;
                for (&e, &x) in open.iter().zip(&rest) {
                    self.phi[e] = Some(x);
                }
                if self.extend(depth + 1)? {
                    return Ok(true);
                }
                if !next_permutation(&mut rest) {
                    break;
                }
            }
            for &e in &open {
                self.phi[e] = None;
            }
        }
        Ok(false)
    }
}

fn next_permutation(p: &mut [EdgeId]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn bfs_vertices(g: &Pseudograph) -> Vec<VertexId> {
    let mut seen = vec![false; g.vertex_count()];
    let mut order = Vec::with_capacity(g.vertex_count());
    for s in g.vertices() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for y in g.neighbors(x) {
                if !std::mem::replace(&mut seen[y], true) {
                    queue.push_back(y);
                }
            }
        }
    }
    order
}

/// An `H`-colouring of `g`: `phi[e]` is the edge of `h` that `e` maps to.
pub fn h_coloring(g: &Pseudograph, h: &Pseudograph, limits: SearchLimits) -> Result<(Option<Vec<EdgeId>>, SearchStats)> {
    if !is_cubic(g) || !is_cubic(h) || g.has_loops() || h.has_loops() {
        return Err(Error::input("H-colourings need loopless cubic graphs"));
    }
    let mut s = HSearch {
        g,
        h,
        order: bfs_vertices(g),
        phi: vec![None; g.edge_count()],
        limits,
        stats: SearchStats::default(),
    };
    let found = s.extend(0)?;
    let phi = found.then(|| s.phi.iter().map(|x| x.expect("all edges mapped")).collect());
    if found {
        s.stats.solutions = 1;
    }
    Ok((phi, s.stats))
}

/// Checks the star condition at every vertex of `g`.
pub fn is_h_coloring(g: &Pseudograph, h: &Pseudograph, phi: &[EdgeId]) -> bool {
    if phi.len() != g.edge_count() || phi.iter().any(|&x| x >= h.edge_count()) {
        return false;
    }
    g.vertices().all(|v| {
        let mut image: Vec<EdgeId> = g.incident(v).iter().map(|&e| phi[e]).collect();
        image.sort_unstable();
        h.vertices().any(|w| {
            let mut star = h.incident(w).to_vec();
            star.sort_unstable();
            star == image
        })
    })
}
