//! Named graphs and graph families.
//!
//! Every constructor is deterministic: the same arguments always give the
//! same edge list, in the same order. Vertex and edge numbering for each
//! construction is documented on the function because certificates refer to
//! edge ids.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bridges, is_cubic, EdgeId, Pseudograph, VertexId};
use crate::matching::{complement_two_factor, PerfectMatching, TwoFactor};

fn build(n: usize, pairs: &[(usize, usize)]) -> Pseudograph {
    Pseudograph::new(n, pairs).expect("generator produced an out-of-range endpoint")
}

/// Petersen graph. Outer cycle `0..5` (edges 0..5), spokes `i -- i+5`
/// (edges 5..10), inner pentagram `5+i -- 5+(i+2)%5` (edges 10..15).
pub fn petersen() -> Pseudograph {
    let mut pairs = Vec::with_capacity(15);
    pairs.extend((0..5).map(|i| (i, (i + 1) % 5)));
    pairs.extend((0..5).map(|i| (i, i + 5)));
    pairs.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
    build(10, &pairs)
}

/// Petersen minus the outer edge `0 -- 1`; vertices 0 and 1 have degree two.
pub fn petersen_minus_edge() -> Pseudograph {
    let pairs: Vec<_> = petersen().edge_pairs().into_iter().skip(1).collect();
    build(10, &pairs)
}

/// The two degree-two vertices of [`petersen_minus_edge`].
pub const PETERSEN_MINUS_EDGE_PORTS: [VertexId; 2] = [0, 1];

/// Petersen minus vertex 0, relabelled `v -> v-1`. The degree-two vertices
/// are the former neighbours 1, 4 and 5, now 0, 3 and 4.
pub fn petersen_minus_vertex() -> Pseudograph {
    let pairs: Vec<_> = petersen()
        .edge_pairs()
        .into_iter()
        .filter(|&(u, v)| u != 0 && v != 0)
        .map(|(u, v)| (u - 1, v - 1))
        .collect();
    build(9, &pairs)
}

pub const PETERSEN_MINUS_VERTEX_PORTS: [VertexId; 3] = [0, 3, 4];

pub fn k4() -> Pseudograph {
    build(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
}

/// Two vertices joined by three parallel edges.
pub fn k23() -> Pseudograph {
    build(2, &[(0, 1), (0, 1), (0, 1)])
}

/// `K_{3,3}` with parts `{0,1,2}` and `{3,4,5}`.
pub fn k33() -> Pseudograph {
    let pairs: Vec<_> = (0..3)
        .flat_map(|i| (3..6).map(move |j| (i, j)))
        .collect();
    build(6, &pairs)
}

/// Prism over an `n`-cycle (the permutation graph of the identity).
pub fn prism(n: usize) -> Result<Pseudograph> {
    permutation_graph(&(0..n).collect::<Vec<_>>())
}

/// Edge id of the bridge `v1 -- w1` in [`fig3_graph`].
pub const FIG3_BRIDGE: EdgeId = 0;

/// Two copies of `K4` with one subdivided edge, joined through the
/// subdivision vertices by a bridge.
///
/// Vertices `v1..v5` are `0..5` and `w1..w5` are `5..10`. Edge 0 is the
/// bridge `v1 w1`; then for each side in turn the edges
/// `v1v2, v1v3, v2v4, v3v4, v3v5, v2v5, v4v5`.
pub fn fig3_graph() -> Pseudograph {
    let mut pairs = vec![(0, 5)];
    for o in [0, 5] {
        pairs.extend([
            (o, o + 1),
            (o, o + 2),
            (o + 1, o + 3),
            (o + 2, o + 3),
            (o + 2, o + 4),
            (o + 1, o + 4),
            (o + 3, o + 4),
        ]);
    }
    build(10, &pairs)
}

/// The normal 7-edge-colouring drawn with [`fig3_graph`]: the bridge is poor,
/// all other edges rich.
pub fn fig3_coloring() -> Vec<u32> {
    let side = [2, 3, 4, 7, 5, 6, 1];
    let mut colors = vec![1];
    colors.extend(side);
    colors.extend(side);
    colors
}

/// A central vertex (9) joined to three triangles, each with one doubled edge.
///
/// Gadget `i` uses vertices `3i, 3i+1, 3i+2` and edges
/// `(3i,3i+1), (3i,3i+2), (3i+1,3i+2), (3i+1,3i+2), (3i,9)`.
pub fn fig4_graph() -> Pseudograph {
    let mut pairs = Vec::new();
    for i in 0..3 {
        let a = 3 * i;
        pairs.extend([(a, a + 1), (a, a + 2), (a + 1, a + 2), (a + 1, a + 2), (a, 9)]);
    }
    build(10, &pairs)
}

/// One link of a string: a diamond (`K4 - e`) or a 2-cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StringLink {
    Diamond,
    TwoCycle,
}

/// A string of links with its two degree-two ports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkString {
    pub graph: Pseudograph,
    pub head: VertexId,
    pub tail: VertexId,
}

/// `K4 - e` on `0..4`; the missing edge is `0 -- 3`, so 0 is the head and 3
/// the tail.
pub fn diamond() -> Pseudograph {
    build(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
}

/// Appends the link's edges to `pairs` starting at vertex `base`; returns
/// (head, tail, vertices used).
fn push_link(link: StringLink, base: usize, pairs: &mut Vec<(usize, usize)>) -> (usize, usize, usize) {
    match link {
        StringLink::Diamond => {
            pairs.extend(diamond().edge_pairs().into_iter().map(|(u, v)| (u + base, v + base)));
            (base, base + 3, 4)
        }
        StringLink::TwoCycle => {
            pairs.extend([(base, base + 1), (base, base + 1)]);
            (base, base + 1, 2)
        }
    }
}

/// Links chained tail-to-head; vertices numbered link by link.
pub fn string_of(links: &[StringLink]) -> Result<LinkString> {
    if links.is_empty() {
        return Err(Error::input("a string needs at least one link"));
    }
    let mut pairs = Vec::new();
    let mut n = 0;
    let mut head = 0;
    let mut prev_tail = None;
    for (i, &link) in links.iter().enumerate() {
        let (h, t, used) = push_link(link, n, &mut pairs);
        n += used;
        if let Some(pt) = prev_tail {
            pairs.push((pt, h));
        }
        if i == 0 {
            head = h;
        }
        prev_tail = Some(t);
    }
    Ok(LinkString {
        graph: build(n, &pairs),
        head,
        tail: prev_tail.unwrap(),
    })
}

pub fn string_of_diamonds(k: usize) -> Result<LinkString> {
    string_of(&vec![StringLink::Diamond; k])
}

/// A cyclically closed string; needs at least two links.
pub fn ring_of(links: &[StringLink]) -> Result<Pseudograph> {
    if links.len() < 2 {
        return Err(Error::input("a ring needs at least two links"));
    }
    let s = string_of(links)?;
    let mut pairs = s.graph.edge_pairs();
    pairs.push((s.tail, s.head));
    Ok(build(s.graph.vertex_count(), &pairs))
}

pub fn ring_of_diamonds(k: usize) -> Result<Pseudograph> {
    ring_of(&vec![StringLink::Diamond; k])
}

/// Removes edge `e = uv` and splices in a string, adding `(u, head)` and
/// `(v, tail)`.
///
/// Edges other than `e` keep their relative order but ids above `e` shift
/// down by one; the string's edges follow, then the two connectors. String
/// vertices are appended after the existing ones.
pub fn replace_edge_with_string(g: &Pseudograph, e: EdgeId, links: &[StringLink]) -> Result<Pseudograph> {
    if e >= g.edge_count() {
        return Err(Error::input(format!("edge {e} does not exist")));
    }
    let s = string_of(links)?;
    let base = g.vertex_count();
    let (u, v) = g.endpoints(e);
    let mut pairs: Vec<_> = g
        .edge_pairs()
        .into_iter()
        .enumerate()
        .filter(|&(id, _)| id != e)
        .map(|(_, p)| p)
        .collect();
    pairs.extend(s.graph.edge_pairs().into_iter().map(|(a, b)| (a + base, b + base)));
    pairs.push((u, s.head + base));
    pairs.push((v, s.tail + base));
    Ok(build(base + s.graph.vertex_count(), &pairs))
}

/// Replaces vertex `v` by a triangle.
///
/// `v` keeps the first of its three edges; the second and third are moved to
/// new vertices `n` and `n+1`. All edge ids are preserved and the triangle
/// edges `(v,n), (n,n+1), (n+1,v)` are appended.
pub fn replace_vertex_with_triangle(g: &Pseudograph, v: VertexId) -> Result<Pseudograph> {
    if v >= g.vertex_count() || g.degree(v) != 3 {
        return Err(Error::input(format!("vertex {v} must exist and have degree 3")));
    }
    if g.multiplicity(v, v) > 0 {
        return Err(Error::input(format!("vertex {v} carries a loop")));
    }
    let n = g.vertex_count();
    let star = g.incident(v).to_vec();
    let mut pairs = g.edge_pairs();
    for (slot, &e) in star.iter().enumerate().skip(1) {
        let new_end = n + slot - 1;
        let (a, b) = pairs[e];
        pairs[e] = if a == v { (new_end, b) } else { (a, new_end) };
    }
    pairs.extend([(v, n), (n, n + 1), (n + 1, v)]);
    Ok(build(n + 2, &pairs))
}

/// Replaces every vertex of a 5-regular loopless graph by a 5-cycle.
///
/// Vertex `v` becomes `5v..5v+5`; the `k`-th edge end in `v`'s incidence
/// list attaches to `5v+k`. Edge `i` of the input keeps id `i`; cycle edges
/// `(5v+k, 5v+(k+1)%5)` follow, vertex by vertex. The returned 2-factor is
/// exactly the new 5-cycles.
pub fn expand_vertices_to_5cycles(h5: &Pseudograph) -> Result<(Pseudograph, TwoFactor)> {
    if h5.vertices().any(|v| h5.degree(v) != 5) {
        return Err(Error::input("expansion needs a 5-regular graph"));
    }
    if h5.has_loops() {
        return Err(Error::input("expansion needs a loopless graph"));
    }
    let mut port_of_end = vec![[usize::MAX; 2]; h5.edge_count()];
    for v in h5.vertices() {
        for (k, &e) in h5.incident(v).iter().enumerate() {
            let slot = if h5.edge(e).u == v && port_of_end[e][0] == usize::MAX { 0 } else { 1 };
            port_of_end[e][slot] = 5 * v + k;
        }
    }
    let mut pairs: Vec<_> = port_of_end.iter().map(|p| (p[0], p[1])).collect();
    for v in h5.vertices() {
        pairs.extend((0..5).map(|k| (5 * v + k, 5 * v + (k + 1) % 5)));
    }
    let g = build(5 * h5.vertex_count(), &pairs);
    let matching = PerfectMatching::new(&g, (0..h5.edge_count()).collect())?;
    let tf = complement_two_factor(&g, &matching)?;
    Ok((g, tf))
}

/// Complete graph on `n` vertices, edges in lexicographic order.
pub fn complete_graph(n: usize) -> Pseudograph {
    let pairs: Vec<_> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    build(n, &pairs)
}

/// Disjoint union of `a - ea` and `b - eb` with the freed ends joined
/// crosswise, giving a graph with the 2-edge-cut formed by the last two
/// edges. `b`'s vertices follow `a`'s.
pub fn join_by_two_cut(a: &Pseudograph, ea: EdgeId, b: &Pseudograph, eb: EdgeId) -> Result<Pseudograph> {
    if ea >= a.edge_count() || eb >= b.edge_count() {
        return Err(Error::input("edge to open does not exist"));
    }
    let (a1, a2) = a.endpoints(ea);
    let (b1, b2) = b.endpoints(eb);
    if a1 == a2 || b1 == b2 {
        return Err(Error::input("cannot open a loop"));
    }
    let n = a.vertex_count();
    let mut pairs: Vec<_> = a
        .edge_pairs()
        .into_iter()
        .enumerate()
        .filter(|&(id, _)| id != ea)
        .map(|(_, p)| p)
        .collect();
    pairs.extend(
        b.edge_pairs()
            .into_iter()
            .enumerate()
            .filter(|&(id, _)| id != eb)
            .map(|(_, (x, y))| (x + n, y + n)),
    );
    pairs.push((a1, b1 + n));
    pairs.push((a2, b2 + n));
    Ok(build(n + b.vertex_count(), &pairs))
}

/// Vertex sets of the `3l` copies of `P10 - e` in [`counterexample_family`].
pub fn counterexample_copies(l: usize) -> Vec<Vec<VertexId>> {
    (0..3 * l).map(|j| (10 * j..10 * j + 10).collect()).collect()
}

/// `3l` copies of `P10 - e` joined cyclically by paths of length two, plus
/// `l` hubs each adjacent to three path centres.
///
/// Copy `j` occupies `10j..10j+10` with ports `10j` and `10j+1` (the ends of
/// the deleted edge). Centre `c_j = 30l + j` joins port `10j+1` to port
/// `10(j+1 mod 3l)`. Hub `u_i = 33l + i` is adjacent to `c_{3i}, c_{3i+1},
/// c_{3i+2}`. Edge order: copies, then centre edges, then hub edges.
pub fn counterexample_family(l: usize) -> Result<Pseudograph> {
    if l == 0 {
        return Err(Error::input("the family needs l >= 1"));
    }
    let copies = 3 * l;
    let base = petersen_minus_edge().edge_pairs();
    let mut pairs = Vec::new();
    for j in 0..copies {
        pairs.extend(base.iter().map(|&(u, v)| (u + 10 * j, v + 10 * j)));
    }
    let centre = |j: usize| 10 * copies + j;
    for j in 0..copies {
        pairs.push((10 * j + 1, centre(j)));
        pairs.push((centre(j), 10 * ((j + 1) % copies)));
    }
    let hub0 = 10 * copies + copies;
    for i in 0..l {
        for j in 3 * i..3 * i + 3 {
            pairs.push((hub0 + i, centre(j)));
        }
    }
    Ok(build(hub0 + l, &pairs))
}

/// Two `n`-cycles joined by the matching `i -- n + perm[i]`.
///
/// Outer cycle edges are `0..n`, inner cycle edges `n..2n`, spokes `2n..3n`.
pub fn permutation_graph(perm: &[usize]) -> Result<Pseudograph> {
    let n = perm.len();
    if n < 3 {
        return Err(Error::input("permutation graphs need n >= 3"));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::input(format!("{perm:?} is not a permutation")));
        }
    }
    let mut pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    pairs.extend((0..n).map(|i| (n + i, n + (i + 1) % n)));
    pairs.extend((0..n).map(|i| (i, n + perm[i])));
    Ok(build(2 * n, &pairs))
}

/// `K2^3` with both vertices replaced by `P10 - v`, port `i` of one copy
/// wired to port `i` of the other. Copies occupy `0..9` and `9..18`; the
/// three connecting edges come last.
pub fn k23_with_p10v() -> Pseudograph {
    let base = petersen_minus_vertex().edge_pairs();
    let mut pairs = base.clone();
    pairs.extend(base.iter().map(|&(u, v)| (u + 9, v + 9)));
    for p in PETERSEN_MINUS_VERTEX_PORTS {
        pairs.push((p, p + 9));
    }
    build(18, &pairs)
}

/// Two cycles with cross edges and chords.
///
/// Cycle 1 is `0..len1`, cycle 2 is `len1..len1+len2`. `cross` pairs are
/// `(position on cycle 1, position on cycle 2)`; chords are position pairs on
/// the same cycle. Edge order: cycle 1, cycle 2, cross, chords 1, chords 2.
pub fn two_cycle_graph(
    len1: usize,
    len2: usize,
    cross: &[(usize, usize)],
    chords1: &[(usize, usize)],
    chords2: &[(usize, usize)],
) -> Result<Pseudograph> {
    if len1 < 2 || len2 < 2 {
        return Err(Error::input("cycles need length >= 2"));
    }
    let mut pairs: Vec<_> = (0..len1).map(|i| (i, (i + 1) % len1)).collect();
    pairs.extend((0..len2).map(|i| (len1 + i, len1 + (i + 1) % len2)));
    pairs.extend(cross.iter().map(|&(a, b)| (a, len1 + b)));
    pairs.extend(chords1.iter().copied());
    pairs.extend(chords2.iter().map(|&(a, b)| (len1 + a, len1 + b)));
    let g = Pseudograph::new(len1 + len2, &pairs)?;
    if !is_cubic(&g) {
        return Err(Error::input("two-cycle layout is not cubic"));
    }
    Ok(g)
}

/// Random simple cubic graph on `n` vertices (configuration model with
/// rejection), reproducible from `seed`.
pub fn random_cubic(n: usize, seed: u64) -> Result<Pseudograph> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::input("random cubic graphs need even n >= 4"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..10_000 {
        let mut points: Vec<usize> = (0..3 * n).map(|p| p / 3).collect();
        points.shuffle(&mut rng);
        let mut pairs: Vec<_> = points
            .chunks(2)
            .map(|c| (c[0].min(c[1]), c[0].max(c[1])))
            .collect();
        pairs.sort_unstable();
        let g = build(n, &pairs);
        if g.is_simple() {
            return Ok(g);
        }
    }
    Err(Error::Resource(format!("no simple cubic graph on {n} vertices after 10000 draws")))
}

/// Random bridgeless simple cubic graph with a 2-factor made of two odd
/// cycles of the given lengths, `cross` edges between them and random
/// chords on the remaining vertices. Returns the graph and the matching
/// (cross edges plus chords).
pub fn random_two_odd_cycles(
    len1: usize,
    len2: usize,
    cross: usize,
    seed: u64,
) -> Result<(Pseudograph, PerfectMatching)> {
    if len1 % 2 == 0 || len2 % 2 == 0 || cross % 2 == 0 || cross > len1.min(len2) {
        return Err(Error::input("need odd cycle lengths and an odd cross count that fits"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..10_000 {
        let mut pos1: Vec<usize> = (0..len1).collect();
        let mut pos2: Vec<usize> = (0..len2).collect();
        pos1.shuffle(&mut rng);
        pos2.shuffle(&mut rng);
        let cross_pairs: Vec<_> = (0..cross).map(|i| (pos1[i], pos2[i])).collect();
        let chords1 = random_pairing(&pos1[cross..], &mut rng);
        let chords2 = random_pairing(&pos2[cross..], &mut rng);
        let Ok(g) = two_cycle_graph(len1, len2, &cross_pairs, &chords1, &chords2) else {
            continue;
        };
        if !g.is_simple() || !bridges(&g).is_empty() {
            continue;
        }
        let matching = PerfectMatching::new(&g, (len1 + len2..g.edge_count()).collect())?;
        return Ok((g, matching));
    }
    Err(Error::Resource("no bridgeless two-cycle instance after 10000 draws".into()))
}

fn random_pairing(items: &[usize], rng: &mut impl Rng) -> Vec<(usize, usize)> {
    let mut items = items.to_vec();
    items.shuffle(rng);
    items.chunks(2).map(|c| (c[0], c[1])).collect()
}

/// Serializable description of a generated graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum FamilySpec {
    Petersen,
    PetersenMinusEdge,
    PetersenMinusVertex,
    K4,
    K23,
    K33,
    Fig3,
    Fig4,
    Diamond,
    Prism { n: usize },
    StringOfDiamonds { k: usize },
    Ring { links: Vec<StringLink> },
    Counterexample { l: usize },
    Permutation { perm: Vec<usize> },
    K23WithP10v,
    Complete { n: usize },
    RandomCubic { n: usize, seed: u64 },
    /// Base graph with the listed vertices replaced by triangles (applied in
    /// order, so later indices may refer to vertices created earlier).
    TriangleReplaced { base: Box<FamilySpec>, vertices: Vec<VertexId> },
    /// Base graph with one edge replaced by a string.
    StringSpliced { base: Box<FamilySpec>, edge: EdgeId, links: Vec<StringLink> },
}

impl FamilySpec {
    pub fn build(&self) -> Result<Pseudograph> {
        Ok(match self {
            FamilySpec::Petersen => petersen(),
            FamilySpec::PetersenMinusEdge => petersen_minus_edge(),
            FamilySpec::PetersenMinusVertex => petersen_minus_vertex(),
            FamilySpec::K4 => k4(),
            FamilySpec::K23 => k23(),
            FamilySpec::K33 => k33(),
            FamilySpec::Fig3 => fig3_graph(),
            FamilySpec::Fig4 => fig4_graph(),
            FamilySpec::Diamond => diamond(),
            FamilySpec::Prism { n } => prism(*n)?,
            FamilySpec::StringOfDiamonds { k } => string_of_diamonds(*k)?.graph,
            FamilySpec::Ring { links } => ring_of(links)?,
            FamilySpec::Counterexample { l } => counterexample_family(*l)?,
            FamilySpec::Permutation { perm } => permutation_graph(perm)?,
            FamilySpec::K23WithP10v => k23_with_p10v(),
            FamilySpec::Complete { n } => complete_graph(*n),
            FamilySpec::RandomCubic { n, seed } => random_cubic(*n, *seed)?,
            FamilySpec::TriangleReplaced { base, vertices } => {
                let mut g = base.build()?;
                for &v in vertices {
                    g = replace_vertex_with_triangle(&g, v)?;
                }
                g
            }
            FamilySpec::StringSpliced { base, edge, links } => {
                replace_edge_with_string(&base.build()?, *edge, links)?
            }
        })
    }

    /// Parses a family name with `key=value` style parameters as used on the
    /// command line, e.g. `("counterexample", [("l", "2")])`.
    pub fn from_name(name: &str, params: &[(String, String)]) -> Result<Self> {
        let get = |key: &str| -> Result<usize> {
            params
                .iter()
                .find(|(k, _)| k == key)
                .ok_or_else(|| Error::input(format!("family {name} needs parameter {key}")))?
                .1
                .parse()
                .map_err(|_| Error::input(format!("parameter {key} must be a nonnegative integer")))
        };
        Ok(match name {
            "petersen" | "p10" => FamilySpec::Petersen,
            "petersen-minus-edge" => FamilySpec::PetersenMinusEdge,
            "petersen-minus-vertex" => FamilySpec::PetersenMinusVertex,
            "k4" => FamilySpec::K4,
            "k23" => FamilySpec::K23,
            "k33" => FamilySpec::K33,
            "fig3" => FamilySpec::Fig3,
            "fig4" => FamilySpec::Fig4,
            "diamond" => FamilySpec::Diamond,
            "prism" => FamilySpec::Prism { n: get("n")? },
            "string" | "string-of-diamonds" => FamilySpec::StringOfDiamonds { k: get("k")? },
            "ring" | "ring-of-diamonds" => FamilySpec::Ring {
                links: vec![StringLink::Diamond; get("k")?],
            },
            "counterexample" => FamilySpec::Counterexample { l: get("l")? },
            "permutation" => {
                let raw = params
                    .iter()
                    .find(|(k, _)| k == "perm")
                    .ok_or_else(|| Error::input("permutation needs perm=a,b,c,..."))?;
                let perm = raw
                    .1
                    .split(',')
                    .map(|s| s.trim().parse::<usize>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| Error::input("perm must be a comma separated list"))?;
                FamilySpec::Permutation { perm }
            }
            "k23-p10v" | "k23-with-p10v" => FamilySpec::K23WithP10v,
            "complete" => FamilySpec::Complete { n: get("n")? },
            "random-cubic" => FamilySpec::RandomCubic {
                n: get("n")?,
                seed: get("seed")? as u64,
            },
            other => return Err(Error::input(format!("unknown family {other}"))),
        })
    }
}
