use super::graph::{DecoratedGraph, Edge, Leg, Level, Vertex};
use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeSet;

/// Treatment of genus-zero zero-level vertices with a single degree-one edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Leaves {
    /// Suppressed: the stable quotient graph set.
    StableQuotient,
    /// Allowed; each carries positive degree, so at most `beta` of them.
    StableMaps { beta: u32 },
}

impl Leaves {
    fn max_extra(self) -> u32 {
        match self {
            Leaves::StableQuotient => 0,
            Leaves::StableMaps { beta } => beta,
        }
    }
}

/// Size limits for the search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub vmax: usize,
    pub dmax: u32,
}

impl Bounds {
    pub fn widened(self) -> Bounds {
        Bounds { vmax: self.vmax + 1, dmax: self.dmax + 1 }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Shape {
    Bipartite,
    Tripartite,
}

impl Shape {
    fn levels(self) -> &'static [Level] {
        match self {
            Shape::Bipartite => &[Level::Zero, Level::Infinity],
            Shape::Tripartite => &[Level::Lower, Level::Middle, Level::Upper],
        }
    }

    fn edge_ok(self, x: Level, y: Level) -> bool {
        x.rank().abs_diff(y.rank()) == 1
    }
}

struct Problem<'a> {
    shape: Shape,
    g: u32,
    n: u32,
    nu: &'a [u32],
    leaves: Leaves,
}

enum Verdict {
    Reject,
    Keep(Option<u32>),
    ExtraLeaf,
}

/// Vertex conditions once all incident degrees are known. `inc` lists
/// (degree, level of the other end).
fn check_vertex(p: &Problem, level: Level, genus: u32, legs: &[Leg], inc: &[(u32, Level)], alone: bool) -> Verdict {
    let n = inc.len() + legs.len();
    if level.is_balanced() {
        let mu: u32 = inc.iter().filter(|x| x.1.rank() < level.rank()).map(|x| x.0).sum();
        let nu: u32 = inc.iter().filter(|x| x.1.rank() > level.rank()).map(|x| x.0).sum::<u32>()
            + legs.iter().filter(|l| l.kind == super::graph::LegKind::Nu).map(|l| l.degree).sum::<u32>();
        let r = 2 * genus as i64 - 2 + n as i64 - (mu as i64 - nu as i64);
        if r < 0 || r % 5 != 0 {
            return Verdict::Reject;
        }
        let beta = (r / 5) as u32;
        if genus == 0 && n == 1 && beta == 0 && inc.len() == 1 && inc[0].0 == 1 {
            return Verdict::Reject;
        }
        return Verdict::Keep(Some(beta));
    }
    if genus == 0 && n == 0 && !alone {
        return Verdict::Reject;
    }
    if genus == 0 && n == 1 && inc.len() == 1 && inc[0].0 == 1 {
        return match p.leaves {
            Leaves::StableQuotient => Verdict::Reject,
            Leaves::StableMaps { .. } => Verdict::ExtraLeaf,
        };
    }
    Verdict::Keep(None)
}

/// All genus vectors with entries in 0..=g summing to at most g; with
/// `sorted_runs`, entries are non-increasing inside runs of equal level.
fn genus_vectors(levels: &[Level], g: u32, sorted_runs: bool) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(levels: &[Level], left: u32, sorted: bool, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let i = cur.len();
        if i == levels.len() {
            out.push(cur.clone());
            return;
        }
        let cap = if sorted && i > 0 && levels[i] == levels[i - 1] { cur[i - 1].min(left) } else { left };
        for x in 0..=cap {
            cur.push(x);
            rec(levels, left - x, sorted, cur, out);
            cur.pop();
        }
    }
    rec(levels, g, sorted_runs, &mut cur, &mut out);
    out
}

fn connected(v: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; v];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        for &(a, b) in edges {
            for (p, q) in [(a, b), (b, a)] {
                if p == x && !seen[q] {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Every decorated graph (not reduced modulo isomorphism) with a given level vector.
fn search_seed(p: &Problem, levels: &[Level], dmax: u32, labeled: bool) -> Vec<DecoratedGraph> {
    let v = levels.len();
    let mut out = Vec::new();
    let pairs: Vec<(usize, usize)> =
        (0..v).flat_map(|i| (i + 1..v).map(move |j| (i, j))).filter(|&(i, j)| p.shape.edge_ok(levels[i], levels[j])).collect();
    let marking_slots: Vec<usize> = (0..v).filter(|&i| levels[i].rank() == 0).collect();
    let nu_slots: Vec<usize> = (0..v).filter(|&i| levels[i] == Level::Infinity).collect();
    let placements = |slots: &[usize], k: usize| -> Vec<Vec<usize>> {
        if k == 0 {
            vec![vec![]]
        } else {
            (0..k).map(|_| slots.iter().copied()).multi_cartesian_product().collect()
        }
    };
    let mark_place = placements(&marking_slots, p.n as usize);
    let nu_place = placements(&nu_slots, p.nu.len());
    for genus in genus_vectors(levels, p.g, !labeled) {
        let sg: u32 = genus.iter().sum();
        let e = p.g as i64 - sg as i64 + v as i64 - 1;
        if e < 0 || (e > 0 && pairs.is_empty()) {
            continue;
        }
        for es in pairs.iter().copied().combinations_with_replacement(e as usize) {
            if !connected(v, &es) {
                continue;
            }
            for mp in &mark_place {
                for np in &nu_place {
                    let mut legs: Vec<Vec<Leg>> = vec![Vec::new(); v];
                    for (k, &w) in mp.iter().enumerate() {
                        legs[w].push(Leg::marking(k as u32 + 1));
                    }
                    for (k, &w) in np.iter().enumerate() {
                        legs[w].push(Leg::nu(k as u32 + 1, p.nu[k]));
                    }
                    assign_degrees(p, levels, &genus, &legs, &es, dmax, &mut out);
                }
            }
        }
    }
    out
}

fn assign_degrees(
    p: &Problem,
    levels: &[Level],
    genus: &[u32],
    legs: &[Vec<Leg>],
    es: &[(usize, usize)],
    dmax: u32,
    out: &mut Vec<DecoratedGraph>,
) {
    let v = levels.len();
    let mut last: Vec<Option<usize>> = vec![None; v];
    for (i, &(a, b)) in es.iter().enumerate() {
        last[a] = Some(i);
        last[b] = Some(i);
    }
    let mut deg = vec![0u32; es.len()];
    let mut betas: Vec<Option<u32>> = vec![None; v];
    let mut extra = 0u32;
    for w in 0..v {
        if last[w].is_none() {
            match check_vertex(p, levels[w], genus[w], &legs[w], &[], v == 1) {
                Verdict::Reject => return,
                Verdict::Keep(b) => betas[w] = b,
                Verdict::ExtraLeaf => extra += 1,
            }
        }
    }
    struct Ctx<'a, 'b> {
        p: &'a Problem<'b>,
        levels: &'a [Level],
        genus: &'a [u32],
        legs: &'a [Vec<Leg>],
        es: &'a [(usize, usize)],
        last: Vec<Option<usize>>,
        dmax: u32,
    }
    fn rec(c: &Ctx, i: usize, deg: &mut Vec<u32>, betas: &mut Vec<Option<u32>>, extra: u32, out: &mut Vec<DecoratedGraph>) {
        if i == c.es.len() {
            if extra > c.p.leaves.max_extra() {
                return;
            }
            let vertices = (0..c.levels.len())
                .map(|w| Vertex { beta: betas[w], ..Vertex::new(c.levels[w], c.genus[w]).with_legs(c.legs[w].clone()) })
                .collect();
            let edges = c.es.iter().zip(deg.iter()).map(|(&(a, b), &d)| Edge::with_degree(a, b, d)).collect();
            out.push(DecoratedGraph::new(vertices, edges));
            return;
        }
        let (a, b) = c.es[i];
        for d in 1..=c.dmax {
            deg[i] = d;
            let mut extra_here = extra;
            let mut ok = true;
            let mut touched = Vec::new();
            for w in [a, b] {
                if c.last[w] != Some(i) {
                    continue;
                }
                let inc: Vec<(u32, Level)> = c
                    .es
                    .iter()
                    .zip(deg.iter())
                    .take(i + 1)
                    .filter_map(|(&(x, y), &dd)| {
                        if x == w {
                            Some((dd, c.levels[y]))
                        } else if y == w {
                            Some((dd, c.levels[x]))
                        } else {
                            None
                        }
                    })
                    .collect();
                match check_vertex(c.p, c.levels[w], c.genus[w], &c.legs[w], &inc, false) {
                    Verdict::Reject => ok = false,
                    Verdict::Keep(bt) => {
                        betas[w] = bt;
                        touched.push(w);
                    }
                    Verdict::ExtraLeaf => extra_here += 1,
                }
            }
            if ok && extra_here <= c.p.leaves.max_extra() {
                rec(c, i + 1, deg, betas, extra_here, out);
            }
            for w in touched {
                betas[w] = None;
            }
        }
    }
    let ctx = Ctx { p, levels, genus, legs, es, last, dmax };
    rec(&ctx, 0, &mut deg, &mut betas, extra, out);
}

fn search(p: &Problem, b: Bounds, labeled: bool) -> BTreeSet<DecoratedGraph> {
    let seeds: Vec<Vec<Level>> = (1..=b.vmax)
        .flat_map(|v| {
            let lv = p.shape.levels();
            if labeled {
                (0..v).map(|_| lv.iter().copied()).multi_cartesian_product().collect::<Vec<_>>()
            } else {
                lv.iter().copied().combinations_with_replacement(v).collect()
            }
        })
        .collect();
    seeds
        .par_iter()
        .map(|levels| {
            let found = search_seed(p, levels, b.dmax, labeled);
            if labeled {
                found.into_iter().collect::<BTreeSet<_>>()
            } else {
                found.into_iter().map(|g| g.canonical()).collect()
            }
        })
        .reduce(BTreeSet::new, |mut x, y| {
            x.extend(y);
            x
        })
}

/// Search box that provably contains every bipartite graph. Infinity vertices
/// have non-negative excess sum(delta - 1) = 2g(v) - 2 + l(v) + |nu(v)| - 5 beta(v),
/// so the total excess X is at most 2g - 2b + l(nu) + |nu| and each delta <= 1 + X;
/// each zero vertex either raises h^1, carries genus, a marking or excess, or is an allowed leaf.
pub fn bipartite_bounds(g: u32, n: u32, nu: &[u32], leaves: Leaves) -> Bounds {
    let l = nu.len() as i64;
    let s: i64 = nu.iter().map(|&x| x as i64).sum();
    let vmax = (3 * g as i64 + n as i64 + l + s - 1 + leaves.max_extra() as i64).max(1) as usize;
    let dmax = (2 * g as i64 - 1 + l + s).max(1) as u32;
    Bounds { vmax, dmax }
}

/// Search box for tripartite graphs; completeness is certified by checking
/// that the widened box finds nothing new.
pub fn tripartite_bounds(g: u32, n: u32) -> Bounds {
    Bounds { vmax: (3 * g as i64 + n as i64 - 1).max(1) as usize, dmax: (2 * g as i64 - 1).max(1) as u32 }
}

pub fn enumerate_bipartite_in(g: u32, n: u32, nu: &[u32], leaves: Leaves, b: Bounds) -> Vec<DecoratedGraph> {
    let p = Problem { shape: Shape::Bipartite, g, n, nu, leaves };
    search(&p, b, false).into_iter().collect()
}

/// Bipartite localization graphs up to isomorphism, in canonical form.
pub fn enumerate_bipartite(g: u32, n: u32, nu: &[u32], leaves: Leaves) -> Vec<DecoratedGraph> {
    enumerate_bipartite_in(g, n, nu, leaves, bipartite_bounds(g, n, nu, leaves))
}

pub fn enumerate_tripartite_in(g: u32, n: u32, b: Bounds) -> Vec<DecoratedGraph> {
    let p = Problem { shape: Shape::Tripartite, g, n, nu: &[], leaves: Leaves::StableQuotient };
    search(&p, b, false).into_iter().collect()
}

/// Tripartite graphs (stable quotient convention) up to isomorphism.
pub fn enumerate_tripartite(g: u32, n: u32) -> Vec<DecoratedGraph> {
    enumerate_tripartite_in(g, n, tripartite_bounds(g, n))
}

/// Number of vertex-labeled bipartite graphs (vertices numbered, edges a multiset).
pub fn labeled_bipartite_count(g: u32, n: u32, nu: &[u32], leaves: Leaves) -> usize {
    let p = Problem { shape: Shape::Bipartite, g, n, nu, leaves };
    search(&p, bipartite_bounds(g, n, nu, leaves), true).len()
}

/// Stable graphs of genus g with n markings, all vertices at level `Zero`.
pub fn enumerate_stable_graphs(g: u32, n: u32) -> Vec<DecoratedGraph> {
    stable_graphs(g, n, false)
}

fn stable_graphs(g: u32, n: u32, labeled: bool) -> Vec<DecoratedGraph> {
    let vmax = (2 * g as i64 - 2 + n as i64).max(1) as usize;
    let mut out = BTreeSet::new();
    for v in 1..=vmax {
        let levels = vec![Level::Zero; v];
        let pairs: Vec<(usize, usize)> = (0..v).flat_map(|i| (i..v).map(move |j| (i, j))).collect();
        let marks: Vec<Vec<usize>> = if n == 0 { vec![vec![]] } else { (0..n).map(|_| 0..v).multi_cartesian_product().collect() };
        for genus in genus_vectors(&levels, g, !labeled) {
            let e = g as i64 - genus.iter().sum::<u32>() as i64 + v as i64 - 1;
            if e < 0 {
                continue;
            }
            for es in pairs.iter().copied().combinations_with_replacement(e as usize) {
                if !connected(v, &es) {
                    continue;
                }
                for mp in &marks {
                    let mut legs: Vec<Vec<Leg>> = vec![Vec::new(); v];
                    for (k, &w) in mp.iter().enumerate() {
                        legs[w].push(Leg::marking(k as u32 + 1));
                    }
                    let graph = DecoratedGraph::new(
                        (0..v).map(|w| Vertex::new(Level::Zero, genus[w]).with_legs(legs[w].clone())).collect(),
                        es.iter().map(|&(a, b)| Edge::new(a, b, 0, 0)).collect(),
                    );
                    let stable = (0..v).all(|w| 2 * graph.vertices[w].genus as usize + graph.valence(w) > 2);
                    if stable {
                        out.insert(if labeled { graph } else { graph.canonical() });
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}

/// A labeled stable graph with flag degrees at its infinity vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GInftyGraph {
    pub graph: DecoratedGraph,
    /// Every flag degree is at most 2.
    pub parts_le_2: bool,
}

/// Degree vectors d_1..d_m >= 1 with 2g - 2 + m - 5 sum(d) >= 0.
fn flag_degree_choices(genus: u32, m: usize) -> Vec<Vec<u32>> {
    let budget = 2 * genus as i64 - 2 + m as i64;
    if budget < 5 * m as i64 {
        return Vec::new();
    }
    if m == 0 {
        return vec![vec![]];
    }
    let top = (budget / 5 - (m as i64 - 1)) as u32;
    (0..m).map(|_| 1..=top).multi_cartesian_product().filter(|d| 5 * d.iter().sum::<u32>() as i64 <= budget).collect()
}

/// Labelings of stable graphs by {0, infinity} with admissible flag degrees.
pub fn enumerate_ginfty(g: u32, n: u32) -> Vec<GInftyGraph> {
    let shapes = enumerate_stable_graphs(g, n);
    let found: Vec<BTreeSet<DecoratedGraph>> = shapes
        .par_iter()
        .map(|s| {
            let v = s.vertices.len();
            let mut set = BTreeSet::new();
            for mask in 0..(1u32 << v) {
                let inf: Vec<bool> = (0..v).map(|w| mask >> w & 1 == 1).collect();
                // choices per infinity vertex, in half-edge order then leg order
                let per_vertex: Vec<Vec<Vec<u32>>> =
                    (0..v).map(|w| if inf[w] { flag_degree_choices(s.vertices[w].genus, s.valence(w)) } else { vec![vec![]] }).collect();
                if per_vertex.iter().any(Vec::is_empty) {
                    continue;
                }
                for choice in per_vertex.iter().map(|c| c.iter()).multi_cartesian_product() {
                    let mut edges: Vec<Edge> = s.edges.clone();
                    let mut vertices = s.vertices.clone();
                    for w in 0..v {
                        if !inf[w] {
                            continue;
                        }
                        vertices[w].level = Level::Infinity;
                        let degs = choice[w];
                        let he = s.half_edges(w);
                        for (k, &(ei, _, other, _)) in he.iter().enumerate() {
                            let e = &mut edges[ei];
                            // a loop contributes two half-edges: first sets da, second db
                            if e.a == w && (other != w || he[..k].iter().all(|h| h.0 != ei)) {
                                e.da = degs[k];
                            } else {
                                e.db = degs[k];
                            }
                        }
                        let nh = he.len();
                        for (k, leg) in vertices[w].legs.iter_mut().enumerate() {
                            leg.degree = degs[nh + k];
                        }
                    }
                    set.insert(DecoratedGraph::new(vertices, edges).canonical());
                }
            }
            set
        })
        .collect();
    let all: BTreeSet<DecoratedGraph> = found.into_iter().flatten().collect();
    all.into_iter()
        .map(|graph| {
            let parts_le_2 = graph.edges.iter().all(|e| e.da <= 2 && e.db <= 2)
                && graph.vertices.iter().all(|v| v.legs.iter().all(|l| l.degree <= 2));
            GInftyGraph { graph, parts_le_2 }
        })
        .collect()
}

/// Sum over isomorphism classes of V! / |vertex automorphisms|, which must equal
/// the number of vertex-labeled representatives.
pub fn orbit_sum(graphs: &[DecoratedGraph]) -> usize {
    graphs.iter().map(|g| (1..=g.num_vertices()).product::<usize>() / g.vertex_automorphisms()).sum()
}
