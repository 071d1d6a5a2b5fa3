use itertools::Itertools;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Vertex level. Bipartite graphs use `Zero`/`Infinity`, tripartite graphs
/// `Lower`/`Middle`/`Upper`, labeled stable graphs `Zero`/`Infinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Level {
    Zero,
    Infinity,
    Lower,
    Middle,
    Upper,
}

impl Level {
    /// Height used to orient edges: mu collects edges going down, nu edges going up.
    pub fn rank(self) -> u8 {
        match self {
            Level::Zero | Level::Lower => 0,
            Level::Infinity | Level::Middle => 1,
            Level::Upper => 2,
        }
    }

    /// Levels whose vertices carry a balance condition and a solved beta.
    pub fn is_balanced(self) -> bool {
        self.rank() > 0
    }

    pub fn short(self) -> &'static str {
        match self {
            Level::Zero => "0",
            Level::Infinity => "inf",
            Level::Lower => "l",
            Level::Middle => "m",
            Level::Upper => "u",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LegKind {
    Marking,
    Nu,
}

/// A labeled leg. `degree` is the nu part for nu-legs, the flag degree for
/// legs at infinity-labeled vertices of a stable graph, and 0 otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Leg {
    pub kind: LegKind,
    pub id: u32,
    pub degree: u32,
}

impl Leg {
    pub fn marking(id: u32) -> Self {
        Leg { kind: LegKind::Marking, id, degree: 0 }
    }

    pub fn nu(id: u32, part: u32) -> Self {
        Leg { kind: LegKind::Nu, id, degree: part }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Vertex {
    pub level: Level,
    pub genus: u32,
    /// Solved curve class on balanced vertices; `None` where it is free.
    pub beta: Option<u32>,
    pub legs: Vec<Leg>,
}

impl Vertex {
    pub fn new(level: Level, genus: u32) -> Self {
        Vertex { level, genus, beta: None, legs: Vec::new() }
    }

    pub fn with_legs(mut self, legs: Vec<Leg>) -> Self {
        self.legs = legs;
        self.legs.sort();
        self
    }
}

/// Edge with flag degrees at its two ends (0 where the flag carries none).
/// Bipartite and tripartite edges store their degree at both ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub da: u32,
    pub db: u32,
}

impl Edge {
    pub fn new(a: usize, b: usize, da: u32, db: u32) -> Self {
        Edge { a, b, da, db }.normalized()
    }

    /// Edge of a bipartite or tripartite graph with degree `delta`.
    pub fn with_degree(a: usize, b: usize, delta: u32) -> Self {
        Edge::new(a, b, delta, delta)
    }

    pub fn delta(&self) -> u32 {
        self.da.max(self.db)
    }

    pub fn is_loop(&self) -> bool {
        self.a == self.b
    }

    fn normalized(self) -> Self {
        if self.a > self.b || (self.a == self.b && self.da > self.db) {
            Edge { a: self.b, b: self.a, da: self.db, db: self.da }
        } else {
            self
        }
    }

    fn relabel(&self, p: &[usize]) -> Self {
        Edge::new(p[self.a], p[self.b], self.da, self.db)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DecoratedGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

impl DecoratedGraph {
    pub fn new(vertices: Vec<Vertex>, edges: Vec<Edge>) -> Self {
        let mut g = DecoratedGraph { vertices, edges };
        for v in &mut g.vertices {
            v.legs.sort();
        }
        g.edges = g.edges.iter().map(|e| e.normalized()).sorted().collect();
        g
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn components(&self) -> usize {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        let mut comps = n;
        for e in &self.edges {
            let (ra, rb) = (find(&mut parent, e.a), find(&mut parent, e.b));
            if ra != rb {
                parent[ra] = rb;
                comps -= 1;
            }
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        !self.vertices.is_empty() && self.components() == 1
    }

    pub fn h1(&self) -> usize {
        self.edges.len() + self.components() - self.vertices.len()
    }

    /// Arithmetic genus: sum of vertex genera plus h^1.
    pub fn genus(&self) -> u32 {
        self.vertices.iter().map(|v| v.genus).sum::<u32>() + self.h1() as u32
    }

    /// Half-edges at `v` as (edge index, degree here, other endpoint, degree there).
    pub fn half_edges(&self, v: usize) -> Vec<(usize, u32, usize, u32)> {
        let mut out = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.a == v {
                out.push((i, e.da, e.b, e.db));
            }
            if e.b == v {
                out.push((i, e.db, e.a, e.da));
            }
        }
        out
    }

    /// n(v): half-edges plus legs.
    pub fn valence(&self, v: usize) -> usize {
        self.half_edges(v).len() + self.vertices[v].legs.len()
    }

    /// (|mu(v)|, |nu(v)|): degrees of edges going down, and of edges going up plus nu-legs.
    pub fn mu_nu(&self, v: usize) -> (u32, u32) {
        let r = self.vertices[v].level.rank();
        let mut mu = 0;
        let mut nu: u32 = self.vertices[v].legs.iter().filter(|l| l.kind == LegKind::Nu).map(|l| l.degree).sum();
        for (_, d, w, _) in self.half_edges(v) {
            match self.vertices[w].level.rank().cmp(&r) {
                std::cmp::Ordering::Less => mu += d,
                std::cmp::Ordering::Greater => nu += d,
                std::cmp::Ordering::Equal => {}
            }
        }
        (mu, nu)
    }

    /// beta(v) from |mu| - |nu| = 2g - 2 + n - 5 beta, if it is a non-negative integer.
    pub fn solve_beta(&self, v: usize) -> Option<u32> {
        let (mu, nu) = self.mu_nu(v);
        let rhs = 2 * self.vertices[v].genus as i64 - 2 + self.valence(v) as i64;
        let r = rhs - (mu as i64 - nu as i64);
        (r >= 0 && r % 5 == 0).then_some((r / 5) as u32)
    }

    /// Flag degrees at `v` (half-edges and legs), as a partition.
    pub fn flag_degrees(&self, v: usize) -> Vec<u32> {
        let mut out: Vec<u32> = self.half_edges(v).iter().map(|h| h.1).collect();
        out.extend(self.vertices[v].legs.iter().map(|l| l.degree));
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    pub fn strip_beta(&self) -> DecoratedGraph {
        let mut g = self.clone();
        for v in &mut g.vertices {
            v.beta = None;
        }
        g
    }

    /// Moves vertex i to position p[i].
    pub fn relabel(&self, p: &[usize]) -> DecoratedGraph {
        let mut vs = vec![self.vertices[0].clone(); self.vertices.len()];
        for (i, v) in self.vertices.iter().enumerate() {
            vs[p[i]] = v.clone();
        }
        let edges = self.edges.iter().map(|e| e.relabel(p)).sorted().collect();
        DecoratedGraph { vertices: vs, edges }
    }

    /// Isomorphism-invariant colour classes from iterated neighbourhood refinement.
    fn refined_colors(&self) -> Vec<usize> {
        let n = self.vertices.len();
        let mut color: Vec<usize> = rank_of(&self.vertices.iter().collect::<Vec<_>>());
        for _ in 0..n {
            let sig: Vec<(usize, Vec<(usize, u32, u32)>)> = (0..n)
                .map(|v| {
                    let mut nb: Vec<(usize, u32, u32)> = self
                        .half_edges(v)
                        .into_iter()
                        .map(|(_, d, w, dw)| (color[w], d, dw))
                        .collect();
                    nb.sort();
                    (color[v], nb)
                })
                .collect();
            let next = rank_of(&sig.iter().collect::<Vec<_>>());
            let stable = next.iter().max() == color.iter().max();
            color = next;
            if stable {
                break;
            }
        }
        color
    }

    /// Relabelings that sort vertices by colour, permuting freely inside each class.
    fn class_orderings(&self) -> Vec<Vec<usize>> {
        let color = self.refined_colors();
        let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (v, c) in color.iter().enumerate() {
            classes.entry(*c).or_default().push(v);
        }
        let mut orders: Vec<Vec<usize>> = vec![Vec::new()];
        for members in classes.values() {
            let perms: Vec<Vec<usize>> = members.iter().copied().permutations(members.len()).collect();
            orders = orders
                .into_iter()
                .flat_map(|o| {
                    perms.iter().map(move |p| {
                        let mut o = o.clone();
                        o.extend(p);
                        o
                    })
                })
                .collect();
        }
        // order lists old indices in new position order; invert to a relabeling map
        orders
            .into_iter()
            .map(|order| {
                let mut p = vec![0; order.len()];
                for (new, old) in order.into_iter().enumerate() {
                    p[old] = new;
                }
                p
            })
            .collect()
    }

    /// Canonical representative: two graphs are isomorphic iff their canonical forms are equal.
    pub fn canonical(&self) -> DecoratedGraph {
        self.class_orderings().iter().map(|p| self.relabel(p)).min().expect("at least one ordering")
    }

    /// Vertex permutations preserving all decorations and the edge multiset.
    pub fn vertex_automorphisms(&self) -> usize {
        let orders = self.class_orderings();
        let g0 = self.relabel(&orders[0]);
        orders.iter().filter(|p| self.relabel(p) == g0).count()
    }

    /// Order of the full automorphism group: vertex automorphisms times
    /// permutations of parallel identical edges and flips of symmetric loops.
    pub fn automorphisms(&self) -> usize {
        let mut edge_part = 1usize;
        for (e, group) in &self.edges.iter().chunk_by(|e| **e) {
            let m = group.count();
            edge_part *= (1..=m).product::<usize>();
            if e.is_loop() && e.da == e.db {
                edge_part *= 1 << m;
            }
        }
        self.vertex_automorphisms() * edge_part
    }

    /// Graphviz rendering; levels become ranks, genus and beta go in labels.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "graph \"{name}\" {{");
        let _ = writeln!(s, "  rankdir=BT;");
        for (i, v) in self.vertices.iter().enumerate() {
            let mut label = format!("{} g={}", v.level.short(), v.genus);
            if let Some(b) = v.beta {
                let _ = write!(label, " b={b}");
            }
            let _ = writeln!(s, "  v{i} [label=\"{label}\"];");
            for l in &v.legs {
                let tag = match l.kind {
                    LegKind::Marking => format!("m{}", l.id),
                    LegKind::Nu => format!("nu{}", l.id),
                };
                let deg = if l.degree > 0 { format!(" ({})", l.degree) } else { String::new() };
                let _ = writeln!(s, "  v{i}_{tag} [shape=point]; v{i} -- v{i}_{tag} [label=\"{tag}{deg}\"];");
            }
        }
        for e in &self.edges {
            let label = if e.da == e.db { format!("{}", e.da) } else { format!("{}|{}", e.da, e.db) };
            let _ = writeln!(s, "  v{} -- v{} [label=\"{label}\"];", e.a, e.b);
        }
        let mut by_rank: BTreeMap<u8, Vec<usize>> = BTreeMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            by_rank.entry(v.level.rank()).or_default().push(i);
        }
        for vs in by_rank.values() {
            let _ = writeln!(s, "  {{ rank=same; {} }}", vs.iter().map(|i| format!("v{i};")).join(" "));
        }
        s.push_str("}\n");
        s
    }

    /// Contract the vertices of `merge` along the edges joining two merged vertices.
    /// Each merged component becomes one vertex of level `to`, genus sum g + h^1.
    fn merge_levels(&self, merge: &[Level], to: Level, rest: impl Fn(Level) -> Level) -> DecoratedGraph {
        let n = self.vertices.len();
        let inside = |v: usize| merge.contains(&self.vertices[v].level);
        let internal: Vec<&Edge> = self.edges.iter().filter(|e| inside(e.a) && inside(e.b)).collect();
        let mut comp: Vec<Option<usize>> = vec![None; n];
        let mut next = 0;
        for s in 0..n {
            if !inside(s) || comp[s].is_some() {
                continue;
            }
            let mut stack = vec![s];
            comp[s] = Some(next);
            while let Some(x) = stack.pop() {
                for e in &internal {
                    for (p, q) in [(e.a, e.b), (e.b, e.a)] {
                        if p == x && comp[q].is_none() {
                            comp[q] = Some(next);
                            stack.push(q);
                        }
                    }
                }
            }
            next += 1;
        }
        let mut vertices = Vec::new();
        let mut map = vec![0; n];
        for c in 0..next {
            let members: Vec<usize> = (0..n).filter(|&v| comp[v] == Some(c)).collect();
            let edges_in = internal.iter().filter(|e| comp[e.a] == Some(c)).count();
            let genus = members.iter().map(|&v| self.vertices[v].genus).sum::<u32>() + (edges_in + 1 - members.len()) as u32;
            let legs = members.iter().flat_map(|&v| self.vertices[v].legs.clone()).collect();
            for &v in &members {
                map[v] = vertices.len();
            }
            vertices.push(Vertex::new(to, genus).with_legs(legs));
        }
        for v in 0..n {
            if !inside(v) {
                map[v] = vertices.len();
                let old = &self.vertices[v];
                vertices.push(Vertex::new(rest(old.level), old.genus).with_legs(old.legs.clone()));
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| !(inside(e.a) && inside(e.b)))
            .map(|e| Edge::new(map[e.a], map[e.b], e.da, e.db))
            .collect();
        DecoratedGraph::new(vertices, edges)
    }

    /// Bipartite graph obtained by merging the middle and upper levels into infinity vertices.
    pub fn merge_upper(&self) -> DecoratedGraph {
        self.merge_levels(&[Level::Middle, Level::Upper], Level::Infinity, |_| Level::Zero)
    }

    /// Bipartite graph obtained by merging the lower and middle levels into zero vertices.
    pub fn merge_lower(&self) -> DecoratedGraph {
        self.merge_levels(&[Level::Lower, Level::Middle], Level::Zero, |_| Level::Infinity)
    }
}

/// Dense ranks of a list of comparable signatures.
fn rank_of<T: Ord>(items: &[T]) -> Vec<usize> {
    let sorted: Vec<&T> = items.iter().sorted().dedup().collect();
    items.iter().map(|x| sorted.binary_search(&x).expect("present")).collect()
}

/// The six genus-two bipartite graphs with nu empty, labeled A to F, without beta.
pub fn genus_two_bipartite_letters() -> Vec<(char, DecoratedGraph)> {
    use Level::{Infinity as I, Zero as O};
    let v = Vertex::new;
    let e = Edge::with_degree;
    vec![
        ('A', DecoratedGraph::new(vec![v(O, 2)], vec![])),
        ('B', DecoratedGraph::new(vec![v(O, 1), v(I, 1)], vec![e(0, 1, 1)])),
        ('C', DecoratedGraph::new(vec![v(O, 0), v(I, 1), v(I, 1)], vec![e(0, 1, 1), e(0, 2, 1)])),
        ('D', DecoratedGraph::new(vec![v(O, 0), v(I, 1)], vec![e(0, 1, 1), e(0, 1, 1)])),
        ('E', DecoratedGraph::new(vec![v(O, 0), v(O, 0), v(I, 2)], vec![e(0, 2, 2), e(1, 2, 2)])),
        ('F', DecoratedGraph::new(vec![v(O, 0), v(I, 2)], vec![e(0, 1, 3)])),
    ]
}

/// Letter of a genus-two bipartite graph (beta ignored), if it is one of A to F.
pub fn genus_two_letter(g: &DecoratedGraph) -> Option<char> {
    let c = g.strip_beta().canonical();
    genus_two_bipartite_letters().into_iter().find(|(_, f)| f.canonical() == c).map(|(l, _)| l)
}

/// Letter pair (upper merge, lower merge) of a genus-two tripartite graph.
pub fn tripartite_letters(g: &DecoratedGraph) -> Option<String> {
    Some(format!("{}{}", genus_two_letter(&g.merge_upper())?, genus_two_letter(&g.merge_lower())?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn letter(c: char) -> DecoratedGraph {
        genus_two_bipartite_letters().into_iter().find(|x| x.0 == c).unwrap().1
    }

    /// Brute force over all vertex permutations and all bijections of edges.
    fn brute_aut(g: &DecoratedGraph) -> usize {
        let n = g.vertices.len();
        let mut count = 0;
        for p in (0..n).permutations(n) {
            if (0..n).any(|i| g.vertices[i] != g.vertices[p[i]]) {
                continue;
            }
            let m = g.edges.len();
            for q in (0..m).permutations(m) {
                let ok = (0..m).all(|i| {
                    let e = g.edges[i];
                    let f = g.edges[q[i]];
                    (p[e.a] == f.a && p[e.b] == f.b && e.da == f.da && e.db == f.db)
                        || (p[e.a] == f.b && p[e.b] == f.a && e.da == f.db && e.db == f.da)
                });
                if ok {
                    // a symmetric loop mapped onto itself can also be flipped
                    count += (0..m)
                        .map(|i| {
                            let e = g.edges[i];
                            if e.is_loop() && e.da == e.db {
                                2
                            } else {
                                1
                            }
                        })
                        .product::<usize>();
                }
            }
        }
        count
    }

    #[test]
    fn automorphism_examples() {
        assert_eq!(letter('A').automorphisms(), 1);
        assert_eq!(letter('C').automorphisms(), 2);
        assert_eq!(letter('D').automorphisms(), 2);
        assert_eq!(letter('E').automorphisms(), 2);
        for c in "ABCDEF".chars() {
            assert_eq!(letter(c).automorphisms(), brute_aut(&letter(c)), "{c}");
        }
        let lp = DecoratedGraph::new(vec![Vertex::new(Level::Zero, 0)], vec![Edge::new(0, 0, 0, 0), Edge::new(0, 0, 0, 0)]);
        assert_eq!(lp.automorphisms(), 8);
        assert_eq!(brute_aut(&lp), 8);
    }

    #[test]
    fn canonical_is_invariant() {
        let g = letter('E');
        for p in (0..3).permutations(3) {
            assert_eq!(g.relabel(&p).canonical(), g.canonical());
        }
        assert_ne!(letter('C').canonical(), letter('D').canonical());
        assert_eq!(letter('D').genus(), 2);
        assert_eq!(letter('E').h1(), 0);
    }

    #[test]
    fn merges() {
        use Level::*;
        let t = DecoratedGraph::new(
            vec![Vertex::new(Lower, 1), Vertex::new(Middle, 0), Vertex::new(Upper, 1)],
            vec![Edge::with_degree(0, 1, 1), Edge::with_degree(1, 2, 1)],
        );
        assert_eq!(genus_two_letter(&t.merge_upper()), Some('B'));
        assert_eq!(genus_two_letter(&t.merge_lower()), Some('B'));
        let dot = letter('F').to_dot("F");
        assert!(dot.contains("label=\"3\""));
    }
}
