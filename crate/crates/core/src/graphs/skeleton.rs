use super::graph::{DecoratedGraph, LegKind, Level};
use super::psi::psi_integral;
use crate::exactcore::{int, rat, Rat};
use crate::genring::{in_r, GenPoly, Mono};
use crate::hae::{v_tensor, RInverse, VTensor};
use crate::qde::{tqft_omega, RMatrix, SDelta};
use num_traits::Zero;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FlagRef {
    Leg(u32),
    HalfEdge { edge: usize, end: u8 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeEnd {
    pub vertex: usize,
    pub level: Level,
    /// Flag degree at an infinity end, where S_delta^{-1} is placed.
    pub delta: Option<u32>,
}

/// Named leaves of a contribution tree.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Primitive {
    /// Rbar^{-1}(z_f) applied to the insertion of a leg at a 0-vertex.
    RColumn { vertex: usize, leg: u32, insertion: usize },
    /// S_delta^{-1}(z_f) applied to the insertion of a leg at an infinity vertex.
    SDelta { vertex: usize, leg: u32, delta: u32, insertion: usize },
    /// (delta_{v1 v2} sum e_a (x) e^a - R_{v1}^{-1} e_a (x) R_{v2}^{-1} e^a) / (z1 + z2);
    /// `diagonal` is delta_{v1 v2}, set when both ends are labeled 0.
    EdgeKernel { edge: usize, diagonal: bool, ends: [EdgeEnd; 2] },
    /// T omega_{g,m} with psi classes substituted for the flag variables.
    TqftVertex { vertex: usize, genus: u32, valence: usize },
    /// (I_0)^{2g-2+l(mu)} J Omega^{inf,c}_{g,mu} at z_i = 5H/mu_i, left unevaluated.
    /// Vanishes when 2g - 2 + l(mu) - 5|mu| < 0 or when mu has a part >= 3.
    InfinityVertex { vertex: usize, genus: u32, mu: Vec<u32>, excess: i64, vanishes: bool },
    /// J_t(-5H/mu'_i) insertions of the J-sum: partitions mu' without parts equal to one
    /// that keep the vertex excess non-negative.
    JShift { vertex: usize, partitions: Vec<Vec<u32>> },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Node {
    Leaf(Primitive),
    /// Contraction over the five-dimensional state space along the listed flags.
    Contract { over: Vec<FlagRef>, children: Vec<Node> },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContributionSkeleton {
    pub graph: DecoratedGraph,
    /// Basis index a_i inserted at marking i + 1.
    pub insertions: Vec<usize>,
    pub automorphisms: usize,
    pub root: Node,
}

#[derive(Debug, Error, PartialEq)]
pub enum SkeletonError {
    #[error("graph has 0-labeled vertices but no R-matrix was supplied")]
    MissingR,
    #[error("no S_delta supplied for delta = {0}")]
    MissingSDelta(u32),
    #[error("no J_t(H_delta) supplied for delta = {0}")]
    MissingJ(u32),
    #[error("expected {expected} insertions, got {got}")]
    InsertionCount { expected: usize, got: usize },
    #[error("R-matrix order {have} too low, need {need}")]
    OrderTooLow { have: usize, need: usize },
    #[error("degree bookkeeping violated: {0}")]
    Bookkeeping(String),
    #[error("{0}")]
    Kernel(String),
}

/// Matrices the placement rules draw on.
#[derive(Default)]
pub struct SkeletonInputs<'a> {
    pub r: Option<&'a RMatrix>,
    pub sdeltas: BTreeMap<u32, &'a SDelta>,
    pub j: BTreeMap<u32, Vec<Rat>>,
}

/// Partitions with parts >= 2 (non-increasing) such that adding them keeps
/// 2g - 2 + l - 5|mu| >= 0, starting from excess `start`.
fn j_partitions(start: i64) -> Vec<Vec<u32>> {
    fn rec(excess: i64, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(cur.clone());
        for p in (2..=max).rev() {
            let next = excess + 1 - 5 * p as i64;
            if next >= 0 {
                cur.push(p);
                rec(next, p, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if start >= 0 {
        rec(start, (start.max(0) as u32 + 1) / 5 + 1, &mut Vec::new(), &mut out);
    }
    out
}

/// Build the contraction tree of a labeled stable graph following the
/// flag, edge and vertex placement rules.
pub fn contribution_skeleton(
    graph: &DecoratedGraph,
    insertions: &[usize],
    inputs: &SkeletonInputs,
) -> Result<ContributionSkeleton, SkeletonError> {
    let markings = graph.vertices.iter().flat_map(|v| &v.legs).filter(|l| l.kind == LegKind::Marking).count();
    if markings != insertions.len() {
        return Err(SkeletonError::InsertionCount { expected: markings, got: insertions.len() });
    }
    let is_inf = |v: usize| graph.vertices[v].level == Level::Infinity;
    if (0..graph.vertices.len()).any(|v| !is_inf(v)) && inputs.r.is_none() {
        return Err(SkeletonError::MissingR);
    }
    let need_s = |d: u32| if inputs.sdeltas.contains_key(&d) { Ok(()) } else { Err(SkeletonError::MissingSDelta(d)) };
    let mut vertex_nodes = Vec::new();
    for (vi, v) in graph.vertices.iter().enumerate() {
        let mut children = Vec::new();
        let mut over = Vec::new();
        if is_inf(vi) {
            let mu = graph.flag_degrees(vi);
            let total: u32 = mu.iter().sum();
            let excess = 2 * v.genus as i64 - 2 + mu.len() as i64 - 5 * total as i64;
            let vanishes = excess < 0 || mu.iter().any(|&p| p >= 3);
            let partitions = if vanishes { Vec::new() } else { j_partitions(excess) };
            for p in partitions.iter().flatten() {
                if !inputs.j.contains_key(p) {
                    return Err(SkeletonError::MissingJ(*p));
                }
            }
            children.push(Node::Leaf(Primitive::InfinityVertex { vertex: vi, genus: v.genus, mu, excess, vanishes }));
            children.push(Node::Leaf(Primitive::JShift { vertex: vi, partitions }));
        } else {
            children.push(Node::Leaf(Primitive::TqftVertex { vertex: vi, genus: v.genus, valence: graph.valence(vi) }));
        }
        for leg in &v.legs {
            let insertion = insertions[leg.id as usize - 1];
            over.push(FlagRef::Leg(leg.id));
            children.push(Node::Leaf(if is_inf(vi) {
                need_s(leg.degree)?;
                Primitive::SDelta { vertex: vi, leg: leg.id, delta: leg.degree, insertion }
            } else {
                Primitive::RColumn { vertex: vi, leg: leg.id, insertion }
            }));
        }
        vertex_nodes.push(Node::Contract { over, children });
    }
    let mut over = Vec::new();
    let mut children = vertex_nodes;
    for (ei, e) in graph.edges.iter().enumerate() {
        let end = |v: usize, d: u32| -> Result<EdgeEnd, SkeletonError> {
            let delta = if is_inf(v) {
                need_s(d)?;
                Some(d)
            } else {
                None
            };
            Ok(EdgeEnd { vertex: v, level: graph.vertices[v].level, delta })
        };
        let ends = [end(e.a, e.da)?, end(e.b, e.db)?];
        over.push(FlagRef::HalfEdge { edge: ei, end: 0 });
        over.push(FlagRef::HalfEdge { edge: ei, end: 1 });
        children.push(Node::Leaf(Primitive::EdgeKernel { edge: ei, diagonal: !is_inf(e.a) && !is_inf(e.b), ends }));
    }
    Ok(ContributionSkeleton {
        graph: graph.clone(),
        insertions: insertions.to_vec(),
        automorphisms: graph.automorphisms(),
        root: Node::Contract { over, children },
    })
}

impl ContributionSkeleton {
    pub fn leaves(&self) -> Vec<&Primitive> {
        fn walk<'a>(n: &'a Node, out: &mut Vec<&'a Primitive>) {
            match n {
                Node::Leaf(p) => out.push(p),
                Node::Contract { children, .. } => children.iter().for_each(|c| walk(c, out)),
            }
        }
        let mut out = Vec::new();
        walk(&self.root, &mut out);
        out
    }

    /// An infinity vertex whose placeholder is forced to vanish.
    pub fn vanishing_vertex(&self) -> Option<usize> {
        self.leaves().into_iter().find_map(|p| match p {
            Primitive::InfinityVertex { vertex, vanishes: true, .. } => Some(*vertex),
            _ => None,
        })
    }

    pub fn has_infinity_vertex(&self) -> bool {
        self.leaves().iter().any(|p| matches!(p, Primitive::InfinityVertex { .. }))
    }
}

/// Integrated contribution of an all-0-labeled graph.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Evaluation {
    /// Coefficient of (I_0/L)^{i0_over_l_pow}, with lambda^{5k} traded for L^{-5k} Z^k.
    pub value: GenPoly,
    pub i0_over_l_pow: i64,
    /// 3g - 3 + sum a_i.
    pub degree: i64,
    pub homogeneous: bool,
    pub in_r: bool,
    /// Lambda exponents present before the trade.
    pub lambda_powers: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum SkeletonValue {
    Evaluated(Evaluation),
    /// Contains Omega^{inf,c} placeholders.
    Symbolic { placeholders: usize },
    /// Some infinity placeholder vanishes identically.
    Zero { vertex: usize },
}

type LPoly = BTreeMap<i64, GenPoly>;

fn add_into(acc: &mut LPoly, lam: i64, p: GenPoly) {
    if p.is_zero() {
        return;
    }
    let e = acc.entry(lam).or_default();
    *e = &*e + &p;
    if e.is_zero() {
        acc.remove(&lam);
    }
}

/// Evaluates contributions of graphs whose vertices are all labeled 0.
pub struct ZeroGraphEvaluator {
    ri: RInverse,
    vt: VTensor,
    vertex_memo: std::sync::Mutex<HashMap<(u32, Vec<(usize, u32)>), LPoly>>,
}

impl ZeroGraphEvaluator {
    pub fn new(rm: &RMatrix) -> Result<Self, SkeletonError> {
        let ri = RInverse::new(rm);
        let vt = v_tensor(&ri).map_err(SkeletonError::Kernel)?;
        Ok(ZeroGraphEvaluator { ri, vt, vertex_memo: Default::default() })
    }

    /// Coefficient of phi_m z^k in Rbar^{-1}(z) phi_j, with its lambda exponent.
    fn leg(&self, j: usize, k: u32, m: usize) -> (&GenPoly, i64) {
        (&self.ri.v[j][k as usize][m], j as i64 - m as i64 - k as i64)
    }

    /// Integral of T omega_{g,n} against psi powers k_f on flags with basis indices m_f.
    fn vertex(&self, g: u32, flags: &[(usize, u32)]) -> LPoly {
        let mut key = flags.to_vec();
        key.sort_unstable();
        if let Some(v) = self.vertex_memo.lock().expect("memo").get(&(g, key.clone())) {
            return v.clone();
        }
        let n = flags.len() as i64;
        let dim = 3 * g as i64 - 3 + n;
        let used: i64 = flags.iter().map(|f| f.1 as i64).sum();
        let mut out = LPoly::new();
        if used <= dim {
            let rem = (dim - used) as u32;
            // T(z) = z (phi_0 - Rbar^{-1}(z) phi_0) = -sum_{l >= 1} v[0][l][b] z^{l+1} phi_b
            let mut stack: Vec<(Vec<(u32, usize)>, u32)> = vec![(Vec::new(), rem)];
            while let Some((pts, left)) = stack.pop() {
                if left == 0 {
                    let t = pts.len();
                    let mut exps: Vec<u32> = flags.iter().map(|f| f.1).collect();
                    exps.extend(pts.iter().map(|p| p.0 + 1));
                    let psi = psi_integral(g, &exps);
                    if psi.is_zero() {
                        continue;
                    }
                    let mut ins: Vec<i64> = flags.iter().map(|f| f.0 as i64).collect();
                    ins.extend(pts.iter().map(|p| p.1 as i64));
                    let w = tqft_omega(g, &ins).expect("stable vertex");
                    if w.coeff.is_zero() {
                        continue;
                    }
                    let fact: Rat = (1..=t as i64).fold(int(1), |a, x| a / int(x));
                    let mut poly = GenPoly::constant(psi * w.coeff * fact);
                    let mut lam = w.lambda_pow;
                    for &(l, b) in &pts {
                        let (c, lp) = self.leg(0, l, b);
                        poly = -(&poly * c);
                        lam += lp;
                    }
                    add_into(&mut out, lam, poly);
                    continue;
                }
                for l in 1..=left {
                    if (l as usize) > self.ri.kmax {
                        break;
                    }
                    for b in 0..5 {
                        if self.ri.v[0][l as usize][b].is_zero() {
                            continue;
                        }
                        let mut p = pts.clone();
                        p.push((l, b));
                        stack.push((p, left - l));
                    }
                }
            }
        }
        self.vertex_memo.lock().expect("memo").insert((g, key), out.clone());
        out
    }

    pub fn evaluate(&self, graph: &DecoratedGraph, insertions: &[usize]) -> Result<Evaluation, SkeletonError> {
        let nv = graph.vertices.len();
        let dims: Vec<i64> = (0..nv).map(|v| 3 * graph.vertices[v].genus as i64 - 3 + graph.valence(v) as i64).collect();
        let need_leg = dims.iter().copied().max().unwrap_or(0).max(0) as usize;
        let need_edge = graph.edges.iter().map(|e| (dims[e.a] + dims[e.b]) as usize + 1).max().unwrap_or(0);
        let need = need_leg.max(need_edge);
        if self.ri.kmax < need {
            return Err(SkeletonError::OrderTooLow { have: self.ri.kmax, need });
        }
        // one slot per flag: legs then half-edges, each choosing (basis index, psi power)
        struct Slot {
            vertex: usize,
        }
        let mut options: Vec<Vec<(Vec<(usize, usize, u32)>, GenPoly, i64)>> = Vec::new();
        let mut slots = Vec::new();
        for (vi, v) in graph.vertices.iter().enumerate() {
            for leg in &v.legs {
                let a = insertions[leg.id as usize - 1];
                let s = slots.len();
                slots.push(Slot { vertex: vi });
                let mut opt = Vec::new();
                for k in 0..=dims[vi].max(0) as u32 {
                    for m in 0..5 {
                        let (c, lam) = self.leg(a, k, m);
                        if !c.is_zero() {
                            opt.push((vec![(s, m, k)], c.clone(), lam));
                        }
                    }
                }
                options.push(opt);
            }
        }
        for e in &graph.edges {
            let (sa, sb) = (slots.len(), slots.len() + 1);
            slots.push(Slot { vertex: e.a });
            slots.push(Slot { vertex: e.b });
            let mut opt = Vec::new();
            for m in 0..5 {
                for mp in 0..5 {
                    for (&(ka, kb), c) in &self.vt.comp[&(m, mp)] {
                        if (ka as i64) <= dims[e.a] && (kb as i64) <= dims[e.b] && !c.is_zero() {
                            let lam = 2 - m as i64 - mp as i64 - ka as i64 - kb as i64;
                            // the pairing in the phi basis carries (I_0/L)^2, tracked separately
                            opt.push((vec![(sa, m, ka), (sb, mp, kb)], c.clone(), lam));
                        }
                    }
                }
            }
            options.push(opt);
        }
        let mut total = LPoly::new();
        let mut choice: Vec<(usize, u32)> = vec![(0, 0); slots.len()];
        fn rec(
            ev: &ZeroGraphEvaluator,
            graph: &DecoratedGraph,
            slots: &[Slot],
            options: &[Vec<(Vec<(usize, usize, u32)>, GenPoly, i64)>],
            i: usize,
            choice: &mut Vec<(usize, u32)>,
            coeff: GenPoly,
            lam: i64,
            total: &mut LPoly,
        ) {
            if i == options.len() {
                let mut acc: LPoly = BTreeMap::from([(lam, coeff)]);
                for (vi, v) in graph.vertices.iter().enumerate() {
                    let flags: Vec<(usize, u32)> = (0..slots.len()).filter(|&s| slots[s].vertex == vi).map(|s| choice[s]).collect();
                    let val = ev.vertex(v.genus, &flags);
                    let mut next = LPoly::new();
                    for (l1, p1) in &acc {
                        for (l2, p2) in &val {
                            add_into(&mut next, l1 + l2, p1 * p2);
                        }
                    }
                    acc = next;
                    if acc.is_empty() {
                        return;
                    }
                }
                for (l, p) in acc {
                    add_into(total, l, p);
                }
                return;
            }
            for (sets, c, l) in &options[i] {
                for &(s, m, k) in sets {
                    choice[s] = (m, k);
                }
                rec(ev, graph, slots, options, i + 1, choice, &coeff * c, lam + l, total);
            }
        }
        rec(self, graph, &slots, &options, 0, &mut choice, GenPoly::constant(int(1)), 0, &mut total);

        let degree = 3 * graph.genus() as i64 - 3 + insertions.iter().map(|&a| a as i64).sum::<i64>();
        let mut value = GenPoly::zero();
        let lambda_powers: Vec<i64> = total.keys().copied().collect();
        for (lam, p) in &total {
            if lam % 5 != 0 {
                return Err(SkeletonError::Bookkeeping(format!("lambda^{lam} is not a power of lambda^5")));
            }
            for d in p.degrees() {
                if d as i64 + lam != degree {
                    return Err(SkeletonError::Bookkeeping(format!("term of degree {d} with lambda^{lam}, expected total {degree}")));
                }
            }
            let k = (lam / 5) as i32;
            value = value + p * &GenPoly::term(Mono::new(5 * k, k, 0, 0, 0, 0), rat(1, 1));
        }
        let homogeneous = value.is_zero() || value.is_homogeneous_of(degree as i32);
        let in_r = in_r(&value).0;
        Ok(Evaluation { value, i0_over_l_pow: 2 * graph.genus() as i64 - 2, degree, homogeneous, in_r, lambda_powers })
    }
}

/// Evaluate a skeleton: all-0 graphs are integrated, graphs with infinity
/// vertices stay symbolic or vanish by the placeholder rules.
pub fn evaluate_skeleton(sk: &ContributionSkeleton, ev: &ZeroGraphEvaluator) -> Result<SkeletonValue, SkeletonError> {
    if let Some(vertex) = sk.vanishing_vertex() {
        return Ok(SkeletonValue::Zero { vertex });
    }
    if sk.has_infinity_vertex() {
        let placeholders = sk.leaves().iter().filter(|p| matches!(p, Primitive::InfinityVertex { .. })).count();
        return Ok(SkeletonValue::Symbolic { placeholders });
    }
    ev.evaluate(&sk.graph, &sk.insertions).map(SkeletonValue::Evaluated)
}

#[cfg(test)]
mod tests {
    use super::super::enumerate::enumerate_ginfty;
    use super::super::graph::{Edge, Leg, Vertex};
    use super::*;
    use crate::qde::r_matrix;

    #[test]
    fn genus_one_single_vertex() {
        let rm = r_matrix(4).unwrap();
        let ev = ZeroGraphEvaluator::new(&rm).unwrap();
        let g = DecoratedGraph::new(vec![Vertex::new(Level::Zero, 1).with_legs(vec![Leg::marking(1)])], vec![]);
        let inputs = SkeletonInputs { r: Some(&rm), ..Default::default() };
        let sk = contribution_skeleton(&g, &[1], &inputs).unwrap();
        let SkeletonValue::Evaluated(e) = evaluate_skeleton(&sk, &ev).unwrap() else { panic!("not evaluated") };
        assert_eq!(e.degree, 1);
        assert!(e.homogeneous && e.in_r);
        assert!(!e.value.is_zero());
        assert_eq!(e.i0_over_l_pow, 0);
        // the two pieces: psi on the leg, and one T-point with psi^2 on M_{1,2}
        let expect = (rm.r[1][1][0].scale(&rat(-5, 24))) + rm.r[1][0][4].scale(&rat(5, 24));
        assert_eq!(e.value, expect);
    }

    #[test]
    fn genus_two_zero_graphs() {
        let rm = r_matrix(6).unwrap();
        let ev = ZeroGraphEvaluator::new(&rm).unwrap();
        let inputs = SkeletonInputs { r: Some(&rm), ..Default::default() };
        let mut evaluated = 0;
        for gi in enumerate_ginfty(2, 0) {
            let sk = contribution_skeleton(&gi.graph, &[], &inputs).unwrap();
            match evaluate_skeleton(&sk, &ev).unwrap() {
                SkeletonValue::Evaluated(e) => {
                    assert!(e.homogeneous && e.in_r, "{:?}", gi.graph);
                    assert_eq!(e.degree, 3);
                    assert_eq!(e.i0_over_l_pow, 2);
                    evaluated += 1;
                }
                SkeletonValue::Symbolic { placeholders } => assert_eq!(placeholders, 1),
                SkeletonValue::Zero { .. } => panic!("admissible graph vanished"),
            }
        }
        assert_eq!(evaluated, 7);
    }

    #[test]
    fn edge_kernel_is_divisible() {
        let rm = r_matrix(6).unwrap();
        assert!(ZeroGraphEvaluator::new(&rm).is_ok());
    }

    #[test]
    fn placeholders_and_errors() {
        let g = DecoratedGraph::new(
            vec![Vertex::new(Level::Zero, 0).with_legs(vec![Leg::marking(1)]), Vertex::new(Level::Infinity, 10)],
            vec![Edge::new(0, 1, 0, 3), Edge::new(0, 1, 0, 1)],
        );
        assert_eq!(contribution_skeleton(&g, &[0], &SkeletonInputs::default()).unwrap_err(), SkeletonError::MissingR);
        let rm = r_matrix(2).unwrap();
        let inputs = SkeletonInputs { r: Some(&rm), ..Default::default() };
        assert_eq!(contribution_skeleton(&g, &[0], &inputs).unwrap_err(), SkeletonError::MissingSDelta(1));
        let s1 = crate::qde::s_delta(1).unwrap();
        let s3 = crate::qde::s_delta(3).unwrap();
        let only1 = SkeletonInputs { r: Some(&rm), sdeltas: BTreeMap::from([(1, &s1)]), ..Default::default() };
        assert_eq!(contribution_skeleton(&g, &[0], &only1).unwrap_err(), SkeletonError::MissingSDelta(3));
        let inputs = SkeletonInputs { r: Some(&rm), sdeltas: BTreeMap::from([(1, &s1), (3, &s3)]), ..Default::default() };
        let sk = contribution_skeleton(&g, &[0], &inputs).unwrap();
        let ev = ZeroGraphEvaluator::new(&rm).unwrap();
        // a part of size 3 forces the placeholder to vanish
        assert_eq!(evaluate_skeleton(&sk, &ev).unwrap(), SkeletonValue::Zero { vertex: 1 });
        assert!(sk.leaves().iter().any(|p| matches!(p, Primitive::EdgeKernel { diagonal: false, .. })));
    }

    #[test]
    fn j_sum_is_finite() {
        assert_eq!(j_partitions(0), vec![Vec::<u32>::new()]);
        assert_eq!(j_partitions(9), vec![vec![], vec![2]]);
        assert!(j_partitions(-1).is_empty());
    }
}
