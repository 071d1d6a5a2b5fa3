//! Localization graph combinatorics: bipartite, tripartite and labeled stable
//! graphs with automorphisms, psi-class intersection numbers and contribution
//! skeletons for the generalized R-matrix action.

mod enumerate;
mod graph;
mod psi;
mod skeleton;

pub use enumerate::{
    bipartite_bounds, enumerate_bipartite, enumerate_bipartite_in, enumerate_ginfty, enumerate_stable_graphs, enumerate_tripartite,
    enumerate_tripartite_in, labeled_bipartite_count, orbit_sum, tripartite_bounds, Bounds, GInftyGraph, Leaves,
};
pub use graph::{genus_two_bipartite_letters, genus_two_letter, tripartite_letters, DecoratedGraph, Edge, Leg, LegKind, Level, Vertex};
pub use psi::{psi_integral, psi_table, PsiTable};
pub use skeleton::{
    contribution_skeleton, evaluate_skeleton, ContributionSkeleton, EdgeEnd, Evaluation, FlagRef, Node, Primitive, SkeletonError,
    SkeletonInputs, SkeletonValue, ZeroGraphEvaluator,
};

use crate::report::{Check, Report};
use itertools::Itertools;
use serde_json::json;

/// Regression counts of labeled stable graphs |G^inf_{g,n}| from exhaustive search.
pub const GINFTY_COUNTS: [((u32, u32), usize); 5] = [((1, 1), 2), ((2, 0), 8), ((2, 1), 16), ((3, 0), 43), ((3, 1), 182)];

/// Expected tripartite letter pairs in genus two.
pub const TRIPARTITE_PAIRS: [&str; 20] =
    ["AA", "BA", "BB", "CA", "CB", "CC", "DA", "DB", "DD", "EA", "EB", "EC", "ED", "EE", "EF", "FA", "FB", "FC", "FD", "FF"];

fn describe(g: &DecoratedGraph) -> String {
    let vs = g
        .vertices
        .iter()
        .map(|v| {
            let legs = v.legs.iter().map(|l| if l.degree > 0 { format!("{:?}{}({})", l.kind, l.id, l.degree) } else { format!("{:?}{}", l.kind, l.id) }).join(",");
            format!("{}:g{}{}", v.level.short(), v.genus, if legs.is_empty() { String::new() } else { format!("[{legs}]") })
        })
        .join(" ");
    let es = g.edges.iter().map(|e| if e.da == e.db { format!("{}-{}:{}", e.a, e.b, e.da) } else { format!("{}-{}:{}|{}", e.a, e.b, e.da, e.db) }).join(" ");
    format!("{{{vs}; {es}}}")
}

/// JSON fixture: count plus canonical forms with automorphism orders.
pub fn graph_list_json(kind: &str, genus: u32, graphs: &[DecoratedGraph]) -> serde_json::Value {
    json!({
        "kind": kind,
        "genus": genus,
        "count": graphs.len(),
        "graphs": graphs.iter().map(|g| json!({"canonical": g, "automorphisms": g.automorphisms(), "summary": describe(g)})).collect::<Vec<_>>(),
    })
}

/// One DOT document per graph, as (file name, contents).
pub fn dot_files(prefix: &str, graphs: &[DecoratedGraph]) -> Vec<(String, String)> {
    graphs.iter().enumerate().map(|(i, g)| (format!("{prefix}_{i:02}.dot"), g.to_dot(&format!("{prefix}_{i:02}")))).collect()
}

/// Graph counts, merge projections, completeness and psi-table checks.
pub fn graphs_report() -> Report {
    let mut rep = Report::new("graphs");
    let sq = Leaves::StableQuotient;
    let g2 = enumerate_bipartite(2, 0, &[], sq);
    let letters: String = g2.iter().filter_map(genus_two_letter).sorted().collect();
    rep.push(Check::from_bool("bipartite genus 2, nu empty: 6 graphs A-F", g2.len() == 6 && letters == "ABCDEF", format!("{} graphs, letters {letters}", g2.len())));
    let wide = enumerate_bipartite_in(2, 0, &[], sq, bipartite_bounds(2, 0, &[], sq).widened()).len();
    rep.push(Check::from_bool("bipartite search box complete", wide == g2.len(), format!("widened box finds {wide}")));

    let g1 = enumerate_bipartite(1, 0, &[1], sq);
    rep.push(Check::from_bool(
        "bipartite genus 1, nu = (1): 4 graphs",
        g1.len() == 4,
        format!(
            "{} graphs satisfy the conditions: {}; the drawn isolated genus-1 infinity vertex with the leg needs beta = 2/5",
            g1.len(),
            g1.iter().map(describe).join(" ")
        ),
    ));

    let tri = enumerate_tripartite(2, 0);
    let pairs: Vec<String> = tri.iter().map(|t| tripartite_letters(t).unwrap_or_else(|| "??".into())).sorted().collect();
    let expected: Vec<String> = TRIPARTITE_PAIRS.iter().map(|s| s.to_string()).sorted().collect();
    rep.push(Check::from_bool("tripartite genus 2: 20 graphs", tri.len() == 20, format!("{} graphs", tri.len())));
    rep.push(Check::from_bool("tripartite merge letter pairs", pairs == expected, pairs.join(" ")));
    let twide = enumerate_tripartite_in(2, 0, tripartite_bounds(2, 0).widened()).len();
    rep.push(Check::from_bool("tripartite search box complete", twide == tri.len(), format!("widened box finds {twide}")));

    let labeled = labeled_bipartite_count(2, 0, &[], sq);
    rep.push(Check::from_bool("labeled enumeration / automorphisms", labeled == orbit_sum(&g2), format!("{labeled} labeled graphs")));

    for ((g, n), want) in GINFTY_COUNTS.iter().filter(|x| x.0 .0 <= 2) {
        let got = enumerate_ginfty(*g, *n);
        let inf_ok = got.iter().all(|x| x.graph.vertices.iter().all(|v| v.level != Level::Infinity || v.genus > 0));
        let le2 = got.iter().filter(|x| x.parts_le_2).count();
        rep.push(Check::from_bool(
            format!("G^inf_({g},{n}) regression count"),
            got.len() == *want && inf_ok,
            format!("{} graphs ({le2} with parts <= 2), no genus-0 infinity vertex", got.len()),
        ));
    }

    let t = psi_table();
    let anchors = [(0, vec![0, 0, 0], crate::rat(1, 1)), (1, vec![1], crate::rat(1, 24)), (2, vec![4], crate::rat(1, 1152))];
    let ok = anchors.iter().all(|(g, a, v)| t.integral(*g, a) == *v);
    for g in 0..=3u32 {
        for n in 1..=4usize {
            let dim = 3 * g as i64 - 3 + n as i64;
            if dim < 0 {
                continue;
            }
            for a in (0..n).map(|_| 0..=dim as u32).multi_cartesian_product().filter(|a| a.iter().sum::<u32>() as i64 == dim) {
                t.integral(g, &a);
            }
        }
    }
    let bad = t.string_dilaton_violations();
    rep.push(Check::from_bool("psi anchors <tau_0^3> = 1, <tau_1>_1 = 1/24, <tau_4>_2 = 1/1152", ok, String::new()));
    rep.push(Check::from_bool("string and dilaton on every stored entry", bad.is_empty(), format!("{} entries, violations {bad:?}", t.entries().len())));
    rep
}
