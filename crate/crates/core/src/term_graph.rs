//! Two-pointed labelled graphs of join-free terms, their composition by
//! gluing, and homomorphism search between them.
//!
//! `G_x` is a single `x`-edge between distinct input and output vertices.
//! `G_dom(s)` is `G_s` with the output moved onto the input, `G_ran(s)` is
//! `G_s` with the input moved onto the output, and `G_{s;t}` glues the output
//! of `G_s` to the input of `G_t`. A homomorphism `G_t -> G_s` (preserving
//! labels, input and output) exists iff `s <= t` holds in every algebra of
//! relations.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::relation::{Relation, RelationalModel};
use crate::term::Term;
use crate::union_find::UnionFind;

/// A 2-pointed graph on the dense vertex set `0..vertex_count`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TermGraph {
    pub vertex_count: usize,
    pub edges: BTreeSet<(usize, String, usize)>,
    pub input: usize,
    pub output: usize,
}

/// Assignment of source-graph vertices (by index) to target-graph vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexMap {
    pub assignment: Vec<usize>,
}

impl VertexMap {
    /// Checks that the map is total, in range, and preserves every labelled
    /// edge together with the input and output vertices.
    pub fn is_homomorphism(&self, from: &TermGraph, to: &TermGraph) -> bool {
        let h = &self.assignment;
        h.len() == from.vertex_count
            && h.iter().all(|&v| v < to.vertex_count)
            && h[from.input] == to.input
            && h[from.output] == to.output
            && from.edges.iter().all(|(u, x, v)| to.edges.contains(&(h[*u], x.clone(), h[*v])))
    }
}

impl TermGraph {
    pub fn single_edge(label: &str) -> TermGraph {
        TermGraph { vertex_count: 2, edges: BTreeSet::from([(0, label.to_string(), 1)]), input: 0, output: 1 }
    }

    pub fn labels(&self) -> BTreeSet<&str> {
        self.edges.iter().map(|(_, x, _)| x.as_str()).collect()
    }

    pub fn has_variable_loops(&self) -> bool {
        self.edges.iter().any(|(u, _, v)| u == v)
    }

    /// Whether the reflexive-transitive closure of the edge relation is antisymmetric.
    pub fn reachability_is_antisymmetric(&self) -> bool {
        let reach = self.reachability();
        (0..self.vertex_count).all(|u| (0..self.vertex_count).all(|v| u == v || !(reach[u][v] && reach[v][u])))
    }

    fn reachability(&self) -> Vec<Vec<bool>> {
        let n = self.vertex_count;
        let mut reach = vec![vec![false; n]; n];
        for (u, row) in reach.iter_mut().enumerate() {
            row[u] = true;
        }
        for (u, _, v) in &self.edges {
            reach[*u][*v] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if reach[i][k] {
                    for j in 0..n {
                        if reach[k][j] {
                            reach[i][j] = true;
                        }
                    }
                }
            }
        }
        reach
    }

    /// Graphviz rendering with the input and output vertices marked.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph term {\n  rankdir=LR;\n");
        for v in 0..self.vertex_count {
            let mut tags = Vec::new();
            if v == self.input {
                tags.push("ι");
            }
            if v == self.output {
                tags.push("o");
            }
            let label = if tags.is_empty() { v.to_string() } else { format!("{v} ({})", tags.join(",")) };
            let _ = writeln!(out, "  v{v} [label=\"{label}\"];");
        }
        for (u, x, v) in &self.edges {
            let _ = writeln!(out, "  v{u} -> v{v} [label=\"{x}\"];");
        }
        out.push_str("}\n");
        out
    }
}

/// Builds `G_t` for a join-free term.
pub fn build_term_graph(t: &Term) -> Result<TermGraph> {
    t.require_join_free("term graph")?;
    Ok(build(t))
}

fn build(t: &Term) -> TermGraph {
    match t {
        Term::Var(x) => TermGraph::single_edge(x),
        Term::Dom(s) => {
            let mut g = build(s);
            g.output = g.input;
            g
        }
        Term::Ran(s) => {
            let mut g = build(s);
            g.input = g.output;
            g
        }
        Term::Comp(l, r) => graph_compose(&build(l), &build(r)),
        Term::Join(..) => unreachable!("join rejected by build_term_graph"),
    }
}

/// Disjoint union of `g1` and `g2` with the output of `g1` identified with
/// the input of `g2`. Vertices are renumbered densely in order of their
/// smallest member.
pub fn graph_compose(g1: &TermGraph, g2: &TermGraph) -> TermGraph {
    let offset = g1.vertex_count;
    let total = offset + g2.vertex_count;
    let mut classes = UnionFind::new(total);
    classes.union(g1.output, g2.input + offset);

    let mut fresh = vec![usize::MAX; total];
    let mut next = 0;
    let mut rename = |v: usize, classes: &mut UnionFind| {
        let root = classes.find(v);
        if fresh[root] == usize::MAX {
            fresh[root] = next;
            next += 1;
        }
        fresh[root]
    };
    let ids: Vec<usize> = (0..total).map(|v| rename(v, &mut classes)).collect();

    let mut edges = BTreeSet::new();
    for (u, x, v) in &g1.edges {
        edges.insert((ids[*u], x.clone(), ids[*v]));
    }
    for (u, x, v) in &g2.edges {
        edges.insert((ids[u + offset], x.clone(), ids[v + offset]));
    }
    TermGraph { vertex_count: next, edges, input: ids[g1.input], output: ids[g2.output + offset] }
}

/// The relational model carried by a term graph: universe = its vertices,
/// each label interpreted as the set of its edges.
pub fn graph_to_model(g: &TermGraph) -> RelationalModel {
    let mut model = RelationalModel::new(g.vertex_count.max(1)).expect("non-empty universe");
    let mut rels: HashMap<&str, Relation> = HashMap::new();
    for (u, x, v) in &g.edges {
        rels.entry(x.as_str()).or_insert_with(|| Relation::empty(g.vertex_count)).insert(*u, *v);
    }
    for (x, r) in rels {
        model.set(x, r).expect("same universe");
    }
    model
}

// ---------------------------------------------------------------------------
// Homomorphism search

#[derive(Clone, PartialEq, Eq)]
struct Bits {
    words: Vec<u64>,
}

impl Bits {
    fn empty(n: usize) -> Bits {
        Bits { words: vec![0; n.div_ceil(64).max(1)] }
    }

    fn full(n: usize) -> Bits {
        let mut b = Bits::empty(n);
        for i in 0..n {
            b.set(i);
        }
        b
    }

    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn intersects(&self, other: &Bits) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    fn and_assign(&mut self, other: &Bits) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words
            .iter()
            .enumerate()
            .flat_map(|(w, &word)| (0..64).filter(move |b| word >> b & 1 == 1).map(move |b| w * 64 + b))
    }
}

/// Per-label successor and predecessor sets of the target graph.
struct TargetIndex {
    succ: HashMap<String, Vec<Bits>>,
    pred: HashMap<String, Vec<Bits>>,
}

impl TargetIndex {
    fn new(g: &TermGraph) -> TargetIndex {
        let n = g.vertex_count;
        let mut succ: HashMap<String, Vec<Bits>> = HashMap::new();
        let mut pred: HashMap<String, Vec<Bits>> = HashMap::new();
        for (u, x, v) in &g.edges {
            succ.entry(x.clone()).or_insert_with(|| vec![Bits::empty(n); n])[*u].set(*v);
            pred.entry(x.clone()).or_insert_with(|| vec![Bits::empty(n); n])[*v].set(*u);
        }
        TargetIndex { succ, pred }
    }
}

/// Finds a homomorphism `from -> to` preserving labels, input and output,
/// or returns `None` if there is none. The search is complete.
///
/// Backtracking over source vertices, smallest candidate set first, with
/// arc consistency on the labelled edges after every assignment.
pub fn hom_exists(from: &TermGraph, to: &TermGraph) -> Option<VertexMap> {
    let labels = to.labels();
    if from.labels().iter().any(|x| !labels.contains(x)) {
        return None;
    }
    let index = TargetIndex::new(to);
    let n_to = to.vertex_count;
    let mut domains = vec![Bits::full(n_to); from.vertex_count];
    let pin = |v: usize, target: usize, domains: &mut Vec<Bits>| {
        let mut only = Bits::empty(n_to);
        only.set(target);
        domains[v].and_assign(&only);
    };
    pin(from.input, to.input, &mut domains);
    pin(from.output, to.output, &mut domains);

    let edges: Vec<(usize, &str, usize)> = from.edges.iter().map(|(u, x, v)| (*u, x.as_str(), *v)).collect();
    if !propagate(&edges, &index, &mut domains) {
        return None;
    }
    search(&edges, &index, n_to, domains).map(|assignment| VertexMap { assignment })
}

/// Arc consistency over all source edges; false on a wiped-out domain.
fn propagate(edges: &[(usize, &str, usize)], index: &TargetIndex, domains: &mut [Bits]) -> bool {
    let mut changed = true;
    while changed {
        changed = false;
        for &(u, x, v) in edges {
            let succ = &index.succ[x];
            let pred = &index.pred[x];
            let keep_u: Vec<usize> = domains[u].iter().filter(|&a| succ[a].intersects(&domains[v])).collect();
            if keep_u.len() != domains[u].count() {
                let mut b = Bits::empty(succ.len());
                keep_u.iter().for_each(|&a| b.set(a));
                domains[u] = b;
                changed = true;
            }
            let keep_v: Vec<usize> = domains[v].iter().filter(|&b| pred[b].intersects(&domains[u])).collect();
            if keep_v.len() != domains[v].count() {
                let mut b = Bits::empty(pred.len());
                keep_v.iter().for_each(|&a| b.set(a));
                domains[v] = b;
                changed = true;
            }
            if domains[u].count() == 0 || domains[v].count() == 0 {
                return false;
            }
        }
    }
    domains.iter().all(|d| d.count() > 0)
}

fn search(edges: &[(usize, &str, usize)], index: &TargetIndex, n_to: usize, domains: Vec<Bits>) -> Option<Vec<usize>> {
    let branch = domains
        .iter()
        .enumerate()
        .filter(|(_, d)| d.count() > 1)
        .min_by_key(|(_, d)| d.count())
        .map(|(v, _)| v);
    let Some(var) = branch else {
        let assignment: Vec<usize> = domains.iter().map(|d| d.iter().next().expect("non-empty domain")).collect();
        return Some(assignment);
    };
    for value in domains[var].iter().collect::<Vec<_>>() {
        let mut next = domains.clone();
        let mut only = Bits::empty(n_to);
        only.set(value);
        next[var] = only;
        if propagate(edges, index, &mut next) {
            if let Some(found) = search(edges, index, n_to, next) {
                return Some(found);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::{eval, Mode};
    use crate::term::{enumerate_join_free, parse_term};

    fn g(s: &str) -> TermGraph {
        build_term_graph(&parse_term(s).unwrap()).unwrap()
    }

    fn edges(list: &[(usize, &str, usize)]) -> BTreeSet<(usize, String, usize)> {
        list.iter().map(|(u, x, v)| (*u, x.to_string(), *v)).collect()
    }

    #[test]
    fn build_examples() {
        let d = g("dom(x)");
        assert_eq!(d.vertex_count, 2);
        assert_eq!(d.edges, edges(&[(0, "x", 1)]));
        assert_eq!((d.input, d.output), (0, 0));

        let xx = g("x;x");
        assert_eq!(xx.vertex_count, 3);
        assert_eq!(xx.edges, edges(&[(0, "x", 1), (1, "x", 2)]));
        assert_eq!((xx.input, xx.output), (0, 2));

        // ι -x-> m <-x- ι′
        let xr = g("x;ran(x)");
        assert_eq!(xr.vertex_count, 3);
        assert_eq!(xr.edges, edges(&[(0, "x", 1), (2, "x", 1)]));
        assert_eq!((xr.input, xr.output), (0, 1));

        assert!(build_term_graph(&parse_term("x + y").unwrap()).is_err());
    }

    #[test]
    fn compose_examples() {
        let chain = graph_compose(&TermGraph::single_edge("x"), &TermGraph::single_edge("y"));
        assert_eq!(chain.edges, edges(&[(0, "x", 1), (1, "y", 2)]));
        assert_eq!(graph_compose(&g("x"), &g("ran(x)")), g("x;ran(x)"));
        let dy = graph_compose(&g("dom(x)"), &g("y"));
        assert_eq!(dy.edges, edges(&[(0, "x", 1), (0, "y", 2)]));
        assert_eq!((dy.input, dy.output), (0, 2));
    }

    #[test]
    fn hom_examples() {
        let h = hom_exists(&g("x;ran(x)"), &g("x")).unwrap();
        assert_eq!(h.assignment, vec![0, 1, 0]);
        assert!(hom_exists(&g("x;y"), &g("x")).is_none());
        assert_eq!(hom_exists(&g("x"), &g("x")).unwrap().assignment, vec![0, 1]);
        assert!(hom_exists(&g("x"), &g("dom(x)")).is_none());
        assert!(hom_exists(&g("dom(x)"), &g("x")).is_none());
        assert!(hom_exists(&g("x"), &g("x;ran(x)")).is_some());
    }

    #[test]
    fn model_examples() {
        let m = graph_to_model(&g("x"));
        assert_eq!(m.universe(), 2);
        assert_eq!(m.get("x").unwrap().pairs(), vec![(0, 1)]);

        let gd = g("dom(x)");
        let md = graph_to_model(&gd);
        assert!(eval(&parse_term("dom(x)").unwrap(), &md, Mode::Angelic).unwrap().contains(gd.input, gd.input));

        let gs = g("dom(x;y);x");
        let ms = graph_to_model(&gs);
        assert_eq!(ms.universe(), 4);
        let lhs = eval(&parse_term("dom(x;y);x").unwrap(), &ms, Mode::Angelic).unwrap();
        let rhs = eval(&parse_term("x;dom(y)").unwrap(), &ms, Mode::Angelic).unwrap();
        assert!(lhs.contains(gs.input, gs.output));
        assert!(!rhs.contains(gs.input, gs.output));
    }

    #[test]
    fn structural_invariants_and_claim_true() {
        for t in enumerate_join_free(&["x", "y"], 6) {
            let gt = build_term_graph(&t).unwrap();
            assert!(!gt.has_variable_loops(), "{t}");
            assert!(gt.reachability_is_antisymmetric(), "{t}");
            let m = graph_to_model(&gt);
            assert!(eval(&t, &m, Mode::Angelic).unwrap().contains(gt.input, gt.output), "{t}");
            let id = hom_exists(&gt, &gt).expect("identity");
            assert!(id.is_homomorphism(&gt, &gt));
        }
    }

    #[test]
    fn dot_mentions_endpoints() {
        let dot = g("x;ran(x)").to_dot();
        assert!(dot.contains("v0 [label=\"0 (ι)\"]"));
        assert!(dot.contains("v1 [label=\"1 (o)\"]"));
        assert!(dot.contains("v2 -> v1 [label=\"x\"]"));
    }

    mod props {
        use super::*;
        use crate::strategies;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn random_graphs_are_acyclic_and_satisfy_their_term(t in strategies::term(false)) {
                let gt = build_term_graph(&t).unwrap();
                prop_assert!(!gt.has_variable_loops());
                prop_assert!(gt.reachability_is_antisymmetric());
                let m = graph_to_model(&gt);
                prop_assert!(eval(&t, &m, Mode::Angelic).unwrap().contains(gt.input, gt.output));
                prop_assert!(hom_exists(&gt, &gt).is_some());
            }
        }
    }
}
