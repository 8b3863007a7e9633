//! Finite stages of the labelled-graph construction behind completeness of
//! the angelic axioms.
//!
//! Edge labels are principal upsets `c↑` of the free algebra, stored as their
//! generator `c`. Every question about the free-algebra order is answered by
//! the decision procedure, so a [`Decider`] is threaded through all steps.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::decision::Decider;
use crate::error::{Error, Result};
use crate::term::{parse_term, Term};

/// The principal upset `generator↑`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct UpsetLabel {
    pub generator: Term,
}

impl UpsetLabel {
    pub fn new(generator: Term) -> UpsetLabel {
        UpsetLabel { generator }
    }

    /// `a ∈ generator↑`, i.e. `generator <= a` is valid.
    pub fn contains(&self, decider: &mut Decider, a: &Term) -> Result<bool> {
        decider.leq(&self.generator, a)
    }
}

/// A finite stage `G_n`. Nodes are `0..node_count`; edges are the pairs with
/// a label.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LabelledGraph {
    node_count: usize,
    labels: BTreeMap<(usize, usize), UpsetLabel>,
}

#[derive(Serialize, Deserialize)]
struct EdgeDump {
    from: usize,
    to: usize,
    label: Term,
}

#[derive(Serialize, Deserialize)]
struct GraphDump {
    nodes: Vec<usize>,
    edges: Vec<EdgeDump>,
}

impl Serialize for LabelledGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphDump {
            nodes: (0..self.node_count).collect(),
            edges: self
                .labels
                .iter()
                .map(|(&(from, to), l)| EdgeDump { from, to, label: l.generator.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LabelledGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let dump = GraphDump::deserialize(d)?;
        let node_count = dump.nodes.len();
        if dump.nodes.iter().enumerate().any(|(i, &n)| i != n) {
            return Err(serde::de::Error::custom("nodes must be 0..n in order"));
        }
        let mut labels = BTreeMap::new();
        for e in dump.edges {
            if e.from >= node_count || e.to >= node_count {
                return Err(serde::de::Error::custom(format!("edge ({}, {}) uses an unknown node", e.from, e.to)));
            }
            labels.insert((e.from, e.to), UpsetLabel::new(e.label));
        }
        Ok(LabelledGraph { node_count, labels })
    }
}

impl LabelledGraph {
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn nodes(&self) -> std::ops::Range<usize> {
        0..self.node_count
    }

    pub fn label(&self, u: usize, v: usize) -> Option<&Term> {
        self.labels.get(&(u, v)).map(|l| &l.generator)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &Term)> {
        self.labels.iter().map(|(&(u, v), l)| (u, v, &l.generator))
    }

    pub fn edge_count(&self) -> usize {
        self.labels.len()
    }

    /// Overwrites a label. Only meant for building graphs by hand.
    pub fn set_label(&mut self, u: usize, v: usize, generator: Term) -> Result<()> {
        for n in [u, v] {
            if n >= self.node_count {
                return Err(Error::UnknownNode(n));
            }
        }
        self.labels.insert((u, v), UpsetLabel::new(generator));
        Ok(())
    }

    pub fn add_node(&mut self) -> usize {
        self.node_count += 1;
        self.node_count - 1
    }

    /// Labelled `(p, u)`, including `p = u`.
    pub fn predecessors(&self, u: usize) -> Vec<(usize, Term)> {
        self.labels.iter().filter(|((_, t), _)| *t == u).map(|(&(p, _), l)| (p, l.generator.clone())).collect()
    }

    /// Labelled `(v, q)`, including `q = v`.
    pub fn successors(&self, v: usize) -> Vec<(usize, Term)> {
        self.labels.range((v, 0)..=(v, usize::MAX)).map(|(&(_, q), l)| (q, l.generator.clone())).collect()
    }

    fn loop_label(&self, u: usize) -> Result<Term> {
        if u >= self.node_count {
            return Err(Error::UnknownNode(u));
        }
        self.label(u, u).cloned().ok_or_else(|| Error::Precondition(format!("node {u} has no loop label")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serialization cannot fail")
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph stage {\n");
        for n in self.nodes() {
            let _ = writeln!(out, "  n{n} [label=\"{n}\"];");
        }
        for (u, v, t) in self.edges() {
            let _ = writeln!(out, "  n{u} -> n{v} [label=\"{t}\"];");
        }
        out.push_str("}\n");
        out
    }
}

/// Parses a pool of elements: a JSON array of term strings, or one term per
/// non-empty line.
pub fn parse_element_pool(text: &str) -> Result<Vec<Term>> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') {
        let terms: Vec<Term> = serde_json::from_str(trimmed)?;
        return Ok(terms);
    }
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).map(parse_term).collect()
}

// ---------------------------------------------------------------------------
// G_0

/// Two fresh nodes per element (one when it is a domain element), with the
/// element on the edge and its domain and range on the loops.
pub fn init_graph(decider: &mut Decider, elements: &[Term]) -> Result<LabelledGraph> {
    if elements.is_empty() {
        return Err(Error::Precondition("element pool is empty".into()));
    }
    let mut g = LabelledGraph::default();
    for a in elements {
        a.require_join_free("saturation element")?;
        let u = g.add_node();
        if decider.is_domain_element(a)? {
            g.labels.insert((u, u), UpsetLabel::new(Term::dom(a.clone())));
        } else {
            let v = g.add_node();
            g.labels.insert((u, v), UpsetLabel::new(a.clone()));
            g.labels.insert((u, u), UpsetLabel::new(Term::dom(a.clone())));
            g.labels.insert((v, v), UpsetLabel::new(Term::ran(a.clone())));
        }
    }
    Ok(g)
}

// ---------------------------------------------------------------------------
// Coherence

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoherenceFailure {
    /// `GenC`, `PriC`, `CompC`, `DomC`, `RanC` or `IdeC`.
    pub condition: String,
    /// The edges involved, as node pairs.
    pub edges: Vec<(usize, usize)>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CoherenceReport {
    pub failures: Vec<CoherenceFailure>,
}

impl CoherenceReport {
    pub fn is_coherent(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn coherence_check(decider: &mut Decider, g: &LabelledGraph) -> Result<CoherenceReport> {
    let mut failures = Vec::new();
    let mut fail = |condition: &str, edges: Vec<(usize, usize)>, detail: String| {
        failures.push(CoherenceFailure { condition: condition.into(), edges, detail });
    };

    // GenC
    for (u, v, _) in g.edges() {
        for n in [u, v] {
            if g.label(n, n).is_none() {
                fail("GenC", vec![(u, v)], format!("node {n} has an edge but no loop"));
            }
        }
        if u != v && g.label(v, u).is_some() {
            fail("GenC", vec![(u, v), (v, u)], "edges in both directions".into());
        }
    }
    let succ: Vec<Vec<(usize, Term)>> = g.nodes().map(|n| g.successors(n)).collect();
    for (u, w, _) in g.edges() {
        for (v, _) in &succ[w] {
            if g.label(u, *v).is_none() {
                fail("GenC", vec![(u, w), (w, *v)], format!("not transitive: ({u}, {v}) unlabelled"));
            }
        }
    }

    // PriC: labels are generators of principal upsets of join-free terms
    for (u, v, t) in g.edges() {
        if !t.is_join_free() {
            fail("PriC", vec![(u, v)], format!("generator {t} is not join-free"));
        }
    }

    // CompC
    let edges: Vec<(usize, usize, Term)> = g.edges().map(|(u, v, t)| (u, v, t.clone())).collect();
    for (u, w, a) in &edges {
        for (v, b) in &succ[*w] {
            if let Some(c) = g.label(*u, *v) {
                if !decider.leq(c, &Term::comp(a.clone(), b.clone()))? {
                    fail("CompC", vec![(*u, *w), (*w, *v), (*u, *v)], format!("{c} is not below {a};{b}"));
                }
            }
        }
    }

    // DomC, RanC, IdeC
    for (u, v, c) in &edges {
        match g.label(*u, *u) {
            Some(l) if decider.eq(l, &Term::dom(c.clone()))? => {}
            Some(l) => fail("DomC", vec![(*u, *v), (*u, *u)], format!("loop {l} differs from dom({c})")),
            None => {}
        }
        match g.label(*v, *v) {
            Some(l) if decider.eq(l, &Term::ran(c.clone()))? => {}
            Some(l) => fail("RanC", vec![(*u, *v), (*v, *v)], format!("loop {l} differs from ran({c})")),
            None => {}
        }
        let is_dom = decider.is_domain_element(c)?;
        if is_dom != (u == v) {
            let detail = if is_dom { format!("{c} is a domain element off the diagonal") } else { format!("loop {c} is not a domain element") };
            fail("IdeC", vec![(*u, *v)], detail);
        }
    }

    Ok(CoherenceReport { failures })
}

// ---------------------------------------------------------------------------
// Successor steps

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "outcome")]
pub enum StepOutcome {
    /// A fresh node was adjoined.
    Applied { node: usize },
    /// The stage is unchanged; `reason` names the failed guard.
    Skipped { reason: String },
}

impl StepOutcome {
    pub fn applied(&self) -> bool {
        matches!(self, StepOutcome::Applied { .. })
    }

    fn skip(reason: &str) -> Result<StepOutcome> {
        Ok(StepOutcome::Skipped { reason: reason.into() })
    }
}

/// Domain step at the loop `(u, u)` labelled `c↑`: adds an edge `(u, w)`
/// witnessing `a`, and extends every edge `(p, u)` labelled `d↑` to
/// `(p, w)` labelled `(d;a)↑`.
pub fn step_dom(decider: &mut Decider, g: &mut LabelledGraph, u: usize, a: &Term) -> Result<StepOutcome> {
    a.require_join_free("step element")?;
    let c = g.loop_label(u)?;
    if !decider.leq(&c, &Term::dom(a.clone()))? {
        return StepOutcome::skip("loop label not below dom(a)");
    }
    let new_edge = Term::comp(Term::dom(c), a.clone());
    if decider.is_domain_element(&new_edge)? {
        return StepOutcome::skip("dom(c);a is a domain element");
    }
    let preds = g.predecessors(u);
    let w = g.add_node();
    g.labels.insert((w, w), UpsetLabel::new(Term::ran(new_edge.clone())));
    g.labels.insert((u, w), UpsetLabel::new(new_edge));
    for (p, d) in preds {
        if p != u {
            g.labels.insert((p, w), UpsetLabel::new(Term::comp(d, a.clone())));
        }
    }
    Ok(StepOutcome::Applied { node: w })
}

/// Mirror image of [`step_dom`]: adds `(w, u)` witnessing `a` and extends
/// every `(u, p)` labelled `d↑` to `(w, p)` labelled `(a;d)↑`.
pub fn step_ran(decider: &mut Decider, g: &mut LabelledGraph, u: usize, a: &Term) -> Result<StepOutcome> {
    a.require_join_free("step element")?;
    let c = g.loop_label(u)?;
    if !decider.leq(&c, &Term::ran(a.clone()))? {
        return StepOutcome::skip("loop label not below ran(a)");
    }
    let new_edge = Term::comp(a.clone(), Term::ran(c));
    if decider.is_range_element(&new_edge)? {
        return StepOutcome::skip("a;ran(c) is a range element");
    }
    let succs = g.successors(u);
    let w = g.add_node();
    g.labels.insert((w, w), UpsetLabel::new(Term::dom(new_edge.clone())));
    g.labels.insert((w, u), UpsetLabel::new(new_edge));
    for (p, d) in succs {
        if p != u {
            g.labels.insert((w, p), UpsetLabel::new(Term::comp(a.clone(), d)));
        }
    }
    Ok(StepOutcome::Applied { node: w })
}

/// Composition step on the edge `(u, v)` labelled `c↑`: adds a midpoint `w`
/// with `(u, w)` witnessing `a` and `(w, v)` witnessing `b`, extended through
/// every predecessor of `u` and every successor of `v`.
pub fn step_comp(decider: &mut Decider, g: &mut LabelledGraph, u: usize, v: usize, a: &Term, b: &Term) -> Result<StepOutcome> {
    a.require_join_free("step element")?;
    b.require_join_free("step element")?;
    for n in [u, v] {
        if n >= g.node_count {
            return Err(Error::UnknownNode(n));
        }
    }
    let c = g.label(u, v).cloned().ok_or_else(|| Error::Precondition(format!("edge ({u}, {v}) is unlabelled")))?;
    if !decider.leq(&c, &Term::comp(a.clone(), b.clone()))? {
        return StepOutcome::skip("label not below a;b");
    }
    if u == v {
        return StepOutcome::skip("loop");
    }
    let dc = Term::dom(c.clone());
    let rc = Term::ran(c.clone());
    // dom(b;ran(c)) and ran(dom(c);a)
    let db = Term::dom(Term::comp(b.clone(), rc.clone()));
    let ra = Term::ran(Term::comp(dc.clone(), a.clone()));
    let left = Term::comp(Term::comp(dc, a.clone()), db.clone());
    let right = Term::comp(Term::comp(ra.clone(), b.clone()), rc);
    if decider.is_domain_element(&left)? {
        return StepOutcome::skip("left witness is a domain element");
    }
    if decider.is_range_element(&right)? {
        return StepOutcome::skip("right witness is a range element");
    }
    let preds = g.predecessors(u);
    let succs = g.successors(v);
    let w = g.add_node();
    g.labels.insert((u, w), UpsetLabel::new(left));
    g.labels.insert((w, v), UpsetLabel::new(right));
    g.labels.insert((w, w), UpsetLabel::new(Term::comp(ra.clone(), db.clone())));
    for (p, d) in preds {
        if p != u {
            g.labels.insert((p, w), UpsetLabel::new(Term::comp(Term::comp(d, a.clone()), db.clone())));
        }
    }
    for (q, e) in succs {
        if q != v {
            g.labels.insert((w, q), UpsetLabel::new(Term::comp(Term::comp(ra.clone(), b.clone()), e)));
        }
    }
    Ok(StepOutcome::Applied { node: w })
}

// ---------------------------------------------------------------------------
// Scheduling

/// One scheduled step; `a` and `b` index the element pool.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "step")]
pub enum Task {
    Dom { u: usize, a: usize },
    Ran { u: usize, a: usize },
    Comp { u: usize, v: usize, a: usize, b: usize },
}

/// Fair enumeration of steps over a finite pool.
///
/// Work proceeds in cycles. A cycle takes a snapshot of the current stage
/// and lists every domain and range step at every loop with every pool
/// element, and every composition step at every labelled pair `u != v` with
/// every ordered pair of pool elements; the list is then shuffled with the
/// seeded generator. Since nodes and labels are never removed, every tuple
/// available at some stage is offered again in every later cycle.
pub struct Scheduler {
    pool_size: usize,
    rng: ChaCha8Rng,
    queue: VecDeque<Task>,
    cycles: usize,
}

impl Scheduler {
    pub fn new(pool_size: usize, seed: u64) -> Scheduler {
        Scheduler { pool_size, rng: ChaCha8Rng::seed_from_u64(seed), queue: VecDeque::new(), cycles: 0 }
    }

    pub fn cycles_started(&self) -> usize {
        self.cycles
    }

    pub fn next_task(&mut self, g: &LabelledGraph) -> Option<Task> {
        if self.queue.is_empty() {
            let mut tasks = Vec::new();
            for (u, v, _) in g.edges() {
                if u == v {
                    for a in 0..self.pool_size {
                        tasks.push(Task::Dom { u, a });
                        tasks.push(Task::Ran { u, a });
                    }
                } else {
                    for a in 0..self.pool_size {
                        for b in 0..self.pool_size {
                            tasks.push(Task::Comp { u, v, a, b });
                        }
                    }
                }
            }
            tasks.shuffle(&mut self.rng);
            self.queue.extend(tasks);
            self.cycles += 1;
        }
        self.queue.pop_front()
    }
}

pub fn apply_task(decider: &mut Decider, g: &mut LabelledGraph, pool: &[Term], task: Task) -> Result<StepOutcome> {
    match task {
        Task::Dom { u, a } => step_dom(decider, g, u, &pool[a]),
        Task::Ran { u, a } => step_ran(decider, g, u, &pool[a]),
        Task::Comp { u, v, a, b } => step_comp(decider, g, u, v, &pool[a], &pool[b]),
    }
}

// ---------------------------------------------------------------------------
// Saturation defects

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum SaturationDefect {
    /// `left;right` lies in the label of `(u, v)` but no node `w` has
    /// `left ∈ ℓ(u, w)` and `right ∈ ℓ(w, v)`.
    Comp { u: usize, v: usize, left: Term, right: Term },
    /// `dom(element) ∈ ℓ(u, u)` but no edge `(u, w)` has `element` in its label.
    Dom { u: usize, element: Term },
    /// `ran(element) ∈ ℓ(u, u)` but no edge `(w, u)` has `element` in its label.
    Ran { u: usize, element: Term },
}

fn comp_factors(t: &Term, out: &mut Vec<Term>) {
    match t {
        Term::Comp(l, r) => {
            comp_factors(l, out);
            comp_factors(r, out);
        }
        other => out.push(other.clone()),
    }
}

/// Every way of writing `t` as `a;b` up to associativity.
pub fn binary_splits(t: &Term) -> Vec<(Term, Term)> {
    let mut factors = Vec::new();
    comp_factors(t, &mut factors);
    (1..factors.len())
        .map(|k| {
            let left = Term::comp_all(factors[..k].iter().cloned()).expect("non-empty");
            let right = Term::comp_all(factors[k..].iter().cloned()).expect("non-empty");
            (left, right)
        })
        .collect()
}

/// Saturation defects whose element is drawn from `pool`.
pub fn saturation_defects(decider: &mut Decider, g: &LabelledGraph, pool: &[Term]) -> Result<Vec<SaturationDefect>> {
    let mut defects = Vec::new();
    let edges: Vec<(usize, usize, Term)> = g.edges().map(|(u, v, t)| (u, v, t.clone())).collect();
    for (u, v, c) in &edges {
        for t in pool {
            for (left, right) in binary_splits(t) {
                if !decider.leq(c, &Term::comp(left.clone(), right.clone()))? {
                    continue;
                }
                let mut witnessed = false;
                for w in g.nodes() {
                    if let (Some(l1), Some(l2)) = (g.label(*u, w), g.label(w, *v)) {
                        if decider.leq(l1, &left)? && decider.leq(l2, &right)? {
                            witnessed = true;
                            break;
                        }
                    }
                }
                if !witnessed {
                    defects.push(SaturationDefect::Comp { u: *u, v: *v, left, right });
                }
            }
        }
        if u != v {
            continue;
        }
        for a in pool {
            if decider.leq(c, &Term::dom(a.clone()))? {
                let mut witnessed = false;
                for (_, l) in g.successors(*u) {
                    if decider.leq(&l, a)? {
                        witnessed = true;
                        break;
                    }
                }
                if !witnessed {
                    defects.push(SaturationDefect::Dom { u: *u, element: a.clone() });
                }
            }
            if decider.leq(c, &Term::ran(a.clone()))? {
                let mut witnessed = false;
                for (_, l) in g.predecessors(*u) {
                    if decider.leq(&l, a)? {
                        witnessed = true;
                        break;
                    }
                }
                if !witnessed {
                    defects.push(SaturationDefect::Ran { u: *u, element: a.clone() });
                }
            }
        }
    }
    Ok(defects)
}

// ---------------------------------------------------------------------------
// Runs

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub round: usize,
    pub task: Task,
    pub outcome: StepOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SaturationRun {
    pub pool: Vec<Term>,
    pub seed: u64,
    pub rounds: usize,
    pub initial_defects: Vec<SaturationDefect>,
    pub graph: LabelledGraph,
    pub steps: Vec<StepRecord>,
    pub defects: Vec<SaturationDefect>,
}

impl SaturationRun {
    /// Defects of `G_0` still present at the end. New defects created by
    /// later steps are not counted here; they are in `defects`.
    pub fn uncured_initial_defects(&self) -> Vec<&SaturationDefect> {
        self.initial_defects.iter().filter(|d| self.defects.contains(d)).collect()
    }
}

/// Builds `G_0` from `elements` and applies `rounds` scheduled steps, each
/// counting as one round whether or not it changes the stage.
pub fn run_saturation(elements: &[Term], rounds: usize, seed: u64) -> Result<SaturationRun> {
    run_saturation_with(&mut Decider::new(), elements, rounds, seed, |_, _, _| Ok(()))
}

/// As [`run_saturation`], calling `after_step(decider, stage, record)` after
/// every step.
pub fn run_saturation_with<F>(
    decider: &mut Decider,
    elements: &[Term],
    rounds: usize,
    seed: u64,
    mut after_step: F,
) -> Result<SaturationRun>
where
    F: FnMut(&mut Decider, &LabelledGraph, &StepRecord) -> Result<()>,
{
    let mut g = init_graph(decider, elements)?;
    let initial_defects = saturation_defects(decider, &g, elements)?;
    let mut scheduler = Scheduler::new(elements.len(), seed);
    let mut steps = Vec::with_capacity(rounds);
    for round in 0..rounds {
        let Some(task) = scheduler.next_task(&g) else { break };
        let outcome = apply_task(decider, &mut g, elements, task)?;
        let record = StepRecord { round, task, outcome };
        after_step(decider, &g, &record)?;
        steps.push(record);
    }
    let defects = saturation_defects(decider, &g, elements)?;
    Ok(SaturationRun { pool: elements.to_vec(), seed, rounds, initial_defects, graph: g, steps, defects })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    fn loop_graph(label: &str) -> LabelledGraph {
        let mut g = LabelledGraph::default();
        let u = g.add_node();
        g.set_label(u, u, p(label)).unwrap();
        g
    }

    #[test]
    fn initial_graphs() {
        let mut d = Decider::new();
        let g = init_graph(&mut d, &[p("x")]).unwrap();
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.label(0, 1), Some(&p("x")));
        assert_eq!(g.label(0, 0), Some(&p("dom(x)")));
        assert_eq!(g.label(1, 1), Some(&p("ran(x)")));
        assert_eq!(g.edge_count(), 3);

        let g = init_graph(&mut d, &[p("dom(x)")]).unwrap();
        assert_eq!(g.node_count(), 1);
        assert_eq!(g.edge_count(), 1);

        let g = init_graph(&mut d, &[p("x"), p("y")]).unwrap();
        assert_eq!(g.node_count(), 4);
        assert!(g.edges().all(|(u, v, _)| (u < 2) == (v < 2)));
        assert!(coherence_check(&mut d, &g).unwrap().is_coherent());

        assert!(init_graph(&mut d, &[]).is_err());
        assert!(init_graph(&mut d, &[p("x+y")]).is_err());
    }

    #[test]
    fn planted_dom_defect() {
        let mut d = Decider::new();
        let mut g = init_graph(&mut d, &[p("x")]).unwrap();
        g.set_label(0, 0, p("ran(x)")).unwrap();
        let report = coherence_check(&mut d, &g).unwrap();
        assert!(report.failures.iter().any(|f| f.condition == "DomC" && f.edges[0] == (0, 1)));
    }

    #[test]
    fn dom_step() {
        let mut d = Decider::new();
        let mut g = loop_graph("dom(x;y)");
        // a predecessor p -> u labelled z;dom(x;y)
        let pnode = g.add_node();
        g.set_label(pnode, pnode, p("dom(z;dom(x;y))")).unwrap();
        g.set_label(pnode, 0, p("z;dom(x;y)")).unwrap();
        let out = step_dom(&mut d, &mut g, 0, &p("x")).unwrap();
        assert_eq!(out, StepOutcome::Applied { node: 2 });
        assert_eq!(g.label(0, 2), Some(&p("dom(dom(x;y));x")));
        assert_eq!(g.label(2, 2), Some(&p("ran(dom(dom(x;y));x)")));
        assert_eq!(g.label(pnode, 2), Some(&p("z;dom(x;y);x")));

        let mut g = init_graph(&mut d, &[p("x;y")]).unwrap();
        assert!(step_dom(&mut d, &mut g, 0, &p("x")).unwrap().applied());
        assert!(coherence_check(&mut d, &g).unwrap().is_coherent());

        let mut g = loop_graph("dom(x)");
        assert!(!step_dom(&mut d, &mut g, 0, &p("dom(x)")).unwrap().applied());
        let mut g = loop_graph("ran(y)");
        assert!(!step_dom(&mut d, &mut g, 0, &p("x")).unwrap().applied());
        assert!(step_dom(&mut d, &mut g, 3, &p("x")).is_err());
    }

    #[test]
    fn ran_step() {
        let mut d = Decider::new();
        let mut g = loop_graph("ran(x;y)");
        let out = step_ran(&mut d, &mut g, 0, &p("y")).unwrap();
        assert!(out.applied());
        assert_eq!(g.label(1, 0), Some(&p("y;ran(ran(x;y))")));
        assert_eq!(g.label(1, 1), Some(&p("dom(y;ran(ran(x;y)))")));
        assert!(coherence_check(&mut d, &g).unwrap().is_coherent());
        let mut g = loop_graph("ran(x)");
        assert!(!step_ran(&mut d, &mut g, 0, &p("ran(x)")).unwrap().applied());
        let mut g = loop_graph("dom(y)");
        assert!(!step_ran(&mut d, &mut g, 0, &p("x")).unwrap().applied());
    }

    #[test]
    fn comp_step() {
        let mut d = Decider::new();
        let mut g = init_graph(&mut d, &[p("x;y")]).unwrap();
        let out = step_comp(&mut d, &mut g, 0, 1, &p("x"), &p("y")).unwrap();
        assert_eq!(out, StepOutcome::Applied { node: 2 });
        assert_eq!(g.label(0, 2), Some(&p("dom(x;y);x;dom(y;ran(x;y))")));
        assert_eq!(g.label(2, 1), Some(&p("ran(dom(x;y);x);y;ran(x;y)")));
        assert_eq!(g.label(2, 2), Some(&p("ran(dom(x;y);x);dom(y;ran(x;y))")));
        assert!(coherence_check(&mut d, &g).unwrap().is_coherent());

        assert!(!step_comp(&mut d, &mut g, 0, 0, &p("dom(x;y)"), &p("dom(x;y)")).unwrap().applied());
        assert!(!step_comp(&mut d, &mut g, 0, 1, &p("y"), &p("x")).unwrap().applied());
        assert!(step_comp(&mut d, &mut g, 1, 0, &p("x"), &p("y")).is_err());
    }

    #[test]
    fn defects_of_initial_graphs() {
        let mut d = Decider::new();
        let pool = [p("x")];
        let g = init_graph(&mut d, &pool).unwrap();
        assert!(saturation_defects(&mut d, &g, &pool).unwrap().is_empty());

        let pool = [p("x;y")];
        let g = init_graph(&mut d, &pool).unwrap();
        let defects = saturation_defects(&mut d, &g, &pool).unwrap();
        assert_eq!(defects, vec![SaturationDefect::Comp { u: 0, v: 1, left: p("x"), right: p("y") }]);
    }

    #[test]
    fn splits() {
        assert_eq!(binary_splits(&p("x")), vec![]);
        assert_eq!(binary_splits(&p("x;(y;z)")), vec![(p("x"), p("y;z")), (p("x;y"), p("z"))]);
    }

    #[test]
    fn scheduled_run_cures_comp_defect() {
        let pool = [p("x;y"), p("x"), p("y")];
        let run = run_saturation(&pool, 80, 1).unwrap();
        assert!(!run.initial_defects.is_empty());
        assert!(run.uncured_initial_defects().is_empty(), "{:?}", run.defects);
        assert_eq!(run.steps.len(), 80);
    }

    #[test]
    fn json_dump_round_trip() {
        let mut d = Decider::new();
        let g = init_graph(&mut d, &[p("x;y")]).unwrap();
        let text = g.to_json();
        assert_eq!(
            text,
            r#"{"nodes":[0,1],"edges":[{"from":0,"to":0,"label":"dom(x;y)"},{"from":0,"to":1,"label":"x;y"},{"from":1,"to":1,"label":"ran(x;y)"}]}"#
        );
        let back: LabelledGraph = serde_json::from_str(&text).unwrap();
        assert_eq!(back, g);
        assert!(g.to_dot().contains("n0 -> n1 [label=\"x;y\"]"));
    }

    #[test]
    fn pool_files() {
        assert_eq!(parse_element_pool("[\"x\", \"x;y\"]").unwrap(), vec![p("x"), p("x;y")]);
        assert_eq!(parse_element_pool("x\n\n# comment\ndom(x;y)\n").unwrap(), vec![p("x"), p("dom(x;y)")]);
        assert!(parse_element_pool("x;\n").is_err());
    }

    mod props {
        use super::*;
        use crate::strategies;
        use proptest::prelude::*;

        fn generator_antisymmetric(d: &mut Decider, g: &LabelledGraph) -> bool {
            g.edges().all(|(u, v, a)| u == v || g.label(v, u).is_none_or(|b| !(d.leq(a, b).unwrap() && d.leq(b, a).unwrap())))
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]

            #[test]
            fn stages_grow_monotonically_and_stay_coherent(
                pool in proptest::collection::vec(strategies::term(false), 1..=3),
                seed in any::<u64>(),
            ) {
                let mut decider = Decider::new();
                let g0 = init_graph(&mut decider, &pool).unwrap();
                prop_assert!(coherence_check(&mut decider, &g0).unwrap().is_coherent());
                let mut prev = g0;
                let mut problems = Vec::new();
                run_saturation_with(&mut decider, &pool, 50, seed, |d, g, record| {
                    let grown = g.node_count() - prev.node_count();
                    if grown > 1 {
                        problems.push(format!("round {}: {grown} nodes added", record.round));
                    }
                    if prev.edges().any(|(u, v, a)| g.label(u, v) != Some(a)) {
                        problems.push(format!("round {}: existing label changed", record.round));
                    }
                    if !coherence_check(d, g)?.is_coherent() {
                        problems.push(format!("round {}: incoherent", record.round));
                    }
                    if !generator_antisymmetric(d, g) {
                        problems.push(format!("round {}: opposite edges with equivalent labels", record.round));
                    }
                    prev = g.clone();
                    Ok(())
                })
                .unwrap();
                prop_assert!(problems.is_empty(), "{:?}", problems);
            }
        }
    }
}
