//! Partial-map representations of finite `(∗, D, R)` algebras: the
//! Wagner–Preston representation, range defects, and rounds of
//! connector-edge repair.
//!
//! A representation assigns to every algebra element a set of edges between
//! points. Points start out as the carrier itself; each repair round adjoins
//! copies of forward closures, tagged with the round and the defect they
//! were made for.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::algebra::FiniteAlgebra;
use crate::axioms::{check_cycle_free, restriction_semigroup_laws};
use crate::error::{Error, Result};
use crate::relation::Relation;

/// Element `element` has `R(element)` defined at `point`, but no edge of
/// `element` ends at `point`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RangeDefect {
    pub element: usize,
    pub point: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    /// 0 for the carrier, `k` for points adjoined by the `k`-th repair round.
    pub round: usize,
    /// The algebra element this point is a copy of.
    pub origin: usize,
    /// The defect whose repair adjoined the point.
    pub defect: Option<RangeDefect>,
}

/// An edge added between an adjoined copy and the older points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Connector {
    pub round: usize,
    pub defect: RangeDefect,
    pub element: usize,
    /// Copy point the edge starts at.
    pub from: usize,
    /// Old point the edge ends at.
    pub to: usize,
    /// Copy point `v` with `from -> v` for `element` inside the copy.
    pub via: usize,
    /// The `c` with `s -> v` for `c`, `to` being a `c`-successor of the defect point.
    pub factor: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialMapRepr {
    pub points: Vec<Provenance>,
    /// `edges[a]` is the edge set of element `a`.
    pub edges: Vec<BTreeSet<(usize, usize)>>,
    pub connectors: Vec<Connector>,
}

impl PartialMapRepr {
    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn has_edge(&self, element: usize, p: usize, q: usize) -> bool {
        self.edges[element].contains(&(p, q))
    }

    pub fn successors(&self, element: usize, p: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges[element].range((p, 0)..=(p, usize::MAX)).map(|&(_, q)| q)
    }

    /// The edge set of `element` as a relation on the points.
    pub fn relation(&self, element: usize) -> Relation {
        Relation::from_pairs(self.points.len(), self.edges[element].iter().copied())
            .expect("edges stay within the point set")
    }

    /// Whether each point has at most one successor under `element`.
    pub fn is_functional(&self, element: usize) -> bool {
        let mut last = None;
        for &(p, _) in &self.edges[element] {
            if last == Some(p) {
                return false;
            }
            last = Some(p);
        }
        true
    }

    /// Whether every cycle of the union of all edge sets is a loop.
    pub fn cycles_are_loops(&self) -> bool {
        let n = self.points.len();
        (0..n).all(|p| {
            let reach = reachable(self, p);
            (0..n).all(|q| q == p || !reach[q] || !reachable(self, q)[p])
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("representation serialization cannot fail")
    }
}

fn reachable(r: &PartialMapRepr, start: usize) -> Vec<bool> {
    let mut adj = vec![Vec::new(); r.points.len()];
    for set in &r.edges {
        for &(p, q) in set {
            adj[p].push(q);
        }
    }
    let mut seen = vec![false; r.points.len()];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        for &q in &adj[p] {
            if !seen[q] {
                seen[q] = true;
                queue.push_back(q);
            }
        }
    }
    seen
}

/// Checks the restriction-semigroup laws, naming the first one that fails.
pub fn check_restriction_semigroup(a: &FiniteAlgebra) -> Result<()> {
    for law in restriction_semigroup_laws() {
        if let Some(v) = a.violations(&law).first() {
            return Err(Error::LawViolation { law: law.label.clone(), detail: format!("fails at {v:?}") });
        }
    }
    Ok(())
}

/// `a ↦ {(x∗D(a), x∗a) | x ∈ S}` over the carrier itself.
pub fn wagner_preston(a: &FiniteAlgebra) -> Result<PartialMapRepr> {
    check_restriction_semigroup(a)?;
    let n = a.size();
    let points = (0..n).map(|x| Provenance { round: 0, origin: x, defect: None }).collect();
    let edges = (0..n)
        .map(|el| (0..n).map(|x| (a.mul(x, a.dom(el)), a.mul(x, el))).collect())
        .collect();
    Ok(PartialMapRepr { points, edges, connectors: Vec::new() })
}

/// Points reachable from `s` along edges of any element, `s` included.
pub fn forward_closure(r: &PartialMapRepr, s: usize) -> Result<BTreeSet<usize>> {
    if s >= r.points.len() {
        return Err(Error::UnknownNode(s));
    }
    let seen = reachable(r, s);
    Ok((0..seen.len()).filter(|&p| seen[p]).collect())
}

/// Range defects, without checking that domain and composition are
/// represented correctly.
pub fn range_defects_unchecked(a: &FiniteAlgebra, r: &PartialMapRepr) -> Vec<RangeDefect> {
    let mut out = Vec::new();
    for s in a.elements() {
        let mut has_incoming = vec![false; r.points.len()];
        for &(_, q) in &r.edges[s] {
            has_incoming[q] = true;
        }
        let rs = a.ran(s);
        for p in 0..r.points.len() {
            if r.has_edge(rs, p, p) && !has_incoming[p] {
                out.push(RangeDefect { element: s, point: p });
            }
        }
    }
    out
}

/// Range defects of a representation in which domain and composition are
/// correctly represented; otherwise a precondition error.
pub fn range_defects(a: &FiniteAlgebra, r: &PartialMapRepr) -> Result<Vec<RangeDefect>> {
    let report = verify_partial_repr(a, r);
    if !report.hypothesis_one.is_empty() {
        return Err(Error::Precondition(format!(
            "domain or composition misrepresented: {}",
            report.hypothesis_one[0].detail
        )));
    }
    Ok(range_defects_unchecked(a, r))
}

// ---------------------------------------------------------------------------
// Repair

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RepairMode {
    /// Refuse input that is not cycle-free or not correctly represented.
    Checked,
    /// Run anyway; the outcome carries a caveat.
    Unsafe,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepairOutcome {
    pub repr: PartialMapRepr,
    /// Defects present before the round, all of which were treated.
    pub treated: Vec<RangeDefect>,
    /// Set when the input did not meet the conditions the construction
    /// relies on.
    pub caveat: Option<String>,
}

/// One round: for every range defect `(s, p)` at once, adjoin a fresh copy of
/// the Wagner–Preston forward closure `F_{D(s)}` and connect it to the
/// existing points. For each edge `u -> v` for `b` inside the copy with
/// `u != v` and `v` in `F_s`, and each `c` with `s -> v` for `c`, every
/// `c`-successor `q` of `p` receives the connector `u' -> q` for `b`.
pub fn repair_round(a: &FiniteAlgebra, r: &PartialMapRepr, mode: RepairMode) -> Result<RepairOutcome> {
    let mut problems = Vec::new();
    let cf = check_cycle_free(a);
    if !cf.is_cycle_free() {
        let v = &cf.violations[0];
        problems.push(format!("algebra is not cycle-free ({} at {:?})", v.law, v.assignment));
    }
    let pre = verify_partial_repr(a, r);
    if !pre.hypothesis_one.is_empty() {
        problems.push(format!("input misrepresents domain or composition ({})", pre.hypothesis_one[0].detail));
    }
    if mode == RepairMode::Checked && !problems.is_empty() {
        return Err(Error::Precondition(problems.join("; ")));
    }
    let caveat = (!problems.is_empty()).then(|| problems.join("; "));

    let wp = wagner_preston(a)?;
    let defects = range_defects_unchecked(a, r);
    let round = r.points.iter().map(|p| p.round).max().unwrap_or(0) + 1;
    let mut out = r.clone();

    for &defect in &defects {
        let s = defect.element;
        let closure = forward_closure(&wp, a.dom(s))?;
        let fs = forward_closure(&wp, s)?;
        let mut copy_of = BTreeMap::new();
        for &x in &closure {
            copy_of.insert(x, out.points.len());
            out.points.push(Provenance { round, origin: x, defect: Some(defect) });
        }
        for el in a.elements() {
            for &(u, v) in &wp.edges[el] {
                if closure.contains(&u) {
                    out.edges[el].insert((copy_of[&u], copy_of[&v]));
                }
            }
        }
        for b in a.elements() {
            for &(u, v) in &wp.edges[b] {
                if u == v || !closure.contains(&u) || !fs.contains(&v) {
                    continue;
                }
                for c in a.elements() {
                    if !wp.has_edge(c, s, v) {
                        continue;
                    }
                    for q in r.successors(c, defect.point) {
                        out.edges[b].insert((copy_of[&u], q));
                        out.connectors.push(Connector {
                            round,
                            defect,
                            element: b,
                            from: copy_of[&u],
                            to: q,
                            via: copy_of[&v],
                            factor: c,
                        });
                    }
                }
            }
        }
    }
    Ok(RepairOutcome { repr: out, treated: defects, caveat })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RoundSummary {
    pub round: usize,
    pub defects_before: usize,
    pub defects_after: usize,
    pub points_after: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepairHistory {
    pub repr: PartialMapRepr,
    pub rounds: Vec<RoundSummary>,
    /// No range defects remain.
    pub converged: bool,
    pub caveat: Option<String>,
}

pub const DEFAULT_REPAIR_ROUNDS: usize = 3;

/// Up to `max_rounds` repair rounds, stopping early once no defect remains.
pub fn repair(a: &FiniteAlgebra, start: PartialMapRepr, max_rounds: usize, mode: RepairMode) -> Result<RepairHistory> {
    let mut repr = start;
    let mut rounds = Vec::new();
    let mut caveat = None;
    for round in 1..=max_rounds {
        let before = range_defects_unchecked(a, &repr).len();
        if before == 0 {
            break;
        }
        let outcome = repair_round(a, &repr, mode)?;
        caveat = caveat.or(outcome.caveat);
        repr = outcome.repr;
        rounds.push(RoundSummary {
            round,
            defects_before: before,
            defects_after: range_defects_unchecked(a, &repr).len(),
            points_after: repr.points.len(),
        });
    }
    let converged = range_defects_unchecked(a, &repr).is_empty();
    Ok(RepairHistory { repr, rounds, converged, caveat })
}

// ---------------------------------------------------------------------------
// Verification

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyFailure {
    /// Elements involved: `[x]` for domain, `[x, y, x∗y]` for composition,
    /// `[s, t]` for faithfulness, `[a, b]` for connector checks.
    pub elements: Vec<usize>,
    pub points: Vec<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    /// Domain and demonic composition are represented correctly.
    pub hypothesis_one: Vec<VerifyFailure>,
    /// Distinct elements have distinct edge sets.
    pub hypothesis_two: Vec<VerifyFailure>,
    /// Conclusions about connector edges.
    pub connectors: Vec<VerifyFailure>,
}

impl VerifyReport {
    pub fn passes(&self) -> bool {
        self.hypothesis_one.is_empty() && self.hypothesis_two.is_empty() && self.connectors.is_empty()
    }
}

fn first_difference(x: &Relation, y: &Relation) -> Option<(usize, usize)> {
    let xs: BTreeSet<_> = x.pairs().into_iter().collect();
    let ys: BTreeSet<_> = y.pairs().into_iter().collect();
    xs.symmetric_difference(&ys).next().copied()
}

pub fn verify_partial_repr(a: &FiniteAlgebra, r: &PartialMapRepr) -> VerifyReport {
    let mut report = VerifyReport::default();
    let rels: Vec<Relation> = a.elements().map(|x| r.relation(x)).collect();

    for x in a.elements() {
        let expected = rels[x].dom();
        if let Some((p, q)) = first_difference(&rels[a.dom(x)], &expected) {
            report.hypothesis_one.push(VerifyFailure {
                elements: vec![x],
                points: vec![p, q],
                detail: format!("edges of D({x}) = {} differ from the domain of {x} at ({p}, {q})", a.dom(x)),
            });
        }
    }
    for x in a.elements() {
        for y in a.elements() {
            let xy = a.mul(x, y);
            let composed = rels[x].demonic(&rels[y]).expect("same point set");
            if let Some((p, q)) = first_difference(&composed, &rels[xy]) {
                report.hypothesis_one.push(VerifyFailure {
                    elements: vec![x, y, xy],
                    points: vec![p, q],
                    detail: format!("demonic composite of {x} and {y} differs from {xy} = {x}∗{y} at ({p}, {q})"),
                });
            }
        }
    }
    for s in a.elements() {
        for t in s + 1..a.size() {
            if rels[s] == rels[t] {
                report.hypothesis_two.push(VerifyFailure {
                    elements: vec![s, t],
                    points: Vec::new(),
                    detail: format!("{s} and {t} have the same edges"),
                });
            }
        }
    }

    let old_points = |round: usize| r.points.iter().take_while(|p| p.round < round).count();
    for conn in &r.connectors {
        let x_len = old_points(conn.round);
        let (u, q, v, el) = (conn.from, conn.to, conn.via, conn.element);
        for b in a.elements() {
            let copy_succ: Vec<usize> = r.successors(b, v).filter(|&w| r.points[w].round == conn.round).collect();
            for w in copy_succ {
                let targets: Vec<usize> = r.successors(b, q).filter(|&t| t < x_len).collect();
                if targets.is_empty() {
                    report.connectors.push(VerifyFailure {
                        elements: vec![el, b],
                        points: vec![u, q, v, w],
                        detail: format!("connector {u} -> {q} for {el}: {q} has no old successor for {b}"),
                    });
                }
                let ab = a.mul(el, b);
                for q2 in targets {
                    if !r.has_edge(ab, u, q2) {
                        report.connectors.push(VerifyFailure {
                            elements: vec![el, b],
                            points: vec![u, q2],
                            detail: format!("missing {u} -> {q2} for {ab} = {el}∗{b}"),
                        });
                    }
                    if a.is_domain_element(b) {
                        if q2 != q || w != v {
                            report.connectors.push(VerifyFailure {
                                elements: vec![el, b],
                                points: vec![q, q2, v, w],
                                detail: format!("domain element {b} moves {q} to {q2} or {v} to {w}"),
                            });
                        }
                    } else if !r.has_edge(b, v, q2) {
                        report.connectors.push(VerifyFailure {
                            elements: vec![el, b],
                            points: vec![v, q2],
                            detail: format!("missing {v} -> {q2} for {b}"),
                        });
                    }
                }
            }
        }
    }
    report
}
