//! Validity of `s <= t` and `s = t` over algebras of relations with domain,
//! range, (angelic) composition and union.
//!
//! Both sides are brought to join normal form `s_1 + ... + s_n` and
//! `t_1 + ... + t_m`. The inequality is valid iff every `s_i` admits some
//! `j` with a homomorphism `G_{t_j} -> G_{s_i}`. When disjunct `i` has none,
//! the relational model carried by `G_{s_i}` separates the two sides at the
//! pair (input, output) of `G_{s_i}`.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::relation::{eval, Mode, RelationalModel};
use crate::term::{join_normal_form_capped, Term, DEFAULT_JNF_NODE_CAP};
use crate::term_graph::{build_term_graph, graph_to_model, hom_exists, TermGraph, VertexMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `lhs <= rhs`
    Leq,
    /// `rhs <= lhs`
    Geq,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Claim {
    Leq,
    Eq,
}

/// Disjunct `disjunct` of the smaller side is covered by disjunct `target`
/// of the larger side through `map: G_target -> G_disjunct`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub direction: Direction,
    pub disjunct: usize,
    pub target: usize,
    pub map: VertexMap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub direction: Direction,
    pub model: RelationalModel,
    pub witness: (usize, usize),
    pub disjunct: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub claim: Claim,
    pub valid: bool,
    pub witnesses: Vec<Witness>,
    pub counterexample: Option<Counterexample>,
}

/// Decision procedure with term-graph and homomorphism memo tables.
///
/// A fresh `Decider` is what [`decide_leq`] and [`decide_eq`] use; long
/// runs that ask many related questions can keep one around.
#[derive(Default)]
pub struct Decider {
    node_cap: Option<usize>,
    graphs: HashMap<Term, Arc<TermGraph>>,
    homs: HashMap<(Term, Term), Option<VertexMap>>,
    leq_cache: HashMap<(Term, Term), bool>,
}

impl Decider {
    pub fn new() -> Decider {
        Decider::default()
    }

    pub fn with_node_cap(cap: usize) -> Decider {
        Decider { node_cap: Some(cap), ..Decider::default() }
    }

    fn jnf(&self, t: &Term) -> Result<Vec<Term>> {
        join_normal_form_capped(t, self.node_cap.unwrap_or(DEFAULT_JNF_NODE_CAP))
    }

    pub fn graph(&mut self, t: &Term) -> Result<Arc<TermGraph>> {
        if let Some(g) = self.graphs.get(t) {
            return Ok(g.clone());
        }
        let g = Arc::new(build_term_graph(t)?);
        self.graphs.insert(t.clone(), g.clone());
        Ok(g)
    }

    /// Homomorphism `G_larger -> G_smaller` for join-free terms, i.e. a proof
    /// of `smaller <= larger`.
    fn hom(&mut self, smaller: &Term, larger: &Term) -> Result<Option<VertexMap>> {
        let key = (smaller.clone(), larger.clone());
        if let Some(h) = self.homs.get(&key) {
            return Ok(h.clone());
        }
        // every variable of the larger term must occur in the smaller one
        let h = if larger.variables().is_subset(&smaller.variables()) {
            let gs = self.graph(smaller)?;
            let gt = self.graph(larger)?;
            hom_exists(&gt, &gs)
        } else {
            None
        };
        self.homs.insert(key, h.clone());
        Ok(h)
    }

    fn one_direction(&mut self, small: &Term, large: &Term, dir: Direction) -> Result<(Vec<Witness>, Option<Counterexample>)> {
        let lefts = self.jnf(small)?;
        let rights = self.jnf(large)?;
        let mut witnesses = Vec::with_capacity(lefts.len());
        for (i, si) in lefts.iter().enumerate() {
            let mut found = None;
            for (j, tj) in rights.iter().enumerate() {
                if let Some(map) = self.hom(si, tj)? {
                    found = Some(Witness { direction: dir, disjunct: i, target: j, map });
                    break;
                }
            }
            match found {
                Some(w) => witnesses.push(w),
                None => {
                    let g = self.graph(si)?;
                    let mut model = graph_to_model(&g);
                    model.bind_missing_empty(small.variables().iter().chain(large.variables().iter()));
                    let cex = Counterexample { direction: dir, model, witness: (g.input, g.output), disjunct: i };
                    return Ok((witnesses, Some(cex)));
                }
            }
        }
        Ok((witnesses, None))
    }

    pub fn decide_leq(&mut self, s: &Term, t: &Term) -> Result<Verdict> {
        let (witnesses, cex) = self.one_direction(s, t, Direction::Leq)?;
        Ok(finish(Claim::Leq, witnesses, cex))
    }

    pub fn decide_eq(&mut self, s: &Term, t: &Term) -> Result<Verdict> {
        let (mut witnesses, cex) = self.one_direction(s, t, Direction::Leq)?;
        if cex.is_some() {
            return Ok(finish(Claim::Eq, witnesses, cex));
        }
        let (back, cex) = self.one_direction(t, s, Direction::Geq)?;
        witnesses.extend(back);
        Ok(finish(Claim::Eq, witnesses, cex))
    }

    /// Whether `s <= t` is valid, without building a verdict. Cached.
    pub fn leq(&mut self, s: &Term, t: &Term) -> Result<bool> {
        let key = (s.clone(), t.clone());
        if let Some(&b) = self.leq_cache.get(&key) {
            return Ok(b);
        }
        let lefts = self.jnf(s)?;
        let rights = self.jnf(t)?;
        let mut valid = true;
        for si in &lefts {
            let mut covered = false;
            for tj in &rights {
                if self.hom(si, tj)?.is_some() {
                    covered = true;
                    break;
                }
            }
            if !covered {
                valid = false;
                break;
            }
        }
        self.leq_cache.insert(key, valid);
        Ok(valid)
    }

    pub fn eq(&mut self, s: &Term, t: &Term) -> Result<bool> {
        Ok(self.leq(s, t)? && self.leq(t, s)?)
    }

    /// Whether `a` is a domain element of the free algebra, i.e. `a = dom(a)` is valid.
    pub fn is_domain_element(&mut self, a: &Term) -> Result<bool> {
        self.eq(a, &Term::dom(a.clone()))
    }

    /// Whether `a = ran(a)` is valid. Range and domain elements coincide.
    pub fn is_range_element(&mut self, a: &Term) -> Result<bool> {
        self.eq(a, &Term::ran(a.clone()))
    }
}

fn finish(claim: Claim, witnesses: Vec<Witness>, counterexample: Option<Counterexample>) -> Verdict {
    match counterexample {
        Some(c) => Verdict { claim, valid: false, witnesses: Vec::new(), counterexample: Some(c) },
        None => Verdict { claim, valid: true, witnesses, counterexample: None },
    }
}

pub fn decide_leq(s: &Term, t: &Term) -> Result<Verdict> {
    Decider::new().decide_leq(s, t)
}

pub fn decide_eq(s: &Term, t: &Term) -> Result<Verdict> {
    Decider::new().decide_eq(s, t)
}

/// Re-checks a verdict for `(s, t)` from scratch: homomorphism witnesses
/// edge by edge against freshly built term graphs, counterexamples by
/// evaluating both sides in the emitted model. Any discrepancy gives `false`.
pub fn certify(v: &Verdict, s: &Term, t: &Term) -> bool {
    certify_inner(v, s, t).unwrap_or(false)
}

fn certify_inner(v: &Verdict, s: &Term, t: &Term) -> Result<bool> {
    if v.valid != v.counterexample.is_none() {
        return Ok(false);
    }
    if let Some(c) = &v.counterexample {
        if v.claim == Claim::Leq && c.direction != Direction::Leq {
            return Ok(false);
        }
        let (small, large) = match c.direction {
            Direction::Leq => (s, t),
            Direction::Geq => (t, s),
        };
        let (u, w) = c.witness;
        let in_small = eval(small, &c.model, Mode::Angelic)?.contains(u, w);
        let in_large = eval(large, &c.model, Mode::Angelic)?.contains(u, w);
        return Ok(in_small && !in_large);
    }
    let mut directions = vec![(Direction::Leq, s, t)];
    if v.claim == Claim::Eq {
        directions.push((Direction::Geq, t, s));
    }
    for (dir, small, large) in directions {
        let lefts = join_normal_form_capped(small, DEFAULT_JNF_NODE_CAP)?;
        let rights = join_normal_form_capped(large, DEFAULT_JNF_NODE_CAP)?;
        for (i, si) in lefts.iter().enumerate() {
            let Some(w) = v.witnesses.iter().find(|w| w.direction == dir && w.disjunct == i) else {
                return Ok(false);
            };
            let Some(tj) = rights.get(w.target) else {
                return Ok(false);
            };
            let from = build_term_graph(tj)?;
            let to = build_term_graph(si)?;
            if !w.map.is_homomorphism(&from, &to) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
