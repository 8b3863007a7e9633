//! Finite `(∗, D, R)` algebras given by operation tables, law checking on
//! them, and exhaustive enumeration of the algebras on `{0, .., n-1}` that
//! satisfy a list of equations and quasi-equations.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::relation::{Mode, Relation};
use crate::term::Term;

/// Largest carrier size [`enumerate_algebras`] accepts.
pub const MAX_ENUMERATION_SIZE: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "AlgebraFile", into = "AlgebraFile")]
pub struct FiniteAlgebra {
    size: usize,
    star: Vec<Vec<usize>>,
    d: Vec<usize>,
    r: Vec<usize>,
}

/// On-disk format: `{"size": n, "star": [[..]..], "D": [..], "R": [..]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub size: usize,
    pub star: Vec<Vec<usize>>,
    #[serde(rename = "D")]
    pub d: Vec<usize>,
    #[serde(rename = "R")]
    pub r: Vec<usize>,
}

impl TryFrom<AlgebraFile> for FiniteAlgebra {
    type Error = Error;

    fn try_from(f: AlgebraFile) -> Result<FiniteAlgebra> {
        FiniteAlgebra::new(f.star, f.d, f.r)
    }
}

impl From<FiniteAlgebra> for AlgebraFile {
    fn from(a: FiniteAlgebra) -> AlgebraFile {
        AlgebraFile { size: a.size, star: a.star, d: a.d, r: a.r }
    }
}

impl FiniteAlgebra {
    /// Validates that the tables are total and square over one carrier.
    pub fn new(star: Vec<Vec<usize>>, d: Vec<usize>, r: Vec<usize>) -> Result<FiniteAlgebra> {
        let size = star.len();
        if size == 0 {
            return Err(Error::InvalidAlgebra("empty carrier".into()));
        }
        if star.iter().any(|row| row.len() != size) || d.len() != size || r.len() != size {
            return Err(Error::InvalidAlgebra(format!("tables are not all of size {size}")));
        }
        if star.iter().flatten().chain(&d).chain(&r).any(|&v| v >= size) {
            return Err(Error::InvalidAlgebra(format!("table entry outside carrier 0..{size}")));
        }
        Ok(FiniteAlgebra { size, star, d, r })
    }

    pub fn from_json(text: &str) -> Result<FiniteAlgebra> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("algebra serialization cannot fail")
    }

    /// The one-element algebra.
    pub fn trivial() -> FiniteAlgebra {
        FiniteAlgebra { size: 1, star: vec![vec![0]], d: vec![0], r: vec![0] }
    }

    /// A meet-semilattice viewed as an algebra with `D = R = identity`.
    pub fn semilattice(meet: Vec<Vec<usize>>) -> Result<FiniteAlgebra> {
        let n = meet.len();
        FiniteAlgebra::new(meet, (0..n).collect(), (0..n).collect())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.star[a][b]
    }

    pub fn dom(&self, a: usize) -> usize {
        self.d[a]
    }

    pub fn ran(&self, a: usize) -> usize {
        self.r[a]
    }

    pub fn star_table(&self) -> &[Vec<usize>] {
        &self.star
    }

    pub fn is_domain_element(&self, a: usize) -> bool {
        self.d[a] == a
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    /// Evaluates a join-free term under an assignment of its variables.
    pub fn eval(&self, t: &Term, assignment: &BTreeMap<String, usize>) -> Result<usize> {
        Ok(match t {
            Term::Var(x) => *assignment.get(x).ok_or_else(|| Error::UnboundVariable(x.clone()))?,
            Term::Dom(s) => self.d[self.eval(s, assignment)?],
            Term::Ran(s) => self.r[self.eval(s, assignment)?],
            Term::Comp(l, r) => self.star[self.eval(l, assignment)?][self.eval(r, assignment)?],
            Term::Join(..) => return Err(Error::JoinNotAllowed("finite (∗, D, R) algebra".into())),
        })
    }

    /// All variable assignments under which `law` fails.
    pub fn violations(&self, law: &Law) -> Vec<Vec<usize>> {
        let compiled = CompiledLaw::new(law);
        let mut out = Vec::new();
        let mut vals = vec![0usize; compiled.arity];
        let full = FullTables(self);
        loop {
            if compiled.check(&full, &vals) == Some(false) {
                out.push(vals.clone());
            }
            if !advance(&mut vals, self.size) {
                break;
            }
        }
        out
    }

    pub fn satisfies(&self, law: &Law) -> bool {
        self.violations(law).is_empty()
    }

    /// The algebra of relations generated by `generators` under `dom`, `ran`
    /// and the composition of `mode`. Elements are numbered in discovery
    /// order, generators first; the relations are returned alongside.
    pub fn generated_by(generators: &[Relation], mode: Mode) -> Result<(FiniteAlgebra, Vec<Relation>)> {
        let mut elems: Vec<Relation> = Vec::new();
        let mut index: HashMap<Relation, usize> = HashMap::new();
        let mut add = |r: Relation, elems: &mut Vec<Relation>| -> usize {
            *index.entry(r.clone()).or_insert_with(|| {
                elems.push(r);
                elems.len() - 1
            })
        };
        for g in generators {
            add(g.clone(), &mut elems);
        }
        if elems.is_empty() {
            return Err(Error::InvalidAlgebra("no generators".into()));
        }
        let mut done = 0;
        while done < elems.len() {
            let count = elems.len();
            for i in 0..count {
                let candidates = [elems[i].dom(), elems[i].ran()];
                for c in candidates {
                    add(c, &mut elems);
                }
                for j in 0..count {
                    if i < done && j < done {
                        continue;
                    }
                    let prod = elems[i].compose(&elems[j], mode)?;
                    add(prod, &mut elems);
                }
            }
            done = count;
        }
        let lookup: HashMap<&Relation, usize> = elems.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let n = elems.len();
        let mut star = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                star[i][j] = lookup[&elems[i].compose(&elems[j], mode)?];
            }
        }
        let d = elems.iter().map(|r| lookup[&r.dom()]).collect();
        let r = elems.iter().map(|r| lookup[&r.ran()]).collect();
        Ok((FiniteAlgebra::new(star, d, r)?, elems))
    }
}

fn advance(vals: &mut [usize], n: usize) -> bool {
    for v in vals.iter_mut() {
        *v += 1;
        if *v < n {
            return true;
        }
        *v = 0;
    }
    false
}

// ---------------------------------------------------------------------------
// Laws

/// An equation `lhs = rhs`, or a quasi-equation: if every premise holds then
/// every conclusion holds. Variables are universally quantified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Law {
    pub label: String,
    pub premises: Vec<(Term, Term)>,
    pub conclusions: Vec<(Term, Term)>,
}

impl Law {
    pub fn equation(label: impl Into<String>, lhs: Term, rhs: Term) -> Law {
        Law { label: label.into(), premises: Vec::new(), conclusions: vec![(lhs, rhs)] }
    }

    pub fn quasi(label: impl Into<String>, premises: Vec<(Term, Term)>, conclusions: Vec<(Term, Term)>) -> Law {
        Law { label: label.into(), premises, conclusions }
    }

    pub fn is_equation(&self) -> bool {
        self.premises.is_empty() && self.conclusions.len() == 1
    }

    fn terms(&self) -> impl Iterator<Item = &Term> {
        self.premises.iter().chain(&self.conclusions).flat_map(|(l, r)| [l, r])
    }

    fn mentions_ran(&self) -> bool {
        fn has(t: &Term) -> bool {
            match t {
                Term::Var(_) => false,
                Term::Ran(_) => true,
                Term::Dom(s) => has(s),
                Term::Comp(l, r) | Term::Join(l, r) => has(l) || has(r),
            }
        }
        self.terms().any(has)
    }

    fn mentions_dom(&self) -> bool {
        fn has(t: &Term) -> bool {
            match t {
                Term::Var(_) => false,
                Term::Dom(_) => true,
                Term::Ran(s) => has(s),
                Term::Comp(l, r) | Term::Join(l, r) => has(l) || has(r),
            }
        }
        self.terms().any(has)
    }
}

#[derive(Clone, Debug)]
enum Expr {
    Var(usize),
    D(Box<Expr>),
    R(Box<Expr>),
    Star(Box<Expr>, Box<Expr>),
}

/// Read access to possibly incomplete tables.
trait Tables {
    fn star(&self, a: usize, b: usize) -> Option<usize>;
    fn d(&self, a: usize) -> Option<usize>;
    fn r(&self, a: usize) -> Option<usize>;
}

struct FullTables<'a>(&'a FiniteAlgebra);

impl Tables for FullTables<'_> {
    fn star(&self, a: usize, b: usize) -> Option<usize> {
        Some(self.0.star[a][b])
    }
    fn d(&self, a: usize) -> Option<usize> {
        Some(self.0.d[a])
    }
    fn r(&self, a: usize) -> Option<usize> {
        Some(self.0.r[a])
    }
}

impl Expr {
    fn compile(t: &Term, vars: &mut Vec<String>) -> Expr {
        match t {
            Term::Var(x) => {
                let idx = vars.iter().position(|v| v == x).unwrap_or_else(|| {
                    vars.push(x.clone());
                    vars.len() - 1
                });
                Expr::Var(idx)
            }
            Term::Dom(s) => Expr::D(Box::new(Expr::compile(s, vars))),
            Term::Ran(s) => Expr::R(Box::new(Expr::compile(s, vars))),
            Term::Comp(l, r) => Expr::Star(Box::new(Expr::compile(l, vars)), Box::new(Expr::compile(r, vars))),
            Term::Join(..) => panic!("laws over finite (∗, D, R) algebras are join-free"),
        }
    }

    fn eval<T: Tables>(&self, t: &T, vals: &[usize]) -> Option<usize> {
        match self {
            Expr::Var(i) => Some(vals[*i]),
            Expr::D(e) => t.d(e.eval(t, vals)?),
            Expr::R(e) => t.r(e.eval(t, vals)?),
            Expr::Star(a, b) => {
                let a = a.eval(t, vals)?;
                t.star(a, b.eval(t, vals)?)
            }
        }
    }
}

struct CompiledLaw {
    arity: usize,
    premises: Vec<(Expr, Expr)>,
    conclusions: Vec<(Expr, Expr)>,
}

impl CompiledLaw {
    fn new(law: &Law) -> CompiledLaw {
        let mut vars = Vec::new();
        let mut compile = |pairs: &[(Term, Term)]| -> Vec<(Expr, Expr)> {
            pairs.iter().map(|(l, r)| (Expr::compile(l, &mut vars), Expr::compile(r, &mut vars))).collect()
        };
        let premises = compile(&law.premises);
        let conclusions = compile(&law.conclusions);
        CompiledLaw { arity: vars.len(), premises, conclusions }
    }

    /// `Some(false)` if this instance is violated, `None` if undetermined.
    fn check<T: Tables>(&self, t: &T, vals: &[usize]) -> Option<bool> {
        for (l, r) in &self.premises {
            match (l.eval(t, vals), r.eval(t, vals)) {
                (Some(a), Some(b)) if a != b => return Some(true),
                (Some(_), Some(_)) => {}
                _ => {
                    // an undetermined premise can still make the instance vacuous
                    return None;
                }
            }
        }
        let mut all_known = true;
        for (l, r) in &self.conclusions {
            match (l.eval(t, vals), r.eval(t, vals)) {
                (Some(a), Some(b)) if a != b => return Some(false),
                (Some(_), Some(_)) => {}
                _ => all_known = false,
            }
        }
        if all_known {
            Some(true)
        } else {
            None
        }
    }
}

// ---------------------------------------------------------------------------
// Enumeration

/// How an enumeration ended.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnumerationOutcome {
    /// False when the node budget ran out before the search space was exhausted.
    pub complete: bool,
    pub algebras_found: usize,
    pub nodes_visited: u64,
}

#[derive(Clone, Debug)]
pub struct EnumerationConfig {
    pub node_budget: u64,
    /// Keep only one algebra per isomorphism class (naive canonical form).
    pub up_to_isomorphism: bool,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig { node_budget: 50_000_000, up_to_isomorphism: false }
    }
}

struct Partial {
    n: usize,
    star: Vec<Option<usize>>,
    d: Vec<Option<usize>>,
    r: Vec<Option<usize>>,
}

impl Tables for Partial {
    fn star(&self, a: usize, b: usize) -> Option<usize> {
        self.star[a * self.n + b]
    }
    fn d(&self, a: usize) -> Option<usize> {
        self.d[a]
    }
    fn r(&self, a: usize) -> Option<usize> {
        self.r[a]
    }
}

#[derive(Clone, Copy)]
enum Cell {
    D(usize),
    R(usize),
    Star(usize, usize),
}

/// Collects every algebra on `{0, .., n-1}` satisfying `laws`.
/// See [`enumerate_algebras_with`] for the search itself.
pub fn enumerate_algebras(n: usize, laws: &[Law]) -> Result<(Vec<FiniteAlgebra>, EnumerationOutcome)> {
    let mut found = Vec::new();
    let outcome = enumerate_algebras_with(n, laws, &EnumerationConfig::default(), |a| found.push(a.clone()))?;
    Ok((found, outcome))
}

/// Visits every algebra on `{0, .., n-1}` satisfying `laws`, up to the fixed
/// labelling of the carrier.
///
/// The `D` and `R` vectors are filled before the `∗` table, which is then
/// filled row by row; every law instance whose value is already determined
/// is checked after each cell. An operation that no law mentions is fixed to
/// the identity map instead of being enumerated.
pub fn enumerate_algebras_with<F: FnMut(&FiniteAlgebra)>(
    n: usize,
    laws: &[Law],
    config: &EnumerationConfig,
    mut visit: F,
) -> Result<EnumerationOutcome> {
    if n == 0 || n > MAX_ENUMERATION_SIZE {
        return Err(Error::ResourceLimit(format!("enumeration size {n} outside 1..={MAX_ENUMERATION_SIZE}")));
    }
    for law in laws {
        for t in law.terms() {
            t.require_join_free("enumeration law")?;
        }
    }
    let compiled: Vec<CompiledLaw> = laws.iter().map(CompiledLaw::new).collect();
    let uses_d = laws.iter().any(Law::mentions_dom);
    let uses_r = laws.iter().any(Law::mentions_ran);

    let mut partial = Partial {
        n,
        star: vec![None; n * n],
        d: if uses_d { vec![None; n] } else { (0..n).map(Some).collect() },
        r: if uses_r { vec![None; n] } else { (0..n).map(Some).collect() },
    };
    let mut cells = Vec::new();
    if uses_d {
        cells.extend((0..n).map(Cell::D));
    }
    if uses_r {
        cells.extend((0..n).map(Cell::R));
    }
    for a in 0..n {
        for b in 0..n {
            cells.push(Cell::Star(a, b));
        }
    }

    let mut search = Search {
        n,
        laws: &compiled,
        cells: &cells,
        nodes: 0,
        budget: config.node_budget,
        exhausted: false,
        found: 0,
        seen: config.up_to_isomorphism.then(std::collections::HashSet::new),
    };
    search.run(0, &mut partial, &mut visit);
    Ok(EnumerationOutcome { complete: !search.exhausted, algebras_found: search.found, nodes_visited: search.nodes })
}

struct Search<'a> {
    n: usize,
    laws: &'a [CompiledLaw],
    cells: &'a [Cell],
    nodes: u64,
    budget: u64,
    exhausted: bool,
    found: usize,
    seen: Option<std::collections::HashSet<FiniteAlgebra>>,
}

impl Search<'_> {
    fn consistent(&self, p: &Partial) -> bool {
        let mut vals = Vec::new();
        for law in self.laws {
            vals.clear();
            vals.resize(law.arity, 0);
            loop {
                if law.check(p, &vals) == Some(false) {
                    return false;
                }
                if !advance(&mut vals, self.n) {
                    break;
                }
            }
        }
        true
    }

    fn run<F: FnMut(&FiniteAlgebra)>(&mut self, depth: usize, p: &mut Partial, visit: &mut F) {
        if self.exhausted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        if depth == self.cells.len() {
            let alg = FiniteAlgebra {
                size: self.n,
                star: (0..self.n).map(|a| (0..self.n).map(|b| p.star[a * self.n + b].unwrap()).collect()).collect(),
                d: p.d.iter().map(|v| v.unwrap()).collect(),
                r: p.r.iter().map(|v| v.unwrap()).collect(),
            };
            if let Some(seen) = &mut self.seen {
                if !seen.insert(canonical_form(&alg)) {
                    return;
                }
            }
            self.found += 1;
            visit(&alg);
            return;
        }
        let cell = self.cells[depth];
        for value in 0..self.n {
            match cell {
                Cell::D(a) => p.d[a] = Some(value),
                Cell::R(a) => p.r[a] = Some(value),
                Cell::Star(a, b) => p.star[a * self.n + b] = Some(value),
            }
            if self.consistent(p) {
                self.run(depth + 1, p, visit);
            }
        }
        match cell {
            Cell::D(a) => p.d[a] = None,
            Cell::R(a) => p.r[a] = None,
            Cell::Star(a, b) => p.star[a * self.n + b] = None,
        }
    }
}

/// Lexicographically least relabelling of the carrier.
pub fn canonical_form(a: &FiniteAlgebra) -> FiniteAlgebra {
    let n = a.size;
    let mut best: Option<FiniteAlgebra> = None;
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |p| {
        // p maps old element -> new element
        let mut inv = vec![0; n];
        for (old, &new) in p.iter().enumerate() {
            inv[new] = old;
        }
        let cand = FiniteAlgebra {
            size: n,
            star: (0..n).map(|i| (0..n).map(|j| p[a.star[inv[i]][inv[j]]]).collect()).collect(),
            d: (0..n).map(|i| p[a.d[inv[i]]]).collect(),
            r: (0..n).map(|i| p[a.r[inv[i]]]).collect(),
        };
        let key = |x: &FiniteAlgebra| (x.d.clone(), x.r.clone(), x.star.clone());
        if best.as_ref().is_none_or(|b| key(&cand) < key(b)) {
            best = Some(cand);
        }
    });
    best.expect("at least one permutation")
}

fn permutations<F: FnMut(&[usize])>(perm: &mut Vec<usize>, k: usize, f: &mut F) {
    if k == perm.len() {
        f(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permutations(perm, k + 1, f);
        perm.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse_term;

    fn p(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    #[test]
    fn rejects_malformed_tables() {
        assert!(FiniteAlgebra::new(vec![], vec![], vec![]).is_err());
        assert!(FiniteAlgebra::new(vec![vec![0, 1]], vec![0], vec![0]).is_err());
        assert!(FiniteAlgebra::new(vec![vec![2, 0], vec![0, 0]], vec![0, 0], vec![0, 0]).is_err());
        assert!(FiniteAlgebra::from_json(r#"{"size": 1, "star": [[0]], "D": [0], "R": [0]}"#).is_ok());
        assert!(FiniteAlgebra::from_json(r#"{"size": 1, "star": [[0]], "D": [0]}"#).is_err());
    }

    #[test]
    fn json_round_trip() {
        let a = FiniteAlgebra::new(vec![vec![0, 1], vec![1, 1]], vec![0, 0], vec![0, 0]).unwrap();
        let text = a.to_json();
        assert_eq!(text, r#"{"size":2,"star":[[0,1],[1,1]],"D":[0,0],"R":[0,0]}"#);
        assert_eq!(FiniteAlgebra::from_json(&text).unwrap(), a);
    }

    #[test]
    fn law_violations() {
        // {e, a} with a∗a = a, D(a) = e
        let a = FiniteAlgebra::new(vec![vec![0, 1], vec![1, 1]], vec![0, 0], vec![0, 0]).unwrap();
        let assoc = Law::equation("assoc", p("x;(y;z)"), p("(x;y);z"));
        assert!(a.satisfies(&assoc));
        let right_degenerate = Law::quasi("rd", vec![(p("x;y"), p("x"))], vec![(p("dom(y)"), p("y"))]);
        assert_eq!(a.violations(&right_degenerate), vec![vec![1, 1]]);
        assert_eq!(a.eval(&p("dom(x);x"), &BTreeMap::from([("x".to_string(), 1)])).unwrap(), 1);
    }

    #[test]
    fn generated_by_demonic() {
        let x = Relation::from_pairs(2, [(0, 1)]).unwrap();
        let (alg, elems) = FiniteAlgebra::generated_by(&[x], Mode::Demonic).unwrap();
        assert_eq!(alg.size(), 4);
        assert!(elems.iter().any(Relation::is_empty));
        let (alg, _) = FiniteAlgebra::generated_by(&[Relation::from_pairs(2, [(0, 1)]).unwrap()], Mode::Angelic).unwrap();
        assert_eq!(alg.size(), 4);
    }

    #[test]
    fn enumerate_semigroups_brute_force() {
        // oracle: every table on two elements, checked directly
        let assoc = Law::equation("assoc", p("x;(y;z)"), p("(x;y);z"));
        let mut expected = 0;
        for code in 0..16u32 {
            let star = vec![vec![(code & 1) as usize, (code >> 1 & 1) as usize], vec![(code >> 2 & 1) as usize, (code >> 3 & 1) as usize]];
            let a = FiniteAlgebra::new(star, vec![0, 1], vec![0, 1]).unwrap();
            if a.satisfies(&assoc) {
                expected += 1;
            }
        }
        let (found, outcome) = enumerate_algebras(2, &[assoc]).unwrap();
        assert!(outcome.complete);
        assert_eq!(found.len(), expected);
        assert_eq!(expected, 8);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let assoc = Law::equation("assoc", p("x;(y;z)"), p("(x;y);z"));
        let config = EnumerationConfig { node_budget: 10, up_to_isomorphism: false };
        let outcome = enumerate_algebras_with(3, &[assoc], &config, |_| {}).unwrap();
        assert!(!outcome.complete);
        assert!(enumerate_algebras(5, &[]).is_err());
    }

    #[test]
    fn isomorphism_filter() {
        let assoc = Law::equation("assoc", p("x;(y;z)"), p("(x;y);z"));
        let config = EnumerationConfig { up_to_isomorphism: true, ..EnumerationConfig::default() };
        let mut count = 0;
        enumerate_algebras_with(2, &[assoc], &config, |_| count += 1).unwrap();
        // semigroups of order two up to isomorphism (anti-isomorphic pairs counted apart)
        assert_eq!(count, 5);
    }

    #[test]
    fn two_element_demonic_algebras_against_brute_force() {
        use crate::axioms::demonic_catalog;
        let laws: Vec<Law> = demonic_catalog().equations.iter().map(|a| a.as_law()).collect();
        let (found, outcome) = enumerate_algebras(2, &laws).unwrap();
        assert!(outcome.complete);
        assert_eq!(found.len(), 6);
        let mut brute = Vec::new();
        for code in 0..256usize {
            let bit = |i: usize| (code >> i) & 1;
            let star = vec![vec![bit(0), bit(1)], vec![bit(2), bit(3)]];
            let a = FiniteAlgebra::new(star, vec![bit(4), bit(5)], vec![bit(6), bit(7)]).unwrap();
            if laws.iter().all(|l| a.satisfies(l)) {
                brute.push(a);
            }
        }
        let mut found = found;
        found.sort_by_key(|a| a.to_json());
        brute.sort_by_key(|a| a.to_json());
        assert_eq!(found, brute);
    }
}
