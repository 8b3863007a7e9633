//! Finite binary relations and their domain, range, angelic/demonic
//! composition and union, plus term evaluation over relational models.
//!
//! A relation over the universe `0..n` is stored as a dense bit matrix, one
//! row of `u64` words per source point, so composition walks only the
//! successors of each row.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::term::Term;

/// Which composition a term's `;` denotes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Angelic,
    Demonic,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Angelic => "angelic",
            Mode::Demonic => "demonic",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Relation {
    pub fn empty(universe: usize) -> Relation {
        let words = universe.div_ceil(64).max(1);
        Relation { n: universe, words, bits: vec![0; universe * words] }
    }

    pub fn full(universe: usize) -> Relation {
        let mut r = Relation::empty(universe);
        for u in 0..universe {
            for v in 0..universe {
                r.insert(u, v);
            }
        }
        r
    }

    pub fn identity(universe: usize) -> Relation {
        let mut r = Relation::empty(universe);
        for u in 0..universe {
            r.insert(u, u);
        }
        r
    }

    /// Builds a relation from pairs, rejecting out-of-range coordinates.
    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(universe: usize, pairs: I) -> Result<Relation> {
        let mut r = Relation::empty(universe);
        for (u, v) in pairs {
            if u >= universe || v >= universe {
                return Err(Error::InvalidModel(format!("pair ({u},{v}) outside universe of size {universe}")));
            }
            r.insert(u, v);
        }
        Ok(r)
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn contains(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Panics if `u` or `v` is outside the universe.
    #[inline]
    pub fn insert(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "pair ({u},{v}) outside universe {}", self.n);
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
    }

    fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    fn row_mut(&mut self, u: usize) -> &mut [u64] {
        &mut self.bits[u * self.words..(u + 1) * self.words]
    }

    /// Successors of `u` in increasing order.
    pub fn successors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        let n = self.n;
        self.row(u).iter().enumerate().flat_map(move |(w, &word)| {
            (0..64).filter(move |b| word >> b & 1 == 1).map(move |b| w * 64 + b).filter(move |&v| v < n)
        })
    }

    pub fn has_successor(&self, u: usize) -> bool {
        self.row(u).iter().any(|&w| w != 0)
    }

    /// All pairs in lexicographic order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|u| self.successors(u).map(move |v| (u, v))).collect()
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.n == other.n && self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    /// A relation is coreflexive when it is contained in the identity.
    pub fn is_coreflexive(&self) -> bool {
        self.pairs().into_iter().all(|(u, v)| u == v)
    }

    fn check_universe(&self, other: &Relation) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::UniverseMismatch { left: self.n, right: other.n })
        }
    }

    pub fn dom(&self) -> Relation {
        let mut out = Relation::empty(self.n);
        for u in 0..self.n {
            if self.has_successor(u) {
                out.insert(u, u);
            }
        }
        out
    }

    pub fn ran(&self) -> Relation {
        let mut cols = vec![0u64; self.words];
        for u in 0..self.n {
            for (c, w) in cols.iter_mut().zip(self.row(u)) {
                *c |= w;
            }
        }
        let mut out = Relation::empty(self.n);
        for v in 0..self.n {
            if cols[v / 64] >> (v % 64) & 1 == 1 {
                out.insert(v, v);
            }
        }
        out
    }

    /// Ordinary relational composition.
    pub fn angelic(&self, other: &Relation) -> Result<Relation> {
        self.check_universe(other)?;
        let mut out = Relation::empty(self.n);
        for u in 0..self.n {
            self.compose_row(u, other, &mut out);
        }
        Ok(out)
    }

    /// Demonic composition: rows of `self` whose every successor lies in the
    /// domain of `other` are composed; all other rows are dropped.
    pub fn demonic(&self, other: &Relation) -> Result<Relation> {
        self.check_universe(other)?;
        let mut out = Relation::empty(self.n);
        for u in 0..self.n {
            if self.successors(u).all(|w| other.has_successor(w)) {
                self.compose_row(u, other, &mut out);
            }
        }
        Ok(out)
    }

    fn compose_row(&self, u: usize, other: &Relation, out: &mut Relation) {
        let words = self.words;
        let mut acc = vec![0u64; words];
        for w in self.successors(u) {
            for (a, b) in acc.iter_mut().zip(other.row(w)) {
                *a |= b;
            }
        }
        out.row_mut(u).copy_from_slice(&acc);
    }

    pub fn compose(&self, other: &Relation, mode: Mode) -> Result<Relation> {
        match mode {
            Mode::Angelic => self.angelic(other),
            Mode::Demonic => self.demonic(other),
        }
    }

    pub fn join(&self, other: &Relation) -> Result<Relation> {
        self.check_universe(other)?;
        let mut out = self.clone();
        for (a, b) in out.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
        Ok(out)
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation[{}]{:?}", self.n, self.pairs())
    }
}

/// The operations of the full relation algebra on `U × U`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelOp {
    Dom,
    Ran,
    Angelic,
    Demonic,
    Join,
}

/// Applies one operation; binary operations need `y`.
pub fn relational_ops(op: RelOp, x: &Relation, y: Option<&Relation>) -> Result<Relation> {
    let need_y = || y.ok_or_else(|| Error::Precondition(format!("{op:?} needs a second operand")));
    match op {
        RelOp::Dom => Ok(x.dom()),
        RelOp::Ran => Ok(x.ran()),
        RelOp::Angelic => x.angelic(need_y()?),
        RelOp::Demonic => x.demonic(need_y()?),
        RelOp::Join => x.join(need_y()?),
    }
}

// ---------------------------------------------------------------------------
// Models

/// A universe `0..universe` and a valuation of variables, all over that universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationalModel {
    universe: usize,
    valuation: BTreeMap<String, Relation>,
}

impl RelationalModel {
    pub fn new(universe: usize) -> Result<RelationalModel> {
        if universe == 0 {
            return Err(Error::InvalidModel("universe must be non-empty".into()));
        }
        Ok(RelationalModel { universe, valuation: BTreeMap::new() })
    }

    pub fn with_var(mut self, name: impl Into<String>, rel: Relation) -> Result<RelationalModel> {
        self.set(name, rel)?;
        Ok(self)
    }

    pub fn set(&mut self, name: impl Into<String>, rel: Relation) -> Result<()> {
        if rel.universe() != self.universe {
            return Err(Error::UniverseMismatch { left: self.universe, right: rel.universe() });
        }
        self.valuation.insert(name.into(), rel);
        Ok(())
    }

    /// Binds every listed variable that is not yet bound to the empty relation.
    pub fn bind_missing_empty<'a, I: IntoIterator<Item = &'a String>>(&mut self, vars: I) {
        for v in vars {
            self.valuation.entry(v.clone()).or_insert_with(|| Relation::empty(self.universe));
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn get(&self, name: &str) -> Option<&Relation> {
        self.valuation.get(name)
    }

    pub fn valuation(&self) -> &BTreeMap<String, Relation> {
        &self.valuation
    }

    pub fn from_json(text: &str) -> Result<RelationalModel> {
        let file: ModelFile = serde_json::from_str(text)?;
        RelationalModel::try_from(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ModelFile::from(self)).expect("model serialization cannot fail")
    }
}

/// On-disk model format: `{"universe": n, "vars": {"x": [[0,1],[0,2]]}}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub universe: usize,
    pub vars: BTreeMap<String, Vec<[usize; 2]>>,
}

impl TryFrom<ModelFile> for RelationalModel {
    type Error = Error;

    fn try_from(file: ModelFile) -> Result<RelationalModel> {
        let mut model = RelationalModel::new(file.universe)?;
        for (name, pairs) in file.vars {
            let term: Term = name.parse().map_err(|_| Error::InvalidModel(format!("bad variable name `{name}`")))?;
            if !matches!(term, Term::Var(_)) {
                return Err(Error::InvalidModel(format!("bad variable name `{name}`")));
            }
            let mut rel = Relation::empty(file.universe);
            for [u, v] in pairs {
                if u >= file.universe || v >= file.universe {
                    return Err(Error::InvalidModel(format!(
                        "pair [{u},{v}] of `{name}` outside universe {}",
                        file.universe
                    )));
                }
                if rel.contains(u, v) {
                    return Err(Error::InvalidModel(format!("duplicate pair [{u},{v}] in `{name}`")));
                }
                rel.insert(u, v);
            }
            model.set(name, rel)?;
        }
        Ok(model)
    }
}

impl From<&RelationalModel> for ModelFile {
    fn from(m: &RelationalModel) -> ModelFile {
        ModelFile {
            universe: m.universe,
            vars: m.valuation.iter().map(|(k, r)| (k.clone(), r.pairs().into_iter().map(|(u, v)| [u, v]).collect())).collect(),
        }
    }
}

impl Serialize for RelationalModel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ModelFile::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for RelationalModel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let file = ModelFile::deserialize(d)?;
        RelationalModel::try_from(file).map_err(serde::de::Error::custom)
    }
}

/// Evaluates a term in a model. Demonic mode rejects joins.
pub fn eval(t: &Term, m: &RelationalModel, mode: Mode) -> Result<Relation> {
    if mode == Mode::Demonic {
        t.require_join_free("demonic evaluation")?;
    }
    eval_inner(t, m, mode)
}

fn eval_inner(t: &Term, m: &RelationalModel, mode: Mode) -> Result<Relation> {
    Ok(match t {
        Term::Var(x) => m.get(x).cloned().ok_or_else(|| Error::UnboundVariable(x.clone()))?,
        Term::Dom(s) => eval_inner(s, m, mode)?.dom(),
        Term::Ran(s) => eval_inner(s, m, mode)?.ran(),
        Term::Comp(l, r) => eval_inner(l, m, mode)?.compose(&eval_inner(r, m, mode)?, mode)?,
        Term::Join(l, r) => eval_inner(l, m, mode)?.join(&eval_inner(r, m, mode)?)?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationReport {
    pub holds: bool,
    /// The least pair (lexicographically) present in exactly one side.
    pub witness: Option<(usize, usize)>,
    pub side: Option<Side>,
}

/// Compares both sides of `s = t` in one model.
pub fn check_equation(s: &Term, t: &Term, m: &RelationalModel, mode: Mode) -> Result<EquationReport> {
    let left = eval(s, m, mode)?;
    let right = eval(t, m, mode)?;
    Ok(compare(&left, &right))
}

pub(crate) fn compare(left: &Relation, right: &Relation) -> EquationReport {
    for u in 0..left.universe() {
        for v in 0..left.universe() {
            let (a, b) = (left.contains(u, v), right.contains(u, v));
            if a != b {
                let side = if a { Side::Left } else { Side::Right };
                return EquationReport { holds: false, witness: Some((u, v)), side: Some(side) };
            }
        }
    }
    EquationReport { holds: true, witness: None, side: None }
}

/// Draws a model in which every pair of every variable is present
/// independently with probability `density`.
///
/// The generator is ChaCha8 seeded through `seed_from_u64`, which produces
/// the same stream on every platform. Variables are filled in the given
/// order, pairs row by row.
///
/// Panics if `universe` is zero or `density` lies outside `[0, 1]`.
pub fn random_model(universe: usize, vars: &[String], density: f64, seed: u64) -> RelationalModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_model_with(&mut rng, universe, vars, density)
}

pub fn random_model_with<R: Rng + ?Sized>(rng: &mut R, universe: usize, vars: &[String], density: f64) -> RelationalModel {
    assert!(universe >= 1, "universe must be non-empty");
    assert!((0.0..=1.0).contains(&density), "density {density} outside [0, 1]");
    let mut model = RelationalModel::new(universe).expect("universe checked above");
    for v in vars {
        let mut rel = Relation::empty(universe);
        for a in 0..universe {
            for b in 0..universe {
                if rng.gen_bool(density) {
                    rel.insert(a, b);
                }
            }
        }
        model.set(v.clone(), rel).expect("same universe");
    }
    model
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse_term;

    fn rel(n: usize, pairs: &[(usize, usize)]) -> Relation {
        Relation::from_pairs(n, pairs.iter().copied()).unwrap()
    }

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn operation_examples() {
        let x = rel(2, &[(0, 1)]);
        let y = rel(2, &[(1, 0)]);
        assert_eq!(relational_ops(RelOp::Angelic, &x, Some(&y)).unwrap(), rel(2, &[(0, 0)]));

        let x = rel(3, &[(0, 1), (0, 2)]);
        let y = rel(3, &[(1, 1)]);
        assert!(relational_ops(RelOp::Demonic, &x, Some(&y)).unwrap().is_empty());
        assert_eq!(relational_ops(RelOp::Angelic, &x, Some(&y)).unwrap(), rel(3, &[(0, 1)]));

        let x = rel(3, &[(0, 1), (2, 0)]);
        assert_eq!(relational_ops(RelOp::Dom, &x, None).unwrap(), rel(3, &[(0, 0), (2, 2)]));
        assert_eq!(relational_ops(RelOp::Ran, &x, None).unwrap(), rel(3, &[(0, 0), (1, 1)]));
        assert_eq!(relational_ops(RelOp::Join, &x, Some(&rel(3, &[(1, 1)]))).unwrap(), rel(3, &[(0, 1), (1, 1), (2, 0)]));
    }

    #[test]
    fn operation_errors() {
        let x = rel(2, &[(0, 1)]);
        let y = rel(3, &[(1, 0)]);
        assert!(matches!(x.angelic(&y), Err(Error::UniverseMismatch { left: 2, right: 3 })));
        assert!(matches!(relational_ops(RelOp::Join, &x, None), Err(Error::Precondition(_))));
        assert!(Relation::from_pairs(2, [(0, 2)]).is_err());
    }

    #[test]
    fn wide_universe() {
        let x = Relation::from_pairs(130, [(0, 129), (129, 64), (64, 0)]).unwrap();
        let xx = x.angelic(&x).unwrap();
        assert_eq!(xx.pairs(), vec![(0, 64), (64, 129), (129, 0)]);
        assert_eq!(x.ran().pairs(), vec![(0, 0), (64, 64), (129, 129)]);
        assert_eq!(x.demonic(&x).unwrap(), xx);
    }

    fn axiom25_model() -> RelationalModel {
        RelationalModel::new(4)
            .unwrap()
            .with_var("x", rel(4, &[(0, 1), (0, 2)]))
            .unwrap()
            .with_var("y", rel(4, &[(2, 3)]))
            .unwrap()
    }

    #[test]
    fn eval_examples() {
        let m = axiom25_model();
        let lhs = parse_term("dom(x;y);x").unwrap();
        let rhs = parse_term("x;dom(y)").unwrap();
        assert_eq!(eval(&lhs, &m, Mode::Angelic).unwrap(), rel(4, &[(0, 1), (0, 2)]));
        assert_eq!(eval(&rhs, &m, Mode::Angelic).unwrap(), rel(4, &[(0, 2)]));
        assert!(eval(&lhs, &m, Mode::Demonic).unwrap().is_empty());
        assert!(eval(&rhs, &m, Mode::Demonic).unwrap().is_empty());
        assert_eq!(eval(&parse_term("x").unwrap(), &m, Mode::Demonic).unwrap(), *m.get("x").unwrap());
    }

    #[test]
    fn eval_errors() {
        let m = axiom25_model();
        assert!(matches!(eval(&parse_term("z").unwrap(), &m, Mode::Angelic), Err(Error::UnboundVariable(v)) if v == "z"));
        assert!(matches!(eval(&parse_term("x + y").unwrap(), &m, Mode::Demonic), Err(Error::JoinNotAllowed(_))));
        assert_eq!(eval(&parse_term("x + y").unwrap(), &m, Mode::Angelic).unwrap(), rel(4, &[(0, 1), (0, 2), (2, 3)]));
    }

    #[test]
    fn check_equation_examples() {
        let m = axiom25_model();
        let report = check_equation(
            &parse_term("x;dom(y)").unwrap(),
            &parse_term("dom(x;y);x").unwrap(),
            &m,
            Mode::Angelic,
        )
        .unwrap();
        assert!(!report.holds);
        assert_eq!(report.witness, Some((0, 1)));
        assert_eq!(report.side, Some(Side::Right));

        let t = parse_term("dom(x);y").unwrap();
        assert!(check_equation(&t, &t, &m, Mode::Demonic).unwrap().holds);

        for seed in 0..50 {
            let m = random_model(4, &vars(&["x"]), 0.4, seed);
            let r = check_equation(&parse_term("dom(x);x").unwrap(), &parse_term("x").unwrap(), &m, Mode::Angelic).unwrap();
            assert!(r.holds);
        }
    }

    #[test]
    fn random_model_contract() {
        let v = vars(&["x", "y"]);
        let m = random_model(5, &v, 0.0, 3);
        assert!(m.valuation().values().all(Relation::is_empty));
        let m = random_model(5, &v, 1.0, 3);
        assert!(m.valuation().values().all(|r| *r == Relation::full(5)));
        assert_eq!(random_model(5, &v, 0.3, 11), random_model(5, &v, 0.3, 11));
        assert_ne!(random_model(5, &v, 0.3, 11), random_model(5, &v, 0.3, 12));
    }

    #[test]
    fn model_json() {
        let m = RelationalModel::from_json(r#"{"universe": 3, "vars": {"x": [[0,1],[0,2]], "y": []}}"#).unwrap();
        assert_eq!(m.get("x").unwrap().pairs(), vec![(0, 1), (0, 2)]);
        assert!(m.get("y").unwrap().is_empty());
        assert_eq!(RelationalModel::from_json(&m.to_json()).unwrap(), m);

        for bad in [
            r#"{"universe": 3, "vars": {"x": [[0,1],[0,1]]}}"#,
            r#"{"universe": 3, "vars": {"x": [[0,3]]}}"#,
            r#"{"universe": 0, "vars": {}}"#,
            r#"{"universe": 2, "vars": {"dom": []}}"#,
            r#"{"universe": 2, "vars": {"x": [[0]]}}"#,
        ] {
            assert!(RelationalModel::from_json(bad).is_err(), "{bad}");
        }
    }

    mod props {
        use super::*;
        use crate::strategies;
        use crate::term::join_normal_form;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(1000))]

            #[test]
            fn compositions_are_associative(rs in strategies::relations(3)) {
                for mode in [Mode::Angelic, Mode::Demonic] {
                    let left = rs[0].compose(&rs[1], mode).unwrap().compose(&rs[2], mode).unwrap();
                    let right = rs[0].compose(&rs[1].compose(&rs[2], mode).unwrap(), mode).unwrap();
                    prop_assert_eq!(left, right, "{}", mode);
                }
            }

            #[test]
            fn demonic_below_angelic(rs in strategies::relations(2)) {
                let (x, y) = (&rs[0], &rs[1]);
                let d = x.demonic(y).unwrap();
                let a = x.angelic(y).unwrap();
                prop_assert!(d.is_subset(&a));
                let dy = y.dom();
                let total = x.pairs().iter().all(|&(_, v)| dy.contains(v, v));
                if total {
                    prop_assert_eq!(d, a);
                }
            }

            #[test]
            fn dom_and_ran_are_coreflexive(x in strategies::relations(1)) {
                prop_assert!(x[0].dom().is_coreflexive());
                prop_assert!(x[0].ran().is_coreflexive());
            }

            #[test]
            fn jnf_preserves_angelic_value(t in strategies::term(true), m in strategies::model()) {
                let whole = eval(&t, &m, Mode::Angelic).unwrap();
                let mut joined = Relation::empty(m.universe());
                for d in join_normal_form(&t).unwrap() {
                    joined = joined.join(&eval(&d, &m, Mode::Angelic).unwrap()).unwrap();
                }
                prop_assert_eq!(whole, joined);
            }
        }
    }
}
