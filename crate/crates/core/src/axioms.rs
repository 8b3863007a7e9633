//! The two axiom catalogs, soundness scans over relational models, the
//! cycle-freeness quasi-identities on finite algebras, and the completeness
//! smoke suite.
//!
//! Demonic laws are written in the ordinary term syntax: `dom`, `ran` and `;`
//! stand for `D`, `R` and `∗` and are evaluated with [`Mode::Demonic`].

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{FiniteAlgebra, Law};
use crate::decision::{certify, Decider, Verdict};
use crate::error::{Error, Result};
use crate::relation::{check_equation, random_model_with, Mode, Relation, RelationalModel, Side};
use crate::term::{parse_term, random_term, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum CatalogName {
    #[value(name = "axa")]
    AxA,
    #[value(name = "axd")]
    AxD,
}

impl CatalogName {
    /// The semantics under which the catalog is sound.
    pub fn mode(self) -> Mode {
        match self {
            CatalogName::AxA => Mode::Angelic,
            CatalogName::AxD => Mode::Demonic,
        }
    }
}

impl fmt::Display for CatalogName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CatalogName::AxA => "axa",
            CatalogName::AxD => "axd",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Axiom {
    pub label: String,
    pub lhs: Term,
    pub rhs: Term,
}

impl Axiom {
    fn new(label: &str, lhs: &str, rhs: &str) -> Axiom {
        Axiom {
            label: label.to_string(),
            lhs: parse_term(lhs).expect("catalog term parses"),
            rhs: parse_term(rhs).expect("catalog term parses"),
        }
    }

    /// `s <= t`, written as `s + t = t`.
    fn leq(label: &str, lhs: &str, rhs: &str) -> Axiom {
        let rhs = parse_term(rhs).expect("catalog term parses");
        Axiom {
            label: label.to_string(),
            lhs: Term::join(parse_term(lhs).expect("catalog term parses"), rhs.clone()),
            rhs,
        }
    }

    pub fn as_law(&self) -> Law {
        Law::equation(self.label.clone(), self.lhs.clone(), self.rhs.clone())
    }

    pub fn variables(&self) -> Vec<String> {
        let mut vars = self.lhs.variables();
        vars.extend(self.rhs.variables());
        vars.into_iter().collect()
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} = {}", self.label, self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomCatalog {
    pub name: CatalogName,
    pub equations: Vec<Axiom>,
    pub quasi_equations: Vec<Law>,
}

impl AxiomCatalog {
    pub fn get(name: CatalogName) -> AxiomCatalog {
        match name {
            CatalogName::AxA => angelic_catalog(),
            CatalogName::AxD => demonic_catalog(),
        }
    }

    pub fn axiom(&self, label: &str) -> Option<&Axiom> {
        self.equations.iter().find(|a| a.label == label)
    }

    /// One line per law: label, then both sides in the term grammar.
    pub fn listing(&self) -> String {
        let mut out = String::new();
        for a in &self.equations {
            out.push_str(&format!("{}\t{}\t{}\n", a.label, a.lhs, a.rhs));
        }
        for q in &self.quasi_equations {
            let side = |pairs: &[(Term, Term)]| {
                pairs.iter().map(|(l, r)| format!("{l} = {r}")).collect::<Vec<_>>().join(" & ")
            };
            out.push_str(&format!("{}\t{}\t=>\t{}\n", q.label, side(&q.premises), side(&q.conclusions)));
        }
        out
    }
}

/// Equations for composition, domain, range and join. Inequalities appear
/// as `s + t = t`; the semilattice laws of join are left implicit.
pub fn angelic_catalog() -> AxiomCatalog {
    let equations = vec![
        Axiom::new("assoc", "x;(y;z)", "(x;y);z"),
        Axiom::new("dom-unit", "dom(x);x", "x"),
        Axiom::new("ran-unit", "x;ran(x)", "x"),
        Axiom::new("dom-idem", "dom(x);dom(x)", "dom(x)"),
        Axiom::new("ran-idem", "ran(x);ran(x)", "ran(x)"),
        Axiom::new("dom-locality", "dom(x;y)", "dom(x;dom(y))"),
        Axiom::new("ran-locality", "ran(x;y)", "ran(ran(x);y)"),
        Axiom::new("dom-of-restriction", "dom(dom(x);y)", "dom(x);dom(y)"),
        Axiom::new("ran-of-corestriction", "ran(x;ran(y))", "ran(x);ran(y)"),
        Axiom::new("dom-ran", "dom(ran(x))", "ran(x)"),
        Axiom::new("ran-dom", "ran(dom(x))", "dom(x)"),
        Axiom::new("dom-commute", "dom(x);dom(y)", "dom(y);dom(x)"),
        Axiom::new("ran-commute", "ran(x);ran(y)", "ran(y);ran(x)"),
        Axiom::leq("dom-below", "dom(x);y", "y"),
        Axiom::leq("ran-below", "x;ran(y)", "x"),
        Axiom::new("left-additive", "x;(y+z)", "x;y + x;z"),
        Axiom::new("right-additive", "(x+y);z", "x;z + y;z"),
        Axiom::new("dom-additive", "dom(x+y)", "dom(x) + dom(y)"),
        Axiom::new("ran-additive", "ran(x+y)", "ran(x) + ran(y)"),
    ];
    AxiomCatalog { name: CatalogName::AxA, equations, quasi_equations: Vec::new() }
}

/// Equations for demonic composition with domain and range, plus the two
/// cycle-freeness quasi-identities.
pub fn demonic_catalog() -> AxiomCatalog {
    let equations = vec![
        Axiom::new("assoc", "x;(y;z)", "(x;y);z"),
        Axiom::new("dom-unit", "dom(x);x", "x"),
        Axiom::new("dom-commute", "dom(x);dom(y)", "dom(y);dom(x)"),
        Axiom::new("dom-of-restriction", "dom(dom(x);y)", "dom(x);dom(y)"),
        Axiom::new("dom-twisted", "x;dom(y)", "dom(x;y);x"),
        Axiom::new("dom-ran", "dom(ran(x))", "ran(x)"),
        Axiom::new("ran-dom", "ran(dom(x))", "dom(x)"),
        Axiom::new("ran-ran", "ran(ran(x))", "ran(x)"),
        Axiom::new("ran-commute", "ran(x);ran(y)", "ran(y);ran(x)"),
        Axiom::new("ran-absorb", "ran(x;y);ran(y)", "ran(x;y)"),
        Axiom::new("ran-unit", "x;ran(x)", "x"),
    ];
    AxiomCatalog { name: CatalogName::AxD, equations, quasi_equations: cycle_free_laws() }
}

/// `x;y = x => dom(y) = y` and `x;y = dom(z) => x = dom(x) & y = dom(y)`.
pub fn cycle_free_laws() -> Vec<Law> {
    let p = |s: &str| parse_term(s).expect("catalog term parses");
    vec![
        Law::quasi("right-degenerate", vec![(p("x;y"), p("x"))], vec![(p("dom(y)"), p("y"))]),
        Law::quasi(
            "domain-prime",
            vec![(p("x;y"), p("dom(z)"))],
            vec![(p("x"), p("dom(x)")), (p("y"), p("dom(y)"))],
        ),
    ]
}

/// The restriction-semigroup laws: the demonic equations that mention only
/// composition and domain.
pub fn restriction_semigroup_laws() -> Vec<Law> {
    let cat = demonic_catalog();
    ["assoc", "dom-unit", "dom-commute", "dom-of-restriction", "dom-twisted"]
        .iter()
        .map(|l| cat.axiom(l).expect("label present").as_law())
        .collect()
}

// ---------------------------------------------------------------------------
// Soundness scans

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanViolation {
    pub axiom: String,
    pub model_index: usize,
    pub model: RelationalModel,
    pub substitution: BTreeMap<String, Term>,
    pub witness: (usize, usize),
    pub side: Side,
}

impl ScanViolation {
    /// Re-evaluates the instance from scratch.
    pub fn reverify(&self, catalog: &AxiomCatalog, mode: Mode) -> bool {
        let Some(ax) = catalog.axiom(&self.axiom) else { return false };
        let lhs = ax.lhs.substitute(&self.substitution);
        let rhs = ax.rhs.substitute(&self.substitution);
        let (Ok(l), Ok(r)) = (
            crate::relation::eval(&lhs, &self.model, mode),
            crate::relation::eval(&rhs, &self.model, mode),
        ) else {
            return false;
        };
        let (u, v) = self.witness;
        l.contains(u, v) != r.contains(u, v)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanReport {
    pub catalog: CatalogName,
    pub mode: Mode,
    pub models_tested: usize,
    pub instances_checked: usize,
    pub violations: Vec<ScanViolation>,
}

#[derive(Clone, Debug)]
pub struct ScanConfig {
    pub models: usize,
    pub min_universe: usize,
    pub max_universe: usize,
    /// Depth bound of the random terms substituted for variables.
    pub substitution_depth: usize,
    /// Random instances per axiom and model, besides the direct one.
    pub substitutions_per_axiom: usize,
    pub seed: u64,
    pub threads: usize,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            models: 1000,
            min_universe: 2,
            max_universe: 5,
            substitution_depth: 3,
            substitutions_per_axiom: 3,
            seed: 0,
            threads: 1,
        }
    }
}

const SCAN_VARS: [&str; 3] = ["x", "y", "z"];

/// Model `index` of a scan: ChaCha8 seeded with `seed`, on stream `index`,
/// so the model does not depend on how the scan is split across threads.
fn scan_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Checks every equation of `catalog` on `config.models` random models, both
/// on the valuation itself and under random substitutions. Joins appear in
/// substituted terms only in angelic mode.
pub fn soundness_scan(catalog: &AxiomCatalog, mode: Mode, config: &ScanConfig) -> Result<ScanReport> {
    if catalog.name.mode() != mode {
        return Err(Error::Precondition(format!("catalog {} is not meant for {mode} semantics", catalog.name)));
    }
    if config.min_universe == 0 || config.min_universe > config.max_universe {
        return Err(Error::Precondition(format!(
            "universe range {}..={} is empty or contains 0",
            config.min_universe, config.max_universe
        )));
    }
    let vars: Vec<String> = SCAN_VARS.iter().map(|v| v.to_string()).collect();
    let scan_one = |index: usize| -> Result<(usize, Vec<ScanViolation>)> {
        let mut rng = scan_rng(config.seed, index);
        let universe = rng.gen_range(config.min_universe..=config.max_universe);
        let density = rng.gen_range(0.1..0.7);
        let model = random_model_with(&mut rng, universe, &vars, density);
        scan_model(catalog, mode, &model, index, config, &vars, &mut rng)
    };

    let threads = config.threads.max(1).min(config.models.max(1));
    let mut results: Vec<Result<(usize, Vec<ScanViolation>)>> = Vec::with_capacity(config.models);
    if threads == 1 {
        results.extend((0..config.models).map(scan_one));
    } else {
        let chunks: Vec<Vec<Result<(usize, Vec<ScanViolation>)>>> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..threads)
                .map(|t| {
                    let scan_one = &scan_one;
                    scope.spawn(move || (t..config.models).step_by(threads).map(scan_one).collect::<Vec<_>>())
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("scan worker panicked")).collect()
        });
        let mut iters: Vec<_> = chunks.into_iter().map(Vec::into_iter).collect();
        for i in 0..config.models {
            results.push(iters[i % threads].next().expect("one result per model"));
        }
    }

    let mut report = ScanReport {
        catalog: catalog.name,
        mode,
        models_tested: config.models,
        instances_checked: 0,
        violations: Vec::new(),
    };
    for r in results {
        let (checked, violations) = r?;
        report.instances_checked += checked;
        report.violations.extend(violations);
    }
    Ok(report)
}

/// Scans one given model; `index` is recorded in the violations.
pub fn scan_model<R: Rng + ?Sized>(
    catalog: &AxiomCatalog,
    mode: Mode,
    model: &RelationalModel,
    index: usize,
    config: &ScanConfig,
    term_vars: &[String],
    rng: &mut R,
) -> Result<(usize, Vec<ScanViolation>)> {
    let mut checked = 0;
    let mut violations = Vec::new();
    let mut model = model.clone();
    for ax in &catalog.equations {
        let ax_vars = ax.variables();
        model.bind_missing_empty(&ax_vars);
        let mut substitutions = vec![ax_vars.iter().map(|v| (v.clone(), Term::var(v.clone()))).collect()];
        for _ in 0..config.substitutions_per_axiom {
            substitutions.push(
                ax_vars
                    .iter()
                    .map(|v| (v.clone(), random_term(rng, term_vars, config.substitution_depth, mode == Mode::Angelic)))
                    .collect::<BTreeMap<_, _>>(),
            );
        }
        for subst in substitutions {
            model.bind_missing_empty(subst.values().flat_map(|t| t.variables()).collect::<Vec<_>>().iter());
            let report = check_equation(&ax.lhs.substitute(&subst), &ax.rhs.substitute(&subst), &model, mode)?;
            checked += 1;
            if !report.holds {
                violations.push(ScanViolation {
                    axiom: ax.label.clone(),
                    model_index: index,
                    model: model.clone(),
                    substitution: subst,
                    witness: report.witness.expect("failing report has a witness"),
                    side: report.side.expect("failing report has a side"),
                });
            }
        }
    }
    Ok((checked, violations))
}

/// The model `x = {(0,1),(0,2)}`, `y = {(2,3)}` on four points, with the
/// pair `(0,1)` that `dom(x;y);x` relates and `x;dom(y)` does not under
/// angelic composition.
pub fn angelic_counterexample_to_demonic_axiom() -> (RelationalModel, (usize, usize)) {
    let model = RelationalModel::new(4)
        .and_then(|m| m.with_var("x", Relation::from_pairs(4, [(0, 1), (0, 2)])?))
        .and_then(|m| m.with_var("y", Relation::from_pairs(4, [(2, 3)])?))
        .expect("fixed model is well formed");
    (model, (0, 1))
}

// ---------------------------------------------------------------------------
// Cycle-freeness

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiViolation {
    pub law: String,
    /// Values of the law's variables in order of first occurrence
    /// (`x`, `y`, `z`).
    pub assignment: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleFreeReport {
    pub violations: Vec<QuasiViolation>,
}

impl CycleFreeReport {
    pub fn is_cycle_free(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exhaustively checks both cycle-freeness laws on a finite algebra.
pub fn check_cycle_free(a: &FiniteAlgebra) -> CycleFreeReport {
    let mut violations = Vec::new();
    for law in cycle_free_laws() {
        for assignment in a.violations(&law) {
            violations.push(QuasiViolation { law: law.label.clone(), assignment });
        }
    }
    CycleFreeReport { violations }
}

// ---------------------------------------------------------------------------
// Completeness smoke suite

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SmokeEntry {
    pub label: String,
    pub lhs: Term,
    pub rhs: Term,
    pub expected_valid: bool,
    pub verdict: Verdict,
    /// Verdict matches the expectation and, when invalid, certifies.
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SmokeReport {
    pub entries: Vec<SmokeEntry>,
}

impl SmokeReport {
    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }
}

/// Decides every angelic axiom (all expected valid) and the twisted demonic
/// domain law `x;dom(y) = dom(x;y);x` (expected invalid).
pub fn completeness_smoke() -> Result<SmokeReport> {
    let mut decider = Decider::new();
    let mut entries = Vec::new();
    let twisted = demonic_catalog().axiom("dom-twisted").expect("label present").clone();
    let cases = angelic_catalog()
        .equations
        .into_iter()
        .map(|a| (a, true))
        .chain(std::iter::once((Axiom { label: "demonic:dom-twisted".into(), ..twisted }, false)));
    for (ax, expected_valid) in cases {
        let verdict = decider.decide_eq(&ax.lhs, &ax.rhs)?;
        let passed = verdict.valid == expected_valid && certify(&verdict, &ax.lhs, &ax.rhs);
        entries.push(SmokeEntry { label: ax.label, lhs: ax.lhs, rhs: ax.rhs, expected_valid, verdict, passed });
    }
    Ok(SmokeReport { entries })
}

// ---------------------------------------------------------------------------
// Single-position rewriting with demonic axioms

/// Which way an axiom is applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Orientation {
    LeftToRight,
    RightToLeft,
}

/// Rewrites the subterm at `path` with `axiom`, if the chosen side matches
/// it. Variables of the other side that the match leaves unbound are
/// replaced by `fill`.
pub fn rewrite_at(term: &Term, path: &[u8], axiom: &Axiom, orientation: Orientation, fill: &BTreeMap<String, Term>) -> Option<Term> {
    let (from, to) = match orientation {
        Orientation::LeftToRight => (&axiom.lhs, &axiom.rhs),
        Orientation::RightToLeft => (&axiom.rhs, &axiom.lhs),
    };
    let mut subst = from.match_against(term.subterm(path)?)?;
    for v in to.variables() {
        if !subst.contains_key(&v) {
            subst.insert(v.clone(), fill.get(&v)?.clone());
        }
    }
    term.replace_at(path, to.substitute(&subst))
}

/// One random single-position rewrite step `C[θ(l)] -> C[θ(r)]` with an
/// axiom of `catalog`: a random join-free context, hole position, axiom,
/// orientation and substitution over `vars`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RewriteStep {
    pub before: Term,
    pub after: Term,
    pub axiom: String,
    pub orientation: Orientation,
    pub path: Vec<u8>,
}

pub fn random_rewrite_step<R: Rng + ?Sized>(rng: &mut R, catalog: &AxiomCatalog, vars: &[String], depth: usize) -> RewriteStep {
    let context = random_term(rng, vars, depth, false);
    let positions = context.positions();
    let path = positions[rng.gen_range(0..positions.len())].clone();
    let axiom = &catalog.equations[rng.gen_range(0..catalog.equations.len())];
    let orientation = if rng.gen_bool(0.5) { Orientation::LeftToRight } else { Orientation::RightToLeft };
    let subst: BTreeMap<String, Term> =
        axiom.variables().into_iter().map(|v| (v, random_term(rng, vars, depth.saturating_sub(1), false))).collect();
    let (from, to) = match orientation {
        Orientation::LeftToRight => (&axiom.lhs, &axiom.rhs),
        Orientation::RightToLeft => (&axiom.rhs, &axiom.lhs),
    };
    let before = context.replace_at(&path, from.substitute(&subst)).expect("position from positions()");
    let after = context.replace_at(&path, to.substitute(&subst)).expect("position from positions()");
    RewriteStep { before, after, axiom: axiom.label.clone(), orientation, path }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::eval;

    fn p(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    #[test]
    fn catalog_sizes() {
        let a = angelic_catalog();
        let d = demonic_catalog();
        assert_eq!(a.equations.len(), 19);
        assert_eq!(d.equations.len(), 11);
        assert_eq!(d.quasi_equations.len(), 2);
        assert!(a.quasi_equations.is_empty());
        assert!(d.equations.iter().all(|e| e.lhs.is_join_free() && e.rhs.is_join_free()));
        assert_eq!(a.axiom("dom-below").unwrap().lhs, p("dom(x);y + y"));
        let labels: std::collections::BTreeSet<_> = a.equations.iter().map(|e| &e.label).collect();
        assert_eq!(labels.len(), 19);
    }

    #[test]
    fn listing_format() {
        let text = demonic_catalog().listing();
        assert!(text.starts_with("assoc\tx;(y;z)\tx;y;z\n"));
        assert!(text.contains("right-degenerate\tx;y = x\t=>\tdom(y) = y\n"));
        assert_eq!(text.lines().count(), 13);
    }

    #[test]
    fn small_scans_are_clean() {
        let config = ScanConfig { models: 40, ..ScanConfig::default() };
        for name in [CatalogName::AxA, CatalogName::AxD] {
            let cat = AxiomCatalog::get(name);
            let report = soundness_scan(&cat, name.mode(), &config).unwrap();
            assert!(report.violations.is_empty(), "{name}: {:?}", report.violations.first());
            assert_eq!(report.models_tested, 40);
            assert_eq!(report.instances_checked, 40 * cat.equations.len() * 4);
        }
    }

    #[test]
    fn mode_mismatch_rejected() {
        let config = ScanConfig { models: 1, ..ScanConfig::default() };
        assert!(soundness_scan(&angelic_catalog(), Mode::Demonic, &config).is_err());
    }

    #[test]
    fn planted_bogus_law_is_caught() {
        let mut cat = angelic_catalog();
        cat.equations.push(Axiom::new("bogus", "dom(x)", "x"));
        let config = ScanConfig { models: 30, substitutions_per_axiom: 0, ..ScanConfig::default() };
        let report = soundness_scan(&cat, Mode::Angelic, &config).unwrap();
        assert!(!report.violations.is_empty());
        for v in &report.violations {
            assert_eq!(v.axiom, "bogus");
            assert!(!v.model.get("x").unwrap().is_coreflexive());
            assert!(v.reverify(&cat, Mode::Angelic));
        }
    }

    #[test]
    fn scan_is_thread_independent() {
        let mut cat = demonic_catalog();
        cat.equations.push(Axiom::new("bogus", "x;y", "y;x"));
        let one = ScanConfig { models: 25, ..ScanConfig::default() };
        let four = ScanConfig { threads: 4, ..one.clone() };
        assert_eq!(soundness_scan(&cat, Mode::Demonic, &one).unwrap(), soundness_scan(&cat, Mode::Demonic, &four).unwrap());
    }

    #[test]
    fn twisted_law_separates_semantics() {
        let (model, witness) = angelic_counterexample_to_demonic_axiom();
        let (l, r) = (p("x;dom(y)"), p("dom(x;y);x"));
        let ang = check_equation(&l, &r, &model, Mode::Angelic).unwrap();
        assert!(!ang.holds);
        assert_eq!(ang.witness, Some(witness));
        assert!(!eval(&l, &model, Mode::Angelic).unwrap().contains(0, 1));
        assert!(eval(&r, &model, Mode::Angelic).unwrap().contains(0, 1));
        assert!(check_equation(&l, &r, &model, Mode::Demonic).unwrap().holds);
    }

    #[test]
    fn cycle_free_examples() {
        assert!(check_cycle_free(&FiniteAlgebra::trivial()).is_cycle_free());
        // three-element chain 0 < 1 < 2
        let meet = (0..3).map(|i| (0..3).map(|j| usize::min(i, j)).collect()).collect();
        assert!(check_cycle_free(&FiniteAlgebra::semilattice(meet).unwrap()).is_cycle_free());

        let a = Relation::from_pairs(2, [(0, 1)]).unwrap();
        let (alg, elems) = FiniteAlgebra::generated_by(std::slice::from_ref(&a), Mode::Demonic).unwrap();
        let idx = |r: &Relation| elems.iter().position(|e| e == r).unwrap();
        let (ia, ida) = (idx(&a), idx(&a.dom()));
        let empty = idx(&Relation::empty(2));
        assert_eq!(alg.mul(ia, ida), empty);
        assert_eq!(alg.dom(empty), empty);
        let report = check_cycle_free(&alg);
        assert!(report
            .violations
            .iter()
            .any(|v| v.law == "domain-prime" && v.assignment[..2] == [ia, ida] && alg.dom(v.assignment[2]) == empty));
    }

    #[test]
    fn smoke_suite() {
        let report = completeness_smoke().unwrap();
        assert_eq!(report.entries.len(), 20);
        assert!(report.all_passed());
        let last = report.entries.last().unwrap();
        assert!(!last.verdict.valid);
    }

    #[test]
    fn rewrite_at_matches_constructed_steps() {
        let cat = demonic_catalog();
        let vars: Vec<String> = ["x", "y"].iter().map(|s| s.to_string()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let step = random_rewrite_step(&mut rng, &cat, &vars, 3);
            let ax = cat.axiom(&step.axiom).unwrap();
            let redone = rewrite_at(&step.before, &step.path, ax, step.orientation, &BTreeMap::new());
            assert_eq!(redone.as_ref(), Some(&step.after));
        }
        let t = rewrite_at(&p("y;(x;dom(z))"), &[1], cat.axiom("dom-twisted").unwrap(), Orientation::LeftToRight, &BTreeMap::new());
        assert_eq!(t, Some(p("y;(dom(x;z);x)")));
    }

    mod props {
        use super::*;
        use crate::relation::eval;
        use crate::strategies;
        use crate::term::out_signature;
        use proptest::prelude::*;

        fn coreflexive(r: &Relation) -> Relation {
            Relation::from_pairs(r.universe(), r.pairs().into_iter().filter(|&(u, v)| u == v)).unwrap()
        }

        proptest! {
            #[test]
            fn rewrites_keep_out_signature(seed in any::<u64>()) {
                let cat = demonic_catalog();
                let vars: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for _ in 0..20 {
                    let step = random_rewrite_step(&mut rng, &cat, &vars, 3);
                    prop_assert_eq!(out_signature(&step.before).unwrap(), out_signature(&step.after).unwrap(), "{}", step.axiom);
                }
            }

            #[test]
            fn angelic_operations_are_monotone(
                t in strategies::term(true),
                rs in strategies::relations(6),
            ) {
                let n = rs[0].universe();
                let mut small = RelationalModel::new(n).unwrap();
                let mut large = RelationalModel::new(n).unwrap();
                for (i, name) in ["x", "y", "z"].iter().enumerate() {
                    small.set(*name, rs[i].clone()).unwrap();
                    large.set(*name, rs[i].join(&rs[i + 3]).unwrap()).unwrap();
                }
                let a = eval(&t, &small, Mode::Angelic).unwrap();
                let b = eval(&t, &large, Mode::Angelic).unwrap();
                prop_assert!(a.is_subset(&b));
            }

            #[test]
            fn domain_elements_form_a_semilattice(rs in strategies::relations(3)) {
                let (a, b) = (&rs[0], &rs[1]);
                let (da, db) = (a.dom(), b.dom());
                prop_assert_eq!(da.angelic(&db).unwrap(), db.angelic(&da).unwrap());
                prop_assert_eq!(da.angelic(&da).unwrap(), da.clone());
                // dom(a) is the least domain element acting as a left unit of a
                prop_assert_eq!(da.angelic(a).unwrap(), a.clone());
                let d = coreflexive(&rs[2]);
                if d.angelic(a).unwrap() == *a {
                    prop_assert!(da.is_subset(&d));
                }
                let e = rs[2].ran();
                prop_assert!(d.angelic(a).unwrap().angelic(&e).unwrap().is_subset(a));
            }
        }
    }
}
