//! Proptest generators shared by the unit tests.

use proptest::prelude::*;

use crate::relation::{Relation, RelationalModel};
use crate::term::Term;

pub fn var_name() -> impl Strategy<Value = String> {
    prop_oneof![Just("x".to_string()), Just("y".to_string()), Just("z".to_string()), "[a-w][a-z0-9_]{0,3}"]
        .prop_filter("reserved word", |s| s != "dom" && s != "ran")
}

/// Terms over `x`, `y`, `z` of bounded depth.
pub fn term(allow_join: bool) -> impl Strategy<Value = Term> {
    term_over(prop_oneof![Just("x"), Just("y"), Just("z")].prop_map(Term::var).boxed(), allow_join)
}

/// Terms with arbitrary variable names, for syntax tests.
pub fn any_named_term() -> impl Strategy<Value = Term> {
    term_over(var_name().prop_map(Term::var).boxed(), true)
}

fn term_over(leaf: BoxedStrategy<Term>, allow_join: bool) -> impl Strategy<Value = Term> {
    leaf.prop_recursive(5, 40, 2, move |inner| {
        let base = prop_oneof![
            inner.clone().prop_map(Term::dom),
            inner.clone().prop_map(Term::ran),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Term::comp(l, r)),
        ];
        if allow_join {
            prop_oneof![3 => base, 1 => (inner.clone(), inner).prop_map(|(l, r)| Term::join(l, r))].boxed()
        } else {
            base.boxed()
        }
    })
}

pub fn relation(n: usize) -> impl Strategy<Value = Relation> {
    proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
        Relation::from_pairs(n, (0..n * n).filter(|&i| bits[i]).map(|i| (i / n, i % n))).expect("in range")
    })
}

/// A universe size with `k` relations over it.
pub fn relations(k: usize) -> impl Strategy<Value = Vec<Relation>> {
    (1usize..=5).prop_flat_map(move |n| proptest::collection::vec(relation(n), k))
}

/// A model interpreting `x`, `y`, `z`.
pub fn model() -> impl Strategy<Value = RelationalModel> {
    relations(3).prop_map(|rs| {
        let mut m = RelationalModel::new(rs[0].universe()).expect("non-empty");
        for (name, r) in ["x", "y", "z"].iter().zip(rs) {
            m.set(*name, r).expect("same universe");
        }
        m
    })
}
