//! Shared test support: an independent reference evaluator for lasso words,
//! deterministic samplers, and proptest strategies.

#![allow(dead_code)]

use deltanorm::formula::{Formula, Node, Proposition};
use deltanorm::lasso::LassoWord;
use proptest::prelude::*;
use std::collections::HashMap;

/// Reference evaluator, independent of `eval_lasso`: unrolls the word to
/// `|prefix| + (size(φ)+1)·|loop|` positions, resolves `U`/`M` by bounded
/// lookahead and the `G`-style obligations by loop periodicity.
pub fn eval_naive(f: &Formula, w: &LassoWord) -> bool {
    let horizon = w.prefix().len() + (f.size() + 1) * w.cycle().len();
    let mut memo: HashMap<(usize, usize), bool> = HashMap::new();
    rec(f, 0, horizon, w, &mut memo)
}

fn rec(
    f: &Formula,
    i: usize,
    horizon: usize,
    w: &LassoWord,
    memo: &mut HashMap<(usize, usize), bool>,
) -> bool {
    let key = (f.key(), i);
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let prefix_len = w.prefix().len();
    let cycle_len = w.cycle().len();
    // All canonical suffixes from position i are covered by this window.
    let window_end = i.max(prefix_len) + cycle_len;
    let v = match f.node() {
        Node::True => true,
        Node::False => false,
        Node::Lit(l) => {
            let idx = w
                .ap()
                .iter()
                .position(|p| p == &l.prop)
                .expect("proposition declared");
            let holds = w.letter_at(i) & (1 << idx) != 0;
            holds == l.positive
        }
        Node::And(a, b) => rec(a, i, horizon, w, memo) && rec(b, i, horizon, w, memo),
        Node::Or(a, b) => rec(a, i, horizon, w, memo) || rec(b, i, horizon, w, memo),
        Node::Next(x) => rec(x, i + 1, horizon, w, memo),
        Node::Until(a, b) => (i..horizon).any(|k| {
            rec(b, k, horizon, w, memo) && (i..k).all(|j| rec(a, j, horizon, w, memo))
        }),
        Node::StrongRelease(a, b) => (i..horizon).any(|k| {
            rec(a, k, horizon, w, memo) && (i..=k).all(|j| rec(b, j, horizon, w, memo))
        }),
        Node::WeakUntil(a, b) => {
            (i..window_end).all(|j| rec(a, j, horizon, w, memo))
                || (i..horizon).any(|k| {
                    rec(b, k, horizon, w, memo) && (i..k).all(|j| rec(a, j, horizon, w, memo))
                })
        }
        Node::Release(a, b) => {
            (i..window_end).all(|j| rec(b, j, horizon, w, memo))
                || (i..horizon).any(|k| {
                    rec(a, k, horizon, w, memo) && (i..=k).all(|j| rec(b, j, horizon, w, memo))
                })
        }
        Node::Gf(x) => (i.max(prefix_len)..window_end).any(|j| rec(x, j, horizon, w, memo)),
        Node::Fg(x) => (i.max(prefix_len)..window_end).all(|j| rec(x, j, horizon, w, memo)),
    };
    memo.insert(key, v);
    v
}

pub fn prop_names() -> Vec<Proposition> {
    ["a", "b", "c"]
        .iter()
        .map(|n| Proposition::new(n).unwrap())
        .collect()
}

/// A tiny deterministic generator for sampling loops in non-proptest tests.
#[derive(Clone)]
pub struct TestRng(u64);

impl TestRng {
    pub fn new(seed: u64) -> Self {
        TestRng(seed | 1)
    }

    pub fn next_u64(&mut self) -> u64 {
        // xorshift64*
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}

/// Deterministic lasso sample over the given propositions, with
/// `|prefix| ≤ 6` and `1 ≤ |loop| ≤ 6`.
pub fn sample_lasso(rng: &mut TestRng, ap: &[Proposition]) -> LassoWord {
    let letters = 1usize << ap.len();
    let plen = rng.below(7);
    let clen = 1 + rng.below(6);
    let prefix = (0..plen).map(|_| rng.below(letters) as u16).collect();
    let cycle = (0..clen).map(|_| rng.below(letters) as u16).collect();
    LassoWord::new(ap.to_vec(), prefix, cycle).unwrap()
}

/// Asserts that two formulas agree on `count` sampled lassos over the union
/// of their propositions.
pub fn assert_lasso_equiv(f: &Formula, g: &Formula, count: usize, seed: u64) {
    let mut ap: Vec<Proposition> = f.props().union(&g.props()).cloned().collect();
    if ap.is_empty() {
        ap = vec![Proposition::new("a").unwrap()];
    }
    let mut rng = TestRng::new(seed);
    for i in 0..count {
        let w = sample_lasso(&mut rng, &ap);
        let vf = deltanorm::eval_lasso(f, &w).unwrap();
        let vg = deltanorm::eval_lasso(g, &w).unwrap();
        assert_eq!(
            vf, vg,
            "disagreement on lasso #{i} `{w}`: `{f}` = {vf}, `{g}` = {vg}"
        );
    }
}

/// Proptest strategy for formulas over `a`, `b`, `c` (all node kinds).
pub fn formula_strategy(max_nodes: u32) -> impl Strategy<Value = Formula> {
    let props = prop_names();
    let leaf = prop_oneof![
        2 => (0..3usize, any::<bool>()).prop_map(move |(i, pos)| {
            let props = prop_names();
            Formula::lit(props[i].clone(), pos)
        }),
        1 => Just(Formula::tt()),
        1 => Just(Formula::ff()),
    ];
    let _ = props;
    leaf.prop_recursive(5, max_nodes, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            inner.clone().prop_map(Formula::next),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::until(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::weak_until(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::release(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::strong_release(a, b)),
            inner.clone().prop_map(Formula::gf),
            inner.prop_map(Formula::fg),
        ]
    })
}

/// Proptest strategy for limit-free formulas.
pub fn limit_free_strategy(max_nodes: u32) -> impl Strategy<Value = Formula> {
    formula_strategy(max_nodes).prop_map(|f| f.expand_limits())
}

/// Proptest strategy for lassos over `a`, `b`, `c`.
pub fn lasso_strategy() -> impl Strategy<Value = LassoWord> {
    (
        proptest::collection::vec(0u16..8, 0..=6),
        proptest::collection::vec(0u16..8, 1..=6),
    )
        .prop_map(|(prefix, cycle)| LassoWord::new(prop_names(), prefix, cycle).unwrap())
}
