//! Constant folding and duplicate-operand elimination. The rule set is
//! deliberately conservative: every rule is a local identity on constants or
//! an idempotence law, so the result is equivalent on every word and never
//! climbs the hierarchy.

use crate::formula::{Formula, Node};
use alloc::vec::Vec;

/// Exhaustive bottom-up application of:
/// `φ∧tt→φ`, `φ∧ff→ff`, `φ∨ff→φ`, `φ∨tt→tt`, idempotence and deduplication
/// of `∧`/`∨` operands, `φ U ff→ff`, `tt W φ→tt`, `φ R tt→tt`, `ff M φ→ff`,
/// `X c→c`, `GF c→c`, `FG c→c` for constants `c`, and full folding of
/// temporal nodes whose two operands are both constants.
pub fn simplify(f: &Formula) -> Formula {
    match f.node() {
        Node::True | Node::False | Node::Lit(_) => f.clone(),
        Node::And(..) => {
            let mut out: Vec<Formula> = Vec::new();
            if !collect(f, true, &mut out) {
                return Formula::ff();
            }
            rebuild(out, true)
        }
        Node::Or(..) => {
            let mut out: Vec<Formula> = Vec::new();
            if !collect(f, false, &mut out) {
                return Formula::tt();
            }
            rebuild(out, false)
        }
        Node::Next(x) => {
            let x = simplify(x);
            match x.node() {
                Node::True | Node::False => x,
                _ => Formula::next(x),
            }
        }
        Node::Gf(x) => {
            let x = simplify(x);
            match x.node() {
                Node::True | Node::False => x,
                _ => Formula::gf(x),
            }
        }
        Node::Fg(x) => {
            let x = simplify(x);
            match x.node() {
                Node::True | Node::False => x,
                _ => Formula::fg(x),
            }
        }
        Node::Until(l, r) => {
            let (l, r) = (simplify(l), simplify(r));
            match (constant(&l), constant(&r)) {
                (_, Some(false)) => Formula::ff(),
                (Some(a), Some(b)) => constf(until_const(a, b)),
                _ => Formula::until(l, r),
            }
        }
        Node::WeakUntil(l, r) => {
            let (l, r) = (simplify(l), simplify(r));
            match (constant(&l), constant(&r)) {
                (Some(true), _) => Formula::tt(),
                (Some(a), Some(b)) => constf(a || b),
                _ => Formula::weak_until(l, r),
            }
        }
        Node::Release(l, r) => {
            let (l, r) = (simplify(l), simplify(r));
            match (constant(&l), constant(&r)) {
                (_, Some(true)) => Formula::tt(),
                (Some(a), Some(b)) => constf(until_const(a, b)),
                _ => Formula::release(l, r),
            }
        }
        Node::StrongRelease(l, r) => {
            let (l, r) = (simplify(l), simplify(r));
            match (constant(&l), constant(&r)) {
                (Some(false), _) => Formula::ff(),
                (Some(a), Some(b)) => constf(a && b),
                _ => Formula::strong_release(l, r),
            }
        }
    }
}

// On constant operands, `l U r` and `l R r` both have the value of `r`.
fn until_const(_l: bool, r: bool) -> bool {
    r
}

fn constant(f: &Formula) -> Option<bool> {
    match f.node() {
        Node::True => Some(true),
        Node::False => Some(false),
        _ => None,
    }
}

fn constf(b: bool) -> Formula {
    if b {
        Formula::tt()
    } else {
        Formula::ff()
    }
}

// Flattens a (con/dis)junction into simplified operands, dropping neutral
// constants and duplicates. Returns false when an absorbing constant occurs.
fn collect(f: &Formula, conj: bool, out: &mut Vec<Formula>) -> bool {
    let parts = match (f.node(), conj) {
        (Node::And(l, r), true) | (Node::Or(l, r), false) => Some((l, r)),
        _ => None,
    };
    if let Some((l, r)) = parts {
        return collect(l, conj, out) && collect(r, conj, out);
    }
    let s = simplify(f);
    match (constant(&s), conj) {
        (Some(true), true) | (Some(false), false) => true,
        (Some(true), false) | (Some(false), true) => false,
        (None, _) => {
            if !out.contains(&s) {
                out.push(s);
            }
            true
        }
    }
}

fn rebuild(mut parts: Vec<Formula>, conj: bool) -> Formula {
    match parts.len() {
        0 => constf(conj),
        1 => parts.pop().unwrap(),
        _ => {
            let mut acc = parts.pop().unwrap();
            while let Some(p) = parts.pop() {
                acc = if conj {
                    Formula::and(p, acc)
                } else {
                    Formula::or(p, acc)
                };
            }
            acc
        }
    }
}
