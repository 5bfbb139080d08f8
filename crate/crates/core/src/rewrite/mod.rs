//! The contextual rewrite normalizer. Three stages establish the three
//! normal-form conditions in order:
//!
//! 1. strong nodes (`U`/`M`) are pulled out from under weak nodes (`W`/`R`);
//! 2. limit subformulas are pulled out from under temporal nodes;
//! 3. weak nodes are eliminated inside `GF` and strong nodes inside `FG`.
//!
//! Each rule application is recorded in a [`RewriteTrace`]; simplification
//! runs after every application.

mod fgx;
mod hole;
mod trace;

pub use fgx::{normalize_fgx, FgxError};
pub use hole::FormulaWithHole;
pub use trace::{RewriteTrace, Rule, Stage, TraceStep};

use crate::formula::{Formula, Node};
use crate::measure::{gfba, is_temporal, ubw};
use crate::simplify::simplify;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StageError {
    NotInOneForm,
    NotInOneTwoForm,
}

impl fmt::Display for StageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StageError::NotInOneForm => write!(f, "input is not in 1-form"),
            StageError::NotInOneTwoForm => write!(f, "input is not in 1-2-form"),
        }
    }
}

impl core::error::Error for StageError {}

/// Strategy switches. `shared_trigger_replacement` additionally replaces, in
/// the contextual rules, every strong node sharing the redex's trigger
/// argument (not only structurally identical occurrences). Off by default:
/// the default replaces exactly the chosen subformula.
#[derive(Debug, Clone, Copy, Default)]
pub struct RewriteOptions {
    pub shared_trigger_replacement: bool,
}

struct Rewriter<'a> {
    steps: Vec<TraceStep>,
    opts: &'a RewriteOptions,
}

impl Rewriter<'_> {
    fn record(&mut self, stage: Stage, rule: Rule, path: &[u16], before: Formula, after: Formula) {
        self.steps.push(TraceStep {
            stage,
            rule,
            path: path.to_vec(),
            before,
            after,
        });
    }
}

fn sat_add(a: u128, b: u128) -> u128 {
    a.saturating_add(b)
}

// ---------------------------------------------------------------- stage 1

/// Is there a `U`/`M` node not under a limit node?
fn has_strong_outside_limits(f: &Formula) -> bool {
    match f.node() {
        Node::Gf(_) | Node::Fg(_) => false,
        Node::Until(..) | Node::StrongRelease(..) => true,
        _ => f.children().any(has_strong_outside_limits),
    }
}

/// The topmost-leftmost `U`/`M` node not under a limit node.
fn top_strong_outside_limits(f: &Formula) -> Option<Formula> {
    match f.node() {
        Node::Gf(_) | Node::Fg(_) => None,
        Node::Until(..) | Node::StrongRelease(..) => Some(f.clone()),
        _ => {
            for c in f.children() {
                if let Some(x) = top_strong_outside_limits(c) {
                    return Some(x);
                }
            }
            None
        }
    }
}

/// For the contextual rules: the `GF` guard argument of a strong node (the
/// right argument of `U`, the left argument of `M`).
fn guard_of(psi: &Formula) -> Formula {
    match psi.node() {
        Node::Until(_, b) => b.clone(),
        Node::StrongRelease(a, _) => a.clone(),
        _ => unreachable!("strong node expected"),
    }
}

/// Replaces strong nodes in `f` (outside limit nodes). In default mode only
/// occurrences equal to `psi`; in shared-trigger mode every strong node of
/// `psi`'s kind with the same trigger argument. `weaken` selects the
/// weakened form, otherwise `ff`.
fn substitute_strong(f: &Formula, psi: &Formula, shared: bool, weaken: bool) -> Formula {
    let replacement = |hit: &Formula| -> Formula {
        if !weaken {
            return Formula::ff();
        }
        match hit.node() {
            Node::Until(a, b) => Formula::weak_until(a.clone(), b.clone()),
            Node::StrongRelease(a, b) => Formula::release(a.clone(), b.clone()),
            _ => unreachable!(),
        }
    };
    let matches_psi = |hit: &Formula| -> bool {
        if hit == psi {
            return true;
        }
        if !shared {
            return false;
        }
        match (hit.node(), psi.node()) {
            (Node::Until(_, b), Node::Until(_, pb)) => b == pb,
            (Node::StrongRelease(a, _), Node::StrongRelease(pa, _)) => a == pa,
            _ => false,
        }
    };
    fn rec(
        f: &Formula,
        pred: &dyn Fn(&Formula) -> bool,
        repl: &dyn Fn(&Formula) -> Formula,
    ) -> Formula {
        if pred(f) {
            return repl(f);
        }
        if matches!(f.node(), Node::Gf(_) | Node::Fg(_)) {
            return f.clone();
        }
        let kids: Vec<Formula> = f.children().map(|c| rec(c, pred, repl)).collect();
        if kids.is_empty() {
            f.clone()
        } else {
            f.with_children(&kids)
        }
    }
    rec(f, &matches_psi, &replacement)
}

fn stage1_rec(f: &Formula, path: &mut Vec<u16>, rw: &mut Rewriter) -> (Formula, u128) {
    if ubw(f) == 0 {
        return (f.clone(), f.size() as u128);
    }
    match f.node() {
        Node::And(..) | Node::Or(..) | Node::Until(..) | Node::StrongRelease(..) | Node::Next(_) => {
            let mut kids = Vec::new();
            let mut raw: u128 = 1;
            for (i, c) in f.children().enumerate() {
                path.push(i as u16);
                let (c2, r) = stage1_rec(c, path, rw);
                path.pop();
                kids.push(c2);
                raw = sat_add(raw, r);
            }
            (f.with_children(&kids), raw)
        }
        Node::WeakUntil(l, r) => {
            if has_strong_outside_limits(r) {
                // φ₁ W φ₂[ψ] ≡ (φ₁ U φ₂[ψ]) ∨ G φ₁
                let rhs = Formula::or(
                    Formula::until(l.clone(), r.clone()),
                    Formula::always(l.clone()),
                );
                rw.record(Stage::One, Rule::WRight, path, f.clone(), rhs);
                path.extend([0, 0]);
                let (l2, rl) = stage1_rec(l, path, rw);
                path.pop();
                path.push(1);
                let (r2, rr) = stage1_rec(r, path, rw);
                path.truncate(path.len() - 2);
                path.push(1);
                let (g2, rg) = stage1_rec(&Formula::always(l.clone()), path, rw);
                path.pop();
                let raw = sat_add(sat_add(rl, rr), sat_add(rg, 2));
                (simplify(&Formula::or(Formula::until(l2, r2), g2)), raw)
            } else {
                let psi = top_strong_outside_limits(l).expect("ubw > 0");
                let guard = guard_of(&psi);
                let rule = match psi.node() {
                    Node::Until(..) => Rule::WLeftUntil,
                    _ => Rule::WLeftStrongRelease,
                };
                let shared = rw.opts.shared_trigger_replacement;
                let weakened = substitute_strong(l, &psi, shared, true);
                let falsed = substitute_strong(l, &psi, shared, false);
                let rho1 = Formula::weak_until(weakened, r.clone());
                let rho3 = Formula::or(r.clone(), Formula::always(falsed));
                let rhs = Formula::or(
                    Formula::and(Formula::gf(guard.clone()), rho1.clone()),
                    Formula::until(l.clone(), rho3.clone()),
                );
                rw.record(Stage::One, rule, path, f.clone(), rhs);
                path.extend([0, 1]);
                let (rho1b, raw1) = stage1_rec(&rho1, path, rw);
                path.truncate(path.len() - 2);
                path.extend([1, 0]);
                let (l2, rawl) = stage1_rec(l, path, rw);
                path.pop();
                path.push(1);
                let (rho3b, raw3) = stage1_rec(&rho3, path, rw);
                path.truncate(path.len() - 2);
                let raw = sat_add(
                    sat_add(raw1, guard.size() as u128 + 3),
                    sat_add(rawl, sat_add(raw3, 1)),
                );
                let out = Formula::or(
                    Formula::and(Formula::gf(guard), rho1b),
                    Formula::until(l2, rho3b),
                );
                (simplify(&out), raw)
            }
        }
        Node::Release(l, r) => {
            if has_strong_outside_limits(l) {
                // φ₁[ψ] R φ₂ ≡ (φ₁[ψ] M φ₂) ∨ G φ₂
                let rhs = Formula::or(
                    Formula::strong_release(l.clone(), r.clone()),
                    Formula::always(r.clone()),
                );
                rw.record(Stage::One, Rule::RLeft, path, f.clone(), rhs);
                path.extend([0, 0]);
                let (l2, rl) = stage1_rec(l, path, rw);
                path.pop();
                path.push(1);
                let (r2, rr) = stage1_rec(r, path, rw);
                path.truncate(path.len() - 2);
                path.push(1);
                let (g2, rg) = stage1_rec(&Formula::always(r.clone()), path, rw);
                path.pop();
                let raw = sat_add(sat_add(rl, rr), sat_add(rg, 2));
                (
                    simplify(&Formula::or(Formula::strong_release(l2, r2), g2)),
                    raw,
                )
            } else {
                let psi = top_strong_outside_limits(r).expect("ubw > 0");
                let guard = guard_of(&psi);
                let rule = match psi.node() {
                    Node::Until(..) => Rule::RRightUntil,
                    _ => Rule::RRightStrongRelease,
                };
                let shared = rw.opts.shared_trigger_replacement;
                let weakened = substitute_strong(r, &psi, shared, true);
                let falsed = substitute_strong(r, &psi, shared, false);
                let rho1 = Formula::release(l.clone(), weakened);
                let rho3 = Formula::or(l.clone(), Formula::always(falsed));
                let rhs = Formula::or(
                    Formula::and(Formula::gf(guard.clone()), rho1.clone()),
                    Formula::strong_release(rho3.clone(), r.clone()),
                );
                rw.record(Stage::One, rule, path, f.clone(), rhs);
                path.extend([0, 1]);
                let (rho1b, raw1) = stage1_rec(&rho1, path, rw);
                path.truncate(path.len() - 2);
                path.extend([1, 0]);
                let (rho3b, raw3) = stage1_rec(&rho3, path, rw);
                path.pop();
                path.push(1);
                let (r2, rawr) = stage1_rec(r, path, rw);
                path.truncate(path.len() - 2);
                let raw = sat_add(
                    sat_add(raw1, guard.size() as u128 + 3),
                    sat_add(rawr, sat_add(raw3, 1)),
                );
                let out = Formula::or(
                    Formula::and(Formula::gf(guard), rho1b),
                    Formula::strong_release(rho3b, r2),
                );
                (simplify(&out), raw)
            }
        }
        _ => unreachable!("ubw > 0 on a leaf or limit node"),
    }
}

/// Stage 1: establishes 1-form (`ubw = 0`). Every `GF` argument introduced is
/// a subformula of the input, and every `FG` subformula of the result already
/// occurred in the input.
pub fn stage1(f: &Formula) -> (Formula, RewriteTrace) {
    stage1_with(f, &RewriteOptions::default())
}

pub fn stage1_with(f: &Formula, opts: &RewriteOptions) -> (Formula, RewriteTrace) {
    let mut rw = Rewriter {
        steps: Vec::new(),
        opts,
    };
    let mut path = Vec::new();
    let (out, raw) = stage1_rec(f, &mut path, &mut rw);
    let out = simplify(&out);
    debug_assert_eq!(ubw(&out), 0);
    let trace = RewriteTrace {
        steps: rw.steps,
        raw_nodes: [raw, 0, 0],
        input_nodes: f.size(),
        final_nodes: out.size(),
    };
    (out, trace)
}

// ---------------------------------------------------------------- stage 2

/// Distinct limit subformulas occurring properly under a temporal node,
/// tagged with their first preorder position.
fn limit_candidates(f: &Formula) -> Vec<(Formula, usize)> {
    fn walk(
        f: &Formula,
        under_temporal: bool,
        idx: &mut usize,
        out: &mut Vec<(Formula, usize)>,
    ) {
        if under_temporal
            && matches!(f.node(), Node::Gf(_) | Node::Fg(_))
            && !out.iter().any(|(g, _)| g == f)
        {
            out.push((f.clone(), *idx));
        }
        *idx += 1;
        let inner = under_temporal || is_temporal(f);
        for c in f.children() {
            walk(c, inner, idx, out);
        }
    }
    let mut out = Vec::new();
    let mut idx = 0;
    walk(f, false, &mut idx, &mut out);
    out
}

// Strictly decreasing measure for the stage-2 loop. Splitting a candidate
// into its tt/ff variants can keep the candidate count equal, but each
// variant has strictly fewer nested limit subformulas.
fn stage2_measure(f: &Formula) -> u64 {
    limit_candidates(f)
        .iter()
        .map(|(c, _)| {
            let inner = c
                .subformulas()
                .iter()
                .filter(|s| *s != c && matches!(s.node(), Node::Gf(_) | Node::Fg(_)))
                .count() as u32;
            3u64.saturating_pow(inner)
        })
        .sum()
}

fn stage2_run(f: &Formula, rw: &mut Rewriter) -> (Formula, u128) {
    let mut cur = f.clone();
    let mut raw = f.size() as u128;
    loop {
        let cands = limit_candidates(&cur);
        if cands.is_empty() {
            return (cur, raw);
        }
        // A minimal candidate (no other candidate inside it), leftmost.
        let (psi, _) = cands
            .iter()
            .filter(|(g, _)| {
                !cands
                    .iter()
                    .any(|(other, _)| other != g && g.contains(other))
            })
            .min_by_key(|(_, at)| *at)
            .expect("nonempty candidate set")
            .clone();
        let ctx = FormulaWithHole::punch(&cur, &psi, false).expect("candidate occurs");
        let rule = match psi.node() {
            Node::Gf(_) => Rule::PullGf,
            _ => Rule::PullFg,
        };
        let rhs = Formula::or(
            Formula::and(psi.clone(), ctx.fill(&Formula::tt())),
            ctx.fill(&Formula::ff()),
        );
        rw.record(Stage::Two, rule, &[], cur.clone(), rhs.clone());
        let before = stage2_measure(&cur);
        cur = simplify(&rhs);
        debug_assert!(stage2_measure(&cur) < before);
        raw = sat_add(sat_add(raw, raw), psi.size() as u128 + 2);
    }
}

/// Stage 2: establishes 1-2-form by pulling limit subformulas out of temporal
/// contexts, minimal limit subformulas first.
pub fn stage2(f: &Formula) -> Result<(Formula, RewriteTrace), StageError> {
    if ubw(f) != 0 {
        return Err(StageError::NotInOneForm);
    }
    let mut rw = Rewriter {
        steps: Vec::new(),
        opts: &RewriteOptions {
            shared_trigger_replacement: false,
        },
    };
    let (out, raw) = stage2_run(f, &mut rw);
    debug_assert_eq!(gfba(&out), 0);
    let trace = RewriteTrace {
        steps: rw.steps,
        raw_nodes: [0, raw, 0],
        input_nodes: f.size(),
        final_nodes: out.size(),
    };
    Ok((out, trace))
}

// ---------------------------------------------------------------- stage 3

/// Obstacle count of a limit formula: weak nodes plus strong-under-weak nodes
/// for `GF`, dually for `FG`. Zero on non-limit formulas.
pub fn obstacles(f: &Formula) -> usize {
    // For GF φ: weak nodes, and strong nodes under weak nodes, inside φ.
    fn gf_obstacles(arg: &Formula) -> usize {
        fn walk(f: &Formula, under_weak: bool, n: &mut usize) {
            match f.node() {
                Node::WeakUntil(a, b) | Node::Release(a, b) => {
                    *n += 1;
                    walk(a, true, n);
                    walk(b, true, n);
                }
                Node::Until(a, b) | Node::StrongRelease(a, b) => {
                    if under_weak {
                        *n += 1;
                    }
                    walk(a, under_weak, n);
                    walk(b, under_weak, n);
                }
                _ => {
                    for c in f.children() {
                        walk(c, under_weak, n);
                    }
                }
            }
        }
        let mut n = 0;
        walk(arg, false, &mut n);
        n
    }
    fn fg_obstacles(arg: &Formula) -> usize {
        fn walk(f: &Formula, under_strong: bool, n: &mut usize) {
            match f.node() {
                Node::Until(a, b) | Node::StrongRelease(a, b) => {
                    *n += 1;
                    walk(a, true, n);
                    walk(b, true, n);
                }
                Node::WeakUntil(a, b) | Node::Release(a, b) => {
                    if under_strong {
                        *n += 1;
                    }
                    walk(a, under_strong, n);
                    walk(b, under_strong, n);
                }
                _ => {
                    for c in f.children() {
                        walk(c, under_strong, n);
                    }
                }
            }
        }
        let mut n = 0;
        walk(arg, false, &mut n);
        n
    }
    match f.node() {
        Node::Gf(arg) => gf_obstacles(arg),
        Node::Fg(arg) => fg_obstacles(arg),
        _ => 0,
    }
}

/// The topmost-leftmost weak (`W`/`R`) node.
fn top_weak(f: &Formula) -> Option<Formula> {
    match f.node() {
        Node::WeakUntil(..) | Node::Release(..) => Some(f.clone()),
        _ => {
            for c in f.children() {
                if let Some(x) = top_weak(c) {
                    return Some(x);
                }
            }
            None
        }
    }
}

fn top_strong(f: &Formula) -> Option<Formula> {
    match f.node() {
        Node::Until(..) | Node::StrongRelease(..) => Some(f.clone()),
        _ => {
            for c in f.children() {
                if let Some(x) = top_strong(c) {
                    return Some(x);
                }
            }
            None
        }
    }
}

fn stage3_walk(f: &Formula, path: &mut Vec<u16>, rw: &mut Rewriter) -> (Formula, u128) {
    match f.node() {
        Node::Gf(arg) => process_limit(true, arg, path, rw),
        Node::Fg(arg) => process_limit(false, arg, path, rw),
        Node::True | Node::False | Node::Lit(_) => (f.clone(), 1),
        _ => {
            let mut kids = Vec::new();
            let mut raw: u128 = 1;
            for (i, c) in f.children().enumerate() {
                path.push(i as u16);
                let (c2, r) = stage3_walk(c, path, rw);
                path.pop();
                kids.push(c2);
                raw = sat_add(raw, r);
            }
            (f.with_children(&kids), raw)
        }
    }
}

/// Substitutes, inside a limit argument, every occurrence of the chosen weak
/// or strong node (or, in shared mode, every node of the same kind sharing
/// its fixed argument).
fn substitute_in_limit(arg: &Formula, chi: &Formula, shared: bool, with: &dyn Fn(&Formula) -> Formula) -> Formula {
    let matches_chi = |hit: &Formula| -> bool {
        if hit == chi {
            return true;
        }
        if !shared {
            return false;
        }
        match (hit.node(), chi.node()) {
            // The irrelevant side may differ: ψ₂ for GF/W, ψ₁ for GF/R,
            // ψ₁ for FG/U, ψ₂ for FG/M.
            (Node::WeakUntil(a, _), Node::WeakUntil(ca, _)) => a == ca,
            (Node::Release(_, b), Node::Release(_, cb)) => b == cb,
            (Node::Until(_, b), Node::Until(_, cb)) => b == cb,
            (Node::StrongRelease(a, _), Node::StrongRelease(ca, _)) => a == ca,
            _ => false,
        }
    };
    fn rec(
        f: &Formula,
        pred: &dyn Fn(&Formula) -> bool,
        with: &dyn Fn(&Formula) -> Formula,
    ) -> Formula {
        if pred(f) {
            return with(f);
        }
        let kids: Vec<Formula> = f.children().map(|c| rec(c, pred, with)).collect();
        if kids.is_empty() {
            f.clone()
        } else {
            f.with_children(&kids)
        }
    }
    rec(arg, &matches_chi, with)
}

fn process_limit(is_gf: bool, arg: &Formula, path: &mut Vec<u16>, rw: &mut Rewriter) -> (Formula, u128) {
    let whole = if is_gf {
        Formula::gf(arg.clone())
    } else {
        Formula::fg(arg.clone())
    };
    let target = if is_gf { top_weak(arg) } else { top_strong(arg) };
    let Some(chi) = target else {
        let raw = whole.size() as u128;
        return (whole, raw);
    };
    let shared = rw.opts.shared_trigger_replacement;
    let strengthen: &dyn Fn(&Formula) -> Formula = &|hit| match hit.node() {
        Node::WeakUntil(a, b) => Formula::until(a.clone(), b.clone()),
        Node::Release(a, b) => Formula::strong_release(a.clone(), b.clone()),
        _ => unreachable!(),
    };
    let weaken: &dyn Fn(&Formula) -> Formula = &|hit| match hit.node() {
        Node::Until(a, b) => Formula::weak_until(a.clone(), b.clone()),
        Node::StrongRelease(a, b) => Formula::release(a.clone(), b.clone()),
        _ => unreachable!(),
    };
    let tt: &dyn Fn(&Formula) -> Formula = &|_| Formula::tt();
    let ff: &dyn Fn(&Formula) -> Formula = &|_| Formula::ff();
    let before_obstacles = obstacles(&whole);
    let (rhs, piece_a, piece_b, piece_c, rule) = if is_gf {
        let (guard, rule) = match chi.node() {
            Node::WeakUntil(a, _) => (a.clone(), Rule::GfElimWeakUntil),
            Node::Release(_, b) => (b.clone(), Rule::GfElimRelease),
            _ => unreachable!(),
        };
        let a = Formula::gf(substitute_in_limit(arg, &chi, shared, strengthen));
        let b = Formula::fg(guard);
        let c = Formula::gf(substitute_in_limit(arg, &chi, shared, tt));
        let rhs = Formula::or(a.clone(), Formula::and(b.clone(), c.clone()));
        (rhs, a, b, c, rule)
    } else {
        let (guard, rule) = match chi.node() {
            Node::Until(_, b) => (b.clone(), Rule::FgElimUntil),
            Node::StrongRelease(a, _) => (a.clone(), Rule::FgElimStrongRelease),
            _ => unreachable!(),
        };
        let a = Formula::fg(substitute_in_limit(arg, &chi, shared, weaken));
        let b = Formula::gf(guard);
        let c = Formula::fg(substitute_in_limit(arg, &chi, shared, ff));
        let rhs = Formula::or(Formula::and(b.clone(), a.clone()), c.clone());
        (rhs, a, b, c, rule)
    };
    rw.record(Stage::Three, rule, path, whole, rhs);
    for piece in [&piece_a, &piece_b, &piece_c] {
        debug_assert!(obstacles(piece) < before_obstacles);
    }
    let (a2, ra) = stage3_walk(&simplify(&piece_a), path, rw);
    let (b2, rb) = stage3_walk(&simplify(&piece_b), path, rw);
    let (c2, rc) = stage3_walk(&simplify(&piece_c), path, rw);
    let out = if is_gf {
        Formula::or(a2, Formula::and(b2, c2))
    } else {
        Formula::or(Formula::and(b2, a2), c2)
    };
    let raw = sat_add(sat_add(ra, rb), sat_add(rc, 2));
    (simplify(&out), raw)
}

/// Stage 3: eliminates weak nodes inside `GF` and strong nodes inside `FG`,
/// recursively processing the freshly produced limit formulas.
pub fn stage3(f: &Formula) -> Result<(Formula, RewriteTrace), StageError> {
    if ubw(f) != 0 {
        return Err(StageError::NotInOneForm);
    }
    if gfba(f) != 0 {
        return Err(StageError::NotInOneTwoForm);
    }
    let mut rw = Rewriter {
        steps: Vec::new(),
        opts: &RewriteOptions {
            shared_trigger_replacement: false,
        },
    };
    let mut path = Vec::new();
    let (out, raw) = stage3_walk(f, &mut path, &mut rw);
    let out = simplify(&out);
    let trace = RewriteTrace {
        steps: rw.steps,
        raw_nodes: [0, 0, raw],
        input_nodes: f.size(),
        final_nodes: out.size(),
    };
    Ok((out, trace))
}

// ------------------------------------------------------------- pipelines

/// The full three-stage normalization with interleaved simplification.
/// Accepts any formula (including `R`/`M` and limit operators).
pub fn normalize_rewrite(f: &Formula) -> (Formula, RewriteTrace) {
    normalize_rewrite_with(f, &RewriteOptions::default())
}

pub fn normalize_rewrite_with(f: &Formula, opts: &RewriteOptions) -> (Formula, RewriteTrace) {
    let input_nodes = f.size();
    let mut rw = Rewriter {
        steps: Vec::new(),
        opts,
    };
    let mut path = Vec::new();
    let (f1, raw1) = stage1_rec(f, &mut path, &mut rw);
    let f1 = simplify(&f1);
    debug_assert_eq!(ubw(&f1), 0);
    let (f2, raw2) = stage2_run(&f1, &mut rw);
    debug_assert_eq!(gfba(&f2), 0);
    let (f3, raw3) = stage3_walk(&f2, &mut path, &mut rw);
    let out = simplify(&f3);
    let trace = RewriteTrace {
        steps: rw.steps,
        raw_nodes: [raw1, raw2, raw3],
        input_nodes,
        final_nodes: out.size(),
    };
    (out, trace)
}

/// Normalalizes into the dual normal form (no `W`/`R` node under a `U`/`M`
/// node) by normalizing the negation and negating back.
pub fn normalize_dual(f: &Formula) -> Formula {
    normalize_rewrite(&f.negated()).0.negated()
}
