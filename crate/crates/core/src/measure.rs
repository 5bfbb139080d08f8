//! Structural measures driving the rewrite system and the normal-form check.

use crate::formula::{Formula, Node};
use alloc::collections::BTreeSet;

/// `nodes`: syntax tree size. `ubw`: number of `U`/`M` nodes under a `W`/`R`
/// node but not under a limit node. `gfba`: number of distinct limit formulas
/// occurring properly under a temporal node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Measures {
    pub nodes: usize,
    pub ubw: usize,
    pub gfba: usize,
}

pub fn measures(f: &Formula) -> Measures {
    Measures {
        nodes: f.size(),
        ubw: ubw(f),
        gfba: gfba(f),
    }
}

pub fn ubw(f: &Formula) -> usize {
    fn walk(f: &Formula, under_w: bool, n: &mut usize) {
        match f.node() {
            Node::Gf(_) | Node::Fg(_) => {}
            Node::Until(l, r) | Node::StrongRelease(l, r) => {
                if under_w {
                    *n += 1;
                }
                walk(l, under_w, n);
                walk(r, under_w, n);
            }
            Node::WeakUntil(l, r) | Node::Release(l, r) => {
                walk(l, true, n);
                walk(r, true, n);
            }
            _ => {
                for c in f.children() {
                    walk(c, under_w, n);
                }
            }
        }
    }
    let mut n = 0;
    walk(f, false, &mut n);
    n
}

pub fn gfba(f: &Formula) -> usize {
    fn walk(f: &Formula, under_temporal: bool, out: &mut BTreeSet<Formula>) {
        if under_temporal && matches!(f.node(), Node::Gf(_) | Node::Fg(_)) {
            out.insert(f.clone());
        }
        let inner = under_temporal || is_temporal(f);
        for c in f.children() {
            walk(c, inner, out);
        }
    }
    let mut out = BTreeSet::new();
    walk(f, false, &mut out);
    out.len()
}

pub fn is_temporal(f: &Formula) -> bool {
    matches!(
        f.node(),
        Node::Next(_)
            | Node::Until(..)
            | Node::WeakUntil(..)
            | Node::Release(..)
            | Node::StrongRelease(..)
            | Node::Gf(_)
            | Node::Fg(_)
    )
}

/// How far along the normalization pipeline a formula is. `Normal` requires:
/// no `U`/`M` node under a `W`/`R` node, no limit node under a temporal node,
/// and no `W`/`R` node under a `GF` node nor `U`/`M` node under an `FG` node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum FormStatus {
    Normal,
    OneTwoForm,
    OneForm,
    Unnormalized,
}

pub fn form_status(f: &Formula) -> FormStatus {
    if is_normal_form(f) {
        FormStatus::Normal
    } else if ubw(f) == 0 {
        if gfba(f) == 0 {
            FormStatus::OneTwoForm
        } else {
            FormStatus::OneForm
        }
    } else {
        FormStatus::Unnormalized
    }
}

fn is_normal_form(f: &Formula) -> bool {
    no_strong_under_weak(f, false) && no_limit_under_temporal(f, false) && limit_args_clean(f)
}

fn no_strong_under_weak(f: &Formula, under_w: bool) -> bool {
    match f.node() {
        Node::Until(l, r) | Node::StrongRelease(l, r) => {
            !under_w && no_strong_under_weak(l, under_w) && no_strong_under_weak(r, under_w)
        }
        Node::WeakUntil(l, r) | Node::Release(l, r) => {
            no_strong_under_weak(l, true) && no_strong_under_weak(r, true)
        }
        _ => f.children().all(|c| no_strong_under_weak(c, under_w)),
    }
}

fn no_limit_under_temporal(f: &Formula, under_temporal: bool) -> bool {
    if under_temporal && matches!(f.node(), Node::Gf(_) | Node::Fg(_)) {
        return false;
    }
    let inner = under_temporal || is_temporal(f);
    f.children().all(|c| no_limit_under_temporal(c, inner))
}

fn limit_args_clean(f: &Formula) -> bool {
    fn has_weak(f: &Formula) -> bool {
        matches!(f.node(), Node::WeakUntil(..) | Node::Release(..))
            || f.children().any(has_weak)
    }
    fn has_strong(f: &Formula) -> bool {
        matches!(f.node(), Node::Until(..) | Node::StrongRelease(..))
            || f.children().any(has_strong)
    }
    match f.node() {
        Node::Gf(x) => !has_weak(x) && limit_args_clean(x),
        Node::Fg(x) => !has_strong(x) && limit_args_clean(x),
        _ => f.children().all(limit_args_clean),
    }
}
