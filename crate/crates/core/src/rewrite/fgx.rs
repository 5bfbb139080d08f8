//! Normalization inside the unary fragment (only `X`, `F`, `G` over
//! literals). Stage 1 is replaced by a conjunctive-normal-form split of `G`
//! arguments followed by the `G (F ψ ∨ φ) ≡ GF ψ ∨ F(ψ ∧ X G φ) ∨ G φ` rule;
//! stages 2 and 3 are shared with the general system, whose rules degenerate
//! to the fragment's (`ψ U ff` and `tt W ψ` fold away).

use crate::formula::{Formula, Node};
use crate::simplify::simplify;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FgxError {
    pub offending: Formula,
}

impl fmt::Display for FgxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "formula is outside the unary fragment: `{}`",
            self.offending
        )
    }
}

impl core::error::Error for FgxError {}

fn check_fragment(f: &Formula) -> Result<(), FgxError> {
    match f.node() {
        Node::True | Node::False | Node::Lit(_) => Ok(()),
        Node::And(a, b) | Node::Or(a, b) => {
            check_fragment(a)?;
            check_fragment(b)
        }
        Node::Next(x) | Node::Gf(x) | Node::Fg(x) => check_fragment(x),
        Node::Until(l, r) if matches!(l.node(), Node::True) => check_fragment(r),
        Node::WeakUntil(l, r) if matches!(r.node(), Node::False) => check_fragment(l),
        _ => Err(FgxError {
            offending: f.clone(),
        }),
    }
}

/// Distributes `X` over `∧`/`∨` and pushes it through `F`, `G`, and the limit
/// operators (on which it is absorbed), so that Boolean structure and
/// `F`-subformulas surface.
fn push_x(f: &Formula) -> Formula {
    match f.node() {
        Node::True | Node::False | Node::Lit(_) => f.clone(),
        Node::And(a, b) => Formula::and(push_x(a), push_x(b)),
        Node::Or(a, b) => Formula::or(push_x(a), push_x(b)),
        Node::Gf(x) => Formula::gf(push_x(x)),
        Node::Fg(x) => Formula::fg(push_x(x)),
        Node::Until(l, r) => Formula::until(push_x(l), push_x(r)),
        Node::WeakUntil(l, r) => Formula::weak_until(push_x(l), push_x(r)),
        Node::Next(x) => {
            let x = push_x(x);
            match x.node() {
                Node::True | Node::False => x,
                Node::And(a, b) => Formula::and(
                    push_x(&Formula::next(a.clone())),
                    push_x(&Formula::next(b.clone())),
                ),
                Node::Or(a, b) => Formula::or(
                    push_x(&Formula::next(a.clone())),
                    push_x(&Formula::next(b.clone())),
                ),
                // X F ψ ≡ F X ψ and X G ψ ≡ G X ψ.
                Node::Until(l, r) if matches!(l.node(), Node::True) => {
                    Formula::eventually(push_x(&Formula::next(r.clone())))
                }
                Node::WeakUntil(l, r) if matches!(r.node(), Node::False) => {
                    Formula::always(push_x(&Formula::next(l.clone())))
                }
                // Limit formulas are insensitive to X.
                Node::Gf(_) | Node::Fg(_) => x,
                _ => Formula::next(x),
            }
        }
        _ => unreachable!("fragment checked"),
    }
}

fn is_f_node(f: &Formula) -> bool {
    matches!(f.node(), Node::Until(l, _) if matches!(l.node(), Node::True))
}

fn has_f_outside_limits(f: &Formula) -> bool {
    if is_f_node(f) {
        return true;
    }
    match f.node() {
        Node::Gf(_) | Node::Fg(_) => false,
        _ => f.children().any(has_f_outside_limits),
    }
}

/// Conjunctive normal form of a Boolean combination, treating non-Boolean
/// nodes as atoms. Clauses are deduplicated.
fn cnf(f: &Formula) -> Vec<Vec<Formula>> {
    fn rec(f: &Formula) -> Vec<Vec<Formula>> {
        match f.node() {
            Node::And(a, b) => {
                let mut out = rec(a);
                for c in rec(b) {
                    if !out.contains(&c) {
                        out.push(c);
                    }
                }
                out
            }
            Node::Or(a, b) => {
                let left = rec(a);
                let right = rec(b);
                let mut out: Vec<Vec<Formula>> = Vec::new();
                for l in &left {
                    for r in &right {
                        let mut clause = l.clone();
                        for x in r {
                            if !clause.contains(x) {
                                clause.push(x.clone());
                            }
                        }
                        if !out.contains(&clause) {
                            out.push(clause);
                        }
                    }
                }
                out
            }
            _ => alloc::vec![alloc::vec![f.clone()]],
        }
    }
    rec(f)
}

fn disjunction(atoms: &[Formula]) -> Formula {
    let mut out = Formula::ff();
    for (i, a) in atoms.iter().enumerate().rev() {
        out = if i + 1 == atoms.len() {
            a.clone()
        } else {
            Formula::or(a.clone(), out)
        };
    }
    out
}

/// Normalizes `G (∨ atoms)` by pulling out `F`-atoms one at a time:
/// `G (F ψ ∨ φ) ≡ GF ψ ∨ F (ψ ∧ X G φ) ∨ G φ`.
fn handle_clause(atoms: &[Formula]) -> Formula {
    if let Some(fatom) = atoms.iter().find(|a| is_f_node(a)) {
        let Node::Until(_, psi) = fatom.node() else {
            unreachable!()
        };
        let rest: Vec<Formula> = atoms.iter().filter(|a| *a != fatom).cloned().collect();
        let g_rest = handle_clause(&rest);
        simplify(&Formula::or(
            Formula::gf(psi.clone()),
            Formula::or(
                Formula::eventually(Formula::and(psi.clone(), Formula::next(g_rest.clone()))),
                g_rest,
            ),
        ))
    } else {
        simplify(&Formula::always(disjunction(atoms)))
    }
}

fn fgx_stage1(f: &Formula) -> Formula {
    match f.node() {
        Node::True | Node::False | Node::Lit(_) | Node::Gf(_) | Node::Fg(_) => f.clone(),
        Node::And(a, b) => Formula::and(fgx_stage1(a), fgx_stage1(b)),
        Node::Or(a, b) => Formula::or(fgx_stage1(a), fgx_stage1(b)),
        Node::Next(x) => Formula::next(fgx_stage1(x)),
        Node::Until(l, r) => {
            debug_assert!(matches!(l.node(), Node::True));
            Formula::eventually(fgx_stage1(r))
        }
        Node::WeakUntil(l, r) => {
            debug_assert!(matches!(r.node(), Node::False));
            let inner = push_x(&simplify(&fgx_stage1(l)));
            if !has_f_outside_limits(&inner) {
                return Formula::always(inner);
            }
            let clauses = cnf(&inner);
            let mut out = Formula::tt();
            for (i, clause) in clauses.iter().enumerate() {
                let g = handle_clause(clause);
                out = if i == 0 { g } else { Formula::and(out, g) };
            }
            out
        }
        _ => unreachable!("fragment checked"),
    }
}

/// Normal form within the unary fragment: the result contains no `U` other
/// than `tt U ·` and no `W` other than `· W ff`.
pub fn normalize_fgx(f: &Formula) -> Result<Formula, FgxError> {
    check_fragment(f)?;
    let staged = simplify(&fgx_stage1(&push_x(f)));
    let (out, _) = super::stage2(&staged).expect("fgx stage 1 yields 1-form");
    let (out, _) = super::stage3(&out).expect("stage 2 yields 1-2-form");
    Ok(simplify(&out))
}
