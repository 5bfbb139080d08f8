//! Closed-form normalization: a well-founded basis of candidate limit
//! formulas is extracted from the input, and for every context (a subset of
//! the basis assumed to hold) three syntactic transformations produce
//! low-level approximants of the formula:
//!
//! * [`eval_nu`] rewrites into `Π₁` (only `X`/`W`/`R` remain), resolving each
//!   `U`/`M` by whether its trigger is infinitely often true in the context;
//! * [`eval_mu`] is the dual, rewriting into `Σ₁`;
//! * [`flatten`] rewrites into `Σ₂`, discharging `W`/`R` obligations through
//!   `G`-guarded `eval_nu` approximants.
//!
//! The big disjunction over all contexts of `flatten ∧ ⋀ FG(eval_nu) ∧
//! ⋀ GF(eval_mu)` is equivalent to the input and lands in `Δ₂`.

use crate::formula::{Formula, Node};
use crate::simplify::simplify;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

/// One element of the basis: `GF ψ` or `FG ψ`, stored by its argument.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum BasisElem {
    Gf(Formula),
    Fg(Formula),
}

impl BasisElem {
    pub fn argument(&self) -> &Formula {
        match self {
            BasisElem::Gf(x) | BasisElem::Fg(x) => x,
        }
    }

    pub fn formula(&self) -> Formula {
        match self {
            BasisElem::Gf(x) => Formula::gf(x.clone()),
            BasisElem::Fg(x) => Formula::fg(x.clone()),
        }
    }
}

/// The basis of a formula: `GF ψ` for every right argument of a `U` and left
/// argument of an `M` subformula, `FG ψ` for every left argument of a `W` and
/// right argument of an `R` subformula, together with the strict subformula
/// order on arguments (ignoring the limit operator on top).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Basis {
    /// Arguments `ψ` with `GF ψ` in the basis, in canonical (structural) order.
    pub gf: Vec<Formula>,
    /// Arguments `ψ` with `FG ψ` in the basis, in canonical order.
    pub fg: Vec<Formula>,
    order: BTreeMap<BasisElem, BTreeSet<BasisElem>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitOperatorError;

impl fmt::Display for LimitOperatorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "limit operator encountered; expand GF/FG first")
    }
}

impl core::error::Error for LimitOperatorError {}

impl Basis {
    pub fn elements(&self) -> impl Iterator<Item = BasisElem> + '_ {
        self.gf
            .iter()
            .cloned()
            .map(BasisElem::Gf)
            .chain(self.fg.iter().cloned().map(BasisElem::Fg))
    }

    /// The strict down-set `↓ψ` of a basis element.
    pub fn strict_down_set(&self, elem: &BasisElem) -> &BTreeSet<BasisElem> {
        static EMPTY: BTreeSet<BasisElem> = BTreeSet::new();
        self.order.get(elem).unwrap_or(&EMPTY)
    }
}

pub fn compute_basis(f: &Formula) -> Result<Basis, LimitOperatorError> {
    if f.contains_limit() {
        return Err(LimitOperatorError);
    }
    let mut gf: BTreeSet<Formula> = BTreeSet::new();
    let mut fg: BTreeSet<Formula> = BTreeSet::new();
    for sub in f.subformulas() {
        match sub.node() {
            Node::Until(_, r) => {
                gf.insert(r.clone());
            }
            Node::StrongRelease(l, _) => {
                gf.insert(l.clone());
            }
            Node::WeakUntil(l, _) => {
                fg.insert(l.clone());
            }
            Node::Release(_, r) => {
                fg.insert(r.clone());
            }
            _ => {}
        }
    }
    let gf: Vec<Formula> = gf.into_iter().collect();
    let fg: Vec<Formula> = fg.into_iter().collect();
    let mut order = BTreeMap::new();
    let elems: Vec<BasisElem> = gf
        .iter()
        .cloned()
        .map(BasisElem::Gf)
        .chain(fg.iter().cloned().map(BasisElem::Fg))
        .collect();
    for hi in &elems {
        let mut down = BTreeSet::new();
        for lo in &elems {
            if lo.argument() != hi.argument() && hi.argument().contains(lo.argument()) {
                down.insert(lo.clone());
            }
        }
        order.insert(hi.clone(), down);
    }
    Ok(Basis { gf, fg, order })
}

/// A context: the subset `m` of GF-basis arguments and `n` of FG-basis
/// arguments assumed to hold.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Context {
    pub m: BTreeSet<Formula>,
    pub n: BTreeSet<Formula>,
}

/// The `Π₁` approximant of a limit-free `ψ` under GF-context `m`:
/// homomorphic except `ψ₁ U ψ₂ ↦ eval_nu(ψ₁) W eval_nu(ψ₂)` if `ψ₂ ∈ m` else
/// `ff`, and `ψ₁ M ψ₂ ↦ eval_nu(ψ₁) R eval_nu(ψ₂)` if `ψ₁ ∈ m` else `ff`.
pub fn eval_nu(f: &Formula, m: &BTreeSet<Formula>) -> Formula {
    match f.node() {
        Node::True | Node::False | Node::Lit(_) => f.clone(),
        Node::And(a, b) => Formula::and(eval_nu(a, m), eval_nu(b, m)),
        Node::Or(a, b) => Formula::or(eval_nu(a, m), eval_nu(b, m)),
        Node::Next(x) => Formula::next(eval_nu(x, m)),
        Node::WeakUntil(a, b) => Formula::weak_until(eval_nu(a, m), eval_nu(b, m)),
        Node::Release(a, b) => Formula::release(eval_nu(a, m), eval_nu(b, m)),
        Node::Until(a, b) => {
            if m.contains(b) {
                Formula::weak_until(eval_nu(a, m), eval_nu(b, m))
            } else {
                Formula::ff()
            }
        }
        Node::StrongRelease(a, b) => {
            if m.contains(a) {
                Formula::release(eval_nu(a, m), eval_nu(b, m))
            } else {
                Formula::ff()
            }
        }
        Node::Gf(_) | Node::Fg(_) => unreachable!("eval_nu expects limit-free input"),
    }
}

/// The `Σ₁` approximant of a limit-free `ψ` under FG-context `n`: the dual of
/// `eval_nu`; homomorphic except `ψ₁ W ψ₂ ↦ tt` if `ψ₁ ∈ n` else
/// `eval_mu(ψ₁) U eval_mu(ψ₂)`, and `ψ₁ R ψ₂ ↦ tt` if `ψ₂ ∈ n` else
/// `eval_mu(ψ₁) M eval_mu(ψ₂)`.
pub fn eval_mu(f: &Formula, n: &BTreeSet<Formula>) -> Formula {
    match f.node() {
        Node::True | Node::False | Node::Lit(_) => f.clone(),
        Node::And(a, b) => Formula::and(eval_mu(a, n), eval_mu(b, n)),
        Node::Or(a, b) => Formula::or(eval_mu(a, n), eval_mu(b, n)),
        Node::Next(x) => Formula::next(eval_mu(x, n)),
        Node::Until(a, b) => Formula::until(eval_mu(a, n), eval_mu(b, n)),
        Node::StrongRelease(a, b) => Formula::strong_release(eval_mu(a, n), eval_mu(b, n)),
        Node::WeakUntil(a, b) => {
            if n.contains(a) {
                Formula::tt()
            } else {
                Formula::until(eval_mu(a, n), eval_mu(b, n))
            }
        }
        Node::Release(a, b) => {
            if n.contains(b) {
                Formula::tt()
            } else {
                Formula::strong_release(eval_mu(a, n), eval_mu(b, n))
            }
        }
        Node::Gf(_) | Node::Fg(_) => unreachable!("eval_mu expects limit-free input"),
    }
}

/// The `Σ₂` approximant of a limit-free `φ` under GF-context `m`:
/// homomorphic for `∨`, `∧`, `X`, `U`, `M`;
/// `ψ₁ W ψ₂ ↦ flatten(ψ₁) U (flatten(ψ₂) ∨ G eval_nu(ψ₁))` and
/// `ψ₁ R ψ₂ ↦ (flatten(ψ₁) ∨ G eval_nu(ψ₂)) M flatten(ψ₂)`.
pub fn flatten(f: &Formula, m: &BTreeSet<Formula>) -> Formula {
    match f.node() {
        Node::True | Node::False | Node::Lit(_) => f.clone(),
        Node::And(a, b) => Formula::and(flatten(a, m), flatten(b, m)),
        Node::Or(a, b) => Formula::or(flatten(a, m), flatten(b, m)),
        Node::Next(x) => Formula::next(flatten(x, m)),
        Node::Until(a, b) => Formula::until(flatten(a, m), flatten(b, m)),
        Node::StrongRelease(a, b) => Formula::strong_release(flatten(a, m), flatten(b, m)),
        Node::WeakUntil(a, b) => Formula::until(
            flatten(a, m),
            Formula::or(flatten(b, m), Formula::always(eval_nu(a, m))),
        ),
        Node::Release(a, b) => Formula::strong_release(
            Formula::or(flatten(a, m), Formula::always(eval_nu(b, m))),
            flatten(b, m),
        ),
        Node::Gf(_) | Node::Fg(_) => unreachable!("flatten expects limit-free input"),
    }
}

/// One context's contribution to the closed-form disjunction, split into its
/// `Σ₂` and `Π₂` halves.
#[derive(Debug, Clone)]
pub struct ContextDisjunct {
    pub context: Context,
    /// `flatten(φ, M) ∧ ⋀_{ψ∈N} FG(eval_nu(ψ, M))`, simplified.
    pub sigma_part: Formula,
    /// `⋀_{ψ∈M} GF(eval_mu(ψ, N))`, simplified.
    pub pi_part: Formula,
    /// `sigma_part ∧ pi_part`, simplified.
    pub formula: Formula,
}

/// The full closed-form normalization of a formula.
#[derive(Debug, Clone)]
pub struct ClosedForm {
    pub basis: Basis,
    /// Number of contexts enumerated, `2^(|gf| + |fg|)`.
    pub contexts_total: usize,
    /// The disjuncts that did not simplify to `ff`, in enumeration order.
    pub disjuncts: Vec<ContextDisjunct>,
    pub formula: Formula,
}

/// Computes the closed-form normalization. Limit operators in the input are
/// expanded to their `G F` / `F G` encodings first.
pub fn closed_form(f: &Formula) -> ClosedForm {
    let f = if f.contains_limit() {
        f.expand_limits()
    } else {
        f.clone()
    };
    let basis = compute_basis(&f).expect("limit-free after expansion");
    let contexts_total = 1usize << (basis.gf.len() + basis.fg.len());
    let mut disjuncts = Vec::new();
    // Binary-counter enumeration over the canonical basis ordering.
    for m_bits in 0u64..(1u64 << basis.gf.len()) {
        let m: BTreeSet<Formula> = basis
            .gf
            .iter()
            .enumerate()
            .filter(|(i, _)| m_bits & (1 << i) != 0)
            .map(|(_, x)| x.clone())
            .collect();
        let flat = flatten(&f, &m);
        for n_bits in 0u64..(1u64 << basis.fg.len()) {
            let n: BTreeSet<Formula> = basis
                .fg
                .iter()
                .enumerate()
                .filter(|(i, _)| n_bits & (1 << i) != 0)
                .map(|(_, x)| x.clone())
                .collect();
            let mut sigma = flat.clone();
            for psi in &n {
                sigma = Formula::and(sigma, Formula::fg(eval_nu(psi, &m)));
            }
            let mut pi = Formula::tt();
            for psi in &m {
                pi = Formula::and(pi, Formula::gf(eval_mu(psi, &n)));
            }
            let sigma = simplify(&sigma);
            let pi = simplify(&pi);
            let formula = simplify(&Formula::and(sigma.clone(), pi.clone()));
            if matches!(formula.node(), Node::False) {
                continue;
            }
            disjuncts.push(ContextDisjunct {
                context: Context { m: m.clone(), n },
                sigma_part: sigma,
                pi_part: pi,
                formula,
            });
        }
    }
    let mut out = Formula::ff();
    for (i, d) in disjuncts.iter().enumerate().rev() {
        out = if i + 1 == disjuncts.len() {
            d.formula.clone()
        } else {
            Formula::or(d.formula.clone(), out)
        };
    }
    let formula = simplify(&out);
    ClosedForm {
        basis,
        contexts_total,
        disjuncts,
        formula,
    }
}

/// The closed-form normalized formula; always in `Δ₂` (indeed in normal
/// form).
pub fn normalize_closed_form(f: &Formula) -> Formula {
    closed_form(f).formula
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn set(xs: &[&str]) -> BTreeSet<Formula> {
        xs.iter().map(|s| f(s)).collect()
    }

    #[test]
    fn basis_of_running_example() {
        let b = compute_basis(&f("((a W b) U c) W d")).unwrap();
        assert_eq!(b.gf, vec![f("c")]);
        let fg: BTreeSet<Formula> = b.fg.iter().cloned().collect();
        assert_eq!(fg, set(&["(a W b) U c", "a"]));
        // GF c and FG a precede FG ((a W b) U c).
        let top = BasisElem::Fg(f("(a W b) U c"));
        let down = b.strict_down_set(&top);
        assert!(down.contains(&BasisElem::Gf(f("c"))));
        assert!(down.contains(&BasisElem::Fg(f("a"))));
        assert_eq!(down.len(), 2);
        assert!(b.strict_down_set(&BasisElem::Gf(f("c"))).is_empty());
    }

    #[test]
    fn basis_simple_cases() {
        let b = compute_basis(&f("a U b")).unwrap();
        assert_eq!(b.gf, vec![f("b")]);
        assert!(b.fg.is_empty());
        let b = compute_basis(&f("a")).unwrap();
        assert!(b.gf.is_empty() && b.fg.is_empty());
        assert!(compute_basis(&f("GF a")).is_err());
        // M contributes its left argument to GF, R its right argument to FG.
        let b = compute_basis(&f("(a M b) & (c R a)")).unwrap();
        assert_eq!(b.gf, vec![f("a")]);
        assert_eq!(b.fg, vec![f("a")]);
    }

    #[test]
    fn eval_nu_examples() {
        assert_eq!(
            eval_nu(&f("(a W b) U c"), &set(&["c"])),
            f("(a W b) W c")
        );
        assert_eq!(eval_nu(&f("(a W b) U c"), &set(&[])), f("ff"));
        assert_eq!(eval_nu(&f("a"), &set(&[])), f("a"));
        assert_eq!(eval_nu(&f("a M b"), &set(&["a"])), f("a R b"));
        assert_eq!(eval_nu(&f("a M b"), &set(&[])), f("ff"));
    }

    #[test]
    fn eval_mu_examples() {
        assert_eq!(eval_mu(&f("a W b"), &set(&[])), f("a U b"));
        assert_eq!(eval_mu(&f("a W b"), &set(&["a"])), f("tt"));
        assert_eq!(eval_mu(&f("b"), &set(&[])), f("b"));
        assert_eq!(eval_mu(&f("a R b"), &set(&["b"])), f("tt"));
        assert_eq!(eval_mu(&f("a R b"), &set(&[])), f("a M b"));
    }

    #[test]
    fn eval_mu_is_the_dual_of_eval_nu() {
        // eval_mu(ψ, n) = ¬ eval_nu(¬ψ, { ¬χ : χ in basis fg-args, χ ∉ n })
        for s in ["a W b", "a R b", "(a W b) U c", "x W (a R b)"] {
            let psi = parse(s).unwrap();
            let basis = compute_basis(&psi).unwrap();
            for bits in 0u32..(1 << basis.fg.len()) {
                let n: BTreeSet<Formula> = basis
                    .fg
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| bits & (1 << i) != 0)
                    .map(|(_, x)| x.clone())
                    .collect();
                let dual_m: BTreeSet<Formula> = basis
                    .fg
                    .iter()
                    .filter(|x| !n.contains(x))
                    .map(|x| x.negated())
                    .collect();
                assert_eq!(
                    eval_mu(&psi, &n),
                    eval_nu(&psi.negated(), &dual_m).negated(),
                    "{s} with n={n:?}"
                );
            }
        }
    }

    #[test]
    fn flatten_examples() {
        // G a = a W ff, so flatten(G a, {}) = a U (ff ∨ G a).
        assert_eq!(f("G a").to_string(), "G a");
        assert_eq!(flatten(&f("G a"), &set(&[])), f("a U (ff | G a)"));
        assert_eq!(flatten(&f("a U b"), &set(&["b"])), f("a U b"));
        let m = set(&["c"]);
        assert_eq!(
            flatten(&f("((a W b) U c) W d"), &m),
            f("((a U (b | G a)) U c) U (d | G ((a W b) W c))")
        );
    }

    #[test]
    fn flatten_depends_only_on_gf_part() {
        let phi = f("((a W b) U c) W d");
        let basis = compute_basis(&phi).unwrap();
        let m = set(&["c"]);
        let mut m_plus: BTreeSet<Formula> = m.clone();
        m_plus.extend(basis.fg.iter().cloned().map(|x| x));
        // Extra non-GF members do not change the result.
        assert_eq!(flatten(&phi, &m), flatten(&phi, &m_plus));
    }

    #[test]
    fn closed_form_context_count() {
        let run = closed_form(&f("((a W b) U c) W d"));
        assert_eq!(run.contexts_total, 8);
        assert!(run.disjuncts.len() <= 8);
        assert!(crate::hierarchy::is_delta2(&run.formula));
    }

    #[test]
    fn closed_form_of_pure_boolean_formula_is_itself() {
        assert_eq!(normalize_closed_form(&f("a")), f("a"));
        assert_eq!(normalize_closed_form(&f("a & !b")), f("a & !b"));
        assert_eq!(normalize_closed_form(&f("tt")), f("tt"));
    }
}
