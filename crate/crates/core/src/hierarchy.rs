//! The syntactic-future hierarchy `Σᵢ/Πᵢ/Δᵢ` and the classification of
//! formulas into their minimal classes.
//!
//! `Σ₀ = Π₀ = Δ₀` contains the Boolean formulas over literals. `Σᵢ₊₁` extends
//! `Πᵢ` closing under `∧`, `∨`, `X`, `U`, `M`; `Πᵢ₊₁` extends `Σᵢ` closing
//! under `∧`, `∨`, `X`, `R`, `W`; `Δᵢ₊₁` is the Boolean closure of
//! `Σᵢ₊₁ ∪ Πᵢ₊₁`. Limit operators classify as their `G F` / `F G` expansions.

use crate::formula::{Formula, Node};
use alloc::vec::Vec;
use core::cmp::{max, min};
use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassKind {
    Sigma,
    Pi,
    Delta,
}

/// A class tag of the hierarchy. The three level-0 classes coincide, so the
/// constructor canonicalizes them to the `Delta` kind: `Sigma(0)`, `Pi(0)`,
/// and `Delta(0)` compare equal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HierarchyClass {
    kind: ClassKind,
    level: u32,
}

impl HierarchyClass {
    pub fn new(kind: ClassKind, level: u32) -> Self {
        if level == 0 {
            HierarchyClass {
                kind: ClassKind::Delta,
                level: 0,
            }
        } else {
            HierarchyClass { kind, level }
        }
    }

    pub fn sigma(level: u32) -> Self {
        Self::new(ClassKind::Sigma, level)
    }

    pub fn pi(level: u32) -> Self {
        Self::new(ClassKind::Pi, level)
    }

    pub fn delta(level: u32) -> Self {
        Self::new(ClassKind::Delta, level)
    }

    pub fn kind(&self) -> ClassKind {
        self.kind
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Set inclusion between classes: `Σᵢ ⊆ Δᵢ ⊆ Σᵢ₊₁` and dually for `Π`.
    pub fn is_subclass_of(&self, other: &HierarchyClass) -> bool {
        use ClassKind::*;
        match (self.kind, other.kind) {
            (Sigma, Sigma) | (Pi, Pi) | (Delta, Delta) => self.level <= other.level,
            (Sigma, Delta) | (Pi, Delta) => self.level <= other.level,
            _ => self.level < other.level,
        }
    }

    /// The class of the negations of this class's members.
    pub fn dual(&self) -> HierarchyClass {
        let kind = match self.kind {
            ClassKind::Sigma => ClassKind::Pi,
            ClassKind::Pi => ClassKind::Sigma,
            ClassKind::Delta => ClassKind::Delta,
        };
        HierarchyClass::new(kind, self.level)
    }
}

impl fmt::Display for HierarchyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            ClassKind::Sigma => "Sigma",
            ClassKind::Pi => "Pi",
            ClassKind::Delta => "Delta",
        };
        write!(f, "{k}{}", self.level)
    }
}

/// Minimal levels: `sigma` = least i with φ ∈ Σᵢ, `pi` = least i with φ ∈ Πᵢ,
/// `delta` = least i with φ ∈ Δᵢ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Levels {
    pub sigma: u32,
    pub pi: u32,
    pub delta: u32,
}

pub fn levels(f: &Formula) -> Levels {
    match f.node() {
        Node::True | Node::False | Node::Lit(_) => Levels {
            sigma: 0,
            pi: 0,
            delta: 0,
        },
        Node::And(l, r) | Node::Or(l, r) => {
            let a = levels(l);
            let b = levels(r);
            Levels {
                sigma: max(a.sigma, b.sigma),
                pi: max(a.pi, b.pi),
                delta: max(a.delta, b.delta),
            }
        }
        Node::Next(x) => {
            let c = levels(x);
            let sigma = max(1, c.sigma);
            let pi = max(1, c.pi);
            Levels {
                sigma,
                pi,
                delta: min(sigma, pi),
            }
        }
        Node::Until(l, r) | Node::StrongRelease(l, r) => {
            let a = levels(l);
            let b = levels(r);
            let sigma = max(1, max(a.sigma, b.sigma));
            Levels {
                sigma,
                pi: sigma + 1,
                delta: sigma,
            }
        }
        Node::WeakUntil(l, r) | Node::Release(l, r) => {
            let a = levels(l);
            let b = levels(r);
            let pi = max(1, max(a.pi, b.pi));
            Levels {
                sigma: pi + 1,
                pi,
                delta: pi,
            }
        }
        Node::Gf(x) => {
            // G F x
            let c = levels(x);
            let pi = max(1, c.sigma) + 1;
            Levels {
                sigma: pi + 1,
                pi,
                delta: pi,
            }
        }
        Node::Fg(x) => {
            // F G x
            let c = levels(x);
            let sigma = max(1, c.pi) + 1;
            Levels {
                sigma,
                pi: sigma + 1,
                delta: sigma,
            }
        }
    }
}

/// The set of minimal classes containing the formula: one element, or two
/// when the minimal `Σ` and `Π` levels coincide (e.g. `X a`).
pub fn classify(f: &Formula) -> Vec<HierarchyClass> {
    let l = levels(f);
    let mut out = Vec::new();
    if l.delta < l.sigma && l.delta < l.pi {
        out.push(HierarchyClass::delta(l.delta));
    } else if l.sigma < l.pi {
        out.push(HierarchyClass::sigma(l.sigma));
    } else if l.pi < l.sigma {
        out.push(HierarchyClass::pi(l.pi));
    } else if l.sigma == 0 {
        out.push(HierarchyClass::delta(0));
    } else {
        out.push(HierarchyClass::sigma(l.sigma));
        out.push(HierarchyClass::pi(l.pi));
    }
    out
}

/// True iff the formula syntactically belongs to `Δ₂`.
pub fn is_delta2(f: &Formula) -> bool {
    levels(f).delta <= 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn cls(s: &str) -> Vec<HierarchyClass> {
        classify(&parse(s).unwrap())
    }

    #[test]
    fn level_zero_classes_coincide() {
        assert_eq!(HierarchyClass::sigma(0), HierarchyClass::pi(0));
        assert_eq!(HierarchyClass::sigma(0), HierarchyClass::delta(0));
        assert_ne!(HierarchyClass::sigma(1), HierarchyClass::pi(1));
    }

    #[test]
    fn inclusion_order() {
        let s1 = HierarchyClass::sigma(1);
        let p1 = HierarchyClass::pi(1);
        let d1 = HierarchyClass::delta(1);
        let s2 = HierarchyClass::sigma(2);
        assert!(s1.is_subclass_of(&d1));
        assert!(d1.is_subclass_of(&s2));
        assert!(s1.is_subclass_of(&s2));
        assert!(!s1.is_subclass_of(&p1));
        assert!(!p1.is_subclass_of(&s1));
        assert!(HierarchyClass::delta(0).is_subclass_of(&s1));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(cls("a U b"), vec![HierarchyClass::sigma(1)]);
        assert_eq!(
            cls("X a"),
            vec![HierarchyClass::sigma(1), HierarchyClass::pi(1)]
        );
        // Recomputed bottom-up: aWb is Π₁, (aWb)Uc is Σ₂, the whole is Π₃.
        assert_eq!(cls("((a W b) U c) W d"), vec![HierarchyClass::pi(3)]);
        assert_eq!(cls("tt"), vec![HierarchyClass::delta(0)]);
        assert_eq!(cls("(a U b) & (a W b)"), vec![HierarchyClass::delta(1)]);
    }

    #[test]
    fn delta2_examples() {
        assert!(is_delta2(&parse("GF b & FG (a W b)").unwrap()));
        assert!(!is_delta2(&parse("FG (a U b)").unwrap()));
        assert!(is_delta2(&parse("tt").unwrap()));
        assert!(!is_delta2(&parse("F GF a").unwrap()));
    }

    #[test]
    fn classify_respects_negation_duality() {
        for s in ["a U b", "X a", "((a W b) U c) W d", "GF (a W b)", "a & !b"] {
            let f = parse(s).unwrap();
            let mut dual: Vec<HierarchyClass> =
                classify(&f).iter().map(HierarchyClass::dual).collect();
            dual.sort();
            let mut neg = classify(&f.negated());
            neg.sort();
            assert_eq!(neg, dual, "{s}");
        }
    }
}
