//! Formulas with placeholders. A placeholder formula is obtained by punching
//! out every occurrence of a chosen subformula; filling substitutes one
//! replacement at every hole. Holes are always positive: the node kinds carry
//! no negation, so filling is monotone.

use crate::formula::Formula;
use alloc::vec::Vec;

#[derive(Debug, Clone)]
enum HTree {
    Hole,
    /// A subtree without holes, kept shared.
    Intact(Formula),
    /// An inner node; the formula is retained for its node kind.
    Branch(Formula, Vec<HTree>),
}

#[derive(Debug, Clone)]
pub struct FormulaWithHole {
    root: HTree,
    holes: usize,
}

impl FormulaWithHole {
    /// Punches a hole at every occurrence of `target` in `f`. With
    /// `skip_under_limits`, occurrences inside `GF`/`FG` arguments are left
    /// intact. Returns `None` when no occurrence was punched.
    pub fn punch(f: &Formula, target: &Formula, skip_under_limits: bool) -> Option<Self> {
        fn rec(f: &Formula, target: &Formula, skip: bool, holes: &mut usize) -> HTree {
            if f == target {
                *holes += 1;
                return HTree::Hole;
            }
            if skip && matches!(f.node(), crate::formula::Node::Gf(_) | crate::formula::Node::Fg(_))
            {
                return HTree::Intact(f.clone());
            }
            let before = *holes;
            let kids: Vec<HTree> = f
                .children()
                .map(|c| rec(c, target, skip, holes))
                .collect();
            if *holes == before {
                HTree::Intact(f.clone())
            } else {
                HTree::Branch(f.clone(), kids)
            }
        }
        let mut holes = 0;
        let root = rec(f, target, skip_under_limits, &mut holes);
        if holes == 0 {
            None
        } else {
            Some(FormulaWithHole { root, holes })
        }
    }

    pub fn hole_count(&self) -> usize {
        self.holes
    }

    /// Substitutes `x` at every hole.
    pub fn fill(&self, x: &Formula) -> Formula {
        fn rec(t: &HTree, x: &Formula) -> Formula {
            match t {
                HTree::Hole => x.clone(),
                HTree::Intact(f) => f.clone(),
                HTree::Branch(f, kids) => {
                    let kids: Vec<Formula> = kids.iter().map(|k| rec(k, x)).collect();
                    f.with_children(&kids)
                }
            }
        }
        rec(&self.root, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn punch_and_fill() {
        let phi = f("(a U b) W (c | (a U b))");
        let ctx = FormulaWithHole::punch(&phi, &f("a U b"), false).unwrap();
        assert_eq!(ctx.hole_count(), 2);
        assert_eq!(ctx.fill(&f("x")), f("x W (c | x)"));
        assert_eq!(ctx.fill(&f("a U b")), phi);
    }

    #[test]
    fn punch_skips_limit_arguments() {
        let phi = f("(a U b) & GF (a U b)");
        let ctx = FormulaWithHole::punch(&phi, &f("a U b"), true).unwrap();
        assert_eq!(ctx.hole_count(), 1);
        assert_eq!(ctx.fill(&f("ff")), f("ff & GF (a U b)"));
        let ctx = FormulaWithHole::punch(&phi, &f("a U b"), false).unwrap();
        assert_eq!(ctx.hole_count(), 2);
    }

    #[test]
    fn no_occurrence_yields_none() {
        assert!(FormulaWithHole::punch(&f("a & b"), &f("c"), false).is_none());
    }
}
