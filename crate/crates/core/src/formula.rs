//! Formula representation: a negation normal form syntax tree with the limit
//! operators `GF` and `FG` as first-class node kinds. Negation exists only as
//! literal polarity, so the type cannot represent a formula outside NNF.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::sync::Arc;
use core::fmt;

/// An atomic proposition. Names are nonempty, start with a letter, and
/// continue with letters, digits, or underscores. Equality is name equality.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Proposition(Arc<str>);

impl Proposition {
    pub fn new(name: &str) -> Result<Self, InvalidName> {
        let mut chars = name.chars();
        let ok = match chars.next() {
            Some(c) if c.is_ascii_alphabetic() => {
                chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
            }
            _ => false,
        };
        if ok {
            Ok(Proposition(Arc::from(name)))
        } else {
            Err(InvalidName(String::from(name)))
        }
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Proposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvalidName(pub String);

impl fmt::Display for InvalidName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid proposition name `{}`", self.0)
    }
}

impl core::error::Error for InvalidName {}

/// A possibly negated proposition.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub prop: Proposition,
    pub positive: bool,
}

/// Node kinds of the syntax tree. `F φ` is represented as `tt U φ` and `G φ`
/// as `φ W ff`; the printer restores the abbreviations.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    True,
    False,
    Lit(Literal),
    And(Formula, Formula),
    Or(Formula, Formula),
    Next(Formula),
    Until(Formula, Formula),
    WeakUntil(Formula, Formula),
    Release(Formula, Formula),
    StrongRelease(Formula, Formula),
    Gf(Formula),
    Fg(Formula),
}

/// A formula in negation normal form. Clones share the underlying tree, so
/// subtrees reused across derived formulas occupy memory once.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Formula(Arc<Node>);

impl Formula {
    pub fn node(&self) -> &Node {
        &self.0
    }

    /// Address of the shared node. Stable while this formula (or any clone)
    /// is alive; useful as a memoization key, since equal addresses imply
    /// structural equality.
    pub fn key(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    pub fn tt() -> Formula {
        Formula(Arc::new(Node::True))
    }

    pub fn ff() -> Formula {
        Formula(Arc::new(Node::False))
    }

    pub fn lit(prop: Proposition, positive: bool) -> Formula {
        Formula(Arc::new(Node::Lit(Literal { prop, positive })))
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula(Arc::new(Node::And(l, r)))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula(Arc::new(Node::Or(l, r)))
    }

    pub fn next(x: Formula) -> Formula {
        Formula(Arc::new(Node::Next(x)))
    }

    pub fn until(l: Formula, r: Formula) -> Formula {
        Formula(Arc::new(Node::Until(l, r)))
    }

    pub fn weak_until(l: Formula, r: Formula) -> Formula {
        Formula(Arc::new(Node::WeakUntil(l, r)))
    }

    pub fn release(l: Formula, r: Formula) -> Formula {
        Formula(Arc::new(Node::Release(l, r)))
    }

    pub fn strong_release(l: Formula, r: Formula) -> Formula {
        Formula(Arc::new(Node::StrongRelease(l, r)))
    }

    pub fn gf(x: Formula) -> Formula {
        Formula(Arc::new(Node::Gf(x)))
    }

    pub fn fg(x: Formula) -> Formula {
        Formula(Arc::new(Node::Fg(x)))
    }

    /// `F φ`, i.e. `tt U φ`.
    pub fn eventually(x: Formula) -> Formula {
        Formula::until(Formula::tt(), x)
    }

    /// `G φ`, i.e. `φ W ff`.
    pub fn always(x: Formula) -> Formula {
        Formula::weak_until(x, Formula::ff())
    }

    /// Number of nodes of the syntax tree.
    pub fn size(&self) -> usize {
        match self.node() {
            Node::True | Node::False | Node::Lit(_) => 1,
            Node::Next(x) | Node::Gf(x) | Node::Fg(x) => 1 + x.size(),
            Node::And(l, r)
            | Node::Or(l, r)
            | Node::Until(l, r)
            | Node::WeakUntil(l, r)
            | Node::Release(l, r)
            | Node::StrongRelease(l, r) => 1 + l.size() + r.size(),
        }
    }

    pub fn children(&self) -> Children<'_> {
        let (a, b) = match self.node() {
            Node::True | Node::False | Node::Lit(_) => (None, None),
            Node::Next(x) | Node::Gf(x) | Node::Fg(x) => (Some(x), None),
            Node::And(l, r)
            | Node::Or(l, r)
            | Node::Until(l, r)
            | Node::WeakUntil(l, r)
            | Node::Release(l, r)
            | Node::StrongRelease(l, r) => (Some(l), Some(r)),
        };
        Children { a, b }
    }

    /// Rebuild this node kind over new children. Panics if the arity differs.
    pub fn with_children(&self, xs: &[Formula]) -> Formula {
        match self.node() {
            Node::True | Node::False | Node::Lit(_) => {
                assert!(xs.is_empty());
                self.clone()
            }
            Node::Next(_) => Formula::next(xs[0].clone()),
            Node::Gf(_) => Formula::gf(xs[0].clone()),
            Node::Fg(_) => Formula::fg(xs[0].clone()),
            Node::And(..) => Formula::and(xs[0].clone(), xs[1].clone()),
            Node::Or(..) => Formula::or(xs[0].clone(), xs[1].clone()),
            Node::Until(..) => Formula::until(xs[0].clone(), xs[1].clone()),
            Node::WeakUntil(..) => Formula::weak_until(xs[0].clone(), xs[1].clone()),
            Node::Release(..) => Formula::release(xs[0].clone(), xs[1].clone()),
            Node::StrongRelease(..) => Formula::strong_release(xs[0].clone(), xs[1].clone()),
        }
    }

    /// The negation in negation normal form: the dual operator at every node
    /// and flipped literal polarity. Preserves the node count.
    pub fn negated(&self) -> Formula {
        match self.node() {
            Node::True => Formula::ff(),
            Node::False => Formula::tt(),
            Node::Lit(l) => Formula::lit(l.prop.clone(), !l.positive),
            Node::And(l, r) => Formula::or(l.negated(), r.negated()),
            Node::Or(l, r) => Formula::and(l.negated(), r.negated()),
            Node::Next(x) => Formula::next(x.negated()),
            Node::Until(l, r) => Formula::release(l.negated(), r.negated()),
            Node::Release(l, r) => Formula::until(l.negated(), r.negated()),
            Node::WeakUntil(l, r) => Formula::strong_release(l.negated(), r.negated()),
            Node::StrongRelease(l, r) => Formula::weak_until(l.negated(), r.negated()),
            Node::Gf(x) => Formula::fg(x.negated()),
            Node::Fg(x) => Formula::gf(x.negated()),
        }
    }

    /// All propositions occurring in the formula, in name order.
    pub fn props(&self) -> BTreeSet<Proposition> {
        fn walk(f: &Formula, out: &mut BTreeSet<Proposition>) {
            if let Node::Lit(l) = f.node() {
                out.insert(l.prop.clone());
            }
            for c in f.children() {
                walk(c, out);
            }
        }
        let mut out = BTreeSet::new();
        walk(self, &mut out);
        out
    }

    /// The set of distinct subformulas, including the formula itself.
    pub fn subformulas(&self) -> BTreeSet<Formula> {
        fn walk(f: &Formula, out: &mut BTreeSet<Formula>) {
            if out.insert(f.clone()) {
                for c in f.children() {
                    walk(c, out);
                }
            }
        }
        let mut out = BTreeSet::new();
        walk(self, &mut out);
        out
    }

    /// A formula is proper if it is neither a Boolean constant nor a
    /// conjunction or disjunction.
    pub fn is_proper(&self) -> bool {
        !matches!(
            self.node(),
            Node::True | Node::False | Node::And(..) | Node::Or(..)
        )
    }

    pub fn proper_subformula_count(&self) -> usize {
        self.subformulas().iter().filter(|f| f.is_proper()).count()
    }

    pub fn contains_limit(&self) -> bool {
        matches!(self.node(), Node::Gf(_) | Node::Fg(_))
            || self.children().any(Formula::contains_limit)
    }

    /// Replaces every `GF φ` by `G F φ` and every `FG φ` by `F G φ`.
    pub fn expand_limits(&self) -> Formula {
        match self.node() {
            Node::Gf(x) => Formula::always(Formula::eventually(x.expand_limits())),
            Node::Fg(x) => Formula::eventually(Formula::always(x.expand_limits())),
            _ => {
                let kids: alloc::vec::Vec<Formula> =
                    self.children().map(Formula::expand_limits).collect();
                if kids.is_empty() {
                    self.clone()
                } else {
                    self.with_children(&kids)
                }
            }
        }
    }

    /// Does `sub` occur as a subformula (structurally)?
    pub fn contains(&self, sub: &Formula) -> bool {
        self == sub || self.children().any(|c| c.contains(sub))
    }
}

/// Iterator over the direct children of a node (zero, one, or two).
pub struct Children<'a> {
    a: Option<&'a Formula>,
    b: Option<&'a Formula>,
}

impl<'a> Iterator for Children<'a> {
    type Item = &'a Formula;

    fn next(&mut self) -> Option<&'a Formula> {
        self.a.take().or_else(|| self.b.take())
    }
}

// Precedence levels for printing: `|` 0, `&` 1, binary temporal 2, unary 3.
fn fmt_prec(f: &Formula, prec: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    let (my_prec, body): (u8, _) = match f.node() {
        Node::True => return out.write_str("tt"),
        Node::False => return out.write_str("ff"),
        Node::Lit(l) => {
            if !l.positive {
                out.write_str("!")?;
            }
            return out.write_str(l.prop.name());
        }
        _ => (prec_of(f), f),
    };
    if my_prec < prec {
        out.write_str("(")?;
        fmt_prec(body, 0, out)?;
        return out.write_str(")");
    }
    match f.node() {
        Node::Or(l, r) => {
            fmt_prec(l, 1, out)?;
            out.write_str(" | ")?;
            fmt_prec(r, 0, out)
        }
        Node::And(l, r) => {
            fmt_prec(l, 2, out)?;
            out.write_str(" & ")?;
            fmt_prec(r, 1, out)
        }
        Node::Until(l, r) if matches!(l.node(), Node::True) => {
            out.write_str("F ")?;
            fmt_prec(r, 3, out)
        }
        Node::WeakUntil(l, r) if matches!(r.node(), Node::False) => {
            out.write_str("G ")?;
            fmt_prec(l, 3, out)
        }
        Node::Until(l, r) => fmt_binop(l, "U", r, out),
        Node::WeakUntil(l, r) => fmt_binop(l, "W", r, out),
        Node::Release(l, r) => fmt_binop(l, "R", r, out),
        Node::StrongRelease(l, r) => fmt_binop(l, "M", r, out),
        Node::Next(x) => {
            out.write_str("X ")?;
            fmt_prec(x, 3, out)
        }
        Node::Gf(x) => {
            out.write_str("GF ")?;
            fmt_prec(x, 3, out)
        }
        Node::Fg(x) => {
            out.write_str("FG ")?;
            fmt_prec(x, 3, out)
        }
        Node::True | Node::False | Node::Lit(_) => unreachable!(),
    }
}

fn fmt_binop(l: &Formula, op: &str, r: &Formula, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    // Right-associative.
    fmt_prec(l, 3, out)?;
    write!(out, " {op} ")?;
    fmt_prec(r, 2, out)
}

fn prec_of(f: &Formula) -> u8 {
    match f.node() {
        Node::Or(..) => 0,
        Node::And(..) => 1,
        Node::Until(l, _) if matches!(l.node(), Node::True) => 3,
        Node::WeakUntil(_, r) if matches!(r.node(), Node::False) => 3,
        Node::Until(..) | Node::WeakUntil(..) | Node::Release(..) | Node::StrongRelease(..) => 2,
        Node::Next(..) | Node::Gf(..) | Node::Fg(..) => 3,
        Node::True | Node::False | Node::Lit(_) => 4,
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_prec(self, 0, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(name: &str) -> Proposition {
        Proposition::new(name).unwrap()
    }

    #[test]
    fn proposition_names() {
        assert!(Proposition::new("a").is_ok());
        assert!(Proposition::new("req_1").is_ok());
        assert!(Proposition::new("").is_err());
        assert!(Proposition::new("1a").is_err());
        assert!(Proposition::new("_x").is_err());
        assert!(Proposition::new("a b").is_err());
    }

    #[test]
    fn negation_is_an_involution_and_preserves_size() {
        let a = Formula::lit(p("a"), true);
        let b = Formula::lit(p("b"), true);
        let f = Formula::weak_until(
            Formula::until(a.clone(), b.clone()),
            Formula::gf(Formula::and(a, b)),
        );
        assert_eq!(f.negated().negated(), f);
        assert_eq!(f.negated().size(), f.size());
    }

    #[test]
    fn sugar_printing() {
        let a = Formula::lit(p("a"), true);
        let b = Formula::lit(p("b"), true);
        assert_eq!(Formula::eventually(a.clone()).to_string(), "F a");
        assert_eq!(Formula::always(a.clone()).to_string(), "G a");
        assert_eq!(
            Formula::eventually(Formula::always(a.clone())).to_string(),
            "F G a"
        );
        assert_eq!(
            Formula::until(Formula::until(a.clone(), b.clone()), b.clone()).to_string(),
            "(a U b) U b"
        );
        assert_eq!(
            Formula::until(a.clone(), Formula::until(b.clone(), a.clone())).to_string(),
            "a U b U a"
        );
        assert_eq!(
            Formula::gf(Formula::weak_until(a.clone(), b.clone())).to_string(),
            "GF (a W b)"
        );
        assert_eq!(Formula::lit(p("a"), false).to_string(), "!a");
    }

    #[test]
    fn children_match_structure() {
        let a = Formula::lit(p("a"), true);
        let b = Formula::lit(p("b"), true);
        let f = Formula::release(a.clone(), b.clone());
        let kids: Vec<Formula> = f.children().cloned().collect();
        assert_eq!(kids, vec![a, b]);
        assert_eq!(f.with_children(&kids), f);
    }
}
