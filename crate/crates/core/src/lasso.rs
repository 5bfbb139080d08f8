//! Ultimately periodic words `u·vω` and exact formula evaluation on them.
//!
//! Every equivalence claim in this crate is checked against [`eval_lasso`]:
//! it labels the `|prefix| + |loop|` canonical positions of the word
//! bottom-up per subformula, solving `U`/`M` (and limit `GF`) obligations as
//! least fixpoints and `W`/`R` (and `FG`) as greatest fixpoints.

use crate::formula::{Formula, Node, Proposition};
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// A letter is the set of propositions holding at a position, encoded as a
/// bitset over the word's proposition ordering.
pub type Letter = u16;

/// An ultimately periodic word `prefix · loop^ω` over the alphabet `2^ap`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct LassoWord {
    ap: Vec<Proposition>,
    prefix: Vec<Letter>,
    cycle: Vec<Letter>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LassoError {
    EmptyLoop,
    TooManyPropositions,
    DuplicateProposition(String),
    LetterOutOfRange,
    UnknownProposition(String),
    BadSyntax(String),
}

impl fmt::Display for LassoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LassoError::EmptyLoop => write!(f, "lasso loop must be nonempty"),
            LassoError::TooManyPropositions => write!(f, "at most 16 propositions supported"),
            LassoError::DuplicateProposition(p) => write!(f, "duplicate proposition `{p}`"),
            LassoError::LetterOutOfRange => write!(f, "letter mentions an undeclared proposition"),
            LassoError::UnknownProposition(p) => write!(f, "unknown proposition `{p}`"),
            LassoError::BadSyntax(s) => write!(f, "bad lasso syntax: {s}"),
        }
    }
}

impl core::error::Error for LassoError {}

impl LassoWord {
    pub fn new(
        ap: Vec<Proposition>,
        prefix: Vec<Letter>,
        cycle: Vec<Letter>,
    ) -> Result<Self, LassoError> {
        if cycle.is_empty() {
            return Err(LassoError::EmptyLoop);
        }
        if ap.len() > 16 {
            return Err(LassoError::TooManyPropositions);
        }
        for i in 1..ap.len() {
            if ap[i..].contains(&ap[i - 1]) {
                return Err(LassoError::DuplicateProposition(String::from(
                    ap[i - 1].name(),
                )));
            }
        }
        let limit: u32 = 1 << ap.len();
        if prefix
            .iter()
            .chain(cycle.iter())
            .any(|&l| (l as u32) >= limit)
        {
            return Err(LassoError::LetterOutOfRange);
        }
        Ok(LassoWord { ap, prefix, cycle })
    }

    pub fn ap(&self) -> &[Proposition] {
        &self.ap
    }

    pub fn prefix(&self) -> &[Letter] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[Letter] {
        &self.cycle
    }

    /// Number of canonical positions, `|prefix| + |loop|`.
    pub fn positions(&self) -> usize {
        self.prefix.len() + self.cycle.len()
    }

    /// The letter at any (unrolled) position `i ≥ 0`.
    pub fn letter_at(&self, i: usize) -> Letter {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.cycle[(i - self.prefix.len()) % self.cycle.len()]
        }
    }

    /// Parses `"prefix;loop"` where each side is a comma-separated list of
    /// letters like `{a,b}` or `{}` (e.g. `"{a},{a};{c}"`).
    pub fn parse(text: &str, ap: &[Proposition]) -> Result<Self, LassoError> {
        let (pre, cyc) = text
            .split_once(';')
            .ok_or_else(|| LassoError::BadSyntax(String::from("missing `;`")))?;
        let parse_side = |side: &str| -> Result<Vec<Letter>, LassoError> {
            let side = side.trim();
            if side.is_empty() {
                return Ok(Vec::new());
            }
            let mut letters = Vec::new();
            let mut rest = side;
            loop {
                let rest2 = rest.trim_start();
                let Some(stripped) = rest2.strip_prefix('{') else {
                    return Err(LassoError::BadSyntax(String::from("expected `{`")));
                };
                let Some(end) = stripped.find('}') else {
                    return Err(LassoError::BadSyntax(String::from("missing `}`")));
                };
                let body = &stripped[..end];
                let mut letter: Letter = 0;
                for name in body.split(',') {
                    let name = name.trim();
                    if name.is_empty() {
                        continue;
                    }
                    let idx = ap
                        .iter()
                        .position(|p| p.name() == name)
                        .ok_or_else(|| LassoError::UnknownProposition(String::from(name)))?;
                    letter |= 1 << idx;
                }
                letters.push(letter);
                rest = stripped[end + 1..].trim_start();
                if rest.is_empty() {
                    break;
                }
                let Some(r) = rest.strip_prefix(',') else {
                    return Err(LassoError::BadSyntax(String::from("expected `,`")));
                };
                rest = r;
            }
            Ok(letters)
        };
        LassoWord::new(ap.to_vec(), parse_side(pre)?, parse_side(cyc)?)
    }
}

impl fmt::Display for LassoWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let write_letter = |f: &mut fmt::Formatter<'_>, l: Letter| -> fmt::Result {
            f.write_str("{")?;
            let mut first = true;
            for (i, p) in self.ap.iter().enumerate() {
                if l & (1 << i) != 0 {
                    if !first {
                        f.write_str(",")?;
                    }
                    first = false;
                    f.write_str(p.name())?;
                }
            }
            f.write_str("}")
        };
        for (i, &l) in self.prefix.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write_letter(f, l)?;
        }
        f.write_str(";")?;
        for (i, &l) in self.cycle.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write_letter(f, l)?;
        }
        Ok(())
    }
}

// A bitmask over the canonical positions of a lasso.
#[derive(Clone, PartialEq, Eq)]
struct Mask(Vec<u64>);

struct Positions {
    n: usize,
    prefix_len: usize,
}

impl Positions {
    fn blocks(&self) -> usize {
        self.n.div_ceil(64)
    }

    fn zeros(&self) -> Mask {
        Mask(vec![0; self.blocks()])
    }

    fn ones(&self) -> Mask {
        let mut m = Mask(vec![!0u64; self.blocks()]);
        self.trim(&mut m);
        m
    }

    fn trim(&self, m: &mut Mask) {
        let extra = self.blocks() * 64 - self.n;
        if extra > 0 {
            let last = m.0.len() - 1;
            m.0[last] &= !0u64 >> extra;
        }
    }

    fn and(&self, a: &Mask, b: &Mask) -> Mask {
        Mask(a.0.iter().zip(&b.0).map(|(x, y)| x & y).collect())
    }

    fn or(&self, a: &Mask, b: &Mask) -> Mask {
        Mask(a.0.iter().zip(&b.0).map(|(x, y)| x | y).collect())
    }

    fn not(&self, a: &Mask) -> Mask {
        let mut m = Mask(a.0.iter().map(|x| !x).collect());
        self.trim(&mut m);
        m
    }

    fn get(&self, m: &Mask, i: usize) -> bool {
        m.0[i / 64] & (1 << (i % 64)) != 0
    }

    fn set(&self, m: &mut Mask, i: usize) {
        m.0[i / 64] |= 1 << (i % 64);
    }

    /// `res[i] = src[succ(i)]` where `succ` advances one step and wraps the
    /// last loop position back to the loop start.
    fn step(&self, src: &Mask) -> Mask {
        let mut out = self.zeros();
        for i in 0..self.n {
            let succ = if i + 1 < self.n { i + 1 } else { self.prefix_len };
            if self.get(src, succ) {
                self.set(&mut out, i);
            }
        }
        out
    }

    fn any_in_loop(&self, m: &Mask) -> bool {
        (self.prefix_len..self.n).any(|i| self.get(m, i))
    }

    fn all_in_loop(&self, m: &Mask) -> bool {
        (self.prefix_len..self.n).all(|i| self.get(m, i))
    }

    fn fill(&self, b: bool) -> Mask {
        if b {
            self.ones()
        } else {
            self.zeros()
        }
    }
}

/// Exact truth of `w ⊨ φ`. Requires every proposition of `φ` to be declared
/// in `w`.
pub fn eval_lasso(f: &Formula, w: &LassoWord) -> Result<bool, LassoError> {
    for p in f.props() {
        if !w.ap.contains(&p) {
            return Err(LassoError::UnknownProposition(String::from(p.name())));
        }
    }
    let pos = Positions {
        n: w.positions(),
        prefix_len: w.prefix.len(),
    };
    // Truth mask of each proposition across the canonical positions.
    let mut prop_masks: BTreeMap<&str, Mask> = BTreeMap::new();
    for (i, p) in w.ap.iter().enumerate() {
        let mut m = pos.zeros();
        for j in 0..pos.n {
            if w.letter_at(j) & (1 << i) != 0 {
                pos.set(&mut m, j);
            }
        }
        prop_masks.insert(p.name(), m);
    }
    let mut memo: BTreeMap<usize, Mask> = BTreeMap::new();
    let root = eval_mask(f, &pos, &prop_masks, &mut memo);
    Ok(pos.get(&root, 0))
}

fn eval_mask(
    f: &Formula,
    pos: &Positions,
    props: &BTreeMap<&str, Mask>,
    memo: &mut BTreeMap<usize, Mask>,
) -> Mask {
    if let Some(m) = memo.get(&f.key()) {
        return m.clone();
    }
    let out = match f.node() {
        Node::True => pos.ones(),
        Node::False => pos.zeros(),
        Node::Lit(l) => {
            let m = props.get(l.prop.name()).expect("checked props");
            if l.positive {
                m.clone()
            } else {
                pos.not(m)
            }
        }
        Node::And(a, b) => {
            let (a, b) = (
                eval_mask(a, pos, props, memo),
                eval_mask(b, pos, props, memo),
            );
            pos.and(&a, &b)
        }
        Node::Or(a, b) => {
            let (a, b) = (
                eval_mask(a, pos, props, memo),
                eval_mask(b, pos, props, memo),
            );
            pos.or(&a, &b)
        }
        Node::Next(x) => {
            let x = eval_mask(x, pos, props, memo);
            pos.step(&x)
        }
        Node::Until(l, r) => {
            let (l, r) = (
                eval_mask(l, pos, props, memo),
                eval_mask(r, pos, props, memo),
            );
            // Least fixpoint of v = r ∨ (l ∧ X v).
            fixpoint(pos, false, |v| pos.or(&r, &pos.and(&l, &pos.step(v))))
        }
        Node::StrongRelease(l, r) => {
            let (l, r) = (
                eval_mask(l, pos, props, memo),
                eval_mask(r, pos, props, memo),
            );
            fixpoint(pos, false, |v| pos.and(&r, &pos.or(&l, &pos.step(v))))
        }
        Node::WeakUntil(l, r) => {
            let (l, r) = (
                eval_mask(l, pos, props, memo),
                eval_mask(r, pos, props, memo),
            );
            // Greatest fixpoint of v = r ∨ (l ∧ X v).
            fixpoint(pos, true, |v| pos.or(&r, &pos.and(&l, &pos.step(v))))
        }
        Node::Release(l, r) => {
            let (l, r) = (
                eval_mask(l, pos, props, memo),
                eval_mask(r, pos, props, memo),
            );
            fixpoint(pos, true, |v| pos.and(&r, &pos.or(&l, &pos.step(v))))
        }
        Node::Gf(x) => {
            let x = eval_mask(x, pos, props, memo);
            pos.fill(pos.any_in_loop(&x))
        }
        Node::Fg(x) => {
            let x = eval_mask(x, pos, props, memo);
            pos.fill(pos.all_in_loop(&x))
        }
    };
    memo.insert(f.key(), out.clone());
    out
}

fn fixpoint(pos: &Positions, greatest: bool, f: impl Fn(&Mask) -> Mask) -> Mask {
    let mut v = pos.fill(greatest);
    for _ in 0..=pos.n {
        let next = f(&v);
        if next == v {
            break;
        }
        v = next;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn props(names: &[&str]) -> Vec<Proposition> {
        names.iter().map(|n| Proposition::new(n).unwrap()).collect()
    }

    fn ev(f: &str, lasso: &str, ap: &[&str]) -> bool {
        let ap = props(ap);
        let w = LassoWord::parse(lasso, &ap).unwrap();
        eval_lasso(&parse(f).unwrap(), &w).unwrap()
    }

    #[test]
    fn basic_semantics() {
        assert!(ev("G a", ";{a}", &["a"]));
        assert!(!ev("G a", "{a};{a},{}", &["a"]));
        assert!(ev("F b", "{a};{b}", &["a", "b"]));
        assert!(ev("a U b", "{a},{a};{b}", &["a", "b"]));
        assert!(!ev("a U b", "{a},{};{b}", &["a", "b"]));
        assert!(ev("a W b", ";{a}", &["a", "b"]));
        assert!(ev("GF a", ";{a},{}", &["a"]));
        assert!(!ev("FG a", ";{a},{}", &["a"]));
        assert!(ev("FG a", "{};{a}", &["a"]));
        assert!(ev("a M a", ";{a}", &["a"]));
        assert!(ev("a M b", ";{a,b},{b}", &["a", "b"]));
        assert!(ev("b R a", ";{a}", &["a", "b"]));
    }

    #[test]
    fn run_example_words() {
        // φ = a U X G (b | X F c)
        let f = "a U X G (b | X F c)";
        assert!(ev(f, "{a},{a};{c}", &["a", "b", "c"]));
        assert!(ev(f, "{a},{a};{b}", &["a", "b", "c"]));
        assert!(!ev(f, "{a};{}", &["a", "b", "c"]));
    }

    #[test]
    fn strong_release_includes_current() {
        // a M b: b must hold up to and including the witness for a.
        assert!(ev("a M b", ";{a,b}", &["a", "b"]));
        assert!(!ev("a M b", "{a};{b}", &["a", "b"]));
        assert!(ev("a M b", "{b},{a,b};{}", &["a", "b"]));
    }

    #[test]
    fn lasso_text_round_trip() {
        let ap = props(&["a", "b"]);
        for s in ["{a},{a};{b}", ";{}", "{},{a,b};{b},{}"] {
            let w = LassoWord::parse(s, &ap).unwrap();
            assert_eq!(w.to_string(), s);
        }
        assert!(LassoWord::parse("{a};", &ap).is_err());
        assert!(LassoWord::parse("{c};{a}", &ap).is_err());
    }

    #[test]
    fn unknown_proposition_is_reported() {
        let ap = props(&["a"]);
        let w = LassoWord::parse(";{a}", &ap).unwrap();
        assert!(eval_lasso(&parse("G b").unwrap(), &w).is_err());
    }
}
