//! Rewrite traces: one record per rule application, plus per-stage raw size
//! accounting (the node count the stage's output would have had without the
//! interleaved simplification).

use crate::formula::Formula;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stage {
    One,
    Two,
    Three,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    /// `φ₁ W φ₂[ψ] ≡ (φ₁ U φ₂[ψ]) ∨ G φ₁` for a strong node `ψ` in `φ₂`.
    WRight,
    /// `φ₁[ψ₁ U ψ₂] W φ₂ ≡ (GF ψ₂ ∧ φ₁[ψ₁ W ψ₂] W φ₂) ∨ φ₁[ψ₁ U ψ₂] U (φ₂ ∨ G φ₁[ff])`.
    WLeftUntil,
    /// The `M` analogue of [`Rule::WLeftUntil`], guarded by `GF ψ₁`.
    WLeftStrongRelease,
    /// `φ₁[ψ] R φ₂ ≡ (φ₁[ψ] M φ₂) ∨ G φ₂` for a strong node `ψ` in `φ₁`.
    RLeft,
    /// `φ₁ R φ₂[ψ₁ U ψ₂] ≡ (GF ψ₂ ∧ φ₁ R φ₂[ψ₁ W ψ₂]) ∨ (φ₁ ∨ G φ₂[ff]) M φ₂[ψ₁ U ψ₂]`.
    RRightUntil,
    /// The `M` analogue of [`Rule::RRightUntil`], guarded by `GF ψ₁`.
    RRightStrongRelease,
    /// `φ[GF ψ] ≡ (GF ψ ∧ φ[tt]) ∨ φ[ff]`.
    PullGf,
    /// `φ[FG ψ] ≡ (FG ψ ∧ φ[tt]) ∨ φ[ff]`.
    PullFg,
    /// `GF φ[ψ₁ W ψ₂] ≡ GF φ[ψ₁ U ψ₂] ∨ (FG ψ₁ ∧ GF φ[tt])`.
    GfElimWeakUntil,
    /// `GF φ[ψ₁ R ψ₂] ≡ GF φ[ψ₁ M ψ₂] ∨ (FG ψ₂ ∧ GF φ[tt])`.
    GfElimRelease,
    /// `FG φ[ψ₁ U ψ₂] ≡ (GF ψ₂ ∧ FG φ[ψ₁ W ψ₂]) ∨ FG φ[ff]`.
    FgElimUntil,
    /// `FG φ[ψ₁ M ψ₂] ≡ (GF ψ₁ ∧ FG φ[ψ₁ R ψ₂]) ∨ FG φ[ff]`.
    FgElimStrongRelease,
}

impl Rule {
    pub fn id(&self) -> &'static str {
        match self {
            Rule::WRight => "w-right",
            Rule::WLeftUntil => "w-left-u",
            Rule::WLeftStrongRelease => "w-left-m",
            Rule::RLeft => "r-left",
            Rule::RRightUntil => "r-right-u",
            Rule::RRightStrongRelease => "r-right-m",
            Rule::PullGf => "pull-gf",
            Rule::PullFg => "pull-fg",
            Rule::GfElimWeakUntil => "gf-elim-w",
            Rule::GfElimRelease => "gf-elim-r",
            Rule::FgElimUntil => "fg-elim-u",
            Rule::FgElimStrongRelease => "fg-elim-m",
        }
    }
}

/// One rule application. `before` is the redex; `after` is the rule's
/// right-hand side prior to any recursive processing or simplification, so
/// the pair witnesses exactly what the rule did.
#[derive(Debug, Clone)]
pub struct TraceStep {
    pub stage: Stage,
    pub rule: Rule,
    /// Child-index path from the enclosing formula to the redex at the time
    /// of application.
    pub path: Vec<u16>,
    pub before: Formula,
    pub after: Formula,
}

impl TraceStep {
    pub fn nodes_before(&self) -> usize {
        self.before.size()
    }

    pub fn nodes_after(&self) -> usize {
        self.after.size()
    }
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rule={} path=", self.rule.id())?;
        if self.path.is_empty() {
            write!(f, "-")?;
        } else {
            for (i, p) in self.path.iter().enumerate() {
                if i > 0 {
                    write!(f, ".")?;
                }
                write!(f, "{p}")?;
            }
        }
        write!(
            f,
            " before={} after={}",
            self.nodes_before(),
            self.nodes_after()
        )
    }
}

#[derive(Debug, Clone, Default)]
pub struct RewriteTrace {
    pub steps: Vec<TraceStep>,
    /// Raw (pre-simplification) node accounting per stage, saturating.
    pub raw_nodes: [u128; 3],
    pub input_nodes: usize,
    pub final_nodes: usize,
}

impl RewriteTrace {
    pub fn step_count(&self) -> usize {
        self.steps.len()
    }

    pub fn max_raw_nodes(&self) -> u128 {
        *self.raw_nodes.iter().max().unwrap()
    }
}

impl fmt::Display for RewriteTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}
