use std::fmt;

use super::PrError;

/// A primitive-recursive term. Composite nodes carry their arity, which the
/// checked constructors guarantee is consistent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PrTerm {
    Zero,
    Succ,
    Proj {
        arity: usize,
        index: usize,
    },
    Comp {
        arity: usize,
        outer: Box<PrTerm>,
        inner: Vec<PrTerm>,
    },
    PrimRec {
        arity: usize,
        base: Box<PrTerm>,
        step: Box<PrTerm>,
    },
}

impl PrTerm {
    pub fn proj(arity: usize, index: usize) -> Result<PrTerm, PrError> {
        if arity == 0 || index == 0 || index > arity {
            return Err(PrError::Arity {
                node: format!("P[{arity},{index}]"),
                message: "projection needs 1 <= k <= n".into(),
            });
        }
        Ok(PrTerm::Proj { arity, index })
    }

    pub fn comp(outer: PrTerm, inner: Vec<PrTerm>) -> Result<PrTerm, PrError> {
        let fail = |message: String| {
            let node = PrTerm::Comp {
                arity: 0,
                outer: Box::new(outer.clone()),
                inner: inner.clone(),
            };
            Err(PrError::Arity {
                node: node.to_string(),
                message,
            })
        };
        let Some(first) = inner.first() else {
            return fail("composition needs at least one inner term".into());
        };
        if outer.arity() != inner.len() {
            return fail(format!(
                "outer term has arity {} but {} inner terms were given",
                outer.arity(),
                inner.len()
            ));
        }
        let arity = first.arity();
        if let Some(g) = inner.iter().find(|g| g.arity() != arity) {
            return fail(format!(
                "inner terms disagree on arity ({} vs {} for `{g}`)",
                arity,
                g.arity()
            ));
        }
        Ok(PrTerm::Comp {
            arity,
            outer: Box::new(outer),
            inner,
        })
    }

    pub fn prim_rec(base: PrTerm, step: PrTerm) -> Result<PrTerm, PrError> {
        let r = base.arity();
        if step.arity() != r + 2 {
            return Err(PrError::Arity {
                node: format!("R({base}, {step})"),
                message: format!(
                    "step must have arity {} for a base of arity {r}, found {}",
                    r + 2,
                    step.arity()
                ),
            });
        }
        Ok(PrTerm::PrimRec {
            arity: r + 1,
            base: Box::new(base),
            step: Box::new(step),
        })
    }

    pub fn arity(&self) -> usize {
        match self {
            PrTerm::Zero | PrTerm::Succ => 1,
            PrTerm::Proj { arity, .. }
            | PrTerm::Comp { arity, .. }
            | PrTerm::PrimRec { arity, .. } => *arity,
        }
    }

    /// Node count.
    pub fn size(&self) -> usize {
        match self {
            PrTerm::Zero | PrTerm::Succ | PrTerm::Proj { .. } => 1,
            PrTerm::Comp { outer, inner, .. } => {
                1 + outer.size() + inner.iter().map(PrTerm::size).sum::<usize>()
            }
            PrTerm::PrimRec { base, step, .. } => 1 + base.size() + step.size(),
        }
    }

    /// Re-verify every arity annotation, for terms built without the
    /// checked constructors.
    pub fn check(&self) -> Result<(), PrError> {
        let rebuilt = match self {
            PrTerm::Zero | PrTerm::Succ => return Ok(()),
            PrTerm::Proj { arity, index } => PrTerm::proj(*arity, *index)?,
            PrTerm::Comp { outer, inner, .. } => {
                outer.check()?;
                inner.iter().try_for_each(PrTerm::check)?;
                PrTerm::comp((**outer).clone(), inner.clone())?
            }
            PrTerm::PrimRec { base, step, .. } => {
                base.check()?;
                step.check()?;
                PrTerm::prim_rec((**base).clone(), (**step).clone())?
            }
        };
        if rebuilt.arity() != self.arity() {
            return Err(PrError::Arity {
                node: self.to_string(),
                message: format!(
                    "annotated arity {} but the node has arity {}",
                    self.arity(),
                    rebuilt.arity()
                ),
            });
        }
        Ok(())
    }
}

impl fmt::Display for PrTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrTerm::Zero => f.write_str("Z"),
            PrTerm::Succ => f.write_str("S"),
            PrTerm::Proj { arity, index } => write!(f, "P[{arity},{index}]"),
            PrTerm::Comp { outer, inner, .. } => {
                write!(f, "C({outer};")?;
                for (pos, g) in inner.iter().enumerate() {
                    let sep = if pos == 0 { " " } else { ", " };
                    write!(f, "{sep}{g}")?;
                }
                f.write_str(")")
            }
            PrTerm::PrimRec { base, step, .. } => write!(f, "R({base}, {step})"),
        }
    }
}
