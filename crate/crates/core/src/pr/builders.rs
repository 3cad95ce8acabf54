//! Hand-built terms for common arithmetic, and the construction behind the
//! PR class's density claim: every finite word is a prefix of an
//! expressible eventually-constant function.

use super::term::PrTerm;

fn p(n: usize, k: usize) -> PrTerm {
    PrTerm::proj(n, k).expect("valid projection")
}

fn c(outer: PrTerm, inner: Vec<PrTerm>) -> PrTerm {
    PrTerm::comp(outer, inner).expect("builder arities are consistent")
}

fn r(base: PrTerm, step: PrTerm) -> PrTerm {
    PrTerm::prim_rec(base, step).expect("builder arities are consistent")
}

/// `(x, y) ↦ x + y`
pub fn addition() -> PrTerm {
    r(p(1, 1), c(PrTerm::Succ, vec![p(3, 3)]))
}

/// `(x, y) ↦ x · y`
pub fn multiplication() -> PrTerm {
    r(PrTerm::Zero, c(addition(), vec![p(3, 1), p(3, 3)]))
}

/// Unary constant `n ↦ value`.
pub fn constant(value: u64) -> PrTerm {
    (0..value).fold(PrTerm::Zero, |t, _| c(PrTerm::Succ, vec![t]))
}

/// Unary `y ↦ y ∸ 1`, recursing through a binary helper on the diagonal.
pub fn predecessor() -> PrTerm {
    let on_second = r(PrTerm::Zero, p(3, 2));
    c(on_second, vec![p(1, 1), p(1, 1)])
}

/// `(x, y) ↦ x ∸ y`
pub fn monus() -> PrTerm {
    r(p(1, 1), c(predecessor(), vec![p(3, 3)]))
}

/// Unary `n ↦ [n = 0]`.
fn is_zero(arg: PrTerm) -> PrTerm {
    c(monus(), vec![constant(1), arg])
}

/// Unary `n ↦ [n = value]`.
fn equals(value: u64) -> PrTerm {
    let k = constant(value);
    let distance = c(
        addition(),
        vec![
            c(monus(), vec![p(1, 1), k.clone()]),
            c(monus(), vec![k, p(1, 1)]),
        ],
    );
    is_zero(distance)
}

/// Unary `n ↦ [n ≥ value]`.
fn at_least(value: u64) -> PrTerm {
    is_zero(c(monus(), vec![constant(value), p(1, 1)]))
}

/// A unary term computing `n ↦ u_{min(n, |u|-1)}` (constant zero for the
/// empty word), so every cylinder `[u]` meets the class.
///
/// Built as `Σ_{j<|u|-1} u_j·[n = j] + u_last·[n ≥ |u|-1]`.
pub fn eventually_constant(u: &[u64]) -> PrTerm {
    let Some((&last, head)) = u.split_last() else {
        return PrTerm::Zero;
    };
    if head.is_empty() {
        return constant(last);
    }
    let scaled = |value: u64, indicator: PrTerm| -> PrTerm {
        if value == 1 {
            indicator
        } else {
            c(multiplication(), vec![constant(value), indicator])
        }
    };
    let mut summands: Vec<PrTerm> = head
        .iter()
        .enumerate()
        .filter(|(_, &v)| v != 0)
        .map(|(j, &v)| scaled(v, equals(j as u64)))
        .collect();
    if last != 0 {
        summands.push(scaled(last, at_least(head.len() as u64)));
    }
    summands
        .into_iter()
        .reduce(|acc, t| c(addition(), vec![acc, t]))
        .unwrap_or(PrTerm::Zero)
}
