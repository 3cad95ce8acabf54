//! Anticomplex sets `A_{C,h} = { f : ∀n, K_C(f↾n) ≤ h(n) }`.
//!
//! Membership is decidable from any index `i`: `K_C(f_i↾n) ≤ i`, so only
//! lengths below `h`'s threshold for `i` can fail. Oracle access alone is
//! not enough; [`escape_index`] and [`trapping_order`] build the witnesses
//! of that obstruction.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::class::{
    equal_functions, extends_check, require_decidable_equality, require_dense, EffectiveClass,
    Equality, FunctionIndex,
};
use crate::complexity::{prefix_complexity, PrefixComplexity, ProfileWalker};
use crate::error::{Error, Result};
use crate::order::ComputableOrder;
use crate::word::FiniteWord;

/// `A_{C,h}` for a fixed class.
pub struct AnticomplexSet<'a> {
    pub class: &'a dyn EffectiveClass,
    pub order: ComputableOrder,
}

impl AnticomplexSet<'_> {
    pub fn contains(&self, i: FunctionIndex) -> Result<bool> {
        decide_anticomplex(self.class, i, &self.order)
    }
}

/// Decision plus the instrumentation the decider collected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnticomplexDecision {
    pub member: bool,
    /// Least `N` with `h(N) ≥ i`; no length `≥ N` is ever checked.
    pub threshold: u64,
    pub lengths_checked: u64,
    /// First length where `K_C(f_i↾n) > h(n)`.
    pub failed_at: Option<u64>,
}

fn index_as_u64(i: FunctionIndex) -> Result<u64> {
    u64::try_from(i.value()).map_err(|_| Error::Overflow("index too large for an order threshold"))
}

pub fn decide_anticomplex_traced(
    class: &dyn EffectiveClass,
    i: FunctionIndex,
    h: &ComputableOrder,
) -> Result<AnticomplexDecision> {
    let threshold = h.inverse_threshold(index_as_u64(i)?);
    let mut walker = ProfileWalker::new(class, i);
    let mut failed_at = None;
    for n in 0..threshold {
        let k = walker.next_value()?;
        if k.value() > h.eval(n) as u128 {
            failed_at = Some(n);
            break;
        }
    }
    Ok(AnticomplexDecision {
        member: failed_at.is_none(),
        threshold,
        lengths_checked: walker.lengths_checked(),
        failed_at,
    })
}

/// Is `f_i ∈ A_{C,h}`?
pub fn decide_anticomplex(
    class: &dyn EffectiveClass,
    i: FunctionIndex,
    h: &ComputableOrder,
) -> Result<bool> {
    decide_anticomplex_traced(class, i, h).map(|d| d.member)
}

/// Checks `K_C(f_i↾n) ≤ h(n)` for every `n ≤ n_max`, each from scratch.
/// Exact once `n_max ≥ h.inverse_threshold(i)`.
pub fn brute_force_anticomplex(
    class: &dyn EffectiveClass,
    i: FunctionIndex,
    h: &ComputableOrder,
    n_max: u64,
) -> Result<bool> {
    for n in 0..=n_max {
        let prefix = class.prefix_word(i, n)?;
        let k = match prefix_complexity(class, &prefix, i)? {
            PrefixComplexity::Exact(k) => k,
            PrefixComplexity::ExceedsBound => unreachable!("f_i extends its own prefix"),
        };
        if k.value() > h.eval(n) as u128 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Least `a` with `K_C(u·a) > h(|u|+1)`, so `[u·a]` misses `A_{C,h}` while
/// still meeting the (dense) class.
pub fn escape_index(class: &dyn EffectiveClass, u: &FiniteWord, h: &ComputableOrder) -> Result<u64> {
    require_dense(class)?;
    let len = u.len() as u64;
    let bound = FunctionIndex::from(h.eval(len + 1));
    let mut taken = BTreeSet::new();
    for j in bound.up_to() {
        if extends_check(class, j, u)? {
            taken.insert(class.evaluate(j, len)?);
        }
    }
    Ok((0..).find(|a| !taken.contains(a)).expect("finite set has a gap"))
}

/// `count` pairwise distinct members extending `w`, from the class's
/// explicit extension witnesses for `w·0, w·1, …`.
fn distinct_extenders(
    class: &dyn EffectiveClass,
    w: &FiniteWord,
    count: usize,
) -> Result<Vec<FunctionIndex>> {
    let max_candidates = 4 * count as u64 + 16;
    let mut found: Vec<FunctionIndex> = Vec::with_capacity(count);
    for a in 0..max_candidates {
        if found.len() == count {
            break;
        }
        let candidate = match class.extension_witness(&w.extended(a)) {
            Some(j) => j?,
            None => {
                return Err(Error::NotCapable {
                    class: class.id().to_string(),
                    capability: "extension witnesses",
                })
            }
        };
        let mut fresh = true;
        for &f in &found {
            if equal_functions(class, f, candidate, 0)? == Equality::Equal {
                fresh = false;
                break;
            }
        }
        if fresh {
            found.push(candidate);
        }
    }
    if found.len() < count {
        return Err(Error::SearchExhausted(format!(
            "found only {} of {count} distinct extensions of ({w})",
            found.len()
        )));
    }
    Ok(found)
}

/// Least `p` at which all the given functions have pairwise distinct prefixes.
fn separation_length(class: &dyn EffectiveClass, fns: &[FunctionIndex]) -> Result<u64> {
    let mut p = 0;
    for (x, &f) in fns.iter().enumerate() {
        for &g in &fns[x + 1..] {
            match equal_functions(class, f, g, 0)? {
                Equality::DifferAt(n) => p = p.max(n + 1),
                _ => {
                    return Err(Error::SearchExhausted(format!(
                        "f_{f} and f_{g} cannot be separated"
                    )))
                }
            }
        }
    }
    Ok(p)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Trap {
    /// `h(p) = min{ n ≥ i : p ≤ p_n }`
    pub order: ComputableOrder,
    /// `p_0 < p_1 < … < p_depth`
    pub points: Vec<u64>,
    /// The `n + 2` distinct extensions of `f_i↾n` used for each `p_n`.
    pub extenders: Vec<Vec<FunctionIndex>>,
}

/// An order `h` with `f_i ∈ A_{C,h}` such that every `[f_i↾n]`, `n ≥ i`,
/// contains a class-meeting cylinder disjoint from `A_{C,h}`.
///
/// Uses `i` itself as the upper bound on `K_C(f_i)`.
pub fn trapping_order(class: &dyn EffectiveClass, i: FunctionIndex, depth: u64) -> Result<Trap> {
    require_dense(class)?;
    require_decidable_equality(class)?;
    let base = index_as_u64(i)?;
    let mut points: Vec<u64> = Vec::new();
    let mut extenders = Vec::new();
    for n in 0..=depth {
        let w = class.prefix_word(i, n)?;
        // at most n + 1 functions have complexity ≤ n
        let fns = distinct_extenders(class, &w, n as usize + 2)?;
        let sep = separation_length(class, &fns)?;
        let p = match points.last() {
            Some(&prev) => sep.max(prev + 1),
            None => sep,
        };
        points.push(p);
        extenders.push(fns);
    }
    Ok(Trap {
        order: ComputableOrder::min_clause(base, points.clone())?,
        points,
        extenders,
    })
}

/// A word `u` of length `p_n` extending `f_i↾n` with `[u]` meeting the class
/// and `K_C(u) > n = h(p_n)`.
pub fn non_interior_witness(
    class: &dyn EffectiveClass,
    h: &ComputableOrder,
    points: &[u64],
    i: FunctionIndex,
    n: u64,
) -> Result<FiniteWord> {
    let base = match h {
        ComputableOrder::MinClause { base, .. } => *base,
        _ => 0,
    };
    if n < base {
        return Err(Error::InvalidArgument(format!(
            "n = {n} is below the order's base {base}"
        )));
    }
    let p = *points
        .get(n as usize)
        .ok_or_else(|| Error::InvalidArgument(format!("no point p_{n} (depth {})", points.len())))?;
    if h.eval(p) != n {
        return Err(Error::InvalidArgument(format!(
            "order takes value {} at p_{n} = {p}, expected {n}",
            h.eval(p)
        )));
    }
    let w = class.prefix_word(i, n)?;
    for f in distinct_extenders(class, &w, n as usize + 2)? {
        let u = class.prefix_word(f, p)?;
        if !w.is_prefix_of(&u) {
            return Err(Error::WitnessNotFound(format!("f_{f} does not extend ({w})")));
        }
        if prefix_complexity(class, &u, FunctionIndex::from(n))? == PrefixComplexity::ExceedsBound {
            return Ok(u);
        }
    }
    Err(Error::WitnessNotFound(format!(
        "every length-{p} extension of ({w}) has complexity at most {n}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexity::complexity_profile;
    use crate::ec::{ec_encode, EcClass};
    use crate::pr::PrClass;

    fn idx(i: u128) -> FunctionIndex {
        FunctionIndex(i)
    }

    #[test]
    fn decide_examples() {
        let ec = EcClass;
        let id = ComputableOrder::Identity;
        assert!(decide_anticomplex(&ec, idx(0), &id).unwrap());
        assert!(!decide_anticomplex(&ec, idx(5), &id).unwrap());
        assert!(!decide_anticomplex(&ec, idx(2), &id).unwrap());
        // K(f_5↾1) = 2 > h(1) = 1, read off the profile
        let prof = complexity_profile(&ec, idx(5), 1).unwrap();
        assert_eq!(prof.values[1], idx(2));
        let d = decide_anticomplex_traced(&ec, idx(0), &id).unwrap();
        assert_eq!((d.threshold, d.lengths_checked), (0, 0));
    }

    #[test]
    fn brute_force_examples() {
        let ec = EcClass;
        let half = ComputableOrder::breakpoints(0, vec![1, 3]).unwrap();
        assert!(brute_force_anticomplex(&ec, idx(0), &half, 0).unwrap());
        assert!(!brute_force_anticomplex(&ec, idx(5), &ComputableOrder::Identity, 10).unwrap());
        for i in 0..=60u128 {
            for h in [ComputableOrder::Identity, half.clone()] {
                let n_max = h.inverse_threshold(i as u64);
                assert_eq!(
                    decide_anticomplex(&ec, idx(i), &h).unwrap(),
                    brute_force_anticomplex(&ec, idx(i), &h, n_max).unwrap(),
                    "i = {i}, h = {}",
                    h.describe()
                );
            }
        }
    }

    #[test]
    fn escape_examples() {
        let ec = EcClass;
        let id = ComputableOrder::Identity;
        assert_eq!(escape_index(&ec, &FiniteWord::empty(), &id).unwrap(), 1);
        assert_eq!(
            prefix_complexity(&ec, &FiniteWord::from([1]), idx(1)).unwrap(),
            PrefixComplexity::ExceedsBound
        );
        let a = escape_index(&ec, &FiniteWord::from([0]), &id).unwrap();
        assert_eq!(
            prefix_complexity(&ec, &FiniteWord::from([0, a]), idx(2)).unwrap(),
            PrefixComplexity::ExceedsBound
        );
    }

    #[test]
    fn escape_needs_density() {
        struct Sparse;
        impl EffectiveClass for Sparse {
            fn id(&self) -> &str {
                "sparse"
            }
            fn capabilities(&self) -> crate::Capabilities {
                crate::Capabilities { decidable_equality: false, dense: false }
            }
            fn evaluate(&self, _: FunctionIndex, _: u64) -> Result<u64> {
                Ok(0)
            }
        }
        assert!(matches!(
            escape_index(&Sparse, &FiniteWord::empty(), &ComputableOrder::Identity),
            Err(Error::NotCapable { .. })
        ));
    }

    #[test]
    fn trap_on_constant_zero() {
        let ec = EcClass;
        let trap = trapping_order(&ec, idx(0), 3).unwrap();
        assert!(trap.points.windows(2).all(|w| w[0] < w[1]));
        assert!(decide_anticomplex(&ec, idx(0), &trap.order).unwrap());
        for n in 0..=3 {
            let u = non_interior_witness(&ec, &trap.order, &trap.points, idx(0), n).unwrap();
            assert_eq!(u.len() as u64, trap.points[n as usize]);
            assert!(FiniteWord::from(vec![0; n as usize]).is_prefix_of(&u));
            assert_eq!(
                prefix_complexity(&ec, &u, idx(n as u128)).unwrap(),
                PrefixComplexity::ExceedsBound
            );
            // [u] meets EC through an explicit code
            let j = ec_encode(&u).unwrap();
            assert!(extends_check(&ec, j, &u).unwrap());
        }
        let u1 = non_interior_witness(&ec, &trap.order, &trap.points, idx(0), 1).unwrap();
        assert_eq!(u1, FiniteWord::from([0, 1]));
    }

    #[test]
    fn trap_requires_capabilities() {
        assert!(matches!(
            trapping_order(&PrClass::default(), idx(0), 2),
            Err(Error::NotCapable { .. })
        ));
    }

    #[test]
    fn witness_rejects_bad_arguments() {
        let ec = EcClass;
        let trap = trapping_order(&ec, idx(2), 3).unwrap();
        assert!(non_interior_witness(&ec, &trap.order, &trap.points, idx(2), 1).is_err());
        assert!(non_interior_witness(&ec, &trap.order, &trap.points, idx(2), 9).is_err());
        assert!(non_interior_witness(&ec, &trap.order, &trap.points, idx(2), 2).is_ok());
    }
}
