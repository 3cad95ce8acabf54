//! Size-ordered numbering of unary terms.
//!
//! Terms are ordered by node count, then by constructor (`Z < S < P < C < R`).
//! Within a constructor the order is fixed by the unranking below:
//! projections by `k`; compositions by outer arity, outer size, outer rank,
//! then the inner tuple (first component size, its rank, then the rest);
//! recursions by base size, base rank, then step rank.

use std::sync::OnceLock;

use super::term::PrTerm;
use crate::class::FunctionIndex;
use crate::error::{Error, Result};

/// Counts are exact when `Some`; `None` means "more than `u128::MAX`".
type Count = Option<u128>;

fn add(a: Count, b: Count) -> Count {
    a?.checked_add(b?)
}

fn mul(a: Count, b: Count) -> Count {
    match (a, b) {
        (Some(0), _) | (_, Some(0)) => Some(0),
        (Some(x), Some(y)) => x.checked_mul(y),
        _ => None,
    }
}

fn below(r: u128, block: Count) -> bool {
    block.is_none_or(|b| r < b)
}

fn divmod(r: u128, d: Count) -> (u128, u128) {
    match d {
        Some(d) => (r / d, r % d),
        None => (0, r),
    }
}

/// Entries are tabulated for `size + arity <= LIMIT`, a region closed under
/// the subterm relation.
const LIMIT: usize = 48;

struct Counts {
    /// `terms[s][a]`: terms of size `s` and arity `a`.
    terms: Vec<Vec<Count>>,
    /// `tuples[a][m][t]`: `m`-tuples of arity-`a` terms with total size `t`.
    tuples: Vec<Vec<Vec<Count>>>,
}

impl Counts {
    fn build() -> Counts {
        let mut c = Counts {
            terms: vec![vec![Some(0); LIMIT + 1]; LIMIT + 1],
            tuples: vec![vec![vec![Some(0); LIMIT + 1]; LIMIT + 1]; LIMIT + 1],
        };
        for a in 0..=LIMIT {
            c.tuples[a][0][0] = Some(1);
        }
        for s in 1..LIMIT {
            for a in 1..=LIMIT - s {
                c.terms[s][a] = if s == 1 {
                    Some(a as u128 + if a == 1 { 2 } else { 0 })
                } else {
                    let mut total = Some(0);
                    for m in 1..=s - 2 {
                        for sf in 1..=s - 1 - m {
                            total = add(total, mul(c.t(sf, m), c.g(m, s - 1 - sf, a)));
                        }
                    }
                    if a >= 2 {
                        for sb in 1..=s - 2 {
                            total = add(total, mul(c.t(sb, a - 1), c.t(s - 1 - sb, a + 1)));
                        }
                    }
                    total
                };
            }
            for a in 1..=LIMIT - s {
                for m in 1..=s {
                    let mut total = Some(0);
                    for x in 1..=s + 1 - m {
                        total = add(total, mul(c.t(x, a), c.g(m - 1, s - x, a)));
                    }
                    c.tuples[a][m][s] = total;
                }
            }
        }
        c
    }

    fn t(&self, s: usize, a: usize) -> Count {
        debug_assert!(s + a <= LIMIT, "size {s} arity {a} outside the table");
        self.terms[s][a]
    }

    fn g(&self, m: usize, t: usize, a: usize) -> Count {
        if m > t {
            return Some(0);
        }
        self.tuples[a][m][t]
    }

    fn unrank(&self, s: usize, a: usize, mut r: u128) -> PrTerm {
        if s == 1 {
            return match (a, r) {
                (1, 0) => PrTerm::Zero,
                (1, 1) => PrTerm::Succ,
                (1, _) => PrTerm::Proj { arity: 1, index: (r - 1) as usize },
                _ => PrTerm::Proj { arity: a, index: r as usize + 1 },
            };
        }
        for m in 1..=s - 2 {
            for sf in 1..=s - 1 - m {
                let t = s - 1 - sf;
                let tuples = self.g(m, t, a);
                let block = mul(self.t(sf, m), tuples);
                if below(r, block) {
                    let (fr, gr) = divmod(r, tuples);
                    let outer = self.unrank(sf, m, fr);
                    let inner = self.unrank_tuple(m, t, a, gr);
                    return PrTerm::comp(outer, inner).expect("enumerated compositions are well-formed");
                }
                r -= block.expect("finite block");
            }
        }
        for sb in 1..=s - 2 {
            let ss = s - 1 - sb;
            let steps = self.t(ss, a + 1);
            let block = mul(self.t(sb, a - 1), steps);
            if below(r, block) {
                let (br, sr) = divmod(r, steps);
                let base = self.unrank(sb, a - 1, br);
                let step = self.unrank(ss, a + 1, sr);
                return PrTerm::prim_rec(base, step).expect("enumerated recursions are well-formed");
            }
            r -= block.expect("finite block");
        }
        unreachable!("rank out of range for size {s} arity {a}")
    }

    fn unrank_tuple(&self, m: usize, t: usize, a: usize, mut r: u128) -> Vec<PrTerm> {
        if m == 0 {
            return Vec::new();
        }
        for x in 1..=t + 1 - m {
            let rest = self.g(m - 1, t - x, a);
            let block = mul(self.t(x, a), rest);
            if below(r, block) {
                let (hr, rr) = divmod(r, rest);
                let mut out = vec![self.unrank(x, a, hr)];
                out.extend(self.unrank_tuple(m - 1, t - x, a, rr));
                return out;
            }
            r -= block.expect("finite block");
        }
        unreachable!("tuple rank out of range")
    }

    /// Position of `term` among terms of its size and arity.
    fn rank_in(&self, term: &PrTerm) -> Count {
        let s = term.size();
        let a = term.arity();
        if s + a > LIMIT {
            return None;
        }
        match term {
            PrTerm::Zero => Some(0),
            PrTerm::Succ => Some(1),
            PrTerm::Proj { arity: 1, .. } => Some(2),
            PrTerm::Proj { index, .. } => Some(*index as u128 - 1),
            PrTerm::Comp { outer, inner, .. } => {
                let (m, sf) = (outer.arity(), outer.size());
                let mut offset = Some(0);
                for m2 in 1..=s - 2 {
                    for sf2 in 1..=s - 1 - m2 {
                        if (m2, sf2) == (m, sf) {
                            let tuples = self.g(m, s - 1 - sf, a);
                            let here = add(
                                mul(self.rank_in(outer), tuples),
                                self.rank_tuple(inner, a),
                            );
                            return add(offset, here);
                        }
                        offset = add(offset, mul(self.t(sf2, m2), self.g(m2, s - 1 - sf2, a)));
                    }
                }
                unreachable!("composition shape outside its size block")
            }
            PrTerm::PrimRec { base, step, .. } => {
                let mut offset = Some(0);
                for m in 1..=s - 2 {
                    for sf in 1..=s - 1 - m {
                        offset = add(offset, mul(self.t(sf, m), self.g(m, s - 1 - sf, a)));
                    }
                }
                let sb = base.size();
                for sb2 in 1..sb {
                    offset = add(offset, mul(self.t(sb2, a - 1), self.t(s - 1 - sb2, a + 1)));
                }
                let here = add(
                    mul(self.rank_in(base), self.t(step.size(), a + 1)),
                    self.rank_in(step),
                );
                add(offset, here)
            }
        }
    }

    fn rank_tuple(&self, gs: &[PrTerm], a: usize) -> Count {
        let Some((head, rest)) = gs.split_first() else {
            return Some(0);
        };
        let m = gs.len();
        let t: usize = gs.iter().map(PrTerm::size).sum();
        let x = head.size();
        let mut offset = Some(0);
        for x2 in 1..x {
            offset = add(offset, mul(self.t(x2, a), self.g(m - 1, t - x2, a)));
        }
        let here = add(
            mul(self.rank_in(head), self.g(m - 1, t - x, a)),
            self.rank_tuple(rest, a),
        );
        add(offset, here)
    }
}

fn counts() -> &'static Counts {
    static COUNTS: OnceLock<Counts> = OnceLock::new();
    COUNTS.get_or_init(Counts::build)
}

/// Number of unary terms with exactly `size` nodes, if tabulated and exact.
pub fn terms_of_size(size: usize) -> Option<u128> {
    if size == 0 {
        return Some(0);
    }
    if size >= LIMIT {
        return None;
    }
    counts().t(size, 1)
}

/// The `i`-th unary term. Total on every index below the tabulated range
/// (well beyond `2^64`).
pub fn pr_enumerate(i: FunctionIndex) -> Result<PrTerm> {
    let c = counts();
    let mut r = i.value();
    for s in 1..LIMIT {
        let block = c.t(s, 1);
        if below(r, block) {
            return Ok(c.unrank(s, 1, r));
        }
        r -= block.expect("finite block");
    }
    Err(Error::Overflow("index beyond the tabulated term sizes"))
}

/// Inverse of [`pr_enumerate`] on unary terms.
pub fn pr_rank(term: &PrTerm) -> Result<FunctionIndex> {
    if term.arity() != 1 {
        return Err(Error::InvalidArgument(format!(
            "only unary terms are numbered, `{term}` has arity {}",
            term.arity()
        )));
    }
    let c = counts();
    let s = term.size();
    if s >= LIMIT {
        return Err(Error::Overflow("term larger than the tabulated sizes"));
    }
    let mut offset = Some(0);
    for s2 in 1..s {
        offset = add(offset, c.t(s2, 1));
    }
    add(offset, c.rank_in(term))
        .map(FunctionIndex)
        .ok_or(Error::Overflow("term index exceeds u128"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pr::{pr_parse, pr_render};
    use std::collections::HashSet;

    fn idx(i: u128) -> FunctionIndex {
        FunctionIndex(i)
    }

    #[test]
    fn smallest_terms() {
        assert_eq!(pr_enumerate(idx(0)).unwrap(), PrTerm::Zero);
        assert_eq!(pr_enumerate(idx(1)).unwrap(), PrTerm::Succ);
        assert_eq!(pr_enumerate(idx(2)).unwrap(), PrTerm::Proj { arity: 1, index: 1 });
        assert_eq!(pr_enumerate(idx(3)).unwrap().size(), 3);
    }

    // Counted by hand: size 1 has Z, S, P[1,1]; size 2 is empty; size 3 is
    // C(f; g) with unary leaves (3*3); size 4 is C(P[2,k]; g1, g2) (2*3*3).
    #[test]
    fn small_size_counts() {
        assert_eq!(terms_of_size(1), Some(3));
        assert_eq!(terms_of_size(2), Some(0));
        assert_eq!(terms_of_size(3), Some(9));
        assert_eq!(terms_of_size(4), Some(18));
    }

    #[test]
    fn sizes_are_nondecreasing_and_rank_inverts() {
        let mut last = 0;
        for i in 0..3000u128 {
            let t = pr_enumerate(idx(i)).unwrap();
            assert!(t.size() >= last);
            last = t.size();
            assert_eq!(t.arity(), 1);
            assert_eq!(pr_rank(&t).unwrap(), idx(i), "rank of {t}");
        }
    }

    #[test]
    fn no_duplicates_in_prefix() {
        let mut seen = HashSet::new();
        for i in 0..5000u128 {
            assert!(seen.insert(pr_enumerate(idx(i)).unwrap()));
        }
    }

    #[test]
    fn table_reaches_past_u64() {
        let mut total: u128 = 0;
        for s in 1..LIMIT {
            match terms_of_size(s) {
                Some(n) => match total.checked_add(n) {
                    Some(t) => total = t,
                    None => return,
                },
                None => return,
            }
        }
        assert!(total > u64::MAX as u128, "only {total} terms tabulated");
    }

    #[test]
    fn rank_of_parsed_terms() {
        for text in ["Z", "S", "P[1,1]", "C(S; Z)", "C(P[2,2]; S, Z)", "C(R(P[1,1], C(S; P[3,3])); P[1,1], P[1,1])"] {
            let t = pr_parse(text).unwrap();
            let i = pr_rank(&t).unwrap();
            assert_eq!(pr_render(&pr_enumerate(i).unwrap()), text);
        }
        assert!(pr_rank(&pr_parse("P[2,1]").unwrap()).is_err());
    }
}
