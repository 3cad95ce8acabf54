//! Independent generator of small primitive-recursive terms.

use std::collections::HashSet;

use ceclab::pr::PrTerm;

pub const MAX_SIZE: usize = 4;
const MAX_ARITY: usize = MAX_SIZE + 2;

/// All well-formed terms of size ≤ `MAX_SIZE`, grown to a fixed point by
/// closing the leaves under composition and recursion.
pub fn generate_small_terms() -> HashSet<PrTerm> {
    let mut terms: HashSet<PrTerm> = HashSet::new();
    terms.insert(PrTerm::Zero);
    terms.insert(PrTerm::Succ);
    for n in 1..=MAX_ARITY {
        for k in 1..=n {
            terms.insert(PrTerm::proj(n, k).unwrap());
        }
    }
    loop {
        let snapshot: Vec<PrTerm> = terms.iter().cloned().collect();
        let mut added = false;
        let mut add = |t: PrTerm, terms: &mut HashSet<PrTerm>| {
            if t.size() <= MAX_SIZE && terms.insert(t) {
                added = true;
            }
        };
        for b in &snapshot {
            for s in &snapshot {
                if b.size() + s.size() < MAX_SIZE {
                    if let Ok(t) = PrTerm::prim_rec(b.clone(), s.clone()) {
                        add(t, &mut terms);
                    }
                }
            }
        }
        for f in &snapshot {
            let m = f.arity();
            if f.size() + m >= MAX_SIZE {
                continue;
            }
            // inner tuples of length m whose sizes fit
            let budget = MAX_SIZE - 1 - f.size();
            let mut tuples: Vec<Vec<PrTerm>> = vec![vec![]];
            for _ in 0..m {
                let mut next = Vec::new();
                for tup in &tuples {
                    let used: usize = tup.iter().map(PrTerm::size).sum();
                    for g in &snapshot {
                        if used + g.size() <= budget && tup.first().is_none_or(|h| h.arity() == g.arity()) {
                            let mut t = tup.clone();
                            t.push(g.clone());
                            next.push(t);
                        }
                    }
                }
                tuples = next;
            }
            for inner in tuples {
                if let Ok(t) = PrTerm::comp(f.clone(), inner) {
                    add(t, &mut terms);
                }
            }
        }
        if !added {
            return terms;
        }
    }
}
