mod common;

use std::collections::BTreeSet;

use ceclab::pr::{addition, multiplication, pr_enumerate, pr_eval, pr_parse, pr_rank, PrTerm, DEFAULT_FUEL};
use ceclab::FunctionIndex;
use common::{generate_small_terms, MAX_SIZE};

#[test]
fn enumeration_covers_small_terms() {
    let unary: BTreeSet<String> = generate_small_terms()
        .into_iter()
        .filter(|t| t.arity() == 1)
        .map(|t| t.to_string())
        .collect();
    assert_eq!(unary.len(), 30);
    let listed: Vec<PrTerm> = (0..30u128).map(|i| pr_enumerate(FunctionIndex(i)).unwrap()).collect();
    assert!(listed.windows(2).all(|w| w[0].size() <= w[1].size()));
    let listed: BTreeSet<String> = listed.iter().map(|t| t.to_string()).collect();
    assert_eq!(listed, unary);
    assert!(pr_enumerate(FunctionIndex(30)).unwrap().size() > MAX_SIZE);
}

#[test]
fn render_parse_roundtrip() {
    for i in 0..10_000u128 {
        let t = pr_enumerate(FunctionIndex(i)).unwrap();
        let back = pr_parse(&t.to_string()).unwrap();
        assert_eq!(back, t, "index {i}");
        assert_eq!(pr_rank(&back).unwrap(), FunctionIndex(i));
    }
}

#[test]
fn arithmetic_terms() {
    let add = addition();
    let mul = multiplication();
    for x in 0..=10u64 {
        for y in 0..=10u64 {
            assert_eq!(pr_eval(&add, &[x, y], DEFAULT_FUEL).unwrap(), x + y);
            assert_eq!(pr_eval(&mul, &[x, y], DEFAULT_FUEL).unwrap(), x * y);
        }
    }
}
