//! The eventually-constant class.
//!
//! Index `i` decodes to a word `w`. The empty word names the constant-zero
//! function; otherwise `f_i(n) = w_n` for `n < |w|` and `f_i(n) = w_{|w|-1}`
//! afterwards. Words are coded by `code(ε) = 0`,
//! `code(a·w) = 1 + pair(a, code(w))` with the Cantor pairing
//! `pair(a, b) = (a+b)(a+b+1)/2 + b`, which makes decoding a bijection
//! `ℕ → ℕ*`.

use crate::class::{Capabilities, EffectiveClass, Equality, FunctionIndex};
use crate::error::{Error, Result};
use crate::word::FiniteWord;

/// `w(w+1)/2`, or `None` on overflow.
fn triangle(w: u128) -> Option<u128> {
    if w.is_multiple_of(2) {
        (w / 2).checked_mul(w + 1)
    } else {
        w.checked_mul(w.div_ceil(2))
    }
}

/// Largest `w` with `w(w+1)/2 ≤ z`.
fn triangle_root(z: u128) -> u128 {
    if z <= u128::MAX >> 4 {
        return ((8 * z + 1).isqrt() - 1) / 2;
    }
    // sqrt(2z) lies in [sqrt z, 2 sqrt z]
    let mut lo = z.isqrt();
    let mut hi = 2 * lo + 1;
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        match triangle(mid) {
            Some(t) if t <= z => lo = mid,
            _ => hi = mid - 1,
        }
    }
    lo
}

pub fn pair(a: u128, b: u128) -> Option<u128> {
    triangle(a.checked_add(b)?)?.checked_add(b)
}

pub fn unpair(z: u128) -> (u128, u128) {
    let w = triangle_root(z);
    // triangle(w) ≤ z so it cannot overflow
    let b = z - triangle(w).expect("triangle of root fits");
    (w - b, b)
}

/// Decode an index into its word. Fails only when an entry exceeds `u64`.
pub fn ec_decode(i: FunctionIndex) -> Result<FiniteWord> {
    let mut code = i.value();
    let mut word = FiniteWord::empty();
    while code > 0 {
        let (a, rest) = unpair(code - 1);
        let a = u64::try_from(a).map_err(|_| Error::Overflow("word entry exceeds u64"))?;
        word.push(a);
        code = rest;
    }
    Ok(word)
}

pub fn ec_encode(w: &FiniteWord) -> Result<FunctionIndex> {
    let mut code: u128 = 0;
    for &a in w.iter().rev() {
        code = pair(a as u128, code)
            .and_then(|p| p.checked_add(1))
            .ok_or(Error::Overflow("word code exceeds u128"))?;
    }
    Ok(FunctionIndex(code))
}

/// The reduced representative of the function a word names: trailing
/// repeats dropped, and the empty word read as `(0)`.
pub fn canonical_word(w: &FiniteWord) -> FiniteWord {
    let mut v = w.to_vec();
    if v.is_empty() {
        return FiniteWord::from([0]);
    }
    while v.len() >= 2 && v[v.len() - 1] == v[v.len() - 2] {
        v.pop();
    }
    FiniteWord::new(v)
}

fn value_at(w: &FiniteWord, n: u64) -> u64 {
    match w.len() {
        0 => 0,
        len => w[(n.min(len as u64 - 1)) as usize],
    }
}

/// The eventually-constant class: dense, with decidable equality.
#[derive(Debug, Clone, Copy, Default)]
pub struct EcClass;

impl EffectiveClass for EcClass {
    fn id(&self) -> &str {
        "ec"
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities {
            decidable_equality: true,
            dense: true,
        }
    }

    fn evaluate(&self, i: FunctionIndex, n: u64) -> Result<u64> {
        Ok(value_at(&ec_decode(i)?, n))
    }

    fn prefix_word(&self, i: FunctionIndex, n: u64) -> Result<FiniteWord> {
        let w = ec_decode(i)?;
        Ok((0..n).map(|m| value_at(&w, m)).collect())
    }

    fn exact_equality(&self, i: FunctionIndex, j: FunctionIndex) -> Option<Result<Equality>> {
        Some((|| {
            let wi = canonical_word(&ec_decode(i)?);
            let wj = canonical_word(&ec_decode(j)?);
            if wi == wj {
                return Ok(Equality::Equal);
            }
            // both functions are constant from max(|wi|,|wj|) - 1 onwards
            let span = wi.len().max(wj.len()) as u64;
            let n = (0..span)
                .find(|&n| value_at(&wi, n) != value_at(&wj, n))
                .expect("distinct canonical words differ before their common tail");
            Ok(Equality::DifferAt(n))
        })())
    }

    fn extension_witness(&self, u: &FiniteWord) -> Option<Result<FunctionIndex>> {
        if u.is_empty() {
            Some(ec_encode(&FiniteWord::from([0])))
        } else {
            Some(ec_encode(u))
        }
    }
}
