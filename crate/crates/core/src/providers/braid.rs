//! Positive permutation braids.
//!
//! The simples of `B_n` are the `n!` permutation braids. A braid is stored as
//! the permutation it induces, `u * v` is simple exactly when the lengths
//! (inversion counts) add up, and each simple is named by its lexicographically
//! least reduced word over `a, b, c, ...` (`a` is the first Artin generator).

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::table::{GarsideTable, SimpleId};

/// Largest supported braid index.
pub const MAX_BRAID: usize = 7;

/// Above this index the cubic axiom sweep is skipped; the construction is
/// correct by design and the sweep would dominate the build time.
const VALIDATE_UP_TO: usize = 5;

type Perm = Vec<u8>;

fn compose(x: &[u8], y: &[u8]) -> Perm {
    y.iter().map(|&j| x[j as usize]).collect()
}

fn inversions(p: &[u8]) -> u32 {
    let mut count = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                count += 1;
            }
        }
    }
    count
}

fn transposition(n: usize, i: usize) -> Perm {
    let mut p: Perm = (0..n as u8).collect();
    p.swap(i, i + 1);
    p
}

/// Lexicographically least reduced word, as generator indices.
fn lexmin_word(p: &[u8], gens: &[Perm]) -> Vec<usize> {
    let mut word = Vec::new();
    let mut cur = p.to_vec();
    let mut len = inversions(&cur);
    while len > 0 {
        // first generator that is a left descent of `cur`
        let (i, next) = gens
            .iter()
            .enumerate()
            .map(|(i, g)| (i, compose(g, &cur)))
            .find(|(_, q)| inversions(q) < len)
            .expect("a nontrivial permutation has a descent");
        word.push(i);
        cur = next;
        len -= 1;
    }
    word
}

fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut p: Perm = (0..n as u8).collect();
    loop {
        out.push(p.clone());
        // next permutation in lexicographic order
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).expect("exists");
        p.swap(i, j);
        p[i + 1..].reverse();
    }
    out
}

/// Builds the classical Garside structure of the braid group `B_n`.
pub fn build_braid(n: usize) -> Result<GarsideTable> {
    if !(2..=MAX_BRAID).contains(&n) {
        return Err(Error::OutOfRange(format!("braid index must lie in 2..={MAX_BRAID}, got {n}")));
    }
    let gens: Vec<Perm> = (0..n - 1).map(|i| transposition(n, i)).collect();
    let letter = |i: usize| (b'a' + i as u8) as char;

    let mut simples: Vec<(u32, String, Perm)> = all_perms(n)
        .into_iter()
        .map(|p| {
            let word = lexmin_word(&p, &gens);
            let name = if word.is_empty() {
                "1".to_string()
            } else {
                word.iter().map(|&i| letter(i)).collect()
            };
            (word.len() as u32, name, p)
        })
        .collect();
    simples.sort_by(|x, y| (x.0, &x.1).cmp(&(y.0, &y.1)));

    let index: HashMap<Perm, u16> = simples
        .iter()
        .enumerate()
        .map(|(i, (_, _, p))| (p.clone(), i as u16))
        .collect();
    let lengths: Vec<u32> = simples.iter().map(|s| s.0).collect();
    let perms: Vec<Perm> = simples.iter().map(|s| s.2.clone()).collect();
    let names: Vec<String> = simples.into_iter().map(|s| s.1).collect();
    let delta = SimpleId::from_index(names.len() - 1);

    let product = |u: SimpleId, v: SimpleId| {
        let w = compose(&perms[u.index()], &perms[v.index()]);
        let id = SimpleId::from_index(index[&w] as usize);
        (lengths[id.index()] == lengths[u.index()] + lengths[v.index()]).then_some(id)
    };
    let name = format!("braid:{n}");
    if n <= VALIDATE_UP_TO {
        GarsideTable::from_product_fn(&name, names, delta, product)
    } else {
        GarsideTable::from_product_fn_trusted(&name, names, delta, product)
    }
}
