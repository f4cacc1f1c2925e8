//! Dihedral Artin groups `I2(m)` with generators `s`, `t`.

use crate::error::{Error, Result};
use crate::table::{GarsideTable, SimpleId};

pub const MAX_DIHEDRAL: usize = 50;

/// A proper alternating word, or Delta.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Word {
    Unit,
    /// First letter (`false` = s) and length `1..m`.
    Alt(bool, usize),
    Delta,
}

fn spell(first: bool, len: usize) -> String {
    (0..len)
        .map(|i| if (i % 2 == 1) ^ first { 't' } else { 's' })
        .collect()
}

/// Builds the Garside structure on `I2(m) = <s, t | sts... = tst...>` whose
/// simples are the alternating words of length at most `m`.
pub fn build_dihedral(m: usize) -> Result<GarsideTable> {
    if !(3..=MAX_DIHEDRAL).contains(&m) {
        return Err(Error::OutOfRange(format!("dihedral parameter must lie in 3..={MAX_DIHEDRAL}, got {m}")));
    }
    let mut words = vec![Word::Unit];
    for len in 1..m {
        words.push(Word::Alt(false, len));
        words.push(Word::Alt(true, len));
    }
    words.push(Word::Delta);

    let names: Vec<String> = words
        .iter()
        .map(|w| match *w {
            Word::Unit => "1".to_string(),
            Word::Alt(first, len) => spell(first, len),
            Word::Delta => spell(false, m),
        })
        .collect();
    let position = |w: Word| words.iter().position(|&x| x == w).map(SimpleId::from_index);
    let delta = SimpleId::from_index(words.len() - 1);

    let product = |u: SimpleId, v: SimpleId| match (words[u.index()], words[v.index()]) {
        (Word::Unit, _) => Some(v),
        (_, Word::Unit) => Some(u),
        (Word::Alt(f1, l1), Word::Alt(f2, l2)) => {
            let last_is_t = ((l1 - 1) % 2 == 1) ^ f1;
            // the concatenation must keep alternating
            if last_is_t == f2 {
                return None;
            }
            match (l1 + l2).cmp(&m) {
                std::cmp::Ordering::Less => position(Word::Alt(f1, l1 + l2)),
                std::cmp::Ordering::Equal => Some(delta),
                std::cmp::Ordering::Greater => None,
            }
        }
        _ => None,
    };
    GarsideTable::from_product_fn(&format!("dihedral:{m}"), names, delta, product)
}
