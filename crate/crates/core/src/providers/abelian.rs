//! Free abelian groups `Z^n` with the square-free monomials as simples.

use crate::error::{Error, Result};
use crate::table::{GarsideTable, SimpleId};

pub const MAX_ABELIAN: usize = 12;

const VALIDATE_UP_TO: usize = 8;

/// Generator names: `x, y, z` for up to three generators, letters from `a`
/// otherwise.
fn generator_names(n: usize) -> Vec<char> {
    if n <= 3 {
        ['x', 'y', 'z'][..n].to_vec()
    } else {
        (0..n).map(|i| (b'a' + i as u8) as char).collect()
    }
}

/// Builds `Z^n`. The simple with index `i` is the subset whose bitmask is
/// `i`, so ids double as masks.
pub fn build_free_abelian(n: usize) -> Result<GarsideTable> {
    if !(1..=MAX_ABELIAN).contains(&n) {
        return Err(Error::OutOfRange(format!("abelian rank must lie in 1..={MAX_ABELIAN}, got {n}")));
    }
    let letters = generator_names(n);
    let size = 1usize << n;
    let names: Vec<String> = (0..size)
        .map(|mask| {
            if mask == 0 {
                "1".to_string()
            } else {
                (0..n).filter(|i| mask >> i & 1 == 1).map(|i| letters[i]).collect()
            }
        })
        .collect();
    let delta = SimpleId::from_index(size - 1);
    let product = |u: SimpleId, v: SimpleId| {
        let (u, v) = (u.index(), v.index());
        (u & v == 0).then(|| SimpleId::from_index(u | v))
    };
    let name = format!("abelian:{n}");
    if n <= VALIDATE_UP_TO {
        GarsideTable::from_product_fn(&name, names, delta, product)
    } else {
        GarsideTable::from_product_fn_trusted(&name, names, delta, product)
    }
}
