//! Built-in Garside structures, the text file format and table validation.

mod abelian;
mod braid;
mod dihedral;
mod file;
mod validate;

use std::path::Path;

pub use abelian::build_free_abelian;
pub use braid::build_braid;
pub use dihedral::build_dihedral;
pub use file::{format_table, load_table, parse_table, save_table};
pub use validate::{validate_table, Violation, ViolationKind};

use crate::error::{Error, Result};
use crate::table::{GarsideTable, SimpleId};

/// Resolves a structure selector: `braid:n`, `dihedral:m`, `abelian:n`,
/// `file:<path>`, or a bare path.
pub fn structure_from_selector(selector: &str) -> Result<GarsideTable> {
    let parse_n = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| Error::OutOfRange(format!("`{s}` is not a non-negative integer")))
    };
    match selector.split_once(':') {
        Some(("braid", n)) => build_braid(parse_n(n)?),
        Some(("dihedral", m)) => build_dihedral(parse_n(m)?),
        Some(("abelian", n)) => build_free_abelian(parse_n(n)?),
        Some(("file", path)) => load_table(Path::new(path)),
        _ => load_table(Path::new(selector)),
    }
}

/// Finds a bijection of simples carrying `a` onto `b` that preserves the
/// product, both meets, `sigma` and `phi`. The map is pinned down by its
/// values on atoms, which are searched by backtracking.
pub fn tables_isomorphic(a: &GarsideTable, b: &GarsideTable) -> Option<Vec<SimpleId>> {
    if a.len() != b.len() || a.atoms().len() != b.atoms().len() {
        return None;
    }
    let atoms_a = a.atoms().to_vec();
    let atoms_b = b.atoms().to_vec();
    let mut image = vec![None; atoms_a.len()];
    let mut used = vec![false; atoms_b.len()];
    search(a, b, &atoms_a, &atoms_b, 0, &mut image, &mut used)
}

fn search(
    a: &GarsideTable,
    b: &GarsideTable,
    atoms_a: &[SimpleId],
    atoms_b: &[SimpleId],
    i: usize,
    image: &mut Vec<Option<SimpleId>>,
    used: &mut Vec<bool>,
) -> Option<Vec<SimpleId>> {
    if i == atoms_a.len() {
        return extend(a, b, atoms_a, image);
    }
    for j in 0..atoms_b.len() {
        if used[j] {
            continue;
        }
        // Cheap pruning: pairwise products between atoms must match.
        let consistent = (0..i).all(|k| {
            let fk = image[k].expect("assigned");
            a.product(atoms_a[k], atoms_a[i]).is_some() == b.product(fk, atoms_b[j]).is_some()
                && a.product(atoms_a[i], atoms_a[k]).is_some() == b.product(atoms_b[j], fk).is_some()
        });
        if !consistent {
            continue;
        }
        image[i] = Some(atoms_b[j]);
        used[j] = true;
        if let Some(map) = search(a, b, atoms_a, atoms_b, i + 1, image, used) {
            return Some(map);
        }
        used[j] = false;
        image[i] = None;
    }
    None
}

fn extend(a: &GarsideTable, b: &GarsideTable, atoms_a: &[SimpleId], image: &[Option<SimpleId>]) -> Option<Vec<SimpleId>> {
    let n = a.len();
    let mut map: Vec<Option<SimpleId>> = vec![None; n];
    map[0] = Some(SimpleId::UNIT);
    let mut frontier = vec![SimpleId::UNIT];
    while let Some(u) = frontier.pop() {
        let fu = map[u.index()]?;
        for (k, &s) in atoms_a.iter().enumerate() {
            let fs = image[k]?;
            let Some(us) = a.product(u, s) else {
                if b.product(fu, fs).is_some() {
                    return None;
                }
                continue;
            };
            let fus = b.product(fu, fs)?;
            match map[us.index()] {
                Some(existing) if existing != fus => return None,
                Some(_) => {}
                None => {
                    map[us.index()] = Some(fus);
                    frontier.push(us);
                }
            }
        }
    }
    let map: Vec<SimpleId> = map.into_iter().collect::<Option<_>>()?;
    let mut seen = vec![false; n];
    for f in &map {
        if std::mem::replace(&mut seen[f.index()], true) {
            return None;
        }
    }
    let f = |u: SimpleId| map[u.index()];
    if f(a.delta()) != b.delta() {
        return None;
    }
    for u in a.simples() {
        if f(a.sigma(u)) != b.sigma(f(u)) || f(a.phi(u)) != b.phi(f(u)) {
            return None;
        }
        for v in a.simples() {
            if a.product(u, v).map(f) != b.product(f(u), f(v))
                || f(a.meet_l(u, v)) != b.meet_l(f(u), f(v))
                || f(a.meet_r(u, v)) != b.meet_r(f(u), f(v))
            {
                return None;
            }
        }
    }
    Some(map)
}
