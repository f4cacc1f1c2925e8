//! Axiom checks for a [`GarsideTable`].

use std::fmt;

use crate::table::{GarsideTable, SimpleId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    Names,
    Product,
    Unit,
    Associativity,
    Cancellativity,
    Divisibility,
    Balance,
    Lattice,
    Join,
    Complement,
    Phi,
    Grading,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ViolationKind::Names => "names",
            ViolationKind::Product => "product",
            ViolationKind::Unit => "unit",
            ViolationKind::Associativity => "associativity",
            ViolationKind::Cancellativity => "cancellativity",
            ViolationKind::Divisibility => "divisibility",
            ViolationKind::Balance => "balance",
            ViolationKind::Lattice => "lattice",
            ViolationKind::Join => "join",
            ViolationKind::Complement => "complement",
            ViolationKind::Phi => "phi",
            ViolationKind::Grading => "grading",
        };
        f.write_str(s)
    }
}

/// One failed axiom, with a human-readable witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
}

impl Violation {
    pub fn new(kind: ViolationKind, detail: String) -> Violation {
        Violation { kind, detail }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violation: {}", self.kind, self.detail)
    }
}

/// Dense bitset over simple indices.
#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Bits {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            (0..64).filter(move |b| word >> b & 1 == 1).map(move |b| w * 64 + b)
        })
    }
}

/// Caps the number of witnesses reported per axiom.
const MAX_PER_KIND: usize = 8;

struct Report<'t> {
    table: &'t GarsideTable,
    out: Vec<Violation>,
}

impl Report<'_> {
    fn push(&mut self, kind: ViolationKind, detail: String) {
        if self.out.iter().filter(|v| v.kind == kind).count() < MAX_PER_KIND {
            self.out.push(Violation::new(kind, detail));
        }
    }

    fn name(&self, u: usize) -> &str {
        self.table.simple_name(SimpleId::from_index(u))
    }
}

/// Returns every violated axiom; an empty list means the table is a valid
/// Garside structure on its simples.
pub fn validate_table(t: &GarsideTable) -> Vec<Violation> {
    let n = t.len();
    let id = SimpleId::from_index;
    let delta = t.delta();
    let mut r = Report { table: t, out: Vec::new() };

    if delta == SimpleId::UNIT {
        r.push(ViolationKind::Unit, "Delta equals the unit".into());
        return r.out;
    }
    if t.simple_name(SimpleId::UNIT) != "1" {
        r.push(ViolationKind::Names, "the unit must be named `1`".into());
    }

    // Unit laws, and the unit is the only invertible simple.
    for u in 0..n {
        if t.product(SimpleId::UNIT, id(u)) != Some(id(u)) || t.product(id(u), SimpleId::UNIT) != Some(id(u)) {
            r.push(ViolationKind::Unit, format!("1 is not neutral for {}", r.name(u)));
        }
        for v in 1..n {
            if u != 0 && t.product(id(u), id(v)) == Some(SimpleId::UNIT) {
                r.push(
                    ViolationKind::Unit,
                    format!("{} * {} = 1 for non-unit simples", r.name(u), r.name(v)),
                );
            }
        }
    }

    for &(u, v, w) in t.cancellation_conflicts() {
        r.push(
            ViolationKind::Cancellativity,
            format!(
                "{} * {} = {} clashes with another product",
                t.simple_name(u),
                t.simple_name(v),
                t.simple_name(w)
            ),
        );
    }

    // Partial associativity in both directions.
    for u in 0..n {
        for v in 0..n {
            if let Some(uv) = t.product(id(u), id(v)) {
                for w in 0..n {
                    if let Some(left) = t.product(uv, id(w)) {
                        let right = t.product(id(v), id(w)).and_then(|vw| t.product(id(u), vw));
                        if right != Some(left) {
                            r.push(
                                ViolationKind::Associativity,
                                format!("({} {}) {} defined but {} ({} {}) differs", r.name(u), r.name(v), r.name(w), r.name(u), r.name(v), r.name(w)),
                            );
                        }
                    }
                }
            }
            if let Some(vw) = t.product(id(u), id(v)) {
                // here (u, v) plays the role of (v, w) in x (v w)
                for x in 0..n {
                    if let Some(right) = t.product(id(x), vw) {
                        let left = t.product(id(x), id(u)).and_then(|xu| t.product(xu, id(v)));
                        if left != Some(right) {
                            r.push(
                                ViolationKind::Associativity,
                                format!("{} ({} {}) defined but ({} {}) {} differs", r.name(x), r.name(u), r.name(v), r.name(x), r.name(u), r.name(v)),
                            );
                        }
                    }
                }
            }
        }
    }

    // Grading.
    if t.is_graded() {
        for u in 0..n {
            for v in 0..n {
                if let Some(w) = t.product(id(u), id(v)) {
                    let len = |s: SimpleId| t.simple_length(s).unwrap_or(0);
                    if len(w) != len(id(u)) + len(id(v)) {
                        r.push(
                            ViolationKind::Grading,
                            format!("length of {} * {} is not additive", r.name(u), r.name(v)),
                        );
                    }
                }
            }
        }
    } else {
        r.push(ViolationKind::Grading, "no consistent atom length exists on the simples".into());
    }

    // Divisor sets.
    let mut div_l = vec![Bits::new(n); n];
    let mut div_r = vec![Bits::new(n); n];
    let mut up_l = vec![Bits::new(n); n];
    let mut up_r = vec![Bits::new(n); n];
    for u in 0..n {
        for v in 0..n {
            if let Some(w) = t.product(id(u), id(v)) {
                div_l[w.index()].set(u);
                up_l[u].set(w.index());
                div_r[w.index()].set(v);
                up_r[v].set(w.index());
            }
        }
    }
    for u in 0..n {
        if !div_l[delta.index()].get(u) {
            r.push(ViolationKind::Divisibility, format!("{} does not left-divide Delta", r.name(u)));
        }
        if !div_r[delta.index()].get(u) {
            r.push(ViolationKind::Divisibility, format!("{} does not right-divide Delta", r.name(u)));
        }
    }
    if div_l[delta.index()] != div_r[delta.index()] {
        r.push(ViolationKind::Balance, "left and right divisors of Delta differ".into());
    }

    // Lattice: intersections of down-sets are principal, and agree with the
    // stored meets; intersections of up-sets are principal.
    let lengths: Vec<u32> = (0..n).map(|u| t.simple_length(id(u)).unwrap_or(0)).collect();
    let principal = |set: &Bits, family: &[Bits], prefer_long: bool| -> Option<usize> {
        let best = if prefer_long {
            set.ones().max_by_key(|&x| lengths[x])
        } else {
            set.ones().min_by_key(|&x| lengths[x])
        }?;
        (family[best] == *set).then_some(best)
    };
    for u in 0..n {
        for v in u..n {
            for (side, div, up, stored) in [
                ("left", &div_l, &up_l, t.meet_l(id(u), id(v))),
                ("right", &div_r, &up_r, t.meet_r(id(u), id(v))),
            ] {
                let common = div[u].and(&div[v]);
                match principal(&common, div, true) {
                    None => r.push(
                        ViolationKind::Lattice,
                        format!("{} and {} have no {side} meet", r.name(u), r.name(v)),
                    ),
                    Some(m) if m != stored.index() => r.push(
                        ViolationKind::Lattice,
                        format!(
                            "stored {side} meet of {} and {} is {}, expected {}",
                            r.name(u),
                            r.name(v),
                            t.simple_name(stored),
                            r.name(m)
                        ),
                    ),
                    Some(_) => {}
                }
                let stored_rev = if side == "left" { t.meet_l(id(v), id(u)) } else { t.meet_r(id(v), id(u)) };
                if stored_rev != stored {
                    r.push(
                        ViolationKind::Lattice,
                        format!("stored {side} meet of {} and {} is not symmetric", r.name(u), r.name(v)),
                    );
                }
                let above = up[u].and(&up[v]);
                if principal(&above, up, false).is_none() {
                    r.push(
                        ViolationKind::Join,
                        format!("{} and {} have no {side} join among the simples", r.name(u), r.name(v)),
                    );
                }
            }
        }
    }

    // Complement and conjugation.
    let mut sigma_seen = vec![false; n];
    for u in 0..n {
        let s = t.sigma(id(u));
        if t.product(id(u), s) != Some(delta) {
            r.push(
                ViolationKind::Complement,
                format!("{} * sigma({}) = {} * {} is not Delta", r.name(u), r.name(u), r.name(u), t.simple_name(s)),
            );
        }
        if std::mem::replace(&mut sigma_seen[s.index()], true) {
            r.push(ViolationKind::Complement, format!("sigma is not injective at {}", t.simple_name(s)));
        }
    }
    if t.sigma(SimpleId::UNIT) != delta || t.sigma(delta) != SimpleId::UNIT {
        r.push(ViolationKind::Complement, "sigma must swap 1 and Delta".into());
    }
    let mut phi_seen = vec![false; n];
    for u in 0..n {
        let p = t.phi(id(u));
        if std::mem::replace(&mut phi_seen[p.index()], true) {
            r.push(ViolationKind::Phi, format!("phi is not injective at {}", t.simple_name(p)));
        }
        if t.phi(t.sigma(t.sigma(id(u)))) != id(u) {
            r.push(ViolationKind::Phi, format!("phi(sigma(sigma({}))) differs from it", r.name(u)));
        }
        for v in 0..n {
            if let Some(w) = t.product(id(u), id(v)) {
                if t.product(t.phi(id(u)), t.phi(id(v))) != Some(t.phi(w)) {
                    r.push(
                        ViolationKind::Phi,
                        format!("phi does not preserve {} * {}", r.name(u), r.name(v)),
                    );
                }
            }
        }
    }
    if t.phi(delta) != delta {
        r.push(ViolationKind::Phi, "phi(Delta) is not Delta".into());
    }

    r.out
}
