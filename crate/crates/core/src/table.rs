//! Finite tables of simple elements.
//!
//! A [`GarsideTable`] stores the divisors of the Garside element together
//! with their partial product, the two divisibility meets, the right
//! complement `sigma` (with `u * sigma(u) = Delta`) and the conjugation
//! `phi(u) = Delta u Delta^-1`. Everything else in the crate is computed from
//! these dense tables.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::providers::{validate_table, Violation, ViolationKind};

const NONE: u16 = u16::MAX;

/// Index of a simple element inside its table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleId(u16);

impl SimpleId {
    /// The identity; always index 0.
    pub const UNIT: SimpleId = SimpleId(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Builds an id from a raw index. The index is not checked against any table.
    pub fn from_index(index: usize) -> SimpleId {
        assert!(index < NONE as usize, "simple index {index} too large");
        SimpleId(index as u16)
    }
}

impl fmt::Display for SimpleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Raw table contents, used to move tables in and out of [`GarsideTable`]
/// without re-deriving anything.
#[derive(Clone, Debug)]
pub struct TableParts {
    pub name: String,
    pub names: Vec<String>,
    pub delta: SimpleId,
    /// Row-major `n * n` partial product.
    pub product: Vec<Option<SimpleId>>,
    pub meet_l: Vec<SimpleId>,
    pub meet_r: Vec<SimpleId>,
    pub sigma: Vec<SimpleId>,
    pub phi: Vec<SimpleId>,
}

/// Immutable Garside structure given by its simple elements.
#[derive(Clone, Debug)]
pub struct GarsideTable {
    name: String,
    names: Vec<String>,
    index: HashMap<String, SimpleId>,
    delta: SimpleId,
    atoms: Vec<SimpleId>,
    lengths: Option<Vec<u32>>,
    product: Vec<u16>,
    left_quotient: Vec<u16>,
    right_quotient: Vec<u16>,
    meet_l: Vec<u16>,
    meet_r: Vec<u16>,
    sigma: Vec<u16>,
    phi: Vec<u16>,
    phi_inv: Vec<u16>,
    phi_order: u32,
    cancellation_conflicts: Vec<(SimpleId, SimpleId, SimpleId)>,
}

impl PartialEq for GarsideTable {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
            && self.delta == other.delta
            && self.product == other.product
            && self.meet_l == other.meet_l
            && self.meet_r == other.meet_r
            && self.sigma == other.sigma
            && self.phi == other.phi
    }
}

impl Eq for GarsideTable {}

fn encode(id: Option<SimpleId>) -> u16 {
    id.map_or(NONE, |s| s.0)
}

fn decode(raw: u16) -> Option<SimpleId> {
    (raw != NONE).then_some(SimpleId(raw))
}

/// Divisibility data derived from a bare product table.
struct Derived {
    left_quotient: Vec<u16>,
    right_quotient: Vec<u16>,
    atoms: Vec<SimpleId>,
    lengths: Option<Vec<u32>>,
    conflicts: Vec<(SimpleId, SimpleId, SimpleId)>,
}

fn derive(n: usize, product: &[u16]) -> Derived {
    let mut left_quotient = vec![NONE; n * n];
    let mut right_quotient = vec![NONE; n * n];
    let mut conflicts = Vec::new();
    for u in 0..n {
        for v in 0..n {
            let w = product[u * n + v];
            if w == NONE {
                continue;
            }
            let w = w as usize;
            // u \ w = v
            let slot = &mut left_quotient[u * n + w];
            if *slot != NONE && *slot as usize != v {
                conflicts.push((SimpleId(u as u16), SimpleId(v as u16), SimpleId(w as u16)));
            } else {
                *slot = v as u16;
            }
            // w / v = u
            let slot = &mut right_quotient[v * n + w];
            if *slot != NONE && *slot as usize != u {
                conflicts.push((SimpleId(u as u16), SimpleId(v as u16), SimpleId(w as u16)));
            } else {
                *slot = u as u16;
            }
        }
    }

    // Atoms: non-unit simples whose only left divisors are 1 and themselves.
    let atoms: Vec<SimpleId> = (1..n)
        .filter(|&u| (1..n).all(|t| t == u || left_quotient[t * n + u] == NONE))
        .map(|u| SimpleId(u as u16))
        .collect();

    let lengths = atom_lengths(n, &atoms, &left_quotient);

    Derived {
        left_quotient,
        right_quotient,
        atoms,
        lengths,
        conflicts,
    }
}

/// Length of each simple as a product of atoms, or `None` when the table
/// admits no such grading (cycles, or a simple without atom divisor).
fn atom_lengths(n: usize, atoms: &[SimpleId], left_quotient: &[u16]) -> Option<Vec<u32>> {
    const UNKNOWN: u32 = u32::MAX;
    const VISITING: u32 = u32::MAX - 1;
    let mut lengths = vec![UNKNOWN; n];
    lengths[0] = 0;

    fn visit(
        u: usize,
        n: usize,
        atoms: &[SimpleId],
        lq: &[u16],
        lengths: &mut [u32],
    ) -> Option<u32> {
        match lengths[u] {
            UNKNOWN => {}
            VISITING => return None,
            l => return Some(l),
        }
        lengths[u] = VISITING;
        let atom = atoms.iter().find(|s| lq[s.index() * n + u] != NONE)?;
        let rest = lq[atom.index() * n + u] as usize;
        if rest == u {
            return None;
        }
        let l = visit(rest, n, atoms, lq, lengths)? + 1;
        lengths[u] = l;
        Some(l)
    }

    for u in 1..n {
        visit(u, n, atoms, left_quotient, &mut lengths)?;
    }
    Some(lengths)
}

impl GarsideTable {
    /// Builds a table from a product function on simple indices and checks
    /// every structural axiom. `names[0]` must be the unit.
    pub fn from_product_fn<F>(name: &str, names: Vec<String>, delta: SimpleId, f: F) -> Result<Self>
    where
        F: Fn(SimpleId, SimpleId) -> Option<SimpleId>,
    {
        let n = names.len();
        let mut product = vec![NONE; n * n];
        for u in 0..n {
            for v in 0..n {
                product[u * n + v] = encode(f(SimpleId(u as u16), SimpleId(v as u16)));
            }
        }
        Self::complete(name, names, delta, product, true)
    }

    /// Like [`GarsideTable::from_product_fn`] but skips the cubic axiom
    /// sweep. Meant for large built-in families that are correct by
    /// construction.
    pub(crate) fn from_product_fn_trusted<F>(name: &str, names: Vec<String>, delta: SimpleId, f: F) -> Result<Self>
    where
        F: Fn(SimpleId, SimpleId) -> Option<SimpleId>,
    {
        let n = names.len();
        let mut product = vec![NONE; n * n];
        for u in 0..n {
            for v in 0..n {
                product[u * n + v] = encode(f(SimpleId(u as u16), SimpleId(v as u16)));
            }
        }
        Self::complete(name, names, delta, product, false)
    }

    /// Builds a table from explicit products `u * v = w` between non-unit
    /// simples; products with the unit are implied.
    pub fn from_products(
        name: &str,
        names: Vec<String>,
        delta: SimpleId,
        products: &[(SimpleId, SimpleId, SimpleId)],
    ) -> Result<Self> {
        let n = names.len();
        let mut product = vec![NONE; n * n];
        for u in 0..n {
            product[u] = u as u16;
            product[u * n] = u as u16;
        }
        let mut violations = Vec::new();
        for &(u, v, w) in products {
            for id in [u, v, w] {
                if id.index() >= n {
                    return Err(Error::InvalidSimple(id.index(), n));
                }
            }
            let slot = &mut product[u.index() * n + v.index()];
            if *slot != NONE && *slot != w.0 {
                violations.push(Violation::new(
                    ViolationKind::Product,
                    format!(
                        "{} * {} given as both {} and {}",
                        names[u.index()],
                        names[v.index()],
                        names[*slot as usize],
                        names[w.index()]
                    ),
                ));
            }
            *slot = w.0;
        }
        if !violations.is_empty() {
            return Err(Error::Validation(violations));
        }
        Self::complete(name, names, delta, product, true)
    }

    fn complete(name: &str, names: Vec<String>, delta: SimpleId, product: Vec<u16>, validate: bool) -> Result<Self> {
        let n = names.len();
        if n < 2 {
            return Err(Error::OutOfRange("a table needs at least the unit and Delta".into()));
        }
        if delta.index() >= n || delta == SimpleId::UNIT {
            return Err(Error::OutOfRange(format!("Delta index {} is not a non-unit simple", delta.0)));
        }
        let derived = derive(n, &product);
        let mut violations = Vec::new();

        let mut sigma = vec![NONE; n];
        for u in 0..n {
            let s = derived.left_quotient[u * n + delta.index()];
            if s == NONE {
                violations.push(Violation::new(
                    ViolationKind::Divisibility,
                    format!("{} does not left-divide Delta", names[u]),
                ));
            }
            sigma[u] = s;
        }
        if derived.lengths.is_none() {
            violations.push(Violation::new(
                ViolationKind::Grading,
                "no consistent atom length exists on the simples".into(),
            ));
        }
        if !violations.is_empty() {
            return Err(Error::Validation(violations));
        }

        let mut phi_inv = vec![NONE; n];
        for u in 0..n {
            phi_inv[u] = sigma[sigma[u] as usize];
        }
        let mut phi = vec![NONE; n];
        for u in 0..n {
            let image = phi_inv[u] as usize;
            if phi[image] != NONE {
                return Err(Error::Validation(vec![Violation::new(
                    ViolationKind::Phi,
                    "sigma o sigma is not a permutation of the simples".into(),
                )]));
            }
            phi[image] = u as u16;
        }

        let lengths = derived.lengths.as_ref().expect("checked above");
        let (meet_l, meet_r) = compute_meets(n, &product, &derived, lengths);

        let parts = TableParts {
            name: name.to_string(),
            names,
            delta,
            product: product.iter().map(|&p| decode(p)).collect(),
            meet_l: meet_l.iter().map(|&m| SimpleId(m)).collect(),
            meet_r: meet_r.iter().map(|&m| SimpleId(m)).collect(),
            sigma: sigma.iter().map(|&s| SimpleId(s)).collect(),
            phi: phi.iter().map(|&s| SimpleId(s)).collect(),
        };
        let table = Self::from_parts_unchecked(parts)?;
        if !validate {
            return Ok(table);
        }
        let violations = validate_table(&table);
        if violations.is_empty() {
            Ok(table)
        } else {
            Err(Error::Validation(violations))
        }
    }

    /// Wraps raw parts without checking any axiom. Shape errors (wrong table
    /// sizes, out-of-range ids) are still rejected; use
    /// [`validate_table`] for everything else.
    pub fn from_parts_unchecked(parts: TableParts) -> Result<Self> {
        let n = parts.names.len();
        let shape_ok = parts.product.len() == n * n
            && parts.meet_l.len() == n * n
            && parts.meet_r.len() == n * n
            && parts.sigma.len() == n
            && parts.phi.len() == n;
        if !shape_ok || n < 2 || n >= NONE as usize {
            return Err(Error::OutOfRange("table parts have inconsistent sizes".into()));
        }
        let in_range = |s: &SimpleId| s.index() < n;
        let ids_ok = parts.delta.index() < n
            && parts.product.iter().flatten().all(in_range)
            && parts.meet_l.iter().all(in_range)
            && parts.meet_r.iter().all(in_range)
            && parts.sigma.iter().all(in_range)
            && parts.phi.iter().all(in_range);
        if !ids_ok {
            return Err(Error::OutOfRange("table parts reference a simple out of range".into()));
        }
        let mut index = HashMap::new();
        for (i, name) in parts.names.iter().enumerate() {
            if index.insert(name.clone(), SimpleId(i as u16)).is_some() {
                return Err(Error::Validation(vec![Violation::new(
                    ViolationKind::Names,
                    format!("duplicate simple name `{name}`"),
                )]));
            }
        }

        let product: Vec<u16> = parts.product.iter().map(|&p| encode(p)).collect();
        let derived = derive(n, &product);
        let phi: Vec<u16> = parts.phi.iter().map(|s| s.0).collect();
        let mut phi_inv = vec![NONE; n];
        for (u, &image) in phi.iter().enumerate() {
            phi_inv[image as usize] = u as u16;
        }
        let phi_order = permutation_order(&phi);

        Ok(GarsideTable {
            name: parts.name,
            names: parts.names,
            index,
            delta: parts.delta,
            atoms: derived.atoms,
            lengths: derived.lengths,
            product,
            left_quotient: derived.left_quotient,
            right_quotient: derived.right_quotient,
            meet_l: parts.meet_l.iter().map(|s| s.0).collect(),
            meet_r: parts.meet_r.iter().map(|s| s.0).collect(),
            sigma: parts.sigma.iter().map(|s| s.0).collect(),
            phi,
            phi_inv,
            phi_order,
            cancellation_conflicts: derived.conflicts,
        })
    }

    pub fn to_parts(&self) -> TableParts {
        TableParts {
            name: self.name.clone(),
            names: self.names.clone(),
            delta: self.delta,
            product: self.product.iter().map(|&p| decode(p)).collect(),
            meet_l: self.meet_l.iter().map(|&m| SimpleId(m)).collect(),
            meet_r: self.meet_r.iter().map(|&m| SimpleId(m)).collect(),
            sigma: self.sigma.iter().map(|&s| SimpleId(s)).collect(),
            phi: self.phi.iter().map(|&s| SimpleId(s)).collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of simples, including the unit and Delta.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn delta(&self) -> SimpleId {
        self.delta
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn simple_name(&self, u: SimpleId) -> &str {
        &self.names[u.index()]
    }

    pub fn lookup(&self, name: &str) -> Option<SimpleId> {
        self.index.get(name).copied()
    }

    pub fn check(&self, u: SimpleId) -> Result<SimpleId> {
        if u.index() < self.len() {
            Ok(u)
        } else {
            Err(Error::InvalidSimple(u.index(), self.len()))
        }
    }

    /// All simples in index order.
    pub fn simples(&self) -> impl Iterator<Item = SimpleId> + '_ {
        (0..self.len()).map(|i| SimpleId(i as u16))
    }

    /// The generating set: every simple except the unit.
    pub fn generators(&self) -> impl Iterator<Item = SimpleId> + '_ {
        (1..self.len()).map(|i| SimpleId(i as u16))
    }

    pub fn atoms(&self) -> &[SimpleId] {
        &self.atoms
    }

    /// Number of atoms in any factorization of `u`, if the table is graded.
    pub fn simple_length(&self, u: SimpleId) -> Option<u32> {
        self.lengths.as_ref().map(|l| l[u.index()])
    }

    pub(crate) fn is_graded(&self) -> bool {
        self.lengths.is_some()
    }

    pub(crate) fn cancellation_conflicts(&self) -> &[(SimpleId, SimpleId, SimpleId)] {
        &self.cancellation_conflicts
    }

    #[inline]
    fn at(&self, u: SimpleId, v: SimpleId) -> usize {
        u.index() * self.len() + v.index()
    }

    /// `u * v` when it is again simple.
    #[inline]
    pub fn product(&self, u: SimpleId, v: SimpleId) -> Option<SimpleId> {
        decode(self.product[self.at(u, v)])
    }

    /// The simple `r` with `t * r = y`, when `t` left-divides `y`.
    #[inline]
    pub fn left_quotient(&self, t: SimpleId, y: SimpleId) -> Option<SimpleId> {
        decode(self.left_quotient[self.at(t, y)])
    }

    /// The simple `r` with `r * t = y`, when `t` right-divides `y`.
    #[inline]
    pub fn right_quotient(&self, y: SimpleId, t: SimpleId) -> Option<SimpleId> {
        decode(self.right_quotient[self.at(t, y)])
    }

    #[inline]
    pub fn meet_l(&self, u: SimpleId, v: SimpleId) -> SimpleId {
        SimpleId(self.meet_l[self.at(u, v)])
    }

    #[inline]
    pub fn meet_r(&self, u: SimpleId, v: SimpleId) -> SimpleId {
        SimpleId(self.meet_r[self.at(u, v)])
    }

    /// `u <=_L v`.
    #[inline]
    pub fn left_divides(&self, u: SimpleId, v: SimpleId) -> bool {
        self.left_quotient[self.at(u, v)] != NONE
    }

    /// `u <=_R v`.
    #[inline]
    pub fn right_divides(&self, u: SimpleId, v: SimpleId) -> bool {
        self.right_quotient[self.at(u, v)] != NONE
    }

    /// Right complement: `u * sigma(u) = Delta`.
    #[inline]
    pub fn sigma(&self, u: SimpleId) -> SimpleId {
        SimpleId(self.sigma[u.index()])
    }

    /// Left complement: `left_complement(u) * u = Delta`.
    #[inline]
    pub fn left_complement(&self, u: SimpleId) -> SimpleId {
        self.phi(self.sigma(u))
    }

    /// Conjugation by Delta: `Delta u Delta^-1`.
    #[inline]
    pub fn phi(&self, u: SimpleId) -> SimpleId {
        SimpleId(self.phi[u.index()])
    }

    #[inline]
    pub fn phi_inv(&self, u: SimpleId) -> SimpleId {
        SimpleId(self.phi_inv[u.index()])
    }

    /// Order of `phi` as a permutation of the simples.
    pub fn phi_order(&self) -> u32 {
        self.phi_order
    }

    /// `phi^k(u)` for any integer `k`, reduced modulo the order of `phi`.
    pub fn phi_pow(&self, u: SimpleId, k: i64) -> SimpleId {
        let r = k.rem_euclid(self.phi_order as i64);
        let mut out = u;
        for _ in 0..r {
            out = self.phi(out);
        }
        out
    }
}

fn permutation_order(perm: &[u16]) -> u32 {
    let n = perm.len();
    let mut seen = vec![false; n];
    let mut order: u64 = 1;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i] as usize;
            len += 1;
        }
        order = lcm(order, len);
    }
    order as u32
}

fn lcm(a: u64, b: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// Meets by atom recursion: if an atom `s` divides both `u` and `v` then
/// `u ^ v = s (s\u ^ s\v)`, and the meet is trivial when no atom divides both.
fn compute_meets(n: usize, product: &[u16], derived: &Derived, lengths: &[u32]) -> (Vec<u16>, Vec<u16>) {
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&u| lengths[u]);
    let lq = &derived.left_quotient;
    let rq = &derived.right_quotient;

    let mut meet_l = vec![0u16; n * n];
    let mut meet_r = vec![0u16; n * n];
    for &u in &order {
        for &v in &order {
            let mut m = 0u16;
            for s in &derived.atoms {
                let s = s.index();
                let (a, b) = (lq[s * n + u], lq[s * n + v]);
                if a != NONE && b != NONE {
                    let inner = meet_l[a as usize * n + b as usize] as usize;
                    m = product[s * n + inner];
                    break;
                }
            }
            meet_l[u * n + v] = if m == NONE { 0 } else { m };

            let mut m = 0u16;
            for s in &derived.atoms {
                let s = s.index();
                let (a, b) = (rq[s * n + u], rq[s * n + v]);
                if a != NONE && b != NONE {
                    let inner = meet_r[a as usize * n + b as usize] as usize;
                    m = product[inner * n + s];
                    break;
                }
            }
            meet_r[u * n + v] = if m == NONE { 0 } else { m };
        }
    }
    (meet_l, meet_r)
}
