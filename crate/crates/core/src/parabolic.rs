//! Parabolic substructures `(H, N, delta)`.
//!
//! A balanced simple `delta` whose divisors are closed under the products
//! defined in the table generates a parabolic subgroup `H` with positive
//! monoid `N`. This module validates such a `delta` and provides the
//! `N`-tail, `N`-reducedness, `omega = delta^-1 Delta` with its shifts
//! `omega_i = phi^-(i-1)(omega)`, the products `d_k = omega_1 ... omega_k`,
//! and membership tests for `N` and `H`.

use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use crate::automaton::CosetAutomaton;
use crate::budget::Budget;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::table::{GarsideTable, SimpleId};

/// A validated parabolic substructure of a table.
#[derive(Clone, Debug)]
pub struct ParabolicData<'t> {
    table: &'t GarsideTable,
    delta_sub: SimpleId,
    div_delta: Vec<SimpleId>,
    in_div: Vec<bool>,
    omega: SimpleId,
    /// Conjugation by `delta` on `Div(delta)`, indexed by simple.
    phi_sub: Vec<Option<SimpleId>>,
    improper: bool,
    automaton: OnceLock<CosetAutomaton>,
}

/// Builds and validates the parabolic substructure generated by `delta_sub`.
pub fn make_parabolic(t: &GarsideTable, delta_sub: SimpleId) -> Result<ParabolicData<'_>> {
    t.check(delta_sub)?;
    if delta_sub == SimpleId::UNIT {
        return Err(Error::Parabolic("delta must not be the unit".into()));
    }
    let n = t.len();
    let name = |u: SimpleId| t.simple_name(u).to_string();

    let left: Vec<bool> = t.simples().map(|u| t.left_divides(u, delta_sub)).collect();
    let right: Vec<bool> = t.simples().map(|u| t.right_divides(u, delta_sub)).collect();
    if left != right {
        let witness = t
            .simples()
            .find(|u| left[u.index()] != right[u.index()])
            .expect("sets differ");
        return Err(Error::Parabolic(format!(
            "{} is not balanced: {} divides it on one side only",
            name(delta_sub),
            name(witness)
        )));
    }
    let in_div = left;
    let div_delta: Vec<SimpleId> = t.simples().filter(|u| in_div[u.index()]).collect();

    for &u in &div_delta {
        for &v in &div_delta {
            if let Some(w) = t.product(u, v) {
                if !in_div[w.index()] {
                    return Err(Error::Parabolic(format!(
                        "closure fails: {} * {} = {} is simple but does not divide {}",
                        name(u),
                        name(v),
                        name(w),
                        name(delta_sub)
                    )));
                }
            }
        }
    }

    let omega = t
        .left_quotient(delta_sub, t.delta())
        .ok_or_else(|| Error::Internal("delta does not divide Delta".into()))?;

    // sigma_delta(u) = u \ delta; conjugation by delta is the inverse of
    // sigma_delta o sigma_delta, as for Delta itself.
    let sigma_sub = |u: SimpleId| t.left_quotient(u, delta_sub).expect("u divides delta");
    let mut phi_sub = vec![None; n];
    for &u in &div_delta {
        let image = sigma_sub(sigma_sub(u));
        if phi_sub[image.index()].replace(u).is_some() {
            return Err(Error::Parabolic("conjugation by delta is not a permutation of Div(delta)".into()));
        }
    }

    Ok(ParabolicData {
        table: t,
        delta_sub,
        improper: delta_sub == t.delta(),
        div_delta,
        in_div,
        omega,
        phi_sub,
        automaton: OnceLock::new(),
    })
}

/// Selects `delta` by simple name; `D` names Delta.
pub fn parabolic_by_name<'t>(t: &'t GarsideTable, name: &str) -> Result<ParabolicData<'t>> {
    let id = match t.lookup(name) {
        Some(id) => id,
        None if name == "D" => t.delta(),
        None => return Err(Error::UnknownName(name.to_string())),
    };
    make_parabolic(t, id)
}

impl<'t> ParabolicData<'t> {
    pub fn table(&self) -> &'t GarsideTable {
        self.table
    }

    pub fn delta_sub(&self) -> SimpleId {
        self.delta_sub
    }

    /// `Div(delta)` in index order.
    pub fn div_delta(&self) -> &[SimpleId] {
        &self.div_delta
    }

    pub fn in_div_delta(&self, u: SimpleId) -> bool {
        self.in_div[u.index()]
    }

    /// `omega` with `delta * omega = Delta`.
    pub fn omega(&self) -> SimpleId {
        self.omega
    }

    /// `delta u delta^-1` for `u` in `Div(delta)`.
    pub fn phi_sub(&self, u: SimpleId) -> Option<SimpleId> {
        self.phi_sub[u.index()]
    }

    /// True when `delta = Delta`, i.e. `H = G`.
    pub fn is_improper(&self) -> bool {
        self.improper
    }

    /// `tau_N(a)` and the cofactor `c` with `a = tau_N(a) c`, by repeatedly
    /// stripping `x = c ^_L delta` until it is trivial.
    pub fn tail(&self, a: &Element) -> Result<(Element, Element)> {
        let t = self.table;
        let mut b = Element::identity();
        let mut c = a.clone();
        loop {
            let x = t.meet_with_simple(&c, self.delta_sub)?;
            if x == SimpleId::UNIT {
                return Ok((b, c));
            }
            let x = t.simple_element(x);
            b = t.multiply(&b, &x);
            c = t.multiply(&t.invert(&x), &c);
        }
    }

    /// The coset automaton, built on first use and kept with the parabolic.
    pub fn automaton(&self) -> &CosetAutomaton {
        self.automaton.get_or_init(|| CosetAutomaton::build(self))
    }

    /// `a ^_L delta = 1`.
    pub fn is_n_reduced(&self, a: &Element) -> Result<bool> {
        Ok(self.table.meet_with_simple(a, self.delta_sub)? == SimpleId::UNIT)
    }

    /// `omega_i = phi^-(i-1)(omega)` for `i >= 1`.
    pub fn omega_i(&self, i: u64) -> Result<SimpleId> {
        if i == 0 {
            return Err(Error::OutOfRange("omega_i needs i >= 1".into()));
        }
        Ok(self.table.phi_pow(self.omega, 1 - i as i64))
    }

    /// `d_k = omega_1 ... omega_k` for `k >= 1`.
    pub fn d_k(&self, k: u64) -> Result<Element> {
        if k == 0 {
            return Err(Error::OutOfRange("d_k needs k >= 1".into()));
        }
        let factors = (1..=k).map(|i| self.omega_i(i)).collect::<Result<Vec<_>>>()?;
        Ok(self.table.positive_from_simples(&factors))
    }

    /// `a` is positive and all its greedy factors lie in `Div(delta)`.
    pub fn in_submonoid(&self, a: &Element) -> bool {
        match self.table.left_greedy_factors(a) {
            Ok(factors) => factors.iter().all(|&u| self.in_div[u.index()]),
            Err(_) => false,
        }
    }

    /// `x` lies in `H`: both parts of its left orthogonal form lie in `N`.
    pub fn in_subgroup(&self, x: &Element) -> bool {
        let (numerator, denominator) = self.table.left_orthogonal(x);
        self.in_submonoid(&numerator) && self.in_submonoid(&denominator)
    }

    /// Elements of `H` with word length at most `radius`, found by breadth
    /// first search over `Div(delta)` and its inverses. Each element is paired
    /// with its word length over those generators.
    pub fn subgroup_ball(&self, radius: u64, budget: &mut Budget) -> Result<Vec<(Element, u64)>> {
        let t = self.table;
        let generators: Vec<Element> = self
            .div_delta
            .iter()
            .filter(|&&u| u != SimpleId::UNIT)
            .flat_map(|&u| {
                let e = t.simple_element(u);
                [t.invert(&e), e]
            })
            .collect();
        let mut dist: HashMap<Element, u64> = HashMap::new();
        dist.insert(Element::identity(), 0);
        let mut queue = VecDeque::from([Element::identity()]);
        while let Some(x) = queue.pop_front() {
            let d = dist[&x];
            if d == radius {
                continue;
            }
            budget.spend(generators.len())?;
            for g in &generators {
                let y = t.multiply(&x, g);
                if !dist.contains_key(&y) {
                    dist.insert(y.clone(), d + 1);
                    queue.push_back(y);
                }
            }
        }
        let mut out: Vec<(Element, u64)> = dist.into_iter().collect();
        out.sort();
        Ok(out)
    }
}
