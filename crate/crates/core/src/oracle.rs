//! Naive reference computations for tests.
//!
//! [`Oracle`] never calls the normal form machinery. Group elements are keyed as
//! `Delta^k R` with `R` a positive word over the atoms that `Delta` does not
//! divide, read only from the product table. Two positive words are equal
//! when one rewrites into the other by swapping a factor that spells a simple
//! for another spelling of the same simple; the key stores the
//! lexicographically least word of the class of `R`.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::rc::Rc;

use crate::budget::Budget;
use crate::element::{Element, Letter, Sign};
use crate::error::{Error, Result};
use crate::parabolic::ParabolicData;
use crate::table::{GarsideTable, SimpleId};

/// `Delta^delta` times the positive atom word `word` (atom indices).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OracleKey {
    pub delta: i64,
    pub word: Vec<u8>,
}

impl OracleKey {
    pub fn identity() -> OracleKey {
        OracleKey { delta: 0, word: Vec::new() }
    }

    pub fn is_positive(&self) -> bool {
        self.delta >= 0
    }
}

type Class = Rc<Vec<Vec<u8>>>;

/// Word problem solver working from the product table alone.
pub struct Oracle<'t> {
    table: &'t GarsideTable,
    atoms: Vec<SimpleId>,
    /// Every atom spelling of every simple, sorted.
    spellings: Vec<Vec<Vec<u8>>>,
    /// Atom index of `Delta u Delta^-1` for each atom.
    phi_atom: Vec<u8>,
    /// `Delta u Delta^-1` as a simple.
    phi_simple: Vec<SimpleId>,
    sigma: Vec<SimpleId>,
    classes: RefCell<HashMap<Vec<u8>, Class>>,
}

impl<'t> Oracle<'t> {
    pub fn new(t: &'t GarsideTable) -> Oracle<'t> {
        let n = t.len();
        let atoms: Vec<SimpleId> = t.atoms().to_vec();
        assert!(atoms.len() < 256, "too many atoms for the oracle");

        let mut spellings: Vec<Vec<Vec<u8>>> = vec![Vec::new(); n];
        let mut stack: Vec<(SimpleId, Vec<u8>)> = vec![(SimpleId::UNIT, Vec::new())];
        while let Some((u, w)) = stack.pop() {
            spellings[u.index()].push(w.clone());
            for (i, &a) in atoms.iter().enumerate() {
                if let Some(v) = t.product(u, a) {
                    let mut w2 = w.clone();
                    w2.push(i as u8);
                    stack.push((v, w2));
                }
            }
        }
        for s in &mut spellings {
            s.sort();
            s.dedup();
        }

        let sigma: Vec<SimpleId> = t
            .simples()
            .map(|u| {
                t.simples()
                    .find(|&v| t.product(u, v) == Some(t.delta()))
                    .expect("every simple divides Delta")
            })
            .collect();
        // Delta^-1 u Delta = sigma^2(u)
        let mut phi_simple = vec![SimpleId::UNIT; n];
        for u in t.simples() {
            let image = sigma[sigma[u.index()].index()];
            phi_simple[image.index()] = u;
        }
        let phi_atom = atoms
            .iter()
            .map(|a| {
                let image = phi_simple[a.index()];
                atoms.iter().position(|&b| b == image).expect("phi permutes atoms") as u8
            })
            .collect();

        Oracle {
            table: t,
            atoms,
            spellings,
            phi_atom,
            phi_simple,
            sigma,
            classes: RefCell::new(HashMap::new()),
        }
    }

    pub fn table(&self) -> &'t GarsideTable {
        self.table
    }

    pub fn atoms(&self) -> &[SimpleId] {
        &self.atoms
    }

    fn spell(&self, u: SimpleId) -> &[u8] {
        &self.spellings[u.index()][0]
    }

    fn delta_word(&self) -> &[u8] {
        self.spell(self.table.delta())
    }

    /// All positive words equal to `w`, sorted.
    fn class(&self, w: &[u8]) -> Class {
        if let Some(c) = self.classes.borrow().get(w) {
            return c.clone();
        }
        let t = self.table;
        let mut seen: BTreeSet<Vec<u8>> = BTreeSet::new();
        seen.insert(w.to_vec());
        let mut queue = VecDeque::from([w.to_vec()]);
        while let Some(x) = queue.pop_front() {
            for i in 0..x.len() {
                let mut cur = self.atoms[x[i] as usize];
                for j in i + 1..x.len() {
                    match t.product(cur, self.atoms[x[j] as usize]) {
                        Some(v) => cur = v,
                        None => break,
                    }
                    for sp in &self.spellings[cur.index()] {
                        if sp[..] != x[i..=j] {
                            let mut y = x[..i].to_vec();
                            y.extend_from_slice(sp);
                            y.extend_from_slice(&x[j + 1..]);
                            if seen.insert(y.clone()) {
                                queue.push_back(y);
                            }
                        }
                    }
                }
            }
        }
        let class: Class = Rc::new(seen.into_iter().collect());
        let mut memo = self.classes.borrow_mut();
        for m in class.iter() {
            memo.insert(m.clone(), class.clone());
        }
        class
    }

    /// Applies `u -> Delta^k u Delta^-k` letterwise.
    fn phi_word(&self, w: &[u8], k: i64) -> Vec<u8> {
        let order = self.phi_order();
        let k = k.rem_euclid(order as i64) as usize;
        w.iter()
            .map(|&a| {
                let mut a = a;
                for _ in 0..k {
                    a = self.phi_atom[a as usize];
                }
                a
            })
            .collect()
    }

    fn phi_order(&self) -> usize {
        let mut k = 1;
        let mut cur = self.phi_atom.clone();
        while cur.iter().enumerate().any(|(i, &a)| a as usize != i) {
            cur = cur.iter().map(|&a| self.phi_atom[a as usize]).collect();
            k += 1;
        }
        k
    }

    /// Pulls every `Delta` out of `Delta^k word`.
    fn reduce(&self, mut k: i64, mut word: Vec<u8>) -> OracleKey {
        let dw = self.delta_word().to_vec();
        loop {
            let class = self.class(&word);
            match class.iter().find(|w| w.starts_with(&dw)) {
                Some(w) => {
                    word = w[dw.len()..].to_vec();
                    k += 1;
                }
                None => return OracleKey { delta: k, word: class[0].clone() },
            }
        }
    }

    pub fn mul(&self, a: &OracleKey, b: &OracleKey) -> OracleKey {
        // Delta^k1 R1 Delta^k2 R2 = Delta^(k1+k2) phi^-k2(R1) R2
        let mut word = self.phi_word(&a.word, -b.delta);
        word.extend_from_slice(&b.word);
        self.reduce(a.delta + b.delta, word)
    }

    pub fn letter_key(&self, l: Letter) -> OracleKey {
        match l.sign {
            Sign::Pos => self.reduce(0, self.spell(l.simple).to_vec()),
            Sign::Neg => {
                // s^-1 = sigma(s) Delta^-1 = Delta^-1 phi(sigma(s))
                let y = self.phi_simple[self.sigma[l.simple.index()].index()];
                self.reduce(-1, self.spell(y).to_vec())
            }
        }
    }

    pub fn mul_letter(&self, a: &OracleKey, l: Letter) -> OracleKey {
        self.mul(a, &self.letter_key(l))
    }

    pub fn key_of_word(&self, word: &[Letter]) -> OracleKey {
        word.iter().fold(OracleKey::identity(), |k, &l| self.mul_letter(&k, l))
    }

    /// Reads the stored data of an element as a word; no normalization.
    pub fn key_of_element(&self, x: &Element) -> OracleKey {
        let delta = self.table.delta();
        let p = x.delta_power();
        let mut word: Vec<Letter> = Vec::new();
        let l = if p < 0 { Letter::neg(delta) } else { Letter::pos(delta) };
        word.extend(std::iter::repeat_n(l, p.unsigned_abs() as usize));
        word.extend(x.body().iter().map(|&u| Letter::pos(u)));
        self.key_of_word(&word)
    }

    /// `Delta^k` followed by the atoms of the key.
    pub fn word_of(&self, k: &OracleKey) -> Vec<Letter> {
        let delta = self.table.delta();
        let l = if k.delta < 0 { Letter::neg(delta) } else { Letter::pos(delta) };
        let mut out = vec![l; k.delta.unsigned_abs() as usize];
        out.extend(k.word.iter().map(|&a| Letter::pos(self.atoms[a as usize])));
        out
    }

    /// Evaluates a key with the kernel, for comparing results.
    pub fn to_element(&self, k: &OracleKey) -> Element {
        self.table.normalize(&self.word_of(k)).expect("letters come from the table")
    }

    pub fn inverse(&self, k: &OracleKey) -> OracleKey {
        let word: Vec<Letter> = self.word_of(k).into_iter().rev().map(Letter::inverse).collect();
        self.key_of_word(&word)
    }

    /// The full atom word of a positive key.
    pub fn positive_word(&self, a: &OracleKey) -> Vec<u8> {
        assert!(a.is_positive());
        let mut w = self.delta_word().repeat(a.delta as usize);
        w.extend_from_slice(&a.word);
        w
    }

    /// Number of atoms of a positive key.
    pub fn atom_length(&self, a: &OracleKey) -> usize {
        self.positive_word(a).len()
    }

    /// `c <=_L a` for positive keys.
    pub fn left_divides(&self, c: &OracleKey, a: &OracleKey) -> bool {
        let cw = self.positive_word(c);
        self.class(&self.positive_word(a)).iter().any(|w| w.starts_with(&cw))
    }

    /// All left divisors of a positive key.
    pub fn positive_divisors(&self, a: &OracleKey) -> Vec<OracleKey> {
        let mut out: BTreeSet<OracleKey> = BTreeSet::new();
        for w in self.class(&self.positive_word(a)).iter() {
            for i in 0..=w.len() {
                out.insert(self.reduce(0, w[..i].to_vec()));
            }
        }
        out.into_iter().collect()
    }

    fn is_over_atoms(&self, a: &OracleKey, allowed: &[bool]) -> bool {
        a.is_positive()
            && self.class(&self.positive_word(a)).iter().any(|w| w.iter().all(|&x| allowed[x as usize]))
    }

    fn submonoid_atoms(&self, p: &ParabolicData<'_>) -> Vec<bool> {
        self.atoms.iter().map(|&a| self.table.left_divides(a, p.delta_sub())).collect()
    }

    /// Cayley graph ball of radius `radius` over `S ∪ S^-1`.
    pub fn key_ball(&self, radius: u64, budget: &mut Budget) -> Result<KeyBall> {
        let letters = nonunit_letters(self.table);
        self.bfs(&letters, radius, budget)
    }

    /// Ball of `H` over `Div(delta) ∪ Div(delta)^-1`.
    pub fn subgroup_ball(&self, p: &ParabolicData<'_>, radius: u64, budget: &mut Budget) -> Result<KeyBall> {
        let letters: Vec<Letter> = p
            .div_delta()
            .iter()
            .filter(|&&u| u != SimpleId::UNIT)
            .flat_map(|&u| [Letter::pos(u), Letter::neg(u)])
            .collect();
        self.bfs(&letters, radius, budget)
    }

    fn bfs(&self, letters: &[Letter], radius: u64, budget: &mut Budget) -> Result<KeyBall> {
        let letter_keys: Vec<OracleKey> = letters.iter().map(|&l| self.letter_key(l)).collect();
        let mut entries: HashMap<OracleKey, (u64, Vec<Letter>)> = HashMap::new();
        let mut order = vec![OracleKey::identity()];
        entries.insert(OracleKey::identity(), (0, Vec::new()));
        let mut head = 0;
        while head < order.len() {
            let x = order[head].clone();
            head += 1;
            let (d, path) = entries[&x].clone();
            if d == radius {
                continue;
            }
            budget.spend(letters.len())?;
            for (l, lk) in letters.iter().zip(&letter_keys) {
                let y = self.mul(&x, lk);
                if !entries.contains_key(&y) {
                    let mut p2 = path.clone();
                    p2.push(*l);
                    entries.insert(y.clone(), (d + 1, p2));
                    order.push(y);
                }
            }
        }
        Ok(KeyBall { radius, entries, order })
    }

    /// Partition of `ball` into right cosets `Hx`.
    ///
    /// Two ball elements `x`, `y` of the same coset differ by `y x^-1` of
    /// length at most `2R`, so every such pair is linked through the `H`-ball
    /// of radius `2R` (word length on `H` agrees with word length on `G`,
    /// which `length_mismatches` double checks inside the ball).
    pub fn brute_coset_partition(
        &self,
        ball: &KeyBall,
        p: &ParabolicData<'_>,
        budget: &mut Budget,
    ) -> Result<CosetPartition> {
        let radius = ball.radius;
        let h_ball = self.subgroup_ball(p, 2 * radius, budget)?;
        let length_mismatches = h_ball
            .order
            .iter()
            .filter(|h| ball.distance(h).is_some_and(|d| d != h_ball.entries[*h].0))
            .count()
            + h_ball.order.iter().filter(|h| h_ball.entries[*h].0 <= radius && ball.distance(h).is_none()).count();

        let index: HashMap<&OracleKey, usize> = ball.order.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mut parent: Vec<usize> = (0..ball.order.len()).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for (i, x) in ball.order.iter().enumerate() {
            budget.spend(h_ball.order.len())?;
            for h in &h_ball.order {
                let y = self.mul(h, x);
                if let Some(&j) = index.get(&y) {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }

        let mut by_root: HashMap<usize, usize> = HashMap::new();
        let mut classes: Vec<CosetClass> = Vec::new();
        let mut class_of = HashMap::new();
        for (i, x) in ball.order.iter().enumerate() {
            let r = find(&mut parent, i);
            let c = *by_root.entry(r).or_insert_with(|| {
                classes.push(CosetClass { members: Vec::new(), min_length: u64::MAX, boundary: false });
                classes.len() - 1
            });
            let d = ball.entries[x].0;
            let class = &mut classes[c];
            class.members.push(x.clone());
            class.min_length = class.min_length.min(d);
            class.boundary |= d == radius;
            class_of.insert(x.clone(), c);
        }
        Ok(CosetPartition { radius, classes, class_of, length_mismatches })
    }

    /// Longest common left divisor of two positive keys.
    pub fn brute_meet(&self, a: &OracleKey, b: &OracleKey) -> OracleKey {
        let da = self.positive_divisors(a);
        let db: BTreeSet<OracleKey> = self.positive_divisors(b).into_iter().collect();
        let common: Vec<OracleKey> = da.into_iter().filter(|c| db.contains(c)).collect();
        let best = common.iter().max_by_key(|c| self.atom_length(c)).expect("1 divides both").clone();
        assert!(common.iter().all(|c| self.left_divides(c, &best)), "common divisors have no maximum");
        best
    }

    /// Shortest common right multiple of two positive keys, searched up to
    /// `max_atoms` atoms.
    pub fn brute_join(&self, a: &OracleKey, b: &OracleKey, max_atoms: usize, budget: &mut Budget) -> Result<OracleKey> {
        let (short, long) =
            if self.atom_length(a) <= self.atom_length(b) { (a, b) } else { (b, a) };
        let mut frontier: BTreeSet<OracleKey> = BTreeSet::from([long.clone()]);
        for _ in self.atom_length(long)..=max_atoms {
            budget.spend(frontier.len())?;
            let hits: Vec<&OracleKey> = frontier.iter().filter(|c| self.left_divides(short, c)).collect();
            if let Some(&first) = hits.first() {
                assert!(hits.len() == 1, "two minimal common multiples");
                return Ok(first.clone());
            }
            frontier = frontier
                .iter()
                .flat_map(|c| {
                    let base = self.positive_word(c);
                    (0..self.atoms.len() as u8).map(move |x| {
                        let mut w = base.clone();
                        w.push(x);
                        w
                    })
                })
                .map(|w| self.reduce(0, w))
                .collect();
        }
        Err(Error::BudgetExceeded(max_atoms))
    }

    /// The longest left divisor of positive `a` lying in `N`, and the
    /// cofactor.
    pub fn brute_tail(&self, a: &OracleKey, p: &ParabolicData<'_>) -> (OracleKey, OracleKey) {
        let allowed = self.submonoid_atoms(p);
        let in_n: Vec<OracleKey> =
            self.positive_divisors(a).into_iter().filter(|c| self.is_over_atoms(c, &allowed)).collect();
        let best = in_n.iter().max_by_key(|c| self.atom_length(c)).expect("1 lies in N").clone();
        assert!(in_n.iter().all(|c| self.left_divides(c, &best)), "N-divisors have no maximum");
        let bw = self.positive_word(&best);
        let rest = self
            .class(&self.positive_word(a))
            .iter()
            .find(|w| w.starts_with(&bw))
            .map(|w| w[bw.len()..].to_vec())
            .expect("best divides a");
        (best, self.reduce(0, rest))
    }

    /// Elements of `H` nearest to `x`, scanning the `H`-ball of radius
    /// `h_radius` and measuring distances with `ball`.
    pub fn brute_projection(
        &self,
        ball: &KeyBall,
        p: &ParabolicData<'_>,
        x: &OracleKey,
        h_radius: u64,
        budget: &mut Budget,
    ) -> Result<(Vec<OracleKey>, u64)> {
        let h_ball = self.subgroup_ball(p, h_radius, budget)?;
        let x_inv = self.inverse(x);
        let mut best: Option<u64> = None;
        let mut members = Vec::new();
        for h in &h_ball.order {
            budget.spend(1)?;
            let Some(d) = ball.distance(&self.mul(&x_inv, h)) else { continue };
            match best {
                Some(b) if d > b => {}
                Some(b) if d == b => members.push(h.clone()),
                _ => {
                    best = Some(d);
                    members = vec![h.clone()];
                }
            }
        }
        let d = best.ok_or_else(|| Error::Domain("no element of H within the ball".into()))?;
        members.sort();
        Ok((members, d))
    }
}

/// Every letter `u` and `u^-1` with `u` a non-unit simple.
fn nonunit_letters(t: &GarsideTable) -> Vec<Letter> {
    t.generators().flat_map(|u| [Letter::pos(u), Letter::neg(u)]).collect()
}

/// Breadth first distances from the identity.
#[derive(Clone, Debug)]
pub struct KeyBall {
    pub radius: u64,
    entries: HashMap<OracleKey, (u64, Vec<Letter>)>,
    /// Keys in discovery order.
    order: Vec<OracleKey>,
}

impl KeyBall {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn distance(&self, k: &OracleKey) -> Option<u64> {
        self.entries.get(k).map(|e| e.0)
    }

    /// A geodesic word reaching `k`.
    pub fn path(&self, k: &OracleKey) -> Option<&[Letter]> {
        self.entries.get(k).map(|e| &e.1[..])
    }

    pub fn keys(&self) -> &[OracleKey] {
        &self.order
    }

    /// Keys at distance exactly `n`.
    pub fn sphere(&self, n: u64) -> impl Iterator<Item = &OracleKey> {
        self.order.iter().filter(move |k| self.entries[*k].0 == n)
    }
}

#[derive(Clone, Debug)]
pub struct CosetClass {
    pub members: Vec<OracleKey>,
    pub min_length: u64,
    /// The class reaches the edge of the ball, so the coset continues
    /// outside it.
    pub boundary: bool,
}

#[derive(Clone, Debug)]
pub struct CosetPartition {
    pub radius: u64,
    pub classes: Vec<CosetClass>,
    class_of: HashMap<OracleKey, usize>,
    /// `H`-ball elements whose two word lengths disagree within the ball.
    pub length_mismatches: usize,
}

impl CosetPartition {
    pub fn class_of(&self, k: &OracleKey) -> Option<usize> {
        self.class_of.get(k).copied()
    }

    /// Number of cosets of minimal length `n`, for `n = 0..=radius`.
    pub fn counts_by_min_length(&self) -> Vec<usize> {
        let mut out = vec![0; self.radius as usize + 1];
        for c in &self.classes {
            out[c.min_length as usize] += 1;
        }
        out
    }
}

/// Distances from the identity in the Cayley graph over `S ∪ S^-1`, keyed
/// by canonical elements. Neighbours come from the kernel product, so this
/// checks the length formula rather than normalization.
#[derive(Clone, Debug)]
pub struct BallIndex {
    pub radius: u64,
    distances: HashMap<Element, u64>,
    order: Vec<Element>,
}

impl BallIndex {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn distance(&self, x: &Element) -> Option<u64> {
        self.distances.get(x).copied()
    }

    /// Elements in discovery order.
    pub fn elements(&self) -> &[Element] {
        &self.order
    }
}

/// Breadth first search to `radius`.
pub fn bfs_lengths(t: &GarsideTable, radius: u64, budget: &mut Budget) -> Result<BallIndex> {
    let letters: Vec<Element> = nonunit_letters(t).into_iter().map(|l| t.letter_element(l)).collect();
    let mut distances = HashMap::from([(Element::identity(), 0)]);
    let mut order = vec![Element::identity()];
    let mut head = 0;
    while head < order.len() {
        let x = order[head].clone();
        head += 1;
        let d = distances[&x];
        if d == radius {
            continue;
        }
        budget.spend(letters.len())?;
        for g in &letters {
            let y = t.multiply(&x, g);
            if !distances.contains_key(&y) {
                distances.insert(y.clone(), d + 1);
                order.push(y);
            }
        }
    }
    Ok(BallIndex { radius, distances, order })
}
