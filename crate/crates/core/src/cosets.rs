//! Right cosets of a parabolic subgroup and projections onto it.
//!
//! The transversal `T` consists of the `(H, N)`-reduced elements: those with
//! right Delta-form `a Delta^p` where `a` is `N`-reduced and either `p = 0`,
//! or `p < 0` and `omega` does not left-divide `a`. Every right coset `H x`
//! holds exactly one element of `T`, and it is a shortest element of the
//! coset. The projection `pi_H(x)` is the set of elements of `H` nearest to
//! `x`; it is obtained from the shortest elements of `H x`.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::budget::Budget;
use crate::element::{Element, Letter};
use crate::error::{Error, Result};
use crate::parabolic::ParabolicData;
use crate::table::GarsideTable;

/// The unique element of `T` in a right coset.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetKey {
    pub rep: Element,
}

/// `pi_H(base)` with the distance from `base` to `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionSet {
    pub base: Element,
    pub members: Vec<Element>,
    pub distance: u64,
}

impl ParabolicData<'_> {
    /// Membership in `T`, read off the right Delta-form.
    pub fn is_hn_reduced(&self, x: &Element) -> bool {
        let t = self.table();
        let (a, p) = t.right_delta_part(x);
        let reduced = self.is_n_reduced(&a).expect("positive part");
        reduced && (p == 0 || (p < 0 && !t.left_divides_positive(&a, self.omega()).expect("positive part")))
    }

    /// The element of `T` in `H x`.
    pub fn coset_representative(&self, x: &Element) -> Result<CosetKey> {
        let t = self.table();
        let (a, p) = t.right_delta_part(x);
        let rep = if p >= 0 {
            // x is positive here
            self.tail(x)?.1
        } else {
            let mut q = -p;
            let mut c = self.tail(&a)?.1;
            // H omega c' Delta^-q = H Delta c' Delta^-q = H phi(c') Delta^-(q-1)
            while q >= 1 && t.left_divides_positive(&c, self.omega())? {
                let rest = t.multiply(&t.invert(&t.simple_element(self.omega())), &c);
                c = self.tail(&t.conjugate_by_delta(&rest, 1))?.1;
                q -= 1;
            }
            t.multiply(&c, &Element::delta_pow(-q))
        };
        if !self.is_hn_reduced(&rep) {
            return Err(Error::Internal(format!(
                "representative {} of {} is not (H,N)-reduced",
                t.format_element(&rep),
                t.format_element(x)
            )));
        }
        if !self.in_subgroup(&t.multiply(x, &t.invert(&rep))) {
            return Err(Error::Internal(format!(
                "representative {} does not lie in the coset of {}",
                t.format_element(&rep),
                t.format_element(x)
            )));
        }
        Ok(CosetKey { rep })
    }

    /// `lg(H x)`, the length of the coset representative.
    pub fn coset_length(&self, x: &Element) -> Result<u64> {
        Ok(self.coset_representative(x)?.rep.length())
    }

    /// `Min(x)`: the shortest elements of `H x`, sorted.
    ///
    /// Every such `gamma = beta theta`, with `theta` the representative of
    /// length `l`, has `lg(beta) <= lg(gamma) + lg(theta^-1) = 2 l`, so a
    /// search over `H` to radius `search_bound >= 2 l` is complete.
    pub fn min_set(&self, x: &Element, search_bound: u64, budget: &mut Budget) -> Result<Vec<Element>> {
        let t = self.table();
        let theta = self.coset_representative(x)?.rep;
        let l = theta.length();
        let required = 2 * l;
        if search_bound < required {
            return Err(Error::BoundTooSmall { given: search_bound as usize, required: required as usize });
        }
        let ball = self.subgroup_ball(search_bound, budget)?;
        let set: BTreeSet<Element> = ball
            .iter()
            .map(|(beta, _)| t.multiply(beta, &theta))
            .filter(|gamma| gamma.length() == l)
            .collect();
        Ok(set.into_iter().collect())
    }

    /// `pi_H(x) = { x gamma^-1 : gamma in Min(x) }`.
    pub fn projection(&self, x: &Element, budget: &mut Budget) -> Result<ProjectionSet> {
        let t = self.table();
        let distance = self.coset_length(x)?;
        let min = self.min_set(x, 2 * distance, budget)?;
        let members: BTreeSet<Element> = min.iter().map(|g| t.multiply(x, &t.invert(g))).collect();
        if members.len() != min.len() {
            return Err(Error::Internal("gamma -> x gamma^-1 is not injective".into()));
        }
        Ok(ProjectionSet { base: x.clone(), members: members.into_iter().collect(), distance })
    }

    /// Largest distance between two members of `pi_H(x)`.
    pub fn projection_diameter(&self, x: &Element, budget: &mut Budget) -> Result<u64> {
        Ok(diameter(self, &self.projection(x, budget)?.members))
    }

    /// Checks the fellow projection property on every `alpha` of length at
    /// most `max_len` and every letter `u`, in both directions between
    /// `alpha` and `alpha u`.
    pub fn fellow_projection_audit(&self, max_len: u64, budget: &mut Budget) -> Result<FellowReport> {
        let t = self.table();
        let letters = all_letters(t);
        let alphas = t.elements_up_to_length(max_len);

        let mut report = FellowReport {
            max_len,
            alphas: alphas.len(),
            k_obs: 0,
            witness: None,
            rows: Vec::new(),
            budget_exceeded: false,
            threshold: FELLOW_BOUND,
        };

        // projections of the ball and its neighbours
        let mut targets: BTreeSet<Element> = alphas.iter().cloned().collect();
        for alpha in &alphas {
            for &u in &letters {
                targets.insert(t.multiply(alpha, &t.letter_element(u)));
            }
        }
        let targets: Vec<Element> = targets.into_iter().collect();
        let limit = budget.remaining();
        let computed: Vec<Result<(Element, Vec<Element>, usize)>> = targets
            .par_iter()
            .map(|x| {
                let mut local = Budget::new(limit);
                let members = self.projection(x, &mut local)?.members;
                Ok((x.clone(), members, local.used()))
            })
            .collect();
        let mut projections: HashMap<Element, Vec<Element>> = HashMap::new();
        for item in computed {
            match item {
                Ok((x, members, used)) => {
                    projections.insert(x, members);
                    if budget.spend(used).is_err() {
                        report.budget_exceeded = true;
                    }
                }
                Err(Error::BudgetExceeded(_)) => report.budget_exceeded = true,
                Err(e) => return Err(e),
            }
        }
        if report.budget_exceeded {
            return Ok(report);
        }

        let pairs: Vec<(Element, Letter)> = alphas
            .iter()
            .flat_map(|a| letters.iter().map(move |&u| (a.clone(), u)))
            .collect();
        let rows: Vec<FellowRow> = pairs
            .par_iter()
            .flat_map_iter(|(alpha, u)| {
                let next = t.multiply(alpha, &t.letter_element(*u));
                let mut out = Vec::new();
                for (from, to, dir) in [(alpha, &next, Direction::Forward), (&next, alpha, Direction::Backward)] {
                    for beta in &projections[from] {
                        let (best, dist) = projections[to]
                            .iter()
                            .map(|b2| (b2, t.distance(beta, b2)))
                            .min_by(|x, y| x.1.cmp(&y.1).then_with(|| x.0.cmp(y.0)))
                            .expect("projections are non-empty");
                        out.push(FellowRow {
                            alpha: alpha.clone(),
                            letter: *u,
                            direction: dir,
                            beta: beta.clone(),
                            best_beta_prime: best.clone(),
                            distance: dist,
                        });
                    }
                }
                out
            })
            .collect();
        for row in &rows {
            if report.witness.is_none() || row.distance > report.k_obs {
                report.k_obs = row.distance;
                report.witness = Some(row.clone());
            }
        }
        report.rows = rows;
        Ok(report)
    }

    /// Certificate that projections onto `H` are not `k_bound`-bounded,
    /// built from `d_{k_bound + 1}`.
    pub fn bounded_projection_witness(&self, k_bound: u64, budget: &mut Budget) -> Result<UnboundedCertificate> {
        if k_bound == 0 {
            return Err(Error::OutOfRange("K must be at least 1".into()));
        }
        self.unbounded_certificate(k_bound + 1, budget)
    }

    /// Verifies `1, delta^-k in pi_H(d_k)`, `lg(d_k) = k`,
    /// `d(1, delta^-k) = k` and `diam(pi_H(d_k)) >= k`.
    pub fn unbounded_certificate(&self, k: u64, budget: &mut Budget) -> Result<UnboundedCertificate> {
        if self.is_improper() {
            return Err(Error::Domain("the parabolic subgroup is the whole group; projections are trivial".into()));
        }
        let t = self.table();
        let d_k = self.d_k(k)?;
        let delta = t.simple_element(self.delta_sub());
        let delta_pow = t.multiply_all(&vec![delta; k as usize]);
        let delta_neg_k = t.invert(&delta_pow);
        let projection = self.projection(&d_k, budget)?;
        let diameter = diameter(self, &projection.members);
        let cert = UnboundedCertificate {
            k,
            length_d_k: d_k.length(),
            contains_identity: projection.members.contains(&Element::identity()),
            contains_delta_neg_k: projection.members.contains(&delta_neg_k),
            distance_identity_delta_neg_k: delta_neg_k.length(),
            diameter,
            d_k,
            delta_neg_k,
            projection,
        };
        Ok(cert)
    }
}

fn diameter(p: &ParabolicData<'_>, members: &[Element]) -> u64 {
    let t = p.table();
    let mut best = 0;
    for (i, x) in members.iter().enumerate() {
        for y in &members[i + 1..] {
            best = best.max(t.distance(x, y));
        }
    }
    best
}

/// The constant in the fellow projection property.
pub const FELLOW_BOUND: u64 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// From `alpha` to `alpha u`.
    Forward,
    /// From `alpha u` back to `alpha`.
    Backward,
}

/// One `beta` in a projection and its nearest point in the adjacent
/// projection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FellowRow {
    pub alpha: Element,
    pub letter: Letter,
    pub direction: Direction,
    pub beta: Element,
    pub best_beta_prime: Element,
    pub distance: u64,
}

#[derive(Clone, Debug)]
pub struct FellowReport {
    pub max_len: u64,
    pub alphas: usize,
    pub k_obs: u64,
    pub witness: Option<FellowRow>,
    pub rows: Vec<FellowRow>,
    pub budget_exceeded: bool,
    pub threshold: u64,
}

impl FellowReport {
    pub fn passed(&self) -> bool {
        !self.budget_exceeded && self.k_obs <= self.threshold
    }

    /// CSV with header `alpha,u,beta,best_beta_prime,distance`. Backward rows
    /// have `alpha` set to `alpha u` and `u` to its inverse.
    pub fn to_csv(&self, p: &ParabolicData<'_>) -> String {
        let t = p.table();
        let mut out = String::from("alpha,u,beta,best_beta_prime,distance\n");
        for row in &self.rows {
            let (alpha, u) = match row.direction {
                Direction::Forward => (row.alpha.clone(), row.letter),
                Direction::Backward => (t.multiply(&row.alpha, &t.letter_element(row.letter)), row.letter.inverse()),
            };
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                t.format_element(&alpha),
                t.format_letter(u),
                t.format_element(&row.beta),
                t.format_element(&row.best_beta_prime),
                row.distance
            );
        }
        out
    }

    pub fn summary(&self, p: &ParabolicData<'_>) -> String {
        let t = p.table();
        let mut out = String::new();
        let _ = writeln!(out, "alphas: {} (length <= {})", self.alphas, self.max_len);
        let _ = writeln!(out, "rows: {}", self.rows.len());
        let _ = writeln!(out, "K_obs: {}", self.k_obs);
        if let Some(w) = &self.witness {
            let _ = writeln!(
                out,
                "witness: alpha={} u={} dir={:?} beta={} best={} distance={}",
                t.format_element(&w.alpha),
                t.format_letter(w.letter),
                w.direction,
                t.format_element(&w.beta),
                t.format_element(&w.best_beta_prime),
                w.distance
            );
        }
        if self.budget_exceeded {
            let _ = writeln!(out, "budget: exceeded, report is partial");
        }
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "result: {verdict} (K_obs <= {})", self.threshold);
        out
    }
}

/// Evidence that `G` does not have `(k - 1)`-bounded projections on `H`.
#[derive(Clone, Debug)]
pub struct UnboundedCertificate {
    pub k: u64,
    pub d_k: Element,
    pub delta_neg_k: Element,
    pub projection: ProjectionSet,
    pub length_d_k: u64,
    pub contains_identity: bool,
    pub contains_delta_neg_k: bool,
    pub distance_identity_delta_neg_k: u64,
    pub diameter: u64,
}

impl UnboundedCertificate {
    pub fn holds(&self) -> bool {
        self.length_d_k == self.k
            && self.contains_identity
            && self.contains_delta_neg_k
            && self.distance_identity_delta_neg_k == self.k
            && self.diameter >= self.k
    }
}

/// The letters `s` and `s^-1` for every non-unit simple, in index order.
pub fn all_letters(t: &GarsideTable) -> Vec<Letter> {
    t.generators().flat_map(|s| [Letter::pos(s), Letter::neg(s)]).collect()
}
