//! Group elements in left Delta-form and the group law.
//!
//! An [`Element`] stores `Delta^p u_1 ... u_k` where `u_1 ... u_k` is the left
//! greedy normal form of an unmovable positive element. The pair is unique,
//! so derived equality and hashing are group equality.

use std::cmp::max;
use std::fmt;

use crate::error::{Error, Result};
use crate::table::{GarsideTable, SimpleId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

/// A generator or the inverse of one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub simple: SimpleId,
    pub sign: Sign,
}

impl Letter {
    pub fn pos(simple: SimpleId) -> Letter {
        Letter { simple, sign: Sign::Pos }
    }

    pub fn neg(simple: SimpleId) -> Letter {
        Letter { simple, sign: Sign::Neg }
    }

    pub fn inverse(self) -> Letter {
        let sign = match self.sign {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        };
        Letter { sign, ..self }
    }
}

/// Canonical group element `Delta^delta_power * body`.
///
/// Ordering is by Delta-power, then lexicographic on the body.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    delta_power: i64,
    body: Vec<SimpleId>,
}

impl Element {
    pub fn identity() -> Element {
        Element { delta_power: 0, body: Vec::new() }
    }

    /// `Delta^k`.
    pub fn delta_pow(k: i64) -> Element {
        Element { delta_power: k, body: Vec::new() }
    }

    /// Checks that `(delta_power, body)` is a canonical form for `table`.
    pub fn from_parts(table: &GarsideTable, delta_power: i64, body: Vec<SimpleId>) -> Result<Element> {
        for &u in &body {
            table.check(u)?;
            if u == SimpleId::UNIT || u == table.delta() {
                return Err(Error::Domain(format!(
                    "body factor `{}` must be a proper simple",
                    table.simple_name(u)
                )));
            }
        }
        if !table.is_left_normal(&body) {
            return Err(Error::Domain("body is not left greedy normal".into()));
        }
        Ok(Element { delta_power, body })
    }

    pub fn delta_power(&self) -> i64 {
        self.delta_power
    }

    pub fn body(&self) -> &[SimpleId] {
        &self.body
    }

    pub fn is_identity(&self) -> bool {
        self.delta_power == 0 && self.body.is_empty()
    }

    /// Whether the element lies in the positive monoid.
    pub fn is_positive(&self) -> bool {
        self.delta_power >= 0
    }

    /// Word length over the non-trivial simples and their inverses:
    /// `max(k + p, -p, k)` with `k` the body length and `p` the Delta-power.
    pub fn length(&self) -> u64 {
        let k = self.body.len() as i64;
        let p = self.delta_power;
        let k_plus_p = k.checked_add(p).expect("Delta-power overflow");
        let neg_p = p.checked_neg().expect("Delta-power overflow");
        max(max(k_plus_p, neg_p), k) as u64
    }
}

/// The available normal forms of a group element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ViewKind {
    LeftGreedy,
    RightGreedy,
    LeftOrthogonal,
    RightOrthogonal,
    LeftDelta,
    RightDelta,
}

impl ViewKind {
    pub const ALL: [ViewKind; 6] = [
        ViewKind::LeftGreedy,
        ViewKind::RightGreedy,
        ViewKind::LeftOrthogonal,
        ViewKind::RightOrthogonal,
        ViewKind::LeftDelta,
        ViewKind::RightDelta,
    ];
}

/// A normal form of an element, expressed through positive parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalFormView {
    /// `v_q^-1 ... v_1^-1 u_1 ... u_p`, with `negative = [v_1, ..., v_q]`
    /// and `positive = [u_1, ..., u_p]` the left greedy forms of the
    /// left orthogonal parts.
    LeftGreedy { negative: Vec<SimpleId>, positive: Vec<SimpleId> },
    /// `a' b'^-1` with both parts given by their right greedy factors,
    /// listed left to right.
    RightGreedy { positive: Vec<SimpleId>, negative: Vec<SimpleId> },
    /// `denominator^-1 * numerator` with trivial left meet.
    LeftOrthogonal { numerator: Element, denominator: Element },
    /// `numerator * denominator^-1` with trivial right meet.
    RightOrthogonal { numerator: Element, denominator: Element },
    /// `Delta^power * body`, body unmovable.
    LeftDelta { power: i64, body: Vec<SimpleId> },
    /// `body * Delta^power`, body unmovable.
    RightDelta { body: Vec<SimpleId>, power: i64 },
}

impl NormalFormView {
    /// Multiplies the view back into a canonical element.
    pub fn evaluate(&self, table: &GarsideTable) -> Element {
        match self {
            NormalFormView::LeftGreedy { negative, positive } => {
                let b = table.positive_from_simples(negative);
                let a = table.positive_from_simples(positive);
                table.multiply(&table.invert(&b), &a)
            }
            NormalFormView::RightGreedy { positive, negative } => {
                let a = table.positive_from_simples(positive);
                let b = table.positive_from_simples(negative);
                table.multiply(&a, &table.invert(&b))
            }
            NormalFormView::LeftOrthogonal { numerator, denominator } => {
                table.multiply(&table.invert(denominator), numerator)
            }
            NormalFormView::RightOrthogonal { numerator, denominator } => {
                table.multiply(numerator, &table.invert(denominator))
            }
            NormalFormView::LeftDelta { power, body } => {
                table.multiply(&Element::delta_pow(*power), &table.positive_from_simples(body))
            }
            NormalFormView::RightDelta { body, power } => {
                table.multiply(&table.positive_from_simples(body), &Element::delta_pow(*power))
            }
        }
    }
}

impl GarsideTable {
    /// The element represented by a single simple.
    pub fn simple_element(&self, s: SimpleId) -> Element {
        if s == SimpleId::UNIT {
            Element::identity()
        } else if s == self.delta() {
            Element::delta_pow(1)
        } else {
            Element { delta_power: 0, body: vec![s] }
        }
    }

    pub fn letter_element(&self, letter: Letter) -> Element {
        match letter.sign {
            Sign::Pos => self.simple_element(letter.simple),
            // s^-1 = sigma(s) Delta^-1 = Delta^-1 phi(sigma(s))
            Sign::Neg => {
                let mut seq = vec![self.left_complement(letter.simple)];
                let extracted = self.left_normalize(&mut seq);
                Element { delta_power: extracted - 1, body: seq }
            }
        }
    }

    /// Canonical form of a signed word.
    pub fn normalize(&self, word: &[Letter]) -> Result<Element> {
        let mut acc = Element::identity();
        for &letter in word {
            self.check(letter.simple)?;
            acc = self.multiply(&acc, &self.letter_element(letter));
        }
        Ok(acc)
    }

    /// Canonical form of the positive product `s_1 ... s_m`.
    pub fn positive_from_simples(&self, seq: &[SimpleId]) -> Element {
        let mut body = seq.to_vec();
        let delta_power = self.left_normalize(&mut body);
        Element { delta_power, body }
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Element {
        // Delta^p A Delta^q B = Delta^(p+q) phi^-q(A) B
        let q = y.delta_power;
        let mut seq: Vec<SimpleId> = x.body.iter().map(|&u| self.phi_pow(u, -q)).collect();
        seq.extend_from_slice(&y.body);
        let extracted = self.left_normalize(&mut seq);
        let delta_power = x
            .delta_power
            .checked_add(q)
            .and_then(|p| p.checked_add(extracted))
            .expect("Delta-power overflow");
        Element { delta_power, body: seq }
    }

    pub fn multiply_all<'a, I>(&self, factors: I) -> Element
    where
        I: IntoIterator<Item = &'a Element>,
    {
        factors
            .into_iter()
            .fold(Element::identity(), |acc, f| self.multiply(&acc, f))
    }

    pub fn invert(&self, x: &Element) -> Element {
        // (u_1 ... u_k)^-1 = Delta^-k phi^k(sigma(u_k)) ... phi^1(sigma(u_1)),
        // then Delta^-k C Delta^-p = Delta^(-k-p) phi^p(C).
        let k = x.body.len() as i64;
        let p = x.delta_power;
        let mut seq: Vec<SimpleId> = x
            .body
            .iter()
            .enumerate()
            .rev()
            .map(|(i, &u)| self.phi_pow(self.sigma(u), i as i64 + 1 + p))
            .collect();
        let extracted = self.left_normalize(&mut seq);
        let delta_power = k
            .checked_neg()
            .and_then(|v| v.checked_sub(p))
            .and_then(|v| v.checked_add(extracted))
            .expect("Delta-power overflow");
        Element { delta_power, body: seq }
    }

    /// `phi^k(x) = Delta^k x Delta^-k`.
    pub fn conjugate_by_delta(&self, x: &Element, k: i64) -> Element {
        Element {
            delta_power: x.delta_power,
            body: x.body.iter().map(|&u| self.phi_pow(u, k)).collect(),
        }
    }

    /// Word-metric distance `lg(x^-1 y)`.
    pub fn distance(&self, x: &Element, y: &Element) -> u64 {
        self.multiply(&self.invert(x), y).length()
    }

    /// Local left-greedy condition `meet_l(sigma(u_i), u_{i+1}) = 1`.
    pub fn is_left_normal(&self, seq: &[SimpleId]) -> bool {
        seq.windows(2)
            .all(|w| self.meet_l(self.sigma(w[0]), w[1]) == SimpleId::UNIT)
    }

    /// Rewrites `seq` into left greedy normal form, strips the leading
    /// Delta factors and trailing units, and returns the number of Deltas
    /// removed.
    pub(crate) fn left_normalize(&self, seq: &mut Vec<SimpleId>) -> i64 {
        loop {
            let mut changed = false;
            for i in 0..seq.len().saturating_sub(1) {
                let (x, y) = (seq[i], seq[i + 1]);
                let t = self.meet_l(self.sigma(x), y);
                if t != SimpleId::UNIT {
                    seq[i] = self.product(x, t).expect("x * t divides Delta");
                    seq[i + 1] = self.left_quotient(t, y).expect("t divides y");
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        while seq.last() == Some(&SimpleId::UNIT) {
            seq.pop();
        }
        let deltas = seq.iter().take_while(|&&u| u == self.delta()).count();
        seq.drain(..deltas);
        deltas as i64
    }

    /// Right greedy normal form of a positive product, listed left to right;
    /// units are dropped, Delta factors (if any) come last.
    pub(crate) fn right_normalize(&self, seq: &mut Vec<SimpleId>) {
        loop {
            let mut changed = false;
            for i in (0..seq.len().saturating_sub(1)).rev() {
                let (x, y) = (seq[i], seq[i + 1]);
                let t = self.meet_r(self.left_complement(y), x);
                if t != SimpleId::UNIT {
                    seq[i] = self.right_quotient(x, t).expect("t right-divides x");
                    seq[i + 1] = self.product(t, y).expect("t * y right-divides Delta");
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        seq.retain(|&u| u != SimpleId::UNIT);
    }

    fn require_positive(&self, a: &Element) -> Result<()> {
        if a.is_positive() {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "expected a positive element, got Delta-power {}",
                a.delta_power
            )))
        }
    }

    /// Left greedy factors of a positive element, Delta factors included.
    pub fn left_greedy_factors(&self, a: &Element) -> Result<Vec<SimpleId>> {
        self.require_positive(a)?;
        let mut out = vec![self.delta(); a.delta_power as usize];
        out.extend_from_slice(&a.body);
        Ok(out)
    }

    /// Right greedy factors of a positive element, listed left to right.
    pub fn right_greedy_factors(&self, a: &Element) -> Result<Vec<SimpleId>> {
        let mut seq = self.left_greedy_factors(a)?;
        self.right_normalize(&mut seq);
        Ok(seq)
    }

    /// First left greedy factor `a ^_L Delta` of a positive element.
    pub fn head(&self, a: &Element) -> Result<SimpleId> {
        self.require_positive(a)?;
        Ok(if a.delta_power > 0 {
            self.delta()
        } else {
            a.body.first().copied().unwrap_or(SimpleId::UNIT)
        })
    }

    /// `a ^_L s` for positive `a`; equals `head(a) ^_L s`.
    pub fn meet_with_simple(&self, a: &Element, s: SimpleId) -> Result<SimpleId> {
        self.check(s)?;
        Ok(self.meet_l(self.head(a)?, s))
    }

    /// `s <=_L a` for positive `a`.
    pub fn left_divides_positive(&self, a: &Element, s: SimpleId) -> Result<bool> {
        Ok(self.meet_with_simple(a, s)? == s)
    }

    /// `(numerator, denominator)` with `x = denominator^-1 numerator` and
    /// trivial left meet.
    pub fn left_orthogonal(&self, x: &Element) -> (Element, Element) {
        if x.delta_power >= 0 {
            return (x.clone(), Element::identity());
        }
        let q = -x.delta_power;
        let m = (q as usize).min(x.body.len());
        let numerator = Element { delta_power: 0, body: x.body[m..].to_vec() };
        let common = Element { delta_power: 0, body: x.body[..m].to_vec() };
        let denominator = self.multiply(&self.invert(&common), &Element::delta_pow(q));
        (numerator, denominator)
    }

    /// `(numerator, denominator)` with `x = numerator denominator^-1` and
    /// trivial right meet.
    pub fn right_orthogonal(&self, x: &Element) -> (Element, Element) {
        if x.delta_power >= 0 {
            return (x.clone(), Element::identity());
        }
        let q = -x.delta_power;
        let (body, _) = self.right_delta_form(x);
        let mut factors = body;
        self.right_normalize(&mut factors);
        let m = (q as usize).min(factors.len());
        let split = factors.len() - m;
        let numerator = self.positive_from_simples(&factors[..split]);
        let common = self.positive_from_simples(&factors[split..]);
        let denominator = self.multiply(&Element::delta_pow(q), &self.invert(&common));
        (numerator, denominator)
    }

    /// `(a', p)` with `x = a' Delta^p` and `a'` unmovable; `a' = phi^p(a)` for
    /// the left form `Delta^p a`. The body is returned as a left greedy sequence.
    pub fn right_delta_form(&self, x: &Element) -> (Vec<SimpleId>, i64) {
        let p = x.delta_power;
        (x.body.iter().map(|&u| self.phi_pow(u, p)).collect(), p)
    }

    /// Positive part of the right Delta-form as an element.
    pub fn right_delta_part(&self, x: &Element) -> (Element, i64) {
        let (body, p) = self.right_delta_form(x);
        (Element { delta_power: 0, body }, p)
    }

    pub fn view(&self, x: &Element, kind: ViewKind) -> NormalFormView {
        match kind {
            ViewKind::LeftDelta => NormalFormView::LeftDelta {
                power: x.delta_power,
                body: x.body.clone(),
            },
            ViewKind::RightDelta => {
                let (body, power) = self.right_delta_form(x);
                NormalFormView::RightDelta { body, power }
            }
            ViewKind::LeftOrthogonal => {
                let (numerator, denominator) = self.left_orthogonal(x);
                NormalFormView::LeftOrthogonal { numerator, denominator }
            }
            ViewKind::RightOrthogonal => {
                let (numerator, denominator) = self.right_orthogonal(x);
                NormalFormView::RightOrthogonal { numerator, denominator }
            }
            ViewKind::LeftGreedy => {
                let (a, b) = self.left_orthogonal(x);
                NormalFormView::LeftGreedy {
                    negative: self.left_greedy_factors(&b).expect("positive part"),
                    positive: self.left_greedy_factors(&a).expect("positive part"),
                }
            }
            ViewKind::RightGreedy => {
                let (a, b) = self.right_orthogonal(x);
                NormalFormView::RightGreedy {
                    positive: self.right_greedy_factors(&a).expect("positive part"),
                    negative: self.right_greedy_factors(&b).expect("positive part"),
                }
            }
        }
    }

    /// Left greedy normal sequences of proper, non-Delta simples, grouped by
    /// length `0..=max_len`.
    fn normal_bodies(&self, max_len: usize) -> Vec<Vec<Vec<SimpleId>>> {
        let proper: Vec<SimpleId> = self.generators().filter(|&u| u != self.delta()).collect();
        let mut levels = vec![vec![Vec::new()]];
        for len in 1..=max_len {
            let mut next = Vec::new();
            for seq in &levels[len - 1] {
                for &u in &proper {
                    let ok = match seq.last() {
                        None => true,
                        Some(&prev) => self.meet_l(self.sigma(prev), u) == SimpleId::UNIT,
                    };
                    if ok {
                        let mut s: Vec<SimpleId> = seq.clone();
                        s.push(u);
                        next.push(s);
                    }
                }
            }
            levels.push(next);
        }
        levels
    }

    /// Every element of word length at most `max_len`, enumerated directly
    /// from canonical forms, sorted.
    pub fn elements_up_to_length(&self, max_len: u64) -> Vec<Element> {
        let levels = self.normal_bodies(max_len as usize);
        let l = max_len as i64;
        let mut out = Vec::new();
        for (k, bodies) in levels.iter().enumerate() {
            let k = k as i64;
            for p in -l..=l {
                if max(max(k + p, -p), k) <= l {
                    out.extend(bodies.iter().map(|b| Element { delta_power: p, body: b.clone() }));
                }
            }
        }
        out.sort();
        out
    }

    /// Every positive element of length at most `max_len`, sorted.
    pub fn positive_elements_up_to_length(&self, max_len: u64) -> Vec<Element> {
        let mut out: Vec<Element> = self
            .elements_up_to_length(max_len)
            .into_iter()
            .filter(Element::is_positive)
            .collect();
        out.sort();
        out
    }

    /// Renders an element as a dot-separated expression: `D^p` followed by
    /// the body names; the identity is `1`.
    pub fn format_element(&self, x: &Element) -> String {
        let mut parts = Vec::new();
        match x.delta_power {
            0 => {}
            1 => parts.push("D".to_string()),
            p => parts.push(format!("D^{p}")),
        }
        parts.extend(x.body.iter().map(|&u| self.simple_name(u).to_string()));
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(".")
        }
    }

    pub fn format_letter(&self, letter: Letter) -> String {
        match letter.sign {
            Sign::Pos => self.simple_name(letter.simple).to_string(),
            Sign::Neg => format!("{}^-1", self.simple_name(letter.simple)),
        }
    }

    pub fn format_word(&self, word: &[Letter]) -> String {
        if word.is_empty() {
            return "1".to_string();
        }
        word.iter()
            .map(|&l| self.format_letter(l))
            .collect::<Vec<_>>()
            .join(".")
    }

    pub fn format_simples(&self, seq: &[SimpleId]) -> String {
        let names: Vec<&str> = seq.iter().map(|&u| self.simple_name(u)).collect();
        format!("[{}]", names.join(", "))
    }
}

/// Display adaptor pairing an element with its table.
pub struct DisplayElement<'a> {
    pub table: &'a GarsideTable,
    pub element: &'a Element,
}

impl fmt::Display for DisplayElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.table.format_element(self.element))
    }
}
