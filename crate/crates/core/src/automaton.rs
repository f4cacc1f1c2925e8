//! The finite state automaton recognizing the left greedy normal forms of
//! the coset transversal.
//!
//! The alphabet is `S ∪ S^-1` (every non-unit simple with both signs). The
//! states are `x0`, one state per letter, and the sink `x1`; every state
//! except the sink accepts. A state named by a letter remembers the last
//! letter read, which is all the local normal form conditions need.

use std::fmt::Write as _;

use crate::element::{Element, Letter, NormalFormView, Sign, ViewKind};
use crate::error::{Error, Result};
use crate::parabolic::ParabolicData;
use crate::table::{GarsideTable, SimpleId};

/// State index: `0` is `x0`, `1 + i` is the state of letter `i`, and the
/// last index is the sink `x1`.
pub type State = usize;

#[derive(Clone, Debug)]
pub struct CosetAutomaton {
    alphabet: Vec<Letter>,
    /// Row-major `states x letters`.
    transition: Vec<State>,
    delta_sub: SimpleId,
    state_names: Vec<String>,
}

pub const START: State = 0;

impl CosetAutomaton {
    /// Fills the transition table from the lattice data of the table.
    pub fn build(p: &ParabolicData<'_>) -> CosetAutomaton {
        let t = p.table();
        let delta = t.delta();
        let d = p.delta_sub();
        let omega = p.omega();
        let one = SimpleId::UNIT;

        let positives: Vec<SimpleId> = t.generators().collect();
        let g = positives.len();
        let alphabet: Vec<Letter> = positives
            .iter()
            .map(|&s| Letter::pos(s))
            .chain(positives.iter().map(|&s| Letter::neg(s)))
            .collect();
        let n_states = 2 * g + 2;
        let sink = n_states - 1;
        let letter_state = |l: Letter| -> State {
            let i = l.simple.index() - 1;
            match l.sign {
                Sign::Pos => 1 + i,
                Sign::Neg => 1 + g + i,
            }
        };

        let mut transition = vec![sink; n_states * alphabet.len()];
        for state in 0..n_states {
            for (li, &letter) in alphabet.iter().enumerate() {
                let v = letter.simple;
                let accept = if state == sink {
                    false
                } else if state == START {
                    match letter.sign {
                        Sign::Pos => t.meet_l(v, d) == one,
                        Sign::Neg => {
                            v == delta
                                || (t.meet_l(t.sigma(v), d) == one && !t.left_divides(omega, t.sigma(v)))
                        }
                    }
                } else {
                    let prev = alphabet[state - 1];
                    let u = prev.simple;
                    match (prev.sign, letter.sign) {
                        (Sign::Pos, Sign::Pos) => t.meet_l(t.sigma(u), v) == one,
                        (Sign::Pos, Sign::Neg) => false,
                        (Sign::Neg, Sign::Pos) => t.meet_l(u, v) == one,
                        (Sign::Neg, Sign::Neg) => t.meet_l(t.sigma(v), u) == one,
                    }
                };
                transition[state * alphabet.len() + li] = if accept { letter_state(letter) } else { sink };
            }
        }

        let mut state_names = vec!["x0".to_string()];
        state_names.extend(alphabet.iter().map(|&l| t.format_letter(l)));
        state_names.push("x1".to_string());

        CosetAutomaton { alphabet, transition, delta_sub: d, state_names }
    }

    pub fn alphabet(&self) -> &[Letter] {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.state_names.len()
    }

    pub fn sink(&self) -> State {
        self.num_states() - 1
    }

    pub fn state_name(&self, s: State) -> &str {
        &self.state_names[s]
    }

    /// The simple `delta` the automaton was built for.
    pub fn delta_sub(&self) -> SimpleId {
        self.delta_sub
    }

    pub fn is_accepting(&self, s: State) -> bool {
        s != self.sink()
    }

    /// Position of a letter in the alphabet.
    pub fn letter_index(&self, l: Letter) -> Result<usize> {
        let g = self.alphabet.len() / 2;
        let i = l.simple.index();
        if i == 0 || i > g {
            return Err(Error::Domain(format!("letter with simple {} is not in the alphabet", l.simple)));
        }
        Ok(match l.sign {
            Sign::Pos => i - 1,
            Sign::Neg => g + i - 1,
        })
    }

    pub fn step(&self, s: State, letter_index: usize) -> State {
        self.transition[s * self.alphabet.len() + letter_index]
    }

    pub fn run(&self, word: &[Letter]) -> Result<State> {
        let mut s = START;
        for &l in word {
            s = self.step(s, self.letter_index(l)?);
        }
        Ok(s)
    }

    pub fn accepts(&self, word: &[Letter]) -> Result<bool> {
        Ok(self.is_accepting(self.run(word)?))
    }

    /// All accepted words of length exactly `n`, in lexicographic order of
    /// letter indices.
    pub fn enumerate_accepted(&self, n: usize) -> Vec<Vec<Letter>> {
        let mut out = Vec::new();
        let mut word = Vec::with_capacity(n);
        self.dfs(START, n, &mut word, &mut out);
        out
    }

    fn dfs(&self, s: State, remaining: usize, word: &mut Vec<Letter>, out: &mut Vec<Vec<Letter>>) {
        if remaining == 0 {
            out.push(word.clone());
            return;
        }
        for (li, &l) in self.alphabet.iter().enumerate() {
            let next = self.step(s, li);
            if next != self.sink() {
                word.push(l);
                self.dfs(next, remaining - 1, word, out);
                word.pop();
            }
        }
    }

    /// The element spelled by a word.
    pub fn word_to_element(&self, t: &GarsideTable, word: &[Letter]) -> Result<Element> {
        t.normalize(word)
    }

    /// The accepted word of an element of the transversal: its left greedy
    /// normal form `v_q^-1 ... v_1^-1 u_1 ... u_p`.
    pub fn element_to_word(&self, p: &ParabolicData<'_>, theta: &Element) -> Result<Vec<Letter>> {
        let t = p.table();
        if !p.is_hn_reduced(theta) {
            return Err(Error::Domain(format!("{} is not in the transversal", t.format_element(theta))));
        }
        Ok(greedy_word(t, theta))
    }

    /// States reachable from `x0`, in index order.
    pub fn reachable(&self) -> Vec<State> {
        let mut seen = vec![false; self.num_states()];
        seen[START] = true;
        let mut stack = vec![START];
        while let Some(s) = stack.pop() {
            for li in 0..self.alphabet.len() {
                let n = self.step(s, li);
                if !seen[n] {
                    seen[n] = true;
                    stack.push(n);
                }
            }
        }
        (0..self.num_states()).filter(|&s| seen[s]).collect()
    }

    /// Graphviz text; edges into the sink are omitted.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph coset_automaton {\n  rankdir=LR;\n");
        for s in 0..self.num_states() {
            let shape = if self.is_accepting(s) { "doublecircle" } else { "circle" };
            let _ = writeln!(out, "  s{s} [label=\"{}\", shape={shape}];", self.state_names[s]);
        }
        for s in 0..self.num_states() {
            for li in 0..self.alphabet.len() {
                let n = self.step(s, li);
                if n != self.sink() {
                    let _ = writeln!(out, "  s{s} -> s{n} [label=\"{}\"];", self.state_names[li + 1]);
                }
            }
        }
        out.push_str("}\n");
        out
    }

    /// One `state letter -> state` line per transition.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        for s in 0..self.num_states() {
            for li in 0..self.alphabet.len() {
                let _ = writeln!(
                    out,
                    "{} {} -> {}",
                    self.state_names[s],
                    self.state_names[li + 1],
                    self.state_names[self.step(s, li)]
                );
            }
        }
        out
    }
}

/// Letters of the left greedy normal form `v_q^-1 ... v_1^-1 u_1 ... u_p`.
pub fn greedy_word(t: &GarsideTable, x: &Element) -> Vec<Letter> {
    match t.view(x, ViewKind::LeftGreedy) {
        NormalFormView::LeftGreedy { negative, positive } => negative
            .iter()
            .rev()
            .map(|&v| Letter::neg(v))
            .chain(positive.iter().map(|&u| Letter::pos(u)))
            .collect(),
        _ => unreachable!("LeftGreedy view"),
    }
}
