//! Coset growth coefficients and their rational generating function.
//!
//! `e(n)` counts accepted words of length `n`, obtained by pushing a count
//! vector through the transition table. The generating function is found
//! exactly: the minimal linear recurrence of the tail of `e` comes from the
//! largest nonsingular Hankel matrix, solved over the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::automaton::{CosetAutomaton, START};
use crate::error::{Error, Result};

/// Dense integer polynomial in `t`, lowest degree first, without trailing
/// zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly(Vec<BigInt>);

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> IntPoly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> IntPoly {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.0.get(i).cloned().unwrap_or_default()
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.0.is_empty() || other.0.is_empty() {
            return IntPoly(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// Quotient by a divisor with constant term `1`, if the division is exact.
    pub fn exact_div(&self, divisor: &IntPoly) -> Option<IntPoly> {
        assert!(divisor.coeff(0).is_one(), "divisor must have constant term 1");
        let (Some(dn), Some(dd)) = (self.degree(), divisor.degree()) else {
            return Some(IntPoly(Vec::new()));
        };
        if dn < dd {
            return None;
        }
        let mut q = vec![BigInt::zero(); dn - dd + 1];
        for i in 0..q.len() {
            let mut c = self.coeff(i);
            for j in 1..=dd.min(i) {
                c -= divisor.coeff(j) * &q[i - j];
            }
            q[i] = c;
        }
        let q = IntPoly::new(q);
        (q.mul(divisor) == *self).then_some(q)
    }

    /// First `n` coefficients of `self / den` as a power series.
    pub fn series_div(&self, den: &IntPoly, n: usize) -> Vec<BigInt> {
        assert!(den.coeff(0).is_one(), "denominator must have constant term 1");
        let mut out: Vec<BigInt> = Vec::with_capacity(n);
        for i in 0..n {
            let mut c = self.coeff(i);
            for j in 1..=i.min(den.0.len().saturating_sub(1)) {
                c -= den.coeff(j) * &out[i - j];
            }
            out.push(c);
        }
        out
    }
}

impl fmt::Display for IntPoly {
    /// `c0 + c1*t + c2*t^2 + ...`, zero terms omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c}*t"),
                _ => format!("{c}*t^{i}"),
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// `numerator / denominator = sum e(n) t^n`, with
/// `e(n) = sum_i recurrence[i-1] e(n-i)` for all `n >= guard`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeries {
    pub numerator: IntPoly,
    pub denominator: IntPoly,
    pub recurrence: Vec<BigInt>,
    pub guard: usize,
    /// Number of leading coefficients checked against the transfer counts.
    pub verified_terms: usize,
}

impl RationalSeries {
    /// First `n` Taylor coefficients.
    pub fn expand(&self, n: usize) -> Vec<BigInt> {
        self.numerator.series_div(&self.denominator, n)
    }

    pub fn order(&self) -> usize {
        self.recurrence.len()
    }
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rec: Vec<String> = self.recurrence.iter().map(BigInt::to_string).collect();
        write!(
            f,
            "numerator = {}; denominator = {}; recurrence = [{}] for n >= {}",
            self.numerator,
            self.denominator,
            rec.join(", "),
            self.guard
        )
    }
}

/// `e(0), ..., e(n_max)`: accepted words of each length.
pub fn transfer_counts(aut: &CosetAutomaton, n_max: usize) -> Vec<BigInt> {
    let states = aut.num_states();
    let sink = aut.sink();
    let letters = aut.alphabet().len();
    let mut cur = vec![BigInt::zero(); states];
    cur[START] = BigInt::one();
    let mut out = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let total: BigInt = (0..states).filter(|&s| aut.is_accepting(s)).map(|s| &cur[s]).sum();
        out.push(total);
        if n == n_max {
            break;
        }
        let mut next = vec![BigInt::zero(); states];
        for s in 0..states {
            if s == sink || cur[s].is_zero() {
                continue;
            }
            for li in 0..letters {
                let to = aut.step(s, li);
                if to != sink {
                    next[to] += &cur[s];
                }
            }
        }
        cur = next;
    }
    out
}

/// Counting matrix of the non-sink states reachable from `x0`.
pub fn reachable_transfer_matrix(aut: &CosetAutomaton) -> Vec<Vec<BigInt>> {
    let states: Vec<usize> = aut.reachable().into_iter().filter(|&s| s != aut.sink()).collect();
    let pos = |s: usize| states.iter().position(|&x| x == s);
    let mut m = vec![vec![BigInt::zero(); states.len()]; states.len()];
    for (i, &s) in states.iter().enumerate() {
        for li in 0..aut.alphabet().len() {
            if let Some(j) = pos(aut.step(s, li)) {
                m[i][j] += 1;
            }
        }
    }
    m
}

/// `det(I - t A)`, from the characteristic polynomial computed with the
/// Faddeev-LeVerrier recursion (exact over the integers).
pub fn reversed_char_poly(a: &[Vec<BigInt>]) -> IntPoly {
    let n = a.len();
    // coeffs[k] multiplies x^(n-k) in det(xI - A)
    let mut coeffs = vec![BigInt::one()];
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{k-1} I
        let mut next = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = BigInt::zero();
                for l in 0..n {
                    if !a[i][l].is_zero() && !m[l][j].is_zero() {
                        s += &a[i][l] * &m[l][j];
                    }
                }
                if i == j {
                    s += &coeffs[k - 1];
                }
                next[i][j] = s;
            }
        }
        m = next;
        let mut trace = BigInt::zero();
        for i in 0..n {
            for l in 0..n {
                if !a[i][l].is_zero() && !m[l][i].is_zero() {
                    trace += &a[i][l] * &m[l][i];
                }
            }
        }
        let c = -trace / BigInt::from(k);
        coeffs.push(c);
    }
    IntPoly::new(coeffs)
}

/// Solves `h c = rhs` over the rationals; `None` when `h` is singular.
fn solve(mut h: Vec<Vec<BigRational>>, mut rhs: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = h.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !h[r][col].is_zero())?;
        h.swap(col, pivot);
        rhs.swap(col, pivot);
        for r in 0..n {
            if r != col && !h[r][col].is_zero() {
                let factor = &h[r][col] / &h[col][col];
                for c in col..n {
                    let delta = &factor * &h[col][c];
                    h[r][c] -= delta;
                }
                let delta = &factor * &rhs[col];
                rhs[r] -= delta;
            }
        }
    }
    Some((0..n).map(|i| &rhs[i] / &h[i][i]).collect())
}

/// Rank by fraction-free (Bareiss) elimination with full pivoting.
fn rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let n = m.len();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some((pi, pj)) = (k..n).flat_map(|i| (k..n).map(move |j| (i, j))).find(|&(i, j)| !m[i][j].is_zero())
        else {
            return k;
        };
        m.swap(k, pi);
        for row in m.iter_mut() {
            row.swap(k, pj);
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    n
}

/// Exact rational generating function of the coset growth.
pub fn rational_series(aut: &CosetAutomaton) -> Result<RationalSeries> {
    let matrix = reachable_transfer_matrix(aut);
    let cap = matrix.len();
    let check_to = 3 * cap + 21;
    let e = transfer_counts(aut, check_to);

    // tail f(n) = e(n + cap) has no contribution from nilpotent states
    let tail = &e[cap..];
    let f: Vec<BigRational> = tail.iter().map(|x| BigRational::from_integer(x.clone())).collect();
    // the rank of the full Hankel matrix is the minimal recurrence order
    let d = rank((0..cap).map(|i| tail[i..i + cap].to_vec()).collect());
    let coeffs: Vec<BigRational> = if d == 0 {
        Vec::new()
    } else {
        // f(n + d) = sum_{i=1..d} c_i f(n + d - i)
        let h: Vec<Vec<BigRational>> = (0..d)
            .map(|row| (1..=d).map(|i| f[row + d - i].clone()).collect())
            .collect();
        let rhs: Vec<BigRational> = (0..d).map(|row| f[row + d].clone()).collect();
        solve(h, rhs).ok_or_else(|| Error::Internal("Hankel system became singular".into()))?
    };
    let mut recurrence = Vec::with_capacity(d);
    for c in &coeffs {
        if !c.is_integer() {
            return Err(Error::Internal(format!("non-integral recurrence coefficient {c}")));
        }
        recurrence.push(c.to_integer());
    }

    let holds = |n: usize| -> bool {
        let mut s = BigInt::zero();
        for (i, c) in recurrence.iter().enumerate() {
            s += c * &e[n - i - 1];
        }
        s == e[n]
    };
    // smallest guard >= d from which the recurrence holds on the checked range
    let mut guard = check_to + 1;
    while guard > d && holds(guard - 1) {
        guard -= 1;
    }
    if guard > cap + d {
        return Err(Error::Internal(format!(
            "recurrence of order {d} only holds from {guard}, beyond the expected bound {}",
            cap + d
        )));
    }

    let mut den = vec![BigInt::one()];
    den.extend(recurrence.iter().map(|c| -c));
    let denominator = IntPoly::new(den);
    let e_poly = IntPoly::new(e[..guard].to_vec());
    let product = e_poly.mul(&denominator);
    let numerator = IntPoly::new((0..guard).map(|i| product.coeff(i)).collect());

    let series = RationalSeries {
        numerator,
        denominator,
        recurrence,
        guard,
        verified_terms: check_to + 1,
    };
    if series.expand(check_to + 1) != e {
        return Err(Error::Internal("series expansion disagrees with the transfer counts".into()));
    }
    let char_poly = reversed_char_poly(&matrix);
    if char_poly.exact_div(&series.denominator).is_none() {
        return Err(Error::Internal(format!(
            "denominator {} does not divide det(I - tA) = {}",
            series.denominator, char_poly
        )));
    }
    Ok(series)
}
