use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Integer Laurent polynomial in one variable.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Laurent {
    coefficients: BTreeMap<i32, i64>,
}

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(coeff: i64, exp: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i32, i64)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i32, coeff: i64) {
        let c = self.coefficients.entry(exp).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.coefficients.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.coefficients.get(&exp).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, i64)> + '_ {
        self.coefficients.iter().map(|(&e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e, c * k)))
    }

    /// Multiplies by `var^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e + k, c)))
    }

    /// Substitutes `var ↦ var^k`.
    pub fn substitute_power(&self, k: i32) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e * k, c)))
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::monomial(1, 0), |acc, _| &acc * self)
    }

    pub fn all_even(&self) -> bool {
        self.terms().all(|(_, c)| c % 2 == 0)
    }

    /// Renders with the given variable name, highest exponent first.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (e, c)) in self.terms().rev().enumerate() {
            let mag = c.unsigned_abs();
            if k == 0 {
                if c < 0 {
                    s.push('-');
                }
            } else {
                s.push_str(if c < 0 { " - " } else { " + " });
            }
            let body = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            match (mag, body.is_empty()) {
                (_, true) => s.push_str(&mag.to_string()),
                (1, false) => s.push_str(&body),
                (_, false) => s.push_str(&format!("{mag}{body}")),
            }
        }
        s
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("q"))
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self + &-rhs
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        self.scale(-1)
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (a, x) in self.terms() {
            for (b, y) in rhs.terms() {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

/// Integer Laurent polynomial in `t` and `q`; key `(i, j)` is `t^i q^j`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BigradedLaurent {
    coefficients: BTreeMap<(i32, i32), i64>,
}

impl BigradedLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((i32, i32), i64)>) -> Self {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_term(k.0, k.1, c);
        }
        p
    }

    pub fn add_term(&mut self, i: i32, j: i32, coeff: i64) {
        let c = self.coefficients.entry((i, j)).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.coefficients.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: i32, j: i32) -> i64 {
        self.coefficients.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i32, i32), i64)> + '_ {
        self.coefficients.iter().map(|(&k, &c)| (k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Substitutes `t = -1`, leaving a polynomial in `q`.
    pub fn at_t_minus_one(&self) -> Laurent {
        Laurent::from_terms(
            self.terms()
                .map(|((i, j), c)| (j, if i.rem_euclid(2) == 0 { c } else { -c })),
        )
    }

    /// Substitutes `q = 1`, leaving a polynomial in `t`.
    pub fn at_q_one(&self) -> Laurent {
        Laurent::from_terms(self.terms().map(|((i, _), c)| (i, c)))
    }

    /// Swaps `t ↦ t^-1`, `q ↦ q^-1`.
    pub fn inverted(&self) -> Self {
        Self::from_terms(self.terms().map(|((i, j), c)| ((-i, -j), c)))
    }
}

impl Mul for &BigradedLaurent {
    type Output = BigradedLaurent;
    fn mul(self, rhs: &BigradedLaurent) -> BigradedLaurent {
        let mut out = BigradedLaurent::zero();
        for ((a, b), x) in self.terms() {
            for ((c, d), y) in rhs.terms() {
                out.add_term(a + c, b + d, x * y);
            }
        }
        out
    }
}

impl fmt::Display for BigradedLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for ((i, j), c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let mut parts = Vec::new();
            match i {
                0 => {}
                1 => parts.push("t".to_string()),
                _ => parts.push(format!("t^{i}")),
            }
            match j {
                0 => {}
                1 => parts.push("q".to_string()),
                _ => parts.push(format!("q^{j}")),
            }
            let mag = c.unsigned_abs();
            let body = parts.join(" ");
            let term = match (mag, body.is_empty()) {
                (_, true) => mag.to_string(),
                (1, false) => body,
                _ => format!("{mag} {body}"),
            };
            let sep = match (first, c < 0) {
                (true, false) => "",
                (true, true) => "-",
                (false, false) => " + ",
                (false, true) => " - ",
            };
            write!(f, "{sep}{term}")?;
            first = false;
        }
        Ok(())
    }
}
