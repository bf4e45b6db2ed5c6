//! Laurent polynomials in `q^{1/2}` with integer coefficients.
//!
//! Exponents are stored doubled, so key `e` stands for `q^{e/2}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LaurentQ(BTreeMap<i64, i64>);

impl LaurentQ {
    pub fn zero() -> Self {
        LaurentQ(BTreeMap::new())
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `coeff * q^{doubled/2}`.
    pub fn monomial(coeff: i64, doubled: i64) -> Self {
        let mut m = BTreeMap::new();
        if coeff != 0 {
            m.insert(doubled, coeff);
        }
        LaurentQ(m)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut out = LaurentQ::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.0.iter().map(|(&e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn add_term(&mut self, e: i64, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.0.entry(e).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.0.remove(&e);
        }
    }

    /// Multiplies by `q^{doubled/2}`.
    pub fn shifted(&self, doubled: i64) -> Self {
        LaurentQ(self.0.iter().map(|(&e, &c)| (e + doubled, c)).collect())
    }

    pub fn lowest(&self) -> Option<i64> {
        self.0.keys().next().copied()
    }

    pub fn highest(&self) -> Option<i64> {
        self.0.keys().next_back().copied()
    }

    /// `(coeff, doubled)` when the polynomial is a single term.
    pub fn as_monomial(&self) -> Option<(i64, i64)> {
        if self.0.len() == 1 {
            self.0.iter().next().map(|(&e, &c)| (c, e))
        } else {
            None
        }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide.
    pub fn exact_div(&self, d: &LaurentQ) -> Option<LaurentQ> {
        let (dh, dc) = d.0.iter().next_back().map(|(&e, &c)| (e, c))?;
        let dl = d.lowest()?;
        let mut rem = self.clone();
        let mut quo = LaurentQ::zero();
        let floor = match self.lowest() {
            Some(l) => l - dl,
            None => return Some(quo),
        };
        while let Some((&rh, &rc)) = rem.0.iter().next_back() {
            let shift = rh - dh;
            if shift < floor || rc % dc != 0 {
                return None;
            }
            let t = LaurentQ::monomial(rc / dc, shift);
            rem = &rem - &(&t * d);
            quo.add_term(shift, rc / dc);
        }
        Some(quo)
    }
}

impl Add for &LaurentQ {
    type Output = LaurentQ;

    fn add(self, rhs: &LaurentQ) -> LaurentQ {
        let mut out = self.clone();
        for (&e, &c) in &rhs.0 {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &LaurentQ {
    type Output = LaurentQ;

    fn sub(self, rhs: &LaurentQ) -> LaurentQ {
        let mut out = self.clone();
        for (&e, &c) in &rhs.0 {
            out.add_term(e, -c);
        }
        out
    }
}

impl Neg for &LaurentQ {
    type Output = LaurentQ;

    fn neg(self) -> LaurentQ {
        LaurentQ(self.0.iter().map(|(&e, &c)| (e, -c)).collect())
    }
}

impl Mul for &LaurentQ {
    type Output = LaurentQ;

    fn mul(self, rhs: &LaurentQ) -> LaurentQ {
        let mut out = LaurentQ::zero();
        for (&e1, &c1) in &self.0 {
            for (&e2, &c2) in &rhs.0 {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for LaurentQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(&e, &c)| match e {
                0 => c.to_string(),
                _ if e % 2 == 0 => format!("{c}q^{}", e / 2),
                _ => format!("{c}q^({e}/2)"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = LaurentQ::from_terms([(1, 1), (-1, 1)]);
        let sq = &a * &a;
        assert_eq!(sq, LaurentQ::from_terms([(2, 1), (0, 2), (-2, 1)]));
        assert_eq!(&sq - &sq, LaurentQ::zero());
        assert_eq!(a.shifted(2), LaurentQ::from_terms([(3, 1), (1, 1)]));
    }

    #[test]
    fn division() {
        let a = LaurentQ::from_terms([(1, 1), (-1, 1)]);
        let b = LaurentQ::from_terms([(4, 2), (0, -3)]);
        let p = &a * &b;
        assert_eq!(p.exact_div(&a).unwrap(), b);
        assert_eq!(p.exact_div(&b).unwrap(), a);
        assert!(LaurentQ::from_terms([(0, 1)]).exact_div(&a).is_none());
        assert!(LaurentQ::monomial(3, 0).exact_div(&LaurentQ::monomial(2, 0)).is_none());
        assert_eq!(LaurentQ::zero().exact_div(&a), Some(LaurentQ::zero()));
    }
}
