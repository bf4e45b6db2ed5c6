//! The quantum torus `T_Λ` and its noncommutative Laurent polynomials.
//!
//! Elements are stored in the basis of based monomials `X^a`, for which
//! `X^a X^b = q^{Λ(a,b)/2} X^{a+b}`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::matrix::LambdaMatrix;
use super::qpoly::LaurentQ;
use super::SeedError;

/// Step limit for leading-term elimination; exact divisions in this crate
/// finish in far fewer steps.
const DIVISION_STEP_LIMIT: usize = 200_000;

/// Graded-lexicographic comparison of exponent vectors.
pub fn grlex_cmp(a: &[i64], b: &[i64]) -> Ordering {
    let (da, db): (i64, i64) = (a.iter().sum(), b.iter().sum());
    da.cmp(&db).then_with(|| a.cmp(b))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "LaurentRepr", try_from = "LaurentRepr")]
pub struct QuantumLaurent {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, LaurentQ>,
}

/// JSON form: the torus rank and a list of terms.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LaurentRepr {
    pub nvars: usize,
    pub terms: Vec<TermRepr>,
}

/// One term: the exponent vector and `[[doubled_q_power, coeff], ...]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermRepr {
    pub exponent: Vec<i64>,
    pub coeff: Vec<(i64, i64)>,
}

impl From<QuantumLaurent> for LaurentRepr {
    fn from(f: QuantumLaurent) -> Self {
        LaurentRepr {
            nvars: f.nvars,
            terms: f.terms.into_iter().map(|(exponent, c)| TermRepr { exponent, coeff: c.terms().collect() }).collect(),
        }
    }
}

impl TryFrom<LaurentRepr> for QuantumLaurent {
    type Error = String;

    fn try_from(v: LaurentRepr) -> Result<Self, String> {
        let mut out = QuantumLaurent::zero(v.nvars);
        for t in v.terms {
            if t.exponent.len() != v.nvars {
                return Err("exponent length differs from the torus rank".into());
            }
            out.add_term(t.exponent, &LaurentQ::from_terms(t.coeff));
        }
        Ok(out)
    }
}

impl QuantumLaurent {
    pub fn zero(nvars: usize) -> Self {
        QuantumLaurent { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], LaurentQ::one())
    }

    pub fn monomial(exponent: Vec<i64>, coeff: LaurentQ) -> Self {
        let mut out = QuantumLaurent::zero(exponent.len());
        out.add_term(exponent, &coeff);
        out
    }

    /// The based monomial `X^a`.
    pub fn based(exponent: Vec<i64>) -> Self {
        Self::monomial(exponent, LaurentQ::one())
    }

    pub fn generator(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::based(e)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &LaurentQ)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exponent: &[i64]) -> LaurentQ {
        self.terms.get(exponent).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, exponent: Vec<i64>, c: &LaurentQ) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&exponent) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&exponent);
        } else {
            self.terms.insert(exponent, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), &-c);
        }
        out
    }

    /// Multiplies every coefficient by `q^{doubled/2}`.
    pub fn shifted(&self, doubled: i64) -> Self {
        QuantumLaurent {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.shifted(doubled))).collect(),
        }
    }

    /// Leading term under the graded-lexicographic order.
    pub fn leading(&self) -> Option<(&Vec<i64>, &LaurentQ)> {
        self.terms.iter().max_by(|a, b| grlex_cmp(a.0, b.0))
    }

    pub fn trailing(&self) -> Option<(&Vec<i64>, &LaurentQ)> {
        self.terms.iter().min_by(|a, b| grlex_cmp(a.0, b.0))
    }

    /// `Some(s)` when `self = q^{s/2} other`.
    pub fn shift_relative_to(&self, other: &Self) -> Option<i64> {
        if self.nvars != other.nvars || self.terms.len() != other.terms.len() {
            return None;
        }
        if self.is_zero() {
            return Some(0);
        }
        let (e, c) = self.terms.iter().next()?;
        let oc = other.terms.get(e)?;
        let s = c.lowest()? - oc.lowest()?;
        (self.clone() == other.shifted(s)).then_some(s)
    }
}

impl fmt::Display for QuantumLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let exps: Vec<String> = e.iter().map(i64::to_string).collect();
                format!("({c})X^({})", exps.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A torus context: the commutation matrix of its generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Torus {
    pub lambda: LambdaMatrix,
}

impl Torus {
    pub fn new(lambda: LambdaMatrix) -> Self {
        Torus { lambda }
    }

    pub fn rank(&self) -> usize {
        self.lambda.size()
    }

    fn check(&self, f: &QuantumLaurent) -> Result<(), SeedError> {
        if f.nvars != self.rank() {
            return Err(SeedError::ContextMismatch);
        }
        Ok(())
    }

    pub fn product(&self, f: &QuantumLaurent, g: &QuantumLaurent) -> Result<QuantumLaurent, SeedError> {
        self.check(f)?;
        self.check(g)?;
        let mut out = QuantumLaurent::zero(self.rank());
        for (a, ca) in &f.terms {
            for (b, cb) in &g.terms {
                let shift = self.lambda.pairing(a, b);
                let sum: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(sum, &(ca * cb).shifted(shift));
            }
        }
        Ok(out)
    }

    /// Ordered product `f_1 f_2 ... f_n`.
    pub fn product_all<'a>(&self, factors: impl IntoIterator<Item = &'a QuantumLaurent>) -> Result<QuantumLaurent, SeedError> {
        let mut acc = QuantumLaurent::one(self.rank());
        for f in factors {
            acc = self.product(&acc, f)?;
        }
        Ok(acc)
    }

    pub fn power(&self, f: &QuantumLaurent, n: u32) -> Result<QuantumLaurent, SeedError> {
        let mut acc = QuantumLaurent::one(self.rank());
        for _ in 0..n {
            acc = self.product(&acc, f)?;
        }
        Ok(acc)
    }

    /// The unique `g` with `d * g = f`, by leading-term elimination.
    pub fn left_divide(&self, d: &QuantumLaurent, f: &QuantumLaurent) -> Result<QuantumLaurent, SeedError> {
        self.check(d)?;
        self.check(f)?;
        let fail = |why: &str| SeedError::NonExactDivision(why.to_string());
        let (dl, dc) = d.leading().map(|(e, c)| (e.clone(), c.clone())).ok_or_else(|| fail("division by zero"))?;
        let mut quotient = QuantumLaurent::zero(self.rank());
        let Some((ft, _)) = f.trailing() else { return Ok(quotient) };
        let (dt, _) = d.trailing().expect("nonzero divisor");
        let floor: Vec<i64> = ft.iter().zip(dt).map(|(x, y)| x - y).collect();
        let mut rem = f.clone();
        let mut steps = 0;
        while let Some((rl, rc)) = rem.leading().map(|(e, c)| (e.clone(), c.clone())) {
            steps += 1;
            if steps > DIVISION_STEP_LIMIT {
                return Err(fail("step limit reached"));
            }
            let e: Vec<i64> = rl.iter().zip(&dl).map(|(x, y)| x - y).collect();
            if grlex_cmp(&e, &floor) == Ordering::Less {
                return Err(fail("quotient would fall below the trailing bound"));
            }
            let scale = self.lambda.pairing(&dl, &e);
            let c = rc.exact_div(&dc.shifted(scale)).ok_or_else(|| fail("leading coefficient does not divide"))?;
            let term = QuantumLaurent::monomial(e.clone(), c.clone());
            rem = rem.sub(&self.product(d, &term)?);
            quotient.add_term(e, &c);
        }
        Ok(quotient)
    }
}
