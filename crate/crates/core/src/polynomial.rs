//! Exact sparse multivariate polynomial arithmetic over the integers.
//!
//! Variables are named by edge labels. Terms are kept in graded
//! lexicographic order (total degree first, then variable names in
//! ascending sort order), which makes the textual form of a polynomial
//! unique and suitable for golden-file comparisons.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("assignment is missing variable `{0}`")]
    MissingVariable(String),
    #[error("polynomial has degree {degree} in `{variable}`, not quadratic")]
    NotQuadratic { variable: String, degree: u32 },
    #[error("zero polynomial has no monomial content")]
    ZeroContent,
    #[error("parse error at `{0}`")]
    Parse(String),
}

/// A power product of variables. Exponents are strictly positive; a
/// variable with exponent zero is simply absent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exponents: BTreeMap<String, u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn variable(name: &str) -> Self {
        Monomial::from_powers([(name.to_string(), 1)])
    }

    pub fn from_powers<I: IntoIterator<Item = (String, u32)>>(powers: I) -> Self {
        let mut exponents = BTreeMap::new();
        for (name, exp) in powers {
            if exp > 0 {
                *exponents.entry(name).or_insert(0) += exp;
            }
        }
        Monomial { exponents }
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.exponents.values().sum()
    }

    pub fn exponent_of(&self, name: &str) -> u32 {
        self.exponents.get(name).copied().unwrap_or(0)
    }

    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.exponents.keys().map(|s| s.as_str())
    }

    pub fn powers(&self) -> impl Iterator<Item = (&str, u32)> {
        self.exponents.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exponents = self.exponents.clone();
        for (name, exp) in &other.exponents {
            *exponents.entry(name.clone()).or_insert(0) += exp;
        }
        Monomial { exponents }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exponents
            .iter()
            .all(|(name, exp)| other.exponent_of(name) >= *exp)
    }

    /// Quotient `other / self`. Caller must ensure divisibility.
    pub fn quotient_into(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let mut exponents = BTreeMap::new();
        for (name, exp) in &other.exponents {
            let q = exp - self.exponent_of(name);
            if q > 0 {
                exponents.insert(name.clone(), q);
            }
        }
        Monomial { exponents }
    }

    /// Componentwise minimum, the gcd of two power products.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut exponents = BTreeMap::new();
        for (name, exp) in &self.exponents {
            let m = (*exp).min(other.exponent_of(name));
            if m > 0 {
                exponents.insert(name.clone(), m);
            }
        }
        Monomial { exponents }
    }

    /// Raise or lower the exponent of one variable; `delta` may not push
    /// the exponent below zero.
    fn with_exponent(&self, name: &str, exp: u32) -> Monomial {
        let mut exponents = self.exponents.clone();
        if exp == 0 {
            exponents.remove(name);
        } else {
            exponents.insert(name.to_string(), exp);
        }
        Monomial { exponents }
    }
}

/// Graded lexicographic: higher total degree wins; on ties, the first
/// variable (in ascending name order) where the exponents differ decides,
/// larger exponent first.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let mut names: BTreeSet<&String> = self.exponents.keys().collect();
        names.extend(other.exponents.keys());
        for name in names {
            match self.exponent_of(name).cmp(&other.exponent_of(name)) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (name, exp) in &self.exponents {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *exp == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{exp}")?;
            }
        }
        Ok(())
    }
}

/// Sparse multivariate polynomial with arbitrary-precision integer
/// coefficients. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(BigInt::one())
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Polynomial { terms }
    }

    pub fn variable(name: &str) -> Self {
        Polynomial::from_term(BigInt::one(), Monomial::variable(name))
    }

    pub fn from_term(coeff: BigInt, monomial: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(monomial, coeff);
        }
        Polynomial { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(it: I) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in it {
            p.add_term(&c, &m);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// The graded-lex greatest term.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut vars = BTreeSet::new();
        for m in self.terms.keys() {
            vars.extend(m.variables().map(|s| s.to_string()));
        }
        vars
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(Monomial::total_degree)
            .max()
            .unwrap_or(0)
    }

    fn add_term(&mut self, coeff: &BigInt, monomial: &Monomial) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(monomial) {
            Some(c) => {
                *c += coeff;
                if c.is_zero() {
                    self.terms.remove(monomial);
                }
            }
            None => {
                self.terms.insert(monomial.clone(), coeff.clone());
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(c, m);
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(&(-c), m);
        }
        out
    }

    pub fn negate(&self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(&(ca * cb), &ma.mul(mb));
            }
        }
        out
    }

    pub fn mul_scalar(&self, c: &BigInt) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    /// Exact evaluation. The assignment must cover every variable.
    pub fn evaluate(&self, assignment: &BTreeMap<String, BigInt>) -> Result<BigInt, PolyError> {
        for v in self.variables() {
            if !assignment.contains_key(&v) {
                return Err(PolyError::MissingVariable(v));
            }
        }
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut value = c.clone();
            for (name, exp) in m.powers() {
                let base = &assignment[name];
                value *= base.pow(exp);
            }
            total += value;
        }
        Ok(total)
    }

    pub fn degree_in(&self, variable: &str) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exponent_of(variable))
            .max()
            .unwrap_or(0)
    }

    pub fn is_linear_in_every_variable(&self) -> bool {
        self.terms
            .keys()
            .all(|m| m.powers().all(|(_, exp)| exp <= 1))
    }

    /// Coefficient of `variable^power`, as a polynomial in the remaining
    /// variables.
    pub fn coefficient_of(&self, variable: &str, power: u32) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            if m.exponent_of(variable) == power {
                out.add_term(c, &m.with_exponent(variable, 0));
            }
        }
        out
    }

    /// Split a polynomial of degree at most two in `variable` into
    /// `(A, B, C)` with `p = A*v^2 + B*v + C`.
    pub fn coefficient_slices(
        &self,
        variable: &str,
    ) -> Result<(Polynomial, Polynomial, Polynomial), PolyError> {
        let degree = self.degree_in(variable);
        if degree > 2 {
            return Err(PolyError::NotQuadratic {
                variable: variable.to_string(),
                degree,
            });
        }
        Ok((
            self.coefficient_of(variable, 2),
            self.coefficient_of(variable, 1),
            self.coefficient_of(variable, 0),
        ))
    }

    /// Extract the monomial gcd of all terms and the cofactor, so that
    /// `content * cofactor == self`.
    pub fn monomial_content(&self) -> Result<(Monomial, Polynomial), PolyError> {
        let mut it = self.terms.keys();
        let first = it.next().ok_or(PolyError::ZeroContent)?;
        let mut content = first.clone();
        for m in it {
            content = content.gcd(m);
            if content.is_one() {
                break;
            }
        }
        let cofactor = Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (content.quotient_into(m), c.clone()))
                .collect(),
        };
        Ok((content, cofactor))
    }

    /// Exact division: returns `self / divisor` when the division leaves no
    /// remainder, `None` otherwise.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        if divisor.is_zero() {
            return None;
        }
        let (dm, dc) = divisor.leading_term()?;
        let dm = dm.clone();
        let dc = dc.clone();
        let mut rem = self.clone();
        let mut quot = Polynomial::zero();
        while let Some((rm, rc)) = rem.leading_term() {
            if !dm.divides(rm) {
                return None;
            }
            let (q, r) = num_integer::Integer::div_rem(rc, &dc);
            if !r.is_zero() {
                return None;
            }
            let qm = dm.quotient_into(rm);
            let step = Polynomial::from_term(q, qm);
            rem = rem.sub(&step.mul(divisor));
            quot = quot.add(&step);
        }
        Some(quot)
    }

    /// Exact square root. Returns `r` with `r*r == self` when an integer
    /// polynomial root exists; the root is normalized so its leading
    /// coefficient is positive.
    ///
    /// Works one variable at a time: the leading coefficient with respect
    /// to the chosen variable must itself be a perfect square, the lower
    /// coefficients are then peeled off by exact division, and the
    /// constant case reduces to an integer square root.
    pub fn perfect_square_root(&self) -> Option<Polynomial> {
        if self.is_zero() {
            return Some(Polynomial::zero());
        }
        let root = self.square_root_inner()?;
        // The algorithm is exact but verify anyway; a failed check means
        // the input was not a square.
        if root.mul(&root) != *self {
            return None;
        }
        let (_, lead) = root.leading_term()?;
        if lead.is_negative() {
            Some(root.negate())
        } else {
            Some(root)
        }
    }

    fn square_root_inner(&self) -> Option<Polynomial> {
        let vars = self.variables();
        let Some(var) = vars.iter().next() else {
            // Constant polynomial.
            let c = self.terms.get(&Monomial::one())?;
            if c.is_negative() {
                return None;
            }
            let r = c.sqrt();
            if &(&r * &r) != c {
                return None;
            }
            return Some(Polynomial::constant(r));
        };
        let degree = self.degree_in(var);
        if degree % 2 != 0 {
            return None;
        }
        let half = degree / 2;
        let coeffs: Vec<Polynomial> = (0..=degree)
            .map(|k| self.coefficient_of(var, k))
            .collect();
        let top = coeffs[degree as usize].square_root_inner()?;
        if top.is_zero() {
            return None;
        }
        let two_top = top.mul_scalar(&BigInt::from(2));
        let mut root_coeffs: Vec<Option<Polynomial>> = vec![None; half as usize + 1];
        root_coeffs[half as usize] = Some(top);
        for k in (0..half).rev() {
            // coefficient of v^(half+k) in r^2 is 2*s_half*s_k plus the
            // cross terms s_i*s_j with i+j = half+k and k < i, j < half.
            let mut cross = Polynomial::zero();
            for i in (k + 1)..half {
                let j = half + k - i;
                if j <= i || j > half {
                    continue;
                }
                let si = root_coeffs[i as usize].as_ref()?;
                let sj = root_coeffs[j as usize].as_ref()?;
                let prod = si.mul(sj);
                cross = cross.add(&prod.mul_scalar(&BigInt::from(2)));
            }
            for i in (k + 1)..=half {
                let j = half + k - i;
                if j != i || j >= half {
                    continue;
                }
                let si = root_coeffs[i as usize].as_ref()?;
                cross = cross.add(&si.mul(si));
            }
            let numer = coeffs[(half + k) as usize].sub(&cross);
            root_coeffs[k as usize] = Some(numer.div_exact(&two_top)?);
        }
        let mut root = Polynomial::zero();
        for (k, c) in root_coeffs.into_iter().enumerate() {
            let c = c?;
            let vk = Monomial::from_powers([(var.clone(), k as u32)]);
            root = root.add(&c.mul_monomial(&vk));
        }
        Some(root)
    }

    /// Parse the canonical text format produced by `Display`.
    pub fn parse(input: &str) -> Result<Polynomial, PolyError> {
        let mut out = Polynomial::zero();
        let text = input.trim();
        if text.is_empty() {
            return Err(PolyError::Parse("empty input".to_string()));
        }
        if text == "0" {
            return Ok(out);
        }
        let mut rest = text;
        let mut sign = BigInt::one();
        if let Some(r) = rest.strip_prefix('-') {
            sign = -sign;
            rest = r.trim_start();
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r.trim_start();
        }
        loop {
            let term_end = rest
                .char_indices()
                .find(|&(i, c)| (c == '+' || c == '-') && i > 0)
                .map(|(i, _)| i)
                .unwrap_or(rest.len());
            let (term_text, tail) = rest.split_at(term_end);
            let (coeff, monomial) = parse_term(term_text.trim())?;
            out.add_term(&(coeff * &sign), &monomial);
            let tail = tail.trim_start();
            if tail.is_empty() {
                break;
            }
            if let Some(r) = tail.strip_prefix('+') {
                sign = BigInt::one();
                rest = r.trim_start();
            } else if let Some(r) = tail.strip_prefix('-') {
                sign = -BigInt::one();
                rest = r.trim_start();
            } else {
                return Err(PolyError::Parse(tail.to_string()));
            }
        }
        Ok(out)
    }
}

fn parse_term(text: &str) -> Result<(BigInt, Monomial), PolyError> {
    if text.is_empty() {
        return Err(PolyError::Parse("empty term".to_string()));
    }
    let mut coeff = BigInt::one();
    let mut powers: Vec<(String, u32)> = Vec::new();
    for factor in text.split('*') {
        let factor = factor.trim();
        if factor.is_empty() {
            return Err(PolyError::Parse(text.to_string()));
        }
        if factor.chars().all(|c| c.is_ascii_digit()) {
            let c: BigInt = factor
                .parse()
                .map_err(|_| PolyError::Parse(factor.to_string()))?;
            coeff *= c;
            continue;
        }
        let (name, exp) = match factor.split_once('^') {
            Some((name, exp)) => {
                let exp: u32 = exp
                    .trim()
                    .parse()
                    .map_err(|_| PolyError::Parse(factor.to_string()))?;
                (name.trim(), exp)
            }
            None => (factor, 1),
        };
        if name.is_empty() || name.starts_with(|c: char| c.is_ascii_digit()) {
            return Err(PolyError::Parse(factor.to_string()));
        }
        powers.push((name.to_string(), exp));
    }
    Ok((coeff, Monomial::from_powers(powers)))
}

impl fmt::Display for Polynomial {
    /// Canonical form: terms in descending graded-lex order, written as
    /// `[+|-] [c*]v1[^k1][*v2[^k2]...]` with unit coefficients suppressed,
    /// e.g. `- 2*e1*e3^2 + e2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if first {
                if c.is_negative() {
                    write!(f, "- ")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.magnitude();
            if mag.is_one() && !m.is_one() {
                write!(f, "{m}")?;
            } else if m.is_one() {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> Polynomial {
        Polynomial::parse(text).unwrap()
    }

    #[test]
    fn grlex_order() {
        let a2b = Monomial::from_powers([("a".into(), 2), ("b".into(), 1)]);
        let ab2 = Monomial::from_powers([("a".into(), 1), ("b".into(), 2)]);
        let ab = Monomial::from_powers([("a".into(), 1), ("b".into(), 1)]);
        assert!(a2b > ab2);
        assert!(ab2 > ab);
    }

    #[test]
    fn add_cancels() {
        let q = p("a + 2*b");
        assert!(q.add(&q.negate()).is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let lhs = p("a + b").mul(&p("a - b"));
        assert_eq!(lhs, p("a^2 - b^2"));
    }

    #[test]
    fn triple_product_sign() {
        // (x*y) * (-z) = -x*y*z
        let lhs = p("x*y").mul(&p("- z"));
        assert_eq!(lhs, p("- x*y*z"));
    }

    #[test]
    fn evaluate_examples() {
        let sigma: BTreeMap<String, BigInt> =
            [("a".to_string(), 2.into()), ("b".to_string(), 3.into())].into();
        assert_eq!(Polynomial::zero().evaluate(&sigma).unwrap(), 0.into());
        assert_eq!(p("a*b + b").evaluate(&sigma).unwrap(), 9.into());
        assert_eq!(
            p("a*b + c").evaluate(&sigma),
            Err(PolyError::MissingVariable("c".to_string()))
        );
    }

    #[test]
    fn degree_and_linearity() {
        let q = p("a^2*b");
        assert_eq!(q.degree_in("a"), 2);
        assert_eq!(q.degree_in("b"), 1);
        assert_eq!(q.degree_in("c"), 0);
        assert!(!q.is_linear_in_every_variable());
        assert!(p("a*b + b*c").is_linear_in_every_variable());
    }

    #[test]
    fn slices_examples() {
        let q = p("a*v^2 + v + 1");
        let (a, b, c) = q.coefficient_slices("v").unwrap();
        assert_eq!(a, p("a"));
        assert_eq!(b, p("1"));
        assert_eq!(c, p("1"));
        let v2 = Polynomial::variable("v").mul(&Polynomial::variable("v"));
        let reconstructed = a.mul(&v2).add(&b.mul(&Polynomial::variable("v"))).add(&c);
        assert_eq!(reconstructed, q);
        assert!(matches!(
            p("v^3").coefficient_slices("v"),
            Err(PolyError::NotQuadratic { .. })
        ));
    }

    #[test]
    fn content_examples() {
        let (content, cofactor) = p("a^2*b + a*b^2").monomial_content().unwrap();
        assert_eq!(content, Monomial::from_powers([("a".into(), 1), ("b".into(), 1)]));
        assert_eq!(cofactor, p("a + b"));
        let (content, cofactor) = p("a + b").monomial_content().unwrap();
        assert!(content.is_one());
        assert_eq!(cofactor, p("a + b"));
        assert_eq!(
            Polynomial::zero().monomial_content(),
            Err(PolyError::ZeroContent)
        );
    }

    #[test]
    fn sqrt_examples() {
        let square = p("a + b").mul(&p("a + b"));
        assert_eq!(square.perfect_square_root(), Some(p("a + b")));
        assert_eq!(p("a^2 + b^2").perfect_square_root(), None);
        assert_eq!(p("4").perfect_square_root(), Some(p("2")));
        assert_eq!(p("5").perfect_square_root(), None);
        assert_eq!(p("- 4").perfect_square_root(), None);
        assert_eq!(Polynomial::zero().perfect_square_root(), Some(Polynomial::zero()));
    }

    #[test]
    fn sqrt_negated_square() {
        let r = p("a - b");
        let sq = r.mul(&r);
        // root of (a-b)^2 = (b-a)^2 is normalized with positive lead.
        assert_eq!(sq.perfect_square_root(), Some(p("a - b")));
    }

    #[test]
    fn display_golden() {
        let q = p("e2 - 2*e1*e3^2");
        assert_eq!(q.to_string(), "- 2*e1*e3^2 + e2");
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(p("- a").to_string(), "- a");
        assert_eq!(p("7").to_string(), "7");
    }

    #[test]
    fn parse_print_roundtrip() {
        for text in ["- 2*e1*e3^2 + e2", "a^2 - b^2", "0", "- a - b - 1", "3*x*y + 2"] {
            let q = p(text);
            assert_eq!(Polynomial::parse(&q.to_string()).unwrap(), q);
        }
    }
}
