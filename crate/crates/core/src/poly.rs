//! Sparse multivariate Laurent polynomials with arbitrary-precision integer
//! coefficients.
//!
//! A polynomial carries the sorted list of variables that actually occur in it
//! together with a map from exponent vectors to nonzero coefficients. Variables
//! whose exponent is zero in every term are dropped, so structural equality is
//! polynomial equality.
//!
//! Canonical text form: terms ordered by total degree (ascending), ties broken
//! by exponent vector in descending lexicographic order over the byte-sorted
//! variable list. A term is printed as `coeff*var^exp*var^exp`, with the
//! coefficient omitted when it is `1` and `^exp` omitted when the exponent is
//! `1`. Signs are explicit: `2 + A - B`, `-X^-1 + Y`. The zero polynomial is
//! `0`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("substituting a non-monomial for `{var}` with negative exponent {exp} leaves the Laurent ring")]
    NonLaurentResult { var: String, exp: i64 },
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("exponent {exp} of `{var}` is not divisible by {factor}")]
    Indivisible { var: String, exp: i64, factor: i64 },
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPolynomial {
    vars: Vec<String>,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Self { vars: Vec::new(), terms }
    }

    pub fn var(name: &str) -> Self {
        Self::monomial(1, &[(name, 1)])
    }

    /// `coeff * prod(var^exp)`. Repeated variables are multiplied together.
    pub fn monomial<T: Into<BigInt>>(coeff: T, powers: &[(&str, i64)]) -> Self {
        let mut exps: BTreeMap<String, i64> = BTreeMap::new();
        for &(v, e) in powers {
            *exps.entry(v.to_string()).or_insert(0) += e;
        }
        exps.retain(|_, e| *e != 0);
        let coeff = coeff.into();
        if coeff.is_zero() {
            return Self::zero();
        }
        let vars: Vec<String> = exps.keys().cloned().collect();
        let exp: Vec<i64> = exps.values().copied().collect();
        let mut terms = BTreeMap::new();
        terms.insert(exp, coeff);
        Self { vars, terms }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs over `vars`.
    /// `vars` need not be sorted; duplicate exponent vectors are summed.
    pub fn from_terms<I>(vars: &[&str], terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<i64>, BigInt)>,
    {
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let mut order: Vec<usize> = (0..names.len()).collect();
        order.sort_by(|&a, &b| names[a].cmp(&names[b]));
        let sorted: Vec<String> = order.iter().map(|&i| names[i].clone()).collect();
        assert!(
            sorted.windows(2).all(|w| w[0] != w[1]),
            "duplicate variable names"
        );
        let mut map: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
        for (exp, c) in terms {
            assert_eq!(exp.len(), names.len());
            let e: Vec<i64> = order.iter().map(|&i| exp[i]).collect();
            *map.entry(e).or_insert_with(BigInt::zero) += c;
        }
        let mut p = Self { vars: sorted, terms: map };
        p.normalize();
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterates over `(variable -> exponent, coefficient)` pairs in internal order.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<(&str, i64)>, &BigInt)> {
        self.terms.iter().map(move |(e, c)| {
            let m = self
                .vars
                .iter()
                .zip(e)
                .filter(|(_, &x)| x != 0)
                .map(|(v, &x)| (v.as_str(), x))
                .collect();
            (m, c)
        })
    }

    /// The coefficient of the monomial given by `powers` (zero if absent).
    pub fn coefficient(&self, powers: &[(&str, i64)]) -> BigInt {
        let key = Self::monomial(1, powers);
        let Some((exp, _)) = key.terms.iter().next() else {
            return BigInt::zero();
        };
        if key.vars.iter().any(|v| !self.vars.contains(v)) {
            return BigInt::zero();
        }
        let mut full = vec![0; self.vars.len()];
        for (v, e) in key.vars.iter().zip(exp) {
            let i = self.vars.iter().position(|w| w == v).unwrap();
            full[i] = *e;
        }
        self.terms.get(&full).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Minimum and maximum exponent of `var` over all terms, `None` for zero.
    pub fn degree_range(&self, var: &str) -> Option<(i64, i64)> {
        if self.is_zero() {
            return None;
        }
        let Some(i) = self.vars.iter().position(|v| v == var) else {
            return Some((0, 0));
        };
        let lo = self.terms.keys().map(|e| e[i]).min().unwrap();
        let hi = self.terms.keys().map(|e| e[i]).max().unwrap();
        Some((lo, hi))
    }

    /// If this is a single term, returns it as `(coefficient, exponents)`.
    pub fn as_monomial(&self) -> Option<(&BigInt, &[i64])> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            Some((c, e))
        } else {
            None
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// A unit of the Laurent ring: `±1` times a monomial.
    pub fn is_unit_monomial(&self) -> bool {
        matches!(self.as_monomial(), Some((c, _)) if c.abs().is_one())
    }

    fn normalize(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
        let n = self.vars.len();
        let used: Vec<bool> = (0..n)
            .map(|i| self.terms.keys().any(|e| e[i] != 0))
            .collect();
        if used.iter().all(|&u| u) {
            return;
        }
        let vars = self
            .vars
            .iter()
            .zip(&used)
            .filter(|(_, &u)| u)
            .map(|(v, _)| v.clone())
            .collect();
        let terms = std::mem::take(&mut self.terms)
            .into_iter()
            .map(|(e, c)| {
                let e = e
                    .into_iter()
                    .zip(&used)
                    .filter(|(_, &u)| u)
                    .map(|(x, _)| x)
                    .collect();
                (e, c)
            })
            .collect();
        self.vars = vars;
        self.terms = terms;
    }

    fn merged_vars(a: &[String], b: &[String]) -> Vec<String> {
        let mut out: Vec<String> = a.iter().chain(b).cloned().collect();
        out.sort();
        out.dedup();
        out
    }

    fn embedding(from: &[String], into: &[String]) -> Vec<usize> {
        from.iter()
            .map(|v| into.binary_search(v).expect("variable present"))
            .collect()
    }

    fn lift(exp: &[i64], slots: &[usize], width: usize) -> Vec<i64> {
        let mut out = vec![0; width];
        for (&x, &s) in exp.iter().zip(slots) {
            out[s] = x;
        }
        out
    }

    /// Multiplies by `coeff * prod(var^exp)` without building an intermediate.
    pub fn scale(&self, coeff: i64, powers: &[(&str, i64)]) -> Self {
        self * &Self::monomial(coeff, powers)
    }

    pub fn pow(&self, exp: i64) -> Result<Self, PolyError> {
        if exp < 0 {
            let inv = self.inverse_monomial().ok_or_else(|| PolyError::NonLaurentResult {
                var: self.to_string(),
                exp,
            })?;
            return inv.pow(-exp);
        }
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(result)
    }

    /// Inverse of a `±monomial`; `None` otherwise.
    pub fn inverse_monomial(&self) -> Option<Self> {
        if !self.is_unit_monomial() {
            return None;
        }
        let (c, e) = self.as_monomial().unwrap();
        let mut terms = BTreeMap::new();
        terms.insert(e.iter().map(|x| -x).collect(), c.clone());
        Some(Self { vars: self.vars.clone(), terms })
    }

    /// Simultaneous substitution `var -> binding`. Unbound variables pass through.
    /// A negative power of a variable may only be substituted by a `±monomial`.
    pub fn substitute(&self, bindings: &HashMap<String, LaurentPolynomial>) -> Result<Self, PolyError> {
        let mut cache: HashMap<(usize, i64), LaurentPolynomial> = HashMap::new();
        let mut out = Self::zero();
        for (exp, c) in &self.terms {
            let mut term = Self::constant(c.clone());
            let mut free: Vec<(&str, i64)> = Vec::new();
            for (i, &x) in exp.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let name = &self.vars[i];
                match bindings.get(name) {
                    None => free.push((name.as_str(), x)),
                    Some(b) => {
                        let factor = match cache.get(&(i, x)) {
                            Some(f) => f.clone(),
                            None => {
                                let f = b.pow(x).map_err(|_| PolyError::NonLaurentResult {
                                    var: name.clone(),
                                    exp: x,
                                })?;
                                cache.insert((i, x), f.clone());
                                f
                            }
                        };
                        term = &term * &factor;
                    }
                }
            }
            if !free.is_empty() {
                term = &term * &Self::monomial(1, &free);
            }
            out += &term;
        }
        Ok(out)
    }

    /// Convenience wrapper around [`substitute`](Self::substitute).
    pub fn subs(&self, bindings: &[(&str, LaurentPolynomial)]) -> Result<Self, PolyError> {
        let map = bindings
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect();
        self.substitute(&map)
    }

    /// Replaces `var^(factor*j)` by `var^j`. Fails if some exponent of `var`
    /// is not a multiple of `factor`.
    pub fn divide_exponents(&self, var: &str, factor: i64) -> Result<Self, PolyError> {
        assert!(factor > 0);
        let Some(i) = self.vars.iter().position(|v| v == var) else {
            return Ok(self.clone());
        };
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[i] % factor != 0 {
                return Err(PolyError::Indivisible {
                    var: var.to_string(),
                    exp: e[i],
                    factor,
                });
            }
            let mut e = e.clone();
            e[i] /= factor;
            terms.insert(e, c.clone());
        }
        Ok(Self { vars: self.vars.clone(), terms })
    }

    /// Renames variables; targets must not collide with other variables.
    pub fn rename(&self, pairs: &[(&str, &str)]) -> Self {
        let bindings: Vec<(&str, LaurentPolynomial)> =
            pairs.iter().map(|&(a, b)| (a, Self::var(b))).collect();
        self.subs(&bindings).expect("renaming is a monomial substitution")
    }

    fn canonical_order(&self) -> Vec<(&Vec<i64>, &BigInt)> {
        let mut items: Vec<_> = self.terms.iter().collect();
        items.sort_by(|(a, _), (b, _)| {
            let da: i64 = a.iter().sum();
            let db: i64 = b.iter().sum();
            da.cmp(&db).then_with(|| b.cmp(a))
        });
        items
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, vars: &[String], exp: &[i64], coeff_abs: &BigInt) -> fmt::Result {
    let mut parts: Vec<String> = Vec::new();
    let is_const = exp.iter().all(|&x| x == 0);
    if !coeff_abs.is_one() || is_const {
        parts.push(coeff_abs.to_string());
    }
    for (v, &x) in vars.iter().zip(exp) {
        match x {
            0 => {}
            1 => parts.push(v.clone()),
            _ => parts.push(format!("{v}^{x}")),
        }
    }
    write!(f, "{}", parts.join("*"))
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (exp, c)) in self.canonical_order().into_iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write_monomial(f, &self.vars, exp, &c.abs())?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPolynomial({self})")
    }
}

impl PartialOrd for LaurentPolynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LaurentPolynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.vars.cmp(&other.vars).then_with(|| self.terms.cmp(&other.terms))
    }
}

impl<'a> Add<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(mut self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPolynomial> for LaurentPolynomial {
    fn add_assign(&mut self, rhs: &LaurentPolynomial) {
        if rhs.is_zero() {
            return;
        }
        if self.vars != rhs.vars {
            let vars = Self::merged_vars(&self.vars, &rhs.vars);
            if vars != self.vars {
                let slots = Self::embedding(&self.vars, &vars);
                let w = vars.len();
                self.terms = std::mem::take(&mut self.terms)
                    .into_iter()
                    .map(|(e, c)| (Self::lift(&e, &slots, w), c))
                    .collect();
                self.vars = vars;
            }
            let slots = Self::embedding(&rhs.vars, &self.vars);
            let w = self.vars.len();
            for (e, c) in &rhs.terms {
                *self
                    .terms
                    .entry(Self::lift(e, &slots, w))
                    .or_insert_with(BigInt::zero) += c;
            }
        } else {
            for (e, c) in &rhs.terms {
                *self.terms.entry(e.clone()).or_insert_with(BigInt::zero) += c;
            }
        }
        self.normalize();
    }
}

impl<'a> Mul<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPolynomial::zero();
        }
        let vars = LaurentPolynomial::merged_vars(&self.vars, &rhs.vars);
        let w = vars.len();
        let ls = LaurentPolynomial::embedding(&self.vars, &vars);
        let rs = LaurentPolynomial::embedding(&rhs.vars, &vars);
        let left: Vec<(Vec<i64>, &BigInt)> = self
            .terms
            .iter()
            .map(|(e, c)| (LaurentPolynomial::lift(e, &ls, w), c))
            .collect();
        let right: Vec<(Vec<i64>, &BigInt)> = rhs
            .terms
            .iter()
            .map(|(e, c)| (LaurentPolynomial::lift(e, &rs, w), c))
            .collect();
        let mut terms: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
        for (le, lc) in &left {
            for (re, rc) in &right {
                let e: Vec<i64> = le.iter().zip(re).map(|(a, b)| a + b).collect();
                *terms.entry(e).or_insert_with(BigInt::zero) += *lc * *rc;
            }
        }
        let mut out = LaurentPolynomial { vars, terms };
        out.normalize();
        out
    }
}

impl Mul for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        &self * &rhs
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect();
        LaurentPolynomial { vars: self.vars.clone(), terms }
    }
}

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}

impl<'a> Sub<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self + &(-rhs)
    }
}

impl Sub for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        &self - &rhs
    }
}

impl std::iter::Sum for LaurentPolynomial {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        let mut acc = Self::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

impl From<i64> for LaurentPolynomial {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl FromStr for LaurentPolynomial {
    type Err = PolyError;

    /// Accepts the canonical grammar, and is lenient about whitespace, term
    /// order and repeated variables.
    fn from_str(s: &str) -> Result<Self, PolyError> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(PolyError::Parse("empty input".into()));
        }
        let bytes = s.as_bytes();
        // Split into signed terms; a '-' directly after '^' belongs to an exponent.
        let mut pieces: Vec<(bool, &str)> = Vec::new();
        let mut start = 0;
        let mut neg = false;
        if bytes[0] == b'-' || bytes[0] == b'+' {
            neg = bytes[0] == b'-';
            start = 1;
        }
        let mut i = start;
        while i < bytes.len() {
            let b = bytes[i];
            if (b == b'+' || b == b'-') && i > start && bytes[i - 1] != b'^' {
                pieces.push((neg, &s[start..i]));
                neg = b == b'-';
                start = i + 1;
            }
            i += 1;
        }
        pieces.push((neg, &s[start..]));

        let mut out = Self::zero();
        for (neg, piece) in pieces {
            if piece.is_empty() {
                return Err(PolyError::Parse(format!("empty term in `{s}`")));
            }
            let mut coeff = BigInt::one();
            let mut powers: Vec<(String, i64)> = Vec::new();
            for factor in piece.split('*') {
                if factor.is_empty() {
                    return Err(PolyError::Parse(format!("empty factor in `{piece}`")));
                }
                if factor.bytes().all(|b| b.is_ascii_digit()) {
                    coeff *= factor
                        .parse::<BigInt>()
                        .map_err(|e| PolyError::Parse(e.to_string()))?;
                    continue;
                }
                // Allow a coefficient glued to a variable, e.g. `2X`.
                let digits = factor.bytes().take_while(|b| b.is_ascii_digit()).count();
                if digits > 0 {
                    coeff *= factor[..digits]
                        .parse::<BigInt>()
                        .map_err(|e| PolyError::Parse(e.to_string()))?;
                }
                let rest = &factor[digits..];
                let (name, exp) = match rest.split_once('^') {
                    Some((n, e)) => (
                        n,
                        e.parse::<i64>()
                            .map_err(|_| PolyError::Parse(format!("bad exponent `{e}`")))?,
                    ),
                    None => (rest, 1),
                };
                let valid = name
                    .chars()
                    .next()
                    .is_some_and(|c| c.is_ascii_alphabetic())
                    && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
                if !valid {
                    return Err(PolyError::Parse(format!("bad variable `{name}`")));
                }
                powers.push((name.to_string(), exp));
            }
            if neg {
                coeff = -coeff;
            }
            let refs: Vec<(&str, i64)> = powers.iter().map(|(n, e)| (n.as_str(), *e)).collect();
            out += &Self::monomial(coeff, &refs);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let x = LaurentPolynomial::var("X");
        let one_x = &LaurentPolynomial::one() + &x;
        assert_eq!((&one_x * &one_x).to_string(), "1 + 2*X + X^2");

        let y = LaurentPolynomial::var("Y");
        let yy = &y + &y.pow(-1).unwrap();
        assert_eq!((&yy * &y).to_string(), "1 + Y^2");

        let a = LaurentPolynomial::var("A");
        let b = LaurentPolynomial::var("B");
        assert_eq!((&(&a + &b) + &(-&b)), a);
    }

    #[test]
    fn canonical_strings() {
        assert_eq!(LaurentPolynomial::zero().to_string(), "0");
        assert_eq!(p("Y + Y^-1").to_string(), "Y^-1 + Y");
        assert_eq!(p("B + 2 + A").to_string(), "2 + A + B");
        assert_eq!(p("Y + B + 2").to_string(), "2 + B + Y");
        assert_eq!(p("-3*A*B^2 + 1 - X").to_string(), "1 - X - 3*A*B^2");
        assert_eq!(p("-X").to_string(), "-X");
    }

    #[test]
    fn substitution_examples() {
        let torus = p("2 + A + B");
        let got = torus
            .subs(&[("A", p("Y")), ("B", p("Y^-1"))])
            .unwrap();
        assert_eq!(got.to_string(), "Y^-1 + 2 + Y");

        let got = p("1 + X").subs(&[("X", p("X - 1"))]).unwrap();
        assert_eq!(got, p("X"));

        let got = p("A^2").subs(&[("A", p("B*d*A^-1"))]).unwrap();
        assert_eq!(got, p("B^2*d^2*A^-2"));
    }

    #[test]
    fn simultaneous_substitution_swaps() {
        let got = p("X + 2*Y^3").subs(&[("X", p("Y")), ("Y", p("X"))]).unwrap();
        assert_eq!(got, p("Y + 2*X^3"));
    }

    #[test]
    fn non_laurent_substitution_rejected() {
        let err = p("X^-1 + 1").subs(&[("X", p("X - 1"))]).unwrap_err();
        assert!(matches!(err, PolyError::NonLaurentResult { .. }));
        // positive powers of a Laurent binding are fine
        assert_eq!(
            p("X^2").subs(&[("X", p("Y + Y^-1"))]).unwrap(),
            p("Y^2 + 2 + Y^-2")
        );
    }

    #[test]
    fn divide_exponents_halves() {
        assert_eq!(p("1 + Y^2*Z^2").divide_exponents("Z", 2).unwrap(), p("1 + Y^2*Z"));
        assert!(p("Z^3").divide_exponents("Z", 2).is_err());
    }

    #[test]
    fn coefficient_lookup() {
        let q = p("3*A*B^-1 + 7");
        assert_eq!(q.coefficient(&[("A", 1), ("B", -1)]), BigInt::from(3));
        assert_eq!(q.coefficient(&[]), BigInt::from(7));
        assert_eq!(q.coefficient(&[("Q", 1)]), BigInt::zero());
    }

    #[test]
    fn big_coefficients_do_not_overflow() {
        let q = p("1 + X");
        let big = q.pow(200).unwrap();
        let c = big.coefficient(&[("X", 100)]);
        assert!(c.bits() > 190);
    }

    #[test]
    fn parse_multichar_variables() {
        let q = p("q*v1*v12^-1 - 2*q^2");
        assert_eq!(q.to_string(), "q*v1*v12^-1 - 2*q^2");
    }
}
