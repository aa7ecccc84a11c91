//! Polynomials in named integer unknowns with rational coefficients.
//!
//! Total Chern classes of products of rational homology spheres carry
//! undetermined integers (`1 + a*u + b*v + 4*u*v`); multiplying such classes
//! produces terms like `a*b`, so coefficients here are full polynomials even
//! though constructors only ever build affine ones.

use crate::coeff::Coefficient;
use crate::rational::Rational;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A product of unknowns, e.g. `a*b^2`. The empty product is the unit.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct UnknownMonomial(BTreeMap<String, u32>);

impl UnknownMonomial {
    pub fn unit() -> Self {
        Self::default()
    }

    pub fn var(name: &str) -> Self {
        let mut m = BTreeMap::new();
        m.insert(name.to_owned(), 1);
        UnknownMonomial(m)
    }

    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, u32)>) -> Self {
        let mut m = BTreeMap::new();
        for (name, e) in pairs {
            if e > 0 {
                *m.entry(name.to_owned()).or_insert(0) += e;
            }
        }
        UnknownMonomial(m)
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut m = self.0.clone();
        for (name, e) in &other.0 {
            *m.entry(name.clone()).or_insert(0) += e;
        }
        UnknownMonomial(m)
    }

    /// Exact division; `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Self) -> Option<Self> {
        let mut m = self.0.clone();
        for (name, e) in &other.0 {
            let have = m.get_mut(name)?;
            if *have < *e {
                return None;
            }
            *have -= e;
            if *have == 0 {
                m.remove(name);
            }
        }
        Some(UnknownMonomial(m))
    }

    /// The single variable of a degree-one monomial, if it is one.
    pub fn as_single_var(&self) -> Option<&str> {
        if self.0.len() == 1 {
            let (name, e) = self.0.iter().next().unwrap();
            (*e == 1).then_some(name.as_str())
        } else {
            None
        }
    }
}

impl fmt::Display for UnknownMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return f.write_str("1");
        }
        let mut first = true;
        for (name, e) in &self.0 {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A polynomial in integer unknowns over the rationals. No zero coefficients
/// are stored, so the zero polynomial has no terms.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Expr {
    terms: BTreeMap<UnknownMonomial, Rational>,
}

impl Expr {
    pub fn constant(r: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(UnknownMonomial::unit(), r);
        }
        Expr { terms }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::constant(Rational::from_integer(n))
    }

    pub fn unknown(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(UnknownMonomial::var(name), Rational::one());
        Expr { terms }
    }

    pub fn term(m: UnknownMonomial, r: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(m, r);
        }
        Expr { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&UnknownMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn unknowns(&self) -> BTreeSet<&str> {
        self.terms
            .keys()
            .flat_map(|m| m.0.keys().map(String::as_str))
            .collect()
    }

    fn insert(&mut self, m: UnknownMonomial, r: Rational) {
        if r.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(r);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &r;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `Some(k, x, c)` when the expression is exactly `k*x + c` for a single
    /// unknown `x` and `k != 0`; used to read off constraints like `2a = 0`.
    pub fn as_linear_single(&self) -> Option<(String, Rational, Rational)> {
        let (m, k, c) = self.as_monomial_affine()?;
        let x = m.as_single_var()?;
        Some((x.to_owned(), k, c))
    }

    /// `Some(m, k, c)` when the expression is `k*m + c` for a single
    /// non-constant monomial `m` with `k != 0`.
    pub fn as_monomial_affine(&self) -> Option<(UnknownMonomial, Rational, Rational)> {
        let mut constant = Rational::zero();
        let mut nonconst: Option<(UnknownMonomial, Rational)> = None;
        for (m, r) in &self.terms {
            if m.is_unit() {
                constant = r.clone();
            } else if nonconst.is_none() {
                nonconst = Some((m.clone(), r.clone()));
            } else {
                return None;
            }
        }
        let (m, k) = nonconst?;
        Some((m, k, constant))
    }

    /// Substitutes `value` for the unknown `name`.
    pub fn substitute(&self, name: &str, value: &Rational) -> Expr {
        let mut out = Expr::default();
        for (m, r) in &self.terms {
            match m.0.get(name) {
                None => out.insert(m.clone(), r.clone()),
                Some(e) => {
                    let mut reduced = m.clone();
                    reduced.0.remove(name);
                    out.insert(reduced, r * &value.pow(*e));
                }
            }
        }
        out
    }

    /// Substitutes `value` for every occurrence of the monomial `target`,
    /// dividing it out as many times as it appears in each term. This is how
    /// a derived relation such as `a*b = 4` is applied.
    pub fn substitute_monomial(&self, target: &UnknownMonomial, value: &Rational) -> Expr {
        assert!(!target.is_unit(), "cannot substitute the unit monomial");
        let mut out = Expr::default();
        for (m, r) in &self.terms {
            let mut m = m.clone();
            let mut r = r.clone();
            while let Some(q) = m.div(target) {
                m = q;
                r = &r * value;
            }
            out.insert(m, r);
        }
        out
    }

    pub fn evaluate(&self, bindings: &BTreeMap<String, Rational>) -> Result<Rational, String> {
        let mut acc = Rational::zero();
        for (m, r) in &self.terms {
            let mut v = r.clone();
            for (name, e) in &m.0 {
                let b = bindings
                    .get(name)
                    .ok_or_else(|| format!("unbound unknown `{name}`"))?;
                v = &v * &b.pow(*e);
            }
            acc += &v;
        }
        Ok(acc)
    }
}

impl Coefficient for Expr {
    fn zero() -> Self {
        Expr::default()
    }
    fn one() -> Self {
        Expr::constant(Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_rational(r: Rational) -> Self {
        Expr::constant(r)
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, r) in &other.terms {
            out.insert(m.clone(), r.clone());
        }
        out
    }
    fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, r) in &other.terms {
            out.insert(m.clone(), -r);
        }
        out
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = Expr::default();
        for (m1, r1) in &self.terms {
            for (m2, r2) in &other.terms {
                out.insert(m1.mul(m2), r1 * r2);
            }
        }
        out
    }
    fn neg(&self) -> Self {
        Expr {
            terms: self.terms.iter().map(|(m, r)| (m.clone(), -r)).collect(),
        }
    }
    fn mul_rational(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Expr::default();
        }
        Expr {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect(),
        }
    }
    fn as_rational(&self) -> Option<&Rational> {
        if self.terms.is_empty() {
            // Zero has no stored terms; expose a static zero.
            static ZERO: std::sync::OnceLock<Rational> = std::sync::OnceLock::new();
            return Some(ZERO.get_or_init(Rational::zero));
        }
        if self.terms.len() == 1 {
            let (m, r) = self.terms.iter().next().unwrap();
            if m.is_unit() {
                return Some(r);
            }
        }
        None
    }
    fn needs_parens(&self) -> bool {
        self.terms.len() > 1
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // Highest-degree terms first, constants last.
        let mut entries: Vec<_> = self.terms.iter().collect();
        entries.sort_by(|(m1, _), (m2, _)| m2.degree().cmp(&m1.degree()).then_with(|| m1.cmp(m2)));
        for (i, (m, r)) in entries.into_iter().enumerate() {
            let (sign, mag) = if r.is_negative() {
                ("-", r.abs())
            } else {
                ("+", r.clone())
            };
            if i == 0 {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if m.is_unit() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}
