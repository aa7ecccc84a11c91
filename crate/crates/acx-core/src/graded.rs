//! Truncated graded-commutative ring models and their elements.
//!
//! A [`RingModel`] presents the even part of `H^*(M; Z)/torsion`: finitely
//! many generators in positive even degrees, monomial relations (nilpotency
//! orders, monomials declared zero, top classes identified with the
//! fundamental monomial) and truncation above `top_degree`. A
//! [`GradedElement`] is a finitely supported map from reduced monomials to
//! coefficients. All degrees are even, so the product is plainly commutative
//! and no Koszul signs appear.

use crate::coeff::Coefficient;
use crate::rational::Rational;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Reserved generator name for the formal top class of a point-like model
/// (the model of a rational homology sphere, where nothing lives strictly
/// between degree 0 and the top).
pub const FORMAL_TOP: &str = "[M]";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("generator `{name}` has odd degree {degree}")]
    OddDegreeGenerator { name: String, degree: u32 },
    #[error("generator `{name}` must have positive degree")]
    ZeroDegreeGenerator { name: String },
    #[error("duplicate generator `{name}`")]
    DuplicateGenerator { name: String },
    #[error("invalid generator name `{name}` (alphanumeric and `_` only)")]
    InvalidGeneratorName { name: String },
    #[error("unknown generator `{name}`")]
    UnknownGenerator { name: String },
    #[error("inconsistent relations: {reason}")]
    InconsistentRelations { reason: String },
    #[error("top degree must be a positive even integer, got {top_degree}")]
    InvalidTopDegree { top_degree: u32 },
    #[error("elements belong to different rings")]
    RingMismatch,
    #[error("exponential of an element with a degree-zero term")]
    NonNilpotentInput,
}

/// One ring generator together with its nilpotency order, if declared
/// (`g^power_vanishes = 0`). Degrees above `top_degree` vanish regardless.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    pub power_vanishes: Option<u32>,
}

/// Generator description used in a [`RingSpec`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: u32,
    pub power_vanishes: Option<u32>,
}

impl GeneratorSpec {
    pub fn new(name: &str, degree: u32) -> Self {
        GeneratorSpec {
            name: name.to_owned(),
            degree,
            power_vanishes: None,
        }
    }

    pub fn nilpotent(name: &str, degree: u32, power_vanishes: u32) -> Self {
        GeneratorSpec {
            name: name.to_owned(),
            degree,
            power_vanishes: Some(power_vanishes),
        }
    }
}

/// A monomial written as generator names with multiplicities.
pub type MonomialSpec = Vec<(String, u32)>;

/// How a ring specification designates its fundamental monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FundamentalSpec {
    /// A point-like model: the fundamental class is a formal top class not
    /// generated by anything else (realised as the reserved generator
    /// [`FORMAL_TOP`]).
    FormalTop,
    Monomial(MonomialSpec),
}

/// User-facing description of a ring model, validated by [`RingModel::new`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingSpec {
    pub top_degree: u32,
    pub generators: Vec<GeneratorSpec>,
    pub zero_monomials: Vec<MonomialSpec>,
    /// Top-degree monomials identified with the fundamental monomial
    /// (connected-sum models identify the summands' top classes).
    pub identify_with_fundamental: Vec<MonomialSpec>,
    pub fundamental: FundamentalSpec,
}

impl RingSpec {
    pub fn new(
        top_degree: u32,
        generators: Vec<GeneratorSpec>,
        fundamental: FundamentalSpec,
    ) -> Self {
        RingSpec {
            top_degree,
            generators,
            zero_monomials: Vec::new(),
            identify_with_fundamental: Vec::new(),
            fundamental,
        }
    }
}

/// A monomial in the generators of a fixed ring, stored as an exponent
/// vector over the ring's (name-sorted) generators, with its degree cached.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Box<[u32]>,
    degree: u32,
}

impl Monomial {
    fn unit(n: usize) -> Self {
        Monomial {
            exps: vec![0; n].into_boxed_slice(),
            degree: 0,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_unit(&self) -> bool {
        self.degree == 0
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }
}

// Graded-lexicographic order: by degree, then alphabetically-first generator
// factors first. This fixes the canonical display order (`1 + a*u + b*v + 4*u*v`).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A validated truncated graded ring model. Immutable after construction;
/// share it behind an [`Arc`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingModel {
    generators: Vec<Generator>,
    zero_monomials: Vec<Monomial>,
    top_aliases: Vec<Monomial>,
    top_degree: u32,
    fundamental: Monomial,
}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl RingModel {
    /// Validates a specification.  Rejects odd or non-positive generator
    /// degrees, duplicate names, and any relation set that annihilates the
    /// fundamental monomial.
    pub fn new(spec: RingSpec) -> Result<Arc<RingModel>, RingError> {
        if spec.top_degree == 0 || !spec.top_degree.is_multiple_of(2) {
            return Err(RingError::InvalidTopDegree {
                top_degree: spec.top_degree,
            });
        }
        let mut generators: Vec<Generator> = Vec::new();
        for g in &spec.generators {
            if !valid_name(&g.name) {
                return Err(RingError::InvalidGeneratorName {
                    name: g.name.clone(),
                });
            }
            if g.degree == 0 {
                return Err(RingError::ZeroDegreeGenerator {
                    name: g.name.clone(),
                });
            }
            if g.degree % 2 != 0 {
                return Err(RingError::OddDegreeGenerator {
                    name: g.name.clone(),
                    degree: g.degree,
                });
            }
            generators.push(Generator {
                name: g.name.clone(),
                degree: g.degree,
                power_vanishes: g.power_vanishes,
            });
        }
        let fundamental_spec = match &spec.fundamental {
            FundamentalSpec::FormalTop => {
                generators.push(Generator {
                    name: FORMAL_TOP.to_owned(),
                    degree: spec.top_degree,
                    power_vanishes: Some(2),
                });
                vec![(FORMAL_TOP.to_owned(), 1)]
            }
            FundamentalSpec::Monomial(m) => m.clone(),
        };
        Self::from_parts(
            generators,
            spec.top_degree,
            &spec.zero_monomials,
            &spec.identify_with_fundamental,
            &fundamental_spec,
        )
    }

    /// Internal constructor shared with the connected-sum builder; performs
    /// the consistency checks but not the name-charset validation.
    pub(crate) fn from_parts(
        mut generators: Vec<Generator>,
        top_degree: u32,
        zero_monomials: &[MonomialSpec],
        aliases: &[MonomialSpec],
        fundamental: &MonomialSpec,
    ) -> Result<Arc<RingModel>, RingError> {
        generators.sort_by(|a, b| a.name.cmp(&b.name));
        for w in generators.windows(2) {
            if w[0].name == w[1].name {
                return Err(RingError::DuplicateGenerator {
                    name: w[0].name.clone(),
                });
            }
        }
        let mut model = RingModel {
            generators,
            zero_monomials: Vec::new(),
            top_aliases: Vec::new(),
            top_degree,
            fundamental: Monomial::unit(0),
        };
        let fundamental = model.monomial_from_spec(fundamental)?;
        if fundamental.degree != top_degree {
            return Err(RingError::InconsistentRelations {
                reason: format!(
                    "fundamental monomial has degree {}, expected top degree {}",
                    fundamental.degree, top_degree
                ),
            });
        }
        model.fundamental = fundamental;
        for spec in zero_monomials {
            let m = model.monomial_from_spec(spec)?;
            if m.is_unit() {
                return Err(RingError::InconsistentRelations {
                    reason: "the unit monomial cannot be declared zero".to_owned(),
                });
            }
            if m.degree <= top_degree {
                model.zero_monomials.push(m);
            }
        }
        for spec in aliases {
            let m = model.monomial_from_spec(spec)?;
            if m.degree != top_degree {
                return Err(RingError::InconsistentRelations {
                    reason: format!(
                        "monomial of degree {} cannot be identified with the fundamental class",
                        m.degree
                    ),
                });
            }
            if model.killed_by_relations(&m) {
                return Err(RingError::InconsistentRelations {
                    reason: "a monomial identified with the fundamental class is also zero"
                        .to_owned(),
                });
            }
            if m != model.fundamental && !model.top_aliases.contains(&m) {
                model.top_aliases.push(m);
            }
        }
        if model.killed_by_relations(&model.fundamental) {
            return Err(RingError::InconsistentRelations {
                reason: "the fundamental monomial is annihilated by the relations".to_owned(),
            });
        }
        Ok(Arc::new(model))
    }

    /// Point-like model of a rational homology sphere of dimension
    /// `top_degree`: nothing between degree 0 and the formal top class.
    pub fn point_like(top_degree: u32) -> Arc<RingModel> {
        RingModel::new(RingSpec::new(
            top_degree,
            Vec::new(),
            FundamentalSpec::FormalTop,
        ))
        .expect("point-like model is always consistent")
    }

    /// The model of a product of two rational homology spheres of dimensions
    /// `2p` and `2q`: generators `u`, `v` with `u^2 = v^2 = 0` and
    /// fundamental monomial `u*v` of integral 1.
    pub fn sphere_product(p: u32, q: u32) -> Arc<RingModel> {
        assert!(p >= 1 && q >= 1);
        let spec = RingSpec::new(
            2 * (p + q),
            vec![
                GeneratorSpec::nilpotent("u", 2 * p, 2),
                GeneratorSpec::nilpotent("v", 2 * q, 2),
            ],
            FundamentalSpec::Monomial(vec![("u".to_owned(), 1), ("v".to_owned(), 1)]),
        );
        RingModel::new(spec).expect("sphere product model is always consistent")
    }

    pub fn top_degree(&self) -> u32 {
        self.top_degree
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn fundamental(&self) -> &Monomial {
        &self.fundamental
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// Whether this is a point-like model: a single top-degree generator
    /// which is the fundamental class.
    pub fn is_point_like(&self) -> bool {
        self.generators.len() == 1
            && self.generators[0].degree == self.top_degree
            && self.fundamental.exps.as_ref() == [1]
    }

    pub fn unit_monomial(&self) -> Monomial {
        Monomial::unit(self.generators.len())
    }

    /// Builds an (unreduced) monomial from name/exponent pairs. Degrees
    /// saturate: anything past `u32::MAX` is far above the truncation
    /// degree and reduces to zero regardless.
    pub fn monomial(&self, pairs: &[(&str, u32)]) -> Result<Monomial, RingError> {
        let mut exps = vec![0u32; self.generators.len()];
        let mut degree = 0u32;
        for (name, e) in pairs {
            let idx = self
                .generator_index(name)
                .ok_or_else(|| RingError::UnknownGenerator {
                    name: (*name).to_owned(),
                })?;
            exps[idx] = exps[idx].saturating_add(*e);
            degree = degree.saturating_add(self.generators[idx].degree.saturating_mul(*e));
        }
        Ok(Monomial {
            exps: exps.into_boxed_slice(),
            degree,
        })
    }

    fn monomial_from_spec(&self, spec: &MonomialSpec) -> Result<Monomial, RingError> {
        let pairs: Vec<(&str, u32)> = spec.iter().map(|(n, e)| (n.as_str(), *e)).collect();
        self.monomial(&pairs)
    }

    fn killed_by_relations(&self, m: &Monomial) -> bool {
        if m.degree > self.top_degree {
            return true;
        }
        for (g, e) in self.generators.iter().zip(m.exps.iter()) {
            if let Some(p) = g.power_vanishes {
                if *e >= p {
                    return true;
                }
            }
        }
        self.zero_monomials.iter().any(|z| z.divides(m))
    }

    /// Canonical form of a monomial: `None` when the relations kill it,
    /// otherwise the representative with top aliases rewritten to the
    /// fundamental monomial.
    pub fn reduce(&self, m: Monomial) -> Option<Monomial> {
        if self.killed_by_relations(&m) {
            return None;
        }
        if self.top_aliases.contains(&m) {
            return Some(self.fundamental.clone());
        }
        Some(m)
    }

    fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Option<Monomial> {
        let exps: Vec<u32> = a
            .exps
            .iter()
            .zip(b.exps.iter())
            .map(|(x, y)| x.saturating_add(*y))
            .collect();
        self.reduce(Monomial {
            exps: exps.into_boxed_slice(),
            degree: a.degree.saturating_add(b.degree),
        })
    }

    pub(crate) fn zero_monomial_relations(&self) -> Vec<Monomial> {
        self.zero_monomials.clone()
    }

    pub(crate) fn top_alias_relations(&self) -> Vec<Monomial> {
        self.top_aliases.clone()
    }

    pub fn display_monomial(&self, m: &Monomial) -> String {
        if m.is_unit() {
            return "1".to_owned();
        }
        let mut parts = Vec::new();
        for (g, e) in self.generators.iter().zip(m.exps.iter()) {
            match e {
                0 => {}
                1 => parts.push(g.name.clone()),
                _ => parts.push(format!("{}^{}", g.name, e)),
            }
        }
        parts.join("*")
    }
}

/// An element of a [`RingModel`] with coefficients in `C`: a finitely
/// supported map from reduced monomials to nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedElement<C: Coefficient> {
    ring: Arc<RingModel>,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coefficient> GradedElement<C> {
    pub fn zero(ring: &Arc<RingModel>) -> Self {
        GradedElement {
            ring: Arc::clone(ring),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Arc<RingModel>) -> Self {
        Self::constant(ring, C::one())
    }

    pub fn constant(ring: &Arc<RingModel>, c: C) -> Self {
        let mut e = Self::zero(ring);
        e.insert(ring.unit_monomial(), c);
        e
    }

    pub fn from_rational(ring: &Arc<RingModel>, r: Rational) -> Self {
        Self::constant(ring, C::from_rational(r))
    }

    /// The element represented by a single generator.
    pub fn generator(ring: &Arc<RingModel>, name: &str) -> Result<Self, RingError> {
        let m = ring.monomial(&[(name, 1)])?;
        let mut e = Self::zero(ring);
        e.insert(m, C::one());
        Ok(e)
    }

    /// A single term `c * m`; the monomial is reduced on the way in.
    pub fn term(ring: &Arc<RingModel>, pairs: &[(&str, u32)], c: C) -> Result<Self, RingError> {
        let m = ring.monomial(pairs)?;
        let mut e = Self::zero(ring);
        e.insert(m, c);
        Ok(e)
    }

    pub fn from_terms(
        ring: &Arc<RingModel>,
        terms: impl IntoIterator<Item = (Monomial, C)>,
    ) -> Self {
        let mut e = Self::zero(ring);
        for (m, c) in terms {
            e.insert(m, c);
        }
        e
    }

    fn insert(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        let Some(m) = self.ring.reduce(m) else {
            return;
        };
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn ring(&self) -> &Arc<RingModel> {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// The part of the element in one cohomological degree.
    pub fn degree_part(&self, degree: u32) -> Self {
        GradedElement {
            ring: Arc::clone(&self.ring),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Whether every stored monomial has the given degree (true for zero).
    pub fn is_homogeneous(&self, degree: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == degree)
    }

    pub fn has_degree_zero_term(&self) -> bool {
        self.terms.keys().any(|m| m.is_unit())
    }

    fn check_ring(&self, other: &Self) -> Result<(), RingError> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(RingError::RingMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, RingError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, RingError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), c.neg());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        GradedElement {
            ring: Arc::clone(&self.ring),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, RingError> {
        self.check_ring(other)?;
        let mut out = Self::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some(m) = self.ring.mul_monomials(m1, m2) {
                    out.insert(m, c1.mul(c2));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_coeff(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        let mut out = Self::zero(&self.ring);
        for (m, c0) in &self.terms {
            out.insert(m.clone(), c0.mul(c));
        }
        out
    }

    pub fn mul_rational(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero(&self.ring);
        }
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            out.insert(m.clone(), c.mul_rational(r));
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..k {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Pairing with the fundamental class: the coefficient of the
    /// fundamental monomial (top aliases have already been rewritten to it).
    pub fn integrate(&self) -> C {
        self.coefficient(&self.ring.fundamental)
    }

    /// `exp(x) = sum x^k / k!` — a finite sum because `x` is nilpotent under
    /// truncation. Fails when `x` has a degree-zero term.
    pub fn exp(&self) -> Result<Self, RingError> {
        if self.has_degree_zero_term() {
            return Err(RingError::NonNilpotentInput);
        }
        let mut acc = Self::one(&self.ring);
        let mut term = Self::one(&self.ring);
        let mut k: i64 = 1;
        loop {
            term = term
                .mul(self)
                .expect("same ring")
                .mul_rational(&Rational::new(1, k));
            if term.is_zero() {
                return Ok(acc);
            }
            acc = acc.add(&term).expect("same ring");
            k += 1;
        }
    }

    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> GradedElement<D> {
        let mut out = GradedElement::zero(&self.ring);
        for (m, c) in &self.terms {
            out.insert(m.clone(), f(c));
        }
        out
    }
}

impl GradedElement<Rational> {
    /// Lifts a numeric element into the symbolic coefficient ring.
    pub fn to_symbolic(&self) -> GradedElement<crate::symbolic::Expr> {
        self.map_coefficients(|r| crate::symbolic::Expr::constant(r.clone()))
    }
}

impl<C: Coefficient> fmt::Display for GradedElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let text = if m.is_unit() {
                format!("{c}")
            } else if c == &C::one() {
                self.ring.display_monomial(m)
            } else if c.needs_parens() {
                format!("({c})*{}", self.ring.display_monomial(m))
            } else {
                format!("{c}*{}", self.ring.display_monomial(m))
            };
            if first {
                f.write_str(&text)?;
                first = false;
            } else if let Some(rest) = text.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {text}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Elem = GradedElement<Rational>;

    fn product_model(p: u32, q: u32) -> Arc<RingModel> {
        RingModel::sphere_product(p, q)
    }

    fn cp_ring(n: u32) -> Arc<RingModel> {
        RingModel::new(RingSpec::new(
            2 * n,
            vec![GeneratorSpec::new("h", 2)],
            FundamentalSpec::Monomial(vec![("h".to_owned(), n)]),
        ))
        .unwrap()
    }

    fn rat(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn make_ring_product_model() {
        let ring = product_model(1, 3);
        assert_eq!(ring.top_degree(), 8);
        assert_eq!(ring.generators().len(), 2);
        assert!(!ring.is_point_like());
        // u^2 = 0 even though deg u^2 = 4 <= 8.
        let u2 = ring.monomial(&[("u", 2)]).unwrap();
        assert_eq!(ring.reduce(u2), None);
    }

    #[test]
    fn make_ring_point_like() {
        let ring = RingModel::point_like(10);
        assert!(ring.is_point_like());
        assert_eq!(ring.fundamental().degree(), 10);
        let top = Elem::generator(&ring, FORMAL_TOP).unwrap();
        assert_eq!(top.integrate(), Rational::one());
        assert!(top.mul(&top).unwrap().is_zero());
    }

    #[test]
    fn make_ring_rejects_odd_degree() {
        let err = RingModel::new(RingSpec::new(
            6,
            vec![GeneratorSpec::new("u", 3)],
            FundamentalSpec::FormalTop,
        ))
        .unwrap_err();
        assert!(matches!(err, RingError::OddDegreeGenerator { .. }));
    }

    #[test]
    fn make_ring_rejects_killed_fundamental() {
        // Declaring the fundamental monomial zero is inconsistent.
        let mut spec = RingSpec::new(
            4,
            vec![GeneratorSpec::new("h", 2)],
            FundamentalSpec::Monomial(vec![("h".to_owned(), 2)]),
        );
        spec.zero_monomials.push(vec![("h".to_owned(), 2)]);
        let err = RingModel::new(spec).unwrap_err();
        assert!(matches!(err, RingError::InconsistentRelations { .. }));

        // Nilpotency order below the fundamental exponent kills it too.
        let spec = RingSpec::new(
            4,
            vec![GeneratorSpec::nilpotent("h", 2, 2)],
            FundamentalSpec::Monomial(vec![("h".to_owned(), 2)]),
        );
        assert!(RingModel::new(spec).is_err());
    }

    #[test]
    fn add_disjoint_supports() {
        let ring = product_model(1, 3);
        let x = Elem::one(&ring)
            .add(&Elem::term(&ring, &[("u", 1)], rat(5)).unwrap())
            .unwrap();
        let y = Elem::term(&ring, &[("v", 1)], rat(7)).unwrap();
        let sum = x.add(&y).unwrap();
        assert_eq!(sum.to_string(), "1 + 5*u + 7*v");
        // x + 0 = x
        assert_eq!(x.add(&Elem::zero(&ring)).unwrap(), x);
    }

    #[test]
    fn add_rejects_ring_mismatch() {
        let r1 = product_model(1, 3);
        let r2 = cp_ring(2);
        let e = Elem::one(&r1).add(&Elem::one(&r2));
        assert_eq!(e.unwrap_err(), RingError::RingMismatch);
    }

    #[test]
    fn mul_product_model() {
        // (1 + a*u)(1 + b*v) = 1 + a*u + b*v + ab*u*v
        let ring = product_model(1, 3);
        let x = Elem::one(&ring)
            .add(&Elem::term(&ring, &[("u", 1)], rat(3)).unwrap())
            .unwrap();
        let y = Elem::one(&ring)
            .add(&Elem::term(&ring, &[("v", 1)], rat(4)).unwrap())
            .unwrap();
        let prod = x.mul(&y).unwrap();
        assert_eq!(prod.to_string(), "1 + 3*u + 4*v + 12*u*v");
        // u*u = 0
        let u = Elem::generator(&ring, "u").unwrap();
        assert!(u.mul(&u).unwrap().is_zero());
        // x*1 = x
        assert_eq!(x.mul(&Elem::one(&ring)).unwrap(), x);
    }

    #[test]
    fn integrate_picks_fundamental_coefficient() {
        let ring = product_model(1, 3);
        let e = Elem::term(&ring, &[("u", 1), ("v", 1)], rat(4)).unwrap();
        assert_eq!(e.integrate(), rat(4));
        assert_eq!(Elem::one(&ring).integrate(), Rational::zero());
    }

    #[test]
    fn integrate_mixed_denominators() {
        // (ab/(2(q-1)!) + (4-ab)/q!)*u*v with ab = 4, q = 3 integrates to 1.
        let ring = product_model(1, 3);
        let c = &(Rational::new(4, 4)) + &Rational::new(0, 6);
        let e = Elem::term(&ring, &[("u", 1), ("v", 1)], c).unwrap();
        assert_eq!(e.integrate(), Rational::one());
    }

    #[test]
    fn exp_series() {
        let ring = product_model(1, 3);
        // exp(0) = 1
        assert_eq!(Elem::zero(&ring).exp().unwrap(), Elem::one(&ring));
        // exp(a*u/2) = 1 + a*u/2 since u^2 = 0
        let half_au = Elem::term(&ring, &[("u", 1)], Rational::new(7, 2)).unwrap();
        let e = half_au.exp().unwrap();
        assert_eq!(e.to_string(), "1 + 7/2*u");
        // degree-0 term rejected
        let bad = Elem::one(&ring);
        assert_eq!(bad.exp().unwrap_err(), RingError::NonNilpotentInput);
    }

    #[test]
    fn exp_truncated_expansion() {
        // exp(h) in the CP^2 model (h^3 = 0 by truncation): 1 + h + h^2/2.
        let ring = cp_ring(2);
        let h = Elem::generator(&ring, "h").unwrap();
        let e = h.exp().unwrap();
        assert_eq!(e.to_string(), "1 + h + 1/2*h^2");
    }

    #[test]
    fn top_alias_rewrites_to_fundamental() {
        // Two CP^2 summands: h2^2 is identified with h^2.
        let mut spec = RingSpec::new(
            4,
            vec![GeneratorSpec::new("h", 2), GeneratorSpec::new("h2", 2)],
            FundamentalSpec::Monomial(vec![("h".to_owned(), 2)]),
        );
        spec.zero_monomials
            .push(vec![("h".to_owned(), 1), ("h2".to_owned(), 1)]);
        spec.identify_with_fundamental
            .push(vec![("h2".to_owned(), 2)]);
        let ring = RingModel::new(spec).unwrap();
        let a = Elem::term(&ring, &[("h", 2)], rat(3)).unwrap();
        let b = Elem::term(&ring, &[("h2", 2)], rat(5)).unwrap();
        assert_eq!(a.add(&b).unwrap().integrate(), rat(8));
        // Cross product vanishes.
        let h = Elem::generator(&ring, "h").unwrap();
        let h2 = Elem::generator(&ring, "h2").unwrap();
        assert!(h.mul(&h2).unwrap().is_zero());
    }

    #[test]
    fn reduction_is_idempotent() {
        let ring = product_model(2, 2);
        let m = ring.monomial(&[("u", 1), ("v", 1)]).unwrap();
        let r1 = ring.reduce(m).unwrap();
        let r2 = ring.reduce(r1.clone()).unwrap();
        assert_eq!(r1, r2);
    }
}
