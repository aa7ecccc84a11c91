//! Manifold descriptors at the level of invariants the decision rules
//! consume, plus the connected-sum and product constructors.

use crate::charclass::{CharClassError, ChernVector};
use crate::graded::{Generator, GradedElement, Monomial, MonomialSpec, RingError, RingModel};
use crate::rational::Rational;
use crate::symbolic::Expr;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::sync::Arc;
use thiserror::Error;

/// Declarative capability flags. These carry the torsion-sensitive facts the
/// ring model cannot see; beyond the closure rules below they are never
/// inferred.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, Hash)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Flag {
    Closed,
    Noncompact,
    AlmostComplex,
    StablyAcx,
    SpinC,
    /// (n-1)-connected of dimension 2n.
    HighlyConnected,
    /// Even rational cohomology vanishes strictly between degree 0 and the top.
    MiddleRationalTrivial,
    RationalHomologySphere,
    StablyParallelisable,
    IntegralHomologySphere,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ManifoldError {
    #[error("dimension {dim} must be a positive even integer")]
    OddDimension { dim: u32 },
    #[error("summand `{name}` has dimension {found}, expected {expected}")]
    DimensionMismatch {
        name: String,
        found: u32,
        expected: u32,
    },
    #[error("summand list is empty")]
    EmptyList,
    #[error("`{name}` is not flagged as a rational homology sphere")]
    NotRationalHomologySphere { name: String },
    #[error("signature must vanish unless the dimension is divisible by 4 (got {signature})")]
    SignatureMustVanish { signature: i64 },
    #[error("ring top degree {ring_top} does not match manifold dimension {dim}")]
    RingDimensionMismatch { ring_top: u32, dim: u32 },
    #[error(
        "a rational homology sphere of even dimension has euler characteristic 2, got {euler}"
    )]
    RhsEulerInvariant { euler: i64 },
    #[error("flag {flag:?} requires a point-like ring model")]
    FlagNeedsPointLikeRing { flag: Flag },
    #[error("flag {flag:?} requires signature 0, got {signature}")]
    FlagNeedsZeroSignature { flag: Flag, signature: i64 },
    #[error("tangent Chern data lives in a different ring than the manifold")]
    TangentRingMismatch,
    #[error("tangent Chern rank {rank} must be half the dimension {dim}")]
    TangentRankMismatch { rank: u32, dim: u32 },
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    CharClass(#[from] CharClassError),
}

/// Numerical/cohomological descriptor of a closed (or non-compact) manifold:
/// dimension, Euler characteristic, signature, the even part of its rational
/// cohomology, optional tangent Chern data and declarative flags.
#[derive(Debug, Clone, PartialEq)]
pub struct ManifoldData {
    pub name: String,
    pub dim: u32,
    pub euler: i64,
    pub signature: i64,
    pub ring: Arc<RingModel>,
    pub tangent_chern: Option<ChernVector<Rational>>,
    flags: BTreeSet<Flag>,
}

impl ManifoldData {
    pub fn new(
        name: impl Into<String>,
        dim: u32,
        euler: i64,
        signature: i64,
        ring: Arc<RingModel>,
        tangent_chern: Option<ChernVector<Rational>>,
        flags: impl IntoIterator<Item = Flag>,
    ) -> Result<Self, ManifoldError> {
        if dim == 0 || !dim.is_multiple_of(2) {
            return Err(ManifoldError::OddDimension { dim });
        }
        if !dim.is_multiple_of(4) && signature != 0 {
            return Err(ManifoldError::SignatureMustVanish { signature });
        }
        if ring.top_degree() != dim {
            return Err(ManifoldError::RingDimensionMismatch {
                ring_top: ring.top_degree(),
                dim,
            });
        }
        let mut flags: BTreeSet<Flag> = flags.into_iter().collect();
        // Closure of the declared implications:
        // almost complex => stably almost complex => spin^c,
        // integral homology sphere => stably parallelisable.
        if flags.contains(&Flag::AlmostComplex) {
            flags.insert(Flag::StablyAcx);
        }
        if flags.contains(&Flag::StablyAcx) {
            flags.insert(Flag::SpinC);
        }
        if flags.contains(&Flag::IntegralHomologySphere) {
            flags.insert(Flag::StablyParallelisable);
        }
        if flags.contains(&Flag::RationalHomologySphere) {
            if !ring.is_point_like() {
                return Err(ManifoldError::FlagNeedsPointLikeRing {
                    flag: Flag::RationalHomologySphere,
                });
            }
            if euler != 2 {
                return Err(ManifoldError::RhsEulerInvariant { euler });
            }
        }
        if flags.contains(&Flag::MiddleRationalTrivial) {
            if !ring.is_point_like() {
                return Err(ManifoldError::FlagNeedsPointLikeRing {
                    flag: Flag::MiddleRationalTrivial,
                });
            }
            if signature != 0 {
                return Err(ManifoldError::FlagNeedsZeroSignature {
                    flag: Flag::MiddleRationalTrivial,
                    signature,
                });
            }
        }
        if let Some(c) = &tangent_chern {
            if c.ring() != &ring {
                return Err(ManifoldError::TangentRingMismatch);
            }
            if c.rank() != dim / 2 {
                return Err(ManifoldError::TangentRankMismatch {
                    rank: c.rank(),
                    dim,
                });
            }
        }
        Ok(ManifoldData {
            name: name.into(),
            dim,
            euler,
            signature,
            ring,
            tangent_chern,
            flags,
        })
    }

    pub fn has(&self, flag: Flag) -> bool {
        self.flags.contains(&flag)
    }

    pub fn flags(&self) -> impl Iterator<Item = Flag> + '_ {
        self.flags.iter().copied()
    }

    /// Integral of the top Chern class of the declared stable structure,
    /// when known: from the stored classes if present, else the Euler
    /// characteristic for a genuine almost complex structure.
    pub fn top_chern_integral(&self) -> Option<Rational> {
        if let Some(c) = &self.tangent_chern {
            return Some(c.class(self.dim / 2).integrate());
        }
        if self.has(Flag::AlmostComplex) {
            return Some(Rational::from_integer(self.euler));
        }
        None
    }
}

/// A nonempty list of summands of equal dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct SummandList(Vec<ManifoldData>);

impl SummandList {
    pub fn new(items: Vec<ManifoldData>) -> Result<Self, ManifoldError> {
        let first = items.first().ok_or(ManifoldError::EmptyList)?;
        let dim = first.dim;
        for m in &items {
            if m.dim != dim {
                return Err(ManifoldError::DimensionMismatch {
                    name: m.name.clone(),
                    found: m.dim,
                    expected: dim,
                });
            }
        }
        Ok(SummandList(items))
    }

    pub fn dim(&self) -> u32 {
        self.0[0].dim
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    // Nonempty by construction.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn items(&self) -> &[ManifoldData] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = &ManifoldData> {
        self.0.iter()
    }

    pub fn all_have(&self, flag: Flag) -> bool {
        self.0.iter().all(|m| m.has(flag))
    }
}

/// Where each generator of a summand ring lands in the connected-sum ring.
enum GenTarget {
    Generator(String),
    /// The summand's formal top class maps to the sum's fundamental monomial.
    FundamentalClass,
}

struct Injection {
    targets: Vec<GenTarget>,
}

/// Image of a summand monomial in the connected-sum ring.
enum InjectedMonomial {
    Spec(MonomialSpec),
    /// The summand's top class lands on the sum's fundamental monomial.
    Fundamental,
}

impl Injection {
    fn inject_monomial(&self, source: &Arc<RingModel>, m: &Monomial) -> InjectedMonomial {
        let mut spec: MonomialSpec = Vec::new();
        for (idx, e) in m.exponents().iter().enumerate() {
            if *e == 0 {
                continue;
            }
            match &self.targets[idx] {
                GenTarget::Generator(name) => spec.push((name.clone(), *e)),
                GenTarget::FundamentalClass => {
                    // A top-degree generator can only occur alone, to the
                    // first power, in a reduced monomial.
                    debug_assert_eq!(*e, 1);
                    debug_assert_eq!(m.degree(), source.top_degree());
                    return InjectedMonomial::Fundamental;
                }
            }
        }
        InjectedMonomial::Spec(spec)
    }

    /// Like `inject_monomial`, for relation monomials that never involve a
    /// summand's formal top class.
    fn monomial_spec(&self, source: &Arc<RingModel>, m: &Monomial) -> MonomialSpec {
        match self.inject_monomial(source, m) {
            InjectedMonomial::Spec(spec) => spec,
            InjectedMonomial::Fundamental => {
                unreachable!("relation monomials do not touch a formal top class")
            }
        }
    }
}

fn inject_element(
    inj: &Injection,
    target_ring: &Arc<RingModel>,
    elem: &GradedElement<Rational>,
) -> Result<GradedElement<Rational>, RingError> {
    let mut out = GradedElement::zero(target_ring);
    for (m, c) in elem.terms() {
        let mono = match inj.inject_monomial(elem.ring(), m) {
            InjectedMonomial::Fundamental => target_ring.fundamental().clone(),
            InjectedMonomial::Spec(spec) => {
                let pairs: Vec<(&str, u32)> = spec.iter().map(|(n, e)| (n.as_str(), *e)).collect();
                target_ring.monomial(&pairs)?
            }
        };
        out = out.add(&GradedElement::from_terms(target_ring, [(mono, c.clone())]))?;
    }
    Ok(out)
}

/// Builds the connected-sum ring: summand rings juxtaposed with fresh names
/// where needed, cross products between different summands declared zero,
/// and all summand top classes identified with one fundamental monomial.
/// Point-like summands contribute no generators of their own.
fn sum_ring(
    summands: &[ManifoldData],
    dim: u32,
) -> Result<(Arc<RingModel>, Vec<Injection>), ManifoldError> {
    let point_like: Vec<bool> = summands.iter().map(|m| m.ring.is_point_like()).collect();
    let mut taken: BTreeSet<String> = BTreeSet::new();
    let mut generators: Vec<Generator> = Vec::new();
    let mut per_summand_names: Vec<Vec<GenTarget>> = Vec::new();
    let mut membership: Vec<(String, usize)> = Vec::new(); // generator name -> summand index

    for (s, m) in summands.iter().enumerate() {
        let mut targets = Vec::new();
        if point_like[s] {
            targets.push(GenTarget::FundamentalClass);
        } else {
            for g in m.ring.generators() {
                let mut name = g.name.clone();
                let mut k = 2;
                while taken.contains(&name) {
                    name = format!("{}#{k}", g.name);
                    k += 1;
                }
                taken.insert(name.clone());
                membership.push((name.clone(), s));
                generators.push(Generator {
                    name: name.clone(),
                    degree: g.degree,
                    power_vanishes: g.power_vanishes,
                });
                targets.push(GenTarget::Generator(name));
            }
        }
        per_summand_names.push(targets);
    }

    let injections: Vec<Injection> = per_summand_names
        .into_iter()
        .map(|targets| Injection { targets })
        .collect();

    // Everything below degree 0 < d < top multiplies to zero across summands,
    // and so do the tops of different summands (the cross product collapses
    // through the wedge of the summands).
    let mut zero_monomials: Vec<MonomialSpec> = Vec::new();
    for (i, (name_i, s_i)) in membership.iter().enumerate() {
        for (name_j, s_j) in membership.iter().skip(i + 1) {
            if s_i != s_j {
                zero_monomials.push(vec![(name_i.clone(), 1), (name_j.clone(), 1)]);
            }
        }
    }

    // Carry over each summand's own relations under the renaming.
    let mut aliases: Vec<MonomialSpec> = Vec::new();
    let mut fundamental: Option<MonomialSpec> = None;
    for (s, m) in summands.iter().enumerate() {
        if point_like[s] {
            continue;
        }
        let inj = &injections[s];
        for z in m.ring.zero_monomial_relations() {
            zero_monomials.push(inj.monomial_spec(&m.ring, &z));
        }
        let fund_spec = inj.monomial_spec(&m.ring, m.ring.fundamental());
        for alias in m.ring.top_alias_relations() {
            aliases.push(inj.monomial_spec(&m.ring, &alias));
        }
        if fundamental.is_none() {
            fundamental = Some(fund_spec);
        } else {
            aliases.push(fund_spec);
        }
    }

    let ring = match fundamental {
        None => RingModel::point_like(dim),
        Some(fund) => RingModel::from_parts(generators, dim, &zero_monomials, &aliases, &fund)?,
    };
    Ok((ring, injections))
}

/// Connected sum of the summand list.
///
/// For a single summand this is the summand itself. Otherwise, in even
/// dimension `d`: `chi = sum chi_i - 2(l-1)`, `sigma = sum sigma_i`, the
/// ring is the juxtaposition with identified top classes, and when every
/// summand carries a stable almost complex structure the stable Chern
/// classes add degreewise.
pub fn connected_sum(summands: &SummandList) -> Result<ManifoldData, ManifoldError> {
    let items = summands.items();
    if items.len() == 1 {
        return Ok(items[0].clone());
    }
    let dim = summands.dim();
    let l = items.len() as i64;
    let euler: i64 = items.iter().map(|m| m.euler).sum::<i64>() - 2 * (l - 1);
    let signature: i64 = items.iter().map(|m| m.signature).sum();

    let (ring, injections) = sum_ring(items, dim)?;

    let mut flags = BTreeSet::new();
    if items.iter().any(|m| m.has(Flag::Noncompact)) {
        flags.insert(Flag::Noncompact);
    } else if items.iter().all(|m| m.has(Flag::Closed)) {
        flags.insert(Flag::Closed);
    }
    for flag in [
        Flag::StablyAcx,
        Flag::HighlyConnected,
        Flag::MiddleRationalTrivial,
        Flag::StablyParallelisable,
    ] {
        if summands.all_have(flag) {
            flags.insert(flag);
        }
    }

    let tangent_chern =
        if summands.all_have(Flag::StablyAcx) && items.iter().all(|m| m.tangent_chern.is_some()) {
            let mut classes = vec![GradedElement::zero(&ring); (dim / 2) as usize];
            for (m, inj) in items.iter().zip(&injections) {
                let cv = m.tangent_chern.as_ref().unwrap();
                for (j, class) in classes.iter_mut().enumerate() {
                    let cj = cv.class(j as u32 + 1);
                    if !cj.is_zero() {
                        *class = class.add(&inject_element(inj, &ring, &cj)?)?;
                    }
                }
            }
            Some(ChernVector::new(dim / 2, &ring, classes)?)
        } else {
            None
        };

    let name = items
        .iter()
        .map(|m| m.name.as_str())
        .collect::<Vec<_>>()
        .join(" # ");
    ManifoldData::new(name, dim, euler, signature, ring, tangent_chern, flags)
}

/// Product of two rational homology spheres of dimensions `2p` and `2q`:
/// dimension `2(p+q)`, `chi = 4`, `sigma = 0`, cohomology `u, v` with
/// `u^2 = v^2 = 0` and `integral(u*v) = 1`; spin^c exactly when both factors
/// are.
pub fn product_of_rhs(m: &ManifoldData, n: &ManifoldData) -> Result<ManifoldData, ManifoldError> {
    for x in [m, n] {
        if !x.has(Flag::RationalHomologySphere) {
            return Err(ManifoldError::NotRationalHomologySphere {
                name: x.name.clone(),
            });
        }
        if x.dim % 2 != 0 {
            return Err(ManifoldError::OddDimension { dim: x.dim });
        }
    }
    let (p, q) = (m.dim / 2, n.dim / 2);
    let ring = RingModel::sphere_product(p, q);
    let mut flags = BTreeSet::from([Flag::Closed]);
    if m.has(Flag::SpinC) && n.has(Flag::SpinC) {
        flags.insert(Flag::SpinC);
    }
    ManifoldData::new(
        format!("{} x {}", m.name, n.name),
        m.dim + n.dim,
        4,
        0,
        ring,
        None,
        flags,
    )
}

/// The symbolic total Chern class of an almost complex structure on a
/// product of rational homology spheres of dimensions `2p`, `2q`:
/// `1 + a*u + b*v + 4*u*v` with integer unknowns `a`, `b`. The top
/// coefficient is pinned to 4 because the top Chern class integrates to the
/// Euler characteristic, which is 4.
pub fn symbolic_product_chern(p: u32, q: u32) -> ChernVector<Expr> {
    assert!(p >= 1 && q >= 1, "sphere half-dimensions must be positive");
    let ring = RingModel::sphere_product(p, q);
    let n = p + q;
    let mut classes = vec![GradedElement::<Expr>::zero(&ring); n as usize];
    let a_u = GradedElement::term(&ring, &[("u", 1)], Expr::unknown("a")).unwrap();
    classes[p as usize - 1] = classes[p as usize - 1].add(&a_u).expect("same ring");
    let b_v = GradedElement::term(&ring, &[("v", 1)], Expr::unknown("b")).unwrap();
    classes[q as usize - 1] = classes[q as usize - 1].add(&b_v).expect("same ring");
    let top = GradedElement::term(&ring, &[("u", 1), ("v", 1)], Expr::from_integer(4)).unwrap();
    classes[n as usize - 1] = top;
    ChernVector::new(n, &ring, classes).expect("classes are homogeneous by construction")
}
