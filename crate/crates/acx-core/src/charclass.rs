//! Chern/Pontryagin class calculus: conjugation, Newton power sums, the
//! Chern character and the twisted spin^c Dirac index integrand.

use crate::coeff::Coefficient;
use crate::genus::{evaluate_genus, GenusId};
use crate::graded::{GradedElement, RingModel};
use crate::rational::Rational;
use num_bigint::BigInt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharClassError {
    #[error("class c_{j} is not homogeneous of degree {expected}")]
    ImpureClass { j: u32, expected: u32 },
    #[error("classes live in a different ring than the vector")]
    RingMismatch,
    #[error("total class must have constant term 1")]
    NotUnital,
}

/// The Chern classes `c_1 .. c_n` of a (stable) complex bundle, modulo
/// torsion. For tangent bundles the rank is half the real dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernVector<C: Coefficient> {
    rank: u32,
    ring: Arc<RingModel>,
    classes: Vec<GradedElement<C>>,
}

impl<C: Coefficient> ChernVector<C> {
    /// `classes[i]` is `c_{i+1}` and must be homogeneous of degree `2(i+1)`.
    /// Classes beyond the stored list are zero (torsion classes are simply
    /// dropped).
    pub fn new(
        rank: u32,
        ring: &Arc<RingModel>,
        classes: Vec<GradedElement<C>>,
    ) -> Result<Self, CharClassError> {
        for (i, c) in classes.iter().enumerate() {
            if c.ring() != ring {
                return Err(CharClassError::RingMismatch);
            }
            let expected = 2 * (i as u32 + 1);
            if !c.is_homogeneous(expected) {
                return Err(CharClassError::ImpureClass {
                    j: i as u32 + 1,
                    expected,
                });
            }
        }
        let mut classes = classes;
        while classes.last().is_some_and(GradedElement::is_zero) {
            classes.pop();
        }
        Ok(ChernVector {
            rank,
            ring: Arc::clone(ring),
            classes,
        })
    }

    /// The trivial bundle of the given rank: all classes vanish.
    pub fn trivial(rank: u32, ring: &Arc<RingModel>) -> Self {
        ChernVector {
            rank,
            ring: Arc::clone(ring),
            classes: Vec::new(),
        }
    }

    /// Splits a total class `1 + c_1 + c_2 + ...` into a vector.
    pub fn from_total(rank: u32, total: GradedElement<C>) -> Result<Self, CharClassError> {
        if total.degree_part(0) != GradedElement::one(total.ring()) {
            return Err(CharClassError::NotUnital);
        }
        let ring = Arc::clone(total.ring());
        let classes = (1..=ring.top_degree() / 2)
            .map(|j| total.degree_part(2 * j))
            .collect();
        ChernVector::new(rank, &ring, classes)
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn ring(&self) -> &Arc<RingModel> {
        &self.ring
    }

    /// `c_j`, 1-indexed; zero beyond the stored list.
    pub fn class(&self, j: u32) -> GradedElement<C> {
        if j == 0 {
            return GradedElement::one(&self.ring);
        }
        self.classes
            .get(j as usize - 1)
            .cloned()
            .unwrap_or_else(|| GradedElement::zero(&self.ring))
    }

    pub fn classes(&self) -> &[GradedElement<C>] {
        &self.classes
    }

    /// The total class `1 + c_1 + c_2 + ...`.
    pub fn total(&self) -> GradedElement<C> {
        let mut acc = GradedElement::one(&self.ring);
        for c in &self.classes {
            acc = acc.add(c).expect("same ring");
        }
        acc
    }

    /// Conjugate bundle: `c_j` picks up the sign `(-1)^j`.
    pub fn conjugate(&self) -> Self {
        let classes = self
            .classes
            .iter()
            .enumerate()
            .map(|(i, c)| if (i + 1) % 2 == 1 { c.neg() } else { c.clone() })
            .collect();
        ChernVector {
            rank: self.rank,
            ring: Arc::clone(&self.ring),
            classes,
        }
    }

    /// Whitney sum via the Cartan formula: total classes multiply, ranks add.
    pub fn whitney_sum(&self, other: &Self) -> Result<Self, CharClassError> {
        if self.ring != other.ring {
            return Err(CharClassError::RingMismatch);
        }
        let total = self
            .total()
            .mul(&other.total())
            .map_err(|_| CharClassError::RingMismatch)?;
        ChernVector::from_total(self.rank + other.rank, total)
    }

    /// Pontryagin classes of the underlying real bundle, extracted from
    /// `c(E) * c(conj E) = 1 - p_1 + p_2 - ...`: the degree-4i part carries
    /// the sign `(-1)^i`. When `c_1 .. c_{2m-1}` vanish this reduces to
    /// `p_m = 2 (-1)^m c_{2m}`.
    pub fn pontryagin(&self) -> PontryaginVector<C> {
        let cc = self
            .total()
            .mul(&self.conjugate().total())
            .expect("same ring");
        let classes = (1..=self.ring.top_degree() / 4)
            .map(|i| {
                let part = cc.degree_part(4 * i);
                if i % 2 == 1 {
                    part.neg()
                } else {
                    part
                }
            })
            .collect();
        PontryaginVector {
            ring: Arc::clone(&self.ring),
            classes,
        }
    }

    /// Newton power sums `s_1 .. s_n` of the Chern roots, from the recursion
    /// `s_k - c_1 s_{k-1} + c_2 s_{k-2} - ... + (-1)^k k c_k = 0`.
    pub fn power_sums(&self, n: u32) -> Vec<GradedElement<C>> {
        let mut sums: Vec<GradedElement<C>> = Vec::with_capacity(n as usize);
        for k in 1..=n {
            let mut s = GradedElement::zero(&self.ring);
            for i in 1..k {
                let term = self
                    .class(i)
                    .mul(&sums[(k - i) as usize - 1])
                    .expect("same ring");
                s = if i % 2 == 1 {
                    s.add(&term).expect("same ring")
                } else {
                    s.sub(&term).expect("same ring")
                };
            }
            let lead = self
                .class(k)
                .mul_rational(&Rational::from_bigint(BigInt::from(k)));
            s = if k % 2 == 1 {
                s.add(&lead).expect("same ring")
            } else {
                s.sub(&lead).expect("same ring")
            };
            sums.push(s);
        }
        sums
    }

    /// Chern character `rank + sum_k s_k / k!`, truncated at the ring's top
    /// degree.
    pub fn chern_character(&self) -> GradedElement<C> {
        let n = self.ring.top_degree() / 2;
        let mut acc =
            GradedElement::from_rational(&self.ring, Rational::from_integer(i64::from(self.rank)));
        let mut k_factorial = Rational::one();
        for (k, s) in self.power_sums(n).iter().enumerate() {
            k_factorial = &k_factorial * &Rational::from_integer(k as i64 + 1);
            let inv = k_factorial.recip().expect("factorial nonzero");
            acc = acc.add(&s.mul_rational(&inv)).expect("same ring");
        }
        acc
    }
}

/// Pontryagin classes `p_1 .. p_m`, with `p_i` of degree `4i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PontryaginVector<C: Coefficient> {
    ring: Arc<RingModel>,
    classes: Vec<GradedElement<C>>,
}

impl<C: Coefficient> PontryaginVector<C> {
    pub fn new(
        ring: &Arc<RingModel>,
        classes: Vec<GradedElement<C>>,
    ) -> Result<Self, CharClassError> {
        for (i, p) in classes.iter().enumerate() {
            if p.ring() != ring {
                return Err(CharClassError::RingMismatch);
            }
            let expected = 4 * (i as u32 + 1);
            if !p.is_homogeneous(expected) {
                return Err(CharClassError::ImpureClass {
                    j: i as u32 + 1,
                    expected,
                });
            }
        }
        Ok(PontryaginVector {
            ring: Arc::clone(ring),
            classes,
        })
    }

    /// All Pontryagin classes torsion (the rational-homology-sphere case).
    pub fn zero(ring: &Arc<RingModel>) -> Self {
        PontryaginVector {
            ring: Arc::clone(ring),
            classes: Vec::new(),
        }
    }

    pub fn ring(&self) -> &Arc<RingModel> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.classes.iter().all(GradedElement::is_zero)
    }

    /// `p_i`, 1-indexed; zero beyond the stored list.
    pub fn class(&self, i: u32) -> GradedElement<C> {
        if i == 0 {
            return GradedElement::one(&self.ring);
        }
        self.classes
            .get(i as usize - 1)
            .cloned()
            .unwrap_or_else(|| GradedElement::zero(&self.ring))
    }

    pub fn classes(&self) -> &[GradedElement<C>] {
        &self.classes
    }

    pub fn total(&self) -> GradedElement<C> {
        let mut acc = GradedElement::one(&self.ring);
        for p in &self.classes {
            acc = acc.add(p).expect("same ring");
        }
        acc
    }

    /// Whitney sum: total Pontryagin classes multiply (modulo torsion).
    pub fn whitney_sum(&self, other: &Self) -> Result<Self, CharClassError> {
        if self.ring != other.ring {
            return Err(CharClassError::RingMismatch);
        }
        let total = self
            .total()
            .mul(&other.total())
            .map_err(|_| CharClassError::RingMismatch)?;
        let classes = (1..=self.ring.top_degree() / 4)
            .map(|i| total.degree_part(4 * i))
            .collect();
        PontryaginVector::new(&self.ring, classes)
    }
}

/// Index of the spin^c Dirac operator twisted by the bundle with Chern data
/// `c`, on the manifold with Pontryagin data `p`:
///
/// `integrate( exp(c_1/2) * ch(c) * A-hat(p) )`.
///
/// On a closed spin^c manifold this is an integer; a non-integral value is
/// an obstruction. Panics if `c` and `p` live in different rings.
pub fn spinc_dirac_index<C: Coefficient>(c: &ChernVector<C>, p: &PontryaginVector<C>) -> C {
    assert_eq!(
        c.ring(),
        p.ring(),
        "Chern and Pontryagin data must share a ring"
    );
    let half_c1 = c.class(1).mul_rational(&Rational::new(1, 2));
    let exp = half_c1.exp().expect("c_1 is homogeneous of degree 2");
    let ahat = evaluate_genus(GenusId::AHat, p);
    exp.mul(&c.chern_character())
        .expect("same ring")
        .mul(&ahat)
        .expect("same ring")
        .integrate()
}
