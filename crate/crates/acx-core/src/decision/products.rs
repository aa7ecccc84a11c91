//! Verdicts for products of two rational homology spheres, and the sphere
//! specialisation.
//!
//! The constraint derivation is executed symbolically, never hard-coded:
//! expand `c(T) * c(conj T)` with integer unknowns `a`, `b`, equate the
//! result to 1, and read off the parity-dependent constraints. The index
//! computation then runs on the constrained symbolic classes.

use super::{DecisionError, RuleFiring, Status, Verdict, Witness};
use crate::charclass::{spinc_dirac_index, ChernVector, PontryaginVector};
use crate::coeff::Coefficient;
use crate::manifold::symbolic_product_chern;
use crate::rational::Rational;
use crate::symbolic::{Expr, UnknownMonomial};
use serde::{Deserialize, Serialize};

const ANCHOR_P1: &str = "the Pontryagin classes of a product of rational homology spheres are \
     torsion, so modulo torsion c(T) c(conj T) = 1; comparing coefficients constrains the \
     undetermined Chern numbers";
const ANCHOR_P2: &str = "Atiyah-Singer: the index of the spin^c Dirac operator twisted by the \
     tangent bundle, integral of exp(c1/2) ch(T) A-hat(T), is an integer on a closed spin^c \
     manifold";
const ANCHOR_P3_S2S2: &str = "S^2 x S^2 and more generally products of 2-dimensional rational \
     homology spheres are complex surfaces";
const ANCHOR_P3_6DIM: &str = "an orientable 4-manifold is spin^c, and a spin^c 6-manifold is \
     almost complex (its W3 vanishes)";
const ANCHOR_P3_Q3: &str = "an almost complex manifold is spin^c and spin^c-ness passes to \
     factors, so the 6-dimensional factor must be spin^c; conversely a spin^c 6-dimensional \
     rational homology sphere makes the product a spin^c 6+2-manifold that is almost complex";
const ANCHOR_P4: &str = "open problem: for both factors of odd half-dimension greater than 1 \
     the twisted index vanishes and no known obstruction or construction decides existence";
const ANCHOR_S0: &str = "Kervaire-Milnor: spheres (with any smooth structure) have stably \
     trivial tangent bundles; they are integral homology spheres and spin";
const ANCHOR_S1: &str = "Datta-Subramanian: among products of two even-dimensional spheres \
     exactly S^2 x S^2, S^2 x S^4, S^2 x S^6 and S^6 x S^6 admit almost complex structures";
const ANCHOR_ODD: &str = "a product of two odd-dimensional (integral homology) spheres is \
     parallelisable and carries complex structures of Hopf or Calabi-Eckmann type";

/// Spin^c knowledge about one factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TriState {
    True,
    False,
    Unknown,
}

impl From<Option<bool>> for TriState {
    fn from(v: Option<bool>) -> Self {
        match v {
            Some(true) => TriState::True,
            Some(false) => TriState::False,
            None => TriState::Unknown,
        }
    }
}

/// One rational homology sphere factor: half its dimension, and whether it
/// is spin^c. A 2-dimensional factor is S^2 and a 4-dimensional factor is an
/// orientable 4-manifold; both are forced spin^c.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RhsFactor {
    pub half_dim: u32,
    pub spin_c: TriState,
}

impl RhsFactor {
    pub fn new(half_dim: u32, spin_c: TriState) -> Self {
        let spin_c = if half_dim <= 2 {
            TriState::True
        } else {
            spin_c
        };
        RhsFactor { half_dim, spin_c }
    }
}

/// Outcome of expanding `c(T) c(conj T) = 1` over unknowns `a`, `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductConstraints {
    /// Raw nonconstant coefficients of `c(T) c(conj T) - 1`, by monomial.
    pub coefficients: Vec<(String, Expr)>,
    /// Forced unknown values, e.g. `a = 0` when `p` is even.
    pub bindings: Vec<(String, Rational)>,
    /// Derived monomial relations, e.g. `a*b = 4` for odd `p`, `q`.
    pub relations: Vec<(UnknownMonomial, Rational)>,
    /// A nonzero constant coefficient that survives all substitutions; its
    /// monomial and value (the famous 8 on `u*v` in the even/even case).
    pub contradiction: Option<(String, Rational)>,
}

/// Expands the symbolic total class against its conjugate and solves the
/// resulting coefficient constraints as far as the shapes that actually
/// arise (forced zeros, single-monomial relations, constant contradictions).
pub fn product_constraints(p: u32, q: u32) -> ProductConstraints {
    let chern = symbolic_product_chern(p, q);
    let defect = chern
        .total()
        .mul(&chern.conjugate().total())
        .expect("same ring")
        .sub(&crate::graded::GradedElement::one(chern.ring()))
        .expect("same ring");
    let ring = chern.ring().clone();
    let coefficients: Vec<(String, Expr)> = defect
        .terms()
        .map(|(m, c)| (ring.display_monomial(m), c.clone()))
        .collect();

    let mut bindings: Vec<(String, Rational)> = Vec::new();
    let mut relations: Vec<(UnknownMonomial, Rational)> = Vec::new();
    let mut contradiction: Option<(String, Rational)> = None;
    let mut pending: Vec<(String, Expr)> = coefficients.clone();
    loop {
        let mut progressed = false;
        let mut next: Vec<(String, Expr)> = Vec::new();
        for (mono, expr) in pending {
            let mut e = expr;
            for (name, value) in &bindings {
                e = e.substitute(name, value);
            }
            for (m, value) in &relations {
                e = e.substitute_monomial(m, value);
            }
            if e.is_zero() {
                continue;
            }
            if let Some(c) = e.as_rational() {
                if contradiction.is_none() {
                    contradiction = Some((mono.clone(), c.clone()));
                }
                continue;
            }
            if let Some((x, k, c)) = e.as_linear_single() {
                bindings.push((x, &(-&c) / &k));
                progressed = true;
                continue;
            }
            if let Some((m, k, c)) = e.as_monomial_affine() {
                relations.push((m, &(-&c) / &k));
                progressed = true;
                continue;
            }
            next.push((mono, e));
        }
        if !progressed {
            break;
        }
        pending = next;
    }

    ProductConstraints {
        coefficients,
        bindings,
        relations,
        contradiction,
    }
}

/// Largest accepted half-dimension; the Newton recursion is quadratic in
/// `p + q`, so this keeps a single query well under a second.
pub const MAX_HALF_DIM: u32 = 256;

/// Classification for a product of two rational homology spheres of
/// dimensions `2p` and `2q` (the factors may be given in either order).
pub fn classify_product_rhs(m: RhsFactor, n: RhsFactor) -> Result<Verdict, DecisionError> {
    if m.half_dim == 0 || n.half_dim == 0 || m.half_dim > MAX_HALF_DIM || n.half_dim > MAX_HALF_DIM
    {
        return Err(DecisionError::InvalidDimensions {
            p: m.half_dim,
            q: n.half_dim,
        });
    }
    let (small, large) = if m.half_dim <= n.half_dim {
        (m, n)
    } else {
        (n, m)
    };
    let (p, q) = (small.half_dim, large.half_dim);
    let mut trace: Vec<RuleFiring> = Vec::new();

    // P1: the symbolic expansion of c(T) c(conj T) = 1.
    let constraints = product_constraints(p, q);
    for (name, value) in &constraints.bindings {
        trace.push(RuleFiring::informational(
            "P1",
            format!("comparing coefficients forces {name} = {value}"),
            ANCHOR_P1,
            Some(Witness::Binding {
                unknown: name.clone(),
                value: value.clone(),
            }),
        ));
    }
    for (mono, value) in &constraints.relations {
        trace.push(RuleFiring::informational(
            "P1",
            format!("comparing coefficients forces {mono} = {value}"),
            ANCHOR_P1,
            Some(Witness::Relation {
                text: format!("{mono} = {value}"),
            }),
        ));
    }
    if let Some((mono, value)) = &constraints.contradiction {
        trace.push(RuleFiring::obstruction(
            "P1",
            format!(
                "after the forced substitutions the coefficient of {mono} is {value} != 0, \
                 contradicting c(T) c(conj T) = 1"
            ),
            ANCHOR_P1,
            Some(Witness::Coefficient {
                monomial: mono.clone(),
                value: value.to_string(),
            }),
        ));
    }

    // P2: twisted Dirac index on the constrained symbolic classes. Skipped
    // when P1 already found the class data inconsistent.
    if constraints.contradiction.is_none() {
        let index = constrained_index(p, q, &constraints);
        match index {
            Some(value) => {
                let witness = Witness::Index {
                    value: value.clone(),
                };
                if value.is_integer() {
                    trace.push(RuleFiring::informational(
                        "P2",
                        format!("twisted Dirac index = {value} is an integer: no obstruction here"),
                        ANCHOR_P2,
                        Some(witness),
                    ));
                } else {
                    trace.push(RuleFiring::obstruction(
                        "P2",
                        format!("the twisted Dirac index would be {value}, not an integer"),
                        ANCHOR_P2,
                        Some(witness),
                    ));
                }
            }
            None => trace.push(RuleFiring::informational(
                "P2",
                "the twisted Dirac index still depends on undetermined classes",
                ANCHOR_P2,
                None,
            )),
        }
    } else {
        trace.push(RuleFiring::inapplicable(
            "P2",
            "the class data is already inconsistent",
            ANCHOR_P2,
        ));
    }

    // P3: low-dimensional existence.
    match (p, q) {
        (1, 1) => trace.push(RuleFiring::constructive(
            "P3",
            "a product of two 2-dimensional rational homology spheres is S^2 x S^2",
            ANCHOR_P3_S2S2,
            None,
        )),
        (1, 2) => trace.push(RuleFiring::constructive(
            "P3",
            "S^2 times an orientable 4-manifold is a spin^c 6-manifold, hence almost complex",
            ANCHOR_P3_6DIM,
            None,
        )),
        (1, 3) => match large.spin_c {
            TriState::True => trace.push(RuleFiring::constructive(
                "P3",
                "the 6-dimensional factor is spin^c, so the product is almost complex",
                ANCHOR_P3_Q3,
                None,
            )),
            TriState::False => trace.push(RuleFiring::obstruction(
                "P3",
                "the 6-dimensional factor is not spin^c, so the product cannot be almost complex",
                ANCHOR_P3_Q3,
                None,
            )),
            TriState::Unknown => trace.push(RuleFiring::informational(
                "P3",
                "existence is equivalent to the 6-dimensional factor being spin^c, which is \
                 not specified",
                ANCHOR_P3_Q3,
                None,
            )),
        },
        _ => trace.push(RuleFiring::inapplicable(
            "P3",
            format!("no constructive criterion for half-dimensions ({p}, {q})"),
            ANCHOR_P3_Q3,
        )),
    }

    // P4: the open case of two odd half-dimensions > 1.
    if p % 2 == 1 && q % 2 == 1 && p > 1 {
        trace.push(RuleFiring::informational(
            "P4",
            format!("half-dimensions ({p}, {q}) are both odd and greater than 1: undecided"),
            ANCHOR_P4,
            None,
        ));
    }

    Ok(Verdict::from_trace(trace))
}

/// Evaluates the symbolic index with the derived bindings and relations
/// substituted; `None` when unknowns survive.
fn constrained_index(p: u32, q: u32, constraints: &ProductConstraints) -> Option<Rational> {
    let chern = symbolic_product_chern(p, q);
    let bound = ChernVector::new(
        chern.rank(),
        chern.ring(),
        chern
            .classes()
            .iter()
            .map(|c| {
                c.map_coefficients(|e| {
                    let mut e = e.clone();
                    for (name, value) in &constraints.bindings {
                        e = e.substitute(name, value);
                    }
                    e
                })
            })
            .collect(),
    )
    .expect("substitution preserves degrees");
    let index: Expr = spinc_dirac_index(&bound, &PontryaginVector::<Expr>::zero(chern.ring()));
    let mut index = index;
    for (m, value) in &constraints.relations {
        index = index.substitute_monomial(m, value);
    }
    index.as_rational().cloned()
}

/// Products of two even-dimensional spheres `S^{2p} x S^{2q}`, with any
/// smooth structures. Runs the rational-homology-sphere engine with both
/// factors spin^c, then settles the cells that engine leaves open using the
/// classification of almost complex products of even spheres.
pub fn classify_product_spheres(p: u32, q: u32) -> Result<Verdict, DecisionError> {
    let base = classify_product_rhs(
        RhsFactor::new(p, TriState::True),
        RhsFactor::new(q, TriState::True),
    )?;
    let mut trace = vec![RuleFiring::informational(
        "S0",
        "both factors are genuine spheres: stably parallelisable and spin",
        ANCHOR_S0,
        None,
    )];
    trace.extend(base.trace);
    if base.status == Status::Undetermined {
        let (a, b) = (2 * p.min(q), 2 * p.max(q));
        if (a, b) == (6, 6) {
            trace.push(RuleFiring::constructive(
                "S1",
                "S^6 x S^6 admits an almost complex structure",
                ANCHOR_S1,
                None,
            ));
        } else {
            trace.push(RuleFiring::obstruction(
                "S1",
                format!("S^{a} x S^{b} is not among the almost complex products of even spheres"),
                ANCHOR_S1,
                Some(Witness::Relation {
                    text: format!("({a}, {b}) not in {{(2,2), (2,4), (2,6), (6,6)}}"),
                }),
            ));
        }
    }
    Ok(Verdict::from_trace(trace))
}

/// Sphere products by actual sphere dimensions. Both dimensions odd: always
/// almost complex (parallelisable). Both even: the even-sphere
/// classification. A mixed product is odd-dimensional and rejected.
pub fn classify_sphere_product_dims(a: u32, b: u32) -> Result<Verdict, DecisionError> {
    if a == 0
        || b == 0
        || a > 2 * MAX_HALF_DIM
        || b > 2 * MAX_HALF_DIM
        || !(a + b).is_multiple_of(2)
    {
        return Err(DecisionError::InvalidDimensions { p: a, q: b });
    }
    if a % 2 == 1 {
        return Ok(Verdict::from_trace(vec![RuleFiring::constructive(
            "S2",
            format!("S^{a} x S^{b} is parallelisable and carries a complex structure"),
            ANCHOR_ODD,
            None,
        )]));
    }
    classify_product_spheres(a / 2, b / 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decision::FiringKind;

    fn rhs(p: u32, q: u32, n_spin_c: TriState) -> Verdict {
        classify_product_rhs(
            RhsFactor::new(p, TriState::Unknown),
            RhsFactor::new(q, n_spin_c),
        )
        .unwrap()
    }

    #[test]
    fn constraint_derivation_even_even() {
        let c = product_constraints(2, 2);
        assert!(c.bindings.contains(&("a".to_owned(), Rational::zero())));
        assert!(c.bindings.contains(&("b".to_owned(), Rational::zero())));
        let (mono, value) = c.contradiction.expect("coefficient 8 survives");
        assert_eq!(mono, "u*v");
        assert_eq!(value, Rational::from_integer(8));
    }

    #[test]
    fn constraint_derivation_parities() {
        // p even forces a = 0; q even forces b = 0.
        let c = product_constraints(2, 3);
        assert_eq!(c.bindings, vec![("a".to_owned(), Rational::zero())]);
        assert!(c.contradiction.is_none());
        let c = product_constraints(3, 2);
        assert_eq!(c.bindings, vec![("b".to_owned(), Rational::zero())]);
        // Both odd: a*b = 4 and no contradiction.
        let c = product_constraints(1, 3);
        assert!(c.bindings.is_empty());
        assert_eq!(
            c.relations,
            vec![(
                UnknownMonomial::from_pairs([("a", 1), ("b", 1)]),
                Rational::from_integer(4)
            )]
        );
        assert!(c.contradiction.is_none());
    }

    #[test]
    #[allow(clippy::if_same_then_else)] // the arms mirror the separate cases
    fn grid_matches_case_analysis() {
        for p in 1..=6u32 {
            for q in p..=6u32 {
                let v = rhs(p, q, TriState::Unknown);
                let expected = if p % 2 == 0 && q % 2 == 0 {
                    Status::NotExists
                } else if p > 1 && p % 2 == 1 && q % 2 == 0 || q > 1 && q % 2 == 1 && p % 2 == 0 {
                    Status::NotExists
                } else if p == 1 {
                    match q {
                        1 | 2 => Status::Exists,
                        3 => Status::Undetermined, // spin^c not specified
                        _ => Status::NotExists,
                    }
                } else {
                    Status::Undetermined
                };
                assert_eq!(v.status, expected, "(p, q) = ({p}, {q})");
            }
        }
    }

    #[test]
    fn q3_depends_on_spin_c() {
        assert_eq!(rhs(1, 3, TriState::True).status, Status::Exists);
        assert_eq!(rhs(1, 3, TriState::False).status, Status::NotExists);
        assert_eq!(rhs(1, 3, TriState::Unknown).status, Status::Undetermined);
    }

    #[test]
    fn index_witnesses() {
        // (3, 2): index 4/4! = 1/6.
        let v = rhs(3, 2, TriState::Unknown);
        let p2 = v.firings("P2").next().unwrap();
        assert_eq!(p2.kind, FiringKind::Obstruction);
        assert_eq!(
            p2.witness,
            Some(Witness::Index {
                value: Rational::new(1, 6)
            })
        );
        // (1, 4): index 4/4! = 1/6 as well.
        let v = rhs(1, 4, TriState::Unknown);
        let p2 = v.firings("P2").next().unwrap();
        assert_eq!(
            p2.witness,
            Some(Witness::Index {
                value: Rational::new(1, 6)
            })
        );
        // (1, 5): with a*b = 4 the index is 2/(q-1)! = 1/12.
        let v = rhs(1, 5, TriState::Unknown);
        let p2 = v.firings("P2").next().unwrap();
        assert_eq!(
            p2.witness,
            Some(Witness::Index {
                value: Rational::new(1, 12)
            })
        );
        // (1, 3): index 1, informational.
        let v = rhs(1, 3, TriState::True);
        let p2 = v.firings("P2").next().unwrap();
        assert_eq!(p2.kind, FiringKind::Informational);
        assert_eq!(
            p2.witness,
            Some(Witness::Index {
                value: Rational::one()
            })
        );
        // (3, 3): with a*b = 4 the index vanishes.
        let v = rhs(3, 3, TriState::Unknown);
        let p2 = v.firings("P2").next().unwrap();
        assert_eq!(
            p2.witness,
            Some(Witness::Index {
                value: Rational::zero()
            })
        );
    }

    #[test]
    fn symmetric_in_the_factors() {
        for (p, q) in [(1u32, 3u32), (2, 3), (2, 2), (3, 5), (1, 4)] {
            let v1 = classify_product_rhs(
                RhsFactor::new(p, TriState::Unknown),
                RhsFactor::new(q, TriState::True),
            )
            .unwrap();
            let v2 = classify_product_rhs(
                RhsFactor::new(q, TriState::True),
                RhsFactor::new(p, TriState::Unknown),
            )
            .unwrap();
            assert_eq!(v1, v2, "({p}, {q})");
        }
    }

    #[test]
    fn zero_half_dimension_rejected() {
        assert!(matches!(
            classify_product_rhs(
                RhsFactor::new(0, TriState::Unknown),
                RhsFactor::new(1, TriState::Unknown)
            ),
            Err(DecisionError::InvalidDimensions { .. })
        ));
    }

    #[test]
    fn sphere_products() {
        // The four almost complex products of even spheres.
        for (p, q) in [(1u32, 1u32), (1, 2), (1, 3), (3, 3)] {
            assert_eq!(
                classify_product_spheres(p, q).unwrap().status,
                Status::Exists
            );
        }
        // Everything else among even pairs is out.
        for (p, q) in [(2u32, 2u32), (2, 3), (1, 4), (2, 4), (3, 5), (5, 5), (4, 6)] {
            assert_eq!(
                classify_product_spheres(p, q).unwrap().status,
                Status::NotExists,
                "({p}, {q})"
            );
        }
        // Order does not matter.
        assert_eq!(
            classify_product_spheres(3, 1).unwrap().status,
            Status::Exists
        );
    }

    #[test]
    fn odd_sphere_products_always_exist() {
        for (a, b) in [(1u32, 1u32), (1, 3), (3, 3), (3, 5), (5, 7), (7, 7)] {
            assert_eq!(
                classify_sphere_product_dims(a, b).unwrap().status,
                Status::Exists
            );
        }
        // Even dims delegate; mixed parity is rejected.
        assert_eq!(
            classify_sphere_product_dims(6, 6).unwrap().status,
            Status::Exists
        );
        assert_eq!(
            classify_sphere_product_dims(4, 4).unwrap().status,
            Status::NotExists
        );
        assert!(classify_sphere_product_dims(2, 3).is_err());
    }
}
