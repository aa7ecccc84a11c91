//! The rule registry that turns manifold descriptors into cited verdicts on
//! the existence of almost complex structures.
//!
//! Every verdict carries an ordered trace of rule firings. Rules are
//! evaluated in a fixed order, all applicable rules are logged, and the
//! first decisive firing (constructive or obstruction) determines the
//! status. `UNDETERMINED` is a first-class outcome: the engine never
//! extrapolates past what the cited computations establish.

mod connected_sums;
mod products;
mod thresholds;

pub use connected_sums::{
    classify_connected_sum, dirac_index_check, guaranteed_connected_sum, hopf_summand,
    odd_sphere_square_summand,
};
pub use products::{
    classify_product_rhs, classify_product_spheres, classify_sphere_product_dims,
    product_constraints, ProductConstraints, RhsFactor, TriState,
};
pub use thresholds::{
    guarantee_modulus, hirzebruch_congruence, obstruction_residue, yang_divisibility,
    GuaranteeModulus, ObstructionGroupOrder, ObstructionResidue,
};

use crate::manifold::ManifoldError;
use crate::rational::Rational;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecisionError {
    #[error("dimension {dim} must be a positive even integer")]
    OddDimension { dim: u32 },
    #[error("the number of summands must be at least 1")]
    InvalidCount,
    #[error("no obstruction group in dimension {dim} (needs dim = 2 mod 4)")]
    NotApplicableDimension { dim: u32 },
    #[error("chi - c_top = {defect} is odd; the obstruction residue needs an even defect")]
    ParityViolation { defect: i64 },
    #[error("precondition flags missing: {detail}")]
    PreconditionFlagsMissing { detail: String },
    #[error("invalid dimensions p = {p}, q = {q} (positive, bounded, even total)")]
    InvalidDimensions { p: u32, q: u32 },
    #[error(transparent)]
    Manifold(#[from] ManifoldError),
}

/// Tri-state classification outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "EXISTS")]
    Exists,
    #[serde(rename = "NOT_EXISTS")]
    NotExists,
    #[serde(rename = "UNDETERMINED")]
    Undetermined,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Exists => "EXISTS",
            Status::NotExists => "NOT_EXISTS",
            Status::Undetermined => "UNDETERMINED",
        })
    }
}

/// How a rule fired.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FiringKind {
    /// Establishes existence.
    Constructive,
    /// Rules existence out.
    Obstruction,
    /// Applicable and evaluated, but not decisive on its own.
    Informational,
    /// Preconditions not met; logged so that undetermined verdicts cite
    /// exactly which rules could not run.
    Inapplicable,
}

/// Exact numerical witness attached to a quantitative rule firing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A residue in a finite cyclic group; zero means unobstructed.
    Residue {
        #[serde(with = "bigint_string")]
        value: BigInt,
        #[serde(with = "bigint_string")]
        modulus: BigInt,
    },
    /// An exact index value; non-integrality is the obstruction.
    Index { value: Rational },
    /// A divisibility requirement `divisor | value`.
    Divisibility {
        #[serde(with = "bigint_string")]
        divisor: BigInt,
        #[serde(with = "bigint_string")]
        value: BigInt,
    },
    /// A congruence requirement `value = 0 (mod modulus)`.
    Congruence {
        #[serde(with = "bigint_string")]
        value: BigInt,
        #[serde(with = "bigint_string")]
        modulus: BigInt,
    },
    /// A coefficient read off from a symbolic expansion.
    Coefficient { monomial: String, value: String },
    /// A forced value of an unknown, e.g. `a = 0`.
    Binding { unknown: String, value: Rational },
    /// A derived polynomial relation, e.g. `a*b = 4`.
    Relation { text: String },
    /// A nonzero Euler characteristic standing where a vanishing class
    /// should integrate to zero.
    Euler {
        #[serde(with = "bigint_string")]
        value: BigInt,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Residue { value, modulus } => write!(f, "residue {value} (mod {modulus})"),
            Witness::Index { value } => {
                if value.is_integer() {
                    write!(f, "index {value} (an integer)")
                } else {
                    write!(f, "index {value} (not an integer)")
                }
            }
            Witness::Divisibility { divisor, value } => {
                if (value % divisor) == BigInt::ZERO {
                    write!(f, "{divisor} divides {value}")
                } else {
                    write!(f, "{divisor} does not divide {value}")
                }
            }
            Witness::Congruence { value, modulus } => {
                let r = ((value % modulus) + modulus) % modulus;
                write!(f, "{value} mod {modulus} = {r}")
            }
            Witness::Coefficient { monomial, value } => {
                write!(f, "coefficient of {monomial} is {value}")
            }
            Witness::Binding { unknown, value } => write!(f, "{unknown} = {value}"),
            Witness::Relation { text } => f.write_str(text),
            Witness::Euler { value } => write!(f, "chi = {value} != 0"),
        }
    }
}

mod bigint_string {
    use num_bigint::BigInt;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(de::Error::custom)
    }
}

/// One fired (or skipped) rule, with its citation and exact witness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuleFiring {
    pub rule_id: String,
    pub kind: FiringKind,
    pub conclusion: String,
    /// The mathematical justification for the rule, nonempty by invariant.
    pub anchor: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
}

impl RuleFiring {
    pub fn constructive(
        rule_id: &str,
        conclusion: impl Into<String>,
        anchor: &str,
        witness: Option<Witness>,
    ) -> Self {
        Self::build(
            rule_id,
            FiringKind::Constructive,
            conclusion,
            anchor,
            witness,
        )
    }

    pub fn obstruction(
        rule_id: &str,
        conclusion: impl Into<String>,
        anchor: &str,
        witness: Option<Witness>,
    ) -> Self {
        Self::build(
            rule_id,
            FiringKind::Obstruction,
            conclusion,
            anchor,
            witness,
        )
    }

    pub fn informational(
        rule_id: &str,
        conclusion: impl Into<String>,
        anchor: &str,
        witness: Option<Witness>,
    ) -> Self {
        Self::build(
            rule_id,
            FiringKind::Informational,
            conclusion,
            anchor,
            witness,
        )
    }

    pub fn inapplicable(rule_id: &str, reason: impl Into<String>, anchor: &str) -> Self {
        Self::build(
            rule_id,
            FiringKind::Inapplicable,
            format!("not applicable: {}", reason.into()),
            anchor,
            None,
        )
    }

    fn build(
        rule_id: &str,
        kind: FiringKind,
        conclusion: impl Into<String>,
        anchor: &str,
        witness: Option<Witness>,
    ) -> Self {
        assert!(!anchor.is_empty(), "rule firings must carry a citation");
        RuleFiring {
            rule_id: rule_id.to_owned(),
            kind,
            conclusion: conclusion.into(),
            anchor: anchor.to_owned(),
            witness,
        }
    }

    pub fn is_decisive(&self) -> bool {
        matches!(
            self.kind,
            FiringKind::Constructive | FiringKind::Obstruction
        )
    }
}

/// Tri-state verdict plus the ordered trace of rule firings that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub trace: Vec<RuleFiring>,
}

impl Verdict {
    /// Builds a verdict from a trace: the first decisive firing wins. Panics
    /// if the trace violates the verdict invariants (an obstruction for
    /// `NOT_EXISTS`, a constructive firing for `EXISTS`, and at least one
    /// informational or inapplicable note for `UNDETERMINED`).
    pub fn from_trace(trace: Vec<RuleFiring>) -> Self {
        let status = trace
            .iter()
            .find(|f| f.is_decisive())
            .map(|f| match f.kind {
                FiringKind::Constructive => Status::Exists,
                FiringKind::Obstruction => Status::NotExists,
                _ => unreachable!(),
            })
            .unwrap_or(Status::Undetermined);
        let v = Verdict { status, trace };
        v.check_invariants();
        v
    }

    fn check_invariants(&self) {
        match self.status {
            Status::Exists => assert!(
                self.trace
                    .iter()
                    .any(|f| f.kind == FiringKind::Constructive),
                "EXISTS requires a constructive firing"
            ),
            Status::NotExists => assert!(
                self.trace.iter().any(|f| f.kind == FiringKind::Obstruction),
                "NOT_EXISTS requires an obstruction firing"
            ),
            Status::Undetermined => assert!(
                self.trace.iter().any(|f| matches!(
                    f.kind,
                    FiringKind::Informational | FiringKind::Inapplicable
                )),
                "UNDETERMINED must cite inapplicable or indecisive rules"
            ),
        }
        assert!(self.trace.iter().all(|f| !f.anchor.is_empty()));
    }

    /// The firing that decided the verdict, if any.
    pub fn decisive(&self) -> Option<&RuleFiring> {
        self.trace.iter().find(|f| f.is_decisive())
    }

    /// All firings recorded for a rule id.
    pub fn firings<'a>(&'a self, rule_id: &'a str) -> impl Iterator<Item = &'a RuleFiring> + 'a {
        self.trace.iter().filter(move |f| f.rule_id == rule_id)
    }

    pub fn exists(&self) -> bool {
        self.status == Status::Exists
    }
}
