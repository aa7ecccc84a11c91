//! Quantitative building blocks: guarantee moduli, the Hirzebruch
//! euler/signature congruence, Yang's divisibility, and the obstruction
//! residue in the homotopy group of `SO(2n)/U(n)`.

use super::DecisionError;
use crate::arith::factorial;
use num_bigint::{BigInt, BigUint};

/// For how many summands an almost complex connected sum is guaranteed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GuaranteeModulus {
    /// Dimensions divisible by 4: only the trivial sum (one summand) is
    /// guaranteed; the euler/signature congruence kills every sum of two.
    NoneButOne,
    /// `l = 1 (mod modulus)` is guaranteed.
    Modulus(BigUint),
}

/// The modulus governing which summand counts are guaranteed in a given even
/// dimension: dimensions `8k+2` use `(4k)!`, dimensions `8k+6` use
/// `(4k+2)!/2`, and dimensions divisible by 4 admit no guarantee beyond a
/// single summand. Dimensions 2 and 6 come out with modulus 1: every count
/// works there.
pub fn guarantee_modulus(dim: u32) -> Result<GuaranteeModulus, DecisionError> {
    if dim == 0 || !dim.is_multiple_of(2) {
        return Err(DecisionError::OddDimension { dim });
    }
    if dim.is_multiple_of(4) {
        return Ok(GuaranteeModulus::NoneButOne);
    }
    Ok(GuaranteeModulus::Modulus(
        ObstructionGroupOrder::for_dim(dim)?.order,
    ))
}

/// Order of the cyclic group housing the final obstruction to an almost
/// complex structure: `pi_{2n-1}(SO(2n)/U(n))` for `2n = dim`, of order
/// `(4k)!` in dimension `8k+2` and `(4k+2)!/2` in dimension `8k+6`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionGroupOrder {
    pub dim: u32,
    pub order: BigUint,
}

impl ObstructionGroupOrder {
    pub fn for_dim(dim: u32) -> Result<Self, DecisionError> {
        if dim < 2 || !dim.is_multiple_of(2) {
            return Err(DecisionError::OddDimension { dim });
        }
        let order = match dim % 8 {
            2 => factorial((dim - 2) / 2),
            6 => factorial((dim - 2) / 2) / BigUint::from(2u32),
            _ => return Err(DecisionError::NotApplicableDimension { dim }),
        };
        Ok(ObstructionGroupOrder { dim, order })
    }
}

/// Hirzebruch's congruence for a closed almost complex manifold of dimension
/// `4m`: true iff `chi - (-1)^m sigma = 0 (mod 4)`.
pub fn hirzebruch_congruence(euler: i64, signature: i64, m: u32) -> bool {
    let sign = if m.is_multiple_of(2) { 1 } else { -1 };
    (euler - sign * signature).rem_euclid(4) == 0
}

/// Yang's divisibility for an almost complex `2m`-connected manifold of
/// dimension `4m+2`: true iff `(2m)!` divides the Euler characteristic.
pub fn yang_divisibility(m: u32, euler: i64) -> bool {
    let divisor = BigInt::from(factorial(2 * m));
    BigInt::from(euler) % divisor == BigInt::ZERO
}

/// The residue `(chi - c_top)/2` in the obstruction group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionResidue {
    pub residue: BigUint,
    pub order: BigUint,
    /// The integer `(chi - c_top)/2` before reduction.
    pub half_defect: BigInt,
}

impl ObstructionResidue {
    pub fn is_zero(&self) -> bool {
        self.residue == BigUint::ZERO
    }
}

/// Obstruction to extending an almost complex structure over the final cell:
/// `(chi - c_top)/2` reduced in the obstruction group of the dimension.
/// Residue zero means the structure extends.
pub fn obstruction_residue(
    euler: i64,
    c_top_integral: i64,
    dim: u32,
) -> Result<ObstructionResidue, DecisionError> {
    let group = ObstructionGroupOrder::for_dim(dim)?;
    let defect = euler - c_top_integral;
    if defect.rem_euclid(2) != 0 {
        return Err(DecisionError::ParityViolation { defect });
    }
    let half = BigInt::from(defect / 2);
    let order = BigInt::from(group.order.clone());
    let residue = ((&half % &order) + &order) % &order;
    Ok(ObstructionResidue {
        residue: residue.magnitude().clone(),
        order: group.order,
        half_defect: half,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Euclid;

    #[test]
    fn guarantee_moduli() {
        // dim 10 = 8*1 + 2: (4k)! = 24.
        assert_eq!(
            guarantee_modulus(10).unwrap(),
            GuaranteeModulus::Modulus(BigUint::from(24u32))
        );
        // dim 6 = 8*0 + 6: (4k+2)!/2 = 1 — every count works.
        assert_eq!(
            guarantee_modulus(6).unwrap(),
            GuaranteeModulus::Modulus(BigUint::from(1u32))
        );
        assert_eq!(
            guarantee_modulus(2).unwrap(),
            GuaranteeModulus::Modulus(BigUint::from(1u32))
        );
        // dim 14 = 8*1 + 6: 6!/2 = 360.
        assert_eq!(
            guarantee_modulus(14).unwrap(),
            GuaranteeModulus::Modulus(BigUint::from(360u32))
        );
        // dim 22 = 8*2 + 6: 10!/2 = 1814400.
        assert_eq!(
            guarantee_modulus(22).unwrap(),
            GuaranteeModulus::Modulus(BigUint::from(1_814_400u32))
        );
        // Dimensions divisible by 4 guarantee nothing beyond one summand.
        assert_eq!(guarantee_modulus(8).unwrap(), GuaranteeModulus::NoneButOne);
        assert!(matches!(
            guarantee_modulus(7),
            Err(DecisionError::OddDimension { .. })
        ));
    }

    #[test]
    fn hirzebruch_examples() {
        // CP^2: chi = 3, sigma = 1, m = 1: 3 = -1 (mod 4).
        assert!(hirzebruch_congruence(3, 1, 1));
        // CP^2 # CP^2: chi = 4, sigma = 2: 4 + 2 = 6 is not 0 (mod 4).
        assert!(!hirzebruch_congruence(4, 2, 1));
        assert!(hirzebruch_congruence(0, 0, 3));
    }

    #[test]
    fn yang_examples() {
        // m = 2: 24 does not divide -2.
        assert!(!yang_divisibility(2, -2));
        // m = 1: (2)! divides everything even.
        assert!(yang_divisibility(1, -2));
        // 24 | -48.
        assert!(yang_divisibility(2, -48));
    }

    #[test]
    fn residue_family() {
        // dim 10 sums of chi = 0, c_top = 0 summands: residue (1 - l) mod 24.
        for l in 1..=60i64 {
            let chi = -2 * (l - 1);
            let r = obstruction_residue(chi, 0, 10).unwrap();
            assert_eq!(
                BigInt::from(r.residue.clone()),
                BigInt::from(1 - l).rem_euclid(&BigInt::from(24))
            );
            assert_eq!(r.is_zero(), (l - 1).rem_euclid(24) == 0);
        }
        // chi = c_top: the defining case of an almost complex manifold.
        assert!(obstruction_residue(100, 100, 10).unwrap().is_zero());
        // dim 6 has trivial group: always zero.
        assert!(obstruction_residue(-8, 0, 6).unwrap().is_zero());
        // Parity violation.
        assert!(matches!(
            obstruction_residue(1, 0, 10),
            Err(DecisionError::ParityViolation { .. })
        ));
        // Not applicable in dimensions divisible by 4.
        assert!(matches!(
            obstruction_residue(0, 0, 8),
            Err(DecisionError::NotApplicableDimension { .. })
        ));
    }
}
