//! Multiplicative sequences: the L-genus (`x/tanh x`) and the A-hat genus
//! (`(x/2)/sinh(x/2)`) as universal polynomials in Pontryagin classes.
//!
//! The polynomials are produced by formal-root expansion with exact
//! rationals: expand the product of the characteristic series over formal
//! roots, then rewrite each homogeneous symmetric piece in the elementary
//! symmetric polynomials, which are the Pontryagin classes.

use crate::arith::{bernoulli, factorial};
use crate::charclass::PontryaginVector;
use crate::coeff::Coefficient;
use crate::graded::GradedElement;
use crate::rational::Rational;
use num_bigint::{BigInt, BigUint};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenusId {
    /// `(x/2)/sinh(x/2)` — the integrand of the spin^c index theorem.
    AHat,
    /// `x/tanh(x)` — the Hirzebruch signature genus.
    L,
}

impl fmt::Display for GenusId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenusId::AHat => f.write_str("A-hat"),
            GenusId::L => f.write_str("L"),
        }
    }
}

/// A monomial in Pontryagin classes: index -> exponent (indices are 1-based,
/// `p_i` has weight `i` and cohomological degree `4i`).
pub type PontMonomial = BTreeMap<u32, u32>;

/// One polynomial `K_i(p_1, ..., p_i)` of a multiplicative sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusPolynomial {
    weight: u32,
    terms: BTreeMap<PontMonomial, Rational>,
}

impl GenusPolynomial {
    /// Weight `i`: every monomial satisfies `sum(index * exponent) = i`,
    /// i.e. the polynomial is homogeneous of cohomological degree `4i`.
    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PontMonomial, &Rational)> {
        self.terms.iter()
    }

    /// Coefficient of the plain variable `p_weight` — the leading
    /// coefficient in the sense of the signature formula.
    pub fn coefficient_of_top_class(&self) -> Rational {
        let mut key = PontMonomial::new();
        key.insert(self.weight, 1);
        self.terms.get(&key).cloned().unwrap_or_else(Rational::zero)
    }

    /// Substitutes concrete Pontryagin classes into the polynomial.
    pub fn evaluate<C: Coefficient>(&self, p: &PontryaginVector<C>) -> GradedElement<C> {
        let ring = p.ring();
        let mut acc = GradedElement::zero(ring);
        for (mono, coeff) in &self.terms {
            let mut term = GradedElement::one(ring);
            for (i, e) in mono {
                term = term.mul(&p.class(*i).pow(*e)).expect("same ring");
            }
            acc = acc.add(&term.mul_rational(coeff)).expect("same ring");
        }
        acc
    }
}

impl fmt::Display for GenusPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // Factor out the common denominator for the familiar textbook shape,
        // e.g. (7*p2 - p1^2)/45.
        let denom = self
            .terms
            .values()
            .fold(BigInt::from(1), |acc, r| lcm(&acc, r.denom()));
        let mut parts: Vec<String> = Vec::new();
        for (mono, coeff) in &self.terms {
            let scaled = coeff * &Rational::from_bigint(denom.clone());
            let int = scaled.to_bigint().expect("cleared denominator");
            let mono_s = mono
                .iter()
                .map(|(i, e)| {
                    if *e == 1 {
                        format!("p{i}")
                    } else {
                        format!("p{i}^{e}")
                    }
                })
                .collect::<Vec<_>>()
                .join("*");
            let magnitude = int.magnitude().to_string();
            let lead = if magnitude == "1" {
                mono_s
            } else {
                format!("{magnitude}*{mono_s}")
            };
            if parts.is_empty() {
                parts.push(if int.sign() == num_bigint::Sign::Minus {
                    format!("-{lead}")
                } else {
                    lead
                });
            } else if int.sign() == num_bigint::Sign::Minus {
                parts.push(format!("- {lead}"));
            } else {
                parts.push(format!("+ {lead}"));
            }
        }
        let numer = parts.join(" ");
        if denom == BigInt::from(1) {
            f.write_str(&numer)
        } else if self.terms.len() == 1 {
            write!(f, "{numer}/{denom}")
        } else {
            write!(f, "({numer})/{denom}")
        }
    }
}

fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    let g = gcd(a.magnitude().clone(), b.magnitude().clone());
    BigInt::from(a.magnitude() / &g * b.magnitude())
}

fn gcd(mut a: BigUint, mut b: BigUint) -> BigUint {
    while b != BigUint::ZERO {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

/// Coefficient of `z^k` in the characteristic series written in `z = x^2`.
///
/// L: `x/tanh x = sum 2^{2k} B_{2k} x^{2k} / (2k)!`
/// A-hat: `(x/2)/sinh(x/2) = sum (2 - 2^{2k}) B_{2k} x^{2k} / (4^k (2k)!)`
fn series_coefficient(genus: GenusId, k: u32) -> Rational {
    if k == 0 {
        return Rational::one();
    }
    let b = bernoulli(2 * k);
    let fact = Rational::from_bigint(factorial(2 * k).into());
    match genus {
        GenusId::L => {
            let two_2k = Rational::from_bigint(BigInt::from(2).pow(2 * k));
            &(&two_2k * &b) / &fact
        }
        GenusId::AHat => {
            let two_2k = Rational::from_bigint(BigInt::from(2).pow(2 * k));
            let four_k = Rational::from_bigint(BigInt::from(4).pow(k));
            &(&(&Rational::from_integer(2) - &two_2k) * &b) / &(&four_k * &fact)
        }
    }
}

// ---- symmetric-function expansion over formal roots -----------------------

/// Polynomial in the squared formal roots `y_1 .. y_m`, keyed by exponent
/// vectors. Weight of `y_j` is 1 (cohomological degree 4).
type YPoly = BTreeMap<Vec<u32>, Rational>;

fn y_insert(p: &mut YPoly, key: Vec<u32>, val: Rational) {
    if val.is_zero() {
        return;
    }
    match p.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(val);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += &val;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

fn y_mul(a: &YPoly, b: &YPoly, max_weight: u32) -> YPoly {
    let mut out = YPoly::new();
    for (ka, va) in a {
        let wa: u32 = ka.iter().sum();
        for (kb, vb) in b {
            let wb: u32 = kb.iter().sum();
            if wa + wb > max_weight {
                continue;
            }
            let key: Vec<u32> = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
            y_insert(&mut out, key, va * vb);
        }
    }
    out
}

/// Elementary symmetric polynomial `e_k(y_1 .. y_m)`.
fn elementary(m: usize, k: usize) -> YPoly {
    let mut out = YPoly::new();
    let mut choose = vec![0usize; k];
    fn rec(out: &mut YPoly, choose: &mut Vec<usize>, pos: usize, start: usize, m: usize) {
        if pos == choose.len() {
            let mut key = vec![0u32; m];
            for &i in choose.iter() {
                key[i] = 1;
            }
            y_insert(out, key, Rational::one());
            return;
        }
        for i in start..m {
            choose[pos] = i;
            rec(out, choose, pos + 1, i + 1, m);
        }
    }
    if k == 0 {
        out.insert(vec![0; m], Rational::one());
    } else {
        rec(&mut out, &mut choose, 0, 0, m);
    }
    out
}

/// Rewrites a homogeneous symmetric polynomial in `y_1 .. y_m` as a
/// polynomial in the elementary symmetric polynomials, by repeatedly
/// eliminating the lexicographically leading monomial.
fn to_elementary_basis(mut sym: YPoly, m: usize) -> BTreeMap<PontMonomial, Rational> {
    let mut out: BTreeMap<PontMonomial, Rational> = BTreeMap::new();
    while let Some((lead, coeff)) = sym.last_key_value().map(|(k, v)| (k.clone(), v.clone())) {
        // The lex-leading exponent vector of a symmetric polynomial is a
        // partition (weakly decreasing).
        debug_assert!(lead.windows(2).all(|w| w[0] >= w[1]));
        // Conjugate partition: mu_t = #{ i : lead_i >= t }.
        let mut mu: Vec<u32> = Vec::new();
        let max = lead.first().copied().unwrap_or(0);
        for t in 1..=max {
            mu.push(lead.iter().filter(|&&x| x >= t).count() as u32);
        }
        // e_{mu_1} * e_{mu_2} * ... has the same leading monomial.
        let mut mono = PontMonomial::new();
        let mut expansion = elementary(m, 0);
        let weight: u32 = lead.iter().sum();
        for part in &mu {
            *mono.entry(*part).or_insert(0) += 1;
            expansion = y_mul(&expansion, &elementary(m, *part as usize), weight);
        }
        out.insert(mono, coeff.clone());
        for (key, val) in expansion {
            y_insert(&mut sym, key, -&(&coeff * &val));
        }
    }
    out
}

fn compute_polynomials(genus: GenusId, max_i: u32) -> Vec<GenusPolynomial> {
    let m = max_i as usize;
    // Product over the formal roots of the characteristic series
    // 1 + q_1 y_j + q_2 y_j^2 + ..., truncated above total weight max_i.
    let coeffs: Vec<Rational> = (0..=max_i).map(|k| series_coefficient(genus, k)).collect();
    let mut product = YPoly::new();
    product.insert(vec![0; m], Rational::one());
    for j in 0..m {
        let mut factor = YPoly::new();
        for (k, q) in coeffs.iter().enumerate() {
            let mut key = vec![0u32; m];
            key[j] = k as u32;
            y_insert(&mut factor, key, q.clone());
        }
        product = y_mul(&product, &factor, max_i);
    }
    (1..=max_i)
        .map(|i| {
            let piece: YPoly = product
                .iter()
                .filter(|(k, _)| k.iter().sum::<u32>() == i)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect();
            GenusPolynomial {
                weight: i,
                terms: to_elementary_basis(piece, m),
            }
        })
        .collect()
}

type GenusCache = Mutex<HashMap<(GenusId, u32), Arc<Vec<GenusPolynomial>>>>;

static CACHE: OnceLock<GenusCache> = OnceLock::new();

/// The multiplicative-sequence polynomials `K_1 .. K_max_i` for the given
/// genus, exact and cached per `(genus, max_i)`.
pub fn genus_polynomials(genus: GenusId, max_i: u32) -> Arc<Vec<GenusPolynomial>> {
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    Arc::clone(
        guard
            .entry((genus, max_i))
            .or_insert_with(|| Arc::new(compute_polynomials(genus, max_i))),
    )
}

/// Evaluates the genus on Pontryagin data: `1 + K_1(p_1) + K_2(p_1, p_2) + ...`
/// truncated at the ring's top degree. Equals 1 when all `p_i` vanish.
pub fn evaluate_genus<C: Coefficient>(genus: GenusId, p: &PontryaginVector<C>) -> GradedElement<C> {
    let ring = p.ring();
    let max_i = ring.top_degree() / 4;
    let mut acc = GradedElement::one(ring);
    if p.is_zero() {
        return acc;
    }
    for k in genus_polynomials(genus, max_i).iter() {
        acc = acc.add(&k.evaluate(p)).expect("same ring");
    }
    acc
}
