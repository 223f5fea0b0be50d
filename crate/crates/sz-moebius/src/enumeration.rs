//! Hall-inversion enumeration: element-order counts per class, homomorphism
//! counts for free and Hecke groups, and the resulting normal-subgroup
//! counts, together with the collapsed closed forms they must agree with.
//!
//! The element-order counts for the Suzuki classes come from the
//! disjointness of the maximal cyclic subgroups (conjugates of A_0, A_1,
//! A_2) and the class sizes of their normalisers, so every n is covered,
//! not just the tabulated n = 2, 4, 5.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::catalog::{
    a_i_order, canonical_classes, class_order, divisors, normalizer_order, pow2, ClassLabel, Kind,
};
use crate::moebius::{classical_mu, mu_table};

/// The finitely generated group whose normal subgroups are being counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaDescriptor {
    /// Free group of the given rank (k >= 1).
    FreeGroup(u32),
    /// Hecke group C2 * Ck, counting smooth homomorphisms (torsion orders
    /// preserved exactly); k >= 3.
    HeckeSmooth(u32),
    /// Hecke group C2 * Ck, counting all homomorphisms of the free product.
    HeckeAll(u32),
}

impl GammaDescriptor {
    pub fn validate(&self) {
        match *self {
            GammaDescriptor::FreeGroup(k) => assert!(k >= 1, "free rank must be >= 1"),
            GammaDescriptor::HeckeSmooth(k) | GammaDescriptor::HeckeAll(k) => {
                assert!(k >= 3, "Hecke k must be >= 3")
            }
        }
    }
}

/// Euler totient.
fn phi(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            result -= result / p;
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn divides(n: u64, m: &BigUint) -> bool {
    m.is_multiple_of(&BigUint::from(n))
}

/// |H|_n: the number of elements of order n in a representative of the
/// class. Exact for every n.
pub fn order_count(label: ClassLabel, n: u64, e: u32) -> BigUint {
    assert!(label.is_canonical(e), "non-canonical label {label}");
    assert!(n >= 1);
    let f = label.level;
    let zero = BigUint::zero;
    if n == 1 {
        return BigUint::one();
    }
    let qf_m1 = pow2(f) - BigUint::one(); // 2^f - 1
    let phi_n = BigUint::from(phi(n));
    match label.kind {
        Kind::G => {
            let qq1 = pow2(2 * f) + BigUint::one(); // 2^(2f) + 1
            let order = class_order(label, e);
            if n == 2 {
                &qf_m1 * qq1
            } else if n == 4 {
                pow2(f) * qq1 * &qf_m1
            } else if n % 2 == 1 && divides(n, &qf_m1) {
                phi_n * order / (2u32 * qf_m1)
            } else if n % 2 == 1 && divides(n, &a_i_order(1, f)) {
                phi_n * order / (4u32 * a_i_order(1, f))
            } else if n % 2 == 1 && divides(n, &a_i_order(2, f)) {
                phi_n * order / (4u32 * a_i_order(2, f))
            } else {
                zero()
            }
        }
        Kind::F => {
            if n == 2 {
                qf_m1
            } else if n == 4 {
                pow2(f) * qf_m1
            } else if n % 2 == 1 && divides(n, &qf_m1) {
                phi_n * pow2(2 * f)
            } else {
                zero()
            }
        }
        Kind::Q => {
            // Exponent-4 group of order 2^(2f) with centre of order 2^f.
            if n == 2 {
                pow2(f) - BigUint::one()
            } else if n == 4 {
                pow2(2 * f) - pow2(f)
            } else {
                zero()
            }
        }
        Kind::Z => {
            if n == 2 {
                pow2(f) - BigUint::one()
            } else {
                zero()
            }
        }
        Kind::B0 => {
            // Dihedral of order 2(2^f - 1); C2 when f = 1.
            if n == 2 {
                qf_m1
            } else if n % 2 == 1 && divides(n, &qf_m1) {
                phi_n
            } else {
                zero()
            }
        }
        Kind::B1 | Kind::B2 => {
            // A_i x| C4, Frobenius; C4 itself when (B2, 1).
            let i = if label.kind == Kind::B1 { 1 } else { 2 };
            let ai = a_i_order(i, f);
            if n == 2 {
                ai
            } else if n == 4 {
                2u32 * ai
            } else if n % 2 == 1 && divides(n, &ai) {
                phi_n
            } else {
                zero()
            }
        }
        Kind::A0 => {
            // Cyclic of order 2^f - 1; trivial when f = 1.
            if divides(n, &qf_m1) {
                phi_n
            } else {
                zero()
            }
        }
        Kind::A1 | Kind::A2 => {
            let i = if label.kind == Kind::A1 { 1 } else { 2 };
            if divides(n, &a_i_order(i, f)) {
                phi_n
            } else {
                zero()
            }
        }
    }
}

fn u64_divisors(n: u64) -> Vec<u64> {
    let mut d = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            d.push(i);
            if i != n / i {
                d.push(n / i);
            }
        }
        i += 1;
    }
    d
}

/// The full order census of a class: all n with |H|_n > 0. Element orders
/// divide 4, 2^f - 1, a_1(f) or a_2(f), so only those candidates are
/// consulted.
pub fn order_census(label: ClassLabel, e: u32) -> Vec<(u64, BigUint)> {
    let f = label.level;
    let mut candidates: Vec<u64> = vec![1, 2, 4];
    for m in [
        pow2(f) - BigUint::one(),
        a_i_order(1, f),
        a_i_order(2, f),
    ] {
        let m: u64 = m.try_into().expect("explicit census levels fit u64");
        candidates.extend(u64_divisors(m));
    }
    candidates.sort_unstable();
    candidates.dedup();
    candidates
        .into_iter()
        .map(|n| (n, order_count(label, n, e)))
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

/// |Hom(Gamma, H)| for a class representative H.
pub fn hom_count(gamma: GammaDescriptor, label: ClassLabel, e: u32) -> BigUint {
    gamma.validate();
    match gamma {
        GammaDescriptor::FreeGroup(k) => class_order(label, e).pow(k),
        GammaDescriptor::HeckeSmooth(k) => {
            order_count(label, 2, e) * order_count(label, k as u64, e)
        }
        GammaDescriptor::HeckeAll(k) => {
            let invol = BigUint::one() + order_count(label, 2, e);
            let torsion: BigUint = (1..=k as u64)
                .filter(|d| k as u64 % d == 0)
                .map(|d| order_count(label, d, e))
                .sum();
            invol * torsion
        }
    }
}

/// n_Gamma(G): the number of normal subgroups of Gamma with quotient
/// Sz(2^e), by Hall inversion over the canonical classes:
///
///   n_Gamma(G) = (1/e) sum_H mu(H) |Hom(Gamma, H)| / |N_G(H)|.
///
/// The sum is an exact rational that must collapse to a nonnegative
/// integer; a non-integral result is a hard error.
pub fn n_gamma(gamma: GammaDescriptor, e: u32) -> BigUint {
    gamma.validate();
    let table = mu_table(e);
    let mut acc = BigRational::zero();
    for label in canonical_classes(e) {
        let mu = table.get(label);
        if mu.is_zero() {
            continue;
        }
        let hom = BigInt::from(hom_count(gamma, label, e));
        let norm = BigInt::from(normalizer_order(label, e));
        acc += BigRational::new(mu * hom, norm);
    }
    acc /= BigRational::from_integer(BigInt::from(e));
    assert!(
        acc.is_integer(),
        "n_gamma must be integral; got {acc} for e = {e}"
    );
    let value = acc.to_integer();
    assert!(!value.is_negative(), "n_gamma must be nonnegative");
    value.to_biguint().unwrap()
}

fn mobius_sum_scaled<F>(e: u32, scale: u32, term: F) -> BigUint
where
    F: Fn(u32) -> BigInt,
{
    let mut acc = BigInt::zero();
    for f in divisors(e) {
        let mu = classical_mu((e / f) as u64);
        if mu != 0 {
            acc += BigInt::from(mu) * term(f);
        }
    }
    acc *= BigInt::from(scale);
    let (q, r) = acc.div_rem(&BigInt::from(e));
    assert!(r.is_zero(), "closed form must divide by e exactly");
    assert!(!q.is_negative());
    q.to_biguint().unwrap()
}

/// Normal subgroups of the Hecke group C2 * C4 with quotient Sz(2^e):
/// (1/e) sum_{f|e} mu(e/f) 2^f (2^f - 2).
pub fn closed_form_h4(e: u32) -> BigUint {
    mobius_sum_scaled(e, 1, |f| {
        BigInt::from(pow2(f)) * (BigInt::from(pow2(f)) - BigInt::from(2))
    })
}

/// C2 * C5: (1/e) sum_{f|e} mu(e/f) (2^f - 1) a_2(f).
pub fn closed_form_h5(e: u32) -> BigUint {
    mobius_sum_scaled(e, 1, |f| {
        (BigInt::from(pow2(f)) - BigInt::one()) * BigInt::from(a_i_order(2, f))
    })
}

/// C2 * C7: (3/e) sum_{3|f|e} mu(e/f) (2^(2f) - 2); zero unless 3 | e.
pub fn closed_form_h7(e: u32) -> BigUint {
    if e % 3 != 0 {
        return BigUint::zero();
    }
    mobius_sum_scaled(e, 3, |f| {
        if f % 3 == 0 {
            BigInt::from(pow2(2 * f)) - BigInt::from(2)
        } else {
            BigInt::zero()
        }
    })
}

/// Orbits of Aut G on generating pairs (regular dessins with group Sz(q)):
/// (1/e) sum_{f|e} mu(e/f) 2^f (2^(4f) - 2^(3f) - 9).
pub fn closed_form_d2(e: u32) -> BigUint {
    mobius_sum_scaled(e, 1, |f| {
        BigInt::from(pow2(f))
            * (BigInt::from(pow2(4 * f)) - BigInt::from(pow2(3 * f)) - BigInt::from(9))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::C1;

    fn label(kind: Kind, level: u32) -> ClassLabel {
        ClassLabel { kind, level }
    }

    #[test]
    fn order_counts_sz8() {
        let g3 = label(Kind::G, 3);
        assert_eq!(order_count(g3, 2, 3), BigUint::from(455u32));
        assert_eq!(order_count(g3, 4, 3), BigUint::from(3640u32));
        assert_eq!(order_count(g3, 5, 3), BigUint::from(5824u32));
        assert_eq!(order_count(g3, 7, 3), BigUint::from(12480u32));
        assert_eq!(order_count(g3, 13, 3), BigUint::from(6720u32));
        assert_eq!(order_count(label(Kind::F, 3), 7, 3), BigUint::from(384u32));
        assert_eq!(order_count(label(Kind::B1, 3), 5, 3), BigUint::from(4u32));
        assert_eq!(order_count(label(Kind::B0, 3), 4, 3), BigUint::zero());
    }

    #[test]
    fn census_sums_to_class_order() {
        for e in [3u32, 5, 9] {
            for l in canonical_classes(e) {
                let total: BigUint = order_census(l, e).into_iter().map(|(_, c)| c).sum();
                assert_eq!(total, class_order(l, e), "census of {l} at e = {e}");
            }
        }
    }

    #[test]
    fn census_support_condition() {
        // |H|_n = 0 unless n divides 4, 2^f - 1, a_1(f) or a_2(f).
        let e = 3;
        for l in canonical_classes(e) {
            let f = l.level;
            for n in 1..=30u64 {
                let supported = 4 % n == 0
                    || divides(n, &(pow2(f) - BigUint::one()))
                    || divides(n, &a_i_order(1, f))
                    || divides(n, &a_i_order(2, f));
                if !supported {
                    assert!(order_count(l, n, e).is_zero(), "{l} n = {n}");
                }
            }
        }
    }

    #[test]
    fn hom_counts() {
        assert_eq!(
            hom_count(GammaDescriptor::FreeGroup(2), C1, 3),
            BigUint::one()
        );
        assert_eq!(
            hom_count(GammaDescriptor::HeckeSmooth(5), label(Kind::B1, 3), 3),
            BigUint::from(20u32)
        );
        assert_eq!(
            hom_count(GammaDescriptor::HeckeSmooth(4), label(Kind::B0, 3), 3),
            BigUint::zero()
        );
    }

    #[test]
    fn n_gamma_e3() {
        assert_eq!(
            n_gamma(GammaDescriptor::HeckeSmooth(4), 3),
            BigUint::from(16u32)
        );
        assert_eq!(
            n_gamma(GammaDescriptor::HeckeSmooth(5), 3),
            BigUint::from(30u32)
        );
        assert_eq!(
            n_gamma(GammaDescriptor::HeckeSmooth(7), 3),
            BigUint::from(62u32)
        );
        assert_eq!(
            n_gamma(GammaDescriptor::FreeGroup(2), 3),
            BigUint::from(9534u32)
        );
    }

    #[test]
    fn closed_forms_small() {
        assert_eq!(closed_form_h4(3), BigUint::from(16u32));
        assert_eq!(closed_form_h5(3), BigUint::from(30u32));
        assert_eq!(closed_form_h7(3), BigUint::from(62u32));
        assert_eq!(closed_form_h7(5), BigUint::zero());
        assert_eq!(closed_form_d2(3), BigUint::from(9534u32));
        assert_eq!(closed_form_h4(15), BigUint::from(71578352u32));
    }

    #[test]
    fn two_paths_agree() {
        for e in (3..=105u32).step_by(2) {
            assert_eq!(n_gamma(GammaDescriptor::HeckeSmooth(4), e), closed_form_h4(e));
            assert_eq!(n_gamma(GammaDescriptor::HeckeSmooth(5), e), closed_form_h5(e));
            assert_eq!(n_gamma(GammaDescriptor::HeckeSmooth(7), e), closed_form_h7(e));
            assert_eq!(n_gamma(GammaDescriptor::FreeGroup(2), e), closed_form_d2(e));
        }
    }
}
