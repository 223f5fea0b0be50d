//! The Möbius function engine: the classical Möbius function on the
//! naturals, the N(H;K) conjugate-count data, the downward recursion over
//! the canonical classes, and the closed forms it must reproduce.
//!
//! N(H;K) is the number of conjugates of K containing a fixed
//! representative of H. The recursion starts from mu(G) = 1 and walks the
//! canonical classes in decreasing order of subgroup order, so every class
//! properly containing H is evaluated before H:
//!
//!   mu(H) = - sum over K strictly above H of N(H;K) * mu(K).
//!
//! All arithmetic is exact arbitrary precision; 2^(2e-1) already overflows
//! 64 bits at e = 33 and symbolic e can be much larger.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::catalog::{
    a_i_order, canonical_classes, class_size, group_order, pow2, ClassLabel, Kind, C1, C2, C4,
};

/// Classical Möbius function on the positive integers.
pub fn classical_mu(n: u64) -> i64 {
    assert!(n >= 1, "classical_mu requires n >= 1");
    let mut n = n;
    let mut k = 0;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            k += 1;
        }
        p += 1;
    }
    if n > 1 {
        k += 1;
    }
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

fn big(u: BigUint) -> BigInt {
    BigInt::from(u)
}

/// N(H;K): conjugates of K containing a fixed representative of H, for
/// canonical labels H, K. Pairs with no containment return 0. The
/// identity-class row is the class size of K.
pub fn n_count(h: ClassLabel, k: ClassLabel, e: u32) -> BigUint {
    assert!(h.is_canonical(e), "non-canonical label {h}");
    assert!(k.is_canonical(e), "non-canonical label {k}");
    if h == k {
        return BigUint::one();
    }
    if h == C1 {
        return class_size(k, e);
    }
    let f = h.level;
    let lk = k.level;
    let zero = BigUint::zero;
    let one = BigUint::one;
    let qm1 = || pow2(e) - one();
    let sub_qm1 = |h_: u32| pow2(h_) - one();

    // Rows for the order-4 and order-2 cyclic classes: level-1 subgroups
    // of every level-h class of even order.
    if h == C4 {
        return match k.kind {
            Kind::G | Kind::F => pow2(e - lk),
            Kind::Q => one(),
            Kind::B1 | Kind::B2 => pow2(e - 1),
            _ => zero(),
        };
    }
    if h == C2 {
        return match k.kind {
            Kind::G | Kind::F => pow2(2 * (e - lk)),
            Kind::Q => pow2(e - lk),
            Kind::Z => one(),
            Kind::B0 => pow2(2 * e - 1),
            Kind::B2 if lk == 1 => pow2(e - 1), // K = C4
            Kind::B1 | Kind::B2 => pow2(2 * (e - 1)),
            _ => zero(),
        };
    }

    // Generic rows: require level(H) | level(K).
    if lk % f != 0 {
        return zero();
    }
    match (h.kind, k.kind) {
        (Kind::G, Kind::G) => one(),
        (Kind::F, Kind::G | Kind::F) => one(),
        (Kind::Q, Kind::G | Kind::F) => pow2(e - lk),
        (Kind::Q, Kind::Q) => one(),
        (Kind::Z, Kind::G | Kind::F) => pow2(2 * (e - lk)),
        (Kind::Z, Kind::Q) => pow2(e - lk),
        (Kind::Z, Kind::Z) => one(),
        (Kind::B0, Kind::G | Kind::B0) => one(),
        (Kind::A0, Kind::G | Kind::B0) => qm1() / sub_qm1(lk),
        (Kind::A0, Kind::F) => 2u32 * qm1() / sub_qm1(lk),
        (Kind::A0, Kind::A0) => one(),
        (Kind::B1, Kind::G | Kind::B1) => one(),
        (Kind::B2, Kind::G | Kind::B2) => one(),
        (Kind::A1, Kind::G | Kind::B1) => a_i_order(1, e) / a_i_order(1, lk),
        (Kind::A1, Kind::A1) => one(),
        (Kind::A2, Kind::G | Kind::B2) => a_i_order(2, e) / a_i_order(2, lk),
        (Kind::A2, Kind::A2) => one(),
        _ => zero(),
    }
}

/// The Möbius values on the canonical classes for a fixed e.
#[derive(Debug, Clone)]
pub struct MoebiusTable {
    pub e: u32,
    /// Canonical classes in recursion (decreasing-order) order.
    pub classes: Vec<ClassLabel>,
    values: HashMap<ClassLabel, BigInt>,
}

impl MoebiusTable {
    pub fn get(&self, label: ClassLabel) -> &BigInt {
        &self.values[&label]
    }
}

/// Evaluates the recursion mu(H) = -sum_{H<K} N(H;K) mu(K) over the
/// canonical classes, starting from mu(G) = 1.
pub fn mu_table(e: u32) -> MoebiusTable {
    let classes = canonical_classes(e);
    let mut values: HashMap<ClassLabel, BigInt> = HashMap::new();
    for (idx, &h) in classes.iter().enumerate() {
        if idx == 0 {
            values.insert(h, BigInt::one());
            continue;
        }
        let mut acc = BigInt::zero();
        for &k in &classes[..idx] {
            let n = n_count(h, k, e);
            if !n.is_zero() {
                acc += big(n) * &values[&k];
            }
        }
        // Distinct classes of equal order are never nested; anything after
        // H in the traversal must not contain it.
        for &k in &classes[idx + 1..] {
            assert!(
                n_count(h, k, e).is_zero(),
                "traversal order violated: {k} contains {h}"
            );
        }
        values.insert(h, -acc);
    }
    MoebiusTable { e, classes, values }
}

/// The closed forms the recursion must reproduce (Möbius values per class).
pub fn closed_form_mu(label: ClassLabel, e: u32) -> BigInt {
    assert!(label.is_canonical(e), "non-canonical label {label}");
    let f = label.level;
    let mu_ef = || BigInt::from(classical_mu((e / f) as u64));
    let mu_e = || BigInt::from(classical_mu(e as u64));
    if label == C4 {
        return -big(pow2(e)) * mu_e();
    }
    if label == C2 {
        return -big(pow2(2 * e - 1)) * mu_e();
    }
    if label == C1 {
        return big(group_order(e)) * mu_e();
    }
    match label.kind {
        Kind::G => mu_ef(),
        Kind::F => -mu_ef(),
        Kind::B0 | Kind::B1 | Kind::B2 => {
            if f > 1 {
                -mu_ef()
            } else {
                BigInt::zero() // B1(1) when 3 does not divide e
            }
        }
        Kind::A0 => {
            let ratio = (pow2(e) - BigUint::one()) / (pow2(f) - BigUint::one());
            BigInt::from(2) * big(ratio) * mu_ef()
        }
        _ => BigInt::zero(), // Q(f), Z(f), A1(f), A2(f)
    }
}

/// The Conder divisibility check: |G| divides mu(C1).
pub fn conder_divisible(e: u32) -> bool {
    let table = mu_table(e);
    let mu_i = table.get(C1);
    mu_i.abs().to_biguint().unwrap().is_multiple_of(&group_order(e)) || mu_i.is_zero()
}
