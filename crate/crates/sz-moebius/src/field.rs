//! Exact arithmetic in GF(2^e) for odd e, in polynomial basis.
//!
//! Elements are plain bit patterns (`FieldElement`); every operation goes
//! through a [`Field`], which fixes the extension degree and the reduction
//! modulus. The modulus is the lexicographically smallest irreducible
//! polynomial of degree e over GF(2), found by exhaustive search, so the
//! representation is reproducible across runs.
//!
//! The twisting automorphism is `theta: x -> x^(2^((e+1)/2))`, whose square
//! is the Frobenius `x -> x^2`. Only odd e are supported; `theta` is the
//! reason the construction needs the parity restriction.

/// An element of GF(2^e): coefficient bits of a polynomial of degree < e.
pub type FieldElement = u64;

/// Maximum supported extension degree for explicit field construction.
pub const MAX_DEGREE: u32 = 25;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Field {
    e: u32,
    /// Irreducible modulus of degree e, as bits (bit e is set).
    modulus: u64,
    /// (e+1)/2, so theta(x) = x^(2^r_exponent).
    r_exponent: u32,
    /// exp/log tables for fast multiplication (small fields only).
    tables: Option<Tables>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Tables {
    /// exp[i] = g^i for a fixed generator g, length 2(q-1) to skip the mod.
    exp: Vec<u32>,
    /// log[x] for x in 1..q.
    log: Vec<u32>,
}

/// Multiplication of polynomials over GF(2) (carry-less multiply).
fn clmul(a: u64, b: u64) -> u128 {
    let mut acc: u128 = 0;
    let mut b = b;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= (a as u128) << shift;
        }
        b >>= 1;
        shift += 1;
    }
    acc
}

fn poly_degree(p: u128) -> i32 {
    127 - p.leading_zeros() as i32
}

/// Remainder of polynomial division over GF(2).
fn poly_rem(mut a: u128, m: u128) -> u128 {
    let dm = poly_degree(m);
    while poly_degree(a) >= dm {
        a ^= m << ((poly_degree(a) - dm) as u32);
    }
    a
}

fn poly_gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = poly_rem(a, b);
        a = b;
        b = r;
    }
    a
}

/// Irreducibility over GF(2) by the derivative-free Rabin test:
/// x^(2^e) == x mod f, and gcd(x^(2^(e/p)) - x, f) == 1 for prime p | e.
fn is_irreducible(f: u64, e: u32) -> bool {
    if e == 1 {
        return true;
    }
    let fm = f as u128;
    // x^(2^k) mod f by repeated squaring of x.
    let pow_x = |k: u32| -> u128 {
        let mut x: u128 = 0b10;
        for _ in 0..k {
            x = poly_rem(clmul(x as u64, x as u64), fm);
        }
        x
    };
    if pow_x(e) != 0b10 {
        return false;
    }
    let mut primes = Vec::new();
    let mut n = e;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            primes.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        primes.push(n);
    }
    for p in primes {
        if poly_gcd(pow_x(e / p) ^ 0b10, fm) != 1 {
            return false;
        }
    }
    true
}

impl Field {
    /// GF(2^e) with the lexicographically smallest irreducible modulus.
    ///
    /// Panics if e is even, zero, or exceeds [`MAX_DEGREE`].
    pub fn new(e: u32) -> Field {
        assert!(e >= 1 && e % 2 == 1, "extension degree must be odd, got {e}");
        assert!(e <= MAX_DEGREE, "degree {e} exceeds explicit-construction limit");
        let modulus = ((1u64 << e)..(1u64 << (e + 1)))
            .find(|&f| is_irreducible(f, e))
            .expect("an irreducible polynomial of every degree exists");
        let mut field = Field {
            e,
            modulus,
            r_exponent: (e + 1) / 2,
            tables: None,
        };
        if e <= 16 {
            field.tables = Some(field.build_tables());
        }
        field
    }

    fn build_tables(&self) -> Tables {
        let q = self.order();
        // Find a multiplicative generator by brute force order test.
        let qm1 = q - 1;
        let divisors: Vec<u64> = (1..=qm1).filter(|d| qm1 % d == 0).collect();
        let gen = (2..q)
            .find(|&g| {
                divisors
                    .iter()
                    .all(|&d| d == qm1 || self.pow_raw(g, d) != 1)
            })
            .unwrap_or(1); // q = 2: trivial group
        let mut exp = vec![0u32; (2 * qm1.max(1)) as usize];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u64;
        for i in 0..qm1 {
            exp[i as usize] = x as u32;
            exp[(i + qm1) as usize] = x as u32;
            log[x as usize] = i as u32;
            x = self.mul_raw(x, gen);
        }
        Tables { exp, log }
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    /// q = 2^e.
    pub fn order(&self) -> u64 {
        1 << self.e
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        0
    }

    pub fn one(&self) -> FieldElement {
        1
    }

    /// All field elements in increasing bit-pattern order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        0..self.order()
    }

    #[inline]
    fn check(&self, x: FieldElement) {
        debug_assert!(x < self.order(), "element {x:#x} not in GF(2^{})", self.e);
    }

    #[inline]
    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.check(x);
        self.check(y);
        x ^ y
    }

    fn mul_raw(&self, x: u64, y: u64) -> u64 {
        poly_rem(clmul(x, y), self.modulus as u128) as u64
    }

    #[inline]
    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.check(x);
        self.check(y);
        if let Some(t) = &self.tables {
            if x == 0 || y == 0 {
                return 0;
            }
            let qm1 = self.order() - 1;
            if qm1 == 1 {
                return 1;
            }
            return t.exp[(t.log[x as usize] + t.log[y as usize]) as usize] as u64;
        }
        self.mul_raw(x, y)
    }

    fn pow_raw(&self, x: u64, mut k: u64) -> u64 {
        let mut base = x;
        let mut acc = 1u64;
        while k != 0 {
            if k & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            k >>= 1;
        }
        acc
    }

    /// x^k by square-and-multiply.
    pub fn pow(&self, x: FieldElement, k: u64) -> FieldElement {
        self.check(x);
        if let Some(t) = &self.tables {
            if x == 0 {
                return if k == 0 { 1 } else { 0 };
            }
            let qm1 = self.order() - 1;
            if qm1 == 1 {
                return 1;
            }
            let l = (t.log[x as usize] as u64 * (k % qm1)) % qm1;
            return t.exp[l as usize] as u64;
        }
        self.pow_raw(x, k)
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, x: FieldElement) -> FieldElement {
        assert!(x != 0, "inversion of zero in GF(2^{})", self.e);
        self.pow(x, self.order() - 2)
    }

    /// The twisting automorphism theta: x -> x^(2^((e+1)/2)), with
    /// theta(theta(x)) = x^2.
    pub fn theta(&self, x: FieldElement) -> FieldElement {
        self.frob_iter(x, self.r_exponent)
    }

    /// Inverse of theta: x -> x^(2^((e-1)/2)).
    pub fn theta_inv(&self, x: FieldElement) -> FieldElement {
        self.frob_iter(x, self.e - self.r_exponent)
    }

    fn frob_iter(&self, x: FieldElement, k: u32) -> FieldElement {
        self.check(x);
        let mut y = x;
        for _ in 0..k {
            y = self.mul(y, y);
        }
        y
    }

    /// phi: x -> x + x^theta. Maps every subfield into itself.
    pub fn phi(&self, x: FieldElement) -> FieldElement {
        self.add(x, self.theta(x))
    }

    /// True iff x lies in the subfield GF(2^f). Panics unless f | e.
    pub fn in_subfield(&self, x: FieldElement, f: u32) -> bool {
        assert!(f >= 1 && self.e % f == 0, "{f} does not divide {}", self.e);
        self.frob_iter(x, f) == x
    }

    /// The elements of the subfield GF(2^f), in increasing bit-pattern order.
    pub fn subfield_elements(&self, f: u32) -> Vec<FieldElement> {
        self.elements().filter(|&x| self.in_subfield(x, f)).collect()
    }

    /// A GF(2)-basis of the subfield GF(2^f), chosen greedily over the
    /// bit-pattern order (deterministic).
    pub fn subfield_basis(&self, f: u32) -> Vec<FieldElement> {
        let mut basis: Vec<FieldElement> = Vec::new();
        let mut span = vec![0u64];
        for x in self.subfield_elements(f) {
            if x != 0 && !span.contains(&x) {
                let new: Vec<u64> = span.iter().map(|&s| s ^ x).collect();
                span.extend(new);
                basis.push(x);
            }
        }
        debug_assert_eq!(basis.len() as u32, f);
        basis
    }

    /// A generator of the multiplicative group of GF(2^f), smallest by bit
    /// pattern. Returns 1 for f = 1.
    pub fn subfield_generator(&self, f: u32) -> FieldElement {
        let m = (1u64 << f) - 1;
        if m == 1 {
            return 1;
        }
        self.subfield_elements(f)
            .into_iter()
            .find(|&x| {
                x != 0 && {
                    // x generates iff x^(m/p) != 1 for every prime p | m.
                    let mut ok = true;
                    let mut n = m;
                    let mut p = 2;
                    while p * p <= n {
                        if n % p == 0 {
                            if self.pow(x, m / p) == 1 {
                                ok = false;
                            }
                            while n % p == 0 {
                                n /= p;
                            }
                        }
                        p += 1;
                    }
                    if n > 1 && self.pow(x, m / n) == 1 {
                        ok = false;
                    }
                    ok
                }
            })
            .expect("multiplicative group of a finite field is cyclic")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_irreducible_moduli() {
        // Degree 3: t^3 + t + 1 = 0b1011 is the smallest irreducible.
        assert_eq!(Field::new(3).modulus(), 0b1011);
        // Degree 5: t^5 + t^2 + 1 = 0b100101.
        assert_eq!(Field::new(5).modulus(), 0b100101);
        assert_eq!(Field::new(1).modulus(), 0b10);
    }

    #[test]
    fn add_is_xor_with_char_2() {
        let f = Field::new(3);
        for x in f.elements() {
            assert_eq!(f.add(x, x), 0);
            assert_eq!(f.add(0, x), x);
        }
        // t + t^2 = t^2 + t
        assert_eq!(f.add(0b010, 0b100), 0b110);
    }

    #[test]
    fn gf8_reduction_and_inverses() {
        let f = Field::new(3);
        // t^3 = t + 1 under t^3 + t + 1.
        assert_eq!(f.pow(0b010, 3), 0b011);
        for x in 1..8 {
            assert_eq!(f.mul(f.inv(x), x), 1);
            assert_eq!(f.mul(1, x), x);
        }
    }

    #[test]
    fn theta_squares_to_frobenius() {
        for e in [1u32, 3, 5, 7, 9] {
            let f = Field::new(e);
            let probe: Vec<u64> = if e <= 5 {
                f.elements().collect()
            } else {
                (0..f.order()).step_by(97).collect()
            };
            for x in probe {
                assert_eq!(f.theta(f.theta(x)), f.mul(x, x));
                assert_eq!(f.theta(f.theta_inv(x)), x);
            }
        }
    }

    #[test]
    fn theta_is_x4_in_gf8() {
        let f = Field::new(3);
        assert_eq!(f.theta(0), 0);
        assert_eq!(f.theta(1), 1);
        for x in f.elements() {
            assert_eq!(f.theta(x), f.pow(x, 4));
            assert_eq!(f.theta(f.theta(x)), f.pow(x, 2));
        }
    }

    #[test]
    fn theta_is_multiplicative() {
        let f = Field::new(5);
        for x in f.elements() {
            for y in (0..f.order()).step_by(3) {
                assert_eq!(f.theta(f.mul(x, y)), f.mul(f.theta(x), f.theta(y)));
            }
        }
    }

    #[test]
    fn phi_preserves_subfields() {
        let f = Field::new(3);
        assert_eq!(f.phi(0), 0);
        for fdiv in [1u32, 3] {
            for x in f.subfield_elements(fdiv) {
                assert!(f.in_subfield(f.phi(x), fdiv));
            }
        }
        // phi(phi(x)) = x + x^2
        for x in f.elements() {
            assert_eq!(f.phi(f.phi(x)), f.add(x, f.mul(x, x)));
        }
    }

    #[test]
    fn phi_inverse_preserves_subfields() {
        // If phi(x) lies in GF(2^f) then so does x.
        for e in [3u32, 9] {
            let fl = Field::new(e);
            let divisors: Vec<u32> = (1..=e).filter(|d| e % d == 0).collect();
            for &d in &divisors {
                for x in fl.elements() {
                    if fl.in_subfield(fl.phi(x), d) {
                        assert!(fl.in_subfield(x, d));
                    }
                }
            }
        }
    }

    #[test]
    fn subfield_counts_match_divisor_lattice() {
        let f = Field::new(9);
        for d in [1u32, 3, 9] {
            let count = f.elements().filter(|&x| f.in_subfield(x, d)).count();
            assert_eq!(count as u64, 1 << d);
        }
        let f3 = Field::new(3);
        assert_eq!(f3.elements().filter(|&x| f3.in_subfield(x, 1)).count(), 2);
    }

    #[test]
    #[should_panic(expected = "does not divide")]
    fn in_subfield_rejects_non_divisor() {
        let f = Field::new(9);
        f.in_subfield(1, 2);
    }

    #[test]
    #[should_panic(expected = "inversion of zero")]
    fn inv_of_zero_panics() {
        Field::new(3).inv(0);
    }

    #[test]
    fn subfield_generator_has_full_order() {
        let f = Field::new(9);
        let g = f.subfield_generator(3);
        let mut seen = std::collections::HashSet::new();
        let mut x = 1u64;
        for _ in 0..7 {
            seen.insert(x);
            x = f.mul(x, g);
        }
        assert_eq!(x, 1);
        assert_eq!(seen.len(), 7);
    }
}
