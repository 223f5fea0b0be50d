//! Explicit construction of the Suzuki group Sz(2^e) as a 4x4 matrix group,
//! with unique Bruhat canonical forms and the doubly transitive action on
//! the ovoid of q^2 + 1 projective points.
//!
//! Elements are stored in canonical form, one of
//!
//! * `InF(alpha, beta, kappa)`    meaning (alpha,beta) * a_kappa, the
//!   stabiliser of the point at infinity (q^2(q-1) elements), or
//! * `BigCell(alpha, beta, kappa, gamma, delta)` meaning
//!   (alpha,beta) * a_kappa * tau * (gamma,delta) (q^4(q-1) elements).
//!
//! Together these account for exactly |G| = q^2(q^2+1)(q-1) elements, and
//! the form is unique (verified exhaustively at e=3 by the oracle suite),
//! so equality and hashing are structural.

use crate::field::{Field, FieldElement};

/// A group element in Bruhat canonical form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    /// (alpha, beta) * a_kappa; fixes the point at infinity.
    InF {
        alpha: FieldElement,
        beta: FieldElement,
        kappa: FieldElement,
    },
    /// (alpha, beta) * a_kappa * tau * (gamma, delta).
    BigCell {
        alpha: FieldElement,
        beta: FieldElement,
        kappa: FieldElement,
        gamma: FieldElement,
        delta: FieldElement,
    },
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement::InF {
        alpha: 0,
        beta: 0,
        kappa: 1,
    };

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    /// Packs the canonical form into a single integer, strictly monotone in
    /// the derived ordering for a fixed field; used as a subgroup fingerprint.
    pub fn encode(&self, e: u32) -> u64 {
        let w = e as u64;
        match *self {
            GroupElement::InF { alpha, beta, kappa } => {
                ((alpha << w | beta) << w) | kappa
            }
            GroupElement::BigCell {
                alpha,
                beta,
                kappa,
                gamma,
                delta,
            } => {
                let hi = ((alpha << w | beta) << w) | kappa;
                (1 << 63) | (hi << (2 * w)) | (gamma << w) | delta
            }
        }
    }
}

/// A point of the ovoid, encoded as an index in [0, q^2].
///
/// Index 0 is the point at infinity [1,0,0,0]; index 1 + (alpha*q + beta)
/// is the affine point [alpha^(theta+2) + alpha*beta + beta^theta, beta,
/// alpha, 1], so index 1 is omega = [0,0,0,1].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OvoidPoint(pub u32);

impl OvoidPoint {
    pub const INFINITY: OvoidPoint = OvoidPoint(0);
    pub const OMEGA: OvoidPoint = OvoidPoint(1);
}

type Matrix = [[FieldElement; 4]; 4];

#[derive(Debug)]
pub enum CanonError {
    /// The matrix is not an element of Sz(q).
    NotInGroup,
}

impl std::fmt::Display for CanonError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "matrix is not an element of the Suzuki group")
    }
}

impl std::error::Error for CanonError {}

/// The group context: the field plus matrix machinery.
#[derive(Debug, Clone)]
pub struct Suzuki {
    field: Field,
}

impl Suzuki {
    /// Explicit construction; supported for small odd e only (the symbolic
    /// layers never instantiate this).
    pub fn new(e: u32) -> Suzuki {
        assert!(e <= 9, "explicit Suzuki construction is limited to e <= 9");
        Suzuki {
            field: Field::new(e),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn degree_e(&self) -> u32 {
        self.field.degree()
    }

    /// q = 2^e.
    pub fn q(&self) -> u64 {
        self.field.order()
    }

    /// |G| = q^2 (q^2 + 1) (q - 1).
    pub fn order(&self) -> u64 {
        let q = self.q();
        q * q * (q * q + 1) * (q - 1)
    }

    /// |Omega| = q^2 + 1.
    pub fn ovoid_size(&self) -> u64 {
        self.q() * self.q() + 1
    }

    // ---- the Q-subgroup product law and a_kappa conjugation ----

    /// (alpha, beta)(gamma, delta) = (alpha + gamma, alpha gamma^theta + beta + delta).
    pub fn mul_q(
        &self,
        p1: (FieldElement, FieldElement),
        p2: (FieldElement, FieldElement),
    ) -> (FieldElement, FieldElement) {
        let f = &self.field;
        let (alpha, beta) = p1;
        let (gamma, delta) = p2;
        (
            f.add(alpha, gamma),
            f.add(f.mul(alpha, f.theta(gamma)), f.add(beta, delta)),
        )
    }

    /// Inverse in Q: (alpha, beta)^-1 = (alpha, alpha^(theta+1) + beta).
    pub fn inv_q(&self, p: (FieldElement, FieldElement)) -> (FieldElement, FieldElement) {
        let f = &self.field;
        let (alpha, beta) = p;
        (alpha, f.add(f.mul(f.theta(alpha), alpha), beta))
    }

    /// a_kappa^-1 (alpha, beta) a_kappa = (alpha kappa, beta kappa^(1+theta)).
    pub fn conj_by_a(
        &self,
        p: (FieldElement, FieldElement),
        kappa: FieldElement,
    ) -> (FieldElement, FieldElement) {
        assert!(kappa != 0, "a_kappa requires kappa != 0");
        let f = &self.field;
        let (alpha, beta) = p;
        (
            f.mul(alpha, kappa),
            f.mul(beta, f.mul(kappa, f.theta(kappa))),
        )
    }

    // ---- matrices ----

    /// The lower unitriangular matrix of (alpha, beta).
    pub fn q_matrix(&self, alpha: FieldElement, beta: FieldElement) -> Matrix {
        let f = &self.field;
        let at = f.theta(alpha);
        let bt = f.theta(beta);
        let a_t1 = f.mul(at, alpha); // alpha^(theta+1)
        let a_t2 = f.mul(a_t1, alpha); // alpha^(theta+2)
        [
            [1, 0, 0, 0],
            [alpha, 1, 0, 0],
            [f.add(a_t1, beta), at, 1, 0],
            [f.add(f.add(a_t2, f.mul(alpha, beta)), bt), beta, alpha, 1],
        ]
    }

    /// The diagonal matrix a_kappa, kappa != 0.
    pub fn a_matrix(&self, kappa: FieldElement) -> Matrix {
        assert!(kappa != 0, "a_kappa requires kappa != 0");
        let f = &self.field;
        // zeta2^theta = kappa, zeta1^theta = kappa^(1+theta).
        let z2 = f.theta_inv(kappa);
        let z1 = f.mul(f.theta_inv(kappa), kappa); // theta_inv(kappa * kappa^theta)
        let mut m = [[0; 4]; 4];
        m[0][0] = z1;
        m[1][1] = z2;
        m[2][2] = f.inv(z2);
        m[3][3] = f.inv(z1);
        m
    }

    /// tau: the anti-diagonal permutation matrix, an involution.
    pub fn tau_matrix(&self) -> Matrix {
        let mut m = [[0; 4]; 4];
        for i in 0..4 {
            m[i][3 - i] = 1;
        }
        m
    }

    pub fn mat_mul(&self, a: &Matrix, b: &Matrix) -> Matrix {
        let f = &self.field;
        let mut c = [[0; 4]; 4];
        for i in 0..4 {
            for k in 0..4 {
                let aik = a[i][k];
                if aik == 0 {
                    continue;
                }
                for j in 0..4 {
                    c[i][j] = f.add(c[i][j], f.mul(aik, b[k][j]));
                }
            }
        }
        c
    }

    /// The matrix of a canonical-form element.
    pub fn matrix(&self, g: GroupElement) -> Matrix {
        match g {
            GroupElement::InF { alpha, beta, kappa } => {
                self.mat_mul(&self.q_matrix(alpha, beta), &self.a_matrix(kappa))
            }
            GroupElement::BigCell {
                alpha,
                beta,
                kappa,
                gamma,
                delta,
            } => {
                let m = self.mat_mul(&self.q_matrix(alpha, beta), &self.a_matrix(kappa));
                let m = self.mat_mul(&m, &self.tau_matrix());
                self.mat_mul(&m, &self.q_matrix(gamma, delta))
            }
        }
    }

    /// Bruhat canonical form of a matrix of G. Errors if the matrix does not
    /// round-trip, i.e. is not an element of the group.
    pub fn canonicalize(&self, m: &Matrix) -> Result<GroupElement, CanonError> {
        let f = &self.field;
        let g = if m[0][1] == 0 && m[0][2] == 0 && m[0][3] == 0 {
            // Fixes infinity: lower triangular (alpha,beta) a_kappa.
            let z1 = m[0][0];
            let z2 = m[1][1];
            if z1 == 0 || z2 == 0 {
                return Err(CanonError::NotInGroup);
            }
            let kappa = f.theta(z2);
            let alpha = f.mul(m[1][0], f.inv(z1));
            let beta = f.mul(m[3][1], f.inv(z2));
            GroupElement::InF { alpha, beta, kappa }
        } else {
            // Big cell: first row is z1 * (last row of (gamma, delta)),
            // whose final entry is 1, so z1 = m[0][3].
            let z1 = m[0][3];
            if z1 == 0 {
                return Err(CanonError::NotInGroup);
            }
            let inv_z1 = f.inv(z1);
            let gamma = f.mul(m[0][2], inv_z1);
            let delta = f.mul(m[0][1], inv_z1);
            // Strip tau * (gamma, delta) from the right and read off InF.
            let (gi, di) = self.inv_q((gamma, delta));
            let rest = self.mat_mul(
                &self.mat_mul(m, &self.q_matrix(gi, di)),
                &self.tau_matrix(),
            );
            if rest[0][1] != 0 || rest[0][2] != 0 || rest[0][3] != 0 {
                return Err(CanonError::NotInGroup);
            }
            let z1f = rest[0][0];
            let z2f = rest[1][1];
            if z1f == 0 || z2f == 0 {
                return Err(CanonError::NotInGroup);
            }
            let kappa = f.theta(z2f);
            let alpha = f.mul(rest[1][0], f.inv(z1f));
            let beta = f.mul(rest[3][1], f.inv(z2f));
            GroupElement::BigCell {
                alpha,
                beta,
                kappa,
                gamma,
                delta,
            }
        };
        if self.matrix(g) == *m {
            Ok(g)
        } else {
            Err(CanonError::NotInGroup)
        }
    }

    // ---- group operations ----

    pub fn mul(&self, g: GroupElement, h: GroupElement) -> GroupElement {
        let m = self.mat_mul(&self.matrix(g), &self.matrix(h));
        self.canonicalize(&m)
            .expect("product of group elements stays in the group")
    }

    pub fn inverse(&self, g: GroupElement) -> GroupElement {
        let f = &self.field;
        // Invert factor by factor; cheaper and more robust than a general
        // 4x4 inverse.
        let m = match g {
            GroupElement::InF { alpha, beta, kappa } => {
                let (ai, bi) = self.inv_q((alpha, beta));
                self.mat_mul(&self.a_matrix(f.inv(kappa)), &self.q_matrix(ai, bi))
            }
            GroupElement::BigCell {
                alpha,
                beta,
                kappa,
                gamma,
                delta,
            } => {
                let (ai, bi) = self.inv_q((alpha, beta));
                let (gi, di) = self.inv_q((gamma, delta));
                let m = self.mat_mul(&self.q_matrix(gi, di), &self.tau_matrix());
                let m = self.mat_mul(&m, &self.a_matrix(f.inv(kappa)));
                self.mat_mul(&m, &self.q_matrix(ai, bi))
            }
        };
        self.canonicalize(&m).expect("inverse stays in the group")
    }

    pub fn conjugate(&self, g: GroupElement, by: GroupElement) -> GroupElement {
        self.mul(self.mul(self.inverse(by), g), by)
    }

    pub fn pow(&self, g: GroupElement, mut k: u64) -> GroupElement {
        let mut base = g;
        let mut acc = GroupElement::IDENTITY;
        while k != 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Multiplicative order. Tries the candidate orders 4, q-1, a_1(e),
    /// a_2(e) (every element order divides one of them) and strips prime
    /// factors to find the exact order.
    pub fn element_order(&self, g: GroupElement) -> u64 {
        if g.is_identity() {
            return 1;
        }
        let q = self.q();
        let e = self.degree_e();
        let r = 1u64 << ((e + 1) / 2);
        let chi_pos = matches!(e % 8, 1 | 7);
        let (a1, a2) = if chi_pos {
            (q + r + 1, q - r + 1)
        } else {
            (q - r + 1, q + r + 1)
        };
        for cand in [4u64, q - 1, a1, a2] {
            if cand == 0 || !self.pow(g, cand).is_identity() {
                continue;
            }
            // Exact order divides cand: strip primes.
            let mut ord = cand;
            let mut n = cand;
            let mut p = 2u64;
            let mut primes = Vec::new();
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
                while ord % p == 0 && self.pow(g, ord / p).is_identity() {
                    ord /= p;
                }
            }
            return ord;
        }
        // Candidates cover all element orders; falling through means the
        // input was not a group element.
        unreachable!("element order divides 4, q-1 or q^2+1");
    }

    // ---- ovoid action ----

    pub fn point_of_pair(&self, alpha: FieldElement, beta: FieldElement) -> OvoidPoint {
        OvoidPoint(1 + (alpha * self.q() + beta) as u32)
    }

    fn pair_of_point(&self, p: OvoidPoint) -> (FieldElement, FieldElement) {
        debug_assert!(p.0 >= 1);
        let idx = (p.0 - 1) as u64;
        (idx / self.q(), idx % self.q())
    }

    /// g: [v] -> [vg] restricted to the ovoid.
    pub fn act(&self, g: GroupElement, p: OvoidPoint) -> OvoidPoint {
        let f = &self.field;
        let m = self.matrix(g);
        let v: [FieldElement; 4] = if p == OvoidPoint::INFINITY {
            [1, 0, 0, 0]
        } else {
            let (alpha, beta) = self.pair_of_point(p);
            let x = f.add(
                f.add(f.mul(f.mul(f.theta(alpha), alpha), alpha), f.mul(alpha, beta)),
                f.theta(beta),
            );
            [x, beta, alpha, 1]
        };
        let mut w = [0u64; 4];
        for j in 0..4 {
            for i in 0..4 {
                if v[i] != 0 {
                    w[j] = f.add(w[j], f.mul(v[i], m[i][j]));
                }
            }
        }
        if w[3] == 0 {
            debug_assert!(w[1] == 0 && w[2] == 0 && w[0] != 0);
            OvoidPoint::INFINITY
        } else {
            let inv = f.inv(w[3]);
            self.point_of_pair(f.mul(w[2], inv), f.mul(w[1], inv))
        }
    }

    /// The permutation of the full ovoid induced by g, as an image table.
    pub fn permutation(&self, g: GroupElement) -> Vec<u32> {
        (0..self.ovoid_size() as u32)
            .map(|i| self.act(g, OvoidPoint(i)).0)
            .collect()
    }

    // ---- element enumeration (Bruhat-lexicographic, deterministic) ----

    /// All group elements: InF forms first, then big-cell forms, each in
    /// lexicographic order of their field coordinates.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        let q = self.q();
        let in_f = (0..q).flat_map(move |alpha| {
            (0..q).flat_map(move |beta| {
                (1..q).map(move |kappa| GroupElement::InF { alpha, beta, kappa })
            })
        });
        let big = (0..q).flat_map(move |alpha| {
            (0..q).flat_map(move |beta| {
                (1..q).flat_map(move |kappa| {
                    (0..q).flat_map(move |gamma| {
                        (0..q).map(move |delta| GroupElement::BigCell {
                            alpha,
                            beta,
                            kappa,
                            gamma,
                            delta,
                        })
                    })
                })
            })
        });
        in_f.chain(big)
    }

    // ---- standard generators ----

    /// Generators of G: (1,0), (0,1), a_g for a multiplicative generator g,
    /// and tau. For e = 1 the a_kappa part is trivial and omitted.
    pub fn generators(&self) -> Vec<GroupElement> {
        let mut gens = self.f_generators();
        gens.push(self.tau());
        gens
    }

    /// Generators of F = G_infinity.
    pub fn f_generators(&self) -> Vec<GroupElement> {
        let mut gens = vec![
            GroupElement::InF { alpha: 1, beta: 0, kappa: 1 },
            GroupElement::InF { alpha: 0, beta: 1, kappa: 1 },
        ];
        if self.q() > 2 {
            gens.push(GroupElement::InF {
                alpha: 0,
                beta: 0,
                kappa: self.field.subfield_generator(self.degree_e()),
            });
        }
        gens
    }

    pub fn tau(&self) -> GroupElement {
        GroupElement::BigCell {
            alpha: 0,
            beta: 0,
            kappa: 1,
            gamma: 0,
            delta: 0,
        }
    }
}
