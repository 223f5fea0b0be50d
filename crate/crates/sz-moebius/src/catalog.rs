//! The catalogue of subgroup conjugacy classes of Sz(2^e) on which the
//! Möbius function is computed: symbolic labels with alias resolution,
//! exact orders, normaliser orders, and explicit representatives for
//! small e.
//!
//! A raw label is a pair (kind, f) with f | e, from the ten families
//! G, F, Q, Z, B0, B1, B2, A0, A1, A2 restricted to the subfield level f.
//! Several level-1 labels coincide or are conjugate; canonicalisation
//! maps them to a single representative:
//!
//! * A0(1) = A2(1) = I, the identity class, printed "C1";
//! * Z(1) ~ B0(1), cyclic of order 2, printed "C2";
//! * F(1) = Q(1) ~ B2(1), cyclic of order 4, printed "C4";
//! * G(1) ~ B1(1), the AGL_1(5)-class;
//! * if 3 | e additionally B1(1) = B1(3) and A1(1) = A1(3).

use num_bigint::BigUint;
use num_traits::One;

use crate::field::FieldElement;
use crate::group::{GroupElement, Suzuki};
use crate::perm::{Perm, PermGroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    G,
    F,
    Q,
    Z,
    B0,
    B1,
    B2,
    A0,
    A1,
    A2,
}

impl Kind {
    pub const ALL: [Kind; 10] = [
        Kind::G,
        Kind::F,
        Kind::Q,
        Kind::Z,
        Kind::B0,
        Kind::B1,
        Kind::B2,
        Kind::A0,
        Kind::A1,
        Kind::A2,
    ];

    fn name(&self) -> &'static str {
        match self {
            Kind::G => "G",
            Kind::F => "F",
            Kind::Q => "Q",
            Kind::Z => "Z",
            Kind::B0 => "B0",
            Kind::B1 => "B1",
            Kind::B2 => "B2",
            Kind::A0 => "A0",
            Kind::A1 => "A1",
            Kind::A2 => "A2",
        }
    }

    /// Tie-break rank for equal subgroup orders.
    fn rank(&self) -> u8 {
        match self {
            Kind::G => 0,
            Kind::F => 1,
            Kind::Q => 2,
            Kind::B1 => 3,
            Kind::B2 => 4,
            Kind::B0 => 5,
            Kind::Z => 6,
            Kind::A1 => 7,
            Kind::A2 => 8,
            Kind::A0 => 9,
        }
    }
}

/// A canonical conjugacy-class label (kind, level), alias-resolved for a
/// fixed e. Construct through [`ClassLabel::canonical`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ClassLabel {
    pub kind: Kind,
    pub level: u32,
}

/// The identity class C1 (canonical form of A0(1) = A2(1)).
pub const C1: ClassLabel = ClassLabel { kind: Kind::A0, level: 1 };
/// The order-2 class C2 (canonical form of Z(1) ~ B0(1)).
pub const C2: ClassLabel = ClassLabel { kind: Kind::B0, level: 1 };
/// The order-4 class C4 (canonical form of F(1) = Q(1) ~ B2(1)).
pub const C4: ClassLabel = ClassLabel { kind: Kind::B2, level: 1 };

impl ClassLabel {
    /// Resolves (kind, f) to its canonical class label for the given e.
    /// Panics unless f | e.
    pub fn canonical(kind: Kind, f: u32, e: u32) -> ClassLabel {
        assert!(f >= 1 && e % f == 0, "level {f} does not divide e = {e}");
        if f > 1 {
            return ClassLabel { kind, level: f };
        }
        match kind {
            Kind::A0 | Kind::A2 => C1,
            Kind::Z | Kind::B0 => C2,
            Kind::F | Kind::Q | Kind::B2 => C4,
            Kind::G | Kind::B1 => {
                let level = if e % 3 == 0 { 3 } else { 1 };
                ClassLabel { kind: Kind::B1, level }
            }
            Kind::A1 => {
                let level = if e % 3 == 0 { 3 } else { 1 };
                ClassLabel { kind: Kind::A1, level }
            }
        }
    }

    pub fn is_canonical(&self, e: u32) -> bool {
        *self == ClassLabel::canonical(self.kind, self.level, e)
    }

    /// The canonical serialised name: "C1"/"C2"/"C4" for the small cyclic
    /// classes, otherwise "KIND(f)".
    pub fn name(&self) -> String {
        match *self {
            C1 => "C1".to_string(),
            C2 => "C2".to_string(),
            C4 => "C4".to_string(),
            ClassLabel { kind, level } => format!("{}({})", kind.name(), level),
        }
    }

    /// Parses a canonical name as produced by [`ClassLabel::name`].
    pub fn parse(s: &str) -> Option<ClassLabel> {
        match s {
            "C1" => return Some(C1),
            "C2" => return Some(C2),
            "C4" => return Some(C4),
            _ => {}
        }
        let open = s.find('(')?;
        if !s.ends_with(')') {
            return None;
        }
        let kind = Kind::ALL.iter().find(|k| k.name() == &s[..open])?;
        let level: u32 = s[open + 1..s.len() - 1].parse().ok()?;
        Some(ClassLabel { kind: *kind, level })
    }
}

impl std::fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.name())
    }
}

// ---- symbolic arithmetic ----

pub fn pow2(k: u32) -> BigUint {
    BigUint::one() << k
}

/// chi(e) = +1 if e = +-1 mod 8, -1 if e = +-3 mod 8. Panics on even e.
pub fn chi(e: u32) -> i32 {
    assert!(e % 2 == 1, "chi is defined for odd arguments, got {e}");
    match e % 8 {
        1 | 7 => 1,
        3 | 5 => -1,
        _ => unreachable!(),
    }
}

/// a_i(f) = 2^f + (-1)^(i+1) chi(f) 2^((f+1)/2) + 1, so that
/// a_1(f) a_2(f) = 2^(2f) + 1 and a_i(f) | a_i(e) whenever f | e.
pub fn a_i_order(i: u8, f: u32) -> BigUint {
    assert!(i == 1 || i == 2, "index must be 1 or 2");
    assert!(f % 2 == 1, "level must be odd, got {f}");
    let sign = if i == 1 { chi(f) } else { -chi(f) };
    let main = pow2(f) + BigUint::one();
    let half = pow2((f + 1) / 2);
    if sign > 0 {
        main + half
    } else {
        main - half
    }
}

/// |Sz(2^e)| = 2^(2e) (2^(2e) + 1) (2^e - 1).
pub fn group_order(e: u32) -> BigUint {
    pow2(2 * e) * (pow2(2 * e) + BigUint::one()) * (pow2(e) - BigUint::one())
}

/// |H| for a canonical class label.
pub fn class_order(label: ClassLabel, e: u32) -> BigUint {
    assert!(label.is_canonical(e), "non-canonical label {label}");
    let f = label.level;
    match label.kind {
        Kind::G => group_order(f),
        Kind::F => pow2(2 * f) * (pow2(f) - BigUint::one()),
        Kind::Q => pow2(2 * f),
        Kind::Z => pow2(f),
        Kind::B0 => 2u32 * (pow2(f) - BigUint::one()),
        Kind::B1 => 4u32 * a_i_order(1, f),
        Kind::B2 => 4u32 * a_i_order(2, f),
        Kind::A0 => pow2(f) - BigUint::one(),
        Kind::A1 => a_i_order(1, f),
        Kind::A2 => a_i_order(2, f),
    }
}

/// |N_G(H)| for a canonical class label.
pub fn normalizer_order(label: ClassLabel, e: u32) -> BigUint {
    assert!(label.is_canonical(e), "non-canonical label {label}");
    let f = label.level;
    match (label.kind, f) {
        // Self-normalising families.
        (Kind::G | Kind::F | Kind::B1, _) => class_order(label, e),
        (Kind::B0 | Kind::B2, lf) if lf > 1 => class_order(label, e),
        // N(Q(f)) = 2^(e+f) (2^f - 1), N(Z(f)) = 2^(2e) (2^f - 1).
        (Kind::Q, _) => pow2(e + f) * (pow2(f) - BigUint::one()),
        (Kind::Z, _) => pow2(2 * e) * (pow2(f) - BigUint::one()),
        // N(A_0(f)) = B_0, dihedral of order 2(q - 1); N(A_i(f)) = B_i.
        (Kind::A0, lf) if lf > 1 => 2u32 * (pow2(e) - BigUint::one()),
        (Kind::A1, _) => 4u32 * a_i_order(1, e),
        (Kind::A2, lf) if lf > 1 => 4u32 * a_i_order(2, e),
        // The small cyclic classes.
        (Kind::B2, _) => pow2(e + 1),        // |N(C4)| = 2q
        (Kind::B0, _) => pow2(2 * e),        // |N(C2)| = q^2
        (Kind::A0, _) => group_order(e),     // N(I) = G
        _ => unreachable!(),
    }
}

/// |G| / |N_G(H)|, the number of conjugates of H.
pub fn class_size(label: ClassLabel, e: u32) -> BigUint {
    group_order(e) / normalizer_order(label, e)
}

pub fn divisors(e: u32) -> Vec<u32> {
    let mut d: Vec<u32> = (1..=e).filter(|k| e % k == 0).collect();
    d.sort_unstable();
    d
}

/// All canonical class labels for this e, ordered by decreasing subgroup
/// order, ties broken by kind rank then level descending. The order is a
/// linear extension of containment, which the Möbius recursion requires.
pub fn canonical_classes(e: u32) -> Vec<ClassLabel> {
    assert!(e % 2 == 1 && e > 1, "e must be odd and > 1, got {e}");
    let mut set: Vec<ClassLabel> = Vec::new();
    for f in divisors(e) {
        for kind in Kind::ALL {
            let label = ClassLabel::canonical(kind, f, e);
            if !set.contains(&label) {
                set.push(label);
            }
        }
    }
    set.sort_by(|a, b| {
        class_order(*b, e)
            .cmp(&class_order(*a, e))
            .then(a.kind.rank().cmp(&b.kind.rank()))
            .then(b.level.cmp(&a.level))
    });
    set
}

/// Bundled exact data for one class.
#[derive(Debug, Clone)]
pub struct ClassData {
    pub label: ClassLabel,
    pub order: BigUint,
    pub normalizer_order: BigUint,
    pub class_size: BigUint,
}

pub fn class_data(label: ClassLabel, e: u32) -> ClassData {
    ClassData {
        label,
        order: class_order(label, e),
        normalizer_order: normalizer_order(label, e),
        class_size: class_size(label, e),
    }
}

// ---- explicit construction ----

/// A concrete representative of a class inside an explicit Sz(2^e):
/// generators plus a stabiliser chain for its permutation image.
pub struct SubgroupInstance {
    pub label: ClassLabel,
    pub generators: Vec<GroupElement>,
    pub perm: PermGroup,
}

fn q_pair(alpha: FieldElement, beta: FieldElement) -> GroupElement {
    GroupElement::InF { alpha, beta, kappa: 1 }
}

fn a_kappa(kappa: FieldElement) -> GroupElement {
    GroupElement::InF { alpha: 0, beta: 0, kappa }
}

/// Deterministic search (Bruhat-lexicographic order) for the first element
/// of the given multiplicative order.
fn find_element_of_order(gr: &Suzuki, order: u64) -> GroupElement {
    gr.elements()
        .find(|&g| gr.element_order(g) == order)
        .expect("element of the requested order exists in the group")
}

/// Generator of a cyclic A_i = <a> with |a| = a_i(e), plus the order-4
/// element c_i with c_i^-1 a c_i = a^(2^e). Both found deterministically.
fn singer_pair(gr: &Suzuki, i: u8) -> (GroupElement, GroupElement) {
    let e = gr.degree_e();
    let ai: u64 = a_i_order(i, e).try_into().expect("a_i fits u64 for explicit e");
    let a = find_element_of_order(gr, ai);
    let target = gr.pow(a, gr.q() % ai);
    let c = gr
        .elements()
        .find(|&c| gr.element_order(c) == 4 && gr.conjugate(a, c) == target)
        .expect("normalising element of order 4 exists");
    (a, c)
}

/// Builds the canonical representative of a class inside the explicit
/// group, verifying its order against the catalogue formula.
pub fn construct(gr: &Suzuki, label: ClassLabel) -> SubgroupInstance {
    let e = gr.degree_e();
    let f = label.level;
    let fld = gr.field();
    let basis = |lvl: u32| fld.subfield_basis(lvl);
    let gens: Vec<GroupElement> = match (label.kind, f) {
        (Kind::A0, 1) => Vec::new(), // C1
        (Kind::B0, 1) => vec![gr.tau()], // C2 = <tau>, an involution
        (Kind::B2, 1) => vec![q_pair(1, 0)], // C4 = <y>, y = (1,0) of order 4
        (Kind::G, _) | (Kind::F, _) => {
            let mut g: Vec<GroupElement> = Vec::new();
            for b in basis(f) {
                g.push(q_pair(b, 0));
                g.push(q_pair(0, b));
            }
            if f > 1 {
                g.push(a_kappa(fld.subfield_generator(f)));
            }
            if label.kind == Kind::G {
                g.push(gr.tau());
            }
            g
        }
        (Kind::Q, _) => {
            let mut g = Vec::new();
            for b in basis(f) {
                g.push(q_pair(b, 0));
                g.push(q_pair(0, b));
            }
            g
        }
        (Kind::Z, _) => basis(f).into_iter().map(|b| q_pair(0, b)).collect(),
        (Kind::A0, _) => vec![a_kappa(fld.subfield_generator(f))],
        (Kind::B0, _) => vec![a_kappa(fld.subfield_generator(f)), gr.tau()],
        (Kind::A1, _) | (Kind::A2, _) | (Kind::B1, _) => {
            let i = if label.kind == Kind::A2 { 2 } else { 1 };
            let (a, c) = singer_pair(gr, i);
            let ai_e: u64 = a_i_order(i, e).try_into().unwrap();
            let ai_f: u64 = a_i_order(i, f).try_into().unwrap();
            let sub = gr.pow(a, ai_e / ai_f); // unique subgroup of order a_i(f)
            match label.kind {
                Kind::A1 | Kind::A2 => vec![sub],
                _ => vec![sub, c],
            }
        }
        (Kind::B2, _) => {
            let (a, c) = singer_pair(gr, 2);
            let ai_e: u64 = a_i_order(2, e).try_into().unwrap();
            let ai_f: u64 = a_i_order(2, f).try_into().unwrap();
            vec![gr.pow(a, ai_e / ai_f), c]
        }
    };
    let degree = gr.ovoid_size() as usize;
    let perms: Vec<Perm> = gens.iter().map(|&g| gr.permutation(g)).collect();
    let perm = PermGroup::new(degree, &perms);
    let expected = class_order(label, e);
    assert_eq!(
        perm.order(),
        expected,
        "constructed {label} has wrong order"
    );
    SubgroupInstance {
        label,
        generators: gens,
        perm,
    }
}
