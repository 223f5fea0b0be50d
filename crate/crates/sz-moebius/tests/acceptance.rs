//! Acceptance gate: one test per criterion, each ending with a single
//! `ACCEPTANCE n: PASS` line (run with `--nocapture` to see them; a
//! failing criterion panics and prints `ACCEPTANCE n: FAIL`).

use std::collections::{HashMap, HashSet};
use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Signed};

use sz_moebius::catalog::{
    a_i_order, class_size, construct, divisors, group_order, normalizer_order, pow2, ClassLabel,
    Kind, C1, C2, C4,
};
use sz_moebius::enumeration::{
    closed_form_d2, closed_form_h4, closed_form_h5, closed_form_h7, n_gamma, order_count,
    GammaDescriptor,
};
use sz_moebius::group::{GroupElement, OvoidPoint, Suzuki};
use sz_moebius::moebius::{closed_form_mu, mu_table, n_count};
use sz_moebius::oracle::{closure, count_containing, order_census_of, pair_census, OracleContext};
use sz_moebius::perm::PermGroup;

const TESTED_E: [u32; 11] = [3, 5, 7, 9, 15, 21, 25, 27, 35, 45, 105];

static CTX: OnceLock<OracleContext> = OnceLock::new();

fn ctx() -> &'static OracleContext {
    CTX.get_or_init(|| OracleContext::new(3))
}

fn criterion(n: u32, description: &str, body: impl FnOnce()) {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(()) => println!("ACCEPTANCE {n}: PASS - {description}"),
        Err(payload) => {
            println!("ACCEPTANCE {n}: FAIL - {description}");
            resume_unwind(payload);
        }
    }
}

fn label(kind: Kind, level: u32) -> ClassLabel {
    ClassLabel { kind, level }
}

#[test]
fn criterion_01_recursion_matches_closed_forms() {
    criterion(1, "mu recursion equals the closed forms for 11 values of e", || {
        for e in TESTED_E {
            let table = mu_table(e);
            for &l in &table.classes {
                assert_eq!(*table.get(l), closed_form_mu(l, e), "{l} at e = {e}");
            }
        }
    });
}

#[test]
fn criterion_02_defining_identity_by_oracle() {
    criterion(2, "sum of mu over oracle-counted containments is the delta function", || {
        let checks = sz_moebius::oracle::verify_eq2(ctx());
        assert_eq!(checks.len(), 13);
        for c in &checks {
            assert!(c.pass, "{}: expected {} got {}", c.name, c.expected, c.actual);
        }
    });
}

#[test]
fn criterion_03_normalizer_orders() {
    criterion(3, "oracle normalizer sizes in Sz(8) match the catalog", || {
        let expected: HashMap<ClassLabel, u64> = [
            (label(Kind::G, 3), 29120),
            (label(Kind::F, 3), 448),
            (label(Kind::Q, 3), 448),
            (label(Kind::Z, 3), 448),
            (label(Kind::B0, 3), 14),
            (label(Kind::B1, 3), 20),
            (label(Kind::B2, 3), 52),
            (label(Kind::A0, 3), 14),
            (label(Kind::A1, 3), 20),
            (label(Kind::A2, 3), 52),
            (C4, 16),
            (C2, 64),
            (C1, 29120),
        ]
        .into();
        let ctx = ctx();
        for &l in &ctx.classes {
            let n = sz_moebius::oracle::normalizer(&ctx.gr, ctx.rep(l)).len() as u64;
            assert_eq!(n, expected[&l], "normalizer of {l}");
            assert_eq!(BigUint::from(n), normalizer_order(l, 3), "catalog {l}");
        }
    });
}

#[test]
fn criterion_04_containment_counts() {
    criterion(4, "oracle containment counts match the N(H;K) formulas", || {
        let ctx = ctx();
        for &h in &ctx.classes {
            for &k in &ctx.classes {
                let actual = if h == C1 {
                    ctx.conjugates[&k].len() as u64
                } else {
                    count_containing(ctx.rep(h), &ctx.conjugates[&k])
                };
                assert_eq!(
                    BigUint::from(actual),
                    n_count(h, k, 3),
                    "N({h};{k})"
                );
            }
        }
    });
}

#[test]
fn criterion_05_order_censuses() {
    criterion(5, "explicit order censuses match the per-class formulas", || {
        let ctx = ctx();
        for kind in [Kind::G, Kind::F, Kind::B0, Kind::B1, Kind::B2, Kind::A0] {
            let l = label(kind, 3);
            let census = order_census_of(&ctx.gr, ctx.rep(l));
            for n in [2u64, 4, 5, 7, 13] {
                let actual = census.get(&n).copied().unwrap_or(0);
                assert_eq!(
                    BigUint::from(actual),
                    order_count(l, n, 3),
                    "|{l}|_{n}"
                );
            }
        }
        // The full Sz(8) partition.
        let g = ctx.rep(label(Kind::G, 3));
        let census = order_census_of(&ctx.gr, g);
        let expected: HashMap<u64, u64> =
            [(1, 1), (2, 455), (4, 3640), (5, 5824), (7, 12480), (13, 6720)].into();
        assert_eq!(census, expected);
        assert_eq!(census.values().sum::<u64>(), 29120);
    });
}

#[test]
fn criterion_06_hecke_counts_three_ways() {
    criterion(6, "Hecke counts agree: inversion engine, closed forms, pair census", || {
        let cases: [(u32, fn(u32) -> BigUint, u64); 3] = [
            (4, closed_form_h4, 16),
            (5, closed_form_h5, 30),
            (7, closed_form_h7, 62),
        ];
        for (k, closed, at3) in cases {
            for e in TESTED_E {
                assert_eq!(
                    n_gamma(GammaDescriptor::HeckeSmooth(k), e),
                    closed(e),
                    "H{k} at e = {e}"
                );
            }
            assert_eq!(closed(3), BigUint::from(at3));
            let census = pair_census(&ctx().gr, k as u64);
            let aut = 3 * 29120u64;
            assert_eq!(census % aut, 0, "census for order {k} not divisible by |Aut G|");
            assert_eq!(census / aut, at3, "census / |Aut G| for order {k}");
        }
    });
}

#[test]
fn criterion_07_free_rank_two() {
    criterion(7, "free-group count equals the closed form for all odd e <= 105", || {
        for e in (3..=105u32).step_by(2) {
            assert_eq!(
                n_gamma(GammaDescriptor::FreeGroup(2), e),
                closed_form_d2(e),
                "d2 at e = {e}"
            );
        }
        assert_eq!(closed_form_d2(3), BigUint::from(9534u32));
    });
}

#[test]
fn criterion_08_cyclic_order_arithmetic() {
    criterion(8, "a_i divisibility, product and coprimality for all odd f | e <= 99", || {
        for e in (3..=99u32).step_by(2) {
            for f in divisors(e) {
                for i in [1, 2] {
                    assert!(
                        a_i_order(i, e).is_multiple_of(&a_i_order(i, f)),
                        "a_{i}({f}) must divide a_{i}({e})"
                    );
                }
                let a1 = a_i_order(1, f);
                let a2 = a_i_order(2, f);
                assert_eq!(&a1 * &a2, pow2(2 * f) + BigUint::one(), "product at f = {f}");
                // The four element-order supports are pairwise coprime.
                let supports = [BigUint::from(4u32), pow2(f) - BigUint::one(), a1, a2];
                for i in 0..4 {
                    for j in i + 1..4 {
                        assert!(
                            supports[i].gcd(&supports[j]).is_one(),
                            "supports {i},{j} share a factor at f = {f}"
                        );
                    }
                }
            }
        }
    });
}

#[test]
fn criterion_09_structural_properties() {
    criterion(9, "structural properties of the explicit Sz(8) action", || {
        let gr = Suzuki::new(3);

        // Bruhat uniqueness: 29120 distinct canonical forms, 448 fixing
        // infinity, and the closure of the generators reproduces them all.
        let all: Vec<GroupElement> = gr.elements().collect();
        let distinct: HashSet<GroupElement> = all.iter().copied().collect();
        assert_eq!(distinct.len(), 29120);
        let inf_stab = all
            .iter()
            .filter(|g| matches!(g, GroupElement::InF { .. }))
            .count();
        assert_eq!(inf_stab, 448);
        assert_eq!(closure(&gr, &gr.generators()).len(), 29120);

        // 2-transitivity on the 65 ovoid points.
        let perms: Vec<_> = gr.generators().iter().map(|&g| gr.permutation(g)).collect();
        let pg = PermGroup::new(65, &perms);
        let sizes = pg.orbit_sizes();
        assert_eq!(pg.order_u64(), 29120);
        assert!(sizes.len() >= 2 && sizes[0] == 65 && sizes[1] == 64);

        // Q acts regularly on the affine points.
        let q = ctx().rep(label(Kind::Q, 3));
        assert_eq!(q.len(), 64);
        let q_perms: Vec<_> = q.generators.iter().map(|&g| gr.permutation(g)).collect();
        let affine_orbit = sz_moebius::perm::orbit(65, OvoidPoint::OMEGA.0, &q_perms);
        assert_eq!(affine_orbit.len(), 64);
        for &g in &q.elements {
            if g != GroupElement::IDENTITY {
                let fixed = (0..65u32)
                    .filter(|&p| gr.act(g, OvoidPoint(p)) == OvoidPoint(p))
                    .count();
                assert_eq!(fixed, 1, "nontrivial Q element with extra fixed points");
            }
        }

        // Zassenhaus: no nonidentity element fixes three points.
        for &g in &all {
            if g != GroupElement::IDENTITY {
                let fixed = (0..65u32)
                    .filter(|&p| gr.act(g, OvoidPoint(p)) == OvoidPoint(p))
                    .count();
                assert!(fixed <= 2, "element {g:?} fixes {fixed} points");
            }
        }

        // Subfield subgroup G(1) is semiregular off the subfield ovoid.
        let g1 = closure(
            &gr,
            &[
                GroupElement::InF { alpha: 1, beta: 0, kappa: 1 },
                GroupElement::InF { alpha: 0, beta: 1, kappa: 1 },
                gr.tau(),
            ],
        );
        assert_eq!(g1.len(), 20);
        let sub_ovoid: HashSet<u32> = [0, 1, 2, 9, 10].into();
        for &g in &g1.elements {
            if g != GroupElement::IDENTITY {
                for p in 0..65u32 {
                    if !sub_ovoid.contains(&p) {
                        assert_ne!(
                            gr.act(g, OvoidPoint(p)),
                            OvoidPoint(p),
                            "subfield subgroup fixes a point off its ovoid"
                        );
                    }
                }
            }
        }

        // A single class of involutions.
        let z = GroupElement::InF { alpha: 0, beta: 1, kappa: 1 };
        let involutions: Vec<GroupElement> = all
            .iter()
            .copied()
            .filter(|&g| gr.element_order(g) == 2)
            .collect();
        assert_eq!(involutions.len(), 455);
        let class: HashSet<GroupElement> =
            all.iter().map(|&g| gr.conjugate(z, g)).collect();
        assert_eq!(class.len(), 455);

        // Order-4 elements are not real: y is never conjugate to y^{-1}.
        let y = GroupElement::InF { alpha: 1, beta: 0, kappa: 1 };
        assert_eq!(gr.element_order(y), 4);
        let y_inv = gr.inverse(y);
        assert!(all.iter().all(|&g| gr.conjugate(y, g) != y_inv));
    });
}

#[test]
fn criterion_10_conder_divisibility() {
    criterion(10, "|G| divides mu of the identity class for all tested e", || {
        for e in TESTED_E {
            let mu_i = mu_table(e).get(C1).clone();
            // mu(C1) = |G| mu(e), so it vanishes for non-squarefree e;
            // zero is divisible by everything.
            assert!(
                mu_i.abs().to_biguint().unwrap().is_multiple_of(&group_order(e)),
                "divisibility fails at e = {e}"
            );
        }
    });
}

#[test]
fn class_size_normalizer_product() {
    // Sanity tying the three catalog quantities together for the tested e.
    for e in TESTED_E {
        for l in sz_moebius::catalog::canonical_classes(e) {
            assert_eq!(class_size(l, e) * normalizer_order(l, e), group_order(e));
        }
    }
}

#[test]
fn constructed_representatives_have_catalog_orders() {
    let gr = Suzuki::new(3);
    for l in sz_moebius::catalog::canonical_classes(3) {
        let inst = construct(&gr, l);
        assert_eq!(
            BigUint::from(closure(&gr, &inst.generators).len()),
            sz_moebius::catalog::class_order(l, 3),
            "{l}"
        );
    }
}
