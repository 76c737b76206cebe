//! Algebraic invariants checked on random inputs.

use std::sync::OnceLock;

use proptest::prelude::*;

use superq::hopf::{parity_elements, picture_changed, Grading, HopfStructure, PcMode, TensorElement};
use superq::presentation::Presentation;
use superq::rootdata::{enumerate_orders, Algebra, FundamentalSystem, RootVector};
use superq::superalg::{ideal_member, Ctx, FreeElement, Letter, MemberOptions, NormalForm, Side, Strategy as Rewrite, WordPoly};
use superq::QScalar;

struct Case {
    sys: FundamentalSystem,
    ctx: Ctx,
    standard: HopfStructure,
    changed: HopfStructure,
}

fn cases() -> &'static [Case] {
    static CASES: OnceLock<Vec<Case>> = OnceLock::new();
    CASES.get_or_init(|| {
        let mut out = Vec::new();
        for (alg, m, n) in [
            (Algebra::OspOdd, 1, 1),
            (Algebra::OspOdd, 2, 1),
            (Algebra::OspOdd, 1, 2),
            (Algebra::OspAff2, 1, 1),
            (Algebra::SlOddAff2, 1, 1),
        ] {
            for sp in enumerate_orders(m, n, alg.is_affine()).unwrap() {
                let Ok(sys) = FundamentalSystem::new(alg, &sp) else { continue };
                let ctx = Ctx::new(&sys, 1).unwrap();
                let standard = HopfStructure::standard(&ctx);
                let changed = picture_changed(&sys, &ctx).unwrap();
                out.push(Case { sys, ctx, standard, changed });
            }
        }
        out
    })
}

fn scalar() -> impl Strategy<Value = QScalar> {
    prop::collection::vec((-4i32..=4, -3i64..=3), 0..4).prop_map(|t| QScalar::laurent_v(&t))
}

fn q_scalar() -> impl Strategy<Value = QScalar> {
    prop::collection::vec((-3i32..=3, -3i64..=3), 0..4).prop_map(|t| QScalar::laurent_q(&t))
}

/// A ratio of two Laurent polynomials in `q`.
fn q_fraction() -> impl Strategy<Value = QScalar> {
    (q_scalar(), q_scalar().prop_filter("nonzero", |d| !d.is_zero()))
        .prop_map(|(a, b)| a.checked_div(&b).unwrap())
}

fn letter(rank: usize, kind: u8, node: usize) -> Letter {
    let i = (node % rank) as u8;
    match kind % 5 {
        0 => Letter::E(i),
        1 => Letter::F(i),
        2 => Letter::K(i),
        3 => Letter::KInv(i),
        _ => Letter::S(i),
    }
}

fn raw_word() -> impl Strategy<Value = Vec<(u8, usize)>> {
    prop::collection::vec((0u8..5, 0usize..8), 0..5)
}

fn word(rank: usize, raw: &[(u8, usize)]) -> Vec<Letter> {
    raw.iter().map(|&(k, n)| letter(rank, k, n)).collect()
}

fn element(ctx: &Ctx, raw: &[Vec<(u8, usize)>], coefs: &[QScalar]) -> FreeElement {
    let mut x = FreeElement::zero();
    for (w, c) in raw.iter().zip(coefs) {
        x.add_term(word(ctx.rank(), w), c.clone());
    }
    x
}

fn case_index() -> impl Strategy<Value = usize> {
    0..cases().len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalars_form_a_field(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
        prop_assert!((&a - &a).is_zero());
        if !b.is_zero() {
            prop_assert_eq!(&a.checked_div(&b).unwrap() * &b, a.clone());
        }
    }

    #[test]
    fn scalar_text_round_trips(a in scalar(), b in q_fraction()) {
        for x in [a, b] {
            let back: QScalar = x.to_string().parse().unwrap();
            prop_assert_eq!(back, x);
        }
    }

    #[test]
    fn negating_q_is_an_involutive_homomorphism(a in q_fraction(), b in q_fraction()) {
        let n = |x: &QScalar| x.substitute_negate_q().unwrap();
        prop_assert_eq!(n(&(&a + &b)), n(&a) + n(&b));
        prop_assert_eq!(n(&(&a * &b)), n(&a) * n(&b));
        prop_assert_eq!(n(&n(&a)), a.clone());
        prop_assert_eq!(n(&QScalar::q()), -QScalar::q());
    }

    #[test]
    fn odd_powers_of_v_do_not_negate(a in q_scalar()) {
        prop_assume!(!a.is_zero());
        prop_assert!((a * QScalar::v()).substitute_negate_q().is_err());
    }

    #[test]
    fn rewriting_strategies_agree(i in case_index(), raw in prop::collection::vec(raw_word(), 1..4), coefs in prop::collection::vec(scalar(), 3)) {
        let ctx = &cases()[i].ctx;
        let x = element(ctx, &raw, &coefs);
        let a = ctx.normalize_with(&x, Rewrite::RightMultiply);
        prop_assert_eq!(&a, &ctx.normalize_with(&x, Rewrite::LeftmostPair));
        prop_assert_eq!(&a, &ctx.normalize_with(&x, Rewrite::RightmostPair));
        prop_assert_eq!(&ctx.normalize(&a.to_free()), &a);
    }

    #[test]
    fn normal_form_text_round_trips(i in case_index(), raw in prop::collection::vec(raw_word(), 1..4), coefs in prop::collection::vec(scalar(), 3)) {
        let ctx = &cases()[i].ctx;
        let x = ctx.normalize(&element(ctx, &raw, &coefs));
        prop_assert_eq!(ctx.parse_normal(&ctx.format_normal(&x)).unwrap(), x);
    }

    #[test]
    fn multiplication_is_associative(i in case_index(), a in raw_word(), b in raw_word(), c in raw_word()) {
        let ctx = &cases()[i].ctx;
        let nf = |w: &[(u8, usize)]| ctx.normalize(&FreeElement::word(word(ctx.rank(), w)));
        let (a, b, c) = (nf(&a), nf(&b), nf(&c));
        let left = ctx.mul(&ctx.mul(&a, &b).unwrap(), &c).unwrap();
        let right = ctx.mul(&a, &ctx.mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn super_tensor_product_is_associative(i in case_index(), ws in prop::collection::vec(raw_word(), 6)) {
        let ctx = &cases()[i].ctx;
        let nf: Vec<NormalForm> = ws.iter().map(|w| ctx.normalize(&FreeElement::word(word(ctx.rank(), w)))).collect();
        let t = |a: usize, b: usize| TensorElement::tensor(&[&nf[a], &nf[b]]);
        let (x, y, z) = (t(0, 1), t(2, 3), t(4, 5));
        for g in [Grading::Standard, Grading::Trivial] {
            let left = x.mul(&y, ctx, g).unwrap().mul(&z, ctx, g).unwrap();
            let right = x.mul(&y.mul(&z, ctx, g).unwrap(), ctx, g).unwrap();
            prop_assert_eq!(left, right);
        }
    }

    #[test]
    fn sigma_grading_is_compatible_with_the_relations(i in case_index(), w in raw_word()) {
        let case = &cases()[i];
        let ctx = &case.ctx;
        let (_, u2) = parity_elements(&case.sys);
        let g = Grading::Sigma(u2);
        let w = word(ctx.rank(), &w);
        let expected = w.iter().filter(|&&l| g.letter_odd(ctx, l)).count() % 2 == 1;
        for m in ctx.normalize(&FreeElement::word(w)).terms().keys() {
            prop_assert_eq!(g.monomial_odd(ctx, m), expected);
        }
    }

    #[test]
    fn coproduct_and_counit_are_multiplicative(i in case_index(), a in raw_word(), b in raw_word()) {
        let case = &cases()[i];
        let ctx = &case.ctx;
        let (a, b) = (word(ctx.rank(), &a), word(ctx.rank(), &b));
        let ab: Vec<Letter> = a.iter().chain(&b).copied().collect();
        for h in [&case.standard, &case.changed] {
            let da = h.coproduct(&FreeElement::word(a.clone())).unwrap();
            let db = h.coproduct(&FreeElement::word(b.clone())).unwrap();
            prop_assert_eq!(h.coproduct(&FreeElement::word(ab.clone())).unwrap(), da.mul(&db, ctx, h.grading()).unwrap());
            let ea = h.counit(&FreeElement::word(a.clone())).unwrap();
            let eb = h.counit(&FreeElement::word(b.clone())).unwrap();
            prop_assert_eq!(h.counit(&FreeElement::word(ab.clone())).unwrap(), ea * eb);
        }
    }

    #[test]
    fn picture_change_by_one_element_round_trips(i in case_index(), w in raw_word()) {
        let case = &cases()[i];
        let (u1, _) = parity_elements(&case.sys);
        let h = &case.standard;
        let back = h.picture_change(u1, u1, PcMode::Pc).unwrap();
        let x = FreeElement::word(word(case.ctx.rank(), &w));
        prop_assert_eq!(back.coproduct(&x).unwrap(), h.coproduct(&x).unwrap());
        prop_assert_eq!(back.antipode(&x).unwrap(), h.antipode(&x).unwrap());
    }

    #[test]
    fn phi_is_an_involutive_isometry(i in case_index(), a in prop::collection::vec(-3i64..=3, 8), b in prop::collection::vec(-3i64..=3, 8)) {
        let space = &cases()[i].sys.space;
        let d = space.dim();
        let u = RootVector { coeffs: a[..d].to_vec() };
        let v = RootVector { coeffs: b[..d].to_vec() };
        let image = space.phi_space();
        prop_assert_eq!(
            image.bilinear(&space.phi_vector(&u), &space.phi_vector(&v)).unwrap(),
            space.bilinear(&u, &v).unwrap()
        );
        prop_assert_eq!(space.phi_inverse_vector(&space.phi_vector(&u)), u);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn certificates_replay_and_prescreen_agrees(
        i in case_index(),
        e_side in any::<bool>(),
        g in 0usize..64,
        extra in prop::collection::vec(0usize..8, 0..3),
        cuts in prop::collection::vec((0usize..3, -2i64..=2, 1i64..=3), 1..3),
        seed in any::<u64>(),
    ) {
        let case = &cases()[i];
        let p = Presentation::new(&case.sys, 1).unwrap();
        let rank = case.ctx.rank();
        let gens = p.ideal_generators(if e_side { Side::E } else { Side::F });
        let gen = &gens[g % gens.len()];
        let extra: Vec<u8> = extra.iter().map(|&n| (n % rank) as u8).collect();
        let mut x = WordPoly::zero();
        for &(cut, e, c) in &cuts {
            let cut = cut.min(extra.len());
            let coef = QScalar::q_pow(e) * QScalar::from_int(c);
            x = x.add(&gen.sandwich(&extra[..cut], &extra[cut..]).scale(&coef));
        }
        prop_assume!(!x.is_zero());
        let exact = ideal_member(&x, &gens, rank, &MemberOptions::default()).unwrap();
        prop_assert!(exact.member);
        prop_assert_eq!(exact.certificate.as_ref().unwrap().replay(&gens).unwrap(), x.clone());
        let screened = ideal_member(&x, &gens, rank, &MemberOptions { prescreen: Some(seed) }).unwrap();
        prop_assert!(screened.member);
        prop_assert_eq!(screened.certificate.unwrap().replay(&gens).unwrap(), x);
    }
}
