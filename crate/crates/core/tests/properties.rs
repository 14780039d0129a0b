use proptest::prelude::*;

use opdp::freegamma::{FreeElem, Gamma};
use opdp::levelstep::{enumerate_bhs, level_dot, level_star, phi_eval_bhs, Bhs, StepFunction};
use opdp::permcomb::{Composition, Permutation};
use opdp::scalar::FieldSpec;
use opdp::setoperad::{Op, Operad};

fn field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::Rationals),
        Just(FieldSpec::prime(2).unwrap()),
        Just(FieldSpec::prime(3).unwrap()),
        Just(FieldSpec::prime(5).unwrap()),
    ]
}

fn bhs() -> impl Strategy<Value = Bhs> {
    (1usize..=7).prop_flat_map(|n| {
        let all = enumerate_bhs(n);
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

/// `a·x + b·y + c·γ_2(x)` in the free algebra on `x`, `y`.
fn small_elem(g: &Gamma, coeffs: [i64; 3]) -> FreeElem {
    let f = g.field;
    let sq = match g.operad {
        Operad::Com => Op::com(2),
        Operad::Lev => Op::lev(vec![1, 1]).unwrap(),
    };
    let x = g.generator(0);
    let x2 = g.gamma_eval(&sq, &Composition::new(vec![2]), std::slice::from_ref(&x)).unwrap();
    x.scale(&f.from_i64(coeffs[0]))
        .plus(&g.generator(1).scale(&f.from_i64(coeffs[1])))
        .plus(&x2.scale(&f.from_i64(coeffs[2])))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn star_is_commutative_with_dot_support(u in bhs(), v in bhs(), f in field()) {
        let uv = level_star(&u, &v, f);
        prop_assert_eq!(&uv, &level_star(&v, &u, f));
        let w = level_dot(&u, &v);
        prop_assert!(uv.terms().keys().all(|k| *k == w));
        prop_assert_eq!(w.size(), u.size() + v.size());
    }

    #[test]
    fn divided_square_doubles_to_square(u in bhs()) {
        let q = FieldSpec::Rationals;
        let h: StepFunction = "h=[1,1]@r=(2)".parse().unwrap();
        let phi = phi_eval_bhs(&h, std::slice::from_ref(&u), q).unwrap();
        prop_assert_eq!(phi.scale(&q.from_i64(2)), level_star(&u, &u, q));
    }

    #[test]
    fn products_commute(a in prop::array::uniform3(-3i64..4), b in prop::array::uniform3(-3i64..4), f in field(), lev in any::<bool>()) {
        let g = Gamma::new(if lev { Operad::Lev } else { Operad::Com }, f);
        let (x, y) = (small_elem(&g, a), small_elem(&g, b));
        prop_assert_eq!(g.product(&x, &y).unwrap(), g.product(&y, &x).unwrap());
    }

    #[test]
    fn product_is_bilinear(a in prop::array::uniform3(-3i64..4), b in prop::array::uniform3(-3i64..4), c in -4i64..5, f in field()) {
        let g = Gamma::new(Operad::Lev, f);
        let (x, y) = (small_elem(&g, a), small_elem(&g, b));
        let s = f.from_i64(c);
        prop_assert_eq!(g.product(&x.scale(&s), &y).unwrap(), g.product(&x, &y).unwrap().scale(&s));
        let z = g.generator(1);
        prop_assert_eq!(
            g.product(&x.plus(&y), &z).unwrap(),
            g.product(&x, &z).unwrap().plus(&g.product(&y, &z).unwrap())
        );
    }

    #[test]
    fn divided_powers_are_homogeneous(a in prop::array::uniform3(-3i64..4), c in -4i64..5, n in 1usize..=3, f in field()) {
        // γ_n(c·a) = c^n γ_n(a)
        let g = Gamma::new(Operad::Com, f);
        let e = small_elem(&g, a);
        let s = f.from_i64(c);
        let gp = |e: &FreeElem| g.gamma_eval(&Op::com(n), &Composition::new(vec![n]), std::slice::from_ref(e)).unwrap();
        prop_assert_eq!(gp(&e.scale(&s)), gp(&e).scale(&s.pow(n as u32)));
    }

    #[test]
    fn permutations_form_a_group(n in 1usize..=6, seed in any::<u64>()) {
        let all = Permutation::all(n);
        let p = &all[(seed as usize) % all.len()];
        let q = &all[(seed as usize / 7) % all.len()];
        prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
        let pq = p.compose(q).unwrap();
        prop_assert_eq!(pq.inverse(), q.inverse().compose(&p.inverse()).unwrap());
    }
}
