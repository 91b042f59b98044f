use lowwalsh_core::boolfun::{anf, TruthTable};
use lowwalsh_core::constructions::{build_f, build_g, solve_circle_equation};
use lowwalsh_core::expsums::e_decompose;
use lowwalsh_core::walsh::{walsh_naive_at, wht_fast, WalshSpectrum};
use lowwalsh_core::{create_ctx, BinaryField, FieldElem};
use proptest::prelude::*;

fn field_and_elems(max_k: u32) -> impl Strategy<Value = (u32, u32, u32, u32)> {
    (2..=max_k).prop_flat_map(|k| {
        let top = (1u32 << k) - 1;
        (Just(k), 0..=top, 0..=top, 0..=top)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn field_laws((k, a, b, c) in field_and_elems(24)) {
        let f = BinaryField::new(k).unwrap();
        let (a, b, c) = (FieldElem::new(a), FieldElem::new(b), FieldElem::new(c));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
        prop_assert_eq!(f.mul(a, b + c), f.mul(a, b) + f.mul(a, c));
        prop_assert_eq!(f.square(a), f.mul(a, a));
        prop_assert_eq!(f.square(f.sqrt(a)), a);
        prop_assert_eq!(f.trace(a + b), f.trace(a) ^ f.trace(b));
        prop_assert_eq!(f.pow(a, f.order()), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElem::ONE);
        }
    }

    #[test]
    fn masks_encode_the_trace_form((k, a, x, _) in field_and_elems(20)) {
        let f = BinaryField::new(k).unwrap();
        let (a, x) = (FieldElem::new(a), FieldElem::new(x));
        let mask = f.functional_mask(a);
        prop_assert_eq!((mask & x.bits()).count_ones() % 2 == 1, f.trace(f.mul(a, x)));
        prop_assert_eq!(f.point_of_mask(mask), a);
    }

    #[test]
    fn artin_schreier((k, d, _, _) in field_and_elems(20)) {
        let f = BinaryField::new(k).unwrap();
        let d = FieldElem::new(d);
        match f.solve_artin_schreier(d) {
            Some([y1, y2]) => {
                prop_assert!(!f.trace(d));
                prop_assert_eq!(y1 + y2, FieldElem::ONE);
                prop_assert_eq!(f.square(y1) + y1, d);
            }
            None => prop_assert!(f.trace(d)),
        }
    }

    #[test]
    fn wht_inverts_and_conserves(n in 1u32..=12, seed in any::<u64>()) {
        let f = TruthTable::from_fn(n, |x| (x as u64).wrapping_mul(seed | 1).rotate_left(17) & 1 == 1).unwrap();
        let s = wht_fast(&f).unwrap();
        prop_assert!(s.parseval_holds());
        prop_assert!(s.first_moment_holds(f.get(0)));
        let mut back: Vec<i32> = s.values().to_vec();
        lowwalsh_core::walsh::wht_in_place(&mut back);
        for (i, v) in back.iter().enumerate() {
            prop_assert_eq!(*v, if f.get(i) { -(1 << n) } else { 1 << n });
        }
        let spectrum = WalshSpectrum::from_values(s.values().to_vec()).unwrap();
        prop_assert_eq!(spectrum.distribution().total(), 1u64 << n);
    }

    #[test]
    fn anf_is_an_involution(n in 1u32..=10, words in proptest::collection::vec(any::<u64>(), 16)) {
        let len = ((1usize << n) / 64).max(1);
        let mut w = words[..len].to_vec();
        if n < 6 {
            w[0] &= (1u64 << (1 << n)) - 1;
        }
        let f = TruthTable::from_words(n, w).unwrap();
        let a = anf(&f);
        prop_assert_eq!(a.to_truth_table(), f.clone());
        prop_assert_eq!(anf(&a.as_truth_table_bits()).as_truth_table_bits(), f);
    }

    #[test]
    fn circle_roots_solve_the_equation(m in 2u32..=8, raw in any::<u32>()) {
        let ctx = create_ctx(m, None).unwrap();
        let a = FieldElem::new(raw % ((1 << (2 * m)) - 1) + 1);
        let r = solve_circle_equation(&ctx, a).unwrap();
        prop_assert_eq!(r.exists(), ctx.tr_sub(ctx.mul(a, ctx.conjugate(a))).unwrap());
        for &z in r.as_slice() {
            prop_assert!(ctx.on_unit_circle(z));
            prop_assert_eq!(ctx.mul(a, ctx.mul(z, z)) + z + ctx.conjugate(a), FieldElem::ZERO);
        }
    }

    #[test]
    fn e_decomposition_reconstructs(m in 2u32..=8, raw in any::<u32>()) {
        let ctx = create_ctx(m, None).unwrap();
        let x = FieldElem::new(raw & ((1 << (2 * m)) - 1));
        match e_decompose(&ctx, x) {
            Ok((u, l)) => {
                prop_assert!(ctx.in_subfield(u));
                prop_assert_eq!(ctx.tr_rel(l), FieldElem::ONE);
                prop_assert_eq!(ctx.mul(u, l), x);
            }
            Err(_) => prop_assert!(ctx.in_subfield(x)),
        }
    }
}

// f and g against the naive transform at random points for mid-size fields.
proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn construction_spectra_at_random_points(m in 3u32..=6, mu_idx in any::<u64>(), pts in proptest::collection::vec(any::<u32>(), 8)) {
        let ctx = create_ctx(m, None).unwrap();
        let mu = ctx.subfield_power(mu_idx % ((1 << m) - 1));
        for table in [build_f(&ctx, mu, None).unwrap(), build_g(&ctx, mu, None).unwrap()] {
            let s = wht_fast(&table).unwrap();
            for &p in &pts {
                let a = FieldElem::new(p & ((1 << (2 * m)) - 1));
                let fast = s.at_mask(ctx.functional_mask(a)) as i64;
                prop_assert_eq!(fast, walsh_naive_at(&ctx, &table, a));
            }
        }
    }
}
