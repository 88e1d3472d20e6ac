use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use veronese_core::conics::{classify_conic, discriminant, ConicType, TernaryForm};
use veronese_core::formula::eval;
use veronese_core::groupaction::{act_on_form, act_on_point, act_on_subspace, random_element};
use veronese_core::lineclass::LineClassifier;
use veronese_core::pglinalg::{point_at, point_count, point_index};
use veronese_core::systems::{od4_of_line, od4_of_point};
use veronese_core::veronese::{classify_hyperplane, classify_point, delta};
use veronese_core::{Elem, FieldCtx, Geometry, Matrix, Subspace, SymPoint};

const ORDERS: [u32; 12] = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49, 256];

fn field() -> impl Strategy<Value = FieldCtx> {
    prop::sample::select(ORDERS.to_vec()).prop_map(|q| FieldCtx::from_order(q).unwrap())
}

fn small_geometry() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 4, 5])
}

fn vec6(q: u32) -> impl Strategy<Value = [Elem; 6]> {
    prop::array::uniform6(0..q as Elem)
}

thread_local! {
    static GEOS: Vec<Geometry> = [2u32, 3, 4, 5].into_iter().map(|q| Geometry::new(q).unwrap()).collect();
}

fn with_geo<R>(q: u32, f: impl FnOnce(&Geometry) -> R) -> R {
    GEOS.with(|g| f(g.iter().find(|g| g.q() == q).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn field_axioms(f in field(), a in any::<u16>(), b in any::<u16>(), c in any::<u16>()) {
        let q = f.q() as Elem;
        let (a, b, c) = (a % q, b % q, c % q);
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if b != 0 {
            prop_assert_eq!(f.mul(f.div(a, b), b), a);
        }
        prop_assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
    }

    #[test]
    fn point_index_round_trip(q in small_geometry(), n in 1usize..6, seed in any::<u64>()) {
        let total = point_count(n, q) as u64;
        let idx = (seed % total) as usize;
        let v = point_at(n, q, idx);
        prop_assert_eq!(point_index(q, &v), idx);
    }

    #[test]
    fn rref_is_canonical(q in small_geometry(), rows in prop::collection::vec(prop::array::uniform6(0u16..5), 1..5)) {
        let ctx = FieldCtx::from_order(q).unwrap();
        let rows: Vec<[Elem; 6]> = rows.into_iter().map(|r| r.map(|x| x % q as Elem)).collect();
        if let Ok(s) = Subspace::from_rows(&ctx, &Matrix::from_rows(&rows).unwrap()) {
            prop_assert_eq!(&Subspace::from_rows(&ctx, s.basis()).unwrap(), &s);
            if let Some(d) = s.dual(&ctx) {
                prop_assert_eq!(d.dim() + s.dim(), 4);
                prop_assert_eq!(&d.dual(&ctx).unwrap(), &s);
            }
        }
    }

    #[test]
    fn form_normalization_idempotent(q in small_geometry(), a in vec6(5)) {
        let ctx = FieldCtx::from_order(q).unwrap();
        let a = a.map(|x| x % q as Elem);
        if let Ok(f) = TernaryForm::new(&ctx, a) {
            prop_assert_eq!(TernaryForm::new(&ctx, f.coeffs()).unwrap(), f);
        }
    }

    #[test]
    fn classifiers_are_invariant(q in small_geometry(), y in vec6(5), l2 in vec6(5), seed in any::<u64>()) {
        with_geo(q, |geo| {
            let ctx = geo.field();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_element(ctx, &mut rng);
            let y = y.map(|x| x % q as Elem);
            let l2 = l2.map(|x| x % q as Elem);
            if let Ok(p) = SymPoint::new(ctx, y) {
                let gp = act_on_point(ctx, &g, &p);
                assert_eq!(classify_point(ctx, &gp), classify_point(ctx, &p));
                assert_eq!(od4_of_point(geo, &gp), od4_of_point(geo, &p));
                let f = TernaryForm::new(ctx, y).unwrap();
                let gf = act_on_form(ctx, &g, &f);
                assert_eq!(classify_conic(ctx, &gf).unwrap(), classify_conic(ctx, &f).unwrap());
                // hyperplane and form labels agree through delta
                let h = classify_hyperplane(ctx, &delta(ctx, &f)).unwrap();
                assert_eq!(h, veronese_core::HyperplaneOrbitLabel::from_conic(classify_conic(ctx, &f).unwrap()));
            }
            if let Ok(l) = Subspace::from_independent(ctx, &Matrix::from_rows(&[y, l2]).unwrap()) {
                let cls = LineClassifier::new(geo);
                let gl = act_on_subspace(ctx, &g, &l);
                assert_eq!(cls.classify(&gl).unwrap(), cls.classify(&l).unwrap());
                let qq = q as u64;
                let h = od4_of_line(geo, &l).unwrap();
                assert_eq!(h.iter().sum::<u64>(), qq.pow(3) + qq * qq + qq + 1);
            }
        });
    }

    #[test]
    fn discriminant_detects_singularity(q in prop::sample::select(vec![3u32, 5, 7, 9]), a in vec6(9)) {
        let ctx = FieldCtx::from_order(q).unwrap();
        let a = a.map(|x| x % q as Elem);
        if let Ok(f) = TernaryForm::new(&ctx, a) {
            let t = classify_conic(&ctx, &f).unwrap();
            prop_assert_eq!(discriminant(&ctx, &f) != 0, t == ConicType::NonSingular);
        }
    }

    #[test]
    fn formula_is_polynomial_arithmetic(q in 2u64..1000) {
        let v = eval("q^3-2q^2+q-1", q).unwrap();
        let q = q as i128;
        prop_assert_eq!(v, veronese_core::formula::Rational::from_integer(q * q * q - 2 * q * q + q - 1));
    }
}
