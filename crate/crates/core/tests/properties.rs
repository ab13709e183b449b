use colfam_core::iwasawa::{iota_involution, ModulePresentation};
use colfam_core::pseudo::{
    check_wiles_relations, enumerate_words, pseudo_from_matrix, reconstruct, Mat2, MatrixRep2, Word, WordSample,
};
use colfam_core::series::{SeriesFile, newton_interpolate};
use colfam_core::weight::{classical_points, Disk};
use colfam_core::{Chart, Elem, KElem, Rational, RingParams, Series};
use proptest::prelude::*;

fn ring(p: u64, e: u32) -> RingParams {
    RingParams::new(p, e, 8).unwrap()
}

fn rings() -> impl Strategy<Value = RingParams> {
    prop_oneof![Just(ring(3, 1)), Just(ring(5, 1)), Just(ring(3, 2)), Just(ring(7, 3))]
}

fn elem(r: RingParams) -> impl Strategy<Value = Elem> {
    prop::collection::vec(0..r.p(), r.prec() as usize).prop_map(move |d| Elem::from_digits(r, &d, r.prec()))
}

fn unit(r: RingParams) -> impl Strategy<Value = Elem> {
    elem(r).prop_filter("unit", |x| x.is_unit())
}

fn series(r: RingParams, d: usize) -> impl Strategy<Value = Series> {
    prop::collection::vec(elem(r), d).prop_map(move |c| Series::new(r, c).unwrap())
}

/// `p^a * (U^b + pi * lower) * unit`.
fn planted(r: RingParams, d: usize) -> impl Strategy<Value = (Series, u32, usize)> {
    (0..=1u32, 0..=3usize).prop_flat_map(move |(a, b)| {
        (prop::collection::vec(elem(r), b), unit(r), series(r, d)).prop_map(move |(low, u0, mut unit)| {
            let mut c: Vec<Elem> = low.iter().map(|x| x.mul_pi_pow(1)).collect();
            c.push(Elem::one(r));
            c.resize(d, Elem::zero(r));
            let mut uc = unit.coeffs().to_vec();
            uc[0] = u0;
            unit = Series::new(r, uc).unwrap();
            let f = (&Series::new(r, c).unwrap() * &unit).mul_pi_pow(a * r.e());
            (f, a, b)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms((x, y, z) in rings().prop_flat_map(|r| (elem(r), elem(r), elem(r)))) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert!((&x - &x).is_zero());
        prop_assert_eq!(&x * &Elem::one(x.params()), x.clone());
    }

    #[test]
    fn valuation_is_additive((x, y) in rings().prop_flat_map(|r| (elem(r), elem(r)))) {
        if let (Some(a), Some(b)) = (x.val_pi(), y.val_pi()) {
            let n = x.params().prec();
            let xy = &x * &y;
            if a + b < n {
                prop_assert_eq!(xy.val_pi(), Some(a + b));
            } else {
                prop_assert!(xy.is_zero());
            }
        }
    }

    #[test]
    fn inverse_of_units(x in rings().prop_flat_map(unit)) {
        let r = x.params();
        prop_assert_eq!(&x * &x.inv().unwrap(), Elem::one(r));
    }

    #[test]
    fn teichmuller_is_multiplicative(p in prop_oneof![Just(3u64), Just(5), Just(7)], a in 1i64..1000, b in 1i64..1000) {
        let r = ring(p, 1);
        prop_assume!(a % p as i64 != 0 && b % p as i64 != 0);
        let wa = Elem::teichmuller(r, a).unwrap();
        let wb = Elem::teichmuller(r, b).unwrap();
        prop_assert_eq!(Elem::teichmuller(r, a * b).unwrap(), &wa * &wb);
        prop_assert_eq!(wa.pow(p - 1), Elem::one(r));
    }

    #[test]
    fn text_round_trip(x in rings().prop_flat_map(elem), k in 0u32..=8) {
        let x = x.with_prec(k);
        let back = Elem::parse(x.params(), &x.to_string()).unwrap();
        prop_assert!(back.same_repr(&x), "{} -> {:?}", x, back);
    }

    #[test]
    fn mu_lambda_additive(((f, a, b), (g, a2, b2)) in rings().prop_flat_map(|r| (planted(r, 16), planted(r, 16)))) {
        let (mu, lambda) = (&f * &g).invariants().unwrap();
        prop_assert_eq!(mu, Rational::from_integer((a + a2) as i64));
        prop_assert_eq!(lambda, b + b2);
        prop_assert_eq!(f.invariants().unwrap(), (Rational::from_integer(a as i64), b));
    }

    #[test]
    fn evaluate_is_a_homomorphism(
        (f, g, u) in rings().prop_flat_map(|r| (series(r, 12), series(r, 12), elem(r).prop_map(|x| x.mul_pi_pow(1))))
    ) {
        let ev = |h: &Series| h.evaluate(&u).unwrap().value;
        prop_assert_eq!(ev(&(&f + &g)), &ev(&f) + &ev(&g));
        prop_assert_eq!(ev(&(&f * &g)), &ev(&f) * &ev(&g));
        // the kernel of reduction at u
        let lin = Series::new(u.params(), vec![-&u, Elem::one(u.params())]).unwrap().truncated(12);
        prop_assert!((&f * &lin).reduce_mod_pk(&u).unwrap().is_zero());
    }

    #[test]
    fn rescale_composes((f, a, b, u) in rings().prop_flat_map(|r| (series(r, 10), elem(r), elem(r), elem(r)))) {
        prop_assert_eq!(f.rescale(&a).rescale(&b), f.rescale(&(&a * &b)));
        let pi = Elem::uniformizer(f.params());
        prop_assert_eq!(
            f.rescale(&pi).evaluate_polynomial(&u),
            f.evaluate_polynomial(&(&pi * &u))
        );
    }

    #[test]
    fn interpolation_recovers_polynomials((coeffs, nodes) in prop_oneof![Just(ring(3, 1)), Just(ring(5, 1))].prop_flat_map(|r| {
        (prop::collection::vec(elem(r), 1..=3), prop::collection::btree_set(1i64..200, 3))
    })) {
        let r = coeffs[0].params();
        let p = r.p() as i64;
        let mut c = coeffs.clone();
        c.resize(8, Elem::zero(r));
        let f = Series::new(r, c).unwrap();
        let pts: Vec<(Elem, KElem)> = nodes
            .iter()
            .map(|&n| {
                let u = Elem::from_int(r, p * n);
                let v = KElem::from_elem(f.evaluate_polynomial(&u));
                (u, v)
            })
            .collect();
        let it = newton_interpolate(&pts).unwrap();
        prop_assert_eq!(it.poly.to_series(8).unwrap(), f);
    }

    #[test]
    fn restriction_commutes_with_interpolation(coeffs in prop::collection::vec(elem(ring(3, 1)), 1..=4)) {
        // sampling on the sub-disk u = p u' and interpolating in u' gives the
        // rescaled family
        let r = ring(3, 1);
        let mut c = coeffs.clone();
        c.resize(8, Elem::zero(r));
        let f = Series::new(r, c).unwrap();
        let set = classical_points(3, 2, 3, Rational::from_integer(0), 83, Disk::Open).unwrap();
        prop_assert_eq!(&set.points, &vec![2, 29, 56, 83]);
        let fine = Chart::new(2, Elem::from_int(r, 9));
        let coarse = Chart::new(2, Elem::from_int(r, 3));
        let pts: Vec<(Elem, KElem)> = set
            .points
            .iter()
            .map(|&k| {
                let u = coarse.coordinate(k).unwrap();
                (fine.coordinate(k).unwrap(), KElem::from_elem(f.evaluate_polynomial(&u)))
            })
            .collect();
        let it = newton_interpolate(&pts).unwrap();
        prop_assert_eq!(it.poly.to_series(8).unwrap(), f.rescale(&Elem::from_int(r, 3)));
    }

    #[test]
    fn iota_is_an_involutive_ring_map((f, g) in prop_oneof![Just(ring(3, 1)), Just(ring(5, 1))].prop_flat_map(|r| (series(r, 16), series(r, 16)))) {
        let (fi, gi) = (iota_involution(&f).unwrap(), iota_involution(&g).unwrap());
        prop_assert_eq!(iota_involution(&fi).unwrap(), f.clone());
        prop_assert_eq!(iota_involution(&(&f * &g)).unwrap(), &fi * &gi);
        prop_assert_eq!(iota_involution(&(&f + &g)).unwrap(), &fi + &gi);
    }

    #[test]
    fn classical_points_restrict(m in 1u32..4, k0 in 2i64..40, bound in 40i64..400) {
        let big = classical_points(3, k0, m, Rational::from_integer(0), bound, Disk::Open).unwrap();
        let small = classical_points(3, k0, m + 1, Rational::from_integer(0), bound, Disk::Open).unwrap();
        prop_assert!(small.points.iter().all(|k| big.admits(*k)));
        let closed = classical_points(3, k0, m + 1, Rational::from_integer(0), bound, Disk::Closed).unwrap();
        prop_assert_eq!(closed.points, big.points);
    }

    #[test]
    fn series_file_round_trip(f in rings().prop_flat_map(|r| series(r, 6))) {
        let text = SeriesFile::Uni(f.clone()).to_string();
        let back = SeriesFile::parse(&text).unwrap();
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn word_group_laws(a in word(), b in word(), c in word()) {
        prop_assert!(a.mul(&a.inverse()).is_empty());
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(Word::parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn specialization_rank_is_additive(roots in prop::collection::vec(0i64..20, 0..4), free in 0usize..3, at in 0i64..20) {
        let r = ring(3, 1);
        let torsion = roots
            .iter()
            .map(|&j| (Series::new(r, vec![Elem::from_int(r, -3 * j), Elem::one(r)]).unwrap().truncated(8), 1))
            .collect();
        let m = ModulePresentation::<Series>::new(r, free, torsion).unwrap();
        let s = m.specialize_at(&Elem::from_int(r, 3 * at)).unwrap();
        let hits = roots.iter().filter(|&&j| j == at).count();
        prop_assert_eq!(s.rank, free + hits);
    }
}

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec(0usize..5, 0..6).prop_map(|ls| {
        let alphabet = colfam_core::pseudo::Letter::alphabet(2);
        Word::new(ls.into_iter().map(|i| alphabet[i]))
    })
}

fn series_mat(r: RingParams) -> impl Strategy<Value = Mat2<Series>> {
    // entries in O_K[[U]] / U^4 with unit determinant at U = 0
    let d = 4;
    (series(r, d), series(r, d), series(r, d), series(r, d))
        .prop_map(|(a, b, c, dd)| Mat2::new(a, b, c, dd))
        .prop_filter("unit determinant", |m| m.det().coeff(0).is_unit())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn wiles_relations_hold_over_series(gens in prop::collection::vec(series_mat(ring(3, 1)), 1..=2)) {
        let r = ring(3, 1);
        let rho = MatrixRep2::new(&Series::one(r, 4), gens).unwrap();
        let t = rho.generators();
        let report = check_wiles_relations(&pseudo_from_matrix(rho), &WordSample::exhaustive(t, 3));
        prop_assert!(report.is_clean(), "{}", report.violations[0]);
    }

    #[test]
    fn reconstruction_preserves_char_poly(gens in prop::collection::vec(
        (elem(ring(5, 1)), elem(ring(5, 1)), elem(ring(5, 1)), elem(ring(5, 1)))
            .prop_map(|(a, b, c, d)| Mat2::new(a, b, c, d))
            .prop_filter("invertible", |m| m.det().is_unit()),
        1..=2,
    )) {
        let r = ring(5, 1);
        let rho = MatrixRep2::new(&Elem::one(r), gens).unwrap();
        let pi = pseudo_from_matrix(rho.clone());
        match reconstruct(&pi, 2) {
            Ok(rec) => {
                for w in enumerate_words(rho.generators(), 3) {
                    let (m, o) = (rec.rep.image(&w).unwrap(), rho.image(&w).unwrap());
                    prop_assert_eq!(m.trace(), o.trace());
                    prop_assert_eq!(m.det(), o.det());
                }
            }
            // every b c vanishes: the representation is triangular mod p^N
            Err(e) => prop_assert_eq!(e, colfam_core::Error::ApparentlyReducible),
        }
    }
}
