mod common;

use proptest::prelude::*;
use quiver_hilbert::formulas::{derived_preprojective_series, derived_qha_series, preprojective_series, qha_series};
use quiver_hilbert::series::{mesh_denominator, tensor_algebra_series};
use quiver_hilbert::*;

fn matrix(size: usize, range: i64) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-range..=range, size * size).prop_map(move |v| {
        let rows: Vec<Vec<i64>> = v.chunks(size).map(<[i64]>::to_vec).collect();
        IntMatrix::from_rows(&rows)
    })
}

fn series(size: usize, order: usize) -> impl Strategy<Value = MatrixPowerSeries> {
    prop::collection::vec(matrix(size, 4), order + 1)
        .prop_map(move |c| MatrixPowerSeries::from_coefficients(size, c, order).unwrap())
}

fn triple() -> impl Strategy<Value = (MatrixPowerSeries, MatrixPowerSeries, MatrixPowerSeries)> {
    (1usize..=3, 0usize..=5).prop_flat_map(|(r, n)| (series(r, n), series(r, n), series(r, n)))
}

fn unit_series() -> impl Strategy<Value = MatrixPowerSeries> {
    (1usize..=3, 0usize..=6).prop_flat_map(|(r, n)| {
        (series(r, n), Just(r)).prop_map(|(s, r)| {
            let mut c = s.into_coefficients();
            c[0] = IntMatrix::identity(r);
            let n = c.len() - 1;
            MatrixPowerSeries::from_coefficients(r, c, n).unwrap()
        })
    })
}

/// Connected acyclic quiver on up to 4 vertices with arrows from lower to
/// higher labels, plus a mask of arrows to reverse afterwards.
fn random_quiver() -> impl Strategy<Value = Quiver> {
    (1usize..=4).prop_flat_map(|r| {
        let spine = prop::collection::vec(any::<prop::sample::Index>(), r.saturating_sub(1));
        let extra = prop::collection::vec((0..r, 0..r), 0..3);
        (Just(r), spine, extra).prop_filter_map("acyclic by construction", |(r, spine, extra)| {
            let mut edges = Vec::new();
            for (k, idx) in spine.iter().enumerate() {
                let v = k + 1;
                edges.push((idx.index(v), v));
            }
            for (a, b) in extra {
                if a != b {
                    edges.push((a.min(b), a.max(b)));
                }
            }
            let edges: Vec<(usize, usize)> = edges.into_iter().map(|(a, b)| (a + 1, b + 1)).collect();
            // at most 5 arrows keeps the oracle cheap
            (edges.len() <= 5).then(|| common::quiver(r, &edges))
        })
    })
}

fn field() -> impl Strategy<Value = Field> {
    prop::sample::select(common::fields())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms((a, b, c) in triple()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        let one = MatrixPowerSeries::one(a.size(), a.order());
        prop_assert_eq!(&one * &a, a.clone());
        prop_assert_eq!(&a - &a, MatrixPowerSeries::zero(a.size(), a.order()));
    }

    #[test]
    fn inverse_is_two_sided(a in unit_series()) {
        let inv = a.invert().unwrap();
        let one = MatrixPowerSeries::one(a.size(), a.order());
        prop_assert_eq!(&inv * &a, one.clone());
        prop_assert_eq!(&a * &inv, one);
    }

    #[test]
    fn tensor_series_inverts_one_minus_h(a in unit_series()) {
        let one = MatrixPowerSeries::one(a.size(), a.order());
        let h = &one - &a;
        let t = tensor_algebra_series(&h).unwrap();
        prop_assert_eq!(&t * &(&one - &h), one);
    }

    #[test]
    fn mesh_times_central_factor((r, c) in (1usize..=4).prop_flat_map(|r| (Just(r), matrix(r, 9)))) {
        let n = 6;
        let lhs = &mesh_denominator(&c, n) * &MatrixPowerSeries::scalar_polynomial(r, &[(0, 1), (2, -1)], n);
        let mut rhs = MatrixPowerSeries::scalar_polynomial(r, &[(0, 1), (4, -1)], n);
        rhs = &rhs - &MatrixPowerSeries::monomial(c.clone(), 1, n);
        rhs = &rhs + &MatrixPowerSeries::monomial(c.clone(), 3, n);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn oracle_matches_closed_form_on_random_quivers(q in random_quiver(), f in field()) {
        let n = 5;
        let p = build_presentation(PresentationKind::PreprojectivePerVertex, &q, f, None).unwrap();
        let dims = graded_quotient_dims(&p, n).unwrap();
        prop_assert_eq!(dims, preprojective_series(&q, n).into_coefficients());
        if !classify(&q).is_dynkin() {
            let v = WeightVector::from_integers(f, &vec![1; q.vertex_count()]);
            let p = build_presentation(PresentationKind::QhaZ, &q, f, Some(&v)).unwrap();
            let dims = graded_quotient_dims(&p, n).unwrap();
            prop_assert_eq!(dims, qha_series(&q, &v, n).unwrap().into_coefficients());
        }
    }

    #[test]
    fn derived_equals_underived_off_dynkin(q in random_quiver()) {
        prop_assume!(!classify(&q).is_dynkin());
        let n = 8;
        let v = WeightVector::from_integers(Field::Rational, &vec![1; q.vertex_count()]);
        prop_assert_eq!(derived_preprojective_series(&q, n), preprojective_series(&q, n));
        prop_assert_eq!(derived_qha_series(&q, n), qha_series(&q, &v, n).unwrap());
    }

    #[test]
    fn z_and_eta_presentations_agree(
        q in random_quiver(),
        f in prop::sample::select(vec![Field::Rational, Field::Prime(3), Field::Prime(5), Field::Prime(7)]),
        raw in prop::collection::vec(1i64..=6, 4),
    ) {
        let r = q.vertex_count();
        let v = WeightVector::from_integers(f, &raw[..r]);
        prop_assume!(v.is_sincere());
        let z = build_presentation(PresentationKind::QhaZ, &q, f, Some(&v)).unwrap();
        let eta = build_presentation(PresentationKind::QhaEta, &q, f, Some(&v)).unwrap();
        prop_assert_eq!(graded_quotient_dims(&z, 5).unwrap(), graded_quotient_dims(&eta, 5).unwrap());
    }

    #[test]
    fn reorientation_preserves_pi_and_class(q in random_quiver(), flips in prop::collection::vec(any::<bool>(), 5)) {
        let mut flipped = q.clone();
        for (k, &f) in flips.iter().enumerate().take(q.arrows().len()) {
            if f {
                if let Ok(next) = flipped.with_reversed_arrow(k) {
                    flipped = next;
                }
            }
        }
        prop_assert_eq!(flipped.adjacency(), q.adjacency());
        prop_assert_eq!(classify(&flipped).is_dynkin(), classify(&q).is_dynkin());
        prop_assert_eq!(classify(&flipped).to_string(), classify(&q).to_string());
        let dims = |q: &Quiver| {
            let p = build_presentation(PresentationKind::PreprojectivePerVertex, q, Field::Rational, None).unwrap();
            graded_quotient_dims(&p, 5).unwrap()
        };
        prop_assert_eq!(dims(&flipped), dims(&q));
    }

    #[test]
    fn tits_form_is_symmetrised_adjacency(q in random_quiver(), d in prop::collection::vec(-3i64..=3, 4)) {
        let r = q.vertex_count();
        let d = &d[..r];
        let v = q.arrow_matrix();
        let mut expected = d.iter().map(|x| x * x).sum::<i64>();
        for i in 0..r {
            for j in 0..r {
                expected -= d[i] * i64::try_from(v.get(i, j)).unwrap() * d[j];
            }
        }
        prop_assert_eq!(q.tits_form(d), expected);
    }
}
