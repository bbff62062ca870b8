use homaloid::fatpoints::{
    conditions_matrix, eta_transform, forms, hilbert_value, initial_degree, linear_system,
    mult_map, power_dim, quad_transform_points, sample_points, zeta_transform, FatIdealSpec,
};
use homaloid::ffla::{FMatrix, FieldConfig};
use homaloid::typecalc::{expected_dim, quad_transform_highest, MultiplicityType};
use proptest::prelude::*;

/// Conditions from every homogeneous partial of order exactly `μ − 1`,
/// evaluated in projective coordinates. Agrees with the affine encoding
/// for `t ≥ μ − 1` by Euler's formula.
fn euler_conditions(spec: &FatIdealSpec, t: u32) -> FMatrix {
    let f = spec.field();
    let monos = forms::monomials(t);
    let mut m = FMatrix::zeros(f, 0, monos.len());
    for (p, &mu) in spec.points().points().iter().zip(spec.mults()) {
        if mu == 0 {
            continue;
        }
        let order = mu - 1;
        let c = p.coords();
        for da in 0..=order {
            for db in 0..=order - da {
                let dc = order - da - db;
                let row: Vec<u64> = monos
                    .iter()
                    .map(|e| {
                        let d = [da, db, dc];
                        let mut v = 1u64;
                        for i in 0..3 {
                            if e[i] < d[i] {
                                return 0;
                            }
                            for k in 0..d[i] {
                                v = f.mul(v, (e[i] - k) as u64);
                            }
                            v = f.mul(v, f.pow(c[i], (e[i] - d[i]) as u64));
                        }
                        v
                    })
                    .collect();
                m.push_row(&row);
            }
        }
    }
    m
}

fn arb_spec() -> impl Strategy<Value = (FatIdealSpec, u32)> {
    (
        proptest::collection::vec(0i64..4, 1..8),
        any::<u64>(),
        0u32..9,
    )
        .prop_map(|(mults, seed, t)| {
            let ty = MultiplicityType::new(0, mults).unwrap();
            let fc = FieldConfig::default().with_seed(seed);
            (FatIdealSpec::general(&ty, fc, false).unwrap(), t)
        })
}

fn same_row_space(a: &FMatrix, b: &FMatrix) -> bool {
    let ra = a.rank();
    ra == b.rank() && FMatrix::stack(&[a, b]).unwrap().rank() == ra
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn affine_and_euler_encodings_agree((spec, t) in arb_spec()) {
        let max = *spec.mults().iter().max().unwrap();
        let t = t.max(max);
        let ours = conditions_matrix(&spec, t).unwrap();
        prop_assert_eq!(ours.rows() as u64, spec.scheme_degree());
        prop_assert!(same_row_space(&ours, &euler_conditions(&spec, t)));
    }

    #[test]
    fn sampled_never_below_expected((spec, t) in arb_spec()) {
        let h = hilbert_value(&spec, t, 1).unwrap();
        prop_assert!(h.sampled_dim >= h.expected);
        prop_assert_eq!(h.expected as i64, expected_dim(&spec.as_type(t), t as i64).unwrap());
        if h.certified {
            prop_assert_eq!(h.sampled_dim, h.expected);
        }
    }

    #[test]
    fn dimension_grows_by_at_least_one((spec, t) in arb_spec()) {
        let lo = linear_system(&spec, t).unwrap();
        let hi = linear_system(&spec, t + 1).unwrap();
        if lo.dim() >= 1 {
            prop_assert!(hi.dim() > lo.dim());
        }
        let mm = mult_map(&lo, &spec, t + 1).unwrap();
        prop_assert!(mm.image_rank <= (3 * mm.source_dim).min(mm.target_dim));
        prop_assert_eq!(mm.kernel_dim + mm.image_rank, 3 * mm.source_dim);
        prop_assert_eq!(mm.target_dim, hi.dim());
    }
}

#[test]
fn powers_sit_inside_symbolic_powers() {
    for (lit, seed) in [
        ("5;2^4,1^4", 1),
        ("3;1^6", 2),
        ("4;2,1^7", 3),
        ("7;3^3,2^3,1^3", 4),
        ("3;1^4", 5),
        ("4;2,2,1^3", 6),
    ] {
        let ty = homaloid::typecalc::parse_literal(lit).unwrap();
        let spec =
            FatIdealSpec::general(&ty, FieldConfig::default().with_seed(seed), false).unwrap();
        let t0 = initial_degree(&spec, 20, 1).unwrap().degree;
        for n in 1..=3 {
            let ordinary = power_dim(&spec, n).unwrap().dim;
            let symbolic = linear_system(&spec.scaled(n).unwrap(), n * t0)
                .unwrap()
                .dim();
            assert!(ordinary <= symbolic, "{lit} n={n}: {ordinary} > {symbolic}");
        }
    }
}

#[test]
fn eta_and_zeta_are_inverse_on_random_frames() {
    for seed in 0..6u64 {
        let ty = homaloid::typecalc::parse_literal("7;3^3,2^3,1^3").unwrap();
        let points =
            sample_points(ty.arity(), FieldConfig::default().with_seed(seed), true).unwrap();
        let spec = FatIdealSpec::from_type(points.clone(), &ty).unwrap();
        let j7 = linear_system(&spec, 7).unwrap();
        let eta = eta_transform(&j7, [3, 3, 3]).unwrap();
        assert_eq!((eta.degree(), eta.dim()), (5, j7.dim()));
        let tilde = FatIdealSpec::from_type(
            quad_transform_points(&points, 0, 1, 2).unwrap(),
            &quad_transform_highest(&ty).unwrap(),
        )
        .unwrap();
        assert!(linear_system(&tilde, 5).unwrap().contains(&eta).unwrap());
        assert!(zeta_transform(&eta, 7, [3, 3, 3])
            .unwrap()
            .same_span(&j7)
            .unwrap());
    }
}
