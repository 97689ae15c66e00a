use proptest::prelude::*;
use wbnf::scenario::{parse_scenario, BandPreset, Grid, Scale, Scenario, Sweep, SweepAxis};

fn preset_and_carrier() -> impl Strategy<Value = (BandPreset, f64)> {
    prop_oneof![
        Just((BandPreset::N260, 39e9)),
        Just((BandPreset::N261, 28e9)),
        (1e8f64..1e11).prop_map(|c| (BandPreset::Custom, c)),
    ]
}

fn sweep() -> impl Strategy<Value = Option<Sweep>> {
    let axis = prop_oneof![
        Just(SweepAxis::Gamma1),
        Just(SweepAxis::Gamma2),
        Just(SweepAxis::TauDb),
        Just(SweepAxis::FHz)
    ];
    let scale = prop_oneof![Just(Scale::Linear), Just(Scale::Log)];
    proptest::option::of(
        (axis, 0.001f64..1.0, 1.0f64..100.0, 2usize..500, scale).prop_map(
            |(axis, lo, span, points, scale)| {
                if axis == SweepAxis::TauDb {
                    Sweep {
                        axis,
                        min: -span,
                        max: -lo,
                        points,
                        scale: Scale::Linear,
                    }
                } else {
                    Sweep {
                        axis,
                        min: lo,
                        max: lo + span,
                        points,
                        scale,
                    }
                }
            },
        ),
    )
}

fn grid() -> impl Strategy<Value = Grid> {
    (
        0.1f64..10.0,
        0.1f64..10.0,
        2usize..300,
        proptest::collection::vec(-5.0f64..5.0, 0..5),
        proptest::collection::vec(0.01f64..5.0, 0..5),
        proptest::collection::vec(-6.0f64..-0.01, 0..4),
        proptest::collection::vec((0.01f64..2.0, 1e9f64..1e11).prop_map(|(a, b)| [a, b]), 0..5),
    )
        .prop_map(
            |(
                gamma1_max,
                gamma2_max,
                gamma_points,
                cut_gamma1,
                cut_gamma2,
                tau_db_list,
                bmax_presets,
            )| Grid {
                gamma1_max,
                gamma2_max,
                gamma_points,
                cut_gamma1,
                cut_gamma2,
                tau_db_list,
                bmax_presets,
            },
        )
}

fn scenario() -> impl Strategy<Value = Scenario> {
    (
        preset_and_carrier(),
        1usize..4096,
        0.05f64..2.0,
        -89.0f64..89.0,
        1.0f64..90.0,
        -10.0f64..-0.01,
        sweep(),
        grid(),
    )
        .prop_map(
            |(
                (band_preset, carrier_hz),
                n_antennas,
                dbar,
                theta_deg,
                theta_worst_deg,
                tau_db,
                sweep,
                grid,
            )| Scenario {
                band_preset,
                carrier_hz,
                n_antennas,
                dbar,
                theta_deg,
                theta_worst_deg,
                tau_db,
                sweep,
                grid,
            },
        )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn parse_of_serialize_is_identity(s in scenario()) {
        let text = s.to_toml();
        let back = parse_scenario(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(back, s);
    }
}
