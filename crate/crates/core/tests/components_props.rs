use num_complex::Complex64;
use proptest::prelude::*;

use rfsic::components::{
    antenna, cable, circulator, dummy_antenna, hybrid180, splitter, AntennaModel, CableSpec,
    DummyPerturbation, HybridMode, HybridParams, PerturbationModel, SplitterParams,
};
use rfsic::netcore::{FrequencyGrid, NetworkBlock, PortRef, Spacing};
use rfsic::solver::{reduce, Circuit};

fn grid() -> FrequencyGrid {
    FrequencyGrid::new(1e9, 3e9, 11, Spacing::Linear).unwrap()
}

fn assert_passive_reciprocal(b: &NetworkBlock) -> Result<(), TestCaseError> {
    for m in b.matrices() {
        prop_assert!(m.max_singular_value() <= 1.0 + 1e-9, "σmax {}", m.max_singular_value());
        prop_assert!(m.reciprocity_error() <= 1e-12);
    }
    Ok(())
}

fn cable_spec() -> impl Strategy<Value = CableSpec> {
    (0.0f64..2.0, 0.3f64..=1.0, 0.0f64..2.0).prop_map(|(l, vf, a)| CableSpec {
        length_m: l,
        velocity_factor: vf,
        loss_db_per_m_at_1ghz: a,
    })
}

fn cascade(a: &CableSpec, b: &CableSpec, g: &FrequencyGrid) -> NetworkBlock {
    let blocks = vec![cable(a, g).unwrap().renamed("A"), cable(b, g).unwrap().renamed("B")];
    let c = Circuit::assemble(
        blocks,
        vec![(PortRef::new("A", 2), PortRef::new("B", 1))],
        vec![("in".into(), PortRef::new("A", 1)), ("out".into(), PortRef::new("B", 2))],
    )
    .unwrap();
    reduce(&c).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn splitters_that_build_are_passive(
        excess in 0.0f64..6.0,
        iso in 3.0f64..60.0,
        amp in -1.0f64..1.0,
        ph in -20.0f64..20.0,
        thru in -180.0f64..180.0,
    ) {
        let p = SplitterParams {
            excess_loss_db: excess,
            isolation_db: iso,
            amp_imbalance_db: amp,
            phase_imbalance_deg: ph,
            thru_phase_deg: thru,
        };
        // construction either succeeds with a passive block or refuses
        if let Ok(b) = splitter(&p, &grid()) {
            assert_passive_reciprocal(&b)?;
        }
    }

    #[test]
    fn physical_hybrid_and_cable_are_passive(excess in 0.0f64..6.0, spec in cable_spec()) {
        let h = hybrid180(&HybridParams { mode: HybridMode::Physical, excess_loss_db: excess }, &grid()).unwrap();
        assert_passive_reciprocal(&h)?;
        assert_passive_reciprocal(&cable(&spec, &grid()).unwrap())?;
    }

    #[test]
    fn matched_circulator_is_lossless(re in -0.5f64..0.5, im in -0.5f64..0.5) {
        let b = circulator(Complex64::new(re, im), &grid()).unwrap();
        if re == 0.0 && im == 0.0 {
            for m in b.matrices() {
                prop_assert!((m.max_singular_value() - 1.0).abs() <= 1e-12);
            }
        }
        // the 1-γ² forward entries follow from the mismatch definition
        for m in b.matrices() {
            let g = Complex64::new(re, im);
            prop_assert!((m.get(1, 0) - (1.0 - g * g)).norm() <= 1e-15);
            prop_assert!((m.get(2, 0) - g).norm() <= 1e-15);
        }
    }

    #[test]
    fn cable_cascade_adds_lengths(a in cable_spec(), l2 in 0.0f64..2.0) {
        // same velocity factor and loss slope, so the cascade is one longer cable
        let b = CableSpec { length_m: l2, ..a };
        let joined = CableSpec { length_m: a.length_m + l2, ..a };
        let g = grid();
        let got = cascade(&a, &b, &g);
        let want = cable(&joined, &g).unwrap();
        for (x, y) in got.matrices().iter().zip(want.matrices()) {
            for (p, q) in x.entries().iter().zip(y.entries()) {
                prop_assert!((p - q).norm() <= 1e-12);
            }
        }
    }

    #[test]
    fn passive_rlc_antenna_reflects_at_most_fully(
        r in 0.0f64..1000.0,
        l in 0.0f64..50e-9,
        c in 0.01e-12f64..50e-12,
    ) {
        for g in (AntennaModel::Rlc { r, l, c }).gamma(&grid()).unwrap() {
            prop_assert!(g.norm() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn zero_perturbation_dummy_equals_antenna(
        r in 1.0f64..300.0,
        l in 0.1e-9f64..20e-9,
        c in 0.1e-12f64..20e-12,
        phase in -180.0f64..180.0,
        linear in any::<bool>(),
    ) {
        let model = AntennaModel::Rlc { r, l, c };
        let pert = DummyPerturbation {
            delta_mag: 0.0,
            delta_phase_deg: phase,
            model: if linear { PerturbationModel::LinearInF } else { PerturbationModel::Constant },
        };
        let d = dummy_antenna(&model, &pert, &grid()).unwrap();
        let a = antenna(&model, &grid()).unwrap();
        prop_assert_eq!(d.matrices(), a.matrices());
    }
}

#[test]
fn invalid_parameters_are_rejected() {
    let g = grid();
    assert!(cable(&CableSpec::lossless(1.0, 0.0), &g).is_err());
    assert!(cable(&CableSpec::lossless(1.0, 1.2), &g).is_err());
    assert!(cable(&CableSpec::lossless(-0.1, 0.7), &g).is_err());
    assert!(circulator(Complex64::new(1.0, 0.0), &g).is_err());
    assert!(antenna(&AntennaModel::Rlc { r: -1.0, l: 1e-9, c: 1e-12 }, &g).is_err());
    assert!(dummy_antenna(&AntennaModel::default_rlc(), &DummyPerturbation::constant(-0.1, 0.0), &g).is_err());
    let lossless_leaky = SplitterParams { isolation_db: 20.0, ..SplitterParams::ideal() };
    assert!(splitter(&lossless_leaky, &g).is_err());
}

#[test]
fn perturbed_dummy_is_clamped_to_unit_reflection() {
    let open = AntennaModel::Rlc { r: 1e9, l: 0.0, c: 1.0 };
    let d = dummy_antenna(&open, &DummyPerturbation::constant(0.5, 0.0), &grid()).unwrap();
    for m in d.matrices() {
        assert!((m.get(0, 0).norm() - 1.0).abs() <= 1e-12);
    }
}
