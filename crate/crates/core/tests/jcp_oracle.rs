use std::f64::consts::PI;

use onephoton_core::jcp::{self, InitialField, JcpParams};
use proptest::prelude::*;

fn grid(end: f64, count: usize) -> Vec<f64> {
    (0..=count).map(|i| end * i as f64 / count as f64).collect()
}

#[test]
fn closed_form_agrees_with_ode_over_three_revivals() {
    for mean in [0.5, 25.0] {
        let params = JcpParams::coherent(1.0, 0.0, mean).unwrap();
        let (_, revival) = jcp::collapse_revival_times(&params).unwrap();
        let times = grid(3.0 * revival, 3000);
        let closed = jcp::inversion(&params, &times).unwrap();
        let ode = jcp::evolve_ode(&params, &times).unwrap();
        let worst = closed
            .inversion
            .iter()
            .zip(ode.inversions())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(worst < 1e-7, "<n> = {mean}: {worst:e}");
        for k in 0..ode.len() {
            assert!((ode.norm(k) - 1.0).abs() < 1e-9);
        }
    }
}

#[test]
fn collapse_then_revival_for_twenty_five_photons() {
    let params = JcpParams::coherent(1.0, 0.0, 25.0).unwrap();
    let (collapse, revival) = jcp::collapse_revival_times(&params).unwrap();
    assert!((collapse - 2.0 * PI).abs() < 1e-15);
    assert!((revival - 2.0 * PI * 26f64.sqrt()).abs() < 1e-12);
    let times = grid(1.3 * revival, 20_000);
    let w = jcp::inversion(&params, &times).unwrap().inversion;
    // envelope: largest |w| over a window of one local Rabi period
    let period = PI / 26f64.sqrt();
    let envelope_at = |t0: f64| {
        times
            .iter()
            .zip(&w)
            .filter(|(t, _)| **t >= t0 && **t <= t0 + period)
            .map(|(_, w)| w.abs())
            .fold(0.0, f64::max)
    };
    assert!(envelope_at(2.0 * collapse - period) < 0.1);
    let peak = times
        .iter()
        .zip(&w)
        .filter(|(t, _)| (**t - revival).abs() <= 0.1 * revival)
        .map(|(_, w)| *w)
        .fold(f64::MIN, f64::max);
    assert!(peak > 0.3, "revival peak {peak}");
}

#[test]
fn vacuum_rabi_cosine() {
    let params = JcpParams::new(0.7, 0.0, InitialField::Vacuum).unwrap();
    let times = grid(20.0, 400);
    let w = jcp::inversion(&params, &times).unwrap().inversion;
    for (t, w) in times.iter().zip(w) {
        assert!((w - (2.0 * 0.7 * t).cos()).abs() < 1e-14);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inversion_stays_in_unit_interval(
        mean in 0.0f64..40.0,
        detuning in -5.0f64..5.0,
        t in 0.0f64..200.0,
    ) {
        let params = JcpParams::coherent(1.0, detuning, mean).unwrap();
        let w = jcp::inversion(&params, &[t]).unwrap().inversion[0];
        prop_assert!((-1.0 - 1e-12..=1.0 + 1e-12).contains(&w));
    }

    #[test]
    fn closed_form_pairs_are_unitary(
        n in 0usize..200,
        detuning in -10.0f64..10.0,
        phase in 0.0f64..6.3,
        t in 0.0f64..100.0,
    ) {
        let params = JcpParams::new(1.0, detuning, InitialField::Fock(n)).unwrap().with_coupling_phase(phase);
        let (e, g) = jcp::amplitudes_closed_form(&params, n, t).unwrap();
        prop_assert!((e.norm_sqr() + g.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn coupling_phase_leaves_inversion_unchanged(
        mean in 0.1f64..10.0,
        phase in 0.0f64..6.3,
        t in 0.0f64..50.0,
    ) {
        let base = JcpParams::coherent(1.0, 0.3, mean).unwrap();
        let rotated = base.clone().with_coupling_phase(phase);
        let a = jcp::inversion(&base, &[t]).unwrap().inversion[0];
        let b = jcp::inversion(&rotated, &[t]).unwrap().inversion[0];
        prop_assert!((a - b).abs() < 1e-13);
    }
}
