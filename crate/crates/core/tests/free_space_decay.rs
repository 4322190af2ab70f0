use onephoton_core::free_space::{self, EnergyPart, ModeBand, TwoLevelAtom};
use onephoton_core::numerics::QuadratureSpec;
use onephoton_core::parabolic_mirror::free_space_rate_integral;
use onephoton_core::Error;

fn atom() -> TwoLevelAtom {
    TwoLevelAtom::with_decay_rate(1e3, 1.0).unwrap()
}

#[test]
fn discretised_continuum_decays_at_gamma() {
    let band = ModeBand::flat(1.0, 40.0, 1.0 / 50.0).unwrap();
    let times: Vec<f64> = (0..=70).map(|i| 0.5 + i as f64 * 0.05).collect();
    let trace = free_space::wigner_weisskopf_ode(&atom(), &band, &times).unwrap();
    let rate = free_space::fitted_decay_rate(&times, &trace.excited_populations()).unwrap();
    assert!((rate - 1.0).abs() < 0.02, "fitted rate {rate}");
    for k in 0..trace.len() {
        assert!((trace.norm(k) - 1.0).abs() < 1e-9);
    }
}

#[test]
fn wide_band_follows_exponential_pointwise() {
    let band = ModeBand::flat(1.0, 100.0, 1.0 / 50.0).unwrap();
    let times: Vec<f64> = (0..=50).map(|i| i as f64 * 0.1).collect();
    let trace = free_space::wigner_weisskopf_ode(&atom(), &band, &times).unwrap();
    for (t, p) in times.iter().zip(trace.excited_populations()) {
        assert!((p - (-t).exp()).abs() < 2e-2, "t = {t}: {p}");
    }
}

#[test]
fn recurrence_guard_blocks_long_runs() {
    let band = ModeBand::flat(1.0, 40.0, 1.0 / 50.0).unwrap();
    let res = free_space::wigner_weisskopf_ode(&atom(), &band, &[0.0, 400.0]);
    assert!(matches!(res, Err(Error::RecurrenceGuard { .. })));
}

#[test]
fn packet_energy_is_conserved() {
    let a = atom();
    let spec = QuadratureSpec::new(1e-9, 1e-12, 4000).unwrap();
    for t in [0.5, 1.0, 2.0, -1.0] {
        let total = free_space::packet_energy(&a, t, EnergyPart::Total, &spec).unwrap();
        let electric = free_space::packet_energy(&a, t, EnergyPart::Electric, &spec).unwrap();
        let expect = free_space::emitted_energy(&a, t);
        assert!(((total.total() - expect) / expect).abs() < 1e-6, "{t}");
        assert!(
            ((2.0 * electric.total() - expect) / expect).abs() < 1e-6,
            "{t}"
        );
        // the near-zone piece never exceeds what the packet tail carries over r_min
        let bound = a.omega_eg() * ((a.decay_rate() * total.r_min).exp() - 1.0);
        assert!(total.inner_correction > 0.0 && total.inner_correction <= bound);
    }
}

#[test]
fn golden_rule_quadrature_matches_closed_rate() {
    for (omega, gamma) in [(1e3, 1.0), (50.0, 0.3), (7.0, 0.01)] {
        let a = TwoLevelAtom::with_decay_rate(omega, gamma).unwrap();
        let q = free_space_rate_integral(&a, &QuadratureSpec::default()).unwrap();
        assert!((q.value / a.decay_rate() - 1.0).abs() < 1e-10);
    }
}
