use onephoton_core::free_space::TwoLevelAtom;
use onephoton_core::spherical_cavity::{self as sc, SphericalCavity};

fn cavity(gamma_r: f64) -> SphericalCavity {
    let atom = TwoLevelAtom::with_decay_rate(1e3, 1.0).unwrap();
    SphericalCavity::new(gamma_r, atom).unwrap()
}

fn compare(gamma_r: f64, band: f64) -> f64 {
    let c = cavity(gamma_r);
    let modes = sc::resonant_mode_set(&c, band).unwrap();
    let times: Vec<f64> = (0..=600)
        .map(|i| i as f64 * 6.0 * gamma_r / 600.0)
        .collect();
    let trace = sc::evolve_cavity_ode(&modes, &times).unwrap();
    for k in 0..trace.len() {
        assert!((trace.norm(k) - 1.0).abs() < 1e-9, "norm at {}", times[k]);
    }
    times
        .iter()
        .zip(trace.excited_populations())
        .map(|(&t, p)| (sc::excited_probability_closed_form(&c, t).unwrap() - p).abs())
        .fold(0.0, f64::max)
}

#[test]
fn closed_form_matches_mode_sum_small_cavity() {
    let worst = compare(1.0, 1000.0);
    eprintln!("max |P_closed - P_modes| = {worst:.3e}");
    assert!(worst < 5e-3, "{worst}");
}

#[test]
fn closed_form_matches_mode_sum_large_cavity() {
    let worst = compare(10.0, 1000.0);
    eprintln!("max |P_closed - P_modes| = {worst:.3e}");
    assert!(worst < 5e-3, "{worst}");
}

#[test]
fn free_space_limit_for_large_cavity() {
    let c = cavity(50.0);
    for i in 0..=300 {
        let t = i as f64 * 0.01;
        let p = sc::excited_probability_closed_form(&c, t).unwrap();
        assert!((p - (-t).exp()).abs() <= 1e-6);
    }
}

#[test]
fn echo_re_excites_the_atom() {
    let c = cavity(10.0);
    let floor = (-20f64).exp();
    let samples: Vec<f64> = (0..=2000)
        .map(|i| 20.0 + i as f64 * 0.01)
        .map(|t| sc::excited_probability_closed_form(&c, t).unwrap())
        .collect();
    let has_peak = samples
        .windows(3)
        .any(|w| w[1] > w[0] && w[1] >= w[2] && w[1] > floor);
    assert!(has_peak);
}
