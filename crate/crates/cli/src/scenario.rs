//! The runnable scenarios, their parameters and their output tables.

use std::f64::consts::PI;

use onephoton_core::free_space::{self, EnergyPart, ModeBand, TwoLevelAtom};
use onephoton_core::jcp::{self, InitialField, JcpParams};
use onephoton_core::numerics::QuadratureSpec;
use onephoton_core::parabolic_mirror::{self as pm, ParabolicGeometry};
use onephoton_core::spherical_cavity::{self as sc, SphericalCavity};
use onephoton_core::{Error as CoreError, Notice};

use crate::config::{ScenarioConfig, Value};
use crate::error::CliError;
use crate::table::{format_number, ResultTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    JcpInversion,
    JcpVacuum,
    FreeDecay,
    FreeWavepacket,
    SphereRevival,
    ParabolaEta,
    ParabolaField,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamKind {
    Number,
    Integer,
    Bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Constraint {
    None,
    Positive,
    NonNegative,
    AtLeast(f64),
    AtMost(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParamSpec {
    pub key: &'static str,
    pub kind: ParamKind,
    pub default: Option<Value>,
    pub constraint: Constraint,
    pub doc: &'static str,
}

impl ParamSpec {
    pub(crate) fn check(&self, value: &Value) -> Result<(), String> {
        let x = match value {
            Value::Number(x) => *x,
            Value::Integer(n) => *n as f64,
            Value::Bool(_) => return Ok(()),
        };
        let ok = match self.constraint {
            Constraint::None => true,
            Constraint::Positive => x > 0.0,
            Constraint::NonNegative => x >= 0.0,
            Constraint::AtLeast(m) => x >= m,
            Constraint::AtMost(m) => x <= m,
        };
        if ok {
            Ok(())
        } else {
            Err(match self.constraint {
                Constraint::Positive => format!("must be > 0, got {x}"),
                Constraint::NonNegative => format!("must be >= 0, got {x}"),
                Constraint::AtLeast(m) => format!("must be >= {m}, got {x}"),
                Constraint::AtMost(m) => format!("must be <= {m}, got {x}"),
                Constraint::None => unreachable!(),
            })
        }
    }
}

fn num(
    key: &'static str,
    default: Option<f64>,
    constraint: Constraint,
    doc: &'static str,
) -> ParamSpec {
    ParamSpec {
        key,
        kind: ParamKind::Number,
        default: default.map(Value::Number),
        constraint,
        doc,
    }
}

fn int(key: &'static str, default: u64, min: f64, doc: &'static str) -> ParamSpec {
    ParamSpec {
        key,
        kind: ParamKind::Integer,
        default: Some(Value::Integer(default)),
        constraint: Constraint::AtLeast(min),
        doc,
    }
}

fn flag(key: &'static str, default: bool, doc: &'static str) -> ParamSpec {
    ParamSpec {
        key,
        kind: ParamKind::Bool,
        default: Some(Value::Bool(default)),
        constraint: Constraint::None,
        doc,
    }
}

impl Scenario {
    pub const ALL: [Scenario; 7] = [
        Scenario::JcpInversion,
        Scenario::JcpVacuum,
        Scenario::FreeDecay,
        Scenario::FreeWavepacket,
        Scenario::SphereRevival,
        Scenario::ParabolaEta,
        Scenario::ParabolaField,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::JcpInversion => "jcp-inversion",
            Scenario::JcpVacuum => "jcp-vacuum",
            Scenario::FreeDecay => "free-decay",
            Scenario::FreeWavepacket => "free-wavepacket",
            Scenario::SphereRevival => "sphere-revival",
            Scenario::ParabolaEta => "parabola-eta",
            Scenario::ParabolaField => "parabola-field",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.name() == name)
    }

    pub fn description(self) -> &'static str {
        match self {
            Scenario::JcpInversion => {
                "single-mode inversion w(t) for a coherent field (times in 1/|g|)"
            }
            Scenario::JcpVacuum => {
                "vacuum Rabi oscillation w(t) of an excited atom (times in 1/|g|)"
            }
            Scenario::FreeDecay => {
                "excited population from a discretised free-space continuum (Gamma = 1)"
            }
            Scenario::FreeWavepacket => {
                "one-photon energy density around a decaying dipole (Gamma = 1)"
            }
            Scenario::SphereRevival => {
                "excited population at the centre of a conducting sphere (Gamma = 1)"
            }
            Scenario::ParabolaEta => {
                "on-axis decay-rate factor eta inside a parabolic mirror (k in 1/mm, f in mm)"
            }
            Scenario::ParabolaField => {
                "two-ray field energy density inside a parabolic mirror (Gamma = 1)"
            }
        }
    }

    /// Columns of the output table.
    pub fn columns(self, config: &ScenarioConfig) -> Vec<&'static str> {
        match self {
            Scenario::JcpInversion if config.flag("compare_ode") => vec!["t", "w", "w_ode"],
            Scenario::JcpInversion | Scenario::JcpVacuum => vec!["t", "w"],
            Scenario::FreeDecay => vec!["t", "p_excited", "p_exponential"],
            Scenario::FreeWavepacket => {
                vec!["r", "theta", "energy_density", "electric_re", "electric_im"]
            }
            Scenario::SphereRevival if config.flag("compare_ode") => {
                vec!["t", "p_excited", "p_modes"]
            }
            Scenario::SphereRevival => vec!["t", "p_excited"],
            Scenario::ParabolaEta if config.flag("quadrature") => {
                vec!["z", "z_plus_f", "eta", "eta_quadrature"]
            }
            Scenario::ParabolaEta => vec!["z", "z_plus_f", "eta"],
            Scenario::ParabolaField => {
                vec![
                    "z",
                    "rho",
                    "energy_density",
                    "spherical_density",
                    "plane_density",
                    "near_mirror",
                ]
            }
        }
    }

    pub fn parameters(self) -> Vec<ParamSpec> {
        use Constraint::*;
        let samples = |d| int("samples", d, 2.0, "number of time samples");
        match self {
            Scenario::JcpInversion => vec![
                num(
                    "mean_photons",
                    Some(25.0),
                    NonNegative,
                    "mean photon number of the coherent state",
                ),
                num("detuning", Some(0.0), None, "detuning in units of |g|"),
                num("t_end", Some(100.0), Positive, "last sample time"),
                samples(2001),
                flag(
                    "compare_ode",
                    false,
                    "also integrate the amplitude equations",
                ),
            ],
            Scenario::JcpVacuum => vec![
                num("detuning", Some(0.0), None, "detuning in units of |g|"),
                num("t_end", Some(4.0 * PI), Positive, "last sample time"),
                samples(401),
            ],
            Scenario::FreeDecay => vec![
                num(
                    "omega_over_gamma",
                    Some(1000.0),
                    AtLeast(10.0),
                    "transition frequency",
                ),
                num(
                    "band_width",
                    Some(40.0),
                    AtLeast(20.0),
                    "total width of the mode band",
                ),
                num("spacing", Some(0.02), Positive, "mode spacing"),
                num("t_end", Some(5.0), Positive, "last sample time"),
                samples(101),
            ],
            Scenario::FreeWavepacket => vec![
                num(
                    "omega_over_gamma",
                    Some(1000.0),
                    AtLeast(10.0),
                    "transition frequency",
                ),
                num(
                    "t",
                    Some(1.0),
                    None,
                    "time of the snapshot (negative: absorption branch)",
                ),
                num("r_max", Some(1.5), Positive, "outer radius of the grid"),
                int("r_samples", 30, 1.0, "radial samples, r_max/n .. r_max"),
                int("theta_samples", 13, 2.0, "polar samples, 0 .. pi"),
                num(
                    "rel_tol",
                    Some(1e-9),
                    Positive,
                    "relative tolerance of the energy quadrature",
                ),
            ],
            Scenario::SphereRevival => vec![
                num("gamma_r", Some(10.0), Positive, "Gamma R / c"),
                num(
                    "omega_over_gamma",
                    Some(1000.0),
                    AtLeast(10.0),
                    "transition frequency",
                ),
                flag(
                    "resonant",
                    true,
                    "move omega_eg onto the nearest cavity mode",
                ),
                num(
                    "band_width",
                    Some(1000.0),
                    AtLeast(20.0),
                    "mode band for the mode-sum comparison",
                ),
                num(
                    "round_trips",
                    Some(3.0),
                    Positive,
                    "last sample time in units of 2R/c",
                ),
                samples(601),
                flag("compare_ode", true, "also integrate the discrete mode set"),
            ],
            Scenario::ParabolaEta => vec![
                num("k", Option::None, Positive, "wave number in 1/mm"),
                num("focal_length", Some(2.0), Positive, "focal length in mm"),
                num(
                    "z_min",
                    Some(-2.0),
                    None,
                    "first axis point, measured from the focus (mm)",
                ),
                num(
                    "z_max",
                    Some(2.0),
                    None,
                    "last axis point, measured from the focus (mm)",
                ),
                int("samples", 401, 2.0, "number of axis samples"),
                flag(
                    "quadrature",
                    true,
                    "also evaluate the full angular integral",
                ),
                num(
                    "rel_tol",
                    Some(1e-10),
                    Positive,
                    "relative tolerance of the quadrature",
                ),
            ],
            Scenario::ParabolaField => vec![
                num(
                    "omega_over_gamma",
                    Some(1000.0),
                    AtLeast(10.0),
                    "transition frequency",
                ),
                num(
                    "focal_length",
                    Some(10.0),
                    Positive,
                    "focal length in units of c/Gamma",
                ),
                num("t", Some(30.0), None, "time of the snapshot"),
                num(
                    "z_max",
                    Some(40.0),
                    Positive,
                    "largest z, measured from the vertex",
                ),
                int("z_samples", 81, 2.0, "axial samples 0 .. z_max"),
                num(
                    "rho_max",
                    Some(40.0),
                    Positive,
                    "largest distance from the axis",
                ),
                int("rho_samples", 41, 2.0, "radial samples 0 .. rho_max"),
            ],
        }
    }

    /// Checks spanning several parameters, as `(key, message)` pairs.
    pub(crate) fn cross_check(self, cfg: &ScenarioConfig) -> Vec<(&'static str, String)> {
        let mut out = Vec::new();
        match self {
            Scenario::FreeDecay => {
                if cfg.number("spacing") > cfg.number("band_width") {
                    out.push(("spacing", "must not exceed band_width".to_owned()));
                }
            }
            Scenario::ParabolaEta => {
                let f = cfg.number("focal_length");
                if cfg.number("z_min") < -f {
                    out.push(("z_min", format!("lies behind the mirror vertex at -{f}")));
                }
                if cfg.number("z_max") <= cfg.number("z_min") {
                    out.push(("z_max", "must exceed z_min".to_owned()));
                }
            }
            _ => {}
        }
        out
    }

    pub fn run(self, cfg: &ScenarioConfig) -> Result<ResultTable, CliError> {
        let physics = |source: CoreError| CliError::Physics {
            scenario: self.name(),
            source,
        };
        let mut table = ResultTable::new(&self.columns(cfg));
        table.meta("scenario", self.name());
        table.meta("version", env!("CARGO_PKG_VERSION"));
        for (k, v) in cfg.params() {
            table.meta(&format!("param.{k}"), v);
        }
        match self {
            Scenario::JcpInversion => run_jcp_inversion(cfg, &mut table).map_err(physics)?,
            Scenario::JcpVacuum => run_jcp_vacuum(cfg, &mut table).map_err(physics)?,
            Scenario::FreeDecay => run_free_decay(cfg, &mut table).map_err(physics)?,
            Scenario::FreeWavepacket => run_free_wavepacket(cfg, &mut table).map_err(physics)?,
            Scenario::SphereRevival => run_sphere(cfg, &mut table).map_err(physics)?,
            Scenario::ParabolaEta => run_parabola_eta(cfg, &mut table).map_err(physics)?,
            Scenario::ParabolaField => run_parabola_field(cfg, &mut table).map_err(physics)?,
        }
        Ok(table)
    }
}

/// `count` equidistant points from `start` to `end`, both included.
pub fn linspace(start: f64, end: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![end];
    }
    let step = (end - start) / (count - 1) as f64;
    (0..count)
        .map(|i| {
            if i + 1 == count {
                end
            } else {
                start + i as f64 * step
            }
        })
        .collect()
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn run_jcp_inversion(cfg: &ScenarioConfig, table: &mut ResultTable) -> Result<(), CoreError> {
    let params = JcpParams::coherent(1.0, cfg.number("detuning"), cfg.number("mean_photons"))?;
    let times = linspace(0.0, cfg.number("t_end"), cfg.integer("samples"));
    let w = jcp::inversion(&params, &times)?.inversion;
    let (collapse, revival) = jcp::collapse_revival_times(&params)?;
    table.meta("fock_cutoff", jcp::fock_cutoff(params.mean_photons())?);
    table.meta("collapse_time", format_number(collapse));
    table.meta("revival_time", format_number(revival));
    if cfg.flag("compare_ode") {
        let ode = jcp::evolve_ode(&params, &times)?.inversions();
        table.meta("max_ode_deviation", format_number(max_abs_diff(&w, &ode)));
        for ((t, w), o) in times.iter().zip(&w).zip(&ode) {
            table.push(vec![*t, *w, *o]);
        }
    } else {
        for (t, w) in times.iter().zip(&w) {
            table.push(vec![*t, *w]);
        }
    }
    Ok(())
}

fn run_jcp_vacuum(cfg: &ScenarioConfig, table: &mut ResultTable) -> Result<(), CoreError> {
    let params = JcpParams::new(1.0, cfg.number("detuning"), InitialField::Vacuum)?;
    let times = linspace(0.0, cfg.number("t_end"), cfg.integer("samples"));
    let w = jcp::inversion(&params, &times)?.inversion;
    table.meta(
        "vacuum_rabi_frequency",
        format_number(jcp::rabi_frequency(0, &params)),
    );
    for (t, w) in times.iter().zip(&w) {
        table.push(vec![*t, *w]);
    }
    Ok(())
}

fn run_free_decay(cfg: &ScenarioConfig, table: &mut ResultTable) -> Result<(), CoreError> {
    let atom = TwoLevelAtom::with_decay_rate(cfg.number("omega_over_gamma"), 1.0)?;
    let band = ModeBand::flat(1.0, cfg.number("band_width"), cfg.number("spacing"))?;
    let times = linspace(0.0, cfg.number("t_end"), cfg.integer("samples"));
    let trace = free_space::wigner_weisskopf_ode(&atom, &band, &times)?;
    let pops = trace.excited_populations();
    table.meta("modes", band.len());
    table.meta("recurrence_time", format_number(band.recurrence_time()));
    let worst_norm = (0..trace.len())
        .map(|k| (trace.norm(k) - 1.0).abs())
        .fold(0.0, f64::max);
    table.meta("max_norm_error", format_number(worst_norm));
    let (fit_t, fit_p): (Vec<f64>, Vec<f64>) = times
        .iter()
        .zip(&pops)
        .filter(|(t, p)| (0.5..=4.0).contains(*t) && **p > 0.0)
        .map(|(t, p)| (*t, *p))
        .unzip();
    if fit_t.len() >= 2 {
        table.meta(
            "fitted_rate",
            format_number(free_space::fitted_decay_rate(&fit_t, &fit_p)?),
        );
    }
    for (t, p) in times.iter().zip(&pops) {
        table.push(vec![*t, *p, (-t).exp()]);
    }
    Ok(())
}

fn run_free_wavepacket(cfg: &ScenarioConfig, table: &mut ResultTable) -> Result<(), CoreError> {
    let atom = TwoLevelAtom::with_decay_rate(cfg.number("omega_over_gamma"), 1.0)?;
    let t = cfg.number("t");
    let n_r = cfg.integer("r_samples");
    let r_max = cfg.number("r_max");
    let radii = linspace(r_max / n_r as f64, r_max, n_r);
    let angles = linspace(0.0, PI, cfg.integer("theta_samples"));
    let spec = QuadratureSpec::new(cfg.number("rel_tol"), 1e-14, 4000)?;
    let energy = free_space::packet_energy(&atom, t, EnergyPart::Total, &spec)?;
    let electric = free_space::packet_energy(&atom, t, EnergyPart::Electric, &spec)?;
    table.meta(
        "expected_energy",
        format_number(free_space::emitted_energy(&atom, t)),
    );
    table.meta("energy_integral", format_number(energy.total()));
    table.meta("electric_energy_integral", format_number(electric.total()));
    table.meta("inner_cutoff", format_number(energy.r_min));
    table.meta("inner_correction", format_number(energy.inner_correction));
    table.meta("quadrature_error", format_number(energy.quadrature.error));
    let map = free_space::field_map(&atom, &radii, &angles, t)?;
    table.meta("near_zone_points", map.notices().count());
    for p in &map.points {
        let e = p.components[0];
        table.push(vec![p.coords.0, p.coords.1, p.energy_density, e.re, e.im]);
    }
    Ok(())
}

fn run_sphere(cfg: &ScenarioConfig, table: &mut ResultTable) -> Result<(), CoreError> {
    let radius = cfg.number("gamma_r");
    let mut omega = cfg.number("omega_over_gamma");
    if cfg.flag("resonant") {
        omega = sc::nearest_ladder_frequency(radius, omega);
    }
    let atom = TwoLevelAtom::with_decay_rate(omega, 1.0)?;
    let cavity = SphericalCavity::new(radius, atom)?;
    let times = linspace(
        0.0,
        cfg.number("round_trips") * cavity.round_trip(),
        cfg.integer("samples"),
    );
    let closed = times
        .iter()
        .map(|&t| sc::excited_probability_closed_form(&cavity, t))
        .collect::<Result<Vec<_>, _>>()?;
    table.meta("omega_eg", format_number(omega));
    table.meta(
        "modes_per_linewidth",
        format_number(cavity.modes_per_linewidth()),
    );
    if cfg.flag("compare_ode") {
        let modes = sc::resonant_mode_set(&cavity, cfg.number("band_width"))?;
        table.meta("modes", modes.len());
        if let Some(Notice::FewModes { count }) = modes.notice() {
            table.meta("notice", format!("few-mode regime ({count} modes in band)"));
        }
        let trace = sc::evolve_cavity_ode(&modes, &times)?;
        let pops = trace.excited_populations();
        table.meta(
            "max_mode_sum_deviation",
            format_number(max_abs_diff(&closed, &pops)),
        );
        for ((t, c), p) in times.iter().zip(&closed).zip(&pops) {
            table.push(vec![*t, *c, *p]);
        }
    } else {
        for (t, c) in times.iter().zip(&closed) {
            table.push(vec![*t, *c]);
        }
    }
    Ok(())
}

fn run_parabola_eta(cfg: &ScenarioConfig, table: &mut ResultTable) -> Result<(), CoreError> {
    let geometry = ParabolicGeometry::new(cfg.number("focal_length"), cfg.number("k"))?;
    let spec = QuadratureSpec::new(cfg.number("rel_tol"), 1e-15, 20_000)?;
    let quadrature = cfg.flag("quadrature").then_some(&spec);
    let profile = pm::rate_profile(
        &geometry,
        (cfg.number("z_min"), cfg.number("z_max")),
        cfg.integer("samples"),
        quadrature,
    )?;
    table.meta("kf", format_number(geometry.kf()));
    table.meta("theta0", format_number(geometry.theta0()));
    table.meta(
        "cutoff_correction",
        format_number(
            pm::cutoff_correction(&geometry, &QuadratureSpec::new(1e-12, 1e-300, 2000)?)?.value,
        ),
    );
    if let Some(err) = profile.max_quadrature_error() {
        table.meta("max_quadrature_error", format_number(err));
        table.meta(
            "max_closed_form_discrepancy",
            format_number(profile.max_discrepancy().unwrap_or(0.0)),
        );
    }
    for (i, p) in profile.positions.iter().enumerate() {
        let mut row = vec![p.z_focus(), p.z(), profile.eta[i]];
        if let Some(q) = &profile.quadrature {
            row.push(q[i].value);
        }
        table.push(row);
    }
    Ok(())
}

fn run_parabola_field(cfg: &ScenarioConfig, table: &mut ResultTable) -> Result<(), CoreError> {
    let omega = cfg.number("omega_over_gamma");
    let atom = TwoLevelAtom::with_decay_rate(omega, 1.0)?;
    let geometry = ParabolicGeometry::new(cfg.number("focal_length"), omega)?;
    let zs = linspace(0.0, cfg.number("z_max"), cfg.integer("z_samples"));
    let rhos = linspace(0.0, cfg.number("rho_max"), cfg.integer("rho_samples"));
    let map = pm::field_map(&geometry, &atom, &zs, &rhos, cfg.number("t"))?;
    table.meta("points_inside", map.len());
    let near = map
        .notices()
        .filter(|n| matches!(n, Notice::NearMirror { .. }))
        .count();
    table.meta("near_mirror_points", near);
    for p in &map.points {
        let flagged = matches!(p.notice, Some(Notice::NearMirror { .. }));
        table.push(vec![
            p.coords.0,
            p.coords.1,
            p.energy_density,
            p.components[0].norm_sqr(),
            p.components[1].norm_sqr(),
            if flagged { 1.0 } else { 0.0 },
        ]);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_config;

    #[test]
    fn names_round_trip() {
        for s in Scenario::ALL {
            assert_eq!(Scenario::from_name(s.name()), Some(s));
        }
        assert_eq!(Scenario::from_name("nope"), None);
    }

    #[test]
    fn defaults_satisfy_constraints() {
        for s in Scenario::ALL {
            for p in s.parameters() {
                if let Some(v) = &p.default {
                    assert!(p.check(v).is_ok(), "{} {}", s.name(), p.key);
                }
            }
        }
    }

    #[test]
    fn vacuum_run_is_a_cosine() {
        let cfg = parse_config("scenario = jcp-vacuum\n").unwrap();
        let table = Scenario::JcpVacuum.run(&cfg).unwrap();
        assert_eq!(table.columns, vec!["t", "w"]);
        for row in &table.rows {
            assert!((row[1] - (2.0 * row[0]).cos()).abs() < 1e-14);
        }
    }

    #[test]
    fn linspace_hits_ends() {
        let v = linspace(0.0, 0.3, 4);
        assert_eq!(v.first(), Some(&0.0));
        assert_eq!(v.last(), Some(&0.3));
        assert_eq!(v.len(), 4);
    }

    #[test]
    fn physics_errors_keep_scenario_context() {
        let cfg =
            parse_config("scenario = sphere-revival\n[sphere-revival]\ngamma_r = 0.01\n").unwrap();
        let err = Scenario::SphereRevival.run(&cfg).unwrap_err();
        assert_eq!(err.exit_code(), 1);
        assert!(err.to_string().starts_with("sphere-revival"));
    }
}
