use std::fmt;

/// Non-fatal conditions reported alongside a result. Each is also logged at
/// `warn` level when raised.
#[derive(Debug, Clone, PartialEq)]
pub enum Notice {
    /// A field point lies closer to the emitter than the radiation-zone
    /// guard `r omega_eg / c >= 10`.
    OutsideRadiationZone { r_omega_over_c: f64 },
    /// Fewer than three cavity modes fall inside the requested band; the
    /// dynamics is in the few-mode (single-mode) regime.
    FewModes { count: usize },
    /// A point sits in the thin layer next to the mirror where the
    /// two-ray field is unreliable. `eta_over_f` is the parabolic
    /// coordinate relative to its boundary value.
    NearMirror { eta_over_f: f64 },
}

impl Notice {
    pub(crate) fn emit(self) -> Self {
        log::warn!("{self}");
        self
    }
}

impl fmt::Display for Notice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Notice::OutsideRadiationZone { r_omega_over_c } => {
                write!(
                    f,
                    "point inside the near zone (r omega/c = {r_omega_over_c:.3} < 10)"
                )
            }
            Notice::FewModes { count } => {
                write!(f, "only {count} cavity modes in band; few-mode regime")
            }
            Notice::NearMirror { eta_over_f } => {
                write!(
                    f,
                    "point next to the mirror (eta/f = {eta_over_f:.4}); two-ray field unreliable"
                )
            }
        }
    }
}
