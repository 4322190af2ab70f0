use num_complex::Complex64;

/// Time series of probability amplitudes.
///
/// `excited[i]` holds the atom-excited components at `times[i]` (one per
/// photon number in the single-mode model, a single entry otherwise).
/// `ground[i]` holds the atom-ground components when they were recorded;
/// `ground_population[i]` is always present.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AmplitudeTrace {
    pub times: Vec<f64>,
    pub excited: Vec<Vec<Complex64>>,
    pub ground: Vec<Vec<Complex64>>,
    pub ground_population: Vec<f64>,
}

impl AmplitudeTrace {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn excited_population(&self, i: usize) -> f64 {
        self.excited[i].iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn excited_populations(&self) -> Vec<f64> {
        (0..self.len())
            .map(|i| self.excited_population(i))
            .collect()
    }

    /// Excited minus ground population.
    pub fn inversion(&self, i: usize) -> f64 {
        self.excited_population(i) - self.ground_population[i]
    }

    pub fn inversions(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.inversion(i)).collect()
    }

    pub fn norm(&self, i: usize) -> f64 {
        self.excited_population(i) + self.ground_population[i]
    }
}
