//! Sampling domains and points for the numeric oracle.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub const DEFAULT_SAMPLES: usize = 20;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum DomainError {
    #[error("interval for '{name}' is empty: [{lo}, {hi}]")]
    EmptyInterval { name: String, lo: f64, hi: f64 },
}

/// Per-coordinate closed intervals with a sample count and seed.
/// Intervals are chosen to exclude the metric singularities of the system
/// they accompany.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleDomain {
    intervals: Vec<(String, f64, f64)>,
    pub samples: usize,
    pub seed: u64,
}

impl SampleDomain {
    pub fn new(intervals: Vec<(String, f64, f64)>) -> Result<Self, DomainError> {
        for (name, lo, hi) in &intervals {
            if !(lo < hi) {
                return Err(DomainError::EmptyInterval {
                    name: name.clone(),
                    lo: *lo,
                    hi: *hi,
                });
            }
        }
        Ok(SampleDomain {
            intervals,
            samples: DEFAULT_SAMPLES,
            seed: 0,
        })
    }

    pub fn single(name: impl Into<String>, lo: f64, hi: f64) -> Result<Self, DomainError> {
        SampleDomain::new(vec![(name.into(), lo, hi)])
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples.max(1);
        self
    }

    /// New domain with an extra coordinate interval appended.
    pub fn extended(&self, name: impl Into<String>, lo: f64, hi: f64) -> Result<Self, DomainError> {
        let mut intervals = self.intervals.clone();
        intervals.push((name.into(), lo, hi));
        let mut d = SampleDomain::new(intervals)?;
        d.samples = self.samples;
        d.seed = self.seed;
        Ok(d)
    }

    pub fn intervals(&self) -> &[(String, f64, f64)] {
        &self.intervals
    }

    pub fn names(&self) -> Vec<String> {
        self.intervals.iter().map(|(n, _, _)| n.clone()).collect()
    }

    pub fn contains(&self, point: &SamplePoint) -> bool {
        self.intervals.iter().all(|(name, lo, hi)| {
            point
                .get(name)
                .map(|v| v >= *lo && v <= *hi)
                .unwrap_or(false)
        })
    }

    pub fn sampler(&self) -> Sampler {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(self.seed),
            intervals: self.intervals.clone(),
        }
    }

    /// The deterministic sequence of sample points used by the oracle.
    pub fn points(&self) -> Vec<SamplePoint> {
        let mut s = self.sampler();
        (0..self.samples).map(|_| s.next_point()).collect()
    }
}

pub struct Sampler {
    rng: ChaCha8Rng,
    intervals: Vec<(String, f64, f64)>,
}

impl Sampler {
    pub fn next_point(&mut self) -> SamplePoint {
        let coords = self
            .intervals
            .iter()
            .map(|(name, lo, hi)| (name.clone(), self.rng.gen_range(*lo..*hi)))
            .collect();
        SamplePoint { coords }
    }
}

/// One real value per coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplePoint {
    coords: Vec<(String, f64)>,
}

impl SamplePoint {
    pub fn new(coords: Vec<(String, f64)>) -> Self {
        SamplePoint { coords }
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.coords
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| *v)
    }

    pub fn coords(&self) -> &[(String, f64)] {
        &self.coords
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_interval() {
        assert!(SampleDomain::single("x", 2.0, 1.0).is_err());
        assert!(SampleDomain::single("x", 1.0, 1.0).is_err());
    }

    #[test]
    fn sampling_is_deterministic_for_fixed_seed() {
        let d = SampleDomain::single("x", 0.0, 1.0).unwrap().with_seed(7);
        assert_eq!(d.points(), d.points());
        let other = d.clone().with_seed(8);
        assert_ne!(d.points(), other.points());
    }

    #[test]
    fn points_stay_inside() {
        let d = SampleDomain::new(vec![("a".into(), -1.0, 2.0), ("b".into(), 0.5, 0.6)]).unwrap();
        for p in d.points() {
            assert!(d.contains(&p));
        }
    }
}
