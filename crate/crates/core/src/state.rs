//! Pure-state algebra: validated amplitude vectors, tensor products and
//! exact overlaps.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// A single complex amplitude.
pub type ComplexAmplitude = Complex64;

/// Largest accepted deviation of an input vector's norm from 1 before it is
/// rejected (unless normalization was requested explicitly).
pub const NORM_TOLERANCE: f64 = 1e-4;

/// A normalized amplitude vector over `width` qubits.
///
/// Qubit 0 is the most significant bit of the basis index, so the amplitude
/// of `|b0 b1 … b(w-1)⟩` sits at index `b0·2^(w-1) + … + b(w-1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    width: usize,
    amplitudes: Vec<ComplexAmplitude>,
}

fn width_of(len: usize) -> Result<usize> {
    if len == 0 || !len.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(len));
    }
    Ok(len.trailing_zeros() as usize)
}

fn check_finite(amplitudes: &[ComplexAmplitude]) -> Result<()> {
    match amplitudes.iter().position(|a| !a.re.is_finite() || !a.im.is_finite()) {
        Some(i) => Err(Error::NonFinite(i)),
        None => Ok(()),
    }
}

fn norm(amplitudes: &[ComplexAmplitude]) -> f64 {
    amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

/// Rescales `v` to unit norm.
pub fn normalize(v: Vec<ComplexAmplitude>) -> Result<PureState> {
    let width = width_of(v.len())?;
    check_finite(&v)?;
    let n = norm(&v);
    if n == 0.0 {
        return Err(Error::Unnormalizable);
    }
    let amplitudes = v.into_iter().map(|a| a / n).collect();
    Ok(PureState { width, amplitudes })
}

impl PureState {
    /// Accepts `amplitudes` if its norm is within [`NORM_TOLERANCE`] of 1,
    /// then rescales it exactly onto the unit sphere.
    pub fn new(amplitudes: Vec<ComplexAmplitude>) -> Result<Self> {
        width_of(amplitudes.len())?;
        check_finite(&amplitudes)?;
        let n = norm(&amplitudes);
        if (n - 1.0).abs() > NORM_TOLERANCE {
            return if n == 0.0 {
                Err(Error::Unnormalizable)
            } else {
                Err(Error::NormMismatch {
                    norm: n,
                    tolerance: NORM_TOLERANCE,
                })
            };
        }
        normalize(amplitudes)
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// `|0…0⟩` on `width` qubits.
    pub fn zero(width: usize) -> Self {
        Self::basis(width, 0)
    }

    pub fn basis(width: usize, index: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << width];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        PureState { width, amplitudes }
    }

    /// Wraps amplitudes produced by a norm-preserving computation.
    pub(crate) fn from_unitary_output(width: usize, amplitudes: Vec<ComplexAmplitude>) -> Self {
        debug_assert_eq!(amplitudes.len(), 1 << width);
        PureState { width, amplitudes }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn amplitudes(&self) -> &[ComplexAmplitude] {
        &self.amplitudes
    }

    pub(crate) fn into_amplitudes(self) -> Vec<ComplexAmplitude> {
        self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        norm(&self.amplitudes)
    }

    /// `⟨self|other⟩`.
    pub fn inner_product(&self, other: &PureState) -> Result<ComplexAmplitude> {
        if self.width != other.width {
            return Err(Error::WidthMismatch {
                expected: self.width,
                found: other.width,
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }
}

/// `|⟨a|b⟩|²`.
pub fn exact_overlap(a: &PureState, b: &PureState) -> Result<f64> {
    Ok(a.inner_product(b)?.norm_sqr())
}

/// Kronecker product; the first state occupies the most significant qubits.
pub fn tensor_product<'a, I>(states: I) -> Result<PureState>
where
    I: IntoIterator<Item = &'a PureState>,
{
    let mut iter = states.into_iter();
    let first = iter
        .next()
        .ok_or_else(|| Error::Config("tensor product of an empty sequence".into()))?;
    let mut acc = first.clone();
    for s in iter {
        let mut amplitudes = Vec::with_capacity(acc.amplitudes.len() * s.amplitudes.len());
        for a in &acc.amplitudes {
            amplitudes.extend(s.amplitudes.iter().map(|b| a * b));
        }
        acc = PureState {
            width: acc.width + s.width,
            amplitudes,
        };
    }
    Ok(acc)
}

/// `n ≥ 2` states of a common register width, labelled 1..=n.
#[derive(Clone, Debug, PartialEq)]
pub struct StateEnsemble {
    states: Vec<PureState>,
}

impl StateEnsemble {
    pub fn new(states: Vec<PureState>) -> Result<Self> {
        if states.len() < 2 {
            return Err(Error::EnsembleTooSmall {
                min: 2,
                found: states.len(),
            });
        }
        let width = states[0].width;
        if let Some(bad) = states.iter().find(|s| s.width != width) {
            return Err(Error::WidthMismatch {
                expected: width,
                found: bad.width,
            });
        }
        Ok(StateEnsemble { states })
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn width(&self) -> usize {
        self.states[0].width
    }

    pub fn states(&self) -> &[PureState] {
        &self.states
    }

    /// State with 1-based `label`.
    pub fn get(&self, label: usize) -> &PureState {
        &self.states[label - 1]
    }

    /// Exact overlap between the states labelled `i` and `j` (1-based).
    pub fn overlap(&self, i: usize, j: usize) -> f64 {
        // Uniform width is an invariant of the ensemble.
        exact_overlap(self.get(i), self.get(j)).expect("uniform ensemble width")
    }

    /// `n` states with amplitudes drawn uniformly from the unit square, normalized.
    pub fn random(n: usize, width: usize, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let states = (0..n)
            .map(|_| loop {
                let v = (0..1usize << width)
                    .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                    .collect();
                if let Ok(s) = normalize(v) {
                    break s;
                }
            })
            .collect();
        StateEnsemble::new(states)
    }
}
