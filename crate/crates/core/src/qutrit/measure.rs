use num_complex::Complex64 as C64;

use super::pow3;
use super::state::{subsystem, StateVector};
use crate::{QosError, Result, NULL_PROBABILITY, TOL};

/// Ordered orthonormal basis for a projective measurement on one or two
/// qutrits.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementBasis {
    vectors: Vec<Vec<C64>>,
    outcome_labels: Vec<String>,
}

impl MeasurementBasis {
    pub fn new(vectors: Vec<Vec<C64>>, outcome_labels: Vec<String>) -> Result<Self> {
        let dim = vectors.len();
        if dim != 3 && dim != 9 {
            return Err(QosError::DimensionMismatch {
                expected: 3,
                found: dim,
            });
        }
        if let Some(v) = vectors.iter().find(|v| v.len() != dim) {
            return Err(QosError::DimensionMismatch {
                expected: dim,
                found: v.len(),
            });
        }
        if outcome_labels.len() != dim {
            return Err(QosError::DimensionMismatch {
                expected: dim,
                found: outcome_labels.len(),
            });
        }
        let deviation = orthonormality_deviation(&vectors);
        if deviation.is_nan() {
            return Err(QosError::NonFinite);
        }
        if deviation > TOL {
            return Err(QosError::NotOrthonormal(deviation));
        }
        Ok(Self {
            vectors,
            outcome_labels,
        })
    }

    /// `{|0⟩, |1⟩, |2⟩}` with outcome labels `0`, `1`, `2`.
    pub fn computational() -> Self {
        let vectors = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| C64::new(if i == j { 1.0 } else { 0.0 }, 0.0))
                    .collect()
            })
            .collect();
        Self {
            vectors,
            outcome_labels: (0..3).map(|i| i.to_string()).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<C64>] {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> &[C64] {
        &self.vectors[i]
    }

    pub fn outcome_label(&self, i: usize) -> &str {
        &self.outcome_labels[i]
    }
}

/// `max |⟨v_i|v_j⟩ - δ_ij|`.
pub(crate) fn orthonormality_deviation(vectors: &[Vec<C64>]) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, a) in vectors.iter().enumerate() {
        for (j, b) in vectors.iter().enumerate() {
            let ip: C64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((ip - target).norm());
        }
    }
    worst
}

/// One outcome of a projective measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementRecord {
    pub measured_labels: Vec<String>,
    pub outcome_index: usize,
    pub outcome_label: String,
    pub probability: f64,
    /// Collapsed state of the unmeasured qutrits; `None` for a null outcome.
    pub post_state: Option<StateVector>,
}

impl MeasurementRecord {
    pub fn is_null(&self) -> bool {
        self.post_state.is_none()
    }
}

/// Every outcome of measuring `targets` in `basis`, in basis order.
///
/// The measured qutrits are removed from the post-measurement register; the
/// remaining labels keep their relative order. Outcomes with probability
/// below [`NULL_PROBABILITY`] are reported with probability 0 and no state.
pub fn measure(
    s: &StateVector,
    targets: &[&str],
    basis: &MeasurementBasis,
) -> Result<Vec<MeasurementRecord>> {
    let expected = pow3(targets.len());
    if basis.dim() != expected {
        return Err(QosError::DimensionMismatch {
            expected,
            found: basis.dim(),
        });
    }
    let sub = subsystem(s, targets)?;
    let rest: Vec<String> = s
        .labels()
        .iter()
        .filter(|l| !targets.contains(&l.as_str()))
        .cloned()
        .collect();
    let amps = s.amps();
    let records = basis
        .vectors()
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let projected: Vec<C64> = sub
                .bases
                .iter()
                .map(|&base| {
                    v.iter()
                        .zip(&sub.offsets)
                        .map(|(b, &off)| b.conj() * amps[base + off])
                        .sum()
                })
                .collect();
            let p: f64 = projected.iter().map(|z| z.norm_sqr()).sum();
            let (probability, post_state) = if p < NULL_PROBABILITY {
                (0.0, None)
            } else {
                (p, StateVector::normalized(rest.clone(), projected))
            };
            MeasurementRecord {
                measured_labels: targets.iter().map(|t| t.to_string()).collect(),
                outcome_index: k,
                outcome_label: basis.outcome_label(k).to_string(),
                probability,
                post_state,
            }
        })
        .collect();
    Ok(records)
}
