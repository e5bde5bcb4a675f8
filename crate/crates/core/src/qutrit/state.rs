use num_complex::Complex64 as C64;

use super::{pow3, Unitary};
use crate::{QosError, Result, NULL_PROBABILITY, TOL};

/// Pure state of a labelled qutrit register.
///
/// Amplitude index `i` encodes the trits of the labels in order, most
/// significant first. States are always normalized once constructed.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    labels: Vec<String>,
    amps: Vec<C64>,
}

impl StateVector {
    pub fn new<S: Into<String>>(labels: Vec<S>, amps: Vec<C64>) -> Result<Self> {
        let labels = check_labels(labels)?;
        let expected = pow3(labels.len());
        if amps.len() != expected {
            return Err(QosError::DimensionMismatch {
                expected,
                found: amps.len(),
            });
        }
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(QosError::NonFinite);
        }
        let norm_sqr: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > TOL {
            return Err(QosError::NotNormalized(norm_sqr));
        }
        Ok(Self { labels, amps })
    }

    /// Single qutrit `α|0⟩ + β|1⟩ + γ|2⟩`.
    pub fn qutrit(label: &str, coeffs: [C64; 3]) -> Result<Self> {
        Self::new(vec![label], coeffs.to_vec())
    }

    /// Computational basis state `|index⟩` of the register.
    pub fn basis<S: Into<String>>(labels: Vec<S>, index: usize) -> Result<Self> {
        let n = labels.len();
        if index >= pow3(n) {
            return Err(QosError::OutcomeOutOfRange(index));
        }
        let mut amps = vec![C64::new(0.0, 0.0); pow3(n)];
        amps[index] = C64::new(1.0, 0.0);
        Self::new(labels, amps)
    }

    /// Normalizes `amps`; `None` when the vector is (numerically) zero.
    pub(crate) fn normalized(labels: Vec<String>, amps: Vec<C64>) -> Option<Self> {
        let norm_sqr: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if norm_sqr < NULL_PROBABILITY {
            return None;
        }
        let scale = 1.0 / norm_sqr.sqrt();
        Some(Self {
            labels,
            amps: amps.into_iter().map(|z| z * scale).collect(),
        })
    }

    pub fn num_qutrits(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn amps(&self) -> &[C64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn position(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| QosError::UnknownLabel(label.to_string()))
    }

    pub fn has_label(&self, label: &str) -> bool {
        self.labels.iter().any(|l| l == label)
    }

    /// Same state with the qutrits permuted into `order`.
    pub fn reordered(&self, order: &[&str]) -> Result<Self> {
        if order.len() != self.labels.len() {
            return Err(QosError::DimensionMismatch {
                expected: self.labels.len(),
                found: order.len(),
            });
        }
        let n = self.labels.len();
        let src: Vec<usize> = order
            .iter()
            .map(|l| self.position(l))
            .collect::<Result<_>>()?;
        check_labels(order.to_vec())?;
        let mut amps = vec![C64::new(0.0, 0.0); self.amps.len()];
        for (old_index, &z) in self.amps.iter().enumerate() {
            let trits = super::to_trits(old_index, n);
            let new_index = src
                .iter()
                .fold(0usize, |acc, &p| acc * 3 + trits[p] as usize);
            amps[new_index] = z;
        }
        Ok(Self {
            labels: order.iter().map(|s| s.to_string()).collect(),
            amps,
        })
    }

    /// Same amplitudes under new names.
    pub fn relabeled<S: Into<String>>(&self, labels: Vec<S>) -> Result<Self> {
        let labels = check_labels(labels)?;
        if labels.len() != self.labels.len() {
            return Err(QosError::DimensionMismatch {
                expected: self.labels.len(),
                found: labels.len(),
            });
        }
        Ok(Self {
            labels,
            amps: self.amps.clone(),
        })
    }

    /// `⟨self|other⟩`, matching qutrits by label.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        let order: Vec<&str> = self.labels.iter().map(String::as_str).collect();
        let other = other.reordered(&order)?;
        Ok(self
            .amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }
}

fn check_labels<S: Into<String>>(labels: Vec<S>) -> Result<Vec<String>> {
    let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(QosError::DuplicateLabel(l.clone()));
        }
    }
    Ok(labels)
}

/// Kronecker product with the labels of `a` followed by those of `b`.
pub fn tensor(a: &StateVector, b: &StateVector) -> Result<StateVector> {
    if let Some(l) = b.labels.iter().find(|l| a.has_label(l)) {
        return Err(QosError::LabelCollision(l.clone()));
    }
    let amps = a
        .amps
        .iter()
        .flat_map(|x| b.amps.iter().map(move |y| x * y))
        .collect();
    let labels = a.labels.iter().chain(b.labels.iter()).cloned().collect();
    Ok(StateVector { labels, amps })
}

/// Positions and strides of `targets` inside a register.
pub(crate) struct Subsystem {
    /// Offset added to a base index for each target sub-index.
    pub offsets: Vec<usize>,
    /// Indices whose target trits are all zero, in increasing order.
    pub bases: Vec<usize>,
}

pub(crate) fn subsystem(s: &StateVector, targets: &[&str]) -> Result<Subsystem> {
    let n = s.num_qutrits();
    let mut positions = Vec::with_capacity(targets.len());
    for t in targets {
        let p = s.position(t)?;
        if positions.contains(&p) {
            return Err(QosError::DuplicateLabel(t.to_string()));
        }
        positions.push(p);
    }
    let strides: Vec<usize> = positions.iter().map(|&p| pow3(n - 1 - p)).collect();
    let k = targets.len();
    let offsets = (0..pow3(k))
        .map(|sub| {
            super::to_trits(sub, k)
                .iter()
                .zip(&strides)
                .map(|(&t, &s)| t as usize * s)
                .sum()
        })
        .collect();
    let bases = (0..pow3(n))
        .filter(|&i| {
            let trits = super::to_trits(i, n);
            positions.iter().all(|&p| trits[p] == 0)
        })
        .collect();
    Ok(Subsystem { offsets, bases })
}

/// Applies `u` to the listed qutrits (first target = most significant trit of
/// `u`'s index), identity elsewhere.
pub fn apply_unitary(s: &StateVector, u: &Unitary, targets: &[&str]) -> Result<StateVector> {
    let expected = pow3(targets.len());
    if targets.is_empty() || targets.len() > 2 || u.dim() != expected {
        return Err(QosError::DimensionMismatch {
            expected,
            found: u.dim(),
        });
    }
    let sub = subsystem(s, targets)?;
    let mut amps = s.amps.clone();
    let mut block = vec![C64::new(0.0, 0.0); expected];
    for &base in &sub.bases {
        for (slot, &off) in block.iter_mut().zip(&sub.offsets) {
            *slot = s.amps[base + off];
        }
        for (z, &off) in u.apply(&block).into_iter().zip(&sub.offsets) {
            amps[base + off] = z;
        }
    }
    Ok(StateVector {
        labels: s.labels.clone(),
        amps,
    })
}

/// `|⟨a|b⟩|`, blind to global phase. Qutrits are matched by label.
pub fn fidelity_up_to_phase(a: &StateVector, b: &StateVector) -> Result<f64> {
    if a.amps.len() != b.amps.len() {
        return Err(QosError::DimensionMismatch {
            expected: a.amps.len(),
            found: b.amps.len(),
        });
    }
    Ok(a.inner(b)?.norm().min(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qutrit::Operator;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn ket(label: &str, i: usize) -> StateVector {
        StateVector::basis(vec![label], i).unwrap()
    }

    #[test]
    fn rejects_duplicate_labels_and_bad_norm() {
        assert!(matches!(
            StateVector::new(vec!["a", "a"], vec![c(1.0, 0.0); 9]),
            Err(QosError::DuplicateLabel(_))
        ));
        assert!(matches!(
            StateVector::new(vec!["a"], vec![c(1.0, 0.0); 3]),
            Err(QosError::NotNormalized(_))
        ));
        assert!(matches!(
            StateVector::new(vec!["a"], vec![c(1.0, 0.0); 2]),
            Err(QosError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn tensor_of_zero_kets() {
        let s = tensor(&ket("x", 0), &ket("y", 0)).unwrap();
        assert_eq!(s.labels(), ["x", "y"]);
        assert_eq!(s.amps()[0], c(1.0, 0.0));
        assert!(s.amps()[1..].iter().all(|z| *z == c(0.0, 0.0)));
    }

    #[test]
    fn tensor_expands_chi_against_zero() {
        let (a, b, g) = (c(0.6, 0.0), c(0.0, 0.48), c(0.64, 0.0));
        let chi = StateVector::qutrit("x", [a, b, g]).unwrap();
        let s = tensor(&chi, &ket("y", 0)).unwrap();
        let zero = c(0.0, 0.0);
        assert_eq!(s.amps(), &[a, zero, zero, b, zero, zero, g, zero, zero]);
    }

    #[test]
    fn tensor_rejects_label_collision() {
        assert_eq!(
            tensor(&ket("x", 0), &ket("x", 1)).unwrap_err(),
            QosError::LabelCollision("x".into())
        );
    }

    #[test]
    fn apply_respects_target_order() {
        // Controlled add |j,k⟩ → |j, k+j⟩: the first target is the control.
        let terms: Vec<(usize, usize, C64)> = (0..9)
            .map(|i| {
                let (j, k) = (i / 3, i % 3);
                (j * 3 + (k + j) % 3, i, c(1.0, 0.0))
            })
            .collect();
        let cadd = Unitary::new(Operator::from_ket_bras(9, &terms)).unwrap();
        let s = tensor(&ket("x", 1), &ket("y", 0)).unwrap();
        let xy = apply_unitary(&s, &cadd, &["x", "y"]).unwrap();
        assert_eq!(xy.amps()[4], c(1.0, 0.0));
        let yx = apply_unitary(&s, &cadd, &["y", "x"]).unwrap();
        assert_eq!(yx.amps()[3], c(1.0, 0.0));
    }

    #[test]
    fn apply_rejects_mismatch() {
        let s = ket("x", 0);
        let id9 = Unitary::identity(9);
        assert!(apply_unitary(&s, &id9, &["x"]).is_err());
        assert!(apply_unitary(&s, &Unitary::identity(3), &["z"]).is_err());
    }

    #[test]
    fn fidelity_examples() {
        let phase = C64::from_polar(1.0, std::f64::consts::PI / 7.0);
        let zero = ket("x", 0);
        let rotated = StateVector::qutrit("x", [phase, c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!((fidelity_up_to_phase(&zero, &rotated).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(fidelity_up_to_phase(&zero, &ket("x", 1)).unwrap(), 0.0);
        let r = 1.0 / 3f64.sqrt();
        let flat = StateVector::qutrit("x", [c(r, 0.0); 3]).unwrap();
        assert!((fidelity_up_to_phase(&flat, &zero).unwrap() - r).abs() < 1e-12);
        assert!(fidelity_up_to_phase(&flat, &ket("y", 0)).is_err());
    }

    #[test]
    fn reorder_moves_trits() {
        let s = tensor(&ket("x", 2), &ket("y", 1)).unwrap();
        let r = s.reordered(&["y", "x"]).unwrap();
        assert_eq!(r.amps()[3 + 2], c(1.0, 0.0));
        assert_eq!(s.inner(&r).unwrap(), c(1.0, 0.0));
    }
}
