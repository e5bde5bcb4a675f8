//! Labelled qutrit registers, dense operators and exhaustive projective
//! measurement.

mod measure;
mod operator;
mod state;

pub use measure::{measure, MeasurementBasis, MeasurementRecord};
pub use operator::{format_complex, Operator, Unitary};
pub use state::{apply_unitary, fidelity_up_to_phase, tensor, StateVector};

pub(crate) fn pow3(n: usize) -> usize {
    3usize.pow(n as u32)
}

/// Big-endian trits of `index` over `n` digits.
pub(crate) fn to_trits(mut index: usize, n: usize) -> Vec<u8> {
    let mut trits = vec![0u8; n];
    for t in trits.iter_mut().rev() {
        *t = (index % 3) as u8;
        index /= 3;
    }
    trits
}
