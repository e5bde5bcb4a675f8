//! Bob mirrors `|χ⟩` onto a shared Bell pair with the `V` gate, Alice applies
//! `U` and teleports her half to Charlie, and Bob's final measurement on `b'`
//! decides which operation Charlie is left to undo.

use super::{
    input_and_target, Branch, BranchEnumeration, ChannelKind, ClassicalMessage, GateRole,
    MeasurementKind, MessageKind, Party, Run, Scheme, A, A1, B1, B2, C,
};
use crate::channels::{
    gbm_basis, generalized_bell, preset_basis, shift_correction, sigma, v_gate, w_from_basis,
    xi_basis, BasisParams, BellIndex, PresetCase,
};
use crate::classify::{guaranteed_sign, FamilyId};
use crate::qutrit::{
    apply_unitary, fidelity_up_to_phase, tensor, MeasurementBasis, Operator, StateVector, Unitary,
};
use crate::{Result, C64, TOL};

pub const MIRROR: &str = "mirror";
pub const SEND: &str = "send-gbm";
pub const XI: &str = "xi";

/// Measuring basis Bob uses on `b'` at the last step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BasisChoice {
    Preset(PresetCase),
    Params(BasisParams),
}

impl BasisChoice {
    pub fn resolve(&self) -> Result<(MeasurementBasis, [Operator; 2])> {
        match self {
            BasisChoice::Preset(c) => Ok(preset_basis(*c)),
            BasisChoice::Params(p) => {
                let basis = xi_basis(p)?;
                let w = w_from_basis(&basis);
                Ok((basis, w))
            }
        }
    }
}

/// Enumerates all 81 histories of scheme S2.
///
/// `declared` is the family the operation is promised to belong to. With no
/// promise only the `ξ0` outcome counts as success; with one, an outcome
/// `ξk` counts whenever every member of the family (anti)commutes with `W_k`,
/// and Charlie then applies the phase part of `W_k` inverted.
pub fn run_scheme2(
    u: &Unitary,
    chi: [C64; 3],
    basis: &BasisChoice,
    declared: Option<FamilyId>,
) -> Result<BranchEnumeration> {
    let (chi_state, target) = input_and_target(u, chi)?;
    let (xi, w) = basis.resolve()?;
    let gbm = gbm_basis();
    let b00 = BellIndex::new(0, 0)?;

    let mut start = Run::start(tensor(&generalized_bell(b00, [A1, B1]), &chi_state)?);
    start.record_channel(ChannelKind::Bell, &[A1, B1]);
    start.gate(Party::Bob, "V", &v_gate(), &[B1, B2], GateRole::Entangling)?;

    let mut branches = Vec::with_capacity(81);
    for (s, mut r1) in start.measure(
        Party::Bob,
        MIRROR,
        &[B2],
        &MeasurementBasis::computational(),
        MeasurementKind::Single,
    )? {
        let shift = shift_correction(s)?;
        let shift_name = ["I", "S", "T"][s];
        r1.gate(Party::Bob, shift_name, &shift, &[B1], GateRole::Correction)?;
        r1.send(ClassicalMessage::new(
            Party::Bob,
            vec![Party::Alice],
            vec![s as u8],
            MessageKind::SingleOutcome,
        )?);
        r1.gate(
            Party::Alice,
            shift_name,
            &shift,
            &[A1],
            GateRole::Correction,
        )?;
        r1.snapshot("mirrored");
        r1.gate(Party::Alice, "U", u, &[A1], GateRole::Shared)?;
        r1.adjoin(ChannelKind::Bell, generalized_bell(b00, [A, C]))?;

        for (pos, mut r2) in
            r1.measure(Party::Alice, SEND, &[A1, A], &gbm, MeasurementKind::Bell)?
        {
            let idx = BellIndex::from_position(pos)?;
            r2.send(ClassicalMessage::new(
                Party::Alice,
                vec![Party::Bob, Party::Charlie],
                vec![idx.n(), idx.m()],
                MessageKind::BellOutcome,
            )?);
            r2.gate(
                Party::Charlie,
                &format!("sigma{idx}†"),
                &sigma(idx).adjoint(),
                &[C],
                GateRole::Correction,
            )?;
            r2.snapshot("shared");

            for (k, mut r3) in r2.measure(Party::Bob, XI, &[B1], &xi, MeasurementKind::Single)? {
                r3.send(ClassicalMessage::new(
                    Party::Bob,
                    vec![Party::Charlie],
                    vec![k as u8],
                    MessageKind::SingleOutcome,
                )?);
                let conditional = if k == 0 {
                    None
                } else {
                    w[k - 1].phase_direction()
                };
                let promised =
                    k == 0 || declared.is_some_and(|f| guaranteed_sign(f, &w[k - 1]).is_some());
                if promised {
                    if let Some(p) = &conditional {
                        r3.gate(
                            Party::Charlie,
                            &format!("W{k}†"),
                            &p.adjoint(),
                            &[C],
                            GateRole::Correction,
                        )?;
                    }
                }
                branches.push(finish(r3, promised, conditional.as_ref(), &target)?);
            }
        }
    }

    Ok(BranchEnumeration {
        scheme: Scheme::S2,
        branches,
        declared,
        target,
    })
}

/// Judges the final state of `c`. The oracle accepts the branch if either
/// candidate correction available to Charlie (nothing, or the inverted phase
/// part of `W_k`) turns the state received before any conditional step into
/// `U|χ⟩` up to phase.
fn finish(
    run: Run,
    promised: bool,
    conditional: Option<&Unitary>,
    target: &StateVector,
) -> Result<Branch> {
    let Some(fin) = run.state() else {
        return Ok(run.into_branch(promised, promised, None));
    };
    let fidelity = fidelity_up_to_phase(fin, target)?;
    let received = match (promised, conditional) {
        (true, Some(p)) => apply_unitary(fin, p, &[C])?,
        _ => fin.clone(),
    };
    let mut best = fidelity_up_to_phase(&received, target)?;
    if let Some(p) = conditional {
        let corrected = apply_unitary(&received, &p.adjoint(), &[C])?;
        best = best.max(fidelity_up_to_phase(&corrected, target)?);
    }
    Ok(run.into_branch(promised, best >= 1.0 - TOL, Some(fidelity)))
}
