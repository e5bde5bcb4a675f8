//! Teleport `|χ⟩` from Bob to Alice, let Alice apply `U`, then split the
//! result between Bob and Charlie through a GHZ state.

use super::{
    input_and_target, Branch, BranchEnumeration, ChannelKind, ClassicalMessage, GateRole,
    MeasurementKind, MessageKind, Party, Run, Scheme, A, A1, B, B1, B2, C,
};
use crate::channels::{fourier_basis, gbm_basis, generalized_bell, ghz3, sigma, BellIndex};
use crate::qutrit::{fidelity_up_to_phase, Unitary};
use crate::{Result, C64, TOL};

pub const TELEPORT: &str = "teleport-gbm";
pub const SPLIT: &str = "split-gbm";
pub const FOURIER: &str = "fourier";

/// Enumerates all 243 histories of scheme S1.
pub fn run_scheme1(u: &Unitary, chi: [C64; 3]) -> Result<BranchEnumeration> {
    let (chi_state, target) = input_and_target(u, chi)?;
    let gbm = gbm_basis();
    let fourier = fourier_basis();
    let b00 = BellIndex::new(0, 0)?;

    let mut start = Run::start(chi_state);
    start.adjoin(ChannelKind::Bell, generalized_bell(b00, [A1, B1]))?;

    let mut branches = Vec::with_capacity(243);
    for (pos, mut r1) in
        start.measure(Party::Bob, TELEPORT, &[B2, B1], &gbm, MeasurementKind::Bell)?
    {
        let idx = BellIndex::from_position(pos)?;
        r1.send(ClassicalMessage::new(
            Party::Bob,
            vec![Party::Alice],
            vec![idx.n(), idx.m()],
            MessageKind::BellOutcome,
        )?);
        r1.gate(
            Party::Alice,
            &format!("sigma{idx}†"),
            &sigma(idx).adjoint(),
            &[A1],
            GateRole::Correction,
        )?;
        r1.snapshot("teleported");
        r1.gate(Party::Alice, "U", u, &[A1], GateRole::Shared)?;
        r1.adjoin(ChannelKind::Ghz, ghz3([A, B, C]))?;

        for (pos2, mut r2) in
            r1.measure(Party::Alice, SPLIT, &[A1, A], &gbm, MeasurementKind::Bell)?
        {
            let idx2 = BellIndex::from_position(pos2)?;
            r2.send(ClassicalMessage::new(
                Party::Alice,
                vec![Party::Charlie],
                vec![idx2.n(), idx2.m()],
                MessageKind::BellOutcome,
            )?);
            r2.snapshot("split");

            for (k, mut r3) in
                r2.measure(Party::Bob, FOURIER, &[B], &fourier, MeasurementKind::Single)?
            {
                r3.send(ClassicalMessage::new(
                    Party::Bob,
                    vec![Party::Charlie],
                    vec![k as u8],
                    MessageKind::SingleOutcome,
                )?);
                let fix = BellIndex::new((idx2.n() + k as u8) % 3, idx2.m())?;
                r3.gate(
                    Party::Charlie,
                    &format!("sigma{fix}†"),
                    &sigma(fix).adjoint(),
                    &[C],
                    GateRole::Correction,
                )?;
                branches.push(finish(r3, &target)?);
            }
        }
    }

    Ok(BranchEnumeration {
        scheme: Scheme::S1,
        branches,
        declared: None,
        target,
    })
}

fn finish(run: Run, target: &crate::qutrit::StateVector) -> Result<Branch> {
    let fidelity = match run.state() {
        Some(s) => Some(fidelity_up_to_phase(s, target)?),
        None => None,
    };
    let oracle = fidelity.is_none_or(|f| f >= 1.0 - TOL);
    Ok(run.into_branch(true, oracle, fidelity))
}
