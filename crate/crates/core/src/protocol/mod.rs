//! Both sharing schemes as three-party state machines.
//!
//! A run is expanded into its full branch tree: every measurement forks the
//! run once per outcome, so an enumeration lists each possible history
//! together with its exact probability, the classical trits exchanged, the
//! operations performed and the state left on Charlie's qutrit `c`.
//!
//! Qutrit ownership is fixed across both schemes: Alice holds `a` and `a'`,
//! Bob holds `b`, `b'` and `b''`, Charlie holds `c`.

mod resources;
mod scheme1;
mod scheme2;

use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use crate::classify::FamilyId;
use crate::qutrit::{apply_unitary, measure, tensor, MeasurementBasis, StateVector, Unitary};
use crate::{QosError, Result, TOL};

pub use resources::{
    channel_summary, operation_count, resources, verify_branch_messages, OperationCount,
    ResourceReport,
};
pub use scheme1::run_scheme1;
pub use scheme2::{run_scheme2, BasisChoice};

pub(crate) const A: &str = "a";
pub(crate) const A1: &str = "a'";
pub(crate) const B: &str = "b";
pub(crate) const B1: &str = "b'";
pub(crate) const B2: &str = "b''";
pub(crate) const C: &str = "c";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Party {
    Alice,
    Bob,
    Charlie,
}

impl Party {
    pub fn owner_of(label: &str) -> Option<Party> {
        match label {
            A | A1 => Some(Party::Alice),
            B | B1 | B2 => Some(Party::Bob),
            C => Some(Party::Charlie),
            _ => None,
        }
    }

    pub fn owns(self, label: &str) -> bool {
        Party::owner_of(label) == Some(self)
    }
}

impl fmt::Display for Party {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Scheme {
    S1,
    S2,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum MessageKind {
    /// One trit: a single-qutrit measurement outcome.
    SingleOutcome,
    /// Two trits `(n, m)`: a generalized Bell outcome.
    BellOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassicalMessage {
    pub sender: Party,
    pub receivers: Vec<Party>,
    pub trits: Vec<u8>,
    pub meaning: MessageKind,
}

impl ClassicalMessage {
    pub fn new(
        sender: Party,
        receivers: Vec<Party>,
        trits: Vec<u8>,
        meaning: MessageKind,
    ) -> Result<Self> {
        let expected = match meaning {
            MessageKind::SingleOutcome => 1,
            MessageKind::BellOutcome => 2,
        };
        if trits.len() != expected {
            return Err(QosError::Protocol(format!(
                "{meaning:?} message carries {} trits",
                trits.len()
            )));
        }
        if let Some(&t) = trits.iter().find(|&&t| t > 2) {
            return Err(QosError::OutcomeOutOfRange(t as usize));
        }
        Ok(Self {
            sender,
            receivers,
            trits,
            meaning,
        })
    }
}

impl fmt::Display for ClassicalMessage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let to: Vec<String> = self.receivers.iter().map(|p| p.to_string()).collect();
        let trits: Vec<String> = self.trits.iter().map(|t| t.to_string()).collect();
        write!(f, "{}->{}:{}", self.sender, to.join("+"), trits.join(""))
    }
}

/// Shared entangled resource consumed by a scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ChannelKind {
    /// Two-qutrit generalized Bell state.
    Bell,
    /// Three-qutrit GHZ state.
    Ghz,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GateRole {
    /// The operation being shared.
    Shared,
    /// A single-qutrit correction or conditional operation.
    Correction,
    /// A two-qutrit gate.
    Entangling,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum MeasurementKind {
    Bell,
    Single,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum TraceEvent {
    Channel {
        kind: ChannelKind,
        labels: Vec<String>,
    },
    Gate {
        party: Party,
        name: String,
        targets: Vec<String>,
        role: GateRole,
    },
    Measurement {
        party: Party,
        id: String,
        targets: Vec<String>,
        kind: MeasurementKind,
        outcome: usize,
    },
    Message(ClassicalMessage),
}

impl TraceEvent {
    /// Acting party and the qutrits it touched, for quantum events.
    pub fn touched(&self) -> Option<(Party, &[String])> {
        match self {
            TraceEvent::Gate { party, targets, .. }
            | TraceEvent::Measurement { party, targets, .. } => Some((*party, targets)),
            _ => None,
        }
    }
}

/// One complete history of a protocol run.
#[derive(Debug, Clone)]
pub struct Branch {
    /// `(measurement id, outcome index)` in the order the measurements happen.
    pub outcome_path: Vec<(String, usize)>,
    /// Exact Born probability of this history.
    pub probability: f64,
    pub messages: Vec<ClassicalMessage>,
    pub trace: Vec<TraceEvent>,
    /// Intermediate register states at named protocol stages.
    pub snapshots: Vec<(String, StateVector)>,
    /// State of `c` at the end; `None` for a zero-probability history.
    pub final_state: Option<StateVector>,
    /// Verdict of the protocol's own decision rule.
    pub protocol_success: bool,
    /// Verdict of the final-state check: some allowed correction leaves `c`
    /// in `U|χ⟩` up to phase. Zero-probability histories copy the protocol
    /// verdict since no state is ever produced.
    pub oracle_success: bool,
    /// `|⟨Uχ|final⟩|`.
    pub fidelity: Option<f64>,
}

impl Branch {
    pub fn is_null(&self) -> bool {
        self.final_state.is_none()
    }

    pub fn snapshot(&self, name: &str) -> Option<&StateVector> {
        self.snapshots
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, s)| s)
    }

    pub fn outcome(&self, id: &str) -> Option<usize> {
        self.outcome_path
            .iter()
            .find(|(m, _)| m == id)
            .map(|&(_, o)| o)
    }

    pub fn trits_sent(&self) -> usize {
        self.messages.iter().map(|m| m.trits.len()).sum()
    }
}

#[derive(Debug, Clone)]
pub struct BranchEnumeration {
    pub scheme: Scheme,
    pub branches: Vec<Branch>,
    pub declared: Option<FamilyId>,
    /// `U|χ⟩` on `c`, the state the protocol is meant to leave behind.
    pub target: StateVector,
}

impl BranchEnumeration {
    pub fn total_probability(&self) -> f64 {
        self.branches.iter().map(|b| b.probability).sum()
    }

    pub fn success_count(&self) -> usize {
        self.branches.iter().filter(|b| b.protocol_success).count()
    }

    /// Fraction of histories the protocol declares successful.
    ///
    /// Averaged over input states `|χ⟩`, every history of either scheme has
    /// the same probability `1/N`, so this ratio is the input-averaged
    /// success probability. It is exact for scheme S1 and for S2 whenever the
    /// measuring basis on `b'` is unbiased with respect to `{|0⟩,|1⟩,|2⟩}`.
    pub fn success_probability(&self) -> Ratio<u32> {
        Ratio::new(
            self.success_count() as u32,
            self.branches.len().max(1) as u32,
        )
    }

    /// Born-weighted probability of the protocol's declared successes.
    pub fn born_success_probability(&self) -> f64 {
        self.branches
            .iter()
            .filter(|b| b.protocol_success)
            .map(|b| b.probability)
            .sum()
    }

    /// Born-weighted probability that `c` really ends in `U|χ⟩`.
    pub fn verified_probability(&self) -> f64 {
        self.branches
            .iter()
            .filter(|b| b.oracle_success && !b.is_null())
            .map(|b| b.probability)
            .sum()
    }

    /// Probability sums to one and every quantum event stays on the acting
    /// party's own qutrits.
    pub fn check_invariants(&self) -> Result<()> {
        if self.branches.is_empty() {
            return Err(QosError::Protocol("enumeration has no branches".into()));
        }
        let total = self.total_probability();
        if (total - 1.0).abs() > TOL {
            return Err(QosError::Protocol(format!(
                "branch probabilities sum to {total}"
            )));
        }
        for b in &self.branches {
            if !(0.0..=1.0 + TOL).contains(&b.probability) {
                return Err(QosError::Protocol(format!(
                    "branch probability {} out of range",
                    b.probability
                )));
            }
            for ev in &b.trace {
                if let Some((party, targets)) = ev.touched() {
                    if let Some(l) = targets.iter().find(|l| !party.owns(l)) {
                        return Err(QosError::NotOwned {
                            party: party.to_string(),
                            label: l.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// A partially executed history; forks at every measurement.
#[derive(Debug, Clone)]
pub(crate) struct Run {
    state: Option<StateVector>,
    probability: f64,
    path: Vec<(String, usize)>,
    trace: Vec<TraceEvent>,
    messages: Vec<ClassicalMessage>,
    snapshots: Vec<(String, StateVector)>,
}

impl Run {
    pub fn start(state: StateVector) -> Self {
        Self {
            state: Some(state),
            probability: 1.0,
            path: Vec::new(),
            trace: Vec::new(),
            messages: Vec::new(),
            snapshots: Vec::new(),
        }
    }

    pub fn state(&self) -> Option<&StateVector> {
        self.state.as_ref()
    }

    /// Brings a fresh channel state into the register. Channels are
    /// independent of everything already present, so adjoining one just
    /// before first use is equivalent to holding it from the start.
    pub fn adjoin(&mut self, kind: ChannelKind, channel: StateVector) -> Result<()> {
        self.trace.push(TraceEvent::Channel {
            kind,
            labels: channel.labels().to_vec(),
        });
        if let Some(s) = &self.state {
            self.state = Some(tensor(s, &channel)?);
        }
        Ok(())
    }

    /// Notes a channel that is already part of the starting register.
    pub fn record_channel(&mut self, kind: ChannelKind, labels: &[&str]) {
        self.trace.push(TraceEvent::Channel {
            kind,
            labels: labels.iter().map(|l| l.to_string()).collect(),
        });
    }

    pub fn gate(
        &mut self,
        party: Party,
        name: &str,
        u: &Unitary,
        targets: &[&str],
        role: GateRole,
    ) -> Result<()> {
        check_owned(party, targets)?;
        self.trace.push(TraceEvent::Gate {
            party,
            name: name.to_string(),
            targets: targets.iter().map(|t| t.to_string()).collect(),
            role,
        });
        if let Some(s) = &self.state {
            self.state = Some(apply_unitary(s, u, targets)?);
        }
        Ok(())
    }

    pub fn measure(
        self,
        party: Party,
        id: &str,
        targets: &[&str],
        basis: &MeasurementBasis,
        kind: MeasurementKind,
    ) -> Result<Vec<(usize, Run)>> {
        check_owned(party, targets)?;
        let records = match &self.state {
            Some(s) => measure(s, targets, basis)?
                .into_iter()
                .map(|r| (r.probability, r.post_state))
                .collect(),
            None => vec![(0.0, None); basis.dim()],
        };
        Ok(records
            .into_iter()
            .enumerate()
            .map(|(k, (p, post))| {
                let mut child = self.clone();
                child.state = post;
                child.probability *= p;
                child.path.push((id.to_string(), k));
                child.trace.push(TraceEvent::Measurement {
                    party,
                    id: id.to_string(),
                    targets: targets.iter().map(|t| t.to_string()).collect(),
                    kind,
                    outcome: k,
                });
                (k, child)
            })
            .collect())
    }

    pub fn send(&mut self, msg: ClassicalMessage) {
        self.trace.push(TraceEvent::Message(msg.clone()));
        self.messages.push(msg);
    }

    pub fn snapshot(&mut self, name: &str) {
        if let Some(s) = &self.state {
            self.snapshots.push((name.to_string(), s.clone()));
        }
    }

    pub fn into_branch(
        self,
        protocol_success: bool,
        oracle_success: bool,
        fidelity: Option<f64>,
    ) -> Branch {
        Branch {
            outcome_path: self.path,
            probability: self.probability,
            messages: self.messages,
            trace: self.trace,
            snapshots: self.snapshots,
            final_state: self.state,
            protocol_success,
            oracle_success,
            fidelity,
        }
    }
}

fn check_owned(party: Party, targets: &[&str]) -> Result<()> {
    match targets.iter().find(|t| !party.owns(t)) {
        Some(l) => Err(QosError::NotOwned {
            party: party.to_string(),
            label: l.to_string(),
        }),
        None => Ok(()),
    }
}

/// Validated `|χ⟩` on `b''` and the target `U|χ⟩` on `c`.
pub(crate) fn input_and_target(
    u: &Unitary,
    chi: [crate::C64; 3],
) -> Result<(StateVector, StateVector)> {
    if u.dim() != 3 {
        return Err(QosError::DimensionMismatch {
            expected: 3,
            found: u.dim(),
        });
    }
    let chi_state = StateVector::qutrit(B2, chi)?;
    let target = apply_unitary(&StateVector::qutrit(C, chi)?, u, &[C])?;
    Ok((chi_state, target))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn message_trit_count_must_match_meaning() {
        assert!(ClassicalMessage::new(
            Party::Bob,
            vec![Party::Alice],
            vec![1, 2],
            MessageKind::SingleOutcome
        )
        .is_err());
        assert!(ClassicalMessage::new(
            Party::Bob,
            vec![Party::Alice],
            vec![3],
            MessageKind::SingleOutcome
        )
        .is_err());
        let m = ClassicalMessage::new(
            Party::Alice,
            vec![Party::Bob, Party::Charlie],
            vec![1, 2],
            MessageKind::BellOutcome,
        )
        .unwrap();
        assert_eq!(m.to_string(), "Alice->Bob+Charlie:12");
    }

    #[test]
    fn ownership_table() {
        assert!(Party::Alice.owns("a'"));
        assert!(Party::Bob.owns("b''"));
        assert!(!Party::Charlie.owns("b"));
        assert_eq!(Party::owner_of("z"), None);
    }

    #[test]
    fn run_rejects_foreign_qutrit() {
        let s = StateVector::basis(vec![A1], 0).unwrap();
        let mut run = Run::start(s);
        let err = run
            .gate(
                Party::Bob,
                "x",
                &Unitary::identity(3),
                &[A1],
                GateRole::Correction,
            )
            .unwrap_err();
        assert!(matches!(err, QosError::NotOwned { .. }));
    }
}
