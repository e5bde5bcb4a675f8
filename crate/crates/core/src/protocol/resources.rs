//! Resource accounting: channel qutrits, classical trits, operation counts
//! and efficiency `η = P / (Q_t + C_t)`.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use super::{BranchEnumeration, ChannelKind, GateRole, MeasurementKind, Scheme, TraceEvent};
use crate::{QosError, Result};

/// Operations a scheme needs apart from the shared `U` itself. Corrections
/// applied by the same party to the same qutrit count once, since they can
/// always be merged into a single gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct OperationCount {
    pub two_qutrit_gates: usize,
    pub bell_measurements: usize,
    pub single_measurements: usize,
    pub single_qutrit_ops: usize,
}

impl fmt::Display for OperationCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = [
            (self.two_qutrit_gates, "V"),
            (self.bell_measurements, "GM"),
            (self.single_measurements, "SM"),
            (self.single_qutrit_ops, "SO"),
        ]
        .iter()
        .filter_map(|&(n, tag)| counted(n, tag))
        .collect();
        f.write_str(&parts.join(", "))
    }
}

fn counted(n: usize, tag: &str) -> Option<String> {
    match n {
        0 => None,
        1 => Some(tag.to_string()),
        n => Some(format!("{n} {tag}s")),
    }
}

/// Channel list in short form, e.g. `GB, GG` or `2 GBs`.
pub fn channel_summary(channels: &[ChannelKind]) -> String {
    let bell = channels.iter().filter(|&&c| c == ChannelKind::Bell).count();
    let ghz = channels.len() - bell;
    [counted(bell, "GB"), counted(ghz, "GG")]
        .into_iter()
        .flatten()
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResourceReport {
    pub scheme: Scheme,
    pub channels: Vec<ChannelKind>,
    /// Qutrits held in shared channel states.
    pub quantum_trits: u32,
    /// Trits of classical communication per run.
    pub classical_trits: u32,
    pub probability: Ratio<u32>,
    pub efficiency: Ratio<u32>,
    pub operations: OperationCount,
}

impl ResourceReport {
    pub fn channel_summary(&self) -> String {
        channel_summary(&self.channels)
    }
}

struct Profile {
    channels: &'static [ChannelKind],
    classical_trits: u32,
    operations: OperationCount,
}

fn profile(scheme: Scheme) -> Profile {
    match scheme {
        Scheme::S1 => Profile {
            channels: &[ChannelKind::Bell, ChannelKind::Ghz],
            classical_trits: 5,
            operations: OperationCount {
                two_qutrit_gates: 0,
                bell_measurements: 2,
                single_measurements: 1,
                single_qutrit_ops: 2,
            },
        },
        Scheme::S2 => Profile {
            channels: &[ChannelKind::Bell, ChannelKind::Bell],
            classical_trits: 4,
            operations: OperationCount {
                two_qutrit_gates: 1,
                bell_measurements: 1,
                single_measurements: 2,
                single_qutrit_ops: 3,
            },
        },
    }
}

fn channel_qutrits(channels: &[ChannelKind]) -> u32 {
    channels
        .iter()
        .map(|c| match c {
            ChannelKind::Bell => 2,
            ChannelKind::Ghz => 3,
        })
        .sum()
}

/// Resource figures for `scheme` run at success probability `p`.
///
/// S1 is deterministic, so only `p = 1` is accepted. S2 succeeds with
/// `1/3`, `2/3` or `1` depending on what is known about the operation.
pub fn resources(scheme: Scheme, p: Ratio<u32>) -> Result<ResourceReport> {
    let allowed: &[Ratio<u32>] = match scheme {
        Scheme::S1 => &[Ratio::new_raw(1, 1)],
        Scheme::S2 => &[
            Ratio::new_raw(1, 3),
            Ratio::new_raw(2, 3),
            Ratio::new_raw(1, 1),
        ],
    };
    if !allowed.contains(&p) {
        return Err(QosError::InvalidClass {
            scheme: scheme.to_string(),
            probability: p.to_string(),
        });
    }
    let prof = profile(scheme);
    let quantum_trits = channel_qutrits(prof.channels);
    Ok(ResourceReport {
        scheme,
        channels: prof.channels.to_vec(),
        quantum_trits,
        classical_trits: prof.classical_trits,
        probability: p,
        efficiency: p / Ratio::from_integer(quantum_trits + prof.classical_trits),
        operations: prof.operations,
    })
}

/// Recomputes the resource figures from an enumeration's traces and checks
/// they agree with [`resources`]: every branch must send the same number of
/// trits, consume the same channels and use the same operations.
pub fn verify_branch_messages(e: &BranchEnumeration) -> Result<ResourceReport> {
    let first = e
        .branches
        .first()
        .ok_or_else(|| QosError::Protocol("enumeration has no branches".into()))?;
    let channels = channels_of(&first.trace);
    let trits = first.trits_sent();
    for b in &e.branches {
        if b.trits_sent() != trits {
            return Err(QosError::Protocol(format!(
                "branch sends {} trits, expected {trits}",
                b.trits_sent()
            )));
        }
        if channels_of(&b.trace) != channels {
            return Err(QosError::Protocol(
                "branches consume different channels".into(),
            ));
        }
    }
    let report = resources(e.scheme, e.success_probability())?;
    let observed_ops = operation_count(e);
    if report.classical_trits as usize != trits
        || report.channels != channels
        || report.operations != observed_ops
    {
        return Err(QosError::Protocol(format!(
            "trace uses {trits} trits, channels [{}], ops [{observed_ops}]; expected {} trits, [{}], [{}]",
            channel_summary(&channels),
            report.classical_trits,
            report.channel_summary(),
            report.operations
        )));
    }
    Ok(report)
}

fn channels_of(trace: &[TraceEvent]) -> Vec<ChannelKind> {
    trace
        .iter()
        .filter_map(|ev| match ev {
            TraceEvent::Channel { kind, .. } => Some(*kind),
            _ => None,
        })
        .collect()
}

/// Operation count observed across all branches of `e`.
pub fn operation_count(e: &BranchEnumeration) -> OperationCount {
    let mut two = BTreeSet::new();
    let mut bell = BTreeSet::new();
    let mut single = BTreeSet::new();
    let mut local = BTreeSet::new();
    for ev in e.branches.iter().flat_map(|b| &b.trace) {
        match ev {
            TraceEvent::Gate {
                party,
                name,
                targets,
                role,
            } => match role {
                GateRole::Shared => {}
                GateRole::Entangling => {
                    two.insert(name.clone());
                }
                GateRole::Correction => {
                    local.insert((*party, targets.clone()));
                }
            },
            TraceEvent::Measurement { id, kind, .. } => {
                match kind {
                    MeasurementKind::Bell => bell.insert(id.clone()),
                    MeasurementKind::Single => single.insert(id.clone()),
                };
            }
            _ => {}
        }
    }
    OperationCount {
        two_qutrit_gates: two.len(),
        bell_measurements: bell.len(),
        single_measurements: single.len(),
        single_qutrit_ops: local.len(),
    }
}
