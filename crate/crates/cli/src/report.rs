//! Report builders. Each command produces a human-readable text block and a
//! JSON document carrying the same fields.

use std::fmt::Write as _;

use anyhow::{bail, Result};
use num_complex::Complex64 as C64;
use num_rational::Ratio;
use qos3_core::channels::{preset_basis, PresetCase};
use qos3_core::classify::{
    commutation_sign, memberships, predicted_probability, sample_member, FamilyId,
};
use qos3_core::protocol::{
    run_scheme1, run_scheme2, verify_branch_messages, BasisChoice, Branch, BranchEnumeration,
    ResourceReport, Scheme,
};
use qos3_core::qutrit::{format_complex, Operator, Unitary};
use qos3_core::random::{generic_unitary, random_qutrit_coeffs, seeded};
use qos3_core::{QosError, TOL};
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;
use serde_json::{json, Value};

use crate::input::{parse_basis, parse_matrix, parse_operation, parse_state};

pub struct Report {
    pub human: String,
    pub json: Value,
    /// Drives the exit status.
    pub ok: bool,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub scheme: Scheme,
    pub u_spec: String,
    pub chi_spec: String,
    pub basis: Option<String>,
    pub declared: Option<String>,
    pub seed: u64,
    /// Branches to sample by Born weight for a demonstration trace.
    pub shots: usize,
}

fn fixed(x: f64) -> String {
    format!("{x:.12}")
}

/// `k/n` reduced when `p` is within tolerance of a multiple of `1/n`,
/// otherwise 12 decimals.
fn probability_text(p: f64, n: usize) -> String {
    let k = (p * n as f64).round();
    if (p * n as f64 - k).abs() < 1e-9 {
        Ratio::new(k as u64, n as u64).to_string()
    } else {
        fixed(p)
    }
}

fn state_text(chi: &[C64]) -> Vec<String> {
    chi.iter().map(|&z| format_complex(z)).collect()
}

fn basis_text(choice: &BasisChoice) -> Value {
    match choice {
        BasisChoice::Preset(c) => json!(c.name()),
        BasisChoice::Params(p) => json!({
            "x1": format_complex(p.x1()),
            "y1": format_complex(p.y1()),
            "tau1": fixed(p.tau1()),
            "tau2": fixed(p.tau2()),
        }),
    }
}

fn path_text(b: &Branch) -> String {
    b.outcome_path
        .iter()
        .map(|(id, o)| {
            if id.ends_with("gbm") {
                format!("{id}=({},{})", o / 3, o % 3)
            } else {
                format!("{id}={o}")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn resources_json(r: &ResourceReport) -> Value {
    json!({
        "channels": r.channel_summary(),
        "quantum_trits": r.quantum_trits,
        "classical_trits": r.classical_trits,
        "operations": r.operations.to_string(),
        "success_probability": r.probability.to_string(),
        "efficiency": r.efficiency.to_string(),
    })
}

fn matrix_rows(op: &Operator) -> Vec<Vec<String>> {
    (0..op.dim())
        .map(|r| {
            (0..op.dim())
                .map(|c| format_complex(op.get(r, c)))
                .collect()
        })
        .collect()
}

fn matrix_human(out: &mut String, indent: &str, op: &Operator) {
    for row in matrix_rows(op) {
        let _ = writeln!(out, "{indent}[{}]", row.join(", "));
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn simulate(cfg: &RunConfig) -> Result<Report> {
    if cfg.scheme == Scheme::S1 && (cfg.basis.is_some() || cfg.declared.is_some()) {
        bail!("--basis and --declared only apply to scheme s2");
    }
    let mut rng = seeded(cfg.seed);
    let u = parse_operation(&cfg.u_spec, &mut rng)?;
    let chi = parse_state(&cfg.chi_spec, &mut rng)?;
    let declared: Option<FamilyId> = cfg.declared.as_deref().map(str::parse).transpose()?;
    let basis = match cfg.scheme {
        Scheme::S1 => None,
        Scheme::S2 => Some(parse_basis(cfg.basis.as_deref().unwrap_or("c1"))?),
    };
    let e = match &basis {
        None => run_scheme1(&u, chi)?,
        Some(b) => run_scheme2(&u, chi, b, declared)?,
    };
    let shots = sample_shots(&e, cfg.shots, &mut rng)?;
    Ok(simulation_report(cfg, &u, chi, basis.as_ref(), &e, &shots))
}

/// Branch indices drawn with their Born probabilities.
fn sample_shots<R: Rng + ?Sized>(
    e: &BranchEnumeration,
    shots: usize,
    rng: &mut R,
) -> Result<Vec<usize>> {
    if shots == 0 {
        return Ok(Vec::new());
    }
    let dist = WeightedIndex::new(e.branches.iter().map(|b| b.probability))?;
    Ok((0..shots).map(|_| dist.sample(rng)).collect())
}

fn simulation_report(
    cfg: &RunConfig,
    u: &Unitary,
    chi: [C64; 3],
    basis: Option<&BasisChoice>,
    e: &BranchEnumeration,
    shots: &[usize],
) -> Report {
    let n = e.branches.len();
    let invariants = e
        .check_invariants()
        .and_then(|_| verify_branch_messages(e).map(|_| ()));
    let resources = verify_branch_messages(e).ok();
    let declared_holds = e.declared.map(|f| memberships(u, TOL).contains(&f));
    let min_fid = e
        .branches
        .iter()
        .filter(|b| b.protocol_success)
        .filter_map(|b| b.fidelity)
        .fold(f64::INFINITY, f64::min);
    let min_fid = if min_fid.is_finite() {
        Some(min_fid)
    } else {
        None
    };
    let p = e.success_probability();
    let null_count = e.branches.iter().filter(|b| b.is_null()).count();

    let branches: Vec<Value> = e
        .branches
        .iter()
        .map(|b| {
            json!({
                "path": path_text(b),
                "probability": probability_text(b.probability, n),
                "messages": b.messages.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
                "protocol_success": b.protocol_success,
                "oracle_success": b.oracle_success,
                "fidelity": b.fidelity.map(fixed),
            })
        })
        .collect();

    let json = json!({
        "command": "simulate",
        "scheme": e.scheme.to_string(),
        "seed": cfg.seed,
        "u": u.to_rows().into_iter().map(format_complex).collect::<Vec<_>>(),
        "chi": state_text(&chi),
        "basis": basis.map(basis_text),
        "declared": e.declared.map(|f| f.name()),
        "declared_contains_u": declared_holds,
        "branch_count": n,
        "null_branches": null_count,
        "success_count": e.success_count(),
        "success_probability": p.to_string(),
        "born_success_probability": probability_text(e.born_success_probability(), n),
        "verified_probability": probability_text(e.verified_probability(), n),
        "min_fidelity_on_success": min_fid.map(fixed),
        "resources": resources.as_ref().map(resources_json),
        "invariants": match &invariants {
            Ok(()) => "ok".to_string(),
            Err(err) => err.to_string(),
        },
        "branches": branches,
    });
    let mut json = json;
    if !shots.is_empty() {
        json["shots"] = json!(shots
            .iter()
            .map(|&i| json!({
                "path": path_text(&e.branches[i]),
                "protocol_success": e.branches[i].protocol_success,
                "oracle_success": e.branches[i].oracle_success,
            }))
            .collect::<Vec<_>>());
    }

    let mut h = String::new();
    let _ = writeln!(h, "scheme       {}", e.scheme);
    let _ = writeln!(h, "seed         {}", cfg.seed);
    let _ = writeln!(h, "u");
    matrix_human(&mut h, "  ", u);
    let _ = writeln!(h, "chi          ({})", state_text(&chi).join(", "));
    match basis {
        Some(BasisChoice::Preset(c)) => {
            let _ = writeln!(h, "basis        {c}");
        }
        Some(BasisChoice::Params(p)) => {
            let _ = writeln!(
                h,
                "basis        x1={} y1={} tau1={} tau2={}",
                format_complex(p.x1()),
                format_complex(p.y1()),
                fixed(p.tau1()),
                fixed(p.tau2())
            );
        }
        None => {}
    }
    if let Some(f) = e.declared {
        let note = if declared_holds == Some(true) {
            ""
        } else {
            "  (warning: u is not in this family)"
        };
        let _ = writeln!(h, "declared     {f}{note}");
    }
    let _ = writeln!(h, "branches     {n} ({null_count} with zero probability)");
    let _ = writeln!(
        h,
        "P            {} ({}/{} branches succeed)",
        p,
        e.success_count(),
        n
    );
    let _ = writeln!(
        h,
        "P (Born)     {}",
        probability_text(e.born_success_probability(), n)
    );
    let _ = writeln!(
        h,
        "P (verified) {}",
        probability_text(e.verified_probability(), n)
    );
    if let Some(f) = min_fid {
        let _ = writeln!(h, "min fidelity {} over declared successes", fixed(f));
    }
    if let Some(r) = &resources {
        let _ = writeln!(
            h,
            "resources    {} | {} | {} ctrits | Q_t {} | eta {}",
            r.channel_summary(),
            r.operations,
            r.classical_trits,
            r.quantum_trits,
            r.efficiency
        );
    }
    let _ = writeln!(
        h,
        "invariants   {}",
        match &invariants {
            Ok(()) => "ok".to_string(),
            Err(err) => format!("VIOLATED: {err}"),
        }
    );
    let _ = writeln!(h);
    let width = e
        .branches
        .iter()
        .map(|b| path_text(b).len())
        .max()
        .unwrap_or(4);
    let _ = writeln!(
        h,
        "{:<width$}  {:>14}  {:<8} {:<6} {:<14}  messages",
        "path", "probability", "protocol", "oracle", "fidelity"
    );
    for b in &e.branches {
        let msgs: Vec<String> = b.messages.iter().map(|m| m.to_string()).collect();
        let _ = writeln!(
            h,
            "{:<width$}  {:>14}  {:<8} {:<6} {:<14}  {}",
            path_text(b),
            probability_text(b.probability, n),
            yes(b.protocol_success),
            yes(b.oracle_success),
            b.fidelity.map(fixed).unwrap_or_else(|| "-".into()),
            msgs.join(" ")
        );
    }

    if !shots.is_empty() {
        let _ = writeln!(h);
        let _ = writeln!(h, "sampled shots");
        for &i in shots {
            let b = &e.branches[i];
            let _ = writeln!(
                h,
                "  {:<width$}  protocol {} oracle {}",
                path_text(b),
                yes(b.protocol_success),
                yes(b.oracle_success)
            );
        }
    }

    Report {
        human: h,
        json,
        ok: invariants.is_ok(),
    }
}

/// Classification of an operation spec. Random specs draw from `seed`.
pub fn classify(spec: &str, seed: u64) -> Result<Report> {
    let u = match parse_operation(spec, &mut seeded(seed)) {
        Ok(u) => u,
        Err(err) => {
            // Report the residual for well-formed but non-unitary matrices.
            if let Some(QosError::NonUnitary(r)) = err.downcast_ref::<QosError>() {
                bail!("operation is not unitary: ||U^dagger U - I|| = {r:.3e}");
            }
            let body = spec.trim().strip_prefix("matrix:").unwrap_or(spec);
            if let Ok(op) = parse_matrix(body) {
                bail!(
                    "operation is not unitary: ||U^dagger U - I|| = {:.3e}",
                    op.unitarity_residual()
                );
            }
            return Err(err);
        }
    };
    let member = memberships(&u, TOL);
    let mut signs = Vec::new();
    let mut predicted = Vec::new();
    for case in PresetCase::ALL {
        let (_, w) = preset_basis(case);
        for (k, wk) in w.iter().enumerate() {
            let s = commutation_sign(&u, wk);
            signs.push(json!({
                "case": case.name(),
                "w": k + 1,
                "sign": s.sign.map(|s| s.to_string()),
                "residual": format!("{:.3e}", s.residual),
            }));
        }
        predicted.push(json!({
            "case": case.name(),
            "probability": predicted_probability(&member, case).to_string(),
        }));
    }
    let names: Vec<&str> = member.iter().map(|f| f.name()).collect();
    let json = json!({
        "command": "classify",
        "u": u.to_rows().into_iter().map(format_complex).collect::<Vec<_>>(),
        "memberships": names,
        "commutation": signs,
        "predicted": predicted,
    });

    let mut h = String::new();
    let _ = writeln!(h, "u");
    matrix_human(&mut h, "  ", &u);
    let shown = if names.is_empty() {
        "none".to_string()
    } else {
        names.join(", ")
    };
    let _ = writeln!(h, "families     {shown}");
    let _ = writeln!(h, "commutation with preset W operators:");
    for s in &signs {
        let _ = writeln!(
            h,
            "  {:<4} W{}  {:<2} residual {}",
            s["case"].as_str().unwrap_or_default(),
            s["w"],
            s["sign"].as_str().unwrap_or("none"),
            s["residual"].as_str().unwrap_or_default()
        );
    }
    let _ = writeln!(h, "predicted success probability:");
    for p in &predicted {
        let _ = writeln!(
            h,
            "  {:<4} {}",
            p["case"].as_str().unwrap_or_default(),
            p["probability"].as_str().unwrap_or_default()
        );
    }
    Ok(Report {
        human: h,
        json,
        ok: true,
    })
}

/// One comparison row: reference values and what a run produced.
pub struct TableRow {
    pub scheme: Scheme,
    pub operation: &'static str,
    pub family: Option<FamilyId>,
    pub case: PresetCase,
    pub qrc: &'static str,
    pub no: &'static str,
    pub classical_trits: u32,
    pub quantum_trits: u32,
    pub probability: Ratio<u32>,
    pub efficiency: Ratio<u32>,
}

const S1_NO: &str = "2 GMs, SM, 2 SOs";
const S2_NO: &str = "V, GM, 2 SMs, 3 SOs";

fn row(
    scheme: Scheme,
    operation: &'static str,
    family: Option<FamilyId>,
    case: PresetCase,
    p: (u32, u32),
    eta: (u32, u32),
) -> TableRow {
    let (qrc, no, trits) = match scheme {
        Scheme::S1 => ("GB, GG", S1_NO, 5),
        Scheme::S2 => ("2 GBs", S2_NO, 4),
    };
    TableRow {
        scheme,
        operation,
        family,
        case,
        qrc,
        no,
        classical_trits: trits,
        quantum_trits: trits,
        probability: Ratio::new(p.0, p.1),
        efficiency: Ratio::new(eta.0, eta.1),
    }
}

/// The eight reference rows of the scheme comparison.
pub fn reference_rows() -> Vec<TableRow> {
    use FamilyId::*;
    use PresetCase::*;
    vec![
        row(Scheme::S1, "arbitrary", None, C1, (1, 1), (1, 10)),
        row(Scheme::S2, "arbitrary", None, C1, (1, 3), (1, 24)),
        row(Scheme::S2, "U34\\12", Some(U34minus12), C1, (2, 3), (1, 12)),
        row(Scheme::S2, "U67\\15", Some(U67minus15), C2, (2, 3), (1, 12)),
        row(
            Scheme::S2,
            "U910\\18",
            Some(U910minus18),
            C3,
            (2, 3),
            (1, 12),
        ),
        row(Scheme::S2, "U12", Some(U12), C1, (1, 1), (1, 8)),
        row(Scheme::S2, "U15", Some(U15), C2, (1, 1), (1, 8)),
        row(Scheme::S2, "U18", Some(U18), C3, (1, 1), (1, 8)),
    ]
}

/// Rebuilds every comparison row by running the schemes on representative
/// operations drawn from `seed`.
pub fn table1(seed: u64) -> Result<Report> {
    let mut rng = seeded(seed);
    let mut rows = Vec::new();
    let mut h = String::new();
    let _ = writeln!(
        h,
        "{:<3} {:<10} {:<5} {:<8} {:<20} {:<9} {:<4} {:<5} {:<6} result",
        "S", "U", "basis", "QRC", "NO", "CRC", "Q_t", "P", "eta"
    );
    let mut all_pass = true;
    for r in reference_rows() {
        let u = match r.family {
            Some(f) => sample_member(f, &mut rng),
            None => generic_unitary(&mut rng),
        };
        let chi = random_qutrit_coeffs(&mut rng);
        let e = match r.scheme {
            Scheme::S1 => run_scheme1(&u, chi)?,
            Scheme::S2 => run_scheme2(&u, chi, &BasisChoice::Preset(r.case), r.family)?,
        };
        let got = e
            .check_invariants()
            .and_then(|_| verify_branch_messages(&e));
        let (qrc, no, crc, qt, p, eta, pass) = match &got {
            Ok(g) => {
                let no = g.operations.to_string();
                let qrc = g.channel_summary();
                let pass = qrc == r.qrc
                    && no == r.no
                    && g.classical_trits == r.classical_trits
                    && g.quantum_trits == r.quantum_trits
                    && g.probability == r.probability
                    && g.efficiency == r.efficiency;
                (
                    qrc,
                    no,
                    format!("{} ctrits", g.classical_trits),
                    g.quantum_trits.to_string(),
                    g.probability.to_string(),
                    g.efficiency.to_string(),
                    pass,
                )
            }
            Err(err) => {
                let msg = err.to_string();
                (
                    msg.clone(),
                    msg,
                    "-".into(),
                    "-".into(),
                    e.success_probability().to_string(),
                    "-".into(),
                    false,
                )
            }
        };
        all_pass &= pass;
        let basis = if r.scheme == Scheme::S1 {
            "-"
        } else {
            r.case.name()
        };
        let verdict = if pass { "PASS" } else { "FAIL" };
        let _ = writeln!(
            h,
            "{:<3} {:<10} {:<5} {:<8} {:<20} {:<9} {:<4} {:<5} {:<6} {verdict}",
            r.scheme.to_string(),
            r.operation,
            basis,
            qrc,
            no,
            crc,
            qt,
            p,
            eta
        );
        rows.push(json!({
            "scheme": r.scheme.to_string(),
            "operation": r.operation,
            "basis": if r.scheme == Scheme::S1 { None } else { Some(r.case.name()) },
            "qrc": qrc,
            "no": no,
            "crc": crc,
            "quantum_trits": qt,
            "probability": p,
            "efficiency": eta,
            "expected": {
                "qrc": r.qrc,
                "no": r.no,
                "crc": format!("{} ctrits", r.classical_trits),
                "quantum_trits": r.quantum_trits.to_string(),
                "probability": r.probability.to_string(),
                "efficiency": r.efficiency.to_string(),
            },
            "pass": pass,
        }));
    }
    let _ = writeln!(
        h,
        "{}",
        if all_pass {
            "all rows PASS"
        } else {
            "some rows FAIL"
        }
    );
    Ok(Report {
        human: h,
        json: json!({ "command": "table1", "seed": seed, "rows": rows, "all_pass": all_pass }),
        ok: all_pass,
    })
}

/// The preset measuring bases and their W operators.
pub fn bases() -> Report {
    let mut h = String::new();
    let mut cases = Vec::new();
    for case in PresetCase::ALL {
        let (basis, w) = preset_basis(case);
        let _ = writeln!(h, "{case}");
        let mut vectors = Vec::new();
        for k in 0..3 {
            let v = state_text(basis.vector(k));
            let _ = writeln!(h, "  xi{k} = ({})", v.join(", "));
            vectors.push(v);
        }
        for (k, wk) in w.iter().enumerate() {
            let unitary = wk.unitarity_residual() < TOL;
            let _ = writeln!(h, "  W{} (unitary: {})", k + 1, yes(unitary));
            matrix_human(&mut h, "    ", wk);
        }
        cases.push(json!({
            "case": case.name(),
            "vectors": vectors,
            "w": w.iter().map(|wk| json!({
                "matrix": matrix_rows(wk),
                "unitary": wk.unitarity_residual() < TOL,
            })).collect::<Vec<_>>(),
        }));
    }
    Report {
        human: h,
        json: json!({ "command": "bases", "cases": cases }),
        ok: true,
    }
}
