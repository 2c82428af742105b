//! Command-line surface and JSON file formats: parse states, operations,
//! and channels from JSON files, run verdicts and sweeps, and emit
//! human-readable or machine-readable output.
//!
//! Exit codes are a stable contract: `0` pass/possible, `1` negative
//! verdict, `2` input error, `3` open region (neither condition decides).
//! JSON goes to stdout; diagnostics go to stderr. The tolerance defaults to
//! `1e-9`, can be overridden per command with `--tol`, and falls back to the
//! `SEPTRANS_DEFAULT_TOL` environment variable when the flag is absent.

use crate::criteria::{transform_verdict, SchmidtSpectrum, VerdictTag};
use crate::lab::run_sweep;
use crate::numerics::{C64, CMatrix};
use crate::ruchannel::{cross_check_example, ChannelTerm, ConditionSide, RandomUnitaryChannel};
use crate::sepops::{DeterministicOutcome, KrausPair, SeparableOperation};
use crate::states::BipartiteState;
use crate::{Error, Result, DEFAULT_TOL, RANK_CUTOFF};
use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::ffi::OsString;
use std::path::{Path, PathBuf};

/// A bipartite pure state on file: `dims = [dA, dB]`, amplitudes as
/// `[re, im]` pairs of length `dA·dB`, index convention `a·dB + b`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct StateFile {
    pub dims: [usize; 2],
    pub amplitudes: Vec<[f64; 2]>,
}

/// One Kraus pair on file; matrices are row-major nested lists of `[re, im]`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct KrausEntry {
    #[serde(rename = "A")]
    pub a: Vec<Vec<[f64; 2]>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<[f64; 2]>>,
}

/// A separable operation on file.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct OperationFile {
    pub dims: [usize; 2],
    pub kraus: Vec<KrausEntry>,
}

/// One random-unitary term on file.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TermEntry {
    pub p: f64,
    #[serde(rename = "U")]
    pub u: Vec<Vec<[f64; 2]>>,
    #[serde(rename = "V")]
    pub v: Vec<Vec<[f64; 2]>>,
}

/// A separable random unitary channel on file.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ChannelFile {
    pub dim: usize,
    pub terms: Vec<TermEntry>,
}

#[derive(Parser)]
#[command(
    name = "septrans",
    version,
    about = "Decide, certify, and property-test deterministic separable transformations of bipartite pure states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Schmidt coefficients and rank of a state file.
    Schmidt {
        /// Path to a state JSON file.
        state: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether some deterministic separable operation can map the
    /// first state to the second.
    Verdict {
        /// Path to the source state JSON file.
        psi: PathBuf,
        /// Path to the target state JSON file.
        phi: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Check whether a given operation maps a state deterministically to a
    /// pure output, and certify it.
    VerifyOp {
        /// Path to an operation JSON file.
        op: PathBuf,
        /// Path to a state JSON file.
        state: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        json: bool,
        /// Also test every Kraus factor for proportionality to a unitary on
        /// the input supports.
        #[arg(long)]
        unitarity: bool,
    },
    /// Random-unitary-channel tools: fixed families, collection conditions,
    /// and the built-in worked example.
    Channel {
        /// Path to a channel JSON file.
        channel: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        json: bool,
        #[command(subcommand)]
        action: ChannelAction,
    },
    /// Run a named property sweep and report failures.
    Sweep {
        /// One of the registered sweep names.
        name: String,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum ChannelAction {
    /// Solve for the family of states every branch fixes up to phase.
    FixedStates,
    /// Check the pair conditions and per-state determinism for a collection
    /// of full-Schmidt-rank states.
    CheckCollection {
        /// Paths to state JSON files (at least one).
        states: Vec<PathBuf>,
    },
    /// Run the built-in two-qubit worked example at mixing parameter p.
    Example {
        /// Mixing parameter in (0, 1).
        p: f64,
    },
}

const EXIT_OK: i32 = 0;
const EXIT_NEGATIVE: i32 = 1;
const EXIT_INPUT: i32 = 2;
const EXIT_OPEN_REGION: i32 = 3;

/// Parse arguments (the first is the program name), run one command, and
/// return the process exit code. All printing happens here: JSON or results
/// to stdout, diagnostics to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Schmidt { state, tol, json } => cmd_schmidt(&state, tol, json),
        Command::Verdict { psi, phi, tol, json } => cmd_verdict(&psi, &phi, tol, json),
        Command::VerifyOp {
            op,
            state,
            tol,
            json,
            unitarity,
        } => cmd_verify_op(&op, &state, tol, json, unitarity),
        Command::Channel {
            channel,
            tol,
            json,
            action,
        } => cmd_channel(&channel, tol, json, &action),
        Command::Sweep {
            name,
            trials,
            seed,
            json,
        } => cmd_sweep(&name, trials, seed, json),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            EXIT_INPUT
        }
    }
}

fn resolve_tol(flag: Option<f64>) -> Result<f64> {
    let tol = match flag {
        Some(t) => t,
        None => match std::env::var("SEPTRANS_DEFAULT_TOL") {
            Ok(s) => s.trim().parse::<f64>().map_err(|_| {
                Error::Input(format!("SEPTRANS_DEFAULT_TOL is not a number: {s:?}"))
            })?,
            Err(_) => DEFAULT_TOL,
        },
    };
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::Input(format!(
            "tolerance must be finite and positive, got {tol}"
        )));
    }
    Ok(tol)
}

struct LoadedInput {
    path: PathBuf,
    sha256: String,
}

fn read_bytes(path: &Path) -> Result<(Vec<u8>, LoadedInput)> {
    let bytes = std::fs::read(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    let mut hasher = Sha256::new();
    hasher.update(&bytes);
    let sha256 = hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect();
    Ok((
        bytes,
        LoadedInput {
            path: path.to_path_buf(),
            sha256,
        },
    ))
}

fn parse_json<T: for<'a> Deserialize<'a>>(bytes: &[u8], path: &Path) -> Result<T> {
    serde_json::from_slice(bytes)
        .map_err(|e| Error::Input(format!("malformed JSON in {}: {e}", path.display())))
}

fn read_state(path: &Path) -> Result<(BipartiteState, StateFile, LoadedInput)> {
    let (bytes, input) = read_bytes(path)?;
    let file: StateFile = parse_json(&bytes, path)?;
    let state = state_from_file(&file)
        .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    Ok((state, file, input))
}

/// Build the in-memory state, rejecting non-normalized amplitude lists.
pub fn state_from_file(file: &StateFile) -> Result<BipartiteState> {
    let [da, db] = file.dims;
    if file.amplitudes.len() != da * db {
        return Err(Error::Input(format!(
            "expected {} amplitudes for dims [{da}, {db}], found {}",
            da * db,
            file.amplitudes.len()
        )));
    }
    let amps: Vec<C64> = file.amplitudes.iter().map(|[re, im]| C64::new(*re, *im)).collect();
    BipartiteState::new(da, db, amps)
}

/// Serialize a state back into its file form.
pub fn state_to_file(state: &BipartiteState) -> StateFile {
    let ket = state.ket();
    StateFile {
        dims: [state.dim_a(), state.dim_b()],
        amplitudes: (0..ket.rows()).map(|i| [ket[(i, 0)].re, ket[(i, 0)].im]).collect(),
    }
}

fn matrix_from_nested(rows: &[Vec<[f64; 2]>], d: usize, what: &str) -> Result<CMatrix> {
    if rows.len() != d || rows.iter().any(|r| r.len() != d) {
        return Err(Error::Input(format!("{what} must be a {d}x{d} matrix")));
    }
    let mut m = CMatrix::zeros(d, d);
    for (i, row) in rows.iter().enumerate() {
        for (j, [re, im]) in row.iter().enumerate() {
            if !re.is_finite() || !im.is_finite() {
                return Err(Error::Input(format!("{what} has a non-finite entry")));
            }
            m[(i, j)] = C64::new(*re, *im);
        }
    }
    Ok(m)
}

/// Serialize a matrix into row-major nested `[re, im]` lists.
pub fn matrix_to_nested(m: &CMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

/// Build the in-memory operation; the closure condition is checked by the
/// caller so the residual can be reported.
pub fn operation_from_file(file: &OperationFile) -> Result<SeparableOperation> {
    let [da, db] = file.dims;
    let mut pairs = Vec::with_capacity(file.kraus.len());
    for (i, entry) in file.kraus.iter().enumerate() {
        pairs.push(KrausPair {
            a: matrix_from_nested(&entry.a, da, &format!("kraus[{i}].A"))?,
            b: matrix_from_nested(&entry.b, db, &format!("kraus[{i}].B"))?,
        });
    }
    SeparableOperation::new(pairs)
}

/// Serialize an operation back into its file form.
pub fn operation_to_file(op: &SeparableOperation) -> OperationFile {
    OperationFile {
        dims: [op.dim_a(), op.dim_b()],
        kraus: op
            .pairs()
            .iter()
            .map(|p| KrausEntry {
                a: matrix_to_nested(&p.a),
                b: matrix_to_nested(&p.b),
            })
            .collect(),
    }
}

/// Build the in-memory channel; probability normalization and unitarity are
/// checked by the caller so residuals can be reported.
pub fn channel_from_file(file: &ChannelFile) -> Result<RandomUnitaryChannel> {
    let d = file.dim;
    let mut terms = Vec::with_capacity(file.terms.len());
    for (i, t) in file.terms.iter().enumerate() {
        terms.push(ChannelTerm {
            probability: t.p,
            u: matrix_from_nested(&t.u, d, &format!("terms[{i}].U"))?,
            v: matrix_from_nested(&t.v, d, &format!("terms[{i}].V"))?,
        });
    }
    RandomUnitaryChannel::new(terms)
}

/// Serialize a channel back into its file form.
pub fn channel_to_file(ch: &RandomUnitaryChannel) -> ChannelFile {
    ChannelFile {
        dim: ch.d(),
        terms: ch
            .terms()
            .iter()
            .map(|t| TermEntry {
                p: t.probability,
                u: matrix_to_nested(&t.u),
                v: matrix_to_nested(&t.v),
            })
            .collect(),
    }
}

fn emit(
    json_mode: bool,
    command: &str,
    tol: f64,
    inputs: &[(&str, &LoadedInput)],
    result: Value,
    human: &str,
) {
    if json_mode {
        let mut inputs_obj = serde_json::Map::new();
        for (name, input) in inputs {
            inputs_obj.insert(
                (*name).to_string(),
                json!({
                    "path": input.path.display().to_string(),
                    "sha256": input.sha256,
                }),
            );
        }
        let envelope = json!({
            "version": env!("CARGO_PKG_VERSION"),
            "command": command,
            "tol": tol,
            "inputs": Value::Object(inputs_obj),
            "result": result,
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&envelope).expect("report serializes")
        );
    } else {
        println!("{human}");
    }
}

fn fmt_list(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| format!("{v:.10}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn fmt_amplitudes(state: &BipartiteState) -> String {
    let ket = state.ket();
    (0..ket.rows())
        .map(|i| format!("{:.10}{:+.10}i", ket[(i, 0)].re, ket[(i, 0)].im))
        .collect::<Vec<_>>()
        .join(", ")
}

fn cmd_schmidt(path: &Path, tol_flag: Option<f64>, json: bool) -> Result<i32> {
    let tol = resolve_tol(tol_flag)?;
    let (state, file, input) = read_state(path)?;
    let dec = state.schmidt_decompose(RANK_CUTOFF)?;
    let human = format!(
        "coefficients: {}\nrank: {}",
        fmt_list(&dec.coefficients),
        dec.rank
    );
    let result = json!({
        "coefficients": dec.coefficients,
        "rank": dec.rank,
        "basis_a": matrix_to_nested(&dec.basis_a),
        "basis_b": matrix_to_nested(&dec.basis_b),
        "state": file,
    });
    emit(json, "schmidt", tol, &[("state", &input)], result, &human);
    Ok(EXIT_OK)
}

fn cmd_verdict(psi_path: &Path, phi_path: &Path, tol_flag: Option<f64>, json: bool) -> Result<i32> {
    let tol = resolve_tol(tol_flag)?;
    let (psi, _, psi_input) = read_state(psi_path)?;
    let (phi, _, phi_input) = read_state(phi_path)?;
    let lambda = SchmidtSpectrum::of_state(&psi)?;
    let mu = SchmidtSpectrum::of_state(&phi)?;
    let verdict = transform_verdict(&lambda, &mu, tol)?;
    let human = format!(
        "verdict: {:?}\nsource rank: {}, target rank: {}\nproduct of source coefficients over source rank: {:.12}\nproduct of target coefficients over source rank: {:.12}\ntarget majorizes source: {}",
        verdict.tag,
        verdict.details.r_psi,
        verdict.details.r_phi,
        verdict.details.product_psi,
        verdict.details.product_phi,
        verdict.details.majorization,
    );
    let result = serde_json::to_value(&verdict).expect("verdict serializes");
    emit(
        json,
        "verdict",
        tol,
        &[("psi", &psi_input), ("phi", &phi_input)],
        result,
        &human,
    );
    Ok(match verdict.tag {
        VerdictTag::EqualSpectra | VerdictTag::LoccPossible => EXIT_OK,
        VerdictTag::ImpossibleRank | VerdictTag::ImpossibleProduct => EXIT_NEGATIVE,
        VerdictTag::OpenRegion => EXIT_OPEN_REGION,
    })
}

fn cmd_verify_op(
    op_path: &Path,
    state_path: &Path,
    tol_flag: Option<f64>,
    json: bool,
    unitarity: bool,
) -> Result<i32> {
    let tol = resolve_tol(tol_flag)?;
    let (op_bytes, op_input) = read_bytes(op_path)?;
    let op_file: OperationFile = parse_json(&op_bytes, op_path)?;
    let op = operation_from_file(&op_file)?;
    let closure = op.validate_closure(tol);
    if !closure.valid {
        return Err(Error::Input(format!(
            "operation violates the closure condition: residual {:.6e} exceeds tolerance {tol:.3e}",
            closure.residual
        )));
    }
    let (state, _, state_input) = read_state(state_path)?;
    let proportionality = if unitarity {
        Some(op.unitary_proportionality(&state, tol)?)
    } else {
        None
    };
    let prop_json = proportionality.as_ref().map(|cert| {
        json!({
            "all_proportional": cert.all_proportional(),
            "per_pair": cert.per_pair.iter().map(|p| json!({
                "unitary_proportional_a": p.unitary_proportional_a,
                "scale_a": p.scale_a,
                "unitary_proportional_b": p.unitary_proportional_b,
                "scale_b": p.scale_b,
            })).collect::<Vec<_>>(),
            "pairwise_factors": cert.pairwise_factors,
        })
    });
    let prop_human = proportionality.as_ref().map(|cert| {
        format!(
            "\nall factors proportional to unitaries on the supports: {}",
            cert.all_proportional()
        )
    });
    let inputs = [("op", &op_input), ("state", &state_input)];
    match op.check_deterministic(&state, tol)? {
        DeterministicOutcome::Deterministic(cert) => {
            let human = format!(
                "deterministic: yes\nphi amplitudes: {}\nbranch probabilities: {}\nbranch phases: {}{}",
                fmt_amplitudes(&cert.phi),
                fmt_list(&cert.probabilities),
                fmt_list(&cert.branch_phases),
                prop_human.unwrap_or_default(),
            );
            let result = json!({
                "deterministic": true,
                "phi": state_to_file(&cert.phi),
                "probabilities": cert.probabilities,
                "branch_phases": cert.branch_phases,
                "closure_residual": closure.residual,
                "proportionality": prop_json,
            });
            emit(json, "verify-op", tol, &inputs, result, &human);
            Ok(EXIT_OK)
        }
        DeterministicOutcome::NotDeterministic { witness_m } => {
            let human = format!(
                "deterministic: no\nwitness branch: {witness_m} (its output is not phase-proportional to branch 1's){}",
                prop_human.unwrap_or_default(),
            );
            let result = json!({
                "deterministic": false,
                "witness_m": witness_m,
                "closure_residual": closure.residual,
                "proportionality": prop_json,
            });
            emit(json, "verify-op", tol, &inputs, result, &human);
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn cmd_channel(
    path: &Path,
    tol_flag: Option<f64>,
    json: bool,
    action: &ChannelAction,
) -> Result<i32> {
    let tol = resolve_tol(tol_flag)?;
    let (bytes, input) = read_bytes(path)?;
    let file: ChannelFile = parse_json(&bytes, path)?;
    let channel = channel_from_file(&file)?;
    let report = channel.validate_channel(tol);
    if !report.valid {
        let worst_unitarity = report
            .unitarity_residuals
            .iter()
            .map(|&(a, b)| a.max(b))
            .fold(0.0f64, f64::max);
        return Err(Error::Input(format!(
            "invalid channel: probability sum {:.12}, worst unitarity residual {:.6e}, closure residual {:.6e}",
            report.probability_sum, worst_unitarity, report.closure_residual
        )));
    }
    match action {
        ChannelAction::FixedStates => {
            let family = channel.fixed_states(tol)?;
            let unconstrained = family.generator_pairs.is_empty();
            let mut human = String::new();
            if unconstrained {
                human.push_str(&format!(
                    "unconstrained (dimension {})",
                    channel.d() * channel.d()
                ));
            } else {
                for (i, space) in family.eigenspaces.iter().enumerate() {
                    let phases = space
                        .phases
                        .iter()
                        .map(|z| format!("{:.6}{:+.6}i", z.re, z.im))
                        .collect::<Vec<_>>()
                        .join(", ");
                    human.push_str(&format!(
                        "eigenspace {}: dimension {}, phases [{}], generic member rank {}\n",
                        i + 1,
                        space.basis.len(),
                        phases,
                        space.generic_member_rank
                    ));
                    for member in &space.basis {
                        for r in 0..member.rows() {
                            let row = (0..member.cols())
                                .map(|c| format!("{:.6}{:+.6}i", member[(r, c)].re, member[(r, c)].im))
                                .collect::<Vec<_>>()
                                .join(", ");
                            human.push_str(&format!("    [{row}]\n"));
                        }
                        human.push('\n');
                    }
                }
                human.pop();
            }
            let result = json!({
                "unconstrained": unconstrained,
                "eigenspaces": family.eigenspaces.iter().map(|s| json!({
                    "phases": s.phases.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
                    "basis": s.basis.iter().map(matrix_to_nested).collect::<Vec<_>>(),
                    "generic_member_rank": s.generic_member_rank,
                })).collect::<Vec<_>>(),
                "compatibility": family.compatibility,
                "channel": file,
            });
            emit(json, "channel fixed-states", tol, &[("channel", &input)], result, &human);
            Ok(EXIT_OK)
        }
        ChannelAction::CheckCollection { states } => {
            if states.is_empty() {
                return Err(Error::Input(
                    "check-collection needs at least one state file".into(),
                ));
            }
            let mut parsed = Vec::with_capacity(states.len());
            let mut state_inputs = Vec::with_capacity(states.len());
            for p in states {
                let (s, _, i) = read_state(p)?;
                parsed.push(s);
                state_inputs.push(i);
            }
            let report = channel.check_collection(&parsed, tol)?;
            let all_det = report.per_state.iter().all(|s| s.deterministic);
            let human = format!(
                "pair condition (A side): {}\npair condition (B side): {}\ndeterministic states: {} of {}",
                report.pair_condition_a,
                report.pair_condition_b,
                report.per_state.iter().filter(|s| s.deterministic).count(),
                report.per_state.len(),
            );
            let result = json!({
                "pair_condition_a": report.pair_condition_a,
                "pair_condition_b": report.pair_condition_b,
                "per_state": report.per_state.iter().map(|s| json!({
                    "deterministic": s.deterministic,
                    "phi": s.phi.as_ref().map(state_to_file),
                })).collect::<Vec<_>>(),
                "phase_table": report.phase_table.iter().map(|e| json!({
                    "side": match e.side { ConditionSide::USide => "U", ConditionSide::VSide => "V" },
                    "m": e.m, "n": e.n, "j": e.j, "k": e.k,
                    "theta": e.theta,
                })).collect::<Vec<_>>(),
            });
            let mut inputs: Vec<(&str, &LoadedInput)> = vec![("channel", &input)];
            let names: Vec<String> = (0..state_inputs.len())
                .map(|i| format!("state_{}", i + 1))
                .collect();
            for (name, li) in names.iter().zip(&state_inputs) {
                inputs.push((name, li));
            }
            emit(json, "channel check-collection", tol, &inputs, result, &human);
            Ok(
                if report.pair_condition_a && report.pair_condition_b && all_det {
                    EXIT_OK
                } else {
                    EXIT_NEGATIVE
                },
            )
        }
        ChannelAction::Example { p } => {
            let report = cross_check_example(*p)?;
            let human = format!(
                "mixing parameter: {}\nfixed-point fidelity: {:.12}\ndual-matrix residual: {:.3e}\nfamily samples: {} ({} failures)\nfamilies recovered: {} (span distance {:.3e})\nall checks pass: {}",
                report.p,
                report.fixed_point_fidelity,
                report.dual_residual,
                report.family_samples,
                report.family_failures,
                report.families_recovered,
                report.family_span_distance,
                report.all_pass,
            );
            let result = json!({
                "p": report.p,
                "fixed_point_fidelity": report.fixed_point_fidelity,
                "dual_residual": report.dual_residual,
                "family_samples": report.family_samples,
                "family_failures": report.family_failures,
                "families_recovered": report.families_recovered,
                "family_span_distance": report.family_span_distance,
                "all_pass": report.all_pass,
            });
            emit(json, "channel example", tol, &[("channel", &input)], result, &human);
            Ok(if report.all_pass { EXIT_OK } else { EXIT_NEGATIVE })
        }
    }
}

fn cmd_sweep(name: &str, trials: u64, seed: u64, json: bool) -> Result<i32> {
    let tol = DEFAULT_TOL;
    let report = run_sweep(name, trials, seed)?;
    let human = format!(
        "sweep {}: {} trials, {} failures, worst residual {:.3e}, elapsed {:.3}s{}",
        report.name,
        report.trials,
        report.failures,
        report.worst_residual,
        report.elapsed.as_secs_f64(),
        if report.seeds_of_failures.is_empty() {
            String::new()
        } else {
            format!("\nfailing trial seeds: {:?}", report.seeds_of_failures)
        },
    );
    let result = json!({
        "name": report.name,
        "trials": report.trials,
        "failures": report.failures,
        "seeds_of_failures": report.seeds_of_failures,
        "worst_residual": report.worst_residual,
        "elapsed_seconds": report.elapsed.as_secs_f64(),
    });
    emit(json, "sweep", tol, &[], result, &human);
    Ok(if report.failures == 0 { EXIT_OK } else { EXIT_NEGATIVE })
}
