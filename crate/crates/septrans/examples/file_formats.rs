//! The JSON file formats shared by the library and the `septrans` binary.
//!
//! States, separable operations, and random unitary channels all have
//! serde-backed file forms with complex numbers as `[re, im]` pairs and
//! matrices as row-major nested lists. Everything the tool emits re-parses
//! to an equal in-memory value, so certified outputs can be piped back in
//! as inputs. The same formats power the CLI:
//!
//! ```text
//! septrans schmidt state.json --json
//! septrans verdict psi.json phi.json
//! septrans verify-op op.json state.json --unitarity
//! septrans channel channel.json fixed-states
//! septrans sweep theorem1_product --trials 500 --seed 1
//! ```
//!
//! Run with: `cargo run --example file_formats`

use septrans::cli::{
    channel_from_file, channel_to_file, operation_from_file, operation_to_file, state_from_file,
    state_to_file, ChannelFile, StateFile,
};
use septrans::ruchannel::RandomUnitaryChannel;
use septrans::sepops::{construct_two_qubit_locc, DeterministicOutcome};
use septrans::criteria::SchmidtSpectrum;
use septrans::lab::diagonal_state;

fn main() {
    // A state file, as it would sit on disk.
    let text = r#"{
        "dims": [2, 2],
        "amplitudes": [[0.5, 0.0], [0.5, 0.0], [0.5, 0.0], [-0.5, 0.0]]
    }"#;
    let file: StateFile = serde_json::from_str(text).unwrap();
    let psi = state_from_file(&file).expect("normalized");
    println!(
        "parsed state: dims {}x{}, rank {}",
        psi.dim_a(),
        psi.dim_b(),
        psi.schmidt_decompose(1e-10).unwrap().rank
    );

    // Normalization is enforced at parse time — a stretched copy is refused.
    let mut stretched = file.clone();
    stretched.amplitudes[0] = [1.0, 0.0];
    assert!(state_from_file(&stretched).is_err());
    println!("unnormalized file rejected.");

    // Operations round-trip through their file form with closure intact.
    let lambda = SchmidtSpectrum::from_squares(&[0.7, 0.3]).unwrap();
    let mu = SchmidtSpectrum::from_squares(&[0.85, 0.15]).unwrap();
    let op = construct_two_qubit_locc(&lambda, &mu).unwrap();
    let op_text = serde_json::to_string_pretty(&operation_to_file(&op)).unwrap();
    println!("\noperation file ({} bytes):\n{}", op_text.len(), op_text);
    let reparsed = operation_from_file(&serde_json::from_str(&op_text).unwrap()).unwrap();
    assert!(reparsed.validate_closure(1e-9).valid);

    // The reparsed operation still certifies the transformation.
    let source = diagonal_state(&lambda).unwrap();
    match reparsed.check_deterministic(&source, 1e-9).unwrap() {
        DeterministicOutcome::Deterministic(cert) => {
            println!(
                "reparsed operation certifies: probabilities {:?}",
                cert.probabilities
            );
            // Emit the certified output as a state file — ready to feed back
            // in as the source of the next transformation.
            let phi_file = state_to_file(&cert.phi);
            let phi_text = serde_json::to_string(&phi_file).unwrap();
            let back: StateFile = serde_json::from_str(&phi_text).unwrap();
            assert_eq!(phi_file, back);
            println!("certified output round-trips bit-for-bit.");
        }
        DeterministicOutcome::NotDeterministic { .. } => unreachable!("constructed fixture"),
    }

    // Channels too.
    let channel = RandomUnitaryChannel::two_qubit_example(0.25).unwrap();
    let ch_text = serde_json::to_string(&channel_to_file(&channel)).unwrap();
    let ch_back: ChannelFile = serde_json::from_str(&ch_text).unwrap();
    let rebuilt = channel_from_file(&ch_back).unwrap();
    assert!(rebuilt.validate_channel(1e-9).valid);
    println!("\nchannel file round-trips; {} terms.", rebuilt.terms().len());
    println!("all checks passed.");
}
