//! The compare subcommand.

use crate::args::CompareArgs;
use pfs_core::error::{PfsError, PfsResult};
use pfs_core::pfs::{compare_files, from_file_json, IsoMode};

pub fn run(args: &CompareArgs) -> PfsResult<bool> {
    let mode = match args.mode.as_str() {
        "multiposet" => IsoMode::Multiposet,
        "category" => IsoMode::Category,
        "f-identical" => IsoMode::FIdentical,
        other => {
            return Err(PfsError::BadInput(format!(
                "unknown mode {other:?}; expected multiposet|category|f-identical"
            )))
        }
    };
    let read = |p: &std::path::Path| -> PfsResult<_> {
        let text = std::fs::read_to_string(p)
            .map_err(|e| PfsError::BadInput(format!("io: {}: {e}", p.display())))?;
        from_file_json(&text)
    };
    let a = read(&args.file1)?;
    let b = read(&args.file2)?;
    let witness = compare_files(&a, &b, mode)?;
    let report = serde_json::json!({
        "mode": args.mode,
        "isomorphic": witness.is_some(),
        "witness": witness.as_ref().map(|w| &w.object_map),
    });
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    Ok(witness.is_some())
}
