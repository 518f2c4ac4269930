//! Library surface of the `pfs` command-line tool; the binary in `main.rs`
//! is a thin dispatcher so that the verification suites are callable from
//! integration tests.

pub mod args;
pub mod commands {
    pub mod compare;
    pub mod compute;
    pub mod verify;
}
pub mod config;

use pfs_core::error::PfsError;

/// Exit-code contract: 0 success, 2 axiom violation, 3 split-field failure,
/// 1 everything else (usage errors exit 64 before reaching here).
pub fn exit_code(e: &PfsError) -> i32 {
    match e {
        PfsError::AxiomViolation(_) => 2,
        PfsError::SplitField(_) => 3,
        _ => 1,
    }
}

/// Machine-readable error envelope for stderr.
pub fn error_json(e: &PfsError) -> String {
    let kind = match e {
        PfsError::NotPrime(_) => "not_prime",
        PfsError::UnsupportedField { .. } => "unsupported_field",
        PfsError::SplitField(_) => "split_field",
        PfsError::AxiomViolation(_) => "axiom_violation",
        PfsError::Inconsistency(_) => "inconsistency",
        PfsError::BadInput(_) => "bad_input",
        PfsError::BoundExceeded(_) => "bound_exceeded",
    };
    serde_json::json!({ "error": { "kind": kind, "message": e.to_string() } }).to_string()
}
