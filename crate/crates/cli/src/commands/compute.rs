//! The compute subcommand: build, validate, serialize.

use crate::config::{BlockSelector, RunConfig};
use pfs_core::bimods::multiplicity_via_bimodules;
use pfs_core::blocks::relative_multiplicity;
use pfs_core::error::{PfsError, PfsResult};
use pfs_core::pfs::{to_dot, to_file_json, BlockSession};
use std::io::Write;
use std::path::{Path, PathBuf};

pub fn run(cfg: &RunConfig) -> PfsResult<()> {
    let probe = BlockSession::new(cfg.group.clone(), cfg.p, 0, cfg.field_degree)?;
    let indices: Vec<usize> = match cfg.selector {
        BlockSelector::Principal => vec![probe.principal_index()],
        BlockSelector::Index(i) => {
            if i >= probe.blocks.len() {
                return Err(PfsError::BadInput(format!(
                    "block index {i} out of range ({} blocks)",
                    probe.blocks.len()
                )));
            }
            vec![i]
        }
        BlockSelector::All => (0..probe.blocks.len()).collect(),
    };
    let multi = indices.len() > 1;
    for idx in indices {
        let session = BlockSession::new(cfg.group.clone(), cfg.p, idx, cfg.field_degree)?;
        let pfs = session.build(cfg.seed)?;
        if cfg.cross_check {
            cross_check(&session, cfg.seed)?;
        }
        let emit = if cfg.stable { pfs.stable_part() } else { pfs };
        let file = to_file_json(&emit);
        let mut text = serde_json::to_string_pretty(&file)
            .map_err(|e| PfsError::BadInput(format!("serialize: {e}")))?;
        text.push('\n');
        match &cfg.out {
            None => print!("{text}"),
            Some(path) => {
                let path = if multi { with_block_suffix(path, idx) } else { path.clone() };
                atomic_write(&path, text.as_bytes())?;
                eprintln!("wrote {}", path.display());
            }
        }
        if let Some(dot_path) = &cfg.dot {
            let dot = to_dot(&emit);
            let path = if multi { with_block_suffix(dot_path, idx) } else { dot_path.clone() };
            atomic_write(&path, dot.as_bytes())?;
        }
    }
    Ok(())
}

fn cross_check(session: &BlockSession, seed: u64) -> PfsResult<()> {
    let source = session.source(seed)?;
    let objs = pfs_core::blocks::overshadowed_objects(&session.fga, &source, seed)?;
    for q in &objs {
        for p in &objs {
            let corner = relative_multiplicity(&session.fga, &source, q, p, seed)?;
            let module = multiplicity_via_bimodules(&session.fga, &source, q, p, seed)?;
            if corner != module {
                return Err(PfsError::Inconsistency(format!(
                    "cross-check failed: corner multiplicity {corner} vs bimodule {module}"
                )));
            }
        }
    }
    Ok(())
}

fn with_block_suffix(path: &Path, idx: usize) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let ext = path.extension().map(|s| s.to_string_lossy().into_owned());
    let name = match ext {
        Some(e) => format!("{stem}_b{idx}.{e}"),
        None => format!("{stem}_b{idx}"),
    };
    path.with_file_name(name)
}

/// Write through a temp file in the target directory, then rename.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> PfsResult<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let tmp = dir.join(format!(
        ".pfs_tmp_{}_{}",
        std::process::id(),
        path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
    ));
    let write = || -> std::io::Result<()> {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        std::fs::rename(&tmp, path)
    };
    write().map_err(|e| {
        let _ = std::fs::remove_file(&tmp);
        PfsError::BadInput(format!("io: {}: {e}", path.display()))
    })
}
