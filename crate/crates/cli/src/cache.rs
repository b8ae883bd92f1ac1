//! Content-addressed store for solved bound states.

use std::fs;
use std::path::{Path, PathBuf};

use photoion_core::{BoundState, PotentialSpec, SolverConfig};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::output::{to_json, JSON_SCHEMA};
use crate::Failure;

#[derive(Debug, Serialize, Deserialize)]
pub struct BoundRecord {
    pub schema: String,
    pub potential: PotentialSpec,
    pub mass: f64,
    pub config: SolverConfig,
    pub state: BoundState,
}

fn key(spec: &PotentialSpec, m: f64, cfg: &SolverConfig) -> String {
    let doc = serde_json::json!({ "schema": JSON_SCHEMA, "potential": spec, "mass": m, "config": cfg });
    hex::encode(Sha256::digest(doc.to_string().as_bytes()))
}

fn path(dir: &Path, spec: &PotentialSpec, m: f64, cfg: &SolverConfig) -> PathBuf {
    dir.join(format!("bound-{}.json", key(spec, m, cfg)))
}

/// Solves or loads; returns the record and its exact serialized text.
pub fn solve(
    spec: &PotentialSpec,
    m: f64,
    cfg: &SolverConfig,
    dir: Option<&Path>,
) -> Result<(BoundRecord, String), Failure> {
    if let Some(dir) = dir {
        let p = path(dir, spec, m, cfg);
        if let Ok(text) = fs::read_to_string(&p) {
            match serde_json::from_str::<BoundRecord>(&text) {
                Ok(rec) if rec.schema == JSON_SCHEMA => return Ok((rec, text)),
                _ => eprintln!("warning: ignoring unreadable cache entry {}", p.display()),
            }
        }
    }
    let state = photoion_core::solve_ground(spec, m, cfg)?;
    let rec = BoundRecord {
        schema: JSON_SCHEMA.into(),
        potential: spec.clone(),
        mass: m,
        config: *cfg,
        state,
    };
    let text = to_json(&rec);
    if let Some(dir) = dir {
        fs::create_dir_all(dir)?;
        let p = path(dir, spec, m, cfg);
        let tmp = p.with_extension("tmp");
        fs::write(&tmp, &text)?;
        fs::rename(&tmp, &p)?;
    }
    Ok((rec, text))
}
