use std::fs;

use photoion_core::PotentialSpec;
use serde_json::{Map, Value};

use crate::{Failure, PotentialArgs};

/// Builds the potential from `--potential/--param` or `--potential-file`.
pub fn potential(args: &PotentialArgs) -> Result<PotentialSpec, Failure> {
    let spec: PotentialSpec = match (&args.potential, &args.potential_file) {
        (Some(_), Some(_)) => return Err(Failure::usage("give either --potential or --potential-file, not both")),
        (None, None) => {
            return Err(Failure::usage(
                "a potential is required: --potential <kind> [--param k=v ...] or --potential-file <json>",
            ))
        }
        (None, Some(path)) => {
            if !args.params.is_empty() {
                return Err(Failure::usage("--param cannot be combined with --potential-file"));
            }
            let text =
                fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| Failure::usage(format!("bad potential file {}: {e}", path.display())))?
        }
        (Some(kind), None) => {
            let mut params = Map::new();
            for kv in &args.params {
                let (k, v) = kv
                    .split_once('=')
                    .ok_or_else(|| Failure::usage(format!("--param {kv}: expected key=value")))?;
                let value: Value = serde_json::from_str(v.trim())
                    .map_err(|_| Failure::usage(format!("--param {kv}: value must be a number or a JSON array")))?;
                if params.insert(k.trim().to_string(), value).is_some() {
                    return Err(Failure::usage(format!("--param {}: given twice", k.trim())));
                }
            }
            let doc = serde_json::json!({ "kind": kind.to_lowercase(), "params": params });
            serde_json::from_value(doc).map_err(|e| Failure::usage(format!("potential {kind}: {e}")))?
        }
    };
    spec.validate()?;
    Ok(spec)
}
