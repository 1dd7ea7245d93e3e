//! Towers shipped with the tool, addressed as `builtin:NAME`, and tower
//! files.

use std::path::Path;
use std::sync::Arc;

use proflat_core::construct::cyclic;
use proflat_core::tower::*;
use proflat_core::{Limits, Tower};

use crate::error::{HarnessError, Result};

pub const DEFAULT_DEPTH: usize = 4;

/// Bundled tower names with a one-line description.
pub const BUNDLED: &[(&str, &str)] = &[
    ("zp2", "C_{2^k}"),
    ("zp3", "C_{3^k}"),
    ("c6k", "C_{6^k}"),
    ("c5k_c2", "C_{5^k} x C2"),
    ("zp2_c2", "C_{2^k} x C2"),
    ("zp2_zp3", "C_{2^k} x C_{3^k}"),
    ("c2k_c3", "C_{2^k} acting on C3 by inversion"),
    ("inv5", "C2 acting on C_{5^k} by inversion"),
    ("type_iv", "C_{2^k} acting on C_{2^k} by a -> a^5"),
];

fn bundled_names() -> String {
    BUNDLED
        .iter()
        .map(|(n, _)| *n)
        .collect::<Vec<_>>()
        .join(", ")
}

/// A bundled tower built to depth `d`.
pub fn bundled(name: &str, d: usize, limits: &Limits) -> Result<Arc<Tower>> {
    let c2 = || constant_tower(&cyclic(2, limits)?, d);
    let t = match name {
        "zp2" => zp_tower(2, d, limits)?,
        "zp3" => zp_tower(3, d, limits)?,
        "c6k" => cyclic_tower(6, d, limits)?,
        "c5k_c2" => product_tower(&*zp_tower(5, d, limits)?, &*c2()?, limits)?,
        "zp2_c2" => product_tower(&*zp_tower(2, d, limits)?, &*c2()?, limits)?,
        "zp2_zp3" => product_tower(&*zp_tower(2, d, limits)?, &*zp_tower(3, d, limits)?, limits)?,
        "c2k_c3" => semidirect_tower(2, d, &[3], 2, limits)?,
        "inv5" => inversion_tower(2, 5, d, limits)?,
        "type_iv" => type_iv_tower(2, 2, d, limits)?,
        _ => {
            return Err(HarnessError::UnknownTower(
                name.to_string(),
                bundled_names(),
            ))
        }
    };
    Ok(t)
}

/// Every bundled tower at [`DEFAULT_DEPTH`], paired with its name.
pub fn bundled_all(limits: &Limits) -> Result<Vec<(String, Arc<Tower>)>> {
    BUNDLED
        .iter()
        .map(|(n, _)| Ok((format!("builtin:{n}"), bundled(n, DEFAULT_DEPTH, limits)?)))
        .collect()
}

/// `builtin:NAME` or a path to a tower file. Bundled towers are built to
/// `depth` (default 4); file towers are truncated to it.
pub fn load(source: &str, depth: Option<usize>, limits: &Limits) -> Result<Arc<Tower>> {
    if let Some(name) = source.strip_prefix("builtin:") {
        return bundled(name, depth.unwrap_or(DEFAULT_DEPTH), limits);
    }
    let path = Path::new(source);
    let text = std::fs::read_to_string(path).map_err(|e| HarnessError::Io {
        path: path.to_path_buf(),
        source: e,
    })?;
    let tower = parse_tower(&text, limits).map_err(|e| HarnessError::File {
        path: path.to_path_buf(),
        source: e,
    })?;
    match depth {
        Some(d) => Ok(tower.truncate(d)?),
        None => Ok(tower),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_bundled_tower_builds_to_default_depth() {
        let towers = bundled_all(&Limits::default()).unwrap();
        assert_eq!(towers.len(), BUNDLED.len());
        for (name, t) in &towers {
            assert_eq!(t.depth(), DEFAULT_DEPTH, "{name}");
        }
    }

    #[test]
    fn unknown_names_list_the_bundle() {
        let err = bundled("zp7", 2, &Limits::default()).unwrap_err();
        assert!(err.to_string().contains("c6k"));
    }
}
