//! Fixtures shared by the benchmark targets.

use cremona_core::birmap::{MapSpec, ProjMap};

/// Resolves a built-in map shortcut such as `g0c3` or `typeC`.
pub fn named(name: &str) -> ProjMap {
    MapSpec::named(name).and_then(|s| s.resolve().ok()).unwrap_or_else(|| panic!("unknown map shortcut {name}"))
}
