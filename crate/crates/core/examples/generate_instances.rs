//! Writing instance bundles to disk and reading the manifests back.

use std::path::PathBuf;

use roundsim::generators::{prime_family, round_robin_bundle, two_letter_bundle};

fn main() -> roundsim::Result<()> {
    let root = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("roundsim-bundles"));
    for bundle in [two_letter_bundle(), round_robin_bundle(3)?, prime_family(2)?] {
        let dir = root.join(&bundle.name);
        bundle.write_to(&dir)?;
        println!("{} -> {}", bundle.name, dir.display());
        for e in &bundle.expected {
            println!("  {:?} k={:?} holds={} ({:?})", e.relation, e.k, e.holds, e.source);
        }
    }
    Ok(())
}
