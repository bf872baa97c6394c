// The whole pipeline on a few surfaces and on the generated corpus.

use toric_surface_lab::cli::pipeline;
use toric_surface_lab::{corpus, CompleteFan2D, ConjugacyLabel};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let fan = CompleteFan2D::hexagon().blow_up(&[0, 2, 4])?;
    let g = ConjugacyLabel::C3.representative();
    let r = pipeline(&fan, &g)?;
    println!("fan with {} rays under C3", fan.len());
    println!(
        "  minimal model {} after {} step(s)",
        r.label,
        r.trace.len()
    );
    println!("  basis orbits {:?}", r.basis.signature());
    println!(
        "  collection blocks {:?}: {}",
        r.collection.block_sizes(),
        if r.certificate.passed { "pass" } else { "FAIL" }
    );
    println!("  X = {}", r.decomposition.product());

    let entries = corpus::generate(corpus::DEFAULT_SEED);
    let passed = entries
        .iter()
        .filter(|e| {
            pipeline(&e.fan, &e.group)
                .map(|r| r.passed())
                .unwrap_or(false)
        })
        .count();
    println!("corpus: {passed}/{} surfaces pass", entries.len());
    if passed != entries.len() {
        return Err("corpus failures".into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
