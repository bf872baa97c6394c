// Decomposition into separable algebras, one factor per basis orbit.

use toric_surface_lab::{
    annotate_family, classify_minimal, compute_aut, decompose, minimalize,
    standard_permutation_basis, CompleteFan2D, ConjugacyLabel, SymmetryGroup,
};

fn show(
    name: &str,
    fan: &CompleteFan2D,
    g: &SymmetryGroup,
) -> Result<(), Box<dyn std::error::Error>> {
    let trace = minimalize(fan, g)?;
    let basis = standard_permutation_basis(&trace, g)?;
    let d = decompose(&basis, &trace, g)?;
    println!("{name}: X = {}", d.product());
    for f in &d.factors {
        println!(
            "    degree {} {:<14} {} on {:?}",
            f.base_degree, f.brauer_label, f.endomorphism, f.members
        );
    }
    for n in &d.notes {
        println!("    note: {n}");
    }
    Ok(())
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (name, fan) in [
        ("F2", CompleteFan2D::hirzebruch(2)),
        ("F3", CompleteFan2D::hirzebruch(3)),
        ("P2", CompleteFan2D::projective_plane()),
        ("square", CompleteFan2D::square()),
        ("hexagon", CompleteFan2D::hexagon()),
    ] {
        show(name, &fan, &compute_aut(&fan))?;
    }
    show(
        "hexagon under C3",
        &CompleteFan2D::hexagon(),
        &ConjugacyLabel::C3.representative(),
    )?;

    let sq = CompleteFan2D::square();
    let label = classify_minimal(&sq, &compute_aut(&sq))?;
    let family = annotate_family(&label)?;
    println!(
        "{label}: family ({}) {}, slots {:?}",
        family.family.roman(),
        family.description,
        family.slots
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
