// Automorphism groups of fans and the thirteen conjugacy classes of finite
// subgroups of GL(2,Z).

use toric_surface_lab::symmetry::table;
use toric_surface_lab::{
    classify_subgroup, compute_aut, enumerate_subgroups, CompleteFan2D, ConjugacyLabel,
    SymmetryGroup, UnimodularMatrix,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (name, fan) in [
        ("P2", CompleteFan2D::projective_plane()),
        ("square", CompleteFan2D::square()),
        ("hexagon", CompleteFan2D::hexagon()),
        ("F3", CompleteFan2D::hirzebruch(3)),
    ] {
        let aut = compute_aut(&fan);
        let class = classify_subgroup(&aut)?;
        println!(
            "Aut({name}) has order {:2} and class {}; ray orbits {:?}",
            aut.order(),
            class.label,
            aut.ray_orbits()
        );
    }

    for label in ConjugacyLabel::ALL {
        let g = label.representative();
        println!(
            "{:>4}: order {:2}, generators {:?}",
            label.to_string(),
            g.order(),
            label
                .generators()
                .iter()
                .map(|m| m.to_string())
                .collect::<Vec<_>>()
        );
    }

    // a disguised reflection: conjugate C by P and classify again
    let p = UnimodularMatrix::new([[2, 1], [1, 1]])?;
    let g = SymmetryGroup::generated_by(&[table::C.conjugate_by(&p)])?;
    let c = classify_subgroup(&g)?;
    println!(
        "{} is conjugate to {} via {}",
        g.generators()[0],
        c.label,
        c.conjugator
    );

    let subgroups = enumerate_subgroups(&compute_aut(&CompleteFan2D::hexagon()));
    let labels: Vec<String> = subgroups
        .iter()
        .map(|h| classify_subgroup(h).map(|c| c.label.to_string()))
        .collect::<Result<_, _>>()?;
    println!("subgroups of Aut(hexagon): {}", labels.join(" "));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
