// The equivariant minimal model program on blow-ups.

use toric_surface_lab::symmetry::table;
use toric_surface_lab::{
    classify_minimal, minimalize, CompleteFan2D, ConjugacyLabel, SymmetryGroup,
};

fn show(
    name: &str,
    fan: &CompleteFan2D,
    g: &SymmetryGroup,
) -> Result<(), Box<dyn std::error::Error>> {
    let trace = minimalize(fan, g)?;
    println!("{name}: {} rays, {} step(s)", fan.len(), trace.len());
    for s in &trace.steps {
        println!(
            "  round {}: contract {:?} -> {}",
            s.round,
            s.contracted_rays
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>(),
            s.after
        );
    }
    let label = classify_minimal(&trace.terminal, g)?;
    println!(
        "  minimal model {label}, family ({})",
        label.family().roman()
    );
    Ok(())
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let hexagon = CompleteFan2D::hexagon();
    show("dP6, trivial group", &hexagon, &SymmetryGroup::trivial())?;
    show("dP6, C3", &hexagon, &ConjugacyLabel::C3.representative())?;
    show("dP6, D12", &hexagon, &ConjugacyLabel::D12.representative())?;

    let square = CompleteFan2D::square();
    let c4 = ConjugacyLabel::C4.representative();
    let octagon = square.blow_up(&[0, 1, 2, 3])?;
    show("square blown up in all four points, C4", &octagon, &c4)?;

    let reflection = SymmetryGroup::generated_by(&[table::C])?;
    let f1 = CompleteFan2D::projective_plane().blow_up(&[0])?;
    show("F1 with the swap", &f1, &reflection)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
