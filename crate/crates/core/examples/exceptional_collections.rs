// Full exceptional collections and their certificates.

use toric_surface_lab::{
    build_collection, compute_aut, minimalize, verify_collection, CompleteFan2D, SymmetryGroup,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (name, fan, g) in [
        ("P2", CompleteFan2D::projective_plane(), None),
        ("F3", CompleteFan2D::hirzebruch(3), None),
        ("square", CompleteFan2D::square(), None),
        ("hexagon", CompleteFan2D::hexagon(), None),
        (
            "Bl P2",
            CompleteFan2D::projective_plane().blow_up(&[0])?,
            Some(SymmetryGroup::trivial()),
        ),
    ] {
        let g = g.unwrap_or_else(|| compute_aut(&fan));
        let coll = build_collection(&minimalize(&fan, &g)?, &g)?;
        let cert = verify_collection(&coll, &fan, &g);
        println!(
            "{name}: {coll} -> {}",
            if cert.passed { "pass" } else { "FAIL" }
        );
    }

    let p2 = CompleteFan2D::projective_plane();
    let g = compute_aut(&p2);
    let reversed = build_collection(&minimalize(&p2, &g)?, &g)?.reversed();
    let cert = verify_collection(&reversed, &p2, &g);
    println!(
        "reversed: {reversed} -> first violation {}",
        cert.first_violation.ok_or("expected a violation")?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
