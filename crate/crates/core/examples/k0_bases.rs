// The Grothendieck ring, its presentation by orbit classes, and
// permutation bases of line bundles.

use toric_surface_lab::grothendieck::hirzebruch_labels;
use toric_surface_lab::{
    compute_aut, fa_recurrence_check, minimalize, search_line_bundle_basis,
    standard_permutation_basis, verify_klyachko, CompleteFan2D, Divisor, K0Model, PicardLattice,
    SymmetryGroup,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let f2 = CompleteFan2D::hirzebruch(2);
    let pic = PicardLattice::new(&f2);
    println!(
        "Pic(F2): form {:?}, K^2 = {}",
        pic.form(),
        pic.canonical_square()
    );

    let cert = verify_klyachko(&f2)?;
    println!(
        "K0(F2): rank {}, span invariants {:?}",
        cert.rank, cert.span_invariants
    );
    println!(
        "recurrence on F2 for m = 0..5: {}",
        fa_recurrence_check(&f2, 0..=5)?
    );

    let k0 = K0Model::new(&CompleteFan2D::projective_plane());
    let o1 = k0.line_bundle_class(&Divisor(vec![1, 0, 0]));
    println!("[O(1)]^2 on P2 = {}", k0.multiply(&o1, &o1));

    for (name, fan) in [
        ("F2", f2.clone()),
        ("P2", CompleteFan2D::projective_plane()),
        ("square", CompleteFan2D::square()),
        ("hexagon", CompleteFan2D::hexagon()),
    ] {
        let g = compute_aut(&fan);
        let basis = standard_permutation_basis(&minimalize(&fan, &g)?, &g)?;
        println!(
            "{name}: basis {:?}, orbit signature {:?}",
            basis.names(),
            basis.signature()
        );
    }

    // transported to a blow-up
    let bl = CompleteFan2D::hexagon().blow_up(&[0])?;
    let g = SymmetryGroup::trivial();
    let basis = standard_permutation_basis(&minimalize(&bl, &g)?, &g)?;
    println!("hexagon blown up once: {:?}", basis.names());

    let aut = compute_aut(&f2);
    let found = search_line_bundle_basis(&f2, &aut, 2).ok_or("no basis")?;
    println!("search on F2 (bound 2): {:?}", found.names());
    println!(
        "fibre and section of F2 are rays {:?}",
        hirzebruch_labels(&f2)
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
