// Exact cohomology of line bundles: lattice points, Serre duality and
// Riemann-Roch.

use toric_surface_lab::{Cohomology, CompleteFan2D, Divisor};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p2 = Cohomology::new(&CompleteFan2D::projective_plane());
    for d in -4..=3 {
        println!(
            "P2: H*(O({d})) = {}",
            p2.line_bundle(&Divisor(vec![d, 0, 0]))
        );
    }

    let f2 = Cohomology::new(&CompleteFan2D::hirzebruch(2));
    for c in [
        vec![0, 0, 0, 0],
        vec![0, 1, 0, 0],
        vec![2, -1, 0, 0],
        vec![-3, 0, 0, 0],
        vec![0, -2, 0, 1],
    ] {
        let d = Divisor(c);
        let h = f2.line_bundle(&d);
        println!(
            "F2: H*(O({d})) = {h}, chi = {}",
            f2.model().line_bundle_class(&d).chi
        );
    }

    let o = Divisor(vec![0, 0, 0]);
    let o1 = Divisor(vec![1, 0, 0]);
    println!("Ext(O, O(1)) = {}", p2.ext(&o, &o1));
    println!("Ext(O(1), O) = {}", p2.ext(&o1, &o));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
