// Building fans, reading off self-intersections, blowing up and down.

use toric_surface_lab::{fans_isomorphic, CompleteFan2D};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p2 = CompleteFan2D::new(&[(1, 0), (0, 1), (-1, -1)])?;
    println!("P2: {p2}  a = {:?}", p2.self_intersections().values());

    let f2 = CompleteFan2D::hirzebruch(2);
    println!("F2: {f2}  a = {:?}", f2.self_intersections().values());

    // blowing up the cone <(1,0),(0,1)> of P2 gives F1
    let f1 = p2.blow_up(&[0])?;
    println!("Bl P2: {f1}  a = {:?}", f1.self_intersections().values());
    assert_eq!(f1.self_intersections().sum(), 12 - 3 * f1.len() as i64);

    let back = f1.blow_down(&[f1.index_of_pair((1, 1)).expect("new ray")])?;
    assert_eq!(back, p2);

    let hexagon = CompleteFan2D::hexagon();
    let once = hexagon.blow_down(&[1, 3, 5])?;
    println!("dP6 with three rays contracted: {once}");
    let m = fans_isomorphic(&once, &p2).ok_or("expected P2")?;
    println!("isomorphic to P2 via {m}");

    println!("JSON: {}", serde_json::to_string(&f2)?);
    assert!(CompleteFan2D::new(&[(1, 0), (1, 2), (-1, -1)]).is_err());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
