//! Core containment for a disc inside a triangle, and the threshold alpha1.

use alphasec::{core_containment, make_disc, make_polygon, solve_alpha1, Point};

fn main() -> alphasec::Result<()> {
    let s = 3f64.sqrt();
    let tri = make_polygon(&[Point::new(-s, -1.0), Point::new(s, -1.0), Point::new(0.0, 2.0)])?;
    let disc = make_disc(Point::new(0.0, 0.0), 1.0)?;
    let a1 = solve_alpha1();
    println!("alpha1 = {a1:.12}");
    for alpha in [0.05, 0.1, a1 - 0.01, a1 + 0.01, 0.3, 0.45] {
        let ok = core_containment(&disc, &tri, alpha, 2048)?;
        println!("alpha={alpha:.4} triangle core inside disc core: {ok}");
    }
    Ok(())
}
