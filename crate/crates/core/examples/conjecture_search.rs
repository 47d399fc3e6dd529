//! Witness search: for nested bodies L inside K, each direction should have
//! a section of L that is disjoint from, or no larger than, that of K.

use alphasec::{conjecture_check, make_disc, make_polygon, Point, Witness};

fn main() -> alphasec::Result<()> {
    let s = 3f64.sqrt();
    let tri = make_polygon(&[Point::new(-s, -1.0), Point::new(s, -1.0), Point::new(0.0, 2.0)])?;
    let disc = make_disc(Point::new(0.0, 0.0), 1.0)?;
    for alpha in [0.05, 0.2, 0.4] {
        match conjecture_check(&disc, &tri, alpha, 512)? {
            Witness::Disjoint { theta } => println!("alpha={alpha}: disjoint at theta={:.6}", theta.radians()),
            Witness::Section { theta, beta } => {
                println!("alpha={alpha}: section at theta={:.6} beta={beta:.6}", theta.radians())
            }
            Witness::Violation { theta, min_beta } => {
                println!(
                    "alpha={alpha}: VIOLATION at theta={:.6} min beta={min_beta:.6}",
                    theta.radians()
                )
            }
        }
    }
    Ok(())
}
