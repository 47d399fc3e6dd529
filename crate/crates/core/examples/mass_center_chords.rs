//! Chords through the mass center and the asymmetry quotient.

use alphasec::{asymmetry_quotient, chords_bisected_by, make_polygon, BisectedChords, Point};

fn main() -> alphasec::Result<()> {
    for c in [1.5, 1.75, 2.0] {
        let k = make_polygon(&[
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(c, c),
            Point::new(0.0, 1.0),
        ])?;
        let g = k.mass_center();
        println!(
            "c={c}: G=({:.6}, {:.6}) quotient={:.9}",
            g.x,
            g.y,
            asymmetry_quotient(&k)?
        );
        if let BisectedChords::Finite(chords) = chords_bisected_by(&k, g)? {
            for ch in chords {
                println!("  theta={:.6} alpha={:.9}", ch.theta.radians(), ch.alpha);
            }
        }
    }
    Ok(())
}
