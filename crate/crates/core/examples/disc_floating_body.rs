//! The alpha-core of the unit disc is a concentric disc of radius cos t,
//! where the alpha-section cuts off a segment of half-angle t.

use std::f64::consts::PI;

use alphasec::{alpha_core, make_disc, Point};

fn main() -> alphasec::Result<()> {
    let disc = make_disc(Point::new(0.0, 0.0), 1.0)?;
    for t in [PI / 6.0, PI / 4.0, PI / 3.0, 0.45 * PI] {
        let alpha = (2.0 * t - (2.0 * t).sin()) / (2.0 * PI);
        let core = alpha_core(&disc, alpha, 1024)?;
        let r = core.vertices().iter().map(|p| p.norm()).fold(0.0, f64::max);
        println!("t={t:.4} alpha={alpha:.6} circumradius={r:.9} cos t={:.9}", t.cos());
    }
    Ok(())
}
