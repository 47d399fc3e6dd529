//! Critical values alpha_B, alpha_Z, alpha_K for a few bodies.

use alphasec::{critical_values, make_polygon, Point};

fn main() -> alphasec::Result<()> {
    let bodies = [
        (
            "triangle",
            vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.0, 1.0)],
        ),
        (
            "square",
            vec![
                Point::new(0.0, 0.0),
                Point::new(1.0, 0.0),
                Point::new(1.0, 1.0),
                Point::new(0.0, 1.0),
            ],
        ),
        (
            "kite",
            vec![
                Point::new(0.0, 0.0),
                Point::new(1.0, 0.0),
                Point::new(2.0, 2.0),
                Point::new(0.0, 1.0),
            ],
        ),
    ];
    for (name, pts) in bodies {
        let body = make_polygon(&pts)?;
        let cv = critical_values(&body, 1e-6)?;
        let t =
            cv.T.map(|p| format!("({:.6}, {:.6})", p.x, p.y))
                .unwrap_or_else(|| "-".into());
        println!(
            "{name:<9} alpha_B={:.6} alpha_Z={:.6} alpha_K={:.6} T={t}",
            cv.alpha_B, cv.alpha_Z, cv.alpha_K
        );
    }
    Ok(())
}
