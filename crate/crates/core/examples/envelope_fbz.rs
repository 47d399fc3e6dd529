//! Envelope sampling and the forwards/backwards/zero partition of a triangle.

use alphasec::{fbz_partition, make_polygon, sample_envelope, Label, Point};

fn main() -> alphasec::Result<()> {
    let tri = make_polygon(&[Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.0, 1.0)])?;
    for alpha in [0.2, 0.4, 0.45, 0.5] {
        let curve = sample_envelope(&tri, alpha, 512)?;
        let fbz = fbz_partition(&tri, alpha, 512)?;
        println!(
            "alpha={alpha:<5} samples={:<5} F={:.4} B={:.4} Z={:.4} cusps={}",
            curve.samples.len(),
            fbz.measure(Label::F),
            fbz.measure(Label::B),
            fbz.measure(Label::Z),
            fbz.cusps.len()
        );
    }
    let fbz = fbz_partition(&tri, 0.5, 1024)?;
    for iv in &fbz.intervals {
        println!("  [{:.6}, {:.6}] {}", iv.start, iv.end, iv.labels);
    }
    for c in &fbz.cusps {
        println!("  cusp ({:.6}, {:.6})", c.x, c.y);
    }
    Ok(())
}
