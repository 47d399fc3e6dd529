//! Outer billiard orbits around a disc, a square and the square's core.

use alphasec::{alpha_core, make_disc, make_polygon, outer_billiard_step, BilliardTable, Point};

fn main() -> alphasec::Result<()> {
    let disc = make_disc(Point::new(0.0, 0.0), 1.0)?;
    let table = BilliardTable::from_body(&disc);
    let mut x = Point::new(2.0, 0.0);
    print!("disc:");
    for _ in 0..4 {
        print!(" ({:.6}, {:.6})", x.x, x.y);
        x = outer_billiard_step(&table, x)?;
    }
    println!();

    let square = make_polygon(&[
        Point::new(0.0, 0.0),
        Point::new(1.0, 0.0),
        Point::new(1.0, 1.0),
        Point::new(0.0, 1.0),
    ])?;
    let table = BilliardTable::from_body(&square);
    let mut x = Point::new(2.3, 0.4);
    print!("square:");
    for _ in 0..6 {
        print!(" ({:.3}, {:.3})", x.x, x.y);
        x = outer_billiard_step(&table, x)?;
    }
    println!();

    // Around the alpha-core, the reflection of one chord end is the other.
    let core = alpha_core(&square, 0.125, 1024)?;
    let table = BilliardTable::from_core(&core)?;
    let b = Point::new(0.5, 0.0);
    let c = outer_billiard_step(&table, b)?;
    println!("core table: ({:.6}, {:.6}) -> ({:.6}, {:.6})", b.x, b.y, c.x, c.y);
    Ok(())
}
