//! Alpha-sections, their chords and the envelope velocity of the unit square.

use std::f64::consts::PI;

use alphasec::{alpha_section, make_polygon, section_chord, velocity, Point};

fn main() -> alphasec::Result<()> {
    let square = make_polygon(&[
        Point::new(0.0, 0.0),
        Point::new(1.0, 0.0),
        Point::new(1.0, 1.0),
        Point::new(0.0, 1.0),
    ])?;

    let line = alpha_section(&square, 0.25, 0.0)?;
    println!("alpha=0.25 theta=0: offset {:.9}", line.offset);

    // A corner cut: the midpoint moves with speed sqrt(alpha).
    let theta = 7.0 * PI / 4.0;
    let chord = section_chord(&square, 0.125, theta)?;
    let v = velocity(&square, 0.125, theta)?;
    println!(
        "alpha=0.125 theta=7pi/4: b=({:.6}, {:.6}) c=({:.6}, {:.6}) m=({:.6}, {:.6})",
        chord.b.x, chord.b.y, chord.c.x, chord.c.y, chord.m.x, chord.m.y
    );
    println!(
        "  velocity [{:.9}, {:.9}], sqrt(alpha) = {:.9}",
        v.v_l,
        v.v_r,
        0.125f64.sqrt()
    );

    // Through a vertex the velocity is an interval.
    let v = velocity(&square, 0.5, PI / 4.0)?;
    println!("alpha=0.5 theta=pi/4 (diagonal): velocity [{:.6}, {:.6}]", v.v_l, v.v_r);
    Ok(())
}
