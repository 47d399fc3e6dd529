//! Independent checks: Monte Carlo area, finite-difference velocity and a
//! brute-force core.

use alphasec::{alpha_core, bruteforce_core, fd_velocity, make_polygon, mc_area, velocity, OrientedLine, Point, Seed};

fn main() -> alphasec::Result<()> {
    let square = make_polygon(&[
        Point::new(0.0, 0.0),
        Point::new(1.0, 0.0),
        Point::new(1.0, 1.0),
        Point::new(0.0, 1.0),
    ])?;
    let line = OrientedLine::new(0.3, 0.4);
    let mc = mc_area(&square, &line, 1_000_000, Seed(42))?;
    println!(
        "area right: exact {:.6} monte carlo {:.6} +- {:.6}",
        square.area_right(&line),
        mc.estimate,
        mc.sigma
    );

    let v = velocity(&square, 0.2, 1.0)?;
    let fd = fd_velocity(&square, 0.2, 1.0, 1e-5)?;
    println!("velocity: analytic {:.9} finite difference {:.9}", v.v_l, fd);

    let a = alpha_core(&square, 0.3, 4096)?;
    let b = bruteforce_core(&square, 0.3, 20_000)?;
    println!(
        "core vertices: adaptive {} brute force {}",
        a.vertices().len(),
        b.vertices().len()
    );
    println!(
        "inradius: adaptive {:.6} brute force {:.6}",
        a.inradius_estimate, b.inradius_estimate
    );
    Ok(())
}
