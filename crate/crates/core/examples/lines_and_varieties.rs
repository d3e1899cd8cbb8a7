//! Lines through the origin and how quadrics meet them.
//!
//! Spheres S_j with j ≠ 0 meet every line in at most two points, while the
//! paraboloid contains whole isotropic lines.

use ffdot::geometry::enumerate_lines;
use ffdot::spectral::line_table;
use ffdot::{PointSet, Variety, Vector};

fn main() -> ffdot::Result<()> {
    let (q, d) = (5, 3);
    let lines = enumerate_lines(q, d);
    println!("F_{q}^{d} has {} lines through the origin", lines.len());
    let first = &lines[1];
    let pts: Vec<String> = first.points().map(|p| p.to_string()).collect();
    println!("line {}: {}", first.rep(), pts.join(" "));

    for j in 1..q as i64 {
        let s = PointSet::sphere(q, d, j)?;
        println!(
            "S_{j}: {} points, max per line {}",
            s.len(),
            line_table(&s).max_count()
        );
    }

    let p = PointSet::paraboloid(q, d)?;
    let table = line_table(&p);
    println!("P: {} points, max per line {}", p.len(), table.max_count());
    let iso = Vector::new(q, vec![1, 2, 0])?;
    println!(
        "  line through {iso}: {} points",
        table.count(&iso.line_rep()?)
    );

    // A translate away from the conjugate paraboloid behaves like a sphere.
    let a = Vector::from_signed(q, &[0, 0, 1])?;
    let pbar = Variety::conjugate_paraboloid(q, d)?;
    let shifted = PointSet::from_variety(&Variety::paraboloid(q, d)?.translate(&a)?)?;
    println!(
        "P+{a} (a in P̄: {}): max per line {}",
        pbar.contains(&a)?,
        line_table(&shifted).max_count()
    );
    Ok(())
}
