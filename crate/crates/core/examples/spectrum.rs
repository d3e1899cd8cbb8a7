//! Fourier transform of an indicator, Plancherel and the Salem level.

use ffdot::harness::sweep::draw;
use ffdot::harness::FamilySpec;
use ffdot::spectral::{dft, plancherel_defect, salem_level};
use ffdot::PointSet;

fn main() -> ffdot::Result<()> {
    let (q, d) = (11, 2);
    let sets = [
        ("sphere S_1", PointSet::sphere(q, d, 1)?),
        ("paraboloid", PointSet::paraboloid(q, d)?),
        (
            "random 40",
            draw(&FamilySpec::named("uniform-random"), q, d, 40, 7)?,
        ),
        (
            "random 40 (other seed)",
            draw(&FamilySpec::named("uniform-random"), q, d, 40, 8)?,
        ),
    ];
    println!("{:<24} {:>5} {:>12} {:>8}", "set", "|E|", "defect", "salem");
    for (name, set) in &sets {
        let spec = dft(set);
        println!(
            "{name:<24} {:>5} {:>12.2e} {:>8.3}",
            set.len(),
            plancherel_defect(&spec, set.len()),
            salem_level(&spec, set.len())
        );
    }
    let spec = dft(&sets[0].1);
    println!("Ê(0) for S_1 = {:.5} = |S_1|/q^d", spec.values()[0].re);
    Ok(())
}
