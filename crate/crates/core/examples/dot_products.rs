//! Dot-product sets, the ν histogram and the two lower bounds on |Π(E,F)|.

use ffdot::harness::sweep::draw;
use ffdot::harness::FamilySpec;
use ffdot::products::{bounds, dot_product_set, extract_e0, nu_histogram};
use ffdot::spectral::line_table;
use ffdot::PointSet;

fn show(name: &str, e: &PointSet, f: &PointSet) -> ffdot::Result<()> {
    let pi = dot_product_set(e, f)?;
    let nu = nu_histogram(e, f)?;
    let b = bounds(e, f)?;
    println!("{name}: |E|={} |F|={} |Π|={}", e.len(), f.len(), pi.len());
    println!("  ν = {:?}, Σν² = {}", nu.counts, nu.second_moment);
    println!(
        "  Cauchy-Schwarz bound {} = {:.3}",
        b.cs_bound,
        b.cs_bound.to_f64()
    );
    if b.valid_fourier {
        println!(
            "  Fourier bound {:.3} (energy {:.3e})",
            b.fourier_bound, b.energy
        );
    } else {
        println!("  Fourier bound not applicable: 0 ∈ E");
    }
    Ok(())
}

fn main() -> ffdot::Result<()> {
    let s1 = PointSet::sphere(3, 2, 1)?;
    show("S_1 x S_1 in F_3^2", &s1, &s1)?;

    let (q, d) = (13, 3);
    let e = draw(&FamilySpec::sphere(3), q, d, 60, 1)?;
    let f = draw(&FamilySpec::named("full-space"), q, d, 200, 2)?;
    show("sample of S_3 x random, F_13^3", &e, &f)?;

    let dense = draw(&FamilySpec::named("punctured"), q, d, 400, 3)?;
    let e0 = extract_e0(&dense)?;
    println!(
        "E0: {} of {} points kept, one per line (max per line {})",
        e0.len(),
        dense.len(),
        line_table(&e0).max_count()
    );
    show("E0 x random", &e0, &f)?;
    Ok(())
}
