//! Splitting a subset of the paraboloid and projecting the flat part.
//!
//! Points of P with x_d = 0 satisfy x·y = π(x)·π(y), so dropping the last
//! coordinate leaves the product set unchanged.

use ffdot::harness::sweep::draw;
use ffdot::harness::FamilySpec;
use ffdot::products::dot_product_set;
use ffdot::spectral::line_table;

fn main() -> ffdot::Result<()> {
    let d = 3;
    for q in [3, 5, 7, 11] {
        let e = draw(&FamilySpec::named("paraboloid"), q, d, q as usize * 3, 5)?;
        let f = draw(
            &FamilySpec::named("full-space"),
            q,
            d,
            q as usize * q as usize,
            6,
        )?;
        let (g, b) = e.paraboloid_split()?;
        let (lhs, rhs) = if b.is_empty() {
            (0, 0)
        } else {
            (
                dot_product_set(&b, &f)?.len(),
                dot_product_set(&b.project()?, &f.project()?)?.len(),
            )
        };
        println!(
            "q={q:>2}: |G|={:>3} (max per line {}), |B|={:>2}, |Π(B,F)|={lhs} |Π(πB,πF)|={rhs}",
            g.len(),
            line_table(&g).max_count(),
            b.len()
        );
    }
    Ok(())
}
