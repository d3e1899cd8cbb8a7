//! Arithmetic in F_q and the additive character ψ(u) = exp(2πiu/q).
//!
//! ```text
//! cargo run --example field_characters -- 7
//! ```

use ffdot::Field;
use num_complex::Complex64;

fn main() -> ffdot::Result<()> {
    let q: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(7);
    let field = Field::new(q)?;
    let q = field.q();

    println!("F_{q}: inverses");
    for a in 1..q {
        print!("{a}^-1={} ", field.inv(a)?);
    }
    println!();

    // Σ_u ψ(u·m) is q for m = 0 and 0 otherwise.
    for m in 0..q {
        let s: Complex64 = (0..q)
            .map(|u| field.character(field.mul(u, m) as u64))
            .sum();
        println!("m={m}: Σ ψ(um) = {:.3}{:+.3}i", s.re, s.im);
    }

    match Field::new(9) {
        Ok(_) => println!("9 accepted?"),
        Err(e) => println!("F_9 refused: {e}"),
    }
    Ok(())
}
