//! Building, sampling and saving point sets.
//!
//! ```text
//! cargo run --example point_sets -- /tmp/sphere.txt
//! ```

use ffdot::pointset::{read_set, sample, write_set, write_set_to, Family, SampleSpec};
use ffdot::{PointSet, Variety};

fn main() -> ffdot::Result<()> {
    let s1 = PointSet::sphere(3, 2, 1)?;
    write_set_to(&s1, std::io::stdout().lock())?;

    // Any diagonal quadric: here x² + 2y² + z = 1 over F_7.
    let v = Variety::parse("1,2,0;0,0,1;-1", 7)?;
    let set = PointSet::from_variety(&v)?;
    println!(
        "{v}: {} points, origin inside: {}",
        set.len(),
        set.contains_origin()
    );

    let spec = SampleSpec {
        q: 7,
        d: 3,
        family: Family::Sphere { j: 2 },
        size: Some(12),
        seed: 42,
    };
    let sampled = sample(&spec)?;
    println!(
        "12 points of {} with seed 42: ranks {:?}",
        spec.family,
        sampled.ranks()
    );
    assert_eq!(sample(&spec)?, sampled);

    if let Some(path) = std::env::args().nth(1) {
        write_set(&sampled, &path)?;
        assert_eq!(read_set(&path)?, sampled);
        println!("wrote and re-read {path}");
    }
    Ok(())
}
