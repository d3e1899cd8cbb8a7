use std::fs;

use ffdot::pointset::{read_set, write_set, FILE_MAGIC};
use ffdot::{Error, PointSet};
use tempfile::TempDir;

#[test]
fn roundtrip_through_disk() {
    let dir = TempDir::new().unwrap();
    for (q, d) in [(3, 1), (5, 2), (7, 3)] {
        let set = PointSet::paraboloid(q, d.max(2)).unwrap();
        let p = dir.path().join(format!("{q}-{d}.txt"));
        write_set(&set, &p).unwrap();
        assert_eq!(read_set(&p).unwrap(), set);
    }
    let empty = PointSet::empty(5, 2).unwrap();
    let p = dir.path().join("empty.txt");
    write_set(&empty, &p).unwrap();
    assert_eq!(read_set(&p).unwrap(), empty);
}

#[test]
fn malformed_files_are_rejected() {
    let dir = TempDir::new().unwrap();
    let cases = [
        "not a header\nq=3 d=2\n",
        &format!("{FILE_MAGIC}\nq=4 d=2\n0,0\n"),
        &format!("{FILE_MAGIC}\nq=3 d=2\n0,0,0\n"),
        &format!("{FILE_MAGIC}\nq=3 d=2\n0,3\n"),
        &format!("{FILE_MAGIC}\nq=3 d=2\n1,1\n1,1\n"),
        &format!("{FILE_MAGIC}\nq=3\n"),
    ];
    for (i, text) in cases.iter().enumerate() {
        let p = dir.path().join(format!("bad{i}.txt"));
        fs::write(&p, text).unwrap();
        assert!(read_set(&p).is_err(), "case {i} accepted: {text:?}");
    }
    assert!(matches!(
        read_set(dir.path().join("none.txt")),
        Err(Error::Io(_))
    ));
}

#[test]
fn blank_lines_are_ignored() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("s.txt");
    fs::write(&p, format!("{FILE_MAGIC}\nq=3 d=2\n\n1,0\n\n0,2\n")).unwrap();
    let set = read_set(&p).unwrap();
    assert_eq!(set.ranks(), &[1, 6]);
}
