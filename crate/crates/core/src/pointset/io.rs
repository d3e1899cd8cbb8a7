//! Text format:
//!
//! ```text
//! # ffdot pointset v1
//! q=5 d=2
//! 0,0
//! 1,1
//! ```
//!
//! One point per line, coordinates in `[0, q)`, no duplicates.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use super::PointSet;
use crate::error::{Error, Result};

pub const FILE_MAGIC: &str = "# ffdot pointset v1";

pub fn write_set_to<W: Write>(set: &PointSet, mut out: W) -> Result<()> {
    writeln!(out, "{FILE_MAGIC}")?;
    writeln!(out, "q={} d={}", set.q(), set.d())?;
    let coords = set.coords_flat();
    for row in coords.chunks_exact(set.d()) {
        let line: Vec<String> = row.iter().map(|c| c.to_string()).collect();
        writeln!(out, "{}", line.join(","))?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_set(set: &PointSet, path: impl AsRef<Path>) -> Result<()> {
    write_set_to(set, BufWriter::new(File::create(path)?))
}

pub fn read_set(path: impl AsRef<Path>) -> Result<PointSet> {
    let path = path.as_ref();
    read_set_from(BufReader::new(File::open(path)?), path)
}

/// `origin` is only used to label errors.
pub fn read_set_from<R: Read>(input: R, origin: &Path) -> Result<PointSet> {
    let fail = |line: usize, message: String| Error::Format {
        path: PathBuf::from(origin),
        line,
        message,
    };
    let mut lines = BufReader::new(input).lines().enumerate();

    let (_, magic) = lines.next().ok_or_else(|| fail(1, "empty file".into()))?;
    if magic?.trim_end() != FILE_MAGIC {
        return Err(fail(1, format!("expected `{FILE_MAGIC}`")));
    }
    let (_, header) = lines
        .next()
        .ok_or_else(|| fail(2, "missing `q=<int> d=<int>` header".into()))?;
    let (q, d) = parse_header(&header?).map_err(|m| fail(2, m))?;
    let n = super::ambient_size(q, d).map_err(|e| fail(2, e.to_string()))?;

    let mut seen = fixedbitset::FixedBitSet::with_capacity(n);
    for (idx, line) in lines {
        let line = line?;
        let lineno = idx + 1;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        let fields: Vec<&str> = text.split(',').collect();
        if fields.len() != d {
            return Err(fail(
                lineno,
                format!("expected {d} coordinates, found {}", fields.len()),
            ));
        }
        let mut rank = 0u64;
        for f in fields.iter().rev() {
            let c: i64 = f
                .trim()
                .parse()
                .map_err(|e| fail(lineno, format!("coordinate `{f}`: {e}")))?;
            if c < 0 || c >= q as i64 {
                return Err(fail(
                    lineno,
                    format!("coordinate {c} out of range for q={q}"),
                ));
            }
            rank = rank * q as u64 + c as u64;
        }
        if seen.put(rank as usize) {
            return Err(fail(lineno, format!("duplicate point `{text}`")));
        }
    }
    PointSet::from_ranks(q, d, seen.ones().map(|r| r as u64))
}

fn parse_header(line: &str) -> std::result::Result<(u32, usize), String> {
    let mut q = None;
    let mut d = None;
    for tok in line.split_whitespace() {
        match tok.split_once('=') {
            Some(("q", v)) => q = Some(v.parse::<u32>().map_err(|e| format!("q: {e}"))?),
            Some(("d", v)) => d = Some(v.parse::<usize>().map_err(|e| format!("d: {e}"))?),
            _ => return Err(format!("unexpected header token `{tok}`")),
        }
    }
    match (q, d) {
        (Some(q), Some(d)) => Ok((q, d)),
        _ => Err("header must give both q and d".into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<PointSet> {
        read_set_from(text.as_bytes(), Path::new("<test>"))
    }

    #[test]
    fn roundtrip_paraboloid() {
        let p = PointSet::paraboloid(3, 2).unwrap();
        let mut buf = Vec::new();
        write_set_to(&p, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "# ffdot pointset v1\nq=3 d=2\n0,0\n1,1\n2,1\n");
        assert_eq!(parse(&text).unwrap(), p);
    }

    #[test]
    fn rejects_bad_files() {
        assert!(parse("").is_err());
        assert!(parse("# something else\nq=3 d=2\n").is_err());
        assert!(parse("# ffdot pointset v1\nq=4 d=2\n0,0\n").is_err());
        assert!(parse("# ffdot pointset v1\nq=3\n").is_err());
        let err = parse("# ffdot pointset v1\nq=3 d=2\n3,1\n").unwrap_err();
        assert!(matches!(err, Error::Format { line: 3, .. }), "{err}");
        let err = parse("# ffdot pointset v1\nq=3 d=2\n1,1\n0,2\n1,1\n").unwrap_err();
        assert!(matches!(err, Error::Format { line: 5, .. }), "{err}");
        assert!(parse("# ffdot pointset v1\nq=3 d=2\n1,1,1\n").is_err());
        assert!(parse("# ffdot pointset v1\nq=3 d=2\n-1,1\n").is_err());
    }

    #[test]
    fn empty_set_and_blank_lines() {
        let e = parse("# ffdot pointset v1\nq=5 d=3\n\n").unwrap();
        assert!(e.is_empty());
        assert_eq!((e.q(), e.d()), (5, 3));
    }
}
