//! Text exchange format: a `size n` line followed by `cover i j` lines
//! (0-based, `i` covered by `j`). Blank lines and `#` comments are ignored.

use super::Lattice;
use crate::error::{Error, Result};

impl Lattice {
    pub fn to_exchange(&self) -> String {
        let mut out = format!("size {}\n", self.size());
        for (a, b) in self.cover_pairs() {
            out.push_str(&format!("cover {a} {b}\n"));
        }
        out
    }

    pub fn parse_exchange(text: &str) -> Result<Lattice> {
        let mut size: Option<(usize, usize)> = None;
        let mut covers = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line_no = k + 1;
            let err = |msg: String| Error::Parse { line: line_no, msg };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let num = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| err(format!("expected a non-negative integer, got {s:?}")))
            };
            match toks.as_slice() {
                ["size", n] => {
                    if size.is_some() {
                        return Err(err("duplicate size line".into()));
                    }
                    let n = num(n)?;
                    if n == 0 {
                        return Err(err("size must be positive".into()));
                    }
                    size = Some((n, line_no));
                }
                ["cover", a, b] => {
                    let Some((n, _)) = size else {
                        return Err(err("cover before size".into()));
                    };
                    let (a, b) = (num(a)?, num(b)?);
                    if a >= n || b >= n {
                        return Err(err(format!("node out of range 0..{n}")));
                    }
                    covers.push((a, b));
                }
                _ => return Err(err(format!("unrecognized line {line:?}"))),
            }
        }
        let (n, line) = size.ok_or(Error::Parse {
            line: 0,
            msg: "missing size line".into(),
        })?;
        Lattice::from_covers(n, &covers).map_err(|e| Error::Parse {
            line,
            msg: e.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_pentagon() {
        let n5 = Lattice::pentagon();
        let text = n5.to_exchange();
        assert!(text.starts_with("size 5\n"));
        let back = Lattice::parse_exchange(&text).unwrap();
        assert_eq!(back.cover_pairs(), n5.cover_pairs());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = Lattice::parse_exchange("size 3\ncover 0 1\ncover 0 7\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
        let e = Lattice::parse_exchange("# c\nbogus\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn transitive_edges_are_tolerated() {
        let l = Lattice::parse_exchange("size 3\ncover 0 1\ncover 1 2\ncover 0 2\n").unwrap();
        assert_eq!(l.cover_pairs(), vec![(0, 1), (1, 2)]);
    }
}
