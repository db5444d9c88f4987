//! The plain-text algebra and space formats.
//!
//! ```text
//! # ρ_s on three atoms
//! atoms: 3
//! contact:
//! 0 0
//! 1 1
//! 2 2
//! bounded: {0,1,2}
//! ```
//!
//! `#` starts a comment. Contact lines list the true atom pairs only, and
//! `bounded` defaults to every atom.

use std::collections::BTreeSet;
use std::fmt;

use contalg_core::bits::{fmt_set, full_mask};
use contalg_core::{BooleanAlgebra, ContactAlgebra, FiniteSpace, LocalContactAlgebra};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

/// Non-blank lines with comments removed, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_index(s: &str, line: usize, bound: usize, what: &str) -> Result<usize, ParseError> {
    let i: usize = match s.parse() {
        Ok(i) => i,
        Err(_) => return err(line, format!("expected an index, found `{s}`")),
    };
    if i >= bound {
        return err(line, format!("{what} index {i} out of range 0..{bound}"));
    }
    Ok(i)
}

/// `{0,2,5}` with optional spaces. Indices must be below `bound`.
pub fn parse_set(s: &str, line: usize, bound: usize, what: &str) -> Result<u64, ParseError> {
    let Some(inner) = s.trim().strip_prefix('{').and_then(|t| t.strip_suffix('}')) else {
        return err(line, format!("expected a set like {{0,1}}, found `{s}`"));
    };
    let mut set = 0;
    for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        set |= 1 << parse_index(part, line, bound, what)?;
    }
    Ok(set)
}

fn header<'a>(line: &'a str, key: &str) -> Option<&'a str> {
    line.strip_prefix(key)?.trim_start().strip_prefix(':').map(str::trim)
}

/// A parsed algebra file. Pairs are sorted and free of duplicates, so equal
/// structures have equal values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraFile {
    pub atoms: usize,
    pub pairs: Vec<(usize, usize)>,
    pub bounded: u64,
}

impl AlgebraFile {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = content_lines(text);
        let (atoms, first) = match lines.next() {
            Some((n, line)) => match header(line, "atoms") {
                Some(v) => (
                    v.parse::<usize>()
                        .or_else(|_| err(n, format!("expected an atom count, found `{v}`")))?,
                    n,
                ),
                None => return err(n, "expected `atoms: k` first"),
            },
            None => return err(1, "empty file"),
        };
        if atoms > 63 {
            return err(first, format!("{atoms} atoms is more than a bitmask holds"));
        }
        let mut pairs = BTreeSet::new();
        let mut bounded = None;
        let (mut seen_contact, mut in_contact) = (false, false);
        for (n, line) in lines {
            if let Some(rest) = header(line, "contact") {
                if seen_contact {
                    return err(n, "duplicate `contact:` section");
                }
                if !rest.is_empty() {
                    return err(n, "contact pairs go on the following lines");
                }
                (seen_contact, in_contact) = (true, true);
            } else if let Some(rest) = header(line, "bounded") {
                if bounded.is_some() {
                    return err(n, "duplicate `bounded:` line");
                }
                bounded = Some(parse_set(rest, n, atoms, "atom")?);
                in_contact = false;
            } else if in_contact {
                let fields: Vec<&str> = line.split_whitespace().collect();
                let [i, j] = fields[..] else {
                    return err(n, format!("expected a pair `i j`, found `{line}`"));
                };
                pairs.insert((
                    parse_index(i, n, atoms, "atom")?,
                    parse_index(j, n, atoms, "atom")?,
                ));
            } else {
                return err(n, format!("unexpected line `{line}`"));
            }
        }
        Ok(AlgebraFile {
            atoms,
            pairs: pairs.into_iter().collect(),
            bounded: bounded.unwrap_or(full_mask(atoms)),
        })
    }

    pub fn from_lca(l: &LocalContactAlgebra) -> Self {
        AlgebraFile {
            atoms: l.algebra().atom_count(),
            pairs: l.ca().pairs(),
            bounded: l.bounded_top(),
        }
    }

    /// Builds the structure, refusing algebras above `cap` atoms.
    pub fn build(&self, cap: usize, close: bool) -> contalg_core::Result<LocalContactAlgebra> {
        let b = BooleanAlgebra::with_cap(self.atoms, cap)?;
        let mut ca = ContactAlgebra::from_pairs(&b, &self.pairs)?;
        if close {
            ca = ca.reflexive_symmetric_closure();
        }
        LocalContactAlgebra::new(ca, self.bounded)
    }
}

impl fmt::Display for AlgebraFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "atoms: {}", self.atoms)?;
        writeln!(f, "contact:")?;
        for (i, j) in &self.pairs {
            writeln!(f, "{i} {j}")?;
        }
        if self.bounded != full_mask(self.atoms) {
            writeln!(f, "bounded: {}", fmt_set(self.bounded))?;
        }
        Ok(())
    }
}

/// A parsed space file: `points: n` then `open: {..}` lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceFile {
    pub points: usize,
    pub opens: Vec<u64>,
}

impl SpaceFile {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = content_lines(text);
        let (points, first) = match lines.next() {
            Some((n, line)) => match header(line, "points") {
                Some(v) => (
                    v.parse::<usize>()
                        .or_else(|_| err(n, format!("expected a point count, found `{v}`")))?,
                    n,
                ),
                None => return err(n, "expected `points: n` first"),
            },
            None => return err(1, "empty file"),
        };
        if points > FiniteSpace::MAX_POINTS {
            return err(first, format!("{points} points exceeds the cap of {}", FiniteSpace::MAX_POINTS));
        }
        let mut opens = Vec::new();
        for (n, line) in lines {
            match header(line, "open") {
                Some(rest) => opens.push(parse_set(rest, n, points, "point")?),
                None => return err(n, format!("expected `open: {{..}}`, found `{line}`")),
            }
        }
        Ok(SpaceFile { points, opens })
    }

    pub fn build(&self) -> contalg_core::Result<FiniteSpace> {
        FiniteSpace::new(self.points, &self.opens)
    }
}

/// `0,0,1`: the image of each point in turn.
pub fn parse_point_map(s: &str, points: usize) -> Result<Vec<usize>, ParseError> {
    let images: Vec<&str> = s.split(',').map(str::trim).filter(|p| !p.is_empty()).collect();
    if images.len() != points {
        return err(1, format!("map lists {} images for {points} points", images.len()));
    }
    images.iter().map(|p| parse_index(p, 1, points, "point")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_renders() {
        let text = "# path\natoms: 3\ncontact:\n1 0\n0 1\n0 1\n\nbounded: { 0, 1 }\n";
        let a = AlgebraFile::parse(text).unwrap();
        assert_eq!(a.pairs, vec![(0, 1), (1, 0)]);
        assert_eq!(a.bounded, 0b011);
        assert_eq!(a.to_string(), "atoms: 3\ncontact:\n0 1\n1 0\nbounded: {0,1}\n");
        assert_eq!(AlgebraFile::parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("", 1, "empty"),
            ("contact:\n", 1, "atoms"),
            ("atoms: 2\ncontact:\n0 2\n", 3, "out of range"),
            ("atoms: 2\n\ncontact:\n0\n", 4, "pair"),
            ("atoms: 2\n0 0\n", 2, "unexpected"),
            ("atoms: 2\nbounded: {0}\nbounded: {1}\n", 3, "duplicate"),
            ("atoms: 2\nbounded: 0,1\n", 2, "set"),
        ];
        for (text, line, fragment) in cases {
            let e = AlgebraFile::parse(text).unwrap_err();
            assert_eq!(e.line, line, "{text:?}");
            assert!(e.message.contains(fragment), "{text:?}: {}", e.message);
        }
    }

    #[test]
    fn spaces() {
        let s = SpaceFile::parse("points: 2\nopen: {1}\n").unwrap();
        let x = s.build().unwrap();
        assert_eq!(x.opens(), &[0, 0b10, 0b11]);
        assert!(SpaceFile::parse("points: 3\nopen: {0}\nopen: {1}\n").unwrap().build().is_err());
        assert_eq!(SpaceFile::parse("points: 2\nopen {0}\n").unwrap_err().line, 2);
        assert_eq!(SpaceFile::parse("points: 9\n").unwrap_err().line, 1);
    }

    #[test]
    fn point_maps() {
        assert_eq!(parse_point_map("0, 0,1", 3).unwrap(), vec![0, 0, 1]);
        assert!(parse_point_map("0,3,1", 3).is_err());
        assert!(parse_point_map("0,1", 3).is_err());
    }
}
