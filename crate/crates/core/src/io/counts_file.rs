//! Text counts files.
//!
//! ```text
//! # comment
//! scheme: new
//! final: standard
//! layout: s1 s2 s3 s4 r1 r2 r3 r4
//! 10110000 398
//! ```
//!
//! `layout:` is required before the first row; `scheme:` and `final:` are
//! optional. A bitstring listed twice has its counts summed.

use std::fmt::Write as _;

use crate::bits::Bits;
use crate::counts::CountsTable;
use crate::error::{Error, Result};
use crate::layout::Scheme;
use crate::swap_test::SwapTestVariant;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountsFile {
    pub scheme: Option<Scheme>,
    pub final_variant: Option<SwapTestVariant>,
    pub counts: CountsTable,
}

pub fn parse_counts(text: &str) -> Result<CountsFile> {
    let mut scheme = None;
    let mut final_variant = None;
    let mut counts: Option<CountsTable> = None;
    for (idx, raw) in text.lines().enumerate() {
        let at = format!("line {}", idx + 1);
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some((key, value)) = line.split_once(':') {
            let value = value.trim();
            let header_err = |e: Error| Error::parse(at.as_str(), e.to_string());
            match key.trim() {
                "scheme" => scheme = Some(value.parse().map_err(header_err)?),
                "final" => final_variant = Some(value.parse().map_err(header_err)?),
                "layout" => {
                    if counts.is_some() {
                        return Err(Error::parse(at, "layout declared twice"));
                    }
                    let labels: Vec<String> = value.split_whitespace().map(String::from).collect();
                    if labels.is_empty() {
                        return Err(Error::parse(at, "empty layout"));
                    }
                    counts = Some(CountsTable::new(labels));
                }
                other => return Err(Error::parse(at, format!("unknown header {other:?}"))),
            }
            continue;
        }
        let table = counts
            .as_mut()
            .ok_or_else(|| Error::parse(at.as_str(), "counts row before the layout header"))?;
        let mut fields = line.split_whitespace();
        let (Some(bits), Some(count), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(Error::parse(at, "expected `<bitstring> <count>`"));
        };
        let bits: Bits = bits.parse().map_err(|e: Error| Error::parse(at.as_str(), e.to_string()))?;
        let count: u64 = count
            .parse()
            .map_err(|_| Error::parse(at.as_str(), format!("invalid count {count:?}")))?;
        table
            .add(bits, count)
            .map_err(|e| Error::parse(at.as_str(), e.to_string()))?;
    }
    let counts = counts.ok_or_else(|| Error::parse("header", "missing `layout:` line"))?;
    Ok(CountsFile {
        scheme,
        final_variant,
        counts,
    })
}

/// Writes the headers and one row per outcome in ascending bitstring order.
pub fn write_counts(file: &CountsFile) -> String {
    let mut out = String::new();
    if let Some(s) = file.scheme {
        writeln!(out, "scheme: {s}").unwrap();
    }
    if let Some(v) = file.final_variant {
        writeln!(out, "final: {v}").unwrap();
    }
    writeln!(out, "layout: {}", file.counts.labels().join(" ")).unwrap();
    for (bits, count) in file.counts.iter() {
        writeln!(out, "{bits} {count}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_headers_rows_and_comments() {
        let text = "# demo\nscheme: new\nlayout: s1 r1\n01 3 # inline\n\n01 4\n10 1\n";
        let f = parse_counts(text).unwrap();
        assert_eq!(f.scheme, Some(Scheme::New));
        assert_eq!(f.final_variant, None);
        assert_eq!(f.counts.get(&"01".parse().unwrap()), 7);
        assert_eq!(f.counts.total(), 8);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("01 3\n", "line 1"),
            ("layout: a b\n011 2\n", "line 2"),
            ("layout: a b\n01 x\n", "line 2"),
            ("layout: a b\n0z 1\n", "line 2"),
            ("layout: a b\n01\n", "line 2"),
            ("scheme: old\n", "line 1"),
            ("color: red\n", "line 1"),
            ("# nothing\n", "layout"),
        ];
        for (text, needle) in cases {
            let err = parse_counts(text).unwrap_err();
            assert!(err.to_string().contains(needle), "{text:?}: {err}");
        }
    }

    #[test]
    fn write_round_trip() {
        let text = "scheme: san\nfinal: destructive\nlayout: s1 s2 r1a1 r1b1\n1000 5\n0001 2\n";
        let f = parse_counts(text).unwrap();
        let written = write_counts(&f);
        assert!(written.starts_with("scheme: san\nfinal: destructive\nlayout: s1 s2 r1a1 r1b1\n0001 2\n"));
        assert_eq!(parse_counts(&written).unwrap(), f);
    }
}
