//! The CF digit file: UTF-8 text, one positive decimal integer per line,
//! `#` lines are comments, digit index is line order among the digits.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use num_bigint::BigUint;
use num_traits::Zero;

use super::CfDigits;
use crate::{Error, Result};

/// Streams digits from a reader, reporting the 1-based line of any bad entry.
pub struct DigitReader<R> {
    lines: std::io::Lines<R>,
    line: usize,
    comments: Vec<String>,
}

impl<R: BufRead> DigitReader<R> {
    pub fn new(reader: R) -> Self {
        DigitReader {
            lines: reader.lines(),
            line: 0,
            comments: Vec::new(),
        }
    }

    /// Comment lines seen so far, without the leading `#`.
    pub fn comments(&self) -> &[String] {
        &self.comments
    }

    /// Line number of the most recently read line.
    pub fn line(&self) -> usize {
        self.line
    }
}

impl DigitReader<BufReader<File>> {
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        Ok(Self::new(BufReader::new(File::open(path)?)))
    }
}

impl<R: BufRead> Iterator for DigitReader<R> {
    type Item = Result<BigUint>;

    fn next(&mut self) -> Option<Result<BigUint>> {
        loop {
            let text = match self.lines.next()? {
                Ok(t) => t,
                Err(e) => return Some(Err(e.into())),
            };
            self.line += 1;
            let trimmed = text.trim();
            if let Some(comment) = trimmed.strip_prefix('#') {
                self.comments.push(comment.trim().to_string());
                continue;
            }
            if trimmed.is_empty() {
                continue;
            }
            let line = self.line;
            return Some(match crate::decimal::parse(trimmed) {
                Ok(d) if d.is_zero() => Err(Error::input(Some(line), "partial quotient 0 is not allowed")),
                Ok(d) => Ok(d),
                Err(msg) => Err(Error::input(Some(line), msg)),
            });
        }
    }
}

/// Reads a whole digit file, returning its comment lines and digits.
pub fn read_digit_file(path: impl AsRef<Path>) -> Result<(Vec<String>, CfDigits)> {
    let mut reader = DigitReader::open(path)?;
    let digits = reader.by_ref().collect::<Result<Vec<_>>>()?;
    Ok((reader.comments, CfDigits(digits)))
}

pub fn write_digit_file(path: impl AsRef<Path>, header: &[String], digits: &[BigUint]) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    for line in header {
        writeln!(out, "# {line}")?;
    }
    for d in digits {
        writeln!(out, "{d}")?;
    }
    out.flush()?;
    Ok(())
}
