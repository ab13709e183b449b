//! Matrix-representation files.
//!
//! ```text
//! p e N t
//! a b c d        # one line per generator g_1, ..., g_t
//! c -1 0 0 1     # optional: image of c, must be diag(-1, 1)
//! ```
//!
//! Entries use the element format of [`crate::padic`] without internal
//! spaces; a `prec=k` token applies to the entry before it.

use std::fmt;

use super::{Mat2, MatrixRep2};
use crate::{Elem, Error, Result, RingParams};

#[derive(Clone, Debug, PartialEq)]
pub struct MatrixRepFile {
    pub params: RingParams,
    pub rep: MatrixRep2<Elem>,
}

fn entries(params: RingParams, line: &str, n: usize) -> Result<Vec<Elem>> {
    let mut groups: Vec<String> = Vec::new();
    for tok in line.split_whitespace() {
        match (tok.starts_with("prec="), groups.last_mut()) {
            (true, Some(g)) => {
                g.push(' ');
                g.push_str(tok);
            }
            (true, None) => return Err(Error::parse(n, "precision without an entry")),
            (false, _) => groups.push(tok.to_string()),
        }
    }
    if groups.len() != 4 {
        return Err(Error::parse(n, format!("expected 4 entries, found {}", groups.len())));
    }
    groups
        .iter()
        .map(|g| {
            Elem::parse(params, g).map_err(|e| match e {
                Error::Parse { msg, .. } => Error::parse(n, msg),
                other => other,
            })
        })
        .collect()
}

impl MatrixRepFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(n, l)| (n + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hn, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
        let h: Vec<u64> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::parse(hn, format!("bad header field `{t}`"))))
            .collect::<Result<_>>()?;
        let [p, e, prec, t] = h[..] else {
            return Err(Error::parse(hn, "header must be `p e N t`"));
        };
        let params = RingParams::new(p, e as u32, prec as u32).map_err(|e| Error::parse(hn, e.to_string()))?;
        let mut gens = Vec::new();
        let mut conj = None;
        for (n, line) in lines {
            if let Some(rest) = line.strip_prefix("c ") {
                if conj.is_some() {
                    return Err(Error::parse(n, "duplicate image of c"));
                }
                let [a, b, c, d]: [Elem; 4] = entries(params, rest, n)?.try_into().expect("4 entries");
                conj = Some(Mat2::new(a, b, c, d));
            } else {
                let [a, b, c, d]: [Elem; 4] = entries(params, line, n)?.try_into().expect("4 entries");
                gens.push(Mat2::new(a, b, c, d));
            }
        }
        if gens.len() as u64 != t {
            return Err(Error::parse(hn, format!("header declares {t} generators, found {}", gens.len())));
        }
        let one = Elem::one(params);
        let rep = match conj {
            Some(c) => MatrixRep2::with_conjugation(&one, gens, c)?,
            None => MatrixRep2::new(&one, gens)?,
        };
        Ok(MatrixRepFile { params, rep })
    }
}

impl fmt::Display for MatrixRepFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.params;
        writeln!(f, "{} {} {} {}", r.p(), r.e(), r.prec(), self.rep.generators())?;
        for i in 0..self.rep.generators() {
            let g = self.rep.generator(i);
            writeln!(f, "{} {} {} {}", g.a, g.b, g.c, g.d)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "3 1 8 2\n1 1 3 1\n2 0 1 1 prec=4\n";
        let f = MatrixRepFile::parse(text).unwrap();
        assert_eq!(f.to_string(), text);
        assert_eq!(f.rep.generator(1).d.prec(), 4);
    }

    #[test]
    fn conjugation_line_and_errors() {
        assert!(MatrixRepFile::parse("3 1 8 1\n1 1 3 1\nc -1 0 0 1\n").is_ok());
        assert_eq!(
            MatrixRepFile::parse("3 1 8 1\n1 1 3 1\nc 1 0 0 -1\n").unwrap_err(),
            Error::BadConjugationImage
        );
        assert_eq!(
            MatrixRepFile::parse("3 1 8 1\n3 0 0 1\n").unwrap_err(),
            Error::NotInvertible(0)
        );
        assert!(matches!(
            MatrixRepFile::parse("3 1 8 1\n1 1 3\n").unwrap_err(),
            Error::Parse { line: 2, .. }
        ));
        assert!(MatrixRepFile::parse("3 1 8 2\n1 1 3 1\n").is_err());
    }
}
