//! Module files.
//!
//! ```text
//! vars free_rank [p e N]
//! m path         # one torsion piece per line
//! ```
//!
//! `vars` is 1 or 2. Each piece line gives a multiplicity and the path of a
//! series file (relative to the module file) holding the generator `g_i`.
//! The optional ring parameters are only needed when there is no torsion.

use std::path::{Path, PathBuf};

use super::ModulePresentation;
use crate::series::SeriesFile;
use crate::{BiSeries, Error, Result, RingParams, Series};

#[derive(Clone, Debug, PartialEq)]
pub enum ModuleFile {
    Uni(ModulePresentation<Series>),
    Bi(ModulePresentation<BiSeries>),
}

fn num<T: std::str::FromStr>(tok: &str, what: &str, line: usize) -> Result<T> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("bad {what} `{tok}`")))
}

impl ModuleFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::parse(&text, |rel| {
            let full: PathBuf = base.join(rel);
            std::fs::read_to_string(&full).map_err(|e| Error::Io(format!("{}: {e}", full.display())))
        })
    }

    /// Parses module text, reading series files through `read`.
    pub fn parse(text: &str, read: impl Fn(&str) -> Result<String>) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(n, l)| (n + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hn, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        if toks.len() != 2 && toks.len() != 5 {
            return Err(Error::parse(hn, "header must be `vars free_rank [p e N]`"));
        }
        let vars: u32 = num(toks[0], "variable count", hn)?;
        if vars != 1 && vars != 2 {
            return Err(Error::parse(hn, format!("vars must be 1 or 2, found {vars}")));
        }
        let free_rank: usize = num(toks[1], "free rank", hn)?;
        let mut params = match toks.len() {
            5 => Some(
                RingParams::new(
                    num(toks[2], "prime", hn)?,
                    num(toks[3], "ramification index", hn)?,
                    num(toks[4], "precision", hn)?,
                )
                .map_err(|e| Error::parse(hn, e.to_string()))?,
            ),
            _ => None,
        };
        let mut pieces = Vec::new();
        for (n, line) in lines {
            let (m, rel) = line
                .split_once(char::is_whitespace)
                .ok_or_else(|| Error::parse(n, "expected `m path`"))?;
            let m: u32 = num(m, "multiplicity", n)?;
            let series = SeriesFile::parse(&read(rel.trim())?).map_err(|e| match e {
                Error::Parse { line, msg } => Error::parse(n, format!("{}:{line}: {msg}", rel.trim())),
                other => other,
            })?;
            match params {
                None => params = Some(series.params()),
                Some(p) if p != series.params() => return Err(Error::MismatchedParams),
                Some(_) => {}
            }
            pieces.push((series, m, n));
        }
        let params = params.ok_or_else(|| {
            Error::parse(hn, "module without torsion needs ring parameters in the header")
        })?;
        let wrong = |n| Error::parse(n, format!("expected a series in {vars} variable(s)"));
        if vars == 1 {
            let torsion = pieces
                .into_iter()
                .map(|(s, m, n)| s.into_uni().map(|g| (g, m)).map_err(|_| wrong(n)))
                .collect::<Result<_>>()?;
            Ok(ModuleFile::Uni(ModulePresentation::<Series>::new(params, free_rank, torsion)?))
        } else {
            let torsion = pieces
                .into_iter()
                .map(|(s, m, n)| s.into_bi().map(|g| (g, m)).map_err(|_| wrong(n)))
                .collect::<Result<_>>()?;
            Ok(ModuleFile::Bi(ModulePresentation::<BiSeries>::new(params, free_rank, torsion)?))
        }
    }
}
