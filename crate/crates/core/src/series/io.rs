//! Series file format.
//!
//! ```text
//! p e N dU [dS] k0 e0
//! i [j] <element>
//! ...
//! ```
//!
//! The header has six fields for a series in `U` and seven for a series in
//! `(U, S)`; `e0` is written in compact element form. Each following line is
//! one monomial `U^i` (or `U^i S^j`) with its coefficient in the element
//! format of [`crate::padic`]. Absent monomials are exact zeros. Blank lines
//! and lines starting with `#` are skipped when reading. Writing emits
//! monomials in increasing `(i, j)` order and omits exact zeros, so writing a
//! parsed canonical file reproduces it byte for byte.

use std::fmt;

use super::{BiSeries, Chart, Series};
use crate::{Elem, Error, Result, RingParams};

/// Contents of a series file.
#[derive(Clone, Debug, PartialEq)]
pub enum SeriesFile {
    Uni(Series),
    Bi(BiSeries),
}

fn is_exact_zero(c: &Elem) -> bool {
    c.is_zero() && c.prec() == c.params().prec()
}

fn write_header(
    f: &mut fmt::Formatter<'_>,
    params: RingParams,
    dims: &[usize],
    chart: &Chart,
) -> fmt::Result {
    write!(f, "{} {} {}", params.p(), params.e(), params.prec())?;
    for d in dims {
        write!(f, " {d}")?;
    }
    writeln!(f, " {} {}", chart.center, chart.scale.to_compact())
}

impl fmt::Display for SeriesFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesFile::Uni(s) => {
                write_header(f, s.params(), &[s.trunc()], s.chart())?;
                for (i, c) in s.coeffs().iter().enumerate() {
                    if !is_exact_zero(c) {
                        writeln!(f, "{i} {c}")?;
                    }
                }
            }
            SeriesFile::Bi(s) => {
                write_header(f, s.params(), &[s.trunc_u(), s.trunc_s()], s.chart())?;
                for i in 0..s.trunc_u() {
                    for j in 0..s.trunc_s() {
                        let c = s.coeff(i, j);
                        if !is_exact_zero(c) {
                            writeln!(f, "{i} {j} {c}")?;
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

fn field<T: std::str::FromStr>(tok: &str, what: &str, line: usize) -> Result<T> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("bad {what} `{tok}`")))
}

fn relabel(err: Error, line: usize) -> Error {
    match err {
        Error::Parse { msg, .. } => Error::Parse { line, msg },
        other => other,
    }
}

impl SeriesFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(n, l)| (n + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        let two_var = match toks.len() {
            6 => false,
            7 => true,
            n => {
                return Err(Error::parse(
                    hline,
                    format!("header needs 6 or 7 fields, found {n}"),
                ))
            }
        };
        let params = RingParams::new(
            field(toks[0], "prime", hline)?,
            field(toks[1], "ramification index", hline)?,
            field(toks[2], "precision", hline)?,
        )
        .map_err(|e| Error::parse(hline, e.to_string()))?;
        let du: usize = field(toks[3], "truncation", hline)?;
        let ds: usize = if two_var {
            field(toks[4], "truncation", hline)?
        } else {
            1
        };
        if du == 0 || ds == 0 {
            return Err(Error::parse(hline, "truncation orders must be >= 1"));
        }
        let rest = if two_var { &toks[5..] } else { &toks[4..] };
        let center: i64 = field(rest[0], "centre", hline)?;
        let scale = Elem::parse(params, rest[1]).map_err(|e| relabel(e, hline))?;
        let chart = Chart::new(center, scale);

        let mut grid: Vec<Vec<Option<Elem>>> = vec![vec![None; ds]; du];
        for (n, line) in lines {
            let mut parts = line.splitn(if two_var { 3 } else { 2 }, char::is_whitespace);
            let i: usize = field(parts.next().unwrap_or(""), "exponent", n)?;
            let j: usize = if two_var {
                field(parts.next().unwrap_or(""), "exponent", n)?
            } else {
                0
            };
            let elem_text = parts
                .next()
                .ok_or_else(|| Error::parse(n, "missing coefficient"))?;
            if i >= du || j >= ds {
                return Err(Error::parse(n, format!("monomial ({i}, {j}) beyond truncation")));
            }
            if grid[i][j].is_some() {
                return Err(Error::parse(n, format!("duplicate monomial ({i}, {j})")));
            }
            grid[i][j] = Some(Elem::parse(params, elem_text).map_err(|e| relabel(e, n))?);
        }
        let at = |i: usize, j: usize| grid[i][j].clone().unwrap_or_else(|| Elem::zero(params));
        if two_var {
            Ok(SeriesFile::Bi(
                BiSeries::from_fn(params, du, ds, at).with_chart(chart),
            ))
        } else {
            let coeffs = (0..du).map(|i| at(i, 0)).collect();
            Ok(SeriesFile::Uni(Series::new(params, coeffs)?.with_chart(chart)))
        }
    }

    pub fn params(&self) -> RingParams {
        match self {
            SeriesFile::Uni(s) => s.params(),
            SeriesFile::Bi(s) => s.params(),
        }
    }

    pub fn into_uni(self) -> Result<Series> {
        match self {
            SeriesFile::Uni(s) => Ok(s),
            SeriesFile::Bi(_) => Err(Error::parse(1, "expected a series in one variable")),
        }
    }

    pub fn into_bi(self) -> Result<BiSeries> {
        match self {
            SeriesFile::Bi(s) => Ok(s),
            SeriesFile::Uni(_) => Err(Error::parse(1, "expected a series in two variables")),
        }
    }
}

impl Series {
    /// The series in file format.
    pub fn to_file_string(&self) -> String {
        SeriesFile::Uni(self.clone()).to_string()
    }
}
