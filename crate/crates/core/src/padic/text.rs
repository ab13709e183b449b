//! Textual element format.
//!
//! ```text
//! element  := value [ws "prec=" uint]
//! value    := [prefix "*"] body
//! prefix   := ("p" | "pi") "^" int
//! body     := "(" sum ")" | sum
//! sum      := ["-"] term (("+" | "-") term)*
//! term     := int ["*" pipow] | pipow
//! pipow    := "pi" ["^" uint]
//! ```
//!
//! Whitespace inside `value` is ignored. The canonical form written by
//! `Display` is the decimal residue in `[0, p^prec)` when `e = 1`, and the
//! pi-adic digit sum `d0+d1*pi+d2*pi^2+...` (zero digits omitted) when
//! `e > 1`; ` prec=k` is appended only when `k < N`.

use std::fmt;

use super::{Elem, KElem, RingParams};
use crate::{Error, Result};

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_compact())?;
        if self.prec() < self.params().prec() {
            write!(f, " prec={}", self.prec())?;
        }
        Ok(())
    }
}

impl Elem {
    /// The value part of the canonical form (no precision attribute).
    pub fn to_compact(&self) -> String {
        let params = self.params();
        if params.e() == 1 {
            return self.pi_coefficients()[0].to_string();
        }
        let terms: Vec<String> = self
            .digits()
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != 0)
            .map(|(j, &d)| match j {
                0 => d.to_string(),
                1 => format!("{d}*pi"),
                _ => format!("{d}*pi^{j}"),
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }

    /// Parses an element; see the module docs for the grammar.
    pub fn parse(params: RingParams, s: &str) -> Result<Self> {
        let x = KElem::parse(params, s)?;
        x.to_integral()
            .map_err(|_| Error::parse(0, format!("`{s}` is not integral")))
    }
}

impl fmt::Display for KElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Ok(x) = self.to_integral() {
            return write!(f, "{x}");
        }
        let params = self.params();
        let base = if params.e() == 1 { "p" } else { "pi" };
        write!(f, "{base}^{}*({})", self.shift(), self.body().to_compact())?;
        if self.body().prec() < params.prec() {
            write!(f, " prec={}", self.abs_prec())?;
        }
        Ok(())
    }
}

impl KElem {
    pub fn parse(params: RingParams, s: &str) -> Result<Self> {
        let mut value = String::new();
        let mut prec: Option<i64> = None;
        for tok in s.split_whitespace() {
            if let Some(rest) = tok.strip_prefix("prec=") {
                let k: i64 = rest
                    .parse()
                    .map_err(|_| Error::parse(0, format!("bad precision `{tok}`")))?;
                prec = Some(k);
            } else if prec.is_some() {
                return Err(Error::parse(0, format!("trailing text after precision in `{s}`")));
            } else {
                value.push_str(tok);
            }
        }
        if value.is_empty() {
            return Err(Error::parse(0, "empty element"));
        }
        let mut parser = Parser {
            params,
            bytes: value.as_bytes(),
            pos: 0,
        };
        let x = parser.value()?;
        if parser.pos != parser.bytes.len() {
            return Err(Error::parse(0, format!("unexpected text in `{value}`")));
        }
        Ok(match prec {
            None => x,
            Some(k) => {
                let body_prec = (k - x.shift()).clamp(0, params.prec() as i64) as u32;
                KElem::new(x.shift(), x.body().with_prec(body_prec))
            }
        })
    }
}

struct Parser<'a> {
    params: RingParams,
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn err(&self, msg: &str) -> Error {
        let text = String::from_utf8_lossy(self.bytes);
        Error::parse(0, format!("{msg} at offset {} in `{text}`", self.pos))
    }

    fn starts_with(&self, s: &str) -> bool {
        self.bytes[self.pos..].starts_with(s.as_bytes())
    }

    fn int(&mut self) -> Result<i128> {
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.err("expected integer"))
    }

    fn value(&mut self) -> Result<KElem> {
        // prefix: p^a* or pi^a*
        let save = self.pos;
        let prefix = if self.starts_with("pi^") {
            self.pos += 3;
            Some(1i64)
        } else if self.starts_with("p^") {
            self.pos += 2;
            Some(self.params.e() as i64)
        } else {
            None
        };
        if let Some(unit) = prefix {
            let a = self.int()?;
            if self.eat(b'*') {
                let body = self.body()?;
                return Ok(KElem::new(a as i64 * unit, body));
            }
            // a bare power like `pi^3` is a sum, not a prefix
            self.pos = save;
        }
        let body = self.body()?;
        Ok(KElem::from_elem(body))
    }

    fn body(&mut self) -> Result<Elem> {
        if self.eat(b'(') {
            let s = self.sum()?;
            self.expect(b')')?;
            Ok(s)
        } else {
            self.sum()
        }
    }

    fn sum(&mut self) -> Result<Elem> {
        let mut neg = self.eat(b'-');
        let mut acc = Elem::zero(self.params);
        loop {
            let t = self.term()?;
            acc = if neg { &acc - &t } else { &acc + &t };
            if self.eat(b'+') {
                neg = false;
            } else if self.eat(b'-') {
                neg = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Elem> {
        if self.starts_with("pi") {
            return self.pipow();
        }
        let n = self.int()?;
        let c = Elem::from_i128(self.params, n);
        if self.eat(b'*') {
            let pw = self.pipow()?;
            Ok(&c * &pw)
        } else {
            Ok(c)
        }
    }

    fn pipow(&mut self) -> Result<Elem> {
        if !self.starts_with("pi") {
            return Err(self.err("expected `pi`"));
        }
        self.pos += 2;
        let k = if self.eat(b'^') {
            let k = self.int()?;
            u32::try_from(k).map_err(|_| self.err("negative power of pi inside a sum"))?
        } else {
            1
        };
        Ok(Elem::one(self.params).mul_pi_pow(k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms() {
        let z = RingParams::new(3, 1, 4).unwrap();
        assert_eq!(Elem::from_int(z, -1).to_string(), "80");
        assert_eq!(Elem::from_int(z, 9).with_prec(3).to_string(), "9 prec=3");
        let r = RingParams::new(3, 2, 5).unwrap();
        let x = Elem::from_digits(r, &[2, 0, 1, 1], 5);
        assert_eq!(x.to_string(), "2+1*pi^2+1*pi^3");
        assert_eq!(Elem::zero(r).to_string(), "0");
    }

    #[test]
    fn parses_all_forms() {
        let r = RingParams::new(3, 2, 6).unwrap();
        let pi = Elem::uniformizer(r);
        assert_eq!(Elem::parse(r, "pi").unwrap(), pi);
        assert_eq!(Elem::parse(r, "3").unwrap(), &pi * &pi);
        assert_eq!(Elem::parse(r, "p^1*(1)").unwrap(), Elem::from_int(r, 3));
        assert_eq!(Elem::parse(r, "pi^3*(1 + pi)").unwrap(), pi.pow(3) + pi.pow(4));
        assert_eq!(Elem::parse(r, "-1").unwrap(), -Elem::one(r));
        assert_eq!(Elem::parse(r, "2*pi - 1").unwrap(), &(&pi + &pi) - &Elem::one(r));
        let x = Elem::parse(r, "5 prec=2").unwrap();
        assert_eq!(x.prec(), 2);
        assert!(Elem::parse(r, "pi^-1*(1)").is_err());
        assert!(Elem::parse(r, "foo").is_err());
        let k = KElem::parse(r, "p^-1*(2)").unwrap();
        assert_eq!(k.val_pi(), Some(-2));
    }

    #[test]
    fn display_then_parse_is_identity() {
        for (e, n) in [(1, 5), (2, 7), (3, 5)] {
            let r = RingParams::new(5, e, n).unwrap();
            for seed in 0..40u64 {
                let digits: Vec<u64> = (0..n as u64).map(|j| (seed * 7 + j * 3 + j * j) % 5).collect();
                let x = Elem::from_digits(r, &digits, (seed % n as u64) as u32 + 1);
                let s = x.to_string();
                let y = Elem::parse(r, &s).unwrap();
                assert!(x.same_repr(&y), "{s}");
                assert_eq!(y.to_string(), s);
            }
        }
    }
}
