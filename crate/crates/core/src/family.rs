//! Eigenform data: q-expansion records, slope and supersingularity checks,
//! and interpolation of Fourier coefficients across classical weights.
//!
//! q-expansion file:
//!
//! ```text
//! label N k p neben
//! n a_n            # one coefficient per line
//! ```
//!
//! Family manifest (`key value` lines, `#` comments):
//!
//! ```text
//! prime 3
//! ram 1            # optional, default 1
//! precision 8
//! k0 2
//! e0 3             # element syntax
//! radius-exp 2     # optional, default 1
//! slope 0          # optional, default 0; rational `a/b` allowed
//! weight 2 f2.txt  # one binding per sampled weight
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use crate::series::{newton_interpolate, power_bounded_check, Interpolant, PowerBound};
use crate::weight::{classical_points, slope_from_up_eigenvalue, Disk};
use crate::{Chart, Elem, Error, KElem, Rational, Result, RingParams, Series};

/// A normalized q-expansion `q + a_2 q^2 + ...` of level prime to `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QExpansion {
    pub label: String,
    pub level: u64,
    pub weight: i64,
    pub p: u64,
    /// Opaque Nebentypus tag.
    pub neben: String,
    pub coeffs: BTreeMap<u64, i64>,
}

impl QExpansion {
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(n, l)| (n + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hn, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        let [label, level, weight, p, neben] = toks[..] else {
            return Err(Error::parse(hn, "header must be `label N k p neben`"));
        };
        let num = |t: &str, what: &str, n: usize| -> Result<i64> {
            t.parse().map_err(|_| Error::parse(n, format!("bad {what} `{t}`")))
        };
        let level = num(level, "level", hn)?;
        let p = num(p, "prime", hn)?;
        let weight = num(weight, "weight", hn)?;
        if level < 1 || p < 2 {
            return Err(Error::parse(hn, "level and prime must be positive"));
        }
        if weight < 2 {
            return Err(Error::parse(hn, format!("weight {weight} is below 2")));
        }
        let mut coeffs = BTreeMap::new();
        for (n, line) in lines {
            let mut it = line.split_whitespace();
            let (Some(i), Some(a), None) = (it.next(), it.next(), it.next()) else {
                return Err(Error::parse(n, "expected `n a_n`"));
            };
            let i = num(i, "index", n)?;
            if i < 1 {
                return Err(Error::parse(n, "indices start at 1"));
            }
            if coeffs.insert(i as u64, num(a, "coefficient", n)?).is_some() {
                return Err(Error::parse(n, format!("duplicate coefficient a_{i}")));
            }
        }
        let f = QExpansion {
            label: label.to_string(),
            level: level as u64,
            weight,
            p: p as u64,
            neben: neben.to_string(),
            coeffs,
        };
        let a1 = f.a(1)?;
        if a1 != 1 {
            return Err(Error::NotNormalized(a1));
        }
        if num_integer::gcd(f.level, f.p) != 1 {
            return Err(Error::LevelNotCoprime {
                level: f.level,
                p: f.p,
            });
        }
        Ok(f)
    }

    pub fn a(&self, n: u64) -> Result<i64> {
        self.coeffs
            .get(&n)
            .copied()
            .ok_or(Error::MissingCoefficient(n))
    }
}

impl fmt::Display for QExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {} {} {}", self.label, self.level, self.weight, self.p, self.neben)?;
        for (n, a) in &self.coeffs {
            writeln!(f, "{n} {a}")?;
        }
        Ok(())
    }
}

/// Reads and validates a q-expansion file.
pub fn ingest_qexp(path: &Path) -> Result<QExpansion> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    QExpansion::parse(&text)
}

fn vp(mut n: i64, p: u64) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let mut v = 0;
    while n % p as i64 == 0 {
        n /= p as i64;
        v += 1;
    }
    Some(v)
}

/// `v(a_p) > 0`; `a_p = 0` counts as supersingular.
pub fn check_supersingular(f: &QExpansion, p: u64) -> Result<bool> {
    Ok(vp(f.a(p)?, p).is_none_or(|v| v > 0))
}

/// Slope `v(a_p)` of the form, with `a_p` read in `params`.
pub fn slope(f: &QExpansion, params: RingParams) -> Result<Rational> {
    slope_from_up_eigenvalue(&Elem::from_int(params, f.a(params.p())?))
}

/// Verdict of [`check_edixhoven_window`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowVerdict {
    pub holds: bool,
    /// Why the window fails, if it does.
    pub reason: Option<&'static str>,
}

/// `a_p = 0 mod p` and `2 <= k < p + 1`: the residual representation is then
/// irreducible on the decomposition group at `p`.
pub fn check_edixhoven_window(f: &QExpansion, p: u64) -> Result<WindowVerdict> {
    let ap = f.a(p)?;
    let reason = if !(2..p as i64 + 1).contains(&f.weight) {
        Some("weight outside window")
    } else if ap.rem_euclid(p as i64) != 0 {
        Some("ordinary residual")
    } else {
        None
    };
    Ok(WindowVerdict {
        holds: reason.is_none(),
        reason,
    })
}

/// q-expansions at classical weights of one disk.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilySamples {
    pub params: RingParams,
    pub chart: Chart,
    pub radius_exp: u32,
    pub slope: Rational,
    /// `(k, f_k)` in ascending `k`.
    pub samples: Vec<(i64, QExpansion)>,
}

impl FamilySamples {
    /// Validates that every weight is a classical point of the disk and that
    /// its coordinate lies strictly inside the unit disk.
    pub fn new(
        params: RingParams,
        chart: Chart,
        radius_exp: u32,
        slope: Rational,
        mut samples: Vec<(i64, QExpansion)>,
    ) -> Result<Self> {
        samples.sort_by_key(|(k, _)| *k);
        let max_k = samples.iter().map(|(k, _)| *k).max().unwrap_or(chart.center);
        let set = classical_points(params.p(), chart.center, radius_exp, slope, max_k.max(chart.center), Disk::Open);
        for (k, f) in &samples {
            if !set.as_ref().is_ok_and(|s| s.admits(*k)) {
                return Err(Error::InvalidParams(format!("weight {k} is not a classical point of the disk")));
            }
            if f.weight != *k {
                return Err(Error::InvalidParams(format!(
                    "record {} has weight {}, bound to {k}",
                    f.label, f.weight
                )));
            }
            if chart.coordinate(*k)?.val_pi() == Some(0) {
                return Err(Error::OutsideDomain);
            }
        }
        Ok(FamilySamples {
            params,
            chart,
            radius_exp,
            slope,
            samples,
        })
    }

    /// Reads a manifest; sample paths are relative to the manifest.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::parse(&text, |rel| ingest_qexp(&base.join(rel)))
    }

    pub fn parse(text: &str, read: impl Fn(&str) -> Result<QExpansion>) -> Result<Self> {
        let mut keys: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
        let mut bindings = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let n = n + 1;
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once(char::is_whitespace)
                .ok_or_else(|| Error::parse(n, format!("expected `key value`, found `{line}`")))?;
            let value = value.trim();
            match key {
                "weight" => {
                    let (k, rel) = value
                        .split_once(char::is_whitespace)
                        .ok_or_else(|| Error::parse(n, "expected `weight k path`"))?;
                    let k: i64 = k.parse().map_err(|_| Error::parse(n, format!("bad weight `{k}`")))?;
                    bindings.push((n, k, rel.trim()));
                }
                "prime" | "ram" | "precision" | "k0" | "e0" | "radius-exp" | "slope" => {
                    if keys.insert(key, (n, value)).is_some() {
                        return Err(Error::parse(n, format!("duplicate key `{key}`")));
                    }
                }
                other => return Err(Error::parse(n, format!("unknown key `{other}`"))),
            }
        }
        fn get<'a>(keys: &BTreeMap<&str, (usize, &'a str)>, key: &str) -> Result<(usize, &'a str)> {
            keys.get(key)
                .copied()
                .ok_or_else(|| Error::parse(0, format!("missing key `{key}`")))
        }
        fn int<T: std::str::FromStr>((n, v): (usize, &str), key: &str) -> Result<T> {
            v.parse().map_err(|_| Error::parse(n, format!("bad {key} `{v}`")))
        }
        let p: u64 = int(get(&keys, "prime")?, "prime")?;
        let e: u32 = keys.get("ram").map_or(Ok(1), |&kv| int(kv, "ramification index"))?;
        let prec: u32 = int(get(&keys, "precision")?, "precision")?;
        let params = RingParams::new(p, e, prec)?;
        let k0: i64 = int(get(&keys, "k0")?, "k0")?;
        let (en, e0) = get(&keys, "e0")?;
        let e0 = Elem::parse(params, e0).map_err(|err| Error::parse(en, err.to_string()))?;
        let radius_exp: u32 = keys.get("radius-exp").map_or(Ok(1), |&kv| int(kv, "radius exponent"))?;
        let slope = match keys.get("slope") {
            None => Rational::from_integer(0),
            Some(&(n, v)) => parse_rational(v).ok_or_else(|| Error::parse(n, format!("bad slope `{v}`")))?,
        };
        let samples = bindings
            .into_iter()
            .map(|(_, k, rel)| Ok((k, read(rel)?)))
            .collect::<Result<_>>()?;
        Self::new(params, Chart::new(k0, e0), radius_exp, slope, samples)
    }

    /// `(u_k, a_n(k))` for every sample.
    pub fn points(&self, n: u64) -> Result<Vec<(Elem, KElem)>> {
        self.samples
            .iter()
            .map(|(k, f)| Ok((self.chart.coordinate(*k)?, KElem::from_int(self.params, f.a(n)?))))
            .collect()
    }
}

/// Parses `a` or `a/b`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    match s.split_once('/') {
        None => s.trim().parse().ok().map(Rational::from_integer),
        Some((a, b)) => {
            let a: i64 = a.trim().parse().ok()?;
            let b: i64 = b.trim().parse().ok()?;
            (b != 0).then(|| Rational::new(a, b))
        }
    }
}

/// Interpolation of one Fourier coefficient across the family.
#[derive(Clone, Debug)]
pub struct FamilyInterpolation {
    pub interpolant: Interpolant,
    pub integrality: PowerBound,
    /// The interpolant in `O_K[[U]] / U^d`, when it is power-bounded.
    pub series: Option<Series>,
}

/// Newton interpolation of `k -> a_n(k)` in the coordinate `u_k`.
pub fn interpolate_family(samples: &FamilySamples, n: u64, trunc: usize) -> Result<FamilyInterpolation> {
    interpolate_values(&samples.points(n)?, &samples.chart, trunc)
}

/// As [`interpolate_family`] on explicit `(u_k, value)` pairs; values may be
/// non-integral.
pub fn interpolate_values(points: &[(Elem, KElem)], chart: &Chart, trunc: usize) -> Result<FamilyInterpolation> {
    if points.len() < 2 {
        return Err(Error::InvalidParams("need at least two sampled weights".into()));
    }
    let interpolant = newton_interpolate(points)?;
    let integrality = power_bounded_check(&interpolant.poly);
    let series = if integrality.bounded {
        Some(interpolant.poly.to_series(trunc)?.with_chart(chart.clone()))
    } else {
        None
    };
    Ok(FamilyInterpolation {
        interpolant,
        integrality,
        series,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const F140: &str = "140B 140 2 3 1\n1 1\n2 0\n3 3\n5 -1\n";

    #[test]
    fn ingest_and_checks() {
        let f = QExpansion::parse(F140).unwrap();
        assert_eq!(f.a(3).unwrap(), 3);
        assert_eq!(f.to_string(), F140);
        assert!(check_supersingular(&f, 3).unwrap());
        let r = RingParams::new(3, 1, 8).unwrap();
        assert_eq!(slope(&f, r).unwrap(), Rational::from_integer(1));
        assert_eq!(
            check_edixhoven_window(&f, 3).unwrap(),
            WindowVerdict { holds: true, reason: None }
        );
        assert_eq!(check_supersingular(&f, 7), Err(Error::MissingCoefficient(7)));
    }

    #[test]
    fn rejections() {
        assert_eq!(
            QExpansion::parse("x 140 2 3 1\n1 2\n"),
            Err(Error::NotNormalized(2))
        );
        assert_eq!(
            QExpansion::parse("x 9 2 3 1\n1 1\n"),
            Err(Error::LevelNotCoprime { level: 9, p: 3 })
        );
        assert!(matches!(QExpansion::parse("x 9 2\n1 1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(QExpansion::parse("x 7 2 3 1\n1 1\n1 1\n"), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn window_reasons() {
        let q = |k: i64, ap: i64| QExpansion::parse(&format!("f 7 {k} 3 1\n1 1\n3 {ap}\n")).unwrap();
        assert_eq!(check_edixhoven_window(&q(4, 3), 3).unwrap().reason, Some("weight outside window"));
        assert_eq!(check_edixhoven_window(&q(2, 1), 3).unwrap().reason, Some("ordinary residual"));
        assert!(!check_supersingular(&q(2, 1), 3).unwrap());
        assert!(check_supersingular(&q(2, 0), 3).unwrap());
    }

    fn family(values: &[(i64, i64)]) -> FamilySamples {
        let r = RingParams::new(3, 1, 8).unwrap();
        let samples = values
            .iter()
            .map(|&(k, a)| (k, QExpansion::parse(&format!("f 7 {k} 3 1\n1 1\n2 {a}\n")).unwrap()))
            .collect();
        FamilySamples::new(r, Chart::new(2, Elem::from_int(r, 3)), 2, Rational::from_integer(0), samples).unwrap()
    }

    #[test]
    fn constant_and_planted_families() {
        let r = RingParams::new(3, 1, 8).unwrap();
        let fam = family(&[(2, 5), (11, 5), (20, 5)]);
        let it = interpolate_family(&fam, 2, 8).unwrap();
        assert_eq!(it.series.unwrap(), Series::from_ints(r, &[5], 8));
        // A(U) = 1 - 2U + U^2 at u = 0, 3, 6, 9
        let planted = Series::from_ints(r, &[1, -2, 1], 8);
        let at = |k: i64| (1 - (k - 2) / 3).pow(2);
        let fam = family(&[(2, at(2)), (11, at(11)), (20, at(20)), (29, at(29))]);
        let it = interpolate_family(&fam, 2, 8).unwrap();
        assert!(it.integrality.bounded);
        assert_eq!(it.series.unwrap(), planted);
    }

    #[test]
    fn manifest_parsing() {
        let text = "prime 3\nprecision 8\nk0 2\ne0 3\nradius-exp 2\nweight 11 b\nweight 2 a\n";
        let read = |rel: &str| {
            let k = if rel == "a" { 2 } else { 11 };
            QExpansion::parse(&format!("f 7 {k} 3 1\n1 1\n2 4\n"))
        };
        let fam = FamilySamples::parse(text, read).unwrap();
        assert_eq!(fam.samples.iter().map(|s| s.0).collect::<Vec<_>>(), vec![2, 11]);
        assert!(FamilySamples::parse("prime 3\nprecision 8\nk0 2\ne0 3\nradius-exp 2\nweight 5 a\n", |_| {
            QExpansion::parse("f 7 5 3 1\n1 1\n")
        })
        .is_err());
        assert!(FamilySamples::parse("prime 3\nbogus 1\n", read).is_err());
    }
}
