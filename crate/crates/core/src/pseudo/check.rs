use std::collections::HashMap;
use std::fmt;

use super::{enumerate_words, Coeff, PseudoRep, Word};

/// The relations checked by [`check_wiles_relations`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `A(st) = A(s)A(t) + Xi(s, t)`.
    ProductA,
    /// `D(st) = D(s)D(t) + Xi(t, s)`.
    ProductD,
    /// `Xi(st, rg) = A(s)A(g)Xi(t, r) + A(g)D(t)Xi(s, r)
    ///             + A(s)D(r)Xi(t, g) + D(t)D(r)Xi(s, g)`.
    ProductXi,
    /// `A(1) = D(1) = 1`, `Xi(s, 1) = Xi(1, t) = 0`.
    Unit,
    /// `Xi(s, t)Xi(r, h) = Xi(s, h)Xi(r, t)`.
    Rank,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::ProductA => "A-product",
            Relation::ProductD => "D-product",
            Relation::ProductXi => "Xi-product",
            Relation::Unit => "unit",
            Relation::Rank => "rank-one",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub relation: Relation,
    pub witness: Vec<Word>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at (", self.relation)?;
        for (i, w) in self.witness.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str(")")
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WilesReport {
    /// Relation instances evaluated.
    pub checked: usize,
    /// Instances skipped because some value was undefined.
    pub skipped: usize,
    pub violations: Vec<Violation>,
}

impl WilesReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// The exhaustive sample of tuples over `t` generators whose total word
/// length is at most `max_len`.
#[derive(Clone, Debug)]
pub struct WordSample {
    words: Vec<Word>,
    index: HashMap<Word, u32>,
    /// `(s, t)` with `|s| + |t| <= max_len`, and the id of `st`.
    pairs: Vec<(u32, u32, u32)>,
    /// Pairs are grouped by `s`, and for fixed `s` the `t` run over a prefix
    /// of the (length-sorted) ids, so `(s, t)` sits at `pair_start[s] + t`.
    pair_start: Vec<u32>,
    /// `by_len[l]` is the id range of words of length `l`.
    by_len: Vec<std::ops::Range<u32>>,
    max_len: usize,
}

impl WordSample {
    pub fn exhaustive(generators: usize, max_len: usize) -> Self {
        let words = enumerate_words(generators, max_len);
        let index: HashMap<Word, u32> = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i as u32))
            .collect();
        let mut by_len = vec![0..0; max_len + 1];
        for (i, w) in words.iter().enumerate() {
            let r = &mut by_len[w.len()];
            if r.start == r.end {
                r.start = i as u32;
            }
            r.end = i as u32 + 1;
        }
        let mut pairs = Vec::new();
        let mut pair_start = Vec::with_capacity(words.len());
        for (i, s) in words.iter().enumerate() {
            pair_start.push(pairs.len() as u32);
            for range in &by_len[..=max_len - s.len()] {
                for j in range.clone() {
                    let st = index[&s.mul(&words[j as usize])];
                    pairs.push((i as u32, j, st));
                }
            }
        }
        WordSample {
            words,
            index,
            pairs,
            pair_start,
            by_len,
            max_len,
        }
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn pair_count(&self) -> usize {
        self.pairs.len()
    }

    fn pair_id(&self, s: u32, t: u32) -> usize {
        (self.pair_start[s as usize] + t) as usize
    }

    fn id(&self, w: &Word) -> u32 {
        self.index[w]
    }

    /// Number of words of length `<= l`; these are the ids `0..n`.
    fn prefix(&self, l: usize) -> u32 {
        self.by_len[..=l].iter().map(|r| r.end).max().unwrap_or(0)
    }
}

struct Tables<R> {
    a: Vec<Option<R>>,
    d: Vec<Option<R>>,
    xi: Vec<Option<R>>,
}

/// Checks the product, unit and rank-one relations on every tuple of the
/// sample. Violations are returned as data with their witness words.
pub fn check_wiles_relations<R: Coeff, P: PseudoRep<R>>(pi: &P, sample: &WordSample) -> WilesReport {
    let words = &sample.words;
    let tab = Tables {
        a: words.iter().map(|w| pi.a(w)).collect(),
        d: words.iter().map(|w| pi.d(w)).collect(),
        xi: sample
            .pairs
            .iter()
            .map(|&(s, t, _)| pi.xi(&words[s as usize], &words[t as usize]))
            .collect(),
    };
    let xi = |s: u32, t: u32| tab.xi[sample.pair_id(s, t)].as_ref();
    let mut report = WilesReport::default();
    let record = |report: &mut WilesReport, rel: Relation, ok: Option<bool>, ids: &[u32]| {
        match ok {
            None => report.skipped += 1,
            Some(ok) => {
                report.checked += 1;
                if !ok {
                    report.violations.push(Violation {
                        relation: rel,
                        witness: ids.iter().map(|&i| words[i as usize].clone()).collect(),
                    });
                }
            }
        }
    };

    let one = sample.id(&Word::empty());
    let unit_ok = (|| {
        let a = tab.a[one as usize].as_ref()?;
        let d = tab.d[one as usize].as_ref()?;
        Some(a.minus(&a.one_like()).is_zero_at_precision() && d.minus(&d.one_like()).is_zero_at_precision())
    })();
    record(&mut report, Relation::Unit, unit_ok, &[one]);
    for s in 0..words.len() as u32 {
        let ok = (|| Some(xi(s, one)?.is_zero_at_precision() && xi(one, s)?.is_zero_at_precision()))();
        record(&mut report, Relation::Unit, ok, &[s]);
    }

    for &(s, u, su) in &sample.pairs {
        let (s_, u_, su_) = (s as usize, u as usize, su as usize);
        let ok = (|| {
            let lhs = tab.a[su_].as_ref()?;
            let rhs = tab.a[s_].as_ref()?.times(tab.a[u_].as_ref()?).plus(xi(s, u)?);
            Some(lhs.minus(&rhs).is_zero_at_precision())
        })();
        record(&mut report, Relation::ProductA, ok, &[s, u]);
        let ok = (|| {
            let lhs = tab.d[su_].as_ref()?;
            let rhs = tab.d[s_].as_ref()?.times(tab.d[u_].as_ref()?).plus(xi(u, s)?);
            Some(lhs.minus(&rhs).is_zero_at_precision())
        })();
        record(&mut report, Relation::ProductD, ok, &[s, u]);
    }

    // Xi(su, rg) = A(s)A(g)Xi(u,r) + A(g)D(u)Xi(s,r) + A(s)D(r)Xi(u,g) + D(u)D(r)Xi(s,g)
    //            = A(g) Z(r) + D(r) Z(g),   Z(w) = A(s)Xi(u,w) + D(u)Xi(s,w),
    // so Z is computed once per (s, u).
    let prod = |s: u32, u: u32| sample.pairs[sample.pair_id(s, u)].2;
    let n = sample.max_len;
    let len = |i: u32| words[i as usize].len();
    let mut z: Vec<Option<R>> = Vec::new();
    for s in 0..sample.prefix(n) {
        for u in 0..sample.prefix(n - len(s)) {
            let rest = n - len(s) - len(u);
            let su = prod(s, u);
            z.clear();
            z.extend((0..sample.prefix(rest)).map(|w| {
                let as_ = tab.a[s as usize].as_ref()?;
                let du = tab.d[u as usize].as_ref()?;
                Some(as_.times(xi(u, w)?).plus(&du.times(xi(s, w)?)))
            }));
            for r in 0..sample.prefix(rest) {
                for g in 0..sample.prefix(rest - len(r)) {
                    let ok = (|| {
                        let lhs = xi(su, prod(r, g))?;
                        let ag = tab.a[g as usize].as_ref()?;
                        let dr = tab.d[r as usize].as_ref()?;
                        let rhs = ag.times(z[r as usize].as_ref()?).plus(&dr.times(z[g as usize].as_ref()?));
                        Some(lhs.minus(&rhs).is_zero_at_precision())
                    })();
                    record(&mut report, Relation::ProductXi, ok, &[s, u, r, g]);
                    let ok = (|| {
                        let lhs = xi(s, u)?.times(xi(r, g)?);
                        let rhs = xi(s, g)?.times(xi(r, u)?);
                        Some(lhs.minus(&rhs).is_zero_at_precision())
                    })();
                    record(&mut report, Relation::Rank, ok, &[s, u, r, g]);
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pseudo::{pseudo_from_matrix, Mat2, MatrixRep2, PerturbedPseudoRep, TablePseudoRep};
    use crate::{Elem, RingParams};

    fn rep(r: RingParams) -> MatrixRep2<Elem> {
        let e = |n| Elem::from_int(r, n);
        MatrixRep2::new(
            &e(1),
            vec![
                Mat2::new(e(1), e(1), e(3), e(1)),
                Mat2::new(e(2), e(1), e(1), e(1)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn sample_sizes() {
        // words over 5 letters: 1, 5, 20, 80 by length
        let s = WordSample::exhaustive(2, 3);
        assert_eq!(s.words().len(), 106);
        // sum over |s| + |t| <= 3 of n_|s| n_|t|
        assert_eq!(s.pair_count(), 1 + 10 + (40 + 25) + (160 + 200));
    }

    #[test]
    fn matrix_pseudo_rep_is_clean() {
        let r = RingParams::new(3, 1, 8).unwrap();
        let pi = pseudo_from_matrix(rep(r));
        let report = check_wiles_relations(&pi, &WordSample::exhaustive(2, 4));
        assert!(report.is_clean(), "{:?}", report.violations.first());
        assert_eq!(report.skipped, 0);
        assert!(report.checked > 1000);
    }

    #[test]
    fn perturbation_is_detected() {
        let r = RingParams::new(3, 1, 8).unwrap();
        let pi = pseudo_from_matrix(rep(r));
        let at = (Word::gen(0), Word::gen(1));
        let bad = PerturbedPseudoRep::new(&pi, at.clone(), Elem::from_int(r, 9)).unwrap();
        let report = check_wiles_relations(&bad, &WordSample::exhaustive(2, 3));
        assert!(!report.is_clean());
        assert!(report.violations.contains(&Violation {
            relation: Relation::ProductA,
            witness: vec![at.0, at.1],
        }));
    }

    #[test]
    fn sign_character_table() {
        let r = RingParams::new(5, 1, 6).unwrap();
        let (one, c) = (Word::empty(), Word::conj());
        let mut pi = TablePseudoRep::<Elem>::default();
        pi.a.insert(one.clone(), Elem::one(r));
        pi.a.insert(c.clone(), Elem::from_int(r, -1));
        pi.d.insert(one.clone(), Elem::one(r));
        pi.d.insert(c.clone(), Elem::one(r));
        for s in [&one, &c] {
            for t in [&one, &c] {
                pi.xi.insert((s.clone(), t.clone()), Elem::zero(r));
            }
        }
        let report = check_wiles_relations(&pi, &WordSample::exhaustive(0, 5));
        assert!(report.is_clean());
        assert_eq!(report.skipped, 0);
    }

    #[test]
    fn undefined_values_are_skipped() {
        let pi = TablePseudoRep::<Elem>::default();
        let report = check_wiles_relations(&pi, &WordSample::exhaustive(1, 2));
        assert_eq!(report.checked, 0);
        assert!(report.skipped > 0);
    }
}
