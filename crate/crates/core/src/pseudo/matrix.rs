use super::{Coeff, Letter, Word};
use crate::{Error, Result};

/// A 2x2 matrix `[[a, b], [c, d]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat2<R> {
    pub a: R,
    pub b: R,
    pub c: R,
    pub d: R,
}

impl<R: Coeff> Mat2<R> {
    pub fn new(a: R, b: R, c: R, d: R) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity(template: &R) -> Self {
        Self::diag(template.one_like(), template.one_like())
    }

    pub fn diag(a: R, d: R) -> Self {
        let z = a.zero_like();
        Mat2::new(a, z.clone(), z, d)
    }

    /// `diag(-1, 1)`, the normalized image of complex conjugation.
    pub fn conjugation(template: &R) -> Self {
        Self::diag(template.one_like().negated(), template.one_like())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Mat2 {
            a: self.a.times(&o.a).plus(&self.b.times(&o.c)),
            b: self.a.times(&o.b).plus(&self.b.times(&o.d)),
            c: self.c.times(&o.a).plus(&self.d.times(&o.c)),
            d: self.c.times(&o.b).plus(&self.d.times(&o.d)),
        }
    }

    pub fn trace(&self) -> R {
        self.a.plus(&self.d)
    }

    pub fn det(&self) -> R {
        self.a.times(&self.d).minus(&self.b.times(&self.c))
    }

    /// Inverse via the adjugate; the determinant must be a unit.
    pub fn inverse(&self) -> Result<Self> {
        let di = self.det().try_inverse()?;
        Ok(Mat2 {
            a: self.d.times(&di),
            b: self.b.negated().times(&di),
            c: self.c.negated().times(&di),
            d: self.a.times(&di),
        })
    }

    pub fn map(&self, f: impl Fn(&R) -> R) -> Self {
        Mat2::new(f(&self.a), f(&self.b), f(&self.c), f(&self.d))
    }
}

/// A representation of the free group on `t` generators and `c`, given by
/// the generator images; `c` maps to `diag(-1, 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixRep2<R> {
    gens: Vec<Mat2<R>>,
    invs: Vec<Mat2<R>>,
    conj: Mat2<R>,
}

impl<R: Coeff> MatrixRep2<R> {
    /// `template` fixes the coefficient ring when there are no generators.
    pub fn new(template: &R, gens: Vec<Mat2<R>>) -> Result<Self> {
        let invs = gens
            .iter()
            .enumerate()
            .map(|(i, g)| g.inverse().map_err(|_| Error::NotInvertible(i)))
            .collect::<Result<_>>()?;
        Ok(MatrixRep2 {
            gens,
            invs,
            conj: Mat2::conjugation(template),
        })
    }

    /// As [`MatrixRep2::new`], with an explicit image of `c` that must be
    /// `diag(-1, 1)`.
    pub fn with_conjugation(template: &R, gens: Vec<Mat2<R>>, conj: Mat2<R>) -> Result<Self> {
        let rep = Self::new(template, gens)?;
        if conj != rep.conj {
            return Err(Error::BadConjugationImage);
        }
        Ok(rep)
    }

    pub fn generators(&self) -> usize {
        self.gens.len()
    }

    pub fn generator(&self, i: usize) -> &Mat2<R> {
        &self.gens[i]
    }

    pub fn conjugation_image(&self) -> &Mat2<R> {
        &self.conj
    }

    fn letter_image(&self, l: Letter) -> &Mat2<R> {
        match l {
            Letter::Gen(i) => &self.gens[i as usize],
            Letter::Inv(i) => &self.invs[i as usize],
            Letter::Conj => &self.conj,
        }
    }

    /// Image of a word; `None` if it uses a generator beyond `t`.
    pub fn image(&self, w: &Word) -> Option<Mat2<R>> {
        if w.rank() > self.gens.len() {
            return None;
        }
        let mut letters = w.letters().iter();
        let Some(&first) = letters.next() else {
            return Some(Mat2::identity(&self.conj.d));
        };
        let mut acc = self.letter_image(first).clone();
        for &l in letters {
            acc = acc.mul(self.letter_image(l));
        }
        Some(acc)
    }

    /// Applies `f` entrywise, e.g. reduction at a point.
    pub fn map(&self, f: impl Fn(&R) -> R) -> Result<Self> {
        let template = f(&self.conj.d);
        Self::new(&template, self.gens.iter().map(|g| g.map(&f)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Elem, RingParams};

    fn m(r: RingParams, x: [i64; 4]) -> Mat2<Elem> {
        let e = |n| Elem::from_int(r, n);
        Mat2::new(e(x[0]), e(x[1]), e(x[2]), e(x[3]))
    }

    #[test]
    fn images_multiply() {
        let r = RingParams::new(3, 1, 8).unwrap();
        let g1 = m(r, [1, 1, 3, 1]);
        let g2 = m(r, [2, 0, 1, 1]);
        let rep = MatrixRep2::new(&Elem::one(r), vec![g1.clone(), g2.clone()]).unwrap();
        let w = Word::parse("g1*g2^-1*c").unwrap();
        let expect = g1.mul(&g2.inverse().unwrap()).mul(&Mat2::conjugation(&Elem::one(r)));
        assert_eq!(rep.image(&w).unwrap(), expect);
        assert_eq!(rep.image(&Word::empty()).unwrap(), Mat2::identity(&Elem::one(r)));
        assert_eq!(g1.trace(), Elem::from_int(r, 2));
        assert_eq!(g1.det(), Elem::from_int(r, -2));
        assert!(rep.image(&Word::gen(2)).is_none());
    }

    #[test]
    fn rejects_singular_and_bad_conjugation() {
        let r = RingParams::new(3, 1, 8).unwrap();
        let one = Elem::one(r);
        assert_eq!(
            MatrixRep2::new(&one, vec![m(r, [1, 0, 0, 1]), m(r, [3, 0, 0, 1])]),
            Err(Error::NotInvertible(1))
        );
        assert_eq!(
            MatrixRep2::with_conjugation(&one, vec![], m(r, [1, 0, 0, -1])),
            Err(Error::BadConjugationImage)
        );
        assert!(MatrixRep2::with_conjugation(&one, vec![], m(r, [-1, 0, 0, 1])).is_ok());
    }
}
