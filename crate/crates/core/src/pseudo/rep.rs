use std::collections::HashMap;

use super::{Coeff, MatrixRep2, Word};
use crate::{Error, Result};

/// A triple `(A, D, Xi)` on words. Values may be undefined (`None`), e.g.
/// outside a lookup table; checkers skip such tuples.
pub trait PseudoRep<R: Coeff> {
    /// Number of free generators `t`.
    fn generators(&self) -> usize;
    fn a(&self, w: &Word) -> Option<R>;
    fn d(&self, w: &Word) -> Option<R>;
    fn xi(&self, s: &Word, t: &Word) -> Option<R>;

    /// `Tr = A + D`.
    fn trace(&self, w: &Word) -> Option<R> {
        Some(self.a(w)?.plus(&self.d(w)?))
    }
}

/// `pi_rho = (a, d, b(s) c(t))` of a representation with `rho(c) =
/// diag(-1, 1)`.
#[derive(Clone, Debug)]
pub struct MatrixPseudoRep<R> {
    rho: MatrixRep2<R>,
}

/// The pseudo-representation attached to `rho`.
pub fn pseudo_from_matrix<R: Coeff>(rho: MatrixRep2<R>) -> MatrixPseudoRep<R> {
    MatrixPseudoRep { rho }
}

impl<R: Coeff> MatrixPseudoRep<R> {
    pub fn rep(&self) -> &MatrixRep2<R> {
        &self.rho
    }
}

impl<R: Coeff> PseudoRep<R> for MatrixPseudoRep<R> {
    fn generators(&self) -> usize {
        self.rho.generators()
    }
    fn a(&self, w: &Word) -> Option<R> {
        self.rho.image(w).map(|m| m.a)
    }
    fn d(&self, w: &Word) -> Option<R> {
        self.rho.image(w).map(|m| m.d)
    }
    fn xi(&self, s: &Word, t: &Word) -> Option<R> {
        Some(self.rho.image(s)?.b.times(&self.rho.image(t)?.c))
    }
}

/// Finite lookup tables; missing entries are undefined.
#[derive(Clone, Debug)]
pub struct TablePseudoRep<R> {
    pub generators: usize,
    pub a: HashMap<Word, R>,
    pub d: HashMap<Word, R>,
    pub xi: HashMap<(Word, Word), R>,
}

impl<R> Default for TablePseudoRep<R> {
    fn default() -> Self {
        TablePseudoRep {
            generators: 0,
            a: HashMap::new(),
            d: HashMap::new(),
            xi: HashMap::new(),
        }
    }
}

impl<R: Coeff> PseudoRep<R> for TablePseudoRep<R> {
    fn generators(&self) -> usize {
        self.generators
    }
    fn a(&self, w: &Word) -> Option<R> {
        self.a.get(w).cloned()
    }
    fn d(&self, w: &Word) -> Option<R> {
        self.d.get(w).cloned()
    }
    fn xi(&self, s: &Word, t: &Word) -> Option<R> {
        self.xi.get(&(s.clone(), t.clone())).cloned()
    }
}

/// `A(s) = (tr s - tr cs) / 2` and `D(s) = (tr s + tr cs) / 2`.
pub fn trace_to_ad<R: Coeff>(tr: impl Fn(&Word) -> Option<R>, w: &Word) -> Option<(R, R)> {
    let t = tr(w)?;
    let tc = tr(&Word::conj().mul(w))?;
    Some((t.minus(&tc).halved(), t.plus(&tc).halved()))
}

/// The pseudo-representation determined by a trace function, with
/// `Xi(s, t) = A(st) - A(s) A(t)`.
pub struct TracePseudoRep<F> {
    generators: usize,
    trace: F,
}

impl<F> TracePseudoRep<F> {
    pub fn new(generators: usize, trace: F) -> Self {
        TracePseudoRep { generators, trace }
    }
}

impl<R: Coeff, F: Fn(&Word) -> Option<R>> PseudoRep<R> for TracePseudoRep<F> {
    fn generators(&self) -> usize {
        self.generators
    }
    fn a(&self, w: &Word) -> Option<R> {
        trace_to_ad(&self.trace, w).map(|(a, _)| a)
    }
    fn d(&self, w: &Word) -> Option<R> {
        trace_to_ad(&self.trace, w).map(|(_, d)| d)
    }
    fn xi(&self, s: &Word, t: &Word) -> Option<R> {
        let ast = self.a(&s.mul(t))?;
        Some(ast.minus(&self.a(s)?.times(&self.a(t)?)))
    }
    fn trace(&self, w: &Word) -> Option<R> {
        (self.trace)(w)
    }
}

/// Wraps a pseudo-representation and adds `delta` to one value of `Xi`.
pub struct PerturbedPseudoRep<'a, P, R> {
    inner: &'a P,
    at: (Word, Word),
    delta: R,
}

impl<'a, P, R: Coeff> PerturbedPseudoRep<'a, P, R> {
    pub fn new(inner: &'a P, at: (Word, Word), delta: R) -> Result<Self> {
        if delta.is_zero_at_precision() {
            return Err(Error::ZeroAtPrecision);
        }
        Ok(PerturbedPseudoRep { inner, at, delta })
    }
}

impl<P: PseudoRep<R>, R: Coeff> PseudoRep<R> for PerturbedPseudoRep<'_, P, R> {
    fn generators(&self) -> usize {
        self.inner.generators()
    }
    fn a(&self, w: &Word) -> Option<R> {
        self.inner.a(w)
    }
    fn d(&self, w: &Word) -> Option<R> {
        self.inner.d(w)
    }
    fn xi(&self, s: &Word, t: &Word) -> Option<R> {
        let v = self.inner.xi(s, t)?;
        if (s, t) == (&self.at.0, &self.at.1) {
            Some(v.plus(&self.delta))
        } else {
            Some(v)
        }
    }
}
