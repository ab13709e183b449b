use crate::{Elem, Error, Rational, Result, Series};

/// The series of degree `<= 1` (truncated at `U^d`) taking the value `x` at
/// `u1` and `y` at `u2`.
///
/// It exists exactly when `x = y mod (u1 - u2)`; otherwise the error carries
/// the valuation of `y - x` and the required one.
pub fn glue_crt(x: &Elem, y: &Elem, u1: &Elem, u2: &Elem, d: usize) -> Result<Series> {
    let params = x.params();
    if [y, u1, u2].iter().any(|z| z.params() != params) {
        return Err(Error::MismatchedParams);
    }
    if u1.val_pi() == Some(0) || u2.val_pi() == Some(0) {
        return Err(Error::OutsideDomain);
    }
    let gap = u2 - u1;
    let Some(vg) = gap.val_pi() else {
        return Err(Error::CoincidentNodes(0, 1));
    };
    let diff = y - x;
    let slope = match diff.val_pi() {
        None => Elem::zero(params).with_prec(diff.prec().saturating_sub(vg)),
        Some(vd) if vd < vg => {
            let e = params.e() as i64;
            return Err(Error::Incompatible {
                obstruction: Rational::new(vd as i64, e),
                required: Rational::new(vg as i64, e),
            });
        }
        Some(_) => diff.div_exact(&gap)?,
    };
    let mut coeffs = vec![x - &(&slope * u1), slope];
    coeffs.resize(d.max(2), Elem::zero(params));
    Ok(Series::new(params, coeffs)?.truncated(d.max(1)))
}
