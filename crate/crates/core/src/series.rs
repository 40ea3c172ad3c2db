//! Truncated uniformizer-adic expansions at a place.
//!
//! A series is `sum_k digit_k * pi^(val+k)` with digit representatives of
//! degree < m over the base field (m = place degree); at infinity the
//! digits are constants in the `s = 1/t` coordinate. Addition is digit-wise
//! (characteristic p has no additive carries); multiplication reduces digit
//! products by `pi`, carrying the quotient one position up. Division and
//! square roots are Newton iterations on unit digit vectors.

use crate::error::{Error, Result};
use crate::place::Place;
use crate::poly::Poly;

/// A nonzero truncated expansion: `digits[0] != 0`, `digits.len()` is the
/// number of known coefficients.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Series {
    pub val: i64,
    pub digits: Vec<Poly>,
}

pub(crate) enum SumOutcome {
    Series(Series),
    /// All known digits cancelled; the sum is zero to the overlap precision.
    ZeroToPrecision,
}

/// The polynomial playing the role of `pi` for digit reduction: the place's
/// own uniformizer, or `t` in the reversed coordinate at infinity.
pub(crate) fn series_pi(place: &Place) -> Poly {
    match place.pi() {
        Some(pi) => pi.clone(),
        None => Poly::x(place.base_field()),
    }
}

fn digit_len(place: &Place) -> usize {
    place.degree()
}

/// Digit expansion of `num/den` where both are coprime to `pi`.
pub(crate) fn expand_unit(place: &Place, num: &Poly, den: &Poly, prec: usize) -> Vec<Poly> {
    let pi = series_pi(place);
    let den_res = den.rem(&pi).expect("pi nonzero");
    let (g, w, _) = den_res.ext_gcd(&pi);
    debug_assert!(g.is_one(), "denominator not a unit at the place");
    let mut digits = Vec::with_capacity(prec);
    let mut cur = num.clone();
    for _ in 0..prec {
        let r = cur.rem(&pi).expect("pi nonzero");
        let d = r.mul(&w).rem(&pi).expect("pi nonzero");
        cur = cur.sub(&d.mul(den)).div_exact(&pi);
        digits.push(d);
    }
    digits
}

fn d_pad(place: &Place, v: &[Poly], len: usize) -> Vec<Poly> {
    let zero = Poly::zero(place.base_field());
    let mut out = v.to_vec();
    out.truncate(len);
    while out.len() < len {
        out.push(zero.clone());
    }
    out
}

fn d_sub(place: &Place, a: &[Poly], b: &[Poly], len: usize) -> Vec<Poly> {
    let a = d_pad(place, a, len);
    let b = d_pad(place, b, len);
    a.iter().zip(&b).map(|(x, y)| x.sub(y)).collect()
}

/// Digit-vector product with pi-carries, truncated to `len` digits.
fn d_mul(place: &Place, a: &[Poly], b: &[Poly], len: usize) -> Vec<Poly> {
    let pi = series_pi(place);
    let m = digit_len(place);
    let zero = Poly::zero(place.base_field());
    let mut acc = vec![zero; len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if i + j >= len {
                break;
            }
            if y.is_zero() {
                continue;
            }
            let prod = x.mul(y);
            if prod.degree().map_or(true, |d| d < m) {
                acc[i + j] = acc[i + j].add(&prod);
            } else {
                let (hi, lo) = prod.divrem(&pi).expect("pi nonzero");
                acc[i + j] = acc[i + j].add(&lo);
                if i + j + 1 < len {
                    acc[i + j + 1] = acc[i + j + 1].add(&hi);
                }
            }
        }
    }
    // digit sums may spill past degree m after additions at characteristic
    // boundary? no: additions never raise the degree, only the products did,
    // and those were reduced above.
    acc
}

/// Inverse of a unit digit vector by Newton iteration `z <- z(2 - uz)`.
fn d_inv(place: &Place, u: &[Poly], len: usize) -> Vec<Poly> {
    let pi = series_pi(place);
    let (g, w, _) = u[0].ext_gcd(&pi);
    debug_assert!(g.is_one(), "leading digit not invertible");
    let mut z = vec![w.rem(&pi).expect("pi nonzero")];
    let mut cur = 1usize;
    while cur < len {
        cur = (cur * 2).min(len);
        let uz = d_mul(place, &d_pad(place, u, cur), &d_pad(place, &z, cur), cur);
        let two_minus = d_sub(place, &d_scale2(place, cur), &uz, cur);
        z = d_mul(place, &d_pad(place, &z, cur), &two_minus, cur);
    }
    z
}

fn d_scale2(place: &Place, len: usize) -> Vec<Poly> {
    let mut v = vec![Poly::zero(place.base_field()); len];
    v[0] = Poly::from_ints(place.base_field(), &[2]);
    v
}

/// Square root of a unit digit vector by the inverse-square-root iteration
/// `z <- z(3 - u z^2)/2`, seeded with a residue-level root.
pub(crate) fn d_sqrt(place: &Place, u: &[Poly], seed_root: &Poly, len: usize) -> Vec<Poly> {
    let pi = series_pi(place);
    let field = place.base_field();
    let half = field.from_u64(2).inv().expect("odd characteristic");
    let (g, seed_inv, _) = seed_root.ext_gcd(&pi);
    debug_assert!(g.is_one(), "seed root not invertible");
    let mut z = vec![seed_inv.rem(&pi).expect("pi nonzero")];
    let mut cur = 1usize;
    while cur < len {
        cur = (cur * 2).min(len);
        let zz = d_mul(place, &d_pad(place, &z, cur), &d_pad(place, &z, cur), cur);
        let uzz = d_mul(place, &d_pad(place, u, cur), &zz, cur);
        let mut three = vec![Poly::zero(field); cur];
        three[0] = Poly::from_ints(field, &[3]);
        let t = d_sub(place, &three, &uzz, cur);
        let zt = d_mul(place, &d_pad(place, &z, cur), &t, cur);
        z = zt.iter().map(|d| d.scale(&half)).collect();
    }
    let y = d_mul(place, &d_pad(place, u, len), &d_pad(place, &z, len), len);
    debug_assert!({
        let yy = d_mul(place, &y, &y, len);
        d_sub(place, &yy, &d_pad(place, u, len), len).iter().all(|d| d.is_zero())
    });
    y
}

pub(crate) fn s_neg(a: &Series) -> Series {
    Series { val: a.val, digits: a.digits.iter().map(|d| d.neg()).collect() }
}

pub(crate) fn s_add(place: &Place, a: &Series, b: &Series) -> SumOutcome {
    let lo = a.val.min(b.val);
    let hi = (a.val + a.digits.len() as i64).min(b.val + b.digits.len() as i64);
    // each operand's window extends past its own valuation, so the overlap
    // window [lo, hi) is never empty
    debug_assert!(hi > lo);
    let len = (hi - lo) as usize;
    let zero = Poly::zero(place.base_field());
    let mut digits = vec![zero; len];
    for (k, d) in digits.iter_mut().enumerate() {
        let pos = lo + k as i64;
        let mut sum = Poly::zero(place.base_field());
        if pos >= a.val && pos < a.val + a.digits.len() as i64 {
            sum = sum.add(&a.digits[(pos - a.val) as usize]);
        }
        if pos >= b.val && pos < b.val + b.digits.len() as i64 {
            sum = sum.add(&b.digits[(pos - b.val) as usize]);
        }
        *d = sum;
    }
    normalize(lo, digits)
}

fn normalize(val: i64, digits: Vec<Poly>) -> SumOutcome {
    let lead = digits.iter().position(|d| !d.is_zero());
    match lead {
        None => SumOutcome::ZeroToPrecision,
        Some(k) => SumOutcome::Series(Series { val: val + k as i64, digits: digits[k..].to_vec() }),
    }
}

pub(crate) fn s_mul(place: &Place, a: &Series, b: &Series) -> Series {
    let len = a.digits.len().min(b.digits.len());
    let digits = d_mul(place, &a.digits, &b.digits, len);
    debug_assert!(!digits[0].is_zero(), "unit times unit is a unit");
    Series { val: a.val + b.val, digits }
}

pub(crate) fn s_inv(place: &Place, a: &Series) -> Series {
    let digits = d_inv(place, &a.digits, a.digits.len());
    Series { val: -a.val, digits }
}

/// Square root of a series with even valuation, seeded at the residue level.
pub(crate) fn s_sqrt(place: &Place, a: &Series, seed_root: &Poly) -> Result<Series> {
    if a.val % 2 != 0 {
        return Err(Error::NotASquare);
    }
    let digits = d_sqrt(place, &a.digits, seed_root, a.digits.len());
    Ok(Series { val: a.val / 2, digits })
}

pub(crate) fn s_truncate(a: &Series, len: usize) -> Series {
    let mut digits = a.digits.clone();
    digits.truncate(len.max(1));
    Series { val: a.val, digits }
}
