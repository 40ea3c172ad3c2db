//! The completion of `F_q(t)` at a place: exact valuations, unit residues,
//! square classes, truncated expansions, and Hensel square roots.
//!
//! Elements carry a dual representation. Symbols and residues only ever use
//! the exact rational form, so the whole residue pipeline is precision-free;
//! truncated expansions exist for Hensel witnesses and the conic point
//! search.

use std::fmt;

use crate::error::{Error, Result};
use crate::fq::{FqElem, FqField};
use crate::place::Place;
use crate::poly::Poly;
use crate::ratfn::RatFn;
use crate::series::{self, Series, SumOutcome};

/// Default number of unit coefficients for expansions and witnesses.
pub const DEFAULT_PRECISION: usize = 24;

#[derive(Clone, Debug, PartialEq)]
enum Repr {
    Exact(RatFn),
    Series(Series),
    Zero,
}

/// An element of the completion `K` of `F_q(t)` at a place.
#[derive(Clone, PartialEq)]
pub struct LocalElem {
    place: Place,
    repr: Repr,
}

impl fmt::Debug for LocalElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for LocalElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Zero => write!(f, "0"),
            Repr::Exact(rf) => write!(f, "{}", rf),
            Repr::Series(s) => {
                let coeffs: Vec<String> = s
                    .digits
                    .iter()
                    .map(|d| {
                        let r = self.place.digit_to_residue(d);
                        r.to_string()
                    })
                    .collect();
                write!(
                    f,
                    "pi^{}*[{}] + O(pi^{})",
                    s.val,
                    coeffs.join(","),
                    s.val + s.digits.len() as i64
                )
            }
        }
    }
}

impl LocalElem {
    pub fn from_ratfn(place: &Place, f: RatFn) -> LocalElem {
        assert!(f.field() == place.base_field(), "rational function over the wrong field");
        if f.is_zero() {
            LocalElem { place: place.clone(), repr: Repr::Zero }
        } else {
            LocalElem { place: place.clone(), repr: Repr::Exact(f) }
        }
    }

    pub fn from_poly(place: &Place, f: &Poly) -> LocalElem {
        LocalElem::from_ratfn(place, RatFn::from_poly(f.clone()))
    }

    pub fn from_int(place: &Place, n: i64) -> LocalElem {
        LocalElem::from_ratfn(place, RatFn::constant(place.base_field().from_i64(n)))
    }

    pub fn zero(place: &Place) -> LocalElem {
        LocalElem { place: place.clone(), repr: Repr::Zero }
    }

    pub fn one(place: &Place) -> LocalElem {
        LocalElem::from_int(place, 1)
    }

    pub fn uniformizer(place: &Place) -> LocalElem {
        LocalElem::from_ratfn(place, place.uniformizer_ratfn())
    }

    pub fn uniformizer_pow(place: &Place, k: i64) -> LocalElem {
        let pi = place.uniformizer_ratfn();
        LocalElem::from_ratfn(place, pi.pow(k).expect("uniformizer nonzero"))
    }

    /// A canonical integral lift of a residue-field element: its digit
    /// representative of degree < m.
    pub fn lift_residue(place: &Place, x: &FqElem) -> LocalElem {
        LocalElem::from_poly(place, &place.residue_to_digit(x))
    }

    pub fn place(&self) -> &Place {
        &self.place
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.repr, Repr::Exact(_) | Repr::Zero)
    }

    pub fn as_ratfn(&self) -> Option<&RatFn> {
        match &self.repr {
            Repr::Exact(rf) => Some(rf),
            _ => None,
        }
    }

    /// `(valuation, unit coefficients)` of a series-form element, the
    /// coefficients living in the residue field.
    pub fn series_parts(&self) -> Option<(i64, Vec<FqElem>)> {
        match &self.repr {
            Repr::Series(s) => Some((
                s.val,
                s.digits.iter().map(|d| self.place.digit_to_residue(d)).collect(),
            )),
            _ => None,
        }
    }

    /// The discrete valuation; errors on zero.
    pub fn nu(&self) -> Result<i64> {
        match &self.repr {
            Repr::Zero => Err(Error::ZeroElement),
            Repr::Exact(rf) => self.place.valuation(rf),
            Repr::Series(s) => Ok(s.val),
        }
    }

    /// Residue of the unit part `x * pi^(-nu(x))`; nonzero by construction.
    pub fn unit_residue(&self) -> Result<FqElem> {
        match &self.repr {
            Repr::Zero => Err(Error::ZeroElement),
            Repr::Exact(rf) => self.place.unit_residue(rf),
            Repr::Series(s) => Ok(self.place.digit_to_residue(&s.digits[0])),
        }
    }

    /// Image in the residue field of an integral element (zero when the
    /// valuation is positive); errors on negative valuation.
    pub fn residue(&self) -> Result<FqElem> {
        match &self.repr {
            Repr::Zero => Ok(self.place.residue_field().zero()),
            Repr::Exact(rf) => self.place.residue(rf),
            Repr::Series(s) => {
                if s.val < 0 {
                    Err(Error::NegativeValuation)
                } else if s.val > 0 {
                    Ok(self.place.residue_field().zero())
                } else {
                    Ok(self.place.digit_to_residue(&s.digits[0]))
                }
            }
        }
    }

    /// Expansion with exactly `precision` unit coefficients. Zero expands to
    /// zero; a series that is already shorter than `precision` cannot be
    /// extended and errors.
    pub fn expand(&self, precision: usize) -> Result<LocalElem> {
        if precision == 0 {
            return Err(Error::InvalidInput("precision must be positive".into()));
        }
        match &self.repr {
            Repr::Zero => Ok(self.clone()),
            Repr::Exact(rf) => {
                let s = expand_exact(&self.place, rf, precision);
                Ok(LocalElem { place: self.place.clone(), repr: Repr::Series(s) })
            }
            Repr::Series(s) => {
                if s.digits.len() < precision {
                    Err(Error::PrecisionExhausted)
                } else {
                    Ok(LocalElem {
                        place: self.place.clone(),
                        repr: Repr::Series(series::s_truncate(s, precision)),
                    })
                }
            }
        }
    }

    fn to_series(&self, precision: usize) -> Result<Series> {
        match &self.repr {
            Repr::Zero => Err(Error::ZeroElement),
            Repr::Exact(rf) => Ok(expand_exact(&self.place, rf, precision)),
            Repr::Series(s) => Ok(series::s_truncate(s, precision.min(s.digits.len()))),
        }
    }

    fn check_place(&self, other: &LocalElem) -> Result<()> {
        if self.place != other.place {
            return Err(Error::PlaceMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &LocalElem) -> Result<LocalElem> {
        self.check_place(other)?;
        match (&self.repr, &other.repr) {
            (Repr::Zero, _) => Ok(other.clone()),
            (_, Repr::Zero) => Ok(self.clone()),
            (Repr::Exact(a), Repr::Exact(b)) => {
                Ok(LocalElem::from_ratfn(&self.place, a.add(b)))
            }
            _ => {
                let prec = self.partner_precision(other);
                let a = self.to_series(prec)?;
                let b = other.to_series(prec)?;
                match series::s_add(&self.place, &a, &b) {
                    SumOutcome::Series(s) => Ok(LocalElem {
                        place: self.place.clone(),
                        repr: Repr::Series(s),
                    }),
                    SumOutcome::ZeroToPrecision => Err(Error::PrecisionExhausted),
                }
            }
        }
    }

    pub fn sub(&self, other: &LocalElem) -> Result<LocalElem> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LocalElem {
        let repr = match &self.repr {
            Repr::Zero => Repr::Zero,
            Repr::Exact(rf) => Repr::Exact(rf.neg()),
            Repr::Series(s) => Repr::Series(series::s_neg(s)),
        };
        LocalElem { place: self.place.clone(), repr }
    }

    pub fn mul(&self, other: &LocalElem) -> Result<LocalElem> {
        self.check_place(other)?;
        match (&self.repr, &other.repr) {
            (Repr::Zero, _) | (_, Repr::Zero) => Ok(LocalElem::zero(&self.place)),
            (Repr::Exact(a), Repr::Exact(b)) => {
                Ok(LocalElem::from_ratfn(&self.place, a.mul(b)))
            }
            _ => {
                let prec = self.partner_precision(other);
                let a = self.to_series(prec)?;
                let b = other.to_series(prec)?;
                Ok(LocalElem {
                    place: self.place.clone(),
                    repr: Repr::Series(series::s_mul(&self.place, &a, &b)),
                })
            }
        }
    }

    pub fn div(&self, other: &LocalElem) -> Result<LocalElem> {
        self.check_place(other)?;
        match (&self.repr, &other.repr) {
            (_, Repr::Zero) => Err(Error::DivisionByZero),
            (Repr::Zero, _) => Ok(LocalElem::zero(&self.place)),
            (Repr::Exact(a), Repr::Exact(b)) => {
                Ok(LocalElem::from_ratfn(&self.place, a.div(b)?))
            }
            _ => {
                let prec = self.partner_precision(other);
                let a = self.to_series(prec)?;
                let b = other.to_series(prec)?;
                let inv = series::s_inv(&self.place, &b);
                Ok(LocalElem {
                    place: self.place.clone(),
                    repr: Repr::Series(series::s_mul(&self.place, &a, &inv)),
                })
            }
        }
    }

    pub fn pow(&self, e: i64) -> Result<LocalElem> {
        if self.is_zero() {
            return if e > 0 {
                Ok(self.clone())
            } else if e == 0 {
                Ok(LocalElem::one(&self.place))
            } else {
                Err(Error::DivisionByZero)
            };
        }
        match &self.repr {
            Repr::Exact(rf) => Ok(LocalElem::from_ratfn(&self.place, rf.pow(e)?)),
            _ => {
                let mut acc = LocalElem::one(&self.place).expand(self.series_len())?;
                let base = if e < 0 {
                    self.div_into_one()?
                } else {
                    self.clone()
                };
                let mut b = base;
                let mut k = e.unsigned_abs();
                while k > 0 {
                    if k & 1 == 1 {
                        acc = acc.mul(&b)?;
                    }
                    let sq = b.mul(&b)?;
                    b = sq;
                    k >>= 1;
                }
                Ok(acc)
            }
        }
    }

    fn div_into_one(&self) -> Result<LocalElem> {
        LocalElem::one(&self.place).div(self)
    }

    fn series_len(&self) -> usize {
        match &self.repr {
            Repr::Series(s) => s.digits.len(),
            _ => DEFAULT_PRECISION,
        }
    }

    fn partner_precision(&self, other: &LocalElem) -> usize {
        match (&self.repr, &other.repr) {
            (Repr::Series(a), Repr::Series(b)) => a.digits.len().min(b.digits.len()),
            (Repr::Series(a), _) => a.digits.len(),
            (_, Repr::Series(b)) => b.digits.len(),
            _ => DEFAULT_PRECISION,
        }
    }

    /// Square criterion in the completion: even valuation and square unit
    /// residue. Exact, no precision involved.
    pub fn is_square(&self) -> Result<bool> {
        let v = self.nu()?;
        if v % 2 != 0 {
            return Ok(false);
        }
        self.unit_residue()?.is_square()
    }

    /// Series square root to the requested precision, seeded so that the
    /// unit residue of the result is the canonical residue-field root.
    pub fn sqrt_series(&self, precision: usize) -> Result<LocalElem> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        if !self.is_square()? {
            return Err(Error::NotASquare);
        }
        let s = self.to_series(precision)?;
        let root = self.unit_residue()?.sqrt()?;
        let seed = self.place.residue_to_digit(&root);
        let y = series::s_sqrt(&self.place, &s, &seed)?;
        Ok(LocalElem { place: self.place.clone(), repr: Repr::Series(y) })
    }

    /// Series square root seeded with a caller-supplied residue root
    /// (used by the conic search, which finds roots by enumeration).
    pub(crate) fn sqrt_series_seeded(&self, seed_root: &FqElem, precision: usize) -> Result<LocalElem> {
        let s = self.to_series(precision)?;
        let seed = self.place.residue_to_digit(seed_root);
        let y = series::s_sqrt(&self.place, &s, &seed)?;
        Ok(LocalElem { place: self.place.clone(), repr: Repr::Series(y) })
    }

    /// The class of the element in `K*/K*^2`.
    pub fn square_class(&self) -> Result<SquareClass> {
        SquareClass::of_local(self)
    }

    /// True when two elements agree on their overlapping known digits.
    pub fn agrees_with(&self, other: &LocalElem, digits: usize) -> bool {
        if self.is_zero() && other.is_zero() {
            return true;
        }
        if self.is_zero() || other.is_zero() {
            return false;
        }
        let a = self.to_series(digits).expect("nonzero");
        let b = other.to_series(digits).expect("nonzero");
        if a.val != b.val {
            return false;
        }
        let n = a.digits.len().min(b.digits.len()).min(digits);
        a.digits[..n] == b.digits[..n]
    }
}

fn expand_exact(place: &Place, rf: &RatFn, precision: usize) -> Series {
    if place.is_infinity() {
        let dn = rf.num().degree().unwrap() as i64;
        let dd = rf.den().degree().unwrap() as i64;
        let nrev = rf.num().reverse();
        let drev = rf.den().reverse();
        let digits = series::expand_unit(place, &nrev, &drev, precision);
        Series { val: dd - dn, digits }
    } else {
        let (vn, n1) = place.multiplicity(rf.num());
        let (vd, d1) = place.multiplicity(rf.den());
        let digits = series::expand_unit(place, &n1, &d1, precision);
        Series { val: vn - vd, digits }
    }
}

/// Which group of square classes an element belongs to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassKind {
    /// `k*/k*^2` for a residue (finite) field `k`.
    ResidueField(FqField),
    /// `K*/K*^2` for the completion at a place.
    LocalField(Place),
}

/// A square class, with canonical representatives `1`/`u0` over a residue
/// field and `1, u0, pi, u0*pi` over the local field (`u0` the smallest
/// non-square of the residue field).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareClass {
    kind: ClassKind,
    nonsquare_unit: bool,
    odd_valuation: bool,
}

impl SquareClass {
    pub fn of_residue(x: &FqElem) -> Result<SquareClass> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(SquareClass {
            kind: ClassKind::ResidueField(x.field().clone()),
            nonsquare_unit: !x.is_square()?,
            odd_valuation: false,
        })
    }

    pub fn of_local(x: &LocalElem) -> Result<SquareClass> {
        let v = x.nu()?;
        Ok(SquareClass {
            kind: ClassKind::LocalField(x.place().clone()),
            nonsquare_unit: !x.unit_residue()?.is_square()?,
            odd_valuation: v.rem_euclid(2) == 1,
        })
    }

    pub fn trivial_residue(field: &FqField) -> SquareClass {
        SquareClass {
            kind: ClassKind::ResidueField(field.clone()),
            nonsquare_unit: false,
            odd_valuation: false,
        }
    }

    pub fn kind(&self) -> &ClassKind {
        &self.kind
    }

    pub fn is_trivial(&self) -> bool {
        !self.nonsquare_unit && !self.odd_valuation
    }

    pub fn has_nonsquare_unit(&self) -> bool {
        self.nonsquare_unit
    }

    pub fn has_odd_valuation(&self) -> bool {
        self.odd_valuation
    }

    pub fn mul(&self, other: &SquareClass) -> Result<SquareClass> {
        if self.kind != other.kind {
            return Err(Error::FieldMismatch);
        }
        Ok(SquareClass {
            kind: self.kind.clone(),
            nonsquare_unit: self.nonsquare_unit ^ other.nonsquare_unit,
            odd_valuation: self.odd_valuation ^ other.odd_valuation,
        })
    }

    /// `e`-th power; only the parity of `e` matters in a 2-torsion group.
    pub fn pow(&self, e: u32) -> SquareClass {
        if e % 2 == 0 {
            SquareClass {
                kind: self.kind.clone(),
                nonsquare_unit: false,
                odd_valuation: false,
            }
        } else {
            self.clone()
        }
    }

    /// Canonical representative for a residue-field class: `1` or the
    /// lexicographically smallest non-square.
    pub fn representative_residue(&self) -> Option<FqElem> {
        match &self.kind {
            ClassKind::ResidueField(k) => Some(if self.nonsquare_unit {
                k.canonical_nonsquare()
            } else {
                k.one()
            }),
            ClassKind::LocalField(_) => None,
        }
    }

    /// Canonical representative for a local class, one of
    /// `1, u0, pi, u0*pi` with `u0` lifted as a degree-< m representative.
    pub fn representative_local(&self) -> Option<LocalElem> {
        match &self.kind {
            ClassKind::ResidueField(_) => None,
            ClassKind::LocalField(place) => {
                let unit = if self.nonsquare_unit {
                    LocalElem::lift_residue(place, &place.residue_field().canonical_nonsquare())
                } else {
                    LocalElem::one(place)
                };
                Some(if self.odd_valuation {
                    unit.mul(&LocalElem::uniformizer(place)).expect("same place")
                } else {
                    unit
                })
            }
        }
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ClassKind::ResidueField(_) => {
                let rep = self.representative_residue().unwrap();
                if self.is_trivial() {
                    write!(f, "trivial")
                } else {
                    write!(f, "nontrivial (rep {})", rep)
                }
            }
            ClassKind::LocalField(_) => {
                let rep = self.representative_local().unwrap();
                if self.is_trivial() {
                    write!(f, "trivial")
                } else {
                    write!(f, "nontrivial (rep {})", rep)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn place_t(p: u64) -> Place {
        let f = FqField::new(p, 1).unwrap();
        Place::finite(Poly::x(&f)).unwrap()
    }

    fn elem(place: &Place, num: &str, den: &str) -> LocalElem {
        let f = place.base_field();
        LocalElem::from_ratfn(
            place,
            RatFn::new(Poly::parse(num, f).unwrap(), Poly::parse(den, f).unwrap()).unwrap(),
        )
    }

    #[test]
    fn valuation_examples() {
        let t3 = place_t(3);
        assert_eq!(elem(&t3, "t^3", "t-1").nu().unwrap(), 3);

        let f5 = FqField::new(5, 1).unwrap();
        let tm1 = Place::finite(Poly::parse("t-1", &f5).unwrap()).unwrap();
        assert_eq!(elem(&tm1, "(t-1)^2", "1").nu().unwrap(), 2);

        let inf3 = Place::infinity(&FqField::new(3, 1).unwrap());
        assert_eq!(elem(&inf3, "t^3", "1").nu().unwrap(), -3);

        assert!(matches!(LocalElem::zero(&t3).nu(), Err(Error::ZeroElement)));
    }

    #[test]
    fn unit_residue_examples() {
        let t3 = place_t(3);
        let f3 = t3.base_field().clone();
        assert_eq!(elem(&t3, "2*t", "1").unit_residue().unwrap(), f3.from_u64(2));
        assert_eq!(elem(&t3, "t+1", "t^2").unit_residue().unwrap(), f3.one());

        // t^2+t at the place t+1: unit part t, residue t(-1) = -1 = 2
        let tp1 = Place::finite(Poly::parse("t+1", &f3).unwrap()).unwrap();
        assert_eq!(elem(&tp1, "t^2+t", "1").unit_residue().unwrap(), f3.from_u64(2));
    }

    #[test]
    fn expansion_examples() {
        let t3 = place_t(3);
        let x = elem(&t3, "1", "1-t").expand(4).unwrap();
        let (val, coeffs) = x.series_parts().unwrap();
        assert_eq!(val, 0);
        assert!(coeffs.iter().all(|c| c.is_one()));

        let t5 = place_t(5);
        let f5 = t5.base_field().clone();
        let y = elem(&t5, "t^2", "t-1").expand(3).unwrap();
        let (val, coeffs) = y.series_parts().unwrap();
        assert_eq!(val, 2);
        assert!(coeffs.iter().all(|c| *c == f5.from_u64(4)));

        let one = LocalElem::one(&t3).expand(2).unwrap();
        let (val, coeffs) = one.series_parts().unwrap();
        assert_eq!(val, 0);
        assert!(coeffs[0].is_one() && coeffs[1].is_zero());

        assert!(LocalElem::zero(&t3).expand(4).unwrap().is_zero());
    }

    #[test]
    fn hensel_square_criterion() {
        let t3 = place_t(3);
        assert!(elem(&t3, "1+t", "1").is_square().unwrap());
        assert!(!elem(&t3, "2+2*t", "1").is_square().unwrap());
        let t7 = place_t(7);
        assert!(elem(&t7, "t^2", "1").is_square().unwrap());
    }

    #[test]
    fn hensel_sqrt_examples() {
        let t3 = place_t(3);
        let f3 = t3.base_field().clone();
        let y = elem(&t3, "1+t", "1").sqrt_series(3).unwrap();
        let (val, coeffs) = y.series_parts().unwrap();
        assert_eq!(val, 0);
        assert_eq!(coeffs, vec![f3.one(), f3.from_u64(2), f3.one()]);
        // square it back
        let sq = y.mul(&y).unwrap();
        assert!(sq.agrees_with(&elem(&t3, "1+t", "1"), 3));

        let t5 = place_t(5);
        let r = elem(&t5, "4", "1").sqrt_series(4).unwrap();
        assert_eq!(r.unit_residue().unwrap(), t5.base_field().from_u64(2));

        let sq_t = elem(&t3, "t^2", "1").sqrt_series(3).unwrap();
        let (val, coeffs) = sq_t.series_parts().unwrap();
        assert_eq!(val, 1);
        assert!(coeffs[0].is_one());
        assert!(coeffs[1..].iter().all(|c| c.is_zero()));

        assert!(matches!(
            elem(&t3, "2", "1").sqrt_series(3),
            Err(Error::NotASquare)
        ));
    }

    #[test]
    fn square_class_examples() {
        let t3 = place_t(3);
        let f3 = t3.base_field().clone();
        let c2 = SquareClass::of_residue(&f3.from_u64(2)).unwrap();
        assert!(!c2.is_trivial());
        assert_eq!(c2.representative_residue().unwrap(), f3.from_u64(2));

        let t5 = place_t(5);
        let quad = elem(&t5, "4*t^2", "1").square_class().unwrap();
        assert!(quad.is_trivial());

        let c2t = elem(&t3, "2*t", "1").square_class().unwrap();
        assert!(c2t.has_odd_valuation() && c2t.has_nonsquare_unit());
        let rep = c2t.representative_local().unwrap();
        // representative is u0 * pi = 2t; same class as the input
        assert_eq!(rep.nu().unwrap() % 2, 1);
        assert!(!rep.unit_residue().unwrap().is_square().unwrap());
    }

    #[test]
    fn four_square_classes() {
        let t3 = place_t(3);
        let reps: Vec<LocalElem> = [
            ("1", "1"),
            ("2", "1"),
            ("t", "1"),
            ("2*t", "1"),
        ]
        .iter()
        .map(|(n, d)| elem(&t3, n, d))
        .collect();
        for (i, a) in reps.iter().enumerate() {
            for (j, b) in reps.iter().enumerate() {
                let ratio_square = a.div(b).unwrap().is_square().unwrap();
                assert_eq!(ratio_square, i == j);
            }
        }
    }

    #[test]
    fn mixed_exact_series_arithmetic() {
        let t3 = place_t(3);
        let a = elem(&t3, "1+t", "1");
        let s = a.expand(6).unwrap();
        let prod = s.mul(&a).unwrap();
        assert!(prod.agrees_with(&a.mul(&a).unwrap(), 6));
        let sum = s.add(&a.neg()).unwrap_err();
        assert_eq!(sum, Error::PrecisionExhausted);
    }

    #[test]
    fn expansion_at_infinity() {
        let f3 = FqField::new(3, 1).unwrap();
        let inf = Place::infinity(&f3);
        // t/(t+1) = 1 - 1/t + 1/t^2 - ... at infinity
        let x = elem(&inf, "t", "t+1").expand(4).unwrap();
        let (val, coeffs) = x.series_parts().unwrap();
        assert_eq!(val, 0);
        assert_eq!(
            coeffs,
            vec![f3.one(), f3.from_u64(2), f3.one(), f3.from_u64(2)]
        );
        // consistency: multiply back by (t+1)/1 expanded
        let back = x.mul(&elem(&inf, "t+1", "1")).unwrap();
        assert!(back.agrees_with(&elem(&inf, "t", "1"), 3));
    }
}
