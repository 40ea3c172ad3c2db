//! Rational functions over `F_q`, in reduced canonical form (coprime
//! numerator/denominator, denominator monic). Equality is structural.

use std::fmt;

use crate::error::{Error, Result};
use crate::fq::{FqElem, FqField};
use crate::poly::Poly;

#[derive(Clone, PartialEq, Eq)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> Result<RatFn> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: Poly, den: Poly) -> RatFn {
        if num.is_zero() {
            return RatFn { num: Poly::zero(den.field()), den: Poly::one(den.field()) };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() { (num, den) } else { (num.div_exact(&g), den.div_exact(&g)) };
        let lc = den.leading_coeff().expect("denominator nonzero").clone();
        if lc.is_one() {
            RatFn { num, den }
        } else {
            let inv = lc.inv().expect("nonzero");
            RatFn { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn from_poly(p: Poly) -> RatFn {
        RatFn { den: Poly::one(p.field()), num: p }
    }

    pub fn constant(c: FqElem) -> RatFn {
        RatFn::from_poly(Poly::constant(c))
    }

    pub fn zero(field: &FqField) -> RatFn {
        RatFn { num: Poly::zero(field), den: Poly::one(field) }
    }

    pub fn one(field: &FqField) -> RatFn {
        RatFn { num: Poly::one(field), den: Poly::one(field) }
    }

    pub fn field(&self) -> &FqField {
        self.num.field()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &RatFn) -> RatFn {
        RatFn::reduced(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &RatFn) -> RatFn {
        RatFn::reduced(
            self.num.mul(&other.den).sub(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> RatFn {
        RatFn { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &RatFn) -> RatFn {
        RatFn::reduced(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inv(&self) -> Result<RatFn> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFn::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &RatFn) -> Result<RatFn> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<RatFn> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = RatFn::one(self.field());
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            k >>= 1;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::FqField;

    #[test]
    fn reduction_is_canonical() {
        let f5 = FqField::new(5, 1).unwrap();
        let a = RatFn::new(
            Poly::parse("2*t^2-2", &f5).unwrap(),
            Poly::parse("2*t-2", &f5).unwrap(),
        )
        .unwrap();
        assert_eq!(a, RatFn::from_poly(Poly::parse("t+1", &f5).unwrap()));
        assert!(a.den().is_monic());
    }

    #[test]
    fn field_ops() {
        let f3 = FqField::new(3, 1).unwrap();
        let t = RatFn::from_poly(Poly::x(&f3));
        let one = RatFn::one(&f3);
        let inv = t.add(&one).inv().unwrap();
        assert_eq!(t.add(&one).mul(&inv), one);
        assert_eq!(t.pow(-2).unwrap().mul(&t.pow(2).unwrap()), one);
        assert!(t.sub(&t).is_zero());
    }
}
