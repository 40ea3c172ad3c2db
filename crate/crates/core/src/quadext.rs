//! The unramified quadratic extension `L = K[s]/(s^2 - a)` of a completion,
//! its Galois conjugation and norm, 2x2 matrix cocycles for `Gal(L/K)`, and
//! the norm-parity obstruction.
//!
//! `L` is represented structurally as pairs `u + v s` over `K`; every
//! computation here is a polynomial identity in `u, v, a, b`, so no
//! extension-field series machinery is needed.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::local::LocalElem;
use crate::place::Place;

struct ExtRepr {
    place: Place,
    a: LocalElem,
}

/// The quadratic extension context: a non-square unit `a` over a place.
#[derive(Clone)]
pub struct QuadExt {
    repr: Arc<ExtRepr>,
}

impl PartialEq for QuadExt {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.repr, &other.repr)
            || (self.repr.place == other.repr.place && self.repr.a == other.repr.a)
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K[s]/(s^2-({}))", self.repr.a)
    }
}

impl QuadExt {
    /// Requires `a` to be a unit with non-square residue, so that `L/K` is
    /// an unramified field extension.
    pub fn new(a: LocalElem) -> Result<QuadExt> {
        let v = a.nu()?;
        if v != 0 {
            return Err(Error::NotAUnit(v));
        }
        if a.unit_residue()?.is_square()? {
            return Err(Error::SquareInput);
        }
        Ok(QuadExt { repr: Arc::new(ExtRepr { place: a.place().clone(), a }) })
    }

    pub fn place(&self) -> &Place {
        &self.repr.place
    }

    pub fn a(&self) -> &LocalElem {
        &self.repr.a
    }

    pub fn elem(&self, u: LocalElem, v: LocalElem) -> QuadExtElem {
        assert!(u.place() == self.place() && v.place() == self.place());
        QuadExtElem { ext: self.clone(), u, v }
    }

    pub fn from_base(&self, u: LocalElem) -> QuadExtElem {
        let zero = LocalElem::zero(self.place());
        self.elem(u, zero)
    }

    pub fn zero(&self) -> QuadExtElem {
        self.from_base(LocalElem::zero(self.place()))
    }

    pub fn one(&self) -> QuadExtElem {
        self.from_base(LocalElem::one(self.place()))
    }

    pub fn s(&self) -> QuadExtElem {
        self.elem(LocalElem::zero(self.place()), LocalElem::one(self.place()))
    }
}

/// An element `u + v s` of the quadratic extension, `s^2 = a`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadExtElem {
    ext: QuadExt,
    u: LocalElem,
    v: LocalElem,
}

impl fmt::Display for QuadExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})*s", self.u, self.v)
    }
}

impl QuadExtElem {
    pub fn ext(&self) -> &QuadExt {
        &self.ext
    }

    pub fn u(&self) -> &LocalElem {
        &self.u
    }

    pub fn v(&self) -> &LocalElem {
        &self.v
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    fn check_ext(&self, other: &QuadExtElem) -> Result<()> {
        if self.ext != other.ext {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &QuadExtElem) -> Result<QuadExtElem> {
        self.check_ext(other)?;
        Ok(self.ext.elem(self.u.add(&other.u)?, self.v.add(&other.v)?))
    }

    pub fn sub(&self, other: &QuadExtElem) -> Result<QuadExtElem> {
        self.check_ext(other)?;
        Ok(self.ext.elem(self.u.sub(&other.u)?, self.v.sub(&other.v)?))
    }

    pub fn neg(&self) -> QuadExtElem {
        self.ext.elem(self.u.neg(), self.v.neg())
    }

    /// `(u1 + v1 s)(u2 + v2 s) = (u1 u2 + a v1 v2) + (u1 v2 + u2 v1) s`.
    pub fn mul(&self, other: &QuadExtElem) -> Result<QuadExtElem> {
        self.check_ext(other)?;
        let a = self.ext.a();
        let u = self.u.mul(&other.u)?.add(&a.mul(&self.v.mul(&other.v)?)?)?;
        let v = self.u.mul(&other.v)?.add(&other.u.mul(&self.v)?)?;
        Ok(self.ext.elem(u, v))
    }

    /// Galois conjugation `u + v s -> u - v s`; an involution fixing
    /// exactly the base field.
    pub fn sigma(&self) -> QuadExtElem {
        self.ext.elem(self.u.clone(), self.v.neg())
    }

    /// `Norm(u + v s) = u^2 - a v^2`, an element of `K`. The s-component of
    /// `c sigma(c)` vanishes identically; asserted.
    pub fn norm(&self) -> Result<LocalElem> {
        let prod = self.mul(&self.sigma())?;
        debug_assert!(prod.v.is_zero(), "norm has a nonzero s-component");
        Ok(prod.u)
    }

    /// `nu(Norm(c)) mod 2`. For an unramified quadratic extension this is
    /// always 0; computed, not assumed.
    pub fn norm_valuation_parity(&self) -> Result<u8> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let n = self.norm()?;
        Ok(n.nu()?.rem_euclid(2) as u8)
    }
}

/// A 2x2 matrix over the quadratic extension.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat2L {
    ext: QuadExt,
    entries: [[QuadExtElem; 2]; 2],
}

impl Mat2L {
    pub fn new(ext: &QuadExt, entries: [[QuadExtElem; 2]; 2]) -> Mat2L {
        Mat2L { ext: ext.clone(), entries }
    }

    pub fn entries(&self) -> &[[QuadExtElem; 2]; 2] {
        &self.entries
    }

    pub fn identity(ext: &QuadExt) -> Mat2L {
        Mat2L::new(
            ext,
            [
                [ext.one(), ext.zero()],
                [ext.zero(), ext.one()],
            ],
        )
    }

    pub fn mul(&self, other: &Mat2L) -> Result<Mat2L> {
        let mut rows = Vec::with_capacity(2);
        for i in 0..2 {
            let mut row = Vec::with_capacity(2);
            for j in 0..2 {
                let mut acc = self.ext.zero();
                for k in 0..2 {
                    acc = acc.add(&self.entries[i][k].mul(&other.entries[k][j])?)?;
                }
                row.push(acc);
            }
            rows.push(row);
        }
        Ok(Mat2L::new(
            &self.ext,
            [
                [rows[0][0].clone(), rows[0][1].clone()],
                [rows[1][0].clone(), rows[1][1].clone()],
            ],
        ))
    }

    pub fn sigma(&self) -> Mat2L {
        let e = &self.entries;
        Mat2L::new(
            &self.ext,
            [
                [e[0][0].sigma(), e[0][1].sigma()],
                [e[1][0].sigma(), e[1][1].sigma()],
            ],
        )
    }

    pub fn det(&self) -> Result<QuadExtElem> {
        let e = &self.entries;
        e[0][0].mul(&e[1][1])?.sub(&e[0][1].mul(&e[1][0])?)
    }
}

/// Outcome of testing `g sigma(g) = c I`.
#[derive(Clone, Debug)]
pub struct CocycleCheck {
    pub is_cocycle: bool,
    /// The scalar `c`, an element of the base field `K` (zero s-component
    /// asserted), present when `is_cocycle`.
    pub scalar: Option<LocalElem>,
}

/// Computes `g sigma(g)` and reports whether it is a scalar matrix; the
/// scalar automatically lies in `K`.
pub fn cocycle_check(g: &Mat2L) -> Result<CocycleCheck> {
    if g.det()?.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let prod = g.mul(&g.sigma())?;
    let e = prod.entries();
    let off_zero = e[0][1].is_zero() && e[1][0].is_zero();
    let diag_equal = e[0][0] == e[1][1];
    if off_zero && diag_equal {
        let c = &e[0][0];
        debug_assert!(c.v().is_zero(), "cocycle scalar has a nonzero s-component");
        Ok(CocycleCheck { is_cocycle: true, scalar: Some(c.u().clone()) })
    } else {
        Ok(CocycleCheck { is_cocycle: false, scalar: None })
    }
}

/// The matrix `h = [[0, b], [1, 0]]` representing the class of `(a, b)`;
/// validated by its defining property `h sigma(h) = b I`.
pub fn standard_cocycle(a: &LocalElem, b: &LocalElem) -> Result<(QuadExt, Mat2L)> {
    if b.is_zero() {
        return Err(Error::ZeroElement);
    }
    let ext = QuadExt::new(a.clone())?;
    let h = Mat2L::new(
        &ext,
        [
            [ext.zero(), ext.from_base(b.clone())],
            [ext.one(), ext.zero()],
        ],
    );
    let check = cocycle_check(&h)?;
    debug_assert!(check.is_cocycle);
    debug_assert!(check.scalar.as_ref() == Some(b));
    Ok((ext, h))
}

/// Result of the norm-parity obstruction test.
#[derive(Clone, Debug)]
pub struct NormObstruction {
    /// `false` when `nu(b/e)` is odd: `b/e = Norm(c)` is then unsolvable
    /// since norms have even valuation, so the two cocycles cannot be
    /// cohomologous. `true` means "not obstructed by this test" only.
    pub cohomologous_possible: bool,
    pub parity_witness: u8,
}

/// The parity obstruction: compares the scalar `e` of an integral cocycle
/// with the scalar `b` of the standard one through `nu(b/e) mod 2`.
pub fn norm_obstruction(e: &LocalElem, b: &LocalElem) -> Result<NormObstruction> {
    let ve = e.nu()?;
    if ve != 0 {
        return Err(Error::NotAUnit(ve));
    }
    let parity = b.nu()?.rem_euclid(2) as u8;
    Ok(NormObstruction { cohomologous_possible: parity == 0, parity_witness: parity })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::FqField;
    use crate::poly::Poly;

    fn place_t(p: u64) -> Place {
        let f = FqField::new(p, 1).unwrap();
        Place::finite(Poly::x(&f)).unwrap()
    }

    fn elem(place: &Place, s: &str) -> LocalElem {
        LocalElem::from_poly(place, &Poly::parse(s, place.base_field()).unwrap())
    }

    fn ext3() -> QuadExt {
        let t3 = place_t(3);
        QuadExt::new(elem(&t3, "2")).unwrap()
    }

    #[test]
    fn construction_guards() {
        let t3 = place_t(3);
        assert!(matches!(QuadExt::new(elem(&t3, "t")), Err(Error::NotAUnit(1))));
        assert!(matches!(QuadExt::new(elem(&t3, "1")), Err(Error::SquareInput)));
        assert!(QuadExt::new(elem(&t3, "2")).is_ok());
    }

    #[test]
    fn sigma_involution() {
        let ext = ext3();
        let place = ext.place().clone();
        let x = ext.elem(elem(&place, "1+t"), elem(&place, "t^2+2"));
        assert_eq!(x.sigma().sigma(), x);
        let c = ext.from_base(elem(&place, "t+2"));
        assert_eq!(c.sigma(), c);
        let s = ext.s();
        assert_eq!(
            ext.elem(elem(&place, "1"), elem(&place, "1")).sigma(),
            ext.elem(elem(&place, "1"), elem(&place, "-1"))
        );
        let _ = s;
    }

    #[test]
    fn norm_examples() {
        let ext = ext3();
        let place = ext.place().clone();
        // Norm(1 + s) with a = 2: 1 - 2 = -1 = 2
        let c = ext.elem(elem(&place, "1"), elem(&place, "1"));
        assert_eq!(c.norm().unwrap(), elem(&place, "2"));
        assert_eq!(c.norm_valuation_parity().unwrap(), 0);

        // Norm(t(1+s)) = t^2 (1 - 2) = -t^2, valuation 2
        let ct = ext.elem(elem(&place, "t"), elem(&place, "t"));
        assert_eq!(ct.norm().unwrap().nu().unwrap(), 2);
        assert_eq!(ct.norm_valuation_parity().unwrap(), 0);
    }

    #[test]
    fn norm_multiplicative() {
        let ext = ext3();
        let place = ext.place().clone();
        let c1 = ext.elem(elem(&place, "1+t"), elem(&place, "2"));
        let c2 = ext.elem(elem(&place, "t"), elem(&place, "1+2*t"));
        let lhs = c1.mul(&c2).unwrap().norm().unwrap();
        let rhs = c1.norm().unwrap().mul(&c2.norm().unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn cocycle_examples() {
        let ext = ext3();
        let place = ext.place().clone();
        let b = elem(&place, "t");
        let (_, h) = standard_cocycle(ext.a(), &b).unwrap();
        let check = cocycle_check(&h).unwrap();
        assert!(check.is_cocycle);
        assert_eq!(check.scalar.unwrap(), b);

        let id = Mat2L::identity(&ext);
        let check_id = cocycle_check(&id).unwrap();
        assert!(check_id.is_cocycle);
        assert_eq!(check_id.scalar.unwrap(), LocalElem::one(&place));

        // [[1,1],[0,1]] squares to [[1,2],[0,1]], not scalar
        let m = Mat2L::new(
            &ext,
            [
                [ext.one(), ext.one()],
                [ext.zero(), ext.one()],
            ],
        );
        let check_m = cocycle_check(&m).unwrap();
        assert!(!check_m.is_cocycle);
        assert!(check_m.scalar.is_none());

        // singular matrix rejected
        let sing = Mat2L::new(
            &ext,
            [
                [ext.one(), ext.one()],
                [ext.one(), ext.one()],
            ],
        );
        assert!(matches!(cocycle_check(&sing), Err(Error::SingularMatrix)));
    }

    #[test]
    fn obstruction_examples() {
        let t3 = place_t(3);
        let one = LocalElem::one(&t3);
        let ob = norm_obstruction(&one, &elem(&t3, "t")).unwrap();
        assert!(!ob.cohomologous_possible);
        assert_eq!(ob.parity_witness, 1);

        let ob2 = norm_obstruction(&one, &elem(&t3, "t^2")).unwrap();
        assert!(ob2.cohomologous_possible);
        assert_eq!(ob2.parity_witness, 0);

        let ob3 = norm_obstruction(&elem(&t3, "2"), &elem(&t3, "2*t^3")).unwrap();
        assert!(!ob3.cohomologous_possible);
        assert_eq!(ob3.parity_witness, 1);

        assert!(matches!(
            norm_obstruction(&elem(&t3, "t"), &one),
            Err(Error::NotAUnit(1))
        ));
    }

    #[test]
    fn h_squared_is_b_times_identity() {
        // h has entries in K, so sigma(h) = h and the check computes h^2
        let ext = ext3();
        let place = ext.place().clone();
        let (_, h) = standard_cocycle(ext.a(), &elem(&place, "1")).unwrap();
        let sq = h.mul(&h).unwrap();
        assert_eq!(sq, Mat2L::identity(&ext));
    }
}
