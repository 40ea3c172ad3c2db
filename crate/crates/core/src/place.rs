//! Closed points of the projective line over `F_q`: a monic irreducible
//! polynomial (finite place) or the point at infinity. A place carries its
//! residue field, realized as the canonical `F_{p^{d*m}}`, together with a
//! fixed isomorphism `F_q[t]/(pi) = F_{p^{d*m}}` recorded at construction.
//!
//! The isomorphism sends the residue of `t` to the lexicographically
//! smallest root of `pi` in the canonical field. Any fixed choice is correct
//! for the square-class questions downstream; fixing one keeps reports
//! reproducible.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::factor::is_irreducible;
use crate::fq::{Embedding, FqElem, FqField};
use crate::poly::Poly;
use crate::ratfn::RatFn;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlaceKind {
    Finite,
    Infinity,
}

struct PlaceRepr {
    base: FqField,
    kind: PlaceKind,
    /// Monic irreducible uniformizer (finite places only).
    pi: Option<Poly>,
    residue_field: FqField,
    base_emb: Embedding,
    /// Powers `theta^0 .. theta^(m-1)` of the chosen root of `pi`.
    theta_pows: Vec<FqElem>,
    /// Inverse of the digit -> residue map, as a matrix over F_p.
    from_residue: Vec<Vec<u64>>,
}

/// A place of the line over `F_q`, with its residue field data.
#[derive(Clone)]
pub struct Place {
    repr: Arc<PlaceRepr>,
}

impl PartialEq for Place {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.repr, &other.repr)
            || (self.repr.base == other.repr.base
                && self.repr.kind == other.repr.kind
                && self.repr.pi == other.repr.pi)
    }
}
impl Eq for Place {}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr.pi {
            Some(pi) => write!(f, "{}", pi),
            None => write!(f, "inf"),
        }
    }
}

impl Place {
    /// The finite place cut out by a monic irreducible polynomial.
    pub fn finite(pi: Poly) -> Result<Place> {
        if pi.degree().map_or(true, |d| d == 0) {
            return Err(Error::InvalidInput("a place needs a nonconstant polynomial".into()));
        }
        if !pi.is_monic() {
            return Err(Error::NotMonic);
        }
        if !is_irreducible(&pi) {
            return Err(Error::Reducible(pi.format_var('t')));
        }
        let base = pi.field().clone();
        let m = pi.degree().unwrap();
        let residue_field = FqField::new(base.p(), base.degree() * m)?;
        let base_emb = Embedding::new(&base, &residue_field)?;
        let theta = smallest_root(&pi, &base_emb)?;
        let mut theta_pows = Vec::with_capacity(m);
        let mut acc = residue_field.one();
        for _ in 0..m {
            theta_pows.push(acc.clone());
            acc = acc.mul(&theta);
        }
        let from_residue = invert_digit_map(&base, &base_emb, &theta_pows)?;
        Ok(Place {
            repr: Arc::new(PlaceRepr {
                base,
                kind: PlaceKind::Finite,
                pi: Some(pi),
                residue_field,
                base_emb,
                theta_pows,
                from_residue,
            }),
        })
    }

    /// The place at infinity; uniformizer `1/t`, residue field `F_q`.
    pub fn infinity(base: &FqField) -> Place {
        let base_emb = Embedding::identity(base);
        Place {
            repr: Arc::new(PlaceRepr {
                base: base.clone(),
                kind: PlaceKind::Infinity,
                pi: None,
                residue_field: base.clone(),
                base_emb,
                theta_pows: vec![base.one()],
                from_residue: vec![],
            }),
        }
    }

    pub fn base_field(&self) -> &FqField {
        &self.repr.base
    }

    pub fn residue_field(&self) -> &FqField {
        &self.repr.residue_field
    }

    pub fn kind(&self) -> &PlaceKind {
        &self.repr.kind
    }

    pub fn is_infinity(&self) -> bool {
        self.repr.kind == PlaceKind::Infinity
    }

    pub fn pi(&self) -> Option<&Poly> {
        self.repr.pi.as_ref()
    }

    /// Degree of the place over the base field (1 at infinity).
    pub fn degree(&self) -> usize {
        self.repr.pi.as_ref().and_then(|p| p.degree()).unwrap_or(1)
    }

    /// The uniformizer as a rational function: `pi` itself, or `1/t`.
    pub fn uniformizer_ratfn(&self) -> RatFn {
        match &self.repr.pi {
            Some(pi) => RatFn::from_poly(pi.clone()),
            None => RatFn::new(Poly::one(&self.repr.base), Poly::x(&self.repr.base))
                .expect("t is nonzero"),
        }
    }

    /// Residue of a digit representative (a polynomial of degree < m).
    pub(crate) fn digit_to_residue(&self, digit: &Poly) -> FqElem {
        debug_assert!(digit.degree().map_or(true, |d| d < self.degree()));
        let mut acc = self.repr.residue_field.zero();
        for (i, theta_pow) in self.repr.theta_pows.iter().enumerate() {
            let c = digit.coeff(i);
            if !c.is_zero() {
                acc = acc.add(&self.repr.base_emb.map(&c).mul(theta_pow));
            }
        }
        acc
    }

    /// Inverse of [`digit_to_residue`]: the degree-< m representative.
    pub(crate) fn residue_to_digit(&self, x: &FqElem) -> Poly {
        assert!(x.field() == &self.repr.residue_field);
        let p = self.repr.base.p();
        let n = self.repr.from_residue.len();
        if n == 0 {
            // place at infinity: residue field is the base field itself
            return Poly::constant(x.clone());
        }
        let mut digit_coords = vec![0u64; n];
        for (row, out) in self.repr.from_residue.iter().zip(digit_coords.iter_mut()) {
            let mut acc: u128 = 0;
            for (a, b) in row.iter().zip(x.coeffs()) {
                acc += (*a as u128) * (*b as u128);
            }
            *out = (acc % p as u128) as u64;
        }
        let d = self.repr.base.degree();
        let m = self.degree();
        let mut coeffs = Vec::with_capacity(m);
        for i in 0..m {
            let chunk = &digit_coords[i * d..(i + 1) * d];
            coeffs.push(self.repr.base.elem(chunk).expect("reduced coordinates"));
        }
        Poly::from_coeffs(&self.repr.base, coeffs)
    }

    /// Multiplicity of the place in a nonzero polynomial, with the cofactor.
    pub(crate) fn multiplicity(&self, f: &Poly) -> (i64, Poly) {
        let pi = self.repr.pi.as_ref().expect("finite place");
        let mut v = 0i64;
        let mut rest = f.clone();
        loop {
            let (q, r) = rest.divrem(pi).expect("pi nonzero");
            if r.is_zero() {
                v += 1;
                rest = q;
            } else {
                return (v, rest);
            }
        }
    }

    /// Valuation of a nonzero rational function at this place.
    pub fn valuation(&self, f: &RatFn) -> Result<i64> {
        if f.is_zero() {
            return Err(Error::ZeroElement);
        }
        match self.repr.kind {
            PlaceKind::Finite => {
                let (vn, _) = self.multiplicity(f.num());
                let (vd, _) = self.multiplicity(f.den());
                Ok(vn - vd)
            }
            PlaceKind::Infinity => {
                let dn = f.num().degree().unwrap() as i64;
                let dd = f.den().degree().unwrap() as i64;
                Ok(dd - dn)
            }
        }
    }

    /// Image of an integral rational function in the residue field
    /// (zero when the valuation is positive).
    pub fn residue(&self, f: &RatFn) -> Result<FqElem> {
        if f.is_zero() {
            return Ok(self.repr.residue_field.zero());
        }
        let v = self.valuation(f)?;
        if v < 0 {
            return Err(Error::NegativeValuation);
        }
        if v > 0 {
            return Ok(self.repr.residue_field.zero());
        }
        self.unit_residue(f)
    }

    /// Residue of the unit part `f * pi^(-v(f))`; nonzero by construction.
    pub(crate) fn unit_residue(&self, f: &RatFn) -> Result<FqElem> {
        if f.is_zero() {
            return Err(Error::ZeroElement);
        }
        match self.repr.kind {
            PlaceKind::Finite => {
                let pi = self.repr.pi.as_ref().unwrap();
                let (_, n1) = self.multiplicity(f.num());
                let (_, d1) = self.multiplicity(f.den());
                let rn = self.digit_to_residue(&n1.rem(pi)?);
                let rd = self.digit_to_residue(&d1.rem(pi)?);
                rn.div(&rd)
            }
            PlaceKind::Infinity => {
                let ln = f.num().leading_coeff().unwrap();
                let ld = f.den().leading_coeff().unwrap();
                ln.div(ld)
            }
        }
    }
}

/// Lexicographically smallest root of `pi` in the residue field, searching
/// by exhaustion at desk scale and by factorization beyond it.
fn smallest_root(pi: &Poly, emb: &Embedding) -> Result<FqElem> {
    let dst = emb.dst();
    const SCAN_BOUND: u64 = 50_000;
    if dst.size() <= SCAN_BOUND {
        for x in dst.elements() {
            if pi.eval_embedded(emb, &x).is_zero() {
                return Ok(x);
            }
        }
        Err(Error::InvalidInput(format!("no root of {} in {}", pi, dst)))
    } else {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x7a11_5eed_0000_0001);
        let lifted = Poly::from_coeffs(
            dst,
            pi.coeffs().iter().map(|c| emb.map(c)).collect(),
        );
        let fac = crate::factor::factor(&lifted, &mut rng)?;
        let mut roots: Vec<FqElem> = fac
            .factors
            .iter()
            .filter(|(f, _)| f.degree() == Some(1))
            .map(|(f, _)| f.coeff(0).neg())
            .collect();
        roots.sort_by_key(|r| r.index());
        roots
            .into_iter()
            .next()
            .ok_or_else(|| Error::InvalidInput(format!("no root of {} in {}", pi, dst)))
    }
}

/// Builds and inverts (over F_p) the linear map sending the coordinates of
/// a digit representative to the coordinates of its residue image.
fn invert_digit_map(
    base: &FqField,
    emb: &Embedding,
    theta_pows: &[FqElem],
) -> Result<Vec<Vec<u64>>> {
    let d = base.degree();
    let m = theta_pows.len();
    let n = d * m;
    let p = base.p();
    // forward matrix: column (i*d + j) = coords of emb(g^j) * theta^i
    let mut a = vec![vec![0u64; 2 * n]; n];
    for i in 0..m {
        for j in 0..d {
            let mut basis_coeffs = vec![0u64; d];
            basis_coeffs[j] = 1;
            let g_j = base.elem(&basis_coeffs).unwrap();
            let img = emb.map(&g_j).mul(&theta_pows[i]);
            for (row, &c) in img.coeffs().iter().enumerate() {
                a[row][i * d + j] = c;
            }
        }
    }
    // Gauss-Jordan on [A | I] over F_p
    for (row, rowvec) in a.iter_mut().enumerate() {
        rowvec[n + row] = 1;
    }
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| a[r][col] != 0)
            .ok_or_else(|| Error::InvalidInput("digit map is singular".into()))?;
        a.swap(col, pivot);
        let inv = mod_inv(a[col][col], p);
        for x in a[col].iter_mut() {
            *x = ((*x as u128 * inv as u128) % p as u128) as u64;
        }
        for r in 0..n {
            if r != col && a[r][col] != 0 {
                let factor = a[r][col];
                for k in 0..2 * n {
                    let sub = (factor as u128 * a[col][k] as u128) % p as u128;
                    a[r][k] = ((a[r][k] as u128 + p as u128 - sub) % p as u128) as u64;
                }
            }
        }
    }
    Ok(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

fn mod_inv(x: u64, p: u64) -> u64 {
    // p prime, x != 0
    let mut acc = 1u64;
    let mut b = x % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FqField {
        FqField::new(3, 1).unwrap()
    }

    #[test]
    fn place_construction() {
        let t = Place::finite(Poly::x(&f3())).unwrap();
        assert_eq!(t.residue_field().size(), 3);
        let q = Place::finite(Poly::parse("t^2+1", &f3()).unwrap()).unwrap();
        assert_eq!(q.residue_field().size(), 9);
        let inf = Place::infinity(&FqField::new(5, 1).unwrap());
        assert_eq!(inf.residue_field().size(), 5);
        assert!(matches!(
            Place::finite(Poly::parse("t^2-1", &f3()).unwrap()),
            Err(Error::Reducible(_))
        ));
        assert!(matches!(
            Place::finite(Poly::parse("2*t+1", &f3()).unwrap()),
            Err(Error::NotMonic)
        ));
    }

    #[test]
    fn residue_examples() {
        let f3 = f3();
        let t = Place::finite(Poly::x(&f3)).unwrap();
        // (t^2+t)/t = t+1 -> 1 at t = 0
        let f = RatFn::new(
            Poly::parse("t^2+t", &f3).unwrap(),
            Poly::x(&f3),
        )
        .unwrap();
        assert_eq!(t.residue(&f).unwrap(), f3.one());

        // t+1 at the place t^2+1 is theta+1 in F_9
        let q = Place::finite(Poly::parse("t^2+1", &f3).unwrap()).unwrap();
        let g = RatFn::from_poly(Poly::parse("t+1", &f3).unwrap());
        let theta = q.digit_to_residue(&Poly::x(&f3));
        assert_eq!(q.residue(&g).unwrap(), theta.add(&q.residue_field().one()));

        // (2t^2+1)/t^2 -> 2 at infinity over F_5
        let f5 = FqField::new(5, 1).unwrap();
        let inf = Place::infinity(&f5);
        let h = RatFn::new(
            Poly::parse("2*t^2+1", &f5).unwrap(),
            Poly::parse("t^2", &f5).unwrap(),
        )
        .unwrap();
        assert_eq!(inf.residue(&h).unwrap(), f5.from_u64(2));
    }

    #[test]
    fn negative_valuation_rejected() {
        let f3 = f3();
        let t = Place::finite(Poly::x(&f3)).unwrap();
        let f = RatFn::new(Poly::one(&f3), Poly::x(&f3)).unwrap();
        assert!(matches!(t.residue(&f), Err(Error::NegativeValuation)));
    }

    #[test]
    fn theta_is_root_and_iso_round_trips() {
        let f3 = f3();
        let pi = Poly::parse("t^2+1", &f3).unwrap();
        let place = Place::finite(pi.clone()).unwrap();
        let theta = place.digit_to_residue(&Poly::x(&f3));
        let emb = Embedding::new(&f3, place.residue_field()).unwrap();
        assert!(pi.eval_embedded(&emb, &theta).is_zero());
        // digit -> residue -> digit round trip on every residue element
        for x in place.residue_field().elements() {
            let digit = place.residue_to_digit(&x);
            assert_eq!(place.digit_to_residue(&digit), x);
        }
    }

    #[test]
    fn residue_is_ring_hom() {
        let f3 = f3();
        let place = Place::finite(Poly::parse("t^2+1", &f3).unwrap()).unwrap();
        let a = RatFn::from_poly(Poly::parse("t^3+2*t+1", &f3).unwrap());
        let b = RatFn::from_poly(Poly::parse("2*t^2+t", &f3).unwrap());
        let ra = place.residue(&a).unwrap();
        let rb = place.residue(&b).unwrap();
        assert_eq!(place.residue(&a.add(&b)).unwrap(), ra.add(&rb));
        assert_eq!(place.residue(&a.mul(&b)).unwrap(), ra.mul(&rb));
    }
}
