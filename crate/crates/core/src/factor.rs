//! Complete factorization of univariate polynomials over `F_q`:
//! squarefree split (with the p-th-power fallback), distinct-degree
//! separation, then randomized equal-degree splitting.
//!
//! The splitting randomness only influences the execution path; the output
//! is the sorted factor list, which is seed-independent.

use num_bigint::BigUint;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fq::FqElem;
use crate::poly::Poly;

/// `unit * prod(pi_i ^ m_i)`, factors monic irreducible, pairwise distinct,
/// sorted by (degree, coefficient tuple).
#[derive(Clone, Debug)]
pub struct Factorization {
    pub unit: FqElem,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    /// Re-multiplies the factorization; used as the exactness check.
    pub fn product(&self) -> Poly {
        let mut acc = Poly::constant(self.unit.clone());
        for (f, m) in &self.factors {
            acc = acc.mul(&f.pow_u(*m as u64));
        }
        acc
    }
}

/// Complete factorization of a nonzero polynomial.
pub fn factor(f: &Poly, rng: &mut ChaCha8Rng) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let unit = f.leading_coeff().unwrap().clone();
    let monic = f.monic();
    let mut factors: Vec<(Poly, u32)> = vec![];
    collect_factors(&monic, 1, rng, &mut factors);
    factors.sort_by(|(a, _), (b, _)| a.cmp_order(b));
    let fac = Factorization { unit, factors };
    debug_assert!(fac.product() == *f, "factorization re-multiplication failed");
    Ok(fac)
}

/// Recursive layer: peel off factors whose multiplicity is not divisible by
/// p, then take a p-th root of what remains.
fn collect_factors(f: &Poly, mult_scale: u32, rng: &mut ChaCha8Rng, out: &mut Vec<(Poly, u32)>) {
    if f.degree() == Some(0) || f.is_zero() {
        return;
    }
    let deriv = f.derivative();
    if deriv.is_zero() {
        let root = pth_root(f);
        let p = f.field().p() as u32;
        collect_factors(&root, mult_scale * p, rng, out);
        return;
    }
    // product of the distinct irreducible factors with multiplicity not
    // divisible by p
    let squarefree = f.div_exact(&f.gcd(&deriv));
    let mut remaining = f.clone();
    for irr in squarefree_irreducibles(&squarefree, rng) {
        let mut m = 0u32;
        loop {
            let (q, r) = remaining.divrem(&irr).expect("nonzero divisor");
            if !r.is_zero() {
                break;
            }
            remaining = q;
            m += 1;
        }
        debug_assert!(m >= 1);
        out.push((irr, m * mult_scale));
    }
    // what is left has every multiplicity divisible by p
    collect_factors(&remaining, mult_scale, rng, out);
}

/// `f(t) = g(t)^p` for polynomials with vanishing derivative; coefficient
/// p-th roots are the inverse Frobenius `c -> c^(p^(d-1))`.
fn pth_root(f: &Poly) -> Poly {
    let field = f.field();
    let p = field.p() as usize;
    let d = field.degree() as u32;
    let e = field.p().pow(d.saturating_sub(1));
    let mut coeffs = vec![];
    let mut i = 0;
    while i <= f.degree().unwrap_or(0) {
        coeffs.push(f.coeff(i).pow_u(e));
        i += p;
    }
    Poly::from_coeffs(field, coeffs)
}

/// Distinct irreducible factors of a squarefree monic polynomial.
fn squarefree_irreducibles(f: &Poly, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let mut out = vec![];
    let q = f.field().size();
    let x = Poly::x(f.field());
    let mut rest = f.clone();
    let mut d = 1usize;
    // x^(q^d) mod rest, maintained by repeated q-th powers
    let mut frob = powmod_u64(&x, q, &rest);
    loop {
        let deg = match rest.degree() {
            None | Some(0) => break,
            Some(dg) => dg,
        };
        if deg < 2 * d {
            // what remains is irreducible
            out.push(rest.monic());
            break;
        }
        let g = rest.gcd(&frob.sub(&x));
        if g.degree().map_or(false, |dg| dg > 0) {
            equal_degree_split(&g, d, rng, &mut out);
            rest = rest.div_exact(&g);
            if rest.degree().map_or(true, |dg| dg == 0) {
                break;
            }
            frob = frob.rem(&rest).expect("rest nonzero");
        }
        d += 1;
        frob = powmod_u64(&frob, q, &rest);
    }
    out
}

/// Cantor-Zassenhaus splitting of a product of distinct irreducibles of the
/// same degree `d` (odd q).
fn equal_degree_split(f: &Poly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) {
    let deg = f.degree().expect("nonzero");
    if deg == d {
        out.push(f.monic());
        return;
    }
    let field = f.field();
    let q = field.size();
    let exponent = (BigUint::from(q).pow(d as u32) - 1u32) / 2u32;
    loop {
        let coeffs: Vec<FqElem> = (0..deg)
            .map(|_| field.elem_from_index(rng.gen_range(0..field.size())))
            .collect();
        let r = Poly::from_coeffs(field, coeffs);
        if r.degree().is_none() {
            continue;
        }
        let w = powmod_big(&r, &exponent, f).sub(&Poly::one(field));
        let g = f.gcd(&w);
        if let Some(dg) = g.degree() {
            if dg > 0 && dg < deg {
                equal_degree_split(&g, d, rng, out);
                equal_degree_split(&f.div_exact(&g), d, rng, out);
                return;
            }
        }
    }
}

fn powmod_u64(base: &Poly, mut e: u64, modulus: &Poly) -> Poly {
    let mut acc = Poly::one(base.field());
    let mut b = base.rem(modulus).expect("nonzero modulus");
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&b).rem(modulus).unwrap();
        }
        b = b.mul(&b).rem(modulus).unwrap();
        e >>= 1;
    }
    acc
}

fn powmod_big(base: &Poly, e: &BigUint, modulus: &Poly) -> Poly {
    let mut acc = Poly::one(base.field());
    let mut b = base.rem(modulus).expect("nonzero modulus");
    for i in 0..e.bits() {
        if e.bit(i) {
            acc = acc.mul(&b).rem(modulus).unwrap();
        }
        b = b.mul(&b).rem(modulus).unwrap();
    }
    acc
}

/// Deterministic irreducibility test (Rabin): `x^(q^n) = x mod f` and
/// `gcd(x^(q^(n/l)) - x, f) = 1` for every prime `l | n`.
pub fn is_irreducible(f: &Poly) -> bool {
    let n = match f.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let g = f.monic();
    let q = f.field().size();
    let x = Poly::x(f.field());
    let mut frob_pows = Vec::with_capacity(n + 1);
    frob_pows.push(x.clone());
    for _ in 0..n {
        let next = powmod_u64(frob_pows.last().unwrap(), q, &g);
        frob_pows.push(next);
    }
    if frob_pows[n] != x.rem(&g).unwrap() {
        return false;
    }
    let mut primes = vec![];
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            primes.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        primes.push(m);
    }
    for ell in primes {
        if !g.gcd(&frob_pows[n / ell].sub(&x)).is_one() {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::FqField;
    use rand::SeedableRng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(0)
    }

    #[test]
    fn factor_examples() {
        let f3 = FqField::new(3, 1).unwrap();
        // t^2 - 1 = (t+1)(t+2) over F_3
        let f = Poly::parse("t^2-1", &f3).unwrap();
        let fac = factor(&f, &mut rng()).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.factors[0].0, Poly::parse("t+1", &f3).unwrap());
        assert_eq!(fac.factors[1].0, Poly::parse("t+2", &f3).unwrap());

        // t^2 + 1 irreducible over F_3
        let g = Poly::parse("t^2+1", &f3).unwrap();
        let fac = factor(&g, &mut rng()).unwrap();
        assert_eq!(fac.factors, vec![(g.clone(), 1)]);
        assert!(is_irreducible(&g));

        // t^3 (t+1)^2 over F_5
        let f5 = FqField::new(5, 1).unwrap();
        let h = Poly::parse("t^3*(t+1)^2", &f5).unwrap();
        let fac = factor(&h, &mut rng()).unwrap();
        assert_eq!(
            fac.factors,
            vec![
                (Poly::x(&f5), 3),
                (Poly::parse("t+1", &f5).unwrap(), 2)
            ]
        );
    }

    #[test]
    fn zero_poly_rejected() {
        let f3 = FqField::new(3, 1).unwrap();
        assert!(matches!(factor(&Poly::zero(&f3), &mut rng()), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn pth_power_multiplicities() {
        // t^3 + 1 = (t+1)^3 over F_3: derivative vanishes... (3t^2 = 0)
        let f3 = FqField::new(3, 1).unwrap();
        let f = Poly::parse("t^3+1", &f3).unwrap();
        let fac = factor(&f, &mut rng()).unwrap();
        assert_eq!(fac.factors, vec![(Poly::parse("t+1", &f3).unwrap(), 3)]);
    }

    #[test]
    fn random_remultiplication() {
        let mut r = rng();
        for p in [3u64, 5, 7] {
            let field = FqField::new(p, 1).unwrap();
            for _ in 0..200 {
                let deg = r.gen_range(1..=9);
                let mut coeffs: Vec<FqElem> = (0..=deg)
                    .map(|_| field.elem_from_index(r.gen_range(0..field.size())))
                    .collect();
                if coeffs[deg].is_zero() {
                    coeffs[deg] = field.one();
                }
                let f = Poly::from_coeffs(&field, coeffs);
                let fac = factor(&f, &mut r).unwrap();
                assert_eq!(fac.product(), f);
                for (irr, _) in &fac.factors {
                    assert!(is_irreducible(irr));
                    assert!(irr.is_monic());
                }
            }
        }
    }

    #[test]
    fn factor_over_extension_field() {
        let f9 = FqField::new(3, 2).unwrap();
        // t^2 + 1 splits over F_9 since -1 is a square there
        let f = Poly::parse("t^2+1", &f9).unwrap();
        let fac = factor(&f, &mut rng()).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.product(), f);
        assert!(!is_irreducible(&f));
    }
}
