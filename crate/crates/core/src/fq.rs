//! Arithmetic in finite fields `F_{p^d}` of odd characteristic.
//!
//! A field is `F_p[x]/(modulus)` where the modulus is the canonical one for
//! `(p, d)`: the lexicographically smallest monic irreducible of degree `d`
//! (coefficient tuples compared low-to-high). Elements are coefficient
//! vectors in the power basis of the modulus. Everything is immutable and
//! exact; squares and square roots come with a deterministic tie-break so
//! that downstream reports are reproducible.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

/// Deterministic Miller-Rabin, valid for all `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_u64(acc, b, m);
        }
        b = mul_mod_u64(b, b, m);
        e >>= 1;
    }
    acc
}

struct FieldRepr {
    p: u64,
    d: usize,
    /// Monic irreducible over `F_p`, low-to-high, length `d + 1`.
    modulus: Vec<u64>,
    size: u64,
    nonsquare: OnceLock<Vec<u64>>,
}

/// A finite field `F_{p^d}`, `p` an odd prime.
///
/// Cheap to clone (shared representation). Two fields compare equal iff
/// they have the same `(p, d, modulus)`; fields built by [`FqField::new`]
/// with equal parameters are therefore interchangeable.
#[derive(Clone)]
pub struct FqField {
    repr: Arc<FieldRepr>,
}

impl PartialEq for FqField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.repr, &other.repr)
            || (self.repr.p == other.repr.p
                && self.repr.d == other.repr.d
                && self.repr.modulus == other.repr.modulus)
    }
}
impl Eq for FqField {}

impl fmt::Debug for FqField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.repr.size)
    }
}

impl fmt::Display for FqField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.repr.d == 1 {
            write!(f, "F_{}", self.repr.p)
        } else {
            write!(f, "F_{}^{} (= F_{})", self.repr.p, self.repr.d, self.repr.size)
        }
    }
}

impl FqField {
    /// Builds `F_{p^d}` with the canonical modulus: the lexicographically
    /// smallest monic irreducible of degree `d` over `F_p`. Degree 1 uses
    /// the modulus `x`.
    pub fn new(p: u64, d: usize) -> Result<FqField> {
        if p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        if d == 0 {
            return Err(Error::InvalidInput("extension degree must be >= 1".into()));
        }
        let mut size: u64 = 1;
        for _ in 0..d {
            size = size.checked_mul(p).filter(|&s| s < (1u64 << 62)).ok_or_else(|| {
                Error::InvalidInput(format!("field size p^d = {}^{} is too large", p, d))
            })?;
        }
        let modulus = if d == 1 {
            vec![0, 1]
        } else {
            canonical_modulus(p, d)
        };
        Ok(FqField {
            repr: Arc::new(FieldRepr { p, d, modulus, size, nonsquare: OnceLock::new() }),
        })
    }

    pub fn p(&self) -> u64 {
        self.repr.p
    }

    pub fn degree(&self) -> usize {
        self.repr.d
    }

    /// Field size `q = p^d`.
    pub fn size(&self) -> u64 {
        self.repr.size
    }

    /// Canonical modulus, coefficients low-to-high (length `d + 1`).
    pub fn modulus(&self) -> &[u64] {
        &self.repr.modulus
    }

    pub fn zero(&self) -> FqElem {
        FqElem { field: self.clone(), coeffs: vec![0; self.repr.d] }
    }

    pub fn one(&self) -> FqElem {
        self.from_u64(1)
    }

    /// The constant `n mod p`, embedded through the prime subfield.
    pub fn from_u64(&self, n: u64) -> FqElem {
        let mut coeffs = vec![0; self.repr.d];
        coeffs[0] = n % self.repr.p;
        FqElem { field: self.clone(), coeffs }
    }

    pub fn from_i64(&self, n: i64) -> FqElem {
        let p = self.repr.p as i64;
        self.from_u64(n.rem_euclid(p) as u64)
    }

    /// Element from power-basis coordinates (entries reduced mod `p`,
    /// padded or truncated-checked to length `d`).
    pub fn elem(&self, coeffs: &[u64]) -> Result<FqElem> {
        if coeffs.len() > self.repr.d && coeffs[self.repr.d..].iter().any(|&c| c % self.repr.p != 0) {
            return Err(Error::InvalidInput(format!(
                "coefficient vector of length {} in a degree-{} field",
                coeffs.len(),
                self.repr.d
            )));
        }
        let mut cs = vec![0; self.repr.d];
        for (i, &c) in coeffs.iter().take(self.repr.d).enumerate() {
            cs[i] = c % self.repr.p;
        }
        Ok(FqElem { field: self.clone(), coeffs: cs })
    }

    /// Element with lexicographic rank `i` (coefficient tuples ordered
    /// low-to-high, i.e. `c0` most significant).
    pub fn elem_from_index(&self, mut i: u64) -> FqElem {
        let p = self.repr.p;
        let d = self.repr.d;
        let mut coeffs = vec![0; d];
        for j in (0..d).rev() {
            coeffs[j] = i % p;
            i /= p;
        }
        FqElem { field: self.clone(), coeffs }
    }

    /// All field elements in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.repr.size).map(move |i| self.elem_from_index(i))
    }

    /// Lexicographically smallest non-square of the field (cached).
    pub fn canonical_nonsquare(&self) -> FqElem {
        let coeffs = self.repr.nonsquare.get_or_init(|| {
            for x in self.elements() {
                if !x.is_zero() && !x.is_square().expect("nonzero") {
                    return x.coeffs;
                }
            }
            unreachable!("every finite field of odd order has a non-square")
        });
        FqElem { field: self.clone(), coeffs: coeffs.clone() }
    }
}

/// An element of an [`FqField`], as coordinates in the power basis.
#[derive(Clone, PartialEq, Eq)]
pub struct FqElem {
    field: FqField,
    coeffs: Vec<u64>,
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FqElem {
    /// Renders as a polynomial in the power-basis generator `g`, terms in
    /// decreasing degree: `g^2+2*g+1`; prime-field elements are bare
    /// integers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for i in (0..self.coeffs.len()).rev() {
            let c = self.coeffs[i];
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (c, i) {
                (_, 0) => write!(f, "{}", c)?,
                (1, 1) => write!(f, "g")?,
                (1, _) => write!(f, "g^{}", i)?,
                (_, 1) => write!(f, "{}*g", c)?,
                (_, _) => write!(f, "{}*g^{}", c, i)?,
            }
        }
        Ok(())
    }
}

impl FqElem {
    pub fn field(&self) -> &FqField {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// Lexicographic rank: position in [`FqField::elements`].
    pub fn index(&self) -> u64 {
        let p = self.field.repr.p;
        self.coeffs.iter().fold(0u64, |acc, &c| acc * p + c)
    }

    fn assert_same_field(&self, other: &FqElem, what: &str) {
        assert!(self.field == other.field, "{}: operands in different fields", what);
    }

    pub fn add(&self, other: &FqElem) -> FqElem {
        self.assert_same_field(other, "add");
        let p = self.field.repr.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        FqElem { field: self.field.clone(), coeffs }
    }

    pub fn sub(&self, other: &FqElem) -> FqElem {
        self.assert_same_field(other, "sub");
        let p = self.field.repr.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + p - b) % p)
            .collect();
        FqElem { field: self.field.clone(), coeffs }
    }

    pub fn neg(&self) -> FqElem {
        let p = self.field.repr.p;
        let coeffs = self.coeffs.iter().map(|&a| (p - a) % p).collect();
        FqElem { field: self.field.clone(), coeffs }
    }

    pub fn mul(&self, other: &FqElem) -> FqElem {
        self.assert_same_field(other, "mul");
        let p = self.field.repr.p;
        let d = self.field.repr.d;
        if d == 1 {
            return FqElem {
                field: self.field.clone(),
                coeffs: vec![mul_mod_u64(self.coeffs[0], other.coeffs[0], p)],
            };
        }
        let mut tmp = vec![0u64; 2 * d - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                tmp[i + j] = (tmp[i + j] + mul_mod_u64(a, b, p)) % p;
            }
        }
        reduce_by_modulus(&mut tmp, &self.field.repr.modulus, p);
        tmp.truncate(d);
        FqElem { field: self.field.clone(), coeffs: tmp }
    }

    /// Multiplicative inverse. Errors with [`Error::DivisionByZero`] on 0.
    pub fn inv(&self) -> Result<FqElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.field.repr.p;
        let inv = pv_inv_mod(&self.coeffs, &self.field.repr.modulus, p);
        let mut coeffs = inv;
        coeffs.resize(self.field.repr.d, 0);
        Ok(FqElem { field: self.field.clone(), coeffs })
    }

    pub fn div(&self, other: &FqElem) -> Result<FqElem> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(self.mul(&other.inv()?))
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, e: i64) -> Result<FqElem> {
        if e < 0 {
            return Ok(self.inv()?.pow_u(e.unsigned_abs()));
        }
        Ok(self.pow_u(e as u64))
    }

    pub fn pow_u(&self, mut e: u64) -> FqElem {
        let mut acc = self.field.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Euler's criterion: `x^((q-1)/2) = 1`. Zero is rejected rather than
    /// classified.
    pub fn is_square(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let e = (self.field.repr.size - 1) / 2;
        let t = self.pow_u(e);
        debug_assert!(t.is_one() || t == self.field.one().neg());
        Ok(t.is_one())
    }

    /// Square root with a deterministic tie-break: of the two roots `±y`,
    /// the one whose coefficient tuple is lexicographically smaller.
    pub fn sqrt(&self) -> Result<FqElem> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        if !self.is_square()? {
            return Err(Error::NotASquare);
        }
        let q = self.field.repr.size;
        let y = if q % 4 == 3 {
            self.pow_u((q + 1) / 4)
        } else {
            self.tonelli_shanks()
        };
        debug_assert!(y.mul(&y) == *self);
        let y_neg = y.neg();
        Ok(if y.index() <= y_neg.index() { y } else { y_neg })
    }

    /// Two-torsion descent for `q = 1 (mod 4)`.
    fn tonelli_shanks(&self) -> FqElem {
        let q = self.field.repr.size;
        let mut m = q - 1;
        let mut s = 0u32;
        while m % 2 == 0 {
            m /= 2;
            s += 1;
        }
        let mut r = self.pow_u((m + 1) / 2);
        let mut t = self.pow_u(m);
        let mut c = self.field.canonical_nonsquare().pow_u(m);
        while !t.is_one() {
            let mut i = 0u32;
            let mut probe = t.clone();
            while !probe.is_one() {
                probe = probe.mul(&probe);
                i += 1;
            }
            let mut b = c.clone();
            for _ in 0..(s - i - 1) {
                b = b.mul(&b);
            }
            r = r.mul(&b);
            c = b.mul(&b);
            t = t.mul(&c);
            s = i;
        }
        r
    }
}

/// Reduces a coefficient vector in place by a monic modulus.
fn reduce_by_modulus(tmp: &mut [u64], modulus: &[u64], p: u64) {
    let d = modulus.len() - 1;
    for i in (d..tmp.len()).rev() {
        let c = tmp[i];
        if c == 0 {
            continue;
        }
        tmp[i] = 0;
        for j in 0..d {
            if modulus[j] != 0 {
                let sub = mul_mod_u64(c, modulus[j], p);
                tmp[i - d + j] = (tmp[i - d + j] + p - sub) % p;
            }
        }
    }
}

// ---- raw polynomial helpers over F_p (used for element inversion and the
// ---- canonical-modulus search) ----

fn pv_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn pv_deg(v: &[u64]) -> Option<usize> {
    v.iter().rposition(|&c| c != 0)
}

fn pv_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let db = pv_deg(b).expect("division by zero polynomial");
    let lead_inv = pow_mod_u64(b[db], p - 2, p);
    let mut rem: Vec<u64> = a.to_vec();
    pv_trim(&mut rem);
    let mut quot = vec![0u64; rem.len().saturating_sub(db).max(1)];
    while let Some(dr) = pv_deg(&rem) {
        if dr < db {
            break;
        }
        let c = mul_mod_u64(rem[dr], lead_inv, p);
        quot[dr - db] = c;
        for j in 0..=db {
            let sub = mul_mod_u64(c, b[j], p);
            rem[dr - db + j] = (rem[dr - db + j] + p - sub) % p;
        }
    }
    pv_trim(&mut rem);
    pv_trim(&mut quot);
    (quot, rem)
}

fn pv_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod_u64(x, y, p)) % p;
        }
    }
    pv_trim(&mut out);
    out
}

fn pv_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    pv_trim(&mut out);
    out
}

/// Inverse of `a` modulo the monic irreducible `m`, by extended Euclid.
fn pv_inv_mod(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r0: Vec<u64> = m.to_vec();
    let mut r1: Vec<u64> = a.to_vec();
    pv_trim(&mut r0);
    pv_trim(&mut r1);
    let mut t0: Vec<u64> = vec![];
    let mut t1: Vec<u64> = vec![1];
    while !r1.is_empty() {
        let (q, r) = pv_divrem(&r0, &r1, p);
        let t = pv_sub(&t0, &pv_mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t);
    }
    // r0 = gcd, a constant since m is irreducible and a != 0 mod m
    let c = r0[0];
    debug_assert_eq!(pv_deg(&r0), Some(0));
    let cinv = pow_mod_u64(c, p - 2, p);
    let mut out = t0;
    for x in out.iter_mut() {
        *x = mul_mod_u64(*x, cinv, p);
    }
    let (_, rem) = pv_divrem(&out, m, p);
    rem
}

/// Deterministic irreducibility over `F_p` (Rabin's test on raw vectors).
fn pv_is_irreducible(f: &[u64], p: u64) -> bool {
    let d = match pv_deg(f) {
        Some(0) | None => return false,
        Some(1) => return true,
        Some(d) => d,
    };
    // x^(p^i) mod f, computed by iterating the Frobenius.
    let xp = {
        // x^p mod f by square-and-multiply
        let mut acc = vec![1u64];
        let mut base = vec![0, 1];
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                let m = pv_mul(&acc, &base, p);
                acc = pv_divrem(&m, f, p).1;
            }
            let m = pv_mul(&base, &base, p);
            base = pv_divrem(&m, f, p).1;
            e >>= 1;
        }
        acc
    };
    let frob = |g: &[u64]| -> Vec<u64> {
        // g(x)^p mod f = g(x^p) mod f by substitution
        let mut acc: Vec<u64> = vec![];
        for i in (0..g.len()).rev() {
            let m = pv_mul(&acc, &xp, p);
            acc = pv_divrem(&m, f, p).1;
            if g[i] != 0 {
                if acc.is_empty() {
                    acc = vec![g[i]];
                } else {
                    acc[0] = (acc[0] + g[i]) % p;
                }
            }
            pv_trim(&mut acc);
        }
        acc
    };
    let x: Vec<u64> = vec![0, 1];
    let mut fr: Vec<Vec<u64>> = Vec::with_capacity(d + 1);
    fr.push(x.clone()); // x^(p^0)
    for _ in 0..d {
        let next = frob(fr.last().unwrap());
        fr.push(next);
    }
    if fr[d] != x {
        return false;
    }
    let mut primes = vec![];
    let mut n = d;
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            primes.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        primes.push(n);
    }
    for ell in primes {
        let diff = pv_sub(&fr[d / ell], &x, p);
        let mut g0: Vec<u64> = f.to_vec();
        let mut g1 = diff;
        while !g1.is_empty() {
            let (_, r) = pv_divrem(&g0, &g1, p);
            g0 = std::mem::replace(&mut g1, r);
        }
        if pv_deg(&g0) != Some(0) {
            return false;
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree `d` over `F_p`.
fn canonical_modulus(p: u64, d: usize) -> Vec<u64> {
    let mut total: u64 = 1;
    for _ in 0..d {
        total *= p;
    }
    for idx in 0..total {
        let mut f = vec![0u64; d + 1];
        f[d] = 1;
        // c0 is the most significant digit of the lexicographic rank
        let mut k = idx;
        for j in (0..d).rev() {
            f[j] = k % p;
            k /= p;
        }
        if pv_is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducibles of every degree exist over F_p")
}

/// An embedding `F_{p^d} -> F_{p^D}` with `d | D`, determined by sending the
/// source power-basis generator to the lexicographically smallest root of
/// the source modulus in the destination.
#[derive(Clone)]
pub struct Embedding {
    src: FqField,
    dst: FqField,
    gen_pows: Vec<FqElem>,
}

impl Embedding {
    pub fn identity(field: &FqField) -> Embedding {
        let gen_pows = power_basis_pows(field);
        Embedding { src: field.clone(), dst: field.clone(), gen_pows }
    }

    pub fn new(src: &FqField, dst: &FqField) -> Result<Embedding> {
        if src.p() != dst.p() || dst.degree() % src.degree() != 0 {
            return Err(Error::InvalidInput(format!(
                "no embedding of {} into {}",
                src, dst
            )));
        }
        if src == dst {
            return Ok(Embedding::identity(src));
        }
        if src.degree() == 1 {
            return Ok(Embedding {
                src: src.clone(),
                dst: dst.clone(),
                gen_pows: vec![dst.one()],
            });
        }
        let root = smallest_root_of_modulus(src, dst)?;
        let mut gen_pows = Vec::with_capacity(src.degree());
        let mut acc = dst.one();
        for _ in 0..src.degree() {
            gen_pows.push(acc.clone());
            acc = acc.mul(&root);
        }
        Ok(Embedding { src: src.clone(), dst: dst.clone(), gen_pows })
    }

    pub fn src(&self) -> &FqField {
        &self.src
    }

    pub fn dst(&self) -> &FqField {
        &self.dst
    }

    pub fn map(&self, x: &FqElem) -> FqElem {
        assert!(x.field() == &self.src, "embedding applied to a foreign element");
        let mut acc = self.dst.zero();
        for (c, pow) in x.coeffs().iter().zip(&self.gen_pows) {
            if *c != 0 {
                acc = acc.add(&pow.mul(&self.dst.from_u64(*c)));
            }
        }
        acc
    }
}

fn power_basis_pows(field: &FqField) -> Vec<FqElem> {
    let d = field.degree();
    let mut pows = Vec::with_capacity(d);
    for i in 0..d {
        let mut coeffs = vec![0u64; d];
        coeffs[i] = 1;
        pows.push(FqElem { field: field.clone(), coeffs });
    }
    pows
}

/// Evaluates the source modulus (a prime-subfield polynomial) at `x` in the
/// destination and scans for the lexicographically smallest root.
fn smallest_root_of_modulus(src: &FqField, dst: &FqField) -> Result<FqElem> {
    let modulus = src.modulus();
    let eval = |x: &FqElem| -> FqElem {
        let mut acc = dst.zero();
        for &c in modulus.iter().rev() {
            acc = acc.mul(x);
            if c != 0 {
                acc = acc.add(&dst.from_u64(c));
            }
        }
        acc
    };
    const SCAN_BOUND: u64 = 50_000;
    if dst.size() <= SCAN_BOUND {
        for x in dst.elements() {
            if eval(&x).is_zero() {
                return Ok(x);
            }
        }
        Err(Error::InvalidInput(format!(
            "modulus of {} has no root in {}",
            src, dst
        )))
    } else {
        // Root-finding via full factorization of the modulus over dst; the
        // randomized splitting only affects the path, the sorted factor list
        // (hence the chosen root) is deterministic.
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x0f1e_2d3c_4b5a_6978);
        let poly = crate::poly::Poly::from_coeffs(
            dst,
            modulus.iter().map(|&c| dst.from_u64(c)).collect(),
        );
        let fac = crate::factor::factor(&poly, &mut rng)?;
        let mut roots: Vec<FqElem> = fac
            .factors
            .iter()
            .filter(|(f, _)| f.degree() == Some(1))
            .map(|(f, _)| f.coeff(0).neg())
            .collect();
        roots.sort_by_key(|r| r.index());
        roots.into_iter().next().ok_or_else(|| {
            Error::InvalidInput(format!("modulus of {} has no root in {}", src, dst))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64, d: usize) -> FqField {
        FqField::new(p, d).unwrap()
    }

    #[test]
    fn canonical_fields() {
        assert_eq!(f(3, 1).modulus(), &[0, 1]);
        // enumerate monic quadratics over F_3 in lex order: x^2, x^2+x,
        // x^2+2x all have roots; x^2+1 is the first without one
        assert_eq!(f(3, 2).modulus(), &[1, 0, 1]);
        assert!(matches!(FqField::new(2, 1), Err(Error::EvenCharacteristic)));
        assert!(matches!(FqField::new(9, 1), Err(Error::NotPrime(9))));
    }

    #[test]
    fn arithmetic_examples() {
        let f7 = f(7, 1);
        assert_eq!(f7.from_u64(3).mul(&f7.from_u64(5)), f7.one());
        let f9 = f(3, 2);
        let g = f9.elem(&[0, 1]).unwrap();
        assert_eq!(g.add(&g), f9.elem(&[0, 2]).unwrap());
        let f5 = f(5, 1);
        assert_eq!(f5.from_u64(2).pow(-1).unwrap(), f5.from_u64(3));
    }

    #[test]
    fn inverse_round_trip() {
        for (p, d) in [(3, 1), (5, 1), (7, 2), (3, 3)] {
            let field = f(p, d);
            for x in field.elements().skip(1) {
                let inv = x.inv().unwrap();
                assert!(x.mul(&inv).is_one(), "bad inverse in {}", field);
            }
        }
    }

    #[test]
    fn squares_match_enumeration() {
        // brute-force oracle: the set {y^2 : y in F_q*}
        for (p, d) in [(3, 1), (5, 1), (7, 1), (11, 1), (3, 2), (5, 2), (3, 4), (7, 2), (11, 2)] {
            let field = f(p, d);
            let mut is_sq = vec![false; field.size() as usize];
            for y in field.elements().skip(1) {
                is_sq[y.mul(&y).index() as usize] = true;
            }
            let mut count = 0u64;
            for x in field.elements().skip(1) {
                assert_eq!(x.is_square().unwrap(), is_sq[x.index() as usize]);
                if is_sq[x.index() as usize] {
                    count += 1;
                }
            }
            assert_eq!(count, (field.size() - 1) / 2);
        }
    }

    #[test]
    fn sqrt_examples_and_tiebreak() {
        let f7 = f(7, 1);
        assert_eq!(f7.from_u64(2).sqrt().unwrap(), f7.from_u64(3));
        let f5 = f(5, 1);
        assert_eq!(f5.from_u64(4).sqrt().unwrap(), f5.from_u64(2));
        let f3 = f(3, 1);
        assert!(matches!(f3.from_u64(2).sqrt(), Err(Error::NotASquare)));
        assert!(!f3.from_u64(2).is_square().unwrap());
        assert!(f5.from_u64(4).is_square().unwrap());
        assert!(f7.from_u64(2).is_square().unwrap());
    }

    #[test]
    fn sqrt_of_squares() {
        for (p, d) in [(3, 1), (5, 1), (13, 1), (3, 2), (5, 2)] {
            let field = f(p, d);
            for x in field.elements().skip(1) {
                let sq = x.mul(&x);
                let r = sq.sqrt().unwrap();
                assert_eq!(r.mul(&r), sq);
                // tie-break: returned root is the lex-smaller of the pair
                assert!(r.index() <= r.neg().index());
            }
        }
    }

    #[test]
    fn frobenius_fixes_field() {
        for (p, d) in [(3, 2), (5, 2), (3, 3)] {
            let field = f(p, d);
            for x in field.elements() {
                assert_eq!(x.pow_u(field.size()), x);
            }
        }
    }

    #[test]
    fn embedding_is_ring_hom() {
        let f3 = f(3, 1);
        let f9 = f(3, 2);
        let f81 = f(3, 4);
        let emb = Embedding::new(&f9, &f81).unwrap();
        for x in f9.elements() {
            for y in f9.elements().take(9) {
                assert_eq!(emb.map(&x.add(&y)), emb.map(&x).add(&emb.map(&y)));
                assert_eq!(emb.map(&x.mul(&y)), emb.map(&x).mul(&emb.map(&y)));
            }
        }
        let emb_p = Embedding::new(&f3, &f9).unwrap();
        assert_eq!(emb_p.map(&f3.from_u64(2)), f9.from_u64(2));
    }
}
