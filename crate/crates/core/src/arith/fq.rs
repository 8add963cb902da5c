//! The finite fields F_{p^s}, realized as F_p[x]/(f) for a fixed irreducible
//! polynomial f of degree s taken from a published (Conway-style) table, so
//! that all results are reproducible bit for bit. The chosen polynomial is
//! recorded in serialized output.

use std::fmt;
use std::sync::Arc;

use crate::Error;

/// A checked prime power q = p^s.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct PrimePower {
    pub p: u64,
    pub s: u32,
}

impl PrimePower {
    pub fn new(p: u64, s: u32) -> Result<Self, Error> {
        if !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        if s == 0 {
            return Err(Error::Invalid("extension degree must be >= 1".into()));
        }
        Ok(PrimePower { p, s })
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.s)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Conway polynomials C_{p,s}, stored as coefficient vectors
/// [c_0, ..., c_{s-1}] of the non-leading terms of the monic polynomial
/// x^s + c_{s-1} x^{s-1} + ... + c_0, reduced mod p.
fn conway_coeffs(p: u64, s: u32) -> Option<Vec<u64>> {
    let t: &[u64] = match (p, s) {
        (2, 1) => &[1],
        (2, 2) => &[1, 1],
        (2, 3) => &[1, 1, 0],
        (2, 4) => &[1, 1, 0, 0],
        (2, 5) => &[1, 0, 1, 0, 0],
        (2, 6) => &[1, 1, 0, 1, 1, 0],
        (3, 1) => &[1],
        (3, 2) => &[2, 2],
        (3, 3) => &[1, 2, 0],
        (3, 4) => &[2, 0, 0, 2],
        (3, 5) => &[1, 2, 0, 0, 0],
        (3, 6) => &[2, 2, 1, 0, 2, 0],
        (5, 1) => &[3],
        (5, 2) => &[2, 4],
        (5, 3) => &[3, 3, 0],
        (5, 4) => &[2, 4, 4, 0],
        (5, 5) => &[3, 4, 0, 0, 0],
        (5, 6) => &[2, 0, 1, 4, 1, 0],
        (7, 1) => &[4],
        (7, 2) => &[3, 6],
        (7, 3) => &[4, 0, 6],
        (7, 4) => &[3, 4, 5, 0],
        (7, 5) => &[4, 1, 0, 0, 0],
        (7, 6) => &[3, 6, 4, 5, 1, 0],
        _ => return None,
    };
    Some(t.to_vec())
}

/// Arithmetic context of one fixed field F_{p^s}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldCtx {
    pub base: PrimePower,
    /// Non-leading coefficients of the monic modulus, length s.
    pub modulus: Vec<u64>,
}

pub type Field = Arc<FieldCtx>;

impl FieldCtx {
    /// Field with the tabulated irreducible modulus. The table entry is
    /// validated for irreducibility at construction.
    pub fn new(p: u64, s: u32) -> Result<Field, Error> {
        let base = PrimePower::new(p, s)?;
        let modulus = conway_coeffs(p, s).ok_or_else(|| {
            Error::Invalid(format!("no tabulated irreducible polynomial for p={p}, s={s}"))
        })?;
        let ctx = FieldCtx { base, modulus };
        if s > 1 && !ctx.modulus_is_irreducible() {
            return Err(Error::Invalid(format!(
                "tabulated polynomial for p={p}, s={s} is not irreducible"
            )));
        }
        Ok(Arc::new(ctx))
    }

    pub fn p(&self) -> u64 {
        self.base.p
    }

    pub fn s(&self) -> usize {
        self.base.s as usize
    }

    pub fn q(&self) -> u64 {
        self.base.q()
    }

    /// Monic modulus as [c_0, ..., c_{s-1}, 1].
    pub fn modulus_full(&self) -> Vec<u64> {
        let mut f = self.modulus.clone();
        f.push(1);
        f
    }

    /// Human-readable modulus, e.g. "x^2 + 2x + 2" for C_{3,2}.
    pub fn modulus_string(&self) -> String {
        let s = self.s();
        let mut parts = vec![format!("x^{s}")];
        for d in (0..s).rev() {
            let c = self.modulus[d];
            if c == 0 {
                continue;
            }
            let term = match (d, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "x".into(),
                (1, c) => format!("{c}x"),
                (d, 1) => format!("x^{d}"),
                (d, c) => format!("{c}x^{d}"),
            };
            parts.push(term);
        }
        parts.join(" + ")
    }

    /// Full-blown irreducibility check: f divides x^(p^s) - x and is coprime
    /// to x^(p^(s/l)) - x for every prime l dividing s.
    fn modulus_is_irreducible(&self) -> bool {
        let p = self.p();
        let s = self.base.s;
        let f = self.modulus_full();
        let xq = poly_pow_x_q(p, &f, p.pow(s));
        // x^(p^s) == x mod f
        let mut x = vec![0u64, 1];
        poly_trim(&mut x);
        if poly_sub_modp(p, &xq, &x).iter().any(|&c| c != 0) {
            return false;
        }
        let mut l = 2;
        let mut rem = s;
        let mut primes = vec![];
        while rem > 1 {
            if rem % l == 0 {
                primes.push(l);
                while rem % l == 0 {
                    rem /= l;
                }
            }
            l += 1;
        }
        for l in primes {
            let d = s / l;
            let xd = poly_pow_x_q(p, &f, p.pow(d));
            let diff = poly_sub_modp(p, &xd, &x);
            let g = poly_gcd_modp(p, &diff, &f);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }

    pub fn zero(self: &Field) -> FqElement {
        FqElement { field: self.clone(), coeffs: vec![0; self.s()] }
    }

    pub fn one(self: &Field) -> FqElement {
        let mut e = FieldCtx::zero(self);
        e.coeffs[0] = 1;
        e
    }

    pub fn from_u64(self: &Field, v: u64) -> FqElement {
        let mut e = FieldCtx::zero(self);
        e.coeffs[0] = v % self.p();
        e
    }

    /// Element with the given coefficient vector (length s, entries mod p).
    pub fn element(self: &Field, coeffs: &[u64]) -> Result<FqElement, Error> {
        if coeffs.len() != self.s() {
            return Err(Error::Invalid(format!(
                "coefficient vector must have length {}",
                self.s()
            )));
        }
        Ok(FqElement {
            field: self.clone(),
            coeffs: coeffs.iter().map(|c| c % self.p()).collect(),
        })
    }

    /// All q elements, in lexicographic coefficient order.
    pub fn all_elements(self: &Field) -> Vec<FqElement> {
        let s = self.s();
        let p = self.p();
        let mut out = Vec::with_capacity(self.q() as usize);
        let mut idx = vec![0u64; s];
        loop {
            out.push(FqElement { field: self.clone(), coeffs: idx.clone() });
            let mut d = 0;
            loop {
                if d == s {
                    return out;
                }
                idx[d] += 1;
                if idx[d] < p {
                    break;
                }
                idx[d] = 0;
                d += 1;
            }
        }
    }
}

/// Element of F_{p^s} as a residue polynomial of degree < s.
#[derive(Clone, PartialEq, Eq)]
pub struct FqElement {
    pub field: Field,
    /// coeffs[i] is the coefficient of x^i, reduced mod p.
    pub coeffs: Vec<u64>,
}

impl fmt::Debug for FqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fq{:?}", self.coeffs)
    }
}

impl FqElement {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn same_field(&self, other: &FqElement) -> Result<(), Error> {
        if self.field.base != other.field.base {
            return Err(Error::BaseMismatch("elements of different fields".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &FqElement) -> Result<FqElement, Error> {
        self.same_field(other)?;
        let p = self.field.p();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a + b) % p)
            .collect();
        Ok(FqElement { field: self.field.clone(), coeffs })
    }

    pub fn neg(&self) -> FqElement {
        let p = self.field.p();
        FqElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| (p - a % p) % p).collect(),
        }
    }

    pub fn sub(&self, other: &FqElement) -> Result<FqElement, Error> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FqElement) -> Result<FqElement, Error> {
        self.same_field(other)?;
        let p = self.field.p();
        let s = self.field.s();
        let mut prod = vec![0u64; 2 * s];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a * b) % p;
            }
        }
        // reduce by the monic modulus
        for d in (s..2 * s).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (k, m) in self.field.modulus.iter().enumerate() {
                let idx = d - s + k;
                prod[idx] = (prod[idx] + c * (p - m % p)) % p;
            }
        }
        prod.truncate(s);
        Ok(FqElement { field: self.field.clone(), coeffs: prod })
    }

    pub fn pow(&self, mut e: u64) -> FqElement {
        let mut base = self.clone();
        let mut acc = FieldCtx::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same field");
            }
            base = base.mul(&base).expect("same field");
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self) -> Result<FqElement, Error> {
        if self.is_zero() {
            return Err(Error::Invalid("division by zero".into()));
        }
        Ok(self.pow(self.field.q() - 2))
    }

    /// Absolute Frobenius x -> x^p.
    pub fn frobenius(&self) -> FqElement {
        self.pow(self.field.p())
    }

    /// Inverse of the absolute Frobenius (x -> x^(p^(s-1))).
    pub fn frobenius_inv(&self) -> FqElement {
        let s = self.field.s() as u32;
        self.pow(self.field.p().pow(s - 1))
    }
}

// --- small polynomial helpers over F_p, used for the irreducibility check ---

fn poly_trim(f: &mut Vec<u64>) {
    while f.len() > 1 && *f.last().unwrap() == 0 {
        f.pop();
    }
}

fn poly_sub_modp(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let av = a.get(i).copied().unwrap_or(0) % p;
        let bv = b.get(i).copied().unwrap_or(0) % p;
        out[i] = (av + p - bv) % p;
    }
    poly_trim(&mut out);
    out
}

fn poly_rem_modp(p: u64, a: &[u64], f: &[u64]) -> Vec<u64> {
    let mut r: Vec<u64> = a.iter().map(|c| c % p).collect();
    poly_trim(&mut r);
    let df = f.len() - 1;
    let lead_inv = mod_inv(f[df] % p, p);
    while r.len() > df {
        let d = r.len() - 1;
        let c = (r[d] * lead_inv) % p;
        if c != 0 {
            for k in 0..=df {
                let idx = d - df + k;
                r[idx] = (r[idx] + p - (c * (f[k] % p)) % p) % p;
            }
        }
        poly_trim(&mut r);
        if r.len() == 1 && r[0] == 0 {
            break;
        }
        if r.len() - 1 < df + 1 && r.len() <= df {
            break;
        }
    }
    poly_trim(&mut r);
    r
}

fn poly_mulmod(p: u64, a: &[u64], b: &[u64], f: &[u64]) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem_modp(p, &prod, f)
}

/// x^e mod f over F_p by square and multiply.
fn poly_pow_x_q(p: u64, f: &[u64], e: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut base = vec![0u64, 1];
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mulmod(p, &result, &base, f);
        }
        base = poly_mulmod(p, &base, &base, f);
        e >>= 1;
    }
    result
}

fn poly_gcd_modp(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !(b.len() == 1 && b[0] == 0) {
        let r = poly_rem_modp(p, &a, &b);
        a = b;
        b = r;
    }
    // normalize to monic
    let d = a.len() - 1;
    let inv = mod_inv(a[d], p);
    for c in &mut a {
        *c = (*c * inv) % p;
    }
    a
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // p is a small prime
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_validation() {
        assert!(PrimePower::new(4, 1).is_err());
        assert!(PrimePower::new(2, 0).is_err());
        assert_eq!(PrimePower::new(3, 2).unwrap().q(), 9);
    }

    #[test]
    fn all_tabulated_moduli_are_irreducible() {
        for p in [2u64, 3, 5, 7] {
            for s in 1..=6u32 {
                // construction validates irreducibility
                let f = FieldCtx::new(p, s).unwrap();
                assert_eq!(f.q(), p.pow(s));
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_f4_f9() {
        for (p, s) in [(2u64, 2u32), (3, 2)] {
            let f = FieldCtx::new(p, s).unwrap();
            let elts = f.all_elements();
            let one = FieldCtx::one(&f);
            for a in &elts {
                // additive and multiplicative identities
                assert_eq!(a.add(&FieldCtx::zero(&f)).unwrap(), *a);
                assert_eq!(a.mul(&one).unwrap(), *a);
                if !a.is_zero() {
                    assert_eq!(a.mul(&a.inv().unwrap()).unwrap(), one);
                }
                for b in &elts {
                    assert_eq!(a.mul(b).unwrap(), b.mul(a).unwrap());
                    for c in &elts {
                        let lhs = a.mul(&b.add(c).unwrap()).unwrap();
                        let rhs = a.mul(b).unwrap().add(&a.mul(c).unwrap()).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_is_automorphism_of_order_dividing_s() {
        for (p, s) in [(2u64, 3u32), (3, 2), (5, 2)] {
            let f = FieldCtx::new(p, s).unwrap();
            for a in f.all_elements() {
                for b in f.all_elements() {
                    let lhs = a.add(&b).unwrap().frobenius();
                    let rhs = a.frobenius().add(&b.frobenius()).unwrap();
                    assert_eq!(lhs, rhs);
                }
                // order divides s
                let mut x = a.clone();
                for _ in 0..s {
                    x = x.frobenius();
                }
                assert_eq!(x, a);
                // frobenius_inv really inverts
                assert_eq!(a.frobenius().frobenius_inv(), a);
            }
        }
    }

    #[test]
    fn unit_group_order() {
        // |F_4^x| = 3: brute force the unit group
        let f = FieldCtx::new(2, 2).unwrap();
        let units = f.all_elements().into_iter().filter(|e| !e.is_zero()).count();
        assert_eq!(units, 3);
    }
}
