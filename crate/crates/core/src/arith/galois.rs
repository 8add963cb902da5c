//! The unramified extension (Z/p^m)[x]/(f~) of Z/p^m, where f~ lifts the
//! fixed irreducible polynomial of F_{p^s}. Used internally as the exact
//! coefficient ring for ghost-component recursions and Teichmuller lifts.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::fq::{Field, FqElement};
use crate::Error;

/// GR(p^precision, s): coefficient ring for Witt recursions over F_{p^s}.
#[derive(Debug, Clone)]
pub struct GaloisRing {
    pub field: Field,
    pub precision: u32,
    modulus: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrElement {
    /// length s, entries in [0, p^precision)
    pub coeffs: Vec<BigInt>,
}

impl GaloisRing {
    pub fn new(field: Field, precision: u32) -> Self {
        let modulus = BigInt::from(field.p()).pow(precision);
        GaloisRing { field, precision, modulus }
    }

    pub fn zero(&self) -> GrElement {
        GrElement { coeffs: vec![BigInt::zero(); self.field.s()] }
    }

    pub fn one(&self) -> GrElement {
        let mut e = self.zero();
        e.coeffs[0] = BigInt::one();
        e
    }

    /// Coefficient-wise lift of a residue-field element.
    pub fn lift(&self, a: &FqElement) -> GrElement {
        GrElement { coeffs: a.coeffs.iter().map(|c| BigInt::from(*c)).collect() }
    }

    /// Reduction mod p back to the residue field.
    pub fn reduce(&self, a: &GrElement) -> FqElement {
        let p = BigInt::from(self.field.p());
        let coeffs: Vec<u64> = a
            .coeffs
            .iter()
            .map(|c| {
                let r = c.mod_floor(&p);
                r.to_string().parse::<u64>().unwrap()
            })
            .collect();
        self.field.element(&coeffs).expect("length matches")
    }

    pub fn add(&self, a: &GrElement, b: &GrElement) -> GrElement {
        GrElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| (x + y).mod_floor(&self.modulus))
                .collect(),
        }
    }

    pub fn sub(&self, a: &GrElement, b: &GrElement) -> GrElement {
        GrElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| (x - y).mod_floor(&self.modulus))
                .collect(),
        }
    }

    pub fn neg(&self, a: &GrElement) -> GrElement {
        self.sub(&self.zero(), a)
    }

    pub fn mul(&self, a: &GrElement, b: &GrElement) -> GrElement {
        let s = self.field.s();
        let mut prod = vec![BigInt::zero(); 2 * s];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        // reduce by the monic lifted modulus
        for d in (s..2 * s).rev() {
            if prod[d].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut prod[d], BigInt::zero());
            for (k, m) in self.field.modulus.iter().enumerate() {
                let t = &c * BigInt::from(*m);
                prod[d - s + k] -= t;
            }
        }
        prod.truncate(s);
        GrElement { coeffs: prod.into_iter().map(|c| c.mod_floor(&self.modulus)).collect() }
    }

    pub fn pow(&self, a: &GrElement, mut e: u64) -> GrElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, a: &GrElement, c: &BigInt) -> GrElement {
        GrElement { coeffs: a.coeffs.iter().map(|x| (x * c).mod_floor(&self.modulus)).collect() }
    }

    /// Exact division by p^k; errors if some coefficient is not divisible.
    /// The result is only meaningful mod p^(precision - k).
    pub fn div_exact_p(&self, a: &GrElement, k: u32) -> Result<GrElement, Error> {
        let pk = BigInt::from(self.field.p()).pow(k);
        let mut coeffs = Vec::with_capacity(a.coeffs.len());
        for c in &a.coeffs {
            let (q, r) = c.div_rem(&pk);
            if !r.is_zero() {
                return Err(Error::Invalid(
                    "ghost recursion produced a non-divisible value".into(),
                ));
            }
            coeffs.push(q);
        }
        Ok(GrElement { coeffs })
    }

    /// Teichmuller representative of a residue-field element: the unique lift
    /// fixed by x -> x^q, obtained by iterating the q-power map to precision.
    pub fn teichmuller(&self, a: &FqElement) -> GrElement {
        let mut t = self.lift(a);
        let q = self.field.q();
        for _ in 0..self.precision {
            t = self.pow(&t, q);
        }
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::FieldCtx;

    #[test]
    fn galois_ring_mod_p2_over_f9() {
        let f = FieldCtx::new(3, 2).unwrap();
        let r = GaloisRing::new(f.clone(), 2);
        // x * x = x^2 = -(2x + 2) = 7x + 7 mod (9, x^2+2x+2)
        let x = GrElement { coeffs: vec![BigInt::zero(), BigInt::one()] };
        let x2 = r.mul(&x, &x);
        assert_eq!(x2.coeffs, vec![BigInt::from(7), BigInt::from(7)]);
    }

    #[test]
    fn teichmuller_is_multiplicative_and_fixed() {
        let f = FieldCtx::new(3, 2).unwrap();
        let r = GaloisRing::new(f.clone(), 3);
        for a in f.all_elements() {
            let ta = r.teichmuller(&a);
            // fixed by x -> x^q
            assert_eq!(r.pow(&ta, f.q()), ta);
            // reduces back to a
            assert_eq!(r.reduce(&ta), a);
            for b in f.all_elements() {
                let tb = r.teichmuller(&b);
                let tab = r.teichmuller(&a.mul(&b).unwrap());
                assert_eq!(r.mul(&ta, &tb), tab);
            }
        }
    }
}
