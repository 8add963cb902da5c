//! Canonical answer formats: finite abelian p-groups and finite direct sums
//! of Witt modules W_m(k)^r, plus the homology-at-a-spot kernel used by every
//! group-valued computation in the crate.

use num_bigint::BigInt;

use super::fq::PrimePower;
use super::matrix::{
    column_span_basis, lattice_quotient, preimage_lattice, AbGroup, IntMat, SparseIntMatrix,
};
use crate::Error;

/// Finite abelian p-group in canonical form: an ascending multiset of
/// exponents e_i, meaning the direct sum of Z/p^{e_i}.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct FinAbPGroup {
    pub p: u64,
    /// ascending exponents, each >= 1
    pub exponents: Vec<u32>,
}

impl FinAbPGroup {
    pub fn trivial(p: u64) -> Self {
        FinAbPGroup { p, exponents: vec![] }
    }

    pub fn cyclic(p: u64, e: u32) -> Self {
        if e == 0 {
            return Self::trivial(p);
        }
        FinAbPGroup { p, exponents: vec![e] }
    }

    pub fn from_exponents(p: u64, mut exps: Vec<u32>) -> Self {
        exps.retain(|e| *e > 0);
        exps.sort_unstable();
        FinAbPGroup { p, exponents: exps }
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.is_empty()
    }

    /// log_p of the order.
    pub fn order_exponent(&self) -> u64 {
        self.exponents.iter().map(|e| *e as u64).sum()
    }

    pub fn direct_sum(&self, other: &FinAbPGroup) -> FinAbPGroup {
        assert_eq!(self.p, other.p, "direct sum over different primes");
        let mut exps = self.exponents.clone();
        exps.extend(&other.exponents);
        FinAbPGroup::from_exponents(self.p, exps)
    }

    pub fn from_ab_group(p: u64, g: &AbGroup) -> Self {
        FinAbPGroup::from_exponents(p, g.p_exponents(p))
    }

    /// Rendering like "Z/4 + Z/2" ("0" for the trivial group).
    pub fn display(&self) -> String {
        if self.exponents.is_empty() {
            return "0".into();
        }
        self.exponents
            .iter()
            .rev()
            .map(|e| format!("Z/{}", BigInt::from(self.p).pow(*e)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Finite direct sum of Witt modules over F_{p^s}: multiset of pairs
/// (witt length m, multiplicity r). The universal answer format for every
/// group-valued oracle.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct WittModuleDescriptor {
    pub base: PrimePower,
    /// canonical form: sorted by witt length, multiplicities merged
    pub summands: Vec<WittSummand>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct WittSummand {
    pub witt_length: u32,
    pub multiplicity: u32,
}

impl WittModuleDescriptor {
    pub fn zero(base: PrimePower) -> Self {
        WittModuleDescriptor { base, summands: vec![] }
    }

    /// W_m(k)^r; a zero length or multiplicity gives the zero module.
    pub fn single(base: PrimePower, witt_length: u32, multiplicity: u32) -> Self {
        let mut d = WittModuleDescriptor::zero(base);
        d.push(witt_length, multiplicity);
        d
    }

    pub fn push(&mut self, witt_length: u32, multiplicity: u32) {
        if witt_length == 0 || multiplicity == 0 {
            return;
        }
        match self.summands.binary_search_by_key(&witt_length, |s| s.witt_length) {
            Ok(i) => self.summands[i].multiplicity += multiplicity,
            Err(i) => {
                self.summands.insert(i, WittSummand { witt_length, multiplicity })
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    /// log_p of the order over F_{p^s}: s * sum(m_i * r_i).
    pub fn order_exponent(&self) -> u64 {
        self.base.s as u64
            * self
                .summands
                .iter()
                .map(|s| s.witt_length as u64 * s.multiplicity as u64)
                .sum::<u64>()
    }

    /// Underlying abelian group: W_m(F_{p^s}) is additively (Z/p^m)^s.
    pub fn to_fin_ab(&self) -> FinAbPGroup {
        let mut exps = Vec::new();
        for s in &self.summands {
            for _ in 0..(s.multiplicity * self.base.s) {
                exps.push(s.witt_length);
            }
        }
        FinAbPGroup::from_exponents(self.base.p, exps)
    }

    pub fn display(&self) -> String {
        if self.summands.is_empty() {
            return "0".into();
        }
        self.summands
            .iter()
            .rev()
            .map(|s| {
                if s.multiplicity == 1 {
                    format!("W_{}", s.witt_length)
                } else {
                    format!("W_{}^{}", s.witt_length, s.multiplicity)
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// log_p of the order of the descriptor's underlying group.
pub fn witt_module_order(d: &WittModuleDescriptor) -> u64 {
    d.order_exponent()
}

/// Homology at a spot: ker(boundary_out) / im(boundary_in), p-primary part.
///
/// The matrices must compose to zero (boundary_out * boundary_in = 0) and
/// must share any modulus. Over Z, a free summand in the homology cannot be
/// expressed as a finite p-group and is reported as an error; with a modulus
/// p^M everything is finite.
pub fn group_from_matrices(
    p: u64,
    boundary_in: &SparseIntMatrix,
    boundary_out: &SparseIntMatrix,
) -> Result<FinAbPGroup, Error> {
    if boundary_out.cols != boundary_in.rows {
        return Err(Error::Shape(format!(
            "boundary_out has {} columns but boundary_in has {} rows",
            boundary_out.cols, boundary_in.rows
        )));
    }
    let composite = boundary_out.mul(boundary_in)?;
    if !composite.is_zero() {
        return Err(Error::Invalid("boundaries do not compose to zero".into()));
    }
    let modulus = boundary_in.modulus.clone().or_else(|| boundary_out.modulus.clone());
    let (group, free) = homology_at(
        &boundary_in.to_dense(),
        &boundary_out.to_dense(),
        modulus.as_ref(),
    )?;
    if free > 0 {
        return Err(Error::Invalid(format!(
            "homology has free rank {free}; not a finite p-group"
        )));
    }
    Ok(FinAbPGroup::from_ab_group(p, &group))
}

/// ker(out)/im(in) over Z, or over Z/modulus when given (modulus columns are
/// adjoined so kernels and images are computed in the quotient).
pub fn homology_at(
    b_in: &IntMat,
    b_out: &IntMat,
    modulus: Option<&BigInt>,
) -> Result<(AbGroup, usize), Error> {
    let n = b_out.cols;
    debug_assert_eq!(b_in.rows, n);
    let kernel = match modulus {
        None => {
            if b_out.rows == 0 {
                IntMat::identity(n)
            } else {
                super::matrix::kernel(b_out)
            }
        }
        Some(m) => {
            // v with out*v = 0 mod m
            let mut mod_cols = IntMat::zero(b_out.rows, b_out.rows);
            for i in 0..b_out.rows {
                mod_cols[(i, i)] = m.clone();
            }
            if b_out.rows == 0 {
                IntMat::identity(n)
            } else {
                preimage_lattice(b_out, &mod_cols)
            }
        }
    };
    // image generators: columns of b_in, plus modulus relations
    let image = match modulus {
        None => column_span_basis(b_in),
        Some(m) => {
            let mut mod_cols = IntMat::zero(n, n);
            for i in 0..n {
                mod_cols[(i, i)] = m.clone();
            }
            column_span_basis(&b_in.hconcat(&mod_cols))
        }
    };
    let g = lattice_quotient(&kernel, &image)?;
    Ok((AbGroup { torsion: g.torsion, free_rank: 0 }, g.free_rank))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_r_with_zero_boundaries_over_mod() {
        // 0 -> (Z/p^M)^r -> 0 has homology (Z/p^M)^r
        let m = BigInt::from(9);
        let b_in = SparseIntMatrix::with_modulus(3, 0, m.clone());
        let b_out = SparseIntMatrix::with_modulus(0, 3, m);
        let g = group_from_matrices(3, &b_in, &b_out).unwrap();
        assert_eq!(g, FinAbPGroup::from_exponents(3, vec![2, 2, 2]));
    }

    #[test]
    fn cokernel_of_multiplication_by_p() {
        // 0 -> Z --p--> Z -> 0 at the target spot: Z/p
        let mut b_in = SparseIntMatrix::zero(1, 1);
        b_in.set(0, 0, 5);
        let b_out = SparseIntMatrix::zero(0, 1);
        let g = group_from_matrices(5, &b_in, &b_out).unwrap();
        assert_eq!(g, FinAbPGroup::cyclic(5, 1));
    }

    #[test]
    fn p_part_only_is_retained() {
        // Z --6--> Z: homology Z/6, p-part at p=2 is Z/2
        let mut b_in = SparseIntMatrix::zero(1, 1);
        b_in.set(0, 0, 6);
        let b_out = SparseIntMatrix::zero(0, 1);
        let g = group_from_matrices(2, &b_in, &b_out).unwrap();
        assert_eq!(g, FinAbPGroup::cyclic(2, 1));
    }

    #[test]
    fn composition_must_vanish() {
        let mut b_in = SparseIntMatrix::zero(1, 1);
        b_in.set(0, 0, 1);
        let mut b_out = SparseIntMatrix::zero(1, 1);
        b_out.set(0, 0, 1);
        assert!(group_from_matrices(2, &b_in, &b_out).is_err());
    }

    #[test]
    fn descriptor_canonical_form_and_order() {
        let base = PrimePower::new(3, 1).unwrap();
        let mut d = WittModuleDescriptor::zero(base);
        d.push(2, 1);
        d.push(1, 2);
        d.push(2, 1);
        assert_eq!(d.summands.len(), 2);
        assert_eq!(d.summands[0], WittSummand { witt_length: 1, multiplicity: 2 });
        assert_eq!(d.summands[1], WittSummand { witt_length: 2, multiplicity: 2 });
        // order 3^(1*2 + 2*2)
        assert_eq!(witt_module_order(&d), 6);

        // W_2(F_3): exponent 2 (order 9)
        let d = WittModuleDescriptor::single(base, 2, 1);
        assert_eq!(witt_module_order(&d), 2);
        // W_1(F_4): exponent 2 (order 4)
        let f4 = PrimePower::new(2, 2).unwrap();
        let d = WittModuleDescriptor::single(f4, 1, 1);
        assert_eq!(witt_module_order(&d), 2);
        // empty descriptor: exponent 0
        assert_eq!(witt_module_order(&WittModuleDescriptor::zero(base)), 0);
    }

    #[test]
    fn descriptor_json_shape() {
        let base = PrimePower::new(2, 2).unwrap();
        let mut d = WittModuleDescriptor::zero(base);
        d.push(3, 2);
        let js = serde_json::to_value(&d).unwrap();
        assert_eq!(js["base"]["p"], 2);
        assert_eq!(js["summands"][0]["witt_length"], 3);
        assert_eq!(js["summands"][0]["multiplicity"], 2);
    }
}
