//! Monomial differential graded rings over Z.
//!
//! All ring models used by the homology pipeline (the Koszul model of Z/p^n,
//! the level-filtered model of Z/p^n whose associated graded presents
//! k[x]/x^n, and the honest graded models of k[x] and k[x]/x^n) are free
//! graded-commutative Z-algebras on a handful of generators with monomial
//! bases, truncated at a fixed internal degree. This module builds those
//! rings, with multiplication and differential on the monomial basis, and
//! validates d^2 = 0, the Leibniz rule and the sign rule at construction.

use std::collections::HashMap;

use crate::Error;

/// Generator of a monomial DGA.
#[derive(Debug, Clone)]
pub struct DgaGen {
    pub name: String,
    /// homological degree; odd generators square to zero
    pub hdeg: i64,
    /// internal degree (doubles as the filtration level in filtered models)
    pub internal: i64,
}

/// Monomial: exponent vector parallel to the generator list.
pub type Mono = Vec<u32>;

/// Specification of a monomial DGA: generators, generator differentials and
/// an internal-degree cutoff bounding the monomial basis.
#[derive(Debug, Clone)]
pub struct DgaSpec {
    pub gens: Vec<DgaGen>,
    /// d(gen_i) as a combination of monomials
    pub diffs: Vec<(usize, Vec<(Mono, i64)>)>,
    pub internal_cutoff: i64,
}

/// A monomial DGA with enumerated basis. Basis index 0 is always the unit.
#[derive(Debug, Clone)]
pub struct DGRing {
    pub spec: DgaSpec,
    /// all monomials of internal degree <= cutoff, unit first,
    /// sorted by (internal, hdeg, exponents)
    pub basis: Vec<Mono>,
    pub names: Vec<String>,
    pub hdeg: Vec<i64>,
    pub internal: Vec<i64>,
    index: HashMap<Mono, usize>,
    /// d(basis[i]) as (index, coeff) pairs; terms beyond the cutoff are
    /// dropped, which realizes the quotient by the high-filtration part
    diff: Vec<Vec<(usize, i64)>>,
}

impl DGRing {
    pub fn build(spec: DgaSpec) -> Result<DGRing, Error> {
        for g in &spec.gens {
            if g.internal < 0 {
                return Err(Error::Invalid("generator with negative internal degree".into()));
            }
        }
        // enumerate monomials within the cutoff
        let mut basis: Vec<Mono> = Vec::new();
        fn enumerate(
            gens: &[DgaGen],
            cutoff: i64,
            gi: usize,
            cur: &mut Mono,
            cur_internal: i64,
            out: &mut Vec<Mono>,
        ) {
            if gi == gens.len() {
                out.push(cur.clone());
                return;
            }
            let g = &gens[gi];
            let max_e: u32 = if g.hdeg % 2 != 0 {
                1
            } else if g.internal > 0 {
                ((cutoff - cur_internal) / g.internal) as u32
            } else {
                // internal degree 0 and even would make the basis infinite
                0
            };
            for e in 0..=max_e {
                let add = g.internal * e as i64;
                if cur_internal + add > cutoff {
                    break;
                }
                cur[gi] = e;
                enumerate(gens, cutoff, gi + 1, cur, cur_internal + add, out);
            }
            cur[gi] = 0;
        }
        let mut cur = vec![0u32; spec.gens.len()];
        enumerate(&spec.gens, spec.internal_cutoff, 0, &mut cur, 0, &mut basis);
        let key = |m: &Mono| {
            let internal: i64 = m
                .iter()
                .zip(&spec.gens)
                .map(|(e, g)| g.internal * *e as i64)
                .sum();
            let hdeg: i64 = m.iter().zip(&spec.gens).map(|(e, g)| g.hdeg * *e as i64).sum();
            (internal, hdeg, m.clone())
        };
        basis.sort_by_key(key);
        let index: HashMap<Mono, usize> =
            basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let hdeg: Vec<i64> = basis
            .iter()
            .map(|m| m.iter().zip(&spec.gens).map(|(e, g)| g.hdeg * *e as i64).sum())
            .collect();
        let internal: Vec<i64> = basis
            .iter()
            .map(|m| m.iter().zip(&spec.gens).map(|(e, g)| g.internal * *e as i64).sum())
            .collect();
        let names: Vec<String> = basis.iter().map(|m| mono_name(&spec, m)).collect();

        let mut ring = DGRing {
            spec,
            basis,
            names,
            hdeg,
            internal,
            index,
            diff: Vec::new(),
        };
        ring.diff = ring
            .basis
            .iter()
            .map(|m| ring.diff_of_mono(m))
            .collect::<Result<Vec<_>, _>>()?;
        ring.validate()?;
        Ok(ring)
    }

    pub fn unit(&self) -> usize {
        self.index[&vec![0; self.spec.gens.len()]]
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn differential(&self, i: usize) -> &[(usize, i64)] {
        &self.diff[i]
    }

    /// Product of two basis elements: None when the product vanishes, or
    /// Some(index, sign) otherwise. Products beyond the internal cutoff are
    /// zero in the truncated model.
    pub fn mul_basis(&self, a: usize, b: usize) -> Option<(usize, i64)> {
        let ma = &self.basis[a];
        let mb = &self.basis[b];
        let (m, sign) = mono_mul(&self.spec, ma, mb)?;
        self.index.get(&m).map(|i| (*i, sign))
    }

    fn diff_of_mono(&self, m: &Mono) -> Result<Vec<(usize, i64)>, Error> {
        let spec = &self.spec;
        let mut acc: HashMap<usize, i64> = HashMap::new();
        for (gi, dg) in &spec.diffs {
            let e = m[*gi];
            if e == 0 {
                continue;
            }
            // prefix sign: generators strictly before gi
            let prefix: i64 = m
                .iter()
                .zip(&spec.gens)
                .take(*gi)
                .map(|(ex, g)| g.hdeg * *ex as i64)
                .sum();
            let prefix_sign = if prefix % 2 == 0 { 1i64 } else { -1 };
            // suffix parity: generators strictly after gi (for moving dg in place)
            let suffix: i64 = m
                .iter()
                .zip(&spec.gens)
                .skip(*gi + 1)
                .map(|(ex, g)| g.hdeg * *ex as i64)
                .sum();
            let dg_h = spec.gens[*gi].hdeg - 1;
            let place_sign = if (dg_h * suffix) % 2 == 0 { 1i64 } else { -1 };
            let mut reduced = m.clone();
            reduced[*gi] -= 1;
            for (dmono, c) in dg {
                if let Some((prod, s)) = mono_mul(spec, &reduced, dmono) {
                    if let Some(idx) = self.index.get(&prod) {
                        let coeff = prefix_sign * place_sign * s * c * e as i64;
                        *acc.entry(*idx).or_insert(0) += coeff;
                    }
                    // dropped terms exceed the cutoff: quotient complex
                }
            }
        }
        let mut out: Vec<(usize, i64)> =
            acc.into_iter().filter(|(_, c)| *c != 0).collect();
        out.sort_unstable();
        Ok(out)
    }

    /// d^2 = 0, Leibniz on all basis pairs within the cutoff, unit in degree 0.
    fn validate(&self) -> Result<(), Error> {
        if self.hdeg[self.unit()] != 0 || self.internal[self.unit()] != 0 {
            return Err(Error::Invalid("unit must sit in degree 0".into()));
        }
        for i in 0..self.len() {
            let mut acc: HashMap<usize, i64> = HashMap::new();
            for (j, c) in &self.diff[i] {
                for (k, c2) in &self.diff[*j] {
                    *acc.entry(*k).or_insert(0) += c * c2;
                }
            }
            if acc.values().any(|c| *c != 0) {
                // terms dropped at the cutoff boundary may break exactness of
                // d^2 only above the cutoff, never below; anything else is a
                // sign error
                return Err(Error::Invalid(format!(
                    "d^2 != 0 on basis element {}",
                    self.names[i]
                )));
            }
        }
        // Leibniz: d(ab) = (da)b + (-1)^|a| a(db), on pairs within the cutoff
        for a in 0..self.len() {
            for b in 0..self.len() {
                if self.internal[a] + self.internal[b] > self.spec.internal_cutoff {
                    continue;
                }
                let ab = self.mul_basis(a, b);
                let mut lhs: HashMap<usize, i64> = HashMap::new();
                if let Some((ab_idx, ab_sign)) = ab {
                    for (k, c) in &self.diff[ab_idx] {
                        *lhs.entry(*k).or_insert(0) += ab_sign * c;
                    }
                }
                let mut rhs: HashMap<usize, i64> = HashMap::new();
                for (j, c) in &self.diff[a] {
                    if let Some((k, s)) = self.mul_basis(*j, b) {
                        *rhs.entry(k).or_insert(0) += c * s;
                    }
                }
                let a_sign = if self.hdeg[a] % 2 == 0 { 1i64 } else { -1 };
                for (j, c) in &self.diff[b] {
                    if let Some((k, s)) = self.mul_basis(a, *j) {
                        *rhs.entry(k).or_insert(0) += a_sign * c * s;
                    }
                }
                for k in lhs.keys().chain(rhs.keys()) {
                    if lhs.get(k).copied().unwrap_or(0) != rhs.get(k).copied().unwrap_or(0) {
                        return Err(Error::Invalid(format!(
                            "Leibniz rule fails on {} * {}",
                            self.names[a], self.names[b]
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Multiply monomials with the graded sign rule; None if an odd generator
/// collides (square zero).
fn mono_mul(spec: &DgaSpec, a: &Mono, b: &Mono) -> Option<(Mono, i64)> {
    let mut out = a.clone();
    let mut sign = 1i64;
    for (gi, eb) in b.iter().enumerate() {
        if *eb == 0 {
            continue;
        }
        let g = &spec.gens[gi];
        if g.hdeg % 2 != 0 {
            if a[gi] + eb > 1 {
                return None;
            }
            // move this odd generator of b left past the odd part of a that
            // sits at larger generator indices
            let jumps: u32 = a
                .iter()
                .zip(&spec.gens)
                .skip(gi + 1)
                .filter(|(_, h)| h.hdeg % 2 != 0)
                .map(|(e, _)| *e)
                .sum();
            if jumps % 2 == 1 {
                sign = -sign;
            }
        }
        out[gi] += eb;
    }
    Some((out, sign))
}

fn mono_name(spec: &DgaSpec, m: &Mono) -> String {
    let parts: Vec<String> = m
        .iter()
        .enumerate()
        .filter(|(_, e)| **e > 0)
        .map(|(i, e)| {
            if *e == 1 {
                spec.gens[i].name.clone()
            } else {
                format!("{}^{}", spec.gens[i].name, e)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Koszul model of Z/p^n: the free graded-commutative Z-algebra on one
/// degree-1 generator e with d(e) = p^n, quasi-isomorphic to Z/p^n.
pub fn koszul_model(p: u64, n: u32) -> DGRing {
    let spec = DgaSpec {
        gens: vec![DgaGen { name: "e".into(), hdeg: 1, internal: n as i64 }],
        diffs: vec![(0, vec![(vec![0], pow_i64(p, n))])],
        internal_cutoff: n as i64,
    };
    DGRing::build(spec).expect("koszul model is always valid")
}

/// Level-filtered model of Z/p^(j*c): Z[X]<e0, e1> with d(e0) = p^j - X and
/// d(e1) = X^c, where X carries level 1, e0 level 0 and e1 level c. The
/// level-preserving part of the differential presents the associated graded
/// ring of Z/p^(j*c) filtered by powers of p^j.
pub fn level_model(p: u64, step_exp: u32, c: u32, cutoff: i64) -> Result<DGRing, Error> {
    if c == 0 {
        return Err(Error::Invalid("level model needs c >= 1".into()));
    }
    let gens = vec![
        DgaGen { name: "X".into(), hdeg: 0, internal: 1 },
        DgaGen { name: "e0".into(), hdeg: 1, internal: 0 },
        DgaGen { name: "e1".into(), hdeg: 1, internal: c as i64 },
    ];
    let diffs = vec![
        (1, vec![(vec![0, 0, 0], pow_i64(p, step_exp)), (vec![1, 0, 0], -1)]),
        (2, vec![(vec![c, 0, 0], 1)]),
    ];
    DGRing::build(DgaSpec { gens, diffs, internal_cutoff: cutoff })
}

/// Z-free graded model of k[x]/x^n (n = Some) or k[x] (n = None):
/// Z[x]<e0; d(e0) = p> (x of internal degree 1), with an extra generator
/// e1, d(e1) = x^n, enforcing the truncation. The differential preserves the
/// internal degree, so the complex built on it splits by internal degree.
pub fn graded_model(p: u64, n: Option<u32>, cutoff: i64) -> Result<DGRing, Error> {
    let mut gens = vec![
        DgaGen { name: "x".into(), hdeg: 0, internal: 1 },
        DgaGen { name: "e0".into(), hdeg: 1, internal: 0 },
    ];
    let mut diffs = vec![(1usize, vec![(vec![0, 0], p as i64)])];
    if let Some(n) = n {
        gens.push(DgaGen { name: "e1".into(), hdeg: 1, internal: n as i64 });
        diffs = vec![
            (1, vec![(vec![0, 0, 0], p as i64)]),
            (2, vec![(vec![n, 0, 0], 1)]),
        ];
    }
    DGRing::build(DgaSpec { gens, diffs, internal_cutoff: cutoff })
}

fn pow_i64(p: u64, n: u32) -> i64 {
    let mut v = 1i64;
    for _ in 0..n {
        v = v.checked_mul(p as i64).expect("p^n overflows i64");
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn koszul_model_shape() {
        let m = koszul_model(2, 2);
        assert_eq!(m.len(), 2);
        // d(e) = 4
        let e = 1;
        assert_eq!(m.differential(e), &[(0, 4)]);
        // e*e = 0 forced by graded commutativity
        assert_eq!(m.mul_basis(e, e), None);
    }

    #[test]
    fn level_model_validates() {
        // d^2 = 0 and Leibniz are checked in build()
        let m = level_model(2, 1, 2, 5).unwrap();
        // d(e0) = 2 - X
        let e0 = m.basis.iter().position(|b| b == &vec![0, 1, 0]).unwrap();
        let d = m.differential(e0);
        assert_eq!(d.len(), 2);
        let m3 = level_model(3, 2, 2, 4).unwrap();
        let e0 = m3.basis.iter().position(|b| b == &vec![0, 1, 0]).unwrap();
        // d(e0) = 9 - X
        let unit = m3.unit();
        let x = m3.basis.iter().position(|b| b == &vec![1, 0, 0]).unwrap();
        let d = m3.differential(e0);
        assert!(d.contains(&(unit, 9)));
        assert!(d.contains(&(x, -1)));
    }

    #[test]
    fn graded_model_splits_internal_degree() {
        let m = graded_model(3, Some(2), 6).unwrap();
        // the differential preserves internal degree
        for i in 0..m.len() {
            for (j, _) in m.differential(i) {
                assert_eq!(m.internal[i], m.internal[*j]);
            }
        }
    }

    #[test]
    fn sign_rule_on_odd_generators() {
        let m = level_model(2, 1, 3, 4).unwrap();
        let e0 = m.basis.iter().position(|b| b == &vec![0, 1, 0]).unwrap();
        let e1 = m.basis.iter().position(|b| b == &vec![0, 0, 1]).unwrap();
        let (e01, s1) = m.mul_basis(e0, e1).unwrap();
        let (e10, s2) = m.mul_basis(e1, e0).unwrap();
        assert_eq!(e01, e10);
        assert_eq!(s1, -s2);
    }
}
