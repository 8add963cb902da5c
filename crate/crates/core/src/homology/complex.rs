//! Bounded chain complexes of finitely generated free modules with sparse
//! integer boundaries, and the cyclic bar construction over a monomial DGA.
//!
//! Basis labels carry the full tensor-word structure a_0 ⊗ ... ⊗ a_q together
//! with the internal degree, so filtrations and internal-degree splittings
//! are computable from labels alone.

use std::collections::HashMap;

use num_bigint::BigInt;

use super::dga::DGRing;
use crate::arith::group::homology_at;
use crate::arith::{AbGroup, FinAbPGroup, SparseIntMatrix};
use crate::Error;

/// Tensor word a_0 ⊗ ... ⊗ a_q; entries index the DGA basis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    pub slots: Vec<usize>,
}

/// Chain complex on an explicit degree range. `boundary[q]` maps C_q into
/// C_{q-1}; degrees outside [lo, hi] are zero. Homology is reliable only on
/// [lo+1, hi-1] (one guard degree each side).
#[derive(Debug, Clone)]
pub struct ChainComplex {
    pub lo: i64,
    pub hi: i64,
    /// basis size per degree
    pub ranks: HashMap<i64, usize>,
    /// internal degree of each basis element
    pub internal: HashMap<i64, Vec<i64>>,
    /// display labels
    pub labels: HashMap<i64, Vec<String>>,
    /// boundary C_q -> C_{q-1}
    pub boundary: HashMap<i64, SparseIntMatrix>,
    pub modulus: Option<BigInt>,
}

impl ChainComplex {
    pub fn rank(&self, q: i64) -> usize {
        self.ranks.get(&q).copied().unwrap_or(0)
    }

    pub fn boundary_matrix(&self, q: i64) -> SparseIntMatrix {
        self.boundary
            .get(&q)
            .cloned()
            .unwrap_or_else(|| SparseIntMatrix::zero(self.rank(q - 1), self.rank(q)))
    }

    /// d o d = 0, asserted on construction of every complex in this crate.
    pub fn verify_dd_zero(&self) -> Result<(), Error> {
        for q in self.lo..=self.hi {
            if q - 1 < self.lo {
                continue;
            }
            let d1 = self.boundary_matrix(q);
            let d2 = self.boundary_matrix(q - 1);
            if !d2.mul(&d1)?.is_zero() {
                return Err(Error::Invalid(format!("d^2 != 0 leaving degree {q}")));
            }
        }
        Ok(())
    }

    /// H_q = ker d_q / im d_{q+1} in canonical form, p-primary part.
    /// Degrees must sit strictly inside the guarded range.
    pub fn homology(&self, p: u64, window: (i64, i64)) -> Result<Vec<(i64, FinAbPGroup)>, Error> {
        let (a, b) = window;
        if a < self.lo || b + 1 > self.hi {
            return Err(Error::Window(format!(
                "window [{a}, {b}] needs guard degrees inside [{}, {}]",
                self.lo, self.hi
            )));
        }
        let mut out = Vec::new();
        for q in a..=b {
            let (g, free) = self.homology_raw(q)?;
            if free > 0 {
                return Err(Error::Invalid(format!(
                    "free rank {free} in homology at degree {q}; not a finite p-group"
                )));
            }
            out.push((q, FinAbPGroup::from_ab_group(p, &g)));
        }
        Ok(out)
    }

    pub fn homology_raw(&self, q: i64) -> Result<(AbGroup, usize), Error> {
        let d_out = self.boundary_matrix(q).to_dense();
        let d_in = self.boundary_matrix(q + 1).to_dense();
        homology_at(&d_in, &d_out, self.modulus.as_ref())
    }

    /// The subcomplex spanned by basis words of internal degree exactly s.
    /// Requires the boundary to preserve the internal degree (graded specs).
    pub fn internal_split(&self, s: i64) -> Result<ChainComplex, Error> {
        if s < 0 {
            return Err(Error::Invalid("internal degree must be >= 0".into()));
        }
        let mut ranks = HashMap::new();
        let mut internal = HashMap::new();
        let mut labels = HashMap::new();
        let mut keep: HashMap<i64, Vec<usize>> = HashMap::new();
        for q in self.lo..=self.hi {
            let iv = self.internal.get(&q).cloned().unwrap_or_default();
            let idx: Vec<usize> =
                (0..self.rank(q)).filter(|i| iv[*i] == s).collect();
            ranks.insert(q, idx.len());
            internal.insert(q, idx.iter().map(|i| iv[*i]).collect::<Vec<_>>());
            labels.insert(
                q,
                idx.iter()
                    .map(|i| self.labels[&q][*i].clone())
                    .collect::<Vec<_>>(),
            );
            keep.insert(q, idx);
        }
        let mut boundary = HashMap::new();
        for q in self.lo..=self.hi {
            let d = self.boundary_matrix(q);
            let empty = Vec::new();
            let rows = keep.get(&(q - 1)).unwrap_or(&empty);
            let cols = &keep[&q];
            let row_pos: HashMap<usize, usize> =
                rows.iter().enumerate().map(|(a, b)| (*b, a)).collect();
            let col_pos: HashMap<usize, usize> =
                cols.iter().enumerate().map(|(a, b)| (*b, a)).collect();
            let mut m = SparseIntMatrix::zero(rows.len(), cols.len());
            m.modulus = self.modulus.clone();
            for ((i, j), v) in &d.entries {
                match (row_pos.get(i), col_pos.get(j)) {
                    (Some(ri), Some(cj)) => m.set(*ri, *cj, v.clone()),
                    (None, Some(_)) => {
                        // a boundary term leaves the internal degree: the
                        // complex is not graded and cannot be split
                        let src_internal = self.internal[&q][*j];
                        if src_internal == s {
                            return Err(Error::Invalid(
                                "boundary does not preserve the internal degree; split undefined"
                                    .into(),
                            ));
                        }
                    }
                    _ => {}
                }
            }
            boundary.insert(q, m);
        }
        Ok(ChainComplex {
            lo: self.lo,
            hi: self.hi,
            ranks,
            internal,
            labels,
            boundary,
            modulus: self.modulus.clone(),
        })
    }

    /// Degreewise rank bookkeeping: the direct sum over s of the splits must
    /// recover the complex.
    pub fn split_ranks_cover(&self, s_values: impl Iterator<Item = i64>) -> bool {
        let mut total: HashMap<i64, usize> = HashMap::new();
        for s in s_values {
            if let Ok(c) = self.internal_split(s) {
                for q in c.lo..=c.hi {
                    *total.entry(q).or_insert(0) += c.rank(q);
                }
            }
        }
        (self.lo..=self.hi).all(|q| total.get(&q).copied().unwrap_or(0) == self.rank(q))
    }
}

/// Options for the cyclic bar construction.
#[derive(Debug, Clone)]
pub struct BarOptions {
    /// normalized (reduced) complex: interior slots run over non-unit basis
    pub normalized: bool,
    /// bound on the total internal degree of a word
    pub internal_cutoff: i64,
    /// bound on the simplicial degree
    pub q_max: usize,
}

/// The cyclic bar complex of a monomial DGA over Z, on homological degrees
/// [window.0 - 1, window.1 + 1] (guard degrees included automatically).
///
/// The total differential on a word of simplicial degree q is
/// d_simp + (-1)^q d_int, where d_simp is the alternating sum of the face
/// maps (the last face rotates with the graded sign) and d_int applies the
/// ring differential slotwise with prefix signs.
pub fn cyclic_bar_complex(
    ring: &DGRing,
    window: (i64, i64),
    opts: &BarOptions,
) -> Result<ChainComplex, Error> {
    if window.0 < 0 || window.1 < window.0 {
        return Err(Error::Window("window must be 0 <= lo <= hi".into()));
    }
    if (opts.q_max as i64) < window.1 + 1 {
        return Err(Error::Window(format!(
            "q_max = {} too small for window upper bound {} (one guard degree needed)",
            opts.q_max, window.1
        )));
    }
    let lo = (window.0 - 1).max(0);
    let hi = window.1 + 1;

    // enumerate words per homological degree
    let all_candidates: Vec<usize> = (0..ring.len()).collect();
    let interior_candidates: Vec<usize> = if opts.normalized {
        (0..ring.len()).filter(|i| *i != ring.unit()).collect()
    } else {
        all_candidates.clone()
    };
    let mut words: HashMap<i64, Vec<Word>> = HashMap::new();
    let mut stack: Vec<usize> = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn gen_words(
        ring: &DGRing,
        first: &[usize],
        interior: &[usize],
        q: usize,
        pos: usize,
        hdeg_sum: i64,
        internal_sum: i64,
        hi: i64,
        cutoff: i64,
        stack: &mut Vec<usize>,
        out: &mut HashMap<i64, Vec<Word>>,
    ) {
        if pos == q + 1 {
            let deg = q as i64 + hdeg_sum;
            out.entry(deg).or_default().push(Word { slots: stack.clone() });
            return;
        }
        let candidates: &[usize] = if pos == 0 { first } else { interior };
        for &c in candidates {
            let h = ring.hdeg[c];
            let int = ring.internal[c];
            if internal_sum + int > cutoff {
                continue;
            }
            // every slot has hdeg >= 0, so the partial sum already bounds below
            if q as i64 + hdeg_sum + h > hi {
                continue;
            }
            stack.push(c);
            gen_words(
                ring,
                first,
                interior,
                q,
                pos + 1,
                hdeg_sum + h,
                internal_sum + int,
                hi,
                cutoff,
                stack,
                out,
            );
            stack.pop();
        }
    }
    for q in 0..=opts.q_max {
        if (q as i64) > hi {
            break;
        }
        gen_words(
            ring,
            &all_candidates,
            &interior_candidates,
            q,
            0,
            0,
            0,
            hi,
            opts.internal_cutoff,
            &mut stack,
            &mut words,
        );
    }
    // deterministic order: (internal degree, slot labels)
    let mut ranks = HashMap::new();
    let mut internal = HashMap::new();
    let mut labels = HashMap::new();
    let mut index: HashMap<i64, HashMap<Word, usize>> = HashMap::new();
    for q in lo..=hi {
        let mut ws = words.remove(&q).unwrap_or_default();
        ws.sort_by_key(|w| {
            let int: i64 = w.slots.iter().map(|s| ring.internal[*s]).sum();
            (int, w.slots.clone())
        });
        let idx: HashMap<Word, usize> =
            ws.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        ranks.insert(q, ws.len());
        internal.insert(
            q,
            ws.iter()
                .map(|w| w.slots.iter().map(|s| ring.internal[*s]).sum())
                .collect::<Vec<i64>>(),
        );
        labels.insert(
            q,
            ws.iter()
                .map(|w| {
                    w.slots
                        .iter()
                        .map(|s| ring.names[*s].clone())
                        .collect::<Vec<_>>()
                        .join(" | ")
                })
                .collect::<Vec<String>>(),
        );
        index.insert(q, idx);
        words.insert(q, ws);
    }

    // boundaries
    let mut boundary = HashMap::new();
    for q in lo..=hi {
        let cols = ranks[&q];
        let rows = ranks.get(&(q - 1)).copied().unwrap_or(0);
        let mut m = SparseIntMatrix::zero(rows, cols);
        if q - 1 >= lo {
            let target_index = &index[&(q - 1)];
            for (j, w) in words[&q].iter().enumerate() {
                for (tw, coeff) in word_boundary(ring, w, opts)? {
                    if let Some(i) = target_index.get(&tw) {
                        m.add_to(*i, j, coeff);
                    }
                    // words outside the truncation window are dropped
                }
            }
        }
        boundary.insert(q, m);
    }
    let complex = ChainComplex {
        lo,
        hi,
        ranks,
        internal,
        labels,
        boundary,
        modulus: None,
    };
    complex.verify_dd_zero()?;
    Ok(complex)
}

/// Total differential of one word, as (word, coefficient) pairs. Words whose
/// interior slots contain the unit are dropped in normalized mode.
fn word_boundary(
    ring: &DGRing,
    w: &Word,
    opts: &BarOptions,
) -> Result<Vec<(Word, i64)>, Error> {
    let q = w.slots.len() - 1;
    let mut acc: HashMap<Word, i64> = HashMap::new();
    let push = |acc: &mut HashMap<Word, i64>, slots: Vec<usize>, coeff: i64| {
        if coeff == 0 {
            return;
        }
        if opts.normalized && slots.iter().skip(1).any(|s| *s == ring.unit()) {
            return;
        }
        let int: i64 = slots.iter().map(|s| ring.internal[*s]).sum();
        if int > opts.internal_cutoff {
            return;
        }
        *acc.entry(Word { slots }).or_insert(0) += coeff;
    };

    if q >= 1 {
        // inner faces: merge slots i and i+1
        for i in 0..q {
            let sign = if i % 2 == 0 { 1i64 } else { -1 };
            if let Some((k, s)) = ring.mul_basis(w.slots[i], w.slots[i + 1]) {
                let mut slots = Vec::with_capacity(q);
                slots.extend_from_slice(&w.slots[..i]);
                slots.push(k);
                slots.extend_from_slice(&w.slots[i + 2..]);
                push(&mut acc, slots, sign * s);
            }
        }
        // rotation face: a_q a_0 ⊗ a_1 ⊗ ... ⊗ a_{q-1}
        let last = w.slots[q];
        let rot_koszul: i64 = {
            let h_last = ring.hdeg[last];
            let h_rest: i64 = w.slots[..q].iter().map(|s| ring.hdeg[*s]).sum();
            if (h_last * h_rest) % 2 == 0 {
                1
            } else {
                -1
            }
        };
        let sign = if q % 2 == 0 { 1i64 } else { -1 };
        if let Some((k, s)) = ring.mul_basis(last, w.slots[0]) {
            let mut slots = Vec::with_capacity(q);
            slots.push(k);
            slots.extend_from_slice(&w.slots[1..q]);
            push(&mut acc, slots, sign * rot_koszul * s);
        }
    }

    // internal differential with the (-1)^q twist
    let twist = if q % 2 == 0 { 1i64 } else { -1 };
    let mut prefix = 0i64;
    for (i, slot) in w.slots.iter().enumerate() {
        let sign = if prefix % 2 == 0 { twist } else { -twist };
        for (t, c) in ring.differential(*slot) {
            let mut slots = w.slots.clone();
            slots[i] = *t;
            push(&mut acc, slots, sign * c);
        }
        prefix += ring.hdeg[*slot];
    }

    Ok(acc.into_iter().filter(|(_, c)| *c != 0).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::dga::{graded_model, koszul_model, level_model};

    fn opts(normalized: bool, cutoff: i64, q_max: usize) -> BarOptions {
        BarOptions { normalized, internal_cutoff: cutoff, q_max }
    }

    #[test]
    fn normalized_koszul_complex_is_one_dimensional_per_degree() {
        let ring = koszul_model(2, 1);
        let c = cyclic_bar_complex(&ring, (0, 4), &opts(true, 7, 6)).unwrap();
        for q in 0..=5 {
            assert_eq!(c.rank(q), 1, "degree {q}");
        }
    }

    #[test]
    fn shukla_homology_of_z_mod_p() {
        // divided powers: Z/p in even degrees, 0 in odd
        for p in [2u64, 3] {
            let ring = koszul_model(p, 1);
            let c = cyclic_bar_complex(&ring, (0, 4), &opts(true, 7, 6)).unwrap();
            let h = c.homology(p, (0, 4)).unwrap();
            for (q, g) in h {
                if q % 2 == 0 {
                    assert_eq!(g, FinAbPGroup::cyclic(p, 1), "H_{q}");
                } else {
                    assert!(g.is_trivial(), "H_{q}");
                }
            }
        }
    }

    #[test]
    fn shukla_homology_of_z_mod_4() {
        let ring = koszul_model(2, 2);
        let c = cyclic_bar_complex(&ring, (0, 4), &opts(true, 14, 6)).unwrap();
        let h = c.homology(2, (0, 4)).unwrap();
        for (q, g) in h {
            if q % 2 == 0 {
                assert_eq!(g, FinAbPGroup::cyclic(2, 2), "H_{q}");
            } else {
                assert!(g.is_trivial(), "H_{q}");
            }
        }
    }

    #[test]
    fn unnormalized_agrees_with_normalized() {
        let ring = koszul_model(3, 1);
        let cn = cyclic_bar_complex(&ring, (0, 3), &opts(true, 6, 5)).unwrap();
        let cu = cyclic_bar_complex(&ring, (0, 3), &opts(false, 6, 5)).unwrap();
        let hn = cn.homology(3, (0, 3)).unwrap();
        let hu = cu.homology(3, (0, 3)).unwrap();
        assert_eq!(hn, hu);
    }

    #[test]
    fn graded_model_complex_splits() {
        let ring = graded_model(2, Some(2), 4).unwrap();
        let c = cyclic_bar_complex(&ring, (0, 3), &opts(true, 4, 5)).unwrap();
        assert!(c.split_ranks_cover(0..=4));
        // s = 0 part of the truncated polynomial model is the Shukla complex
        // of the ground field: homology Z/p in even degrees within the window
        let c0 = c.internal_split(0).unwrap();
        let h = c0.homology(2, (0, 3)).unwrap();
        assert_eq!(h[0].1, FinAbPGroup::cyclic(2, 1));
        assert!(h[1].1.is_trivial());
        assert_eq!(h[2].1, FinAbPGroup::cyclic(2, 1));
        assert!(h[3].1.is_trivial());
    }

    #[test]
    fn level_model_total_homology_is_z_mod_p_to_the_jc() {
        // the filtered model of Z/p^2 (step p) has Shukla homology Z/4, 0, Z/4
        let ring = level_model(2, 1, 2, 6).unwrap();
        let c = cyclic_bar_complex(&ring, (0, 2), &opts(true, 6, 4)).unwrap();
        let h = c.homology(2, (0, 2)).unwrap();
        assert_eq!(h[0].1, FinAbPGroup::cyclic(2, 2));
        assert!(h[1].1.is_trivial());
        assert_eq!(h[2].1, FinAbPGroup::cyclic(2, 2));
    }
}
