//! Cyclic bar (Hochschild-style) complexes of ring models — including the
//! derived models for Z/p^n — their internal-degree splittings, and their
//! homology.
//!
//! Homology of the non-flat rings Z/p^n is always computed from a levelwise
//! free DG model; the honest graded rings k[x] and k[x]/x^n get Z-free graded
//! models whose complexes split by internal degree. Brute force runs over the
//! prime field; for F_{p^s} the answer is base-changed along the inclusion,
//! which multiplies multiplicities by s.

pub mod complex;
pub mod dga;

use crate::arith::{FinAbPGroup, PrimePower};
use crate::Error;

pub use complex::{cyclic_bar_complex, BarOptions, ChainComplex, Word};
pub use dga::{graded_model, koszul_model, level_model, DGRing, DgaGen, DgaSpec};

/// Ring selector for the homology pipeline. Every spec yields either an
/// honest finite ring or a DG model quasi-isomorphic to it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum RingSpec {
    /// W_m(F_{p^s}); computed as ShuklaModel(p, m) and base-changed to s.
    WmFinite { p: u64, s: u32, m: u32 },
    /// F_{p^s}[x]/x^n with x in internal degree 1.
    TruncPoly { p: u64, s: u32, n: u32 },
    /// F_{p^s}[x], truncated to internal degree <= s_max on construction.
    Poly { p: u64, s: u32 },
    /// The Koszul DG model of Z/p^n.
    ShuklaModel { p: u64, n: u32 },
}

impl RingSpec {
    pub fn p(&self) -> u64 {
        match self {
            RingSpec::WmFinite { p, .. }
            | RingSpec::TruncPoly { p, .. }
            | RingSpec::Poly { p, .. }
            | RingSpec::ShuklaModel { p, .. } => *p,
        }
    }

    pub fn s(&self) -> u32 {
        match self {
            RingSpec::WmFinite { s, .. }
            | RingSpec::TruncPoly { s, .. }
            | RingSpec::Poly { s, .. } => *s,
            RingSpec::ShuklaModel { .. } => 1,
        }
    }

    pub fn base(&self) -> Result<PrimePower, Error> {
        PrimePower::new(self.p(), self.s())
    }

    /// Whether the complex built on this spec is graded by internal degree
    /// (the boundary preserves it), so internal_split applies.
    pub fn is_graded(&self) -> bool {
        matches!(self, RingSpec::TruncPoly { .. } | RingSpec::Poly { .. })
    }

    /// The DG model backing this spec, truncated at the given internal degree.
    pub fn model(&self, internal_cutoff: i64) -> Result<DGRing, Error> {
        match self {
            RingSpec::ShuklaModel { p, n } | RingSpec::WmFinite { p, m: n, .. } => {
                if internal_cutoff < *n as i64 {
                    return Err(Error::Window(
                        "internal cutoff below the model generator degree".into(),
                    ));
                }
                Ok(koszul_model(*p, *n))
            }
            RingSpec::TruncPoly { p, n, .. } => graded_model(*p, Some(*n), internal_cutoff),
            RingSpec::Poly { p, .. } => graded_model(*p, None, internal_cutoff),
        }
    }
}

/// One row of a homology table.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct HomologyRow {
    pub degree: i64,
    pub internal_degree: Option<i64>,
    pub group: FinAbPGroup,
}

/// Homology table of a ring spec, optionally split by internal degree.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct HomologyTable {
    pub spec: RingSpec,
    pub rows: Vec<HomologyRow>,
}

impl HomologyTable {
    pub fn group(&self, degree: i64, internal: Option<i64>) -> Option<&FinAbPGroup> {
        self.rows
            .iter()
            .find(|r| r.degree == degree && r.internal_degree == internal)
            .map(|r| &r.group)
    }
}

/// Feasibility gate with an explicit cost estimate instead of a timeout.
fn feasibility(spec: &RingSpec, max_degree: i64, s_max: i64) -> Result<(), Error> {
    let (bound, what) = match spec {
        RingSpec::ShuklaModel { .. } | RingSpec::WmFinite { .. } => (8, "derived models"),
        RingSpec::TruncPoly { .. } | RingSpec::Poly { .. } => (6, "graded polynomial models"),
    };
    if max_degree > bound {
        return Err(Error::Infeasible(format!(
            "max degree {max_degree} exceeds the documented bound {bound} for {what}; \
             word count grows like (s_max+1)^(degree+1) ~ {:.1e} words",
            ((s_max + 1) as f64).powi(max_degree as i32 + 1)
        )));
    }
    if spec.is_graded() && s_max > 8 {
        return Err(Error::Infeasible(format!(
            "internal degree bound {s_max} exceeds 8 for graded models"
        )));
    }
    Ok(())
}

/// Hochschild-style homology of a ring spec through `max_degree`, optionally
/// split by internal degree (graded specs only). The base-change convention:
/// brute force runs over F_p, and an F_{p^s} base multiplies every
/// multiplicity by s.
pub fn hh_compute(
    spec: &RingSpec,
    max_degree: i64,
    split_up_to: Option<i64>,
) -> Result<HomologyTable, Error> {
    let p = spec.p();
    let s = spec.s();
    let s_max = split_up_to.unwrap_or(max_degree + 2);
    feasibility(spec, max_degree, s_max)?;
    if split_up_to.is_some() && !spec.is_graded() {
        return Err(Error::Invalid(
            "internal-degree split requires a graded ring spec".into(),
        ));
    }
    let cutoff = match spec {
        RingSpec::ShuklaModel { n, .. } | RingSpec::WmFinite { m: n, .. } => {
            // words in degree d use at most d+2 slots of internal degree n
            (*n as i64) * (max_degree + 2)
        }
        _ => s_max,
    };
    let ring = spec.model(cutoff)?;
    let opts = BarOptions {
        normalized: true,
        internal_cutoff: cutoff,
        q_max: (max_degree + 1) as usize,
    };
    let complex = cyclic_bar_complex(&ring, (0, max_degree), &opts)?;
    let mut rows = Vec::new();
    match split_up_to {
        None => {
            for (q, g) in complex.homology(p, (0, max_degree))? {
                rows.push(HomologyRow {
                    degree: q,
                    internal_degree: None,
                    group: base_change(&g, s),
                });
            }
        }
        Some(smax) => {
            for internal in 0..=smax {
                let piece = complex.internal_split(internal)?;
                for (q, g) in piece.homology(p, (0, max_degree))? {
                    rows.push(HomologyRow {
                        degree: q,
                        internal_degree: Some(internal),
                        group: base_change(&g, s),
                    });
                }
            }
        }
    }
    Ok(HomologyTable { spec: *spec, rows })
}

/// Tensor an F_p-answer up to F_{p^s}: every cyclic factor appears s times.
fn base_change(g: &FinAbPGroup, s: u32) -> FinAbPGroup {
    if s == 1 {
        return g.clone();
    }
    let mut exps = Vec::with_capacity(g.exponents.len() * s as usize);
    for e in &g.exponents {
        for _ in 0..s {
            exps.push(*e);
        }
    }
    FinAbPGroup::from_exponents(g.p, exps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shukla_table_z_mod_9() {
        let spec = RingSpec::ShuklaModel { p: 3, n: 2 };
        let t = hh_compute(&spec, 4, None).unwrap();
        for q in 0..=4i64 {
            let g = t.group(q, None).unwrap();
            if q % 2 == 0 {
                assert_eq!(*g, FinAbPGroup::cyclic(3, 2));
            } else {
                assert!(g.is_trivial());
            }
        }
    }

    #[test]
    fn truncpoly_split_internal_degree_one() {
        // F_2[x]/x^2 in internal degree 1: one dimension in every degree
        let spec = RingSpec::TruncPoly { p: 2, s: 1, n: 2 };
        let t = hh_compute(&spec, 3, Some(4)).unwrap();
        for q in 0..=3i64 {
            let g = t.group(q, Some(1)).unwrap();
            assert_eq!(*g, FinAbPGroup::cyclic(2, 1), "degree {q}");
        }
    }

    #[test]
    fn poly_split_internal_degree_two() {
        // F_3[x] in internal degree 2: x^2, x sigma(x), mu_0 x^2
        let spec = RingSpec::Poly { p: 3, s: 1 };
        let t = hh_compute(&spec, 2, Some(3)).unwrap();
        for q in 0..=2i64 {
            let g = t.group(q, Some(2)).unwrap();
            assert_eq!(*g, FinAbPGroup::cyclic(3, 1), "degree {q}");
        }
    }

    #[test]
    fn feasibility_gate_trips() {
        let spec = RingSpec::ShuklaModel { p: 2, n: 1 };
        let err = hh_compute(&spec, 9, None).unwrap_err();
        assert!(matches!(err, Error::Infeasible(_)));
    }

    #[test]
    fn base_change_multiplies_multiplicity() {
        let spec = RingSpec::TruncPoly { p: 2, s: 2, n: 2 };
        let t = hh_compute(&spec, 2, Some(2)).unwrap();
        let g = t.group(0, Some(1)).unwrap();
        assert_eq!(*g, FinAbPGroup::from_exponents(2, vec![1, 1]));
    }
}
