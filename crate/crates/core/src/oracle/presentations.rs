//! Builders for the presented E-term algebras used by the oracles and the
//! cross-validation suite: the divided-power presentation whose homology is
//! HH(k[x]/x^n) with its extra grading, the polynomial presentation for the
//! THH analogue, and their differential schedules.

use std::collections::BTreeMap;

use crate::specseq::presented::{
    eval_presented, power_rule_differentials, Action, EvalWindow, GenKind, Generator,
    PresentedAlgebra, PresentedPage, Provenance, ScheduleEntry,
};
use crate::Error;

/// Generator indices in the four-generator presentations below.
pub const G_MU0: usize = 0;
pub const G_X: usize = 1;
pub const G_SX: usize = 2;
pub const G_XN: usize = 3;

fn four_gens(n: u32, mu0_divided: bool) -> Vec<Generator> {
    vec![
        Generator {
            name: "mu0".into(),
            kind: if mu0_divided { GenKind::DividedPower } else { GenKind::Polynomial },
            filt: 0,
            comp: 2,
        },
        Generator { name: "x".into(), kind: GenKind::Truncated(n), filt: 1, comp: -1 },
        Generator { name: "sx".into(), kind: GenKind::Exterior, filt: 1, comp: 0 },
        Generator { name: "xn".into(), kind: GenKind::DividedPower, filt: n as i64, comp: 2 - n as i64 },
    ]
}

/// Filtration cap that keeps every cell of total degree <= max_degree clean
/// of window-edge effects.
pub fn thh_wnk_filt_cap(n: u32, max_degree: i64) -> i64 {
    (n as i64 - 1) + 1 + (n as i64) * (max_degree / 2 + 1)
}

fn window_for(n: u32, max_degree: i64, r_max: i64) -> EvalWindow {
    EvalWindow {
        total: (0, max_degree + 2),
        filt: (0, thh_wnk_filt_cap(n, max_degree) + r_max + 2),
    }
}

/// Highest page carrying a scheduled differential for the given window.
fn pages_needed(p: u64, _n: u32, max_degree: i64) -> i64 {
    // power-rule entries act on mu0^(p^k) of total degree 2 p^k
    let mut r = 2i64; // d0 and d1 always present
    let mut step = 1i64;
    while 2 * step <= max_degree + 2 {
        step *= p as i64;
        r += 1;
    }
    r.max(3)
}

/// The polynomial presentation P(mu0) (x) P_n(x) (x) E(sx) (x) Gamma(xn)
/// with the power-rule schedule seeded by d_1(mu0) = sx. The degree-0
/// differential d_0(gamma_j(xn)) = n x^{n-1} gamma_{j-1}(xn) sx is filtered
/// away by the extra grading that assigns gamma_j(xn) degree -j, which
/// reduces the case p not dividing n to the case p | n, where d_0 vanishes
/// outright; the group orders are unaffected. Its stabilized pages compute
/// the THH groups of W_n(k) as filtration cells.
pub fn thh_wnk_algebra(p: u64, n: u32, max_degree: i64) -> Result<PresentedAlgebra, Error> {
    let r_max = pages_needed(p, n, max_degree);
    let mut pa = PresentedAlgebra::new(
        p,
        1,
        1,
        four_gens(n, false),
        window_for(n, max_degree, r_max),
    )?;
    for e in power_rule_differentials(&pa, G_MU0, 1, vec![(G_SX, 1)], 1)? {
        pa.add_entry(e)?;
    }
    Ok(pa)
}

/// Stabilized pages of the THH presentation, through one page past the last
/// scheduled differential.
pub fn thh_wnk_pages(p: u64, n: u32, max_degree: i64) -> Result<Vec<PresentedPage>, Error> {
    let pa = thh_wnk_algebra(p, n, max_degree)?;
    let r_max = pages_needed(p, n, max_degree);
    eval_presented(&pa, 1, r_max + 1)
}

/// The divided-power presentation Gamma(mu0) (x) P_n(x) (x) E(sx) (x)
/// Gamma(xn) with
///   d_0(gamma_j(xn))  = n x^{n-1} gamma_{j-1}(xn) sx,
///   d_1(gamma_j(mu0)) = gamma_{j-1}(mu0) sx,
///   d_2(x^{n-1} gamma_j(mu0)) = gamma_1(xn) gamma_{j-2}(mu0) sx,
/// whose homology at page 1 is the bigraded HH(k[x]/x^n) and whose later
/// pages replay the Hochschild story of W_n(k).
pub fn hh_wnk_algebra(p: u64, n: u32, max_degree: i64) -> Result<PresentedAlgebra, Error> {
    let r_max = 4i64;
    let mut pa = PresentedAlgebra::new(
        p,
        1,
        1,
        four_gens(n, true),
        window_for(n, max_degree, r_max),
    )?;
    pa.add_entry(ScheduleEntry {
        page: 0,
        action: Action::GammaShift { gen: G_XN, amount: 1 },
        require_exact: vec![],
        extra_consume: vec![],
        target: vec![(G_X, n as i64 - 1), (G_SX, 1)],
        coeff: n as i64,
        provenance: Provenance::Seed,
    })?;
    pa.add_entry(ScheduleEntry {
        page: 1,
        action: Action::GammaShift { gen: G_MU0, amount: 1 },
        require_exact: vec![],
        extra_consume: vec![],
        target: vec![(G_SX, 1)],
        coeff: 1,
        provenance: Provenance::Seed,
    })?;
    if n >= 2 {
        pa.add_entry(ScheduleEntry {
            page: 2,
            action: Action::GammaShift { gen: G_MU0, amount: 2 },
            require_exact: vec![(G_X, n - 1)],
            extra_consume: vec![(G_X, n as i64 - 1)],
            target: vec![(G_XN, 1), (G_SX, 1)],
            coeff: 1,
            provenance: Provenance::Seed,
        })?;
    }
    Ok(pa)
}

/// Pages of the Hochschild presentation for W_n(k).
pub fn hh_wnk_pages(p: u64, n: u32, max_degree: i64) -> Result<Vec<PresentedPage>, Error> {
    let pa = hh_wnk_algebra(p, n, max_degree)?;
    eval_presented(&pa, 0, 4)
}

/// Bigraded HH(k[x]/x^n) as (filtration, complement) -> p-exponents, i.e.
/// the homology of the divided-power presentation under its degree-0
/// differential alone, for total degree <= max_degree and filtration <
/// filt_cap. This is the closed-form oracle the cyclic-bar pipeline is
/// checked against.
pub fn hh_truncpoly_table(
    p: u64,
    n: u32,
    max_degree: i64,
    filt_cap: i64,
) -> Result<BTreeMap<(i64, i64), Vec<u32>>, Error> {
    let mut pa = PresentedAlgebra::new(
        p,
        1,
        1,
        four_gens(n, true),
        EvalWindow { total: (0, max_degree + 2), filt: (0, filt_cap + 2) },
    )?;
    pa.add_entry(ScheduleEntry {
        page: 0,
        action: Action::GammaShift { gen: G_XN, amount: 1 },
        require_exact: vec![],
        extra_consume: vec![],
        target: vec![(G_X, n as i64 - 1), (G_SX, 1)],
        coeff: n as i64,
        provenance: Provenance::Seed,
    })?;
    let pages = eval_presented(&pa, 0, 1)?;
    let page1 = pages.into_iter().nth(1).expect("two pages");
    Ok(page1
        .cells
        .into_iter()
        .filter(|((s, t), _)| s + t <= max_degree && *s < filt_cap)
        .collect())
}
