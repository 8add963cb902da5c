//! Symbolic evaluator for presented graded-commutative E-term algebras:
//! free graded-commutative algebras on typed generators (polynomial,
//! truncated, exterior, divided-power, Laurent) with a schedule of
//! generator-level differentials per page, evaluated cellwise inside a
//! finite window.
//!
//! Pages are subquotient lattices in the monomial coordinate space of each
//! bidegree, over the coefficient ring Z/p^l (l = 1 for field coefficients).
//! Differentials are extended from the schedule by the graded Leibniz rule,
//! the divided-power rule d(gamma_j(x)) = gamma_{j-1}(x) dx, and the
//! polynomial power rule; binomial coefficients from divided-power products
//! are taken mod p^l.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::arith::matrix::{
    column_span_basis, lattice_quotient, preimage_lattice, solve_in_span, IntMat,
};
use crate::Error;

/// Generator type of a presented algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum GenKind {
    Polynomial,
    /// truncated polynomial of height h: exponents 0..h
    Truncated(u32),
    Exterior,
    /// divided powers: the exponent is the gamma index
    DividedPower,
    /// Laurent generator with explicit exponent bounds
    Laurent { lo: i64, hi: i64 },
}

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct Generator {
    pub name: String,
    pub kind: GenKind,
    /// bidegree (filtration s, complement t); total degree s + t
    pub filt: i64,
    pub comp: i64,
}

impl Generator {
    pub fn total(&self) -> i64 {
        self.filt + self.comp
    }

    fn is_odd(&self) -> bool {
        self.total().rem_euclid(2) == 1
    }
}

/// Truncation window for monomial enumeration.
#[derive(Debug, Clone, Copy, serde::Serialize, serde::Deserialize)]
pub struct EvalWindow {
    pub total: (i64, i64),
    pub filt: (i64, i64),
}

/// How a schedule entry consumes its source generator.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub enum Action {
    /// polynomial power rule with step e: applies to g^a when e | a, with
    /// coefficient a/e, consuming e. Step 1 is the ordinary derivation.
    Power { gen: usize, step: u32 },
    /// divided-power shift by `amount`: gamma_j -> gamma_{j-amount}
    GammaShift { gen: usize, amount: u32 },
    /// exterior generator: consumed outright
    Ext { gen: usize },
}

impl Action {
    fn gen(&self) -> usize {
        match self {
            Action::Power { gen, .. } | Action::GammaShift { gen, .. } | Action::Ext { gen } => {
                *gen
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Provenance {
    Seed,
    PowerRule,
}

/// One scheduled differential.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct ScheduleEntry {
    pub page: i64,
    pub action: Action,
    /// extra exact-exponent requirements (gen, e)
    pub require_exact: Vec<(usize, u32)>,
    /// additional exponents consumed besides the action's own
    pub extra_consume: Vec<(usize, i64)>,
    /// exponents added by the target monomial
    pub target: Vec<(usize, i64)>,
    pub coeff: i64,
    pub provenance: Provenance,
}

/// A presented graded-commutative algebra with a differential schedule.
#[derive(Debug, Clone)]
pub struct PresentedAlgebra {
    pub p: u64,
    /// F_{p^s} ground field: scales reported orders, never enters arithmetic
    pub s_field: u32,
    /// coefficient length l: cells are Z/p^l-modules (1 = field coefficients)
    pub coeff_len: u32,
    pub gens: Vec<Generator>,
    pub window: EvalWindow,
    pub schedule: Vec<ScheduleEntry>,
}

type Mono = Vec<i64>;

impl PresentedAlgebra {
    pub fn new(
        p: u64,
        s_field: u32,
        coeff_len: u32,
        gens: Vec<Generator>,
        window: EvalWindow,
    ) -> Result<Self, Error> {
        for g in &gens {
            if g.is_odd() && !matches!(g.kind, GenKind::Exterior) {
                return Err(Error::Invalid(format!(
                    "odd-degree generator {} must be exterior",
                    g.name
                )));
            }
            if matches!(g.kind, GenKind::Laurent { .. }) {
                let GenKind::Laurent { lo, hi } = g.kind else { unreachable!() };
                if lo > hi {
                    return Err(Error::Invalid("empty Laurent range".into()));
                }
            }
            if g.total() == 0 && !matches!(g.kind, GenKind::Laurent { .. }) {
                // a total-degree-0 polynomial generator makes cells infinite
                // unless its filtration bounds the exponent
                if g.filt == 0 {
                    return Err(Error::Invalid(format!(
                        "generator {} has bidegree (0,0); cells would be infinite",
                        g.name
                    )));
                }
            }
        }
        Ok(PresentedAlgebra { p, s_field, coeff_len, gens, window, schedule: vec![] })
    }

    /// Validate and add a schedule entry. The rule must shift bidegree by
    /// exactly (page, -page-1).
    pub fn add_entry(&mut self, e: ScheduleEntry) -> Result<(), Error> {
        let mut df = 0i64;
        let mut dc = 0i64;
        let add = |gen: usize, amount: i64, df: &mut i64, dc: &mut i64| {
            *df += self.gens[gen].filt * amount;
            *dc += self.gens[gen].comp * amount;
        };
        match &e.action {
            Action::Power { gen, step } => add(*gen, -(*step as i64), &mut df, &mut dc),
            Action::GammaShift { gen, amount } => add(*gen, -(*amount as i64), &mut df, &mut dc),
            Action::Ext { gen } => add(*gen, -1, &mut df, &mut dc),
        }
        for (g, a) in &e.extra_consume {
            add(*g, -a, &mut df, &mut dc);
        }
        for (g, a) in &e.target {
            add(*g, *a, &mut df, &mut dc);
        }
        if (df, dc) != (e.page, -e.page - 1) {
            return Err(Error::Schedule(format!(
                "entry on page {} shifts bidegree by ({df}, {dc}), expected ({}, {})",
                e.page,
                e.page,
                -e.page - 1
            )));
        }
        self.schedule.push(e);
        Ok(())
    }

    fn modulus(&self) -> BigInt {
        BigInt::from(self.p).pow(self.coeff_len)
    }

    fn mono_bidegree(&self, m: &Mono) -> (i64, i64) {
        let mut f = 0;
        let mut c = 0;
        for (g, e) in self.gens.iter().zip(m) {
            f += g.filt * e;
            c += g.comp * e;
        }
        (f, c)
    }

    /// All monomials within the window, grouped by bidegree cell.
    fn enumerate_cells(&self) -> BTreeMap<(i64, i64), Vec<Mono>> {
        let mut out: BTreeMap<(i64, i64), Vec<Mono>> = BTreeMap::new();
        let mut cur: Mono = self
            .gens
            .iter()
            .map(|g| match g.kind {
                GenKind::Laurent { lo, .. } => lo,
                _ => 0,
            })
            .collect();
        self.enum_rec(0, &mut cur, &mut out);
        for v in out.values_mut() {
            v.sort();
        }
        out
    }

    fn enum_rec(&self, gi: usize, cur: &mut Mono, out: &mut BTreeMap<(i64, i64), Vec<Mono>>) {
        if gi == self.gens.len() {
            let (f, c) = self.mono_bidegree(cur);
            let tot = f + c;
            if tot >= self.window.total.0
                && tot <= self.window.total.1
                && f >= self.window.filt.0
                && f <= self.window.filt.1
            {
                out.entry((f, c)).or_default().push(cur.clone());
            }
            return;
        }
        let g = &self.gens[gi];
        let (lo, hi): (i64, i64) = match g.kind {
            GenKind::Exterior => (0, 1),
            GenKind::Truncated(h) => (0, h as i64 - 1),
            GenKind::Laurent { lo, hi } => (lo, hi),
            GenKind::Polynomial | GenKind::DividedPower => {
                // bound from the window: total degree grows, or filtration
                let t = g.total();
                let f = g.filt;
                let bound = if t > 0 {
                    self.window.total.1 / t + 1
                } else if f > 0 {
                    self.window.filt.1 / f + 1
                } else if t < 0 || f != 0 {
                    (self.window.total.1.abs() + self.window.filt.1.abs()) / t.abs().max(1) + 1
                } else {
                    0
                };
                (0, bound)
            }
        };
        for e in lo..=hi {
            cur[gi] = e;
            // cheap prune on filtration when all remaining degrees are >= 0
            self.enum_rec(gi + 1, cur, out);
        }
        cur[gi] = match g.kind {
            GenKind::Laurent { lo, .. } => lo,
            _ => 0,
        };
    }

    /// Koszul sign of the prefix of `m` strictly before generator `gi`.
    fn prefix_sign(&self, m: &Mono, gi: usize) -> i64 {
        let mut parity = 0i64;
        for (k, g) in self.gens.iter().enumerate().take(gi) {
            if g.is_odd() {
                parity += m[k];
            }
        }
        if parity % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Multiply `target` exponents into `m` (already reduced), producing the
    /// Koszul sign and divided-power binomial coefficient. Returns None when
    /// the product leaves the generator ranges (exterior square, truncation).
    fn merge_target(
        &self,
        m: &Mono,
        anchor: usize,
        target: &[(usize, i64)],
    ) -> Option<(Mono, BigInt)> {
        let mut out = m.clone();
        let mut coeff = BigInt::from(1);
        let modulus = self.modulus();
        let mut sign = 1i64;
        for (g, a) in target {
            let gen = &self.gens[*g];
            match gen.kind {
                GenKind::Exterior => {
                    if out[*g] + a > 1 {
                        return None;
                    }
                }
                GenKind::Truncated(h) => {
                    if out[*g] + a >= h as i64 {
                        return None;
                    }
                }
                GenKind::DividedPower => {
                    // gamma_j * gamma_k = C(j+k, k) gamma_{j+k}
                    let j = out[*g];
                    let k = *a;
                    coeff = (coeff * binomial(j + k, k)).mod_floor(&modulus);
                    if coeff.is_zero() {
                        return None;
                    }
                }
                GenKind::Laurent { lo, hi } => {
                    if out[*g] + a < lo || out[*g] + a > hi {
                        return None;
                    }
                }
                GenKind::Polynomial => {}
            }
            out[*g] += a;
        }
        // Koszul sign: move each odd target generator from the anchor
        // position to its own position, past the odd content of m in between
        for (g, a) in target {
            let gen = &self.gens[*g];
            if !gen.is_odd() || *a == 0 {
                continue;
            }
            let (from, to) = if *g < anchor { (*g + 1, anchor) } else { (anchor, *g) };
            let mut parity = 0i64;
            for k in from..to {
                if k != anchor && self.gens[k].is_odd() {
                    parity += m[k];
                }
            }
            if parity % 2 == 1 {
                sign = -sign;
            }
        }
        Some((out, coeff * BigInt::from(sign)))
    }

    /// Apply the page-r differential to one monomial.
    fn apply_page(&self, r: i64, m: &Mono) -> Vec<(Mono, BigInt)> {
        let modulus = self.modulus();
        let mut acc: HashMap<Mono, BigInt> = HashMap::new();
        for entry in &self.schedule {
            if entry.page != r {
                continue;
            }
            let gi = entry.action.gen();
            if entry
                .require_exact
                .iter()
                .any(|(g, e)| m[*g] != *e as i64)
            {
                continue;
            }
            let mut reduced = m.clone();
            let mut c = BigInt::from(entry.coeff);
            match &entry.action {
                Action::Power { gen, step } => {
                    let a = m[*gen];
                    let step = *step as i64;
                    if a <= 0 || a % step != 0 {
                        continue;
                    }
                    c *= BigInt::from(a / step);
                    reduced[*gen] -= step;
                }
                Action::GammaShift { gen, amount } => {
                    if m[*gen] < *amount as i64 {
                        continue;
                    }
                    reduced[*gen] -= *amount as i64;
                }
                Action::Ext { gen } => {
                    if m[*gen] < 1 {
                        continue;
                    }
                    reduced[*gen] -= 1;
                }
            }
            for (g, a) in &entry.extra_consume {
                if reduced[*g] < *a {
                    c = BigInt::zero();
                    break;
                }
                reduced[*g] -= a;
            }
            if c.is_zero() || c.mod_floor(&modulus).is_zero() {
                continue;
            }
            // derivation prefix sign at the anchor generator
            let sign = self.prefix_sign(m, gi);
            let Some((mono, merge_coeff)) = self.merge_target(&reduced, gi, &entry.target) else {
                continue;
            };
            let total = (c * merge_coeff * BigInt::from(sign)).mod_floor(&modulus);
            if total.is_zero() {
                continue;
            }
            let slot = acc.entry(mono).or_insert_with(BigInt::zero);
            *slot = (&*slot + total).mod_floor(&modulus);
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }
}

fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// One cell of a computed page: a subquotient of the free Z/p^l-module on
/// the cell's monomials.
#[derive(Debug, Clone)]
struct CellState {
    monos: Vec<Mono>,
    index: HashMap<Mono, usize>,
    /// cycle lattice (contains p^l * ambient)
    z: IntMat,
    /// boundary lattice (contains p^l * ambient)
    b: IntMat,
}

/// Reported page data.
#[derive(Debug, Clone, serde::Serialize)]
pub struct PresentedPage {
    pub r: i64,
    /// (s, t) -> p-exponents of the cell (over the prime field; multiply
    /// multiplicities by s_field for F_{p^s} ground fields)
    pub cells: BTreeMap<(i64, i64), Vec<u32>>,
}

impl PresentedPage {
    pub fn order_exponent(&self, s: i64, t: i64) -> u64 {
        self.cells
            .get(&(s, t))
            .map(|e| e.iter().map(|x| *x as u64).sum())
            .unwrap_or(0)
    }

    /// Total order exponent of all cells of one total degree.
    pub fn degree_order_exponent(&self, total: i64) -> u64 {
        self.cells
            .iter()
            .filter(|((s, t), _)| s + t == total)
            .map(|(_, e)| e.iter().map(|x| *x as u64).sum::<u64>())
            .sum()
    }
}

/// Evaluate the pages of a presented algebra from `first_page` through
/// `r_max` (inclusive). Page r+1 is the cellwise homology of page r under
/// the scheduled differentials; schedule consistency (d_r respects earlier
/// boundaries, d_r * d_r = 0 on cycles) is asserted.
pub fn eval_presented(
    pa: &PresentedAlgebra,
    first_page: i64,
    r_max: i64,
) -> Result<Vec<PresentedPage>, Error> {
    let modulus = pa.modulus();
    let cells = pa.enumerate_cells();
    let mut state: BTreeMap<(i64, i64), CellState> = BTreeMap::new();
    for ((f, c), monos) in cells {
        let dim = monos.len();
        let index = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut pl = IntMat::zero(dim, dim);
        for i in 0..dim {
            pl[(i, i)] = modulus.clone();
        }
        state.insert(
            (f, c),
            CellState { monos, index, z: IntMat::identity(dim), b: pl },
        );
    }
    let mut pages = Vec::new();
    let empty = CellState {
        monos: vec![],
        index: HashMap::new(),
        z: IntMat::zero(0, 0),
        b: IntMat::zero(0, 0),
    };
    for r in first_page..=r_max {
        // record the current page
        let mut page = PresentedPage { r, cells: BTreeMap::new() };
        for ((f, c), st) in &state {
            let g = lattice_quotient(&column_span_basis(&st.z), &st.b)?;
            let exps = g.p_exponents(pa.p);
            if !exps.is_empty() {
                page.cells.insert((*f, *c), exps);
            }
        }
        pages.push(page);
        if r == r_max {
            break;
        }
        // page-r differential matrices per cell
        let keys: Vec<(i64, i64)> = state.keys().cloned().collect();
        let mut dmats: HashMap<(i64, i64), IntMat> = HashMap::new();
        for key in &keys {
            let (f, c) = *key;
            let tgt_key = (f + r, c - r - 1);
            let src = &state[key];
            let tgt = state.get(&tgt_key).unwrap_or(&empty);
            let mut d = IntMat::zero(tgt.monos.len(), src.monos.len());
            for (j, m) in src.monos.iter().enumerate() {
                for (tm, coeff) in pa.apply_page(r, m) {
                    let (tf, tc) = pa.mono_bidegree(&tm);
                    if (tf, tc) != (f + r, c - r - 1) {
                        return Err(Error::Schedule(format!(
                            "differential image leaves its cell on page {r}"
                        )));
                    }
                    if let Some(i) = tgt.index.get(&tm) {
                        d[(*i, j)] = coeff;
                    }
                    // images beyond the window are dropped; the window must
                    // be chosen large enough that this only affects cells
                    // outside the reported region
                }
            }
            dmats.insert(*key, d);
        }
        // transition to page r+1
        let mut next: BTreeMap<(i64, i64), CellState> = BTreeMap::new();
        for key in &keys {
            let (f, c) = *key;
            let st = &state[key];
            if st.monos.is_empty() {
                continue;
            }
            let d_out = &dmats[key];
            let tgt_key = (f + r, c - r - 1);
            let src_key = (f - r, c + r + 1);
            // schedule consistency: d_r of the old boundaries must die in the
            // target boundaries
            if let Some(tgt) = state.get(&tgt_key) {
                let img_b = d_out.mul(&st.b);
                for j in 0..img_b.cols {
                    let col = img_b.column(j);
                    if col.iter().all(Zero::is_zero) {
                        continue;
                    }
                    if solve_in_span(&column_span_basis(&tgt.b), &col).is_none() {
                        return Err(Error::Schedule(format!(
                            "page-{r} differential does not annihilate earlier boundaries at ({f}, {c})"
                        )));
                    }
                }
            }
            // new cycles: z' = {v in z : d v in span(b_target)}
            let ztgt_b = state.get(&tgt_key).map(|t| t.b.clone()).unwrap_or_else(|| {
                IntMat::zero(d_out.rows, 0)
            });
            let dz = d_out.mul(&st.z);
            let x = preimage_lattice(&dz, &ztgt_b);
            let z_new = column_span_basis(&st.z.mul(&x));
            // new boundaries: b' = b + d(cycles of the source cell)
            let mut b_new = st.b.clone();
            if let Some(src) = state.get(&src_key) {
                if !src.monos.is_empty() {
                    let d_in = &dmats[&src_key];
                    let img = d_in.mul(&src.z);
                    b_new = column_span_basis(&b_new.hconcat(&img));
                }
            }
            next.insert(
                *key,
                CellState {
                    monos: st.monos.clone(),
                    index: st.index.clone(),
                    z: z_new,
                    b: b_new,
                },
            );
        }
        state = next;
    }
    Ok(pages)
}

/// Expand a seed differential d_{r0}(g^{e0}) = coeff * target into the full
/// power-rule schedule d_{r0+k}(g^{e0 p^k}) = mult^k g^{e0(p^k - 1)} target,
/// up to the window bound. The multiplier is the unique generator of
/// bidegree (1, -1).
pub fn power_rule_differentials(
    pa: &PresentedAlgebra,
    base: usize,
    seed_page: i64,
    seed_target: Vec<(usize, i64)>,
    seed_coeff: i64,
) -> Result<Vec<ScheduleEntry>, Error> {
    if seed_coeff == 0 || seed_target.is_empty() {
        return Ok(vec![]);
    }
    let mult: Vec<usize> = pa
        .gens
        .iter()
        .enumerate()
        .filter(|(_, g)| g.filt == 1 && g.comp == -1)
        .map(|(i, _)| i)
        .collect();
    let [mult] = mult.as_slice() else {
        return Err(Error::Invalid(
            "power rule needs exactly one generator of bidegree (1, -1)".into(),
        ));
    };
    let g_total = pa.gens[base].total();
    let mut out = Vec::new();
    let mut k = 0u32;
    loop {
        let step = (pa.p as i64).pow(k);
        if g_total * step > pa.window.total.1 {
            break;
        }
        let mut target = seed_target.clone();
        if k > 0 {
            target.push((*mult, k as i64));
            target.push((base, step - 1));
        }
        // merge duplicate generators in the target list
        let mut merged: BTreeMap<usize, i64> = BTreeMap::new();
        for (g, a) in target {
            *merged.entry(g).or_insert(0) += a;
        }
        out.push(ScheduleEntry {
            page: seed_page + k as i64,
            action: Action::Power { gen: base, step: step as u32 },
            require_exact: vec![],
            extra_consume: vec![],
            target: merged.into_iter().collect(),
            coeff: seed_coeff,
            provenance: if k == 0 { Provenance::Seed } else { Provenance::PowerRule },
        });
        k += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_rule_schedule_expansion() {
        // seed d_1(mu0) = sx at p = 3 generates d_2(mu0^3) = x mu0^2 sx and
        // d_3(mu0^9) = x^2 mu0^8 sx inside a window of total degree <= 20
        let gens = vec![
            Generator { name: "mu0".into(), kind: GenKind::Polynomial, filt: 0, comp: 2 },
            Generator { name: "x".into(), kind: GenKind::Polynomial, filt: 1, comp: -1 },
            Generator { name: "sx".into(), kind: GenKind::Exterior, filt: 1, comp: 0 },
        ];
        let pa = PresentedAlgebra::new(
            3,
            1,
            1,
            gens,
            EvalWindow { total: (0, 20), filt: (0, 30) },
        )
        .unwrap();
        let entries = power_rule_differentials(&pa, 0, 1, vec![(2, 1)], 1).unwrap();
        assert_eq!(entries.len(), 3);
        assert_eq!(entries[0].page, 1);
        assert_eq!(entries[1].page, 2);
        // d_2(mu0^3) = x mu0^2 sx
        assert!(matches!(entries[1].action, Action::Power { gen: 0, step: 3 }));
        let mut t = entries[1].target.clone();
        t.sort();
        assert_eq!(t, vec![(0, 2), (1, 1), (2, 1)]);
        assert_eq!(entries[2].page, 3);
        let mut t = entries[2].target.clone();
        t.sort();
        assert_eq!(t, vec![(0, 8), (1, 2), (2, 1)]);
        assert_eq!(entries[2].provenance, Provenance::PowerRule);

        // a zero seed generates nothing
        assert!(power_rule_differentials(&pa, 0, 1, vec![(2, 1)], 0)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn bockstein_form_power_rule() {
        // seed d_1(mu1) = v0 lambda1 gives d_{j+1}(mu1^{p^j}) =
        // v0^{j+1} mu1^{p^j - 1} lambda1
        let p = 2u64;
        let gens = vec![
            Generator { name: "mu1".into(), kind: GenKind::Polynomial, filt: 0, comp: 2 * p as i64 },
            Generator { name: "v0".into(), kind: GenKind::Polynomial, filt: 1, comp: -1 },
            Generator {
                name: "lambda1".into(),
                kind: GenKind::Exterior,
                filt: 0,
                comp: 2 * p as i64 - 1,
            },
        ];
        let pa = PresentedAlgebra::new(
            p,
            1,
            1,
            gens,
            EvalWindow { total: (0, 18), filt: (0, 24) },
        )
        .unwrap();
        let entries = power_rule_differentials(&pa, 0, 1, vec![(1, 1), (2, 1)], 1).unwrap();
        // d_2(mu1^2) = v0^2 mu1 lambda1
        let mut t = entries[1].target.clone();
        t.sort();
        assert_eq!(t, vec![(0, 1), (1, 2), (2, 1)]);
    }

    #[test]
    fn empty_schedule_pages_all_equal() {
        let gens = vec![
            Generator { name: "a".into(), kind: GenKind::Polynomial, filt: 0, comp: 2 },
            Generator { name: "b".into(), kind: GenKind::Exterior, filt: 1, comp: 0 },
        ];
        let pa = PresentedAlgebra::new(
            5,
            1,
            1,
            gens,
            EvalWindow { total: (0, 6), filt: (0, 4) },
        )
        .unwrap();
        let pages = eval_presented(&pa, 1, 3).unwrap();
        assert_eq!(pages[0].cells, pages[1].cells);
        assert_eq!(pages[1].cells, pages[2].cells);
    }

    #[test]
    fn divided_power_tower_against_polynomial_truncation() {
        // E_1 = Gamma(xn) (x) P(y) (x) E(sy) with d_1(gamma_j(xn)) =
        // gamma_{j-1}(xn) sy over W_n coefficients: E_2 = coefficients (x)
        // P(y) in the window
        let n = 2u32;
        let gens = vec![
            Generator { name: "xn".into(), kind: GenKind::DividedPower, filt: 0, comp: 2 },
            Generator { name: "y".into(), kind: GenKind::Polynomial, filt: 1, comp: -1 },
            Generator { name: "sy".into(), kind: GenKind::Exterior, filt: 1, comp: 0 },
        ];
        let mut pa = PresentedAlgebra::new(
            3,
            1,
            n, // W_n coefficients
            gens,
            EvalWindow { total: (0, 6), filt: (0, 8) },
        )
        .unwrap();
        pa.add_entry(ScheduleEntry {
            page: 1,
            action: Action::GammaShift { gen: 0, amount: 1 },
            require_exact: vec![],
            extra_consume: vec![],
            target: vec![(2, 1)],
            coeff: 1,
            provenance: Provenance::Seed,
        })
        .unwrap();
        let pages = eval_presented(&pa, 1, 2).unwrap();
        let e2 = &pages[1];
        // surviving cells away from the filtration edge: y^b only, each W_n
        for ((s, t), exps) in &e2.cells {
            if *s > 6 {
                continue; // filtration-edge cells are truncation artifacts
            }
            assert_eq!(s + t, 0, "only P(y) survives at (s={s}, t={t})");
            assert_eq!(exps, &vec![n; 1]);
        }
        let clean = e2.cells.iter().filter(|((s, _), _)| *s <= 6).count();
        assert_eq!(clean, 7);
    }

    #[test]
    fn bidegree_validation_rejects_bad_entries() {
        let gens = vec![
            Generator { name: "a".into(), kind: GenKind::Polynomial, filt: 0, comp: 2 },
            Generator { name: "b".into(), kind: GenKind::Exterior, filt: 1, comp: 0 },
        ];
        let mut pa = PresentedAlgebra::new(
            2,
            1,
            1,
            gens,
            EvalWindow { total: (0, 6), filt: (0, 4) },
        )
        .unwrap();
        // d_2(a) = b has bidegree shift (1, -2), not (2, -3)
        let err = pa.add_entry(ScheduleEntry {
            page: 2,
            action: Action::Power { gen: 0, step: 1 },
            require_exact: vec![],
            extra_consume: vec![],
            target: vec![(1, 1)],
            coeff: 1,
            provenance: Provenance::Seed,
        });
        assert!(err.is_err());
    }

    #[test]
    fn laurent_generators_need_bounds() {
        let gens = vec![Generator {
            name: "t".into(),
            kind: GenKind::Laurent { lo: -3, hi: 3 },
            filt: 0,
            comp: -2,
        }];
        let pa = PresentedAlgebra::new(
            2,
            1,
            1,
            gens,
            EvalWindow { total: (-6, 6), filt: (0, 0) },
        )
        .unwrap();
        let pages = eval_presented(&pa, 1, 1).unwrap();
        assert_eq!(pages[0].cells.len(), 7);
    }
}
