//! Finite windowed subcategories: orthogonals, star products, extension
//! closure.
//!
//! A subcategory is stored as its set of indecomposables with shifts in
//! `[-W, W]`; it stands for the additive, summand-closed hull.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::derived::{DerivedModel, Morphism};
use crate::error::{LabError, Result};
use crate::homotopy_cat::DerivedIndec;
use crate::linalg::Matrix;

pub const DEFAULT_WINDOW: i32 = 3;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Subcat {
    ids: BTreeSet<DerivedIndec>,
    window: i32,
}

impl Subcat {
    pub fn new(ids: impl IntoIterator<Item = DerivedIndec>, window: i32) -> Result<Self> {
        let ids: BTreeSet<_> = ids.into_iter().collect();
        if let Some(&x) = ids.iter().find(|x| x.shift.abs() > window) {
            return Err(LabError::WindowOverflow(x, window));
        }
        Ok(Self { ids, window })
    }

    /// Keeps only the members inside the window.
    pub fn truncated(ids: impl IntoIterator<Item = DerivedIndec>, window: i32) -> Self {
        Self { ids: ids.into_iter().filter(|x| x.shift.abs() <= window).collect(), window }
    }

    pub fn empty(window: i32) -> Self {
        Self { ids: BTreeSet::new(), window }
    }

    pub fn all(model: &DerivedModel, window: i32) -> Self {
        Self { ids: model.objects(-window, window).into_iter().collect(), window }
    }

    pub fn ids(&self) -> &BTreeSet<DerivedIndec> {
        &self.ids
    }

    pub fn window(&self) -> i32 {
        self.window
    }

    pub fn contains(&self, x: DerivedIndec) -> bool {
        self.ids.contains(&x)
    }

    /// Whether every summand lies in the subcategory.
    pub fn contains_all(&self, xs: &[DerivedIndec]) -> bool {
        xs.iter().all(|x| self.ids.contains(x))
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn is_subset(&self, other: &Subcat) -> bool {
        self.ids.is_subset(&other.ids)
    }

    pub fn intersect(&self, other: &Subcat) -> Subcat {
        Subcat { ids: self.ids.intersection(&other.ids).copied().collect(), window: self.window }
    }

    pub fn union(&self, other: &Subcat) -> Subcat {
        Subcat { ids: self.ids.union(&other.ids).copied().collect(), window: self.window }
    }

    /// `Σ^k`, failing if a member leaves the window.
    pub fn shifted(&self, k: i32) -> Result<Subcat> {
        Subcat::new(self.ids.iter().map(|x| x.shifted(k)), self.window)
    }

    /// `Σ^k`, dropping members that leave the window.
    pub fn shifted_truncated(&self, k: i32) -> Subcat {
        Subcat::truncated(self.ids.iter().map(|x| x.shifted(k)), self.window)
    }

    pub fn filter(&self, keep: impl Fn(DerivedIndec) -> bool) -> Subcat {
        Subcat { ids: self.ids.iter().copied().filter(|&x| keep(x)).collect(), window: self.window }
    }

    pub fn labels(&self, model: &DerivedModel) -> Vec<String> {
        self.ids.iter().map(|&x| model.label(x)).collect()
    }
}

/// `{a in window : Hom(s, a) = 0}`.
pub fn perp_right(model: &DerivedModel, s: &Subcat) -> Subcat {
    Subcat::all(model, s.window).filter(|a| s.ids.iter().all(|&b| model.hom(b, a) == 0))
}

/// `{a in window : Hom(a, s) = 0}`.
pub fn perp_left(model: &DerivedModel, s: &Subcat) -> Subcat {
    Subcat::all(model, s.window).filter(|a| s.ids.iter().all(|&b| model.hom(a, b) == 0))
}

pub fn intersect(a: &Subcat, b: &Subcat) -> Subcat {
    a.intersect(b)
}

/// Whether `Hom(x, y) = 0` for all members.
pub fn hom_vanishes(model: &DerivedModel, x: &Subcat, y: &Subcat) -> bool {
    x.ids.iter().all(|&a| y.ids.iter().all(|&b| model.hom(a, b) == 0))
}

/// Bounds for the enumeration route of [`star`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StarConfig {
    /// Largest multiplicity of one indecomposable in an endpoint.
    pub multiplicity_cap: usize,
    /// Largest total number of summands across both endpoints.
    pub max_terms: usize,
}

impl Default for StarConfig {
    fn default() -> Self {
        Self { multiplicity_cap: 2, max_terms: 4 }
    }
}

/// Middle terms of triangles `a -> t -> b -> Σa`, `a ∈ add x`, `b ∈ add y`.
///
/// When `Hom(x, y) = 0`, `t ∈ x ∗ y` exactly when the cone of its minimal
/// right `x`-approximation lies in `add y`, which is exact. Otherwise the
/// connecting maps `b -> Σa` are enumerated under `cfg`.
pub fn star(model: &DerivedModel, x: &Subcat, y: &Subcat, cfg: &StarConfig) -> Result<Subcat> {
    check_overflow(x)?;
    if hom_vanishes(model, x, y) {
        return Ok(star_by_approximation(model, x, y));
    }
    let mut out = x.union(y);
    enumerate_middle_terms(model, x, y, cfg, &mut |t| {
        out.ids.extend(t.iter().copied().filter(|e| e.shift.abs() <= x.window));
        true
    })?;
    Ok(out)
}

fn check_overflow(x: &Subcat) -> Result<()> {
    match x.ids.iter().find(|a| a.shift + 1 > x.window) {
        Some(&a) => Err(LabError::WindowOverflow(a.shifted(1), x.window)),
        None => Ok(()),
    }
}

/// Exact route of [`star`] for `Hom(x, y) = 0`.
pub fn star_by_approximation(model: &DerivedModel, x: &Subcat, y: &Subcat) -> Subcat {
    Subcat::all(model, x.window).filter(|t| in_star_by_approximation(model, t, &x.ids, y))
}

pub fn in_star_by_approximation(
    model: &DerivedModel,
    t: DerivedIndec,
    x: &BTreeSet<DerivedIndec>,
    y: &Subcat,
) -> bool {
    let f = model.minimal_right_approximation(&[t], x);
    model.cone(&f).map(|c| y.contains_all(&c)).unwrap_or(false)
}

/// Enumeration route of [`star`], exposed for cross-checks.
pub fn star_by_enumeration(model: &DerivedModel, x: &Subcat, y: &Subcat, cfg: &StarConfig) -> Result<Subcat> {
    check_overflow(x)?;
    let mut out = x.union(y);
    enumerate_middle_terms(model, x, y, cfg, &mut |t| {
        out.ids.extend(t.iter().copied().filter(|e| e.shift.abs() <= x.window));
        true
    })?;
    Ok(out)
}

/// Multisets of `pool` with each element at most `cap` times and total
/// size in `1..=max`.
fn multisets(pool: &[DerivedIndec], cap: usize, max: usize) -> Vec<Vec<DerivedIndec>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(
        pool: &[DerivedIndec],
        i: usize,
        cap: usize,
        max: usize,
        cur: &mut Vec<DerivedIndec>,
        out: &mut Vec<Vec<DerivedIndec>>,
    ) {
        if i == pool.len() {
            if !cur.is_empty() {
                out.push(cur.clone());
            }
            return;
        }
        for m in 0..=cap {
            if cur.len() + m > max {
                break;
            }
            for _ in 0..m {
                cur.push(pool[i]);
            }
            rec(pool, i + 1, cap, max, cur, out);
            for _ in 0..m {
                cur.pop();
            }
        }
    }
    rec(pool, 0, cap, max, &mut cur, &mut out);
    out
}

/// Calls `visit` with the middle term `Σ⁻¹cone(ε)` of every connected
/// connecting map `ε: ⊕b -> Σ(⊕a)` with no zero row or column. Stops early
/// when `visit` returns `false`; returns whether it ran to completion.
fn enumerate_middle_terms(
    model: &DerivedModel,
    x: &Subcat,
    y: &Subcat,
    cfg: &StarConfig,
    visit: &mut dyn FnMut(&[DerivedIndec]) -> bool,
) -> Result<bool> {
    let field = model.field();
    let p = field.order();
    let xa: Vec<DerivedIndec> =
        x.ids.iter().copied().filter(|&a| y.ids.iter().any(|&b| model.hom(b, a.shifted(1)) > 0)).collect();
    let yb: Vec<DerivedIndec> =
        y.ids.iter().copied().filter(|&b| x.ids.iter().any(|&a| model.hom(b, a.shifted(1)) > 0)).collect();
    let a_sets = multisets(&xa, cfg.multiplicity_cap, cfg.max_terms.saturating_sub(1));
    let b_sets = multisets(&yb, cfg.multiplicity_cap, cfg.max_terms.saturating_sub(1));
    for aset in &a_sets {
        for bset in &b_sets {
            if aset.len() + bset.len() > cfg.max_terms {
                continue;
            }
            let slots: Vec<(usize, usize)> = (0..aset.len())
                .flat_map(|r| (0..bset.len()).map(move |c| (r, c)))
                .filter(|&(r, c)| model.hom(bset[c], aset[r].shifted(1)) > 0)
                .collect();
            if !connected(aset.len(), bset.len(), &slots, u64::MAX) {
                continue;
            }
            let target: Vec<DerivedIndec> = aset.iter().map(|a| a.shifted(1)).collect();
            let total = (p as u64).pow(slots.len() as u32);
            for code in 1..total {
                let mut values = Vec::with_capacity(slots.len());
                let mut rest = code;
                for _ in 0..slots.len() {
                    values.push((rest % p as u64) as u32);
                    rest /= p as u64;
                }
                let support = values.iter().enumerate().fold(0u64, |m, (i, &v)| if v != 0 { m | 1 << i } else { m });
                if !connected(aset.len(), bset.len(), &slots, support) {
                    continue;
                }
                let mut coeffs = Matrix::zeros(field, aset.len(), bset.len());
                for (&(r, c), &v) in slots.iter().zip(&values) {
                    coeffs.set(r, c, v);
                }
                let eps = Morphism { source: bset.clone(), target: target.clone(), coeffs };
                let middle: Vec<DerivedIndec> = model.cone(&eps)?.into_iter().map(|e| e.shifted(-1)).collect();
                if !visit(&middle) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Whether the bipartite graph on `rows + cols` vertices with the edges of
/// `slots` selected by `mask` covers every vertex and is connected.
fn connected(rows: usize, cols: usize, slots: &[(usize, usize)], mask: u64) -> bool {
    let n = rows + cols;
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    let mut touched = vec![false; n];
    for (i, &(r, c)) in slots.iter().enumerate() {
        if mask >> i & 1 == 1 {
            touched[r] = true;
            touched[rows + c] = true;
            let (a, b) = (find(&mut parent, r), find(&mut parent, rows + c));
            parent[a] = b;
        }
    }
    if touched.iter().any(|t| !t) {
        return false;
    }
    let root = find(&mut parent, 0);
    (0..n).all(|v| find(&mut parent, v) == root)
}

/// Least `s' ⊇ s` with `s' ∗ s' = s'`.
pub fn extension_closure(model: &DerivedModel, s: &Subcat, cfg: &StarConfig) -> Result<Subcat> {
    let mut cur = s.clone();
    loop {
        let next = star(model, &cur, &cur, cfg)?;
        if next == cur {
            return Ok(cur);
        }
        cur = next;
    }
}

/// Whether `s ∗ s ⊆ s`, stopping at the first middle term that escapes.
pub fn is_extension_closed(model: &DerivedModel, s: &Subcat, cfg: &StarConfig) -> Result<bool> {
    check_overflow(s)?;
    if hom_vanishes(model, s, s) {
        return Ok(star_by_approximation(model, s, s) == *s);
    }
    enumerate_middle_terms(model, s, s, cfg, &mut |t| t.iter().all(|e| s.contains(*e)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;
    use crate::quiver_rep::{indec_catalog, Quiver};
    use proptest::prelude::*;

    fn model(n: usize) -> DerivedModel {
        DerivedModel::new(indec_catalog(&Quiver::linear(n), Field::default()).unwrap()).unwrap()
    }

    fn d(m: usize, s: i32) -> DerivedIndec {
        DerivedIndec::new(m, s)
    }

    fn sub(ids: &[(usize, i32)]) -> Subcat {
        Subcat::new(ids.iter().map(|&(m, s)| d(m, s)), DEFAULT_WINDOW).unwrap()
    }

    #[test]
    fn perp_examples() {
        let m = model(2);
        let all = Subcat::all(&m, DEFAULT_WINDOW);
        assert_eq!(perp_right(&m, &Subcat::empty(DEFAULT_WINDOW)), all);
        let projectives = sub(&[(1, 0), (2, 0)]);
        let r = perp_right(&m, &projectives);
        assert!(r.contains(d(0, -1)));
        assert!(!r.contains(d(0, 0)) && !r.contains(d(1, 0)) && !r.contains(d(2, 0)));
        let s = sub(&[(0, 0), (2, 1)]);
        assert!(s.is_subset(&perp_left(&m, &perp_right(&m, &s))));
    }

    #[test]
    fn star_examples() {
        let m = model(2);
        let cfg = StarConfig::default();
        let s = sub(&[(1, 0), (2, 0)]);
        let c = star(&m, &s, &s.shifted(1).unwrap(), &cfg).unwrap();
        assert_eq!(c, sub(&[(0, 0), (1, 0), (2, 0), (1, 1), (2, 1)]));
        assert_eq!(star(&m, &s, &Subcat::empty(DEFAULT_WINDOW), &cfg).unwrap(), s);
        let got = star(&m, &sub(&[(1, 0)]), &sub(&[(0, 0)]), &cfg).unwrap();
        assert_eq!(got, sub(&[(0, 0), (1, 0), (2, 0)]));
    }

    #[test]
    fn extension_closure_examples() {
        let m = model(2);
        let cfg = StarConfig::default();
        let simple = sub(&[(0, 0), (1, 0)]);
        assert_eq!(extension_closure(&m, &simple, &cfg).unwrap(), sub(&[(0, 0), (1, 0), (2, 0)]));
        let e = Subcat::empty(DEFAULT_WINDOW);
        assert_eq!(extension_closure(&m, &e, &cfg).unwrap(), e);
        let c = sub(&[(0, 0), (1, 0), (2, 0), (1, 1), (2, 1)]);
        assert_eq!(extension_closure(&m, &c, &cfg).unwrap(), c);
        assert!(is_extension_closed(&m, &c, &cfg).unwrap());
        assert!(!is_extension_closed(&m, &simple, &cfg).unwrap());
    }

    #[test]
    fn overflow_is_an_error() {
        let m = model(2);
        let top = sub(&[(0, DEFAULT_WINDOW)]);
        assert!(matches!(star(&m, &top, &top, &StarConfig::default()), Err(LabError::WindowOverflow(..))));
    }

    #[test]
    fn intersections() {
        let s = sub(&[(0, 0), (1, 1)]);
        let e = Subcat::empty(DEFAULT_WINDOW);
        assert_eq!(intersect(&e, &s), e);
        assert_eq!(intersect(&s, &s), s);
        let c = sub(&[(0, 0), (1, 0), (2, 0), (1, 1), (2, 1)]);
        let sigma_s = sub(&[(1, 1), (2, 1)]);
        assert_eq!(intersect(&c, &sigma_s), sigma_s);
    }

    /// Both routes agree whenever the fast one applies, and the cap does
    /// not matter: multiplicity 3 or more terms add nothing.
    #[test]
    fn routes_and_caps_agree() {
        let cfg = StarConfig::default();
        let wide = StarConfig { multiplicity_cap: 3, max_terms: 5 };
        for n in [2usize, 3] {
            let m = model(n);
            let k = m.catalog().len();
            let objs: Vec<DerivedIndec> = m.objects(0, 1);
            for mask in (0u32..1 << (2 * k)).step_by(if n == 2 { 1 } else { 37 }) {
                let chosen: Vec<_> = (0..2 * k).filter(|i| mask >> i & 1 == 1).map(|i| objs[i]).collect();
                let x = Subcat::new(chosen.iter().copied().filter(|o| o.shift == 0), DEFAULT_WINDOW).unwrap();
                let y = Subcat::new(chosen.iter().copied().filter(|o| o.shift == 1), DEFAULT_WINDOW).unwrap();
                let y0 = y.shifted(-1).unwrap();
                for (a, b) in [(&x, &y), (&y0, &x), (&x, &y0)] {
                    let slow = star_by_enumeration(&m, a, b, &cfg).unwrap();
                    if hom_vanishes(&m, a, b) {
                        assert_eq!(star_by_approximation(&m, a, b), slow);
                    }
                    if n == 2 {
                        assert_eq!(star_by_enumeration(&m, a, b, &wide).unwrap(), slow);
                    }
                }
            }
        }
    }

    #[test]
    fn star_associative_on_a2() {
        let m = model(2);
        let cfg = StarConfig::default();
        let pieces: Vec<Subcat> = vec![sub(&[(0, 0)]), sub(&[(1, 0)]), sub(&[(2, 0)]), sub(&[(1, 1)]), sub(&[(0, -1)])];
        for x in &pieces {
            for y in &pieces {
                for z in &pieces {
                    let l = star(&m, &star(&m, x, y, &cfg).unwrap(), z, &cfg).unwrap();
                    let r = star(&m, x, &star(&m, y, z, &cfg).unwrap(), &cfg).unwrap();
                    assert_eq!(l, r);
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn perps_are_antitone_and_double_perp_closes(a in 0u64..1 << 18, b in 0u64..1 << 18) {
            let m = model(2);
            let objs = m.objects(-1, 1);
            let pick = |mask: u64| Subcat::new((0..objs.len()).filter(|i| mask >> i & 1 == 1).map(|i| objs[i]), DEFAULT_WINDOW).unwrap();
            let s = pick(a);
            let t = s.union(&pick(b));
            prop_assert!(perp_right(&m, &t).is_subset(&perp_right(&m, &s)));
            prop_assert!(perp_left(&m, &t).is_subset(&perp_left(&m, &s)));
            let close = |x: &Subcat| perp_left(&m, &perp_right(&m, x));
            prop_assert!(s.is_subset(&close(&s)));
            prop_assert_eq!(close(&close(&s)), close(&s));
        }
    }
}
