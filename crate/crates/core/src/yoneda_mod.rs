//! The restricted Yoneda functor `F: C -> mod S` and torsion pairs in
//! `mod S`.
//!
//! `End(⊕ P_i)` is the path algebra again, so `mod S` is modelled by the
//! representations of the same quiver and `F(c)` is the representation
//! `i ↦ Hom(P_i@0, c)`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::derived::{DerivedModel, Morphism};
use crate::error::{LabError, Result};
use crate::ext_coheart::ExtendedCoheart;
use crate::homotopy_cat::DerivedIndec;
use crate::linalg::Matrix;
use crate::quiver_rep::{hom_space, sub_quotient_pairs, Catalog, Rep, RepMorphism};
use crate::subcat::{is_extension_closed, StarConfig, Subcat};

fn projective_at(model: &DerivedModel, v: usize) -> DerivedIndec {
    DerivedIndec::new(model.catalog().projective(v), 0)
}

/// `F(c)`; an arrow `i -> j` acts by precomposition with the basis map
/// `P_j -> P_i`.
pub fn restricted_yoneda(model: &DerivedModel, ec: &ExtendedCoheart, c: DerivedIndec) -> Result<Rep> {
    if !ec.c.contains(c) {
        return Err(LabError::NotInExtendedCoheart(c));
    }
    let cat = model.catalog();
    let q = cat.quiver();
    let field = model.field();
    let dims: Vec<usize> = (1..=q.vertex_count()).map(|v| model.hom(projective_at(model, v), c)).collect();
    let mats = q
        .arrows()
        .iter()
        .map(|&(i, j)| {
            let mut m = Matrix::zeros(field, dims[j - 1], dims[i - 1]);
            if dims[i - 1] == 1 && dims[j - 1] == 1 {
                m.set(0, 0, model.compose_const(projective_at(model, j), projective_at(model, i), c));
            }
            m
        })
        .collect();
    Rep::new(q, field, dims, mats)
}

/// `F` applied to the basis map `a -> b` (zero if there is none).
pub fn yoneda_on_basis(model: &DerivedModel, ec: &ExtendedCoheart, a: DerivedIndec, b: DerivedIndec) -> Result<RepMorphism> {
    let (fa, fb) = (restricted_yoneda(model, ec, a)?, restricted_yoneda(model, ec, b)?);
    let n = model.catalog().quiver().vertex_count();
    let maps = (1..=n)
        .map(|v| {
            let mut m = Matrix::zeros(model.field(), fb.dims()[v - 1], fa.dims()[v - 1]);
            if m.shape() == (1, 1) {
                m.set(0, 0, model.compose_const(projective_at(model, v), a, b));
            }
            m
        })
        .collect();
    Ok(RepMorphism { maps })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TorsionPair {
    pub t: BTreeSet<usize>,
    pub f: BTreeSet<usize>,
    pub functorially_finite: bool,
}

impl TorsionPair {
    pub fn same_classes(&self, other: &TorsionPair) -> bool {
        self.t == other.t && self.f == other.f
    }

    pub fn names(cat: &Catalog, ids: &BTreeSet<usize>) -> Vec<String> {
        ids.iter().map(|&i| cat.name(i)).collect()
    }
}

/// `{m : Hom(t, m) = 0}`.
pub fn right_perp(cat: &Catalog, t: &BTreeSet<usize>) -> BTreeSet<usize> {
    (0..cat.len()).filter(|&m| t.iter().all(|&x| cat.hom_dim(x, m) == 0)).collect()
}

/// `{m : Hom(m, f) = 0}`.
pub fn left_perp(cat: &Catalog, f: &BTreeSet<usize>) -> BTreeSet<usize> {
    (0..cat.len()).filter(|&m| f.iter().all(|&x| cat.hom_dim(m, x) == 0)).collect()
}

/// Quotient-closed and extension-closed; extensions are the middle terms of
/// the derived star product in shift 0.
pub fn is_torsion_class(model: &DerivedModel, t: &BTreeSet<usize>, cfg: &StarConfig) -> Result<bool> {
    if !model.catalog().is_quotient_closed(t) {
        return Ok(false);
    }
    let at_zero = Subcat::new(t.iter().map(|&m| DerivedIndec::new(m, 0)), 1)?;
    is_extension_closed(model, &at_zero, cfg)
}

/// Whether every module has a left `add(t)`-approximation, checked on the
/// universal map `m -> ⊕_{t, basis of Hom(m, t)} t`.
pub fn is_functorially_finite(cat: &Catalog, t: &BTreeSet<usize>) -> Result<bool> {
    let q = cat.quiver();
    for m in cat.modules() {
        let mut components: Vec<(usize, RepMorphism)> = Vec::new();
        for &x in t {
            for f in hom_space(q, &m.rep, &cat.module(x).rep)? {
                components.push((x, f));
            }
        }
        for &y in t {
            let need = hom_space(q, &m.rep, &cat.module(y).rep)?.len();
            if need == 0 {
                continue;
            }
            let mut images = Vec::new();
            for (x, f) in &components {
                for g in hom_space(q, &cat.module(*x).rep, &cat.module(y).rep)? {
                    images.push(g.compose(f).flatten());
                }
            }
            let rank = if images.is_empty() {
                0
            } else {
                Matrix::from_columns(cat.field(), images[0].len(), &images).rank()
            };
            if rank != need {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Every indecomposable `m` has a submodule in `add t` with quotient in
/// `add f`; returns the first module without one.
pub fn missing_canonical_sequence(cat: &Catalog, tp: &TorsionPair) -> Result<Option<usize>> {
    for m in cat.modules() {
        let mut found = false;
        for (sub, quot) in sub_quotient_pairs(cat.quiver(), &m.rep)? {
            let s = cat.decompose_rep(&sub)?;
            let r = cat.decompose_rep(&quot)?;
            if s.iter().all(|i| tp.t.contains(i)) && r.iter().all(|i| tp.f.contains(i)) {
                found = true;
                break;
            }
        }
        if !found {
            return Ok(Some(m.id));
        }
    }
    Ok(None)
}

/// All torsion pairs, ordered by `|t|` then by `t`.
pub fn enumerate_torsion_pairs(model: &DerivedModel, cfg: &StarConfig) -> Result<Vec<TorsionPair>> {
    let cat = model.catalog();
    let k = cat.len();
    if k >= 32 {
        return Err(LabError::Config(format!("{k} modules are too many to enumerate")));
    }
    let mut out = Vec::new();
    for mask in 0u32..1 << k {
        let t: BTreeSet<usize> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
        if !is_torsion_class(model, &t, cfg)? {
            continue;
        }
        let f = right_perp(cat, &t);
        if left_perp(cat, &f) != t {
            return Err(LabError::Postcondition(format!(
                "torsion class {:?} is not the left perpendicular of its torsion-free class",
                TorsionPair::names(cat, &t)
            )));
        }
        let tp = TorsionPair { functorially_finite: is_functorially_finite(cat, &t)?, t, f };
        if let Some(m) = missing_canonical_sequence(cat, &tp)? {
            return Err(LabError::Postcondition(format!("{} has no canonical sequence", cat.name(m))));
        }
        out.push(tp);
    }
    out.sort_by(|a, b| (a.t.len(), &a.t).cmp(&(b.t.len(), &b.t)));
    Ok(out)
}

pub fn minimal_left_approximation(model: &DerivedModel, c: DerivedIndec, target: &Subcat) -> Morphism {
    model.minimal_left_approximation(&[c], target.ids())
}

/// Wakamatsu: for an extension-closed target, `Hom(Σ⁻¹cone, target) = 0`.
pub fn wakamatsu_check(model: &DerivedModel, approx: &Morphism, target: &Subcat) -> Result<bool> {
    Ok(model.wakamatsu_holds(&model.cone(approx)?, target.ids()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;
    use crate::quiver_rep::{indec_catalog, Quiver};
    use crate::subcat::DEFAULT_WINDOW;

    fn setup(n: usize, bits: &str) -> (DerivedModel, ExtendedCoheart) {
        let q = Quiver::with_orientation(n, bits).unwrap();
        let m = DerivedModel::new(indec_catalog(&q, Field::default()).unwrap()).unwrap();
        let ec = ExtendedCoheart::standard(&m, DEFAULT_WINDOW).unwrap();
        (m, ec)
    }

    fn d(m: usize, s: i32) -> DerivedIndec {
        DerivedIndec::new(m, s)
    }

    #[test]
    fn yoneda_recovers_modules_and_kills_sigma_s() {
        for bits in ["00", "01", "10", "11"] {
            let (m, ec) = setup(3, bits);
            let cat = m.catalog();
            for &c in ec.c.ids() {
                let f = restricted_yoneda(&m, &ec, c).unwrap();
                if c.shift == 0 {
                    assert_eq!(cat.decompose_rep(&f).unwrap(), vec![c.module]);
                    assert_eq!(f.dims(), cat.module(c.module).rep.dims());
                } else {
                    assert!(f.is_zero());
                    assert!(ec.sigma_s().contains(c));
                }
            }
        }
        let (m, ec) = setup(2, "0");
        assert_eq!(m.catalog().decompose_rep(&restricted_yoneda(&m, &ec, d(0, 0)).unwrap()).unwrap(), vec![0]);
        assert!(restricted_yoneda(&m, &ec, d(0, -1)).is_err());
    }

    #[test]
    fn yoneda_is_functorial_on_basis_maps() {
        let (m, ec) = setup(3, "00");
        let q = m.catalog().quiver();
        for &a in ec.c.ids() {
            for &b in ec.c.ids() {
                let g = yoneda_on_basis(&m, &ec, a, b).unwrap();
                let (fa, fb) = (restricted_yoneda(&m, &ec, a).unwrap(), restricted_yoneda(&m, &ec, b).unwrap());
                for (k, &(s, t)) in q.arrows().iter().enumerate() {
                    assert_eq!(g.maps[t - 1].mul(fa.mat(k)), fb.mat(k).mul(&g.maps[s - 1]));
                }
            }
        }
    }

    #[test]
    fn a2_torsion_pairs() {
        let (m, _) = setup(2, "0");
        let all = enumerate_torsion_pairs(&m, &StarConfig::default()).unwrap();
        let ts: Vec<Vec<usize>> = all.iter().map(|p| p.t.iter().copied().collect()).collect();
        assert_eq!(ts, vec![vec![], vec![0], vec![1], vec![0, 2], vec![0, 1, 2]]);
        assert!(all.iter().all(|p| p.functorially_finite));
    }

    #[test]
    fn torsion_counts() {
        for (n, expect) in [(1usize, 2usize), (3, 14)] {
            let bits = "0".repeat(n - 1);
            let (m, _) = setup(n, &bits);
            assert_eq!(enumerate_torsion_pairs(&m, &StarConfig::default()).unwrap().len(), expect);
        }
    }

    #[test]
    fn approximation_examples() {
        let (m, _) = setup(2, "0");
        let y = Subcat::new([d(0, 0), d(2, 1), d(1, 1)], DEFAULT_WINDOW).unwrap();
        let f = minimal_left_approximation(&m, d(1, 0), &y);
        assert!(f.target.is_empty());
        assert_eq!(m.cone(&f).unwrap(), vec![d(1, 1)]);
        assert!(wakamatsu_check(&m, &f, &y).unwrap());
        let g = minimal_left_approximation(&m, d(2, 0), &y);
        assert_eq!(g.target, vec![d(0, 0)]);
        assert_eq!(m.cone(&g).unwrap(), vec![d(1, 1)]);
        assert!(wakamatsu_check(&m, &g, &y).unwrap());
        let split = minimal_left_approximation(&m, d(0, 0), &y);
        assert!(m.cone(&split).unwrap().is_empty());
    }
}
