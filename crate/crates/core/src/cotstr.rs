//! Co-t-structures between the standard one and its shift.
//!
//! The standard aisle `A` contains every non-projective module in shift
//! `<= -2` and every projective in shift `<= -1`. An intermediate aisle is
//! `A ∪ delta` for a subset `delta` of the universe `ΣA \ A`, so the aisle
//! is Σ⁻¹-closed and has infinite tails without storing them. Membership in
//! the aisle and co-aisle is decided for any shift: Homs only reach one
//! shift up, so the co-aisle test only looks at two shifts of the aisle.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::derived::DerivedModel;
use crate::error::{LabError, Result};
use crate::homotopy_cat::DerivedIndec;
use crate::subcat::{hom_vanishes, star_by_approximation, Subcat};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CoTStructure {
    delta: BTreeSet<DerivedIndec>,
    window: i32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Axiom {
    SigmaClosure,
    ExtensionClosure,
    Orthogonality,
    Decomposition,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::SigmaClosure => "aisle closed under Σ⁻¹",
            Axiom::ExtensionClosure => "aisle and co-aisle closed under extensions",
            Axiom::Orthogonality => "Hom(aisle, co-aisle) = 0",
            Axiom::Decomposition => "every object is an extension of co-aisle by aisle",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomFailure {
    pub axiom: Axiom,
    pub witness: Vec<DerivedIndec>,
    pub detail: String,
}

/// Objects `ΣA \ A`: non-projectives in shift -1 and projectives in shift 0.
pub fn universe(model: &DerivedModel) -> Vec<DerivedIndec> {
    let cat = model.catalog();
    let mut out: Vec<DerivedIndec> = (0..cat.len()).filter(|&m| !cat.is_projective(m)).map(|m| DerivedIndec::new(m, -1)).collect();
    out.extend(cat.projectives().into_iter().map(|m| DerivedIndec::new(m, 0)));
    out.sort();
    out
}

fn in_standard_aisle(model: &DerivedModel, x: DerivedIndec) -> bool {
    x.shift <= -2 || (x.shift == -1 && model.catalog().is_projective(x.module))
}

impl CoTStructure {
    pub fn new(model: &DerivedModel, delta: impl IntoIterator<Item = DerivedIndec>, window: i32) -> Result<Self> {
        if window < 2 {
            return Err(LabError::Config(format!("window {window} is too small; need at least 2")));
        }
        let uni: BTreeSet<_> = universe(model).into_iter().collect();
        let delta: BTreeSet<_> = delta.into_iter().collect();
        if let Some(x) = delta.iter().find(|x| !uni.contains(x)) {
            return Err(LabError::Config(format!("{} is not between the standard aisle and its shift", model.label(*x))));
        }
        Ok(Self { delta, window })
    }

    pub fn standard(window: i32) -> Self {
        Self { delta: BTreeSet::new(), window }
    }

    /// `(ΣA, ΣB)`.
    pub fn shifted_standard(model: &DerivedModel, window: i32) -> Self {
        Self { delta: universe(model).into_iter().collect(), window }
    }

    pub fn delta(&self) -> &BTreeSet<DerivedIndec> {
        &self.delta
    }

    pub fn window(&self) -> i32 {
        self.window
    }

    pub fn aisle_contains(&self, model: &DerivedModel, x: DerivedIndec) -> bool {
        in_standard_aisle(model, x) || self.delta.contains(&x)
    }

    pub fn coaisle_contains(&self, model: &DerivedModel, x: DerivedIndec) -> bool {
        model
            .objects(x.shift - 1, x.shift)
            .into_iter()
            .all(|a| model.hom(a, x) == 0 || !self.aisle_contains(model, a))
    }

    /// Whether `Hom(x, B') = 0`.
    fn left_of_coaisle(&self, model: &DerivedModel, x: DerivedIndec) -> bool {
        model
            .objects(x.shift, x.shift + 1)
            .into_iter()
            .all(|b| model.hom(x, b) == 0 || !self.coaisle_contains(model, b))
    }

    pub fn aisle(&self, model: &DerivedModel) -> Subcat {
        Subcat::all(model, self.window).filter(|x| self.aisle_contains(model, x))
    }

    pub fn coaisle(&self, model: &DerivedModel) -> Subcat {
        Subcat::all(model, self.window).filter(|x| self.coaisle_contains(model, x))
    }

    /// Shifts checked by [`verify`](Self::verify).
    pub fn interior(&self) -> (i32, i32) {
        (-(self.window - 1), self.window - 1)
    }

    /// Checks the axioms on every object with shift in the interior of the
    /// window and returns the first failure.
    ///
    /// Extension closure is checked as `A' = ⊥B'`: both orthogonal classes
    /// are extension-closed, and a co-t-structure satisfies it.
    pub fn verify(&self, model: &DerivedModel) -> Option<AxiomFailure> {
        let (lo, hi) = self.interior();
        let objs = model.objects(lo, hi);
        for &a in &objs {
            if self.aisle_contains(model, a) && !self.aisle_contains(model, a.shifted(-1)) {
                return Some(AxiomFailure {
                    axiom: Axiom::SigmaClosure,
                    witness: vec![a],
                    detail: format!("{} is in the aisle but its desuspension is not", model.label(a)),
                });
            }
        }
        for &t in &objs {
            let (left, inside) = (self.left_of_coaisle(model, t), self.aisle_contains(model, t));
            if left != inside {
                let detail = if left {
                    format!("{} is left orthogonal to the co-aisle but not in the aisle", model.label(t))
                } else {
                    format!("{} is in the aisle but maps to the co-aisle", model.label(t))
                };
                return Some(AxiomFailure { axiom: Axiom::ExtensionClosure, witness: vec![t], detail });
            }
        }
        for &a in objs.iter().filter(|&&a| self.aisle_contains(model, a)) {
            for b in model.objects(a.shift, a.shift + 1) {
                if model.hom(a, b) > 0 && self.coaisle_contains(model, b) {
                    return Some(AxiomFailure {
                        axiom: Axiom::Orthogonality,
                        witness: vec![a, b],
                        detail: format!("Hom({}, {}) ≠ 0", model.label(a), model.label(b)),
                    });
                }
            }
        }
        for &t in &objs {
            let sources: BTreeSet<DerivedIndec> =
                model.objects(t.shift - 1, t.shift).into_iter().filter(|&a| self.aisle_contains(model, a)).collect();
            let f = model.minimal_right_approximation(&[t], &sources);
            let ok = match model.cone(&f) {
                Ok(cone) => cone.iter().all(|&b| self.coaisle_contains(model, b)),
                Err(_) => false,
            };
            if !ok {
                return Some(AxiomFailure {
                    axiom: Axiom::Decomposition,
                    witness: vec![t],
                    detail: format!("{} has no triangle with aisle and co-aisle ends", model.label(t)),
                });
            }
        }
        None
    }

    /// `ΣA' ∩ B'`, required to be presilting.
    pub fn coheart(&self, model: &DerivedModel) -> Result<Subcat> {
        let s = Subcat::all(model, self.window)
            .filter(|x| self.coaisle_contains(model, x) && self.aisle_contains(model, x.shifted(-1)));
        if !is_presilting(model, &s) {
            return Err(LabError::Postcondition(format!("coheart {:?} is not presilting", s.labels(model))));
        }
        Ok(s)
    }

    /// `Σ²A' ∩ B'`, required to equal `S ∗ ΣS` for the coheart `S`.
    pub fn extended_coheart(&self, model: &DerivedModel) -> Result<Subcat> {
        let c = Subcat::all(model, self.window)
            .filter(|x| self.coaisle_contains(model, x) && self.aisle_contains(model, x.shifted(-2)));
        let s = self.coheart(model)?;
        let product = star_by_approximation(model, &s, &s.shifted(1)?);
        if product != c {
            return Err(LabError::Postcondition(format!(
                "extended coheart {:?} differs from S ∗ ΣS = {:?}",
                c.labels(model),
                product.labels(model)
            )));
        }
        Ok(c)
    }

    /// Every interior object lies in some shift of the aisle and of the
    /// co-aisle.
    pub fn is_bounded(&self, model: &DerivedModel) -> bool {
        let (lo, hi) = self.interior();
        let reach = 2 * self.window + 2;
        model.objects(lo, hi).into_iter().all(|t| {
            (-reach..=reach).any(|i| self.aisle_contains(model, t.shifted(-i)))
                && (-reach..=reach).any(|i| self.coaisle_contains(model, t.shifted(-i)))
        })
    }

    pub fn labels(&self, model: &DerivedModel) -> Vec<String> {
        self.delta.iter().map(|&x| model.label(x)).collect()
    }
}

/// `Hom(s, Σ^i s) = 0` for all `i > 0`.
pub fn is_presilting(model: &DerivedModel, s: &Subcat) -> bool {
    (1..=2).all(|i| hom_vanishes(model, s, &s.shifted_truncated(i)))
}

pub fn standard_cotstructure(window: i32) -> CoTStructure {
    CoTStructure::standard(window)
}

pub fn verify_cotstructure(model: &DerivedModel, c: &CoTStructure) -> Option<AxiomFailure> {
    c.verify(model)
}

/// All intermediate co-t-structures, ordered by `|delta|` then by the
/// sorted delta.
pub fn enumerate_intermediate(model: &DerivedModel, window: i32) -> Result<Vec<CoTStructure>> {
    let uni = universe(model);
    if uni.len() >= 32 {
        return Err(LabError::Config(format!("universe of size {} is too large to enumerate", uni.len())));
    }
    let mut out = Vec::new();
    for mask in 0u32..1 << uni.len() {
        let delta = (0..uni.len()).filter(|i| mask >> i & 1 == 1).map(|i| uni[i]);
        let c = CoTStructure::new(model, delta, window)?;
        if c.verify(model).is_none() {
            out.push(c);
        }
    }
    out.sort_by(|a, b| (a.delta.len(), &a.delta).cmp(&(b.delta.len(), &b.delta)));
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;
    use crate::quiver_rep::{indec_catalog, Quiver};
    use crate::subcat::{is_extension_closed, perp_right, star_by_enumeration, StarConfig, DEFAULT_WINDOW};

    fn model(n: usize) -> DerivedModel {
        DerivedModel::new(indec_catalog(&Quiver::linear(n), Field::default()).unwrap()).unwrap()
    }

    fn d(m: usize, s: i32) -> DerivedIndec {
        DerivedIndec::new(m, s)
    }

    fn ids(s: &Subcat) -> Vec<DerivedIndec> {
        s.ids().iter().copied().collect()
    }

    #[test]
    fn standard_on_a1() {
        let m = model(1);
        let std = CoTStructure::standard(DEFAULT_WINDOW);
        assert!(std.verify(&m).is_none());
        let aisle = std.aisle(&m);
        assert_eq!(ids(&aisle), vec![d(0, -3), d(0, -2), d(0, -1)]);
        assert_eq!(ids(&std.coheart(&m).unwrap()), vec![d(0, 0)]);
        assert_eq!(ids(&std.extended_coheart(&m).unwrap()), vec![d(0, 0), d(0, 1)]);
    }

    #[test]
    fn a2_cohearts() {
        let m = model(2);
        let std = CoTStructure::standard(DEFAULT_WINDOW);
        assert!(std.verify(&m).is_none());
        assert_eq!(ids(&std.coheart(&m).unwrap()), vec![d(1, 0), d(2, 0)]);
        assert_eq!(ids(&std.extended_coheart(&m).unwrap()), vec![d(0, 0), d(1, 0), d(2, 0), d(1, 1), d(2, 1)]);
        let top = CoTStructure::shifted_standard(&m, DEFAULT_WINDOW);
        assert!(top.verify(&m).is_none());
        assert_eq!(ids(&top.coheart(&m).unwrap()), vec![d(1, 1), d(2, 1)]);
        let mid = CoTStructure::new(&m, [d(0, -1), d(1, 0)], DEFAULT_WINDOW).unwrap();
        assert!(mid.verify(&m).is_none());
        assert_eq!(ids(&mid.coheart(&m).unwrap()), vec![d(0, 0), d(1, 1)]);
    }

    #[test]
    fn a2_single_projectives() {
        let m = model(2);
        let p1 = CoTStructure::new(&m, [d(2, 0)], DEFAULT_WINDOW).unwrap();
        assert!(p1.verify(&m).is_none());
        assert_eq!(ids(&p1.coheart(&m).unwrap()), vec![d(1, 0), d(2, 1)]);
        let p2 = CoTStructure::new(&m, [d(1, 0)], DEFAULT_WINDOW).unwrap();
        let fail = p2.verify(&m).unwrap();
        assert_eq!(fail.axiom, Axiom::ExtensionClosure);
        assert_eq!(fail.witness, vec![d(0, -1)]);
        for bad in [vec![d(0, -1), d(2, 0)], vec![d(1, 0), d(2, 0)]] {
            assert!(CoTStructure::new(&m, bad, DEFAULT_WINDOW).unwrap().verify(&m).is_some());
        }
    }

    #[test]
    fn enumeration_counts() {
        for (n, expect) in [(1usize, 2usize), (2, 5), (3, 14)] {
            let m = model(n);
            let all = enumerate_intermediate(&m, DEFAULT_WINDOW).unwrap();
            assert_eq!(all.len(), expect);
            assert_eq!(all[0], CoTStructure::standard(DEFAULT_WINDOW));
            for c in &all {
                assert!(c.is_bounded(&m));
                let s = c.coheart(&m).unwrap();
                assert_eq!(s.len(), n);
                assert!(is_presilting(&m, &s));
                let std = CoTStructure::standard(DEFAULT_WINDOW).aisle(&m);
                let top = CoTStructure::shifted_standard(&m, DEFAULT_WINDOW).aisle(&m);
                assert!(std.is_subset(&c.aisle(&m)) && c.aisle(&m).is_subset(&top));
            }
        }
    }

    #[test]
    fn extended_coheart_size_a3() {
        let m = model(3);
        assert_eq!(CoTStructure::standard(DEFAULT_WINDOW).extended_coheart(&m).unwrap().len(), 9);
    }

    #[test]
    fn window_insensitive() {
        let m = model(2);
        let w3: Vec<_> = enumerate_intermediate(&m, 3).unwrap().into_iter().map(|c| c.delta).collect();
        let w4: Vec<_> = enumerate_intermediate(&m, 4).unwrap().into_iter().map(|c| c.delta).collect();
        assert_eq!(w3, w4);
        assert!(CoTStructure::new(&m, [], 1).is_err());
    }

    /// Axioms checked literally with windowed sets and star products agree
    /// with the approximation-based verifier on every subset of the universe.
    #[test]
    fn star_route_agrees_on_a2() {
        let m = model(2);
        let cfg = StarConfig::default();
        let uni = universe(&m);
        for mask in 0u32..1 << uni.len() {
            let c = CoTStructure::new(&m, (0..uni.len()).filter(|i| mask >> i & 1 == 1).map(|i| uni[i]), 4).unwrap();
            let aisle = c.aisle(&m).filter(|x| x.shift >= -3);
            let coaisle = perp_right(&m, &c.aisle(&m)).filter(|x| x.shift <= 2);
            let interior = |x: &DerivedIndec| x.shift.abs() <= 1;
            let aisle_ok = is_extension_closed(&m, &aisle, &cfg).unwrap();
            let coaisle_ok = is_extension_closed(&m, &coaisle, &cfg).unwrap();
            let prod = star_by_enumeration(&m, &aisle, &coaisle, &cfg).unwrap();
            let decomp = m.objects(-1, 1).iter().filter(|x| interior(x)).all(|&t| prod.contains(t));
            let literal = aisle_ok && coaisle_ok && decomp;
            assert_eq!(literal, c.verify(&m).is_none(), "delta {:?}", c.labels(&m));
        }
    }
}
