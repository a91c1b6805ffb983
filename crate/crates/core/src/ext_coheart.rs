//! The extended coheart `C = S ∗ ΣS` of the standard co-t-structure with
//! `E(c, a) = Hom(c, Σa)`, and its cotorsion pairs.

use serde::Serialize;

use crate::cotstr::CoTStructure;
use crate::derived::{DerivedModel, Morphism};
use crate::error::{LabError, Result};
use crate::homotopy_cat::DerivedIndec;
use crate::linalg::Matrix;
use crate::subcat::Subcat;

/// Coheart `S` (projectives in shift 0) and extended coheart `C`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtendedCoheart {
    pub s: Subcat,
    pub c: Subcat,
}

impl ExtendedCoheart {
    pub fn standard(model: &DerivedModel, window: i32) -> Result<Self> {
        let std = CoTStructure::standard(window);
        Ok(Self { s: std.coheart(model)?, c: std.extended_coheart(model)? })
    }

    pub fn sigma_s(&self) -> Subcat {
        self.s.shifted_truncated(1)
    }

    pub fn window(&self) -> i32 {
        self.c.window()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CotorsionPair {
    pub x: Subcat,
    pub y: Subcat,
    pub complete: bool,
    pub core: Subcat,
}

impl CotorsionPair {
    pub fn new(x: Subcat, y: Subcat, complete: bool) -> Self {
        let core = x.intersect(&y);
        Self { x, y, complete, core }
    }

    /// Equality of the classes, ignoring the cached flags.
    pub fn same_classes(&self, other: &CotorsionPair) -> bool {
        self.x == other.x && self.y == other.y
    }
}

pub fn e_dim(model: &DerivedModel, ec: &ExtendedCoheart, c: DerivedIndec, a: DerivedIndec) -> Result<usize> {
    for x in [c, a] {
        if !ec.c.contains(x) {
            return Err(LabError::NotInExtendedCoheart(x));
        }
    }
    Ok(model.hom(c, a.shifted(1)))
}

fn e_vanishes(model: &DerivedModel, c: DerivedIndec, a: DerivedIndec) -> bool {
    model.hom(c, a.shifted(1)) == 0
}

/// `{c ∈ C : E(c, y) = 0}`.
pub fn left_e_perp(model: &DerivedModel, ec: &ExtendedCoheart, y: &Subcat) -> Subcat {
    ec.c.filter(|c| y.ids().iter().all(|&b| e_vanishes(model, c, b)))
}

/// `{c ∈ C : E(x, c) = 0}`.
pub fn right_e_perp(model: &DerivedModel, ec: &ExtendedCoheart, x: &Subcat) -> Subcat {
    ec.c.filter(|c| x.ids().iter().all(|&a| e_vanishes(model, a, c)))
}

pub fn is_cotorsion_pair(model: &DerivedModel, ec: &ExtendedCoheart, x: &Subcat, y: &Subcat) -> bool {
    x.is_subset(&ec.c) && y.is_subset(&ec.c) && *x == left_e_perp(model, ec, y) && *y == right_e_perp(model, ec, x)
}

/// One minimal left approximation built while checking completeness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ApproximationRecord {
    pub source: DerivedIndec,
    pub target: Vec<DerivedIndec>,
    pub cone: Vec<DerivedIndec>,
    pub left_minimal: bool,
    pub wakamatsu: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Completeness {
    pub complete: bool,
    pub records: Vec<ApproximationRecord>,
}

/// For each `s ∈ S`, the cone of the minimal left `add(y)`-approximation
/// of `s` must lie in `x ∩ C`.
pub fn check_completeness(model: &DerivedModel, ec: &ExtendedCoheart, x: &Subcat, y: &Subcat) -> Result<Completeness> {
    if !ec.sigma_s().is_subset(y) {
        return Err(LabError::Postcondition("completeness criterion needs ΣS ⊆ Y".into()));
    }
    let mut complete = true;
    let mut records = Vec::new();
    for &s in ec.s.ids() {
        let f = model.minimal_left_approximation(&[s], y.ids());
        let cone = model.cone(&f)?;
        complete &= x.contains_all(&cone) && ec.c.contains_all(&cone);
        records.push(ApproximationRecord {
            source: s,
            target: f.target.clone(),
            left_minimal: model.is_left_minimal(&f),
            wakamatsu: model.wakamatsu_holds(&cone, y.ids()),
            cone,
        });
    }
    Ok(Completeness { complete, records })
}

pub fn is_complete(model: &DerivedModel, ec: &ExtendedCoheart, x: &Subcat, y: &Subcat) -> Result<bool> {
    Ok(check_completeness(model, ec, x, y)?.complete)
}

pub fn core(p: &CotorsionPair) -> Subcat {
    p.x.intersect(&p.y)
}

/// Enumeration result with every approximation built on the way.
#[derive(Clone, Debug)]
pub struct PairEnumeration {
    pub pairs: Vec<CotorsionPair>,
    pub records: Vec<ApproximationRecord>,
}

/// All complete cotorsion pairs, seeded on `Y ⊇ ΣS`.
pub fn enumerate_complete_cotorsion_pairs(model: &DerivedModel, ec: &ExtendedCoheart) -> Result<PairEnumeration> {
    let sigma_s = ec.sigma_s();
    let free: Vec<DerivedIndec> = ec.c.ids().iter().copied().filter(|c| !sigma_s.contains(*c)).collect();
    if free.len() >= 32 {
        return Err(LabError::Config(format!("{} candidates are too many to enumerate", free.len())));
    }
    let mut pairs = Vec::new();
    let mut records = Vec::new();
    for mask in 0u32..1 << free.len() {
        let y = sigma_s.union(&Subcat::truncated(
            (0..free.len()).filter(|i| mask >> i & 1 == 1).map(|i| free[i]),
            ec.window(),
        ));
        let x = left_e_perp(model, ec, &y);
        if !is_cotorsion_pair(model, ec, &x, &y) {
            continue;
        }
        let check = check_completeness(model, ec, &x, &y)?;
        records.extend(check.records);
        if check.complete {
            pairs.push(CotorsionPair::new(x, y, true));
        }
    }
    pairs.sort_by(|a, b| (a.x.len(), a.x.ids()).cmp(&(b.x.len(), b.x.ids())));
    pairs.dedup();
    Ok(PairEnumeration { pairs, records })
}

/// `left -> middle -> right -> Σleft` with ends in the extended coheart.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ETriangle {
    pub left: Vec<DerivedIndec>,
    pub middle: Vec<DerivedIndec>,
    pub right: Vec<DerivedIndec>,
}

/// First map `s2 -> s1` (in coefficient order) whose cone is `c`.
fn presentation(model: &DerivedModel, ec: &ExtendedCoheart, c: DerivedIndec) -> Result<Morphism> {
    let cover = model.minimal_right_approximation(&[c], ec.s.ids());
    let s1 = cover.source.clone();
    let s2: Vec<DerivedIndec> = model.cone(&cover)?.into_iter().map(|x| x.shifted(-1)).collect();
    let field = model.field();
    let p = field.order() as u64;
    let slots: Vec<(usize, usize)> = (0..s1.len())
        .flat_map(|r| (0..s2.len()).map(move |c| (r, c)))
        .filter(|&(r, col)| model.hom(s2[col], s1[r]) > 0)
        .collect();
    for code in 0..p.pow(slots.len() as u32) {
        let mut coeffs = Matrix::zeros(field, s1.len(), s2.len());
        let mut rest = code;
        for &(r, col) in &slots {
            coeffs.set(r, col, (rest % p) as u32);
            rest /= p;
        }
        let h = model.morphism(s2.clone(), s1.clone(), coeffs)?;
        if model.cone(&h)? == vec![c] {
            return Ok(h);
        }
    }
    Err(LabError::Postcondition(format!("no presentation of {} by the coheart", model.label(c))))
}

fn stack(model: &DerivedModel, top: &Morphism, bottom: &Morphism) -> Morphism {
    let mut target = top.target.clone();
    target.extend(bottom.target.iter().copied());
    let mut coeffs = Matrix::zeros(model.field(), target.len(), top.source.len());
    for a in 0..top.source.len() {
        for b in 0..top.target.len() {
            coeffs.set(b, a, top.coeffs.get(b, a));
        }
        for b in 0..bottom.target.len() {
            coeffs.set(top.target.len() + b, a, bottom.coeffs.get(b, a));
        }
    }
    Morphism { source: top.source.clone(), target, coeffs }
}

/// The two E-triangles `c -> y -> x` and `y' -> x' -> c` of a complete
/// pair, spliced from a presentation `s2 -> s1 -> c` and the approximation
/// triangles of `s1` and `s2`.
pub fn construct_e_triangles(
    model: &DerivedModel,
    ec: &ExtendedCoheart,
    p: &CotorsionPair,
    c: DerivedIndec,
) -> Result<(ETriangle, ETriangle)> {
    if !ec.c.contains(c) {
        return Err(LabError::NotInExtendedCoheart(c));
    }
    let h = presentation(model, ec, c)?;
    let first = if p.y.contains(c) {
        ETriangle { left: vec![c], middle: vec![c], right: Vec::new() }
    } else {
        let g1 = model.minimal_left_approximation(&h.target, p.y.ids());
        let x1 = model.cone(&g1)?;
        let d = model.cone(&model.compose(&g1, &h))?;
        ETriangle { left: vec![c], middle: d, right: x1 }
    };
    let second = if p.x.contains(c) {
        ETriangle { left: Vec::new(), middle: vec![c], right: vec![c] }
    } else {
        let g2 = model.minimal_left_approximation(&h.source, p.y.ids());
        let e = model.cone(&stack(model, &h, &g2))?;
        ETriangle { left: g2.target.clone(), middle: e, right: vec![c] }
    };
    let checks = [
        (&first.middle, &p.y, "middle of the first triangle in Y"),
        (&first.right, &p.x, "right end of the first triangle in X"),
        (&second.left, &p.y, "left end of the second triangle in Y"),
        (&second.middle, &p.x, "middle of the second triangle in X"),
    ];
    for (objs, class, what) in checks {
        if !class.contains_all(objs) || !ec.c.contains_all(objs) {
            return Err(LabError::Postcondition(format!("{what}: {:?}", model.labels(objs))));
        }
    }
    for t in [&first, &second] {
        let mut ends = t.left.clone();
        ends.extend(t.right.iter().copied());
        if model.euler_class(&ends) != model.euler_class(&t.middle) {
            return Err(LabError::Postcondition("E-triangle violates the Euler class balance".into()));
        }
    }
    Ok((first, second))
}
