//! The correspondences between intermediate co-t-structures, complete
//! cotorsion pairs in the extended coheart and torsion pairs in `mod S`,
//! and a verifier that enumerates all three families independently and
//! checks that the maps are mutually inverse.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::cotstr::{enumerate_intermediate, universe, CoTStructure};
use crate::derived::{DerivedModel, Fault};
use crate::error::{LabError, Result};
use crate::ext_coheart::{
    check_completeness, enumerate_complete_cotorsion_pairs, is_cotorsion_pair, left_e_perp, ApproximationRecord,
    CotorsionPair, ExtendedCoheart,
};
use crate::homotopy_cat::DerivedIndec;
use crate::subcat::{in_star_by_approximation, StarConfig, Subcat};
use crate::yoneda_mod::{
    enumerate_torsion_pairs, is_functorially_finite, is_torsion_class, restricted_yoneda, right_perp, TorsionPair,
};

pub const SCHEMA_VERSION: &str = "1.0";

/// Everything the maps need besides their argument.
#[derive(Clone, Debug)]
pub struct Lab {
    pub model: DerivedModel,
    pub ec: ExtendedCoheart,
    pub window: i32,
    pub star: StarConfig,
}

impl Lab {
    pub fn new(model: DerivedModel, window: i32, star: StarConfig) -> Result<Self> {
        let ec = ExtendedCoheart::standard(&model, window)?;
        Ok(Self { model, ec, window, star })
    }
}

/// `X = B ∩ ΣA'`, `Y = B' ∩ Σ²A`, both inside the extended coheart.
pub fn pair_of_cotstructure(lab: &Lab, c: &CoTStructure) -> Result<CotorsionPair> {
    let m = &lab.model;
    let x = lab.ec.c.filter(|t| c.aisle_contains(m, t.shifted(-1)));
    let y = lab.ec.c.filter(|t| c.coaisle_contains(m, t));
    if !is_cotorsion_pair(m, &lab.ec, &x, &y) {
        return Err(LabError::Postcondition(format!(
            "image of {:?} is not a cotorsion pair",
            c.labels(m)
        )));
    }
    let complete = check_completeness(m, &lab.ec, &x, &y)?.complete;
    if !complete {
        return Err(LabError::Postcondition(format!("image of {:?} is not complete", c.labels(m))));
    }
    Ok(CotorsionPair::new(x, y, complete))
}

fn in_desuspended_standard_aisle(model: &DerivedModel, x: DerivedIndec) -> bool {
    CoTStructure::standard(1).aisle_contains(model, x.shifted(1))
}

/// Membership in `Σ⁻¹A ∗ Σ⁻¹X`. Since `Hom(Σ⁻¹A, Σ⁻¹X) = 0`, this is the
/// cone test on the minimal right `Σ⁻¹A`-approximation.
fn in_new_aisle(model: &DerivedModel, p: &CotorsionPair, t: DerivedIndec) -> bool {
    let sources: BTreeSet<DerivedIndec> = model
        .objects(t.shift - 1, t.shift)
        .into_iter()
        .filter(|&a| in_desuspended_standard_aisle(model, a))
        .collect();
    let f = model.minimal_right_approximation(&[t], &sources);
    model.cone(&f).map(|cone| cone.iter().all(|z| p.x.contains(z.shifted(1)))).unwrap_or(false)
}

/// The co-t-structure with aisle `add(Σ⁻¹A ∗ Σ⁻¹X)`.
pub fn cotstructure_of_pair(lab: &Lab, p: &CotorsionPair) -> Result<CoTStructure> {
    let m = &lab.model;
    let delta: Vec<DerivedIndec> = universe(m).into_iter().filter(|&u| in_new_aisle(m, p, u)).collect();
    let c = CoTStructure::new(m, delta, lab.window)?;
    if let Some(fail) = c.verify(m) {
        return Err(LabError::Postcondition(format!("preimage fails: {} ({})", fail.axiom, fail.detail)));
    }
    let std = CoTStructure::standard(lab.window);
    let top = CoTStructure::shifted_standard(m, lab.window);
    let (lo, hi) = c.interior();
    let sigma2_b = Subcat::all(m, lab.window).filter(|b| b.shift >= 2);
    for t in m.objects(lo, hi) {
        let expected = in_new_aisle(m, p, t);
        if std.aisle_contains(m, t) && !expected || !top.aisle_contains(m, t) && expected {
            return Err(LabError::Postcondition(format!("{} breaks intermediacy", m.label(t))));
        }
        // B' = Y ∗ Σ²B, again with vanishing Hom between the factors.
        if c.coaisle_contains(m, t) != in_star_by_approximation(m, t, p.y.ids(), &sigma2_b) {
            return Err(LabError::Postcondition(format!("co-aisle differs from Y ∗ Σ²B at {}", m.label(t))));
        }
    }
    Ok(c)
}

/// `T = add F(Y)`, `F = T^⊥`.
pub fn torsion_of_pair(lab: &Lab, p: &CotorsionPair) -> Result<TorsionPair> {
    let cat = lab.model.catalog();
    let mut t = BTreeSet::new();
    for &y in p.y.ids() {
        t.extend(cat.decompose_rep(&restricted_yoneda(&lab.model, &lab.ec, y)?)?);
    }
    if !is_torsion_class(&lab.model, &t, &lab.star)? {
        return Err(LabError::Postcondition(format!("F(Y) = {:?} is not a torsion class", TorsionPair::names(cat, &t))));
    }
    let functorially_finite = is_functorially_finite(cat, &t)?;
    if !functorially_finite {
        return Err(LabError::Postcondition("F(Y) is not functorially finite".into()));
    }
    Ok(TorsionPair { f: right_perp(cat, &t), t, functorially_finite })
}

/// `Y = {c ∈ C : F(c) ∈ add T}`, `X = ⊥(ΣY) ∩ C`.
pub fn pair_of_torsion(lab: &Lab, tp: &TorsionPair) -> Result<(CotorsionPair, Vec<ApproximationRecord>)> {
    let m = &lab.model;
    let cat = m.catalog();
    let mut keep = Vec::new();
    for &c in lab.ec.c.ids() {
        let parts = cat.decompose_rep(&restricted_yoneda(m, &lab.ec, c)?)?;
        if parts.iter().all(|i| tp.t.contains(i)) {
            keep.push(c);
        }
    }
    let y = Subcat::new(keep, lab.window)?;
    let x = left_e_perp(m, &lab.ec, &y);
    if !is_cotorsion_pair(m, &lab.ec, &x, &y) {
        return Err(LabError::Postcondition(format!(
            "image of torsion class {:?} is not a cotorsion pair",
            TorsionPair::names(cat, &tp.t)
        )));
    }
    let check = check_completeness(m, &lab.ec, &x, &y)?;
    if !check.complete {
        return Err(LabError::Postcondition("image of a torsion pair is not complete".into()));
    }
    Ok((CotorsionPair::new(x, y, true), check.records))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub intermediates: usize,
    pub cotorsion_pairs: usize,
    pub torsion_pairs: usize,
}

/// One matched triple, by labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Triple {
    pub delta: Vec<String>,
    pub coheart: Vec<String>,
    pub x: Vec<String>,
    pub y: Vec<String>,
    pub core: Vec<String>,
    pub torsion: Vec<String>,
    pub torsion_free: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub engine_crosscheck: bool,
    pub counts_agree: bool,
    pub cotstructure_roundtrip: bool,
    pub cotorsion_roundtrip: bool,
    pub torsion_roundtrip: bool,
    pub pair_from_torsion_roundtrip: bool,
    pub core_is_coheart: bool,
    pub cores_distinct: bool,
    pub torsion_image: bool,
    pub wakamatsu: bool,
    pub left_minimal: bool,
}

impl Flags {
    pub fn all(&self) -> bool {
        self.engine_crosscheck
            && self.counts_agree
            && self.cotstructure_roundtrip
            && self.cotorsion_roundtrip
            && self.torsion_roundtrip
            && self.pair_from_torsion_roundtrip
            && self.core_is_coheart
            && self.cores_distinct
            && self.torsion_image
            && self.wakamatsu
            && self.left_minimal
    }
}

/// A check that failed, with the object that witnesses it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub check: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ApproximationStats {
    pub total: usize,
    pub wakamatsu: usize,
    pub left_minimal: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BijectionReport {
    pub schema_version: String,
    pub quiver: String,
    pub n: usize,
    pub field_order: u32,
    pub window: i32,
    pub fault: Option<Fault>,
    pub counts: Counts,
    pub triples: Vec<Triple>,
    pub flags: Flags,
    pub approximations: ApproximationStats,
    pub counterexamples: Vec<Counterexample>,
}

impl BijectionReport {
    pub fn passed(&self) -> bool {
        self.flags.all() && self.counterexamples.is_empty()
    }
}

struct Collector {
    items: Vec<Counterexample>,
}

impl Collector {
    fn fail(&mut self, check: &str, detail: impl Into<String>) {
        self.items.push(Counterexample { check: check.into(), detail: detail.into() });
    }
}

fn labels(model: &DerivedModel, s: &Subcat) -> Vec<String> {
    s.labels(model)
}

/// Enumerates all three families and checks every round trip element-wise.
pub fn verify_all(model: DerivedModel, window: i32, star: StarConfig) -> Result<BijectionReport> {
    let cat = model.catalog().clone();
    let q = cat.quiver().clone();
    let mut out = Collector { items: Vec::new() };
    let mut flags = Flags::default();

    let bad = model.crosscheck_with_chains(-window, window)?;
    flags.engine_crosscheck = bad.is_empty();
    if let Some(&(a, b, table, chains)) = bad.first() {
        out.fail(
            "engine_crosscheck",
            format!(
                "dim Hom({}, {}) is {} in the table but {} on chain level ({} disagreements)",
                model.label(a),
                model.label(b),
                table,
                chains,
                bad.len()
            ),
        );
    }
    let fault = model.fault();
    let mut report = BijectionReport {
        schema_version: SCHEMA_VERSION.into(),
        quiver: q.to_string(),
        n: q.vertex_count(),
        field_order: cat.field().order(),
        window,
        fault,
        counts: Counts { intermediates: 0, cotorsion_pairs: 0, torsion_pairs: 0 },
        triples: Vec::new(),
        flags: Flags::default(),
        approximations: ApproximationStats { total: 0, wakamatsu: 0, left_minimal: 0 },
        counterexamples: Vec::new(),
    };
    let lab = match Lab::new(model, window, star) {
        Ok(lab) => lab,
        Err(e) => {
            out.fail("extended_coheart", e.to_string());
            report.flags = flags;
            report.counterexamples = out.items;
            return Ok(report);
        }
    };
    let m = &lab.model;

    let families = (|| -> Result<_> {
        Ok((
            enumerate_intermediate(m, window)?,
            enumerate_complete_cotorsion_pairs(m, &lab.ec)?,
            enumerate_torsion_pairs(m, &lab.star)?,
        ))
    })();
    let (cots, found, torsion) = match families {
        Ok(f) => f,
        Err(e) => {
            out.fail("enumeration", e.to_string());
            report.flags = flags;
            report.counterexamples = out.items;
            return Ok(report);
        }
    };
    let pairs = found.pairs;
    let mut records = found.records;
    report.counts = Counts { intermediates: cots.len(), cotorsion_pairs: pairs.len(), torsion_pairs: torsion.len() };
    flags.counts_agree = cots.len() == pairs.len() && pairs.len() == torsion.len();
    if !flags.counts_agree {
        out.fail("counts_agree", format!("{:?}", report.counts));
    }

    let find_pair = |p: &CotorsionPair| pairs.iter().position(|q| q.same_classes(p));
    let find_cot = |c: &CoTStructure| cots.iter().position(|d| d.delta() == c.delta());
    let find_torsion = |t: &TorsionPair| torsion.iter().position(|u| u.same_classes(t));

    flags.cotstructure_roundtrip = true;
    flags.core_is_coheart = true;
    flags.torsion_image = true;
    for c in &cots {
        let name = format!("{:?}", c.labels(m));
        let p = match pair_of_cotstructure(&lab, c) {
            Ok(p) => p,
            Err(e) => {
                flags.cotstructure_roundtrip = false;
                out.fail("cotstructure_roundtrip", format!("{name}: {e}"));
                continue;
            }
        };
        if find_pair(&p).is_none() {
            flags.cotstructure_roundtrip = false;
            out.fail("cotstructure_roundtrip", format!("{name} maps outside the enumerated pairs"));
        }
        match cotstructure_of_pair(&lab, &p) {
            Ok(back) if back.delta() == c.delta() => {}
            Ok(back) => {
                flags.cotstructure_roundtrip = false;
                out.fail("cotstructure_roundtrip", format!("{name} comes back as {:?}", back.labels(m)));
            }
            Err(e) => {
                flags.cotstructure_roundtrip = false;
                out.fail("cotstructure_roundtrip", format!("{name}: {e}"));
            }
        }
        match c.coheart(m) {
            Ok(s) if s == p.core => {}
            Ok(s) => {
                flags.core_is_coheart = false;
                out.fail(
                    "core_is_coheart",
                    format!("{name}: core {:?} vs coheart {:?}", labels(m, &p.core), labels(m, &s)),
                );
            }
            Err(e) => {
                flags.core_is_coheart = false;
                out.fail("core_is_coheart", format!("{name}: {e}"));
            }
        }
        let tp = torsion_of_pair(&lab, &p);
        report.triples.push(Triple {
            delta: c.labels(m),
            coheart: c.coheart(m).map(|s| labels(m, &s)).unwrap_or_default(),
            x: labels(m, &p.x),
            y: labels(m, &p.y),
            core: labels(m, &p.core),
            torsion: tp.as_ref().map(|t| TorsionPair::names(&cat, &t.t)).unwrap_or_default(),
            torsion_free: tp.as_ref().map(|t| TorsionPair::names(&cat, &t.f)).unwrap_or_default(),
        });
    }

    flags.cotorsion_roundtrip = true;
    flags.torsion_roundtrip = true;
    for p in &pairs {
        let name = format!("X = {:?}", labels(m, &p.x));
        match cotstructure_of_pair(&lab, p) {
            Ok(c) => {
                if find_cot(&c).is_none() {
                    flags.cotorsion_roundtrip = false;
                    out.fail("cotorsion_roundtrip", format!("{name} maps outside the enumerated co-t-structures"));
                }
                match pair_of_cotstructure(&lab, &c) {
                    Ok(back) if back.same_classes(p) => {}
                    Ok(back) => {
                        flags.cotorsion_roundtrip = false;
                        out.fail("cotorsion_roundtrip", format!("{name} comes back as X = {:?}", labels(m, &back.x)));
                    }
                    Err(e) => {
                        flags.cotorsion_roundtrip = false;
                        out.fail("cotorsion_roundtrip", format!("{name}: {e}"));
                    }
                }
            }
            Err(e) => {
                flags.cotorsion_roundtrip = false;
                out.fail("cotorsion_roundtrip", format!("{name}: {e}"));
            }
        }
        match torsion_of_pair(&lab, p) {
            Ok(tp) => {
                if find_torsion(&tp).is_none() {
                    flags.torsion_roundtrip = false;
                    out.fail("torsion_roundtrip", format!("{name} maps outside the enumerated torsion pairs"));
                }
                match pair_of_torsion(&lab, &tp) {
                    Ok((back, recs)) => {
                        records.extend(recs);
                        if !back.same_classes(p) {
                            flags.torsion_roundtrip = false;
                            out.fail("torsion_roundtrip", format!("{name} comes back as X = {:?}", labels(m, &back.x)));
                        }
                    }
                    Err(e) => {
                        flags.torsion_roundtrip = false;
                        out.fail("torsion_roundtrip", format!("{name}: {e}"));
                    }
                }
            }
            Err(e) => {
                flags.torsion_roundtrip = false;
                flags.torsion_image = false;
                out.fail("torsion_image", format!("{name}: {e}"));
            }
        }
    }

    flags.pair_from_torsion_roundtrip = true;
    for tp in &torsion {
        let name = format!("T = {:?}", TorsionPair::names(&cat, &tp.t));
        match pair_of_torsion(&lab, tp) {
            Ok((p, recs)) => {
                records.extend(recs);
                if find_pair(&p).is_none() {
                    flags.pair_from_torsion_roundtrip = false;
                    out.fail("pair_from_torsion_roundtrip", format!("{name} maps outside the enumerated pairs"));
                }
                match torsion_of_pair(&lab, &p) {
                    Ok(back) if back.same_classes(tp) => {}
                    Ok(back) => {
                        flags.pair_from_torsion_roundtrip = false;
                        out.fail(
                            "pair_from_torsion_roundtrip",
                            format!("{name} comes back as T = {:?}", TorsionPair::names(&cat, &back.t)),
                        );
                    }
                    Err(e) => {
                        flags.pair_from_torsion_roundtrip = false;
                        out.fail("pair_from_torsion_roundtrip", format!("{name}: {e}"));
                    }
                }
            }
            Err(e) => {
                flags.pair_from_torsion_roundtrip = false;
                out.fail("pair_from_torsion_roundtrip", format!("{name}: {e}"));
            }
        }
    }

    let cores: BTreeSet<&Subcat> = pairs.iter().map(|p| &p.core).collect();
    let cohearts: Result<BTreeSet<Subcat>> = cots.iter().map(|c| c.coheart(m)).collect();
    flags.cores_distinct = cores.len() == pairs.len()
        && cohearts.as_ref().map(|s| s.len() == cots.len() && s.iter().collect::<BTreeSet<_>>() == cores).unwrap_or(false);
    if !flags.cores_distinct {
        out.fail("cores_distinct", "cores and cohearts are not the same family of distinct subcategories");
    }

    report.approximations = ApproximationStats {
        total: records.len(),
        wakamatsu: records.iter().filter(|r| r.wakamatsu).count(),
        left_minimal: records.iter().filter(|r| r.left_minimal).count(),
    };
    flags.wakamatsu = report.approximations.wakamatsu == records.len();
    flags.left_minimal = report.approximations.left_minimal == records.len();
    if let Some(r) = records.iter().find(|r| !r.wakamatsu) {
        out.fail("wakamatsu", format!("approximation of {} has cone {:?}", m.label(r.source), m.labels(&r.cone)));
    }
    if let Some(r) = records.iter().find(|r| !r.left_minimal) {
        out.fail("left_minimal", format!("approximation of {} is not left minimal", m.label(r.source)));
    }

    report.flags = flags;
    report.counterexamples = out.items;
    Ok(report)
}
