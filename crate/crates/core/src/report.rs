//! Machine-readable (JSON) and human-readable (markdown) reports, and the
//! ASCII Auslander–Reiten strip for the `A_3` example.

use std::fmt::Write as _;

use serde::Serialize;

use crate::bijections::{pair_of_cotstructure, torsion_of_pair, BijectionReport, Lab, SCHEMA_VERSION};
use crate::cotstr::{enumerate_intermediate, CoTStructure};
use crate::derived::DerivedModel;
use crate::error::{LabError, Result};
use crate::ext_coheart::enumerate_complete_cotorsion_pairs;
use crate::homotopy_cat::DerivedIndec;
use crate::quiver_rep::Catalog;
use crate::subcat::StarConfig;
use crate::yoneda_mod::{enumerate_torsion_pairs, TorsionPair};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Markdown,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Markdown => "md",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuleRow {
    pub id: usize,
    pub name: String,
    pub interval: (usize, usize),
    pub dims: Vec<usize>,
    pub projective: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogReport {
    pub schema_version: String,
    pub quiver: String,
    pub field_order: u32,
    pub modules: Vec<ModuleRow>,
    /// `hom[i][j] = dim Hom(i, j)`.
    pub hom: Vec<Vec<usize>>,
    pub ext: Vec<Vec<usize>>,
}

pub fn catalog_report(cat: &Catalog) -> CatalogReport {
    let k = cat.len();
    CatalogReport {
        schema_version: SCHEMA_VERSION.into(),
        quiver: cat.quiver().to_string(),
        field_order: cat.field().order(),
        modules: cat
            .modules()
            .iter()
            .map(|m| ModuleRow {
                id: m.id,
                name: cat.name(m.id),
                interval: (m.start, m.end),
                dims: m.rep.dims().to_vec(),
                projective: m.projective_at.is_some(),
            })
            .collect(),
        hom: (0..k).map(|i| (0..k).map(|j| cat.hom_dim(i, j)).collect()).collect(),
        ext: (0..k).map(|i| (0..k).map(|j| cat.ext_dim(i, j)).collect()).collect(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PairRow {
    pub x: Vec<String>,
    pub y: Vec<String>,
    pub core: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsionRow {
    pub torsion: Vec<String>,
    pub torsion_free: Vec<String>,
    pub functorially_finite: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EnumerationReport {
    pub schema_version: String,
    pub quiver: String,
    pub field_order: u32,
    pub window: i32,
    pub intermediates: Vec<Vec<String>>,
    pub cotorsion_pairs: Vec<PairRow>,
    pub torsion_pairs: Vec<TorsionRow>,
}

pub fn enumeration_report(lab: &Lab) -> Result<EnumerationReport> {
    let m = &lab.model;
    let cat = m.catalog();
    let cots = enumerate_intermediate(m, lab.window)?;
    let pairs = enumerate_complete_cotorsion_pairs(m, &lab.ec)?.pairs;
    let torsion = enumerate_torsion_pairs(m, &lab.star)?;
    Ok(EnumerationReport {
        schema_version: SCHEMA_VERSION.into(),
        quiver: cat.quiver().to_string(),
        field_order: cat.field().order(),
        window: lab.window,
        intermediates: cots.iter().map(|c| c.labels(m)).collect(),
        cotorsion_pairs: pairs
            .iter()
            .map(|p| PairRow { x: p.x.labels(m), y: p.y.labels(m), core: p.core.labels(m) })
            .collect(),
        torsion_pairs: torsion
            .iter()
            .map(|t| TorsionRow {
                torsion: TorsionPair::names(cat, &t.t),
                torsion_free: TorsionPair::names(cat, &t.f),
                functorially_finite: t.functorially_finite,
            })
            .collect(),
    })
}

fn set(xs: &[String]) -> String {
    format!("{{{}}}", xs.join(", "))
}

fn table_md(out: &mut String, cat: &Catalog, title: &str, t: &[Vec<usize>]) {
    let _ = writeln!(out, "\n### {title}\n");
    let _ = write!(out, "| |");
    for i in 0..cat.len() {
        let _ = write!(out, " {} |", cat.name(i));
    }
    let _ = write!(out, "\n|---|");
    for _ in 0..cat.len() {
        let _ = write!(out, "---|");
    }
    out.push('\n');
    for (i, row) in t.iter().enumerate() {
        let _ = write!(out, "| {} |", cat.name(i));
        for v in row {
            let _ = write!(out, " {v} |");
        }
        out.push('\n');
    }
}

pub fn catalog_markdown(cat: &Catalog, r: &CatalogReport) -> String {
    let mut out = format!("# Catalog of {} over F_{}\n\n", r.quiver, r.field_order);
    let _ = writeln!(out, "{} indecomposable modules.\n", r.modules.len());
    out.push_str("| id | name | interval | dims | projective |\n|---|---|---|---|---|\n");
    for m in &r.modules {
        let _ = writeln!(
            out,
            "| {} | {} | [{},{}] | {:?} | {} |",
            m.id, m.name, m.interval.0, m.interval.1, m.dims, m.projective
        );
    }
    table_md(&mut out, cat, "dim Hom(row, column)", &r.hom);
    table_md(&mut out, cat, "dim Ext¹(row, column)", &r.ext);
    out
}

pub fn enumeration_markdown(r: &EnumerationReport) -> String {
    let mut out = format!("# Enumeration for {} over F_{} (window {})\n\n", r.quiver, r.field_order, r.window);
    let _ = writeln!(
        out,
        "| intermediate co-t-structures | complete cotorsion pairs | torsion pairs |\n|---|---|---|\n| {} | {} | {} |",
        r.intermediates.len(),
        r.cotorsion_pairs.len(),
        r.torsion_pairs.len()
    );
    out.push_str("\n## Intermediate co-t-structures (objects added to the standard aisle)\n\n");
    for (i, d) in r.intermediates.iter().enumerate() {
        let _ = writeln!(out, "{i}. {}", set(d));
    }
    out.push_str("\n## Complete cotorsion pairs in the extended coheart\n\n| # | X | Y | core |\n|---|---|---|---|\n");
    for (i, p) in r.cotorsion_pairs.iter().enumerate() {
        let _ = writeln!(out, "| {i} | {} | {} | {} |", set(&p.x), set(&p.y), set(&p.core));
    }
    out.push_str("\n## Torsion pairs\n\n| # | T | F | functorially finite |\n|---|---|---|---|\n");
    for (i, t) in r.torsion_pairs.iter().enumerate() {
        let _ = writeln!(out, "| {i} | {} | {} | {} |", set(&t.torsion), set(&t.torsion_free), t.functorially_finite);
    }
    out
}

pub fn verification_markdown(r: &BijectionReport) -> String {
    let verdict = if r.passed() { "PASS" } else { "FAIL" };
    let mut out = format!("# Verification for {} over F_{} (window {}): {verdict}\n\n", r.quiver, r.field_order, r.window);
    if let Some(f) = &r.fault {
        let _ = writeln!(out, "Injected fault: {f:?}\n");
    }
    let c = &r.counts;
    let _ = writeln!(
        out,
        "Counts: {} intermediate co-t-structures, {} complete cotorsion pairs, {} torsion pairs.\n",
        c.intermediates, c.cotorsion_pairs, c.torsion_pairs
    );
    out.push_str("| check | result |\n|---|---|\n");
    let flags = serde_json::to_value(&r.flags).unwrap_or_default();
    if let Some(map) = flags.as_object() {
        for (k, v) in map {
            let _ = writeln!(out, "| {k} | {} |", if v.as_bool() == Some(true) { "ok" } else { "FAILED" });
        }
    }
    let a = &r.approximations;
    let _ = writeln!(
        out,
        "\nMinimal left approximations: {} built, {} satisfy Wakamatsu, {} left minimal.",
        a.total, a.wakamatsu, a.left_minimal
    );
    out.push_str("\n## Matched triples\n\n| # | added to aisle | coheart | X | Y | T | F |\n|---|---|---|---|---|---|---|\n");
    for (i, t) in r.triples.iter().enumerate() {
        let _ = writeln!(
            out,
            "| {i} | {} | {} | {} | {} | {} | {} |",
            set(&t.delta),
            set(&t.coheart),
            set(&t.x),
            set(&t.y),
            set(&t.torsion),
            set(&t.torsion_free)
        );
    }
    if !r.counterexamples.is_empty() {
        out.push_str("\n## Counterexamples\n\n");
        for ce in &r.counterexamples {
            let _ = writeln!(out, "- {}: {}", ce.check, ce.detail);
        }
    }
    out
}

/// Shifts drawn in the example figure.
pub const FIGURE_SHIFTS: (i32, i32) = (-2, 2);

const LEGEND: [(&str, &str); 7] = [
    ("[ ]", "the aisle A of the standard co-t-structure (A, B)"),
    ("( )", "the co-aisle B of (A, B)"),
    ("< >", "neither A nor B"),
    (" + ", "inside the brackets: the aisle A' of the intermediate co-t-structure (A', B')"),
    (" - ", "inside the brackets: the co-aisle B' of (A', B')"),
    (" x ", "second slot: the cotorsion class X of (X, Y); `*` marks X ∩ Y"),
    (" y ", "second slot: the cotorsionfree class Y of (X, Y); `*` marks X ∩ Y"),
];

#[derive(Clone, Debug, Serialize)]
pub struct FigureReport {
    pub schema_version: String,
    pub quiver: String,
    pub pick: usize,
    pub intermediates: usize,
    pub delta: Vec<String>,
    pub x: Vec<String>,
    pub y: Vec<String>,
    pub extended_coheart: Vec<String>,
    pub torsion: Vec<String>,
    pub verified: bool,
    pub figure: Vec<String>,
}

/// Grid position: module `[a,b]` sits in row `b-a+1` at column
/// `2(n-b)+row-1`, and `Σ` moves it `n+1` columns right and reflects rows.
fn position(cat: &Catalog, x: DerivedIndec) -> (i32, usize) {
    let n = cat.quiver().vertex_count();
    let m = cat.module(x.module);
    let r = m.end - m.start + 1;
    let col = (2 * (n - m.end) + r - 1) as i32 + x.shift * (n as i32 + 1);
    let row = if x.shift.rem_euclid(2) == 0 { r } else { n + 1 - r };
    (col, row)
}

/// Renders the AR strip over [`FIGURE_SHIFTS`] with one intermediate
/// co-t-structure and its cotorsion pair marked. `pick` indexes the
/// enumeration order, in which the standard structure comes first.
pub fn example_figure(lab: &Lab, pick: usize) -> Result<FigureReport> {
    let m = &lab.model;
    let cat = m.catalog();
    let n = cat.quiver().vertex_count();
    let cots = enumerate_intermediate(m, lab.window)?;
    let c = cots
        .get(pick)
        .ok_or_else(|| LabError::Config(format!("pick {pick} is out of range; there are {}", cots.len())))?;
    let p = pair_of_cotstructure(lab, c)?;
    let back = crate::bijections::cotstructure_of_pair(lab, &p)?;
    let tp = torsion_of_pair(lab, &p)?;
    let verified = c.verify(m).is_none() && back == *c && c.coheart(m)? == p.core;
    let std = CoTStructure::standard(lab.window);

    let (lo, hi) = FIGURE_SHIFTS;
    let objs = m.objects(lo, hi);
    let cols: Vec<i32> = objs.iter().map(|&x| position(cat, x).0).collect();
    let (cmin, cmax) = (*cols.iter().min().unwrap_or(&0), *cols.iter().max().unwrap_or(&0));
    let width = ((cmax - cmin) as usize + 2) * 4 + 4;
    let mut figure = Vec::new();
    let mut axis = vec![b' '; width];
    for s in lo..=hi {
        let col = (s * (n as i32 + 1) - cmin) as usize * 4 + 2;
        for (k, ch) in format!("{s:+}").bytes().enumerate() {
            if col + k < width {
                axis[col + k] = ch;
            }
        }
    }
    let axis = String::from_utf8(axis).unwrap_or_default();
    figure.push(format!("shift {}", axis.trim_end()));
    for row in (1..=n).rev() {
        let mut line = vec![' '; width];
        for &x in &objs {
            let (col, r) = position(cat, x);
            if r != row {
                continue;
            }
            let (open, close) = if std.aisle_contains(m, x) {
                ('[', ']')
            } else if std.coaisle_contains(m, x) {
                ('(', ')')
            } else {
                ('<', '>')
            };
            let fill = if c.aisle_contains(m, x) {
                '+'
            } else if c.coaisle_contains(m, x) {
                '-'
            } else {
                ' '
            };
            let class = match (p.x.contains(x), p.y.contains(x)) {
                (true, true) => '*',
                (true, false) => 'x',
                (false, true) => 'y',
                _ => ' ',
            };
            let (lb, rb) = if lab.ec.c.contains(x) { ('|', '|') } else { (' ', ' ') };
            let at = (col - cmin) as usize * 4;
            for (k, ch) in [lb, open, fill, class, close, rb].into_iter().enumerate() {
                line[at + k] = ch;
            }
        }
        let line: String = line.into_iter().collect();
        figure.push(format!("row {row} {}", line.trim_end()));
    }
    figure.push(String::new());
    figure.push("legend".into());
    for (sym, meaning) in LEGEND {
        figure.push(format!("  {sym}  {meaning}"));
    }
    figure.push("  | |  outline: the extended coheart C".into());

    Ok(FigureReport {
        schema_version: SCHEMA_VERSION.into(),
        quiver: cat.quiver().to_string(),
        pick,
        intermediates: cots.len(),
        delta: c.labels(m),
        x: p.x.labels(m),
        y: p.y.labels(m),
        extended_coheart: lab.ec.c.labels(m),
        torsion: TorsionPair::names(cat, &tp.t),
        verified,
        figure,
    })
}

pub fn figure_markdown(r: &FigureReport) -> String {
    let mut out = format!(
        "# AR strip of {} with intermediate co-t-structure #{} of {}\n\n",
        r.quiver, r.pick, r.intermediates
    );
    let _ = writeln!(out, "- added to the aisle: {}", set(&r.delta));
    let _ = writeln!(out, "- X = {}", set(&r.x));
    let _ = writeln!(out, "- Y = {}", set(&r.y));
    let _ = writeln!(out, "- C = {}", set(&r.extended_coheart));
    let _ = writeln!(out, "- torsion class F(Y) = {}", set(&r.torsion));
    let _ = writeln!(out, "- verified: {}\n", r.verified);
    out.push_str("```\n");
    for line in &r.figure {
        out.push_str(line);
        out.push('\n');
    }
    out.push_str("```\n");
    out
}

pub fn to_json<T: Serialize>(r: &T) -> String {
    let mut s = serde_json::to_string_pretty(r).unwrap_or_default();
    s.push('\n');
    s
}

/// `Lab` for the `A_3` example: linear orientation, default field.
pub fn example_lab(window: i32) -> Result<Lab> {
    let q = crate::quiver_rep::Quiver::linear(3);
    let cat = crate::quiver_rep::indec_catalog(&q, crate::linalg::Field::default())?;
    Lab::new(DerivedModel::new(cat)?, window, StarConfig::default())
}
