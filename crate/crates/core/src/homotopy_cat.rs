//! Bounded complexes of projectives, chain maps modulo homotopy, cones and
//! homology.
//!
//! A term is a list of vertices `v`, one per summand `P_v`. A map
//! `P_v -> P_w` is a scalar multiple of the unique path `w ~> v`, so maps
//! between sums are plain scalar matrices with a support condition and
//! composition is matrix multiplication.
//!
//! Shift convention: `(Σ^k X)^i = X^{i+k}` with differential `(-1)^k d`.
//! A module stalk in degree 0 shifted once sits in degree -1, and a
//! [`DerivedIndec`] with shift `s` is `Σ^s` of the module stalk.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::linalg::{apply, Field, Matrix};
use crate::quiver_rep::{Catalog, Quiver, Rep};

/// An indecomposable object of the derived category: `Σ^shift` of a module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DerivedIndec {
    pub module: usize,
    pub shift: i32,
}

impl DerivedIndec {
    pub fn new(module: usize, shift: i32) -> Self {
        Self { module, shift }
    }

    pub fn shifted(self, k: i32) -> Self {
        Self { module: self.module, shift: self.shift + k }
    }

    pub fn label(&self, cat: &Catalog) -> String {
        format!("{}@{}", cat.name(self.module), self.shift)
    }
}

impl Ord for DerivedIndec {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.shift, self.module).cmp(&(other.shift, other.module))
    }
}

impl PartialOrd for DerivedIndec {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DerivedIndec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}@{}", self.module, self.shift)
    }
}

/// `dim Hom(Σ^i m, Σ^j n)`: Hom at equal shift, Ext¹ one shift up, else 0.
pub fn hom_dim_derived(cat: &Catalog, a: DerivedIndec, b: DerivedIndec) -> usize {
    match b.shift - a.shift {
        0 => cat.hom_dim(a.module, b.module),
        1 => cat.ext_dim(a.module, b.module),
        _ => 0,
    }
}

/// A bounded complex of projectives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    field: Field,
    terms: BTreeMap<i32, Vec<usize>>,
    diffs: BTreeMap<i32, Matrix>,
}

fn map_supported(q: &Quiver, m: &Matrix, src: &[usize], tgt: &[usize]) -> bool {
    (0..tgt.len()).all(|l| (0..src.len()).all(|k| m.get(l, k) == 0 || q.has_path(tgt[l], src[k])))
}

impl Complex {
    /// Builds a complex; `diffs[i]` is `d^i: X^i -> X^{i+1}`.
    pub fn new(
        q: &Quiver,
        field: Field,
        terms: BTreeMap<i32, Vec<usize>>,
        diffs: BTreeMap<i32, Matrix>,
    ) -> Result<Self> {
        let terms: BTreeMap<i32, Vec<usize>> = terms.into_iter().filter(|(_, t)| !t.is_empty()).collect();
        let x = Self { field, terms, diffs: BTreeMap::new() };
        let mut kept = BTreeMap::new();
        for (i, d) in diffs {
            if d.shape() != (x.term(i + 1).len(), x.term(i).len()) {
                return Err(LabError::Shape(format!("differential in degree {i}")));
            }
            if !map_supported(q, &d, x.term(i), x.term(i + 1)) {
                return Err(LabError::Shape(format!("differential in degree {i} is not a map of projectives")));
            }
            if !d.is_zero() {
                kept.insert(i, d);
            }
        }
        let x = Self { diffs: kept, ..x };
        for &i in x.diffs.keys() {
            if !x.diff(i + 1).mul(&x.diff(i)).is_zero() {
                return Err(LabError::Shape(format!("d∘d ≠ 0 at degree {i}")));
            }
        }
        Ok(x)
    }

    pub fn zero(field: Field) -> Self {
        Self { field, terms: BTreeMap::new(), diffs: BTreeMap::new() }
    }

    /// Sum of projectives concentrated in one degree.
    pub fn stalk(field: Field, vertices: Vec<usize>, degree: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !vertices.is_empty() {
            terms.insert(degree, vertices);
        }
        Self { field, terms, diffs: BTreeMap::new() }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn term(&self, i: i32) -> &[usize] {
        self.terms.get(&i).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn diff(&self, i: i32) -> Matrix {
        self.diffs
            .get(&i)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.field, self.term(i + 1).len(), self.term(i).len()))
    }

    /// Lowest and highest degree with a nonzero term.
    pub fn degree_range(&self) -> Option<(i32, i32)> {
        Some((*self.terms.keys().next()?, *self.terms.keys().next_back()?))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Σ^k`.
    pub fn shift(&self, k: i32) -> Complex {
        let sign = if k.rem_euclid(2) == 1 { self.field.neg(1) } else { 1 };
        Complex {
            field: self.field,
            terms: self.terms.iter().map(|(&i, t)| (i - k, t.clone())).collect(),
            diffs: self.diffs.iter().map(|(&i, d)| (i - k, d.scale(sign))).collect(),
        }
    }

    pub fn direct_sum(&self, other: &Complex) -> Complex {
        let mut terms = self.terms.clone();
        for (&i, t) in &other.terms {
            terms.entry(i).or_default().extend(t.iter().copied());
        }
        let degrees: Vec<i32> = terms.keys().copied().collect();
        let mut diffs = BTreeMap::new();
        for i in degrees {
            let d = self.diff(i).direct_sum(&other.diff(i));
            if !d.is_zero() {
                diffs.insert(i, d);
            }
        }
        Complex { field: self.field, terms, diffs }
    }

    /// The term in degree `i` as a representation.
    pub fn term_rep(&self, q: &Quiver, i: i32) -> Rep {
        proj_sum_rep(q, self.field, self.term(i))
    }

    /// `H^i` as a representation.
    pub fn homology(&self, q: &Quiver, i: i32) -> Rep {
        let field = self.field;
        let term = self.term(i);
        let nv = q.vertex_count();
        let mut images = Vec::with_capacity(nv);
        let mut comps = Vec::with_capacity(nv);
        for w in 1..=nv {
            let here = support_at(q, term, w);
            let out = restrict_at(q, &self.diff(i), term, self.term(i + 1), w);
            let inc = restrict_at(q, &self.diff(i - 1), self.term(i - 1), term, w);
            let ker = if out.rows() == 0 { unit_vectors(here.len()) } else { out.nullspace() };
            let img: Vec<Vec<u32>> = (0..inc.cols()).map(|c| inc.col(c)).collect();
            let img = independent_subset(field, here.len(), &img);
            let comp = extend_basis(field, here.len(), &img, &ker);
            images.push(img);
            comps.push(comp);
        }
        let dims: Vec<usize> = comps.iter().map(Vec::len).collect();
        let term_rep = proj_sum_rep(q, field, term);
        let mats = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let arrow = term_rep.mat(a);
                let mut basis = images[t - 1].clone();
                basis.extend(comps[t - 1].iter().cloned());
                let bm = Matrix::from_columns(field, arrow.rows(), &basis);
                let skip = images[t - 1].len();
                let mut m = Matrix::zeros(field, dims[t - 1], dims[s - 1]);
                for (c, v) in comps[s - 1].iter().enumerate() {
                    let image = apply(arrow, v);
                    let coords = bm.solve(&image).expect("arrow maps cycles to cycles");
                    for r in 0..dims[t - 1] {
                        m.set(r, c, coords[skip + r]);
                    }
                }
                m
            })
            .collect();
        Rep::new(q, field, dims, mats).expect("homology shapes agree")
    }

    /// Each summand with all other structure forgotten, for diagnostics.
    pub fn summary(&self) -> String {
        self.terms
            .iter()
            .map(|(i, t)| format!("{i}:{t:?}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn unit_vectors(n: usize) -> Vec<Vec<u32>> {
    (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect()
}

fn independent_subset(field: Field, dim: usize, vecs: &[Vec<u32>]) -> Vec<Vec<u32>> {
    if vecs.is_empty() || dim == 0 {
        return Vec::new();
    }
    let m = Matrix::from_columns(field, dim, vecs);
    m.independent_columns().into_iter().map(|c| vecs[c].clone()).collect()
}

/// Vectors from `candidates` that extend the independent set `base` to a
/// basis of `span(base ∪ candidates)`.
fn extend_basis(field: Field, dim: usize, base: &[Vec<u32>], candidates: &[Vec<u32>]) -> Vec<Vec<u32>> {
    if candidates.is_empty() || dim == 0 {
        return Vec::new();
    }
    let mut all = base.to_vec();
    all.extend(candidates.iter().cloned());
    let m = Matrix::from_columns(field, dim, &all);
    m.independent_columns()
        .into_iter()
        .filter(|&c| c >= base.len())
        .map(|c| all[c].clone())
        .collect()
}

/// Summands of a projective sum that are nonzero at vertex `w`.
fn support_at(q: &Quiver, term: &[usize], w: usize) -> Vec<usize> {
    (0..term.len()).filter(|&k| q.has_path(term[k], w)).collect()
}

/// A map of projective sums evaluated at vertex `w`.
fn restrict_at(q: &Quiver, m: &Matrix, src: &[usize], tgt: &[usize], w: usize) -> Matrix {
    let rows = support_at(q, tgt, w);
    let cols = support_at(q, src, w);
    let mut out = Matrix::zeros(m.field(), rows.len(), cols.len());
    for (r, &l) in rows.iter().enumerate() {
        for (c, &k) in cols.iter().enumerate() {
            out.set(r, c, m.get(l, k));
        }
    }
    out
}

/// `⊕ P_v` as a representation; at vertex `w` the basis is the summands
/// whose vertex reaches `w`.
pub fn proj_sum_rep(q: &Quiver, field: Field, term: &[usize]) -> Rep {
    let supports: Vec<Vec<usize>> = (1..=q.vertex_count()).map(|w| support_at(q, term, w)).collect();
    let dims = supports.iter().map(Vec::len).collect();
    let mats = q
        .arrows()
        .iter()
        .map(|&(s, t)| {
            let (src, tgt) = (&supports[s - 1], &supports[t - 1]);
            let mut m = Matrix::zeros(field, tgt.len(), src.len());
            for (c, k) in src.iter().enumerate() {
                let r = tgt.iter().position(|l| l == k).expect("paths extend along arrows");
                m.set(r, c, 1);
            }
            m
        })
        .collect();
    Rep::new(q, field, dims, mats).expect("projective sum shapes agree")
}

/// Composite of the arrow maps along the unique path `from ~> to`.
fn path_map(q: &Quiver, m: &Rep, from: usize, to: usize) -> Matrix {
    let mut acc = Matrix::identity(m.field(), m.dims()[from - 1]);
    let mut v = from;
    while v != to {
        let (a, &(_, t)) = q
            .arrows()
            .iter()
            .enumerate()
            .find(|(_, &(s, t))| s == v && q.has_path(t, to))
            .expect("path exists");
        acc = m.mat(a).mul(&acc);
        v = t;
    }
    acc
}

/// Minimal projective resolution `P^{-1} -> P^0` of a module.
pub fn proj_resolution(q: &Quiver, m: &Rep) -> Result<Complex> {
    let field = m.field();
    let nv = q.vertex_count();
    let radical = |rep: &Rep, w: usize| -> Vec<Vec<u32>> {
        q.arrows()
            .iter()
            .enumerate()
            .filter(|(_, &(_, t))| t == w)
            .flat_map(|(a, _)| {
                let mat = rep.mat(a);
                (0..mat.cols()).map(move |c| mat.col(c)).collect::<Vec<_>>()
            })
            .collect()
    };

    // Top of m gives P^0.
    let mut p0 = Vec::new();
    let mut gens = Vec::new();
    for w in 1..=nv {
        let d = m.dims()[w - 1];
        let rad = independent_subset(field, d, &radical(m, w));
        for g in extend_basis(field, d, &rad, &unit_vectors(d)) {
            p0.push(w);
            gens.push(g);
        }
    }
    // π at each vertex, columns indexed by the summands reaching it.
    let p0_rep = proj_sum_rep(q, field, &p0);
    let mut kernels = Vec::with_capacity(nv);
    for u in 1..=nv {
        let cols: Vec<Vec<u32>> = support_at(q, &p0, u)
            .into_iter()
            .map(|k| apply(&path_map(q, m, p0[k], u), &gens[k]))
            .collect();
        let here = cols.len();
        let ker = if m.dims()[u - 1] == 0 {
            unit_vectors(here)
        } else if here == 0 {
            Vec::new()
        } else {
            Matrix::from_columns(field, m.dims()[u - 1], &cols).nullspace()
        };
        kernels.push(ker);
    }
    // Top of the kernel gives P^{-1}.
    let mut p1 = Vec::new();
    let mut columns = Vec::new();
    for u in 1..=nv {
        let here = support_at(q, &p0, u);
        let mut rad = Vec::new();
        for (a, &(s, t)) in q.arrows().iter().enumerate() {
            if t == u {
                for v in &kernels[s - 1] {
                    rad.push(apply(p0_rep.mat(a), v));
                }
            }
        }
        let rad = independent_subset(field, here.len(), &rad);
        for h in extend_basis(field, here.len(), &rad, &kernels[u - 1]) {
            let mut col = vec![0u32; p0.len()];
            for (pos, &k) in here.iter().enumerate() {
                col[k] = h[pos];
            }
            p1.push(u);
            columns.push(col);
        }
    }
    let mut terms = BTreeMap::new();
    terms.insert(0, p0.clone());
    let mut diffs = BTreeMap::new();
    if !p1.is_empty() {
        terms.insert(-1, p1);
        diffs.insert(-1, Matrix::from_columns(field, p0.len(), &columns));
    }
    Complex::new(q, field, terms, diffs)
}

/// The complex realizing `Σ^shift` of a catalog module.
pub fn realize(cat: &Catalog, x: DerivedIndec) -> Result<Complex> {
    Ok(proj_resolution(cat.quiver(), &cat.module(x.module).rep)?.shift(x.shift))
}

/// Splits an object into shifted homologies: a module in cohomological
/// degree `i` contributes shift `-i`.
pub fn decompose_object(cat: &Catalog, x: &Complex) -> Result<Vec<DerivedIndec>> {
    let Some((lo, hi)) = x.degree_range() else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    for i in lo..=hi {
        let h = x.homology(cat.quiver(), i);
        for id in cat.decompose_rep(&h)? {
            out.push(DerivedIndec::new(id, -i));
        }
    }
    out.sort();
    Ok(out)
}

/// A degree-0 chain map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub source: Complex,
    pub target: Complex,
    comps: BTreeMap<i32, Matrix>,
}

impl ChainMap {
    pub fn new(q: &Quiver, source: Complex, target: Complex, comps: BTreeMap<i32, Matrix>) -> Result<Self> {
        for (&i, m) in &comps {
            if m.shape() != (target.term(i).len(), source.term(i).len()) {
                return Err(LabError::Shape(format!("chain map component in degree {i}")));
            }
            if !map_supported(q, m, source.term(i), target.term(i)) {
                return Err(LabError::Shape(format!("component in degree {i} is not a map of projectives")));
            }
        }
        let f = Self { source, target, comps };
        for i in f.degrees() {
            let lhs = f.target.diff(i).mul(&f.comp(i));
            let rhs = f.comp(i + 1).mul(&f.source.diff(i));
            if lhs != rhs {
                return Err(LabError::Shape(format!("not a chain map at degree {i}")));
            }
        }
        Ok(f)
    }

    pub fn zero(source: Complex, target: Complex) -> Self {
        Self { source, target, comps: BTreeMap::new() }
    }

    pub fn identity(x: &Complex) -> Self {
        let comps = x.terms.iter().map(|(&i, t)| (i, Matrix::identity(x.field, t.len()))).collect();
        Self { source: x.clone(), target: x.clone(), comps }
    }

    pub fn comp(&self, i: i32) -> Matrix {
        self.comps.get(&i).cloned().unwrap_or_else(|| {
            Matrix::zeros(self.source.field, self.target.term(i).len(), self.source.term(i).len())
        })
    }

    fn degrees(&self) -> Vec<i32> {
        let mut d: Vec<i32> = self.source.terms.keys().chain(self.target.terms.keys()).copied().collect();
        d.sort();
        d.dedup();
        let (Some(&lo), Some(&hi)) = (d.first(), d.last()) else {
            return Vec::new();
        };
        (lo - 1..=hi).collect()
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ChainMap) -> ChainMap {
        let mut comps = BTreeMap::new();
        for i in first.degrees() {
            let m = self.comp(i).mul(&first.comp(i));
            if !m.is_zero() {
                comps.insert(i, m);
            }
        }
        ChainMap { source: first.source.clone(), target: self.target.clone(), comps }
    }

    pub fn scale(&self, s: u32) -> ChainMap {
        ChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            comps: self.comps.iter().map(|(&i, m)| (i, m.scale(s))).collect(),
        }
    }

    pub fn add(&self, other: &ChainMap) -> ChainMap {
        let mut comps = BTreeMap::new();
        for i in self.degrees() {
            comps.insert(i, self.comp(i).add(&other.comp(i)));
        }
        ChainMap { source: self.source.clone(), target: self.target.clone(), comps }
    }

    /// `Σ^k f`.
    pub fn shift(&self, k: i32) -> ChainMap {
        ChainMap {
            source: self.source.shift(k),
            target: self.target.shift(k),
            comps: self.comps.iter().map(|(&i, m)| (i - k, m.clone())).collect(),
        }
    }

    /// The block map `⊕_a x_a -> ⊕_b y_b` with component `blocks[b][a]`.
    pub fn block(sources: &[Complex], targets: &[Complex], blocks: &[Vec<ChainMap>]) -> ChainMap {
        let field = sources.first().or(targets.first()).map(|c| c.field).unwrap_or_default();
        let sum = |xs: &[Complex]| xs.iter().fold(Complex::zero(field), |acc, x| acc.direct_sum(x));
        let source = sum(sources);
        let target = sum(targets);
        let zero = ChainMap::zero(source.clone(), target.clone());
        let mut comps = BTreeMap::new();
        for i in zero.degrees() {
            let mut m = Matrix::zeros(field, target.term(i).len(), source.term(i).len());
            let mut row0 = 0;
            for (b, y) in targets.iter().enumerate() {
                let mut col0 = 0;
                for (a, x) in sources.iter().enumerate() {
                    let c = blocks[b][a].comp(i);
                    for r in 0..c.rows() {
                        for cc in 0..c.cols() {
                            m.set(row0 + r, col0 + cc, c.get(r, cc));
                        }
                    }
                    col0 += x.term(i).len();
                }
                row0 += y.term(i).len();
            }
            if !m.is_zero() {
                comps.insert(i, m);
            }
        }
        ChainMap { source, target, comps }
    }
}

/// Standard cone: `C^i = X^{i+1} ⊕ Y^i`, `d = [[-d_X, 0], [f, d_Y]]`.
pub fn mapping_cone(f: &ChainMap) -> Complex {
    let x = &f.source;
    let y = &f.target;
    let field = x.field;
    let mut degrees: Vec<i32> = x.terms.keys().map(|i| i - 1).chain(y.terms.keys().copied()).collect();
    degrees.sort();
    degrees.dedup();
    let mut terms = BTreeMap::new();
    for &i in &degrees {
        let mut t = x.term(i + 1).to_vec();
        t.extend_from_slice(y.term(i));
        terms.insert(i, t);
    }
    let mut diffs = BTreeMap::new();
    for &i in &degrees {
        let (xa, ya) = (x.term(i + 1).len(), y.term(i).len());
        let (xb, yb) = (x.term(i + 2).len(), y.term(i + 1).len());
        let mut d = Matrix::zeros(field, xb + yb, xa + ya);
        let dx = x.diff(i + 1).neg();
        let fi = f.comp(i + 1);
        let dy = y.diff(i);
        for r in 0..xb {
            for c in 0..xa {
                d.set(r, c, dx.get(r, c));
            }
        }
        for r in 0..yb {
            for c in 0..xa {
                d.set(xb + r, c, fi.get(r, c));
            }
            for c in 0..ya {
                d.set(xb + r, xa + c, dy.get(r, c));
            }
        }
        if !d.is_zero() {
            diffs.insert(i, d);
        }
    }
    let terms = terms.into_iter().filter(|(_, t)| !t.is_empty()).collect();
    Complex { field, terms, diffs }
}

/// `Hom_K(x, y)`: chain maps modulo null-homotopic ones.
#[derive(Clone, Debug)]
pub struct HomK {
    pub basis: Vec<ChainMap>,
    vars: Vec<(i32, usize, usize)>,
    /// Columns: independent null-homotopic maps followed by the basis.
    coords: Option<Matrix>,
    homotopies: usize,
}

impl HomK {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `f` in the basis, modulo homotopy.
    pub fn coordinates(&self, f: &ChainMap) -> Option<Vec<u32>> {
        let v: Vec<u32> = self.vars.iter().map(|&(i, l, k)| f.comp(i).get(l, k)).collect();
        match &self.coords {
            None => v.iter().all(|&x| x == 0).then(Vec::new),
            Some(m) => m.solve(&v).map(|c| c[self.homotopies..].to_vec()),
        }
    }
}

pub fn hom_k(q: &Quiver, x: &Complex, y: &Complex) -> HomK {
    let field = x.field;
    let degrees: Vec<i32> = x.terms.keys().filter(|i| y.terms.contains_key(i)).copied().collect();
    let mut vars = Vec::new();
    for &i in &degrees {
        for (l, &yl) in y.term(i).iter().enumerate() {
            for (k, &xk) in x.term(i).iter().enumerate() {
                if q.has_path(yl, xk) {
                    vars.push((i, l, k));
                }
            }
        }
    }
    let index: BTreeMap<(i32, usize, usize), usize> = vars.iter().enumerate().map(|(n, &v)| (v, n)).collect();
    let nv = vars.len();

    // d_Y f^i - f^{i+1} d_X = 0, entry (l, k) with l in Y^{i+1}, k in X^i.
    let mut rows = Vec::new();
    let check: Vec<i32> = {
        let mut d: Vec<i32> = degrees.iter().flat_map(|&i| [i - 1, i]).collect();
        d.sort();
        d.dedup();
        d
    };
    for &i in &check {
        let dy = y.diff(i);
        let dx = x.diff(i);
        for l in 0..y.term(i + 1).len() {
            for k in 0..x.term(i).len() {
                let mut row = vec![0u32; nv];
                for m in 0..y.term(i).len() {
                    if let Some(&n) = index.get(&(i, m, k)) {
                        row[n] = field.add(row[n], dy.get(l, m));
                    }
                }
                for m in 0..x.term(i + 1).len() {
                    if let Some(&n) = index.get(&(i + 1, l, m)) {
                        row[n] = field.sub(row[n], dx.get(m, k));
                    }
                }
                if row.iter().any(|&c| c != 0) {
                    rows.push(row);
                }
            }
        }
    }
    let cycles = if rows.is_empty() { unit_vectors(nv) } else { Matrix::from_rows(field, &rows).nullspace() };

    // Elementary homotopies h^i: X^i -> Y^{i-1} give f = d_Y h + h d_X.
    let mut nulls = Vec::new();
    for (&i, xt) in &x.terms {
        let yt = y.term(i - 1);
        for (m, &ym) in yt.iter().enumerate() {
            for (k, &xk) in xt.iter().enumerate() {
                if !q.has_path(ym, xk) {
                    continue;
                }
                let mut v = vec![0u32; nv];
                let dy = y.diff(i - 1);
                for l in 0..y.term(i).len() {
                    if let Some(&n) = index.get(&(i, l, k)) {
                        v[n] = field.add(v[n], dy.get(l, m));
                    }
                }
                let dx = x.diff(i - 1);
                for kk in 0..x.term(i - 1).len() {
                    if let Some(&n) = index.get(&(i - 1, m, kk)) {
                        v[n] = field.add(v[n], dx.get(k, kk));
                    }
                }
                nulls.push(v);
            }
        }
    }
    let nulls = independent_subset(field, nv, &nulls);
    let chosen = extend_basis(field, nv, &nulls, &cycles);
    let to_map = |v: &[u32]| {
        let mut comps: BTreeMap<i32, Matrix> = BTreeMap::new();
        for (n, &(i, l, k)) in vars.iter().enumerate() {
            if v[n] != 0 {
                comps
                    .entry(i)
                    .or_insert_with(|| Matrix::zeros(field, y.term(i).len(), x.term(i).len()))
                    .set(l, k, v[n]);
            }
        }
        ChainMap { source: x.clone(), target: y.clone(), comps }
    };
    let basis: Vec<ChainMap> = chosen.iter().map(|v| to_map(v)).collect();
    let coords = if nv == 0 {
        None
    } else {
        let mut cols = nulls.clone();
        cols.extend(chosen.iter().cloned());
        Some(Matrix::from_columns(field, nv, &cols))
    };
    HomK { basis, vars, coords, homotopies: nulls.len() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver_rep::indec_catalog;
    use proptest::prelude::*;

    fn a2() -> Catalog {
        indec_catalog(&Quiver::linear(2), Field::default()).unwrap()
    }

    #[test]
    fn resolutions_on_a2() {
        let cat = a2();
        let q = cat.quiver();
        let s1 = proj_resolution(q, &cat.module(0).rep).unwrap();
        assert_eq!(s1.term(-1), &[2]);
        assert_eq!(s1.term(0), &[1]);
        let p1 = proj_resolution(q, &cat.module(2).rep).unwrap();
        assert_eq!(p1.degree_range(), Some((0, 0)));
        assert_eq!(p1.term(0), &[1]);
        let s2 = proj_resolution(q, &cat.module(1).rep).unwrap();
        assert_eq!(s2.term(0), &[2]);
        assert!(s2.term(-1).is_empty());
    }

    #[test]
    fn resolutions_are_minimal_and_exact() {
        for q in Quiver::all_orientations(4) {
            let cat = indec_catalog(&q, Field::default()).unwrap();
            for m in cat.modules() {
                let x = proj_resolution(&q, &m.rep).unwrap();
                let d = x.diff(-1);
                for l in 0..x.term(0).len() {
                    for k in 0..x.term(-1).len() {
                        assert!(x.term(0)[l] != x.term(-1)[k] || d.get(l, k) == 0);
                    }
                }
                assert!(x.homology(&q, -1).is_zero());
                assert_eq!(cat.decompose_rep(&x.homology(&q, 0)).unwrap(), vec![m.id]);
            }
        }
    }

    #[test]
    fn shift_convention() {
        let cat = a2();
        let x = realize(&cat, DerivedIndec::new(2, 1)).unwrap();
        assert_eq!(x.degree_range(), Some((-1, -1)));
        assert_eq!(decompose_object(&cat, &x).unwrap(), vec![DerivedIndec::new(2, 1)]);
        let s1 = realize(&cat, DerivedIndec::new(0, 0)).unwrap();
        assert_eq!(decompose_object(&cat, &s1.shift(-2)).unwrap(), vec![DerivedIndec::new(0, -2)]);
    }

    #[test]
    fn hom_k_examples() {
        let cat = a2();
        let q = cat.quiver();
        let s1 = realize(&cat, DerivedIndec::new(0, 0)).unwrap();
        let s2 = realize(&cat, DerivedIndec::new(1, 0)).unwrap();
        assert_eq!(hom_k(q, &s1, &s2.shift(1)).dim(), 1);
        assert_eq!(hom_k(q, &s1, &s1.shift(-1)).dim(), 0);
        assert_eq!(hom_k(q, &s1, &s1).dim(), 1);
        assert_eq!(hom_k(q, &s2, &s1).dim(), 0);
    }

    #[test]
    fn cones_on_a2() {
        let cat = a2();
        let q = cat.quiver();
        let p2 = Complex::stalk(Field::default(), vec![2], 0);
        let p1 = Complex::stalk(Field::default(), vec![1], 0);
        let mut comps = BTreeMap::new();
        comps.insert(0, Matrix::identity(Field::default(), 1));
        let f = ChainMap::new(q, p2.clone(), p1.clone(), comps).unwrap();
        assert_eq!(decompose_object(&cat, &mapping_cone(&f)).unwrap(), vec![DerivedIndec::new(0, 0)]);

        let s1 = realize(&cat, DerivedIndec::new(0, 0)).unwrap();
        assert!(decompose_object(&cat, &mapping_cone(&ChainMap::identity(&s1))).unwrap().is_empty());

        let s2 = realize(&cat, DerivedIndec::new(1, 0)).unwrap();
        let zero = ChainMap::zero(s1.clone(), s2);
        assert_eq!(
            decompose_object(&cat, &mapping_cone(&zero)).unwrap(),
            vec![DerivedIndec::new(1, 0), DerivedIndec::new(0, 1)]
        );
    }

    #[test]
    fn rejects_bad_differential() {
        let q = Quiver::linear(2);
        let f = Field::default();
        let mut terms = BTreeMap::new();
        terms.insert(-1, vec![1]);
        terms.insert(0, vec![2]);
        let mut diffs = BTreeMap::new();
        diffs.insert(-1, Matrix::identity(f, 1));
        assert!(Complex::new(&q, f, terms, diffs).is_err());
    }

    /// Sum of three objects with the degree-wise Euler characteristic of the
    /// cone equal to that of the target minus the source.
    fn euler_class(cat: &Catalog, objs: &[DerivedIndec]) -> Vec<i64> {
        let n = cat.quiver().vertex_count();
        let mut v = vec![0i64; n];
        for o in objs {
            let sign = if o.shift.rem_euclid(2) == 0 { 1 } else { -1 };
            for (w, &d) in cat.module(o.module).rep.dims().iter().enumerate() {
                v[w] += sign * d as i64;
            }
        }
        v
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn cone_balance_and_shift_invertibility(
            bits in "[01]{2}",
            picks in proptest::collection::vec((0usize..6, -1i32..=1), 1..4),
            targets in proptest::collection::vec((0usize..6, -1i32..=1), 1..4),
            coeffs in proptest::collection::vec(0u32..2, 16),
            k in -2i32..=2,
        ) {
            let q = Quiver::with_orientation(3, &bits).unwrap();
            let cat = indec_catalog(&q, Field::default()).unwrap();
            let us: Vec<DerivedIndec> = picks.iter().map(|&(m, s)| DerivedIndec::new(m, s)).collect();
            let vs: Vec<DerivedIndec> = targets.iter().map(|&(m, s)| DerivedIndec::new(m, s)).collect();
            let xs: Vec<Complex> = us.iter().map(|&u| realize(&cat, u).unwrap()).collect();
            let ys: Vec<Complex> = vs.iter().map(|&v| realize(&cat, v).unwrap()).collect();
            let mut ci = 0;
            let blocks: Vec<Vec<ChainMap>> = ys.iter().map(|y| xs.iter().map(|x| {
                let h = hom_k(&q, x, y);
                let mut acc = ChainMap::zero(x.clone(), y.clone());
                for b in &h.basis {
                    acc = acc.add(&b.scale(coeffs[ci % coeffs.len()]));
                    ci += 1;
                }
                acc
            }).collect()).collect();
            let f = ChainMap::block(&xs, &ys, &blocks);
            let cone = mapping_cone(&f);
            let parts = decompose_object(&cat, &cone).unwrap();
            let mut expect = euler_class(&cat, &vs);
            for (e, u) in expect.iter_mut().zip(euler_class(&cat, &us)) {
                *e -= u;
            }
            prop_assert_eq!(euler_class(&cat, &parts), expect);
            let back = decompose_object(&cat, &cone.shift(k).shift(-k)).unwrap();
            prop_assert_eq!(back, parts.clone());
            let shifted: Vec<DerivedIndec> = parts.iter().map(|p| p.shifted(k)).collect();
            prop_assert_eq!(decompose_object(&cat, &cone.shift(k)).unwrap(), shifted);
        }
    }
}
