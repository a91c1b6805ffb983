//! Representations of type A quivers over a prime field.
//!
//! Indecomposables are the interval modules `[a, b]`; Hom spaces are solved
//! from the commuting-square equations, Ext¹ comes from the Euler form, and
//! direct-sum decompositions are read off Hom fingerprints.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::linalg::{Field, Matrix};

/// A quiver whose underlying graph is the path `1 - 2 - ... - n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Quiver {
    n: usize,
    arrows: Vec<(usize, usize)>,
    #[serde(skip)]
    reach: Vec<Vec<bool>>,
}

impl Quiver {
    pub fn new(n: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(LabError::NotTypeA("no vertices".into()));
        }
        if arrows.len() != n - 1 {
            return Err(LabError::NotTypeA(format!("{} arrows for {} vertices", arrows.len(), n)));
        }
        let mut seen = vec![false; n];
        for &(s, t) in &arrows {
            if s == 0 || t == 0 || s > n || t > n {
                return Err(LabError::NotTypeA(format!("arrow {s}->{t} uses a vertex outside 1..{n}")));
            }
            if s.abs_diff(t) != 1 {
                return Err(LabError::NotTypeA(format!(
                    "arrow {s}->{t} does not join consecutive vertices"
                )));
            }
            let edge = s.min(t) - 1;
            if seen[edge] {
                return Err(LabError::NotTypeA(format!("edge {}-{} used twice", edge + 1, edge + 2)));
            }
            seen[edge] = true;
        }
        let mut q = Self { n, arrows, reach: Vec::new() };
        q.reach = q.compute_reach();
        Ok(q)
    }

    /// The equioriented quiver `1 -> 2 -> ... -> n`.
    pub fn linear(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i, i + 1)).collect()).expect("linear quiver is valid")
    }

    /// Orientation bitstring of length `n - 1`: `0` means `i -> i+1`,
    /// `1` means `i+1 -> i`.
    pub fn with_orientation(n: usize, bits: &str) -> Result<Self> {
        if bits == "linear" {
            return Ok(Self::linear(n));
        }
        if n == 0 || bits.len() != n - 1 {
            return Err(LabError::Config(format!(
                "orientation string '{bits}' must have length {}",
                n.saturating_sub(1)
            )));
        }
        let arrows = bits
            .chars()
            .enumerate()
            .map(|(i, ch)| match ch {
                '0' => Ok((i + 1, i + 2)),
                '1' => Ok((i + 2, i + 1)),
                other => Err(LabError::Config(format!("bad orientation character '{other}'"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, arrows)
    }

    /// All `2^(n-1)` orientations of `A_n`.
    pub fn all_orientations(n: usize) -> Vec<Self> {
        (0..1usize << (n.saturating_sub(1)))
            .map(|mask| {
                let bits: String =
                    (0..n - 1).map(|i| if mask >> i & 1 == 1 { '1' } else { '0' }).collect();
                Self::with_orientation(n, &bits).expect("generated orientation is valid")
            })
            .collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn orientation_string(&self) -> String {
        let mut bits = vec!['0'; self.n.saturating_sub(1)];
        for &(s, t) in &self.arrows {
            if s > t {
                bits[t - 1] = '1';
            }
        }
        bits.into_iter().collect()
    }

    /// Whether there is a (possibly trivial) path `from ~> to`.
    pub fn has_path(&self, from: usize, to: usize) -> bool {
        self.reach[from - 1][to - 1]
    }

    fn compute_reach(&self) -> Vec<Vec<bool>> {
        let mut reach = vec![vec![false; self.n]; self.n];
        for start in 0..self.n {
            let mut queue = VecDeque::from([start]);
            reach[start][start] = true;
            while let Some(v) = queue.pop_front() {
                for &(s, t) in &self.arrows {
                    if s - 1 == v && !reach[start][t - 1] {
                        reach[start][t - 1] = true;
                        queue.push_back(t - 1);
                    }
                }
            }
        }
        reach
    }
}

/// Quiver description as read from a config file or the command line.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuiverConfig {
    #[serde(rename = "type")]
    pub kind: String,
    pub n: usize,
    #[serde(default)]
    pub orientation: Option<String>,
    #[serde(default)]
    pub arrows: Option<Vec<(usize, usize)>>,
}

impl QuiverConfig {
    pub fn build(&self) -> Result<Quiver> {
        if !self.kind.eq_ignore_ascii_case("A") {
            return Err(LabError::NotTypeA(format!("unsupported Dynkin type '{}'", self.kind)));
        }
        match (&self.arrows, &self.orientation) {
            (Some(arrows), _) => Quiver::new(self.n, arrows.clone()),
            (None, Some(o)) => Quiver::with_orientation(self.n, o),
            (None, None) => Ok(Quiver::linear(self.n)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DimVector(pub Vec<usize>);

impl DimVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A representation: a vector space per vertex and a matrix per arrow
/// (rows = target dimension, columns = source dimension).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rep {
    field: Field,
    dims: Vec<usize>,
    mats: Vec<Matrix>,
}

impl Rep {
    pub fn new(q: &Quiver, field: Field, dims: Vec<usize>, mats: Vec<Matrix>) -> Result<Self> {
        if dims.len() != q.vertex_count() || mats.len() != q.arrows().len() {
            return Err(LabError::Shape("dimension vector or arrow count".into()));
        }
        for (m, &(s, t)) in mats.iter().zip(q.arrows()) {
            if m.shape() != (dims[t - 1], dims[s - 1]) || m.field() != field {
                return Err(LabError::Shape(format!("matrix on arrow {s}->{t}")));
            }
        }
        Ok(Self { field, dims, mats })
    }

    pub fn zero(q: &Quiver, field: Field) -> Self {
        let dims = vec![0; q.vertex_count()];
        let mats = q.arrows().iter().map(|_| Matrix::zeros(field, 0, 0)).collect();
        Self { field, dims, mats }
    }

    /// The interval module supported on `a..=b` with identity maps.
    pub fn interval(q: &Quiver, field: Field, a: usize, b: usize) -> Self {
        assert!(1 <= a && a <= b && b <= q.vertex_count());
        let dims: Vec<usize> = (1..=q.vertex_count()).map(|v| usize::from(a <= v && v <= b)).collect();
        let mats = q
            .arrows()
            .iter()
            .map(|&(s, t)| {
                let m = Matrix::zeros(field, dims[t - 1], dims[s - 1]);
                if dims[s - 1] == 1 && dims[t - 1] == 1 {
                    Matrix::identity(field, 1)
                } else {
                    m
                }
            })
            .collect();
        Self { field, dims, mats }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_vector(&self) -> DimVector {
        DimVector(self.dims.clone())
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn mat(&self, arrow: usize) -> &Matrix {
        &self.mats[arrow]
    }

    pub fn direct_sum(&self, other: &Rep) -> Rep {
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let mats = self.mats.iter().zip(&other.mats).map(|(a, b)| a.direct_sum(b)).collect();
        Rep { field: self.field, dims, mats }
    }
}

/// A morphism of representations, one matrix per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMorphism {
    pub maps: Vec<Matrix>,
}

impl RepMorphism {
    pub fn compose(&self, first: &RepMorphism) -> RepMorphism {
        RepMorphism { maps: self.maps.iter().zip(&first.maps).map(|(g, f)| g.mul(f)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }

    /// Flattened coordinates, vertex by vertex, row-major.
    pub fn flatten(&self) -> Vec<u32> {
        self.maps
            .iter()
            .flat_map(|m| (0..m.rows()).flat_map(move |r| m.row(r).to_vec()))
            .collect()
    }
}

/// Basis of `Hom(m, n)`: solutions of `f_t * m_a = n_a * f_s` for every arrow `a: s -> t`.
pub fn hom_space(q: &Quiver, m: &Rep, n: &Rep) -> Result<Vec<RepMorphism>> {
    if m.dims.len() != n.dims.len() || m.field != n.field {
        return Err(LabError::Shape("representations of different quivers".into()));
    }
    let field = m.field;
    let nv = q.vertex_count();
    let mut offset = vec![0usize; nv + 1];
    for v in 0..nv {
        offset[v + 1] = offset[v] + n.dims[v] * m.dims[v];
    }
    let nvars = offset[nv];
    let var = |v: usize, i: usize, j: usize| offset[v] + i * m.dims[v] + j;

    let mut rows: Vec<Vec<u32>> = Vec::new();
    for (k, &(s, t)) in q.arrows().iter().enumerate() {
        let (s, t) = (s - 1, t - 1);
        let ma = &m.mats[k];
        let na = &n.mats[k];
        for i in 0..n.dims[t] {
            for j in 0..m.dims[s] {
                let mut row = vec![0u32; nvars];
                for l in 0..m.dims[t] {
                    let c = ma.get(l, j);
                    if c != 0 {
                        let x = var(t, i, l);
                        row[x] = field.add(row[x], c);
                    }
                }
                for l in 0..n.dims[s] {
                    let c = na.get(i, l);
                    if c != 0 {
                        let x = var(s, l, j);
                        row[x] = field.sub(row[x], c);
                    }
                }
                rows.push(row);
            }
        }
    }
    let basis = if rows.is_empty() {
        (0..nvars)
            .map(|x| {
                let mut v = vec![0; nvars];
                v[x] = 1;
                v
            })
            .collect()
    } else {
        Matrix::from_rows(field, &rows).nullspace()
    };
    Ok(basis
        .into_iter()
        .map(|v| RepMorphism {
            maps: (0..nv)
                .map(|w| {
                    let mut mat = Matrix::zeros(field, n.dims[w], m.dims[w]);
                    for i in 0..n.dims[w] {
                        for j in 0..m.dims[w] {
                            mat.set(i, j, v[var(w, i, j)]);
                        }
                    }
                    mat
                })
                .collect(),
        })
        .collect())
}

/// `<d, e> = sum_i d_i e_i - sum_{a: i -> j} d_i e_j`.
pub fn euler_form(d: &DimVector, e: &DimVector, q: &Quiver) -> Result<i64> {
    if d.len() != q.vertex_count() || e.len() != q.vertex_count() {
        return Err(LabError::Shape("dimension vector length".into()));
    }
    let diag: i64 = d.0.iter().zip(&e.0).map(|(&x, &y)| (x * y) as i64).sum();
    let off: i64 = q.arrows().iter().map(|&(s, t)| (d.0[s - 1] * e.0[t - 1]) as i64).sum();
    Ok(diag - off)
}

/// `dim Ext¹(m, n) = dim Hom(m, n) - <dim m, dim n>` (hereditary).
pub fn ext1_dim(q: &Quiver, m: &Rep, n: &Rep) -> Result<usize> {
    let hom = hom_space(q, m, n)?.len() as i64;
    let ext = hom - euler_form(&m.dim_vector(), &n.dim_vector(), q)?;
    usize::try_from(ext).map_err(|_| LabError::NegativeExt(m.total_dim(), n.total_dim()))
}

/// All subrepresentations of a representation with vertex dimensions <= 1,
/// as (sub, quotient) pairs. A subrepresentation is a vertex subset of the
/// support closed under the nonzero arrows.
pub fn sub_quotient_pairs(q: &Quiver, m: &Rep) -> Result<Vec<(Rep, Rep)>> {
    if m.dims.iter().any(|&d| d > 1) {
        return Err(LabError::DimensionTooLarge);
    }
    let support: Vec<usize> = (0..q.vertex_count()).filter(|&v| m.dims[v] == 1).collect();
    let mut out = Vec::new();
    for mask in 0..1u64 << support.len() {
        let mut inside = vec![false; q.vertex_count()];
        for (i, &v) in support.iter().enumerate() {
            inside[v] = mask >> i & 1 == 1;
        }
        let closed = q.arrows().iter().enumerate().all(|(k, &(s, t))| {
            !(inside[s - 1] && m.mats[k].shape() == (1, 1) && m.mats[k].get(0, 0) != 0) || inside[t - 1]
        });
        if !closed {
            continue;
        }
        let restrict = |keep: &dyn Fn(usize) -> bool| {
            let dims: Vec<usize> = (0..q.vertex_count()).map(|v| usize::from(m.dims[v] == 1 && keep(v))).collect();
            let mats = q
                .arrows()
                .iter()
                .enumerate()
                .map(|(k, &(s, t))| {
                    if dims[s - 1] == 1 && dims[t - 1] == 1 {
                        m.mats[k].clone()
                    } else {
                        Matrix::zeros(m.field, dims[t - 1], dims[s - 1])
                    }
                })
                .collect();
            Rep { field: m.field, dims, mats }
        };
        let sub = restrict(&|v| inside[v]);
        let quot = restrict(&|v| !inside[v]);
        out.push((sub, quot));
    }
    Ok(out)
}

/// An indecomposable module in the catalog.
#[derive(Clone, Debug)]
pub struct Module {
    pub id: usize,
    pub start: usize,
    pub end: usize,
    pub rep: Rep,
    /// `Some(v)` if this is the indecomposable projective `P_v`.
    pub projective_at: Option<usize>,
}

/// The indecomposable modules of `kQ` with their Hom and Ext¹ tables.
#[derive(Clone, Debug)]
pub struct Catalog {
    quiver: Quiver,
    field: Field,
    modules: Vec<Module>,
    hom: Vec<Vec<usize>>,
    ext: Vec<Vec<usize>>,
    topo: Vec<usize>,
    quotients: Vec<BTreeSet<usize>>,
}

/// One representative per isoclass of indecomposables, ordered by length
/// then starting vertex.
pub fn indec_catalog(q: &Quiver, field: Field) -> Result<Catalog> {
    let n = q.vertex_count();
    let mut modules = Vec::new();
    for len in 1..=n {
        for a in 1..=n + 1 - len {
            let b = a + len - 1;
            let projective_at = (1..=n).find(|&v| (1..=n).all(|w| q.has_path(v, w) == (a <= w && w <= b)));
            modules.push(Module {
                id: modules.len(),
                start: a,
                end: b,
                rep: Rep::interval(q, field, a, b),
                projective_at,
            });
        }
    }
    let k = modules.len();
    let mut hom = vec![vec![0; k]; k];
    let mut ext = vec![vec![0; k]; k];
    for i in 0..k {
        for j in 0..k {
            hom[i][j] = hom_space(q, &modules[i].rep, &modules[j].rep)?.len();
            ext[i][j] = ext1_dim(q, &modules[i].rep, &modules[j].rep)
                .map_err(|_| LabError::NegativeExt(i, j))?;
        }
    }
    let topo = topological_order(&hom)?;
    let mut cat = Catalog {
        quiver: q.clone(),
        field,
        modules,
        hom,
        ext,
        topo,
        quotients: Vec::new(),
    };
    let mut quotients = Vec::with_capacity(k);
    for i in 0..k {
        let mut set = BTreeSet::new();
        for (_, quot) in sub_quotient_pairs(q, &cat.modules[i].rep)? {
            set.extend(cat.decompose_rep(&quot)?);
        }
        quotients.push(set);
    }
    cat.quotients = quotients;
    Ok(cat)
}

/// Order in which every nonzero Hom between distinct objects points forward.
pub(crate) fn topological_order(hom: &[Vec<usize>]) -> Result<Vec<usize>> {
    let k = hom.len();
    let mut indeg = vec![0usize; k];
    for i in 0..k {
        for j in 0..k {
            if i != j && hom[i][j] > 0 {
                indeg[j] += 1;
            }
        }
    }
    let mut ready: BTreeSet<usize> = (0..k).filter(|&i| indeg[i] == 0).collect();
    let mut order = Vec::with_capacity(k);
    while let Some(&i) = ready.iter().next() {
        ready.remove(&i);
        order.push(i);
        for j in 0..k {
            if i != j && hom[i][j] > 0 {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    ready.insert(j);
                }
            }
        }
    }
    if order.len() != k {
        return Err(LabError::FingerprintMismatch("Hom relation has a cycle".into()));
    }
    Ok(order)
}

impl Catalog {
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn modules(&self) -> &[Module] {
        &self.modules
    }

    pub fn module(&self, id: usize) -> &Module {
        &self.modules[id]
    }

    pub fn find(&self, start: usize, end: usize) -> Option<usize> {
        self.modules.iter().position(|m| m.start == start && m.end == end)
    }

    pub fn hom_dim(&self, i: usize, j: usize) -> usize {
        self.hom[i][j]
    }

    pub fn ext_dim(&self, i: usize, j: usize) -> usize {
        self.ext[i][j]
    }

    pub fn is_projective(&self, id: usize) -> bool {
        self.modules[id].projective_at.is_some()
    }

    /// Catalog id of `P_v`.
    pub fn projective(&self, v: usize) -> usize {
        self.modules
            .iter()
            .position(|m| m.projective_at == Some(v))
            .expect("every vertex has an indecomposable projective")
    }

    pub fn projectives(&self) -> Vec<usize> {
        (1..=self.quiver.vertex_count()).map(|v| self.projective(v)).collect()
    }

    /// Modules in an order compatible with nonzero Homs.
    pub fn topological(&self) -> &[usize] {
        &self.topo
    }

    pub fn name(&self, id: usize) -> String {
        let m = &self.modules[id];
        if m.start == m.end {
            format!("S{}", m.start)
        } else if let Some(v) = m.projective_at {
            format!("P{v}")
        } else {
            format!("[{},{}]", m.start, m.end)
        }
    }

    /// Krull–Schmidt decomposition via the fingerprint `dim Hom(M_i, m)`.
    /// Returns the catalog ids with multiplicity, sorted.
    pub fn decompose_rep(&self, m: &Rep) -> Result<Vec<usize>> {
        let k = self.len();
        let mut fp = Vec::with_capacity(k);
        for module in &self.modules {
            fp.push(hom_space(&self.quiver, &module.rep, m)?.len() as i64);
        }
        let mut mult = vec![0i64; k];
        for (pos, &j) in self.topo.iter().enumerate().rev() {
            let later: i64 = self.topo[pos + 1..].iter().map(|&l| mult[l] * self.hom[j][l] as i64).sum();
            mult[j] = fp[j] - later;
            if mult[j] < 0 {
                return Err(LabError::FingerprintMismatch(format!(
                    "negative multiplicity for {}",
                    self.name(j)
                )));
            }
        }
        let mut dims = vec![0usize; self.quiver.vertex_count()];
        for (j, &c) in mult.iter().enumerate() {
            for (d, &x) in dims.iter_mut().zip(self.modules[j].rep.dims()) {
                *d += c as usize * x;
            }
        }
        if dims != m.dims() {
            return Err(LabError::FingerprintMismatch(format!(
                "dimension vector {:?} vs recovered {:?}",
                m.dims(),
                dims
            )));
        }
        Ok(mult
            .iter()
            .enumerate()
            .flat_map(|(j, &c)| std::iter::repeat_n(j, c as usize))
            .collect())
    }

    /// Indecomposable summands of quotients of module `id`, including itself.
    pub fn quotient_summands(&self, id: usize) -> &BTreeSet<usize> {
        &self.quotients[id]
    }

    /// Smallest superset closed under indecomposable summands of quotients.
    pub fn quotient_closure(&self, ids: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut out = ids.clone();
        let mut frontier: Vec<usize> = ids.iter().copied().collect();
        while let Some(i) = frontier.pop() {
            for &j in &self.quotients[i] {
                if out.insert(j) {
                    frontier.push(j);
                }
            }
        }
        out
    }

    pub fn is_quotient_closed(&self, ids: &BTreeSet<usize>) -> bool {
        ids.iter().all(|&i| self.quotients[i].is_subset(ids))
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A{}", self.n)?;
        if self.n > 1 {
            write!(f, "[{}]", self.orientation_string())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a2() -> (Quiver, Catalog) {
        let q = Quiver::linear(2);
        let c = indec_catalog(&q, Field::default()).unwrap();
        (q, c)
    }

    /// Every representation of `1 -> 2` with dims <= (1,1) over F_2,
    /// decomposed by brute force: the indecomposable ones are those whose
    /// endomorphism ring has no nontrivial idempotent.
    #[test]
    fn a2_catalog_matches_exhaustive_search() {
        let (q, cat) = a2();
        let f = Field::default();
        let mut indecs = Vec::new();
        for d1 in 0..=1usize {
            for d2 in 0..=1usize {
                let choices: Vec<u32> = if d1 == 1 && d2 == 1 { vec![0, 1] } else { vec![0] };
                for &x in &choices {
                    let mut m = Matrix::zeros(f, d2, d1);
                    if d1 == 1 && d2 == 1 {
                        m.set(0, 0, x);
                    }
                    let rep = Rep::new(&q, f, vec![d1, d2], vec![m]).unwrap();
                    if rep.is_zero() {
                        continue;
                    }
                    let end = hom_space(&q, &rep, &rep).unwrap();
                    let idempotents = enumerate_span(&end)
                        .into_iter()
                        .filter(|e| e.compose(e) == *e && !e.is_zero())
                        .count();
                    if idempotents == 1 {
                        indecs.push(rep.dims().to_vec());
                    }
                }
            }
        }
        assert_eq!(indecs.len(), 3);
        let mut cat_dims: Vec<Vec<usize>> = cat.modules().iter().map(|m| m.rep.dims().to_vec()).collect();
        cat_dims.sort();
        indecs.sort();
        assert_eq!(cat_dims, indecs);
        assert_eq!(cat.name(0), "S1");
        assert_eq!(cat.name(1), "S2");
        assert_eq!(cat.name(2), "P1");
    }

    fn enumerate_span(basis: &[RepMorphism]) -> Vec<RepMorphism> {
        let mut out = Vec::new();
        for mask in 0..1u32 << basis.len() {
            let mut acc: Option<RepMorphism> = None;
            for (i, b) in basis.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    acc = Some(match acc {
                        None => b.clone(),
                        Some(a) => RepMorphism {
                            maps: a.maps.iter().zip(&b.maps).map(|(x, y)| x.add(y)).collect(),
                        },
                    });
                }
            }
            if let Some(a) = acc {
                out.push(a);
            } else if let Some(b) = basis.first() {
                out.push(RepMorphism { maps: b.maps.iter().map(|m| m.scale(0)).collect() });
            }
        }
        out
    }

    #[test]
    fn catalog_sizes() {
        for n in 1..=5 {
            let q = Quiver::linear(n);
            assert_eq!(indec_catalog(&q, Field::default()).unwrap().len(), n * (n + 1) / 2);
        }
    }

    #[test]
    fn a2_homs() {
        let (q, cat) = a2();
        let s1 = &cat.module(0).rep;
        let p1 = &cat.module(2).rep;
        assert_eq!(hom_space(&q, p1, s1).unwrap().len(), 1);
        assert_eq!(hom_space(&q, s1, p1).unwrap().len(), 0);
        for m in cat.modules() {
            assert!(!hom_space(&q, &m.rep, &m.rep).unwrap().is_empty());
        }
    }

    #[test]
    fn euler_and_ext_on_a2() {
        let (q, cat) = a2();
        let d = |v: &[usize]| DimVector(v.to_vec());
        assert_eq!(euler_form(&d(&[1, 0]), &d(&[0, 1]), &q).unwrap(), -1);
        assert_eq!(euler_form(&d(&[1, 1]), &d(&[1, 0]), &q).unwrap(), 1);
        assert_eq!(euler_form(&d(&[1, 1]), &d(&[0, 0]), &q).unwrap(), 0);
        let (s1, s2) = (&cat.module(0).rep, &cat.module(1).rep);
        assert_eq!(ext1_dim(&q, s1, s2).unwrap(), 1);
        assert_eq!(ext1_dim(&q, s2, s1).unwrap(), 0);
        for p in cat.projectives() {
            for m in cat.modules() {
                assert_eq!(cat.ext_dim(p, m.id), 0);
            }
        }
    }

    #[test]
    fn euler_form_rejects_wrong_length() {
        let q = Quiver::linear(2);
        assert!(euler_form(&DimVector(vec![1]), &DimVector(vec![1, 0]), &q).is_err());
    }

    #[test]
    fn type_a_hom_and_ext_at_most_one() {
        for q in Quiver::all_orientations(4) {
            let cat = indec_catalog(&q, Field::default()).unwrap();
            for i in 0..cat.len() {
                for j in 0..cat.len() {
                    assert!(cat.hom_dim(i, j) <= 1 && cat.ext_dim(i, j) <= 1);
                }
            }
        }
    }

    #[test]
    fn decompose_split_and_sums() {
        let (q, cat) = a2();
        let f = Field::default();
        let split = Rep::new(&q, f, vec![1, 1], vec![Matrix::zeros(f, 1, 1)]).unwrap();
        assert_eq!(cat.decompose_rep(&split).unwrap(), vec![0, 1]);
        for m in cat.modules() {
            assert_eq!(cat.decompose_rep(&m.rep).unwrap(), vec![m.id]);
        }
        let p1 = &cat.module(2).rep;
        assert_eq!(cat.decompose_rep(&p1.direct_sum(p1)).unwrap(), vec![2, 2]);
    }

    #[test]
    fn quotient_closure_examples() {
        let (_, cat) = a2();
        let set = |v: &[usize]| v.iter().copied().collect::<BTreeSet<_>>();
        assert_eq!(cat.quotient_closure(&set(&[2])), set(&[0, 2]));
        assert_eq!(cat.quotient_closure(&set(&[])), set(&[]));
        assert_eq!(cat.quotient_closure(&set(&[0])), set(&[0]));
    }

    #[test]
    fn rejects_non_type_a() {
        assert!(Quiver::new(3, vec![(1, 3), (2, 3)]).is_err());
        assert!(Quiver::new(3, vec![(1, 2)]).is_err());
        assert!(Quiver::new(3, vec![(1, 2), (2, 1)]).is_err());
        assert!(Quiver::with_orientation(3, "0x").is_err());
        let cfg: QuiverConfig = serde_json::from_str(r#"{"type":"D","n":4}"#).unwrap();
        assert!(cfg.build().is_err());
    }

    #[test]
    fn config_parsing() {
        let cfg: QuiverConfig = serde_json::from_str(r#"{"type":"A","n":3,"orientation":"linear"}"#).unwrap();
        assert_eq!(cfg.build().unwrap(), Quiver::linear(3));
        let cfg: QuiverConfig = serde_json::from_str(r#"{"type":"A","n":3,"arrows":[[1,2],[3,2]]}"#).unwrap();
        assert_eq!(cfg.build().unwrap().orientation_string(), "01");
    }

    fn catalog_strategy() -> impl Strategy<Value = (usize, String, u32)> {
        (1usize..=4).prop_flat_map(|n| {
            (Just(n), proptest::collection::vec(prop_oneof![Just('0'), Just('1')], n - 1), prop_oneof![Just(2u32), Just(3)])
                .prop_map(|(n, bits, p)| (n, bits.into_iter().collect(), p))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn euler_identity_and_additivity((n, bits, p) in catalog_strategy(), picks in proptest::collection::vec(0usize..10, 3)) {
            let q = Quiver::with_orientation(n, &bits).unwrap();
            let cat = indec_catalog(&q, Field::new(p).unwrap()).unwrap();
            let k = cat.len();
            for i in 0..k {
                for j in 0..k {
                    let e = euler_form(&cat.module(i).rep.dim_vector(), &cat.module(j).rep.dim_vector(), &q).unwrap();
                    prop_assert_eq!(cat.hom_dim(i, j) as i64 - cat.ext_dim(i, j) as i64, e);
                }
            }
            let ids: Vec<usize> = picks.iter().map(|x| x % k).collect();
            let sum = ids.iter().fold(Rep::zero(&q, cat.field()), |acc, &i| acc.direct_sum(&cat.module(i).rep));
            let mut expected = ids.clone();
            expected.sort();
            prop_assert_eq!(cat.decompose_rep(&sum).unwrap(), expected);
        }

        #[test]
        fn quotient_closure_idempotent_monotone((n, bits, _p) in catalog_strategy(), a in 0u32..1024, b in 0u32..1024) {
            let q = Quiver::with_orientation(n, &bits).unwrap();
            let cat = indec_catalog(&q, Field::default()).unwrap();
            let k = cat.len();
            let s: BTreeSet<usize> = (0..k).filter(|i| a >> i & 1 == 1).collect();
            let t: BTreeSet<usize> = s.iter().copied().chain((0..k).filter(|i| b >> i & 1 == 1)).collect();
            let cs = cat.quotient_closure(&s);
            prop_assert_eq!(cat.quotient_closure(&cs), cs.clone());
            prop_assert!(cs.is_subset(&cat.quotient_closure(&t)));
        }
    }
}
