//! Modules over a bound quiver algebra as quiver representations.
//!
//! A [`Representation`] assigns a vector space `F_p^{d_v}` to each vertex and
//! a `d_target × d_source` matrix to each arrow. A [`Morphism`] is one square
//! block per vertex commuting with every arrow.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{BoundAlgebra, Path};
use crate::linalg::{poly, rank_of_vectors, Fp, Matrix};

/// Random endomorphisms tried before a module is declared indecomposable.
pub const SPLIT_RETRIES: usize = 64;
/// Random morphisms tried by the isomorphism search.
pub const ISO_RETRIES: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("unknown vertex index {0}")]
    UnknownVertex(usize),
    #[error("arrow {arrow}: expected a {rows}x{cols} matrix")]
    Shape {
        arrow: String,
        rows: usize,
        cols: usize,
    },
    #[error("relation {0} does not act as zero")]
    RelationViolated(String),
    #[error("block data does not commute with arrow {0}")]
    NotAMorphism(String),
    #[error("operation undefined on the zero module")]
    ZeroModule,
    #[error("invalid module JSON: {0}")]
    Json(String),
    #[error("endomorphism ring is not split local: {0}")]
    NonSplitEndomorphisms(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StandardKind {
    Simple,
    Projective,
    Injective,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HullSide {
    ProjectiveCover,
    InjectiveEnvelope,
}

type OppositePairs = std::sync::Mutex<Vec<(Arc<BoundAlgebra>, Arc<BoundAlgebra>)>>;

fn opposite_cache() -> &'static OppositePairs {
    static CACHE: OnceLock<OppositePairs> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The opposite algebra, memoised per structural value so repeated
/// dualisation reuses one allocation. The pair is symmetric: the opposite
/// of the returned algebra is `a` itself.
pub fn opposite_of(a: &Arc<BoundAlgebra>) -> Arc<BoundAlgebra> {
    let mut cache = opposite_cache().lock().unwrap();
    if let Some((_, op)) = cache.iter().find(|(k, _)| **k == **a) {
        return op.clone();
    }
    let op = Arc::new(a.opposite());
    cache.push((a.clone(), op.clone()));
    cache.push((op.clone(), a.clone()));
    op
}

#[derive(Clone, PartialEq, Eq)]
pub struct Representation {
    algebra: Arc<BoundAlgebra>,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rep{:?}", self.dims)?;
        for (a, m) in self.algebra.quiver().arrows().iter().zip(&self.maps) {
            write!(f, " {}={:?}", a.name, m.to_rows())?;
        }
        Ok(())
    }
}

impl Representation {
    /// Validates shapes and that every forbidden path acts as zero.
    pub fn new(
        algebra: Arc<BoundAlgebra>,
        dims: Vec<usize>,
        maps: Vec<Matrix>,
    ) -> Result<Self, RepError> {
        let q = algebra.quiver();
        if dims.len() != q.vertex_count() || maps.len() != q.arrows().len() {
            return Err(RepError::Json("wrong number of vertices or arrows".into()));
        }
        for (a, m) in q.arrows().iter().zip(&maps) {
            if m.rows() != dims[a.target] || m.cols() != dims[a.source] || m.field() != algebra.field()
            {
                return Err(RepError::Shape {
                    arrow: a.name.clone(),
                    rows: dims[a.target],
                    cols: dims[a.source],
                });
            }
        }
        let rep = Representation {
            algebra,
            dims,
            maps,
        };
        for w in rep.algebra.ideal().forbidden() {
            if !rep.path_matrix(w).is_zero() {
                return Err(RepError::RelationViolated(w.display(rep.algebra.quiver())));
            }
        }
        Ok(rep)
    }

    pub(crate) fn new_unchecked(algebra: Arc<BoundAlgebra>, dims: Vec<usize>, maps: Vec<Matrix>) -> Self {
        Representation {
            algebra,
            dims,
            maps,
        }
    }

    pub fn zero(algebra: &Arc<BoundAlgebra>) -> Self {
        let f = algebra.field();
        let maps = algebra
            .quiver()
            .arrows()
            .iter()
            .map(|_| Matrix::zeros(f, 0, 0))
            .collect();
        Representation {
            algebra: algebra.clone(),
            dims: vec![0; algebra.vertex_count()],
            maps,
        }
    }

    pub fn algebra(&self) -> &Arc<BoundAlgebra> {
        &self.algebra
    }

    pub fn field(&self) -> Fp {
        self.algebra.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn map(&self, arrow: usize) -> &Matrix {
        &self.maps[arrow]
    }

    pub fn same_algebra(&self, other: &Representation) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) || *self.algebra == *other.algebra
    }

    /// Matrix by which a path acts, `dims(target) × dims(source)`.
    pub fn path_matrix(&self, path: &Path) -> Matrix {
        let mut acc = Matrix::identity(self.field(), self.dims[path.source]);
        for &a in path.arrows.iter().rev() {
            acc = self.maps[a].mul(&acc);
        }
        acc
    }

    /// Conjugates by one invertible matrix per vertex: `a ↦ G_t · a · G_s⁻¹`.
    pub fn change_basis(&self, g: &[Matrix]) -> Representation {
        let inv: Vec<Matrix> = g
            .iter()
            .map(|m| m.inverse().expect("basis change must be invertible"))
            .collect();
        let maps = self
            .algebra
            .quiver()
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| g[a.target].mul(m).mul(&inv[a.source]))
            .collect();
        Representation::new_unchecked(self.algebra.clone(), self.dims.clone(), maps)
    }

    /// Linear dual: a module over the opposite algebra with transposed maps.
    pub fn dual(&self) -> Representation {
        self.dual_over(&opposite_of(&self.algebra))
    }

    pub fn dual_over(&self, opposite: &Arc<BoundAlgebra>) -> Representation {
        let maps = self.maps.iter().map(Matrix::transpose).collect();
        Representation::new_unchecked(opposite.clone(), self.dims.clone(), maps)
    }

    /// Submodule spanned by the columns of `bases[v]` (assumed independent
    /// and arrow-stable), with its inclusion.
    pub fn submodule(&self, bases: &[Matrix]) -> (Representation, Morphism) {
        let f = self.field();
        let left: Vec<Matrix> = bases.iter().map(|b| b.split_basis().1).collect();
        let maps = self
            .algebra
            .quiver()
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| left[a.target].mul(&m.mul(&bases[a.source])))
            .collect();
        let dims = bases.iter().map(Matrix::cols).collect();
        let sub = Representation::new_unchecked(self.algebra.clone(), dims, maps);
        debug_assert!(bases.iter().all(|b| b.field() == f));
        let incl = Morphism::new_unchecked(sub.clone(), self.clone(), bases.to_vec());
        (sub, incl)
    }

    /// Quotient by the arrow-stable subspaces `bases[v]`, with the projection.
    pub fn quotient(&self, bases: &[Matrix]) -> (Representation, Morphism) {
        let splits: Vec<(Matrix, Matrix, Matrix)> = bases.iter().map(Matrix::split_basis).collect();
        let maps = self
            .algebra
            .quiver()
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| splits[a.target].2.mul(&m.mul(&splits[a.source].0)))
            .collect();
        let dims = splits.iter().map(|s| s.0.cols()).collect();
        let quot = Representation::new_unchecked(self.algebra.clone(), dims, maps);
        let proj = Morphism::new_unchecked(
            self.clone(),
            quot.clone(),
            splits.into_iter().map(|s| s.2).collect(),
        );
        (quot, proj)
    }

    fn radical_bases(&self) -> Vec<Matrix> {
        let f = self.field();
        let q = self.algebra.quiver();
        (0..q.vertex_count())
            .map(|v| {
                let incoming: Vec<&Matrix> = q
                    .arrows()
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| a.target == v)
                    .map(|(i, _)| &self.maps[i])
                    .collect();
                Matrix::hstack(f, self.dims[v], &incoming).column_space()
            })
            .collect()
    }

    fn socle_bases(&self) -> Vec<Matrix> {
        let f = self.field();
        let q = self.algebra.quiver();
        (0..q.vertex_count())
            .map(|v| {
                let outgoing: Vec<&Matrix> = q
                    .arrows()
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| a.source == v)
                    .map(|(i, _)| &self.maps[i])
                    .collect();
                Matrix::vstack(f, self.dims[v], &outgoing).nullspace()
            })
            .collect()
    }

    /// Dimension vector of the top `M / rad M`.
    pub fn top_dims(&self) -> Vec<usize> {
        self.radical_bases()
            .iter()
            .zip(&self.dims)
            .map(|(r, d)| d - r.cols())
            .collect()
    }

    pub fn socle_dims(&self) -> Vec<usize> {
        self.socle_bases().iter().map(Matrix::cols).collect()
    }

    /// Iso-invariant data used to order summands and prune isomorphism
    /// searches: dimension vector, top, socle, and the rank of every arrow.
    pub fn fingerprint(&self) -> Vec<usize> {
        let mut key = self.dims.clone();
        key.extend(self.top_dims());
        key.extend(self.socle_dims());
        key.extend(self.maps.iter().map(Matrix::rank));
        key
    }

    pub fn to_json(&self) -> serde_json::Value {
        let q = self.algebra.quiver();
        let dims: BTreeMap<String, usize> = (0..q.vertex_count())
            .map(|v| (q.label(v).to_string(), self.dims[v]))
            .collect();
        let maps: BTreeMap<String, Vec<Vec<u64>>> = q
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| (a.name.clone(), m.to_rows()))
            .collect();
        serde_json::json!({ "dims": dims, "maps": maps })
    }

    /// Reads `{"dims": {vertex: n}, "maps": {arrow: [[row], ...]}}`. Missing
    /// vertices have dimension zero and missing arrows act as zero.
    pub fn from_json(algebra: &Arc<BoundAlgebra>, text: &str) -> Result<Self, RepError> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| RepError::Json(e.to_string()))?;
        let q = algebra.quiver();
        let f = algebra.field();
        let mut dims = vec![0usize; q.vertex_count()];
        if let Some(obj) = value.get("dims").and_then(|d| d.as_object()) {
            for (k, v) in obj {
                let label: u32 = k
                    .parse()
                    .map_err(|_| RepError::Json(format!("bad vertex key {k}")))?;
                let idx = q
                    .vertex_index(label)
                    .ok_or_else(|| RepError::Json(format!("unknown vertex {label}")))?;
                dims[idx] = v
                    .as_u64()
                    .ok_or_else(|| RepError::Json(format!("bad dimension at {k}")))?
                    as usize;
            }
        } else {
            return Err(RepError::Json("missing \"dims\" object".into()));
        }
        let mut maps: Vec<Matrix> = q
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(f, dims[a.target], dims[a.source]))
            .collect();
        if let Some(obj) = value.get("maps").and_then(|m| m.as_object()) {
            for (name, rows) in obj {
                let idx = q
                    .arrow_index(name)
                    .ok_or_else(|| RepError::Json(format!("unknown arrow {name}")))?;
                let a = q.arrow(idx);
                let rows: Vec<Vec<i64>> = serde_json::from_value(rows.clone())
                    .map_err(|e| RepError::Json(format!("arrow {name}: {e}")))?;
                let (r, c) = (dims[a.target], dims[a.source]);
                if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                    return Err(RepError::Shape {
                        arrow: name.clone(),
                        rows: r,
                        cols: c,
                    });
                }
                maps[idx] = Matrix::from_rows(f, &rows, c);
            }
        }
        Representation::new(algebra.clone(), dims, maps)
    }
}

/// `S(v)`, `P(v)` or `I(v)` for the vertex with index `v`.
pub fn standard_module(
    algebra: &Arc<BoundAlgebra>,
    kind: StandardKind,
    v: usize,
) -> Result<Representation, RepError> {
    if v >= algebra.vertex_count() {
        return Err(RepError::UnknownVertex(v));
    }
    Ok(match kind {
        StandardKind::Simple => simple(algebra, v),
        StandardKind::Projective => projective(algebra, v),
        StandardKind::Injective => {
            let op = opposite_of(algebra);
            projective(&op, v).dual_over(algebra)
        }
    })
}

fn simple(algebra: &Arc<BoundAlgebra>, v: usize) -> Representation {
    let f = algebra.field();
    let mut dims = vec![0; algebra.vertex_count()];
    dims[v] = 1;
    let maps = algebra
        .quiver()
        .arrows()
        .iter()
        .map(|a| Matrix::zeros(f, dims[a.target], dims[a.source]))
        .collect();
    Representation::new_unchecked(algebra.clone(), dims, maps)
}

/// `Λe_v`: basis the surviving paths starting at `v`, arrows acting by
/// post-composition.
fn projective(algebra: &Arc<BoundAlgebra>, v: usize) -> Representation {
    let f = algebra.field();
    let q = algebra.quiver();
    let n = algebra.vertex_count();
    let dims: Vec<usize> = (0..n).map(|w| algebra.paths_between(v, w).count()).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let mut m = Matrix::zeros(f, dims[a.target], dims[a.source]);
            for (col, path) in algebra.paths_between(v, a.source).enumerate() {
                let mut word = Vec::with_capacity(path.len() + 1);
                word.push(ai);
                word.extend_from_slice(&path.arrows);
                let longer = Path {
                    arrows: word,
                    source: v,
                    target: a.target,
                };
                if let Some(row) = algebra.local_index(&longer) {
                    m.set(row, col, 1);
                }
            }
            m
        })
        .collect();
    Representation::new_unchecked(algebra.clone(), dims, maps)
}

#[derive(Clone, PartialEq, Eq)]
pub struct Morphism {
    source: Representation,
    target: Representation,
    blocks: Vec<Matrix>,
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Morphism {:?} -> {:?} {:?}",
            self.source.dims,
            self.target.dims,
            self.blocks.iter().map(Matrix::to_rows).collect::<Vec<_>>()
        )
    }
}

impl Morphism {
    pub fn new(source: Representation, target: Representation, blocks: Vec<Matrix>) -> Result<Self, RepError> {
        if !source.same_algebra(&target) {
            return Err(RepError::AlgebraMismatch);
        }
        let m = Morphism::new_unchecked(source, target, blocks);
        if let Some(name) = m.failing_arrow() {
            return Err(RepError::NotAMorphism(name));
        }
        Ok(m)
    }

    pub(crate) fn new_unchecked(source: Representation, target: Representation, blocks: Vec<Matrix>) -> Self {
        debug_assert!(blocks
            .iter()
            .enumerate()
            .all(|(v, b)| b.rows() == target.dims[v] && b.cols() == source.dims[v]));
        Morphism {
            source,
            target,
            blocks,
        }
    }

    pub fn zero(source: &Representation, target: &Representation) -> Self {
        let f = source.field();
        let blocks = (0..source.dims.len())
            .map(|v| Matrix::zeros(f, target.dims[v], source.dims[v]))
            .collect();
        Morphism::new_unchecked(source.clone(), target.clone(), blocks)
    }

    pub fn identity(m: &Representation) -> Self {
        let f = m.field();
        let blocks = m.dims.iter().map(|&d| Matrix::identity(f, d)).collect();
        Morphism::new_unchecked(m.clone(), m.clone(), blocks)
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }

    pub fn block(&self, v: usize) -> &Matrix {
        &self.blocks[v]
    }

    /// The first arrow whose square fails to commute, if any.
    pub fn failing_arrow(&self) -> Option<String> {
        let q = self.source.algebra.quiver();
        q.arrows().iter().enumerate().find_map(|(i, a)| {
            let lhs = self.blocks[a.target].mul(&self.source.maps[i]);
            let rhs = self.target.maps[i].mul(&self.blocks[a.source]);
            (lhs != rhs).then(|| a.name.clone())
        })
    }

    pub fn is_valid(&self) -> bool {
        self.failing_arrow().is_none()
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &Morphism) -> Morphism {
        assert_eq!(first.target.dims, self.source.dims, "composition shape mismatch");
        let blocks = self
            .blocks
            .iter()
            .zip(&first.blocks)
            .map(|(a, b)| a.mul(b))
            .collect();
        Morphism::new_unchecked(first.source.clone(), self.target.clone(), blocks)
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect();
        Morphism::new_unchecked(self.source.clone(), self.target.clone(), blocks)
    }

    pub fn sub(&self, other: &Morphism) -> Morphism {
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.sub(b)).collect();
        Morphism::new_unchecked(self.source.clone(), self.target.clone(), blocks)
    }

    pub fn scale(&self, s: u64) -> Morphism {
        let blocks = self.blocks.iter().map(|a| a.scale(s)).collect();
        Morphism::new_unchecked(self.source.clone(), self.target.clone(), blocks)
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.blocks.iter().all(Matrix::is_invertible)
    }

    pub fn is_mono(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.cols())
    }

    pub fn is_epi(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.rows())
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(Matrix::rank).sum()
    }

    /// All block entries concatenated, a coordinate vector in the ambient
    /// space of vertexwise linear maps.
    pub fn flatten(&self) -> Vec<u64> {
        self.blocks.iter().flat_map(|b| b.data().iter().copied()).collect()
    }

    pub fn inverse(&self) -> Option<Morphism> {
        let blocks = self
            .blocks
            .iter()
            .map(Matrix::inverse)
            .collect::<Option<Vec<_>>>()?;
        Some(Morphism::new_unchecked(self.target.clone(), self.source.clone(), blocks))
    }

    pub fn pow(&self, e: u64) -> Morphism {
        let blocks = self.blocks.iter().map(|b| b.pow(e)).collect();
        Morphism::new_unchecked(self.source.clone(), self.target.clone(), blocks)
    }

    /// `Df : DN → DM` over the opposite algebra.
    pub fn dual(&self) -> Morphism {
        self.dual_over(&opposite_of(self.source.algebra()))
    }

    pub fn dual_over(&self, opposite: &Arc<BoundAlgebra>) -> Morphism {
        Morphism::new_unchecked(
            self.target.dual_over(opposite),
            self.source.dual_over(opposite),
            self.blocks.iter().map(Matrix::transpose).collect(),
        )
    }

    pub fn with_source(&self, source: Representation) -> Morphism {
        Morphism::new_unchecked(source, self.target.clone(), self.blocks.clone())
    }
}

/// Linear combination `Σ c_i f_i` of parallel morphisms.
pub fn combine(basis: &[Morphism], coeffs: &[u64]) -> Morphism {
    let mut acc = Morphism::zero(basis[0].source(), basis[0].target());
    for (b, &c) in basis.iter().zip(coeffs) {
        if c != 0 {
            acc = acc.add(&b.scale(c));
        }
    }
    acc
}

/// A basis of `Hom(M, N)`: the nullspace of the commuting-square system.
pub fn hom_basis(m: &Representation, n: &Representation) -> Result<Vec<Morphism>, RepError> {
    if !m.same_algebra(n) {
        return Err(RepError::AlgebraMismatch);
    }
    Ok(hom_basis_unchecked(m, n))
}

pub(crate) fn hom_basis_unchecked(m: &Representation, n: &Representation) -> Vec<Morphism> {
    let f = m.field();
    let q = m.algebra.quiver();
    let nv = q.vertex_count();
    let mut offset = vec![0usize; nv + 1];
    for v in 0..nv {
        offset[v + 1] = offset[v] + n.dims[v] * m.dims[v];
    }
    let unknowns = offset[nv];
    if unknowns == 0 {
        return Vec::new();
    }
    let eq_count: usize = q
        .arrows()
        .iter()
        .map(|a| n.dims[a.target] * m.dims[a.source])
        .sum();
    let mut sys = Matrix::zeros(f, eq_count, unknowns);
    let mut row = 0;
    for (ai, a) in q.arrows().iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let (ma, na) = (&m.maps[ai], &n.maps[ai]);
        // (X_t · M_a − N_a · X_s)[r][c] = 0
        for r in 0..n.dims[t] {
            for c in 0..m.dims[s] {
                for k in 0..m.dims[t] {
                    let coeff = ma.get(k, c);
                    if coeff != 0 {
                        let col = offset[t] + r * m.dims[t] + k;
                        sys.set(row, col, f.add(sys.get(row, col), coeff));
                    }
                }
                for k in 0..n.dims[s] {
                    let coeff = na.get(r, k);
                    if coeff != 0 {
                        let col = offset[s] + k * m.dims[s] + c;
                        sys.set(row, col, f.sub(sys.get(row, col), coeff));
                    }
                }
                row += 1;
            }
        }
    }
    let null = sys.nullspace();
    (0..null.cols())
        .map(|j| {
            let blocks = (0..nv)
                .map(|v| {
                    let mut b = Matrix::zeros(f, n.dims[v], m.dims[v]);
                    for r in 0..n.dims[v] {
                        for c in 0..m.dims[v] {
                            b.set(r, c, null.get(offset[v] + r * m.dims[v] + c, j));
                        }
                    }
                    b
                })
                .collect();
            Morphism::new_unchecked(m.clone(), n.clone(), blocks)
        })
        .collect()
}

pub fn hom_dim(m: &Representation, n: &Representation) -> Result<usize, RepError> {
    Ok(hom_basis(m, n)?.len())
}

/// The unique morphism `P(v) → M` sending `e_v` to `element ∈ M_v`.
pub fn from_projective(p: &Representation, v: usize, target: &Representation, element: &[u64]) -> Morphism {
    let algebra = p.algebra().clone();
    let f = algebra.field();
    let nv = algebra.vertex_count();
    let blocks = (0..nv)
        .map(|w| {
            let mut b = Matrix::zeros(f, target.dims[w], p.dims[w]);
            for (col, path) in algebra.paths_between(v, w).enumerate() {
                let pm = target.path_matrix(path);
                for r in 0..target.dims[w] {
                    let val = (0..pm.cols()).fold(0, |acc, k| f.add(acc, f.mul(pm.get(r, k), element[k])));
                    b.set(r, col, val);
                }
            }
            b
        })
        .collect();
    Morphism::new_unchecked(p.clone(), target.clone(), blocks)
}

/// A direct sum with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: Representation,
    pub parts: Vec<Representation>,
    pub inclusions: Vec<Morphism>,
    pub projections: Vec<Morphism>,
}

pub fn direct_sum(parts: &[Representation]) -> Result<Representation, RepError> {
    Ok(direct_sum_with_maps(parts)?.module)
}

/// Block-diagonal sum. An empty list needs an algebra, so it is an error
/// here; use [`direct_sum_over`] for possibly empty lists.
pub fn direct_sum_with_maps(parts: &[Representation]) -> Result<DirectSum, RepError> {
    let first = parts.first().ok_or(RepError::ZeroModule)?;
    direct_sum_over(first.algebra(), parts)
}

pub fn direct_sum_over(algebra: &Arc<BoundAlgebra>, parts: &[Representation]) -> Result<DirectSum, RepError> {
    if parts.iter().any(|p| **p.algebra() != **algebra) {
        return Err(RepError::AlgebraMismatch);
    }
    let f = algebra.field();
    let nv = algebra.vertex_count();
    let dims: Vec<usize> = (0..nv).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
    let maps = algebra
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, _)| {
            let blocks: Vec<&Matrix> = parts.iter().map(|p| &p.maps[ai]).collect();
            Matrix::block_diag(f, &blocks)
        })
        .collect();
    let module = Representation::new_unchecked(algebra.clone(), dims.clone(), maps);
    let mut inclusions = Vec::with_capacity(parts.len());
    let mut projections = Vec::with_capacity(parts.len());
    let mut offsets = vec![0usize; nv];
    for p in parts {
        let mut inc = Vec::with_capacity(nv);
        let mut proj = Vec::with_capacity(nv);
        for v in 0..nv {
            let mut i = Matrix::zeros(f, dims[v], p.dims[v]);
            let mut pr = Matrix::zeros(f, p.dims[v], dims[v]);
            for k in 0..p.dims[v] {
                i.set(offsets[v] + k, k, 1);
                pr.set(k, offsets[v] + k, 1);
            }
            offsets[v] += p.dims[v];
            inc.push(i);
            proj.push(pr);
        }
        inclusions.push(Morphism::new_unchecked(p.clone(), module.clone(), inc));
        projections.push(Morphism::new_unchecked(module.clone(), p.clone(), proj));
    }
    Ok(DirectSum {
        module,
        parts: parts.to_vec(),
        inclusions,
        projections,
    })
}

/// Morphism between direct sums from its components; `component(t, s)` maps
/// part `s` of the source to part `t` of the target.
pub fn assemble(
    source: &DirectSum,
    target: &DirectSum,
    component: impl Fn(usize, usize) -> Option<Morphism>,
) -> Morphism {
    let mut acc = Morphism::zero(&source.module, &target.module);
    for t in 0..target.parts.len() {
        for s in 0..source.parts.len() {
            if let Some(c) = component(t, s) {
                let piece = target.inclusions[t].compose(&c).compose(&source.projections[s]);
                acc = acc.add(&piece);
            }
        }
    }
    acc
}

/// Kernel, image and cokernel of a morphism with their structure maps.
#[derive(Clone, Debug)]
pub struct MorphismParts {
    pub kernel: Representation,
    pub kernel_inclusion: Morphism,
    pub image: Representation,
    /// `source ↠ image`
    pub coimage_map: Morphism,
    /// `image ↪ target`
    pub image_inclusion: Morphism,
    pub cokernel: Representation,
    pub cokernel_projection: Morphism,
}

pub fn morphism_parts(f: &Morphism) -> MorphismParts {
    let ker_bases: Vec<Matrix> = f.blocks.iter().map(Matrix::nullspace).collect();
    let (kernel, kernel_inclusion) = f.source.submodule(&ker_bases);
    let img_bases: Vec<Matrix> = f.blocks.iter().map(Matrix::column_space).collect();
    let (image, image_inclusion) = f.target.submodule(&img_bases);
    let coimage_blocks = img_bases
        .iter()
        .zip(&f.blocks)
        .map(|(b, fb)| b.solve(fb).expect("image contains every column"))
        .collect();
    let coimage_map = Morphism::new_unchecked(f.source.clone(), image.clone(), coimage_blocks);
    let (cokernel, cokernel_projection) = f.target.quotient(&img_bases);
    MorphismParts {
        kernel,
        kernel_inclusion,
        image,
        coimage_map,
        image_inclusion,
        cokernel,
        cokernel_projection,
    }
}

/// `ker g / im f` for composable `f`, `g` with `g ∘ f = 0`.
pub fn homology_at(f: &Morphism, g: &Morphism) -> Representation {
    let ker = morphism_parts(g);
    let blocks = ker
        .kernel_inclusion
        .blocks
        .iter()
        .zip(&f.blocks)
        .map(|(k, fb)| k.solve(fb).expect("image of f lies in ker g"))
        .collect();
    let into_kernel = Morphism::new_unchecked(f.source.clone(), ker.kernel.clone(), blocks);
    morphism_parts(&into_kernel).cokernel
}

/// Radical, top and socle with their structure maps.
#[derive(Clone, Debug)]
pub struct Filtration {
    pub radical: Representation,
    pub radical_inclusion: Morphism,
    pub top: Representation,
    pub top_projection: Morphism,
    pub socle: Representation,
    pub socle_inclusion: Morphism,
}

pub fn filtration_parts(m: &Representation) -> Filtration {
    let rad = m.radical_bases();
    let (radical, radical_inclusion) = m.submodule(&rad);
    let (top, top_projection) = m.quotient(&rad);
    let (socle, socle_inclusion) = m.submodule(&m.socle_bases());
    Filtration {
        radical,
        radical_inclusion,
        top,
        top_projection,
        socle,
        socle_inclusion,
    }
}

/// A projective cover `⊕ P(v) ↠ M` or an injective envelope `M ↪ ⊕ I(v)`,
/// with the vertex of each indecomposable summand in order.
#[derive(Clone, Debug)]
pub struct Hull {
    pub map: Morphism,
    pub vertices: Vec<usize>,
}

pub fn cover_envelope(m: &Representation, side: HullSide) -> Result<Hull, RepError> {
    if m.is_zero() {
        return Err(RepError::ZeroModule);
    }
    Ok(match side {
        HullSide::ProjectiveCover => projective_cover(m),
        HullSide::InjectiveEnvelope => injective_envelope(m),
    })
}

/// Projective cover; the zero module gets the zero map from zero.
pub(crate) fn projective_cover(m: &Representation) -> Hull {
    let algebra = m.algebra().clone();
    let rad = m.radical_bases();
    let mut parts = Vec::new();
    let mut vertices = Vec::new();
    let mut generators = Vec::new();
    for (v, r) in rad.iter().enumerate() {
        let comp = r.complement();
        for j in 0..comp.cols() {
            parts.push(projective(&algebra, v));
            vertices.push(v);
            generators.push(comp.column(j));
        }
    }
    let sum = direct_sum_over(&algebra, &parts).expect("same algebra");
    let mut map = Morphism::zero(&sum.module, m);
    for (k, (&v, g)) in vertices.iter().zip(&generators).enumerate() {
        let piece = from_projective(&parts[k], v, m, g).compose(&sum.projections[k]);
        map = map.add(&piece);
    }
    Hull { map, vertices }
}

pub(crate) fn injective_envelope(m: &Representation) -> Hull {
    let cover = projective_cover(&m.dual());
    Hull {
        map: cover.map.dual_over(m.algebra()),
        vertices: cover.vertices,
    }
}

pub fn is_projective(m: &Representation) -> bool {
    let top = m.top_dims();
    let cover_dim: usize = top
        .iter()
        .enumerate()
        .map(|(v, &k)| k * (0..top.len()).map(|w| m.algebra().paths_between(v, w).count()).sum::<usize>())
        .sum();
    cover_dim == m.total_dim()
}

pub fn is_injective(m: &Representation) -> bool {
    is_projective(&m.dual())
}

/// A morphism `M → N` with every vertex block invertible, if one is found.
///
/// Tries each basis element of `Hom(M, N)`, then pairwise sums, then
/// seeded random combinations.
pub fn find_isomorphism(m: &Representation, n: &Representation, seed: u64) -> Option<Morphism> {
    if m.dims != n.dims || !m.same_algebra(n) {
        return None;
    }
    if m.is_zero() {
        return Some(Morphism::zero(m, n));
    }
    if m.fingerprint() != n.fingerprint() {
        return None;
    }
    let basis = hom_basis_unchecked(m, n);
    if basis.is_empty() {
        return None;
    }
    if let Some(b) = basis.iter().find(|b| b.is_isomorphism()) {
        return Some(b.clone());
    }
    for w in basis.windows(2) {
        let s = w[0].add(&w[1]);
        if s.is_isomorphism() {
            return Some(s);
        }
    }
    let f = m.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ISO_RETRIES {
        let coeffs: Vec<u64> = basis.iter().map(|_| f.random(&mut rng)).collect();
        let c = combine(&basis, &coeffs);
        if c.is_isomorphism() {
            return Some(c);
        }
    }
    None
}

pub fn is_isomorphic(m: &Representation, n: &Representation, seed: u64) -> bool {
    find_isomorphism(m, n, seed).is_some()
}

/// An indecomposable summand with split structure maps into and out of the
/// decomposed module.
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: Representation,
    pub inclusion: Morphism,
    pub projection: Morphism,
}

/// Krull–Schmidt decomposition, summands in canonical order.
pub fn decompose(m: &Representation, seed: u64) -> Result<Vec<Representation>, RepError> {
    Ok(decompose_with_maps(m, seed)?
        .into_iter()
        .map(|s| s.module)
        .collect())
}

pub fn is_indecomposable(m: &Representation, seed: u64) -> Result<bool, RepError> {
    if m.is_zero() {
        return Ok(false);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(find_split(m, &mut rng)?.is_none())
}

pub fn decompose_with_maps(m: &Representation, seed: u64) -> Result<Vec<Summand>, RepError> {
    let f = m.field();
    let nv = m.dims.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut leaves: Vec<(Representation, Vec<Matrix>)> = Vec::new();
    let identity: Vec<Matrix> = m.dims.iter().map(|&d| Matrix::identity(f, d)).collect();
    let mut stack = vec![(m.clone(), identity)];
    while let Some((x, basis)) = stack.pop() {
        if x.is_zero() {
            continue;
        }
        match find_split(&x, &mut rng)? {
            None => leaves.push((x, basis)),
            Some((k, l)) => {
                for part in [l, k] {
                    let (sub, incl) = x.submodule(&part);
                    let composed = basis.iter().zip(&incl.blocks).map(|(b, i)| b.mul(i)).collect();
                    stack.push((sub, composed));
                }
            }
        }
    }
    leaves.sort_by_cached_key(|(x, _)| {
        let mut key = vec![x.total_dim()];
        key.extend(x.fingerprint());
        (key, x.maps.iter().map(|mm| mm.data().to_vec()).collect::<Vec<_>>())
    });
    // projections are the row blocks of the inverse of the assembled basis
    let inverses: Vec<Matrix> = (0..nv)
        .map(|v| {
            let cols: Vec<&Matrix> = leaves.iter().map(|(_, b)| &b[v]).collect();
            Matrix::hstack(f, m.dims[v], &cols)
                .inverse()
                .expect("summand bases span the module")
        })
        .collect();
    let mut row_offset = vec![0usize; nv];
    let mut out = Vec::with_capacity(leaves.len());
    for (x, basis) in leaves {
        let proj_blocks = (0..nv)
            .map(|v| {
                let r0 = row_offset[v];
                row_offset[v] += x.dims[v];
                inverses[v].submatrix(r0..r0 + x.dims[v], 0..m.dims[v])
            })
            .collect();
        let inclusion = Morphism::new_unchecked(x.clone(), m.clone(), basis);
        let projection = Morphism::new_unchecked(m.clone(), x.clone(), proj_blocks);
        out.push(Summand {
            module: x,
            inclusion,
            projection,
        });
    }
    Ok(out)
}

/// Looks for an endomorphism with a proper generalised eigenspace and returns
/// the Fitting splitting `(ker (φ-λ)^N, im (φ-λ)^N)` as vertexwise bases.
#[allow(clippy::type_complexity)]
fn find_split(
    x: &Representation,
    rng: &mut ChaCha8Rng,
) -> Result<Option<(Vec<Matrix>, Vec<Matrix>)>, RepError> {
    let basis = hom_basis_unchecked(x, x);
    if basis.len() <= 1 {
        return Ok(None);
    }
    let f = x.field();
    let n = x.total_dim();
    let candidates = basis.len() + SPLIT_RETRIES;
    for i in 0..candidates {
        let phi = if i < basis.len() {
            basis[i].clone()
        } else {
            let coeffs: Vec<u64> = basis.iter().map(|_| f.random(rng)).collect();
            combine(&basis, &coeffs)
        };
        let mut roots: Vec<u64> = phi
            .blocks
            .iter()
            .filter(|b| b.rows() > 0)
            .flat_map(|b| poly::roots(f, &b.charpoly()))
            .collect();
        roots.sort_unstable();
        roots.dedup();
        if roots.is_empty() {
            if i < basis.len() {
                return Err(RepError::NonSplitEndomorphisms(format!(
                    "an endomorphism of a module with dimension vector {:?} has no eigenvalue in F_{}",
                    x.dims,
                    f.characteristic()
                )));
            }
            continue;
        }
        for lambda in roots {
            let powered: Vec<Matrix> = phi
                .blocks
                .iter()
                .map(|b| b.sub(&Matrix::scalar(f, b.rows(), lambda)).pow(b.rows() as u64))
                .collect();
            let kernel: Vec<Matrix> = powered.iter().map(Matrix::nullspace).collect();
            let kdim: usize = kernel.iter().map(Matrix::cols).sum();
            if kdim > 0 && kdim < n {
                let image = powered.iter().map(Matrix::column_space).collect();
                return Ok(Some((kernel, image)));
            }
        }
    }
    Ok(None)
}

/// Radical of the local ring `End(Y)`: each basis endomorphism `b` is
/// `λ + nilpotent`, and `b^(p^k) = λ` once `p^k ≥ dim Y`.
pub fn endomorphism_radical(y: &Representation) -> Result<Vec<Morphism>, RepError> {
    let f = y.field();
    let p = f.characteristic();
    let mut q = p;
    while (q as usize) < y.total_dim() {
        q = q.saturating_mul(p);
    }
    let mut out = Vec::new();
    for b in hom_basis_unchecked(y, y) {
        let powered = b.pow(q);
        let lambda = scalar_of(&powered).ok_or_else(|| {
            RepError::NonSplitEndomorphisms(format!(
                "endomorphism ring of {:?} is not local with residue field F_{p}",
                y.dims
            ))
        })?;
        let scalar = Morphism::identity(y).scale(lambda);
        out.push(b.sub(&scalar));
    }
    Ok(out)
}

fn scalar_of(m: &Morphism) -> Option<u64> {
    let mut lambda = None;
    for b in m.blocks.iter().filter(|b| b.rows() > 0) {
        let l = b.as_scalar()?;
        match lambda {
            None => lambda = Some(l),
            Some(prev) if prev != l => return None,
            _ => {}
        }
    }
    Some(lambda.unwrap_or(0))
}

/// Result of reducing a morphism to its minimal version.
#[derive(Clone, Debug)]
pub struct MinimalVersion {
    pub reduced: Morphism,
    pub discarded: Representation,
}

/// Source summands grouped into isomorphism classes: each class records
/// its representative and, for every member, the summand index and an
/// isomorphism from the representative onto it.
pub(crate) struct SummandClasses {
    pub summands: Vec<Summand>,
    pub classes: Vec<(Representation, Vec<(usize, Morphism)>)>,
}

pub(crate) fn classify(summands: Vec<Summand>, seed: u64) -> SummandClasses {
    let mut classes: Vec<(Representation, Vec<(usize, Morphism)>)> = Vec::new();
    for (i, s) in summands.iter().enumerate() {
        let found = classes.iter_mut().find_map(|(rep, members)| {
            find_isomorphism(rep, &s.module, seed).map(|iso| (members, iso))
        });
        match found {
            Some((members, iso)) => members.push((i, iso)),
            None => classes.push((
                s.module.clone(),
                vec![(i, Morphism::identity(&s.module))],
            )),
        }
    }
    SummandClasses { summands, classes }
}

/// Right minimal version of `f` given a decomposition of its source.
///
/// For each isomorphism class `Y` of summands, the multiplicity kept is the
/// dimension of `f∘Hom(Y, X)` modulo the part coming through radical maps.
pub(crate) fn right_minimal_from_classes(f: &Morphism, sc: &SummandClasses) -> Result<MinimalVersion, RepError> {
    let field = f.source.field();
    let algebra = f.source.algebra().clone();
    let mut kept_parts: Vec<Representation> = Vec::new();
    let mut kept_maps: Vec<Morphism> = Vec::new();
    let mut dropped: Vec<Representation> = Vec::new();
    for (rep, members) in &sc.classes {
        let mut radical_vectors: Vec<Vec<u64>> = Vec::new();
        let rad_end = endomorphism_radical(rep)?;
        for (i, s) in sc.summands.iter().enumerate() {
            let through = f.compose(&s.inclusion);
            match members.iter().find(|(j, _)| *j == i) {
                Some((_, iso)) => {
                    for n in &rad_end {
                        radical_vectors.push(through.compose(iso).compose(n).flatten());
                    }
                }
                None => {
                    for h in hom_basis_unchecked(rep, &s.module) {
                        radical_vectors.push(through.compose(&h).flatten());
                    }
                }
            }
        }
        let len = Morphism::zero(rep, &f.target).flatten().len();
        let mut rank = rank_of_vectors(field, len, &radical_vectors);
        for (i, iso) in members {
            let g = sc.summands[*i].inclusion.compose(iso);
            let v = f.compose(&g).flatten();
            radical_vectors.push(v);
            let new_rank = rank_of_vectors(field, len, &radical_vectors);
            if new_rank > rank {
                rank = new_rank;
                kept_parts.push(rep.clone());
                kept_maps.push(g);
            } else {
                radical_vectors.pop();
                dropped.push(sc.summands[*i].module.clone());
            }
        }
    }
    let kept = direct_sum_over(&algebra, &kept_parts)?;
    let mut iota = Morphism::zero(&kept.module, &f.source);
    for (k, g) in kept_maps.iter().enumerate() {
        iota = iota.add(&g.compose(&kept.projections[k]));
    }
    let reduced = f.compose(&iota);
    let discarded = direct_sum_over(&algebra, &dropped)?.module;
    Ok(MinimalVersion { reduced, discarded })
}

/// Minimal version of `f`: for `Right`, the source splits as
/// `discarded ⊕ source(reduced)` with `f` vanishing on `discarded`;
/// `Left` is dual.
pub fn minimal_version(f: &Morphism, side: Side, seed: u64) -> Result<MinimalVersion, RepError> {
    match side {
        Side::Right => {
            let summands = decompose_with_maps(&f.source, seed)?;
            right_minimal_from_classes(f, &classify(summands, seed))
        }
        Side::Left => {
            let algebra = f.source.algebra().clone();
            let mv = minimal_version(&f.dual(), Side::Right, seed)?;
            Ok(MinimalVersion {
                reduced: mv.reduced.dual_over(&algebra),
                discarded: mv.discarded.dual_over(&algebra),
            })
        }
    }
}

pub fn is_minimal(f: &Morphism, side: Side, seed: u64) -> Result<bool, RepError> {
    Ok(minimal_version(f, side, seed)?.discarded.is_zero())
}
