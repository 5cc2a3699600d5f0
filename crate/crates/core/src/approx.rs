//! Approximations by a finite subcategory `add C`, orthogonal complements and
//! the maximal n-orthogonality test.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::BoundAlgebra;
use crate::homology::{ext_dim_from, minimal_resolution, HomologyError, Resolution, ResolutionKind};
use crate::linalg::rank_of_vectors;
use crate::rep::{
    decompose, direct_sum_over, find_isomorphism, hom_basis_unchecked, is_indecomposable, opposite_of,
    right_minimal_from_classes, standard_module, Morphism, RepError, Representation, Side, StandardKind, Summand,
    SummandClasses,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ApproxError {
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error("{0} is not in add C")]
    NotInAdd(String),
    #[error("object {0} is not indecomposable")]
    Decomposable(String),
    #[error("objects {0} and {1} are isomorphic")]
    Duplicate(String, String),
}

/// Pairwise non-isomorphic indecomposables standing for `add` of their sum.
#[derive(Clone, Debug)]
pub struct SubcategorySet {
    algebra: Arc<BoundAlgebra>,
    objects: Vec<Representation>,
    names: Vec<String>,
}

impl SubcategorySet {
    /// Checks every object is indecomposable and no two are isomorphic.
    pub fn new(
        algebra: &Arc<BoundAlgebra>,
        named: Vec<(String, Representation)>,
        seed: u64,
    ) -> Result<Self, ApproxError> {
        for (i, (name, x)) in named.iter().enumerate() {
            if !x.same_algebra(&Representation::zero(algebra)) {
                return Err(RepError::AlgebraMismatch.into());
            }
            if !is_indecomposable(x, seed)? {
                return Err(ApproxError::Decomposable(name.clone()));
            }
            if let Some((other, _)) = named[..i]
                .iter()
                .find(|(_, y)| find_isomorphism(y, x, seed).is_some())
            {
                return Err(ApproxError::Duplicate(other.clone(), name.clone()));
            }
        }
        Ok(Self::new_unchecked(algebra, named))
    }

    pub(crate) fn new_unchecked(algebra: &Arc<BoundAlgebra>, named: Vec<(String, Representation)>) -> Self {
        let (names, objects) = named.into_iter().unzip();
        SubcategorySet {
            algebra: algebra.clone(),
            objects,
            names,
        }
    }

    pub fn empty(algebra: &Arc<BoundAlgebra>) -> Self {
        Self::new_unchecked(algebra, Vec::new())
    }

    pub fn algebra(&self) -> &Arc<BoundAlgebra> {
        &self.algebra
    }

    pub fn objects(&self) -> &[Representation] {
        &self.objects
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Representation)> {
        self.names.iter().map(String::as_str).zip(&self.objects)
    }

    /// Index of the object isomorphic to `x`.
    pub fn position(&self, x: &Representation, seed: u64) -> Option<usize> {
        self.objects.iter().position(|c| find_isomorphism(c, x, seed).is_some())
    }

    /// Whether every indecomposable summand of `x` is isomorphic to an object.
    pub fn contains_add(&self, x: &Representation, seed: u64) -> Result<bool, ApproxError> {
        for s in decompose(x, seed)? {
            if self.position(&s, seed).is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality of iso-class sets.
    pub fn same_classes(&self, other: &SubcategorySet, seed: u64) -> bool {
        self.len() == other.len() && self.objects.iter().all(|x| other.position(x, seed).is_some())
    }

    /// The same objects, dualised, over the opposite algebra.
    pub fn dual(&self) -> SubcategorySet {
        let op = opposite_of(&self.algebra);
        SubcategorySet {
            objects: self.objects.iter().map(|x| x.dual_over(&op)).collect(),
            names: self.names.iter().map(|n| format!("D{n}")).collect(),
            algebra: op,
        }
    }
}

/// `add(Λ ⊕ DΛ^op)`: the indecomposable projectives, then the injectives not
/// isomorphic to any of them.
pub fn trivial_candidate(algebra: &Arc<BoundAlgebra>) -> SubcategorySet {
    let n = algebra.vertex_count();
    let label = |v: usize| algebra.vertex_label(v);
    let mut named: Vec<(String, Representation)> = (0..n)
        .map(|v| {
            let p = standard_module(algebra, StandardKind::Projective, v).expect("vertex in range");
            (format!("P{}", label(v)), p)
        })
        .collect();
    for v in 0..n {
        let i = standard_module(algebra, StandardKind::Injective, v).expect("vertex in range");
        if !named.iter().any(|(_, p)| find_isomorphism(p, &i, 0).is_some()) {
            named.push((format!("I{}", label(v)), i));
        }
    }
    SubcategorySet::new_unchecked(algebra, named)
}

/// Whether `f` is a `side` approximation by `add C`. Right: `f : X → M` with
/// `X ∈ add C` and every `C' → M` factoring through `f`. Left is dual.
pub fn is_approximation(f: &Morphism, c: &SubcategorySet, side: Side, seed: u64) -> Result<bool, ApproxError> {
    let field = f.source().field();
    match side {
        Side::Right => {
            if !c.contains_add(f.source(), seed)? {
                return Err(ApproxError::NotInAdd("source".into()));
            }
            for obj in c.objects() {
                let wanted = hom_basis_unchecked(obj, f.target()).len();
                let len = Morphism::zero(obj, f.target()).flatten().len();
                let images: Vec<Vec<u64>> = hom_basis_unchecked(obj, f.source())
                    .iter()
                    .map(|h| f.compose(h).flatten())
                    .collect();
                if rank_of_vectors(field, len, &images) != wanted {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Side::Left => {
            if !c.contains_add(f.target(), seed)? {
                return Err(ApproxError::NotInAdd("target".into()));
            }
            for obj in c.objects() {
                let wanted = hom_basis_unchecked(f.source(), obj).len();
                let len = Morphism::zero(f.source(), obj).flatten().len();
                let images: Vec<Vec<u64>> = hom_basis_unchecked(f.target(), obj)
                    .iter()
                    .map(|h| h.compose(f).flatten())
                    .collect();
                if rank_of_vectors(field, len, &images) != wanted {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// The minimal `side` approximation of `m` by `add C`.
///
/// Right: the universal map `⊕ C'^{dim Hom(C', M)} → M` reduced to its
/// minimal version. Left: the right approximation of `DM` by `DC`, dualised.
pub fn minimal_approximation(c: &SubcategorySet, m: &Representation, side: Side) -> Result<Morphism, ApproxError> {
    match side {
        Side::Right => minimal_right(c, m),
        Side::Left => {
            let algebra = m.algebra().clone();
            let op = opposite_of(&algebra);
            let f = minimal_right(&c.dual(), &m.dual_over(&op))?;
            Ok(f.dual_over(&algebra))
        }
    }
}

fn minimal_right(c: &SubcategorySet, m: &Representation) -> Result<Morphism, ApproxError> {
    let algebra = m.algebra().clone();
    let mut parts = Vec::new();
    let mut maps = Vec::new();
    let mut owner = Vec::new();
    for (k, obj) in c.objects().iter().enumerate() {
        for h in hom_basis_unchecked(obj, m) {
            parts.push(obj.clone());
            maps.push(h);
            owner.push(k);
        }
    }
    let sum = direct_sum_over(&algebra, &parts)?;
    let mut universal = Morphism::zero(&sum.module, m);
    for (j, h) in maps.iter().enumerate() {
        universal = universal.add(&h.compose(&sum.projections[j]));
    }
    let summands: Vec<Summand> = (0..parts.len())
        .map(|j| Summand {
            module: parts[j].clone(),
            inclusion: sum.inclusions[j].clone(),
            projection: sum.projections[j].clone(),
        })
        .collect();
    let mut classes: Vec<(Representation, Vec<(usize, Morphism)>)> = Vec::new();
    for k in 0..c.len() {
        let members: Vec<(usize, Morphism)> = (0..parts.len())
            .filter(|&j| owner[j] == k)
            .map(|j| (j, Morphism::identity(&parts[j])))
            .collect();
        if !members.is_empty() {
            classes.push((c.objects()[k].clone(), members));
        }
    }
    let mv = right_minimal_from_classes(&universal, &SummandClasses { summands, classes })?;
    Ok(mv.reduced)
}

/// Left: members `X` of the universe with `Ext^i(X, C') = 0` for every
/// object and `1 ≤ i ≤ n`. Right: `Ext^i(C', X) = 0`.
pub fn perp(
    c: &SubcategorySet,
    n: usize,
    side: Side,
    universe: &SubcategorySet,
    cap: usize,
) -> Result<SubcategorySet, ApproxError> {
    let mut keep = Vec::new();
    match side {
        Side::Left => {
            for (name, x) in universe.iter() {
                let r = minimal_resolution(x, ResolutionKind::Projective, cap)?;
                if first_nonzero_ext(&r, c.objects(), n)?.is_none() {
                    keep.push((name.to_string(), x.clone()));
                }
            }
        }
        Side::Right => {
            let resolutions = c
                .objects()
                .iter()
                .map(|obj| minimal_resolution(obj, ResolutionKind::Projective, cap))
                .collect::<Result<Vec<_>, _>>()?;
            for (name, x) in universe.iter() {
                let mut orthogonal = true;
                'outer: for r in &resolutions {
                    for i in 1..=n {
                        if ext_dim_from(r, x, i)? != 0 {
                            orthogonal = false;
                            break 'outer;
                        }
                    }
                }
                if orthogonal {
                    keep.push((name.to_string(), x.clone()));
                }
            }
        }
    }
    Ok(SubcategorySet::new_unchecked(universe.algebra(), keep))
}

/// First `(object index, degree, dim)` with `Ext^degree(M, object) ≠ 0`.
fn first_nonzero_ext(
    r: &Resolution,
    objects: &[Representation],
    n: usize,
) -> Result<Option<(usize, usize, usize)>, HomologyError> {
    for (k, obj) in objects.iter().enumerate() {
        for i in 1..=n {
            let d = ext_dim_from(r, obj, i)?;
            if d != 0 {
                return Ok(Some((k, i, d)));
            }
        }
    }
    Ok(None)
}

/// Why a candidate fails to be maximal n-orthogonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// `Ext^degree(source, target) ≠ 0` with both in C: `module` is in C but
    /// not in the `side` perpendicular category.
    SelfExtension {
        side: Side,
        module: String,
        source: String,
        target: String,
        degree: usize,
        dim: usize,
    },
    /// `module` lies in the `side` perpendicular category but not in C.
    Outside { side: Side, module: String },
}

impl Witness {
    pub fn module(&self) -> &str {
        match self {
            Witness::SelfExtension { module, .. } | Witness::Outside { module, .. } => module,
        }
    }

    pub fn side(&self) -> Side {
        match self {
            Witness::SelfExtension { side, .. } | Witness::Outside { side, .. } => *side,
        }
    }
}

fn perp_symbol(side: Side, n: usize) -> String {
    match side {
        Side::Left => format!("⊥{n}C"),
        Side::Right => format!("C⊥{n}"),
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::SelfExtension {
                side,
                module,
                source,
                target,
                degree,
                dim,
            } => write!(
                f,
                "Ext^{degree}({source}, {target}) = {dim} ≠ 0, so {module} ∈ C is not in {}",
                perp_symbol(*side, *degree)
            ),
            Witness::Outside { side, module } => {
                write!(f, "{module} ∈ {} but {module} ∉ C", perp_symbol(*side, 1))
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct MaximalityVerdict {
    pub maximal: bool,
    pub witness: Option<Witness>,
    /// Copied from the universe: the verdict is conditional when false.
    pub complete: bool,
}

/// Tests `C = ⊥n C = C⊥n` over the universe, right side first. On failure
/// the witness names a module, a direction and, where relevant, the
/// offending Ext group.
pub fn is_maximal_orthogonal(
    c: &SubcategorySet,
    n: usize,
    universe: &SubcategorySet,
    complete: bool,
    cap: usize,
    seed: u64,
) -> Result<MaximalityVerdict, ApproxError> {
    let resolutions = c
        .objects()
        .iter()
        .map(|obj| minimal_resolution(obj, ResolutionKind::Projective, cap))
        .collect::<Result<Vec<_>, _>>()?;
    let fail = |w: Witness| MaximalityVerdict {
        maximal: false,
        witness: Some(w),
        complete,
    };
    // C ⊆ C⊥n
    for (b, target) in c.iter() {
        for (a, r) in resolutions.iter().enumerate() {
            for i in 1..=n {
                let d = ext_dim_from(r, target, i)?;
                if d != 0 {
                    return Ok(fail(Witness::SelfExtension {
                        side: Side::Right,
                        module: b.to_string(),
                        source: c.names()[a].clone(),
                        target: b.to_string(),
                        degree: i,
                        dim: d,
                    }));
                }
            }
        }
    }
    let right = perp(c, n, Side::Right, universe, cap)?;
    if let Some((name, _)) = right.iter().find(|(_, x)| c.position(x, seed).is_none()) {
        return Ok(fail(Witness::Outside {
            side: Side::Right,
            module: name.to_string(),
        }));
    }
    // C ⊆ ⊥n C
    for (a, r) in resolutions.iter().enumerate() {
        if let Some((b, i, d)) = first_nonzero_ext(r, c.objects(), n)? {
            return Ok(fail(Witness::SelfExtension {
                side: Side::Left,
                module: c.names()[a].clone(),
                source: c.names()[a].clone(),
                target: c.names()[b].clone(),
                degree: i,
                dim: d,
            }));
        }
    }
    let left = perp(c, n, Side::Left, universe, cap)?;
    if let Some((name, _)) = left.iter().find(|(_, x)| c.position(x, seed).is_none()) {
        return Ok(fail(Witness::Outside {
            side: Side::Left,
            module: name.to_string(),
        }));
    }
    // every object of C must occur in the universe for the equalities to hold
    if let Some((name, _)) = c.iter().find(|(_, x)| universe.position(x, seed).is_none()) {
        return Ok(fail(Witness::Outside {
            side: Side::Right,
            module: name.to_string(),
        }));
    }
    Ok(MaximalityVerdict {
        maximal: true,
        witness: None,
        complete,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{a2, cyclic2, line_with_full_relation};
    use crate::rep::{is_isomorphic, is_minimal, morphism_parts, StandardKind::*};

    fn m(a: &Arc<BoundAlgebra>, kind: StandardKind, label: usize) -> Representation {
        standard_module(a, kind, label - 1).unwrap()
    }

    fn named(a: &Arc<BoundAlgebra>, list: &[(&str, StandardKind, usize)]) -> SubcategorySet {
        let v = list.iter().map(|(n, k, l)| (n.to_string(), m(a, *k, *l))).collect();
        SubcategorySet::new(a, v, 0).unwrap()
    }

    #[test]
    fn trivial_candidates() {
        let a = Arc::new(a2(101));
        assert_eq!(trivial_candidate(&a).names(), ["P1", "P2", "I2"]);
        let e = Arc::new(line_with_full_relation(4, 101));
        assert_eq!(trivial_candidate(&e).names(), ["P1", "P2", "P3", "P4", "I3", "I4"]);
        let c = Arc::new(cyclic2(101));
        assert_eq!(trivial_candidate(&c).names(), ["P1", "P2"]);
    }

    #[test]
    fn rejects_bad_sets() {
        let a = Arc::new(a2(101));
        let s1 = m(&a, Simple, 1);
        let dup = vec![("S1".to_string(), s1.clone()), ("P1".to_string(), m(&a, Projective, 1))];
        assert!(matches!(SubcategorySet::new(&a, dup, 0), Err(ApproxError::Duplicate(..))));
        let sum = crate::rep::direct_sum(&[s1.clone(), s1]).unwrap();
        assert!(matches!(
            SubcategorySet::new(&a, vec![("X".into(), sum)], 0),
            Err(ApproxError::Decomposable(_))
        ));
    }

    #[test]
    fn approximation_examples() {
        let e = Arc::new(line_with_full_relation(4, 101));
        let c = trivial_candidate(&e);
        let p2 = m(&e, Projective, 2);
        let id = Morphism::identity(&p2);
        assert!(is_approximation(&id, &c, Side::Left, 0).unwrap());
        assert!(is_approximation(&id, &c, Side::Right, 0).unwrap());

        let s2 = m(&e, Simple, 2);
        let right = minimal_approximation(&c, &s2, Side::Right).unwrap();
        assert!(is_isomorphic(right.source(), &p2, 0));
        assert!(is_approximation(&right, &c, Side::Right, 0).unwrap());
        assert!(is_minimal(&right, Side::Right, 0).unwrap());
        assert!(is_isomorphic(&morphism_parts(&right).kernel, &m(&e, Projective, 1), 0));

        let left = minimal_approximation(&c, &s2, Side::Left).unwrap();
        assert!(is_isomorphic(left.target(), &m(&e, Injective, 2), 0));
        assert!(is_approximation(&left, &c, Side::Left, 0).unwrap());
        assert!(is_isomorphic(&morphism_parts(&left).cokernel, &m(&e, Injective, 3), 0));

        let s3 = m(&e, Simple, 3);
        let bad = Morphism::identity(&s3);
        assert!(matches!(is_approximation(&bad, &c, Side::Right, 0), Err(ApproxError::NotInAdd(_))));
    }

    #[test]
    fn perp_examples() {
        let a = Arc::new(a2(101));
        let universe = named(&a, &[("S1", Simple, 1), ("P2", Projective, 2), ("S2", Simple, 2)]);
        let empty = SubcategorySet::empty(&a);
        assert!(perp(&empty, 1, Side::Left, &universe, 6).unwrap().same_classes(&universe, 0));
        let left = perp(&trivial_candidate(&a), 1, Side::Left, &universe, 6).unwrap();
        assert_eq!(left.names(), ["S1", "P2"]);
    }

    #[test]
    fn maximality_examples() {
        let a = Arc::new(a2(101));
        let universe = named(&a, &[("S1", Simple, 1), ("P2", Projective, 2), ("S2", Simple, 2)]);
        let v = is_maximal_orthogonal(&trivial_candidate(&a), 1, &universe, true, 6, 0).unwrap();
        assert!(!v.maximal);
        match v.witness.unwrap() {
            Witness::SelfExtension { source, target, degree, dim, .. } => {
                assert_eq!((source.as_str(), target.as_str(), degree, dim), ("I2", "P1", 1, 1));
            }
            other => panic!("unexpected witness {other}"),
        }

        let c = Arc::new(cyclic2(101));
        let universe = named(
            &c,
            &[("P1", Projective, 1), ("P2", Projective, 2), ("S1", Simple, 1), ("S2", Simple, 2)],
        );
        let v = is_maximal_orthogonal(&trivial_candidate(&c), 1, &universe, true, 6, 0).unwrap();
        assert_eq!(
            v.witness,
            Some(Witness::Outside {
                side: Side::Right,
                module: "S1".into()
            })
        );
    }
}
