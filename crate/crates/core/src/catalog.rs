//! Indecomposables of Nakayama algebras, the reachability relation and
//! module naming.
//!
//! Over a Nakayama algebra every indecomposable is `P(v)/rad^k P(v)`; the
//! canonical name of that module is `M<socle>:<top>`, with a `#<length>`
//! suffix only when two objects share socle and top (long cyclic
//! relations).

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::BoundAlgebra;
use crate::approx::SubcategorySet;
use crate::homology::{injective_dimension, Dimension, HomologyError};
use crate::rep::{
    decompose, find_isomorphism, hom_basis_unchecked, standard_module, RepError, Representation, StandardKind,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error("the indecomposable list is incomplete for a non-Nakayama algebra")]
    Incomplete,
    #[error("bad module name {0:?}: {1}")]
    BadName(String, String),
}

#[derive(Clone, Debug)]
pub struct UniverseObject {
    pub name: String,
    pub module: Representation,
    pub socle: usize,
    pub top: usize,
    pub length: usize,
    /// Standard names (`P2`, `I1`, `S3`) of modules isomorphic to this one.
    pub aliases: Vec<String>,
}

impl UniverseObject {
    pub fn is_projective(&self) -> bool {
        self.aliases.iter().any(|a| a.starts_with('P'))
    }

    pub fn is_injective(&self) -> bool {
        self.aliases.iter().any(|a| a.starts_with('I'))
    }

    /// `M1:2 (P2)` style label.
    pub fn label(&self) -> String {
        if self.aliases.is_empty() {
            self.name.clone()
        } else {
            format!("{} ({})", self.name, self.aliases.join("="))
        }
    }
}

#[derive(Clone, Debug)]
pub struct Universe {
    pub algebra: Arc<BoundAlgebra>,
    pub objects: Vec<UniverseObject>,
    pub complete: bool,
}

impl Universe {
    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn modules(&self) -> impl Iterator<Item = &Representation> {
        self.objects.iter().map(|o| &o.module)
    }

    pub fn as_set(&self) -> SubcategorySet {
        SubcategorySet::new_unchecked(
            &self.algebra,
            self.objects.iter().map(|o| (o.name.clone(), o.module.clone())).collect(),
        )
    }

    pub fn position(&self, x: &Representation, seed: u64) -> Option<usize> {
        self.objects
            .iter()
            .position(|o| find_isomorphism(&o.module, x, seed).is_some())
    }

    /// Lookup by canonical name or alias.
    pub fn find(&self, name: &str) -> Option<&UniverseObject> {
        self.objects
            .iter()
            .find(|o| o.name == name || o.aliases.iter().any(|a| a == name))
    }
}

/// End of the surviving path of length `k - 1` out of `v`, or `None` once
/// every such path is zero in the algebra.
fn uniserial_socle(algebra: &BoundAlgebra, v: usize, k: usize) -> Option<usize> {
    let n = algebra.vertex_count();
    (0..n).find(|&w| algebra.paths_between(v, w).any(|p| p.len() == k - 1))
}

/// `P(v) / rad^k P(v)`.
pub fn uniserial_quotient(algebra: &Arc<BoundAlgebra>, v: usize, k: usize) -> Representation {
    let p = standard_module(algebra, StandardKind::Projective, v).expect("vertex in range");
    let f = algebra.field();
    let bases: Vec<crate::linalg::Matrix> = (0..algebra.vertex_count())
        .map(|w| {
            let long: Vec<Vec<u64>> = algebra
                .paths_between(v, w)
                .enumerate()
                .filter(|(_, q)| q.len() >= k)
                .map(|(j, _)| {
                    let mut e = vec![0; p.dim_at(w)];
                    e[j] = 1;
                    e
                })
                .collect();
            crate::linalg::Matrix::from_columns(f, p.dim_at(w), &long)
        })
        .collect();
    p.quotient(&bases).0
}

fn loewy_length(algebra: &BoundAlgebra, v: usize) -> usize {
    algebra
        .path_basis()
        .iter()
        .filter(|q| q.source == v)
        .map(|q| q.len() + 1)
        .max()
        .unwrap_or(1)
}

fn standard_aliases(algebra: &Arc<BoundAlgebra>, x: &Representation) -> Vec<String> {
    let mut out = Vec::new();
    for (kind, letter) in [
        (StandardKind::Projective, "P"),
        (StandardKind::Injective, "I"),
        (StandardKind::Simple, "S"),
    ] {
        for v in 0..algebra.vertex_count() {
            let s = standard_module(algebra, kind, v).expect("vertex in range");
            if find_isomorphism(&s, x, 0).is_some() {
                out.push(format!("{letter}{}", algebra.vertex_label(v)));
            }
        }
    }
    out
}

/// Every indecomposable, ordered by socle vertex then length. Non-Nakayama
/// algebras get an empty, incomplete universe.
pub fn enumerate_indecomposables(algebra: &Arc<BoundAlgebra>) -> Universe {
    if !algebra.is_nakayama() {
        return Universe {
            algebra: algebra.clone(),
            objects: Vec::new(),
            complete: false,
        };
    }
    let mut raw = Vec::new();
    for v in 0..algebra.vertex_count() {
        for k in 1..=loewy_length(algebra, v) {
            let socle = uniserial_socle(algebra, v, k).expect("path of length below the Loewy length");
            raw.push((socle, k, v));
        }
    }
    raw.sort();
    let label = |v: usize| algebra.vertex_label(v);
    let objects = raw
        .iter()
        .map(|&(socle, length, top)| {
            let clash = raw.iter().filter(|r| r.0 == socle && r.2 == top).count() > 1;
            let mut name = format!("M{}:{}", label(socle), label(top));
            if clash {
                name.push_str(&format!("#{length}"));
            }
            let module = uniserial_quotient(algebra, top, length);
            let aliases = standard_aliases(algebra, &module);
            UniverseObject {
                name,
                module,
                socle,
                top,
                length,
                aliases,
            }
        })
        .collect();
    Universe {
        algebra: algebra.clone(),
        objects,
        complete: true,
    }
}

/// `table[x][y]` iff `Hom(X, Y) ≠ 0`.
pub fn hom_nonzero_table(u: &Universe) -> Vec<Vec<bool>> {
    let n = u.len();
    let mut t = vec![vec![false; n]; n];
    for (x, ox) in u.objects.iter().enumerate() {
        for (y, oy) in u.objects.iter().enumerate() {
            // supports must meet for a nonzero map
            let meets = ox.module.dims().iter().zip(oy.module.dims()).any(|(a, b)| *a > 0 && *b > 0);
            t[x][y] = meets && !hom_basis_unchecked(&ox.module, &oy.module).is_empty();
        }
    }
    t
}

/// Reflexive transitive closure of nonzero Hom.
pub fn reaches(u: &Universe) -> Result<Vec<Vec<bool>>, CatalogError> {
    if !u.complete {
        return Err(CatalogError::Incomplete);
    }
    Ok(closure(hom_nonzero_table(u)))
}

pub fn closure(mut r: Vec<Vec<bool>>) -> Vec<Vec<bool>> {
    let n = r.len();
    for (i, row) in r.iter_mut().enumerate() {
        row[i] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if i != k && r[i][k] {
                let via = r[k].clone();
                for (dst, src) in r[i].iter_mut().zip(via) {
                    *dst |= src;
                }
            }
        }
    }
    r
}

/// Indices of objects all of whose reachable objects have `id ≤ 1`. A
/// truncated injective dimension is a lower bound of at least 2, so it
/// counts as `id > 1`.
pub fn r_lambda_indices(reach: &[Vec<bool>], ids: &[Dimension]) -> Vec<usize> {
    let small = |d: Dimension| matches!(d, Dimension::Finite(0 | 1));
    (0..reach.len())
        .filter(|&x| (0..reach.len()).all(|y| !reach[x][y] || small(ids[y])))
        .collect()
}

pub fn r_lambda(u: &Universe, cap: usize) -> Result<SubcategorySet, CatalogError> {
    let reach = reaches(u)?;
    let ids = u
        .modules()
        .map(|m| injective_dimension(m, cap))
        .collect::<Result<Vec<_>, _>>()?;
    let keep = r_lambda_indices(&reach, &ids)
        .into_iter()
        .map(|i| (u.objects[i].name.clone(), u.objects[i].module.clone()))
        .collect();
    Ok(SubcategorySet::new_unchecked(&u.algebra, keep))
}

/// Parses `P<v>`, `I<v>`, `S<v>`, `M<i>:<j>` (optionally `#<length>`) or
/// `@file.json`.
pub fn parse_module_name(algebra: &Arc<BoundAlgebra>, name: &str) -> Result<Representation, CatalogError> {
    let bad = |why: &str| CatalogError::BadName(name.to_string(), why.to_string());
    let name = name.trim();
    if let Some(path) = name.strip_prefix('@') {
        let text = std::fs::read_to_string(path).map_err(|e| bad(&e.to_string()))?;
        return Ok(Representation::from_json(algebra, &text)?);
    }
    let vertex = |s: &str| -> Result<usize, CatalogError> {
        let label: u32 = s.parse().map_err(|_| bad("expected a vertex number"))?;
        algebra.quiver().vertex_index(label).ok_or_else(|| bad("unknown vertex"))
    };
    let (head, rest) = name.split_at(name.chars().next().map_or(0, char::len_utf8));
    match head {
        "P" => Ok(standard_module(algebra, StandardKind::Projective, vertex(rest)?)?),
        "I" => Ok(standard_module(algebra, StandardKind::Injective, vertex(rest)?)?),
        "S" => Ok(standard_module(algebra, StandardKind::Simple, vertex(rest)?)?),
        "M" => {
            if !algebra.is_nakayama() {
                return Err(bad("interval names need a Nakayama algebra"));
            }
            let (ends, length) = match rest.split_once('#') {
                Some((e, l)) => (e, Some(l.parse::<usize>().map_err(|_| bad("bad length"))?)),
                None => (rest, None),
            };
            let (i, j) = ends.split_once(':').ok_or_else(|| bad("expected M<socle>:<top>"))?;
            let (socle, top) = (vertex(i)?, vertex(j)?);
            let lengths: Vec<usize> = (1..=loewy_length(algebra, top))
                .filter(|&k| uniserial_socle(algebra, top, k) == Some(socle))
                .filter(|&k| length.is_none_or(|l| l == k))
                .collect();
            match lengths.as_slice() {
                [k] => Ok(uniserial_quotient(algebra, top, *k)),
                [] => Err(bad("no such uniserial module")),
                _ => Err(bad("ambiguous; add #<length>")),
            }
        }
        _ => Err(bad("expected P<v>, I<v>, S<v>, M<i>:<j> or @file.json")),
    }
}

/// A readable name: a standard name if one fits, else the interval name over
/// a Nakayama algebra, else the dimension vector; sums are joined with `⊕`.
pub fn name_module(x: &Representation, seed: u64) -> String {
    let algebra = x.algebra().clone();
    if x.is_zero() {
        return "0".into();
    }
    let name_one = |y: &Representation| -> String {
        if let Some(a) = standard_aliases(&algebra, y).into_iter().next() {
            return a;
        }
        if algebra.is_nakayama() {
            let top = y.top_dims();
            if let Some(v) = top.iter().position(|&d| d == 1) {
                if top.iter().sum::<usize>() == 1 {
                    let k = y.total_dim();
                    let candidate = uniserial_quotient(&algebra, v, k);
                    if find_isomorphism(&candidate, y, seed).is_some() {
                        let socle = uniserial_socle(&algebra, v, k).expect("nonzero quotient");
                        return format!("M{}:{}", algebra.vertex_label(socle), algebra.vertex_label(v));
                    }
                }
            }
        }
        format!("X{:?}", y.dims())
    };
    match decompose(x, seed) {
        Ok(parts) if parts.len() > 1 => parts.iter().map(name_one).collect::<Vec<_>>().join("⊕"),
        _ => name_one(x),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{a2, cyclic2, line_with_full_relation, Quiver};

    #[test]
    fn counts() {
        assert_eq!(enumerate_indecomposables(&Arc::new(a2(101))).len(), 3);
        for n in 4..=8u32 {
            let u = enumerate_indecomposables(&Arc::new(line_with_full_relation(n, 101)));
            assert_eq!(u.len() as u32, n * (n + 1) / 2 - 1);
            assert!(u.complete);
        }
        let c = enumerate_indecomposables(&Arc::new(cyclic2(101)));
        assert_eq!(c.len(), 4);
    }

    #[test]
    fn names_and_aliases() {
        let e = Arc::new(line_with_full_relation(4, 101));
        let u = enumerate_indecomposables(&e);
        let names: Vec<&str> = u.objects.iter().map(|o| o.name.as_str()).collect();
        assert_eq!(names, ["M1:1", "M1:2", "M1:3", "M2:2", "M2:3", "M2:4", "M3:3", "M3:4", "M4:4"]);
        assert_eq!(u.find("M1:3").unwrap().aliases, ["P3", "I1"]);
        assert_eq!(u.find("M2:4").unwrap().aliases, ["P4", "I2"]);
        assert!(u.find("I3").unwrap().is_injective());
        for o in &u.objects {
            let parsed = parse_module_name(&e, &o.name).unwrap();
            assert_eq!(parsed, o.module);
        }
        assert!(parse_module_name(&e, "M1:4").is_err());
        assert!(parse_module_name(&e, "Q1").is_err());
        assert!(parse_module_name(&e, "S9").is_err());
    }

    #[test]
    fn non_nakayama_is_refused() {
        let q = Quiver::new(vec![1, 2], vec![("a".into(), 2, 1), ("b".into(), 2, 1)]).unwrap();
        let a = Arc::new(BoundAlgebra::new(q, vec![], 101).unwrap());
        let u = enumerate_indecomposables(&a);
        assert!(!u.complete && u.is_empty());
        assert_eq!(reaches(&u).unwrap_err(), CatalogError::Incomplete);
    }

    #[test]
    fn reachability() {
        let e = Arc::new(line_with_full_relation(4, 101));
        let u = enumerate_indecomposables(&e);
        let r = reaches(&u).unwrap();
        let i3 = u.objects.iter().position(|o| o.name == "M3:4").unwrap();
        let reached: Vec<&str> = (0..u.len()).filter(|&y| r[i3][y]).map(|y| u.objects[y].name.as_str()).collect();
        assert_eq!(reached, ["M3:4", "M4:4"]);
        assert!((0..u.len()).all(|x| r[x][x]));

        let a = Arc::new(a2(101));
        let u = enumerate_indecomposables(&a);
        let r = reaches(&u).unwrap();
        let idx = |n: &str| u.objects.iter().position(|o| o.name == n).unwrap();
        // S1 → P2 → S2 but nothing leaves S2
        assert!(r[idx("M1:1")][idx("M2:2")]);
        assert!(!r[idx("M2:2")][idx("M1:1")]);
    }

    #[test]
    fn r_lambda_examples() {
        let e = Arc::new(line_with_full_relation(4, 101));
        let u = enumerate_indecomposables(&e);
        let r = r_lambda(&u, 10).unwrap();
        for name in ["M1:3", "M2:4", "M3:4", "M4:4"] {
            assert!(r.names().iter().any(|n| n == name), "{name}");
        }
        assert!(!r.names().iter().any(|n| n == "M1:1"));
    }

    #[test]
    fn naming() {
        let e = Arc::new(line_with_full_relation(4, 101));
        let m23 = parse_module_name(&e, "M2:3").unwrap();
        assert_eq!(name_module(&m23, 0), "M2:3");
        let s1 = parse_module_name(&e, "S1").unwrap();
        assert_eq!(name_module(&s1, 0), "P1");
        let sum = crate::rep::direct_sum(&[m23, s1]).unwrap();
        assert_eq!(name_module(&sum, 0), "P1⊕M2:3");
    }
}
