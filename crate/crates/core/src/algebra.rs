//! Quivers, paths, monomial ideals and the algebras they present.
//!
//! Paths are words of arrows read in composition order: the rightmost arrow
//! is applied first, so `a1 a2` with `a2: 3 → 2` and `a1: 2 → 1` is a path
//! from 3 to 1.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::Deserialize;
use thiserror::Error;

use crate::linalg::Fp;

pub const DEFAULT_FIELD: u64 = 101;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(u32),
    #[error("duplicate arrow {0}")]
    DuplicateArrow(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(u32),
    #[error("unknown arrow {0}")]
    UnknownArrow(String),
    #[error("relation {0} is not a composable path")]
    NotComposable(String),
    #[error("ideal not admissible: {0}")]
    NotAdmissible(String),
    #[error("field characteristic {0} is not a supported prime")]
    NotPrime(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver. Vertices are labelled by positive integers and
/// addressed internally by their position in `vertices`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<u32>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// `arrows` are `(name, source label, target label)`.
    pub fn new(vertices: Vec<u32>, arrows: Vec<(String, u32, u32)>) -> Result<Self, AlgebraError> {
        let mut index = HashMap::new();
        for (i, &v) in vertices.iter().enumerate() {
            if index.insert(v, i).is_some() {
                return Err(AlgebraError::DuplicateVertex(v));
            }
        }
        let mut seen = HashMap::new();
        let mut out = Vec::with_capacity(arrows.len());
        for (name, s, t) in arrows {
            if seen.insert(name.clone(), ()).is_some() {
                return Err(AlgebraError::DuplicateArrow(name));
            }
            let source = *index.get(&s).ok_or(AlgebraError::UnknownVertex(s))?;
            let target = *index.get(&t).ok_or(AlgebraError::UnknownVertex(t))?;
            out.push(Arrow { name, source, target });
        }
        Ok(Quiver {
            vertices,
            arrows: out,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_labels(&self) -> &[u32] {
        &self.vertices
    }

    pub fn label(&self, v: usize) -> u32 {
        self.vertices[v]
    }

    pub fn vertex_index(&self, label: u32) -> Option<usize> {
        self.vertices.iter().position(|&v| v == label)
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Vertex indices ordered so that every arrow goes from an earlier to a
    /// later vertex, or `None` when there is an oriented cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.vertex_count();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        ready.reverse();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop() {
            order.push(v);
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    ready.push(a.target);
                }
            }
        }
        (order.len() == n).then_some(order)
    }
}

/// A path in composition order. `arrows[0]` is applied last.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub arrows: Vec<usize>,
    pub source: usize,
    pub target: usize,
}

impl Path {
    pub fn stationary(v: usize) -> Self {
        Path {
            arrows: Vec::new(),
            source: v,
            target: v,
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Builds a path from a word, checking composability.
    pub fn from_word(quiver: &Quiver, word: Vec<usize>) -> Option<Path> {
        let first = *word.first()?;
        let last = *word.last()?;
        for w in word.windows(2) {
            if quiver.arrow(w[0]).source != quiver.arrow(w[1]).target {
                return None;
            }
        }
        Some(Path {
            source: quiver.arrow(last).source,
            target: quiver.arrow(first).target,
            arrows: word,
        })
    }

    pub fn display(&self, quiver: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e{}", quiver.label(self.source))
        } else {
            self.arrows
                .iter()
                .map(|&a| quiver.arrow(a).name.as_str())
                .collect::<Vec<_>>()
                .join("")
        }
    }

    fn contains_word(&self, word: &[usize]) -> bool {
        word.len() <= self.arrows.len() && self.arrows.windows(word.len()).any(|w| w == word)
    }
}

/// Forbidden paths generating a monomial ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    forbidden: Vec<Path>,
}

impl MonomialIdeal {
    pub fn forbidden(&self) -> &[Path] {
        &self.forbidden
    }

    pub fn kills(&self, path: &Path) -> bool {
        self.forbidden.iter().any(|w| path.contains_word(&w.arrows))
    }
}

/// A bound quiver algebra `kQ/I` with `I` monomial and admissible.
#[derive(Clone, Debug)]
pub struct BoundAlgebra {
    quiver: Quiver,
    ideal: MonomialIdeal,
    field: Fp,
    basis: Vec<Path>,
    // basis indices grouped by (source, target)
    by_ends: HashMap<(usize, usize), Vec<usize>>,
}

impl PartialEq for BoundAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.quiver == other.quiver && self.ideal == other.ideal
    }
}

impl Eq for BoundAlgebra {}

impl BoundAlgebra {
    /// Relations are arrow-name words in composition order.
    pub fn new(quiver: Quiver, relations: Vec<Vec<String>>, p: u64) -> Result<Self, AlgebraError> {
        let field = Fp::new(p).ok_or(AlgebraError::NotPrime(p))?;
        let mut forbidden = Vec::new();
        for rel in relations {
            let mut word = Vec::with_capacity(rel.len());
            for name in &rel {
                word.push(
                    quiver
                        .arrow_index(name)
                        .ok_or_else(|| AlgebraError::UnknownArrow(name.clone()))?,
                );
            }
            if word.len() < 2 {
                return Err(AlgebraError::NotAdmissible(format!(
                    "relation [{}] has length {} < 2",
                    rel.join(" "),
                    word.len()
                )));
            }
            let path = Path::from_word(&quiver, word)
                .ok_or_else(|| AlgebraError::NotComposable(rel.join(" ")))?;
            if !forbidden.contains(&path) {
                forbidden.push(path);
            }
        }
        let ideal = MonomialIdeal { forbidden };
        let basis = enumerate_paths(&quiver, &ideal)?;
        let mut by_ends: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (i, path) in basis.iter().enumerate() {
            by_ends.entry((path.source, path.target)).or_default().push(i);
        }
        Ok(BoundAlgebra {
            quiver,
            ideal,
            field,
            basis,
            by_ends,
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn arrow_count(&self) -> usize {
        self.quiver.arrows().len()
    }

    /// Surviving paths ordered by length, then lexicographically by arrow
    /// names (stationary paths by vertex order).
    pub fn path_basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Surviving paths from `source` to `target`, in basis order.
    pub fn paths_between(&self, source: usize, target: usize) -> impl Iterator<Item = &Path> {
        self.by_ends
            .get(&(source, target))
            .into_iter()
            .flatten()
            .map(move |&i| &self.basis[i])
    }

    /// Position of a surviving path among the surviving paths with the same
    /// endpoints, `None` if the path is zero in the algebra.
    pub fn local_index(&self, path: &Path) -> Option<usize> {
        self.by_ends
            .get(&(path.source, path.target))?
            .iter()
            .position(|&i| self.basis[i].arrows == path.arrows)
    }

    /// Arrows reversed, relation words reversed.
    pub fn opposite(&self) -> BoundAlgebra {
        let q = &self.quiver;
        let arrows = q
            .arrows()
            .iter()
            .map(|a| (a.name.clone(), q.label(a.target), q.label(a.source)))
            .collect();
        let quiver = Quiver::new(q.vertex_labels().to_vec(), arrows)
            .expect("opposite of a valid quiver is valid");
        let relations = self
            .ideal
            .forbidden
            .iter()
            .map(|w| {
                w.arrows
                    .iter()
                    .rev()
                    .map(|&a| q.arrow(a).name.clone())
                    .collect()
            })
            .collect();
        BoundAlgebra::new(quiver, relations, self.field.characteristic())
            .expect("opposite of an admissible algebra is admissible")
    }

    /// Every vertex has in- and out-degree at most one and the underlying
    /// graph is connected: a linearly oriented line or an oriented cycle.
    pub fn is_nakayama(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return false;
        }
        let mut indeg = vec![0; n];
        let mut outdeg = vec![0; n];
        for a in self.quiver.arrows() {
            indeg[a.target] += 1;
            outdeg[a.source] += 1;
        }
        if indeg.iter().chain(&outdeg).any(|&d| d > 1) {
            return false;
        }
        // connectivity of the underlying graph
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for a in self.quiver.arrows() {
                for (x, y) in [(a.source, a.target), (a.target, a.source)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Entry `(v, w)` counts surviving paths from `w` to `v`; column `w` is
    /// the dimension vector of the indecomposable projective at `w`.
    pub fn cartan_matrix(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut c = vec![vec![0; n]; n];
        for p in &self.basis {
            c[p.target][p.source] += 1;
        }
        c
    }

    pub fn vertex_label(&self, v: usize) -> u32 {
        self.quiver.label(v)
    }

    pub fn summary(&self) -> String {
        format!(
            "{} vertices, {} arrows, {} relations, dim {} over F_{}",
            self.vertex_count(),
            self.arrow_count(),
            self.ideal.forbidden.len(),
            self.dimension(),
            self.field.characteristic()
        )
    }
}

impl fmt::Display for BoundAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.summary())
    }
}

fn compare_paths(q: &Quiver, a: &Path, b: &Path) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| {
        if a.is_empty() {
            a.source.cmp(&b.source)
        } else {
            let names = |p: &Path| -> Vec<&str> {
                p.arrows.iter().map(|&i| q.arrow(i).name.as_str()).collect()
            };
            names(a).cmp(&names(b))
        }
    })
}

/// Surviving paths by breadth-first extension, failing once some surviving
/// path is longer than `|arrows| * (1 + longest relation)`.
fn enumerate_paths(q: &Quiver, ideal: &MonomialIdeal) -> Result<Vec<Path>, AlgebraError> {
    let longest = ideal.forbidden.iter().map(Path::len).max().unwrap_or(0);
    let bound = q.arrows().len() * (1 + longest);
    let mut all: Vec<Path> = (0..q.vertex_count()).map(Path::stationary).collect();
    let mut frontier: Vec<Path> = (0..q.arrows().len())
        .map(|a| Path::from_word(q, vec![a]).unwrap())
        .collect();
    let mut length = 1;
    while !frontier.is_empty() {
        if length > bound {
            return Err(AlgebraError::NotAdmissible(format!(
                "surviving path of length {length} exceeds bound {bound}"
            )));
        }
        frontier.sort_by(|a, b| compare_paths(q, a, b));
        let mut next = Vec::new();
        for path in &frontier {
            for (b, arrow) in q.arrows().iter().enumerate() {
                if arrow.source != path.target {
                    continue;
                }
                let mut word = Vec::with_capacity(path.len() + 1);
                word.push(b);
                word.extend_from_slice(&path.arrows);
                let candidate = Path {
                    arrows: word,
                    source: path.source,
                    target: arrow.target,
                };
                // only forbidden words starting at the new arrow can be new
                let killed = ideal.forbidden.iter().any(|w| {
                    w.len() <= candidate.len() && candidate.arrows[..w.len()] == w.arrows[..]
                });
                if !killed {
                    next.push(candidate);
                }
            }
        }
        all.append(&mut frontier);
        frontier = next;
        length += 1;
    }
    all.sort_by(|a, b| compare_paths(q, a, b));
    Ok(all)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecFile {
    algebra: AlgebraTable,
    #[serde(default)]
    arrow: Vec<ArrowEntry>,
    #[serde(default)]
    relations: Vec<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraTable {
    #[serde(default = "default_field")]
    field: u64,
    vertices: Vec<u32>,
    #[serde(default)]
    relations: Vec<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrowEntry {
    name: String,
    source: u32,
    target: u32,
}

fn default_field() -> u64 {
    DEFAULT_FIELD
}

/// Parses the TOML algebra description:
///
/// ```toml
/// [algebra]
/// field = 101
/// vertices = [1, 2, 3]
/// relations = [["a1", "a2"]]
///
/// [[arrow]]
/// name = "a1"
/// source = 2
/// target = 1
/// ```
///
/// `relations` may also appear at top level, before any table.
pub fn parse_algebra(text: &str) -> Result<BoundAlgebra, AlgebraError> {
    let spec: SpecFile = toml::from_str(text).map_err(|e| AlgebraError::Syntax(e.to_string()))?;
    let arrows = spec
        .arrow
        .into_iter()
        .map(|a| (a.name, a.source, a.target))
        .collect();
    let quiver = Quiver::new(spec.algebra.vertices, arrows)?;
    let mut relations = spec.algebra.relations;
    relations.extend(spec.relations);
    BoundAlgebra::new(quiver, relations, spec.algebra.field)
}

/// Renders an algebra back into the TOML format read by [`parse_algebra`].
pub fn to_spec_text(a: &BoundAlgebra) -> String {
    let q = a.quiver();
    let mut s = String::from("[algebra]\n");
    s += &format!("field = {}\n", a.field().characteristic());
    s += &format!(
        "vertices = [{}]\n",
        q.vertex_labels()
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    );
    let rels: Vec<String> = a
        .ideal()
        .forbidden()
        .iter()
        .map(|w| {
            let names: Vec<String> = w
                .arrows
                .iter()
                .map(|&i| format!("\"{}\"", q.arrow(i).name))
                .collect();
            format!("[{}]", names.join(", "))
        })
        .collect();
    s += &format!("relations = [{}]\n", rels.join(", "));
    for arrow in q.arrows() {
        s += &format!(
            "\n[[arrow]]\nname = \"{}\"\nsource = {}\ntarget = {}\n",
            arrow.name,
            q.label(arrow.source),
            q.label(arrow.target)
        );
    }
    s
}

/// Linear quiver `1 ← 2 ← … ← n` with arrows `a_i : i+1 → i`, bound by the
/// single relation `a_1 a_2 ⋯ a_{n-1}`; `n ≥ 3`.
pub fn line_with_full_relation(n: u32, p: u64) -> BoundAlgebra {
    assert!(n >= 3);
    let arrows = (1..n).map(|i| (format!("a{i}"), i + 1, i)).collect();
    let quiver = Quiver::new((1..=n).collect(), arrows).unwrap();
    let rel = (1..n).map(|i| format!("a{i}")).collect();
    BoundAlgebra::new(quiver, vec![rel], p).unwrap()
}

/// `1 ← 2` with no relations.
pub fn a2(p: u64) -> BoundAlgebra {
    let quiver = Quiver::new(vec![1, 2], vec![("a1".into(), 2, 1)]).unwrap();
    BoundAlgebra::new(quiver, vec![], p).unwrap()
}

/// Oriented 2-cycle `1 → 2 → 1` with radical square zero.
pub fn cyclic2(p: u64) -> BoundAlgebra {
    let quiver = Quiver::new(vec![1, 2], vec![("a".into(), 1, 2), ("b".into(), 2, 1)]).unwrap();
    let rels = vec![
        vec!["a".to_string(), "b".to_string()],
        vec!["b".to_string(), "a".to_string()],
    ];
    BoundAlgebra::new(quiver, rels, p).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    const E39_4: &str = r#"
[algebra]
field = 101
vertices = [1, 2, 3, 4]
relations = [["a1", "a2", "a3"]]

[[arrow]]
name = "a1"
source = 2
target = 1

[[arrow]]
name = "a2"
source = 3
target = 2

[[arrow]]
name = "a3"
source = 4
target = 3
"#;

    fn names(a: &BoundAlgebra) -> Vec<String> {
        a.path_basis().iter().map(|p| p.display(a.quiver())).collect()
    }

    #[test]
    fn parses_example_spec() {
        let a = parse_algebra(E39_4).unwrap();
        assert_eq!(a.vertex_count(), 4);
        assert_eq!(a.arrow_count(), 3);
        assert_eq!(a.ideal().forbidden().len(), 1);
        assert_eq!(a, line_with_full_relation(4, 101));
        assert_eq!(parse_algebra(&to_spec_text(&a)).unwrap(), a);
    }

    #[test]
    fn path_basis_examples() {
        assert_eq!(names(&a2(101)), ["e1", "e2", "a1"]);
        assert_eq!(
            names(&line_with_full_relation(4, 101)),
            ["e1", "e2", "e3", "e4", "a1", "a2", "a3", "a1a2", "a2a3"]
        );
        assert_eq!(names(&cyclic2(101)), ["e1", "e2", "a", "b"]);
        assert_eq!(cyclic2(101).dimension(), 4);
    }

    #[test]
    fn rejects_bad_specs() {
        let short = E39_4.replace(r#"[["a1", "a2", "a3"]]"#, r#"[["a1"]]"#);
        assert!(matches!(parse_algebra(&short), Err(AlgebraError::NotAdmissible(_))));
        let noncomp = E39_4.replace(r#"[["a1", "a2", "a3"]]"#, r#"[["a2", "a1"]]"#);
        assert!(matches!(parse_algebra(&noncomp), Err(AlgebraError::NotComposable(_))));
        let unknown = E39_4.replace(r#"[["a1", "a2", "a3"]]"#, r#"[["a1", "zz"]]"#);
        assert!(matches!(parse_algebra(&unknown), Err(AlgebraError::UnknownArrow(_))));
        let nonprime = E39_4.replace("field = 101", "field = 100");
        assert_eq!(parse_algebra(&nonprime), Err(AlgebraError::NotPrime(100)));
        let badvertex = E39_4.replace("source = 4", "source = 9");
        assert_eq!(parse_algebra(&badvertex), Err(AlgebraError::UnknownVertex(9)));
        assert!(matches!(parse_algebra("[algebra"), Err(AlgebraError::Syntax(_))));
    }

    #[test]
    fn cycle_without_relations_is_not_admissible() {
        let q = Quiver::new(vec![1, 2], vec![("a".into(), 1, 2), ("b".into(), 2, 1)]).unwrap();
        assert!(matches!(
            BoundAlgebra::new(q.clone(), vec![], 101),
            Err(AlgebraError::NotAdmissible(_))
        ));
        // killing ab alone already bounds every path: aba and bab both contain it
        let rels = vec![vec!["a".to_string(), "b".to_string()]];
        assert_eq!(BoundAlgebra::new(q, rels, 101).unwrap().dimension(), 5);
    }

    #[test]
    fn opposite_examples() {
        let a = a2(101);
        let op = a.opposite();
        let arrow = &op.quiver().arrows()[0];
        assert_eq!((op.vertex_label(arrow.source), op.vertex_label(arrow.target)), (1, 2));
        let e = line_with_full_relation(4, 101);
        let eop = e.opposite();
        let rel = &eop.ideal().forbidden()[0];
        assert_eq!(rel.display(eop.quiver()), "a3a2a1");
        assert_eq!(eop.opposite(), e);
        assert_eq!(eop.dimension(), e.dimension());
    }

    #[test]
    fn nakayama_detection() {
        assert!(line_with_full_relation(5, 101).is_nakayama());
        assert!(cyclic2(101).is_nakayama());
        let doubled =
            Quiver::new(vec![1, 2], vec![("a".into(), 2, 1), ("b".into(), 2, 1)]).unwrap();
        assert!(!BoundAlgebra::new(doubled, vec![], 101).unwrap().is_nakayama());
    }

    #[test]
    fn cartan_examples() {
        assert_eq!(a2(101).cartan_matrix(), vec![vec![1, 1], vec![0, 1]]);
        let c = line_with_full_relation(4, 101).cartan_matrix();
        let col = |w: usize| (0..4).map(|v| c[v][w]).collect::<Vec<_>>();
        assert_eq!(col(0), [1, 0, 0, 0]);
        assert_eq!(col(1), [1, 1, 0, 0]);
        assert_eq!(col(2), [1, 1, 1, 0]);
        assert_eq!(col(3), [0, 1, 1, 1]);
        assert_eq!(cyclic2(101).cartan_matrix(), vec![vec![1, 1], vec![1, 1]]);
    }

    #[test]
    fn basis_size_is_cartan_sum() {
        for a in [a2(101), cyclic2(101), line_with_full_relation(7, 101)] {
            let total: usize = a.cartan_matrix().iter().flatten().sum();
            assert_eq!(total, a.dimension());
        }
    }
}
