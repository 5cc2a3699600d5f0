//! Named checks of the structure results for algebras of global dimension
//! two with a trivial maximal 1-orthogonal subcategory, aggregated into a
//! JSON report.
//!
//! Check ids: `L2.1`, `L2.10`, `L2.11`, `L3.1`, `L3.2`, `L3.3`, `L3.4`,
//! `P3.5`, `L3.6`, `T3.7`, `L2.13H`. A check whose hypotheses fail is
//! `skipped` with the failing hypotheses listed; one whose quantified class
//! is empty is `vacuous`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::BoundAlgebra;
use crate::approx::{
    is_maximal_orthogonal, minimal_approximation, trivial_candidate, ApproxError, MaximalityVerdict,
    SubcategorySet, Witness,
};
use crate::catalog::{enumerate_indecomposables, name_module, r_lambda_indices, reaches, CatalogError, Universe};
use crate::homology::{
    ext_module, injective_dimension, max_dimension, minimal_resolution, projective_dimension, global_dimension,
    Dimension, HomologyError, Resolution, ResolutionKind,
};
use crate::rep::{
    decompose, hom_dim, is_injective, is_isomorphic, is_projective, morphism_parts, opposite_of, standard_module,
    RepError, Representation, Side, StandardKind,
};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Approx(#[from] ApproxError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("unknown check {0:?}")]
    UnknownCheck(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Vacuous,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Vacuous => "vacuous",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub status: Status,
    pub details: Value,
}

/// Report order.
pub const CHECK_IDS: [&str; 11] = [
    "L2.1", "L2.10", "L2.11", "L3.1", "L3.2", "L3.3", "L3.4", "P3.5", "L3.6", "T3.7", "L2.13H",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureFlags {
    pub gl_dim: Dimension,
    pub nakayama: bool,
    /// `I⁰(Λ)` is projective.
    pub gorenstein_1: bool,
    /// `gl.dim ≤ 2` and `I⁰(Λ)`, `I¹(Λ)` projective.
    pub auslander_algebra: bool,
    /// `None` when the answer needs an indecomposable list we do not have.
    pub almost_hereditary: Option<bool>,
    pub trivial_is_maximal_1_orthogonal: Option<bool>,
    pub pd_i0: Dimension,
    pub pd_i1: Dimension,
    /// `id Λ` as a left module.
    pub id_regular: Dimension,
    /// `id Λ^op`, computed as `pd DΛ^op`.
    pub id_regular_op: Dimension,
}

fn opt_json(b: Option<bool>) -> Value {
    b.map_or(Value::Null, Value::Bool)
}

impl StructureFlags {
    pub fn to_json(&self) -> Value {
        json!({
            "gl_dim": self.gl_dim.to_json(),
            "nakayama": self.nakayama,
            "gorenstein_1": self.gorenstein_1,
            "auslander_algebra": self.auslander_algebra,
            "almost_hereditary": opt_json(self.almost_hereditary),
            "trivial_is_maximal_1_orthogonal": opt_json(self.trivial_is_maximal_1_orthogonal),
            "pd_I0": self.pd_i0.to_json(),
            "pd_I1": self.pd_i1.to_json(),
            "id_regular": self.id_regular.to_json(),
            "id_regular_op": self.id_regular_op.to_json(),
        })
    }
}

/// Everything the checks share, computed once.
pub struct Context {
    pub algebra: Arc<BoundAlgebra>,
    pub cap: usize,
    pub seed: u64,
    pub simples: Vec<Representation>,
    pub projectives: Vec<Representation>,
    pub injectives: Vec<Representation>,
    pub pd_s: Vec<Dimension>,
    pub id_s: Vec<Dimension>,
    pub id_p: Vec<Dimension>,
    pub pd_i: Vec<Dimension>,
    /// `P(v)` is injective.
    pub proj_inj: Vec<bool>,
    /// `I(v)` is projective.
    pub inj_proj: Vec<bool>,
    /// Minimal injective resolutions of the `P(v)`; their sum resolves `Λ`.
    pub regular_injective: Vec<Resolution>,
    pub universe: Universe,
    pub pd_u: Vec<Dimension>,
    pub id_u: Vec<Dimension>,
    pub trivial: SubcategorySet,
    /// Present when decided: always over a complete universe, otherwise
    /// only when C already fails `C ⊆ C⊥1`.
    pub maximality: Option<MaximalityVerdict>,
    pub flags: StructureFlags,
}

fn standard_family(algebra: &Arc<BoundAlgebra>, kind: StandardKind) -> Result<Vec<Representation>, RepError> {
    (0..algebra.vertex_count())
        .map(|v| standard_module(algebra, kind, v))
        .collect()
}

fn dims_of(
    family: &[Representation],
    f: fn(&Representation, usize) -> Result<Dimension, HomologyError>,
    cap: usize,
) -> Result<Vec<Dimension>, HomologyError> {
    family.iter().map(|m| f(m, cap)).collect()
}

fn at_most(d: Dimension, k: usize) -> bool {
    d.finite().is_some_and(|x| x <= k)
}

impl Context {
    pub fn new(algebra: &Arc<BoundAlgebra>, cap: usize, seed: u64) -> Result<Self, VerifyError> {
        let simples = standard_family(algebra, StandardKind::Simple)?;
        let projectives = standard_family(algebra, StandardKind::Projective)?;
        let injectives = standard_family(algebra, StandardKind::Injective)?;
        let pd_s = dims_of(&simples, projective_dimension, cap)?;
        let id_s = dims_of(&simples, injective_dimension, cap)?;
        let pd_i = dims_of(&injectives, projective_dimension, cap)?;
        let regular_injective = projectives
            .iter()
            .map(|p| minimal_resolution(p, ResolutionKind::Injective, cap))
            .collect::<Result<Vec<_>, _>>()?;
        let id_p: Vec<Dimension> = regular_injective.iter().map(Resolution::length).collect();
        let proj_inj: Vec<bool> = projectives.iter().map(is_injective).collect();
        let inj_proj: Vec<bool> = injectives.iter().map(is_projective).collect();
        let gl_dim = global_dimension(algebra, cap)?;

        let universe = enumerate_indecomposables(algebra);
        let (pd_u, id_u) = if universe.complete {
            let mods: Vec<Representation> = universe.modules().cloned().collect();
            (
                dims_of(&mods, projective_dimension, cap)?,
                dims_of(&mods, injective_dimension, cap)?,
            )
        } else {
            (Vec::new(), Vec::new())
        };

        let trivial = trivial_candidate(algebra);
        let maximality = if universe.complete {
            Some(is_maximal_orthogonal(&trivial, 1, &universe.as_set(), true, cap, seed)?)
        } else {
            let v = is_maximal_orthogonal(&trivial, 1, &SubcategorySet::empty(algebra), false, cap, seed)?;
            matches!(v.witness, Some(Witness::SelfExtension { .. })).then_some(v)
        };

        let layer = |k: usize| -> BTreeSet<usize> {
            regular_injective
                .iter()
                .filter_map(|r| r.vertices.get(k))
                .flatten()
                .copied()
                .collect()
        };
        let (i0, i1) = (layer(0), layer(1));
        let gorenstein_1 = i0.iter().all(|&w| inj_proj[w]);
        let auslander_algebra = at_most(gl_dim, 2) && gorenstein_1 && i1.iter().all(|&w| inj_proj[w]);
        let almost_hereditary = if !at_most(gl_dim, 2) {
            Some(false)
        } else if universe.complete {
            Some(pd_u.iter().zip(&id_u).all(|(&p, &i)| at_most(p, 1) || at_most(i, 1)))
        } else {
            None
        };
        let flags = StructureFlags {
            gl_dim,
            nakayama: algebra.is_nakayama(),
            gorenstein_1,
            auslander_algebra,
            almost_hereditary,
            trivial_is_maximal_1_orthogonal: maximality.as_ref().map(|v| v.maximal),
            pd_i0: max_dimension(i0.iter().map(|&w| pd_i[w])),
            pd_i1: max_dimension(i1.iter().map(|&w| pd_i[w])),
            id_regular: max_dimension(id_p.iter().copied()),
            id_regular_op: max_dimension(pd_i.iter().copied()),
        };
        Ok(Context {
            algebra: algebra.clone(),
            cap,
            seed,
            simples,
            projectives,
            injectives,
            pd_s,
            id_s,
            id_p,
            pd_i,
            proj_inj,
            inj_proj,
            regular_injective,
            universe,
            pd_u,
            id_u,
            trivial,
            maximality,
            flags,
        })
    }

    fn name(&self, letter: char, v: usize) -> String {
        format!("{letter}{}", self.algebra.vertex_label(v))
    }

    fn n(&self) -> usize {
        self.algebra.vertex_count()
    }

    /// Failed standing hypotheses: gl.dim 2 and the trivial candidate
    /// maximal 1-orthogonal.
    fn standing(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.flags.gl_dim.is(2) {
            out.push(format!("gl.dim = {}, not 2", self.flags.gl_dim));
        }
        match &self.maximality {
            Some(v) if v.maximal => {}
            Some(v) => out.push(format!(
                "trivial candidate is not maximal 1-orthogonal: {}",
                v.witness.as_ref().map_or_else(String::new, ToString::to_string)
            )),
            None => out.push("maximality undecided: indecomposable list incomplete".into()),
        }
        out
    }

    fn need_gorenstein(&self, reasons: &mut Vec<String>) {
        if !self.flags.gorenstein_1 {
            reasons.push("I⁰(Λ) is not projective".into());
        }
    }

    fn need_complete(&self, reasons: &mut Vec<String>) {
        if !self.universe.complete {
            reasons.push("indecomposable list incomplete (not Nakayama)".into());
        }
    }

    pub fn run(&self, id: &str) -> Result<CheckResult, VerifyError> {
        let (status, details) = match id {
            "L2.1" => self.l2_1(),
            "L2.10" => self.l2_10()?,
            "L2.11" => self.l2_11()?,
            "L3.1" => self.l3_1()?,
            "L3.2" => self.l3_2(),
            "L3.3" => self.l3_3()?,
            "L3.4" => self.l3_4()?,
            "P3.5" => self.p3_5(),
            "L3.6" => self.l3_6()?,
            "T3.7" => self.t3_7(),
            "L2.13H" => self.l2_13h()?,
            other => return Err(VerifyError::UnknownCheck(other.to_string())),
        };
        Ok(CheckResult {
            id: id.to_string(),
            status,
            details,
        })
    }

    /// Runs every check; errors inside a check become a skip carrying the
    /// error text.
    pub fn report(&self) -> CheckReport {
        let checks = CHECK_IDS
            .iter()
            .map(|id| {
                self.run(id).unwrap_or_else(|e| CheckResult {
                    id: id.to_string(),
                    status: Status::Skipped,
                    details: json!({ "reasons": [format!("computation failed: {e}")] }),
                })
            })
            .collect();
        CheckReport {
            algebra: self.summary(),
            flags: self.flags.clone(),
            checks,
        }
    }

    pub fn summary(&self) -> Value {
        let a = &self.algebra;
        json!({
            "vertices": a.vertex_count(),
            "arrows": a.arrow_count(),
            "relations": a.ideal().forbidden().len(),
            "dimension": a.dimension(),
            "field": a.field().characteristic(),
            "cap": self.cap,
            "indecomposables": if self.universe.complete { json!(self.universe.len()) } else { Value::Null },
            "flags": self.flags.to_json(),
        })
    }

    fn l2_1(&self) -> Check {
        let (a, b) = (self.flags.id_regular, self.flags.id_regular_op);
        let n = match (a.finite(), b.finite()) {
            (Some(x), Some(y)) if x == y => x,
            _ => return skipped(vec![format!("id Λ = {a} and id Λ^op = {b} are not equal and finite")]),
        };
        let layer: BTreeSet<usize> = self
            .regular_injective
            .iter()
            .filter_map(|r| r.vertices.get(n))
            .flatten()
            .copied()
            .collect();
        let table: BTreeMap<String, Value> =
            layer.iter().map(|&w| (self.name('I', w), self.pd_i[w].to_json())).collect();
        let bad: Vec<String> = layer.iter().filter(|&&w| !self.pd_i[w].is(n)).map(|&w| self.name('I', w)).collect();
        verdict(bad.is_empty(), json!({ "n": n, "pd_of_summands": table, "violations": bad }))
    }

    fn l2_10(&self) -> Result<Check, VerifyError> {
        let n = match self.flags.gl_dim.finite() {
            Some(n) if n >= 2 => n,
            _ => return Ok(skipped(vec![format!("gl.dim = {}, not finite and ≥ 2", self.flags.gl_dim)])),
        };
        let maximal = if n == 2 {
            self.maximality.as_ref().map(|v| v.maximal)
        } else if self.universe.complete {
            let set = self.universe.as_set();
            Some(is_maximal_orthogonal(&self.trivial, n - 1, &set, true, self.cap, self.seed)?.maximal)
        } else {
            None
        };
        match maximal {
            Some(true) => {}
            Some(false) => return Ok(skipped(vec![format!("trivial candidate is not maximal {}-orthogonal", n - 1)])),
            None => return Ok(skipped(vec!["maximality undecided: indecomposable list incomplete".into()])),
        }
        let mut bad = Vec::new();
        for v in 0..self.n() {
            if !self.inj_proj[v] && !self.pd_i[v].is(n) {
                bad.push(format!("pd {} = {}", self.name('I', v), self.pd_i[v]));
            }
            if !self.proj_inj[v] && !self.id_p[v].is(n) {
                bad.push(format!("id {} = {}", self.name('P', v), self.id_p[v]));
            }
        }
        Ok(verdict(bad.is_empty(), json!({ "n": n, "violations": bad })))
    }

    fn l2_11(&self) -> Result<Check, VerifyError> {
        let reasons = self.standing();
        if !reasons.is_empty() {
            return Ok(skipped(reasons));
        }
        let c = &self.trivial;
        let non_injective: Vec<usize> = (0..c.len()).filter(|&k| !is_injective(&c.objects()[k])).collect();
        let mut map = BTreeMap::new();
        let mut images = BTreeSet::new();
        let mut bad = Vec::new();
        let mut non_projective = 0;
        for (name, x) in c.iter().filter(|(_, x)| !is_projective(x)) {
            non_projective += 1;
            let z = ext_module(x, 2, self.cap)?.dual_over(&self.algebra);
            match c.position(&z, self.seed) {
                Some(k) if non_injective.contains(&k) => {
                    map.insert(name.to_string(), c.names()[k].clone());
                    if !images.insert(k) {
                        bad.push(format!("{} is hit twice", c.names()[k]));
                    }
                }
                Some(k) => bad.push(format!("{name} ↦ {} is injective", c.names()[k])),
                None => bad.push(format!("{name} ↦ {} is not in Ind C", name_module(&z, self.seed))),
            }
        }
        if images.len() != non_injective.len() {
            bad.push(format!("{} of {} non-injective objects hit", images.len(), non_injective.len()));
        }
        Ok(verdict(
            bad.is_empty(),
            json!({
                "map": map,
                "non_projective": non_projective,
                "non_injective": non_injective.len(),
                "violations": bad,
            }),
        ))
    }

    fn simples_where(&self, keep: impl Fn(usize) -> bool) -> Vec<usize> {
        (0..self.n()).filter(|&v| keep(v)).collect()
    }

    fn l3_1(&self) -> Result<Check, VerifyError> {
        let reasons = self.standing();
        if !reasons.is_empty() {
            return Ok(skipped(reasons));
        }
        let class = self.simples_where(|v| self.pd_s[v].is(2) && !is_injective(&self.simples[v]));
        if class.is_empty() {
            return Ok(vacuous("no non-injective simple with pd 2"));
        }
        let mut bad = Vec::new();
        let mut seen = BTreeMap::new();
        for &v in &class {
            let s = &self.simples[v];
            let f = minimal_approximation(&self.trivial, s, Side::Right)?;
            let parts = morphism_parts(&f);
            let sname = self.name('S', v);
            if !parts.cokernel.is_zero() {
                bad.push(format!("{sname}: approximation not onto"));
            }
            let kernel = &parts.kernel;
            if !is_projective(kernel) {
                bad.push(format!("{sname}: kernel {} not projective", name_module(kernel, self.seed)));
            }
            for q in decompose(kernel, self.seed)? {
                let d = injective_dimension(&q, self.cap)?;
                if !d.is(2) {
                    bad.push(format!("{sname}: id {} = {d}", name_module(&q, self.seed)));
                }
            }
            let middle = f.source();
            if !is_injective(middle) {
                bad.push(format!("{sname}: {} not injective", name_module(middle, self.seed)));
            }
            for e in decompose(middle, self.seed)? {
                let d = projective_dimension(&e, self.cap)?;
                let ename = name_module(&e, self.seed);
                if !d.is(2) {
                    bad.push(format!("{sname}: pd {ename} = {d}"));
                }
                if e.top_dims().iter().sum::<usize>() != 1 {
                    bad.push(format!("{sname}: {ename} has no unique maximal submodule"));
                }
            }
            seen.insert(
                sname,
                json!({
                    "kernel": name_module(kernel, self.seed),
                    "middle": name_module(middle, self.seed),
                }),
            );
        }
        Ok(verdict(bad.is_empty(), json!({ "sequences": seen, "violations": bad })))
    }

    fn l3_2(&self) -> Check {
        let reasons = self.standing();
        if !reasons.is_empty() {
            return skipped(reasons);
        }
        let class = self.simples_where(|v| self.pd_s[v].is(2));
        if class.is_empty() {
            return vacuous("no simple with pd 2");
        }
        let ids: BTreeMap<String, Value> = class.iter().map(|&v| (self.name('S', v), self.id_s[v].to_json())).collect();
        let bad: Vec<String> = class
            .iter()
            .filter(|&&v| !at_most(self.id_s[v], 1))
            .map(|&v| self.name('S', v))
            .collect();
        verdict(bad.is_empty(), json!({ "id": ids, "violations": bad }))
    }

    fn pd2_id1(&self) -> Vec<usize> {
        self.simples_where(|v| self.pd_s[v].is(2) && self.id_s[v].is(1))
    }

    fn l3_3(&self) -> Result<Check, VerifyError> {
        let reasons = self.standing();
        if !reasons.is_empty() {
            return Ok(skipped(reasons));
        }
        let class = self.pd2_id1();
        if class.is_empty() {
            return Ok(vacuous("no simple with pd 2 and id 1"));
        }
        let mut bad = Vec::new();
        for &v in &class {
            let s = &self.simples[v];
            let sname = self.name('S', v);
            let e1 = ext_module(s, 1, self.cap)?;
            let e2 = ext_module(s, 2, self.cap)?;
            if !is_projective(&e1) {
                bad.push(format!("Ext^1({sname}, Λ) not projective"));
            }
            if !is_injective(&e2) {
                bad.push(format!("Ext^2({sname}, Λ) not injective"));
            }
            let d = projective_dimension(&e2, self.cap)?;
            if !d.is(2) {
                bad.push(format!("pd Ext^2({sname}, Λ) = {d}"));
            }
        }
        Ok(verdict(bad.is_empty(), json!({ "class": self.names('S', &class), "violations": bad })))
    }

    fn l3_4(&self) -> Result<Check, VerifyError> {
        let reasons = self.standing();
        if !reasons.is_empty() {
            return Ok(skipped(reasons));
        }
        let class = self.pd2_id1();
        if class.is_empty() {
            return Ok(vacuous("no simple with pd 2 and id 1"));
        }
        let op = opposite_of(&self.algebra);
        let mut bad = Vec::new();
        for &v in &class {
            let s = &self.simples[v];
            let sname = self.name('S', v);
            let rs = minimal_resolution(s, ResolutionKind::Injective, self.cap)?;
            let zero = Representation::zero(&self.algebra);
            let term = |k: usize| rs.terms.get(k).unwrap_or(&zero);
            let expected = [
                ext_module(term(1), 2, self.cap)?,
                ext_module(term(0), 2, self.cap)?,
                ext_module(s, 2, self.cap)?,
            ];
            let e1 = ext_module(s, 1, self.cap)?;
            let r = minimal_resolution(&e1, ResolutionKind::Injective, self.cap)?;
            let op_zero = Representation::zero(&op);
            for k in 0..r.terms.len().max(expected.len()) {
                let got = r.terms.get(k).unwrap_or(&op_zero);
                let want = expected.get(k).unwrap_or(&op_zero);
                if !is_isomorphic(got, want, self.seed) {
                    bad.push(format!("{sname}: term {k} differs"));
                }
            }
        }
        Ok(verdict(bad.is_empty(), json!({ "class": self.names('S', &class), "violations": bad })))
    }

    fn names(&self, letter: char, vs: &[usize]) -> Vec<String> {
        vs.iter().map(|&v| self.name(letter, v)).collect()
    }

    fn p3_5(&self) -> Check {
        let mut reasons = self.standing();
        self.need_gorenstein(&mut reasons);
        if !reasons.is_empty() {
            return skipped(reasons);
        }
        let pd2 = self.simples_where(|v| self.pd_s[v].is(2));
        let mut bad: Vec<String> = pd2
            .iter()
            .filter(|&&v| !is_injective(&self.simples[v]))
            .map(|&v| format!("{} has pd 2 but is not injective", self.name('S', v)))
            .collect();
        for v in 0..self.n() {
            if self.pd_s[v].is(1) != self.id_s[v].is(1) {
                bad.push(format!("{}: pd {} but id {}", self.name('S', v), self.pd_s[v], self.id_s[v]));
            }
        }
        let pd1 = self.simples_where(|v| self.pd_s[v].is(1));
        let id1 = self.simples_where(|v| self.id_s[v].is(1));
        verdict(
            bad.is_empty(),
            json!({
                "pd2": self.names('S', &pd2),
                "pd1": self.names('S', &pd1),
                "id1": self.names('S', &id1),
                "violations": bad,
            }),
        )
    }

    fn l3_6(&self) -> Result<Check, VerifyError> {
        let mut reasons = self.standing();
        self.need_gorenstein(&mut reasons);
        self.need_complete(&mut reasons);
        if !reasons.is_empty() {
            return Ok(skipped(reasons));
        }
        let targets: Vec<usize> = (0..self.n()).filter(|&v| self.id_p[v].is(2)).collect();
        let sources: Vec<usize> = (0..self.universe.len())
            .filter(|&k| !self.universe.objects[k].is_projective())
            .collect();
        if targets.is_empty() || sources.is_empty() {
            return Ok(vacuous("no pair of a non-projective and a projective of id 2"));
        }
        let mut bad = Vec::new();
        for &k in &sources {
            let m = &self.universe.objects[k];
            for &v in &targets {
                let d = hom_dim(&m.module, &self.projectives[v])?;
                if d != 0 {
                    bad.push(format!("dim Hom({}, {}) = {d}", m.name, self.name('P', v)));
                }
            }
        }
        Ok(verdict(
            bad.is_empty(),
            json!({
                "projectives_id2": self.names('P', &targets),
                "non_projective": sources.len(),
                "violations": bad,
            }),
        ))
    }

    fn t3_7(&self) -> Check {
        let mut reasons = self.standing();
        self.need_gorenstein(&mut reasons);
        self.need_complete(&mut reasons);
        if !reasons.is_empty() {
            return skipped(reasons);
        }
        let objs = &self.universe.objects;
        let select = |dims: &[Dimension], d: usize| -> BTreeSet<String> {
            (0..objs.len()).filter(|&k| dims[k].is(d)).map(|k| objs[k].name.clone()).collect()
        };
        let pd1 = select(&self.pd_u, 1);
        let id1 = select(&self.id_u, 1);
        let pd2 = select(&self.pd_u, 2);
        let not_injective: Vec<&String> = (0..objs.len())
            .filter(|&k| self.pd_u[k].is(2) && !objs[k].is_injective())
            .map(|k| &objs[k].name)
            .collect();
        let table: BTreeMap<&str, Value> = objs
            .iter()
            .enumerate()
            .map(|(k, o)| {
                (
                    o.name.as_str(),
                    json!({ "pd": self.pd_u[k].to_json(), "id": self.id_u[k].to_json() }),
                )
            })
            .collect();
        let mut bad: Vec<String> = pd1.symmetric_difference(&id1).map(|n| format!("{n}: pd 1 ⇎ id 1")).collect();
        bad.extend(not_injective.iter().map(|n| format!("{n}: pd 2 but not injective")));
        verdict(
            bad.is_empty(),
            json!({ "pd1": pd1, "id1": id1, "pd2": pd2, "table": table, "violations": bad }),
        )
    }

    fn l2_13h(&self) -> Result<Check, VerifyError> {
        let mut reasons = Vec::new();
        self.need_complete(&mut reasons);
        self.need_gorenstein(&mut reasons);
        match self.flags.almost_hereditary {
            Some(true) => {}
            Some(false) => reasons.push("not almost hereditary".into()),
            None => reasons.push("almost hereditary undecided".into()),
        }
        if !reasons.is_empty() {
            return Ok(skipped(reasons));
        }
        let reach = reaches(&self.universe)?;
        let inside: BTreeSet<usize> = r_lambda_indices(&reach, &self.id_u).into_iter().collect();
        let mut bad = Vec::new();
        for v in 0..self.n() {
            let name = self.name('I', v);
            match self.universe.objects.iter().position(|o| o.aliases.contains(&name)) {
                Some(k) if !inside.contains(&k) => bad.push(format!("{name} is not in R_Λ")),
                Some(_) => {}
                None => bad.push(format!("{name} missing from the indecomposable list")),
            }
        }
        let pi = self.simples_where(|v| self.proj_inj[v]);
        if pi.is_empty() {
            bad.push("no indecomposable projective-injective".into());
        }
        let r: Vec<&str> = inside.iter().map(|&k| self.universe.objects[k].name.as_str()).collect();
        Ok(verdict(
            bad.is_empty(),
            json!({ "r_lambda": r, "projective_injective": self.names('P', &pi), "violations": bad }),
        ))
    }
}

type Check = (Status, Value);

fn skipped(reasons: Vec<String>) -> Check {
    (Status::Skipped, json!({ "reasons": reasons }))
}

fn vacuous(why: &str) -> Check {
    (Status::Vacuous, json!({ "reason": why }))
}

fn verdict(ok: bool, details: Value) -> Check {
    (if ok { Status::Pass } else { Status::Fail }, details)
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub algebra: Value,
    pub flags: StructureFlags,
    pub checks: Vec<CheckResult>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn get(&self, id: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn status(&self, id: &str) -> Option<Status> {
        self.get(id).map(|c| c.status)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "algebra": self.algebra,
            "checks": self.checks,
            "overall": if self.passed() { "pass" } else { "fail" },
        })
    }
}

pub fn structure_flags(algebra: &Arc<BoundAlgebra>, cap: usize, seed: u64) -> Result<StructureFlags, VerifyError> {
    Ok(Context::new(algebra, cap, seed)?.flags)
}

pub fn run_check(algebra: &Arc<BoundAlgebra>, id: &str, cap: usize, seed: u64) -> Result<CheckResult, VerifyError> {
    if !CHECK_IDS.contains(&id) {
        return Err(VerifyError::UnknownCheck(id.to_string()));
    }
    Context::new(algebra, cap, seed)?.run(id)
}

pub fn verify_paper(algebra: &Arc<BoundAlgebra>, cap: usize, seed: u64) -> Result<CheckReport, VerifyError> {
    Ok(Context::new(algebra, cap, seed)?.report())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{a2, cyclic2, line_with_full_relation};
    use crate::homology::default_cap;

    fn context(a: BoundAlgebra) -> Context {
        let a = Arc::new(a);
        let cap = default_cap(&a);
        Context::new(&a, cap, 7).unwrap()
    }

    #[test]
    fn e39_flags() {
        let cx = context(line_with_full_relation(4, 101));
        let f = &cx.flags;
        assert!(f.gl_dim.is(2));
        assert!(f.gorenstein_1);
        assert!(!f.auslander_algebra);
        assert!(f.pd_i1.is(2));
        assert_eq!(f.almost_hereditary, Some(true));
        assert_eq!(f.trivial_is_maximal_1_orthogonal, Some(true));
    }

    #[test]
    fn a2_flags() {
        let cx = context(a2(101));
        let f = &cx.flags;
        assert!(f.gl_dim.is(1));
        assert!(f.gorenstein_1);
        assert_eq!(f.almost_hereditary, Some(true));
        assert_eq!(f.trivial_is_maximal_1_orthogonal, Some(false));
    }

    #[test]
    fn e39_report() {
        let r = context(line_with_full_relation(4, 101)).report();
        for c in &r.checks {
            let expected = match c.id.as_str() {
                "L3.1" | "L3.3" | "L3.4" => Status::Vacuous,
                _ => Status::Pass,
            };
            assert_eq!(c.status, expected, "{} {}", c.id, c.details);
        }
        assert_eq!(r.get("L2.11").unwrap().details["non_projective"], json!(2));
        let t = &r.get("T3.7").unwrap().details;
        assert_eq!(t["pd1"], json!(["M2:2", "M2:3", "M3:3"]));
        assert_eq!(t["pd2"], json!(["M3:4", "M4:4"]));
    }

    #[test]
    fn controls_skip_section_three() {
        for a in [a2(101), cyclic2(101)] {
            let r = context(a).report();
            for id in ["L3.1", "L3.2", "L3.3", "L3.4", "P3.5", "L3.6", "T3.7", "L2.11"] {
                assert_eq!(r.status(id), Some(Status::Skipped), "{id}");
            }
            assert!(r.passed());
        }
    }

    #[test]
    fn unknown_check() {
        let a = Arc::new(a2(101));
        assert!(matches!(run_check(&a, "X9", 6, 0), Err(VerifyError::UnknownCheck(_))));
    }
}
