//! Shared fixtures, independent oracles and randomized properties for the
//! integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use boundquiver::algebra::{a2, cyclic2, line_with_full_relation, BoundAlgebra};
use boundquiver::approx::{is_approximation, minimal_approximation, trivial_candidate, SubcategorySet};
use boundquiver::catalog::enumerate_indecomposables;
use boundquiver::homology::{
    default_cap, euler_form, ext_dim, ext_dim_via_injective, injective_dimension, minimal_resolution,
    nonsplit_extension, projective_dimension, ResolutionKind,
};
use boundquiver::linalg::{rank_of_vectors, Matrix};
use boundquiver::rep::{
    decompose, decompose_with_maps, direct_sum, hom_basis, hom_dim, is_isomorphic, is_minimal, morphism_parts,
    standard_module, Morphism, Representation, Side, StandardKind,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Fixture {
    pub name: &'static str,
    pub algebra: Arc<BoundAlgebra>,
    pub universe: Vec<Representation>,
    pub cap: usize,
}

impl Fixture {
    pub fn new(name: &'static str, a: BoundAlgebra) -> Self {
        let algebra = Arc::new(a);
        let universe = enumerate_indecomposables(&algebra).modules().cloned().collect();
        let cap = default_cap(&algebra);
        Fixture {
            name,
            algebra,
            universe,
            cap,
        }
    }

    pub fn acyclic(&self) -> bool {
        self.algebra.quiver().is_acyclic()
    }

    pub fn projectives(&self) -> Vec<Representation> {
        (0..self.algebra.vertex_count())
            .map(|v| standard_module(&self.algebra, StandardKind::Projective, v).unwrap())
            .collect()
    }
}

/// A2, E39(4..6) and CYC2.
pub fn fixtures() -> Vec<Fixture> {
    vec![
        Fixture::new("A2", a2(101)),
        Fixture::new("E39(4)", line_with_full_relation(4, 101)),
        Fixture::new("E39(5)", line_with_full_relation(5, 101)),
        Fixture::new("E39(6)", line_with_full_relation(6, 101)),
        Fixture::new("CYC2", cyclic2(101)),
    ]
}

// ---------------------------------------------------------------------------
// Hom oracle: the intertwiner equations `N_a f_s = f_t M_a`, solved by a
// Gaussian elimination written here from scratch.

fn inv_mod(x: u64, p: u64) -> u64 {
    let (mut base, mut e, mut acc) = (x % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

fn rank_mod(mut rows: Vec<Vec<u64>>, cols: usize, p: u64) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = inv_mod(rows[rank][c], p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let factor = rows[r][c];
                for k in 0..cols {
                    let sub = factor * rows[rank][k] % p;
                    rows[r][k] = (rows[r][k] + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Coefficient rows of the intertwiner equations; unknowns are the entries
/// of every block `f_v` (`dim N_v × dim M_v`, row-major), in vertex order.
fn intertwiner_equations(m: &Representation, n: &Representation) -> (Vec<Vec<u64>>, usize) {
    let p = m.field().characteristic();
    let q = m.algebra().quiver();
    let (dm, dn) = (m.dims(), n.dims());
    let mut offset = vec![0];
    for v in 0..dm.len() {
        offset.push(offset[v] + dn[v] * dm[v]);
    }
    let vars = offset[dm.len()];
    let mut rows = Vec::new();
    for (a, arrow) in q.arrows().iter().enumerate() {
        let (s, t) = (arrow.source, arrow.target);
        let (ma, na) = (m.map(a), n.map(a));
        for r in 0..dn[t] {
            for c in 0..dm[s] {
                let mut row = vec![0u64; vars];
                for k in 0..dn[s] {
                    let i = offset[s] + k * dm[s] + c;
                    row[i] = (row[i] + na.get(r, k)) % p;
                }
                for k in 0..dm[t] {
                    let i = offset[t] + r * dm[t] + k;
                    row[i] = (row[i] + p - ma.get(k, c)) % p;
                }
                rows.push(row);
            }
        }
    }
    (rows, vars)
}

pub fn oracle_hom_dim(m: &Representation, n: &Representation) -> usize {
    let p = m.field().characteristic();
    let (rows, vars) = intertwiner_equations(m, n);
    vars - rank_mod(rows, vars, p)
}

/// Counts intertwiners by trying every assignment; only for tiny F_2 cases.
pub fn brute_force_hom_count_f2(m: &Representation, n: &Representation) -> u64 {
    assert_eq!(m.field().characteristic(), 2);
    let (rows, vars) = intertwiner_equations(m, n);
    assert!(vars <= 20, "too many unknowns for enumeration");
    (0u64..1 << vars)
        .filter(|bits| {
            rows.iter()
                .all(|row| (0..vars).filter(|&i| row[i] == 1 && bits >> i & 1 == 1).count() % 2 == 0)
        })
        .count() as u64
}

// ---------------------------------------------------------------------------
// Interval calculus on E39(n): `M[i,j]` has socle `i` and top `j`
// (1-based); projective covers are `M[1,j]` (`j < n`) or `M[2,n]`, and
// injective envelopes are `M[1,n-1]` or `M[i,n]` (`i ≥ 2`).

pub fn interval_pd(n: usize, i: usize, j: usize) -> usize {
    let s = if j < n { 1 } else { 2 };
    if i == s {
        0
    } else {
        1 + interval_pd(n, s, i - 1)
    }
}

pub fn interval_id(n: usize, i: usize, j: usize) -> usize {
    let t = if i == 1 { n - 1 } else { n };
    if j == t {
        0
    } else {
        1 + interval_id(n, j + 1, t)
    }
}

pub fn interval_hom(x: (usize, usize), y: (usize, usize)) -> usize {
    let ((i, j), (k, l)) = (x, y);
    usize::from(i <= k && k <= j && j <= l)
}

/// `(socle, top)` of an interval module over the line quiver, 1-based.
pub fn interval_of(m: &Representation) -> (usize, usize) {
    let d = m.dims();
    let first = d.iter().position(|&x| x > 0).expect("nonzero module");
    let last = d.iter().rposition(|&x| x > 0).unwrap();
    assert!(d[first..=last].iter().all(|&x| x == 1), "not an interval module");
    (first + 1, last + 1)
}

// ---------------------------------------------------------------------------
// Random modules and the property bodies.

pub fn random_basis_change(m: &Representation, rng: &mut ChaCha8Rng) -> Representation {
    let field = m.field();
    let g: Vec<Matrix> = m.dims().iter().map(|&d| Matrix::random_invertible(field, d, rng)).collect();
    m.change_basis(&g)
}

pub fn random_parts(fx: &Fixture, rng: &mut ChaCha8Rng, max: usize) -> Vec<Representation> {
    let k = rng.gen_range(1..=max);
    (0..k).map(|_| fx.universe.choose(rng).unwrap().clone()).collect()
}

pub fn random_module(fx: &Fixture, rng: &mut ChaCha8Rng, max: usize) -> Representation {
    let parts = random_parts(fx, rng, max);
    random_basis_change(&direct_sum(&parts).unwrap(), rng)
}

pub type Property = fn(&Fixture, &mut ChaCha8Rng) -> Result<(), String>;

pub struct Tally {
    pub passed: usize,
    pub total: usize,
    pub failures: Vec<String>,
}

/// `count` instances, cycling through the fixtures, each with its own seed.
pub fn run_property(prop: Property, fixtures: &[&Fixture], count: usize, base_seed: u64) -> Tally {
    let mut t = Tally {
        passed: 0,
        total: 0,
        failures: Vec::new(),
    };
    for k in 0..count {
        let fx = fixtures[k % fixtures.len()];
        let mut rng = ChaCha8Rng::seed_from_u64(base_seed.wrapping_add(k as u64));
        t.total += 1;
        match prop(fx, &mut rng) {
            Ok(()) => t.passed += 1,
            Err(e) => t.failures.push(format!("{} #{k}: {e}", fx.name)),
        }
    }
    t
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

pub fn prop_ext_routes(fx: &Fixture, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let m = random_module(fx, rng, 2);
    let n = random_module(fx, rng, 2);
    let i = rng.gen_range(0..=3);
    let a = ext_dim(&m, &n, i, fx.cap).map_err(err)?;
    let b = ext_dim_via_injective(&m, &n, i, fx.cap).map_err(err)?;
    ensure(a == b, || format!("Ext^{i}: projective route {a}, injective route {b}"))
}

pub fn prop_duality(fx: &Fixture, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let m = random_module(fx, rng, 2);
    let n = random_module(fx, rng, 2);
    let (dm, dn) = (m.dual(), n.dual());
    let pd = projective_dimension(&m, fx.cap).map_err(err)?;
    let id_dual = injective_dimension(&dm, fx.cap).map_err(err)?;
    ensure(pd == id_dual, || format!("pd M = {pd}, id DM = {id_dual}"))?;
    let id = injective_dimension(&m, fx.cap).map_err(err)?;
    let pd_dual = projective_dimension(&dm, fx.cap).map_err(err)?;
    ensure(id == pd_dual, || format!("id M = {id}, pd DM = {pd_dual}"))?;
    let i = rng.gen_range(0..=3);
    let a = ext_dim(&m, &n, i, fx.cap).map_err(err)?;
    let b = ext_dim(&dn, &dm, i, fx.cap).map_err(err)?;
    ensure(a == b, || format!("Ext^{i}(M,N) = {a}, Ext^{i}(DN,DM) = {b}"))
}

/// Acyclic fixtures only.
pub fn prop_euler(fx: &Fixture, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let m = random_module(fx, rng, 2);
    let n = random_module(fx, rng, 2);
    let r = minimal_resolution(&m, ResolutionKind::Projective, fx.cap).map_err(err)?;
    let top = r.terms.len();
    let sign = |i: usize| if i.is_multiple_of(2) { 1i64 } else { -1 };
    let mut by_ext = 0i64;
    for i in 0..top.max(1) {
        by_ext += sign(i) * ext_dim(&m, &n, i, fx.cap).map_err(err)? as i64;
    }
    let by_terms: i64 = r
        .terms
        .iter()
        .enumerate()
        .map(|(j, t)| sign(j) * oracle_hom_dim(t, &n) as i64)
        .sum();
    let cartan = euler_form(&m, &n).ok_or("euler form undefined")?;
    ensure(by_ext == by_terms && by_terms == cartan, || {
        format!("Ext sum {by_ext}, term sum {by_terms}, Cartan {cartan}")
    })
}

pub fn prop_krull_schmidt(fx: &Fixture, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let parts = random_parts(fx, rng, 3);
    let m = random_basis_change(&direct_sum(&parts).unwrap(), rng);
    let seed = rng.gen();
    let found = decompose(&m, seed).map_err(err)?;
    ensure(found.len() == parts.len(), || {
        format!("{} summands found, {} expected", found.len(), parts.len())
    })?;
    let mut unmatched: Vec<&Representation> = parts.iter().collect();
    for s in &found {
        let k = unmatched
            .iter()
            .position(|p| is_isomorphic(p, s, seed))
            .ok_or_else(|| format!("summand with dims {:?} matches no part", s.dims()))?;
        unmatched.remove(k);
    }
    let pieces = decompose_with_maps(&m, seed).map_err(err)?;
    let mut total = Morphism::zero(&m, &m);
    for p in &pieces {
        ensure(p.projection.compose(&p.inclusion).is_isomorphism(), || "π∘ι not invertible".into())?;
        total = total.add(&p.inclusion.compose(&p.projection));
    }
    ensure(total.sub(&Morphism::identity(&m)).is_zero(), || "Σ ι∘π ≠ 1".into())
}

/// Extension-closed choices of C: the trivial candidate (maximal
/// 1-orthogonal on E39, all of mod Λ on A2, the projectives on CYC2), the
/// projectives, or every indecomposable.
fn random_closed_category(fx: &Fixture, rng: &mut ChaCha8Rng) -> SubcategorySet {
    match rng.gen_range(0..3) {
        0 => trivial_candidate(&fx.algebra),
        1 => {
            let named = fx.projectives().into_iter().enumerate().map(|(v, p)| (format!("P{}", v + 1), p)).collect();
            SubcategorySet::new(&fx.algebra, named, 0).unwrap()
        }
        _ => {
            let named = fx.universe.iter().enumerate().map(|(k, x)| (format!("U{k}"), x.clone())).collect();
            SubcategorySet::new(&fx.algebra, named, 0).unwrap()
        }
    }
}

pub fn prop_wakamatsu(fx: &Fixture, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let c = random_closed_category(fx, rng);
    let d = random_module(fx, rng, 2);
    let side = if rng.gen_bool(0.5) { Side::Right } else { Side::Left };
    let seed = rng.gen();
    let f = minimal_approximation(&c, &d, side).map_err(err)?;
    ensure(is_approximation(&f, &c, side, seed).map_err(err)?, || "not an approximation".into())?;
    ensure(is_minimal(&f, side, seed).map_err(err)?, || "not minimal".into())?;
    let parts = morphism_parts(&f);
    for obj in c.objects() {
        let e = match side {
            Side::Right => ext_dim(obj, &parts.kernel, 1, fx.cap),
            Side::Left => ext_dim(&parts.cokernel, obj, 1, fx.cap),
        }
        .map_err(err)?;
        ensure(e == 0, || format!("{side:?}: Ext^1 = {e} against an object of C"))?;
    }
    Ok(())
}

/// A random non-split extension `0 → A → B → C → 0`, checked against the
/// minimality statements for non-split sequences.
pub fn prop_extension_minimality(fx: &Fixture, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let (a, c) = loop {
        let (ka, kc) = (1 + usize::from(rng.gen_bool(0.3)), 1 + usize::from(rng.gen_bool(0.3)));
        let a = random_module(fx, rng, ka);
        let c = random_module(fx, rng, kc);
        if ext_dim(&c, &a, 1, fx.cap).map_err(err)? > 0 {
            break (a, c);
        }
    };
    let seed = rng.gen();
    let ext = nonsplit_extension(&a, &c, seed)
        .map_err(err)?
        .ok_or("no extension found although Ext^1 ≠ 0")?;
    let (g, f) = (&ext.g, &ext.f);
    let b = g.target();
    ensure(g.is_mono() && f.is_epi() && f.compose(g).is_zero(), || "not a short exact sequence".into())?;
    ensure(b.total_dim() == a.total_dim() + c.total_dim(), || "middle term has the wrong size".into())?;
    // non-split: 1_C is not f∘s for any s : C → B
    let field = a.field();
    let mut vecs: Vec<Vec<u64>> = hom_basis(&c, b).map_err(err)?.iter().map(|s| f.compose(s).flatten()).collect();
    let r = rank_of_vectors(field, Morphism::identity(&c).flatten().len(), &vecs);
    vecs.push(Morphism::identity(&c).flatten());
    ensure(rank_of_vectors(field, vecs[0].len(), &vecs) > r, || "the sequence splits".into())?;

    let c_parts = decompose_with_maps(&c, seed).map_err(err)?;
    let a_parts = decompose_with_maps(&a, seed).map_err(err)?;
    let g_min = is_minimal(g, Side::Left, seed).map_err(err)?;
    let f_min = is_minimal(f, Side::Right, seed).map_err(err)?;
    if c_parts.len() == 1 {
        ensure(g_min, || "C indecomposable but g not left minimal".into())?;
    }
    if a_parts.len() == 1 {
        ensure(f_min, || "A indecomposable but f not right minimal".into())?;
    }
    if g_min {
        for s in &c_parts {
            let e = ext_dim(&s.module, &a, 1, fx.cap).map_err(err)?;
            ensure(e != 0, || "g left minimal but Ext^1(C', A) = 0".into())?;
        }
        for s in decompose_with_maps(b, seed).map_err(err)? {
            ensure(!s.projection.compose(g).is_zero(), || "g left minimal but a summand kills it".into())?;
        }
    }
    if f_min {
        for s in &a_parts {
            let e = ext_dim(&c, &s.module, 1, fx.cap).map_err(err)?;
            ensure(e != 0, || "f right minimal but Ext^1(C, A') = 0".into())?;
        }
        for s in decompose_with_maps(b, seed).map_err(err)? {
            ensure(!f.compose(&s.inclusion).is_zero(), || "f right minimal but vanishes on a summand".into())?;
        }
    }
    Ok(())
}

pub fn hom_dim_lib(m: &Representation, n: &Representation) -> usize {
    hom_dim(m, n).unwrap()
}
