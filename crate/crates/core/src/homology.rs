//! Resolutions, Ext and Tor, the derived functors `EXT^i(C/I, -)` and
//! `TOR_i(C/I, -)`, membership in `P_k`/`I_k`, and the idempotency certifier.

use crate::error::{Error, Result};
use crate::exactlin::{Mat, Scalar};
use crate::funmod::{
    bundle_generator, dualize, precompose_matrix, dualize_map, hom_modules, indecomposable_injective, kernel, projective_cover,
    random_module, simple, tensor_map, tensor_over_c, yoneda_projective, FMap, FModule, ProjBundle,
};
use crate::ideals::{coquotient_yoneda, ideal_as_module, quotient_yoneda, Ideal, QuotientCategory};
use crate::pathcat::{same_category, PathCategory};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::sync::Arc;

pub const DEFAULT_SEED: u64 = 20_240_917;

/// Battery seed from `FUNCTCAT_SEED`, or the fixed default.
pub fn battery_seed() -> u64 {
    std::env::var("FUNCTCAT_SEED").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_SEED)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ResolutionKind {
    Projective,
    Injective,
}

/// A minimal projective resolution `… → P_1 → P_0 → M` or injective
/// coresolution `M → J^0 → J^1 → …`.
///
/// `maps[0]` is the augmentation (`P_0 → M` or `M → J^0`); `maps[i]` joins
/// terms `i-1` and `i`. `bundles[i]` lists the vertices of the indecomposable
/// summands of term `i`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub kind: ResolutionKind,
    pub resolved: FModule,
    pub terms: Vec<FModule>,
    pub bundles: Vec<ProjBundle>,
    pub maps: Vec<FMap>,
    pub minimal: bool,
    /// The last syzygy computed is zero, so the resolution is finished.
    pub complete: bool,
}

impl Resolution {
    /// Length when complete: index of the last nonzero term.
    pub fn length(&self) -> Option<usize> {
        if !self.complete {
            return None;
        }
        Some(self.terms.iter().rposition(|t| !t.is_zero()).unwrap_or(0))
    }

    pub fn term_vertices(&self, i: usize) -> &[usize] {
        self.bundles.get(i).map_or(&[], |b| b.vertices.as_slice())
    }

    /// Complex and exactness conditions, checked vertexwise.
    pub fn is_exact(&self) -> bool {
        let n = self.terms.len();
        for i in 1..n {
            let (a, b) = (&self.maps[i], &self.maps[i - 1]);
            let comp = match self.kind {
                ResolutionKind::Projective => b.after(a),
                ResolutionKind::Injective => a.after(b),
            };
            if !comp.is_zero() {
                return false;
            }
        }
        for v in 0..self.resolved.dims().len() {
            match self.kind {
                ResolutionKind::Projective => {
                    if self.maps[0].comp(v).rank() != self.resolved.dim(v) {
                        return false;
                    }
                    for i in 1..n {
                        let ker = self.maps[i - 1].comp(v).cols() - self.maps[i - 1].comp(v).rank();
                        if self.maps[i].comp(v).rank() != ker {
                            return false;
                        }
                    }
                }
                ResolutionKind::Injective => {
                    if self.maps[0].comp(v).rank() != self.resolved.dim(v) {
                        return false;
                    }
                    for i in 1..n {
                        let ker = self.maps[i].comp(v).cols() - self.maps[i].comp(v).rank();
                        if self.maps[i - 1].comp(v).rank() != ker {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// Terms `P_0 … P_n` of a minimal projective resolution.
pub fn projective_resolution(m: &FModule, n: usize) -> Resolution {
    let pc = projective_cover(m);
    let mut terms = vec![pc.module.clone()];
    let mut bundles = vec![pc.bundle.clone()];
    let mut maps = vec![pc.map.clone()];
    let (mut syz, mut incl) = kernel(&pc.map);
    for _ in 1..=n {
        if syz.is_zero() {
            break;
        }
        let pc = projective_cover(&syz);
        let d = incl.after(&pc.map);
        let (k, ki) = kernel(&pc.map);
        terms.push(pc.module);
        bundles.push(pc.bundle);
        maps.push(d);
        syz = k;
        incl = ki;
    }
    let res = Resolution {
        kind: ResolutionKind::Projective,
        resolved: m.clone(),
        terms,
        bundles,
        maps,
        minimal: true,
        complete: syz.is_zero(),
    };
    debug_assert!(res.is_exact());
    res
}

/// Terms `J^0 … J^n`, dual to a projective resolution of `D M`.
pub fn injective_coresolution(m: &FModule, n: usize) -> Resolution {
    let r = projective_resolution(&dualize(m), n);
    let terms: Vec<FModule> = r.terms.iter().map(dualize).collect();
    let mut maps = Vec::with_capacity(r.maps.len());
    maps.push(dualize_map(&r.maps[0]).with_source(m));
    for d in &r.maps[1..] {
        maps.push(dualize_map(d));
    }
    let res = Resolution {
        kind: ResolutionKind::Injective,
        resolved: m.clone(),
        terms,
        bundles: r.bundles,
        maps,
        minimal: true,
        complete: r.complete,
    };
    debug_assert!(res.is_exact());
    res
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtTable {
    pub dims: Vec<usize>,
}

/// Matrix of `Hom(P_i, N) → Hom(P_{i+1}, N)` in Yoneda coordinates.
fn yoneda_coboundary(cat: &PathCategory, res: &Resolution, i: usize, n: &FModule) -> Mat {
    let tgt = &res.bundles[i + 1];
    let d = &res.maps[i + 1];
    let images: Vec<Vec<Scalar>> =
        tgt.vertices.iter().enumerate().map(|(j, &v)| d.comp(v).mul_vec(&bundle_generator(cat, tgt, j))).collect();
    precompose_matrix(cat, tgt, &images, &res.bundles[i], n)
}

pub(crate) fn cohomology_dims(dims: &[usize], coboundaries: &[Mat], bound: usize) -> Vec<usize> {
    // coboundaries[i] : C^i → C^{i+1}; missing ones are zero maps.
    (0..=bound)
        .map(|i| {
            let dim = dims.get(i).copied().unwrap_or(0);
            let rank_out = coboundaries.get(i).map_or(0, Mat::rank);
            let rank_in = if i == 0 { 0 } else { coboundaries.get(i - 1).map_or(0, Mat::rank) };
            dim - rank_out - rank_in
        })
        .collect()
}

/// `Ext^i(M, N)` for `0 ≤ i ≤ bound` from a projective resolution of `M`.
pub fn ext_from_resolution(res: &Resolution, n: &FModule, bound: usize) -> Result<ExtTable> {
    if res.kind != ResolutionKind::Projective || !same_category(res.resolved.category(), n.category()) {
        return Err(Error::CategoryMismatch);
    }
    let cat = res.resolved.category();
    let dims: Vec<usize> =
        res.bundles.iter().map(|b| b.vertices.iter().map(|&v| n.dim(v)).sum()).collect();
    let cob: Vec<Mat> = (0..res.terms.len().saturating_sub(1).min(bound + 1))
        .map(|i| yoneda_coboundary(cat, res, i, n))
        .collect();
    if !res.complete && res.terms.len() < bound + 2 {
        return Err(Error::InvalidModule("resolution too short for the requested bound".into()));
    }
    Ok(ExtTable { dims: cohomology_dims(&dims, &cob, bound) })
}

pub fn ext(m: &FModule, n: &FModule, bound: usize) -> Result<ExtTable> {
    ext_from_resolution(&projective_resolution(m, bound + 1), n, bound)
}

/// `Ext^i(M, N)` from an injective coresolution of `N`, using generic
/// Hom-spaces; independent of the Yoneda shortcut.
pub fn ext_from_coresolution(m: &FModule, res: &Resolution, bound: usize) -> Result<ExtTable> {
    if res.kind != ResolutionKind::Injective {
        return Err(Error::CategoryMismatch);
    }
    if !res.complete && res.terms.len() < bound + 2 {
        return Err(Error::InvalidModule("coresolution too short for the requested bound".into()));
    }
    let homs = res.terms.iter().take(bound + 2).map(|j| hom_modules(m, j)).collect::<Result<Vec<_>>>()?;
    let dims: Vec<usize> = homs.iter().map(|h| h.dim()).collect();
    let mut cob = Vec::new();
    for i in 0..homs.len().saturating_sub(1) {
        let d = &res.maps[i + 1];
        let cols: Vec<Vec<Scalar>> = homs[i].basis().iter().map(|phi| homs[i + 1].coords(&d.after(phi))).collect();
        cob.push(if cols.is_empty() {
            Mat::zeros(m.field(), homs[i + 1].dim(), 0)
        } else {
            Mat::from_columns(m.field(), homs[i + 1].dim(), &cols)
        });
    }
    Ok(ExtTable { dims: cohomology_dims(&dims, &cob, bound) })
}

pub fn ext_via_injectives(m: &FModule, n: &FModule, bound: usize) -> Result<ExtTable> {
    ext_from_coresolution(m, &injective_coresolution(n, bound + 1), bound)
}

/// `Tor_i(N, M)` from a projective resolution of `M`.
pub fn tor_from_resolution(nm: &FModule, res: &Resolution, bound: usize) -> Result<ExtTable> {
    if !res.complete && res.terms.len() < bound + 2 {
        return Err(Error::InvalidModule("resolution too short for the requested bound".into()));
    }
    let ts = res.terms.iter().take(bound + 2).map(|p| tensor_over_c(nm, p)).collect::<Result<Vec<_>>>()?;
    let dims: Vec<usize> = ts.iter().map(|t| t.dim).collect();
    // boundary ∂_i : T_i → T_{i-1}, stored at index i-1
    let bd: Vec<Mat> = (1..ts.len()).map(|i| tensor_map(nm, &res.maps[i], &ts[i], &ts[i - 1])).collect();
    Ok(ExtTable {
        dims: (0..=bound)
            .map(|i| {
                let dim = dims.get(i).copied().unwrap_or(0);
                let rank_out = if i == 0 { 0 } else { bd.get(i - 1).map_or(0, Mat::rank) };
                let rank_in = bd.get(i).map_or(0, Mat::rank);
                dim - rank_out - rank_in
            })
            .collect(),
    })
}

pub fn tor(nm: &FModule, m: &FModule, bound: usize) -> Result<ExtTable> {
    tor_from_resolution(nm, &projective_resolution(m, bound + 1), bound)
}

/// Projective dimension when at most `bound`.
pub fn projective_dimension(m: &FModule, bound: usize) -> Option<usize> {
    let r = projective_resolution(m, bound);
    if r.complete {
        r.length()
    } else {
        None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GlobalDimension {
    Exact(usize),
    ExceedsBound,
}

impl std::fmt::Display for GlobalDimension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GlobalDimension::Exact(n) => write!(f, "{n}"),
            GlobalDimension::ExceedsBound => write!(f, "exceeds bound"),
        }
    }
}

pub fn global_dimension(cat: &Arc<PathCategory>, bound: usize) -> GlobalDimension {
    let mut best = 0;
    for v in 0..cat.vertex_count() {
        if cat.is_zero_object(v) {
            continue;
        }
        match projective_dimension(&simple(cat, v), bound) {
            Some(d) => best = best.max(d),
            None => return GlobalDimension::ExceedsBound,
        }
    }
    GlobalDimension::Exact(best)
}

/// `dim Tor_i(N, M) = dim Ext^i_{C^op}(N, D M)` for all `i ≤ bound`.
pub fn ar_duality_check(nm: &FModule, m: &FModule, bound: usize) -> Result<bool> {
    let t = tor(nm, m, bound)?;
    let e = ext(nm, &dualize(m), bound)?;
    Ok(t == e)
}

/// Cached resolutions of the quotient Yoneda modules of `C/I`.
#[derive(Clone, Debug)]
pub struct QuotientHomology {
    pub quotient: QuotientCategory,
    pub bound: usize,
    /// Resolutions of `Hom_C(c, -)/I(c, -)`.
    pub left: Vec<Resolution>,
    /// `Hom_C(-, c)/I(-, c)` over `C^op`.
    pub right_modules: Vec<FModule>,
}

impl QuotientHomology {
    pub fn new(q: &QuotientCategory, bound: usize) -> Self {
        let n = q.base().vertex_count();
        let left = (0..n).map(|c| projective_resolution(&quotient_yoneda(q.ideal(), c).0, bound + 1)).collect();
        let right_modules = (0..n).map(|c| coquotient_yoneda(q.ideal(), c).0).collect();
        QuotientHomology { quotient: q.clone(), bound, left, right_modules }
    }

    /// `EXT^i(C/I, M)` as a dimension vector for every `0 ≤ i ≤ bound`.
    pub fn ext_table(&self, m: &FModule) -> Result<Vec<Vec<usize>>> {
        let per_c = self.left.iter().map(|r| ext_from_resolution(r, m, self.bound)).collect::<Result<Vec<_>>>()?;
        Ok((0..=self.bound).map(|i| per_c.iter().map(|t| t.dims[i]).collect()).collect())
    }

    /// `TOR_i(C/I, M)` as a dimension vector for every `0 ≤ i ≤ bound`.
    pub fn tor_table(&self, m: &FModule) -> Result<Vec<Vec<usize>>> {
        let res = projective_resolution(m, self.bound + 1);
        let per_c = self
            .right_modules
            .iter()
            .map(|nm| tor_from_resolution(nm, &res, self.bound))
            .collect::<Result<Vec<_>>>()?;
        Ok((0..=self.bound).map(|i| per_c.iter().map(|t| t.dims[i]).collect()).collect())
    }
}

pub fn ext_of_quotient(q: &QuotientCategory, m: &FModule, i: usize) -> Result<Vec<usize>> {
    Ok(QuotientHomology::new(q, i).ext_table(m)?.swap_remove(i))
}

pub fn tor_of_quotient(q: &QuotientCategory, m: &FModule, i: usize) -> Result<Vec<usize>> {
    Ok(QuotientHomology::new(q, i).tor_table(m)?.swap_remove(i))
}

/// Homology dims of `π^*` applied termwise to a projective resolution,
/// in degrees `1..=k` (degree `i` at index `i-1`).
pub fn pi_star_homology(q: &QuotientCategory, res: &Resolution, k: usize) -> Result<Vec<usize>> {
    let maps = (1..res.terms.len()).map(|i| q.pi_star_map(&res.maps[i])).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for i in 1..=k {
        let Some(t) = res.terms.get(i) else {
            out.push(0);
            continue;
        };
        let term = q.pi_star(t)?.0;
        let mut h = 0;
        for v in 0..term.dims().len() {
            let dim = term.dim(v);
            let out_rank = maps.get(i - 1).map_or(0, |m| m.comp(v).rank());
            let in_rank = maps.get(i).map_or(0, |m| m.comp(v).rank());
            h += dim - out_rank - in_rank;
        }
        out.push(h);
    }
    Ok(out)
}

/// Cohomology dims of `π^!` applied termwise to an injective coresolution,
/// in degrees `1..=k`.
pub fn pi_shriek_cohomology(q: &QuotientCategory, res: &Resolution, k: usize) -> Result<Vec<usize>> {
    let maps = (1..res.terms.len()).map(|i| q.pi_shriek_map(&res.maps[i])).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for i in 1..=k {
        let Some(t) = res.terms.get(i) else {
            out.push(0);
            continue;
        };
        let term = q.pi_shriek(t)?.0;
        let mut h = 0;
        for v in 0..term.dims().len() {
            let dim = term.dim(v);
            let out_rank = maps.get(i).map_or(0, |m| m.comp(v).rank());
            let in_rank = maps.get(i - 1).map_or(0, |m| m.comp(v).rank());
            h += dim - out_rank - in_rank;
        }
        out.push(h);
    }
    Ok(out)
}

/// A named module used as a test input.
#[derive(Clone, Debug)]
pub struct BatteryModule {
    pub name: String,
    pub module: FModule,
}

/// Simples, indecomposable projectives and injectives, and random modules.
pub fn module_battery(cat: &Arc<PathCategory>, seed: u64, randoms: usize) -> Vec<BatteryModule> {
    let mut out = Vec::new();
    let live: Vec<usize> = (0..cat.vertex_count()).filter(|&v| !cat.is_zero_object(v)).collect();
    let name = |p: &str, v: usize| format!("{p}{}", cat.vertices()[v]);
    for &v in &live {
        out.push(BatteryModule { name: name("S", v), module: simple(cat, v) });
    }
    for &v in &live {
        out.push(BatteryModule { name: name("P", v), module: yoneda_projective(cat, v) });
    }
    for &v in &live {
        out.push(BatteryModule { name: name("I", v), module: indecomposable_injective(cat, v) });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for r in 0..randoms {
        out.push(BatteryModule { name: format!("R{r}"), module: random_module(cat, &mut rng) });
    }
    out
}

/// The battery of `mod(C/I)`, pushed to `mod(C)`.
pub fn quotient_battery(q: &QuotientCategory, seed: u64, randoms: usize) -> Result<Vec<BatteryModule>> {
    module_battery(q.quotient(), seed, randoms)
        .into_iter()
        .map(|b| Ok(BatteryModule { name: b.name, module: q.pi_push(&b.module)? }))
        .collect()
}

/// The trace ideal of a bundle with everything needed for membership tests.
#[derive(Clone, Debug)]
pub struct TraceContext {
    pub bundle: ProjBundle,
    pub quotient: QuotientCategory,
    /// `π_* D Hom_{C/I}(-, v)` for every vertex.
    pub pushed_injectives: Vec<FModule>,
    /// `Hom_C(v, -)/I(v, -)` for every vertex.
    pub pushed_projectives: Vec<FModule>,
}

impl TraceContext {
    pub fn new(cat: &Arc<PathCategory>, bundle: &ProjBundle) -> Self {
        let ideal = Ideal::trace_ideal(cat, bundle);
        let quotient = QuotientCategory::new(&ideal);
        let n = cat.vertex_count();
        let pushed_injectives = (0..n).map(|v| dualize(&coquotient_yoneda(&ideal, v).0)).collect();
        let pushed_projectives = (0..n).map(|v| quotient_yoneda(&ideal, v).0).collect();
        TraceContext { bundle: bundle.clone(), quotient, pushed_injectives, pushed_projectives }
    }

    pub fn category(&self) -> &Arc<PathCategory> {
        self.quotient.base()
    }

    pub fn ideal(&self) -> &Ideal {
        self.quotient.ideal()
    }
}

/// Direct and criterial `P_k` verdicts from an existing resolution of `X`.
fn pk_verdicts(ctx: &TraceContext, res: &Resolution, k: usize) -> Result<(bool, bool)> {
    let support = ctx.bundle.support();
    let direct = (0..=k).all(|i| res.term_vertices(i).iter().all(|v| support.contains(v)));
    let mut criterial = true;
    for j in &ctx.pushed_injectives {
        if j.is_zero() {
            continue;
        }
        if ext_from_resolution(res, j, k)?.dims.iter().any(|&d| d != 0) {
            criterial = false;
            break;
        }
    }
    Ok((direct, criterial))
}

pub fn pk_membership(ctx: &TraceContext, x: &FModule, k: usize) -> Result<bool> {
    let res = projective_resolution(x, k + 1);
    let (direct, criterial) = pk_verdicts(ctx, &res, k)?;
    if direct != criterial {
        return Err(Error::CriteriaMismatch(format!("P_{k}: direct {direct}, criterial {criterial}")));
    }
    Ok(direct)
}

pub fn ik_membership(ctx: &TraceContext, y: &FModule, k: usize) -> Result<bool> {
    let res = injective_coresolution(y, k);
    let support = ctx.bundle.support();
    let direct = (0..=k).all(|i| res.term_vertices(i).iter().all(|v| support.contains(v)));
    let mut criterial = true;
    for p in &ctx.pushed_projectives {
        if p.is_zero() {
            continue;
        }
        if ext(p, y, k)?.dims.iter().any(|&d| d != 0) {
            criterial = false;
            break;
        }
    }
    if direct != criterial {
        return Err(Error::CriteriaMismatch(format!("I_{k}: direct {direct}, criterial {criterial}")));
    }
    Ok(direct)
}

/// Largest `k ≤ bound` with `X ∈ P_k`, or `None` when `X ∉ P_0`.
pub fn pk_level(ctx: &TraceContext, x: &FModule, bound: usize) -> Result<Option<usize>> {
    let res = projective_resolution(x, bound + 1);
    let mut last = None;
    for k in 0..=bound {
        let (d, c) = pk_verdicts(ctx, &res, k)?;
        if d != c {
            return Err(Error::CriteriaMismatch(format!("P_{k}: direct {d}, criterial {c}")));
        }
        if !d {
            break;
        }
        last = Some(k);
    }
    Ok(last)
}

/// Largest `k ≤ bound` with `Y ∈ I_k`, or `None` when `Y ∉ I_0`.
pub fn ik_level(ctx: &TraceContext, y: &FModule, bound: usize) -> Result<Option<usize>> {
    let res = injective_coresolution(y, bound);
    let support = ctx.bundle.support();
    let projectives: Vec<Resolution> = ctx
        .pushed_projectives
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| projective_resolution(p, bound + 1))
        .collect();
    let tables = projectives.iter().map(|r| ext_from_resolution(r, y, bound)).collect::<Result<Vec<_>>>()?;
    let mut last = None;
    for k in 0..=bound {
        let d = res.term_vertices(k).iter().all(|v| support.contains(v));
        let c = tables.iter().all(|t| t.dims[k] == 0);
        if d != c {
            return Err(Error::CriteriaMismatch(format!("I_{k}: direct {d}, criterial {c}")));
        }
        if !d {
            break;
        }
        last = Some(k);
    }
    Ok(last)
}

/// `Some(true)` when `X ∈ P_∞` is certified, `Some(false)` when refuted,
/// `None` when the resolution does not finish within `bound`.
pub fn in_p_infinity(ctx: &TraceContext, x: &FModule, bound: usize) -> Option<bool> {
    let res = projective_resolution(x, bound);
    let support = ctx.bundle.support();
    let inside = (0..res.terms.len()).all(|i| res.term_vertices(i).iter().all(|v| support.contains(v)));
    if !inside {
        Some(false)
    } else if res.complete {
        Some(true)
    } else {
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KVerdict {
    pub k: usize,
    /// EXT vanishing on pushed injectives of `mod(C/I)`.
    pub injectives: bool,
    /// EXT vanishing on the pushed battery.
    pub battery: bool,
    /// TOR vanishing on pushed projectives of `mod(C/I)`.
    pub tor: bool,
    /// `I(c, -) ∈ P_{k-1}` for every `c`; trace ideals only.
    pub trace: Option<bool>,
}

impl KVerdict {
    pub fn concordant(&self) -> bool {
        self.battery == self.injectives && self.tor == self.injectives && self.trace.is_none_or(|t| t == self.injectives)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelReport {
    pub kmax: usize,
    pub level: usize,
    pub verdicts: Vec<KVerdict>,
    pub global_dimension: GlobalDimension,
    /// `level = kmax` and `kmax ≥ gl.dim`, so every `Ext` is covered.
    pub strongly_idempotent: bool,
    pub ideal_squares_to_itself: bool,
}

fn vanishes_from_one(table: &[Vec<usize>], k: usize) -> bool {
    table.iter().take(k + 1).skip(1).all(|row| row.iter().all(|&d| d == 0))
}

/// Idempotency level of `I` up to `kmax`, with every criterion evaluated.
///
/// `trace` carries the bundle when `I` is its trace ideal, enabling the
/// `P_k` criterion.
pub fn idempotency_level(
    q: &QuotientCategory,
    kmax: usize,
    trace: Option<&TraceContext>,
    seed: u64,
) -> Result<LevelReport> {
    let kmax = kmax.max(1);
    let qh = QuotientHomology::new(q, kmax);
    let n = q.base().vertex_count();
    let injectives: Vec<FModule> =
        (0..n).map(|v| q.pi_push(&q.quotient_injective(v))).collect::<Result<_>>()?;
    let projectives: Vec<FModule> =
        (0..n).map(|v| q.pi_push(&q.quotient_projective(v))).collect::<Result<_>>()?;
    let battery = quotient_battery(q, seed, 5)?;

    let inj_tables = injectives.iter().map(|m| qh.ext_table(m)).collect::<Result<Vec<_>>>()?;
    let bat_tables = battery.iter().map(|b| qh.ext_table(&b.module)).collect::<Result<Vec<_>>>()?;
    let tor_tables = projectives.iter().map(|m| qh.tor_table(m)).collect::<Result<Vec<_>>>()?;
    let trace_levels = match trace {
        Some(ctx) => Some(
            (0..n)
                .map(|c| pk_level(ctx, &ideal_as_module(ctx.ideal(), c).0, kmax - 1))
                .collect::<Result<Vec<_>>>()?,
        ),
        None => None,
    };

    let mut verdicts = Vec::new();
    for k in 1..=kmax {
        let trace_ok = trace_levels.as_ref().map(|levels| {
            levels.iter().all(|l| l.is_some_and(|top| top >= k - 1))
        });
        let v = KVerdict {
            k,
            injectives: inj_tables.iter().all(|t| vanishes_from_one(t, k)),
            battery: bat_tables.iter().all(|t| vanishes_from_one(t, k)),
            tor: tor_tables.iter().all(|t| vanishes_from_one(t, k)),
            trace: trace_ok,
        };
        if !v.concordant() {
            return Err(Error::CriteriaMismatch(format!("idempotency criteria disagree at k = {k}: {v:?}")));
        }
        verdicts.push(v);
    }
    let level = verdicts.iter().take_while(|v| v.injectives).count();
    let global_dimension = global_dimension(q.base(), kmax);
    let strongly_idempotent =
        level == kmax && matches!(global_dimension, GlobalDimension::Exact(g) if g <= kmax);
    Ok(LevelReport {
        kmax,
        level,
        verdicts,
        global_dimension,
        strongly_idempotent,
        ideal_squares_to_itself: q.ideal().is_idempotent(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Field;
    use crate::pathcat::{build_path_category, Quiver, Relation};

    fn line(n: usize, rad2: bool) -> Arc<PathCategory> {
        let vs: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let arrows: Vec<(String, String, String)> =
            (1..n).map(|i| (format!("a{i}"), i.to_string(), (i + 1).to_string())).collect();
        let q = Quiver::new(&vs, &arrows).unwrap();
        let one = Field::Rationals.one();
        let rels: Vec<Relation> = if rad2 {
            (1..n - 1)
                .map(|i| Relation::from_names(&q, &[(one.clone(), vec![format!("a{}", i + 1), format!("a{i}")])]).unwrap())
                .collect()
        } else {
            Vec::new()
        };
        build_path_category(&q, &rels, Field::Rationals, n.max(2)).unwrap()
    }

    #[test]
    fn z6_resolution_of_s1() {
        let z6 = line(6, true);
        let r = projective_resolution(&simple(&z6, 0), 6);
        assert!(r.complete);
        assert_eq!(r.length(), Some(5));
        for i in 0..6 {
            assert_eq!(r.term_vertices(i), &[i]);
        }
        let p = projective_resolution(&yoneda_projective(&z6, 2), 3);
        assert_eq!(p.length(), Some(0));
        let inj = injective_coresolution(&simple(&z6, 5), 6);
        assert_eq!(inj.length(), Some(5));
        assert_eq!(injective_coresolution(&simple(&z6, 0), 3).length(), Some(0));
    }

    #[test]
    fn hereditary_resolution() {
        let a3 = line(3, false);
        let r = projective_resolution(&simple(&a3, 0), 3);
        assert_eq!(r.length(), Some(1));
        assert_eq!(r.term_vertices(1), &[1]);
        assert_eq!(global_dimension(&a3, 4), GlobalDimension::Exact(1));
        assert_eq!(global_dimension(&line(6, true), 6), GlobalDimension::Exact(5));
        assert_eq!(global_dimension(&line(6, true), 3), GlobalDimension::ExceedsBound);
    }

    #[test]
    fn z6_ext_values() {
        let z6 = line(6, true);
        assert_eq!(ext(&simple(&z6, 0), &simple(&z6, 1), 2).unwrap().dims, vec![0, 1, 0]);
        assert_eq!(ext(&simple(&z6, 0), &simple(&z6, 3), 3).unwrap().dims, vec![0, 0, 0, 1]);
        assert_eq!(ext_via_injectives(&simple(&z6, 0), &simple(&z6, 3), 3).unwrap().dims, vec![0, 0, 0, 1]);
        let p = yoneda_projective(&z6, 1);
        assert_eq!(ext(&p, &simple(&z6, 1), 3).unwrap().dims, vec![1, 0, 0, 0]);
    }

    #[test]
    fn z6_levels() {
        let z6 = line(6, true);
        let seed = DEFAULT_SEED;
        let ctx = TraceContext::new(&z6, &ProjBundle { vertices: vec![1, 2] });
        let r = idempotency_level(&ctx.quotient, 6, Some(&ctx), seed).unwrap();
        assert_eq!(r.level, 2);
        let ctx = TraceContext::new(&z6, &ProjBundle { vertices: vec![0, 1, 2] });
        let r = idempotency_level(&ctx.quotient, 6, Some(&ctx), seed).unwrap();
        assert_eq!(r.level, 6);
        assert!(r.strongly_idempotent);
    }

    #[test]
    fn pk_examples() {
        let z6 = line(6, true);
        let ctx = TraceContext::new(&z6, &ProjBundle { vertices: vec![1, 2] });
        let s2 = simple(&z6, 1);
        assert!(pk_membership(&ctx, &s2, 1).unwrap());
        assert!(!pk_membership(&ctx, &s2, 2).unwrap());
        assert!(pk_membership(&ctx, &yoneda_projective(&z6, 2), 5).unwrap());
    }
}
