//! The algebra `R_P = End(P)^op`, its finite-dimensional modules, the
//! functors `hom_P`, `P ⊗_{R_P} -` and `Hom_{R_P}(P*, -)`, and the reports
//! built on them.
//!
//! Elements of `R_P` and of `hom_P(M) = Hom(P, M)` are written in Yoneda
//! coordinates: a map out of `P = ⊕_j Hom_C(v_j, -)` is the list of its
//! values on the generators, an element of `⊕_j M(v_j)`.

use crate::error::{Error, Result};
use crate::exactlin::{Field, Mat, Scalar, Subspace};
use crate::funmod::{
    bundle_generator, bundle_offsets, hom_modules, precompose_matrix, radical_subspaces, realize_bundle,
    yoneda_coords, yoneda_map, yoneda_projective, FMap, FModule, ProjBundle,
};
use crate::homology::{
    cohomology_dims, ik_level, in_p_infinity, module_battery, pk_level, projective_dimension, BatteryModule,
    ExtTable, GlobalDimension, LevelReport, TraceContext,
};
use crate::ideals::{bundle_trace, ideal_as_module, pi_triangles, QuotientCategory};
use crate::pathcat::{same_category, PathCategory};
use serde::Serialize;
use std::fmt;
use std::sync::Arc;

pub struct EndoAlgebra {
    cat: Arc<PathCategory>,
    bundle: ProjBundle,
    realized: FModule,
    labels: Vec<String>,
    mult: Vec<Vec<Vec<Scalar>>>,
    unit: Vec<Scalar>,
    endos: Vec<FMap>,
    radical: Subspace,
    idempotents: Vec<Vec<Scalar>>,
    reps: Vec<usize>,
}

impl fmt::Debug for EndoAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EndoAlgebra(dim {}, bundle {:?})", self.dim(), self.bundle.vertices)
    }
}

/// `R_P = End(P)^op`: the product `a * b` is the composite `e_b ∘ e_a`.
pub fn endomorphism_algebra(cat: &Arc<PathCategory>, bundle: &ProjBundle) -> Result<Arc<EndoAlgebra>> {
    if bundle.is_empty() {
        return Err(Error::EmptyBundle);
    }
    let field = cat.field();
    let realized = realize_bundle(cat, bundle).module;
    let blocks: Vec<usize> = bundle.vertices.iter().map(|&v| realized.dim(v)).collect();
    let dim: usize = blocks.iter().sum();
    let split = |coords: &[Scalar]| -> Vec<Vec<Scalar>> {
        let mut out = Vec::new();
        let mut off = 0;
        for &b in &blocks {
            out.push(coords[off..off + b].to_vec());
            off += b;
        }
        out
    };
    let mut endos = Vec::with_capacity(dim);
    let mut labels = Vec::with_capacity(dim);
    for b in 0..dim {
        let mut e = vec![field.zero(); dim];
        e[b] = field.one();
        endos.push(yoneda_map(cat, bundle, &realized, &realized, &split(&e)));
    }
    for (j, &v) in bundle.vertices.iter().enumerate() {
        let offs = bundle_offsets(cat, bundle, v);
        for (k, &w) in bundle.vertices.iter().enumerate() {
            for (t, l) in cat.basis_labels(w, v).into_iter().enumerate() {
                debug_assert!(offs[k] + t < offs[k + 1]);
                labels.push(format!("{l}[{k}>{j}]"));
            }
        }
    }
    let mult = (0..dim)
        .map(|a| (0..dim).map(|b| yoneda_coords(bundle, &endos[b].after(&endos[a]))).collect())
        .collect();
    let mut unit = Vec::with_capacity(dim);
    let mut idempotents = Vec::new();
    let mut off = 0;
    for j in 0..bundle.vertices.len() {
        let g = bundle_generator(cat, bundle, j);
        let mut e = vec![field.zero(); dim];
        e[off..off + g.len()].clone_from_slice(&g);
        idempotents.push(e);
        unit.extend(g);
        off += blocks[j];
    }
    let rad = radical_subspaces(&realized);
    let mut rad_vectors = Vec::new();
    let mut off = 0;
    for (j, &v) in bundle.vertices.iter().enumerate() {
        for r in rad[v].vectors() {
            let mut e = vec![field.zero(); dim];
            e[off..off + r.len()].clone_from_slice(&r);
            rad_vectors.push(e);
        }
        off += blocks[j];
    }
    let radical = Subspace::span(field, dim, &rad_vectors);
    let mut reps: Vec<usize> = Vec::new();
    for (j, &v) in bundle.vertices.iter().enumerate() {
        if !reps.iter().any(|&r| bundle.vertices[r] == v) {
            reps.push(j);
        }
    }
    Ok(Arc::new(EndoAlgebra {
        cat: cat.clone(),
        bundle: bundle.clone(),
        realized,
        labels,
        mult,
        unit,
        endos,
        radical,
        idempotents,
        reps,
    }))
}

impl EndoAlgebra {
    pub fn dim(&self) -> usize {
        self.unit.len()
    }

    pub fn field(&self) -> Field {
        self.cat.field()
    }

    pub fn category(&self) -> &Arc<PathCategory> {
        &self.cat
    }

    pub fn bundle(&self) -> &ProjBundle {
        &self.bundle
    }

    /// `P` as a `C`-module.
    pub fn realized(&self) -> &FModule {
        &self.realized
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn mult(&self, a: usize, b: usize) -> &[Scalar] {
        &self.mult[a][b]
    }

    /// The endomorphism of `P` behind basis element `b`.
    pub fn endo(&self, b: usize) -> &FMap {
        &self.endos[b]
    }

    /// Jacobson radical, the endomorphisms with image in `rad P`.
    pub fn radical(&self) -> &Subspace {
        &self.radical
    }

    /// Projection onto the `j`-th summand of `P`.
    pub fn idempotent(&self, j: usize) -> &[Scalar] {
        &self.idempotents[j]
    }

    /// One summand index per distinct vertex of the bundle.
    pub fn representatives(&self) -> &[usize] {
        &self.reps
    }

    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let f = self.field();
        let mut out = vec![f.zero(); self.dim()];
        for (a, xa) in x.iter().enumerate().filter(|(_, s)| !num_traits::Zero::is_zero(*s)) {
            for (b, yb) in y.iter().enumerate().filter(|(_, s)| !num_traits::Zero::is_zero(*s)) {
                let c = f.mul(xa, yb);
                for (o, m) in out.iter_mut().zip(&self.mult[a][b]) {
                    *o = f.mul_add(o, &c, m);
                }
            }
        }
        out
    }

    fn basis_vector(&self, b: usize) -> Vec<Scalar> {
        let f = self.field();
        let mut e = vec![f.zero(); self.dim()];
        e[b] = f.one();
        e
    }

    /// Exhaustive check of associativity and unitality on basis triples.
    pub fn check_axioms(&self) -> bool {
        let d = self.dim();
        for a in 0..d {
            let ea = self.basis_vector(a);
            if self.multiply(&self.unit, &ea) != ea || self.multiply(&ea, &self.unit) != ea {
                return false;
            }
            for b in 0..d {
                let ab = &self.mult[a][b];
                for c in 0..d {
                    let ec = self.basis_vector(c);
                    let left = self.multiply(ab, &ec);
                    let right = self.multiply(&ea, &self.mult[b][c]);
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Matrix of `y ↦ x * y` for the basis element `x = e_a`.
    fn left_matrix(&self, a: usize) -> Mat {
        Mat::from_columns(self.field(), self.dim(), &self.mult[a])
    }

    /// Matrix of `y ↦ y * e_a`.
    fn right_matrix(&self, a: usize) -> Mat {
        let cols: Vec<Vec<Scalar>> = (0..self.dim()).map(|b| self.mult[b][a].clone()).collect();
        Mat::from_columns(self.field(), self.dim(), &cols)
    }
}

/// A finite-dimensional left `R_P`-module, one matrix per basis element.
#[derive(Clone)]
pub struct AlgModule {
    alg: Arc<EndoAlgebra>,
    dim: usize,
    action: Vec<Mat>,
}

impl fmt::Debug for AlgModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgModule(dim {})", self.dim)
    }
}

impl PartialEq for AlgModule {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.alg, &other.alg) && self.dim == other.dim && self.action == other.action
    }
}

impl AlgModule {
    pub fn new(alg: &Arc<EndoAlgebra>, dim: usize, action: Vec<Mat>) -> Result<Self> {
        if action.len() != alg.dim() || action.iter().any(|a| a.rows() != dim || a.cols() != dim) {
            return Err(Error::InvalidModule("action matrices have the wrong shape".into()));
        }
        let m = AlgModule { alg: alg.clone(), dim, action };
        if !m.act(alg.unit()).is_identity() && dim > 0 {
            return Err(Error::InvalidModule("unit does not act as the identity".into()));
        }
        for a in 0..alg.dim() {
            for b in 0..alg.dim() {
                if m.act(alg.mult(a, b)) != m.action[a].mul(&m.action[b]) {
                    return Err(Error::InvalidModule(format!("action does not respect the product of {a} and {b}")));
                }
            }
        }
        Ok(m)
    }

    fn new_unchecked(alg: &Arc<EndoAlgebra>, dim: usize, action: Vec<Mat>) -> Self {
        AlgModule { alg: alg.clone(), dim, action }
    }

    pub fn zero(alg: &Arc<EndoAlgebra>) -> Self {
        let f = alg.field();
        AlgModule::new_unchecked(alg, 0, vec![Mat::zeros(f, 0, 0); alg.dim()])
    }

    /// `R_P` acting on itself by left multiplication.
    pub fn regular(alg: &Arc<EndoAlgebra>) -> Self {
        let action = (0..alg.dim()).map(|a| alg.left_matrix(a)).collect();
        AlgModule::new_unchecked(alg, alg.dim(), action)
    }

    /// `D(R_P)`, with `(r φ)(s) = φ(s r)`.
    pub fn dual_regular(alg: &Arc<EndoAlgebra>) -> Self {
        let action = (0..alg.dim()).map(|a| alg.right_matrix(a).transpose()).collect();
        AlgModule::new_unchecked(alg, alg.dim(), action)
    }

    pub fn algebra(&self) -> &Arc<EndoAlgebra> {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn action(&self, b: usize) -> &Mat {
        &self.action[b]
    }

    /// Action of an arbitrary element of `R_P`.
    pub fn act(&self, r: &[Scalar]) -> Mat {
        let f = self.alg.field();
        let mut out = Mat::zeros(f, self.dim, self.dim);
        for (b, c) in r.iter().enumerate() {
            if !num_traits::Zero::is_zero(c) {
                out = out.add(&self.action[b].scale(c));
            }
        }
        out
    }

    fn same_algebra(&self, other: &AlgModule) -> Result<()> {
        if Arc::ptr_eq(&self.alg, &other.alg) {
            Ok(())
        } else {
            Err(Error::CategoryMismatch)
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlgMap {
    source: AlgModule,
    target: AlgModule,
    mat: Mat,
}

impl AlgMap {
    pub fn new(source: &AlgModule, target: &AlgModule, mat: Mat) -> Result<Self> {
        source.same_algebra(target)?;
        if mat.rows() != target.dim || mat.cols() != source.dim {
            return Err(Error::InvalidMap("matrix has the wrong shape".into()));
        }
        let f = AlgMap { source: source.clone(), target: target.clone(), mat };
        if !f.is_linear() {
            return Err(Error::InvalidMap("map is not R_P-linear".into()));
        }
        Ok(f)
    }

    fn new_unchecked(source: &AlgModule, target: &AlgModule, mat: Mat) -> Self {
        AlgMap { source: source.clone(), target: target.clone(), mat }
    }

    pub fn is_linear(&self) -> bool {
        (0..self.source.alg.dim())
            .all(|b| self.mat.mul(&self.source.action[b]) == self.target.action[b].mul(&self.mat))
    }

    pub fn identity(m: &AlgModule) -> Self {
        AlgMap::new_unchecked(m, m, Mat::identity(m.alg.field(), m.dim))
    }

    pub fn source(&self) -> &AlgModule {
        &self.source
    }

    pub fn target(&self) -> &AlgModule {
        &self.target
    }

    pub fn matrix(&self) -> &Mat {
        &self.mat
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &AlgMap) -> AlgMap {
        AlgMap::new_unchecked(&f.source, &self.target, self.mat.mul(&f.mat))
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.mat.is_identity()
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }
}

/// `Hom_{R_P}(X, Y)` as a space of matrices.
#[derive(Clone, Debug)]
pub struct AlgHom {
    source: AlgModule,
    target: AlgModule,
    space: Subspace,
    basis: Vec<Mat>,
}

impl AlgHom {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_matrices(&self) -> &[Mat] {
        &self.basis
    }

    pub fn basis(&self) -> Vec<AlgMap> {
        self.basis.iter().map(|m| AlgMap::new_unchecked(&self.source, &self.target, m.clone())).collect()
    }

    pub fn coords_of(&self, m: &Mat) -> Vec<Scalar> {
        self.space.coords(m.entries())
    }

    pub fn contains(&self, m: &Mat) -> bool {
        self.space.contains(m.entries())
    }
}

pub fn hom_alg(x: &AlgModule, y: &AlgModule) -> Result<AlgHom> {
    x.same_algebra(y)?;
    let f = x.alg.field();
    let (nx, ny) = (x.dim, y.dim);
    let n = nx * ny;
    let eqs: Vec<Mat> = (0..x.alg.dim())
        .map(|b| Mat::identity(f, ny).kron(&x.action[b].transpose()).sub(&y.action[b].kron(&Mat::identity(f, nx))))
        .collect();
    let space = if n == 0 || eqs.is_empty() {
        Subspace::full(f, n)
    } else {
        let refs: Vec<&Mat> = eqs.iter().collect();
        Mat::vstack(&refs).kernel_basis()
    };
    let basis = space.vectors().into_iter().map(|v| Mat::from_vec(f, ny, nx, v)).collect();
    Ok(AlgHom { source: x.clone(), target: y.clone(), space, basis })
}

/// Restriction to an `R_P`-stable subspace, with the inclusion.
pub fn alg_submodule(x: &AlgModule, sub: &Subspace) -> (AlgModule, AlgMap) {
    let inc = sub.inclusion();
    let cm = sub.coords_map();
    let action = x.action.iter().map(|a| cm.mul(a).mul(&inc)).collect();
    let s = AlgModule::new_unchecked(&x.alg, sub.dim(), action);
    let map = AlgMap::new_unchecked(&s, x, inc);
    (s, map)
}

pub fn alg_quotient(x: &AlgModule, sub: &Subspace) -> (AlgModule, AlgMap) {
    let q = sub.quotient_map();
    let s = sub.quotient_section();
    let action = x.action.iter().map(|a| q.mul(a).mul(&s)).collect();
    let m = AlgModule::new_unchecked(&x.alg, q.rows(), action);
    let map = AlgMap::new_unchecked(x, &m, q);
    (m, map)
}

pub fn alg_kernel(f: &AlgMap) -> (AlgModule, AlgMap) {
    alg_submodule(&f.source, &f.mat.kernel_basis())
}

/// `J X`, with `J` the radical of `R_P`.
pub fn alg_radical(x: &AlgModule) -> Subspace {
    let f = x.alg.field();
    let mut vecs = Vec::new();
    for r in x.alg.radical.vectors() {
        vecs.extend(x.act(&r).image_basis().vectors());
    }
    Subspace::span(f, x.dim, &vecs)
}

/// The indecomposable projective `R_P ε_j`.
pub fn alg_projective(alg: &Arc<EndoAlgebra>, j: usize) -> (AlgModule, Subspace) {
    let e = alg.idempotent(j).to_vec();
    let vecs: Vec<Vec<Scalar>> = (0..alg.dim()).map(|b| alg.multiply(&alg.basis_vector(b), &e)).collect();
    let sub = Subspace::span(alg.field(), alg.dim(), &vecs);
    (alg_submodule(&AlgModule::regular(alg), &sub).0, sub)
}

/// The simple top of `R_P ε_j`.
pub fn alg_simple(alg: &Arc<EndoAlgebra>, j: usize) -> AlgModule {
    let (p, _) = alg_projective(alg, j);
    alg_quotient(&p, &alg_radical(&p)).0
}

#[derive(Clone, Debug)]
pub struct AlgCover {
    /// `(summand index, generator)` pairs.
    pub generators: Vec<(usize, Vec<Scalar>)>,
    pub module: AlgModule,
    pub map: AlgMap,
}

pub fn alg_projective_cover(x: &AlgModule) -> AlgCover {
    let alg = &x.alg;
    let f = alg.field();
    let mut acc = alg_radical(x);
    let mut generators = Vec::new();
    for &j in &alg.reps {
        for v in x.act(alg.idempotent(j)).image_basis().vectors() {
            if !acc.contains(&v) {
                acc = acc.sum(&Subspace::span(f, x.dim, std::slice::from_ref(&v))).expect("same ambient");
                generators.push((j, v));
            }
        }
    }
    let mut blocks = Vec::new();
    let mut images: Vec<Vec<Scalar>> = Vec::new();
    for (j, g) in &generators {
        let (p, sub) = alg_projective(alg, *j);
        for w in sub.vectors() {
            images.push(x.act(&w).mul_vec(g));
        }
        blocks.push(p);
    }
    let module = alg_direct_sum(alg, &blocks);
    let mat = if images.is_empty() { Mat::zeros(f, x.dim, 0) } else { Mat::from_columns(f, x.dim, &images) };
    let map = AlgMap::new_unchecked(&module, x, mat);
    debug_assert_eq!(map.mat.rank(), x.dim, "cover not surjective");
    AlgCover { generators, module, map }
}

pub fn alg_direct_sum(alg: &Arc<EndoAlgebra>, parts: &[AlgModule]) -> AlgModule {
    let f = alg.field();
    let dim = parts.iter().map(|p| p.dim).sum();
    let action = (0..alg.dim())
        .map(|b| {
            let refs: Vec<&Mat> = parts.iter().map(|p| &p.action[b]).collect();
            Mat::block_diag(f, &refs)
        })
        .collect();
    AlgModule::new_unchecked(alg, dim, action)
}

#[derive(Clone, Debug)]
pub struct AlgResolution {
    pub terms: Vec<AlgModule>,
    /// `maps[0] : P_0 → X`, `maps[i] : P_i → P_{i-1}`.
    pub maps: Vec<AlgMap>,
    pub complete: bool,
}

impl AlgResolution {
    pub fn length(&self) -> Option<usize> {
        if self.complete {
            Some(self.terms.iter().rposition(|t| !t.is_zero()).unwrap_or(0))
        } else {
            None
        }
    }
}

pub fn alg_projective_resolution(x: &AlgModule, n: usize) -> AlgResolution {
    let c = alg_projective_cover(x);
    let mut terms = vec![c.module.clone()];
    let mut maps = vec![c.map.clone()];
    let (mut syz, mut incl) = alg_kernel(&c.map);
    for _ in 1..=n {
        if syz.is_zero() {
            break;
        }
        let c = alg_projective_cover(&syz);
        maps.push(incl.after(&c.map));
        let (k, ki) = alg_kernel(&c.map);
        terms.push(c.module);
        syz = k;
        incl = ki;
    }
    AlgResolution { terms, maps, complete: syz.is_zero() }
}

pub fn ext_alg(x: &AlgModule, y: &AlgModule, bound: usize) -> Result<ExtTable> {
    let res = alg_projective_resolution(x, bound + 1);
    let homs = res.terms.iter().take(bound + 2).map(|p| hom_alg(p, y)).collect::<Result<Vec<_>>>()?;
    let dims: Vec<usize> = homs.iter().map(AlgHom::dim).collect();
    let f = x.alg.field();
    let cob: Vec<Mat> = (0..homs.len().saturating_sub(1))
        .map(|i| {
            let d = &res.maps[i + 1].mat;
            let cols: Vec<Vec<Scalar>> = homs[i].basis.iter().map(|phi| homs[i + 1].coords_of(&phi.mul(d))).collect();
            if cols.is_empty() {
                Mat::zeros(f, homs[i + 1].dim(), 0)
            } else {
                Mat::from_columns(f, homs[i + 1].dim(), &cols)
            }
        })
        .collect();
    Ok(ExtTable { dims: cohomology_dims(&dims, &cob, bound) })
}

pub fn pd_alg(x: &AlgModule, bound: usize) -> Option<usize> {
    alg_projective_resolution(x, bound).length()
}

pub fn global_dimension_alg(alg: &Arc<EndoAlgebra>, bound: usize) -> GlobalDimension {
    let mut best = 0;
    for &j in alg.representatives() {
        match pd_alg(&alg_simple(alg, j), bound) {
            Some(d) => best = best.max(d),
            None => return GlobalDimension::ExceedsBound,
        }
    }
    GlobalDimension::Exact(best)
}

fn solve_for_identity(cols: Vec<Vec<Scalar>>, id: &Mat) -> Result<bool> {
    let target = id.entries().to_vec();
    if cols.is_empty() {
        return Ok(target.is_empty());
    }
    let m = Mat::from_columns(id.field(), target.len(), &cols);
    Ok(m.solve(&target)?.is_some())
}

/// Lifting test: the projective cover `P_0 → X` splits.
pub fn is_projective(x: &AlgModule) -> Result<bool> {
    let c = alg_projective_cover(x);
    let h = hom_alg(x, &c.module)?;
    let cols = h.basis.iter().map(|s| c.map.mat.mul(s).entries().to_vec()).collect();
    solve_for_identity(cols, &Mat::identity(x.alg.field(), x.dim))
}

/// Lifting test: the embedding `X → D(R_P)^{dim X}` splits.
pub fn is_injective(x: &AlgModule) -> Result<bool> {
    let alg = &x.alg;
    let f = alg.field();
    let dr = AlgModule::dual_regular(alg);
    let big = alg_direct_sum(alg, &vec![dr; x.dim]);
    let mut rows = Vec::with_capacity(big.dim);
    for l in 0..x.dim {
        for b in 0..alg.dim() {
            rows.push(x.action[b].row(l).to_vec());
        }
    }
    let iota = AlgMap::new_unchecked(x, &big, Mat::from_rows(f, x.dim, &rows));
    debug_assert!(iota.is_linear());
    let h = hom_alg(&big, x)?;
    let cols = h.basis.iter().map(|r| r.mul(&iota.mat).entries().to_vec()).collect();
    solve_for_identity(cols, &Mat::identity(f, x.dim))
}

fn check_category(alg: &EndoAlgebra, m: &FModule) -> Result<()> {
    if same_category(&alg.cat, m.category()) {
        Ok(())
    } else {
        Err(Error::CategoryMismatch)
    }
}

/// `hom_P(M) = Hom(P, M)`, acted on by precomposition.
pub fn hom_p(alg: &Arc<EndoAlgebra>, m: &FModule) -> Result<AlgModule> {
    check_category(alg, m)?;
    let b = &alg.bundle;
    let action: Vec<Mat> = (0..alg.dim())
        .map(|i| {
            let images: Vec<Vec<Scalar>> =
                (0..b.vertices.len()).map(|j| alg.endos[i].comp(b.vertices[j]).mul_vec(&bundle_generator(&alg.cat, b, j))).collect();
            precompose_matrix(&alg.cat, b, &images, b, m)
        })
        .collect();
    let dim = b.vertices.iter().map(|&v| m.dim(v)).sum();
    Ok(AlgModule::new_unchecked(alg, dim, action))
}

pub fn hom_p_map(alg: &Arc<EndoAlgebra>, f: &FMap) -> Result<AlgMap> {
    let s = hom_p(alg, f.source())?;
    let t = hom_p(alg, f.target())?;
    let blocks: Vec<&Mat> = alg.bundle.vertices.iter().map(|&v| f.comp(v)).collect();
    Ok(AlgMap::new_unchecked(&s, &t, Mat::block_diag(alg.field(), &blocks)))
}

/// The map `P → M` with the given Yoneda coordinates.
pub fn hom_p_element(alg: &Arc<EndoAlgebra>, m: &FModule, coords: &[Scalar]) -> FMap {
    let mut images = Vec::new();
    let mut off = 0;
    for &v in &alg.bundle.vertices {
        images.push(coords[off..off + m.dim(v)].to_vec());
        off += m.dim(v);
    }
    yoneda_map(&alg.cat, &alg.bundle, &alg.realized, m, &images)
}

/// `P ⊗_{R_P} X`, with the quotient maps `P(c) ⊗ X → (P ⊗ X)(c)` and sections.
#[derive(Clone, Debug)]
pub struct PTensor {
    pub module: FModule,
    pub quotients: Vec<Mat>,
    pub sections: Vec<Mat>,
}

pub fn p_tensor(alg: &Arc<EndoAlgebra>, x: &AlgModule) -> Result<PTensor> {
    if !Arc::ptr_eq(alg, &x.alg) {
        return Err(Error::CategoryMismatch);
    }
    let f = alg.field();
    let cat = &alg.cat;
    let n = x.dim;
    let mut quotients = Vec::new();
    let mut sections = Vec::new();
    for c in 0..cat.vertex_count() {
        let p = alg.realized.dim(c);
        let gens: Vec<Vec<Scalar>> = (0..alg.dim())
            .flat_map(|i| {
                let rel = alg.endos[i].comp(c).kron(&Mat::identity(f, n)).sub(&Mat::identity(f, p).kron(&x.action[i]));
                (0..rel.cols()).map(move |col| rel.column(col))
            })
            .collect();
        let rels = Subspace::span(f, p * n, &gens);
        quotients.push(rels.quotient_map());
        sections.push(rels.quotient_section());
    }
    let action = cat
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arrow)| {
            let (s, t) = (arrow.source, arrow.target);
            quotients[t].mul(&alg.realized.action(a).kron(&Mat::identity(f, n))).mul(&sections[s])
        })
        .collect();
    let dims = quotients.iter().map(Mat::rows).collect();
    let module = FModule::new(cat.clone(), dims, action)?;
    Ok(PTensor { module, quotients, sections })
}

pub fn p_tensor_map(alg: &Arc<EndoAlgebra>, f: &AlgMap, src: &PTensor, tgt: &PTensor) -> FMap {
    let fl = alg.field();
    let comps = (0..alg.cat.vertex_count())
        .map(|c| {
            let p = alg.realized.dim(c);
            tgt.quotients[c].mul(&Mat::identity(fl, p).kron(&f.mat)).mul(&src.sections[c])
        })
        .collect();
    FMap::new_unchecked(src.module.clone(), tgt.module.clone(), comps)
}

/// `P*(c) = hom_P(Hom_C(c, -))`.
pub fn pstar(alg: &Arc<EndoAlgebra>, c: usize) -> AlgModule {
    hom_p(alg, &yoneda_projective(&alg.cat, c)).expect("same category")
}

/// `Hom_{R_P}(P*, X)` with the solution spaces at each vertex.
#[derive(Clone, Debug)]
pub struct HomPStar {
    pub module: FModule,
    pub spaces: Vec<AlgHom>,
}

pub fn hom_pstar(alg: &Arc<EndoAlgebra>, x: &AlgModule) -> Result<HomPStar> {
    if !Arc::ptr_eq(alg, &x.alg) {
        return Err(Error::CategoryMismatch);
    }
    let cat = &alg.cat;
    let f = alg.field();
    let spaces = (0..cat.vertex_count()).map(|c| hom_alg(&pstar(alg, c), x)).collect::<Result<Vec<_>>>()?;
    let action = cat
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arrow)| {
            let (s, t) = (arrow.source, arrow.target);
            // P*(a) : P*(t) → P*(s)
            let ys = yoneda_projective(cat, s);
            let yt = yoneda_projective(cat, t);
            let tb = ProjBundle { vertices: vec![t] };
            let pull = yoneda_map(cat, &tb, &yt, &ys, &[cat.arrow(a).coords]);
            let pa = hom_p_map(alg, &pull).expect("same category");
            let cols: Vec<Vec<Scalar>> = spaces[s].basis.iter().map(|m| spaces[t].coords_of(&m.mul(&pa.mat))).collect();
            if cols.is_empty() {
                Mat::zeros(f, spaces[t].dim(), 0)
            } else {
                Mat::from_columns(f, spaces[t].dim(), &cols)
            }
        })
        .collect();
    let dims = spaces.iter().map(AlgHom::dim).collect();
    let module = FModule::new(cat.clone(), dims, action)?;
    Ok(HomPStar { module, spaces })
}

pub fn hom_pstar_map(alg: &Arc<EndoAlgebra>, f: &AlgMap, src: &HomPStar, tgt: &HomPStar) -> FMap {
    let fl = alg.field();
    let comps = (0..alg.cat.vertex_count())
        .map(|c| {
            let cols: Vec<Vec<Scalar>> =
                src.spaces[c].basis.iter().map(|m| tgt.spaces[c].coords_of(&f.mat.mul(m))).collect();
            if cols.is_empty() {
                Mat::zeros(fl, tgt.spaces[c].dim(), 0)
            } else {
                Mat::from_columns(fl, tgt.spaces[c].dim(), &cols)
            }
        })
        .collect();
    FMap::new_unchecked(src.module.clone(), tgt.module.clone(), comps)
}

/// Counit `P ⊗ hom_P(M) → M`, `p ⊗ φ ↦ φ(p)`.
pub fn tensor_counit(alg: &Arc<EndoAlgebra>, m: &FModule, hp: &AlgModule, t: &PTensor) -> Result<FMap> {
    let cat = &alg.cat;
    let f = alg.field();
    let b = &alg.bundle;
    let n = hp.dim;
    let mut xo = vec![0];
    for &v in &b.vertices {
        xo.push(xo.last().unwrap() + m.dim(v));
    }
    let comps = (0..cat.vertex_count())
        .map(|c| {
            let offs = bundle_offsets(cat, b, c);
            let p = *offs.last().unwrap();
            let mut big = Mat::zeros(f, m.dim(c), p * n);
            for (k, &v) in b.vertices.iter().enumerate() {
                for t in 0..offs[k + 1] - offs[k] {
                    let act = m.basis_action(v, c, t);
                    for s in 0..m.dim(v) {
                        let col = (offs[k] + t) * n + xo[k] + s;
                        for r in 0..m.dim(c) {
                            big.set(r, col, act.get(r, s).clone());
                        }
                    }
                }
            }
            big.mul(&t.sections[c])
        })
        .collect();
    FMap::new(t.module.clone(), m.clone(), comps)
}

/// Unit `X → hom_P(P ⊗ X)`, `x ↦ (p ↦ p ⊗ x)`.
pub fn tensor_unit(alg: &Arc<EndoAlgebra>, x: &AlgModule, t: &PTensor, hpt: &AlgModule) -> Result<AlgMap> {
    let f = alg.field();
    let b = &alg.bundle;
    let blocks: Vec<Mat> = b
        .vertices
        .iter()
        .enumerate()
        .map(|(j, &v)| {
            let g = Mat::from_columns(f, alg.realized.dim(v), &[bundle_generator(&alg.cat, b, j)]);
            t.quotients[v].mul(&g.kron(&Mat::identity(f, x.dim)))
        })
        .collect();
    let refs: Vec<&Mat> = blocks.iter().collect();
    let mat = if refs.is_empty() { Mat::zeros(f, 0, x.dim) } else { Mat::vstack(&refs) };
    AlgMap::new(x, hpt, mat)
}

/// Unit `M → hom_P*(hom_P M)`, `m ↦ (g ↦ ŷ_m ∘ g)`.
pub fn pstar_unit(alg: &Arc<EndoAlgebra>, m: &FModule, hp: &AlgModule, hs: &HomPStar) -> Result<FMap> {
    let cat = &alg.cat;
    let f = alg.field();
    let b = &alg.bundle;
    let comps = (0..cat.vertex_count())
        .map(|c| {
            let ps_dim: usize = b.vertices.iter().map(|&v| cat.hom_dim(c, v)).sum();
            let cols: Vec<Vec<Scalar>> = (0..m.dim(c))
                .map(|s| {
                    let mut psi = Mat::zeros(f, hp.dim, ps_dim);
                    let (mut row, mut col) = (0, 0);
                    for &v in &b.vertices {
                        for t in 0..cat.hom_dim(c, v) {
                            let img = m.basis_action(c, v, t).column(s);
                            for (r, x) in img.into_iter().enumerate() {
                                psi.set(row + r, col + t, x);
                            }
                        }
                        row += m.dim(v);
                        col += cat.hom_dim(c, v);
                    }
                    hs.spaces[c].coords_of(&psi)
                })
                .collect();
            if cols.is_empty() {
                Mat::zeros(f, hs.spaces[c].dim(), 0)
            } else {
                Mat::from_columns(f, hs.spaces[c].dim(), &cols)
            }
        })
        .collect();
    FMap::new(m.clone(), hs.module.clone(), comps)
}

/// Counit `hom_P(hom_P* X) → X`, `(φ_j) ↦ Σ_j φ_j(π_j)`.
pub fn pstar_counit(alg: &Arc<EndoAlgebra>, x: &AlgModule, hs: &HomPStar, hph: &AlgModule) -> Result<AlgMap> {
    let cat = &alg.cat;
    let f = alg.field();
    let b = &alg.bundle;
    let mut cols = Vec::with_capacity(hph.dim);
    for (j, &v) in b.vertices.iter().enumerate() {
        // π_j ∈ P*(v_j) = ⊕_k Hom(v_j, v_k)
        let ps_dim: usize = b.vertices.iter().map(|&w| cat.hom_dim(v, w)).sum();
        let mut pi = vec![f.zero(); ps_dim];
        let start: usize = b.vertices[..j].iter().map(|&w| cat.hom_dim(v, w)).sum();
        for (i, c) in cat.identity(v).coords.into_iter().enumerate() {
            pi[start + i] = c;
        }
        for t in &hs.spaces[v].basis {
            cols.push(t.mul_vec(&pi));
        }
    }
    let mat = if cols.is_empty() { Mat::zeros(f, x.dim, 0) } else { Mat::from_columns(f, x.dim, &cols) };
    AlgMap::new(hph, x, mat)
}

/// A named `R_P`-module used as a test input.
#[derive(Clone, Debug)]
pub struct AlgBatteryModule {
    pub name: String,
    pub module: AlgModule,
}

/// `hom_P` of the `C`-battery, plus `R_P` and `D(R_P)`.
pub fn alg_battery(alg: &Arc<EndoAlgebra>, c_battery: &[BatteryModule]) -> Result<Vec<AlgBatteryModule>> {
    let mut out = vec![
        AlgBatteryModule { name: "R".into(), module: AlgModule::regular(alg) },
        AlgBatteryModule { name: "DR".into(), module: AlgModule::dual_regular(alg) },
    ];
    for b in c_battery {
        out.push(AlgBatteryModule { name: format!("(P,{})", b.name), module: hom_p(alg, &b.module)? });
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub passed: bool,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl AxiomCheck {
    fn new(axiom: &str) -> Self {
        AxiomCheck { axiom: axiom.into(), passed: true, cases: 0, failures: Vec::new() }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.passed = false;
            self.failures.push(witness());
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RecollementReport {
    pub battery_c: usize,
    pub battery_quotient: usize,
    pub battery_algebra: usize,
    pub axioms: Vec<AxiomCheck>,
}

impl RecollementReport {
    pub fn passed(&self) -> bool {
        self.axioms.iter().all(|a| a.passed)
    }
}

/// Triangle identities of `P ⊗ - ⊣ hom_P` at an `R_P`-module and at a `C`-module.
pub fn tensor_triangles(alg: &Arc<EndoAlgebra>, x: &AlgModule, m: &FModule) -> Result<[bool; 2]> {
    let t = p_tensor(alg, x)?;
    let hpt = hom_p(alg, &t.module)?;
    let eta = tensor_unit(alg, x, &t, &hpt)?;
    let t2 = p_tensor(alg, &hpt)?;
    let eps = tensor_counit(alg, &t.module, &hpt, &t2)?;
    let first = eps.after(&p_tensor_map(alg, &eta, &t, &t2)).is_identity();

    let hp = hom_p(alg, m)?;
    let tm = p_tensor(alg, &hp)?;
    let eps_m = tensor_counit(alg, m, &hp, &tm)?;
    let hptm = hom_p(alg, &tm.module)?;
    let eta_hp = tensor_unit(alg, &hp, &tm, &hptm)?;
    let second = hom_p_map(alg, &eps_m)?.after(&eta_hp).is_identity();
    Ok([first, second])
}

/// Triangle identities of `hom_P ⊣ hom_P*` at a `C`-module and at an `R_P`-module.
pub fn pstar_triangles(alg: &Arc<EndoAlgebra>, m: &FModule, x: &AlgModule) -> Result<[bool; 2]> {
    let hp = hom_p(alg, m)?;
    let hs = hom_pstar(alg, &hp)?;
    let eta = pstar_unit(alg, m, &hp, &hs)?;
    let hph = hom_p(alg, &hs.module)?;
    let eps = pstar_counit(alg, &hp, &hs, &hph)?;
    let first = eps.after(&hom_p_map(alg, &eta)?).is_identity();

    let hsx = hom_pstar(alg, x)?;
    let hphx = hom_p(alg, &hsx.module)?;
    let hs2 = hom_pstar(alg, &hphx)?;
    let eta_g = pstar_unit(alg, &hsx.module, &hphx, &hs2)?;
    let eps_x = pstar_counit(alg, x, &hsx, &hphx)?;
    let second = hom_pstar_map(alg, &eps_x, &hs2, &hsx).after(&eta_g).is_identity();
    Ok([first, second])
}

/// Checks the recollement axioms on batteries over `C`, `C/I` and `R_P`.
pub fn recollement_check(
    ctx: &TraceContext,
    alg: &Arc<EndoAlgebra>,
    c_battery: &[BatteryModule],
    q_battery: &[BatteryModule],
) -> Result<RecollementReport> {
    let q: &QuotientCategory = &ctx.quotient;
    let r_battery = alg_battery(alg, c_battery)?;
    // q_battery holds modules over C/I.
    let mut pi = AxiomCheck::new("R1 triangles for pi^* -| pi_* -| pi^!");
    for m in c_battery {
        for f in q_battery {
            let t = pi_triangles(q, &m.module, &f.module)?;
            pi.record(t.iter().all(|&b| b), || format!("{} / {}: {:?}", m.name, f.name, t));
        }
    }
    let mut tensor = AxiomCheck::new("R1 triangles for P(x)- -| hom_P");
    let mut star = AxiomCheck::new("R1 triangles for hom_P -| hom_P*");
    let pairs = c_battery.len().max(r_battery.len());
    for i in 0..pairs {
        let m = &c_battery[i % c_battery.len()];
        let x = &r_battery[i % r_battery.len()];
        let t = tensor_triangles(alg, &x.module, &m.module)?;
        tensor.record(t[0] && t[1], || format!("{} / {}: {:?}", x.name, m.name, t));
        let s = pstar_triangles(alg, &m.module, &x.module)?;
        star.record(s[0] && s[1], || format!("{} / {}: {:?}", m.name, x.name, s));
    }
    let mut r2 = AxiomCheck::new("R2 hom_P(pi_* F) = 0");
    for f in q_battery {
        let d = hom_p(alg, &q.pi_push(&f.module)?)?.dim();
        r2.record(d == 0, || format!("{}: dim {d}", f.name));
    }
    let mut ff_pi = AxiomCheck::new("R3 pi_* fully faithful");
    for f in q_battery {
        for g in q_battery {
            let a = hom_modules(&f.module, &g.module)?.dim();
            let b = hom_modules(&q.pi_push(&f.module)?, &q.pi_push(&g.module)?)?.dim();
            ff_pi.record(a == b, || format!("{} -> {}: {a} vs {b}", f.name, g.name));
        }
    }
    let tensors = r_battery.iter().map(|x| p_tensor(alg, &x.module)).collect::<Result<Vec<_>>>()?;
    let stars = r_battery.iter().map(|x| hom_pstar(alg, &x.module)).collect::<Result<Vec<_>>>()?;
    let mut ff_t = AxiomCheck::new("R3 P(x)- fully faithful");
    let mut ff_s = AxiomCheck::new("R3 hom_P* fully faithful");
    for (i, x) in r_battery.iter().enumerate() {
        for (j, y) in r_battery.iter().enumerate() {
            let a = hom_alg(&x.module, &y.module)?.dim();
            let b = hom_modules(&tensors[i].module, &tensors[j].module)?.dim();
            let c = hom_modules(&stars[i].module, &stars[j].module)?.dim();
            ff_t.record(a == b, || format!("{} -> {}: {a} vs {b}", x.name, y.name));
            ff_s.record(a == c, || format!("{} -> {}: {a} vs {c}", x.name, y.name));
        }
    }
    let mut adj = AxiomCheck::new("adjunction dimensions");
    for m in c_battery {
        let hp = hom_p(alg, &m.module)?;
        for (i, x) in r_battery.iter().enumerate() {
            let a = hom_modules(&tensors[i].module, &m.module)?.dim();
            let b = hom_alg(&x.module, &hp)?.dim();
            let c = hom_alg(&hp, &x.module)?.dim();
            let d = hom_modules(&m.module, &stars[i].module)?.dim();
            adj.record(a == b && c == d, || format!("{} / {}: {a},{b},{c},{d}", m.name, x.name));
        }
    }
    let mut trace = AxiomCheck::new("counit image is the trace of P");
    for m in c_battery {
        let hp = hom_p(alg, &m.module)?;
        let t = p_tensor(alg, &hp)?;
        let eps = tensor_counit(alg, &m.module, &hp, &t)?;
        let tr = bundle_trace(&alg.cat, &alg.bundle, &m.module)?;
        let ok = (0..tr.len()).all(|v| eps.comp(v).image_basis() == tr[v]);
        let (k, _) = crate::funmod::kernel(&eps);
        let (c, _) = crate::funmod::cokernel(&eps);
        let killed = hom_p(alg, &k)?.is_zero() && hom_p(alg, &c)?.is_zero();
        trace.record(ok && killed, || m.name.clone());
    }
    Ok(RecollementReport {
        battery_c: c_battery.len(),
        battery_quotient: q_battery.len(),
        battery_algebra: r_battery.len(),
        axioms: vec![pi, tensor, star, r2, ff_pi, ff_t, ff_s, adj, trace],
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PhiReport {
    pub p_level: Option<usize>,
    pub i_level: Option<usize>,
    pub hom_c: usize,
    pub hom_r: usize,
    pub rho_rank: usize,
    pub rho_mono: bool,
    pub rho_iso: bool,
    pub expect_mono: bool,
    pub expect_iso: bool,
    pub ext_c: Vec<usize>,
    pub ext_r: Vec<usize>,
    /// Degrees `1..=n` where equality is promised.
    pub promised: Vec<usize>,
    pub passed: bool,
}

/// Compares `Ext^i(X, Y)` with `Ext^i_{R_P}(hom_P X, hom_P Y)` for `i ≤ n`.
pub fn phi_check(ctx: &TraceContext, alg: &Arc<EndoAlgebra>, x: &FModule, y: &FModule, n: usize) -> Result<PhiReport> {
    let hx = hom_p(alg, x)?;
    let hy = hom_p(alg, y)?;
    let hc = hom_modules(x, y)?;
    let hr = hom_alg(&hx, &hy)?;
    let cols: Vec<Vec<Scalar>> =
        hc.basis().iter().map(|f| Ok(hr.coords_of(&hom_p_map(alg, f)?.mat))).collect::<Result<_>>()?;
    let rho_rank = if cols.is_empty() { 0 } else { Mat::from_columns(alg.field(), hr.dim(), &cols).rank() };
    let rho_mono = rho_rank == hc.dim();
    let rho_iso = rho_mono && rho_rank == hr.dim();
    let p_level = pk_level(ctx, x, n + 1)?;
    let i_level = ik_level(ctx, y, n + 1)?;
    let at_least = |l: Option<usize>, k: usize| l.is_some_and(|l| l >= k);
    let expect_mono = p_level.is_some() || i_level.is_some();
    let expect_iso = (p_level.is_some() && i_level.is_some()) || at_least(p_level, 1) || at_least(i_level, 1);
    let ext_c = crate::homology::ext(x, y, n)?.dims;
    let ext_r = ext_alg(&hx, &hy, n)?.dims;
    let promised: Vec<usize> = (1..=n)
        .filter(|&i| {
            matches!((p_level, i_level), (Some(a), Some(b)) if i <= a + b)
                || at_least(i_level, i + 1)
                || at_least(p_level, i + 1)
        })
        .collect();
    let passed = (!expect_mono || rho_mono)
        && (!expect_iso || rho_iso)
        && promised.iter().all(|&i| ext_c[i] == ext_r[i]);
    Ok(PhiReport {
        p_level,
        i_level,
        hom_c: hc.dim(),
        hom_r: hr.dim(),
        rho_rank,
        rho_mono,
        rho_iso,
        expect_mono,
        expect_iso,
        ext_c,
        ext_r,
        promised,
        passed,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexEvidence {
    pub vertex: String,
    /// `P*(c)` is a projective `R_P`-module.
    pub pstar_projective: bool,
    /// `P ⊗ P*(c)` is a projective `C`-module.
    pub tensor_projective: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct I1Report {
    pub holds: bool,
    pub evidence: Vec<VertexEvidence>,
}

fn is_projective_c(m: &FModule) -> bool {
    projective_dimension(m, 0) == Some(0)
}

/// Decides `I_1 = I_∞` by both vertexwise criteria.
pub fn i1_eq_iinf(alg: &Arc<EndoAlgebra>) -> Result<I1Report> {
    let cat = &alg.cat;
    let mut evidence = Vec::new();
    for c in 0..cat.vertex_count() {
        let ps = pstar(alg, c);
        let a = is_projective(&ps)?;
        let b = is_projective_c(&p_tensor(alg, &ps)?.module);
        if a != b {
            return Err(Error::CriteriaMismatch(format!(
                "I_1 = I_inf criteria disagree at {}: {a} vs {b}",
                cat.vertices()[c]
            )));
        }
        evidence.push(VertexEvidence { vertex: cat.vertices()[c].clone(), pstar_projective: a, tensor_projective: b });
    }
    Ok(I1Report { holds: evidence.iter().all(|e| e.pstar_projective), evidence })
}

#[derive(Clone, Debug, Serialize)]
pub struct GlDimReport {
    pub i1_eq_iinf: bool,
    /// `P_1 = P_∞`, decided on the opposite category.
    pub p1_eq_pinf: bool,
    pub gl_dim_algebra: GlobalDimension,
    pub gl_dim_category: GlobalDimension,
    /// `None` when neither hypothesis holds.
    pub inequality: Option<bool>,
}

fn gl_le(a: GlobalDimension, b: GlobalDimension) -> bool {
    match (a, b) {
        (_, GlobalDimension::ExceedsBound) => true,
        (GlobalDimension::Exact(x), GlobalDimension::Exact(y)) => x <= y,
        (GlobalDimension::ExceedsBound, GlobalDimension::Exact(_)) => false,
    }
}

pub fn gl_dim_inequality_check(alg: &Arc<EndoAlgebra>, bound: usize) -> Result<GlDimReport> {
    let i1 = i1_eq_iinf(alg)?.holds;
    let op = endomorphism_algebra(&alg.cat.opposite(), &alg.bundle)?;
    let p1 = i1_eq_iinf(&op)?.holds;
    let gl_dim_algebra = global_dimension_alg(alg, bound);
    let gl_dim_category = crate::homology::global_dimension(&alg.cat, bound);
    let inequality = (i1 || p1).then(|| gl_le(gl_dim_algebra, gl_dim_category));
    Ok(GlDimReport { i1_eq_iinf: i1, p1_eq_pinf: p1, gl_dim_algebra, gl_dim_category, inequality })
}

#[derive(Clone, Debug, Serialize)]
pub struct ProjectivityReport {
    /// `I(c, -)` projective, per vertex.
    pub ideal_projective: Vec<(String, bool)>,
    pub all_projective: bool,
    pub level: usize,
    pub kmax: usize,
    pub i1_eq_iinf: bool,
    /// `(all projective) ⇔ (2-idempotent ∧ I_1 = I_∞)` holds.
    pub biconditional: bool,
    pub gl_dim_algebra: GlobalDimension,
    pub quasi_hereditary: bool,
    pub strong_idempotency: String,
}

pub fn ideal_projectivity_report(
    ctx: &TraceContext,
    alg: &Arc<EndoAlgebra>,
    level: &LevelReport,
    bound: usize,
) -> Result<ProjectivityReport> {
    let cat = &alg.cat;
    let ideal_projective: Vec<(String, bool)> = (0..cat.vertex_count())
        .map(|c| (cat.vertices()[c].clone(), is_projective_c(&ideal_as_module(ctx.ideal(), c).0)))
        .collect();
    let all_projective = ideal_projective.iter().all(|(_, p)| *p);
    let i1 = i1_eq_iinf(alg)?.holds;
    let right = level.level >= 2 && i1;
    if all_projective != right {
        return Err(Error::CriteriaMismatch(format!(
            "ideal projectivity {all_projective} but 2-idempotent and I_1 = I_inf gives {right}"
        )));
    }
    let gl_dim_algebra = global_dimension_alg(alg, bound);
    let quasi_hereditary = matches!(gl_dim_algebra, GlobalDimension::Exact(g) if g <= 2);
    let strong_idempotency = if level.strongly_idempotent {
        "strongly idempotent".to_string()
    } else if level.level == level.kmax {
        format!("verified up to {}", level.kmax)
    } else {
        format!("not {}-idempotent", level.level + 1)
    };
    Ok(ProjectivityReport {
        ideal_projective,
        all_projective,
        level: level.level,
        kmax: level.kmax,
        i1_eq_iinf: i1,
        biconditional: true,
        gl_dim_algebra,
        quasi_hereditary,
        strong_idempotency,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TransferRow {
    pub module: String,
    pub pd: usize,
    pub pd_algebra: Option<usize>,
    pub equal: bool,
}

/// `pd X = pd_{R_P}(hom_P X)` for battery modules certified in `P_∞`.
pub fn pd_transfer_check(
    ctx: &TraceContext,
    alg: &Arc<EndoAlgebra>,
    battery: &[BatteryModule],
    bound: usize,
) -> Result<Vec<TransferRow>> {
    let mut rows = Vec::new();
    for b in battery {
        if in_p_infinity(ctx, &b.module, bound) != Some(true) {
            continue;
        }
        let pd = projective_dimension(&b.module, bound).expect("complete resolution");
        let pd_algebra = pd_alg(&hom_p(alg, &b.module)?, bound);
        rows.push(TransferRow { module: b.name.clone(), pd, pd_algebra, equal: pd_algebra == Some(pd) });
    }
    Ok(rows)
}

/// Seeded `C` battery with at least `min` modules.
pub fn c_battery(cat: &Arc<PathCategory>, seed: u64, min: usize) -> Vec<BatteryModule> {
    let live = (0..cat.vertex_count()).filter(|&v| !cat.is_zero_object(v)).count();
    module_battery(cat, seed, min.saturating_sub(3 * live).max(5))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Field;
    use crate::funmod::{indecomposable_injective, simple};
    use crate::homology::{idempotency_level, DEFAULT_SEED};
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

    fn bundle(vs: &[usize]) -> ProjBundle {
        ProjBundle { vertices: vs.to_vec() }
    }

    #[test]
    fn algebra_dimensions() {
        let z6 = line(6, true);
        let r = endomorphism_algebra(&z6, &bundle(&[1, 2])).unwrap();
        assert_eq!(r.dim(), 3);
        assert!(r.check_axioms());
        let a2 = line(2, false);
        assert_eq!(endomorphism_algebra(&a2, &bundle(&[0, 1])).unwrap().dim(), 3);
        assert_eq!(endomorphism_algebra(&a2, &bundle(&[1])).unwrap().dim(), 1);
        assert!(matches!(endomorphism_algebra(&a2, &bundle(&[])), Err(Error::EmptyBundle)));
        let twice = endomorphism_algebra(&a2, &bundle(&[1, 1])).unwrap();
        assert_eq!(twice.dim(), 4);
        assert!(twice.check_axioms());
    }

    #[test]
    fn hom_p_values() {
        let z6 = line(6, true);
        let r = endomorphism_algebra(&z6, &bundle(&[1, 2])).unwrap();
        let s2 = hom_p(&r, &simple(&z6, 1)).unwrap();
        assert_eq!(s2.dim(), 1);
        assert_eq!(hom_p(&r, r.realized()).unwrap(), AlgModule::regular(&r));
        for m in [simple(&z6, 0), yoneda_projective(&z6, 0), indecomposable_injective(&z6, 3)] {
            let hp = hom_p(&r, &m).unwrap();
            assert_eq!(hp.dim(), hom_modules(r.realized(), &m).unwrap().dim());
            assert!(AlgModule::new(&r, hp.dim(), hp.action.clone()).is_ok());
        }
        let t = p_tensor(&r, &hom_p(&r, &yoneda_projective(&z6, 0)).unwrap()).unwrap();
        assert_eq!(t.module.dims(), &[0, 1, 0, 0, 0, 0]);
        assert!(p_tensor(&r, &AlgModule::zero(&r)).unwrap().module.is_zero());
        assert_eq!(p_tensor(&r, &AlgModule::regular(&r)).unwrap().module, *r.realized());
    }

    #[test]
    fn projective_and_injective_tests() {
        let z6 = line(6, true);
        let r = endomorphism_algebra(&z6, &bundle(&[1, 2])).unwrap();
        assert!(is_projective(&AlgModule::regular(&r)).unwrap());
        assert!(is_injective(&AlgModule::dual_regular(&r)).unwrap());
        for v in [1, 2] {
            assert!(is_projective(&hom_p(&r, &yoneda_projective(&z6, v)).unwrap()).unwrap());
            assert!(is_injective(&hom_p(&r, &indecomposable_injective(&z6, v)).unwrap()).unwrap());
        }
        assert_eq!(global_dimension_alg(&r, 4), GlobalDimension::Exact(1));
        let simples: Vec<bool> =
            r.representatives().iter().map(|&j| is_projective(&alg_simple(&r, j)).unwrap()).collect();
        assert_eq!(simples.iter().filter(|&&p| p).count(), 1);
    }

    #[test]
    fn triangles_on_z6() {
        let z6 = line(6, true);
        let r = endomorphism_algebra(&z6, &bundle(&[1, 2])).unwrap();
        for v in 0..6 {
            let m = simple(&z6, v);
            let x = hom_p(&r, &indecomposable_injective(&z6, v)).unwrap();
            assert_eq!(tensor_triangles(&r, &x, &m).unwrap(), [true, true]);
            assert_eq!(pstar_triangles(&r, &m, &x).unwrap(), [true, true]);
        }
    }

    #[test]
    fn z6_reports() {
        let z6 = line(6, true);
        let ctx = TraceContext::new(&z6, &bundle(&[1, 2]));
        let r = endomorphism_algebra(&z6, &ctx.bundle).unwrap();
        assert!(!i1_eq_iinf(&r).unwrap().holds);
        let qb = c_battery(ctx.quotient.quotient(), DEFAULT_SEED, 10);
        let rep = recollement_check(&ctx, &r, &c_battery(&z6, DEFAULT_SEED, 10), &qb).unwrap();
        assert!(rep.passed(), "{:?}", rep.axioms);
        let phi = phi_check(&ctx, &r, &simple(&z6, 1), &indecomposable_injective(&z6, 2), 1).unwrap();
        assert!(phi.passed);
        assert_eq!(phi.p_level, Some(1));
        let level = idempotency_level(&ctx.quotient, 6, Some(&ctx), DEFAULT_SEED).unwrap();
        let proj = ideal_projectivity_report(&ctx, &r, &level, 6).unwrap();
        assert!(!proj.all_projective);
    }

    #[test]
    fn hereditary_case() {
        let a3 = line(3, false);
        let ctx = TraceContext::new(&a3, &bundle(&[1]));
        let r = endomorphism_algebra(&a3, &ctx.bundle).unwrap();
        assert_eq!(r.dim(), 1);
        assert!(i1_eq_iinf(&r).unwrap().holds);
        let level = idempotency_level(&ctx.quotient, 6, Some(&ctx), DEFAULT_SEED).unwrap();
        let proj = ideal_projectivity_report(&ctx, &r, &level, 6).unwrap();
        assert!(proj.all_projective && proj.quasi_hereditary);
        assert_eq!(proj.gl_dim_algebra, GlobalDimension::Exact(0));
        let gl = gl_dim_inequality_check(&r, 6).unwrap();
        assert_eq!(gl.inequality, Some(true));
    }

    #[test]
    fn full_bundle_is_morita() {
        let z6 = line(6, true);
        let r = endomorphism_algebra(&z6, &bundle(&[0, 1, 2, 3, 4, 5])).unwrap();
        assert!(i1_eq_iinf(&r).unwrap().holds);
        assert_eq!(global_dimension_alg(&r, 6), GlobalDimension::Exact(5));
    }
}
