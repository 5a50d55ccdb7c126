//! Two-sided ideals of a path category, the quotient `C/I`, and the functors
//! `π^*`, `π_*`, `π^!` between `mod(C)` and `mod(C/I)`.

use crate::error::{Error, Result};
use crate::exactlin::{Mat, Scalar, Subspace};
use crate::funmod::{
    cokernel, hom_modules, projective_cover, quotient_module, submodule, yoneda_projective, FMap, FModule,
    ProjBundle, ProjectiveCover,
};
use crate::pathcat::{same_category, CategoryKind, Morphism, Parts, PathCategory};
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct Ideal {
    cat: Arc<PathCategory>,
    sub: Vec<Subspace>,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        same_category(&self.cat, &other.cat) && self.sub == other.sub
    }
}

impl Eq for Ideal {}

impl Ideal {
    pub fn new(cat: &Arc<PathCategory>, sub: Vec<Subspace>) -> Result<Self> {
        let n = cat.vertex_count();
        if sub.len() != n * n {
            return Err(Error::InvalidModule("ideal needs one subspace per pair".into()));
        }
        for x in 0..n {
            for y in 0..n {
                if sub[x * n + y].ambient() != cat.hom_dim(x, y) {
                    return Err(Error::Lin(crate::exactlin::LinError::DimensionMismatch {
                        expected: cat.hom_dim(x, y),
                        found: sub[x * n + y].ambient(),
                    }));
                }
            }
        }
        let i = Ideal { cat: cat.clone(), sub };
        if !i.is_closed() {
            return Err(Error::InvalidModule("subspaces are not closed under composition".into()));
        }
        Ok(i)
    }

    pub fn zero(cat: &Arc<PathCategory>) -> Self {
        let n = cat.vertex_count();
        let sub = (0..n * n).map(|p| Subspace::zero(cat.field(), cat.hom_dim(p / n, p % n))).collect();
        Ideal { cat: cat.clone(), sub }
    }

    pub fn full(cat: &Arc<PathCategory>) -> Self {
        let n = cat.vertex_count();
        let sub = (0..n * n).map(|p| Subspace::full(cat.field(), cat.hom_dim(p / n, p % n))).collect();
        Ideal { cat: cat.clone(), sub }
    }

    /// The smallest ideal containing the given morphisms.
    pub fn generated_by(cat: &Arc<PathCategory>, gens: &[Morphism]) -> Result<Self> {
        let n = cat.vertex_count();
        let mut vecs: Vec<Vec<Vec<Scalar>>> = vec![Vec::new(); n * n];
        for g in gens {
            if g.coords.len() != cat.hom_dim(g.source, g.target) {
                return Err(Error::Composability("generator coordinate length".into()));
            }
            for w in 0..n {
                for z in 0..n {
                    for e in 0..cat.hom_dim(w, g.source) {
                        let ge = cat.compose(g, &cat.basis_morphism(w, g.source, e))?;
                        for h in 0..cat.hom_dim(g.target, z) {
                            let hge = cat.compose(&cat.basis_morphism(g.target, z, h), &ge)?;
                            vecs[w * n + z].push(hge.coords);
                        }
                    }
                }
            }
        }
        let sub = (0..n * n)
            .map(|p| Subspace::span(cat.field(), cat.hom_dim(p / n, p % n), &vecs[p]))
            .collect();
        let i = Ideal { cat: cat.clone(), sub };
        debug_assert!(i.is_closed());
        Ok(i)
    }

    /// All morphisms of positive path length.
    pub fn arrow_ideal(cat: &Arc<PathCategory>) -> Self {
        let gens: Vec<Morphism> = (0..cat.arrows().len()).map(|a| cat.arrow(a)).collect();
        Ideal::generated_by(cat, &gens).expect("arrows are valid morphisms")
    }

    /// Morphisms factoring through the vertices of `p`.
    pub fn trace_ideal(cat: &Arc<PathCategory>, p: &ProjBundle) -> Self {
        let gens: Vec<Morphism> = p.support().into_iter().map(|v| cat.identity(v)).collect();
        Ideal::generated_by(cat, &gens).expect("identities are valid morphisms")
    }

    pub fn category(&self) -> &Arc<PathCategory> {
        &self.cat
    }

    pub fn at(&self, x: usize, y: usize) -> &Subspace {
        &self.sub[x * self.cat.vertex_count() + y]
    }

    pub fn dim(&self, x: usize, y: usize) -> usize {
        self.at(x, y).dim()
    }

    pub fn is_zero(&self) -> bool {
        self.sub.iter().all(Subspace::is_zero)
    }

    pub fn contains(&self, f: &Morphism) -> bool {
        self.at(f.source, f.target).contains(&f.coords)
    }

    /// Basis morphisms of `I(x, y)`.
    pub fn basis(&self, x: usize, y: usize) -> Vec<Morphism> {
        self.at(x, y).vectors().into_iter().map(|coords| Morphism { source: x, target: y, coords }).collect()
    }

    pub fn is_closed(&self) -> bool {
        let c = &self.cat;
        let n = c.vertex_count();
        for x in 0..n {
            for y in 0..n {
                for g in self.basis(x, y) {
                    for z in 0..n {
                        for h in 0..c.hom_dim(y, z) {
                            let hg = c.compose(&c.basis_morphism(y, z, h), &g).unwrap();
                            if !self.contains(&hg) {
                                return false;
                            }
                        }
                    }
                    for w in 0..n {
                        for e in 0..c.hom_dim(w, x) {
                            let ge = c.compose(&g, &c.basis_morphism(w, x, e)).unwrap();
                            if !self.contains(&ge) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// `(IJ)(A, B) = span{ f ∘ g : g ∈ J(A, C), f ∈ I(C, B) }`.
    pub fn product(&self, j: &Ideal) -> Result<Ideal> {
        if !same_category(&self.cat, &j.cat) {
            return Err(Error::CategoryMismatch);
        }
        let c = &self.cat;
        let n = c.vertex_count();
        let mut sub = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let mut vecs = Vec::new();
                for mid in 0..n {
                    for g in j.basis(a, mid) {
                        for f in self.basis(mid, b) {
                            vecs.push(c.compose(&f, &g)?.coords);
                        }
                    }
                }
                sub.push(Subspace::span(c.field(), c.hom_dim(a, b), &vecs));
            }
        }
        Ok(Ideal { cat: c.clone(), sub })
    }

    pub fn is_idempotent(&self) -> bool {
        self.product(self).map(|p| p == *self).unwrap_or(false)
    }

    /// `I^op` as an ideal of `C^op`.
    pub fn opposite(&self) -> Ideal {
        let n = self.cat.vertex_count();
        let sub = (0..n * n).map(|p| self.at(p % n, p / n).clone()).collect();
        Ideal { cat: self.cat.opposite(), sub }
    }
}

/// `I(c, -)` as a submodule of `Hom_C(c, -)`.
pub fn ideal_as_module(i: &Ideal, c: usize) -> (FModule, FMap) {
    let y = yoneda_projective(&i.cat, c);
    let subs: Vec<Subspace> = (0..i.cat.vertex_count()).map(|w| i.at(c, w).clone()).collect();
    submodule(&y, &subs)
}

/// `I(-, c)` as a submodule of `Hom_C(-, c)`, a module over `C^op`.
pub fn coideal_as_module(i: &Ideal, c: usize) -> (FModule, FMap) {
    ideal_as_module(&i.opposite(), c)
}

/// `Hom_C(c, -)/I(c, -)` with its projection.
pub fn quotient_yoneda(i: &Ideal, c: usize) -> (FModule, FMap) {
    cokernel(&ideal_as_module(i, c).1)
}

/// `Hom_C(-, c)/I(-, c)` over `C^op`.
pub fn coquotient_yoneda(i: &Ideal, c: usize) -> (FModule, FMap) {
    cokernel(&coideal_as_module(i, c).1)
}

#[derive(Clone, Debug)]
pub struct PropertyAWitness {
    /// Covers of `I(c, -)`, one per vertex.
    pub left: Vec<ProjectiveCover>,
    /// Covers of `I(-, c)` over `C^op`.
    pub right: Vec<ProjectiveCover>,
}

impl PropertyAWitness {
    pub fn verified(&self) -> bool {
        self.left.iter().chain(&self.right).all(|pc| pc.map.is_epi())
    }
}

pub fn property_a_witness(i: &Ideal) -> PropertyAWitness {
    let n = i.cat.vertex_count();
    let left = (0..n).map(|c| projective_cover(&ideal_as_module(i, c).0)).collect();
    let right = (0..n).map(|c| projective_cover(&coideal_as_module(i, c).0)).collect();
    PropertyAWitness { left, right }
}

/// `C/I` with the projection and a chosen section on each Hom-space.
#[derive(Clone, Debug)]
pub struct QuotientCategory {
    base: Arc<PathCategory>,
    ideal: Ideal,
    quotient: Arc<PathCategory>,
    proj: Vec<Mat>,
    sect: Vec<Mat>,
}

impl QuotientCategory {
    pub fn new(ideal: &Ideal) -> Self {
        let base = ideal.cat.clone();
        let n = base.vertex_count();
        let proj: Vec<Mat> = ideal.sub.iter().map(Subspace::quotient_map).collect();
        let sect: Vec<Mat> = ideal.sub.iter().map(Subspace::quotient_section).collect();
        let mut paths = Vec::with_capacity(n * n);
        let mut reduce = Vec::with_capacity(n * n);
        let mut section = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let p = x * n + y;
                paths.push(base.paths(x, y).to_vec());
                reduce.push(proj[p].mul(base.reduce_map(x, y)));
                section.push(base.section_map(x, y).mul(&sect[p]));
            }
        }
        let mut comp = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let k = sect[y * n + z].kron(&sect[x * n + y]);
                    comp.push(proj[x * n + z].mul(base.comp_table(x, y, z)).mul(&k));
                }
            }
        }
        let quotient = PathCategory::from_parts(Parts {
            field: base.field(),
            kind: CategoryKind::Quotient,
            vertices: base.vertices().to_vec(),
            arrows: base.arrows().to_vec(),
            relations: base.relations().to_vec(),
            max_len: base.max_len(),
            paths,
            reduce,
            section,
            comp,
        });
        let q = QuotientCategory { base, ideal: ideal.clone(), quotient, proj, sect };
        debug_assert!(q.projection_is_functor());
        q
    }

    pub fn base(&self) -> &Arc<PathCategory> {
        &self.base
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn quotient(&self) -> &Arc<PathCategory> {
        &self.quotient
    }

    pub fn project(&self, f: &Morphism) -> Morphism {
        let n = self.base.vertex_count();
        let coords = self.proj[f.source * n + f.target].mul_vec(&f.coords);
        Morphism { source: f.source, target: f.target, coords }
    }

    pub fn lift(&self, f: &Morphism) -> Morphism {
        let n = self.base.vertex_count();
        let coords = self.sect[f.source * n + f.target].mul_vec(&f.coords);
        Morphism { source: f.source, target: f.target, coords }
    }

    /// `π(g ∘ f) = π(g) ∘ π(f)` on all basis pairs.
    pub fn projection_is_functor(&self) -> bool {
        let (b, q) = (&self.base, &self.quotient);
        let n = b.vertex_count();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for f in 0..b.hom_dim(x, y) {
                        for g in 0..b.hom_dim(y, z) {
                            let (fm, gm) = (b.basis_morphism(x, y, f), b.basis_morphism(y, z, g));
                            let lhs = self.project(&b.compose(&gm, &fm).unwrap());
                            let rhs = q.compose(&self.project(&gm), &self.project(&fm)).unwrap();
                            if lhs != rhs {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    fn check_base(&self, m: &FModule) -> Result<()> {
        if same_category(m.category(), &self.base) {
            Ok(())
        } else {
            Err(Error::CategoryMismatch)
        }
    }

    fn check_quotient(&self, m: &FModule) -> Result<()> {
        if same_category(m.category(), &self.quotient) {
            Ok(())
        } else {
            Err(Error::CategoryMismatch)
        }
    }

    /// True when every morphism of the ideal acts as zero on `m`.
    pub fn annihilates(&self, m: &FModule) -> bool {
        let n = self.base.vertex_count();
        (0..n).all(|x| (0..n).all(|y| self.ideal.basis(x, y).iter().all(|f| m.morphism_action(f).is_zero())))
    }

    /// A module over `C` killed by `I`, viewed over `C/I`.
    pub fn omega(&self, m: &FModule) -> Result<FModule> {
        self.check_base(m)?;
        FModule::new(self.quotient.clone(), m.dims().to_vec(), m.actions().to_vec())
    }

    /// `π_* F = F ∘ π`.
    pub fn pi_push(&self, f: &FModule) -> Result<FModule> {
        self.check_quotient(f)?;
        Ok(FModule::new_unchecked(self.base.clone(), f.dims().to_vec(), f.actions().to_vec()))
    }

    pub fn pi_push_map(&self, f: &FMap) -> Result<FMap> {
        let s = self.pi_push(f.source())?;
        let t = self.pi_push(f.target())?;
        Ok(FMap::new_unchecked(s, t, f.comps().to_vec()))
    }

    /// `(IM)(v) = Σ_{f ∈ I(w, v)} Im M(f)`.
    pub fn ideal_submodule(&self, m: &FModule) -> Vec<Subspace> {
        let fl = m.field();
        let n = self.base.vertex_count();
        (0..n)
            .map(|v| {
                let mut acc = Subspace::zero(fl, m.dim(v));
                for w in 0..n {
                    for f in self.ideal.basis(w, v) {
                        acc = acc.sum(&m.morphism_action(&f).image_basis()).expect("same ambient");
                    }
                }
                acc
            })
            .collect()
    }

    /// `π^* M = M / IM` over `C/I`, with the projection `M → π_* π^* M`.
    pub fn pi_star(&self, m: &FModule) -> Result<(FModule, FMap)> {
        self.check_base(m)?;
        let (q, proj) = quotient_module(m, &self.ideal_submodule(m));
        let over_q = FModule::new_unchecked(self.quotient.clone(), q.dims().to_vec(), q.actions().to_vec());
        Ok((over_q, proj))
    }

    pub fn pi_star_map(&self, f: &FMap) -> Result<FMap> {
        let (s, _) = self.pi_star(f.source())?;
        let (t, pt) = self.pi_star(f.target())?;
        let comps = (0..f.comps().len())
            .map(|v| {
                let sec = self.ideal_submodule(f.source())[v].quotient_section();
                pt.comp(v).mul(f.comp(v)).mul(&sec)
            })
            .collect();
        Ok(FMap::new_unchecked(s, t, comps))
    }

    /// `{ m ∈ M(v) : M(f) m = 0 for all f ∈ I(v, w) }`.
    pub fn annihilator_subspaces(&self, m: &FModule) -> Vec<Subspace> {
        let fl = m.field();
        let n = self.base.vertex_count();
        (0..n)
            .map(|v| {
                let mats: Vec<Mat> =
                    (0..n).flat_map(|w| self.ideal.basis(v, w)).map(|f| m.morphism_action(&f)).collect();
                if mats.is_empty() {
                    return Subspace::full(fl, m.dim(v));
                }
                let refs: Vec<&Mat> = mats.iter().collect();
                Mat::vstack(&refs).kernel_basis()
            })
            .collect()
    }

    /// Sum of images of all maps `Hom_C(c,-)/I(c,-) → M`.
    pub fn quotient_trace(&self, m: &FModule) -> Result<Vec<Subspace>> {
        let family: Vec<FModule> = (0..self.base.vertex_count()).map(|c| quotient_yoneda(&self.ideal, c).0).collect();
        trace_submodule(&family, m)
    }

    /// `π^! M` over `C/I`, with the inclusion `π_* π^! M → M`.
    ///
    /// The annihilator is compared against the trace of the quotient
    /// Yoneda family; a difference is reported as a criteria mismatch.
    pub fn pi_shriek(&self, m: &FModule) -> Result<(FModule, FMap)> {
        self.check_base(m)?;
        let ann = self.annihilator_subspaces(m);
        let tr = self.quotient_trace(m)?;
        if ann != tr {
            return Err(Error::CriteriaMismatch("annihilator and quotient trace differ".into()));
        }
        Ok(self.shriek_from(m, &ann))
    }

    fn shriek_from(&self, m: &FModule, ann: &[Subspace]) -> (FModule, FMap) {
        let (s, incl) = submodule(m, ann);
        let over_q = FModule::new_unchecked(self.quotient.clone(), s.dims().to_vec(), s.actions().to_vec());
        (over_q, incl)
    }

    pub fn pi_shriek_map(&self, f: &FMap) -> Result<FMap> {
        self.check_base(f.source())?;
        let sa = self.annihilator_subspaces(f.source());
        let ta = self.annihilator_subspaces(f.target());
        let (s, _) = self.shriek_from(f.source(), &sa);
        let (t, _) = self.shriek_from(f.target(), &ta);
        let comps = (0..sa.len()).map(|v| ta[v].coords_map().mul(f.comp(v)).mul(&sa[v].inclusion())).collect();
        Ok(FMap::new_unchecked(s, t, comps))
    }

    /// Projectives `Hom_{C/I}(c, -)` of `mod(C/I)`.
    pub fn quotient_projective(&self, c: usize) -> FModule {
        yoneda_projective(&self.quotient, c)
    }

    /// Injectives `D Hom_{C/I}(-, c)` of `mod(C/I)`.
    pub fn quotient_injective(&self, c: usize) -> FModule {
        crate::funmod::indecomposable_injective(&self.quotient, c)
    }
}

/// `Σ` of images of all maps from members of `family` into `m`.
pub fn trace_submodule(family: &[FModule], m: &FModule) -> Result<Vec<Subspace>> {
    let fl = m.field();
    let mut acc: Vec<Subspace> = m.dims().iter().map(|&d| Subspace::zero(fl, d)).collect();
    for x in family {
        for f in hom_modules(x, m)?.basis() {
            for (v, a) in acc.iter_mut().enumerate() {
                *a = a.sum(&f.comp(v).image_basis())?;
            }
        }
    }
    Ok(acc)
}

/// `Tr_P(M)` as the sum of images of maps `P → M`.
pub fn bundle_trace(cat: &Arc<PathCategory>, p: &ProjBundle, m: &FModule) -> Result<Vec<Subspace>> {
    let family: Vec<FModule> = p.support().into_iter().map(|v| yoneda_projective(cat, v)).collect();
    trace_submodule(&family, m)
}

/// Explicit units and counits of `π^* ⊣ π_* ⊣ π^!`, checked by triangle identities.
pub fn pi_triangles(q: &QuotientCategory, m: &FModule, f: &FModule) -> Result<[bool; 4]> {
    // π^* ⊣ π_*: unit η_M : M → π_*π^*M, counit ε_F : π^*π_*F → F.
    let (_, eta_m) = q.pi_star(m)?;
    let pf = q.pi_push(f)?;
    let (pspf, eta_pf) = q.pi_star(&pf)?;
    let eps_f = FMap::new(pspf.clone(), f.clone(), f.dims().iter().map(|&d| Mat::identity(f.field(), d)).collect())?;
    let t1 = q.pi_push_map(&eps_f)?.after(&eta_pf.with_target(&q.pi_push(&pspf)?)).is_identity();
    let (psm, _) = q.pi_star(m)?;
    let pi_eta = q.pi_star_map(&eta_m.with_target(&q.pi_push(&psm)?))?;
    let (psps, _) = q.pi_star(&q.pi_push(&psm)?)?;
    let eps_psm = FMap::new(psps, psm.clone(), psm.dims().iter().map(|&d| Mat::identity(m.field(), d)).collect())?;
    let t2 = eps_psm.after(&pi_eta).is_identity();

    // π_* ⊣ π^!: unit η_F : F → π^!π_*F, counit ε_M : π_*π^!M → M.
    let (sf, inc_f) = q.pi_shriek(&pf)?;
    let eta_f = FMap::new(f.clone(), sf.clone(), inc_f.comps().to_vec())?;
    let eps_pf = inc_f.with_source(&q.pi_push(&sf)?);
    let t3 = eps_pf.after(&q.pi_push_map(&eta_f)?).is_identity();
    let (sm, inc_m) = q.pi_shriek(m)?;
    let psm2 = q.pi_push(&sm)?;
    let (ssm, inc_ss) = q.pi_shriek(&psm2)?;
    let eta_sm = FMap::new(sm.clone(), ssm, inc_ss.comps().to_vec())?;
    let shriek_eps = q.pi_shriek_map(&inc_m.with_source(&psm2))?;
    let t4 = shriek_eps.after(&eta_sm.with_target(shriek_eps.source())).is_identity();
    Ok([t1, t2, t3, t4])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Field;
    use crate::funmod::simple;
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

    fn bundle(v: &[usize]) -> ProjBundle {
        ProjBundle { vertices: v.to_vec() }
    }

    #[test]
    fn trace_ideal_examples() {
        let a2 = line(2, false);
        let i = Ideal::trace_ideal(&a2, &bundle(&[1]));
        assert_eq!((i.dim(0, 1), i.dim(1, 1), i.dim(0, 0)), (1, 1, 0));
        assert!(i.is_idempotent());
        let z6 = line(6, true);
        let i = Ideal::trace_ideal(&z6, &bundle(&[1, 2]));
        assert_eq!((i.dim(0, 1), i.dim(1, 1), i.dim(2, 2), i.dim(2, 3)), (1, 1, 1, 1));
        for v in [0, 3, 4, 5] {
            assert_eq!(i.dim(v, v), 0);
        }
        assert!(i.is_idempotent());
        let all = Ideal::trace_ideal(&z6, &bundle(&[0, 1, 2, 3, 4, 5]));
        assert_eq!(all, Ideal::full(&z6));
    }

    #[test]
    fn products() {
        let z6 = line(6, true);
        let r = Ideal::arrow_ideal(&z6);
        assert!(r.product(&r).unwrap().is_zero());
        assert!(!r.is_idempotent());
        assert!(Ideal::zero(&z6).product(&r).unwrap().is_zero());
    }

    #[test]
    fn ideal_modules_and_property_a() {
        let z6 = line(6, true);
        let i = Ideal::trace_ideal(&z6, &bundle(&[1, 2]));
        assert_eq!(ideal_as_module(&i, 0).0.dims(), &[0, 1, 0, 0, 0, 0]);
        assert_eq!(quotient_yoneda(&i, 0).0, simple(&z6, 0));
        let w = property_a_witness(&i);
        assert!(w.verified());
        assert_eq!(w.left[0].bundle.vertices, vec![1]);
        let wz = property_a_witness(&Ideal::zero(&z6));
        assert!(wz.left.iter().all(|pc| pc.bundle.is_empty()));
    }

    #[test]
    fn quotient_category_dims() {
        let a2 = line(2, false);
        let q = QuotientCategory::new(&Ideal::trace_ideal(&a2, &bundle(&[1])));
        let c = q.quotient();
        assert_eq!((c.hom_dim(0, 0), c.hom_dim(0, 1), c.hom_dim(1, 1), c.hom_dim(1, 0)), (1, 0, 0, 0));
        assert!(c.is_zero_object(1));
        let qz = QuotientCategory::new(&Ideal::zero(&a2));
        assert_eq!(qz.quotient().hom_dim(0, 1), 1);
        let qf = QuotientCategory::new(&Ideal::full(&a2));
        assert!((0..2).all(|v| qf.quotient().is_zero_object(v)));
    }

    #[test]
    fn pi_functors_on_z6() {
        let z6 = line(6, true);
        let q = QuotientCategory::new(&Ideal::trace_ideal(&z6, &bundle(&[1, 2])));
        let p1 = yoneda_projective(&z6, 0);
        let (s, _) = q.pi_star(&p1).unwrap();
        assert_eq!(s, simple(q.quotient(), 0));
        let (sh, _) = q.pi_shriek(&p1).unwrap();
        assert!(sh.is_zero());
        for v in 0..6 {
            let (ps, _) = q.pi_star(&yoneda_projective(&z6, v)).unwrap();
            assert!(crate::funmod::is_isomorphic(&ps, &q.quotient_projective(v)));
        }
        let s1 = simple(q.quotient(), 0);
        assert_eq!(q.pi_push(&s1).unwrap(), simple(&z6, 0));
        assert_eq!(q.pi_shriek(&q.pi_push(&s1).unwrap()).unwrap().0, s1);
        assert_eq!(pi_triangles(&q, &p1, &s1).unwrap(), [true; 4]);
    }

    #[test]
    fn trace_equals_ideal_times_module() {
        let z6 = line(6, true);
        let p = bundle(&[1, 2]);
        let q = QuotientCategory::new(&Ideal::trace_ideal(&z6, &p));
        for v in 0..6 {
            let m = crate::funmod::indecomposable_injective(&z6, v);
            assert_eq!(q.ideal_submodule(&m), bundle_trace(&z6, &p, &m).unwrap());
        }
    }
}
