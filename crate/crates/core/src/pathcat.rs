//! Path categories `KQ/<rho>` of finite quivers with admissible relations.
//!
//! A path is stored in travel order: `arrows[0]` is applied first. The
//! textual form writes composition right-to-left, so the path with travel
//! order `[a1, a2]` prints as `a2.a1`.
//!
//! Hom-spaces are computed inside the span of paths of length at most
//! `max_len`. Paths are ordered longest first, so echelon pivots of the
//! relation span land on long paths and the surviving basis consists of the
//! shortest representatives.

use crate::error::{Error, Result};
use crate::exactlin::{Field, Mat, Scalar, Subspace};
use num_traits::Zero;
use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock, Weak};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S, S)]) -> Result<Self> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(Error::DuplicateName(v.clone()));
            }
        }
        let find = |name: &str| {
            vertices.iter().position(|v| v == name).ok_or_else(|| Error::UnknownVertex(name.into()))
        };
        let mut out = Vec::new();
        for (name, s, t) in arrows {
            let name = name.as_ref().to_string();
            if out.iter().any(|a: &Arrow| a.name == name) || vertices.contains(&name) {
                return Err(Error::DuplicateName(name));
            }
            out.push(Arrow { name, source: find(s.as_ref())?, target: find(t.as_ref())? });
        }
        Ok(Quiver { vertices, arrows: out })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.vertices.iter().position(|v| v == name).ok_or_else(|| Error::UnknownVertex(name.into()))
    }

    pub fn arrow_index(&self, name: &str) -> Result<usize> {
        self.arrows.iter().position(|a| a.name == name).ok_or_else(|| Error::UnknownArrow(name.into()))
    }

    pub fn reversed(&self) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow { name: a.name.clone(), source: a.target, target: a.source })
            .collect();
        Quiver { vertices: self.vertices.clone(), arrows }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `then` after `self`.
    pub fn concat(&self, then: &Path) -> Path {
        assert_eq!(self.target, then.source, "path concatenation");
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&then.arrows);
        Path { source: self.source, target: then.target, arrows }
    }

    pub fn reversed(&self) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.reverse();
        Path { source: self.target, target: self.source, arrows }
    }

    pub fn label(&self, vertices: &[String], arrows: &[Arrow]) -> String {
        if self.arrows.is_empty() {
            return format!("e{}", vertices[self.source]);
        }
        let names: Vec<&str> = self.arrows.iter().rev().map(|&a| arrows[a].name.as_str()).collect();
        names.join(".")
    }
}

/// A linear combination of parallel paths, e.g. `a2.a1 - b2.b1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub terms: Vec<(Scalar, Path)>,
}

impl Relation {
    /// Build from arrow names written right-to-left, as in `a2.a1`.
    pub fn from_names(q: &Quiver, terms: &[(Scalar, Vec<String>)]) -> Result<Self> {
        let mut out = Vec::new();
        for (c, names) in terms {
            let mut idx = Vec::new();
            for n in names.iter().rev() {
                idx.push(q.arrow_index(n)?);
            }
            if idx.is_empty() {
                return Err(Error::Composability("empty path in relation".into()));
            }
            for w in idx.windows(2) {
                if q.arrows[w[0]].target != q.arrows[w[1]].source {
                    return Err(Error::Composability(names.join(".")));
                }
            }
            let path = Path {
                source: q.arrows[idx[0]].source,
                target: q.arrows[*idx.last().unwrap()].target,
                arrows: idx,
            };
            out.push((c.clone(), path));
        }
        let rel = Relation { terms: out };
        rel.endpoints()?;
        Ok(rel)
    }

    pub fn endpoints(&self) -> Result<Option<(usize, usize)>> {
        let Some((_, first)) = self.terms.first() else {
            return Ok(None);
        };
        if self.terms.iter().any(|(_, p)| p.source != first.source || p.target != first.target) {
            return Err(Error::MixedEndpoints);
        }
        Ok(Some((first.source, first.target)))
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].1.len() == w[1].1.len())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub source: usize,
    pub target: usize,
    pub coords: Vec<Scalar>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CategoryKind {
    Presented,
    Opposite,
    Quotient,
}

/// The linear data defining a category; shared by presented, opposite and
/// quotient categories.
pub(crate) struct Parts {
    pub field: Field,
    pub kind: CategoryKind,
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Relation>,
    pub max_len: usize,
    pub paths: Vec<Vec<Path>>,
    pub reduce: Vec<Mat>,
    pub section: Vec<Mat>,
    pub comp: Vec<Mat>,
}

pub struct PathCategory {
    field: Field,
    kind: CategoryKind,
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    relations: Vec<Relation>,
    max_len: usize,
    paths: Vec<Vec<Path>>,
    reduce: Vec<Mat>,
    section: Vec<Mat>,
    kernel: Vec<Subspace>,
    comp: Vec<Mat>,
    fingerprint: u64,
    opposite: OnceLock<Arc<PathCategory>>,
    origin: Option<Weak<PathCategory>>,
}

impl fmt::Debug for PathCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PathCategory")
            .field("kind", &self.kind)
            .field("vertices", &self.vertices)
            .field("arrows", &self.arrows.iter().map(|a| &a.name).collect::<Vec<_>>())
            .field("fingerprint", &self.fingerprint)
            .finish()
    }
}

impl PartialEq for PathCategory {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other)
            || (self.fingerprint == other.fingerprint
                && self.kind == other.kind
                && self.vertices == other.vertices
                && self.arrows == other.arrows
                && self.reduce == other.reduce
                && self.comp == other.comp)
    }
}

impl Eq for PathCategory {}

/// Same category, by pointer or by structure.
pub fn same_category(a: &Arc<PathCategory>, b: &Arc<PathCategory>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn enumerate_paths(q: &Quiver, max_len: usize) -> Vec<Vec<Path>> {
    let n = q.vertices.len();
    let mut out = vec![Vec::new(); n * n];
    for x in 0..n {
        let mut layer = vec![Path::trivial(x)];
        for len in 0..=max_len {
            for p in &layer {
                out[x * n + p.target].push(p.clone());
            }
            if len == max_len {
                break;
            }
            let mut next = Vec::new();
            for p in &layer {
                for (ai, a) in q.arrows.iter().enumerate() {
                    if a.source == p.target {
                        let mut arrows = p.arrows.clone();
                        arrows.push(ai);
                        next.push(Path { source: x, target: a.target, arrows });
                    }
                }
            }
            layer = next;
        }
    }
    for list in &mut out {
        list.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.arrows.cmp(&b.arrows)));
    }
    out
}

pub fn build_path_category(
    q: &Quiver,
    rels: &[Relation],
    field: Field,
    max_len: usize,
) -> Result<Arc<PathCategory>> {
    let cat = build_truncated(q, rels, field, max_len)?;
    if rels.iter().any(|r| !r.is_homogeneous()) {
        // Mixed-length relations can hide long terms behind the truncation;
        // demand that a deeper truncation sees the same Hom-spaces.
        let extra = rels.iter().flat_map(|r| r.terms.iter().map(|(_, p)| p.len())).max().unwrap_or(0);
        let deeper = build_truncated(q, rels, field, max_len + extra.max(1))?;
        if deeper.reduce.iter().zip(&cat.reduce).any(|(a, b)| a.rows() != b.rows()) {
            return Err(Error::NonAdmissible("truncation-dependent relations".into()));
        }
    }
    Ok(cat)
}

fn build_truncated(q: &Quiver, rels: &[Relation], field: Field, max_len: usize) -> Result<Arc<PathCategory>> {
    if max_len == 0 {
        return Err(Error::ZeroMaxLen);
    }
    let n = q.vertices.len();
    for r in rels {
        for (_, p) in &r.terms {
            for &a in &p.arrows {
                if a >= q.arrows.len() {
                    return Err(Error::UnknownArrow(format!("#{a}")));
                }
            }
        }
        r.endpoints()?;
    }
    let paths = enumerate_paths(q, max_len);
    let index: Vec<HashMap<Vec<usize>, usize>> = paths
        .iter()
        .map(|list| list.iter().enumerate().map(|(i, p)| (p.arrows.clone(), i)).collect())
        .collect();

    let mut generators: Vec<Vec<Vec<Scalar>>> = vec![Vec::new(); n * n];
    for r in rels {
        let Some((a, b)) = r.endpoints()? else { continue };
        for s in 0..n {
            for w in &paths[s * n + a] {
                for t in 0..n {
                    for u in &paths[b * n + t] {
                        let pair = s * n + t;
                        let mut v = vec![Scalar::zero(); paths[pair].len()];
                        let mut any = false;
                        for (c, p) in &r.terms {
                            let full = w.concat(p).concat(u);
                            if full.len() > max_len {
                                continue;
                            }
                            let j = index[pair][&full.arrows];
                            v[j] = field.add(&v[j], c);
                            any = true;
                        }
                        if any {
                            generators[pair].push(v);
                        }
                    }
                }
            }
        }
    }

    let mut reduce = Vec::with_capacity(n * n);
    let mut section = Vec::with_capacity(n * n);
    for pair in 0..n * n {
        let ideal = Subspace::span(field, paths[pair].len(), &generators[pair]);
        for (j, p) in paths[pair].iter().enumerate() {
            if p.len() == max_len {
                let mut e = vec![Scalar::zero(); paths[pair].len()];
                e[j] = field.one();
                if !ideal.contains(&e) {
                    return Err(Error::NonAdmissible(p.label(&q.vertices, &q.arrows)));
                }
            }
        }
        reduce.push(ideal.quotient_map());
        section.push(ideal.quotient_section());
    }

    let mut comp = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let dxy = section[x * n + y].cols();
                let dyz = section[y * n + z].cols();
                let dxz = reduce[x * n + z].rows();
                let mut t = Mat::zeros(field, dxz, dyz * dxy);
                for g in 0..dyz {
                    let gp = basis_path(&paths[y * n + z], &section[y * n + z], g);
                    for f in 0..dxy {
                        let fp = basis_path(&paths[x * n + y], &section[x * n + y], f);
                        let full = fp.concat(gp);
                        if full.len() > max_len {
                            continue;
                        }
                        let j = index[x * n + z][&full.arrows];
                        for i in 0..dxz {
                            t.set(i, g * dxy + f, reduce[x * n + z].get(i, j).clone());
                        }
                    }
                }
                comp.push(t);
            }
        }
    }

    let cat = PathCategory::from_parts(Parts {
        field,
        kind: CategoryKind::Presented,
        vertices: q.vertices.clone(),
        arrows: q.arrows.clone(),
        relations: rels.to_vec(),
        max_len,
        paths,
        reduce,
        section,
        comp,
    });
    debug_assert!(cat.check_associativity());
    Ok(cat)
}

fn basis_path<'a>(paths: &'a [Path], section: &Mat, j: usize) -> &'a Path {
    let i = (0..section.rows()).find(|&i| !section.get(i, j).is_zero()).expect("section column");
    &paths[i]
}

impl PathCategory {
    pub(crate) fn from_parts(p: Parts) -> Arc<Self> {
        Self::from_parts_with_origin(p, None)
    }

    fn from_parts_with_origin(p: Parts, origin: Option<Weak<PathCategory>>) -> Arc<Self> {
        let kernel = p.reduce.iter().map(|r| r.kernel_basis()).collect();
        let mut h = DefaultHasher::new();
        p.kind.hash(&mut h);
        p.field.hash(&mut h);
        p.vertices.hash(&mut h);
        p.arrows.hash(&mut h);
        p.reduce.hash(&mut h);
        p.comp.hash(&mut h);
        Arc::new(PathCategory {
            field: p.field,
            kind: p.kind,
            vertices: p.vertices,
            arrows: p.arrows,
            relations: p.relations,
            max_len: p.max_len,
            paths: p.paths,
            reduce: p.reduce,
            section: p.section,
            kernel,
            comp: p.comp,
            fingerprint: h.finish(),
            opposite: OnceLock::new(),
            origin,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn kind(&self) -> CategoryKind {
        self.kind
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn quiver(&self) -> Quiver {
        Quiver { vertices: self.vertices.clone(), arrows: self.arrows.clone() }
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.vertices.iter().position(|v| v == name).ok_or_else(|| Error::UnknownVertex(name.into()))
    }

    pub fn arrow_index(&self, name: &str) -> Result<usize> {
        self.arrows.iter().position(|a| a.name == name).ok_or_else(|| Error::UnknownArrow(name.into()))
    }

    fn pair(&self, x: usize, y: usize) -> usize {
        x * self.vertices.len() + y
    }

    pub fn hom_dim(&self, x: usize, y: usize) -> usize {
        self.reduce[self.pair(x, y)].rows()
    }

    pub fn paths(&self, x: usize, y: usize) -> &[Path] {
        &self.paths[self.pair(x, y)]
    }

    /// Path coordinates → Hom coordinates.
    pub fn reduce_map(&self, x: usize, y: usize) -> &Mat {
        &self.reduce[self.pair(x, y)]
    }

    /// Hom coordinates → a path combination representing the class.
    pub fn section_map(&self, x: usize, y: usize) -> &Mat {
        &self.section[self.pair(x, y)]
    }

    /// Path combinations that vanish in `Hom(x, y)`.
    pub fn relation_space(&self, x: usize, y: usize) -> &Subspace {
        &self.kernel[self.pair(x, y)]
    }

    pub fn comp_table(&self, x: usize, y: usize, z: usize) -> &Mat {
        let n = self.vertices.len();
        &self.comp[(x * n + y) * n + z]
    }

    pub fn basis_labels(&self, x: usize, y: usize) -> Vec<String> {
        let s = self.section_map(x, y);
        (0..s.cols())
            .map(|j| {
                let terms: Vec<String> = (0..s.rows())
                    .filter(|&i| !s.get(i, j).is_zero())
                    .map(|i| {
                        let lbl = self.paths(x, y)[i].label(&self.vertices, &self.arrows);
                        if s.get(i, j) == &self.field.one() { lbl } else { format!("{}*{}", s.get(i, j), lbl) }
                    })
                    .collect();
                terms.join("+")
            })
            .collect()
    }

    pub fn path_coords(&self, p: &Path) -> Vec<Scalar> {
        let list = self.paths(p.source, p.target);
        let r = self.reduce_map(p.source, p.target);
        match list.iter().position(|q| q.arrows == p.arrows) {
            Some(j) => r.column(j),
            None => vec![Scalar::zero(); r.rows()],
        }
    }

    pub fn identity(&self, v: usize) -> Morphism {
        Morphism { source: v, target: v, coords: self.path_coords(&Path::trivial(v)) }
    }

    pub fn arrow(&self, a: usize) -> Morphism {
        let ar = &self.arrows[a];
        let p = Path { source: ar.source, target: ar.target, arrows: vec![a] };
        Morphism { source: ar.source, target: ar.target, coords: self.path_coords(&p) }
    }

    pub fn path_morphism(&self, p: &Path) -> Morphism {
        Morphism { source: p.source, target: p.target, coords: self.path_coords(p) }
    }

    pub fn basis_morphism(&self, x: usize, y: usize, j: usize) -> Morphism {
        let mut coords = vec![Scalar::zero(); self.hom_dim(x, y)];
        coords[j] = self.field.one();
        Morphism { source: x, target: y, coords }
    }

    pub fn zero_morphism(&self, x: usize, y: usize) -> Morphism {
        Morphism { source: x, target: y, coords: vec![Scalar::zero(); self.hom_dim(x, y)] }
    }

    /// A zero object: its identity vanishes.
    pub fn is_zero_object(&self, v: usize) -> bool {
        self.hom_dim(v, v) == 0
    }

    pub fn compose_coords(&self, x: usize, y: usize, z: usize, g: &[Scalar], f: &[Scalar]) -> Vec<Scalar> {
        let gm = Mat::from_columns(self.field, g.len(), &[g.to_vec()]);
        let fm = Mat::from_columns(self.field, f.len(), &[f.to_vec()]);
        let k = gm.kron(&fm);
        self.comp_table(x, y, z).mul_vec(&k.column(0))
    }

    /// `g ∘ f`, with `f` applied first.
    pub fn compose(&self, g: &Morphism, f: &Morphism) -> Result<Morphism> {
        if f.target != g.source {
            return Err(Error::Composability(format!(
                "{} -> {} then {} -> {}",
                self.vertices[f.source], self.vertices[f.target], self.vertices[g.source], self.vertices[g.target]
            )));
        }
        if f.coords.len() != self.hom_dim(f.source, f.target) || g.coords.len() != self.hom_dim(g.source, g.target) {
            return Err(Error::Composability("coordinate length".into()));
        }
        Ok(Morphism {
            source: f.source,
            target: g.target,
            coords: self.compose_coords(f.source, f.target, g.target, &g.coords, &f.coords),
        })
    }

    pub fn check_associativity(&self) -> bool {
        let n = self.vertex_count();
        for w in 0..n {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        for f in 0..self.hom_dim(w, x) {
                            for g in 0..self.hom_dim(x, y) {
                                for h in 0..self.hom_dim(y, z) {
                                    let (fm, gm, hm) = (
                                        self.basis_morphism(w, x, f),
                                        self.basis_morphism(x, y, g),
                                        self.basis_morphism(y, z, h),
                                    );
                                    let a = self.compose(&self.compose(&hm, &gm).unwrap(), &fm).unwrap();
                                    let b = self.compose(&hm, &self.compose(&gm, &fm).unwrap()).unwrap();
                                    if a != b {
                                        return false;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// `C^op`: same vertices, reversed arrows, identical Hom bases.
    pub fn opposite(self: &Arc<Self>) -> Arc<PathCategory> {
        if let Some(o) = self.origin.as_ref().and_then(|w| w.upgrade()) {
            return o;
        }
        self.opposite.get_or_init(|| self.build_opposite()).clone()
    }

    fn build_opposite(self: &Arc<Self>) -> Arc<PathCategory> {
        let n = self.vertex_count();
        let t = |x: usize, y: usize| y * n + x;
        let mut paths = Vec::with_capacity(n * n);
        let mut reduce = Vec::with_capacity(n * n);
        let mut section = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                paths.push(self.paths[t(x, y)].iter().map(Path::reversed).collect());
                reduce.push(self.reduce[t(x, y)].clone());
                section.push(self.section[t(x, y)].clone());
            }
        }
        let mut comp = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    // g: y→z and f: x→y in C^op are g: z→y and f: y→x in C.
                    let src = self.comp_table(z, y, x);
                    let dzy = self.hom_dim(z, y);
                    let dyx = self.hom_dim(y, x);
                    let mut m = Mat::zeros(self.field, src.rows(), src.cols());
                    for g in 0..dzy {
                        for f in 0..dyx {
                            for i in 0..src.rows() {
                                m.set(i, g * dyx + f, src.get(i, f * dzy + g).clone());
                            }
                        }
                    }
                    comp.push(m);
                }
            }
        }
        let relations = self
            .relations
            .iter()
            .map(|r| Relation { terms: r.terms.iter().map(|(c, p)| (c.clone(), p.reversed())).collect() })
            .collect();
        let kind = match self.kind {
            CategoryKind::Opposite => CategoryKind::Presented,
            CategoryKind::Presented => CategoryKind::Opposite,
            CategoryKind::Quotient => CategoryKind::Quotient,
        };
        PathCategory::from_parts_with_origin(
            Parts {
                field: self.field,
                kind,
                vertices: self.vertices.clone(),
                arrows: self.quiver().reversed().arrows,
                relations,
                max_len: self.max_len,
                paths,
                reduce,
                section,
                comp,
            },
            Some(Arc::downgrade(self)),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(n: usize, rad2: bool, max_len: usize) -> Result<Arc<PathCategory>> {
        let vs: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let arrows: Vec<(String, String, String)> =
            (1..n).map(|i| (format!("a{i}"), i.to_string(), (i + 1).to_string())).collect();
        let q = Quiver::new(&vs, &arrows)?;
        let one = Field::Rationals.one();
        let rels: Vec<Relation> = if rad2 {
            (1..n - 1)
                .map(|i| Relation::from_names(&q, &[(one.clone(), vec![format!("a{}", i + 1), format!("a{i}")])]))
                .collect::<Result<_>>()?
        } else {
            Vec::new()
        };
        build_path_category(&q, &rels, Field::Rationals, max_len)
    }

    #[test]
    fn a2_dims() {
        let c = line(2, false, 2).unwrap();
        assert_eq!((c.hom_dim(0, 1), c.hom_dim(0, 0), c.hom_dim(1, 1), c.hom_dim(1, 0)), (1, 1, 1, 0));
    }

    #[test]
    fn z6_dims_and_composition() {
        let c = line(6, true, 2).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                let expect = usize::from(j == i || j == i + 1);
                assert_eq!(c.hom_dim(i, j), expect, "Hom({i},{j})");
            }
        }
        let g = c.arrow(1);
        let f = c.arrow(0);
        assert!(c.compose(&g, &f).unwrap().coords.iter().all(|x| x.is_zero()));
        assert!(c.compose(&f, &g).is_err());
        assert_eq!(c.compose(&c.identity(1), &f).unwrap(), f);
    }

    #[test]
    fn a3h_composite_is_basis_path() {
        let c = line(3, false, 3).unwrap();
        let h = c.compose(&c.arrow(1), &c.arrow(0)).unwrap();
        assert_eq!(h.coords, vec![Field::Rationals.one()]);
        assert_eq!(c.basis_labels(0, 2), vec!["a2.a1".to_string()]);
    }

    #[test]
    fn loop_without_relations_is_rejected() {
        let q = Quiver::new(&["1"], &[("x", "1", "1")]).unwrap();
        assert!(matches!(build_path_category(&q, &[], Field::Rationals, 1), Err(Error::NonAdmissible(_))));
    }

    #[test]
    fn unknown_vertex() {
        assert_eq!(Quiver::new(&["1"], &[("a", "1", "9")]), Err(Error::UnknownVertex("9".into())));
    }

    #[test]
    fn opposite_dims_and_involution() {
        let c = line(6, true, 2).unwrap();
        let o = c.opposite();
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(c.hom_dim(x, y), o.hom_dim(y, x));
            }
        }
        assert!(o.check_associativity());
        assert!(Arc::ptr_eq(&o.opposite(), &c));
        let a3 = line(3, false, 3).unwrap();
        let fresh = a3.opposite().build_opposite();
        assert!(same_category(&fresh, &a3));
        // composition in C^op is reversed composition in C
        let ao = a3.opposite();
        let h = ao.compose(&ao.arrow(0), &ao.arrow(1)).unwrap();
        assert_eq!(h.coords, a3.compose(&a3.arrow(1), &a3.arrow(0)).unwrap().coords);
    }

    #[test]
    fn relations_vanish() {
        let c = line(6, true, 3).unwrap();
        for r in c.relations() {
            let (s, t) = r.endpoints().unwrap().unwrap();
            let mut v = vec![Scalar::zero(); c.hom_dim(s, t)];
            for (k, p) in &r.terms {
                for (vi, pi) in v.iter_mut().zip(c.path_coords(p)) {
                    *vi += k * pi;
                }
            }
            assert!(v.iter().all(|x| x.is_zero()));
        }
    }
}
