//! Line-oriented instance files: quiver, relations, bundles and modules.
//!
//! ```text
//! field Q                      # or: field F 7
//! maxlen 2
//! vertex 1
//! arrow a1: 1 -> 2
//! relation a2.a1 + -1/2*b2.b1
//! bundle P = 1,2
//! module M { dim 1=1; dim 2=1; map a1=[[1]] }
//! ```

use crate::error::Error;
use crate::exactlin::{Field, Mat, Scalar};
use crate::funmod::{indecomposable_injective, simple, yoneda_projective, FModule, ProjBundle};
use crate::pathcat::{build_path_category, PathCategory, Quiver, Relation};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt::{self, Write as _};
use std::sync::Arc;

pub const FIXTURES: [(&str, &str); 4] = [
    ("a2", include_str!("../fixtures/a2.cat")),
    ("a3h", include_str!("../fixtures/a3h.cat")),
    ("z6", include_str!("../fixtures/z6.cat")),
    ("aus_a2", include_str!("../fixtures/aus_a2.cat")),
];

/// Text of a shipped fixture, by name with or without `.cat`.
pub fn fixture(name: &str) -> Option<&'static str> {
    let stem = name.strip_suffix(".cat").unwrap_or(name);
    FIXTURES.iter().find(|(n, _)| *n == stem).map(|(_, t)| *t)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InstanceError {
    Parse(ParseError),
    Semantic { line: Option<usize>, error: Error },
}

impl fmt::Display for InstanceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstanceError::Parse(e) => write!(f, "parse error at {e}"),
            InstanceError::Semantic { line: Some(l), error } => write!(f, "line {l}: {error}"),
            InstanceError::Semantic { line: None, error } => write!(f, "{error}"),
        }
    }
}

impl std::error::Error for InstanceError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowSpec {
    pub name: String,
    pub source: String,
    pub target: String,
}

/// Terms of a relation; arrow names are kept in written (right-to-left) order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSpec {
    pub terms: Vec<(Scalar, Vec<String>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleSpec {
    pub name: String,
    pub vertices: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSpec {
    pub name: String,
    pub dims: Vec<(String, usize)>,
    pub maps: Vec<(String, Vec<Vec<Scalar>>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceSpec {
    pub field: Field,
    pub max_len: Option<usize>,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
    pub relations: Vec<RelationSpec>,
    pub bundles: Vec<BundleSpec>,
    pub modules: Vec<ModuleSpec>,
}

struct Cursor<'a> {
    line: usize,
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, InstanceError> {
        Err(InstanceError::Parse(ParseError {
            line: self.line,
            column: self.text[..self.pos].chars().count() + 1,
            message: message.into(),
        }))
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.text.len()
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), InstanceError> {
        if self.eat(s) {
            Ok(())
        } else {
            self.err(format!("expected `{s}`"))
        }
    }

    fn ident(&mut self) -> Result<String, InstanceError> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_alphanumeric() || c == '_' || c == '\'' {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
        if start == self.pos {
            return self.err("expected a name");
        }
        Ok(self.text[start..self.pos].to_string())
    }

    fn uint(&mut self) -> Result<usize, InstanceError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a non-negative integer");
        }
        match self.text[start..self.pos].parse() {
            Ok(n) => Ok(n),
            Err(_) => self.err("integer out of range"),
        }
    }

    /// `[-]digits[/digits]`.
    fn number(&mut self, field: Field) -> Result<Scalar, InstanceError> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some('-') {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if digits_start == self.pos {
            self.pos = start;
            return self.err("expected a number");
        }
        let num: BigInt = self.text[start..self.pos].parse().expect("digits");
        let mut den = BigInt::one();
        if self.peek() == Some('/') {
            self.pos += 1;
            let ds = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            if ds == self.pos {
                return self.err("expected a denominator");
            }
            den = self.text[ds..self.pos].parse().expect("digits");
        }
        if den.is_zero() {
            return self.err("zero denominator");
        }
        match field.from_ratio(&num, &den) {
            Ok(x) => Ok(x),
            Err(e) => self.err(e.to_string()),
        }
    }

    fn looks_like_number(&mut self) -> bool {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let body = rest.strip_prefix('-').unwrap_or(rest);
        let digits = body.bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return false;
        }
        // A vertex or arrow may itself be numeric; a coefficient is followed by `*` or `/`.
        let after = body[digits..].trim_start();
        after.starts_with('*') || after.starts_with('/')
    }
}

fn strip_comment(line: &str) -> &str {
    line.find('#').map_or(line, |i| &line[..i])
}

struct Declared {
    vertices: Vec<String>,
    arrows: Vec<ArrowSpec>,
    names: Vec<String>,
}

impl Declared {
    fn vertex(&self, c: &Cursor, v: &str) -> Result<(), InstanceError> {
        if self.vertices.iter().any(|x| x == v) {
            Ok(())
        } else {
            Err(InstanceError::Semantic { line: Some(c.line), error: Error::UnknownVertex(v.into()) })
        }
    }

    fn arrow(&self, c: &Cursor, a: &str) -> Result<&ArrowSpec, InstanceError> {
        self.arrows
            .iter()
            .find(|x| x.name == a)
            .ok_or(InstanceError::Semantic { line: Some(c.line), error: Error::UnknownArrow(a.into()) })
    }

    fn fresh(&mut self, c: &Cursor, n: &str) -> Result<(), InstanceError> {
        if self.names.iter().any(|x| x == n) {
            return Err(InstanceError::Semantic { line: Some(c.line), error: Error::DuplicateName(n.into()) });
        }
        self.names.push(n.into());
        Ok(())
    }
}

fn parse_field(c: &mut Cursor) -> Result<Field, InstanceError> {
    if c.eat("Q") {
        return Ok(Field::Rationals);
    }
    c.expect("F")?;
    let p = c.uint()?;
    match Field::prime(p as u64) {
        Ok(f) => Ok(f),
        Err(e) => c.err(e.to_string()),
    }
}

fn parse_matrix(c: &mut Cursor, field: Field) -> Result<Vec<Vec<Scalar>>, InstanceError> {
    c.expect("[")?;
    let mut rows = Vec::new();
    if c.eat("]") {
        return Ok(rows);
    }
    loop {
        c.expect("[")?;
        let mut row = Vec::new();
        if !c.eat("]") {
            loop {
                row.push(c.number(field)?);
                if c.eat("]") {
                    break;
                }
                c.expect(",")?;
            }
        }
        rows.push(row);
        if c.eat("]") {
            break;
        }
        c.expect(",")?;
    }
    Ok(rows)
}

pub fn parse_instance(text: &str) -> Result<InstanceSpec, InstanceError> {
    // The field is needed to read coefficients, so it is located first.
    let mut field = None;
    for (i, raw) in text.lines().enumerate() {
        let mut c = Cursor { line: i + 1, text: strip_comment(raw), pos: 0 };
        if c.at_end() {
            continue;
        }
        let save = c.pos;
        if c.ident().ok().as_deref() == Some("field") {
            if field.is_some() {
                c.pos = save;
                return c.err("field declared twice");
            }
            let f = parse_field(&mut c)?;
            if !c.at_end() {
                return c.err("unexpected trailing text");
            }
            field = Some(f);
        }
    }
    let field = field.unwrap_or(Field::Rationals);
    let mut spec = InstanceSpec {
        field,
        max_len: None,
        vertices: Vec::new(),
        arrows: Vec::new(),
        relations: Vec::new(),
        bundles: Vec::new(),
        modules: Vec::new(),
    };
    let mut decl = Declared { vertices: Vec::new(), arrows: Vec::new(), names: Vec::new() };
    for (i, raw) in text.lines().enumerate() {
        let mut c = Cursor { line: i + 1, text: strip_comment(raw), pos: 0 };
        if c.at_end() {
            continue;
        }
        let kw = c.ident()?;
        match kw.as_str() {
            "field" => {
                parse_field(&mut c)?;
            }
            "maxlen" => {
                if spec.max_len.is_some() {
                    return c.err("maxlen declared twice");
                }
                spec.max_len = Some(c.uint()?);
            }
            "vertex" => {
                let v = c.ident()?;
                if decl.vertices.contains(&v) {
                    return Err(InstanceError::Semantic { line: Some(c.line), error: Error::DuplicateName(v) });
                }
                decl.vertices.push(v.clone());
                spec.vertices.push(v);
            }
            "arrow" => {
                let name = c.ident()?;
                c.expect(":")?;
                let source = c.ident()?;
                c.expect("->")?;
                let target = c.ident()?;
                decl.vertex(&c, &source)?;
                decl.vertex(&c, &target)?;
                if decl.arrows.iter().any(|a| a.name == name) {
                    return Err(InstanceError::Semantic { line: Some(c.line), error: Error::DuplicateName(name) });
                }
                let a = ArrowSpec { name, source, target };
                decl.arrows.push(a.clone());
                spec.arrows.push(a);
            }
            "relation" => {
                let mut terms = Vec::new();
                loop {
                    let coeff = if c.looks_like_number() {
                        let x = c.number(field)?;
                        c.expect("*")?;
                        x
                    } else if c.eat("-") {
                        field.neg(&field.one())
                    } else {
                        field.one()
                    };
                    let mut names = vec![c.ident()?];
                    while c.eat(".") {
                        names.push(c.ident()?);
                    }
                    for n in &names {
                        decl.arrow(&c, n)?;
                    }
                    terms.push((coeff, names));
                    if c.at_end() {
                        break;
                    }
                    c.expect("+")?;
                }
                spec.relations.push(RelationSpec { terms });
            }
            "bundle" => {
                let name = c.ident()?;
                decl.fresh(&c, &name)?;
                c.expect("=")?;
                let mut vertices = vec![c.ident()?];
                while c.eat(",") {
                    vertices.push(c.ident()?);
                }
                for v in &vertices {
                    decl.vertex(&c, v)?;
                }
                spec.bundles.push(BundleSpec { name, vertices });
            }
            "module" => {
                let name = c.ident()?;
                decl.fresh(&c, &name)?;
                c.expect("{")?;
                let mut dims = Vec::new();
                let mut maps = Vec::new();
                while !c.eat("}") {
                    if c.eat(";") {
                        continue;
                    }
                    match c.ident()?.as_str() {
                        "dim" => {
                            let v = c.ident()?;
                            decl.vertex(&c, &v)?;
                            c.expect("=")?;
                            dims.push((v, c.uint()?));
                        }
                        "map" => {
                            let a = c.ident()?;
                            decl.arrow(&c, &a)?;
                            c.expect("=")?;
                            maps.push((a, parse_matrix(&mut c, field)?));
                        }
                        other => return c.err(format!("unknown module item `{other}`")),
                    }
                    if !c.eat(";") {
                        c.expect("}")?;
                        break;
                    }
                }
                spec.modules.push(ModuleSpec { name, dims, maps });
            }
            other => return c.err(format!("unknown declaration `{other}`")),
        }
        if !c.at_end() {
            return c.err("unexpected trailing text");
        }
    }
    Ok(spec)
}

fn write_scalar(out: &mut String, x: &Scalar) {
    let _ = write!(out, "{x}");
}

fn write_matrix(out: &mut String, rows: &[Vec<Scalar>]) {
    out.push('[');
    for (i, r) in rows.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push('[');
        for (j, x) in r.iter().enumerate() {
            if j > 0 {
                out.push(',');
            }
            write_scalar(out, x);
        }
        out.push(']');
    }
    out.push(']');
}

/// Canonical text; `parse_instance(&print_instance(s)) == s`.
pub fn print_instance(spec: &InstanceSpec) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "field {}", spec.field);
    if let Some(m) = spec.max_len {
        let _ = writeln!(out, "maxlen {m}");
    }
    for v in &spec.vertices {
        let _ = writeln!(out, "vertex {v}");
    }
    for a in &spec.arrows {
        let _ = writeln!(out, "arrow {}: {} -> {}", a.name, a.source, a.target);
    }
    for r in &spec.relations {
        out.push_str("relation ");
        for (i, (c, names)) in r.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            if !c.is_one() {
                write_scalar(&mut out, c);
                out.push('*');
            }
            out.push_str(&names.join("."));
        }
        out.push('\n');
    }
    for b in &spec.bundles {
        let _ = writeln!(out, "bundle {} = {}", b.name, b.vertices.join(","));
    }
    for m in &spec.modules {
        let _ = write!(out, "module {} {{ ", m.name);
        let mut items = Vec::new();
        for (v, d) in &m.dims {
            items.push(format!("dim {v}={d}"));
        }
        for (a, rows) in &m.maps {
            let mut s = format!("map {a}=");
            write_matrix(&mut s, rows);
            items.push(s);
        }
        out.push_str(&items.join("; "));
        out.push_str(" }\n");
    }
    out
}

/// A built instance: the category with its named bundles and modules.
#[derive(Clone, Debug)]
pub struct Instance {
    pub spec: InstanceSpec,
    pub category: Arc<PathCategory>,
    pub bundles: Vec<(String, ProjBundle)>,
    pub modules: Vec<(String, FModule)>,
}

fn semantic(error: Error) -> InstanceError {
    InstanceError::Semantic { line: None, error }
}

pub fn build_instance(spec: &InstanceSpec) -> Result<Instance, InstanceError> {
    let arrows: Vec<(&str, &str, &str)> =
        spec.arrows.iter().map(|a| (a.name.as_str(), a.source.as_str(), a.target.as_str())).collect();
    let verts: Vec<&str> = spec.vertices.iter().map(String::as_str).collect();
    let q = Quiver::new(&verts, &arrows).map_err(semantic)?;
    let rels = spec
        .relations
        .iter()
        .map(|r| Relation::from_names(&q, &r.terms))
        .collect::<crate::Result<Vec<_>>>()
        .map_err(semantic)?;
    let max_len = spec.max_len.unwrap_or(spec.vertices.len().max(1));
    let cat = build_path_category(&q, &rels, spec.field, max_len).map_err(semantic)?;
    let vindex = |v: &str| cat.vertex_index(v).map_err(semantic);
    let mut bundles = Vec::new();
    for b in &spec.bundles {
        let vs = b.vertices.iter().map(|v| vindex(v)).collect::<Result<Vec<_>, _>>()?;
        bundles.push((b.name.clone(), ProjBundle::new(&cat, vs).map_err(semantic)?));
    }
    let mut modules = Vec::new();
    for m in &spec.modules {
        let mut dims = vec![0; cat.vertex_count()];
        for (v, d) in &m.dims {
            dims[vindex(v)?] = *d;
        }
        let mut action: Vec<Option<Mat>> = vec![None; cat.arrows().len()];
        for (a, rows) in &m.maps {
            let ai = cat.arrow_index(a).map_err(semantic)?;
            let ar = &cat.arrows()[ai];
            let (r, c) = (dims[ar.target], dims[ar.source]);
            let ok = rows.len() == r && rows.iter().all(|row| row.len() == c);
            if !ok {
                return Err(semantic(Error::InvalidModule(format!(
                    "module {}: map {a} must be {r}x{c}",
                    m.name
                ))));
            }
            action[ai] = Some(if r == 0 { Mat::zeros(spec.field, 0, c) } else { Mat::from_rows(spec.field, c, rows) });
        }
        let action = action
            .into_iter()
            .enumerate()
            .map(|(ai, a)| {
                let ar = &cat.arrows()[ai];
                a.unwrap_or_else(|| Mat::zeros(spec.field, dims[ar.target], dims[ar.source]))
            })
            .collect();
        let module = FModule::new(cat.clone(), dims, action).map_err(|e| {
            semantic(Error::InvalidModule(format!("module {}: {e}", m.name)))
        })?;
        modules.push((m.name.clone(), module));
    }
    Ok(Instance { spec: spec.clone(), category: cat, bundles, modules })
}

pub fn load_instance(text: &str) -> Result<Instance, InstanceError> {
    build_instance(&parse_instance(text)?)
}

impl Instance {
    pub fn bundle(&self, name: &str) -> Result<ProjBundle, Error> {
        if let Some((_, b)) = self.bundles.iter().find(|(n, _)| n == name) {
            return Ok(b.clone());
        }
        // Inline form: a comma-separated vertex list.
        let vs = name
            .split(',')
            .map(|v| self.category.vertex_index(v.trim()))
            .collect::<crate::Result<Vec<_>>>()
            .map_err(|_| Error::UnknownName(name.into()))?;
        ProjBundle::new(&self.category, vs)
    }

    /// A declared module, or `S<v>`, `P<v>`, `I<v>` for the simple,
    /// projective and injective at vertex `v`.
    pub fn module(&self, name: &str) -> Result<FModule, Error> {
        if let Some((_, m)) = self.modules.iter().find(|(n, _)| n == name) {
            return Ok(m.clone());
        }
        let cat = &self.category;
        let mut chars = name.chars();
        let kind = chars.next();
        let rest = chars.as_str();
        let v = cat.vertex_index(rest).map_err(|_| Error::UnknownName(name.into()))?;
        match kind {
            Some('S') => Ok(simple(cat, v)),
            Some('P') => Ok(yoneda_projective(cat, v)),
            Some('I') => Ok(indecomposable_injective(cat, v)),
            _ => Err(Error::UnknownName(name.into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_round_trip() {
        for (name, text) in FIXTURES {
            let spec = parse_instance(text).unwrap_or_else(|e| panic!("{name}: {e}"));
            let printed = print_instance(&spec);
            assert_eq!(parse_instance(&printed).unwrap(), spec, "{name}");
            load_instance(text).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn fixture_shapes() {
        let a2 = parse_instance(fixture("a2.cat").unwrap()).unwrap();
        assert_eq!((a2.vertices.len(), a2.arrows.len()), (2, 1));
        let z6 = parse_instance(fixture("z6").unwrap()).unwrap();
        assert_eq!((z6.vertices.len(), z6.arrows.len(), z6.relations.len()), (6, 5, 4));
    }

    #[test]
    fn unknown_vertex_reports_line() {
        let text = "vertex 1\nvertex 2\narrow a: 1 -> 9\n";
        match parse_instance(text) {
            Err(InstanceError::Semantic { line: Some(3), error: Error::UnknownVertex(v) }) => assert_eq!(v, "9"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn syntax_error_position() {
        let text = "vertex 1\narrow a 1 -> 1\n";
        match parse_instance(text) {
            Err(InstanceError::Parse(e)) => assert_eq!((e.line, e.column), (2, 9)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn coefficients_and_signs() {
        let text = "field F 5\nvertex x\nvertex y\narrow a: x -> y\narrow b: x -> y\nrelation a + -1*b\nrelation 3/2*a + -b\n";
        let spec = parse_instance(text).unwrap();
        let f = spec.field;
        assert_eq!(spec.relations[0].terms[1].0, f.from_i64(-1));
        assert_eq!(spec.relations[1].terms[0].0, f.div(&f.from_i64(3), &f.from_i64(2)).unwrap());
        assert_eq!(spec.relations[1].terms[1].0, f.from_i64(-1));
        assert_eq!(parse_instance(&print_instance(&spec)).unwrap(), spec);
    }

    #[test]
    fn non_admissible_is_semantic() {
        let text = "vertex 1\narrow l: 1 -> 1\nmaxlen 3\n";
        assert!(matches!(
            load_instance(text),
            Err(InstanceError::Semantic { error: Error::NonAdmissible(_), .. })
        ));
    }

    #[test]
    fn invalid_module_rejected() {
        let text = "vertex 1\nvertex 2\nvertex 3\narrow a: 1 -> 2\narrow b: 2 -> 3\nrelation b.a\nmaxlen 2\nmodule M { dim 1=1; dim 2=1; dim 3=1; map a=[[1]]; map b=[[1]] }\n";
        assert!(matches!(load_instance(text), Err(InstanceError::Semantic { .. })));
    }
}
