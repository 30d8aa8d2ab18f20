//! Line-oriented text formats for algebras, modules and homology specs.
//!
//! Blank lines and `#` comments are ignored everywhere. Section headers end
//! in `:`; the lines below a header belong to it until the next header.
//!
//! Algebra file:
//!
//! ```text
//! field: Q
//! vertices: 1 2
//! arrows:
//!   alpha: 1 -> 2
//!   beta: 2 -> 2
//! relations:
//!   beta alpha
//!   eps gamma - 1/2 zeta delta
//! ```
//!
//! Module file (the `over:` line picks the algebra or its quadratic dual):
//!
//! ```text
//! over: algebra
//! window: 0 3 truncated
//! dims:
//!   (0, 1) = 1
//!   (1, 2) = 1
//! action:
//!   alpha @ 0 = 1
//!   gamma @ 1 = 1; 0
//! ```
//!
//! Matrices are written row by row, rows separated by `;`. A module file can
//! instead hold one `simple: <vertex> <degree>` or
//! `projective: <vertex> <shift> <top>` line.
//!
//! Homology spec: lines `<index>: <module file>`, paths relative to the spec.

use std::fmt::Write as _;
use std::path::{Path as FsPath, PathBuf};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use koszul_core::exactlin::{format_elem, Field, FieldSpec, Matrix};
use koszul_core::grmod::{GradedModule, ModuleBuilder};
use koszul_core::quiver::{QuadraticAlgebra, Quiver, DUAL_SUFFIX};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{file}:{line}:{col}: {message}")]
pub struct ParseError {
    pub file: String,
    pub line: usize,
    pub col: usize,
    pub message: String,
}

/// A whitespace-separated token with its 1-based column.
#[derive(Clone, Copy, Debug)]
struct Token<'a> {
    col: usize,
    text: &'a str,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Token {
                    col: s + 1,
                    text: &line[s..i],
                });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token {
            col: s + 1,
            text: &line[s..],
        });
    }
    out
}

struct Lines<'a> {
    file: String,
    lines: Vec<(usize, &'a str)>,
}

impl<'a> Lines<'a> {
    fn new(file: &str, text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
            .filter(|(_, l)| !l.trim().is_empty())
            .collect();
        Lines {
            file: file.to_string(),
            lines,
        }
    }

    fn err(&self, line: usize, col: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            file: self.file.clone(),
            line,
            col,
            message: message.into(),
        }
    }

    /// Splits into `(header, header line, value after the colon, body lines)`.
    fn sections(&self, known: &[&str]) -> Result<Vec<Section<'a>>, ParseError> {
        let mut out: Vec<Section<'a>> = Vec::new();
        for &(n, l) in &self.lines {
            let header = l.split_once(':').filter(|(k, _)| known.contains(&k.trim()));
            match header {
                Some((k, v)) => out.push(Section {
                    name: k.trim(),
                    line: n,
                    value: v,
                    value_col: k.len() + 2,
                    body: Vec::new(),
                }),
                None => match out.last_mut() {
                    Some(s) => s.body.push((n, l)),
                    None => {
                        let col = l.len() - l.trim_start().len() + 1;
                        return Err(self.err(n, col, format!("expected one of {}", known.join(": ") + ":")));
                    }
                },
            }
        }
        Ok(out)
    }
}

struct Section<'a> {
    name: &'a str,
    line: usize,
    value: &'a str,
    value_col: usize,
    body: Vec<(usize, &'a str)>,
}

impl<'a> Section<'a> {
    fn value_tokens(&self) -> Vec<Token<'a>> {
        tokens(self.value)
            .into_iter()
            .map(|t| Token {
                col: t.col + self.value_col - 1,
                text: t.text,
            })
            .collect()
    }
}

fn parse_ratio(s: &str) -> Option<BigRational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let digits = |t: &str| !t.is_empty() && t.trim_start_matches(['+', '-']).chars().all(|c| c.is_ascii_digit());
    if !digits(num) || !digits(den) || den.starts_with(['+', '-']) {
        return None;
    }
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    (!d.is_zero()).then(|| BigRational::new(n, d))
}

fn parse_int(lines: &Lines, line: usize, t: Token) -> Result<i64, ParseError> {
    t.text
        .parse()
        .map_err(|_| lines.err(line, t.col, format!("expected an integer, found `{}`", t.text)))
}

/// Field declared in an algebra file: `Q` or a prime.
pub fn parse_field_spec(s: &str) -> Option<FieldSpec> {
    match s {
        "Q" | "q" => Some(FieldSpec::Rationals),
        _ => s
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(s)
            .parse()
            .ok()
            .and_then(|p| FieldSpec::prime(p).ok()),
    }
}

/// Parsed algebra file, independent of the field it is realized over.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraFile {
    pub field: FieldSpec,
    pub vertices: Vec<String>,
    /// `(name, source, target)`.
    pub arrows: Vec<(String, String, String)>,
    /// Terms `(coefficient, left arrow, right arrow)`.
    pub relations: Vec<Vec<(BigRational, String, String)>>,
}

fn is_vertex_name(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '*' | '^' | '\''))
}

/// Arrow names may not look like coefficients.
fn is_arrow_name(s: &str) -> bool {
    is_vertex_name(s) && parse_ratio(s).is_none()
}

pub fn parse_algebra(file: &str, text: &str) -> Result<AlgebraFile, ParseError> {
    let lines = Lines::new(file, text);
    let mut field = None;
    let mut vertices: Option<Vec<String>> = None;
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    let mut relations = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for s in lines.sections(&["field", "vertices", "arrows", "relations"])? {
        if !seen.insert(s.name) {
            return Err(lines.err(s.line, 1, format!("section `{}` given twice", s.name)));
        }
        let vt = s.value_tokens();
        match s.name {
            "field" => {
                let [t] = vt[..] else {
                    return Err(lines.err(s.line, s.value_col, "expected `field: Q` or `field: <prime>`"));
                };
                field = Some(
                    parse_field_spec(t.text)
                        .ok_or_else(|| lines.err(s.line, t.col, format!("`{}` is not Q or a prime", t.text)))?,
                );
            }
            "vertices" => {
                let mut names = Vec::new();
                for t in vt.iter().copied().chain(s.body.iter().flat_map(|&(_, l)| tokens(l))) {
                    if !is_vertex_name(t.text) {
                        return Err(lines.err(s.line, t.col, format!("`{}` is not a vertex name", t.text)));
                    }
                    if names.iter().any(|n| n == t.text) {
                        return Err(lines.err(s.line, t.col, format!("duplicate vertex `{}`", t.text)));
                    }
                    names.push(t.text.to_string());
                }
                vertices = Some(names);
            }
            "arrows" => {
                let verts = vertices
                    .as_ref()
                    .ok_or_else(|| lines.err(s.line, 1, "`vertices:` must come before `arrows:`"))?;
                if let Some(t) = vt.first() {
                    if t.text != "(none)" || vt.len() > 1 {
                        return Err(lines.err(s.line, t.col, "arrows go on the lines below `arrows:`"));
                    }
                }
                for &(n, l) in &s.body {
                    let ts = tokens(l);
                    let bad = || lines.err(n, ts.first().map_or(1, |t| t.col), "expected `name: source -> target`");
                    let [name, src, arrow, tgt] = ts[..] else {
                        return Err(bad());
                    };
                    let Some(name_text) = name.text.strip_suffix(':') else {
                        return Err(bad());
                    };
                    if arrow.text != "->" {
                        return Err(bad());
                    }
                    if !is_arrow_name(name_text) {
                        return Err(lines.err(n, name.col, format!("`{name_text}` is not an arrow name")));
                    }
                    if arrows.iter().any(|a| a.0 == name_text) {
                        return Err(lines.err(n, name.col, format!("duplicate arrow `{name_text}`")));
                    }
                    for v in [src, tgt] {
                        if !verts.iter().any(|x| x == v.text) {
                            return Err(lines.err(n, v.col, format!("unknown vertex `{}`", v.text)));
                        }
                    }
                    arrows.push((name_text.to_string(), src.text.to_string(), tgt.text.to_string()));
                }
            }
            "relations" => {
                if let Some(t) = vt.first() {
                    if t.text != "(none)" || vt.len() > 1 {
                        return Err(lines.err(s.line, t.col, "relations go on the lines below `relations:`"));
                    }
                }
                for &(n, l) in &s.body {
                    relations.push(parse_relation(&lines, n, l, &arrows)?);
                }
            }
            _ => unreachable!("known sections only"),
        }
    }
    let field = field.ok_or_else(|| lines.err(1, 1, "missing `field:` line"))?;
    let vertices = vertices.ok_or_else(|| lines.err(1, 1, "missing `vertices:` line"))?;
    Ok(AlgebraFile {
        field,
        vertices,
        arrows,
        relations,
    })
}

fn parse_relation(
    lines: &Lines,
    n: usize,
    line: &str,
    arrows: &[(String, String, String)],
) -> Result<Vec<(BigRational, String, String)>, ParseError> {
    let ts = tokens(line);
    let mut terms = Vec::new();
    let mut k = 0;
    let mut first = true;
    while k < ts.len() {
        let mut sign = BigRational::one();
        match ts[k].text {
            "+" | "-" => {
                if ts[k].text == "-" {
                    sign = -sign;
                }
                k += 1;
            }
            _ if !first => return Err(lines.err(n, ts[k].col, format!("expected `+` or `-`, found `{}`", ts[k].text))),
            _ => {}
        }
        first = false;
        let mut coeff = sign;
        if let Some(c) = ts.get(k).and_then(|t| parse_ratio(t.text)) {
            coeff *= c;
            k += 1;
        }
        let col = ts.get(k).map_or(line.len() + 1, |t| t.col);
        let (Some(l), Some(r)) = (ts.get(k), ts.get(k + 1)) else {
            return Err(lines.err(n, col, "a relation term is a coefficient and two arrows"));
        };
        let find = |t: &Token| {
            arrows
                .iter()
                .find(|a| a.0 == t.text)
                .ok_or_else(|| lines.err(n, t.col, format!("unknown arrow `{}`", t.text)))
        };
        let (la, ra) = (find(l)?, find(r)?);
        if ra.2 != la.1 {
            return Err(lines.err(n, l.col, format!("`{} {}` is not a path", l.text, r.text)));
        }
        terms.push((coeff, l.text.to_string(), r.text.to_string()));
        k += 2;
    }
    if terms.is_empty() {
        return Err(lines.err(n, 1, "empty relation"));
    }
    Ok(terms)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{file}: {message}")]
    Invalid { file: String, message: String },
}

impl AlgebraFile {
    /// The algebra over `field`, which may differ from the declared one.
    pub fn build<F: Field>(&self, file: &str, field: F) -> Result<QuadraticAlgebra<F>, BuildError> {
        let invalid = |message: String| BuildError::Invalid {
            file: file.to_string(),
            message,
        };
        let q = Quiver::new(
            self.vertices.iter().cloned(),
            self.arrows.iter().map(|(a, s, t)| (a.clone(), s.clone(), t.clone())),
        )
        .map_err(|e| invalid(e.to_string()))?;
        let mut rels = Vec::new();
        for rel in &self.relations {
            let mut terms = Vec::new();
            for (c, l, r) in rel {
                let e = field
                    .from_ratio(c.numer(), c.denom())
                    .ok_or_else(|| invalid(format!("coefficient {c} is undefined over {}", field.spec())))?;
                terms.push((e, l.as_str(), r.as_str()));
            }
            rels.push(terms);
        }
        QuadraticAlgebra::from_named_relations(field, q, &rels).map_err(|e| invalid(e.to_string()))
    }
}

/// Renders an algebra in the file format; parsing the output gives back an
/// algebra with the same presentation.
pub fn write_algebra<F: Field>(a: &QuadraticAlgebra<F>) -> String {
    let q = a.quiver();
    let mut out = String::new();
    let _ = writeln!(out, "field: {}", field_token(a.field().spec()));
    let _ = writeln!(out, "vertices: {}", q.vertices().join(" "));
    if q.arrow_count() == 0 {
        out.push_str("arrows: (none)\n");
    } else {
        out.push_str("arrows:\n");
        for ar in q.arrows() {
            let _ = writeln!(
                out,
                "  {}: {} -> {}",
                ar.name,
                q.vertex_name(ar.source),
                q.vertex_name(ar.target)
            );
        }
    }
    let rels = a.relation_terms();
    if rels.is_empty() {
        out.push_str("relations: (none)\n");
    } else {
        out.push_str("relations:\n");
        for r in &rels {
            let _ = writeln!(out, "  {}", a.format_relation(r));
        }
    }
    out
}

pub fn field_token(spec: FieldSpec) -> String {
    match spec {
        FieldSpec::Rationals => "Q".into(),
        FieldSpec::PrimeField(p) => p.to_string(),
    }
}

/// Which algebra a module file lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Over {
    Algebra,
    Dual,
}

/// The algebra from the command line and its quadratic dual.
pub struct AlgebraPair<F: Field> {
    pub algebra: Arc<QuadraticAlgebra<F>>,
    pub dual: Arc<QuadraticAlgebra<F>>,
}

impl<F: Field> AlgebraPair<F> {
    pub fn new(a: QuadraticAlgebra<F>) -> Self {
        let dual = Arc::new(a.quadratic_dual());
        AlgebraPair {
            algebra: Arc::new(a),
            dual,
        }
    }

    pub fn over(&self, o: Over) -> &Arc<QuadraticAlgebra<F>> {
        match o {
            Over::Algebra => &self.algebra,
            Over::Dual => &self.dual,
        }
    }
}

fn find_vertex<F: Field>(a: &QuadraticAlgebra<F>, name: &str) -> Option<usize> {
    let q = a.quiver();
    q.vertex_index(name).ok().or_else(|| {
        // dual vertices may be written without their star
        q.vertex_index(&format!("{name}{DUAL_SUFFIX}")).ok()
    })
}

fn find_arrow<F: Field>(a: &QuadraticAlgebra<F>, name: &str) -> Option<usize> {
    let q = a.quiver();
    q.arrow_index(name)
        .ok()
        .or_else(|| q.arrow_index(&format!("{name}{DUAL_SUFFIX}")).ok())
}

fn parse_matrix<F: Field>(lines: &Lines, n: usize, field: &F, toks: &[Token]) -> Result<Vec<Vec<F::Elem>>, ParseError> {
    let mut rows = vec![Vec::new()];
    for t in toks {
        for (k, piece) in t.text.split(';').enumerate() {
            if k > 0 {
                rows.push(Vec::new());
            }
            if piece.is_empty() {
                continue;
            }
            let r = parse_ratio(piece).ok_or_else(|| lines.err(n, t.col, format!("`{piece}` is not a number")))?;
            let e = field
                .from_ratio(r.numer(), r.denom())
                .ok_or_else(|| lines.err(n, t.col, format!("`{piece}` is undefined over {}", field.spec())))?;
            rows.last_mut().expect("nonempty").push(e);
        }
    }
    if rows.last().is_some_and(|r| r.is_empty()) && rows.len() > 1 {
        rows.pop();
    }
    if rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(lines.err(
            n,
            toks.first().map_or(1, |t| t.col),
            "matrix rows have different lengths",
        ));
    }
    Ok(rows)
}

/// Parses a module file over the algebra or its dual, as the file says.
pub fn parse_module<F: Field>(file: &str, text: &str, pair: &AlgebraPair<F>) -> Result<GradedModule<F>, BuildError> {
    let lines = Lines::new(file, text);
    let sections = lines.sections(&["over", "simple", "projective", "window", "dims", "action"])?;
    let mut over = Over::Algebra;
    for s in &sections {
        if s.name == "over" {
            over = match s.value.trim() {
                "algebra" => Over::Algebra,
                "dual" => Over::Dual,
                v => {
                    return Err(lines
                        .err(
                            s.line,
                            s.value_col,
                            format!("expected `algebra` or `dual`, found `{v}`"),
                        )
                        .into())
                }
            };
        }
    }
    let a = Arc::clone(pair.over(over));
    let field = a.field().clone();
    let invalid = |message: String| BuildError::Invalid {
        file: file.to_string(),
        message,
    };
    let vertex = |n: usize, t: Token| {
        find_vertex(&a, t.text).ok_or_else(|| lines.err(n, t.col, format!("unknown vertex `{}`", t.text)))
    };
    let mut window: Option<(i64, i64, bool)> = None;
    let mut dims = Vec::new();
    let mut actions = Vec::new();
    for s in &sections {
        let vt = s.value_tokens();
        match s.name {
            "over" => {}
            "simple" | "projective" => {
                if sections.len() > 1 + usize::from(sections.iter().any(|x| x.name == "over")) {
                    return Err(lines
                        .err(s.line, 1, format!("`{}:` stands alone in a module file", s.name))
                        .into());
                }
                let v = vt
                    .first()
                    .ok_or_else(|| lines.err(s.line, s.value_col, "missing vertex"))?;
                let vi = vertex(s.line, *v)?;
                let ints: Vec<i64> = vt[1..]
                    .iter()
                    .map(|t| parse_int(&lines, s.line, *t))
                    .collect::<Result<_, _>>()?;
                let m = match (s.name, ints.as_slice()) {
                    ("simple", [d]) => GradedModule::simple(a, vi, *d),
                    ("simple", []) => GradedModule::simple(a, vi, 0),
                    ("projective", [shift, top]) => GradedModule::projective(a, vi, *shift, *top),
                    _ => {
                        return Err(lines
                            .err(
                                s.line,
                                s.value_col,
                                "expected `simple: <vertex> <degree>` or `projective: <vertex> <shift> <top>`",
                            )
                            .into())
                    }
                };
                return m.map_err(|e| invalid(e.to_string()));
            }
            "window" => {
                let (lo, hi, rest) = match vt[..] {
                    [lo, hi, ref rest @ ..] => (parse_int(&lines, s.line, lo)?, parse_int(&lines, s.line, hi)?, rest),
                    _ => {
                        return Err(lines
                            .err(s.line, s.value_col, "expected `window: <lo> <hi> [truncated]`")
                            .into())
                    }
                };
                let truncated = match rest {
                    [] => false,
                    [t] if t.text == "truncated" => true,
                    [t, ..] => return Err(lines.err(s.line, t.col, format!("unexpected `{}`", t.text)).into()),
                };
                window = Some((lo, hi, truncated));
            }
            "dims" => {
                for &(n, l) in &s.body {
                    // (degree, vertex) = count
                    let bad = || lines.err(n, 1, "expected `(degree, vertex) = count`");
                    let (lhs, rhs) = l.split_once('=').ok_or_else(bad)?;
                    let inner = lhs
                        .trim()
                        .strip_prefix('(')
                        .and_then(|x| x.strip_suffix(')'))
                        .ok_or_else(bad)?;
                    let (d, v) = inner.split_once(',').ok_or_else(bad)?;
                    let col = |needle: &str| l.find(needle.trim()).map_or(1, |c| c + 1);
                    let d: i64 = d
                        .trim()
                        .parse()
                        .map_err(|_| lines.err(n, col(d), format!("`{}` is not a degree", d.trim())))?;
                    let vt = Token {
                        col: col(v),
                        text: v.trim(),
                    };
                    let vi = vertex(n, vt)?;
                    let c: usize = rhs
                        .trim()
                        .parse()
                        .map_err(|_| lines.err(n, col(rhs), format!("`{}` is not a count", rhs.trim())))?;
                    dims.push((n, d, vi, c));
                }
            }
            "action" => {
                for &(n, l) in &s.body {
                    let ts = tokens(l);
                    let bad = || lines.err(n, ts.first().map_or(1, |t| t.col), "expected `arrow @ degree = rows`");
                    let [arrow, at, d, eq, ref rest @ ..] = ts[..] else {
                        return Err(bad().into());
                    };
                    if at.text != "@" || eq.text != "=" {
                        return Err(bad().into());
                    }
                    let ai = find_arrow(&a, arrow.text)
                        .ok_or_else(|| lines.err(n, arrow.col, format!("unknown arrow `{}`", arrow.text)))?;
                    let d = parse_int(&lines, n, d)?;
                    let rows = parse_matrix(&lines, n, &field, rest)?;
                    actions.push((n, ai, d, rows));
                }
            }
            _ => unreachable!("known sections only"),
        }
    }
    let (lo, hi, truncated) = window.ok_or_else(|| lines.err(1, 1, "missing `window:` line"))?;
    let mut b = ModuleBuilder::new(Arc::clone(&a), lo, hi).truncated_above(truncated);
    for (n, d, v, c) in dims {
        if d < lo || d > hi {
            return Err(lines
                .err(n, 1, format!("degree {d} lies outside the window [{lo}, {hi}]"))
                .into());
        }
        b = b.dim(d, v, c);
    }
    for (n, ai, d, rows) in actions {
        let ncols = rows.first().map_or(0, Vec::len);
        let data: Vec<F::Elem> = rows.iter().flatten().cloned().collect();
        let m = Matrix::from_vec(&field, rows.len(), ncols, data);
        if d < lo || d >= hi {
            return Err(lines
                .err(n, 1, format!("action at degree {d} leaves the window [{lo}, {hi}]"))
                .into());
        }
        b = b.action(ai, d, m);
    }
    b.build().map_err(|e| invalid(e.to_string()))
}

/// Renders a module in the file format. Zero blocks are omitted.
pub fn write_module<F: Field>(m: &GradedModule<F>, over: Over) -> String {
    let a = m.algebra();
    let q = a.quiver();
    let f = m.field();
    let (lo, hi) = m.window();
    let mut out = String::new();
    if over == Over::Dual {
        out.push_str("over: dual\n");
    }
    let _ = writeln!(
        out,
        "window: {lo} {hi}{}",
        if m.truncated_above() { " truncated" } else { "" }
    );
    let dv = m.dimension_vector();
    if !dv.is_empty() {
        out.push_str("dims:\n");
        for (&(d, v), n) in &dv {
            let _ = writeln!(out, "  ({d}, {}) = {n}", q.vertex_name(v));
        }
    }
    let mut acts = Vec::new();
    for d in lo..hi {
        for (ai, ar) in q.arrows().iter().enumerate() {
            let mat = m.act(ai, d);
            if mat.rows() == 0 || mat.cols() == 0 || mat.is_zero() {
                continue;
            }
            let rows: Vec<String> = (0..mat.rows())
                .map(|r| {
                    mat.row(r)
                        .iter()
                        .map(|e| format_elem(f, e))
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect();
            acts.push(format!("  {} @ {d} = {}", ar.name, rows.join("; ")));
        }
    }
    if !acts.is_empty() {
        out.push_str("action:\n");
        for l in acts {
            out.push_str(&l);
            out.push('\n');
        }
    }
    out
}

/// `(index, module file)` entries of a homology spec, paths resolved
/// against the spec's directory.
pub fn parse_homology_spec(file: &str, text: &str) -> Result<Vec<(i64, PathBuf)>, ParseError> {
    let lines = Lines::new(file, text);
    let base = FsPath::new(file).parent().map(FsPath::to_path_buf).unwrap_or_default();
    let mut out: Vec<(i64, PathBuf)> = Vec::new();
    for &(n, l) in &lines.lines {
        let col = l.len() - l.trim_start().len() + 1;
        let (i, p) = l
            .split_once(':')
            .ok_or_else(|| lines.err(n, col, "expected `<index>: <module file>`"))?;
        let i: i64 = i
            .trim()
            .parse()
            .map_err(|_| lines.err(n, col, format!("`{}` is not an index", i.trim())))?;
        let p = p.trim();
        if p.is_empty() {
            return Err(lines.err(n, l.len(), "missing module file"));
        }
        if out.iter().any(|(j, _)| *j == i) {
            return Err(lines.err(n, col, format!("index {i} given twice")));
        }
        out.push((i, base.join(p)));
    }
    Ok(out)
}
