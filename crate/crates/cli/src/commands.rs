use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use koszul_core::ainfty::{classify_orbits, slot_label, AInfError, BigradedHomology, DEFAULT_BUDGET};
use koszul_core::exactlin::{format_elem, Field, FieldSpec, PrimeField, Rationals};
use koszul_core::grmod::{adjusted_assoc_graded, assoc_graded, is_isomorphic, GradedModule};
use koszul_core::kdual::{
    check_homology_formulas, classify_over, expanded_homology, hat_e_over, koszul_dual_complex_over, Bounds,
    HomologyReport, KDualError,
};
use koszul_core::quiver::{QuadraticAlgebra, Quiver};
use koszul_core::resolve::{minimal_resolution, ResolveError, Verdict, DEFAULT_DMAX, DEFAULT_JMAX};

use crate::format::{
    parse_algebra, parse_field_spec, parse_homology_spec, parse_module, write_algebra, write_module, AlgebraFile,
    AlgebraPair, BuildError, Over, ParseError,
};

#[derive(Parser, Debug)]
#[command(
    name = "koszul",
    version,
    about = "Quadratic duals, Koszul duality complexes and A-infinity module classification"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Resolution steps checked by verdicts.
    #[arg(long, global = true, default_value_t = DEFAULT_JMAX)]
    pub jmax: usize,
    /// Internal degree bound for expansions and resolutions.
    #[arg(long, global = true, default_value_t = DEFAULT_DMAX, allow_negative_numbers = true)]
    pub dmax: i64,
    /// Override the algebra file's field: `Q` or a prime.
    #[arg(long, global = true, value_parser = field_arg)]
    pub field: Option<FieldSpec>,
    /// Highest arity of higher products (default: covers the internal-degree span).
    #[arg(long, global = true)]
    pub nmax: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Pretty)]
    pub format: OutputFormat,
}

fn field_arg(s: &str) -> Result<FieldSpec, String> {
    parse_field_spec(s).ok_or_else(|| format!("`{s}` is not Q or a prime"))
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the quadratic dual algebra.
    Dual { algebra: PathBuf },
    /// Classify a module as koszul, weakly-koszul, quasi-koszul or none.
    Classify { algebra: PathBuf, module: PathBuf },
    /// Minimal graded resolution and Betti table.
    Resolve { algebra: PathBuf, module: PathBuf },
    /// The complex GD(M), its homology and the homology formulas.
    Kdual { algebra: PathBuf, module: PathBuf },
    /// Associated graded modules.
    Grmod {
        #[arg(value_enum)]
        kind: GrKind,
        algebra: PathBuf,
        module: PathBuf,
    },
    /// Orbits of A-infinity module structures on a bigraded homology.
    Ainfty { algebra: PathBuf, homology: PathBuf },
    /// Parse and validate an algebra and any number of modules.
    Check { algebra: PathBuf, modules: Vec<PathBuf> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GrKind {
    /// Radical filtration.
    Gr,
    /// Generation-degree filtration.
    Adjgr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Pretty,
    Records,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Build(#[from] BuildError),
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Bound(String),
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse(_) | CliError::Build(_) | CliError::Invalid(_) => 1,
            CliError::Bound(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

impl From<KDualError> for CliError {
    fn from(e: KDualError) -> Self {
        let advice = match &e {
            KDualError::WindowTooSmall(d) => {
                format!("{e}; extend the module window through degree {d} or lower --dmax")
            }
            _ => e.to_string(),
        };
        CliError::Bound(advice)
    }
}

impl From<ResolveError> for CliError {
    fn from(e: ResolveError) -> Self {
        CliError::Bound(e.to_string())
    }
}

impl From<AInfError> for CliError {
    fn from(e: AInfError) -> Self {
        match e {
            AInfError::SearchSpaceTooLarge { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

/// A report in both renderings.
#[derive(Clone, Debug, Default)]
pub struct Output {
    pub pretty: String,
    /// Groups of `key=value` pairs; the first pair names the group.
    pub records: Vec<Vec<(String, String)>>,
    pub code: i32,
}

impl Output {
    fn group(&mut self, kind: &str) -> &mut Vec<(String, String)> {
        self.records.push(vec![("record".into(), kind.into())]);
        self.records.last_mut().expect("just pushed")
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Pretty => self.pretty.clone(),
            OutputFormat::Records => {
                let groups: Vec<String> = self
                    .records
                    .iter()
                    .map(|g| g.iter().map(|(k, v)| format!("{k}={v}\n")).collect())
                    .collect();
                groups.join("\n")
            }
        }
    }
}

fn kv(g: &mut Vec<(String, String)>, k: &str, v: impl ToString) {
    g.push((k.to_string(), v.to_string()));
}

/// Runs one invocation; returns the exit code, stdout and stderr.
pub fn run<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                (0, text, String::new())
            } else {
                (1, String::new(), text)
            };
        }
    };
    match execute(&cli) {
        Ok(out) => (out.code, out.render(cli.format), String::new()),
        Err(e) => (e.exit_code(), String::new(), format!("error: {e}\n")),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn load_algebra_file(path: &Path) -> Result<AlgebraFile, CliError> {
    Ok(parse_algebra(&path.display().to_string(), &read(path)?)?)
}

macro_rules! with_field {
    ($spec:expr, $f:ident => $body:expr) => {
        match $spec {
            FieldSpec::Rationals => {
                let $f = Rationals;
                $body
            }
            FieldSpec::PrimeField(p) => {
                let $f = PrimeField::new(p).map_err(|e| CliError::Invalid(e.to_string()))?;
                $body
            }
        }
    };
}

pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    let algebra_path = match &cli.command {
        Command::Dual { algebra }
        | Command::Classify { algebra, .. }
        | Command::Resolve { algebra, .. }
        | Command::Kdual { algebra, .. }
        | Command::Grmod { algebra, .. }
        | Command::Ainfty { algebra, .. }
        | Command::Check { algebra, .. } => algebra,
    };
    let file = load_algebra_file(algebra_path)?;
    let spec = cli.field.unwrap_or(file.field);
    with_field!(spec, f => {
        let a = file.build(&algebra_path.display().to_string(), f)?;
        dispatch(cli, AlgebraPair::new(a))
    })
}

fn dispatch<F: Field>(cli: &Cli, pair: AlgebraPair<F>) -> Result<Output, CliError> {
    let bounds = Bounds {
        j_max: cli.jmax,
        d_max: cli.dmax,
    };
    let windowed = |path: &Path| -> Result<(GradedModule<F>, Over), CliError> {
        let (m, over) = load_module(path, &pair)?;
        let (_, hi) = m.window();
        if m.truncated_above() && bounds.d_max > hi {
            return Err(CliError::Bound(format!(
                "{}: module is known only through degree {hi} but --dmax is {}; extend the window through degree {} or pass --dmax {hi}",
                path.display(),
                bounds.d_max,
                bounds.d_max
            )));
        }
        Ok((m, over))
    };
    match &cli.command {
        Command::Dual { .. } => Ok(cmd_dual(&pair.dual)),
        Command::Classify { module, .. } => {
            let (m, over) = windowed(module)?;
            cmd_classify(dual_of(&pair, over), &m, bounds)
        }
        Command::Resolve { module, .. } => cmd_resolve(&windowed(module)?.0, bounds),
        Command::Kdual { module, .. } => {
            let (m, over) = windowed(module)?;
            cmd_kdual(dual_of(&pair, over), &m, bounds)
        }
        Command::Grmod { kind, module, .. } => {
            let (m, over) = load_module(module, &pair)?;
            Ok(cmd_grmod(*kind, &m, over))
        }
        Command::Ainfty { homology, .. } => cmd_ainfty(&pair, homology, cli.nmax),
        Command::Check { modules, .. } => cmd_check(&pair, modules),
    }
}

/// The quadratic dual of the algebra a module lives over.
fn dual_of<F: Field>(pair: &AlgebraPair<F>, over: Over) -> &Arc<QuadraticAlgebra<F>> {
    match over {
        Over::Algebra => &pair.dual,
        Over::Dual => &pair.algebra,
    }
}

fn parse_module_file<F: Field>(path: &Path, pair: &AlgebraPair<F>) -> Result<(GradedModule<F>, Over), CliError> {
    let m = parse_module(&path.display().to_string(), &read(path)?, pair)?;
    let over = if Arc::ptr_eq(m.algebra(), &pair.dual) {
        Over::Dual
    } else {
        Over::Algebra
    };
    Ok((m, over))
}

/// Parses and validates; violations are errors.
fn load_module<F: Field>(path: &Path, pair: &AlgebraPair<F>) -> Result<(GradedModule<F>, Over), CliError> {
    let (m, over) = parse_module_file(path, pair)?;
    let v = m.validate();
    if !v.is_empty() {
        let lines: Vec<String> = v.iter().map(|x| format!("  {x}")).collect();
        return Err(CliError::Invalid(format!(
            "{}: not a module:\n{}",
            path.display(),
            lines.join("\n")
        )));
    }
    Ok((m, over))
}

fn cmd_dual<F: Field>(dual: &QuadraticAlgebra<F>) -> Output {
    let mut out = Output {
        pretty: write_algebra(dual),
        ..Output::default()
    };
    let q = dual.quiver();
    let g = out.group("algebra");
    kv(g, "field", dual.field().spec());
    kv(g, "vertices", q.vertices().join(" "));
    for ar in q.arrows() {
        kv(
            g,
            "arrow",
            format!("{}:{}->{}", ar.name, q.vertex_name(ar.source), q.vertex_name(ar.target)),
        );
    }
    let rels = dual.relation_terms();
    kv(g, "relation_count", rels.len());
    for r in &rels {
        kv(g, "relation", dual.format_relation(r));
    }
    out
}

fn verdict_text(v: &Verdict, q: &Quiver) -> String {
    match v {
        Verdict::YesUpTo { j_max, d_max } => format!("yes (steps <= {j_max}, degrees <= {d_max})"),
        Verdict::No { j, l, vertex } => format!(
            "no (Betti entry at step {j}, degree {l}, vertex {})",
            q.vertex_name(*vertex)
        ),
    }
}

fn verdict_record(v: &Verdict, q: &Quiver) -> String {
    match v {
        Verdict::YesUpTo { j_max, d_max } => format!("yes:{j_max}:{d_max}"),
        Verdict::No { j, l, vertex } => format!("no:{j}:{l}:{}", q.vertex_name(*vertex)),
    }
}

fn degree_set(ds: &[i64]) -> String {
    let parts: Vec<String> = ds.iter().map(i64::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

/// `S_v<d>` or `P_v<d>` when the module is one of those, else its dimensions.
pub fn describe<F: Field>(m: &GradedModule<F>) -> String {
    let q = m.algebra().quiver();
    let shift = |d: i64| if d == 0 { String::new() } else { format!("<{d}>") };
    let dv = m.dimension_vector();
    if dv.is_empty() {
        return "0".into();
    }
    if m.total_dim() == 1 {
        let (&(d, v), _) = dv.iter().next().expect("nonempty");
        return format!("S_{}{}", q.vertex_name(v), shift(d));
    }
    let tops = m.top_degrees();
    if let [(&(g, v), &1)] = tops.iter().collect::<Vec<_>>()[..] {
        let (_, hi) = m.window();
        if let Ok(p) = GradedModule::projective(Arc::clone(m.algebra()), v, g, hi) {
            let r = is_isomorphic(m, &p);
            if r.isomorphic {
                let cut = if m.truncated_above() { " (truncated)" } else { "" };
                return format!("P_{}{}{cut}", q.vertex_name(v), shift(g));
            }
        }
    }
    m.dims_string()
}

fn homology_lines<F: Field>(out: &mut String, h: &HomologyReport<F>) {
    let nonzero: Vec<_> = h.nonzero().collect();
    let _ = writeln!(
        out,
        "homology of GD(M), exact for internal degrees [{}, {}]:",
        h.lo, h.valid_top
    );
    if nonzero.is_empty() {
        out.push_str("  (all zero)\n");
    }
    let width = nonzero.iter().map(|e| format!("H^{}", e.i).len()).max().unwrap_or(0);
    for e in nonzero {
        let q = e.module.algebra().quiver();
        let _ = write!(
            out,
            "  {:<width$}  {}  generated in {}",
            format!("H^{}", e.i),
            describe(&e.module),
            degree_set(&e.generation_degrees)
        );
        if let Some(v) = &e.linear {
            let _ = write!(out, ", linear resolution: {}", verdict_text(v, q));
        }
        out.push('\n');
    }
}

fn homology_records<F: Field>(out: &mut Output, h: &HomologyReport<F>) {
    for e in h.nonzero() {
        let q = e.module.algebra().quiver().clone();
        let g = out.group("homology");
        kv(g, "index", e.i);
        kv(g, "dims", e.module.dims_string());
        kv(g, "module", describe(&e.module));
        kv(g, "generation_degrees", degree_set(&e.generation_degrees));
        if let Some(v) = &e.linear {
            kv(g, "linear", verdict_record(v, &q));
        }
    }
}

fn cmd_classify<F: Field>(
    gamma: &Arc<QuadraticAlgebra<F>>,
    m: &GradedModule<F>,
    bounds: Bounds,
) -> Result<Output, CliError> {
    let r = classify_over(m, Arc::clone(gamma), bounds)?;
    let q = m.algebra().quiver();
    let mut out = Output::default();
    let p = &mut out.pretty;
    let _ = writeln!(p, "verdict: {}", r.class);
    let _ = writeln!(p, "M generated in degrees {}", degree_set(&r.generation_degrees));
    homology_lines(p, &r.homology);
    if !r.homology.euler_ok {
        p.push_str("warning: Euler characteristic check failed\n");
    }
    let _ = writeln!(p, "gr route: gr(M) Koszul: {}", verdict_text(&r.gr_route, q));
    let _ = writeln!(p, "routes agree: {}", if r.routes_agree { "yes" } else { "no" });
    let _ = writeln!(p, "bounds: steps <= {}, degrees <= {}", bounds.j_max, bounds.d_max);
    let g = out.group("classify");
    kv(g, "verdict", r.class);
    kv(g, "generation_degrees", degree_set(&r.generation_degrees));
    kv(g, "gr_route", verdict_record(&r.gr_route, q));
    kv(g, "routes_agree", r.routes_agree);
    kv(g, "euler_ok", r.homology.euler_ok);
    kv(
        g,
        "homology_window",
        format!("{}:{}", r.homology.lo, r.homology.valid_top),
    );
    kv(g, "jmax", bounds.j_max);
    kv(g, "dmax", bounds.d_max);
    homology_records(&mut out, &r.homology);
    Ok(out)
}

fn cmd_resolve<F: Field>(m: &GradedModule<F>, bounds: Bounds) -> Result<Output, CliError> {
    let r = minimal_resolution(m, bounds.j_max, bounds.d_max)?;
    let mut out = Output {
        pretty: r.betti.to_string(),
        ..Output::default()
    };
    let g = out.group("resolution");
    kv(g, "jmax", r.betti.j_max);
    kv(g, "valid_top", r.betti.valid_top);
    kv(g, "minimal", r.steps.iter().all(|s| s.minimal));
    for (&(j, l, v), &n) in &r.betti.entries {
        if n == 0 {
            continue;
        }
        let g = out.group("betti");
        kv(g, "step", j);
        kv(g, "degree", l);
        kv(g, "vertex", &r.betti.vertex_names[v]);
        kv(g, "multiplicity", n);
    }
    Ok(out)
}

fn expansion_top<F: Field>(m: &GradedModule<F>, d_max: i64) -> i64 {
    let (lo, hi) = m.window();
    let top = if m.truncated_above() { d_max.min(hi) } else { d_max };
    top.max(lo)
}

fn cmd_kdual<F: Field>(
    gamma: &Arc<QuadraticAlgebra<F>>,
    m: &GradedModule<F>,
    bounds: Bounds,
) -> Result<Output, CliError> {
    let c = koszul_dual_complex_over(m, Arc::clone(gamma))?;
    let e = c.expand(expansion_top(m, bounds.d_max))?;
    let d2 = e.squares_to_zero();
    let h = expanded_homology(&e);
    let class = classify_over(m, Arc::clone(gamma), bounds)?;
    let formulas = check_homology_formulas(m, bounds)?;
    let he = hat_e_over(m, Arc::clone(gamma), bounds)?;
    let mut out = Output::default();
    let p = &mut out.pretty;
    p.push_str("GD(M):\n");
    let _ = write!(p, "{c}");
    let _ = writeln!(p, "d^2 = 0: {}", if d2 { "yes" } else { "no" });
    homology_lines(p, &h);
    let _ = writeln!(
        p,
        "Euler characteristic: {}",
        if h.euler_ok { "ok" } else { "mismatch" }
    );
    let _ = writeln!(p, "verdict: {}", class.class);
    if formulas.hypothesis {
        p.push_str("homology formulas:\n");
        for f in &formulas.checks {
            let mark = if f.holds { "holds" } else { "FAILS" };
            let sampled = if f.exact { "" } else { " (sampled)" };
            let _ = writeln!(p, "  {mark}{sampled}: {}", f.description);
        }
    } else {
        p.push_str("homology formulas: not applicable (M is not weakly Koszul)\n");
    }
    let _ = writeln!(
        p,
        "hat E(M): {}, exact through degree {}",
        he.module.dims_string(),
        he.valid_top
    );
    // summands H^i<i> other than the Koszul one, described through H^i
    let others: Vec<(i64, Vec<i64>)> = h
        .nonzero()
        .filter(|e| he.koszul_summand.is_none() || e.i != 0)
        .map(|e| (e.i, e.generation_degrees.clone()))
        .collect();
    let _ = writeln!(
        p,
        "  koszul summand: {}",
        he.koszul_summand.as_ref().map_or("none".into(), describe)
    );
    for (i, gens) in &others {
        let _ = writeln!(
            p,
            "  summand H^{i}<{i}>, H^{i} generated in degrees {}",
            degree_set(gens)
        );
    }
    let g = out.group("kdual");
    kv(g, "i_min", c.i_min);
    kv(g, "i_max", c.i_max);
    kv(g, "d_squared_zero", d2);
    kv(g, "euler_ok", h.euler_ok);
    kv(g, "homology_window", format!("{}:{}", h.lo, h.valid_top));
    kv(g, "verdict", class.class);
    for i in c.i_min..=c.i_max {
        let q = gamma.quiver();
        let terms: Vec<String> = (0..q.vertex_count())
            .filter(|&v| c.multiplicity(i, v) > 0)
            .map(|v| format!("{}^{}", q.vertex_name(v), c.multiplicity(i, v)))
            .collect();
        if !terms.is_empty() {
            let g = out.group("term");
            kv(g, "index", i);
            kv(g, "summands", terms.join(" "));
        }
    }
    homology_records(&mut out, &h);
    for f in &formulas.checks {
        let g = out.group("formula");
        kv(g, "description", &f.description);
        kv(g, "holds", f.holds);
        kv(g, "exact", f.exact);
    }
    let g = out.group("hat_e");
    kv(g, "dims", he.module.dims_string());
    kv(g, "valid_top", he.valid_top);
    kv(
        g,
        "koszul_summand",
        he.koszul_summand.as_ref().map_or("none".into(), describe),
    );
    for (i, gens) in &others {
        kv(g, "summand", format!("{i}:{}", degree_set(gens)));
    }
    Ok(out)
}

fn cmd_grmod<F: Field>(kind: GrKind, m: &GradedModule<F>, over: Over) -> Output {
    let (gr, note) = match kind {
        GrKind::Gr => (assoc_graded(m), "# radical filtration\n".to_string()),
        GrKind::Adjgr => {
            let (gr, f) = adjusted_assoc_graded(m);
            let ds: Vec<String> = f.generation_degrees.iter().map(i64::to_string).collect();
            (
                gr,
                format!("# generation-degree filtration, steps in degrees {}\n", ds.join(" ")),
            )
        }
    };
    let text = write_module(&gr, over);
    let mut out = Output {
        pretty: format!("{note}{text}"),
        ..Output::default()
    };
    let g = out.group("grmod");
    kv(g, "kind", if kind == GrKind::Gr { "gr" } else { "adjgr" });
    kv(g, "dims", gr.dims_string());
    kv(g, "generation_degrees", degree_set(&gr.generation_degrees()));
    out
}

fn plural(n: impl Into<u64>, word: &str) -> String {
    let n = n.into();
    match (n, word) {
        (1, _) => format!("1 {word}"),
        (_, "vertex") => format!("{n} vertices"),
        _ => format!("{n} {word}s"),
    }
}

fn cmd_ainfty<F: Field>(pair: &AlgebraPair<F>, spec: &Path, n_max: Option<usize>) -> Result<Output, CliError> {
    let entries = parse_homology_spec(&spec.display().to_string(), &read(spec)?)?;
    let mut parts = Vec::new();
    for (i, path) in entries {
        parts.push((i, load_module(&path, pair)?.0));
    }
    let Some(algebra) = parts.first().map(|(_, m)| Arc::clone(m.algebra())) else {
        return Err(CliError::Invalid(format!("{}: empty homology spec", spec.display())));
    };
    let field = algebra.field().clone();
    if field.order().is_none() {
        return Err(CliError::Invalid(
            "orbit search needs a finite field; pass --field <prime>".into(),
        ));
    }
    let h = BigradedHomology::new(Arc::clone(&algebra), parts)?;
    let n_max = n_max.unwrap_or_else(|| (h.span() as usize + 1).max(3));
    let basis: Vec<String> = h
        .basis()
        .iter()
        .enumerate()
        .map(|(k, b)| {
            format!(
                "  {}  H^{}  degree {}  at {}",
                h.name(k),
                b.coh,
                b.degree,
                algebra.quiver().vertex_name(b.vertex)
            )
        })
        .collect();
    let hh = h.clone();
    let r = classify_orbits(h, n_max, DEFAULT_BUDGET)?;
    let mut out = Output::default();
    let p = &mut out.pretty;
    let _ = writeln!(p, "field: {}", field.spec());
    let _ = writeln!(
        p,
        "{}, {}, {}",
        plural(r.slots.len() as u64, "slot"),
        plural(r.structures, "structure"),
        plural(r.orbits.len() as u64, "orbit")
    );
    p.push_str("basis:\n");
    for l in &basis {
        p.push_str(l);
        p.push('\n');
    }
    let _ = writeln!(p, "higher products (arity <= {n_max}):");
    if r.slots.is_empty() {
        p.push_str("  (none)\n");
    }
    for s in &r.slots {
        let _ = writeln!(p, "  {}", slot_label(&hh, s, 'm'));
    }
    p.push_str("higher morphism components:\n");
    if r.morphism_slots.is_empty() {
        p.push_str("  (none)\n");
    }
    for s in &r.morphism_slots {
        let _ = writeln!(p, "  {}", slot_label(&hh, s, 'f'));
    }
    let _ = writeln!(p, "valid structures: {} of {}", r.valid, r.structures);
    let _ = writeln!(
        p,
        "morphisms searched: {} ({} invertible f1)",
        r.morphisms, r.f1_choices
    );
    let _ = writeln!(p, "identities checked through arity {}", r.n_verify);
    p.push_str("orbits:\n");
    let rows: Vec<(String, String, String)> = r
        .orbits
        .iter()
        .enumerate()
        .map(|(k, o)| {
            let rep: Vec<String> = o.representative.iter().map(|c| format_elem(&field, c)).collect();
            ((k + 1).to_string(), o.size.to_string(), format!("({})", rep.join(", ")))
        })
        .collect();
    let w1 = rows.iter().map(|r| r.0.len()).max().unwrap_or(0).max(5);
    let w2 = rows.iter().map(|r| r.1.len()).max().unwrap_or(0).max(4);
    let _ = writeln!(p, "  {:>w1$}  {:>w2$}  representative", "orbit", "size");
    for (a, b, c) in &rows {
        let _ = writeln!(p, "  {a:>w1$}  {b:>w2$}  {c}");
    }
    let g = out.group("ainfty");
    kv(g, "field", field.spec());
    kv(g, "nmax", n_max);
    kv(g, "slots", r.slots.len());
    kv(g, "morphism_slots", r.morphism_slots.len());
    kv(g, "structures", r.structures);
    kv(g, "valid", r.valid);
    kv(g, "morphisms", r.morphisms);
    kv(g, "n_verify", r.n_verify);
    kv(g, "orbits", r.orbits.len());
    for s in &r.slots {
        let g = out.group("slot");
        kv(g, "label", slot_label(&hh, s, 'm'));
    }
    for (a, b, c) in rows {
        let g = out.group("orbit");
        kv(g, "id", a);
        kv(g, "size", b);
        kv(g, "representative", c);
    }
    Ok(out)
}

fn cmd_check<F: Field>(pair: &AlgebraPair<F>, modules: &[PathBuf]) -> Result<Output, CliError> {
    let a = &pair.algebra;
    let q = a.quiver();
    let mut out = Output::default();
    let _ = writeln!(
        out.pretty,
        "algebra: {}, {}, {} over {}",
        plural(q.vertex_count() as u64, "vertex"),
        plural(q.arrow_count() as u64, "arrow"),
        plural(a.relations().cols() as u64, "relation"),
        a.field().spec()
    );
    let g = out.group("algebra");
    kv(g, "vertices", q.vertex_count());
    kv(g, "arrows", q.arrow_count());
    kv(g, "relations", a.relations().cols());
    for path in modules {
        let (m, over) = parse_module_file(path, pair)?;
        let v = m.validate();
        let (lo, hi) = m.window();
        let _ = writeln!(
            out.pretty,
            "{}: over {}, window [{lo}, {hi}]{}, dims {}",
            path.display(),
            if over == Over::Dual { "dual" } else { "algebra" },
            if m.truncated_above() { " truncated" } else { "" },
            m.dims_string()
        );
        for x in &v {
            let _ = writeln!(out.pretty, "  violation: {x}");
        }
        let _ = writeln!(out.pretty, "  {}", if v.is_empty() { "ok" } else { "invalid" });
        let g = out.group("module");
        kv(g, "path", path.display());
        kv(g, "dims", m.dims_string());
        kv(g, "valid", v.is_empty());
        for x in &v {
            kv(g, "violation", x);
        }
        if !v.is_empty() {
            out.code = 1;
        }
    }
    Ok(out)
}
