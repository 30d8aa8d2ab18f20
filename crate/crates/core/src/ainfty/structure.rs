use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::exactlin::{Field, Matrix};
use crate::quiver::AlgebraElement;

use super::homology::BigradedHomology;

/// A `Γ` basis path of positive length: `(length, index in Γ_length)`.
pub type Arg = (usize, usize);

/// One coordinate of a higher map: the coefficient of basis vector
/// `target` in `m_n(args, source)` (or `f_n(args, source)`).
///
/// `args` is in written order `γ_{n-1}, ..., γ_1`: `γ_1` acts first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductSlot {
    pub arity: usize,
    pub source: usize,
    pub args: Vec<Arg>,
    pub target: usize,
}

/// Composable chains of `count` basis paths starting at `vertex` whose
/// total length is at most `budget`, in written order.
pub(crate) fn chains<F: Field>(
    h: &BigradedHomology<F>,
    vertex: usize,
    count: usize,
    budget: i64,
) -> Vec<(Vec<Arg>, usize, usize)> {
    // (written-order args, end vertex, total length)
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<Arg>, usize, usize)> = vec![(Vec::new(), vertex, 0)];
    while let Some((rev, end, total)) = stack.pop() {
        if rev.len() == count {
            let mut args = rev;
            args.reverse();
            out.push((args, end, total));
            continue;
        }
        let remaining = count - rev.len() - 1;
        for len in 1..=(budget - total as i64 - remaining as i64).max(0) as usize {
            let comp = h.algebra().component(len);
            for idx in comp.basis_from(end) {
                let mut next = rev.clone();
                next.push((len, idx));
                stack.push((next, comp.basis_path(idx).target, total + len));
            }
        }
    }
    out.sort();
    out
}

/// Coordinates admissible for `m_n` (`shift = n - 2`) or `f_n`
/// (`shift = n - 1`): the target lies at cohomological index
/// `source - shift`, internal degree `source + Σ lengths`, at the vertex
/// where the chain ends.
fn slots_with_shift<F: Field>(
    h: &BigradedHomology<F>,
    arities: std::ops::RangeInclusive<usize>,
    shift: impl Fn(usize) -> i64,
) -> Vec<ProductSlot> {
    let mut out = Vec::new();
    for n in arities {
        for (k, b) in h.basis().iter().enumerate() {
            let budget = h.max_degree() - b.degree;
            for (args, end, total) in chains(h, b.vertex, n - 1, budget) {
                for target in h.block(b.coh - shift(n), b.degree + total as i64, end) {
                    out.push(ProductSlot {
                        arity: n,
                        source: k,
                        args: args.clone(),
                        target,
                    });
                }
            }
        }
    }
    out.sort();
    out
}

/// Slots of the higher products `m_n`, `3 <= n <= n_max`.
pub fn derive_slots<F: Field>(h: &BigradedHomology<F>, n_max: usize) -> Vec<ProductSlot> {
    if n_max < 3 {
        return Vec::new();
    }
    slots_with_shift(h, 3..=n_max, |n| n as i64 - 2)
}

/// Slots of the higher morphism components `f_n`, `2 <= n <= n_max`.
pub fn derive_morphism_slots<F: Field>(h: &BigradedHomology<F>, n_max: usize) -> Vec<ProductSlot> {
    if n_max < 2 {
        return Vec::new();
    }
    slots_with_shift(h, 2..=n_max, |n| n as i64 - 1)
}

/// Arity beyond which no identity can be violated: identities of arity `n`
/// need `n - 1` arguments of positive length inside the degree span.
pub fn default_verify_arity<F: Field>(h: &BigradedHomology<F>) -> usize {
    (h.span() as usize + 1).max(3)
}

/// Sparse table of slot coefficients keyed by `(args, source)`.
#[derive(Clone, Debug)]
struct SlotTable<F: Field> {
    by_key: HashMap<(Vec<Arg>, usize), Vec<(usize, F::Elem)>>,
}

impl<F: Field> SlotTable<F> {
    fn new(f: &F, slots: &[ProductSlot], coeffs: &[F::Elem]) -> Self {
        let mut by_key: HashMap<(Vec<Arg>, usize), Vec<(usize, F::Elem)>> = HashMap::new();
        for (s, c) in slots.iter().zip(coeffs) {
            if f.is_zero(c) {
                continue;
            }
            by_key
                .entry((s.args.clone(), s.source))
                .or_default()
                .push((s.target, c.clone()));
        }
        SlotTable { by_key }
    }

    /// Multilinear evaluation on homogeneous arguments and a vector.
    fn eval(&self, h: &BigradedHomology<F>, args: &[AlgebraElement<F>], x: &[F::Elem]) -> Vec<F::Elem> {
        let f = h.field();
        let mut out = h.zero_vector();
        if self.by_key.is_empty() {
            return out;
        }
        let expansions: Vec<Vec<(Arg, F::Elem)>> = args
            .iter()
            .map(|a| {
                a.coords
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !f.is_zero(c))
                    .map(|(i, c)| ((a.degree, i), c.clone()))
                    .collect()
            })
            .collect();
        let mut combos: Vec<(Vec<Arg>, F::Elem)> = vec![(Vec::new(), f.one())];
        for options in &expansions {
            let mut next = Vec::with_capacity(combos.len() * options.len());
            for (prefix, c) in &combos {
                for (arg, a) in options {
                    let mut p = prefix.clone();
                    p.push(*arg);
                    next.push((p, f.mul(c, a)));
                }
            }
            combos = next;
        }
        for (key_args, c) in combos {
            for (k, xk) in x.iter().enumerate() {
                if f.is_zero(xk) {
                    continue;
                }
                if let Some(entries) = self.by_key.get(&(key_args.clone(), k)) {
                    let cx = f.mul(&c, xk);
                    for (t, v) in entries {
                        out[*t] = f.add(&out[*t], &f.mul(&cx, v));
                    }
                }
            }
        }
        out
    }
}

/// A strictly unital A∞-module structure with `m_1 = 0` on `h`: `m_2` is
/// the module action and `m_n` for `n >= 3` is given by slot coefficients.
#[derive(Clone, Debug)]
pub struct AInfStructure<F: Field> {
    pub homology: Arc<BigradedHomology<F>>,
    pub slots: Arc<Vec<ProductSlot>>,
    pub coeffs: Vec<F::Elem>,
    table: SlotTable<F>,
}

impl<F: Field> AInfStructure<F> {
    pub fn new(homology: Arc<BigradedHomology<F>>, slots: Arc<Vec<ProductSlot>>, coeffs: Vec<F::Elem>) -> Self {
        assert_eq!(slots.len(), coeffs.len(), "one coefficient per slot");
        let table = SlotTable::new(homology.field(), &slots, &coeffs);
        AInfStructure {
            homology,
            slots,
            coeffs,
            table,
        }
    }

    /// Only the module action.
    pub fn formal(homology: Arc<BigradedHomology<F>>, slots: Arc<Vec<ProductSlot>>) -> Self {
        let zeros = vec![homology.field().zero(); slots.len()];
        Self::new(homology, slots, zeros)
    }

    /// `m_n(args, x)` with `n = args.len() + 1 >= 2`.
    pub fn m(&self, args: &[AlgebraElement<F>], x: &[F::Elem]) -> Vec<F::Elem> {
        match args.len() {
            0 => panic!("m_1 vanishes and is never evaluated"),
            1 => self.homology.act(&args[0], x),
            _ => self.table.eval(&self.homology, args, x),
        }
    }

    fn slot_label(&self, s: &ProductSlot, letter: char) -> String {
        slot_label(&self.homology, s, letter)
    }
}

pub fn slot_label<F: Field>(h: &BigradedHomology<F>, s: &ProductSlot, letter: char) -> String {
    let g = h.algebra();
    let q = g.quiver();
    let mut parts: Vec<String> = s
        .args
        .iter()
        .map(|&(len, idx)| q.format_path(g.component(len).basis_path(idx)))
        .collect();
    parts.push(h.name(s.source));
    format!("{letter}{}({}) -> {}", s.arity, parts.join(", "), h.name(s.target))
}

impl<F: Field> fmt::Display for AInfStructure<F> {
    /// Nonzero higher products, one per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = self.homology.field();
        let mut any = false;
        for (s, c) in self.slots.iter().zip(&self.coeffs) {
            if field.is_zero(c) {
                continue;
            }
            any = true;
            writeln!(
                f,
                "{}: {}",
                self.slot_label(s, 'm'),
                crate::exactlin::format_elem(field, c)
            )?;
        }
        if !any {
            writeln!(f, "(no higher products)")?;
        }
        Ok(())
    }
}

/// `f_1` on the global basis and coefficients of `f_n`, `n >= 2`.
#[derive(Clone, Debug)]
pub struct AInfMorphismParams<F: Field> {
    pub f1: Matrix<F>,
    pub slots: Arc<Vec<ProductSlot>>,
    pub coeffs: Vec<F::Elem>,
    table: SlotTable<F>,
}

impl<F: Field> AInfMorphismParams<F> {
    pub fn new(f1: Matrix<F>, slots: Arc<Vec<ProductSlot>>, coeffs: Vec<F::Elem>) -> Self {
        assert_eq!(slots.len(), coeffs.len(), "one coefficient per slot");
        let table = SlotTable::new(f1.field(), &slots, &coeffs);
        AInfMorphismParams {
            f1,
            slots,
            coeffs,
            table,
        }
    }

    pub fn identity(h: &BigradedHomology<F>, slots: Arc<Vec<ProductSlot>>) -> Self {
        let zeros = vec![h.field().zero(); slots.len()];
        Self::new(Matrix::identity(h.field(), h.dim()), slots, zeros)
    }

    /// `f_n(args, x)` with `n = args.len() + 1`.
    pub fn f(&self, h: &BigradedHomology<F>, args: &[AlgebraElement<F>], x: &[F::Elem]) -> Vec<F::Elem> {
        if args.is_empty() {
            self.f1.mul_vec(x)
        } else {
            self.table.eval(h, args, x)
        }
    }

    pub fn is_quasi_isomorphism(&self) -> bool {
        self.f1.is_invertible()
    }
}

/// `(fg)_n = Σ_i f_{n-i+1}(1^{⊗ n-i} ⊗ g_i)`, written on `f`'s slots.
pub fn compose<F: Field>(
    h: &BigradedHomology<F>,
    f: &AInfMorphismParams<F>,
    g: &AInfMorphismParams<F>,
) -> AInfMorphismParams<F> {
    let field = h.field();
    let gamma = h.algebra();
    let f1 = f.f1.mul(&g.f1);
    let coeffs = f
        .slots
        .iter()
        .map(|s| {
            let args = elements(gamma, &s.args);
            let n = s.arity;
            let x = h.unit_vector(s.source);
            let mut total = h.zero_vector();
            for i in 1..=n {
                let inner = g.f(h, &args[n - i..], &x);
                let outer = f.f(h, &args[..n - i], &inner);
                add_into(field, &mut total, &outer, &field.one());
            }
            total[s.target].clone()
        })
        .collect();
    AInfMorphismParams::new(f1, Arc::clone(&f.slots), coeffs)
}

pub(crate) fn elements<F: Field>(g: &crate::quiver::QuadraticAlgebra<F>, args: &[Arg]) -> Vec<AlgebraElement<F>> {
    args.iter().map(|&(len, idx)| g.basis_element(len, idx)).collect()
}

pub(crate) fn add_into<F: Field>(f: &F, acc: &mut [F::Elem], v: &[F::Elem], c: &F::Elem) {
    for (a, b) in acc.iter_mut().zip(v) {
        if !f.is_zero(b) {
            *a = f.add(a, &f.mul(c, b));
        }
    }
}

fn sign<F: Field>(f: &F, e: usize) -> F::Elem {
    if e % 2 == 0 {
        f.one()
    } else {
        f.neg(&f.one())
    }
}

/// A nonzero residual of one identity on one argument tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residual {
    pub arity: usize,
    /// Written-order arguments followed by the basis vector, rendered.
    pub at: String,
    pub value: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub residuals: Vec<Residual>,
    pub instances: usize,
    pub n_verify: usize,
    /// Arity from which every identity holds for degree reasons.
    pub sufficient_arity: usize,
}

impl CheckReport {
    pub fn valid(&self) -> bool {
        self.residuals.is_empty()
    }

    /// Identities above `n_verify` hold vacuously.
    pub fn complete(&self) -> bool {
        self.n_verify >= self.sufficient_arity
    }
}

/// Every `(arity, args, basis vector)` on which an identity is evaluated.
#[derive(Clone, Debug)]
pub(crate) struct Instance {
    pub arity: usize,
    pub args: Vec<Arg>,
    pub source: usize,
}

pub(crate) fn instances<F: Field>(h: &BigradedHomology<F>, from: usize, n_verify: usize) -> Vec<Instance> {
    let mut out = Vec::new();
    for n in from..=n_verify {
        for (k, b) in h.basis().iter().enumerate() {
            for (args, _, _) in chains(h, b.vertex, n - 1, h.max_degree() - b.degree) {
                out.push(Instance {
                    arity: n,
                    args,
                    source: k,
                });
            }
        }
    }
    out
}

fn merged<F: Field>(
    g: &crate::quiver::QuadraticAlgebra<F>,
    args: &[AlgebraElement<F>],
    j: usize,
) -> Option<Vec<AlgebraElement<F>>> {
    // γ_{j+1} γ_j sits at written positions n-2-j and n-1-j
    let n = args.len() + 1;
    let (hi, lo) = (n - 2 - j, n - 1 - j);
    let prod = g.multiply(&args[hi], &args[lo]);
    if prod.is_zero(g.field()) {
        return None;
    }
    let mut out = args[..hi].to_vec();
    out.push(prod);
    out.extend_from_slice(&args[lo + 1..]);
    Some(out)
}

/// `LHS - RHS` of the arity-`n` Stasheff identity at one instance.
pub(crate) fn stasheff_residual<F: Field>(s: &AInfStructure<F>, inst: &Instance) -> Vec<F::Elem> {
    let h = &s.homology;
    let f = h.field();
    let g = h.algebra();
    let n = inst.arity;
    let args = elements(g, &inst.args);
    let x = h.unit_vector(inst.source);
    let mut r = h.zero_vector();
    for i in 2..n {
        let inner = s.m(&args[n - i..], &x);
        let outer = s.m(&args[..n - i], &inner);
        add_into(f, &mut r, &outer, &sign(f, i * (n - 1)));
    }
    for j in 1..=n - 2 {
        if let Some(m_args) = merged(g, &args, j) {
            let term = s.m(&m_args, &x);
            add_into(f, &mut r, &term, &f.neg(&sign(f, j - 1)));
        }
    }
    r
}

/// `LHS - RHS` of the arity-`n` morphism identity at one instance.
pub(crate) fn morphism_residual<F: Field>(
    src: &AInfStructure<F>,
    dst: &AInfStructure<F>,
    mor: &AInfMorphismParams<F>,
    inst: &Instance,
) -> Vec<F::Elem> {
    let h = &src.homology;
    let f = h.field();
    let g = h.algebra();
    let n = inst.arity;
    let args = elements(g, &inst.args);
    let x = h.unit_vector(inst.source);
    let mut r = h.zero_vector();
    for i in 2..=n {
        let inner = src.m(&args[n - i..], &x);
        let outer = mor.f(h, &args[..n - i], &inner);
        add_into(f, &mut r, &outer, &sign(f, i * (n - 1)));
    }
    for j in 1..=n.saturating_sub(2) {
        if let Some(m_args) = merged(g, &args, j) {
            let term = mor.f(h, &m_args, &x);
            add_into(f, &mut r, &term, &sign(f, j));
        }
    }
    for rr in 1..n {
        let inner = mor.f(h, &args[n - rr..], &x);
        let outer = dst.m(&args[..n - rr], &inner);
        add_into(f, &mut r, &outer, &f.neg(&sign(f, (rr + 1) * n)));
    }
    r
}

fn render<F: Field>(h: &BigradedHomology<F>, inst: &Instance, v: &[F::Elem]) -> Residual {
    let g = h.algebra();
    let q = g.quiver();
    let f = h.field();
    let mut parts: Vec<String> = inst
        .args
        .iter()
        .map(|&(len, idx)| q.format_path(g.component(len).basis_path(idx)))
        .collect();
    parts.push(h.name(inst.source));
    Residual {
        arity: inst.arity,
        at: parts.join(", "),
        value: v
            .iter()
            .enumerate()
            .filter(|(_, c)| !f.is_zero(c))
            .map(|(k, c)| format!("{} {}", crate::exactlin::format_elem(f, c), h.name(k)))
            .collect(),
    }
}

fn highest_nonzero_arity<F: Field>(slots: &[ProductSlot], coeffs: &[F::Elem], f: &F, floor: usize) -> usize {
    slots
        .iter()
        .zip(coeffs)
        .filter(|(_, c)| !f.is_zero(c))
        .map(|(s, _)| s.arity)
        .max()
        .unwrap_or(floor)
        .max(floor)
}

/// Evaluates the Stasheff identities of arities `3..=n_verify` on every
/// composable tuple of basis paths and basis vector.
pub fn stasheff_check<F: Field>(s: &AInfStructure<F>, n_verify: usize) -> CheckReport {
    let h = &s.homology;
    let insts = instances(h, 3, n_verify);
    let residuals = insts
        .iter()
        .filter_map(|inst| {
            let r = stasheff_residual(s, inst);
            r.iter().any(|c| !h.field().is_zero(c)).then(|| render(h, inst, &r))
        })
        .collect();
    let n0 = highest_nonzero_arity(&s.slots, &s.coeffs, h.field(), 2);
    CheckReport {
        residuals,
        instances: insts.len(),
        n_verify,
        sufficient_arity: (2 * n0 - 1).min(h.span() as usize + 1),
    }
}

/// Evaluates the morphism identities of arities `2..=n_verify`.
pub fn morphism_check<F: Field>(
    src: &AInfStructure<F>,
    dst: &AInfStructure<F>,
    mor: &AInfMorphismParams<F>,
    n_verify: usize,
) -> CheckReport {
    let h = &src.homology;
    let insts = instances(h, 2, n_verify);
    let residuals = insts
        .iter()
        .filter_map(|inst| {
            let r = morphism_residual(src, dst, mor, inst);
            r.iter().any(|c| !h.field().is_zero(c)).then(|| render(h, inst, &r))
        })
        .collect();
    let f = h.field();
    let n0 =
        highest_nonzero_arity(&src.slots, &src.coeffs, f, 2).max(highest_nonzero_arity(&dst.slots, &dst.coeffs, f, 2));
    let nf = highest_nonzero_arity(&mor.slots, &mor.coeffs, f, 1);
    CheckReport {
        residuals,
        instances: insts.len(),
        n_verify,
        sufficient_arity: (n0 + nf - 1).max(2).min(h.span() as usize + 1),
    }
}
