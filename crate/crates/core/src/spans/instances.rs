//! Substitution instances of generators at a fixed multidegree.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::ControlFlow;

use super::coords::Coordinates;
use super::space::{Generator, GeneratorKind};
use super::words::{component_words, for_each_cut};
use super::SpanConfig;
use crate::canonical::enumerate;
use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::poly::{Mode, Polynomial};
use crate::word::{MultiDegree, Word};

/// An element of a space together with how it was produced.
#[derive(Debug, Clone)]
pub struct Instance {
    pub label: String,
    pub poly: Polynomial,
}

pub(crate) type Sink<'a> = dyn FnMut(Instance) -> Result<ControlFlow<()>> + 'a;

pub(crate) struct Context<'a> {
    pub field: Field,
    pub mode: Mode,
    pub coords: Coordinates,
    pub cfg: &'a SpanConfig,
    pub used: u64,
}

impl Context<'_> {
    fn charge(&mut self, n: u64) -> Result<()> {
        self.used += n;
        if self.used > self.cfg.max_instances {
            return Err(AlgebraError::BudgetExceeded {
                what: "instances",
                needed: u128::from(self.used),
                limit: u128::from(self.cfg.max_instances),
            });
        }
        Ok(())
    }

    fn unitary(&self) -> bool {
        self.mode == Mode::Unitary
    }

    fn monomial(&self, letters: &[u32]) -> Polynomial {
        let mut p = Polynomial::zero(self.field, self.mode);
        p.add_term(Word::new(letters.to_vec()), 1)
            .expect("empty pieces only in unitary mode");
        p
    }
}

/// `a * f * b` for words `a`, `b`.
fn wrap(a: &[u32], f: &Polynomial, b: &[u32]) -> Polynomial {
    if a.is_empty() && b.is_empty() {
        return f.clone();
    }
    let mut out = Polynomial::zero(f.field(), f.mode());
    for (w, c) in f.terms() {
        let mut letters = Vec::with_capacity(a.len() + w.len() + b.len());
        letters.extend_from_slice(a);
        letters.extend_from_slice(w.letters());
        letters.extend_from_slice(b);
        out.add_term(Word::new(letters), c).expect("nonempty");
    }
    out
}

fn show(letters: &[u32]) -> String {
    Word::new(letters.to_vec()).to_string()
}

/// Feeds every instance of `gen` at multidegree `d` to `sink`, until the sink
/// breaks.
pub(crate) fn generate(
    gen: &Generator,
    d: &MultiDegree,
    ctx: &mut Context,
    sink: &mut Sink,
) -> Result<ControlFlow<()>> {
    if gen.poly.is_zero() {
        return Ok(ControlFlow::Continue(()));
    }
    if gen.kind == GeneratorKind::Space && gen.is_commutator() {
        commutator_instances(d, ctx, sink)
    } else if gen.poly.is_multilinear() {
        multilinear_instances(gen, d, ctx, sink)
    } else {
        let degree = gen.poly.multidegree().ok_or_else(|| {
            AlgebraError::BadSpace(format!("generator `{}` must be multihomogeneous", gen.poly))
        })?;
        match gen.kind {
            GeneratorKind::Space => polarized_instances(gen, &degree, d, ctx, sink),
            GeneratorKind::Ideal => ideal_of_polarized(gen, &degree, d, ctx, sink),
        }
    }
}

/// `[m, x_l]` over words `m`; these span the commutator T-space because
/// `[m, u x] = [m u, x] + [x m, u]`. In normal-form coordinates `m` runs over
/// the basis of its component instead, which spans the same space modulo the
/// (two-sided) ideal the coordinates quotient by.
fn commutator_instances(
    d: &MultiDegree,
    ctx: &mut Context,
    sink: &mut Sink,
) -> Result<ControlFlow<()>> {
    let vars: Vec<u32> = d.support().collect();
    for l in vars {
        let mut rest = d.clone();
        rest = rest
            .checked_sub(&MultiDegree::from_pairs([(l, 1)]))
            .expect("l in support");
        if rest.is_zero() {
            continue;
        }
        let x = Polynomial::var(ctx.field, ctx.mode, l);
        let modulus = ctx
            .coords
            .modulus()
            .filter(|_| !ctx.cfg.commutators_over_words);
        let ms: Vec<Polynomial> = match modulus {
            Some(m) => enumerate(&rest, ctx.field, m)
                .iter()
                .map(|t| t.embed(ctx.field, ctx.mode))
                .collect(),
            None => component_words(&rest, ctx.cfg.max_words)?
                .iter()
                .map(|w| ctx.monomial(w.letters()))
                .collect(),
        };
        for m in ms {
            ctx.charge(1)?;
            let poly = m.commutator(&x)?;
            let label = format!("[{m}, x{l}]");
            if sink(Instance { label, poly })?.is_break() {
                return Ok(ControlFlow::Break(()));
            }
        }
    }
    Ok(ControlFlow::Continue(()))
}

/// Monomial substitutions of a multilinear generator, read off as cuts of
/// every word of the target multidegree.
fn multilinear_instances(
    gen: &Generator,
    d: &MultiDegree,
    ctx: &mut Context,
    sink: &mut Sink,
) -> Result<ControlFlow<()>> {
    let vars: Vec<u32> = gen.poly.variables().into_iter().collect();
    let inner = !ctx.unitary();
    let mut nonempty = Vec::new();
    let ideal = gen.kind == GeneratorKind::Ideal;
    if ideal {
        nonempty.push(false);
    }
    nonempty.extend(vars.iter().map(|_| inner));
    if ideal {
        nonempty.push(false);
    }
    let words = component_words(d, ctx.cfg.max_words)?;
    for w in &words {
        let letters = w.letters();
        let mut cuts = Vec::new();
        for_each_cut(letters.len(), &nonempty, |b| cuts.push(b.to_vec()));
        for b in cuts {
            ctx.charge(1)?;
            let off = usize::from(ideal);
            let mut assignment = BTreeMap::new();
            let mut parts = Vec::new();
            for (i, &v) in vars.iter().enumerate() {
                let piece = &letters[b[i + off]..b[i + off + 1]];
                assignment.insert(v, ctx.monomial(piece));
                parts.push(format!("x{v}:={}", show(piece)));
            }
            let core = gen.poly.substitute(&assignment)?;
            let (a, z) = if ideal {
                (&letters[..b[1]], &letters[b[b.len() - 2]..])
            } else {
                (&letters[..0], &letters[..0])
            };
            let poly = wrap(a, &core, z);
            let mut label = format!("{}{{{}}}", gen, parts.join(", "));
            if ideal {
                label = format!("{} * {label} * {}", show(a), show(z));
            }
            if sink(Instance { label, poly })?.is_break() {
                return Ok(ControlFlow::Break(()));
            }
        }
    }
    Ok(ControlFlow::Continue(()))
}

/// Each generator variable is replaced by a sum of up to `K` distinct
/// monomials with formal coefficients; one tuple of monomial sets per entry.
type Tuple = Vec<Vec<Word>>;

struct TupleSearch {
    slots: Vec<(u32, u32)>,
    max_distinct: usize,
    len_cap: Option<usize>,
    allow_empty: bool,
    max_candidates: u128,
    max_tuples: u64,
    seen: BTreeSet<Tuple>,
    out: Vec<Tuple>,
}

/// Words `w` with `times * md(w) <= r`, at most `cap` letters, sorted.
fn candidates(
    r: &MultiDegree,
    times: u32,
    cap: Option<usize>,
    allow_empty: bool,
    limit: u128,
) -> Result<Vec<Word>> {
    let mut out = Vec::new();
    let vars: Vec<u32> = r.support().collect();
    let mut left: Vec<u32> = vars.iter().map(|&v| r.get(v) / times).collect();
    let mut cur = Vec::new();
    fn go(
        vars: &[u32],
        left: &mut [u32],
        cur: &mut Vec<u32>,
        cap: Option<usize>,
        out: &mut Vec<Word>,
        limit: u128,
    ) -> Result<()> {
        if !cur.is_empty() {
            out.push(Word::new(cur.clone()));
            if out.len() as u128 > limit {
                return Err(AlgebraError::BudgetExceeded {
                    what: "substitution monomials",
                    needed: out.len() as u128,
                    limit,
                });
            }
        }
        if cap.is_some_and(|c| cur.len() >= c) {
            return Ok(());
        }
        for i in 0..vars.len() {
            if left[i] > 0 {
                left[i] -= 1;
                cur.push(vars[i]);
                go(vars, left, cur, cap, out, limit)?;
                cur.pop();
                left[i] += 1;
            }
        }
        Ok(())
    }
    go(&vars, &mut left, &mut cur, cap, &mut out, limit)?;
    if allow_empty {
        out.push(Word::empty());
    }
    out.sort();
    Ok(out)
}

fn scaled(w: &Word, times: u32) -> MultiDegree {
    let mut d = MultiDegree::zero();
    for (v, c) in w.multidegree().iter() {
        d.bump(v, c * times);
    }
    d
}

impl TupleSearch {
    fn slot(&mut self, i: usize, r: &MultiDegree, cur: &mut Tuple) -> Result<()> {
        if i == self.slots.len() {
            if r.is_zero() && !self.seen.contains(cur) {
                if self.out.len() as u64 >= self.max_tuples {
                    return Err(AlgebraError::BudgetExceeded {
                        what: "instances",
                        needed: u128::from(self.max_tuples) + 1,
                        limit: u128::from(self.max_tuples),
                    });
                }
                self.seen.insert(cur.clone());
                self.out.push(cur.clone());
            }
            return Ok(());
        }
        let n = self.slots[i].1;
        cur.push(Vec::new());
        self.monomials(i, n, r, cur)?;
        cur.pop();
        Ok(())
    }

    fn monomials(&mut self, i: usize, left: u32, r: &MultiDegree, cur: &mut Tuple) -> Result<()> {
        if left == 0 {
            return self.slot(i + 1, r, cur);
        }
        let chosen = cur[i].len();
        if chosen == self.max_distinct {
            return Ok(());
        }
        let n = self.slots[i].1;
        for times in 1..=left {
            // The last allowed distinct monomial must fill every remaining slot.
            if chosen + 1 == self.max_distinct && times != left {
                continue;
            }
            let single = chosen == 0 && times == n;
            let cap = if single { None } else { self.len_cap };
            for w in candidates(r, times, cap, self.allow_empty, self.max_candidates)? {
                if cur[i].last().is_some_and(|last| &w <= last) {
                    continue;
                }
                let Some(rest) = r.checked_sub(&scaled(&w, times)) else {
                    continue;
                };
                cur[i].push(w);
                self.monomials(i, left - times, &rest, cur)?;
                cur[i].pop();
            }
        }
        Ok(())
    }
}

/// `e -> ((e - 1) mod (p - 1)) + 1` for `e > 0`: on F_p, `l^e` and `l^reduced`
/// agree as functions.
fn reduce_exponent(e: u32, p: u32) -> u32 {
    if e == 0 {
        0
    } else {
        (e - 1) % (p - 1) + 1
    }
}

/// The formal-coefficient expansion of `g` under `tuple`, grouped by reduced
/// exponent vector. Each group is a combination of evaluations at points of
/// F_p^K, so it lies in the T-space of `g`.
fn expand(
    g: &Polynomial,
    slots: &[(u32, u32)],
    tuple: &Tuple,
    max_terms: u128,
) -> Result<BTreeMap<Vec<u32>, Polynomial>> {
    let field = g.field();
    let p = field.p();
    let slot_of: BTreeMap<u32, usize> = slots
        .iter()
        .enumerate()
        .map(|(i, &(v, _))| (v, i))
        .collect();
    let mut offset = vec![0usize; tuple.len() + 1];
    for (i, ms) in tuple.iter().enumerate() {
        offset[i + 1] = offset[i] + ms.len();
    }
    let mut groups: BTreeMap<Vec<u32>, Polynomial> = BTreeMap::new();
    for (w, c) in g.terms() {
        let pos: Vec<usize> = w.letters().iter().map(|v| slot_of[v]).collect();
        let bounds: Vec<usize> = pos.iter().map(|&i| tuple[i].len()).collect();
        let total: u128 = bounds.iter().map(|&b| b as u128).product();
        if total > max_terms {
            return Err(AlgebraError::BudgetExceeded {
                what: "expansion terms",
                needed: total,
                limit: max_terms,
            });
        }
        let mut choice = vec![0usize; pos.len()];
        loop {
            let mut exps = vec![0u32; offset[tuple.len()]];
            let mut letters = Vec::new();
            for (k, &i) in pos.iter().enumerate() {
                exps[offset[i] + choice[k]] += 1;
                letters.extend_from_slice(tuple[i][choice[k]].letters());
            }
            let key: Vec<u32> = exps.iter().map(|&e| reduce_exponent(e, p)).collect();
            groups
                .entry(key)
                .or_insert_with(|| Polynomial::zero(field, g.mode()))
                .add_term(Word::new(letters), c)?;
            // Advance the odometer.
            let mut k = 0;
            while k < choice.len() {
                choice[k] += 1;
                if choice[k] < bounds[k] {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
            if k == choice.len() {
                break;
            }
        }
    }
    Ok(groups)
}

fn tuple_label(gen: &Generator, slots: &[(u32, u32)], tuple: &Tuple, key: &[u32]) -> String {
    let mut k = 0;
    let mut parts = Vec::new();
    for (&(v, _), ms) in slots.iter().zip(tuple) {
        let sum: Vec<String> = ms
            .iter()
            .map(|m| {
                let s = format!("a{}^{}*{}", k + 1, key[k], m);
                k += 1;
                s
            })
            .collect();
        parts.push(format!("x{v}:={}", sum.join(" + ")));
    }
    format!("{gen}{{{}}}", parts.join(", "))
}

fn polarized_cores(
    gen: &Generator,
    degree: &MultiDegree,
    target: &MultiDegree,
    ctx: &mut Context,
) -> Result<Vec<Instance>> {
    let slots: Vec<(u32, u32)> = degree.iter().collect();
    let cfg = ctx.cfg;
    let allow_empty = ctx.unitary();
    let mut search = TupleSearch {
        slots: slots.clone(),
        max_distinct: cfg.sum_terms.max(1),
        len_cap: cfg.sum_monomial_len,
        allow_empty,
        max_candidates: cfg.max_words,
        max_tuples: cfg.max_instances.saturating_sub(ctx.used),
        seen: BTreeSet::new(),
        out: Vec::new(),
    };
    search.slot(0, target, &mut Vec::new())?;
    let tuples = search.out;
    ctx.charge(tuples.len() as u64)?;
    let mut out = Vec::new();
    for tuple in &tuples {
        for (key, poly) in expand(&gen.poly, &slots, tuple, cfg.max_words)? {
            if key.contains(&0) || poly.is_zero() || poly.multidegree().as_ref() != Some(target) {
                continue;
            }
            out.push(Instance {
                label: tuple_label(gen, &slots, tuple, &key),
                poly,
            });
        }
    }
    Ok(out)
}

fn polarized_instances(
    gen: &Generator,
    degree: &MultiDegree,
    d: &MultiDegree,
    ctx: &mut Context,
    sink: &mut Sink,
) -> Result<ControlFlow<()>> {
    for inst in polarized_cores(gen, degree, d, ctx)? {
        ctx.charge(1)?;
        if sink(inst)?.is_break() {
            return Ok(ControlFlow::Break(()));
        }
    }
    Ok(ControlFlow::Continue(()))
}

/// `a * c * b` for words `a`, `b` and independent polarized cores `c` of every
/// smaller multidegree.
fn ideal_of_polarized(
    gen: &Generator,
    degree: &MultiDegree,
    d: &MultiDegree,
    ctx: &mut Context,
    sink: &mut Sink,
) -> Result<ControlFlow<()>> {
    for e in d.sub_degrees() {
        if e.is_zero() || e.total() < degree.total() {
            continue;
        }
        let cores = polarized_cores(gen, degree, &e, ctx)?;
        if cores.is_empty() {
            continue;
        }
        let index: BTreeMap<Word, usize> = component_words(&e, ctx.cfg.max_words)?
            .into_iter()
            .enumerate()
            .map(|(i, w)| (w, i))
            .collect();
        let mut basis = super::linalg::Echelon::new(ctx.field, index.len(), false);
        let mut independent = Vec::new();
        for core in cores {
            let mut v = vec![0u32; index.len()];
            for (w, c) in core.poly.terms() {
                v[index[w]] = c;
            }
            if basis.insert(&v)?.is_some() {
                independent.push(core);
            }
        }
        let rest = d.checked_sub(&e).expect("e <= d");
        let outer = if rest.is_zero() {
            vec![Word::empty()]
        } else {
            component_words(&rest, ctx.cfg.max_words)?
        };
        for w in &outer {
            let letters = w.letters();
            for s in 0..=letters.len() {
                for core in &independent {
                    ctx.charge(1)?;
                    let (a, b) = letters.split_at(s);
                    let poly = wrap(a, &core.poly, b);
                    let label = format!("{} * {} * {}", show(a), core.label, show(b));
                    if sink(Instance { label, poly })?.is_break() {
                        return Ok(ControlFlow::Break(()));
                    }
                }
            }
        }
    }
    Ok(ControlFlow::Continue(()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_exponents_over_f3() {
        let r: Vec<u32> = (0..6).map(|e| reduce_exponent(e, 3)).collect();
        assert_eq!(r, vec![0, 1, 2, 1, 2, 1]);
    }

    #[test]
    fn candidate_monomials_respect_bounds() {
        let r = MultiDegree::from_pairs([(1, 2), (2, 1)]);
        let ws = candidates(&r, 2, None, false, 100).unwrap();
        assert_eq!(ws, vec![Word::letter(1)]);
        let ws = candidates(&r, 1, Some(1), true, 100).unwrap();
        assert_eq!(ws, vec![Word::empty(), Word::letter(1), Word::letter(2)]);
    }
}
