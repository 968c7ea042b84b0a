//! Buchberger's algorithm with Gebauer–Möller pair management and the sugar strategy.

use std::cmp::Ordering;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::{Arc, OnceLock};

use crate::error::{AlgebraError, Result};
use crate::field::Scalar;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::{check_same_ring, same_ring, Ring};

pub const DEFAULT_MAX_PAIRS: u64 = 1_000_000;

static PAIR_BUDGET: AtomicU64 = AtomicU64::new(DEFAULT_MAX_PAIRS);

/// Sets the pair budget used by [`GbOptions::default`] process-wide.
pub fn set_default_pair_budget(max_pairs: u64) {
    PAIR_BUDGET.store(max_pairs.max(1), AtomicOrdering::Relaxed);
}

pub fn default_pair_budget() -> u64 {
    PAIR_BUDGET.load(AtomicOrdering::Relaxed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GbOptions {
    /// Abort with [`AlgebraError::BudgetExceeded`] after this many S-pairs.
    pub max_pairs: u64,
    /// Ignore S-pairs whose lcm has larger degree; the result is then only a truncated basis.
    pub max_degree: Option<u32>,
}

impl Default for GbOptions {
    fn default() -> Self {
        Self { max_pairs: default_pair_budget(), max_degree: None }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GbStats {
    pub pairs_processed: u64,
    pub pairs_skipped: u64,
    pub zero_reductions: u64,
    pub max_degree: u32,
}

/// A reduced Gröbner basis: monic, auto-reduced, sorted by increasing leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    polys: Vec<Polynomial>,
    stats: GbStats,
    truncated: bool,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn stats(&self) -> GbStats {
        self.stats
    }

    /// True when a degree cap cut pairs off; the basis is then only valid up to that degree.
    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_unit()
    }

    pub fn lead_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().filter_map(|p| p.lead_monomial().cloned()).collect()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        reduce_full(f, &self.polys)
    }
}

/// Full reduction (remainder of multivariate division) of `f` by `divisors`.
pub fn reduce_full(f: &Polynomial, divisors: &[Polynomial]) -> Polynomial {
    let refs: Vec<&Polynomial> = divisors.iter().filter(|g| !g.is_zero()).collect();
    reduce_with(f, &refs, None).0
}

/// Returns the remainder and the sugar growth bound.
fn reduce_with(f: &Polynomial, divisors: &[&Polynomial], sugars: Option<(&[u32], u32)>) -> (Polynomial, u32) {
    let ring = f.ring().clone();
    let field = ring.field();
    let order = ring.order();
    let mut sugar = sugars.map(|s| s.1).unwrap_or(0);
    let mut remainder: Vec<(Monomial, Scalar)> = Vec::new();
    let mut work: Vec<(Monomial, Scalar)> = f.terms().to_vec();
    let mut start = 0usize;
    while start < work.len() {
        let (lm, lc) = (&work[start].0, &work[start].1);
        let reducer = divisors
            .iter()
            .position(|g| g.lead_monomial().is_some_and(|gm| gm.divides(lm)));
        match reducer {
            None => {
                remainder.push(work[start].clone());
                start += 1;
            }
            Some(k) => {
                let g = divisors[k];
                let (gm, gc) = g.lead().expect("nonzero divisor");
                let q = gm.quotient_of(lm);
                let c = field.div(lc, gc).expect("nonzero lead coefficient");
                if let Some((s, _)) = sugars {
                    sugar = sugar.max(s[k] + q.degree());
                }
                work = subtract_scaled(&work[start..], &c, &q, g, order, field);
                start = 0;
            }
        }
    }
    (Polynomial::from_sorted_terms(&ring, remainder), sugar)
}

fn subtract_scaled(
    f: &[(Monomial, Scalar)],
    c: &Scalar,
    m: &Monomial,
    g: &Polynomial,
    order: crate::monomial::MonomialOrder,
    field: crate::field::Field,
) -> Vec<(Monomial, Scalar)> {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let mut i = 0;
    let gt = g.terms();
    let mut j = 0;
    let mut pending: Option<(Monomial, Scalar)> = None;
    loop {
        if pending.is_none() && j < gt.len() {
            let (n, a) = &gt[j];
            pending = Some((n.mul(m), field.neg(&field.mul(a, c))));
            j += 1;
        }
        match (&pending, i < f.len()) {
            (None, false) => break,
            (None, true) => {
                out.extend_from_slice(&f[i..]);
                break;
            }
            (Some(_), false) => {
                out.push(pending.take().unwrap());
            }
            (Some((pm, pc)), true) => match order.cmp(&f[i].0, pm) {
                Ordering::Greater => {
                    out.push(f[i].clone());
                    i += 1;
                }
                Ordering::Less => out.push(pending.take().unwrap()),
                Ordering::Equal => {
                    let s = field.add(&f[i].1, pc);
                    if !field.is_zero(&s) {
                        out.push((f[i].0.clone(), s));
                    }
                    i += 1;
                    pending = None;
                }
            },
        }
    }
    out
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Engine {
    ring: Ring,
    basis: Vec<Polynomial>,
    sugar: Vec<u32>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    stats: GbStats,
    truncated: bool,
}

impl Engine {
    fn lm(&self, i: usize) -> &Monomial {
        self.basis[i].lead_monomial().expect("basis elements are nonzero")
    }

    fn pair_sugar(&self, i: usize, j: usize, lcm: &Monomial) -> u32 {
        let si = self.sugar[i] + lcm.degree() - self.lm(i).degree();
        let sj = self.sugar[j] + lcm.degree() - self.lm(j).degree();
        si.max(sj)
    }

    /// Gebauer–Möller installation of the new basis element `h`.
    fn update(&mut self, h: usize) {
        let hm = self.lm(h).clone();
        let candidates: Vec<(usize, Monomial)> = (0..h)
            .filter(|&g| self.active[g])
            .map(|g| (g, self.lm(g).lcm(&hm)))
            .collect();
        // chain criterion among the new pairs
        let mut keep = vec![true; candidates.len()];
        for (a, (ga, la)) in candidates.iter().enumerate() {
            if self.lm(*ga).is_coprime(&hm) {
                continue;
            }
            for (b, (_, lb)) in candidates.iter().enumerate() {
                if a == b || !keep[b] {
                    continue;
                }
                if lb.divides(la) && (lb != la || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        // product criterion: a kept pair with coprime leads is discarded
        let new_pairs: Vec<Pair> = candidates
            .into_iter()
            .zip(keep)
            .filter(|(_, k)| *k)
            .filter(|((g, _), _)| !self.lm(*g).is_coprime(&hm))
            .map(|((g, lcm), _)| {
                let sugar = self.pair_sugar(g, h, &lcm);
                Pair { i: g, j: h, lcm, sugar }
            })
            .collect();
        // Buchberger triangle criterion on old pairs
        let old = std::mem::take(&mut self.pairs);
        for p in old {
            let drop = hm.divides(&p.lcm)
                && self.lm(p.i).lcm(&hm) != p.lcm
                && self.lm(p.j).lcm(&hm) != p.lcm;
            if drop {
                self.stats.pairs_skipped += 1;
            } else {
                self.pairs.push(p);
            }
        }
        self.pairs.extend(new_pairs);
        for g in 0..h {
            if self.active[g] && hm.divides(self.lm(g)) {
                self.active[g] = false;
            }
        }
    }

    fn select(&mut self) -> Option<Pair> {
        let order = self.ring.order();
        let idx = (0..self.pairs.len()).min_by(|&a, &b| {
            let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
            pa.sugar
                .cmp(&pb.sugar)
                .then_with(|| order.cmp(&pa.lcm, &pb.lcm))
                .then_with(|| (pa.j, pa.i).cmp(&(pb.j, pb.i)))
        })?;
        Some(self.pairs.swap_remove(idx))
    }

    fn add(&mut self, p: Polynomial, sugar: u32) -> usize {
        let p = p.monic();
        let d = p.degree().unwrap_or(0);
        self.stats.max_degree = self.stats.max_degree.max(d);
        self.basis.push(p);
        self.sugar.push(sugar);
        self.active.push(true);
        let h = self.basis.len() - 1;
        self.update(h);
        h
    }

    fn s_polynomial(&self, p: &Pair) -> Polynomial {
        let field = self.ring.field();
        let (f, g) = (&self.basis[p.i], &self.basis[p.j]);
        let mf = self.lm(p.i).quotient_of(&p.lcm);
        let mg = self.lm(p.j).quotient_of(&p.lcm);
        // both are monic
        let one = field.one();
        f.mul_term(&mf, &one).sub_mul_term(&one, &mg, g)
    }

    fn reducers(&self) -> (Vec<&Polynomial>, Vec<u32>) {
        let mut polys = Vec::new();
        let mut sugars = Vec::new();
        for (k, p) in self.basis.iter().enumerate() {
            if self.active[k] {
                polys.push(p);
                sugars.push(self.sugar[k]);
            }
        }
        (polys, sugars)
    }
}

fn unit_basis(ring: &Ring, stats: GbStats) -> GroebnerBasis {
    GroebnerBasis { ring: ring.clone(), polys: vec![Polynomial::one(ring)], stats, truncated: false }
}

/// Computes the reduced Gröbner basis of the ideal generated by `gens`.
pub fn groebner_basis(ring: &Ring, gens: &[Polynomial], opts: &GbOptions) -> Result<GroebnerBasis> {
    let mut input: Vec<Polynomial> = Vec::new();
    for g in gens {
        check_same_ring(g.ring(), ring)?;
        if !g.is_zero() {
            input.push(g.monic());
        }
    }
    let mut stats = GbStats::default();
    if input.iter().any(|g| g.is_unit()) {
        return Ok(unit_basis(ring, stats));
    }
    let order = ring.order();
    // install generators by increasing leading monomial (ties by canonical text)
    input.sort_by(|a, b| {
        order
            .cmp(a.lead_monomial().unwrap(), b.lead_monomial().unwrap())
            .then_with(|| a.terms().len().cmp(&b.terms().len()))
            .then_with(|| a.to_string().cmp(&b.to_string()))
    });
    input.dedup();
    let mut engine = Engine {
        ring: ring.clone(),
        basis: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        stats,
        truncated: false,
    };
    for g in input {
        // interreduce lightly so duplicate leads do not pile up
        let (reducers, _) = engine.reducers();
        let r = reduce_with(&g, &reducers, None).0;
        if r.is_zero() {
            continue;
        }
        if r.is_unit() {
            return Ok(unit_basis(ring, engine.stats));
        }
        let s = r.degree().unwrap_or(0);
        engine.add(r, s);
    }
    while let Some(pair) = engine.select() {
        if let Some(cap) = opts.max_degree {
            if pair.lcm.degree() > cap {
                engine.truncated = true;
                engine.stats.pairs_skipped += 1;
                continue;
            }
        }
        engine.stats.pairs_processed += 1;
        if engine.stats.pairs_processed > opts.max_pairs {
            return Err(AlgebraError::BudgetExceeded(format!(
                "Groebner basis exceeded {} S-pairs",
                opts.max_pairs
            )));
        }
        let s = engine.s_polynomial(&pair);
        let (reducers, sugars) = engine.reducers();
        let (r, sugar) = reduce_with(&s, &reducers, Some((&sugars, pair.sugar)));
        if r.is_zero() {
            engine.stats.zero_reductions += 1;
            continue;
        }
        if r.is_unit() {
            return Ok(unit_basis(ring, engine.stats));
        }
        engine.add(r, sugar);
    }
    stats = engine.stats;
    let truncated = engine.truncated;
    let minimal: Vec<Polynomial> = engine
        .basis
        .into_iter()
        .zip(engine.active)
        .filter(|(_, a)| *a)
        .map(|(p, _)| p)
        .collect();
    Ok(GroebnerBasis { ring: ring.clone(), polys: interreduce(minimal), stats, truncated })
}

/// Tail-reduces a minimal basis and sorts it by increasing leading monomial.
fn interreduce(mut basis: Vec<Polynomial>) -> Vec<Polynomial> {
    if basis.is_empty() {
        return basis;
    }
    let order = basis[0].ring().order();
    basis.sort_by(|a, b| order.cmp(a.lead_monomial().unwrap(), b.lead_monomial().unwrap()));
    let mut out = Vec::with_capacity(basis.len());
    for k in 0..basis.len() {
        let others: Vec<&Polynomial> =
            basis.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, p)| p).collect();
        let p = &basis[k];
        let (lm, lc) = p.lead().unwrap().clone();
        let tail = Polynomial::from_sorted_terms(p.ring(), p.terms()[1..].to_vec());
        let tail = reduce_with(&tail, &others, None).0;
        let mut terms = vec![(lm, lc)];
        terms.extend(tail.into_terms());
        out.push(Polynomial::from_sorted_terms(p.ring(), terms).monic());
    }
    out
}

/// An ideal given by generators, with a lazily computed reduced Gröbner basis.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
    gb: Arc<OnceLock<Arc<GroebnerBasis>>>,
}

impl PartialEq for Ideal {
    /// Structural equality of generator lists; use [`Ideal::equals`] for ideal equality.
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.gens == other.gens
    }
}

impl Ideal {
    /// Zero generators are dropped. Panics if a generator lives in another ring.
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Self {
        for g in &gens {
            assert!(same_ring(g.ring(), ring), "generator {g} is not in {ring}");
        }
        Self {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            gb: Arc::new(OnceLock::new()),
        }
    }

    pub fn try_new(ring: &Ring, gens: Vec<Polynomial>) -> Result<Self> {
        for g in &gens {
            check_same_ring(g.ring(), ring)?;
        }
        Ok(Self::new(ring, gens))
    }

    pub fn zero(ring: &Ring) -> Self {
        Self::new(ring, Vec::new())
    }

    pub fn unit(ring: &Ring) -> Self {
        Self::new(ring, vec![Polynomial::one(ring)])
    }

    /// The ideal generated by the listed variables.
    pub fn of_variables(ring: &Ring, vars: &[usize]) -> Self {
        Self::new(ring, vars.iter().map(|&v| Polynomial::var(ring, v)).collect())
    }

    /// The irrelevant ideal generated by all variables.
    pub fn irrelevant(ring: &Ring) -> Self {
        Self::of_variables(ring, &(0..ring.nvars()).collect::<Vec<_>>())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(Polynomial::is_homogeneous)
    }

    /// Reduced Gröbner basis under the ring's order and the default budget (cached).
    pub fn groebner(&self) -> Result<Arc<GroebnerBasis>> {
        self.groebner_with(&GbOptions::default())
    }

    /// Only complete (untruncated) bases are cached.
    pub fn groebner_with(&self, opts: &GbOptions) -> Result<Arc<GroebnerBasis>> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb.clone());
        }
        let gb = Arc::new(groebner_basis(&self.ring, &self.gens, opts)?);
        if gb.is_truncated() {
            return Ok(gb);
        }
        let _ = self.gb.set(gb.clone());
        Ok(self.gb.get().cloned().unwrap_or(gb))
    }

    /// The reduced Gröbner basis as a list of polynomials.
    pub fn groebner_basis(&self) -> Result<Vec<Polynomial>> {
        Ok(self.groebner()?.polys().to_vec())
    }

    /// The ideal generated by its own reduced Gröbner basis.
    pub fn canonical(&self) -> Result<Ideal> {
        let gb = self.groebner()?;
        let ideal = Ideal::new(&self.ring, gb.polys().to_vec());
        let _ = ideal.gb.set(gb);
        Ok(ideal)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_polynomial, parse_ring};

    fn ideal(ring: &Ring, gens: &[&str]) -> Ideal {
        Ideal::new(ring, gens.iter().map(|g| parse_polynomial(ring, g).unwrap()).collect())
    }

    fn strings(ps: &[Polynomial]) -> Vec<String> {
        ps.iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn single_quadric_is_its_own_basis() {
        let r = parse_ring("ring Q[z00,z01,z10,z11] grevlex").unwrap();
        // grevlex leads with z01*z10 (the trailing variable z11 makes z00*z11 smaller)
        let i = ideal(&r, &["-2*z00*z11 + 2*z01*z10"]);
        assert_eq!(strings(&i.groebner_basis().unwrap()), ["z01*z10 - z00*z11"]);
        let lex = parse_ring("ring Q[z00,z01,z10,z11] lex").unwrap();
        let i = ideal(&lex, &["3*z00*z11 - 3*z01*z10"]);
        assert_eq!(strings(&i.groebner_basis().unwrap()), ["z00*z11 - z01*z10"]);
    }

    #[test]
    fn hand_buchberger_examples() {
        // S(x - y, y^2) = y*(x - y) - x*y^2/y^2... reduces to zero: basis unchanged
        let r = parse_ring("ring Q[x,y] lex").unwrap();
        let i = ideal(&r, &["x - y", "y^2"]);
        assert_eq!(strings(&i.groebner_basis().unwrap()), ["y^2", "x - y"]);
        // S(x^2, xy + y^2) = y*x^2 - x*(xy + y^2) = -x*y^2 -> + y^3
        let r = parse_ring("ring Q[x,y] grevlex").unwrap();
        let i = ideal(&r, &["x^2", "x*y + y^2"]);
        assert_eq!(strings(&i.groebner_basis().unwrap()), ["x*y + y^2", "x^2", "y^3"]);
    }

    #[test]
    fn unit_ideal_detected() {
        let r = parse_ring("ring Q[x,y] grevlex").unwrap();
        let i = ideal(&r, &["x*y - 1", "x^2"]);
        assert!(i.groebner().unwrap().is_unit());
    }

    #[test]
    fn budget_is_enforced() {
        let r = parse_ring("ring F31[x,y,z] grevlex").unwrap();
        let i = ideal(&r, &["x^3 - y*z^2 + 1", "y^3 - x*z + 2", "z^3 - x*y^2 + x"]);
        let opts = GbOptions { max_pairs: 1, max_degree: None };
        assert!(matches!(i.groebner_with(&opts), Err(AlgebraError::BudgetExceeded(_))));
        assert!(i.groebner().is_ok());
    }

    #[test]
    fn degree_truncation_is_flagged() {
        let r = parse_ring("ring Q[x,y] grevlex").unwrap();
        let i = ideal(&r, &["x^2", "x*y + y^2"]);
        let gb = i.groebner_with(&GbOptions { max_pairs: 100, max_degree: Some(2) }).unwrap();
        assert!(gb.is_truncated());
        assert_eq!(gb.polys().len(), 2);
    }
}
