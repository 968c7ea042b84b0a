//! Ideal calculus on top of Gröbner bases: membership, equality, powers, elimination,
//! intersections, quotients, saturation and kernels of ring maps.

use std::collections::HashSet;

use crate::error::{AlgebraError, Result};
use crate::groebner::Ideal;
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::{check_same_ring, PolyRing, Ring};
use crate::ringmap::RingMap;

/// Picks a variable name not in `taken`, starting from `base`.
pub fn fresh_name(base: &str, taken: &HashSet<String>) -> String {
    if !taken.contains(base) {
        return base.to_string();
    }
    (0..)
        .map(|k| format!("{base}_{k}"))
        .find(|n| !taken.contains(n))
        .expect("infinitely many candidates")
}

impl Ideal {
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        check_same_ring(f.ring(), self.ring())?;
        if self.gens().is_empty() {
            return Ok(f.clone());
        }
        Ok(self.groebner()?.normal_form(f))
    }

    pub fn contains_poly(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Ideal) -> Result<bool> {
        check_same_ring(self.ring(), other.ring())?;
        for g in other.gens() {
            if !self.contains_poly(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        check_same_ring(self.ring(), other.ring())?;
        let (a, b) = (self.groebner()?, other.groebner()?);
        Ok(a.polys() == b.polys())
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner()?.is_unit())
    }

    pub fn is_zero(&self) -> bool {
        self.gens().is_empty()
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        check_same_ring(self.ring(), other.ring())?;
        let mut gens = self.gens().to_vec();
        gens.extend(other.gens().iter().cloned());
        Ok(Ideal::new(self.ring(), gens))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        check_same_ring(self.ring(), other.ring())?;
        let mut gens = Vec::new();
        for f in self.gens() {
            for g in other.gens() {
                gens.push(f * g);
            }
        }
        Ok(Ideal::new(self.ring(), gens))
    }

    /// `I^d`, generated by all `d`-fold products of generators (duplicates removed).
    pub fn power(&self, d: u32) -> Ideal {
        let ring = self.ring();
        let gens = self.gens();
        let mut out: Vec<Polynomial> = Vec::new();
        if d == 0 {
            return Ideal::unit(ring);
        }
        // multisets of generator indices, nondecreasing
        let mut idx = vec![0usize; d as usize];
        if gens.is_empty() {
            return Ideal::zero(ring);
        }
        loop {
            let mut p = Polynomial::one(ring);
            for &k in &idx {
                p = &p * &gens[k];
            }
            if !p.is_zero() && !out.contains(&p) {
                out.push(p);
            }
            // advance
            let mut pos = idx.len();
            loop {
                if pos == 0 {
                    return Ideal::new(ring, out);
                }
                pos -= 1;
                if idx[pos] + 1 < gens.len() {
                    let v = idx[pos] + 1;
                    for slot in idx.iter_mut().skip(pos) {
                        *slot = v;
                    }
                    break;
                }
            }
        }
    }

    /// `I ∩ k[keep]`, returned in the subring on the kept variables (in ring order).
    pub fn eliminate(&self, keep: &[usize]) -> Result<Ideal> {
        let ring = self.ring();
        let n = ring.nvars();
        for &k in keep {
            if k >= n {
                return Err(AlgebraError::OutOfRange(format!("variable index {k}")));
            }
        }
        let mut kept: Vec<usize> = keep.to_vec();
        kept.sort_unstable();
        kept.dedup();
        let dropped: Vec<usize> = (0..n).filter(|v| !kept.contains(v)).collect();
        let sub_order = match ring.order() {
            MonomialOrder::Lex => MonomialOrder::Lex,
            _ => MonomialOrder::Grevlex,
        };
        let sub = PolyRing::new(
            ring.field(),
            kept.iter().map(|&v| ring.vars()[v].clone()).collect(),
            sub_order,
        )?;
        if dropped.is_empty() {
            let gens = self.gens().iter().map(|g| g.reorder(&sub)).collect();
            return Ok(Ideal::new(&sub, gens));
        }
        // eliminating ring: dropped variables first
        let mut names: Vec<String> = dropped.iter().map(|&v| ring.vars()[v].clone()).collect();
        names.extend(kept.iter().map(|&v| ring.vars()[v].clone()));
        let elim = PolyRing::new(ring.field(), names, MonomialOrder::Block(dropped.len()))?;
        let mut var_map = vec![0usize; n];
        for (pos, &v) in dropped.iter().chain(kept.iter()).enumerate() {
            var_map[v] = pos;
        }
        let moved = Ideal::new(&elim, self.gens().iter().map(|g| g.transfer(&elim, &var_map)).collect());
        let gb = moved.groebner()?;
        let back: Vec<usize> = (0..elim.nvars())
            .map(|p| if p < dropped.len() { usize::MAX } else { p - dropped.len() })
            .collect();
        let gens = gb
            .polys()
            .iter()
            .filter(|g| (0..dropped.len()).all(|v| !g.involves(v)))
            .map(|g| transfer_partial(g, &sub, &back))
            .collect();
        Ideal::new(&sub, gens).canonical()
    }

    /// `I ∩ J` via `t·I + (1 - t)·J` and elimination of `t`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        check_same_ring(self.ring(), other.ring())?;
        let ring = self.ring();
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(ring));
        }
        let taken: HashSet<String> = ring.vars().iter().cloned().collect();
        let t = fresh_name("t", &taken);
        let mut names = vec![t];
        names.extend(ring.vars().iter().cloned());
        let ext = PolyRing::new(ring.field(), names, MonomialOrder::Block(1))?;
        let shift: Vec<usize> = (1..=ring.nvars()).collect();
        let tv = Polynomial::var(&ext, 0);
        let one_minus_t = &Polynomial::one(&ext) - &tv;
        let mut gens = Vec::new();
        for f in self.gens() {
            gens.push(&tv * &f.transfer(&ext, &shift));
        }
        for g in other.gens() {
            gens.push(&one_minus_t * &g.transfer(&ext, &shift));
        }
        let elim = Ideal::new(&ext, gens).eliminate(&shift)?;
        // elimination returns the subring under grevlex/lex; move back to the original order
        let back: Vec<usize> = (0..ring.nvars()).collect();
        let gens = elim.gens().iter().map(|g| g.transfer(ring, &back)).collect();
        Ideal::new(ring, gens).canonical()
    }

    /// `(I : f) = (I ∩ (f)) / f`.
    pub fn quotient_by(&self, f: &Polynomial) -> Result<Ideal> {
        check_same_ring(f.ring(), self.ring())?;
        if f.is_zero() {
            return Ok(Ideal::unit(self.ring()));
        }
        let meet = self.intersect(&Ideal::new(self.ring(), vec![f.clone()]))?;
        let gens = meet
            .gens()
            .iter()
            .map(|g| g.exact_div(f).expect("elements of (f) are divisible by f"))
            .collect();
        Ideal::new(self.ring(), gens).canonical()
    }

    /// `(I : J) = ⋂_g (I : g)` over the generators of `J`.
    pub fn quotient(&self, other: &Ideal) -> Result<Ideal> {
        check_same_ring(self.ring(), other.ring())?;
        let mut acc: Option<Ideal> = None;
        for g in other.gens() {
            let q = self.quotient_by(g)?;
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q)?,
            });
        }
        Ok(acc.unwrap_or_else(|| Ideal::unit(self.ring())))
    }

    /// `(I : J^∞)` by iterating quotients until the ideal stabilises.
    pub fn saturate(&self, other: &Ideal) -> Result<Ideal> {
        let mut cur = self.canonical()?;
        loop {
            let next = cur.quotient(other)?;
            if next.equals(&cur)? {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// Whether `(I : 𝔪) = I` for the irrelevant ideal `𝔪`.
    pub fn is_saturated(&self) -> Result<bool> {
        self.quotient(&Ideal::irrelevant(self.ring()))?.equals(self)
    }

    /// Leading monomials of the reduced Gröbner basis.
    pub fn lead_ideal(&self) -> Result<Vec<crate::monomial::Monomial>> {
        Ok(self.groebner()?.lead_monomials())
    }

    /// Moves the ideal into `target` by variable name.
    pub fn transfer_by_name(&self, target: &Ring) -> Result<Ideal> {
        let gens = self
            .gens()
            .iter()
            .map(|g| g.transfer_by_name(target))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(target, gens))
    }

    /// Image of the ideal generators under a ring map.
    pub fn map(&self, m: &RingMap) -> Result<Ideal> {
        let gens = self.gens().iter().map(|g| m.apply(g)).collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(m.target(), gens))
    }
}

fn transfer_partial(g: &Polynomial, target: &Ring, back: &[usize]) -> Polynomial {
    let n = target.nvars();
    let terms = g.terms().iter().map(|(m, c)| {
        let mut exps: crate::monomial::Exponents = smallvec::smallvec![0; n];
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                exps[back[i]] += e;
            }
        }
        (crate::monomial::Monomial::new(exps), c.clone())
    });
    Polynomial::from_terms(target, terms.collect::<Vec<_>>())
}

/// Kernel of `m`, optionally modulo an ideal `target_ideal` of the target ring, via the
/// graph ideal `(s_i - m(s_i)) + target_ideal` and elimination of the target variables.
pub fn kernel_of_map_mod(m: &RingMap, target_ideal: Option<&Ideal>) -> Result<Ideal> {
    let (src, tgt) = (m.source(), m.target());
    if let Some(j) = target_ideal {
        check_same_ring(j.ring(), tgt)?;
    }
    let mut taken: HashSet<String> = src.vars().iter().cloned().collect();
    let mut names = Vec::new();
    for v in tgt.vars() {
        let n = fresh_name(v, &taken);
        taken.insert(n.clone());
        names.push(n);
    }
    let nt = names.len();
    names.extend(src.vars().iter().cloned());
    let joint = PolyRing::new(src.field(), names, MonomialOrder::Block(nt))?;
    let tgt_map: Vec<usize> = (0..nt).collect();
    let src_map: Vec<usize> = (nt..nt + src.nvars()).collect();
    let mut gens = Vec::new();
    for (i, img) in m.images().iter().enumerate() {
        let s = Polynomial::var(&joint, src_map[i]);
        gens.push(&s - &img.transfer(&joint, &tgt_map));
    }
    if let Some(j) = target_ideal {
        gens.extend(j.gens().iter().map(|g| g.transfer(&joint, &tgt_map)));
    }
    let elim = Ideal::new(&joint, gens).eliminate(&src_map)?;
    // same variable names as the source; restore the source order
    elim.transfer_by_name(src)?.canonical()
}

pub fn kernel_of_map(m: &RingMap) -> Result<Ideal> {
    kernel_of_map_mod(m, None)
}
