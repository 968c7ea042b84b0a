//! Minimal graded free resolutions of `S/I`, computed degree by degree with exact linear
//! algebra, plus the Cohen–Macaulay and Gorenstein tests read off them.

use std::collections::{BTreeMap, HashMap};

use crate::error::{AlgebraError, Result};
use crate::field::Scalar;
use crate::groebner::Ideal;
use crate::hilbert::{krull_dimension, minimalize};
use crate::linalg::{Matrix, RowSpace};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::Ring;

/// Default cap on `rows * cols` of any degree-piece matrix.
pub const DEFAULT_MAX_MATRIX_ENTRIES: usize = 4_000_000;

/// All monomials of degree `d` in `n` variables, in decreasing lex order of exponents.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(d as u16);
            out.push(Monomial::from_slice(prefix));
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e as u16);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Monomial basis of the degree-`d` piece of `⊕ S(-a_j)`.
pub struct DegreePiece {
    pub entries: Vec<(usize, Monomial)>,
    index: HashMap<(usize, Monomial), usize>,
}

impl DegreePiece {
    pub fn new(nvars: usize, degrees: &[i64], d: i64, cache: &mut MonomialCache) -> Self {
        let mut entries = Vec::new();
        for (j, &a) in degrees.iter().enumerate() {
            let k = d - a;
            if k < 0 {
                continue;
            }
            for m in cache.get(nvars, k as u32) {
                entries.push((j, m.clone()));
            }
        }
        let index = entries.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        Self { entries, index }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn position(&self, component: usize, m: &Monomial) -> Option<usize> {
        self.index.get(&(component, m.clone())).copied()
    }

    /// Coordinates of a homogeneous vector of polynomials lying in this piece.
    pub fn coordinates(&self, v: &[Polynomial], ring: &Ring) -> Vec<Scalar> {
        let f = ring.field();
        let mut out = vec![f.zero(); self.dim()];
        for (comp, p) in v.iter().enumerate() {
            for (m, c) in p.terms() {
                let pos = self.position(comp, m).expect("vector lies in this degree piece");
                out[pos] = c.clone();
            }
        }
        out
    }

    pub fn to_vector(&self, coords: &[Scalar], rank: usize, ring: &Ring) -> Vec<Polynomial> {
        let f = ring.field();
        let mut terms: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); rank];
        for (k, c) in coords.iter().enumerate() {
            if !f.is_zero(c) {
                let (comp, m) = &self.entries[k];
                terms[*comp].push((m.clone(), c.clone()));
            }
        }
        terms.into_iter().map(|t| Polynomial::from_terms(ring, t)).collect()
    }
}

#[derive(Default)]
pub struct MonomialCache {
    map: HashMap<(usize, u32), Vec<Monomial>>,
}

impl MonomialCache {
    pub fn get(&mut self, n: usize, d: u32) -> &[Monomial] {
        self.map.entry((n, d)).or_insert_with(|| monomials_of_degree(n, d))
    }
}

/// A degree-preserving map `⊕ S(-source_degrees) → ⊕ S(-target_degrees)`;
/// `columns[j]` is the image of the `j`-th source generator.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedMap {
    pub source_degrees: Vec<i64>,
    pub target_degrees: Vec<i64>,
    pub columns: Vec<Vec<Polynomial>>,
}

impl GradedMap {
    /// Matrix (target piece × source piece) of the map in internal degree `d`.
    pub fn degree_matrix(
        &self,
        ring: &Ring,
        d: i64,
        cache: &mut MonomialCache,
        max_entries: usize,
    ) -> Result<(Matrix, DegreePiece, DegreePiece)> {
        let n = ring.nvars();
        let src = DegreePiece::new(n, &self.source_degrees, d, cache);
        let tgt = DegreePiece::new(n, &self.target_degrees, d, cache);
        if src.dim().saturating_mul(tgt.dim()) > max_entries {
            return Err(AlgebraError::BudgetExceeded(format!(
                "degree-{d} matrix of size {}x{}",
                tgt.dim(),
                src.dim()
            )));
        }
        let f = ring.field();
        let mut m = Matrix::zeros(f, tgt.dim(), src.dim());
        for (col, (j, mono)) in src.entries.iter().enumerate() {
            for (i, p) in self.columns[*j].iter().enumerate() {
                for (pm, pc) in p.terms() {
                    let row = tgt.position(i, &pm.mul(mono)).expect("map is homogeneous");
                    let v = f.add(m.get(row, col), pc);
                    m.set(row, col, v);
                }
            }
        }
        Ok((m, src, tgt))
    }

    /// The transpose map between the dual modules `Hom(-, S)`.
    pub fn dual(&self) -> GradedMap {
        let ring_cols = self.target_degrees.len();
        let columns = (0..ring_cols)
            .map(|i| self.columns.iter().map(|col| col[i].clone()).collect())
            .collect();
        GradedMap {
            source_degrees: self.target_degrees.iter().map(|a| -a).collect(),
            target_degrees: self.source_degrees.iter().map(|a| -a).collect(),
            columns,
        }
    }

    /// `self ∘ other` as a polynomial matrix product.
    pub fn compose(&self, other: &GradedMap, ring: &Ring) -> Vec<Vec<Polynomial>> {
        other
            .columns
            .iter()
            .map(|col| {
                (0..self.target_degrees.len())
                    .map(|i| {
                        col.iter().enumerate().fold(Polynomial::zero(ring), |acc, (k, c)| {
                            &acc + &(&self.columns[k][i] * c)
                        })
                    })
                    .collect()
            })
            .collect()
    }
}

/// Graded Betti numbers `β_{i,j}` of `S/I`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, i64), u64>,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: i64) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn total(&self, i: usize) -> u64 {
        self.entries.range((i, i64::MIN)..=(i, i64::MAX)).map(|(_, v)| v).sum()
    }

    /// Projective dimension.
    pub fn length(&self) -> usize {
        self.entries.keys().map(|k| k.0).max().unwrap_or(0)
    }

    /// Sparse `(i, j, β_{i,j})` triples in increasing `(i, j)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, i64, u64)> + '_ {
        self.entries.iter().map(|(&(i, j), &v)| (i, j, v))
    }

    /// `Σ_i (-1)^i β_{i,j} t^j`, lowest degree first.
    pub fn alternating_numerator(&self) -> Vec<i64> {
        let top = self.entries.keys().map(|k| k.1).max().unwrap_or(0).max(0) as usize;
        let mut out = vec![0i64; top + 1];
        for (&(i, j), &v) in &self.entries {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            out[j as usize] += sign * v as i64;
        }
        while out.len() > 1 && *out.last().unwrap() == 0 {
            out.pop();
        }
        out
    }

    /// Castelnuovo–Mumford regularity of `S/I`: `max_{i,j} (j - i)`.
    pub fn regularity(&self) -> i64 {
        self.entries.keys().map(|&(i, j)| j - i as i64).max().unwrap_or(0)
    }
}

/// A minimal graded free resolution `0 → F_p → ... → F_1 → F_0 = S`.
#[derive(Clone, Debug)]
pub struct Resolution {
    ring: Ring,
    /// Generator degrees of each `F_i`.
    pub degrees: Vec<Vec<i64>>,
    /// `maps[i]: F_{i+1} → F_i`.
    pub maps: Vec<GradedMap>,
}

impl Resolution {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn betti(&self) -> BettiTable {
        let mut entries = BTreeMap::new();
        for (i, degs) in self.degrees.iter().enumerate() {
            for &d in degs {
                *entries.entry((i, d)).or_insert(0) += 1;
            }
        }
        BettiTable { entries }
    }

    /// True iff consecutive maps compose to zero.
    pub fn is_complex(&self) -> bool {
        self.maps.windows(2).all(|w| {
            w[0].compose(&w[1], &self.ring).iter().all(|col| col.iter().all(Polynomial::is_zero))
        })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ResolutionOptions {
    pub max_matrix_entries: usize,
}

impl Default for ResolutionOptions {
    fn default() -> Self {
        Self { max_matrix_entries: DEFAULT_MAX_MATRIX_ENTRIES }
    }
}

/// Degree bound for all syzygies: every graded Betti number of `S/I` is bounded by that of
/// `S/in(I)`, whose multidegrees divide the lcm of the minimal monomial generators.
fn syzygy_degree_bound(ideal: &Ideal) -> Result<i64> {
    let lead = minimalize(ideal.lead_ideal()?);
    let n = ideal.ring().nvars();
    let lcm = lead.iter().fold(Monomial::one(n), |acc, m| acc.lcm(m));
    Ok(i64::from(lcm.degree()))
}

pub fn free_resolution(ideal: &Ideal) -> Result<Resolution> {
    free_resolution_with(ideal, &ResolutionOptions::default())
}

pub fn free_resolution_with(ideal: &Ideal, opts: &ResolutionOptions) -> Result<Resolution> {
    if !ideal.is_homogeneous() {
        return Err(AlgebraError::NotHomogeneous);
    }
    let ring = ideal.ring().clone();
    let n = ring.nvars();
    let field = ring.field();
    let mut degrees: Vec<Vec<i64>> = vec![vec![0]];
    let mut maps: Vec<GradedMap> = Vec::new();
    if ideal.gens().is_empty() {
        return Ok(Resolution { ring, degrees, maps });
    }
    if ideal.is_unit()? {
        return Err(AlgebraError::UnitIdeal);
    }
    let bound = syzygy_degree_bound(ideal)?;
    let mut cache = MonomialCache::default();

    // minimal generators of I
    let mut gens: Vec<Polynomial> = ideal.gens().to_vec();
    gens.sort_by_key(|g| g.degree().unwrap_or(0));
    let mut chosen: Vec<Polynomial> = Vec::new();
    for g in gens {
        let current = Ideal::new(&ring, chosen.clone());
        if chosen.is_empty() || !current.contains_poly(&g)? {
            chosen.push(g);
        }
    }
    let first = GradedMap {
        source_degrees: chosen.iter().map(|g| i64::from(g.degree().unwrap())).collect(),
        target_degrees: vec![0],
        columns: chosen.into_iter().map(|g| vec![g]).collect(),
    };
    degrees.push(first.source_degrees.clone());
    maps.push(first);

    // kernel of the last map, minimal generators degree by degree
    while maps.len() <= n {
        let phi = maps.last().unwrap();
        let src_degs = phi.source_degrees.clone();
        let rank = src_degs.len();
        let start = *src_degs.iter().min().unwrap() + 1;
        let mut new_gens: Vec<(i64, Vec<Polynomial>)> = Vec::new();
        for d in start..=bound {
            let (mat, src, _) = phi.degree_matrix(&ring, d, &mut cache, opts.max_matrix_entries)?;
            if src.dim() == 0 {
                continue;
            }
            let kernel = mat.kernel();
            if kernel.is_empty() {
                continue;
            }
            let mut span = RowSpace::new(field, src.dim());
            for (e, h) in &new_gens {
                for m in cache.get(n, (d - e) as u32).to_vec() {
                    let shifted: Vec<Polynomial> =
                        h.iter().map(|p| p.mul_term(&m, &field.one())).collect();
                    span.insert(src.coordinates(&shifted, &ring));
                }
            }
            for v in kernel {
                if span.insert(v.clone()) {
                    new_gens.push((d, src.to_vector(&v, rank, &ring)));
                }
            }
        }
        if new_gens.is_empty() {
            break;
        }
        let next = GradedMap {
            source_degrees: new_gens.iter().map(|(d, _)| *d).collect(),
            target_degrees: src_degs,
            columns: new_gens.into_iter().map(|(_, v)| v).collect(),
        };
        degrees.push(next.source_degrees.clone());
        maps.push(next);
    }
    Ok(Resolution { ring, degrees, maps })
}

pub fn betti_table(ideal: &Ideal) -> Result<BettiTable> {
    Ok(free_resolution(ideal)?.betti())
}

fn check_proper(ideal: &Ideal) -> Result<()> {
    if !ideal.is_homogeneous() {
        return Err(AlgebraError::NotHomogeneous);
    }
    if ideal.is_unit()? {
        return Err(AlgebraError::UnitIdeal);
    }
    Ok(())
}

/// Auslander–Buchsbaum: `S/I` is Cohen–Macaulay iff its projective dimension equals its codimension.
pub fn is_cohen_macaulay(ideal: &Ideal) -> Result<bool> {
    check_proper(ideal)?;
    let dim = krull_dimension(ideal)?.ok_or(AlgebraError::UnitIdeal)?;
    let pd = free_resolution(ideal)?.length();
    Ok(ideal.ring().nvars() - pd == dim)
}

/// Cohen–Macaulay of type one: the last module of the minimal resolution has rank one.
pub fn is_gorenstein_graded(ideal: &Ideal) -> Result<bool> {
    check_proper(ideal)?;
    let dim = krull_dimension(ideal)?.ok_or(AlgebraError::UnitIdeal)?;
    let res = free_resolution(ideal)?;
    let pd = res.length();
    let cm = ideal.ring().nvars() - pd == dim;
    Ok(cm && res.degrees[pd].len() == 1)
}
