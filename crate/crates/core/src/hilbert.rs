//! Hilbert series, Hilbert functions and Krull dimension from lead-term ideals.

use crate::error::{AlgebraError, Result};
use crate::groebner::Ideal;
use crate::monomial::{Exponents, Monomial};

/// Hilbert series `numerator(t) / (1 - t)^ambient_vars` of `S/I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertData {
    /// Coefficients of the numerator, lowest degree first.
    pub numerator: Vec<i64>,
    pub ambient_vars: usize,
    /// Krull dimension of `S/I`; `None` for the unit ideal.
    pub dimension: Option<usize>,
    /// Multiplicity (reduced numerator at `t = 1`).
    pub degree: i64,
    /// Numerator after cancelling all factors `(1 - t)`: series = reduced / (1 - t)^dimension.
    pub reduced_numerator: Vec<i64>,
}

fn trim(mut p: Vec<i64>) -> Vec<i64> {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    if p.is_empty() {
        p.push(0);
    }
    p
}

fn poly_add(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    trim(out)
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn one_minus_t_pow(e: usize) -> Vec<i64> {
    let mut p = vec![0; e + 1];
    p[0] = 1;
    p[e] -= 1;
    p
}

/// Removes monomials divisible by another one; result sorted and deduplicated.
pub fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.exponents().cmp(b.exponents())));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|m| m.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Numerator of the Hilbert series of `S / (gens)` for a monomial ideal, by pivoting on
/// variable powers: `N(I) = N(I + (x^e)) + t^e N(I : x^e)`.
pub fn monomial_numerator(gens: &[Monomial]) -> Vec<i64> {
    let gens = minimalize(gens.to_vec());
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|m| m.is_one()) {
        return vec![0];
    }
    let n = gens[0].nvars();
    let mut counts = vec![0usize; n];
    for g in &gens {
        for v in g.support() {
            counts[v] += 1;
        }
    }
    let Some((pivot_var, _)) = counts.iter().enumerate().filter(|(_, c)| **c >= 2).max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0))) else {
        // pairwise coprime generators form a regular sequence
        return gens
            .iter()
            .fold(vec![1], |acc, g| poly_mul(&acc, &one_minus_t_pow(g.degree() as usize)));
    };
    let e = gens
        .iter()
        .map(|g| g.exponent(pivot_var))
        .filter(|&x| x > 0)
        .min()
        .expect("pivot variable occurs");
    let mut pexps: Exponents = smallvec::smallvec![0; n];
    pexps[pivot_var] = e;
    let pivot = Monomial::new(pexps);
    let mut with_pivot = gens.clone();
    with_pivot.push(pivot.clone());
    let colon: Vec<Monomial> = gens.iter().map(|g| g.gcd(&pivot).quotient_of(g)).collect();
    let mut shifted = vec![0i64; e as usize];
    shifted.extend(monomial_numerator(&colon));
    poly_add(&monomial_numerator(&with_pivot), &shifted)
}

/// Exact binomial `C(a, b)` for `a >= 0`.
fn binomial(a: i64, b: i64) -> i64 {
    if b < 0 || a < b {
        return 0;
    }
    let b = b.min(a - b);
    let mut r: i128 = 1;
    for i in 0..b {
        r = r * i128::from(a - i) / i128::from(i + 1);
    }
    r as i64
}

/// Generalised binomial `C(x, m) = x (x-1) ... (x-m+1) / m!`, valid for negative `x`.
fn binomial_poly(x: i64, m: i64) -> i64 {
    if m < 0 {
        return 0;
    }
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 0..m {
        num *= i128::from(x - i);
        den *= i128::from(i + 1);
    }
    (num / den) as i64
}

impl HilbertData {
    pub fn from_lead_monomials(lead: &[Monomial], nvars: usize) -> Self {
        let numerator = trim(monomial_numerator(lead));
        let mut reduced = numerator.clone();
        let mut cancelled = 0usize;
        let is_zero = reduced.iter().all(|&c| c == 0);
        if !is_zero {
            // divide by (1 - t) while t = 1 is a root
            while reduced.iter().sum::<i64>() == 0 {
                let mut q = vec![0i64; reduced.len() - 1];
                let mut acc = 0;
                for (i, c) in reduced.iter().enumerate().take(reduced.len() - 1) {
                    acc += c;
                    q[i] = acc;
                }
                reduced = trim(q);
                cancelled += 1;
            }
        }
        let dimension = if is_zero { None } else { Some(nvars - cancelled) };
        let degree = if is_zero { 0 } else { reduced.iter().sum() };
        HilbertData { numerator, ambient_vars: nvars, dimension, degree, reduced_numerator: reduced }
    }

    /// `dim_k (S/I)_d`.
    pub fn value(&self, d: i64) -> i64 {
        if d < 0 {
            return 0;
        }
        let n = self.ambient_vars as i64;
        self.numerator
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let k = k as i64;
                if n == 0 {
                    if k == d {
                        *a
                    } else {
                        0
                    }
                } else {
                    a * binomial(d - k + n - 1, n - 1)
                }
            })
            .sum()
    }

    /// The Hilbert polynomial evaluated at `d` (any sign).
    pub fn polynomial_value(&self, d: i64) -> i64 {
        let Some(dim) = self.dimension else {
            return 0;
        };
        if dim == 0 {
            return 0;
        }
        let dim = dim as i64;
        self.reduced_numerator
            .iter()
            .enumerate()
            .map(|(k, r)| r * binomial_poly(d - k as i64 + dim - 1, dim - 1))
            .sum()
    }
}

pub fn hilbert_series(ideal: &Ideal) -> Result<HilbertData> {
    if !ideal.is_homogeneous() {
        return Err(AlgebraError::NotHomogeneous);
    }
    let lead = ideal.lead_ideal()?;
    Ok(HilbertData::from_lead_monomials(&lead, ideal.ring().nvars()))
}

pub fn hilbert_function(ideal: &Ideal, d: i64) -> Result<u64> {
    Ok(hilbert_series(ideal)?.value(d) as u64)
}

fn min_transversal(sets: &[u64], chosen: u64, depth: usize, best: &mut usize) {
    if depth >= *best {
        return;
    }
    match sets.iter().find(|s| **s & chosen == 0) {
        None => *best = depth,
        Some(&s) => {
            let mut bits = s;
            while bits != 0 {
                let b = bits & bits.wrapping_neg();
                min_transversal(sets, chosen | b, depth + 1, best);
                bits &= !b;
            }
        }
    }
}

/// Krull dimension of `S/I` from the lead-term ideal (valid for any monomial order and
/// inhomogeneous ideals). `None` for the unit ideal.
pub fn krull_dimension(ideal: &Ideal) -> Result<Option<usize>> {
    let n = ideal.ring().nvars();
    if n > 64 {
        return Err(AlgebraError::Invalid("more than 64 variables".into()));
    }
    if ideal.gens().is_empty() {
        return Ok(Some(n));
    }
    let gb = ideal.groebner()?;
    if gb.is_unit() {
        return Ok(None);
    }
    let sets: Vec<u64> = minimalize(gb.lead_monomials())
        .iter()
        .map(|m| m.support().fold(0u64, |acc, v| acc | (1 << v)))
        .collect();
    let mut best = n;
    min_transversal(&sets, 0, 0, &mut best);
    Ok(Some(n - best))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_polynomial, parse_ring};
    use crate::ring::Ring;

    fn ideal(ring: &Ring, gens: &[&str]) -> Ideal {
        Ideal::new(ring, gens.iter().map(|g| parse_polynomial(ring, g).unwrap()).collect())
    }

    #[test]
    fn free_ring() {
        let r = parse_ring("ring Q[x,y] grevlex").unwrap();
        let h = hilbert_series(&Ideal::zero(&r)).unwrap();
        assert_eq!(h.numerator, vec![1]);
        assert_eq!(h.dimension, Some(2));
        assert_eq!(h.value(3), 4);
    }

    #[test]
    fn hypersurface_series() {
        let r = parse_ring("ring Q[x,y,z,w] grevlex").unwrap();
        let h = hilbert_series(&ideal(&r, &["x^3 + y^3 + z*w^2"])).unwrap();
        assert_eq!(h.numerator, vec![1, 0, 0, -1]);
        assert_eq!(h.dimension, Some(3));
        assert_eq!(h.degree, 3);
    }

    #[test]
    fn three_coordinate_lines() {
        let r = parse_ring("ring Q[x,y,z] grevlex").unwrap();
        let h = hilbert_series(&ideal(&r, &["x*y", "y*z", "z*x"])).unwrap();
        assert_eq!(h.numerator, vec![1, 0, -3, 2]);
        assert_eq!(h.dimension, Some(1));
        assert_eq!(h.degree, 3);
        for d in 1..6 {
            assert_eq!(h.value(d), 3);
        }
    }

    #[test]
    fn plane_cubic_function() {
        let r = parse_ring("ring F31[x,y,z] grevlex").unwrap();
        let i = ideal(&r, &["x^3 + y^3 + z^3"]);
        let vals: Vec<u64> = (0..4).map(|d| hilbert_function(&i, d).unwrap()).collect();
        assert_eq!(vals, [1, 3, 6, 9]);
        assert_eq!(hilbert_series(&i).unwrap().polynomial_value(-2), -6);
    }

    #[test]
    fn segre_quadric_function() {
        let r = parse_ring("ring Q[z00,z01,z10,z11] grevlex").unwrap();
        let i = ideal(&r, &["z00*z11 - z01*z10"]);
        for d in 0..6 {
            assert_eq!(hilbert_function(&i, d).unwrap(), ((d + 1) * (d + 1)) as u64);
        }
    }

    #[test]
    fn inhomogeneous_rejected() {
        let r = parse_ring("ring Q[x,y] grevlex").unwrap();
        assert_eq!(hilbert_series(&ideal(&r, &["x^2 + y"])), Err(AlgebraError::NotHomogeneous));
    }

    #[test]
    fn krull_dimensions() {
        let r = parse_ring("ring Q[z00,z01,z10,z11] grevlex").unwrap();
        assert_eq!(krull_dimension(&Ideal::zero(&r)).unwrap(), Some(4));
        assert_eq!(krull_dimension(&ideal(&r, &["z00*z11 - z01*z10"])).unwrap(), Some(3));
        assert_eq!(
            krull_dimension(&ideal(&r, &["z00*z11 - z01*z10", "z01", "z11"])).unwrap(),
            Some(2)
        );
        assert_eq!(krull_dimension(&ideal(&r, &["z00 - 1", "z00"])).unwrap(), None);
        let a = parse_ring("ring Q[x,y] grevlex").unwrap();
        assert_eq!(krull_dimension(&ideal(&a, &["x*y - 1"])).unwrap(), Some(1));
    }
}
