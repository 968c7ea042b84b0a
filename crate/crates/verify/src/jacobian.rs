//! Jacobian criterion: singular loci from minors of the Jacobian matrix.

use conevanish_core::{krull_dimension, AlgebraError, Ideal, Polynomial, Result};

/// Default cap on the number of minors formed.
pub const DEFAULT_MAX_MINORS: usize = 50_000;

/// `∂g_r / ∂x_c` for every generator `g_r`.
pub fn jacobian_matrix(gens: &[Polynomial]) -> Vec<Vec<Polynomial>> {
    gens.iter()
        .map(|g| (0..g.ring().nvars()).map(|v| g.derivative(v)).collect())
        .collect()
}

/// Fraction-free (Bareiss) determinant of a square polynomial matrix.
pub fn determinant(mut a: Vec<Vec<Polynomial>>) -> Polynomial {
    let n = a.len();
    if n == 0 {
        panic!("determinant of an empty matrix needs a ring");
    }
    let ring = a[0][0].ring().clone();
    let mut sign = false;
    let mut prev = Polynomial::one(&ring);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = !sign;
                }
                None => return Polynomial::zero(&ring),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -&d
    } else {
        d
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        let Some(pos) = (0..k).rev().find(|&p| idx[p] < n - k + p) else {
            return out;
        };
        idx[pos] += 1;
        for q in pos + 1..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// `I + (c × c minors of the Jacobian of the generators of I)`.
pub fn jacobian_singular_locus(ideal: &Ideal, c: usize) -> Result<Ideal> {
    jacobian_singular_locus_with(ideal, c, DEFAULT_MAX_MINORS)
}

pub fn jacobian_singular_locus_with(ideal: &Ideal, c: usize, max_minors: usize) -> Result<Ideal> {
    let ring = ideal.ring();
    let gens = ideal.gens();
    let mut out = gens.to_vec();
    if c == 0 {
        out.push(Polynomial::one(ring));
        return Ok(Ideal::new(ring, out));
    }
    let count = binomial(gens.len(), c).saturating_mul(binomial(ring.nvars(), c));
    if count > max_minors {
        return Err(AlgebraError::BudgetExceeded(format!("{count} Jacobian minors of size {c}")));
    }
    let jac = jacobian_matrix(gens);
    for rows in combinations(gens.len(), c) {
        for cols in combinations(ring.nvars(), c) {
            let sub = rows.iter().map(|&r| cols.iter().map(|&k| jac[r][k].clone()).collect()).collect();
            let d = determinant(sub);
            if !d.is_zero() {
                out.push(d);
            }
        }
    }
    Ok(Ideal::new(ring, out))
}

/// Codimension `nvars - dim` of `V(I)`; `None` for the unit ideal.
pub fn codimension(ideal: &Ideal) -> Result<Option<usize>> {
    Ok(krull_dimension(ideal)?.map(|d| ideal.ring().nvars() - d))
}

/// True iff every generator vanishes at the origin.
pub fn contains_origin(ideal: &Ideal) -> bool {
    ideal.gens().iter().all(|g| g.terms().iter().all(|(m, _)| !m.is_one()))
}

/// Smoothness of `Proj S/I` via the Jacobian criterion at the expected codimension.
pub fn is_projectively_smooth(ideal: &Ideal) -> Result<bool> {
    let c = codimension(ideal)?.ok_or(AlgebraError::UnitIdeal)?;
    let sing = jacobian_singular_locus(ideal, c)?;
    Ok(krull_dimension(&sing)?.is_none_or(|d| d == 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use conevanish_core::{parse_polynomial, parse_ring, Ring};

    fn ideal(ring: &Ring, gens: &[&str]) -> Ideal {
        Ideal::new(ring, gens.iter().map(|g| parse_polynomial(ring, g).unwrap()).collect())
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let r = parse_ring("ring Q[a,b,c,d,e,f,g,h,i] grevlex").unwrap();
        let v = |k: usize| Polynomial::var(&r, k);
        let m = vec![vec![v(0), v(1), v(2)], vec![v(3), v(4), v(5)], vec![v(6), v(7), v(8)]];
        let expect = parse_polynomial(&r, "a*e*i - a*f*h - b*d*i + b*f*g + c*d*h - c*e*g").unwrap();
        assert_eq!(determinant(m), expect);
        let z = Polynomial::zero(&r);
        let swapped = vec![vec![z.clone(), v(1)], vec![v(3), v(4)]];
        assert_eq!(determinant(swapped), parse_polynomial(&r, "-b*d").unwrap());
    }

    #[test]
    fn quadric_cone_singular_at_vertex() {
        let r = parse_ring("ring Q[x,y,z,w] grevlex").unwrap();
        let i = ideal(&r, &["x^2 + y^2 + z^2 + w^2"]);
        let sing = jacobian_singular_locus(&i, 1).unwrap();
        assert!(sing.equals(&ideal(&r, &["x", "y", "z", "w"])).unwrap());
        assert!(is_projectively_smooth(&i).unwrap());
    }

    #[test]
    fn smooth_conic() {
        let r = parse_ring("ring Q[x0,x1,x2] grevlex").unwrap();
        let sing = jacobian_singular_locus(&ideal(&r, &["x0*x2 - x1^2"]), 1).unwrap();
        assert_eq!(krull_dimension(&sing).unwrap(), Some(0));
    }

    #[test]
    fn node() {
        let r = parse_ring("ring Q[x,y] grevlex").unwrap();
        let sing = jacobian_singular_locus(&ideal(&r, &["x*y"]), 1).unwrap();
        assert!(sing.contains(&ideal(&r, &["x", "y"])).unwrap());
        assert!(contains_origin(&sing));
    }

    #[test]
    fn nodal_cubic_is_singular() {
        let r = parse_ring("ring F31[x,y,z] grevlex").unwrap();
        assert!(!is_projectively_smooth(&ideal(&r, &["y^2*z - x^3 - x^2*z"])).unwrap());
        assert!(is_projectively_smooth(&ideal(&r, &["x^3 + y^3 + z^3"])).unwrap());
    }
}
