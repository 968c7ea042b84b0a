use std::collections::HashMap;

use crate::error::{AlgebraError, Result};
use crate::poly::Polynomial;
use crate::ring::{check_same_ring, Ring};

/// The field-algebra homomorphism `source -> target` determined by one image per
/// source variable.
#[derive(Clone, Debug, PartialEq)]
pub struct RingMap {
    source: Ring,
    target: Ring,
    images: Vec<Polynomial>,
}

impl RingMap {
    pub fn new(source: &Ring, target: &Ring, images: Vec<Polynomial>) -> Result<Self> {
        if source.field() != target.field() {
            return Err(AlgebraError::RingMismatch(format!(
                "map between different fields {} and {}",
                source.field(),
                target.field()
            )));
        }
        if images.len() != source.nvars() {
            return Err(AlgebraError::Invalid(format!(
                "map needs {} images, got {}",
                source.nvars(),
                images.len()
            )));
        }
        for img in &images {
            check_same_ring(img.ring(), target)?;
        }
        Ok(Self { source: source.clone(), target: target.clone(), images })
    }

    pub fn identity(ring: &Ring) -> Self {
        let images = (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect();
        Self { source: ring.clone(), target: ring.clone(), images }
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    /// True if every image is a single variable with coefficient one.
    pub fn is_variable_map(&self) -> bool {
        self.images.iter().all(|p| {
            p.len() == 1 && p.terms()[0].0.degree() == 1 && p.field().is_one(&p.terms()[0].1)
        })
    }

    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        check_same_ring(f.ring(), &self.source)?;
        let field = self.target.field();
        // cache of powers per (variable, exponent)
        let mut powers: HashMap<(usize, u16), Polynomial> = HashMap::new();
        let mut terms = Vec::new();
        for (m, c) in f.terms() {
            let mut acc = Polynomial::constant(&self.target, c.clone());
            for (v, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = powers
                    .entry((v, e))
                    .or_insert_with(|| self.images[v].pow(u32::from(e)))
                    .clone();
                acc = &acc * &p;
                if acc.is_zero() {
                    break;
                }
            }
            terms.extend(acc.into_terms());
        }
        let out = Polynomial::from_terms(&self.target, terms);
        debug_assert!(out.field() == field);
        Ok(out)
    }

    /// Composition `other ∘ self`.
    pub fn then(&self, other: &RingMap) -> Result<RingMap> {
        check_same_ring(&self.target, &other.source)?;
        let images = self.images.iter().map(|g| other.apply(g)).collect::<Result<Vec<_>>>()?;
        RingMap::new(&self.source, &other.target, images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_polynomial, parse_ring};

    #[test]
    fn fermat_column_substitution() {
        let x = parse_ring("ring Q[x0,x1,x2] grevlex").unwrap();
        let z = parse_ring("ring Q[z00,z01,z02,z10,z11,z12,z20,z21,z22] grevlex").unwrap();
        let images = ["z02", "z12", "z22"]
            .iter()
            .map(|s| parse_polynomial(&z, s).unwrap())
            .collect();
        let m = RingMap::new(&x, &z, images).unwrap();
        let g = parse_polynomial(&x, "x0^3 + x1^3 + x2^3").unwrap();
        let g2 = m.apply(&g).unwrap();
        assert_eq!(g2, parse_polynomial(&z, "z02^3 + z12^3 + z22^3").unwrap());
        assert!(g2.is_homogeneous());
        assert!(m.is_variable_map());
    }

    #[test]
    fn identity_and_swap() {
        let r = parse_ring("ring Q[x,y] grevlex").unwrap();
        let f = parse_polynomial(&r, "x^2*y - 3*x + 7").unwrap();
        assert_eq!(RingMap::identity(&r).apply(&f).unwrap(), f);
        let swap = RingMap::new(
            &r,
            &r,
            vec![parse_polynomial(&r, "y").unwrap(), parse_polynomial(&r, "x").unwrap()],
        )
        .unwrap();
        let g = parse_polynomial(&r, "x^2*y").unwrap();
        assert_eq!(swap.apply(&g).unwrap(), parse_polynomial(&r, "y^2*x").unwrap());
    }

    #[test]
    fn ring_mismatch() {
        let r = parse_ring("ring Q[x,y] grevlex").unwrap();
        let s = parse_ring("ring Q[u] grevlex").unwrap();
        let m = RingMap::identity(&r);
        let f = parse_polynomial(&s, "u").unwrap();
        assert!(matches!(m.apply(&f), Err(AlgebraError::RingMismatch(_))));
        let p = parse_ring("ring F5[u] grevlex").unwrap();
        assert!(RingMap::new(&s, &p, vec![parse_polynomial(&p, "u").unwrap()]).is_err());
    }
}
