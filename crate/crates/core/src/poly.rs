//! Sparse multivariate polynomials over an exact field.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{AlgebraError, Result};
use crate::field::{Field, Scalar};
use crate::monomial::{Exponents, Monomial};
use crate::ring::{same_ring, Ring};

/// A polynomial: nonzero terms sorted strictly decreasing in the ring's monomial order.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, Scalar)>,
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Self { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &Ring, c: Scalar) -> Self {
        Self::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn from_i64(ring: &Ring, c: i64) -> Self {
        Self::constant(ring, ring.field().from_i64(c))
    }

    pub fn var(ring: &Ring, index: usize) -> Self {
        Self::term(ring, Monomial::variable(ring.nvars(), index), ring.field().one())
    }

    pub fn term(ring: &Ring, m: Monomial, c: Scalar) -> Self {
        assert_eq!(m.nvars(), ring.nvars());
        if ring.field().is_zero(&c) {
            Self::zero(ring)
        } else {
            Self { ring: ring.clone(), terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let field = ring.field();
        let order = ring.order();
        let mut terms: Vec<(Monomial, Scalar)> = terms.into_iter().collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Scalar)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = field.add(lc, &c),
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if field.is_zero(lc) {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some((_, lc)) = out.last() {
            if field.is_zero(lc) {
                out.pop();
            }
        }
        Self { ring: ring.clone(), terms: out }
    }

    /// Trusts the caller that `terms` is sorted, combined and zero-free.
    pub(crate) fn from_sorted_terms(ring: &Ring, terms: Vec<(Monomial, Scalar)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.order().cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        Self { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field()
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Scalar)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn lead(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn lead_coeff(&self) -> Option<&Scalar> {
        self.terms.first().map(|t| &t.1)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|t| t.0.degree() == m.degree()),
        }
    }

    /// Largest exponent of `var` appearing.
    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.iter().map(|t| t.0.exponent(var)).max().unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|t| t.0.exponent(var) > 0)
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms
            .iter()
            .find(|t| &t.0 == m)
            .map(|t| t.1.clone())
            .unwrap_or_else(|| self.field().zero())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let field = self.field();
        if field.is_zero(c) {
            return Self::zero(&self.ring);
        }
        Self {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), field.mul(a, c))).collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.lead_coeff() {
            None => self.clone(),
            Some(lc) if self.field().is_one(lc) => self.clone(),
            Some(lc) => {
                let inv = self.field().inv(lc).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// `c * m * self`; monomial order is compatible with multiplication, so no resort.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Self {
        let field = self.field();
        if field.is_zero(c) {
            return Self::zero(&self.ring);
        }
        Self {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), field.mul(a, c))).collect(),
        }
    }

    /// `self - c * m * g` by a single merge pass.
    pub fn sub_mul_term(&self, c: &Scalar, m: &Monomial, g: &Polynomial) -> Self {
        let field = self.field();
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut it_f = self.terms.iter().peekable();
        let mut it_g = g.terms.iter().map(|(n, a)| (n.mul(m), field.neg(&field.mul(a, c)))).peekable();
        loop {
            let ord = match (it_f.peek(), it_g.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(a), Some(b)) => order.cmp(&a.0, &b.0),
            };
            match ord {
                Ordering::Greater => out.push(it_f.next().unwrap().clone()),
                Ordering::Less => out.push(it_g.next().unwrap()),
                Ordering::Equal => {
                    let (mf, cf) = it_f.next().unwrap();
                    let (_, cg) = it_g.next().unwrap();
                    let s = field.add(cf, &cg);
                    if !field.is_zero(&s) {
                        out.push((mf.clone(), s));
                    }
                }
            }
        }
        Self { ring: self.ring.clone(), terms: out }
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Self {
        assert!(same_ring(&self.ring, &other.ring), "ring mismatch in polynomial arithmetic");
        let field = self.field();
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Less
            } else if j == b.len() {
                Ordering::Greater
            } else {
                order.cmp(&a[i].0, &b[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate_other { field.neg(&b[j].1) } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = if negate_other {
                        field.sub(&a[i].1, &b[j].1)
                    } else {
                        field.add(&a[i].1, &b[j].1)
                    };
                    if !field.is_zero(&s) {
                        out.push((a[i].0.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Self { ring: self.ring.clone(), terms: out }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative.
    pub fn derivative(&self, var: usize) -> Self {
        let field = self.field();
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponent(var);
            if e == 0 {
                return None;
            }
            let mut exps: Exponents = m.exponents().into();
            exps[var] -= 1;
            Some((Monomial::new(exps), field.mul(c, &field.from_i64(i64::from(e)))))
        });
        Self::from_terms(&self.ring, terms.collect::<Vec<_>>())
    }

    /// Exact division by `d`; `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Polynomial) -> Option<Self> {
        let (dm, dc) = d.lead()?;
        let field = self.field();
        let inv = field.inv(dc)?;
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.lead().cloned() {
            if !dm.divides(&m) {
                return None;
            }
            let qm = dm.quotient_of(&m);
            let qc = field.mul(&c, &inv);
            rem = rem.sub_mul_term(&qc, &qm, d);
            quot.push((qm, qc));
        }
        Some(Self::from_sorted_terms(&self.ring, quot))
    }

    /// Re-expresses the polynomial in `target`, sending variable `i` to `var_map[i]`.
    pub fn transfer(&self, target: &Ring, var_map: &[usize]) -> Self {
        assert_eq!(var_map.len(), self.ring.nvars());
        assert_eq!(target.field(), self.field(), "field mismatch in transfer");
        let n = target.nvars();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut exps: Exponents = smallvec::smallvec![0; n];
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    exps[var_map[i]] += e;
                }
            }
            (Monomial::new(exps), c.clone())
        });
        Self::from_terms(target, terms.collect::<Vec<_>>())
    }

    /// Transfers by variable name, coercing coefficients into the target field; every
    /// variable occurring in `self` must exist in `target`.
    pub fn transfer_by_name(&self, target: &Ring) -> Result<Self> {
        let mut map = Vec::with_capacity(self.ring.nvars());
        for (i, v) in self.ring.vars().iter().enumerate() {
            match target.var_index(v) {
                Some(j) => map.push(j),
                None if !self.involves(i) => map.push(usize::MAX),
                None => {
                    return Err(AlgebraError::RingMismatch(format!("{self} does not live in {target}")))
                }
            }
        }
        let n = target.nvars();
        let tf = target.field();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps: Exponents = smallvec::smallvec![0; n];
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    exps[map[i]] += e;
                }
            }
            terms.push((Monomial::new(exps), tf.coerce(c)?));
        }
        Ok(Self::from_terms(target, terms))
    }

    /// Same polynomial re-sorted for a ring with identical variables but another order.
    pub fn reorder(&self, target: &Ring) -> Self {
        assert_eq!(target.vars(), self.ring.vars());
        Self::from_terms(target, self.terms.clone())
    }

    /// Homogeneous component of degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Self {
            ring: self.ring.clone(),
            terms: self.terms.iter().filter(|t| t.0.degree() == d).cloned().collect(),
        }
    }

    fn fmt_monomial(&self, m: &Monomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", self.ring.vars()[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Hash for Polynomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

/// Canonical print: terms in decreasing order, `+`/`-` separated, coefficient 1 omitted.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.field();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = field.is_negative(c);
            let abs = if negative { field.neg(c) } else { c.clone() };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{}", field.format(&abs))?;
            } else {
                if !field.is_one(&abs) {
                    write!(f, "{}*", field.format(&abs))?;
                }
                self.fmt_monomial(m, f)?;
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, true)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let field = self.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), field.neg(c))).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert!(same_ring(&self.ring, &rhs.ring), "ring mismatch in polynomial arithmetic");
        let (small, large) = if self.len() <= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut acc = Polynomial::zero(&self.ring);
        let field = self.field();
        for (m, c) in &small.terms {
            acc = acc.sub_mul_term(&field.neg(c), m, large);
        }
        acc
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
