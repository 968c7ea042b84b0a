//! Exponent vectors and monomial orders.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

pub type Exponents = SmallVec<[u16; 16]>;

/// A monomial `x^a` stored as its exponent vector together with its total degree.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Exponents,
    degree: u32,
    // bit i set iff some variable v with v % 64 == i occurs
    support: u64,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Self {
            exps: SmallVec::from_elem(0, nvars),
            degree: 0,
            support: 0,
        }
    }

    pub fn new(exps: impl Into<Exponents>) -> Self {
        let exps = exps.into();
        let mut degree = 0u32;
        let mut support = 0u64;
        for (i, &e) in exps.iter().enumerate() {
            degree += u32::from(e);
            if e > 0 {
                support |= 1 << (i % 64);
            }
        }
        Self { exps, degree, support }
    }

    pub fn from_slice(exps: &[u16]) -> Self {
        Self::new(Exponents::from_slice(exps))
    }

    pub fn variable(nvars: usize, var: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[var] = 1;
        m.degree = 1;
        m.support = 1 << (var % 64);
        m
    }

    #[inline]
    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps: Exponents = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
            .collect();
        Monomial {
            exps,
            degree: self.degree + other.degree,
            support: self.support | other.support,
        }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        if self.degree > other.degree || self.support & !other.support != 0 {
            return false;
        }
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial::new(
            other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(a, b)| a - b)
                .collect::<Exponents>(),
        )
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect::<Exponents>(),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.min(b))
                .collect::<Exponents>(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        if self.support & other.support == 0 {
            return true;
        }
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn exponent(&self, var: usize) -> u16 {
        self.exps[var]
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i)
    }
}

/// Monomial orders. `Block(k)` compares the first `k` exponents by grevlex and
/// breaks ties by grevlex on the remaining ones; it eliminates the first `k` variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Grevlex,
    Lex,
    Block(usize),
}

#[inline]
fn grevlex(a: &[u16], b: &[u16], da: u32, db: u32) -> Ordering {
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            // the smaller trailing exponent wins
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

fn partial_degree(e: &[u16]) -> u32 {
    e.iter().map(|&x| u32::from(x)).sum()
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => grevlex(&a.exps, &b.exps, a.degree, b.degree),
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::Block(k) => {
                let k = k.min(a.exps.len());
                let (a1, a2) = a.exps.split_at(k);
                let (b1, b2) = b.exps.split_at(k);
                let (da1, db1) = (partial_degree(a1), partial_degree(b1));
                grevlex(a1, b1, da1, db1)
                    .then_with(|| grevlex(a2, b2, a.degree - da1, b.degree - db1))
            }
        }
    }

    pub fn is_degree_compatible(&self) -> bool {
        matches!(self, MonomialOrder::Grevlex)
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Grevlex => write!(f, "grevlex"),
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::Block(k) => write!(f, "block({k})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono(e: &[u16]) -> Monomial {
        Monomial::from_slice(e)
    }

    #[test]
    fn grevlex_small_cases() {
        let o = MonomialOrder::Grevlex;
        // x > y > z; x*z < y^2 under grevlex
        assert_eq!(o.cmp(&mono(&[1, 0, 1]), &mono(&[0, 2, 0])), Ordering::Less);
        assert_eq!(o.cmp(&mono(&[2, 0, 0]), &mono(&[1, 1, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&mono(&[0, 0, 3]), &mono(&[1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn block_eliminates_first_variables() {
        let o = MonomialOrder::Block(1);
        // t > anything without t
        assert_eq!(o.cmp(&mono(&[1, 0, 0]), &mono(&[0, 5, 5])), Ordering::Greater);
        assert_eq!(o.cmp(&mono(&[0, 2, 0]), &mono(&[0, 1, 1])), Ordering::Greater);
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = mono(&[1, 2, 0]);
        let b = mono(&[2, 2, 1]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(a.quotient_of(&b), mono(&[1, 0, 1]));
        assert_eq!(a.lcm(&mono(&[0, 3, 1])), mono(&[1, 3, 1]));
        assert!(mono(&[1, 0, 0]).is_coprime(&mono(&[0, 4, 1])));
    }

    fn orders() -> impl Strategy<Value = MonomialOrder> {
        prop_oneof![
            Just(MonomialOrder::Grevlex),
            Just(MonomialOrder::Lex),
            (0usize..5).prop_map(MonomialOrder::Block),
        ]
    }

    proptest! {
        #[test]
        fn order_axioms(
            order in orders(),
            a in proptest::collection::vec(0u16..5, 4),
            b in proptest::collection::vec(0u16..5, 4),
            c in proptest::collection::vec(0u16..5, 4),
        ) {
            let (a, b, c) = (mono(&a), mono(&b), mono(&c));
            let one = Monomial::one(4);
            // totality: Equal only for identical exponents
            prop_assert_eq!(order.cmp(&a, &b) == Ordering::Equal, a == b);
            prop_assert_eq!(order.cmp(&a, &b), order.cmp(&b, &a).reverse());
            prop_assert_ne!(order.cmp(&one, &a), Ordering::Greater);
            // multiplicativity
            prop_assert_eq!(order.cmp(&a, &b), order.cmp(&a.mul(&c), &b.mul(&c)));
        }
    }
}
