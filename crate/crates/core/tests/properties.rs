use conevanish_core::resolution::{free_resolution, MonomialCache};
use conevanish_core::{
    hilbert_series, parse_polynomial, parse_ring, Field, Ideal, Monomial, Polynomial,
    ProjectiveScheme, Ring,
};
use proptest::prelude::*;

fn ring3() -> Ring {
    parse_ring("ring F31[x,y,z] grevlex").unwrap()
}

fn ideal(ring: &Ring, gens: &[&str]) -> Ideal {
    Ideal::new(ring, gens.iter().map(|g| parse_polynomial(ring, g).unwrap()).collect())
}

/// Random homogeneous polynomial: (degree, [(coefficient, exponents)]).
type PolySpec = (u16, Vec<(i64, [u16; 2])>);

fn arb_poly() -> impl Strategy<Value = PolySpec> {
    (1u16..=3).prop_flat_map(|deg| {
        (Just(deg), prop::collection::vec((-5i64..=5, [0..=deg, 0..=deg]), 1..=3))
    })
}

fn build(ring: &Ring, spec: &PolySpec) -> Polynomial {
    let f = ring.field();
    let (deg, terms) = spec;
    let terms: Vec<_> = terms
        .iter()
        .map(|(c, [a, b])| {
            let a = (*a).min(*deg);
            let b = (*b).min(deg - a);
            (Monomial::from_slice(&[a, b, deg - a - b]), f.from_i64(*c))
        })
        .collect();
    Polynomial::from_terms(ring, terms)
}

fn arb_ideal() -> impl Strategy<Value = Vec<PolySpec>> {
    prop::collection::vec(arb_poly(), 1..=3)
}

/// Independent count of standard monomials of degree `d`.
fn count_standard(lead: &[Monomial], d: u32) -> u64 {
    conevanish_core::resolution::monomials_of_degree(3, d)
        .iter()
        .filter(|m| !lead.iter().any(|l| l.divides(m)))
        .count() as u64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn groebner_idempotent_and_permutation_invariant(spec in arb_ideal(), rot in 0usize..3) {
        let r = ring3();
        let gens: Vec<Polynomial> = spec.iter().map(|s| build(&r, s)).collect();
        let gb = Ideal::new(&r, gens.clone()).groebner_basis().unwrap();
        let again = Ideal::new(&r, gb.clone()).groebner_basis().unwrap();
        prop_assert_eq!(&gb, &again);
        let mut permuted = gens;
        let k = rot % permuted.len();
        permuted.rotate_left(k);
        permuted.reverse();
        prop_assert_eq!(&gb, &Ideal::new(&r, permuted).groebner_basis().unwrap());
    }

    #[test]
    fn series_matches_function(spec in arb_ideal()) {
        let r = ring3();
        let i = Ideal::new(&r, spec.iter().map(|s| build(&r, s)).collect());
        let h = hilbert_series(&i).unwrap();
        let lead = i.lead_ideal().unwrap();
        for d in 0..=10 {
            prop_assert_eq!(h.value(d) as u64, count_standard(&lead, d as u32));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn resolution_is_exact_degreewise(spec in arb_ideal()) {
        let r = ring3();
        let i = Ideal::new(&r, spec.iter().map(|s| build(&r, s)).collect());
        prop_assume!(!i.is_unit().unwrap());
        let res = free_resolution(&i).unwrap();
        prop_assert!(res.is_complex());
        prop_assert!(res.length() <= 3);
        let betti = res.betti();
        let mut num = betti.alternating_numerator();
        let mut expect = hilbert_series(&i).unwrap().numerator;
        let len = num.len().max(expect.len());
        num.resize(len, 0);
        expect.resize(len, 0);
        prop_assert_eq!(num, expect);
        // dim (F_k)_d = rank of outgoing map + rank of incoming map, except HF at k = 0
        let mut cache = MonomialCache::default();
        let h = hilbert_series(&i).unwrap();
        for d in 0..=6i64 {
            let mut ranks = Vec::new();
            for m in &res.maps {
                ranks.push(m.degree_matrix(&r, d, &mut cache, usize::MAX).unwrap().0.rank() as i64);
            }
            for (k, degs) in res.degrees.iter().enumerate() {
                let dim = conevanish_core::resolution::DegreePiece::new(3, degs, d, &mut cache).dim() as i64;
                let incoming = ranks.get(k).copied().unwrap_or(0);
                let outgoing = if k == 0 { h.value(d) } else { ranks[k - 1] };
                prop_assert_eq!(dim, incoming + outgoing);
            }
        }
    }
}

#[test]
fn euler_characteristic_is_hilbert_polynomial() {
    let p3 = parse_ring("ring F31[a,b,c,d] grevlex").unwrap();
    let segre = parse_ring("ring F31[z00,z01,z10,z11] grevlex").unwrap();
    let cases = vec![
        ideal(&ring3(), &["x^3 + y^3 + z^3"]),
        ideal(&ring3(), &["x*y - z^2"]),
        ideal(&ring3(), &["x*y", "y*z", "z*x"]),
        Ideal::zero(&ring3()),
        ideal(&segre, &["z00*z11 - z01*z10"]),
        ideal(&p3, &["a*c - b^2", "a*d - b*c", "b*d - c^2"]),
    ];
    for i in cases {
        let x = ProjectiveScheme::new(&i, false).unwrap();
        for d in -5..=6 {
            assert_eq!(x.euler_characteristic(d).unwrap(), x.hilbert_polynomial(d), "{:?} d={d}", i.gens());
        }
    }
}

#[test]
fn serre_duality_on_plane_cubic() {
    let e = ProjectiveScheme::new(&ideal(&ring3(), &["x^3 + y^3 + z^3"]), false).unwrap();
    for d in -3..=3 {
        assert_eq!(e.h(1, d).unwrap(), e.h(0, -d).unwrap());
    }
}

#[test]
fn rational_field_agrees_with_prime_field() {
    let q = parse_ring("ring Q[x,y,z] grevlex").unwrap();
    let i = ideal(&q, &["x^2 - y*z", "x*y - z^2"]);
    let j = i.transfer_by_name(&q.with_field(Field::prime(31).unwrap())).unwrap();
    assert_eq!(hilbert_series(&i).unwrap(), hilbert_series(&j).unwrap());
}
