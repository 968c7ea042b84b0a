use conevanish_core::{
    hilbert_function, kernel_of_map, krull_dimension, parse_polynomial, Field, Ideal, Polynomial,
    PolyRing, MonomialOrder, Ring,
};
use conevanish_verify::rees::{blowup_chart, fiber_cone, rees_presentation};
use conevanish_verify::segre::{build_product_instance, build_segre, positional_ideal, ProductConeInstance};

fn ideal(ring: &Ring, gens: &[&str]) -> Ideal {
    Ideal::new(ring, gens.iter().map(|g| parse_polynomial(ring, g).unwrap()).collect())
}

fn instances() -> Vec<(ProductConeInstance, i64, i64)> {
    let f = Field::prime(31).unwrap();
    let mut out = Vec::new();
    let c11 = build_segre(1, 1, f).unwrap();
    out.push((build_product_instance(&c11, &Ideal::zero(&c11.ring_x), &Ideal::zero(&c11.ring_y)).unwrap(), 1, 1));
    let c21 = build_segre(2, 1, f).unwrap();
    out.push((build_product_instance(&c21, &ideal(&c21.ring_x, &["x0*x2 - x1^2"]), &Ideal::zero(&c21.ring_y)).unwrap(), 1, 1));
    out.push((build_product_instance(&c21, &ideal(&c21.ring_x, &["x0^3 + x1^3 + x2^3"]), &Ideal::zero(&c21.ring_y)).unwrap(), 1, 1));
    let c22 = build_segre(2, 2, f).unwrap();
    out.push((build_product_instance(&c22, &ideal(&c22.ring_x, &["x0^3 + x1^3 + x2^3"]), &ideal(&c22.ring_y, &["y0^3 + y1^3 + y2^3"])).unwrap(), 1, 1));
    out.push((build_product_instance(&c22, &Ideal::zero(&c22.ring_x), &ideal(&c22.ring_y, &["y0*y1 - y2^2"])).unwrap(), 2, 1));
    out
}

#[test]
fn segre_kernels_small_cases() {
    for n in 0..=2 {
        for m in 0..=2 {
            let ctx = build_segre(n, m, Field::Rationals).unwrap();
            assert_eq!(ctx.ring_z.nvars(), (n + 1) * (m + 1));
            let k = kernel_of_map(&ctx.map_z_to_xy).unwrap();
            assert!(k.equals(&ctx.segre_ideal).unwrap(), "n={n} m={m}");
        }
    }
}

#[test]
fn divisor_dimensions() {
    for (inst, dv, dw) in instances() {
        assert_eq!(inst.iz.gens().len(), inst.ctx.n + 1);
        let dy = krull_dimension(&inst.iy).unwrap().unwrap() as i64;
        assert_eq!(dy, dv + dw + 1);
        let dz = krull_dimension(&inst.iy.sum(&inst.iz).unwrap()).unwrap().unwrap() as i64;
        assert_eq!(dz, dy - 1);
        assert!(inst.m_v.contains(&inst.iz).unwrap());
    }
}

#[test]
fn fiber_cone_recovers_first_factor() {
    for (inst, _, _) in instances() {
        let rees = rees_presentation(&inst.iy, &inst.iz).unwrap();
        let fiber = fiber_cone(&rees).unwrap();
        let renamed = positional_ideal(&fiber, &inst.ctx.ring_x).unwrap();
        assert!(renamed.equals(&inst.iv).unwrap(), "{:?}", fiber.gens());
    }
}

#[test]
fn rees_generators_vanish_under_tautological_map() {
    for (inst, _, _) in instances().into_iter().take(3) {
        let rees = rees_presentation(&inst.iy, &inst.iz).unwrap();
        let (taut, ring_t) = rees.tautological_map().unwrap();
        let base_t = inst.iy.transfer_by_name(&ring_t).unwrap();
        for g in rees.rees_ideal.gens() {
            assert!(base_t.contains_poly(&taut.apply(g).unwrap()).unwrap());
        }
        assert!(rees.rees_ideal.gens().iter().all(|g| g.is_homogeneous()));
    }
}

/// `dim I^d / I^d 𝔪` in `S/IY` against the fiber ring in degree `d`.
#[test]
fn fiber_cone_agrees_degreewise() {
    for (inst, _, _) in instances().into_iter().take(4) {
        let rees = rees_presentation(&inst.iy, &inst.iz).unwrap();
        let fiber = fiber_cone(&rees).unwrap();
        for d in 1..=3u32 {
            let power = inst.iy.sum(&inst.iz.power(d)).unwrap();
            let direct = hilbert_function(&inst.iy, d as i64).unwrap() - hilbert_function(&power, d as i64).unwrap();
            assert_eq!(direct, hilbert_function(&fiber, d as i64).unwrap());
        }
    }
}

/// Chart 0 with `T1` inverted equals chart 1 with `T0` inverted under `T1 = 1/T0`.
#[test]
fn conifold_charts_glue() {
    let ctx = build_segre(1, 1, Field::Rationals).unwrap();
    let inst = build_product_instance(&ctx, &Ideal::zero(&ctx.ring_x), &Ideal::zero(&ctx.ring_y)).unwrap();
    let rees = rees_presentation(&inst.iy, &inst.iz).unwrap();
    let c0 = blowup_chart(&rees, 0).unwrap();
    let c1 = blowup_chart(&rees, 1).unwrap();
    let joint = PolyRing::with_vars(
        Field::Rationals,
        &["z00", "z01", "z10", "z11", "T0", "T1"],
        MonomialOrder::Grevlex,
    )
    .unwrap();
    let unit = parse_polynomial(&joint, "T0*T1 - 1").unwrap();
    let lift = |c: &Ideal| {
        let mut gens: Vec<Polynomial> = c.gens().iter().map(|g| g.transfer_by_name(&joint).unwrap()).collect();
        gens.push(unit.clone());
        Ideal::new(&joint, gens)
    };
    assert!(lift(&c0).equals(&lift(&c1)).unwrap());
}
