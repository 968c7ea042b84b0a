use std::time::{Duration, Instant};

use conevanish_core::{parse_polynomial, Field, Ideal, Ring};
use conevanish_verify::verifiers::{check_projective_normality, verify_example_e1, E1Options};
use conevanish_verify::{build_product_instance, build_segre, check_blowup_gorenstein, check_exceptional_fiber, GorensteinMode, Status, Verdict};

fn f31() -> Field {
    Field::prime(31).unwrap()
}

fn cubic(ring: &Ring, f: &str) -> Ideal {
    Ideal::new(ring, vec![parse_polynomial(ring, f).unwrap()])
}

#[test]
fn fermat_pair_end_to_end() {
    let ctx = build_segre(2, 2, f31()).unwrap();
    let e1 = cubic(&ctx.ring_x, "x0^3 + x1^3 + x2^3");
    let e2 = cubic(&ctx.ring_y, "y0^3 + y1^3 + y2^3");
    let start = Instant::now();
    let cert = verify_example_e1(&e1, &e2, E1Options::default()).unwrap();
    eprintln!("{}", cert.render_text());
    eprintln!("elapsed {:?}", start.elapsed());
    assert_eq!(cert.verdict(), Verdict::Pass);
    assert_eq!(cert.check("c_h1_structure_sheaf").unwrap().witness["h1"], 1);
    assert_eq!(cert.assumptions_unverified.len(), 3);
    let fiber = &cert.check("b_exceptional_fiber.fiber_equals_v").unwrap().witness;
    assert_eq!(fiber["fiber_ideal"][0], "T0^3 + T1^3 + T2^3");
    assert!(start.elapsed() < Duration::from_secs(600));
}

#[test]
fn fermat_pair_direct_gorenstein() {
    let ctx = build_segre(2, 2, f31()).unwrap();
    let e1 = cubic(&ctx.ring_x, "x0^3 + x1^3 + x2^3");
    let e2 = cubic(&ctx.ring_y, "y0^3 + y1^3 + y2^3");
    let start = Instant::now();
    let cert = verify_example_e1(&e1, &e2, E1Options { direct_gorenstein: true }).unwrap();
    eprintln!("{}", cert.render_text());
    eprintln!("elapsed {:?}", start.elapsed());
    assert_ne!(cert.verdict(), Verdict::Fail);
}

#[test]
fn cubic_normality_dims() {
    let ctx = build_segre(2, 2, f31()).unwrap();
    let e1 = cubic(&ctx.ring_x, "x0^3 + x1^3 + x2^3");
    let e2 = cubic(&ctx.ring_y, "y0^3 + y1^3 + y2^3");
    let start = Instant::now();
    let cert = check_projective_normality(&e1, &e2, 3).unwrap();
    eprintln!("elapsed {:?}", start.elapsed());
    assert_eq!(cert.verdict(), Verdict::Pass, "{}", cert.render_text());
    for (d, dim) in [(1, 9), (2, 36), (3, 81)] {
        let w = &cert.check(&format!("degree_{d}")).unwrap().witness;
        assert_eq!((w["image_dim"].as_u64(), w["target_dim"].as_u64()), (Some(dim), Some(dim)));
    }
}

#[test]
fn non_complete_intersection_is_inconclusive() {
    let ctx = build_segre(2, 2, f31()).unwrap();
    let e1 = cubic(&ctx.ring_x, "x0^3 + x1^3 + x2^3");
    let iw = Ideal::new(&ctx.ring_y, ["y0*y1", "y1*y2", "y2*y0"].iter().map(|g| parse_polynomial(&ctx.ring_y, g).unwrap()).collect());
    let inst = build_product_instance(&ctx, &e1, &iw).unwrap();
    let start = Instant::now();
    let cert = check_blowup_gorenstein(&inst, GorensteinMode::Hypothesis).unwrap();
    assert!(start.elapsed() < Duration::from_secs(1));
    assert_eq!(cert.verdict(), Verdict::Inconclusive);
    assert_eq!(cert.check("hypothesis.w_complete_intersection").unwrap().status, Status::Fail);
}

#[test]
fn fiber_of_fermat_times_cubic_is_first_factor() {
    let ctx = build_segre(2, 2, f31()).unwrap();
    let e1 = cubic(&ctx.ring_x, "x0^3 + x1^3 + x2^3");
    let e2 = cubic(&ctx.ring_y, "y0^2*y2 - y1^3 - y0*y1*y2");
    let inst = build_product_instance(&ctx, &e1, &e2).unwrap();
    let cert = check_exceptional_fiber(&inst).unwrap();
    assert_eq!(cert.verdict(), Verdict::Pass, "{}", cert.render_text());
}
