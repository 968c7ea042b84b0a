//! Segre coordinates, product-variety ideals and the cone data built on them.

use conevanish_core::{
    kernel_of_map, kernel_of_map_mod, AlgebraError, Field, Ideal, MonomialOrder, PolyRing, Polynomial, Result, Ring,
    RingMap,
};

/// Coordinates `z_ij = x_i y_j` on the Segre embedding of `P^n × P^m`.
#[derive(Clone, Debug)]
pub struct SegreContext {
    pub n: usize,
    pub m: usize,
    pub ring_x: Ring,
    pub ring_y: Ring,
    pub ring_xy: Ring,
    pub ring_z: Ring,
    pub segre_ideal: Ideal,
    pub map_z_to_xy: RingMap,
}

/// Canonical name of the Segre coordinate in row `i`, column `j`.
pub fn z_name(n: usize, m: usize, i: usize, j: usize) -> String {
    if n < 10 && m < 10 {
        format!("z{i}{j}")
    } else {
        format!("z{i}_{j}")
    }
}

fn names(prefix: &str, count: usize) -> Vec<String> {
    (0..count).map(|i| format!("{prefix}{i}")).collect()
}

impl SegreContext {
    pub fn field(&self) -> Field {
        self.ring_z.field()
    }

    /// Index of `z_ij` in `ring_z` (row-major).
    pub fn z(&self, i: usize, j: usize) -> usize {
        i * (self.m + 1) + j
    }

    pub fn z_var(&self, i: usize, j: usize) -> Polynomial {
        Polynomial::var(&self.ring_z, self.z(i, j))
    }

    /// Indices of the last column `z_{0m}, ..., z_{nm}`.
    pub fn last_column(&self) -> Vec<usize> {
        (0..=self.n).map(|i| self.z(i, self.m)).collect()
    }
}

pub fn build_segre(n: usize, m: usize, field: Field) -> Result<SegreContext> {
    let order = MonomialOrder::Grevlex;
    let xs = names("x", n + 1);
    let ys = names("y", m + 1);
    let ring_x = PolyRing::new(field, xs.clone(), order)?;
    let ring_y = PolyRing::new(field, ys.clone(), order)?;
    let ring_xy = PolyRing::new(field, xs.into_iter().chain(ys).collect(), order)?;
    let zs = (0..=n).flat_map(|i| (0..=m).map(move |j| z_name(n, m, i, j))).collect();
    let ring_z = PolyRing::new(field, zs, order)?;
    let z = |i: usize, j: usize| Polynomial::var(&ring_z, i * (m + 1) + j);
    let mut minors = Vec::new();
    for a in 0..=n {
        for b in a + 1..=n {
            for c in 0..=m {
                for d in c + 1..=m {
                    minors.push(&(&z(a, c) * &z(b, d)) - &(&z(a, d) * &z(b, c)));
                }
            }
        }
    }
    let images = (0..=n)
        .flat_map(|i| (0..=m).map(move |j| (i, j)))
        .map(|(i, j)| &Polynomial::var(&ring_xy, i) * &Polynomial::var(&ring_xy, n + 1 + j))
        .collect();
    let map_z_to_xy = RingMap::new(&ring_z, &ring_xy, images)?;
    let segre_ideal = Ideal::new(&ring_z, minors);
    Ok(SegreContext { n, m, ring_x, ring_y, ring_xy, ring_z, segre_ideal, map_z_to_xy })
}

/// Cone data for `Y = C(V × W)`, `Z = C(V × H)` with `H = (y_m = 0)`, and the vertex.
#[derive(Clone, Debug)]
pub struct ProductConeInstance {
    pub ctx: SegreContext,
    pub iv: Ideal,
    pub iw: Ideal,
    /// Ideal of `Y`.
    pub iy: Ideal,
    /// The generator-level description of `IY` (equal to it after saturation).
    pub substitution: Ideal,
    pub iz: Ideal,
    pub m_v: Ideal,
}

/// Copies `p` into `target` sending the `i`-th variable to the `i`-th variable.
pub fn positional_copy(p: &Polynomial, target: &Ring) -> Result<Polynomial> {
    if p.ring().nvars() != target.nvars() {
        return Err(AlgebraError::RingMismatch(format!(
            "expected {} variables, found {}",
            target.nvars(),
            p.ring().nvars()
        )));
    }
    let f = target.field();
    let terms = p
        .terms()
        .iter()
        .map(|(m, c)| Ok((m.clone(), f.coerce(c)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Polynomial::from_terms(target, terms))
}

pub fn positional_ideal(i: &Ideal, target: &Ring) -> Result<Ideal> {
    let gens = i.gens().iter().map(|g| positional_copy(g, target)).collect::<Result<Vec<_>>>()?;
    Ok(Ideal::new(target, gens))
}

/// `minors + (g_γ) + (h_α)`: each generator of `IV` copied into every column, each
/// generator of `IW` into every row. Agrees with [`product_ideal`] up to saturation.
pub fn substitution_ideal(ctx: &SegreContext, iv: &Ideal, iw: &Ideal) -> Result<Ideal> {
    let iv = positional_ideal(iv, &ctx.ring_x)?;
    let iw = positional_ideal(iw, &ctx.ring_y)?;
    let mut gens = ctx.segre_ideal.gens().to_vec();
    for gamma in 0..=ctx.m {
        let images = (0..=ctx.n).map(|a| ctx.z_var(a, gamma)).collect();
        let sub = RingMap::new(&ctx.ring_x, &ctx.ring_z, images)?;
        for g in iv.gens() {
            gens.push(sub.apply(g)?);
        }
    }
    for alpha in 0..=ctx.n {
        let images = (0..=ctx.m).map(|c| ctx.z_var(alpha, c)).collect();
        let sub = RingMap::new(&ctx.ring_y, &ctx.ring_z, images)?;
        for h in iw.gens() {
            gens.push(sub.apply(h)?);
        }
    }
    Ok(Ideal::new(&ctx.ring_z, gens))
}

/// Ideal of the affine cone over `V × W`: the kernel of `k[z] → k[x, y] / (IV + IW)`.
pub fn product_ideal(ctx: &SegreContext, iv: &Ideal, iw: &Ideal) -> Result<Ideal> {
    let mut gens = Vec::new();
    for g in positional_ideal(iv, &ctx.ring_x)?.gens() {
        gens.push(g.transfer_by_name(&ctx.ring_xy)?);
    }
    for h in positional_ideal(iw, &ctx.ring_y)?.gens() {
        gens.push(h.transfer_by_name(&ctx.ring_xy)?);
    }
    kernel_of_map_mod(&ctx.map_z_to_xy, Some(&Ideal::new(&ctx.ring_xy, gens)))
}

pub fn build_product_instance(ctx: &SegreContext, iv: &Ideal, iw: &Ideal) -> Result<ProductConeInstance> {
    let iv = positional_ideal(iv, &ctx.ring_x)?;
    let iw = positional_ideal(iw, &ctx.ring_y)?;
    if !iv.is_homogeneous() || !iw.is_homogeneous() {
        return Err(AlgebraError::NotHomogeneous);
    }
    let y_last = Polynomial::var(&ctx.ring_y, ctx.m);
    if iw.contains_poly(&y_last)? {
        return Err(AlgebraError::Invalid(format!(
            "y{} lies in the ideal of W; the section y{} = 0 must not contain W",
            ctx.m, ctx.m
        )));
    }
    let substitution = substitution_ideal(ctx, &iv, &iw)?;
    let iy = product_ideal(ctx, &iv, &iw)?;
    let iz = Ideal::of_variables(&ctx.ring_z, &ctx.last_column());
    let m_v = Ideal::irrelevant(&ctx.ring_z);
    Ok(ProductConeInstance { ctx: ctx.clone(), iv, iw, iy, substitution, iz, m_v })
}

/// Checks the Segre relations against the kernel of the parametrisation.
pub fn segre_kernel_matches(ctx: &SegreContext) -> Result<bool> {
    kernel_of_map(&ctx.map_z_to_xy)?.equals(&ctx.segre_ideal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use conevanish_core::parse_polynomial;

    #[test]
    fn minor_counts() {
        let f = Field::Rationals;
        assert_eq!(build_segre(1, 1, f).unwrap().segre_ideal.gens().len(), 1);
        assert!(build_segre(0, 3, f).unwrap().segre_ideal.gens().is_empty());
        assert_eq!(build_segre(2, 1, f).unwrap().segre_ideal.gens().len(), 3);
        assert_eq!(build_segre(2, 2, f).unwrap().segre_ideal.gens().len(), 9);
    }

    #[test]
    fn quadric_relation() {
        let ctx = build_segre(1, 1, Field::Rationals).unwrap();
        assert_eq!(ctx.segre_ideal.gens()[0].to_string(), "-z01*z10 + z00*z11");
        assert!(segre_kernel_matches(&ctx).unwrap());
    }

    #[test]
    fn conifold_instance() {
        let ctx = build_segre(1, 1, Field::Rationals).unwrap();
        let inst = build_product_instance(&ctx, &Ideal::zero(&ctx.ring_x), &Ideal::zero(&ctx.ring_y)).unwrap();
        assert!(inst.iy.equals(&ctx.segre_ideal).unwrap());
        let names: Vec<String> = inst.iz.gens().iter().map(|g| g.to_string()).collect();
        assert_eq!(names, ["z01", "z11"]);
    }

    #[test]
    fn cubic_rows() {
        let ctx = build_segre(2, 1, Field::prime(31).unwrap()).unwrap();
        let f = parse_polynomial(&ctx.ring_x, "x0^3 + x1^3 + x2^3").unwrap();
        let inst = build_product_instance(&ctx, &Ideal::new(&ctx.ring_x, vec![f]), &Ideal::zero(&ctx.ring_y)).unwrap();
        let g1 = parse_polynomial(&ctx.ring_z, "z01^3 + z11^3 + z21^3").unwrap();
        assert!(inst.iy.contains_poly(&g1).unwrap());
        assert_eq!(inst.substitution.gens().len(), 3 + 2);
        assert!(inst.iy.contains(&inst.substitution).unwrap());
        let sat = inst.substitution.saturate(&inst.m_v).unwrap();
        assert!(sat.equals(&inst.iy).unwrap());
    }

    #[test]
    fn section_through_w_rejected() {
        let ctx = build_segre(1, 1, Field::Rationals).unwrap();
        let iw = Ideal::new(&ctx.ring_y, vec![Polynomial::var(&ctx.ring_y, 1)]);
        assert!(matches!(
            build_product_instance(&ctx, &Ideal::zero(&ctx.ring_x), &iw),
            Err(AlgebraError::Invalid(_))
        ));
    }
}
