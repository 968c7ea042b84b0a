//! Rees algebra presentations, fiber cones and affine blow-up charts.

use std::collections::HashSet;

use conevanish_core::ideal::fresh_name;
use conevanish_core::ring::check_same_ring;
use conevanish_core::{AlgebraError, Ideal, MonomialOrder, PolyRing, Polynomial, Result, Ring, RingMap};

/// `k[base vars, T_0..T_k] / rees_ideal` presents the Rees algebra `⊕ I^d` of the center.
#[derive(Clone, Debug)]
pub struct ReesPresentation {
    pub ambient: Ring,
    pub rees_ideal: Ideal,
    pub base_ideal: Ideal,
    pub blowup_center: Ideal,
    /// Index in `ambient` of the first Rees variable.
    pub first_t: usize,
}

impl ReesPresentation {
    pub fn base_ring(&self) -> &Ring {
        self.base_ideal.ring()
    }

    pub fn num_rees_vars(&self) -> usize {
        self.ambient.nvars() - self.first_t
    }

    /// Ring on the Rees variables alone.
    pub fn t_ring(&self) -> Result<Ring> {
        PolyRing::new(
            self.ambient.field(),
            self.ambient.vars()[self.first_t..].to_vec(),
            MonomialOrder::Grevlex,
        )
    }

    /// Images of the Rees variables under `T_j ↦ t · c_j`, in `base[t]`.
    pub fn tautological_map(&self) -> Result<(RingMap, Ring)> {
        let base = self.base_ring();
        let mut taken: HashSet<String> = base.vars().iter().cloned().collect();
        taken.extend(self.ambient.vars().iter().cloned());
        let t_name = fresh_name("t", &taken);
        let mut names = base.vars().to_vec();
        names.push(t_name);
        let ring_t = PolyRing::new(base.field(), names, MonomialOrder::Grevlex)?;
        let t = Polynomial::var(&ring_t, base.nvars());
        let mut images: Vec<Polynomial> =
            (0..base.nvars()).map(|i| Polynomial::var(&ring_t, i)).collect();
        for c in self.blowup_center.gens() {
            images.push(&t * &c.transfer_by_name(&ring_t)?);
        }
        Ok((RingMap::new(&self.ambient, &ring_t, images)?, ring_t))
    }
}

/// Kernel of `k[base vars, T] → (k[base vars]/base)[t]`, `T_j ↦ t · center_j`, computed by
/// eliminating `t` from `base + (T_j - t · center_j)`.
pub fn rees_presentation(base: &Ideal, center: &Ideal) -> Result<ReesPresentation> {
    check_same_ring(base.ring(), center.ring())?;
    let ring = base.ring();
    let centers = center.gens();
    if centers.is_empty() {
        return Err(AlgebraError::Invalid("blow-up center has no generators".into()));
    }
    let mut taken: HashSet<String> = ring.vars().iter().cloned().collect();
    let t_name = fresh_name("t", &taken);
    taken.insert(t_name.clone());
    let mut t_vars = Vec::new();
    for j in 0..centers.len() {
        let name = fresh_name(&format!("T{j}"), &taken);
        taken.insert(name.clone());
        t_vars.push(name);
    }
    let mut names = vec![t_name];
    names.extend(ring.vars().iter().cloned());
    names.extend(t_vars.iter().cloned());
    let elim = PolyRing::new(ring.field(), names, MonomialOrder::Block(1))?;
    let shift: Vec<usize> = (1..=ring.nvars()).collect();
    let t = Polynomial::var(&elim, 0);
    let mut gens: Vec<Polynomial> = base.gens().iter().map(|g| g.transfer(&elim, &shift)).collect();
    for (j, c) in centers.iter().enumerate() {
        let tj = Polynomial::var(&elim, 1 + ring.nvars() + j);
        gens.push(&tj - &(&t * &c.transfer(&elim, &shift)));
    }
    let keep: Vec<usize> = (1..elim.nvars()).collect();
    let rees_ideal = Ideal::new(&elim, gens).eliminate(&keep)?;
    Ok(ReesPresentation {
        ambient: rees_ideal.ring().clone(),
        rees_ideal,
        base_ideal: base.clone(),
        blowup_center: center.clone(),
        first_t: ring.nvars(),
    })
}

/// `⊕ I^d / I^d 𝔪` presented in `k[T]`: the Rees ideal with every base variable set to zero.
pub fn fiber_cone(r: &ReesPresentation) -> Result<Ideal> {
    let t_ring = r.t_ring()?;
    let mut images = vec![Polynomial::zero(&t_ring); r.first_t];
    images.extend((0..t_ring.nvars()).map(|i| Polynomial::var(&t_ring, i)));
    let kill = RingMap::new(&r.ambient, &t_ring, images)?;
    r.rees_ideal.map(&kill)?.canonical()
}

/// Affine chart `T_j = 1` on `base vars ∪ {T_i : i ≠ j}`.
pub fn blowup_chart(r: &ReesPresentation, j: usize) -> Result<Ideal> {
    let k = r.num_rees_vars();
    if j >= k {
        return Err(AlgebraError::OutOfRange(format!("chart index {j} (have {k} charts)")));
    }
    let tj = r.first_t + j;
    let names: Vec<String> = r
        .ambient
        .vars()
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != tj)
        .map(|(_, v)| v.clone())
        .collect();
    let chart = PolyRing::new(r.ambient.field(), names, MonomialOrder::Grevlex)?;
    let images = (0..r.ambient.nvars())
        .map(|i| match i.cmp(&tj) {
            std::cmp::Ordering::Less => Polynomial::var(&chart, i),
            std::cmp::Ordering::Equal => Polynomial::one(&chart),
            std::cmp::Ordering::Greater => Polynomial::var(&chart, i - 1),
        })
        .collect();
    let set_one = RingMap::new(&r.ambient, &chart, images)?;
    r.rees_ideal.map(&set_one)?.canonical()
}

#[cfg(test)]
mod tests {
    use super::*;
    use conevanish_core::{parse_polynomial, parse_ring};

    fn ideal(ring: &Ring, gens: &[&str]) -> Ideal {
        Ideal::new(ring, gens.iter().map(|g| parse_polynomial(ring, g).unwrap()).collect())
    }

    #[test]
    fn plane_blown_up_at_origin() {
        let r = parse_ring("ring Q[x,y] grevlex").unwrap();
        let rees = rees_presentation(&Ideal::zero(&r), &ideal(&r, &["x", "y"])).unwrap();
        let expect = ideal(&rees.ambient, &["x*T1 - y*T0"]);
        assert!(rees.rees_ideal.equals(&expect).unwrap());
        assert!(fiber_cone(&rees).unwrap().is_zero());
    }

    #[test]
    fn principal_center_adds_nothing() {
        let r = parse_ring("ring Q[x,y] grevlex").unwrap();
        let base = ideal(&r, &["y^2 - x^2"]);
        let rees = rees_presentation(&base, &ideal(&r, &["x"])).unwrap();
        let expect = ideal(&rees.ambient, &["y^2 - x^2"]);
        assert!(rees.rees_ideal.equals(&expect).unwrap());
        let chart = blowup_chart(&rees, 0).unwrap();
        assert_eq!(chart.ring().vars(), ["x", "y"]);
        assert!(chart.equals(&base).unwrap());
        assert!(blowup_chart(&rees, 1).is_err());
        // a zero divisor as center picks up its annihilator
        let rees = rees_presentation(&ideal(&r, &["x*y"]), &ideal(&r, &["x"])).unwrap();
        assert!(rees.rees_ideal.equals(&ideal(&rees.ambient, &["x*y", "y*T0"])).unwrap());
    }

    #[test]
    fn conifold_rees_and_charts() {
        let r = parse_ring("ring Q[z00,z01,z10,z11] grevlex").unwrap();
        let base = ideal(&r, &["z00*z11 - z01*z10"]);
        let rees = rees_presentation(&base, &ideal(&r, &["z01", "z11"])).unwrap();
        let expect = ideal(
            &rees.ambient,
            &["z00*z11 - z01*z10", "z01*T1 - z11*T0", "z00*T1 - z10*T0"],
        );
        assert!(rees.rees_ideal.equals(&expect).unwrap());
        let (taut, _) = rees.tautological_map().unwrap();
        for g in rees.rees_ideal.gens() {
            let img = taut.apply(g).unwrap();
            let base_t = Ideal::new(taut.target(), base.gens().iter().map(|b| b.transfer_by_name(taut.target()).unwrap()).collect());
            assert!(base_t.contains_poly(&img).unwrap());
        }
        assert!(fiber_cone(&rees).unwrap().is_zero());
        let chart = blowup_chart(&rees, 0).unwrap();
        assert_eq!(chart.ring().nvars(), 5);
        assert!(chart.equals(&ideal(chart.ring(), &["z01*T1 - z11", "z00*T1 - z10"])).unwrap());
    }
}
