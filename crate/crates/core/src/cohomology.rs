//! Dimensions `h^i(X, O_X(d))` for `X = Proj S/I`, via graded local duality on the dual of
//! the minimal free resolution of `S/I`.

use std::collections::BTreeMap;

use crate::error::{AlgebraError, Result};
use crate::groebner::Ideal;
use crate::hilbert::{hilbert_series, krull_dimension, HilbertData};
use crate::resolution::{free_resolution_with, MonomialCache, Resolution, ResolutionOptions};

/// A single request `h^i(X, O_X(d))`.
#[derive(Clone, Debug)]
pub struct SheafCohomologyQuery {
    pub ideal: Ideal,
    pub i: usize,
    pub d: i64,
    /// Saturate the ideal first instead of rejecting unsaturated input.
    pub saturate: bool,
}

/// `X = Proj S/I` together with the data needed to answer cohomology queries.
pub struct ProjectiveScheme {
    ideal: Ideal,
    resolution: Resolution,
    hilbert: HilbertData,
    dim: usize,
    opts: ResolutionOptions,
}

impl ProjectiveScheme {
    pub fn new(ideal: &Ideal, saturate: bool) -> Result<Self> {
        Self::with_options(ideal, saturate, ResolutionOptions::default())
    }

    pub fn with_options(ideal: &Ideal, saturate: bool, opts: ResolutionOptions) -> Result<Self> {
        if !ideal.is_homogeneous() {
            return Err(AlgebraError::NotHomogeneous);
        }
        let ideal = if saturate {
            ideal.saturate(&Ideal::irrelevant(ideal.ring()))?
        } else {
            if !ideal.is_saturated()? {
                return Err(AlgebraError::Unsaturated);
            }
            ideal.clone()
        };
        let affine_dim = krull_dimension(&ideal)?.ok_or(AlgebraError::UnitIdeal)?;
        if affine_dim == 0 {
            return Err(AlgebraError::Invalid("empty projective scheme".into()));
        }
        let resolution = free_resolution_with(&ideal, &opts)?;
        let hilbert = hilbert_series(&ideal)?;
        Ok(Self { ideal, resolution, hilbert, dim: affine_dim - 1, opts })
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn resolution(&self) -> &Resolution {
        &self.resolution
    }

    /// `dim_k Ext^k_S(S/I, S)_e`.
    pub fn ext_dim(&self, k: usize, e: i64) -> Result<u64> {
        let res = &self.resolution;
        let Some(degs) = res.degrees.get(k) else {
            return Ok(0);
        };
        let ring = res.ring();
        let mut cache = MonomialCache::default();
        let dual_degrees: Vec<i64> = degs.iter().map(|a| -a).collect();
        let total = crate::resolution::DegreePiece::new(ring.nvars(), &dual_degrees, e, &mut cache).dim();
        if total == 0 {
            return Ok(0);
        }
        let max = self.opts.max_matrix_entries;
        let outgoing = match res.maps.get(k) {
            Some(m) => m.dual().degree_matrix(ring, e, &mut cache, max)?.0.rank(),
            None => 0,
        };
        let incoming = match k.checked_sub(1).and_then(|j| res.maps.get(j)) {
            Some(m) => m.dual().degree_matrix(ring, e, &mut cache, max)?.0.rank(),
            None => 0,
        };
        Ok((total - outgoing - incoming) as u64)
    }

    /// `h^i(X, O_X(d))`.
    pub fn h(&self, i: usize, d: i64) -> Result<u64> {
        if i > self.dim {
            return Err(AlgebraError::OutOfRange(format!(
                "cohomological index {i} exceeds dimension {}",
                self.dim
            )));
        }
        let n = self.ideal.ring().nvars();
        let e = -d - n as i64;
        if i >= 1 {
            return self.ext_dim(n - 1 - i, e);
        }
        // 0 → H^0_m(M)_d → M_d → H^0(O(d)) → H^1_m(M)_d → 0
        let hf = self.hilbert.value(d) as u64;
        Ok(hf + self.ext_dim(n - 1, e)? - self.ext_dim(n, e)?)
    }

    pub fn euler_characteristic(&self, d: i64) -> Result<i64> {
        (0..=self.dim).try_fold(0i64, |acc, i| {
            let h = self.h(i, d)? as i64;
            Ok(if i % 2 == 0 { acc + h } else { acc - h })
        })
    }

    pub fn hilbert_polynomial(&self, d: i64) -> i64 {
        self.hilbert.polynomial_value(d)
    }

    /// All `h^i(O_X(d))` for `i ≤ dim X` and `d` in `twists`.
    pub fn table(&self, twists: impl IntoIterator<Item = i64>) -> Result<CohomologyTable> {
        let mut t = CohomologyTable::default();
        for d in twists {
            for i in 0..=self.dim {
                t.insert(i, d, self.h(i, d)?);
            }
        }
        Ok(t)
    }
}

pub fn sheaf_cohomology_dim(q: &SheafCohomologyQuery) -> Result<u64> {
    ProjectiveScheme::new(&q.ideal, q.saturate)?.h(q.i, q.d)
}

/// Known values `h^i(O(d))`, keyed by `(i, d)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CohomologyTable {
    entries: BTreeMap<(usize, i64), u64>,
}

impl CohomologyTable {
    pub fn insert(&mut self, i: usize, d: i64, value: u64) {
        self.entries.insert((i, d), value);
    }

    pub fn get(&self, i: usize, d: i64) -> Result<u64> {
        self.entries
            .get(&(i, d))
            .copied()
            .ok_or_else(|| AlgebraError::MissingEntry(format!("h^{i}(O({d}))")))
    }

    pub fn max_index(&self) -> usize {
        self.entries.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, i64, u64)> + '_ {
        self.entries.iter().map(|(&(i, d), &v)| (i, d, v))
    }
}

/// `Σ_{a+b=i} h^a(V, O(d)) h^b(W, O(d))`.
pub fn kunneth_dim(hv: &CohomologyTable, hw: &CohomologyTable, i: usize, d: i64) -> Result<u64> {
    let mut total = 0;
    for a in 0..=i.min(hv.max_index()) {
        let b = i - a;
        if b > hw.max_index() {
            continue;
        }
        total += hv.get(a, d)? * hw.get(b, d)?;
    }
    Ok(total)
}
