//! Intersection multiplicities `χ(X, Y) = Σ (-1)^i ℓ(H_i(X ⊗ Y))` and their
//! Frobenius series.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::complex::FreeComplex;
use crate::error::{AlgebraError, Result};
use crate::groebner::Length;
use crate::poly::Polynomial;
use crate::ring::{PresentedModule, QuotientRing};
use crate::vandermonde::{rational_power, ChiTable};

/// The second argument of `χ`: a module or a complex.
#[derive(Clone, Debug)]
pub enum Probe {
    Module(PresentedModule),
    Complex(FreeComplex),
}

impl From<PresentedModule> for Probe {
    fn from(m: PresentedModule) -> Self {
        Probe::Module(m)
    }
}

impl From<FreeComplex> for Probe {
    fn from(c: FreeComplex) -> Self {
        Probe::Complex(c)
    }
}

impl Probe {
    /// `R` itself.
    pub fn ring(ring: &Arc<QuotientRing>) -> Result<Self> {
        Ok(Probe::Module(PresentedModule::free(ring, vec![0])?))
    }

    /// `R/J`.
    pub fn cyclic(ring: &Arc<QuotientRing>, generators: &[Polynomial]) -> Result<Self> {
        Ok(Probe::Module(PresentedModule::cyclic(ring, generators)?))
    }

    pub fn base_ring(&self) -> &Arc<QuotientRing> {
        match self {
            Probe::Module(m) => m.ring(),
            Probe::Complex(c) => c.ring(),
        }
    }

    /// Dimension of the support.
    pub fn dim(&self) -> Result<i64> {
        match self {
            Probe::Module(m) => Ok(m.dim()),
            Probe::Complex(c) => c.support_dim(),
        }
    }
}

/// Homology of `X ⊗ Y`, degree by degree.
///
/// For a cyclic `Y = R/J` the complex is pushed to the ring `R/J`, which
/// gives the same modules with a smaller presentation.
pub fn pair_homology(x: &FreeComplex, y: &Probe) -> Result<Vec<(i64, PresentedModule)>> {
    let ring = x.ring();
    if !Arc::ptr_eq(ring, y.base_ring()) && **ring != **y.base_ring() {
        return Err(AlgebraError::Structural("complex and probe over different rings".into()));
    }
    match y {
        Probe::Module(m) if m.rank() == 1 => {
            let gens: Vec<Polynomial> = m
                .relations()
                .iter()
                .map(|v| m.ambient().entries(v).remove(0))
                .collect();
            let pushed = match ring.quotient(&gens) {
                Ok(q) => q,
                Err(AlgebraError::UnitIdeal) => return Ok(Vec::new()),
                Err(e) => return Err(e),
            };
            let xq = x.change_ring(&pushed)?;
            xq.degrees().map(|i| Ok((i, xq.homology(i)?))).collect()
        }
        Probe::Module(m) => x.degrees().map(|i| Ok((i, x.homology_with(i, m)?))).collect(),
        Probe::Complex(c) => {
            let t = x.tensor(c)?;
            t.degrees().map(|i| Ok((i, t.homology(i)?))).collect()
        }
    }
}

fn alternating_length(homology: &[(i64, PresentedModule)]) -> Result<i64> {
    let mut chi = 0i64;
    for (i, h) in homology {
        match h.length()? {
            Length::Finite(l) => {
                let l = l as i64;
                chi += if i.rem_euclid(2) == 0 { l } else { -l };
            }
            Length::Infinite => return Err(AlgebraError::InfiniteLength { degree: *i }),
        }
    }
    Ok(chi)
}

/// Which clauses of the compatibility condition hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatReport {
    pub ring_dim: i64,
    pub x_dim: i64,
    pub y_dim: i64,
    /// `dim Supp(X ⊗ Y)`.
    pub intersection_dim: i64,
    /// `dim Supp(X ⊗ Y) <= 0`.
    pub meets_only_at_origin: bool,
    /// `dim Supp X + dim Y <= dim R`.
    pub dimension_inequality: bool,
}

impl CompatReport {
    pub fn is_ok(&self) -> bool {
        self.meets_only_at_origin && self.dimension_inequality
    }

    pub fn error(&self) -> Option<AlgebraError> {
        if !self.meets_only_at_origin {
            Some(AlgebraError::Incompatible(format!(
                "supports meet in dimension {}",
                self.intersection_dim
            )))
        } else if !self.dimension_inequality {
            Some(AlgebraError::Incompatible(format!(
                "dim Supp X + dim Y = {} + {} exceeds dim R = {}",
                self.x_dim, self.y_dim, self.ring_dim
            )))
        } else {
            None
        }
    }
}

/// Checks that `X` and `Y` meet only at the irrelevant ideal and that
/// `dim Supp X + dim Y <= dim R`.
pub fn comp_check(x: &FreeComplex, y: &Probe) -> Result<CompatReport> {
    let homology = pair_homology(x, y)?;
    let intersection_dim = homology.iter().map(|(_, h)| h.dim()).max().unwrap_or(-1);
    report(x, y, intersection_dim)
}

fn report(x: &FreeComplex, y: &Probe, intersection_dim: i64) -> Result<CompatReport> {
    let ring_dim = x.ring().dim();
    let x_dim = x.support_dim()?;
    let y_dim = y.dim()?;
    Ok(CompatReport {
        ring_dim,
        x_dim,
        y_dim,
        intersection_dim,
        meets_only_at_origin: intersection_dim <= 0,
        // An exact side has empty support; nothing to bound.
        dimension_inequality: x_dim < 0 || y_dim < 0 || x_dim + y_dim <= ring_dim,
    })
}

/// `χ(X, Y)`. With `skip_dimension_check` only finite length is required.
pub fn chi(x: &FreeComplex, y: &Probe, skip_dimension_check: bool) -> Result<i64> {
    let homology = pair_homology(x, y)?;
    if !skip_dimension_check {
        let intersection_dim = homology.iter().map(|(_, h)| h.dim()).max().unwrap_or(-1);
        if let Some(err) = report(x, y, intersection_dim)?.error() {
            return Err(err);
        }
    }
    alternating_length(&homology)
}

/// `c_e = χ(F^e X, Y)` for `e = 0..=e_max`, with `t = codim X`.
///
/// Compatibility is checked once: the Frobenius functor preserves supports.
pub fn chi_series(x: &FreeComplex, y: &Probe, e_max: u32) -> Result<ChiTable> {
    let rep = comp_check(x, y)?;
    if let Some(err) = rep.error() {
        return Err(err);
    }
    let values = (0..=e_max)
        .into_par_iter()
        .map(|e| {
            let fx = x.frobenius(e).map_err(|err| match err {
                AlgebraError::ExponentOverflow(msg) => {
                    AlgebraError::ExponentOverflow(format!("at e = {e}: {msg}"))
                }
                other => other,
            })?;
            chi(&fx, y, true)
        })
        .collect::<Result<Vec<i64>>>()?;
    Ok(ChiTable {
        p: x.ring().characteristic(),
        t: rep.ring_dim - rep.x_dim,
        values,
    })
}

/// `p^(-e t) χ(F^e X, Y)`, the `e`-th term of the limit defining the Dutta
/// multiplicity.
pub fn dutta_limit_probe(x: &FreeComplex, y: &Probe, e: u32) -> Result<BigRational> {
    let rep = comp_check(x, y)?;
    if let Some(err) = rep.error() {
        return Err(err);
    }
    let t = rep.ring_dim - rep.x_dim;
    let c = chi(&x.frobenius(e)?, y, true)?;
    Ok(BigRational::from_integer(BigInt::from(c)) * rational_power(x.ring().characteristic(), -(e as i64) * t))
}

/// `R` and `R/(x_i)` for every variable, keeping those compatible with `X`.
pub fn default_probes(x: &FreeComplex) -> Result<Vec<(String, Probe)>> {
    let ring = x.ring();
    let mut candidates = vec![("R".to_string(), Probe::ring(ring)?)];
    for (i, name) in ring.poly_ring().variables().iter().enumerate() {
        let v = Polynomial::var(ring.poly_ring(), i);
        candidates.push((format!("R/({name})"), Probe::cyclic(ring, &[v])?));
    }
    let mut out = Vec::new();
    for (name, probe) in candidates {
        if comp_check(x, &probe)?.is_ok() {
            out.push((name, probe));
        }
    }
    Ok(out)
}
