//! Dutta multiplicities and vanishing tests built on Frobenius series.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::complex::FreeComplex;
use crate::error::{AlgebraError, Result};
use crate::multiplicity::{chi_series, comp_check, Probe};
use crate::vandermonde::{recurrence_order, ChiTable, EigenComponents};

/// Number of components `u` in a decomposition, `u + 1` in all.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    /// `max(0, codim X - 2)`.
    Auto,
    Exactly(usize),
}

impl Order {
    pub fn resolve(self, t: i64) -> usize {
        match self {
            Order::Auto => foxby_bound(t),
            Order::Exactly(u) => u,
        }
    }
}

/// `max(0, t - 2)`, the largest possible vanishing dimension in codim `t`.
pub fn foxby_bound(t: i64) -> usize {
    (t - 2).max(0) as usize
}

/// A Frobenius series together with its decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub table: ChiTable,
    pub components: EigenComponents,
}

impl Decomposition {
    pub fn dutta(&self) -> &BigRational {
        self.components.leading()
    }
}

/// Tabulates `χ(F^e X, Y)` up to `max(u, e_max)` and splits it into `u + 1`
/// components, checking that every tabulated value is reproduced.
pub fn decompose(x: &FreeComplex, y: &Probe, order: Order, e_max: Option<u32>) -> Result<Decomposition> {
    let rep = comp_check(x, y)?;
    if let Some(err) = rep.error() {
        return Err(err);
    }
    let u = order.resolve(rep.ring_dim - rep.x_dim);
    let top = e_max.unwrap_or(0).max(u as u32);
    let table = chi_series(x, y, top)?;
    let components = EigenComponents::solve(table.p, table.t, &table.rational_values(), u)?;
    components.check_reconstruction(&table.rational_values())?;
    Ok(Decomposition { table, components })
}

/// The Dutta multiplicity `χ_∞(X, Y)`.
pub fn dutta(x: &FreeComplex, y: &Probe, order: Order, e_max: Option<u32>) -> Result<BigRational> {
    Ok(decompose(x, y, order, e_max)?.dutta().clone())
}

/// Minimal recurrence order of one probe's series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceFit {
    pub probe: usize,
    pub table: ChiTable,
    pub order: usize,
    pub components: EigenComponents,
    /// True when at least one tabulated value beyond the solve confirms the fit.
    pub confirmed: bool,
}

/// Smallest `u` such that the table satisfies the recurrence with roots
/// `p^t, ..., p^(t-u)`.
pub fn fit_recurrence(table: &ChiTable) -> Result<(usize, EigenComponents)> {
    recurrence_order(table.p, table.t, &table.rational_values()).ok_or(AlgebraError::InsufficientTable { have: 0, need: 1 })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointVerdict {
    pub probe: usize,
    pub values: Vec<i64>,
    pub pass: bool,
    /// First `e` with `c_e != p^(e t) c_0`.
    pub witness: Option<usize>,
}

/// First `e` in `1..` where `c_e != p^(e t) c_0`.
pub fn fixed_point_witness(table: &ChiTable) -> Option<usize> {
    let c0 = BigRational::from_integer(BigInt::from(table.values.first().copied().unwrap_or(0)));
    (1..table.values.len()).find(|&e| {
        let expected = &c0 * crate::vandermonde::rational_power(table.p, table.t * e as i64);
        expected != BigRational::from_integer(BigInt::from(table.values[e]))
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericalCheck {
    pub e: u32,
    /// `χ(F^e X)`.
    pub lhs: i64,
    /// `p^(e dim R) χ(X)`.
    pub rhs: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericalVanishing {
    pub pass: bool,
    pub checks: Vec<NumericalCheck>,
    /// First `e` where the sides differ.
    pub witness: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingReport {
    pub t: i64,
    pub u_max: usize,
    /// Largest fitted order over the probes: a lower bound for the vanishing
    /// dimension, which lies in `[u_obs, u_max]`.
    pub u_obs: usize,
    pub fits: Vec<RecurrenceFit>,
    pub fixed_point: Vec<FixedPointVerdict>,
    /// Present when `X` has finite length homology.
    pub numerical: Option<NumericalVanishing>,
}

fn compatible_series(x: &FreeComplex, probes: &[Probe], e_max: u32) -> Result<Vec<ChiTable>> {
    probes
        .iter()
        .enumerate()
        .map(|(k, y)| {
            chi_series(x, y, e_max).map_err(|err| match err {
                AlgebraError::Incompatible(msg) => AlgebraError::Incompatible(format!("probe {k}: {msg}")),
                other => other,
            })
        })
        .collect()
}

fn fixed_point_verdicts(tables: &[ChiTable]) -> Vec<FixedPointVerdict> {
    tables
        .iter()
        .enumerate()
        .map(|(probe, table)| {
            let witness = fixed_point_witness(table);
            FixedPointVerdict {
                probe,
                values: table.values.clone(),
                pass: witness.is_none(),
                witness,
            }
        })
        .collect()
}

/// Brackets the vanishing dimension of `X` between the largest recurrence
/// order observed on `probes` and the Foxby bound.
pub fn vdim_bracket(x: &FreeComplex, probes: &[Probe], e_max: u32) -> Result<VanishingReport> {
    let t = x.codim()?;
    let u_max = foxby_bound(t);
    if (e_max as usize) < u_max {
        return Err(AlgebraError::InsufficientTable {
            have: e_max as usize + 1,
            need: u_max + 1,
        });
    }
    let tables = compatible_series(x, probes, e_max)?;
    let mut fits = Vec::with_capacity(tables.len());
    for (probe, table) in tables.iter().enumerate() {
        let (order, components) = fit_recurrence(table)?;
        fits.push(RecurrenceFit {
            probe,
            table: table.clone(),
            order,
            components,
            confirmed: order < table.e_max(),
        });
    }
    let u_obs = fits.iter().map(|f| f.order).max().unwrap_or(0);
    if u_obs > u_max {
        return Err(AlgebraError::Invariant(format!(
            "recurrence of order {u_obs} exceeds the bound {u_max} in codimension {t}"
        )));
    }
    let numerical = if x.support_dim()? <= 0 {
        Some(numerical_vanishing_check(x, e_max.max(1))?)
    } else {
        None
    };
    Ok(VanishingReport {
        t,
        u_max,
        u_obs,
        fits,
        fixed_point: fixed_point_verdicts(&tables),
        numerical,
    })
}

/// Tests `c_k = p^(k t) c_0` for `k = 1..=e` against every probe.
pub fn fixed_point_check(x: &FreeComplex, probes: &[Probe], e: u32) -> Result<Vec<FixedPointVerdict>> {
    Ok(fixed_point_verdicts(&compatible_series(x, probes, e)?))
}

/// Compares `χ(F^e X)` with `p^(e dim R) χ(X)` for `e = 1..=e_max`. `X` must
/// have finite length homology.
pub fn numerical_vanishing_check(x: &FreeComplex, e_max: u32) -> Result<NumericalVanishing> {
    let dim = x.support_dim()?;
    if dim > 0 {
        return Err(AlgebraError::Incompatible(format!(
            "homology is supported in dimension {dim}, not only at the origin"
        )));
    }
    let p = x.ring().characteristic() as i64;
    let ring_dim = x.ring().dim().max(0) as u32;
    let chi0 = x.euler_char()?;
    let mut checks = Vec::new();
    for e in 1..=e_max.max(1) {
        let lhs = x.frobenius(e)?.euler_char()?;
        let rhs = e
            .checked_mul(ring_dim)
            .and_then(|k| p.checked_pow(k))
            .and_then(|q| q.checked_mul(chi0))
            .ok_or_else(|| AlgebraError::ExponentOverflow(format!("{p}^({e} * {ring_dim}) * {chi0}")))?;
        checks.push(NumericalCheck { e, lhs, rhs });
    }
    let witness = checks.iter().find(|c| c.lhs != c.rhs).map(|c| c.e);
    Ok(NumericalVanishing {
        pass: witness.is_none(),
        checks,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::poly::Polynomial;
    use crate::ring::{make_ring, PresentedModule, QuotientRing};

    fn koszul(ring: &Arc<QuotientRing>, elems: &[&str]) -> FreeComplex {
        let es: Vec<Polynomial> = elems.iter().map(|s| ring.parse(s).unwrap()).collect();
        FreeComplex::koszul(ring, &es).unwrap()
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn dutta_of_koszul() {
        let r = make_ring(2, &["x", "y"], &[]).unwrap();
        let k = koszul(&r, &["x", "y"]);
        let rr = Probe::ring(&r).unwrap();
        assert_eq!(dutta(&k, &rr, Order::Auto, None), Ok(q(1)));
        let d = decompose(&k, &rr, Order::Auto, Some(4)).unwrap();
        assert_eq!(d.table.values, vec![1, 4, 16, 64, 256]);
        assert_eq!(d.components.u, 0);
        assert_eq!(dutta(&k, &rr, Order::Exactly(2), None), Ok(q(1)));
    }

    #[test]
    fn dutta_of_zero_complex() {
        let r = make_ring(3, &["x", "y"], &[]).unwrap();
        assert_eq!(dutta(&FreeComplex::zero(&r), &Probe::ring(&r).unwrap(), Order::Auto, None), Ok(q(0)));
    }

    #[test]
    fn fixed_point_on_tables() {
        let pass = ChiTable {
            p: 3,
            t: 2,
            values: vec![2, 18, 162],
        };
        assert_eq!(fixed_point_witness(&pass), None);
        let fail = ChiTable {
            p: 2,
            t: 3,
            values: vec![1, 9],
        };
        assert_eq!(fixed_point_witness(&fail), Some(1));
    }

    #[test]
    fn synthetic_two_root_series_has_order_one() {
        let table = ChiTable {
            p: 2,
            t: 3,
            values: (0..5).map(|e| 8i64.pow(e) + 4i64.pow(e)).collect(),
        };
        assert_eq!(fit_recurrence(&table).unwrap().0, 1);
    }

    #[test]
    fn bracket_for_koszul() {
        let r = make_ring(2, &["x", "y"], &[]).unwrap();
        let k = koszul(&r, &["x", "y"]);
        let probes = vec![
            Probe::ring(&r).unwrap(),
            Probe::Module(PresentedModule::residue_field(&r).unwrap()),
        ];
        let rep = vdim_bracket(&k, &probes, 2).unwrap();
        assert_eq!((rep.t, rep.u_max, rep.u_obs), (2, 0, 0));
        assert!(rep.fits.iter().all(|f| f.order == 0 && f.confirmed));
        assert!(rep.fixed_point.iter().all(|v| v.pass));
        assert!(rep.numerical.unwrap().pass);
    }

    #[test]
    fn fixed_point_for_koszul_and_zero() {
        let r = make_ring(3, &["x", "y"], &[]).unwrap();
        let k = koszul(&r, &["x", "y"]);
        let v = fixed_point_check(&k, &[Probe::ring(&r).unwrap()], 2).unwrap();
        assert!(v[0].pass);
        assert_eq!(v[0].values, vec![1, 9, 81]);
        let z = fixed_point_check(&FreeComplex::zero(&r), &[Probe::ring(&r).unwrap()], 2).unwrap();
        assert!(z[0].pass);
    }

    #[test]
    fn numerical_vanishing() {
        let r = make_ring(2, &["x", "y"], &[]).unwrap();
        let k = koszul(&r, &["x", "y"]);
        let v = numerical_vanishing_check(&k, 1).unwrap();
        assert!(v.pass);
        assert_eq!((v.checks[0].lhs, v.checks[0].rhs), (4, 4));
        let s = numerical_vanishing_check(&k.shift(1), 2).unwrap();
        assert!(s.pass);
        assert_eq!(s.checks[1].lhs, -16);
        assert!(matches!(
            numerical_vanishing_check(&koszul(&r, &["x"]), 1),
            Err(AlgebraError::Incompatible(_))
        ));
    }

    #[test]
    fn numerical_vanishing_on_a_complete_intersection() {
        let r = make_ring(2, &["x", "y", "z"], &["x^2"]).unwrap();
        let k = koszul(&r, &["x", "y", "z"]);
        assert!(numerical_vanishing_check(&k, 2).unwrap().pass);
    }

    #[test]
    fn too_small_a_table_for_the_bound() {
        let r = make_ring(2, &["x", "y", "z", "w"], &[]).unwrap();
        let k = koszul(&r, &["x", "y", "z", "w"]);
        assert_eq!(
            vdim_bracket(&k, &[Probe::ring(&r).unwrap()], 1),
            Err(AlgebraError::InsufficientTable { have: 2, need: 3 })
        );
    }
}
