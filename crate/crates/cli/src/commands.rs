//! Command execution over a parsed problem.

use frobchi::multiplicity::{default_probes, pair_homology};
use frobchi::vanishing::{fixed_point_check, foxby_bound};
use frobchi::{
    chi, chi_series, comp_check, decompose, numerical_vanishing_check, vdim_bracket, ChiTable, Decomposition,
    FreeComplex, Length, Order, Probe, VanishingReport,
};

use crate::error::CliError;
use crate::problem::{parse_order, Problem, RING_NAME};

pub const DEFAULT_EMAX: u32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Validate,
    Homology,
    Chi,
    ChiSeries,
    Dutta,
    Decompose,
    Vdim,
    FixedPoint,
    Numvan,
}

/// Flags shared by every command.
#[derive(Clone, Debug, Default)]
pub struct Flags {
    pub x: Option<String>,
    pub y: Option<String>,
    pub e: Option<u32>,
    pub emax: Option<u32>,
    pub u: Option<String>,
    pub probes: Option<Vec<String>>,
}

#[derive(Clone, Debug)]
pub struct ComplexSummary {
    pub name: String,
    pub lo: i64,
    pub ranks: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct ModuleSummary {
    pub name: String,
    pub dim: i64,
}

#[derive(Clone, Debug)]
pub struct HomologyEntry {
    pub degree: i64,
    pub dim: i64,
    pub length: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct NamedVerdict {
    pub probe: String,
    pub pass: bool,
    pub values: Vec<i64>,
    pub witness: Option<usize>,
}

#[derive(Clone, Debug)]
pub enum Report {
    Validate {
        p: u64,
        vars: Vec<String>,
        ring_dim: i64,
        complexes: Vec<ComplexSummary>,
        modules: Vec<ModuleSummary>,
    },
    Homology(Vec<HomologyEntry>),
    Chi(i64),
    ChiSeries(ChiTable),
    Dutta(Decomposition),
    Decompose(Decomposition),
    Vdim {
        probes: Vec<String>,
        report: VanishingReport,
    },
    FixedPoint(Vec<NamedVerdict>),
    Numvan(frobchi::vanishing::NumericalVanishing),
}

fn need<'a>(flag: &'a Option<String>, name: &str) -> Result<&'a str, CliError> {
    flag.as_deref()
        .ok_or_else(|| CliError::parse("missing_flag", format!("--{name} is required")))
}

fn order(problem: &Problem, flags: &Flags) -> Result<Order, CliError> {
    match &flags.u {
        Some(text) => parse_order(text)
            .ok_or_else(|| CliError::parse("bad_option", "--u must be \"auto\" or a non-negative integer")),
        None => Ok(problem.options.u.unwrap_or(Order::Auto)),
    }
}

fn probes(problem: &Problem, flags: &Flags, x: &FreeComplex) -> Result<Vec<(String, Probe)>, CliError> {
    let names = flags.probes.as_ref().or(problem.options.probes.as_ref());
    let Some(names) = names else {
        return Ok(default_probes(x)?);
    };
    let mut out = Vec::with_capacity(names.len());
    for name in names {
        let probe = problem.probe(name)?;
        if let Some(err) = comp_check(x, &probe)?.error() {
            let err = CliError::from(err);
            return Err(CliError {
                message: format!("probe \"{name}\": {}", err.message),
                ..err
            });
        }
        out.push((name.clone(), probe));
    }
    Ok(out)
}

pub fn run(kind: CommandKind, problem: &Problem, flags: &Flags) -> Result<Report, CliError> {
    if kind == CommandKind::Validate {
        return Ok(validate(problem));
    }
    let x = problem.complex(need(&flags.x, "X")?)?;
    let y_name = flags.y.as_deref().unwrap_or(RING_NAME);
    let emax = flags.emax.or(problem.options.emax);
    match kind {
        CommandKind::Validate => unreachable!("handled above"),
        CommandKind::Homology => {
            let y = problem.probe(y_name)?;
            let mut out = Vec::new();
            for (degree, h) in pair_homology(x, &y)? {
                let length = match h.length()? {
                    Length::Finite(n) => Some(n),
                    Length::Infinite => None,
                };
                out.push(HomologyEntry {
                    degree,
                    dim: h.dim(),
                    length,
                });
            }
            Ok(Report::Homology(out))
        }
        CommandKind::Chi => Ok(Report::Chi(chi(x, &problem.probe(y_name)?, false)?)),
        CommandKind::ChiSeries => {
            let y = problem.probe(y_name)?;
            Ok(Report::ChiSeries(chi_series(x, &y, emax.unwrap_or(DEFAULT_EMAX))?))
        }
        CommandKind::Dutta | CommandKind::Decompose => {
            let y = problem.probe(y_name)?;
            let d = decompose(x, &y, order(problem, flags)?, emax)?;
            Ok(if kind == CommandKind::Dutta {
                Report::Dutta(d)
            } else {
                Report::Decompose(d)
            })
        }
        CommandKind::Vdim => {
            let named = probes(problem, flags, x)?;
            let emax = match emax {
                Some(e) => e,
                None => (foxby_bound(x.codim()?) as u32 + 1).max(DEFAULT_EMAX),
            };
            let list: Vec<Probe> = named.iter().map(|(_, p)| p.clone()).collect();
            let report = vdim_bracket(x, &list, emax)?;
            Ok(Report::Vdim {
                probes: named.into_iter().map(|(n, _)| n).collect(),
                report,
            })
        }
        CommandKind::FixedPoint => {
            let named = probes(problem, flags, x)?;
            let list: Vec<Probe> = named.iter().map(|(_, p)| p.clone()).collect();
            let e = flags.e.or(emax).unwrap_or(DEFAULT_EMAX);
            let verdicts = fixed_point_check(x, &list, e)?
                .into_iter()
                .map(|v| NamedVerdict {
                    probe: named[v.probe].0.clone(),
                    pass: v.pass,
                    values: v.values,
                    witness: v.witness,
                })
                .collect();
            Ok(Report::FixedPoint(verdicts))
        }
        CommandKind::Numvan => Ok(Report::Numvan(numerical_vanishing_check(x, flags.e.unwrap_or(1))?)),
    }
}

fn validate(problem: &Problem) -> Report {
    let poly = problem.ring.poly_ring();
    Report::Validate {
        p: poly.characteristic(),
        vars: poly.variables().to_vec(),
        ring_dim: problem.ring.dim(),
        complexes: problem
            .complexes
            .iter()
            .map(|(name, c)| ComplexSummary {
                name: name.clone(),
                lo: c.lo(),
                ranks: c.ranks().into_iter().map(|(_, r)| r).collect(),
            })
            .collect(),
        modules: problem
            .modules
            .iter()
            .map(|(name, m)| ModuleSummary {
                name: name.clone(),
                dim: m.dim(),
            })
            .collect(),
    }
}
