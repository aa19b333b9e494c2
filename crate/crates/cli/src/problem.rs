//! Problem files.
//!
//! A problem file is TOML:
//!
//! ```toml
//! [ring]
//! p = 2
//! vars = ["x", "y"]
//! ideal = []
//!
//! [complex.K]
//! koszul = ["x", "y"]
//!
//! [complex.D]
//! lo = 0
//! shifts = [[0], [1]]
//! differentials = [[["x"]]]
//!
//! [module.L]
//! quotient = ["x + y"]
//!
//! [options]
//! emax = 4
//! u = "auto"
//! probes = ["R", "L"]
//! ```
//!
//! A complex is given by exactly one of `koszul`, `tensor = ["A", "B"]`,
//! `shift = ["A", n]`, `frobenius = ["A", e]` or the raw triple `lo`,
//! `shifts`, `differentials`, where `shifts[k]` lists the generator degrees
//! of `X_{lo+k}` and `differentials[k]` is the row grid of `d_{lo+k+1}`.
//! The name `R` is reserved for the ring itself.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::Range;
use std::sync::Arc;

use frobchi::{
    AlgebraError, FreeComplex, Matrix, PolyRing, Polynomial, PresentedModule, Probe, QuotientRing, Violation,
};
use serde::Deserialize;
use toml::Spanned;

use crate::error::CliError;

pub const RING_NAME: &str = "R";

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    ring: Spanned<RawRing>,
    #[serde(default)]
    complex: BTreeMap<String, Spanned<RawComplex>>,
    #[serde(default)]
    module: BTreeMap<String, Spanned<RawModule>>,
    #[serde(default)]
    options: RawOptions,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRing {
    p: Spanned<u64>,
    vars: Vec<Spanned<String>>,
    #[serde(default)]
    ideal: Vec<Spanned<String>>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawComplex {
    koszul: Option<Vec<Spanned<String>>>,
    tensor: Option<(Spanned<String>, Spanned<String>)>,
    shift: Option<(Spanned<String>, i64)>,
    frobenius: Option<(Spanned<String>, u32)>,
    lo: Option<i64>,
    shifts: Option<Vec<Vec<i64>>>,
    differentials: Option<Vec<Vec<Vec<Spanned<String>>>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModule {
    quotient: Vec<Spanned<String>>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawOptions {
    emax: Option<u32>,
    u: Option<Spanned<UOption>>,
    probes: Option<Vec<Spanned<String>>>,
}

#[derive(Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(untagged)]
pub enum UOption {
    Count(u64),
    Word(String),
}

/// Options from the `[options]` section.
#[derive(Clone, Debug, Default)]
pub struct Options {
    pub emax: Option<u32>,
    pub u: Option<frobchi::Order>,
    pub probes: Option<Vec<String>>,
}

/// A parsed and validated problem file.
#[derive(Debug)]
pub struct Problem {
    pub ring: Arc<QuotientRing>,
    pub complexes: BTreeMap<String, FreeComplex>,
    pub modules: BTreeMap<String, PresentedModule>,
    pub options: Options,
}

/// Parses `--u` and `u = ...` values.
pub fn parse_order(text: &str) -> Option<frobchi::Order> {
    if text == "auto" {
        Some(frobchi::Order::Auto)
    } else {
        text.parse().ok().map(frobchi::Order::Exactly)
    }
}

struct Source<'a> {
    text: &'a str,
}

impl Source<'_> {
    fn position(&self, offset: usize) -> (usize, usize) {
        let before = &self.text[..offset.min(self.text.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        (line, column)
    }

    fn error_at(&self, span: Range<usize>, code: &'static str, message: impl Into<String>) -> CliError {
        let (line, column) = self.position(span.start);
        CliError::parse(code, message).at(line, column)
    }

    /// Engine error about the value at `span`; parse errors inside a string
    /// literal point at the offending character.
    fn engine_error_at(&self, span: Range<usize>, err: AlgebraError) -> CliError {
        let offset = match &err {
            AlgebraError::Parse { column, .. } => span.start + column,
            _ => span.start,
        };
        let (line, column) = self.position(offset);
        let mut out = CliError::from(err.clone());
        if let AlgebraError::Parse { message, .. } = err {
            out.message = message;
        }
        out.at(line, column)
    }

    fn poly(&self, ring: &Arc<PolyRing>, s: &Spanned<String>) -> Result<Polynomial, CliError> {
        Polynomial::parse(ring, s.get_ref()).map_err(|e| self.engine_error_at(s.span(), e))
    }
}

impl Problem {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let src = Source { text };
        let raw: RawFile = toml::from_str(text).map_err(|e| {
            let err = CliError::parse("syntax", e.message().to_string());
            match e.span() {
                Some(span) => {
                    let (line, column) = src.position(span.start);
                    err.at(line, column)
                }
                None => err,
            }
        })?;

        let ring_span = raw.ring.span();
        let raw_ring = raw.ring.into_inner();
        let mut names: Vec<&str> = Vec::new();
        for v in &raw_ring.vars {
            names.push(v.get_ref());
        }
        let poly = PolyRing::degrevlex(*raw_ring.p.get_ref(), &names).map_err(|e| {
            let span = match e {
                AlgebraError::NotPrime(_) | AlgebraError::ModulusTooLarge(_) => raw_ring.p.span(),
                _ => ring_span.clone(),
            };
            src.engine_error_at(span, e)
        })?;
        let ideal = raw_ring
            .ideal
            .iter()
            .map(|s| src.poly(&poly, s))
            .collect::<Result<Vec<_>, _>>()?;
        for (f, s) in ideal.iter().zip(&raw_ring.ideal) {
            if !f.is_homogeneous() {
                return Err(src.error_at(s.span(), "inhomogeneous", format!("ideal generator {f} is inhomogeneous")));
            }
        }
        let ring = QuotientRing::new(&poly, &ideal).map_err(|e| src.engine_error_at(ring_span.clone(), e))?;

        for (name, spanned) in &raw.module {
            if name == RING_NAME || raw.complex.contains_key(name) {
                return Err(src.error_at(spanned.span(), "duplicate_name", format!("name \"{name}\" is already taken")));
            }
        }
        if let Some(c) = raw.complex.get(RING_NAME) {
            return Err(src.error_at(c.span(), "duplicate_name", "\"R\" is reserved for the ring"));
        }

        let mut modules = BTreeMap::new();
        for (name, spanned) in &raw.module {
            let gens = spanned
                .get_ref()
                .quotient
                .iter()
                .map(|s| src.poly(&poly, s))
                .collect::<Result<Vec<_>, _>>()?;
            for (f, s) in gens.iter().zip(&spanned.get_ref().quotient) {
                if !f.is_homogeneous() {
                    return Err(src.error_at(s.span(), "inhomogeneous", format!("generator {f} of module \"{name}\" is inhomogeneous")));
                }
            }
            let m = PresentedModule::cyclic(&ring, &gens).map_err(|e| src.engine_error_at(spanned.span(), e))?;
            modules.insert(name.clone(), m);
        }

        let mut builder = Builder {
            src: &src,
            ring: &ring,
            raw: &raw.complex,
            done: BTreeMap::new(),
            active: BTreeSet::new(),
        };
        for name in raw.complex.keys() {
            builder.build(name, None)?;
        }
        let complexes = builder.done;

        let mut options = Options {
            emax: raw.options.emax,
            ..Options::default()
        };
        if let Some(u) = &raw.options.u {
            let parsed = match u.get_ref() {
                UOption::Count(n) => Some(frobchi::Order::Exactly(*n as usize)),
                UOption::Word(w) => parse_order(w),
            };
            options.u = Some(parsed.ok_or_else(|| src.error_at(u.span(), "bad_option", "u must be \"auto\" or a non-negative integer"))?);
        }
        if let Some(probes) = &raw.options.probes {
            for p in probes {
                if p.get_ref() != RING_NAME && !modules.contains_key(p.get_ref()) && !complexes.contains_key(p.get_ref()) {
                    return Err(src.error_at(p.span(), "undefined_name", format!("probe \"{}\" is not defined", p.get_ref())));
                }
            }
            options.probes = Some(probes.iter().map(|p| p.get_ref().clone()).collect());
        }

        Ok(Problem {
            ring,
            complexes,
            modules,
            options,
        })
    }

    pub fn complex(&self, name: &str) -> Result<&FreeComplex, CliError> {
        self.complexes
            .get(name)
            .ok_or_else(|| CliError::parse("undefined_name", format!("complex \"{name}\" is not defined")))
    }

    /// A complex, a module, or `R`.
    pub fn probe(&self, name: &str) -> Result<Probe, CliError> {
        if name == RING_NAME {
            return Ok(Probe::ring(&self.ring)?);
        }
        if let Some(m) = self.modules.get(name) {
            return Ok(Probe::Module(m.clone()));
        }
        if let Some(c) = self.complexes.get(name) {
            return Ok(Probe::Complex(c.clone()));
        }
        Err(CliError::parse("undefined_name", format!("\"{name}\" is not defined")))
    }
}

struct Builder<'a> {
    src: &'a Source<'a>,
    ring: &'a Arc<QuotientRing>,
    raw: &'a BTreeMap<String, Spanned<RawComplex>>,
    done: BTreeMap<String, FreeComplex>,
    active: BTreeSet<String>,
}

impl Builder<'_> {
    fn reference(&mut self, name: &Spanned<String>) -> Result<FreeComplex, CliError> {
        self.build(name.get_ref(), Some(name.span()))
    }

    fn build(&mut self, name: &str, used_at: Option<Range<usize>>) -> Result<FreeComplex, CliError> {
        if let Some(c) = self.done.get(name) {
            return Ok(c.clone());
        }
        let Some(spanned) = self.raw.get(name) else {
            let span = used_at.unwrap_or(0..0);
            return Err(self.src.error_at(span, "undefined_name", format!("complex \"{name}\" is not defined")));
        };
        if !self.active.insert(name.to_string()) {
            return Err(self.src.error_at(spanned.span(), "cyclic_definition", format!("complex \"{name}\" depends on itself")));
        }
        let span = spanned.span();
        let raw = spanned.get_ref();
        let forms = [
            raw.koszul.is_some(),
            raw.tensor.is_some(),
            raw.shift.is_some(),
            raw.frobenius.is_some(),
            raw.differentials.is_some() || raw.shifts.is_some() || raw.lo.is_some(),
        ];
        if forms.iter().filter(|&&f| f).count() != 1 {
            return Err(self.src.error_at(
                span,
                "bad_complex",
                format!("complex \"{name}\" needs exactly one of koszul, tensor, shift, frobenius or lo/shifts/differentials"),
            ));
        }
        let engine = |e: AlgebraError| self.src.engine_error_at(span.clone(), e);
        let poly = self.ring.poly_ring();
        let c = if let Some(elems) = &raw.koszul {
            let fs = elems.iter().map(|s| self.src.poly(poly, s)).collect::<Result<Vec<_>, _>>()?;
            for (f, s) in fs.iter().zip(elems) {
                if !f.is_homogeneous() {
                    return Err(self.src.error_at(s.span(), "inhomogeneous", format!("Koszul element {f} is inhomogeneous")));
                }
            }
            FreeComplex::koszul(self.ring, &fs).map_err(engine)?
        } else if let Some((a, b)) = &raw.tensor {
            let a = self.reference(a)?;
            let b = self.reference(b)?;
            a.tensor(&b).map_err(engine)?
        } else if let Some((a, n)) = &raw.shift {
            self.reference(a)?.shift(*n)
        } else if let Some((a, e)) = &raw.frobenius {
            self.reference(a)?.frobenius(*e).map_err(engine)?
        } else {
            self.raw_complex(name, raw, span.clone())?
        };
        self.active.remove(name);
        self.done.insert(name.to_string(), c.clone());
        Ok(c)
    }

    fn raw_complex(&self, name: &str, raw: &RawComplex, span: Range<usize>) -> Result<FreeComplex, CliError> {
        let src = self.src;
        let poly = self.ring.poly_ring();
        let lo = raw.lo.unwrap_or(0);
        let shifts = raw.shifts.clone().unwrap_or_default();
        let grids = raw.differentials.as_deref().unwrap_or(&[]);
        if grids.len() != shifts.len().saturating_sub(1) {
            return Err(src.error_at(
                span,
                "bad_complex",
                format!("complex \"{name}\" has {} modules but {} differentials", shifts.len(), grids.len()),
            ));
        }
        let mut diffs = Vec::with_capacity(grids.len());
        for (k, grid) in grids.iter().enumerate() {
            let degree = lo + k as i64 + 1;
            let (rows, cols) = (shifts[k].len(), shifts[k + 1].len());
            if grid.len() != rows || grid.iter().any(|r| r.len() != cols) {
                return Err(src.error_at(
                    span.clone(),
                    "bad_complex",
                    format!("d_{degree} of complex \"{name}\" must be a {rows}x{cols} grid"),
                ));
            }
            let mut m = Matrix::zero(poly, rows, cols);
            for (r, row) in grid.iter().enumerate() {
                for (c, s) in row.iter().enumerate() {
                    m.set(r, c, src.poly(poly, s)?);
                }
            }
            diffs.push(m);
        }
        let x = FreeComplex::new_unchecked(self.ring, lo, shifts, diffs)
            .map_err(|e| src.engine_error_at(span.clone(), e))?;
        match x.validate() {
            Ok(()) => Ok(x),
            Err(Violation::Inhomogeneous { degree, row, col }) => {
                let s = &grids[(degree - lo - 1) as usize][row][col];
                Err(src.error_at(
                    s.span(),
                    "inhomogeneous",
                    format!("entry ({row}, {col}) of d_{degree} in complex \"{name}\" has the wrong degree"),
                ))
            }
            Err(Violation::NonzeroComposite { degree, row, col }) => Err(src.error_at(
                span,
                "not_a_complex",
                format!(
                    "complex \"{name}\": d_{} * d_{degree} is nonzero at row {row}, column {col}",
                    degree - 1
                ),
            )),
        }
    }
}
