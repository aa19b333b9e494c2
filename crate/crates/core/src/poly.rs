//! Multivariate polynomials over `F_p` in canonical sorted-term form.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::field::PrimeField;
use crate::monomial::{Monomial, MonomialOrder};

/// The ambient ring `F_p[x_1, ..., x_n]` with a fixed monomial order.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: PrimeField,
    vars: Vec<String>,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new(p: u64, vars: &[&str], order: MonomialOrder) -> Result<Arc<Self>> {
        let field = PrimeField::new(p)?;
        if order.nvars() != vars.len() {
            return Err(AlgebraError::Structural(format!(
                "order on {} variables for a ring with {}",
                order.nvars(),
                vars.len()
            )));
        }
        for (i, v) in vars.iter().enumerate() {
            let valid = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(AlgebraError::Structural(format!("invalid variable name {v:?}")));
            }
            if vars[..i].contains(v) {
                return Err(AlgebraError::Structural(format!("duplicate variable {v:?}")));
            }
        }
        Ok(Arc::new(PolyRing {
            field,
            vars: vars.iter().map(|s| s.to_string()).collect(),
            order,
        }))
    }

    /// `F_p[vars]` under degrevlex with the listed precedence.
    pub fn degrevlex(p: u64, vars: &[&str]) -> Result<Arc<Self>> {
        Self::new(p, vars, MonomialOrder::degrevlex(vars.len()))
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn characteristic(&self) -> u64 {
        self.field.characteristic()
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }
}

#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    /// Nonzero coefficients, strictly descending in the ring's order.
    terms: Vec<(Monomial, u64)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring)
            && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(AlgebraError::Structural(
            "polynomials from different rings".into(),
        ))
    }
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: i64) -> Self {
        let c = ring.field.reduce_signed(c);
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, 1)
    }

    pub fn var(ring: &Arc<PolyRing>, index: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), index), 1)
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial, c: u64) -> Self {
        let c = c % ring.characteristic();
        Polynomial {
            ring: ring.clone(),
            terms: if c == 0 { Vec::new() } else { vec![(m, c)] },
        }
    }

    /// Builds a polynomial from arbitrary terms: sorts, merges and drops zeros.
    pub fn from_terms(ring: &Arc<PolyRing>, mut terms: Vec<(Monomial, u64)>) -> Self {
        let ord = ring.order();
        let f = ring.field();
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, u64)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            let c = c % f.characteristic();
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = f.add(last.1, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    /// Caller guarantees canonical form.
    pub(crate) fn from_sorted_terms(ring: &Arc<PolyRing>, terms: Vec<(Monomial, u64)>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, u64)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, u64)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, u64)> {
        self.terms.first()
    }

    /// Total degree of the leading term (the maximal degree, orders being graded).
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|t| t.0.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => self.terms.iter().all(|(m, _)| m.degree() == m0.degree()),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn neg(&self) -> Self {
        let f = self.ring.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(*c))).collect(),
        }
    }

    pub fn scale(&self, c: u64) -> Self {
        let f = self.ring.field();
        let c = c % f.characteristic();
        if c == 0 {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), f.mul(*a, c))).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_ring(&self.ring, &other.ring)?;
        Ok(self.merge(other, false))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        same_ring(&self.ring, &other.ring)?;
        Ok(self.merge(other, true))
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let f = self.ring.field();
        let ord = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let tweak = |c: u64| if negate { f.neg(c) } else { c };
        while i < a.len() && j < b.len() {
            match ord.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), tweak(b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = f.add(a[i].1, tweak(b[j].1));
                    if c != 0 {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), tweak(*c))));
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        same_ring(&self.ring, &other.ring)?;
        let f = self.ring.field();
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                terms.push((ma.mul(mb), f.mul(*ca, *cb)));
            }
        }
        Ok(Self::from_terms(&self.ring, terms))
    }

    pub fn mul_monomial(&self, m: &Monomial, c: u64) -> Self {
        let f = self.ring.field();
        let c = c % f.characteristic();
        if c == 0 {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(a, b)| (a.mul(m), f.mul(*b, c))).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..k {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Parses the text grammar: `+`/`-` separated terms, each an optional
    /// integer coefficient and `*`-separated variable powers (`3*x^2*y`).
    pub fn parse(ring: &Arc<PolyRing>, text: &str) -> Result<Self> {
        Parser::new(ring, text).parse()
    }
}

/// `f^(p^e)`: since the characteristic is `p`, raising to `p^e` fixes every
/// coefficient and multiplies every exponent by `p^e`.
pub fn entry_twist(f: &Polynomial, e: u32) -> Result<Polynomial> {
    if e == 0 || f.is_zero() {
        return Ok(f.clone());
    }
    let q = frobenius_power(f.ring.characteristic(), e)?;
    let terms = f
        .terms
        .iter()
        .map(|(m, c)| Ok((m.scale_exponents(q)?, *c)))
        .collect::<Result<Vec<_>>>()?;
    // The order is multiplicative, so m > n implies m^q > n^q.
    Ok(Polynomial::from_sorted_terms(&f.ring, terms))
}

/// `p^e`, failing loudly when it leaves the `u64` range.
pub fn frobenius_power(p: u64, e: u32) -> Result<u64> {
    p.checked_pow(e)
        .ok_or_else(|| AlgebraError::ExponentOverflow(format!("{p}^{e} overflows")))
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            if *c != 1 || m.is_one() {
                factors.push(c.to_string());
            }
            for (v, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.vars[v].clone()),
                    _ => factors.push(format!("{}^{}", self.ring.vars[v], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    ring: &'a Arc<PolyRing>,
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(ring: &'a Arc<PolyRing>, text: &'a str) -> Self {
        Parser {
            ring,
            src: text.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, column: usize, message: impl Into<String>) -> Result<T> {
        Err(AlgebraError::Parse {
            column: column + 1,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(&b) = self.src.get(self.pos) {
            if !b.is_ascii_digit() {
                break;
            }
            value = match value.checked_mul(10).and_then(|v| v.checked_add((b - b'0') as u64)) {
                Some(v) => v,
                None => return self.err(start, "integer literal too large"),
            };
            self.pos += 1;
        }
        if self.pos == start {
            return self.err(start, "expected an integer");
        }
        Ok(value)
    }

    fn parse(mut self) -> Result<Polynomial> {
        let p = self.ring.characteristic();
        let n = self.ring.nvars();
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let mut negative = false;
            match self.peek() {
                None if first => return self.err(self.pos, "empty polynomial"),
                None => break,
                Some(b'+') => self.pos += 1,
                Some(b'-') => {
                    negative = true;
                    self.pos += 1;
                }
                Some(_) if first => {}
                Some(c) => return self.err(self.pos, format!("expected '+' or '-', found {:?}", c as char)),
            }
            first = false;
            let mut coeff: u64 = 1;
            let mut exps = vec![0u32; n];
            let mut factors = 0;
            loop {
                let start = {
                    self.skip_ws();
                    self.pos
                };
                match self.peek() {
                    Some(b) if b.is_ascii_digit() => {
                        let v = self.number()? % p;
                        coeff = coeff * v % p;
                    }
                    Some(b) if b.is_ascii_alphabetic() || b == b'_' => {
                        while self
                            .src
                            .get(self.pos)
                            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_')
                        {
                            self.pos += 1;
                        }
                        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                        let Some(v) = self.ring.var_index(name) else {
                            return self.err(start, format!("unknown variable {name:?}"));
                        };
                        let mut e = 1u64;
                        if self.peek() == Some(b'^') {
                            self.pos += 1;
                            self.skip_ws();
                            e = self.number()?;
                        }
                        let total = exps[v] as u64 + e;
                        if total > crate::monomial::MAX_EXPONENT as u64 {
                            return self.err(start, "exponent too large");
                        }
                        exps[v] = total as u32;
                    }
                    Some(c) => return self.err(start, format!("unexpected {:?}", c as char)),
                    None => return self.err(start, "expected a term"),
                }
                factors += 1;
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                } else {
                    break;
                }
            }
            debug_assert!(factors > 0);
            if negative {
                coeff = (p - coeff) % p;
            }
            terms.push((Monomial::from_exponents(&exps), coeff));
        }
        Ok(Polynomial::from_terms(self.ring, terms))
    }
}
