#![allow(dead_code)]

pub mod oracle;

use std::sync::Arc;

use frobchi::{FreeComplex, Matrix, Monomial, PolyRing, Polynomial, PresentedModule, QuotientRing};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn parse(r: &Arc<QuotientRing>, s: &str) -> Polynomial {
    r.parse(s).unwrap()
}

pub fn koszul(r: &Arc<QuotientRing>, elems: &[&str]) -> FreeComplex {
    let es: Vec<Polynomial> = elems.iter().map(|s| parse(r, s)).collect();
    FreeComplex::koszul(r, &es).unwrap()
}

pub fn random_monomial(rng: &mut ChaCha8Rng, n: usize, d: u32) -> Monomial {
    let mut e = vec![0u32; n];
    for _ in 0..d {
        e[rng.gen_range(0..n)] += 1;
    }
    Monomial::from_exponents(&e)
}

/// Homogeneous of degree `d` with up to `terms` terms (possibly zero).
pub fn random_homogeneous(rng: &mut ChaCha8Rng, ring: &Arc<PolyRing>, d: u32, terms: usize) -> Polynomial {
    let p = ring.characteristic();
    let ts = (0..terms)
        .map(|_| (random_monomial(rng, ring.nvars(), d), rng.gen_range(1..p)))
        .collect();
    Polynomial::from_terms(ring, ts)
}

pub fn random_nonzero_homogeneous(rng: &mut ChaCha8Rng, ring: &Arc<PolyRing>, d: u32, terms: usize) -> Polynomial {
    loop {
        let f = random_homogeneous(rng, ring, d, terms.max(1));
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn names(n: usize) -> Vec<&'static str> {
    ["x", "y", "z", "w"][..n].to_vec()
}

pub fn random_prime(rng: &mut ChaCha8Rng) -> u64 {
    *[2u64, 3, 5].choose(rng).unwrap()
}

/// A polynomial ring, or a hypersurface in 3 or 4 variables.
pub fn random_ring(rng: &mut ChaCha8Rng, max_vars: usize) -> Arc<QuotientRing> {
    let p = random_prime(rng);
    let n = rng.gen_range(2..=max_vars);
    let poly = PolyRing::degrevlex(p, &names(n)).unwrap();
    if n >= 3 && rng.gen_bool(0.4) {
        let f = random_nonzero_homogeneous(rng, &poly, 2, 3);
        if let Ok(r) = QuotientRing::new(&poly, &[f]) {
            return r;
        }
    }
    QuotientRing::new(&poly, &[]).unwrap()
}

/// Koszul complexes on random forms, sometimes tensored, shifted or summed.
pub fn random_complex(rng: &mut ChaCha8Rng, ring: &Arc<QuotientRing>, max_len: usize) -> FreeComplex {
    let poly = ring.poly_ring();
    let k = rng.gen_range(1..=max_len);
    let elems: Vec<Polynomial> = (0..k)
        .map(|_| {
            let d = rng.gen_range(1..=2);
            random_homogeneous(rng, poly, d, 2)
        })
        .collect();
    let mut x = FreeComplex::koszul(ring, &elems).unwrap();
    match rng.gen_range(0..4) {
        0 => x = x.shift(rng.gen_range(-2..=2)),
        1 => {
            let g = random_nonzero_homogeneous(rng, poly, 1, 2);
            x = x.tensor(&FreeComplex::koszul(ring, &[g]).unwrap()).unwrap();
        }
        2 => x = x.direct_sum(&random_two_term(rng, ring)).unwrap(),
        _ => {}
    }
    x
}

/// `0 -> R^b -> R^a -> 0` in degrees 1, 0 with a random homogeneous matrix.
pub fn random_two_term(rng: &mut ChaCha8Rng, ring: &Arc<QuotientRing>) -> FreeComplex {
    let poly = ring.poly_ring();
    let a = rng.gen_range(1..=2);
    let b = rng.gen_range(1..=2);
    let tgt: Vec<i64> = (0..a).map(|_| rng.gen_range(0..=1)).collect();
    let src: Vec<i64> = (0..b).map(|_| rng.gen_range(1..=2)).collect();
    let mut m = Matrix::zero(poly, a, b);
    for r in 0..a {
        for c in 0..b {
            let d = src[c] - tgt[r];
            m.set(r, c, random_homogeneous(rng, poly, d as u32, 2));
        }
    }
    FreeComplex::new(ring, 0, vec![tgt, src], vec![m]).unwrap()
}

/// A finite length module: `x_i^{k} e_j` for every variable and generator,
/// plus a few random homogeneous relations.
pub fn random_finite_module(rng: &mut ChaCha8Rng, ring: &Arc<QuotientRing>) -> PresentedModule {
    let poly = ring.poly_ring();
    let n = ring.nvars();
    let rank = rng.gen_range(1..=2);
    let shifts: Vec<i64> = (0..rank).map(|_| rng.gen_range(0..=1)).collect();
    let module = frobchi::FreeModule::new(poly, shifts.clone());
    let mut rels = Vec::new();
    for j in 0..rank {
        for i in 0..n {
            let k = rng.gen_range(1..=4);
            let f = Polynomial::var(poly, i).pow(k);
            rels.push(module.embed(&f, j));
        }
    }
    for _ in 0..rng.gen_range(0..=3) {
        let deg = rng.gen_range(1..=4) + shifts.iter().max().unwrap();
        let entries: Vec<Polynomial> = shifts
            .iter()
            .map(|&s| random_homogeneous(rng, poly, (deg - s) as u32, 3))
            .collect();
        let v = module.from_entries(&entries).unwrap();
        if !v.is_zero() {
            rels.push(v);
        }
    }
    PresentedModule::new(ring, shifts, rels).unwrap()
}
