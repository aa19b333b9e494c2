//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use frobchi::{BigRational, FreeComplex, FreeModule, FreeModuleVector, PolyRing, Polynomial, QuotientRing};

/// Homogenized cyclic-n generators in `F_p[x_0..x_{n-1}, h]`.
pub fn cyclic_ideal(p: u64, n: usize) -> (FreeModule, Vec<FreeModuleVector>) {
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).chain(["h".to_string()]).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let ring = PolyRing::degrevlex(p, &refs).expect("valid ring");
    let var = |i: usize| Polynomial::var(&ring, i % n);
    let h = Polynomial::var(&ring, n);
    let mut gens = Vec::new();
    for k in 1..n {
        let mut f = Polynomial::zero(&ring);
        for i in 0..n {
            let mut t = Polynomial::one(&ring);
            for j in 0..k {
                t = t.mul(&var(i + j)).expect("same ring");
            }
            f = f.add(&t).expect("same ring");
        }
        gens.push(f);
    }
    let mut last = Polynomial::one(&ring);
    for i in 0..n {
        last = last.mul(&var(i)).expect("same ring");
    }
    gens.push(last.sub(&h.pow(n as u32)).expect("same ring"));
    let module = FreeModule::new(&ring, vec![0]);
    let vectors = gens.iter().map(|f| module.embed(f, 0)).collect();
    (module, vectors)
}

pub fn ring(p: u64, vars: &[&str], ideal: &[&str]) -> Arc<QuotientRing> {
    frobchi::make_ring(p, vars, ideal).expect("valid ring")
}

pub fn koszul(ring: &Arc<QuotientRing>, elems: &[&str]) -> FreeComplex {
    let es: Vec<Polynomial> = elems.iter().map(|s| ring.parse(s).expect("parses")).collect();
    FreeComplex::koszul(ring, &es).expect("homogeneous")
}

/// `c_e = Σ_i a_i p^((t-i) e)` for `e = 0..=e_max`.
pub fn synthetic_series(p: u64, t: i64, a: &[i64], e_max: usize) -> Vec<BigRational> {
    (0..=e_max)
        .map(|e| {
            a.iter()
                .enumerate()
                .map(|(i, &ai)| BigRational::from_integer(ai.into()) * frobchi::vandermonde::rational_power(p, (t - i as i64) * e as i64))
                .sum()
        })
        .collect()
}
