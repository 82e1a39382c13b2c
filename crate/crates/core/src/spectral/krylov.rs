//! Dimension of the walk module `span{M^i e_a}`, computed exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::hamiltonian::Hamiltonian;

/// Rank over the rationals of `[e_a, M e_a, M^2 e_a, ...]`.
///
/// Krylov vectors are appended one at a time and reduced against an
/// integer echelon basis; the first dependent vector ends the sequence,
/// since every later power lies in the same span.
pub fn walk_module_dimension(h: &Hamiltonian, a: usize) -> usize {
    let n = h.dim();
    assert!(a < n, "vertex {a} out of range for order {n}");
    let m = h.entries();

    let mut basis: Vec<(usize, Vec<BigInt>)> = Vec::new();
    let mut current = vec![BigInt::zero(); n];
    current[a] = BigInt::one();

    while basis.len() < n {
        let mut v = current.clone();
        for (pivot, row) in &basis {
            if v[*pivot].is_zero() {
                continue;
            }
            let scale_v = row[*pivot].clone();
            let scale_r = v[*pivot].clone();
            for (x, r) in v.iter_mut().zip(row) {
                *x = &*x * &scale_v - &scale_r * r;
            }
            normalize(&mut v);
        }
        match v.iter().position(|x| !x.is_zero()) {
            Some(pivot) => basis.push((pivot, v)),
            None => break,
        }
        current = (0..n)
            .map(|i| {
                m.row(i)
                    .iter()
                    .zip(&current)
                    .filter(|(x, _)| !x.is_zero())
                    .map(|(x, y)| x * y)
                    .sum()
            })
            .collect();
    }
    basis.len()
}

fn normalize(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in v.iter_mut() {
                *x = -&*x;
            }
        }
    }
}
