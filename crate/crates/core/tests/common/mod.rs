//! Brute-force oracles shared by the integration tests. None of these call
//! into the code paths they are used to check.
#![allow(dead_code)]

use std::collections::BTreeMap;

use tatecalc::catalog::Signature;
use tatecalc::hopf::{multiply, Coefficient, Monomial, RingElement, RingPresentation};
use tatecalc::tate::IndexSequence;

/// `(p, q) ↦ multiplicity` for `M(GL_n)`, by summing over bitmasks.
pub fn gl_by_bitmask(n: u32) -> BTreeMap<(i64, i64), u64> {
    let mut out = BTreeMap::new();
    for mask in 0u64..1 << n {
        let (mut p, mut q) = (0i64, 0i64);
        for i in 1..=n as i64 {
            if mask >> (i - 1) & 1 == 1 {
                p += 2 * i - 1;
                q += i;
            }
        }
        *out.entry((p, q)).or_insert(0) += 1;
    }
    out
}

/// Coefficients of `[n m]_q`: `m`-subsets of `{1..n}` counted by
/// `Σ elements - m(m+1)/2`.
pub fn gaussian_by_subsets(n: u32, m: u32) -> Vec<u64> {
    let base = (m * (m + 1) / 2) as usize;
    let mut out = vec![0u64; (m * (n - m)) as usize + 1];
    for mask in 0u64..1 << n {
        if mask.count_ones() != m {
            continue;
        }
        let s: usize = (1..=n as usize).filter(|i| mask >> (i - 1) & 1 == 1).sum();
        out[s - base] += 1;
    }
    out
}

/// `(p, q) ↦ multiplicity` for `M(Gr(m,n))`, from the Gaussian oracle.
pub fn gr_by_subsets(m: u32, n: u32) -> BTreeMap<(i64, i64), u64> {
    gaussian_by_subsets(n, m)
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .map(|(k, c)| ((2 * k as i64, k as i64), c))
        .collect()
}

pub fn convolve(
    a: &BTreeMap<(i64, i64), u64>,
    b: &BTreeMap<(i64, i64), u64>,
) -> BTreeMap<(i64, i64), u64> {
    let mut out = BTreeMap::new();
    for (&(p, q), &x) in a {
        for (&(r, s), &y) in b {
            *out.entry((p + r, q + s)).or_insert(0) += x * y;
        }
    }
    out
}

/// `M(A(sig))` as a plain map, assembled from the oracles above.
pub fn a_by_oracle(sig: &Signature) -> BTreeMap<(i64, i64), u64> {
    let mut acc = gl_by_bitmask(sig.first());
    for w in sig.entries().windows(2) {
        acc = convolve(&acc, &gr_by_subsets(w[0], w[1]));
    }
    acc
}

pub fn motive_map(m: &tatecalc::tate::TateMotive) -> BTreeMap<(i64, i64), u64> {
    m.iter()
        .map(|(b, c)| ((b.p, b.q), u64::try_from(c).unwrap()))
        .collect()
}

pub fn signatures(max_len: usize, max_entry: u32) -> Vec<Signature> {
    Signature::all(max_len, max_entry)
}

pub fn basis_elements(ring: &RingPresentation) -> Vec<RingElement> {
    ring.basis(ring.range().count())
        .into_iter()
        .map(|s| RingElement::from_monomial(&Monomial::basis(s)))
        .collect()
}

pub fn seq(v: &[u32]) -> IndexSequence {
    IndexSequence::new(v.to_vec()).unwrap()
}

pub fn mono(v: &[u32]) -> Monomial {
    Monomial::new(seq(v), Coefficient::ONE)
}

pub fn product(x: &[u32], y: &[u32], ring: &RingPresentation) -> RingElement {
    multiply(&mono(x), &mono(y), ring).unwrap()
}
