//! Rank-level shadow of complex realization.
//!
//! Integral cohomology of `U(n)`, Grassmannians and the Miller filtration
//! quotients is free, so everything here is a table of ranks keyed by
//! cohomological degree. The generator `ρ_i` realizes to the unitary class
//! `ρ^u_i` in degree `2i - 1` up to a sign, which rank tables cannot see.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::catalog::{increasing_sequences, motive_gr, weakly_increasing_tuples};
use crate::error::{Error, Result};
use crate::poly::Poly2;
use crate::tate::TateMotive;

/// Ranks of a graded free abelian group, keyed by degree. Zero ranks are
/// never stored.
/// Serializes as a JSON object from degree to rank.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RankTable(BTreeMap<i64, BigUint>);

impl Serialize for RankTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = BTreeMap::new();
        for (d, r) in self.iter() {
            let n: serde_json::Number = r.to_string().parse().map_err(serde::ser::Error::custom)?;
            map.insert(d, n);
        }
        map.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RankTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let map = BTreeMap::<i64, serde_json::Number>::deserialize(d)?;
        let mut out = RankTable::new();
        for (deg, n) in map {
            let r: BigUint = n
                .to_string()
                .parse()
                .map_err(|_| serde::de::Error::custom(format!("bad rank {n}")))?;
            if r.is_zero() {
                return Err(serde::de::Error::custom("ranks must be positive"));
            }
            out.add(deg, r);
        }
        Ok(out)
    }
}

impl RankTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, degree: i64, rank: BigUint) {
        if rank.is_zero() {
            return;
        }
        *self.0.entry(degree).or_default() += rank;
    }

    pub fn rank(&self, degree: i64) -> BigUint {
        self.0.get(&degree).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigUint)> + '_ {
        self.0.iter().map(|(&d, r)| (d, r))
    }

    pub fn total(&self) -> BigUint {
        self.0.values().sum()
    }

    pub fn shift(&self, by: i64) -> RankTable {
        RankTable(self.0.iter().map(|(&d, r)| (d + by, r.clone())).collect())
    }

    pub fn sum(&self, other: &RankTable) -> RankTable {
        let mut out = self.clone();
        for (d, r) in other.iter() {
            out.add(d, r.clone());
        }
        out
    }

    /// Degreewise convolution, the rank table of a tensor product.
    pub fn convolve(&self, other: &RankTable) -> RankTable {
        let mut out = RankTable::new();
        for (a, x) in self.iter() {
            for (b, y) in other.iter() {
                out.add(a + b, x * y);
            }
        }
        out
    }

    pub fn first_mismatch(&self, other: &RankTable) -> Option<(i64, BigUint, BigUint)> {
        let degrees: std::collections::BTreeSet<i64> =
            self.0.keys().chain(other.0.keys()).copied().collect();
        degrees.into_iter().find_map(|d| {
            let (x, y) = (self.rank(d), other.rank(d));
            (x != y).then_some((d, x, y))
        })
    }

    pub fn to_table(&self) -> String {
        let mut s = format!("{:>6} {:>8}\n", "deg", "rank");
        for (d, r) in self.iter() {
            s.push_str(&format!("{d:>6} {r:>8}\n"));
        }
        s
    }
}

impl fmt::Display for RankTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (d, r)) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{d}:{r}")?;
        }
        f.write_str("}")
    }
}

impl<const N: usize> From<[(i64, u32); N]> for RankTable {
    fn from(pairs: [(i64, u32); N]) -> Self {
        let mut t = RankTable::new();
        for (d, r) in pairs {
            t.add(d, BigUint::from(r));
        }
        t
    }
}

fn check_range(m: u32, n: u32) -> Result<()> {
    if m > n {
        return Err(Error::InvalidArgument(format!(
            "need 0 ≤ m ≤ n, got m={m}, n={n}"
        )));
    }
    Ok(())
}

/// Ranks of `Λ^m(ρ^u_1, …, ρ^u_n)`: one class in degree `Σ (2i - 1)` per
/// `m`-subset `I ⊆ {1, …, n}`.
pub fn unitary_word_length_ranks(n: u32, m: u32) -> Result<RankTable> {
    check_range(m, n)?;
    let mut out = RankTable::new();
    for seq in increasing_sequences(m, n) {
        let degree: i64 = seq.iter().map(|i| 2 * i as i64 - 1).sum();
        out.add(degree, BigUint::one());
    }
    Ok(out)
}

/// Betti numbers of `Gr(m,n)(ℂ)`: one cell of degree `2N(λ)` per tuple
/// `λ_1 ≤ ⋯ ≤ λ_m ≤ n - m`.
pub fn grassmannian_betti(m: u32, n: u32) -> Result<RankTable> {
    check_range(m, n)?;
    let mut out = RankTable::new();
    for tuple in weakly_increasing_tuples(m, n - m) {
        let big_n: i64 = tuple.iter().map(|&x| x as i64).sum();
        out.add(2 * big_n, BigUint::one());
    }
    Ok(out)
}

/// Coefficients of the Gaussian binomial `[n m]_q`, computed from the
/// product `∏_{i=1}^m (1 - q^{n-i+1}) / (1 - q^i)`.
pub fn gaussian_binomial(n: u32, m: u32) -> Result<Vec<BigUint>> {
    check_range(m, n)?;
    let mut num = vec![BigInt::one()];
    for i in 1..=m {
        let e = (n - i + 1) as usize;
        let mut next = num.clone();
        next.resize(num.len() + e, BigInt::zero());
        for (k, c) in num.iter().enumerate() {
            next[k + e] -= c;
        }
        num = next;
    }
    for i in 1..=m {
        // f = g·(1 - q^i)  ⟺  g_k = f_k + g_{k-i}
        let i = i as usize;
        for k in i..num.len() {
            let prev = num[k - i].clone();
            num[k] += prev;
        }
        let tail = num.split_off(num.len() - i);
        if tail.iter().any(|c| !c.is_zero()) {
            return Err(Error::InvalidArgument(format!(
                "Gaussian binomial [{n} {m}] left a nonzero remainder"
            )));
        }
    }
    num.iter()
        .map(|c| {
            if c.is_negative() {
                Err(Error::InvalidArgument(format!(
                    "Gaussian binomial [{n} {m}] has a negative coefficient"
                )))
            } else {
                Ok(c.magnitude().clone())
            }
        })
        .collect()
}

/// Forgets weights: the rank in degree `p` is the sum of multiplicities of
/// all summands `(p, q)`.
pub fn realize_motive(a: &TateMotive) -> RankTable {
    let mut out = RankTable::new();
    for (b, m) in a.iter() {
        out.add(b.p, m.clone());
    }
    out
}

/// Ranks of the Miller filtration quotient `F_m(n)/F_{m-1}(n)`, the Thom
/// space of a rank-`m²` bundle over `Gr(m,n)(ℂ)`.
pub fn miller_quotient_ranks(m: u32, n: u32) -> Result<RankTable> {
    Ok(grassmannian_betti(m, n)?.shift((m * m) as i64))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThomLayer {
    pub m: u32,
    pub word_length: RankTable,
    pub shifted_betti: RankTable,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThomReport {
    pub n: u32,
    pub layers: Vec<ThomLayer>,
    pub pass: bool,
    pub first_failure: Option<String>,
}

impl ThomReport {
    pub fn verdict(&self) -> String {
        match &self.first_failure {
            None => format!("PASS (word lengths 0..={} matched)", self.n),
            Some(msg) => format!("FAIL: {msg}"),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for layer in &self.layers {
            s.push_str(&format!(
                "m={} {} {}\n",
                layer.m,
                if layer.pass { "ok " } else { "BAD" },
                layer.word_length
            ));
        }
        s.push_str(&self.verdict());
        s.push('\n');
        s
    }
}

/// For each `m ≤ n`, compares the word-length-`m` part of `Λ(ρ^u_1, …, ρ^u_n)`
/// with the Grassmannian `Gr(m,n)` shifted up by `m²`.
pub fn thom_decomposition_check(n: u32) -> Result<ThomReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("thom check needs n ≥ 1".into()));
    }
    let mut layers = Vec::new();
    let mut first_failure = None;
    for m in 0..=n {
        let word_length = unitary_word_length_ranks(n, m)?;
        let shifted_betti = miller_quotient_ranks(m, n)?;
        let mismatch = word_length.first_mismatch(&shifted_betti);
        if let (Some((d, x, y)), None) = (&mismatch, &first_failure) {
            first_failure = Some(format!(
                "n={n}, m={m}, degree {d}: word length gives {x}, shifted Gr({m},{n}) gives {y}"
            ));
        }
        layers.push(ThomLayer {
            m,
            pass: mismatch.is_none(),
            word_length,
            shifted_betti,
        });
    }
    Ok(ThomReport {
        n,
        pass: first_failure.is_none(),
        layers,
        first_failure,
    })
}

/// `Σ_{m=0}^n t^{m²} u^{m(m+1)/2} · G_{m,n}(t²u)`, with `G_{m,n}` the
/// Poincaré polynomial of `Gr(m,n)` in the variable `t²u`.
pub fn grassmannian_series(n: u32) -> Result<Poly2> {
    let mut out = Poly2::zero();
    for m in 0..=n {
        let g = motive_gr(m, n)?.poincare();
        let shift_p = (m * m) as i64;
        let shift_q = (m * (m + 1) / 2) as i64;
        out = &out + &g.shift(shift_p, shift_q);
    }
    Ok(out)
}

/// `∏_{i=1}^n (1 + t^{2i-1} u^i)`.
pub fn exterior_series(n: u32) -> Poly2 {
    (1..=n as i64)
        .map(|i| &Poly2::one() + &Poly2::monomial(1, 2 * i - 1, i))
        .product()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesReport {
    pub n: u32,
    pub terms: usize,
    pub pass: bool,
    /// `exterior - grassmannian`, zero when the identity holds.
    pub difference: Poly2,
}

/// Checks `∏ (1 + t^{2i-1}u^i) = Σ_m t^{m²}u^{m(m+1)/2} G_{m,n}(t²u)` exactly.
pub fn splitting_series_identity(n: u32) -> Result<SeriesReport> {
    let lhs = exterior_series(n);
    let rhs = grassmannian_series(n)?;
    let difference = &lhs - &rhs;
    Ok(SeriesReport {
        n,
        terms: lhs.num_terms(),
        pass: difference.is_zero(),
        difference,
    })
}
