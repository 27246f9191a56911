//! Constructors for the motives of `GL_n`, Grassmannians, Stiefel and flag
//! varieties, the automorphism bundles `A(n_1, …, n_r)` and the quotients
//! `X_m`, plus the splitting verifier.
//!
//! Every constructor returns summands with `p, q ≥ 0` and `0 ≤ 2q - p ≤ q`.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tate::{bidegree_d, Bidegree, HeightMode, IndexSequence, TateMotive};

/// Largest `n` for which subsets of `{1, …, n}` are enumerated.
pub const MAX_SUBSET_N: u32 = 40;

/// A flag signature `n_1 < n_2 < ⋯ < n_r` of nonnegative integers.
///
/// Only the first entry may be zero; `Fl(0, n_2, …)` is identified with
/// `Fl(n_2, …)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Signature(Vec<u32>);

impl Signature {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidArgument(
                "a signature needs at least one entry".into(),
            ));
        }
        if entries.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::NotIncreasing {
                what: "signature",
                values: entries.iter().map(|&n| n as i64).collect(),
            });
        }
        Ok(Self(entries))
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> u32 {
        self.0[0]
    }

    pub fn last(&self) -> u32 {
        self.0[self.0.len() - 1]
    }

    /// `(n_1, …, n_{r-1})`, or `None` when `r = 1`.
    pub fn prefix(&self) -> Option<Signature> {
        (self.0.len() > 1).then(|| Signature(self.0[..self.0.len() - 1].to_vec()))
    }

    /// `(m, n_1, …, n_r)`; needs `m < n_1`.
    pub fn prepend(&self, m: u32) -> Result<Signature> {
        let mut v = vec![m];
        v.extend_from_slice(&self.0);
        Signature::new(v)
    }

    /// All signatures of length `1..=max_len` with entries in `0..=max_entry`.
    pub fn all(max_len: usize, max_entry: u32) -> Vec<Signature> {
        let mut out = Vec::new();
        for len in 1..=max_len {
            for combo in (0..=max_entry).combinations(len) {
                out.push(Signature(combo));
            }
        }
        out
    }
}

impl FromStr for Signature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for part in s.split(',') {
            let part = part.trim();
            let v: i64 = part.parse().map_err(|_| {
                Error::InvalidArgument(format!("signature entry {part:?} is not an integer"))
            })?;
            if v < 0 {
                return Err(Error::Negative {
                    what: "signature",
                    values: vec![v],
                });
            }
            entries.push(v as u32);
        }
        Signature::new(entries)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.iter().map(|n| n.to_string()).join(","))
    }
}

impl<'de> Deserialize<'de> for Signature {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Signature::new(Vec::<u32>::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// Strictly increasing `m`-sequences in `{1, …, n}`, lexicographically.
pub fn increasing_sequences(m: u32, n: u32) -> impl Iterator<Item = IndexSequence> {
    (1..=n)
        .combinations(m as usize)
        .map(|c| IndexSequence::new(c).expect("combinations are increasing"))
}

/// Weakly increasing `m`-tuples `λ_1 ≤ ⋯ ≤ λ_m ≤ bound`, lexicographically.
pub fn weakly_increasing_tuples(m: u32, bound: u32) -> Vec<Vec<u32>> {
    (0..=bound)
        .combinations_with_replacement(m as usize)
        .collect()
}

fn check_subset_size(n: u32) -> Result<()> {
    if n > MAX_SUBSET_N {
        return Err(Error::InvalidArgument(format!(
            "n = {n} would enumerate 2^{n} subsets; the limit is n ≤ {MAX_SUBSET_N}"
        )));
    }
    Ok(())
}

fn subsets_motive(range: std::ops::RangeInclusive<u32>) -> TateMotive {
    let gens: Vec<u32> = range.collect();
    let mut out = TateMotive::zero();
    for mask in 0u64..(1u64 << gens.len()) {
        let b = (0..gens.len())
            .filter(|k| mask >> k & 1 == 1)
            .fold(Bidegree::ZERO, |acc, k| {
                let i = gens[k] as i64;
                acc + Bidegree::new(2 * i - 1, i)
            });
        out.insert(b, BigUint::one());
    }
    out
}

/// `M(GL_n) = ⊕_I R(d(I))` over all strictly increasing `I ⊆ {1, …, n}`.
pub fn motive_gl(n: u32) -> Result<TateMotive> {
    check_subset_size(n)?;
    Ok(subsets_motive(1..=n))
}

/// Counts of weakly increasing `m`-tuples bounded by `n - m`, by their sum,
/// via the `q`-Pascal rule `G(n,m) = G(n-1,m-1) + q^m·G(n-1,m)`.
fn box_partition_counts(m: u32, n: u32) -> Vec<BigUint> {
    let (m, n) = (m as usize, n as usize);
    // row[k] holds G(j, k) for the current j
    let mut row: Vec<Vec<BigUint>> = vec![Vec::new(); m + 1];
    row[0] = vec![BigUint::one()];
    for j in 1..=n {
        for k in (1..=m.min(j)).rev() {
            let mut next = row[k - 1].clone();
            let shifted = &row[k];
            if next.len() < shifted.len() + k {
                next.resize(shifted.len() + k, BigUint::zero());
            }
            for (d, c) in shifted.iter().enumerate() {
                next[d + k] += c;
            }
            row[k] = next;
        }
    }
    std::mem::take(&mut row[m])
}

/// `M(Gr(m,n)) = ⊕_λ R(N(λ))[2N(λ)]` over `λ_1 ≤ ⋯ ≤ λ_m ≤ n - m`.
pub fn motive_gr(m: u32, n: u32) -> Result<TateMotive> {
    if m > n {
        return Err(Error::InvalidArgument(format!(
            "Gr(m,n) needs m ≤ n, got m={m}, n={n}"
        )));
    }
    Ok(TateMotive::from_summands(
        box_partition_counts(m, n)
            .into_iter()
            .enumerate()
            .map(|(big_n, c)| (Bidegree::new(2 * big_n as i64, big_n as i64), c)),
    ))
}

/// `M(Fl(n_1, …, n_r)) = ⊗_k M(Gr(n_k, n_{k+1}))`.
pub fn motive_fl(sig: &Signature) -> TateMotive {
    sig.entries()
        .windows(2)
        .map(|w| motive_gr(w[0], w[1]).expect("signature is increasing"))
        .fold(TateMotive::unit(), |acc, g| acc.tensor(&g))
}

/// `M(V(m,n)) = ⊕_S R(d(S))` over subsets `S ⊆ {n-m+1, …, n}`.
pub fn motive_v(m: u32, n: u32) -> Result<TateMotive> {
    if m > n {
        return Err(Error::InvalidArgument(format!(
            "V(m,n) needs m ≤ n, got m={m}, n={n}"
        )));
    }
    check_subset_size(m)?;
    Ok(subsets_motive((n - m + 1)..=n))
}

/// `M(A(n_1, …, n_r)) = M(GL_{n_1}) ⊗ M(Fl(n_1, …, n_r))`.
pub fn motive_a(sig: &Signature) -> Result<TateMotive> {
    Ok(motive_gl(sig.first())?.tensor(&motive_fl(sig)))
}

/// Reduced motive of `X_m(n_1, …, n_r)`:
/// `⊕ M(Fl(n_1, …, n_r))(d(I))` over `I ⊆ {1, …, n_1}` with `|I| ≥ m`.
pub fn reduced_motive_x(m: u32, sig: &Signature) -> Result<TateMotive> {
    let n1 = sig.first();
    if m > n1 {
        return Err(Error::InvalidArgument(format!(
            "X_m(n_1, …) needs m ≤ n_1, got m={m}, n_1={n1}"
        )));
    }
    check_subset_size(n1)?;
    let fl = motive_fl(sig);
    let mut out = TateMotive::zero();
    for l in m..=n1 {
        for seq in increasing_sequences(l, n1) {
            out = out.direct_sum(&fl.twist(bidegree_d(&seq)));
        }
    }
    Ok(out)
}

/// One row of [`height_bijection`]: a weakly increasing tuple and the
/// strictly increasing sequence `(λ_1 + 1, …, λ_m + m)` it corresponds to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BijectionPair {
    pub tuple: Vec<u32>,
    pub sequence: IndexSequence,
}

impl BijectionPair {
    /// `d(1, …, m) + (2N(λ), N(λ)) = d(λ_1 + 1, …, λ_m + m)`.
    pub fn preserves_bidegree(&self) -> bool {
        let m = self.tuple.len() as u32;
        let big_n: i64 = self.tuple.iter().map(|&x| x as i64).sum();
        bidegree_d(&IndexSequence::initial(m)) + Bidegree::new(2 * big_n, big_n)
            == bidegree_d(&self.sequence)
    }
}

/// The map `λ ↦ (λ_1 + 1, …, λ_m + m)` from tuples bounded by `n_1 - m` to
/// strictly increasing `m`-sequences in `{1, …, n_1}`.
pub fn height_bijection(m: u32, n1: u32) -> Result<Vec<BijectionPair>> {
    if m > n1 {
        return Err(Error::InvalidArgument(format!(
            "height bijection needs m ≤ n_1, got m={m}, n_1={n1}"
        )));
    }
    Ok(weakly_increasing_tuples(m, n1 - m)
        .into_iter()
        .map(|tuple| {
            let seq = tuple.iter().zip(1..).map(|(&l, j)| l + j).collect();
            BijectionPair {
                sequence: IndexSequence::new(seq).expect("λ_j + j is strictly increasing"),
                tuple,
            }
        })
        .collect())
}

/// Compares the Chow-height-`m` summands of `A((m) ++ sig)` and `A(sig)`.
/// Returns `None` when equal, otherwise the first mismatch.
pub fn height_slices_mismatch(
    m: u32,
    sig: &Signature,
) -> Result<Option<(Bidegree, BigUint, BigUint)>> {
    let extended = sig.prepend(m)?;
    let h = m as i64;
    let lhs = motive_a(&extended)?.height_filter(h, HeightMode::Eq);
    let rhs = motive_a(sig)?.height_filter(h, HeightMode::Eq);
    Ok(lhs.first_mismatch(&rhs))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceCount {
    pub m: u32,
    pub summands: serde_json::Number,
    /// Every summand of the piece has Chow height exactly `m`.
    pub height_exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub p: i64,
    pub q: i64,
    pub lhs: serde_json::Number,
    pub rhs: serde_json::Number,
}

/// Result of checking `M(GL_n) ⊖ R(0)[0] = ⊕_{m=1}^n M(Gr(m,n))(d(1, …, m))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingReport {
    pub n: u32,
    pub pieces: Vec<PieceCount>,
    pub lhs_summands: serde_json::Number,
    pub rhs_summands: serde_json::Number,
    pub pass: bool,
    pub first_mismatch: Option<Mismatch>,
}

fn number(x: &BigUint) -> serde_json::Number {
    x.to_string().parse().expect("decimal digits")
}

impl SplittingReport {
    pub fn to_text(&self) -> String {
        let mut s = format!("{:>4} {:>12} {:>8}\n", "m", "summands", "height");
        for piece in &self.pieces {
            s.push_str(&format!(
                "{:>4} {:>12} {:>8}\n",
                piece.m,
                piece.summands.to_string(),
                if piece.height_exact { "ok" } else { "BAD" }
            ));
        }
        s.push_str(&self.verdict());
        s.push('\n');
        s
    }

    pub fn verdict(&self) -> String {
        match (&self.first_mismatch, self.pass) {
            (None, true) => format!("PASS ({} summands matched)", self.lhs_summands),
            (Some(mm), _) => format!(
                "FAIL: first mismatch at ({},{}): M(GL_{}) has {}, the Grassmannian pieces have {}",
                mm.p, mm.q, self.n, mm.lhs, mm.rhs
            ),
            (None, false) => "FAIL: a piece has summands outside its Chow height".to_string(),
        }
    }
}

/// Checks the splitting of the reduced motive of `GL_n` into twisted
/// Grassmannian pieces, one per Chow height `m = 1, …, n`.
pub fn verify_splitting(n: u32) -> Result<SplittingReport> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "verify_splitting needs n ≥ 1".into(),
        ));
    }
    let lhs = motive_gl(n)?.difference(&TateMotive::unit())?;
    let mut rhs = TateMotive::zero();
    let mut pieces = Vec::new();
    for m in 1..=n {
        let piece = motive_gr(m, n)?.twist(bidegree_d(&IndexSequence::initial(m)));
        let height_exact = piece.height_filter(m as i64, HeightMode::Eq) == piece;
        pieces.push(PieceCount {
            m,
            summands: number(&piece.rank()),
            height_exact,
        });
        rhs = rhs.direct_sum(&piece);
    }
    let first_mismatch = lhs.first_mismatch(&rhs).map(|(b, x, y)| Mismatch {
        p: b.p,
        q: b.q,
        lhs: number(&x),
        rhs: number(&y),
    });
    let pass = first_mismatch.is_none() && pieces.iter().all(|p| p.height_exact);
    Ok(SplittingReport {
        n,
        pieces,
        lhs_summands: number(&lhs.rank()),
        rhs_summands: number(&rhs.rank()),
        pass,
        first_mismatch,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn motive(pairs: &[(i64, i64, u32)]) -> TateMotive {
        TateMotive::from_summands(pairs.iter().map(|&(p, q, m)| (Bidegree::new(p, q), m)))
    }

    fn sig(v: &[u32]) -> Signature {
        Signature::new(v.to_vec()).unwrap()
    }

    #[test]
    fn gl_examples() {
        assert_eq!(motive_gl(0).unwrap(), TateMotive::unit());
        assert_eq!(motive_gl(1).unwrap(), motive(&[(0, 0, 1), (1, 1, 1)]));
        assert_eq!(
            motive_gl(2).unwrap(),
            motive(&[(0, 0, 1), (1, 1, 1), (3, 2, 1), (4, 3, 1)])
        );
        assert!(motive_gl(MAX_SUBSET_N + 1).is_err());
    }

    #[test]
    fn gr_examples() {
        assert_eq!(motive_gr(1, 2).unwrap(), motive(&[(0, 0, 1), (2, 1, 1)]));
        assert_eq!(motive_gr(2, 2).unwrap(), TateMotive::unit());
        assert_eq!(
            motive_gr(2, 4).unwrap(),
            motive(&[(0, 0, 1), (2, 1, 1), (4, 2, 2), (6, 3, 1), (8, 4, 1)])
        );
        assert_eq!(motive_gr(0, 5).unwrap(), TateMotive::unit());
        assert!(motive_gr(3, 2).is_err());
    }

    #[test]
    fn gr_matches_explicit_tuples() {
        for n in 0..=7 {
            for m in 0..=n {
                let direct = TateMotive::from_summands(
                    weakly_increasing_tuples(m, n - m).into_iter().map(|t| {
                        let s: u32 = t.iter().sum();
                        (Bidegree::new(2 * s as i64, s as i64), 1u32)
                    }),
                );
                assert_eq!(motive_gr(m, n).unwrap(), direct, "Gr({m},{n})");
            }
        }
    }

    #[test]
    fn fl_examples() {
        assert_eq!(motive_fl(&sig(&[2, 4])), motive_gr(2, 4).unwrap());
        assert_eq!(
            motive_fl(&sig(&[1, 2, 3])),
            motive_gr(1, 2).unwrap().tensor(&motive_gr(2, 3).unwrap())
        );
        assert_eq!(motive_fl(&sig(&[0, 1, 2])), motive_gr(1, 2).unwrap());
        assert_eq!(motive_fl(&sig(&[3])), TateMotive::unit());
    }

    #[test]
    fn v_examples() {
        for n in 0..=5 {
            assert_eq!(motive_v(n, n).unwrap(), motive_gl(n).unwrap());
        }
        assert_eq!(motive_v(1, 3).unwrap(), motive(&[(0, 0, 1), (5, 3, 1)]));
        assert_eq!(
            motive_v(2, 3).unwrap(),
            motive(&[(0, 0, 1), (3, 2, 1), (5, 3, 1), (8, 5, 1)])
        );
        assert!(motive_v(4, 3).is_err());
    }

    #[test]
    fn a_examples() {
        for n in 0..=4 {
            assert_eq!(motive_a(&sig(&[n])).unwrap(), motive_gl(n).unwrap());
        }
        assert_eq!(
            motive_a(&sig(&[1, 2])).unwrap(),
            motive(&[(0, 0, 1), (1, 1, 1), (2, 1, 1), (3, 2, 1)])
        );
        assert_eq!(
            motive_a(&sig(&[0, 1, 2])).unwrap(),
            motive_fl(&sig(&[1, 2]))
        );
    }

    #[test]
    fn x_examples() {
        assert_eq!(
            reduced_motive_x(1, &sig(&[1, 2])).unwrap(),
            motive(&[(1, 1, 1), (3, 2, 1)])
        );
        assert_eq!(
            reduced_motive_x(2, &sig(&[2, 3])).unwrap(),
            motive(&[(4, 3, 1), (6, 4, 1), (8, 5, 1)])
        );
        for (m, n) in [(1, 3), (2, 4), (3, 5)] {
            assert_eq!(
                reduced_motive_x(m, &sig(&[m, n])).unwrap(),
                motive_gr(m, n)
                    .unwrap()
                    .twist(bidegree_d(&IndexSequence::initial(m)))
            );
        }
        assert!(reduced_motive_x(3, &sig(&[2, 3])).is_err());
    }

    #[test]
    fn bijection_examples() {
        let pairs = |m, n| -> Vec<(Vec<u32>, Vec<u32>)> {
            height_bijection(m, n)
                .unwrap()
                .into_iter()
                .map(|p| (p.tuple, p.sequence.as_slice().to_vec()))
                .collect()
        };
        assert_eq!(pairs(1, 2), vec![(vec![0], vec![1]), (vec![1], vec![2])]);
        assert_eq!(
            pairs(2, 3),
            vec![
                (vec![0, 0], vec![1, 2]),
                (vec![0, 1], vec![1, 3]),
                (vec![1, 1], vec![2, 3])
            ]
        );
        assert_eq!(pairs(0, 4), vec![(vec![], vec![])]);
    }

    #[test]
    fn splitting_small_cases() {
        let r = verify_splitting(1).unwrap();
        assert!(r.pass);
        assert_eq!(r.verdict(), "PASS (1 summands matched)");
        let r = verify_splitting(2).unwrap();
        assert!(r.pass);
        let counts: Vec<String> = r.pieces.iter().map(|p| p.summands.to_string()).collect();
        assert_eq!(counts, ["2", "1"]);
        let r = verify_splitting(10).unwrap();
        assert_eq!(r.verdict(), "PASS (1023 summands matched)");
    }

    #[test]
    fn signature_parsing() {
        assert_eq!("1,2,3".parse::<Signature>().unwrap(), sig(&[1, 2, 3]));
        assert_eq!(" 0, 4 ".parse::<Signature>().unwrap(), sig(&[0, 4]));
        assert!(matches!(
            "2,1".parse::<Signature>(),
            Err(Error::NotIncreasing { .. })
        ));
        assert!(matches!(
            "1,1".parse::<Signature>(),
            Err(Error::NotIncreasing { .. })
        ));
        assert!("-1,2".parse::<Signature>().is_err());
        assert!("a".parse::<Signature>().is_err());
        assert!(Signature::new(vec![]).is_err());
    }
}
