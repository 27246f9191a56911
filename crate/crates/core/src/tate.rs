//! Bidegrees, index sequences and pure Tate motives.
//!
//! A pure Tate motive `⊕ R(q_i)[p_i]` is stored as a multiset of bidegrees
//! `(p, q)`. Equality is multiset equality; the Poincaré polynomial is derived
//! on demand and is a complete invariant.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::Poly2;

/// Cohomological degree `p` and weight `q`.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub struct Bidegree {
    pub p: i64,
    pub q: i64,
}

impl Bidegree {
    pub const ZERO: Bidegree = Bidegree { p: 0, q: 0 };

    pub const fn new(p: i64, q: i64) -> Self {
        Self { p, q }
    }

    /// `2q - p`.
    pub const fn chow_height(self) -> i64 {
        2 * self.q - self.p
    }
}

pub fn chow_height(b: Bidegree) -> i64 {
    b.chow_height()
}

impl Add for Bidegree {
    type Output = Bidegree;
    fn add(self, rhs: Bidegree) -> Bidegree {
        Bidegree::new(self.p + rhs.p, self.q + rhs.q)
    }
}

impl Sub for Bidegree {
    type Output = Bidegree;
    fn sub(self, rhs: Bidegree) -> Bidegree {
        Bidegree::new(self.p - rhs.p, self.q - rhs.q)
    }
}

impl Neg for Bidegree {
    type Output = Bidegree;
    fn neg(self) -> Bidegree {
        Bidegree::new(-self.p, -self.q)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// Ext degree `l` together with a bidegree.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub struct Tridegree {
    pub l: i64,
    pub p: i64,
    pub q: i64,
}

impl Tridegree {
    pub const fn new(l: i64, p: i64, q: i64) -> Self {
        Self { l, p, q }
    }

    /// Total Chow height `2q - p - l`.
    pub const fn tch(self) -> i64 {
        2 * self.q - self.p - self.l
    }

    /// The bidegree `(l + p, q)` the spectral sequence converges to.
    pub const fn collapse(self) -> Bidegree {
        Bidegree::new(self.l + self.p, self.q)
    }
}

pub fn tch(t: Tridegree) -> i64 {
    t.tch()
}

impl Add for Tridegree {
    type Output = Tridegree;
    fn add(self, rhs: Tridegree) -> Tridegree {
        Tridegree::new(self.l + rhs.l, self.p + rhs.p, self.q + rhs.q)
    }
}

impl fmt::Display for Tridegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.l, self.p, self.q)
    }
}

/// A strictly increasing sequence of positive integers `i_1 < … < i_m`.
///
/// Ordered shortlex: shorter sequences first, then lexicographically.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct IndexSequence(Vec<u32>);

impl IndexSequence {
    pub fn new(indices: Vec<u32>) -> Result<Self> {
        if indices.contains(&0) {
            return Err(Error::InvalidArgument(format!(
                "index sequence entries must be positive, got {indices:?}"
            )));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::NotIncreasing {
                what: "index sequence",
                values: indices.iter().map(|&i| i as i64).collect(),
            });
        }
        Ok(Self(indices))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// `(1, 2, …, m)`.
    pub fn initial(m: u32) -> Self {
        Self((1..=m).collect())
    }

    /// Builds from a bitmask over `{1, …, 64}`; bit `k` stands for index `k + 1`.
    pub fn from_mask(mask: u64) -> Self {
        Self(
            (0..64)
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| b + 1)
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, i: u32) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn bidegree(&self) -> Bidegree {
        bidegree_d(self)
    }
}

impl<'de> Deserialize<'de> for IndexSequence {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<u32>::deserialize(deserializer)?;
        IndexSequence::new(raw).map_err(serde::de::Error::custom)
    }
}

impl PartialOrd for IndexSequence {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for IndexSequence {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for IndexSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str(")")
    }
}

/// `d(i_1, …, i_m) = (Σ (2 i_j - 1), Σ i_j)`; the empty sequence gives `(0,0)`.
pub fn bidegree_d(seq: &IndexSequence) -> Bidegree {
    seq.iter().fold(Bidegree::ZERO, |acc, i| {
        acc + Bidegree::new(2 * i as i64 - 1, i as i64)
    })
}

/// Which summands [`TateMotive::height_filter`] keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HeightMode {
    /// Chow height exactly `m`.
    Eq,
    /// Chow height at least `m`.
    Ge,
}

/// A pure Tate motive: a finite multiset of bidegrees.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TateMotive {
    // keyed by (q, p); every multiplicity is positive
    summands: BTreeMap<(i64, i64), BigUint>,
}

impl TateMotive {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The unit `R(0)[0]`.
    pub fn unit() -> Self {
        Self::tate(Bidegree::ZERO)
    }

    /// The single Tate motive `R(q)[p]`.
    pub fn tate(b: Bidegree) -> Self {
        let mut out = Self::zero();
        out.insert(b, BigUint::one());
        out
    }

    pub fn from_summands<I, M>(summands: I) -> Self
    where
        I: IntoIterator<Item = (Bidegree, M)>,
        M: Into<BigUint>,
    {
        let mut out = Self::zero();
        for (b, m) in summands {
            out.insert(b, m.into());
        }
        out
    }

    /// Adds `mult` copies of `R(b.q)[b.p]`.
    pub fn insert(&mut self, b: Bidegree, mult: BigUint) {
        if mult.is_zero() {
            return;
        }
        *self
            .summands
            .entry((b.q, b.p))
            .or_insert_with(BigUint::zero) += mult;
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    /// Summands in canonical `(q, p)` order.
    pub fn iter(&self) -> impl Iterator<Item = (Bidegree, &BigUint)> + '_ {
        self.summands
            .iter()
            .map(|(&(q, p), m)| (Bidegree::new(p, q), m))
    }

    pub fn multiplicity(&self, b: Bidegree) -> BigUint {
        self.summands.get(&(b.q, b.p)).cloned().unwrap_or_default()
    }

    /// Number of distinct bidegrees.
    pub fn distinct(&self) -> usize {
        self.summands.len()
    }

    /// Number of Tate summands counted with multiplicity.
    pub fn rank(&self) -> BigUint {
        self.summands.values().sum()
    }

    pub fn direct_sum(&self, other: &TateMotive) -> TateMotive {
        let mut out = self.clone();
        for (b, m) in other.iter() {
            out.insert(b, m.clone());
        }
        out
    }

    pub fn tensor(&self, other: &TateMotive) -> TateMotive {
        let mut out = TateMotive::zero();
        for (a, ma) in self.iter() {
            for (b, mb) in other.iter() {
                out.insert(a + b, ma * mb);
            }
        }
        out
    }

    /// Tensors with the single summand `R(b.q)[b.p]`.
    pub fn twist(&self, b: Bidegree) -> TateMotive {
        TateMotive {
            summands: self
                .iter()
                .map(|(a, m)| {
                    let s = a + b;
                    ((s.q, s.p), m.clone())
                })
                .collect(),
        }
    }

    pub fn height_filter(&self, m: i64, mode: HeightMode) -> TateMotive {
        TateMotive {
            summands: self
                .summands
                .iter()
                .filter(|(&(q, p), _)| {
                    let h = Bidegree::new(p, q).chow_height();
                    match mode {
                        HeightMode::Eq => h == m,
                        HeightMode::Ge => h >= m,
                    }
                })
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    /// The cone of the inclusion of `sub` into `self` as a sum of Tate
    /// summands, i.e. the multiset difference `self ⊖ sub`.
    pub fn cone_of_inclusion(sub: &TateMotive, whole: &TateMotive) -> Result<TateMotive> {
        let mut out = whole.clone();
        for (b, m) in sub.iter() {
            let key = (b.q, b.p);
            match out.summands.get_mut(&key) {
                Some(have) if *have >= *m => {
                    *have -= m;
                    if have.is_zero() {
                        out.summands.remove(&key);
                    }
                }
                _ => return Err(Error::NotASubmotive { bidegree: b }),
            }
        }
        Ok(out)
    }

    /// Multiset difference `self ⊖ sub`.
    pub fn difference(&self, sub: &TateMotive) -> Result<TateMotive> {
        TateMotive::cone_of_inclusion(sub, self)
    }

    /// `Σ mult·t^p·u^q`.
    pub fn poincare(&self) -> Poly2 {
        let mut out = Poly2::zero();
        for (b, m) in self.iter() {
            out.add_term(b.p, b.q, BigInt::from(m.clone()));
        }
        out
    }

    /// Every summand satisfies `p ≥ 0`, `q ≥ 0` and `0 ≤ 2q - p ≤ q`.
    pub fn is_first_quadrant(&self) -> bool {
        self.iter().all(|(b, _)| {
            let h = b.chow_height();
            b.p >= 0 && b.q >= 0 && h >= 0 && h <= b.q
        })
    }

    /// The first bidegree, in canonical order, whose multiplicities differ.
    pub fn first_mismatch(&self, other: &TateMotive) -> Option<(Bidegree, BigUint, BigUint)> {
        let keys: std::collections::BTreeSet<_> =
            self.summands.keys().chain(other.summands.keys()).collect();
        keys.into_iter().find_map(|&(q, p)| {
            let b = Bidegree::new(p, q);
            let (x, y) = (self.multiplicity(b), other.multiplicity(b));
            (x != y).then_some((b, x, y))
        })
    }

    /// Plain-text table, one bidegree per line.
    pub fn to_table(&self) -> String {
        let mut s = format!("{:>6} {:>6} {:>6} {:>8}\n", "p", "q", "2q-p", "mult");
        for (b, m) in self.iter() {
            s.push_str(&format!(
                "{:>6} {:>6} {:>6} {:>8}\n",
                b.p,
                b.q,
                b.chow_height(),
                m
            ));
        }
        s
    }
}

impl fmt::Display for TateMotive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (b, m)) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{b}")?;
            if !m.is_one() {
                write!(f, "×{m}")?;
            }
        }
        f.write_str("}")
    }
}

#[derive(Serialize, Deserialize)]
struct SummandRecord {
    p: i64,
    q: i64,
    mult: serde_json::Number,
}

#[derive(Serialize, Deserialize)]
struct MotiveRecord {
    summands: Vec<SummandRecord>,
}

impl Serialize for TateMotive {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let summands = self
            .iter()
            .map(|(b, m)| {
                let mult = m
                    .to_string()
                    .parse::<serde_json::Number>()
                    .map_err(serde::ser::Error::custom)?;
                Ok(SummandRecord {
                    p: b.p,
                    q: b.q,
                    mult,
                })
            })
            .collect::<std::result::Result<Vec<_>, S::Error>>()?;
        MotiveRecord { summands }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TateMotive {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rec = MotiveRecord::deserialize(deserializer)?;
        let mut out = TateMotive::zero();
        for s in rec.summands {
            let mult: BigUint =
                s.mult.to_string().parse().map_err(|_| {
                    serde::de::Error::custom(format!("bad multiplicity {}", s.mult))
                })?;
            if mult.is_zero() {
                return Err(serde::de::Error::custom("multiplicities must be positive"));
            }
            out.insert(Bidegree::new(s.p, s.q), mult);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn motive(pairs: &[(i64, i64, u32)]) -> TateMotive {
        TateMotive::from_summands(pairs.iter().map(|&(p, q, m)| (Bidegree::new(p, q), m)))
    }

    #[test]
    fn chow_height_examples() {
        assert_eq!(chow_height(Bidegree::new(0, 0)), 0);
        assert_eq!(chow_height(Bidegree::new(1, 1)), 1);
        assert_eq!(chow_height(Bidegree::new(4, 3)), 2);
    }

    #[test]
    fn bidegree_d_examples() {
        assert_eq!(bidegree_d(&IndexSequence::empty()), Bidegree::new(0, 0));
        assert_eq!(
            bidegree_d(&IndexSequence::new(vec![1]).unwrap()),
            Bidegree::new(1, 1)
        );
        assert_eq!(
            bidegree_d(&IndexSequence::new(vec![1, 2]).unwrap()),
            Bidegree::new(4, 3)
        );
    }

    #[test]
    fn index_sequences_reject_bad_input() {
        assert!(matches!(
            IndexSequence::new(vec![2, 1]),
            Err(Error::NotIncreasing { .. })
        ));
        assert!(matches!(
            IndexSequence::new(vec![1, 1]),
            Err(Error::NotIncreasing { .. })
        ));
        assert!(IndexSequence::new(vec![0, 1]).is_err());
    }

    #[test]
    fn tensor_examples() {
        let x = motive(&[(0, 0, 1), (2, 1, 1)]);
        assert_eq!(TateMotive::unit().tensor(&x), x);
        assert_eq!(
            motive(&[(1, 1, 1)]).tensor(&motive(&[(2, 1, 1)])),
            motive(&[(3, 2, 1)])
        );
        assert_eq!(x.tensor(&x), motive(&[(0, 0, 1), (2, 1, 2), (4, 2, 1)]));
    }

    #[test]
    fn twist_examples() {
        assert_eq!(
            TateMotive::unit().twist(Bidegree::new(4, 3)),
            motive(&[(4, 3, 1)])
        );
        assert_eq!(
            motive(&[(0, 0, 1), (2, 1, 1)]).twist(Bidegree::new(1, 1)),
            motive(&[(1, 1, 1), (3, 2, 1)])
        );
        assert!(TateMotive::zero().twist(Bidegree::new(5, 2)).is_zero());
    }

    #[test]
    fn height_filter_examples() {
        let x = motive(&[(1, 1, 1), (3, 2, 1), (4, 3, 1)]);
        assert_eq!(
            x.height_filter(1, HeightMode::Eq),
            motive(&[(1, 1, 1), (3, 2, 1)])
        );
        assert_eq!(x.height_filter(0, HeightMode::Ge), x);
        assert_eq!(
            motive(&[(4, 3, 1)]).height_filter(2, HeightMode::Eq),
            motive(&[(4, 3, 1)])
        );
    }

    #[test]
    fn cone_examples() {
        let sub = motive(&[(1, 1, 1)]);
        let whole = motive(&[(1, 1, 1), (3, 2, 1)]);
        assert_eq!(
            TateMotive::cone_of_inclusion(&sub, &whole).unwrap(),
            motive(&[(3, 2, 1)])
        );
        assert_eq!(
            TateMotive::cone_of_inclusion(&TateMotive::zero(), &whole).unwrap(),
            whole
        );
        let err = TateMotive::cone_of_inclusion(&sub, &motive(&[(3, 2, 1)])).unwrap_err();
        assert!(
            matches!(err, Error::NotASubmotive { bidegree } if bidegree == Bidegree::new(1, 1))
        );
    }

    #[test]
    fn cone_respects_multiplicity() {
        let whole = motive(&[(2, 1, 1)]);
        assert!(TateMotive::cone_of_inclusion(&motive(&[(2, 1, 2)]), &whole).is_err());
    }

    #[test]
    fn poincare_examples() {
        assert_eq!(TateMotive::unit().poincare().to_string(), "1");
        assert_eq!(
            motive(&[(0, 0, 1), (1, 1, 1)]).poincare().to_string(),
            "1 + t*u"
        );
        assert_eq!(
            motive(&[(0, 0, 1), (2, 1, 1)]).poincare().to_string(),
            "1 + t^2*u"
        );
    }

    #[test]
    fn json_shape() {
        let x = motive(&[(2, 1, 2), (0, 0, 1)]);
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(
            json,
            r#"{"summands":[{"p":0,"q":0,"mult":1},{"p":2,"q":1,"mult":2}]}"#
        );
        let back: TateMotive = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn json_keeps_huge_multiplicities() {
        let big: BigUint = "123456789012345678901234567890".parse().unwrap();
        let x = TateMotive::from_summands([(Bidegree::new(3, 2), big.clone())]);
        let json = serde_json::to_string(&x).unwrap();
        assert!(json.contains("123456789012345678901234567890"));
        let back: TateMotive = serde_json::from_str(&json).unwrap();
        assert_eq!(back.multiplicity(Bidegree::new(3, 2)), big);
    }

    #[test]
    fn json_rejects_zero_multiplicity() {
        let bad = r#"{"summands":[{"p":0,"q":0,"mult":0}]}"#;
        assert!(serde_json::from_str::<TateMotive>(bad).is_err());
    }
}
