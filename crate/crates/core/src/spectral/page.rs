use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::catalog::{motive_a, Signature};
use crate::error::{Error, Result};
use crate::tate::{Bidegree, Tridegree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Converges to the cohomology of `A(n_1, …, n_r)`.
    Full,
    /// Keeps only the Chow-height-0 module generators; converges to the
    /// cohomology of the flag variety.
    Flag,
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Variant::Full),
            "flag" => Ok(Variant::Flag),
            other => Err(Error::InvalidArgument(format!(
                "unknown variant {other:?}, expected full or flag"
            ))),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Full => "full",
            Variant::Flag => "flag",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorKind {
    Exterior,
    Polynomial,
    Module,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub kind: GeneratorKind,
    /// `i` for `α′_i` and `θ_i`; the 1-based position for `β′_j`.
    pub index: u32,
    pub tridegree: Tridegree,
}

impl Generator {
    pub fn label(&self) -> String {
        match self.kind {
            GeneratorKind::Exterior => format!("α'{}", self.index),
            GeneratorKind::Polynomial => format!("θ{}", self.index),
            GeneratorKind::Module => format!("β'{}", self.index),
        }
    }

    pub fn tch(&self) -> i64 {
        self.tridegree.tch()
    }
}

/// A basis monomial `α′_S · θ^e · β′_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasisClass {
    /// Increasing indices `i` of the exterior factors.
    pub exterior: Vec<u32>,
    /// Exponent of `θ_i` at position `i - 1`; length `n_{r-1}`.
    pub theta: Vec<u32>,
    /// 0-based position in [`E2Page::module_generators`].
    pub module: usize,
}

// (p, q) of α′_S · β′_j ↦ the pairs (S, j)
type Fibers = BTreeMap<(i64, i64), Vec<(Vec<u32>, usize)>>;

#[derive(Clone, Debug)]
pub struct E2Page {
    signature: Signature,
    variant: Variant,
    max_weight: u32,
    exterior: Vec<Generator>,
    polynomial: Vec<Generator>,
    module: Vec<Generator>,
    // every pair of weight ≤ max_weight
    fibers: Fibers,
}

/// Builds the `E_2`-page for `sig = (n_1, …, n_r)`, `r ≥ 2`, truncated to
/// weight `q ≤ max_weight`.
pub fn build_e2(sig: &Signature, variant: Variant, max_weight: u32) -> Result<E2Page> {
    let prefix = sig.prefix().ok_or_else(|| {
        Error::InvalidArgument(format!(
            "the E2 page needs a signature with at least two entries, got ({sig})"
        ))
    })?;
    let top = sig.last();
    let below = prefix.last();

    let exterior: Vec<Generator> = (top - below + 1..=top)
        .map(|i| Generator {
            kind: GeneratorKind::Exterior,
            index: i,
            tridegree: Tridegree::new(0, 2 * i as i64 - 1, i as i64),
        })
        .collect();
    let polynomial: Vec<Generator> = (1..=below)
        .map(|i| Generator {
            kind: GeneratorKind::Polynomial,
            index: i,
            tridegree: Tridegree::new(1, 2 * i as i64 - 1, i as i64),
        })
        .collect();

    let mut summands: Vec<Bidegree> = Vec::new();
    for (b, mult) in motive_a(&prefix)?.iter() {
        let copies: usize = mult.try_into().map_err(|_| {
            Error::InvalidArgument(format!("multiplicity {mult} at {b} is too large to expand"))
        })?;
        summands.extend(std::iter::repeat_n(b, copies));
    }
    summands.sort_by_key(|b| (b.chow_height(), b.q, b.p));
    if variant == Variant::Flag {
        summands.retain(|b| b.chow_height() == 0);
    }
    let module: Vec<Generator> = summands
        .into_iter()
        .zip(1..)
        .map(|(b, j)| Generator {
            kind: GeneratorKind::Module,
            index: j,
            tridegree: Tridegree::new(0, b.p, b.q),
        })
        .collect();

    let mut page = E2Page {
        signature: sig.clone(),
        variant,
        max_weight,
        exterior,
        polynomial,
        module,
        fibers: BTreeMap::new(),
    };
    page.fibers = page.compute_fibers();
    Ok(page)
}

impl E2Page {
    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn max_weight(&self) -> u32 {
        self.max_weight
    }

    pub fn exterior_generators(&self) -> &[Generator] {
        &self.exterior
    }

    pub fn polynomial_generators(&self) -> &[Generator] {
        &self.polynomial
    }

    pub fn module_generators(&self) -> &[Generator] {
        &self.module
    }

    /// All generators: `α′` first, then `θ`, then `β′`.
    pub fn generators(&self) -> impl Iterator<Item = &Generator> {
        self.exterior
            .iter()
            .chain(&self.polynomial)
            .chain(&self.module)
    }

    fn theta_rank(&self) -> usize {
        self.polynomial.len()
    }

    fn compute_fibers(&self) -> Fibers {
        let w = self.max_weight as i64;
        let mut out = Fibers::new();
        let mut subsets: Vec<(Vec<u32>, i64, i64)> = vec![(Vec::new(), 0, 0)];
        for g in &self.exterior {
            let t = g.tridegree;
            let grown: Vec<_> = subsets
                .iter()
                .filter(|(_, _, q)| q + t.q <= w)
                .map(|(s, p, q)| {
                    let mut s = s.clone();
                    s.push(g.index);
                    (s, p + t.p, q + t.q)
                })
                .collect();
            subsets.extend(grown);
        }
        for (s, p, q) in &subsets {
            for (j, b) in self.module.iter().enumerate() {
                let t = b.tridegree;
                if q + t.q <= w {
                    out.entry((p + t.p, q + t.q))
                        .or_default()
                        .push((s.clone(), j));
                }
            }
        }
        for v in out.values_mut() {
            v.sort();
        }
        out
    }

    pub fn is_class(&self, c: &BasisClass) -> bool {
        c.theta.len() == self.theta_rank()
            && c.module < self.module.len()
            && c.exterior.windows(2).all(|w| w[0] < w[1])
            && c.exterior
                .iter()
                .all(|i| self.exterior.iter().any(|g| g.index == *i))
            && self.tridegree(c).q <= self.max_weight as i64
    }

    pub fn tridegree(&self, c: &BasisClass) -> Tridegree {
        let mut t = self.module[c.module].tridegree;
        for &i in &c.exterior {
            t = t + Tridegree::new(0, 2 * i as i64 - 1, i as i64);
        }
        for (k, &e) in c.theta.iter().enumerate() {
            let i = k as i64 + 1;
            let e = e as i64;
            t = t + Tridegree::new(e, e * (2 * i - 1), e * i);
        }
        t
    }

    pub fn tch(&self, c: &BasisClass) -> i64 {
        self.tridegree(c).tch()
    }

    /// `"1"` for the unit, otherwise the nontrivial factors joined by `·`.
    pub fn label(&self, c: &BasisClass) -> String {
        let mut parts: Vec<String> = c.exterior.iter().map(|i| format!("α'{i}")).collect();
        for (k, &e) in c.theta.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("θ{}", k + 1)),
                _ => parts.push(format!("θ{}^{e}", k + 1)),
            }
        }
        let beta = &self.module[c.module];
        if beta.tridegree != Tridegree::default() {
            parts.push(beta.label());
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("·")
        }
    }

    /// The class of a single `α′` or `β′` generator.
    pub fn generator_class(&self, g: &Generator) -> Option<BasisClass> {
        let unit = self
            .module
            .iter()
            .position(|b| b.tridegree == Tridegree::default())?;
        let class = match g.kind {
            GeneratorKind::Exterior => BasisClass {
                exterior: vec![g.index],
                theta: vec![0; self.theta_rank()],
                module: unit,
            },
            GeneratorKind::Polynomial => {
                let mut theta = vec![0; self.theta_rank()];
                theta[g.index as usize - 1] = 1;
                BasisClass {
                    exterior: Vec::new(),
                    theta,
                    module: unit,
                }
            }
            GeneratorKind::Module => BasisClass {
                exterior: Vec::new(),
                theta: vec![0; self.theta_rank()],
                module: g.index as usize - 1,
            },
        };
        self.is_class(&class).then_some(class)
    }

    /// Every basis monomial of weight `≤ max_weight`, ordered by
    /// `(q, l, p)` and then by key.
    pub fn basis(&self) -> Vec<BasisClass> {
        let w = self.max_weight as i64;
        let mut out = Vec::new();
        for (&(_, q0), members) in &self.fibers {
            let thetas = theta_exponents_up_to(self.theta_rank(), w - q0);
            for (s, j) in members {
                for e in &thetas {
                    out.push(BasisClass {
                        exterior: s.clone(),
                        theta: e.clone(),
                        module: *j,
                    });
                }
            }
        }
        self.sort_classes(&mut out);
        out
    }

    pub(crate) fn sort_classes(&self, classes: &mut [BasisClass]) {
        classes.sort_by_cached_key(|c| {
            let t = self.tridegree(c);
            (t.q, t.l, t.p, c.clone())
        });
    }

    /// Every basis monomial in tridegree `t`.
    pub fn classes_in(&self, t: Tridegree) -> Vec<BasisClass> {
        let mut out = Vec::new();
        self.scan_tridegree(t, |s, j, theta| {
            out.push(BasisClass {
                exterior: s.to_vec(),
                theta,
                module: j,
            });
            true
        });
        out.sort();
        out
    }

    pub fn has_class_in(&self, t: Tridegree) -> bool {
        let mut found = false;
        self.scan_tridegree(t, |_, _, _| {
            found = true;
            false
        });
        found
    }

    // Calls `visit` for each class in `t` until it returns false.
    fn scan_tridegree(&self, t: Tridegree, mut visit: impl FnMut(&[u32], usize, Vec<u32>) -> bool) {
        if t.q > self.max_weight as i64 || t.l < 0 || t.q < 0 {
            return;
        }
        let k = self.theta_rank() as i64;
        let count = t.l;
        for q0 in 0..=t.q {
            let rest = t.q - q0;
            // θ-monomials with `count` factors and weight `rest` sit in p = 2·rest - count
            let p0 = t.p - (2 * rest - count);
            if count > rest || rest > count * k {
                continue;
            }
            let Some(members) = self.fibers.get(&(p0, q0)) else {
                continue;
            };
            let thetas = theta_exponents_exact(self.theta_rank(), count as u32, rest as u32);
            for (s, j) in members {
                for e in &thetas {
                    if !visit(s, *j, e.clone()) {
                        return;
                    }
                }
            }
        }
    }
}

/// Exponent vectors of length `k` with `Σ i·e_i ≤ max`.
fn theta_exponents_up_to(k: usize, max: i64) -> Vec<Vec<u32>> {
    fn go(i: usize, k: usize, rem: i64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i > k {
            out.push(cur.clone());
            return;
        }
        let mut e = 0;
        while e as i64 * i as i64 <= rem {
            cur.push(e);
            go(i + 1, k, rem - e as i64 * i as i64, cur, out);
            cur.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    if max >= 0 {
        go(1, k, max, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Exponent vectors of length `k` with `Σ e_i = count` and `Σ i·e_i = weight`.
fn theta_exponents_exact(k: usize, count: u32, weight: u32) -> Vec<Vec<u32>> {
    fn go(i: usize, count: u32, weight: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == 0 {
            if count == 0 && weight == 0 {
                out.push(cur.iter().rev().copied().collect());
            }
            return;
        }
        // remaining parts are ≤ i
        if weight < count || weight > count * i as u32 {
            return;
        }
        for e in (0..=count.min(weight / i as u32)).rev() {
            cur.push(e);
            go(i - 1, count - e, weight - e * i as u32, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, count, weight, &mut Vec::with_capacity(k), &mut out);
    out.sort();
    out
}
