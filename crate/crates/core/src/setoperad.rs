//! Set operads with one colour: `Com` and the level operad `Lev`.
//!
//! Elements of both are stored as a depth label per input. `Com` labels are
//! all zero; a `Lev` element of arity `n` is a depth map `h: [n] → ℕ` with
//! `Σ 2^{-h(i)} = 1`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permcomb::{parse_list, OrderedPartition, Permutation};
use crate::symaction::{distinct_arrangements, Action};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Operad {
    Com,
    Lev,
}

impl fmt::Display for Operad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Operad::Com => "com",
            Operad::Lev => "lev",
        })
    }
}

impl FromStr for Operad {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "com" => Ok(Operad::Com),
            "lev" => Ok(Operad::Lev),
            other => Err(Error::Parse(format!("unknown operad `{other}` (expected com or lev)"))),
        }
    }
}

/// A basis element of `𝒫(n)` for `𝒫 ∈ {Com, Lev}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Op {
    operad: Operad,
    labels: Vec<u32>,
}

/// Exact test of `Σ 2^{-h(i)} = 1`.
pub fn satisfies_kraft(depths: &[u32]) -> bool {
    let Some(&top) = depths.iter().max() else {
        return false;
    };
    let mut sum = BigUint::from(0u32);
    for &h in depths {
        sum += BigUint::one() << (top - h) as usize;
    }
    sum == BigUint::one() << top as usize
}

impl Op {
    pub fn com(n: usize) -> Self {
        Op {
            operad: Operad::Com,
            labels: vec![0; n],
        }
    }

    pub fn lev(depths: Vec<u32>) -> Result<Self> {
        if !satisfies_kraft(&depths) {
            return Err(Error::InvalidElement(format!("depths {depths:?} violate Σ 2^-h = 1")));
        }
        Ok(Op {
            operad: Operad::Lev,
            labels: depths,
        })
    }

    /// Wraps labels without validation; callers guarantee the invariant.
    pub(crate) fn from_labels(operad: Operad, labels: Vec<u32>) -> Self {
        Op { operad, labels }
    }

    pub fn unit(operad: Operad) -> Self {
        Op { operad, labels: vec![0] }
    }

    pub fn operad(&self) -> Operad {
        self.operad
    }

    pub fn arity(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn height(&self) -> u32 {
        self.labels.iter().copied().max().unwrap_or(0)
    }

    /// Partition form `(h⁻¹(0), …, h⁻¹(o))`.
    pub fn partition(&self) -> OrderedPartition {
        let f: Vec<usize> = self.labels.iter().map(|&h| h as usize).collect();
        OrderedPartition::from_function(&f, self.height() as usize + 1).expect("depth map")
    }

    /// `x ∘_i y` (1-based `i`).
    pub fn compose_at(&self, i: usize, y: &Op) -> Result<Op> {
        if self.operad != y.operad {
            return Err(Error::InvalidElement(format!("cannot compose {} with {}", self.operad, y.operad)));
        }
        if i == 0 || i > self.arity() {
            return Err(Error::IndexOutOfRange { index: i, len: self.arity() });
        }
        let d = self.labels[i - 1];
        let mut labels = self.labels[..i - 1].to_vec();
        labels.extend(y.labels.iter().map(|g| d + g));
        labels.extend_from_slice(&self.labels[i..]);
        let out = Op {
            operad: self.operad,
            labels,
        };
        debug_assert!(out.operad == Operad::Com || satisfies_kraft(&out.labels));
        Ok(out)
    }

    /// `μ(x; y_1, …, y_p)`.
    pub fn full_compose(&self, ys: &[Op]) -> Result<Op> {
        if ys.len() != self.arity() {
            return Err(Error::ArityMismatch(format!("{} inputs for arity {}", ys.len(), self.arity())));
        }
        let mut labels = Vec::with_capacity(ys.iter().map(Op::arity).sum());
        for (&d, y) in self.labels.iter().zip(ys) {
            if y.operad != self.operad {
                return Err(Error::InvalidElement(format!("cannot compose {} with {}", self.operad, y.operad)));
            }
            labels.extend(y.labels.iter().map(|g| d + g));
        }
        Ok(Op {
            operad: self.operad,
            labels,
        })
    }

    pub fn act(&self, sigma: &Permutation) -> Result<Op> {
        if sigma.degree() != self.arity() {
            return Err(Error::DegreeMismatch(sigma.degree(), self.arity()));
        }
        Ok(Op {
            operad: self.operad,
            labels: sigma.permute(&self.labels),
        })
    }

    pub fn pr_to_com(&self) -> Op {
        Op::com(self.arity())
    }
}

impl Action for Op {
    fn act_by(&self, sigma: &Permutation) -> Result<Self> {
        self.act(sigma)
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.operad {
            Operad::Com => write!(f, "X{}", self.arity()),
            Operad::Lev => {
                let parts: Vec<String> = self.labels.iter().map(|h| h.to_string()).collect();
                write!(f, "h=[{}]", parts.join(","))
            }
        }
    }
}

impl FromStr for Op {
    type Err = Error;

    /// `h=[1,2,2]` (or `[1,2,2]`) for `Lev`, `X3` for `Com`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(n) = s.strip_prefix('X') {
            let n: usize = n.parse().map_err(|_| Error::Parse(format!("bad arity in `{s}`")))?;
            return Ok(Op::com(n));
        }
        let body = s.strip_prefix("h=").unwrap_or(s);
        let inner = body
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("level element `{s}` must look like h=[1,2,2]")))?;
        let depths = parse_list(inner)?.into_iter().map(|d| d as u32).collect();
        Op::lev(depths)
    }
}

impl Operad {
    pub fn unit(self) -> Op {
        Op::unit(self)
    }

    /// Every basis element of arity `n`, sorted.
    pub fn elements(self, n: usize) -> Arc<Vec<Op>> {
        match self {
            Operad::Com => Arc::new(if n == 0 { vec![] } else { vec![Op::com(n)] }),
            Operad::Lev => enumerate_lev(n),
        }
    }

    /// One sorted representative per `Σ_n`-orbit of arity-`n` elements.
    pub fn orbit_representatives(self, n: usize) -> Vec<Op> {
        match self {
            Operad::Com => self.elements(n).to_vec(),
            Operad::Lev => lev_classes(n)
                .into_iter()
                .map(|labels| Op {
                    operad: Operad::Lev,
                    labels,
                })
                .collect(),
        }
    }
}

/// Nondecreasing depth sequences of length `n` satisfying the Kraft equality.
///
/// With `n ≥ 2` positive terms summing to 1 no term can be below `2^{-(n-1)}`,
/// so depths are bounded by `n - 1`.
pub fn lev_classes(n: usize) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![];
    }
    let top = (n - 1) as u32;
    let total: u64 = 1 << top;
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(n: usize, top: u32, min: u32, left: u64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let slots = (n - cur.len()) as u64;
        if slots == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for h in min..=top {
            let w = 1u64 << (top - h);
            // remaining slots hold weights between 1 and w
            if w > left || left > w * slots || left < w + (slots - 1) {
                continue;
            }
            cur.push(h);
            rec(n, top, h, left - w, cur, out);
            cur.pop();
        }
    }
    rec(n, top, 0, total, &mut cur, &mut out);
    out
}

type LevCache = RwLock<HashMap<usize, Arc<Vec<Op>>>>;

fn lev_cache() -> &'static LevCache {
    static CACHE: OnceLock<LevCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// All of `ℒ(n)`, sorted by depth sequence. Memoized per arity.
pub fn enumerate_lev(n: usize) -> Arc<Vec<Op>> {
    if let Some(hit) = lev_cache().read().expect("cache lock").get(&n) {
        return hit.clone();
    }
    let mut seqs = Vec::new();
    for class in lev_classes(n) {
        seqs.extend(distinct_arrangements(&class));
    }
    seqs.sort();
    let elems: Arc<Vec<Op>> = Arc::new(
        seqs.into_iter()
            .map(|labels| Op {
                operad: Operad::Lev,
                labels,
            })
            .collect(),
    );
    lev_cache().write().expect("cache lock").insert(n, elems.clone());
    elems
}
