//! Permutations, compositions of integers and ordered set partitions.
//!
//! Points are stored 0-based; every text form is 1-based.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::Parse(format!("{images:?} is not a bijection")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::Parse("points are numbered from 1".into()));
        }
        Self::from_images(images.iter().map(|i| i - 1).collect())
    }

    /// Transposition of the 0-based points `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(a, b);
        p
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// All of `Σ_n` in lexicographic order of image sequences.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if cur.len() == n {
                out.push(Permutation { images: cur.clone() });
                return;
            }
            for i in 0..n {
                if !used[i] {
                    used[i] = true;
                    cur.push(i);
                    rec(n, cur, used, out);
                    cur.pop();
                    used[i] = false;
                }
            }
        }
        rec(n, &mut cur, &mut used, &mut out);
        out
    }

    /// Permutes a positioned sequence: the entry at `i` moves to `σ(i)`.
    pub fn permute<T: Clone>(&self, xs: &[T]) -> Vec<T> {
        let mut out = xs.to_vec();
        for (i, x) in xs.iter().enumerate() {
            out[self.images[i]] = x.clone();
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Self {
        Composition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn has_zero_part(&self) -> bool {
        self.parts.contains(&0)
    }

    /// `Comp_p(n)`, zero parts allowed, in lexicographic order.
    pub fn all(n: usize, p: usize) -> Vec<Composition> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(p);
        fn rec(left: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
            if cur.len() + 1 == p {
                cur.push(left);
                out.push(Composition::new(cur.clone()));
                cur.pop();
                return;
            }
            for k in 0..=left {
                cur.push(k);
                rec(left - k, p, cur, out);
                cur.pop();
            }
        }
        if p == 0 {
            if n == 0 {
                out.push(Composition::new(vec![]));
            }
            return out;
        }
        rec(n, p, &mut cur, &mut out);
        out
    }

    /// Compositions of `n` with positive parts, any number of parts.
    pub fn all_positive(n: usize) -> Vec<Composition> {
        (1..=n)
            .flat_map(|p| Composition::all(n, p))
            .filter(|c| !c.has_zero_part())
            .collect()
    }

    /// `r ∘_i q` (1-based `i`): replaces part `i` by the parts of `q`.
    pub fn compose_at(&self, i: usize, q: &Composition) -> Result<Composition> {
        if i == 0 || i > self.len() {
            return Err(Error::IndexOutOfRange { index: i, len: self.len() });
        }
        if q.total() != self.parts[i - 1] {
            return Err(Error::ArityMismatch(format!(
                "{q} does not compose {}",
                self.parts[i - 1]
            )));
        }
        let mut parts = self.parts[..i - 1].to_vec();
        parts.extend_from_slice(q.parts());
        parts.extend_from_slice(&self.parts[i..]);
        Ok(Composition::new(parts))
    }

    /// `r ∘ (k_1, …, k_p)`: every part refined at once.
    pub fn refine(&self, ks: &[Composition]) -> Result<Composition> {
        if ks.len() != self.len() {
            return Err(Error::ArityMismatch(format!("{} refinements for {}", ks.len(), self)));
        }
        let mut parts = Vec::new();
        for (r, k) in self.parts.iter().zip(ks) {
            if k.total() != *r {
                return Err(Error::ArityMismatch(format!("{k} does not compose {r}")));
            }
            parts.extend_from_slice(k.parts());
        }
        Ok(Composition::new(parts))
    }

    /// `q ▷ r` for `q ∈ Comp_s(p)` and `self = r ∈ Comp_p(n)`: sums consecutive runs of parts.
    pub fn coarsen(&self, q: &Composition) -> Result<Composition> {
        if q.total() != self.len() {
            return Err(Error::ArityMismatch(format!("{q} does not group {} parts", self.len())));
        }
        let mut parts = Vec::with_capacity(q.len());
        let mut at = 0;
        for &k in q.parts() {
            parts.push(self.parts[at..at + k].iter().sum());
            at += k;
        }
        Ok(Composition::new(parts))
    }

    /// `r^ρ = (r_{ρ⁻¹(1)}, …, r_{ρ⁻¹(p)})`.
    pub fn permuted(&self, rho: &Permutation) -> Result<Composition> {
        if rho.degree() != self.len() {
            return Err(Error::DegreeMismatch(rho.degree(), self.len()));
        }
        Ok(Composition::new(rho.permute(&self.parts)))
    }

    pub fn without_zeros(&self) -> Composition {
        Composition::new(self.parts.iter().copied().filter(|&k| k > 0).collect())
    }

    /// Start offset (0-based) of each interval block of `ι(r)`.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.parts
            .iter()
            .map(|&k| {
                let o = acc;
                acc += k;
                o
            })
            .collect()
    }

    /// Block index (0-based) of every point under `ι(r)`.
    pub fn block_of_points(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.total());
        for (b, &k) in self.parts.iter().enumerate() {
            out.extend(std::iter::repeat_n(b, k));
        }
        out
    }

    pub fn iota(&self) -> OrderedPartition {
        let mut blocks = Vec::with_capacity(self.len());
        let mut at = 0;
        for &k in &self.parts {
            blocks.push((at..at + k).collect());
            at += k;
        }
        OrderedPartition { n: at, blocks }
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|k| k.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("composition `{s}` must look like (3,2)")))?;
        parse_list(inner).map(Composition::new)
    }
}

pub(crate) fn parse_list(inner: &str) -> Result<Vec<usize>> {
    if inner.trim().is_empty() {
        return Ok(vec![]);
    }
    inner
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("`{t}` is not a nonnegative integer")))
        })
        .collect()
}

/// An ordered partition of `{0, …, n-1}`; empty blocks are kept.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrderedPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl OrderedPartition {
    pub fn new(n: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for b in &mut blocks {
            b.sort_unstable();
            for &x in b.iter() {
                if x >= n || seen[x] {
                    return Err(Error::Parse(format!("blocks {blocks:?} do not partition {n} points")));
                }
                seen[x] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Parse(format!("blocks do not cover all {n} points")));
        }
        Ok(OrderedPartition { n, blocks })
    }

    pub fn from_one_based(n: usize, blocks: &[&[usize]]) -> Result<Self> {
        let blocks = blocks
            .iter()
            .map(|b| b.iter().map(|&x| x.wrapping_sub(1)).collect())
            .collect();
        Self::new(n, blocks)
    }

    pub fn coarse(n: usize) -> Self {
        OrderedPartition {
            n,
            blocks: vec![(0..n).collect()],
        }
    }

    pub fn ground(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn shape(&self) -> Composition {
        Composition::new(self.blocks.iter().map(Vec::len).collect())
    }

    /// `∂_R`: 0-based block index of every point.
    pub fn function(&self) -> Vec<usize> {
        let mut f = vec![0; self.n];
        for (i, b) in self.blocks.iter().enumerate() {
            for &x in b {
                f[x] = i;
            }
        }
        f
    }

    pub fn from_function(f: &[usize], p: usize) -> Result<Self> {
        let mut blocks = vec![Vec::new(); p];
        for (x, &i) in f.iter().enumerate() {
            if i >= p {
                return Err(Error::IndexOutOfRange { index: i + 1, len: p });
            }
            blocks[i].push(x);
        }
        Ok(OrderedPartition { n: f.len(), blocks })
    }

    /// `R ∘_i Q` (1-based `i`): block `i` is refined by `Q` through the increasing bijection.
    pub fn compose(&self, i: usize, q: &OrderedPartition) -> Result<Self> {
        if i == 0 || i > self.len() {
            return Err(Error::IndexOutOfRange { index: i, len: self.len() });
        }
        let target = &self.blocks[i - 1];
        if target.len() != q.n {
            return Err(Error::ArityMismatch(format!(
                "block {i} has {} points, refinement has {}",
                target.len(),
                q.n
            )));
        }
        let mut blocks = self.blocks[..i - 1].to_vec();
        for qb in &q.blocks {
            blocks.push(qb.iter().map(|&x| target[x]).collect());
        }
        blocks.extend_from_slice(&self.blocks[i..]);
        Ok(OrderedPartition { n: self.n, blocks })
    }

    pub fn act(&self, sigma: &Permutation) -> Result<Self> {
        if sigma.degree() != self.n {
            return Err(Error::DegreeMismatch(sigma.degree(), self.n));
        }
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                let mut nb: Vec<usize> = b.iter().map(|&x| sigma.apply(x)).collect();
                nb.sort_unstable();
                nb
            })
            .collect();
        Ok(OrderedPartition { n: self.n, blocks })
    }

    /// `σ·R = (R_{σ⁻¹(1)}, …, R_{σ⁻¹(p)})` for `σ ∈ Σ_p`.
    pub fn permute_blocks(&self, sigma: &Permutation) -> Result<Self> {
        if sigma.degree() != self.len() {
            return Err(Error::DegreeMismatch(sigma.degree(), self.len()));
        }
        Ok(OrderedPartition {
            n: self.n,
            blocks: sigma.permute(&self.blocks),
        })
    }

    /// `Q ▷ R`: block `i` is the union of the blocks of `R` indexed by `Q_i`.
    pub fn triangle(q: &OrderedPartition, r: &OrderedPartition) -> Result<Self> {
        if q.n != r.len() {
            return Err(Error::ArityMismatch(format!(
                "outer partition covers {} indices, inner has {} blocks",
                q.n,
                r.len()
            )));
        }
        let blocks = q
            .blocks
            .iter()
            .map(|qb| {
                let mut b: Vec<usize> = qb.iter().flat_map(|&j| r.blocks[j].iter().copied()).collect();
                b.sort_unstable();
                b
            })
            .collect();
        Ok(OrderedPartition { n: r.n, blocks })
    }

    pub fn tensor(&self, q: &OrderedPartition) -> Self {
        let mut blocks = self.blocks.clone();
        blocks.extend(q.blocks.iter().map(|b| b.iter().map(|x| x + self.n).collect()));
        OrderedPartition {
            n: self.n + q.n,
            blocks,
        }
    }

    /// `γ_k(R)`: block `i` is `⨿_j (R_i + j·n)`. `k = 0` gives empty blocks over no points.
    pub fn gamma_k(&self, k: usize) -> Self {
        let blocks = self
            .blocks
            .iter()
            .map(|b| (0..k).flat_map(|j| b.iter().map(move |x| x + j * self.n)).collect())
            .collect();
        OrderedPartition {
            n: k * self.n,
            blocks,
        }
    }

    /// `R ∧ Q`, blocks in row-major order `(i, j) ↦ R_i ∩ Q_j`.
    pub fn wedge(&self, q: &OrderedPartition) -> Result<Self> {
        if self.n != q.n {
            return Err(Error::DegreeMismatch(self.n, q.n));
        }
        let fq = q.function();
        let mut blocks = Vec::with_capacity(self.len() * q.len());
        for rb in &self.blocks {
            let mut row = vec![Vec::new(); q.len()];
            for &x in rb {
                row[fq[x]].push(x);
            }
            blocks.extend(row);
        }
        Ok(OrderedPartition { n: self.n, blocks })
    }

    /// Whether this partition is `ι` of some composition.
    pub fn as_composition(&self) -> Option<Composition> {
        let shape = self.shape();
        if shape.iota() == *self {
            Some(shape)
        } else {
            None
        }
    }

    /// The blockwise order-preserving `σ` with `σ(self) = other`.
    pub fn transporter_to(&self, other: &OrderedPartition) -> Result<Permutation> {
        if self.n != other.n || self.shape() != other.shape() {
            return Err(Error::ShapeMismatch(format!("{self} vs {other}")));
        }
        let mut images = vec![0; self.n];
        for (a, b) in self.blocks.iter().zip(&other.blocks) {
            for (&x, &y) in a.iter().zip(b) {
                images[x] = y;
            }
        }
        Permutation::from_images(images)
    }

    /// `Π(r; n)` in lexicographic order of the block function.
    pub fn all_of_shape(r: &Composition) -> Vec<OrderedPartition> {
        let n = r.total();
        let p = r.len();
        let mut out = Vec::new();
        let mut left = r.parts().to_vec();
        let mut f = Vec::with_capacity(n);
        fn rec(n: usize, p: usize, left: &mut [usize], f: &mut Vec<usize>, out: &mut Vec<OrderedPartition>) {
            if f.len() == n {
                out.push(OrderedPartition::from_function(f, p).expect("valid block function"));
                return;
            }
            for i in 0..p {
                if left[i] > 0 {
                    left[i] -= 1;
                    f.push(i);
                    rec(n, p, left, f, out);
                    f.pop();
                    left[i] += 1;
                }
            }
        }
        rec(n, p, &mut left, &mut f, &mut out);
        out
    }
}

/// `r ◇ (Q_1, …, Q_p) = γ_{r_1}(Q_1) ⊗ … ⊗ γ_{r_p}(Q_p)` with its double index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diamond {
    pub partition: OrderedPartition,
    counts: Vec<usize>,
}

impl Diamond {
    /// Block `(i, j)`, both 1-based.
    pub fn block(&self, i: usize, j: usize) -> Result<&[usize]> {
        if i == 0 || i > self.counts.len() {
            return Err(Error::IndexOutOfRange { index: i, len: self.counts.len() });
        }
        if j == 0 || j > self.counts[i - 1] {
            return Err(Error::IndexOutOfRange { index: j, len: self.counts[i - 1] });
        }
        let at: usize = self.counts[..i - 1].iter().sum();
        Ok(&self.partition.blocks[at + j - 1])
    }
}

pub fn diamond(r: &Composition, qs: &[OrderedPartition]) -> Result<Diamond> {
    if qs.len() != r.len() {
        return Err(Error::ArityMismatch(format!("{} partitions for {}", qs.len(), r)));
    }
    let mut acc = OrderedPartition { n: 0, blocks: vec![] };
    for (&k, q) in r.parts().iter().zip(qs) {
        acc = acc.tensor(&q.gamma_k(k));
    }
    Ok(Diamond {
        partition: acc,
        counts: qs.iter().map(OrderedPartition::len).collect(),
    })
}

/// Whether `∂_R` is non-decreasing on every interval block of `ι(r)`.
pub fn wedge_is_composition(r: &Composition, part: &OrderedPartition) -> bool {
    if r.total() != part.ground() {
        return false;
    }
    let f = part.function();
    let mut at = 0;
    for &k in r.parts() {
        if f[at..at + k].windows(2).any(|w| w[0] > w[1]) {
            return false;
        }
        at += k;
    }
    true
}

fn fmt_set(f: &mut fmt::Formatter<'_>, b: &[usize]) -> fmt::Result {
    if b.is_empty() {
        return write!(f, "∅");
    }
    let items: Vec<String> = b.iter().map(|x| (x + 1).to_string()).collect();
    write!(f, "{{{}}}", items.join(","))
}

impl fmt::Display for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            fmt_set(f, b)?;
        }
        write!(f, ")")
    }
}

impl FromStr for OrderedPartition {
    type Err = Error;

    /// Parses `({1,3},{2})`; `∅` or `{}` denote empty blocks. The ground set
    /// is the union of the blocks.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("partition `{s}` must look like ({{1,3}},{{2}})")))?;
        let mut blocks = Vec::new();
        let mut rest = inner.trim();
        while !rest.is_empty() {
            if let Some(t) = rest.strip_prefix('∅') {
                blocks.push(vec![]);
                rest = t;
            } else if let Some(t) = rest.strip_prefix('{') {
                let end = t
                    .find('}')
                    .ok_or_else(|| Error::Parse(format!("unclosed block in `{s}`")))?;
                let items = parse_list(&t[..end])?;
                if items.contains(&0) {
                    return Err(Error::Parse("points are numbered from 1".into()));
                }
                blocks.push(items.into_iter().map(|x| x - 1).collect());
                rest = &t[end + 1..];
            } else {
                return Err(Error::Parse(format!("unexpected `{rest}` in partition")));
            }
            rest = rest.trim_start();
            if let Some(t) = rest.strip_prefix(',') {
                rest = t.trim_start();
            }
        }
        let n = blocks.iter().map(Vec::len).sum();
        OrderedPartition::new(n, blocks)
    }
}
