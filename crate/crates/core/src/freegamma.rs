//! Free `Γ(𝒫)`-algebras on finitely many generators.
//!
//! Because `Σ_n` acts on basis elements of `Com` and `Lev` by permuting a
//! label per input, a basis element of `(𝒫(n) ⊗ V^{⊗n})^{Σ_n}` is the orbit sum
//! of a pair (labels, word), and such an orbit is a multiset of
//! (generator, label) pairs. A [`GammaTerm`] stores the sorted pair list:
//! generators with multiplicities form `r` and `b_1 < … < b_p`, the labels form
//! a representative of `[x]_r` sorted inside each block.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par::Exec;
use crate::permcomb::{Composition, Permutation};
use crate::scalar::{factorial, index_ratio, FieldSpec, Integer, Scalar};
use crate::setoperad::{Op, Operad};
use crate::symaction::{young_canonical, young_label_stabilizer, young_orbit, BlockSystem, WreathShape};

pub type Gen = u32;

pub fn gen_name(b: Gen) -> String {
    match b {
        0 => "x".into(),
        1 => "y".into(),
        2 => "z".into(),
        3 => "w".into(),
        _ => format!("g{b}"),
    }
}

pub fn parse_gen(s: &str) -> Result<Gen> {
    match s.trim() {
        "x" => Ok(0),
        "y" => Ok(1),
        "z" => Ok(2),
        "w" => Ok(3),
        t => t
            .strip_prefix('g')
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| Error::Parse(format!("unknown generator `{t}`"))),
    }
}

/// A basis element `γ_{[x]_r,r}(b_1, …, b_p)` of the free algebra, in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GammaTerm {
    r: Composition,
    x: Op,
    gens: Vec<Gen>,
}

impl GammaTerm {
    pub fn new(r: Composition, x: Op, gens: Vec<Gen>) -> Result<Self> {
        if r.has_zero_part() || r.len() != gens.len() || r.total() != x.arity() || r.is_empty() {
            return Err(Error::ShapeError(format!("{x} with {r} on {} generators", gens.len())));
        }
        if gens.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::ShapeError("generators must be strictly increasing".into()));
        }
        if young_canonical(x.labels(), &r) != x.labels() {
            return Err(Error::ShapeError(format!("{x} is not sorted inside the blocks of {r}")));
        }
        Ok(GammaTerm { r, x, gens })
    }

    pub fn generator(operad: Operad, b: Gen) -> Self {
        GammaTerm {
            r: Composition::new(vec![1]),
            x: Op::unit(operad),
            gens: vec![b],
        }
    }

    /// Builds the term from a sorted list of (generator, label) pairs.
    fn from_pairs(operad: Operad, pairs: &[(Gen, u32)]) -> Self {
        let mut parts = Vec::new();
        let mut gens = Vec::new();
        for &(g, _) in pairs {
            if gens.last() == Some(&g) {
                *parts.last_mut().expect("nonempty") += 1;
            } else {
                gens.push(g);
                parts.push(1);
            }
        }
        GammaTerm {
            r: Composition::new(parts),
            x: Op::from_labels(operad, pairs.iter().map(|&(_, l)| l).collect()),
            gens,
        }
    }

    pub fn r(&self) -> &Composition {
        &self.r
    }

    pub fn x(&self) -> &Op {
        &self.x
    }

    pub fn gens(&self) -> &[Gen] {
        &self.gens
    }

    pub fn arity(&self) -> usize {
        self.r.total()
    }

    pub fn operad(&self) -> Operad {
        self.x.operad()
    }

    /// `b_1^{r_1} ⋯ b_p^{r_p}`.
    pub fn word(&self) -> Vec<Gen> {
        self.r
            .parts()
            .iter()
            .zip(&self.gens)
            .flat_map(|(&k, &g)| std::iter::repeat_n(g, k))
            .collect()
    }

    pub fn pairs(&self) -> Vec<(Gen, u32)> {
        self.word().into_iter().zip(self.x.labels().iter().copied()).collect()
    }

    /// `|Stab_{Σ_n}|` of the underlying (labels, word) pair.
    pub fn stabilizer(&self) -> Integer {
        pair_stabilizer(&self.pairs())
    }
}

fn pair_stabilizer(sorted: &[(Gen, u32)]) -> Integer {
    let mut acc = Integer::from(1);
    let mut run = 1u64;
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            run += 1;
            acc *= run;
        } else {
            run = 1;
        }
    }
    acc
}

impl fmt::Display for GammaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|&g| gen_name(g)).collect();
        write!(f, "{}@{}({})", self.x, self.r, gens.join(","))
    }
}

impl FromStr for GammaTerm {
    type Err = Error;

    /// `h=[1,1]@(2)(x)` or `X3@(2,1)(x,y)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let Some((op, rest)) = s.split_once('@') else {
            return Err(Error::Parse(format!("term `{s}` must look like h=[1,1]@(2)(x)")));
        };
        let x: Op = op.parse()?;
        let close = rest
            .find(')')
            .ok_or_else(|| Error::Parse(format!("missing composition in `{s}`")))?;
        let r: Composition = rest[..=close].parse()?;
        let args = rest[close + 1..]
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("missing generators in `{s}`")))?;
        let gens = args.split(',').map(parse_gen).collect::<Result<Vec<_>>>()?;
        GammaTerm::new(r, x, gens)
    }
}

/// A finite linear combination of [`GammaTerm`]s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeElem {
    operad: Operad,
    field: FieldSpec,
    terms: BTreeMap<GammaTerm, Scalar>,
}

impl FreeElem {
    pub fn zero(operad: Operad, field: FieldSpec) -> Self {
        FreeElem {
            operad,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn term(field: FieldSpec, t: GammaTerm, c: Scalar) -> Self {
        let mut e = Self::zero(t.operad(), field);
        e.add_term(t, &c);
        e
    }

    pub fn generator(operad: Operad, field: FieldSpec, b: Gen) -> Self {
        Self::term(field, GammaTerm::generator(operad, b), field.one())
    }

    pub fn operad(&self) -> Operad {
        self.operad
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn terms(&self) -> &BTreeMap<GammaTerm, Scalar> {
        &self.terms
    }

    pub fn coefficient(&self, t: &GammaTerm) -> Scalar {
        self.terms.get(t).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, t: GammaTerm, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let zero = self.field.zero();
        let slot = self.terms.entry(t.clone()).or_insert(zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&t);
        }
    }

    pub fn add_assign(&mut self, other: &FreeElem) {
        for (t, c) in &other.terms {
            self.add_term(t.clone(), c);
        }
    }

    pub fn plus(&self, other: &FreeElem) -> FreeElem {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn minus(&self, other: &FreeElem) -> FreeElem {
        self.plus(&other.scale(&-self.field.one()))
    }

    pub fn scale(&self, c: &Scalar) -> FreeElem {
        let mut out = Self::zero(self.operad, self.field);
        for (t, d) in &self.terms {
            out.add_term(t.clone(), &(d * c));
        }
        out
    }

    /// Largest generator index used, if any.
    pub fn max_gen(&self) -> Option<Gen> {
        self.terms.keys().flat_map(|t| t.gens.iter().copied()).max()
    }
}

impl fmt::Display for FreeElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (t, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{t}")?;
            } else {
                write!(f, "{c}·{t}")?;
            }
        }
        Ok(())
    }
}

/// How `μ̃` counts contributions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    /// Cosets when their number is small, orbit counting otherwise.
    #[default]
    Auto,
    /// Sum over canonical representatives of `Σ_M / ∏ Σ_{r_i} ≀ Σ_{q_i}`.
    Cosets,
    /// Orbit–stabilizer count of the same sum.
    Orbits,
}

const COSET_BUDGET: u64 = 2_000_000;

/// Evaluation context for a free `Γ(𝒫)`-algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gamma {
    pub operad: Operad,
    pub field: FieldSpec,
    pub exec: Exec,
    pub method: Method,
}

/// The `(β)`-family parameter: a `Σ_r`-invariant vector of `𝔽[𝒫(n)]`.
pub type Invariant = BTreeMap<Op, Scalar>;

impl Gamma {
    pub fn new(operad: Operad, field: FieldSpec) -> Self {
        Gamma {
            operad,
            field,
            exec: Exec::default(),
            method: Method::Auto,
        }
    }

    pub fn with_exec(self, exec: Exec) -> Self {
        Gamma { exec, ..self }
    }

    pub fn with_method(self, method: Method) -> Self {
        Gamma { method, ..self }
    }

    pub fn zero(&self) -> FreeElem {
        FreeElem::zero(self.operad, self.field)
    }

    pub fn generator(&self, b: Gen) -> FreeElem {
        FreeElem::generator(self.operad, self.field, b)
    }

    fn check_op(&self, x: &Op) -> Result<()> {
        if x.operad() != self.operad {
            return Err(Error::InvalidElement(format!("{x} is not in {}", self.operad)));
        }
        Ok(())
    }

    /// `γ_{[x]_r,r}(b_1, …, b_p)` on generators, rewritten into normal form.
    pub fn normalize(&self, r: &Composition, x: &Op, gens: &[Gen]) -> Result<FreeElem> {
        self.check_op(x)?;
        if r.len() != gens.len() || r.total() != x.arity() {
            return Err(Error::ArityMismatch(format!("{x} with {r} on {} generators", gens.len())));
        }
        if r.total() == 0 {
            return Err(Error::ArityMismatch("operation of arity 0".into()));
        }
        let word: Vec<Gen> = r
            .parts()
            .iter()
            .zip(gens)
            .flat_map(|(&k, &g)| std::iter::repeat_n(g, k))
            .collect();
        let mut pairs: Vec<(Gen, u32)> = word.into_iter().zip(x.labels().iter().copied()).collect();
        pairs.sort_unstable();
        let k = index_ratio(&pair_stabilizer(&pairs), &young_label_stabilizer(x.labels(), r))?;
        Ok(FreeElem::term(
            self.field,
            GammaTerm::from_pairs(self.operad, &pairs),
            self.field.from_integer(&k),
        ))
    }

    /// Integer structure constants of `μ̃(γ_{[y]_r,r}(t_1, …, t_p))` for basis terms `t_i`.
    pub fn mu_tilde_counts(&self, y: &Op, r: &Composition, args: &[&GammaTerm]) -> Result<BTreeMap<GammaTerm, Integer>> {
        self.check_op(y)?;
        if r.has_zero_part() || r.len() != args.len() || y.arity() != r.total() || r.is_empty() {
            return Err(Error::ShapeError(format!("{y} with {r} on {} arguments", args.len())));
        }
        for t in args {
            self.check_op(t.x())?;
        }
        let shape = WreathShape::new(r.clone(), args.iter().map(|t| t.r.clone()).collect())?;
        let slots = r.block_of_points();
        let word: Vec<Gen> = slots.iter().flat_map(|&b| args[b].word()).collect();
        let outer = young_orbit(y.labels(), r);
        let inner: Vec<Vec<Vec<u32>>> = args.iter().map(|t| young_orbit(t.x.labels(), &t.r)).collect();
        let expansions: u64 = slots
            .iter()
            .map(|&b| inner[b].len() as u64)
            .fold(outer.len() as u64, u64::saturating_mul);
        let method = match self.method {
            Method::Auto => {
                let cosets = index_ratio(&factorial(word.len() as u64), &shape.order())?;
                if cosets * Integer::from(expansions) <= Integer::from(COSET_BUDGET) {
                    Method::Cosets
                } else {
                    Method::Orbits
                }
            }
            m => m,
        };
        let composites = |acc: &mut BTreeMap<Vec<u32>, u64>, yo: &Vec<u32>| {
            let mut stack: Vec<Vec<u32>> = vec![Vec::with_capacity(word.len())];
            for (k, &b) in slots.iter().enumerate() {
                let mut next = Vec::with_capacity(stack.len() * inner[b].len());
                for prefix in &stack {
                    for z in &inner[b] {
                        let mut v = prefix.clone();
                        v.extend(z.iter().map(|l| l + yo[k]));
                        next.push(v);
                    }
                }
                stack = next;
            }
            for v in stack {
                *acc.entry(v).or_insert(0) += 1;
            }
        };
        let merge = |mut a: BTreeMap<Vec<u32>, u64>, b: BTreeMap<Vec<u32>, u64>| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        };
        let labelled = self.exec.fold(&outer, BTreeMap::new, composites, merge);
        let operad = self.operad;
        let mut out: BTreeMap<GammaTerm, Integer> = BTreeMap::new();
        match method {
            Method::Orbits => {
                let order = shape.order();
                for (labels, count) in labelled {
                    let mut pairs: Vec<(Gen, u32)> = word.iter().copied().zip(labels).collect();
                    pairs.sort_unstable();
                    let t = GammaTerm::from_pairs(operad, &pairs);
                    *out.entry(t).or_default() += Integer::from(count) * pair_stabilizer(&pairs);
                }
                for v in out.values_mut() {
                    *v = index_ratio(v, &order)?;
                }
            }
            _ => {
                let labelled: Vec<(Vec<u32>, u64)> = labelled.into_iter().collect();
                let k = BlockSystem::wreath(&shape);
                let visit = |acc: &mut BTreeMap<Vec<(Gen, u32)>, u64>, tau: &Permutation| {
                    let tw = tau.permute(&word);
                    if tw.windows(2).any(|w| w[0] > w[1]) {
                        return;
                    }
                    for (labels, count) in &labelled {
                        let tl = tau.permute(labels);
                        let pairs: Vec<(Gen, u32)> = tw.iter().copied().zip(tl).collect();
                        if pairs.windows(2).all(|w| w[0] <= w[1]) {
                            *acc.entry(pairs).or_insert(0) += count;
                        }
                    }
                };
                let merge = |mut a: BTreeMap<Vec<(Gen, u32)>, u64>, b: BTreeMap<Vec<(Gen, u32)>, u64>| {
                    for (k, v) in b {
                        *a.entry(k).or_insert(0) += v;
                    }
                    a
                };
                let counts = k.fold_cosets(self.exec, BTreeMap::new, visit, merge);
                for (pairs, c) in counts {
                    out.insert(GammaTerm::from_pairs(operad, &pairs), Integer::from(c));
                }
            }
        }
        Ok(out)
    }

    /// `μ̃(γ_{[y]_r,r}(t_1, …, t_p))` in the working field.
    pub fn mu_tilde(&self, y: &Op, r: &Composition, args: &[&GammaTerm]) -> Result<FreeElem> {
        let mut out = self.zero();
        for (t, k) in self.mu_tilde_counts(y, r, args)? {
            out.add_term(t, &self.field.from_integer(&k));
        }
        Ok(out)
    }

    fn check_args(&self, r: &Composition, args: &[FreeElem]) -> Result<()> {
        if r.len() != args.len() {
            return Err(Error::ArityMismatch(format!("{} arguments for {}", args.len(), r)));
        }
        for a in args {
            if a.operad != self.operad || a.field != self.field {
                return Err(Error::InvalidElement(format!("argument {a} lives in another algebra")));
            }
        }
        Ok(())
    }

    /// `β_{X,r}(a_1, …, a_p)` for a `Σ_r`-invariant `X`, expanded multilinearly.
    pub fn beta_eval(&self, xs: &Invariant, r: &Composition, args: &[FreeElem]) -> Result<FreeElem> {
        self.check_args(r, args)?;
        if r.total() == 0 {
            return Err(Error::ArityMismatch("operation of arity 0".into()));
        }
        for (x, c) in xs {
            self.check_op(x)?;
            if x.arity() != r.total() {
                return Err(Error::ArityMismatch(format!("{x} against {r}")));
            }
            let mut at = 0;
            for &k in r.parts() {
                for i in at..at + k.saturating_sub(1) {
                    let swapped = x.act(&Permutation::transposition(x.arity(), i, i + 1))?;
                    if xs.get(&swapped) != Some(c) {
                        return Err(Error::NotInvariant(format!("{x} and {swapped} differ")));
                    }
                }
                at += k;
            }
        }
        let expanded: Vec<Vec<(&GammaTerm, &Scalar)>> = args.iter().map(|a| a.terms.iter().collect()).collect();
        let mut out = self.zero();
        let mut choice: Vec<Composition> = Vec::with_capacity(r.len());
        self.expand(xs, r, &expanded, &mut choice, &mut out)?;
        Ok(out)
    }

    fn expand(
        &self,
        xs: &Invariant,
        r: &Composition,
        expanded: &[Vec<(&GammaTerm, &Scalar)>],
        choice: &mut Vec<Composition>,
        out: &mut FreeElem,
    ) -> Result<()> {
        let i = choice.len();
        if i < r.len() {
            let terms = &expanded[i];
            let splits = if terms.is_empty() {
                if r.parts()[i] == 0 {
                    vec![Composition::new(vec![])]
                } else {
                    vec![]
                }
            } else {
                Composition::all(r.parts()[i], terms.len())
            };
            for k in splits {
                choice.push(k);
                self.expand(xs, r, expanded, choice, out)?;
                choice.pop();
            }
            return Ok(());
        }
        let mut coeff = self.field.one();
        let mut parts = Vec::new();
        let mut terms: Vec<&GammaTerm> = Vec::new();
        for (k, list) in choice.iter().zip(expanded) {
            for (&kj, (t, c)) in k.parts().iter().zip(list) {
                coeff = coeff * c.pow(kj as u32);
                if kj > 0 {
                    parts.push(kj);
                    terms.push(t);
                }
            }
        }
        let fine_r = Composition::new(parts);
        for (x, c) in xs {
            if young_canonical(x.labels(), &fine_r) != x.labels() {
                continue;
            }
            let scale = &coeff * c;
            for (t, k) in self.mu_tilde_counts(x, &fine_r, &terms)? {
                out.add_term(t, &(&scale * &self.field.from_integer(&k)));
            }
        }
        Ok(())
    }

    /// `γ_{[x]_r,r}(a_1, …, a_p) = β_{𝒪_{Σ_r}([x]),r}(a_1, …, a_p)`.
    pub fn gamma_eval(&self, x: &Op, r: &Composition, args: &[FreeElem]) -> Result<FreeElem> {
        self.check_op(x)?;
        if x.arity() != r.total() {
            return Err(Error::ArityMismatch(format!("{x} against {r}")));
        }
        self.beta_eval(&self.orbit_sum(x, r), r, args)
    }

    /// `𝒪_{Σ_r}([x]_r)` as an invariant vector.
    pub fn orbit_sum(&self, x: &Op, r: &Composition) -> Invariant {
        young_orbit(x.labels(), r)
            .into_iter()
            .map(|l| (Op::from_labels(x.operad(), l), self.field.one()))
            .collect()
    }

    /// Replaces every generator `b` by `images[b]`.
    pub fn substitute(&self, e: &FreeElem, images: &BTreeMap<Gen, FreeElem>) -> Result<FreeElem> {
        let mut out = self.zero();
        for (t, c) in e.terms() {
            let args = t
                .gens
                .iter()
                .map(|g| images.get(g).cloned().unwrap_or_else(|| self.generator(*g)))
                .collect::<Vec<_>>();
            out.add_assign(&self.gamma_eval(&t.x, &t.r, &args)?.scale(c));
        }
        Ok(out)
    }

    /// The level/commutative product `φ_{h,(1,1)}(a, b)`.
    pub fn product(&self, a: &FreeElem, b: &FreeElem) -> Result<FreeElem> {
        let x = match self.operad {
            Operad::Com => Op::com(2),
            Operad::Lev => Op::lev(vec![1, 1])?,
        };
        self.gamma_eval(&x, &Composition::new(vec![1, 1]), &[a.clone(), b.clone()])
    }
}

/// An element of the coinvariant side `⊕ (𝒫(n) ⊗ V^{⊗n})_{Σ_n}`, keyed by orbit class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoinvElem(pub FreeElem);

/// The orbit-sum identification of coinvariant classes with invariant basis elements.
pub fn trace_map(s: &CoinvElem) -> FreeElem {
    s.0.clone()
}

pub fn trace_inverse(e: &FreeElem) -> CoinvElem {
    CoinvElem(e.clone())
}

/// `Σ_{σ∈Σ_n} σ·(x ⊗ w)`: each class picks up the order of its stabilizer.
pub fn norm_map(s: &CoinvElem) -> FreeElem {
    let mut out = FreeElem::zero(s.0.operad, s.0.field);
    for (t, c) in s.0.terms() {
        out.add_term(t.clone(), &(c * &s.0.field.from_integer(&t.stabilizer())));
    }
    out
}

/// Inverse of [`norm_map`]; fails in characteristic `p` when a stabilizer order is divisible by `p`.
pub fn norm_inverse(e: &FreeElem) -> Result<CoinvElem> {
    let mut out = FreeElem::zero(e.operad, e.field);
    for (t, c) in e.terms() {
        let s = e.field.from_integer(&t.stabilizer());
        let inv = s.inv().ok_or_else(|| {
            Error::Scalar(crate::scalar::ScalarError::NonInvertibleDenominator {
                den: t.stabilizer(),
                p: e.field.characteristic(),
            })
        })?;
        out.add_term(t.clone(), &(c * &inv));
    }
    Ok(CoinvElem(out))
}

/// Explicit invariant tensor of the arity-`n` part: (labels, word) ↦ coefficient.
pub fn expand_to_invariant(e: &FreeElem) -> BTreeMap<(Vec<u32>, Vec<Gen>), Scalar> {
    let mut out = BTreeMap::new();
    for (t, c) in e.terms() {
        for arrangement in crate::symaction::distinct_arrangements(&t.pairs()) {
            let (word, labels): (Vec<Gen>, Vec<u32>) = arrangement.into_iter().unzip();
            out.insert((labels, word), c.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symaction::orbit;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn lev(d: &[u32]) -> Op {
        Op::lev(d.to_vec()).unwrap()
    }

    fn comp(p: &[usize]) -> Composition {
        Composition::new(p.to_vec())
    }

    fn ctx(operad: Operad, field: FieldSpec) -> Gamma {
        Gamma::new(operad, field)
    }

    #[test]
    fn normalize_examples() {
        let g = ctx(Operad::Lev, Q);
        let t: GammaTerm = "h=[1,2,2]@(1,2)(x,y)".parse().unwrap();
        let e = g.normalize(t.r(), t.x(), t.gens()).unwrap();
        assert_eq!(e, FreeElem::term(Q, t, Q.one()));
        let merged = g.normalize(&comp(&[1, 1]), &lev(&[1, 1]), &[0, 0]).unwrap();
        let expected: GammaTerm = "h=[1,1]@(2)(x)".parse().unwrap();
        assert_eq!(merged, FreeElem::term(Q, expected, Q.from_i64(2)));
        let c = ctx(Operad::Com, Q);
        let dropped = c.normalize(&comp(&[0, 1]), &Op::com(1), &[0, 1]).unwrap();
        assert_eq!(dropped, c.generator(1));
        let swapped = c.normalize(&comp(&[1, 2]), &Op::com(3), &[1, 0]).unwrap();
        assert_eq!(swapped.to_string(), "X3@(2,1)(x,y)");
    }

    /// Explicit `Σ_{σ∈Σ_n/Σ_r} σ·(𝒪_{Σ_r}(x) ⊗ W)` read at canonical pairs.
    fn normalize_by_cosets(x: &Op, r: &Composition, gens: &[Gen]) -> BTreeMap<(Vec<u32>, Vec<Gen>), Integer> {
        let word: Vec<Gen> = r.parts().iter().zip(gens).flat_map(|(&k, &g)| std::iter::repeat_n(g, k)).collect();
        let mut out = BTreeMap::new();
        let ys = orbit(x, &BlockSystem::young(&r.iota())).unwrap();
        for s in BlockSystem::young(&r.iota()).cosets() {
            for y in &ys {
                let key = (s.permute(y.labels()), s.permute(&word));
                *out.entry(key).or_insert(Integer::from(0)) += 1;
            }
        }
        out
    }

    #[test]
    fn normalize_matches_coset_sum() {
        for operad in [Operad::Com, Operad::Lev] {
            let g = ctx(operad, Q);
            for n in 1..=5 {
                for r in Composition::all(n, 3) {
                    for x in operad.elements(n).iter() {
                        let x = Op::from_labels(operad, young_canonical(x.labels(), &r));
                        for gens in [[0, 0, 0], [0, 1, 0], [2, 1, 0], [1, 1, 0]] {
                            let e = g.normalize(&r, &x, &gens).unwrap();
                            let brute = normalize_by_cosets(&x, &r, &gens);
                            let inv = expand_to_invariant(&e);
                            assert_eq!(inv.len(), brute.len());
                            for (k, v) in &brute {
                                assert_eq!(inv[k], Q.from_integer(v), "{x} {r} {gens:?}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn lev_divided_square_of_square() {
        let g = ctx(Operad::Lev, Q);
        let sq = g.gamma_eval(&lev(&[1, 1]), &comp(&[2]), &[g.generator(0)]).unwrap();
        let e = g.gamma_eval(&lev(&[1, 1]), &comp(&[2]), &[sq]).unwrap();
        let expected: GammaTerm = "h=[2,2,2,2]@(4)(x)".parse().unwrap();
        assert_eq!(e, FreeElem::term(Q, expected, Q.from_i64(3)));
    }

    #[test]
    fn com_divided_powers() {
        let g = ctx(Operad::Com, Q);
        let (x, y) = (g.generator(0), g.generator(1));
        let xy = g.product(&x, &y).unwrap();
        let sq = g.gamma_eval(&Op::com(2), &comp(&[2]), &[xy]).unwrap();
        let t: GammaTerm = "X4@(2,2)(x,y)".parse().unwrap();
        assert_eq!(sq, FreeElem::term(Q, t, Q.from_i64(2)));
        let g2 = g.gamma_eval(&Op::com(2), &comp(&[2]), std::slice::from_ref(&x)).unwrap();
        let g3 = g.gamma_eval(&Op::com(3), &comp(&[3]), std::slice::from_ref(&x)).unwrap();
        let g5: GammaTerm = "X5@(5)(x)".parse().unwrap();
        assert_eq!(g.product(&g2, &g3).unwrap(), FreeElem::term(Q, g5, Q.from_i64(10)));
    }

    #[test]
    fn methods_agree() {
        for operad in [Operad::Com, Operad::Lev] {
            let base = ctx(operad, Q);
            let a = base.gamma_eval(&operad.elements(2)[0], &comp(&[1, 1]), &[base.generator(0), base.generator(1)]).unwrap();
            let b = base.gamma_eval(&operad.elements(2)[0], &comp(&[2]), &[base.generator(0)]).unwrap();
            for x in operad.elements(3).iter() {
                for r in [comp(&[1, 2]), comp(&[2, 1]), comp(&[1, 1, 1])] {
                    let x = Op::from_labels(operad, young_canonical(x.labels(), &r));
                    let args: Vec<FreeElem> = (0..r.len()).map(|i| if i % 2 == 0 { a.clone() } else { b.plus(&base.generator(2)) }).collect();
                    let results: Vec<FreeElem> = [
                        base.with_method(Method::Cosets).with_exec(Exec::Sequential),
                        base.with_method(Method::Cosets).with_exec(Exec::Parallel),
                        base.with_method(Method::Orbits).with_exec(Exec::Sequential),
                        base.with_method(Method::Orbits).with_exec(Exec::Parallel),
                    ]
                    .iter()
                    .map(|g| g.gamma_eval(&x, &r, &args).unwrap())
                    .collect();
                    for w in results.windows(2) {
                        assert_eq!(w[0], w[1]);
                    }
                }
            }
        }
    }

    #[test]
    fn unit_laws() {
        for operad in [Operad::Com, Operad::Lev] {
            let g = ctx(operad, FieldSpec::prime(3).unwrap());
            let a = g
                .gamma_eval(&operad.elements(3)[0], &comp(&[2, 1]), &[g.generator(0), g.generator(1)])
                .unwrap()
                .plus(&g.generator(2));
            assert_eq!(g.gamma_eval(&Op::unit(operad), &comp(&[1]), std::slice::from_ref(&a)).unwrap(), a);
            let images: BTreeMap<Gen, FreeElem> = (0..3).map(|b| (b, g.generator(b))).collect();
            assert_eq!(g.substitute(&a, &images).unwrap(), a);
        }
    }

    #[test]
    fn trace_round_trips() {
        let g = ctx(Operad::Lev, Q);
        let e = g.gamma_eval(&lev(&[1, 2, 2]), &comp(&[1, 2]), &[g.generator(0), g.generator(1)]).unwrap();
        assert_eq!(trace_map(&trace_inverse(&e)), e);
        assert_eq!(norm_map(&norm_inverse(&e).unwrap()), e);
        let x = g.generator(0);
        assert_eq!(trace_map(&CoinvElem(x.clone())), x);
        let c = ctx(Operad::Com, FieldSpec::prime(2).unwrap());
        let sq = c.gamma_eval(&Op::com(2), &comp(&[2]), &[c.generator(0)]).unwrap();
        assert_eq!(trace_map(&CoinvElem(sq.clone())), sq);
        assert!(norm_inverse(&sq).is_err());
    }

    #[test]
    fn term_text() {
        let t: GammaTerm = "h=[1,1]@(1,1)(x,y)".parse().unwrap();
        assert_eq!(t.to_string(), "h=[1,1]@(1,1)(x,y)");
        assert!("h=[1,1]@(1,1)(y,x)".parse::<GammaTerm>().is_err());
        assert!("h=[2,1,2]@(3)(x)".parse::<GammaTerm>().is_err());
    }
}
