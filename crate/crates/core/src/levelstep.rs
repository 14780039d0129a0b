//! Step operations `φ_{h,r}`, their translation to level-operad operations, and
//! the closed-form free level algebra on binary Huffman sequences.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freegamma::{FreeElem, Gamma, GammaTerm};
use crate::permcomb::{parse_list, wedge_is_composition, Composition};
use crate::scalar::{binomial, factorial, index_ratio, FieldSpec, Integer, Scalar};
use crate::setoperad::{satisfies_kraft, Op, Operad};
use crate::symaction::young_canonical;

/// `h ∈ 𝒞_r`: a depth map constant on every block of `ι(r)` with `Σ 2^{-h(i)} = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StepFunction {
    h: Vec<u32>,
    r: Composition,
}

impl StepFunction {
    pub fn new(h: Vec<u32>, r: Composition) -> Result<Self> {
        if h.len() != r.total() {
            return Err(Error::NotStep(format!("{} values for {}", h.len(), r)));
        }
        if !satisfies_kraft(&h) {
            return Err(Error::NotStep(format!("{h:?} violates Σ 2^-h = 1")));
        }
        let mut at = 0;
        for &k in r.parts() {
            if h[at..at + k].windows(2).any(|w| w[0] != w[1]) {
                return Err(Error::NotStep(format!("{h:?} is not constant on the blocks of {r}")));
            }
            at += k;
        }
        Ok(StepFunction { h, r })
    }

    /// Builds `h` from one value per block.
    pub fn from_levels(levels: &[u32], r: &Composition) -> Result<Self> {
        if levels.len() != r.len() {
            return Err(Error::NotStep(format!("{} levels for {}", levels.len(), r)));
        }
        let h = r
            .parts()
            .iter()
            .zip(levels)
            .flat_map(|(&k, &l)| std::iter::repeat_n(l, k))
            .collect();
        Self::new(h, r.clone())
    }

    pub fn h(&self) -> &[u32] {
        &self.h
    }

    pub fn r(&self) -> &Composition {
        &self.r
    }

    /// `k_i = h(block i)`, `None` on empty blocks.
    pub fn levels(&self) -> Vec<Option<u32>> {
        let mut at = 0;
        self.r
            .parts()
            .iter()
            .map(|&k| {
                let v = if k > 0 { Some(self.h[at]) } else { None };
                at += k;
                v
            })
            .collect()
    }

    /// `h^P`: the depth map as a level-operad element.
    pub fn as_lev(&self) -> Op {
        Op::lev(self.h.clone()).expect("step functions satisfy the Kraft equality")
    }

    /// The same map viewed on a finer (or reordered) composition.
    pub fn with_r(&self, r: Composition) -> Result<Self> {
        Self::new(self.h.clone(), r)
    }
}

impl fmt::Display for StepFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.h.iter().map(|x| x.to_string()).collect();
        write!(f, "h=[{}]@r={}", parts.join(","), self.r)
    }
}

impl FromStr for StepFunction {
    type Err = Error;

    /// `h=[1,2,2]@r=(1,2)`.
    fn from_str(s: &str) -> Result<Self> {
        let (h, r) = s
            .trim()
            .split_once("@r=")
            .ok_or_else(|| Error::Parse(format!("step function `{s}` must look like h=[1,2,2]@r=(1,2)")))?;
        let inner = h
            .trim()
            .strip_prefix("h=")
            .unwrap_or(h.trim())
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("bad depth list in `{s}`")))?;
        let h = parse_list(inner)?.into_iter().map(|x| x as u32).collect();
        StepFunction::new(h, r.parse()?)
    }
}

/// `𝒞_r`, by search over one level per nonempty block (levels at most `n - 1`).
pub fn enumerate_c_r(r: &Composition) -> Vec<StepFunction> {
    let n = r.total();
    if n == 0 {
        return vec![];
    }
    let top = n.saturating_sub(1) as u32;
    let mut out = Vec::new();
    let mut levels = Vec::with_capacity(r.len());
    fn rec(r: &Composition, top: u32, levels: &mut Vec<u32>, out: &mut Vec<StepFunction>) {
        if levels.len() == r.len() {
            if let Ok(s) = StepFunction::from_levels(levels, r) {
                out.push(s);
            }
            return;
        }
        let range = if r.parts()[levels.len()] == 0 { 0..=0 } else { 0..=top };
        for l in range {
            levels.push(l);
            rec(r, top, levels, out);
            levels.pop();
        }
    }
    rec(r, top, &mut levels, &mut out);
    out
}

/// A binary Huffman sequence `u` with `Σ u(i) 2^{-i} = 1`, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bhs {
    u: Vec<u64>,
}

fn trim(mut u: Vec<u64>) -> Vec<u64> {
    while u.last() == Some(&0) {
        u.pop();
    }
    u
}

fn bhs_kraft(u: &[u64]) -> bool {
    if u.is_empty() {
        return false;
    }
    let top = u.len() - 1;
    let mut sum = Integer::from(0);
    for (i, &c) in u.iter().enumerate() {
        sum += Integer::from(c) << (top - i);
    }
    sum == Integer::from(1) << top
}

impl Bhs {
    pub fn new(u: Vec<u64>) -> Result<Self> {
        let u = trim(u);
        if !bhs_kraft(&u) {
            return Err(Error::InvalidElement(format!("{u:?} violates Σ u(i) 2^-i = 1")));
        }
        Ok(Bhs { u })
    }

    pub fn unit() -> Self {
        Bhs { u: vec![1] }
    }

    pub fn counts(&self) -> &[u64] {
        &self.u
    }

    pub fn get(&self, i: usize) -> u64 {
        self.u.get(i).copied().unwrap_or(0)
    }

    pub fn size(&self) -> u64 {
        self.u.iter().sum()
    }

    /// The depth census of a level element.
    pub fn census(x: &Op) -> Self {
        let mut u = vec![0u64; x.height() as usize + 1];
        for &h in x.labels() {
            u[h as usize] += 1;
        }
        Bhs { u: trim(u) }
    }

    /// The sorted depth sequence with this census.
    pub fn to_lev(&self) -> Op {
        let depths = self
            .u
            .iter()
            .enumerate()
            .flat_map(|(i, &c)| std::iter::repeat_n(i as u32, c as usize))
            .collect();
        Op::lev(depths).expect("census of a Huffman sequence")
    }

    /// The free `Γ(Lev)` basis term on generator `x` with this census.
    pub fn to_term(&self) -> GammaTerm {
        let n = self.size() as usize;
        GammaTerm::new(Composition::new(vec![n]), self.to_lev(), vec![0]).expect("one-generator term")
    }

    pub fn from_term(t: &GammaTerm) -> Result<Self> {
        if t.gens() != [0] || t.operad() != Operad::Lev {
            return Err(Error::InvalidElement(format!("{t} is not a one-generator level term")));
        }
        Ok(Self::census(t.x()))
    }
}

impl fmt::Display for Bhs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.u.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl FromStr for Bhs {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("sequence `{s}` must look like [0,1,1,2]")))?;
        Bhs::new(parse_list(inner)?.into_iter().map(|x| x as u64).collect())
    }
}

/// `BHS(n)`, by direct search over counts per depth (depth at most `n - 1`).
pub fn enumerate_bhs(n: usize) -> Vec<Bhs> {
    if n == 0 {
        return vec![];
    }
    let top = n - 1;
    let mut out = Vec::new();
    let mut u = Vec::with_capacity(n);
    // `left_mass` is the remaining mass in units of 2^{-top}
    fn rec(top: usize, left_points: usize, left_mass: u64, u: &mut Vec<u64>, out: &mut Vec<Bhs>) {
        let depth = u.len();
        if depth > top {
            if left_points == 0 && left_mass == 0 {
                out.push(Bhs { u: trim(u.clone()) });
            }
            return;
        }
        let w = 1u64 << (top - depth);
        for c in 0..=left_points {
            let m = c as u64 * w;
            if m > left_mass {
                break;
            }
            u.push(c as u64);
            rec(top, left_points - c, left_mass - m, u, out);
            u.pop();
        }
    }
    rec(top, n, 1u64 << top, &mut u, &mut out);
    out.sort();
    out
}

/// `u·v = (0, u(0)+v(0), u(1)+v(1), …)`.
pub fn level_dot(u: &Bhs, v: &Bhs) -> Bhs {
    let len = u.u.len().max(v.u.len());
    let mut w = vec![0];
    w.extend((0..len).map(|i| u.get(i) + v.get(i)));
    Bhs { u: trim(w) }
}

/// A linear combination of Huffman sequences: the free level algebra on one generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepElem {
    field: FieldSpec,
    terms: BTreeMap<Bhs, Scalar>,
}

impl StepElem {
    pub fn zero(field: FieldSpec) -> Self {
        StepElem {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(field: FieldSpec, u: Bhs) -> Self {
        let mut e = Self::zero(field);
        e.add_term(u, &field.one());
        e
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn terms(&self) -> &BTreeMap<Bhs, Scalar> {
        &self.terms
    }

    pub fn coefficient(&self, u: &Bhs) -> Scalar {
        self.terms.get(u).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, u: Bhs, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let zero = self.field.zero();
        let slot = self.terms.entry(u.clone()).or_insert(zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&u);
        }
    }

    pub fn plus(&self, other: &StepElem) -> StepElem {
        let mut out = self.clone();
        for (u, c) in &other.terms {
            out.add_term(u.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> StepElem {
        let mut out = Self::zero(self.field);
        for (u, d) in &self.terms {
            out.add_term(u.clone(), &(d * c));
        }
        out
    }

    pub fn to_free(&self) -> FreeElem {
        let mut out = FreeElem::zero(Operad::Lev, self.field);
        for (u, c) in &self.terms {
            out.add_term(u.to_term(), c);
        }
        out
    }

    pub fn from_free(e: &FreeElem) -> Result<Self> {
        let mut out = Self::zero(e.field());
        for (t, c) in e.terms() {
            out.add_term(Bhs::from_term(t)?, c);
        }
        Ok(out)
    }
}

impl fmt::Display for StepElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (u, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{u}")?;
            } else {
                write!(f, "{c}·{u}")?;
            }
        }
        Ok(())
    }
}

/// `u * v = ∏_j C(u(j)+v(j), u(j)) · (u·v)`.
pub fn level_star(u: &Bhs, v: &Bhs, field: FieldSpec) -> StepElem {
    let len = u.u.len().max(v.u.len());
    let mut k = Integer::from(1);
    for j in 0..len {
        k *= binomial(u.get(j) + v.get(j), u.get(j));
    }
    let mut out = StepElem::zero(field);
    out.add_term(level_dot(u, v), &field.from_integer(&k));
    out
}

/// Closed-form `φ_{h,r}(u_1, …, u_p)` as an exact integer and output key.
pub fn phi_bhs_integer(h: &StepFunction, us: &[Bhs]) -> Result<(Bhs, Integer)> {
    let r = h.r();
    if us.len() != r.len() {
        return Err(Error::ArityMismatch(format!("{} sequences for {}", us.len(), r)));
    }
    let mut out: Vec<u64> = Vec::new();
    let mut den = Integer::from(1);
    for ((&ri, level), u) in r.parts().iter().zip(h.levels()).zip(us) {
        den *= factorial(ri as u64);
        for &c in u.counts() {
            den *= num_traits::pow(factorial(c), ri);
        }
        let Some(k) = level else { continue };
        for (l, &c) in u.counts().iter().enumerate() {
            let at = l + k as usize;
            if out.len() <= at {
                out.resize(at + 1, 0);
            }
            out[at] += ri as u64 * c;
        }
    }
    let mut num = Integer::from(1);
    for &c in &out {
        num *= factorial(c);
    }
    let coeff = index_ratio(&num, &den)?;
    let key = Bhs::new(out).map_err(|_| Error::NotStep(format!("{h} gives no Huffman sequence")))?;
    Ok((key, coeff))
}

pub fn phi_eval_bhs(h: &StepFunction, us: &[Bhs], field: FieldSpec) -> Result<StepElem> {
    let (key, k) = phi_bhs_integer(h, us)?;
    let mut out = StepElem::zero(field);
    out.add_term(key, &field.from_integer(&k));
    Ok(out)
}

/// An algebra carrying step operations `φ_{h,r}`.
pub trait StepAlgebra: Sync {
    type Elem: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync;

    fn field(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, c: &Scalar) -> Self::Elem;
    fn phi(&self, h: &StepFunction, args: &[Self::Elem]) -> Result<Self::Elem>;
}

/// `𝔽[BHS]` with the closed-form operations, extended by multi-additivity and homogeneity.
#[derive(Debug, Clone, Copy)]
pub struct BhsAlgebra {
    pub field: FieldSpec,
}

impl BhsAlgebra {
    fn expand(&self, h: &StepFunction, args: &[StepElem], choice: &mut Vec<Composition>, out: &mut StepElem) -> Result<()> {
        let r = h.r();
        let i = choice.len();
        if i < r.len() {
            let len = args[i].terms.len();
            let splits = if len == 0 {
                if r.parts()[i] == 0 {
                    vec![Composition::new(vec![])]
                } else {
                    vec![]
                }
            } else {
                Composition::all(r.parts()[i], len)
            };
            for k in splits {
                choice.push(k);
                self.expand(h, args, choice, out)?;
                choice.pop();
            }
            return Ok(());
        }
        let mut coeff = self.field.one();
        let mut parts = Vec::new();
        let mut us = Vec::new();
        for (k, a) in choice.iter().zip(args) {
            for (&kj, (u, c)) in k.parts().iter().zip(a.terms.iter()) {
                coeff = coeff * c.pow(kj as u32);
                if kj > 0 {
                    parts.push(kj);
                    us.push(u.clone());
                }
            }
        }
        let fine = h.with_r(Composition::new(parts))?;
        let (key, k) = phi_bhs_integer(&fine, &us)?;
        out.add_term(key, &(coeff * self.field.from_integer(&k)));
        Ok(())
    }
}

impl StepAlgebra for BhsAlgebra {
    type Elem = StepElem;

    fn field(&self) -> FieldSpec {
        self.field
    }

    fn zero(&self) -> StepElem {
        StepElem::zero(self.field)
    }

    fn add(&self, a: &StepElem, b: &StepElem) -> StepElem {
        a.plus(b)
    }

    fn scale(&self, a: &StepElem, c: &Scalar) -> StepElem {
        a.scale(c)
    }

    fn phi(&self, h: &StepFunction, args: &[StepElem]) -> Result<StepElem> {
        if args.len() != h.r().len() {
            return Err(Error::ArityMismatch(format!("{} arguments for {}", args.len(), h.r())));
        }
        if h.r().total() == 0 {
            return Err(Error::ArityMismatch("operation of arity 0".into()));
        }
        let mut out = StepElem::zero(self.field);
        self.expand(h, args, &mut Vec::new(), &mut out)?;
        Ok(out)
    }
}

/// A free `Γ(Lev)`-algebra with `φ_{h,r} := γ_{[h^P]_r,r}`.
#[derive(Debug, Clone, Copy)]
pub struct LevGamma {
    pub gamma: Gamma,
}

impl StepAlgebra for LevGamma {
    type Elem = FreeElem;

    fn field(&self) -> FieldSpec {
        self.gamma.field
    }

    fn zero(&self) -> FreeElem {
        self.gamma.zero()
    }

    fn add(&self, a: &FreeElem, b: &FreeElem) -> FreeElem {
        a.plus(b)
    }

    fn scale(&self, a: &FreeElem, c: &Scalar) -> FreeElem {
        a.scale(c)
    }

    fn phi(&self, h: &StepFunction, args: &[FreeElem]) -> Result<FreeElem> {
        self.gamma.gamma_eval(&h.as_lev(), h.r(), args)
    }
}

/// A free `Γ(Com)`-algebra with `φ_{h,r}(a) = ∏_{r_i > 0} γ_{r_i}(a_i)`.
#[derive(Debug, Clone, Copy)]
pub struct ComPullback {
    pub gamma: Gamma,
}

impl ComPullback {
    pub fn divided_power(&self, n: usize, a: &FreeElem) -> Result<FreeElem> {
        self.gamma.gamma_eval(&Op::com(n), &Composition::new(vec![n]), std::slice::from_ref(a))
    }
}

impl StepAlgebra for ComPullback {
    type Elem = FreeElem;

    fn field(&self) -> FieldSpec {
        self.gamma.field
    }

    fn zero(&self) -> FreeElem {
        self.gamma.zero()
    }

    fn add(&self, a: &FreeElem, b: &FreeElem) -> FreeElem {
        a.plus(b)
    }

    fn scale(&self, a: &FreeElem, c: &Scalar) -> FreeElem {
        a.scale(c)
    }

    fn phi(&self, h: &StepFunction, args: &[FreeElem]) -> Result<FreeElem> {
        if args.len() != h.r().len() {
            return Err(Error::ArityMismatch(format!("{} arguments for {}", args.len(), h.r())));
        }
        let mut acc: Option<FreeElem> = None;
        for (&k, a) in h.r().parts().iter().zip(args) {
            if k == 0 {
                continue;
            }
            let g = self.divided_power(k, a)?;
            acc = Some(match acc {
                None => g,
                Some(prev) => self.gamma.product(&prev, &g)?,
            });
        }
        acc.ok_or_else(|| Error::ArityMismatch("operation of arity 0".into()))
    }
}

/// `θ_{[I]_r,r}(a_1, …, a_p) = φ_{I^f, r∧I^f}(a_1, …, a_1, …, a_p, …, a_p)` with each
/// argument repeated `o(I) + 1` times.
pub fn theta_from_phi<A: StepAlgebra>(alg: &A, x: &Op, r: &Composition, args: &[A::Elem]) -> Result<A::Elem> {
    if x.operad() != Operad::Lev || x.arity() != r.total() || args.len() != r.len() {
        return Err(Error::ArityMismatch(format!("{x} with {r} on {} arguments", args.len())));
    }
    let sorted = Op::lev(young_canonical(x.labels(), r))?;
    let levels = sorted.partition();
    debug_assert!(wedge_is_composition(r, &levels));
    let wedge = r
        .iota()
        .wedge(&levels)?
        .as_composition()
        .ok_or_else(|| Error::ShapeError(format!("{r} ∧ {sorted} is not a composition")))?;
    let copies = levels.len();
    let repeated: Vec<A::Elem> = args
        .iter()
        .flat_map(|a| std::iter::repeat_n(a.clone(), copies))
        .collect();
    alg.phi(&StepFunction::new(sorted.labels().to_vec(), wedge)?, &repeated)
}

/// `φ_{h,r} := θ_{[h^P]_r,r}`, the inverse translation.
pub fn phi_from_theta<A, F>(theta: F, h: &StepFunction, args: &[A]) -> Result<A>
where
    F: Fn(&Op, &Composition, &[A]) -> Result<A>,
{
    theta(&h.as_lev(), h.r(), args)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setoperad::lev_classes;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn comp(p: &[usize]) -> Composition {
        Composition::new(p.to_vec())
    }

    fn bhs(u: &[u64]) -> Bhs {
        Bhs::new(u.to_vec()).unwrap()
    }

    #[test]
    fn c_r_examples() {
        assert!(enumerate_c_r(&comp(&[3])).is_empty());
        let four = enumerate_c_r(&comp(&[4]));
        assert_eq!(four.len(), 1);
        assert_eq!(four[0].h(), &[2, 2, 2, 2]);
        let pair = enumerate_c_r(&comp(&[1, 1]));
        assert_eq!(pair.len(), 1);
        assert_eq!(pair[0].h(), &[1, 1]);
        for n in 1..=9usize {
            let expect = n.is_power_of_two() as usize;
            assert_eq!(enumerate_c_r(&comp(&[n])).len(), expect, "n = {n}");
        }
    }

    #[test]
    fn bhs_examples() {
        assert_eq!(enumerate_bhs(1), vec![bhs(&[1])]);
        assert_eq!(enumerate_bhs(2), vec![bhs(&[0, 2])]);
        assert_eq!(enumerate_bhs(4), vec![bhs(&[0, 0, 4]), bhs(&[0, 1, 1, 2])]);
    }

    #[test]
    fn bhs_count_matches_level_classes() {
        for n in 1..=12 {
            assert_eq!(enumerate_bhs(n).len(), lev_classes(n).len(), "n = {n}");
        }
    }

    #[test]
    fn dot_and_star_examples() {
        assert_eq!(level_dot(&bhs(&[1]), &bhs(&[1])), bhs(&[0, 2]));
        assert_eq!(level_dot(&bhs(&[0, 2]), &bhs(&[0, 2])), bhs(&[0, 0, 4]));
        assert_eq!(level_star(&bhs(&[1]), &bhs(&[1]), Q), StepElem::basis(Q, bhs(&[0, 2])).scale(&Q.from_i64(2)));
        let u = bhs(&[0, 2]);
        assert_eq!(level_star(&u, &u, Q).coefficient(&bhs(&[0, 0, 4])), Q.from_i64(6));
        assert!(level_star(&u, &u, FieldSpec::prime(2).unwrap()).is_zero());
        let v = bhs(&[0, 1, 1, 2]);
        assert_eq!(level_star(&u, &v, Q), level_star(&v, &u, Q));
    }

    #[test]
    fn phi_examples() {
        let u = bhs(&[0, 1, 1, 2]);
        let unit = StepFunction::new(vec![0], comp(&[1])).unwrap();
        assert_eq!(phi_eval_bhs(&unit, std::slice::from_ref(&u), Q).unwrap(), StepElem::basis(Q, u));
        let sq = StepFunction::new(vec![1, 1], comp(&[2])).unwrap();
        let e = phi_eval_bhs(&sq, &[bhs(&[0, 2])], Q).unwrap();
        assert_eq!(e, StepElem::basis(Q, bhs(&[0, 0, 4])).scale(&Q.from_i64(3)));
        let star = StepFunction::new(vec![1, 1], comp(&[1, 1])).unwrap();
        for a in enumerate_bhs(3) {
            for b in enumerate_bhs(4) {
                assert_eq!(phi_eval_bhs(&star, &[a.clone(), b.clone()], Q).unwrap(), level_star(&a, &b, Q));
            }
        }
    }

    #[test]
    fn step_text() {
        let s: StepFunction = "h=[1,2,2]@r=(1,2)".parse().unwrap();
        assert_eq!(s.to_string(), "h=[1,2,2]@r=(1,2)");
        assert!(matches!("h=[1,2,2]@r=(2,1)".parse::<StepFunction>(), Err(Error::NotStep(_))));
        assert_eq!("[0,1,1,2]".parse::<Bhs>().unwrap().to_string(), "[0,1,1,2]");
    }

    #[test]
    fn census_of_composite() {
        for r in [comp(&[1, 1]), comp(&[2]), comp(&[1, 2]), comp(&[2, 1, 1])] {
            for h in enumerate_c_r(&r) {
                for u in enumerate_bhs(2) {
                    for v in enumerate_bhs(3) {
                        let us: Vec<Bhs> = (0..r.len()).map(|i| if i % 2 == 0 { u.clone() } else { v.clone() }).collect();
                        let ys: Vec<Op> = us.iter().map(Bhs::to_lev).collect();
                        let m = crate::permrep::compose_blocks(&h.as_lev(), &r, &ys).unwrap();
                        let (key, _) = phi_bhs_integer(&h, &us).unwrap();
                        assert_eq!(Bhs::census(&m), key);
                    }
                }
            }
        }
    }

    #[test]
    fn com_pullback_examples() {
        let c = ComPullback { gamma: Gamma::new(Operad::Com, Q) };
        let x = c.gamma.generator(0);
        let y = c.gamma.generator(1);
        let h2 = StepFunction::new(vec![1, 1], comp(&[2])).unwrap();
        assert_eq!(c.phi(&h2, std::slice::from_ref(&x)).unwrap(), c.divided_power(2, &x).unwrap());
        let h11 = StepFunction::new(vec![1, 1], comp(&[1, 1])).unwrap();
        assert_eq!(c.phi(&h11, &[x.clone(), y.clone()]).unwrap(), c.gamma.product(&x, &y).unwrap());
        let h0 = StepFunction::new(vec![1, 1], comp(&[0, 2])).unwrap();
        assert_eq!(c.phi(&h0, &[x.clone(), y.clone()]).unwrap(), c.divided_power(2, &y).unwrap());
    }

    #[test]
    fn theta_examples() {
        let alg = BhsAlgebra { field: Q };
        let u = StepElem::basis(Q, bhs(&[0, 1, 1, 2]));
        let one = Op::unit(Operad::Lev);
        assert_eq!(theta_from_phi(&alg, &one, &comp(&[1]), std::slice::from_ref(&u)).unwrap(), u);
    }
}
