//! Permutation representations `𝔽[X]`: invariants, coinvariants and the maps between them.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::permcomb::{Composition, OrderedPartition, Permutation};
use crate::scalar::{index_ratio, FieldSpec, Integer, Scalar};
use crate::setoperad::Op;
use crate::symaction::{orbit, stabilizer_order, Action, BlockSystem, WreathShape};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Plain,
    Invariant,
    /// Keys are the least elements of their orbits.
    Coinvariant,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GVector<X: Ord> {
    pub field: FieldSpec,
    pub mode: Mode,
    terms: BTreeMap<X, Scalar>,
}

impl<X: Ord + Clone> GVector<X> {
    pub fn new(field: FieldSpec, mode: Mode) -> Self {
        GVector {
            field,
            mode,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(field: FieldSpec, mode: Mode, x: X) -> Self {
        let mut v = Self::new(field, mode);
        v.add(x, &field.one());
        v
    }

    pub fn add(&mut self, x: X, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let zero = self.field.zero();
        let entry = self.terms.entry(x.clone()).or_insert(zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&x);
        }
    }

    pub fn terms(&self) -> &BTreeMap<X, Scalar> {
        &self.terms
    }

    pub fn coefficient(&self, x: &X) -> Scalar {
        self.terms.get(x).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }
}

impl<X: Action + Ord + Clone> GVector<X> {
    pub fn act(&self, sigma: &Permutation) -> Result<Self> {
        let mut out = Self::new(self.field, self.mode);
        for (x, c) in &self.terms {
            out.add(x.act_by(sigma)?, c);
        }
        Ok(out)
    }
}

/// The least element of `Ω_G(x)`.
pub fn canonical<X: Action + Ord + Clone>(x: &X, g: &BlockSystem) -> Result<X> {
    let mut best = x.clone();
    for s in g.elements() {
        let y = x.act_by(&s)?;
        if y < best {
            best = y;
        }
    }
    Ok(best)
}

/// `𝒪_G`: each class goes to its orbit sum.
pub fn o_map<X: Action + Ord + Clone>(v: &GVector<X>, g: &BlockSystem) -> Result<GVector<X>> {
    let mut out = GVector::new(v.field, Mode::Invariant);
    for (x, c) in v.terms() {
        for y in orbit(x, g)? {
            out.add(y, c);
        }
    }
    Ok(out)
}

/// Whether every generator of `G` fixes `w`.
pub fn is_invariant<X: Action + Ord + Clone>(w: &GVector<X>, g: &BlockSystem) -> Result<bool> {
    for s in g.generators() {
        if w.act(&s)? != *w {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `𝒪_G⁻¹`: reads the coefficient at every orbit's least element.
pub fn o_inverse<X: Action + Ord + Clone>(w: &GVector<X>, g: &BlockSystem) -> Result<GVector<X>> {
    if !is_invariant(w, g)? {
        return Err(Error::NotInvariant("vector is moved by a generator".into()));
    }
    let mut out = GVector::new(w.field, Mode::Coinvariant);
    for (x, c) in w.terms() {
        if canonical(x, g)? == *x {
            out.add(x.clone(), c);
        }
    }
    Ok(out)
}

fn check_subgroup(h: &BlockSystem, g: &BlockSystem) -> Result<()> {
    if h.degree() != g.degree() || h.generators().iter().any(|s| !g.contains(s)) {
        return Err(Error::NotContained("H is not a subgroup of G".into()));
    }
    Ok(())
}

/// `Ind_H^G([x]_H) = (|Stab_G(x)| / |Stab_H(x)|)·[x]_G`.
pub fn ind<X: Action + Ord + Clone>(v: &GVector<X>, h: &BlockSystem, g: &BlockSystem) -> Result<GVector<X>> {
    check_subgroup(h, g)?;
    let mut out = GVector::new(v.field, Mode::Coinvariant);
    for (x, c) in v.terms() {
        let k = index_ratio(
            &Integer::from(stabilizer_order(x, g)?),
            &Integer::from(stabilizer_order(x, h)?),
        )?;
        out.add(canonical(x, g)?, &(c * &v.field.from_integer(&k)));
    }
    Ok(out)
}

/// `Res_H^G([x]_G) = Σ_{[y] ∈ H\Ω_G(x)} [y]_H`.
pub fn res<X: Action + Ord + Clone>(v: &GVector<X>, g: &BlockSystem, h: &BlockSystem) -> Result<GVector<X>> {
    check_subgroup(h, g)?;
    let mut out = GVector::new(v.field, Mode::Coinvariant);
    for (x, c) in v.terms() {
        let mut seen = std::collections::BTreeSet::new();
        for y in orbit(x, g)? {
            seen.insert(canonical(&y, h)?);
        }
        for y in seen {
            out.add(y, c);
        }
    }
    Ok(out)
}

/// `Σ_{s ∈ Σ_G/H} s·w` for a Young subgroup `Σ_G ⊇ H`.
pub fn coset_sum<X: Action + Ord + Clone>(w: &GVector<X>, g: &OrderedPartition, h: &BlockSystem) -> Result<GVector<X>> {
    let mut out = GVector::new(w.field, Mode::Invariant);
    for s in h.relative_cosets(g)? {
        for (x, c) in w.act(&s)?.terms() {
            out.add(x.clone(), c);
        }
    }
    Ok(out)
}

/// `μ(x ⊗ ⨂ x_i^{⊗r_i})` with inputs of block `i` of `r` all equal to `x_i`.
pub fn compose_blocks(x: &Op, r: &Composition, xs: &[Op]) -> Result<Op> {
    if r.total() != x.arity() || xs.len() != r.len() {
        return Err(Error::ArityMismatch(format!("{} with blocks {}", x, r)));
    }
    let ys: Vec<Op> = r
        .parts()
        .iter()
        .zip(xs)
        .flat_map(|(&k, y)| std::iter::repeat_n(y.clone(), k))
        .collect();
    x.full_compose(&ys)
}

/// `μ′`: the class of `μ(x ⊗ ⨂ x_i^{⊗r_i})` under `∏ Σ_{r_i} ≀ Σ_{q_i}` and its integer coefficient
/// `|Stab_K(μ)| / (|Stab_{Σ_r}(x)| · ∏ |Stab_{Σ_{q_i}}(x_i)|^{r_i})`.
pub fn mu_prime_integer(x: &Op, r: &Composition, xs: &[Op], qs: &[Composition]) -> Result<(Op, Integer)> {
    let shape = WreathShape::new(r.clone(), qs.to_vec())?;
    for (y, q) in xs.iter().zip(qs) {
        if y.arity() != q.total() {
            return Err(Error::ArityMismatch(format!("{y} against {q}")));
        }
    }
    let k = BlockSystem::wreath(&shape);
    let m = compose_blocks(x, r, xs)?;
    let mut den = Integer::from(stabilizer_order(x, &BlockSystem::young(&r.iota()))?);
    for ((y, q), &ri) in xs.iter().zip(qs).zip(r.parts()) {
        let s = Integer::from(stabilizer_order(y, &BlockSystem::young(&q.iota()))?);
        den *= num_traits::pow(s, ri);
    }
    let num = Integer::from(stabilizer_order(&m, &k)?);
    let coeff = index_ratio(&num, &den)?;
    Ok((canonical(&m, &k)?, coeff))
}

pub fn mu_prime(x: &Op, r: &Composition, xs: &[Op], qs: &[Composition], field: FieldSpec) -> Result<GVector<Op>> {
    let (class, k) = mu_prime_integer(x, r, xs, qs)?;
    let mut out = GVector::new(field, Mode::Coinvariant);
    out.add(class, &field.from_integer(&k));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setoperad::{enumerate_lev, Operad};

    fn comp(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec())
    }

    fn points(n: usize) -> Vec<Vec<u32>> {
        (0..n)
            .map(|i| {
                let mut v = vec![0u32; n];
                v[i] = 1;
                v
            })
            .collect()
    }

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn o_map_examples() {
        let e = points(2);
        let v = GVector::basis(Q, Mode::Coinvariant, e[1].clone());
        let w = o_map(&v, &BlockSystem::full(2)).unwrap();
        assert_eq!(w.terms().len(), 2);
        assert!(w.terms().values().all(Scalar::is_one));
        assert_eq!(o_map(&v, &BlockSystem::trivial(2)).unwrap().terms(), v.terms());
        let class = GVector::basis(Q, Mode::Coinvariant, Op::lev(vec![1, 2, 2]).unwrap());
        let all = o_map(&class, &BlockSystem::full(3)).unwrap();
        assert_eq!(all.terms().keys().cloned().collect::<Vec<_>>(), *enumerate_lev(3));
    }

    #[test]
    fn o_inverse_examples() {
        let e = points(2);
        let g = BlockSystem::full(2);
        let mut w = GVector::new(Q, Mode::Invariant);
        w.add(e[0].clone(), &Q.one());
        w.add(e[1].clone(), &Q.one());
        let v = o_inverse(&w, &g).unwrap();
        assert_eq!(v.terms().len(), 1);
        let single = GVector::basis(Q, Mode::Plain, e[0].clone());
        assert!(matches!(o_inverse(&single, &g), Err(Error::NotInvariant(_))));
    }

    #[test]
    fn ind_res_examples() {
        let g = BlockSystem::full(2);
        let h = BlockSystem::trivial(2);
        let pt = GVector::basis(Q, Mode::Coinvariant, vec![0u32, 0]);
        assert_eq!(ind(&pt, &h, &g).unwrap().coefficient(&vec![0, 0]), Q.from_i64(2));
        let e = points(2);
        let v = GVector::basis(Q, Mode::Coinvariant, e[1].clone());
        assert_eq!(ind(&v, &h, &g).unwrap().coefficient(&e[1]), Q.one());
        assert_eq!(ind(&v, &g, &g).unwrap(), v);
        let r = res(&v, &g, &h).unwrap();
        assert_eq!(r.terms().len(), 2);
        let l2 = GVector::basis(Q, Mode::Coinvariant, Op::lev(vec![1, 1]).unwrap());
        assert_eq!(res(&l2, &g, &h).unwrap(), l2);
        assert!(matches!(ind(&v, &g, &h), Err(Error::NotContained(_))));
    }

    fn young_pairs(n: usize) -> Vec<(OrderedPartition, OrderedPartition)> {
        // (G, H) with H a refinement of G
        let mut out = Vec::new();
        for p in 1..=3 {
            for r in Composition::all_positive(n).into_iter().filter(|c| c.len() == p) {
                for ks in refinements(&r) {
                    out.push((r.iota(), r.refine(&ks).unwrap().iota()));
                }
            }
        }
        out
    }

    fn refinements(r: &Composition) -> Vec<Vec<Composition>> {
        let mut acc: Vec<Vec<Composition>> = vec![vec![]];
        for &k in r.parts() {
            let mut next = Vec::new();
            for prefix in &acc {
                for c in Composition::all_positive(k).into_iter().filter(|c| c.len() <= 2) {
                    let mut v = prefix.clone();
                    v.push(c);
                    next.push(v);
                }
            }
            acc = next;
        }
        acc
    }

    fn ambient_sets(n: usize) -> Vec<Vec<Vec<u32>>> {
        let mut sets: Vec<Vec<Vec<u32>>> = Vec::new();
        sets.push(enumerate_lev(n).iter().map(|x| x.labels().to_vec()).collect());
        for r in Composition::all(n, 2) {
            sets.push(
                OrderedPartition::all_of_shape(&r)
                    .iter()
                    .map(|p| p.function().iter().map(|&b| b as u32).collect())
                    .collect(),
            );
        }
        sets
    }

    #[test]
    fn o_map_round_trips() {
        for n in 1..=5 {
            for set in ambient_sets(n) {
                for (g, _) in young_pairs(n) {
                    let g = BlockSystem::young(&g);
                    let mut v = GVector::new(FieldSpec::prime(3).unwrap(), Mode::Coinvariant);
                    for (k, x) in set.iter().enumerate() {
                        let c = canonical(x, &g).unwrap();
                        if c == *x {
                            v.add(c, &v.field.from_i64(k as i64 + 1));
                        }
                    }
                    let w = o_map(&v, &g).unwrap();
                    assert_eq!(o_inverse(&w, &g).unwrap(), v);
                    assert_eq!(o_map(&o_inverse(&w, &g).unwrap(), &g).unwrap(), w);
                }
            }
        }
    }

    #[test]
    fn induction_and_restriction_diagrams() {
        for n in 1..=4 {
            for set in ambient_sets(n) {
                for (gp, hp) in young_pairs(n) {
                    let g = BlockSystem::young(&gp);
                    let h = BlockSystem::young(&hp);
                    for x in &set {
                        let v = GVector::basis(Q, Mode::Coinvariant, canonical(x, &h).unwrap());
                        let left = o_map(&ind(&v, &h, &g).unwrap(), &g).unwrap();
                        let right = coset_sum(&o_map(&v, &h).unwrap(), &gp, &h).unwrap();
                        assert_eq!(left.terms(), right.terms());

                        let u = GVector::basis(Q, Mode::Coinvariant, canonical(x, &g).unwrap());
                        let left = o_map(&res(&u, &g, &h).unwrap(), &h).unwrap();
                        assert_eq!(left.terms(), o_map(&u, &g).unwrap().terms());
                    }
                }
            }
        }
    }

    #[test]
    fn mu_prime_examples() {
        let h = Op::lev(vec![1, 1]).unwrap();
        let (class, k) = mu_prime_integer(&h, &comp(&[1, 1]), &[h.clone(), h.clone()], &[comp(&[2]), comp(&[2])]).unwrap();
        assert_eq!(class, Op::lev(vec![2, 2, 2, 2]).unwrap());
        // Stab_K(μ) = Σ_2 × Σ_2 = 4, denominators 1·2·2
        assert_eq!(k, Integer::from(1));
        let (_, k) = mu_prime_integer(&Op::com(3), &comp(&[2, 1]), &[Op::com(2), Op::com(1)], &[comp(&[2]), comp(&[1])]).unwrap();
        let shape = WreathShape::new(comp(&[2, 1]), vec![comp(&[2]), comp(&[1])]).unwrap();
        assert_eq!(k, shape.order() / (Integer::from(2) * Integer::from(4)));
    }

    /// All `(r, x, (x_i, q_i))` with total arity at most `max`.
    fn indmult_instances(operad: Operad, max: usize) -> Vec<(Op, Composition, Vec<Op>, Vec<Composition>)> {
        let mut out = Vec::new();
        for n in 1..=max {
            for r in Composition::all_positive(n) {
                for x in operad.elements(n).iter() {
                    let mut partial: Vec<(Vec<Op>, Vec<Composition>, usize)> = vec![(vec![], vec![], 0)];
                    for &ri in r.parts() {
                        let mut next = Vec::new();
                        for (ys, qs, used) in &partial {
                            for m in 1..=(max - used) / ri {
                                for y in operad.elements(m).iter() {
                                    for q in Composition::all_positive(m).into_iter().filter(|c| c.len() <= 2) {
                                        let (mut ys, mut qs) = (ys.clone(), qs.clone());
                                        ys.push(y.clone());
                                        qs.push(q);
                                        next.push((ys, qs, used + ri * m));
                                    }
                                }
                            }
                        }
                        partial = next;
                    }
                    for (ys, qs, _) in partial {
                        out.push((x.clone(), r.clone(), ys, qs));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn indmult_diagram_commutes() {
        for operad in [Operad::Com, Operad::Lev] {
            for (x, r, ys, qs) in indmult_instances(operad, 5) {
                let shape = WreathShape::new(r.clone(), qs.clone()).unwrap();
                let k = BlockSystem::wreath(&shape);
                let x = canonical(&x, &BlockSystem::young(&r.iota())).unwrap();
                let ys: Vec<Op> = ys
                    .iter()
                    .zip(&qs)
                    .map(|(y, q)| canonical(y, &BlockSystem::young(&q.iota())).unwrap())
                    .collect();
                // μ ∘ (𝒪 ⊗ ⨂ 𝒪^{⊗r_i}) on the basis class
                let mut left: GVector<Op> = GVector::new(Q, Mode::Invariant);
                let outer = orbit(&x, &BlockSystem::young(&r.iota())).unwrap();
                let inner: Vec<Vec<Op>> = ys
                    .iter()
                    .zip(&qs)
                    .map(|(y, q)| orbit(y, &BlockSystem::young(&q.iota())).unwrap().into_iter().collect())
                    .collect();
                let slots: Vec<usize> = r.block_of_points();
                for xo in &outer {
                    let mut choices: Vec<Vec<Op>> = vec![vec![]];
                    for &b in &slots {
                        let mut next = Vec::new();
                        for c in &choices {
                            for y in &inner[b] {
                                let mut c = c.clone();
                                c.push(y.clone());
                                next.push(c);
                            }
                        }
                        choices = next;
                    }
                    for c in choices {
                        left.add(xo.full_compose(&c).unwrap(), &Q.one());
                    }
                }
                let right = o_map(&mu_prime(&x, &r, &ys, &qs, Q).unwrap(), &k).unwrap();
                assert_eq!(left.terms(), right.terms(), "{x} {r} {ys:?} {qs:?}");
            }
        }
    }
}
