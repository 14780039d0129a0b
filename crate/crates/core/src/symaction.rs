//! Young and wreath subgroups of `Σ_n`, their cosets, stabilizers and orbits.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::par::Exec;
use crate::permcomb::{Composition, OrderedPartition, Permutation};
use crate::scalar::{factorial, Integer};

/// Anything `Σ_n` acts on from the left.
pub trait Action: Sized {
    fn act_by(&self, sigma: &Permutation) -> Result<Self>;
}

impl Action for OrderedPartition {
    fn act_by(&self, sigma: &Permutation) -> Result<Self> {
        self.act(sigma)
    }
}

/// Positioned sequences: the entry at position `i` moves to `σ(i)`.
impl<T: Clone> Action for Vec<T> {
    fn act_by(&self, sigma: &Permutation) -> Result<Self> {
        if sigma.degree() != self.len() {
            return Err(Error::DegreeMismatch(sigma.degree(), self.len()));
        }
        Ok(sigma.permute(self))
    }
}

/// `∏_i Σ_{r_i} ≀ Σ_{q_i}` laid out as in `r ◇ (ι(q_1), …, ι(q_p))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WreathShape {
    pub outer: Composition,
    pub inner: Vec<Composition>,
}

impl WreathShape {
    pub fn new(outer: Composition, inner: Vec<Composition>) -> Result<Self> {
        if outer.len() != inner.len() {
            return Err(Error::NotASubgroup(format!("{} inner shapes for {}", inner.len(), outer)));
        }
        Ok(WreathShape { outer, inner })
    }

    pub fn degree(&self) -> usize {
        self.outer.parts().iter().zip(&self.inner).map(|(r, q)| r * q.total()).sum()
    }

    /// `∏_i r_i! · (∏_j q_ij!)^{r_i}`.
    pub fn order(&self) -> Integer {
        let mut acc = Integer::from(1);
        for (&r, q) in self.outer.parts().iter().zip(&self.inner) {
            acc *= factorial(r as u64);
            for &k in q.parts() {
                acc *= num_traits::pow(factorial(k as u64), r);
            }
        }
        acc
    }
}

/// A subgroup of `Σ_n` that permutes copies within groups and points within parts.
///
/// `groups[g][c][j]` lists the 0-based points of part `j` of copy `c`. An
/// element maps every part `(g, c, j)` onto `(g, π(c), j)` for some `π ∈ Σ_{r_g}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSystem {
    degree: usize,
    groups: Vec<Vec<Vec<Vec<usize>>>>,
}

#[derive(Debug, Clone)]
struct Cell {
    points: Vec<usize>,
    /// Cell that must open before this one, for copies after the first.
    after: Option<usize>,
    region: usize,
}

#[derive(Debug, Clone)]
struct Walk {
    next: usize,
    fill: Vec<usize>,
    images: Vec<usize>,
}

impl BlockSystem {
    pub fn new(degree: usize, groups: Vec<Vec<Vec<Vec<usize>>>>) -> Result<Self> {
        let mut seen = vec![false; degree];
        for group in &groups {
            let mut lead: Option<usize> = None;
            let mut last_min: Option<usize> = None;
            for copy in group {
                if let Some(c0) = group.first() {
                    if c0.len() != copy.len() || c0.iter().zip(copy).any(|(a, b)| a.len() != b.len()) {
                        return Err(Error::NotASubgroup("copies of one group differ in shape".into()));
                    }
                }
                for part in copy {
                    if part.windows(2).any(|w| w[0] >= w[1]) {
                        return Err(Error::NotASubgroup("parts must be sorted".into()));
                    }
                    for &x in part {
                        if x >= degree || seen[x] {
                            return Err(Error::NotASubgroup(format!("point {} repeated or out of range", x + 1)));
                        }
                        seen[x] = true;
                    }
                }
                let Some((j, min)) = copy
                    .iter()
                    .enumerate()
                    .filter_map(|(j, p)| p.first().map(|&m| (j, m)))
                    .min_by_key(|&(_, m)| m)
                else {
                    continue;
                };
                if lead.is_some_and(|l| l != j) || last_min.is_some_and(|m| m > min) {
                    return Err(Error::NotASubgroup("copies must be translates listed in order".into()));
                }
                lead = Some(j);
                last_min = Some(min);
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::NotASubgroup(format!("parts do not cover {degree} points")));
        }
        Ok(BlockSystem { degree, groups })
    }

    /// The Young subgroup `Σ_R`.
    pub fn young(r: &OrderedPartition) -> Self {
        BlockSystem {
            degree: r.ground(),
            groups: r.blocks().iter().map(|b| vec![vec![b.clone()]]).collect(),
        }
    }

    pub fn full(n: usize) -> Self {
        Self::young(&OrderedPartition::coarse(n))
    }

    pub fn trivial(n: usize) -> Self {
        BlockSystem {
            degree: n,
            groups: (0..n).map(|x| vec![vec![vec![x]]]).collect(),
        }
    }

    pub fn wreath(shape: &WreathShape) -> Self {
        let mut groups = Vec::new();
        let mut at = 0;
        for (&r, q) in shape.outer.parts().iter().zip(&shape.inner) {
            let mut copies = Vec::with_capacity(r);
            for _ in 0..r {
                copies.push(
                    q.iota()
                        .blocks()
                        .iter()
                        .map(|b| b.iter().map(|x| x + at).collect())
                        .collect(),
                );
                at += q.total();
            }
            groups.push(copies);
        }
        BlockSystem { degree: at, groups }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> Integer {
        let mut acc = Integer::from(1);
        for group in &self.groups {
            let live = group.iter().filter(|c| c.iter().any(|p| !p.is_empty())).count();
            acc *= factorial(live as u64);
            for copy in group {
                for part in copy {
                    acc *= factorial(part.len() as u64);
                }
            }
        }
        acc
    }

    fn cells(&self, region: &[usize]) -> Vec<Cell> {
        let mut cells = Vec::new();
        for group in &self.groups {
            let mut prev_lead: Option<usize> = None;
            for copy in group {
                let lead = copy
                    .iter()
                    .enumerate()
                    .filter_map(|(j, p)| p.first().map(|&m| (j, m)))
                    .min_by_key(|&(_, m)| m)
                    .map(|(j, _)| j);
                for (j, part) in copy.iter().enumerate() {
                    if part.is_empty() {
                        continue;
                    }
                    let after = if Some(j) == lead { prev_lead } else { None };
                    cells.push(Cell {
                        points: part.clone(),
                        after,
                        region: region[part[0]],
                    });
                    if Some(j) == lead {
                        prev_lead = Some(cells.len() - 1);
                    }
                }
            }
        }
        cells
    }

    fn step<F: FnMut(&Walk)>(cells: &[Cell], region: &[usize], walk: &mut Walk, depth: Option<usize>, emit: &mut F) {
        if walk.next == walk.images.len() || depth == Some(0) {
            emit(walk);
            return;
        }
        let y = walk.next;
        for (k, cell) in cells.iter().enumerate() {
            let f = walk.fill[k];
            if f == cell.points.len() || cell.region != region[y] {
                continue;
            }
            if f == 0 {
                if let Some(a) = cell.after {
                    if walk.fill[a] == 0 {
                        continue;
                    }
                }
            }
            walk.images[cell.points[f]] = y;
            walk.fill[k] += 1;
            walk.next += 1;
            Self::step(cells, region, walk, depth.map(|d| d - 1), emit);
            walk.next -= 1;
            walk.fill[k] -= 1;
        }
    }

    /// Canonical representatives of `G/H` for `H = self`, where `G` is the Young
    /// subgroup with blocks given by `region` (point ↦ block index).
    fn walk_cosets<T, F>(&self, region: &[usize], exec: Exec, init: impl Fn() -> T + Sync + Send, visit: F, merge: impl Fn(T, T) -> T + Sync + Send) -> T
    where
        T: Send,
        F: Fn(&mut T, &Permutation) + Sync + Send,
    {
        let cells = self.cells(region);
        let start = Walk {
            next: 0,
            fill: vec![0; cells.len()],
            images: vec![0; self.degree],
        };
        let mut frontier = vec![start];
        let mut depth = 0;
        while frontier.len() < 256 && depth < self.degree {
            let mut nextf = Vec::new();
            for mut w in frontier {
                Self::step(&cells, region, &mut w, Some(1), &mut |w: &Walk| nextf.push(w.clone()));
            }
            frontier = nextf;
            depth += 1;
        }
        exec.fold(
            &frontier,
            &init,
            |acc, w| {
                let mut w = w.clone();
                Self::step(&cells, region, &mut w, None, &mut |w: &Walk| {
                    visit(acc, &Permutation::from_images(w.images.clone()).expect("walk yields a bijection"));
                });
            },
            &merge,
        )
    }

    /// One canonical (lexicographically least) representative per left coset `σH`.
    pub fn cosets(&self) -> Vec<Permutation> {
        let region = vec![0; self.degree];
        let mut out = self.walk_cosets(&region, Exec::Sequential, Vec::new, |acc, p| acc.push(p.clone()), |mut a, b| {
            a.extend(b);
            a
        });
        out.sort();
        out
    }

    /// Folds `visit` over the canonical coset representatives, possibly in parallel.
    pub fn fold_cosets<T, F>(&self, exec: Exec, init: impl Fn() -> T + Sync + Send, visit: F, merge: impl Fn(T, T) -> T + Sync + Send) -> T
    where
        T: Send,
        F: Fn(&mut T, &Permutation) + Sync + Send,
    {
        let region = vec![0; self.degree];
        self.walk_cosets(&region, exec, init, visit, merge)
    }

    /// Representatives of `Σ_G/H` for a Young subgroup `Σ_G` containing `self`.
    pub fn relative_cosets(&self, g: &OrderedPartition) -> Result<Vec<Permutation>> {
        if g.ground() != self.degree {
            return Err(Error::DegreeMismatch(g.ground(), self.degree));
        }
        let region = g.function();
        for gen in self.generators() {
            if (0..self.degree).any(|x| region[gen.apply(x)] != region[x]) {
                return Err(Error::NotContained(format!("subgroup leaves {g}")));
            }
        }
        let mut out = self.walk_cosets(&region, Exec::Sequential, Vec::new, |acc, p| acc.push(p.clone()), |mut a, b| {
            a.extend(b);
            a
        });
        out.sort();
        Ok(out)
    }

    pub fn contains(&self, sigma: &Permutation) -> bool {
        if sigma.degree() != self.degree {
            return false;
        }
        for group in &self.groups {
            let mut used = vec![false; group.len()];
            for copy in group {
                if copy.iter().all(Vec::is_empty) {
                    continue;
                }
                let image: Vec<Vec<usize>> = copy
                    .iter()
                    .map(|p| {
                        let mut v: Vec<usize> = p.iter().map(|&x| sigma.apply(x)).collect();
                        v.sort_unstable();
                        v
                    })
                    .collect();
                match group.iter().position(|c| *c == image) {
                    Some(t) if !used[t] => used[t] = true,
                    _ => return false,
                }
            }
        }
        true
    }

    /// Adjacent transpositions inside parts and swaps of consecutive copies.
    pub fn generators(&self) -> Vec<Permutation> {
        let mut gens = Vec::new();
        for group in &self.groups {
            for copy in group {
                for part in copy {
                    for w in part.windows(2) {
                        gens.push(Permutation::transposition(self.degree, w[0], w[1]));
                    }
                }
            }
            for pair in group.windows(2) {
                let mut images: Vec<usize> = (0..self.degree).collect();
                for (a, b) in pair[0].iter().zip(&pair[1]) {
                    for (&x, &y) in a.iter().zip(b) {
                        images[x] = y;
                        images[y] = x;
                    }
                }
                gens.push(Permutation::from_images(images).expect("copy swap"));
            }
        }
        gens
    }

    /// Every element; intended for small degrees.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = vec![(0..self.degree).collect::<Vec<usize>>()];
        for group in &self.groups {
            let live: Vec<&Vec<Vec<usize>>> = group.iter().filter(|c| c.iter().any(|p| !p.is_empty())).collect();
            let mut next = Vec::new();
            for pi in Permutation::all(live.len()) {
                let mut partial = out.clone();
                for (c, copy) in live.iter().enumerate() {
                    let target = live[pi.apply(c)];
                    for (part, tpart) in copy.iter().zip(target) {
                        let mut grown = Vec::new();
                        for bij in Permutation::all(part.len()) {
                            for img in &partial {
                                let mut img = img.clone();
                                for (k, &x) in part.iter().enumerate() {
                                    img[x] = tpart[bij.apply(k)];
                                }
                                grown.push(img);
                            }
                        }
                        partial = grown;
                    }
                }
                next.extend(partial);
            }
            out = next;
        }
        out.into_iter()
            .map(|v| Permutation::from_images(v).expect("group element"))
            .collect()
    }
}

/// The `(l, m)`-shuffles: permutations increasing on `[l]` and on `l + [m]`.
pub fn shuffles(l: usize, m: usize) -> Vec<Permutation> {
    let n = l + m;
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(l);
    fn rec(start: usize, n: usize, l: usize, chosen: &mut Vec<usize>, out: &mut Vec<Permutation>) {
        if chosen.len() == l {
            let rest: Vec<usize> = (0..n).filter(|x| !chosen.contains(x)).collect();
            let mut images = chosen.clone();
            images.extend(rest);
            out.push(Permutation::from_images(images).expect("shuffle"));
            return;
        }
        for x in start..n {
            chosen.push(x);
            rec(x + 1, n, l, chosen, out);
            chosen.pop();
        }
    }
    rec(0, n, l, &mut chosen, &mut out);
    out
}

/// `ρ_*`: moves the `i`-th interval block of sizes `r` to position `ρ(i)`.
pub fn block_permutation(rho: &Permutation, r: &Composition) -> Result<Permutation> {
    let moved = r.permuted(rho)?;
    let offsets = moved.offsets();
    let mut images = Vec::with_capacity(r.total());
    for (i, &k) in r.parts().iter().enumerate() {
        let start = offsets[rho.apply(i)];
        images.extend(start..start + k);
    }
    Permutation::from_images(images)
}

/// `|Stab_H(x)|` by enumerating `H`.
pub fn stabilizer_order<X: Action + PartialEq>(x: &X, h: &BlockSystem) -> Result<usize> {
    let mut count = 0;
    for g in h.elements() {
        if x.act_by(&g)? == *x {
            count += 1;
        }
    }
    Ok(count)
}

/// `Ω_H(x)`, checked against orbit–stabilizer.
pub fn orbit<X: Action + Ord + Clone>(x: &X, h: &BlockSystem) -> Result<BTreeSet<X>> {
    let mut out = BTreeSet::new();
    let mut stab = 0usize;
    let elements = h.elements();
    for g in &elements {
        let y = x.act_by(g)?;
        if y == *x {
            stab += 1;
        }
        out.insert(y);
    }
    assert_eq!(out.len() * stab, elements.len(), "orbit-stabilizer failed");
    Ok(out)
}

/// `|Stab_{Σ_r}(x)|` for a positioned label sequence: product of multiplicity factorials per block.
pub fn young_label_stabilizer<T: Ord>(labels: &[T], r: &Composition) -> Integer {
    let mut acc = Integer::from(1);
    let mut at = 0;
    for &k in r.parts() {
        let mut block: Vec<&T> = labels[at..at + k].iter().collect();
        block.sort();
        let mut run = 1u64;
        for w in block.windows(2) {
            if w[0] == w[1] {
                run += 1;
                acc *= run;
            } else {
                run = 1;
            }
        }
        at += k;
    }
    acc
}

/// Distinct rearrangements of a sequence, in lexicographic order.
pub fn distinct_arrangements<T: Ord + Clone>(items: &[T]) -> Vec<Vec<T>> {
    let mut sorted = items.to_vec();
    sorted.sort();
    let mut counts: Vec<(T, usize)> = Vec::new();
    for x in sorted {
        match counts.last_mut() {
            Some((y, c)) if *y == x => *c += 1,
            _ => counts.push((x, 1)),
        }
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(items.len());
    fn rec<T: Clone>(n: usize, counts: &mut [(T, usize)], cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for k in 0..counts.len() {
            if counts[k].1 > 0 {
                counts[k].1 -= 1;
                cur.push(counts[k].0.clone());
                rec(n, counts, cur, out);
                cur.pop();
                counts[k].1 += 1;
            }
        }
    }
    rec(items.len(), &mut counts, &mut cur, &mut out);
    out
}

/// `Ω_{Σ_r}(x)` for a positioned sequence: independent rearrangements inside each block.
pub fn young_orbit<T: Ord + Clone>(labels: &[T], r: &Composition) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = vec![Vec::with_capacity(labels.len())];
    let mut at = 0;
    for &k in r.parts() {
        let pieces = distinct_arrangements(&labels[at..at + k]);
        let mut next = Vec::with_capacity(out.len() * pieces.len());
        for prefix in &out {
            for piece in &pieces {
                let mut v = prefix.clone();
                v.extend_from_slice(piece);
                next.push(v);
            }
        }
        out = next;
        at += k;
    }
    out
}

/// The least element of `Ω_{Σ_r}(x)`: each block sorted.
pub fn young_canonical<T: Ord + Clone>(labels: &[T], r: &Composition) -> Vec<T> {
    let mut out = labels.to_vec();
    let mut at = 0;
    for &k in r.parts() {
        out[at..at + k].sort();
        at += k;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec())
    }

    fn young(parts: &[usize]) -> BlockSystem {
        BlockSystem::young(&comp(parts).iota())
    }

    #[test]
    fn coset_examples() {
        let c = young(&[1, 1]).cosets();
        assert_eq!(c, vec![Permutation::identity(2), Permutation::transposition(2, 0, 1)]);
        assert_eq!(young(&[2, 1]).cosets().len(), 3);
        assert_eq!(young(&[2, 2]).cosets().len(), 6);
    }

    #[test]
    fn relative_coset_examples() {
        let c = young(&[1, 1]).relative_cosets(&comp(&[2]).iota()).unwrap();
        assert_eq!(c, vec![Permutation::identity(2), Permutation::transposition(2, 0, 1)]);
        let coarse = comp(&[1, 1]).coarsen(&comp(&[2])).unwrap();
        assert_eq!(young(&[1, 1]).relative_cosets(&coarse.iota()).unwrap().len(), 2);
        assert_eq!(young(&[2, 2]).relative_cosets(&comp(&[4]).iota()).unwrap().len(), 6);
        assert!(matches!(
            young(&[2, 2]).relative_cosets(&comp(&[1, 3]).iota()),
            Err(Error::NotContained(_))
        ));
        let rel = young(&[1, 1, 2]).relative_cosets(&comp(&[2, 2]).iota()).unwrap();
        assert_eq!(rel.len(), 2);
        for s in &rel {
            assert!(young(&[2, 2]).contains(s));
        }
    }

    #[test]
    fn shuffle_examples() {
        assert_eq!(shuffles(1, 1).len(), 2);
        assert_eq!(shuffles(2, 1).len(), 3);
        assert_eq!(shuffles(0, 4), vec![Permutation::identity(4)]);
    }

    #[test]
    fn shuffles_are_increasing_on_both_intervals() {
        for n in 0..=8usize {
            for l in 0..=n {
                let sh = shuffles(l, n - l);
                assert_eq!(crate::scalar::Integer::from(sh.len()), crate::scalar::binomial(n as u64, l as u64));
                for s in sh {
                    let im = s.images();
                    assert!(im[..l].windows(2).all(|w| w[0] < w[1]));
                    assert!(im[l..].windows(2).all(|w| w[0] < w[1]));
                }
            }
        }
    }

    #[test]
    fn stabilizer_examples() {
        let c3 = OrderedPartition::coarse(3);
        assert_eq!(stabilizer_order(&c3, &BlockSystem::full(3)).unwrap(), 6);
        assert_eq!(stabilizer_order(&comp(&[1, 1]).iota(), &BlockSystem::full(2)).unwrap(), 1);
        assert_eq!(stabilizer_order(&vec![1u32, 1], &BlockSystem::full(2)).unwrap(), 2);
        assert_eq!(young_label_stabilizer(&[1u32, 1], &comp(&[2])), Integer::from(2));
    }

    #[test]
    fn orbit_examples() {
        let x = comp(&[2, 1]).iota();
        assert_eq!(orbit(&x, &BlockSystem::trivial(3)).unwrap().len(), 1);
        let lev3 = vec![1u32, 2, 2];
        assert_eq!(orbit(&lev3, &BlockSystem::full(3)).unwrap().len(), 3);
        let y = comp(&[1, 1, 1]).iota();
        assert_eq!(orbit(&y, &young(&[2, 1])).unwrap().len(), 2);
    }

    #[test]
    fn block_permutation_examples() {
        let swap = Permutation::transposition(2, 0, 1);
        assert!(block_permutation(&Permutation::identity(2), &comp(&[2, 1])).unwrap().is_identity());
        assert_eq!(
            block_permutation(&swap, &comp(&[2, 1])).unwrap(),
            Permutation::from_one_based(&[2, 3, 1]).unwrap()
        );
        assert_eq!(block_permutation(&swap, &comp(&[1, 1])).unwrap(), swap);
    }

    #[test]
    fn block_permutation_is_a_homomorphism() {
        for p in 1..=4 {
            for r in Composition::all(5, p) {
                let perms = Permutation::all(p);
                for a in &perms {
                    for b in perms.iter().step_by(2) {
                        let ab = a.compose(b).unwrap();
                        let lhs = block_permutation(&ab, &r).unwrap();
                        let rb = r.permuted(b).unwrap();
                        let rhs = block_permutation(a, &rb).unwrap().compose(&block_permutation(b, &r).unwrap()).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    fn wreath_shapes(max: usize) -> Vec<WreathShape> {
        let mut out = Vec::new();
        for p in 1..=2 {
            for outer in Composition::all_positive(max).into_iter().chain(Composition::all_positive(max - 1)) {
                if outer.len() != p {
                    continue;
                }
                let mut inners: Vec<Vec<Composition>> = vec![vec![]];
                for &r in outer.parts() {
                    let mut next = Vec::new();
                    for prefix in &inners {
                        for m in 1..=max / r {
                            for q in Composition::all_positive(m) {
                                let mut v = prefix.clone();
                                v.push(q);
                                next.push(v);
                            }
                        }
                    }
                    inners = next;
                }
                for inner in inners {
                    let w = WreathShape::new(outer.clone(), inner).unwrap();
                    if w.degree() <= max {
                        out.push(w);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn wreath_order_matches_enumeration() {
        for w in wreath_shapes(6) {
            let sys = BlockSystem::wreath(&w);
            let elements = sys.elements();
            assert_eq!(Integer::from(elements.len()), w.order(), "{w:?}");
            let distinct: BTreeSet<_> = elements.iter().collect();
            assert_eq!(distinct.len(), elements.len());
            assert!(elements.iter().all(|e| sys.contains(e)));
        }
    }

    #[test]
    fn cosets_partition_the_group() {
        let mut systems: Vec<BlockSystem> = wreath_shapes(5).iter().map(BlockSystem::wreath).collect();
        for n in 0..=5 {
            for p in 1..=3 {
                for r in Composition::all(n, p) {
                    systems.push(BlockSystem::young(&r.iota()));
                    for q in OrderedPartition::all_of_shape(&r).into_iter().take(3) {
                        systems.push(BlockSystem::young(&q));
                    }
                }
            }
        }
        for sys in systems {
            let n = sys.degree();
            let reps = sys.cosets();
            let h = sys.elements();
            let mut covered = BTreeSet::new();
            for rep in &reps {
                let coset: Vec<Permutation> = h.iter().map(|k| rep.compose(k).unwrap()).collect();
                assert_eq!(coset.iter().min().unwrap(), rep, "representative is not lex-least");
                for s in coset {
                    assert!(covered.insert(s), "cosets overlap");
                }
            }
            assert_eq!(Integer::from(covered.len()), factorial(n as u64));
            assert_eq!(Integer::from(reps.len()) * sys.order(), factorial(n as u64));
        }
    }

    #[test]
    fn parallel_coset_walk_matches() {
        let w = WreathShape::new(comp(&[2, 1]), vec![comp(&[1, 2]), comp(&[2])]).unwrap();
        let sys = BlockSystem::wreath(&w);
        let count = |exec| sys.fold_cosets(exec, || 0usize, |a, _| *a += 1, |a, b| a + b);
        assert_eq!(count(Exec::Sequential), count(Exec::Parallel));
        assert_eq!(Integer::from(count(Exec::Parallel)) * w.order(), factorial(8));
    }

    #[test]
    fn young_orbit_matches_enumeration() {
        for labels in [vec![1u32, 2, 2, 1, 3], vec![0, 0, 0, 0, 0], vec![2, 1, 2, 2, 1]] {
            for p in 1..=3 {
                for r in Composition::all(5, p) {
                    let fast: BTreeSet<Vec<u32>> = young_orbit(&labels, &r).into_iter().collect();
                    let slow = orbit(&labels, &BlockSystem::young(&r.iota())).unwrap();
                    assert_eq!(fast, slow);
                    assert_eq!(&young_canonical(&labels, &r), slow.iter().next().unwrap());
                    assert_eq!(
                        Integer::from(fast.len()) * young_label_stabilizer(&labels, &r),
                        BlockSystem::young(&r.iota()).order()
                    );
                }
            }
        }
    }

    #[test]
    fn orbit_stabilizer_on_partitions() {
        for n in 0..=6 {
            for r in Composition::all(n, 2) {
                let x = r.iota();
                for h in [BlockSystem::full(n), young(&[n / 2, n - n / 2])] {
                    let o = orbit(&x, &h).unwrap();
                    let s = stabilizer_order(&x, &h).unwrap();
                    assert_eq!(Integer::from(o.len() * s), h.order());
                }
            }
        }
    }
}
