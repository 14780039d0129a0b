//! Relation suites and cross-checks between independent evaluators.
//!
//! Every suite builds a deterministic list of cases, each comparing two
//! sides of an identity in some free algebra. Left-hand shapes are enumerated
//! exhaustively within the bounds; argument vectors are the distinct
//! generators plus one seeded random combination.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freegamma::{norm_inverse, norm_map, trace_inverse, trace_map, FreeElem, Gamma, GammaTerm, Gen, Invariant, Method};
use crate::levelstep::{enumerate_bhs, enumerate_c_r, theta_from_phi, phi_from_theta, Bhs, BhsAlgebra, LevGamma, StepAlgebra, StepElem, StepFunction};
use crate::par::Exec;
use crate::permcomb::{diamond, Composition, OrderedPartition, Permutation};
use crate::permrep::{canonical, coset_sum, ind, mu_prime, o_inverse, o_map, res, GVector, Mode};
use crate::scalar::{binomial, factorial, index_ratio, FieldSpec, Integer, Scalar};
use crate::setoperad::{Op, Operad};
use crate::symaction::{block_permutation, orbit, young_canonical, young_label_stabilizer, young_orbit, Action, BlockSystem, WreathShape};

/// Compositions in the suites have at most this many parts.
pub const MAX_PARTS: usize = 3;

/// Class combinations tried per composition shape in the composition relations.
const COMPOSITE_SAMPLES: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Beta,
    Gamma,
    Step,
    Cartan,
    Permrep,
    Oracle,
    Roundtrip,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Beta,
        Suite::Gamma,
        Suite::Step,
        Suite::Cartan,
        Suite::Permrep,
        Suite::Oracle,
        Suite::Roundtrip,
    ];

    /// Whether the suite runs once per operad.
    pub fn per_operad(self) -> bool {
        matches!(self, Suite::Beta | Suite::Gamma | Suite::Permrep | Suite::Roundtrip)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::Beta => "beta",
            Suite::Gamma => "gamma",
            Suite::Step => "step",
            Suite::Cartan => "cartan",
            Suite::Permrep => "permrep-diagrams",
            Suite::Oracle => "oracle",
            Suite::Roundtrip => "roundtrip",
        };
        f.write_str(s)
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|k| k.to_string() == s.trim() || (*k == Suite::Permrep && s.trim() == "permrep"))
            .ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub max_arity: usize,
    pub max_degree: usize,
    pub max_index: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_arity: 5,
            max_degree: 8,
            max_index: 5,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckConfig {
    pub operad: Operad,
    pub field: FieldSpec,
    pub bounds: Bounds,
    pub seed: u64,
    /// Perturbs the right-hand side of the case with this index (modulo the case count).
    pub fault: Option<usize>,
    pub exec: Exec,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            operad: Operad::Lev,
            field: FieldSpec::Rationals,
            bounds: Bounds::default(),
            seed: 0,
            fault: None,
            exec: Exec::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub case: String,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub suite: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub operad: Option<String>,
    pub field: String,
    pub bounds: Bounds,
    pub attempted: usize,
    pub passed: usize,
    pub failed: usize,
    /// Cases attempted per relation.
    pub relations: BTreeMap<String, usize>,
    pub failures: Vec<Failure>,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

type Value = BTreeMap<String, Scalar>;
type Run = Box<dyn Fn() -> Result<(Value, Value)> + Send + Sync>;

struct Case {
    relation: String,
    inputs: String,
    run: Run,
}

impl Case {
    fn new(relation: &str, inputs: String, run: impl Fn() -> Result<(Value, Value)> + Send + Sync + 'static) -> Self {
        Case {
            relation: relation.to_string(),
            inputs,
            run: Box::new(run),
        }
    }
}

fn free_value(e: &FreeElem) -> Value {
    e.terms().iter().map(|(t, c)| (t.to_string(), c.clone())).collect()
}

fn step_value(e: &StepElem) -> Value {
    e.terms().iter().map(|(u, c)| (u.to_string(), c.clone())).collect()
}

fn gvector_value<X: Ord + Clone + fmt::Debug>(prefix: &str, v: &GVector<X>) -> Value {
    v.terms().iter().map(|(x, c)| (format!("{prefix}{x:?}"), c.clone())).collect()
}

fn show(v: &Value) -> String {
    if v.is_empty() {
        return "0".into();
    }
    v.iter()
        .map(|(k, c)| if c.is_one() { k.clone() } else { format!("{c}·{k}") })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn pair(lhs: FreeElem, rhs: FreeElem) -> Result<(Value, Value)> {
    Ok((free_value(&lhs), free_value(&rhs)))
}

/// Adds one to the leading coefficient of `v`.
fn inject_fault(v: &mut Value, field: FieldSpec) {
    let key = v.keys().next().cloned().unwrap_or_else(|| "0".into());
    let slot = v.entry(key.clone()).or_insert_with(|| field.zero());
    *slot += &field.one();
    if slot.is_zero() {
        v.remove(&key);
    }
}

fn run_cases(suite: Suite, operad: Option<Operad>, cfg: &CheckConfig, cases: Vec<Case>) -> CheckReport {
    let outcomes = cfg.exec.map(&cases, |c| (c.run)());
    let target = cfg.fault.filter(|_| !cases.is_empty()).map(|k| k % cases.len());
    let mut relations: BTreeMap<String, usize> = BTreeMap::new();
    let mut failures = Vec::new();
    for (i, (case, outcome)) in cases.iter().zip(outcomes).enumerate() {
        *relations.entry(case.relation.clone()).or_default() += 1;
        let witness = match outcome {
            Ok((lhs, mut rhs)) => {
                if target == Some(i) {
                    inject_fault(&mut rhs, cfg.field);
                }
                if lhs == rhs {
                    continue;
                }
                format!("{}; lhs = {}; rhs = {}", case.inputs, show(&lhs), show(&rhs))
            }
            Err(e) => format!("{}; error: {e}", case.inputs),
        };
        failures.push(Failure {
            case: format!("{}#{i}", case.relation),
            witness,
        });
    }
    CheckReport {
        suite: suite.to_string(),
        operad: operad.map(|o| o.to_string()),
        field: cfg.field.to_string(),
        bounds: cfg.bounds,
        attempted: cases.len(),
        passed: cases.len() - failures.len(),
        failed: failures.len(),
        relations,
        failures,
    }
}

/// Runs one suite. Operad-dependent suites use `cfg.operad`.
pub fn run_suite(suite: Suite, cfg: &CheckConfig) -> CheckReport {
    let mut sampler = Sampler::new(cfg.seed, cfg.field);
    let (operad, cases) = match suite {
        Suite::Beta => (Some(cfg.operad), beta_cases(cfg, &mut sampler)),
        Suite::Gamma => (Some(cfg.operad), gamma_cases(cfg, &mut sampler)),
        Suite::Step => (None, step_cases(cfg, &mut sampler)),
        Suite::Cartan => (None, cartan_cases(cfg, &mut sampler)),
        Suite::Permrep => (Some(cfg.operad), permrep_cases(cfg)),
        Suite::Oracle => (None, oracle_cases(cfg)),
        Suite::Roundtrip => (Some(cfg.operad), roundtrip_cases(cfg, &mut sampler)),
    };
    run_cases(suite, operad, cfg, cases)
}

/// Every suite, operad-dependent ones for both operads.
pub fn run_all(cfg: &CheckConfig) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for suite in Suite::ALL {
        if suite.per_operad() {
            for operad in [Operad::Com, Operad::Lev] {
                out.push(run_suite(suite, &CheckConfig { operad, ..cfg.clone() }));
            }
        } else {
            out.push(run_suite(suite, cfg));
        }
    }
    out
}

pub fn check_beta_suite(operad: Operad, field: FieldSpec, max_arity: usize) -> CheckReport {
    run_suite(Suite::Beta, &config(operad, field, max_arity))
}

pub fn check_gamma_suite(operad: Operad, field: FieldSpec, max_arity: usize) -> CheckReport {
    run_suite(Suite::Gamma, &config(operad, field, max_arity))
}

pub fn check_step_suite(field: FieldSpec, max_degree: usize) -> CheckReport {
    let mut cfg = config(Operad::Lev, field, 0);
    cfg.bounds.max_degree = max_degree;
    run_suite(Suite::Step, &cfg)
}

pub fn check_cartan_suite(field: FieldSpec, max_index: usize) -> CheckReport {
    let mut cfg = config(Operad::Com, field, 0);
    cfg.bounds.max_index = max_index;
    run_suite(Suite::Cartan, &cfg)
}

pub fn check_oracle(field: FieldSpec, max_total_degree: usize) -> CheckReport {
    let mut cfg = config(Operad::Lev, field, 0);
    cfg.bounds.max_degree = max_total_degree;
    run_suite(Suite::Oracle, &cfg)
}

pub fn check_permrep_diagrams(operad: Operad, n_max: usize) -> CheckReport {
    run_suite(Suite::Permrep, &config(operad, FieldSpec::Rationals, n_max))
}

fn config(operad: Operad, field: FieldSpec, max_arity: usize) -> CheckConfig {
    CheckConfig {
        operad,
        field,
        bounds: Bounds {
            max_arity,
            ..Bounds::default()
        },
        ..CheckConfig::default()
    }
}

/// Seeded choice of scalars and free-algebra arguments.
struct Sampler {
    rng: ChaCha8Rng,
    field: FieldSpec,
}

impl Sampler {
    fn new(seed: u64, field: FieldSpec) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            field,
        }
    }

    fn scalar(&mut self) -> Scalar {
        loop {
            let s = self.field.from_i64(self.rng.gen_range(-3..=4));
            if !s.is_zero() {
                return s;
            }
        }
    }

    /// One or two scaled generators drawn from the first `pool`.
    fn free(&mut self, g: &Gamma, pool: usize) -> FreeElem {
        loop {
            let mut e = g.zero();
            for _ in 0..self.rng.gen_range(1..=2) {
                let b = self.rng.gen_range(0..pool.max(2)) as Gen;
                e.add_term(GammaTerm::generator(g.operad, b), &self.scalar());
            }
            if !e.is_zero() {
                return e;
            }
        }
    }

    /// Distinct generators, then one random vector.
    fn arg_sets(&mut self, g: &Gamma, p: usize) -> Vec<Vec<FreeElem>> {
        let basis = (0..p).map(|i| g.generator(i as Gen)).collect();
        let random = (0..p).map(|_| self.free(g, p)).collect();
        vec![basis, random]
    }

    fn bhs(&mut self, max_size: usize) -> Bhs {
        let n = self.rng.gen_range(1..=max_size.max(1));
        enumerate_bhs(n).choose(&mut self.rng).cloned().expect("BHS(n) is never empty")
    }

    /// A one- or two-term combination of sequences of size at most `max_size`.
    fn step_elem(&mut self, max_size: usize) -> StepElem {
        loop {
            let mut e = StepElem::zero(self.field);
            for _ in 0..self.rng.gen_range(1..=2) {
                let u = self.bhs(max_size);
                e.add_term(u, &self.scalar());
            }
            if !e.is_zero() {
                return e;
            }
        }
    }

    fn pick<'a, T>(&mut self, items: &'a [T], k: usize) -> Vec<&'a T> {
        if items.len() <= k {
            return items.iter().collect();
        }
        let mut idx: Vec<usize> = (0..items.len()).collect();
        idx.shuffle(&mut self.rng);
        idx.truncate(k);
        idx.sort_unstable();
        idx.into_iter().map(|i| &items[i]).collect()
    }
}

fn inner_gamma(operad: Operad, field: FieldSpec) -> Gamma {
    Gamma::new(operad, field).with_exec(Exec::Sequential)
}

/// Positive compositions of `n` with at most [`MAX_PARTS`] parts.
fn shapes(n: usize) -> Vec<Composition> {
    Composition::all_positive(n).into_iter().filter(|c| c.len() <= MAX_PARTS).collect()
}

/// Sorted representatives of `Σ_r \ 𝒫(n)`.
pub fn classes(operad: Operad, r: &Composition) -> Vec<Op> {
    let reps: BTreeSet<Vec<u32>> = operad
        .elements(r.total())
        .iter()
        .map(|x| young_canonical(x.labels(), r))
        .collect();
    reps.into_iter().map(|l| labels_op(operad, l)).collect()
}

fn labels_op(operad: Operad, labels: Vec<u32>) -> Op {
    match operad {
        Operad::Com => Op::com(labels.len()),
        Operad::Lev => Op::lev(labels).expect("relabelled level element"),
    }
}

fn show_args(args: &[FreeElem]) -> String {
    let parts: Vec<String> = args.iter().map(|a| a.to_string()).collect();
    format!("[{}]", parts.join("; "))
}

fn show_invariant(x: &Invariant) -> String {
    let parts: Vec<String> = x
        .iter()
        .map(|(o, c)| if c.is_one() { o.to_string() } else { format!("{c}·{o}") })
        .collect();
    parts.join(" + ")
}

fn act_invariant(x: &Invariant, sigma: &Permutation) -> Result<Invariant> {
    x.iter().map(|(o, c)| Ok((o.act(sigma)?, c.clone()))).collect()
}

fn to_gvector(x: &Invariant, field: FieldSpec) -> GVector<Op> {
    let mut v = GVector::new(field, Mode::Invariant);
    for (o, c) in x {
        v.add(o.clone(), c);
    }
    v
}

fn from_gvector(v: &GVector<Op>) -> Invariant {
    v.terms().clone()
}

/// Inserts `item` so that it ends up at index `at`.
fn inserted<T: Clone>(xs: &[T], at: usize, item: T) -> Vec<T> {
    let mut v = xs.to_vec();
    v.insert(at, item);
    v
}

fn with_part(r: &Composition, at: usize, k: usize) -> Composition {
    Composition::new(inserted(r.parts(), at, k))
}

/// `r ∘_i (l, m)` at 0-based position `i`.
fn split_at(r: &Composition, i: usize, l: usize, m: usize) -> Result<Composition> {
    r.compose_at(i + 1, &Composition::new(vec![l, m]))
}

/// `μ(x ⊗ ⨂ x_i^{⊗ r_i})` extended linearly to invariant vectors.
fn compose_invariants(x: &Invariant, r: &Composition, xs: &[Invariant], field: FieldSpec) -> Result<Invariant> {
    let slots = r.block_of_points();
    let mut out: Invariant = BTreeMap::new();
    for (xo, c) in x {
        let mut partial: Vec<(Vec<Op>, Scalar)> = vec![(Vec::new(), c.clone())];
        for &b in &slots {
            let mut next = Vec::with_capacity(partial.len() * xs[b].len());
            for (ys, c) in &partial {
                for (y, d) in &xs[b] {
                    let mut ys = ys.clone();
                    ys.push(y.clone());
                    next.push((ys, c * d));
                }
            }
            partial = next;
        }
        for (ys, c) in partial {
            let m = xo.full_compose(&ys)?;
            let slot = out.entry(m.clone()).or_insert_with(|| field.zero());
            *slot += &c;
            if slot.is_zero() {
                out.remove(&m);
            }
        }
    }
    Ok(out)
}

/// One composite shape: `r`, then `(q_i)` with `Σ r_i |q_i| ≤ max`.
fn composite_shapes(max: usize) -> Vec<(Composition, Vec<Composition>)> {
    let mut out = Vec::new();
    for n in 1..=max {
        for r in shapes(n) {
            let mut partial: Vec<(Vec<Composition>, usize)> = vec![(vec![], 0)];
            for &ri in r.parts() {
                let mut next = Vec::new();
                for (qs, used) in &partial {
                    for m in 1..=(max - used) / ri {
                        for q in shapes(m) {
                            let mut qs = qs.clone();
                            qs.push(q);
                            next.push((qs, used + ri * m));
                        }
                    }
                }
                partial = next;
            }
            out.extend(partial.into_iter().map(|(qs, _)| (r.clone(), qs)));
        }
    }
    out
}

/// Class choices `(x, x_1, …, x_p)` for a composite shape, sampled past [`COMPOSITE_SAMPLES`].
fn composite_classes(operad: Operad, r: &Composition, qs: &[Composition], s: &mut Sampler) -> Vec<(Op, Vec<Op>)> {
    let outer = classes(operad, r);
    let inner: Vec<Vec<Op>> = qs.iter().map(|q| classes(operad, q)).collect();
    let total: usize = inner.iter().map(Vec::len).product::<usize>() * outer.len();
    let mut out = Vec::new();
    if total <= COMPOSITE_SAMPLES {
        let mut partial: Vec<Vec<Op>> = vec![vec![]];
        for list in &inner {
            partial = partial
                .into_iter()
                .flat_map(|p| {
                    list.iter().map(move |y| {
                        let mut p = p.clone();
                        p.push(y.clone());
                        p
                    })
                })
                .collect();
        }
        for x in &outer {
            for ys in &partial {
                out.push((x.clone(), ys.clone()));
            }
        }
    } else {
        let mut seen = BTreeSet::new();
        while seen.len() < COMPOSITE_SAMPLES {
            let x = s.pick(&outer, 1)[0].clone();
            let ys: Vec<Op> = inner.iter().map(|l| s.pick(l, 1)[0].clone()).collect();
            if seen.insert((x.clone(), ys.clone())) {
                out.push((x, ys));
            }
        }
    }
    out
}

/// The diamond partition `r ◇ (ι(q_i))`, its shape, and `τ` with `τ(R) = ι(shape)`.
fn diamond_transport(r: &Composition, qs: &[Composition]) -> Result<(OrderedPartition, Composition, Permutation)> {
    let iotas: Vec<OrderedPartition> = qs.iter().map(Composition::iota).collect();
    let big = diamond(r, &iotas)?.partition;
    let shape = big.shape();
    let tau = big.transporter_to(&shape.iota())?;
    Ok((big, shape, tau))
}

fn beta_cases(cfg: &CheckConfig, s: &mut Sampler) -> Vec<Case> {
    let g = inner_gamma(cfg.operad, cfg.field);
    let field = cfg.field;
    let mut cases = Vec::new();
    let unit: Invariant = [(g.operad.unit(), field.one())].into_iter().collect();
    for a in [g.generator(0), s.free(&g, 2)] {
        let xs = unit.clone();
        cases.push(Case::new("beta/unit", format!("a={a}"), move || {
            pair(g.beta_eval(&xs, &Composition::new(vec![1]), std::slice::from_ref(&a))?, a.clone())
        }));
    }
    for n in 1..=cfg.bounds.max_arity {
        for r in shapes(n) {
            let p = r.len();
            let cls = classes(g.operad, &r);
            for (ci, x) in cls.iter().enumerate() {
                let xs = g.orbit_sum(x, &r);
                for args in s.arg_sets(&g, p) {
                    let inputs = format!("x={} r={r} args={}", show_invariant(&xs), show_args(&args));
                    for rho in Permutation::all(p).into_iter().filter(|q| !q.is_identity()) {
                        let (xs, r, args) = (xs.clone(), r.clone(), args.clone());
                        cases.push(Case::new("beta/permutation", format!("{inputs} rho={rho}"), move || {
                            let moved = act_invariant(&xs, &block_permutation(&rho, &r)?)?;
                            let rhs = g.beta_eval(&moved, &r.permuted(&rho)?, &rho.permute(&args))?;
                            pair(g.beta_eval(&xs, &r, &args)?, rhs)
                        }));
                    }
                    for at in 0..=p {
                        let extra = s.free(&g, p + 1);
                        let (xs, r, args) = (xs.clone(), r.clone(), args.clone());
                        cases.push(Case::new("beta/zero-part", format!("{inputs} at={at} a0={extra}"), move || {
                            let lhs = g.beta_eval(&xs, &with_part(&r, at, 0), &inserted(&args, at, extra.clone()))?;
                            pair(lhs, g.beta_eval(&xs, &r, &args)?)
                        }));
                    }
                    for at in 0..p {
                        let lambda = s.scalar();
                        let (xs, r, args) = (xs.clone(), r.clone(), args.clone());
                        cases.push(Case::new("beta/homogeneity", format!("{inputs} at={at} lambda={lambda}"), move || {
                            let mut scaled = args.clone();
                            scaled[at] = scaled[at].scale(&lambda);
                            let k = r.parts()[at] as u32;
                            pair(g.beta_eval(&xs, &r, &scaled)?, g.beta_eval(&xs, &r, &args)?.scale(&lambda.pow(k)))
                        }));
                    }
                    for q in Composition::all_positive(p).into_iter().filter(|q| q.len() < p) {
                        let (xs, r, args) = (xs.clone(), r.clone(), args.clone());
                        cases.push(Case::new("beta/repetition", format!("{inputs} q={q}"), move || {
                            let coarse = r.coarsen(&q)?;
                            let repeated: Vec<FreeElem> = q
                                .parts()
                                .iter()
                                .zip(&args)
                                .flat_map(|(&k, a)| std::iter::repeat_n(a.clone(), k))
                                .collect();
                            let summed = coset_sum(&to_gvector(&xs, field), &coarse.iota(), &BlockSystem::young(&r.iota()))?;
                            let rhs = g.beta_eval(&from_gvector(&summed), &coarse, &args[..q.len()])?;
                            pair(g.beta_eval(&xs, &r, &repeated)?, rhs)
                        }));
                    }
                    for at in 0..p {
                        let extra = s.free(&g, p + 1);
                        let (xs, r, args) = (xs.clone(), r.clone(), args.clone());
                        cases.push(Case::new("beta/additivity", format!("{inputs} at={at} a0={extra}"), move || {
                            let mut summed = args.clone();
                            summed[at] = extra.plus(&args[at]);
                            let k = r.parts()[at];
                            let mut rhs = g.zero();
                            for l in 0..=k {
                                let split = split_at(&r, at, l, k - l)?;
                                rhs.add_assign(&g.beta_eval(&xs, &split, &inserted(&args, at, extra.clone()))?);
                            }
                            pair(g.beta_eval(&xs, &r, &summed)?, rhs)
                        }));
                    }
                    {
                        // every argument a sum of one or two fresh ones
                        let q = Composition::new((0..p).map(|_| s.rng.gen_range(1..=2)).collect());
                        let pieces: Vec<FreeElem> = (0..q.total()).map(|_| s.free(&g, q.total())).collect();
                        let (xs, r) = (xs.clone(), r.clone());
                        let inputs = format!("x={} r={r} q={q} pieces={}", show_invariant(&xs), show_args(&pieces));
                        cases.push(Case::new("beta/additivity-blocks", inputs, move || {
                            let mut sums = Vec::with_capacity(p);
                            let mut at = 0;
                            for &k in q.parts() {
                                let mut acc = g.zero();
                                for piece in &pieces[at..at + k] {
                                    acc.add_assign(piece);
                                }
                                sums.push(acc);
                                at += k;
                            }
                            let mut rhs = g.zero();
                            let mut stack: Vec<Vec<Composition>> = vec![vec![]];
                            for (&ri, &qi) in r.parts().iter().zip(q.parts()) {
                                stack = stack
                                    .into_iter()
                                    .flat_map(|ks| {
                                        Composition::all(ri, qi).into_iter().map(move |k| {
                                            let mut ks = ks.clone();
                                            ks.push(k);
                                            ks
                                        })
                                    })
                                    .collect();
                            }
                            for ks in stack {
                                rhs.add_assign(&g.beta_eval(&xs, &r.refine(&ks)?, &pieces)?);
                            }
                            pair(g.beta_eval(&xs, &r, &sums)?, rhs)
                        }));
                    }
                    if cls.len() > 1 {
                        let other = g.orbit_sum(&cls[(ci + 1) % cls.len()], &r);
                        let lambda = s.scalar();
                        let (xs, r, args) = (xs.clone(), r.clone(), args.clone());
                        let inputs = format!("{inputs} y={} lambda={lambda}", show_invariant(&other));
                        cases.push(Case::new("beta/linearity", inputs, move || {
                            let mut comb: Invariant = BTreeMap::new();
                            for (o, c) in &xs {
                                *comb.entry(o.clone()).or_insert_with(|| field.zero()) += &(&lambda * c);
                            }
                            for (o, c) in &other {
                                *comb.entry(o.clone()).or_insert_with(|| field.zero()) += c;
                            }
                            comb.retain(|_, c| !c.is_zero());
                            let rhs = g.beta_eval(&xs, &r, &args)?.scale(&lambda).plus(&g.beta_eval(&other, &r, &args)?);
                            pair(g.beta_eval(&comb, &r, &args)?, rhs)
                        }));
                    }
                }
            }
        }
    }
    for (r, qs) in composite_shapes(cfg.bounds.max_arity) {
        for (x, ys) in composite_classes(g.operad, &r, &qs, s) {
            let width: usize = qs.iter().map(Composition::len).sum();
            let mut sets = vec![(0..width).map(|i| g.generator(i as Gen)).collect::<Vec<_>>()];
            sets.push((0..width).map(|_| s.free(&g, width)).collect());
            for b in sets {
                let xs = g.orbit_sum(&x, &r);
                let inner: Vec<Invariant> = ys.iter().zip(&qs).map(|(y, q)| g.orbit_sum(y, q)).collect();
                let inputs = format!(
                    "x={x} r={r} inner=[{}] args={}",
                    ys.iter().zip(&qs).map(|(y, q)| format!("{y}@{q}")).collect::<Vec<_>>().join("; "),
                    show_args(&b)
                );
                let (r, qs) = (r.clone(), qs.clone());
                cases.push(Case::new("beta/composition", inputs, move || {
                    let mut at = 0;
                    let mut outs = Vec::with_capacity(qs.len());
                    for (xi, q) in inner.iter().zip(&qs) {
                        outs.push(g.beta_eval(xi, q, &b[at..at + q.len()])?);
                        at += q.len();
                    }
                    let lhs = g.beta_eval(&xs, &r, &outs)?;
                    let shape = WreathShape::new(r.clone(), qs.clone())?;
                    let (big, flat, tau) = diamond_transport(&r, &qs)?;
                    let mu = compose_invariants(&xs, &r, &inner, field)?;
                    let summed = coset_sum(&to_gvector(&mu, field), &big, &BlockSystem::wreath(&shape))?;
                    let moved = act_invariant(&from_gvector(&summed), &tau)?;
                    pair(lhs, g.beta_eval(&moved, &flat, &b)?)
                }));
            }
        }
    }
    cases
}

fn ratio(num: &Integer, den: &Integer, field: FieldSpec) -> Result<Scalar> {
    Ok(field.from_integer(&index_ratio(num, den)?))
}

fn gamma_cases(cfg: &CheckConfig, s: &mut Sampler) -> Vec<Case> {
    let g = inner_gamma(cfg.operad, cfg.field);
    let field = cfg.field;
    let operad = cfg.operad;
    let mut cases = Vec::new();
    for a in [g.generator(0), s.free(&g, 2)] {
        cases.push(Case::new("gamma/unit", format!("a={a}"), move || {
            pair(g.gamma_eval(&operad.unit(), &Composition::new(vec![1]), std::slice::from_ref(&a))?, a.clone())
        }));
    }
    for n in 1..=cfg.bounds.max_arity {
        for r in shapes(n) {
            let p = r.len();
            for x in classes(operad, &r) {
                for args in s.arg_sets(&g, p) {
                    let inputs = format!("x={x} r={r} args={}", show_args(&args));
                    for rho in Permutation::all(p).into_iter().filter(|q| !q.is_identity()) {
                        let (x, r, args) = (x.clone(), r.clone(), args.clone());
                        cases.push(Case::new("gamma/permutation", format!("{inputs} rho={rho}"), move || {
                            let moved = x.act(&block_permutation(&rho, &r)?)?;
                            let rhs = g.gamma_eval(&moved, &r.permuted(&rho)?, &rho.permute(&args))?;
                            pair(g.gamma_eval(&x, &r, &args)?, rhs)
                        }));
                    }
                    for at in 0..=p {
                        let extra = s.free(&g, p + 1);
                        let (x, r, args) = (x.clone(), r.clone(), args.clone());
                        cases.push(Case::new("gamma/zero-part", format!("{inputs} at={at} a0={extra}"), move || {
                            let lhs = g.gamma_eval(&x, &with_part(&r, at, 0), &inserted(&args, at, extra.clone()))?;
                            pair(lhs, g.gamma_eval(&x, &r, &args)?)
                        }));
                    }
                    for at in 0..p {
                        let lambda = s.scalar();
                        let (x, r, args) = (x.clone(), r.clone(), args.clone());
                        cases.push(Case::new("gamma/homogeneity", format!("{inputs} at={at} lambda={lambda}"), move || {
                            let mut scaled = args.clone();
                            scaled[at] = scaled[at].scale(&lambda);
                            let k = r.parts()[at] as u32;
                            pair(g.gamma_eval(&x, &r, &scaled)?, g.gamma_eval(&x, &r, &args)?.scale(&lambda.pow(k)))
                        }));
                    }
                    for q in Composition::all_positive(p).into_iter().filter(|q| q.len() < p) {
                        let (x, r, args) = (x.clone(), r.clone(), args.clone());
                        cases.push(Case::new("gamma/repetition", format!("{inputs} q={q}"), move || {
                            let coarse = r.coarsen(&q)?;
                            let repeated: Vec<FreeElem> = q
                                .parts()
                                .iter()
                                .zip(&args)
                                .flat_map(|(&k, a)| std::iter::repeat_n(a.clone(), k))
                                .collect();
                            let k = ratio(
                                &young_label_stabilizer(x.labels(), &coarse),
                                &young_label_stabilizer(x.labels(), &r),
                                field,
                            )?;
                            let rhs = g.gamma_eval(&x, &coarse, &args[..q.len()])?.scale(&k);
                            pair(g.gamma_eval(&x, &r, &repeated)?, rhs)
                        }));
                    }
                    if p >= 2 {
                        // the adjacent-merge form, at every adjacent pair
                        for at in 0..p - 1 {
                            let (x, r, args) = (x.clone(), r.clone(), args.clone());
                            cases.push(Case::new("gamma/repetition-adjacent", format!("{inputs} at={at}"), move || {
                                let mut parts = r.parts().to_vec();
                                let merged_part = parts.remove(at + 1);
                                parts[at] += merged_part;
                                let merged = Composition::new(parts);
                                let mut repeated = args.clone();
                                repeated[at + 1] = args[at].clone();
                                let mut fewer = args.clone();
                                fewer.remove(at + 1);
                                let k = ratio(
                                    &young_label_stabilizer(x.labels(), &merged),
                                    &young_label_stabilizer(x.labels(), &r),
                                    field,
                                )?;
                                pair(g.gamma_eval(&x, &r, &repeated)?, g.gamma_eval(&x, &merged, &fewer)?.scale(&k))
                            }));
                        }
                    }
                    for at in 0..p {
                        let extra = s.free(&g, p + 1);
                        let (x, r, args) = (x.clone(), r.clone(), args.clone());
                        cases.push(Case::new("gamma/additivity", format!("{inputs} at={at} a0={extra}"), move || {
                            let mut summed = args.clone();
                            summed[at] = extra.plus(&args[at]);
                            let k = r.parts()[at];
                            let spread = inserted(&args, at, extra.clone());
                            let mut rhs = g.zero();
                            let orbit_r = young_orbit(x.labels(), &r);
                            for l in 0..=k {
                                let split = split_at(&r, at, l, k - l)?;
                                let finer: BTreeSet<Vec<u32>> =
                                    orbit_r.iter().map(|y| young_canonical(y, &split)).collect();
                                for y in finer {
                                    rhs.add_assign(&g.gamma_eval(&labels_op(operad, y), &split, &spread)?);
                                }
                            }
                            pair(g.gamma_eval(&x, &r, &summed)?, rhs)
                        }));
                    }
                }
            }
        }
    }
    for (r, qs) in composite_shapes(cfg.bounds.max_arity) {
        for (x, ys) in composite_classes(operad, &r, &qs, s) {
            let width: usize = qs.iter().map(Composition::len).sum();
            let mut sets = vec![(0..width).map(|i| g.generator(i as Gen)).collect::<Vec<_>>()];
            sets.push((0..width).map(|_| s.free(&g, width)).collect());
            for b in sets {
                let inputs = format!(
                    "x={x} r={r} inner=[{}] args={}",
                    ys.iter().zip(&qs).map(|(y, q)| format!("{y}@{q}")).collect::<Vec<_>>().join("; "),
                    show_args(&b)
                );
                let (x, r, qs, ys) = (x.clone(), r.clone(), qs.clone(), ys.clone());
                cases.push(Case::new("gamma/composition", inputs, move || {
                    let mut at = 0;
                    let mut outs = Vec::with_capacity(qs.len());
                    for (y, q) in ys.iter().zip(&qs) {
                        outs.push(g.gamma_eval(y, q, &b[at..at + q.len()])?);
                        at += q.len();
                    }
                    let lhs = g.gamma_eval(&x, &r, &outs)?;
                    let (_, flat, tau) = diamond_transport(&r, &qs)?;
                    let mu = compose_blocks_op(&x, &r, &ys)?.act(&tau)?;
                    let mut den = young_label_stabilizer(x.labels(), &r);
                    for ((y, q), &ri) in ys.iter().zip(&qs).zip(r.parts()) {
                        den *= num_traits::pow(young_label_stabilizer(y.labels(), q), ri);
                    }
                    let k = ratio(&young_label_stabilizer(mu.labels(), &flat), &den, field)?;
                    pair(lhs, g.gamma_eval(&mu, &flat, &b)?.scale(&k))
                }));
            }
        }
    }
    cases
}

fn compose_blocks_op(x: &Op, r: &Composition, ys: &[Op]) -> Result<Op> {
    crate::permrep::compose_blocks(x, r, ys)
}

/// Every `(h, args)` with `h ∈ 𝒞_r` and `Σ r_i |u_i| ≤ max_degree`, one basis sequence per argument.
pub fn step_instances(max_degree: usize) -> Vec<(StepFunction, Vec<Bhs>)> {
    let mut out = Vec::new();
    for n in 1..=max_degree {
        for r in shapes(n) {
            let hs = enumerate_c_r(&r);
            if hs.is_empty() {
                continue;
            }
            let mut partial: Vec<(Vec<Bhs>, usize)> = vec![(vec![], 0)];
            for &ri in r.parts() {
                let mut next = Vec::new();
                for (us, used) in &partial {
                    for m in 1..=(max_degree - used) / ri {
                        for u in enumerate_bhs(m) {
                            let mut us = us.clone();
                            us.push(u);
                            next.push((us, used + ri * m));
                        }
                    }
                }
                partial = next;
            }
            for h in &hs {
                for (us, _) in &partial {
                    out.push((h.clone(), us.clone()));
                }
            }
        }
    }
    out
}

fn degree_of(e: &StepElem) -> usize {
    e.terms().keys().map(|u| u.size() as usize).max().unwrap_or(0)
}

fn show_steps(args: &[StepElem]) -> String {
    format!("[{}]", args.iter().map(|a| a.to_string()).collect::<Vec<_>>().join("; "))
}

fn step_cases(cfg: &CheckConfig, s: &mut Sampler) -> Vec<Case> {
    let field = cfg.field;
    let alg = BhsAlgebra { field };
    let lev = LevGamma {
        gamma: inner_gamma(Operad::Lev, field),
    };
    let d = cfg.bounds.max_degree;
    let mut cases = Vec::new();
    for n in 1..=d {
        for u in enumerate_bhs(n) {
            let a = StepElem::basis(field, u);
            cases.push(Case::new("step/unit", format!("a={a}"), move || {
                let unit = StepFunction::new(vec![0], Composition::new(vec![1]))?;
                Ok((step_value(&alg.phi(&unit, std::slice::from_ref(&a))?), step_value(&a)))
            }));
        }
    }
    for (h, us) in step_instances(d) {
        let r = h.r().clone();
        let p = r.len();
        let basis: Vec<StepElem> = us.iter().map(|u| StepElem::basis(field, u.clone())).collect();
        // a random combination of sequences no larger than the basis ones
        let random: Vec<StepElem> = us.iter().map(|u| s.step_elem(u.size() as usize)).collect();
        for args in [basis, random] {
            let inputs = format!("h={h} args={}", show_steps(&args));
            let used: usize = r.parts().iter().zip(&args).map(|(&k, a)| k * degree_of(a)).sum();
            for rho in Permutation::all(p).into_iter().filter(|q| !q.is_identity()) {
                let (h, r, args) = (h.clone(), r.clone(), args.clone());
                cases.push(Case::new("step/permutation", format!("{inputs} rho={rho}"), move || {
                    let moved = StepFunction::new(block_permutation(&rho, &r)?.permute(h.h()), r.permuted(&rho)?)?;
                    let lhs = alg.phi(&moved, &rho.permute(&args))?;
                    Ok((step_value(&lhs), step_value(&alg.phi(&h, &args)?)))
                }));
            }
            for at in 0..=p {
                let extra = s.step_elem(d);
                let (h, args) = (h.clone(), args.clone());
                cases.push(Case::new("step/zero-part", format!("{inputs} at={at} a0={extra}"), move || {
                    let padded = h.with_r(with_part(h.r(), at, 0))?;
                    let lhs = alg.phi(&padded, &inserted(&args, at, extra.clone()))?;
                    Ok((step_value(&lhs), step_value(&alg.phi(&h, &args)?)))
                }));
            }
            for at in 0..p {
                let lambda = s.scalar();
                let (h, args) = (h.clone(), args.clone());
                cases.push(Case::new("step/homogeneity", format!("{inputs} at={at} lambda={lambda}"), move || {
                    let mut scaled = args.clone();
                    scaled[at] = scaled[at].scale(&lambda);
                    let k = h.r().parts()[at] as u32;
                    let rhs = alg.phi(&h, &args)?.scale(&lambda.pow(k));
                    Ok((step_value(&alg.phi(&h, &scaled)?), step_value(&rhs)))
                }));
            }
            for at in 0..p {
                let k = r.parts()[at];
                for l in 0..=k {
                    let (h, args) = (h.clone(), args.clone());
                    cases.push(Case::new("step/repetition", format!("{inputs} at={at} l={l}"), move || {
                        let split = h.with_r(split_at(h.r(), at, l, k - l)?)?;
                        let c = field.from_integer(&binomial(k as u64, l as u64));
                        let lhs = alg.phi(&h, &args)?.scale(&c);
                        let rhs = alg.phi(&split, &inserted(&args, at, args[at].clone()))?;
                        Ok((step_value(&lhs), step_value(&rhs)))
                    }));
                }
            }
            for at in 0..p {
                let k = r.parts()[at];
                let room = (d - (used - k * degree_of(&args[at]))) / k;
                if room == 0 {
                    continue;
                }
                let (a, b) = (s.step_elem(room), s.step_elem(room));
                let (h, args) = (h.clone(), args.clone());
                cases.push(Case::new("step/additivity", format!("{inputs} at={at} a={a} b={b}"), move || {
                    let mut summed = args.clone();
                    summed[at] = a.plus(&b);
                    let mut spread = args.clone();
                    spread[at] = b.clone();
                    spread.insert(at, a.clone());
                    let mut rhs = StepElem::zero(field);
                    for l in 0..=k {
                        rhs = rhs.plus(&alg.phi(&h.with_r(split_at(h.r(), at, l, k - l)?)?, &spread)?);
                    }
                    Ok((step_value(&alg.phi(&h, &summed)?), step_value(&rhs)))
                }));
            }
            {
                let (h, args) = (h.clone(), args.clone());
                cases.push(Case::new("step/phi-from-theta", inputs.clone(), move || {
                    let theta = |x: &Op, r: &Composition, a: &[StepElem]| theta_from_phi(&alg, x, r, a);
                    let back = phi_from_theta(theta, &h, &args)?;
                    Ok((step_value(&back), step_value(&alg.phi(&h, &args)?)))
                }));
            }
        }
        // θ built from the closed form agrees with γ on every class of `Σ_r \ ℒ(n)`
        for x in classes(Operad::Lev, &r) {
            let args: Vec<StepElem> = us.iter().map(|u| StepElem::basis(field, u.clone())).collect();
            let inputs = format!("x={x} r={r} args={}", show_steps(&args));
            let r = r.clone();
            cases.push(Case::new("step/theta-from-phi", inputs, move || {
                let free: Vec<FreeElem> = args.iter().map(StepElem::to_free).collect();
                let theta = theta_from_phi(&alg, &x, &r, &args)?;
                let gamma = StepElem::from_free(&lev.gamma.gamma_eval(&x, &r, &free)?)?;
                Ok((step_value(&theta), step_value(&gamma)))
            }));
        }
    }
    // composition: r, (q_i), h ∈ 𝒞_r, g_i ∈ 𝒞_{q_i}, basis sequences a_ij
    for (r, qs) in composite_shapes(d) {
        let hs = enumerate_c_r(&r);
        let gs: Vec<Vec<StepFunction>> = qs.iter().map(enumerate_c_r).collect();
        if hs.is_empty() || gs.iter().any(Vec::is_empty) {
            continue;
        }
        let m: usize = r.parts().iter().zip(&qs).map(|(&k, q)| k * q.total()).sum();
        let room = d / m;
        if room == 0 {
            continue;
        }
        let picks: Vec<(StepFunction, Vec<StepFunction>)> = {
            let mut all = Vec::new();
            for _ in 0..COMPOSITE_SAMPLES {
                let h = s.pick(&hs, 1)[0].clone();
                let g: Vec<StepFunction> = gs.iter().map(|l| s.pick(l, 1)[0].clone()).collect();
                if !all.contains(&(h.clone(), g.clone())) {
                    all.push((h, g));
                }
            }
            all
        };
        for (h, g) in picks {
            let width: usize = qs.iter().map(Composition::len).sum();
            let args: Vec<StepElem> = (0..width).map(|_| s.step_elem(room)).collect();
            let inputs = format!(
                "h={h} inner=[{}] args={}",
                g.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; "),
                show_steps(&args)
            );
            let (r, qs) = (r.clone(), qs.clone());
            cases.push(Case::new("step/composition", inputs, move || {
                let mut at = 0;
                let mut outs = Vec::with_capacity(g.len());
                for gi in &g {
                    let k = gi.r().len();
                    outs.push(alg.phi(gi, &args[at..at + k])?);
                    at += k;
                }
                let lhs = alg.phi(&h, &outs)?;
                let (_, flat, tau) = diamond_transport(&r, &qs)?;
                let levs: Vec<Op> = g.iter().map(StepFunction::as_lev).collect();
                let mu = compose_blocks_op(&h.as_lev(), &r, &levs)?.act(&tau)?;
                let composite = StepFunction::new(mu.labels().to_vec(), flat)?;
                let mut num = Integer::from(1);
                let mut den = Integer::from(1);
                for (&ri, q) in r.parts().iter().zip(&qs) {
                    den *= factorial(ri as u64);
                    for &qij in q.parts() {
                        num *= factorial((ri * qij) as u64);
                        den *= num_traits::pow(factorial(qij as u64), ri);
                    }
                }
                let k = ratio(&num, &den, field)?;
                Ok((step_value(&lhs), step_value(&alg.phi(&composite, &args)?.scale(&k))))
            }));
        }
    }
    cases
}

fn oracle_cases(cfg: &CheckConfig) -> Vec<Case> {
    let field = cfg.field;
    let alg = BhsAlgebra { field };
    let lev = LevGamma {
        gamma: inner_gamma(Operad::Lev, field).with_method(Method::Cosets),
    };
    step_instances(cfg.bounds.max_degree)
        .into_iter()
        .map(|(h, us)| {
            let inputs = format!("h={h} args=[{}]", us.iter().map(|u| u.to_string()).collect::<Vec<_>>().join("; "));
            Case::new("oracle/closed-form-vs-monad", inputs, move || {
                let args: Vec<StepElem> = us.iter().map(|u| StepElem::basis(field, u.clone())).collect();
                let closed = alg.phi(&h, &args)?;
                let free: Vec<FreeElem> = args.iter().map(StepElem::to_free).collect();
                let monad = StepElem::from_free(&lev.phi(&h, &free)?)?;
                Ok((step_value(&closed), step_value(&monad)))
            })
        })
        .collect()
}

fn cartan_cases(cfg: &CheckConfig, s: &mut Sampler) -> Vec<Case> {
    let g = inner_gamma(Operad::Com, cfg.field);
    let field = cfg.field;
    let top = cfg.bounds.max_index;
    let gp = move |n: usize, a: &FreeElem| g.gamma_eval(&Op::com(n), &Composition::new(vec![n]), std::slice::from_ref(a));
    let power = move |n: usize, a: &FreeElem| -> Result<FreeElem> {
        let mut acc = a.clone();
        for _ in 1..n {
            acc = g.product(&acc, a)?;
        }
        Ok(acc)
    };
    let mut pairs = vec![(g.generator(0), g.generator(1))];
    pairs.push((s.free(&g, 2), s.free(&g, 2)));
    pairs.push((g.product(&g.generator(0), &g.generator(1)).expect("product"), s.free(&g, 2)));
    let mut cases = Vec::new();
    for (a, b) in pairs {
        let inputs = format!("a={a} b={b}");
        let small = a.terms().len() == 1 && a.terms().keys().all(|t| t.arity() == 1);
        {
            let a = a.clone();
            cases.push(Case::new("cartan/unit", inputs.clone(), move || pair(gp(1, &a)?, a.clone())));
        }
        for n in 1..=top {
            let lambda = s.scalar();
            let a = a.clone();
            cases.push(Case::new("cartan/scaling", format!("{inputs} n={n} lambda={lambda}"), move || {
                pair(gp(n, &a.scale(&lambda))?, gp(n, &a)?.scale(&lambda.pow(n as u32)))
            }));
        }
        for m in 1..=top {
            for n in 1..=top {
                let a = a.clone();
                cases.push(Case::new("cartan/product-of-powers", format!("{inputs} m={m} n={n}"), move || {
                    let c = field.from_integer(&binomial((m + n) as u64, m as u64));
                    pair(g.product(&gp(m, &a)?, &gp(n, &a)?)?, gp(m + n, &a)?.scale(&c))
                }));
            }
        }
        for n in 1..=top {
            let (a, b) = (a.clone(), b.clone());
            cases.push(Case::new("cartan/sum", format!("{inputs} n={n}"), move || {
                let mut rhs = gp(n, &a)?.plus(&gp(n, &b)?);
                for l in 1..n {
                    rhs.add_assign(&g.product(&gp(l, &a)?, &gp(n - l, &b)?)?);
                }
                pair(gp(n, &a.plus(&b))?, rhs)
            }));
        }
        for n in 1..=top {
            let ab = g.product(&a, &b).expect("product");
            let nf = field.from_integer(&factorial(n as u64));
            {
                let (a, b, ab, nf) = (a.clone(), b.clone(), ab.clone(), nf.clone());
                cases.push(Case::new("cartan/product", format!("{inputs} n={n} form=factorial"), move || {
                    pair(gp(n, &ab)?, g.product(&gp(n, &a)?, &gp(n, &b)?)?.scale(&nf))
                }));
            }
            {
                let (a, b, ab) = (a.clone(), b.clone(), ab.clone());
                cases.push(Case::new("cartan/product", format!("{inputs} n={n} form=left-power"), move || {
                    pair(gp(n, &ab)?, g.product(&power(n, &a)?, &gp(n, &b)?)?)
                }));
            }
            {
                let (a, b) = (a.clone(), b.clone());
                cases.push(Case::new("cartan/product", format!("{inputs} n={n} form=right-power"), move || {
                    pair(gp(n, &ab)?, g.product(&gp(n, &a)?, &power(n, &b)?)?)
                }));
            }
        }
        for m in 1..=top {
            for n in 1..=top {
                // nested powers of a sum of terms grow quickly; keep those to small products
                if !small && m * n > 6 {
                    continue;
                }
                let a = a.clone();
                cases.push(Case::new("cartan/iterate", format!("{inputs} m={m} n={n}"), move || {
                    let num = factorial((m * n) as u64);
                    let den = factorial(m as u64) * num_traits::pow(factorial(n as u64), m);
                    let c = ratio(&num, &den, field)?;
                    pair(gp(m, &gp(n, &a)?)?, gp(m * n, &a)?.scale(&c))
                }));
            }
        }
    }
    cases
}

/// `(G, H)` with `H` a Young refinement of `G`, over all positive compositions of `n`.
fn young_pairs(n: usize) -> Vec<(OrderedPartition, OrderedPartition)> {
    let mut out = Vec::new();
    for r in Composition::all_positive(n) {
        let mut acc: Vec<Vec<Composition>> = vec![vec![]];
        for &k in r.parts() {
            acc = acc
                .into_iter()
                .flat_map(|prefix| {
                    Composition::all_positive(k).into_iter().map(move |c| {
                        let mut v = prefix.clone();
                        v.push(c);
                        v
                    })
                })
                .collect();
        }
        for ks in acc {
            out.push((r.iota(), r.refine(&ks).expect("refinement of r").iota()));
        }
    }
    out
}

fn diagram_cases<X>(name: &str, set: Vec<X>, n: usize, field: FieldSpec) -> Vec<Case>
where
    X: Action + Ord + Clone + fmt::Debug + Send + Sync + 'static,
{
    let set = std::sync::Arc::new(set);
    let mut cases = Vec::new();
    for (gp, hp) in young_pairs(n) {
        let inputs = format!("set={name} G={gp} H={hp}");
        {
            let (set, gp) = (set.clone(), gp.clone());
            cases.push(Case::new("permrep/orbit-sum-round-trip", inputs.clone(), move || {
                let g = BlockSystem::young(&gp);
                let mut v = GVector::new(field, Mode::Coinvariant);
                for (k, x) in set.iter().enumerate() {
                    if canonical(x, &g)? == *x {
                        v.add(x.clone(), &field.from_i64(k as i64 + 1));
                    }
                }
                let w = o_map(&v, &g)?;
                let back = o_inverse(&w, &g)?;
                let again = o_map(&back, &g)?;
                let mut lhs = gvector_value("class ", &back);
                lhs.extend(gvector_value("orbit ", &again));
                let mut rhs = gvector_value("class ", &v);
                rhs.extend(gvector_value("orbit ", &w));
                Ok((lhs, rhs))
            }));
        }
        {
            let (set, gp, hp) = (set.clone(), gp.clone(), hp.clone());
            cases.push(Case::new("permrep/induction", inputs.clone(), move || {
                let (g, h) = (BlockSystem::young(&gp), BlockSystem::young(&hp));
                let (mut lhs, mut rhs) = (Value::new(), Value::new());
                let reps: BTreeSet<X> = set.iter().map(|x| canonical(x, &h)).collect::<Result<_>>()?;
                for x in reps {
                    let v = GVector::basis(field, Mode::Coinvariant, x.clone());
                    let left = o_map(&ind(&v, &h, &g)?, &g)?;
                    let right = coset_sum(&o_map(&v, &h)?, &gp, &h)?;
                    lhs.extend(gvector_value(&format!("{x:?} ↦ "), &left));
                    rhs.extend(gvector_value(&format!("{x:?} ↦ "), &right));
                }
                Ok((lhs, rhs))
            }));
        }
        {
            let (set, gp, hp) = (set.clone(), gp.clone(), hp.clone());
            cases.push(Case::new("permrep/restriction", inputs, move || {
                let (g, h) = (BlockSystem::young(&gp), BlockSystem::young(&hp));
                let (mut lhs, mut rhs) = (Value::new(), Value::new());
                let reps: BTreeSet<X> = set.iter().map(|x| canonical(x, &g)).collect::<Result<_>>()?;
                for x in reps {
                    let u = GVector::basis(field, Mode::Coinvariant, x.clone());
                    lhs.extend(gvector_value(&format!("{x:?} ↦ "), &o_map(&res(&u, &g, &h)?, &h)?));
                    rhs.extend(gvector_value(&format!("{x:?} ↦ "), &o_map(&u, &g)?));
                }
                Ok((lhs, rhs))
            }));
        }
    }
    cases
}

fn permrep_cases(cfg: &CheckConfig) -> Vec<Case> {
    let field = cfg.field;
    let operad = cfg.operad;
    let mut cases = Vec::new();
    for n in 1..=cfg.bounds.max_arity {
        cases.extend(diagram_cases(&format!("{operad}({n})"), operad.elements(n).to_vec(), n, field));
        if operad == Operad::Com {
            // the ordered-partition sets do not depend on the operad
            for r in shapes(n) {
                cases.extend(diagram_cases(&format!("Π({r};{n})"), OrderedPartition::all_of_shape(&r), n, field));
            }
        }
    }
    for (x, r, ys, qs) in indmult_instances(operad, cfg.bounds.max_arity) {
        let inputs = format!(
            "x={x} r={r} inner=[{}]",
            ys.iter().zip(&qs).map(|(y, q)| format!("{y}@{q}")).collect::<Vec<_>>().join("; ")
        );
        cases.push(Case::new("permrep/composition", inputs, move || {
            let shape = WreathShape::new(r.clone(), qs.clone())?;
            let k = BlockSystem::wreath(&shape);
            let outer: Vec<Op> = orbit(&x, &BlockSystem::young(&r.iota()))?.into_iter().collect();
            let inner: Vec<Vec<Op>> = ys
                .iter()
                .zip(&qs)
                .map(|(y, q)| Ok(orbit(y, &BlockSystem::young(&q.iota()))?.into_iter().collect()))
                .collect::<Result<_>>()?;
            let slots = r.block_of_points();
            let mut left: GVector<Op> = GVector::new(field, Mode::Invariant);
            for xo in &outer {
                let mut choices: Vec<Vec<Op>> = vec![vec![]];
                for &b in &slots {
                    choices = choices
                        .into_iter()
                        .flat_map(|c| {
                            inner[b].iter().map(move |y| {
                                let mut c = c.clone();
                                c.push(y.clone());
                                c
                            })
                        })
                        .collect();
                }
                for c in choices {
                    left.add(xo.full_compose(&c)?, &field.one());
                }
            }
            let right = o_map(&mu_prime(&x, &r, &ys, &qs, field)?, &k)?;
            Ok((gvector_value("", &left), gvector_value("", &right)))
        }));
    }
    cases
}

/// `(x, r, (x_i), (q_i))` with canonical classes and total arity at most `max`.
fn indmult_instances(operad: Operad, max: usize) -> Vec<(Op, Composition, Vec<Op>, Vec<Composition>)> {
    let mut out = Vec::new();
    for (r, qs) in composite_shapes(max) {
        let outer = classes(operad, &r);
        let inner: Vec<Vec<Op>> = qs.iter().map(|q| classes(operad, q)).collect();
        let mut partial: Vec<Vec<Op>> = vec![vec![]];
        for list in &inner {
            partial = partial
                .into_iter()
                .flat_map(|p| {
                    list.iter().map(move |y| {
                        let mut p = p.clone();
                        p.push(y.clone());
                        p
                    })
                })
                .collect();
        }
        for x in &outer {
            for ys in &partial {
                out.push((x.clone(), r.clone(), ys.clone(), qs.clone()));
            }
        }
    }
    out
}

fn roundtrip_cases(cfg: &CheckConfig, s: &mut Sampler) -> Vec<Case> {
    let g = inner_gamma(cfg.operad, cfg.field);
    let field = cfg.field;
    let operad = cfg.operad;
    let mut cases = Vec::new();
    for n in 1..=cfg.bounds.max_arity {
        for r in shapes(n) {
            let p = r.len();
            let cls = classes(operad, &r);
            for (ci, x) in cls.iter().enumerate() {
                let args: Vec<FreeElem> = (0..p).map(|_| s.free(&g, p)).collect();
                {
                    let (x, r, args) = (x.clone(), r.clone(), args.clone());
                    cases.push(Case::new("roundtrip/gamma-to-beta", format!("x={x} r={r} args={}", show_args(&args)), move || {
                        let young = BlockSystem::young(&r.iota());
                        let inv = o_map(&GVector::basis(field, Mode::Coinvariant, x.clone()), &young)?;
                        pair(g.gamma_eval(&x, &r, &args)?, g.beta_eval(&from_gvector(&inv), &r, &args)?)
                    }));
                }
                {
                    // β of a random invariant equals the γ-combination of its classes
                    let y = &cls[(ci + 1) % cls.len()];
                    let (lx, ly) = (s.scalar(), s.scalar());
                    let mut inv: Invariant = BTreeMap::new();
                    for (o, c) in g.orbit_sum(x, &r).into_iter().map(|(o, c)| (o, c * &lx)) {
                        *inv.entry(o).or_insert_with(|| field.zero()) += &c;
                    }
                    for (o, c) in g.orbit_sum(y, &r).into_iter().map(|(o, c)| (o, c * &ly)) {
                        *inv.entry(o).or_insert_with(|| field.zero()) += &c;
                    }
                    inv.retain(|_, c| !c.is_zero());
                    let (r, args) = (r.clone(), args.clone());
                    let inputs = format!("x={} r={r} args={}", show_invariant(&inv), show_args(&args));
                    cases.push(Case::new("roundtrip/beta-to-gamma", inputs, move || {
                        let young = BlockSystem::young(&r.iota());
                        let classes = o_inverse(&to_gvector(&inv, field), &young)?;
                        let mut rhs = g.zero();
                        for (c, k) in classes.terms() {
                            rhs.add_assign(&g.gamma_eval(c, &r, &args)?.scale(k));
                        }
                        pair(g.beta_eval(&inv, &r, &args)?, rhs)
                    }));
                }
                {
                    let (x, r, args) = (x.clone(), r.clone(), args.clone());
                    cases.push(Case::new("roundtrip/trace-and-text", format!("x={x} r={r} args={}", show_args(&args)), move || {
                        let e = g.gamma_eval(&x, &r, &args)?;
                        let mut back = trace_map(&trace_inverse(&e));
                        if field.characteristic() == 0 {
                            back = norm_map(&norm_inverse(&back)?);
                        }
                        let mut reparsed = g.zero();
                        for (t, c) in e.terms() {
                            reparsed.add_term(t.to_string().parse::<GammaTerm>()?, c);
                        }
                        let tag = |prefix: &str, v: &FreeElem| -> Value {
                            free_value(v).into_iter().map(|(k, c)| (format!("{prefix} {k}"), c)).collect()
                        };
                        let mut lhs = tag("maps", &back);
                        lhs.extend(tag("text", &reparsed));
                        let mut rhs = tag("maps", &e);
                        rhs.extend(tag("text", &e));
                        Ok((lhs, rhs))
                    }));
                }
            }
        }
    }
    cases
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn cfg(operad: Operad, field: FieldSpec, arity: usize) -> CheckConfig {
        CheckConfig {
            operad,
            field,
            bounds: Bounds {
                max_arity: arity,
                max_degree: 5,
                max_index: 3,
            },
            seed: 7,
            fault: None,
            exec: Exec::Sequential,
        }
    }

    #[test]
    fn small_suites_pass() {
        for suite in Suite::ALL {
            for operad in [Operad::Com, Operad::Lev] {
                let report = run_suite(suite, &cfg(operad, Q, 3));
                assert!(report.ok(), "{suite} {operad}: {:?}", report.failures.first());
                assert!(report.attempted > 0);
                assert_eq!(report.attempted, report.passed + report.failed);
            }
        }
    }

    #[test]
    fn injected_faults_are_detected() {
        for suite in Suite::ALL {
            let mut c = cfg(Operad::Lev, FieldSpec::prime(2).unwrap(), 3);
            c.fault = Some(5);
            let report = run_suite(suite, &c);
            assert_eq!(report.failed, 1, "{suite}");
            assert!(report.failures[0].witness.contains("lhs ="));
        }
    }

    #[test]
    fn reports_are_deterministic_and_reload() {
        let c = cfg(Operad::Lev, FieldSpec::prime(3).unwrap(), 3);
        let a = run_suite(Suite::Gamma, &c);
        let b = run_suite(Suite::Gamma, &CheckConfig { exec: Exec::Parallel, ..c });
        assert_eq!(a, b);
        let text = serde_json::to_string(&a).unwrap();
        let back: CheckReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn suite_names_round_trip() {
        for suite in Suite::ALL {
            assert_eq!(suite.to_string().parse::<Suite>().unwrap(), suite);
        }
        assert!("nope".parse::<Suite>().is_err());
    }
}
