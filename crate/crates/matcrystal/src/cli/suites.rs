//! Named property suites run by `matcrystal verify` and by the acceptance harness.

use std::fmt;
use std::time::{Duration, Instant};

use clap::ValueEnum;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cancellation::{
    alternating_sum, default_bounds, involution, lr_count, strips_between, summand, support, witness, Cancellable,
    ConditionKind, Failing, Stage, SummationStage,
};
use crate::crystal_bin::Direction;
use crate::doublecrystal::{compose, decompose, CrystalMatrix};
use crate::growth::{GrowthDiagram, Orientation};
use crate::insertion_oracles::{burge, dual_rsk_col, dual_rsk_row, rectify};
use crate::matrices::{encode_binary, encode_integral, BinaryMatrix, IntegralMatrix, Mode};
use crate::pictures::{enumerate, lift_binary, lift_integral, validate};
use crate::schutzenberger::{dual, rotate_complement};
use crate::shapes::{Composition, Flavor, Partition, SkewShape, Strip, Tableau};

/// Seed used when `DC_SEED` is unset.
pub const DEFAULT_SEED: u64 = 2024;

/// Reads the seed from `DC_SEED`, falling back to [`DEFAULT_SEED`].
pub fn seed_from_env() -> u64 {
    std::env::var("DC_SEED").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_SEED)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum)]
pub enum Suite {
    Growth,
    Commutation,
    Potentials,
    RoundTrip,
    Oracles,
    Sums,
    Involutions,
    Duals,
    Pictures,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Growth,
        Suite::Commutation,
        Suite::Potentials,
        Suite::RoundTrip,
        Suite::Oracles,
        Suite::Sums,
        Suite::Involutions,
        Suite::Duals,
        Suite::Pictures,
    ];

    pub fn run(self, seed: u64) -> Report {
        let start = Instant::now();
        let mut t = Tally::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        match self {
            Suite::Growth => growth(&mut t, &mut rng),
            Suite::Commutation => commutation(&mut t),
            Suite::Potentials => potentials(&mut t),
            Suite::RoundTrip => round_trip(&mut t),
            Suite::Oracles => oracles(&mut t, &mut rng),
            Suite::Sums => sums(&mut t),
            Suite::Involutions => involutions(&mut t, &mut rng),
            Suite::Duals => duals(&mut t, &mut rng),
            Suite::Pictures => pictures(&mut t),
        }
        Report { suite: self, cases: t.cases, failures: t.failures, failed: t.failed, elapsed: start.elapsed() }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.to_possible_value().expect("no skipped variants").get_name())
    }
}

/// Runs the suites on separate threads and returns reports in input order.
pub fn run_all(suites: &[Suite], seed: u64) -> Vec<Report> {
    std::thread::scope(|s| {
        let handles: Vec<_> = suites.iter().map(|&suite| s.spawn(move || suite.run(seed))).collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    })
}

#[derive(Debug, Clone)]
pub struct Report {
    pub suite: Suite,
    pub cases: u64,
    /// The first few failure messages.
    pub failures: Vec<String>,
    pub failed: u64,
    pub elapsed: Duration,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failed == 0 && self.cases > 0
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "ok" } else { "FAILED" };
        write!(
            f,
            "{}: {} ({} checks, {} failures, {:.2}s)",
            self.suite,
            verdict,
            self.cases,
            self.failed,
            self.elapsed.as_secs_f64()
        )?;
        for msg in &self.failures {
            write!(f, "\n  {msg}")?;
        }
        Ok(())
    }
}

const KEPT_FAILURES: usize = 10;

#[derive(Default)]
struct Tally {
    cases: u64,
    failed: u64,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < KEPT_FAILURES {
                self.failures.push(msg());
            }
        }
    }
}

/// Every binary matrix of the given size.
pub fn binary_box(h: usize, w: usize) -> impl Iterator<Item = BinaryMatrix> {
    (0u64..1 << (h * w)).map(move |bits| {
        let mut m = BinaryMatrix::zeros(h, w);
        for k in 0..h * w {
            m.set(k / w, k % w, bits >> k & 1 == 1);
        }
        m
    })
}

/// Every integral matrix of the given size with entries at most `max`.
pub fn integral_box(h: usize, w: usize, max: usize) -> impl Iterator<Item = IntegralMatrix> {
    let base = max + 1;
    (0..base.pow((h * w) as u32)).map(move |mut code| {
        let mut m = IntegralMatrix::zeros(h, w);
        for k in 0..h * w {
            m.set(k / w, k % w, code % base);
            code /= base;
        }
        m
    })
}

fn exhaustive_binary() -> impl Iterator<Item = BinaryMatrix> {
    binary_box(3, 4)
}

fn exhaustive_integral() -> impl Iterator<Item = IntegralMatrix> {
    integral_box(3, 3, 2)
}

fn random_binary(rng: &mut ChaCha8Rng, max_h: usize, max_w: usize) -> BinaryMatrix {
    let (h, w) = (rng.gen_range(1..=max_h), rng.gen_range(1..=max_w));
    let mut m = BinaryMatrix::zeros(h, w);
    for i in 0..h {
        for j in 0..w {
            m.set(i, j, rng.gen_bool(0.5));
        }
    }
    m
}

fn random_integral(rng: &mut ChaCha8Rng, max_h: usize, max_w: usize, max: usize) -> IntegralMatrix {
    let (h, w) = (rng.gen_range(1..=max_h), rng.gen_range(1..=max_w));
    let mut m = IntegralMatrix::zeros(h, w);
    for i in 0..h {
        for j in 0..w {
            m.set(i, j, rng.gen_range(0..=max));
        }
    }
    m
}

/// A random straight semistandard tableau with at most `max` squares.
pub fn random_sst(rng: &mut ChaCha8Rng, max: usize) -> Tableau {
    let letters = rng.gen_range(1..=5);
    let bound = Partition::new(vec![max; 4]).expect("rectangle");
    let mut chain = vec![Partition::empty()];
    for _ in 0..letters {
        let cur = chain.last().expect("nonempty chain").clone();
        let room = max - cur.size();
        let options: Vec<Partition> = strips_between(&cur, &bound, Strip::Horizontal)
            .into_iter()
            .filter(|p| p.size() - cur.size() <= room)
            .collect();
        chain.push(options.choose(rng).expect("the current shape is an option").clone());
    }
    Tableau::new(Flavor::Semistandard, chain).expect("chain of horizontal strips")
}

/// Pairs of skew shapes of equal size with outer partitions of at most `max` squares.
pub fn shape_pairs(max: usize) -> Vec<(SkewShape, SkewShape)> {
    let shapes = SkewShape::all_up_to(max);
    let mut out = Vec::new();
    for a in &shapes {
        for b in shapes.iter().filter(|b| b.size() == a.size()) {
            out.push((a.clone(), b.clone()));
        }
    }
    out
}

fn growth(t: &mut Tally, rng: &mut ChaCha8Rng) {
    for _ in 0..100 {
        let n = random_integral(rng, 4, 4, 3);
        let b = random_binary(rng, 4, 4);
        for o in Orientation::ALL {
            let r = GrowthDiagram::compute(&n, o).verify();
            t.check(r.is_ok(), || format!("integral {o} growth of {n:?}: {r:?}"));
            let r = GrowthDiagram::compute(&b, o).verify();
            t.check(r.is_ok(), || format!("binary {o} growth of {b:?}: {r:?}"));
        }
    }
}

fn commute_at<M: CrystalMatrix>(t: &mut Tally, m: &M) {
    let (h, w) = m.extent();
    for i in 0..h {
        for j in 0..w {
            for dv in [Direction::Up, Direction::Down] {
                for dh in [Direction::Left, Direction::Right] {
                    let (Some((a, _)), Some((b, _))) = (m.step(dv, i), m.step(dh, j)) else { continue };
                    let ab = a.step(dh, j).map(|x| x.0);
                    let ba = b.step(dv, i).map(|x| x.0);
                    t.check(ab.is_some() && ab == ba, || format!("{dv} {i} and {dh} {j} do not commute on {m:?}"));
                }
            }
        }
    }
}

fn commutation(t: &mut Tally) {
    exhaustive_binary().for_each(|m| commute_at(t, &m));
    exhaustive_integral().for_each(|m| commute_at(t, &m));
}

fn potentials_at<M: CrystalMatrix>(t: &mut Tally, m: &M) {
    let (h, w) = m.extent();
    for d in Direction::ALL {
        let n = if d.is_vertical() { h } else { w };
        for idx in 0..n {
            let mut cur = m.clone();
            let mut count = 0;
            while let Some((next, _)) = cur.step(d, idx) {
                cur = next;
                count += 1;
            }
            let p = m.potential(d, idx);
            t.check(count == p, || format!("{d} {idx} on {m:?}: potential {p}, moves {count}"));
        }
    }
    let diff = |c: &Composition, i: usize| c.get(i) as isize - c.get(i + 1) as isize;
    for i in 0..h {
        let lhs = m.potential(Direction::Down, i) as isize - m.potential(Direction::Up, i) as isize;
        let rhs = diff(&m.row_margin(), i);
        t.check(lhs == rhs, || format!("down minus up at {i} on {m:?}: {lhs} vs {rhs}"));
    }
    for j in 0..w {
        let lhs = m.potential(Direction::Right, j) as isize - m.potential(Direction::Left, j) as isize;
        let rhs = diff(&m.col_margin(), j);
        t.check(lhs == rhs, || format!("right minus left at {j} on {m:?}: {lhs} vs {rhs}"));
    }
}

fn potentials(t: &mut Tally) {
    exhaustive_binary().for_each(|m| potentials_at(t, &m));
    exhaustive_integral().for_each(|m| potentials_at(t, &m));
}

fn round_trip_at<M: CrystalMatrix>(t: &mut Tally, m: &M) {
    let (p, q) = decompose(m);
    let back = compose(&p, &q);
    t.check(back.as_ref() == Ok(m), || format!("compose(decompose({m:?})) = {back:?}"));
}

fn round_trip(t: &mut Tally) {
    exhaustive_binary().for_each(|m| round_trip_at(t, &m));
    exhaustive_integral().for_each(|m| round_trip_at(t, &m));
}

fn column_suffix_shape(p: &BinaryMatrix, j: usize) -> Composition {
    Composition::new((0..p.height()).map(|i| p.row_sum_in(i, j..p.width())).collect())
}

fn oracles(t: &mut Tally, rng: &mut ChaCha8Rng) {
    for m in exhaustive_integral() {
        let (p, q) = decompose(&m);
        let (ps, qs) = burge(&m);
        let ok = encode_integral(&ps).ok() == Some(p) && encode_integral(&qs).ok().map(|x| x.transpose()) == Some(q);
        t.check(ok, || format!("burge disagrees with decompose on {m:?}"));
    }
    for m in exhaustive_binary() {
        let (p, q) = decompose(&m);
        let (s, r) = dual_rsk_col(&m);
        let chain_ok = (0..=m.width()).all(|j| r.at(j).as_composition() == &column_suffix_shape(&p, j));
        t.check(encode_binary(&s).ok() == Some(q) && chain_ok, || format!("dual_rsk_col disagrees with decompose on {m:?}"));
    }
    let running = BinaryMatrix::from_values(
        &["010010000", "111000000", "101001000", "010100000", "001110100", "100010011", "011111110"]
            .iter()
            .map(|r| r.bytes().map(|b| (b - b'0') as usize).collect())
            .collect::<Vec<_>>(),
    );
    let mut samples = vec![running];
    samples.extend((0..50).map(|_| random_binary(rng, 6, 7)));
    for m in samples {
        let (r_star, _) = dual_rsk_row(&m);
        let (_, r) = dual_rsk_col(&m);
        let d = dual(&r);
        t.check(d.as_ref() == Ok(&r_star), || format!("dual_rsk_row on {m:?}: {r_star} vs dual {d:?}"));
    }
}

fn sums(t: &mut Tally) {
    for (a, b) in shape_pairs(5) {
        let bin = lr_count(&a, &b, Mode::Binary);
        let int = lr_count(&a, &b, Mode::Integral);
        t.check(bin == int, || format!("lr_count {a} {b}: binary {bin}, integral {int}"));
        for mode in [Mode::Binary, Mode::Integral] {
            let bounds = default_bounds(&a, &b, mode);
            for stage in Stage::ALL {
                let v = alternating_sum(&a, &b, SummationStage { stage, mode }, bounds);
                t.check(v == Ok(bin as i64), || format!("{stage} {mode} sum for {a} {b}: {v:?}, expected {bin}"));
            }
        }
    }
}

fn involution_checks<M: Cancellable>(t: &mut Tally, a: &SkewShape, b: &SkewShape, extra: &[SkewShape]) {
    let bounds = default_bounds(a, b, M::MODE);
    for stage in [Stage::Brute, Stage::TabFirst, Stage::LrFirst] {
        let kind = stage.cancels().expect("stage cancels");
        let (failing, perpendicular) = match kind {
            ConditionKind::Tableau => (Failing::TableauFor(a.clone()), b),
            ConditionKind::LittlewoodRichardson => (Failing::LrFor(b.clone()), a),
        };
        let keeps = |m: &M, p: &M, s: &SkewShape| match kind {
            ConditionKind::Tableau => m.lr_condition(s) == p.lr_condition(s),
            ConditionKind::LittlewoodRichardson => m.tableau_condition(s) == p.tableau_condition(s),
        };
        for m in support::<M>(a, b, stage, bounds) {
            let value = summand(&m, a, b, stage);
            if value == 0 || witness(&m, &failing).is_none() {
                continue;
            }
            let Ok(p) = involution(&m, &failing) else {
                t.check(false, || format!("{stage} involution undefined on {m:?} for {a} {b}"));
                continue;
            };
            t.check(p != m, || format!("{stage} fixed point {m:?} for {a} {b}"));
            t.check(involution(&p, &failing).as_ref() == Ok(&m), || format!("{stage} not an involution at {m:?}"));
            let pv = summand(&p, a, b, stage);
            t.check(pv == -value, || format!("{stage} at {m:?}: summands {value} and {pv}"));
            for s in std::iter::once(perpendicular).chain(extra) {
                t.check(keeps(&m, &p, s), || format!("{stage} at {m:?} changes the perpendicular condition for {s}"));
            }
        }
    }
}

fn involutions(t: &mut Tally, rng: &mut ChaCha8Rng) {
    let pool = SkewShape::all_up_to(6);
    let extra: Vec<SkewShape> = pool.choose_multiple(rng, 3).cloned().collect();
    for (a, b) in shape_pairs(5) {
        involution_checks::<BinaryMatrix>(t, &a, &b, &extra);
        involution_checks::<IntegralMatrix>(t, &a, &b, &extra);
    }
}

fn duals(t: &mut Tally, rng: &mut ChaCha8Rng) {
    let parse = |f: Flavor, s: &str| Tableau::parse(f, s).expect("literal tableau");
    let r = parse(Flavor::ReverseTranspose, "8,7,6,5,4,2,1,0|7,6,5,4,3,2,1,0|4,3,2,1,0|4,3,1|2");
    let r_star = parse(Flavor::Transpose, "0,1,2,3,4,5,6,7|0,1,2,3,4,6,7,8|0,1,2,3,4|1,2,5|4");
    let lbar = parse(Flavor::Semistandard, "0,0,0,0,0,1,1,2|1,1,1,1,1,2,2,3|2,2,3,3,4|3,3,4|4");
    let lbar_star = parse(Flavor::Reverse, "4,4,4,3,3,1,1,1|3,3,3,2,2,0,0,0|2,2,2,1,1|1,1,0|0");
    for (x, y) in [(&r, &r_star), (&lbar, &lbar_star)] {
        let d = dual(x);
        t.check(d.as_ref() == Ok(y), || format!("dual({x}) = {d:?}, expected {y}"));
    }
    for _ in 0..100 {
        let s = random_sst(rng, 10);
        let Ok(d) = dual(&s) else {
            t.check(false, || format!("dual undefined on {s}"));
            continue;
        };
        let dd = dual(&d);
        t.check(dd.as_ref() == Ok(&s), || format!("dual(dual({s})) = {dd:?}"));
        let outer = s.shape().outer().clone();
        let rot = rotate_complement(&d, outer.len(), outer.get(0)).map(|x| rectify(&x));
        t.check(rot.as_ref() == Ok(&s), || format!("rectified complement of dual({s}) = {rot:?}"));
    }
}

fn pictures(t: &mut Tally) {
    for (a, b) in shape_pairs(5) {
        let all = match enumerate(&a, &b) {
            Ok(all) => all,
            Err(e) => {
                t.check(false, || format!("enumerate {a} {b}: {e}"));
                continue;
            }
        };
        let count = lr_count(&a, &b, Mode::Integral);
        t.check(all.len() as u64 == count, || format!("{a} -> {b}: {} pictures, lr_count {count}", all.len()));
        for f in &all {
            let (n, m) = (f.integral(), f.binary());
            let back_n = lift_integral(&n, &a, &b);
            let back_m = lift_binary(&m, &a, &b);
            t.check(back_n.as_ref() == Ok(f), || format!("integral lift of {n:?} for {a} -> {b}"));
            t.check(back_m.as_ref() == Ok(f), || format!("binary lift of {m:?} for {a} -> {b}"));
            let inv = f.inverse();
            t.check(validate(inv.map(), &b, &a) && inv.integral() == n.transpose(), || {
                format!("inverse of picture {a} -> {b}:\n{f}")
            });
        }
    }
}
