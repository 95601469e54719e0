//! Acceptance suite. One test per criterion; each prints a single `[PASS]`/`[FAIL]` line
//! with its elapsed time and limit. Expected values are either stated constants or computed
//! here by brute force, independently of the library's group algorithms.

use sl2lab::finring::{parse_element, parse_ring_spec};
use sl2lab::group::{split_extension_check, GroupTable};
use sl2lab::normlab::{construct_generators, delta_k, level_sum, pi_set, DeltaValue};
use sl2lab::quadfields::{delta_verdict, v_profile, DeltaVerdict};
use sl2lab::sandwich::{f3_hom, g_of_n, hq_hom, is_radix, q_hom, sandwich_check, z4_hom, AbelianHom};
use sl2lab::sl2::{selfrep_shift_check, Mat2};
use sl2lab::{Elem, Error, FiniteRing};
use std::collections::{HashMap, HashSet, VecDeque};
use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

/// Prints the criterion line outside libtest's capture, then asserts.
fn report(id: u32, name: &str, start: Instant, limit_s: u64, failures: Vec<String>) {
    let elapsed = start.elapsed();
    let mut failures = failures;
    if elapsed > Duration::from_secs(limit_s) {
        failures.push(format!(
            "time limit exceeded: {:.2}s > {limit_s}s",
            elapsed.as_secs_f64()
        ));
    }
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    let mut out = std::io::stdout().lock();
    writeln!(
        out,
        "[{status}] criterion {id:>2}: {name} ({:.3}s, limit {limit_s}s)",
        elapsed.as_secs_f64()
    )
    .unwrap();
    for f in &failures {
        writeln!(out, "         {f}").unwrap();
    }
    drop(out);
    assert!(failures.is_empty(), "criterion {id} failed: {failures:?}");
}

fn check<T: PartialEq + std::fmt::Debug>(failures: &mut Vec<String>, label: &str, expected: T, actual: T) {
    if expected != actual {
        failures.push(format!("{label}: expected {expected:?}, got {actual:?}"));
    }
}

fn ring(spec: &str) -> FiniteRing {
    parse_ring_spec(spec).unwrap()
}

fn el(r: &FiniteRing, s: &str) -> Elem {
    parse_element(r, s).unwrap()
}

// ---- toy rings with their own tables, used only for the order oracle ----

struct Toy {
    n: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
}

impl Toy {
    fn integers_mod(m: usize) -> Self {
        let add = (0..m * m).map(|i| (i / m + i % m) % m).collect();
        let mul = (0..m * m).map(|i| (i / m) * (i % m) % m).collect();
        Toy { n: m, add, mul }
    }

    /// `F2[x]/(x² + c1·x + c0)`, elements `b0 + 2·b1`.
    fn f2_quadratic(c1: usize, c0: usize) -> Self {
        let mul_one = |a: usize, b: usize| {
            let (a0, a1, b0, b1) = (a & 1, a >> 1, b & 1, b >> 1);
            let sq = a1 & b1;
            let lin = (a0 & b1) ^ (a1 & b0) ^ (sq & c1);
            let con = (a0 & b0) ^ (sq & c0);
            con | (lin << 1)
        };
        let add = (0..16).map(|i| (i / 4) ^ (i % 4)).collect();
        let mul = (0..16).map(|i| mul_one(i / 4, i % 4)).collect();
        Toy { n: 4, add, mul }
    }

    fn sl2_count(&self) -> usize {
        let n = self.n;
        let neg: Vec<usize> = (0..n)
            .map(|x| (0..n).find(|&y| self.add[x * n + y] == 0).unwrap())
            .collect();
        let mut count = 0;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let ad = self.mul[a * n + d];
                        let bc = self.mul[b * n + c];
                        if self.add[ad * n + neg[bc]] == 1 {
                            count += 1;
                        }
                    }
                }
            }
        }
        count
    }
}

// ---- brute-force group algorithms on library matrices ----

fn mmul(r: &FiniteRing, x: &Mat2, y: &Mat2) -> Mat2 {
    let e = |p: Elem, q: Elem, s: Elem, t: Elem| r.add(r.mul(p, q), r.mul(s, t));
    Mat2 {
        a: e(x.a, y.a, x.b, y.c),
        b: e(x.a, y.b, x.b, y.d),
        c: e(x.c, y.a, x.d, y.c),
        d: e(x.c, y.b, x.d, y.d),
    }
}

fn minv(r: &FiniteRing, x: &Mat2) -> Mat2 {
    Mat2 {
        a: x.d,
        b: r.neg(x.b),
        c: r.neg(x.c),
        d: x.a,
    }
}

fn ident(r: &FiniteRing) -> Mat2 {
    Mat2 {
        a: r.one(),
        b: r.zero(),
        c: r.zero(),
        d: r.one(),
    }
}

fn upper(r: &FiniteRing, x: Elem) -> Mat2 {
    Mat2 {
        a: r.one(),
        b: x,
        c: r.zero(),
        d: r.one(),
    }
}

fn lower(r: &FiniteRing, x: Elem) -> Mat2 {
    Mat2 {
        a: r.one(),
        b: r.zero(),
        c: x,
        d: r.one(),
    }
}

/// `C(x) = E21(x)·E12(x)`, built from the definition.
fn selfrep(r: &FiniteRing, x: Elem) -> Mat2 {
    mmul(r, &lower(r, x), &upper(r, x))
}

fn conj(r: &FiniteRing, x: &Mat2, by: &Mat2) -> Mat2 {
    mmul(r, &mmul(r, &minv(r, by), x), by)
}

fn commutator(r: &FiniteRing, x: &Mat2, y: &Mat2) -> Mat2 {
    mmul(r, &mmul(r, x, y), &mmul(r, &minv(r, x), &minv(r, y)))
}

fn all_elements(r: &FiniteRing) -> Vec<Mat2> {
    let els: Vec<Elem> = r.elements().collect();
    let mut out = Vec::new();
    for &a in &els {
        for &b in &els {
            for &c in &els {
                for &d in &els {
                    if r.sub(r.mul(a, d), r.mul(b, c)) == r.one() {
                        out.push(Mat2 { a, b, c, d });
                    }
                }
            }
        }
    }
    out
}

fn elementary(r: &FiniteRing) -> Vec<Mat2> {
    r.elements().flat_map(|x| [upper(r, x), lower(r, x)]).collect()
}

fn closure(r: &FiniteRing, gens: &[Mat2]) -> HashSet<Mat2> {
    let mut seen: HashSet<Mat2> = HashSet::from([ident(r)]);
    let mut queue = VecDeque::from([ident(r)]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = mmul(r, &x, g);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen
}

fn conjugates(r: &FiniteRing, all: &[Mat2], seeds: &[Mat2]) -> Vec<Mat2> {
    let set: HashSet<Mat2> = seeds
        .iter()
        .flat_map(|s| all.iter().map(move |g| conj(r, s, g)))
        .collect();
    let mut v: Vec<Mat2> = set.into_iter().collect();
    v.sort();
    v
}

fn normal_closure(r: &FiniteRing, all: &[Mat2], seeds: &[Mat2]) -> HashSet<Mat2> {
    closure(r, &conjugates(r, all, seeds))
}

/// `[G, G]` as the normal closure of commutators of elementary generators.
fn derived(r: &FiniteRing, all: &[Mat2]) -> HashSet<Mat2> {
    let gens = elementary(r);
    let comms: Vec<Mat2> = gens
        .iter()
        .flat_map(|x| gens.iter().map(move |y| commutator(r, x, y)))
        .collect();
    let comms: Vec<Mat2> = comms.into_iter().collect::<HashSet<_>>().into_iter().collect();
    normal_closure(r, all, &comms)
}

/// Diameter of `G` under the conjugation-invariant word norm of `t`; `None` if `t` does not
/// normally generate.
fn diameter(r: &FiniteRing, all: &[Mat2], t: &[Mat2]) -> Option<u32> {
    let mut seeds: Vec<Mat2> = t.to_vec();
    seeds.extend(t.iter().map(|x| minv(r, x)));
    let steps = conjugates(r, all, &seeds);
    let mut dist: HashMap<Mat2, u32> = HashMap::from([(ident(r), 0)]);
    let mut queue = VecDeque::from([ident(r)]);
    while let Some(x) = queue.pop_front() {
        let d = dist[&x];
        for s in &steps {
            let y = mmul(r, &x, s);
            if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(y) {
                e.insert(d + 1);
                queue.push_back(y);
            }
        }
    }
    (dist.len() == all.len()).then(|| *dist.values().max().unwrap())
}

/// `Δ_k` by scanning every set of at most `k` non-identity elements.
fn delta_oracle(r: &FiniteRing, k: usize) -> DeltaValue {
    let all = all_elements(r);
    let id = ident(r);
    let rest: Vec<Mat2> = all.iter().copied().filter(|x| *x != id).collect();
    let mut best: Option<u32> = None;
    let mut consider = |t: &[Mat2]| {
        if let Some(d) = diameter(r, &all, t) {
            best = Some(best.map_or(d, |b| b.max(d)));
        }
    };
    for i in 0..rest.len() {
        consider(&[rest[i]]);
        if k >= 2 {
            for j in i + 1..rest.len() {
                consider(&[rest[i], rest[j]]);
            }
        }
    }
    assert!(k <= 2, "oracle handles k <= 2");
    best.map_or(DeltaValue::MinusInfinity, DeltaValue::Finite)
}

/// The ideal generated by `gens`, as an explicit set.
fn ideal_set(r: &FiniteRing, gens: &[Elem]) -> HashSet<Elem> {
    let seeds: Vec<Elem> = gens
        .iter()
        .flat_map(|&y| r.elements().map(move |x| r.mul(x, y)))
        .collect();
    let mut set: HashSet<Elem> = HashSet::from([r.zero()]);
    let mut queue: VecDeque<Elem> = VecDeque::from([r.zero()]);
    while let Some(x) = queue.pop_front() {
        for &s in &seeds {
            let y = r.add(x, s);
            if set.insert(y) {
                queue.push_back(y);
            }
        }
    }
    set
}

fn level_generators(r: &FiniteRing, t: &[Mat2]) -> Vec<Elem> {
    t.iter().flat_map(|m| [r.sub(m.a, m.d), m.b, m.c]).collect()
}

#[test]
fn criterion_01_group_orders() {
    let start = Instant::now();
    let mut f = Vec::new();
    let cases: [(&str, Toy, usize); 7] = [
        ("F2", Toy::integers_mod(2), 6),
        ("F3", Toy::integers_mod(3), 24),
        ("F4", Toy::f2_quadratic(1, 1), 60),
        ("Z/4", Toy::integers_mod(4), 48),
        ("F2[T]/(T^2)", Toy::f2_quadratic(0, 0), 48),
        ("Z/9", Toy::integers_mod(9), 648),
        ("Z/12", Toy::integers_mod(12), 1152),
    ];
    for (spec, toy, stated) in cases {
        let oracle = toy.sl2_count();
        check(&mut f, &format!("oracle |SL2({spec})|"), stated, oracle);
        let g = GroupTable::enumerate(&ring(spec)).unwrap();
        check(&mut f, &format!("library |SL2({spec})|"), oracle, g.elements().len());
    }
    report(1, "group orders", start, 5, f);
}

#[test]
fn criterion_02_abelianizations() {
    let start = Instant::now();
    let mut f = Vec::new();
    let cases: [(&str, Vec<u64>); 8] = [
        ("F2", vec![2]),
        ("F3", vec![3]),
        ("Z/4", vec![4]),
        ("F2[T]/(T^2)", vec![2, 2]),
        ("Z/12", vec![12]),
        ("F4", vec![]),
        ("F5", vec![]),
        ("Z/25", vec![]),
    ];
    for (spec, stated) in cases {
        let r = ring(spec);
        let all = all_elements(&r);
        check(
            &mut f,
            &format!("elementary matrices generate SL2({spec})"),
            all.len(),
            closure(&r, &elementary(&r)).len(),
        );
        let quotient = all.len() / derived(&r, &all).len();
        check(
            &mut f,
            &format!("|SL2({spec})^ab| by brute force"),
            stated.iter().product::<u64>() as usize,
            quotient,
        );
        let g = GroupTable::enumerate(&r).unwrap();
        check(
            &mut f,
            &format!("invariant factors of SL2({spec})"),
            stated,
            sl2lab::group::abelianization(&g).factors,
        );
    }
    report(2, "abelianizations", start, 60, f);
}

fn hom_multiplicative(h: &AbelianHom) -> bool {
    let r = h.group.ring();
    let moduli = h.target.moduli().to_vec();
    let images: HashMap<Mat2, Vec<u64>> = h.group.elements().iter().map(|m| (*m, h.image(m).unwrap())).collect();
    h.group.elements().iter().all(|x| {
        h.group.elements().iter().all(|y| {
            let xy = &images[&mmul(r, x, y)];
            xy.iter()
                .zip(&images[x])
                .zip(&images[y])
                .zip(&moduli)
                .all(|(((s, a), b), m)| *s == (a + b) % m)
        })
    })
}

fn hom_suite(f: &mut Vec<String>, h: &AbelianHom) {
    let r = h.group.ring();
    let name = h.name;
    if !hom_multiplicative(h) {
        f.push(format!("{name} is not multiplicative"));
    }
    let order: u64 = h.target.moduli().iter().product();
    let images: HashSet<Vec<u64>> = h.group.elements().iter().map(|m| h.image(m).unwrap()).collect();
    check(f, &format!("{name} image size"), order as usize, images.len());
    let kernel: HashSet<Mat2> = h
        .group
        .elements()
        .iter()
        .copied()
        .filter(|m| h.image(m).unwrap().iter().all(|&v| v == 0))
        .collect();
    let all = all_elements(r);
    if kernel != derived(r, &all) {
        f.push(format!("{name} kernel differs from the derived subgroup"));
    }
}

#[test]
fn criterion_03_homomorphisms() {
    let start = Instant::now();
    let mut f = Vec::new();
    let r = ring("F2[T]/(T^2)");
    let q = q_hom(&r).unwrap();
    check(&mut f, "q domain", 48, q.group.elements().len());
    if !hom_multiplicative(&q) {
        f.push("q is not multiplicative on all 48^2 pairs".into());
    }
    let hq = hq_hom(&r).unwrap();
    hom_suite(&mut f, &hq);
    check(&mut f, "hq(E12(1))", vec![1, 0], hq.image(&upper(&r, r.one())).unwrap());
    check(
        &mut f,
        "hq(E12(T))",
        vec![0, 1],
        hq.image(&upper(&r, el(&r, "T"))).unwrap(),
    );
    let z4 = ring("Z/4");
    hom_suite(&mut f, &z4_hom(&z4).unwrap());
    let f3 = ring("F3");
    hom_suite(&mut f, &f3_hom(&f3).unwrap());
    report(3, "homomorphism suite", start, 5, f);
}

#[test]
fn criterion_04_semidirect_structure() {
    let start = Instant::now();
    let mut f = Vec::new();
    let r = ring("F2[T]/(T^2)");
    let all = all_elements(&r);
    let t = el(&r, "T");
    let in_t = |x: Elem| x == r.zero() || x == t;
    let kernel: Vec<Mat2> = all
        .iter()
        .copied()
        .filter(|m| in_t(r.sub(m.a, r.one())) && in_t(m.b) && in_t(m.c) && in_t(r.sub(m.d, r.one())))
        .collect();
    check(&mut f, "kernel order", 8, kernel.len());
    let elementary_abelian = kernel
        .iter()
        .all(|x| mmul(&r, x, x) == ident(&r) && kernel.iter().all(|y| mmul(&r, x, y) == mmul(&r, y, x)));
    check(&mut f, "kernel elementary abelian", true, elementary_abelian);
    let bits = |x: Elem| x == r.zero() || x == r.one();
    let complement: Vec<Mat2> = all
        .iter()
        .copied()
        .filter(|m| bits(m.a) && bits(m.b) && bits(m.c) && bits(m.d))
        .collect();
    check(&mut f, "complement order", 6, complement.len());
    check(
        &mut f,
        "complement closed",
        complement.len(),
        closure(&r, &complement).len(),
    );
    let meet: Vec<&Mat2> = kernel.iter().filter(|x| complement.contains(x)).collect();
    check(&mut f, "kernel meets complement", 1, meet.len());
    let mut joint = kernel.clone();
    joint.extend(&complement);
    check(
        &mut f,
        "kernel and complement generate",
        all.len(),
        closure(&r, &joint).len(),
    );
    let g = GroupTable::enumerate(&r).unwrap();
    let rep = split_extension_check(&g, &r.maximal_ideals()[0], &[r.zero(), r.one()]).unwrap();
    check(
        &mut f,
        "library report agrees",
        (8, true, 6, true),
        (
            rep.kernel_order,
            rep.kernel_elementary_abelian,
            rep.complement_order,
            rep.holds(),
        ),
    );
    report(4, "semidirect structure", start, 1, f);
}

#[test]
fn criterion_05_word_norm_values() {
    let start = Instant::now();
    let mut f = Vec::new();
    let cases: [(&str, usize, DeltaValue); 3] = [
        ("F2", 1, DeltaValue::Finite(2)),
        ("F3", 1, DeltaValue::Finite(2)),
        ("F2[T]/(T^2)", 1, DeltaValue::MinusInfinity),
    ];
    for (spec, k, stated) in cases {
        let r = ring(spec);
        let oracle = delta_oracle(&r, k);
        let library = delta_k(&GroupTable::enumerate(&r).unwrap(), k, None).unwrap().value;
        check(
            &mut f,
            &format!("library vs exhaustive oracle, Delta_{k}(SL2({spec}))"),
            oracle,
            library,
        );
        check(&mut f, &format!("stated Delta_{k}(SL2({spec}))"), stated, library);
    }
    let r = ring("F2[T]/(T^2)");
    let oracle = delta_oracle(&r, 2);
    let rep = delta_k(&GroupTable::enumerate(&r).unwrap(), 2, None).unwrap();
    check(
        &mut f,
        "library vs exhaustive oracle, Delta_2(SL2(F2[T]/(T^2)))",
        oracle,
        rep.value,
    );
    check(&mut f, "Delta_2 search exhaustive", false, rep.truncated);
    if !matches!(rep.value, DeltaValue::Finite(v) if v >= 3) {
        f.push(format!("Delta_2(SL2(F2[T]/(T^2))) >= 3: got {:?}", rep.value));
    }
    let mut out = std::io::stdout().lock();
    writeln!(out, "         reported Delta_2(SL2(F2[T]/(T^2))) = {:?}", rep.value).unwrap();
    drop(out);
    report(5, "word-norm values", start, 30, f);
}

#[test]
fn criterion_06_sandwich() {
    let start = Instant::now();
    let mut f = Vec::new();
    let r = ring("Z/9");
    let all = all_elements(&r);
    let g = GroupTable::enumerate(&r).unwrap();
    let mut seen: HashSet<Mat2> = HashSet::new();
    let mut reps = Vec::new();
    for m in &all {
        if !seen.contains(m) {
            let class = conjugates(&r, &all, &[*m]);
            seen.extend(class);
            reps.push(*m);
        }
    }
    let elementary_set = elementary(&r);
    let mut tested = 0;
    for a in reps {
        let label = a.format(&r);
        let scalar = a.b == r.zero() && a.c == r.zero() && a.a == a.d;
        let lib = sandwich_check(&g, &a);
        if scalar {
            check(
                &mut f,
                &format!("{label} has zero level"),
                Some(Error::LevelZero),
                lib.err(),
            );
            continue;
        }
        tested += 1;
        let rep = lib.unwrap();
        let n = normal_closure(&r, &all, &[a]);
        check(&mut f, &format!("|N| for {label}"), n.len(), rep.n_order);
        let n_lib = sl2lab::group::normal_closure(&g, &[g.index_of(&a).unwrap()]);
        let gn: Vec<Mat2> = g_of_n(&g, &n_lib)
            .unwrap()
            .elements()
            .iter()
            .map(|&i| g.element(i))
            .collect();
        if !n.iter().all(|x| gn.contains(x)) {
            f.push(format!("N not inside G(N) for {label}"));
        }
        let left = elementary_set
            .iter()
            .all(|e| gn.iter().all(|x| n.contains(&commutator(&r, e, x))));
        if !left {
            f.push(format!("[E(2,R), G(N)] not inside N for {label}"));
        }
        let rho_values: Vec<Elem> = n
            .iter()
            .map(|m| r.add(r.sub(r.mul(m.a, m.a), r.one()), r.mul(m.a, m.b)))
            .collect();
        let p = r.additive_closure(&rho_values);
        let radix = p.members().iter().all(|&x| {
            r.elements().all(|c| {
                let c2 = r.mul(c, c);
                let x2 = r.mul(x, x);
                let first = r.add(r.mul(r.sub(r.mul(c2, c), c), x2), r.mul(c2, x));
                p.contains(first) && p.contains(r.mul(c, r.mul(x2, x)))
            })
        });
        if !radix || !is_radix(&r, &p) {
            f.push(format!("rho(N) is not a radix for {label}"));
        }
        let n_vec: Vec<Mat2> = n.iter().copied().collect();
        let level = ideal_set(&r, &level_generators(&r, &n_vec));
        let cor = level.iter().all(|&x| {
            let x3 = r.mul(x, r.mul(x, x));
            r.elements().all(|b| n.contains(&selfrep(&r, r.mul(x3, b))))
        });
        if !cor {
            f.push(format!("C(x^3 b) not in N for {label}"));
        }
        if !rep.passed() {
            f.push(format!("library report fails for {label}: {rep:?}"));
        }
    }
    if tested == 0 {
        f.push("no class representative with nonzero level".into());
    }
    report(6, "sandwich verification", start, 600, f);
}

fn random_set_agreement(spec: &str, seed: u64, samples: usize) -> (usize, usize) {
    use rand::{Rng, SeedableRng};
    let r = ring(spec);
    let all = all_elements(&r);
    let maximal = r.maximal_ideals();
    let quotients: Vec<_> = maximal.iter().map(|m| r.quotient_ring(m).unwrap()).collect();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut agree = 0;
    let mut pi_empty_count = 0;
    for _ in 0..samples {
        let size = rng.gen_range(1..=3);
        let t: Vec<Mat2> = (0..size).map(|_| all[rng.gen_range(0..all.len())]).collect();
        let whole = ideal_set(&r, &level_generators(&r, &t)).contains(&r.one());
        let oracle_pi_empty = quotients.iter().all(|(q, map)| {
            !t.iter().all(|m| {
                let (a, b, c, d) = (map[m.a.index()], map[m.b.index()], map[m.c.index()], map[m.d.index()]);
                b == q.zero() && c == q.zero() && a == d
            })
        });
        let library_pi_empty = pi_set(&r, &t).is_empty();
        let library_whole = level_sum(&r, &t).is_whole();
        if oracle_pi_empty == whole && library_pi_empty == oracle_pi_empty && library_whole == whole {
            agree += 1;
        }
        pi_empty_count += usize::from(oracle_pi_empty);
    }
    (agree, pi_empty_count)
}

#[test]
fn criterion_07_identity_suites() {
    let start = Instant::now();
    let mut f = Vec::new();
    for spec in ["Z/9", "F3"] {
        let r = ring(spec);
        for x in r.elements() {
            for y in r.elements() {
                let lhs = mmul(&r, &minv(&r, &selfrep(&r, x)), &selfrep(&r, y));
                let rhs = conj(&r, &selfrep(&r, r.sub(y, x)), &upper(&r, x));
                if lhs != rhs || !selfrep_shift_check(&r, x, y) {
                    f.push(format!("selfrep shift fails over {spec} at ({x:?}, {y:?})"));
                }
            }
        }
    }
    let rings = ["F2", "F3", "F4", "Z/4", "F2[T]/(T^2)", "Z/9", "Z/12"];
    for spec in rings {
        let r = ring(spec);
        for u in r.elements().filter(|&u| r.is_unit(u)) {
            let uinv = r.inv(u).unwrap();
            let h = Mat2 {
                a: u,
                b: r.zero(),
                c: r.zero(),
                d: uinv,
            };
            for a in r.elements() {
                let lhs = commutator(&r, &h, &upper(&r, a));
                let rhs = upper(&r, r.mul(r.sub(r.mul(u, u), r.one()), a));
                if lhs != rhs || h.comm(&Mat2::e12(&r, a), &r) != rhs {
                    f.push(format!("comm(h(u), E12(a)) fails over {spec}"));
                }
            }
        }
    }
    const SAMPLES: usize = 1000;
    for (i, spec) in rings.iter().enumerate() {
        let (agree, _) = random_set_agreement(spec, 7_000 + i as u64, SAMPLES);
        check(&mut f, &format!("Pi(T) empty iff l(T) = R over {spec}"), SAMPLES, agree);
    }
    report(7, "identity suites", start, 60, f);
}

fn square_free(d: i64) -> bool {
    (2..=d).take_while(|p| p * p <= d).all(|p| d % (p * p) != 0)
}

#[test]
fn criterion_08_quadratic_table() {
    let start = Instant::now();
    let mut f = Vec::new();
    for d in (2..=500).filter(|&d| square_free(d)) {
        let case = if d % 8 == 5 && d % 3 == 2 {
            0
        } else if d % 8 == 5 && d % 3 == 0 {
            1
        } else {
            2
        };
        check(&mut f, &format!("v({d})"), Some(case), v_profile(d).ok().map(|p| p.v));
    }
    for (d, v) in [(5, 0), (21, 1), (13, 2), (2, 2)] {
        check(&mut f, &format!("spot v({d})"), Some(v), v_profile(d).ok().map(|p| p.v));
    }
    check(
        &mut f,
        "delta_verdict(13, 1)",
        Some(DeltaVerdict::MinusInfinity),
        delta_verdict(13, 1).ok(),
    );
    report(8, "quadratic table", start, 1, f);
}

#[test]
fn criterion_09_generating_sets() {
    let start = Instant::now();
    let mut f = Vec::new();
    for (spec, k) in [("Z/12", 1), ("F2[T]/(T^2) x F3", 2)] {
        let r = ring(spec);
        let all = all_elements(&r);
        match construct_generators(&r, k) {
            Ok(t) => {
                check(&mut f, &format!("|T| for {spec}"), true, t.len() <= k);
                check(
                    &mut f,
                    &format!("normal closure of T over {spec}"),
                    all.len(),
                    normal_closure(&r, &all, &t).len(),
                );
            }
            Err(e) => f.push(format!("construct_generators({spec}, {k}) failed: {e}")),
        }
    }
    let got = construct_generators(&ring("F2[T]/(T^2)"), 1).err();
    check(
        &mut f,
        "k = 1 on F2[T]/(T^2)",
        Some(Error::RankObstruction { k: 1, v: 2 }),
        got,
    );
    report(9, "generating-set demo", start, 30, f);
}

#[test]
fn criterion_10_determinism() {
    let start = Instant::now();
    let mut f = Vec::new();
    let bin = env!("CARGO_BIN_EXE_sl2lab");
    let mut outputs = Vec::new();
    for jobs in ["1", "2", "8", "1", "8"] {
        let out = Command::new(bin)
            .args(["verify", "--suite", "full", "--format", "json", "--jobs", jobs])
            .env_remove("SL2LAB_CONFIG")
            .output()
            .unwrap();
        if !matches!(out.status.code(), Some(0 | 1)) {
            f.push(format!("verify --jobs {jobs} exited with {:?}", out.status.code()));
        }
        outputs.push((jobs, out.stdout));
    }
    for (jobs, out) in &outputs[1..] {
        if *out != outputs[0].1 {
            f.push(format!("output with --jobs {jobs} differs from --jobs 1"));
        }
    }
    if outputs[0].1.is_empty() {
        f.push("empty output".into());
    }
    report(10, "determinism", start, 120, f);
}
