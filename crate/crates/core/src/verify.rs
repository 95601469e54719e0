//! The acceptance suite as a library: ten criteria, each a list of labelled checks with
//! expected and actual values. Output contains no timings, so it is byte-stable.

use crate::finring::{parse_ring_spec, FiniteRing};
use crate::group::{abelianization, derived_subgroup, split_extension_check, GroupTable};
use crate::normlab::{construct_generators, delta_k, level_sum, pi_set, DeltaValue};
use crate::quadfields::{delta_verdict, is_square_free, v_profile, DeltaVerdict};
use crate::sandwich::{f3_hom, hq_hom, q_hom, sandwich_check, z4_hom, AbelianHom};
use crate::sl2::{parse_matrix, selfrep_shift_check, Mat2};
use crate::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// Skips Z/25 and samples 200 random sets per ring in criterion 7.
    Fast,
    Full,
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "fast" => Ok(Suite::Fast),
            "full" => Ok(Suite::Full),
            _ => Err(Error::Parse(format!("unknown suite {s:?}, expected fast or full"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub label: String,
    pub expected: Value,
    pub actual: Value,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub passed: bool,
    pub criteria: Vec<CriterionResult>,
}

pub const CRITERIA: [(u32, &str); 10] = [
    (1, "group orders"),
    (2, "abelianizations"),
    (3, "homomorphism suite"),
    (4, "semidirect structure"),
    (5, "word-norm values"),
    (6, "sandwich verification"),
    (7, "identity suites"),
    (8, "quadratic table"),
    (9, "generating-set demo"),
    (10, "determinism"),
];

/// Rings used by the exhaustive identity checks.
pub const TEST_RINGS: [&str; 7] = ["F2", "F3", "F4", "Z/4", "F2[T]/(T^2)", "Z/9", "Z/12"];

struct Checks(Vec<Check>);

impl Checks {
    fn new() -> Self {
        Checks(Vec::new())
    }

    fn eq<T: Serialize + PartialEq>(&mut self, label: impl Into<String>, expected: T, actual: T) {
        let passed = expected == actual;
        self.push(label, json!(expected), json!(actual), passed);
    }

    fn holds(&mut self, label: impl Into<String>, actual: bool) {
        self.eq(label, true, actual);
    }

    fn push(&mut self, label: impl Into<String>, expected: Value, actual: Value, passed: bool) {
        self.0.push(Check {
            label: label.into(),
            expected,
            actual,
            passed,
        });
    }

    fn error(&mut self, label: impl Into<String>, e: &Error) {
        self.push(label, json!("ok"), json!(format!("error: {e}")), false);
    }
}

fn ring(spec: &str) -> FiniteRing {
    parse_ring_spec(spec).expect("built-in ring specs parse")
}

fn group(spec: &str) -> GroupTable {
    GroupTable::enumerate(&ring(spec)).expect("built-in rings are under the caps")
}

fn determinant_scan(r: &FiniteRing) -> usize {
    let els: Vec<_> = r.elements().collect();
    let mut count = 0;
    for &a in &els {
        for &b in &els {
            for &c in &els {
                for &d in &els {
                    if r.sub(r.mul(a, d), r.mul(b, c)) == r.one() {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

fn criterion_1(c: &mut Checks) {
    for (spec, order) in [
        ("F2", 6),
        ("F3", 24),
        ("F4", 60),
        ("Z/4", 48),
        ("F2[T]/(T^2)", 48),
        ("Z/9", 648),
        ("Z/12", 1152),
    ] {
        let r = ring(spec);
        let scan = determinant_scan(&r);
        let enumerated = GroupTable::enumerate(&r).map(|g| g.elements().len());
        c.eq(format!("|SL2({spec})| by determinant scan"), order, scan);
        match enumerated {
            Ok(n) => c.eq(format!("|SL2({spec})| by enumeration"), order, n),
            Err(e) => c.error(format!("|SL2({spec})| by enumeration"), &e),
        }
    }
}

fn criterion_2(c: &mut Checks, suite: Suite) {
    let mut cases: Vec<(&str, Vec<u64>)> = vec![
        ("F2", vec![2]),
        ("F3", vec![3]),
        ("Z/4", vec![4]),
        ("F2[T]/(T^2)", vec![2, 2]),
        ("Z/12", vec![12]),
        ("F4", vec![]),
        ("F5", vec![]),
    ];
    if suite == Suite::Full {
        cases.push(("Z/25", vec![]));
    }
    for (spec, factors) in cases {
        c.eq(format!("SL2({spec})^ab"), factors, abelianization(&group(spec)).factors);
    }
}

fn hom_checks(c: &mut Checks, h: &AbelianHom, target_order: usize) {
    let name = h.name;
    c.holds(format!("{name} multiplicative"), h.is_multiplicative());
    c.eq(format!("{name} image size"), target_order, h.hom.image_size());
    let derived = derived_subgroup(&h.group);
    c.eq(
        format!("{name} kernel = derived subgroup"),
        derived.elements(),
        h.kernel().elements(),
    );
}

fn image(c: &mut Checks, h: &AbelianHom, text: &str, expected: Vec<u64>) {
    let r = h.group.ring();
    let label = format!("{}({text})", h.name);
    match parse_matrix(r, text).and_then(|m| h.image(&m)) {
        Ok(v) => c.eq(label, expected, v),
        Err(e) => c.error(label, &e),
    }
}

fn criterion_3(c: &mut Checks) {
    let r = ring("F2[T]/(T^2)");
    let q = q_hom(&r).expect("q is defined on F2[T]/(T^2)");
    c.eq("q domain size", 48, q.group.elements().len());
    c.holds("q multiplicative on all pairs", q.is_multiplicative());
    let hq = hq_hom(&r).expect("hq is defined on F2[T]/(T^2)");
    hom_checks(c, &hq, 4);
    image(c, &hq, "E12(1)", vec![1, 0]);
    image(c, &hq, "E12(T)", vec![0, 1]);
    let z4 = z4_hom(&ring("Z/4")).expect("z4 is defined on Z/4");
    hom_checks(c, &z4, 4);
    image(c, &z4, "E12(1)", vec![1]);
    let f3 = f3_hom(&ring("F3")).expect("f3 is defined on F3");
    hom_checks(c, &f3, 3);
    image(c, &f3, "E12(1)", vec![1]);
}

fn criterion_4(c: &mut Checks) {
    let g = group("F2[T]/(T^2)");
    let r = g.ring().clone();
    match split_extension_check(&g, &r.maximal_ideals()[0], &[r.zero(), r.one()]) {
        Ok(rep) => {
            c.eq("kernel order", 8, rep.kernel_order);
            c.holds("kernel elementary abelian", rep.kernel_elementary_abelian);
            c.eq("complement order", 6, rep.complement_order);
            c.holds("kernel meets complement trivially", rep.intersection_trivial);
            c.holds("kernel and complement generate", rep.jointly_generate);
        }
        Err(e) => c.error("split extension", &e),
    }
}

fn delta(c: &mut Checks, spec: &str, k: usize, expected: DeltaValue) {
    let label = format!("Delta_{k}(SL2({spec}))");
    match delta_k(&group(spec), k, None) {
        Ok(rep) => c.eq(label, expected, rep.value),
        Err(e) => c.error(label, &e),
    }
}

fn criterion_5(c: &mut Checks) {
    delta(c, "F2", 1, DeltaValue::Finite(2));
    delta(c, "F3", 1, DeltaValue::Finite(2));
    delta(c, "F2[T]/(T^2)", 1, DeltaValue::MinusInfinity);
    let label = "Delta_2(SL2(F2[T]/(T^2))) >= 3";
    match delta_k(&group("F2[T]/(T^2)"), 2, None) {
        Ok(rep) => {
            let ok = matches!(rep.value, DeltaValue::Finite(v) if v >= 3) && !rep.truncated;
            c.push(label, json!(">= 3"), json!(rep.value), ok);
        }
        Err(e) => c.error(label, &e),
    }
}

fn criterion_6(c: &mut Checks) {
    let g = group("Z/9");
    let reps: Vec<u32> = g.classes().classes.iter().map(|cl| cl[0]).collect();
    let mut skipped = 0;
    for i in reps {
        let a = g.element(i);
        let label = format!("sandwich {}", a.format(g.ring()));
        match sandwich_check(&g, &a) {
            Ok(rep) => {
                let actual = json!({
                    "chain_left": rep.chain_left_ok,
                    "chain_right": rep.chain_right_ok,
                    "rho_is_radix": rep.rho_is_radix,
                    "selfrep_in_n": rep.selfrep_in_n,
                });
                c.push(label, json!("all true"), actual, rep.passed());
            }
            Err(Error::LevelZero) => skipped += 1,
            Err(e) => c.error(label, &e),
        }
    }
    c.eq("class representatives with zero level", 2, skipped);
}

fn criterion_7(c: &mut Checks, suite: Suite) {
    for spec in ["Z/9", "F3"] {
        let r = ring(spec);
        let ok = r
            .elements()
            .all(|x| r.elements().all(|y| selfrep_shift_check(&r, x, y)));
        c.holds(format!("selfrep shift identity over {spec}"), ok);
    }
    for spec in TEST_RINGS {
        let r = ring(spec);
        let ok = r.units().into_iter().all(|u| {
            let h = Mat2::h(&r, u).expect("u is a unit");
            let u2m1 = r.sub(r.mul(u, u), r.one());
            r.elements()
                .all(|a| h.comm(&Mat2::e12(&r, a), &r) == Mat2::e12(&r, r.mul(u2m1, a)))
        });
        c.holds(format!("comm(h(u), E12(a)) = E12((u^2-1)a) over {spec}"), ok);
    }
    let samples = match suite {
        Suite::Fast => 200,
        Suite::Full => 1000,
    };
    for (n, spec) in TEST_RINGS.iter().enumerate() {
        let g = group(spec);
        let r = g.ring();
        let mut rng = ChaCha8Rng::seed_from_u64(512 + n as u64);
        let mut agree = 0;
        for _ in 0..samples {
            let size = rng.gen_range(1..=3);
            let t: Vec<Mat2> = (0..size)
                .map(|_| g.element(rng.gen_range(0..g.elements().len() as u32)))
                .collect();
            if pi_set(r, &t).is_empty() == level_sum(r, &t).is_whole() {
                agree += 1;
            }
        }
        c.eq(
            format!("Pi(T) empty iff l(T) = R over {spec}, {samples} random T"),
            samples,
            agree,
        );
    }
}

/// The case split computed from `D mod 8` and `D mod 3` alone.
fn v_case(d: i64) -> u32 {
    match (d % 8, d % 3) {
        (5, 2) => 0,
        (5, 0) => 1,
        _ => 2,
    }
}

fn criterion_8(c: &mut Checks) {
    let mut mismatches = Vec::new();
    let mut count = 0;
    for d in (2..=500).filter(|&d| is_square_free(d)) {
        count += 1;
        match v_profile(d) {
            Ok(rep) if rep.v == v_case(d) => {}
            _ => mismatches.push(d),
        }
    }
    c.eq(
        format!("v_profile agrees with the case split on {count} square-free D"),
        Vec::<i64>::new(),
        mismatches,
    );
    for (d, v) in [(5, 0), (21, 1), (13, 2), (2, 2)] {
        c.eq(format!("v({d})"), Some(v), v_profile(d).ok().map(|r| r.v));
    }
    c.eq(
        "delta_verdict(13, 1)",
        Some(DeltaVerdict::MinusInfinity),
        delta_verdict(13, 1).ok(),
    );
}

fn criterion_9(c: &mut Checks) {
    for (spec, k) in [("Z/12", 1), ("F2[T]/(T^2) x F3", 2)] {
        let label = format!("construct_generators({spec}, k = {k}) normally generates");
        let g = group(spec);
        match construct_generators(g.ring(), k) {
            Ok(set) => {
                let idx: Vec<u32> = set
                    .iter()
                    .map(|m| g.require(m).expect("generators lie in SL2"))
                    .collect();
                c.holds(label, crate::group::normal_closure(&g, &idx).is_whole());
            }
            Err(e) => c.error(label, &e),
        }
    }
    let got = construct_generators(&ring("F2[T]/(T^2)"), 1)
        .err()
        .map(|e| e.to_string());
    let expected = Error::RankObstruction { k: 1, v: 2 }.to_string();
    c.eq("construct_generators(F2[T]/(T^2), k = 1) refused", Some(expected), got);
}

fn run_checks(id: u32, suite: Suite) -> Vec<Check> {
    let mut c = Checks::new();
    match id {
        1 => criterion_1(&mut c),
        2 => criterion_2(&mut c, suite),
        3 => criterion_3(&mut c),
        4 => criterion_4(&mut c),
        5 => criterion_5(&mut c),
        6 => criterion_6(&mut c),
        7 => criterion_7(&mut c, suite),
        8 => criterion_8(&mut c),
        9 => criterion_9(&mut c),
        10 => criterion_10(&mut c, suite),
        _ => panic!("unknown criterion {id}"),
    }
    c.0
}

/// Reruns criteria 1-9 on a single worker and compares the JSON with the current pool.
fn criterion_10(c: &mut Checks, suite: Suite) {
    let ids: Vec<u32> = (1..=9).collect();
    let render =
        || serde_json::to_string(&ids.iter().map(|&i| criterion(i, suite)).collect::<Vec<_>>()).expect("serializable");
    let here = render();
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .expect("thread pool")
        .install(render);
    c.holds(
        "criteria 1-9 JSON identical on one worker and on the current pool",
        here == single,
    );
}

pub fn criterion(id: u32, suite: Suite) -> CriterionResult {
    let (_, name) = CRITERIA[(id - 1) as usize];
    let checks = run_checks(id, suite);
    CriterionResult {
        id,
        name,
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

pub fn run_suite(suite: Suite) -> VerifyReport {
    let criteria: Vec<CriterionResult> = CRITERIA.iter().map(|&(id, _)| criterion(id, suite)).collect();
    VerifyReport {
        suite,
        passed: criteria.iter().all(|c| c.passed),
        criteria,
    }
}

impl VerifyReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for cr in &self.criteria {
            out.push_str(&format!(
                "[{}] {:>2} {}\n",
                if cr.passed { "PASS" } else { "FAIL" },
                cr.id,
                cr.name
            ));
            for ch in cr.checks.iter().filter(|ch| !ch.passed) {
                out.push_str(&format!(
                    "       {}: expected {}, got {}\n",
                    ch.label, ch.expected, ch.actual
                ));
            }
        }
        let passed = self.criteria.iter().filter(|c| c.passed).count();
        out.push_str(&format!("{passed}/{} criteria passed\n", self.criteria.len()));
        out
    }
}
