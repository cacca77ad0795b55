//! Acceptance suite. Runs every criterion at its stated tolerance and prints
//! one PASS/FAIL line per criterion; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use syzkit::enumerative::{
    decompose_intervals, enumerate_admissible, is_admissible, open_gw, Condition, Conditions,
};
use syzkit::lattice::{
    build_cy_fan, classify, compactify, h_class_targets, self_intersection, solve_curve_class,
    IntMatrix2,
};
use syzkit::mirror::{
    inverse_mirror_map, mirror_map, verify_identity, verify_identity_with, KahlerPoint,
};
use syzkit::periods::{
    hk_period_check, lagrangian_residual, lagrangian_residual_with, period_quadrature, CycleShape,
    CycleSpec, QuadratureParams,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn random_q(rng: &mut ChaCha8Rng, m: usize) -> Vec<f64> {
    (1..m).map(|_| rng.gen_range(0.1..0.9)).collect()
}

fn exact_identity() -> Outcome {
    let start = Instant::now();
    let mut terms = 0;
    for m in 1..=8 {
        let r = verify_identity(m).map_err(|e| e.to_string())?;
        if let Some(mm) = r.mismatch {
            return Err(format!("m={m}: {mm}"));
        }
        terms += r.terms;
    }
    let elapsed = start.elapsed();
    check(
        elapsed < Duration::from_secs(5),
        format!("took {elapsed:?}"),
    )?;
    Ok(format!("m=1..8, {terms} terms equal, {elapsed:.2?}"))
}

fn invariant_values() -> Outcome {
    let stated: [(usize, usize, &[i32], u8); 4] = [
        (2, 1, &[1], 1),
        (3, 1, &[0, 1], 0),
        (3, 1, &[0, 0], 1),
        (5, 2, &[0; 4], 1),
    ];
    for (m, l, a, want) in stated {
        let got = open_gw(m, l, a).map_err(|e| e.to_string())?;
        check(got == want, format!("open_gw({m},{l},{a:?}) = {got}"))?;
    }
    check(
        is_admissible(&[1, 1, 2, 1], 3, 5).unwrap(),
        "(1,1,2,1) center 3",
    )?;
    check(
        !is_admissible(&[0, 2, 0], 2, 4).unwrap(),
        "(0,2,0) center 2",
    )?;

    let start = Instant::now();
    let mut checked = 0usize;
    for m in 1..=9usize {
        let bounds: Vec<i32> = (1..m).map(|k| k.min(m - k) as i32 + 1).collect();
        for l in 1..=m {
            let mut s = vec![0i32; m - 1];
            loop {
                let a = is_admissible(&s, l, m).unwrap();
                let d = decompose_intervals(&s, l, m).is_ok();
                check(
                    a == d,
                    format!("m={m} l={l} s={s:?}: admissible={a} greedy={d}"),
                )?;
                checked += 1;
                // odometer over the box
                let mut k = 0;
                while k < s.len() && s[k] == bounds[k] {
                    s[k] = 0;
                    k += 1;
                }
                if k == s.len() {
                    break;
                }
                s[k] += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    check(
        elapsed < Duration::from_secs(10),
        format!("took {elapsed:?}"),
    )?;
    Ok(format!(
        "stated values ok, {checked} box points agree, {elapsed:.2?}"
    ))
}

fn counting() -> Outcome {
    for m in 1..=10 {
        for l in 1..=m {
            let n = enumerate_admissible(m, l).map_err(|e| e.to_string())?.len();
            check(
                n == binomial(m, l),
                format!("m={m} l={l}: {n} != C({m},{l})"),
            )?;
        }
    }
    Ok("|enumerate(m,l)| = C(m,l) for m <= 10".into())
}

/// 50 sampled Kähler points, m cycling through 2..=5.
fn sweep() -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    (0..50).map(|k| random_q(&mut rng, 2 + k % 4)).collect()
}

fn period_identity() -> Outcome {
    let start = Instant::now();
    let params = QuadratureParams::default();
    let mut worst = 0.0f64;
    let mut cycles = 0;
    for q in sweep() {
        for l in 1..=q.len() {
            let spec = CycleSpec::new(&q, l).map_err(|e| e.to_string())?;
            let r = period_quadrature(&spec, params).map_err(|e| e.to_string())?;
            let err = (r.value - Complex64::new(q[l - 1].ln(), 0.0)).norm();
            worst = worst.max(err);
            cycles += 1;
            check(err < 1e-6, format!("q={q:?} l={l}: error {err:e}"))?;
        }
    }
    let elapsed = start.elapsed();
    check(
        elapsed < Duration::from_secs(30),
        format!("took {elapsed:?}"),
    )?;
    Ok(format!(
        "{cycles} cycles, max error {worst:.1e}, {elapsed:.2?}"
    ))
}

fn special_lagrangian() -> Outcome {
    let params = QuadratureParams::default();
    let (mut worst_true, mut worst_im, mut least_control) = (0.0f64, 0.0f64, f64::INFINITY);
    for q in sweep() {
        for l in 1..=q.len() {
            let spec = CycleSpec::new(&q, l).map_err(|e| e.to_string())?;
            let r = lagrangian_residual(&spec, params).map_err(|e| e.to_string())?;
            let c = lagrangian_residual_with(&spec, CycleShape::Twist(0.1), params)
                .map_err(|e| e.to_string())?;
            worst_true = worst_true.max(r.symplectic);
            worst_im = worst_im.max(r.imaginary_volume);
            least_control = least_control.min(c.symplectic);
        }
    }
    check(
        worst_true < 1e-6,
        format!("true cycle residual {worst_true:e}"),
    )?;
    check(worst_im < 1e-6, format!("Im volume density {worst_im:e}"))?;
    check(
        least_control > 1e-3,
        format!("control residual {least_control:e}"),
    )?;
    Ok(format!(
        "true max {worst_true:.1e}, Im max {worst_im:.1e}, control min {least_control:.1e}"
    ))
}

fn hyperkahler() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let params = QuadratureParams {
        tolerance: 1e-5,
        ..Default::default()
    };
    let mut worst = 0.0f64;
    for k in 0..20 {
        let q = random_q(&mut rng, 2 + k % 4);
        let r =
            hk_period_check(&KahlerPoint::real(&q).unwrap(), params).map_err(|e| e.to_string())?;
        worst = worst.max(r.max_deviation);
        check(r.pass, format!("q={q:?}: deviation {:e}", r.max_deviation))?;
    }
    Ok(format!("20 points, m <= 5, max deviation {worst:.1e}"))
}

fn roundtrip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut worst = 0.0f64;
    for k in 0..100 {
        let q = random_q(&mut rng, 2 + k % 5);
        let c = mirror_map(&KahlerPoint::real(&q).unwrap());
        let back = inverse_mirror_map(&c).map_err(|e| format!("q={q:?}: {e}"))?;
        for (a, &b) in back.values().iter().zip(&q) {
            let rel = (a - Complex64::new(b, 0.0)).norm() / b;
            worst = worst.max(rel);
            check(rel < 1e-10, format!("q={q:?}: relative error {rel:e}"))?;
        }
    }
    Ok(format!(
        "100 points, m <= 6, max relative error {worst:.1e}"
    ))
}

fn random_unimodular(rng: &mut ChaCha8Rng) -> IntMatrix2 {
    let mut a = IntMatrix2::identity();
    for _ in 0..rng.gen_range(1..6) {
        let k = rng.gen_range(-3i64..=3);
        let e = match rng.gen_range(0..3) {
            0 => IntMatrix2::new(1, k, 0, 1),
            1 => IntMatrix2::new(1, 0, k, 1),
            _ => IntMatrix2::new(0, 1, 1, 0),
        };
        a = e.mul(&a);
    }
    a
}

fn geometry() -> Outcome {
    let minus_two = BigInt::from(-2);
    for m in 0..=12i64 {
        let fan = build_cy_fan(m).map_err(|e| e.to_string())?;
        let c = classify(&fan).map_err(|e| e.to_string())?;
        check(c.m == m as usize, format!("classify(Σ_{m}).m = {}", c.m))?;
        if m >= 1 {
            check(
                c.transform == IntMatrix2::identity(),
                format!("Σ_{m} transform"),
            )?;
        }
        for i in 1..m as usize {
            let a = self_intersection(&fan, i).map_err(|e| e.to_string())?;
            check(a == minus_two, format!("Σ_{m}: D_{i}² = {a}"))?;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let m = rng.gen_range(1..=8i64);
        let a = random_unimodular(&mut rng);
        let fan = build_cy_fan(m)
            .unwrap()
            .transform(&a)
            .map_err(|e| e.to_string())?;
        let c = classify(&fan).map_err(|e| format!("m={m} A={a:?}: {e}"))?;
        check(
            c.m == m as usize,
            format!("transformed Σ_{m} classified as {}", c.m),
        )?;
        check(c.transform.is_unimodular(), "normalizer not unimodular")?;
        let back = fan.transform(&c.transform).map_err(|e| e.to_string())?;
        check(back == build_cy_fan(m).unwrap(), format!("A·fan != Σ_{m}"))?;
        for i in 1..m as usize {
            check(
                self_intersection(&fan, i).unwrap() == minus_two,
                "self-intersection moved",
            )?;
        }
    }

    for m in 2..=8i64 {
        for l in 1..m {
            let fan = compactify(m, l).map_err(|e| e.to_string())?;
            check(
                fan.is_complete() && fan.is_smooth(),
                format!("compactify({m},{l})"),
            )?;
            solve_curve_class(&fan, &h_class_targets(m as usize, l as usize))
                .map_err(|e| format!("h-class m={m} l={l}: {e}"))?;
        }
    }
    Ok("classify∘build, 50 transforms, D² = -2, compactifications ok".into())
}

fn mutation() -> Outcome {
    let mut found = Vec::new();
    for c in Condition::ALL {
        let rules = Conditions::ALL.without(c);
        let hit = (1..=4).find(|&m| {
            !verify_identity_with(m, rules)
                .map(|r| r.holds())
                .unwrap_or(false)
        });
        match hit {
            Some(m) => found.push(format!("({})@m={m}", c.number())),
            None => {
                return Err(format!(
                    "dropping condition ({}) goes undetected",
                    c.number()
                ))
            }
        }
    }
    Ok(format!(
        "every dropped condition detected: {}",
        found.join(" ")
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("exact identity", exact_identity),
        ("invariant values and oracle", invariant_values),
        ("admissible counts", counting),
        ("period identity", period_identity),
        ("special Lagrangian", special_lagrangian),
        ("hyper-Kähler periods", hyperkahler),
        ("mirror map roundtrip", roundtrip),
        ("geometry suite", geometry),
        ("mutation sensitivity", mutation),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("[PASS] {}. {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {}. {name}: {detail}", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
