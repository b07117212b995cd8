//! Acceptance run: one PASS/FAIL line per criterion.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tauknot_core::alexander::{
    conway_skein_oracle, determinant_of, state_sum_polynomial, symmetric_degree, torus_alexander,
};
use tauknot_core::corpus::{bundled_corpus, bundled_entry, CorpusEntry};
use tauknot_core::filtered::{trefoil_model, Generator};
use tauknot_core::laurent::LaurentPoly;
use tauknot_core::seifert::{seifert_matrix_oracle, seifert_signature};
use tauknot_core::signature::signature;
use tauknot_core::states::{
    bigrading, differential_admissible, enumerate_states, essential_states, KauffmanState,
};
use tauknot_core::tau::{
    certify, combine_connected_sum, combine_mirror, genus_lower_bound, skein_propagate,
    skein_sequence, tau_alternating, tau_explicit_complex, tau_from_unknotting, tau_unique_state,
    unknotting_lower_bound, Evidence, Method, SkeinDirection, TauCertificate,
};
use tauknot_core::DecoratedDiagram;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn entry(name: &str) -> Result<(CorpusEntry, DecoratedDiagram), String> {
    let e = bundled_entry(name).ok_or(format!("{name} missing from the corpus"))?;
    let d = e.decorated().map_err(|x| x.to_string())?;
    Ok((e, d))
}

fn m0_states(d: &DecoratedDiagram) -> Vec<(KauffmanState, i32)> {
    essential_states(d)
        .into_iter()
        .filter_map(|x| {
            let g = bigrading(d, &x);
            (g.m == 0).then_some((x, g.a))
        })
        .collect()
}

fn unique_state_knot(name: &str, expected: i32) -> Outcome {
    let (e, d) = entry(name)?;
    let m0 = m0_states(&d);
    ensure!(m0.len() == 1, "{} essential states in M = 0", m0.len());
    ensure!(m0[0].1 == expected, "the M = 0 state has A = {}", m0[0].1);
    let c = tau_unique_state(&d).ok_or("unique-state rule does not apply")?;
    ensure!(c.value() == Some(expected), "certificate {c}");
    let full = certify(&d, &e.hints().map_err(|x| x.to_string())?)?;
    ensure!(full.value() == Some(expected), "certify gives {full}");
    let g4 = genus_lower_bound(&full, None);
    let u = unknotting_lower_bound(&full);
    ensure!(
        g4 == expected.abs() && u == expected.abs(),
        "g4 >= {g4}, u >= {u}"
    );
    Ok(format!("tau = {expected}, g4_lower = {g4}, u_lower = {u}"))
}

fn criterion_1() -> Outcome {
    unique_state_knot("10_139", 4)
}

fn criterion_2() -> Outcome {
    unique_state_knot("10_152", -4)
}

fn criterion_3() -> Outcome {
    let (e, d) = entry("10_161")?;
    let m0 = m0_states(&d);
    let mut levels: Vec<i32> = m0.iter().map(|s| s.1).collect();
    levels.sort();
    ensure!(
        levels == vec![-3, -2],
        "M = 0 essential states at {levels:?}"
    );
    let b = &m0.iter().find(|s| s.1 == -2).unwrap().0;
    // ∂c contains b, so c sits one Maslov degree up at filtration level -1,
    // differs from b at two crossings, and can only be the candidate whose
    // multi-filtration dominates that of b outside the interval.
    let near: Vec<KauffmanState> = essential_states(&d)
        .into_iter()
        .filter(|x| {
            let g = bigrading(&d, x);
            g.m == 1 && g.a == -1 && x.distance(b) == 2
        })
        .collect();
    let c: Vec<&KauffmanState> = near
        .iter()
        .filter(|x| differential_admissible(&d, x, b))
        .collect();
    ensure!(
        c.len() == 1,
        "{} of {} candidates admissible to b",
        c.len(),
        near.len()
    );
    ensure!(
        !differential_admissible(&d, c[0], &m0.iter().find(|s| s.1 == -3).unwrap().0),
        "c is also admissible to a"
    );
    let cx = e
        .complex
        .ok_or("no complex recorded")?
        .into_complex()
        .map_err(|x| x.to_string())?;
    let t = tau_explicit_complex(&cx).map_err(|x| x.to_string())?;
    ensure!(t.value() == Some(-3), "complex gives {t}");
    Ok(format!(
        "levels [-3, -2], admissible(c, b) for 1 of {} candidates, tau = -3",
        near.len()
    ))
}

fn criterion_4() -> Outcome {
    for (p, q) in [(2, 3), (2, 5), (2, 7), (3, 4), (3, 5), (4, 5)] {
        let deg = symmetric_degree(&torus_alexander(p, q).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let want = ((p * q - p - q + 1) / 2) as i32;
        ensure!(deg == want, "T({p},{q}) has degree {deg}, want {want}");
    }
    Ok("six torus knots".into())
}

fn criterion_5() -> Outcome {
    let mut count = 0;
    for e in bundled_corpus() {
        let d = e.decorated().map_err(|x| x.to_string())?;
        let pd = d.diagram();
        if !(pd.is_alternating() && pd.is_reduced())
            || pd.crossing_count() > 7
            || pd.crossing_count() == 0
        {
            continue;
        }
        let sigma = signature(pd);
        for x in enumerate_states(&d) {
            let g = bigrading(&d, &x);
            ensure!(
                2 * (g.m - g.a) == sigma,
                "{}: state with M - A = {} but sigma = {sigma}",
                e.name,
                g.m - g.a
            );
        }
        let t = tau_alternating(pd).map_err(|x| x.to_string())?;
        ensure!(
            t.value() == Some(-sigma / 2),
            "{}: tau {t}, sigma {sigma}",
            e.name
        );
        count += 1;
    }
    ensure!(count >= 6, "only {count} reduced alternating diagrams");
    Ok(format!("{count} diagrams"))
}

fn criterion_6() -> Outcome {
    let mut count = 0;
    for e in bundled_corpus() {
        let d = e.decorated().map_err(|x| x.to_string())?;
        let pd = d.diagram();
        if pd.crossing_count() > 10 {
            continue;
        }
        let p = state_sum_polynomial(&d).map_err(|x| format!("{}: {x}", e.name))?;
        ensure!(p.is_symmetric(), "{}: {p} is not symmetric", e.name);
        ensure!(
            p.eval_unit(1) == 1,
            "{}: value {} at T = 1",
            e.name,
            p.eval_unit(1)
        );
        let skein = conway_skein_oracle(pd).map_err(|x| x.to_string())?;
        ensure!(p == skein, "{}: state sum {p}, skein {skein}", e.name);
        ensure!(
            common::matches_wirtinger(pd, &p),
            "{}: {p} disagrees with the Fox matrix",
            e.name
        );
        if pd.is_alternating() && pd.is_reduced() {
            let n = enumerate_states(&d).len() as u64;
            let det = determinant_of(&p).0;
            ensure!(n == det, "{}: {n} states, determinant {det}", e.name);
        }
        count += 1;
    }
    Ok(format!("{count} diagrams"))
}

fn criterion_7() -> Outcome {
    let t = trefoil_model();
    let tt = t.tensor(&t).tau().map_err(|x| x.to_string())?;
    let td = t.tensor(&t.dual()).tau().map_err(|x| x.to_string())?;
    ensure!(tt == 2, "trefoil # trefoil gives {tt}");
    ensure!(td == 0, "trefoil # mirror gives {td}");
    let c = tau_explicit_complex(&t).map_err(|x| x.to_string())?;
    let sum = combine_connected_sum(&c, &c);
    let mirror = combine_mirror(&c);
    ensure!(sum.value() == Some(tt), "combined sum {sum}");
    ensure!(
        mirror.value() == t.dual().tau().ok(),
        "combined mirror {mirror}"
    );
    let zero = combine_connected_sum(&c, &mirror);
    ensure!(zero.value() == Some(td), "combined sum with mirror {zero}");
    Ok("tau 2 and 0".into())
}

fn criterion_8() -> Outcome {
    let (_, d) = entry("9_42")?;
    let s = signature(d.diagram());
    ensure!(s == 2, "sigma(9_42) = {s}");
    let mut count = 0;
    for e in bundled_corpus() {
        let d = e.decorated().map_err(|x| x.to_string())?;
        let pd = d.diagram();
        let g = signature(pd);
        let v = seifert_signature(&seifert_matrix_oracle(pd));
        ensure!(g == v, "{}: Goeritz {g}, Seifert {v}", e.name);
        let delta = state_sum_polynomial(&d).map_err(|x| x.to_string())?;
        let parity = if (g / 2).rem_euclid(2) == 0 { 1 } else { -1 };
        ensure!(
            parity == determinant_of(&delta).1,
            "{}: parity law fails",
            e.name
        );
        count += 1;
    }
    Ok(format!("sigma(9_42) = 2, {count} diagrams"))
}

fn criterion_9() -> Outcome {
    let (e, d) = entry("10_139")?;
    let pd = d.diagram();
    let start = certify(&d, &e.hints().map_err(|x| x.to_string())?)?;
    ensure!(start.value() == Some(4), "start {start}");
    let seq = e.known.unknotting.ok_or("no unknotting sequence")?.value;
    ensure!(seq.len() == 4, "{} crossing changes", seq.len());
    ensure!(
        seq.iter().all(|&x| pd.sign(x) > 0),
        "a changed crossing is negative"
    );
    let changed = pd.switch_crossings(&seq);
    let dd = DecoratedDiagram::new(&changed, changed.traversal()[0]).map_err(|x| x.to_string())?;
    ensure!(
        state_sum_polynomial(&dd).ok() == Some(LaurentPoly::one()),
        "changed diagram is not trivial"
    );
    let steps = skein_sequence(&start, &[SkeinDirection::PosToNeg; 4]);
    for (k, c) in steps.iter().enumerate() {
        let reach = 4 - k as i32;
        ensure!(
            c.lower <= reach && c.upper >= 0,
            "step {k}: {c} cannot reach 0"
        );
    }
    ensure!(steps[4].contains(0), "final interval {}", steps[4]);
    let back = tau_from_unknotting(pd, &seq);
    ensure!(back.contains(4), "reverse propagation gives {back}");
    Ok(format!(
        "forward ends at [{}, {}], reverse [{}, {}]",
        steps[4].lower, steps[4].upper, back.lower, back.upper
    ))
}

fn criterion_10() -> Outcome {
    const N: usize = 120;
    let mut rng = ChaCha8Rng::seed_from_u64(0x7a0);
    for i in 0..N {
        let r = common::random_unknot_complex(&mut rng);
        let c = &r.complex;
        let t = c.tau().map_err(|x| x.to_string())?;
        ensure!(t == r.tau, "complex {i}: tau {t}, built with {}", r.tau);
        ensure!(
            common::tau_mod_p(c) == Some(t),
            "complex {i}: modular tau disagrees"
        );
        for m in -6..=6 {
            let on = c.iota_nontrivial(m).map_err(|x| x.to_string())?;
            ensure!(on == (m >= t), "complex {i}: iota at {m} is {on}, tau {t}");
        }
    }
    for i in 0..N {
        let r = common::random_unknot_complex(&mut rng);
        let m = rng.gen_range(-2..=2);
        let a = rng.gen_range(-4..=4);
        let b = a - rng.gen_range(0..=3);
        let bigger = r
            .complex
            .with_acyclic_pair(Generator::new("u", m + 1, a), Generator::new("v", m, b))
            .map_err(|x| x.to_string())?;
        let t = bigger.tau().map_err(|x| x.to_string())?;
        ensure!(
            t == r.tau,
            "complex {i}: acyclic pair moved tau from {} to {t}",
            r.tau
        );
    }
    for i in 0..N {
        let (r1, r2) = (
            common::random_unknot_complex(&mut rng),
            common::random_unknot_complex(&mut rng),
        );
        let interval = |t: i32, rng: &mut ChaCha8Rng| {
            let lo = t - rng.gen_range(0..=2);
            let hi = t + rng.gen_range(0..=2);
            interval_certificate(lo, hi)
        };
        let (c1, c2) = (interval(r1.tau, &mut rng), interval(r2.tau, &mut rng));
        let sum_tau = r1
            .complex
            .tensor(&r2.complex)
            .tau()
            .map_err(|x| x.to_string())?;
        let sum = combine_connected_sum(&c1, &c2);
        ensure!(sum.contains(sum_tau), "case {i}: {sum} misses {sum_tau}");
        let mirror_tau = r1.complex.dual().tau().map_err(|x| x.to_string())?;
        let mirror = combine_mirror(&c1);
        ensure!(
            mirror.contains(mirror_tau),
            "case {i}: {mirror} misses {mirror_tau}"
        );
        let down = skein_propagate(&c1, SkeinDirection::PosToNeg);
        let up = skein_propagate(&c1, SkeinDirection::NegToPos);
        for t in [r1.tau - 1, r1.tau] {
            ensure!(down.contains(t), "case {i}: {down} misses {t}");
        }
        for t in [r1.tau, r1.tau + 1] {
            ensure!(up.contains(t), "case {i}: {up} misses {t}");
        }
    }
    Ok(format!("{N} complexes per property"))
}

fn interval_certificate(lower: i32, upper: i32) -> TauCertificate {
    TauCertificate {
        lower,
        upper,
        method: Method::SkeinInterval,
        evidence: Evidence::Unknot {},
    }
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, Duration, fn() -> Outcome); 10] = [
        (
            1,
            "10_139 unique state, tau = g4 = u = 4",
            Duration::from_secs(10),
            criterion_1,
        ),
        (
            2,
            "10_152 unique state, tau = -4",
            Duration::from_secs(10),
            criterion_2,
        ),
        (
            3,
            "10_161 two M = 0 states, admissible(c, b), tau = -3",
            Duration::from_secs(10),
            criterion_3,
        ),
        (
            4,
            "torus knot Alexander degrees",
            Duration::from_secs(1),
            criterion_4,
        ),
        (
            5,
            "alternating diagrams, M - A = sigma/2 and tau = -sigma/2",
            Duration::from_secs(5),
            criterion_5,
        ),
        (
            6,
            "state sum calibration",
            Duration::from_secs(60),
            criterion_6,
        ),
        (
            7,
            "concordance algebra",
            Duration::from_secs(1),
            criterion_7,
        ),
        (8, "signature checks", Duration::from_secs(10), criterion_8),
        (
            9,
            "skein propagation on 10_139",
            Duration::from_secs(1),
            criterion_9,
        ),
        (
            10,
            "randomized filtered complexes",
            Duration::from_secs(30),
            criterion_10,
        ),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (n, title, budget, run) in criteria {
        let t0 = Instant::now();
        let out = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or(p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or("panic".into()))
        });
        let dt = t0.elapsed();
        let out = match out {
            Ok(msg) if dt > budget => Err(format!("{msg}; took {dt:.2?}, budget {budget:?}")),
            o => o,
        };
        match out {
            Ok(msg) => println!("PASS {n:>2} {title}: {msg} ({dt:.2?})"),
            Err(msg) => {
                failed += 1;
                println!("FAIL {n:>2} {title}: {msg} ({dt:.2?})");
            }
        }
    }
    let _ = panic::take_hook();
    if failed == 0 {
        println!("acceptance: all 10 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 10 criteria fail");
        ExitCode::FAILURE
    }
}
