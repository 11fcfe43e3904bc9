//! Acceptance criteria 1 to 10. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cutproject::arrangement::{
    count_components_hyperplane_cut, count_components_regn, count_faces_chords, AffineHyperplane,
};
use cutproject::cli::{lemma1_table, Lemma1Config, BUILTIN_LEMMA1};
use cutproject::exact::FieldContext;
use cutproject::patches::{complexity_direct, slope_fit, PatchOptions};
use cutproject::scheme::config::BUILTIN_SCHEMES;
use cutproject::scheme::{load_scheme, Polytope, Scheme};
use cutproject::singular::{analyze, cohomology_verdict, rank_equality_audit, subadditivity_holds};
use cutproject::words::rauzy::{GammaMap, RauzyGraph};
use cutproject::words::{complexity_series, counterexample_build, language, load_word_source, FactorOptions, WordSource};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn scheme(name: &str) -> Scheme {
    load_scheme(name).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn c_values(s: &Scheme, ns: impl Iterator<Item = usize>) -> Vec<(usize, u64)> {
    let ss = analyze(s).expect("singular structure");
    ns.map(|n| {
        let c = count_components_regn(s, &ss, n).expect("c(n)");
        (n, c.exact().expect("exact count in dimension 1 or 2"))
    })
    .collect()
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let s = scheme("octagonal.scheme");
    let ss = analyze(&s).unwrap();
    let ranks: Vec<usize> = ss.hyperplanes.iter().map(|h| h.stab_rank).collect();
    let el = t.elapsed();
    let pass = ss.alpha == 2 && ranks.iter().all(|&r| r == 2) && el < Duration::from_secs(1);
    outcome(pass, format!("alpha = {}, stabilizer ranks {:?}, {:.3}s", ss.alpha, ranks, el.as_secs_f64()))
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let mut details = Vec::new();
    let mut pass = true;
    for (name, n_max) in [("octagonal.scheme", 5), ("billiard3.scheme", 5), ("golden_sturmian.scheme", 30)] {
        let s = scheme(name);
        let series = match complexity_direct(&s, n_max, PatchOptions::for_size(n_max)) {
            Ok(cs) => cs,
            Err(e) => {
                pass = false;
                details.push(format!("{name}: {e}"));
                continue;
            }
        };
        let c = c_values(&s, 0..=n_max);
        let mismatches: Vec<usize> = c
            .iter()
            .zip(&series.p_pt)
            .filter(|((_, c), &p)| *c != p)
            .map(|((n, _), _)| *n)
            .collect();
        pass &= mismatches.is_empty() && series.n_values.len() == n_max + 1;
        details.push(format!(
            "{}: p_pt {:?}{} mismatches {:?}",
            s.name,
            &series.p_pt[..series.p_pt.len().min(6)],
            if n_max > 5 { "…" } else { "" },
            mismatches
        ));
    }
    let el = t.elapsed();
    pass &= el < Duration::from_secs(600);
    outcome(pass, format!("{}; {:.1}s", details.join("; "), el.as_secs_f64()))
}

fn criterion_3() -> Outcome {
    let t = Instant::now();
    let mut details = Vec::new();
    let mut pass = true;
    for (name, lo, hi) in [("octagonal.scheme", 1.6, 2.4), ("billiard3.scheme", 1.6, 2.4), ("golden_sturmian.scheme", 0.8, 1.2)] {
        let s = scheme(name);
        let (ns, vs): (Vec<usize>, Vec<u64>) = c_values(&s, 4..=32).into_iter().unzip();
        let fit = slope_fit(&ns, &vs, 4, 32).expect("enough points");
        let ok = fit.lsq_exponent >= lo && fit.lsq_exponent <= hi;
        pass &= ok;
        details.push(format!("{}: {:.4} in [{lo}, {hi}]", s.name, fit.lsq_exponent));
    }
    let el = t.elapsed();
    pass &= el < Duration::from_secs(900);
    outcome(pass, format!("{}; {:.1}s", details.join("; "), el.as_secs_f64()))
}

fn criterion_4() -> Outcome {
    let t = Instant::now();
    let (_, src) = load_word_source("billiard3.word").unwrap();
    let c = complexity_series(&src, 15, FactorOptions::default()).unwrap();
    let bad: Vec<usize> = c.n_values.iter().zip(&c.p).filter(|(&n, &p)| p != (n * n + n + 1) as u64).map(|(&n, _)| n).collect();
    outcome(bad.is_empty(), format!("p = {:?}, mismatches {:?}, {:.2}s", c.p, bad, t.elapsed().as_secs_f64()))
}

fn criterion_5() -> Outcome {
    let mut pass = true;
    let mut details = Vec::new();
    for (name, fg, alpha, alpha_min) in [
        ("octagonal.scheme", true, None, 2),
        ("golden_sturmian.scheme", true, None, 1),
        ("generic42.scheme", false, Some(4), 2),
    ] {
        let s = scheme(name);
        let ss = analyze(&s).unwrap();
        let v = cohomology_verdict(&s, &ss);
        let audit = rank_equality_audit(&s, &ss);
        let ok = v.finitely_generated == fg
            && v.alpha_min == alpha_min
            && alpha.is_none_or(|a| v.alpha == a && a > alpha_min)
            && audit == v.finitely_generated
            && v.audit_consistent;
        pass &= ok;
        details.push(format!(
            "{}: alpha {} alpha_min {} fg {} audit {}",
            s.name, v.alpha, v.alpha_min, v.finitely_generated, audit
        ));
    }
    outcome(pass, details.join("; "))
}

fn criterion_6() -> Outcome {
    let mut pass = true;
    let mut details = Vec::new();
    for (file, _) in BUILTIN_SCHEMES {
        let t = Instant::now();
        let s = scheme(file);
        let ss = match analyze(&s) {
            Ok(ss) => ss,
            Err(e) => {
                pass = false;
                details.push(format!("{}: {e}", s.name));
                continue;
            }
        };
        let (n, d, rk) = (s.n as i64, s.d as i64, ss.gamma_rank as i64);
        let lower = (n - d).max(d - (n - rk));
        let upper = d * (n - d);
        let sub = subadditivity_holds(&s, &ss);
        let el = t.elapsed();
        let ok = lower <= ss.alpha && ss.alpha <= upper && sub && el < Duration::from_secs(1);
        pass &= ok;
        details.push(format!("{}: {lower} <= {} <= {upper}, subadditive {sub}", s.name, ss.alpha));
    }
    outcome(pass, details.join("; "))
}

fn random_chord(f: &FieldContext, rng: &mut ChaCha8Rng) -> Option<AffineHyperplane> {
    // Two points on distinct sides of the unit square, coordinates in (1/8)Z.
    let side_point = |side: usize, t: i64| -> [i64; 2] {
        match side {
            0 => [t, 0],
            1 => [8, t],
            2 => [t, 8],
            _ => [0, t],
        }
    };
    let (s1, s2) = (rng.gen_range(0..4), rng.gen_range(0..4));
    if s1 == s2 {
        return None;
    }
    let p = side_point(s1, rng.gen_range(1..8));
    let q = side_point(s2, rng.gen_range(1..8));
    let (a, b) = (q[1] - p[1], p[0] - q[0]);
    let off = a * p[0] + b * p[1];
    Some(AffineHyperplane {
        normal: vec![f.from_int(a), f.from_int(b)],
        offset: f.element_from_strs(&[format!("{off}/8")]).unwrap(),
    })
}

fn criterion_7() -> Outcome {
    let t = Instant::now();
    let f = FieldContext::rationals();
    let sq = Polytope::cube(&f.zero(), &f.one(), 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut mismatches = 0;
    let mut order_dependent = 0;
    let mut total_faces = 0;
    for _ in 0..100 {
        let k = rng.gen_range(1..=20);
        let mut lines: Vec<AffineHyperplane> = Vec::new();
        while lines.len() < k {
            if let Some(l) = random_chord(&f, &mut rng) {
                lines.push(l);
            }
        }
        let cut = count_components_hyperplane_cut(&sq, &lines).unwrap();
        let planar = count_faces_chords(&sq, &lines).unwrap();
        mismatches += usize::from(cut != planar);
        lines.shuffle(&mut rng);
        order_dependent += usize::from(count_components_hyperplane_cut(&sq, &lines).unwrap() != cut);
        total_faces += planar;
    }
    let el = t.elapsed();
    let pass = mismatches == 0 && order_dependent == 0 && el < Duration::from_secs(60);
    outcome(
        pass,
        format!("100 sets, {total_faces} faces in total, {mismatches} mismatches, {order_dependent} order-dependent, {:.1}s", el.as_secs_f64()),
    )
}

/// Counts frozen from the first run; the ratio interval is [1/20, 3/29].
const LEMMA1_PIN: [u64; 31] = [
    1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2,
    2, 2, 2, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3,
];

fn criterion_8() -> Outcome {
    let cfg: Lemma1Config = toml::from_str(BUILTIN_LEMMA1.1).unwrap();
    let rows = lemma1_table(&cfg).unwrap();
    let counts: Vec<u64> = rows.iter().map(|r| r.count).collect();
    let (lo, hi) = rows.iter().fold((f64::INFINITY, 0f64), |(a, b), r| (a.min(r.ratio_approx), b.max(r.ratio_approx)));
    // Exact check of 1/20 <= count/n <= 3/29.
    let inside = rows.iter().all(|r| 20 * r.count >= r.n as u64 && 29 * r.count <= 3 * r.n as u64);
    let pinned = counts == LEMMA1_PIN;
    outcome(inside && pinned, format!("n in [10, 40], count/n in [{lo:.4}, {hi:.4}], pinned [0.0500, 0.1034], counts match pin: {pinned}"))
}

fn criterion_9() -> Outcome {
    let t = Instant::now();
    let (_, src) = load_word_source("fibonacci.word").unwrap();
    let lang = language(&src, 52, FactorOptions::default()).unwrap();
    let counts = lang.counts();
    let mut failures = Vec::new();
    let mut prev: Option<RauzyGraph> = None;
    for n in 1..=51 {
        let g = RauzyGraph::from_language(&lang, n).unwrap();
        if let Some(small) = prev.take() {
            let m = small.n;
            let s = counts[m + 1] as i64 - counts[m] as i64;
            let h1 = small.h1_rank();
            if counts[m] != m as u64 + 1 || h1 != Ok(2) || h1 != Ok(s + 1) {
                failures.push(format!("n = {m}: p {} s {s} h1 {h1:?}", counts[m]));
            }
            if !small.is_strongly_connected() {
                failures.push(format!("n = {m}: not strongly connected"));
            }
            if let Err(e) = GammaMap::build(&small, &g) {
                failures.push(format!("n = {m}: {e}"));
            }
        }
        prev = Some(g);
    }
    let el = t.elapsed();
    let pass = failures.is_empty() && el < Duration::from_secs(60);
    outcome(pass, format!("n <= 50, failures {:?}, {:.2}s", failures, el.as_secs_f64()))
}

fn criterion_10() -> Outcome {
    let t = Instant::now();
    let ce = counterexample_build(2).unwrap();
    let equal = ce.levels.iter().all(|l| l.u.len() == l.v.len()) && ce.check().is_empty();
    let n1 = ce.special_length(1).expect("level 2 built");
    let lang = language(&ce.source(), n1 + 1, FactorOptions::default()).unwrap();
    let special = lang.right_special(n1).len();
    let ambient = WordSource::Sft { alphabet: b"ab".to_vec(), forbidden: vec![*b"aa"] };
    let amb = complexity_series(&ambient, 15, FactorOptions::default()).unwrap();
    let amb_ok = (1..=5).all(|j| amb.p[3 * j - 1] >= 1 << j);
    let el = t.elapsed();
    let pass = equal && special == 1 && amb_ok && el < Duration::from_secs(300);
    outcome(
        pass,
        format!(
            "|u_1| = |v_1| = {}, |u_2| = |v_2| = {} ({equal}); right-special factors at N_1 = {n1}: {special} (expected 1); p'(3n) >= 2^n: {amb_ok}; {:.2}s",
            ce.levels[0].u.len(),
            ce.levels[1].u.len(),
            el.as_secs_f64()
        ),
    )
}

fn main() {
    // The harness-free target ignores libtest flags such as --list.
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let criteria: [(usize, fn() -> Outcome); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let mut failed = Vec::new();
    for (k, run) in criteria {
        let o = match std::panic::catch_unwind(run) {
            Ok(o) => o,
            Err(_) => outcome(false, "panicked"),
        };
        println!("criterion {k}: {} - {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass {
            failed.push(k);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 10 criteria passed");
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
