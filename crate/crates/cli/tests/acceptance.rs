//! Acceptance runner: one PASS/FAIL line per criterion, with runtimes.
//!
//! Criteria listed in `KNOWN_FAILURES` are still evaluated as written and
//! print FAIL; they do not fail the run unless `ACCEPTANCE_STRICT=1` is set.
//! Any other failure, or a known failure that starts passing, exits nonzero.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use gk2::curve::{self, Curve};
use gk2::gk2 as semigroups;
use gk2::reference::{self, Discrepancy};
use gk2::{fengrao, CurveParams, Orbit};

/// Criteria that cannot hold as written, with the reason.
const KNOWN_FAILURES: &[(u32, &str)] = &[
    (
        2,
        "the published table also prints s_min = 28 at O1 l = 63 where max(2g - l, 1) = 29",
    ),
    (
        4,
        "for n = 3 both semigroups are symmetric, so 2g - 1 is their largest gap",
    ),
    (
        7,
        "the tabulated order bound is min over m >= l, whose tail value is l - g",
    ),
];

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: false,
        detail: detail.into(),
    }
}

fn gk2(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_gk2"))
        .args(args)
        .output()
        .expect("run gk2");
    assert!(
        out.status.success(),
        "gk2 {args:?} exited {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8")
}

fn csv_rows(text: &str) -> Vec<Vec<i64>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(|f| f.parse().expect("number")).collect())
        .collect()
}

fn orbit_arg(orbit: Orbit) -> &'static str {
    match orbit {
        Orbit::O1 => "O1",
        Orbit::O2 => "O2",
    }
}

fn golden_fengrao(report: &[Discrepancy]) -> Outcome {
    let mut mismatches = Vec::new();
    let mut cells = 0;
    for orbit in [Orbit::O1, Orbit::O2] {
        let text = gk2(&[
            "fengrao-table",
            "--q",
            "2",
            "--n",
            "5",
            "--orbit",
            orbit_arg(orbit),
            "--lmax",
            "200",
        ]);
        let by_rho: BTreeMap<i64, Vec<i64>> =
            csv_rows(&text).into_iter().map(|r| (r[1], r)).collect();
        for cell in reference::feng_rao_cells()
            .into_iter()
            .filter(|c| c.orbit == orbit)
        {
            cells += 1;
            let want = vec![
                cell.k as i64,
                cell.rho as i64,
                cell.nu as i64,
                cell.d_ord as i64,
            ];
            match by_rho.get(&(cell.rho as i64)) {
                Some(row) if *row == want => {}
                other => mismatches.push(format!(
                    "{orbit} rho={} table {want:?} got {other:?}",
                    cell.rho
                )),
            }
        }
    }
    let flagged: Vec<&Discrepancy> = report.iter().filter(|d| d.key == "rho").collect();
    let non_typo = flagged.iter().filter(|d| d.column != "N").count();
    let n39688 = flagged.iter().filter(|d| d.published == "39688").count();
    let n3868 = flagged.iter().filter(|d| d.published == "3868").count();
    if mismatches.is_empty() && non_typo == 0 {
        pass(format!(
            "{cells} cells exact; flagged typos only in the length column ({n39688} x 39688, {n3868} x 3868)"
        ))
    } else {
        fail(format!(
            "{} cell mismatches: {:?}",
            mismatches.len(),
            &mismatches[..mismatches.len().min(5)]
        ))
    }
}

fn golden_quantum(report: &[Discrepancy]) -> Outcome {
    let mut problems = Vec::new();
    let mut s_min_off = Vec::new();
    for orbit in [Orbit::O1, Orbit::O2] {
        let text = gk2(&[
            "quantum-table",
            "--q",
            "2",
            "--n",
            "5",
            "--orbit",
            orbit_arg(orbit),
            "--published-rows",
        ]);
        let rows = csv_rows(&text);
        let cells: Vec<_> = reference::quantum_cells()
            .into_iter()
            .filter(|c| c.orbit == orbit)
            .collect();
        if rows.len() != cells.len() {
            problems.push(format!(
                "{orbit}: {} rows for {} cells",
                rows.len(),
                cells.len()
            ));
        }
        for (cell, row) in cells.iter().zip(&rows) {
            if row[0] != cell.l as i64 || row[1] != cell.d_ord as i64 || row[3] != cell.s_max {
                problems.push(format!(
                    "{orbit} l={}: table {:?} got {row:?}",
                    cell.l,
                    (cell.d_ord, cell.s_max)
                ));
            }
            if row[2] != cell.s_min {
                s_min_off.push((orbit, cell.l, cell.s_min, row[2]));
            }
        }
    }
    let l46_reported = report
        .iter()
        .any(|d| d.orbit == Orbit::O1 && d.key == "l" && d.key_value == 46 && d.column == "s_min");
    let undocumented: Vec<_> = s_min_off
        .iter()
        .filter(|(o, l, _, _)| !(*o == Orbit::O1 && *l == 46))
        .collect();
    let detail = format!(
        "(l, d_ord, s_max) {}; s_min off at {:?}; l=46 in report: {l46_reported}",
        if problems.is_empty() {
            "exact"
        } else {
            "MISMATCH"
        },
        s_min_off
            .iter()
            .map(|(o, l, t, c)| format!("{o} l={l} table {t} computed {c}"))
            .collect::<Vec<_>>()
    );
    if problems.is_empty() && l46_reported && undocumented.is_empty() {
        pass(detail)
    } else {
        let mut d = detail;
        if !problems.is_empty() {
            d.push_str(&format!("; {problems:?}"));
        }
        if !undocumented.is_empty() {
            d.push_str("; s_min differs beyond the documented l=46 cell");
        }
        fail(d)
    }
}

fn point_counts() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for (q, n, expected, budget) in [
        (2u64, 5u32, 3969u64, 5.0),
        (2, 3, 225, 5.0),
        (3, 3, 6076, 5.0),
        (3, 5, 527068, 30.0),
    ] {
        let start = Instant::now();
        let json = gk2(&[
            "points",
            "--q",
            &q.to_string(),
            "--n",
            &n.to_string(),
            "--format",
            "json",
        ]);
        let secs = start.elapsed().as_secs_f64();
        let v: serde_json::Value = serde_json::from_str(&json).expect("json");
        // independent oracle: q^{2n} + 1 + 2 g q^n with the genus formula
        let qn = q.pow(n);
        let g = (q - 1) * (q.pow(n + 1) + qn - q * q) / 2;
        let formula = qn * qn + 1 + 2 * g * qn;
        let count = v["count"].as_u64().unwrap();
        let o1 = v["orbit_sizes"]["O1"].as_u64().unwrap();
        let o2 = v["orbit_sizes"]["O2"].as_u64().unwrap();
        let good = count == expected
            && count == formula
            && o1 == q + 1
            && o2 == q * q * q - q
            && secs < budget;
        ok &= good;
        parts.push(format!("({q},{n}) {count} [{o1},{o2}] {secs:.2}s"));
    }
    let detail = parts.join("; ");
    if ok {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn semigroup_identities() -> Outcome {
    let mut failures = Vec::new();
    for (q, n) in [(2, 3), (2, 5), (2, 7), (3, 3), (3, 5), (4, 3)] {
        let p = CurveParams::new(q, n).unwrap();
        let g = p.genus;
        let h1 = semigroups::weierstrass_o1(&p);
        let h2 = semigroups::weierstrass_o2(&p);
        let (h1, h2) = match (h1, h2) {
            (Ok(a), Ok(b)) => (a, b),
            (a, b) => {
                failures.push(format!(
                    "({q},{n}) semigroup error {:?} {:?}",
                    a.err(),
                    b.err()
                ));
                continue;
            }
        };
        if h1.genus() != g || h2.genus() != g {
            failures.push(format!("({q},{n}) genus"));
        }
        match semigroups::gap_set_l(&p) {
            Ok(l) if l == h2.gaps() => {}
            _ => failures.push(format!("({q},{n}) gap set")),
        }
        for (name, s) in [("O1", &h1), ("O2", &h2)] {
            if !s.contains(p.qn() + 1) {
                failures.push(format!("({q},{n}) q^n+1 gap in {name}"));
            }
            if !s.contains(2 * g - 1) {
                failures.push(format!("({q},{n}) 2g-1={} gap in {name}", 2 * g - 1));
            }
        }
        match semigroups::verify_partition(&p) {
            Ok(r) if r.passed() => {}
            other => failures.push(format!("({q},{n}) partition {other:?}")),
        }
    }
    if failures.is_empty() {
        pass("all six (q, n)")
    } else {
        fail(failures.join("; "))
    }
}

/// Alternating sum evaluated by Horner in `-q`, independent of the library loop.
fn gk1_oracle(q: i128, n: u32) -> i128 {
    // sum_{i=2}^{n-2} (-1)^{i+1} q^i = -q^2 * sum_{j=0}^{n-4} (-q)^j
    let mut acc: i128 = 0;
    for _ in 0..=(n - 4) {
        acc = acc * (-q) + 1;
    }
    let alt = -q * q * acc;
    q.pow(n - 3) + alt + 1
}

fn frobenius_sweep() -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    for q in [2u64, 3, 4, 5] {
        for n in [5u32, 7, 9, 11] {
            count += 1;
            let p = CurveParams::new(q, n).unwrap();
            let m = (q.pow(n) + 1) / (q + 1);
            let s = (m - 1) / (q * q - q);
            let r = semigroups::frobenius_dim_gk2(&p).ok();
            let r1 = semigroups::frobenius_dim_gk1(&p);
            let r1_oracle = gk1_oracle(q as i128, n);
            if r != Some(s + 2) || r1 != r1_oracle || r1 == (s + 2) as i128 {
                bad.push(format!(
                    "({q},{n}) r={r:?} s+2={} r'={r1} oracle={r1_oracle}",
                    s + 2
                ));
            }
        }
    }
    let sample = gk2(&["frobenius", "--q", "2", "--n", "5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&sample).unwrap();
    if v["gk2"] != 7 || v["gk1"] != 9 || v["isomorphic"] != false {
        bad.push(format!("cli (2,5): {v}"));
    }
    if bad.is_empty() {
        pass(format!("{count} (q, n) pairs, r != r' throughout"))
    } else {
        fail(bad.join("; "))
    }
}

fn code_checks() -> Outcome {
    let p = CurveParams::new(2, 3).unwrap();
    let c = Curve::new(p).unwrap();
    let mut bad = Vec::new();
    for orbit in [Orbit::O1, Orbit::O2] {
        let mut prev = 0;
        for l in 1..=30u64 {
            let m = c.code_matrix(orbit, l).unwrap();
            let r = curve::rank(&m, &c.field);
            if r != l as usize || r != prev + 1 {
                bad.push(format!("{orbit} l={l} rank {r}"));
            }
            prev = r;
        }
    }
    let h1 = semigroups::weierstrass_o1(&p).unwrap();
    let rho2 = h1.nth_nongap(2).unwrap();
    let bound = p.code_length() - rho2;
    let m = c.code_matrix(Orbit::O1, 2).unwrap();
    let d = curve::min_weight_exhaustive(&m, &c.field, curve::MIN_WEIGHT_WORK_CAP).unwrap();
    if (d as u64) < bound {
        bad.push(format!("min weight {d} < {bound}"));
    }
    if bad.is_empty() {
        pass(format!(
            "ranks 1..30 both orbits; min weight at l=2 is {d} >= {bound}"
        ))
    } else {
        fail(bad.join("; "))
    }
}

fn limit_law() -> (Outcome, String) {
    let p = CurveParams::new(2, 5).unwrap();
    let mut wrong = 0;
    let mut observed_ok = true;
    let mut checked = 0;
    for orbit in [Orbit::O1, Orbit::O2] {
        let s = semigroups::weierstrass(&p, orbit).unwrap();
        let g = s.genus();
        let bound = fengrao::OrderBound::new(&s).unwrap();
        let first = (1..)
            .find(|&l| s.nth_nongap(l).unwrap() + 1 >= 4 * g)
            .unwrap();
        for l in first..first + 50 {
            checked += 1;
            let d = bound.at(l).unwrap();
            if d != l + 1 - g {
                wrong += 1;
            }
            observed_ok &= d == l - g;
        }
    }
    let outcome = if wrong == 0 {
        pass(format!("{checked} values"))
    } else {
        fail(format!("d_ord = l+1-g fails at {wrong}/{checked} values"))
    };
    let info = format!(
        "observed d_ord = l - g on all {checked} values: {observed_ok} (matches the golden tables, e.g. rho=183 -> 92)"
    );
    (outcome, info)
}

fn line(n: u32, name: &str, outcome: &Outcome, elapsed: Duration) {
    println!(
        "criterion {n} {:<28} {} ({:.2}s) {}",
        name,
        if outcome.ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        outcome.detail
    );
}

fn timed(f: impl FnOnce() -> Outcome, budget: f64) -> (Outcome, Duration) {
    let start = Instant::now();
    let mut outcome = f();
    let elapsed = start.elapsed();
    if elapsed.as_secs_f64() > budget {
        outcome.ok = false;
        outcome
            .detail
            .push_str(&format!("; over the {budget}s budget"));
    }
    (outcome, elapsed)
}

fn main() {
    let strict = std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    let report = reference::discrepancy_report().expect("report");
    let mut info = String::new();
    let results = vec![
        (
            1,
            "golden feng-rao tables",
            timed(|| golden_fengrao(&report), 5.0),
        ),
        (
            2,
            "golden quantum tables",
            timed(|| golden_quantum(&report), 5.0),
        ),
        (3, "point counts", timed(point_counts, 60.0)),
        (4, "semigroup identities", timed(semigroup_identities, 60.0)),
        (5, "frobenius dimensions", timed(frobenius_sweep, 1.0)),
        (6, "constructive code checks", timed(code_checks, 60.0)),
        (
            7,
            "feng-rao limit law",
            timed(
                || {
                    let (o, i) = limit_law();
                    info = i;
                    o
                },
                5.0,
            ),
        ),
    ];

    let mut fatal = Vec::new();
    for (n, name, (outcome, elapsed)) in &results {
        line(*n, name, outcome, *elapsed);
        let known = KNOWN_FAILURES.iter().find(|(k, _)| k == n);
        match (outcome.ok, known) {
            (false, Some((_, why))) => {
                println!("  known failure: {why}");
                if strict {
                    fatal.push(*n);
                }
            }
            (false, None) => fatal.push(*n),
            (true, Some(_)) => {
                println!("  listed as a known failure but passed; update KNOWN_FAILURES");
                fatal.push(*n);
            }
            (true, None) => {}
        }
    }
    println!("info: {info}");
    let failed: Vec<u32> = results.iter().filter(|r| !r.2 .0.ok).map(|r| r.0).collect();
    println!(
        "acceptance: {} passed, {} failed {failed:?}",
        results.len() - failed.len(),
        failed.len()
    );
    if !fatal.is_empty() {
        println!("acceptance: unexpected result for criteria {fatal:?}");
        std::process::exit(1);
    }
}
