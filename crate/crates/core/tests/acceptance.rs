//! Acceptance run: one line per criterion.
//!
//! Rows of the census with n = 9, 10 run only when `POSITROID_LONG_RUNNING=1`.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use positroid::poset::{check_necklace_containment, check_shift_conjecture, shift_witnesses};
use positroid::{
    bases_from_necklace, build_poset, enumerate_decorated, is_quotient, is_quotient_by_rank, necklace_from_matroid,
    parse_necklace, perm_from_matroid, predicted_circuits, realize_uniform, shift_left, shift_right,
    uncovered_circuits, uniform_quotient_census, DecoratedPermutation, FreezeSet, IndexSet, Limits, Matroid,
    RealizationReport, SmallIntMatrix,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

enum Verdict {
    Pass(String),
    /// Fails as literally stated, in the documented way.
    KnownFail(String),
    Fail(String),
}

use Verdict::{Fail, KnownFail, Pass};

fn check(ok: bool, pass: impl Into<String>, fail: impl Into<String>) -> Verdict {
    if ok {
        Pass(pass.into())
    } else {
        Fail(fail.into())
    }
}

fn p(s: &str) -> DecoratedPermutation {
    s.parse().unwrap()
}

fn sorted(mut v: Vec<IndexSet>) -> Vec<IndexSet> {
    v.sort();
    v
}

fn census_table() -> Verdict {
    let start = Instant::now();
    let rows = [
        (6, 3, 24, 22, 2),
        (7, 3, 36, 29, 7),
        (7, 4, 71, 64, 7),
        (8, 3, 55, 37, 18),
        (8, 4, 119, 93, 26),
        (8, 5, 179, 163, 16),
    ];
    let long_rows = [
        (9, 3, 85, 46, 39),
        (9, 4, 202, 130, 72),
        (9, 5, 322, 256, 66),
        (9, 6, 412, 382, 30),
        (10, 3, 133, 56, 77),
        (10, 4, 343, 176, 167),
        (10, 5, 583, 386, 197),
        (10, 6, 773, 638, 135),
        (10, 7, 898, 848, 50),
    ];
    let long = std::env::var("POSITROID_LONG_RUNNING").is_ok_and(|v| v == "1");
    let limits = Limits { n_cap: 10, long_running: long };
    let mut bad = Vec::new();
    let selected: Vec<_> = rows.iter().chain(if long { &long_rows[..] } else { &[] }).collect();
    for &&(n, k, total, characterized, missing) in &selected {
        let row = uniform_quotient_census(k, n, &limits).unwrap();
        if (row.total, row.characterized, row.missing) != (total, characterized, missing) {
            bad.push(format!("({k},{n}) gave ({},{},{})", row.total, row.characterized, row.missing));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let scope = if long { "n <= 10" } else { "n <= 8; n = 9, 10 skipped (set POSITROID_LONG_RUNNING=1)" };
    check(
        bad.is_empty() && (long || secs < 600.0),
        format!("{} rows match exactly, {scope}, {secs:.1}s", selected.len()),
        format!("{bad:?} in {secs:.1}s"),
    )
}

fn mobius_values() -> Verdict {
    let values: Vec<i64> = (1..=4).map(|n| build_poset(n, 10).unwrap().mobius()).collect();
    check(values == [-1, 2, -9, 92], format!("mu(P_1..P_4) = {values:?}"), format!("got {values:?}"))
}

fn poset_on_three() -> Verdict {
    let p3 = build_poset(3, 10).unwrap();
    let ok = p3.len() == 16
        && p3.rank_sizes() == [1, 7, 7, 1]
        && p3.element(p3.bottom()) == &p("1_,2_,3_")
        && p3.element(p3.top()) == &p("1^,2^,3^")
        && p3.upper_covers(p3.bottom()).len() == 7
        && p3.lower_covers(p3.top()).len() == 7;
    check(
        ok,
        format!("16 elements, ranks (1,7,7,1), bottom/top with 7 covers each, {} cover edges", p3.covers().len()),
        format!("sizes {:?}", p3.rank_sizes()),
    )
}

fn circuit_oracle() -> Verdict {
    let mut cases = 0usize;
    let mut below_n = 0usize;
    let mut mismatched_at_k_eq_n = 0usize;
    let mut unexpected = Vec::new();
    for n in 1..=8 {
        for k in 1..=n {
            let pi = DecoratedPermutation::uniform(k, n);
            for size in 0..k {
                for a in IndexSet::k_subsets(n, size) {
                    let frozen = FreezeSet::new(a, n).unwrap();
                    let predicted = predicted_circuits(k, n, &frozen).unwrap();
                    let actual = sorted(shift_left(&pi, a).positroid().circuits().to_vec());
                    let agree = predicted.circuits() == &actual[..];
                    cases += 1;
                    if k < n {
                        below_n += 1;
                    }
                    match (agree, k < n || frozen.components().len() <= 1) {
                        (true, true) => {}
                        (false, false) => mismatched_at_k_eq_n += 1,
                        _ => unexpected.push(format!("k={k} n={n} A={a}")),
                    }
                }
            }
        }
    }
    if !unexpected.is_empty() {
        return Fail(format!("unexpected disagreement pattern: {:?}", &unexpected[..unexpected.len().min(5)]));
    }
    if mismatched_at_k_eq_n == 0 {
        return Pass(format!("{cases} (k, n, A) cases, zero exceptions"));
    }
    KnownFail(format!(
        "{below_n} cases with k < n agree exactly; {mismatched_at_k_eq_n} of the k = n cases differ \
         (A with two or more cyclic components, whose frozen coloops break the intervals)"
    ))
}

fn worked_examples() -> Verdict {
    let mut bad: Vec<String> = Vec::new();
    let mut expect = |ok: bool, what: &str| {
        if !ok {
            bad.push(what.to_string());
        }
    };

    let pi59 = p("5,6,7,8,9,1,2,3,4");
    let a = IndexSet::of(&[9, 1, 6]);
    let sigma = shift_left(&pi59, a);
    expect(sigma == p("7,6,8,2,9,1,3,4,5"), "shift of 567891234 by {9,1,6}");
    let pred = predicted_circuits(5, 9, &FreezeSet::new(a, 9).unwrap()).unwrap();
    let small: Vec<String> = pred.small.iter().map(ToString::to_string).collect();
    expect(small == ["[2,4]", "[7,1]"], "small circuits [2,4], [7,1]");
    let necklace = sigma.necklace();
    expect(necklace.get(1) == IndexSet::of(&[1, 2, 3, 5]), "I_1");
    expect(necklace.get(2) == IndexSet::of(&[2, 3, 5, 6]), "I_2");
    expect(necklace.get(7) == IndexSet::of(&[7, 8, 9, 2]), "I_7");

    let pi49 = DecoratedPermutation::uniform(4, 9);
    let a = IndexSet::of(&[1, 3, 5, 6, 8]);
    let sigma = shift_left(&pi49, a);
    expect(sigma == p("6,9,8,2,1,4,3,7,5"), "shift of 678912345 by {1,3,5,6,8}");
    let small: Vec<IndexSet> =
        [&[2, 3, 4][..], &[4, 5, 6], &[7, 8], &[1, 2, 9]].iter().map(|s| IndexSet::of(s)).collect();
    let mut expected_circuits = small.clone();
    expected_circuits.extend(IndexSet::k_subsets(9, 4).filter(|c| !small.iter().any(|s| s.is_subset(*c))));
    let expected_circuits = sorted(expected_circuits);
    let actual = sorted(sigma.positroid().circuits().to_vec());
    expect(actual == expected_circuits, "circuits of 698214375");
    let pred = predicted_circuits(4, 9, &FreezeSet::new(a, 9).unwrap()).unwrap();
    expect(pred.circuits() == &expected_circuits[..], "formula for 698214375");
    expect(is_quotient(&sigma.positroid(), &Matroid::uniform(4, 9).unwrap()).unwrap(), "698214375 below U_{4,9}");

    let tau = shift_left(&sigma, IndexSet::of(&[2, 4, 7, 8, 9]));
    expect(tau == p("1_,9,8,2,3,4,5,7,6"), "shift of 698214375 by {2,4,7,8,9}");
    let small: Vec<IndexSet> = [&[1][..], &[7, 8], &[2, 9]].iter().map(|s| IndexSet::of(s)).collect();
    let mut expected_circuits = small.clone();
    expected_circuits.extend(IndexSet::k_subsets(9, 3).filter(|c| !small.iter().any(|s| s.is_subset(*c))));
    expect(sorted(tau.positroid().circuits().to_vec()) == sorted(expected_circuits), "circuits of 1̲98234576");
    expect(is_quotient(&tau.positroid(), &sigma.positroid()).unwrap(), "1̲98234576 below 698214375");

    let base = p("3,4,5,1,2");
    let shifts = [
        (shift_left(&base, IndexSet::EMPTY), "4,5,1,2,3"),
        (shift_left(&base, IndexSet::of(&[1, 2])), "4,5,3_,1,2"),
        (shift_left(&base, IndexSet::of(&[2, 5])), "4,1,5,3,2"),
        (shift_left(&base, IndexSet::of(&[4])), "5,4,1,2,3"),
        (shift_right(&base, IndexSet::of(&[1, 2])), "5,3,4,1,2"),
        (shift_right(&base, IndexSet::of(&[4])), "2,4,3^,5,1"),
    ];
    for (got, want) in shifts {
        expect(got == p(want), want);
    }
    let count = bad.len();
    check(count == 0, "all worked examples reproduce (three shift examples, six small shifts)", format!("{bad:?}"))
}

fn converse_small() -> Verdict {
    let limits = Limits::default();
    let mut bad = Vec::new();
    for n in 1..=5 {
        for k in 1..=n {
            let row = uniform_quotient_census(k, n, &limits).unwrap();
            if row.missing != 0 {
                bad.push(format!("(k,n)=({k},{n}) misses {}", row.missing));
            }
        }
    }
    let row = uniform_quotient_census(3, 6, &limits).unwrap();
    let pi = DecoratedPermutation::uniform(3, 6);
    let witnesses: BTreeSet<DecoratedPermutation> = row.witnesses.iter().cloned().collect();
    let expected: BTreeSet<DecoratedPermutation> = [p("6,5,2,1,4,3"), p("4,1,6,3,2,5")].into_iter().collect();
    if witnesses != expected {
        bad.push(format!("(3,6) witnesses {:?}", row.witnesses));
    }
    if shift_left(&pi, IndexSet::of(&[1, 3, 5])) != p("6,5,2,1,4,3")
        || shift_left(&pi, IndexSet::of(&[2, 4, 6])) != p("4,1,6,3,2,5")
    {
        bad.push("(3,6) witnesses are not the shifts by {1,3,5}, {2,4,6}".into());
    }
    check(
        bad.is_empty(),
        "no missing covers for n <= 5; (3,6) misses exactly 652143 = shift by {1,3,5}, 416325 = shift by {2,4,6}",
        format!("{bad:?}"),
    )
}

fn random_matroid(rng: &mut ChaCha8Rng, rows: usize, n: usize) -> Option<Matroid> {
    let entries = (0..rows * n).map(|_| rng.gen_range(-2i64..=2)).collect();
    SmallIntMatrix::new(rows, n, entries).unwrap().matroid().ok().filter(|m| m.rank() == rows)
}

fn quotient_cross_validation() -> Verdict {
    let mut disagreements = 0usize;
    let mut exhaustive = 0usize;
    for n in 1..=5 {
        let ms: Vec<Matroid> = enumerate_decorated(n, None, 10).unwrap().iter().map(|p| p.positroid()).collect();
        let duals: Vec<Matroid> = ms.iter().map(Matroid::dual).collect();
        for i in 0..ms.len() {
            for j in 0..ms.len() {
                let d = is_quotient(&ms[i], &ms[j]).unwrap();
                exhaustive += 1;
                if d != is_quotient_by_rank(&ms[i], &ms[j]).unwrap() || d != is_quotient(&duals[j], &duals[i]).unwrap()
                {
                    disagreements += 1;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut random = 0usize;
    while random < 10_000 {
        let n = rng.gen_range(1..=7);
        let upper_rank = rng.gen_range(1..=n);
        let lower_rank = rng.gen_range(1..=n);
        let pair = if random.is_multiple_of(2) {
            // rows of the lower matrix are combinations of the upper rows
            let lower_rank = lower_rank.min(upper_rank);
            let a: Vec<i64> = (0..upper_rank * n).map(|_| rng.gen_range(-2i64..=2)).collect();
            let b: Vec<i64> = (0..lower_rank * upper_rank).map(|_| rng.gen_range(-2i64..=2)).collect();
            let a = SmallIntMatrix::new(upper_rank, n, a).unwrap();
            let b = SmallIntMatrix::new(lower_rank, upper_rank, b).unwrap();
            match (b.mul(&a).matroid(), a.matroid()) {
                (Ok(l), Ok(u)) if l.rank() == lower_rank && u.rank() == upper_rank => Some((l, u)),
                _ => None,
            }
        } else {
            random_matroid(&mut rng, lower_rank, n).zip(random_matroid(&mut rng, upper_rank, n))
        };
        let Some((lower, upper)) = pair else { continue };
        random += 1;
        let d = is_quotient(&lower, &upper).unwrap();
        if d != is_quotient_by_rank(&lower, &upper).unwrap() || d != is_quotient(&upper.dual(), &lower.dual()).unwrap()
        {
            disagreements += 1;
        }
    }
    check(
        disagreements == 0,
        format!("{exhaustive} exhaustive positroid pairs (n <= 5) and {random} random matroid pairs (n <= 7), zero disagreements"),
        format!("{disagreements} disagreements"),
    )
}

fn round_trips() -> Verdict {
    let mut bad = 0usize;
    let mut total = 0usize;
    for n in 1..=6 {
        for pi in enumerate_decorated(n, None, 10).unwrap() {
            total += 1;
            let necklace = pi.necklace();
            let m = bases_from_necklace(&necklace).unwrap();
            let ok = necklace.to_permutation() == pi
                && necklace_from_matroid(&m) == necklace
                && perm_from_matroid(&m).as_ref() == Ok(&pi)
                && (n != 6 || (1..=6).all(|i| pi.weak_excedances(i).len() == pi.rank()));
            bad += usize::from(!ok);
        }
    }
    check(
        bad == 0,
        format!("{total} decorated permutations (n <= 6) round-trip; |W_i| constant on D_6"),
        format!("{bad} failures"),
    )
}

fn inverse_identity() -> Verdict {
    let mut bad = Vec::new();
    let mut cases = 0usize;
    for n in 1..=8 {
        for k in 0..=n {
            let pi = DecoratedPermutation::uniform(k, n);
            for a in IndexSet::all_subsets(n) {
                let b = IndexSet::from_elements(n, a.iter().map(|v| pi.position_of(v))).unwrap();
                cases += 1;
                if shift_right(&pi, a).inverse() != shift_left(&DecoratedPermutation::uniform(n - k, n), b) {
                    bad.push(format!("k={k} n={n} A={a}"));
                }
            }
        }
    }
    check(bad.is_empty(), format!("{cases} (k, n, A) cases with n <= 8"), format!("{:?}", &bad[..bad.len().min(5)]))
}

fn realization() -> Verdict {
    let mut cases = 0usize;
    let mut bad = Vec::new();
    for n in 1..=7usize {
        let sets: [Vec<i64>; 3] = [
            (1..=n as i64).collect(),
            (0..n as u32).map(|i| 2i64.pow(i)).collect(),
            (1..=n as i64).map(|i| i * i + 3).collect(),
        ];
        for k in 1..=4.min(n) {
            for points in &sets {
                let big: Vec<BigInt> = points.iter().map(|&x| BigInt::from(x)).collect();
                let report = RealizationReport::verify(&realize_uniform(k, n, &big).unwrap(), &big);
                let rational: Vec<BigRational> = points.iter().map(|&x| BigRational::from_integer(x.into())).collect();
                let exact = RealizationReport::verify(&realize_uniform(k, n, &rational).unwrap(), &rational);
                cases += 1;
                if !report.holds() || !exact.holds() {
                    bad.push(format!("k={k} n={n} {points:?}"));
                }
            }
        }
    }
    check(
        bad.is_empty(),
        format!("{cases} realizations (k <= 4, n <= 7, 3 point sets), all minors positive"),
        format!("{bad:?}"),
    )
}

fn counterexample() -> Verdict {
    let lower = parse_necklace("(1,3,3,1)").unwrap();
    let upper = parse_necklace("(12,23,34,41)").unwrap();
    let contained = lower.is_contained_in(&upper);
    let (lm, um) = (bases_from_necklace(&lower).unwrap(), bases_from_necklace(&upper).unwrap());
    let quotient = is_quotient(&lm, &um).unwrap();
    let uncovered = uncovered_circuits(&lm, &um).unwrap();
    check(
        contained && !quotient && uncovered.contains(&IndexSet::of(&[2, 3, 4])),
        format!("(1,3,3,1) ⊆ (12,23,34,41) componentwise, not a quotient; uncovered circuits {uncovered:?}"),
        format!("contained={contained} quotient={quotient} uncovered={uncovered:?}"),
    )
}

fn conjectures() -> Verdict {
    let mut lines = Vec::new();
    let mut ok = true;
    for n in 1..=5 {
        let poset = build_poset(n, 10).unwrap();
        let violations = check_necklace_containment(&poset);
        let report = check_shift_conjecture(&poset);
        ok &= violations.is_empty() && report.covers_without_witness.is_empty();
        lines.push(format!(
            "n={n}: {} covers, {} containment violations, {} without witness ({} without one inside [k])",
            report.covers_checked,
            violations.len(),
            report.covers_without_witness.len(),
            report.covers_without_prefix_witness.len()
        ));
    }
    let p6 = p("6,5,2,1,4,3");
    ok &= shift_witnesses(&p6, &DecoratedPermutation::uniform(3, 6)).contains(&IndexSet::of(&[1, 3, 5]));
    check(ok, lines.join("; "), lines.join("; "))
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("uniform-quotient census", census_table),
        ("Mobius values", mobius_values),
        ("poset on [3]", poset_on_three),
        ("circuit formula vs brute force", circuit_oracle),
        ("worked examples", worked_examples),
        ("converse for small n", converse_small),
        ("quotient test cross-validation", quotient_cross_validation),
        ("bijection round trips", round_trips),
        ("inverse/shift identity", inverse_identity),
        ("Vandermonde realization", realization),
        ("necklace containment counterexample", counterexample),
        ("conjecture checkers", conjectures),
    ];
    let mut unexpected = 0;
    for (idx, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = run();
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match verdict {
            Pass(d) => ("PASS", d),
            KnownFail(d) => ("FAIL (documented)", d),
            Fail(d) => {
                unexpected += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} [{name}] {tag}: {detail} ({secs:.2}s)", idx + 1);
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
