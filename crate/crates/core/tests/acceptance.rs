//! Acceptance run: one line per criterion, exit status 1 if any fails.
//!
//! Expected values are written out here by hand (weights in doubled
//! coordinates) rather than read back from the library's own constants.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use bottforge::bott::is_singular_by_coordinates;
use bottforge::rep::{
    decompose_character, freudenthal_multiplicities, irrep_sum_dimension, tensor_irreps,
    weyl_dimension,
};
use bottforge::report::{run_verify, Lemma, Status, VerifyOptions};
use bottforge::tilting::{verify_pretilting_u, verify_tilting_t};
use bottforge::total_space::{sym_dual_spinor, sym_g1_cohomology};
use bottforge::{x_cohomology, DimInterval, LeviBundle, Quadric, Weight};
use common::*;
use proptest::prelude::*;
use proptest::test_runner::TestRunner;

type Outcome = Result<String, String>;

fn w(doubled: [i64; 3]) -> Weight {
    Weight::from_doubled(doubled.to_vec()).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn report_passes(lemma: Lemma, opts: &VerifyOptions) -> Result<(), String> {
    let r = run_verify(lemma, opts).map_err(|e| e.to_string())?;
    ensure(
        r.status == Status::Pass && r.count(Status::Unverified) == 0,
        || format!("verify {} reported {}", lemma.id(), r.status.as_str()),
    )
}

/// Single multiplicity-one summand with the given weight.
fn is_irreducible(b: &LeviBundle, expected: &Weight) -> bool {
    b.components().len() == 1 && b.components().get(expected) == Some(&1)
}

/// `(i, j, k, dim)` for every nonzero positive-degree group in the scan.
fn higher_groups(
    q: &Quadric,
    ks: std::ops::RangeInclusive<i64>,
    js: std::ops::RangeInclusive<i64>,
    bundle: impl Fn(i64, i64) -> LeviBundle,
) -> Vec<(usize, i64, i64, u64)> {
    let mut out = Vec::new();
    for k in ks {
        for j in js.clone() {
            let t = q.cohomology(&bundle(k, j));
            for (&i, row) in &t.rows {
                if i > 0 && row.dim > 0 {
                    out.push((i, j, k, row.dim));
                }
            }
        }
    }
    out
}

fn criterion_1(q: &Quadric) -> Outcome {
    let expected_pairs: BTreeSet<(i64, i64)> = [
        (0, -4),
        (0, -3),
        (0, -2),
        (0, -1),
        (1, -4),
        (1, -3),
        (1, -2),
        (2, -4),
        (2, -3),
        (3, -4),
    ]
    .into();
    let expected_weights: BTreeSet<Weight> = [
        [-8, 0, 0],
        [-6, 0, 0],
        [-4, 0, 0],
        [-2, 0, 0],
        [-5, 1, 1],
        [-3, 1, 1],
        [-1, 1, 1],
        [-2, 2, 2],
        [0, 2, 2],
        [1, 3, 3],
    ]
    .into_iter()
    .map(w)
    .collect();

    for k in 0..=10 {
        for j in -4..=4 {
            let b = q.twist(&sym_dual_spinor(q, k as usize), k + j);
            ensure(is_irreducible(&b, &w([3 * k + 2 * j, k, k])), || {
                format!(
                    "Sym^{k} S* (x) O({}) is not ({}/2, {k}/2, {k}/2)",
                    k + j,
                    3 * k + 2 * j
                )
            })?;
        }
    }
    let bad = higher_groups(q, 0..=10, -4..=4, |k, j| {
        q.twist(&sym_dual_spinor(q, k as usize), k + j)
    });
    ensure(bad.is_empty(), || {
        format!("nonzero higher cohomology {bad:?}")
    })?;

    let mut pairs = BTreeSet::new();
    let mut weights = BTreeSet::new();
    for k in 0..=3 {
        for j in -4..=-1 {
            let lambda = w([3 * k + 2 * j, k, k]);
            if !q.group().is_g_dominant(&lambda) {
                ensure(is_singular_by_coordinates(q.group(), &lambda), || {
                    format!("{lambda} is regular")
                })?;
                pairs.insert((k, j));
                weights.insert(lambda);
            }
        }
    }
    ensure(pairs == expected_pairs, || format!("singular pairs {pairs:?}"))?;
    ensure(weights == expected_weights, || {
        "singular weights differ".into()
    })?;
    report_passes(Lemma::Bbw1, &VerifyOptions::default())?;
    Ok("99 cells vanish; 10 singular pairs match".into())
}

fn criterion_2(q: &Quadric) -> Outcome {
    let s = q.dual_spinor();
    let bad = higher_groups(q, 0..=10, -3..=4, |k, j| {
        q.twist(
            &q.tensor_bundles(&sym_dual_spinor(q, k as usize), &s),
            k + j,
        )
    });
    ensure(bad == vec![(1, -3, 1, 1)], || format!("exceptions {bad:?}"))?;
    let t = q.cohomology(&q.tensor_bundles(&s, &q.twist(&s, -2)));
    ensure(t.rows.len() == 1 && t.dim(1) == 1, || {
        format!("S* (x) S*(-2): {t:?}")
    })?;
    report_passes(Lemma::Bbw2, &VerifyOptions::default())?;
    report_passes(Lemma::Bbw3, &VerifyOptions::default())?;
    Ok("only exception (i, j, k) = (1, -3, 1) with dim 1".into())
}

fn criterion_3(q: &Quadric) -> Outcome {
    let end_s = q.tensor_bundles(&q.dual_spinor(), &q.spinor());
    let bad = higher_groups(q, 0..=10, 0..=4, |k, j| {
        q.twist(
            &q.tensor_bundles(&sym_dual_spinor(q, k as usize), &end_s),
            k + j,
        )
    });
    ensure(bad.is_empty(), || {
        format!("nonzero higher cohomology {bad:?}")
    })?;
    report_passes(Lemma::Bbw4, &VerifyOptions::default())?;
    Ok("55 cells vanish in positive degree".into())
}

fn criterion_4(q: &Quadric) -> Outcome {
    let s = q.dual_spinor();
    let s2 = q.sym_bundle(&s, 2);
    for k in 1..=8i64 {
        let sym = sym_dual_spinor(q, k as usize);
        for j in -4..=4 {
            let c = 3 * k + 2 * j;
            let first: BTreeSet<Weight> = [
                [c + 1, k + 1, k + 1],
                [c + 1, k + 1, k - 1],
                [c + 1, k - 1, k - 1],
            ]
            .into_iter()
            .map(w)
            .collect();
            let second: BTreeSet<Weight> = if k == 1 {
                [[3 + 2 * j, 3, 3], [3 + 2 * j, 3, 1], [3 + 2 * j, 1, 1]]
                    .into_iter()
                    .map(w)
                    .collect()
            } else {
                [
                    [c, k + 2, k + 2],
                    [c, k + 2, k],
                    [c, k + 2, k - 2],
                    [c, k, k],
                    [c, k, k - 2],
                    [c, k - 2, k - 2],
                ]
                .into_iter()
                .map(w)
                .collect()
            };
            let a = q.twist(&q.tensor_bundles(&sym, &s), k + j);
            let b = q.twist(&q.tensor_bundles(&sym, &s2), k + j - 1);
            for (name, got, want) in [
                ("Sym^k S* (x) S*", &a, &first),
                ("Sym^k S* (x) Sym^2 S*", &b, &second),
            ] {
                let keys: BTreeSet<Weight> = got.components().keys().cloned().collect();
                ensure(keys == *want, || format!("{name} at k={k}, j={j}: {got}"))?;
                ensure(got.components().values().all(|&m| m == 1), || {
                    format!("{name} at k={k}, j={j} has multiplicities")
                })?;
            }
        }
    }
    Ok("both tables match for k in 1..=8, j in -4..=4, multiplicity-free".into())
}

/// Positive-degree entries of `Sym^k(G(1)) (x) F` that are not forced zero.
fn g1_exceptions(
    q: &Quadric,
    f: &LeviBundle,
    kmax: usize,
) -> Result<Vec<(usize, usize, DimInterval)>, String> {
    let mut out = Vec::new();
    for k in 0..=kmax {
        let col = sym_g1_cohomology(q, f, k).map_err(|e| e.to_string())?;
        for (i, d) in col.iter().enumerate().skip(1) {
            if !d.is_forced_zero() {
                out.push((i, k, *d));
            }
        }
    }
    Ok(out)
}

fn criterion_5(q: &Quadric) -> Outcome {
    let s = q.dual_spinor();
    for j in -4..=4 {
        let e = g1_exceptions(q, &q.line_bundle(j), 10)?;
        ensure(e.is_empty(), || format!("O({j}): {e:?}"))?;
    }
    for j in -3..=4 {
        let e = g1_exceptions(q, &q.twist(&s, j), 10)?;
        let want = if j == -3 {
            vec![(1, 1, DimInterval::exact(1))]
        } else {
            vec![]
        };
        ensure(e == want, || format!("S*({j}): {e:?}"))?;
    }
    let e = g1_exceptions(q, &q.tensor_bundles(&s, &q.spinor()), 10)?;
    ensure(e.is_empty(), || format!("S* (x) S: {e:?}"))?;
    report_passes(Lemma::Bbw2Lemma, &VerifyOptions::default())?;
    Ok("all forced zero except dim 1 at (1, -3, 1)".into())
}

fn criterion_6(q: &Quadric) -> Outcome {
    const KMAX: u32 = 40;
    let s = q.dual_spinor();
    let mut subjects: Vec<(String, LeviBundle)> = (-4..=4)
        .map(|j| (format!("O_X({j})"), q.line_bundle(j)))
        .collect();
    subjects.extend((-3..=4).map(|j| (format!("S*_X({j})"), q.twist(&s, j))));
    subjects.push(("S*_X (x) S_X".into(), q.tensor_bundles(&s, &q.spinor())));
    for (name, f) in &subjects {
        let g = x_cohomology(q, f, KMAX).map_err(|e| e.to_string())?;
        ensure(g.certified(), || {
            format!("{name}: no tail certificate within kmax")
        })?;
        ensure(g.all_forced(), || format!("{name}: open intervals"))?;
        let want = if name == "S*_X(-3)" {
            vec![(1, 1, DimInterval::exact(1))]
        } else {
            vec![]
        };
        ensure(g.higher_entries() == want, || {
            format!("{name}: {:?}", g.higher_entries())
        })?;
    }
    let u = verify_pretilting_u(q, KMAX).map_err(|e| e.to_string())?;
    ensure(u.uncertified_pairs.is_empty(), || {
        format!("uncertified {:?}", u.uncertified_pairs)
    })?;
    let only = u.nonzero.len() == 1 && {
        let e = &u.nonzero[0];
        e.source == "O_X(2)"
            && e.target == "S_X"
            && e.degree == 1
            && e.grade == 1
            && e.dim == DimInterval::exact(1)
    };
    ensure(only, || format!("higher Ext among U: {:?}", u.nonzero))?;
    report_passes(
        Lemma::Pretilting,
        &VerifyOptions {
            kmax: Some(KMAX),
            ..Default::default()
        },
    )?;
    Ok(format!(
        "{} subjects certified at kmax {KMAX}",
        subjects.len()
    ))
}

fn criterion_7(q: &Quadric) -> Outcome {
    let mut objects: Vec<LeviBundle> = (-2..=2).map(|a| q.line_bundle(a)).collect();
    objects.push(q.spinor());
    for e in &objects {
        for f in &objects {
            let t = q.ext_groups(e, f);
            ensure(t.higher_vanishes(), || format!("Ext({e}, {f}) = {t:?}"))?;
        }
    }
    report_passes(Lemma::Kapranov, &VerifyOptions::default())?;
    Ok("36 pairs, no higher Ext".into())
}

fn criterion_8(q: &Quadric) -> Outcome {
    let kmax = bottforge::report::DEFAULT_KMAX;
    let (t, td) = verify_tilting_t(q, kmax, true).map_err(|e| e.to_string())?;
    for r in [&t, &td] {
        ensure(r.vanishing_certified(), || {
            format!("{}: open {:?}", r.bundle, r.open)
        })?;
    }
    ensure(
        !t.hints_used.is_empty() && !td.hints_used.is_empty(),
        || "hint never used".into(),
    )?;
    let (a, ad) = verify_tilting_t(q, kmax, false).map_err(|e| e.to_string())?;
    let open = a.open.len() + ad.open.len();
    ensure(open > 0, || "ablation left nothing open".into())?;
    report_passes(Lemma::Tilting, &VerifyOptions::default())?;
    Ok(format!(
        "T and T* forced zero; without the hint {open} intervals stay open"
    ))
}

fn run_suite<S: Strategy>(
    name: &str,
    cases: u32,
    strategy: S,
    check: impl Fn(S::Value) -> Check,
) -> Result<(), String> {
    TestRunner::new(config(cases))
        .run(&strategy, check)
        .map_err(|e| format!("{name}: {e}"))
}

fn criterion_9() -> Outcome {
    run_suite("serre", 1_000, bundle(), |b| check_serre_duality(&b))?;
    run_suite(
        "tensor",
        300,
        (2usize..=3, weight_dominant(3, 2), weight_dominant(3, 2)),
        |(n, a, b)| check_tensor_dimensions(n, &a, &b),
    )?;
    run_suite(
        "sym/alt",
        300,
        (2usize..=3, weight_dominant(3, 1), 0usize..=4),
        |(n, w, k)| check_sym_alt_dimensions(n, &w, k),
    )?;
    run_suite(
        "freudenthal",
        300,
        (2usize..=3, weight_dominant(3, 4)),
        |(n, w)| check_freudenthal_mass(n, &w),
    )?;
    run_suite(
        "decompose",
        300,
        (
            2usize..=3,
            prop::collection::vec((weight_dominant(3, 3), 1u64..=2), 1..=3),
        ),
        |(n, parts)| check_decompose_inverts_expand(n, &parts),
    )?;
    run_suite(
        "bott",
        10_000,
        (2usize..=4).prop_flat_map(|n| weight_any(n, 10)),
        |w| check_bott_order_independent(&w),
    )?;
    Ok("six suites, zero failures".into())
}

fn criterion_10(q: &Quadric) -> Outcome {
    let r = q.group();
    let target = w([3, 1, 1]);
    let spin = w([1, 1, 1]);
    let vector = w([2, 0, 0]);
    let by_weyl = weyl_dimension(r, &target).map_err(|e| e.to_string())?;
    ensure(by_weyl == 48, || format!("Weyl formula gives {by_weyl}"))?;

    let ch_spin = freudenthal_multiplicities(r, &spin).map_err(|e| e.to_string())?;
    let ch_vec = freudenthal_multiplicities(r, &vector).map_err(|e| e.to_string())?;
    let product = ch_spin.product(&ch_vec);
    ensure(ch_spin.dimension() == 8 && ch_vec.dimension() == 7, || {
        "spin and vector dims".into()
    })?;
    let split = decompose_character(r, &product).map_err(|e| e.to_string())?;
    ensure(
        split.len() == 2 && split.get(&target) == Some(&1) && split.get(&spin) == Some(&1),
        || format!("8 x 7 splits as {split:?}"),
    )?;
    let by_split = product.dimension() - ch_spin.dimension();
    ensure(by_split == 48, || format!("8 * 7 - 8 = {by_split}"))?;
    let lr = tensor_irreps(r, &spin, &vector).map_err(|e| e.to_string())?;
    ensure(
        irrep_sum_dimension(r, &lr).map_err(|e| e.to_string())? == 56,
        || "tensor dimension".into(),
    )?;

    let col = sym_g1_cohomology(q, &q.structure_sheaf(), 1).map_err(|e| e.to_string())?;
    ensure(col[0] == DimInterval::exact(41), || {
        format!("h^0(G(1)) = {}", col[0])
    })?;
    ensure(col.iter().skip(1).all(|d| d.is_forced_zero()), || {
        "G(1) has higher cohomology".into()
    })?;
    let h0 = |b: &LeviBundle| q.cohomology(b).dim(0);
    let direct = h0(&q.twist(&q.dual_spinor(), 1)) - h0(&q.line_bundle(1));
    ensure(direct == 41, || format!("48 - 7 = {direct}"))?;
    Ok("dim 48 by Weyl and by 56 - 8; h^0(G(1)) = 41".into())
}

fn main() -> ExitCode {
    let q = Quadric::q5();
    type Criterion<'a> = (u32, Option<u64>, Box<dyn Fn() -> Outcome + 'a>);
    let criteria: Vec<Criterion> = vec![
        (1, Some(5), Box::new(|| criterion_1(&q))),
        (2, Some(5), Box::new(|| criterion_2(&q))),
        (3, Some(10), Box::new(|| criterion_3(&q))),
        (4, None, Box::new(|| criterion_4(&q))),
        (5, Some(20), Box::new(|| criterion_5(&q))),
        (6, Some(60), Box::new(|| criterion_6(&q))),
        (7, Some(2), Box::new(|| criterion_7(&q))),
        (8, Some(120), Box::new(|| criterion_8(&q))),
        (9, None, Box::new(criterion_9)),
        (10, None, Box::new(|| criterion_10(&q))),
    ];
    let mut failed = 0;
    for (id, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let over = limit.is_some_and(|s| elapsed > Duration::from_secs(s));
        let budget = limit.map(|s| format!(", limit {s} s")).unwrap_or_default();
        let (status, detail) = match (&outcome, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over time budget")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {id:>2}: {status} ({:.2} s{budget}) {detail}",
            elapsed.as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    } else {
        println!("all criteria passed");
        ExitCode::SUCCESS
    }
}
