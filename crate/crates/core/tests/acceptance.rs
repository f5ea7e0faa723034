//! Acceptance suite: one line per criterion, nonzero exit if any fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use rand::Rng;

use common::{builtin_families, random_fjm, rational_product_norm_oracle, rng};
use shiftdyn::criteria::{
    check_chaos_equiv, check_disjoint, check_f_transitivity, check_fhc, check_star_condition, lower_density,
    CheckOptions, FurstenbergFamily, Holds, ReturnSet, SeriesVerdict,
};
use shiftdyn::dynamics::products::forward_product_norm_dense;
use shiftdyn::dynamics::{
    family_example_3_11, family_example_3_2, family_example_3_6, family_example_3_6_alternate, forward_product_norm,
    ApproximantFamily, Approximants, DisjointFamily, IncreasingSequence,
};
use shiftdyn::module::{make_fjm_vector, module_norm, Fill, FjmSpec};
use shiftdyn::operator::{FiniteOp, IndexWindow};
use shiftdyn::witness::{
    disjoint_witness, periodic_extension, periodicity_residual, return_set_scan, transitivity_witness,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Closed forms of `‖W_{i+l} ⋯ W_{i+1} P_m‖` for the rational weights.
fn stated_closed_form(i: i64, m: i64, l: i64) -> f64 {
    let (i, m, l) = (i as f64, m as f64, l as f64);
    if i >= 0.0 {
        (i + m + 1.0).powi(2) / ((i + 1.0) * (i + l + 1.0))
    } else {
        (m - i).powi(2) / ((-i) * (i + l + 1.0))
    }
}

fn criterion_1() -> Outcome {
    let w = family_example_3_2();
    let window = IndexWindow::new(80);
    let (mut worst, mut count) = (0.0f64, 0usize);
    let mut stated_gap = 0.0f64;
    for i in -10i64..=10 {
        for m in 1i64..=5 {
            // for i < 0 the factors below W_{-i} cancel, so the formula needs
            // l + 2i + 1 > m; on the wider range l > m - i only the two
            // numeric paths are compared
            let first = if i >= 0 { m + 1 } else { m - 2 * i };
            if i < 0 {
                for l in m - i + 1..first {
                    let pm = FiniteOp::projection(m as u32);
                    let exact = forward_product_norm(w.weights(), i, l as u64, &pm).map_err(err)?;
                    let svd = rational_product_norm_oracle(i, m, l);
                    worst = worst.max((exact - svd).abs());
                    stated_gap = stated_gap.max((exact - stated_closed_form(i, m, l)).abs());
                }
            }
            for l in first..first + 12 {
                let cf = stated_closed_form(i, m, l);
                let pm = FiniteOp::projection(m as u32);
                let exact = forward_product_norm(w.weights(), i, l as u64, &pm).map_err(err)?;
                let dense = forward_product_norm_dense(w.weights(), i, l as u64, &pm, window).map_err(err)?;
                worst = worst.max((exact - cf).abs()).max((dense - cf).abs());
                if l < first + 3 {
                    let svd = rational_product_norm_oracle(i, m, l);
                    worst = worst.max((svd - cf).abs());
                }
                count += 1;
            }
        }
    }
    ensure(worst < 1e-10, || format!("largest deviation {worst:e}"))?;
    Ok(format!(
        "{count} (i, m, l) triples, exact and dense paths, largest deviation {worst:.1e} \
         (for i < 0 with m - i < l ≤ m - 2i - 1 the formula is off by up to {stated_gap:.2})"
    ))
}

fn criterion_2() -> Outcome {
    let mut r = rng(2);
    let mut worst = 0.0f64;
    let mut cases = 0;
    for (name, shift) in builtin_families() {
        for _ in 0..3 {
            let spec = FjmSpec::new(r.random_range(1..=3), r.random_range(1..=3));
            let x = random_fjm(&mut r, spec);
            let back = shift.apply_s(&shift.apply_t(&x).map_err(err)?).map_err(err)?;
            let fwd = shift.apply_t(&shift.apply_s(&x).map_err(err)?).map_err(err)?;
            worst = worst.max(module_norm(&back.sub(&x)).map_err(err)?);
            worst = worst.max(module_norm(&fwd.sub(&x)).map_err(err)?);
            let mut step = x.clone();
            for n in 1..=20u64 {
                step = shift.apply_t(&step).map_err(err)?;
                let closed = shift.iterate_t(n, &x).map_err(err)?;
                let res = module_norm(&closed.sub(&step)).map_err(err)?;
                ensure(res < 1e-12, || format!("{name}: n = {n} residual {res:e}"))?;
                worst = worst.max(res);
            }
            cases += 1;
        }
    }
    ensure(worst < 1e-12, || format!("largest residual {worst:e}"))?;
    Ok(format!("{cases} random F_(J,m) inputs over every built-in family, largest residual {worst:.1e}"))
}

/// Sum of squared product norms with `W_{i+ln} ⋯ W_{i+1} P_m` from the
/// closed form where valid and the dense oracle otherwise.
fn oracle_square_sum(i: i64, m: i64, n: i64, terms: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(terms);
    let mut s = 0.0;
    for l in 1..=terms as i64 {
        let len = l * n;
        let valid = if i >= 0 { len > m } else { len + 2 * i + 1 > m };
        let t = if valid { stated_closed_form(i, m, len) } else { rational_product_norm_oracle(i, m, len) };
        s += t * t;
        out.push(s);
    }
    out
}

fn criterion_3() -> Outcome {
    let shift = family_example_3_2();
    let opts = CheckOptions::default();
    let nk = IncreasingSequence::arithmetic(1, 1, opts.k_count).map_err(err)?;
    let (j, m) = (2u32, 1u32);
    let v = check_fhc(&shift, j, m, &nk, &ApproximantFamily::default(), &opts).map_err(err)?;
    ensure(v.holds == Holds::Yes, || format!("check_fhc returned {:?}", v.holds))?;
    let fwd = v.table("forward").ok_or("missing forward table")?;
    let mut worst = 0.0f64;
    for (k, &n) in nk.terms().iter().enumerate() {
        for jj in -(j as i64)..=j as i64 {
            let rows: Vec<&Vec<_>> = fwd
                .rows
                .iter()
                .filter(|r| r[0].as_f64() as i64 == jj && r[1].as_f64() as usize == k)
                .collect();
            let oracle = oracle_square_sum(jj, m as i64, n as i64, opts.l_max);
            let mut prev = 0.0;
            for (row, bound) in rows.iter().zip(&oracle) {
                let s = row[4].as_f64();
                ensure(s >= prev, || format!("partial sums decrease at j = {jj}, k = {k}"))?;
                ensure(s <= bound * (1.0 + 1e-10), || format!("partial sum {s} above tail bound {bound}"))?;
                worst = worst.max((s - bound).abs() / bound);
                prev = s;
            }
        }
    }
    let unsquared: Vec<_> = v.series_with("forward_unsquared").collect();
    ensure(unsquared.iter().all(|s| s.verdict == SeriesVerdict::Diverges), || {
        "an unsquared forward series was not reported as diverging".into()
    })?;
    Ok(format!(
        "fhc Yes, partial sums within the analytic bound (rel. gap {worst:.1e}), {} unsquared series Diverges",
        unsquared.len()
    ))
}

fn criterion_4() -> Outcome {
    let opts = CheckOptions { l_max: 500, k_count: 8, ..CheckOptions::default() };
    let nk = IncreasingSequence::arithmetic(1, 1, 8).map_err(err)?;
    let approx = ApproximantFamily::default();
    let mut seen = Vec::new();
    for (name, shift) in [("example_3_2", family_example_3_2()), ("example_3_11(2)", family_example_3_11(2.0).map_err(err)?)]
    {
        let fhc = check_fhc(&shift, 1, 1, &nk, &approx, &opts).map_err(err)?.holds;
        let chaos = check_chaos_equiv(&shift, 1, 1, &nk, &approx, &opts).map_err(err)?.holds;
        ensure(!fhc.contradicts(chaos), || format!("{name}: fhc {fhc:?} vs chaos {chaos:?}"))?;
        seen.push(format!("{name} fhc {fhc:?} / chaos {chaos:?}"));
    }
    Ok(seen.join(", "))
}

fn witness_errors(family: &DisjointFamily, n: u64) -> Result<Vec<f64>, String> {
    let spec = FjmSpec::new(1, 1);
    let x = make_fjm_vector(spec, &Fill::Projection);
    let ys = vec![
        make_fjm_vector(spec, &Fill::Compressed(FiniteOp::projection(1).scaled(-0.5))),
        make_fjm_vector(spec, &Fill::Projection),
    ];
    let r = disjoint_witness(&family.shifts, spec, &x, &ys, n, &ApproximantFamily::projections(2), 0)
        .map_err(err)?;
    let mut e = vec![r.input_error];
    e.extend(r.output_errors);
    Ok(e)
}

fn criterion_5() -> Outcome {
    let fam = family_example_3_6();
    for m in 1..=5u32 {
        let r = check_star_condition(&fam.unitaries(), m, 2 * m as u64 + 1, 200).map_err(err)?;
        ensure(r.holds, || format!("star condition fails for m = {m}: {:?}", r.violation))?;
    }
    let nk = IncreasingSequence::new(vec![20, 40, 60]).map_err(err)?;
    let opts = CheckOptions { k_count: 3, ..CheckOptions::default() };
    let approx = ApproximantFamily::projections(2);
    let v = check_disjoint(&fam.shifts, 1, 1, &nk, &approx, &opts).map_err(err)?;
    ensure(v.holds == Holds::Yes, || format!("check_disjoint returned {:?}: {:?}", v.holds, v.notes))?;
    let t = v.table("disjoint").ok_or("missing table")?;
    // decay rates for m = 1 and even n, from the coefficient walk by hand
    let expected = |col: &str, n: f64| match col {
        "fwd_1" | "bwd_1" => Some(2f64.powf(2.0 - n)),
        "fwd_2" | "bwd_2" => Some(9f64.powf(1.0 - n)),
        "cross_1_2" => Some(9.0 * (2.0f64 / 9.0).powf(n)),
        "cross_2_1" => Some(9.0 * 2f64.powf(-n)),
        _ => None,
    };
    for row in &t.rows {
        let n = row[2].as_f64();
        for (c, name) in t.columns.iter().enumerate().skip(3) {
            let got = row[c].as_f64();
            if n == 60.0 {
                ensure(got < 1e-6, || format!("{name} = {got:e} at n_k = 60"))?;
            }
            if let Some(want) = expected(name, n) {
                ensure((got - want).abs() <= 1e-12 * want, || format!("{name} at n = {n}: {got:e} vs {want:e}"))?;
            }
        }
    }
    let mut prev: Option<Vec<f64>> = None;
    for n in [20, 40, 60] {
        let e = witness_errors(&fam, n)?;
        if let Some(p) = &prev {
            ensure(e.iter().zip(p).all(|(a, b)| a < b), || format!("witness errors do not decrease at n = {n}"))?;
        }
        if n == 60 {
            ensure(e.iter().all(|x| *x < 1e-4), || format!("witness errors {e:?} at n = 60"))?;
        }
        prev = Some(e);
    }
    let alt = family_example_3_6_alternate();
    for m in 1..=5u32 {
        ensure(check_star_condition(&alt.unitaries(), m, alt.nm(m), 200).map_err(err)?.holds, || {
            format!("alternate pair fails the star condition at m = {m}")
        })?;
    }
    let va = check_disjoint(&alt.shifts, 1, 1, &nk, &approx, &opts).map_err(err)?;
    ensure(va.holds == v.holds, || format!("alternate unitaries give {:?}", va.holds))?;
    Ok(format!(
        "star holds for m ≤ 5, disjoint Yes with decay rates matched, witness max error {:.1e} at n_k = 60, same verdict for ({})",
        prev.unwrap().iter().fold(0.0f64, |a, b| a.max(*b)),
        alt.unitary_label
    ))
}

fn criterion_6() -> Outcome {
    let alpha = 2.0f64;
    let shift = family_example_3_11(alpha).map_err(err)?;
    let (j, m, eps, horizon) = (1u32, 1u32, 0.1, 200u64);
    let tn = IncreasingSequence::arithmetic(1, 1, horizon as usize).map_err(err)?;
    let approx = ApproximantFamily::default();
    let v = check_f_transitivity(&shift, &tn, j, m, FurstenbergFamily::Cof, &approx, eps, horizon).map_err(err)?;
    ensure(v.holds == Holds::Yes, || format!("check_f_transitivity returned {:?}", v.holds))?;
    let fwd = v.table("ftrans").and_then(|t| t.column("fwd")).ok_or("missing ftrans table")?;
    for (idx, got) in fwd.iter().enumerate() {
        let want = alpha.powi(2 * m as i32 - (idx as i32 + 1));
        ensure((got - want).abs() <= 1e-12 * want, || format!("forward norm at n = {}: {got} vs {want}", idx + 1))?;
    }

    let spec = FjmSpec::new(j, m);
    let x = make_fjm_vector(spec, &Fill::Projection);
    let scale = module_norm(&x).map_err(err)?.max(1.0);
    // smallest n with α^{2m-n} below the per-entry budget eps / (2(2J+1)·scale)
    let budget = eps / (2.0 * (2 * j + 1) as f64 * scale);
    let n0 = (2.0 * m as f64 + (1.0 / budget).log(alpha)).floor() as u64;
    ensure(n0 <= 30, || format!("n0 = {n0}"))?;
    let rs = return_set_scan(&shift, spec, &x, &x, eps, horizon, &approx).map_err(err)?;
    let missing: Vec<u64> = (n0 + 1..=horizon).filter(|n| !rs.contains(*n)).collect();
    ensure(missing.is_empty(), || format!("not certified beyond n0 = {n0}: {missing:?}"))?;
    let d = lower_density(&rs);
    ensure(d >= 0.8, || format!("lower density {d}"))?;
    Ok(format!("Cof-transitive, certified for all n > n0 = {n0}, lower density {d}"))
}

fn criterion_7() -> Outcome {
    let mut r = rng(7);
    let mut worst = 0.0f64;
    for (name, shift) in [("example_3_2", family_example_3_2()), ("example_3_11(2)", family_example_3_11(2.0).map_err(err)?)]
    {
        for n in [3u64, 4, 6] {
            let block = random_fjm(&mut r, FjmSpec::new(1, 1));
            let ext = periodic_extension(&shift, &block, n, 20).map_err(err)?;
            let res = periodicity_residual(&shift, &ext.vector, n, ext.interior).map_err(err)?;
            // the same residual through n single steps
            let stepped = shift.iterate_t_stepwise(n, &ext.vector).map_err(err)?;
            let res2 = module_norm(&stepped.sub(&ext.vector).restrict(ext.interior)).map_err(err)?;
            ensure(res < 1e-10 && res2 < 1e-10, || format!("{name}, n = {n}: residual {res:e} / {res2:e}"))?;
            worst = worst.max(res).max(res2);
        }
    }
    Ok(format!("largest interior residual {worst:.1e}"))
}

fn random_set(r: &mut impl Rng, horizon: u64) -> ReturnSet {
    match r.random_range(0..4) {
        0 => {
            let p: f64 = r.random();
            ReturnSet::new((0..=horizon).filter(|_| r.random_bool(p)), horizon)
        }
        1 => {
            let from = r.random_range(0..=horizon);
            ReturnSet::new((0..=horizon).filter(|n| *n >= from || r.random_bool(0.3)), horizon)
        }
        2 => {
            let step = r.random_range(1..6u64);
            ReturnSet::new((0..=horizon).filter(|n| n % step == 0), horizon)
        }
        _ => {
            let k = r.random_range(0..60);
            ReturnSet::new((0..k).map(|_| r.random_range(0..=horizon)), horizon)
        }
    }
}

fn criterion_8() -> Outcome {
    let mut r = rng(8);
    let horizon = 1000;
    let mut accepted = [0usize; 3];
    for _ in 0..1000 {
        let set = random_set(&mut r, horizon);
        let delta: f64 = r.random_range(0.01..=1.0);
        let families = [FurstenbergFamily::Cof, FurstenbergFamily::lower_density(delta).map_err(err)?, FurstenbergFamily::Inf];
        let verdicts: Vec<bool> = families.iter().map(|f| f.accepts(&set)).collect();
        ensure(!verdicts[0] || verdicts[1], || "Cof accepted a set LowerDensity rejected".into())?;
        ensure(!verdicts[1] || verdicts[2], || "LowerDensity accepted a set Inf rejected".into())?;
        let extra = ReturnSet::new((0..40).map(|_| r.random_range(0..=horizon)), horizon);
        let sup = set.union(&extra);
        for (f, v) in families.iter().zip(&verdicts) {
            ensure(!v || f.accepts(&sup), || format!("{} is not hereditary upward", f.label()))?;
        }
        for (a, v) in accepted.iter_mut().zip(&verdicts) {
            *a += *v as usize;
        }
    }
    let evens = ReturnSet::new((0..=horizon).filter(|n| n % 2 == 0), horizon);
    let d = lower_density(&evens);
    ensure((d - 0.5).abs() <= 0.01, || format!("lower density of the evens {d}"))?;
    Ok(format!(
        "1000 random sets (accepted: cof {}, lower density {}, inf {}), density of evens {d:.4}",
        accepted[0], accepted[1], accepted[2]
    ))
}

fn perturbed(seed: u64, size: f64) -> Approximants {
    Approximants::func(move |j, k, m| {
        let mut r = rng(seed ^ ((j as u64) << 20) ^ k as u64);
        let m = m as i64;
        let noise = FiniteOp::from_entries(
            (-m..=m).flat_map(|a| (-m..=m).map(move |b| (a, b))).map(|rc| (rc, size * r.random_range(-1.0..1.0))),
        );
        FiniteOp::projection(m as u32).add_signed(&noise, 1.0)
    })
}

fn criterion_9() -> Outcome {
    let mut r = rng(9);
    let (mut premise, mut violations, mut trials) = (0usize, 0usize, 0usize);
    for (name, shift) in [("example_3_2", family_example_3_2()), ("example_3_11(2)", family_example_3_11(2.0).map_err(err)?)]
    {
        for _ in 0..100 {
            let spec = FjmSpec::new(r.random_range(1..=3), r.random_range(1..=3));
            let x = random_fjm(&mut r, spec);
            let y = random_fjm(&mut r, spec);
            let eps = r.random_range(0.05..2.0);
            let t = r.random_range(2 * spec.j as u64 + 1..=400);
            let size = if r.random_bool(0.5) { 0.0 } else { 10f64.powf(r.random_range(-6.0..-1.0)) };
            let approx = ApproximantFamily { d: perturbed(r.random(), size), g: vec![perturbed(r.random(), size)] };
            let w = transitivity_witness(&shift, spec, &x, &y, t, &approx, 0).map_err(err)?;
            trials += 1;
            if w.premise_holds(eps) {
                premise += 1;
                if !w.within(eps) {
                    violations += 1;
                    eprintln!("{name}: t = {t}, eps = {eps}, errors {} {:?}", w.input_error, w.output_errors);
                }
            }
        }
    }
    ensure(violations == 0, || format!("{violations} violations among {premise} premise cases"))?;
    ensure(premise > 0, || "the premise never held".into())?;
    Ok(format!("{trials} trials, premise held in {premise}, zero violations"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("closed-form product norms", criterion_1),
        ("algebraic identities", criterion_2),
        ("FHC verdicts", criterion_3),
        ("chaos and FHC coherence", criterion_4),
        ("disjoint hypercyclicity", criterion_5),
        ("mixing", criterion_6),
        ("periodic points", criterion_7),
        ("Furstenberg family laws", criterion_8),
        ("witness soundness", criterion_9),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail} ({secs:.2}s)", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} ({secs:.2}s)", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
