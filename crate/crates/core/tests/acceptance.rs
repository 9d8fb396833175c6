//! Acceptance run: one PASS/FAIL line per criterion, each under a time bound.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use idensity::continuity::{
    baire_average, baire_constant, dirichlet, is_iac_at, is_iac_global, is_iac_global_pointwise,
    pointwise_test_points, semicontinuity_at, step_at_zero,
};
use idensity::corpus;
use idensity::density::{density_class, i_density_along, is_i_d_open, theta, DensityClass};
use idensity::ideal::{Fin, Ideal, NatDensityZero};
use idensity::limits::{i_liminf, i_limsup};
use idensity::oracle::{horizon_oracle_liminf, horizon_oracle_limsup, OracleConfig};
use idensity::piecewise::PiecewiseFunction;
use idensity::rational::{int, rat, to_f64, Rational};
use idensity::reproduce::ExampleRegistry;
use idensity::sets::{grid, RationalBorelSet};
use idensity::urysohn::{SeparatingFunction, Urysohn};
use num_traits::{One, Zero};
use rand::Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn ideals() -> [&'static dyn Ideal; 2] {
    [&Fin, &NatDensityZero]
}

fn example(id: &str) -> Outcome {
    let r = ExampleRegistry::builtin().get(id).ok_or("missing example")?.run().map_err(|e| e.to_string())?;
    let failed: Vec<&str> = r.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    ensure(failed.is_empty(), || format!("failed: {failed:?}"))?;
    Ok(format!("{} checks", r.checks.len()))
}

fn ex_2_3() -> Outcome {
    example("ex2.3")
}

fn ex_4_10() -> Outcome {
    example("ex4.10")
}

fn lebesgue_density() -> Outcome {
    let mut rng = corpus::rng(3);
    for i in 0..500 {
        let e = corpus::set(&mut rng);
        let t = theta(&e, &NatDensityZero);
        let m = e.symmetric_difference(&t).measure();
        ensure(m.is_zero(), || format!("case {i}: m(E △ Θ(E)) = {m} for {e}"))?;
    }
    Ok("500 sets".into())
}

fn density_algebra() -> Outcome {
    let mut rng = corpus::rng(4);
    let (mut checked, mut two_sided) = (0, 0);
    for i in 0..500 {
        let a = corpus::set(&mut rng);
        let b = corpus::set(&mut rng);
        let breaks: Vec<Rational> = a.breakpoints().iter().chain(b.breakpoints()).cloned().collect();
        let p = if !breaks.is_empty() && rng.gen_bool(0.7) {
            breaks[rng.gen_range(0..breaks.len())].clone()
        } else {
            corpus::rational(&mut rng, -4, 4, 8)
        };
        let g = corpus::generator(&mut rng, &p);
        let ideal = ideals()[i % 2];
        let d = |s: &RationalBorelSet| i_density_along(s, &g, ideal).map_err(|e| format!("case {i}: {e}"));
        let (da, db) = (d(&a)?, d(&b)?);
        let comp = d(&a.complement())?;
        // complement: upper(A) + lower(Aᶜ) = 1 and lower(A) + upper(Aᶜ) = 1
        ensure(&da.upper + &comp.lower == Rational::one() && &da.lower + &comp.upper == Rational::one(), || {
            format!("case {i}: complement identity fails for {a} at {p}")
        })?;
        ensure(da.two_sided.is_some() == (&da.upper + &comp.upper == Rational::one()), || {
            format!("case {i}: existence criterion fails for {a} at {p}")
        })?;
        checked += 1;
        // disjoint pair A and B ∖ A
        let rest = b.difference(&a);
        let dr = d(&rest)?;
        if let (Some(x), Some(y)) = (&da.two_sided, &dr.two_sided) {
            let du = d(&a.union(&rest))?;
            ensure(du.two_sided.as_ref() == Some(&(x + y)), || format!("case {i}: additivity fails at {p}"))?;
            two_sided += 1;
        }
        // nested pair A ∩ B ⊆ B
        let inner = a.intersect(&b);
        let di = d(&inner)?;
        if let (Some(x), Some(y)) = (&di.two_sided, &db.two_sided) {
            let dd = d(&b.difference(&inner))?;
            ensure(dd.two_sided.as_ref() == Some(&(y - x)), || format!("case {i}: difference fails at {p}"))?;
            two_sided += 1;
        }
        ensure(da.lower <= da.upper, || format!("case {i}: lower > upper"))?;
    }
    ensure(two_sided >= 250, || format!("only {two_sided} identities had both densities"))?;
    Ok(format!("{checked} cases, {two_sided} additive identities"))
}

fn topology() -> Outcome {
    let mut rng = corpus::rng(5);
    let ideal = &NatDensityZero;
    let mut open = Vec::new();
    for i in 0..200 {
        let s = match i % 4 {
            0 => corpus::set(&mut rng),
            1 => theta(&corpus::set(&mut rng), ideal),
            2 => corpus::natural_open(&mut rng),
            _ => theta(&corpus::set(&mut rng), ideal).difference(&RationalBorelSet::points(
                (0..3).map(|_| corpus::rational(&mut rng, -4, 4, 4)),
            )),
        };
        if s.is_natural_open() {
            ensure(is_i_d_open(&s, ideal), || format!("natural-open {s} fails"))?;
        }
        if is_i_d_open(&s, ideal) {
            open.push(s);
        }
    }
    ensure(is_i_d_open(&RationalBorelSet::empty(), ideal) && is_i_d_open(&RationalBorelSet::reals(), ideal), || {
        "trivial sets".into()
    })?;
    for w in open.windows(2) {
        ensure(is_i_d_open(&w[0].intersect(&w[1]), ideal), || format!("{} ∩ {}", w[0], w[1]))?;
        ensure(is_i_d_open(&w[0].union(&w[1]), ideal), || format!("{} ∪ {}", w[0], w[1]))?;
    }
    let all = open.iter().fold(RationalBorelSet::empty(), |acc, s| acc.union(s));
    ensure(is_i_d_open(&all, ideal), || "finite union".into())?;
    ensure(open.len() >= 100, || format!("only {} open members", open.len()))?;
    Ok(format!("{} open members", open.len()))
}

fn limit_properties() -> Outcome {
    let mut rng = corpus::rng(6);
    for ideal in ideals() {
        for i in 0..500 {
            let x = corpus::sequence(&mut rng);
            let y = corpus::sequence(&mut rng);
            let c = corpus::rational(&mut rng, -3, 3, 4);
            let e = |r: idensity::error::Result<Rational>| r.map_err(|e| format!("{}: case {i}: {e}", ideal.name()));
            let (sup, inf) = (e(i_limsup(&x, ideal))?, e(i_liminf(&x, ideal))?);
            ensure(inf <= sup, || format!("case {i}: liminf > limsup"))?;
            let shifted = x.add_constant(&c);
            ensure(e(i_limsup(&shifted, ideal))? == &sup + &c && e(i_liminf(&shifted, ideal))? == &inf + &c, || {
                format!("case {i}: shift")
            })?;
            ensure(e(i_limsup(&x.neg(), ideal))? == -&inf, || format!("case {i}: duality"))?;
            let sum = x.pointwise_add(&y).map_err(|e| e.to_string())?;
            let bound = &sup + e(i_limsup(&y, ideal))?;
            ensure(e(i_limsup(&sum, ideal))? <= bound, || format!("case {i}: subadditivity"))?;
        }
    }
    Ok("500 sequences per ideal".into())
}

fn oracle_equivalence() -> Outcome {
    let mut rng = corpus::rng(7);
    let cfg = OracleConfig::default();
    let mut worst = 0.0f64;
    for i in 0..200 {
        let x = corpus::sequence(&mut rng);
        for ideal in ideals() {
            let pairs = [
                (i_limsup(&x, ideal).map_err(|e| e.to_string())?, horizon_oracle_limsup(&x, ideal, &cfg)),
                (i_liminf(&x, ideal).map_err(|e| e.to_string())?, horizon_oracle_liminf(&x, ideal, &cfg)),
            ];
            for (engine, oracle) in pairs {
                let gap = (to_f64(&engine) - to_f64(&oracle)).abs();
                worst = worst.max(gap);
                ensure(gap <= cfg.delta + 1e-12, || {
                    format!("case {i} ({}): engine {engine} vs oracle {oracle}", ideal.name())
                })?;
            }
        }
    }
    Ok(format!("worst gap {worst:.2e}"))
}

fn function_corpus(seed: u64, count: usize) -> Vec<PiecewiseFunction> {
    let mut rng = corpus::rng(seed);
    let mut fs = vec![dirichlet(), step_at_zero(), PiecewiseFunction::identity()];
    while fs.len() < count {
        fs.push(corpus::function(&mut rng));
    }
    fs
}

fn two_routes() -> Outcome {
    let ideal = &NatDensityZero;
    let mut failing = 0;
    for (i, f) in function_corpus(8, 100).iter().enumerate() {
        let by_levels = is_iac_global(f, ideal).map_err(|e| e.to_string())?;
        let by_points = is_iac_global_pointwise(f, ideal).map_err(|e| e.to_string())?;
        ensure(by_levels == by_points, || format!("function {i}: level sets {by_levels}, points {by_points}"))?;
        for p in pointwise_test_points(f).map_err(|e| e.to_string())? {
            let at = is_iac_at(f, &p, ideal).holds;
            let semi = semicontinuity_at(f, &p, ideal).map_err(|e| e.to_string())?;
            ensure(at == (semi.upper && semi.lower), || format!("function {i} at {p}: semicontinuity disagrees"))?;
        }
        failing += usize::from(!by_levels);
    }
    ensure(!is_iac_global(&dirichlet(), ideal).unwrap(), || "Dirichlet passes".into())?;
    ensure(is_iac_global(&PiecewiseFunction::identity(), ideal).unwrap(), || "identity fails".into())?;
    Ok(format!("100 functions, {failing} not I-AC"))
}

fn baire() -> Outcome {
    let ideal = &NatDensityZero;
    let ns = [10u64, 100, 1000, 10_000];
    let mut points = 0;
    for (i, f) in function_corpus(9, 60).iter().enumerate() {
        let mut candidates: BTreeSet<Rational> = f.breakpoints().into_iter().collect();
        let extra: Vec<Rational> = candidates.iter().map(|b| b + rat(1, 8)).collect();
        candidates.extend(extra);
        candidates.insert(int(0));
        for r in candidates.into_iter().filter(|r| is_iac_at(f, r, ideal).holds) {
            let c = baire_constant(f, &r).map_err(|e| e.to_string())?;
            let v = f.eval(&r);
            for n in ns {
                let avg = baire_average(f, &r, n).map_err(|e| e.to_string())?;
                let err = if avg > v { &avg - &v } else { &v - &avg };
                ensure(err <= &c / int(n as i64), || format!("function {i} at {r}, n = {n}: error {err} > {c}/{n}"))?;
            }
            points += 1;
        }
    }
    let d = dirichlet();
    let half = rat(1, 2);
    ensure(d.eval(&half) == Rational::one(), || "Dirichlet value".into())?;
    for n in ns {
        let avg = baire_average(&d, &half, n).map_err(|e| e.to_string())?;
        ensure(avg.is_zero(), || format!("Dirichlet average {avg} at n = {n}"))?;
    }
    Ok(format!("{points} I-AC points"))
}

fn dyadic_betas() -> Vec<Rational> {
    let set: BTreeSet<Rational> =
        (0..=6).flat_map(|l| (1i64 << l..=4i64 << l).map(move |n| rat(n, 1i64 << l))).collect();
    set.into_iter().collect()
}

fn nesting(u: &Urysohn, betas: &[Rational]) -> Result<(), String> {
    for w in betas.windows(2) {
        let (a, b) = (u.q_beta(&w[0]), u.q_beta(&w[1]));
        ensure(a.is_subset(&b.natural_interior()), || format!("Q_{} not inside Q_{}", w[0], w[1]))?;
        for x in a.breakpoints() {
            ensure(density_class(&b, x) == DensityClass::AllGeneratorsOne, || format!("density at {x}"))?;
        }
    }
    Ok(())
}

fn separating() -> Outcome {
    let mut rng = corpus::rng(10);
    let ideal = &NatDensityZero;
    let points = grid(&int(-6), &int(6), &rat(12, 1000));
    let betas = dyadic_betas();
    for i in 0..50 {
        let f = corpus::natural_closed(&mut rng);
        let p0 = loop {
            let p = corpus::rational(&mut rng, -6, 6, 8);
            if !f.contains(&p) {
                break p;
            }
        };
        let s = SeparatingFunction::new(&f, &p0, Rational::one()).map_err(|e| format!("case {i}: {e}"))?;
        let report = s.verify(&points, ideal);
        ensure(report.ok(), || format!("case {i}: F = {f}, p0 = {p0}, failures at {:?}", report.failures))?;
        nesting(&s.g1, &betas).map_err(|e| format!("case {i}: {e}"))?;
        nesting(&s.g2, &betas).map_err(|e| format!("case {i}: {e}"))?;
    }
    Ok(format!("50 pairs, {} grid points", points.len()))
}

struct Criterion {
    title: &'static str,
    bound: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { title: "example 2.3 reproduction", bound: Duration::from_secs(1), run: ex_2_3 },
        Criterion { title: "example 4.10 reproduction", bound: Duration::from_secs(1), run: ex_4_10 },
        Criterion { title: "Lebesgue density theorem", bound: Duration::from_secs(10), run: lebesgue_density },
        Criterion { title: "density algebra identities", bound: Duration::from_secs(30), run: density_algebra },
        Criterion { title: "topology axioms", bound: Duration::from_secs(10), run: topology },
        Criterion { title: "limit properties", bound: Duration::from_secs(30), run: limit_properties },
        Criterion { title: "oracle equivalence", bound: Duration::from_secs(60), run: oracle_equivalence },
        Criterion { title: "two-route continuity agreement", bound: Duration::from_secs(30), run: two_routes },
        Criterion { title: "Baire averaging", bound: Duration::from_secs(10), run: baire },
        Criterion { title: "separating function", bound: Duration::from_secs(30), run: separating },
    ];
    let mut failed = 0;
    for (i, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = (c.run)();
        let took = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if took <= c.bound => (true, d),
            Ok(d) => (false, format!("{d}; over the time bound")),
            Err(e) => (false, e),
        };
        failed += usize::from(!ok);
        println!(
            "{} {:>2} {:<32} {:>8.3}s (bound {}s)  {}",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            c.title,
            took.as_secs_f64(),
            c.bound.as_secs(),
            detail
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
