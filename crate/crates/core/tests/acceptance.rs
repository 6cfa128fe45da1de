//! Runs every acceptance criterion at zero tolerance and prints one line per
//! criterion. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use strickland_lab::abelian::is_prime;
use strickland_lab::actions::enumerate_action_classes;
use strickland_lab::divisors::{
    component_count_closed_form, count_components, enumerate_components, fiber_partition_check,
    rank_identity_check,
};
use strickland_lab::honda::{
    chern_subring_rank, expected_subring_rank, i_series, stirling_divisibility, TruncPoly,
};
use strickland_lab::linalg::{smith_normal_form, IntegerMatrix};
use strickland_lab::perm::{all_perms, centralizer_order, orbits};
use strickland_lab::wreath::{
    diagram_check, induce, inner_product, norm_pullback_bijectivity, restrict, surjections_onto,
    verify_height0, ClassFunction, WreathProduct, YoungSubgroup,
};
use strickland_lab::{FiniteAbelianGroup, Int, Rational};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn small_bases() -> Vec<FiniteAbelianGroup> {
    vec![
        FiniteAbelianGroup::trivial(),
        FiniteAbelianGroup::cyclic(2),
        FiniteAbelianGroup::cyclic(3),
        FiniteAbelianGroup::cyclic(4),
        FiniteAbelianGroup::new(vec![2, 2]).unwrap(),
    ]
}

/// `(A, n)` with `|A|^n n! ≤ 10^6`.
fn height_one_grid() -> Vec<(FiniteAbelianGroup, usize)> {
    let mut out = Vec::new();
    for a in small_bases() {
        for n in 2..=4usize {
            let fact: u128 = (1..=n as u128).product();
            if (a.order() as u128).pow(n as u32) * fact <= 1_000_000 {
                out.push((a.clone(), n));
            }
        }
    }
    out
}

fn rank_identity() -> Outcome {
    let mut oracle_runs = 0;
    for p in [2, 3] {
        for k in 1..=2 {
            for d in 1..=3 {
                let r = rank_identity_check(p, k, d).map_err(|e| e.to_string())?;
                ensure(r.holds(), || format!("(p,k,d)=({p},{k},{d}): {r:?}"))?;
                oracle_runs += r.permutation_count.is_some() as usize;
            }
        }
    }
    let spot = |p, k, d| rank_identity_check(p, k, d).map(|r| (r.lhs, r.rhs)).ok();
    ensure(spot(2, 1, 2) == Some((3, 3)), || "(2,1,2) is not 3".into())?;
    ensure(spot(2, 2, 2) == Some((7, 7)), || "(2,2,2) is not 7".into())?;
    Ok(format!("12 grid points, {oracle_runs} with the permutation oracle"))
}

fn centralizers() -> Outcome {
    let mut checked = 0;
    for base in [
        FiniteAbelianGroup::trivial(),
        FiniteAbelianGroup::cyclic(2),
        FiniteAbelianGroup::cyclic(3),
    ] {
        for h in 1..=2 {
            for n in 1..=(8 / base.order() as usize) {
                for c in enumerate_action_classes(&base, h, n) {
                    let model = c.to_permutations();
                    let brute = centralizer_order(model.degree, &model.all_generators());
                    let formula = c.centralizer_shape().order().to_u128().unwrap();
                    ensure(brute == formula, || {
                        format!("{c} over {base}: brute {brute}, formula {formula}")
                    })?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} classes with h in 1..=2, n|A| <= 8"))
}

fn transfer_survival() -> Outcome {
    let trivial = FiniteAbelianGroup::trivial();
    let mut checked = 0;
    for h in 1..=2 {
        for n in 1..=6usize {
            let perms = all_perms(n);
            for c in enumerate_action_classes(&trivial, h, n) {
                let tuple = c.to_permutations().tuple;
                let single_orbit = orbits(n, &tuple).len() == 1;
                // Some conjugate of the tuple lands in Σ_m × Σ_{n−m}.
                let factors = (1..n).any(|m| {
                    perms.iter().any(|g| {
                        tuple.iter().all(|t| {
                            let s = t.conjugate_by(g);
                            (0..m).all(|x| s.apply(x) < m)
                        })
                    })
                });
                ensure(c.survives_transfer() == !factors, || {
                    format!("{c}: survives {} but factors {factors}", c.survives_transfer())
                })?;
                ensure(c.survives_transfer() == single_orbit, || {
                    format!("{c}: survives {} but single orbit {single_orbit}", c.survives_transfer())
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} classes with h in 1..=2, n <= 6"))
}

fn height_one() -> Outcome {
    let grid = height_one_grid();
    for (a, n) in &grid {
        let r = verify_height0(a, *n).map_err(|e| e.to_string())?;
        ensure(r.holds, || format!("height0 ({a}, {n}): {r:?}"))?;
        ensure(r.span_dim + a.order() as usize == r.classes, || {
            format!("({a}, {n}): span {} classes {}", r.span_dim, r.classes)
        })?;
        let nr = norm_pullback_bijectivity(a, *n).map_err(|e| e.to_string())?;
        ensure(nr.holds, || format!("norm ({a}, {n}): {nr:?}"))?;
    }
    Ok(format!("{} (A, n) configurations", grid.len()))
}

fn diagrams() -> Outcome {
    let mut checked = 0;
    for a in [
        FiniteAbelianGroup::cyclic(2),
        FiniteAbelianGroup::cyclic(3),
        FiniteAbelianGroup::cyclic(4),
        FiniteAbelianGroup::new(vec![2, 2]).unwrap(),
    ] {
        for h in 1..=2 {
            for alpha in surjections_onto(&a, h) {
                for l in 2..=4 {
                    let r = diagram_check(&a, &alpha, l).map_err(|e| e.to_string())?;
                    ensure(r.holds, || format!("{a}, alpha {alpha:?}, l {l}"))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} (A, alpha, l) triples"))
}

fn fibers() -> Outcome {
    let mut fibers = 0;
    for m in 1..=8 {
        for h in 0..=2 {
            let r = fiber_partition_check(m, h).map_err(|e| e.to_string())?;
            ensure(r.holds, || {
                format!("m {m} h {h}: sum {} total {}", r.sum_of_fibers, r.total)
            })?;
            fibers += r.fibers.len();
        }
    }
    Ok(format!("{fibers} fibers over m <= 8, h <= 2"))
}

fn appendix() -> Outcome {
    let grid = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (5, 2)];
    for (p, n) in grid {
        let m = (p as usize).pow(n);
        for i in 0..p {
            let s = i_series(i, p, n).map_err(|e| e.to_string())?;
            ensure(s == TruncPoly::monomial(p, m, i as i64, 1), || {
                format!("[{i}](x) = {s} for p {p} n {n}")
            })?;
        }
        let s = i_series(p, p, n).map_err(|e| e.to_string())?;
        ensure(s.is_zero(), || format!("[p](x) = {s} for p {p} n {n}"))?;
        let r = chern_subring_rank(p, n).map_err(|e| e.to_string())?;
        ensure(r as u64 == expected_subring_rank(p, n), || {
            format!("subring rank {r} for p {p} n {n}")
        })?;
    }
    let primes: Vec<u64> = (2..=101).filter(|&p| is_prime(p)).collect();
    for &p in &primes {
        let r = stirling_divisibility(p).map_err(|e| e.to_string())?;
        ensure(r.holds, || format!("Stirling residues for {p}: {:?}", r.residues))?;
    }
    Ok(format!("{} (p, n) points, {} primes", grid.len(), primes.len()))
}

fn components() -> Outcome {
    let mut points = 0;
    let mut walked: u64 = 0;
    for p in (2..=64).filter(|&p| is_prime(p)) {
        for h in 1..=6usize {
            for k in 1..=6u32 {
                let Some(size) = p.checked_pow(k * h as u32).filter(|&s| s <= 64) else {
                    continue;
                };
                debug_assert!(size <= 64);
                for m in 0..=6 {
                    let expected = component_count_closed_form(m, k, h, p)
                        .map_err(|e| e.to_string())?
                        .to_u64()
                        .unwrap();
                    let got = if expected <= 1_000_000 {
                        let labels = enumerate_components(m, k, h, p).map_err(|e| e.to_string())?;
                        ensure(labels.iter().all(|l| l.size() == m), || "label size".into())?;
                        labels.len() as u64
                    } else {
                        count_components(m, k, h, p).map_err(|e| e.to_string())?
                    };
                    ensure(got == expected, || {
                        format!("m {m} k {k} h {h} p {p}: {got} vs {expected}")
                    })?;
                    walked += got;
                    points += 1;
                }
            }
        }
    }
    Ok(format!("{points} grid points, {walked} labels walked"))
}

fn random_matrix(rng: &mut ChaCha8Rng) -> IntegerMatrix<Int> {
    let rows = rng.gen_range(1..=6);
    let cols = rng.gen_range(1..=6);
    IntegerMatrix::from_fn(rows, cols, |_, _| Int::from(rng.gen_range(-9i64..=9)))
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(Int::from(rng.gen_range(-20i64..=20)), Int::from(rng.gen_range(1i64..=6)))
}

fn infrastructure() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for i in 0..1000 {
        let m = random_matrix(&mut rng);
        let snf = smith_normal_form(&m);
        ensure(snf.verify(&m), || format!("matrix {i}: {m:?}"))?;
    }
    let mut pairs = 0;
    for (a, n) in height_one_grid() {
        let g = WreathProduct::new(a.clone(), n).map_err(|e| e.to_string())?;
        let g_classes = g.conjugacy_classes();
        let g_labels: Vec<_> = g_classes.iter().map(|c| c.0.clone()).collect();
        for _ in 0..20 {
            let l = rng.gen_range(1..n);
            let young = YoungSubgroup::new(&g, l).map_err(|e| e.to_string())?;
            let h_classes = young.conjugacy_classes();
            let mut f = ClassFunction::zero(h_classes.iter().map(|c| &c.0));
            for (k, _) in &h_classes {
                f.set(k, random_rational(&mut rng));
            }
            let mut phi = ClassFunction::zero(g_labels.iter());
            for k in &g_labels {
                phi.set(k, random_rational(&mut rng));
            }
            let lhs = inner_product(&g_classes, g.order(), &induce(&young, &f), &phi);
            let rhs = inner_product(&h_classes, young.order(), &f, &restrict(&young, &phi));
            ensure(lhs == rhs, || format!("({a}, {n}), split {l}: {lhs} vs {rhs}"))?;
            pairs += 1;
        }
    }
    Ok(format!("1000 matrices, {pairs} reciprocity pairs"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("rank identity", rank_identity),
        ("centralizer structure", centralizers),
        ("transfer survival", transfer_survival),
        ("height-1 lemmas", height_one),
        ("diagram commutativity", diagrams),
        ("fiber counts", fibers),
        ("appendix suite", appendix),
        ("component counts", components),
        ("infrastructure properties", infrastructure),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}; {ms} ms)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why}; {ms} ms)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
