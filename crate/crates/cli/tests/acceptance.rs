//! Acceptance suite. Each criterion prints one PASS/FAIL line; the process
//! exits nonzero if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use oddsp_core::burau::{burau_block, burau_matrix, braiding_vs_burau, BraidWord};
use oddsp_core::complexes::{
    bracket, build_complex, canonical_orders, check_vertex_isomorphism, destab_faces, left_link, Budget,
    ComplexSpec, Family, FiniteComplex, OrbitKind,
};
use oddsp_core::homology::{complex_homology, rp2, simplex_boundary, Coefficients, HomologyOptions, HomologyReport};
use oddsp_core::lattice::random_t_element;
use oddsp_core::orbits::{image_experiment, necessity_experiment, NecessityConfig};
use oddsp_core::weights::{
    coset_reps_wp, exterior_multiplicity, fit_integer_points, invariant_dimension_tensor, kostant_cohomology,
    sp_shift, trivial_summand_degrees, weyl_dim_sp, Partition, Weight,
};
use oddsp_core::{braiding, monoidal_sum, BraidingConvention, FormedModule, GroupElement, IntMatrix, IntVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn word(n: usize, letters: &[i64]) -> IntMatrix {
    burau_matrix(&BraidWord::new(n, letters).expect("valid word"))
}

fn build(family: Family, n: usize, b: u32) -> FiniteComplex {
    build_complex(&ComplexSpec::new(family, n, b), &Budget::default()).expect("within budget")
}

fn build_relative(family: Family, n: usize, b: u32, sigma: Vec<IntVector>) -> FiniteComplex {
    build_complex(&ComplexSpec::new(family, n, b).relative(sigma), &Budget::default()).expect("within budget")
}

fn e(n: usize, i: usize) -> IntVector {
    IntVector::basis(n, i)
}

fn within(limit: Duration, start: Instant, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    if t > limit {
        return Err(format!("{what} took {:.2} s, limit {:.0} s", t.as_secs_f64(), limit.as_secs_f64()));
    }
    Ok(())
}

fn braid_relations() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for n in 2..=8i64 {
        let nu = n as usize;
        for i in 1..n {
            ensure!(word(nu, &[i, -i]) == IntMatrix::identity(nu), "σ{i}σ{i}⁻¹ ≠ 1 at n={n}");
            if i + 1 < n {
                let j = i + 1;
                ensure!(word(nu, &[i, j, i]) == word(nu, &[j, i, j]), "braid relation fails at n={n}, i={i}");
                checked += 1;
            }
            for j in i + 2..n {
                ensure!(word(nu, &[i, j]) == word(nu, &[j, i]), "far commutation fails at n={n}, i={i}, j={j}");
                checked += 1;
            }
        }
    }
    within(Duration::from_secs(5), start, "braid relations")?;
    Ok(format!("{checked} relations exact for n ≤ 8"))
}

fn image_in_q() -> Outcome {
    let mut total = 0;
    for n in 3..=8 {
        let r = image_experiment(n, 1000, 2024 + n as u64, 8.0).map_err(|e| e.to_string())?;
        ensure!(r.failures == 0, "n={n}: {} failures, first {:?}", r.failures, r.first_failure);
        total += r.trials;
    }
    Ok(format!("{total} words, zero failures"))
}

fn braiding_coherence() -> Outcome {
    let id = GroupElement::identity;
    let mut checked = 0;
    for conv in [BraidingConvention::Eq31, BraidingConvention::Eq32] {
        for n in 0..=4 {
            for k in 0..=4 {
                for l in 0..=4 {
                    let lhs = braiding(n, k + l, conv);
                    let rhs = monoidal_sum(&id(k), &braiding(n, l, conv))
                        .compose(&monoidal_sum(&braiding(n, k, conv), &id(l)))
                        .map_err(|e| e.to_string())?;
                    ensure!(lhs == rhs, "first hexagon fails for {conv:?} ({n},{k},{l})");
                    let lhs = braiding(n + k, l, conv);
                    let rhs = monoidal_sum(&braiding(n, l, conv), &id(k))
                        .compose(&monoidal_sum(&id(n), &braiding(k, l, conv)))
                        .map_err(|e| e.to_string())?;
                    ensure!(lhs == rhs, "second hexagon fails for {conv:?} ({n},{k},{l})");
                    checked += 2;
                }
            }
        }
    }
    ensure!(
        braiding(1, 1, BraidingConvention::Eq31).matrix() == &burau_block(),
        "braiding(1,1) differs from the Burau block"
    );
    for n in 2..=6 {
        for i in 1..n {
            ensure!(braiding_vs_burau(n, i).map_err(|e| e.to_string())?, "generator {i} at n={n}");
        }
    }
    Ok(format!("{checked} hexagon identities; braiding(1,1) = B"))
}

fn t_is_symplectic() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for n in (3..=9).step_by(2) {
        let g = FormedModule::new(n).kernel_gram();
        let det = g.determinant().map_err(|e| e.to_string())?;
        ensure!(det == BigInt::from(1) || det == BigInt::from(-1), "n={n}: kernel Gram determinant {det}");
        for _ in 0..500 {
            let t = random_t_element(n, 6, &mut rng);
            let k = t.restrict_to_kernel();
            ensure!(&(&k.transpose() * &g) * &k == g, "n={n}: form on ker φ not preserved");
        }
    }
    for n in (2..=8).step_by(2) {
        let vn = FormedModule::new(n).distinguished_vector();
        for _ in 0..500 {
            let t = random_t_element(n, 6, &mut rng);
            ensure!(t.apply(&vn).map_err(|e| e.to_string())? == vn, "n={n}: v_n moved");
        }
    }
    Ok("odd n ≤ 9 unimodular and preserved; even n ≤ 8 fix v_n (500 elements each)".into())
}

fn destabilisation_combinatorics() -> Outcome {
    let mut simplices = 0;
    let mut identities = 0;
    for n in 2..=5 {
        let c = build(Family::X, n, 2);
        for t in c.simplex_vectors() {
            simplices += 1;
            ensure!(canonical_orders(&t) == 1, "n={n}: {t:?} has {} canonical orders", canonical_orders(&t));
            if t.len() < 3 {
                continue;
            }
            let faces = destab_faces(n, &t).map_err(|e| e.to_string())?;
            let second: Vec<Vec<Vec<IntVector>>> =
                faces.iter().map(|f| destab_faces(n, f)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
            for j in 1..t.len() {
                for i in 0..j {
                    ensure!(second[j][i] == second[i][j - 1], "n={n}: d_{i}d_{j} ≠ d_{}d_{i} on {t:?}", j - 1);
                    identities += 1;
                }
            }
        }
    }
    Ok(format!("{simplices} simplices, {identities} face identities"))
}

fn link_isomorphisms() -> Outcome {
    let mut checks = Vec::new();
    for n in 2..=6 {
        let xn = build(Family::X, n, 2);
        for p in 0..=n - 2 {
            let k = n - p - 1;
            let pad = IntVector::zero(p + 1);
            let sigma: Vec<IntVector> = (n - p..=n).map(|i| e(n, i)).collect();
            ensure!(xn.contains_tuple(&sigma), "({:?}) is not a simplex of X_{n}", sigma);

            let link = left_link(&xn, &sigma).map_err(|e| e.to_string())?;
            let target = build(Family::X, k, 2);
            check_vertex_isomorphism(&target, &link, |u| u.concat(&pad))
                .map_err(|err| format!("left link n={n} p={p}: {err}"))?;

            let ix_sigma = build_relative(Family::IX, n, 2, sigma.clone());
            let ix_target = build(Family::IX, k, 2);
            check_vertex_isomorphism(&ix_target, &ix_sigma, |u| u.concat(&pad))
                .map_err(|err| format!("IX relative n={n} p={p}: {err}"))?;
            checks.push(format!("LLk/IX n={n} p={p}: {}/{}", link.simplices().len(), ix_sigma.simplices().len()));
        }
    }
    let labels: Vec<Vec<IntVector>> = (1..=2)
        .map(|len| {
            let mut all = vec![Vec::new()];
            for _ in 0..len {
                all = all
                    .into_iter()
                    .flat_map(|v: Vec<i64>| [-2, 0, 2].map(|a| [v.clone(), vec![a]].concat()))
                    .collect();
            }
            all.into_iter().map(IntVector::from).collect()
        })
        .collect();
    for n in 3..=6 {
        for p in 0..=(n - 3) / 2 {
            let m = n - 2 * p - 2;
            let sigma: Vec<IntVector> = (0..=p).map(|j| &e(n, m + 2 * j + 1) - &e(n, m + 2 * j + 2)).collect();
            let x_sigma = build_relative(Family::X, n, 2, sigma);
            let target = bracket(&build(Family::X, m, 2), &labels[p]);
            let flatten = |u: &IntVector| {
                let tail: Vec<BigInt> = (0..=p).map(|j| u[m + 2 * j].clone()).collect();
                u.slice(0..m).concat(&IntVector::new(tail))
            };
            check_vertex_isomorphism(&x_sigma, &target, flatten)
                .map_err(|err| format!("X relative to IX simplex, n={n} p={p}: {err}"))?;
            checks.push(format!("X(σ) n={n} p={p}: {}", x_sigma.simplices().len()));
        }
    }
    Ok(format!("{} bijections on box 2, n ≤ 6", checks.len()))
}

fn orbit_necessity() -> Outcome {
    let mut runs = 0;
    for (kind, fits) in [(OrbitKind::X, (|n: usize, p: usize| p + 1 < n) as fn(usize, usize) -> bool), (OrbitKind::IX, |n, p| 2 * (p + 1) < n)] {
        for n in 2..=6 {
            for p in 0..=3 {
                if !fits(n, p) {
                    continue;
                }
                let config = NecessityConfig { kind, n, p, trials: 10_000, seed: 17 * n as u64 + p as u64, mean_length: 8.0 };
                let r = necessity_experiment(&config).map_err(|e| e.to_string())?;
                ensure!(r.passed, "{kind:?} n={n} p={p}: {} failures, e.g. {:?}", r.failures, r.counterexample);
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} configurations × 10⁴ words, zero failures"))
}

fn timed_homology(c: &FiniteComplex, coefficients: Coefficients, what: &str) -> Result<HomologyReport, String> {
    let start = Instant::now();
    let r = complex_homology(c, HomologyOptions { coefficients, reduced: true }).map_err(|e| e.to_string())?;
    within(Duration::from_secs(1), start, what)?;
    ensure!(r.euler_holds(), "{what}: Euler characteristic identity fails");
    Ok(r)
}

fn homology_oracle() -> Outcome {
    for k in 1..=6 {
        let r = timed_homology(&simplex_boundary(k), Coefficients::Z, &format!("∂Δ^{k}"))?;
        for d in &r.degrees {
            let expected = usize::from(d.degree == k as i64 - 1);
            ensure!(d.betti_q == expected, "∂Δ^{k}: H̃_{} has rank {}", d.degree, d.betti_q);
            ensure!(d.torsion.as_ref().map_or(true, Vec::is_empty), "∂Δ^{k}: torsion in degree {}", d.degree);
        }
    }
    let r = timed_homology(&rp2(), Coefficients::Z, "RP²")?;
    let h1 = r.degree(1).ok_or("RP² report lacks degree 1")?;
    ensure!(h1.torsion.as_deref() == Some(&[BigInt::from(2)][..]), "RP²: H₁ torsion {:?}", h1.torsion);
    ensure!(r.betti_q().iter().all(|&b| b == 0), "RP²: rational betti {:?}", r.betti_q());
    let r = timed_homology(&rp2(), Coefficients::F2, "RP² mod 2")?;
    ensure!(
        r.degrees.iter().filter(|d| d.degree >= 1).all(|d| d.betti_f2 == Some(1)),
        "RP²: mod 2 betti {:?}",
        r.degrees.iter().map(|d| d.betti_f2).collect::<Vec<_>>()
    );

    let built = [
        (Family::Z, 3, 1),
        (Family::Y, 4, 1),
        (Family::IX, 5, 1),
        (Family::X, 3, 2),
        (Family::X, 4, 2),
        (Family::WQ, 3, 2),
        (Family::WQ, 4, 1),
    ];
    for (family, n, b) in built {
        let cone = build(family, n, b).cone();
        for coefficients in [Coefficients::Q, Coefficients::F2] {
            let r = timed_homology(&cone, coefficients, &format!("cone over {family} n={n} box {b}"))?;
            let zero = r.degrees.iter().all(|d| d.betti_q == 0 && d.betti_f2.unwrap_or(0) == 0);
            ensure!(zero, "cone over {family} n={n} box {b} is not acyclic: {:?}", r.betti_q());
        }
    }
    Ok(format!("spheres k ≤ 6, RP² ℤ/2, {} cones acyclic, Euler identity on every run", built.len()))
}

fn kostant() -> Outcome {
    let example = Weight::new(vec![9, 7, 4, 2, 1]);
    let rows = kostant_cohomology(&example).map_err(|e| e.to_string())?;
    let target = Weight::new(vec![-3, 5, 4, 2, 1]);
    let row = rows.iter().find(|r| r.inverse_rho == target).ok_or("no coset representative with w⁻¹(ρ) = (−3,5,4,2,1)")?;
    ensure!(row.levi_weight == Weight::new(vec![10, 8, 2, 1]), "Levi weight {}", row.levi_weight);
    ensure!(row.dot_weight == Weight::new(vec![-12, 10, 8, 2, 1]), "dot weight {}", row.dot_weight);
    for lambda in Partition::all_up_to(9).into_iter().filter(|p| p.length() <= 5) {
        let l = lambda.to_weight(5).map_err(|e| e.to_string())?;
        let rows = kostant_cohomology(&l).map_err(|e| e.to_string())?;
        let row = rows.iter().find(|r| r.inverse_rho == target).ok_or("representative missing")?;
        let part = |i: usize| i64::from(lambda.part(i));
        let expected = Weight::new(vec![1 + part(0), 1 + part(1), part(3), part(4)]);
        ensure!(row.levi_weight == expected, "λ={lambda}: Levi weight {} ≠ {expected}", row.levi_weight);
    }
    for n in 1..=5 {
        let reps = coset_reps_wp(n).map_err(|e| e.to_string())?;
        ensure!(reps.len() == 2 * n, "|W^P| = {} at n={n}", reps.len());
        for lambda in Partition::all_up_to(4).into_iter().filter(|p| p.length() <= n) {
            let degrees = trivial_summand_degrees(&lambda.to_weight(n).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let expected = if lambda.length() <= 1 { vec![0, 2 * n - 1] } else { Vec::new() };
            ensure!(degrees == expected, "n={n} λ={lambda}: trivial degrees {degrees:?}");
        }
    }
    Ok("rank-five example exact; |W^P| = 2n; trivial degrees for |λ| ≤ 4, n ≤ 5".into())
}

fn branching() -> Outcome {
    let mut checked = 0;
    for n in 1..=4 {
        // V_λ(n+1) exists only for l(λ) ≤ n + 1.
        for lambda in Partition::all_up_to(4).into_iter().filter(|p| p.length() <= n + 1) {
            let lhs = weyl_dim_sp(&lambda, n + 1);
            let rhs: BigUint = sp_shift(&lambda).iter().map(|(mu, &k)| weyl_dim_sp(mu, n) * k).sum();
            ensure!(lhs == rhs, "n={n} λ={lambda}: {lhs} ≠ {rhs}");
            checked += 1;
        }
    }
    Ok(format!("{checked} dimension identities"))
}

fn invariant_theory() -> Outcome {
    let start = Instant::now();
    let double_factorial = |s: u32| (1..=s).map(|i| u128::from(2 * i - 1)).product::<u128>();
    for n in 2..=4usize {
        for s in 1..n as u32 {
            let d = invariant_dimension_tensor(n, s).map_err(|e| e.to_string())?;
            ensure!(d == double_factorial(s), "n={n} s={s}: {d} ≠ {}", double_factorial(s));
        }
    }
    let low = invariant_dimension_tensor(1, 2).map_err(|e| e.to_string())?;
    ensure!(low < 3, "n=1 s=2: {low} is not below 3");
    within(Duration::from_secs(60), start, "invariant theory")?;
    Ok(format!("(2s−1)!! for 1 ≤ s < n ≤ 4; n=1, s=2 gives {low} < 3"))
}

fn polynomiality() -> Outcome {
    let start = Instant::now();
    let mut fits = Vec::new();
    for lambda in ["0", "1", "1,1"] {
        let lambda: Partition = lambda.parse().map_err(|e: oddsp_core::weights::WeightsError| e.to_string())?;
        for r in 1..=2u32 {
            let bound = (r * (r + 1) / 2) as usize;
            let l = lambda.length();
            let value = |g: usize| -> Result<(i64, i128), String> {
                let m = exterior_multiplicity(&lambda, g, r).map_err(|e| e.to_string())?;
                Ok((2 * g as i64 + 1, m as i128))
            };
            let points: Vec<(i64, i128)> = (l + 1..=l + 4).map(value).collect::<Result<_, _>>()?;
            let fit = fit_integer_points(&points, Some(bound)).map_err(|e| format!("λ={lambda} r={r}: {e}"))?;
            ensure!(fit.degree <= bound, "λ={lambda} r={r}: degree {}", fit.degree);
            let (x, y) = value(l + 5)?;
            let predicted = fit.polynomial.eval(&BigRational::from_integer(BigInt::from(x)));
            ensure!(
                predicted == BigRational::from_integer(BigInt::from(y)),
                "λ={lambda} r={r}: fit {} predicts {predicted} at x={x}, actual {y}",
                fit.polynomial
            );
            fits.push(format!("p[{lambda};{r}] = {}", fit.polynomial));
        }
    }
    within(Duration::from_secs(300), start, "polynomial fits")?;
    Ok(fits.join("; "))
}

fn reproducibility() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_oddsp");
    let fixture = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/rp2.json");
    let invocations: Vec<Vec<&str>> = vec![
        vec!["orbit-necessity", "--kind", "X", "--n", "5", "--p", "2", "--trials", "300", "--seed", "7"],
        vec!["orbit-necessity", "--kind", "IX", "--n", "6", "--p", "1", "--trials", "300", "--seed", "11"],
        vec!["orbit-search", "--n", "4", "--target", "0,0,1,0;0,0,0,1", "--max-depth", "3"],
        vec!["burau", "--n", "4", "--word", "1,-2,3,2"],
        vec!["braiding", "--n", "2", "--m", "3", "--convention", "eq32"],
        vec!["complex", "--family", "IX", "--n", "4", "--box", "1"],
        vec!["homology", "--input", fixture, "--coefficients", "Z"],
        vec!["kostant", "--lambda", "2,1", "--n", "3"],
        vec!["pieri", "--lambda", "2,1", "--sp", "--n", "3"],
        vec!["multiplicity", "--lambda", "1", "--g", "3", "--r", "2"],
        vec!["polyfit", "--points", "3:2,5:3,7:4"],
    ];
    for args in &invocations {
        let run = || {
            Command::new(bin).args(args).output().map_err(|e| format!("cannot run {bin}: {e}"))
        };
        let (a, b) = (run()?, run()?);
        ensure!(a.status.success(), "{args:?} exited with {}", a.status);
        ensure!(a.stdout == b.stdout, "{args:?}: outputs differ between runs");
        ensure!(!a.stdout.is_empty(), "{args:?}: empty output");
    }
    Ok(format!("{} invocations byte-identical across runs", invocations.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 13] = [
        ("braid relations", braid_relations),
        ("Burau images in Q_n", image_in_q),
        ("braiding coherence", braiding_coherence),
        ("T_n symplectic evidence", t_is_symplectic),
        ("destabilisation combinatorics", destabilisation_combinatorics),
        ("link isomorphisms at truncation", link_isomorphisms),
        ("orbit-condition necessity", orbit_necessity),
        ("homology oracle", homology_oracle),
        ("Kostant rows", kostant),
        ("branching dimensions", branching),
        ("invariant theory", invariant_theory),
        ("polynomiality", polynomiality),
        ("CLI reproducibility", reproducibility),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|p| {
                let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
                Err(format!("panicked: {}", msg.unwrap_or_default()))
            });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({secs:.2} s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.2} s): {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
