//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.
//!
//! Expected values come from oracles written here, independently of the
//! library: Chern-class Euler characteristics for hypersurfaces, explicit
//! Lefschetz-operator ranks on products of projective spaces, and
//! brute-force gcd enumeration.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use sejoin_core::algebra::{
    gysin_circle_betti, kunneth_profile, BaseProfile, BettiVector, GradedGroup,
};
use sejoin_core::catalog::{
    make_del_pezzo_bundle, make_fermat_link, make_sphere, make_three_sasakian, Catalog,
};
use sejoin_core::join::{
    integral_model_for_atoms, join, low_betti_lemma52, n_fold_join, smoothness_certificate,
    Verdict,
};
use sejoin_core::lattice::{
    lattice_join, lattice_leq, lattice_meet, lattice_point, scaling_solution, LatticePoint,
    PointCohomology,
};
use sejoin_core::search::{cor418_triples, validate_space, validate};
use sejoin_core::{Order, SeSpace};

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 13] = [
        ("fermat link middle Betti numbers", fermat_betti),
        ("S3 * T(p) integral table", s3_three_sasakian_table),
        ("S3 * Sk(k) integral groups", s3_del_pezzo),
        ("Sk(k) * Sk(k') Betti numbers", del_pezzo_pairs),
        ("Sk(k) * F(4,3) Betti numbers", del_pezzo_quartic),
        ("low-degree Betti lemma vs Gysin engine", low_betti_cross_check),
        ("monoid laws over catalog triples", monoid_laws),
        ("smoothness certificate", smoothness),
        ("odd 4r+1 triple search", triple_search),
        ("Einstein orbifold lattice on (S3, S7)", lattice_s3_s7),
        ("scaling solution", scaling),
        ("global structural properties", structural),
        ("validator gate", validator_gate),
    ];

    panic::set_hook(Box::new(|_| {}));
    let started = Instant::now();
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|e| Err(panic_message(e)));
        match outcome {
            Ok(()) => println!("PASS {:>2} {name} ({:.2?})", i + 1, t.elapsed()),
            Err(msg) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {msg}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.2?}",
        criteria.len() - failures,
        criteria.len(),
        started.elapsed()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn panic_message(e: Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = e.downcast_ref::<String>() {
        format!("panic: {s}")
    } else if let Some(s) = e.downcast_ref::<&str>() {
        format!("panic: {s}")
    } else {
        "panic".into()
    }
}

// ---------------------------------------------------------------------------
// oracles

fn binom(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Euler characteristic of a smooth degree-`d` hypersurface of dimension `n`,
/// read off the Chern polynomial `d h (1+h)^{n+2} / (1+dh)`.
fn hypersurface_euler(d: u64, n: u64) -> BigInt {
    let d = BigInt::from(d);
    let coeff: BigInt = (0..=n)
        .map(|i| binom(n + 2, i) * (-&d).pow((n - i) as u32))
        .sum();
    d * coeff
}

/// Middle Betti number of the link of a degree-`d` hypersurface of odd
/// dimension `n`: every middle class of the hypersurface is primitive.
fn fermat_middle_oracle(d: u64, n: u64) -> BigInt {
    assert!(n % 2 == 1);
    BigInt::from(n + 1) - hypersurface_euler(d, n)
}

fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &pivot;
                for j in c..cols {
                    let delta = &f * &rows[r][j];
                    rows[i][j] -= delta;
                }
            }
        }
        r += 1;
    }
    r
}

/// Monomial basis of `Q[x_1..x_r] / (x_i^{n_i+1})` in degree `deg`.
fn monomials(ns: &[u64], deg: u64) -> Vec<Vec<u64>> {
    if ns.is_empty() {
        return if deg == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for e in 0..=ns[0].min(deg) {
        for mut rest in monomials(&ns[1..], deg - e) {
            rest.insert(0, e);
            out.push(rest);
        }
    }
    out
}

/// Betti numbers of a circle bundle over `CP^{n_1} × ... × CP^{n_r}` with an
/// Euler class positive on every factor, from explicit ranks of
/// multiplication by `x_1 + ... + x_r`.
fn projective_join_oracle(ns: &[u64]) -> Vec<u64> {
    let top: u64 = ns.iter().sum();
    let ranks: Vec<usize> = (0..=top)
        .map(|j| {
            let src = monomials(ns, j);
            let dst = monomials(ns, j + 1);
            let rows = src
                .iter()
                .map(|m| {
                    let mut row = vec![BigRational::zero(); dst.len()];
                    for i in 0..m.len() {
                        let mut t = m.clone();
                        t[i] += 1;
                        if let Some(pos) = dst.iter().position(|d| *d == t) {
                            row[pos] = BigRational::one();
                        }
                    }
                    row
                })
                .collect();
            rank(rows)
        })
        .collect();
    let dim = 2 * top + 1;
    let mut b = vec![0u64; dim as usize + 1];
    for j in 0..=top {
        let h = monomials(ns, j).len();
        let incoming = if j == 0 { 0 } else { ranks[j as usize - 1] };
        b[2 * j as usize] = (h - incoming) as u64;
        b[2 * j as usize + 1] = (h - ranks[j as usize]) as u64;
    }
    b
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn betti_u64(s: &SeSpace) -> Vec<u64> {
    s.betti.to_u64_vec().expect("small Betti numbers")
}

fn is_sphere(s: &SeSpace) -> bool {
    s.name.starts_with('S') && s.name[1..].chars().all(|c| c.is_ascii_digit()) && s.n >= 1
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn group_strings(g: &GradedGroup) -> Vec<String> {
    g.groups().iter().map(|x| x.to_string()).collect()
}

fn non_identity(cat: &Catalog) -> Vec<SeSpace> {
    cat.entries().iter().filter(|s| !s.is_identity()).cloned().collect()
}

// ---------------------------------------------------------------------------
// criteria

fn fermat_betti() -> Check {
    for (d, want) in [(4, 60), (3, 10), (2, 0)] {
        let oracle = fermat_middle_oracle(d, 3);
        ensure!(oracle == BigInt::from(want), "oracle b3 for d={d} is {oracle}");
        let s = make_fermat_link(d, 3).map_err(err)?;
        ensure!(s.b(3) == BigUint::from(want as u64), "F({d},3) b3 = {}", s.b(3));
    }
    // a few more against the oracle alone
    for (d, n) in [(3, 5), (4, 5), (5, 5), (6, 5), (5, 7)] {
        let s = make_fermat_link(d, n).map_err(err)?;
        let want = fermat_middle_oracle(d, n).to_biguint().unwrap();
        ensure!(s.b(n as i64) == want, "F({d},{n}) b{n} = {}, oracle {want}", s.b(n as i64));
    }
    Ok(())
}

fn s3_three_sasakian_table() -> Check {
    let s3 = make_sphere(1).map_err(err)?;
    for p in [[1, 1, 1], [1, 2, 3], [1, 1, 5], [1, 3, 5]] {
        let sigma2 = p[0] * p[1] + p[0] * p[2] + p[1] * p[2];
        let t = make_three_sasakian(p[0], p[1], p[2]).map_err(err)?;
        let j = join(&s3, &t).map_err(err)?;
        let g = j.integral.as_ref().ok_or("no integral groups on S3 * T(p)")?;
        let want: Vec<String> = [
            "Z".into(),
            "0".into(),
            "Z^2".into(),
            "0".into(),
            format!("Z + Z_{sigma2}"),
            "Z".into(),
            format!("Z_{sigma2}"),
            "Z^2".into(),
            "0".into(),
            "Z".into(),
        ]
        .to_vec();
        ensure!(group_strings(g) == want, "{}: {}", j.name, g);

        // free ranks from an independent Gysin computation on CP^1 × Z(p)
        let base = kunneth_profile(&BaseProfile::projective_space(1), &t.leaf_profile().map_err(err)?)
            .map_err(err)?;
        let engine = gysin_circle_betti(&base).map_err(err)?;
        let free = g.free_ranks().map_err(err)?;
        ensure!(free == engine, "free ranks {:?} vs engine {:?}", free.ranks(), engine.ranks());
        ensure!(free == j.betti, "free ranks disagree with the join's Betti numbers");
    }
    Ok(())
}

fn s3_del_pezzo() -> Check {
    let s3 = make_sphere(1).map_err(err)?;
    for k in 3..=8u64 {
        let sk = make_del_pezzo_bundle(k).map_err(err)?;
        let j = join(&s3, &sk).map_err(err)?;
        let g = j.integral.as_ref().ok_or_else(|| format!("no integral groups for k={k}"))?;
        let got = group_strings(g);
        ensure!(got[2] == format!("Z^{}", k + 1), "k={k}: H^2 = {}", got[2]);
        ensure!(got[4] == format!("Z_2^{k}"), "k={k}: H^4 = {}", got[4]);
        ensure!(got[5] == format!("Z^{}", k + 1), "k={k}: H^5 = {}", got[5]);
    }
    Ok(())
}

fn del_pezzo_pairs() -> Check {
    for k in 3..=8u64 {
        for k2 in 3..=8u64 {
            let a = make_del_pezzo_bundle(k).map_err(err)?;
            let b = make_del_pezzo_bundle(k2).map_err(err)?;
            let j = join(&a, &b).map_err(err)?;
            ensure!(j.b(2) == BigUint::from(k + k2 + 1), "({k},{k2}) b2 = {}", j.b(2));
            ensure!(j.b(4) == BigUint::from(k * k2 + 1), "({k},{k2}) b4 = {}", j.b(4));
            let atoms: Vec<&SeSpace> = j.atoms();
            let model = integral_model_for_atoms(&atoms, &j)
                .map_err(err)?
                .ok_or_else(|| format!("no table rule for ({k},{k2})"))?;
            let free = model.groups.free_ranks().map_err(err)?;
            ensure!(free == j.betti, "({k},{k2}) table {:?} vs engine {:?}", free.ranks(), j.betti.ranks());
        }
    }
    Ok(())
}

fn del_pezzo_quartic() -> Check {
    let f = make_fermat_link(4, 3).map_err(err)?;
    for k in 3..=8u64 {
        let sk = make_del_pezzo_bundle(k).map_err(err)?;
        let j = join(&sk, &f).map_err(err)?;
        ensure!(j.b(3) == BigUint::from(60u32), "k={k}: b3 = {}", j.b(3));
        ensure!(j.b(5) == BigUint::from(60 * k), "k={k}: b5 = {}", j.b(5));
    }
    Ok(())
}

fn low_betti_cross_check() -> Check {
    let cat = Catalog::builtin();
    let pool = non_identity(&cat);
    let mut runner = TestRunner::new_with_rng(
        Config::default(),
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    );
    let pick = (0..pool.len(), 0..pool.len());
    let mut compared = 0;
    for _ in 0..200 {
        let (i, j) = pick.new_tree(&mut runner).map_err(err)?.current();
        let (a, b) = (&pool[i], &pool[j]);
        let joined = join(a, b).map_err(err)?;
        let low = low_betti_lemma52(a, b);
        for (q, value) in [(2, &low.b2), (3, &low.b3), (4, &low.b4)] {
            if let Some(v) = value {
                compared += 1;
                ensure!(*v == joined.b(q), "{} * {}: b{q} lemma {v}, engine {}", a.name, b.name, joined.b(q));
            }
        }
        if is_sphere(a) && is_sphere(b) {
            let oracle = projective_join_oracle(&[a.n, b.n]);
            ensure!(oracle == betti_u64(&joined), "{} * {}: oracle {oracle:?}", a.name, b.name);
        }
    }
    ensure!(compared >= 200, "only {compared} comparisons");
    Ok(())
}

fn monoid_laws() -> Check {
    let cat = Catalog::builtin();
    let all = cat.entries();
    let circle = all.iter().find(|s| s.is_identity()).ok_or("no circle in catalog")?;
    for s in all {
        ensure!(join(circle, s).map_err(err)? == *s, "S1 * {} differs", s.name);
        ensure!(join(s, circle).map_err(err)? == *s, "{} * S1 differs", s.name);
    }

    let pool = non_identity(&cat);
    let mut cases = 0;
    for i in 0..pool.len() {
        for j in i..pool.len() {
            let ab = join(&pool[i], &pool[j]).map_err(err)?;
            ensure!(ab == join(&pool[j], &pool[i]).map_err(err)?, "{} * {} not commutative", pool[i].name, pool[j].name);
            for k in j..pool.len() {
                let (a, b, c) = (&pool[i], &pool[j], &pool[k]);
                let reference = join(&ab, c).map_err(err)?;
                let perms = [[a, b, c], [a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]];
                for [x, y, z] in perms {
                    let left = join(&join(x, y).map_err(err)?, z).map_err(err)?;
                    let right = join(x, &join(y, z).map_err(err)?).map_err(err)?;
                    ensure!(left == reference, "({} * {}) * {} differs", x.name, y.name, z.name);
                    ensure!(right == reference, "{} * ({} * {}) differs", x.name, y.name, z.name);
                }
                let folded = n_fold_join(&[a.clone(), b.clone(), c.clone()]).map_err(err)?;
                ensure!(folded == reference, "n_fold_join differs for {}", reference.name);
                if [a, b, c].iter().all(|s| is_sphere(s)) {
                    let oracle = projective_join_oracle(&[a.n, b.n, c.n]);
                    ensure!(oracle == betti_u64(&reference), "{}: oracle {oracle:?}", reference.name);
                }
                cases += 1;
            }
        }
    }
    ensure!(cases >= 100, "only {cases} triples");
    Ok(())
}

fn smoothness() -> Check {
    let s3 = make_sphere(1).map_err(err)?;
    let v = smoothness_certificate(&s3, &s3).verdict;
    ensure!(v == Verdict::Smooth, "S3 * S3 is {v}");

    let cat = Catalog::builtin();
    let mut non_regular = 0;
    for s in cat.entries().iter().filter(|s| !s.regular) {
        non_regular += 1;
        let v = smoothness_certificate(s, s).verdict;
        ensure!(v == Verdict::Orbifold, "{} * {} is {v}", s.name, s.name);
    }
    ensure!(non_regular > 0, "catalog has no non-regular entries");

    let s5 = make_sphere(2).map_err(err)?;
    let t = make_three_sasakian(1, 2, 3).map_err(err)?;
    let c = smoothness_certificate(&s5, &t);
    // Ind 3 and 2 are coprime, so g = gcd(1 * 2, 60 * 3)
    let expected = gcd(2, 180);
    ensure!(c.verdict == Verdict::Orbifold, "S5 * T(1,2,3) is {}", c.verdict);
    ensure!(c.g == Some(BigUint::from(expected)), "g = {:?}, expected {expected}", c.g);

    let mut tested = 0;
    for p1 in 1..=9u64 {
        for p2 in p1..=9 {
            for p3 in p2..=9 {
                if gcd(p1, p2) != 1 || gcd(p1, p3) != 1 || gcd(p2, p3) != 1 {
                    continue;
                }
                let t = make_three_sasakian(p1, p2, p3).map_err(err)?;
                let c = smoothness_certificate(&s3, &t);
                ensure!(c.verdict == Verdict::Smooth, "S3 * {} is {}", t.name, c.verdict);
                tested += 1;
            }
        }
    }
    ensure!(tested >= 10, "only {tested} coprime triples");
    Ok(())
}

fn triple_search() -> Check {
    let r_max = 5u64;
    let mut expected = Vec::new();
    for r1 in 0..=r_max {
        for r2 in 0..=r_max {
            for r3 in 0..=r_max {
                let p = [4 * r1 + 1, 4 * r2 + 1, 4 * r3 + 1];
                if gcd(p[0], p[1]) == 1 && gcd(p[0], p[2]) == 1 && gcd(p[1], p[2]) == 1 {
                    expected.push(p);
                }
            }
        }
    }
    let result = cor418_triples(r_max).map_err(err)?;
    let mut got: Vec<[u64; 3]> = result.hits.iter().map(|h| h.p).collect();
    got.sort();
    expected.sort();
    ensure!(got == expected, "{} hits, expected {}", got.len(), expected.len());

    for hit in &result.hits {
        ensure!(hit.order.bit(0), "{} has even order {}", hit.space.name, hit.order);
        for l in 5..=8 {
            let sl = make_del_pezzo_bundle(l).map_err(err)?;
            let v = smoothness_certificate(&sl, &hit.space).verdict;
            ensure!(v == Verdict::Smooth, "Sk({l}) * {} is {v}", hit.space.name);
        }
    }
    Ok(())
}

fn lattice_s3_s7() -> Check {
    let s3 = make_sphere(1).map_err(err)?;
    let s7 = make_sphere(3).map_err(err)?;
    let joined = join(&s3, &s7).map_err(err)?;

    for l in 0..=12u64 {
        for k in 0..=12u64 {
            if l == 0 && k == 0 {
                continue;
            }
            let p = lattice_point(&s3, &s7, l, k).map_err(err)?;
            let on_ray = l > 0 && k == 2 * l;
            ensure!(
                p.classification.sasakian_einstein == on_ray,
                "({l},{k}) marked sasakian_einstein = {}",
                p.classification.sasakian_einstein
            );
            if l > 0 && k > 0 {
                match &p.classification.rational_cohomology {
                    PointCohomology::Betti(b) => {
                        ensure!(*b == joined.betti, "({l},{k}) Betti {:?}", b.ranks())
                    }
                    other => return Err(format!("({l},{k}) has {other:?}")),
                }
            }
        }
    }

    let pts: Vec<LatticePoint> = (1..=6u64)
        .flat_map(|l| (1..=6u64).map(move |k| (l, k)))
        .map(|(l, k)| lattice_point(&s3, &s7, l, k))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let key = |p: &LatticePoint| (p.l, p.k);
    for p in &pts {
        ensure!(key(&lattice_meet(p, p).map_err(err)?) == key(p), "meet not idempotent");
        ensure!(key(&lattice_join(p, p).map_err(err)?) == key(p), "join not idempotent");
        for q in &pts {
            let m = lattice_meet(p, q).map_err(err)?;
            let j = lattice_join(p, q).map_err(err)?;
            ensure!(key(&m) == key(&lattice_meet(q, p).map_err(err)?), "meet not commutative");
            ensure!(key(&j) == key(&lattice_join(q, p).map_err(err)?), "join not commutative");
            ensure!(key(&lattice_meet(p, &j).map_err(err)?) == key(p), "absorption p ^ (p v q)");
            ensure!(key(&lattice_join(p, &m).map_err(err)?) == key(p), "absorption p v (p ^ q)");
            ensure!(
                lattice_leq(p, q).map_err(err)? == (key(&m) == key(p)),
                "leq disagrees with meet at {:?} {:?}",
                key(p),
                key(q)
            );
            for r in &pts {
                let m1 = lattice_meet(&m, r).map_err(err)?;
                let m2 = lattice_meet(p, &lattice_meet(q, r).map_err(err)?).map_err(err)?;
                ensure!(key(&m1) == key(&m2), "meet not associative");
                let j1 = lattice_join(&j, r).map_err(err)?;
                let j2 = lattice_join(p, &lattice_join(q, r).map_err(err)?).map_err(err)?;
                ensure!(key(&j1) == key(&j2), "join not associative");
            }
        }
    }
    Ok(())
}

fn scaling() -> Check {
    for n1 in 0..=10u64 {
        for n2 in 0..=10u64 {
            let s = scaling_solution(n1, n2);
            let big_n = n1 + n2;
            let scal = BigInt::from(4 * big_n * (big_n + 1));
            let lambda = BigInt::from(2 * (big_n + 1));
            ensure!(s.scalar_curvature == scal, "({n1},{n2}) scal {}", s.scalar_curvature);
            ensure!(s.einstein_constant == lambda, "({n1},{n2}) lambda {}", s.einstein_constant);

            // A Kähler-Einstein factor of complex dimension n with Ric = 2(n+1) g
            // has scalar curvature 4n(n+1); scaling the metric by c divides both
            // by c. With c = (n+1)/(N+1) the Einstein constants become 2(N+1).
            let mut total = BigRational::zero();
            for (n, c, fs, fe) in [
                (n1, &s.c1, &s.factor_scalar[0], &s.factor_einstein[0]),
                (n2, &s.c2, &s.factor_scalar[1], &s.factor_einstein[1]),
            ] {
                let want_c = BigRational::new((n + 1).into(), (big_n + 1).into());
                ensure!(*c == want_c, "({n1},{n2}) c = {c}");
                let want_scal = BigRational::from_integer((4 * n * (n + 1)).into()) / &want_c;
                ensure!(*fs == want_scal, "({n1},{n2}) factor scal {fs}");
                total += fs;
                if n > 0 {
                    let e = fe.as_ref().ok_or("missing Einstein constant")?;
                    ensure!(*e == BigRational::from_integer(lambda.clone()), "({n1},{n2}) factor lambda {e}");
                } else {
                    ensure!(fe.is_none(), "point factor with an Einstein constant");
                }
            }
            let base = BigRational::from_integer(scal.clone());
            ensure!(total == base, "({n1},{n2}) factor sum {total} vs {base}");
            ensure!(s.is_consistent(), "({n1},{n2}) inconsistent");
        }
    }
    Ok(())
}

fn check_betti(label: &str, b: &BettiVector, simply_connected: bool) -> Check {
    ensure!(b.euler_characteristic().is_zero(), "{label}: chi = {}", b.euler_characteristic());
    ensure!(b.is_poincare_symmetric(), "{label}: asymmetric {:?}", b.ranks());
    if simply_connected {
        ensure!(b.rank(1).is_zero(), "{label}: b1 = {}", b.rank(1));
    }
    Ok(())
}

fn check_torsion(label: &str, g: &GradedGroup) -> Check {
    let d = g.dim();
    for (q, _) in g.torsion_degrees() {
        ensure!(q >= 1 && q <= d, "{label}: torsion in degree {q}");
        ensure!(g.degree(q).torsion_order() == g.degree(d + 1 - q).torsion_order(), "{label}: torsion at {q} unpaired");
    }
    ensure!(g.torsion_duality_ok(), "{label}: {g}");
    Ok(())
}

fn structural() -> Check {
    let cat = Catalog::builtin();
    let pool = non_identity(&cat);
    let mut produced: Vec<SeSpace> = cat.entries().to_vec();
    for i in 0..pool.len() {
        for j in i..pool.len() {
            produced.push(join(&pool[i], &pool[j]).map_err(err)?);
        }
    }
    let s3 = make_sphere(1).map_err(err)?;
    for extra in [
        vec![s3.clone(), s3.clone(), make_three_sasakian(1, 2, 3).map_err(err)?],
        vec![s3.clone(), s3.clone(), make_fermat_link(3, 3).map_err(err)?],
        vec![s3.clone(), s3.clone(), s3.clone(), make_fermat_link(3, 3).map_err(err)?],
    ] {
        produced.push(n_fold_join(&extra).map_err(err)?);
    }

    let mut models = 0;
    for s in &produced {
        check_betti(&s.name, &s.betti, s.simply_connected)?;
        if let Some(g) = &s.integral {
            check_torsion(&s.name, g)?;
            ensure!(g.free_ranks().map_err(err)? == s.betti, "{}: free ranks", s.name);
        }
        if !s.is_atom() {
            if let Some(m) = integral_model_for_atoms(&s.atoms(), s).map_err(err)? {
                models += 1;
                if m.scope.is_full() {
                    check_torsion(&s.name, &m.groups)?;
                }
            }
        }
    }
    ensure!(models > 0, "no integral models exercised");

    let s7 = make_sphere(3).map_err(err)?;
    for l in 0..=4 {
        for k in 0..=4 {
            if l + k == 0 {
                continue;
            }
            let p = lattice_point(&s3, &s7, l, k).map_err(err)?;
            let (label, b) = match &p.classification.rational_cohomology {
                PointCohomology::Betti(b) => ("interior", b),
                PointCohomology::Product { advisory_betti, .. } => ("boundary", advisory_betti),
            };
            check_betti(&format!("{label} ({l},{k})"), b, false)?;
        }
    }

    for s in cat.entries() {
        let leaf = s.leaf_profile().map_err(err)?;
        let back = gysin_circle_betti(&leaf).map_err(err)?;
        ensure!(back == s.betti, "{}: round trip {:?}", s.name, back.ranks());
        ensure!(leaf.betti.is_poincare_symmetric(), "leaf of {} is asymmetric", s.name);
    }
    Ok(())
}

fn validator_gate() -> Check {
    let cat = Catalog::builtin();
    for s in cat.entries() {
        let v = validate_space(s);
        ensure!(v.is_empty(), "{}: {}", s.name, v[0]);
    }

    let mut big_b2 = make_sphere(3).map_err(err)?;
    big_b2.name = "planted-b2".into();
    big_b2.flags.three_sasakian = false;
    big_b2.index = 1;
    big_b2.integral = None;
    big_b2.betti = BettiVector::from_u64(&[1, 0, 10, 0, 0, 10, 0, 1]).map_err(err)?;
    let rules: Vec<_> = validate_space(&big_b2).into_iter().map(|v| v.rule).collect();
    ensure!(rules.contains(&validate::RULE_REGULAR7_B2), "b2 = 10 not flagged: {rules:?}");

    let mut high_index = make_sphere(2).map_err(err)?;
    high_index.name = "planted-index".into();
    high_index.index = high_index.n + 2;
    let rules: Vec<_> = validate_space(&high_index).into_iter().map(|v| v.rule).collect();
    ensure!(rules.contains(&validate::RULE_REGULAR_INDEX), "Ind = n+2 not flagged: {rules:?}");

    let mut wrong_order = make_three_sasakian(1, 2, 3).map_err(err)?;
    wrong_order.regular = true;
    wrong_order.order = Order::known(60u32);
    let rules: Vec<_> = validate_space(&wrong_order).into_iter().map(|v| v.rule).collect();
    ensure!(rules.contains(&validate::RULE_ORDER_ONE), "regular with order 60 not flagged: {rules:?}");
    Ok(())
}
