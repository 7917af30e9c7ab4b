//! Regression checks run by `sejoin verify`.

use num_bigint::BigUint;

use sejoin_core::catalog::{make_del_pezzo_bundle, make_fermat_link, make_sphere, make_three_sasakian, Catalog};
use sejoin_core::join::{join, smoothness_certificate, Verdict};
use sejoin_core::search::validate_space;
use sejoin_core::{Result, SeSpace};

use crate::report::CheckReport;

fn check(name: impl Into<String>, outcome: Result<std::result::Result<(), String>>) -> CheckReport {
    let (ok, detail) = match outcome {
        Ok(Ok(())) => (true, String::new()),
        Ok(Err(d)) => (false, d),
        Err(e) => (false, e.to_string()),
    };
    CheckReport {
        name: name.into(),
        ok,
        detail,
    }
}

fn expect_group(s: &SeSpace, q: usize, want: &str) -> std::result::Result<(), String> {
    let got = s
        .integral
        .as_ref()
        .map(|g| g.degree(q).to_string())
        .ok_or_else(|| "no integral groups".to_string())?;
    if got == want {
        Ok(())
    } else {
        Err(format!("H^{q} = {got}, expected {want}"))
    }
}

fn expect_betti(s: &SeSpace, q: i64, want: u64) -> std::result::Result<(), String> {
    if s.b(q) == BigUint::from(want) {
        Ok(())
    } else {
        Err(format!("b_{q} = {}, expected {want}", s.b(q)))
    }
}

pub fn run_checks(catalog: &Catalog) -> Vec<CheckReport> {
    let mut out = Vec::new();

    for s in catalog.entries() {
        let violations = validate_space(s);
        out.push(check(
            format!("validate {}", s.name),
            Ok(match violations.first() {
                None => Ok(()),
                Some(v) => Err(v.to_string()),
            }),
        ));
    }

    for (d, want) in [(4, 60), (3, 10), (2, 0)] {
        out.push(check(
            format!("F({d},3) b3"),
            make_fermat_link(d, 3).map(|s| expect_betti(&s, 3, want)),
        ));
    }

    for (p, sigma2) in [([1, 1, 1], 3), ([1, 2, 3], 11)] {
        let name = format!("S3 * T({},{},{}) torsion", p[0], p[1], p[2]);
        let outcome = (|| {
            let j = join(&make_sphere(1)?, &make_three_sasakian(p[0], p[1], p[2])?)?;
            Ok(expect_group(&j, 4, &format!("Z + Z_{sigma2}"))
                .and_then(|()| expect_group(&j, 6, &format!("Z_{sigma2}"))))
        })();
        out.push(check(name, outcome));
    }

    for k in 3..=8u64 {
        let outcome = (|| {
            let j = join(&make_sphere(1)?, &make_del_pezzo_bundle(k)?)?;
            Ok(expect_group(&j, 4, &format!("Z_2^{k}"))
                .and_then(|()| expect_group(&j, 2, &format!("Z^{}", k + 1))))
        })();
        out.push(check(format!("S3 * Sk({k})"), outcome));

        let outcome = (|| {
            let j = join(&make_del_pezzo_bundle(k)?, &make_fermat_link(4, 3)?)?;
            Ok(expect_betti(&j, 3, 60).and_then(|()| expect_betti(&j, 5, 60 * k)))
        })();
        out.push(check(format!("Sk({k}) * F(4,3)"), outcome));

        for k2 in k..=8u64 {
            let outcome = (|| {
                let j = join(&make_del_pezzo_bundle(k)?, &make_del_pezzo_bundle(k2)?)?;
                Ok(expect_betti(&j, 2, k + k2 + 1).and_then(|()| expect_betti(&j, 4, k * k2 + 1)))
            })();
            out.push(check(format!("Sk({k}) * Sk({k2})"), outcome));
        }
    }

    let outcome = (|| {
        let s3 = make_sphere(1)?;
        let s5 = make_sphere(2)?;
        let t = make_three_sasakian(1, 2, 3)?;
        let a = smoothness_certificate(&s3, &s3);
        let b = smoothness_certificate(&s5, &t);
        Ok(if a.verdict != Verdict::Smooth {
            Err(format!("S3 * S3 is {}", a.verdict))
        } else if b.verdict != Verdict::Orbifold || b.g != Some(BigUint::from(2u32)) {
            Err(format!("S5 * T(1,2,3) is {} with g = {:?}", b.verdict, b.g))
        } else {
            Ok(())
        })
    })();
    out.push(check("smoothness certificates", outcome));

    let entries: Vec<&SeSpace> = catalog.entries().iter().filter(|s| !s.is_identity()).collect();
    let outcome = (|| {
        for (i, a) in entries.iter().enumerate() {
            for b in &entries[i..] {
                let ab = join(a, b)?;
                if ab != join(b, a)? {
                    return Ok(Err(format!("{} * {} is not commutative", a.name, b.name)));
                }
                if let Some(v) = validate_space(&ab).first() {
                    return Ok(Err(v.to_string()));
                }
            }
        }
        Ok(Ok(()))
    })();
    out.push(check("catalog pairwise joins", outcome));
    out
}
