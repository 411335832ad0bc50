//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

mod common;

use std::panic;

use common::{closed_form, flipcount, poly, stdout, system};
use flipcount::counting::{count_levels, Count, CountTable};
use flipcount::krieger::{diamond_free_check, ChainKind, DEFAULT_MONOID_CAP};
use flipcount::oracle::{
    signed_subset_check, lift_flip_fixed, oracle_flip_fixed, oracle_periodic, CorpusSystem,
};
use flipcount::series::{generating_rational, zeta_rational};
use flipcount::signed_subsets::Levels;
use flipcount::{IntMatrix, QRationalFunction, QSeries};
use num_bigint::BigInt;
use num_rational::BigRational;

type Check = Result<(), String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn levels(c: CorpusSystem, kind: ChainKind) -> Levels {
    Levels::build(&c.system().build_chain(kind, DEFAULT_MONOID_CAP).unwrap())
}

fn int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn even_closed_form() -> Result<(QRationalFunction, QRationalFunction), String> {
    let path = system("even");
    let out = flipcount(&["zeta", "--system", &path.to_string_lossy(), "--order", "6", "--closed-form"]);
    ensure(out.status.success(), || format!("zeta exited with {:?}", out.status.code()))?;
    let text = stdout(&out);
    Ok((closed_form(&text, "zeta_T"), closed_form(&text, "G")))
}

fn even_shift_golden_test() -> Check {
    let (zeta, g) = even_closed_form()?;
    let den = &poly(&[1, 0, -1]) * &poly(&[1, 0, -1, 0, -1]);
    let want_g = QRationalFunction::new(poly(&[0, 2, 2, -1, -1, -2, -1]), den);
    let want_zeta = QRationalFunction::new(poly(&[1, 1]), poly(&[1, -1, -1]));
    ensure(g == want_g, || format!("G = {g}"))?;
    ensure(zeta == want_zeta, || format!("zeta_T = {zeta}"))
}

fn generating_coefficients() -> Check {
    let (_, g) = even_closed_form()?;
    let got = g.expand(6);
    let want = QSeries::new([0, 2, 2, 3, 3, 4, 5].into_iter().map(int).collect());
    ensure(got == want, || format!("G through t^6 = {:?}", got.coeffs()))
}

fn oracle_equivalence() -> Check {
    for c in CorpusSystem::ALL {
        let sys = c.system();
        let l = levels(c, ChainKind::Joint);
        for n in 1..=8 {
            let p = count_levels(&l, Count::Periodic(n)).map_err(|e| e.to_string())?;
            ensure(p == oracle_periodic(&sys.graph, n).into(), || format!("{c:?} p_{n} = {p}"))?;
            for delta in 0..=1u8 {
                let got = count_levels(&l, Count::FlipFixed { period: n, delta }).map_err(|e| e.to_string())?;
                let want = oracle_flip_fixed(&sys, n, delta.into());
                ensure(got == want.into(), || format!("{c:?} p_({n},{delta}) = {got}, oracle {want}"))?;
            }
        }
    }
    Ok(())
}

fn sft_counts_equal_chain_counts() -> Check {
    for c in [CorpusSystem::Golden, CorpusSystem::Full2Swap] {
        let sys = c.system();
        let a: IntMatrix = sys.sft.as_ref().unwrap().entries().map(|&x| x.into());
        let j: IntMatrix = sys.sft_flip_matrix().unwrap().map(|&x| x.into());
        let direct = CountTable::from_sft(&a, &j, 8).map_err(|e| e.to_string())?;
        let chain = CountTable::from_levels(&levels(c, ChainKind::Joint), 8).map_err(|e| e.to_string())?;
        ensure(direct.rows == chain.rows, || format!("{c:?}:\n{direct}\n{chain}"))?;
    }
    Ok(())
}

fn structural_invariants() -> Check {
    for c in CorpusSystem::ALL {
        for kind in [ChainKind::Joint, ChainKind::Finitary, ChainKind::Component] {
            let chain = c.system().build_chain(kind, DEFAULT_MONOID_CAP).map_err(|e| e.to_string())?;
            chain.check_invariants().map_err(|e| format!("{c:?} {kind:?}: {e}"))?;
            ensure(diamond_free_check(&chain), || format!("{c:?} {kind:?} has a diamond"))?;
            let l = Levels::build(&chain);
            for level in l.complete().map_err(|e| e.to_string())? {
                level.check_invariants().map_err(|e| format!("{c:?} {kind:?} level {}: {e}", level.k()))?;
            }
        }
    }
    Ok(())
}

fn even_component_negative_result() -> Check {
    let sys = CorpusSystem::Even.system();
    let comp = sys.build_chain(ChainKind::Component, DEFAULT_MONOID_CAP).map_err(|e| e.to_string())?;
    for m in 1..=4 {
        let zeros = vec![0; 2 * m];
        let lift = lift_flip_fixed(&comp.labels, &comp.a, &comp.star, &zeros, 0);
        ensure(lift.is_none(), || format!("Ω′ has a σ^{}- and φ-fixed point over 0^∞: {lift:?}", 2 * m))?;
    }
    ensure(oracle_flip_fixed(&sys, 2, 0) == 2, || "p_(2,0) of the even shift is not 2".into())?;
    let path = system("even");
    let out = flipcount(&[
        "count", "--system", &path.to_string_lossy(), "--max-m", "2", "--chain", "component", "--verify",
    ]);
    ensure(out.status.code() == Some(4), || format!("count --verify exited with {:?}", out.status.code()))
}

fn signed_subset_checker() -> Check {
    let ok = signed_subset_check(1000, 8, 0x5eed).map_err(|e| e.to_string())?;
    ensure(ok, || "some instance has signed sum ≠ 1".into())
}

fn series_consistency() -> Check {
    for c in CorpusSystem::ALL {
        let l = levels(c, ChainKind::Joint);
        let zeta = zeta_rational(&l).map_err(|e| e.to_string())?.expand(11);
        let log_derivative = zeta.ln().map_err(|e| e.to_string())?.derivative().truncate(10);
        let table = CountTable::from_levels(&l, 11).map_err(|e| e.to_string())?;
        let want = QSeries::new(table.rows.iter().map(|r| BigRational::from_integer(r.p.clone())).collect());
        ensure(log_derivative == want, || format!("{c:?}: (log ζ)' ≠ Σ p_m t^(m-1)"))?;

        let zeta = zeta_rational(&l).map_err(|e| e.to_string())?.expand(12);
        let root = zeta.sqrt().map_err(|e| e.to_string())?;
        ensure(&root * &root == zeta, || format!("{c:?}: sqrt(ζ)² ≠ ζ"))?;
        let g = generating_rational(&l).map_err(|e| e.to_string())?.expand(12);
        let back = g.exp().and_then(|e| e.ln()).map_err(|e| e.to_string())?;
        ensure(back == g, || format!("{c:?}: log(exp G) ≠ G"))?;
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Check); 8] = [
        ("even-shift closed forms of ζ_T and G", even_shift_golden_test),
        ("even-shift G coefficients through t^6", generating_coefficients),
        ("matrix counts equal brute force, N ≤ 8", oracle_equivalence),
        ("SFT counts from (A, J) equal the chain counts, m ≤ 8", sft_counts_equal_chain_counts),
        ("structural invariants of every chain and level", structural_invariants),
        ("even-shift component misses the symmetric lift of 0^∞", even_component_negative_result),
        ("signed subset sum is 1 on 1000 random instances", signed_subset_checker),
        ("series log-derivative, sqrt and exp consistency", series_consistency),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = panic::catch_unwind(check).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match result {
            Ok(()) => println!("PASS {} {name}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
