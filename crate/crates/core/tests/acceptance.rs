//! Acceptance suite. Every check is an exact equality; prints one line per
//! criterion and exits nonzero if any fails.

use std::process::{Command, ExitCode};
use std::time::Instant;

use lattice_gf::circulant::{
    bc_relation_check, cramer_ratio_check, hn_determinant_report, hn_target, lemma_column_substitution_check,
};
use lattice_gf::oracle::{count_loops, count_restricted, odd_length_count, OracleBudget};
use lattice_gf::periodic::hn_set;
use lattice_gf::system::{reduction_check, restricted_path_gf};
use lattice_gf::{LoopModel, PeriodicSet, TruncatedSeries};
use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_traits::{One, Pow};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: lattice_gf::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn integer_coeffs(s: &TruncatedSeries) -> Result<Vec<BigInt>, String> {
    s.coeffs()
        .iter()
        .map(|c| if c.is_integer() { Ok(c.to_integer()) } else { Err(format!("non-integer coefficient {c}")) })
        .collect()
}

fn set(rs: &[usize], period: usize) -> PeriodicSet {
    PeriodicSet::new(rs.to_vec(), period).expect("valid set")
}

fn hn_identity() -> Outcome {
    let order = 25;
    for k in 1..=3 {
        let p0 = lib(restricted_path_gf(1, &lib(hn_set(k))?, 0, order))?;
        let section = lib(p0.multisection(2 * k, 0))?;
        let target = lib(hn_target(k, order))?;
        if let Some(i) = lib(section.first_difference(&target))? {
            return Err(format!("k={k}: first difference at t^{i}"));
        }
    }
    Ok(())
}

fn two_dim_series() -> Outcome {
    let expected: [u64; 7] = [1, 192, 45056, 10979328, 2716942336, 677907697664, 170013263888384];
    let p0 = lib(restricted_path_gf(2, &PeriodicSet::a1(), 0, 13))?;
    let coeffs = integer_coeffs(&lib(p0.multisection(2, 0))?)?;
    for (j, e) in expected.iter().enumerate() {
        ensure(coeffs[2 * j] == BigInt::from(*e), || format!("t^{}: {} != {e}", 2 * j, coeffs[2 * j]))?;
    }
    Ok(())
}

fn oracle_equivalence() -> Outcome {
    let budget = OracleBudget::default();
    let sets = [PeriodicSet::a1(), PeriodicSet::a2(), set(&[0, 2], 5), set(&[0, 1, 2], 4)];
    for d in 1..=2 {
        let k_max = budget.max_half_len(d);
        ensure(k_max >= 12, || format!("oracle cap {k_max} below 12 terms for d={d}"))?;
        for s in &sets {
            let counts = lib(count_restricted(d, s, k_max, &budget))?;
            let gf = integer_coeffs(&lib(restricted_path_gf(d, s, 0, k_max + 1))?)?;
            for (k, (g, c)) in gf.iter().zip(counts.counts()).enumerate() {
                ensure(*g == BigInt::from(c.clone()), || format!("d={d} {s} k={k}: gf {g} vs oracle {c}"))?;
            }
        }
    }
    Ok(())
}

fn one_dim_closed_forms() -> Outcome {
    let order = 25;
    let model = lib(LoopModel::new(1, order))?;
    let exc = integer_coeffs(&model.primitive_excursion_gf())?;
    let esc = integer_coeffs(&model.escaping_gf())?;
    // Catalan numbers by the convolution recurrence.
    let mut cat = vec![BigInt::one()];
    for m in 1..order {
        let next = (0..m).map(|i| &cat[i] * &cat[m - 1 - i]).sum();
        cat.push(next);
    }
    ensure(exc[0] == BigInt::from(0), || "E_0 != 0".into())?;
    for k in 1..order {
        ensure(exc[k] == &cat[k - 1] * 2, || format!("E_{k} = {} != 2*Cat({})", exc[k], k - 1))?;
    }
    for (k, e) in esc.iter().enumerate() {
        let b = binomial(BigInt::from(2 * k), BigInt::from(k));
        ensure(*e == b, || format!("E∞_{k} = {e} != {b}"))?;
    }
    Ok(())
}

fn loop_formula() -> Outcome {
    let budget = OracleBudget::default();
    for d in 1..=3usize {
        let dp = lib(count_loops(d, 6, &budget))?;
        for k in 0..=6 {
            let b: BigUint = Pow::pow(binomial(BigUint::from(2 * k), BigUint::from(k)), d as u32);
            ensure(dp.counts()[k] == b, || format!("d={d} k={k}: DP {} vs {b}", dp.counts()[k]))?;
        }
        let model = lib(LoopModel::new(d, 25))?;
        let l = model.loop_gf();
        let renewal = lib(lib(l.checked_mul(&model.primitive_excursion_gf()))?.checked_add(&lib(TruncatedSeries::one(25))?))?;
        ensure(l == renewal, || format!("renewal fails for d={d}"))?;
    }
    Ok(())
}

fn circulant_chain() -> Outcome {
    let order = 20;
    for d in 1..=2 {
        for k in 1..=3 {
            ensure(lib(bc_relation_check(d, 2 * k, order))?, || format!("b-c relation d={d} k={k}"))?;
            ensure(lib(lemma_column_substitution_check(d, k, order))?, || format!("column lemma d={d} k={k}"))?;
            ensure(lib(cramer_ratio_check(d, k, order))?, || format!("Cramer ratio d={d} k={k}"))?;
            if d == 1 {
                let r = lib(hn_determinant_report(k, order))?;
                ensure(r.block_identity, || format!("det(B1)det(C)=det(C1) k={k}"))?;
                ensure(r.full_determinant, || format!("det(C)(1-(4t)^2k)^-1/2=1 k={k}"))?;
            }
        }
    }
    Ok(())
}

fn m_reduction() -> Outcome {
    for (d, s) in [(1, PeriodicSet::a1()), (1, PeriodicSet::a2()), (2, PeriodicSet::a1()), (2, PeriodicSet::a2())] {
        ensure(lib(reduction_check(d, &s, 0, 0, 20))?, || format!("reduction d={d} {s}"))?;
    }
    Ok(())
}

fn odd_length() -> Outcome {
    let budget = OracleBudget::default();
    for d in 1..=2usize {
        for s in [PeriodicSet::a1(), PeriodicSet::a2()] {
            let even = lib(count_restricted(d, &s, 10, &budget))?;
            for k in 0..=10 {
                let odd = lib(odd_length_count(d, &s, k, &budget))?;
                let expected = BigUint::from(1u32 << d) * &even.counts()[k];
                ensure(odd == expected, || format!("d={d} {s} k={k}: {odd} != {expected}"))?;
            }
        }
    }
    Ok(())
}

fn degenerate_inputs() -> Outcome {
    for d in 1..=2usize {
        for period in 1..=4 {
            let p = integer_coeffs(&lib(restricted_path_gf(d, &lib(PeriodicSet::full(period).map_err(Into::into))?, 0, 12))?)?;
            for (k, c) in p.iter().enumerate() {
                let all: BigInt = Pow::pow(BigInt::from(2 * d), 2 * k as u32);
                ensure(*c == all, || format!("full set d={d} t_A={period} k={k}: {c} != {all}"))?;
            }
        }
    }
    let bin = env!("CARGO_BIN_EXE_lattice-gf");
    let invalid: [&[&str]; 4] = [
        &["gf", "--residues", "1", "--period", "4"],
        &["gf", "--residues", "0,4", "--period", "4"],
        &["gf", "--residues", "0,2,2", "--period", "4"],
        &["gf", "--residues", "", "--period", "4"],
    ];
    for args in invalid {
        let status = Command::new(bin).args(args).output().map_err(|e| e.to_string())?.status;
        ensure(status.code() == Some(2), || format!("{args:?} exited with {status}"))?;
    }
    let status = Command::new(bin)
        .args(["compare", "--dim", "2", "--order", "40"])
        .output()
        .map_err(|e| e.to_string())?
        .status;
    ensure(status.code() == Some(3), || format!("over-cap compare exited with {status}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 HN identity k=1..3, N=25", hn_identity),
        ("2 d=2 A1 even series through t^12", two_dim_series),
        ("3 GF equals DP oracle, d=1,2, four periodic sets, up to the cap", oracle_equivalence),
        ("4 d=1 closed forms (2 Cat(k-1), binom(2k,k)), k<=24", one_dim_closed_forms),
        ("5 loop counts binom(2k,k)^d and renewal L = L SL + 1", loop_formula),
        ("6 circulant chain d=1,2, k=1..3, N=20", circulant_chain),
        ("7 M-reduction for A1, A2 in d=1,2", m_reduction),
        ("8 odd length = 2^d x even length, k<=10", odd_length),
        ("9 degenerate inputs and CLI error codes", degenerate_inputs),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        match check() {
            Ok(()) => println!("PASS  criterion {name}  ({:.2?})", start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name}: {why}");
            }
        }
    }
    println!("{} of {} acceptance criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
