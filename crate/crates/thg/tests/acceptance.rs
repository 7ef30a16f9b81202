//! Acceptance gate: one line per criterion, nonzero exit if any fails.

#[path = "../../core/tests/oracle/mod.rs"]
mod oracle;

use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::ExitCode;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use thg::cli;
use thg::Catalog;
use thg_core::abelian::{cokernel, smith_normal_form, subgroup_index};
use thg_core::fox::{
    fox_sequence_check, gottlieb_fox_index, gottlieb_fox_invariants, is_n_gottlieb, multiplicities, prop26_crosscheck,
};
use thg_core::rhodes::{
    compute_g0, gottlieb_rhodes_invariants, oprea_check, prop37_check, rhodes_split_check, sigma1_group,
    sigma_invariants, theorem31_audit,
};
use thg_core::report::Status;
use thg_core::{
    CayleyGroup, Determined, ExtNat, FgAbelian, IntMatrix, Pi1, SpaceModel, TowerElement, TransformationModel, Verdict,
};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn catalog() -> Catalog {
    Catalog::builtin().expect("built-in catalog loads")
}

fn tg(c: &Catalog, name: &str) -> TransformationModel {
    c.transformations()
        .into_iter()
        .find(|t| t.name.eq_ignore_ascii_case(name))
        .cloned()
        .unwrap_or_else(|| panic!("{name} missing"))
}

fn space(c: &Catalog, name: &str) -> SpaceModel {
    c.space(name).unwrap_or_else(|| panic!("{name} missing"))
}

fn free(c: &Catalog) -> Vec<TransformationModel> {
    c.transformations().into_iter().filter(|t| t.free).cloned().collect()
}

fn quaternion_golden() -> Outcome {
    let c = catalog();
    let t = tg(&c, "rp3-z2z2");
    let s1 = sigma1_group(&t).map_err(|e| e.to_string())?;
    ensure(s1.is_isomorphic(&CayleyGroup::quaternion()).unwrap(), || format!("sigma_1 is {}", s1.label()))?;
    let Determined::Known(gr) = gottlieb_rhodes_invariants(&t, 1).unwrap() else {
        return Err("G sigma_1 undetermined".into());
    };
    let realized = gr.realized.ok_or("no realized group")?;
    ensure(realized.order() == 8 && gr.abelian == Some(false), || format!("G sigma_1 {}", realized.label()))?;
    ensure(realized.is_isomorphic(&CayleyGroup::quaternion()).unwrap(), || "G sigma_1 is not Q8".into())?;
    let gf = gottlieb_fox_invariants(&t.space, 1).unwrap().known().ok_or("G tau_1 undetermined")?;
    ensure(gf.layer_product() == Some(FgAbelian::cyclic(2)), || "G tau_1 is not Z2".into())?;
    let g0 = compute_g0(&t).unwrap();
    ensure(g0.is_whole() == Verdict::True, || format!("G0 = {}", g0.label()))?;
    Ok("sigma_1 = Q8, G sigma_1 order 8 non-abelian, G tau_1 = Z2, G0 = G".into())
}

/// `|G| * prod |pi_i|^C(n-1,i-1)` and the matching free rank, from the raw
/// model data.
fn bookkeeping(t: &TransformationModel, n: u32, pascal: &[Vec<u128>]) -> (Option<u128>, usize) {
    let x = &t.space;
    let mut order = Some(t.group.order() as u128);
    let mut rank = 0usize;
    for i in 1..=n {
        let mult = oracle::choose(pascal, i64::from(n) - 1, i64::from(i) - 1);
        let (o, h) = if i == 1 {
            (x.pi1.order(), x.pi1.hirsch_length())
        } else {
            let a = x.pi_abelian(i).unwrap();
            (a.order(), a.rank())
        };
        rank += h * mult as usize;
        order = match (order, o.to_u64()) {
            (Some(acc), Some(v)) => Some(acc * (v as u128).pow(mult as u32)),
            _ => None,
        };
    }
    (order, rank)
}

fn sigma_two_ways() -> Outcome {
    let c = catalog();
    let pascal = oracle::pascal(16);
    let mut pairs = 0;
    for t in free(&c) {
        for n in 1..=t.space.truncation {
            let s = sigma_invariants(&t, n).map_err(|e| format!("{} n={n}: {e}", t.name))?;
            ensure(s.agree(), || format!("{} n={n}: two computations differ", t.name))?;
            let (order, rank) = bookkeeping(&t, n, &pascal);
            let got = s.orbit.finite_order.to_u64().map(u128::from);
            ensure(got == order && s.orbit.free_rank == rank, || {
                format!("{} n={n}: orbit {:?}/{} vs bookkeeping {order:?}/{rank}", t.name, got, s.orbit.free_rank)
            })?;
            pairs += 1;
        }
    }
    ensure(pairs >= 20, || format!("only {pairs} pairs"))?;
    Ok(format!("{pairs} (model, n) pairs agree"))
}

fn split_sequences() -> Outcome {
    let c = catalog();
    let mut runs = 0;
    for x in c.spaces() {
        for n in 2..=x.truncation {
            let r = fox_sequence_check(x, n).map_err(|e| format!("{} n={n}: {e}", x.name))?;
            ensure(r.passed(), || format!("{} n={n}: {:?}", x.name, r.failures().collect::<Vec<_>>()))?;
            runs += 1;
        }
    }
    for t in free(&c) {
        for n in 2..=t.space.truncation {
            let r = rhodes_split_check(&t, n).map_err(|e| format!("{} n={n}: {e}", t.name))?;
            ensure(r.passed(), || format!("{} n={n}: {:?}", t.name, r.failures().collect::<Vec<_>>()))?;
            runs += 1;
        }
    }
    Ok(format!("{runs} sequence checks pass"))
}

fn multiplicity_calculus() -> Outcome {
    let pascal = oracle::pascal(32);
    let mut checked = 0;
    for n in 1..=30i64 {
        for i in 1..=n {
            let m = multiplicities(n as u32, i as u32).map_err(|e| e.to_string())?;
            let pascal_rule = (m.beta + m.gamma) as u128 == oracle::choose(&pascal, n, i - 1);
            ensure(pascal_rule, || format!("beta + gamma at n={n} i={i}"))?;
            let telescoped: u128 = (i.max(2)..=n).map(|k| oracle::choose(&pascal, k - 2, i - 2)).sum();
            let want = oracle::choose(&pascal, n - 1, i - 1);
            let ok = if i == 1 { m.gamma as u128 == want } else { telescoped == want && m.gamma as u128 == want };
            ensure(ok, || format!("telescoping at n={n} i={i}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (n, i) pairs"))
}

fn complete_gottlieb(x: &SpaceModel) -> bool {
    (1..=x.truncation).all(|i| matches!(x.gottlieb_index(i), Ok(Some(_))))
}

fn gottlieb_vs_fox() -> Outcome {
    let c = catalog();
    let mut spaces = 0;
    for x in c.spaces().into_iter().filter(|x| complete_gottlieb(x)) {
        for n in 1..=x.truncation {
            let r = prop26_crosscheck(x, n).map_err(|e| e.to_string())?;
            ensure(r.passed() && r.count(Status::Indeterminate) == 0, || format!("{} n={n}: {r:?}", x.name))?;
        }
        spaces += 1;
    }
    let q = space(&c, "s3-mod-q8");
    let left = is_n_gottlieb(&q, 1).unwrap();
    let (right, index) = gottlieb_fox_index(&q, 1).unwrap();
    ensure(left == Verdict::False && right == Verdict::False && index == ExtNat::from(4usize), || {
        format!("S3/Q8 n=1: {left} / {right} index {index}")
    })?;
    Ok(format!("{spaces} spaces agree; S3/Q8 false on both sides with index 4"))
}

fn g0_corpus() -> Outcome {
    let c = catalog();
    let expect = [
        ("s3-z4", true),
        ("s3-q8", true),
        ("s1-z2", true),
        ("s2-z2", false),
        ("t3-z2", false),
        ("s3xs3xs3-z2", false),
    ];
    for (name, whole) in expect {
        let g0 = compute_g0(&tg(&c, name)).unwrap();
        let s = g0.determined().known().ok_or_else(|| format!("{name}: undetermined"))?;
        let ok = if whole { g0.is_whole() == Verdict::True } else { s.order() == 1 };
        ensure(ok, || format!("{name}: G0 = {}", g0.label()))?;
    }
    Ok("odd spheres G0 = G; S2, T3, S3xS3xS3 antipodal-type actions G0 = {e}".into())
}

fn fixed_rank_by_oracle(action: &[Vec<i64>]) -> usize {
    let d = action.len();
    let minus_identity: oracle::Mat =
        (0..d).map(|r| (0..d).map(|c| action[r][c] - i64::from(r == c)).collect()).collect();
    d - oracle::invariant_factors(&minus_identity, d).1
}

fn audits() -> Outcome {
    let c = catalog();
    let mut exceptions = Vec::new();
    for t in free(&c) {
        let r = theorem31_audit(&t, t.space.truncation).map_err(|e| format!("{}: {e}", t.name))?;
        ensure(r.count(Status::Violation) == 0, || format!("{}: violation", t.name))?;
        for e in r.entries.iter().filter(|e| e.status == Status::DocumentedException) {
            ensure(e.item.contains("n=1"), || format!("{}: exception outside n = 1", t.name))?;
            exceptions.push(t.name.clone());
        }
    }
    for name in ["s3xs3xs3-z2", "s3-q8"] {
        ensure(exceptions.iter().any(|e| e.eq_ignore_ascii_case(name)), || format!("{name} exception missing"))?;
    }

    let t = tg(&c, "t3-z2");
    let r = prop37_check(&t, t.space.truncation).map_err(|e| e.to_string())?;
    ensure(r.passed() && r.count(Status::Indeterminate) == 0, || format!("{r:?}"))?;
    let orbit = t.orbit_space().unwrap();
    let Pi1::Virt(v) = &orbit.pi1 else {
        return Err("orbit pi_1 is not an extension".into());
    };
    let center = v.center_summary().unwrap();
    ensure(center.free_rank == 1 && center.finite_order == ExtNat::Infinite, || format!("{center:?}"))?;
    let action: Vec<Vec<i64>> = (0..3)
        .map(|r| (0..3).map(|c| i64::try_from(v.action(1).get(r, c)).unwrap()).collect())
        .collect();
    ensure(fixed_rank_by_oracle(&action) == 1, || "fixed lattice rank differs".into())?;
    central_elements_by_search(v)?;
    Ok(format!("0 violations; documented exceptions at n=1 for {}; T3/Z2 center rank 1", exceptions.join(", ")))
}

/// The elements of a small box commuting with every generator are exactly
/// the multiples of `e_1`; `t` squares to `e_1` but is not central.
fn central_elements_by_search(v: &thg_core::VirtAbelian) -> Result<(), String> {
    let el = |a: [i64; 3], q: usize| TowerElement {
        layer: a.iter().map(|&x| BigInt::from(x)).collect(),
        base: q,
    };
    let gens = [el([1, 0, 0], 0), el([0, 1, 0], 0), el([0, 0, 1], 0), el([0, 0, 0], 1)];
    let mut central = Vec::new();
    for q in 0..2 {
        for a in -2..=2 {
            for b in -2..=2 {
                for c in -2..=2 {
                    let x = el([a, b, c], q);
                    let commutes = gens.iter().all(|g| {
                        let l = v.multiply(&x, g).unwrap();
                        let r = v.multiply(g, &x).unwrap();
                        v.same_element(&l, &r)
                    });
                    if commutes {
                        central.push((a, b, c, q));
                    }
                }
            }
        }
    }
    ensure(central == (-2..=2).map(|a| (a, 0, 0, 0)).collect::<Vec<_>>(), || {
        format!("central elements in box: {central:?}")
    })?;
    let t = el([0, 0, 0], 1);
    let t2 = v.multiply(&t, &t).unwrap();
    ensure(v.same_element(&t2, &el([1, 0, 0], 0)), || format!("t^2 = {t2:?}"))
}

fn algebra_oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce97);
    let mut count = 0;
    let exemplars: Vec<(oracle::Mat, usize)> =
        vec![(vec![vec![2, 4], vec![6, 8]], 2), (vec![vec![2, 0]], 2), (vec![vec![1, 0], vec![0, 1]], 2), (vec![vec![0]], 1)];
    let random = (0..520).map(|_| {
        let rows = rng.gen_range(1..=3);
        let cols = rng.gen_range(1..=3);
        let m: oracle::Mat = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-4..=4)).collect()).collect();
        (m, cols)
    });
    for (m, cols) in exemplars.into_iter().chain(random) {
        let im = IntMatrix::from_rows(cols, &m).unwrap();
        let divisors = oracle::determinantal_divisors(&m, cols);
        let mut prefix = 1i128;
        for (k, d) in smith_normal_form(&im).diag.iter().enumerate() {
            prefix *= i128::try_from(d).unwrap();
            ensure(prefix == divisors[k + 1], || format!("smith {m:?}"))?;
        }
        let (factors, rank) = oracle::invariant_factors(&m, cols);
        let q = cokernel::<i64>(cols, &[], &im).unwrap();
        let torsion: Vec<i128> = factors.into_iter().filter(|&d| d != 1).collect();
        let got: Vec<i128> = q.torsion().iter().map(|d| i128::try_from(d).unwrap()).collect();
        ensure(q.rank() == cols - rank && got == torsion, || format!("cokernel {m:?}"))?;
        let index = subgroup_index(&FgAbelian::free(cols), &im).unwrap();
        let want = match oracle::hermite_basis(&m, cols) {
            None => ExtNat::Infinite,
            Some(h) => ExtNat::from(oracle::cosets(&h).len()),
        };
        ensure(index == want, || format!("index {m:?}: {index} vs {want}"))?;
        count += 1;
    }
    let c = catalog();
    let table = tg(&c, "rp3-z2z2").sigma1_extension().unwrap().to_cayley().unwrap();
    ensure(table.is_isomorphic(&CayleyGroup::quaternion()).unwrap(), || "to_cayley is not Q8".into())?;
    Ok(format!("{count} matrices match brute force; quaternion extension table = Q8"))
}

fn odd_sphere_orbit_g1() -> Outcome {
    let c = catalog();
    for name in ["s3-z4", "s3-q8"] {
        let r = oprea_check(&tg(&c, name)).map_err(|e| e.to_string())?;
        ensure(r.passed() && r.count(Status::Pass) == 1, || format!("{name}: {r:?}"))?;
    }
    Ok("G_1(S3/G) = Z(G) for Z4 and Q8".into())
}

fn copy_catalog(to: &Path) {
    let from = Path::new(env!("CARGO_MANIFEST_DIR")).join("catalog");
    for f in fs::read_dir(from).unwrap() {
        let p = f.unwrap().path();
        fs::copy(&p, to.join(p.file_name().unwrap())).unwrap();
    }
}

fn verify_exit(dir: &Path) -> i32 {
    cli::run(["thg", "verify", "--all", "--max-n", "4", "--catalog-dir", dir.to_str().unwrap()]).code
}

fn flip(v: &Value) -> Value {
    if v == "trivial" {
        Value::from("full")
    } else {
        Value::from("trivial")
    }
}

/// Every recorded Gottlieb entry in degrees up to 4 whose flip is a real
/// change: the ambient group is nontrivial.
fn mutations(c: &Catalog) -> Vec<(String, String, Option<String>)> {
    let mut out = Vec::new();
    for e in c.entries() {
        let file = format!("{}.json", e.name.to_ascii_lowercase());
        let doc: Value = serde_json::from_str(&e.text).unwrap();
        if let Some(g) = doc.get("gottlieb").and_then(Value::as_object) {
            let x = c.space(&e.name).unwrap();
            for deg in g.keys() {
                let i: u32 = deg.parse().unwrap();
                let nontrivial = if i == 1 { !x.pi1.is_trivial() } else { !x.pi_abelian(i).unwrap().is_trivial() };
                if i <= 4 && nontrivial {
                    out.push((file.clone(), "gottlieb".to_string(), Some(deg.clone())));
                }
            }
        }
        for key in ["orbit_gottlieb1", "equivariant_gottlieb1"] {
            if doc.get(key).is_some() {
                out.push((file.clone(), key.to_string(), None));
            }
        }
    }
    out
}

fn cli_determinism() -> Outcome {
    let pristine = tempfile::tempdir().unwrap();
    copy_catalog(pristine.path());
    let code = verify_exit(pristine.path());
    ensure(code == 0, || format!("pristine catalog exits {code}"))?;
    let first = cli::run(["thg", "verify", "--all", "--max-n", "4", "--format", "json"]);
    let second = cli::run(["thg", "verify", "--all", "--max-n", "4", "--format", "json"]);
    ensure(first.stdout == second.stdout, || "json output differs between runs".into())?;

    let c = catalog();
    let list = mutations(&c);
    for (file, key, deg) in &list {
        let dir = tempfile::tempdir().unwrap();
        copy_catalog(dir.path());
        let path = dir.path().join(file);
        let mut doc: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        let slot = match deg {
            Some(d) => &mut doc[key.as_str()][d.as_str()],
            None => &mut doc[key.as_str()],
        };
        *slot = flip(slot);
        fs::write(&path, serde_json::to_string_pretty(&doc).unwrap() + "\n").unwrap();
        let code = verify_exit(dir.path());
        ensure(code == 3, || format!("{file} {key} {deg:?} perturbed exits {code}"))?;
    }
    ensure(list.iter().any(|(f, _, d)| f == "s3-mod-q8.json" && d.as_deref() == Some("1")), || {
        "the S3/Q8 G_1 mutation is missing".into()
    })?;
    Ok(format!("pristine exit 0, byte-identical json; {} single-entry mutations all exit 3", list.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("quaternion golden test", quaternion_golden),
        ("sigma_n two ways", sigma_two_ways),
        ("split sequences", split_sequences),
        ("multiplicity calculus", multiplicity_calculus),
        ("gottlieb vs gottlieb-fox", gottlieb_vs_fox),
        ("G0 corpus", g0_corpus),
        ("orbit audits", audits),
        ("algebra oracles", algebra_oracles),
        ("odd-sphere orbit G_1", odd_sphere_orbit_g1),
        ("CLI determinism", cli_determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match outcome {
            Ok(detail) => println!("criterion {}: PASS ({name}: {detail})", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL ({name}: {why})", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
