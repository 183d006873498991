//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use wreathk::classfun::{indicator, induce, inner_product, restrict};
use wreathk::complex::{
    barycentric_subdivision, betti, bredon_dims, connective_k_dims, equivariant_k_dims,
    quotient_k_dims, GSimplicialComplex,
};
use wreathk::counting::ClassCounterRegistry;
use wreathk::group::{FiniteGroup, GroupEmbedding, DEFAULT_ORDER_CAP as CAP};
use wreathk::hopf::{fq_dim_series, supersymmetric_dims, FqAlgebra};
use wreathk::io::{read_complex, read_group};
use wreathk::qseries::eta_power;
use wreathk::wreath::embed_wreath_product;
use wreathk::Rational;

type Outcome = Result<String, String>;
type Check = fn() -> Outcome;

fn data(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(rel)
}

fn group(file: &str) -> Arc<FiniteGroup> {
    Arc::new(read_group(&data(&format!("groups/{file}.json")), CAP).expect("group fixture"))
}

/// (fixture, largest n) for the group corpus.
const GROUPS: [(&str, usize); 4] = [("trivial", 6), ("c2", 4), ("c3", 3), ("s3", 3)];

/// (name, group fixture, complex fixture)
const COMPLEXES: [(&str, &str, &str); 6] = [
    ("point/S3", "s3", "point"),
    ("hexagon/trivial C2", "c2", "hexagon"),
    ("hexagon/rotation C2", "c2", "hexagon_rotation"),
    ("hexagon/reflection C2", "c2", "hexagon_reflection"),
    ("tetrahedron boundary/swap C2", "c2", "tetrahedron_swap"),
    ("S3 on itself", "s3", "s3_self"),
];

fn complexes() -> Vec<(&'static str, GSimplicialComplex)> {
    COMPLEXES
        .iter()
        .map(|&(name, g, x)| {
            let x = read_complex(&data(&format!("complexes/{x}.json")), group(g))
                .expect("complex fixture");
            (name, x)
        })
        .collect()
}

fn int(c: u64) -> Rational {
    Rational::from_integer(c.into())
}

fn brute_counts(g: &Arc<FiniteGroup>, max_n: usize) -> Result<Vec<u64>, String> {
    let registry = ClassCounterRegistry::default();
    let brute = registry.get("brute").map_err(|e| e.to_string())?;
    (0..=max_n)
        .map(|n| brute.count(g, n, CAP).map_err(|e| e.to_string()))
        .collect()
}

fn criterion_1() -> Outcome {
    let registry = ClassCounterRegistry::default();
    let labels = registry.get("labels").map_err(|e| e.to_string())?;
    let mut checked = 0;
    for (file, max_n) in GROUPS {
        let g = group(file);
        let eta = eta_power(-(g.class_count() as i64), max_n);
        let brute = brute_counts(&g, max_n)?;
        for (n, &b) in brute.iter().enumerate() {
            let l = labels.count(&g, n, CAP).map_err(|e| e.to_string())?;
            if b != l || int(b) != *eta.coeff(n) {
                return Err(format!(
                    "{} n={n}: brute {b}, labels {l}, series {}",
                    g.name(),
                    eta.coeff(n)
                ));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} (G, n) pairs"))
}

fn criterion_2() -> Outcome {
    let mut parts = Vec::new();
    for (file, n) in [("trivial", 4), ("c2", 3), ("c3", 2)] {
        let g = group(file);
        let alg = FqAlgebra::new(g.clone(), n, CAP).map_err(|e| e.to_string())?;
        let report = alg.hopf_axiom_report();
        if report.checks.len() != 5 || !report.all_passed() {
            let failed: Vec<_> = report
                .checks
                .iter()
                .filter(|c| !c.passed)
                .map(|c| c.axiom)
                .collect();
            return Err(format!("{} N={n}: failed {failed:?}", g.name()));
        }
        parts.push(format!("{} N={n}", g.name()));
    }
    Ok(parts.join(", "))
}

fn criterion_3() -> Outcome {
    for (file, max_n) in GROUPS {
        let g = group(file);
        let series = fq_dim_series(g.class_count() as u64, 0, max_n);
        let brute = brute_counts(&g, max_n)?;
        let expect: Vec<Rational> = brute.into_iter().map(int).collect();
        if series.coeffs() != expect.as_slice() {
            return Err(format!("{}: series {:?}", g.name(), series.to_strings()));
        }
    }
    let n = 8;
    for d0 in 0..=2u64 {
        for d1 in 0..=2u64 {
            let gen0: BTreeMap<usize, u64> = (1..=n).map(|r| (r, d0)).collect();
            let gen1: BTreeMap<usize, u64> = (1..=n).map(|r| (r, d1)).collect();
            let ss: Vec<String> = supersymmetric_dims(&gen0, &gen1, n)
                .iter()
                .map(|x| x.to_string())
                .collect();
            if ss != fq_dim_series(d0, d1, n).to_strings() {
                return Err(format!("(d0, d1) = ({d0}, {d1})"));
            }
        }
    }
    Ok("corpus groups and 3x3 grid at N=8".into())
}

fn criterion_4() -> Outcome {
    let top = 6;
    for (name, x) in complexes() {
        let bredon = bredon_dims(&x).map_err(|e| e.to_string())?;
        let k = connective_k_dims(&x, top).map_err(|e| e.to_string())?;
        let kd = equivariant_k_dims(&x).map_err(|e| e.to_string())?;
        for n in 0..=top {
            let below = if n >= 2 { k[n - 2] } else { 0 };
            if k[n] - below != bredon.get(n) {
                return Err(format!("{name}: ladder fails at n={n}"));
            }
        }
        let dim = x.dim().unwrap_or(0);
        for (n, &kn) in k.iter().enumerate().skip(dim + 1) {
            let parity = if n % 2 == 0 { kd.even } else { kd.odd };
            if kn != parity {
                return Err(format!("{name}: k_{n} = {kn} but parity total is {parity}"));
            }
        }
    }
    Ok(format!("{} complexes, n <= {top}", COMPLEXES.len()))
}

fn criterion_5() -> Outcome {
    let mut free = Vec::new();
    for (name, x) in complexes() {
        if !x.is_free() {
            continue;
        }
        let kd = equivariant_k_dims(&x).map_err(|e| e.to_string())?;
        let q = quotient_k_dims(&x).map_err(|e| e.to_string())?;
        if kd != q {
            return Err(format!("{name}: {kd:?} vs quotient {q:?}"));
        }
        free.push(name);
    }
    if free.is_empty() {
        return Err("no free action in the corpus".into());
    }
    Ok(free.join(", "))
}

fn reciprocity(emb: &GroupEmbedding) -> Result<usize, String> {
    let (h, g) = (emb.source(), emb.target());
    let mut pairs = 0;
    for a in 0..h.class_count() {
        let f = indicator(h, a).map_err(|e| e.to_string())?;
        let ind = induce(emb, &f).map_err(|e| e.to_string())?;
        for b in 0..g.class_count() {
            let k = indicator(g, b).map_err(|e| e.to_string())?;
            let res = restrict(emb, &k).map_err(|e| e.to_string())?;
            let lhs = inner_product(&ind, &k).map_err(|e| e.to_string())?;
            let rhs = inner_product(&f, &res).map_err(|e| e.to_string())?;
            if lhs != rhs {
                return Err(format!("{} -> {}: classes ({a}, {b})", h.name(), g.name()));
            }
            pairs += 1;
        }
    }
    Ok(pairs)
}

fn criterion_6() -> Outcome {
    let mut embeddings = 0;
    let mut pairs = 0;
    for (file, top) in [("trivial", 4), ("c2", 3), ("c3", 2)] {
        let alg = FqAlgebra::new(group(file), top, CAP).map_err(|e| e.to_string())?;
        for n in 0..=top {
            for m in 0..=top - n {
                pairs += reciprocity(alg.embedding(n, m))?;
                embeddings += 1;
            }
        }
    }
    for (file, max_n) in GROUPS {
        let g = group(file);
        for total in 2..=max_n.min(3) {
            for n in 1..total {
                let emb = embed_wreath_product(&g, n, total - n, CAP).map_err(|e| e.to_string())?;
                pairs += reciprocity(&emb)?;
                embeddings += 1;
            }
        }
    }
    Ok(format!("{embeddings} embeddings, {pairs} indicator pairs"))
}

fn criterion_7() -> Outcome {
    for (name, x) in complexes() {
        let invariants = |y: &GSimplicialComplex| -> Result<_, String> {
            Ok((
                betti(y),
                bredon_dims(y).map_err(|e| e.to_string())?,
                equivariant_k_dims(y).map_err(|e| e.to_string())?,
            ))
        };
        let base = invariants(&x)?;
        let once = barycentric_subdivision(&x);
        let twice = barycentric_subdivision(&once);
        if invariants(&once)? != base || invariants(&twice)? != base {
            return Err(format!("{name}: invariants change under subdivision"));
        }
    }
    Ok(format!(
        "{} complexes, 1 and 2 subdivisions",
        COMPLEXES.len()
    ))
}

fn criterion_8() -> Outcome {
    for (file, max_n) in GROUPS {
        let path = data(&format!("groups/{file}.json"));
        let out = Command::new(env!("CARGO_BIN_EXE_wreathk"))
            .args(["fq", "dims", "-g"])
            .arg(&path)
            .args(["-N", &max_n.to_string()])
            .output()
            .map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(format!(
                "{file}: exit {:?}: {}",
                out.status.code(),
                String::from_utf8_lossy(&out.stderr)
            ));
        }
        let report: serde_json::Value =
            serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
        if report["result"]["match"] != serde_json::Value::Bool(true) {
            return Err(format!("{file}: match is {}", report["result"]["match"]));
        }
    }
    Ok("fq dims reports match=true on the group corpus".into())
}

fn main() {
    let criteria: [(&str, Check); 8] = [
        (
            "wreath class counts: brute = labels = eta coefficient",
            criterion_1,
        ),
        ("Hopf axioms", criterion_2),
        (
            "dimension series and supersymmetric dimensions",
            criterion_3,
        ),
        ("connective ladder and stabilization", criterion_4),
        ("free-action collapse", criterion_5),
        ("Frobenius reciprocity", criterion_6),
        ("subdivision invariance", criterion_7),
        ("CLI class-count identity", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}) [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {}/{} passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
