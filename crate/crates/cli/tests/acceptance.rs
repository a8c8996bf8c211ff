//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any fails.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::sync::Arc;

use itertools::Itertools;
use lcdim_core::analysis::{analyze, example_hl, t_and_v};
use lcdim_core::complex::{Simplex, SimplicialComplex};
use lcdim_core::field::FieldSpec;
use lcdim_core::groebner::{buchberger, reduce_with, s_polynomial};
use lcdim_core::homology::{boundary_matrix, full_reduced_betti, reduced_betti, reduced_euler_characteristic, relative_betti_pair};
use lcdim_core::ideal::{ideal_intersection, Ideal, IdealError, KrullDimension};
use lcdim_core::mv::{bound_faltings, bound_hl, bound_main, bound_sum, phi_cokernel_dim, phi_map};
use lcdim_core::poly::{Monomial, MonomialOrder, Polynomial, RingContext};
use lcdim_core::search::{random_arrangement, trial_rng};
use rand::Rng;
use serde_json::Value;

const CHARS: [u64; 5] = [0, 2, 3, 5, 7];

const LAMBDA: [[usize; 3]; 10] = [
    [1, 2, 3],
    [1, 3, 4],
    [2, 4, 5],
    [2, 4, 6],
    [1, 5, 6],
    [3, 5, 6],
    [2, 3, 5],
    [3, 4, 6],
    [1, 2, 6],
    [1, 4, 5],
];

const TRIANGLES: [[usize; 3]; 10] = [
    [1, 2, 4],
    [1, 2, 5],
    [1, 3, 5],
    [1, 3, 6],
    [1, 4, 6],
    [2, 3, 4],
    [2, 3, 6],
    [3, 4, 5],
    [4, 5, 6],
    [2, 5, 6],
];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn field(p: u64) -> FieldSpec {
    FieldSpec::new(p).unwrap()
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lcdim"))
}

fn run_json(args: &[&str]) -> Result<Value, String> {
    let out = bin().args(args).output().map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("lcdim {args:?} failed: {}", String::from_utf8_lossy(&out.stderr)));
    }
    serde_json::from_slice(&out.stdout).map_err(|e| format!("bad JSON from {args:?}: {e}"))
}

fn triple_set(list: &[[usize; 3]]) -> BTreeSet<Vec<usize>> {
    list.iter().map(|t| t.to_vec()).collect()
}

fn json_simplices(v: &Value) -> BTreeSet<Vec<usize>> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_array().unwrap().iter().map(|x| x.as_u64().unwrap() as usize).collect())
        .collect()
}

/// `example-hl` then `analyze` over `characteristic` with a = 2.
fn realization_report(dir: &Path, characteristic: u64) -> Result<Value, String> {
    let file = dir.join(format!("hl_{characteristic}.lcd"));
    let file = file.to_str().unwrap();
    let ch = characteristic.to_string();
    let out = bin()
        .args(["example-hl", "--a", "2", "--char", &ch, "--emit", file])
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(out.status.success(), "example-hl failed: {}", String::from_utf8_lossy(&out.stderr));
    run_json(&["analyze", file, "--dim-cap", "3", "--coeff-chars", "2,0,7", "--machine"])
}

fn criterion_1() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut deltas = Vec::new();
    for ch in [7, 0] {
        let report = realization_report(dir.path(), ch)?;
        let delta = &report["delta"];
        let lambda = json_simplices(&delta["lambda_t"]);
        ensure!(report["t"] == 2, "char {ch}: t = {}", report["t"]);
        ensure!(lambda == triple_set(&LAMBDA), "char {ch}: Λ = {lambda:?}");
        let triangles: BTreeSet<Vec<usize>> = (1..=6usize).combinations(3).filter(|t| !lambda.contains(t)).collect();
        ensure!(triangles == triple_set(&TRIANGLES), "char {ch}: 2-simplices {triangles:?}");
        ensure!(delta["counts"][3] == 0, "char {ch}: 3-simplices present: {}", delta["counts"]);
        ensure!(json_simplices(&delta["lambda_t1"]).len() == 15, "char {ch}: not every quadruple is m-primary");
        deltas.push(delta.clone());
    }
    ensure!(deltas[0] == deltas[1], "Δ over GF(7) and Q differ");

    // the library path agrees simplex by simplex
    for ch in [7, 0] {
        let ring = RingContext::standard(field(ch), 6).unwrap();
        let primes = example_hl(&ring.field().from_i64(2), &ring).map_err(|e| e.to_string())?;
        let report = analyze(&primes, &[], None, &[field(2)], Some(3)).map_err(|e| e.to_string())?;
        let tri: BTreeSet<Vec<usize>> = report.complex.layer(2).unwrap().iter().cloned().collect();
        ensure!(tri == triple_set(&TRIANGLES), "library 2-simplices differ over char {ch}");
        ensure!(report.complex.layer(3).unwrap().is_empty(), "library finds 3-simplices");
    }
    Ok("Λ and the ten 2-simplices match over GF(7) and Q; no 3-simplices".into())
}

fn criterion_2() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for ch in [7, 0] {
        let report = realization_report(dir.path(), ch)?;
        let w = serde_json::to_string(&report["w"]).unwrap();
        ensure!(w == r#"{"2":1,"0":0,"7":0}"#, "w = {w}");
        ensure!(report["v"] == 3, "v = {}", report["v"]);
        let v2 = &report["verdicts"]["2"];
        ensure!(v2["conclusion"] == "H^4_I ≅ (H^6_m)^1", "char 2 conclusion {}", v2["conclusion"]);
        ensure!(v2["cd"] == "cd = 4", "char 2 cd {}", v2["cd"]);
        for other in ["0", "7"] {
            let v = &report["verdicts"][other];
            ensure!(v["cd"] == "cd ≤ 3", "char {other}: {}", v["cd"]);
            ensure!(v["conclusion"] == "H^4_I = 0", "char {other}: {}", v["conclusion"]);
        }
    }
    Ok("w = 1 in char 2 (H^4_I ≅ H^6_m, cd = 4); w = 0 and cd ≤ 3 in chars 0, 7".into())
}

/// Checks coker Φ = H_t(S,Δ) = H̃_{t-1}(Δ) for every characteristic.
fn triple_equality(c: &SimplicialComplex, t: usize, label: &str) -> Result<(), String> {
    let phi = phi_map(c, t).map_err(|e| format!("{label}: {e}"))?;
    for p in CHARS {
        let k = field(p);
        let coker = phi_cokernel_dim(&phi, k);
        let rel = relative_betti_pair(c, k, t).map_err(|e| format!("{label}: {e}"))?;
        let red = reduced_betti(c, k, &[t as i64 - 1]).map_err(|e| format!("{label}: {e}"))?.reduced[&(t as i64 - 1)];
        ensure!(coker == rel && rel == red, "{label} t={t} char {p}: coker {coker}, relative {rel}, reduced {red}");
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    let mut count = 0;
    for ch in [7, 0] {
        let ring = RingContext::standard(field(ch), 6).unwrap();
        let primes = example_hl(&ring.field().from_i64(2), &ring).map_err(|e| e.to_string())?;
        let report = analyze(&primes, &[], None, &[field(0)], None).map_err(|e| e.to_string())?;
        triple_equality(&report.complex, 2, "realization")?;
        count += 1;
    }
    let two_planes = SimplicialComplex::from_facets(2, 1, &[vec![1], vec![2]]).unwrap();
    triple_equality(&two_planes, 1, "two planes")?;
    count += 1;

    let mut stock: Vec<(String, SimplicialComplex)> = vec![("rp2".into(), SimplicialComplex::rp2_six_vertex())];
    for n in 1..=8 {
        stock.push((format!("full({n})"), SimplicialComplex::full(n)));
        if n >= 2 {
            stock.push((format!("sphere({n})"), SimplicialComplex::sphere_boundary(n)));
        }
    }
    for (label, c) in &stock {
        for t in 1..c.n_vertices().max(2) {
            if c.has_full_skeleton(t - 1) == Some(true) {
                triple_equality(c, t, label)?;
                count += 1;
            }
        }
    }

    let mut random = 0;
    for trial in 0..120u64 {
        let mut rng = trial_rng(2024, trial);
        let n = rng.gen_range(3..=8usize);
        let t = rng.gen_range(1..n);
        let mut facets: Vec<Simplex> = (1..=n).combinations(t).collect();
        for _ in 0..rng.gen_range(0..8) {
            let size = rng.gen_range(t + 1..=(t + 2).min(n));
            let mut f: Vec<usize> = (1..=n).collect();
            for i in (1..f.len()).rev() {
                f.swap(i, rng.gen_range(0..=i));
            }
            let mut f = f[..size].to_vec();
            f.sort();
            facets.push(f);
        }
        let c = SimplicialComplex::from_facets(n, (t + 1).min(n - 1), &facets).unwrap();
        ensure!(c.has_full_skeleton(t - 1) == Some(true), "trial {trial}: skeleton missing");
        triple_equality(&c, t, &format!("random trial {trial}"))?;
        random += 1;
    }
    Ok(format!("{} complexes ({random} random) x 5 characteristics, zero exceptions", count + random))
}

fn criterion_4() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let file = dir.path().join("planes.lcd");
    std::fs::write(&file, "ring: char=0 vars=[X1,X2,X3,X4]\nideal I1: X1, X2\nideal I2: X3, X4\n").map_err(|e| e.to_string())?;
    let report = run_json(&["analyze", file.to_str().unwrap(), "--coeff-chars", "0,2,3,5,7", "--machine"])?;
    ensure!(report["t"] == 1 && report["v"] == 2, "t = {}, v = {}", report["t"], report["v"]);
    for p in CHARS {
        let key = p.to_string();
        ensure!(report["w"][&key] == 1, "char {p}: w = {}", report["w"][&key]);
        let conclusion = &report["verdicts"][&key]["conclusion"];
        ensure!(conclusion == "H^3_I ≅ (H^4_m)^1", "char {p}: {conclusion}");
    }
    Ok("t = 1, v = 2, w = 1 in every characteristic; H^3_I ≅ (H^4_m)^1".into())
}

fn criterion_5() -> Outcome {
    let chars: Vec<FieldSpec> = CHARS.map(field).to_vec();
    let mut runs = 0;
    let mut trial = 0u64;
    while runs < 200 {
        ensure!(trial < 400, "too many invalid draws");
        let mut rng = trial_rng(77, trial);
        let d = rng.gen_range(4..=8usize);
        let c = rng.gen_range(1..d);
        let max_n = (d - 1) / c;
        trial += 1;
        if max_n == 0 {
            continue;
        }
        let n = rng.gen_range(1..=max_n);
        let base = [0u64, 7, 101][trial as usize % 3];
        let ring = RingContext::standard(field(base), d).unwrap();
        let primes = random_arrangement(&ring, c, n, &mut rng);
        let Ok(report) = analyze(&primes, &[], None, &chars, None) else {
            continue;
        };
        ensure!(report.n_primes * report.c < report.d, "trial {trial}: n ≥ d/c");
        ensure!(report.per_char.iter().all(|r| r.w == 0), "trial {trial}: nonzero w");
        runs += 1;
    }

    let mut sharp = 0;
    for d in 3usize..=10 {
        for c in 1..d {
            if (d - 1) % c == 0 {
                continue;
            }
            let n = d.div_ceil(c);
            let ring = RingContext::standard(field(0), d).unwrap();
            let primes: Vec<Ideal> = (0..n)
                .map(|k| Ideal::new(&ring, (k * c..((k + 1) * c).min(d)).map(|i| Polynomial::var(&ring, i)).collect()).unwrap())
                .collect();
            let report = analyze(&primes, &[], None, &chars, None).map_err(|e| e.to_string())?;
            let sphere = SimplicialComplex::sphere_boundary(n);
            ensure!(report.complex.layers()[..n - 1] == sphere.layers()[..n - 1], "d={d} c={c}: Δ is not ∂Δ^{}", n - 1);
            ensure!(report.complex.layers()[n - 1..].iter().all(|l| l.is_empty()), "d={d} c={c}: full sum not m-primary");
            let (t, _) = t_and_v(d, c);
            ensure!(t == n - 1, "d={d} c={c}: t = {t}");
            ensure!(report.per_char.iter().all(|r| r.w == 1), "d={d} c={c}: w ≠ 1");
            sharp += 1;
        }
    }
    Ok(format!("{runs} random arrangements with n < d/c all have w = 0; {sharp} sphere cases have w = 1"))
}

fn criterion_6() -> Outcome {
    let mut cells = 0;
    for d in 2i64..=20 {
        for c in 1..d {
            let (du, cu) = (d as u64, c as u64);
            let faltings = du - (du - 1) / cu;
            let hl = du - 1 - (du - 2) / cu;
            ensure!(bound_faltings(d, c) == Ok(faltings as i64), "faltings d={d} c={c}");
            ensure!(bound_hl(d, c) == Ok(hl as i64), "hl d={d} c={c}");
            ensure!((hl == faltings) == ((du - 1) % cu == 0), "coincidence d={d} c={c}");
            for p in 0i64..=3 {
                let pu = p as u64;
                ensure!(bound_sum(d, c, p) == Ok((faltings + pu) as i64), "sum d={d} c={c} p={p}");
                let main = bound_main(d, c, p);
                if du <= (pu + 1) * cu {
                    ensure!(main.is_err(), "main should fail at d={d} c={c} p={p}");
                } else {
                    ensure!(main == Ok((hl + pu) as i64), "main d={d} c={c} p={p}");
                }
                cells += 1;
            }
        }
    }
    let out = bin().args(["bounds", "--d", "4", "--c", "2", "--p", "1"]).output().map_err(|e| e.to_string())?;
    ensure!(out.status.code() == Some(1), "bounds CLI exit {:?}", out.status.code());
    let out = bin().args(["bounds", "--d", "6", "--c", "2", "--p", "1"]).output().map_err(|e| e.to_string())?;
    let text = String::from_utf8_lossy(&out.stdout);
    ensure!(text == "faltings: 4\nhl: 3\nsum(p=1): 5\nmain(p=1): 4\n", "bounds CLI output {text:?}");
    Ok(format!("{cells} grid cells agree; main fails exactly when d ≤ (p+1)c"))
}

fn check_complex_invariants(c: &SimplicialComplex, label: &str) -> Result<(), String> {
    for s in 1..=c.dim_cap() {
        let prod = boundary_matrix(c, s - 1).unwrap().mul(&boundary_matrix(c, s).unwrap());
        ensure!(prod.is_zero(), "{label}: ∂∘∂ ≠ 0 at s={s}");
    }
    let chi = reduced_euler_characteristic(c);
    for p in CHARS {
        let b = full_reduced_betti(c, field(p)).map_err(|e| e.to_string())?;
        let alt: i64 = b
            .reduced
            .iter()
            .map(|(&s, &v)| if s.rem_euclid(2) == 0 { v as i64 } else { -(v as i64) })
            .sum();
        ensure!(alt == chi, "{label}: Euler identity fails in char {p}");
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    let mut complexes = 0;
    for n in 1..=8 {
        let full = SimplicialComplex::full(n);
        check_complex_invariants(&full, &format!("full({n})"))?;
        for p in CHARS {
            let b = full_reduced_betti(&full, field(p)).unwrap();
            ensure!(b.reduced.values().all(|&v| v == 0), "full({n}) char {p}: {:?}", b.reduced);
        }
        complexes += 1;
        if n >= 2 {
            let sphere = SimplicialComplex::sphere_boundary(n);
            check_complex_invariants(&sphere, &format!("sphere({n})"))?;
            for p in CHARS {
                let b = full_reduced_betti(&sphere, field(p)).unwrap();
                for (&s, &v) in &b.reduced {
                    ensure!(v == usize::from(s == n as i64 - 2), "sphere({n}) char {p} degree {s}: {v}");
                }
            }
            complexes += 1;
        }
    }
    let rp2 = SimplicialComplex::rp2_six_vertex();
    check_complex_invariants(&rp2, "rp2")?;
    complexes += 1;
    let betti = |p: u64| {
        let b = reduced_betti(&rp2, field(p), &[0, 1, 2]).unwrap();
        (b.reduced[&0], b.reduced[&1], b.reduced[&2])
    };
    ensure!(betti(2) == (0, 1, 1), "rp2 over GF(2): {:?}", betti(2));
    ensure!(betti(0) == (0, 0, 0), "rp2 over Q: {:?}", betti(0));
    let cli = run_json(&["homology", "--builtin", "rp2", "--char", "2", "--degrees", "0,1,2", "--machine"])?;
    ensure!(
        serde_json::to_string(&cli["reduced"]).unwrap() == r#"{"0":0,"1":1,"2":1}"#,
        "CLI rp2 over GF(2): {}",
        cli["reduced"]
    );
    Ok(format!("{complexes} stock complexes; rp2 gives (0,1,1) over GF(2) and (0,0,0) over Q"))
}

fn random_poly(ring: &Arc<RingContext>, rng: &mut impl Rng, max_deg: u32, homogeneous: Option<u32>) -> Polynomial {
    let n = ring.n_vars();
    let terms = (0..rng.gen_range(1..4))
        .map(|_| {
            let exps: Vec<u32> = match homogeneous {
                Some(deg) => {
                    let mut e = vec![0; n];
                    for _ in 0..deg {
                        e[rng.gen_range(0..n)] += 1;
                    }
                    e
                }
                None => (0..n).map(|_| rng.gen_range(0..=max_deg)).collect(),
            };
            (Monomial::from_exponents(exps), ring.field().from_i64(rng.gen_range(-4..=4)))
        })
        .collect();
    Polynomial::from_terms(ring, MonomialOrder::Grevlex, terms)
}

fn criterion_8() -> Outcome {
    let mut cases = 0;
    let fields = [0u64, 2, 7, 32003];

    // S-polynomials of basis elements reduce to zero; reduction order is
    // irrelevant modulo a basis
    for trial in 0..160u64 {
        let mut rng = trial_rng(8, trial);
        let p = fields[trial as usize % 4];
        let ring = RingContext::standard(field(p), 3).unwrap();
        let order = if trial % 2 == 0 { MonomialOrder::Grevlex } else { MonomialOrder::Lex };
        let gens: Vec<Polynomial> = (0..rng.gen_range(1..4)).map(|_| random_poly(&ring, &mut rng, 2, None)).collect();
        let gb = buchberger(&gens, order).map_err(|e| e.to_string())?;
        let el = gb.elements();
        for (i, j) in (0..el.len()).tuple_combinations() {
            let s = s_polynomial(&el[i], &el[j]);
            ensure!(gb.normal_form(&s).unwrap().is_zero(), "trial {trial}: S({i},{j}) does not reduce to 0");
        }
        for _ in 0..3 {
            let f = random_poly(&ring, &mut rng, 3, None).with_order(order);
            let nf = gb.normal_form(&f).unwrap();
            let shuffled = reduce_with(&f, el, |c| c[rng.gen_range(0..c.len())]);
            ensure!(shuffled == nf, "trial {trial}: normal form depends on reducer choice");
        }
        cases += 1;
    }

    for trial in 0..40u64 {
        let mut rng = trial_rng(9, trial);
        let n = rng.gen_range(2..=4usize);
        let ring = RingContext::standard(field(fields[trial as usize % 4]), n).unwrap();
        let (i, j) = {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            (i, j)
        };
        let xi = Polynomial::var(&ring, i);
        let xj = Polynomial::var(&ring, j);
        let meet = ideal_intersection(&Ideal::new(&ring, vec![xi.clone()]).unwrap(), &Ideal::new(&ring, vec![xj.clone()]).unwrap())
            .map_err(|e| e.to_string())?;
        let product = Ideal::new(&ring, vec![&xi * &xj]).unwrap();
        ensure!(meet == product, "(X{})∩(X{}) = {meet}", i + 1, j + 1);
        cases += 1;
    }

    for trial in 0..200u64 {
        let mut rng = trial_rng(10, trial);
        let n = rng.gen_range(2..=7usize);
        let k = rng.gen_range(0..=n);
        let ring = RingContext::standard(field(fields[trial as usize % 4]), n).unwrap();
        let mut vars: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            vars.swap(i, rng.gen_range(0..=i));
        }
        let mut gens: Vec<Polynomial> = vars[..k].iter().map(|&i| Polynomial::var(&ring, i)).collect();
        if k > 0 {
            // a redundant product keeps the ideal unchanged
            let extra = &gens[0] * &Polynomial::var(&ring, rng.gen_range(0..n));
            gens.push(extra);
        }
        let ideal = Ideal::new(&ring, gens).unwrap();
        ensure!(ideal.krull_dimension() == KrullDimension::Finite(n - k), "trial {trial}: dim ≠ {}", n - k);
        cases += 1;
    }

    for trial in 0..160u64 {
        let mut rng = trial_rng(12, trial);
        let ring = RingContext::standard(field(fields[trial as usize % 4]), 3).unwrap();
        let low = rng.gen_range(1..3u32);
        let high = low + rng.gen_range(1..3u32);
        let a = random_poly(&ring, &mut rng, 0, Some(low));
        let b = random_poly(&ring, &mut rng, 0, Some(high));
        let mixed = &a + &b;
        if mixed.is_homogeneous() {
            continue;
        }
        let ok = random_poly(&ring, &mut rng, 0, Some(low));
        match Ideal::new(&ring, vec![ok, mixed]) {
            Err(IdealError::Inhomogeneous { index: 1, .. }) => {}
            other => return Err(format!("trial {trial}: inhomogeneous input accepted: {other:?}")),
        }
        cases += 1;
    }
    ensure!(cases >= 500, "only {cases} randomized cases");
    Ok(format!("{cases} randomized cases"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("six-plane arrangement: Λ and Δ", criterion_1),
        ("characteristic-dependent verdict", criterion_2),
        ("dual-oracle equality", criterion_3),
        ("two planes in 4-space", criterion_4),
        ("few primes and sphere sharpness", criterion_5),
        ("bound formulas", criterion_6),
        ("homology engine", criterion_7),
        ("Gröbner engine", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
