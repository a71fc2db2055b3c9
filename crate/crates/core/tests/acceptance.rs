//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use acq_core::arith::Scalar;
use acq_core::category::{builtin, parse_category, CategoryData, ObjectWord};
use acq_core::eval_global::{collapsed_block, paired_trace, q_invariant_global, EvalOptions};
use acq_core::eval_state::{circulator_power, cr_assembly, q_invariant_state};
use acq_core::fuzz::{fuzz, FuzzConfig, Method};
use acq_core::oracle::{brute_cycle_trace, selfdual_count, zn_count};
use acq_core::presentation::{named_corpus, parse_presentation, random_corpus, Presentation};

type Outcome = Result<String, String>;

fn cat(name: &str) -> CategoryData {
    builtin(name).expect("builtin").expect("builtin builds")
}

fn pres(s: &str) -> Presentation {
    parse_presentation(s).expect("presentation parses")
}

fn zn_range(lo: u64, hi: u64) -> Vec<CategoryData> {
    (lo..=hi).map(|n| cat(&format!("zn:{n}"))).collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Instant, limit: Duration) -> Result<(), String> {
    ensure(t.elapsed() < limit, || format!("took {:?}, limit {limit:?}", t.elapsed()))
}

fn categories_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../categories")
}

fn data_file(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// Builtins plus every category file shipped in `categories/`.
fn shipped_categories() -> Vec<CategoryData> {
    let mut out: Vec<CategoryData> = ["zn:1", "zn:2", "zn:3", "zn:4", "zn:5", "zn:6", "rep-z2-q", "rep-z3-q", "rep-s3-q"]
        .iter()
        .map(|n| cat(n))
        .collect();
    let mut files: Vec<PathBuf> = std::fs::read_dir(categories_dir())
        .expect("categories directory")
        .map(|e| e.expect("dir entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "toml"))
        .collect();
    files.sort();
    for f in files {
        let text = std::fs::read_to_string(&f).expect("readable");
        out.push(parse_category(&text).unwrap_or_else(|e| panic!("{}: {e}", f.display())));
    }
    out
}

fn power_traces() -> Outcome {
    let t = Instant::now();
    let mut cats = zn_range(2, 6);
    cats.push(cat("rep-s3-q"));
    let mut checked = 0;
    for c in &cats {
        for k in 1..=3usize {
            let mut expected = c.zero();
            for b in c.labels() {
                let tr = brute_cycle_trace(c, b, k, 1 << 24).map_err(|e| e.to_string())?;
                expected = &expected + &(&c.rank_of(b).map_err(|e| e.to_string())? * &tr);
            }
            let got = q_invariant_global(&pres(&format!("<x | x^{k}>")), c).map_err(|e| e.to_string())?;
            ensure(got == expected, || format!("{} k={k}: {got} != {expected}", c.name()))?;
            checked += 1;
        }
    }
    within(t, Duration::from_secs(10))?;
    Ok(format!("{checked} cases in {:?}", t.elapsed()))
}

fn square_relator() -> Outcome {
    let p = pres("<x | x^2>");
    for n in 2..=8i64 {
        let c = cat(&format!("zn:{n}"));
        let got = q_invariant_global(&p, &c).map_err(|e| e.to_string())?;
        let g = if n % 2 == 0 { 2 } else { 1 };
        ensure(got == c.int(g), || format!("zn:{n}: {got} != {g}"))?;
    }
    let c = cat("rep-s3-q");
    let got = q_invariant_global(&p, &c).map_err(|e| e.to_string())?;
    ensure(got == c.int(4), || format!("rep-s3-q: {got} != 4"))?;
    Ok("zn:2..8 give gcd(2,n), rep-s3-q gives 4".into())
}

fn genus_two() -> Outcome {
    let p = pres("<x,y,z,w | xyx^-1y^-1zwz^-1w^-1>");
    let z5 = cat("zn:5");
    let got = q_invariant_global(&p, &z5).map_err(|e| e.to_string())?;
    ensure(got == z5.int(5), || format!("zn:5: {got} != 5"))?;
    let s3 = cat("rep-s3-q");
    let got = q_invariant_global(&p, &s3).map_err(|e| e.to_string())?;
    let want = Scalar::from_i64(s3.field(), 9).try_div(&Scalar::from_i64(s3.field(), 4)).map_err(|e| e.to_string())?;
    ensure(got == want, || format!("rep-s3-q: {got} != 9/4"))?;
    Ok("zn:5 gives 5, rep-s3-q gives 9/4".into())
}

fn twisted_commutator() -> Outcome {
    let p = pres("<x,y | xyx^-1y>");
    for (name, want) in [("zn:3", 1), ("zn:4", 2), ("rep-s3-q", 3)] {
        let c = cat(name);
        let got = q_invariant_global(&p, &c).map_err(|e| e.to_string())?;
        ensure(selfdual_count(&c) == want, || format!("{name}: self-dual count {}", selfdual_count(&c)))?;
        ensure(got == c.int(want as i64), || format!("{name}: {got} != {want}"))?;
    }
    Ok("zn:3 → 1, zn:4 → 2, rep-s3-q → 3".into())
}

fn state_matches_global() -> Outcome {
    let t = Instant::now();
    let mut corpus = random_corpus(2024, 24, 3, 2, 6);
    corpus.push(pres("<x,y | x^2y^2, xyx^-1y^-1>"));
    let mut checked = 0;
    for name in ["zn:2", "zn:3", "rep-s3-q"] {
        let c = cat(name);
        for p in &corpus {
            let g = q_invariant_global(p, &c).map_err(|e| format!("{name} {p}: {e}"))?;
            let s = q_invariant_state(p, &c).map_err(|e| format!("{name} {p}: {e}"))?;
            ensure(g == s, || format!("{name} {p}: global {g}, state {s}"))?;
            checked += 1;
        }
    }
    within(t, Duration::from_secs(120))?;
    Ok(format!("{checked} evaluations agree in {:?}", t.elapsed()))
}

fn move_invariance() -> Outcome {
    let t = Instant::now();
    let p = pres("<x,y | x^2y^-2x^-1y>");
    let cfg = FuzzConfig {
        moves: 8,
        trials: 100,
        seed: 20240,
        // cost grows with the number of generators, not with relator length
        method: Method::State,
    };
    let mut summary = Vec::new();
    for name in ["zn:3", "rep-s3-q"] {
        let c = cat(name);
        let r = fuzz(&p, &c, &cfg, &EvalOptions::default()).map_err(|e| e.to_string())?;
        if let Some(d) = r.discrepancies().next() {
            return Err(format!("{name}: trial {} [{}] changed Q", d.index, d.moves.join("; ")));
        }
        if let Some(d) = r.errors().next() {
            return Err(format!("{name}: trial {} [{}] failed: {:?}", d.index, d.moves.join("; "), d.value));
        }
        summary.push(format!("{name} Q={}", r.base.value));
    }
    within(t, Duration::from_secs(300))?;
    Ok(format!("{} ({:?})", summary.join(", "), t.elapsed()))
}

fn congruence_oracle() -> Outcome {
    let mut corpus = named_corpus();
    corpus.extend(random_corpus(7, 40, 3, 2, 6));
    let mut checked = 0;
    for n in 2..=6u64 {
        let c = cat(&format!("zn:{n}"));
        for p in &corpus {
            let got = q_invariant_global(p, &c).map_err(|e| format!("zn:{n} {p}: {e}"))?;
            let want = zn_count(p, n).map_err(|e| e.to_string())?;
            ensure(got == c.int(want as i64), || format!("zn:{n} {p}: {got} != {want}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} cases"))
}

fn normalization() -> Outcome {
    let cats = shipped_categories();
    let p = pres("<x | x>");
    for c in &cats {
        let mut total = c.zero();
        for b in c.labels() {
            let tr = c
                .partial_trace(&c.identity(&ObjectWord::single(b)), 0, 1, 0)
                .map_err(|e| e.to_string())?
                .as_scalar()
                .expect("map of the unit");
            total = &total + &(&c.rank_of(b).map_err(|e| e.to_string())? * &tr);
        }
        ensure(total.is_one(), || format!("{}: Σ r(b) Tr(id_b) = {total}", c.name()))?;
        let q = q_invariant_global(&p, c).map_err(|e| e.to_string())?;
        ensure(q.is_one(), || format!("{}: Q(<x|x>) = {q}", c.name()))?;
    }
    Ok(format!("{} categories", cats.len()))
}

fn zeta_completeness() -> Outcome {
    let c = cat("rep-s3-q");
    for a in c.labels() {
        for b in c.labels() {
            let w = ObjectWord(vec![c.dual(b), a]);
            let id = c.identity(&w);
            let mut acc = id.scale(&c.zero());
            for x in c.labels() {
                let z = c.zeta_bases(a, b, x).map_err(|e| e.to_string())?;
                for (zi, zb) in z.zeta.iter().zip(&z.zeta_bar) {
                    let term = c.compose(zi, zb).map_err(|e| e.to_string())?.scale(&z.factor);
                    acc = acc.add(&term).map_err(|e| e.to_string())?;
                }
            }
            ensure(acc == id, || format!("a={a} b={b}: sum is not the identity"))?;
        }
    }
    Ok("all 9 pairs resolve the identity".into())
}

fn circulator_powers() -> Outcome {
    let mut cats = zn_range(2, 4);
    cats.push(cat("rep-s3-q"));
    let mut checked = 0;
    for c in &cats {
        for a in c.labels() {
            for b in c.labels() {
                for l in -3..=3 {
                    let lhs = circulator_power(c, a, b, l).map_err(|e| e.to_string())?;
                    let rhs = cr_assembly(c, l, a, b).map_err(|e| e.to_string())?;
                    ensure(lhs.mat == rhs.mat, || format!("{} a={a} b={b} l={l}", c.name()))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} powers"))
}

fn collapse() -> Outcome {
    let mut checked = 0;
    for c in zn_range(2, 4) {
        for l in [-2i64, -1, 1, 2] {
            let k = l.unsigned_abs() as usize;
            let tuples: Vec<Vec<usize>> = if k == 1 {
                c.labels().map(|t| vec![t]).collect()
            } else {
                c.labels().flat_map(|s| c.labels().map(move |t| vec![s, t])).collect()
            };
            for b1 in c.labels() {
                for b2 in c.labels() {
                    for targets in &tuples {
                        let got = paired_trace(&c, b1, b2, l, targets).map_err(|e| e.to_string())?;
                        if targets.iter().all(|&t| t == targets[0]) {
                            let a = if l < 0 { c.dual(targets[0]) } else { targets[0] };
                            let want = collapsed_block(&c, b1, b2, a, l).map_err(|e| e.to_string())?;
                            ensure(got == want, || format!("{} l={l} b=({b1},{b2}) {targets:?}", c.name()))?;
                        } else {
                            ensure(got.mat.is_zero(), || {
                                format!("{} l={l} b=({b1},{b2}) {targets:?} is nonzero", c.name())
                            })?;
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{checked} paired traces"))
}

fn validator() -> Outcome {
    let t = Instant::now();
    let cats = shipped_categories();
    for c in &cats {
        let r = c.validate();
        for check in ["snake", "stability", "schur", "semisimplicity"] {
            ensure(r.check(check).is_some_and(|x| x.passed()), || format!("{}: {check} fails\n{r}", c.name()))?;
        }
        ensure(r.passed(), || format!("{}:\n{r}", c.name()))?;
    }
    let bad = parse_category(&data_file("reg-z2-f2.toml")).map_err(|e| e.to_string())?;
    let r = bad.validate();
    ensure(!r.passed(), || "non-semisimple category accepted".into())?;
    ensure(!r.check("semisimplicity").is_some_and(|x| x.passed()), || {
        format!("semisimplicity check did not flag the regular representation\n{r}")
    })?;
    ensure(parse_category(&data_file("not-toml.cat")).is_err(), || "garbage parsed".into())?;
    within(t, Duration::from_secs(10))?;
    Ok(format!("{} categories pass, non-semisimple input rejected", cats.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("cycle-trace oracle for <x|x^k>, k = 1..3", power_traces),
        ("<x|x^2> sums ranks of self-dual simples", square_relator),
        ("genus-2 surface gives Σ r(b)^-2", genus_two),
        ("<x,y|xyx^-1y> counts self-dual simples", twisted_commutator),
        ("state evaluator equals global evaluator", state_matches_global),
        ("invariance under random AC moves", move_invariance),
        ("Z_n congruence oracle on the corpus", congruence_oracle),
        ("normalization", normalization),
        ("zeta bases resolve the identity", zeta_completeness),
        ("circulator powers match the assembly", circulator_powers),
        ("paired partial traces collapse", collapse),
        ("validator accepts builtins, rejects non-semisimple", validator),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS {:>2}  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2}  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
